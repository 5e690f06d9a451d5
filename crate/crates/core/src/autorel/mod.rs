//! Automatic relations (convolution automata) and recognizable relations.

pub mod conv;
mod decomp;

use std::collections::HashMap;

pub use conv::Tracks;
pub use decomp::{fs_decompose, RecognizableDecomposition};

use crate::automata::{Dfa, Letter, Nfa, State};
use crate::error::{Error, Result};
use crate::syncword::{classify, Role, TaggedAlphabet};

/// A relation over Σ* × Γ* given by a minimal DFA over convolution letters
/// `(Σ ∪ {⊥}) × (Γ ∪ {⊥})`. The DFA only accepts well-formed convolutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomaticRelation {
    alpha: TaggedAlphabet,
    dfa: Dfa,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationOp {
    Union,
    Intersection,
    Complement,
    Difference,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationTest {
    Includes,
    Equivalent,
    IsEmpty,
}

pub fn pair_tracks(alpha: &TaggedAlphabet) -> Tracks {
    Tracks(vec![alpha.n_in(), alpha.n_out()])
}

/// u ⊗ v over raw indices.
pub fn convolve(alpha: &TaggedAlphabet, u: &[usize], v: &[usize]) -> Vec<Letter> {
    pair_tracks(alpha).convolve(&[u, v])
}

impl AutomaticRelation {
    /// Restricts any automaton over convolution letters to well-formed words.
    pub fn from_conv(alpha: &TaggedAlphabet, a: &Nfa) -> Result<Self> {
        let t = pair_tracks(alpha);
        if a.letters() != t.letters() {
            return Err(Error::AlphabetMismatch("not over the convolution alphabet".into()));
        }
        Ok(AutomaticRelation {
            alpha: alpha.clone(),
            dfa: a.minimal().intersect(&t.well_formed()),
        })
    }

    pub fn empty(alpha: &TaggedAlphabet) -> Self {
        AutomaticRelation {
            alpha: alpha.clone(),
            dfa: Dfa::empty(pair_tracks(alpha).letters()),
        }
    }

    pub fn full(alpha: &TaggedAlphabet) -> Self {
        AutomaticRelation {
            alpha: alpha.clone(),
            dfa: pair_tracks(alpha).well_formed(),
        }
    }

    pub fn equal_length(alpha: &TaggedAlphabet) -> Self {
        let t = pair_tracks(alpha);
        let mut d = Dfa::new(t.letters());
        d.set_final(0, true);
        for a in 0..alpha.n_in() {
            for b in 0..alpha.n_out() {
                d.set_edge(0, t.encode(&[Some(a), Some(b)]), 0);
            }
        }
        AutomaticRelation {
            alpha: alpha.clone(),
            dfa: d.minimize(),
        }
    }

    pub fn alphabet(&self) -> &TaggedAlphabet {
        &self.alpha
    }

    pub fn tracks(&self) -> Tracks {
        pair_tracks(&self.alpha)
    }

    pub fn conv_dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn contains(&self, u: &[usize], v: &[usize]) -> bool {
        self.dfa.accepts(&convolve(&self.alpha, u, v))
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.alpha != other.alpha {
            return Err(Error::AlphabetMismatch("relations over different alphabets".into()));
        }
        Ok(())
    }

    fn with(&self, dfa: Dfa) -> Self {
        AutomaticRelation {
            alpha: self.alpha.clone(),
            dfa,
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.dfa.union(&other.dfa)))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.dfa.intersect(&other.dfa)))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.dfa.difference(&other.dfa)))
    }

    pub fn complement(&self) -> Self {
        self.with(self.tracks().well_formed().difference(&self.dfa))
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.is_empty()
    }

    pub fn includes(&self, sub: &Self) -> Result<bool> {
        self.same(sub)?;
        Ok(self.dfa.includes(&sub.dfa))
    }

    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        self.same(other)?;
        Ok(self.dfa == other.dfa)
    }

    /// dom(R) over raw Σ indices.
    pub fn domain(&self) -> Nfa {
        self.track(0)
    }

    pub fn image(&self) -> Nfa {
        self.track(1)
    }

    fn track(&self, j: usize) -> Nfa {
        let (t, p) = self.tracks().project(&self.dfa.to_nfa(), 1 - j);
        p.map_letters(self.tracks().0[j], |l| t.decode(l)[0])
    }

    /// R_u = {v | (u, v) ∈ R}.
    pub fn section(&self, u: &[usize]) -> Nfa {
        self.tracks().section(&self.dfa, 0, u)
    }

    /// The canonical (ΣΓ)*(Σ*+Γ*) synchronization language of R.
    pub fn to_sync(&self) -> Nfa {
        let t = self.tracks();
        let al = &self.alpha;
        self.dfa.to_nfa().substitute(al.size(), |l| {
            let c = t.decode(l);
            let mut w = Vec::with_capacity(2);
            if let Some(a) = c[0] {
                w.push(al.input(a));
            }
            if let Some(b) = c[1] {
                w.push(al.output(b));
            }
            w
        })
    }

    /// Pairs with |u| + |v| ≤ `max_total`.
    pub fn pairs_up_to(&self, max_total: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let t = self.tracks();
        self.dfa
            .enumerate_up_to(max_total)
            .into_iter()
            .map(|w| {
                let (mut u, mut v) = (Vec::new(), Vec::new());
                for l in w {
                    let c = t.decode(l);
                    u.extend(c[0]);
                    v.extend(c[1]);
                }
                (u, v)
            })
            .filter(|(u, v)| u.len() + v.len() <= max_total)
            .collect()
    }

    /// ⟦q⟧⁻¹(⟦p⟧R) for single-role words `p`, `q` over the tagged alphabet.
    pub fn shifted(&self, prefix: &[Letter], quotient: &[Letter]) -> Result<Self> {
        let al = &self.alpha;
        let k = al.size();
        let mono = |w: &[Letter]| w.windows(2).all(|p| al.role(p[0]) == al.role(p[1]));
        if !mono(prefix) || !mono(quotient) || prefix.iter().chain(quotient).any(|&a| a >= k) {
            return Err(Error::AlphabetMismatch("shift words must be single-role tagged words".into()));
        }
        let s = Nfa::word(k, prefix).concat(&self.to_sync());
        let s = erase_prefix(al, &s, quotient);
        from_sync_fsl(al, &s)
    }

    /// Decides recognizability; on success the decomposition recombines to R.
    pub fn recognizable_decomposition(&self) -> Option<RecognizableDecomposition> {
        is_recognizable(self)
    }

    pub fn is_recognizable(&self) -> bool {
        is_recognizable(self).is_some()
    }
}

pub fn relation_ops(op: RelationOp, args: &[&AutomaticRelation]) -> Result<AutomaticRelation> {
    let want = match op {
        RelationOp::Complement => 1,
        RelationOp::Difference => 2,
        _ => args.len().max(1),
    };
    if args.len() != want || args.is_empty() {
        return Err(Error::AlphabetMismatch(format!("{op:?} got {} operand(s)", args.len())));
    }
    let mut acc = args[0].clone();
    match op {
        RelationOp::Complement => return Ok(acc.complement()),
        RelationOp::Difference => return acc.difference(args[1]),
        RelationOp::Union => {
            for a in &args[1..] {
                acc = acc.union(a)?;
            }
        }
        RelationOp::Intersection => {
            for a in &args[1..] {
                acc = acc.intersection(a)?;
            }
        }
    }
    Ok(acc)
}

pub fn relation_decide(op: RelationTest, args: &[&AutomaticRelation]) -> Result<bool> {
    match (op, args) {
        (RelationTest::IsEmpty, [r]) => Ok(r.is_empty()),
        (RelationTest::Includes, [r, s]) => r.includes(s),
        (RelationTest::Equivalent, [r, s]) => r.equivalent(s),
        _ => Err(Error::AlphabetMismatch(format!("{op:?} got {} operand(s)", args.len()))),
    }
}

/// Removes the first |q| letters of q's role, which must spell q.
fn erase_prefix(alpha: &TaggedAlphabet, s: &Nfa, q: &[Letter]) -> Nfa {
    let Some(&first) = q.first() else {
        return s.clone();
    };
    let role = alpha.role(first);
    let s = s.remove_eps();
    let n = s.num_states();
    let m = q.len() + 1;
    let idx = |p: State, i: usize| p * m + i;
    let mut out = Nfa::new(s.letters());
    for _ in 1..n * m {
        out.add_state();
    }
    out.set_initial(idx(s.initial(), 0));
    for p in 0..n {
        for i in 0..m {
            out.set_final(idx(p, i), s.is_final(p) && i == q.len());
            for &(a, r) in s.edges(p) {
                if alpha.role(a) == role && i < q.len() {
                    if a == q[i] {
                        out.add_eps(idx(p, i), idx(r, i + 1));
                    }
                } else {
                    out.add_edge(idx(p, i), a, idx(r, i));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    /// Outside Q^FS, with the pending single-role buffer.
    Lag(State, Vec<Letter>),
    Flush(Vec<Letter>),
    Hub(State, Vec<Letter>),
    /// Inside part `j`; `None` marks a finished track.
    Part(usize, Vec<Letter>, Option<State>, Option<State>),
}

/// The automatic relation ⟦S⟧ of a finite-shiftlag synchronization language.
pub fn from_sync_fsl(alpha: &TaggedAlphabet, s: &Nfa) -> Result<AutomaticRelation> {
    if s.letters() != alpha.size() {
        return Err(Error::AlphabetMismatch("language is not over the tagged alphabet".into()));
    }
    let c = classify(alpha, s)?;
    let gamma = c.gamma.ok_or(Error::NotFiniteShiftlag)?;
    let dfa = &c.dfa;
    let fs = &c.fs_states;
    let cap = gamma + 1;
    let t = pair_tracks(alpha);
    // one or two letters of distinct roles as a convolution letter
    let pair = |x: Letter, y: Option<Letter>| -> Letter {
        let mut c = [None, None];
        for l in std::iter::once(x).chain(y) {
            c[usize::from(!alpha.is_input(l))] = Some(alpha.raw(l));
        }
        t.encode(&c)
    };

    let mut parts: Vec<(Dfa, Dfa)> = Vec::new();
    let mut hubs: HashMap<State, Vec<usize>> = HashMap::new();
    let mut out = Nfa::new(t.letters());
    let mut ids: HashMap<Key, State> = HashMap::new();
    let mut todo: Vec<Key> = Vec::new();
    let start = if fs[dfa.initial()] {
        Key::Hub(dfa.initial(), Vec::new())
    } else {
        Key::Lag(dfa.initial(), Vec::new())
    };
    ids.insert(start.clone(), 0);
    todo.push(start);
    let mut get = |k: Key, out: &mut Nfa, todo: &mut Vec<Key>| -> State {
        *ids.entry(k.clone()).or_insert_with(|| {
            todo.push(k);
            out.add_state()
        })
    };
    while let Some(key) = todo.pop() {
        let me = get(key.clone(), &mut out, &mut todo);
        match &key {
            Key::Lag(q, buf) => {
                if dfa.is_final(*q) {
                    let f = get(Key::Flush(buf.clone()), &mut out, &mut todo);
                    out.add_eps(me, f);
                }
                for (a, r) in dfa.edges(*q) {
                    let (emit, nb) = match buf.first() {
                        Some(&b0) if alpha.role(b0) != alpha.role(a) => (Some(pair(b0, Some(a))), buf[1..].to_vec()),
                        _ => {
                            let mut nb = buf.clone();
                            nb.push(a);
                            (None, nb)
                        }
                    };
                    if nb.len() > cap {
                        return Err(Error::Internal("rescheduling buffer overflow".into()));
                    }
                    let next = if fs[r] { Key::Hub(r, nb) } else { Key::Lag(r, nb) };
                    let to = get(next, &mut out, &mut todo);
                    match emit {
                        Some(l) => out.add_edge(me, l, to),
                        None => out.add_eps(me, to),
                    }
                }
            }
            Key::Flush(buf) => match buf.split_first() {
                None => out.set_final(me, true),
                Some((&b0, rest)) => {
                    let to = get(Key::Flush(rest.to_vec()), &mut out, &mut todo);
                    out.add_edge(me, pair(b0, None), to);
                }
            },
            Key::Hub(q, buf) => {
                let js = match hubs.get(q) {
                    Some(js) => js.clone(),
                    None => {
                        let d = fs_decompose(alpha, dfa, *q)?;
                        let js: Vec<usize> = (parts.len()..parts.len() + d.parts().len()).collect();
                        parts.extend(d.parts().iter().cloned());
                        hubs.insert(*q, js.clone());
                        js
                    }
                };
                for j in js {
                    let (u, v) = &parts[j];
                    let to = get(
                        Key::Part(j, buf.clone(), Some(u.initial()), Some(v.initial())),
                        &mut out,
                        &mut todo,
                    );
                    out.add_eps(me, to);
                }
            }
            Key::Part(j, buf, us, vs) => {
                let (u, v) = &parts[*j];
                let buf_role = buf.first().map(|&b| alpha.role(b));
                // each option: (raw letter or ⊥, next buffer, next automaton state)
                let side = |d: &Dfa, st: Option<State>, r: Role| -> Vec<(Option<usize>, Vec<Letter>, Option<State>)> {
                    if buf_role == Some(r) {
                        return vec![(Some(alpha.raw(buf[0])), buf[1..].to_vec(), st)];
                    }
                    let mut opts = Vec::new();
                    match st {
                        None => opts.push((None, buf.clone(), None)),
                        Some(s) => {
                            if d.is_final(s) {
                                opts.push((None, buf.clone(), None));
                            }
                            for (a, s2) in d.edges(s) {
                                opts.push((Some(a), buf.clone(), Some(s2)));
                            }
                        }
                    }
                    opts
                };
                let ends = |d: &Dfa, st: Option<State>, r: Role| buf_role != Some(r) && st.is_none_or(|s| d.is_final(s));
                out.set_final(me, ends(u, *us, Role::Input) && ends(v, *vs, Role::Output));
                let ins = side(u, *us, Role::Input);
                let outs = side(v, *vs, Role::Output);
                for (x, bx, nu) in &ins {
                    for (y, by, nv) in &outs {
                        if x.is_none() && y.is_none() {
                            continue;
                        }
                        // at most one side consumed the buffer
                        let nb = if bx.len() < buf.len() { bx.clone() } else { by.clone() };
                        let to = get(Key::Part(*j, nb, *nu, *nv), &mut out, &mut todo);
                        out.add_edge(me, t.encode(&[*x, *y]), to);
                    }
                }
            }
        }
    }
    AutomaticRelation::from_conv(alpha, &out)
}

/// Length-lexicographic strict order u′ < u on two tracks (u, u′).
fn llex_less(n: usize) -> Dfa {
    let t = Tracks(vec![n, n]);
    // states: 0 equal, 1 u′ smaller, 2 u′ larger, 3 u′ ended first, 4 u ended first
    let mut d = Dfa::new(t.letters());
    for _ in 0..4 {
        d.add_state();
    }
    d.set_final(1, true);
    d.set_final(3, true);
    for p in 0..3 {
        for x in 0..n {
            for y in 0..n {
                let to = match p {
                    0 if y < x => 1,
                    0 if y > x => 2,
                    p => p,
                };
                d.set_edge(p, t.encode(&[Some(x), Some(y)]), to);
            }
            d.set_edge(p, t.encode(&[Some(x), None]), 3);
            d.set_edge(p, t.encode(&[None, Some(x)]), 4);
        }
    }
    for x in 0..n {
        d.set_edge(3, t.encode(&[Some(x), None]), 3);
        d.set_edge(4, t.encode(&[None, Some(x)]), 4);
    }
    d.minimize()
}

/// Recognizability via minimal representatives of the section-equivalence.
pub fn is_recognizable(r: &AutomaticRelation) -> Option<RecognizableDecomposition> {
    let al = &r.alpha;
    let (ni, no) = (al.n_in(), al.n_out());
    let two = pair_tracks(al);
    let three = Tracks(vec![ni, ni, no]);
    let r13 = three.cylindrify(&two, &r.dfa, &[0, 2]);
    let r23 = three.cylindrify(&two, &r.dfa, &[1, 2]);
    let differ = r13.product(&r23, |a, b| a != b).intersect(&three.well_formed());
    let (uu, not_e) = three.project(&differ.to_nfa(), 2);
    let e = uu.well_formed().difference(&not_e.minimal());
    let later = llex_less(ni).intersect(&e);
    let (single, p) = uu.project(&later.to_nfa(), 1);
    let not_min = p.map_letters(ni, |l| single.decode(l)[0]);
    let min = not_min.minimal().complement().minimize();
    let reps = min.finite_words()?;
    let parts = reps.into_iter().map(|u| {
        let class = uu.section(&e, 0, &u).minimal();
        (class, r.section(&u).minimal())
    });
    let d = RecognizableDecomposition::from_products(ni, no, parts);
    Some(d)
}

/// recToAutomatic.
pub fn rec_to_automatic(alpha: &TaggedAlphabet, d: &RecognizableDecomposition) -> Result<AutomaticRelation> {
    if d.n_in() != alpha.n_in() || d.n_out() != alpha.n_out() {
        return Err(Error::AlphabetMismatch("decomposition does not match the alphabet".into()));
    }
    from_sync_fsl(alpha, &d.to_sync(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_regex;

    fn ac() -> TaggedAlphabet {
        TaggedAlphabet::new(&["a", "b"], &["c", "d"])
    }

    fn rel(al: &TaggedAlphabet, s: &str) -> AutomaticRelation {
        from_sync_fsl(al, &parse_regex(s, al).unwrap()).unwrap()
    }

    #[test]
    fn alternating_is_equal_length() {
        let al = ac();
        let r = rel(&al, "((a+b)(c+d))*");
        assert_eq!(r, AutomaticRelation::equal_length(&al));
        assert!(r.contains(&[0, 1], &[1, 1]));
        assert!(!r.contains(&[0], &[]));
        assert!(!r.is_recognizable());
    }

    #[test]
    fn outputs_first_reschedules() {
        let al = ac();
        let r = rel(&al, "c a a");
        assert!(r.contains(&[0, 0], &[0]));
        assert_eq!(r.pairs_up_to(6).len(), 1);
    }

    #[test]
    fn full_relation_is_one_product() {
        let al = ac();
        let r = rel(&al, "(a+b)*(c+d)*");
        assert_eq!(r, AutomaticRelation::full(&al));
        let d = r.recognizable_decomposition().unwrap();
        assert_eq!(d.parts().len(), 1);
        assert!(d.parts()[0].0.equivalent(&Dfa::universal(2)));
    }

    #[test]
    fn section_and_domain() {
        let al = ac();
        let r = AutomaticRelation::equal_length(&al);
        let s = r.section(&[0, 0]);
        assert_eq!(s.enumerate_up_to(3).len(), 4);
        assert!(r.domain().equivalent(&Nfa::universal(2)));
        assert!(AutomaticRelation::empty(&al).domain().is_empty());
    }

    #[test]
    fn shift_of_full_relation() {
        let al = ac();
        let r = rel(&al, "a (c+d)*");
        // ⟦i:a⟧⁻¹ R = {ε} × Γ*
        let s = r.shifted(&[], &[al.input(0)]).unwrap();
        assert!(s.contains(&[], &[0, 1]));
        assert!(!s.contains(&[0], &[]));
        let p = r.shifted(&[al.output(1)], &[]).unwrap();
        assert!(p.contains(&[0], &[1, 0]));
        assert!(!p.contains(&[0], &[0]));
    }
}
