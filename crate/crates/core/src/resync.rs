//! Differences of synchronizations, relation filters over synchronization
//! languages, and canonical representatives.

use std::collections::HashMap;

use crate::automata::{Dfa, Letter, Nfa, State};
use crate::autorel::{from_sync_fsl, pair_tracks, AutomaticRelation, RecognizableDecomposition};
use crate::error::{Error, Result};
use crate::syncword::{classify, Role, TaggedAlphabet, TaggedWord};

/// A state of D_k: `(w0, w1)` with ⟦x·w0⟧ = ⟦y·w1⟧ after reading x ⊗ y.
pub type DiffState = (TaggedWord, TaggedWord);

/// One synchronous step (a0 on x, a1 on y) of the difference automaton,
/// without a length bound. `None` signals incompatibility.
pub fn diff_step(alpha: &TaggedAlphabet, st: &DiffState, a0: Letter, a1: Letter) -> Option<DiffState> {
    let (mut w0, mut w1) = st.clone();
    // w0 holds letters y is ahead by, w1 letters x is ahead by
    let feed = |a: Letter, mine: &mut TaggedWord, theirs: &mut TaggedWord| -> bool {
        let r = alpha.role(a);
        if mine.first().is_some_and(|&b| alpha.role(b) == r) {
            if mine[0] != a {
                return false;
            }
            mine.remove(0);
        } else {
            theirs.push(a);
        }
        true
    };
    if !feed(a0, &mut w0, &mut w1) || !feed(a1, &mut w1, &mut w0) {
        return None;
    }
    // equal lengths keep each side single-role
    debug_assert!(w0.windows(2).all(|p| alpha.role(p[0]) == alpha.role(p[1])));
    debug_assert!(w1.windows(2).all(|p| alpha.role(p[0]) == alpha.role(p[1])));
    Some((w0, w1))
}

/// Same length and some extensions synchronize the same pair.
pub fn compatible(alpha: &TaggedAlphabet, x: &[Letter], y: &[Letter]) -> bool {
    diff_of(alpha, x, y).is_ok()
}

/// The shortest (u, v) with ⟦xu⟧ = ⟦yv⟧.
pub fn diff_of(alpha: &TaggedAlphabet, x: &[Letter], y: &[Letter]) -> Result<DiffState> {
    if x.len() != y.len() {
        return Err(Error::Incompatible);
    }
    let mut st: DiffState = (Vec::new(), Vec::new());
    for (&a, &b) in x.iter().zip(y) {
        st = diff_step(alpha, &st, a, b).ok_or(Error::Incompatible)?;
    }
    Ok(st)
}

/// D_k over letters `a0 * |Σ∪Γ| + a1`, with the state labels.
#[derive(Clone, Debug)]
pub struct DiffAutomaton {
    pub k: usize,
    pub dfa: Dfa,
    pub states: Vec<DiffState>,
}

impl DiffAutomaton {
    pub fn letter(&self, alpha: &TaggedAlphabet, a0: Letter, a1: Letter) -> Letter {
        a0 * alpha.size() + a1
    }

    pub fn run(&self, alpha: &TaggedAlphabet, x: &[Letter], y: &[Letter]) -> Option<&DiffState> {
        if x.len() != y.len() {
            return None;
        }
        let w: Vec<Letter> = x.iter().zip(y).map(|(&a, &b)| self.letter(alpha, a, b)).collect();
        self.dfa.run(&w).map(|q| &self.states[q])
    }
}

pub fn build_dk(k: usize, alpha: &TaggedAlphabet) -> DiffAutomaton {
    let n = alpha.size();
    let mut dfa = Dfa::new(n * n);
    let mut states: Vec<DiffState> = vec![(Vec::new(), Vec::new())];
    let mut ids: HashMap<DiffState, State> = HashMap::from([(states[0].clone(), 0)]);
    dfa.set_final(0, true);
    let mut i = 0;
    while i < states.len() {
        let st = states[i].clone();
        for a0 in 0..n {
            for a1 in 0..n {
                let Some(nx) = diff_step(alpha, &st, a0, a1) else { continue };
                if nx.0.len() > k {
                    continue;
                }
                let to = match ids.get(&nx) {
                    Some(&t) => t,
                    None => {
                        let t = dfa.add_state();
                        dfa.set_final(t, true);
                        ids.insert(nx.clone(), t);
                        states.push(nx);
                        t
                    }
                };
                dfa.set_edge(i, a0 * n + a1, to);
            }
        }
        i += 1;
    }
    DiffAutomaton { k, dfa, states }
}

fn check_letters(alpha: &TaggedAlphabet, t: &Nfa) -> Result<()> {
    if t.letters() != alpha.size() {
        return Err(Error::AlphabetMismatch("language is not over the tagged alphabet".into()));
    }
    Ok(())
}

/// {w ∈ T | ⟦w⟧ ∈ R}: T runs alongside U_i on inputs and V_i on outputs.
pub fn filter_by_recognizable(alpha: &TaggedAlphabet, t: &Nfa, r: &RecognizableDecomposition) -> Result<Nfa> {
    check_letters(alpha, t)?;
    if r.n_in() != alpha.n_in() || r.n_out() != alpha.n_out() {
        return Err(Error::AlphabetMismatch("decomposition does not match the alphabet".into()));
    }
    let t = t.remove_eps().trim();
    let k = alpha.size();
    let mut out = Nfa::empty(k);
    for (u, v) in r.parts() {
        let mut part = Nfa::new(k);
        let mut ids: HashMap<(State, State, State), State> = HashMap::new();
        let start = (t.initial(), u.initial(), v.initial());
        ids.insert(start, 0);
        let mut todo = vec![start];
        while let Some(key @ (p, x, y)) = todo.pop() {
            let me = ids[&key];
            part.set_final(me, t.is_final(p) && u.is_final(x) && v.is_final(y));
            for &(a, p2) in t.edges(p) {
                let next = if alpha.is_input(a) {
                    u.step(x, alpha.raw(a)).map(|x2| (p2, x2, y))
                } else {
                    v.step(y, alpha.raw(a)).map(|y2| (p2, x, y2))
                };
                let Some(nk) = next else { continue };
                let to = *ids.entry(nk).or_insert_with(|| {
                    todo.push(nk);
                    part.add_state()
                });
                part.add_edge(me, a, to);
            }
        }
        out = out.union(&part);
    }
    Ok(out.trim())
}

/// L_{≤γ}·(Σ* + Γ*)^m: a prefix of lag at most γ, then m single-role blocks.
pub fn lag_shape(alpha: &TaggedAlphabet, gamma: usize, m: usize) -> Nfa {
    let k = alpha.size();
    let g = gamma as i64;
    let width = 2 * gamma + 1;
    let mut a = Nfa::new(k);
    for _ in 1..width {
        a.add_state();
    }
    let bal = |b: i64| (b + g) as State;
    a.set_initial(bal(0));
    for b in -g..=g {
        for l in 0..k {
            let nb = b + if alpha.is_input(l) { 1 } else { -1 };
            if nb.abs() <= g {
                a.add_edge(bal(b), l, bal(nb));
            }
        }
    }
    let mut ends: Vec<State> = (0..width).collect();
    for _ in 0..m {
        let blocks: Vec<State> = [Role::Input, Role::Output]
            .iter()
            .map(|&r| {
                let s = a.add_state();
                for l in alpha.letters_of(r) {
                    a.add_edge(s, l, s);
                }
                s
            })
            .collect();
        for &e in &ends {
            for &s in &blocks {
                a.add_eps(e, s);
            }
        }
        ends = blocks;
    }
    for e in ends {
        a.set_final(e, true);
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Buf {
    /// Pairing mode with the pending single-role buffer.
    Lag(Vec<Letter>),
    /// Only letters of `Role` follow; buffer of the opposite role, or empty.
    Tail(Role, Vec<Letter>),
    Flush(Vec<Letter>),
}

/// T ∩ {w | ⟦w⟧ ∈ R} for T ⊆ L_{≤γ}·(Σ*+Γ*), by replaying each word as a
/// convolution with a buffer of at most γ pending letters.
fn buffered_filter(alpha: &TaggedAlphabet, t: &Nfa, r: &AutomaticRelation, gamma: usize, tail: bool) -> Nfa {
    let t = t.remove_eps().trim();
    let d = r.conv_dfa();
    let tr = pair_tracks(alpha);
    let conv = |x: Letter, y: Option<Letter>| -> Letter {
        let mut c = [None, None];
        for l in std::iter::once(x).chain(y) {
            c[usize::from(!alpha.is_input(l))] = Some(alpha.raw(l));
        }
        tr.encode(&c)
    };
    let k = alpha.size();
    let mut out = Nfa::new(k);
    let mut ids: HashMap<(State, State, Buf), State> = HashMap::new();
    let start = (t.initial(), d.initial(), Buf::Lag(Vec::new()));
    ids.insert(start.clone(), 0);
    let mut todo = vec![start];
    let mut get = |key: (State, State, Buf), out: &mut Nfa, todo: &mut Vec<(State, State, Buf)>| -> State {
        *ids.entry(key.clone()).or_insert_with(|| {
            todo.push(key);
            out.add_state()
        })
    };
    while let Some(key) = todo.pop() {
        let me = get(key.clone(), &mut out, &mut todo);
        let (p, q, buf) = key;
        match buf {
            Buf::Flush(b) => match b.split_first() {
                None => out.set_final(me, d.is_final(q)),
                Some((&b0, rest)) => {
                    if let Some(q2) = d.step(q, conv(b0, None)) {
                        let to = get((p, q2, Buf::Flush(rest.to_vec())), &mut out, &mut todo);
                        out.add_eps(me, to);
                    }
                }
            },
            Buf::Lag(b) => {
                if t.is_final(p) {
                    let to = get((p, q, Buf::Flush(b.clone())), &mut out, &mut todo);
                    out.add_eps(me, to);
                }
                if tail {
                    for role in [Role::Input, Role::Output] {
                        let same = b.first().is_some_and(|&x| alpha.role(x) == role);
                        if same {
                            // flush the buffer first: the other track is over
                            let mut q2 = Some(q);
                            for &x in &b {
                                q2 = q2.and_then(|s| d.step(s, conv(x, None)));
                            }
                            if let Some(q2) = q2 {
                                let to = get((p, q2, Buf::Tail(role, Vec::new())), &mut out, &mut todo);
                                out.add_eps(me, to);
                            }
                        } else {
                            let to = get((p, q, Buf::Tail(role, b.clone())), &mut out, &mut todo);
                            out.add_eps(me, to);
                        }
                    }
                }
                for &(a, p2) in t.edges(p) {
                    let next = match b.first() {
                        Some(&b0) if alpha.role(b0) != alpha.role(a) => {
                            d.step(q, conv(b0, Some(a))).map(|q2| (q2, b[1..].to_vec()))
                        }
                        _ if b.len() < gamma => {
                            let mut nb = b.clone();
                            nb.push(a);
                            Some((q, nb))
                        }
                        _ => None,
                    };
                    if let Some((q2, nb)) = next {
                        let to = get((p2, q2, Buf::Lag(nb)), &mut out, &mut todo);
                        out.add_edge(me, a, to);
                    }
                }
            }
            Buf::Tail(role, b) => {
                if t.is_final(p) {
                    let to = get((p, q, Buf::Flush(b.clone())), &mut out, &mut todo);
                    out.add_eps(me, to);
                }
                for &(a, p2) in t.edges(p) {
                    if alpha.role(a) != role {
                        continue;
                    }
                    let (l, nb) = match b.split_first() {
                        Some((&b0, rest)) => (conv(b0, Some(a)), rest.to_vec()),
                        None => (conv(a, None), Vec::new()),
                    };
                    if let Some(q2) = d.step(q, l) {
                        let to = get((p2, q2, Buf::Tail(role, nb)), &mut out, &mut todo);
                        out.add_edge(me, a, to);
                    }
                }
            }
        }
    }
    out.trim()
}

/// {w ∈ T | ⟦w⟧ ∈ R} for T ⊆ L_{≤γ}·(Σ*+Γ*)^m. With m ≥ 2 the relation
/// must be recognizable, shown by `certificate` or decided here.
pub fn filter_by_automatic(
    alpha: &TaggedAlphabet,
    t: &Nfa,
    r: &AutomaticRelation,
    gamma: usize,
    m: usize,
    certificate: Option<&RecognizableDecomposition>,
) -> Result<Nfa> {
    check_letters(alpha, t)?;
    if r.alphabet() != alpha {
        return Err(Error::AlphabetMismatch("relation over a different alphabet".into()));
    }
    if !lag_shape(alpha, gamma, m).includes(t) {
        return Err(Error::LagBoundExceeded(format!("γ = {gamma}, m = {m}")));
    }
    if m <= 1 {
        return Ok(buffered_filter(alpha, t, r, gamma, m == 1));
    }
    let owned;
    let d = match certificate {
        Some(d) => d,
        None => {
            owned = r.recognizable_decomposition().ok_or(Error::NotRecognizableOnTarget)?;
            &owned
        }
    };
    filter_by_recognizable(alpha, t, d)
}

/// The full γ-lagged representation of ⟦S⟧: every synchronization of a pair
/// of ⟦S⟧ that lies in L_{≤γ}·(Σ*+Γ*).
pub fn full_gamma_lagged(alpha: &TaggedAlphabet, s: &Nfa, gamma: usize) -> Result<Nfa> {
    check_letters(alpha, s)?;
    let r = from_sync_fsl(alpha, s)?;
    Ok(buffered_filter(alpha, &lag_shape(alpha, gamma, 1), &r, gamma, true))
}

/// Same as [`full_gamma_lagged`] for a relation already in automatic form.
pub fn full_gamma_lagged_rel(r: &AutomaticRelation, gamma: usize) -> Nfa {
    let alpha = r.alphabet();
    buffered_filter(alpha, &lag_shape(alpha, gamma, 1), r, gamma, true)
}

/// The (ΣΓ)*(Σ*+Γ*)-controlled representative.
pub fn to_canonical_fsl(alpha: &TaggedAlphabet, s: &Nfa) -> Result<Nfa> {
    check_letters(alpha, s)?;
    Ok(from_sync_fsl(alpha, s)?.to_sync().minimal().to_nfa())
}

/// The Σ*Γ*-controlled representative.
pub fn to_canonical_fs(alpha: &TaggedAlphabet, s: &Nfa) -> Result<Nfa> {
    check_letters(alpha, s)?;
    if !classify(alpha, s)?.shift_finite {
        return Err(Error::NotFiniteShift);
    }
    let r = from_sync_fsl(alpha, s)?;
    let d = r
        .recognizable_decomposition()
        .ok_or_else(|| Error::Internal("finite-shift relation without a decomposition".into()))?;
    Ok(d.to_sync(alpha).minimal().to_nfa())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acbd() -> TaggedAlphabet {
        TaggedAlphabet::new(&["a", "b"], &["c", "d"])
    }

    #[test]
    fn difference_of_compatible_words() {
        let al = acbd();
        let x = al.word("a c a b").unwrap();
        let y = al.word("c a d c").unwrap();
        let (u, v) = diff_of(&al, &x, &y).unwrap();
        assert_eq!((al.show(&u), al.show(&v)), ("d c".into(), "a b".into()));
        let d2 = build_dk(2, &al);
        assert_eq!(d2.run(&al, &x, &y), Some(&(u, v)));
    }

    #[test]
    fn incompatible_letters() {
        let al = acbd();
        assert!(!compatible(&al, &[al.input(0)], &[al.input(1)]));
        assert!(compatible(&al, &[al.input(0)], &[al.output(1)]));
        let al = TaggedAlphabet::new(&["a"], &["c"]);
        let (u, v) = diff_of(&al, &al.word("a a").unwrap(), &al.word("a c").unwrap()).unwrap();
        assert_eq!((al.show(&u), al.show(&v)), ("c".into(), "a".into()));
    }

    #[test]
    fn d1_bounds_lag() {
        let al = TaggedAlphabet::new(&["a"], &["c"]);
        let d1 = build_dk(1, &al);
        let (a, c) = (al.input(0), al.output(0));
        assert!(d1.run(&al, &[a], &[c]).is_some());
        assert!(d1.run(&al, &[a, a], &[c, c]).is_none());
    }

    #[test]
    fn shape_membership() {
        let al = TaggedAlphabet::new(&["a"], &["c"]);
        let s = lag_shape(&al, 1, 1);
        assert!(s.accepts(&al.word("a c a a a").unwrap()));
        assert!(!s.accepts(&al.word("a a c").unwrap()));
        let s0 = lag_shape(&al, 0, 2);
        assert!(s0.accepts(&al.word("a a c c").unwrap()));
        assert!(!s0.accepts(&al.word("a c a").unwrap()));
    }
}
