//! Tagged alphabets, synchronizations and their metrics, and the
//! finite-shift machinery of a target language (Q^FS, fse, γ).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::automata::regex::split_token;
use crate::automata::{scc, Dfa, Letter, Nfa, State, Symbols};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    Input,
    Output,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Input => Role::Output,
            Role::Output => Role::Input,
        }
    }
}

/// Input letters are `0..|Σ|`, output letters follow; declaration order is
/// the letter order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TaggedAlphabet {
    inputs: Vec<String>,
    outputs: Vec<String>,
}

pub type TaggedWord = Vec<Letter>;

impl TaggedAlphabet {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(inputs: &[S], outputs: &[T]) -> Self {
        TaggedAlphabet {
            inputs: inputs.iter().map(|s| s.as_ref().to_string()).collect(),
            outputs: outputs.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn n_in(&self) -> usize {
        self.inputs.len()
    }

    pub fn n_out(&self) -> usize {
        self.outputs.len()
    }

    pub fn size(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn role(&self, a: Letter) -> Role {
        if a < self.inputs.len() {
            Role::Input
        } else {
            Role::Output
        }
    }

    pub fn is_input(&self, a: Letter) -> bool {
        a < self.inputs.len()
    }

    pub fn input(&self, i: usize) -> Letter {
        debug_assert!(i < self.n_in());
        i
    }

    pub fn output(&self, j: usize) -> Letter {
        debug_assert!(j < self.n_out());
        self.inputs.len() + j
    }

    /// Index within Σ or Γ.
    pub fn raw(&self, a: Letter) -> usize {
        if self.is_input(a) {
            a
        } else {
            a - self.inputs.len()
        }
    }

    pub fn input_letters(&self) -> std::ops::Range<Letter> {
        0..self.inputs.len()
    }

    pub fn output_letters(&self) -> std::ops::Range<Letter> {
        self.inputs.len()..self.size()
    }

    pub fn letters_of(&self, r: Role) -> std::ops::Range<Letter> {
        match r {
            Role::Input => self.input_letters(),
            Role::Output => self.output_letters(),
        }
    }

    pub fn symbol(&self, a: Letter) -> &str {
        if self.is_input(a) {
            &self.inputs[a]
        } else {
            &self.outputs[a - self.inputs.len()]
        }
    }

    pub fn name(&self, a: Letter) -> String {
        match self.role(a) {
            Role::Input => format!("i:{}", self.symbol(a)),
            Role::Output => format!("o:{}", self.symbol(a)),
        }
    }

    /// Raw symbols are shared between Σ and Γ, so bare names are ambiguous.
    pub fn overlapping(&self) -> bool {
        self.inputs.iter().any(|s| self.outputs.contains(s))
    }

    pub fn show(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        let tagged = self.overlapping();
        w.iter()
            .map(|&a| if tagged { self.name(a) } else { self.symbol(a).to_string() })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn show_tagged(&self, w: &[Letter]) -> String {
        w.iter().map(|&a| self.name(a)).collect::<Vec<_>>().join(" ")
    }

    /// Parses whitespace-separated letters (`i:a`, `o:c`, or bare symbols
    /// when unambiguous). `eps` and `ε` denote the empty word.
    pub fn word(&self, text: &str) -> Result<TaggedWord> {
        let mut w = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "eps" || tok == "ε" {
                continue;
            }
            w.extend(split_token(self, tok)?);
        }
        Ok(w)
    }

    pub fn input_word(&self, raw: &[usize]) -> TaggedWord {
        raw.iter().map(|&i| self.input(i)).collect()
    }

    pub fn output_word(&self, raw: &[usize]) -> TaggedWord {
        raw.iter().map(|&j| self.output(j)).collect()
    }
}

impl Symbols for TaggedAlphabet {
    fn letters(&self) -> usize {
        self.size()
    }

    fn lookup(&self, tok: &str) -> Option<Letter> {
        if let Some(s) = tok.strip_prefix("i:") {
            return self.inputs.iter().position(|x| x == s);
        }
        if let Some(s) = tok.strip_prefix("o:") {
            return self.outputs.iter().position(|x| x == s).map(|j| self.output(j));
        }
        let i = self.inputs.iter().position(|x| x == tok);
        let o = self.outputs.iter().position(|x| x == tok);
        match (i, o) {
            (Some(i), None) => Some(i),
            (None, Some(j)) => Some(self.output(j)),
            _ => None,
        }
    }

    fn class(&self, name: &str) -> Option<Vec<Letter>> {
        match name {
            "Sigma" | "Σ" => Some(self.input_letters().collect()),
            "Gamma" | "Γ" => Some(self.output_letters().collect()),
            _ => None,
        }
    }
}

impl fmt::Display for TaggedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ={{{}}} Γ={{{}}}", self.inputs.join(","), self.outputs.join(","))
    }
}

/// π_i or π_o, as raw indices into Σ or Γ.
pub fn project(alpha: &TaggedAlphabet, w: &[Letter], side: Role) -> Vec<usize> {
    w.iter().filter(|&&a| alpha.role(a) == side).map(|&a| alpha.raw(a)).collect()
}

/// ⟦w⟧.
pub fn decode_pair(alpha: &TaggedAlphabet, w: &[Letter]) -> (Vec<usize>, Vec<usize>) {
    (project(alpha, w, Role::Input), project(alpha, w, Role::Output))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WordMetrics {
    pub lag: usize,
    pub shift: usize,
    pub shiftlag: usize,
}

pub fn word_metrics(alpha: &TaggedAlphabet, w: &[Letter]) -> WordMetrics {
    let mut bal: i64 = 0;
    let mut lag = 0;
    let mut shift_lags = Vec::new();
    for (i, &a) in w.iter().enumerate() {
        bal += if alpha.is_input(a) { 1 } else { -1 };
        lag = lag.max(bal.unsigned_abs() as usize);
        if i + 1 < w.len() && alpha.role(a) != alpha.role(w[i + 1]) {
            shift_lags.push(bal.unsigned_abs() as usize);
        }
    }
    // n consecutive shifts at lag ≥ n exist iff the longest run of shifts
    // at lag ≥ n has length ≥ n, which fails from some n on
    let longest_run = |n: usize| {
        let (mut best, mut cur) = (0, 0);
        for &l in &shift_lags {
            cur = if l >= n { cur + 1 } else { 0 };
            best = best.max(cur);
        }
        best
    };
    let mut shiftlag = 0;
    while longest_run(shiftlag + 1) > shiftlag {
        shiftlag += 1;
    }
    WordMetrics {
        lag,
        shift: shift_lags.len(),
        shiftlag,
    }
}

pub fn word_is_controlled(w: &[Letter], s: &Nfa) -> bool {
    s.accepts(w)
}

/// L(x) ⊆ L(S).
pub fn is_controlled(x: &Nfa, s: &Nfa) -> Result<bool> {
    if x.letters() != s.letters() {
        return Err(Error::AlphabetMismatch("controlled check over different alphabets".into()));
    }
    Ok(s.includes(x))
}

/// Cycle structure of a trimmed, ε-free automaton.
struct CycleInfo {
    comp: Vec<usize>,
    mixed: Vec<bool>,
    unbalanced: Vec<bool>,
    reaches_mixed: Vec<bool>,
}

fn cycle_info(alpha: &TaggedAlphabet, n: usize, edges: &dyn Fn(State) -> Vec<(Letter, State)>) -> CycleInfo {
    let comp = scc(n, &|q| edges(q).into_iter().map(|e| e.1).collect());
    let nc = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut has_in = vec![false; nc];
    let mut has_out = vec![false; nc];
    let mut pot: Vec<Option<i64>> = vec![None; n];
    let mut unbalanced = vec![false; nc];
    let mut members: Vec<Vec<State>> = vec![Vec::new(); nc];
    for q in 0..n {
        members[comp[q]].push(q);
    }
    for c in 0..nc {
        let root = members[c][0];
        pot[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            let pp = pot[p].unwrap();
            for (a, r) in edges(p) {
                if comp[r] != c {
                    continue;
                }
                if alpha.is_input(a) {
                    has_in[c] = true;
                } else {
                    has_out[c] = true;
                }
                let w = if alpha.is_input(a) { 1 } else { -1 };
                match pot[r] {
                    None => {
                        pot[r] = Some(pp + w);
                        queue.push_back(r);
                    }
                    Some(x) if x != pp + w => unbalanced[c] = true,
                    _ => {}
                }
            }
        }
    }
    let mixed: Vec<bool> = (0..nc).map(|c| has_in[c] && has_out[c]).collect();
    // Tarjan numbers components so that successors come first.
    let mut reaches_mixed = mixed.clone();
    for c in 0..nc {
        for &q in &members[c] {
            for (_, r) in edges(q) {
                if comp[r] != c && reaches_mixed[comp[r]] {
                    reaches_mixed[c] = true;
                }
            }
        }
    }
    CycleInfo {
        comp,
        mixed,
        unbalanced,
        reaches_mixed,
    }
}

fn nfa_cycle_info(alpha: &TaggedAlphabet, s: &Nfa) -> CycleInfo {
    let t = s.remove_eps().trim();
    cycle_info(alpha, t.num_states(), &|q| t.edges(q).to_vec())
}

fn check_alpha(alpha: &TaggedAlphabet, s: &Nfa) {
    assert_eq!(alpha.size(), s.letters(), "automaton is not over the tagged alphabet");
}

pub fn finite_lag(alpha: &TaggedAlphabet, s: &Nfa) -> bool {
    check_alpha(alpha, s);
    !nfa_cycle_info(alpha, s).unbalanced.iter().any(|&u| u)
}

pub fn finite_shift(alpha: &TaggedAlphabet, s: &Nfa) -> bool {
    check_alpha(alpha, s);
    !nfa_cycle_info(alpha, s).mixed.iter().any(|&m| m)
}

pub fn finite_shiftlag(alpha: &TaggedAlphabet, s: &Nfa) -> bool {
    check_alpha(alpha, s);
    let info = nfa_cycle_info(alpha, s);
    !(0..info.mixed.len()).any(|c| info.unbalanced[c] && info.reaches_mixed[c])
}

/// Q^FS of a DFA: states whose residual language has finite shift. States
/// outside the trim part have empty residuals and count as finite-shift.
pub fn fs_states(alpha: &TaggedAlphabet, dfa: &Dfa) -> Vec<bool> {
    let fw = dfa.reachable();
    let bw = dfa.coreachable();
    let useful: Vec<bool> = (0..dfa.num_states()).map(|q| fw[q] && bw[q]).collect();
    let edges = |q: State| -> Vec<(Letter, State)> {
        if !useful[q] {
            return Vec::new();
        }
        dfa.edges(q).filter(|&(_, r)| useful[r]).collect()
    };
    let info = cycle_info(alpha, dfa.num_states(), &edges);
    (0..dfa.num_states()).map(|q| !useful[q] || !info.reaches_mixed[info.comp[q]]).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SyncClass {
    FS,
    FSL,
    ALL,
}

#[derive(Clone, Debug)]
pub struct SyncClassification {
    pub lag_finite: bool,
    pub shift_finite: bool,
    pub shiftlag_finite: bool,
    pub class: SyncClass,
    /// Minimal DFA the state sets refer to.
    pub dfa: Dfa,
    pub fs_states: Vec<bool>,
    pub gamma: Option<usize>,
}

pub fn classify(alpha: &TaggedAlphabet, s: &Nfa) -> Result<SyncClassification> {
    check_alpha(alpha, s);
    let info = nfa_cycle_info(alpha, s);
    let nc = info.mixed.len();
    let lag_finite = !info.unbalanced.iter().any(|&u| u);
    let shift_finite = !info.mixed.iter().any(|&m| m);
    let shiftlag_finite = !(0..nc).any(|c| info.unbalanced[c] && info.reaches_mixed[c]);
    let dfa = s.minimal();
    let fs = fs_states(alpha, &dfa);
    let gamma = if shiftlag_finite {
        Some(gamma_of(alpha, &dfa, &fs)?)
    } else {
        None
    };
    let class = if shift_finite {
        SyncClass::FS
    } else if shiftlag_finite {
        SyncClass::FSL
    } else {
        SyncClass::ALL
    };
    Ok(SyncClassification {
        lag_finite,
        shift_finite,
        shiftlag_finite,
        class,
        dfa,
        fs_states: fs,
        gamma,
    })
}

/// Largest |#in − #out| over runs that stay outside Q^FS.
pub(crate) fn gamma_of(alpha: &TaggedAlphabet, dfa: &Dfa, fs: &[bool]) -> Result<usize> {
    if fs[dfa.initial()] {
        return Ok(0);
    }
    let cap = dfa.num_states() as i64 + 1;
    let mut seen: HashSet<(State, i64)> = HashSet::new();
    let mut queue = VecDeque::from([(dfa.initial(), 0i64)]);
    seen.insert((dfa.initial(), 0));
    let mut best = 0;
    while let Some((q, b)) = queue.pop_front() {
        best = best.max(b.unsigned_abs() as usize);
        for (a, r) in dfa.edges(q) {
            if fs[r] {
                continue;
            }
            let nb = b + if alpha.is_input(a) { 1 } else { -1 };
            if nb.abs() > cap {
                return Err(Error::Internal(
                    "unbounded balance outside Q^FS in a finite-shiftlag language".into(),
                ));
            }
            if seen.insert((r, nb)) {
                queue.push_back((r, nb));
            }
        }
    }
    Ok(best)
}

pub fn gamma_bound(alpha: &TaggedAlphabet, t: &Nfa) -> Result<usize> {
    let c = classify(alpha, t)?;
    c.gamma.ok_or(Error::NotFiniteShiftlag)
}

/// The DFA of `fse(T)`: runs of the minimal DFA of T that stop on first
/// entering Q^FS.
pub fn fse_dfa(alpha: &TaggedAlphabet, t: &Nfa) -> Dfa {
    let dfa = t.minimal();
    let fs = fs_states(alpha, &dfa);
    let mut out = Dfa::new(dfa.letters());
    for _ in 1..dfa.num_states() {
        out.add_state();
    }
    out.set_initial(dfa.initial());
    for q in 0..dfa.num_states() {
        out.set_final(q, fs[q]);
        if fs[q] {
            continue;
        }
        for (a, r) in dfa.edges(q) {
            out.set_edge(q, a, r);
        }
    }
    out.minimize()
}

pub fn fse_automaton(alpha: &TaggedAlphabet, t: &Nfa) -> Nfa {
    fse_dfa(alpha, t).to_nfa()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_regex;

    fn ab() -> TaggedAlphabet {
        TaggedAlphabet::new(&["a"], &["b"])
    }

    fn re(al: &TaggedAlphabet, s: &str) -> Nfa {
        parse_regex(s, al).unwrap()
    }

    #[test]
    fn word_metrics_example() {
        let al = ab();
        let w = al.word("aabaabbbbbbbaaab").unwrap();
        assert_eq!(
            word_metrics(&al, &w),
            WordMetrics {
                lag: 4,
                shift: 5,
                shiftlag: 2
            }
        );
        assert_eq!(word_metrics(&al, &[]), WordMetrics { lag: 0, shift: 0, shiftlag: 0 });
        assert_eq!(word_metrics(&al, &[0, 0, 0]), WordMetrics { lag: 3, shift: 0, shiftlag: 0 });
    }

    #[test]
    fn projections() {
        let al = TaggedAlphabet::new(&["a", "b", "c"], &["d", "e"]);
        let w = al.word("o:d i:a i:b o:d").unwrap();
        assert_eq!(decode_pair(&al, &w), (vec![0, 1], vec![0, 0]));
        assert_eq!(project(&al, &[], Role::Output), Vec::<usize>::new());
    }

    #[test]
    fn deciders_on_fixtures() {
        let al = ab();
        let cases = [
            ("a*b*a*", false, true, true),
            ("a*b*a*b*", false, true, true),
            ("(a b)*", true, false, true),
            ("(a+b)*", false, false, false),
            ("(a b)*(a a^+ + b b^+)", false, false, true),
        ];
        for (r, lag, shift, sl) in cases {
            let s = re(&al, r);
            assert_eq!(finite_lag(&al, &s), lag, "lag {r}");
            assert_eq!(finite_shift(&al, &s), shift, "shift {r}");
            assert_eq!(finite_shiftlag(&al, &s), sl, "shiftlag {r}");
        }
    }

    #[test]
    fn classification_and_gamma() {
        let al = TaggedAlphabet::new(&["a", "b"], &["c", "d"]);
        let c = classify(&al, &re(&al, "Sigma* Gamma*")).unwrap();
        assert_eq!((c.class, c.gamma), (SyncClass::FS, Some(0)));
        let c = classify(&al, &re(&al, "(Sigma Gamma)*(Sigma* + Gamma*)")).unwrap();
        assert_eq!((c.class, c.gamma), (SyncClass::FSL, Some(1)));
        let c = classify(&al, &re(&al, "(Sigma + Gamma)*")).unwrap();
        assert_eq!((c.class, c.gamma), (SyncClass::ALL, None));
        let al = ab();
        let t = re(&al, "a*b* + (a b)*(a a^+ + b b^+)");
        assert_eq!(gamma_bound(&al, &t), Ok(1));
        assert_eq!(gamma_bound(&al, &re(&al, "(a+b)*")), Err(Error::NotFiniteShiftlag));
    }

    #[test]
    fn fs_states_and_entries() {
        let al = ab();
        let t = re(&al, "a*b* + (a b)*(a a^+ + b b^+)");
        let d = t.minimal();
        let fs = fs_states(&al, &d);
        assert!(fs[d.run(&[0, 0]).unwrap()]);
        assert!(!fs[d.run(&[0]).unwrap()]);
        let fse = fse_automaton(&al, &t);
        assert!(fse.accepts(&[0, 0]));
        assert!(fse.accepts(&[1]));
        assert!(!fse.accepts(&[0, 1]));
        let all = re(&al, "Sigma* Gamma*");
        let fse = fse_automaton(&al, &all);
        assert_eq!(fse.enumerate_up_to(4), vec![Vec::<Letter>::new()]);
        let alt = re(&al, "(a b)*");
        assert!(fse_automaton(&al, &alt).is_empty());
    }
}
