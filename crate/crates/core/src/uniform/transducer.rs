//! Transducers and their synchronization languages.

use crate::automata::{Letter, Nfa, State};
use crate::error::{Error, Result};
use crate::syncword::TaggedAlphabet;

/// A transducer with word-labelled transitions. Words are raw Σ / Γ indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nft {
    pub alpha: TaggedAlphabet,
    pub states: usize,
    pub initial: State,
    pub transitions: Vec<(State, Vec<usize>, Vec<usize>, State)>,
    /// Final output per state; `Some` exactly on final states.
    pub final_out: Vec<Option<Vec<usize>>>,
}

impl Nft {
    pub fn new(alpha: &TaggedAlphabet, states: usize) -> Self {
        Nft {
            alpha: alpha.clone(),
            states: states.max(1),
            initial: 0,
            transitions: Vec::new(),
            final_out: vec![None; states.max(1)],
        }
    }

    pub fn is_final(&self, q: State) -> bool {
        self.final_out[q].is_some()
    }

    fn check(&self) -> Result<()> {
        let bad_state = |q: State| q >= self.states;
        if bad_state(self.initial) || self.transitions.iter().any(|(p, _, _, q)| bad_state(*p) || bad_state(*q)) {
            return Err(Error::UnknownState(self.states));
        }
        let (ni, no) = (self.alpha.n_in(), self.alpha.n_out());
        let bad_words = self.transitions.iter().any(|(_, u, v, _)| u.iter().any(|&a| a >= ni) || v.iter().any(|&b| b >= no));
        if bad_words || self.final_out.iter().flatten().flatten().any(|&b| b >= no) {
            return Err(Error::AlphabetMismatch("transducer letter out of range".into()));
        }
        Ok(())
    }
}

/// An input-deterministic transducer reading one letter per transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubseqTransducer {
    pub alpha: TaggedAlphabet,
    pub initial: State,
    /// `delta[q][a]` = (output word, target).
    pub delta: Vec<Vec<Option<(Vec<usize>, State)>>>,
    pub final_out: Vec<Option<Vec<usize>>>,
}

impl SubseqTransducer {
    pub fn new(alpha: &TaggedAlphabet, states: usize) -> Self {
        let states = states.max(1);
        SubseqTransducer {
            alpha: alpha.clone(),
            initial: 0,
            delta: vec![vec![None; alpha.n_in()]; states],
            final_out: vec![None; states],
        }
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn add_state(&mut self) -> State {
        self.delta.push(vec![None; self.alpha.n_in()]);
        self.final_out.push(None);
        self.delta.len() - 1
    }

    pub fn to_nft(&self) -> Nft {
        let mut t = Nft::new(&self.alpha, self.num_states());
        t.initial = self.initial;
        t.final_out = self.final_out.clone();
        for (p, row) in self.delta.iter().enumerate() {
            for (a, e) in row.iter().enumerate() {
                if let Some((v, q)) = e {
                    t.transitions.push((p, vec![a], v.clone(), *q));
                }
            }
        }
        t
    }
}

/// Output of the subsequential function on `u`; `None` if `u` is rejected.
pub fn eval_subseq(f: &SubseqTransducer, u: &[usize]) -> Option<Vec<usize>> {
    let mut q = f.initial;
    let mut out = Vec::new();
    for &a in u {
        let (v, r) = f.delta[q].get(a)?.as_ref()?;
        out.extend(v);
        q = *r;
    }
    out.extend(f.final_out[q].as_ref()?);
    Some(out)
}

/// S(T): each transition u|v contributes the synchronization u·v, and the
/// final output is appended at the end.
pub fn sync_language_of_transducer(t: &Nft) -> Result<Nfa> {
    t.check()?;
    let al = &t.alpha;
    let mut a = Nfa::new(al.size());
    for _ in 1..t.states {
        a.add_state();
    }
    a.set_initial(t.initial);
    let path = |a: &mut Nfa, p: State, w: &[Letter], q: State| {
        if w.is_empty() {
            a.add_eps(p, q);
            return;
        }
        let mut cur = p;
        for (i, &l) in w.iter().enumerate() {
            let next = if i + 1 == w.len() { q } else { a.add_state() };
            a.add_edge(cur, l, next);
            cur = next;
        }
    };
    for (p, u, v, q) in &t.transitions {
        let w: Vec<Letter> = al.input_word(u).into_iter().chain(al.output_word(v)).collect();
        path(&mut a, *p, &w, *q);
    }
    let acc = a.add_state();
    a.set_final(acc, true);
    for (p, f) in t.final_out.iter().enumerate() {
        if let Some(v) = f {
            path(&mut a, p, &al.output_word(v), acc);
        }
    }
    Ok(a.trim())
}

/// A transducer with one single-letter transition per NFA edge.
pub fn transducer_from_sync(alpha: &TaggedAlphabet, s: &Nfa) -> Result<Nft> {
    if s.letters() != alpha.size() {
        return Err(Error::AlphabetMismatch("language is not over the tagged alphabet".into()));
    }
    let mut t = Nft::new(alpha, s.num_states());
    t.initial = s.initial();
    for p in 0..s.num_states() {
        if s.is_final(p) {
            t.final_out[p] = Some(Vec::new());
        }
        for &(l, q) in s.edges(p) {
            let x = alpha.raw(l);
            let (u, v) = if alpha.is_input(l) { (vec![x], vec![]) } else { (vec![], vec![x]) };
            t.transitions.push((p, u, v, q));
        }
        for &q in s.eps_edges(p) {
            t.transitions.push((p, vec![], vec![], q));
        }
    }
    Ok(t)
}

/// S(t) ⊆ T.
pub fn is_t_controlled(t: &Nft, target: &Nfa) -> Result<bool> {
    let s = sync_language_of_transducer(t)?;
    if s.letters() != target.letters() {
        return Err(Error::AlphabetMismatch("target over a different alphabet".into()));
    }
    Ok(target.includes(&s))
}
