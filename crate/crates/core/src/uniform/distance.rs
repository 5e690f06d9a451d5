//! Distance automata over Σ and their limitedness.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::automata::{Dfa, Letter, Nfa, State};
use crate::error::{Error, Result};
use crate::syncword::TaggedAlphabet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Zero,
    One,
    /// Never usable; the transition behaves as if absent.
    Inf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceAutomaton {
    letters: usize,
    initial: State,
    finals: Vec<bool>,
    edges: Vec<(State, Letter, State, Weight)>,
}

impl DistanceAutomaton {
    pub fn new(letters: usize, states: usize) -> Self {
        DistanceAutomaton {
            letters,
            initial: 0,
            finals: vec![false; states.max(1)],
            edges: Vec::new(),
        }
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn set_initial(&mut self, q: State) {
        assert!(q < self.num_states());
        self.initial = q;
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals[q]
    }

    pub fn set_final(&mut self, q: State, f: bool) {
        self.finals[q] = f;
    }

    pub fn add_state(&mut self) -> State {
        self.finals.push(false);
        self.finals.len() - 1
    }

    pub fn add_edge(&mut self, p: State, a: Letter, q: State, w: Weight) {
        assert!(p < self.num_states() && q < self.num_states() && a < self.letters);
        self.edges.push((p, a, q, w));
    }

    pub fn edges(&self) -> &[(State, Letter, State, Weight)] {
        &self.edges
    }

    /// Usable edges grouped by source and letter.
    fn table(&self) -> Vec<Vec<Vec<(State, u8)>>> {
        let mut t = vec![vec![Vec::new(); self.letters]; self.num_states()];
        for &(p, a, q, w) in &self.edges {
            match w {
                Weight::Zero => t[p][a].push((q, 0)),
                Weight::One => t[p][a].push((q, 1)),
                Weight::Inf => {}
            }
        }
        t
    }

    /// The underlying language, weights forgotten.
    pub fn language(&self) -> Nfa {
        let mut a = Nfa::new(self.letters);
        for _ in 1..self.num_states() {
            a.add_state();
        }
        a.set_initial(self.initial);
        for (q, &f) in self.finals.iter().enumerate() {
            a.set_final(q, f);
        }
        for &(p, l, q, w) in &self.edges {
            if w != Weight::Inf {
                a.add_edge(p, l, q);
            }
        }
        a
    }
}

/// Σ-automaton whose weight counts the output blocks a run of `a` passes.
///
/// Every synchronization reads as Γ* a₁ Γ* a₂ … aₙ Γ*. A fresh initial
/// state ι absorbs the leading block into the first input letter and later
/// blocks are charged to the input letter before them. ι is final when an
/// output-only word is accepted.
pub fn build_distance_automaton(alpha: &TaggedAlphabet, a: &Nfa) -> Result<DistanceAutomaton> {
    if a.letters() != alpha.size() {
        return Err(Error::AlphabetMismatch("language is not over the tagged alphabet".into()));
    }
    let a = a.remove_eps().trim();
    let n = a.num_states();
    // out[p] = states reachable from p by Γ⁺
    let mut out: Vec<HashSet<State>> = vec![HashSet::new(); n];
    for p in 0..n {
        let mut stack: Vec<State> = vec![p];
        while let Some(q) = stack.pop() {
            for &(l, r) in a.edges(q) {
                if !alpha.is_input(l) && out[p].insert(r) {
                    stack.push(r);
                }
            }
        }
    }
    let star = |p: State| -> Vec<State> {
        let mut v: Vec<State> = out[p].iter().copied().chain([p]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let ends_final = |p: State| star(p).into_iter().any(|r| a.is_final(r));

    let mut b = DistanceAutomaton::new(alpha.n_in(), n);
    let iota = b.add_state();
    b.set_initial(iota);
    for p in 0..n {
        b.set_final(p, a.is_final(p));
    }
    if a.is_empty() {
        return Ok(b);
    }
    b.set_final(iota, ends_final(a.initial()));

    // input steps p -a-> q, then Γ⁺ to r
    let mut zero: HashSet<(State, Letter, State)> = HashSet::new();
    for p in 0..n {
        for &(l, q) in a.edges(p) {
            if alpha.is_input(l) {
                zero.insert((p, alpha.raw(l), q));
            }
        }
    }
    let mut one: HashSet<(State, Letter, State)> = HashSet::new();
    for &(p, x, q) in &zero {
        for &r in &out[q] {
            if !zero.contains(&(p, x, r)) {
                one.insert((p, x, r));
            }
        }
    }
    for &(p, x, q) in &zero {
        b.add_edge(p, x, q, Weight::Zero);
    }
    for &(p, x, q) in &one {
        b.add_edge(p, x, q, Weight::One);
    }

    // ι reads the first input letter after an optional output block
    let q0 = a.initial();
    let mut first: HashMap<(Letter, State), Weight> = HashMap::new();
    let starts = [(q0, Weight::Zero)].into_iter().chain(out[q0].iter().map(|&r| (r, Weight::One)));
    for (r, lead) in starts {
        for &(p, x, q, w) in &b.edges {
            if p == r {
                let e = first.entry((x, q)).or_insert(Weight::Inf);
                *e = (*e).min(lead.max(w));
            }
        }
    }
    for ((x, q), w) in first {
        b.add_edge(iota, x, q, w);
    }
    b.edges.sort_unstable();
    Ok(b)
}

/// Minimal weight of an accepting run; `None` when `w` is rejected.
pub fn distance_of_word(b: &DistanceAutomaton, w: &[Letter]) -> Option<u64> {
    let t = b.table();
    let mut cur: Vec<Option<u64>> = vec![None; b.num_states()];
    cur[b.initial] = Some(0);
    for &x in w {
        if x >= b.letters {
            return None;
        }
        let mut next = vec![None; b.num_states()];
        for (p, d) in cur.iter().enumerate() {
            let Some(d) = d else { continue };
            for &(q, c) in &t[p][x] {
                let v = d + c as u64;
                if next[q].is_none_or(|o| v < o) {
                    next[q] = Some(v);
                }
            }
        }
        cur = next;
    }
    (0..b.num_states()).filter(|&q| b.finals[q]).filter_map(|q| cur[q]).min()
}

// Abstract weights: 0 < 1 < ω < ∞.
const OMEGA: u8 = 2;
const INF: u8 = 3;

type Matrix = Vec<u8>;

fn mul(n: usize, x: &Matrix, y: &Matrix) -> Matrix {
    let mut z = vec![INF; n * n];
    for i in 0..n {
        for k in 0..n {
            let a = x[i * n + k];
            if a == INF {
                continue;
            }
            for j in 0..n {
                let v = a.max(y[k * n + j]);
                if v < z[i * n + j] {
                    z[i * n + j] = v;
                }
            }
        }
    }
    z
}

fn sharp(n: usize, e: &Matrix) -> Matrix {
    let loop_ = |k: usize| match e[k * n + k] {
        0 => 0,
        INF => INF,
        _ => OMEGA,
    };
    let mut z = vec![INF; n * n];
    for i in 0..n {
        for j in 0..n {
            z[i * n + j] = (0..n).map(|k| e[i * n + k].max(loop_(k)).max(e[k * n + j])).min().unwrap_or(INF);
        }
    }
    z
}

/// Whether sup{d(w) | w ∈ L(B)} is finite.
///
/// Closes the letter matrices over {0, 1, ω, ∞} under product and
/// stabilization of idempotents (Leung); B is unlimited iff some element
/// connects an initial to a final state with ω at best.
pub fn is_limited(b: &DistanceAutomaton) -> bool {
    let n = b.num_states();
    let t = b.table();
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut all: Vec<Matrix> = Vec::new();
    let mut todo: VecDeque<Matrix> = VecDeque::new();
    for x in 0..b.letters {
        let mut m = vec![INF; n * n];
        for (p, row) in t.iter().enumerate() {
            for &(q, c) in &row[x] {
                m[p * n + q] = m[p * n + q].min(c);
            }
        }
        if seen.insert(m.clone()) {
            todo.push_back(m);
        }
    }
    let finals: Vec<State> = (0..n).filter(|&q| b.finals[q]).collect();
    let i = b.initial;
    while let Some(m) = todo.pop_front() {
        if finals.iter().map(|&f| m[i * n + f]).min() == Some(OMEGA) {
            return false;
        }
        let mut fresh = Vec::new();
        if mul(n, &m, &m) == m {
            fresh.push(sharp(n, &m));
        }
        for o in &all {
            fresh.push(mul(n, o, &m));
            fresh.push(mul(n, &m, o));
        }
        fresh.push(mul(n, &m, &m));
        all.push(m);
        for f in fresh {
            if seen.insert(f.clone()) {
                todo.push_back(f);
            }
        }
    }
    true
}

/// {w | d(w) ≤ k}, by subset construction on counters saturated at k + 1.
fn bounded_language(b: &DistanceAutomaton, k: u64) -> Dfa {
    let t = b.table();
    let n = b.num_states();
    let cap = k + 1;
    let mut start = vec![cap; n];
    start[b.initial] = 0;
    let accepting = |v: &[u64]| (0..n).any(|q| b.finals[q] && v[q] <= k);
    let mut d = Dfa::new(b.letters);
    d.set_final(0, accepting(&start));
    let mut ids: HashMap<Vec<u64>, State> = HashMap::from([(start.clone(), 0)]);
    let mut todo = vec![start];
    while let Some(v) = todo.pop() {
        let me = ids[&v];
        for x in 0..b.letters {
            let mut nv = vec![cap; n];
            for p in 0..n {
                if v[p] >= cap {
                    continue;
                }
                for &(q, c) in &t[p][x] {
                    nv[q] = nv[q].min((v[p] + c as u64).min(cap));
                }
            }
            if nv.iter().all(|&c| c >= cap) {
                continue;
            }
            let to = match ids.get(&nv) {
                Some(&s) => s,
                None => {
                    let s = d.add_state();
                    d.set_final(s, accepting(&nv));
                    ids.insert(nv.clone(), s);
                    todo.push(nv);
                    s
                }
            };
            d.set_edge(me, x, to);
        }
    }
    d
}

/// D(B) = sup{d(w) | w ∈ L(B)}, by iterative deepening on k.
pub fn bounded_distance_value(b: &DistanceAutomaton) -> Result<u64> {
    if !is_limited(b) {
        return Err(Error::NotLimited);
    }
    let lang = b.language().minimal();
    let n = b.num_states() as u32;
    let limit = 1u64.checked_shl(n.saturating_mul(n)).unwrap_or(u64::MAX).saturating_add(1);
    let mut k = 0;
    loop {
        if bounded_language(b, k).equivalent(&lang) {
            return Ok(k);
        }
        if k >= limit {
            return Err(Error::Diverged);
        }
        k += 1;
    }
}
