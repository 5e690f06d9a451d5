use std::collections::{HashMap, VecDeque};

use super::nfa::Nfa;
use super::{Letter, State};

/// Deterministic automaton with a partial transition function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    letters: usize,
    initial: State,
    finals: Vec<bool>,
    delta: Vec<Option<State>>,
}

impl Dfa {
    pub fn new(letters: usize) -> Self {
        Dfa {
            letters,
            initial: 0,
            finals: vec![false],
            delta: vec![None; letters],
        }
    }

    pub fn empty(letters: usize) -> Self {
        Self::new(letters)
    }

    pub fn universal(letters: usize) -> Self {
        let mut d = Self::new(letters);
        d.set_final(0, true);
        for a in 0..letters {
            d.set_edge(0, a, 0);
        }
        d
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
        self.delta.extend(std::iter::repeat_n(None, self.letters));
        self.finals.len() - 1
    }

    pub fn set_edge(&mut self, p: State, a: Letter, q: State) {
        self.delta[p * self.letters + a] = Some(q);
    }

    pub fn step(&self, q: State, a: Letter) -> Option<State> {
        self.delta[q * self.letters + a]
    }

    pub fn edges(&self, q: State) -> impl Iterator<Item = (Letter, State)> + '_ {
        (0..self.letters).filter_map(move |a| self.step(q, a).map(|r| (a, r)))
    }

    pub fn run_from(&self, q: State, w: &[Letter]) -> Option<State> {
        w.iter().try_fold(q, |q, &a| self.step(q, a))
    }

    pub fn run(&self, w: &[Letter]) -> Option<State> {
        self.run_from(self.initial, w)
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.run(w).is_some_and(|q| self.finals[q])
    }

    pub fn with_initial(&self, q: State) -> Dfa {
        let mut d = self.clone();
        d.set_initial(q);
        d
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut n = Nfa::new(self.letters);
        for _ in 1..self.num_states() {
            n.add_state();
        }
        for q in 0..self.num_states() {
            n.set_final(q, self.finals[q]);
            for (a, r) in self.edges(q) {
                n.add_edge(q, a, r);
            }
        }
        n.set_initial(self.initial);
        n
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for (_, r) in self.edges(q) {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<State>> = vec![Vec::new(); n];
        for q in 0..n {
            for (_, r) in self.edges(q) {
                rev[r].push(q);
            }
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<State> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Reachable and co-reachable part; canonical empty DFA when empty.
    pub fn trim(&self) -> Dfa {
        let fw = self.reachable();
        let bw = self.coreachable();
        if !bw[self.initial] {
            return Dfa::empty(self.letters);
        }
        let keep: Vec<bool> = (0..self.num_states()).map(|q| fw[q] && bw[q]).collect();
        let mut map = vec![usize::MAX; self.num_states()];
        let mut out = Dfa {
            letters: self.letters,
            initial: 0,
            finals: Vec::new(),
            delta: Vec::new(),
        };
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = out.add_state();
                out.finals[map[q]] = self.finals[q];
            }
        }
        for q in 0..self.num_states() {
            if keep[q] {
                for (a, r) in self.edges(q) {
                    if keep[r] {
                        out.set_edge(map[q], a, map[r]);
                    }
                }
            }
        }
        out.initial = map[self.initial];
        out
    }

    pub fn is_empty(&self) -> bool {
        let fw = self.reachable();
        !(0..self.num_states()).any(|q| fw[q] && self.finals[q])
    }

    /// Minimal trimmed DFA with states numbered in breadth-first order, so
    /// equal languages yield equal values.
    pub fn minimize(&self) -> Dfa {
        let t = self.trim();
        let n = t.num_states();
        let k = t.letters;
        let mut class: Vec<usize> = (0..n).map(|q| usize::from(t.finals[q])).collect();
        let mut count = class.iter().collect::<std::collections::HashSet<_>>().len();
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                for a in 0..k {
                    sig.push(t.step(q, a).map_or(usize::MAX, |r| class[r]));
                }
                let len = ids.len();
                next[q] = *ids.entry(sig).or_insert(len);
            }
            let c = ids.len();
            class = next;
            if c == count {
                break;
            }
            count = c;
        }
        // renumber classes breadth-first from the initial class
        let mut order = vec![usize::MAX; count];
        let mut rep = vec![usize::MAX; count];
        for q in 0..n {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
            }
        }
        let mut out = Dfa {
            letters: k,
            initial: 0,
            finals: Vec::new(),
            delta: Vec::new(),
        };
        let mut queue = VecDeque::new();
        order[class[t.initial]] = out.add_state();
        queue.push_back(class[t.initial]);
        while let Some(c) = queue.pop_front() {
            let q = rep[c];
            let me = order[c];
            out.finals[me] = t.finals[q];
            for a in 0..k {
                if let Some(r) = t.step(q, a) {
                    let rc = class[r];
                    if order[rc] == usize::MAX {
                        order[rc] = out.add_state();
                        queue.push_back(rc);
                    }
                    out.set_edge(me, a, order[rc]);
                }
            }
        }
        out
    }

    /// Synchronous product; missing transitions behave like a rejecting sink.
    pub fn product(&self, other: &Dfa, f: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(self.letters, other.letters, "alphabet mismatch");
        let k = self.letters;
        let mut index: HashMap<(Option<State>, Option<State>), State> = HashMap::new();
        let start = (Some(self.initial), Some(other.initial));
        let mut pairs = vec![start];
        index.insert(start, 0);
        let mut out = Dfa::new(k);
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let fp = p.is_some_and(|p| self.finals[p]);
            let fq = q.is_some_and(|q| other.finals[q]);
            out.finals[i] = f(fp, fq);
            for a in 0..k {
                let np = p.and_then(|p| self.step(p, a));
                let nq = q.and_then(|q| other.step(q, a));
                if np.is_none() && nq.is_none() {
                    continue;
                }
                let key = (np, nq);
                let t = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = out.add_state();
                        index.insert(key, t);
                        pairs.push(key);
                        t
                    }
                };
                out.set_edge(i, a, t);
            }
            i += 1;
        }
        out
    }

    pub fn intersect(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && b).minimize()
    }

    pub fn union(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a || b).minimize()
    }

    pub fn difference(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && !b).minimize()
    }

    /// Complement with respect to all words over the alphabet.
    pub fn complement(&self) -> Dfa {
        self.product(&Dfa::universal(self.letters), |a, b| b && !a)
    }

    pub fn includes(&self, sub: &Dfa) -> bool {
        sub.product(self, |a, b| a && !b).is_empty()
    }

    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.product(other, |a, b| a != b).is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.to_nfa().is_finite()
    }

    /// Accepted words of length ≤ `max_len`, length-lexicographic.
    pub fn enumerate_up_to(&self, max_len: usize) -> Vec<Vec<Letter>> {
        let t = self.trim();
        let mut out = Vec::new();
        if t.is_empty() {
            return out;
        }
        let mut layer: Vec<(Vec<Letter>, State)> = vec![(Vec::new(), t.initial)];
        for len in 0..=max_len {
            for (w, q) in &layer {
                if t.finals[*q] {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &layer {
                for (a, r) in t.edges(*q) {
                    let mut w2 = w.clone();
                    w2.push(a);
                    next.push((w2, r));
                }
            }
            layer = next;
        }
        out
    }

    /// All accepted words; `None` if the language is infinite.
    pub fn finite_words(&self) -> Option<Vec<Vec<Letter>>> {
        let t = self.trim();
        if !t.to_nfa().is_finite() {
            return None;
        }
        Some(t.enumerate_up_to(t.num_states()))
    }
}
