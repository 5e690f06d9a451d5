use std::collections::{HashMap, VecDeque};

use super::dfa::Dfa;
use super::{Letter, State};

/// Nondeterministic automaton with ε-moves over the letters `0..letters`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    letters: usize,
    initial: State,
    finals: Vec<bool>,
    delta: Vec<Vec<(Letter, State)>>,
    eps: Vec<Vec<State>>,
}

impl Nfa {
    /// One non-final state, no transitions.
    pub fn new(letters: usize) -> Self {
        Nfa {
            letters,
            initial: 0,
            finals: vec![false],
            delta: vec![Vec::new()],
            eps: vec![Vec::new()],
        }
    }

    pub fn empty(letters: usize) -> Self {
        Self::new(letters)
    }

    pub fn epsilon(letters: usize) -> Self {
        let mut n = Self::new(letters);
        n.set_final(0, true);
        n
    }

    pub fn universal(letters: usize) -> Self {
        Self::any_of(letters, &(0..letters).collect::<Vec<_>>()).star()
    }

    /// Single letters from `set`.
    pub fn any_of(letters: usize, set: &[Letter]) -> Self {
        let mut n = Self::new(letters);
        let f = n.add_state();
        n.set_final(f, true);
        for &a in set {
            n.add_edge(0, a, f);
        }
        n
    }

    pub fn word(letters: usize, w: &[Letter]) -> Self {
        let mut n = Self::new(letters);
        let mut cur = 0;
        for &a in w {
            let nx = n.add_state();
            n.add_edge(cur, a, nx);
            cur = nx;
        }
        n.set_final(cur, true);
        n
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

    pub fn finals(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.num_states()).filter(|&q| self.finals[q])
    }

    pub fn edges(&self, q: State) -> &[(Letter, State)] {
        &self.delta[q]
    }

    pub fn eps_edges(&self, q: State) -> &[State] {
        &self.eps[q]
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(Vec::len).sum::<usize>() + self.eps.iter().map(Vec::len).sum::<usize>()
    }

    pub fn has_eps(&self) -> bool {
        self.eps.iter().any(|e| !e.is_empty())
    }

    pub fn add_state(&mut self) -> State {
        self.finals.push(false);
        self.delta.push(Vec::new());
        self.eps.push(Vec::new());
        self.finals.len() - 1
    }

    pub fn add_edge(&mut self, p: State, a: Letter, q: State) {
        assert!(a < self.letters, "letter {a} out of range");
        if !self.delta[p].contains(&(a, q)) {
            self.delta[p].push((a, q));
        }
    }

    pub fn add_eps(&mut self, p: State, q: State) {
        if p != q && !self.eps[p].contains(&q) {
            self.eps[p].push(q);
        }
    }

    pub fn set_final(&mut self, q: State, f: bool) {
        self.finals[q] = f;
    }

    /// Copy of `other`'s states into `self`; returns the offset.
    pub fn embed(&mut self, other: &Nfa) -> State {
        assert_eq!(self.letters, other.letters);
        let off = self.num_states();
        for q in 0..other.num_states() {
            self.add_state();
            self.finals[off + q] = other.finals[q];
        }
        for q in 0..other.num_states() {
            for &(a, r) in &other.delta[q] {
                self.delta[off + q].push((a, off + r));
            }
            for &r in &other.eps[q] {
                self.eps[off + q].push(off + r);
            }
        }
        off
    }

    /// Same structure, initial state `q` (the residual automaton A_q).
    pub fn with_initial(&self, q: State) -> Nfa {
        let mut n = self.clone();
        n.set_initial(q);
        n
    }

    pub fn closure_of(&self, set: &mut Vec<State>) {
        let mut seen = vec![false; self.num_states()];
        for &q in set.iter() {
            seen[q] = true;
        }
        let mut i = 0;
        while i < set.len() {
            let q = set[i];
            for &r in &self.eps[q] {
                if !seen[r] {
                    seen[r] = true;
                    set.push(r);
                }
            }
            i += 1;
        }
        set.sort_unstable();
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = vec![self.initial];
        self.closure_of(&mut cur);
        for &a in w {
            let mut next = Vec::new();
            let mut seen = vec![false; self.num_states()];
            for &q in &cur {
                for &(b, r) in &self.delta[q] {
                    if b == a && !seen[r] {
                        seen[r] = true;
                        next.push(r);
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            self.closure_of(&mut next);
            cur = next;
        }
        cur.iter().any(|&q| self.finals[q])
    }

    /// ε-free automaton over the same state set.
    pub fn remove_eps(&self) -> Nfa {
        if !self.has_eps() {
            return self.clone();
        }
        let n = self.num_states();
        let mut out = Nfa {
            letters: self.letters,
            initial: self.initial,
            finals: vec![false; n],
            delta: vec![Vec::new(); n],
            eps: vec![Vec::new(); n],
        };
        for p in 0..n {
            let mut cl = vec![p];
            self.closure_of(&mut cl);
            for &c in &cl {
                if self.finals[c] {
                    out.finals[p] = true;
                }
                for &(a, r) in &self.delta[c] {
                    out.add_edge(p, a, r);
                }
            }
        }
        out
    }

    fn forward(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            let succ = self.delta[q].iter().map(|e| e.1).chain(self.eps[q].iter().copied());
            for r in succ {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    fn backward(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<State>> = vec![Vec::new(); n];
        for q in 0..n {
            for &(_, r) in &self.delta[q] {
                rev[r].push(q);
            }
            for &r in &self.eps[q] {
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

    /// Keeps only reachable and co-reachable states; canonical empty
    /// automaton when nothing survives.
    pub fn trim(&self) -> Nfa {
        let fw = self.forward();
        let bw = self.backward();
        if !(fw[self.initial] && bw[self.initial]) {
            return Nfa::empty(self.letters);
        }
        let keep: Vec<bool> = (0..self.num_states()).map(|q| fw[q] && bw[q]).collect();
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[bool]) -> Nfa {
        let mut map = vec![usize::MAX; self.num_states()];
        let mut out = Nfa {
            letters: self.letters,
            initial: 0,
            finals: Vec::new(),
            delta: Vec::new(),
            eps: Vec::new(),
        };
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = out.add_state();
                out.finals[map[q]] = self.finals[q];
            }
        }
        for q in 0..self.num_states() {
            if !keep[q] {
                continue;
            }
            for &(a, r) in &self.delta[q] {
                if keep[r] {
                    out.delta[map[q]].push((a, map[r]));
                }
            }
            for &r in &self.eps[q] {
                if keep[r] {
                    out.eps[map[q]].push(map[r]);
                }
            }
        }
        out.initial = map[self.initial];
        out
    }

    pub fn is_empty(&self) -> bool {
        let fw = self.forward();
        !(0..self.num_states()).any(|q| fw[q] && self.finals[q])
    }

    /// True iff the language is finite (trimmed ε-free automaton is acyclic).
    pub fn is_finite(&self) -> bool {
        let t = self.remove_eps().trim();
        let n = t.num_states();
        // 0 = white, 1 = on stack, 2 = done
        let mut color = vec![0u8; n];
        for s in 0..n {
            if color[s] != 0 {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            color[s] = 1;
            while let Some(&mut (q, ref mut i)) = stack.last_mut() {
                if *i < t.delta[q].len() {
                    let r = t.delta[q][*i].1;
                    *i += 1;
                    match color[r] {
                        0 => {
                            color[r] = 1;
                            stack.push((r, 0));
                        }
                        1 => return false,
                        _ => {}
                    }
                } else {
                    color[q] = 2;
                    stack.pop();
                }
            }
        }
        true
    }

    pub fn determinize(&self) -> Dfa {
        let mut start = vec![self.initial];
        self.closure_of(&mut start);
        let mut index: HashMap<Vec<State>, State> = HashMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut dfa = Dfa::new(self.letters);
        let mut queue = VecDeque::from([0usize]);
        while let Some(d) = queue.pop_front() {
            let set = sets[d].clone();
            dfa.set_final(d, set.iter().any(|&q| self.finals[q]));
            let mut succ: Vec<Vec<State>> = vec![Vec::new(); self.letters];
            for &q in &set {
                for &(a, r) in &self.delta[q] {
                    succ[a].push(r);
                }
            }
            for (a, mut s) in succ.into_iter().enumerate() {
                if s.is_empty() {
                    continue;
                }
                s.sort_unstable();
                s.dedup();
                self.closure_of(&mut s);
                s.dedup();
                let t = match index.get(&s) {
                    Some(&t) => t,
                    None => {
                        let t = dfa.add_state();
                        index.insert(s.clone(), t);
                        sets.push(s);
                        queue.push_back(t);
                        t
                    }
                };
                dfa.set_edge(d, a, t);
            }
        }
        dfa
    }

    /// Minimal DFA (canonical numbering).
    pub fn minimal(&self) -> Dfa {
        self.determinize().minimize()
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        assert_eq!(self.letters, other.letters);
        let mut n = Nfa::new(self.letters);
        let a = n.embed(self);
        let b = n.embed(other);
        n.add_eps(0, a + self.initial);
        n.add_eps(0, b + other.initial);
        n
    }

    pub fn union_all<'a>(letters: usize, parts: impl IntoIterator<Item = &'a Nfa>) -> Nfa {
        let mut n = Nfa::new(letters);
        for p in parts {
            let off = n.embed(p);
            n.add_eps(0, off + p.initial);
        }
        n
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        assert_eq!(self.letters, other.letters);
        let mut n = self.clone();
        let off = n.embed(other);
        for q in 0..self.num_states() {
            if self.finals[q] {
                n.finals[q] = false;
                n.add_eps(q, off + other.initial);
            }
        }
        n
    }

    pub fn star(&self) -> Nfa {
        let mut n = Nfa::new(self.letters);
        n.set_final(0, true);
        let off = n.embed(self);
        n.add_eps(0, off + self.initial);
        for q in 0..self.num_states() {
            if self.finals[q] {
                n.add_eps(off + q, 0);
            }
        }
        n
    }

    pub fn plus(&self) -> Nfa {
        self.concat(&self.star())
    }

    pub fn intersect(&self, other: &Nfa) -> Nfa {
        self.minimal().intersect(&other.minimal()).to_nfa()
    }

    pub fn difference(&self, other: &Nfa) -> Nfa {
        self.minimal().difference(&other.minimal()).to_nfa()
    }

    pub fn complement(&self) -> Nfa {
        self.minimal().complement().minimize().to_nfa()
    }

    pub fn includes(&self, sub: &Nfa) -> bool {
        sub.difference(self).is_empty()
    }

    pub fn equivalent(&self, other: &Nfa) -> bool {
        self.minimal() == other.minimal()
    }

    pub fn reverse(&self) -> Nfa {
        let n = self.num_states();
        let mut out = Nfa::new(self.letters);
        for _ in 0..n {
            out.add_state();
        }
        for q in 0..n {
            for &(a, r) in &self.delta[q] {
                out.add_edge(r + 1, a, q + 1);
            }
            for &r in &self.eps[q] {
                out.add_eps(r + 1, q + 1);
            }
            if self.finals[q] {
                out.add_eps(0, q + 1);
            }
        }
        out.set_final(self.initial + 1, true);
        out
    }

    /// Letter-to-letter relabelling onto a new alphabet; `None` turns the
    /// transition into an ε-move.
    pub fn map_letters(&self, letters: usize, f: impl Fn(Letter) -> Option<Letter>) -> Nfa {
        let mut out = Nfa {
            letters,
            initial: self.initial,
            finals: self.finals.clone(),
            delta: vec![Vec::new(); self.num_states()],
            eps: self.eps.clone(),
        };
        for q in 0..self.num_states() {
            for &(a, r) in &self.delta[q] {
                match f(a) {
                    Some(b) => out.add_edge(q, b, r),
                    None => out.add_eps(q, r),
                }
            }
        }
        out
    }

    /// Homomorphic image: every letter is replaced by a word.
    pub fn substitute(&self, letters: usize, f: impl Fn(Letter) -> Vec<Letter>) -> Nfa {
        let mut out = Nfa {
            letters,
            initial: self.initial,
            finals: self.finals.clone(),
            delta: vec![Vec::new(); self.num_states()],
            eps: self.eps.clone(),
        };
        for q in 0..self.num_states() {
            for &(a, r) in &self.delta[q] {
                let w = f(a);
                if w.is_empty() {
                    out.add_eps(q, r);
                    continue;
                }
                let mut cur = q;
                for (i, &b) in w.iter().enumerate() {
                    let nx = if i + 1 == w.len() { r } else { out.add_state() };
                    out.add_edge(cur, b, nx);
                    cur = nx;
                }
            }
        }
        out
    }

    /// u⁻¹L.
    pub fn left_quotient(&self, u: &[Letter]) -> Nfa {
        let mut cur = vec![self.initial];
        self.closure_of(&mut cur);
        for &a in u {
            let mut next: Vec<State> = Vec::new();
            for &q in &cur {
                for &(b, r) in &self.delta[q] {
                    if b == a && !next.contains(&r) {
                        next.push(r);
                    }
                }
            }
            self.closure_of(&mut next);
            cur = next;
        }
        let mut out = self.clone();
        let s = out.add_state();
        for q in cur {
            out.add_eps(s, q);
        }
        out.set_initial(s);
        out
    }

    /// Accepted words of length ≤ `max_len` in length-lexicographic order.
    pub fn enumerate_up_to(&self, max_len: usize) -> Vec<Vec<Letter>> {
        self.minimal().enumerate_up_to(max_len)
    }
}
