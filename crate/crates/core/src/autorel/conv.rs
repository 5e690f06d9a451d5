//! Multi-track convolutions: letters are tuples over `Σ_j ∪ {⊥}`, encoded in
//! mixed radix with the first track most significant and ⊥ = `n_j`.

use crate::automata::{Dfa, Letter, Nfa, State};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tracks(pub Vec<usize>);

impl Tracks {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> usize {
        self.0.iter().map(|n| n + 1).product()
    }

    pub fn encode(&self, comps: &[Option<usize>]) -> Letter {
        debug_assert_eq!(comps.len(), self.0.len());
        let mut l = 0;
        for (j, c) in comps.iter().enumerate() {
            let n = self.0[j];
            let v = match c {
                Some(x) => {
                    debug_assert!(*x < n);
                    *x
                }
                None => n,
            };
            l = l * (n + 1) + v;
        }
        l
    }

    pub fn decode(&self, mut l: Letter) -> Vec<Option<usize>> {
        let mut out = vec![None; self.0.len()];
        for j in (0..self.0.len()).rev() {
            let n = self.0[j];
            let v = l % (n + 1);
            l /= n + 1;
            out[j] = if v == n { None } else { Some(v) };
        }
        out
    }

    pub fn is_all_pad(&self, l: Letter) -> bool {
        self.decode(l).iter().all(Option::is_none)
    }

    /// Pads shorter components on the right.
    pub fn convolve(&self, words: &[&[usize]]) -> Vec<Letter> {
        let len = words.iter().map(|w| w.len()).max().unwrap_or(0);
        (0..len)
            .map(|i| {
                let comps: Vec<Option<usize>> = words.iter().map(|w| w.get(i).copied()).collect();
                self.encode(&comps)
            })
            .collect()
    }

    /// Well-formed convolutions: never all-⊥, and a ⊥ track stays ⊥.
    pub fn well_formed(&self) -> Dfa {
        let k = self.arity();
        let mut d = Dfa::new(self.letters());
        for _ in 1..(1usize << k) {
            d.add_state();
        }
        for mask in 0..(1usize << k) {
            d.set_final(mask, true);
            for l in 0..self.letters() {
                let c = self.decode(l);
                if c.iter().all(Option::is_none) {
                    continue;
                }
                let mut ok = true;
                let mut next = mask;
                for (j, x) in c.iter().enumerate() {
                    match x {
                        Some(_) if mask & (1 << j) != 0 => ok = false,
                        None => next |= 1 << j,
                        _ => {}
                    }
                }
                if ok {
                    d.set_edge(mask, l, next);
                }
            }
        }
        d.minimize()
    }

    /// Drops track `j`; letters that become all-⊥ turn into ε-moves.
    pub fn project(&self, a: &Nfa, j: usize) -> (Tracks, Nfa) {
        let mut rest = self.0.clone();
        rest.remove(j);
        let small = Tracks(rest);
        let out = a.map_letters(small.letters(), |l| {
            let mut c = self.decode(l);
            c.remove(j);
            if c.iter().all(Option::is_none) {
                None
            } else {
                Some(small.encode(&c))
            }
        });
        (small, out)
    }

    /// Lifts an automaton over `small` into this track space; `map[i]` is
    /// the track that carries small track `i`. Other tracks are free.
    pub fn cylindrify(&self, small: &Tracks, a: &Dfa, map: &[usize]) -> Dfa {
        let n = a.num_states();
        let done = n;
        let mut out = Nfa::new(self.letters());
        for _ in 0..n {
            out.add_state();
        }
        for q in 0..n {
            out.set_final(q, a.is_final(q));
        }
        out.set_final(done, true);
        out.set_initial(a.initial());
        for l in 0..self.letters() {
            let c = self.decode(l);
            let sc: Vec<Option<usize>> = map.iter().map(|&t| c[t]).collect();
            if sc.iter().all(Option::is_none) {
                for q in 0..n {
                    if a.is_final(q) {
                        out.add_edge(q, l, done);
                    }
                }
                out.add_edge(done, l, done);
            } else {
                let sl = small.encode(&sc);
                for q in 0..n {
                    if let Some(r) = a.step(q, sl) {
                        out.add_edge(q, l, r);
                    }
                }
            }
        }
        out.determinize().intersect(&self.well_formed())
    }

    /// Words over track `keep`'s alphabet accepted when every other track
    /// is fixed... only for two tracks: the section at `fixed` on track `at`.
    pub fn section(&self, a: &Dfa, at: usize, fixed: &[usize]) -> Nfa {
        assert_eq!(self.arity(), 2);
        let other = 1 - at;
        let m = fixed.len() + 1;
        let idx = |q: State, i: usize| q * m + i;
        let mut out = Nfa::new(self.0[other]);
        for _ in 1..a.num_states() * m {
            out.add_state();
        }
        out.set_initial(idx(a.initial(), 0));
        for q in 0..a.num_states() {
            for i in 0..m {
                out.set_final(idx(q, i), a.is_final(q) && i == fixed.len());
                for (l, r) in a.edges(q) {
                    let c = self.decode(l);
                    let here = fixed.get(i).copied();
                    if c[at] != here {
                        continue;
                    }
                    let ni = if here.is_some() { i + 1 } else { i };
                    match c[other] {
                        Some(x) => out.add_edge(idx(q, i), x, idx(r, ni)),
                        None => out.add_eps(idx(q, i), idx(r, ni)),
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_roundtrip() {
        let t = Tracks(vec![2, 3]);
        for l in 0..t.letters() {
            assert_eq!(t.encode(&t.decode(l)), l);
        }
        assert!(t.is_all_pad(t.letters() - 1));
    }

    #[test]
    fn convolution_padding() {
        let t = Tracks(vec![2, 2]);
        let c = t.convolve(&[&[0, 1], &[0]]);
        assert_eq!(t.decode(c[1]), vec![Some(1), None]);
        assert!(t.convolve(&[&[], &[]]).is_empty());
        let c = t.convolve(&[&[0], &[0, 1, 1]]);
        assert_eq!(c.len(), 3);
        assert_eq!(t.decode(c[2]), vec![None, Some(1)]);
        let wf = t.well_formed();
        assert!(wf.accepts(&c));
        let bad = [t.encode(&[None, Some(0)]), t.encode(&[Some(0), Some(0)])];
        assert!(!wf.accepts(&bad));
    }
}
