//! Recognizable relations as finite unions of products U_i × V_i.

use std::collections::HashMap;

use crate::automata::{Dfa, Letter, Nfa, State};
use crate::error::{Error, Result};
use crate::syncword::{decode_pair, Role, TaggedAlphabet};

/// Parts are kept minimal; U languages are over raw Σ indices, V over raw Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognizableDecomposition {
    n_in: usize,
    n_out: usize,
    parts: Vec<(Dfa, Dfa)>,
}

impl RecognizableDecomposition {
    /// Checks pairwise disjointness of the U_i.
    pub fn new(n_in: usize, n_out: usize, parts: Vec<(Dfa, Dfa)>) -> Result<Self> {
        let d = Self::unchecked(n_in, n_out, parts)?;
        if !d.is_disjoint() {
            return Err(Error::NotDisjoint);
        }
        Ok(d)
    }

    fn unchecked(n_in: usize, n_out: usize, parts: Vec<(Dfa, Dfa)>) -> Result<Self> {
        if parts.iter().any(|(u, v)| u.letters() != n_in || v.letters() != n_out) {
            return Err(Error::AlphabetMismatch("decomposition part over the wrong alphabet".into()));
        }
        let parts = parts.into_iter().map(|(u, v)| (u.minimize(), v.minimize())).collect();
        Ok(RecognizableDecomposition { n_in, n_out, parts })
    }

    pub fn empty(n_in: usize, n_out: usize) -> Self {
        RecognizableDecomposition {
            n_in,
            n_out,
            parts: Vec::new(),
        }
    }

    /// Any finite union of products, made disjoint and normalized.
    pub fn from_products(n_in: usize, n_out: usize, products: impl IntoIterator<Item = (Dfa, Dfa)>) -> Self {
        let mut parts: Vec<(Dfa, Dfa)> = Vec::new();
        for (u, v) in products {
            let (u, v) = (u.minimize(), v.minimize());
            if u.is_empty() || v.is_empty() {
                continue;
            }
            let mut next = Vec::with_capacity(parts.len() + 1);
            let mut rest = u.clone();
            for (pu, pv) in parts {
                let both = pu.intersect(&u);
                if both.is_empty() {
                    next.push((pu, pv));
                    continue;
                }
                next.push((both, pv.union(&v)));
                let only = pu.difference(&u);
                if !only.is_empty() {
                    next.push((only, pv));
                }
                rest = rest.difference(&pu);
            }
            if !rest.is_empty() {
                next.push((rest, v));
            }
            parts = next;
        }
        RecognizableDecomposition { n_in, n_out, parts }.normalized()
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn parts(&self) -> &[(Dfa, Dfa)] {
        &self.parts
    }

    pub fn is_disjoint(&self) -> bool {
        let p = &self.parts;
        (0..p.len()).all(|i| (i + 1..p.len()).all(|j| p[i].0.intersect(&p[j].0).is_empty()))
    }

    /// Drops empty parts and merges parts with the same V.
    pub fn normalized(&self) -> Self {
        let mut by_v: Vec<(Dfa, Dfa)> = Vec::new();
        let mut index: HashMap<Dfa, usize> = HashMap::new();
        for (u, v) in &self.parts {
            if u.is_empty() || v.is_empty() {
                continue;
            }
            match index.get(v) {
                Some(&i) => by_v[i].0 = by_v[i].0.union(u),
                None => {
                    index.insert(v.clone(), by_v.len());
                    by_v.push((u.clone(), v.clone()));
                }
            }
        }
        RecognizableDecomposition {
            n_in: self.n_in,
            n_out: self.n_out,
            parts: by_v,
        }
    }

    pub fn contains(&self, u: &[usize], v: &[usize]) -> bool {
        self.parts.iter().any(|(pu, pv)| pu.accepts(u) && pv.accepts(v))
    }

    pub fn domain(&self) -> Dfa {
        self.parts.iter().fold(Dfa::empty(self.n_in), |acc, (u, _)| acc.union(u))
    }

    /// ∪ U_i·V_i as a Σ*Γ*-controlled synchronization language.
    pub fn to_sync(&self, alpha: &TaggedAlphabet) -> Nfa {
        let k = alpha.size();
        let mut out = Nfa::empty(k);
        for (u, v) in &self.parts {
            let ut = u.to_nfa().map_letters(k, |a| Some(alpha.input(a)));
            let vt = v.to_nfa().map_letters(k, |b| Some(alpha.output(b)));
            out = out.union(&ut.concat(&vt));
        }
        out
    }

    /// ⟦q⟧⁻¹(⟦p⟧R) for tagged words `prefix` = p and `quotient` = q.
    pub fn shifted(&self, alpha: &TaggedAlphabet, prefix: &[Letter], quotient: &[Letter]) -> Self {
        let (p1, p2) = decode_pair(alpha, prefix);
        let (q1, q2) = decode_pair(alpha, quotient);
        let side = |d: &Dfa, k: usize, p: &[usize], q: &[usize]| {
            Nfa::word(k, p).concat(&d.to_nfa()).left_quotient(q).minimal()
        };
        let parts = self
            .parts
            .iter()
            .map(|(u, v)| (side(u, self.n_in, &p1, &q1), side(v, self.n_out, &p2, &q2)));
        Self::from_products(self.n_in, self.n_out, parts)
    }
}

/// Words w ∈ r⁺ with δ(s, w) = t, over raw letters of role r.
fn block(alpha: &TaggedAlphabet, dfa: &Dfa, s: State, t: State, r: Role) -> Nfa {
    let n = dfa.num_states();
    let k = match r {
        Role::Input => alpha.n_in(),
        Role::Output => alpha.n_out(),
    };
    let mut out = Nfa::new(k);
    for _ in 0..n {
        out.add_state();
    }
    let start = n;
    out.set_initial(start);
    out.set_final(t, true);
    for q in 0..n {
        for (a, q2) in dfa.edges(q) {
            if alpha.role(a) != r {
                continue;
            }
            out.add_edge(q, alpha.raw(a), q2);
            if q == s {
                out.add_edge(start, alpha.raw(a), q2);
            }
        }
    }
    out
}

/// Decomposes L(A_q) for a state whose residual has finite shift: one
/// product per alternating chain of single-role blocks.
pub fn fs_decompose(alpha: &TaggedAlphabet, dfa: &Dfa, q: State) -> Result<RecognizableDecomposition> {
    let a = dfa.with_initial(q).minimize();
    let n = a.num_states();
    let mut blocks: HashMap<(State, State, Role), Nfa> = HashMap::new();
    for s in 0..n {
        for t in 0..n {
            for r in [Role::Input, Role::Output] {
                let b = block(alpha, &a, s, t, r);
                if !b.is_empty() {
                    blocks.insert((s, t, r), b);
                }
            }
        }
    }
    let mut memo: HashMap<(State, Option<Role>), Vec<(Nfa, Nfa)>> = HashMap::new();
    let chains = chains_from(alpha, &a, &blocks, a.initial(), None, 0, &mut memo)?;
    let products = chains.into_iter().map(|(u, v)| (u.minimal(), v.minimal()));
    Ok(RecognizableDecomposition::from_products(alpha.n_in(), alpha.n_out(), products))
}

fn chains_from(
    alpha: &TaggedAlphabet,
    a: &Dfa,
    blocks: &HashMap<(State, State, Role), Nfa>,
    s: State,
    last: Option<Role>,
    depth: usize,
    memo: &mut HashMap<(State, Option<Role>), Vec<(Nfa, Nfa)>>,
) -> Result<Vec<(Nfa, Nfa)>> {
    if let Some(c) = memo.get(&(s, last)) {
        return Ok(c.clone());
    }
    if depth > 2 * a.num_states() + 2 {
        return Err(Error::NotFiniteShift);
    }
    let (ni, no) = (alpha.n_in(), alpha.n_out());
    let mut out = Vec::new();
    if a.is_final(s) {
        out.push((Nfa::epsilon(ni), Nfa::epsilon(no)));
    }
    for r in [Role::Input, Role::Output] {
        if last == Some(r) {
            continue;
        }
        for t in 0..a.num_states() {
            let Some(b) = blocks.get(&(s, t, r)) else { continue };
            for (u, v) in chains_from(alpha, a, blocks, t, Some(r), depth + 1, memo)? {
                out.push(match r {
                    Role::Input => (b.concat(&u).minimal().to_nfa(), v),
                    Role::Output => (u, b.concat(&v).minimal().to_nfa()),
                });
            }
        }
    }
    memo.insert((s, last), out.clone());
    Ok(out)
}
