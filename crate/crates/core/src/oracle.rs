//! Brute-force reference computations over short words, used by the test
//! suites and the `oracle` subcommand.

use std::collections::BTreeSet;

use crate::automata::{Letter, Nfa};
use crate::uniform::{DistanceAutomaton, Weight};
use crate::syncword::{decode_pair, finite_shift, TaggedAlphabet, TaggedWord};

pub type Pair = (Vec<usize>, Vec<usize>);

/// Hard ceiling on enumeration lengths.
pub const MAX_LEN: usize = 12;

/// ⟦S⟧ restricted to pairs with |u| + |v| ≤ `max_len`.
pub fn pairs_up_to(alpha: &TaggedAlphabet, s: &Nfa, max_len: usize) -> BTreeSet<Pair> {
    s.enumerate_up_to(max_len).iter().map(|w| decode_pair(alpha, w)).collect()
}

/// Every interleaving of u (inputs) and v (outputs), in llex order.
pub fn syncs_of(alpha: &TaggedAlphabet, u: &[usize], v: &[usize]) -> Vec<TaggedWord> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(u.len() + v.len());
    fn go(alpha: &TaggedAlphabet, u: &[usize], v: &[usize], cur: &mut Vec<Letter>, out: &mut Vec<TaggedWord>) {
        if u.is_empty() && v.is_empty() {
            out.push(cur.clone());
            return;
        }
        if let Some((&a, rest)) = u.split_first() {
            cur.push(alpha.input(a));
            go(alpha, rest, v, cur, out);
            cur.pop();
        }
        if let Some((&b, rest)) = v.split_first() {
            cur.push(alpha.output(b));
            go(alpha, u, rest, cur, out);
            cur.pop();
        }
    }
    go(alpha, u, v, &mut cur, &mut out);
    out.sort();
    out
}

/// All pairs (u, v) with |u| + |v| = n.
pub fn pairs_of_size(alpha: &TaggedAlphabet, n: usize) -> Vec<Pair> {
    let mut out = Vec::new();
    for i in 0..=n {
        for u in words(alpha.n_in(), i) {
            for v in words(alpha.n_out(), n - i) {
                out.push((u.clone(), v));
            }
        }
    }
    out
}

/// All words of length exactly `n` over `k` letters.
pub fn words(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut w2 = w.clone();
                    w2.push(a);
                    w2
                })
            })
            .collect();
    }
    out
}

pub fn words_up_to(k: usize, n: usize) -> Vec<Vec<usize>> {
    (0..=n).flat_map(|i| words(k, i)).collect()
}

/// Shortest (u, v) with ⟦xu⟧ = ⟦yv⟧, found by trying every u of length at
/// most `max_ext` and completing it with the shortest matching v.
pub fn diff_search(
    alpha: &TaggedAlphabet,
    x: &[Letter],
    y: &[Letter],
    max_ext: usize,
) -> Option<(TaggedWord, TaggedWord)> {
    if x.len() != y.len() {
        return None;
    }
    let (yi, yo) = decode_pair(alpha, y);
    let mut best: Option<(TaggedWord, TaggedWord)> = None;
    for u in words_up_to(alpha.size(), max_ext) {
        let mut xu = x.to_vec();
        xu.extend(&u);
        let (pi, po) = decode_pair(alpha, &xu);
        if !pi.starts_with(&yi) || !po.starts_with(&yo) {
            continue;
        }
        let mut v: TaggedWord = pi[yi.len()..].iter().map(|&a| alpha.input(a)).collect();
        v.extend(po[yo.len()..].iter().map(|&b| alpha.output(b)));
        let better = match &best {
            None => true,
            Some((bu, bv)) => u.len() + v.len() < bu.len() + bv.len(),
        };
        if better {
            best = Some((u, v));
        }
    }
    best
}

/// First prefix length whose residual has finite shift, checking every
/// residual language directly.
pub fn fs_entry_by_residuals(alpha: &TaggedAlphabet, t: &Nfa, w: &[Letter]) -> Option<usize> {
    (0..=w.len()).find(|&i| finite_shift(alpha, &t.left_quotient(&w[..i]).trim()))
}

/// w ⪯_T w′ by residual inspection (`None` entries are maximal).
pub fn order_leq(alpha: &TaggedAlphabet, t: &Nfa, w: &[Letter], w2: &[Letter]) -> bool {
    match (fs_entry_by_residuals(alpha, t, w), fs_entry_by_residuals(alpha, t, w2)) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(i), Some(j)) => i <= j,
    }
}

/// The T-synchronizations of ⟦w⟧.
pub fn same_pair_syncs(alpha: &TaggedAlphabet, t: &Nfa, w: &[Letter]) -> Vec<TaggedWord> {
    let (u, v) = decode_pair(alpha, w);
    syncs_of(alpha, &u, &v).into_iter().filter(|x| t.accepts(x)).collect()
}

/// No T-synchronization of the same pair is strictly ⪯_T-larger than w.
pub fn is_maximal(alpha: &TaggedAlphabet, t: &Nfa, w: &[Letter]) -> bool {
    same_pair_syncs(alpha, t, w).iter().all(|x| order_leq(alpha, t, x, w))
}

/// No T-synchronization of the same pair is strictly ⪯_T-smaller than w.
pub fn is_minimal(alpha: &TaggedAlphabet, t: &Nfa, w: &[Letter]) -> bool {
    same_pair_syncs(alpha, t, w).iter().all(|x| order_leq(alpha, t, w, x))
}

/// Minimum weight over every accepting run of `b` on `w`, by listing the
/// runs one by one.
pub fn min_run_distance(b: &DistanceAutomaton, w: &[Letter]) -> Option<u64> {
    fn go(b: &DistanceAutomaton, w: &[Letter], q: usize, acc: u64, best: &mut Option<u64>) {
        let Some((&x, rest)) = w.split_first() else {
            if b.is_final(q) && best.is_none_or(|v| acc < v) {
                *best = Some(acc);
            }
            return;
        };
        for &(p, l, r, c) in b.edges() {
            let c = match c {
                Weight::Zero => 0,
                Weight::One => 1,
                Weight::Inf => continue,
            };
            if p == q && l == x {
                go(b, rest, r, acc + c, best);
            }
        }
    }
    let mut best = None;
    go(b, w, b.initial(), 0, &mut best);
    best
}

/// Outputs v with (u, v) ∈ ⟦S⟧ and |v| ≤ `max_out`, in length-lexicographic order.
pub fn outputs_of(alpha: &TaggedAlphabet, s: &Nfa, u: &[usize], max_out: usize) -> Vec<Vec<usize>> {
    (0..=max_out)
        .flat_map(|n| words(alpha.n_out(), n))
        .filter(|v| syncs_of(alpha, u, v).iter().any(|x| s.accepts(x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interleavings() {
        let al = TaggedAlphabet::new(&["a"], &["b"]);
        assert_eq!(syncs_of(&al, &[0, 0], &[0]).len(), 3);
        assert_eq!(words_up_to(2, 2).len(), 7);
        assert_eq!(pairs_of_size(&al, 2).len(), 3);
    }

    #[test]
    fn difference_by_search() {
        let al = TaggedAlphabet::new(&["a", "b"], &["c", "d"]);
        let x = al.word("a c a b").unwrap();
        let y = al.word("c a d c").unwrap();
        let (u, v) = diff_search(&al, &x, &y, 3).unwrap();
        assert_eq!(al.show(&u), "d c");
        assert_eq!(al.show(&v), "a b");
    }
}
