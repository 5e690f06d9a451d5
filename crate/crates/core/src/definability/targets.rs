//! Target classes with a decidable definability problem: unambiguous
//! targets and U·Σ*Γ* targets for (ΣΓ)*-prefix-closed U.

use std::collections::{HashMap, HashSet, VecDeque};

use super::sets::maxsync_regular;
use super::{Answer, Verdict};
use crate::automata::{Dfa, Nfa, State};
use crate::autorel::{from_sync_fsl, pair_tracks, AutomaticRelation};
use crate::error::{Error, Result};
use crate::syncword::{classify, TaggedAlphabet};

/// No two distinct words of T synchronize the same pair.
///
/// Letters are annotated with the DFA state they leave; the annotated
/// language has an automatic relation, and T is ambiguous iff two of its
/// convolutions agree on letters but not on states.
pub fn is_unambiguous(alpha: &TaggedAlphabet, t: &Nfa) -> Result<bool> {
    let c = classify(alpha, t)?;
    if !c.shiftlag_finite {
        return Err(Error::NotFiniteShiftlag);
    }
    let a = &c.dfa;
    let n = a.num_states();
    let tag = |names: &[String]| -> Vec<String> {
        names.iter().flat_map(|x| (0..n).map(move |q| format!("{x}@{q}"))).collect()
    };
    let ann = TaggedAlphabet::new(&tag(alpha.inputs()), &tag(alpha.outputs()));
    let mut s1 = Nfa::new(ann.size());
    for _ in 1..n {
        s1.add_state();
    }
    s1.set_initial(a.initial());
    for q in 0..n {
        s1.set_final(q, a.is_final(q));
        for (l, r) in a.edges(q) {
            let raw = alpha.raw(l) * n + q;
            let al = if alpha.is_input(l) { ann.input(raw) } else { ann.output(raw) };
            s1.add_edge(q, al, r);
        }
    }
    let rel = from_sync_fsl(&ann, &s1)?;
    let d = rel.conv_dfa();
    let big = pair_tracks(&ann);
    let small = pair_tracks(alpha);
    // convolution letters grouped by their plain projection
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for l in 0..big.letters() {
        let plain: Vec<Option<usize>> = big.decode(l).into_iter().map(|x| x.map(|v| v / n)).collect();
        groups.entry(small.encode(&plain)).or_default().push(l);
    }
    let start = (d.initial(), d.initial(), false);
    let mut seen: HashSet<(State, State, bool)> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q, differ)) = queue.pop_front() {
        if differ && d.is_final(p) && d.is_final(q) {
            return Ok(false);
        }
        for g in groups.values() {
            for &l1 in g {
                let Some(p1) = d.step(p, l1) else { continue };
                for &l2 in g {
                    let Some(q1) = d.step(q, l2) else { continue };
                    let nx = (p1, q1, differ || l1 != l2);
                    if seen.insert(nx) {
                        queue.push_back(nx);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// (ΣΓ)*: alternating input/output letters.
pub fn alternating(alpha: &TaggedAlphabet) -> Nfa {
    let k = alpha.size();
    let mut a = Nfa::new(k);
    let mid = a.add_state();
    a.set_final(0, true);
    for x in alpha.input_letters() {
        a.add_edge(0, x, mid);
    }
    for y in alpha.output_letters() {
        a.add_edge(mid, y, 0);
    }
    a
}

/// Σ*Γ*.
pub fn inputs_then_outputs(alpha: &TaggedAlphabet) -> Nfa {
    let k = alpha.size();
    let mut a = Nfa::new(k);
    let out = a.add_state();
    a.set_final(0, true);
    a.set_final(out, true);
    for x in alpha.input_letters() {
        a.add_edge(0, x, 0);
    }
    for y in alpha.output_letters() {
        a.add_edge(0, y, out);
        a.add_edge(out, y, out);
    }
    a
}

/// uab ∈ U implies u ∈ U, for U ⊆ (ΣΓ)*.
pub fn is_prefix_closed_even(alpha: &TaggedAlphabet, u: &Nfa) -> Result<bool> {
    if !alternating(alpha).includes(u) {
        return Err(Error::NotAlternating);
    }
    let d = u.minimal();
    Ok(d.includes(&strip_last_pair(alpha, &d)))
}

/// {u | uab ∈ U for some a ∈ Σ, b ∈ Γ}.
fn strip_last_pair(alpha: &TaggedAlphabet, d: &Dfa) -> Dfa {
    let mut s = d.clone();
    for q in 0..d.num_states() {
        let hit = alpha.input_letters().any(|x| {
            d.step(q, x)
                .is_some_and(|r| alpha.output_letters().any(|y| d.step(r, y).is_some_and(|f| d.is_final(f))))
        });
        s.set_final(q, hit);
    }
    s
}

/// maxsync(T, T) for T = U·Σ*Γ*: words uxy with u ∈ U, x ∈ Σ*, y ∈ Γ*,
/// where x = ε, y = ε, or uab ∉ U for the first letters a of x, b of y.
///
/// A longer U-factor only makes a synchronization larger while the residual
/// of U stays infinite (a finite residual of U gives a residual of T with
/// finite shift), so uxy is also kept when (uab)⁻¹U is finite.
pub fn maxsync_prefix_closed(alpha: &TaggedAlphabet, u: &Nfa) -> Result<Dfa> {
    if !is_prefix_closed_even(alpha, u)? {
        return Err(Error::NotPrefixClosed);
    }
    let d = u.minimal();
    let n = d.num_states();
    let k = alpha.size();
    let infinite: Vec<bool> = (0..n).map(|q| !d.with_initial(q).is_finite()).collect();
    let mut out = d.to_nfa();
    for q in 0..n {
        out.set_final(q, false);
    }
    let xs = out.add_state();
    let ys = out.add_state();
    out.set_final(xs, true);
    out.set_final(ys, true);
    for x in alpha.input_letters() {
        out.add_edge(xs, x, xs);
    }
    for y in alpha.output_letters() {
        out.add_edge(ys, y, ys);
    }
    for q in (0..n).filter(|&q| d.is_final(q)) {
        out.add_eps(q, xs);
        out.add_eps(q, ys);
        for x in alpha.input_letters() {
            // x-block started by `x`, waiting for the first output
            let wait = out.add_state();
            out.add_edge(q, x, wait);
            for x2 in alpha.input_letters() {
                out.add_edge(wait, x2, wait);
            }
            let r = d.step(q, x);
            for y in alpha.output_letters() {
                let extends = r.and_then(|r| d.step(r, y)).is_some_and(|f| d.is_final(f) && infinite[f]);
                if !extends {
                    out.add_edge(wait, y, ys);
                }
            }
        }
    }
    debug_assert_eq!(out.letters(), k);
    Ok(out.minimal())
}

/// Id_A for Σ and Γ tagged copies of A.
pub fn identity_prefix(alpha: &TaggedAlphabet) -> Result<Nfa> {
    if alpha.inputs() != alpha.outputs() {
        return Err(Error::AlphabetShapeMismatch);
    }
    let mut a = Nfa::new(alpha.size());
    a.set_final(0, true);
    for i in 0..alpha.n_in() {
        let mid = a.add_state();
        a.add_edge(0, alpha.input(i), mid);
        a.add_edge(mid, alpha.output(i), 0);
    }
    Ok(a)
}

/// Prefix-recognizability of R: ⟦S_R⟧ ∈ Rel(Id_A·Σ*Γ*), decided through
/// regularity of maxsync(S_R, Id_A·Σ*Γ*).
pub fn is_prefix_recognizable(r: &AutomaticRelation) -> Result<Verdict> {
    let alpha = r.alphabet();
    let id = identity_prefix(alpha)?;
    let t = id.concat(&inputs_then_outputs(alpha));
    let s = r.to_sync();
    let m = maxsync_regular(alpha, &s, &t)?;
    let mut v = Verdict::new("prefix-recognizable");
    v.checks = vec![format!("maxsync(S_R, T_pr): {}", m.answer)];
    match m.answer {
        Answer::Yes => {
            v.answer = Answer::Yes;
            v.reason = "maxsync(S_R, Id_A·Σ*Γ*) is regular and defines R".into();
            v.witness = m.witness;
        }
        _ => {
            v.answer = Answer::No;
            v.reason = "maxsync(S_R, Id_A·Σ*Γ*) is not regular".into();
        }
    }
    Ok(v)
}
