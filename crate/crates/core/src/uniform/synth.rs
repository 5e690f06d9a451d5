//! Uniformization by recognizable relations.

use std::collections::HashMap;

use super::distance::{bounded_distance_value, build_distance_automaton, is_limited};
use super::transducer::{sync_language_of_transducer, SubseqTransducer};
use crate::automata::{Dfa, Nfa, State};
use crate::autorel::{from_sync_fsl, RecognizableDecomposition};
use crate::definability::{Answer, Verdict};
use crate::error::{Error, Result};
use crate::oracle::words;
use crate::syncword::{classify, Role, TaggedAlphabet};

/// Yes iff ⟦S⟧ has a uniformization by a recognizable relation; the witness
/// is the synthesized uniformizer as a Σ*Γ* synchronization language.
pub fn has_recognizable_uniformization(alpha: &TaggedAlphabet, s: &Nfa) -> Result<Verdict> {
    decide(alpha, s, "unif-by-rec")
}

/// Same verdict: a Σ*Γ*-controlled subsequential uniformizer exists iff a
/// recognizable one does.
pub fn has_finite_shift_subseq_uniformization(alpha: &TaggedAlphabet, s: &Nfa) -> Result<Verdict> {
    decide(alpha, s, "unif-finiteshift")
}

fn decide(alpha: &TaggedAlphabet, s: &Nfa, method: &str) -> Result<Verdict> {
    let b = build_distance_automaton(alpha, s)?;
    let mut v = Verdict::new(method);
    v.checks.push("limitedness of the distance automaton".into());
    if !is_limited(&b) {
        v.answer = Answer::No;
        v.reason = "the distance automaton is not limited: output blocks are unbounded on the domain".into();
        return Ok(v);
    }
    let d = bounded_distance_value(&b)?;
    let u = synthesize_recognizable_uniformizer(alpha, s)?;
    v.answer = Answer::Yes;
    v.reason = format!("the distance automaton is limited with D(B) = {d}");
    v.witness = Some(u.to_sync(alpha));
    Ok(v)
}

/// Inputs u with (u, v) ∈ ⟦S⟧, as a language over Σ.
fn inputs_with_output(alpha: &TaggedAlphabet, s: &Nfa, v: &[usize]) -> Dfa {
    // product of S with the Γ-word automaton of v; input letters pass
    let n = s.num_states();
    let m = v.len() + 1;
    let mut a = Nfa::new(alpha.n_in());
    for _ in 1..n * m {
        a.add_state();
    }
    let id = |q: State, i: usize| q * m + i;
    a.set_initial(id(s.initial(), 0));
    for q in 0..n {
        if s.is_final(q) {
            a.set_final(id(q, v.len()), true);
        }
        for i in 0..m {
            for &r in s.eps_edges(q) {
                a.add_eps(id(q, i), id(r, i));
            }
            for &(l, r) in s.edges(q) {
                match alpha.role(l) {
                    Role::Input => a.add_edge(id(q, i), alpha.raw(l), id(r, i)),
                    Role::Output if i < v.len() && v[i] == alpha.raw(l) => a.add_eps(id(q, i), id(r, i + 1)),
                    Role::Output => {}
                }
            }
        }
    }
    a.minimal()
}

/// The uniformizer picking, for each input, its length-lexicographically
/// least output: parts (U_v, {v}) with U_v the inputs whose least output is v.
pub fn synthesize_recognizable_uniformizer(alpha: &TaggedAlphabet, s: &Nfa) -> Result<RecognizableDecomposition> {
    let b = build_distance_automaton(alpha, s)?;
    if !is_limited(&b) {
        return Err(Error::NoRecognizableUniformization);
    }
    let d = bounded_distance_value(&b)? as usize;
    let s = s.remove_eps().trim();
    let dom = b.language().minimal();
    // a charged unit covers at most two output blocks of at most |Q| letters;
    // an empty input carries one uncharged block
    let q = s.num_states();
    let bound = (s.num_transitions() * d).max(q * (2 * d + 1));
    let (n_in, n_out) = (alpha.n_in(), alpha.n_out());
    let mut covered = Dfa::empty(n_in);
    let mut parts = Vec::new();
    for len in 0..=bound {
        if covered.includes(&dom) {
            break;
        }
        if n_out == 0 && len > 0 {
            break;
        }
        for v in words(n_out, len) {
            let u = inputs_with_output(alpha, &s, &v).difference(&covered).minimize();
            if u.is_empty() {
                continue;
            }
            covered = covered.union(&u).minimize();
            parts.push((u, Nfa::word(n_out, &v).minimal()));
        }
    }
    if !covered.includes(&dom) {
        return Err(Error::Internal(format!("domain not covered by outputs of length ≤ {bound}")));
    }
    RecognizableDecomposition::new(n_in, n_out, parts)
}

/// Runs the product DFA of the U_i, emitting nothing per letter and v_i at
/// the end.
pub fn uniformizer_to_subseq(alpha: &TaggedAlphabet, d: &RecognizableDecomposition) -> Result<SubseqTransducer> {
    if d.n_in() != alpha.n_in() || d.n_out() != alpha.n_out() {
        return Err(Error::AlphabetMismatch("decomposition over a different alphabet".into()));
    }
    let mut outs = Vec::new();
    for (_, v) in d.parts() {
        match v.finite_words().as_deref() {
            Some([w]) => outs.push(w.clone()),
            _ => return Err(Error::NotFunctionalDecomposition("some V_i is not a singleton".into())),
        }
    }
    if !d.is_disjoint() {
        return Err(Error::NotFunctionalDecomposition("the U_i overlap".into()));
    }
    let us: Vec<&Dfa> = d.parts().iter().map(|(u, _)| u).collect();
    let mut f = SubseqTransducer::new(alpha, 1);
    let start: Vec<Option<State>> = us.iter().map(|u| Some(u.initial())).collect();
    let final_out = |key: &[Option<State>]| {
        (0..us.len()).find(|&i| key[i].is_some_and(|q| us[i].is_final(q))).map(|i| outs[i].clone())
    };
    f.final_out[0] = final_out(&start);
    let mut ids: HashMap<Vec<Option<State>>, State> = HashMap::from([(start.clone(), 0)]);
    let mut todo = vec![start];
    while let Some(key) = todo.pop() {
        let me = ids[&key];
        for x in 0..alpha.n_in() {
            let next: Vec<Option<State>> =
                key.iter().zip(&us).map(|(q, u)| q.and_then(|q| u.step(q, x))).collect();
            if next.iter().all(Option::is_none) {
                continue;
            }
            let to = match ids.get(&next) {
                Some(&s) => s,
                None => {
                    let s = f.add_state();
                    f.final_out[s] = final_out(&next);
                    ids.insert(next.clone(), s);
                    todo.push(next);
                    s
                }
            };
            f.delta[me][x] = Some((Vec::new(), to));
        }
    }
    Ok(f)
}

/// dom(f) = dom⟦S⟧ and graph(f) ⊆ ⟦S⟧.
///
/// Decided with automatic-relation operations when S(f) and S have finite
/// shiftlag, and for any f when ⟦S⟧ is recognizable.
pub fn verify_uniformizer(f: &SubseqTransducer, s: &Nfa) -> Result<bool> {
    let alpha = &f.alpha;
    if s.letters() != alpha.size() {
        return Err(Error::AlphabetMismatch("language is not over the tagged alphabet".into()));
    }
    let sf = sync_language_of_transducer(&f.to_nft())?;
    let cs = classify(alpha, s)?;
    if cs.shift_finite {
        return verify_recognizable(alpha, &sf, s);
    }
    if !cs.shiftlag_finite || !classify(alpha, &sf)?.shiftlag_finite {
        return Err(Error::Unsupported(
            "inclusion in a relation outside finite shiftlag is undecidable in general".into(),
        ));
    }
    let rf = from_sync_fsl(alpha, &sf)?;
    let rs = from_sync_fsl(alpha, s)?;
    Ok(rf.domain().equivalent(&rs.domain()) && rs.includes(&rf)?)
}

/// With ⟦S⟧ = ∪ U_i × V_i and the U_i disjoint, graph(f) ⊆ ⟦S⟧ iff
/// f(U_i) ⊆ V_i for each i.
fn verify_recognizable(alpha: &TaggedAlphabet, sf: &Nfa, s: &Nfa) -> Result<bool> {
    let rs = from_sync_fsl(alpha, s)?;
    let d = rs
        .recognizable_decomposition()
        .ok_or_else(|| Error::Internal("finite-shift language with a non-recognizable relation".into()))?;
    let d = RecognizableDecomposition::from_products(d.n_in(), d.n_out(), d.parts().iter().cloned());
    let dom_f = sf.map_letters(alpha.n_in(), |l| alpha.is_input(l).then(|| alpha.raw(l)));
    if !dom_f.equivalent(&rs.domain()) {
        return Ok(false);
    }
    for (u, v) in d.parts() {
        let image = sf
            .intersect(&lift_inputs(alpha, u))
            .map_letters(alpha.n_out(), |l| (!alpha.is_input(l)).then(|| alpha.raw(l)));
        if !v.includes(&image.minimal()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tagged words whose input projection lies in `u`.
fn lift_inputs(alpha: &TaggedAlphabet, u: &Dfa) -> Nfa {
    let mut a = Nfa::new(alpha.size());
    for _ in 1..u.num_states() {
        a.add_state();
    }
    a.set_initial(u.initial());
    for q in 0..u.num_states() {
        a.set_final(q, u.is_final(q));
        for (x, r) in u.edges(q) {
            a.add_edge(q, alpha.input(x), r);
        }
        for y in alpha.output_letters() {
            a.add_edge(q, y, q);
        }
    }
    a
}
