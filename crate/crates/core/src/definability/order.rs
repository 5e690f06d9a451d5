//! The synchronicity order ⪯_T and the sets of strictly larger
//! synchronizations.

use std::collections::HashMap;

use crate::automata::{Dfa, Letter, Nfa, State};
use crate::autorel::fs_decompose;
use crate::error::{Error, Result};
use crate::resync::{diff_step, filter_by_recognizable, DiffState};
use crate::syncword::{classify, decode_pair, TaggedAlphabet};

/// Length of the shortest prefix of `w` whose residual has finite shift;
/// `None` if no prefix of `w` gets there.
pub fn fs_entry(dfa: &Dfa, fs: &[bool], w: &[Letter]) -> Option<usize> {
    let mut q = dfa.initial();
    if fs[q] {
        return Some(0);
    }
    for (i, &a) in w.iter().enumerate() {
        match dfa.step(q, a) {
            Some(r) if !fs[r] => q = r,
            // a missing edge means an empty residual
            _ => return Some(i + 1),
        }
    }
    None
}

/// w ⪯_T w′: w reaches a finite-shift residual no later than w′ does.
pub fn sync_order_leq(alpha: &TaggedAlphabet, t: &Nfa, w: &[Letter], w2: &[Letter]) -> Result<bool> {
    if decode_pair(alpha, w) != decode_pair(alpha, w2) {
        return Err(Error::NotSamePair);
    }
    let c = classify(alpha, t)?;
    Ok(match (fs_entry(&c.dfa, &c.fs_states, w), fs_entry(&c.dfa, &c.fs_states, w2)) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(i), Some(j)) => i <= j,
    })
}

/// {w ∈ T | some w′ ∈ T′ synchronizes the same pair and w ≻_T w′}.
///
/// Reads w while guessing w′ letter by letter; once w′ enters Q^FS (and w
/// has not), the rest of w is checked against the shifted recognizable
/// relation of the T′-residual.
pub fn larger_sync_set(alpha: &TaggedAlphabet, t: &Nfa, t2: &Nfa) -> Result<Nfa> {
    let c = classify(alpha, t)?;
    c.gamma.ok_or(Error::NotFiniteShiftlag)?;
    if !t.includes(t2) {
        return Err(Error::NotSubset);
    }
    let k = alpha.size();
    let (a, fs) = (&c.dfa, &c.fs_states);
    let b = t2.minimal();
    if fs[a.initial()] || b.is_empty() {
        return Ok(Nfa::empty(k));
    }

    type Key = (State, State, State, DiffState);
    let mut out = Nfa::new(k);
    let start: Key = (a.initial(), a.initial(), b.initial(), (Vec::new(), Vec::new()));
    let mut ids: HashMap<Key, State> = HashMap::from([(start.clone(), 0)]);
    let mut todo = vec![start];
    let mut filters: HashMap<(State, State, DiffState), Option<State>> = HashMap::new();
    while let Some(key) = todo.pop() {
        let me = ids[&key];
        let (p, q, q2, d) = key;
        for x in 0..k {
            let Some(p1) = a.step(p, x).filter(|&r| !fs[r]) else { continue };
            for y in 0..k {
                let (Some(q1), Some(q21)) = (a.step(q, y), b.step(q2, y)) else { continue };
                let Some(d1) = diff_step(alpha, &d, x, y) else { continue };
                if !fs[q1] {
                    let nk = (p1, q1, q21, d1);
                    let to = *ids.entry(nk.clone()).or_insert_with(|| {
                        todo.push(nk);
                        out.add_state()
                    });
                    out.add_edge(me, x, to);
                    continue;
                }
                let fkey = (p1, q21, d1);
                let entry = match filters.get(&fkey) {
                    Some(&e) => e,
                    None => {
                        let (u, v) = &fkey.2;
                        let rel = fs_decompose(alpha, &b, q21)?.shifted(alpha, u, v);
                        let f = filter_by_recognizable(alpha, &a.with_initial(p1).to_nfa(), &rel)?;
                        let e = (!f.is_empty()).then(|| {
                            let off = out.embed(&f);
                            off + f.initial()
                        });
                        filters.insert(fkey, e);
                        e
                    }
                };
                if let Some(e) = entry {
                    out.add_edge(me, x, e);
                }
            }
        }
    }
    Ok(out.trim())
}

/// T minus its strictly larger synchronizations.
pub fn minsync_tt(alpha: &TaggedAlphabet, t: &Nfa) -> Result<Nfa> {
    let larger = larger_sync_set(alpha, t, t)?;
    Ok(t.difference(&larger).minimal().to_nfa())
}
