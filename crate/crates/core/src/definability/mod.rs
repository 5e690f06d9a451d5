//! Resynchronized definability: is ⟦S⟧ defined by some regular subset of T?

mod order;
mod sets;
mod targets;

use std::fmt;

use serde::Serialize;

pub use order::{fs_entry, larger_sync_set, minsync_tt, sync_order_leq};
pub use sets::{allsync_regular, maxsync_regular, minsync_regular};
pub use targets::{
    alternating, identity_prefix, inputs_then_outputs, is_prefix_closed_even, is_prefix_recognizable,
    is_unambiguous, maxsync_prefix_closed,
};

use crate::automata::Nfa;
use crate::autorel::{from_sync_fsl, AutomaticRelation};
use crate::error::{Error, Result};
use crate::resync::filter_by_recognizable;
use crate::syncword::{classify, SyncClassification, TaggedAlphabet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

/// A three-valued answer. For the regularity deciders `yes` means regular
/// and the witness is the constructed set.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub answer: Answer,
    pub method: String,
    pub witness: Option<Nfa>,
    pub reason: String,
    /// Checks attempted on the way, one line each.
    pub checks: Vec<String>,
}

impl Verdict {
    pub fn new(method: &str) -> Self {
        Verdict {
            answer: Answer::Unknown,
            method: method.into(),
            witness: None,
            reason: String::new(),
            checks: Vec::new(),
        }
    }

    fn answer(mut self, a: Answer, reason: impl Into<String>) -> Self {
        self.answer = a;
        self.reason = reason.into();
        self
    }

    fn with_witness(mut self, w: Nfa) -> Self {
        self.witness = Some(w);
        self
    }
}

/// W ⊆ T and ⟦W⟧ = ⟦S⟧, for W, S of finite shiftlag.
pub fn verify_witness(alpha: &TaggedAlphabet, s: &Nfa, t: &Nfa, w: &Nfa) -> Result<bool> {
    if !t.includes(w) {
        return Ok(false);
    }
    from_sync_fsl(alpha, w)?.equivalent(&from_sync_fsl(alpha, s)?)
}

/// Routes (S, T) to the strongest applicable decision procedure, falling
/// back to sufficient checks; `unknown` lists what was tried.
pub fn decide_definability(alpha: &TaggedAlphabet, s: &Nfa, t: &Nfa) -> Result<Verdict> {
    for x in [s, t] {
        if x.letters() != alpha.size() {
            return Err(Error::AlphabetMismatch("language is not over the tagged alphabet".into()));
        }
    }
    let cs = classify(alpha, s)?;
    let ct = classify(alpha, t)?;
    if !cs.shiftlag_finite || !ct.shiftlag_finite {
        return outside_fsl(alpha, s, t, &cs);
    }
    let rs = from_sync_fsl(alpha, s)?;
    let rt = from_sync_fsl(alpha, t)?;
    let mut checks = vec!["pair containment ⟦S⟧ ⊆ ⟦T⟧".to_string()];
    if !rt.includes(&rs)? {
        let mut v = Verdict::new("containment").answer(Answer::No, "⟦S⟧ is not contained in ⟦T⟧");
        v.checks = checks;
        return Ok(v);
    }

    if cs.shift_finite || ct.shift_finite {
        checks.push("recognizability of ⟦S⟧".into());
        let method = if cs.shift_finite { "fs-source" } else { "fs-target" };
        let mut v = Verdict::new(method);
        v.checks = checks;
        return Ok(match rs.recognizable_decomposition() {
            Some(d) => {
                let w = filter_by_recognizable(alpha, t, &d)?;
                v.answer(Answer::Yes, "⟦S⟧ is recognizable; its T-synchronizations form a regular set")
                    .with_witness(w)
            }
            None if ct.shift_finite => {
                v.answer(Answer::No, "T has finite shift but ⟦S⟧ is not recognizable")
            }
            None => return Err(Error::Internal("finite-shift source with a non-recognizable relation".into())),
        });
    }

    checks.push("unambiguity of T".into());
    if is_unambiguous(alpha, t)? {
        let m = minsync_regular(alpha, s, t)?;
        checks.push(format!("minsync(S, T): {}", regular(m.answer)));
        let mut v = Verdict::new("unambiguous-target");
        v.checks = checks;
        return Ok(match (m.answer, m.witness) {
            (Answer::Yes, Some(w)) => v.answer(Answer::Yes, "T is unambiguous and minsync(S, T) is regular").with_witness(w),
            _ => v.answer(Answer::No, "T is unambiguous and minsync(S, T) is not regular"),
        });
    }

    let mtt = maxsync_regular(alpha, t, t)?;
    checks.push(format!("maxsync(T, T): {}", regular(mtt.answer)));
    if mtt.answer == Answer::Yes {
        let m = maxsync_regular(alpha, s, t)?;
        checks.push(format!("maxsync(S, T): {}", regular(m.answer)));
        let mut v = Verdict::new("maxsync-target");
        v.checks = checks;
        return Ok(match (m.answer, m.witness) {
            (Answer::Yes, Some(w)) => v.answer(Answer::Yes, "maxsync(T, T) and maxsync(S, T) are regular").with_witness(w),
            _ => v.answer(Answer::No, "maxsync(T, T) is regular but maxsync(S, T) is not"),
        });
    }

    let mut v = Verdict::new("sufficient-checks");
    let candidates: [(&str, fn(&TaggedAlphabet, &Nfa, &Nfa) -> Result<Verdict>); 3] =
        [("allsync", allsync_regular), ("minsync", minsync_regular), ("maxsync", maxsync_regular)];
    for (name, f) in candidates {
        let m = f(alpha, s, t)?;
        let Some(w) = m.witness.filter(|_| m.answer == Answer::Yes) else {
            checks.push(format!("{name}(S, T): not regular"));
            continue;
        };
        let same = from_sync_fsl(alpha, &w)?.equivalent(&rs)?;
        checks.push(format!("{name}(S, T): regular, pair-equal: {same}"));
        if same {
            v.checks = checks;
            return Ok(v.answer(Answer::Yes, format!("{name}(S, T) is regular and defines ⟦S⟧")).with_witness(w));
        }
    }
    v.checks = checks;
    Ok(v.answer(
        Answer::Unknown,
        "no decidable case applies and allsync, minsync, maxsync are not regular definitions",
    ))
}

fn regular(a: Answer) -> &'static str {
    if a == Answer::Yes {
        "regular"
    } else {
        "not regular"
    }
}

/// Some operand lacks finite shiftlag: only a recognizable source gives a
/// checkable candidate.
fn outside_fsl(alpha: &TaggedAlphabet, s: &Nfa, t: &Nfa, cs: &SyncClassification) -> Result<Verdict> {
    let mut v = Verdict::new("sufficient-checks");
    let undecidable = "outside finite shiftlag the problem is undecidable in general (reduction from universality of rational relations)";
    if !cs.shiftlag_finite {
        v.checks.push("source has infinite shiftlag: no candidate".into());
        return Ok(v.answer(Answer::Unknown, undecidable));
    }
    let rs = from_sync_fsl(alpha, s)?;
    v.checks.push("recognizability of ⟦S⟧".into());
    let Some(d) = rs.recognizable_decomposition() else {
        return Ok(v.answer(Answer::Unknown, undecidable));
    };
    let w = filter_by_recognizable(alpha, t, &d)?;
    v.checks.push("filtered target as candidate".into());
    if classify(alpha, &w)?.shiftlag_finite && from_sync_fsl(alpha, &w)?.equivalent(&rs)? {
        return Ok(v
            .answer(Answer::Yes, "the T-synchronizations of the recognizable ⟦S⟧ define it")
            .with_witness(w));
    }
    Ok(v.answer(Answer::Unknown, undecidable))
}

/// The instance (S, T) with ⟦S⟧ ∈ Rel(T) iff R₁ and R₂ are separable by a
/// recognizable relation.
pub fn separability_to_definability(r1: &AutomaticRelation, r2: &AutomaticRelation) -> Result<(Nfa, Nfa)> {
    if !r1.intersection(r2)?.is_empty() {
        return Err(Error::NotDisjoint);
    }
    let alpha = r1.alphabet();
    let s = r2.complement().to_sync();
    let m = r1.complement().intersection(&r2.complement())?.to_sync();
    let t = inputs_then_outputs(alpha).union(&m);
    Ok((s, t))
}
