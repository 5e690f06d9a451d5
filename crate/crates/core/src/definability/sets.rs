//! Regularity of allsync, minsync and maxsync via transition profiles over
//! the first-entry prefixes fse(T).

use std::collections::HashMap;

use super::order::minsync_tt;
use super::{Answer, Verdict};
use crate::automata::{Dfa, Nfa, State};
use crate::autorel::{from_sync_fsl, AutomaticRelation};
use crate::error::{Error, Result};
use crate::resync::{diff_step, filter_by_recognizable, full_gamma_lagged, DiffState};
use crate::syncword::{classify, TaggedAlphabet};

/// Source DFA state, target DFA state, and for maxsync the set G of
/// (state reached by a competing prefix x, diff(x, y)).
type Profile = (State, State, Vec<(State, DiffState)>);

struct Ctx<'a> {
    alpha: &'a TaggedAlphabet,
    /// Minimal DFA of the full γ-lagged form of S.
    a: Dfa,
    b: Dfa,
    fs: Vec<bool>,
    maximal: bool,
    rel_a: HashMap<State, AutomaticRelation>,
    rel_b: HashMap<State, AutomaticRelation>,
    larger: HashMap<(State, DiffState), AutomaticRelation>,
}

impl Ctx<'_> {
    fn rel_a(&mut self, p: State) -> Result<AutomaticRelation> {
        if let Some(r) = self.rel_a.get(&p) {
            return Ok(r.clone());
        }
        let r = from_sync_fsl(self.alpha, &self.a.with_initial(p).to_nfa())?;
        self.rel_a.insert(p, r.clone());
        Ok(r)
    }

    fn rel_b(&mut self, q: State) -> Result<AutomaticRelation> {
        if let Some(r) = self.rel_b.get(&q) {
            return Ok(r.clone());
        }
        let r = from_sync_fsl(self.alpha, &self.b.with_initial(q).to_nfa())?;
        self.rel_b.insert(q, r.clone());
        Ok(r)
    }

    /// Continuations z with ⟦yz⟧ = ⟦xz′⟧ for some z′ ∈ B_r, d = diff(x, y).
    fn overtaken(&mut self, r: State, d: &DiffState) -> Result<AutomaticRelation> {
        let key = (r, d.clone());
        if let Some(x) = self.larger.get(&key) {
            return Ok(x.clone());
        }
        let x = self.rel_b(r)?.shifted(&d.1, &d.0)?;
        self.larger.insert(key, x.clone());
        Ok(x)
    }

    /// The relation continuations must realize after a terminal profile.
    fn residual_relation(&mut self, pr: &Profile) -> Result<AutomaticRelation> {
        let (p, q, g) = pr;
        let mut r = self.rel_a(*p)?.intersection(&self.rel_b(*q)?)?;
        for (s, d) in g {
            if r.is_empty() {
                break;
            }
            r = r.difference(&self.overtaken(*s, d)?)?;
        }
        Ok(r)
    }

    fn step(&self, pr: &Profile, y: usize) -> Option<Profile> {
        let (p, q, g) = pr;
        if self.fs[*q] {
            return None;
        }
        let p1 = self.a.step(*p, y)?;
        let q1 = self.b.step(*q, y)?;
        let mut g1 = Vec::new();
        if self.maximal {
            for (r, d) in g {
                for x in 0..self.alpha.size() {
                    let Some(r1) = self.b.step(*r, x).filter(|&r1| !self.fs[r1]) else { continue };
                    if let Some(d1) = diff_step(self.alpha, d, x, y) {
                        g1.push((r1, d1));
                    }
                }
            }
            g1.sort();
            g1.dedup();
        }
        Some((p1, q1, g1))
    }
}

/// Which selection of T-synchronizations of ⟦S⟧ to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Selection {
    All,
    Max,
}

fn sync_set(alpha: &TaggedAlphabet, s: &Nfa, t: &Nfa, sel: Selection, method: &str) -> Result<Verdict> {
    let cs = classify(alpha, s)?;
    let ct = classify(alpha, t)?;
    let (Some(gs), Some(gt)) = (cs.gamma, ct.gamma) else {
        return Err(Error::NotFiniteShiftlag);
    };
    let gamma = gs.max(gt) + 1;
    let s_full = full_gamma_lagged(alpha, s, gamma)?;
    let mut cx = Ctx {
        alpha,
        a: s_full.minimal(),
        b: ct.dfa.clone(),
        fs: ct.fs_states.clone(),
        maximal: sel == Selection::Max,
        rel_a: HashMap::new(),
        rel_b: HashMap::new(),
        larger: HashMap::new(),
    };
    let k = alpha.size();
    let (a0, b0) = (cx.a.initial(), cx.b.initial());
    let g0 = if cx.maximal && !cx.fs[b0] {
        vec![(b0, (Vec::new(), Vec::new()))]
    } else {
        Vec::new()
    };
    let start: Profile = (a0, b0, g0);

    let mut out = Nfa::new(k);
    let mut ids: HashMap<Profile, State> = HashMap::from([(start.clone(), 0)]);
    let mut todo = vec![start];
    let mut gates: HashMap<Profile, Option<State>> = HashMap::new();
    let mut terminals = 0usize;
    let mut failing = 0usize;
    while let Some(pr) = todo.pop() {
        let me = ids[&pr];
        if cx.fs[pr.1] {
            // only reachable as the start profile, when ε ∈ fse(T)
            terminals += 1;
            match gate(&mut cx, &mut out, &pr)? {
                Some(Some(e)) => out.add_eps(me, e),
                Some(None) => {}
                None => failing += 1,
            }
            continue;
        }
        out.set_final(me, cx.a.is_final(pr.0) && cx.b.is_final(pr.1));
        for y in 0..k {
            let Some(nx) = cx.step(&pr, y) else { continue };
            if !cx.fs[nx.1] {
                let to = *ids.entry(nx.clone()).or_insert_with(|| {
                    todo.push(nx);
                    out.add_state()
                });
                out.add_edge(me, y, to);
                continue;
            }
            let e = match gates.get(&nx) {
                Some(&e) => e,
                None => {
                    terminals += 1;
                    let e = match gate(&mut cx, &mut out, &nx)? {
                        Some(e) => e,
                        None => {
                            failing += 1;
                            None
                        }
                    };
                    gates.insert(nx, e);
                    e
                }
            };
            if let Some(e) = e {
                out.add_edge(me, y, e);
            }
        }
        if failing > 0 {
            break;
        }
    }
    let mut v = Verdict::new(method);
    if failing > 0 {
        v.answer = Answer::No;
        v.reason = format!("{method} is not regular: a residual relation after entering Q^FS is not recognizable");
        return Ok(v);
    }
    v.answer = Answer::Yes;
    v.reason = format!("{method} is regular ({terminals} terminal profile(s), all residual relations recognizable)");
    v.witness = Some(out.trim());
    Ok(v)
}

/// `None` if the profile's relation is not recognizable, else the entry
/// state of its filtered continuation (`Some(None)` when empty).
fn gate(cx: &mut Ctx<'_>, out: &mut Nfa, pr: &Profile) -> Result<Option<Option<State>>> {
    let rel = cx.residual_relation(pr)?;
    if rel.is_empty() {
        return Ok(Some(None));
    }
    let Some(d) = rel.recognizable_decomposition() else {
        return Ok(None);
    };
    let f = filter_by_recognizable(cx.alpha, &cx.b.with_initial(pr.1).to_nfa(), &d)?;
    if f.is_empty() {
        return Ok(Some(None));
    }
    let off = out.embed(&f);
    Ok(Some(Some(off + f.initial())))
}

/// allsync(S, T) = {w ∈ T | ⟦w⟧ ∈ ⟦S⟧}: regular iff each residual
/// intersection after entering Q^FS is recognizable.
pub fn allsync_regular(alpha: &TaggedAlphabet, s: &Nfa, t: &Nfa) -> Result<Verdict> {
    sync_set(alpha, s, t, Selection::All, "allsync")
}

/// minsync(S, T) = allsync(S, minsync(T, T)).
pub fn minsync_regular(alpha: &TaggedAlphabet, s: &Nfa, t: &Nfa) -> Result<Verdict> {
    let tm = minsync_tt(alpha, t)?;
    sync_set(alpha, s, &tm, Selection::All, "minsync")
}

/// The ⪯_T-maximal T-synchronizations of ⟦S⟧.
pub fn maxsync_regular(alpha: &TaggedAlphabet, s: &Nfa, t: &Nfa) -> Result<Verdict> {
    sync_set(alpha, s, t, Selection::Max, "maxsync")
}
