//! Regular languages over finite alphabets whose letters are `0..n`.

mod dfa;
mod nfa;
pub mod regex;

pub use dfa::Dfa;
pub use nfa::Nfa;
pub use regex::{parse_regex, PlainAlphabet, Symbols};

use crate::error::{Error, Result};

pub type Letter = usize;
pub type State = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Union,
    Intersection,
    Difference,
    Complement,
    Concat,
    Star,
}

fn same_alphabet(ops: &[&Nfa]) -> Result<usize> {
    let n = ops
        .first()
        .map(|a| a.letters())
        .ok_or_else(|| Error::AlphabetMismatch("no operands".into()))?;
    if ops.iter().any(|a| a.letters() != n) {
        return Err(Error::AlphabetMismatch("operands use different alphabets".into()));
    }
    Ok(n)
}

/// Boolean and rational combinations of languages.
pub fn combine(op: CombineOp, operands: &[&Nfa]) -> Result<Nfa> {
    let n = same_alphabet(operands)?;
    let arity_err = |want: &str| Error::AlphabetMismatch(format!("{op:?} expects {want}"));
    Ok(match op {
        CombineOp::Union => Nfa::union_all(n, operands.iter().copied()),
        CombineOp::Intersection => {
            let mut acc = operands[0].minimal();
            for o in &operands[1..] {
                acc = acc.intersect(&o.minimal());
            }
            acc.to_nfa()
        }
        CombineOp::Difference => {
            if operands.len() != 2 {
                return Err(arity_err("two operands"));
            }
            operands[0].difference(operands[1])
        }
        CombineOp::Complement => {
            if operands.len() != 1 {
                return Err(arity_err("one operand"));
            }
            operands[0].complement()
        }
        CombineOp::Concat => {
            let mut acc = Nfa::epsilon(n);
            for o in operands {
                acc = acc.concat(o);
            }
            acc
        }
        CombineOp::Star => {
            if operands.len() != 1 {
                return Err(arity_err("one operand"));
            }
            operands[0].star()
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecideOp {
    IsEmpty,
    IsFinite,
    Includes,
    Equivalent,
}

pub fn decide(op: DecideOp, args: &[&Nfa]) -> Result<bool> {
    same_alphabet(args)?;
    let want = match op {
        DecideOp::IsEmpty | DecideOp::IsFinite => 1,
        DecideOp::Includes | DecideOp::Equivalent => 2,
    };
    if args.len() != want {
        return Err(Error::AlphabetMismatch(format!("{op:?} expects {want} operand(s)")));
    }
    Ok(match op {
        DecideOp::IsEmpty => args[0].is_empty(),
        DecideOp::IsFinite => args[0].is_finite(),
        DecideOp::Includes => args[0].includes(args[1]),
        DecideOp::Equivalent => args[0].equivalent(args[1]),
    })
}

pub fn member(a: &Nfa, w: &[Letter]) -> Result<bool> {
    if w.iter().any(|&x| x >= a.letters()) {
        return Err(Error::AlphabetMismatch("word uses letters outside the alphabet".into()));
    }
    Ok(a.accepts(w))
}

/// u⁻¹L.
pub fn left_quotient(u: &[Letter], l: &Nfa) -> Nfa {
    l.left_quotient(u)
}

/// A_q: same transitions, initial state `q`.
pub fn residual(a: &Nfa, q: State) -> Result<Nfa> {
    if q >= a.num_states() {
        return Err(Error::UnknownState(q));
    }
    Ok(a.with_initial(q))
}

pub fn residual_dfa(a: &Dfa, q: State) -> Result<Dfa> {
    if q >= a.num_states() {
        return Err(Error::UnknownState(q));
    }
    Ok(a.with_initial(q))
}

pub fn enumerate_up_to(l: &Nfa, max_len: usize) -> Vec<Vec<Letter>> {
    l.enumerate_up_to(max_len)
}

/// Strongly connected components (Tarjan, iterative); returns the component
/// index of each state, components numbered in reverse topological order.
pub fn scc(n: usize, succ: &dyn Fn(State) -> Vec<State>) -> Vec<usize> {
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(State, Vec<State>, usize)> = vec![(root, succ(root), 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, succ(w), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}
