#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use syncrel::automata::{parse_regex, Nfa};
use syncrel::oracle::{pairs_of_size, syncs_of, Pair};
use syncrel::syncword::{classify, SyncClass, TaggedAlphabet};
use syncrel::uniform::{DistanceAutomaton, Weight};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn re(al: &TaggedAlphabet, s: &str) -> Nfa {
    parse_regex(s, al).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn ab() -> TaggedAlphabet {
    TaggedAlphabet::new(&["a"], &["b"])
}

pub fn random_nfa(r: &mut StdRng, letters: usize, states: usize, density: f64) -> Nfa {
    let mut a = Nfa::new(letters);
    for _ in 1..states {
        a.add_state();
    }
    for p in 0..states {
        a.set_final(p, r.gen_bool(0.35));
        for l in 0..letters {
            for q in 0..states {
                if r.gen_bool(density) {
                    a.add_edge(p, l, q);
                }
            }
        }
    }
    a
}

/// Rejection-samples a nonempty language of the requested class.
pub fn random_of_class(r: &mut StdRng, al: &TaggedAlphabet, class: SyncClass, max_states: usize) -> Nfa {
    loop {
        let n = r.gen_range(1..=max_states);
        let a = random_nfa(r, al.size(), n, 0.25);
        if a.is_empty() {
            continue;
        }
        if classify(al, &a).unwrap().class == class {
            return a;
        }
    }
}

/// Does some synchronization of (u, v) lie in S?
pub fn in_relation(al: &TaggedAlphabet, s: &Nfa, u: &[usize], v: &[usize]) -> bool {
    syncs_of(al, u, v).iter().any(|w| s.accepts(w))
}

pub fn all_pairs(al: &TaggedAlphabet, max: usize) -> Vec<Pair> {
    (0..=max).flat_map(|n| pairs_of_size(al, n)).collect()
}

pub fn random_distance(r: &mut StdRng, letters: usize, states: usize) -> DistanceAutomaton {
    let mut b = DistanceAutomaton::new(letters, states);
    for p in 0..states {
        b.set_final(p, r.gen_bool(0.4));
        for x in 0..letters {
            for q in 0..states {
                if r.gen_bool(0.3) {
                    let w = match r.gen_range(0..5) {
                        0 | 1 => Weight::Zero,
                        2 | 3 => Weight::One,
                        _ => Weight::Inf,
                    };
                    b.add_edge(p, x, q, w);
                }
            }
        }
    }
    b
}
