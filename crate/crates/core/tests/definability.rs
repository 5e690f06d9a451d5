mod common;

use common::*;
use syncrel::automata::Nfa;
use syncrel::autorel::{from_sync_fsl, AutomaticRelation};
use syncrel::definability::*;
use syncrel::oracle::{self, same_pair_syncs};
use syncrel::syncword::{decode_pair, SyncClass, TaggedAlphabet};
use syncrel::Error;

const U: &str = "(ab)*(a a^+ + b b^+)";
const M: &str = "(aa)*(bb)* + a(aa)*b(bb)*";

fn ex_t(al: &TaggedAlphabet) -> Nfa {
    re(al, &format!("a*b* + {U}"))
}

fn ex_s(al: &TaggedAlphabet) -> Nfa {
    re(al, &format!("(ab)* + {U}"))
}

fn acbd() -> TaggedAlphabet {
    TaggedAlphabet::new(&["a", "b"], &["c", "d"])
}

/// All words over the tagged alphabet up to length n.
fn all_words(al: &TaggedAlphabet, n: usize) -> Vec<Vec<usize>> {
    oracle::words_up_to(al.size(), n)
}

#[test]
fn sync_order_examples() {
    let al = ab();
    let t = ex_t(&al);
    let w = al.word("a a a b").unwrap();
    let w2 = al.word("a b a a").unwrap();
    assert!(t.accepts(&w) && t.accepts(&w2));
    assert!(sync_order_leq(&al, &t, &w, &w2).unwrap());
    assert!(!sync_order_leq(&al, &t, &w2, &w).unwrap());
    assert!(sync_order_leq(&al, &t, &w, &w).unwrap());
    assert_eq!(sync_order_leq(&al, &t, &w, &al.word("a b").unwrap()), Err(Error::NotSamePair));
    let c = syncrel::syncword::classify(&al, &t).unwrap();
    assert_eq!(fs_entry(&c.dfa, &c.fs_states, &w), Some(2));
    assert_eq!(fs_entry(&c.dfa, &c.fs_states, &w2), Some(4));

    let st = inputs_then_outputs(&al);
    for x in st.enumerate_up_to(6) {
        assert_eq!(same_pair_syncs(&al, &st, &x), vec![x.clone()]);
        assert!(sync_order_leq(&al, &st, &x, &x).unwrap());
    }
}

#[test]
fn sync_order_matches_residual_oracle() {
    let mut r = rng(21);
    let al = ab();
    for _ in 0..20 {
        let t = random_of_class(&mut r, &al, SyncClass::FSL, 4);
        for w in t.enumerate_up_to(6) {
            for w2 in same_pair_syncs(&al, &t, &w) {
                assert_eq!(
                    sync_order_leq(&al, &t, &w, &w2).unwrap(),
                    oracle::order_leq(&al, &t, &w, &w2),
                    "{w:?} {w2:?}"
                );
            }
        }
    }
}

/// {w ∈ T | some w′ ∈ T′ of the same pair is strictly smaller}, to length n.
fn larger_by_enumeration(al: &TaggedAlphabet, t: &Nfa, t2: &Nfa, n: usize) -> Vec<Vec<usize>> {
    t.enumerate_up_to(n)
        .into_iter()
        .filter(|w| {
            same_pair_syncs(al, t2, w)
                .iter()
                .any(|x| !oracle::order_leq(al, t, w, x))
        })
        .collect()
}

#[test]
fn larger_sync_set_examples() {
    let al = ab();
    let t = ex_t(&al);
    assert!(larger_sync_set(&al, &t, &Nfa::empty(2)).unwrap().is_empty());

    let t2 = re(&al, &format!("{M} + {U}"));
    let l = larger_sync_set(&al, &t, &t2).unwrap();
    // U-words past the first block whose pair has an even length difference
    let closed = re(&al, "(ab)^+ (aa)^+ + ab (ab)^+ (bb)^+");
    assert!(l.equivalent(&closed));
    assert_eq!(l.enumerate_up_to(8), larger_by_enumeration(&al, &t, &t2, 8));

    let l = larger_sync_set(&al, &t, &re(&al, U)).unwrap();
    assert!(l.is_empty());
    assert!(larger_by_enumeration(&al, &t, &re(&al, U), 8).is_empty());

    assert_eq!(larger_sync_set(&al, &re(&al, U), &t).unwrap_err(), Error::NotSubset);
    assert_eq!(
        larger_sync_set(&al, &re(&al, "(a^+ b^+)*"), &Nfa::empty(2)).unwrap_err(),
        Error::NotFiniteShiftlag
    );
}

#[test]
fn larger_sync_set_matches_enumeration() {
    let mut r = rng(5);
    for al in [ab(), TaggedAlphabet::new(&["a", "b"], &["c"])] {
        for _ in 0..15 {
            let t = random_of_class(&mut r, &al, SyncClass::FSL, 4);
            let sub = t.intersect(&random_nfa(&mut r, al.size(), 3, 0.4));
            for t2 in [t.clone(), sub] {
                let l = larger_sync_set(&al, &t, &t2).unwrap();
                assert!(t.includes(&l));
                let got: Vec<_> = t.enumerate_up_to(6).into_iter().filter(|w| l.accepts(w)).collect();
                assert_eq!(got, larger_by_enumeration(&al, &t, &t2, 6));
            }
        }
    }
}

#[test]
fn minsync_tt_examples() {
    let al = ab();
    let st = inputs_then_outputs(&al);
    assert!(minsync_tt(&al, &st).unwrap().equivalent(&st));
    assert!(minsync_tt(&al, &ex_t(&al)).unwrap().equivalent(&re(&al, "a*b*")));

    let t0 = alternating(&al).union(&st);
    let m = minsync_tt(&al, &t0).unwrap();
    assert!(t0.includes(&m));
    let rt = from_sync_fsl(&al, &t0).unwrap();
    assert!(from_sync_fsl(&al, &m).unwrap().equivalent(&rt).unwrap());
}

/// Survivors per pair: at least one, each ⪯ every T-synchronization.
fn check_min_survivors(al: &TaggedAlphabet, t: &Nfa, m: &Nfa, n: usize) {
    let mut pairs = std::collections::BTreeSet::new();
    for w in t.enumerate_up_to(n) {
        pairs.insert(decode_pair(al, &w));
    }
    for (u, v) in pairs {
        let all: Vec<_> = oracle::syncs_of(al, &u, &v).into_iter().filter(|x| t.accepts(x)).collect();
        let kept: Vec<_> = all.iter().filter(|x| m.accepts(x)).collect();
        assert!(!kept.is_empty(), "{u:?} {v:?} lost");
        for k in &kept {
            assert!(all.iter().all(|x| oracle::order_leq(al, t, k, x)));
        }
        for x in &all {
            if !m.accepts(x) {
                assert!(!oracle::is_minimal(al, t, x));
            }
        }
    }
}

#[test]
fn minsync_tt_keeps_exactly_the_minimal_syncs() {
    let mut r = rng(77);
    for al in [ab(), TaggedAlphabet::new(&["a"], &["b", "c"])] {
        for _ in 0..25 {
            let t = random_of_class(&mut r, &al, SyncClass::FSL, 5);
            let m = minsync_tt(&al, &t).unwrap();
            assert!(t.includes(&m));
            let rt = from_sync_fsl(&al, &t).unwrap();
            assert!(from_sync_fsl(&al, &m).unwrap().equivalent(&rt).unwrap());
            check_min_survivors(&al, &t, &m, 6);
        }
    }
}

#[test]
fn allsync_examples() {
    let al = ab();
    let t = ex_t(&al);
    let v = allsync_regular(&al, &t, &t).unwrap();
    assert_eq!(v.answer, Answer::Yes);
    assert!(v.witness.unwrap().equivalent(&t));

    assert_eq!(allsync_regular(&al, &re(&al, "(ab)*"), &t).unwrap().answer, Answer::No);
    assert_eq!(allsync_regular(&al, &ex_s(&al), &t).unwrap().answer, Answer::No);
    assert_eq!(
        allsync_regular(&al, &re(&al, "(a^+ b^+)*"), &t).unwrap_err(),
        Error::NotFiniteShiftlag
    );
}

/// Checks a regular allsync/minsync/maxsync witness word by word.
fn check_selection(al: &TaggedAlphabet, s: &Nfa, t: &Nfa, w: &Nfa, keep: impl Fn(&[usize]) -> bool, n: usize) {
    assert!(t.includes(w));
    for x in all_words(al, n) {
        let (u, v) = decode_pair(al, &x);
        let want = t.accepts(&x) && in_relation(al, s, &u, &v) && keep(&x);
        assert_eq!(w.accepts(&x), want, "{}", al.show(&x));
    }
}

#[test]
fn allsync_witness_matches_enumeration() {
    let mut r = rng(19);
    let al = ab();
    let mut regular = 0;
    for _ in 0..30 {
        let s = random_of_class(&mut r, &al, SyncClass::FSL, 4);
        let t = random_of_class(&mut r, &al, SyncClass::FSL, 4);
        let v = allsync_regular(&al, &s, &t).unwrap();
        if let Some(w) = v.witness {
            regular += 1;
            check_selection(&al, &s, &t, &w, |_| true, 7);
        }
    }
    assert!(regular > 5);
}

#[test]
fn minsync_examples() {
    let al = ab();
    let st = inputs_then_outputs(&al);
    let v = minsync_regular(&al, &st, &st).unwrap();
    assert!(v.witness.unwrap().equivalent(&st));

    let t = ex_t(&al);
    assert_eq!(minsync_regular(&al, &ex_s(&al), &t).unwrap().answer, Answer::No);

    // every U-pair's minimal sync is its a*b* form, and those form
    // {a^n b^m : |n - m| ≥ 2}, which is not regular
    assert!(minsync_tt(&al, &t).unwrap().equivalent(&re(&al, "a*b*")));
    assert_eq!(minsync_regular(&al, &re(&al, U), &t).unwrap().answer, Answer::No);

    let s = re(&al, "(eps + ab) a a^+");
    let v = minsync_regular(&al, &s, &t).unwrap();
    assert_eq!(v.answer, Answer::Yes);
    let w = v.witness.unwrap();
    assert!(w.equivalent(&re(&al, "a a a* + a a a^+ b")));
    check_selection(&al, &s, &t, &w, |x| oracle::is_minimal(&al, &t, x), 8);
}

#[test]
fn minsync_and_allsync_agree_on_regularity() {
    let al = ab();
    let t = ex_t(&al);
    let st = inputs_then_outputs(&al);
    let t0 = alternating(&al).union(&st);
    let mut battery = vec![
        (ex_s(&al), t.clone()),
        (re(&al, U), t.clone()),
        (re(&al, "(ab)*"), t.clone()),
        (t.clone(), t.clone()),
        (st.clone(), st.clone()),
        (t0.clone(), t0.clone()),
        (alternating(&al), t0.clone()),
        (re(&al, "a*b*"), t0),
    ];
    let mut r = rng(31);
    for _ in 0..20 {
        battery.push((
            random_of_class(&mut r, &al, SyncClass::FSL, 4),
            random_of_class(&mut r, &al, SyncClass::FSL, 4),
        ));
    }
    for (s, t) in &battery {
        let a = allsync_regular(&al, s, t).unwrap().answer;
        let m = minsync_regular(&al, s, t).unwrap();
        assert_eq!(a, m.answer);
        if let Some(w) = m.witness {
            let tm = minsync_tt(&al, t).unwrap();
            check_selection(&al, s, t, &w, |x| tm.accepts(x), 6);
        }
    }
}

#[test]
fn maxsync_examples() {
    let al = ab();
    let st = inputs_then_outputs(&al);
    let t0 = alternating(&al).union(&st);
    assert_eq!(maxsync_regular(&al, &t0, &t0).unwrap().answer, Answer::No);
    let v = maxsync_regular(&al, &st, &st).unwrap();
    assert!(v.witness.unwrap().equivalent(&st));

    let al = acbd();
    let u = re(&al, "(a c)*");
    let t = u.concat(&inputs_then_outputs(&al));
    let v = maxsync_regular(&al, &t, &t).unwrap();
    assert_eq!(v.answer, Answer::Yes);
    let w = v.witness.unwrap();
    assert!(w.equivalent(&maxsync_prefix_closed(&al, &u).unwrap().to_nfa()));
    check_selection(&al, &t, &t, &w, |x| oracle::is_maximal(&al, &t, x), 6);
}

#[test]
fn maxsync_witness_holds_the_maximal_syncs() {
    let mut r = rng(43);
    let al = ab();
    let mut regular = 0;
    for i in 0..30 {
        let t = random_of_class(&mut r, &al, SyncClass::FSL, 4);
        let s = if i % 3 == 0 { t.clone() } else { random_of_class(&mut r, &al, SyncClass::FSL, 4) };
        let v = maxsync_regular(&al, &s, &t).unwrap();
        if let Some(w) = v.witness {
            regular += 1;
            check_selection(&al, &s, &t, &w, |x| oracle::is_maximal(&al, &t, x), 7);
        }
    }
    assert!(regular > 5);
}

#[test]
fn unambiguity_examples() {
    let al = acbd();
    let st = inputs_then_outputs(&al);
    let canon = alternating(&al).concat(&re(&al, "(a+b)* + (c+d)*"));
    assert!(is_unambiguous(&al, &canon).unwrap());
    assert!(is_unambiguous(&al, &st).unwrap());
    let both = alternating(&al).union(&st);
    assert!(!is_unambiguous(&al, &both).unwrap());
    let x = al.word("a c a c").unwrap();
    let y = al.word("a a c c").unwrap();
    assert!(both.accepts(&x) && both.accepts(&y));
    assert_eq!(decode_pair(&al, &x), decode_pair(&al, &y));
    assert_eq!(same_pair_syncs(&al, &both, &x), vec![y, x]);
    assert_eq!(is_unambiguous(&al, &re(&al, "(a+c)*")).unwrap_err(), Error::NotFiniteShiftlag);
}

#[test]
fn unambiguity_matches_enumeration() {
    let mut r = rng(8);
    let al = ab();
    for class in [SyncClass::FS, SyncClass::FSL] {
        for _ in 0..25 {
            let t = random_of_class(&mut r, &al, class, 4);
            let mut seen = std::collections::HashSet::new();
            let clash = t.enumerate_up_to(8).into_iter().any(|w| !seen.insert(decode_pair(&al, &w)));
            let un = is_unambiguous(&al, &t).unwrap();
            if clash {
                assert!(!un);
            }
            // a clash, if any, shows up among short words for these sizes
            if !un {
                let mut seen = std::collections::HashSet::new();
                let clash = t.enumerate_up_to(12).into_iter().any(|w| !seen.insert(decode_pair(&al, &w)));
                assert!(clash);
            }
        }
    }
}

#[test]
fn prefix_closed_targets() {
    let al = acbd();
    assert!(is_prefix_closed_even(&al, &re(&al, "(a c)*")).unwrap());
    assert!(!is_prefix_closed_even(&al, &re(&al, "a c a c")).unwrap());
    let pal = TaggedAlphabet::new(&["a", "b"], &["a", "b"]);
    let id = identity_prefix(&pal).unwrap();
    assert!(is_prefix_closed_even(&pal, &id).unwrap());
    assert_eq!(is_prefix_closed_even(&al, &re(&al, "a a")), Err(Error::NotAlternating));
    assert_eq!(maxsync_prefix_closed(&al, &re(&al, "a c a c")), Err(Error::NotPrefixClosed));
    assert_eq!(identity_prefix(&al), Err(Error::AlphabetShapeMismatch));

    let st = inputs_then_outputs(&al);
    assert!(maxsync_prefix_closed(&al, &Nfa::epsilon(4)).unwrap().to_nfa().equivalent(&st));

    let m = maxsync_prefix_closed(&al, &re(&al, "(a c)*")).unwrap();
    assert!(m.accepts(&al.word("a c b d").unwrap()));
    assert!(!m.accepts(&al.word("a a c c").unwrap()));

    for (a, u) in [(al.clone(), re(&al, "(a c)*")), (pal.clone(), id)] {
        let t = u.concat(&inputs_then_outputs(&a));
        let m = maxsync_prefix_closed(&a, &u).unwrap();
        for x in all_words(&a, 6) {
            let want = t.accepts(&x) && oracle::is_maximal(&a, &t, &x);
            assert_eq!(m.accepts(&x), want, "{}", a.show(&x));
        }
    }
}

#[test]
fn prefix_recognizability() {
    let al = TaggedAlphabet::new(&["a", "b"], &["a", "b"]);
    let id = identity_prefix(&al).unwrap();
    let outs = re(&al, "o:a + o:b").star();
    let prefix = from_sync_fsl(&al, &id.concat(&outs)).unwrap();
    let v = is_prefix_recognizable(&prefix).unwrap();
    assert_eq!(v.answer, Answer::Yes);
    assert!(verify_witness(&al, &prefix.to_sync(), &id.concat(&inputs_then_outputs(&al)), &v.witness.unwrap()).unwrap());

    let eq = AutomaticRelation::equal_length(&al);
    assert_eq!(is_prefix_recognizable(&eq).unwrap().answer, Answer::No);
    assert_eq!(is_prefix_recognizable(&AutomaticRelation::empty(&al)).unwrap().answer, Answer::Yes);
    assert_eq!(
        is_prefix_recognizable(&AutomaticRelation::full(&acbd())).unwrap_err(),
        Error::AlphabetShapeMismatch
    );
}

#[test]
fn router_examples() {
    let al = ab();
    let t = ex_t(&al);
    let v = decide_definability(&al, &t, &t).unwrap();
    assert_eq!(v.answer, Answer::Yes);
    assert!(verify_witness(&al, &t, &t, &v.witness.unwrap()).unwrap());

    let st = inputs_then_outputs(&al);
    let v = decide_definability(&al, &alternating(&al), &st).unwrap();
    assert_eq!(v.answer, Answer::No);

    let v = decide_definability(&al, &ex_s(&al), &t).unwrap();
    assert_eq!(v.answer, Answer::Unknown, "{v:?}");
    assert_eq!(v.method, "sufficient-checks");
    for name in ["allsync", "minsync", "maxsync"] {
        assert!(v.checks.contains(&format!("{name}(S, T): not regular")), "{:?}", v.checks);
    }

    let v = decide_definability(&al, &re(&al, "(a^+ b^+)*"), &t).unwrap();
    assert_eq!(v.answer, Answer::Unknown);
    assert!(v.reason.contains("undecidable"));
}

#[test]
fn router_witnesses_verify() {
    let mut r = rng(13);
    let al = ab();
    let mut yes = 0;
    for i in 0..40 {
        let t = random_of_class(&mut r, &al, SyncClass::FSL, 4);
        let s = match i % 4 {
            0 => t.clone(),
            1 => random_of_class(&mut r, &al, SyncClass::FS, 3),
            _ => t.intersect(&random_nfa(&mut r, al.size(), 3, 0.4)),
        };
        let v = decide_definability(&al, &s, &t).unwrap();
        if v.answer == Answer::Yes {
            yes += 1;
            assert!(verify_witness(&al, &s, &t, v.witness.as_ref().unwrap()).unwrap(), "{}", v.method);
        }
        if i % 4 == 0 {
            assert_eq!(v.answer, Answer::Yes);
        }
    }
    assert!(yes >= 10);
}

#[test]
fn separability_instances() {
    let al = acbd();
    let empty = AutomaticRelation::empty(&al);
    let (s, t) = separability_to_definability(&empty, &empty).unwrap();
    assert!(from_sync_fsl(&al, &s).unwrap().equivalent(&AutomaticRelation::full(&al)).unwrap());
    assert!(t.includes(&inputs_then_outputs(&al)));

    let one = from_sync_fsl(&al, &re(&al, "a c")).unwrap();
    let (_, t) = separability_to_definability(&one, &empty).unwrap();
    let rt = from_sync_fsl(&al, &t).unwrap();
    assert!(rt.equivalent(&AutomaticRelation::full(&al)).unwrap());
    assert_eq!(separability_to_definability(&one, &one), Err(Error::NotDisjoint));

    let al = ab();
    let r1 = from_sync_fsl(&al, &alternating(&al)).unwrap();
    let r2 = r1.complement();
    let (s, t) = separability_to_definability(&r1, &r2).unwrap();
    let v = decide_definability(&al, &s, &t).unwrap();
    assert_ne!(v.answer, Answer::Yes);
}
