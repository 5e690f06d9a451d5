mod common;

use common::*;
use syncrel::autorel::*;
use syncrel::automata::{parse_regex, Nfa, PlainAlphabet};
use syncrel::syncword::{SyncClass, TaggedAlphabet};

fn r2_alpha() -> TaggedAlphabet {
    TaggedAlphabet::new(&["a", "b", "c"], &["d", "e"])
}

fn r2() -> AutomaticRelation {
    let al = r2_alpha();
    from_sync_fsl(&al, &re(&al, "d a* b a* (d+e)* + e a* c a* (d+e)*")).unwrap()
}

fn plain(names: &[&str], s: &str) -> Nfa {
    parse_regex(s, &PlainAlphabet::new(names)).unwrap()
}

#[test]
fn convolution_examples() {
    let al = TaggedAlphabet::new(&["a", "b"], &["c", "d"]);
    let t = pair_tracks(&al);
    let c = convolve(&al, &[0, 1], &[0]);
    assert_eq!(t.decode(c[0]), vec![Some(0), Some(0)]);
    assert_eq!(t.decode(c[1]), vec![Some(1), None]);
    assert!(convolve(&al, &[], &[]).is_empty());
    let c = convolve(&al, &[0], &[0, 1, 1]);
    let dec: Vec<_> = c.iter().map(|&l| t.decode(l)).collect();
    assert_eq!(dec, vec![vec![Some(0), Some(0)], vec![None, Some(1)], vec![None, Some(1)]]);
}

#[test]
fn definability_example_relations() {
    let al = ab();
    let s = from_sync_fsl(&al, &re(&al, "(ab)* + (ab)*(a a^+ + b b^+)")).unwrap();
    for (u, v) in all_pairs(&al, 9) {
        let d = u.len().abs_diff(v.len());
        assert_eq!(s.contains(&u, &v), d == 0 || d >= 2, "{u:?} {v:?}");
    }
    let m = from_sync_fsl(&al, &re(&al, "(aa)*(bb)* + a(aa)*b(bb)*")).unwrap();
    let u = from_sync_fsl(&al, &re(&al, "(ab)*(a a^+ + b b^+)")).unwrap();
    let mu = relation_ops(RelationOp::Intersection, &[&m, &u]).unwrap();
    for (x, y) in all_pairs(&al, 9) {
        let d = x.len().abs_diff(y.len());
        assert_eq!(mu.contains(&x, &y), d >= 2 && d % 2 == 0);
    }
    let t = from_sync_fsl(&al, &re(&al, "a*b* + (ab)*(a a^+ + b b^+)")).unwrap();
    assert!(relation_decide(RelationTest::Includes, &[&t, &s]).unwrap());
    assert!(!relation_decide(RelationTest::Includes, &[&s, &t]).unwrap());
}

#[test]
fn empty_and_full() {
    let al = ab();
    let e = from_sync_fsl(&al, &Nfa::empty(2)).unwrap();
    assert!(relation_decide(RelationTest::IsEmpty, &[&e]).unwrap());
    let full = AutomaticRelation::full(&al);
    assert!(full.complement().is_empty());
    let eq = AutomaticRelation::equal_length(&al);
    assert_eq!(relation_ops(RelationOp::Intersection, &[&eq, &full]).unwrap(), eq);
    assert!(eq.contains(&[0, 0], &[0, 0]));
    assert_eq!(e.section(&[0]).enumerate_up_to(4).len(), 0);
}

#[test]
fn domain_and_sections_of_r2() {
    let al = r2_alpha();
    let r = r2();
    let names = ["a", "b", "c"];
    assert!(r.domain().equivalent(&plain(&names, "a*ba* + a*ca*")));
    let sec = r.section(&[0, 1, 0]);
    assert!(sec.equivalent(&plain(&["d", "e"], "d(d+e)*")));
    assert!(AutomaticRelation::equal_length(&al).domain().equivalent(&Nfa::universal(3)));
}

#[test]
fn r2_is_recognizable() {
    let al = r2_alpha();
    let r = r2();
    let d = r.recognizable_decomposition().expect("recognizable");
    assert!(d.is_disjoint());
    assert_eq!(d.parts().len(), 2);
    let back = rec_to_automatic(&al, &d).unwrap();
    assert!(back.equivalent(&r).unwrap());
    for (u, v) in all_pairs(&al, 5) {
        assert_eq!(d.contains(&u, &v), r.contains(&u, &v));
    }
}

#[test]
fn equal_length_is_not_recognizable() {
    let al = ab();
    assert!(!AutomaticRelation::equal_length(&al).is_recognizable());
    let full = AutomaticRelation::full(&al);
    let d = full.recognizable_decomposition().unwrap();
    assert_eq!(d.parts().len(), 1);
}

#[test]
fn rec_to_automatic_small() {
    let al = TaggedAlphabet::new(&["a"], &["c"]);
    let one = |s: &str| plain(&["x"], s).minimal();
    let d = RecognizableDecomposition::new(1, 1, vec![(one("x"), one("x"))]).unwrap();
    let r = rec_to_automatic(&al, &d).unwrap();
    assert_eq!(r.pairs_up_to(6), vec![(vec![0], vec![0])]);
    let d = RecognizableDecomposition::new(1, 1, vec![(one("x*"), one("x*"))]).unwrap();
    assert_eq!(rec_to_automatic(&al, &d).unwrap(), AutomaticRelation::full(&al));
}

#[test]
fn not_finite_shiftlag_is_rejected() {
    let al = ab();
    let s = re(&al, "(a^+ b^+)*");
    assert_eq!(from_sync_fsl(&al, &s), Err(syncrel::Error::NotFiniteShiftlag));
}

#[test]
fn membership_agrees_with_synchronizations() {
    let mut r = rng(7);
    for al in [ab(), TaggedAlphabet::new(&["a", "b"], &["c"])] {
        for class in [SyncClass::FS, SyncClass::FSL] {
            for _ in 0..12 {
                let s = random_of_class(&mut r, &al, class, 4);
                let rel = from_sync_fsl(&al, &s).unwrap();
                for (u, v) in all_pairs(&al, 6) {
                    assert_eq!(rel.contains(&u, &v), in_relation(&al, &s, &u, &v), "{u:?} {v:?}");
                }
            }
        }
    }
}

#[test]
fn finite_shift_sources_are_recognizable() {
    let mut r = rng(11);
    let al = ab();
    for _ in 0..15 {
        let s = random_of_class(&mut r, &al, SyncClass::FS, 4);
        let rel = from_sync_fsl(&al, &s).unwrap();
        let d = rel.recognizable_decomposition().expect("finite shift implies recognizable");
        assert!(d.is_disjoint());
        assert!(rec_to_automatic(&al, &d).unwrap().equivalent(&rel).unwrap());
        let cc = rel.complement().complement();
        assert!(cc.is_recognizable());
    }
}

#[test]
fn recognizability_matches_a_section_count_oracle() {
    // A relation is recognizable iff it has finitely many distinct sections;
    // on samples, a recognizable verdict must bound the observed sections.
    let mut r = rng(3);
    let al = ab();
    for _ in 0..15 {
        let s = random_of_class(&mut r, &al, SyncClass::FSL, 4);
        let rel = from_sync_fsl(&al, &s).unwrap();
        let sections: std::collections::BTreeSet<Vec<Vec<usize>>> = (0..=7)
            .map(|n| {
                let u = vec![0; n];
                (0..=9).map(|m| vec![0; m]).filter(|v| rel.contains(&u, v)).collect()
            })
            .collect();
        match rel.recognizable_decomposition() {
            Some(d) => {
                assert!(sections.len() <= d.parts().len() + 1);
                assert!(rec_to_automatic(&al, &d).unwrap().equivalent(&rel).unwrap());
            }
            None => assert!(!rel.complement().is_recognizable()),
        }
    }
}
