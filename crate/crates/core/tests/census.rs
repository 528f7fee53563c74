use dotlab::census::*;
use dotlab::diagram::Host;
use dotlab::fixtures::{self, rect_ccw, rect_cw};
use dotlab::{extract, DottedGraph, LatticePolytope, RealizeBounds};
use proptest::prelude::*;

fn graph(raw: Vec<Vec<dotlab::Corner>>) -> DottedGraph {
    extract(&LatticePolytope::validate(raw).unwrap()).0
}

fn rectangles(w: i64, h: i64) -> usize {
    enumerate_polytopes(&EnumSpec::new(w, h, 1, 4)).unwrap().len()
}

#[test]
fn three_by_three_has_eighteen_rectangles() {
    assert_eq!(rectangles(3, 3), 18);
}

/// Corner coordinates run over `0..=W`, so a 2x2 window holds 4 rectangle shapes.
#[test]
fn two_by_two_has_eight_rectangles() {
    assert_eq!(rectangles(2, 2), 8);
}

#[test]
fn rectangle_count_is_twice_the_dimension_pairs() {
    for (w, h) in [(2, 3), (4, 2), (5, 4)] {
        assert_eq!(rectangles(w, h) as i64, 2 * w * h);
    }
}

#[test]
fn stretch_classes_keep_one_rectangle_per_orientation() {
    let mut s = EnumSpec::new(4, 4, 1, 4);
    s.classes = Classes::Stretch;
    assert_eq!(enumerate_polytopes(&s).unwrap().len(), 2);
}

#[test]
fn bad_specs_are_rejected() {
    assert!(matches!(enumerate_polytopes(&EnumSpec::new(1, 3, 1, 4)), Err(SpecError::Window(1, 3))));
    assert!(matches!(enumerate_polytopes(&EnumSpec::new(3, 3, 1, 3)), Err(SpecError::Corners(3))));
    assert!(matches!(enumerate_polytopes(&EnumSpec::new(3, 3, 0, 4)), Err(SpecError::Components(1, 0))));
}

#[test]
fn enumeration_is_deterministic_and_duplicate_free() {
    let s = EnumSpec::new(3, 3, 2, 6);
    let a = enumerate_polytopes(&s).unwrap();
    assert_eq!(a, enumerate_polytopes(&s).unwrap());
    let mut keys: Vec<_> = a.iter().map(dotlab::io::poly::serialize).collect();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), a.len());
    assert!(a.iter().all(|p| p.bbox().is_some_and(|(lo, _)| lo.x == 0 && lo.y == 0)));
}

#[test]
fn shapes_of_the_fixtures() {
    let kinds = |p: &LatticePolytope| detect_shapes(&extract(p).0).iter().map(|w| w.kind).collect::<Vec<_>>();
    assert_eq!(kinds(&fixtures::thm1_case2()), vec![ShapeKind::Thm1]);
    assert_eq!(kinds(&fixtures::thm1_case1()), vec![ShapeKind::Thm1]);
    assert_eq!(kinds(&fixtures::chain3()), vec![ShapeKind::Thm2Chain(3)]);
    assert_eq!(kinds(&fixtures::venn()), vec![ShapeKind::Thm3]);
    assert!(kinds(&fixtures::nested()).is_empty());
    assert!(kinds(&fixtures::rectangle()).is_empty());
}

#[test]
fn ring_of_four_is_detected() {
    let g = graph(vec![rect_ccw(0, 0, 3, 8), rect_cw(2, 6, 9, 7), rect_ccw(8, 0, 11, 8), rect_cw(2, 1, 9, 2)]);
    let ws = detect_shapes(&g);
    assert_eq!(ws.len(), 1);
    assert_eq!(ws[0].kind, ShapeKind::Thm2Ring(4));
    assert_eq!(ws[0].bigons.len(), 4);
    assert_eq!(bigon_label_sequence(&g, &ws[0]), vec![0, 0, 0, 0]);
}

#[test]
fn label_sequences_are_sums_of_neighbouring_labels() {
    let alt = extract(&fixtures::chain3()).0;
    let w = &detect_shapes(&alt)[0];
    assert_eq!(w.epsilon, vec![1, -1, 1]);
    assert_eq!(bigon_label_sequence(&alt, w), vec![0, 0]);

    let g = graph(vec![rect_cw(0, 0, 4, 3), rect_ccw(3, 1, 8, 2), rect_ccw(7, 0, 11, 3), rect_cw(10, 1, 14, 2)]);
    let w = &detect_shapes(&g)[0];
    assert_eq!(w.epsilon, vec![-1, 1, 1, -1]);
    assert_eq!(bigon_label_sequence(&g, w), vec![0, 2, 0]);
    for (i, total) in bigon_label_sequence(&g, w).into_iter().enumerate() {
        assert_eq!(total, (w.epsilon[i] + w.epsilon[i + 1]) as i32);
    }
}

#[test]
fn dot_letters() {
    // the two middle boxes meet corner to corner, so their lens carries only X marks
    let g = graph(vec![rect_cw(1, 0, 4, 2), rect_ccw(3, 1, 7, 4), rect_ccw(6, 0, 10, 2), rect_cw(9, 1, 12, 3)]);
    let w = &detect_shapes(&g)[0];
    assert_eq!(w.kind, ShapeKind::Thm2Chain(4));
    assert_eq!(w.epsilon, vec![-1, 1, 1, -1]);
    assert_eq!(letters(&dot_existence_sequence(&g, w)), "ler");
    assert_eq!(bigon_label_sequence(&g, w), vec![0, 2, 0]);

    let g = extract(&fixtures::chain3()).0;
    assert_eq!(letters(&dot_existence_sequence(&g, &detect_shapes(&g)[0])), "lr");
}

#[test]
fn lemma_scope_of_hand_made_diagrams() {
    let one_dot = DottedGraph::new(vec![], vec![], vec![(1, 1, Host::Plane)], vec![]).unwrap();
    assert!(matches!(check_diagram_lemmas(&one_dot, RealizeBounds::new(6, 6, 8)), LemmaVerdict::OutOfScope(_)));
    let rect = extract(&fixtures::rectangle()).0;
    match check_diagram_lemmas(&rect, RealizeBounds::new(4, 4, 8)) {
        LemmaVerdict::Checked { checked, counterexamples } => {
            assert_eq!(checked.get("lemma-crossing-including"), Some(&1));
            assert!(counterexamples.is_empty());
        }
        v => panic!("{v:?}"),
    }
}

#[test]
fn small_lemma_census_is_clean_and_reproducible() {
    let s = EnumSpec::new(4, 4, 2, 6);
    let a = verify_lemmas(&s, None).unwrap();
    assert!(a.pass && a.complete(), "{}", a.to_json());
    assert!(a.checked["label-oracle"] > 0 && a.checked["lemma-bigon"] > 0);
    assert_eq!(a.to_json(), verify_lemmas(&s, None).unwrap().to_json());
}

#[test]
fn corner_audit_is_clean() {
    let r = audit_corners(&EnumSpec::new(4, 4, 1, 8)).unwrap();
    assert!(r.pass && r.checked["corner-audit"] > 0);
}

#[test]
fn small_theorem_censuses_pass() {
    let budget = dotlab::rewrite::Budget::default();
    for (th, w, h) in [(Theorem::Thm1, 5, 3), (Theorem::Chain(3), 8, 3), (Theorem::Thm3, 5, 5)] {
        let mut s = th.spec(w, h, 6);
        s.classes = Classes::Stretch;
        let r = verify_theorem(th, &s, budget, None).unwrap();
        assert!(r.pass && r.complete() && r.instances > 0, "{th}: {}", r.to_json());
        assert!(r.records.iter().all(|x| x.reducible));
    }
}

#[test]
fn theorem_names_round_trip() {
    for th in [Theorem::Thm1, Theorem::Chain(3), Theorem::Chain(4), Theorem::Ring(3), Theorem::Thm3] {
        assert_eq!(Theorem::parse(&th.to_string()), Some(th));
    }
    assert_eq!(Theorem::parse("ring2"), None);
    assert_eq!(Theorem::parse("thm2"), None);
}

#[test]
fn jsonl_has_one_record_per_diagram() {
    let (cov, recs) = census_records(&EnumSpec::new(3, 3, 2, 4), None).unwrap();
    assert!(cov.complete);
    let mut codes: Vec<_> = recs.iter().map(|r| r.code.clone()).collect();
    codes.sort();
    codes.dedup();
    assert_eq!(codes.len(), recs.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn two_circle_chain_is_thm1(a in (0i64..4, 0i64..4, 1i64..4, 1i64..4, any::<bool>()), b in (0i64..4, 0i64..4, 1i64..4, 1i64..4, any::<bool>())) {
        let boxed = |(x, y, w, h, ccw): (i64, i64, i64, i64, bool)| {
            let (x, y) = (2 * x, 2 * y);
            if ccw { rect_ccw(x, y, x + 2 * w, y + 2 * h) } else { rect_cw(x, y, x + 2 * w, y + 2 * h) }
        };
        let (mut bb, aa) = (boxed(b), boxed(a));
        for c in &mut bb {
            c.point.x += 1;
            c.point.y += 1;
        }
        if let Ok(p) = LatticePolytope::validate(vec![aa, bb]) {
            let g = extract(&p).0;
            let thm1 = detect_shapes(&g).iter().any(|w| w.kind == ShapeKind::Thm1);
            prop_assert_eq!(chain_witness(&g).is_some(), thm1);
        }
    }
}
