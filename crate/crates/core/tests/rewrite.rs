use dotlab::fixtures::{self, rect_ccw, rect_cw};
use dotlab::rewrite::*;
use dotlab::diagram::Host;
use dotlab::{extract, DottedGraph, LatticePolytope};
use proptest::prelude::*;

fn graph(p: &LatticePolytope) -> DottedGraph {
    extract(p).0
}

fn boxes(raw: Vec<Vec<dotlab::Corner>>) -> DottedGraph {
    graph(&LatticePolytope::validate(raw).unwrap())
}

/// A dotless circle can only be produced by surgery, so build it directly.
fn bare_circle(sign: i8) -> DottedGraph {
    DottedGraph::new(vec![], vec![], vec![(0, sign, Host::Plane)], vec![]).unwrap()
}

#[test]
fn single_circle_is_one_type_ii() {
    for (p, eps) in [(fixtures::rectangle(), 1), (fixtures::rectangle_cw(), -1)] {
        let g = graph(&p);
        let moves = applicable_moves(&g, MoveOptions::all());
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].kind, MoveKind::II);
        assert_eq!(moves[0].epsilon, eps);
        assert_eq!(moves[0].i, 2);
        assert!(apply(&g, &moves[0]).unwrap().is_empty());
    }
}

#[test]
fn dotless_circle_is_type_i() {
    let g = bare_circle(-1);
    let moves = applicable_moves(&g, MoveOptions::all());
    assert_eq!(moves.len(), 1);
    assert_eq!((moves[0].kind, moves[0].epsilon, moves[0].i), (MoveKind::I, -1, 0));
}

#[test]
fn empty_diagram_has_no_moves() {
    let g = DottedGraph::empty();
    assert!(applicable_moves(&g, MoveOptions::all()).is_empty());
    assert!(!is_reducible(&g));
    let cert = reduce_to_empty(&g, Budget::default()).unwrap().unwrap();
    assert!(cert.is_empty());
}

#[test]
fn same_orientation_lens_deletes_either_circle() {
    let g = graph(&fixtures::thm1_case1());
    let moves = applicable_moves(&g, MoveOptions::all());
    assert_eq!(moves.len(), 2);
    for m in &moves {
        assert_eq!(m.kind, MoveKind::II);
        // the lens has label 2: the other circle overlaps the disk
        assert_eq!(m.overlapping.len(), 1);
        let h = apply(&g, m).unwrap();
        assert_eq!((h.crossings().len(), h.free_circles().len(), h.total_dots()), (0, 1, 2));
    }
    // without overlapping regions the lens blocks both
    assert!(applicable_moves(&g, MoveOptions { good_only: false, overlap_mode: false }).is_empty());
    let cert = reduce_to_empty(&g, Budget::default()).unwrap().unwrap();
    assert_eq!(cert.kinds(), vec![MoveKind::II, MoveKind::II]);
}

#[test]
fn opposite_orientation_lens_trace() {
    let g = graph(&fixtures::thm1_case2());
    let moves = applicable_moves(&g, MoveOptions::good());
    assert_eq!(moves.len(), 2);
    assert!(moves.iter().all(|m| m.kind == MoveKind::IV && m.adjacent && m.good && m.rule == "IVa"));
    assert!(moves.iter().all(|m| m.epsilon == 1 && m.strands == vec![1, 3]));
    let cert = reduce_to_empty(&g, Budget::default()).unwrap().unwrap();
    assert_eq!(cert.kinds(), vec![MoveKind::IV, MoveKind::III, MoveKind::III, MoveKind::II]);
    assert!(cert.replay(&g).unwrap().is_empty());
}

#[test]
fn figure_eight_lobes() {
    let g = graph(&fixtures::figure_eight());
    let moves = applicable_moves(&g, MoveOptions::all());
    let got: Vec<(MoveKind, i8, u32)> = moves.iter().map(|m| (m.kind, m.epsilon, m.i)).collect();
    assert_eq!(got, vec![(MoveKind::III, 1, 1), (MoveKind::III, -1, 2)]);
    let after: Vec<(u32, i8)> = moves
        .iter()
        .map(|m| {
            let h = apply(&g, m).unwrap();
            assert!(h.crossings().is_empty());
            (h.free_circles()[0].dots, h.free_circles()[0].sign)
        })
        .collect();
    assert_eq!(after, vec![(2, -1), (1, 1)]);
    let cert = reduce_to_empty(&g, Budget::default()).unwrap().unwrap();
    assert_eq!(cert.kinds(), vec![MoveKind::III, MoveKind::II]);
}

#[test]
fn venn_and_chain_reduce() {
    let cert = reduce_to_empty(&graph(&fixtures::venn()), Budget::default()).unwrap().unwrap();
    assert_eq!(cert.kinds(), vec![MoveKind::II; 3]);
    let cert = reduce_to_empty(&graph(&fixtures::chain3()), Budget::default()).unwrap().unwrap();
    assert_eq!(cert.len(), 7);
}

/// Two arcs meet at a crossing of a positive region, but one of them only gets
/// a dot by sliding past a crossing with a circle that overlaps the region.
fn slide_fixture() -> DottedGraph {
    boxes(vec![rect_ccw(0, 0, 2, 2), rect_cw(0, 3, 2, 4), rect_ccw(1, 1, 3, 5)])
}

#[test]
fn overlapping_region_iva_golden() {
    let g = slide_fixture();
    let moves = applicable_moves(&g, MoveOptions::all());
    let slid: Vec<&MoveSite> = moves.iter().filter(|m| !m.slides.is_empty()).collect();
    assert_eq!(slid.len(), 1);
    let m = slid[0];
    assert_eq!(m.rule, "IVa");
    assert_eq!(m.strands, vec![2, 6]);
    assert_eq!(m.slides, vec![Slide { from: 7, to: 6, through: vec![0] }]);
    assert!(m.good && m.adjacent);
    let h = apply(&g, m).unwrap();
    assert_eq!((h.crossings().len(), h.n_circles(), h.total_dots()), (4, 2, 4));
    assert!(follow_up_loop(&h, m).is_some());
    // sliding needs overlapping regions
    let plain = applicable_moves(&g, MoveOptions { good_only: false, overlap_mode: false });
    assert!(plain.iter().all(|m| m.slides.is_empty()));
    let cert = reduce_to_empty(&g, Budget::default()).unwrap().unwrap();
    assert_eq!(cert.kinds(), vec![MoveKind::II, MoveKind::IV, MoveKind::III, MoveKind::III, MoveKind::II]);
}

#[test]
fn split_region_has_two_variants() {
    let g = boxes(vec![rect_ccw(0, 0, 2, 2), rect_ccw(3, 2, 4, 3), rect_cw(1, 1, 5, 4)]);
    let moves = applicable_moves(&g, MoveOptions::all());
    let v: Vec<&MoveSite> = moves.iter().filter(|m| m.strands == vec![0, 3] && m.cuts == Some((1, 1))).collect();
    assert_eq!(v.len(), 2);
    let a = apply(&g, v[0]).unwrap().canonical_code();
    let b = apply(&g, v[1]).unwrap().canonical_code();
    assert_ne!(a, b);
    // the free circle sits in the split region and follows one side or the other
    assert_eq!(moves.iter().filter(|m| !m.adjacent).count(), 6);
    assert!(matches!(reduce_to_empty(&g, Budget::default()), Ok(None)));
    assert_eq!(good_reduce(&g, Budget::default()).reduced.len(), 2);
}

#[test]
fn nested_opposite_circles_only_admit_non_good_iv() {
    let g = boxes(vec![rect_ccw(0, 0, 1, 1), rect_cw(1, 3, 2, 4), rect_ccw(0, 2, 4, 5)]);
    let moves = applicable_moves(&g, MoveOptions::all());
    assert_eq!(moves.iter().filter(|m| m.kind == MoveKind::IV).count(), 4);
    assert!(moves.iter().filter(|m| m.kind == MoveKind::IV).all(|m| !m.good && !is_good_site(&g, m)));
    let r = good_reduce(&g, Budget::default());
    assert!(!r.exhausted);
    let codes: Vec<String> = r.reduced.iter().map(|(h, _)| h.canonical_code()).collect();
    assert_eq!(codes, vec!["GF2+(F2-())".to_string()]);
}

#[test]
fn adjacent_but_not_good() {
    // two crossing boxes inside a larger one of opposite orientation
    let g = boxes(vec![rect_ccw(0, 0, 5, 5), rect_cw(1, 2, 4, 3), rect_cw(2, 1, 3, 4)]);
    let moves = applicable_moves(&g, MoveOptions::all());
    let bad: Vec<&MoveSite> = moves.iter().filter(|m| m.adjacent && !m.good).collect();
    assert_eq!(bad.iter().map(|m| m.strands.clone()).collect::<Vec<_>>(), vec![vec![1, 5], vec![1, 7], vec![3, 5], vec![3, 7]]);
    let good = applicable_moves(&g, MoveOptions::good());
    for m in bad {
        assert!(!is_good_site(&g, m));
        assert!(!good.iter().any(|x| x == m));
    }
    assert_eq!(reduce_to_empty(&g, Budget::default()), Ok(None));
}

/// The IV merges two circles into one that also winds around the created
/// loop; the loop disk still carries ε.
#[test]
fn loop_wound_by_its_own_circle_is_deleted() {
    let g = boxes(vec![rect_cw(0, 0, 3, 3), rect_ccw(1, 2, 4, 4), rect_ccw(2, 1, 5, 5)]);
    let site = applicable_moves(&g, MoveOptions::all()).into_iter().find(|m| m.strands == vec![7, 11]).unwrap();
    assert!(site.adjacent && site.good && is_good_site(&g, &site));
    let h = apply(&g, &site).unwrap();
    assert!(applicable_moves(&h, MoveOptions::good()).iter().any(|m| m.kind == MoveKind::III));
    let cert = reduce_to_empty(&g, Budget::default()).unwrap().unwrap();
    use MoveKind::*;
    assert_eq!(cert.kinds(), vec![IV, III, III, IV, III, III, II]);
    assert!(cert.replay(&g).unwrap().is_empty());
}

#[test]
fn stale_site_is_rejected() {
    let g = graph(&fixtures::thm1_case2());
    let m = applicable_moves(&g, MoveOptions::all()).remove(0);
    let other = graph(&fixtures::thm1_case1());
    assert_eq!(apply(&other, &m), Err(MoveError::SiteStale));
    let mut moved = m.clone();
    moved.cuts = Some((3, 1));
    assert_eq!(apply(&g, &moved), Err(MoveError::SiteStale));
}

#[test]
fn certificate_json_round_trip() {
    let g = graph(&fixtures::thm1_case2());
    let cert = reduce_to_empty(&g, Budget::default()).unwrap().unwrap();
    let back = ReductionCertificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(back, cert);
    assert!(back.replay(&g).unwrap().is_empty());
    let mut bad = cert.clone();
    bad.steps[1].code = "G".into();
    assert_eq!(bad.replay(&g), Err(SearchError::CodeMismatch { step: 1 }));
    assert_eq!(cert.replay(&graph(&fixtures::venn())), Err(SearchError::StartMismatch));
}

#[test]
fn tiny_budget_is_reported() {
    let g = graph(&fixtures::chain3());
    let r = reduce_to_empty(&g, Budget { max_depth: 2, max_nodes: 100 });
    assert!(matches!(r, Err(SearchError::BudgetExceeded { .. })));
    assert!(good_reduce(&g, Budget { max_depth: 32, max_nodes: 3 }).exhausted);
}

fn small_box() -> impl Strategy<Value = Vec<dotlab::Corner>> {
    (0i64..5, 0i64..5, 1i64..4, 1i64..4, any::<bool>()).prop_map(|(x, y, w, h, ccw)| {
        if ccw {
            rect_ccw(x, y, x + w, y + h)
        } else {
            rect_cw(x, y, x + w, y + h)
        }
    })
}

fn small_diagram() -> impl Strategy<Value = DottedGraph> {
    prop::collection::vec(small_box(), 1..4).prop_filter_map("generic", |raw| LatticePolytope::validate(raw).ok().map(|p| graph(&p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moves_keep_diagrams_valid(g in small_diagram()) {
        for m in applicable_moves(&g, MoveOptions::all()) {
            let h = apply(&g, &m).unwrap();
            prop_assert!(h.validate().is_ok());
            prop_assert!(h.labels().is_ok());
            let lost = match m.kind {
                MoveKind::IV => 2,
                _ => m.i as u64,
            };
            prop_assert_eq!(h.total_dots() + lost, g.total_dots());
            prop_assert_eq!(m.good, is_good_site(&g, &m));
        }
    }

    #[test]
    fn moves_commute_with_relabeling(g in small_diagram()) {
        let c = g.canonicalize();
        let mut a: Vec<String> = applicable_moves(&g, MoveOptions::all()).iter().map(|m| apply(&g, m).unwrap().canonical_code()).collect();
        let mut b: Vec<String> = applicable_moves(&c, MoveOptions::all()).iter().map(|m| apply(&c, m).unwrap().canonical_code()).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn certificates_replay(g in small_diagram()) {
        if let Ok(Some(cert)) = reduce_to_empty(&g, Budget { max_depth: 32, max_nodes: 2_000 }) {
            prop_assert!(cert.replay(&g).unwrap().is_empty());
        }
    }
}

#[test]
fn one_dot_cannot_slide_to_both_strands() {
    let p = dotlab::io::poly::parse("D 0 0 X 1 0 D 1 1 X 0 1\nD 0 4 X 4 4 D 4 2 X 0 2\nD 2 3 X 3 3 D 3 0 X 4 0 D 4 1 X 2 1\n").unwrap();
    let g = graph(&p);
    let moves = applicable_moves(&g, MoveOptions::all());
    for m in &moves {
        let from: Vec<usize> = m.slides.iter().map(|s| s.from).collect();
        assert!(from.len() < 2 || from[0] != from[1] || g.strand_dots(from[0]) >= 2);
        apply(&g, m).unwrap().validate().unwrap();
    }
}
