use dotlab::diagram::DottedGraph;
use dotlab::io::{dg, poly};
use dotlab::{extract, fixtures, LatticePolytope};
use proptest::prelude::*;

fn all_fixtures() -> Vec<LatticePolytope> {
    vec![
        fixtures::rectangle(),
        fixtures::rectangle_cw(),
        fixtures::thm1_case1(),
        fixtures::thm1_case2(),
        fixtures::venn(),
        fixtures::chain3(),
        fixtures::figure_eight(),
        fixtures::nested(),
        fixtures::l_hexagon(),
        fixtures::plus(),
    ]
}

#[test]
fn poly_round_trip() {
    for p in all_fixtures() {
        let text = poly::serialize(&p);
        let q = poly::parse(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(poly::serialize(&q), text);
    }
}

#[test]
fn poly_comments_and_blank_lines() {
    let text = "# a box\n\nD 0 0  X 4 0 D 4 3 X 0 3 # trailing\n";
    assert_eq!(poly::parse(text).unwrap(), fixtures::rectangle());
}

#[test]
fn poly_errors_carry_positions() {
    let err = poly::parse("D 0 0 D 4 0 X 4 3 X 0 3\n").unwrap_err();
    match err {
        poly::PolyFileError::Invalid { line, col, err } => {
            assert_eq!(line, 1);
            assert!(col >= 1);
            assert!(matches!(err, dotlab::PolytopeError::Alternation(_)));
        }
        e => panic!("unexpected {e:?}"),
    }
    assert!(matches!(poly::parse("D 0 zero X 4 0\n"), Err(poly::PolyFileError::Syntax { line: 1, col: 5, .. })));
    assert!(matches!(poly::parse("Q 0 0 X 4 0\n"), Err(poly::PolyFileError::Syntax { .. })));
}

#[test]
fn dg_round_trip() {
    for p in all_fixtures() {
        let g = extract(&p).0;
        let text = dg::serialize(&g);
        let h = dg::parse(&text).unwrap();
        assert_eq!(g, h, "{text}");
        assert_eq!(dg::serialize(&h), text);
        let c = g.canonicalize();
        assert_eq!(dg::parse(&dg::serialize(&c)).unwrap(), c);
    }
}

#[test]
fn dg_empty() {
    assert_eq!(dg::parse("").unwrap(), DottedGraph::empty());
    assert_eq!(dg::serialize(&DottedGraph::empty()), "");
}

#[test]
fn dg_rejects_broken_rotation() {
    // both strands of the crossing point the same way through slot 0/2
    let text = "crossing 0: 0:head 1:tail 0:head 1:head\narc 0: dots 0 circle 0\narc 1: dots 0 circle 1\nouter a0.left\ncontain a0 in plane\n";
    assert!(dg::parse(text).is_err());
    assert!(matches!(dg::parse("arc 0: dots x circle 0\n"), Err(dg::DgError::Syntax { line: 1, .. })));
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn relabel_strategy(g: DottedGraph) -> impl Strategy<Value = DottedGraph> {
    let (na, nc, nf) = (g.arcs().len(), g.crossings().len(), g.free_circles().len());
    (perm_strategy(na), perm_strategy(nc), perm_strategy(nf), proptest::collection::vec(0usize..4, nc))
        .prop_map(move |(a, c, f, s)| g.relabel(&a, &c, &f, &s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn code_invariant_under_relabeling((g, h) in (0usize..10).prop_flat_map(|i| {
        let g = extract(&all_fixtures()[i]).0;
        (Just(g.clone()), relabel_strategy(g))
    })) {
        h.validate().unwrap();
        prop_assert_eq!(h.canonical_code(), g.canonical_code());
        prop_assert_eq!(h.canonicalize(), g.canonicalize());
    }

    #[test]
    fn code_invariant_under_translation(i in 0usize..10, dx in -20i64..20, dy in -20i64..20) {
        let p = &all_fixtures()[i];
        prop_assert_eq!(extract(p).0.canonical_code(), extract(&p.translate(dx, dy)).0.canonical_code());
    }
}

#[test]
fn distinct_fixtures_have_distinct_codes() {
    let mut codes: Vec<String> = all_fixtures().iter().map(|p| extract(p).0.canonical_code()).collect();
    codes.sort();
    codes.dedup();
    assert_eq!(codes.len(), all_fixtures().len());
}
