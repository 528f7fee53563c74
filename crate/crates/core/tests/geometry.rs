use dotlab::fixtures;
use dotlab::polytope::{corner_angle_audit, Corner, PolytopeComponent, PolytopeError};
use dotlab::{GridPoint, LatticePolytope, Probe};
use proptest::prelude::*;

#[test]
fn rectangle_is_valid() {
    let p = fixtures::rectangle();
    assert_eq!(p.components().len(), 1);
    assert_eq!(p.components()[0].len(), 4);
    assert!(p.crossings().is_empty());
}

#[test]
fn swapped_marks_fail_axis_rule() {
    let raw = vec![vec![Corner::x(0, 0), Corner::dot(4, 0), Corner::x(4, 3), Corner::dot(0, 3)]];
    assert!(matches!(LatticePolytope::validate(raw), Err(PolytopeError::Axis(..))));
}

#[test]
fn non_alternating_marks() {
    let raw = vec![vec![Corner::dot(0, 0), Corner::dot(4, 0), Corner::x(4, 3), Corner::x(0, 3)]];
    assert!(matches!(LatticePolytope::validate(raw), Err(PolytopeError::Alternation(..))));
}

#[test]
fn odd_or_short_components_are_degenerate() {
    let raw = vec![vec![Corner::dot(0, 0), Corner::x(4, 0)]];
    assert!(matches!(LatticePolytope::validate(raw), Err(PolytopeError::Degenerate(..))));
    let raw = vec![vec![Corner::dot(0, 0), Corner::x(0, 0), Corner::dot(0, 3), Corner::x(0, 3)]];
    assert!(LatticePolytope::validate(raw).is_err());
}

#[test]
fn shared_edge_is_not_generic() {
    let raw = vec![fixtures::rect_ccw(0, 0, 4, 3), fixtures::rect_ccw(0, -2, 4, 0)];
    assert!(matches!(LatticePolytope::validate(raw), Err(PolytopeError::NonGeneric(..))));
}

#[test]
fn corner_on_segment_is_not_generic() {
    let raw = vec![fixtures::rect_ccw(0, 0, 4, 3), fixtures::rect_ccw(4, 1, 6, 2)];
    assert!(matches!(LatticePolytope::validate(raw), Err(PolytopeError::NonGeneric(..))));
}

#[test]
fn lens_crossings() {
    let xs = fixtures::thm1_case2().crossings();
    let pts: Vec<GridPoint> = xs.iter().map(|c| c.point).collect();
    assert_eq!(pts, vec![GridPoint::new(4, 1), GridPoint::new(4, 2)]);
}

#[test]
fn venn_has_six_crossings() {
    assert_eq!(fixtures::venn().crossings().len(), 6);
}

#[test]
fn figure_eight_self_crossing() {
    let xs = fixtures::figure_eight().crossings();
    assert_eq!(xs.len(), 1);
    assert_eq!(xs[0].point, GridPoint::new(2, 1));
}

#[test]
fn winding_examples() {
    let r = fixtures::rectangle();
    assert_eq!(r.winding_number(Probe::cell(1, 1)).unwrap(), 1);
    assert_eq!(r.winding_number(Probe::cell(5, 1)).unwrap(), 0);
    assert_eq!(fixtures::rectangle_cw().winding_number(Probe::cell(1, 1)).unwrap(), -1);
    // lens cell between x=3..4, y=1..2
    assert_eq!(fixtures::lens_ccw().winding_number(Probe::cell(3, 1)).unwrap(), 2);
    assert_eq!(fixtures::thm1_case2().winding_number(Probe::cell(3, 1)).unwrap(), 0);
    assert!(matches!(r.winding_number(Probe { x2: 0, y2: 1 }), Err(PolytopeError::ProbeOnCurve(..))));
}

#[test]
fn corner_audit_examples() {
    let audit = |p: LatticePolytope| corner_angle_audit(&p.components()[0]).unwrap();
    assert_eq!(audit(fixtures::rectangle()), (4, 0));
    assert_eq!(audit(fixtures::rectangle_cw()), (4, 0));
    assert_eq!(audit(fixtures::l_hexagon()), (5, 1));
    assert_eq!(audit(fixtures::plus()), (8, 4));
    assert_eq!(corner_angle_audit(&fixtures::figure_eight().components()[0]), Err(PolytopeError::NotSimple));
}

#[test]
fn dots_equal_x_marks() {
    for p in [fixtures::plus(), fixtures::venn(), fixtures::figure_eight()] {
        for c in p.components() {
            assert_eq!(2 * c.dot_count(), c.len());
        }
    }
}

fn component_strategy() -> impl Strategy<Value = PolytopeComponent> {
    (1i64..6, 1i64..6, -5i64..5, -5i64..5, any::<bool>()).prop_map(|(w, h, x, y, ccw)| {
        let raw = if ccw { fixtures::rect_ccw(x, y, x + w, y + h) } else { fixtures::rect_cw(x, y, x + w, y + h) };
        PolytopeComponent::new(raw, 0).unwrap()
    })
}

proptest! {
    #[test]
    fn winding_translation_invariant(c in component_strategy(), dx in -7i64..7, dy in -7i64..7, px in -7i64..7, py in -7i64..7) {
        let p = LatticePolytope::from_components(vec![c]).unwrap();
        let q = p.translate(dx, dy);
        let a = p.winding_number(Probe::cell(px, py)).unwrap();
        let b = q.winding_number(Probe::cell(px + dx, py + dy)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn winding_jumps_by_one_across_a_segment(c in component_strategy()) {
        let p = LatticePolytope::from_components(vec![c.clone()]).unwrap();
        for s in c.segments() {
            // probes on both sides of the first unit of each segment
            let (dx, dy) = ((s.to.x - s.from.x).signum(), (s.to.y - s.from.y).signum());
            let mx = 2 * s.from.x + dx;
            let my = 2 * s.from.y + dy;
            let a = p.winding_number(Probe { x2: mx - dy, y2: my + dx }).unwrap();
            let b = p.winding_number(Probe { x2: mx + dy, y2: my - dx }).unwrap();
            // left side minus right side = +1
            prop_assert_eq!(a - b, 1);
        }
    }
}
