//! Small hand-checked polytopes used by tests, benches and the CLI examples.

use crate::polytope::{Corner, LatticePolytope};

fn poly(raw: Vec<Vec<Corner>>) -> LatticePolytope {
    LatticePolytope::validate(raw).expect("fixture is valid")
}

/// Counterclockwise axis box `[x0,x1] x [y0,y1]`, dots at lower-left and upper-right.
pub fn rect_ccw(x0: i64, y0: i64, x1: i64, y1: i64) -> Vec<Corner> {
    vec![Corner::dot(x0, y0), Corner::x(x1, y0), Corner::dot(x1, y1), Corner::x(x0, y1)]
}

/// Clockwise axis box, dots at upper-left and lower-right.
pub fn rect_cw(x0: i64, y0: i64, x1: i64, y1: i64) -> Vec<Corner> {
    vec![Corner::dot(x0, y1), Corner::x(x1, y1), Corner::dot(x1, y0), Corner::x(x0, y0)]
}

pub fn rectangle() -> LatticePolytope {
    poly(vec![rect_ccw(0, 0, 4, 3)])
}

pub fn rectangle_cw() -> LatticePolytope {
    poly(vec![rect_cw(0, 0, 4, 3)])
}

/// Opposite orientations, lens crossing at (4,1) and (4,2).
pub fn thm1_case2() -> LatticePolytope {
    poly(vec![rect_ccw(0, 0, 4, 3), rect_cw(3, 1, 7, 2)])
}

/// Same orientation on both circles.
pub fn thm1_case1() -> LatticePolytope {
    poly(vec![rect_ccw(0, 0, 4, 3), rect_ccw(3, 1, 7, 2)])
}

/// Two counterclockwise boxes with a lens whose winding is 2.
pub fn lens_ccw() -> LatticePolytope {
    thm1_case1()
}

pub fn venn() -> LatticePolytope {
    poly(vec![rect_ccw(0, 0, 4, 4), rect_ccw(2, 1, 6, 5), rect_ccw(3, -1, 7, 3)])
}

/// Three boxes in a row, consecutive ones overlapping in a lens.
pub fn chain3() -> LatticePolytope {
    poly(vec![rect_ccw(0, 0, 4, 3), rect_cw(3, 1, 8, 2), rect_ccw(7, 0, 11, 3)])
}

/// A single curve with one self-crossing at (2,1); lobes of winding +1 and -1.
pub fn figure_eight() -> LatticePolytope {
    poly(vec![vec![
        Corner::dot(0, 1),
        Corner::x(3, 1),
        Corner::dot(3, 3),
        Corner::x(2, 3),
        Corner::dot(2, 0),
        Corner::x(0, 0),
    ]])
}

/// Two disjoint boxes, one inside the other.
pub fn nested() -> LatticePolytope {
    poly(vec![rect_ccw(0, 0, 6, 6), rect_ccw(2, 2, 4, 4)])
}

/// L-shaped hexagon.
pub fn l_hexagon() -> LatticePolytope {
    poly(vec![vec![
        Corner::dot(0, 0),
        Corner::x(2, 0),
        Corner::dot(2, 1),
        Corner::x(1, 1),
        Corner::dot(1, 2),
        Corner::x(0, 2),
    ]])
}

/// Plus-shaped 12-gon.
pub fn plus() -> LatticePolytope {
    poly(vec![vec![
        Corner::dot(1, 0),
        Corner::x(2, 0),
        Corner::dot(2, 1),
        Corner::x(3, 1),
        Corner::dot(3, 2),
        Corner::x(2, 2),
        Corner::dot(2, 3),
        Corner::x(1, 3),
        Corner::dot(1, 2),
        Corner::x(0, 2),
        Corner::dot(0, 1),
        Corner::x(1, 1),
    ]])
}
