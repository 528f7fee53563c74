//! Rectilinear marked curves on the integer grid.
//!
//! A component is a cyclic list of corners whose marks alternate `D`/`X`.
//! The segment leaving a dot is horizontal, the segment leaving an X mark is
//! vertical. Components may cross themselves and each other, but only
//! transversally (one horizontal against one vertical segment, away from
//! corners).

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub const fn new(x: i64, y: i64) -> Self {
        GridPoint { x, y }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mark {
    Dot,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub point: GridPoint,
    pub mark: Mark,
}

impl Corner {
    pub const fn dot(x: i64, y: i64) -> Self {
        Corner { point: GridPoint::new(x, y), mark: Mark::Dot }
    }
    pub const fn x(x: i64, y: i64) -> Self {
        Corner { point: GridPoint::new(x, y), mark: Mark::X }
    }
}

/// Where a validation error was found: component index and corner index
/// (the corner at which the offending segment starts).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Loc {
    pub component: usize,
    pub corner: usize,
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "component {}, corner {}", self.component, self.corner)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum PolytopeError {
    #[error("AlternationError at {0}: marks do not alternate")]
    Alternation(Loc),
    #[error("AxisError at {0}: {1}")]
    Axis(Loc, String),
    #[error("DegenerateError at {0}: {1}")]
    Degenerate(Loc, String),
    #[error("NonGenericError at {0}: {1}")]
    NonGeneric(Loc, String),
    #[error("ProbeOnCurve: probe ({0}/2, {1}/2) lies on a segment")]
    ProbeOnCurve(i64, i64),
    #[error("NotSimple: curve crosses itself")]
    NotSimple,
}

impl PolytopeError {
    pub fn loc(&self) -> Option<Loc> {
        match self {
            PolytopeError::Alternation(l)
            | PolytopeError::Axis(l, _)
            | PolytopeError::Degenerate(l, _)
            | PolytopeError::NonGeneric(l, _) => Some(*l),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolytopeComponent {
    corners: Vec<Corner>,
}

/// Axis-parallel segment `from -> to` of a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub from: GridPoint,
    pub to: GridPoint,
}

impl Segment {
    #[inline]
    pub fn horizontal(&self) -> bool {
        self.from.y == self.to.y
    }
    #[inline]
    fn xs(&self) -> (i64, i64) {
        (self.from.x.min(self.to.x), self.from.x.max(self.to.x))
    }
    #[inline]
    fn ys(&self) -> (i64, i64) {
        (self.from.y.min(self.to.y), self.from.y.max(self.to.y))
    }
    /// Signed direction along the segment's axis (+1 / -1).
    #[inline]
    pub fn dir(&self) -> i64 {
        let d = if self.horizontal() { self.to.x - self.from.x } else { self.to.y - self.from.y };
        d.signum()
    }
}

impl PolytopeComponent {
    /// Checks the per-component rules (count, alternation, axes); `index` is
    /// only used for error locations.
    pub fn new(corners: Vec<Corner>, index: usize) -> Result<Self, PolytopeError> {
        let n = corners.len();
        let loc = |corner| Loc { component: index, corner };
        if n < 4 || n % 2 == 1 {
            return Err(PolytopeError::Degenerate(
                loc(0),
                format!("{n} corners; need an even count of at least 4"),
            ));
        }
        for i in 0..n {
            if corners[i].mark == corners[(i + 1) % n].mark {
                return Err(PolytopeError::Alternation(loc((i + 1) % n)));
            }
        }
        for i in 0..n {
            let a = corners[i];
            let b = corners[(i + 1) % n];
            let (dx, dy) = (b.point.x - a.point.x, b.point.y - a.point.y);
            match a.mark {
                Mark::Dot if dy != 0 => {
                    return Err(PolytopeError::Axis(loc(i), "dot-to-X segment must be parallel to the x-axis".into()))
                }
                Mark::X if dx != 0 => {
                    return Err(PolytopeError::Axis(loc(i), "X-to-dot segment must be parallel to the y-axis".into()))
                }
                _ => {}
            }
            if dx == 0 && dy == 0 {
                return Err(PolytopeError::Degenerate(loc(i), "zero-length segment".into()));
            }
        }
        Ok(PolytopeComponent { corners })
    }

    /// Builds a component from the `x_i`/`y_i` sequences of an alternating
    /// path: `D_i = (x_i, y_i)`, `X_i = (x_{i+1}, y_i)`.
    pub fn from_coordinates(xs: &[i64], ys: &[i64]) -> Result<Self, PolytopeError> {
        assert_eq!(xs.len(), ys.len());
        let k = xs.len();
        let mut corners = Vec::with_capacity(2 * k);
        for i in 0..k {
            corners.push(Corner::dot(xs[i], ys[i]));
            corners.push(Corner::x(xs[(i + 1) % k], ys[i]));
        }
        Self::new(corners, 0)
    }

    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    pub fn dot_count(&self) -> usize {
        self.corners.iter().filter(|c| c.mark == Mark::Dot).count()
    }

    pub fn segment(&self, i: usize) -> Segment {
        let n = self.corners.len();
        Segment { from: self.corners[i].point, to: self.corners[(i + 1) % n].point }
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.corners.len()).map(move |i| self.segment(i))
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Self {
        PolytopeComponent {
            corners: self
                .corners
                .iter()
                .map(|c| Corner { point: GridPoint::new(c.point.x + dx, c.point.y + dy), mark: c.mark })
                .collect(),
        }
    }

    /// Same curve, cyclically rotated so that it starts at corner `start`.
    pub fn rotate_start(&self, start: usize) -> Self {
        let mut corners = self.corners.clone();
        let n = corners.len().max(1);
        corners.rotate_left(start % n);
        PolytopeComponent { corners }
    }

    /// Twice the signed area (positive for counterclockwise).
    pub fn signed_area2(&self) -> i64 {
        let n = self.corners.len();
        (0..n)
            .map(|i| {
                let a = self.corners[i].point;
                let b = self.corners[(i + 1) % n].point;
                a.x * b.y - a.y * b.x
            })
            .sum()
    }

    pub fn bbox(&self) -> (GridPoint, GridPoint) {
        bbox_of(self.corners.iter().map(|c| c.point))
    }

    /// True iff no two non-adjacent segments of this component meet.
    pub fn is_simple(&self) -> bool {
        let n = self.corners.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                if segments_meet(self.segment(i), self.segment(j)) {
                    return false;
                }
            }
        }
        true
    }
}

fn bbox_of(points: impl Iterator<Item = GridPoint>) -> (GridPoint, GridPoint) {
    let mut lo = GridPoint::new(i64::MAX, i64::MAX);
    let mut hi = GridPoint::new(i64::MIN, i64::MIN);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

fn segments_meet(a: Segment, b: Segment) -> bool {
    let (ax0, ax1) = a.xs();
    let (ay0, ay1) = a.ys();
    let (bx0, bx1) = b.xs();
    let (by0, by1) = b.ys();
    ax0 <= bx1 && bx0 <= ax1 && ay0 <= by1 && by0 <= ay1
}

/// How two segments meet, for the genericity check.
enum Contact {
    None,
    Transversal,
    Bad(&'static str),
}

fn contact(a: Segment, b: Segment) -> Contact {
    if !segments_meet(a, b) {
        return Contact::None;
    }
    if a.horizontal() == b.horizontal() {
        return Contact::Bad("collinear segments overlap or touch");
    }
    let (h, v) = if a.horizontal() { (a, b) } else { (b, a) };
    let (x0, x1) = h.xs();
    let (y0, y1) = v.ys();
    let (x, y) = (v.from.x, h.from.y);
    if x0 < x && x < x1 && y0 < y && y < y1 {
        Contact::Transversal
    } else {
        Contact::Bad("a corner lies on another segment")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SegRef {
    pub component: usize,
    pub segment: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingPoint {
    pub point: GridPoint,
    pub horizontal: SegRef,
    pub vertical: SegRef,
    /// `+1` if the vertical strand passes from right to left of the
    /// horizontal one (counterclockwise handedness), `-1` otherwise.
    pub sign: i8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePolytope {
    components: Vec<PolytopeComponent>,
}

/// A probe point in doubled coordinates, so half-integer points are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Probe {
    pub x2: i64,
    pub y2: i64,
}

impl Probe {
    /// Centre of the unit cell whose lower-left corner is `(x, y)`.
    pub const fn cell(x: i64, y: i64) -> Self {
        Probe { x2: 2 * x + 1, y2: 2 * y + 1 }
    }
}

impl LatticePolytope {
    pub fn empty() -> Self {
        LatticePolytope::default()
    }

    /// Validates raw corner lists. Reports the first violated rule.
    pub fn validate(raw: Vec<Vec<Corner>>) -> Result<Self, PolytopeError> {
        let components = raw
            .into_iter()
            .enumerate()
            .map(|(i, c)| PolytopeComponent::new(c, i))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_components(components)
    }

    pub fn from_components(components: Vec<PolytopeComponent>) -> Result<Self, PolytopeError> {
        let p = LatticePolytope { components };
        p.check_generic()?;
        Ok(p)
    }

    /// Skips the genericity check; callers must have established it.
    pub(crate) fn from_components_unchecked(components: Vec<PolytopeComponent>) -> Self {
        LatticePolytope { components }
    }

    fn check_generic(&self) -> Result<(), PolytopeError> {
        for (ci, c) in self.components.iter().enumerate() {
            generic_within(c, ci)?;
            for (dj, d) in self.components.iter().enumerate().skip(ci + 1) {
                generic_between(c, d, dj)?;
            }
        }
        Ok(())
    }

    pub fn components(&self) -> &[PolytopeComponent] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn dot_count(&self) -> usize {
        self.components.iter().map(|c| c.dot_count()).sum()
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Self {
        LatticePolytope { components: self.components.iter().map(|c| c.translate(dx, dy)).collect() }
    }

    pub fn bbox(&self) -> Option<(GridPoint, GridPoint)> {
        if self.components.is_empty() {
            return None;
        }
        Some(bbox_of(self.components.iter().flat_map(|c| c.corners.iter().map(|k| k.point))))
    }

    /// All transversal double points, sorted by position.
    pub fn crossings(&self) -> Vec<CrossingPoint> {
        let mut out = Vec::new();
        let segs: Vec<(SegRef, Segment)> = self
            .components
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| c.segments().enumerate().map(move |(si, s)| (SegRef { component: ci, segment: si }, s)))
            .collect();
        for &(hr, h) in segs.iter().filter(|(_, s)| s.horizontal()) {
            let (x0, x1) = h.xs();
            let y = h.from.y;
            for &(vr, v) in segs.iter().filter(|(_, s)| !s.horizontal()) {
                let x = v.from.x;
                let (y0, y1) = v.ys();
                if x0 < x && x < x1 && y0 < y && y < y1 {
                    out.push(CrossingPoint {
                        point: GridPoint::new(x, y),
                        horizontal: hr,
                        vertical: vr,
                        sign: (h.dir() * v.dir()) as i8,
                    });
                }
            }
        }
        out.sort_by_key(|c| (c.point.x, c.point.y));
        out
    }

    /// Geometric winding number: signed count of vertical segments hit by the
    /// ray from `probe` towards +x (upward = +1).
    pub fn winding_number(&self, probe: Probe) -> Result<i64, PolytopeError> {
        let mut w = 0;
        for c in &self.components {
            for s in c.segments() {
                let (x0, x1) = s.xs();
                let (y0, y1) = s.ys();
                if s.horizontal() {
                    if probe.y2 == 2 * y0 && 2 * x0 <= probe.x2 && probe.x2 <= 2 * x1 {
                        return Err(PolytopeError::ProbeOnCurve(probe.x2, probe.y2));
                    }
                } else {
                    let x2 = 2 * s.from.x;
                    if x2 == probe.x2 && 2 * y0 <= probe.y2 && probe.y2 <= 2 * y1 {
                        return Err(PolytopeError::ProbeOnCurve(probe.x2, probe.y2));
                    }
                    if x2 > probe.x2 && 2 * y0 <= probe.y2 && probe.y2 < 2 * y1 {
                        w += s.dir();
                    }
                }
            }
        }
        Ok(w)
    }
}

fn generic_within(c: &PolytopeComponent, ci: usize) -> Result<(), PolytopeError> {
    let n = c.len();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // perpendicular by alternation: they meet only at the shared corner
                continue;
            }
            if let Contact::Bad(why) = contact(c.segment(i), c.segment(j)) {
                return Err(PolytopeError::NonGeneric(Loc { component: ci, corner: j }, why.into()));
            }
        }
    }
    Ok(())
}

fn generic_between(c: &PolytopeComponent, d: &PolytopeComponent, dj: usize) -> Result<(), PolytopeError> {
    for i in 0..c.len() {
        let a = c.segment(i);
        for j in 0..d.len() {
            if let Contact::Bad(why) = contact(a, d.segment(j)) {
                return Err(PolytopeError::NonGeneric(Loc { component: dj, corner: j }, why.into()));
            }
        }
    }
    Ok(())
}

/// Genericity of two components relative to each other (used by the census
/// to avoid re-checking each component).
pub fn generic_pair(c: &PolytopeComponent, d: &PolytopeComponent) -> bool {
    generic_between(c, d, 1).is_ok()
}

/// Genericity of a single component.
pub fn generic_single(c: &PolytopeComponent) -> bool {
    generic_within(c, 0).is_ok()
}

/// Convex / reflex corner counts of a simple rectilinear closed curve.
pub fn corner_angle_audit(c: &PolytopeComponent) -> Result<(usize, usize), PolytopeError> {
    if !c.is_simple() {
        return Err(PolytopeError::NotSimple);
    }
    let pts: Vec<GridPoint> = c.corners.iter().map(|k| k.point).collect();
    audit_points(&pts)
}

/// Same as [`corner_angle_audit`] for a bare cyclic list of corner points.
pub fn audit_points(pts: &[GridPoint]) -> Result<(usize, usize), PolytopeError> {
    let n = pts.len();
    let area2: i64 = (0..n).map(|i| pts[i].x * pts[(i + 1) % n].y - pts[i].y * pts[(i + 1) % n].x).sum();
    if n < 4 || area2 == 0 {
        return Err(PolytopeError::NotSimple);
    }
    let orient = area2.signum();
    let (mut plus, mut minus) = (0, 0);
    for i in 0..n {
        let p = pts[(i + n - 1) % n];
        let q = pts[i];
        let r = pts[(i + 1) % n];
        let turn = ((q.x - p.x) * (r.y - q.y) - (q.y - p.y) * (r.x - q.x)).signum();
        match turn * orient {
            1 => plus += 1,
            -1 => minus += 1,
            _ => return Err(PolytopeError::NotSimple),
        }
    }
    Ok((plus, minus))
}
