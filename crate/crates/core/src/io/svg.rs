//! SVG rendering. Lattice units are drawn `UNIT` pixels apart with y pointing
//! up; output bytes depend only on the input.

use crate::diagram::DottedGraph;
use crate::extract::extract;
use crate::polytope::{GridPoint, LatticePolytope, Mark, PolytopeComponent};
use crate::realize::{find_realization, RealizeBounds};
use std::fmt::Write;
use thiserror::Error;

const UNIT: i64 = 40;
const MARGIN: i64 = 24;

/// The diagram could not be realized within the rendering bounds, so a
/// schematic layout was drawn instead: strands, dots and labels are listed
/// but the picture is not an isotopic drawing.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("LayoutFallbackNotice: {0}")]
pub struct LayoutFallbackNotice(pub String);

struct Canvas {
    lo: GridPoint,
    hi: GridPoint,
    body: String,
}

impl Canvas {
    fn new(lo: GridPoint, hi: GridPoint) -> Self {
        Canvas { lo, hi, body: String::new() }
    }

    fn px(&self, p: GridPoint) -> (i64, i64) {
        (MARGIN + (p.x - self.lo.x) * UNIT, MARGIN + (self.hi.y - p.y) * UNIT)
    }

    /// Doubled coordinates, for cell centres.
    fn px2(&self, x2: i64, y2: i64) -> (i64, i64) {
        (MARGIN + (x2 - 2 * self.lo.x) * UNIT / 2, MARGIN + (2 * self.hi.y - y2) * UNIT / 2)
    }

    fn polyline(&mut self, class: &str, pts: &[GridPoint], closed: bool) {
        let coords: Vec<String> = pts.iter().map(|&p| self.px(p)).map(|(x, y)| format!("{x},{y}")).collect();
        let tag = if closed { "polygon" } else { "polyline" };
        let _ = writeln!(self.body, r#"<{tag} class="{class}" points="{}" fill="none" stroke="black" stroke-width="2"/>"#, coords.join(" "));
    }

    fn arrow(&mut self, a: GridPoint, b: GridPoint) {
        let ((x0, y0), (x1, y1)) = (self.px(a), self.px(b));
        let (mx, my) = ((x0 + x1) / 2, (y0 + y1) / 2);
        let (dx, dy) = ((x1 - x0).signum(), (y1 - y0).signum());
        let (tx, ty) = (mx + 6 * dx, my + 6 * dy);
        let (l, r) = ((mx - 4 * dy, my + 4 * dx), (mx + 4 * dy, my - 4 * dx));
        let _ = writeln!(self.body, r#"<polygon class="arrow" points="{tx},{ty} {},{} {},{}" fill="black"/>"#, l.0, l.1, r.0, r.1);
    }

    fn dot(&mut self, p: GridPoint) {
        let (x, y) = self.px(p);
        let _ = writeln!(self.body, r#"<circle class="dot" cx="{x}" cy="{y}" r="5" fill="black"/>"#);
    }

    fn cross(&mut self, p: GridPoint) {
        let (x, y) = self.px(p);
        let _ = writeln!(
            self.body,
            r#"<g class="x" stroke="black" stroke-width="2"><line x1="{}" y1="{}" x2="{}" y2="{}"/><line x1="{}" y1="{}" x2="{}" y2="{}"/></g>"#,
            x - 5, y - 5, x + 5, y + 5, x - 5, y + 5, x + 5, y - 5
        );
    }

    fn crossing(&mut self, p: GridPoint) {
        let (x, y) = self.px(p);
        let _ = writeln!(self.body, r#"<circle class="crossing" cx="{x}" cy="{y}" r="3" fill="white" stroke="black"/>"#);
    }

    fn label(&mut self, x2: i64, y2: i64, text: &str) {
        let (x, y) = self.px2(x2, y2);
        let _ = writeln!(self.body, r#"<text class="label" x="{x}" y="{y}" font-size="12" text-anchor="middle">{text}</text>"#);
    }

    fn finish(self) -> String {
        let w = 2 * MARGIN + (self.hi.x - self.lo.x) * UNIT;
        let h = 2 * MARGIN + (self.hi.y - self.lo.y) * UNIT;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{}</svg>\n",
            self.body
        )
    }
}

fn empty_canvas() -> String {
    Canvas::new(GridPoint::new(0, 0), GridPoint::new(0, 0)).finish()
}

fn canvas_for(p: &LatticePolytope) -> Option<Canvas> {
    p.bbox().map(|(lo, hi)| Canvas::new(lo, hi))
}

fn corners(c: &PolytopeComponent) -> Vec<GridPoint> {
    c.corners().iter().map(|k| k.point).collect()
}

fn marks(cv: &mut Canvas, p: &LatticePolytope, with_x: bool) {
    for c in p.components() {
        for k in c.corners() {
            match k.mark {
                Mark::Dot => cv.dot(k.point),
                Mark::X if with_x => cv.cross(k.point),
                Mark::X => {}
            }
        }
    }
}

/// Components with orientation arrows, dots as filled disks and X marks as crosses.
pub fn render_polytope_svg(p: &LatticePolytope) -> String {
    let Some(mut cv) = canvas_for(p) else { return empty_canvas() };
    for c in p.components() {
        cv.polyline("component", &corners(c), true);
        for s in c.segments() {
            cv.arrow(s.from, s.to);
        }
    }
    for x in p.crossings() {
        cv.crossing(x.point);
    }
    marks(&mut cv, p, true);
    cv.finish()
}

/// Window sizes tried, smallest first, before falling back.
const RENDER_WINDOWS: [i64; 5] = [2, 4, 6, 8, 10];
const RENDER_BUDGET: usize = 200_000;

/// Draws `g` through a realizing polytope (X marks dropped, arcs drawn
/// separately, face totals as text) when one is found within the rendering
/// bounds; otherwise a schematic layout and a notice.
pub fn render_diagram_svg(g: &DottedGraph) -> (String, Option<LayoutFallbackNotice>) {
    if g.is_empty() {
        return (empty_canvas(), None);
    }
    let mut dots = vec![0usize; g.n_circles()];
    for s in 0..g.n_strands() {
        dots[g.strand_circle(s)] += g.strand_dots(s) as usize;
    }
    let corners_needed = 2 * dots.iter().copied().max().unwrap_or(0);
    for w in RENDER_WINDOWS {
        let mut b = RealizeBounds::new(w, w, corners_needed.max(4));
        b.max_polytopes = RENDER_BUDGET;
        if let Ok(q) = find_realization(g, b) {
            return (realized(&q), None);
        }
    }
    (schematic(g), Some(LayoutFallbackNotice("no realization within 10x10; drawing a schematic layout".into())))
}

fn realized(q: &LatticePolytope) -> String {
    let (h, trace) = extract(q);
    let mut cv = canvas_for(q).expect("non-empty");
    for path in &trace.arc_paths {
        cv.polyline("arc", path, false);
        for pair in path.windows(2) {
            cv.arrow(pair[0], pair[1]);
        }
    }
    for &c in &trace.free_component {
        let comp = &q.components()[c];
        cv.polyline("circle", &corners(comp), true);
        for s in comp.segments() {
            cv.arrow(s.from, s.to);
        }
    }
    for x in &trace.crossings {
        cv.crossing(x.point);
    }
    marks(&mut cv, q, false);
    if let Ok(labels) = h.labels() {
        for (f, probe) in trace.face_probes.iter().enumerate().skip(1) {
            cv.label(probe.x2, probe.y2, &labels.total[f].to_string());
        }
    }
    cv.finish()
}

/// One box per strand in a row, its dots along the top edge and its circle
/// and dot count as text.
fn schematic(g: &DottedGraph) -> String {
    let n = g.n_strands() as i64;
    let mut cv = Canvas::new(GridPoint::new(0, 0), GridPoint::new(3 * n - 1, 3));
    for s in 0..g.n_strands() {
        let x = 3 * s as i64;
        let pts = [GridPoint::new(x, 0), GridPoint::new(x + 2, 0), GridPoint::new(x + 2, 2), GridPoint::new(x, 2)];
        cv.polyline("strand", &pts, true);
        let d = g.strand_dots(s) as i64;
        for k in 0..d {
            let (px, py) = cv.px(GridPoint::new(x, 2));
            let _ = writeln!(cv.body, r#"<circle class="dot" cx="{}" cy="{py}" r="5" fill="black"/>"#, px + (k + 1) * 2 * UNIT / (d + 1));
        }
        cv.label(2 * x + 2, 6, &format!("s{s} c{} d{d}", g.strand_circle(s)));
    }
    let _ = writeln!(cv.body, r#"<text class="notice" x="{MARGIN}" y="{}" font-size="12">{} crossings</text>"#, MARGIN / 2, g.crossings().len());
    cv.finish()
}
