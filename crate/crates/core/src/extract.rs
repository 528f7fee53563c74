//! From a lattice polytope to its dotted graph: drop the X marks, cut the
//! curves at crossings, and place pieces by flood-filling unit cells.

use crate::diagram::faces::Structure;
use crate::diagram::{ArcEnd, Crossing, DiagramError, DottedGraph, Host, Placement, Side};
use crate::polytope::{CrossingPoint, GridPoint, LatticePolytope, Mark, Probe};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionTrace {
    /// Polyline realising each arc, from its tail crossing to its head crossing.
    pub arc_paths: Vec<Vec<GridPoint>>,
    /// Polytope component of each arc.
    pub arc_component: Vec<usize>,
    /// Polytope component of each free circle.
    pub free_component: Vec<usize>,
    pub crossings: Vec<CrossingPoint>,
    /// An interior probe (unit-cell centre) for every face of the diagram.
    pub face_probes: Vec<Probe>,
}

/// Slots in counterclockwise order.
const EAST: usize = 0;
const NORTH: usize = 1;
const WEST: usize = 2;
const SOUTH: usize = 3;

#[derive(Clone, Copy, Debug)]
enum Event {
    Corner(Mark),
    Cross(usize),
}

/// Probe cell beside the unit edge leaving `p` towards `q`.
fn side_probe(p: GridPoint, q: GridPoint, side: Side) -> Probe {
    let (dx, dy) = ((q.x - p.x).signum(), (q.y - p.y).signum());
    let (nx, ny) = match side {
        Side::Left => (-dy, dx),
        Side::Right => (dy, -dx),
    };
    Probe { x2: 2 * p.x + dx + nx, y2: 2 * p.y + dy + ny }
}

struct CellGrid {
    x0: i64,
    y0: i64,
    w: usize,
    h: usize,
}

impl CellGrid {
    fn new(p: &LatticePolytope) -> Self {
        let (lo, hi) = p.bbox().unwrap_or((GridPoint::new(0, 0), GridPoint::new(0, 0)));
        CellGrid { x0: lo.x - 1, y0: lo.y - 1, w: (hi.x - lo.x + 2) as usize, h: (hi.y - lo.y + 2) as usize }
    }
    fn idx(&self, pr: Probe) -> usize {
        let i = ((pr.x2 - 1) / 2 - self.x0) as usize;
        let j = ((pr.y2 - 1) / 2 - self.y0) as usize;
        j * self.w + i
    }
    /// Region id per cell with walls along the given components' segments;
    /// region 0 contains the outside margin.
    fn regions(&self, p: &LatticePolytope, comps: &[usize]) -> Vec<usize> {
        let (w, h) = (self.w, self.h);
        // hwall[j*w+i]: wall between cell (i,j-1) and (i,j); vwall: between (i-1,j) and (i,j)
        let mut hwall = vec![false; w * (h + 1)];
        let mut vwall = vec![false; (w + 1) * h];
        for &c in comps {
            for s in p.components()[c].segments() {
                if s.horizontal() {
                    let j = (s.from.y - self.y0) as usize;
                    let (a, b) = (s.from.x.min(s.to.x), s.from.x.max(s.to.x));
                    for x in a..b {
                        hwall[j * w + (x - self.x0) as usize] = true;
                    }
                } else {
                    let i = (s.from.x - self.x0) as usize;
                    let (a, b) = (s.from.y.min(s.to.y), s.from.y.max(s.to.y));
                    for y in a..b {
                        vwall[(y - self.y0) as usize * (w + 1) + i] = true;
                    }
                }
            }
        }
        let mut reg = vec![usize::MAX; w * h];
        let mut next = 0;
        for start in 0..w * h {
            if reg[start] != usize::MAX {
                continue;
            }
            reg[start] = next;
            let mut q = VecDeque::from([start]);
            while let Some(c) = q.pop_front() {
                let (i, j) = (c % w, c / w);
                let mut go = |n: usize, q: &mut VecDeque<usize>| {
                    if reg[n] == usize::MAX {
                        reg[n] = next;
                        q.push_back(n);
                    }
                };
                if i + 1 < w && !vwall[j * (w + 1) + i + 1] {
                    go(c + 1, &mut q);
                }
                if i > 0 && !vwall[j * (w + 1) + i] {
                    go(c - 1, &mut q);
                }
                if j + 1 < h && !hwall[(j + 1) * w + i] {
                    go(c + w, &mut q);
                }
                if j > 0 && !hwall[j * w + i] {
                    go(c - w, &mut q);
                }
            }
            next += 1;
        }
        reg
    }
}

pub fn extract(p: &LatticePolytope) -> (DottedGraph, ExtractionTrace) {
    try_extract(p).expect("extraction of a valid polytope yields a valid diagram")
}

pub fn try_extract(p: &LatticePolytope) -> Result<(DottedGraph, ExtractionTrace), DiagramError> {
    let xs = p.crossings();
    let comps = p.components();
    // crossings on each segment, ordered along the segment
    let mut on_seg: Vec<Vec<Vec<(i64, usize)>>> = comps.iter().map(|c| vec![Vec::new(); c.len()]).collect();
    for (id, x) in xs.iter().enumerate() {
        for r in [x.horizontal, x.vertical] {
            let s = comps[r.component].segment(r.segment);
            let t = (x.point.x - s.from.x).abs() + (x.point.y - s.from.y).abs();
            on_seg[r.component][r.segment].push((t, id));
        }
    }
    let mut ends: Vec<[Option<ArcEnd>; 4]> = vec![[None; 4]; xs.len()];
    let mut arc_dots = Vec::new();
    let mut arc_paths = Vec::new();
    let mut arc_component = Vec::new();
    let mut free_component = Vec::new();
    let mut free_sign = Vec::new();
    let mut free_dots = Vec::new();

    for (ci, comp) in comps.iter().enumerate() {
        let mut events: Vec<(Event, GridPoint, usize)> = Vec::new();
        for (si, list) in on_seg[ci].iter_mut().enumerate() {
            let k = comp.corners()[si];
            events.push((Event::Corner(k.mark), k.point, si));
            list.sort_unstable();
            for &(_, id) in list.iter() {
                events.push((Event::Cross(id), xs[id].point, si));
            }
        }
        let Some(first) = events.iter().position(|e| matches!(e.0, Event::Cross(_))) else {
            free_component.push(ci);
            free_sign.push(comp.signed_area2().signum() as i8);
            free_dots.push(comp.dot_count() as u32);
            continue;
        };
        events.rotate_left(first);
        let n = events.len();
        let mut i = 0;
        while i < n {
            let Event::Cross(from) = events[i].0 else { unreachable!() };
            let arc = arc_dots.len();
            let mut dots = 0;
            let mut path = vec![events[i].1];
            let mut j = i + 1;
            loop {
                let (ev, pt, _) = events[j % n];
                path.push(pt);
                match ev {
                    Event::Corner(Mark::Dot) => dots += 1,
                    Event::Corner(Mark::X) => {}
                    Event::Cross(_) => break,
                }
                j += 1;
            }
            let Event::Cross(to) = events[j % n].0 else { unreachable!() };
            // leaving `from` along the segment of event i, arriving at `to`
            let out_seg = comp.segment(events[i].2);
            let in_seg = comp.segment(events[j % n].2);
            let out_slot = slot_of(out_seg.from, out_seg.to, true);
            let in_slot = slot_of(in_seg.from, in_seg.to, false);
            ends[from][out_slot] = Some(ArcEnd::tail(arc));
            ends[to][in_slot] = Some(ArcEnd::head(arc));
            arc_dots.push(dots);
            arc_paths.push(path);
            arc_component.push(ci);
            i = j;
        }
    }
    let crossings: Vec<Crossing> =
        ends.iter().map(|e| Crossing { ends: e.map(|x| x.expect("every crossing has four ends")) }).collect();

    // local structure with placeholders, to learn pieces and face cycles
    let prelim = DottedGraph {
        crossings: crossings.clone(),
        arcs: arc_dots.iter().map(|&d| crate::diagram::Arc { dots: d, circle: 0 }).collect(),
        free: free_dots
            .iter()
            .zip(&free_sign)
            .map(|(&d, &s)| crate::diagram::FreeCircle { dots: d, sign: s, circle: 0, host: Host::Plane })
            .collect(),
        pieces: Vec::new(),
    };
    let st = Structure::local(&prelim)?;
    let n_arcs = arc_dots.len();
    let n_map = st.n_map_pieces();
    let n_pieces = n_map + free_component.len();

    let dart_probe = |d: usize| -> Probe {
        let a = d / 2;
        let side = if d % 2 == 0 { Side::Left } else { Side::Right };
        let path = &arc_paths[a];
        side_probe(path[0], path[1], side)
    };
    let free_probe = |f: usize, inner: bool| -> Probe {
        let comp = &comps[free_component[f]];
        let s = comp.segment(0);
        let left_inside = free_sign[f] > 0;
        let side = if inner == left_inside { Side::Left } else { Side::Right };
        side_probe(s.from, s.to, side)
    };
    let grid = CellGrid::new(p);
    let piece_comps: Vec<Vec<usize>> = (0..n_pieces)
        .map(|q| {
            if q < n_map {
                let mut v: Vec<usize> = st.piece_arcs[q].iter().map(|&a| arc_component[a]).collect();
                v.sort_unstable();
                v.dedup();
                v
            } else {
                vec![free_component[q - n_map]]
            }
        })
        .collect();
    let regions: Vec<Vec<usize>> = piece_comps.iter().map(|cs| grid.regions(p, cs)).collect();
    // a cell next to each piece (used to locate it within other pieces)
    let piece_cell: Vec<usize> = (0..n_pieces)
        .map(|q| if q < n_map { grid.idx(dart_probe(2 * st.piece_arcs[q][0])) } else { grid.idx(free_probe(q - n_map, false)) })
        .collect();
    // cycles of each map piece with the region each occupies
    let mut piece_cycles: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_map];
    for (cy, darts) in st.cycles.iter().enumerate() {
        let q = st.cycle_piece[cy];
        if q < n_map {
            piece_cycles[q].push((cy, regions[q][grid.idx(dart_probe(darts[0]))]));
        }
    }
    // enclosers[q] = list of (piece, host) that enclose q
    let mut enclosers: Vec<Vec<(usize, Host)>> = vec![Vec::new(); n_pieces];
    for q in 0..n_pieces {
        for r in 0..n_pieces {
            if r == q {
                continue;
            }
            let reg = regions[r][piece_cell[q]];
            if reg == 0 {
                continue;
            }
            let host = if r < n_map {
                let cy = piece_cycles[r].iter().find(|(_, g)| *g == reg).expect("region has a face cycle").0;
                Host::Face(st.dart_of(st.cycles[cy][0]))
            } else {
                Host::Inside(r - n_map)
            };
            enclosers[q].push((r, host));
        }
    }
    let host_of = |q: usize| -> Host {
        enclosers[q].iter().max_by_key(|(r, _)| enclosers[*r].len()).map_or(Host::Plane, |(_, h)| *h)
    };
    let mut placements = Vec::with_capacity(n_map);
    for q in 0..n_map {
        let outer = piece_cycles[q].iter().find(|(_, g)| *g == 0).expect("piece has an unbounded face").0;
        placements.push(Placement { outer: st.dart_of(st.cycles[outer][0]), host: host_of(q) });
    }
    let free: Vec<(u32, i8, Host)> =
        (0..free_component.len()).map(|f| (free_dots[f], free_sign[f], host_of(n_map + f))).collect();
    let g = DottedGraph::new(crossings, arc_dots, free, placements)?;

    let full = Structure::new(&g)?;
    let mut face_probes = vec![Probe { x2: 0, y2: 0 }; full.n_faces()];
    let mut have = vec![false; full.n_faces()];
    for d in 0..2 * n_arcs {
        let f = full.face_of(d);
        if !have[f] {
            have[f] = true;
            face_probes[f] = dart_probe(d);
        }
    }
    for f in 0..free_component.len() {
        for inner in [true, false] {
            let d = full.free_inner_dart(&g, f) ^ (!inner as usize);
            let face = full.face_of(d);
            if !have[face] {
                have[face] = true;
                face_probes[face] = free_probe(f, inner);
            }
        }
    }
    if g.is_empty() {
        face_probes = vec![Probe::cell(0, 0)];
    }
    Ok((g, ExtractionTrace { arc_paths, arc_component, free_component, crossings: xs, face_probes }))
}

/// Slot at a crossing for a strand along `from -> to`: the outgoing end
/// points along the direction, the incoming end points back.
fn slot_of(from: GridPoint, to: GridPoint, outgoing: bool) -> usize {
    let (dx, dy) = ((to.x - from.x).signum(), (to.y - from.y).signum());
    let s = match (dx, dy) {
        (1, 0) => EAST,
        (-1, 0) => WEST,
        (0, 1) => NORTH,
        _ => SOUTH,
    };
    if outgoing {
        s
    } else {
        (s + 2) % 4
    }
}
