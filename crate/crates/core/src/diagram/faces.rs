//! Face cycles, global faces assembled through the containment forest, and
//! per-circle winding labels.

use super::{Dart, DiagramError, DottedGraph, End, Host, Side};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[inline]
pub(crate) fn dart_index(d: Dart) -> usize {
    2 * d.arc + (d.side == Side::Right) as usize
}

/// `(crossing, slot)` of every arc's head and tail end.
pub(crate) fn incidence(crossings: &[super::Crossing], n_arcs: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let mut head = vec![(usize::MAX, 0); n_arcs];
    let mut tail = vec![(usize::MAX, 0); n_arcs];
    for (c, x) in crossings.iter().enumerate() {
        for (k, e) in x.ends.iter().enumerate() {
            match e.end {
                End::Head => head[e.arc] = (c, k),
                End::Tail => tail[e.arc] = (c, k),
            }
        }
    }
    (head, tail)
}

pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Derived combinatorics of a diagram. Pieces `0..n_map` are connected map
/// pieces (ordered by least arc), pieces `n_map..` are the free circles.
#[derive(Clone, Debug)]
pub struct Structure {
    pub n_arcs: usize,
    pub n_free: usize,
    pub head: Vec<(usize, usize)>,
    pub tail: Vec<(usize, usize)>,
    pub dart_cycle: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
    pub cycle_piece: Vec<usize>,
    pub piece_of_arc: Vec<usize>,
    pub piece_arcs: Vec<Vec<usize>>,
    pub piece_crossings: Vec<Vec<usize>>,
    /// Global data, filled by [`Structure::new`].
    pub outer_cycle: Vec<usize>,
    pub cycle_face: Vec<usize>,
    pub faces: Vec<Vec<usize>>,
    pub strand_circle: Vec<usize>,
}

impl Structure {
    pub(crate) fn n_map_pieces(&self) -> usize {
        self.piece_arcs.len()
    }

    pub fn n_pieces(&self) -> usize {
        self.piece_arcs.len() + self.n_free
    }

    pub fn n_strands(&self) -> usize {
        self.n_arcs + self.n_free
    }

    pub fn dart_of(&self, idx: usize) -> Dart {
        Dart { arc: idx / 2, side: if idx % 2 == 0 { Side::Left } else { Side::Right } }
    }

    pub fn piece_of_strand(&self, s: usize) -> usize {
        if s < self.n_arcs {
            self.piece_of_arc[s]
        } else {
            self.n_map_pieces() + (s - self.n_arcs)
        }
    }

    /// Strands of a piece.
    pub fn piece_strands(&self, p: usize) -> Vec<usize> {
        if p < self.n_map_pieces() {
            self.piece_arcs[p].clone()
        } else {
            vec![self.n_arcs + p - self.n_map_pieces()]
        }
    }

    pub fn face_of(&self, dart_idx: usize) -> usize {
        self.cycle_face[self.dart_cycle[dart_idx]]
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    /// Next dart along a face boundary (face on the left of the walk).
    pub(crate) fn next_dart(g: &DottedGraph, head: &[(usize, usize)], tail: &[(usize, usize)], d: usize) -> usize {
        let a = d / 2;
        let (c, k) = if d % 2 == 0 { head[a] } else { tail[a] };
        let e = g.crossings[c].ends[(k + 3) % 4];
        2 * e.arc + (e.end == End::Head) as usize
    }

    /// Map-local data only (no placements needed).
    pub(crate) fn local(g: &DottedGraph) -> Result<Self, DiagramError> {
        let n = g.arcs.len();
        let nf = g.free.len();
        let (head, tail) = incidence(&g.crossings, n);

        let mut dsu = Dsu::new(n);
        for x in &g.crossings {
            for k in 1..4 {
                dsu.union(x.ends[0].arc, x.ends[k].arc);
            }
        }
        let mut root_piece = vec![usize::MAX; n];
        let mut piece_of_arc = vec![0; n];
        let mut piece_arcs: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            let r = dsu.find(a);
            if root_piece[r] == usize::MAX {
                root_piece[r] = piece_arcs.len();
                piece_arcs.push(Vec::new());
            }
            piece_of_arc[a] = root_piece[r];
            piece_arcs[root_piece[r]].push(a);
        }
        let n_map = piece_arcs.len();
        let mut piece_crossings = vec![Vec::new(); n_map];
        for (c, x) in g.crossings.iter().enumerate() {
            piece_crossings[piece_of_arc[x.ends[0].arc]].push(c);
        }

        let total_darts = 2 * (n + nf);
        let mut dart_cycle = vec![usize::MAX; total_darts];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut cycle_piece = Vec::new();
        for d0 in 0..2 * n {
            if dart_cycle[d0] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let mut d = d0;
            loop {
                dart_cycle[d] = id;
                cyc.push(d);
                d = Self::next_dart(g, &head, &tail, d);
                if d == d0 {
                    break;
                }
                if dart_cycle[d] != usize::MAX {
                    return Err(DiagramError::InconsistentRotation { arc: d / 2 });
                }
            }
            cycles.push(cyc);
            cycle_piece.push(piece_of_arc[d0 / 2]);
        }
        let mut per_piece = vec![0i64; n_map];
        for &p in &cycle_piece {
            per_piece[p] += 1;
        }
        for p in 0..n_map {
            let v = piece_crossings[p].len() as i64;
            let e = piece_arcs[p].len() as i64;
            if v - e + per_piece[p] != 2 {
                return Err(DiagramError::InconsistentRotation { arc: piece_arcs[p][0] });
            }
        }
        for f in 0..nf {
            for side in 0..2 {
                let d = 2 * (n + f) + side;
                dart_cycle[d] = cycles.len();
                cycles.push(vec![d]);
                cycle_piece.push(n_map + f);
            }
        }
        let strand_circle = (0..n + nf).map(|s| g.strand_circle(s)).collect();
        Ok(Structure {
            n_arcs: n,
            n_free: nf,
            head,
            tail,
            dart_cycle,
            cycles,
            cycle_piece,
            piece_of_arc,
            piece_arcs,
            piece_crossings,
            outer_cycle: Vec::new(),
            cycle_face: Vec::new(),
            faces: Vec::new(),
            strand_circle,
        })
    }

    /// Interior dart of a free circle (the side its orientation puts on the left
    /// for counterclockwise circles).
    pub fn free_inner_dart(&self, g: &DottedGraph, f: usize) -> usize {
        2 * (self.n_arcs + f) + (g.free[f].sign < 0) as usize
    }

    pub fn new(g: &DottedGraph) -> Result<Self, DiagramError> {
        let mut st = Self::local(g)?;
        let n_map = st.n_map_pieces();
        let nc = st.cycles.len();
        let mut outer_cycle = Vec::with_capacity(st.n_pieces());
        for p in &g.pieces {
            outer_cycle.push(st.dart_cycle[dart_index(p.outer)]);
        }
        for f in 0..st.n_free {
            outer_cycle.push(st.dart_cycle[st.free_inner_dart(g, f) ^ 1]);
        }
        let plane = nc;
        let slot = |h: Host, st: &Structure| match h {
            Host::Plane => plane,
            Host::Face(d) => st.dart_cycle[dart_index(d)],
            Host::Inside(f) => st.dart_cycle[st.free_inner_dart(g, f)],
        };
        let mut dsu = Dsu::new(nc + 1);
        for (p, pl) in g.pieces.iter().enumerate() {
            dsu.union(outer_cycle[p], slot(pl.host, &st));
        }
        for f in 0..st.n_free {
            dsu.union(outer_cycle[n_map + f], slot(g.free[f].host, &st));
        }
        let mut face_of_root = vec![usize::MAX; nc + 1];
        let mut faces: Vec<Vec<usize>> = vec![Vec::new()];
        face_of_root[dsu.find(plane)] = 0;
        let mut cycle_face = vec![0; nc];
        for c in 0..nc {
            let r = dsu.find(c);
            if face_of_root[r] == usize::MAX {
                face_of_root[r] = faces.len();
                faces.push(Vec::new());
            }
            cycle_face[c] = face_of_root[r];
            faces[face_of_root[r]].push(c);
        }
        st.outer_cycle = outer_cycle;
        st.cycle_face = cycle_face;
        st.faces = faces;
        Ok(st)
    }

    /// Faces on the (left, right) of a strand.
    pub fn strand_faces(&self, s: usize) -> (usize, usize) {
        (self.face_of(2 * s), self.face_of(2 * s + 1))
    }

    /// Merges faces across every strand not in `keep`; returns a class per
    /// face with the class of the outer face numbered 0.
    pub fn regions(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        let nf = self.faces.len();
        let mut dsu = Dsu::new(nf);
        for s in 0..self.n_strands() {
            if !keep(s) {
                let (l, r) = self.strand_faces(s);
                dsu.union(l, r);
            }
        }
        let mut id = vec![usize::MAX; nf];
        let mut out = vec![0; nf];
        let mut next = 0;
        for f in 0..nf {
            let r = dsu.find(f);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out[f] = id[r];
        }
        out
    }

    /// Faces enclosed by a closed curve made of the given strands.
    pub fn disk(&self, strands: &[usize]) -> Vec<bool> {
        let mut mark = vec![false; self.n_strands()];
        for &s in strands {
            mark[s] = true;
        }
        self.regions(|s| mark[s]).into_iter().map(|c| c != 0).collect()
    }

    pub fn labels(&self, g: &DottedGraph) -> Result<Labels, DiagramError> {
        let nf = self.faces.len();
        let ncirc = g.n_circles();
        let mut adj: Vec<Vec<(usize, usize, i32)>> = vec![Vec::new(); nf];
        for s in 0..self.n_strands() {
            let (l, r) = self.strand_faces(s);
            let c = self.strand_circle[s];
            adj[r].push((l, c, 1));
            adj[l].push((r, c, -1));
        }
        let mut winding = vec![vec![0i32; ncirc]; nf];
        let mut seen = vec![false; nf];
        seen[0] = true;
        let mut q = VecDeque::from([0usize]);
        while let Some(f) = q.pop_front() {
            for &(h, c, d) in &adj[f] {
                let mut w = winding[f].clone();
                w[c] += d;
                if seen[h] {
                    if winding[h] != w {
                        return Err(DiagramError::ContradictoryLabels { face: h });
                    }
                } else {
                    seen[h] = true;
                    winding[h] = w;
                    q.push_back(h);
                }
            }
        }
        if let Some(f) = seen.iter().position(|s| !s) {
            return Err(DiagramError::ContradictoryLabels { face: f });
        }
        let total = winding.iter().map(|w| w.iter().sum()).collect();
        Ok(Labels { winding, total })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labels {
    /// `winding[face][circle]`
    pub winding: Vec<Vec<i32>>,
    pub total: Vec<i32>,
}

impl DottedGraph {
    pub fn structure(&self) -> Structure {
        Structure::new(self).expect("normalised diagrams have consistent structure")
    }

    pub fn labels(&self) -> Result<Labels, DiagramError> {
        self.structure().labels(self)
    }
}
