//! Dotted graphs as planar combinatorial maps.
//!
//! Crossings list their four arc-ends counterclockwise; ends `k` and `k+2`
//! form one through-strand. Arcs carry only a dot count. Connected map pieces
//! and free circles are placed relative to each other by an explicit
//! containment forest (`Placement` / `FreeCircle::host`).
//!
//! Internally arcs and free circles are both "strands": strand `s < n_arcs`
//! is arc `s`, strand `n_arcs + f` is free circle `f`. Dart `2s` is the left
//! side of strand `s`, dart `2s + 1` its right side.

pub mod canon;
pub mod cycles;
pub mod faces;
pub mod overlap;

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub use cycles::{ComponentKind, ComponentWitness};
pub use faces::{Labels, Structure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    /// The arc arrives at the crossing here.
    Head,
    /// The arc leaves the crossing here.
    Tail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcEnd {
    pub arc: usize,
    pub end: End,
}

impl ArcEnd {
    pub const fn head(arc: usize) -> Self {
        ArcEnd { arc, end: End::Head }
    }
    pub const fn tail(arc: usize) -> Self {
        ArcEnd { arc, end: End::Tail }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub ends: [ArcEnd; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub dots: u32,
    pub circle: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One side of an arc; names the face lying on that side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub arc: usize,
    pub side: Side,
}

impl Dart {
    pub const fn left(arc: usize) -> Self {
        Dart { arc, side: Side::Left }
    }
    pub const fn right(arc: usize) -> Self {
        Dart { arc, side: Side::Right }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Host {
    /// The unbounded region of the plane.
    Plane,
    /// The bounded face of another map piece on the given side of an arc.
    Face(Dart),
    /// The inside of a free circle.
    Inside(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeCircle {
    pub dots: u32,
    /// `+1` counterclockwise, `-1` clockwise.
    pub sign: i8,
    pub circle: usize,
    pub host: Host,
}

/// Position of a connected map piece: which of its faces is the unbounded
/// one, and where that face sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Placement {
    pub outer: Dart,
    pub host: Host,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DottedGraph {
    pub(crate) crossings: Vec<Crossing>,
    pub(crate) arcs: Vec<Arc>,
    pub(crate) free: Vec<FreeCircle>,
    pub(crate) pieces: Vec<Placement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum DiagramError {
    #[error("arc {arc}: {reason}")]
    ArcEnds { arc: usize, reason: String },
    #[error("crossing {crossing}: {reason}")]
    BadCrossing { crossing: usize, reason: String },
    #[error("InconsistentRotation: piece containing arc {arc} violates V - E + F = 2")]
    InconsistentRotation { arc: usize },
    #[error("circle ids: {0}")]
    BadCircleIds(String),
    #[error("containment: {0}")]
    Containment(String),
    #[error("ContradictoryLabels at face {face}")]
    ContradictoryLabels { face: usize },
}

impl DottedGraph {
    pub fn empty() -> Self {
        DottedGraph::default()
    }

    /// Builds and normalises a diagram; circle ids in `arcs` are recomputed.
    pub fn new(
        crossings: Vec<Crossing>,
        arc_dots: Vec<u32>,
        free: Vec<(u32, i8, Host)>,
        pieces: Vec<Placement>,
    ) -> Result<Self, DiagramError> {
        let g = DottedGraph {
            crossings,
            arcs: arc_dots.into_iter().map(|dots| Arc { dots, circle: usize::MAX }).collect(),
            free: free.into_iter().map(|(dots, sign, host)| FreeCircle { dots, sign, circle: usize::MAX, host }).collect(),
            pieces,
        };
        g.normalize(false)
    }

    /// Like [`DottedGraph::new`] but the supplied circle ids must describe the
    /// actual immersed circles (any numbering).
    pub fn from_parts(
        crossings: Vec<Crossing>,
        arcs: Vec<Arc>,
        free: Vec<FreeCircle>,
        pieces: Vec<Placement>,
    ) -> Result<Self, DiagramError> {
        DottedGraph { crossings, arcs, free, pieces }.normalize(true)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }
    pub fn free_circles(&self) -> &[FreeCircle] {
        &self.free
    }
    pub fn placements(&self) -> &[Placement] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty() && self.free.is_empty()
    }

    pub fn n_strands(&self) -> usize {
        self.arcs.len() + self.free.len()
    }

    pub fn n_circles(&self) -> usize {
        let a = self.arcs.iter().map(|a| a.circle + 1).max().unwrap_or(0);
        let f = self.free.iter().map(|f| f.circle + 1).max().unwrap_or(0);
        a.max(f)
    }

    pub fn total_dots(&self) -> u64 {
        self.arcs.iter().map(|a| a.dots as u64).sum::<u64>() + self.free.iter().map(|f| f.dots as u64).sum::<u64>()
    }

    pub fn strand_dots(&self, s: usize) -> u32 {
        if s < self.arcs.len() {
            self.arcs[s].dots
        } else {
            self.free[s - self.arcs.len()].dots
        }
    }

    pub fn strand_circle(&self, s: usize) -> usize {
        if s < self.arcs.len() {
            self.arcs[s].circle
        } else {
            self.free[s - self.arcs.len()].circle
        }
    }

    /// Full structural check, including label consistency.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let again = self.clone().normalize(true)?;
        if &again != self {
            return Err(DiagramError::Containment("diagram is not in normal form".into()));
        }
        let st = Structure::new(self)?;
        st.labels(self)?;
        Ok(())
    }

    /// Checks incidences, recomputes circle ids, canonicalises placements.
    pub(crate) fn normalize(mut self, check_circle_ids: bool) -> Result<Self, DiagramError> {
        let n = self.arcs.len();
        let mut seen = vec![[false; 2]; n];
        for (c, x) in self.crossings.iter().enumerate() {
            for k in 0..4 {
                let e = x.ends[k];
                if e.arc >= n {
                    return Err(DiagramError::BadCrossing { crossing: c, reason: format!("unknown arc {}", e.arc) });
                }
                let slot = &mut seen[e.arc][(e.end == End::Tail) as usize];
                if *slot {
                    return Err(DiagramError::ArcEnds { arc: e.arc, reason: format!("{:?} end used twice", e.end) });
                }
                *slot = true;
            }
            for k in 0..2 {
                if x.ends[k].end == x.ends[k + 2].end {
                    return Err(DiagramError::BadCrossing {
                        crossing: c,
                        reason: format!("ends {k} and {} are not one incoming and one outgoing", k + 2),
                    });
                }
            }
        }
        if let Some(a) = seen.iter().position(|s| !s[0] || !s[1]) {
            return Err(DiagramError::ArcEnds { arc: a, reason: "arc must have one head and one tail end".into() });
        }
        for f in &self.free {
            if f.sign != 1 && f.sign != -1 {
                return Err(DiagramError::BadCircleIds(format!("free circle sign {}", f.sign)));
            }
        }

        // Immersed circles: follow head -> opposite tail.
        let (head, _) = faces::incidence(&self.crossings, n);
        let mut circle = vec![usize::MAX; n];
        let mut next_id = 0;
        for a0 in 0..n {
            if circle[a0] != usize::MAX {
                continue;
            }
            let mut a = a0;
            loop {
                circle[a] = next_id;
                let (c, k) = head[a];
                a = self.crossings[c].ends[(k + 2) % 4].arc;
                if a == a0 {
                    break;
                }
            }
            next_id += 1;
        }
        if check_circle_ids {
            let mut map = std::collections::HashMap::new();
            let mut back = std::collections::HashMap::new();
            let given = self.arcs.iter().map(|a| a.circle).chain(self.free.iter().map(|f| f.circle));
            let computed = circle.iter().copied().chain((0..self.free.len()).map(|f| next_id + f));
            for (g, c) in given.zip(computed) {
                if *map.entry(g).or_insert(c) != c || *back.entry(c).or_insert(g) != g {
                    return Err(DiagramError::BadCircleIds(format!("circle id {g} does not match the strand structure")));
                }
            }
        }
        for (a, arc) in self.arcs.iter_mut().enumerate() {
            arc.circle = circle[a];
        }
        for (f, fc) in self.free.iter_mut().enumerate() {
            fc.circle = next_id + f;
        }

        let st = Structure::local(&self)?;
        // placements: one per map piece, ordered by the piece's least arc
        let n_map = st.n_map_pieces();
        if self.pieces.len() != n_map {
            return Err(DiagramError::Containment(format!(
                "{} placements for {} connected pieces",
                self.pieces.len(),
                n_map
            )));
        }
        let canon_dart = |d: Dart| -> Result<Dart, DiagramError> {
            if d.arc >= n {
                return Err(DiagramError::Containment(format!("unknown arc {}", d.arc)));
            }
            Ok(st.dart_of(st.cycles[st.dart_cycle[faces::dart_index(d)]][0]))
        };
        let mut placed: Vec<Option<Placement>> = vec![None; n_map];
        for p in &self.pieces {
            let outer = canon_dart(p.outer)?;
            let piece = st.piece_of_arc[outer.arc];
            if placed[piece].is_some() {
                return Err(DiagramError::Containment(format!("piece of arc {} placed twice", outer.arc)));
            }
            placed[piece] = Some(Placement { outer, host: p.host });
        }
        let mut pieces: Vec<Placement> = placed.into_iter().map(|p| p.unwrap()).collect();
        let outer_cycle: Vec<usize> = pieces.iter().map(|p| st.dart_cycle[faces::dart_index(p.outer)]).collect();
        let fix_host = |h: Host, own: Option<usize>, own_free: Option<usize>| -> Result<Host, DiagramError> {
            match h {
                Host::Plane => Ok(Host::Plane),
                Host::Inside(f) => {
                    if f >= self.free.len() || Some(f) == own_free {
                        return Err(DiagramError::Containment(format!("bad host free circle {f}")));
                    }
                    Ok(Host::Inside(f))
                }
                Host::Face(d) => {
                    let d = canon_dart(d)?;
                    let p = st.piece_of_arc[d.arc];
                    if Some(p) == own {
                        return Err(DiagramError::Containment("piece hosted in itself".into()));
                    }
                    if st.dart_cycle[faces::dart_index(d)] == outer_cycle[p] {
                        return Err(DiagramError::Containment(format!("host dart {:?} is on an unbounded face", d)));
                    }
                    Ok(Host::Face(d))
                }
            }
        };
        for (i, p) in pieces.iter_mut().enumerate() {
            p.host = fix_host(p.host, Some(i), None)?;
        }
        let free_hosts: Vec<Host> =
            (0..self.free.len()).map(|f| fix_host(self.free[f].host, None, Some(f))).collect::<Result<_, _>>()?;
        for (f, h) in free_hosts.into_iter().enumerate() {
            self.free[f].host = h;
        }
        self.pieces = pieces;

        // acyclic forest
        let total = n_map + self.free.len();
        let parent = |i: usize| -> Option<usize> {
            let h = if i < n_map { self.pieces[i].host } else { self.free[i - n_map].host };
            match h {
                Host::Plane => None,
                Host::Face(d) => Some(st.piece_of_arc[d.arc]),
                Host::Inside(f) => Some(n_map + f),
            }
        };
        for i in 0..total {
            let mut j = i;
            for _ in 0..=total {
                match parent(j) {
                    None => break,
                    Some(p) => j = p,
                }
                if j == i {
                    return Err(DiagramError::Containment("containment forest has a cycle".into()));
                }
            }
            if parent(j).is_some() {
                return Err(DiagramError::Containment("containment forest has a cycle".into()));
            }
        }
        Ok(self)
    }

    /// Relabels arcs, crossings and free circles by permutations
    /// (`perm[old] = new`) and rotates crossing rotations by `shift[c]`.
    pub fn relabel(&self, arc_perm: &[usize], crossing_perm: &[usize], free_perm: &[usize], shift: &[usize]) -> DottedGraph {
        let mut crossings = vec![Crossing { ends: [ArcEnd::head(0); 4] }; self.crossings.len()];
        for (c, x) in self.crossings.iter().enumerate() {
            let mut ends = x.ends.map(|e| ArcEnd { arc: arc_perm[e.arc], end: e.end });
            ends.rotate_left(shift[c] % 4);
            crossings[crossing_perm[c]] = Crossing { ends };
        }
        let mut arcs = vec![Arc { dots: 0, circle: 0 }; self.arcs.len()];
        for (a, arc) in self.arcs.iter().enumerate() {
            arcs[arc_perm[a]] = *arc;
        }
        let map_host = |h: Host| match h {
            Host::Plane => Host::Plane,
            Host::Face(d) => Host::Face(Dart { arc: arc_perm[d.arc], side: d.side }),
            Host::Inside(f) => Host::Inside(free_perm[f]),
        };
        let mut free = vec![FreeCircle { dots: 0, sign: 1, circle: 0, host: Host::Plane }; self.free.len()];
        for (f, fc) in self.free.iter().enumerate() {
            free[free_perm[f]] = FreeCircle { host: map_host(fc.host), ..*fc };
        }
        let pieces = self
            .pieces
            .iter()
            .map(|p| Placement { outer: Dart { arc: arc_perm[p.outer.arc], side: p.outer.side }, host: map_host(p.host) })
            .collect();
        DottedGraph { crossings, arcs, free, pieces }.normalize(true).expect("relabelling preserves validity")
    }
}

impl fmt::Display for DottedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::dg::serialize(self))
    }
}
