//! Recognizers for the theorem configurations: two crossing circles, straight
//! and ring chains of lenses, and three circles meeting in one disk.

use crate::diagram::faces::{Labels, Structure};
use crate::diagram::DottedGraph;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ShapeKind {
    Thm1,
    Thm2Chain(usize),
    Thm2Ring(usize),
    Thm3,
}

impl std::fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ShapeKind::Thm1 => write!(f, "thm1"),
            ShapeKind::Thm2Chain(n) => write!(f, "chain{n}"),
            ShapeKind::Thm2Ring(n) => write!(f, "ring{n}"),
            ShapeKind::Thm3 => write!(f, "thm3"),
        }
    }
}

/// The lens of two consecutive circles `C_i`, `C_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bigon {
    pub face: usize,
    /// Boundary strand belonging to `C_{i+1}`.
    pub left: usize,
    /// Boundary strand belonging to `C_i`.
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeWitness {
    pub kind: ShapeKind,
    /// Circle ids in chain order.
    pub circles: Vec<usize>,
    /// Label of each circle's disk, in the same order.
    pub epsilon: Vec<i8>,
    /// Lenses between consecutive circles (closing lens last for rings).
    pub bigons: Vec<Bigon>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DotLetter {
    L,
    R,
    B,
    E,
}

impl DotLetter {
    pub fn as_char(self) -> char {
        match self {
            DotLetter::L => 'l',
            DotLetter::R => 'r',
            DotLetter::B => 'b',
            DotLetter::E => 'e',
        }
    }
}

struct Circles {
    st: Structure,
    labels: Labels,
    n: usize,
    cross: Vec<Vec<usize>>,
}

impl Circles {
    /// `None` unless every immersed circle is embedded.
    fn new(g: &DottedGraph) -> Option<Self> {
        let st = Structure::new(g).ok()?;
        let labels = st.labels(g).ok()?;
        let n = g.n_circles();
        let mut cross = vec![vec![0; n]; n];
        for x in g.crossings() {
            let a = st.strand_circle[x.ends[0].arc];
            let b = st.strand_circle[x.ends[1].arc];
            if a == b {
                return None;
            }
            cross[a][b] += 1;
            cross[b][a] += 1;
        }
        Some(Circles { st, labels, n, cross })
    }

    fn inside(&self, f: usize, c: usize) -> bool {
        self.labels.winding[f][c] != 0
    }

    fn common(&self, cs: &[usize]) -> Vec<usize> {
        (0..self.st.n_faces()).filter(|&f| cs.iter().all(|&c| self.inside(f, c))).collect()
    }

    fn epsilon(&self, c: usize) -> i8 {
        let f = (0..self.st.n_faces()).find(|&f| self.inside(f, c)).expect("a circle bounds a disk");
        self.labels.winding[f][c] as i8
    }

    /// Single lens face of two circles crossing twice, bounded by one strand
    /// of each.
    fn bigon(&self, right_circle: usize, left_circle: usize) -> Option<Bigon> {
        let faces = self.common(&[right_circle, left_circle]);
        let [face] = faces[..] else { return None };
        if self.st.faces[face].len() != 1 {
            return None;
        }
        let darts = &self.st.cycles[self.st.faces[face][0]];
        if darts.len() != 2 {
            return None;
        }
        let of = |c: usize| darts.iter().map(|d| d / 2).find(|&s| self.st.strand_circle[s] == c);
        Some(Bigon { face, left: of(left_circle)?, right: of(right_circle)? })
    }

    fn disjoint(&self, a: usize, b: usize) -> bool {
        self.cross[a][b] == 0 && self.common(&[a, b]).is_empty()
    }

    fn witness(&self, kind: ShapeKind, order: Vec<usize>, closed: bool) -> Option<ShapeWitness> {
        let k = order.len();
        let pairs = if closed { k } else { k - 1 };
        let bigons = (0..pairs).map(|i| self.bigon(order[i], order[(i + 1) % k])).collect::<Option<Vec<_>>>()?;
        let epsilon = order.iter().map(|&c| self.epsilon(c)).collect();
        Some(ShapeWitness { kind, circles: order, epsilon, bigons })
    }

    /// Lens graph as a path or cycle through all circles, non-neighbours
    /// disjoint. Path ends at the smaller end id; cycles start at circle 0 and
    /// continue towards its smaller neighbour.
    fn chain_order(&self) -> Option<(Vec<usize>, bool)> {
        let n = self.n;
        let adj: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| self.cross[a][b] == 2).collect()).collect();
        for a in 0..n {
            for b in a + 1..n {
                let c = self.cross[a][b];
                if c != 0 && c != 2 {
                    return None;
                }
            }
        }
        let degs: Vec<usize> = adj.iter().map(|v| v.len()).collect();
        if degs.iter().any(|&d| d == 0 || d > 2) {
            return None;
        }
        let ends: Vec<usize> = (0..n).filter(|&a| degs[a] == 1).collect();
        let closed = ends.is_empty();
        if !closed && ends.len() != 2 {
            return None;
        }
        let start = if closed { 0 } else { ends[0] };
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = adj[cur].iter().copied().filter(|&x| x != prev).min();
            match next {
                Some(x) if x != start && !order.contains(&x) => {
                    prev = cur;
                    cur = x;
                    order.push(x);
                }
                _ => break,
            }
        }
        if order.len() != n {
            return None;
        }
        for i in 0..n {
            for j in i + 1..n {
                let neighbours = j == i + 1 || (closed && i == 0 && j == n - 1);
                if !neighbours && !self.disjoint(order[i], order[j]) {
                    return None;
                }
            }
        }
        Some((order, closed))
    }
}

/// Chain witness for any `n >= 2` circles (`Thm2Chain(2)` is the two-circle
/// lens of [`ShapeKind::Thm1`]).
pub fn chain_witness(g: &DottedGraph) -> Option<ShapeWitness> {
    let cs = Circles::new(g)?;
    if cs.n < 2 {
        return None;
    }
    let (order, closed) = cs.chain_order()?;
    if closed {
        return None;
    }
    cs.witness(ShapeKind::Thm2Chain(cs.n), order, false)
}

pub fn detect_shapes(g: &DottedGraph) -> Vec<ShapeWitness> {
    let Some(cs) = Circles::new(g) else { return Vec::new() };
    let n = cs.n;
    let mut out = Vec::new();
    if n == 2 {
        if cs.cross[0][1] == 2 {
            // both disks strictly larger than the lens
            let lens = cs.common(&[0, 1]);
            let proper = (0..2).all(|c| (0..cs.st.n_faces()).any(|f| cs.inside(f, c) && !lens.contains(&f)));
            if proper && !lens.is_empty() {
                out.extend(cs.witness(ShapeKind::Thm1, vec![0, 1], false));
            }
        }
        return out;
    }
    if n >= 3 {
        if let Some((order, closed)) = cs.chain_order() {
            let triple_free = n > 3 || cs.common(&[0, 1, 2]).is_empty();
            if !closed {
                out.extend(cs.witness(ShapeKind::Thm2Chain(n), order, false));
            } else if triple_free {
                out.extend(cs.witness(ShapeKind::Thm2Ring(n), order, true));
            }
        }
    }
    if n == 3 && (0..3).all(|a| (a + 1..3).all(|b| cs.cross[a][b] == 2)) {
        let triple = cs.common(&[0, 1, 2]);
        if triple.len() == 1 {
            out.push(ShapeWitness {
                kind: ShapeKind::Thm3,
                circles: vec![0, 1, 2],
                epsilon: (0..3).map(|c| cs.epsilon(c)).collect(),
                bigons: Vec::new(),
            });
        }
    }
    out
}

/// Totals of the lens faces in chain order.
pub fn bigon_label_sequence(g: &DottedGraph, w: &ShapeWitness) -> Vec<i32> {
    let labels = g.labels().expect("witness diagrams are valid");
    w.bigons.iter().map(|b| labels.total[b.face]).collect()
}

pub fn dot_existence_sequence(g: &DottedGraph, w: &ShapeWitness) -> Vec<DotLetter> {
    w.bigons
        .iter()
        .map(|b| match (g.strand_dots(b.left) > 0, g.strand_dots(b.right) > 0) {
            (true, true) => DotLetter::B,
            (true, false) => DotLetter::L,
            (false, true) => DotLetter::R,
            (false, false) => DotLetter::E,
        })
        .collect()
}

pub fn letters(seq: &[DotLetter]) -> String {
    seq.iter().map(|l| l.as_char()).collect()
}
