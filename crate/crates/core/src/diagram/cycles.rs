//! Simple closed paths in the diagram and their classification into circle,
//! loop, bigon, crossing-including and outermost components.

use super::faces::Structure;
use super::{DottedGraph, End};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentKind {
    Circle,
    Loop,
    Bigon,
    CrossingIncluding,
    Outermost,
}

/// One step of a closed path: strand traversed forward or backward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub strand: usize,
    pub forward: bool,
}

/// A change of strand at a crossing: arrived through slot `from`, left through
/// slot `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Turn {
    pub crossing: usize,
    pub from: usize,
    pub to: usize,
    pub convex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentWitness {
    pub kind: ComponentKind,
    pub steps: Vec<Step>,
    /// Crossings passed straight through.
    pub straight: Vec<usize>,
    pub turns: Vec<Turn>,
    /// Face ids of the bounded disk.
    pub disk: Vec<usize>,
    pub dots: u64,
    /// All strands traversed in their own direction (or all against it).
    pub coherent: bool,
    /// Bigons only: the disk lies on the inner side of both bounding arcs.
    pub lens: bool,
}

impl ComponentWitness {
    pub fn strands(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.strand).collect()
    }
    pub fn crossings(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.straight.iter().copied().chain(self.turns.iter().map(|t| t.crossing)).collect();
        v.sort_unstable();
        v
    }
    /// Whether the disk lies on the left of the traversal.
    pub fn disk_on_left(&self, st: &Structure) -> bool {
        let s = self.steps[0];
        let d = 2 * s.strand + (!s.forward) as usize;
        self.disk.binary_search(&st.face_of(d)).is_ok()
    }
}

/// A raw simple cycle: steps plus the slot pairs used at each crossing.
#[derive(Clone, Debug)]
pub(crate) struct RawCycle {
    pub steps: Vec<Step>,
    /// (crossing, in-slot, out-slot) for every crossing on the cycle.
    pub passes: Vec<(usize, usize, usize)>,
}

/// All simple cycles whose turns all rotate the same way (this includes every
/// circle, loop, bigon and crossing-including candidate), plus free circles.
pub(crate) fn simple_cycles(g: &DottedGraph, st: &Structure) -> Vec<RawCycle> {
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let nx = g.crossings.len();
    let mut on_path = vec![false; nx];
    for s in 0..nx {
        for tau in [1usize, 3] {
            for e0 in 0..4 {
                let mut steps = Vec::new();
                let mut passes = Vec::new();
                on_path[s] = true;
                dfs(g, st, s, e0, s, e0, tau, &mut on_path, &mut steps, &mut passes, &mut seen, &mut out);
                on_path[s] = false;
            }
        }
    }
    for f in 0..g.free.len() {
        out.push(RawCycle { steps: vec![Step { strand: g.arcs.len() + f, forward: true }], passes: Vec::new() });
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &DottedGraph,
    st: &Structure,
    start: usize,
    first_out: usize,
    c: usize,
    out_slot: usize,
    tau: usize,
    on_path: &mut [bool],
    steps: &mut Vec<Step>,
    passes: &mut Vec<(usize, usize, usize)>,
    seen: &mut HashSet<Vec<usize>>,
    out: &mut Vec<RawCycle>,
) {
    let e = g.crossings[c].ends[out_slot];
    let forward = e.end == End::Tail;
    let (nc, in_slot) = if forward { st.head[e.arc] } else { st.tail[e.arc] };
    steps.push(Step { strand: e.arc, forward });
    if nc == start {
        if in_slot != first_out && (first_out == (in_slot + 2) % 4 || first_out == (in_slot + tau) % 4) {
            let mut key: Vec<usize> = steps.iter().map(|s| s.strand).collect();
            key.sort_unstable();
            if seen.insert(key) {
                let mut p = passes.clone();
                p.insert(0, (start, in_slot, first_out));
                out.push(RawCycle { steps: steps.clone(), passes: p });
            }
        }
    } else if nc > start && !on_path[nc] {
        on_path[nc] = true;
        for next in [(in_slot + 2) % 4, (in_slot + tau) % 4] {
            passes.push((nc, in_slot, next));
            dfs(g, st, start, first_out, nc, next, tau, on_path, steps, passes, seen, out);
            passes.pop();
        }
        on_path[nc] = false;
    }
    steps.pop();
}

/// Classifies every simple cycle. A cycle may appear under several kinds
/// (a free circle is a circle, crossing-including and outermost component).
pub fn components(g: &DottedGraph, st: &Structure) -> Vec<ComponentWitness> {
    let labels = st.labels(g).ok();
    let mut out = Vec::new();
    for raw in simple_cycles(g, st) {
        let strands: Vec<usize> = raw.steps.iter().map(|s| s.strand).collect();
        let inside = st.disk(&strands);
        let disk: Vec<usize> = (0..inside.len()).filter(|&f| inside[f]).collect();
        let s0 = raw.steps[0];
        let left = inside[st.face_of(2 * s0.strand + (!s0.forward) as usize)];
        let mut straight = Vec::new();
        let mut turns = Vec::new();
        for &(c, i, o) in &raw.passes {
            if o == (i + 2) % 4 {
                straight.push(c);
            } else {
                // o = i - 1 puts the corner sector on the left of the walk
                let corner_left = o == (i + 3) % 4;
                turns.push(super::cycles::Turn { crossing: c, from: i, to: o, convex: corner_left == left });
            }
        }
        let dots: u64 = strands.iter().map(|&s| g.strand_dots(s) as u64).sum();
        let coherent = raw.steps.iter().all(|s| s.forward) || raw.steps.iter().all(|s| !s.forward);
        let mut w = ComponentWitness {
            kind: ComponentKind::Circle,
            steps: raw.steps.clone(),
            straight,
            turns,
            disk,
            dots,
            coherent,
            lens: false,
        };
        let nturns = w.turns.len();
        let all_reflex = w.turns.iter().all(|t| !t.convex);
        if nturns == 0 {
            out.push(w.clone());
        }
        if nturns == 1 {
            w.kind = ComponentKind::Loop;
            out.push(w);
            continue;
        }
        if nturns == 2 && w.turns.iter().all(|t| t.convex) {
            w.kind = ComponentKind::Bigon;
            if let Some(l) = &labels {
                w.lens = raw.steps.iter().all(|s| {
                    let c = st.strand_circle[s.strand];
                    let (fl, fr) = st.strand_faces(s.strand);
                    let (fin, fout) = if inside[fl] { (fl, fr) } else { (fr, fl) };
                    l.winding[fin][c].abs() > l.winding[fout][c].abs()
                });
            }
            out.push(w);
            continue;
        }
        if all_reflex {
            w.kind = ComponentKind::CrossingIncluding;
            out.push(w.clone());
            if w.straight.is_empty() {
                w.kind = ComponentKind::Outermost;
                out.push(w);
            }
        }
    }
    out
}

impl DottedGraph {
    fn components_of(&self, kind: ComponentKind) -> Vec<ComponentWitness> {
        let st = self.structure();
        components(self, &st).into_iter().filter(|w| w.kind == kind).collect()
    }
    pub fn circle_components(&self) -> Vec<ComponentWitness> {
        self.components_of(ComponentKind::Circle)
    }
    pub fn loop_components(&self) -> Vec<ComponentWitness> {
        self.components_of(ComponentKind::Loop)
    }
    pub fn bigon_components(&self) -> Vec<ComponentWitness> {
        self.components_of(ComponentKind::Bigon)
    }
    pub fn crossing_including_components(&self) -> Vec<ComponentWitness> {
        self.components_of(ComponentKind::CrossingIncluding)
    }
    pub fn outermost_components(&self) -> Vec<ComponentWitness> {
        self.components_of(ComponentKind::Outermost)
    }
}
