//! Canonical codes: per piece, the least breadth-first encoding over all
//! (crossing, slot) roots; nested pieces are encoded inside the face cycle
//! hosting them; top-level codes are sorted.

use super::faces::{dart_index, Structure};
use super::{DottedGraph, End, Host};
use std::collections::VecDeque;
use std::fmt::Write;

struct PieceEnc {
    code: String,
    cross_order: Vec<usize>,
    offsets: Vec<usize>,
    arc_order: Vec<usize>,
    /// Child pieces in canonical order.
    children: Vec<usize>,
}

struct Canon<'a> {
    g: &'a DottedGraph,
    st: &'a Structure,
    /// children hosted by each cycle (map pieces) — indexed by cycle id
    by_cycle: Vec<Vec<usize>>,
    /// children hosted inside each free circle
    by_free: Vec<Vec<usize>>,
    top: Vec<usize>,
    memo: Vec<Option<PieceEnc>>,
}

impl<'a> Canon<'a> {
    fn new(g: &'a DottedGraph, st: &'a Structure) -> Self {
        let n_map = st.n_map_pieces();
        let mut by_cycle = vec![Vec::new(); st.cycles.len()];
        let mut by_free = vec![Vec::new(); st.n_free];
        let mut top = Vec::new();
        for p in 0..st.n_pieces() {
            let h = if p < n_map { g.pieces[p].host } else { g.free[p - n_map].host };
            match h {
                Host::Plane => top.push(p),
                Host::Face(d) => by_cycle[st.dart_cycle[dart_index(d)]].push(p),
                Host::Inside(f) => by_free[f].push(p),
            }
        }
        let memo = (0..st.n_pieces()).map(|_| None).collect();
        Canon { g, st, by_cycle, by_free, top, memo }
    }

    fn code(&mut self, p: usize) -> String {
        if self.memo[p].is_none() {
            let e = self.encode(p);
            self.memo[p] = Some(e);
        }
        self.memo[p].as_ref().unwrap().code.clone()
    }

    fn sorted_children(&mut self, kids: &[usize]) -> Vec<(String, usize)> {
        let mut v: Vec<(String, usize)> = kids.iter().map(|&q| (self.code(q), q)).collect();
        v.sort();
        v
    }

    fn encode(&mut self, p: usize) -> PieceEnc {
        let n_map = self.st.n_map_pieces();
        if p >= n_map {
            let f = p - n_map;
            let fc = self.g.free[f];
            let kids = self.by_free[f].clone();
            let kids = self.sorted_children(&kids);
            let mut code = format!("F{}{}(", fc.dots, if fc.sign > 0 { '+' } else { '-' });
            for (c, _) in &kids {
                code.push_str(c);
            }
            code.push(')');
            return PieceEnc {
                code,
                cross_order: Vec::new(),
                offsets: Vec::new(),
                arc_order: Vec::new(),
                children: kids.into_iter().map(|(_, q)| q).collect(),
            };
        }
        // children per cycle, with codes, computed once
        let cycles: Vec<usize> = (0..self.st.cycles.len()).filter(|&c| self.st.cycle_piece[c] == p).collect();
        let mut kid_codes: Vec<(usize, Vec<(String, usize)>)> = Vec::new();
        for &c in &cycles {
            let kids = self.by_cycle[c].clone();
            if !kids.is_empty() {
                let k = self.sorted_children(&kids);
                kid_codes.push((c, k));
            }
        }
        let mut best: Option<PieceEnc> = None;
        for &c in &self.st.piece_crossings[p] {
            for k in 0..4 {
                let e = self.encode_root(p, c, k, &kid_codes);
                if best.as_ref().map_or(true, |b| e.code < b.code) {
                    best = Some(e);
                }
            }
        }
        best.expect("map pieces have crossings")
    }

    fn encode_root(&self, p: usize, root: usize, slot: usize, kid_codes: &[(usize, Vec<(String, usize)>)]) -> PieceEnc {
        let g = self.g;
        let st = self.st;
        let mut cross_label = vec![usize::MAX; g.crossings.len()];
        let mut arc_label = vec![usize::MAX; g.arcs.len()];
        let mut cross_order = vec![root];
        let mut offsets = vec![slot];
        let mut arc_order = Vec::new();
        cross_label[root] = 0;
        let mut q = VecDeque::from([root]);
        let mut code = String::from("P");
        while let Some(c) = q.pop_front() {
            let o = offsets[cross_label[c]];
            code.push('[');
            for j in 0..4 {
                let e = g.crossings[c].ends[(o + j) % 4];
                if arc_label[e.arc] == usize::MAX {
                    arc_label[e.arc] = arc_order.len();
                    arc_order.push(e.arc);
                }
                let _ = write!(code, "{}{}", arc_label[e.arc], if e.end == End::Head { 'h' } else { 't' });
                let (c2, k2) = if e.end == End::Head { st.tail[e.arc] } else { st.head[e.arc] };
                if cross_label[c2] == usize::MAX {
                    cross_label[c2] = cross_order.len();
                    cross_order.push(c2);
                    offsets.push(k2);
                    q.push_back(c2);
                }
            }
            code.push(']');
        }
        code.push('d');
        for &a in &arc_order {
            let _ = write!(code, "{},", g.arcs[a].dots);
        }
        let key = |cyc: usize| -> usize {
            st.cycles[cyc].iter().map(|&d| 2 * arc_label[d / 2] + d % 2).min().unwrap()
        };
        let _ = write!(code, "o{}", key(st.outer_cycle[p]));
        let mut kids: Vec<(usize, &Vec<(String, usize)>)> = kid_codes.iter().map(|(c, k)| (key(*c), k)).collect();
        kids.sort_by_key(|(k, _)| *k);
        let mut children = Vec::new();
        for (k, list) in kids {
            let _ = write!(code, "c{}(", k);
            for (s, q) in list {
                code.push_str(s);
                children.push(*q);
            }
            code.push(')');
        }
        PieceEnc { code, cross_order, offsets, arc_order, children }
    }
}

/// Canonical code; equal iff the diagrams are isomorphic as oriented plane
/// diagrams with dot counts.
pub fn canonical_code(g: &DottedGraph) -> String {
    let st = g.structure();
    let mut cn = Canon::new(g, &st);
    let top = cn.top.clone();
    let mut codes: Vec<String> = top.iter().map(|&p| cn.code(p)).collect();
    codes.sort();
    let mut s = String::from("G");
    for c in codes {
        s.push_str(&c);
    }
    s
}

/// The same diagram with ids assigned in canonical traversal order.
pub fn canonical_form(g: &DottedGraph) -> DottedGraph {
    canonical_form_with_arcs(g).0
}

/// Canonical form plus the old-arc -> new-arc map.
pub(crate) fn canonical_form_with_arcs(g: &DottedGraph) -> (DottedGraph, Vec<usize>) {
    let st = g.structure();
    let mut cn = Canon::new(g, &st);
    let top = cn.top.clone();
    let order = cn.sorted_children(&top);
    let n_map = st.n_map_pieces();
    let mut arc_perm = vec![0; g.arcs.len()];
    let mut cross_perm = vec![0; g.crossings.len()];
    let mut shift = vec![0; g.crossings.len()];
    let mut free_perm = vec![0; g.free.len()];
    let (mut na, mut nc, mut nf) = (0, 0, 0);
    let mut stack: Vec<usize> = order.into_iter().rev().map(|(_, p)| p).collect();
    while let Some(p) = stack.pop() {
        cn.code(p);
        let e = cn.memo[p].as_ref().unwrap();
        if p >= n_map {
            free_perm[p - n_map] = nf;
            nf += 1;
        } else {
            for (i, &c) in e.cross_order.iter().enumerate() {
                cross_perm[c] = nc;
                shift[c] = e.offsets[i];
                nc += 1;
            }
            for &a in &e.arc_order {
                arc_perm[a] = na;
                na += 1;
            }
        }
        for &q in e.children.iter().rev() {
            stack.push(q);
        }
    }
    let h = g.relabel(&arc_perm, &cross_perm, &free_perm, &shift);
    (h, arc_perm)
}

impl DottedGraph {
    pub fn canonical_code(&self) -> String {
        canonical_code(self)
    }
    pub fn canonicalize(&self) -> DottedGraph {
        canonical_form(self)
    }
}
