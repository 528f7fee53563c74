//! Rebuilding diagrams after a move.
//!
//! Both kinds of surgery produce a new map (crossings + arcs + free circles)
//! together with a partition of its local face cycles into global faces and
//! the id of the unbounded one. The containment forest then follows from a
//! breadth-first walk of the piece/face incidence tree.

use crate::diagram::faces::Structure;
use crate::diagram::{Arc, ArcEnd, Crossing, DiagramError, DottedGraph, End, FreeCircle, Host, Placement, Side};
use std::collections::{HashMap, VecDeque};

fn containment(msg: &str) -> DiagramError {
    DiagramError::Containment(msg.to_string())
}

/// Builds a diagram from a bare map and a face partition. `token(st, cycle)`
/// names the global face of each local cycle; `plane` is the unbounded one.
pub(crate) fn assemble(
    crossings: Vec<Crossing>,
    arc_dots: Vec<u32>,
    free_dots: Vec<u32>,
    token: impl Fn(&Structure, usize) -> usize,
    plane: usize,
) -> Result<DottedGraph, DiagramError> {
    let bare = DottedGraph {
        crossings: crossings.clone(),
        arcs: arc_dots.iter().map(|&dots| Arc { dots, circle: 0 }).collect(),
        free: free_dots.iter().map(|&dots| FreeCircle { dots, sign: 1, circle: 0, host: Host::Plane }).collect(),
        pieces: Vec::new(),
    };
    let st = Structure::local(&bare)?;
    let n_map = st.n_map_pieces();
    let n_pieces = st.n_pieces();
    let n_cycles = st.cycles.len();

    let mut face_ids: HashMap<usize, usize> = HashMap::new();
    let mut cycle_face = vec![0; n_cycles];
    for (c, f) in cycle_face.iter_mut().enumerate() {
        let t = token(&st, c);
        let next = face_ids.len();
        *f = *face_ids.entry(t).or_insert(next);
    }
    let n_faces = face_ids.len().max(1);
    let plane_face = match face_ids.get(&plane) {
        Some(&f) => f,
        None if n_cycles == 0 => 0,
        None => return Err(containment("no cycle lies on the unbounded face")),
    };
    let mut face_cycles = vec![Vec::new(); n_faces];
    let mut piece_cycles = vec![Vec::new(); n_pieces];
    for c in 0..n_cycles {
        face_cycles[cycle_face[c]].push(c);
        piece_cycles[st.cycle_piece[c]].push(c);
    }

    // outer[piece] = cycle through which it hangs off its parent face;
    // parent_cycle[face] = the bounding cycle of that face (None for the plane)
    let mut outer = vec![usize::MAX; n_pieces];
    let mut parent_cycle: Vec<Option<usize>> = vec![None; n_faces];
    let mut face_seen = vec![false; n_faces];
    face_seen[plane_face] = true;
    let mut q = VecDeque::from([plane_face]);
    while let Some(f) = q.pop_front() {
        for &c in &face_cycles[f] {
            let p = st.cycle_piece[c];
            if outer[p] != usize::MAX {
                if Some(c) == parent_cycle[f] {
                    continue;
                }
                return Err(containment("face partition is not a nesting tree"));
            }
            outer[p] = c;
            for &c2 in &piece_cycles[p] {
                if c2 == c {
                    continue;
                }
                let f2 = cycle_face[c2];
                if face_seen[f2] {
                    return Err(containment("face partition is not a nesting tree"));
                }
                face_seen[f2] = true;
                parent_cycle[f2] = Some(c2);
                q.push_back(f2);
            }
        }
    }
    if outer.iter().any(|&c| c == usize::MAX) {
        return Err(containment("piece unreachable from the unbounded face"));
    }
    let host_of = |p: usize| -> Host {
        let f = cycle_face[outer[p]];
        match parent_cycle[f] {
            None => Host::Plane,
            Some(c) => {
                let q = st.cycle_piece[c];
                if q < n_map {
                    Host::Face(st.dart_of(st.cycles[c][0]))
                } else {
                    Host::Inside(q - n_map)
                }
            }
        }
    };
    let placements: Vec<Placement> =
        (0..n_map).map(|p| Placement { outer: st.dart_of(st.cycles[outer[p]][0]), host: host_of(p) }).collect();
    let free: Vec<(u32, i8, Host)> = (0..st.n_free)
        .map(|f| {
            let p = n_map + f;
            // the outer dart's partner is the interior; left interior = ccw
            let inner = st.cycles[outer[p]][0] ^ 1;
            (free_dots[f], if inner % 2 == 0 { 1 } else { -1 }, host_of(p))
        })
        .collect();
    DottedGraph::new(crossings, arc_dots, free, placements)
}

/// Removes the given strands. Crossings on them disappear and the strands
/// passing through those crossings are rejoined (dot counts add up); chains
/// that close up become free circles.
pub(crate) fn delete_strands(g: &DottedGraph, st: &Structure, doomed: &[usize]) -> Result<DottedGraph, DiagramError> {
    let n = g.arcs.len();
    let mut gone = vec![false; g.n_strands()];
    for &s in doomed {
        gone[s] = true;
    }
    let mut dead_crossing = vec![false; g.crossings.len()];
    for (c, x) in g.crossings.iter().enumerate() {
        dead_crossing[c] = x.ends.iter().any(|e| gone[e.arc]);
    }
    // successor of an arc whose head sits on a dead crossing
    let mut succ = vec![usize::MAX; n];
    for (c, x) in g.crossings.iter().enumerate() {
        if !dead_crossing[c] {
            continue;
        }
        let live: Vec<ArcEnd> = x.ends.iter().copied().filter(|e| !gone[e.arc]).collect();
        match live.as_slice() {
            [] => {}
            [a, b] if a.end != b.end => {
                let (h, t) = if a.end == End::Head { (a, b) } else { (b, a) };
                succ[h.arc] = t.arc;
            }
            _ => return Err(DiagramError::BadCrossing { crossing: c, reason: "cannot rejoin strands".into() }),
        }
    }
    let mut new_of_arc = vec![usize::MAX; n];
    let mut chains: Vec<Vec<usize>> = Vec::new();
    // chains starting at a live crossing
    for a in 0..n {
        if gone[a] || dead_crossing[st.tail[a].0] {
            continue;
        }
        let id = chains.len();
        let mut chain = vec![a];
        new_of_arc[a] = id;
        let mut cur = a;
        while dead_crossing[st.head[cur].0] {
            cur = succ[cur];
            new_of_arc[cur] = id;
            chain.push(cur);
        }
        chains.push(chain);
    }
    let n_new_arcs = chains.len();
    let mut closed: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if gone[a] || new_of_arc[a] != usize::MAX {
            continue;
        }
        let mut chain = Vec::new();
        let mut cur = a;
        loop {
            new_of_arc[cur] = usize::MAX - 1;
            chain.push(cur);
            cur = succ[cur];
            if cur == a {
                break;
            }
        }
        closed.push(chain);
    }
    let crossings: Vec<Crossing> = g
        .crossings
        .iter()
        .enumerate()
        .filter(|&(c, _)| !dead_crossing[c])
        .map(|(_, x)| Crossing { ends: x.ends.map(|e| ArcEnd { arc: new_of_arc[e.arc], end: e.end }) })
        .collect();
    let arc_dots: Vec<u32> = chains.iter().map(|ch| ch.iter().map(|&a| g.arcs[a].dots).sum()).collect();
    let old_free: Vec<usize> = (0..g.free.len()).filter(|&f| !gone[n + f]).collect();
    let mut free_dots: Vec<u32> = old_free.iter().map(|&f| g.free[f].dots).collect();
    free_dots.extend(closed.iter().map(|ch| ch.iter().map(|&a| g.arcs[a].dots).sum::<u32>()));

    // representative old strand of every new strand
    let mut rep: Vec<usize> = chains.iter().map(|ch| ch[0]).collect();
    rep.extend(old_free.iter().map(|&f| n + f));
    rep.extend(closed.iter().map(|ch| ch[0]));
    let class = st.regions(|s| !gone[s]);
    assemble(
        crossings,
        arc_dots,
        free_dots,
        |nst, c| {
            let d = nst.cycles[c][0];
            class[st.face_of(2 * rep[d / 2] + d % 2)]
        },
        0,
    )
    .map(|h| {
        debug_assert_eq!(h.n_strands(), n_new_arcs + old_free.len() + closed.len());
        h
    })
}

/// Saddle between strands `a` and `b`, both having face `r` on side `side`.
/// `cut_a`/`cut_b` are 1-based dot positions along each strand (from its
/// tail); those dots are consumed. If the region splits, its other contents
/// (and the point at infinity) follow the part bounded by the new `a`-strand
/// when `variant == 0`, the `b`-strand otherwise.
#[allow(clippy::too_many_arguments)]
pub(crate) fn saddle(
    g: &DottedGraph,
    st: &Structure,
    a: usize,
    b: usize,
    side: Side,
    cut_a: u32,
    cut_b: u32,
    variant: u8,
) -> Result<DottedGraph, DiagramError> {
    let n = g.arcs.len();
    let (da, db) = (g.strand_dots(a), g.strand_dots(b));
    if a == b || cut_a == 0 || cut_b == 0 || cut_a > da || cut_b > db {
        return Err(containment("invalid saddle cut"));
    }
    let sig = (side == Side::Right) as usize;
    let r = st.face_of(2 * a + sig);
    if st.face_of(2 * b + sig) != r {
        return Err(containment("saddle arcs do not share the region"));
    }
    let fa = st.face_of(2 * a + (1 - sig));
    let fb = st.face_of(2 * b + (1 - sig));
    let mut crossings = g.crossings.clone();
    let mut arc_dots: Vec<u32> = g.arcs.iter().map(|x| x.dots).collect();
    let mut free_dots: Vec<u32> = g.free.iter().map(|f| f.dots).collect();
    // new strand ids (in the new numbering) carrying the reconnected pieces
    let (xa, xb): (usize, Option<usize>);
    // old free circle removed (index into g.free)
    let mut removed_free: Option<usize> = None;
    match (a < n, b < n) {
        (true, true) => {
            // x: tail of a -> head of b; y: tail of b -> head of a
            let (ha, hb) = (st.head[a], st.head[b]);
            crossings[ha.0].ends[ha.1] = ArcEnd::head(b);
            crossings[hb.0].ends[hb.1] = ArcEnd::head(a);
            arc_dots[a] = (cut_a - 1) + (db - cut_b);
            arc_dots[b] = (cut_b - 1) + (da - cut_a);
            xa = a;
            xb = Some(b);
        }
        (true, false) | (false, true) => {
            let (arc, fc) = if a < n { (a, b - n) } else { (b, a - n) };
            arc_dots[arc] = da + db - 2;
            free_dots.remove(fc);
            removed_free = Some(fc);
            xa = arc;
            xb = None;
        }
        (false, false) => {
            let (keep, drop) = (a.min(b) - n, a.max(b) - n);
            free_dots[keep] = da + db - 2;
            free_dots.remove(drop);
            removed_free = Some(drop);
            xa = n + keep;
            xb = None;
        }
    }
    let new_to_old = |s: usize| -> usize {
        if s < n {
            s
        } else {
            let f = s - n;
            match removed_free {
                Some(rf) if f >= rf => n + f + 1,
                _ => s,
            }
        }
    };
    let merged = st.n_faces();
    let lone = st.n_faces() + 1;
    let tok = |f: usize| if f == fa || f == fb { merged } else { f };
    // local cycle ids of the two region-side darts, if they split
    let sig_darts: Vec<usize> = std::iter::once(2 * xa + sig).chain(xb.map(|x| 2 * x + sig)).collect();
    let other_darts: Vec<usize> = std::iter::once(2 * xa + 1 - sig).chain(xb.map(|x| 2 * x + 1 - sig)).collect();
    let plane = if r == 0 { r } else { tok(0) };
    assemble(
        crossings,
        arc_dots,
        free_dots,
        |nst, c| {
            let cyc = &nst.cycles[c];
            if let Some(&d) = cyc.iter().find(|d| sig_darts.contains(d)) {
                let split = sig_darts.len() == 2 && nst.dart_cycle[sig_darts[0]] != nst.dart_cycle[sig_darts[1]];
                if !split {
                    return r;
                }
                let is_x = d == sig_darts[0];
                let gets_contents = (variant == 0) == is_x;
                return if gets_contents { r } else { lone };
            }
            if cyc.iter().any(|d| other_darts.contains(d)) {
                return merged;
            }
            let d = cyc[0];
            tok(st.face_of(2 * new_to_old(d / 2) + d % 2))
        },
        plane,
    )
}
