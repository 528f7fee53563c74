//! Deformations I–IV: matching sites against [`RULE_TABLE`], applying them,
//! the IVa goodness test, and bounded reduction search.
//!
//! Sites refer to element ids of the diagram they were matched on. Face ids
//! are global face ids of [`DottedGraph::structure`].

pub mod rules;
pub mod search;
mod surgery;

pub use rules::{DotCount, Effect, MoveKind, Pattern, Rule, RULE_TABLE};
pub use search::{good_reduce, reduce_to_empty, Budget, CertStep, GoodReduction, ReductionCertificate, SearchError};

use crate::diagram::cycles::{components, ComponentKind};
use crate::diagram::faces::{Labels, Structure};
use crate::diagram::{DiagramError, DottedGraph, End, Side};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveOptions {
    /// Only good deformations (I, II, III, IVa).
    pub good_only: bool,
    /// Let regions be overlapped by regions of label ε.
    pub overlap_mode: bool,
}

impl MoveOptions {
    pub fn all() -> Self {
        MoveOptions { good_only: false, overlap_mode: true }
    }
    pub fn good() -> Self {
        MoveOptions { good_only: true, overlap_mode: true }
    }
}

/// A dot carried along its strand past crossings with overlapping circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slide {
    pub from: usize,
    pub to: usize,
    pub through: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveSite {
    pub kind: MoveKind,
    /// Name of the matching rule in [`RULE_TABLE`].
    pub rule: String,
    /// The deleted component's strands, or the two reconnected strands.
    pub strands: Vec<usize>,
    pub crossings: Vec<usize>,
    /// Global face of the reconnection (kind IV).
    pub face: Option<usize>,
    /// Side of both strands on which `face` lies (kind IV).
    pub side: Option<Side>,
    /// 1-based dot positions at which the two strands are cut (kind IV).
    pub cuts: Option<(u32, u32)>,
    pub slides: Vec<Slide>,
    /// Which part of a split region keeps its other contents (kind IV).
    pub variant: u8,
    pub epsilon: i8,
    /// Dot multiplicity bound by the site: the dots of the deleted component,
    /// or the dots used up on each strand by a reconnection.
    pub i: u32,
    /// Circles treated as overlapping regions of label ε.
    pub overlapping: Vec<usize>,
    pub adjacent: bool,
    pub good: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("SiteStale: site does not match the diagram")]
    SiteStale,
    #[error("move produced an invalid diagram: {0}")]
    Invalid(#[from] DiagramError),
}

/// Every face of the disk has label ε. In overlap mode some other circles
/// winding with the sign of ε (or not at all) across the disk may be set
/// aside as overlapping; the fewest such circles are chosen.
fn disk_ok(labels: &Labels, disk: &[usize], own: usize, eps: i32, overlap: bool) -> Option<Vec<usize>> {
    if disk.iter().all(|&f| labels.total[f] == eps) {
        return Some(Vec::new());
    }
    if !overlap {
        return None;
    }
    let n = labels.winding.first().map_or(0, |w| w.len());
    let optional: Vec<usize> = (0..n)
        .filter(|&j| j != own)
        .filter(|&j| disk.iter().any(|&f| labels.winding[f][j] != 0))
        .filter(|&j| disk.iter().all(|&f| eps * labels.winding[f][j] >= 0))
        .collect();
    if optional.len() > 16 {
        return None;
    }
    let fits = |mask: u32| {
        disk.iter().all(|&f| {
            let aside: i32 = (0..optional.len()).filter(|&k| mask & (1 << k) != 0).map(|k| labels.winding[f][optional[k]]).sum();
            labels.total[f] - aside == eps
        })
    };
    let mut masks: Vec<u32> = (1..(1u32 << optional.len())).collect();
    masks.sort_by_key(|m| m.count_ones());
    let m = masks.into_iter().find(|&m| fits(m))?;
    Some((0..optional.len()).filter(|&k| m & (1 << k) != 0).map(|k| optional[k]).collect())
}

/// Label ε for a region bounded by arcs of the `required` circles; in overlap
/// mode some circles of same-sign winding may be set aside as overlapping.
fn region_ok(w: &[i32], eps: i32, required: &[usize], overlap: bool) -> Option<Vec<usize>> {
    let total: i32 = w.iter().sum();
    if !overlap {
        return (total == eps).then(Vec::new);
    }
    let mut base = 0;
    let mut optional = Vec::new();
    for (j, &x) in w.iter().enumerate() {
        if required.contains(&j) || eps * x < 0 {
            base += x;
        } else if x != 0 {
            optional.push(j);
        }
    }
    if optional.len() > 16 {
        return None;
    }
    // smallest set of circles set aside, lexicographically first
    let mut best: Option<u32> = None;
    for mask in 0u32..(1 << optional.len()) {
        let kept: i32 = (0..optional.len()).filter(|&k| mask & (1 << k) == 0).map(|k| w[optional[k]]).sum();
        if base + kept == eps {
            let better = match best {
                None => true,
                Some(b) => mask.count_ones() < b.count_ones(),
            };
            if better {
                best = Some(mask);
            }
        }
    }
    best.map(|m| (0..optional.len()).filter(|&k| m & (1 << k) != 0).map(|k| optional[k]).collect())
}

struct Ctx<'a> {
    g: &'a DottedGraph,
    st: Structure,
    labels: Labels,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a DottedGraph) -> Result<Self, DiagramError> {
        let st = Structure::new(g)?;
        let labels = st.labels(g)?;
        Ok(Ctx { g, st, labels })
    }

    fn component_sites(&self, rule: &Rule, overlap: bool, out: &mut Vec<MoveSite>) {
        let want = match rule.pattern {
            Pattern::CircleComponent => ComponentKind::Circle,
            Pattern::LoopComponent => ComponentKind::Loop,
            Pattern::ArcPair { .. } => return,
        };
        let overlap = overlap && rule.overlap;
        for w in components(self.g, &self.st) {
            if w.kind != want || !rule.dots.admits(w.dots as u32) {
                continue;
            }
            let own = self.st.strand_circle[w.steps[0].strand];
            let forward = w.steps[0].forward;
            let eps = if w.disk_on_left(&self.st) == forward { 1 } else { -1 };
            let Some(over) = disk_ok(&self.labels, &w.disk, own, eps, overlap) else { continue };
            let mut strands = w.strands();
            strands.sort_unstable();
            out.push(MoveSite {
                kind: rule.kind,
                rule: rule.name.to_string(),
                strands,
                crossings: w.crossings(),
                face: None,
                side: None,
                cuts: None,
                slides: Vec::new(),
                variant: 0,
                epsilon: eps as i8,
                i: w.dots as u32,
                overlapping: over,
                adjacent: false,
                good: true,
            });
        }
    }

    fn side_of(d: usize) -> Side {
        if d % 2 == 0 {
            Side::Left
        } else {
            Side::Right
        }
    }

    /// Whether the two strands are consecutive on a boundary cycle of their
    /// common face (on the given side).
    fn consecutive(&self, a: usize, b: usize, sig: usize) -> Option<usize> {
        let n = self.g.arcs.len();
        if a >= n || b >= n {
            return None;
        }
        let next = |d: usize| Structure::next_dart(self.g, &self.st.head, &self.st.tail, d);
        let (da, db) = (2 * a + sig, 2 * b + sig);
        let at = |x: usize| if sig == 0 { self.st.head[x].0 } else { self.st.tail[x].0 };
        if next(da) == db {
            Some(at(a))
        } else if next(db) == da {
            Some(at(b))
        } else {
            None
        }
    }

    fn split_variants(&self, a: usize, b: usize, sig: usize, r: usize) -> Vec<u8> {
        let split = self.st.dart_cycle[2 * a + sig] == self.st.dart_cycle[2 * b + sig];
        let contents = r == 0 || self.st.faces[r].len() > 1;
        if split && contents {
            vec![0, 1]
        } else {
            vec![0]
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn push_pair_sites(
        &self,
        rule: &Rule,
        a: usize,
        b: usize,
        sig: usize,
        r: usize,
        over: &[usize],
        adjacent_at: Option<usize>,
        slides: Vec<Slide>,
        dots: (u32, u32),
        out: &mut Vec<MoveSite>,
    ) {
        let side = Self::side_of(sig);
        let mut crossings: Vec<usize> = adjacent_at.into_iter().chain(slides.iter().flat_map(|s| s.through.clone())).collect();
        crossings.sort_unstable();
        crossings.dedup();
        for ca in 1..=dots.0 {
            for cb in 1..=dots.1 {
                for v in self.split_variants(a, b, sig, r) {
                    out.push(MoveSite {
                        kind: MoveKind::IV,
                        rule: rule.name.to_string(),
                        strands: vec![a, b],
                        crossings: crossings.clone(),
                        face: Some(r),
                        side: Some(side),
                        cuts: Some((ca, cb)),
                        slides: slides.clone(),
                        variant: v,
                        epsilon: if sig == 0 { 1 } else { -1 },
                        i: 1,
                        overlapping: over.to_vec(),
                        adjacent: adjacent_at.is_some(),
                        good: false,
                    });
                }
            }
        }
    }

    /// Dotted strands pairwise on a common face, same side.
    fn pair_sites(&self, rule: &Rule, overlap: bool, out: &mut Vec<MoveSite>) {
        let overlap = overlap && rule.overlap;
        let g = self.g;
        for r in 0..self.st.n_faces() {
            let mut darts: Vec<usize> = self.st.faces[r].iter().flat_map(|&c| self.st.cycles[c].iter().copied()).collect();
            darts.sort_unstable();
            for (i, &d1) in darts.iter().enumerate() {
                for &d2 in &darts[i + 1..] {
                    let (a, b, sig) = (d1 / 2, d2 / 2, d1 % 2);
                    if d2 % 2 != sig || a == b {
                        continue;
                    }
                    let (na, nb) = (g.strand_dots(a), g.strand_dots(b));
                    if !rule.dots.admits(na) || !rule.dots.admits(nb) {
                        continue;
                    }
                    let eps = if sig == 0 { 1 } else { -1 };
                    let req = [self.st.strand_circle[a], self.st.strand_circle[b]];
                    let Some(over) = region_ok(&self.labels.winding[r], eps, &req, overlap) else { continue };
                    let adj = self.consecutive(a, b, sig);
                    if matches!(rule.pattern, Pattern::ArcPair { adjacent: true }) && adj.is_none() {
                        continue;
                    }
                    self.push_pair_sites(rule, a, b, sig, r, &over, adj, Vec::new(), (na, nb), out);
                }
            }
        }
        if overlap && matches!(rule.pattern, Pattern::ArcPair { adjacent: true }) {
            self.slide_sites(rule, out);
        }
    }

    /// Overlap-mode adjacency: one (or both) of two consecutive arcs has no
    /// dot, but a dot further along its strand can be brought next to the
    /// crossing past crossings with circles whose regions all have label of
    /// sign ε there.
    fn slide_sites(&self, rule: &Rule, out: &mut Vec<MoveSite>) {
        let g = self.g;
        let st = &self.st;
        let n = g.arcs.len();
        for r in 0..st.n_faces() {
            for &cy in &st.faces[r] {
                let darts = &st.cycles[cy];
                for (k, &d1) in darts.iter().enumerate() {
                    let d2 = darts[(k + 1) % darts.len()];
                    let sig = d1 % 2;
                    if d1 / 2 >= n || d2 % 2 != sig || d1 / 2 == d2 / 2 {
                        continue;
                    }
                    let (first, second) = (d1 / 2, d2 / 2);
                    let (na, nb) = (g.strand_dots(first), g.strand_dots(second));
                    if na > 0 && nb > 0 {
                        continue;
                    }
                    let eps = if sig == 0 { 1 } else { -1 };
                    let req = [st.strand_circle[first], st.strand_circle[second]];
                    let Some(over) = region_ok(&self.labels.winding[r], eps, &req, true) else { continue };
                    // with the face on the left, `first` arrives at the crossing
                    // and `second` leaves it; on the right, the reverse
                    let first_away_backward = sig == 0;
                    let mut slides = Vec::new();
                    let mut dots = (na, nb);
                    if na == 0 {
                        let Some(s) = self.chain_to_dot(first, first_away_backward, &req, eps, second) else { continue };
                        slides.push(s);
                        dots.0 = 1;
                    }
                    if nb == 0 {
                        let Some(s) = self.chain_to_dot(second, !first_away_backward, &req, eps, first) else { continue };
                        slides.push(s);
                        dots.1 = 1;
                    }
                    // both dots from one strand need two there
                    if let [s, t] = &slides[..] {
                        if s.from == t.from && g.arcs[s.from].dots < 2 {
                            continue;
                        }
                    }
                    let p = if sig == 0 { st.head[first].0 } else { st.tail[first].0 };
                    // store the pair in increasing order
                    let (a, b, dots, slides) = if first < second {
                        (first, second, dots, slides)
                    } else {
                        (second, first, (dots.1, dots.0), slides)
                    };
                    let mut local = Vec::new();
                    self.push_pair_sites(rule, a, b, sig, r, &over, Some(p), slides, dots, &mut local);
                    // a slid dot sits at the end of the arc facing the chain;
                    // cutting there is what keeps the new loop free of dots
                    out.extend(local);
                }
            }
        }
    }

    /// Walks away from arc `start` (backward against its orientation if
    /// `backward`) through crossings with circles of same-sign winding, up to
    /// the first dotted arc.
    fn chain_to_dot(&self, start: usize, backward: bool, req: &[usize], eps: i32, avoid: usize) -> Option<Slide> {
        let g = self.g;
        let st = &self.st;
        let mut cur = start;
        let mut through = Vec::new();
        for _ in 0..g.arcs.len() {
            let (c, k) = if backward { st.tail[cur] } else { st.head[cur] };
            let x = &g.crossings[c];
            let other = x.ends[(k + 1) % 4].arc;
            let j = st.strand_circle[other];
            if req.contains(&j) {
                return None;
            }
            for s in [x.ends[(k + 1) % 4].arc, x.ends[(k + 3) % 4].arc] {
                let (fl, fr) = st.strand_faces(s);
                if eps * self.labels.winding[fl][j] < 0 || eps * self.labels.winding[fr][j] < 0 {
                    return None;
                }
            }
            through.push(c);
            let next = x.ends[(k + 2) % 4];
            debug_assert_eq!(next.end, if backward { End::Head } else { End::Tail });
            cur = next.arc;
            if cur == start || cur == avoid {
                return None;
            }
            if g.arcs[cur].dots > 0 {
                return Some(Slide { from: cur, to: start, through });
            }
        }
        None
    }
}

fn apply_site(g: &DottedGraph, st: &Structure, site: &MoveSite) -> Result<DottedGraph, MoveError> {
    match site.kind {
        MoveKind::I | MoveKind::II | MoveKind::III => Ok(surgery::delete_strands(g, st, &site.strands)?),
        MoveKind::IV => {
            let mut h = g.clone();
            for s in &site.slides {
                if h.arcs[s.from].dots == 0 {
                    return Err(MoveError::SiteStale);
                }
                h.arcs[s.from].dots -= 1;
                h.arcs[s.to].dots += 1;
            }
            let (a, b) = (site.strands[0], site.strands[1]);
            let (ca, cb) = site.cuts.ok_or(MoveError::SiteStale)?;
            let side = site.side.ok_or(MoveError::SiteStale)?;
            Ok(surgery::saddle(&h, st, a, b, side, ca, cb, site.variant)?)
        }
    }
}

/// The new strands that can carry the loop created by a reconnection.
fn created_loop_site(result: &DottedGraph, site: &MoveSite, overlap: bool) -> Option<MoveSite> {
    let ctx = Ctx::new(result).ok()?;
    let mut sites = Vec::new();
    let iii = RULE_TABLE.iter().find(|r| r.kind == MoveKind::III).unwrap();
    ctx.component_sites(iii, overlap, &mut sites);
    let n = result.arcs().len();
    sites.into_iter().find(|s| s.strands.len() == 1 && s.strands[0] < n && site.strands.contains(&s.strands[0]))
}

pub fn applicable_moves(g: &DottedGraph, opts: MoveOptions) -> Vec<MoveSite> {
    let Ok(ctx) = Ctx::new(g) else { return Vec::new() };
    let mut out: Vec<MoveSite> = Vec::new();
    for rule in RULE_TABLE {
        if opts.good_only && !rule.good {
            continue;
        }
        let mut found = Vec::new();
        match rule.pattern {
            Pattern::CircleComponent | Pattern::LoopComponent => ctx.component_sites(rule, opts.overlap_mode, &mut found),
            Pattern::ArcPair { .. } => ctx.pair_sites(rule, opts.overlap_mode, &mut found),
        }
        for mut s in found {
            if s.kind == MoveKind::IV && s.adjacent {
                s.good = apply_site(g, &ctx.st, &s)
                    .ok()
                    .and_then(|h| created_loop_site(&h, &s, opts.overlap_mode))
                    .is_some();
            }
            if opts.good_only && !s.good {
                continue;
            }
            // the same reconnection may be found by IV and IVa
            if let Some(prev) = out.iter_mut().find(|p| same_site(p, &s)) {
                if s.good && !prev.good {
                    *prev = s;
                }
                continue;
            }
            out.push(s);
        }
    }
    out
}

fn same_site(a: &MoveSite, b: &MoveSite) -> bool {
    a.kind == b.kind
        && a.strands == b.strands
        && a.face == b.face
        && a.side == b.side
        && a.cuts == b.cuts
        && a.slides == b.slides
        && a.variant == b.variant
}

/// Applies a site matched on `g` (in either mode).
pub fn apply(g: &DottedGraph, site: &MoveSite) -> Result<DottedGraph, MoveError> {
    let listed = applicable_moves(g, MoveOptions::all())
        .into_iter()
        .chain(if site.overlapping.is_empty() {
            applicable_moves(g, MoveOptions { good_only: false, overlap_mode: false })
        } else {
            Vec::new()
        })
        .any(|s| same_site(&s, site));
    if !listed {
        return Err(MoveError::SiteStale);
    }
    apply_unchecked(g, site)
}

/// Applies without re-matching; the site must come from `applicable_moves(g, ..)`.
pub fn apply_unchecked(g: &DottedGraph, site: &MoveSite) -> Result<DottedGraph, MoveError> {
    let st = Structure::new(g)?;
    apply_site(g, &st, site)
}

pub fn is_good_site(g: &DottedGraph, site: &MoveSite) -> bool {
    if site.kind != MoveKind::IV {
        return true;
    }
    if !site.adjacent {
        return false;
    }
    apply_unchecked(g, site).ok().and_then(|h| created_loop_site(&h, site, true)).is_some()
}

pub fn is_reducible(g: &DottedGraph) -> bool {
    !applicable_moves(g, MoveOptions::all()).is_empty()
}

/// After a good reconnection, the kind-III site deleting the loop it created.
pub fn follow_up_loop(result: &DottedGraph, site: &MoveSite) -> Option<MoveSite> {
    created_loop_site(result, site, true)
}
