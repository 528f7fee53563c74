//! Bounded realization search: a lattice polytope in a window whose dotted
//! graph is a given diagram. Failure inside the bounds proves nothing.
//!
//! Every circle with `d` dots needs a component with exactly `2d` corners, so
//! the census is restricted to those corner counts, to the self-crossing
//! counts of the circles and to the pairwise crossing counts of the diagram.
//! Candidates are stretch-class representatives; the first hit in enumeration
//! order wins.

use crate::census::enumerate::{crossing_count, fold_components, window_components, Classes, EnumSpec, PairRule};
use crate::diagram::DottedGraph;
use crate::extract::try_extract;
use crate::polytope::{LatticePolytope, PolytopeComponent};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizeBounds {
    pub width: i64,
    pub height: i64,
    /// Per component.
    pub max_corners: usize,
    /// Candidate polytopes examined before giving up.
    pub max_polytopes: usize,
}

impl RealizeBounds {
    pub fn new(width: i64, height: i64, max_corners: usize) -> Self {
        RealizeBounds { width, height, max_corners, max_polytopes: 2_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum RealizeError {
    #[error("NotFoundWithinBounds: no polytope in {width}x{height} with at most {max_corners} corners per component")]
    NotFoundWithinBounds { width: i64, height: i64, max_corners: usize },
    #[error("BudgetExceeded: gave up after {examined} candidate polytopes")]
    BudgetExceeded { examined: usize },
}

/// Corner count and self-crossing count of one closed curve.
type Profile = (usize, usize);

fn profile(c: &PolytopeComponent) -> Profile {
    // each self-crossing is seen once from either segment
    (c.len(), crossing_count(c, c) / 2)
}

fn circle_profiles(g: &DottedGraph) -> (Vec<Profile>, Vec<Vec<usize>>) {
    let n = g.n_circles();
    let mut dots = vec![0usize; n];
    for s in 0..g.n_strands() {
        dots[g.strand_circle(s)] += g.strand_dots(s) as usize;
    }
    let mut selfx = vec![0usize; n];
    let mut cross = vec![vec![0usize; n]; n];
    for x in g.crossings() {
        let a = g.strand_circle(x.ends[0].arc);
        let b = g.strand_circle(x.ends[1].arc);
        if a == b {
            selfx[a] += 1;
        } else {
            cross[a][b] += 1;
            cross[b][a] += 1;
        }
    }
    ((0..n).map(|c| (2 * dots[c], selfx[c])).collect(), cross)
}

/// Only component pairs that occur between two circles of the diagram.
struct Triples(HashSet<(Profile, Profile, usize)>);

impl PairRule for Triples {
    fn allows(&self, a: &PolytopeComponent, b: &PolytopeComponent) -> bool {
        let (pa, pb) = (profile(a), profile(b));
        let (lo, hi) = if pa <= pb { (pa, pb) } else { (pb, pa) };
        self.0.contains(&(lo, hi, crossing_count(a, b)))
    }
}

pub fn find_realization(g: &DottedGraph, bounds: RealizeBounds) -> Result<LatticePolytope, RealizeError> {
    let not_found =
        || RealizeError::NotFoundWithinBounds { width: bounds.width, height: bounds.height, max_corners: bounds.max_corners };
    if g.is_empty() {
        return Ok(LatticePolytope::empty());
    }
    let (profiles, cross) = circle_profiles(g);
    let n = profiles.len();
    let need = profiles.iter().map(|p| p.0).max().unwrap_or(0);
    if profiles.iter().any(|p| p.0 < 4) || need > bounds.max_corners || bounds.width > 62 || bounds.height > 62 {
        return Err(not_found());
    }
    let spec = EnumSpec {
        width: bounds.width,
        height: bounds.height,
        min_components: n,
        max_components: n,
        max_corners: need,
        simple_only: profiles.iter().all(|p| p.1 == 0),
        classes: Classes::Stretch,
    };
    if spec.check().is_err() {
        return Err(not_found());
    }
    let wanted: HashSet<Profile> = profiles.iter().copied().collect();
    let comps: Vec<PolytopeComponent> =
        window_components(&spec).into_iter().filter(|c| wanted.contains(&profile(c))).collect();
    let mut triples = HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let (pa, pb) = (profiles[a], profiles[b]);
            let (lo, hi) = if pa <= pb { (pa, pb) } else { (pb, pa) };
            triples.insert((lo, hi, cross[a][b]));
        }
    }
    let code = g.canonical_code();
    let best = AtomicUsize::new(usize::MAX);
    let examined = AtomicUsize::new(0);
    let over = AtomicBool::new(false);
    let skip = |i: usize| i > best.load(Ordering::Relaxed) || over.load(Ordering::Relaxed);
    let mut found = None;
    fold_components(
        &comps,
        &spec,
        &Triples(triples),
        &skip,
        &|| false,
        || None,
        |acc: &mut Option<LatticePolytope>, p| {
            if examined.fetch_add(1, Ordering::Relaxed) >= bounds.max_polytopes {
                over.store(true, Ordering::Relaxed);
                return false;
            }
            let mut key: Vec<Profile> = p.components().iter().map(profile).collect();
            let mut want = profiles.clone();
            key.sort();
            want.sort();
            if key != want {
                return true;
            }
            let Ok((h, _)) = try_extract(&p) else { return true };
            if h.canonical_code() != code {
                return true;
            }
            // later seeds need not start; merging in seed order keeps the earliest
            let s = comps.iter().position(|c| *c == p.components()[0]).unwrap_or(usize::MAX);
            best.fetch_min(s, Ordering::Relaxed);
            *acc = Some(p);
            false
        },
        |acc| {
            if found.is_none() {
                found = acc;
            }
        },
    );
    match found {
        Some(p) => Ok(p),
        None if over.load(Ordering::Relaxed) => Err(RealizeError::BudgetExceeded { examined: examined.load(Ordering::Relaxed) }),
        None => Err(not_found()),
    }
}
