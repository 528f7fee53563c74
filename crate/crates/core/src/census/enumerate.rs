//! Polytopes in a window, one per class modulo translation and component order.
//!
//! A window `W x H` admits corner coordinates `0..=W` by `0..=H`. Components
//! are alternating closed paths `D_i = (x_i, y_i)`, `X_i = (x_{i+1}, y_i)`
//! written from their lexicographically least start dot; a polytope is a
//! strictly increasing list of such components, pairwise generic, whose common
//! bounding box touches both axes.

use crate::par::prelude::*;
use crate::polytope::{generic_pair, generic_single, LatticePolytope, PolytopeComponent};
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub width: i64,
    pub height: i64,
    pub min_components: usize,
    pub max_components: usize,
    /// Per component; at least 4.
    pub max_corners: usize,
    /// Skip components with self-crossings.
    pub simple_only: bool,
    pub classes: Classes,
}

/// Which polytopes represent a class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classes {
    /// One polytope per translation class: the common bounding box touches
    /// both axes.
    #[default]
    Translation,
    /// One polytope per class of monotone coordinate stretchings: the used x
    /// values are exactly `0..=a` and the used y values `0..=b`. Stretching
    /// is an isotopy, so every diagram of the window census still appears.
    Stretch,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("window must be at least 2x2, got {0}x{1}")]
    Window(i64, i64),
    #[error("max_corners must be at least 4, got {0}")]
    Corners(usize),
    #[error("component bounds {0}..={1} are empty")]
    Components(usize, usize),
}

impl EnumSpec {
    pub fn new(width: i64, height: i64, max_components: usize, max_corners: usize) -> Self {
        EnumSpec { width, height, min_components: 1, max_components, max_corners, simple_only: false, classes: Classes::Translation }
    }

    pub fn check(&self) -> Result<(), SpecError> {
        if self.width < 2 || self.height < 2 {
            return Err(SpecError::Window(self.width, self.height));
        }
        if self.max_corners < 4 {
            return Err(SpecError::Corners(self.max_corners));
        }
        if self.min_components == 0 || self.min_components > self.max_components {
            return Err(SpecError::Components(self.min_components, self.max_components));
        }
        Ok(())
    }
}

/// Cyclic sequences of length `k` over `0..=max` with consecutive entries distinct.
fn cyclic_sequences(k: usize, max: i64) -> Vec<Vec<i64>> {
    fn go(k: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            if cur[0] != cur[k - 1] {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=max {
            if cur.last() != Some(&v) {
                cur.push(v);
                go(k, max, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, max, &mut Vec::with_capacity(k), &mut out);
    out
}

fn least_rotation(xs: &[i64], ys: &[i64]) -> bool {
    let k = xs.len();
    let key = |s: usize| (0..k).map(move |i| (xs[(s + i) % k], ys[(s + i) % k]));
    (1..k).all(|s| key(0).le(key(s)))
}

/// Every component fitting the window, each written once.
pub fn window_components(spec: &EnumSpec) -> Vec<PolytopeComponent> {
    let mut out = Vec::new();
    for k in 2..=spec.max_corners / 2 {
        let xs_all = cyclic_sequences(k, spec.width);
        let ys_all = cyclic_sequences(k, spec.height);
        let chunk: Vec<Vec<PolytopeComponent>> = xs_all
            .par_iter()
            .map(|xs| {
                let mut v = Vec::new();
                for ys in &ys_all {
                    if !least_rotation(xs, ys) {
                        continue;
                    }
                    let Ok(c) = PolytopeComponent::from_coordinates(xs, ys) else { continue };
                    if generic_single(&c) && (!spec.simple_only || c.is_simple()) {
                        v.push(c);
                    }
                }
                v
            })
            .collect();
        out.extend(chunk.into_iter().flatten());
    }
    out
}

/// Number of transversal intersections between two components.
pub fn crossing_count(a: &PolytopeComponent, b: &PolytopeComponent) -> usize {
    let (alo, ahi) = a.bbox();
    let (blo, bhi) = b.bbox();
    if ahi.x < blo.x || bhi.x < alo.x || ahi.y < blo.y || bhi.y < alo.y {
        return 0;
    }
    let mut n = 0;
    for (p, q) in [(a, b), (b, a)] {
        for h in p.segments().filter(|s| s.horizontal()) {
            let (x0, x1) = (h.from.x.min(h.to.x), h.from.x.max(h.to.x));
            for v in q.segments().filter(|s| !s.horizontal()) {
                let (y0, y1) = (v.from.y.min(v.to.y), v.from.y.max(v.to.y));
                if x0 < v.from.x && v.from.x < x1 && y0 < h.from.y && h.from.y < y1 {
                    n += 1;
                }
            }
        }
    }
    n
}

/// Pruning hook for targeted censuses: may a polytope contain components
/// `a` and `b` together? Must be a necessary condition of the final filter.
pub trait PairRule: Sync {
    fn allows(&self, a: &PolytopeComponent, b: &PolytopeComponent) -> bool;
}

pub struct AnyPair;

impl PairRule for AnyPair {
    fn allows(&self, _: &PolytopeComponent, _: &PolytopeComponent) -> bool {
        true
    }
}

/// Allowed crossing counts between two components.
pub struct CrossingCounts(pub &'static [usize]);

impl PairRule for CrossingCounts {
    fn allows(&self, a: &PolytopeComponent, b: &PolytopeComponent) -> bool {
        self.0.contains(&crossing_count(a, b))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub seeds: usize,
    pub seeds_done: usize,
    /// All seeds finished before the deadline.
    pub complete: bool,
}

/// Used x and y values as bit sets.
#[derive(Clone, Copy)]
struct Used {
    x: u64,
    y: u64,
}

impl Used {
    fn of(c: &PolytopeComponent) -> Used {
        c.corners().iter().fold(Used { x: 0, y: 0 }, |u, k| Used { x: u.x | 1 << k.point.x, y: u.y | 1 << k.point.y })
    }
    fn with(self, o: Used) -> Used {
        Used { x: self.x | o.x, y: self.y | o.y }
    }
    fn represents(self, classes: Classes) -> bool {
        match classes {
            Classes::Translation => self.x & 1 == 1 && self.y & 1 == 1,
            Classes::Stretch => self.x & (self.x + 1) == 0 && self.y & (self.y + 1) == 0,
        }
    }
}

/// Folds every polytope of the spec into per-seed accumulators (a seed is the
/// first component) and merges them in seed order, so the result does not
/// depend on scheduling. Seeds not finished by `deadline` are dropped and
/// reported in [`Coverage`].
pub fn fold_polytopes<A: Send>(
    spec: &EnumSpec,
    rule: &dyn PairRule,
    deadline: Option<Instant>,
    init: impl Fn() -> A + Sync,
    visit: impl Fn(&mut A, LatticePolytope) + Sync,
    merge: impl FnMut(A),
) -> Coverage {
    let comps = window_components(spec);
    let late = |_: usize| deadline.is_some_and(|d| Instant::now() > d);
    fold_components(
        &comps,
        spec,
        rule,
        &late,
        &|| late(0),
        init,
        |a, p| {
            visit(a, p);
            true
        },
        merge,
    )
}

/// [`fold_polytopes`] over a given component list. Seeds for which `skip`
/// holds when they come up are not visited, and a seed during which `abort`
/// holds is dropped; `visit` returns false to abandon the rest of its seed.
#[allow(clippy::too_many_arguments)]
pub(crate) fn fold_components<A: Send>(
    comps: &[PolytopeComponent],
    spec: &EnumSpec,
    rule: &dyn PairRule,
    skip: &(dyn Fn(usize) -> bool + Sync),
    abort: &(dyn Fn() -> bool + Sync),
    init: impl Fn() -> A + Sync,
    visit: impl Fn(&mut A, LatticePolytope) -> bool + Sync,
    mut merge: impl FnMut(A),
) -> Coverage {
    let used: Vec<Used> = comps.iter().map(Used::of).collect();
    let n = comps.len();
    let results: Vec<Option<A>> = (0..n)
        .into_par_iter()
        .map(|i| {
            if skip(i) {
                return None;
            }
            let mut acc = init();
            let mut chosen = vec![i];
            let last_next = spec.max_components == 2;
            let cands: Vec<usize> = if spec.max_components > 1 {
                (i + 1..n)
                    .filter(|&j| !last_next || used[i].with(used[j]).represents(spec.classes))
                    .filter(|&j| rule.allows(&comps[i], &comps[j]) && generic_pair(&comps[i], &comps[j]))
                    .collect()
            } else {
                Vec::new()
            };
            let mut stop = Stop { abort, aborted: false };
            extend(spec, rule, comps, &used, &mut chosen, used[i], &cands, &mut acc, &visit, &mut stop);
            (!stop.aborted).then_some(acc)
        })
        .collect();
    let mut done = 0;
    for r in results.into_iter().flatten() {
        done += 1;
        merge(r);
    }
    Coverage { seeds: n, seeds_done: done, complete: done == n }
}

struct Stop<'a> {
    abort: &'a (dyn Fn() -> bool + Sync),
    aborted: bool,
}

/// Depth-first extension; `cands` are the indices after the last chosen one
/// compatible with every chosen component. False once `visit` asks to stop.
#[allow(clippy::too_many_arguments)]
fn extend<A>(
    spec: &EnumSpec,
    rule: &dyn PairRule,
    comps: &[PolytopeComponent],
    used: &[Used],
    chosen: &mut Vec<usize>,
    acc_used: Used,
    cands: &[usize],
    acc: &mut A,
    visit: &impl Fn(&mut A, LatticePolytope) -> bool,
    stop: &mut Stop,
) -> bool {
    if chosen.len() >= spec.min_components && acc_used.represents(spec.classes) {
        let p = LatticePolytope::from_components_unchecked(chosen.iter().map(|&i| comps[i].clone()).collect());
        if !visit(acc, p) {
            return false;
        }
    }
    if chosen.len() == spec.max_components {
        return true;
    }
    let final_level = chosen.len() + 1 == spec.max_components;
    for (pos, &j) in cands.iter().enumerate() {
        if (stop.abort)() {
            stop.aborted = true;
            return false;
        }
        let u = acc_used.with(used[j]);
        // nothing can be added later to make the class representative
        if final_level && !u.represents(spec.classes) {
            continue;
        }
        chosen.push(j);
        let next: Vec<usize> = if final_level {
            Vec::new()
        } else {
            let last_next = chosen.len() + 1 == spec.max_components;
            cands[pos + 1..]
                .iter()
                .copied()
                .filter(|&k| !last_next || u.with(used[k]).represents(spec.classes))
                .filter(|&k| rule.allows(&comps[j], &comps[k]) && generic_pair(&comps[j], &comps[k]))
                .collect()
        };
        let go_on = extend(spec, rule, comps, used, chosen, u, &next, acc, visit, stop);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Every polytope of the spec, in deterministic order.
pub fn enumerate_polytopes(spec: &EnumSpec) -> Result<Vec<LatticePolytope>, SpecError> {
    spec.check()?;
    let mut out = Vec::new();
    fold_polytopes(spec, &AnyPair, None, Vec::new, |v, p| v.push(p), |v| out.extend(v));
    Ok(out)
}
