//! Breadth-first reduction by good deformations over canonical codes.
//!
//! Search states are canonical forms, so sites in a certificate always refer
//! to the canonical form of the diagram reached by the previous step. A IVa
//! step is always followed by the III step deleting the loop it created.

use super::{apply, apply_unchecked, created_loop_site, MoveError, MoveKind, MoveOptions, MoveSite};
use crate::diagram::canon::canonical_form_with_arcs;
use crate::diagram::DottedGraph;
use crate::par::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of moves on a path.
    pub max_depth: usize,
    /// Maximum number of distinct diagrams visited.
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_depth: 32, max_nodes: 100_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("BudgetExceeded: search stopped after {explored} diagrams")]
    BudgetExceeded { explored: usize },
    #[error("certificate does not start from this diagram")]
    StartMismatch,
    #[error("certificate step {step}: {source}")]
    Step { step: usize, source: MoveError },
    #[error("certificate step {step} reaches a different diagram")]
    CodeMismatch { step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertStep {
    pub site: MoveSite,
    /// Canonical code after the move.
    pub code: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    /// Canonical code of the starting diagram.
    pub start: String,
    pub steps: Vec<CertStep>,
}

impl ReductionCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn kinds(&self) -> Vec<MoveKind> {
        self.steps.iter().map(|s| s.site.kind).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Re-applies every step (re-matching each site) from the canonical form
    /// of `g`; returns the final diagram.
    pub fn replay(&self, g: &DottedGraph) -> Result<DottedGraph, SearchError> {
        let mut cur = g.canonicalize();
        if cur.canonical_code() != self.start {
            return Err(SearchError::StartMismatch);
        }
        for (step, s) in self.steps.iter().enumerate() {
            let next = apply(&cur, &s.site).map_err(|source| SearchError::Step { step, source })?;
            cur = next.canonicalize();
            if cur.canonical_code() != s.code {
                return Err(SearchError::CodeMismatch { step });
            }
        }
        Ok(cur)
    }
}

#[derive(Clone, Debug)]
pub struct GoodReduction {
    /// Distinct diagrams admitting no good deformation, each with a path.
    pub reduced: Vec<(DottedGraph, ReductionCertificate)>,
    pub explored: usize,
    /// Budget ran out before the reachable set was exhausted.
    pub exhausted: bool,
}

struct Node {
    g: DottedGraph,
    parent: usize,
    steps: Vec<CertStep>,
    depth: usize,
}

type Child = (Vec<CertStep>, DottedGraph, String);

fn expand(s: &DottedGraph) -> Vec<Child> {
    let mut out = Vec::new();
    for site in super::applicable_moves(s, MoveOptions::good()) {
        let Ok(h) = apply_unchecked(s, &site) else { continue };
        let (hc, perm) = canonical_form_with_arcs(&h);
        let code = hc.canonical_code();
        let first = CertStep { site: site.clone(), code: code.clone() };
        if site.kind != MoveKind::IV {
            out.push((vec![first], hc, code));
            continue;
        }
        let n = hc.arcs().len();
        let mut mapped = site.clone();
        mapped.strands = site.strands.iter().map(|&x| if x < n { perm[x] } else { x }).collect();
        let Some(l) = created_loop_site(&hc, &mapped, true) else { continue };
        let Ok(h2) = apply_unchecked(&hc, &l) else { continue };
        let h2c = h2.canonicalize();
        let code2 = h2c.canonical_code();
        out.push((vec![first, CertStep { site: l, code: code2.clone() }], h2c, code2));
    }
    out
}

fn certificate(nodes: &[Node], mut i: usize, start: &str) -> ReductionCertificate {
    let mut rev: Vec<&[CertStep]> = Vec::new();
    while i != 0 {
        rev.push(&nodes[i].steps);
        i = nodes[i].parent;
    }
    let steps = rev.into_iter().rev().flat_map(|s| s.iter().cloned()).collect();
    ReductionCertificate { start: start.to_string(), steps }
}

enum Goal {
    Empty,
    AllReduced,
}

struct Outcome {
    nodes: Vec<Node>,
    leaves: Vec<usize>,
    hit: Option<usize>,
    exhausted: bool,
}

fn bfs(g: &DottedGraph, budget: Budget, goal: Goal) -> (Outcome, String) {
    let root = g.canonicalize();
    let start = root.canonical_code();
    let mut seen: HashSet<String> = HashSet::from([start.clone()]);
    let mut nodes = vec![Node { g: root, parent: 0, steps: Vec::new(), depth: 0 }];
    let mut leaves = Vec::new();
    let mut exhausted = false;
    if matches!(goal, Goal::Empty) && nodes[0].g.is_empty() {
        return (Outcome { nodes, leaves, hit: Some(0), exhausted }, start);
    }
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let (expandable, deep): (Vec<usize>, Vec<usize>) =
            frontier.iter().partition(|&&i| nodes[i].depth < budget.max_depth);
        if !deep.is_empty() {
            exhausted = true;
        }
        let kids: Vec<Vec<Child>> = {
            let nodes = &nodes;
            expandable.par_iter().map(|&i| expand(&nodes[i].g)).collect()
        };
        let mut next = Vec::new();
        for (&i, children) in expandable.iter().zip(kids) {
            if children.is_empty() {
                leaves.push(i);
                continue;
            }
            for (steps, h, code) in children {
                if !seen.insert(code) {
                    continue;
                }
                let depth = nodes[i].depth + steps.len();
                let empty = h.is_empty();
                nodes.push(Node { g: h, parent: i, steps, depth });
                let id = nodes.len() - 1;
                if empty && matches!(goal, Goal::Empty) {
                    return (Outcome { nodes, leaves, hit: Some(id), exhausted }, start);
                }
                if nodes.len() >= budget.max_nodes {
                    exhausted = true;
                    return (Outcome { nodes, leaves, hit: None, exhausted }, start);
                }
                next.push(id);
            }
        }
        frontier = next;
    }
    (Outcome { nodes, leaves, hit: None, exhausted }, start)
}

/// Every diagram reachable by good deformations that admits none.
pub fn good_reduce(g: &DottedGraph, budget: Budget) -> GoodReduction {
    let (out, start) = bfs(g, budget, Goal::AllReduced);
    let reduced = out.leaves.iter().map(|&i| (out.nodes[i].g.clone(), certificate(&out.nodes, i, &start))).collect();
    GoodReduction { reduced, explored: out.nodes.len(), exhausted: out.exhausted }
}

/// A shortest good-deformation path to the empty diagram. `Ok(None)` means
/// the whole reachable set was searched without finding one.
pub fn reduce_to_empty(g: &DottedGraph, budget: Budget) -> Result<Option<ReductionCertificate>, SearchError> {
    let (out, start) = bfs(g, budget, Goal::Empty);
    match out.hit {
        Some(i) => Ok(Some(certificate(&out.nodes, i, &start))),
        None if out.exhausted => Err(SearchError::BudgetExceeded { explored: out.nodes.len() }),
        None => Ok(None),
    }
}
