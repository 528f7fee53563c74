//! Census runs: per-polytope oracle checks, per-diagram lemma checks and the
//! theorem suites, with JSON reports and JSONL records.

use super::enumerate::{fold_polytopes, window_components, AnyPair, Coverage, CrossingCounts, EnumSpec, PairRule, SpecError};
use super::shapes::{bigon_label_sequence, detect_shapes, ShapeKind};
use crate::diagram::cycles::{components, ComponentKind};
use crate::diagram::faces::Structure;
use crate::diagram::DottedGraph;
use crate::extract::extract;
use crate::io;
use crate::par::prelude::*;
use crate::polytope::{corner_angle_audit, LatticePolytope};
use crate::realize::{find_realization, RealizeBounds};
use crate::rewrite::{applicable_moves, reduce_to_empty, Budget, MoveKind, MoveOptions, ReductionCertificate, SearchError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

/// Counterexamples kept per check; the counts stay exact.
const KEEP: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    Thm1,
    Chain(usize),
    Ring(usize),
    Thm3,
}

impl Theorem {
    pub fn shape(self) -> ShapeKind {
        match self {
            Theorem::Thm1 => ShapeKind::Thm1,
            Theorem::Chain(n) => ShapeKind::Thm2Chain(n),
            Theorem::Ring(n) => ShapeKind::Thm2Ring(n),
            Theorem::Thm3 => ShapeKind::Thm3,
        }
    }

    pub fn circles(self) -> usize {
        match self {
            Theorem::Thm1 => 2,
            Theorem::Chain(n) | Theorem::Ring(n) => n,
            Theorem::Thm3 => 3,
        }
    }

    fn rule(self) -> CrossingCounts {
        match self {
            Theorem::Thm1 | Theorem::Thm3 | Theorem::Ring(3) => CrossingCounts(&[2]),
            _ => CrossingCounts(&[0, 2]),
        }
    }

    /// Enumeration spec for this theorem's census: exactly the right number
    /// of components, none with self-crossings (they must be embedded circles).
    pub fn spec(self, width: i64, height: i64, max_corners: usize) -> EnumSpec {
        let n = self.circles();
        let mut s = EnumSpec::new(width, height, n, max_corners);
        s.min_components = n;
        s.simple_only = true;
        s
    }

    pub fn parse(s: &str) -> Option<Theorem> {
        let num = |p: &str| s.strip_prefix(p).and_then(|r| r.parse::<usize>().ok());
        match s {
            "thm1" => Some(Theorem::Thm1),
            "thm3" => Some(Theorem::Thm3),
            _ => num("chain").filter(|&n| n >= 2).map(Theorem::Chain).or_else(|| num("ring").filter(|&n| n >= 3).map(Theorem::Ring)),
        }
    }
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.shape().fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub code: String,
    /// The polytope in `.poly` text form.
    pub polytope: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub code: String,
    pub crossings: usize,
    pub dots: u64,
    pub shapes: Vec<ShapeKind>,
    pub good_move_count: usize,
    pub reducible: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<ReductionCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub task: String,
    pub spec: EnumSpec,
    pub coverage: Coverage,
    pub polytopes: usize,
    pub diagrams: usize,
    /// Diagrams matching the theorem's shape (theorem runs).
    pub instances: usize,
    /// Objects examined per check.
    pub checked: BTreeMap<String, usize>,
    /// Violations per check (exact, even when the list below is truncated).
    pub violations: BTreeMap<String, usize>,
    pub counterexamples: Vec<Counterexample>,
    /// Codes of instances whose search ran out of budget.
    pub budget_exceeded: Vec<String>,
    pub records: Vec<InstanceRecord>,
    pub pass: bool,
}

impl VerificationReport {
    fn new(task: String, spec: &EnumSpec) -> Self {
        VerificationReport {
            task,
            spec: spec.clone(),
            coverage: Coverage::default(),
            polytopes: 0,
            diagrams: 0,
            instances: 0,
            checked: BTreeMap::new(),
            violations: BTreeMap::new(),
            counterexamples: Vec::new(),
            budget_exceeded: Vec::new(),
            records: Vec::new(),
            pass: true,
        }
    }

    /// Everything in scope was examined and no search ran out of budget.
    pub fn complete(&self) -> bool {
        self.coverage.complete && self.budget_exceeded.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.violations.values().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One JSON record per line, in census order.
    pub fn jsonl(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&serde_json::to_string(r).expect("record serializes"));
            s.push('\n');
        }
        s
    }

    fn finish(&mut self) {
        self.pass = self.violation_count() == 0;
    }
}

#[derive(Default)]
struct Tally {
    checked: BTreeMap<String, usize>,
    violations: BTreeMap<String, usize>,
    cex: Vec<Counterexample>,
}

impl Tally {
    fn check(&mut self, name: &str, n: usize) {
        *self.checked.entry(name.to_string()).or_default() += n;
    }

    fn fail(&mut self, name: &str, code: &str, p: &LatticePolytope, detail: String) {
        let v = self.violations.entry(name.to_string()).or_default();
        *v += 1;
        if *v <= KEEP {
            self.cex.push(Counterexample { check: name.to_string(), code: code.to_string(), polytope: io::poly::serialize(p), detail });
        }
    }

    fn merge_into(self, r: &mut VerificationReport) {
        for (k, v) in self.checked {
            *r.checked.entry(k).or_default() += v;
        }
        for c in self.cex {
            if r.counterexamples.iter().filter(|x| x.check == c.check).count() < KEEP {
                r.counterexamples.push(c);
            }
        }
        for (k, v) in self.violations {
            *r.violations.entry(k).or_default() += v;
        }
    }
}

/// Label/winding agreement and the unit step across every strand.
fn oracle_checks(p: &LatticePolytope, g: &DottedGraph, probes: &[crate::Probe], code: &str, t: &mut Tally) {
    let Ok(st) = Structure::new(g) else {
        t.fail("valid", code, p, "structure".into());
        return;
    };
    let Ok(labels) = st.labels(g) else {
        t.fail("valid", code, p, "labels".into());
        return;
    };
    t.check("label-oracle", probes.len());
    for (f, &probe) in probes.iter().enumerate() {
        match p.winding_number(probe) {
            Ok(w) if w == labels.total[f] as i64 => {}
            w => t.fail("label-oracle", code, p, format!("face {f}: label {} winding {w:?}", labels.total[f])),
        }
    }
    t.check("label-step", g.n_strands());
    for s in 0..g.n_strands() {
        let (l, r) = st.strand_faces(s);
        if labels.total[l] - labels.total[r] != 1 {
            t.fail("label-step", code, p, format!("strand {s}"));
        }
    }
}

fn lemma_checks(p: &LatticePolytope, g: &DottedGraph, code: &str, t: &mut Tally) {
    let st = g.structure();
    for w in components(g, &st) {
        match w.kind {
            ComponentKind::Bigon if !w.coherent => {
                t.check("lemma-bigon", 1);
                if w.dots == 0 {
                    t.fail("lemma-bigon", code, p, format!("bigon on strands {:?}", w.strands()));
                }
            }
            ComponentKind::CrossingIncluding => {
                t.check("lemma-crossing-including", 1);
                if w.dots <= 1 {
                    t.fail("lemma-crossing-including", code, p, format!("component on strands {:?} has {} dots", w.strands(), w.dots));
                }
            }
            _ => {}
        }
    }
}

/// Lemma check of a single diagram. The lemmas only speak about diagrams
/// of polytopes, so a diagram with no realization inside `bounds` is out of
/// scope rather than a counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LemmaVerdict {
    OutOfScope(String),
    Checked { checked: BTreeMap<String, usize>, counterexamples: Vec<Counterexample> },
}

pub fn check_diagram_lemmas(g: &DottedGraph, bounds: RealizeBounds) -> LemmaVerdict {
    match find_realization(g, bounds) {
        Ok(p) => {
            let mut t = Tally::default();
            lemma_checks(&p, g, &g.canonical_code(), &mut t);
            LemmaVerdict::Checked { checked: t.checked, counterexamples: t.cex }
        }
        Err(e) => LemmaVerdict::OutOfScope(format!("not known to be admissible ({e})")),
    }
}

#[derive(Default)]
struct LemmaAcc {
    polytopes: usize,
    codes: HashSet<String>,
    tally: Tally,
}

/// Corner audit of every simple component in the window.
pub fn audit_corners(spec: &EnumSpec) -> Result<VerificationReport, SpecError> {
    spec.check()?;
    let mut r = VerificationReport::new("corners".into(), spec);
    let comps = window_components(spec);
    let mut t = Tally::default();
    let bad: Vec<(usize, String)> = comps
        .par_iter()
        .enumerate()
        .filter(|(_, c)| c.is_simple())
        .filter_map(|(i, c)| match corner_angle_audit(c) {
            Ok((plus, minus)) if plus as i64 - minus as i64 == 4 => None,
            other => Some((i, format!("{other:?}"))),
        })
        .collect();
    t.check("corner-audit", comps.iter().filter(|c| c.is_simple()).count());
    for (i, why) in bad {
        t.fail("corner-audit", "", &LatticePolytope::from_components(vec![comps[i].clone()]).unwrap_or_default(), why);
    }
    t.merge_into(&mut r);
    r.coverage = Coverage { seeds: comps.len(), seeds_done: comps.len(), complete: true };
    r.finish();
    Ok(r)
}

/// Label-oracle equivalence and unit steps for every polytope, the two dot
/// lemmas for every distinct diagram.
pub fn verify_lemmas(spec: &EnumSpec, deadline: Option<Instant>) -> Result<VerificationReport, SpecError> {
    spec.check()?;
    let mut r = VerificationReport::new("lemmas".into(), spec);
    let mut seen: HashSet<String> = HashSet::new();
    let mut polytopes = 0;
    let mut tallies = Vec::new();
    r.coverage = fold_polytopes(
        spec,
        &AnyPair,
        deadline,
        LemmaAcc::default,
        |a, p| {
            a.polytopes += 1;
            let (g, tr) = extract(&p);
            let code = g.canonical_code();
            oracle_checks(&p, &g, &tr.face_probes, &code, &mut a.tally);
            if a.codes.insert(code.clone()) {
                lemma_checks(&p, &g, &code, &mut a.tally);
            }
        },
        |a| {
            polytopes += a.polytopes;
            seen.extend(a.codes);
            tallies.push(a.tally);
        },
    );
    for t in tallies {
        t.merge_into(&mut r);
    }
    r.polytopes = polytopes;
    r.diagrams = seen.len();
    r.finish();
    Ok(r)
}

#[derive(Default)]
struct Distinct {
    polytopes: usize,
    order: Vec<(String, DottedGraph, LatticePolytope)>,
    index: HashSet<String>,
}

fn distinct_diagrams(spec: &EnumSpec, rule: &dyn PairRule, deadline: Option<Instant>) -> (Coverage, usize, Vec<(String, DottedGraph, LatticePolytope)>) {
    let mut all: Vec<(String, DottedGraph, LatticePolytope)> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut polytopes = 0;
    let cov = fold_polytopes(
        spec,
        rule,
        deadline,
        Distinct::default,
        |a, p| {
            a.polytopes += 1;
            let g = extract(&p).0;
            let code = g.canonical_code();
            if a.index.insert(code.clone()) {
                a.order.push((code, g, p));
            }
        },
        |a| {
            polytopes += a.polytopes;
            for (code, g, p) in a.order {
                if !index.contains_key(&code) {
                    index.insert(code.clone(), all.len());
                    all.push((code, g, p));
                }
            }
        },
    );
    (cov, polytopes, all)
}

enum Verdict {
    NotInstance,
    Checked(InstanceRecord, Tally, bool),
}

fn check_instance(th: Theorem, code: &str, g: &DottedGraph, p: &LatticePolytope, budget: Budget) -> Verdict {
    let shapes = detect_shapes(g);
    let target = th.shape();
    let witnesses: Vec<_> = shapes.iter().filter(|w| w.kind == target).collect();
    if witnesses.is_empty() {
        return Verdict::NotInstance;
    }
    let mut t = Tally::default();
    let good = applicable_moves(g, MoveOptions::good());
    t.check("good-move", 1);
    if good.is_empty() {
        t.fail("good-move", code, p, "no good deformation applies".into());
    }
    let mut certificate = None;
    let mut exhausted = false;
    if th == Theorem::Thm1 {
        t.check("reduces-to-empty", 1);
        match reduce_to_empty(g, budget) {
            Ok(Some(c)) => certificate = Some(c),
            Ok(None) => t.fail("reduces-to-empty", code, p, "no good reduction reaches the empty diagram".into()),
            Err(SearchError::BudgetExceeded { .. }) => exhausted = true,
            Err(e) => t.fail("reduces-to-empty", code, p, e.to_string()),
        }
    }
    if let Theorem::Chain(_) | Theorem::Ring(_) = th {
        for w in &witnesses {
            let seq = bigon_label_sequence(g, w);
            t.check("label-sequence", 1);
            for pair in seq.windows(2) {
                match (pair[0], pair[1]) {
                    (2, -2) | (-2, 2) => t.fail("label-sequence", code, p, format!("opposite lenses in {seq:?}")),
                    (2, 2) | (-2, -2) if !good.iter().any(|m| m.kind == MoveKind::II) => {
                        t.fail("label-sequence", code, p, format!("equal lenses in {seq:?} without a II site"))
                    }
                    _ => {}
                }
            }
        }
    }
    let rec = InstanceRecord {
        code: code.to_string(),
        crossings: g.crossings().len(),
        dots: g.total_dots(),
        shapes: shapes.iter().map(|w| w.kind).collect(),
        good_move_count: good.len(),
        reducible: !good.is_empty(),
        certificate,
    };
    Verdict::Checked(rec, t, exhausted)
}

/// The theorem suite over the census of `spec`.
pub fn verify_theorem(th: Theorem, spec: &EnumSpec, budget: Budget, deadline: Option<Instant>) -> Result<VerificationReport, SpecError> {
    spec.check()?;
    let mut r = VerificationReport::new(th.to_string(), spec);
    let rule = th.rule();
    let (cov, polytopes, all) = distinct_diagrams(spec, &rule, deadline);
    r.coverage = cov;
    r.polytopes = polytopes;
    r.diagrams = all.len();
    let verdicts: Vec<Verdict> = all.par_iter().map(|(code, g, p)| check_instance(th, code, g, p, budget)).collect();
    for v in verdicts {
        if let Verdict::Checked(rec, t, exhausted) = v {
            r.instances += 1;
            if exhausted {
                r.budget_exceeded.push(rec.code.clone());
            }
            t.merge_into(&mut r);
            r.records.push(rec);
        }
    }
    r.finish();
    Ok(r)
}

/// JSONL census records for every distinct diagram of the spec.
pub fn census_records(spec: &EnumSpec, deadline: Option<Instant>) -> Result<(Coverage, Vec<InstanceRecord>), SpecError> {
    spec.check()?;
    let (cov, _, all) = distinct_diagrams(spec, &AnyPair, deadline);
    let recs = all
        .par_iter()
        .map(|(code, g, _)| {
            let good = applicable_moves(g, MoveOptions::good());
            InstanceRecord {
                code: code.clone(),
                crossings: g.crossings().len(),
                dots: g.total_dots(),
                shapes: detect_shapes(g).iter().map(|w| w.kind).collect(),
                good_move_count: good.len(),
                reducible: !good.is_empty(),
                certificate: None,
            }
        })
        .collect();
    Ok((cov, recs))
}
