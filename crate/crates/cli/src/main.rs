//! `dotlab`: validate, extract, realize, label, rewrite, enumerate, verify
//! and render lattice polytopes and dotted graphs.
//!
//! Exit codes: 0 success, 1 counterexample or negative answer, 2 input
//! error, 3 budget or deadline exhausted.

use clap::{Args, Parser, Subcommand, ValueEnum};
use dotlab::census::{self, Classes, EnumSpec, Theorem, VerificationReport};
use dotlab::io::{dg, poly, svg};
use dotlab::rewrite::{self, Budget, MoveOptions, ReductionCertificate, SearchError};
use dotlab::{extract, find_realization, DottedGraph, LatticePolytope, RealizeBounds, RealizeError};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "dotlab", version, about = "Lattice polytopes and dotted graphs")]
struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "DOTLAB_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a `.poly` or `.dg` file.
    Validate { file: PathBuf },
    /// Dotted graph of a polytope.
    Extract {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search a window for a polytope with the given dotted graph.
    Realize {
        file: PathBuf,
        #[arg(long, value_parser = parse_window, default_value = "6x6")]
        window: (i64, i64),
        #[arg(long, default_value_t = 8)]
        max_corners: usize,
        /// Candidate polytopes to examine before giving up.
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Face labels (winding numbers).
    Label { file: PathBuf },
    /// Applicable deformation sites.
    Moves {
        file: PathBuf,
        #[command(flatten)]
        opts: MoveFlags,
    },
    /// Apply the site with the given index in the `moves` listing.
    Apply {
        file: PathBuf,
        #[arg(long)]
        site: usize,
        #[command(flatten)]
        opts: MoveFlags,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduce by good deformations.
    Reduce {
        file: PathBuf,
        /// Look for a path to the empty diagram instead of listing good reduced forms.
        #[arg(long)]
        to_empty: bool,
        #[command(flatten)]
        budget: BudgetFlags,
        /// Write the (first) certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Replay a reduction certificate.
    Replay { file: PathBuf, cert: PathBuf },
    /// Census records (JSONL) for every distinct diagram of a window.
    Enum {
        #[command(flatten)]
        census: CensusFlags,
        #[arg(long, default_value_t = 2)]
        components: usize,
        #[arg(long)]
        simple: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite: thm1, chainN, ringN, thm3, lemmas or corners.
    Verify {
        task: String,
        #[command(flatten)]
        census: CensusFlags,
        /// Components for `lemmas`.
        #[arg(long, default_value_t = 2)]
        components: usize,
        #[command(flatten)]
        budget: BudgetFlags,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write per-instance JSONL records here.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// SVG drawing of a polytope or a dotted graph.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct MoveFlags {
    /// Only good deformations.
    #[arg(long)]
    good: bool,
    /// Ignore overlapping regions.
    #[arg(long)]
    plain: bool,
}

impl MoveFlags {
    fn options(&self) -> MoveOptions {
        MoveOptions { good_only: self.good, overlap_mode: !self.plain }
    }
}

#[derive(Args)]
struct BudgetFlags {
    #[arg(long, default_value_t = 32)]
    budget_depth: usize,
    #[arg(long, default_value_t = 100_000)]
    budget_nodes: usize,
}

impl BudgetFlags {
    fn budget(&self) -> Budget {
        Budget { max_depth: self.budget_depth, max_nodes: self.budget_nodes }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Translation,
    Stretch,
}

#[derive(Args)]
struct CensusFlags {
    #[arg(long, value_parser = parse_window, default_value = "4x4")]
    window: (i64, i64),
    #[arg(long, default_value_t = 8)]
    max_corners: usize,
    /// Class representatives enumerated.
    #[arg(long, value_enum, default_value = "stretch")]
    classes: ClassArg,
    /// Stop starting new seeds after this many seconds.
    #[arg(long)]
    deadline: Option<u64>,
}

impl CensusFlags {
    fn apply(&self, mut s: EnumSpec) -> EnumSpec {
        s.classes = match self.classes {
            ClassArg::Translation => Classes::Translation,
            ClassArg::Stretch => Classes::Stretch,
        };
        s
    }
    fn deadline(&self) -> Option<Instant> {
        self.deadline.map(|s| Instant::now() + Duration::from_secs(s))
    }
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(|| format!("window `{s}` is not WxH"))?;
    let n = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("window `{s}` is not WxH"));
    Ok((n(w)?, n(h)?))
}

struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn input(msg: impl ToString) -> Self {
        Fail { code: 2, msg: msg.to_string() }
    }
}

type Out = Result<(u8, Value, String), Fail>;

enum Input {
    Poly(LatticePolytope),
    Dg(DottedGraph),
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail::input(format!("{}: {e}", path.display())))
}

/// By extension; otherwise `.dg` if the first token is a keyword rather than a mark.
fn load(path: &Path) -> Result<Input, Fail> {
    let text = read(path)?;
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    let is_dg = match path.extension().and_then(|e| e.to_str()) {
        Some("dg") => true,
        Some("poly") => false,
        _ => first.and_then(|l| l.split_whitespace().next()).is_some_and(|t| t.len() > 1),
    };
    let at = |e: &dyn std::fmt::Display| Fail::input(format!("{}: {e}", path.display()));
    if is_dg {
        dg::parse(&text).map(Input::Dg).map_err(|e| at(&e))
    } else {
        poly::parse(&text).map(Input::Poly).map_err(|e| at(&e))
    }
}

fn load_graph(path: &Path) -> Result<DottedGraph, Fail> {
    Ok(match load(path)? {
        Input::Poly(p) => extract(&p).0,
        Input::Dg(g) => g,
    })
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<String, Fail> {
    match out {
        Some(p) => {
            write(p, text)?;
            Ok(format!("wrote {}", p.display()))
        }
        None => Ok(text.trim_end().to_string()),
    }
}

fn signed(v: i32) -> String {
    if v > 0 {
        format!("+{v}")
    } else {
        v.to_string()
    }
}

fn report_exit(r: &VerificationReport) -> u8 {
    if r.violation_count() > 0 {
        1
    } else if !r.complete() {
        3
    } else {
        0
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "{}: {} polytopes, {} diagrams, {} instances, seeds {}/{}\n",
        r.task, r.polytopes, r.diagrams, r.instances, r.coverage.seeds_done, r.coverage.seeds
    );
    for (k, v) in &r.checked {
        s.push_str(&format!("  {k}: {v} checked, {} violations\n", r.violations.get(k).copied().unwrap_or(0)));
    }
    for c in &r.counterexamples {
        s.push_str(&format!("  counterexample [{}] {}: {}\n{}", c.check, c.code, c.detail, c.polytope));
    }
    if !r.budget_exceeded.is_empty() {
        s.push_str(&format!("  budget exceeded on {} instances\n", r.budget_exceeded.len()));
    }
    let verdict = match report_exit(r) {
        0 => "PASS",
        1 => "FAIL",
        _ => "INCOMPLETE",
    };
    s.push_str(verdict);
    s
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Validate { file } => {
            let (kind, info) = match load(file)? {
                Input::Poly(p) => ("polytope", json!({"components": p.components().len(), "dots": p.dot_count()})),
                Input::Dg(g) => ("dotted-graph", json!({"crossings": g.crossings().len(), "strands": g.n_strands(), "dots": g.total_dots()})),
            };
            Ok((0, json!({"valid": true, "kind": kind, "summary": info}), format!("ok: {kind} {info}")))
        }
        Cmd::Extract { file, output } => {
            let g = load_graph(file)?;
            let text = dg::serialize(&g);
            let msg = emit(output.as_ref(), &text)?;
            Ok((0, json!({"code": g.canonical_code(), "dg": text}), msg))
        }
        Cmd::Realize { file, window, max_corners, budget, output } => {
            let g = load_graph(file)?;
            let mut b = RealizeBounds::new(window.0, window.1, *max_corners);
            b.max_polytopes = *budget;
            match find_realization(&g, b) {
                Ok(p) => {
                    let text = poly::serialize(&p);
                    let msg = emit(output.as_ref(), &text)?;
                    Ok((0, json!({"found": true, "poly": text}), msg))
                }
                Err(e @ RealizeError::BudgetExceeded { .. }) => Ok((3, json!({"found": false, "error": e.to_string()}), e.to_string())),
                Err(e) => Ok((1, json!({"found": false, "error": e.to_string()}), e.to_string())),
            }
        }
        Cmd::Label { file } => {
            let g = load_graph(file)?;
            let labels = g.labels().map_err(Fail::input)?;
            // bounded faces, largest label first
            let mut bounded: Vec<i32> = labels.total.iter().skip(1).copied().collect();
            bounded.sort_unstable_by(|a, b| b.cmp(a));
            let shown: Vec<String> = bounded.iter().map(|&t| signed(t)).collect();
            let text = format!("labels ({}), outer {}", shown.join(", "), labels.total.first().copied().unwrap_or(0));
            Ok((0, json!({"total": labels.total, "winding": labels.winding}), text))
        }
        Cmd::Moves { file, opts } => {
            let g = load_graph(file)?;
            let moves = rewrite::applicable_moves(&g, opts.options());
            let text = moves
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    format!(
                        "{i}: {} strands {:?} crossings {:?} eps {} i {}{}{}",
                        m.rule,
                        m.strands,
                        m.crossings,
                        signed(m.epsilon as i32),
                        m.i,
                        if m.overlapping.is_empty() { String::new() } else { format!(" overlapping {:?}", m.overlapping) },
                        if m.good { " good" } else { "" }
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok((0, json!({"moves": moves}), if moves.is_empty() { "no moves".into() } else { text }))
        }
        Cmd::Apply { file, site, opts, output } => {
            let g = load_graph(file)?;
            let moves = rewrite::applicable_moves(&g, opts.options());
            let m = moves.get(*site).ok_or_else(|| Fail::input(format!("site {site} out of range ({} sites)", moves.len())))?;
            let h = rewrite::apply(&g, m).map_err(Fail::input)?;
            let text = dg::serialize(&h);
            let msg = emit(output.as_ref(), &text)?;
            Ok((0, json!({"site": m, "code": h.canonical_code(), "dg": text}), msg))
        }
        Cmd::Reduce { file, to_empty, budget, cert } => {
            let g = load_graph(file)?;
            let save = |c: &ReductionCertificate| cert.as_ref().map_or(Ok(()), |p| write(p, &c.to_json()));
            if *to_empty {
                return match rewrite::reduce_to_empty(&g, budget.budget()) {
                    Ok(Some(c)) => {
                        save(&c)?;
                        let kinds: Vec<String> = c.kinds().iter().map(|k| format!("{k:?}")).collect();
                        Ok((0, json!({"reached_empty": true, "certificate": c}), format!("empty after [{}]", kinds.join(", "))))
                    }
                    Ok(None) => Ok((1, json!({"reached_empty": false}), "no good reduction reaches the empty diagram".into())),
                    Err(e) => Ok((3, json!({"reached_empty": false, "error": e.to_string()}), e.to_string())),
                };
            }
            let r = rewrite::good_reduce(&g, budget.budget());
            if let Some((_, c)) = r.reduced.first() {
                save(c)?;
            }
            let forms: Vec<Value> = r.reduced.iter().map(|(h, c)| json!({"code": h.canonical_code(), "certificate": c})).collect();
            let text = r
                .reduced
                .iter()
                .map(|(h, c)| format!("{} after {} moves", h.canonical_code(), c.len()))
                .chain(r.exhausted.then(|| format!("BudgetExceeded after {} diagrams", r.explored)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok((if r.exhausted { 3 } else { 0 }, json!({"reduced": forms, "explored": r.explored, "exhausted": r.exhausted}), text))
        }
        Cmd::Replay { file, cert } => {
            let g = load_graph(file)?;
            let c = ReductionCertificate::from_json(&read(cert)?).map_err(Fail::input)?;
            match c.replay(&g) {
                Ok(h) => Ok((0, json!({"replayed": true, "code": h.canonical_code()}), format!("ok: {} steps, ends at {}", c.len(), h.canonical_code()))),
                Err(e @ SearchError::BudgetExceeded { .. }) => Ok((3, json!({"replayed": false, "error": e.to_string()}), e.to_string())),
                Err(e) => Ok((1, json!({"replayed": false, "error": e.to_string()}), e.to_string())),
            }
        }
        Cmd::Enum { census: c, components, simple, output } => {
            let mut spec = c.apply(EnumSpec::new(c.window.0, c.window.1, *components, c.max_corners));
            spec.simple_only = *simple;
            let (cov, recs) = census::census_records(&spec, c.deadline()).map_err(Fail::input)?;
            let jsonl: String = recs.iter().map(|r| serde_json::to_string(r).expect("record serializes") + "\n").collect();
            let msg = match output {
                Some(p) => {
                    write(p, &jsonl)?;
                    format!("{} diagrams, seeds {}/{}; wrote {}", recs.len(), cov.seeds_done, cov.seeds, p.display())
                }
                None => jsonl.trim_end().to_string(),
            };
            Ok((if cov.complete { 0 } else { 3 }, json!({"coverage": cov, "diagrams": recs.len()}), msg))
        }
        Cmd::Verify { task, census: c, components, budget, report, records } => {
            let (w, h) = c.window;
            let r = match task.as_str() {
                "lemmas" => census::verify_lemmas(&c.apply(EnumSpec::new(w, h, *components, c.max_corners)), c.deadline()),
                "corners" => census::audit_corners(&EnumSpec::new(w, h, 1, c.max_corners)),
                t => {
                    let th = Theorem::parse(t).ok_or_else(|| Fail::input(format!("unknown task `{t}`")))?;
                    census::verify_theorem(th, &c.apply(th.spec(w, h, c.max_corners)), budget.budget(), c.deadline())
                }
            }
            .map_err(Fail::input)?;
            if let Some(p) = report {
                write(p, &r.to_json())?;
            }
            if let Some(p) = records {
                write(p, &r.jsonl())?;
            }
            let mut v: Value = serde_json::from_str(&r.to_json()).expect("report is JSON");
            v["records"] = json!(r.records.len());
            Ok((report_exit(&r), v, report_text(&r)))
        }
        Cmd::Render { file, output } => {
            let (doc, notice) = match load(file)? {
                Input::Poly(p) => (svg::render_polytope_svg(&p), None),
                Input::Dg(g) => svg::render_diagram_svg(&g),
            };
            if let Some(n) = &notice {
                eprintln!("{n}");
            }
            let msg = emit(output.as_ref(), &doc)?;
            Ok((0, json!({"svg": doc, "notice": notice.map(|n| n.to_string())}), msg))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dotlab::par::with_jobs(cli.jobs, || run(&cli));
    match result {
        Ok((code, v, text)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&v).expect("JSON"));
            } else if !text.is_empty() {
                println!("{text}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({"error": f.msg}));
            }
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
