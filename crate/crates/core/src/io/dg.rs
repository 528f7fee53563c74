//! `.dg` text format.
//!
//! ```text
//! crossing 0: 0:head 3:tail 1:tail 2:head
//! arc 0: dots 2 circle 0
//! freecircle 0: dots 1 sign - face a1.left
//! outer a0.right
//! contain a0 in plane
//! ```
//! Face references are `plane`, `a<arc>.left`, `a<arc>.right` or `f<id>.in`.
//! Each connected piece gets one `outer` line naming a dart on its unbounded
//! face and one `contain` line naming its host.

use crate::diagram::{Arc, ArcEnd, Crossing, Dart, DiagramError, DottedGraph, End, FreeCircle, Host, Placement, Side};
use std::collections::BTreeMap;
use std::fmt::Write;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DgError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Invalid(#[from] DiagramError),
}

fn dart_str(d: Dart) -> String {
    format!("a{}.{}", d.arc, if d.side == Side::Left { "left" } else { "right" })
}

fn host_str(h: Host) -> String {
    match h {
        Host::Plane => "plane".into(),
        Host::Face(d) => dart_str(d),
        Host::Inside(f) => format!("f{f}.in"),
    }
}

pub fn serialize(g: &DottedGraph) -> String {
    let mut s = String::new();
    for (c, x) in g.crossings.iter().enumerate() {
        let ends: Vec<String> = x
            .ends
            .iter()
            .map(|e| format!("{}:{}", e.arc, if e.end == End::Head { "head" } else { "tail" }))
            .collect();
        let _ = writeln!(s, "crossing {c}: {}", ends.join(" "));
    }
    for (a, arc) in g.arcs.iter().enumerate() {
        let _ = writeln!(s, "arc {a}: dots {} circle {}", arc.dots, arc.circle);
    }
    for (f, fc) in g.free.iter().enumerate() {
        let _ = writeln!(
            s,
            "freecircle {f}: dots {} sign {} face {}",
            fc.dots,
            if fc.sign > 0 { '+' } else { '-' },
            host_str(fc.host)
        );
    }
    for p in &g.pieces {
        let _ = writeln!(s, "outer {}", dart_str(p.outer));
        let _ = writeln!(s, "contain a{} in {}", p.outer.arc, host_str(p.host));
    }
    s
}

fn syntax(line: usize, msg: impl Into<String>) -> DgError {
    DgError::Syntax { line, msg: msg.into() }
}

fn parse_usize(line: usize, t: &str) -> Result<usize, DgError> {
    t.parse().map_err(|_| syntax(line, format!("`{t}` is not a non-negative integer")))
}

fn parse_dart(line: usize, t: &str) -> Result<Dart, DgError> {
    let (a, side) = t.split_once('.').ok_or_else(|| syntax(line, format!("bad dart `{t}`")))?;
    let arc = parse_usize(line, a.strip_prefix('a').ok_or_else(|| syntax(line, format!("bad dart `{t}`")))?)?;
    let side = match side {
        "left" => Side::Left,
        "right" => Side::Right,
        _ => return Err(syntax(line, format!("bad side `{side}`"))),
    };
    Ok(Dart { arc, side })
}

fn parse_host(line: usize, t: &str) -> Result<Host, DgError> {
    if t == "plane" {
        return Ok(Host::Plane);
    }
    if let Some(rest) = t.strip_prefix('f') {
        let id = rest.strip_suffix(".in").ok_or_else(|| syntax(line, format!("bad face `{t}`")))?;
        return Ok(Host::Inside(parse_usize(line, id)?));
    }
    Ok(Host::Face(parse_dart(line, t)?))
}

fn expect_id(line: usize, head: &str, kw: &str) -> Result<usize, DgError> {
    let id = head.strip_prefix(kw).and_then(|r| r.trim().strip_suffix(':')).ok_or_else(|| syntax(line, format!("expected `{kw} <id>:`")))?;
    parse_usize(line, id.trim())
}

pub fn parse(text: &str) -> Result<DottedGraph, DgError> {
    let mut crossings: BTreeMap<usize, Crossing> = BTreeMap::new();
    let mut arcs: BTreeMap<usize, Arc> = BTreeMap::new();
    let mut free: BTreeMap<usize, FreeCircle> = BTreeMap::new();
    let mut outers: Vec<(usize, Dart)> = Vec::new();
    let mut contains: Vec<(usize, usize, Host)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "crossing" => {
                let id = expect_id(ln, &format!("crossing {}", toks.get(1).unwrap_or(&"")), "crossing")?;
                if toks.len() != 6 {
                    return Err(syntax(ln, "crossing needs four ends"));
                }
                let mut ends = [ArcEnd::head(0); 4];
                for k in 0..4 {
                    let (a, e) = toks[2 + k].split_once(':').ok_or_else(|| syntax(ln, "end must be `<arc>:head|tail`"))?;
                    let end = match e {
                        "head" => End::Head,
                        "tail" => End::Tail,
                        _ => return Err(syntax(ln, format!("bad end `{e}`"))),
                    };
                    ends[k] = ArcEnd { arc: parse_usize(ln, a)?, end };
                }
                if crossings.insert(id, Crossing { ends }).is_some() {
                    return Err(syntax(ln, format!("duplicate crossing {id}")));
                }
            }
            "arc" => {
                let id = expect_id(ln, &format!("arc {}", toks.get(1).unwrap_or(&"")), "arc")?;
                if toks.len() != 6 || toks[2] != "dots" || toks[4] != "circle" {
                    return Err(syntax(ln, "expected `arc <id>: dots <n> circle <cid>`"));
                }
                let a = Arc { dots: parse_usize(ln, toks[3])? as u32, circle: parse_usize(ln, toks[5])? };
                if arcs.insert(id, a).is_some() {
                    return Err(syntax(ln, format!("duplicate arc {id}")));
                }
            }
            "freecircle" => {
                let id = expect_id(ln, &format!("freecircle {}", toks.get(1).unwrap_or(&"")), "freecircle")?;
                if toks.len() != 8 || toks[2] != "dots" || toks[4] != "sign" || toks[6] != "face" {
                    return Err(syntax(ln, "expected `freecircle <id>: dots <n> sign <+|-> face <ref>`"));
                }
                let sign = match toks[5] {
                    "+" => 1,
                    "-" => -1,
                    s => return Err(syntax(ln, format!("bad sign `{s}`"))),
                };
                let fc = FreeCircle {
                    dots: parse_usize(ln, toks[3])? as u32,
                    sign,
                    circle: usize::MAX,
                    host: parse_host(ln, toks[7])?,
                };
                if free.insert(id, fc).is_some() {
                    return Err(syntax(ln, format!("duplicate free circle {id}")));
                }
            }
            "outer" => {
                if toks.len() != 2 {
                    return Err(syntax(ln, "expected `outer a<arc>.<side>`"));
                }
                outers.push((ln, parse_dart(ln, toks[1])?));
            }
            "contain" => {
                if toks.len() != 4 || toks[2] != "in" {
                    return Err(syntax(ln, "expected `contain a<arc> in <face>`"));
                }
                let arc = parse_usize(ln, toks[1].strip_prefix('a').ok_or_else(|| syntax(ln, "piece must be `a<arc>`"))?)?;
                contains.push((ln, arc, parse_host(ln, toks[3])?));
            }
            other => return Err(syntax(ln, format!("unknown record `{other}`"))),
        }
    }
    let dense = |n: usize, keys: Vec<usize>, what: &str| -> Result<(), DgError> {
        if keys.into_iter().enumerate().any(|(i, k)| i != k) {
            return Err(syntax(0, format!("{what} ids must be 0..{n}")));
        }
        Ok(())
    };
    dense(crossings.len(), crossings.keys().copied().collect(), "crossing")?;
    dense(arcs.len(), arcs.keys().copied().collect(), "arc")?;
    dense(free.len(), free.keys().copied().collect(), "free circle")?;
    let crossings: Vec<Crossing> = crossings.into_values().collect();
    let arcs: Vec<Arc> = arcs.into_values().collect();
    let n = arcs.len();
    let mut free: Vec<FreeCircle> = free.into_values().collect();
    // free circle ids come after arc circle ids; keep the user's ids distinct
    let base = arcs.iter().map(|a| a.circle + 1).max().unwrap_or(0);
    for (i, f) in free.iter_mut().enumerate() {
        f.circle = base + i;
    }

    // pair `outer` and `contain` lines by piece
    let mut dsu = crate::diagram::faces::Dsu::new(n);
    for x in &crossings {
        for k in 1..4 {
            if x.ends[0].arc < n && x.ends[k].arc < n {
                dsu.union(x.ends[0].arc, x.ends[k].arc);
            }
        }
    }
    let mut hosts: BTreeMap<usize, Host> = BTreeMap::new();
    for (ln, arc, h) in contains {
        if arc >= n {
            return Err(syntax(ln, format!("unknown arc {arc}")));
        }
        if hosts.insert(dsu.find(arc), h).is_some() {
            return Err(syntax(ln, "piece contained twice"));
        }
    }
    let mut pieces = Vec::new();
    for (ln, d) in outers {
        if d.arc >= n {
            return Err(syntax(ln, format!("unknown arc {}", d.arc)));
        }
        let host = hosts.remove(&dsu.find(d.arc)).ok_or_else(|| syntax(ln, "piece has no `contain` line"))?;
        pieces.push(Placement { outer: d, host });
    }
    if !hosts.is_empty() {
        return Err(syntax(0, "`contain` line for a piece without `outer`"));
    }
    Ok(DottedGraph::from_parts(crossings, arcs, free, pieces)?)
}
