//! `.poly` files: one component per line, tokens `D x y` / `X x y` in
//! traversal order, `#` starts a comment.

use crate::polytope::{Corner, LatticePolytope, Mark, PolytopeError};
use std::fmt::Write;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolyFileError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: {err}")]
    Invalid { line: usize, col: usize, err: PolytopeError },
}

/// Corner lists plus the (line, column) of every corner's mark token.
pub type Positions = Vec<Vec<(usize, usize)>>;

pub fn parse_raw(text: &str) -> Result<(Vec<Vec<Corner>>, Positions), PolyFileError> {
    let mut comps = Vec::new();
    let mut pos = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut col = 0;
        for t in body.split_whitespace() {
            let at = body[col..].find(t).unwrap() + col;
            col = at + t.len();
            toks.push((at + 1, t));
        }
        if toks.is_empty() {
            continue;
        }
        if toks.len() % 3 != 0 {
            let (c, _) = toks[toks.len() - toks.len() % 3];
            return Err(PolyFileError::Syntax { line: ln + 1, col: c, msg: "expected triples `D x y` or `X x y`".into() });
        }
        let mut corners = Vec::new();
        let mut cpos = Vec::new();
        for tr in toks.chunks(3) {
            let mark = match tr[0].1 {
                "D" | "d" => Mark::Dot,
                "X" | "x" => Mark::X,
                other => {
                    return Err(PolyFileError::Syntax { line: ln + 1, col: tr[0].0, msg: format!("unknown mark `{other}`") })
                }
            };
            let num = |i: usize| {
                tr[i].1.parse::<i64>().map_err(|_| PolyFileError::Syntax {
                    line: ln + 1,
                    col: tr[i].0,
                    msg: format!("`{}` is not an integer", tr[i].1),
                })
            };
            corners.push(Corner { point: crate::polytope::GridPoint::new(num(1)?, num(2)?), mark });
            cpos.push((ln + 1, tr[0].0));
        }
        comps.push(corners);
        pos.push(cpos);
    }
    Ok((comps, pos))
}

pub fn parse(text: &str) -> Result<LatticePolytope, PolyFileError> {
    let (raw, pos) = parse_raw(text)?;
    LatticePolytope::validate(raw).map_err(|err| {
        let (line, col) = err
            .loc()
            .and_then(|l| pos.get(l.component).and_then(|p| p.get(l.corner)).copied())
            .unwrap_or((0, 0));
        PolyFileError::Invalid { line, col, err }
    })
}

pub fn serialize(p: &LatticePolytope) -> String {
    let mut s = String::new();
    for c in p.components() {
        let toks: Vec<String> = c
            .corners()
            .iter()
            .map(|k| format!("{} {} {}", if k.mark == Mark::Dot { 'D' } else { 'X' }, k.point.x, k.point.y))
            .collect();
        let _ = writeln!(s, "{}", toks.join(" "));
    }
    s
}
