//! Text formats shared by the CLI and the test corpora.
//!
//! Graph files: a header `p mc <n> <m>` followed by m lines `e <u> <v>` with
//! 0-based endpoints; `c` lines are comments, blank lines are ignored.
//! Cut files: `s yes` with one `X <indices>` and one `Y <indices>` line, or
//! `s no`; verdict output appends a `method <name>` line, which the parser
//! tolerates. Gadget recipes serialize as `role <index> <tag>` lines.
//! All writers emit ASCII with a trailing newline and round-trip exactly.

use crate::engine::Cut;
use crate::graph::Graph;
use crate::reductions::{GadgetRecipe, Role};
use crate::solvers::Verdict;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub kind: FormatErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatErrorKind {
    #[error("expected `p mc <n> <m>` header")]
    MissingHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("invalid integer")]
    InvalidInteger,
    #[error("missing token")]
    MissingToken,
    #[error("unexpected token")]
    UnexpectedToken,
    #[error("unknown line type")]
    UnknownLineType,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("header declared {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("expected `s yes` or `s no`")]
    MalformedStatus,
    #[error("duplicate `s` line")]
    DuplicateStatus,
    #[error("`{0}` line without a preceding `s yes`")]
    UnexpectedSideLine(char),
    #[error("duplicate `{0}` line")]
    DuplicateSideLine(char),
    #[error("missing `{0}` line")]
    MissingSideLine(char),
}

fn fail<T>(line: usize, column: usize, kind: FormatErrorKind) -> Result<T, FormatError> {
    Err(FormatError { line, column, kind })
}

/// Tokens of one line with their 1-based starting columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_usize(tok: &str, line: usize, column: usize) -> Result<usize, FormatError> {
    tok.parse()
        .map_err(|_| FormatError { line, column, kind: FormatErrorKind::InvalidInteger })
}

fn end_column(line: &str) -> usize {
    line.len() + 1
}

/// Parses the edge-list graph format, reporting the first problem with its
/// line and column.
pub fn parse_graph(input: &str) -> Result<Graph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut line_count = 0;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        line_count = line;
        let toks = tokenize(raw);
        let Some(&(head_col, head)) = toks.first() else {
            continue;
        };
        match head {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return fail(line, head_col, FormatErrorKind::DuplicateHeader);
                }
                match toks.get(1) {
                    Some(&(_, "mc")) => {}
                    Some(&(col, _)) => return fail(line, col, FormatErrorKind::UnexpectedToken),
                    None => return fail(line, end_column(raw), FormatErrorKind::MissingToken),
                }
                let mut nums = [0usize; 2];
                for (slot, num) in nums.iter_mut().enumerate() {
                    match toks.get(2 + slot) {
                        Some(&(col, tok)) => *num = parse_usize(tok, line, col)?,
                        None => return fail(line, end_column(raw), FormatErrorKind::MissingToken),
                    }
                }
                if let Some(&(col, _)) = toks.get(4) {
                    return fail(line, col, FormatErrorKind::UnexpectedToken);
                }
                header = Some((nums[0], nums[1]));
            }
            "e" => {
                let Some((n, m)) = header else {
                    return fail(line, head_col, FormatErrorKind::MissingHeader);
                };
                let mut ends = [(0usize, 0usize); 2];
                for (slot, end) in ends.iter_mut().enumerate() {
                    match toks.get(1 + slot) {
                        Some(&(col, tok)) => *end = (parse_usize(tok, line, col)?, col),
                        None => return fail(line, end_column(raw), FormatErrorKind::MissingToken),
                    }
                }
                if let Some(&(col, _)) = toks.get(3) {
                    return fail(line, col, FormatErrorKind::UnexpectedToken);
                }
                let [(u, u_col), (v, v_col)] = ends;
                for &(w, col) in &[(u, u_col), (v, v_col)] {
                    if w >= n {
                        return fail(
                            line,
                            col,
                            FormatErrorKind::VertexOutOfRange { vertex: w, count: n },
                        );
                    }
                }
                if u == v {
                    return fail(line, head_col, FormatErrorKind::SelfLoop(u));
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return fail(line, head_col, FormatErrorKind::DuplicateEdge(key.0, key.1));
                }
                if edges.len() == m {
                    return fail(
                        line,
                        head_col,
                        FormatErrorKind::EdgeCountMismatch { declared: m, found: m + 1 },
                    );
                }
                edges.push((u, v));
            }
            _ => return fail(line, head_col, FormatErrorKind::UnknownLineType),
        }
    }
    let Some((n, m)) = header else {
        return fail(line_count + 1, 1, FormatErrorKind::MissingHeader);
    };
    if edges.len() != m {
        return fail(
            line_count + 1,
            1,
            FormatErrorKind::EdgeCountMismatch { declared: m, found: edges.len() },
        );
    }
    Ok(Graph::new(n, &edges).expect("edges validated during parsing"))
}

/// Serializes a graph so that [`parse_graph`] reproduces it exactly.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p mc {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u, v).unwrap();
    }
    out
}

fn parse_side_indices(
    toks: &[(usize, &str)],
    line: usize,
) -> Result<Vec<usize>, FormatError> {
    toks.iter()
        .map(|&(col, tok)| parse_usize(tok, line, col))
        .collect()
}

/// Parses a cut file: `Some(cut)` for `s yes` with its sides, `None` for
/// `s no`. A trailing `method` line (verdict output) is accepted and
/// ignored.
pub fn parse_cut(input: &str) -> Result<Option<Cut>, FormatError> {
    let mut status: Option<bool> = None;
    let mut x: Option<Vec<usize>> = None;
    let mut y: Option<Vec<usize>> = None;
    let mut line_count = 0;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        line_count = line;
        let toks = tokenize(raw);
        let Some(&(head_col, head)) = toks.first() else {
            continue;
        };
        match head {
            "c" | "method" => continue,
            "s" => {
                if status.is_some() {
                    return fail(line, head_col, FormatErrorKind::DuplicateStatus);
                }
                match toks.get(1) {
                    Some(&(_, "yes")) => status = Some(true),
                    Some(&(_, "no")) => status = Some(false),
                    Some(&(col, _)) => return fail(line, col, FormatErrorKind::MalformedStatus),
                    None => {
                        return fail(line, end_column(raw), FormatErrorKind::MalformedStatus)
                    }
                }
                if let Some(&(col, _)) = toks.get(2) {
                    return fail(line, col, FormatErrorKind::UnexpectedToken);
                }
            }
            "X" | "Y" => {
                let side = head.chars().next().unwrap();
                if status != Some(true) {
                    return fail(line, head_col, FormatErrorKind::UnexpectedSideLine(side));
                }
                let slot = if side == 'X' { &mut x } else { &mut y };
                if slot.is_some() {
                    return fail(line, head_col, FormatErrorKind::DuplicateSideLine(side));
                }
                *slot = Some(parse_side_indices(&toks[1..], line)?);
            }
            _ => return fail(line, head_col, FormatErrorKind::UnknownLineType),
        }
    }
    match status {
        None => fail(line_count + 1, 1, FormatErrorKind::MalformedStatus),
        Some(false) => Ok(None),
        Some(true) => {
            let Some(x) = x else {
                return fail(line_count + 1, 1, FormatErrorKind::MissingSideLine('X'));
            };
            let Some(y) = y else {
                return fail(line_count + 1, 1, FormatErrorKind::MissingSideLine('Y'));
            };
            Ok(Some(Cut::new(x, y)))
        }
    }
}

fn push_side(out: &mut String, label: char, side: &[usize]) {
    out.push(label);
    for v in side {
        write!(out, " {}", v).unwrap();
    }
    out.push('\n');
}

/// Serializes a cut as `s yes` with both sides.
pub fn write_cut(cut: &Cut) -> String {
    let mut out = String::from("s yes\n");
    push_side(&mut out, 'X', cut.side_x());
    push_side(&mut out, 'Y', cut.side_y());
    out
}

/// Serializes a verdict: the cut lines (or `s no`) plus a `method` line.
pub fn write_verdict(verdict: &Verdict) -> String {
    let mut out = match verdict.witness() {
        Some(cut) => write_cut(cut),
        None => String::from("s no\n"),
    };
    writeln!(out, "method {}", verdict.method().as_str()).unwrap();
    out
}

/// Serializes a gadget recipe as one `role` line per gadget vertex.
pub fn write_recipe(recipe: &GadgetRecipe) -> String {
    let mut out = String::new();
    for (v, role) in recipe.roles().iter().enumerate() {
        match *role {
            Role::Original(i) => writeln!(out, "role {} original {}", v, i),
            Role::Clique { block, slot } => writeln!(out, "role {} clique {} {}", v, block, slot),
            Role::Shadow { block, slot } => writeln!(out, "role {} shadow {} {}", v, block, slot),
            Role::Chain { level, primed: false } => writeln!(out, "role {} chain {}", v, level),
            Role::Chain { level, primed: true } => {
                writeln!(out, "role {} chain_prime {}", v, level)
            }
        }
        .unwrap();
    }
    out
}
