//! Text formats.
//!
//! * Matrix (`.dvm`): one row per line, comma-separated non-negative decimal
//!   integers, no header, newline-terminated.
//! * Solution: one line of comma-separated ascending 1-based column indices.
//! * Hitting set (`.hs`): first line `|U| |C|`, then one set per line as
//!   space-separated ascending 1-based elements.
//! * Graph: first line `n m`, then `m` lines `u v` (1-based).

use std::fs;
use std::path::Path;

use crate::error::{DvError, Result};
use crate::generators::Graph;
use crate::hitting_set::HittingSetInstance;
use crate::matrix::{Grid, Matrix, Solution, Symbol};

fn parse_err(line: usize, message: impl Into<String>) -> DvError {
    DvError::Parse {
        line,
        message: message.into(),
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    body.split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    if text.is_empty() {
        return Err(parse_err(1, "empty matrix file"));
    }
    let mut rows: Vec<Vec<Symbol>> = Vec::new();
    let mut width = None;
    for (no, line) in lines(text) {
        let row: Vec<Symbol> = if line.is_empty() {
            Vec::new()
        } else {
            line.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<Symbol>()
                        .map_err(|_| parse_err(no, format!("not a non-negative integer: {tok:?}")))
                })
                .collect::<Result<_>>()?
        };
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(parse_err(no, format!("ragged row: expected {w} entries, found {}", row.len())))
            }
            _ => {}
        }
        rows.push(row);
    }
    Matrix::from_grid(Grid::from_rows(rows)?)
}

pub fn format_matrix(m: &Matrix) -> String {
    m.to_string()
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<Matrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn save_matrix(m: &Matrix, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_matrix(m))?;
    Ok(())
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Solution::empty());
    }
    let cols = text
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| parse_err(1, format!("not a column index: {tok:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Solution::new(cols)
}

pub fn format_solution(s: &Solution) -> String {
    format!("{s}\n")
}

fn parse_numbers(no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(no, format!("not a non-negative integer: {tok:?}")))
        })
        .collect()
}

/// Parses the `.hs` format. The budget is not part of the file.
pub fn parse_hitting_set(text: &str, k: usize) -> Result<HittingSetInstance> {
    let mut it = lines(text);
    let (no, header) = it.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let head = parse_numbers(no, header)?;
    let [universe, count] = head[..] else {
        return Err(parse_err(no, "header must be \"|U| |C|\""));
    };
    let mut sets = Vec::with_capacity(count);
    for (no, line) in it {
        if line.trim().is_empty() && sets.len() == count {
            continue;
        }
        let set = parse_numbers(no, line)?;
        if set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(no, "set elements must be strictly ascending"));
        }
        if let Some(&e) = set.iter().find(|&&e| e == 0 || e > universe) {
            return Err(parse_err(no, format!("element {e} outside 1..={universe}")));
        }
        sets.push(set);
    }
    if sets.len() != count {
        return Err(parse_err(1, format!("header announces {count} sets, found {}", sets.len())));
    }
    HittingSetInstance::new(universe, sets, k)
}

pub fn format_hitting_set(hs: &HittingSetInstance) -> String {
    let mut out = format!("{} {}\n", hs.universe_size(), hs.sets().len());
    for s in hs.sets() {
        let parts: Vec<String> = s.iter().map(usize::to_string).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text).filter(|(_, l)| !l.trim().is_empty());
    let (no, header) = it.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let head = parse_numbers(no, header)?;
    let [n, m] = head[..] else {
        return Err(parse_err(no, "header must be \"n m\""));
    };
    let mut edges = Vec::with_capacity(m);
    for (no, line) in it {
        let e = parse_numbers(no, line)?;
        let [u, v] = e[..] else {
            return Err(parse_err(no, "edge line must be \"u v\""));
        };
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(1, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edges().len());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
