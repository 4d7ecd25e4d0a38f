//! Case-file readers.
//!
//! Native format (UTF-8, one directive per line, `#` starts a comment):
//!
//! ```text
//! buses <N>
//! edge <line_id> <from> <to>
//! zib <bus>
//! cost <bus> <value>
//! ```
//!
//! The MATPOWER reader understands the `mpc.bus`, `mpc.gen` and `mpc.branch`
//! matrices of a version-2 case file and ignores everything else.

use std::collections::BTreeSet;

use thiserror::Error;

use super::network::{Network, NetworkError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseFormat {
    Native,
    /// MATPOWER subset. With `detect_zib`, buses with zero real and reactive
    /// load and no in-service generator are flagged as zero-injection.
    Matpower {
        detect_zib: bool,
    },
}

/// Parse failure. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: bus {bus} out of range 1..={bus_count}")]
    BusOutOfRange {
        line: usize,
        bus: usize,
        bus_count: usize,
    },
    #[error("line {line}: duplicate line id {line_id}")]
    DuplicateLineId { line: usize, line_id: usize },
    #[error("empty network")]
    EmptyNetwork,
    #[error(transparent)]
    Network(#[from] NetworkError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_case<T: Scalar>(text: &str, format: CaseFormat) -> Result<Network<T>, ParseError> {
    match format {
        CaseFormat::Native => parse_native(text),
        CaseFormat::Matpower { detect_zib } => parse_matpower(text, detect_zib),
    }
}

fn parse_index(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

fn parse_native<T: Scalar>(text: &str) -> Result<Network<T>, ParseError> {
    let mut bus_count: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut zibs = Vec::new();
    let mut costs = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, args)) = toks.split_first() else {
            continue;
        };
        let want = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(syntax(
                    line,
                    format!("`{head}` takes {n} argument(s), got {}", args.len()),
                ))
            }
        };
        match head {
            "buses" => {
                want(1)?;
                if bus_count.is_some() {
                    return Err(syntax(line, "`buses` given more than once"));
                }
                bus_count = Some((parse_index(args[0], line, "bus count")?, line));
            }
            "edge" => {
                want(3)?;
                edges.push((
                    line,
                    parse_index(args[0], line, "line id")?,
                    parse_index(args[1], line, "bus")?,
                    parse_index(args[2], line, "bus")?,
                ));
            }
            "zib" => {
                want(1)?;
                zibs.push((line, parse_index(args[0], line, "bus")?));
            }
            "cost" => {
                want(2)?;
                let bus = parse_index(args[0], line, "bus")?;
                let value = T::parse_literal(args[1])
                    .ok_or_else(|| syntax(line, format!("invalid cost `{}`", args[1])))?;
                costs.push((line, bus, value));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }

    let (n, _) = bus_count.ok_or(ParseError::EmptyNetwork)?;
    if n == 0 {
        return Err(ParseError::EmptyNetwork);
    }
    let in_range = |line: usize, bus: usize| {
        if bus == 0 || bus > n {
            Err(ParseError::BusOutOfRange {
                line,
                bus,
                bus_count: n,
            })
        } else {
            Ok(bus)
        }
    };

    let mut ids = BTreeSet::new();
    for &(line, id, from, to) in &edges {
        in_range(line, from)?;
        in_range(line, to)?;
        if from == to {
            return Err(syntax(
                line,
                format!("line {id} connects bus {from} to itself"),
            ));
        }
        if !ids.insert(id) {
            return Err(ParseError::DuplicateLineId { line, line_id: id });
        }
    }
    for &(line, bus) in &zibs {
        in_range(line, bus)?;
    }
    let mut cost = vec![T::one(); n];
    for &(line, bus, value) in &costs {
        in_range(line, bus)?;
        cost[bus - 1] = value;
    }

    Ok(
        Network::new(n, edges.iter().map(|&(_, id, f, t)| (id, f, t)))?
            .with_zib(zibs.iter().map(|&(_, b)| b))?
            .with_costs(cost)?,
    )
}

/// One numeric matrix from a MATPOWER file, with the source line of each row.
#[derive(Debug, Default)]
struct Matrix {
    rows: Vec<(usize, Vec<f64>)>,
}

fn parse_matpower<T: Scalar>(text: &str, detect_zib: bool) -> Result<Network<T>, ParseError> {
    let mut bus = None;
    let mut gen = None;
    let mut branch = None;

    let mut current: Option<(String, Matrix)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut content = raw.split('%').next().unwrap_or("").trim();
        if current.is_none() {
            let Some(rest) = content.strip_prefix("mpc.") else {
                continue;
            };
            let Some((name, rhs)) = rest.split_once('=') else {
                continue;
            };
            let Some(body) = rhs.trim().strip_prefix('[') else {
                continue;
            };
            current = Some((name.trim().to_string(), Matrix::default()));
            content = body;
        }
        let (name, matrix) = current.as_mut().expect("inside a matrix");
        let (body, closed) = match content.split_once(']') {
            Some((b, _)) => (b, true),
            None => (content, false),
        };
        for row in body.split(';') {
            let values = row
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| syntax(line, format!("invalid number `{t}` in mpc.{name}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !values.is_empty() {
                matrix.rows.push((line, values));
            }
        }
        if closed {
            let (name, matrix) = current.take().expect("inside a matrix");
            match name.as_str() {
                "bus" => bus = Some(matrix),
                "gen" => gen = Some(matrix),
                "branch" => branch = Some(matrix),
                _ => {}
            }
        }
    }
    if let Some((name, _)) = current {
        return Err(syntax(
            text.lines().count(),
            format!("unterminated matrix mpc.{name}"),
        ));
    }

    let bus = bus.ok_or(ParseError::EmptyNetwork)?;
    let n = bus.rows.len();
    if n == 0 {
        return Err(ParseError::EmptyNetwork);
    }

    let as_bus = |line: usize, v: f64| -> Result<usize, ParseError> {
        if v.fract() != 0.0 || v < 0.0 {
            return Err(syntax(line, format!("bus number `{v}` is not an integer")));
        }
        let b = v as usize;
        if b == 0 || b > n {
            return Err(ParseError::BusOutOfRange {
                line,
                bus: b,
                bus_count: n,
            });
        }
        Ok(b)
    };

    let mut loads = vec![(0.0, 0.0); n];
    let mut seen = vec![false; n];
    for (line, row) in &bus.rows {
        if row.len() < 4 {
            return Err(syntax(*line, "bus row needs at least 4 columns"));
        }
        let b = as_bus(*line, row[0])?;
        if std::mem::replace(&mut seen[b - 1], true) {
            return Err(syntax(*line, format!("bus {b} defined twice")));
        }
        loads[b - 1] = (row[2], row[3]);
    }

    let mut generating = vec![false; n];
    for (line, row) in gen.iter().flat_map(|m| &m.rows) {
        let b = as_bus(*line, row[0])?;
        let in_service = row.get(7).is_none_or(|&s| s > 0.0);
        if in_service {
            generating[b - 1] = true;
        }
    }

    let mut edges = Vec::new();
    for (i, (line, row)) in branch.iter().flat_map(|m| &m.rows).enumerate() {
        if row.len() < 2 {
            return Err(syntax(*line, "branch row needs at least 2 columns"));
        }
        let (f, t) = (as_bus(*line, row[0])?, as_bus(*line, row[1])?);
        if f == t {
            return Err(syntax(*line, format!("branch connects bus {f} to itself")));
        }
        edges.push((i + 1, f, t));
    }

    let net = Network::new(n, edges)?;
    if detect_zib {
        let zib = (0..n).filter(|&i| loads[i] == (0.0, 0.0) && !generating[i]);
        Ok(net.with_zib(zib.map(|i| i + 1))?)
    } else {
        Ok(net)
    }
}
