//! The `lehyper v1` text format.
//!
//! ```text
//! lehyper v1
//! n 2
//! cell 0 0 : 0
//! cell 0 1 : 0
//! cell 1 0 : 0
//! cell 1 1 : 1
//! le 0 0
//! le 1 1
//! fuzzy fA : 1 0
//! ```
//!
//! The header and the `n` line come first. `cell`, `le` and `fuzzy` lines may
//! appear in any order; every cell must be given exactly once. Blank lines
//! and lines starting with `#` are ignored. The canonical form written by
//! [`serialize_file`] lists cells row-major with ascending elements, then
//! sorted `le` pairs, then fuzzy subsets sorted by name.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::fuzzy::{FuzzySubset, Grade, GradeError};
use crate::structure::{Hypergroupoid, LeHypergroupoid, Relation};
use crate::subset::{Subset, MAX_ORDER};

pub const HEADER: &str = "lehyper v1";

/// A parsed structure file: the structure plus its named fuzzy subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFile {
    pub structure: LeHypergroupoid,
    pub fuzzy: BTreeMap<String, FuzzySubset>,
}

impl StructureFile {
    pub fn new(structure: LeHypergroupoid) -> Self {
        StructureFile {
            structure,
            fuzzy: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header {HEADER:?}")]
    MissingHeader,
    #[error("expected `n <count>` with count in 1..={MAX_ORDER}")]
    BadOrder,
    #[error("unknown directive {0:?}")]
    UnknownDirective(String),
    #[error("malformed line: {0}")]
    Malformed(&'static str),
    #[error("index {index} is out of range for order {order}")]
    IndexOutOfRange { index: String, order: usize },
    #[error("cell ({0}, {1}) lists no elements")]
    EmptyCell(usize, usize),
    #[error("cell ({0}, {1}) given twice")]
    DuplicateCell(usize, usize),
    #[error("cell ({0}, {1}) is missing")]
    MissingCell(usize, usize),
    #[error("fuzzy subset {0:?} defined twice")]
    DuplicateFuzzy(String),
    #[error("fuzzy subset {name:?} has {found} grades, expected {expected}")]
    FuzzyArity {
        name: String,
        found: usize,
        expected: usize,
    },
    #[error(transparent)]
    Grade(#[from] GradeError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn index(tok: &str, order: usize, line: usize) -> Result<usize, ParseError> {
    match tok.parse::<usize>() {
        Ok(i) if i < order && tok.bytes().all(|b| b.is_ascii_digit()) => Ok(i),
        _ => Err(err(
            line,
            ParseErrorKind::IndexOutOfRange {
                index: tok.to_string(),
                order,
            },
        )),
    }
}

pub fn parse_structure(text: &str) -> Result<StructureFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, l)) if l.split_whitespace().eq(HEADER.split_whitespace()) => {}
        Some((no, _)) => return Err(err(no, ParseErrorKind::MissingHeader)),
        None => return Err(err(1, ParseErrorKind::MissingHeader)),
    }

    let (order_line, order) = match lines.next() {
        Some((no, l)) => {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks.as_slice() {
                ["n", k] => match k.parse::<usize>() {
                    Ok(k) if (1..=MAX_ORDER).contains(&k) => (no, k),
                    _ => return Err(err(no, ParseErrorKind::BadOrder)),
                },
                _ => return Err(err(no, ParseErrorKind::BadOrder)),
            }
        }
        None => return Err(err(text.lines().count().max(1), ParseErrorKind::BadOrder)),
    };

    let mut cells: Vec<Option<Subset>> = vec![None; order * order];
    let mut le = Relation::empty();
    let mut fuzzy = BTreeMap::new();
    let mut last_line = order_line;

    for (no, l) in lines {
        last_line = no;
        let directive = l.split_whitespace().next().unwrap_or_default();
        match directive {
            "cell" => {
                let (head, tail) = l
                    .split_once(':')
                    .ok_or(err(no, ParseErrorKind::Malformed("cell line needs ':'")))?;
                let head: Vec<&str> = head.split_whitespace().collect();
                let [_, a, b] = head.as_slice() else {
                    return Err(err(
                        no,
                        ParseErrorKind::Malformed("expected `cell <a> <b> : ...`"),
                    ));
                };
                let (a, b) = (index(a, order, no)?, index(b, order, no)?);
                let mut value = Subset::EMPTY;
                for tok in tail.split_whitespace() {
                    value.insert(index(tok, order, no)?);
                }
                if value.is_empty() {
                    return Err(err(no, ParseErrorKind::EmptyCell(a, b)));
                }
                let slot = &mut cells[a * order + b];
                if slot.is_some() {
                    return Err(err(no, ParseErrorKind::DuplicateCell(a, b)));
                }
                *slot = Some(value);
            }
            "le" => {
                let toks: Vec<&str> = l.split_whitespace().collect();
                let [_, x, y] = toks.as_slice() else {
                    return Err(err(no, ParseErrorKind::Malformed("expected `le <x> <y>`")));
                };
                le.insert(index(x, order, no)?, index(y, order, no)?);
            }
            "fuzzy" => {
                let (head, tail) = l
                    .split_once(':')
                    .ok_or(err(no, ParseErrorKind::Malformed("fuzzy line needs ':'")))?;
                let head: Vec<&str> = head.split_whitespace().collect();
                let [_, name] = head.as_slice() else {
                    return Err(err(
                        no,
                        ParseErrorKind::Malformed("expected `fuzzy <name> : ...`"),
                    ));
                };
                let grades = tail
                    .split_whitespace()
                    .map(str::parse::<Grade>)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| err(no, e.into()))?;
                if grades.len() != order {
                    return Err(err(
                        no,
                        ParseErrorKind::FuzzyArity {
                            name: name.to_string(),
                            found: grades.len(),
                            expected: order,
                        },
                    ));
                }
                if fuzzy
                    .insert(name.to_string(), FuzzySubset::new(grades))
                    .is_some()
                {
                    return Err(err(no, ParseErrorKind::DuplicateFuzzy(name.to_string())));
                }
            }
            other => return Err(err(no, ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }

    let mut table = Vec::with_capacity(order * order);
    for (k, cell) in cells.into_iter().enumerate() {
        match cell {
            Some(c) => table.push(c),
            None => {
                return Err(err(
                    last_line,
                    ParseErrorKind::MissingCell(k / order, k % order),
                ))
            }
        }
    }
    let structure = LeHypergroupoid::new_unchecked(Hypergroupoid::from_cells(order, table), le);
    debug_assert!(structure.validate().holds());
    Ok(StructureFile { structure, fuzzy })
}

/// Canonical text of the structure alone.
pub fn serialize_structure(lh: &LeHypergroupoid) -> String {
    let mut out = String::new();
    write_structure(&mut out, lh);
    out
}

/// Canonical text of a structure file including its fuzzy subsets.
pub fn serialize_file(file: &StructureFile) -> String {
    let mut out = String::new();
    write_structure(&mut out, &file.structure);
    for (name, f) in &file.fuzzy {
        let _ = write!(out, "fuzzy {name} :");
        for g in f.grades() {
            let _ = write!(out, " {g}");
        }
        out.push('\n');
    }
    out
}

fn write_structure(out: &mut String, lh: &LeHypergroupoid) {
    let n = lh.order();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "n {n}");
    for a in 0..n {
        for b in 0..n {
            let _ = write!(out, "cell {a} {b} :");
            for e in lh.cell(a, b).iter() {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
    }
    for (x, y) in lh.le().pairs() {
        let _ = writeln!(out, "le {x} {y}");
    }
}

/// SHA-256 of the canonical structure text, hex encoded.
pub fn structure_digest(lh: &LeHypergroupoid) -> String {
    let digest = Sha256::digest(serialize_structure(lh).as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}
