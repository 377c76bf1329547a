//! Text formats: `.hrlq` instances, `.g` edge-list graphs and `.match`
//! matchings.
//!
//! ```text
//! # instance
//! resident r1: h1 h2
//! hospital h1 [1,1]: r1 r2
//! ```
//!
//! Lists are most-preferred first. `#` starts a comment. Serialization
//! writes residents in index order, then hospitals, one declaration per
//! line; parsing a serialized instance yields the same instance.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{
    Instance, Matching, RawHospital, RawInstance, RawResident, Side, ValidationError,
};
use crate::reductions::{GraphError, SourceGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("malformed quota {0:?}, expected [l,u]")]
    MalformedQuota(String),
    #[error("quota inversion: [{0},{1}]")]
    QuotaInversion(usize, usize),
    #[error("unknown {0} {1}")]
    UnknownName(Side, String),
    #[error("duplicate preference entry {0}")]
    DuplicateEntry(String),
    #[error("{0} {1} declared twice")]
    DuplicateDeclaration(Side, String),
    #[error("{0}")]
    Invalid(ValidationError),
    #[error("bad number {0:?}")]
    BadNumber(String),
    #[error("{0}")]
    Graph(GraphError),
    #[error("header announces {announced} edges, found {found}")]
    EdgeCount { announced: usize, found: usize },
    #[error("resident {0} assigned twice")]
    DuplicateAssignment(String),
    #[error("unacceptable pair ({0},{1})")]
    UnacceptablePair(String, String),
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

/// Non-comment tokens of one line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &content[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &content[s..]));
    }
    out
}

struct Declaration<'a> {
    line: usize,
    name: &'a str,
    list: Vec<(usize, &'a str)>,
}

fn parse_quota(line: usize, column: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let malformed = || {
        err(
            line,
            column,
            ParseErrorKind::MalformedQuota(text.to_string()),
        )
    };
    let inner = text
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(malformed)?;
    let (l, u) = inner.split_once(',').ok_or_else(malformed)?;
    let l: usize = l.trim().parse().map_err(|_| malformed())?;
    let u: usize = u.trim().parse().map_err(|_| malformed())?;
    if l > u {
        return Err(err(line, column, ParseErrorKind::QuotaInversion(l, u)));
    }
    Ok((l, u))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut residents: Vec<Declaration> = Vec::new();
    let mut hospitals: Vec<(Declaration, (usize, usize))> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw_line);
        if toks.is_empty() {
            continue;
        }
        // the head ends at the first token carrying ':'
        let colon = toks
            .iter()
            .position(|(_, t)| t.contains(':'))
            .ok_or_else(|| {
                err(
                    line,
                    toks[0].0,
                    ParseErrorKind::Expected("':' after the declaration head"),
                )
            })?;
        let (col_c, tok_c) = toks[colon];
        let (before, after) = tok_c.split_once(':').expect("token contains ':'");
        let mut head: Vec<(usize, &str)> = toks[..colon].to_vec();
        if !before.is_empty() {
            head.push((col_c, before));
        }
        let mut list: Vec<(usize, &str)> = Vec::new();
        if !after.is_empty() {
            list.push((col_c + before.len() + 1, after));
        }
        list.extend_from_slice(&toks[colon + 1..]);

        match head.first().map(|&(_, t)| t) {
            Some("resident") => {
                if head.len() != 2 {
                    return Err(err(
                        line,
                        head[0].0,
                        ParseErrorKind::Expected("resident <name>:"),
                    ));
                }
                residents.push(Declaration {
                    line,
                    name: head[1].1,
                    list,
                });
            }
            Some("hospital") => {
                if head.len() < 3 {
                    return Err(err(
                        line,
                        head[0].0,
                        ParseErrorKind::Expected("hospital <name> [<l>,<u>]:"),
                    ));
                }
                let quota_text: String = head[2..].iter().map(|&(_, t)| t).collect();
                let quota = parse_quota(line, head[2].0, &quota_text)?;
                hospitals.push((
                    Declaration {
                        line,
                        name: head[1].1,
                        list,
                    },
                    quota,
                ));
            }
            _ => {
                return Err(err(
                    line,
                    toks[0].0,
                    ParseErrorKind::Expected("'resident' or 'hospital'"),
                ))
            }
        }
    }

    let mut resident_names = HashSet::new();
    for d in &residents {
        if !resident_names.insert(d.name) {
            return Err(err(
                d.line,
                1,
                ParseErrorKind::DuplicateDeclaration(Side::Resident, d.name.to_string()),
            ));
        }
    }
    let mut hospital_names = HashSet::new();
    for (d, _) in &hospitals {
        if !hospital_names.insert(d.name) {
            return Err(err(
                d.line,
                1,
                ParseErrorKind::DuplicateDeclaration(Side::Hospital, d.name.to_string()),
            ));
        }
    }
    let check_list =
        |d: &Declaration, known: &HashSet<&str>, kind: Side| -> Result<(), ParseError> {
            let mut seen = HashSet::new();
            for &(col, name) in &d.list {
                if !known.contains(name) {
                    return Err(err(
                        d.line,
                        col,
                        ParseErrorKind::UnknownName(kind, name.to_string()),
                    ));
                }
                if !seen.insert(name) {
                    return Err(err(
                        d.line,
                        col,
                        ParseErrorKind::DuplicateEntry(name.to_string()),
                    ));
                }
            }
            Ok(())
        };
    for d in &residents {
        check_list(d, &hospital_names, Side::Hospital)?;
    }
    for (d, _) in &hospitals {
        check_list(d, &resident_names, Side::Resident)?;
    }

    let names = |d: &Declaration| d.list.iter().map(|&(_, n)| n.to_string()).collect();
    let raw = RawInstance {
        residents: residents
            .iter()
            .map(|d| RawResident {
                name: d.name.to_string(),
                prefs: names(d),
            })
            .collect(),
        hospitals: hospitals
            .iter()
            .map(|(d, (l, u))| RawHospital {
                name: d.name.to_string(),
                lower: *l,
                upper: *u,
                prefs: names(d),
            })
            .collect(),
    };
    raw.validate().map_err(|errors| {
        let first = errors
            .into_iter()
            .next()
            .expect("validation failed with an error");
        let line = match &first {
            ValidationError::OneSided {
                resident,
                hospital,
                listed_by,
            } => match listed_by {
                Side::Resident => residents
                    .iter()
                    .find(|d| d.name == resident)
                    .map(|d| d.line),
                Side::Hospital => hospitals
                    .iter()
                    .find(|(d, _)| d.name == hospital)
                    .map(|(d, _)| d.line),
            },
            _ => None,
        };
        err(line.unwrap_or(0), 1, ParseErrorKind::Invalid(first))
    })
}

/// Canonical text of an instance.
pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    for r in 0..instance.num_residents() {
        write!(out, "resident {}:", instance.resident_name(r)).unwrap();
        for &h in instance.resident_prefs(r) {
            write!(out, " {}", instance.hospital_name(h)).unwrap();
        }
        out.push('\n');
    }
    for h in 0..instance.num_hospitals() {
        write!(
            out,
            "hospital {} {}:",
            instance.hospital_name(h),
            instance.quota(h)
        )
        .unwrap();
        for &r in instance.hospital_prefs(h) {
            write!(out, " {}", instance.resident_name(r)).unwrap();
        }
        out.push('\n');
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str)) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| err(line, col, ParseErrorKind::BadNumber(tok.to_string())))
}

/// Parses `p <n> <m>` followed by `e <i> <j>` lines (1-based, `i < j`).
/// Lines starting with `c` or `#` are comments. `k` becomes the target.
pub fn parse_graph(text: &str, k: usize) -> Result<SourceGraph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    let mut last_line = 0;
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw_line);
        match toks.first().map(|&(_, t)| t) {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(err(line, 1, ParseErrorKind::Expected("a single 'p' line")));
                }
                // tolerate the DIMACS form `p edge <n> <m>`
                let mut nums = &toks[1..];
                if nums.len() == 3 && nums[0].1.parse::<usize>().is_err() {
                    nums = &nums[1..];
                }
                if nums.len() != 2 {
                    return Err(err(line, toks[0].0, ParseErrorKind::Expected("p <n> <m>")));
                }
                header = Some((number(line, nums[0])?, number(line, nums[1])?, line));
            }
            Some("e") => {
                if header.is_none() {
                    return Err(err(
                        line,
                        1,
                        ParseErrorKind::Expected("'p' line before edges"),
                    ));
                }
                if toks.len() != 3 {
                    return Err(err(line, toks[0].0, ParseErrorKind::Expected("e <i> <j>")));
                }
                edges.push((number(line, toks[1])?, number(line, toks[2])?));
                edge_lines.push(line);
            }
            Some(_) => {
                return Err(err(
                    line,
                    toks[0].0,
                    ParseErrorKind::Expected("'p', 'e' or 'c' line"),
                ))
            }
        }
    }
    let (n, m, header_line) =
        header.ok_or_else(|| err(last_line.max(1), 1, ParseErrorKind::Expected("'p' line")))?;
    if m != edges.len() {
        return Err(err(
            header_line,
            1,
            ParseErrorKind::EdgeCount {
                announced: m,
                found: edges.len(),
            },
        ));
    }
    SourceGraph::new(n, edges.clone(), k).map_err(|e| {
        let line = match &e {
            GraphError::BadEdge(i, j) | GraphError::DuplicateEdge(i, j) => edges
                .iter()
                .rposition(|&p| p == (*i, *j))
                .map_or(header_line, |p| edge_lines[p]),
            GraphError::TargetTooLarge { .. } => header_line,
        };
        err(line, 1, ParseErrorKind::Graph(e))
    })
}

/// Parses `match <resident> <hospital>` lines against `instance`.
pub fn parse_matching(text: &str, instance: &Instance) -> Result<Matching, ParseError> {
    let mut m = Matching::empty(instance);
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw_line);
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 3 || toks[0].1 != "match" {
            return Err(err(
                line,
                toks[0].0,
                ParseErrorKind::Expected("match <resident> <hospital>"),
            ));
        }
        let (rc, rname) = toks[1];
        let (hc, hname) = toks[2];
        let r = instance.resident_id(rname).ok_or_else(|| {
            err(
                line,
                rc,
                ParseErrorKind::UnknownName(Side::Resident, rname.to_string()),
            )
        })?;
        let h = instance.hospital_id(hname).ok_or_else(|| {
            err(
                line,
                hc,
                ParseErrorKind::UnknownName(Side::Hospital, hname.to_string()),
            )
        })?;
        if m.hospital_of(r).is_some() {
            return Err(err(
                line,
                rc,
                ParseErrorKind::DuplicateAssignment(rname.to_string()),
            ));
        }
        if !instance.is_acceptable(r, h) {
            return Err(err(
                line,
                rc,
                ParseErrorKind::UnacceptablePair(rname.to_string(), hname.to_string()),
            ));
        }
        m.assign(r, h);
    }
    Ok(m)
}

pub fn serialize_matching(instance: &Instance, matching: &Matching) -> String {
    let mut out = String::new();
    for (r, h) in matching.pairs() {
        writeln!(
            out,
            "match {} {}",
            instance.resident_name(r),
            instance.hospital_name(h)
        )
        .unwrap();
    }
    out
}

/// Resident/hospital names of index pairs.
pub(crate) fn name_pairs(instance: &Instance, pairs: &[(usize, usize)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|&(r, h)| {
            (
                instance.resident_name(r).to_string(),
                instance.hospital_name(h).to_string(),
            )
        })
        .collect()
}
