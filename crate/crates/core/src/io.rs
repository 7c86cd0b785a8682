//! Line-oriented text formats: sets, base sequences, colorings, witnesses,
//! sweep reports.
//!
//! Each format opens with a `<name> v1` header line. `#` starts a comment,
//! blank lines are skipped. Readers are lenient about point order and
//! unreduced fractions and normalize on construction; writers always emit
//! canonical order and lowest terms, so everything the engine writes parses
//! back to an equal value and re-serializes byte-identically.
//!
//! Structural damage (missing header, malformed numbers, duplicate points,
//! wrong field counts) is a format error carrying the 1-based line number.
//! Semantically wrong but well-formed content, such as a tampered witness
//! scalar, parses fine; rejecting it is the checker's job.

use std::sync::Arc;
use std::time::Duration;

use num_bigint::BigUint;
use num_traits::One;
use std::str::FromStr;

use crate::base::BaseSequence;
use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::extract::{Witness, WitnessSystem};
use crate::geometry::{Homothety, Point, PointSet};
use crate::rational::Rational;
use crate::verify::SweepReport;

pub const SET_HEADER: &str = "gallai-set v1";
pub const BASE_HEADER: &str = "gallai-base v1";
pub const COLORING_HEADER: &str = "gallai-coloring v1";
pub const WITNESS_HEADER: &str = "gallai-witness v1";
pub const SWEEP_HEADER: &str = "gallai-sweep v1";

/// Content lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn expect_header<'a, I>(lines: &mut I, expected: &str) -> Result<()>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    match lines.next() {
        Some((_, line)) if line == expected => Ok(()),
        Some((num, line)) => Err(Error::format(
            num,
            format!("expected header {expected:?}, found {line:?}"),
        )),
        None => Err(Error::format(1, format!("missing header {expected:?}"))),
    }
}

fn parse_rational(token: &str, line: usize) -> Result<Rational> {
    token
        .parse()
        .map_err(|_| Error::format(line, format!("invalid rational {token:?}")))
}

fn parse_point(tokens: &[&str], line: usize) -> Result<Point> {
    if tokens.len() != 2 {
        return Err(Error::format(
            line,
            format!("expected `<x> <y>`, found {} fields", tokens.len()),
        ));
    }
    Ok(Point::new(
        parse_rational(tokens[0], line)?,
        parse_rational(tokens[1], line)?,
    ))
}

fn parse_u64(token: &str, line: usize, what: &str) -> Result<u64> {
    token
        .parse()
        .map_err(|_| Error::format(line, format!("invalid {what} {token:?}")))
}

pub fn write_set(set: &PointSet) -> String {
    let mut out = String::from(SET_HEADER);
    out.push('\n');
    for p in set {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

pub fn parse_set(text: &str) -> Result<PointSet> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, SET_HEADER)?;
    let mut points = Vec::new();
    for (num, line) in lines {
        let p = parse_point(&line.split_whitespace().collect::<Vec<_>>(), num)?;
        points.push((num, p));
    }
    let set = PointSet::from_points(points.iter().map(|(_, p)| p.clone()));
    if set.len() != points.len() {
        let mut seen = std::collections::HashSet::new();
        for (num, p) in &points {
            if !seen.insert(p.clone()) {
                return Err(Error::format(*num, format!("duplicate point {p}")));
            }
        }
    }
    Ok(set)
}

pub fn write_base(base: &BaseSequence) -> String {
    let mut out = String::from(BASE_HEADER);
    out.push('\n');
    for p in base.points() {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

pub fn parse_base(text: &str) -> Result<BaseSequence> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, BASE_HEADER)?;
    let mut points = Vec::new();
    let mut first_line = None;
    for (num, line) in lines {
        first_line.get_or_insert(num);
        points.push(parse_point(
            &line.split_whitespace().collect::<Vec<_>>(),
            num,
        )?);
    }
    let at = first_line.unwrap_or(1);
    match points.first() {
        None => return Err(Error::format(at, "base sequence has no points")),
        Some(p) if !p.is_origin() => {
            return Err(Error::format(at, format!("first base point must be 0 0, found {p}")));
        }
        Some(_) => {}
    }
    BaseSequence::new(points).map_err(|e| Error::format(at, e.to_string()))
}

/// Serialize a coloring. Only plain colors have an on-disk form; colorings
/// holding composite colors are internal and refuse to serialize.
pub fn write_coloring(f: &Coloring) -> Result<String> {
    let mut out = String::from(COLORING_HEADER);
    out.push('\n');
    out.push_str(&format!("k {}\n", f.arity()));
    for p in f.domain().iter() {
        match f.color_at(p)? {
            Color::Plain(id) => out.push_str(&format!("{} {} {id}\n", p.x, p.y)),
            Color::Super(_) => {
                return Err(Error::precondition(
                    "composite colors have no serialized form",
                ));
            }
        }
    }
    Ok(out)
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, COLORING_HEADER)?;
    let arity = match lines.next() {
        Some((num, line)) => {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 || tokens[0] != "k" {
                return Err(Error::format(num, format!("expected `k <arity>`, found {line:?}")));
            }
            let k = BigUint::from_str(tokens[1])
                .map_err(|_| Error::format(num, format!("invalid arity {:?}", tokens[1])))?;
            if k < BigUint::one() {
                return Err(Error::format(num, "arity must be at least 1"));
            }
            k
        }
        None => return Err(Error::format(1, "missing `k <arity>` line")),
    };
    let mut entries = Vec::new();
    for (num, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::format(
                num,
                format!("expected `<x> <y> <color-id>`, found {} fields", tokens.len()),
            ));
        }
        let p = parse_point(&tokens[..2], num)?;
        let id = parse_u64(tokens[2], num, "color id")?;
        if BigUint::from(id) >= arity {
            return Err(Error::format(
                num,
                format!("color id {id} out of range for arity {arity}"),
            ));
        }
        entries.push((num, p, id));
    }
    let domain = Arc::new(PointSet::from_points(entries.iter().map(|(_, p, _)| p.clone())));
    if domain.len() != entries.len() {
        let mut seen = Vec::new();
        for (num, p, _) in &entries {
            if seen.contains(&p) {
                return Err(Error::format(*num, format!("duplicate point {p}")));
            }
            seen.push(p);
        }
    }
    let mut colors = vec![Color::Plain(0); domain.len()];
    for (_, p, id) in &entries {
        colors[domain.position(p).expect("point inserted above")] = Color::Plain(*id);
    }
    Coloring::new(domain, colors, arity)
}

/// A parsed witness file: either a single-copy witness or a scalar system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessFile {
    Phi(Witness),
    Delta(WitnessSystem),
}

pub fn write_phi_witness(w: &Witness) -> String {
    format!(
        "{WITNESS_HEADER}\nn {}\nh {} {} {}\n",
        w.n, w.h.a.x, w.h.a.y, w.h.lambda
    )
}

pub fn write_delta_witness(w: &WitnessSystem) -> String {
    let mut out = format!("{WITNESS_HEADER}\nn {}\nm {}\n", w.n(), w.m());
    let a = w.a();
    out.push_str(&format!("a {} {}\n", a.x, a.y));
    for (i, lambda) in w.lambdas().iter().enumerate() {
        out.push_str(&format!("lambda {i} {lambda}\n"));
    }
    out
}

pub fn write_witness(w: &WitnessFile) -> String {
    match w {
        WitnessFile::Phi(w) => write_phi_witness(w),
        WitnessFile::Delta(w) => write_delta_witness(w),
    }
}

pub fn parse_witness(text: &str) -> Result<WitnessFile> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, WITNESS_HEADER)?;
    let n = match lines.next() {
        Some((num, line)) => {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 || tokens[0] != "n" {
                return Err(Error::format(num, format!("expected `n <n>`, found {line:?}")));
            }
            parse_u64(tokens[1], num, "dimension n")? as usize
        }
        None => return Err(Error::format(1, "missing `n <n>` line")),
    };
    let (num, line) = match lines.next() {
        Some(pair) => pair,
        None => return Err(Error::format(1, "witness body missing after `n` line")),
    };
    let tokens: Vec<&str> = line.split_whitespace().collect();
    match tokens.first() {
        Some(&"h") => {
            if tokens.len() != 4 {
                return Err(Error::format(
                    num,
                    "expected `h <ax> <ay> <lambda>`".to_string(),
                ));
            }
            let a = parse_point(&tokens[1..3], num)?;
            let lambda = parse_rational(tokens[3], num)?;
            let h = Homothety::new(a, lambda).map_err(|e| Error::format(num, e.to_string()))?;
            if let Some((extra, _)) = lines.next() {
                return Err(Error::format(extra, "unexpected line after `h`"));
            }
            Ok(WitnessFile::Phi(Witness { n, h }))
        }
        Some(&"m") => {
            if tokens.len() != 2 {
                return Err(Error::format(num, "expected `m <m>`".to_string()));
            }
            let m = parse_u64(tokens[1], num, "system length m")?;
            let a = match lines.next() {
                Some((num, line)) => {
                    let tokens: Vec<&str> = line.split_whitespace().collect();
                    if tokens.len() != 3 || tokens[0] != "a" {
                        return Err(Error::format(num, format!("expected `a <x> <y>`, found {line:?}")));
                    }
                    parse_point(&tokens[1..], num)?
                }
                None => return Err(Error::format(num, "missing `a <x> <y>` line")),
            };
            let mut lambdas = Vec::new();
            for expected in 0..=m {
                match lines.next() {
                    Some((num, line)) => {
                        let tokens: Vec<&str> = line.split_whitespace().collect();
                        if tokens.len() != 3 || tokens[0] != "lambda" {
                            return Err(Error::format(
                                num,
                                format!("expected `lambda {expected} <value>`, found {line:?}"),
                            ));
                        }
                        let i = parse_u64(tokens[1], num, "scalar index")?;
                        if i != expected {
                            return Err(Error::format(
                                num,
                                format!("scalar index {i} out of order, expected {expected}"),
                            ));
                        }
                        lambdas.push(parse_rational(tokens[2], num)?);
                    }
                    None => {
                        return Err(Error::format(
                            num,
                            format!("system of length m = {m} needs {} scalar lines", m + 1),
                        ));
                    }
                }
            }
            if let Some((extra, _)) = lines.next() {
                return Err(Error::format(extra, "unexpected line after scalars"));
            }
            let system = WitnessSystem::new(n, a, lambdas)
                .map_err(|e| Error::format(num, e.to_string()))?;
            Ok(WitnessFile::Delta(system))
        }
        _ => Err(Error::format(
            num,
            format!("expected `h ...` or `m ...`, found {line:?}"),
        )),
    }
}

pub fn write_sweep_report(report: &SweepReport) -> String {
    let first = match report.first_failure {
        Some(idx) => idx.to_string(),
        None => "none".to_string(),
    };
    format!(
        "{SWEEP_HEADER}\ntotal {}\npassed {}\nfirst_failure {first}\n",
        report.total, report.passed
    )
}

pub fn parse_sweep_report(text: &str) -> Result<SweepReport> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, SWEEP_HEADER)?;
    let mut field = |name: &str| -> Result<(usize, String)> {
        match lines.next() {
            Some((num, line)) => {
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if tokens.len() != 2 || tokens[0] != name {
                    return Err(Error::format(
                        num,
                        format!("expected `{name} <value>`, found {line:?}"),
                    ));
                }
                Ok((num, tokens[1].to_string()))
            }
            None => Err(Error::format(1, format!("missing `{name}` line"))),
        }
    };
    let (num, total) = field("total")?;
    let total = parse_u64(&total, num, "total")?;
    let (num, passed) = field("passed")?;
    let passed = parse_u64(&passed, num, "passed")?;
    let (num, first) = field("first_failure")?;
    let first_failure = if first == "none" {
        None
    } else {
        Some(parse_u64(&first, num, "first_failure")?)
    };
    Ok(SweepReport {
        total,
        passed,
        first_failure,
        elapsed: Duration::ZERO,
    })
}
