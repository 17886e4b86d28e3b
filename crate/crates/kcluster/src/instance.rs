//! Plain-text instance files.
//!
//! ```text
//! # comment lines start with '#'
//! 3
//! 0 10
//! 5 20
//! 15 25
//! ```
//!
//! The first non-comment line is `n`, then one `left right` pair per node.
//! Coordinates are integers or rationals `p/q`.

use std::fmt::Write as _;
use std::path::Path;

use kcluster_core::{Coord, Interval, IntervalRealization};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("empty instance: no node count")]
    Missing,
    #[error("instance has no nodes")]
    NoNodes,
    #[error("bad node count at line {line}: {text:?}")]
    BadCount { line: usize, text: String },
    #[error("malformed interval at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("left > right at line {line}")]
    Inverted { line: usize },
    #[error("expected {expected} intervals, found {found}")]
    CountMismatch { expected: usize, found: usize },
}

/// Parses an integer or a fraction `p/q` with `q != 0`.
pub fn parse_coord(s: &str) -> Option<Coord> {
    match s.split_once('/') {
        None => s.parse::<i64>().ok().map(Coord::from_integer),
        Some((p, q)) => {
            let (p, q) = (p.parse::<i64>().ok()?, q.parse::<i64>().ok()?);
            (q != 0).then(|| Coord::new(p, q))
        }
    }
}

pub fn parse_realization(text: &str) -> Result<IntervalRealization, InstanceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(ix, l)| (ix + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, count) = lines.next().ok_or(InstanceError::Missing)?;
    let n: usize = count
        .parse()
        .map_err(|_| InstanceError::BadCount { line, text: count.to_string() })?;
    if n == 0 {
        return Err(InstanceError::NoNodes);
    }

    let mut intervals = Vec::with_capacity(n);
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [l, r] = fields[..] else {
            return Err(InstanceError::Malformed {
                line,
                reason: format!("expected 2 fields, found {}", fields.len()),
            });
        };
        let coord = |s: &str| {
            parse_coord(s).ok_or_else(|| InstanceError::Malformed {
                line,
                reason: format!("not a number: {s:?}"),
            })
        };
        let (left, right) = (coord(l)?, coord(r)?);
        if left > right {
            return Err(InstanceError::Inverted { line });
        }
        intervals.push(Interval::new(left, right));
    }
    if intervals.len() != n {
        return Err(InstanceError::CountMismatch { expected: n, found: intervals.len() });
    }
    Ok(IntervalRealization::new(intervals).expect("checked above"))
}

pub fn write_realization(r: &IntervalRealization) -> String {
    let mut out = format!("{}\n", r.n());
    for iv in r.intervals() {
        writeln!(out, "{} {}", iv.left, iv.right).unwrap();
    }
    out
}

pub fn read_realization(path: &Path) -> anyhow::Result<IntervalRealization> {
    use anyhow::Context;
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_realization(&text).with_context(|| format!("parsing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        let r = parse_realization("3\n0 10\n5 20\n15 25").unwrap();
        assert_eq!(r, IntervalRealization::from_ints(&[(0, 10), (5, 20), (15, 25)]).unwrap());
        let r = parse_realization("# half steps\n2\n1/2 3/2\n  -1 0\n").unwrap();
        assert_eq!(r.interval(1).left, Coord::new(1, 2));
        assert_eq!(r.interval(2).left, Coord::from_integer(-1));
        let r = parse_realization("1\n5 5").unwrap();
        assert_eq!(r.n(), 1);
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_realization("2\n0 1\n2 1").unwrap_err();
        assert_eq!(e.to_string(), "left > right at line 3");
        assert_eq!(parse_realization("0\n").unwrap_err(), InstanceError::NoNodes);
        assert_eq!(parse_realization("# only\n").unwrap_err(), InstanceError::Missing);
        assert!(matches!(
            parse_realization("2\n0 1 2\n0 1").unwrap_err(),
            InstanceError::Malformed { line: 2, .. }
        ));
        assert!(matches!(
            parse_realization("1\n0 1/0").unwrap_err(),
            InstanceError::Malformed { line: 2, .. }
        ));
        assert_eq!(
            parse_realization("2\n0 1").unwrap_err(),
            InstanceError::CountMismatch { expected: 2, found: 1 }
        );
        assert!(matches!(parse_realization("x\n").unwrap_err(), InstanceError::BadCount { line: 1, .. }));
    }

    #[test]
    fn round_trip() {
        let r = parse_realization("3\n0 1/3\n-2 7\n4 4").unwrap();
        assert_eq!(parse_realization(&write_realization(&r)).unwrap(), r);
    }
}
