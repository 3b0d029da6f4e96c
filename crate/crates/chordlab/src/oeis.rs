//! Offline OEIS cross-checks: parse local b-files ("index value" per line)
//! and compare them against the computed catalog series. No network access;
//! the fixtures live in the repository.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use thiserror::Error;

use crate::rational::Rat;
use crate::series::{catalog_series, SeriesName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("malformed b-file line {line}: `{content}`")]
    Malformed { line: usize, content: String },
    #[error("b-file contains no entries")]
    Empty,
    #[error("b-file has {have} entries, {need} requested")]
    TooFew { have: usize, need: usize },
    #[error("unknown sequence `{0}` (supported: A000699, A000698, A088221)")]
    UnknownSequence(String),
}

/// The sequences the workbench computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownSequence {
    /// Connected diagrams, compared against the C series.
    A000699,
    /// Indecomposable diagrams, compared against the I series.
    A000698,
    /// Pairs of connected-or-empty diagrams, compared against the A series.
    A088221,
}

impl KnownSequence {
    pub fn series_name(self) -> SeriesName {
        match self {
            KnownSequence::A000699 => SeriesName::C,
            KnownSequence::A000698 => SeriesName::I,
            KnownSequence::A088221 => SeriesName::A,
        }
    }
}

impl FromStr for KnownSequence {
    type Err = OeisError;
    fn from_str(s: &str) -> Result<Self, OeisError> {
        match s {
            "A000699" => Ok(KnownSequence::A000699),
            "A000698" => Ok(KnownSequence::A000698),
            "A088221" => Ok(KnownSequence::A088221),
            other => Err(OeisError::UnknownSequence(other.to_owned())),
        }
    }
}

impl fmt::Display for KnownSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            KnownSequence::A000699 => "A000699",
            KnownSequence::A000698 => "A000698",
            KnownSequence::A088221 => "A088221",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: usize,
    pub value: BigInt,
}

/// Parse b-file text: one "index value" pair per line, blank lines and
/// `#` comments ignored.
pub fn parse_b_file(text: &str) -> Result<Vec<BFileEntry>, OeisError> {
    let mut entries = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || OeisError::Malformed {
            line: number + 1,
            content: raw.to_owned(),
        };
        let mut tokens = line.split_whitespace();
        let index: usize = tokens.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
        let value: BigInt = tokens.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
        if tokens.next().is_some() {
            return Err(malformed());
        }
        entries.push(BFileEntry { index, value });
    }
    if entries.is_empty() {
        return Err(OeisError::Empty);
    }
    Ok(entries)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisMismatch {
    pub index: usize,
    pub ingested: BigInt,
    pub computed: Rat,
}

/// Outcome of a sequence comparison; `mismatch` is the first disagreement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisReport {
    pub sequence: KnownSequence,
    pub terms_checked: usize,
    pub mismatch: Option<OeisMismatch>,
}

impl OeisReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compare the first `count` ingested entries against the computed series
/// coefficients at the entries' own indices.
pub fn check_sequence(
    sequence: KnownSequence,
    entries: &[BFileEntry],
    count: usize,
) -> Result<OeisReport, OeisError> {
    if entries.is_empty() {
        return Err(OeisError::Empty);
    }
    if entries.len() < count || count == 0 {
        return Err(OeisError::TooFew {
            have: entries.len(),
            need: count,
        });
    }
    let taken = &entries[..count];
    let max_index = taken.iter().map(|e| e.index).max().expect("nonempty");
    let series = catalog_series(sequence.series_name(), max_index);
    for entry in taken {
        let computed = series.coeff(entry.index);
        if *computed != Rat::from_integer(entry.value.clone()) {
            return Ok(OeisReport {
                sequence,
                terms_checked: count,
                mismatch: Some(OeisMismatch {
                    index: entry.index,
                    ingested: entry.value.clone(),
                    computed: computed.clone(),
                }),
            });
        }
    }
    Ok(OeisReport {
        sequence,
        terms_checked: count,
        mismatch: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_entries_and_skips_comments() {
        let entries = parse_b_file("# header\n1 1\n2 1\n\n3 4\n").unwrap();
        assert_eq!(entries.len(), 3);
        assert_eq!(entries[2], BFileEntry { index: 3, value: BigInt::from(4) });
    }

    #[test]
    fn rejects_malformed_and_empty_files() {
        assert_eq!(parse_b_file("").unwrap_err(), OeisError::Empty);
        assert_eq!(parse_b_file("# only comments\n").unwrap_err(), OeisError::Empty);
        assert!(matches!(
            parse_b_file("1 2 3\n").unwrap_err(),
            OeisError::Malformed { line: 1, .. }
        ));
        assert!(matches!(
            parse_b_file("x 2\n").unwrap_err(),
            OeisError::Malformed { .. }
        ));
    }

    #[test]
    fn checks_against_catalog() {
        let entries = parse_b_file("0 1\n1 2\n2 3\n3 10\n4 63\n").unwrap();
        let report = check_sequence(KnownSequence::A088221, &entries, 5).unwrap();
        assert!(report.passed());
        let bad = parse_b_file("0 1\n1 2\n2 99\n").unwrap();
        let report = check_sequence(KnownSequence::A088221, &bad, 3).unwrap();
        let mismatch = report.mismatch.unwrap();
        assert_eq!(mismatch.index, 2);
        assert_eq!(mismatch.ingested, BigInt::from(99));
    }

    #[test]
    fn sequence_names_round_trip() {
        for name in ["A000699", "A000698", "A088221"] {
            let seq: KnownSequence = name.parse().unwrap();
            assert_eq!(seq.to_string(), name);
        }
        assert!(matches!(
            "A000001".parse::<KnownSequence>(),
            Err(OeisError::UnknownSequence(_))
        ));
    }
}
