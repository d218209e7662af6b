//! Regression corpus of expected chart counts.
//!
//! One row per line, fields separated by `;`:
//!
//! ```text
//! [row=<label> ;] expr ; mode1=l/t ; mode2=l/t ; mode3=l/t ; mode4=l/t [; skip-modeK=reason] [; record-only]
//! ```
//!
//! Every row needs at least one expectation or the `record-only` marker.
//! `#` starts a comment.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use thiserror::Error;

use crate::engine::{monomialize, Mode};
use crate::parser::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("corpus line {line}: {message}")]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

/// Leaves and total charts of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub leaves: usize,
    pub total: usize,
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.leaves, self.total)
    }
}

impl std::str::FromStr for Counts {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (l, t) = s
            .split_once('/')
            .ok_or_else(|| format!("expected leaves/total, got `{s}`"))?;
        let num = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{x}` is not a count"))
        };
        Ok(Counts {
            leaves: num(l)?,
            total: num(t)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub line: usize,
    pub label: Option<String>,
    pub expr: String,
    /// Indexed by mode number minus one.
    pub expected: [Option<Counts>; 4],
    pub skip: [Option<String>; 4],
    pub record_only: bool,
}

impl CorpusEntry {
    pub fn name(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("line {}", self.line))
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    parser::parse_lines(text)
        .into_iter()
        .map(|(line, body)| parse_row(line, body))
        .collect()
}

fn parse_row(line: usize, body: &str) -> Result<CorpusEntry, CorpusError> {
    let err = |message: String| CorpusError { line, message };
    let mut entry = CorpusEntry {
        line,
        label: None,
        expr: String::new(),
        expected: Default::default(),
        skip: Default::default(),
        record_only: false,
    };
    for field in body.split(';').map(str::trim) {
        if let Some(label) = field.strip_prefix("row=") {
            entry.label = Some(label.trim().to_string());
        } else if field == "record-only" {
            entry.record_only = true;
        } else if let Some(rest) = field.strip_prefix("skip-mode") {
            let (k, reason) = rest
                .split_once('=')
                .ok_or_else(|| err(format!("malformed skip field `{field}`")))?;
            let slot = mode_slot(k).ok_or_else(|| err(format!("bad mode in `{field}`")))?;
            entry.skip[slot] = Some(reason.trim().to_string());
        } else if let Some((key, value)) =
            field.split_once('=').filter(|(k, _)| k.starts_with("mode"))
        {
            let slot = mode_slot(&key["mode".len()..])
                .ok_or_else(|| err(format!("bad mode in `{field}`")))?;
            entry.expected[slot] = Some(value.parse().map_err(err)?);
        } else if entry.expr.is_empty() {
            entry.expr = field.to_string();
        } else {
            return Err(err(format!("unexpected field `{field}`")));
        }
    }
    if entry.expr.is_empty() {
        return Err(err("missing expression".into()));
    }
    if !entry.record_only && entry.expected.iter().all(Option::is_none) {
        return Err(err(
            "row has no expectation and no `record-only` marker".into()
        ));
    }
    Ok(entry)
}

fn mode_slot(s: &str) -> Option<usize> {
    s.trim()
        .parse::<u8>()
        .ok()
        .and_then(Mode::from_number)
        .map(|m| usize::from(m.number()) - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellStatus {
    Pass,
    Mismatch,
    Skipped(String),
    /// No expectation given; the value is only reported.
    Recorded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReport {
    pub mode: Mode,
    pub expected: Option<Counts>,
    pub got: Counts,
    pub max_depth: usize,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReport {
    pub entry: CorpusEntry,
    pub outcome: Result<Vec<CellReport>, RowFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RowFailure {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] crate::error::Error),
}

impl RowReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CellReport> {
        self.outcome
            .as_ref()
            .map(|cells| cells.as_slice())
            .unwrap_or(&[])
            .iter()
            .filter(|c| c.status == CellStatus::Mismatch)
    }

    pub fn is_ok(&self) -> bool {
        self.outcome.is_ok() && self.mismatches().next().is_none()
    }
}

/// Runs every mode that has an expectation (all four for `record-only`
/// rows).
pub fn check_row(entry: &CorpusEntry) -> RowReport {
    let outcome = (|| {
        let parsed = parser::parse(&entry.expr, None)?;
        let f = parsed.to_binomial();
        let mut cells = Vec::new();
        for mode in Mode::ALL {
            let slot = usize::from(mode.number()) - 1;
            let expected = entry.expected[slot];
            if expected.is_none() && !entry.record_only {
                continue;
            }
            let run = monomialize(&f, mode)?;
            let got = Counts {
                leaves: run.stats.leaves,
                total: run.stats.total,
            };
            let status = match (&entry.skip[slot], expected) {
                (Some(reason), _) => CellStatus::Skipped(reason.clone()),
                (None, Some(e)) if e == got => CellStatus::Pass,
                (None, Some(_)) => CellStatus::Mismatch,
                (None, None) => CellStatus::Recorded,
            };
            cells.push(CellReport {
                mode,
                expected,
                got,
                max_depth: run.stats.max_depth,
                status,
            });
        }
        Ok(cells)
    })();
    RowReport {
        entry: entry.clone(),
        outcome,
    }
}

/// Checks all rows on up to `threads` workers; reports keep corpus order.
pub fn check_corpus(entries: &[CorpusEntry], threads: usize) -> Vec<RowReport> {
    let threads = threads.clamp(1, entries.len().max(1));
    if threads == 1 {
        return entries.iter().map(check_row).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<RowReport>>> = Mutex::new(vec![None; entries.len()]);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= entries.len() {
                    break;
                }
                let report = check_row(&entries[i]);
                slots.lock().expect("poisoned")[i] = Some(report);
            });
        }
    });
    slots
        .into_inner()
        .expect("poisoned")
        .into_iter()
        .map(|r| r.expect("every row checked"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_row() {
        let rows = parse_corpus(
            "# c\nrow=9 ; x1*x2 - x3*x4 ; mode1=4/5 ; mode4=1/2 ; skip-mode4=suspicious\n",
        )
        .unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(r.line, 2);
        assert_eq!(r.label.as_deref(), Some("9"));
        assert_eq!(r.expr, "x1*x2 - x3*x4");
        assert_eq!(
            r.expected[0],
            Some(Counts {
                leaves: 4,
                total: 5
            })
        );
        assert_eq!(r.expected[1], None);
        assert_eq!(r.skip[3].as_deref(), Some("suspicious"));
    }

    #[test]
    fn row_without_expectation_is_rejected() {
        let e = parse_corpus("x1 - x2\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_corpus("x1 - x2 ; record-only\n").is_ok());
    }

    #[test]
    fn malformed_fields() {
        assert!(parse_corpus("x1 - x2 ; mode5=1/1\n").is_err());
        assert!(parse_corpus("x1 - x2 ; mode1=1-1\n").is_err());
        assert!(parse_corpus("x1 - x2 ; x3 - x4 ; mode1=1/1\n").is_err());
    }

    #[test]
    fn check_detects_mismatch() {
        let rows = parse_corpus("x1*x2 - x3*x4 ; mode1=4/5 ; mode2=2/4\n").unwrap();
        let report = check_row(&rows[0]);
        let cells = report.outcome.as_ref().unwrap();
        assert_eq!(cells[0].status, CellStatus::Pass);
        assert_eq!(cells[1].status, CellStatus::Mismatch);
        assert_eq!(
            cells[1].got,
            Counts {
                leaves: 2,
                total: 3
            }
        );
        assert!(!report.is_ok());
    }

    #[test]
    fn threaded_check_keeps_order() {
        let text = "x1*x2 - x3*x4 ; mode2=2/3\nx1 - x2 ; mode1=1/1\nx1*x2 - x3^2 ; mode3=3/4\n";
        let rows = parse_corpus(text).unwrap();
        let serial = check_corpus(&rows, 1);
        let parallel = check_corpus(&rows, 3);
        assert_eq!(serial, parallel);
        assert!(parallel.iter().all(RowReport::is_ok));
    }
}
