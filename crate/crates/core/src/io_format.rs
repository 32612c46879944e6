//! Plain-text hyperfield documents and Cayley table rendering.
//!
//! A document is a JSON object:
//!
//! ```text
//! {
//!   "version": 1,
//!   "order": 2,
//!   "labels": ["0", "1"],
//!   "mul": [
//!     [0, 0],
//!     [0, 1]
//!   ],
//!   "hyperadd": [
//!     [[0], [1]],
//!     [[1], [0, 1]]
//!   ],
//!   "metadata": "massouros(GF(2))"
//! }
//! ```
//!
//! `labels` and `metadata` are optional. Zero must be index 0 and one index 1.
//! [`render_document`] output is byte-stable: one table row per line, cells
//! sorted ascending.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result, ValidationCode};
use crate::hyperfield::{HyperfieldCandidate, ONE, ZERO};
use crate::set::{ElementSet, MAX_ORDER};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct HyperfieldDocument {
    pub version: u32,
    pub order: usize,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub mul: Vec<Vec<usize>>,
    pub hyperadd: Vec<Vec<Vec<usize>>>,
    #[serde(default)]
    pub metadata: Option<String>,
}

fn invalid(code: ValidationCode, message: impl Into<String>) -> Error {
    Error::Validation {
        code,
        message: message.into(),
    }
}

impl HyperfieldDocument {
    /// Structural checks only; axioms are left to the verifier.
    pub fn validate(&self) -> Result<()> {
        use ValidationCode::*;
        if self.version != FORMAT_VERSION {
            return Err(invalid(
                Version,
                format!("unsupported version {}", self.version),
            ));
        }
        let n = self.order;
        if !(2..=MAX_ORDER).contains(&n) {
            return Err(invalid(
                Capacity,
                format!("order {n} outside 2..={MAX_ORDER}"),
            ));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(invalid(
                    Dimension,
                    format!("{} labels for order {n}", labels.len()),
                ));
            }
        }
        if self.mul.len() != n || self.hyperadd.len() != n {
            return Err(invalid(
                Dimension,
                format!(
                    "expected {n} rows, found mul {} and hyperadd {}",
                    self.mul.len(),
                    self.hyperadd.len()
                ),
            ));
        }
        for i in 0..n {
            if self.mul[i].len() != n {
                return Err(invalid(
                    Dimension,
                    format!("mul row {i} has {} entries", self.mul[i].len()),
                ));
            }
            if self.hyperadd[i].len() != n {
                return Err(invalid(
                    Dimension,
                    format!("hyperadd row {i} has {} entries", self.hyperadd[i].len()),
                ));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.mul[i][j] >= n {
                    return Err(invalid(
                        Range,
                        format!("mul ({i},{j}) = {} out of range", self.mul[i][j]),
                    ));
                }
                let cell = &self.hyperadd[i][j];
                if cell.is_empty() {
                    return Err(invalid(EmptyCell, format!("empty cell at ({i},{j})")));
                }
                if let Some(&x) = cell.iter().find(|&&x| x >= n) {
                    return Err(invalid(
                        Range,
                        format!("hyperadd ({i},{j}) contains {x}, out of range"),
                    ));
                }
                if cell.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(invalid(
                        UnsortedCell,
                        format!("cell at ({i},{j}) is not strictly ascending"),
                    ));
                }
            }
        }
        for x in 0..n {
            if self.hyperadd[ZERO][x] != [x] || self.hyperadd[x][ZERO] != [x] {
                return Err(invalid(
                    Identity,
                    format!("index 0 is not the additive identity (at {x})"),
                ));
            }
            if self.mul[ONE][x] != x || self.mul[x][ONE] != x {
                return Err(invalid(
                    Identity,
                    format!("index 1 is not the multiplicative identity (at {x})"),
                ));
            }
        }
        Ok(())
    }

    pub fn to_candidate(&self) -> Result<HyperfieldCandidate> {
        self.validate()?;
        let hyperadd = self
            .hyperadd
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().copied().collect())
                    .collect()
            })
            .collect();
        HyperfieldCandidate::new(hyperadd, self.mul.clone())
    }
}

pub fn to_document(
    c: &HyperfieldCandidate,
    labels: Option<Vec<String>>,
    metadata: Option<String>,
) -> HyperfieldDocument {
    HyperfieldDocument {
        version: FORMAT_VERSION,
        order: c.order(),
        labels,
        mul: c.mul_rows(),
        hyperadd: c
            .hyperadd_rows()
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.iter().collect()).collect())
            .collect(),
        metadata,
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn int_list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn render_document(doc: &HyperfieldDocument) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"version\": {},", doc.version);
    let _ = writeln!(out, "  \"order\": {},", doc.order);
    if let Some(labels) = &doc.labels {
        let parts: Vec<String> = labels.iter().map(|l| json_string(l)).collect();
        let _ = writeln!(out, "  \"labels\": [{}],", parts.join(", "));
    }
    out.push_str("  \"mul\": [\n");
    let rows: Vec<String> = doc
        .mul
        .iter()
        .map(|r| format!("    {}", int_list(r)))
        .collect();
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  ],\n");
    out.push_str("  \"hyperadd\": [\n");
    let rows: Vec<String> = doc
        .hyperadd
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|c| int_list(c)).collect();
            format!("    [{}]", cells.join(", "))
        })
        .collect();
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  ]");
    if let Some(meta) = &doc.metadata {
        let _ = write!(out, ",\n  \"metadata\": {}", json_string(meta));
    }
    out.push_str("\n}\n");
    out
}

/// Parse and structurally validate a document.
pub fn parse_document(text: &str) -> Result<HyperfieldDocument> {
    let doc: HyperfieldDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.validate()?;
    Ok(doc)
}

/// `0, 1, a, b, .., y` for up to 27 elements, else `0, 1, e2, e3, ..`.
pub fn default_labels(n: usize) -> Vec<String> {
    if n <= 27 {
        (0..n)
            .map(|i| match i {
                0 => "0".to_string(),
                1 => "1".to_string(),
                _ => ((b'a' + (i - 2) as u8) as char).to_string(),
            })
            .collect()
    } else {
        (0..n)
            .map(|i| {
                if i < 2 {
                    i.to_string()
                } else {
                    format!("e{i}")
                }
            })
            .collect()
    }
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn grid(symbol: &str, labels: &[String], cells: &[Vec<String>]) -> String {
    let n = labels.len();
    let head_w = labels
        .iter()
        .map(|l| width(l))
        .chain([width(symbol)])
        .max()
        .unwrap();
    let col_w: Vec<usize> = (0..n)
        .map(|j| {
            cells
                .iter()
                .map(|row| width(&row[j]))
                .chain([width(&labels[j])])
                .max()
                .unwrap()
        })
        .collect();
    let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w - width(s)));
    let line = |first: &str, rest: &mut dyn Iterator<Item = String>| {
        let mut parts = vec![pad(first, head_w)];
        parts.extend(rest);
        parts.join(" | ").trim_end().to_string()
    };
    let mut out = String::new();
    out.push_str(&line(
        symbol,
        &mut (0..n).map(|j| pad(&labels[j], col_w[j])),
    ));
    out.push('\n');
    let rule: Vec<String> = std::iter::once(head_w)
        .chain(col_w.iter().copied())
        .map(|w| "-".repeat(w))
        .collect();
    out.push_str(&rule.join("-+-"));
    out.push('\n');
    for (i, row) in cells.iter().enumerate() {
        out.push_str(&line(
            &labels[i],
            &mut (0..n).map(|j| pad(&row[j], col_w[j])),
        ));
        out.push('\n');
    }
    out
}

/// The ⊕ grid followed by the · grid, cells like `{1,a}`.
pub fn pretty_table(c: &HyperfieldCandidate, labels: Option<&[String]>) -> Result<String> {
    let n = c.order();
    let labels: Vec<String> = match labels {
        Some(l) if l.len() != n => {
            return Err(Error::Domain(format!(
                "{} labels given for {n} elements",
                l.len()
            )))
        }
        Some(l) => l.to_vec(),
        None => default_labels(n),
    };
    let set_text = |s: ElementSet| {
        let parts: Vec<&str> = s.iter().map(|x| labels[x].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    };
    let sums: Vec<Vec<String>> = (0..n)
        .map(|a| (0..n).map(|b| set_text(c.sum(a, b))).collect())
        .collect();
    let prods: Vec<Vec<String>> = (0..n)
        .map(|a| (0..n).map(|b| labels[c.mul(a, b)].clone()).collect())
        .collect();
    Ok(format!(
        "{}\n{}",
        grid("⊕", &labels, &sums),
        grid("·", &labels, &prods)
    ))
}
