//! Tabulated weighted K3 surfaces and a harness that recomputes each row.
//!
//! Catalog files are UTF-8 text, one row per line with TAB separated fields:
//!
//! ```text
//! name <TAB> weights <TAB> degrees <TAB> basket <TAB> sigma
//! F_30 ⊂ P(5,6,8,11)	5,6,8,11	30	A_1 A_7 A_10	2
//! ```
//!
//! `weights` and `degrees` are comma separated positive integers; a single
//! degree denotes a hypersurface in `P^3`, two degrees a codimension-2
//! complete intersection in `P^4`. `basket` is a space separated list of
//! `[<count>]<A|D|E>_<rank>` tokens, `-` when empty. Lines starting with `#`
//! and blank lines are skipped.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::basket::Basket;
use crate::bsy::{sigma_k3, smooth_k3_signature};
use crate::wps::{self, HypersurfaceFamily};

/// The embedded table of 19 surfaces realizing every signature from -16 to 2.
pub const EMBEDDED_CATALOG: &str = include_str!("../data/k3_signatures.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line} ({name}): {reason}")]
    InvariantViolation {
        line: usize,
        name: String,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRow {
    pub name: String,
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    pub basket: Basket,
    pub sigma: i64,
}

impl CatalogRow {
    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    pub fn from_family(family: &HypersurfaceFamily, basket: Basket, sigma: i64) -> Self {
        let weights = family.weights.as_array().to_vec();
        let degrees = vec![family.degree];
        Self {
            name: canonical_name(&weights, &degrees),
            weights,
            degrees,
            basket,
            sigma,
        }
    }

    /// Shape and signature consistency, independent of any recomputation.
    fn check_invariants(&self) -> Result<(), String> {
        let codim = self.codim();
        if !(1..=2).contains(&codim) {
            return Err(format!("expected 1 or 2 degrees, got {codim}"));
        }
        if self.weights.len() != 3 + codim {
            return Err(format!(
                "codimension {codim} needs {} weights, got {}",
                3 + codim,
                self.weights.len()
            ));
        }
        let expected = smooth_k3_signature() + self.basket.total_d() as i64;
        if self.sigma != expected {
            return Err(format!(
                "sigma {} differs from -16 + Σd_i = {expected}",
                self.sigma
            ));
        }
        Ok(())
    }

    /// The row in catalog syntax, without a trailing newline.
    pub fn to_line(&self) -> String {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let basket = if self.basket.is_empty() {
            "-".to_string()
        } else {
            self.basket.to_tokens()
        };
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.name,
            join(&self.weights),
            join(&self.degrees),
            basket,
            self.sigma
        )
    }
}

/// `F_d ⊂ P(a_0,...,a_n)`, or `F_d1,d2 ⊂ ...` in codimension 2.
pub fn canonical_name(weights: &[u64], degrees: &[u64]) -> String {
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    format!("F_{} ⊂ P({})", join(degrees), join(weights))
}

fn parse_list(field: &str, what: &str, line: usize) -> Result<Vec<u64>, CatalogError> {
    field
        .split(',')
        .map(|x| {
            let x = x.trim();
            match x.parse::<u64>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(CatalogError::Parse {
                    line,
                    reason: format!("invalid {what} entry {x:?}"),
                }),
            }
        })
        .collect()
}

/// Parses catalog text. Empty input yields no rows.
pub fn load_catalog(source: &str) -> Result<Vec<CatalogRow>, CatalogError> {
    let mut rows = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim_end_matches('\r');
        if text.trim().is_empty() || text.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split('\t').collect();
        if fields.len() != 5 {
            return Err(CatalogError::Parse {
                line,
                reason: format!("expected 5 tab-separated fields, found {}", fields.len()),
            });
        }
        let name = fields[0].trim().to_string();
        if name.is_empty() {
            return Err(CatalogError::Parse {
                line,
                reason: "empty name".into(),
            });
        }
        let weights = parse_list(fields[1], "weight", line)?;
        let degrees = parse_list(fields[2], "degree", line)?;
        let basket = Basket::parse_tokens(fields[3]).map_err(|e| CatalogError::Parse {
            line,
            reason: e.to_string(),
        })?;
        let sigma = fields[4].trim().parse::<i64>().map_err(|_| CatalogError::Parse {
            line,
            reason: format!("invalid sigma {:?}", fields[4]),
        })?;
        let row = CatalogRow {
            name,
            weights,
            degrees,
            basket,
            sigma,
        };
        row.check_invariants()
            .map_err(|reason| CatalogError::InvariantViolation {
                line,
                name: row.name.clone(),
                reason,
            })?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn embedded_catalog() -> Vec<CatalogRow> {
    load_catalog(EMBEDDED_CATALOG).expect("embedded catalog is valid")
}

/// Renders rows in catalog syntax, one per line.
pub fn format_catalog(rows: &[CatalogRow]) -> String {
    rows.iter().map(|r| r.to_line() + "\n").collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCheck {
    pub field: &'static str,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

impl FieldCheck {
    fn new(field: &'static str, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let ok = expected == computed;
        Self {
            field,
            expected,
            computed,
            ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReport {
    pub name: String,
    pub checks: Vec<FieldCheck>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &FieldCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

impl fmt::Display for RowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed() { "PASS" } else { "FAIL" }, self.name)?;
        for c in self.mismatches() {
            write!(
                f,
                "\n    mismatch {}: table {} / computed {}",
                c.field, c.expected, c.computed
            )?;
        }
        Ok(())
    }
}

/// Recomputes a row. Hypersurface rows get their basket from the weights
/// and their signature from the recomputed basket; codimension-2 rows get
/// the signature from the stored basket.
pub fn verify_row(r: &CatalogRow) -> RowReport {
    let mut checks = vec![
        FieldCheck::new("name", &r.name, canonical_name(&r.weights, &r.degrees)),
        FieldCheck::new(
            "degree sum",
            r.weights.iter().sum::<u64>(),
            r.degrees.iter().sum::<u64>(),
        ),
    ];
    let basket = if r.codim() == 1 && r.weights.len() == 4 {
        let weights: [u64; 4] = r.weights.clone().try_into().expect("four weights");
        match HypersurfaceFamily::new(weights, r.degrees[0]).and_then(|f| wps::basket(&f)) {
            Ok(b) => {
                checks.push(FieldCheck::new("basket", &r.basket, &b));
                Some(b)
            }
            Err(e) => {
                checks.push(FieldCheck::new("basket", &r.basket, e));
                None
            }
        }
    } else {
        Some(r.basket.clone())
    };
    let computed_sigma = match basket.as_ref().map(|b| sigma_k3(b, 0)) {
        Some(Ok(s)) => s.to_string(),
        Some(Err(e)) => e.to_string(),
        None => "unavailable".to_string(),
    };
    checks.push(FieldCheck::new("sigma", r.sigma, computed_sigma));
    RowReport {
        name: r.name.clone(),
        checks,
    }
}

pub fn realized_signatures(rows: &[CatalogRow]) -> BTreeSet<i64> {
    rows.iter().map(|r| r.sigma).collect()
}

pub fn realized_signatures_in_codim(rows: &[CatalogRow], codim: usize) -> BTreeSet<i64> {
    rows.iter().filter(|r| r.codim() == codim).map(|r| r.sigma).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_shape() {
        let rows = embedded_catalog();
        assert_eq!(rows.len(), 19);
        assert_eq!(rows.iter().filter(|r| r.codim() == 2).count(), 1);
        let codim2 = rows.iter().find(|r| r.codim() == 2).unwrap();
        assert_eq!(codim2.name, "F_4,4 ⊂ P(1,1,2,2,2)");
    }

    #[test]
    fn every_row_verifies() {
        for r in embedded_catalog() {
            let report = verify_row(&r);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn named_rows() {
        let rows = embedded_catalog();
        let f16 = rows.iter().find(|r| r.name == "F_16 ⊂ P(1,3,4,8)").unwrap();
        assert_eq!(f16.basket, "A_2 2A_3".parse().unwrap());
        assert_eq!(f16.sigma, -8);
        assert!(verify_row(f16).passed());
        let f44 = rows.iter().find(|r| r.codim() == 2).unwrap();
        assert_eq!(f44.sigma, -12);
        assert!(verify_row(f44).passed());
    }

    #[test]
    fn corrupted_row_is_reported() {
        let mut row = embedded_catalog()
            .into_iter()
            .find(|r| r.name == "F_5 ⊂ P(1,1,1,2)")
            .unwrap();
        row.basket = "A_2".parse().unwrap();
        let report = verify_row(&row);
        assert!(!report.passed());
        assert!(report.mismatches().any(|c| c.field == "basket"));
    }

    #[test]
    fn parse_errors() {
        assert!(load_catalog("").unwrap().is_empty());
        assert!(load_catalog("# only a comment\n\n").unwrap().is_empty());
        let bad_sigma = "F_5 ⊂ P(1,1,1,2)\t1,1,1,2\t5\tA_1\t-14\n";
        assert!(matches!(
            load_catalog(bad_sigma),
            Err(CatalogError::InvariantViolation { line: 1, .. })
        ));
        let too_few = "x\t1,1,1,2\t5\tA_1\n";
        assert!(matches!(load_catalog(too_few), Err(CatalogError::Parse { line: 1, .. })));
        let bad_weight = "x\t1,0,1,2\t5\tA_1\t-15\n";
        assert!(matches!(load_catalog(bad_weight), Err(CatalogError::Parse { .. })));
        let bad_token = "x\t1,1,1,2\t5\tB_1\t-15\n";
        assert!(matches!(load_catalog(bad_token), Err(CatalogError::Parse { .. })));
        let wrong_shape = "x\t1,1,1\t5\tA_1\t-15\n";
        assert!(matches!(
            load_catalog(wrong_shape),
            Err(CatalogError::InvariantViolation { .. })
        ));
    }

    #[test]
    fn signature_sets() {
        let rows = embedded_catalog();
        let all = realized_signatures(&rows);
        assert_eq!(all, (-16..=2).collect());
        let codim1 = realized_signatures_in_codim(&rows, 1);
        let mut expected: BTreeSet<i64> = (-16..=2).collect();
        expected.remove(&-12);
        assert_eq!(codim1, expected);
        assert!(!all.contains(&3));
    }

    #[test]
    fn lines_round_trip() {
        let rows = embedded_catalog();
        assert_eq!(load_catalog(&format_catalog(&rows)).unwrap(), rows);
    }
}
