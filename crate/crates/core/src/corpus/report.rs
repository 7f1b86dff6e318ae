use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::deform::{versal_classify, VersalReport, DEFAULT_MAX_ORDER};
use crate::homalg::stable_end_dim;
use crate::linalg::Field;
use crate::module::hom_dim;

use super::{build, CorpusEntry, CorpusError, Expected};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub field: Field,
    pub max_order: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            field: Field::gf2(),
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
    /// No expectation recorded.
    Unchecked,
    Error(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub dims: Vec<usize>,
    pub end_dim: Option<usize>,
    pub stable_end_dim: Option<usize>,
    pub versal: Option<VersalReport>,
    pub expected: Option<Expected>,
    pub status: RowStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub schema_version: u32,
    pub algebra: String,
    pub field: u32,
    pub dim: usize,
    pub rows: Vec<ReportRow>,
}

impl CorpusReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| matches!(r.status, RowStatus::Pass | RowStatus::Unchecked))
    }

    /// 0 when every checked row passes, 1 on a failure, 3 on errors only.
    pub fn exit_code(&self) -> i32 {
        if self.rows.iter().any(|r| r.status == RowStatus::Fail) {
            1
        } else if self.has_errors() {
            3
        } else {
            0
        }
    }

    pub fn has_errors(&self) -> bool {
        self.rows.iter().any(|r| matches!(r.status, RowStatus::Error(_)))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} over GF({}), dim {}\n", self.algebra, self.field, self.dim);
        let _ = writeln!(s, "{:<8} {:<10} {:>3} {:>4} {:<28} {:<12} status", "module", "dims", "End", "sEnd", "R(V)", "expected");
        for r in &self.rows {
            let dims: Vec<String> = r.dims.iter().map(usize::to_string).collect();
            let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            let ring = r.versal.as_ref().map_or("-".to_string(), |v| v.verdict.to_string());
            let exp = r.expected.map_or("-".to_string(), |e| e.verdict.to_string());
            let status = match &r.status {
                RowStatus::Pass => "PASS".to_string(),
                RowStatus::Fail => match r.expected {
                    Some(e) => format!("FAIL (contradicts {})", e.source),
                    None => "FAIL".to_string(),
                },
                RowStatus::Unchecked => "-".to_string(),
                RowStatus::Error(e) => format!("ERROR {e}"),
            };
            let _ = writeln!(
                s,
                "{:<8} {:<10} {:>3} {:>4} {:<28} {:<12} {}",
                r.label,
                dims.join(","),
                opt(r.end_dim),
                opt(r.stable_end_dim),
                ring,
                exp,
                status
            );
        }
        s
    }
}

/// Builds the algebra of `entry` and classifies every listed module, in parallel.
pub fn run_report(entry: &CorpusEntry, opts: ReportOptions) -> Result<CorpusReport, CorpusError> {
    let alg = build(entry.family, &entry.params, opts.field)?;
    let rows = entry
        .modules
        .par_iter()
        .map(|nm| {
            let blank = |status| ReportRow {
                label: nm.label.clone(),
                dims: Vec::new(),
                end_dim: None,
                stable_end_dim: None,
                versal: None,
                expected: nm.expected,
                status,
            };
            let m = match nm.spec.build(&alg) {
                Ok(m) => m,
                Err(e) => return blank(RowStatus::Error(e.to_string())),
            };
            let end = hom_dim(&m, &m);
            let st = stable_end_dim(&m);
            let mut row = blank(RowStatus::Unchecked);
            row.dims = m.dims().to_vec();
            row.end_dim = Some(end);
            row.stable_end_dim = Some(st);
            match versal_classify(&m, opts.max_order) {
                Ok(v) => {
                    if let Some(e) = nm.expected {
                        row.status = if e.end_dim == end && e.stable_end_dim == st && e.verdict == v.verdict {
                            RowStatus::Pass
                        } else {
                            RowStatus::Fail
                        };
                    }
                    row.versal = Some(v.labelled(nm.label.clone()));
                }
                Err(e) => row.status = RowStatus::Error(e.to_string()),
            }
            row
        })
        .collect();
    Ok(CorpusReport {
        schema_version: REPORT_SCHEMA_VERSION,
        algebra: entry.name(),
        field: opts.field.p(),
        dim: alg.dim(),
        rows,
    })
}
