use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraPresentation};
use crate::deform::Verdict;
use crate::linalg::Matrix;
use crate::module::{ModuleError, Representation};

use super::{presentation, CorpusError, Family, Params};

/// How a module is written down: a string word or explicit matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleSpec {
    Word { word: String },
    /// Arrows not listed act by zero.
    Explicit {
        dims: Vec<usize>,
        maps: Vec<(String, Vec<Vec<i64>>)>,
    },
}

impl ModuleSpec {
    pub fn word(w: &str) -> Self {
        ModuleSpec::Word { word: w.to_string() }
    }

    pub fn build(&self, alg: &Arc<Algebra>) -> Result<Representation, ModuleError> {
        match self {
            ModuleSpec::Word { word } => Representation::string_module(alg, word),
            ModuleSpec::Explicit { dims, maps } => {
                if dims.len() != alg.num_vertices() {
                    return Err(ModuleError::DimensionVector {
                        expected: alg.num_vertices(),
                        found: dims.len(),
                    });
                }
                let f = alg.field();
                let mut mats: Vec<Matrix> = alg
                    .arrows()
                    .iter()
                    .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
                    .collect();
                for (name, rows) in maps {
                    let a = alg.arrow_index(name).ok_or_else(|| ModuleError::BadWord {
                        word: name.clone(),
                        reason: "unknown arrow".into(),
                    })?;
                    let arr = &alg.arrows()[a];
                    let expected = (dims[arr.target], dims[arr.source]);
                    let found = (rows.len(), rows.first().map_or(expected.1, Vec::len));
                    if found != expected || rows.iter().any(|r| r.len() != found.1) {
                        return Err(ModuleError::Shape {
                            arrow: name.clone(),
                            expected,
                            found,
                        });
                    }
                    for (r, row) in rows.iter().enumerate() {
                        for (c, &x) in row.iter().enumerate() {
                            mats[a].set(r, c, f.reduce(x));
                        }
                    }
                }
                Representation::new(alg, dims.clone(), mats)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub end_dim: usize,
    /// `End = k` on a non-projective module forces the stable ring to be `k`.
    pub stable_end_dim: usize,
    pub verdict: Verdict,
    /// Which published table the value comes from.
    pub source: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedModule {
    pub label: String,
    pub spec: ModuleSpec,
    pub expected: Option<Expected>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub family: Family,
    pub params: Params,
    #[serde(skip)]
    pub presentation: AlgebraPresentation,
    pub modules: Vec<NamedModule>,
}

impl CorpusEntry {
    pub fn name(&self) -> String {
        format!("{}^{}", self.family, self.params)
    }
}

const K: Verdict = Verdict::Trivial;
const T2: Verdict = Verdict::Truncated { m: 2 };

fn row(label: &str, spec: ModuleSpec, verdict: Verdict, source: &'static str) -> NamedModule {
    NamedModule {
        label: label.to_string(),
        spec,
        expected: Some(Expected {
            end_dim: 1,
            stable_end_dim: 1,
            verdict,
            source,
        }),
    }
}

/// Nine uniserial modules of the triangle quivers.
fn triangle_rows(verdicts: [Verdict; 9], source: &'static str) -> Vec<NamedModule> {
    let specs = [
        ("S0", "@0"),
        ("S1", "@1"),
        ("S2", "@2"),
        ("0/1", "beta"),
        ("1/2", "delta"),
        ("2/0", "lambda"),
        ("0/1/2", "delta*beta"),
        ("1/2/0", "lambda*delta"),
        ("2/0/1", "beta*lambda"),
    ];
    specs
        .iter()
        .zip(verdicts)
        .map(|(&(l, w), v)| row(l, ModuleSpec::word(w), v, source))
        .collect()
}

/// Simples, four length-two modules and the two three-dimensional
/// non-uniserials of the quivers with a middle vertex 0.
fn middle_rows(verdicts: [Verdict; 9], source: &'static str) -> Vec<NamedModule> {
    let one = || vec![vec![1]];
    let specs = [
        ("S0", ModuleSpec::word("@0")),
        ("S1", ModuleSpec::word("@1")),
        ("S2", ModuleSpec::word("@2")),
        ("0/1", ModuleSpec::word("gamma")),
        ("1/0", ModuleSpec::word("beta")),
        ("0/2", ModuleSpec::word("delta")),
        ("2/0", ModuleSpec::word("eta")),
        (
            "0/1+2",
            ModuleSpec::Explicit {
                dims: vec![1, 1, 1],
                maps: vec![("gamma".into(), one()), ("delta".into(), one())],
            },
        ),
        (
            "1+2/0",
            ModuleSpec::Explicit {
                dims: vec![1, 1, 1],
                maps: vec![("beta".into(), one()), ("eta".into(), one())],
            },
        ),
    ];
    specs
        .into_iter()
        .zip(verdicts)
        .map(|((l, s), v)| row(l, s, v, source))
        .collect()
}

fn tabled(family: Family, params: &[usize]) -> Option<Vec<NamedModule>> {
    match (family, params) {
        (Family::D3R, [1, 2, 2, 2]) => Some(triangle_rows(
            [T2, T2, T2, K, K, K, K, K, K],
            "deformation table for D3R^1,2,2,2",
        )),
        (Family::D3Q, [2, 2, 2]) => Some(triangle_rows(
            [T2, T2, K, K, K, K, T2, T2, T2],
            "deformation table for D3Q^2,2,2",
        )),
        (Family::D3B2, [2, 2, 2]) => Some(middle_rows(
            [K, T2, K, T2, T2, T2, T2, K, K],
            "deformation table for D3B2^2,2,2",
        )),
        (Family::D3D2, [1, 2, 2, 2]) => Some(middle_rows(
            [K, T2, T2, K, K, T2, T2, K, K],
            "deformation table for D3D2^1,2,2,2",
        )),
        _ => None,
    }
}

/// An entry of the corpus. Untabled parameters list the simples without
/// expectations.
pub fn corpus_get(family: Family, params: &Params) -> Result<CorpusEntry, CorpusError> {
    let presentation = presentation(family, params)?;
    let modules = tabled(family, &params.0).unwrap_or_else(|| {
        (0..presentation.vertices.len())
            .map(|v| NamedModule {
                label: format!("S{v}"),
                spec: ModuleSpec::word(&format!("@{v}")),
                expected: None,
            })
            .collect()
    });
    Ok(CorpusEntry {
        family,
        params: params.clone(),
        presentation,
        modules,
    })
}

/// The four entries with published expectations.
pub fn corpus_list() -> Vec<CorpusEntry> {
    [
        (Family::D3R, vec![1, 2, 2, 2]),
        (Family::D3Q, vec![2, 2, 2]),
        (Family::D3B2, vec![2, 2, 2]),
        (Family::D3D2, vec![1, 2, 2, 2]),
    ]
    .into_iter()
    .map(|(f, p)| corpus_get(f, &Params(p)).expect("tabled parameters are valid"))
    .collect()
}
