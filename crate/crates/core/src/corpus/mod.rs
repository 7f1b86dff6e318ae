//! Built-in dihedral-type families on three vertices, expected tables and reports.

mod oracle;
mod report;
mod tables;
mod tube;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraError, AlgebraPresentation, ArrowDecl, Composition};
use crate::linalg::Field;
use crate::module::ModuleError;

pub use oracle::{oracle_dimension, truncated_dimension, OracleReport};
pub use report::{run_report, CorpusReport, ReportOptions, ReportRow, RowStatus};
pub use tables::{corpus_get, corpus_list, CorpusEntry, Expected, ModuleSpec, NamedModule};
pub use tube::{string_modules, tube_modules, tube_report, TubeReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("unknown corpus family {0:?}")]
    UnknownFamily(String),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("{0}")]
    Search(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// `D(3R)^{a,b,c,d}`; `b = 1` selects the quiver without the loop at 0.
    D3R,
    D3Q,
    D3L,
    D3A2,
    D3B2,
    D3D2,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::D3R, Family::D3Q, Family::D3L, Family::D3A2, Family::D3B2, Family::D3D2];

    /// Parameter names in order.
    pub fn parameters(self) -> &'static [char] {
        match self {
            Family::D3R | Family::D3D2 => &['a', 'b', 'c', 'd'],
            Family::D3Q | Family::D3B2 => &['b', 'c', 'd'],
            Family::D3L | Family::D3A2 => &['c', 'd'],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::D3R => "D3R",
            Family::D3Q => "D3Q",
            Family::D3L => "D3L",
            Family::D3A2 => "D3A2",
            Family::D3B2 => "D3B2",
            Family::D3D2 => "D3D2",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| CorpusError::UnknownFamily(s.to_string()))
    }
}

/// Parameters in the order of [`Family::parameters`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Params(pub Vec<usize>);

impl Params {
    fn get(&self, family: Family, name: char) -> usize {
        let i = family.parameters().iter().position(|&c| c == name).expect("known parameter");
        self.0[i]
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn check(family: Family, params: &Params) -> Result<(), CorpusError> {
    let bad = |reason: &str| {
        Err(CorpusError::InvalidParameters {
            family: family.to_string(),
            reason: reason.to_string(),
        })
    };
    if params.0.len() != family.parameters().len() {
        return bad(&format!("expected {} parameters", family.parameters().len()));
    }
    let p = |c| params.get(family, c);
    match family {
        Family::D3R | Family::D3D2 => {
            if p('a') < 1 || p('b') < 1 || p('c') < 2 || p('d') < 2 {
                return bad("need a, b ≥ 1 and c, d ≥ 2");
            }
        }
        Family::D3Q => {
            if p('b') < 1 || p('c') < 2 || p('d') < 2 {
                return bad("need b ≥ 1 and c, d ≥ 2");
            }
        }
        Family::D3L => {
            if p('c') < 2 || p('d') < 2 {
                return bad("need c, d ≥ 2");
            }
        }
        Family::D3A2 => {
            if p('d') < 2 || p('c') < p('d') {
                return bad("need c ≥ d ≥ 2");
            }
        }
        Family::D3B2 => {
            if p('b') < 1 || p('c') < 1 || p('b') + p('c') <= 2 || p('d') < 2 {
                return bad("need b, c ≥ 1 with b + c > 2 and d ≥ 2");
            }
        }
    }
    Ok(())
}

fn arrow(name: &str, s: &str, t: &str) -> ArrowDecl {
    ArrowDecl {
        name: name.into(),
        source: s.into(),
        target: t.into(),
    }
}

pub fn presentation(family: Family, params: &Params) -> Result<AlgebraPresentation, CorpusError> {
    check(family, params)?;
    let p = |c| params.get(family, c);
    let name = format!("{family}^{params}");
    let mut arrows = Vec::new();
    let relations: Vec<String> = match family {
        Family::D3R if p('b') == 1 => {
            arrows.extend([
                arrow("beta", "0", "1"),
                arrow("delta", "1", "2"),
                arrow("lambda", "2", "0"),
                arrow("rho", "1", "1"),
                arrow("xi", "2", "2"),
            ]);
            let (a, c, d) = (p('a'), p('c'), p('d'));
            vec![
                "lambda*xi".into(),
                "xi*delta".into(),
                "delta*rho".into(),
                "rho*beta".into(),
                format!("rho^{c} - (beta*lambda*delta)^{a}"),
                format!("xi^{d} - (delta*beta*lambda)^{a}"),
            ]
        }
        Family::D3R => {
            arrows.extend([
                arrow("alpha", "0", "0"),
                arrow("beta", "0", "1"),
                arrow("delta", "1", "2"),
                arrow("lambda", "2", "0"),
                arrow("rho", "1", "1"),
                arrow("xi", "2", "2"),
            ]);
            let (a, b, c, d) = (p('a'), p('b'), p('c'), p('d'));
            vec![
                "alpha*lambda".into(),
                "lambda*xi".into(),
                "xi*delta".into(),
                "delta*rho".into(),
                "rho*beta".into(),
                "beta*alpha".into(),
                format!("alpha^{b} - (lambda*delta*beta)^{a}"),
                format!("rho^{c} - (beta*lambda*delta)^{a}"),
                format!("xi^{d} - (delta*beta*lambda)^{a}"),
            ]
        }
        Family::D3Q => {
            arrows.extend([
                arrow("alpha", "0", "0"),
                arrow("beta", "0", "1"),
                arrow("delta", "1", "2"),
                arrow("lambda", "2", "0"),
                arrow("rho", "1", "1"),
            ]);
            let (b, c, d) = (p('b'), p('c'), p('d'));
            vec![
                "alpha*lambda".into(),
                "delta*rho".into(),
                "rho*beta".into(),
                "beta*alpha".into(),
                format!("alpha^{c} - (lambda*delta*beta)^{b}"),
                format!("rho^{d} - (beta*lambda*delta)^{b}"),
            ]
        }
        Family::D3L => {
            arrows.extend([
                arrow("alpha", "0", "0"),
                arrow("beta", "0", "1"),
                arrow("delta", "1", "2"),
                arrow("lambda", "2", "0"),
            ]);
            let (c, d) = (p('c'), p('d'));
            vec![
                "alpha*lambda".into(),
                "beta*alpha".into(),
                format!("alpha^{d} - (lambda*delta*beta)^{c}"),
                format!("delta*(beta*lambda*delta)^{c}"),
            ]
        }
        Family::D3A2 => {
            arrows.extend([
                arrow("beta", "1", "0"),
                arrow("gamma", "0", "1"),
                arrow("delta", "0", "2"),
                arrow("eta", "2", "0"),
            ]);
            let (c, d) = (p('c'), p('d'));
            vec![
                "gamma*eta".into(),
                "delta*beta".into(),
                format!("(beta*gamma)^{c} - (eta*delta)^{d}"),
            ]
        }
        Family::D3B2 => {
            arrows.extend([
                arrow("alpha", "1", "1"),
                arrow("beta", "1", "0"),
                arrow("gamma", "0", "1"),
                arrow("delta", "0", "2"),
                arrow("eta", "2", "0"),
            ]);
            let (b, c, d) = (p('b'), p('c'), p('d'));
            vec![
                "alpha*gamma".into(),
                "beta*alpha".into(),
                "gamma*eta".into(),
                "delta*beta".into(),
                format!("alpha^{d} - (gamma*beta)^{b}"),
                format!("(beta*gamma)^{b} - (eta*delta)^{c}"),
            ]
        }
        Family::D3D2 => {
            arrows.extend([
                arrow("alpha", "1", "1"),
                arrow("beta", "1", "0"),
                arrow("gamma", "0", "1"),
                arrow("delta", "0", "2"),
                arrow("eta", "2", "0"),
                arrow("xi", "2", "2"),
            ]);
            let (a, b, c, d) = (p('a'), p('b'), p('c'), p('d'));
            vec![
                "alpha*gamma".into(),
                "beta*alpha".into(),
                "gamma*eta".into(),
                "delta*beta".into(),
                "eta*xi".into(),
                "xi*delta".into(),
                format!("alpha^{c} - (gamma*beta)^{a}"),
                format!("(beta*gamma)^{a} - (eta*delta)^{b}"),
                format!("xi^{d} - (delta*eta)^{b}"),
            ]
        }
    };
    let rels: Vec<&str> = relations.iter().map(String::as_str).collect();
    Ok(AlgebraPresentation::new(
        name,
        Composition::Function,
        vec!["0".into(), "1".into(), "2".into()],
        arrows,
        &rels,
    )?)
}

/// Path length cap for a corpus build: four times the parameter sum.
pub fn max_len(params: &Params) -> usize {
    4 * params.0.iter().sum::<usize>()
}

pub fn build(family: Family, params: &Params, field: Field) -> Result<Arc<Algebra>, CorpusError> {
    Ok(Algebra::build(&presentation(family, params)?, field, max_len(params))?)
}

/// Parses `D3R^1,2,2,2` or `D3R` with parameters given separately.
pub fn parse_name(name: &str) -> Result<(Family, Params), CorpusError> {
    let (fam, rest) = name.split_once('^').unwrap_or((name, ""));
    let family: Family = fam.parse()?;
    let params = parse_params(family, rest)?;
    Ok((family, params))
}

pub fn parse_params(family: Family, text: &str) -> Result<Params, CorpusError> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>().map_err(|_| CorpusError::InvalidParameters {
                family: family.to_string(),
                reason: format!("{s:?} is not a nonnegative integer"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let params = Params(values);
    check(family, &params)?;
    Ok(params)
}

/// Every valid parameter tuple with entries at most `max`.
pub fn grid(family: Family, max: usize) -> Vec<Params> {
    let k = family.parameters().len();
    let mut out = Vec::new();
    let mut cur = vec![1; k];
    loop {
        let p = Params(cur.clone());
        if check(family, &p).is_ok() {
            out.push(p);
        }
        let mut i = 0;
        while i < k {
            cur[i] += 1;
            if cur[i] <= max {
                break;
            }
            cur[i] = 1;
            i += 1;
        }
        if i == k {
            return out;
        }
    }
}
