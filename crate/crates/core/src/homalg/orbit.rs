use serde::Serialize;

use crate::module::{is_isomorphic, IsoResult, Representation};

use super::nakayama::ar_translate_unchecked;
use super::{is_self_injective, projective_cover, strip_projectives, HomalgError};

pub const DEFAULT_ORBIT_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitFunctor {
    Omega,
    Tau,
}

impl std::str::FromStr for OrbitFunctor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "omega" => Ok(OrbitFunctor::Omega),
            "tau" => Ok(OrbitFunctor::Tau),
            other => Err(format!("unknown functor {other:?} (expected omega or tau)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitResult {
    /// `F^{preperiod + period}(M) ≅ F^{preperiod}(M)`.
    Periodic { preperiod: usize, period: usize },
    /// `F^step(M) = 0`.
    Collapsed { step: usize },
    NoRepetition { cap: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub functor: OrbitFunctor,
    pub result: OrbitResult,
    /// Dimension vectors of `M, F(M), F²(M), …` as computed.
    pub dims: Vec<Vec<usize>>,
    #[serde(skip)]
    pub terms: Vec<Representation>,
}

pub fn orbit_probe(
    m: &Representation,
    functor: OrbitFunctor,
    cap: usize,
    seed: u64,
) -> Result<OrbitReport, HomalgError> {
    assert!(cap >= 1, "orbit cap must be positive");
    if functor == OrbitFunctor::Tau && !is_self_injective(m.algebra()) {
        return Err(HomalgError::NotSelfInjective(m.algebra().name().to_string()));
    }
    let apply = |x: &Representation| match functor {
        OrbitFunctor::Omega => strip_projectives(&projective_cover(x).syzygy).core,
        OrbitFunctor::Tau => ar_translate_unchecked(x),
    };
    let mut terms = vec![strip_projectives(m).core];
    let finish = |terms: Vec<Representation>, result| OrbitReport {
        functor,
        result,
        dims: terms.iter().map(|t| t.dims().to_vec()).collect(),
        terms,
    };
    if terms[0].is_zero() {
        return Ok(finish(terms, OrbitResult::Collapsed { step: 0 }));
    }
    for step in 1..=cap {
        let next = apply(terms.last().unwrap());
        if next.is_zero() {
            terms.push(next);
            return Ok(finish(terms, OrbitResult::Collapsed { step }));
        }
        for (j, prev) in terms.iter().enumerate() {
            match is_isomorphic(prev, &next, seed.wrapping_add(step as u64)) {
                IsoResult::Yes(_) => {
                    terms.push(next);
                    return Ok(finish(
                        terms,
                        OrbitResult::Periodic {
                            preperiod: j,
                            period: step - j,
                        },
                    ));
                }
                IsoResult::No => {}
                IsoResult::Unknown => return Err(HomalgError::Inconclusive { step }),
            }
        }
        terms.push(next);
    }
    Ok(finish(terms, OrbitResult::NoRepetition { cap }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::d3r;

    #[test]
    fn projective_collapses() {
        let a = d3r();
        let p = Representation::projective(&a, 0);
        let r = orbit_probe(&p, OrbitFunctor::Omega, 4, 0).unwrap();
        assert_eq!(r.result, OrbitResult::Collapsed { step: 0 });
    }

    #[test]
    fn simple_omega_orbit_grows() {
        // regression value: S_0 sits in a non-periodic component, dimensions grow linearly
        let a = d3r();
        let s = Representation::simple(&a, 0);
        let r = orbit_probe(&s, OrbitFunctor::Omega, 12, 0).unwrap();
        assert_eq!(r.result, OrbitResult::NoRepetition { cap: 12 });
        let totals: Vec<usize> = r.dims.iter().map(|d| d.iter().sum()).collect();
        assert_eq!(totals, vec![1, 4, 6, 9, 11, 14, 16, 19, 21, 24, 26, 29, 31]);
    }
}
