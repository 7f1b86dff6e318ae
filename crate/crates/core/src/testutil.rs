use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraPresentation, ArrowDecl, Composition};
use crate::linalg::Field;

pub(crate) fn d3r() -> Arc<Algebra> {
    let arrow = |n: &str, s: &str, t: &str| ArrowDecl {
        name: n.into(),
        source: s.into(),
        target: t.into(),
    };
    let pres = AlgebraPresentation::new(
        "D3R",
        Composition::Function,
        vec!["0".into(), "1".into(), "2".into()],
        vec![
            arrow("alpha", "0", "0"),
            arrow("beta", "0", "1"),
            arrow("delta", "1", "2"),
            arrow("lambda", "2", "0"),
            arrow("rho", "1", "1"),
            arrow("xi", "2", "2"),
        ],
        &[
            "alpha*lambda",
            "lambda*xi",
            "xi*delta",
            "delta*rho",
            "rho*beta",
            "beta*alpha",
            "alpha^2 - lambda*delta*beta",
            "rho^2 - beta*lambda*delta",
            "xi^2 - delta*beta*lambda",
        ],
    )
    .unwrap();
    Algebra::build(&pres, Field::gf2(), 28).unwrap()
}

