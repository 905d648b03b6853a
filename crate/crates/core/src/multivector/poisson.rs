use super::alternating::{DiffForm, Multivector};
use super::calculus::{differential, lie_derivative, pairing, schouten, sharp};
use crate::error::Result;
use crate::symbolic::RatFunc;

/// `X_f = pi^#(df)`.
pub fn hamiltonian(pi: &Multivector, f: &RatFunc) -> Result<Multivector> {
    sharp(pi, &differential(f))
}

/// `{f, g} = <pi, df ^ dg>`.
pub fn poisson_bracket(pi: &Multivector, f: &RatFunc, g: &RatFunc) -> Result<RatFunc> {
    pairing(pi, &differential(f).try_wedge(&differential(g))?)
}

/// `L_{pi^# a} b - L_{pi^# b} a - d pi(a, b)` on one-forms.
pub fn cotangent_bracket(pi: &Multivector, a: &DiffForm, b: &DiffForm) -> Result<DiffForm> {
    let pa = sharp(pi, a)?;
    let pb = sharp(pi, b)?;
    let pab = pairing(pi, &a.try_wedge(b)?)?;
    Ok(lie_derivative(&pa, b)?
        .sub(&lie_derivative(&pb, a)?)
        .sub(&differential(&pab)))
}

/// Result of a Jacobi check: `[pi, pi]` and whether it vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonCheck {
    pub residual: Multivector,
    pub is_poisson: bool,
}

pub fn is_poisson(pi: &Multivector) -> Result<PoissonCheck> {
    let residual = schouten(pi, pi)?;
    Ok(PoissonCheck {
        is_poisson: residual.is_zero(),
        residual,
    })
}
