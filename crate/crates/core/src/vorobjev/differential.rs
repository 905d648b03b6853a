use crate::error::{Error, Result};
use crate::omega::{ds_n, is_homogeneous, ltimes_bracket, DiracElement, MixedElement};

/// `d_l = [d^1_S(gamma), -]` on `gr_l` of the forms with vertical values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDifferential {
    pub delta: MixedElement,
}

impl GradedDifferential {
    pub fn apply(&self, u: &MixedElement, l: usize) -> Result<MixedElement> {
        if u.terms().keys().any(|k| !k.j.is_empty()) {
            return Err(Error::InvalidElement("graded differential acts on J = {} only".into()));
        }
        if !is_homogeneous(u, l)? {
            return Err(Error::NonHomogeneous);
        }
        ltimes_bracket(&self.delta, u)
    }

    /// `d_l(d_l(u))`.
    pub fn square(&self, u: &MixedElement, l: usize) -> Result<MixedElement> {
        let once = self.apply(u, l)?;
        self.apply(&once, l)
    }
}

pub fn graded_differential(g: &DiracElement) -> Result<GradedDifferential> {
    Ok(GradedDifferential {
        delta: ds_n(&g.to_mixed(), 1)?,
    })
}
