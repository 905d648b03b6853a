use crate::error::{Error, Result};
use crate::multivector::{exterior_derivative, schouten, wedge_sharp, DiffForm, Multivector};
use crate::omega::{dilation, ds_n, euler, jet_n, ltimes_bracket, with_formal_parameter, DiracElement, MixedElement};
use crate::symbolic::{Ctx, MatrixRF, RatFunc, Q};
use num_traits::Zero;

/// Result of testing whether the zero section is a symplectic leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafCheck {
    pub passed: bool,
    /// `d^0_S(gamma)` has no component outside bidegree (2,0).
    pub tangent: bool,
    pub nondegenerate: bool,
    pub closed: bool,
    /// `-gamma|_S` as a base form.
    pub omega_s: DiffForm,
}

pub(crate) fn form_matrix(w: &DiffForm) -> MatrixRF {
    let ctx = w.ctx();
    let p = ctx.p();
    MatrixRF::from_fn(ctx, p, p, |i, j| w.component(&[i, j]))
}

pub fn leaf_check(g: &DiracElement) -> Result<LeafCheck> {
    let d0 = ds_n(&g.to_mixed(), 0)?;
    let top = d0.part(2, 0);
    let tangent = d0.sub(&top).is_zero();
    let omega_s = top.neg().to_form()?;
    let nondegenerate = !form_matrix(&omega_s).det()?.is_zero();
    let closed = exterior_derivative(&omega_s).is_zero();
    Ok(LeafCheck {
        passed: tangent && nondegenerate && closed,
        tangent,
        nondegenerate,
        closed,
        omega_s,
    })
}

fn require_leaf(g: &DiracElement) -> Result<LeafCheck> {
    let lc = leaf_check(g)?;
    if lc.passed {
        Ok(lc)
    } else {
        Err(Error::LeafCheckFailed)
    }
}

/// `j^1_S(gamma)`, checked to be Dirac again.
pub fn first_jet_model(g: &DiracElement) -> Result<DiracElement> {
    require_leaf(g)?;
    let j = DiracElement::from_mixed(&jet_n(&g.to_mixed(), 1)?)?;
    if !j.is_dirac()? {
        return Err(Error::NotDirac);
    }
    Ok(j)
}

/// `gamma_t = gamma|_S + (t phi_t(gamma) - gamma|_S) / t`, exact in a formal `t`.
#[derive(Clone, Debug)]
pub struct MoserPath {
    pub gamma_t: DiracElement,
    pub t: RatFunc,
}

impl MoserPath {
    pub fn ctx(&self) -> &Ctx {
        self.gamma_t.ctx()
    }

    fn t_var(&self) -> usize {
        self.ctx().n_params() - 1
    }

    /// `gamma_t` at a rational `t`, still over the extended chart.
    pub fn at(&self, value: &Q) -> Result<MixedElement> {
        let v = self.t_var();
        self.gamma_t.to_mixed().try_map(|_, c| c.eval_var(v, value))
    }

    /// `gamma_t` at `t`, moved back to `target`.
    pub fn at_in(&self, value: &Q, target: &Ctx) -> Result<MixedElement> {
        self.at(value)?.embed(target)
    }

    /// `d/dt gamma_t` at `t = value`.
    pub fn velocity(&self, value: &Q) -> Result<MixedElement> {
        let v = self.t_var();
        self.gamma_t
            .to_mixed()
            .try_map(|_, c| c.derivative(v).eval_var(v, value))
    }

    /// `d/dt gamma_t` as a formal element.
    pub fn velocity_formal(&self) -> Result<MixedElement> {
        let v = self.t_var();
        Ok(self.gamma_t.to_mixed().map(|c| c.derivative(v)))
    }

    pub fn is_dirac_path(&self) -> Result<bool> {
        self.gamma_t.is_dirac()
    }
}

fn divide_by_t(c: &RatFunc, t: &RatFunc, tv: usize) -> Result<RatFunc> {
    let out = c.checked_div(t)?;
    if out.den().eval_var(tv, &Q::zero()).is_zero() {
        return Err(Error::NotDivisibleByT);
    }
    Ok(out)
}

pub fn moser_path(g: &DiracElement) -> Result<MoserPath> {
    require_leaf(g)?;
    let (gt, t) = with_formal_parameter(&g.to_mixed(), "t")?;
    let tv = gt.ctx().n_params() - 1;
    let restricted = ds_n(&gt, 0)?;
    let moved = dilation(&gt, &t)?.scale(&t).sub(&restricted);
    let quotient = moved.try_map(|_, c| divide_by_t(c, &t, tv))?;
    Ok(MoserPath {
        gamma_t: DiracElement::from_mixed(&restricted.add(&quotient))?,
        t,
    })
}

/// [`moser_path`] applied to the fiber jet of order `order`.
pub fn moser_path_truncated(g: &DiracElement, order: usize) -> Result<MoserPath> {
    moser_path(&DiracElement::from_mixed(&jet_n(&g.to_mixed(), order)?)?)
}

/// `d/dt gamma_t` at `t = 1`: `-omega_S - F + theta^v + [E, gamma]`.
pub fn gamma_dot_1(g: &DiracElement) -> Result<MixedElement> {
    require_leaf(g)?;
    let m = g.to_mixed();
    let restricted = ds_n(&m, 0)?;
    let e = euler(g.ctx());
    Ok(restricted.add(g.v_part()).sub(g.f_part()).add(&ltimes_bracket(&e, &m)?))
}

/// `theta - wedge^2 theta^#(omega)` and whether it is a cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub value: Multivector,
    pub closed: bool,
}

pub fn linearization_cocycle(theta: &Multivector, omega: &DiffForm) -> Result<Cocycle> {
    let value = theta.sub(&wedge_sharp(theta, omega)?);
    let closed = schouten(theta, &value)?.is_zero();
    Ok(Cocycle { value, closed })
}

/// Residuals of the linearization identity for a Poisson `theta` with the
/// zero section as a leaf:
/// `tau^-1(theta^v - F - omega_S) = theta - wedge^2 theta^#(omega_S)` and
/// `tau^-1([E, gamma]) = -[theta, E]`, so `tau^-1(gamma_dot_1)` and the
/// cocycle differ by a coboundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationIdentity {
    pub cocycle: Cocycle,
    pub gamma_dot: MixedElement,
    pub exact_residual: Multivector,
    pub coboundary_residual: Multivector,
}

impl LinearizationIdentity {
    pub fn holds(&self) -> bool {
        self.cocycle.closed && self.exact_residual.is_zero() && self.coboundary_residual.is_zero()
    }
}

pub fn linearization_identity(theta: &Multivector) -> Result<LinearizationIdentity> {
    let g = super::decompose(theta)?;
    let lc = require_leaf(&g)?;
    let omega = MixedElement::from_form(&lc.omega_s)?;
    let cocycle = linearization_cocycle(theta, &lc.omega_s)?;
    let head = g.v_part().sub(g.f_part()).sub(&omega);
    let exact_residual = super::tau_inverse(theta, &head)?.sub(&cocycle.value);
    let gamma_dot = gamma_dot_1(&g)?;
    let e = euler(g.ctx()).to_multivector()?;
    let coboundary_residual = super::tau_inverse(theta, &gamma_dot)?
        .sub(&cocycle.value)
        .add(&schouten(theta, &e)?);
    Ok(LinearizationIdentity {
        cocycle,
        gamma_dot,
        exact_residual,
        coboundary_residual,
    })
}
