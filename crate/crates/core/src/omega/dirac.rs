use std::fmt;
use std::sync::OnceLock;

use super::bracket::ltimes_bracket;
use super::element::MixedElement;
use super::special::check_connection;
use crate::error::{Error, Result};
use crate::symbolic::context::check_ctx;
use crate::symbolic::Ctx;

/// `gamma = theta^v + Gamma + F` with bidegrees `(0,2)`, `(1,1)`, `(2,0)`.
pub struct DiracElement {
    v_part: MixedElement,
    conn_part: MixedElement,
    f_part: MixedElement,
    dirac: OnceLock<bool>,
}

impl Clone for DiracElement {
    fn clone(&self) -> Self {
        DiracElement {
            v_part: self.v_part.clone(),
            conn_part: self.conn_part.clone(),
            f_part: self.f_part.clone(),
            dirac: self.dirac.clone(),
        }
    }
}

impl PartialEq for DiracElement {
    fn eq(&self, o: &Self) -> bool {
        self.v_part == o.v_part && self.conn_part == o.conn_part && self.f_part == o.f_part
    }
}

impl Eq for DiracElement {}

impl fmt::Debug for DiracElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiracElement")
            .field("v", &self.v_part)
            .field("conn", &self.conn_part)
            .field("f", &self.f_part)
            .finish()
    }
}

impl fmt::Display for DiracElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v_part, self.conn_part, self.f_part)
    }
}

impl DiracElement {
    pub fn new(v_part: MixedElement, conn_part: MixedElement, f_part: MixedElement) -> Result<Self> {
        check_ctx(v_part.ctx(), conn_part.ctx())?;
        check_ctx(v_part.ctx(), f_part.ctx())?;
        if v_part.terms().keys().any(|k| k.bidegree() != (0, 2) || !k.j.is_empty()) {
            return Err(Error::InvalidElement(
                "vertical part must be a vertical bivector".into(),
            ));
        }
        if f_part.terms().keys().any(|k| k.bidegree() != (2, 0)) {
            return Err(Error::InvalidElement("F part must have bidegree (2,0)".into()));
        }
        check_connection(&conn_part)?;
        Ok(DiracElement {
            v_part,
            conn_part,
            f_part,
            dirac: OnceLock::new(),
        })
    }

    /// Splits a Lie-degree-one element by bidegree.
    pub fn from_mixed(g: &MixedElement) -> Result<Self> {
        if g.bidegrees().iter().any(|b| !matches!(b, (0, 2) | (1, 1) | (2, 0))) {
            return Err(Error::InvalidElement(
                "element has components outside degree one".into(),
            ));
        }
        Self::new(g.part(0, 2), g.part(1, 1), g.part(2, 0))
    }

    pub fn ctx(&self) -> &Ctx {
        self.v_part.ctx()
    }

    pub fn v_part(&self) -> &MixedElement {
        &self.v_part
    }

    pub fn conn_part(&self) -> &MixedElement {
        &self.conn_part
    }

    pub fn f_part(&self) -> &MixedElement {
        &self.f_part
    }

    pub fn to_mixed(&self) -> MixedElement {
        self.v_part.add(&self.conn_part).add(&self.f_part)
    }

    /// `[gamma, gamma]`.
    pub fn self_bracket(&self) -> Result<MixedElement> {
        let g = self.to_mixed();
        ltimes_bracket(&g, &g)
    }

    /// Whether `[gamma, gamma] = 0`; computed once and cached.
    pub fn is_dirac(&self) -> Result<bool> {
        if let Some(b) = self.dirac.get() {
            return Ok(*b);
        }
        let b = self.self_bracket()?.is_zero();
        Ok(*self.dirac.get_or_init(|| b))
    }
}
