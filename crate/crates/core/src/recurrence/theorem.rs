use num_traits::Zero;

use super::builders::{build_delta_with, build_rhs_with, Tamper};
use super::RecurrenceSpec;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::ratfun::RatFun;

/// The linear system `Delta * [F_0 .. F_{l-1}]^T = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSystem {
    pub delta: PolyMatrix,
    pub rhs: Vec<Poly>,
}

impl FSystem {
    pub fn build(spec: &RecurrenceSpec) -> Self {
        FSystem::build_with(spec, None)
    }

    pub fn build_with(spec: &RecurrenceSpec, tamper: Option<Tamper>) -> Self {
        FSystem {
            delta: build_delta_with(spec, tamper),
            rhs: build_rhs_with(spec, tamper),
        }
    }

    /// `Gamma`: `Delta` with column 0 replaced by the right-hand side.
    pub fn gamma(&self) -> PolyMatrix {
        self.delta
            .with_column(0, &self.rhs)
            .expect("rhs has one entry per row")
    }

    /// `sum a_n^2 x^n = det(Gamma) / (x det(Delta))`.
    pub fn generating_function(&self) -> Result<RatFun> {
        let det_delta = self.delta.det();
        let det_gamma = self.gamma().det();
        if !det_gamma.coeff(0).is_zero() {
            return Err(Error::Internal(format!(
                "det(Gamma) has nonzero constant term {}",
                det_gamma.coeff(0)
            )));
        }
        if det_delta.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let numerator = Poly::from_coeffs(det_gamma.into_coeffs().into_iter().skip(1).collect());
        RatFun::new(numerator, det_delta)
    }

    /// `[F_0, .., F_{l-1}]` by Cramer's rule.
    pub fn solve(&self) -> Result<Vec<RatFun>> {
        self.delta.cramer_solve(&self.rhs)
    }
}

pub fn gf_squares(spec: &RecurrenceSpec) -> Result<RatFun> {
    gf_squares_with(spec, None)
}

pub fn gf_squares_with(spec: &RecurrenceSpec, tamper: Option<Tamper>) -> Result<RatFun> {
    FSystem::build_with(spec, tamper).generating_function()
}

pub fn solve_f_system(spec: &RecurrenceSpec) -> Result<Vec<RatFun>> {
    FSystem::build(spec).solve()
}

/// `sum n a_n^2 x^n`.
pub fn weighted_gf(spec: &RecurrenceSpec) -> Result<RatFun> {
    Ok(gf_squares(spec)?.xdx())
}
