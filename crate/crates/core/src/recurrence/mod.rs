//! Constant-coefficient linear recurrences and the generating function of
//! their termwise squares.
//!
//! A [`RecurrenceSpec`] of order `l` describes
//! `a(n) = p_1 a(n-1) + ... + p_l a(n-l)` for `n >= l`, with `a(j) = c_j`
//! for `j < l`. The auxiliary series
//! `F_d(x) = sum_{n>=1} a(n-1) a(n-1-d) x^n` (`0 <= d < l`, with `a(m) = 0`
//! for `m < 0`) satisfy an `l x l` linear system over `Q[x]`, and
//! `F_0 = x * sum a(n)^2 x^n`. Solving it by Cramer's rule gives the
//! generating function as `det(Gamma) / (x det(Delta))`.

mod builders;
mod families;
mod lemmas;
mod theorem;

pub use builders::{
    aux_vectors, build_delta, build_delta_with, build_gamma, build_gamma_with, build_rhs,
    build_rhs_with, AuxVectors, EntryBranch, Fault, Tamper,
};
pub use families::{fibonacci_spec, pell_spec, Family};
pub use lemmas::lemma_residuals;
pub use theorem::{gf_squares, gf_squares_with, solve_f_system, weighted_gf, FSystem};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Rational;
use crate::ratfun::SeriesPrefix;

/// An order-`l` recurrence: coefficients `p_1..p_l` and initial values `c_0..c_{l-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecurrenceSpec {
    coeffs: Vec<Rational>,
    initials: Vec<Rational>,
}

impl RecurrenceSpec {
    pub fn new(coeffs: Vec<Rational>, initials: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSpec("order must be at least 1".into()));
        }
        if coeffs.len() != initials.len() {
            return Err(Error::InvalidSpec(format!(
                "order {} needs {} initial values, got {}",
                coeffs.len(),
                coeffs.len(),
                initials.len()
            )));
        }
        Ok(RecurrenceSpec { coeffs, initials })
    }

    pub fn from_ints(coeffs: &[i64], initials: &[i64]) -> Result<Self> {
        let r = |v: &[i64]| v.iter().map(|&x| crate::poly::rat(x)).collect();
        RecurrenceSpec::new(r(coeffs), r(initials))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `p_1..p_l`
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `c_0..c_{l-1}`
    pub fn initials(&self) -> &[Rational] {
        &self.initials
    }

    /// `p_m`, zero outside `1..=l`.
    pub fn p(&self, m: isize) -> Rational {
        if m >= 1 && (m as usize) <= self.order() {
            self.coeffs[m as usize - 1].clone()
        } else {
            Rational::zero()
        }
    }

    /// `c_m`, zero outside `0..l`.
    pub fn c(&self, m: isize) -> Rational {
        if m >= 0 && (m as usize) < self.order() {
            self.initials[m as usize].clone()
        } else {
            Rational::zero()
        }
    }

    /// False when `p_l = 0`, i.e. a shorter recurrence generates the same sequence.
    pub fn is_minimal_order(&self) -> bool {
        !self.coeffs.last().expect("order >= 1").is_zero()
    }

    /// Same coefficients, initial values multiplied by `lambda`.
    pub fn with_scaled_initials(&self, lambda: &Rational) -> RecurrenceSpec {
        RecurrenceSpec {
            coeffs: self.coeffs.clone(),
            initials: self.initials.iter().map(|c| c * lambda).collect(),
        }
    }
}

/// `a_0..=a_n` by direct unrolling.
pub fn oracle_sequence(spec: &RecurrenceSpec, n: usize) -> Vec<Rational> {
    let order = spec.order();
    let mut a: Vec<Rational> = spec.initials.iter().take(n + 1).cloned().collect();
    for k in order..=n {
        let next = spec
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, p)| p * &a[k - 1 - j])
            .sum();
        a.push(next);
    }
    a
}

/// Coefficients of `F_d` up to `x^n`: coefficient `m >= 1` is `a(m-1) a(m-1-d)`.
pub fn oracle_products(spec: &RecurrenceSpec, d: usize, n: usize) -> Result<SeriesPrefix> {
    if d >= spec.order() {
        return Err(Error::IndexOutOfRange {
            index: d,
            bound: spec.order(),
        });
    }
    let a = oracle_sequence(spec, n);
    let coeffs = (0..=n)
        .map(|m| {
            if m == 0 || m - 1 < d {
                Rational::zero()
            } else {
                &a[m - 1] * &a[m - 1 - d]
            }
        })
        .collect();
    Ok(SeriesPrefix(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn spec_validation() {
        assert!(RecurrenceSpec::from_ints(&[], &[]).is_err());
        assert!(RecurrenceSpec::from_ints(&[1, 1], &[0]).is_err());
        let s = RecurrenceSpec::from_ints(&[1, 0], &[0, 1]).unwrap();
        assert!(!s.is_minimal_order());
        assert_eq!(s.p(0), rat(0));
        assert_eq!(s.p(3), rat(0));
        assert_eq!(s.p(1), rat(1));
    }

    #[test]
    fn oracle_sequence_examples() {
        let fib = RecurrenceSpec::from_ints(&[1, 1], &[0, 1]).unwrap();
        assert_eq!(oracle_sequence(&fib, 6), ints(&[0, 1, 1, 2, 3, 5, 8]));
        let pell = RecurrenceSpec::from_ints(&[2, 1], &[1, 1]).unwrap();
        assert_eq!(oracle_sequence(&pell, 5), ints(&[1, 1, 3, 7, 17, 41]));
        let geo = RecurrenceSpec::from_ints(&[2], &[1]).unwrap();
        assert_eq!(oracle_sequence(&geo, 3), ints(&[1, 2, 4, 8]));
        // shorter than the initial block
        assert_eq!(oracle_sequence(&pell, 0), ints(&[1]));
    }

    #[test]
    fn oracle_products_examples() {
        let fib = RecurrenceSpec::from_ints(&[1, 1], &[0, 1]).unwrap();
        assert_eq!(
            oracle_products(&fib, 0, 6).unwrap().0,
            ints(&[0, 0, 1, 1, 4, 9, 25])
        );
        assert_eq!(
            oracle_products(&fib, 1, 6).unwrap().0,
            ints(&[0, 0, 0, 1, 2, 6, 15])
        );
        assert_eq!(oracle_products(&fib, 0, 0).unwrap().0, ints(&[0]));
        assert_eq!(
            oracle_products(&fib, 2, 4),
            Err(Error::IndexOutOfRange { index: 2, bound: 2 })
        );
    }
}
