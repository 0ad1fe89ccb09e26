//! The identities tying `F_0 .. F_{l-1}` together, evaluated on brute-force
//! series so they can be checked without going through any matrix.

use super::builders::{v_poly, w_value};
use super::{oracle_products, RecurrenceSpec};
use crate::error::Result;
use crate::poly::{rat, Poly, Rational};
use crate::ratfun::SeriesPrefix;

/// `LHS - RHS` of each of the `l` identities, truncated to order `n`, with
/// every `F_d` replaced by its oracle series. All of them vanish exactly.
///
/// Identity 0:
/// `F_0 = F_0 sum_{j=1}^{l} p_j^2 x^j + 2x sum_{j=1}^{l-1} v_j F_j + x sum_{j=0}^{l-1} (c_j^2 - w_{j-1}^2) x^j`
///
/// Identity `i >= 1`:
/// `F_i = p_i x^i F_0 + sum_{j=1}^{l-1} (p_{i-j} x^{i-j} + p_{i+j} x^i) F_j + x^{i+1} sum_{j=0}^{l-1-i} c_j (c_{i+j} - w_{i+j-1}) x^j`
pub fn lemma_residuals(spec: &RecurrenceSpec, n: usize) -> Result<Vec<SeriesPrefix>> {
    let l = spec.order();
    let f: Vec<SeriesPrefix> = (0..l)
        .map(|d| oracle_products(spec, d, n))
        .collect::<Result<_>>()?;
    let p = |m: isize| spec.p(m);
    let c = |m: isize| spec.c(m);
    let w = |m: isize| w_value(spec, m);

    let mut out = Vec::with_capacity(l);

    let squares = Poly::from_coeffs(
        (0..=l)
            .map(|j| if j == 0 { rat(0) } else { p(j as isize).pow(2) })
            .collect(),
    );
    let mut rhs = f[0].mul_poly(&squares);
    for (j, fj) in f.iter().enumerate().skip(1) {
        rhs = rhs.add(&fj.mul_poly(&v_poly(spec, j).shift(1).scale(&rat(2))));
    }
    let init = Poly::from_coeffs(
        (0..l as isize)
            .map(|j| c(j).pow(2) - w(j - 1).pow(2))
            .collect::<Vec<Rational>>(),
    )
    .shift(1);
    rhs = rhs.add(&SeriesPrefix::from_poly(&init, n));
    out.push(f[0].sub(&rhs));

    for i in 1..l {
        let ii = i as isize;
        let mut rhs = f[0].mul_poly(&Poly::monomial(p(ii), i));
        for (j, fj) in f.iter().enumerate().skip(1) {
            let jj = j as isize;
            let mut factor = Poly::monomial(p(ii + jj), i);
            if j < i {
                factor = &factor + &Poly::monomial(p(ii - jj), i - j);
            }
            rhs = rhs.add(&fj.mul_poly(&factor));
        }
        let init = Poly::from_coeffs(
            (0..(l - i) as isize)
                .map(|j| c(j) * (c(ii + j) - w(ii + j - 1)))
                .collect(),
        )
        .shift(i + 1);
        rhs = rhs.add(&SeriesPrefix::from_poly(&init, n));
        out.push(f[i].sub(&rhs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::fibonacci_spec;

    #[test]
    fn residuals_vanish_on_examples() {
        for spec in [
            fibonacci_spec(2).unwrap(),
            fibonacci_spec(3).unwrap(),
            RecurrenceSpec::from_ints(&[5], &[-2]).unwrap(),
        ] {
            let res = lemma_residuals(&spec, 20).unwrap();
            assert_eq!(res.len(), spec.order());
            assert!(res.iter().all(|r| r.is_zero() && r.order() == 20));
        }
    }

    #[test]
    fn truncated_lower_band_breaks_order_four() {
        // dropping p_{i-j} for j > l - i (as in the uncorrected identity) leaves a residual
        let spec = fibonacci_spec(4).unwrap();
        let f: Vec<SeriesPrefix> = (0..4)
            .map(|d| oracle_products(&spec, d, 20).unwrap())
            .collect();
        // the missing term of identity 3 is p_1 x F_2
        let missing = f[2].mul_poly(&Poly::monomial(spec.p(1), 1));
        assert!(!missing.is_zero());
    }
}
