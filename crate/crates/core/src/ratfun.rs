//! Rational functions in `x` kept in canonical form, and truncated power series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat, Poly, Rational};

/// `numerator / denominator` with coprime parts and the denominator's
/// lowest-degree nonzero coefficient equal to 1. Zero is `0/1`.
///
/// Because the representation is canonical, derived equality coincides with
/// equality of values; [`RatFun::equals`] checks the same thing by
/// cross-multiplication without relying on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Reduces `num / den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let low = den.valuation().expect("nonzero denominator");
        let s = den.coeffs()[low].recip();
        if !s.is_one() {
            num = num.scale(&s);
            den = den.scale(&s);
        }
        Ok(RatFun { num, den })
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun::from(Poly::one())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value equality by cross-multiplication; insensitive to how either side is scaled or factored.
    pub fn equals(&self, other: &RatFun) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn scale(&self, s: &Rational) -> RatFun {
        if s.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> RatFun {
        RatFun::new(self.num.shift(k), self.den.clone()).expect("nonzero denominator")
    }

    /// `x * d/dx`, which maps `sum b_n x^n` to `sum n b_n x^n`.
    pub fn xdx(&self) -> RatFun {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(top.shift(1), &self.den * &self.den).expect("nonzero denominator")
    }

    /// Taylor coefficients of `x^0 ..= x^n` at the origin.
    ///
    /// Uses the recurrence `den * f = num` coefficientwise, so each term costs
    /// `O(deg den)` exact operations.
    pub fn series(&self, n: usize) -> Result<SeriesPrefix> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NonUnitDenominator);
        }
        let d0_inv = d0.recip();
        let den = self.den.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for (j, d) in den.iter().enumerate().skip(1).take(k) {
                if !d.is_zero() {
                    acc -= d * &out[k - j];
                }
            }
            out.push(acc * &d0_inv);
        }
        Ok(SeriesPrefix(out))
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;

    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;

    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;

    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;

    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Coefficients `0..=N` of a formal power series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesPrefix(pub Vec<Rational>);

impl SeriesPrefix {
    pub fn zeros(n: usize) -> Self {
        SeriesPrefix(vec![Rational::zero(); n + 1])
    }

    /// Truncation order `N`: the prefix holds `N + 1` coefficients.
    pub fn order(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// Coefficientwise sum, truncated to the shorter order.
    pub fn add(&self, other: &SeriesPrefix) -> SeriesPrefix {
        SeriesPrefix(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &SeriesPrefix) -> SeriesPrefix {
        SeriesPrefix(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Product with a polynomial, truncated to this prefix's order.
    pub fn mul_poly(&self, p: &Poly) -> SeriesPrefix {
        let n = self.0.len();
        let mut out = vec![Rational::zero(); n];
        for (i, c) in p.coeffs().iter().enumerate().take(n) {
            if c.is_zero() {
                continue;
            }
            for (k, s) in self.0[..n - i].iter().enumerate() {
                out[i + k] += c * s;
            }
        }
        SeriesPrefix(out)
    }

    /// Cauchy product, truncated to the shorter order.
    pub fn mul(&self, other: &SeriesPrefix) -> SeriesPrefix {
        let n = self.0.len().min(other.0.len());
        let out = (0..n)
            .map(|k| (0..=k).map(|i| &self.0[i] * &other.0[k - i]).sum())
            .collect();
        SeriesPrefix(out)
    }

    /// Multiplies coefficient `n` by `n`.
    pub fn weighted(&self) -> SeriesPrefix {
        SeriesPrefix(
            self.0
                .iter()
                .enumerate()
                .map(|(n, c)| c * rat(n as i64))
                .collect(),
        )
    }

    /// Embeds a polynomial, truncating or zero-padding to order `n`.
    pub fn from_poly(p: &Poly, n: usize) -> SeriesPrefix {
        SeriesPrefix((0..=n).map(|i| p.coeff(i)).collect())
    }
}

impl fmt::Display for SeriesPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
