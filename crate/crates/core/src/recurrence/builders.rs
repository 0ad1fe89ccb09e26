//! Entry tables for `Delta`, the right-hand side vector, and `Gamma`.
//!
//! `Delta` (0-indexed, `l x l`):
//!
//! ```text
//! (0,0)              1 - sum_{j=1..l} p_j^2 x^j
//! (0,j), j >= 1      -2x v_j
//! (i,0), i >= 1      -p_i x^i
//! (i,j), i,j >= 1    delta_ij - p_{i-j} x^{i-j} - p_{i+j} x^i
//! ```
//!
//! with `p_m = 0` outside `1..=l`. The last branch applies to every
//! `j >= 1`: the `p_{i-j}` term is needed for all `j < i`, including
//! `j > l - i`, otherwise the system is wrong from order 4 on.
//!
//! Each branch can be deliberately corrupted through a [`Tamper`] so the
//! verifier's sensitivity to every branch can be exercised.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::RecurrenceSpec;
use crate::matrix::PolyMatrix;
use crate::poly::{rat, Poly, Rational};

/// `v_1..v_{l-1}` and `w_0..w_{l-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxVectors {
    pub v: Vec<Poly>,
    pub w: Vec<Rational>,
}

impl AuxVectors {
    /// `v_j` for `1 <= j <= l-1`.
    pub fn v(&self, j: usize) -> &Poly {
        &self.v[j - 1]
    }

    /// `w_j`, with `w_{-1} = 0`.
    pub fn w(&self, j: isize) -> Rational {
        if j < 0 {
            Rational::zero()
        } else {
            self.w[j as usize].clone()
        }
    }
}

/// `v_j = sum_{s=1}^{l-j} p_s p_{s+j} x^{s-1}`; zero for `j >= l`.
pub(crate) fn v_poly(spec: &RecurrenceSpec, j: usize) -> Poly {
    let l = spec.order();
    if j >= l {
        return Poly::zero();
    }
    Poly::from_coeffs(
        (1..=l - j)
            .map(|s| spec.p(s as isize) * spec.p((s + j) as isize))
            .collect(),
    )
}

/// `w_j = sum_{s=1}^{j+1} p_s c_{j+1-s}`; `w_{-1} = 0`.
pub(crate) fn w_value(spec: &RecurrenceSpec, j: isize) -> Rational {
    if j < 0 {
        return Rational::zero();
    }
    (1..=j + 1).map(|s| spec.p(s) * spec.c(j + 1 - s)).sum()
}

pub fn aux_vectors(spec: &RecurrenceSpec) -> AuxVectors {
    let l = spec.order();
    AuxVectors {
        v: (1..l).map(|j| v_poly(spec, j)).collect(),
        w: (0..l.saturating_sub(1))
            .map(|j| w_value(spec, j as isize))
            .collect(),
    }
}

/// A branch of the `Delta` / `Gamma` entry tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryBranch {
    /// `Delta(0,0)`
    DeltaCorner,
    /// `Delta(0,j)`, `j >= 1`
    DeltaTopRow,
    /// `Delta(i,0)`, `i >= 1`
    DeltaLeftColumn,
    /// the Kronecker delta inside `Delta(i,j)`, `i,j >= 1`
    DeltaDiagonal,
    /// the `-p_{i-j} x^{i-j}` term of `Delta(i,j)`
    DeltaLowerLag,
    /// the `-p_{i+j} x^i` term of `Delta(i,j)`
    DeltaUpperLag,
    /// `Gamma(0,0)`, i.e. the first right-hand side entry
    GammaCorner,
    /// `Gamma(i,0)`, `i >= 1`
    GammaLeftColumn,
}

impl EntryBranch {
    pub const ALL: [EntryBranch; 8] = [
        EntryBranch::DeltaCorner,
        EntryBranch::DeltaTopRow,
        EntryBranch::DeltaLeftColumn,
        EntryBranch::DeltaDiagonal,
        EntryBranch::DeltaLowerLag,
        EntryBranch::DeltaUpperLag,
        EntryBranch::GammaCorner,
        EntryBranch::GammaLeftColumn,
    ];

    fn name(self) -> &'static str {
        match self {
            EntryBranch::DeltaCorner => "delta-corner",
            EntryBranch::DeltaTopRow => "delta-top-row",
            EntryBranch::DeltaLeftColumn => "delta-left-column",
            EntryBranch::DeltaDiagonal => "delta-diagonal",
            EntryBranch::DeltaLowerLag => "delta-lower-lag",
            EntryBranch::DeltaUpperLag => "delta-upper-lag",
            EntryBranch::GammaCorner => "gamma-corner",
            EntryBranch::GammaLeftColumn => "gamma-left-column",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Negate the branch's variable term.
    FlipSign,
    /// Shift the subscript that drives the branch by one.
    ShiftIndex,
    /// Only for [`EntryBranch::DeltaLowerLag`]: drop the term when `j > l - i`,
    /// reproducing the band structure of the uncorrected table.
    PrintedBand,
}

impl Fault {
    fn name(self) -> &'static str {
        match self {
            Fault::FlipSign => "flip-sign",
            Fault::ShiftIndex => "shift-index",
            Fault::PrintedBand => "printed-band",
        }
    }
}

/// A single deliberate corruption of one builder branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tamper {
    pub branch: EntryBranch,
    pub fault: Fault,
}

impl Tamper {
    pub fn new(branch: EntryBranch, fault: Fault) -> Self {
        Tamper { branch, fault }
    }

    /// Every sign and index corruption of every branch, plus the printed band.
    pub fn all() -> Vec<Tamper> {
        let mut out: Vec<Tamper> = EntryBranch::ALL
            .iter()
            .flat_map(|&b| [Fault::FlipSign, Fault::ShiftIndex].map(|f| Tamper::new(b, f)))
            .collect();
        out.push(Tamper::new(EntryBranch::DeltaLowerLag, Fault::PrintedBand));
        out
    }

    fn hits(tamper: Option<Tamper>, branch: EntryBranch, fault: Fault) -> bool {
        tamper.is_some_and(|t| t.branch == branch && t.fault == fault)
    }
}

impl fmt::Display for Tamper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.branch.name(), self.fault.name())
    }
}

impl FromStr for Tamper {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tamper::all()
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| format!("unknown tamper `{s}`"))
    }
}

pub fn build_delta(spec: &RecurrenceSpec) -> PolyMatrix {
    build_delta_with(spec, None)
}

pub fn build_delta_with(spec: &RecurrenceSpec, tamper: Option<Tamper>) -> PolyMatrix {
    use EntryBranch::*;
    let l = spec.order();
    let hit = |b, f| Tamper::hits(tamper, b, f);
    // sign applied to a branch's variable term
    let sign = |b| {
        if hit(b, Fault::FlipSign) {
            rat(1)
        } else {
            rat(-1)
        }
    };
    let shift = |b| if hit(b, Fault::ShiftIndex) { 1 } else { 0 };

    PolyMatrix::from_fn(l, |i, j| match (i, j) {
        (0, 0) => {
            let off = shift(DeltaCorner);
            let sum = Poly::from_coeffs(
                (0..=l)
                    .map(|k| {
                        if k == 0 {
                            Rational::zero()
                        } else {
                            spec.p((k + off) as isize).pow(2)
                        }
                    })
                    .collect(),
            );
            &Poly::one() + &sum.scale(&sign(DeltaCorner))
        }
        (0, j) => {
            let v = v_poly(spec, j + shift(DeltaTopRow));
            v.shift(1).scale(&(sign(DeltaTopRow) * rat(2)))
        }
        (i, 0) => {
            let p = spec.p((i + shift(DeltaLeftColumn)) as isize);
            Poly::monomial(p * sign(DeltaLeftColumn), i)
        }
        (i, j) => {
            let diag = if i == j + shift(DeltaDiagonal) {
                if hit(DeltaDiagonal, Fault::FlipSign) {
                    -Rational::one()
                } else {
                    Rational::one()
                }
            } else {
                Rational::zero()
            };
            let mut entry = Poly::constant(diag);
            let in_printed_band = j <= l - i;
            if j < i && (in_printed_band || !hit(DeltaLowerLag, Fault::PrintedBand)) {
                let p = spec.p((i - j + shift(DeltaLowerLag)) as isize);
                entry = &entry + &Poly::monomial(p * sign(DeltaLowerLag), i - j);
            }
            let p = spec.p((i + j + shift(DeltaUpperLag)) as isize);
            &entry + &Poly::monomial(p * sign(DeltaUpperLag), i)
        }
    })
}

/// Right-hand side of the `F` system, which is also column 0 of `Gamma`:
///
/// ```text
/// rhs[0] = x     sum_{s=0}^{l-1}   (c_s^2 - w_{s-1}^2) x^s
/// rhs[i] = x^{i+1} sum_{s=0}^{l-1-i} c_s (c_{s+i} - w_{s+i-1}) x^s
/// ```
pub fn build_rhs(spec: &RecurrenceSpec) -> Vec<Poly> {
    build_rhs_with(spec, None)
}

pub fn build_rhs_with(spec: &RecurrenceSpec, tamper: Option<Tamper>) -> Vec<Poly> {
    use EntryBranch::*;
    let l = spec.order() as isize;
    let hit = |b, f| Tamper::hits(tamper, b, f);
    let w_sign = |b| {
        if hit(b, Fault::FlipSign) {
            rat(1)
        } else {
            rat(-1)
        }
    };
    let w_off = |b| if hit(b, Fault::ShiftIndex) { 1 } else { 0 };

    let first = Poly::from_coeffs(
        (0..l)
            .map(|s| {
                let w = w_value(spec, s - 1 + w_off(GammaCorner));
                spec.c(s).pow(2) + w_sign(GammaCorner) * w.pow(2)
            })
            .collect(),
    )
    .shift(1);

    let rest = (1..l).map(|i| {
        Poly::from_coeffs(
            (0..l - i)
                .map(|s| {
                    let w = w_value(spec, s + i - 1 + w_off(GammaLeftColumn));
                    spec.c(s) * (spec.c(s + i) + w_sign(GammaLeftColumn) * w)
                })
                .collect(),
        )
        .shift(i as usize + 1)
    });

    std::iter::once(first).chain(rest).collect()
}

/// `Delta` with column 0 replaced by the right-hand side.
pub fn build_gamma(spec: &RecurrenceSpec) -> PolyMatrix {
    build_gamma_with(spec, None)
}

pub fn build_gamma_with(spec: &RecurrenceSpec, tamper: Option<Tamper>) -> PolyMatrix {
    build_delta_with(spec, tamper)
        .with_column(0, &build_rhs_with(spec, tamper))
        .expect("rhs has one entry per row")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn fib() -> RecurrenceSpec {
        RecurrenceSpec::from_ints(&[1, 1], &[0, 1]).unwrap()
    }

    fn pell2() -> RecurrenceSpec {
        RecurrenceSpec::from_ints(&[2, 1], &[1, 1]).unwrap()
    }

    fn rows(m: &PolyMatrix) -> Vec<Vec<Poly>> {
        m.rows().map(<[Poly]>::to_vec).collect()
    }

    #[test]
    fn aux_vectors_examples() {
        let a = aux_vectors(&fib());
        assert_eq!((a.v, a.w), (vec![p(&[1])], vec![rat(0)]));
        let trib = RecurrenceSpec::from_ints(&[1, 1, 1], &[0, 1, 1]).unwrap();
        let a = aux_vectors(&trib);
        assert_eq!(a.v, vec![p(&[1, 1]), p(&[1])]);
        assert_eq!(a.w, vec![rat(0), rat(1)]);
        assert_eq!(a.w(-1), rat(0));
        let a = aux_vectors(&RecurrenceSpec::from_ints(&[3], &[2]).unwrap());
        assert!(a.v.is_empty() && a.w.is_empty());
    }

    #[test]
    fn v_degree_bound() {
        let s = RecurrenceSpec::from_ints(&[1, -2, 3, 4, 5], &[1, 1, 1, 1, 1]).unwrap();
        for (idx, v) in aux_vectors(&s).v.iter().enumerate() {
            let j = idx + 1;
            assert!(v.degree() <= crate::poly::Degree::Finite(s.order() - j - 1));
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(
            rows(&build_delta(&fib())),
            vec![
                vec![p(&[1, -1, -1]), p(&[0, -2])],
                vec![p(&[0, -1]), p(&[1, -1])]
            ]
        );
        let d = build_delta(&pell2());
        assert_eq!(
            rows(&d),
            vec![
                vec![p(&[1, -4, -1]), p(&[0, -4])],
                vec![p(&[0, -2]), p(&[1, -1])]
            ]
        );
        assert_eq!(d.det(), p(&[1, -5, -5, 1]));
        assert_eq!(d.det(), p(&[1, 1]) * p(&[1, -6, 1]));
        let one = RecurrenceSpec::from_ints(&[3], &[2]).unwrap();
        assert_eq!(rows(&build_delta(&one)), vec![vec![p(&[1, -9])]]);
    }

    #[test]
    fn delta_lower_band_beyond_printed_range() {
        // l = 4, (i, j) = (3, 2) lies outside j <= l - i but still carries -p_1 x
        let s = RecurrenceSpec::from_ints(&[1, 1, 1, 1], &[0, 1, 1, 1]).unwrap();
        assert_eq!(build_delta(&s)[(3, 2)], p(&[0, -1]));
        let printed = build_delta_with(
            &s,
            Some(Tamper::new(EntryBranch::DeltaLowerLag, Fault::PrintedBand)),
        );
        assert_eq!(printed[(3, 2)], Poly::zero());
        assert_eq!(printed[(2, 1)], build_delta(&s)[(2, 1)]);
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(build_rhs(&fib()), vec![p(&[0, 0, 1]), Poly::zero()]);
        assert_eq!(build_rhs(&pell2()), vec![p(&[0, 1, -3]), p(&[0, 0, -1])]);
        let one = RecurrenceSpec::from_ints(&[3], &[2]).unwrap();
        assert_eq!(build_rhs(&one), vec![p(&[0, 4])]);
    }

    #[test]
    fn gamma_examples() {
        let g = build_gamma(&fib());
        assert_eq!(
            rows(&g),
            vec![
                vec![p(&[0, 0, 1]), p(&[0, -2])],
                vec![Poly::zero(), p(&[1, -1])]
            ]
        );
        assert_eq!(g.det(), p(&[0, 0, 1, -1]));
        assert_eq!(build_gamma(&pell2()).det(), p(&[0, 1, -4, -1]));
        let one = RecurrenceSpec::from_ints(&[3], &[2]).unwrap();
        assert_eq!(rows(&build_gamma(&one)), vec![vec![p(&[0, 4])]]);
    }

    #[test]
    fn delta_is_identity_at_zero() {
        let s = RecurrenceSpec::from_ints(&[2, -1, 3, 1, 1, -2], &[1, 0, 2, 1, -1, 3]).unwrap();
        let d = build_delta(&s);
        let at0 = d.eval(&rat(0));
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(at0[i * 6 + j], rat(i64::from(i == j)));
            }
        }
        for (i, r) in build_rhs(&s).iter().enumerate() {
            assert!(r.valuation().is_none_or(|v| v > i));
        }
    }

    #[test]
    fn tamper_names_round_trip() {
        for t in Tamper::all() {
            assert_eq!(t.to_string().parse::<Tamper>(), Ok(t));
        }
        assert!("delta-corner:sideways".parse::<Tamper>().is_err());
    }

    #[test]
    fn every_tamper_changes_some_family_matrix() {
        let specs: Vec<RecurrenceSpec> = (2..=5)
            .flat_map(|k| {
                [
                    super::super::fibonacci_spec(k).unwrap(),
                    super::super::pell_spec(k).unwrap(),
                ]
            })
            .collect();
        for t in Tamper::all() {
            let changed = specs.iter().any(|s| {
                build_gamma_with(s, Some(t)) != build_gamma(s)
                    || build_delta_with(s, Some(t)) != build_delta(s)
            });
            assert!(changed, "{t} is a no-op on every family spec");
        }
    }
}
