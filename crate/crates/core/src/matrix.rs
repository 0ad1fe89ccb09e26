//! Square matrices over [`Poly`], exact determinants and Cramer solves.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};
use crate::ratfun::RatFun;

/// Largest dimension handled by memoized cofactor expansion; larger
/// matrices go through fraction-free elimination.
const COFACTOR_MAX_DIM: usize = 6;

/// Row-major `n x n` matrix of polynomials, indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(dim: usize) -> Self {
        PolyMatrix {
            dim,
            entries: vec![Poly::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = PolyMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Poly::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(PolyMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Poly]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    /// Copy of `self` with column `col` replaced by `column`.
    pub fn with_column(&self, col: usize, column: &[Poly]) -> Result<Self> {
        if column.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: column.len(),
            });
        }
        if col >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: col,
                bound: self.dim,
            });
        }
        let mut m = self.clone();
        for (i, p) in column.iter().enumerate() {
            m[(i, col)] = p.clone();
        }
        Ok(m)
    }

    pub fn scale_row(&mut self, i: usize, s: &Rational) {
        for j in 0..self.dim {
            self[(i, j)] = self[(i, j)].scale(s);
        }
    }

    /// Entrywise evaluation at `x = at`, returned row-major.
    pub fn eval(&self, at: &Rational) -> Vec<Rational> {
        self.entries.iter().map(|p| p.eval(at)).collect()
    }

    /// Exact determinant. Rows are first scaled to integer coefficients.
    pub fn det(&self) -> Poly {
        let mut m = self.clone();
        let mut factor = Rational::one();
        for i in 0..m.dim {
            let l = m
                .row(i)
                .iter()
                .flat_map(Poly::coeffs)
                .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            if !l.is_one() {
                let l = Rational::from_integer(l);
                m.scale_row(i, &l);
                factor *= l;
            }
        }
        let d = if m.dim <= COFACTOR_MAX_DIM {
            m.det_by_cofactors()
        } else {
            m.det_by_elimination()
        };
        d.scale(&factor.recip())
    }

    /// Laplace expansion along rows, memoized over the set of consumed columns.
    pub fn det_by_cofactors(&self) -> Poly {
        let n = self.dim;
        if n == 0 {
            return Poly::one();
        }
        assert!(
            n < usize::BITS as usize,
            "dimension too large for subset memoization"
        );
        let full = (1usize << n) - 1;
        // minors[mask]: det of the trailing rows restricted to columns outside `mask`
        let mut minors: Vec<Option<Poly>> = vec![None; full + 1];
        minors[full] = Some(Poly::one());
        for mask in (0..full).rev() {
            let row = mask.count_ones() as usize;
            let mut acc = Poly::zero();
            let mut free_before = 0;
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let entry = &self[(row, col)];
                if !entry.is_zero() {
                    let sub = minors[mask | (1 << col)]
                        .as_ref()
                        .expect("filled in descending order");
                    let term = entry * sub;
                    acc = if free_before % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                free_before += 1;
            }
            minors[mask] = Some(acc);
        }
        minors[0].take().expect("root minor")
    }

    /// Bareiss fraction-free elimination; every division is exact in `Q[x]`.
    pub fn det_by_elimination(&self) -> Poly {
        let n = self.dim;
        if n == 0 {
            return Poly::one();
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Poly::zero();
                };
                a.swap_rows(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[(i, j)] * &a[(k, k)]) - &(&a[(i, k)] * &a[(k, j)]);
                    a[(i, j)] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                a[(i, k)] = Poly::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        for j in 0..self.dim {
            self.entries.swap(r * self.dim + j, s * self.dim + j);
        }
    }

    /// Solves `self * x = rhs` by Cramer's rule, each component reduced.
    pub fn cramer_solve(&self, rhs: &[Poly]) -> Result<Vec<RatFun>> {
        let det = self.det();
        self.cramer_solve_with_det(rhs, &det)
    }

    /// Cramer's rule reusing an already computed `det(self)`.
    pub fn cramer_solve_with_det(&self, rhs: &[Poly], det: &Poly) -> Result<Vec<RatFun>> {
        if rhs.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.len(),
            });
        }
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        (0..self.dim)
            .map(|j| RatFun::new(self.with_column(j, rhs)?.det(), det.clone()))
            .collect()
    }

    /// `self * v` over rational functions.
    pub fn mul_ratfun_vec(&self, v: &[RatFun]) -> Result<Vec<RatFun>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self
            .rows()
            .map(|row| {
                row.iter().zip(v).fold(RatFun::zero(), |acc, (m, f)| {
                    &acc + &(&RatFun::from(m.clone()) * f)
                })
            })
            .collect())
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;

    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        assert!(
            i < self.dim && j < self.dim,
            "index ({i}, {j}) out of bounds"
        );
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        assert!(
            i < self.dim && j < self.dim,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.entries[i * self.dim + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    /// Leibniz formula: sum over all permutations, written independently of both
    /// production paths.
    fn leibniz(m: &PolyMatrix) -> Poly {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.dim();
        let mut acc = Poly::zero();
        for perm in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let term = (0..n).fold(Poly::one(), |t, i| &t * &m[(i, perm[i])]);
            acc = if inversions % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    fn fib_delta() -> PolyMatrix {
        PolyMatrix::from_rows(vec![
            vec![p(&[1, -1, -1]), p(&[0, -2])],
            vec![p(&[0, -1]), p(&[1, -1])],
        ])
        .unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(PolyMatrix::identity(3).det(), Poly::one());
        assert_eq!(fib_delta().det(), p(&[1, -2, -2, 1]));
        // (1+x)(1-3x+x^2)
        assert_eq!(fib_delta().det(), p(&[1, 1]) * p(&[1, -3, 1]));
        let mut m = PolyMatrix::from_fn(3, |i, j| p(&[i as i64 + 2 * j as i64, 1, -(j as i64)]));
        for j in 0..3 {
            m[(2, j)] = m[(0, j)].clone();
        }
        assert!(m.det().is_zero());
    }

    #[test]
    fn cramer_identity_and_fibonacci() {
        let b = vec![p(&[1, 2]), Poly::zero(), p(&[0, 0, 3])];
        let sol = PolyMatrix::identity(3).cramer_solve(&b).unwrap();
        for (s, bi) in sol.iter().zip(&b) {
            assert_eq!(s.numerator(), bi);
            assert!(s.denominator().is_one());
        }

        let sol = fib_delta()
            .cramer_solve(&[p(&[0, 0, 1]), Poly::zero()])
            .unwrap();
        let den = p(&[1, -2, -2, 1]);
        assert_eq!(sol[0], RatFun::new(p(&[0, 0, 1, -1]), den.clone()).unwrap());
        assert_eq!(sol[1], RatFun::new(p(&[0, 0, 0, 1]), den).unwrap());
    }

    #[test]
    fn cramer_singular_and_mismatch() {
        let z = PolyMatrix::zeros(2);
        assert_eq!(
            z.cramer_solve(&[Poly::one(), Poly::one()]),
            Err(Error::SingularMatrix)
        );
        assert!(matches!(
            fib_delta().cramer_solve(&[Poly::one()]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn elimination_handles_zero_pivots() {
        let m = PolyMatrix::from_rows(vec![
            vec![Poly::zero(), Poly::one(), p(&[0, 1])],
            vec![p(&[1, 1]), Poly::zero(), Poly::one()],
            vec![p(&[2]), p(&[0, 0, 1]), Poly::zero()],
        ])
        .unwrap();
        assert_eq!(m.det_by_elimination(), leibniz(&m));
        assert_eq!(m.det_by_cofactors(), leibniz(&m));
    }

    #[test]
    fn large_dimension_paths_agree() {
        let m = PolyMatrix::from_fn(8, |i, j| {
            let k = (i * 7 + j * 3) as i64;
            p(&[(k % 5) - 2, (k % 3) - 1, if i == j { 1 } else { 0 }])
        });
        assert_eq!(m.det_by_elimination(), m.det_by_cofactors());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-3i64..=3, 1i64..=2), 0..=3)
            .prop_map(|v| Poly::from_coeffs(v.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    fn small_matrix() -> impl Strategy<Value = PolyMatrix> {
        (1usize..=4).prop_flat_map(|n| {
            prop::collection::vec(small_poly(), n * n)
                .prop_map(move |e| PolyMatrix::from_fn(n, |i, j| e[i * n + j].clone()))
        })
    }

    proptest! {
        #[test]
        fn det_matches_leibniz(m in small_matrix()) {
            let oracle = leibniz(&m);
            prop_assert_eq!(m.det_by_cofactors(), oracle.clone());
            prop_assert_eq!(m.det_by_elimination(), oracle);
        }

        #[test]
        fn row_scaling_scales_det(m in small_matrix(), row in 0usize..4, n in -4i64..=4, d in 1i64..=3) {
            let row = row % m.dim();
            let lambda = ratio(n, d);
            let mut scaled = m.clone();
            scaled.scale_row(row, &lambda);
            prop_assert_eq!(scaled.det(), m.det().scale(&lambda));
        }

        #[test]
        fn cramer_residual_is_exact(m in small_matrix(), b in prop::collection::vec(small_poly(), 4)) {
            let b = &b[..m.dim()];
            prop_assume!(!m.det().is_zero());
            let sol = m.cramer_solve(b).unwrap();
            let back = m.mul_ratfun_vec(&sol).unwrap();
            for (lhs, rhs) in back.iter().zip(b) {
                prop_assert_eq!(lhs, &RatFun::from(rhs.clone()));
            }
        }
    }

    #[test]
    fn eval_at_zero() {
        let v = fib_delta().eval(&rat(0));
        assert_eq!(v, vec![rat(1), rat(0), rat(0), rat(1)]);
    }
}
