#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use squares_gf::poly::{ratio, Poly};
use squares_gf::{RatFun, Rational, RecurrenceSpec};

pub const SUITE_SEED: u64 = 0x5eed_0f5a;
pub const SUITE_SIZE: usize = 200;
pub const DEPTH: usize = 40;

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn random_spec(rng: &mut impl Rng) -> RecurrenceSpec {
    let order = rng.gen_range(1..=6);
    let coeffs = (0..order).map(|_| random_rational(rng)).collect();
    let initials = (0..order).map(|_| random_rational(rng)).collect();
    RecurrenceSpec::new(coeffs, initials).unwrap()
}

/// Deterministic randomized suite: order uniform in 1..=6, numerators in
/// -3..=3, denominators in 1..=3.
pub fn suite() -> Vec<RecurrenceSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    (0..SUITE_SIZE).map(|_| random_spec(&mut rng)).collect()
}

pub fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

pub fn product(factors: &[&[i64]]) -> Poly {
    factors.iter().fold(Poly::one(), |acc, f| &acc * &p(f))
}

/// A printed entry given as products of factors; expanded here.
pub fn printed(num: &[&[i64]], den: &[&[i64]]) -> RatFun {
    RatFun::new(product(num), product(den)).unwrap()
}

const FIB5_DEN: &[i64] = &[1, -2, -4, -7, -11, -16, 4, 7, 4, 4, 7, 0, -1, -1, 0, -1];

/// Table of `sum F_{k,n}^2 x^n`, k = 2..=5, as printed.
pub fn printed_fibonacci(k: u64) -> RatFun {
    match k {
        2 => printed(&[&[0, 1], &[1, -1]], &[&[1, 1], &[1, -3, 1]]),
        3 => printed(
            &[&[0, 1], &[1, -1, -1, -1]],
            &[&[1, 1, 1, -1], &[1, -3, -1, -1]],
        ),
        4 => printed(
            &[&[0, 1], &[1, -1, -5, -2, -1, -2, 0, 3, 1]],
            &[&[1, -2, -4, -5, -8, 4, 6, 0, 1, 0, -1]],
        ),
        5 => printed(
            &[
                &[0, 1],
                &[1, -1, -5, -12, -8, -10, -7, -17, -8, 13, 10, 3, 9, 4],
            ],
            &[FIB5_DEN],
        ),
        _ => panic!("no printed row for k={k}"),
    }
}

/// Table of `sum P_{k,n}^2 x^n`, k = 2..=5, as printed.
pub fn printed_pell(k: u64) -> RatFun {
    match k {
        2 => printed(&[&[1, -4, -1]], &[&[1, 1], &[1, -6, 1]]),
        3 => printed(
            &[&[1, -4, -11, -13, -5, -4]],
            &[&[1, -6, -3, -1], &[1, -1, 2, -1]],
        ),
        4 => printed(
            &[&[1, -4, -12, -25, -29, -3, -9, -12, 13, 9]],
            &[&[1, -5, -8, -13, -20, 2, 14, 1, 1, 0, -1]],
        ),
        5 => printed(
            &[
                &[1, 1],
                &[1, -2, -3, -9, -14, -5, -2, -6, -26, 6, 13, 2, 4, 9],
            ],
            &[FIB5_DEN],
        ),
        _ => panic!("no printed row for k={k}"),
    }
}

/// `sum n F_{3,n}^2 x^n` as printed.
pub fn printed_weighted_tribonacci() -> RatFun {
    printed(
        &[&[0, 1], &[1, -2, 2, 12, 0, 8, 2, 4, 3, 2]],
        &[
            &[-1, -1, -1, 1],
            &[-1, -1, -1, 1],
            &[-1, 3, 1, 1],
            &[-1, 3, 1, 1],
        ],
    )
}

/// `sum n P_{2,n}^2 x^n` as printed.
pub fn printed_weighted_pell() -> RatFun {
    printed(
        &[&[0, 1], &[1, -2, 10, -2, 1]],
        &[&[1, 1], &[1, 1], &[1, -6, 1], &[1, -6, 1]],
    )
}
