use std::fmt;
use std::str::FromStr;

use super::RecurrenceSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Fibonacci,
    Pell,
}

impl Family {
    pub fn spec(self, k: u64) -> Result<RecurrenceSpec> {
        match self {
            Family::Fibonacci => fibonacci_spec(k),
            Family::Pell => pell_spec(k),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Fibonacci => "fibonacci",
            Family::Pell => "pell",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fibonacci" => Ok(Family::Fibonacci),
            "pell" => Ok(Family::Pell),
            _ => Err(format!("unknown family `{s}` (expected fibonacci or pell)")),
        }
    }
}

fn order(k: u64) -> Result<usize> {
    if k < 2 {
        return Err(Error::FamilyDomain(k));
    }
    usize::try_from(k).map_err(|_| Error::InvalidSpec(format!("order {k} too large")))
}

/// k-Fibonacci: `F(n) = F(n-1) + ... + F(n-k)`, `F(0) = 0`, `F(1..k-1) = 1`.
pub fn fibonacci_spec(k: u64) -> Result<RecurrenceSpec> {
    let k = order(k)?;
    let initials: Vec<i64> = (0..k).map(|j| i64::from(j != 0)).collect();
    RecurrenceSpec::from_ints(&vec![1; k], &initials)
}

/// k-Pell: `P(n) = 2 P(n-1) + P(n-2) + ... + P(n-k)`, `P(0..k-1) = 1`.
pub fn pell_spec(k: u64) -> Result<RecurrenceSpec> {
    let k = order(k)?;
    let mut coeffs = vec![1; k];
    coeffs[0] = 2;
    RecurrenceSpec::from_ints(&coeffs, &vec![1; k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::recurrence::oracle_sequence;

    #[test]
    fn fibonacci_examples() {
        assert_eq!(
            fibonacci_spec(2).unwrap(),
            RecurrenceSpec::from_ints(&[1, 1], &[0, 1]).unwrap()
        );
        assert_eq!(
            fibonacci_spec(3).unwrap(),
            RecurrenceSpec::from_ints(&[1, 1, 1], &[0, 1, 1]).unwrap()
        );
        assert_eq!(fibonacci_spec(1), Err(Error::FamilyDomain(1)));
    }

    #[test]
    fn pell_examples() {
        assert_eq!(
            pell_spec(2).unwrap(),
            RecurrenceSpec::from_ints(&[2, 1], &[1, 1]).unwrap()
        );
        assert_eq!(
            pell_spec(3).unwrap(),
            RecurrenceSpec::from_ints(&[2, 1, 1], &[1, 1, 1]).unwrap()
        );
        let seq = oracle_sequence(&pell_spec(4).unwrap(), 7);
        let expected: Vec<_> = [1, 1, 1, 1, 5, 13, 33, 85]
            .iter()
            .map(|&v| rat(v))
            .collect();
        assert_eq!(seq, expected);
        assert_eq!(pell_spec(0), Err(Error::FamilyDomain(0)));
    }

    #[test]
    fn family_parsing() {
        assert_eq!("pell".parse::<Family>(), Ok(Family::Pell));
        assert!("lucas".parse::<Family>().is_err());
        assert_eq!(Family::Fibonacci.to_string(), "fibonacci");
    }
}
