use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Greatest common divisor of every element, with `gcd(0, m) = m`.
///
/// The empty sequence yields 0, the identity for gcd.
pub fn gcd_all<'a, I>(xs: I) -> BigUint
where
    I: IntoIterator<Item = &'a BigUint>,
{
    xs.into_iter()
        .fold(BigUint::zero(), |acc, x| acc.gcd(x))
}

/// Least common multiple of every element. The empty sequence yields 1.
pub fn lcm_all<'a, I>(xs: I) -> BigUint
where
    I: IntoIterator<Item = &'a BigUint>,
{
    xs.into_iter().fold(BigUint::one(), |acc, x| acc.lcm(x))
}

/// `gcd` on machine integers with the same `gcd(0, m) = m` convention.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Three-valued truth, used wherever a predicate may depend on data that is
/// not known (typically an unknown orbifold order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tri {
    No,
    Unknown,
    Yes,
}

impl Tri {
    pub fn and(self, other: Tri) -> Tri {
        self.min(other)
    }

    pub fn or(self, other: Tri) -> Tri {
        self.max(other)
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Yes => "true",
            Tri::No => "false",
            Tri::Unknown => "unknown",
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().copied().map(big).collect()
    }

    /// Smallest positive common multiple by walking multiples of the largest element.
    fn brute_lcm(xs: &[u64]) -> u64 {
        let m = *xs.iter().max().unwrap();
        (1..).map(|t| t * m).find(|c| xs.iter().all(|x| c % x == 0)).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_all(&v(&[0, 6])), big(6));
        assert_eq!(gcd_all(&v(&[4, 4])), big(4));
        assert_eq!(gcd_all(&v(&[2, 3])), big(1));
        assert_eq!(gcd_u64(0, 9), 9);
    }

    #[test]
    fn lcm_examples_match_brute_force() {
        for xs in [&[3u64, 4, 5][..], &[1, 3, 3], &[7]] {
            assert_eq!(lcm_all(&v(xs)), big(brute_lcm(xs)));
        }
        assert_eq!(brute_lcm(&[3, 4, 5]), 60);
        assert_eq!(brute_lcm(&[1, 3, 3]), 3);
    }

    #[test]
    fn tri_logic() {
        assert_eq!(Tri::Yes.and(Tri::Unknown), Tri::Unknown);
        assert_eq!(Tri::No.and(Tri::Unknown), Tri::No);
        assert_eq!(Tri::Yes.or(Tri::Unknown), Tri::Yes);
    }
}
