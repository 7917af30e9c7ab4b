//! Rational cohomology of circle bundles over Kähler bases.
//!
//! A quasi-regular Sasakian-Einstein space `S` of dimension `2n+1` is a circle
//! V-bundle over its leaf space `Z`, a Fano orbifold of complex dimension `n`.
//! Over `Q` orbifold cohomology agrees with ordinary cohomology, so the Gysin
//! sequence
//!
//! ```text
//! ... -> H^{q-2}(Z) --e--> H^q(Z) -> H^q(S) -> H^{q-1}(Z) --e--> H^{q+1}(Z) -> ...
//! ```
//!
//! gives `b_q(S) = coker(e: H^{q-2} -> H^q) + ker(e: H^{q-1} -> H^{q+1})`.
//!
//! The Euler class `e` is a positive multiple of `c_1(Z)`, a Kähler class. By
//! hard Lefschetz, cup with a Kähler class `H^p -> H^{p+2}` is injective for
//! `p < n` and surjective for `p >= n`, so its rank is `min(b_p, b_{p+2})`.
//! This needs the ranks of each parity to be symmetric and unimodal, which is
//! what [`BettiVector::lefschetz_admissible`] checks. No Euler class
//! representative is ever stored.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Ranks `b_0..b_dim` of a connected space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BettiVector {
    ranks: Vec<BigUint>,
}

impl BettiVector {
    pub fn new(ranks: Vec<BigUint>) -> Result<Self> {
        if ranks.first().map_or(true, |b0| !b0.is_one()) {
            return Err(Error::InvalidBetti);
        }
        Ok(BettiVector { ranks })
    }

    pub fn from_u64(ranks: &[u64]) -> Result<Self> {
        Self::new(ranks.iter().copied().map(BigUint::from).collect())
    }

    /// The one-point space.
    pub fn point() -> Self {
        BettiVector {
            ranks: vec![BigUint::one()],
        }
    }

    pub fn sphere(dim: usize) -> Self {
        let mut ranks = vec![BigUint::zero(); dim + 1];
        ranks[0] = BigUint::one();
        ranks[dim] += 1u32;
        BettiVector { ranks }
    }

    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[BigUint] {
        &self.ranks
    }

    /// Rank in degree `q`, zero outside `0..=dim`.
    pub fn rank(&self, q: i64) -> BigUint {
        if q < 0 {
            return BigUint::zero();
        }
        self.ranks.get(q as usize).cloned().unwrap_or_default()
    }

    pub fn to_u64_vec(&self) -> Option<Vec<u64>> {
        self.ranks.iter().map(|b| b.to_u64()).collect()
    }

    pub fn is_poincare_symmetric(&self) -> bool {
        let d = self.dim();
        (0..=d).all(|q| self.ranks[q] == self.ranks[d - q])
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.ranks
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (q, b)| {
                let b = BigInt::from(b.clone());
                if q % 2 == 0 {
                    acc + b
                } else {
                    acc - b
                }
            })
    }

    /// Even real dimension, `b_1 = 0`, and the ranks of each parity are
    /// symmetric about the middle and nondecreasing up to it.
    pub fn lefschetz_admissible(&self) -> bool {
        let d = self.dim();
        if d % 2 != 0 || !self.rank(1).is_zero() || !self.is_poincare_symmetric() {
            return false;
        }
        let n = d / 2;
        (2..=n).all(|p| self.ranks[p - 2] <= self.ranks[p])
    }
}

pub fn euler_characteristic(b: &BettiVector) -> BigInt {
    b.euler_characteristic()
}

/// Rational cohomology of a Fano (orbifold) base of complex dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseProfile {
    pub n: usize,
    pub betti: BettiVector,
    pub fano_index: u64,
    pub lefschetz_ok: bool,
}

impl BaseProfile {
    pub fn new(betti: BettiVector, fano_index: u64) -> Result<Self> {
        let d = betti.dim();
        if d % 2 != 0 {
            return Err(Error::OddBaseDimension(d));
        }
        if fano_index == 0 {
            return Err(Error::InvalidParameters("Fano index must be >= 1".into()));
        }
        let lefschetz_ok = betti.lefschetz_admissible();
        Ok(BaseProfile {
            n: d / 2,
            betti,
            fano_index,
            lefschetz_ok,
        })
    }

    pub fn point() -> Self {
        BaseProfile {
            n: 0,
            betti: BettiVector::point(),
            fano_index: 1,
            lefschetz_ok: true,
        }
    }

    pub fn projective_space(n: usize) -> Self {
        let mut ranks = vec![BigUint::zero(); 2 * n + 1];
        for q in (0..=2 * n).step_by(2) {
            ranks[q] = BigUint::one();
        }
        BaseProfile::new(BettiVector { ranks }, n as u64 + 1).expect("CP^n is admissible")
    }
}

/// Convolution of Betti vectors: `c_q = sum_i a_i b_{q-i}`.
pub fn kunneth_betti(a: &BettiVector, b: &BettiVector) -> BettiVector {
    let mut ranks = vec![BigUint::zero(); a.dim() + b.dim() + 1];
    for (i, x) in a.ranks.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.ranks.iter().enumerate() {
            ranks[i + j] += x * y;
        }
    }
    BettiVector { ranks }
}

/// Product of two base profiles; the Fano index of a product is the gcd.
pub fn kunneth_profile(a: &BaseProfile, b: &BaseProfile) -> Result<BaseProfile> {
    BaseProfile::new(
        kunneth_betti(&a.betti, &b.betti),
        num_integer::gcd(a.fano_index, b.fano_index),
    )
}

fn checked_sub(a: &BigUint, b: &BigUint, degree: usize) -> Result<BigUint> {
    if a < b {
        Err(Error::NegativeRank(degree))
    } else {
        Ok(a - b)
    }
}

/// Betti numbers of the total space of the circle bundle over `base`.
///
/// `b_q(S) = [b_q - min(b_{q-2}, b_q)] + [b_{q-1} - min(b_{q-1}, b_{q+1})]`
/// with base ranks read as 0 outside their range.
pub fn gysin_circle_betti(base: &BaseProfile) -> Result<BettiVector> {
    if !base.lefschetz_ok {
        return Err(Error::LefschetzViolated);
    }
    let z = &base.betti;
    let top = 2 * base.n + 1;
    let mut ranks = Vec::with_capacity(top + 1);
    for q in 0..=top {
        let qi = q as i64;
        let (bq, bqm1) = (z.rank(qi), z.rank(qi - 1));
        let coker = checked_sub(&bq, &z.rank(qi - 2).min(bq.clone()), q)?;
        let ker = checked_sub(&bqm1, &bqm1.clone().min(z.rank(qi + 1)), q)?;
        ranks.push(coker + ker);
    }
    BettiVector::new(ranks)
}

/// Recovers the leaf-space profile from the Betti numbers of a simply
/// connected circle bundle, using `b_r(Z) = b_r(S) + b_{r-2}(Z)` for
/// `r <= n` and Poincaré duality above. The result carries Fano index 1;
/// callers that know the index set it afterwards.
pub fn leaf_space_betti(s: &BettiVector) -> Result<BaseProfile> {
    let d = s.dim();
    if d % 2 == 0 {
        return Err(Error::Inconsistent(format!(
            "circle bundles have odd dimension, got {d}"
        )));
    }
    let n = (d - 1) / 2;
    if n == 0 {
        if s.rank(1).is_one() {
            return Ok(BaseProfile::point());
        }
        return Err(Error::Inconsistent("a circle has b_1 = 1".into()));
    }
    if !s.rank(1).is_zero() {
        return Err(Error::Inconsistent("b_1 must vanish".into()));
    }
    let mut z = vec![BigUint::zero(); 2 * n + 1];
    z[0] = BigUint::one();
    for r in 1..=n {
        let below = if r >= 2 { z[r - 2].clone() } else { BigUint::zero() };
        z[r] = s.ranks[r].clone() + below;
    }
    for r in 0..n {
        z[2 * n - r] = z[r].clone();
    }
    let profile = BaseProfile::new(BettiVector { ranks: z }, 1)?;
    let back = gysin_circle_betti(&profile)?;
    if &back != s {
        return Err(Error::Inconsistent(
            "Betti vector is not the total space of a circle bundle over a Kähler base".into(),
        ));
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(xs: &[u64]) -> BettiVector {
        BettiVector::from_u64(xs).unwrap()
    }

    fn profile(xs: &[u64]) -> BaseProfile {
        BaseProfile::new(bv(xs), 1).unwrap()
    }

    #[test]
    fn kunneth_examples() {
        let cp1 = bv(&[1, 0, 1]);
        assert_eq!(kunneth_betti(&cp1, &bv(&[1, 0, 1, 0, 1])), bv(&[1, 0, 2, 0, 2, 0, 1]));
        assert_eq!(
            kunneth_betti(&cp1, &bv(&[1, 0, 2, 0, 2, 0, 1])),
            bv(&[1, 0, 3, 0, 4, 0, 3, 0, 1])
        );
        let x = bv(&[1, 0, 3, 3, 0, 1]);
        assert_eq!(kunneth_betti(&x, &BettiVector::point()), x);
    }

    #[test]
    fn gysin_examples() {
        assert_eq!(gysin_circle_betti(&profile(&[1, 0, 1, 0, 1])).unwrap(), bv(&[1, 0, 0, 0, 0, 1]));
        assert_eq!(gysin_circle_betti(&profile(&[1, 0, 9, 0, 1])).unwrap(), bv(&[1, 0, 8, 8, 0, 1]));
        assert_eq!(
            gysin_circle_betti(&profile(&[1, 0, 3, 0, 4, 0, 3, 0, 1])).unwrap(),
            bv(&[1, 0, 2, 0, 1, 1, 0, 2, 0, 1])
        );
        assert_eq!(gysin_circle_betti(&BaseProfile::point()).unwrap(), bv(&[1, 1]));
    }

    #[test]
    fn gysin_refuses_non_lefschetz_base() {
        // b_2 = 3 > b_4 = 2 breaks unimodality
        let p = profile(&[1, 0, 3, 0, 2, 0, 3, 0, 1]);
        assert!(!p.lefschetz_ok);
        assert_eq!(gysin_circle_betti(&p), Err(Error::LefschetzViolated));
        assert!(!profile(&[1, 1, 0, 1, 1]).lefschetz_ok);
    }

    #[test]
    fn leaf_space_examples() {
        assert_eq!(leaf_space_betti(&bv(&[1, 0, 0, 0, 0, 1])).unwrap().betti, bv(&[1, 0, 1, 0, 1]));
        assert_eq!(
            leaf_space_betti(&bv(&[1, 0, 1, 0, 0, 1, 0, 1])).unwrap().betti,
            bv(&[1, 0, 2, 0, 2, 0, 1])
        );
        for k in 0..10 {
            assert_eq!(
                leaf_space_betti(&bv(&[1, 0, k, k, 0, 1])).unwrap().betti,
                bv(&[1, 0, k + 1, 0, 1])
            );
        }
    }

    #[test]
    fn leaf_space_rejects_inconsistent_vectors() {
        assert!(leaf_space_betti(&bv(&[1, 0, 1, 0, 0, 0, 1, 1])).is_err());
        assert!(leaf_space_betti(&bv(&[1, 1, 0, 0, 1, 1])).is_err());
        assert!(leaf_space_betti(&bv(&[1, 0, 1, 0])).is_err());
        assert!(leaf_space_betti(&bv(&[1, 0, 2, 0, 1])).is_err());
    }

    #[test]
    fn euler_examples() {
        assert_eq!(bv(&[1, 0, 1, 0, 1]).euler_characteristic(), BigInt::from(3));
        assert_eq!(bv(&[1, 0, 3, 0, 4, 0, 3, 0, 1]).euler_characteristic(), BigInt::from(12));
        assert_eq!(bv(&[1, 0, 8, 8, 0, 1]).euler_characteristic(), BigInt::from(0));
    }

    /// Kähler-like base: per-parity symmetric unimodal ranks with b_0 = 1, b_1 = 0.
    fn kahler_base() -> impl Strategy<Value = BaseProfile> {
        (1usize..6)
            .prop_flat_map(|n| (Just(n), prop::collection::vec(0u64..4, n + 1)))
            .prop_map(|(n, incs)| {
                let mut z = vec![0u64; 2 * n + 1];
                z[0] = 1;
                for r in 1..=n {
                    let below = if r >= 2 { z[r - 2] } else { 0 };
                    let inc = if r == 1 { 0 } else { incs[r] };
                    z[r] = below + inc;
                }
                for r in 0..n {
                    z[2 * n - r] = z[r];
                }
                BaseProfile::new(BettiVector::from_u64(&z).unwrap(), 1).unwrap()
            })
    }

    proptest! {
        #[test]
        fn gysin_output_is_closed_odd_manifold_like(base in kahler_base()) {
            let s = gysin_circle_betti(&base).unwrap();
            prop_assert_eq!(s.dim(), 2 * base.n + 1);
            prop_assert!(s.is_poincare_symmetric());
            prop_assert!(s.euler_characteristic().is_zero());
            for r in 0..=base.n as i64 {
                let expected = base.betti.rank(r) - base.betti.rank(r - 2);
                prop_assert_eq!(s.rank(r), expected);
            }
            let back = leaf_space_betti(&s).unwrap();
            prop_assert_eq!(back.betti, base.betti);
        }

        #[test]
        fn kunneth_commutative_associative(a in kahler_base(), b in kahler_base(), c in kahler_base()) {
            let (a, b, c) = (a.betti, b.betti, c.betti);
            prop_assert_eq!(kunneth_betti(&a, &b), kunneth_betti(&b, &a));
            prop_assert_eq!(
                kunneth_betti(&kunneth_betti(&a, &b), &c),
                kunneth_betti(&a, &kunneth_betti(&b, &c))
            );
        }
    }
}
