use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::betti::BettiVector;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^free ⊕ Z_{t_1} ⊕ ... ⊕ Z_{t_r}`.
///
/// Torsion is kept as an unordered multiset of cyclic orders. Equality
/// compares invariant-factor forms, so `Z_2 ⊕ Z_3 == Z_6`.
#[derive(Clone, Debug, Default)]
pub struct Group {
    pub free: BigUint,
    pub torsion: Vec<BigUint>,
}

impl Group {
    pub fn zero() -> Self {
        Group::default()
    }

    pub fn free(rank: impl Into<BigUint>) -> Self {
        Group {
            free: rank.into(),
            torsion: Vec::new(),
        }
    }

    pub fn new(free: BigUint, torsion: Vec<BigUint>) -> Result<Self> {
        if let Some(bad) = torsion.iter().find(|t| *t < &BigUint::from(2u32)) {
            return Err(Error::InvalidTorsion(bad.to_string()));
        }
        Ok(Group { free, torsion })
    }

    pub fn with_torsion(mut self, order: impl Into<BigUint>) -> Self {
        let order = order.into();
        assert!(order >= BigUint::from(2u32), "cyclic torsion order below 2");
        self.torsion.push(order);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Invariant factors `d_1 | d_2 | ... | d_r`, all at least 2.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        invariant_factors(&self.torsion)
    }

    pub fn canonical(&self) -> Group {
        Group {
            free: self.free.clone(),
            torsion: self.invariant_factors(),
        }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().product()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.free == other.free && self.invariant_factors() == other.invariant_factors()
    }
}

impl Eq for Group {}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.free.is_zero() {
            if self.free.is_one() {
                parts.push("Z".to_string());
            } else {
                parts.push(format!("Z^{}", self.free));
            }
        }
        let factors = self.invariant_factors();
        let mut i = 0;
        while i < factors.len() {
            let j = factors[i..].iter().take_while(|d| **d == factors[i]).count();
            if j == 1 {
                parts.push(format!("Z_{}", factors[i]));
            } else {
                parts.push(format!("Z_{}^{}", factors[i], j));
            }
            i += j;
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Diagonal Smith normal form by repeated `(a, b) -> (gcd, lcm)` exchanges.
pub fn invariant_factors(orders: &[BigUint]) -> Vec<BigUint> {
    let mut d: Vec<BigUint> = orders.iter().filter(|t| !t.is_one()).cloned().collect();
    d.sort();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|t| !t.is_one());
    d
}

/// Integral cohomology `H^0..H^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGroup {
    groups: Vec<Group>,
}

impl GradedGroup {
    pub fn new(groups: Vec<Group>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::InvalidBetti);
        }
        Ok(GradedGroup { groups })
    }

    /// Torsion-free groups with the given ranks.
    pub fn from_betti(b: &BettiVector) -> Self {
        GradedGroup {
            groups: b.ranks().iter().cloned().map(Group::free).collect(),
        }
    }

    /// Adds a cyclic summand of order `order` in degree `q`.
    pub fn add_torsion(&mut self, q: usize, order: BigUint) -> Result<()> {
        let g = self
            .groups
            .get_mut(q)
            .ok_or_else(|| Error::InvalidTorsion(format!("degree {q} out of range")))?;
        if order < BigUint::from(2u32) {
            return Err(Error::InvalidTorsion(order.to_string()));
        }
        g.torsion.push(order);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn degree(&self, q: usize) -> Group {
        self.groups.get(q).cloned().unwrap_or_default()
    }

    pub fn free_ranks(&self) -> Result<BettiVector> {
        BettiVector::new(self.groups.iter().map(|g| g.free.clone()).collect())
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(Group::is_torsion_free)
    }

    /// Degrees carrying torsion, with their invariant factors.
    pub fn torsion_degrees(&self) -> Vec<(usize, Vec<BigUint>)> {
        self.groups
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.torsion.is_empty())
            .map(|(q, g)| (q, g.invariant_factors()))
            .collect()
    }

    /// Torsion of `H^q` matches torsion of `H^{dim+1-q}` (closed oriented
    /// manifolds, via the universal coefficient theorem and duality).
    pub fn torsion_duality_ok(&self) -> bool {
        let d = self.dim();
        self.groups[0].torsion.is_empty()
            && (1..=d).all(|q| {
                self.groups[q].invariant_factors() == self.groups[d + 1 - q].invariant_factors()
            })
    }

    pub fn canonical(&self) -> GradedGroup {
        GradedGroup {
            groups: self.groups.iter().map(Group::canonical).collect(),
        }
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Integral Künneth product when one factor is torsion-free, so no Tor
/// terms arise: `H^q = ⊕_i H^i(A) ⊗ H^{q-i}(B)`.
pub fn kunneth_integral_with_free(a: &GradedGroup, b: &GradedGroup) -> Result<GradedGroup> {
    let (free, other) = if a.is_torsion_free() {
        (a, b)
    } else if b.is_torsion_free() {
        (b, a)
    } else {
        return Err(Error::BothFactorsHaveTorsion);
    };
    let mut groups = vec![Group::zero(); free.dim() + other.dim() + 1];
    for (i, f) in free.groups.iter().enumerate() {
        if f.free.is_zero() {
            continue;
        }
        let copies = f
            .free
            .to_usize()
            .ok_or_else(|| Error::RankTooLarge(f.free.to_string()))?;
        for (j, g) in other.groups.iter().enumerate() {
            let target = &mut groups[i + j];
            target.free += &f.free * &g.free;
            for _ in 0..copies {
                target.torsion.extend(g.torsion.iter().cloned());
            }
        }
    }
    Ok(GradedGroup { groups })
}
