//! The record of exact invariants carried for every Sasakian-Einstein space.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::algebra::{leaf_space_betti, BaseProfile, BettiVector, GradedGroup, Tri};
use crate::error::Result;

/// Orbifold order: the lcm of the orders of the leaf holonomy groups.
///
/// `Between` records bounds `lower | Ord | upper` when the exact value cannot
/// be determined from the available data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Known(BigUint),
    Between { lower: BigUint, upper: BigUint },
    Unknown,
}

impl Order {
    pub fn known(m: impl Into<BigUint>) -> Self {
        Order::Known(m.into())
    }

    pub fn one() -> Self {
        Order::Known(BigUint::one())
    }

    /// Collapses equal bounds into an exact value.
    pub fn between(lower: BigUint, upper: BigUint) -> Self {
        if lower == upper {
            Order::Known(lower)
        } else {
            Order::Between { lower, upper }
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Order::Known(m) => Some(m),
            _ => None,
        }
    }

    /// `(lower, upper)` with `lower | Ord | upper`, when anything is known.
    pub fn bounds(&self) -> Option<(&BigUint, &BigUint)> {
        match self {
            Order::Known(m) => Some((m, m)),
            Order::Between { lower, upper } => Some((lower, upper)),
            Order::Unknown => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Order::Known(m) if m.is_one())
    }

    /// Whether the order is odd, as far as the bounds tell.
    pub fn is_odd(&self) -> Tri {
        match self.bounds() {
            None => Tri::Unknown,
            Some((lo, hi)) => {
                let two = BigUint::from(2u32);
                if (lo % &two).is_zero() {
                    Tri::No
                } else if !(hi % &two).is_zero() {
                    Tri::Yes
                } else {
                    Tri::Unknown
                }
            }
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Known(m) => write!(f, "{m}"),
            Order::Between { lower, upper } => write!(f, "[{lower}, {upper}]"),
            Order::Unknown => f.write_str("unknown"),
        }
    }
}

/// Which constructor produced a space, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Circle,
    Sphere { n: u64 },
    DelPezzoBundle { k: u64 },
    FermatLink { d: u64, n: u64 },
    ThreeSasakianP { p: [u64; 3] },
    ToricOmega { k: u64 },
    Custom { params: Vec<(String, String)> },
    Join,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Circle => "circle",
            Family::Sphere { .. } => "sphere",
            Family::DelPezzoBundle { .. } => "del_pezzo",
            Family::FermatLink { .. } => "fermat",
            Family::ThreeSasakianP { .. } => "three_sasakian_p",
            Family::ToricOmega { .. } => "toric_omega",
            Family::Custom { .. } => "custom",
            Family::Join => "join",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Flags {
    pub three_sasakian: bool,
    pub homogeneous: bool,
    pub se_irreducible: Option<bool>,
}

/// A quasi-regular Sasakian-Einstein space of dimension `2n+1`, described
/// only by its discrete invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeSpace {
    pub name: String,
    pub family: Family,
    pub n: u64,
    /// Fano index of the leaf space; 0 only for the circle.
    pub index: u64,
    pub order: Order,
    pub local_orders: Option<Vec<BigUint>>,
    pub regular: bool,
    pub smooth: Tri,
    pub simply_connected: bool,
    pub betti: BettiVector,
    pub integral: Option<GradedGroup>,
    pub flags: Flags,
    pub ke_certified: bool,
    pub moduli_dim_lower: u64,
    pub provenance: String,
    /// Atoms of a join in canonical order; empty for atoms themselves.
    pub factors: Vec<SeSpace>,
}

impl SeSpace {
    pub fn dim(&self) -> u64 {
        2 * self.n + 1
    }

    pub fn is_identity(&self) -> bool {
        self.n == 0
    }

    pub fn is_atom(&self) -> bool {
        self.factors.is_empty()
    }

    /// The non-identity atoms this space is a join of.
    pub fn atoms(&self) -> Vec<&SeSpace> {
        if self.is_atom() {
            if self.is_identity() {
                Vec::new()
            } else {
                vec![self]
            }
        } else {
            self.factors.iter().collect()
        }
    }

    pub fn b(&self, q: i64) -> BigUint {
        self.betti.rank(q)
    }

    /// Rational cohomology of the leaf space, with its Fano index.
    pub fn leaf_profile(&self) -> Result<BaseProfile> {
        let mut profile = leaf_space_betti(&self.betti)?;
        profile.fano_index = self.index.max(1);
        Ok(profile)
    }

    /// `H^3(S, Z) = 0`, either from stored integral data or known for the family.
    pub fn h3_vanishes(&self) -> bool {
        match &self.integral {
            Some(g) => g.dim() >= 3 && g.degree(3).is_zero(),
            None => matches!(self.family, Family::ToricOmega { .. }),
        }
    }

    /// A simply connected 7-manifold of index 2 with vanishing `H^3`; the
    /// common hypothesis of the S^3-join cohomology theorems.
    pub fn is_index2_h3_free_7(&self) -> bool {
        self.n == 3
            && self.index == 2
            && self.simply_connected
            && self.smooth.is_yes()
            && self.h3_vanishes()
    }
}

impl fmt::Display for SeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
