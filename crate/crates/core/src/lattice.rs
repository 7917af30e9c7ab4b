//! The lattice `M(S1, S2; l, k) = (S1 × S2) / S^1(l, k)` of Einstein
//! orbifolds attached to a pair of Sasakian-Einstein spaces, where the
//! circle acts by `(x, y) -> (τ^k x, τ^{-l} y)`.
//!
//! The join is the point `(l1, l2)` given by the relative indices. Every
//! interior point has the rational cohomology of the join; the boundary
//! points `(l, 0)` and `(0, k)` are the products `S1 × Z2` and `Z1 × S2` with
//! the leaf spaces.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{big, gcd_u64, kunneth_betti, BettiVector, Tri};
use crate::error::{Error, Result};
use crate::join::{join, relative_indices};
use crate::space::{Order, SeSpace};

/// Rational cohomology of a lattice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointCohomology {
    /// Interior points: the Betti numbers of the join.
    Betti(BettiVector),
    /// Boundary points: a product with a leaf space. The Betti numbers of the
    /// product are advisory; they need not match the interior.
    Product {
        descriptor: String,
        advisory_betti: BettiVector,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub compact_orbifold: bool,
    pub orb_simply_connected: bool,
    pub smooth: Tri,
    pub einstein_metric_exists: bool,
    pub sasakian_einstein: bool,
    pub rational_cohomology: PointCohomology,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub s1: SeSpace,
    pub s2: SeSpace,
    pub l: u64,
    pub k: u64,
    pub classification: Classification,
    pub notes: Vec<String>,
}

impl LatticePoint {
    pub fn is_interior(&self) -> bool {
        self.l > 0 && self.k > 0
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({}, {}; {}, {})", self.s1.name, self.s2.name, self.l, self.k)
    }
}

/// Whether the leaf space of `s` is a manifold: only regular spaces qualify.
fn leaf_space_smooth(s: &SeSpace) -> Tri {
    match s.order.bounds() {
        Some((lo, _)) if !lo.is_one() => Tri::No,
        _ if s.order.is_one() => Tri::Yes,
        _ => Tri::Unknown,
    }
}

fn interior_smoothness(s1: &SeSpace, s2: &SeSpace, l: u64, k: u64, on_join: bool) -> Tri {
    let (Some((lo1, hi1)), Some((lo2, hi2))) = (s1.order.bounds(), s2.order.bounds()) else {
        return Tri::Unknown;
    };
    let gcd = |m1: &BigUint, m2: &BigUint| (m1 * big(k)).gcd(&(m2 * big(l)));
    let verdict = if gcd(hi1, hi2).is_one() {
        Tri::Yes
    } else if on_join && !gcd(lo1, lo2).is_one() {
        // at the join the criterion is an equivalence
        Tri::No
    } else if !lo1.gcd(lo2).is_one() {
        // a common factor of the orders obstructs every point
        Tri::No
    } else {
        Tri::Unknown
    };
    verdict.and(s1.smooth).and(s2.smooth)
}

/// `(l, k) = m (l1, l2)` for some integer `m >= 1`.
fn on_se_ray(l: u64, k: u64, l1: u64, l2: u64) -> bool {
    match (l1, l2) {
        (0, 0) => false,
        (0, _) => l == 0 && k % l2 == 0,
        (_, 0) => k == 0 && l % l1 == 0,
        _ => l % l1 == 0 && l / l1 * l2 == k,
    }
}

pub fn lattice_point(s1: &SeSpace, s2: &SeSpace, l: u64, k: u64) -> Result<LatticePoint> {
    point_at(s1, s2, l, k, None)
}

/// Builds a point, reusing the interior Betti numbers when the caller already
/// has them: they are the same at every interior point.
fn point_at(
    s1: &SeSpace,
    s2: &SeSpace,
    l: u64,
    k: u64,
    interior: Option<&BettiVector>,
) -> Result<LatticePoint> {
    if l == 0 && k == 0 {
        return Err(Error::BothZero);
    }
    let (l1, l2) = relative_indices(s1, s2);
    let sasakian_einstein = on_se_ray(l, k, l1, l2);
    let mut notes = Vec::new();
    let (smooth, rational_cohomology) = if l > 0 && k > 0 {
        let on_join = (l, k) == (l1, l2);
        (
            interior_smoothness(s1, s2, l, k, on_join),
            PointCohomology::Betti(match interior {
                Some(b) => b.clone(),
                None => join(s1, s2)?.betti,
            }),
        )
    } else {
        notes.push("boundary point: rational cohomology may differ from the interior".into());
        let (total, leaf_of) = if k == 0 { (s1, s2) } else { (s2, s1) };
        let leaf = leaf_of.leaf_profile()?;
        let descriptor = if k == 0 {
            format!("{} x Z({})", s1.name, s2.name)
        } else {
            format!("Z({}) x {}", s1.name, s2.name)
        };
        (
            total.smooth.and(leaf_space_smooth(leaf_of)),
            PointCohomology::Product {
                descriptor,
                advisory_betti: kunneth_betti(&total.betti, &leaf.betti),
            },
        )
    };
    if !sasakian_einstein {
        notes.push("Einstein metric exists; the scaling ratio is not computed here".into());
    }
    Ok(LatticePoint {
        s1: s1.clone(),
        s2: s2.clone(),
        l,
        k,
        classification: Classification {
            compact_orbifold: true,
            orb_simply_connected: gcd_u64(l, k) == 1,
            smooth,
            einstein_metric_exists: true,
            sasakian_einstein,
            rational_cohomology,
        },
        notes,
    })
}

fn same_pair(p: &LatticePoint, q: &LatticePoint) -> Result<()> {
    if p.s1 == q.s1 && p.s2 == q.s2 {
        Ok(())
    } else {
        Err(Error::MismatchedFactors)
    }
}

/// The lattice order: `p <= q` iff `l | l'` and `k | k'`, the order whose
/// meet and join are the componentwise gcd and lcm.
pub fn lattice_leq(p: &LatticePoint, q: &LatticePoint) -> Result<bool> {
    same_pair(p, q)?;
    let divides = |a: u64, b: u64| if a == 0 { b == 0 } else { b % a == 0 };
    Ok(divides(p.l, q.l) && divides(p.k, q.k))
}

pub fn lattice_meet(p: &LatticePoint, q: &LatticePoint) -> Result<LatticePoint> {
    same_pair(p, q)?;
    point_at(&p.s1, &p.s2, p.l.gcd(&q.l), p.k.gcd(&q.k), interior_betti(p, q))
}

pub fn lattice_join(p: &LatticePoint, q: &LatticePoint) -> Result<LatticePoint> {
    same_pair(p, q)?;
    point_at(&p.s1, &p.s2, p.l.lcm(&q.l), p.k.lcm(&q.k), interior_betti(p, q))
}

fn interior_betti<'a>(p: &'a LatticePoint, q: &'a LatticePoint) -> Option<&'a BettiVector> {
    [p, q].into_iter().find_map(|x| match &x.classification.rational_cohomology {
        PointCohomology::Betti(b) => Some(b),
        PointCohomology::Product { .. } => None,
    })
}

/// All interior points of the box `[1, l_max] × [1, k_max]` satisfying the
/// sufficient manifold condition `gcd(m1 k, m2 l) = 1`.
pub fn enumerate_smooth(
    s1: &SeSpace,
    s2: &SeSpace,
    l_max: u64,
    k_max: u64,
) -> Result<Vec<LatticePoint>> {
    let m1 = exact_order(s1)?;
    let m2 = exact_order(s2)?;
    let mut out = Vec::new();
    for l in 1..=l_max {
        for k in 1..=k_max {
            if (m1 * big(k)).gcd(&(m2 * big(l))).is_one() {
                out.push(lattice_point(s1, s2, l, k)?);
            }
        }
    }
    Ok(out)
}

fn exact_order(s: &SeSpace) -> Result<&BigUint> {
    match &s.order {
        Order::Known(m) => Ok(m),
        _ => Err(Error::IndeterminateOrder(s.name.clone())),
    }
}

/// The limit of `M(S1, S2; l t + a, k t + b)` as `t -> ∞`, which is the point
/// `(l, k)` for every offset.
pub fn cheeger_limit(
    s1: &SeSpace,
    s2: &SeSpace,
    l: u64,
    k: u64,
    a: u64,
    b: u64,
) -> Result<LatticePoint> {
    let mut p = lattice_point(s1, s2, l, k)?;
    p.notes.insert(
        0,
        format!("limit of M({}, {}; {l}t+{a}, {k}t+{b}) as t -> infinity", s1.name, s2.name),
    );
    Ok(p)
}

/// Rescaling of a product of Kähler-Einstein leaf spaces of complex
/// dimensions `n1`, `n2` (each normalized to Einstein constant `2(n_i+1)`)
/// to a Kähler-Einstein product of Einstein constant `2(N+1)`, `N = n1+n2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingSolution {
    pub n1: u64,
    pub n2: u64,
    pub c1: BigRational,
    pub c2: BigRational,
    /// Scalar curvature of each rescaled factor; 0 for a point.
    pub factor_scalar: [BigRational; 2],
    /// Einstein constant of each rescaled factor; none for a point.
    pub factor_einstein: [Option<BigRational>; 2],
    pub scalar_curvature: BigInt,
    pub einstein_constant: BigInt,
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn scaling_solution(n1: u64, n2: u64) -> ScalingSolution {
    let big_n = n1 + n2;
    let c = |ni: u64| BigRational::new(BigInt::from(ni + 1), BigInt::from(big_n + 1));
    let (c1, c2) = (c(n1), c(n2));
    // A metric scaled by c has Ricci tensor unchanged, so its Einstein
    // constant and scalar curvature are divided by c.
    let scale = |ni: u64, ci: &BigRational| {
        let einstein = rat(2 * (ni + 1));
        let scal = rat(2 * ni) * &einstein;
        if ni == 0 {
            (scal, None)
        } else {
            (scal / ci, Some(einstein / ci))
        }
    };
    let (scal1, e1) = scale(n1, &c1);
    let (scal2, e2) = scale(n2, &c2);
    let total = &scal1 + &scal2;
    debug_assert!(total.is_integer());
    ScalingSolution {
        n1,
        n2,
        c1,
        c2,
        factor_scalar: [scal1, scal2],
        factor_einstein: [e1, e2],
        scalar_curvature: total.to_integer(),
        einstein_constant: BigInt::from(2 * (big_n + 1)),
    }
}

impl ScalingSolution {
    /// Every nondegenerate factor has the product's Einstein constant, and
    /// the scalar curvatures add up to `4N(N+1)`.
    pub fn is_consistent(&self) -> bool {
        let big_n = self.n1 + self.n2;
        let target = rat(2 * (big_n + 1));
        let einstein_ok = self.factor_einstein.iter().flatten().all(|e| *e == target);
        let scal = &self.factor_scalar[0] + &self.factor_scalar[1];
        einstein_ok
            && scal == rat(4 * big_n * (big_n + 1))
            && self.scalar_curvature == BigInt::from(4 * big_n * (big_n + 1))
            && !self.c1.is_zero()
    }
}
