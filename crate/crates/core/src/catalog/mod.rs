//! Building-block spaces with their exact invariants, and catalog files of
//! user-defined spaces.

mod file;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{big, lcm_all, BettiVector, GradedGroup, Tri};
use crate::error::{Error, Result};
use crate::space::{Family, Flags, Order, SeSpace};

pub use file::{load_catalog, parse_catalog, parse_space, render_record, Catalog};

fn regular_atom(name: String, family: Family, n: u64, index: u64, betti: BettiVector) -> SeSpace {
    SeSpace {
        name,
        family,
        n,
        index,
        order: Order::one(),
        local_orders: Some(vec![BigUint::one()]),
        regular: true,
        smooth: Tri::Yes,
        simply_connected: true,
        integral: None,
        betti,
        flags: Flags::default(),
        ke_certified: true,
        moduli_dim_lower: 0,
        provenance: String::new(),
        factors: Vec::new(),
    }
}

/// The round sphere `S^{2n+1}`, a circle bundle over `CP^n` of index `n+1`.
pub fn make_sphere(n: u64) -> Result<SeSpace> {
    if n == 0 {
        return Err(Error::InvalidParameters(
            "S^1 is the monoid identity; use make_circle".into(),
        ));
    }
    let dim = 2 * n + 1;
    let betti = BettiVector::sphere(dim as usize);
    let mut s = regular_atom(format!("S{dim}"), Family::Sphere { n }, n, n + 1, betti);
    s.integral = Some(GradedGroup::from_betti(&s.betti));
    s.flags.homogeneous = true;
    s.flags.three_sasakian = dim % 4 == 3;
    s.provenance = "Hopf fibration over CP^n".into();
    Ok(s)
}

/// The flat circle; the identity of the join monoid. Its leaf space is a
/// point and its index is 0.
pub fn make_circle() -> SeSpace {
    let betti = BettiVector::sphere(1);
    let mut s = regular_atom("S1".into(), Family::Circle, 0, 0, betti);
    s.integral = Some(GradedGroup::from_betti(&s.betti));
    s.simply_connected = false;
    s.flags.homogeneous = true;
    s.provenance = "flat circle, identity of the join".into();
    s
}

/// Regular Sasakian-Einstein 5-manifold over the del Pezzo surface
/// `CP^2 # k(-CP^2)`, diffeomorphic to `#k(S^2 x S^3)`.
pub fn make_del_pezzo_bundle(k: u64) -> Result<SeSpace> {
    if !(3..=8).contains(&k) {
        return Err(Error::OutsideDelPezzoRange(k));
    }
    let betti = BettiVector::from_u64(&[1, 0, k, k, 0, 1])?;
    let mut s = regular_atom(format!("Sk({k})"), Family::DelPezzoBundle { k }, 2, 1, betti);
    s.integral = Some(GradedGroup::from_betti(&s.betti));
    s.moduli_dim_lower = k.saturating_sub(4);
    s.provenance = format!("circle bundle over the del Pezzo surface P_{k}");
    Ok(s)
}

/// Middle Betti number of the link of the degree-`d` Fermat hypersurface in
/// `P^{n+1}`: `(-1)^n (1 + ((1-d)^{n+2} - 1)/d)`.
pub fn fermat_middle_betti(d: u64, n: u64) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::InvalidParameters("degree must be positive".into()));
    }
    let exp = u32::try_from(n + 2)
        .map_err(|_| Error::InvalidParameters(format!("dimension {n} too large")))?;
    let pow = num_traits::pow(BigInt::one() - BigInt::from(d), exp as usize);
    let (quot, rem) = (pow - BigInt::one()).div_rem(&BigInt::from(d));
    debug_assert!(rem.is_zero());
    let mut b = BigInt::one() + quot;
    if n % 2 == 1 {
        b = -b;
    }
    if b.is_negative() {
        return Err(Error::Inconsistent(format!("negative middle Betti number for ({d},{n})")));
    }
    Ok(b.to_biguint().expect("nonnegative"))
}

/// Link `S_{d,n+1}` of the Fermat hypersurface `z_0^d + ... + z_{n+1}^d = 0`,
/// a regular circle bundle over it of index `n+2-d`.
pub fn make_fermat_link(d: u64, n: u64) -> Result<SeSpace> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameters("need d >= 1 and n >= 1".into()));
    }
    if d > n + 1 {
        return Err(Error::NotFano { d, n });
    }
    if n == 1 && d == 2 {
        // the conic is CP^1 with index 2, not n+2-d = 1
        return Err(Error::InvalidParameters(
            "the conic link is not covered by the index formula; use S3".into(),
        ));
    }
    let dim = (2 * n + 1) as usize;
    let middle = fermat_middle_betti(d, n)?;
    let mut ranks = vec![BigUint::zero(); dim + 1];
    ranks[0] = BigUint::one();
    ranks[dim] = BigUint::one();
    ranks[n as usize] += &middle;
    ranks[n as usize + 1] += &middle;
    let betti = BettiVector::new(ranks)?;
    let mut s = regular_atom(format!("F({d},{n})"), Family::FermatLink { d, n }, n, n + 2 - d, betti);
    s.ke_certified = 2 * d >= n + 1;
    s.flags.homogeneous = d <= 2;
    s.provenance = format!("link of the degree-{d} Fermat hypersurface in P^{}", n + 1);
    Ok(s)
}

fn check_coprime(p: [u64; 3]) -> Result<()> {
    if p.iter().any(|&x| x == 0) {
        return Err(Error::InvalidParameters("weights must be positive".into()));
    }
    let pairs = [(0, 1), (0, 2), (1, 2)];
    if pairs.iter().any(|&(i, j)| p[i].gcd(&p[j]) != 1) {
        return Err(Error::NotPairwiseCoprime(p));
    }
    Ok(())
}

/// Order of the 3-Sasakian 7-manifold `S(p1,p2,p3)`: the lcm of the three
/// pairwise half-sums when all weights are odd, of the pairwise sums otherwise.
pub fn order_spq(p1: u64, p2: u64, p3: u64) -> Result<BigUint> {
    let p = [p1, p2, p3];
    check_coprime(p)?;
    let all_odd = p.iter().all(|x| x % 2 == 1);
    let terms: Vec<BigUint> = [(p1, p2), (p1, p3), (p2, p3)]
        .iter()
        .map(|&(a, b)| {
            let s = big(a) + big(b);
            if all_odd {
                s / 2u32
            } else {
                s
            }
        })
        .collect();
    Ok(lcm_all(&terms))
}

pub fn sigma2(p: [u64; 3]) -> BigUint {
    big(p[0]) * big(p[1]) + big(p[0]) * big(p[2]) + big(p[1]) * big(p[2])
}

fn three_sasakian_shape(name: String, family: Family, b2: u64, order: Order) -> Result<SeSpace> {
    let regular = order.is_one();
    let betti = BettiVector::from_u64(&[1, 0, b2, 0, 0, b2, 0, 1])?;
    Ok(SeSpace {
        name,
        family,
        n: 3,
        index: 2,
        local_orders: if regular { Some(vec![BigUint::one()]) } else { None },
        order,
        regular,
        smooth: Tri::Yes,
        simply_connected: true,
        betti,
        integral: None,
        flags: Flags {
            three_sasakian: true,
            homogeneous: false,
            se_irreducible: None,
        },
        ke_certified: true,
        moduli_dim_lower: 0,
        provenance: String::new(),
        factors: Vec::new(),
    })
}

/// The 3-Sasakian 7-manifold `S(p1,p2,p3)` with pairwise coprime weights:
/// `b_2 = 1`, `H^3 = 0`, `H^4 = Z_{sigma_2}`.
pub fn make_three_sasakian(p1: u64, p2: u64, p3: u64) -> Result<SeSpace> {
    let mut p = [p1, p2, p3];
    p.sort_unstable();
    let order = order_spq(p[0], p[1], p[2])?;
    let family = Family::ThreeSasakianP { p };
    let name = format!("T({},{},{})", p[0], p[1], p[2]);
    let mut s = three_sasakian_shape(name, family, 1, Order::Known(order))?;
    let mut integral = GradedGroup::from_betti(&s.betti);
    integral.add_torsion(4, sigma2(p))?;
    s.integral = Some(integral);
    s.flags.homogeneous = p == [1, 1, 1];
    s.provenance = "3-Sasakian reduction S(p1,p2,p3)".into();
    Ok(s)
}

/// Toric 3-Sasakian 7-manifold `S(Omega_k)` with `b_2 = k` and `H^3 = 0`.
/// Its order is only known when supplied.
pub fn make_toric_omega(k: u64, order: Option<BigUint>) -> Result<SeSpace> {
    if k == 0 {
        return Err(Error::InvalidParameters("Omega_k needs k >= 1".into()));
    }
    if order.as_ref().is_some_and(|m| m.is_zero()) {
        return Err(Error::InvalidParameters("order must be positive".into()));
    }
    let name = match &order {
        Some(m) => format!("Omega({k},order={m})"),
        None => format!("Omega({k})"),
    };
    let order = order.map_or(Order::Unknown, Order::Known);
    let mut s = three_sasakian_shape(name, Family::ToricOmega { k }, k, order)?;
    s.provenance = "toric 3-Sasakian quotient by a k x (k+2) weight matrix".into();
    Ok(s)
}
