//! Enumerations and predicates built on the join calculus, plus the space
//! validator.

pub mod validate;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::catalog::{make_del_pezzo_bundle, make_sphere, make_three_sasakian};
use crate::error::{Error, Result};
use crate::join::{smoothness_certificate, JoinCertificate, Verdict};
use crate::space::SeSpace;

pub use validate::{validate_space, Violation, RULES};

/// Hits of an enumeration together with the bound that makes it exhaustive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult<T> {
    pub query: String,
    pub hits: Vec<T>,
    pub bound: String,
}

/// A smooth family member `S_l ⋆ S(4r1+1, 4r2+1, 4r3+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleHit {
    pub r: [u64; 3],
    pub p: [u64; 3],
    pub order: BigUint,
    pub space: SeSpace,
    /// Certificate for `S_l ⋆ S(p)` for each del Pezzo bundle `S_l`.
    pub certificates: Vec<(u64, JoinCertificate)>,
}

/// Del Pezzo bundles checked against every hit.
pub const DEL_PEZZO_RANGE: std::ops::RangeInclusive<u64> = 3..=8;

/// All ordered triples `p_i = 4 r_i + 1` with `0 <= r_i <= r_max` that are
/// pairwise coprime. Each hit has odd order, and its join with every del
/// Pezzo bundle is smooth; a hit failing either is an internal error.
pub fn cor418_triples(r_max: u64) -> Result<SearchResult<TripleHit>> {
    let del_pezzo: Vec<(u64, SeSpace)> = DEL_PEZZO_RANGE
        .map(|l| make_del_pezzo_bundle(l).map(|s| (l, s)))
        .collect::<Result<_>>()?;
    let mut hits = Vec::new();
    for r1 in 0..=r_max {
        for r2 in 0..=r_max {
            for r3 in 0..=r_max {
                let p = [4 * r1 + 1, 4 * r2 + 1, 4 * r3 + 1];
                if p[0].gcd(&p[1]) != 1 || p[0].gcd(&p[2]) != 1 || p[1].gcd(&p[2]) != 1 {
                    continue;
                }
                let space = make_three_sasakian(p[0], p[1], p[2])?;
                let order = space.order.exact().cloned().expect("S(p) has a known order");
                if order.is_even() {
                    return Err(Error::Inconsistent(format!("{} has even order {order}", space.name)));
                }
                let certificates: Vec<(u64, JoinCertificate)> = del_pezzo
                    .iter()
                    .map(|(l, sl)| (*l, smoothness_certificate(sl, &space)))
                    .collect();
                if let Some((l, _)) = certificates.iter().find(|(_, c)| c.verdict != Verdict::Smooth) {
                    return Err(Error::Inconsistent(format!("Sk({l}) * {} is not smooth", space.name)));
                }
                hits.push(TripleHit {
                    r: [r1, r2, r3],
                    p,
                    order,
                    space,
                    certificates,
                });
            }
        }
    }
    Ok(SearchResult {
        query: format!("cor418 rmax={r_max}"),
        hits,
        bound: format!("all ordered (r1, r2, r3) with 0 <= r_i <= {r_max}"),
    })
}

/// Moduli of regular Sasakian-Einstein structures on `#k(S^2 × S^3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regular5Status {
    Empty,
    Point,
    FamilyDimAtLeast(u64),
}

impl fmt::Display for Regular5Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regular5Status::Empty => f.write_str("empty"),
            Regular5Status::Point => f.write_str("point"),
            Regular5Status::FamilyDimAtLeast(d) => write!(f, "family of dimension >= {d}"),
        }
    }
}

pub fn regular5_status(k: u64) -> Regular5Status {
    match k {
        0 | 1 | 3 | 4 => Regular5Status::Point,
        5..=8 => Regular5Status::FamilyDimAtLeast(k - 4),
        _ => Regular5Status::Empty,
    }
}

/// Smoothness of `S^{2m+1} ⋆ S` for a 7-dimensional `S` of index 2: smooth
/// when `m` is odd, and for even `m` exactly when the order of `S` is odd.
pub fn smooth_sphere_join_predicate(m: u64, s: &SeSpace) -> Result<Verdict> {
    if s.n != 3 || s.index != 2 {
        return Err(Error::WrongShape {
            space: s.name.clone(),
            expected: "dimension 7 and index 2".into(),
        });
    }
    if m == 0 {
        return Err(Error::InvalidParameters("m must be positive".into()));
    }
    if m % 2 == 1 {
        return Ok(Verdict::Smooth);
    }
    Ok(match s.order.is_odd() {
        crate::algebra::Tri::Yes => Verdict::Smooth,
        crate::algebra::Tri::No => Verdict::Orbifold,
        crate::algebra::Tri::Unknown => Verdict::Indeterminate,
    })
}

/// Convenience for callers that want the sphere too.
pub fn sphere_join_certificate(m: u64, s: &SeSpace) -> Result<JoinCertificate> {
    Ok(smoothness_certificate(&make_sphere(m)?, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::big;
    use crate::catalog::make_toric_omega;

    #[test]
    fn triples_rmax_one() {
        let res = cor418_triples(1).unwrap();
        let ps: Vec<[u64; 3]> = res.hits.iter().map(|h| h.p).collect();
        assert!(ps.contains(&[1, 1, 5]));
        assert!(!ps.contains(&[1, 5, 5]));
        let h = res.hits.iter().find(|h| h.p == [1, 1, 5]).unwrap();
        assert_eq!(h.order, big(3));
        // (1,1,1), three arrangements of (1,1,5)
        assert_eq!(res.hits.len(), 4);
    }

    #[test]
    fn triples_closed_under_permutation() {
        let res = cor418_triples(4).unwrap();
        for h in &res.hits {
            let [a, b, c] = h.r;
            for perm in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                assert!(res.hits.iter().any(|g| g.r == perm));
            }
        }
    }

    #[test]
    fn regular5() {
        assert_eq!(regular5_status(2), Regular5Status::Empty);
        assert_eq!(regular5_status(0), Regular5Status::Point);
        assert_eq!(regular5_status(7), Regular5Status::FamilyDimAtLeast(3));
        assert_eq!(regular5_status(9), Regular5Status::Empty);
    }

    #[test]
    fn sphere_predicate_examples() {
        let t123 = make_three_sasakian(1, 2, 3).unwrap();
        let t115 = make_three_sasakian(1, 1, 5).unwrap();
        assert_eq!(smooth_sphere_join_predicate(3, &t123).unwrap(), Verdict::Smooth);
        assert_eq!(smooth_sphere_join_predicate(2, &t123).unwrap(), Verdict::Orbifold);
        assert_eq!(smooth_sphere_join_predicate(2, &t115).unwrap(), Verdict::Smooth);
        let o = make_toric_omega(3, None).unwrap();
        assert_eq!(smooth_sphere_join_predicate(2, &o).unwrap(), Verdict::Indeterminate);
        assert!(matches!(
            smooth_sphere_join_predicate(2, &make_sphere(2).unwrap()),
            Err(Error::WrongShape { .. })
        ));
    }

    #[test]
    fn sphere_predicate_agrees_with_certificate() {
        let spaces = [
            make_three_sasakian(1, 2, 3).unwrap(),
            make_three_sasakian(1, 1, 5).unwrap(),
            make_three_sasakian(1, 3, 5).unwrap(),
            make_toric_omega(2, None).unwrap(),
            make_toric_omega(2, Some(big(9))).unwrap(),
        ];
        for s in &spaces {
            for m in 1..=12 {
                assert_eq!(
                    smooth_sphere_join_predicate(m, s).unwrap(),
                    sphere_join_certificate(m, s).unwrap().verdict,
                    "m = {m}, {}",
                    s.name
                );
            }
        }
    }
}
