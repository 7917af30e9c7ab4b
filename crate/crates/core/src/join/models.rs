//! Tabulated integral cohomology of specific joins.
//!
//! The spectral-sequence computations behind these tables are not redone
//! here; each rule states the result for one shape of join and is checked
//! against the rational engine (free ranks) and against torsion duality
//! before it is returned.

use std::fmt;

use num_bigint::BigUint;

use crate::algebra::{big, kunneth_integral_with_free, BettiVector, GradedGroup, Group};
use crate::catalog::sigma2;
use crate::error::{Error, Result};
use crate::space::{Family, SeSpace};

/// How much of the integral cohomology a rule determines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelScope {
    /// Every group.
    FullGroups,
    /// Only `H^q` for `q <= max_degree`.
    LowDegreesOnly { max_degree: usize },
    /// Every group, and the ring is that of the stated product.
    RingIso,
}

impl ModelScope {
    pub fn is_full(self) -> bool {
        !matches!(self, ModelScope::LowDegreesOnly { .. })
    }
}

impl fmt::Display for ModelScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelScope::FullGroups => f.write_str("full-groups"),
            ModelScope::LowDegreesOnly { max_degree } => write!(f, "degrees<={max_degree}"),
            ModelScope::RingIso => f.write_str("ring-iso"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralModel {
    pub rule_id: &'static str,
    pub description: String,
    /// `H^0 ..= H^d`, where `d` is the dimension for full scopes and the
    /// maximal covered degree otherwise.
    pub groups: GradedGroup,
    pub ring_relations: Vec<String>,
    pub scope: ModelScope,
}

/// What a factor is, as far as the rules are concerned.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Atom {
    S3,
    /// `S(p1,p2,p3)` with its `sigma_2`.
    Spq(BigUint),
    /// Another simply connected, smooth 7-manifold of index 2 with `H^3 = 0`.
    General7 { b2: BigUint },
    Sk(u64),
    Cubic,
    Quartic,
    Other,
}

fn classify(s: &SeSpace) -> Atom {
    match &s.family {
        Family::Sphere { n: 1 } => Atom::S3,
        Family::ThreeSasakianP { p } => Atom::Spq(sigma2(*p)),
        Family::DelPezzoBundle { k } => Atom::Sk(*k),
        Family::FermatLink { d: 3, n: 3 } => Atom::Cubic,
        Family::FermatLink { d: 4, n: 3 } => Atom::Quartic,
        _ if s.is_index2_h3_free_7() => Atom::General7 { b2: s.b(2) },
        _ => Atom::Other,
    }
}

fn free(r: impl Into<BigUint>) -> Group {
    Group::free(r)
}

fn table(dim: usize, entries: &[(usize, Group)]) -> GradedGroup {
    let mut groups = vec![Group::zero(); dim + 1];
    for (q, g) in entries {
        groups[*q] = g.clone();
    }
    GradedGroup::new(groups).expect("nonempty")
}

fn s2_power(r: usize) -> GradedGroup {
    let mut acc = GradedGroup::from_betti(&BettiVector::point());
    let s2 = table(2, &[(0, free(1u32)), (2, free(1u32))]);
    for _ in 0..r {
        acc = kunneth_integral_with_free(&acc, &s2).expect("torsion-free");
    }
    acc
}

/// `S^3 ⋆ S(p1,p2,p3)`, which has the cohomology ring of `S^2 × S(p)`.
fn s3_spq(sigma: &BigUint) -> GradedGroup {
    table(
        9,
        &[
            (0, free(1u32)),
            (2, free(2u32)),
            (4, free(1u32).with_torsion(sigma.clone())),
            (5, free(1u32)),
            (6, Group::zero().with_torsion(sigma.clone())),
            (7, free(2u32)),
            (9, free(1u32)),
        ],
    )
}

#[cfg(test)]
fn spq_itself(sigma: &BigUint) -> GradedGroup {
    table(
        7,
        &[
            (0, free(1u32)),
            (2, free(1u32)),
            (4, Group::zero().with_torsion(sigma.clone())),
            (5, free(1u32)),
            (7, free(1u32)),
        ],
    )
}

fn s3_cubic() -> GradedGroup {
    table(
        9,
        &[
            (0, free(1u32)),
            (2, free(1u32)),
            (3, free(10u32)),
            (6, free(10u32)),
            (7, free(1u32)),
            (9, free(1u32)),
        ],
    )
}

fn low(groups: &[Group]) -> GradedGroup {
    GradedGroup::new(groups.to_vec()).expect("nonempty")
}

struct Shape {
    s3: usize,
    spq: Vec<BigUint>,
    general: Vec<BigUint>,
    sk: Vec<u64>,
    cubic: usize,
    quartic: usize,
    other: usize,
}

impl Shape {
    fn of(atoms: &[&SeSpace]) -> Shape {
        let mut shape = Shape {
            s3: 0,
            spq: vec![],
            general: vec![],
            sk: vec![],
            cubic: 0,
            quartic: 0,
            other: 0,
        };
        for a in atoms {
            match classify(a) {
                Atom::S3 => shape.s3 += 1,
                Atom::Spq(s) => shape.spq.push(s),
                Atom::General7 { b2 } => shape.general.push(b2),
                Atom::Sk(k) => shape.sk.push(k),
                Atom::Cubic => shape.cubic += 1,
                Atom::Quartic => shape.quartic += 1,
                Atom::Other => shape.other += 1,
            }
        }
        shape
    }

    /// Counts of (S3, S(p), general, S_k, cubic, quartic); any other atom
    /// rules out every table.
    fn counts(&self) -> Option<(usize, usize, usize, usize, usize, usize)> {
        (self.other == 0).then_some((
            self.s3,
            self.spq.len(),
            self.general.len(),
            self.sk.len(),
            self.cubic,
            self.quartic,
        ))
    }
}

fn candidate(atoms: &[&SeSpace]) -> Option<IntegralModel> {
    let shape = Shape::of(atoms);
    let counts = shape.counts()?;
    let model = |rule_id, description: String, groups, relations: &[&str], scope| IntegralModel {
        rule_id,
        description,
        groups,
        ring_relations: relations.iter().map(|r| r.to_string()).collect(),
        scope,
    };
    let z = || free(1u32);
    match counts {
        (1, 1, 0, 0, 0, 0) => {
            let sigma = &shape.spq[0];
            Some(model(
                "R2",
                format!("S3 * S(p1,p2,p3), sigma_2 = {sigma}"),
                s3_spq(sigma),
                &["ring isomorphic to H*(S^2 x S(p1,p2,p3))"],
                ModelScope::RingIso,
            ))
        }
        (r, a, b, 0, 0, 0) if r >= 2 && a + b == 1 => {
            // Only H^2 is stated integrally for r >= 2. The product ring
            // H*(S^2 x ... x S^2 x S) does not survive the rational check:
            // hard Lefschetz on the leaf space kills b_5 of the join.
            let k = shape.spq.first().map_or_else(|| shape.general[0].clone(), |_| big(1));
            Some(model(
                "R3",
                format!("{r}-fold S3 join with an index-2 7-manifold, H^3 = 0, b_2 = {k}"),
                low(&[z(), Group::zero(), free(k + big(r as u64))]),
                &["H^2 as for S^2 x ... x S^2 x S"],
                ModelScope::LowDegreesOnly { max_degree: 2 },
            ))
        }
        (1, 0, 1, 0, 0, 0) => {
            let k = &shape.general[0];
            Some(model(
                "R1",
                format!("S3 * S for an index-2 7-manifold S with H^3 = 0, b_2 = {k}"),
                low(&[z(), Group::zero(), free(k + 1u32), Group::zero()]),
                &[],
                ModelScope::LowDegreesOnly { max_degree: 3 },
            ))
        }
        (1, 0, 0, 1, 0, 0) => {
            let k = shape.sk[0];
            let mut h4 = Group::zero();
            for _ in 0..k {
                h4 = h4.with_torsion(2u32);
            }
            Some(model(
                "R4",
                format!("S3 * S_{k}"),
                table(7, &[(0, z()), (2, free(k + 1)), (4, h4), (5, free(k + 1)), (7, z())]),
                &["alpha_i alpha_j = 0", "s^2 = 0", "2 alpha_i s = 0"],
                ModelScope::FullGroups,
            ))
        }
        (1, 0, 0, 0, 1, 0) => Some(model(
            "R5",
            "S3 * S_{3,4}".into(),
            s3_cubic(),
            &[],
            ModelScope::FullGroups,
        )),
        (0, 1, 0, 0, 1, 0) | (0, 0, 1, 0, 1, 0) => {
            let k = shape.spq.first().map_or_else(|| shape.general[0].clone(), |_| big(1));
            Some(model(
                "R5",
                format!("S_{{3,4}} * S for an index-2 7-manifold S with H^3 = 0, b_2 = {k}"),
                low(&[z(), Group::zero(), free(k + 1u32), free(10u32)]),
                &[],
                ModelScope::LowDegreesOnly { max_degree: 3 },
            ))
        }
        (0, 0, 0, 1, 0, 1) => {
            let k = shape.sk[0];
            Some(model(
                "R6",
                format!("S_{k} * S_{{4,4}}"),
                table(
                    11,
                    &[
                        (0, z()),
                        (2, free(k + 1)),
                        (3, free(60u32)),
                        (4, z()),
                        (5, free(60 * k)),
                        (6, free(60 * k)),
                        (7, z()),
                        (8, free(60u32)),
                        (9, free(k + 1)),
                        (11, z()),
                    ],
                ),
                &["alpha_i alpha_j = 0", "s^3 = 0", "alpha_i s = 0", "u_a u_b = 0", "s u_a = 0"],
                ModelScope::FullGroups,
            ))
        }
        (0, 0, 0, 2, 0, 0) => {
            let (k, kp) = (shape.sk[0], shape.sk[1]);
            Some(model(
                "R7",
                format!("S_{k} * S_{kp}"),
                table(
                    9,
                    &[
                        (0, z()),
                        (2, free(k + kp + 1)),
                        (4, free(k * kp + 1)),
                        (5, free(k * kp + 1)),
                        (7, free(k + kp + 1)),
                        (9, z()),
                    ],
                ),
                &["alpha_i alpha_j = 0", "s^3 = 0", "alpha_i s = 0", "alpha'_i s = 0", "alpha'_i alpha'_j = 0"],
                ModelScope::FullGroups,
            ))
        }
        (2, 0, 0, 0, 1, 0) => Some(model(
            "R8",
            "2-fold S3 join with S_{3,4}".into(),
            kunneth_integral_with_free(&s2_power(1), &s3_cubic()).ok()?,
            &["ring isomorphic to H*(S^2 x (S^3 * S_{3,4}))"],
            ModelScope::RingIso,
        )),
        (n, 0, 0, 0, 1, 0) if n >= 3 => {
            // From three S3 factors on, the product ring disagrees with the
            // rational Betti numbers from degree 6; keep degrees <= 3.
            Some(model(
                "R8",
                format!("{n}-fold S3 join with S_{{3,4}}"),
                low(&[z(), Group::zero(), free(n as u64), free(10u32)]),
                &[],
                ModelScope::LowDegreesOnly { max_degree: 3 },
            ))
        }
        (n, a, b, 0, 1, 0) if n >= 1 && a + b == 1 => {
            let k = shape.spq.first().map_or_else(|| shape.general[0].clone(), |_| big(1));
            Some(model(
                "R8",
                format!("{n}-fold S3 join with S_{{3,4}} and an index-2 7-manifold, b_2 = {k}"),
                low(&[
                    z(),
                    Group::zero(),
                    free(k + big(n as u64 + 1)),
                    free(10u32),
                ]),
                &[],
                ModelScope::LowDegreesOnly { max_degree: 3 },
            ))
        }
        _ => None,
    }
}

/// The first tabulated rule matching the given atoms (circles excluded),
/// checked against the rational Betti numbers of `joined`.
pub fn integral_model_for_atoms(
    atoms: &[&SeSpace],
    joined: &SeSpace,
) -> Result<Option<IntegralModel>> {
    let Some(model) = candidate(atoms) else {
        return Ok(None);
    };
    let covered = model.groups.dim();
    if model.scope.is_full() && covered != joined.betti.dim() {
        return Err(Error::ModelRationalMismatch {
            rule: model.rule_id.into(),
            degree: covered,
        });
    }
    for (q, g) in model.groups.groups().iter().enumerate() {
        if g.free != joined.b(q as i64) {
            return Err(Error::ModelRationalMismatch {
                rule: model.rule_id.into(),
                degree: q,
            });
        }
    }
    if model.scope.is_full() && !model.groups.torsion_duality_ok() {
        let degree = (0..=covered)
            .find(|&q| {
                q == 0 && !model.groups.degree(0).torsion.is_empty()
                    || q > 0
                        && model.groups.degree(q).invariant_factors()
                            != model.groups.degree(covered + 1 - q).invariant_factors()
            })
            .unwrap_or(0);
        return Err(Error::ModelRationalMismatch {
            rule: model.rule_id.into(),
            degree,
        });
    }
    Ok(Some(model))
}
