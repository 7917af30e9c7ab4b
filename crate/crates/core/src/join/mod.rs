//! The join `S1 ⋆ S2`: the quotient of `S1 × S2` by the circle acting with
//! weights given by the relative indices. Joins form a commutative,
//! associative monoid with the flat circle as identity.
//!
//! A join is stored through its atoms (the non-identity building blocks, in a
//! canonical order), so every invariant that only depends on the atoms is
//! automatically independent of parenthesization and factor order. The one
//! exception is smoothness, which comes from the binary certificate; the
//! n-fold join checks that both fold orders agree.

mod models;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::algebra::{big, gcd_u64, gysin_circle_betti, kunneth_profile, lcm_all, BaseProfile, Tri};
use crate::error::{Error, Result};
use crate::space::{Family, Flags, Order, SeSpace};

pub use models::{integral_model_for_atoms, IntegralModel, ModelScope};

/// `l_i = Ind(S_i) / gcd(Ind(S_1), Ind(S_2))`, with `gcd(0, m) = m`.
pub fn relative_indices(a: &SeSpace, b: &SeSpace) -> (u64, u64) {
    let g = gcd_u64(a.index, b.index);
    if g == 0 {
        (0, 0)
    } else {
        (a.index / g, b.index / g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Smooth,
    Orbifold,
    Indeterminate,
}

impl Verdict {
    pub fn as_tri(self) -> Tri {
        match self {
            Verdict::Smooth => Tri::Yes,
            Verdict::Orbifold => Tri::No,
            Verdict::Indeterminate => Tri::Unknown,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Smooth => "smooth",
            Verdict::Orbifold => "orbifold",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evidence for the smoothness of a join of two smooth spaces, which holds
/// exactly when `gcd(m1 l2, m2 l1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinCertificate {
    pub l1: u64,
    pub l2: u64,
    pub m1: Order,
    pub m2: Order,
    /// `gcd(m1 l2, m2 l1)` when both orders are exact.
    pub g: Option<BigUint>,
    pub verdict: Verdict,
}

pub fn smoothness_certificate(a: &SeSpace, b: &SeSpace) -> JoinCertificate {
    let (l1, l2) = relative_indices(a, b);
    let (g, verdict) = match (a.order.bounds(), b.order.bounds()) {
        (Some((lo1, hi1)), Some((lo2, hi2))) => {
            let gcd = |m1: &BigUint, m2: &BigUint| (m1 * big(l2)).gcd(&(m2 * big(l1)));
            let (g_lo, g_hi) = (gcd(lo1, lo2), gcd(hi1, hi2));
            // the true value divides g_hi and is divisible by g_lo
            let exact = (a.order.exact().is_some() && b.order.exact().is_some()).then(|| g_hi.clone());
            if g_hi.is_one() {
                (exact, Verdict::Smooth)
            } else if !g_lo.is_one() {
                (exact, Verdict::Orbifold)
            } else {
                (None, Verdict::Indeterminate)
            }
        }
        // g divides m1 l2 and m2 l1, so one known side can settle it
        (Some((_, hi1)), None) if (hi1 * big(l2)).is_one() => (Some(BigUint::one()), Verdict::Smooth),
        (None, Some((_, hi2))) if (hi2 * big(l1)).is_one() => (Some(BigUint::one()), Verdict::Smooth),
        // S ⋆ S has g = Ord(S), which exceeds 1 unless S is regular
        _ if a == b && !a.regular => (None, Verdict::Orbifold),
        _ => (None, Verdict::Indeterminate),
    };
    JoinCertificate {
        l1,
        l2,
        m1: a.order.clone(),
        m2: b.order.clone(),
        g,
        verdict,
    }
}

/// Order of a join of the given atoms.
///
/// With every atom's local uniformizing orders known, the local groups of the
/// product are products, so the order is the lcm of all products. Otherwise
/// only `lcm(m_i) | Ord | prod(m_i)` is certain.
fn join_order(atoms: &[SeSpace]) -> (Order, Option<Vec<BigUint>>) {
    if let Some(locals) = atoms
        .iter()
        .map(|s| s.local_orders.as_ref())
        .collect::<Option<Vec<_>>>()
    {
        let mut products: BTreeSet<BigUint> = BTreeSet::from([BigUint::one()]);
        for orders in locals {
            products = products
                .iter()
                .flat_map(|p| orders.iter().map(move |o| p * o))
                .collect();
        }
        let products: Vec<BigUint> = products.into_iter().collect();
        return (Order::Known(lcm_all(&products)), Some(products));
    }
    let mut lower = BigUint::one();
    let mut upper = BigUint::one();
    for s in atoms {
        match s.order.bounds() {
            Some((lo, hi)) => {
                lower = lower.lcm(lo);
                upper *= hi;
            }
            None => return (Order::Unknown, None),
        }
    }
    (Order::between(lower, upper), None)
}

fn atom_key(s: &SeSpace) -> (u64, String) {
    (s.n, s.name.clone())
}

/// Assembles the join of a canonical, nonempty list of atoms, leaving the
/// smoothness verdict to the caller.
fn join_atoms(mut atoms: Vec<SeSpace>) -> Result<SeSpace> {
    atoms.sort_by_key(atom_key);
    let n = atoms.iter().map(|s| s.n).sum();
    let index = atoms.iter().fold(0, |g, s| gcd_u64(g, s.index));
    let mut base = BaseProfile::point();
    for s in &atoms {
        base = kunneth_profile(&base, &s.leaf_profile()?)?;
    }
    let betti = gysin_circle_betti(&base)?;
    let (order, local_orders) = join_order(&atoms);
    let name = atoms
        .iter()
        .map(|s| s.name.as_str())
        .collect::<Vec<_>>()
        .join(" * ");
    let mut out = SeSpace {
        name,
        family: Family::Join,
        n,
        index,
        order,
        local_orders,
        regular: atoms.iter().all(|s| s.regular),
        smooth: Tri::Unknown,
        simply_connected: true,
        betti,
        integral: None,
        flags: Flags {
            three_sasakian: false,
            homogeneous: atoms.iter().all(|s| s.flags.homogeneous),
            se_irreducible: Some(false),
        },
        ke_certified: atoms.iter().all(|s| s.ke_certified),
        moduli_dim_lower: atoms.iter().map(|s| s.moduli_dim_lower).max().unwrap_or(0),
        provenance: "join".into(),
        factors: Vec::new(),
    };
    let refs: Vec<&SeSpace> = atoms.iter().collect();
    if let Some(model) = integral_model_for_atoms(&refs, &out)? {
        if model.scope.is_full() {
            out.integral = Some(model.groups);
        }
    }
    out.factors = atoms;
    Ok(out)
}

/// The join of two simply connected spaces. The circle is the identity.
pub fn join(a: &SeSpace, b: &SeSpace) -> Result<SeSpace> {
    if a.is_identity() && a.is_atom() {
        return Ok(b.clone());
    }
    if b.is_identity() && b.is_atom() {
        return Ok(a.clone());
    }
    for s in [a, b] {
        if !s.simply_connected {
            return Err(Error::NotSimplyConnected(s.name.clone()));
        }
    }
    let atoms: Vec<SeSpace> = a.atoms().into_iter().chain(b.atoms()).cloned().collect();
    let mut out = join_atoms(atoms)?;
    out.smooth = if out.regular && out.order.is_one() {
        Tri::Yes
    } else {
        atoms_smooth(&out.factors)
    };
    Ok(out)
}

/// Smoothness of the join of a list of atoms, as a function of the multiset
/// alone so that it cannot depend on parenthesization.
///
/// A join is smooth only if every sub-join is, so any singular pair settles
/// it. Otherwise the binary certificate is folded over the atoms, exact orders
/// first, which lets an order-one prefix absorb a factor of unknown order.
fn atoms_smooth(atoms: &[SeSpace]) -> Tri {
    let mut verdict = atoms.iter().fold(Tri::Yes, |t, s| t.and(s.smooth));
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i + 1..] {
            if smoothness_certificate(a, b).verdict == Verdict::Orbifold {
                return Tri::No;
            }
        }
    }
    let mut ordered: Vec<&SeSpace> = atoms.iter().collect();
    ordered.sort_by_key(|s| (s.order.exact().is_none(), s.n, s.name.clone()));
    let mut prefix = ordered[0].clone();
    for (i, s) in ordered.iter().enumerate().skip(1) {
        verdict = verdict.and(smoothness_certificate(&prefix, s).verdict.as_tri());
        let seen: Vec<SeSpace> = ordered[..=i].iter().map(|s| (*s).clone()).collect();
        prefix.index = gcd_u64(prefix.index, s.index);
        (prefix.order, prefix.local_orders) = join_order(&seen);
        prefix.regular = prefix.regular && s.regular;
        // the prefix is a join now; it never compares equal to an atom
        prefix.family = Family::Join;
        prefix.name.push_str(" * ");
        prefix.name.push_str(&s.name);
    }
    verdict
}

/// Name of the first field in which two spaces differ, for diagnostics.
fn first_difference(a: &SeSpace, b: &SeSpace) -> &'static str {
    if a.name != b.name {
        "name"
    } else if a.n != b.n {
        "n"
    } else if a.index != b.index {
        "index"
    } else if a.order != b.order {
        "order"
    } else if a.smooth != b.smooth {
        "smooth"
    } else if a.betti != b.betti {
        "betti"
    } else if a.integral != b.integral {
        "integral"
    } else {
        "flags"
    }
}

/// `S_1 ⋆ ... ⋆ S_k`, checking that the left and right folds agree.
pub fn n_fold_join(spaces: &[SeSpace]) -> Result<SeSpace> {
    let (first, rest) = spaces.split_first().ok_or(Error::EmptyJoin)?;
    let mut left = first.clone();
    for s in rest {
        left = join(&left, s)?;
    }
    let (last, init) = spaces.split_last().expect("nonempty");
    let mut right = last.clone();
    for s in init.iter().rev() {
        right = join(s, &right)?;
    }
    if left != right {
        return Err(Error::FoldOrderMismatch(first_difference(&left, &right).into()));
    }
    Ok(left)
}

/// A parenthesized join expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JoinExpr {
    Leaf(SeSpace),
    Join(Box<JoinExpr>, Box<JoinExpr>),
}

impl JoinExpr {
    pub fn leaf(s: SeSpace) -> Self {
        JoinExpr::Leaf(s)
    }

    pub fn join(a: JoinExpr, b: JoinExpr) -> Self {
        JoinExpr::Join(Box::new(a), Box::new(b))
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&SeSpace> {
        match self {
            JoinExpr::Leaf(s) => vec![s],
            JoinExpr::Join(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    /// Non-identity atoms in canonical order; parenthesization and order of
    /// the leaves do not matter.
    pub fn flatten(&self) -> Vec<SeSpace> {
        let mut atoms: Vec<SeSpace> = self
            .leaves()
            .into_iter()
            .flat_map(|s| s.atoms())
            .cloned()
            .collect();
        atoms.sort_by_key(atom_key);
        atoms
    }

    /// Evaluates following the tree structure.
    pub fn evaluate(&self) -> Result<SeSpace> {
        match self {
            JoinExpr::Leaf(s) => Ok(s.clone()),
            JoinExpr::Join(a, b) => join(&a.evaluate()?, &b.evaluate()?),
        }
    }
}

impl fmt::Display for JoinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JoinExpr::Leaf(s) => f.write_str(&s.name),
            JoinExpr::Join(a, b) => match **b {
                JoinExpr::Leaf(_) => write!(f, "{a} * {b}"),
                _ => write!(f, "{a} * ({b})"),
            },
        }
    }
}

/// The integral model of a join expression, if one of the tabulated rules
/// applies.
pub fn integral_model(expr: &JoinExpr) -> Result<Option<IntegralModel>> {
    let atoms = expr.flatten();
    if atoms.len() < 2 {
        return Ok(None);
    }
    let refs: Vec<&SeSpace> = atoms.iter().collect();
    let space = join_atoms(atoms.clone())?;
    integral_model_for_atoms(&refs, &space)
}

/// Low Betti numbers of a join from those of the factors; each value is
/// only given inside the range where the closed formula holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LowBetti {
    pub b2: Option<BigUint>,
    pub b3: Option<BigUint>,
    pub b4: Option<BigUint>,
}

pub fn low_betti_lemma52(a: &SeSpace, b: &SeSpace) -> LowBetti {
    let n = a.n.min(b.n);
    let mut out = LowBetti::default();
    if n >= 1 {
        out.b2 = Some(a.b(2) + b.b(2) + 1u32);
    }
    if n >= 3 {
        out.b3 = Some(a.b(3) + b.b(3));
    }
    if n >= 4 {
        out.b4 = Some(a.b(4) + b.b(4) + a.b(2) * b.b(2) + a.b(2) + b.b(2) + 1u32);
    }
    out
}

/// Caveats the tabulated results cannot settle.
pub fn ambiguity_notes(s: &SeSpace) -> Vec<String> {
    let mut notes = Vec::new();
    let atoms = s.atoms();
    if atoms.len() == 2 {
        let five = atoms.iter().any(|a| a.family == Family::Sphere { n: 2 });
        let other = atoms.iter().find(|a| a.family != Family::Sphere { n: 2 });
        if let (true, Some(x)) = (five, other) {
            if x.n == 3 && x.flags.three_sasakian && x.b(2).is_one() {
                notes.push(format!(
                    "S5 * {}: for a 3-Sasakian factor with b_2 = 1, H^5 and H^6 are either both 0 \
                     (reported) or both Q of rank 1; the second case is not excluded by the tables",
                    x.name
                ));
            }
        }
    }
    if s.order.exact().is_none() && s.order != Order::Unknown {
        notes.push(format!("order known only up to bounds {}", s.order));
    }
    notes
}
