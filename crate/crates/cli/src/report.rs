//! Machine-readable reports.
//!
//! Every document carries a `schema` tag. Field order is fixed by the struct
//! definitions, so serialization is deterministic. Integers are JSON numbers
//! when they fit in 64 bits and decimal strings otherwise; values that cannot
//! be determined are the string `"unknown"`, never omitted.

use std::fmt;

use num_bigint::BigUint;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use sejoin_core::algebra::{BettiVector, GradedGroup, Group, Tri};
use sejoin_core::join::{IntegralModel, JoinCertificate, Verdict};
use sejoin_core::search::Violation;
use sejoin_core::{Order, SeSpace};

pub const REPORT_SCHEMA: &str = "sejoin.report/1";
pub const LATTICE_SCHEMA: &str = "sejoin.lattice/1";
pub const SEARCH_SCHEMA: &str = "sejoin.search/1";
pub const CATALOG_SCHEMA: &str = "sejoin.catalog/1";
pub const VERIFY_SCHEMA: &str = "sejoin.verify/1";

/// An arbitrary-size natural number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Num(pub BigUint);

impl From<&BigUint> for Num {
    fn from(v: &BigUint) -> Self {
        Num(v.clone())
    }
}

impl From<u64> for Num {
    fn from(v: u64) -> Self {
        Num(BigUint::from(v))
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(&self.0) {
            Ok(v) => s.serialize_u64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a natural number or a decimal string")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num::from(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                v.parse::<BigUint>().map(Num).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// The literal token `"unknown"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnknownToken;

impl Serialize for UnknownToken {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("unknown")
    }
}

impl<'de> Deserialize<'de> for UnknownToken {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "unknown" {
            Ok(UnknownToken)
        } else {
            Err(de::Error::custom(format!("expected \"unknown\", got {s:?}")))
        }
    }
}

/// A value or the `"unknown"` token.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Maybe<T> {
    Known(T),
    Unknown(UnknownToken),
}

impl<T: fmt::Display> fmt::Display for Maybe<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Maybe::Known(v) => v.fmt(f),
            Maybe::Unknown(_) => f.write_str("unknown"),
        }
    }
}

impl<T> From<Option<T>> for Maybe<T> {
    fn from(v: Option<T>) -> Self {
        v.map_or(Maybe::Unknown(UnknownToken), Maybe::Known)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderValue {
    Exact(Num),
    Between { lower: Num, upper: Num },
    Unknown(UnknownToken),
}

impl From<&Order> for OrderValue {
    fn from(o: &Order) -> Self {
        match o {
            Order::Known(m) => OrderValue::Exact(m.into()),
            Order::Between { lower, upper } => OrderValue::Between {
                lower: lower.into(),
                upper: upper.into(),
            },
            Order::Unknown => OrderValue::Unknown(UnknownToken),
        }
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Exact(m) => m.fmt(f),
            OrderValue::Between { lower, upper } => write!(f, "[{lower}, {upper}]"),
            OrderValue::Unknown(_) => f.write_str("unknown"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriValue {
    No,
    Unknown,
    Yes,
}

impl From<Tri> for TriValue {
    fn from(t: Tri) -> Self {
        match t {
            Tri::No => TriValue::No,
            Tri::Unknown => TriValue::Unknown,
            Tri::Yes => TriValue::Yes,
        }
    }
}

impl From<Option<bool>> for TriValue {
    fn from(b: Option<bool>) -> Self {
        match b {
            Some(true) => TriValue::Yes,
            Some(false) => TriValue::No,
            None => TriValue::Unknown,
        }
    }
}

impl fmt::Display for TriValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriValue::No => "no",
            TriValue::Unknown => "unknown",
            TriValue::Yes => "yes",
        })
    }
}

pub fn betti_nums(b: &BettiVector) -> Vec<Num> {
    b.ranks().iter().map(Num::from).collect()
}

pub fn join_nums(v: &[Num]) -> String {
    v.iter().map(Num::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub name: String,
    pub family: String,
    pub dim: u64,
    pub n: u64,
    pub index: u64,
    pub order: OrderValue,
    pub regular: bool,
    pub smooth: TriValue,
    pub simply_connected: bool,
    pub betti: Vec<Num>,
    pub three_sasakian: bool,
    pub homogeneous: bool,
    pub se_irreducible: TriValue,
    pub ke_certified: bool,
    pub moduli_dim_lower: u64,
    pub factors: Vec<String>,
    pub provenance: String,
}

impl From<&SeSpace> for SpaceReport {
    fn from(s: &SeSpace) -> Self {
        SpaceReport {
            name: s.name.clone(),
            family: s.family.tag().to_string(),
            dim: s.dim(),
            n: s.n,
            index: s.index,
            order: (&s.order).into(),
            regular: s.regular,
            smooth: s.smooth.into(),
            simply_connected: s.simply_connected,
            betti: betti_nums(&s.betti),
            three_sasakian: s.flags.three_sasakian,
            homogeneous: s.flags.homogeneous,
            se_irreducible: s.flags.se_irreducible.into(),
            ke_certified: s.ke_certified,
            moduli_dim_lower: s.moduli_dim_lower,
            factors: s.factors.iter().map(|f| f.name.clone()).collect(),
            provenance: s.provenance.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub left: String,
    pub right: String,
    pub l1: u64,
    pub l2: u64,
    pub m1: OrderValue,
    pub m2: OrderValue,
    pub g: Maybe<Num>,
    pub verdict: String,
}

impl CertificateReport {
    pub fn new(left: &SeSpace, right: &SeSpace, c: &JoinCertificate) -> Self {
        CertificateReport {
            left: left.name.clone(),
            right: right.name.clone(),
            l1: c.l1,
            l2: c.l2,
            m1: (&c.m1).into(),
            m2: (&c.m2).into(),
            g: c.g.as_ref().map(Num::from).into(),
            verdict: c.verdict.as_str().to_string(),
        }
    }

    pub fn is_indeterminate(&self) -> bool {
        self.verdict == Verdict::Indeterminate.as_str()
    }
}

/// One cohomology group, torsion in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub free: Num,
    pub torsion: Vec<Num>,
    pub text: String,
}

impl From<&Group> for GroupReport {
    fn from(g: &Group) -> Self {
        GroupReport {
            free: (&g.free).into(),
            torsion: g.invariant_factors().iter().map(Num::from).collect(),
            text: g.to_string(),
        }
    }
}

pub fn group_reports(g: &GradedGroup) -> Vec<GroupReport> {
    g.groups().iter().map(GroupReport::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntegralReport {
    Model {
        rule: String,
        scope: String,
        description: String,
        groups: Vec<GroupReport>,
        relations: Vec<String>,
    },
    /// Always the text `"rational only"`.
    RationalOnly(String),
}

impl IntegralReport {
    pub fn rational_only() -> Self {
        IntegralReport::RationalOnly("rational only".into())
    }
}

impl From<Option<&IntegralModel>> for IntegralReport {
    fn from(m: Option<&IntegralModel>) -> Self {
        match m {
            Some(m) => IntegralReport::Model {
                rule: m.rule_id.to_string(),
                scope: m.scope.to_string(),
                description: m.description.clone(),
                groups: group_reports(&m.groups),
                relations: m.ring_relations.clone(),
            },
            None => IntegralReport::rational_only(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub space: String,
    pub rule: String,
    pub expected: String,
    pub found: String,
}

impl From<&Violation> for ViolationReport {
    fn from(v: &Violation) -> Self {
        ViolationReport {
            space: v.space.clone(),
            rule: v.rule.to_string(),
            expected: v.expected.clone(),
            found: v.found.clone(),
        }
    }
}

/// The result of evaluating one join expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub expression: String,
    pub space: SpaceReport,
    pub certificates: Vec<CertificateReport>,
    pub integral: IntegralReport,
    pub notes: Vec<String>,
    pub validation: Vec<ViolationReport>,
}

impl Report {
    /// Whether `--strict` should reject this result.
    pub fn is_indeterminate(&self) -> bool {
        self.space.smooth == TriValue::Unknown
            || matches!(self.space.order, OrderValue::Unknown(_))
            || self.certificates.iter().any(CertificateReport::is_indeterminate)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CohomologyReport {
    Betti { betti: Vec<Num> },
    Product { descriptor: String, advisory_betti: Vec<Num> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub l: u64,
    pub k: u64,
    pub interior: bool,
    pub sasakian_einstein: bool,
    pub orb_simply_connected: bool,
    pub smooth: TriValue,
    pub cohomology: CohomologyReport,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub schema: String,
    pub s1: String,
    pub s2: String,
    pub relative_indices: [u64; 2],
    pub box_size: [u64; 2],
    pub smooth_only: bool,
    pub points: Vec<PointReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReport {
    pub r: [u64; 3],
    pub p: [u64; 3],
    pub order: Num,
    pub smooth_with_del_pezzo: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SearchHits {
    Triples(Vec<TripleReport>),
    Regular5 { k: u64, status: String },
    SphereJoin {
        m: u64,
        space: String,
        predicate: String,
        certificate: CertificateReport,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema: String,
    pub query: String,
    pub bound: String,
    pub result: SearchHits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub schema: String,
    pub source: String,
    pub entries: Vec<SpaceReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.ok).count()
    }
}
