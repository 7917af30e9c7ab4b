//! Line-oriented catalog files.
//!
//! One record per line; blank lines and lines starting with `#` are skipped.
//! A record is a `;`-separated list of `key=value` fields:
//!
//! ```text
//! name=T(1,2,3); family=three_sasakian_p; params=p1:1,p2:2,p3:3; n=3; index=2; order=60;
//!     betti=1,0,1,0,0,1,0,1; torsion=4:11; flags=smooth,simply_connected,three_sasakian,ke
//! ```
//!
//! (shown wrapped; a record is a single line). Fields:
//!
//! | key          | required | value                                                   |
//! |--------------|----------|---------------------------------------------------------|
//! | `name`       | yes      | unique identifier, referenced as `@name`                 |
//! | `family`     | yes      | `circle`, `sphere`, `del_pezzo`, `fermat`, `three_sasakian_p`, `toric_omega`, `custom` |
//! | `params`     | no       | comma list of `key:value`                               |
//! | `n`          | yes      | real dimension is `2n+1`                                |
//! | `index`      | yes      | nonnegative integer                                     |
//! | `order`      | yes      | positive integer or `unknown`                           |
//! | `betti`      | yes      | comma list `b_0,...,b_{2n+1}`                           |
//! | `torsion`    | no       | comma list of `degree:order`; presence (even empty) means the integral cohomology is known |
//! | `flags`      | no       | comma list of `regular`, `smooth`, `simply_connected`, `three_sasakian`, `homogeneous`, `irreducible`, `reducible`, `ke`, `moduli:<k>` |
//! | `provenance` | no       | free text without `;`                                   |
//!
//! Unknown or repeated keys are errors. Records of a named family must agree
//! with the family constructor; every record must pass `validate_space`.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{
    make_circle, make_del_pezzo_bundle, make_fermat_link, make_sphere, make_three_sasakian,
    make_toric_omega,
};
use crate::algebra::{BettiVector, GradedGroup, Tri};
use crate::error::{Error, Result};
use crate::search::validate_space;
use crate::space::{Family, Flags, Order, SeSpace};

const KEYS: &[&str] = &[
    "name",
    "family",
    "params",
    "n",
    "index",
    "order",
    "betti",
    "torsion",
    "flags",
    "provenance",
];

const DEFAULT_CATALOG: &str = include_str!("../../data/default.catalog");

/// An immutable set of named spaces.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<SeSpace>,
}

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> Catalog {
        parse_catalog(DEFAULT_CATALOG).expect("shipped catalog is valid")
    }

    pub fn builtin_text() -> &'static str {
        DEFAULT_CATALOG
    }

    pub fn get(&self, name: &str) -> Option<&SeSpace> {
        self.entries.iter().find(|s| s.name == name)
    }

    pub fn entries(&self) -> &[SeSpace] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_catalog(&text)
}

pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let mut entries: Vec<SeSpace> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let space = parse_record(trimmed, i + 1)?;
        if entries.iter().any(|e| e.name == space.name) {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("duplicate name `{}`", space.name),
            });
        }
        entries.push(space);
    }
    Ok(Catalog { entries })
}

/// Parses and validates a single record.
pub fn parse_space(record: &str) -> Result<SeSpace> {
    parse_record(record.trim(), 1)
}

fn parse_record(record: &str, line: usize) -> Result<SeSpace> {
    let err = |message: String| Error::Parse { line, message };
    let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
    for part in record.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got `{part}`")))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(err(format!("unknown field `{key}`")));
        }
        if fields.insert(key, value.trim()).is_some() {
            return Err(err(format!("repeated field `{key}`")));
        }
    }
    let required = |key: &str| -> Result<&str> {
        fields
            .get(key)
            .copied()
            .ok_or_else(|| err(format!("missing field `{key}`")))
    };
    let int = |key: &str, text: &str| -> Result<u64> {
        text.parse::<u64>()
            .map_err(|_| err(format!("`{key}` must be a nonnegative integer, got `{text}`")))
    };

    let name = required("name")?.to_string();
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '*' || c == '@') {
        return Err(err(format!("invalid name `{name}`")));
    }
    let family_tag = required("family")?;
    let params = parse_params(fields.get("params").copied().unwrap_or(""), line)?;
    let n = int("n", required("n")?)?;
    let index = int("index", required("index")?)?;
    let order = match required("order")? {
        "unknown" => Order::Unknown,
        text => {
            let m = text
                .parse::<BigUint>()
                .map_err(|_| err(format!("`order` must be a positive integer or `unknown`, got `{text}`")))?;
            if m.is_zero() {
                return Err(err("`order` must be positive".into()));
            }
            Order::Known(m)
        }
    };
    let ranks = required("betti")?
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigUint>()
                .map_err(|_| err(format!("bad Betti number `{t}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let betti = BettiVector::new(ranks).map_err(|e| err(e.to_string()))?;

    let integral = match fields.get("torsion") {
        None => None,
        Some(text) => {
            let mut g = GradedGroup::from_betti(&betti);
            for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (q, m) = item
                    .split_once(':')
                    .ok_or_else(|| err(format!("torsion entries are degree:order, got `{item}`")))?;
                let q = int("torsion degree", q.trim())? as usize;
                let m = m
                    .trim()
                    .parse::<BigUint>()
                    .map_err(|_| err(format!("bad torsion order `{m}`")))?;
                g.add_torsion(q, m).map_err(|e| err(e.to_string()))?;
            }
            Some(g)
        }
    };

    let mut flags = Flags::default();
    let (mut regular, mut smooth, mut simply_connected, mut ke) = (false, false, false, false);
    let mut moduli = 0;
    for token in fields
        .get("flags")
        .copied()
        .unwrap_or("")
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
    {
        match token {
            "regular" => regular = true,
            "smooth" => smooth = true,
            "simply_connected" => simply_connected = true,
            "three_sasakian" => flags.three_sasakian = true,
            "homogeneous" => flags.homogeneous = true,
            "irreducible" => flags.se_irreducible = Some(true),
            "reducible" => flags.se_irreducible = Some(false),
            "ke" => ke = true,
            other => match other.strip_prefix("moduli:") {
                Some(k) => moduli = int("moduli", k)?,
                None => return Err(err(format!("unknown flag `{other}`"))),
            },
        }
    }
    let provenance = fields.get("provenance").copied().unwrap_or("").to_string();

    let space = if family_tag == "custom" {
        SeSpace {
            name,
            family: Family::Custom { params },
            n,
            index,
            local_orders: if regular { Some(vec![BigUint::one()]) } else { None },
            order,
            regular,
            smooth: Tri::from(smooth),
            simply_connected,
            betti,
            integral,
            flags,
            ke_certified: ke,
            moduli_dim_lower: moduli,
            provenance,
            factors: Vec::new(),
        }
    } else {
        let mut built = build_family(family_tag, &params, line)?;
        let violation = |what: &str, expected: String, found: String| Error::InvariantViolation {
            space: name.clone(),
            rule: "family-consistency".into(),
            detail: format!("{what}: family gives {expected}, record has {found}"),
        };
        if built.n != n {
            return Err(violation("n", built.n.to_string(), n.to_string()));
        }
        if built.index != index {
            return Err(violation("index", built.index.to_string(), index.to_string()));
        }
        if built.order != order {
            return Err(violation("order", built.order.to_string(), order.to_string()));
        }
        if built.betti != betti {
            return Err(violation(
                "betti",
                join_ranks(&built.betti),
                join_ranks(&betti),
            ));
        }
        if let (Some(g), Some(h)) = (&built.integral, &integral) {
            if g != h {
                return Err(violation("torsion", g.to_string(), h.to_string()));
            }
        }
        if built.regular != regular || built.smooth != Tri::from(smooth) {
            return Err(violation(
                "regular/smooth",
                format!("{}/{}", built.regular, built.smooth),
                format!("{regular}/{smooth}"),
            ));
        }
        if integral.is_some() {
            built.integral = integral;
        }
        built.name = name;
        if !provenance.is_empty() {
            built.provenance = provenance;
        }
        built.flags.se_irreducible = flags.se_irreducible;
        built
    };

    if let Some(v) = validate_space(&space).into_iter().next() {
        return Err(Error::InvariantViolation {
            space: v.space,
            rule: v.rule.to_string(),
            detail: format!("expected {}, found {}", v.expected, v.found),
        });
    }
    Ok(space)
}

fn parse_params(text: &str, line: usize) -> Result<Vec<(String, String)>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|item| {
            item.split_once(':')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("params are key:value, got `{item}`"),
                })
        })
        .collect()
}

fn build_family(tag: &str, params: &[(String, String)], line: usize) -> Result<SeSpace> {
    let get = |key: &str| -> Result<u64> {
        params
            .iter()
            .find(|(k, _)| k == key)
            .ok_or_else(|| Error::Parse {
                line,
                message: format!("family `{tag}` needs parameter `{key}`"),
            })?
            .1
            .parse::<u64>()
            .map_err(|_| Error::Parse {
                line,
                message: format!("parameter `{key}` must be an integer"),
            })
    };
    let allowed: &[&str] = match tag {
        "circle" => &[],
        "sphere" => &["n"],
        "del_pezzo" => &["k"],
        "fermat" => &["d", "n"],
        "three_sasakian_p" => &["p1", "p2", "p3"],
        "toric_omega" => &["k", "order"],
        other => {
            return Err(Error::Parse {
                line,
                message: format!("unknown family `{other}`"),
            })
        }
    };
    if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        return Err(Error::Parse {
            line,
            message: format!("family `{tag}` has no parameter `{k}`"),
        });
    }
    match tag {
        "circle" => Ok(make_circle()),
        "sphere" => make_sphere(get("n")?),
        "del_pezzo" => make_del_pezzo_bundle(get("k")?),
        "fermat" => make_fermat_link(get("d")?, get("n")?),
        "three_sasakian_p" => make_three_sasakian(get("p1")?, get("p2")?, get("p3")?),
        _ => {
            let order = match params.iter().any(|(k, _)| k == "order") {
                true => Some(BigUint::from(get("order")?)),
                false => None,
            };
            make_toric_omega(get("k")?, order)
        }
    }
}

fn join_ranks(b: &BettiVector) -> String {
    b.ranks()
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Renders a space as a catalog record that [`parse_space`] reads back.
pub fn render_record(s: &SeSpace) -> String {
    let (tag, params): (&str, Vec<(String, String)>) = match &s.family {
        Family::Circle => ("circle", vec![]),
        Family::Sphere { n } => ("sphere", vec![("n".into(), n.to_string())]),
        Family::DelPezzoBundle { k } => ("del_pezzo", vec![("k".into(), k.to_string())]),
        Family::FermatLink { d, n } => (
            "fermat",
            vec![("d".into(), d.to_string()), ("n".into(), n.to_string())],
        ),
        Family::ThreeSasakianP { p } => (
            "three_sasakian_p",
            vec![
                ("p1".into(), p[0].to_string()),
                ("p2".into(), p[1].to_string()),
                ("p3".into(), p[2].to_string()),
            ],
        ),
        Family::ToricOmega { k } => {
            let mut ps = vec![("k".into(), k.to_string())];
            if let Order::Known(m) = &s.order {
                ps.push(("order".into(), m.to_string()));
            }
            ("toric_omega", ps)
        }
        Family::Custom { params } => ("custom", params.clone()),
        Family::Join => ("custom", vec![]),
    };
    let params = params
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(",");
    let order = match &s.order {
        Order::Known(m) => m.to_string(),
        _ => "unknown".into(),
    };
    let mut flags = Vec::new();
    if s.regular {
        flags.push("regular".to_string());
    }
    if s.smooth == Tri::Yes {
        flags.push("smooth".into());
    }
    if s.simply_connected {
        flags.push("simply_connected".into());
    }
    if s.flags.three_sasakian {
        flags.push("three_sasakian".into());
    }
    if s.flags.homogeneous {
        flags.push("homogeneous".into());
    }
    match s.flags.se_irreducible {
        Some(true) => flags.push("irreducible".into()),
        Some(false) => flags.push("reducible".into()),
        None => {}
    }
    if s.ke_certified {
        flags.push("ke".into());
    }
    if s.moduli_dim_lower > 0 {
        flags.push(format!("moduli:{}", s.moduli_dim_lower));
    }
    let mut out = format!(
        "name={}; family={tag}; params={params}; n={}; index={}; order={order}; betti={}",
        s.name,
        s.n,
        s.index,
        join_ranks(&s.betti)
    );
    if let Some(g) = &s.integral {
        let torsion = g
            .torsion_degrees()
            .into_iter()
            .flat_map(|(q, ds)| ds.into_iter().map(move |d| format!("{q}:{d}")))
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!("; torsion={torsion}"));
    }
    out.push_str(&format!("; flags={}", flags.join(",")));
    if !s.provenance.is_empty() {
        out.push_str(&format!("; provenance={}", s.provenance.replace(';', ",")));
    }
    out
}
