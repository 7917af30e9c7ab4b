//! Classification and consistency checks on a single space. Violations are
//! data, not errors, so hypothetical spaces can be explored.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::Tri;
use crate::space::SeSpace;

pub const RULE_BETTI_SHAPE: &str = "betti-shape";
pub const RULE_EULER: &str = "euler-zero";
pub const RULE_DUALITY: &str = "poincare-duality";
pub const RULE_B1: &str = "simply-connected-b1";
pub const RULE_ORDER_ONE: &str = "order-one-regular-smooth";
pub const RULE_REGULAR_INDEX: &str = "regular-index-bound";
pub const RULE_THREE_SASAKIAN_INDEX: &str = "three-sasakian-index";
pub const RULE_REGULAR7_B2: &str = "regular7-b2-bound";
pub const RULE_REGULAR5: &str = "regular5-classification";
pub const RULE_INDEX_RANGE: &str = "index-range";
pub const RULE_INTEGRAL_FREE: &str = "integral-free-ranks";
pub const RULE_TORSION_DUALITY: &str = "torsion-duality";

/// Every rule id `validate_space` can emit.
pub const RULES: &[&str] = &[
    RULE_BETTI_SHAPE,
    RULE_EULER,
    RULE_DUALITY,
    RULE_B1,
    RULE_ORDER_ONE,
    RULE_REGULAR_INDEX,
    RULE_THREE_SASAKIAN_INDEX,
    RULE_REGULAR7_B2,
    RULE_REGULAR5,
    RULE_INDEX_RANGE,
    RULE_INTEGRAL_FREE,
    RULE_TORSION_DUALITY,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub space: String,
    pub rule: &'static str,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} (expected {}, found {})",
            self.space, self.rule, self.expected, self.found
        )
    }
}

pub fn validate_space(s: &SeSpace) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut flag = |rule: &'static str, expected: String, found: String| {
        out.push(Violation {
            space: s.name.clone(),
            rule,
            expected,
            found,
        })
    };

    let dim = s.dim();
    if s.betti.dim() as u64 != dim {
        flag(RULE_BETTI_SHAPE, format!("{} ranks", dim + 1), format!("{}", s.betti.dim() + 1));
    }
    let chi = s.betti.euler_characteristic();
    if !chi.is_zero() {
        flag(RULE_EULER, "0".into(), chi.to_string());
    }
    if !s.betti.is_poincare_symmetric() {
        flag(RULE_DUALITY, "b_q = b_{dim-q}".into(), "asymmetric ranks".into());
    }
    if s.simply_connected && s.n >= 1 && !s.b(1).is_zero() {
        flag(RULE_B1, "b_1 = 0".into(), format!("b_1 = {}", s.b(1)));
    }

    if s.order.is_one() && !(s.regular && s.smooth == Tri::Yes) {
        flag(
            RULE_ORDER_ONE,
            "regular and smooth".into(),
            format!("regular = {}, smooth = {}", s.regular, s.smooth),
        );
    }
    if s.regular && s.order.exact().is_some_and(|m| !m.is_one()) {
        flag(RULE_ORDER_ONE, "order 1 for a regular space".into(), s.order.to_string());
    }

    if s.n == 0 && s.index != 0 || s.n >= 1 && s.index == 0 {
        flag(
            RULE_INDEX_RANGE,
            "index 0 exactly in dimension 1".into(),
            format!("index {} in dimension {dim}", s.index),
        );
    }
    if s.regular && s.index > s.n + 1 {
        flag(RULE_REGULAR_INDEX, format!("index <= {}", s.n + 1), s.index.to_string());
    }
    if s.flags.three_sasakian {
        if dim % 4 != 3 {
            flag(RULE_THREE_SASAKIAN_INDEX, "dimension 4m+3".into(), dim.to_string());
        } else {
            let m = (dim - 3) / 4;
            if s.index != m + 1 && s.index != 2 * m + 2 {
                flag(
                    RULE_THREE_SASAKIAN_INDEX,
                    format!("index {} or {}", m + 1, 2 * m + 2),
                    s.index.to_string(),
                );
            }
        }
    }
    if s.regular && s.n == 3 && s.b(2) > 9u32.into() {
        flag(RULE_REGULAR7_B2, "b_2 <= 9".into(), s.b(2).to_string());
    }
    if s.regular && s.n == 2 && s.simply_connected {
        let k = s.b(2).to_u64().unwrap_or(u64::MAX);
        if k == 2 || k >= 9 {
            flag(RULE_REGULAR5, "b_2 in {0, 1, 3..8}".into(), format!("b_2 = {k}"));
        }
    }

    if let Some(g) = &s.integral {
        match g.free_ranks() {
            Ok(free) if free == s.betti => {}
            Ok(free) => flag(
                RULE_INTEGRAL_FREE,
                format!("{:?}", s.betti.ranks()),
                format!("{:?}", free.ranks()),
            ),
            Err(_) => flag(RULE_INTEGRAL_FREE, "H^0 = Z".into(), g.to_string()),
        }
        if !g.torsion_duality_ok() {
            flag(
                RULE_TORSION_DUALITY,
                "torsion in degree q equals torsion in degree dim+1-q".into(),
                g.to_string(),
            );
        }
    }
    out
}
