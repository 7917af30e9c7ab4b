//! Exact arithmetic and graded-cohomology kernel.

mod arith;
mod betti;
mod graded;

pub use arith::{big, gcd_all, gcd_u64, lcm_all, Tri};
pub use betti::{
    euler_characteristic, gysin_circle_betti, kunneth_betti, kunneth_profile, leaf_space_betti,
    BaseProfile, BettiVector,
};
pub use graded::{invariant_factors, kunneth_integral_with_free, GradedGroup, Group};
