//! Exact invariants of Sasakian-Einstein spaces and their joins.
//!
//! A space is described by discrete data only: dimension, Fano index of the
//! leaf space, orbifold order, Betti numbers and (when known) integral
//! cohomology. The join `S1 ⋆ S2` propagates all of it, the lattice module
//! classifies the orbifolds `M(S1, S2; l, k)`, and the search module runs the
//! enumerations and consistency checks.
//!
//! ```
//! use sejoin_core::catalog::{make_sphere, make_three_sasakian};
//! use sejoin_core::join::join;
//!
//! let s = join(&make_sphere(1)?, &make_three_sasakian(1, 2, 3)?)?;
//! assert_eq!(s.dim(), 9);
//! assert_eq!(s.integral.unwrap().degree(4).to_string(), "Z + Z_11");
//! # Ok::<(), sejoin_core::Error>(())
//! ```

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod join;
pub mod lattice;
pub mod search;
pub mod space;

pub use error::{Error, Result};
pub use space::{Family, Flags, Order, SeSpace};
