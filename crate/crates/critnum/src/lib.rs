//! Critical numbers of finite abelian groups.
//!
//! The library has three independent routes to the same quantities:
//! closed-form evaluators ([`formulas`]), exact brute-force and
//! branch-and-bound searches ([`oracle`]), and a sweep harness
//! ([`verify`]) that cross-checks the two and emits reports.

pub mod error;
pub mod formulas;
pub mod group;
pub mod gset;
pub mod oracle;
pub mod sumset;
pub mod verify;

pub use error::{Error, Result};
pub use group::{divisors, groups_of_order, make_group, units, DivisorProfile, GroupSpec};
pub use gset::GSet;
