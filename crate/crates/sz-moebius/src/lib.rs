//! Möbius functions on the subgroup lattices of the Suzuki groups
//! Sz(2^e), e odd.
//!
//! The crate has three layers:
//!
//! * symbolic: [`catalog`] describes the conjugacy classes of subgroups
//!   for any odd e, [`moebius`] evaluates the Möbius function on them by
//!   recursion and by closed form, and [`enumeration`] counts normal
//!   subgroups of free and Hecke groups with Suzuki quotients via Möbius
//!   inversion of homomorphism counts;
//! * explicit: [`field`] is exact GF(2^e) arithmetic, [`group`] builds
//!   Sz(2^e) as canonical-form elements acting on the ovoid, [`perm`] is
//!   a deterministic stabiliser chain for permutation group orders;
//! * [`oracle`]: brute-force recomputation of every symbolic quantity
//!   inside the explicit groups, used by the verification suites.

pub mod catalog;
pub mod enumeration;
pub mod field;
pub mod group;
pub mod moebius;
pub mod oracle;
pub mod perm;

pub use catalog::{canonical_classes, ClassLabel, Kind};
pub use enumeration::{n_gamma, GammaDescriptor};
pub use group::{GroupElement, Suzuki};
pub use moebius::{closed_form_mu, mu_table, MoebiusTable};
