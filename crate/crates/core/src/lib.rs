//! Exact building-data calculus for abelian covers of projective space, with
//! the full classification of smooth `(Z/2)^k`-covers of the plane with
//! geometric genus 3, their quotients and their weighted projective models.
//!
//! The crate is organised bottom-up:
//!
//! - [`group`] and [`gl`]: finite abelian groups, characters, subgroups and
//!   `GL(k, F_2)` isomorphism search.
//! - [`building`]: numeric building data and every invariant formula.
//! - [`classify`]: exhaustive enumeration of the genus-3 families.
//! - [`quotient`]: intermediate quotients, node counts, K3 towers and burger triples.
//! - [`equations`]: weighted projective models and their rendering.
//! - [`verify`] and [`cli`]: the verification ledger and command-line front end.

pub mod building;
pub mod classify;
pub mod cli;
pub mod equations;
pub mod error;
pub mod gl;
pub mod group;
pub mod json;
pub mod quotient;
pub mod verify;

pub use building::{BuildingDataNumeric, SurfaceInvariants};
pub use classify::{family_table, lookup, CoverType, FamilyDescriptor, SearchConfig};

pub use error::{Error, Result};
pub use group::{Character, FiniteAbelianGroup, GroupElement, Subgroup};
