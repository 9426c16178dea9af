//! Exact computation of Kronecker coefficients of the symmetric group,
//! together with the character, contingency-table, hook and
//! Littlewood-Richardson machinery they are built from.
//!
//! All values are exact big integers. The character oracle
//! ([`kron::kron_via_characters`]) is the reference every faster route is
//! tested against.

pub mod cache;
pub mod characters;
pub mod contingency;
pub mod error;
pub mod hooks;
pub mod kron;
pub mod lr;
pub mod partitions;
pub mod verify;

pub use error::{Error, Result};
pub use kron::{compute, AutoConfig, Method};
pub use partitions::{partitions_of, Partition};
