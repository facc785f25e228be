//! Shallow characters of pro-unipotent radicals of parahoric subgroups in
//! split simple p-adic groups: root data, affine roots, Chevalley commutator
//! constants, characters over finite fields, and Weyl group actions.

pub mod affine;
pub mod characters;
pub mod chevalley;
pub mod cli;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod rational;
pub mod root_system;
pub mod sp4;
pub mod weyl;

pub use error::{Error, Result};
