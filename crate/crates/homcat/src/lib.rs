//! Exact homological algebra in two concrete settings: finitely generated
//! abelian groups (as cokernels of integer matrices) and finite groups (as
//! Cayley tables).
//!
//! - [`fgab`]: integer matrices, Smith form, groups, morphisms, Hom and tensor.
//! - [`chains`]: bounded chain complexes, homology, connecting maps, long exact sequences.
//! - [`derived`]: resolutions, Tor/Ext, and the homological Yoneda bijection.
//! - [`grp`]: finite groups, commutators, abelianisation, extensions.
//! - [`grphom`]: bar complexes, group (co)homology, the five-term tail.
//! - [`uce`]: acyclicity classes, the coefficient pairing, universal central extensions.

pub mod chains;
pub mod derived;
pub mod fgab;
pub mod grp;
pub mod grphom;
pub mod uce;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("degree {degree} outside [{lo}, {hi}]")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
