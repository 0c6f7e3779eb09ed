//! Framed rook monoids over prime fields, their unipotent double cosets,
//! the convolution algebra on those cosets, and the rook Yokonuma-Hecke
//! algebra acting on tensor space. Everything is exact.

pub mod coset;
pub mod error;
pub mod framed;
pub mod hecke;
pub mod partitions;
pub mod perm;
pub mod report;
pub mod ring;
pub mod rook;
pub mod suites;
pub mod tensor;

pub use error::{Error, Result};
