//! Diagonal nilsoliton metrics on nice nilpotent Lie algebras.
//!
//! The pipeline: parse structure equations ([`algebra`]), compute the
//! Nikolayevsky derivation and solve the affine, sign and monomial
//! conditions ([`nilsoliton`]), then check the resulting metrics against an
//! independent curvature computation ([`geometry`]). [`catalog`] holds the
//! tabulated algebras and the batch driver.

pub mod algebra;
pub mod catalog;
pub mod exactnum;
pub mod geometry;
pub mod nilsoliton;
