//! Exact verification toolkit for characteristic-2 Enriques surfaces with
//! finite automorphism groups.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod curve_config;
pub mod derivations;
pub mod dynkin;
pub mod enriques_rules;
pub mod kodaira;
pub mod lattice;
pub mod report;
pub mod suite;
pub mod weierstrass;
