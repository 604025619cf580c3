//! Exact rewriting and truncated operator representations for the cross
//! product algebras of Podles quantum spheres.
//!
//! The crate has two tiers:
//!
//! - an exact tier over the field Q(s, c) with s = q^{1/2}: the free *-algebra
//!   on the generator alphabets, a catalog of presentations given as oriented
//!   rewrite systems, normal-form reduction and an empirical local-confluence
//!   checker ([`algebra`], scalars in [`qrat`]);
//! - a numeric tier of truncated sparse operator representations: the quantum
//!   sphere representations, the spin representations of U_q(su2), the
//!   weighted-shift representations of the auxiliary algebra, and the two
//!   families of cross product representations ([`reps`]), together with the
//!   decoupling maps between them ([`decouple`]) and a relation/adjointness
//!   checker with interior-vector accounting for the truncation ([`verify`]).
//!
//! The `qsphere` binary (see [`cli`]) exposes normal forms, representation
//! building, checking, coefficient tables and JSON export.

pub mod algebra;
pub mod cli;
pub mod decouple;
pub mod error;
pub mod qrat;
pub mod reps;
pub mod sparse;
pub mod verify;

pub use error::{Error, Result};
