//! Exact verification toolkit for perm and pre-Lie algebras, their
//! affinizations to infinite-dimensional Lie (bi)algebras, Yang-Baxter type
//! equations and Manin doubles.

pub mod affinize;
pub mod axioms;
pub mod cli;
pub mod doubles;
pub mod error;
pub mod families;
pub mod kernel;
pub mod ybe;

pub use error::{Error, Result};
