//! Jacobi-seed solutions of a family of rational Sturm-Liouville equations.
//!
//! A potential on the line is built from a tangent polynomial `T(z)` and two
//! ray identifiers through a Liouville change of variable. Its seed solutions
//! (an endpoint power product times a Jacobi polynomial) are found from a pair
//! of quartics, classified, checked for nodes and used as factorization
//! functions of Darboux transformations.

pub mod charexp;
pub mod cli;
pub mod closedform;
pub mod error;
pub mod liouville;
pub mod params;
pub mod poly;
pub mod quad;
pub mod regions;
pub mod seedsol;
pub mod spectrum;
pub mod susy;
pub mod verify;

#[cfg(test)]
mod testutil;

pub use charexp::{enumerate_solutions, SeedSolution, SequenceTag, SolType};
pub use error::{Error, Result};
pub use params::{canonicalize, PotentialSpec, RawParams};
