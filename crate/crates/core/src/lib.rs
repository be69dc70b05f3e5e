//! Exact computations with Cohomological Hall algebras of quivers and their motivic
//! Donaldson–Thomas series.
//!
//! - [`quiver`], [`potential`], [`charge`]: quivers with potential, mutation, central charges
//! - [`shuffle`]: the COHA product on symmetric polynomials
//! - [`qcoeff`]: Laurent polynomials in `q^{1/2}` localized at `1 − q^k`
//! - [`torus`]: truncated series in the quantum torus and Harder–Narasimhan factorization
//! - [`dt`]: DT-series, `A^{(γ)}`, classical limits, Reineke's system, periodicity, mutation
//! - [`plethystic`]: Adams operations, `Sym`/`Log`, admissibility and refined invariants
//! - [`docs`]: JSON documents; [`checks`]: named verification suites

pub mod charge;
pub mod checks;
pub mod docs;
pub mod dt;
pub mod error;
pub mod lattice;
pub mod plethystic;
pub mod poly;
pub mod potential;
pub mod qcoeff;
pub mod quiver;
pub mod series;
pub mod shuffle;
pub mod symmetric;
pub mod torus;

pub use charge::CentralCharge;
pub use error::{Error, Result};
pub use lattice::DimVector;
pub use potential::{mutate_potential, CyclicWord, Potential};
pub use qcoeff::{LaurentQ, QRational};
pub use quiver::{Arrow, Quiver};
pub use series::{ClassicalSeries, LambdaSeries, Series};
pub use shuffle::{CohaElement, SymPoly};
pub use torus::{Basis, Ray, TorusSeries};
