//! Exact q-series engine.
//!
//! Graph series of simple graphs, multiple q-zeta values and their Lie-algebra
//! analogues, constant terms of products of Jacobi-type Fourier series, and
//! the vertex-algebra characters built from them. All arithmetic is over the
//! rationals; every series carries an explicit truncation.

pub mod error;
pub mod graph_series;
pub mod graphs;
pub mod modular;
pub mod qmzv;
pub mod series;
pub mod verify;
pub mod vertexchar;

pub use error::{Error, Result};
pub use series::{QSeries, Q};
