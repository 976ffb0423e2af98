//! Linear codes viewed as vertices of the Grassmann graph.
//!
//! The crate classifies `[n,k]` codes over GF(q) by their dual minimum
//! distance, builds the subgraph of the Grassmann graph induced by the codes
//! of dual distance at least `t + 1`, constructs geodesics and opposite codes
//! inside that subgraph, and verifies connectivity and isometric embedding by
//! exhaustive enumeration.

pub mod cli;
pub mod codes;
pub mod combinatorics;
pub mod construct;
pub mod error;
pub mod gf;
pub mod grassmann;
pub mod linalg;
pub mod sweep;
pub mod textfmt;

pub use codes::{Criterion, Distance, LinearCode, MonomialMap};
pub use error::{Error, Result};
pub use gf::{Field, FieldElem};
pub use linalg::{Matrix, Subspace, Vector};
