//! Strong s-blocking sets in PG(k-1, q): explicit expander/hypergraph constructions,
//! exhaustive and sampled verification, tree-like rank certificates, and the
//! correspondence with s-minimal codes and affine blocking sets.

pub mod config;
pub mod construct;
pub mod error;
pub mod expander;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod lincomb;
pub mod mincode;
pub mod supply;
pub mod verify;

pub use config::Budgets;
pub use construct::{BallMode, BlockingSet, Provenance};
pub use error::{Budget, Error, Result};
pub use expander::{Graph, SpectralReport};
pub use gf::{FieldSpec, Scalar};
pub use linalg::{Matrix, SubspaceBasis};
pub use lincomb::{Certificate, EdgeWitness, EliminationOrder, Hypergraph};
pub use mincode::{LinearCode, MinimalityReport};
pub use supply::{GeneralPositionReport, PointSupply};
pub use verify::{VerificationReport, VerifyOptions};
