//! Rank-k numerical ranges of complex square matrices.

pub mod boundary_dual;
pub mod cli_io;
pub mod error;
pub mod gallery;
pub mod kippenhahn;
pub mod linalg_pencil;
pub mod membership;
pub mod poly_core;
pub mod range_solver;

pub use error::{Error, Result};
