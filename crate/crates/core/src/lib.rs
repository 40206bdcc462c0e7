//! Constant-rank subspaces of matrices over small finite fields.

pub mod analysis;
pub mod cli;
pub mod construct;
pub mod error;
pub mod field;
pub mod gf2;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod search;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use matrix::{member_of_span, MatGF};
pub use subspace::{RankProfile, SubspaceBasis};
