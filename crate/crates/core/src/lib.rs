//! Alternating bilinear maps over prime fields and the Schur multiplier
//! bounds they give for finite p-groups of nilpotency class two.

pub mod altmap;
pub mod bounds;
pub mod error;
pub mod fieldmat;
pub mod fixtures;
pub mod greedy;
pub mod grouplab;
pub mod psirank;
pub mod trigraph;

pub use altmap::{parse_altmap, serialize_altmap, AltMap, BasisChange, Pair};
pub use error::{Error, Result};
pub use fieldmat::FpMatrix;
