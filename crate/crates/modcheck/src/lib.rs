//! Exact law checking for coalgebra, bialgebra and differential modalities
//! on truncated free modules over commutative rigs.

pub mod constructions;
pub mod lawcheck;
pub mod linalg;
pub mod modality;
pub mod models;
pub mod scalars;
