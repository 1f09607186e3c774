//! Concrete modalities on module categories.

pub mod diff;
pub mod rb;
pub mod registry;
pub mod sym;
