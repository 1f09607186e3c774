//! Graded free modules, exact sparse vectors and lazily evaluated linear maps.

mod label;
mod map;
mod module;
mod vector;

pub use label::BasisLabel;
pub use map::{compare_maps, compare_maps_at, maps_equal, Comparison, ImageFn, LinalgError, LinearMap, Witness};
pub use module::{multiset_count, FreeModule, ModuleKind};
pub use vector::Vector;
