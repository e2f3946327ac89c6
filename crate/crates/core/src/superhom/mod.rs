//! Graded free modules, super-sign matrix algebra, complexes, resolutions
//! and chain maps.

mod builders;
mod complex;
mod connection;
mod lift;
mod matrix;

pub use builders::{
    koszul_blocks, koszul_complex, staircase_gens, staircase_resolution, subsets, universal_resolution,
    UniversalResolution,
};
pub use complex::{verify_complex, ChainMap, FreeComplex, GradedFreeModule};
pub use connection::{dphi, dphi_product, shift_identity};
pub use lift::lift_chain_map;
pub use matrix::{super_mul, super_trace, Entry, Matrix, SuperMatrix, Wedge};

#[cfg(test)]
mod tests;
