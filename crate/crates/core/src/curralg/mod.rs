//! Formal currents built from smooth forms, principal values and residue
//! factors, with the operations needed to reach fundamental cycles.

mod ch;
mod ops;
mod rewrite;
mod term;

pub use ch::ch_product;
pub use ops::{
    c_sign, dbar, dbar_with, dimension_principle_reduce, normalize_to_cycle, restrict, restrict_union, singular_support,
};
pub use rewrite::{Factor, Rule, Schedule};
pub use term::{current_mul, current_mul_with, Atom, CurrentSum, CurrentTerm, Opaque};
