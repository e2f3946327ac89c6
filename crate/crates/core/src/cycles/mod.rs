//! Combinatorial cycle oracle for monomial ideals.

mod cycle;
mod ideal;
mod varset;

pub use cycle::{cycle_equal, Cycle};
pub use ideal::{fundamental_cycle, length_along, minimal_primes, multiplicity_along, MonomialIdeal};
pub use varset::{union_codim, VarSet};
