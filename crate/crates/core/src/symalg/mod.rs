//! Exact polynomials, rational functions and differential forms in
//! holomorphic coordinates and their formal conjugates.

mod form;
mod gcd;
mod monomial;
mod poly;
mod ratfun;

pub use form::{exterior_d, wedge, Form, FormKey, MAX_VARS};
pub(crate) use form::{join_signed, render_coeff_times};
pub use gcd::{content, gcd};
pub use monomial::{Monomial, Var};
pub use poly::{poly_mul, Poly};
pub use ratfun::{ratfun_normalize, RatFun};
