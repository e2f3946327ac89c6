pub mod curralg;
pub mod cycles;
pub mod engine;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod scalar;
pub mod superhom;
pub mod symalg;

pub use error::{Error, Result};

/// Default exact coefficient field.
pub type Q = num_rational::BigRational;
pub type QPoly = symalg::Poly<Q>;
pub type QRatFun = symalg::RatFun<Q>;
pub type QForm = symalg::Form<Q>;
pub type QCurrent = curralg::CurrentSum<Q>;
pub type QCycle = cycles::Cycle<Q>;
pub type QComplex = superhom::FreeComplex<Q>;
pub type QCase = engine::Case<Q>;
pub type QReport = engine::Report<Q>;
