//! End-to-end verification pipelines.

mod case;
mod pipelines;

pub use case::{Case, CaseOptions, Currents, Mode, Report};
pub use pipelines::{
    builtin_nonpure, demo_embedded, embedded_params, ideal_pure_powers, pure_powers, run_case, verify_ci, verify_cm,
    verify_nonpure, verify_universal, verify_universal_all,
};
