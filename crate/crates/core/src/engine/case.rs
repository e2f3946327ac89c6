use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::curralg::CurrentSum;
use crate::cycles::{cycle_equal, Cycle, MonomialIdeal};
use crate::error::Error;
use crate::scalar::Field;
use crate::superhom::{FreeComplex, Matrix};
use crate::symalg::Poly;

/// Which pipeline a case runs through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Auto,
    Ci,
    Cm,
    Universal,
    Nonpure,
    Demo,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Auto => "auto",
            Mode::Ci => "ci",
            Mode::Cm => "cm",
            Mode::Universal => "universal",
            Mode::Nonpure => "nonpure",
            Mode::Demo => "demo",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "auto" => Mode::Auto,
            "ci" => Mode::Ci,
            "cm" => Mode::Cm,
            "universal" => Mode::Universal,
            "nonpure" => Mode::Nonpure,
            "demo" => Mode::Demo,
            other => {
                return Err(Error::Parse {
                    column: 0,
                    message: format!("unknown mode '{other}'"),
                })
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CaseOptions {
    pub lift_bound: Option<u32>,
    pub seed: u64,
}

/// Injected `R^E_k` keyed by level.
pub type Currents<F> = BTreeMap<usize, Matrix<CurrentSum<F>>>;

/// A parsed verification case.
#[derive(Clone, Debug, PartialEq)]
pub struct Case<F: Field> {
    pub variables: Vec<String>,
    pub ideal: MonomialIdeal,
    pub mode: Mode,
    pub resolution: Option<FreeComplex<F>>,
    pub ci_tuple: Option<Vec<Poly<F>>>,
    /// Injected `R^E_k`, each a `rank E_k × rank E_0` matrix.
    pub currents: Option<Currents<F>>,
    pub options: CaseOptions,
}

impl<F: Field> Case<F> {
    pub fn new(ideal: MonomialIdeal, mode: Mode) -> Self {
        Case {
            variables: ideal.variables().to_vec(),
            ideal,
            mode,
            resolution: None,
            ci_tuple: None,
            currents: None,
            options: CaseOptions::default(),
        }
    }
}

/// Outcome of a pipeline.
#[derive(Clone, Debug)]
pub struct Report<F: Field> {
    /// Pipeline that actually ran.
    pub pipeline: String,
    pub variables: Vec<String>,
    pub computed: Cycle<F>,
    pub oracle: Cycle<F>,
    pub remainder: CurrentSum<F>,
    /// Named side conditions, all of which must hold for a match.
    pub checks: Vec<(String, bool)>,
    /// Rendered intermediate objects, in order of computation.
    pub intermediates: Vec<(String, String)>,
    /// Justifications for terms dropped without being computed.
    pub notes: Vec<String>,
    pub timings: Vec<(String, Duration)>,
}

impl<F: Field> Report<F> {
    pub fn new(pipeline: &str, variables: &[String]) -> Self {
        Report {
            pipeline: pipeline.to_string(),
            variables: variables.to_vec(),
            computed: Cycle::zero(),
            oracle: Cycle::zero(),
            remainder: CurrentSum::zero(),
            checks: vec![],
            intermediates: vec![],
            notes: vec![],
            timings: vec![],
        }
    }

    pub fn matched(&self) -> bool {
        cycle_equal(&self.computed, &self.oracle) && self.remainder.is_zero() && self.checks.iter().all(|c| c.1)
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn intermediate(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.intermediates.push((name.into(), value.into()));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// `computed − oracle`.
    pub fn difference(&self) -> Cycle<F> {
        self.computed.sub(&self.oracle)
    }

    /// Folds another report into this one (cycles, remainders and checks add up).
    pub fn absorb(&mut self, other: Report<F>, prefix: &str) {
        self.computed = self.computed.add(&other.computed);
        self.oracle = self.oracle.add(&other.oracle);
        self.remainder = self.remainder.add(&other.remainder);
        let tag = |s: String| if prefix.is_empty() { s } else { format!("{prefix}: {s}") };
        self.checks.extend(other.checks.into_iter().map(|(n, b)| (tag(n), b)));
        self.intermediates
            .extend(other.intermediates.into_iter().map(|(n, v)| (tag(n), v)));
        self.notes.extend(other.notes.into_iter().map(tag));
        self.timings.extend(other.timings.into_iter().map(|(n, d)| (tag(n), d)));
    }
}
