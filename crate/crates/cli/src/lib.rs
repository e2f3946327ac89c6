//! Case files, batch execution and report rendering for the `rescycle` binary.

mod case_file;
mod error;
mod render;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rescycle::cycles::{fundamental_cycle, minimal_primes, multiplicity_along, VarSet};
use rescycle::engine::run_case;
use rescycle::{QCycle, QReport};

pub use case_file::{build_case, parse_case, parse_case_file, CaseFile, OptionsFile, Overrides};
pub use error::CliError;
pub use render::{render_cycle_json, render_cycle_text, render_intermediates, render_json, render_text};

/// One case run, with the (possibly overridden) file it came from.
#[derive(Debug)]
pub struct CaseOutcome {
    pub label: String,
    pub file: Option<CaseFile>,
    pub result: Result<QReport, CliError>,
}

impl CaseOutcome {
    /// `0` pass, `1` mismatch, `2` unsupported, `3` unreadable.
    pub fn exit_code(&self) -> u8 {
        match &self.result {
            Ok(r) if r.matched() => 0,
            Ok(_) => 1,
            Err(e) => e.exit_code(),
        }
    }
}

/// Oracle-only summary: the fundamental cycle and its components.
#[derive(Debug)]
pub struct CycleSummary {
    pub label: String,
    pub file: Option<CaseFile>,
    #[allow(clippy::type_complexity)]
    pub result: Result<(Vec<String>, QCycle, Vec<(VarSet, u64)>), CliError>,
}

impl CycleSummary {
    pub fn exit_code(&self) -> u8 {
        self.result.as_ref().map_or_else(|e| e.exit_code(), |_| 0)
    }
}

fn load(path: &Path, overrides: &Overrides) -> (String, Result<(CaseFile, String), CliError>) {
    let label = path.display().to_string();
    let res = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io {
            path: label.clone(),
            source,
        })
        .and_then(|text| {
            let mut file = parse_case_file(&label, &text)?;
            file.apply(overrides);
            Ok((file, text))
        });
    (label, res)
}

/// Runs a case given as a file document.
pub fn run_file(label: &str, text: &str, file: CaseFile) -> CaseOutcome {
    let result = build_case(label, text, &file).and_then(|case| {
        run_case(&case).map_err(|source| CliError::Engine {
            path: label.to_string(),
            source,
        })
    });
    CaseOutcome {
        label: label.to_string(),
        file: Some(file),
        result,
    }
}

pub fn verify_path(path: &Path, overrides: &Overrides) -> CaseOutcome {
    match load(path, overrides) {
        (label, Ok((file, text))) => run_file(&label, &text, file),
        (label, Err(e)) => CaseOutcome {
            label,
            file: None,
            result: Err(e),
        },
    }
}

/// Runs every case in parallel; outcomes come back in input order.
pub fn verify_all(paths: &[PathBuf], overrides: &Overrides) -> Vec<CaseOutcome> {
    paths.par_iter().map(|p| verify_path(p, overrides)).collect()
}

pub fn cycle_path(path: &Path) -> CycleSummary {
    let (label, loaded) = load(path, &Overrides::default());
    let mut file = None;
    let result = loaded.and_then(|(f, text)| {
        let case = build_case(&label, &text, &f)?;
        file = Some(f);
        let engine = |source| CliError::Engine {
            path: label.clone(),
            source,
        };
        let cycle = fundamental_cycle(&case.ideal).map_err(engine)?;
        let mut parts = Vec::new();
        for p in minimal_primes(&case.ideal).map_err(engine)? {
            parts.push((p, multiplicity_along(&case.ideal, p).map_err(engine)?));
        }
        Ok((case.variables, cycle, parts))
    });
    CycleSummary { label, file, result }
}

/// Built-in examples for the `demo` subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Demo {
    Nonpure,
    Embedded { k: u32, l: u32, m: u32 },
}

/// Parses `k,l,m`.
pub fn parse_params(s: &str) -> Result<(u32, u32, u32), CliError> {
    let bad = |column: usize, message: String| CliError::Schema {
        path: "--params".into(),
        line: 1,
        column,
        message,
    };
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(bad(1, format!("expected k,l,m but got '{s}'")));
    }
    let mut out = [0u32; 3];
    let mut column = 1;
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .trim()
            .parse()
            .map_err(|_| bad(column, format!("'{p}' is not a non-negative integer")))?;
        column += p.chars().count() + 1;
    }
    Ok((out[0], out[1], out[2]))
}

pub fn demo_file(demo: Demo) -> Result<(String, CaseFile), CliError> {
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    Ok(match demo {
        Demo::Nonpure => (
            "demo ex-nonpure".into(),
            CaseFile {
                variables: names(&["x", "y", "z"]),
                ideal: names(&["x*z", "y*z"]),
                mode: Some("nonpure".into()),
                ..CaseFile::default()
            },
        ),
        Demo::Embedded { k, l, m } => {
            let label = format!("demo ex-embedded (k,ℓ,m) = ({k},{l},{m})");
            if !(1 <= m && m < k && l >= 1) {
                return Err(CliError::Engine {
                    path: label,
                    source: rescycle::Error::Precondition(format!("need 1 ≤ m < k and ℓ ≥ 1, got k={k}, ℓ={l}, m={m}")),
                });
            }
            (
                label,
                CaseFile {
                    variables: names(&["x", "y"]),
                    ideal: vec![format!("y^{k}"), format!("x^{l}*y^{m}")],
                    mode: Some("demo".into()),
                    ..CaseFile::default()
                },
            )
        }
    })
}

pub fn run_demo(demo: Demo, overrides: &Overrides) -> CaseOutcome {
    match demo_file(demo) {
        Ok((label, mut file)) => {
            file.apply(&Overrides {
                mode: None,
                ..overrides.clone()
            });
            run_file(&label, "", file)
        }
        Err(e) => CaseOutcome {
            label: "demo".into(),
            file: None,
            result: Err(e),
        },
    }
}

/// Writes the intermediates of a finished case to `dir/<stem>.txt`.
pub fn write_intermediates(dir: &Path, outcome: &CaseOutcome) -> Result<Option<PathBuf>, CliError> {
    let Ok(report) = &outcome.result else { return Ok(None) };
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let stem: String = Path::new(&outcome.label)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| outcome.label.clone())
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    let path = dir.join(format!("{stem}.intermediates.txt"));
    std::fs::write(&path, render_intermediates(report)).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Some(path))
}

/// Worst exit code over a batch.
pub fn batch_exit_code(codes: impl IntoIterator<Item = u8>) -> u8 {
    codes.into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params() {
        assert_eq!(parse_params("3,2,1").unwrap(), (3, 2, 1));
        assert_eq!(parse_params(" 4, 1 ,2").unwrap(), (4, 1, 2));
        match parse_params("3,x,1") {
            Err(CliError::Schema { column, .. }) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_params("3,2").is_err());
    }

    #[test]
    fn demo_cases() {
        let o = run_demo(Demo::Nonpure, &Overrides::default());
        assert_eq!(o.exit_code(), 0);
        let o = run_demo(Demo::Embedded { k: 4, l: 3, m: 2 }, &Overrides::default());
        assert_eq!(o.exit_code(), 0);
        assert_eq!(
            run_demo(Demo::Embedded { k: 2, l: 0, m: 1 }, &Overrides::default()).exit_code(),
            2
        );
    }

    #[test]
    fn worst_code_wins() {
        assert_eq!(batch_exit_code([0, 1, 3, 2]), 3);
        assert_eq!(batch_exit_code([]), 0);
    }
}
