use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use rescycle::cycles::MonomialIdeal;
use rescycle::engine::{Case, CaseOptions, Mode};
use rescycle::expr::{parse_current, parse_poly};
use rescycle::superhom::{FreeComplex, Matrix};
use rescycle::symalg::MAX_VARS;
use rescycle::{QCase, Q};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// On-disk form of a case. Output documents carry an extra `result` key,
/// which is accepted and ignored on input.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub variables: Vec<String>,
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// Differentials `φ_1, …, φ_N`, each as rows of polynomial strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci_tuple: Option<Vec<String>>,
    /// Injected `R^E_k`, keyed by `k`, each as rows of current expressions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub currents: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "OptionsFile::is_empty")]
    pub options: OptionsFile,
    #[serde(default, skip_serializing)]
    pub result: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emit_intermediates: Option<String>,
}

impl OptionsFile {
    pub fn is_empty(&self) -> bool {
        self == &OptionsFile::default()
    }
}

/// Command-line settings that take precedence over the case file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub mode: Option<Mode>,
    pub lift_bound: Option<u32>,
    pub seed: Option<u64>,
    pub emit_intermediates: Option<String>,
}

impl CaseFile {
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(m) = o.mode {
            self.mode = Some(m.to_string());
        }
        if o.lift_bound.is_some() {
            self.options.lift_bound = o.lift_bound;
        }
        if o.seed.is_some() {
            self.options.seed = o.seed;
        }
        if o.emit_intermediates.is_some() {
            self.options.emit_intermediates.clone_from(&o.emit_intermediates);
        }
    }
}

/// Source text plus the label used in diagnostics.
struct Ctx<'a> {
    path: &'a str,
    text: &'a str,
}

impl Ctx<'_> {
    /// 1-based line and column of the first occurrence of `needle`.
    fn locate(&self, needle: &str) -> Option<(usize, usize)> {
        let at = self.text.find(needle)?;
        let before = &self.text[..at];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        Some((line, column))
    }

    fn schema(&self, near: &str, message: impl Into<String>) -> CliError {
        let (line, column) = self.locate(near).unwrap_or((1, 1));
        CliError::Schema {
            path: self.path.to_string(),
            line,
            column,
            message: message.into(),
        }
    }

    fn engine(&self, source: rescycle::Error) -> CliError {
        CliError::Engine {
            path: self.path.to_string(),
            source,
        }
    }

    fn expr<T>(&self, field: String, src: &str, f: impl FnOnce(&str) -> rescycle::Result<T>) -> Result<T, CliError> {
        f(src).map_err(|e| match e {
            rescycle::Error::Parse { column, message } => {
                let quoted = serde_json::to_string(src).unwrap_or_default();
                let (line, col) = self
                    .locate(&quoted)
                    .map(|(l, c)| (l, c + column))
                    .unwrap_or((0, column));
                CliError::Expr {
                    path: self.path.to_string(),
                    field,
                    line,
                    column: col,
                    message,
                }
            }
            other => self.engine(other),
        })
    }
}

/// Reads and validates a case file.
pub fn parse_case(path: &Path) -> Result<(CaseFile, QCase), CliError> {
    let label = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: label.clone(),
        source,
    })?;
    let file = parse_case_file(&label, &text)?;
    let case = build_case(&label, &text, &file)?;
    Ok((file, case))
}

pub fn parse_case_file(label: &str, text: &str) -> Result<CaseFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Schema {
        path: label.to_string(),
        line: e.line(),
        column: e.column(),
        message: strip_location(&e.to_string()),
    })
}

fn strip_location(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Turns a schema-valid file into an engine case. `text` is only used for
/// diagnostics and may be empty.
pub fn build_case(label: &str, text: &str, file: &CaseFile) -> Result<QCase, CliError> {
    let ctx = Ctx { path: label, text };
    let vars = &file.variables;
    if vars.is_empty() {
        return Err(ctx.schema("\"variables\"", "variables must not be empty"));
    }
    if vars.len() > MAX_VARS {
        return Err(ctx.schema("\"variables\"", format!("at most {MAX_VARS} variables are supported")));
    }
    let mut seen = HashSet::new();
    for v in vars {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !matches!(v.as_str(), "bar" | "d" | "dbar" | "pv" | "res");
        if !ok {
            return Err(ctx.schema(&format!("\"{v}\""), format!("invalid variable name '{v}'")));
        }
        if !seen.insert(v) {
            return Err(ctx.schema(&format!("\"{v}\""), format!("duplicate variable '{v}'")));
        }
    }
    if file.ideal.is_empty() {
        return Err(ctx.schema("\"ideal\"", "ideal must have at least one generator"));
    }
    let mode = match &file.mode {
        Some(m) => m
            .parse::<Mode>()
            .map_err(|_| ctx.schema("\"mode\"", format!("unknown mode '{m}'")))?,
        None => Mode::Auto,
    };
    let gens = file
        .ideal
        .iter()
        .enumerate()
        .map(|(i, s)| ctx.expr(format!("ideal[{i}]"), s, |s| parse_poly::<Q>(s, vars)))
        .collect::<Result<Vec<_>, _>>()?;
    let ideal = MonomialIdeal::from_polys(vars.clone(), &gens).map_err(|e| ctx.engine(e))?;

    let resolution = match &file.resolution {
        None => None,
        Some(levels) => {
            let mut diffs = Vec::new();
            for (k, rows) in levels.iter().enumerate() {
                let m = poly_matrix(&ctx, &format!("resolution[{k}]"), rows, vars)?;
                diffs.push(m);
            }
            Some(FreeComplex::from_diffs(diffs).map_err(|e| shape_or_engine(&ctx, "\"resolution\"", e))?)
        }
    };
    let ci_tuple = match &file.ci_tuple {
        None => None,
        Some(f) => Some(
            f.iter()
                .enumerate()
                .map(|(i, s)| ctx.expr(format!("ci_tuple[{i}]"), s, |s| parse_poly::<Q>(s, vars)))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let currents = match &file.currents {
        None => None,
        Some(map) => {
            let mut out = BTreeMap::new();
            for (key, rows) in map {
                let k: usize = key.parse().ok().filter(|&k| k >= 1).ok_or_else(|| {
                    ctx.schema(
                        &format!("\"{key}\""),
                        format!("currents key '{key}' must be a level ≥ 1"),
                    )
                })?;
                let cells = rows
                    .iter()
                    .enumerate()
                    .map(|(r, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(c, s)| {
                                ctx.expr(format!("currents.{key}[{r}][{c}]"), s, |s| parse_current::<Q>(s, vars))
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let m = Matrix::from_rows(cells).map_err(|e| shape_or_engine(&ctx, "\"currents\"", e))?;
                out.insert(k, m);
            }
            Some(out)
        }
    };
    let options = CaseOptions {
        lift_bound: file.options.lift_bound,
        seed: file.options.seed.unwrap_or(0),
    };
    Ok(Case {
        variables: vars.clone(),
        ideal,
        mode,
        resolution,
        ci_tuple,
        currents,
        options,
    })
}

fn poly_matrix(
    ctx: &Ctx,
    field: &str,
    rows: &[Vec<String>],
    vars: &[String],
) -> Result<Matrix<rescycle::QPoly>, CliError> {
    let cells = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, s)| ctx.expr(format!("{field}[{r}][{c}]"), s, |s| parse_poly::<Q>(s, vars)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(cells).map_err(|e| shape_or_engine(ctx, "\"resolution\"", e))
}

fn shape_or_engine(ctx: &Ctx, near: &str, e: rescycle::Error) -> CliError {
    match e {
        rescycle::Error::Shape(msg) => ctx.schema(near, msg),
        other => ctx.engine(other),
    }
}
