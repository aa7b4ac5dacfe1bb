//! Job specification files: flat TOML with one key per parameter.
//!
//! ```toml
//! p = 2
//! m = 3
//! ext_poly = [1, 1, 0, 1]
//! n = 7
//! k = 5
//! delta = 0
//! ```
//!
//! The explicit form replaces `n`/`delta` with `locators` (and optionally
//! `multipliers`), each entry either `"a^i"` or a coefficient list.

use std::str::FromStr;
use std::sync::Arc;

use alternant::{ExtElement, ExtensionCtx, FieldSpec, GrsCode, SmallField};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Construct,
    Extract,
    Nested,
    Verify,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Construct => "construct",
            Command::Extract => "extract",
            Command::Nested => "nested",
            Command::Verify => "verify",
            Command::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Records,
}

/// Inclusive range of δ values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaRange {
    pub start: u64,
    pub end: u64,
}

impl FromStr for DeltaRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("delta range `{s}` must look like a..b"))?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let start = a
            .trim()
            .parse()
            .map_err(|_| format!("delta range start `{a}` is not a non-negative integer"))?;
        let end = b
            .trim()
            .parse()
            .map_err(|_| format!("delta range end `{b}` is not a non-negative integer"))?;
        if start > end {
            return Err(format!("delta range {start}..{end} is empty"));
        }
        Ok(DeltaRange { start, end })
    }
}

/// A locator or multiplier entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementSpec {
    /// Power of the canonical primitive element.
    Power(u64),
    /// Coefficients over the base field, constant term first.
    Coeffs(Vec<u32>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawElement {
    Text(String),
    Coeffs(Vec<u32>),
}

impl TryFrom<RawElement> for ElementSpec {
    type Error = String;

    fn try_from(raw: RawElement) -> Result<Self, Self::Error> {
        match raw {
            RawElement::Coeffs(c) => Ok(ElementSpec::Coeffs(c)),
            RawElement::Text(s) => {
                let exp = s
                    .trim()
                    .strip_prefix("a^")
                    .ok_or_else(|| format!("element `{s}` must be `a^i` or a coefficient list"))?;
                exp.parse()
                    .map(ElementSpec::Power)
                    .map_err(|_| format!("exponent in `{s}` is not a non-negative integer"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeForm {
    Cyclic {
        n: usize,
        delta: i64,
    },
    Explicit {
        locators: Vec<ElementSpec>,
        multipliers: Option<Vec<ElementSpec>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub field: FieldSpec,
    pub ext_poly: Vec<u32>,
    pub code: CodeForm,
    /// Absent only for `nested`, which always uses k = n.
    pub k: Option<usize>,
    pub command: Option<Command>,
    pub delta_range: Option<DeltaRange>,
    pub format: Option<Format>,
    pub limit: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    p: u32,
    e: Option<u32>,
    base_poly: Option<Vec<u32>>,
    m: usize,
    ext_poly: Vec<u32>,
    n: Option<usize>,
    k: Option<usize>,
    delta: Option<i64>,
    locators: Option<Vec<RawElement>>,
    multipliers: Option<Vec<RawElement>>,
    command: Option<Command>,
    delta_range: Option<String>,
    format: Option<Format>,
    limit: Option<u64>,
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{field}: {msg}"))
}

fn elements(field: &str, raw: Vec<RawElement>) -> Result<Vec<ElementSpec>, CliError> {
    raw.into_iter()
        .enumerate()
        .map(|(i, r)| ElementSpec::try_from(r).map_err(|e| invalid(&format!("{field}[{i}]"), e)))
        .collect()
}

/// Parses and validates a job specification. Field-level checks happen here;
/// algebraic checks (irreducibility, divisibility, distinctness) happen in
/// [`JobSpec::build_code`].
pub fn parse_jobspec(text: &str) -> Result<JobSpec, CliError> {
    let raw: RawSpec =
        toml::from_str(text).map_err(|e| CliError::Validation(format!("spec: {e}")))?;

    let e = raw.e.unwrap_or(1);
    if e == 0 {
        return Err(invalid("e", "must be at least 1"));
    }
    let base_poly = match (e, raw.base_poly) {
        (1, None) => vec![0, 1],
        (1, Some(poly)) if poly.len() != 2 => {
            return Err(invalid("base_poly", "must have degree 1 when e = 1"))
        }
        (_, Some(poly)) => poly,
        (_, None) => return Err(invalid("base_poly", format!("required when e = {e}"))),
    };
    if raw.m == 0 {
        return Err(invalid("m", "must be at least 1"));
    }
    if raw.ext_poly.len() != raw.m + 1 {
        return Err(invalid(
            "ext_poly",
            format!(
                "has {} coefficients but degree m = {} needs {}",
                raw.ext_poly.len(),
                raw.m,
                raw.m + 1
            ),
        ));
    }

    let code = match (raw.n, raw.delta, raw.locators, raw.multipliers) {
        (Some(n), delta, None, None) => CodeForm::Cyclic {
            n,
            delta: delta.unwrap_or(0),
        },
        (None, None, Some(locators), multipliers) => {
            let locators = elements("locators", locators)?;
            let multipliers = multipliers
                .map(|m| elements("multipliers", m))
                .transpose()?;
            if let Some(b) = &multipliers {
                if b.len() != locators.len() {
                    return Err(invalid(
                        "multipliers",
                        format!("{} entries for {} locators", b.len(), locators.len()),
                    ));
                }
            }
            CodeForm::Explicit {
                locators,
                multipliers,
            }
        }
        (None, None, None, Some(_)) => {
            return Err(invalid("multipliers", "given without locators"))
        }
        (None, None, None, None) => {
            return Err(invalid("code", "give either n (cyclic form) or locators"))
        }
        _ => {
            return Err(invalid(
                "code",
                "cyclic keys (n, delta) and explicit keys (locators, multipliers) are mutually exclusive",
            ))
        }
    };

    let delta_range = raw
        .delta_range
        .map(|s| {
            s.parse::<DeltaRange>()
                .map_err(|e| invalid("delta_range", e))
        })
        .transpose()?;
    if delta_range.is_some() && !matches!(code, CodeForm::Cyclic { .. }) {
        return Err(invalid("delta_range", "only valid with the cyclic form"));
    }
    if raw.limit == Some(0) {
        return Err(invalid("limit", "must be positive"));
    }

    Ok(JobSpec {
        field: FieldSpec::new(raw.p, e, base_poly),
        ext_poly: raw.ext_poly,
        code,
        k: raw.k,
        command: raw.command,
        delta_range,
        format: raw.format,
        limit: raw.limit,
    })
}

impl JobSpec {
    pub fn is_cyclic(&self) -> bool {
        matches!(self.code, CodeForm::Cyclic { .. })
    }

    pub fn context(&self) -> Result<Arc<ExtensionCtx>, CliError> {
        let base = SmallField::new(&self.field).map_err(|e| invalid("base_poly", e))?;
        ExtensionCtx::from_coeffs(Arc::new(base), &self.ext_poly)
            .map(Arc::new)
            .map_err(|e| invalid("ext_poly", e))
    }

    fn element(
        ctx: &ExtensionCtx,
        field: &str,
        i: usize,
        spec: &ElementSpec,
    ) -> Result<ExtElement, CliError> {
        let name = format!("{field}[{i}]");
        match spec {
            ElementSpec::Power(e) => {
                let group = ctx.order() - 1;
                Ok(ctx.pow(ctx.primitive_element(), e % group))
            }
            ElementSpec::Coeffs(c) => {
                // trailing zero coefficients may be omitted
                let mut padded = c.clone();
                if padded.len() < ctx.degree() {
                    padded.resize(ctx.degree(), 0);
                }
                ctx.element_from_u32(&padded).map_err(|e| invalid(&name, e))
            }
        }
    }

    /// Builds the code with dimension `k`, or the job file's own `k`.
    pub fn build_code(
        &self,
        ctx: &Arc<ExtensionCtx>,
        k: Option<usize>,
        delta: Option<i64>,
    ) -> Result<GrsCode, CliError> {
        let k = k
            .or(self.k)
            .ok_or_else(|| invalid("k", "required for this command"))?;
        match &self.code {
            CodeForm::Cyclic { n, delta: d } => {
                GrsCode::cyclic(ctx.clone(), *n, k, delta.unwrap_or(*d))
                    .map_err(|e| invalid("n", e))
            }
            CodeForm::Explicit {
                locators,
                multipliers,
            } => {
                let a = locators
                    .iter()
                    .enumerate()
                    .map(|(i, s)| Self::element(ctx, "locators", i, s))
                    .collect::<Result<Vec<_>, _>>()?;
                let b = match multipliers {
                    Some(list) => list
                        .iter()
                        .enumerate()
                        .map(|(i, s)| Self::element(ctx, "multipliers", i, s))
                        .collect::<Result<Vec<_>, _>>()?,
                    None => vec![ctx.one(); a.len()],
                };
                GrsCode::new(ctx.clone(), a, b, k).map_err(|e| invalid("locators", e))
            }
        }
    }

    /// Length of the code described by the job file.
    pub fn length(&self) -> usize {
        match &self.code {
            CodeForm::Cyclic { n, .. } => *n,
            CodeForm::Explicit { locators, .. } => locators.len(),
        }
    }
}
