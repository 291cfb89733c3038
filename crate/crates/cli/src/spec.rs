//! Problem specification files.
//!
//! A spec is a small TOML document. Blade algebras give `factors` and
//! `generators`; abstract algebras give `basis` and `products` instead.
//!
//! ```toml
//! factors = 3
//! generators = ["1 [g3 g3 1]", "1 [1 g3 g3]"]
//! coeffs = ["k1", "k2", "k3", "k4"]
//! state = "1 [g3 g3 g3] + 1 [g1 g1 g1]"
//!
//! [options]
//! tolerance = 1e-9
//! cap = 4096
//! max_factors = 4
//! row_order = "lex"
//! ```

use std::ops::Range;
use std::path::Path;

use clifford_dfs::dfs::Coefficient;
use clifford_dfs::error::Error as CoreError;
use clifford_dfs::multivector::{Multivector, MAX_ALGEBRA_FACTORS};
use clifford_dfs::parse::parse_element;
use clifford_dfs::reptheory::{RowOrder, MAX_MATRIX_FACTORS};
use clifford_dfs::scalar::GaussianRational;
use clifford_dfs::structure::{close_generators, SubalgebraTable, DEFAULT_CLOSURE_CAP};
use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

/// Fixtures compiled into the binary, by name.
pub const BUILTINS: &[(&str, &str)] = &[
    ("gamma1", include_str!("../fixtures/gamma1.toml")),
    ("gamma1-weighted", include_str!("../fixtures/gamma1-weighted.toml")),
    ("gamma2", include_str!("../fixtures/gamma2.toml")),
    ("gamma3", include_str!("../fixtures/gamma3.toml")),
    ("gamma3-unit", include_str!("../fixtures/gamma3-unit.toml")),
    ("dual-numbers", include_str!("../fixtures/dual-numbers.toml")),
    ("cl3", include_str!("../fixtures/cl3.toml")),
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    factors: Option<Spanned<usize>>,
    #[serde(default)]
    generators: Vec<Spanned<String>>,
    coeffs: Option<Spanned<Vec<Spanned<String>>>>,
    state: Option<Spanned<String>>,
    basis: Option<Spanned<Vec<String>>>,
    products: Option<Vec<Vec<Spanned<String>>>>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    tolerance: Option<f64>,
    cap: Option<usize>,
    max_factors: Option<usize>,
    row_order: Option<Spanned<String>>,
}

/// Where the algebra comes from.
#[derive(Clone, Debug)]
pub enum AlgebraSource {
    Blades { factors: usize, generators: Vec<Multivector> },
    Abstract { labels: Vec<String>, products: Vec<Vec<Option<(GaussianRational, usize)>>> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecOptions {
    pub tolerance: Option<f64>,
    pub cap: usize,
    pub max_factors: usize,
    pub row_order: RowOrder,
}

/// A validated problem specification.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub name: String,
    pub algebra: AlgebraSource,
    pub coeffs: Option<Vec<Coefficient>>,
    pub state: Option<Multivector>,
    pub options: SpecOptions,
    source: String,
    coeffs_span: Option<Range<usize>>,
    generator_spans: Vec<Range<usize>>,
}

impl ProblemSpec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&path.display().to_string(), &text)
    }

    pub fn builtin(name: &str) -> Result<Self, CliError> {
        let (_, text) = BUILTINS.iter().find(|(n, _)| *n == name).ok_or_else(|| {
            let names: Vec<_> = BUILTINS.iter().map(|(n, _)| *n).collect();
            CliError::Parse(format!("unknown builtin `{name}` (available: {})", names.join(", ")))
        })?;
        Self::parse(name, text)
    }

    pub fn parse(name: &str, text: &str) -> Result<Self, CliError> {
        let here = |offset: usize, msg: String| CliError::Parse(locate(name, text, offset, &msg));
        let raw: RawSpec = toml::from_str(text).map_err(|e| {
            let offset = e.span().map_or(0, |s| s.start);
            here(offset, e.message().trim().to_string())
        })?;

        let algebra = match (&raw.basis, &raw.products) {
            (Some(basis), Some(products)) => {
                if !raw.generators.is_empty() {
                    return Err(here(basis.span().start, "`basis` cannot be combined with `generators`".into()));
                }
                abstract_algebra(basis, products, &here)?
            }
            (Some(basis), None) => return Err(here(basis.span().start, "`basis` requires `products`".into())),
            (None, Some(_)) => return Err(here(0, "`products` requires `basis`".into())),
            (None, None) => {
                let factors = raw.factors.as_ref().ok_or_else(|| here(0, "missing key `factors`".into()))?;
                let m = *factors.get_ref();
                if m == 0 || m > MAX_ALGEBRA_FACTORS {
                    return Err(here(
                        factors.span().start,
                        format!("`factors` must be between 1 and {MAX_ALGEBRA_FACTORS}"),
                    ));
                }
                let generators = raw
                    .generators
                    .iter()
                    .map(|g| element(g, m, &here))
                    .collect::<Result<_, _>>()?;
                AlgebraSource::Blades { factors: m, generators }
            }
        };

        let state = match &raw.state {
            None => None,
            Some(s) => match &algebra {
                AlgebraSource::Blades { factors, .. } => Some(element(s, *factors, &here)?),
                AlgebraSource::Abstract { .. } => {
                    return Err(here(s.span().start, "`state` needs a blade algebra".into()));
                }
            },
        };

        let coeffs = match &raw.coeffs {
            None => None,
            Some(list) => Some(
                list.get_ref()
                    .iter()
                    .map(|c| Coefficient::parse(c.get_ref()).map_err(|e| here(c.span().start + 1, e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };

        let opts = &raw.options;
        if let Some(t) = opts.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(here(0, "`tolerance` must be positive".into()));
            }
        }
        let row_order = match &opts.row_order {
            None => RowOrder::default(),
            Some(r) => parse_row_order(r.get_ref()).ok_or_else(|| {
                here(r.span().start, format!("unknown row_order `{}` (expected lex or gray)", r.get_ref()))
            })?,
        };
        let options = SpecOptions {
            tolerance: opts.tolerance,
            cap: opts.cap.unwrap_or(DEFAULT_CLOSURE_CAP),
            max_factors: opts.max_factors.unwrap_or(MAX_MATRIX_FACTORS),
            row_order,
        };

        Ok(Self {
            name: name.to_string(),
            algebra,
            coeffs,
            state,
            options,
            source: text.to_string(),
            coeffs_span: raw.coeffs.as_ref().map(|c| c.span()),
            generator_spans: raw.generators.iter().map(Spanned::span).collect(),
        })
    }

    /// Close the generators (or validate the abstract table).
    pub fn build_table(&self) -> Result<SubalgebraTable, CliError> {
        match &self.algebra {
            AlgebraSource::Blades { factors, generators } => {
                close_generators(generators, *factors, self.options.cap).map_err(|e| match e {
                    CoreError::NotUnitBlade { index } => CliError::Parse(locate(
                        &self.name,
                        &self.source,
                        self.generator_spans.get(index).map_or(0, |s| s.start + 1),
                        &format!("generator {} is not a single blade with a unit coefficient", index + 1),
                    )),
                    other => CliError::Math(other),
                })
            }
            AlgebraSource::Abstract { labels, products } => {
                SubalgebraTable::from_products(labels.clone(), products.clone()).map_err(|e| match e {
                    CoreError::InvalidTable(msg) => CliError::Parse(format!("{}: {msg}", self.name)),
                    other => CliError::Math(other),
                })
            }
        }
    }

    /// Coefficients, checked against the closed basis size.
    pub fn checked_coeffs(&self, table: &SubalgebraTable) -> Result<Option<Vec<Coefficient>>, CliError> {
        match &self.coeffs {
            Some(c) if c.len() != table.dim() => {
                let offset = self.coeffs_span.as_ref().map_or(0, |s| s.start);
                Err(CliError::Parse(locate(
                    &self.name,
                    &self.source,
                    offset,
                    &format!("{} coefficients for a basis of size {}", c.len(), table.dim()),
                )))
            }
            other => Ok(other.clone()),
        }
    }

    pub fn factors(&self) -> Option<usize> {
        match &self.algebra {
            AlgebraSource::Blades { factors, .. } => Some(*factors),
            AlgebraSource::Abstract { .. } => None,
        }
    }
}

pub fn parse_row_order(text: &str) -> Option<RowOrder> {
    match text {
        "lex" | "lexicographic" => Some(RowOrder::Lexicographic),
        "gray" => Some(RowOrder::Gray),
        _ => None,
    }
}

fn element(
    s: &Spanned<String>,
    m: usize,
    here: &impl Fn(usize, String) -> CliError,
) -> Result<Multivector, CliError> {
    // +1 skips the opening quote.
    let start = s.span().start + 1;
    let text = s.get_ref();
    if text.trim() == "0" {
        return Ok(Multivector::zero(m));
    }
    let x = parse_element(text).map_err(|e| match e {
        CoreError::Syntax { pos, msg } => here(start + pos, msg),
        other => here(start, other.to_string()),
    })?;
    if x.num_factors() != m {
        return Err(here(start, format!("element has {} factors, expected {m}", x.num_factors())));
    }
    Ok(x)
}

fn abstract_algebra(
    basis: &Spanned<Vec<String>>,
    products: &[Vec<Spanned<String>>],
    here: &impl Fn(usize, String) -> CliError,
) -> Result<AlgebraSource, CliError> {
    let labels = basis.get_ref().clone();
    let d = labels.len();
    if d == 0 {
        return Err(here(basis.span().start, "`basis` is empty".into()));
    }
    if products.len() != d {
        return Err(here(basis.span().start, format!("`products` must have {d} rows")));
    }
    let mut table = Vec::with_capacity(d);
    for row in products {
        if row.len() != d {
            let offset = row.first().map_or(basis.span().start, |c| c.span().start);
            return Err(here(offset, format!("product row must have {d} entries")));
        }
        let mut parsed = Vec::with_capacity(d);
        for cell in row {
            parsed.push(product_entry(cell.get_ref(), &labels).map_err(|msg| here(cell.span().start + 1, msg))?);
        }
        table.push(parsed);
    }
    Ok(AlgebraSource::Abstract { labels, products: table })
}

// "0", "label", or "scalar label".
fn product_entry(text: &str, labels: &[String]) -> Result<Option<(GaussianRational, usize)>, String> {
    let t = text.trim();
    if t == "0" {
        return Ok(None);
    }
    let (coeff, label) = match t.rsplit_once(char::is_whitespace) {
        Some((c, l)) => (c.trim().parse::<GaussianRational>().map_err(|e| e.to_string())?, l),
        None => (GaussianRational::one(), t),
    };
    let index = labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| format!("unknown basis label `{label}`"))?;
    if coeff.is_zero() {
        return Ok(None);
    }
    Ok(Some((coeff, index)))
}

fn locate(name: &str, text: &str, offset: usize, msg: &str) -> String {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    format!("{name}:{line}:{column}: {msg}")
}
