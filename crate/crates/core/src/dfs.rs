//! Noise operators over an abelian subalgebra, character projectors as
//! algebra elements, projection of ideal states, and the eigen-relations
//! that make a projected component decoherence-free.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, ComplexMatrix};
use crate::multivector::{IdealElement, Multivector};
use crate::reptheory::{character_table_abelian, element_image, CharacterTable, RowOrder, SignRep, MAX_MATRIX_FACTORS};
use crate::scalar::GaussianRational;
use crate::structure::SubalgebraTable;

/// Default tolerance of the matrix oracle.
pub const ORACLE_TOL: f64 = 1e-9;

/// One coefficient slot of a noise operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Value(GaussianRational),
    Symbol(String),
}

impl Coefficient {
    /// Numbers parse as values; anything else is taken as a symbol name.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::InvalidScalar(text.to_string()));
        }
        let numeric = t.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+') || t == "i";
        if numeric {
            Ok(Coefficient::Value(t.parse()?))
        } else {
            Ok(Coefficient::Symbol(t.to_string()))
        }
    }

    pub fn value(&self) -> Option<&GaussianRational> {
        match self {
            Coefficient::Value(v) => Some(v),
            Coefficient::Symbol(_) => None,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Value(v) => write!(f, "{v}"),
            Coefficient::Symbol(s) => f.write_str(s),
        }
    }
}

/// `Γ = Σ_y k_y a_y` with one coefficient slot per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoiseOperator {
    coeffs: Vec<Coefficient>,
}

impl NoiseOperator {
    pub fn new(table: &SubalgebraTable, coeffs: Vec<Coefficient>) -> Result<Self> {
        if coeffs.len() != table.dim() {
            return Err(Error::CoefficientCount { got: coeffs.len(), expected: table.dim() });
        }
        Ok(Self { coeffs })
    }

    /// Slots named `{prefix}1 … {prefix}d`.
    pub fn symbolic(table: &SubalgebraTable, prefix: &str) -> Self {
        Self { coeffs: (1..=table.dim()).map(|y| Coefficient::Symbol(format!("{prefix}{y}"))).collect() }
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn is_concrete(&self) -> bool {
        self.coeffs.iter().all(|c| c.value().is_some())
    }

    /// `Σ_y k_y a_y` as a multivector; only for concrete coefficients on a blade table.
    pub fn element(&self, table: &SubalgebraTable) -> Option<Multivector> {
        let m = table.num_factors()?;
        let mut out = Multivector::zero(m);
        for (y, k) in self.coeffs.iter().enumerate() {
            out = &out + &table.element(y)?.scale(k.value()?);
        }
        Some(out)
    }

    /// `Σ_y k_y χ(a_y)` for one character row.
    pub fn eigenvalue(&self, row: &[GaussianRational]) -> Eigenvalue {
        Eigenvalue { terms: row.iter().cloned().zip(self.coeffs.iter().cloned()).collect() }
    }
}

/// Formal sum `Σ_y χ_y · k_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    terms: Vec<(GaussianRational, Coefficient)>,
}

impl Eigenvalue {
    pub fn terms(&self) -> &[(GaussianRational, Coefficient)] {
        &self.terms
    }

    /// The exact value, when every slot is concrete.
    pub fn evaluate(&self) -> Option<GaussianRational> {
        self.terms.iter().map(|(chi, k)| k.value().map(|v| chi * v)).sum()
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.evaluate() {
            return write!(f, "{v}");
        }
        let one = GaussianRational::one();
        let mut first = true;
        for (chi, k) in &self.terms {
            if chi.is_zero() {
                continue;
            }
            let k = match k {
                Coefficient::Value(v) => format!("({v})"),
                Coefficient::Symbol(s) => s.clone(),
            };
            let (sign, body) = if *chi == one {
                ("+", k)
            } else if *chi == -&one {
                ("-", k)
            } else {
                ("+", format!("({chi})*{k}"))
            };
            match (first, sign) {
                (true, "+") => write!(f, "{body}")?,
                (true, _) => write!(f, "-{body}")?,
                _ => write!(f, " {sign} {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `P^{(j)} = (1/d) Σ_y χ^{(j)}(a_y)* a_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterProjector {
    pub irrep: usize,
    pub element: Multivector,
}

/// One projector per character row, with idempotence, mutual orthogonality
/// and completeness checked exactly.
pub fn build_projectors(table: &SubalgebraTable, ct: &CharacterTable) -> Result<Vec<CharacterProjector>> {
    let d = table.dim();
    let m = table
        .num_factors()
        .ok_or_else(|| Error::TableMismatch("projectors need a blade table".into()))?;
    if ct.rows.len() != d || ct.rows.iter().any(|r| r.len() != d) {
        return Err(Error::TableMismatch(format!("character table is not {d}x{d}")));
    }
    if !ct.is_multiplicative(table) {
        return Err(Error::TableMismatch("character rows are not multiplicative".into()));
    }
    let weight = GaussianRational::from_ratio(1, d as i64);
    let projectors: Vec<CharacterProjector> = ct
        .rows
        .iter()
        .enumerate()
        .map(|(j, row)| {
            let mut element = Multivector::zero(m);
            for (y, chi) in row.iter().enumerate() {
                let a = table.element(y).expect("blade table");
                element = &element + &a.scale(&(&chi.conj() * &weight));
            }
            CharacterProjector { irrep: j, element }
        })
        .collect();

    let mut total = Multivector::zero(m);
    for p in &projectors {
        for q in &projectors {
            let pq = &p.element * &q.element;
            let expected = if p.irrep == q.irrep { p.element.clone() } else { Multivector::zero(m) };
            if pq != expected {
                return Err(Error::ProjectorInvariant(format!(
                    "P{} P{} is not {}",
                    p.irrep + 1,
                    q.irrep + 1,
                    if p.irrep == q.irrep { "idempotent" } else { "zero" }
                )));
            }
        }
        total = &total + &p.element;
    }
    if total != Multivector::identity(m) {
        return Err(Error::ProjectorInvariant("projectors do not sum to the identity".into()));
    }
    Ok(projectors)
}

/// `P · ψ`, exactly.
pub fn project_state(p: &CharacterProjector, state: &IdealElement) -> Result<IdealElement> {
    state.left_mul(&p.element)
}

/// Check `a_y ψ = χ^{(j)}(a_y) ψ` for every basis element and return the
/// noise eigenvalue `Σ_y k_y χ^{(j)}(a_y)`.
pub fn eigen_check(
    table: &SubalgebraTable,
    ct: &CharacterTable,
    j: usize,
    component: &IdealElement,
    noise: &NoiseOperator,
) -> Result<Eigenvalue> {
    let row = ct.rows.get(j).ok_or(Error::IndexOutOfRange { index: j, len: ct.rows.len() })?;
    if component.value().is_zero() {
        return Err(Error::ZeroComponent);
    }
    if noise.coeffs().len() != table.dim() {
        return Err(Error::CoefficientCount { got: noise.coeffs().len(), expected: table.dim() });
    }
    for (y, chi) in row.iter().enumerate() {
        let a = table
            .element(y)
            .ok_or_else(|| Error::TableMismatch("eigen check needs a blade table".into()))?;
        if component.left_mul(&a)? != component.scale(chi) {
            return Err(Error::EigenCheckFailed { irrep: j, basis: y });
        }
    }
    Ok(noise.eigenvalue(row))
}

/// One projected component of a state.
#[derive(Clone, Debug)]
pub struct DfsComponent {
    pub irrep: usize,
    pub projector: CharacterProjector,
    pub component: IdealElement,
    /// True when the component is the zero qubit state.
    pub zero: bool,
    pub eigenvalue: Eigenvalue,
}

/// Result of the full projection pipeline.
#[derive(Clone, Debug)]
pub struct DfsReport {
    pub characters: CharacterTable,
    pub components: Vec<DfsComponent>,
}

impl DfsReport {
    /// Components that survive projection.
    pub fn nonzero(&self) -> impl Iterator<Item = &DfsComponent> {
        self.components.iter().filter(|c| !c.zero)
    }
}

/// Characters, projectors, projection and eigen checks in one pass.
///
/// Zero components are kept and flagged. The eigen relation is verified on
/// every component that is not identically zero.
pub fn dfs_analyze(
    table: &SubalgebraTable,
    state: &IdealElement,
    noise: &NoiseOperator,
    order: RowOrder,
) -> Result<DfsReport> {
    let m = table
        .num_factors()
        .ok_or_else(|| Error::TableMismatch("state analysis needs a blade table".into()))?;
    if state.num_factors() != m {
        return Err(Error::FactorMismatch { left: m, right: state.num_factors() });
    }
    let characters = character_table_abelian(table, order)?;
    let projectors = build_projectors(table, &characters)?;
    let mut components = Vec::with_capacity(projectors.len());
    let mut total = IdealElement::zero(m);
    for p in projectors {
        let component = project_state(&p, state)?;
        total = total.try_add(&component)?;
        let eigenvalue = if component.value().is_zero() {
            noise.eigenvalue(&characters.rows[p.irrep])
        } else {
            eigen_check(table, &characters, p.irrep, &component, noise)?
        };
        components.push(DfsComponent {
            irrep: p.irrep,
            zero: component.is_sector_zero(),
            projector: p,
            component,
            eigenvalue,
        });
    }
    if total != *state {
        return Err(Error::ProjectorInvariant("components do not sum to the state".into()));
    }
    Ok(DfsReport { characters, components })
}

/// Numerical cross-check of one report in a `2^m`-dimensional representation.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// `max_j ‖ρ(Γ) ρ(ψ^j) − λ_j ρ(ψ^j)‖_max`.
    pub residual: f64,
    pub per_component: Vec<f64>,
    /// The state maps to the zero matrix, so nothing was tested.
    pub vacuous: bool,
}

/// Re-derive every eigen relation of `report` with matrices of the sign
/// representation `rep`.
pub fn matrix_oracle_check(
    table: &SubalgebraTable,
    state: &IdealElement,
    noise: &NoiseOperator,
    report: &DfsReport,
    rep: &SignRep,
) -> Result<OracleResult> {
    let m = state.num_factors();
    if m > MAX_MATRIX_FACTORS {
        return Err(Error::TooManyFactors { got: m, limit: MAX_MATRIX_FACTORS });
    }
    let gamma = noise
        .element(table)
        .ok_or_else(|| Error::InvalidScalar("oracle needs concrete coefficients".into()))?;
    let gamma = element_image(rep, &gamma)?;
    let vacuous = element_image(rep, state.value())?.max_norm() == 0.0;
    let mut per_component = Vec::with_capacity(report.components.len());
    for c in &report.components {
        let psi = element_image(rep, c.component.value())?;
        let lambda = c
            .eigenvalue
            .evaluate()
            .ok_or_else(|| Error::InvalidScalar("symbolic eigenvalue".into()))?
            .to_complex64();
        per_component.push(max_abs_diff(&(&gamma * &psi), &psi.scale(lambda)));
    }
    let residual = per_component.iter().copied().fold(0.0, f64::max);
    Ok(OracleResult { residual, per_component, vacuous })
}

/// `ρ(Γ)` for concrete coefficients, as used by the oracle.
pub fn noise_matrix(table: &SubalgebraTable, noise: &NoiseOperator, rep: &SignRep) -> Result<ComplexMatrix> {
    let gamma = noise
        .element(table)
        .ok_or_else(|| Error::InvalidScalar("noise matrix needs concrete coefficients".into()))?;
    element_image(rep, &gamma)
}

/// The projector `P^{(j)}` as a matrix on the regular space: `(1/d) Σ χ* L(a_y)`.
pub fn character_projector_regular(regular: &[ComplexMatrix], row: &[GaussianRational]) -> Result<ComplexMatrix> {
    let d = regular.len();
    if row.len() != d {
        return Err(Error::TableMismatch(format!("{} characters for {d} basis elements", row.len())));
    }
    let weight = Complex64::new(1.0 / d as f64, 0.0);
    let mut out = ComplexMatrix::zeros(d, d);
    for (l, chi) in regular.iter().zip(row) {
        out = &out + &l.scale(chi.conj().to_complex64() * weight);
    }
    Ok(out)
}
