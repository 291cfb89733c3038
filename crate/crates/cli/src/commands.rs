use clifford_dfs::dfs::{build_projectors, dfs_analyze, matrix_oracle_check, NoiseOperator};
use clifford_dfs::error::Error as CoreError;
use clifford_dfs::linalg::{max_abs_diff, Complex64, ComplexMatrix};
use clifford_dfs::multivector::IdealElement;
use clifford_dfs::parse::{render_element, render_terms};
use clifford_dfs::reptheory::{
    character_orthogonality_residual, character_table_abelian, distinguish_reps, regular_representation,
    sign_rep_matrices, unitarize, verify_grand_orthogonality, Equivalence, MatrixRep, SignRep, MAX_MATRIX_FACTORS,
    UNITARY_TOL,
};
use clifford_dfs::structure::{
    center_basis, check_coefficient_condition, irrep_profile, is_semisimple, tensor_tables,
    SubalgebraTable,
};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::report::{Check, DfsEntry, Irreps, Report, VerifyReport};
use crate::spec::ProblemSpec;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Pairs sampled for the homomorphism check above three factors.
pub const HOMOMORPHISM_SAMPLES: usize = 2000;

/// Command-line overrides; spec options fill the gaps.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub tolerance: Option<f64>,
    pub max_factors: Option<usize>,
    pub seed: u64,
}

impl Settings {
    fn tolerance(&self, spec: &ProblemSpec) -> f64 {
        self.tolerance.or(spec.options.tolerance).unwrap_or(DEFAULT_TOLERANCE)
    }

    // Matrices are never built beyond the library cap.
    fn max_factors(&self, spec: &ProblemSpec) -> usize {
        self.max_factors.unwrap_or(spec.options.max_factors).min(MAX_MATRIX_FACTORS)
    }
}

/// A report plus the failure that stopped the pipeline, if any. The report
/// is printed either way.
pub struct Outcome<T> {
    pub output: T,
    pub failure: Option<CliError>,
}

impl<T> Outcome<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        Outcome { output: f(self.output), failure: self.failure }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Gram,
    Orthogonality,
    Characters,
    Unitarize,
    Tensor,
}

impl Theorem {
    fn name(self) -> &'static str {
        match self {
            Theorem::Gram => "gram",
            Theorem::Orthogonality => "orthogonality",
            Theorem::Characters => "characters",
            Theorem::Unitarize => "unitarize",
            Theorem::Tensor => "tensor",
        }
    }
}

pub fn analyze(spec: &ProblemSpec) -> Result<Outcome<Report>, CliError> {
    let table = spec.build_table()?;
    Ok(analyze_table(spec, &table))
}

fn analyze_table(spec: &ProblemSpec, table: &SubalgebraTable) -> Outcome<Report> {
    let mut report = Report {
        basis: (0..table.dim()).map(|i| table.label(i)).collect(),
        center: center_basis(table).iter().map(|c| c + 1).collect(),
        ..Report::default()
    };
    let ss = is_semisimple(table);
    report.semisimple = ss.semisimple;
    report.determinant = ss.determinant.to_string();
    if !ss.semisimple {
        let failure = CoreError::NotSemisimple { determinant: report.determinant.clone() };
        return Outcome { output: report, failure: Some(failure.into()) };
    }
    let profile = match irrep_profile(table) {
        Ok(p) => p,
        Err(e) => return Outcome { output: report, failure: Some(e.into()) },
    };
    report.irreps = Some(Irreps { count: profile.count, dims: profile.dims.clone(), ambiguous: profile.ambiguous });
    if profile.ambiguous {
        let failure = CoreError::AmbiguousDims(profile.solutions);
        return Outcome { output: report, failure: Some(failure.into()) };
    }
    if table.is_commutative() && profile.dims.iter().all(|&n| n == 1) {
        match character_table_abelian(table, spec.options.row_order) {
            Ok(ct) => {
                report.characters = ct.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
                if let Some(blades) = table.blades() {
                    match build_projectors(table, &ct) {
                        Ok(ps) => {
                            report.projectors = ps
                                .iter()
                                .map(|p| {
                                    let coeffs: Vec<_> = blades.iter().map(|b| p.element.coeff(b)).collect();
                                    render_terms(blades.iter().zip(&coeffs))
                                })
                                .collect()
                        }
                        Err(e) => return Outcome { output: report, failure: Some(e.into()) },
                    }
                }
            }
            Err(e) => return Outcome { output: report, failure: Some(e.into()) },
        }
    }
    Outcome { output: report, failure: None }
}

pub fn dfs(spec: &ProblemSpec, settings: &Settings) -> Result<Outcome<Report>, CliError> {
    let state = spec.state.as_ref().ok_or_else(|| CliError::Parse(format!("{}: spec has no `state`", spec.name)))?;
    let table = spec.build_table()?;
    let coeffs = spec.checked_coeffs(&table)?;
    let mut outcome = analyze_table(spec, &table);
    if outcome.failure.is_some() {
        return Ok(outcome);
    }
    let noise = match coeffs {
        Some(c) => NoiseOperator::new(&table, c)?,
        None => NoiseOperator::symbolic(&table, "k"),
    };
    let psi = IdealElement::from_left_factor(state)?;
    let report = match dfs_analyze(&table, &psi, &noise, spec.options.row_order) {
        Ok(r) => r,
        Err(e) => {
            outcome.failure = Some(e.into());
            return Ok(outcome);
        }
    };

    let tolerance = settings.tolerance(spec);
    let m = psi.num_factors();
    let mut residuals: Option<Vec<f64>> = None;
    if noise.is_concrete() && m <= settings.max_factors(spec) {
        let mut worst = vec![0.0f64; report.components.len()];
        for rep in SignRep::all(m) {
            let o = matrix_oracle_check(&table, &psi, &noise, &report, &rep)?;
            for (w, r) in worst.iter_mut().zip(&o.per_component) {
                *w = w.max(*r);
            }
        }
        residuals = Some(worst);
    }

    outcome.output.dfs = report
        .components
        .iter()
        .enumerate()
        .map(|(k, c)| DfsEntry {
            irrep: c.irrep + 1,
            component: render_element(&c.component.sector_form()),
            zero: c.zero,
            eigenvalue: c.eigenvalue.to_string(),
            oracle_residual: residuals.as_ref().map(|r| r[k]),
            element: render_element(c.component.value()),
        })
        .collect();
    let worst = residuals.iter().flatten().copied().fold(0.0, f64::max);
    if worst > tolerance {
        outcome.failure = Some(CliError::Oracle { residual: worst, tolerance });
    }
    Ok(outcome)
}

pub fn verify(spec: &ProblemSpec, theorem: Theorem, settings: &Settings) -> Result<Outcome<VerifyReport>, CliError> {
    let table = spec.build_table()?;
    let tolerance = settings.tolerance(spec);
    let checks = match theorem {
        Theorem::Gram => verify_gram(&table),
        Theorem::Orthogonality => verify_orthogonality(spec, &table, settings, tolerance)?,
        Theorem::Characters => verify_characters(spec, &table)?,
        Theorem::Unitarize => verify_unitarize(spec, &table, settings)?,
        Theorem::Tensor => verify_tensor(spec, &table)?,
    };
    let pass = checks.iter().all(|c| c.pass);
    let failure = (!pass).then(|| CliError::Check(format!("theorem {} failed", theorem.name())));
    Ok(Outcome { output: VerifyReport { theorem: theorem.name().into(), pass, checks }, failure })
}

fn verify_gram(table: &SubalgebraTable) -> Vec<Check> {
    let ss = is_semisimple(table);
    let mut checks = vec![
        Check::new("trace-form determinant", &ss.determinant, ss.semisimple),
        Check::new("center size", center_basis(table).len(), true),
    ];
    if let Ok(p) = irrep_profile(table) {
        checks.push(Check::new("irrep dims", format!("{:?}", p.dims), !p.ambiguous));
    }
    checks
}

fn verify_orthogonality(
    spec: &ProblemSpec,
    table: &SubalgebraTable,
    settings: &Settings,
    tolerance: f64,
) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let d = table.dim();
    let (family, label) = irreducible_family(spec, table, settings)?;
    if family.is_empty() {
        checks.push(Check::new("irreducible family", "none available for this algebra", false));
        return Ok(checks);
    }
    let m = table.num_factors().unwrap_or(0);
    let homomorphism = family
        .iter()
        .map(|rep| {
            if m <= 3 {
                rep.homomorphism_residual()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
                let pairs: Vec<(usize, usize)> =
                    (0..HOMOMORPHISM_SAMPLES).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d))).collect();
                rep.homomorphism_residual_on(pairs)
            }
        })
        .fold(0.0, f64::max);
    checks.push(Check::new(format!("homomorphism residual ({label})"), format!("{homomorphism:.3e}"), homomorphism <= tolerance));
    let mut worst = 0.0f64;
    for a in &family {
        for b in &family {
            worst = worst.max(verify_grand_orthogonality(a, b)?);
        }
    }
    checks.push(Check::new(
        format!("grand orthogonality over {} irreps", family.len()),
        format!("{worst:.3e}"),
        worst <= tolerance,
    ));
    let verdicts = distinguish_reps(&family)?;
    let separated = (0..family.len())
        .all(|a| (0..family.len()).all(|b| (verdicts[a][b] == Equivalence::Nonequivalent) == (a != b)));
    if family[0].dim() > 1 {
        checks.push(Check::new("pairwise nonequivalent by central traces", separated, separated));
    }
    Ok(checks)
}

// Sign representations on a full Clifford table, or the characters of an
// abelian one. Restricted sign representations are reducible in general
// and are not used.
fn irreducible_family<'a>(
    spec: &ProblemSpec,
    table: &'a SubalgebraTable,
    settings: &Settings,
) -> Result<(Vec<MatrixRep<'a>>, &'static str), CliError> {
    if let Some(m) = table.num_factors() {
        if table.dim() == 1 << (3 * m) {
            if m > settings.max_factors(spec) {
                return Err(CoreError::TooManyFactors { got: m, limit: settings.max_factors(spec) }.into());
            }
            let reps = SignRep::all(m).iter().map(|s| sign_rep_matrices(s, table)).collect::<Result<_, _>>()?;
            return Ok((reps, "sign representations"));
        }
    }
    if table.is_commutative() {
        let ct = character_table_abelian(table, spec.options.row_order)?;
        let reps = ct
            .rows
            .iter()
            .enumerate()
            .map(|(j, row)| MatrixRep::from_characters(table, row, format!("R{}", j + 1)))
            .collect::<Result<_, _>>()?;
        return Ok((reps, "characters"));
    }
    Ok((Vec::new(), ""))
}

fn verify_characters(spec: &ProblemSpec, table: &SubalgebraTable) -> Result<Vec<Check>, CliError> {
    let ct = character_table_abelian(table, spec.options.row_order)?;
    let orthogonal = character_orthogonality_residual(&ct);
    let multiplicative = ct.is_multiplicative(table);
    let mut checks = vec![
        Check::new("rows", ct.num_rows(), ct.num_rows() == table.dim()),
        Check::new("row orthogonality (exact)", orthogonal, orthogonal),
        Check::new("multiplicativity (exact)", multiplicative, multiplicative),
    ];
    if table.dim() > 1 {
        let mut mutated = ct.clone();
        let j = mutated.num_rows() - 1;
        mutated.rows[j][1] = -&mutated.rows[j][1];
        let caught = !character_orthogonality_residual(&mutated);
        checks.push(Check::new("flipped sign detected", caught, caught));
    }
    Ok(checks)
}

// Upper bidiagonal S = I + N and its inverse Σ (-N)^k.
fn skew(n: usize) -> (ComplexMatrix, ComplexMatrix) {
    let s = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(if j == i || j == i + 1 { 1.0 } else { 0.0 }, 0.0));
    let s_inv = ComplexMatrix::from_fn(n, n, |i, j| {
        let v = match j.checked_sub(i) {
            Some(k) if k % 2 == 0 => 1.0,
            Some(_) => -1.0,
            None => 0.0,
        };
        Complex64::new(v, 0.0)
    });
    (s, s_inv)
}

fn verify_unitarize(spec: &ProblemSpec, table: &SubalgebraTable, settings: &Settings) -> Result<Vec<Check>, CliError> {
    let base = match table.num_factors() {
        Some(m) => {
            if m > settings.max_factors(spec) {
                return Err(CoreError::TooManyFactors { got: m, limit: settings.max_factors(spec) }.into());
            }
            sign_rep_matrices(&SignRep::positive(m), table)?
        }
        None => regular_representation(table)?,
    };
    let (s, s_inv) = skew(base.dim());
    let skewed = base.conjugate(&s, &s_inv)?;
    let mut checks = vec![Check::new(
        "input unitarity defect",
        format!("{:.3e}", skewed.unitarity_defect()),
        true,
    )];
    let condition = check_coefficient_condition(table);
    checks.push(Check::new("coefficient condition", condition, condition));
    if !condition {
        return Ok(checks);
    }
    let u = unitarize(&skewed)?;
    let defect = u.max_unitarity_defect();
    checks.push(Check::new("output unitarity defect", format!("{defect:.3e}"), defect <= UNITARY_TOL));
    let rep = u.as_rep(table, skewed.label())?;
    let hom = rep.homomorphism_residual();
    checks.push(Check::new("output homomorphism residual", format!("{hom:.3e}"), hom <= UNITARY_TOL));
    let again = unitarize(&rep)?;
    let drift = again
        .unitary_images
        .iter()
        .zip(rep.images())
        .map(|(a, b)| max_abs_diff(a, b))
        .fold(0.0, f64::max);
    checks.push(Check::new("idempotence drift", format!("{drift:.3e}"), drift <= UNITARY_TOL));
    let same = distinguish_reps(&[rep, base])?[0][1] == Equivalence::Undetermined;
    checks.push(Check::new("central traces preserved", same, same));
    Ok(checks)
}

fn verify_tensor(spec: &ProblemSpec, table: &SubalgebraTable) -> Result<Vec<Check>, CliError> {
    let product = tensor_tables(table, table, spec.options.cap)?;
    let za = center_basis(table).len();
    let zab = center_basis(&product).len();
    let mut checks = vec![
        Check::new("dim(A ⊗ A)", product.dim(), product.dim() == table.dim() * table.dim()),
        Check::new("center of A", za, true),
        Check::new("center of A ⊗ A", zab, zab == za * za),
    ];
    let profile = irrep_profile(&product)?;
    checks.push(Check::new("M (irreps of A ⊗ A)", profile.count, profile.count == za * za));
    checks.push(Check::new("irrep dims of A ⊗ A", format!("{:?}", profile.dims), !profile.ambiguous));
    Ok(checks)
}
