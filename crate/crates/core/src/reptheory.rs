//! Matrix representations of structure tables and the checks built on them:
//! sign representations `γᵢ ↦ ±σᵢ`, central-trace equivalence, grand and
//! character orthogonality, unitarization through `F = Σ D D†`, and
//! matrix-element projectors on the regular representation.

use std::collections::HashSet;

use num_complex::Complex64;

use crate::blade::{Blade, FactorBlade};
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::linalg::{hermitian_eig, inv_sqrt_diag, max_abs_diff, ComplexMatrix, HermitianEigen};
use crate::scalar::GaussianRational;
use crate::structure::{center_basis, check_coefficient_condition, irrep_profile, SubalgebraTable};

/// Largest factor count for which `2^m`-dimensional matrices are built.
pub const MAX_MATRIX_FACTORS: usize = 4;
/// Tolerance for the homomorphism and orthogonality residuals.
pub const REP_TOL: f64 = 1e-9;
/// Tolerance for unitarity checks.
pub const UNITARY_TOL: f64 = 1e-8;

/// Images `D(a_y)` of every basis element of a table.
#[derive(Clone, Debug)]
pub struct MatrixRep<'a> {
    table: &'a SubalgebraTable,
    images: Vec<ComplexMatrix>,
    label: String,
}

impl<'a> MatrixRep<'a> {
    pub fn new(table: &'a SubalgebraTable, images: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        if images.len() != table.dim() {
            return Err(Error::Shape(format!("{} images for {} basis elements", images.len(), table.dim())));
        }
        let n = images.first().map_or(0, ComplexMatrix::rows);
        if images.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape("images must be square and of equal size".into()));
        }
        Ok(Self { table, images, label: label.into() })
    }

    /// One-dimensional representation from a character row.
    pub fn from_characters(table: &'a SubalgebraTable, row: &[GaussianRational], label: impl Into<String>) -> Result<Self> {
        let images = row.iter().map(|c| ComplexMatrix::diag(&[c.to_complex64()])).collect();
        Self::new(table, images, label)
    }

    pub fn table(&self) -> &'a SubalgebraTable {
        self.table
    }

    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    pub fn image(&self, y: usize) -> &ComplexMatrix {
        &self.images[y]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Matrix dimension of the representation.
    pub fn dim(&self) -> usize {
        self.images[0].rows()
    }

    /// `max ‖D(a_x)D(a_y) − c_xy D(a_z)‖` over the given pairs.
    pub fn homomorphism_residual_on(&self, pairs: impl IntoIterator<Item = (usize, usize)>) -> f64 {
        pairs
            .into_iter()
            .map(|(x, y)| {
                let p = self.table.product(x, y);
                let lhs = &self.images[x] * &self.images[y];
                let rhs = self.images[p.index].scale(p.coeff.to_complex64());
                max_abs_diff(&lhs, &rhs)
            })
            .fold(0.0, f64::max)
    }

    /// Residual over every basis pair.
    pub fn homomorphism_residual(&self) -> f64 {
        let d = self.table.dim();
        self.homomorphism_residual_on((0..d).flat_map(|x| (0..d).map(move |y| (x, y))))
    }

    /// `max_y ‖D(a_y) D(a_y)† − I‖`.
    pub fn unitarity_defect(&self) -> f64 {
        self.images.iter().map(ComplexMatrix::unitarity_defect).fold(0.0, f64::max)
    }

    /// `S D(a) S⁻¹`, given `S` and its inverse.
    pub fn conjugate(&self, s: &ComplexMatrix, s_inv: &ComplexMatrix) -> Result<MatrixRep<'a>> {
        if max_abs_diff(&(s * s_inv), &ComplexMatrix::identity(self.dim())) > REP_TOL {
            return Err(Error::Shape("conjugating matrix and inverse do not multiply to I".into()));
        }
        let images = self.images.iter().map(|d| &(s * d) * s_inv).collect();
        MatrixRep::new(self.table, images, format!("{} (conjugated)", self.label))
    }
}

/// Per-factor sign choice `γᵢ^{(f)} ↦ signs[f] · σᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignRep {
    signs: Vec<i8>,
}

impl SignRep {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::NoFactors);
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidTable("signs must be ±1".into()));
        }
        Ok(Self { signs })
    }

    /// The all-positive (Pauli) choice.
    pub fn positive(m: usize) -> Self {
        Self { signs: vec![1; m.max(1)] }
    }

    /// All `2^m` choices; bit `f` of the index set flips factor `f`.
    pub fn all(m: usize) -> Vec<SignRep> {
        (0..1usize << m)
            .map(|bits| Self { signs: (0..m).map(|f| if bits >> f & 1 == 1 { -1 } else { 1 }).collect() })
            .collect()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn label(&self) -> String {
        let s: String = self.signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
        format!("sign({s})")
    }
}

fn pauli(k: u8) -> ComplexMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let rows = match k {
        1 => vec![vec![z, one], vec![one, z]],
        2 => vec![vec![z, -i], vec![i, z]],
        _ => vec![vec![one, z], vec![z, -one]],
    };
    ComplexMatrix::from_rows(&rows).expect("2x2")
}

fn factor_image(b: FactorBlade, sign: i8) -> ComplexMatrix {
    let m = b.indices().fold(ComplexMatrix::identity(2), |acc, k| &acc * &pauli(k));
    if sign < 0 && b.grade() % 2 == 1 {
        m.scale(Complex64::new(-1.0, 0.0))
    } else {
        m
    }
}

/// `ρ_s(b)` for a single blade: per-factor Pauli products, tensored.
pub fn blade_image(s: &SignRep, b: &Blade) -> Result<ComplexMatrix> {
    let m = b.num_factors();
    if m != s.signs.len() {
        return Err(Error::FactorMismatch { left: m, right: s.signs.len() });
    }
    if m > MAX_MATRIX_FACTORS {
        return Err(Error::TooManyFactors { got: m, limit: MAX_MATRIX_FACTORS });
    }
    Ok(b.factors()
        .iter()
        .zip(&s.signs)
        .map(|(f, &sg)| factor_image(*f, sg))
        .reduce(|acc, x| acc.kron(&x))
        .expect("m >= 1"))
}

/// `ρ_s(x)` for an arbitrary element, by linearity.
pub fn element_image(s: &SignRep, x: &Multivector) -> Result<ComplexMatrix> {
    let m = x.num_factors();
    if m != s.signs.len() {
        return Err(Error::FactorMismatch { left: m, right: s.signs.len() });
    }
    if m > MAX_MATRIX_FACTORS {
        return Err(Error::TooManyFactors { got: m, limit: MAX_MATRIX_FACTORS });
    }
    let mut out = ComplexMatrix::zeros(1 << m, 1 << m);
    for (b, c) in x.terms() {
        out = &out + &blade_image(s, b)?.scale(c.to_complex64());
    }
    Ok(out)
}

/// The `2^m`-dimensional representation of a blade table under `s`.
pub fn sign_rep_matrices<'a>(s: &SignRep, table: &'a SubalgebraTable) -> Result<MatrixRep<'a>> {
    let blades = table
        .blades()
        .ok_or_else(|| Error::InvalidTable("sign representations need a blade table".into()))?;
    let images = blades.iter().map(|b| blade_image(s, b)).collect::<Result<_>>()?;
    MatrixRep::new(table, images, s.label())
}

/// Outcome of comparing two representations through their central images.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// Some central element has different traces.
    Nonequivalent,
    /// Central traces agree; equivalence is not decided.
    Undetermined,
}

/// Pairwise verdicts; entry `[a][b]` compares `reps[a]` with `reps[b]`.
pub fn distinguish_reps(reps: &[MatrixRep<'_>]) -> Result<Vec<Vec<Equivalence>>> {
    let Some(first) = reps.first() else {
        return Ok(Vec::new());
    };
    for r in reps {
        if r.dim() != first.dim() {
            return Err(Error::RepDimension(first.dim(), r.dim()));
        }
        if r.table().dim() != first.table().dim() {
            return Err(Error::TableMismatch("representations of different tables".into()));
        }
    }
    let center = center_basis(first.table());
    let verdict = |a: &MatrixRep<'_>, b: &MatrixRep<'_>| {
        let differs = center
            .iter()
            .any(|&z| (a.image(z).trace() - b.image(z).trace()).norm() > REP_TOL);
        if differs {
            Equivalence::Nonequivalent
        } else {
            Equivalence::Undetermined
        }
    };
    Ok(reps.iter().map(|a| reps.iter().map(|b| verdict(a, b)).collect()).collect())
}

/// Max deviation of `Σ_y D^α_ij(a_y)* D^β_kl(a_y)` from `(d/d_α) δ_αβ δ_ik δ_jl`.
///
/// The two inputs count as the same irrep when their images coincide; any
/// other pair is treated as nonequivalent.
pub fn verify_grand_orthogonality(a: &MatrixRep<'_>, b: &MatrixRep<'_>) -> Result<f64> {
    if a.table().dim() != b.table().dim() {
        return Err(Error::TableMismatch("representations of different tables".into()));
    }
    for r in [a, b] {
        let defect = r.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
    }
    let same = a.dim() == b.dim()
        && a.images().iter().zip(b.images()).all(|(x, y)| max_abs_diff(x, y) <= REP_TOL);
    let d = a.table().dim() as f64;
    let (na, nb) = (a.dim(), b.dim());
    let mut worst = 0.0f64;
    for i in 0..na {
        for j in 0..na {
            for k in 0..nb {
                for l in 0..nb {
                    let sum: Complex64 = a
                        .images()
                        .iter()
                        .zip(b.images())
                        .map(|(da, db)| da[(i, j)].conj() * db[(k, l)])
                        .sum();
                    let expected = if same && i == k && j == l { d / na as f64 } else { 0.0 };
                    worst = worst.max((sum - expected).norm());
                }
            }
        }
    }
    Ok(worst)
}

/// How character rows are ordered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RowOrder {
    /// Lexicographic on the rows with `1 < -1 < i < -i`; the trivial row comes first.
    #[default]
    Lexicographic,
    /// Reflected Gray code over the generator values, first generator fastest.
    Gray,
}

/// Character rows of an abelian table with one-dimensional irreps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    /// Basis indices of the generating set used for enumeration.
    pub generators: Vec<usize>,
    /// `rows[j][y] = χ^{(j)}(a_y)`, columns in basis order.
    pub rows: Vec<Vec<GaussianRational>>,
}

impl CharacterTable {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Exact `Σ_y χ^α(a_y)* χ^β(a_y) = d δ_αβ` for all row pairs.
    pub fn orthogonality_holds(&self) -> bool {
        let d = GaussianRational::from(self.rows.first().map_or(0, Vec::len) as i64);
        self.rows.iter().enumerate().all(|(a, ra)| {
            self.rows.iter().enumerate().all(|(b, rb)| {
                let s: GaussianRational = ra.iter().zip(rb).map(|(x, y)| &x.conj() * y).sum();
                if a == b {
                    s == d
                } else {
                    s.is_zero()
                }
            })
        })
    }

    /// Exact `χ(a_x) χ(a_y) = c_xy χ(a_z)` on every row.
    pub fn is_multiplicative(&self, table: &SubalgebraTable) -> bool {
        let d = table.dim();
        self.rows.iter().all(|row| {
            row.len() == d
                && (0..d).all(|x| {
                    (0..d).all(|y| {
                        let p = table.product(x, y);
                        &row[x] * &row[y] == &p.coeff * &row[p.index]
                    })
                })
        })
    }
}

fn unit_roots(c: &GaussianRational) -> Option<[GaussianRational; 2]> {
    let one = GaussianRational::one();
    let i = GaussianRational::i();
    if *c == one {
        Some([one.clone(), -one])
    } else if *c == -&one {
        Some([i.clone(), -i])
    } else {
        None
    }
}

/// Enumerate the characters of a commutative table whose irreps are all
/// one-dimensional.
pub fn character_table_abelian(table: &SubalgebraTable, order: RowOrder) -> Result<CharacterTable> {
    let d = table.dim();
    for x in 0..d {
        for y in x + 1..d {
            if !table.commutes(x, y) {
                return Err(Error::NotCommutative { x, y });
            }
        }
    }
    table.require_bijective()?;
    let profile = irrep_profile(table)?;
    if profile.dims.iter().any(|&n| n != 1) {
        return Err(Error::NotAllOneDimensional);
    }

    let mut squares = Vec::with_capacity(d);
    for x in 0..d {
        let p = table.product(x, x);
        if p.index != 0 || !p.coeff.is_unit() {
            return Err(Error::InvalidTable(format!(
                "basis element {x} does not square to a unit multiple of the identity"
            )));
        }
        squares.push(p.coeff);
    }

    // Greedy generating set in basis order.
    let mut generators = Vec::new();
    let mut reached = vec![false; d];
    reached[0] = true;
    for x in 1..d {
        if reached[x] {
            continue;
        }
        generators.push(x);
        let mut frontier: Vec<usize> = (0..d).filter(|&e| reached[e]).collect();
        while let Some(e) = frontier.pop() {
            for &g in &generators {
                let z = table.product(e, g).index;
                if !reached[z] {
                    reached[z] = true;
                    frontier.push(z);
                }
            }
        }
    }

    let roots: Vec<[GaussianRational; 2]> = generators
        .iter()
        .map(|&g| {
            unit_roots(&squares[g]).ok_or_else(|| {
                Error::InvalidTable(format!("square of basis element {g} has no Gaussian-rational root"))
            })
        })
        .collect::<Result<_>>()?;

    let n = generators.len();
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for idx in 0..1usize << n {
        let choice = match order {
            RowOrder::Lexicographic => idx,
            RowOrder::Gray => idx ^ (idx >> 1),
        };
        let values: Vec<GaussianRational> =
            (0..n).map(|b| roots[b][choice >> b & 1].clone()).collect();
        if let Some(row) = extend_character(table, &generators, &values) {
            if seen.insert(row.clone()) {
                rows.push(row);
            }
        }
    }
    if order == RowOrder::Lexicographic {
        rows.sort_by(|a, b| {
            let ka: Vec<_> = a.iter().map(GaussianRational::phase_rank).collect();
            let kb: Vec<_> = b.iter().map(GaussianRational::phase_rank).collect();
            ka.cmp(&kb)
        });
    }
    if rows.len() != d {
        return Err(Error::CharacterCount { found: rows.len(), expected: d });
    }
    Ok(CharacterTable { generators, rows })
}

// Propagate generator values along products; None if inconsistent.
fn extend_character(
    table: &SubalgebraTable,
    generators: &[usize],
    values: &[GaussianRational],
) -> Option<Vec<GaussianRational>> {
    let d = table.dim();
    let mut chi: Vec<Option<GaussianRational>> = vec![None; d];
    chi[0] = Some(GaussianRational::one());
    let mut queue = vec![0usize];
    while let Some(e) = queue.pop() {
        let ce = chi[e].clone().expect("assigned");
        for (g, v) in generators.iter().zip(values) {
            let p = table.product(e, *g);
            let value = (&ce * v).checked_div(&p.coeff).ok()?;
            match &chi[p.index] {
                Some(existing) if *existing != value => return None,
                Some(_) => {}
                None => {
                    chi[p.index] = Some(value);
                    queue.push(p.index);
                }
            }
        }
    }
    let row: Vec<GaussianRational> = chi.into_iter().collect::<Option<_>>()?;
    let ct = CharacterTable { generators: Vec::new(), rows: vec![row] };
    ct.is_multiplicative(table).then(|| ct.rows.into_iter().next().expect("one row"))
}

/// Exact check of row orthogonality.
pub fn character_orthogonality_residual(ct: &CharacterTable) -> bool {
    ct.orthogonality_holds()
}

/// The unitarizing transform and the resulting unitary images.
#[derive(Clone, Debug)]
pub struct UnitarizationResult {
    /// `F = Σ_y D(a_y) D(a_y)†`.
    pub f: ComplexMatrix,
    pub eigen: HermitianEigen,
    /// `U† Λ^{-1/2} U`, i.e. `F^{-1/2}`.
    pub transform: ComplexMatrix,
    /// `T D(a_y) T⁻¹` for every basis element.
    pub unitary_images: Vec<ComplexMatrix>,
}

impl UnitarizationResult {
    pub fn max_unitarity_defect(&self) -> f64 {
        self.unitary_images.iter().map(ComplexMatrix::unitarity_defect).fold(0.0, f64::max)
    }

    pub fn as_rep<'a>(&self, table: &'a SubalgebraTable, label: &str) -> Result<MatrixRep<'a>> {
        MatrixRep::new(table, self.unitary_images.clone(), format!("{label} (unitarized)"))
    }
}

/// Conjugate a representation into unitary form.
///
/// With `F = U† Λ U`, any `T` with `T F T† = I` works; `Λ^{-1/2} U` is one
/// such choice. Applying `U†` on the left gives `F^{-1/2}`, which does not
/// depend on the eigenbasis picked inside a degenerate eigenspace, so a
/// representation that is already unitary comes back unchanged. The images
/// `T D T⁻¹` are unitary whenever `D F D† = F`, which the coefficient
/// condition guarantees.
pub fn unitarize(rep: &MatrixRep<'_>) -> Result<UnitarizationResult> {
    if !check_coefficient_condition(rep.table()) {
        return Err(Error::InvalidTable("coefficient condition does not hold".into()));
    }
    let n = rep.dim();
    let f = rep
        .images()
        .iter()
        .fold(ComplexMatrix::zeros(n, n), |acc, d| &acc + &(d * &d.adjoint()));
    let eigen = hermitian_eig(&f)?;
    let u_dag = eigen.unitary.adjoint();
    let transform = u_dag.matmul(&inv_sqrt_diag(&eigen.values, &eigen.unitary)?)?;
    let sqrt: Vec<Complex64> = eigen.values.iter().map(|l| Complex64::new(l.sqrt(), 0.0)).collect();
    let inverse = &(&u_dag * &ComplexMatrix::diag(&sqrt)) * &eigen.unitary;
    let unitary_images = rep.images().iter().map(|d| &(&transform * d) * &inverse).collect();
    Ok(UnitarizationResult { f, eigen, transform, unitary_images })
}

/// Left regular representation: `L(a_y)[z][x] = c` where `a_y a_x = c a_z`.
pub fn regular_representation(table: &SubalgebraTable) -> Result<MatrixRep<'_>> {
    let d = table.dim();
    let images = (0..d)
        .map(|y| {
            let mut m = ComplexMatrix::zeros(d, d);
            for x in 0..d {
                let p = table.product(y, x);
                m[(p.index, x)] += p.coeff.to_complex64();
            }
            m
        })
        .collect();
    MatrixRep::new(table, images, "regular")
}

/// `P^{(j)}_{λk} = (d_j/d) Σ_y D^{(j)}_{λk}(a_y)* L(a_y)` on the regular space.
pub fn matrix_element_projector(rep: &MatrixRep<'_>, regular: &MatrixRep<'_>, lambda: usize, k: usize) -> Result<ComplexMatrix> {
    let dj = rep.dim();
    for index in [lambda, k] {
        if index >= dj {
            return Err(Error::IndexOutOfRange { index, len: dj });
        }
    }
    let d = rep.table().dim();
    if regular.table().dim() != d || regular.dim() != d {
        return Err(Error::TableMismatch("regular representation does not match".into()));
    }
    let weight = dj as f64 / d as f64;
    let mut out = ComplexMatrix::zeros(d, d);
    for (img, l) in rep.images().iter().zip(regular.images()) {
        out = &out + &l.scale(img[(lambda, k)].conj() * weight);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;
    use crate::structure::{close_generators, full_clifford_table, DEFAULT_CLOSURE_CAP};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn table(gens: &[&str], m: usize) -> SubalgebraTable {
        let g: Vec<_> = gens.iter().map(|t| parse_element(t).unwrap()).collect();
        close_generators(&g, m, DEFAULT_CLOSURE_CAP).unwrap()
    }

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from(v)
    }

    #[test]
    fn pseudoscalar_images() {
        let cl3 = full_clifford_table(1).unwrap();
        let i123 = cl3.index_of(&parse_element("1 [g123]").unwrap().as_single_term().unwrap().0.clone()).unwrap();
        let plus = sign_rep_matrices(&SignRep::positive(1), &cl3).unwrap();
        let minus = sign_rep_matrices(&SignRep::new(vec![-1]).unwrap(), &cl3).unwrap();
        let iid = ComplexMatrix::identity(2);
        assert!(max_abs_diff(&plus.image(i123).scale(c(0.0, 1.0)), &iid.scale(c(-1.0, 0.0))) < 1e-15);
        assert!(max_abs_diff(&minus.image(i123).scale(c(0.0, 1.0)), &iid) < 1e-15);
        assert!(plus.homomorphism_residual() < 1e-12);
        assert!(minus.homomorphism_residual() < 1e-12);
    }

    #[test]
    fn two_factor_sign_patterns() {
        let t = full_clifford_table(2).unwrap();
        let b = |s: &str| t.index_of(parse_element(s).unwrap().as_single_term().unwrap().0).unwrap();
        let (left, right) = (b("1 [g123 1]"), b("1 [1 g123]"));
        let mut patterns = Vec::new();
        for s in SignRep::all(2) {
            let r = sign_rep_matrices(&s, &t).unwrap();
            let sign_of = |z: usize| (r.image(z).trace() * c(0.0, 1.0)).re.signum() as i64;
            patterns.push((sign_of(left), sign_of(right)));
        }
        patterns.sort();
        assert_eq!(patterns, vec![(-1, -1), (-1, 1), (1, -1), (1, 1)]);
    }

    #[test]
    fn equivalence_verdicts() {
        let cl3 = full_clifford_table(1).unwrap();
        let reps: Vec<_> = SignRep::all(1).iter().map(|s| sign_rep_matrices(s, &cl3).unwrap()).collect();
        let v = distinguish_reps(&reps).unwrap();
        assert_eq!(v[0][1], Equivalence::Nonequivalent);
        assert_eq!(v[1][0], Equivalence::Nonequivalent);
        assert_eq!(v[0][0], Equivalence::Undetermined);
        let s = ComplexMatrix::from_rows(&[vec![c(2.0, 1.0), c(0.5, 0.0)], vec![c(0.0, -1.0), c(1.0, 0.0)]]).unwrap();
        // inverse of [[a, b], [c, d]] is [[d, -b], [-c, a]] / det
        let det = s[(0, 0)] * s[(1, 1)] - s[(0, 1)] * s[(1, 0)];
        let s_inv = ComplexMatrix::from_rows(&[vec![s[(1, 1)] / det, -s[(0, 1)] / det], vec![-s[(1, 0)] / det, s[(0, 0)] / det]]).unwrap();
        let conj = reps[0].conjugate(&s, &s_inv).unwrap();
        let v = distinguish_reps(&[reps[0].clone(), conj]).unwrap();
        assert_eq!(v[0][1], Equivalence::Undetermined);
        let t3 = full_clifford_table(3).unwrap();
        let reps3: Vec<_> = SignRep::all(3).iter().map(|s| sign_rep_matrices(s, &t3).unwrap()).collect();
        let v = distinguish_reps(&reps3).unwrap();
        for (a, row) in v.iter().enumerate() {
            for (b, e) in row.iter().enumerate() {
                assert_eq!(*e == Equivalence::Nonequivalent, a != b);
            }
        }
    }

    #[test]
    fn grand_orthogonality_cl3() {
        let cl3 = full_clifford_table(1).unwrap();
        let plus = sign_rep_matrices(&SignRep::positive(1), &cl3).unwrap();
        let minus = sign_rep_matrices(&SignRep::new(vec![-1]).unwrap(), &cl3).unwrap();
        assert!(verify_grand_orthogonality(&plus, &plus).unwrap() <= REP_TOL);
        assert!(verify_grand_orthogonality(&plus, &minus).unwrap() <= REP_TOL);
        let trivial = close_generators(&[], 1, 1).unwrap();
        let one = MatrixRep::from_characters(&trivial, &[g(1)], "trivial").unwrap();
        assert!(verify_grand_orthogonality(&one, &one).unwrap() <= REP_TOL);
    }

    #[test]
    fn grand_orthogonality_rejects_non_unitary() {
        let cl3 = full_clifford_table(1).unwrap();
        let plus = sign_rep_matrices(&SignRep::positive(1), &cl3).unwrap();
        let s = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let s_inv = ComplexMatrix::from_real_rows(&[&[1.0, -1.0], &[0.0, 1.0]]).unwrap();
        let skew = plus.conjugate(&s, &s_inv).unwrap();
        assert!(matches!(verify_grand_orthogonality(&skew, &plus), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn a1_character_table_orders() {
        let t = table(&["1 [g3 g3 1]", "1 [1 g3 g3]"], 3);
        let expected = vec![vec![g(1), g(1), g(1), g(1)], vec![g(1), g(-1), g(1), g(-1)], vec![g(1), g(-1), g(-1), g(1)], vec![g(1), g(1), g(-1), g(-1)]];
        let gray = character_table_abelian(&t, RowOrder::Gray).unwrap();
        assert_eq!(gray.rows, expected);
        let lex = character_table_abelian(&t, RowOrder::Lexicographic).unwrap();
        assert_eq!(lex.rows, vec![expected[0].clone(), expected[3].clone(), expected[1].clone(), expected[2].clone()]);
        assert!(lex.orthogonality_holds() && lex.is_multiplicative(&t));
    }

    #[test]
    fn trivial_and_bivector_tables() {
        let t = close_generators(&[], 2, 1).unwrap();
        let ct = character_table_abelian(&t, RowOrder::default()).unwrap();
        assert_eq!(ct.rows, vec![vec![g(1)]]);
        assert!(character_orthogonality_residual(&ct));
        let t = table(&["1 [g1 g1 g1 g1]", "1 [g2 g2 g2 g2]"], 4);
        let ct = character_table_abelian(&t, RowOrder::default()).unwrap();
        assert_eq!(ct.num_rows(), 4);
        assert!(character_orthogonality_residual(&ct));
        assert!(ct.is_multiplicative(&t));
    }

    #[test]
    fn phase_characters() {
        // γ₁γ₂ squares to -1, so its characters are ±i.
        let t = table(&["1 [g12]"], 1);
        let ct = character_table_abelian(&t, RowOrder::default()).unwrap();
        assert_eq!(ct.rows, vec![vec![g(1), GaussianRational::i()], vec![g(1), -GaussianRational::i()]]);
        assert!(ct.orthogonality_holds());
    }

    #[test]
    fn character_table_preconditions() {
        let cl3 = full_clifford_table(1).unwrap();
        assert!(matches!(character_table_abelian(&cl3, RowOrder::default()), Err(Error::NotCommutative { .. })));
        assert!(matches!(
            character_table_abelian(&crate::structure::dual_numbers(), RowOrder::default()),
            Err(Error::NotBijective { .. })
        ));
    }

    #[test]
    fn flipped_sign_breaks_orthogonality() {
        let t = table(&["1 [g3 g3 1]", "1 [1 g3 g3]"], 3);
        let mut ct = character_table_abelian(&t, RowOrder::Gray).unwrap();
        ct.rows[2][1] = -&ct.rows[2][1];
        assert!(!character_orthogonality_residual(&ct));
    }

    #[test]
    fn unitarize_pauli_and_skewed() {
        let cl3 = full_clifford_table(1).unwrap();
        let plus = sign_rep_matrices(&SignRep::positive(1), &cl3).unwrap();
        let u = unitarize(&plus).unwrap();
        assert!(max_abs_diff(&u.f, &ComplexMatrix::identity(2).scale(c(8.0, 0.0))) < 1e-12);
        assert!(u.eigen.values.iter().all(|l| (l - 8.0).abs() < 1e-12));
        for (a, b) in u.unitary_images.iter().zip(plus.images()) {
            assert!(max_abs_diff(a, b) < 1e-12);
        }
        let s = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let s_inv = ComplexMatrix::from_real_rows(&[&[1.0, -1.0], &[0.0, 1.0]]).unwrap();
        let skew = plus.conjugate(&s, &s_inv).unwrap();
        assert!(skew.unitarity_defect() > 0.1);
        let u = unitarize(&skew).unwrap();
        assert!(u.max_unitarity_defect() <= UNITARY_TOL);
        let rep = u.as_rep(&cl3, "skew").unwrap();
        assert!(rep.homomorphism_residual() <= 1e-9);
        let again = unitarize(&rep).unwrap();
        for (a, b) in again.unitary_images.iter().zip(rep.images()) {
            assert!(max_abs_diff(a, b) <= 1e-8);
        }
        // still the same irrep: central traces agree
        assert_eq!(distinguish_reps(&[rep, plus]).unwrap()[0][1], Equivalence::Undetermined);
    }

    #[test]
    fn unitarize_one_dimensional() {
        let t = table(&["1 [g12]"], 1);
        let rep = MatrixRep::from_characters(&t, &[g(1), GaussianRational::i()], "chi").unwrap();
        let u = unitarize(&rep).unwrap();
        assert!(u.transform[(0, 0)].im.abs() < 1e-15 && u.transform[(0, 0)].re > 0.0);
    }

    #[test]
    fn matrix_element_projectors_cl3() {
        let cl3 = full_clifford_table(1).unwrap();
        let reg = regular_representation(&cl3).unwrap();
        assert!(reg.homomorphism_residual() < 1e-12);
        let reps: Vec<_> = SignRep::all(1).iter().map(|s| sign_rep_matrices(s, &cl3).unwrap()).collect();
        let p = |j: usize, a: usize, b: usize| matrix_element_projector(&reps[j], &reg, a, b).unwrap();
        let mut total = ComplexMatrix::zeros(8, 8);
        for j in 0..2 {
            for jp in 0..2 {
                for (l, k, mu, nu) in index_quads(2) {
                    let lhs = &p(j, l, k) * &p(jp, mu, nu);
                    let rhs = if j == jp && k == mu { p(j, l, nu) } else { ComplexMatrix::zeros(8, 8) };
                    assert!(max_abs_diff(&lhs, &rhs) <= 1e-8);
                }
            }
            for k in 0..2 {
                total = &total + &p(j, k, k);
            }
        }
        assert!(max_abs_diff(&total, &ComplexMatrix::identity(8)) <= 1e-8);
        assert!(matches!(matrix_element_projector(&reps[0], &reg, 2, 0), Err(Error::IndexOutOfRange { .. })));
    }

    fn index_quads(n: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut v = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        v.push((a, b, c, d));
                    }
                }
            }
        }
        v
    }
}
