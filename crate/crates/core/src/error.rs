use thiserror::Error as ThisError;

/// Errors raised anywhere in the algebra, structure, linear-algebra,
/// representation and DFS layers.
#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid scalar literal `{0}`")]
    InvalidScalar(String),
    #[error("factor count mismatch: {left} vs {right}")]
    FactorMismatch { left: usize, right: usize },
    #[error("factor count must be at least 1")]
    NoFactors,
    #[error("factor count {got} exceeds limit {limit}")]
    TooManyFactors { got: usize, limit: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("cannot infer the factor count of the zero element")]
    UnknownFactorCount,

    #[error("generator {index} is not a single blade with unit-modulus coefficient")]
    NotUnitBlade { index: usize },
    #[error("closure exceeded the cap of {cap} basis elements")]
    ClosureCap { cap: usize },
    #[error("algebra is not semisimple (trace-form determinant {determinant})")]
    NotSemisimple { determinant: String },
    #[error("irrep dimensions are ambiguous: {0:?}")]
    AmbiguousDims(Vec<Vec<usize>>),
    #[error("no irrep dimension assignment satisfies d = {d} with {k} parts")]
    NoDimSolution { d: usize, k: usize },
    #[error("invalid structure table: {0}")]
    InvalidTable(String),
    #[error("left multiplication by a{} is not a bijection of the basis", .x + 1)]
    NotBijective { x: usize },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("eigenvalue {0:e} is not above the positivity tolerance")]
    SingularSpectrum(f64),

    #[error("representation is not unitary (residual {0:e})")]
    NotUnitary(f64),
    #[error("algebra is not commutative: a{} and a{} do not commute", .x + 1, .y + 1)]
    NotCommutative { x: usize, y: usize },
    #[error("irreps are not all one-dimensional")]
    NotAllOneDimensional,
    #[error("character enumeration found {found} rows, expected {expected}")]
    CharacterCount { found: usize, expected: usize },
    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("representation dimensions differ: {0} vs {1}")]
    RepDimension(usize, usize),

    #[error("character table does not match the algebra: {0}")]
    TableMismatch(String),
    #[error("eigen check failed for irrep {irrep} at basis element {basis}")]
    EigenCheckFailed { irrep: usize, basis: usize },
    #[error("projector invariant violated: {0}")]
    ProjectorInvariant(String),
    #[error("coefficient count {got} does not match basis size {expected}")]
    CoefficientCount { got: usize, expected: usize },
    #[error("state component is zero")]
    ZeroComponent,
}

pub type Result<T> = std::result::Result<T, Error>;
