use thiserror::Error;

/// Errors raised by the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("denominator vanishes on the zero section")]
    SingularAtZeroSection,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("operands live in different chart contexts")]
    ContextMismatch,
    #[error("operand is not homogeneous")]
    NonHomogeneous,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("invalid mixed element: {0}")]
    InvalidElement(String),
    #[error("horizontal part is not gamma_S")]
    NotAConnection,
    #[error("dilation parameter is zero")]
    ZeroParameter,
    #[error("coefficient is not polynomial in the fiber variables")]
    NotFiberPolynomial,
    #[error("bivector is not horizontally nondegenerate")]
    NotHorizontallyNondegenerate,
    #[error("(2,0) part is degenerate")]
    DegenerateFPart,
    #[error("restriction to the zero section is not a symplectic (2,0) form")]
    LeafCheckFailed,
    #[error("coefficient not divisible by the formal parameter")]
    NotDivisibleByT,
    #[error("element is not Dirac")]
    NotDirac,
    #[error("element has fiber order above one")]
    NotFirstOrder,
    #[error("structure constants violate the Jacobi identity")]
    JacobiFailed,
    #[error("factors share variables")]
    VariableOverlap,
    #[error("periods are singular at the requested point")]
    SingularPoint,
    #[error("entry is not a rational multiple of PI")]
    NonRationalInput,
    #[error("zero monodromy generator")]
    ZeroGenerator,
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
}

impl Error {
    /// Variant name, e.g. `"LeafCheckFailed"`.
    pub fn kind(&self) -> String {
        let dbg = format!("{self:?}");
        dbg.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
    }
}

pub type Result<T> = std::result::Result<T, Error>;
