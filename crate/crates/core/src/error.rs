use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants fall in two groups: malformed input (see [`Error::is_input_error`])
/// and mathematical failures, where the input was well formed but a
/// precondition or an identity did not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field arithmetic
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("name `{0}` is already declared")]
    NameCollision(String),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("generator `{generator}` fails integrability: D_{first}(D_{second} {generator}) != D_{second}(D_{first} {generator})")]
    IntegrabilityViolation {
        generator: String,
        first: String,
        second: String,
    },
    #[error("partial derivative of `{0}` refers to a symbol declared after it")]
    ForwardReference(String),

    // operator algebra
    #[error("operators live in different field towers")]
    TowerMismatch,
    #[error("the zero operator has no principal symbol")]
    ZeroOperator,
    #[error("divisor must be a first-order operator")]
    NotFirstOrder,
    #[error("coefficient of D{0} in the divisor is zero")]
    VarCoefficientZero(String),
    #[error("gauge factor must be nonzero")]
    ZeroGauge,
    #[error("coordinate maps are not mutually inverse")]
    NotInverse,
    #[error("coordinate map has a singular Jacobian")]
    SingularJacobian,
    #[error("change of variables cannot act on declared generator `{0}`")]
    GeneratorInCoordinateChange(String),
    #[error("coordinate map must list one expression per variable ({expected}), got {got}")]
    CoordinateArity { expected: usize, got: usize },
    #[error("discriminant {0} is not a perfect square in the coefficient field")]
    NotAPerfectSquare(String),
    #[error("principal symbol is not a binary quadratic form: {0}")]
    NotQuadratic(String),

    // ILT engine
    #[error("no ILT: [H, X2] is not proportional to H (residual {residual})")]
    NoIlt { residual: String },
    #[error("H is the zero operator")]
    ZeroH,
    #[error("X2 has order {0}; only intertwiners of order at most one carry a function psi")]
    HigherOrderIntertwiner(u32),
    #[error("H*X2 != (X2 + psi)*H (residual {residual})")]
    ConditionViolated { residual: String },
    #[error("coefficients of the seed operator depend on `{0}`")]
    SeedDependsOnVar(String),
    #[error("theta functions must be nonzero")]
    ZeroTheta,
    #[error("certificate identity `{0}` failed")]
    CertificateFailure(String),

    // classical catalogue
    #[error("Laplace invariant {0} vanishes; the transformation is undefined")]
    ZeroInvariant(&'static str),
    #[error("operator is not of the form {0}")]
    UnexpectedShape(String),
    #[error("operators are not univariate in a common derivation")]
    NotUnivariate,
    #[error("L is right-divisible by M")]
    DivisibleByM,
    #[error("seed {0} does not solve the equation")]
    SeedNotASolution(String),
    #[error("seeds are degenerate: {0}")]
    DegenerateSeeds(String),
    #[error("[H, X2] is not proportional to H for the constructed operators")]
    PsiNotProportional,
    #[error("coefficient b vanishes")]
    ZeroB,
    #[error("seed is not an eigenfunction: A h != c h")]
    SeedNotEigen,
    #[error("{0} depends on `{1}`")]
    CoefficientDependsOnVar(String, String),
    #[error("seed is not annihilated by the D_x-coefficient operator")]
    SeedNotAnnihilated,
    #[error("L annihilates the seed; the transformation degenerates")]
    DegeneratePetren,
    #[error("H and X2 are proportional")]
    ProportionalInputs,
    #[error("[H, X2] is not a combination of H and X2")]
    NoDecomposition,
    #[error("kappa, rho do not decompose [H, X2] (residual {residual})")]
    DecompositionMismatch { residual: String },
    #[error("alpha does not solve [X2, alpha] + kappa*alpha = rho (residual {residual})")]
    AlphaNotASolution { residual: String },

    // intertwining solver
    #[error("intertwining operator M must have order one")]
    NotFirstOrderM,
    #[error("L must have order at least one")]
    LowOrderL,
    #[error("coefficient of D{0} in M is zero")]
    ZeroAlphaCoefficient(String),
    #[error("M1*L != L1*M (residual {residual})")]
    NotIntertwining { residual: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),

    // text front end
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown symbol `{name}` at {line}:{column}")]
    UnknownSymbol {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("negative exponent at {line}:{column}")]
    NegativeExponent { line: usize, column: usize },
    #[error("expected a function, got an operator of order {0}")]
    ExpectedFunction(u32),
    #[error("workspace: {0}")]
    Workspace(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by malformed input rather than a failed
    /// mathematical condition. The command line maps these to exit code 2.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownVariable(_)
                | Error::NameCollision(_)
                | Error::InvalidName(_)
                | Error::ForwardReference(_)
                | Error::IntegrabilityViolation { .. }
                | Error::TowerMismatch
                | Error::CoordinateArity { .. }
                | Error::Syntax { .. }
                | Error::UnknownSymbol { .. }
                | Error::NegativeExponent { .. }
                | Error::ExpectedFunction(_)
                | Error::Workspace(_)
                | Error::Io(_)
        )
    }
}
