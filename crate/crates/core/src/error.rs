use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("e = {0} is not a valid fiber-section invariant (need e >= 1)")]
    InvalidSurface(i64),
    #[error("operation requires a K3 surface (e = 2), got e = {0}")]
    NotK3(i64),
    #[error("divisor {0} has no RDV form (its Θ-coefficient vanishes)")]
    NoRdvForm(String),
    #[error("the zero charge has no phase")]
    ZeroCharge,
    #[error("kernel multiplicities must not all vanish")]
    ZeroMultiplicity,
    #[error("kernel class for regime `{regime}` needs {expected} multiplicities, got {got}")]
    KernelArity {
        regime: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("ray [{0}] must have nonnegative coordinates, not both zero")]
    InvalidRay(String),
    #[error("regimes `{0}` and `{1}` do not match")]
    RegimeMismatch(&'static str, &'static str),
    #[error("kernel phases in regime `{0}` depend on the approach ray")]
    RayDependentRegime(&'static str),
    #[error("rank must be positive, got {0}")]
    NonPositiveRank(String),
    #[error("H must have positive self-intersection, got H² = {0}")]
    NotBig(String),
    #[error("c must be orthogonal to H, got H·c = {0}")]
    NotOrthogonal(String),
    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: String },
    #[error("fiber degree y must be 0 or 1, got {0}")]
    InvalidFiberDegree(String),
    #[error("denominator {0} vanishes")]
    SingularDenominator(&'static str),
    #[error("cannot parse {what} from `{input}`")]
    Parse { what: &'static str, input: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
