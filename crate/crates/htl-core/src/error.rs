use alloc::boxed::Box;
use thiserror::Error;

/// Which principal-branch cut an evaluation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cut {
    /// `(-inf, -1]`, the cut of `Log(1 + z)`.
    NegativeRay,
    /// `[-1, 0]`, the cut of `Log(1 + 1/z)` and of the Cauchy transforms.
    UnitSegment,
}

impl core::fmt::Display for Cut {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Cut::NegativeRay => f.write_str("(-inf, -1]"),
            Cut::UnitSegment => f.write_str("[-1, 0]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument of zero is undefined")]
    ZeroArgument,
    #[error("point {re} + {im}i lies on the branch cut {cut}")]
    OnBranchCut { cut: Cut, re: f64, im: f64 },
    #[error("evaluation at the singular point {re} + {im}i")]
    SingularPoint { re: f64, im: f64 },
    #[error("sample {index} failed: {source}")]
    Sample { index: usize, source: Box<Error> },
    #[error("grid size {0} must be a power of two and at least 16")]
    GridSize(usize),
    #[error("{requested} coefficients per side need more than {samples} samples")]
    InsufficientResolution { requested: usize, samples: usize },
    #[error("{need} samples required, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("bandwidth overflow: symbol needs {required} coefficients per side, has {available}")]
    BandwidthOverflow { required: usize, available: usize },
    #[error("degenerate symbol: modulus {modulus:e} at sample {index}")]
    DegenerateSymbol { index: usize, modulus: f64 },
    #[error("argument jump of {step} rad at sample {index}; grid too coarse to unwrap")]
    UnwrapJump { index: usize, step: f64 },
    #[error("non-integrable sample at x = {0}")]
    NonIntegrable(f64),
    #[error("arc of length {0:e} is degenerate")]
    DegenerateArc(f64),
    #[error("empty arc family")]
    EmptyFamily,
    #[error("range spans {got:.3} decades, need at least {need}")]
    InsufficientDecades { got: f64, need: f64 },
    #[error("co-analytic energy {0:e} exceeds tolerance")]
    NotAnalytic(f64),
    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("{0}")]
    InvalidArgument(&'static str),
    #[error("linear algebra failure: {0}")]
    Numerical(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn at_sample(self, index: usize) -> Error {
        Error::Sample { index, source: Box::new(self) }
    }
}
