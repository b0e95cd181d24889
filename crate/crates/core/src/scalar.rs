//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Numerical tolerances used by validating constructors and the eigensolver.
///
/// Values are stored as `f64` and converted to the working precision on use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum entry deviation of `a` from `a†` for a matrix to count as Hermitian.
    pub hermitian: f64,
    /// Off-diagonal Frobenius norm below which Jacobi iteration stops.
    pub convergence: f64,
    pub max_sweeps: usize,
    /// Trace, norm and eigenvalue slack for states.
    pub state: f64,
    /// Maximum entry of `U†U - I` for a matrix to count as unitary.
    pub unitary: f64,
    /// Slack on probability vectors summing to one.
    pub probability: f64,
    /// Channel terms with probability below this are dropped at construction.
    pub prune: f64,
}

impl Tolerances {
    pub const F64: Tolerances = Tolerances {
        hermitian: 1e-10,
        convergence: 1e-12,
        max_sweeps: 100,
        state: 1e-10,
        unitary: 1e-10,
        probability: 1e-10,
        prune: 1e-15,
    };

    pub const F32: Tolerances = Tolerances {
        hermitian: 1e-5,
        convergence: 1e-6,
        max_sweeps: 100,
        state: 1e-5,
        unitary: 1e-5,
        probability: 1e-5,
        prune: 1e-15,
    };
}

/// Real floating-point scalar the library is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Default tolerances for this precision.
    const TOL: Tolerances;

    /// Converts an `f64` literal into this precision.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f64 {
    const TOL: Tolerances = Tolerances::F64;
}

impl Real for f32 {
    const TOL: Tolerances = Tolerances::F32;
}
