//! Exact arithmetic for polynomial Pell equations `u² − D·v² = 1` over ℚ[t].
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`] — rational scalars, real quadratic numbers `a + b√l`, and
//!   rational values of cosine at rational angles;
//! * [`poly`] — dense univariate polynomials generic over the scalar type,
//!   with exact division, gcd, squarefree decomposition, resultants, and
//!   truncated Laurent series (including the formal square root of an even
//!   degree polynomial);
//! * [`factor`] — factorization over ℚ: squarefree split, modular
//!   factorization, Hensel lifting, and subset recombination, plus a
//!   degree-capped variant and rational root extraction;
//! * [`pell`] — the continued-fraction solver for `u² − D·v² = 1`, solution
//!   generation, and a certified non-Pellian test;
//! * [`psi`] — the Chebyshev-like polynomials ψ_m describing new solution
//!   denominators, real cyclotomic polynomials, and the odd-index split;
//! * [`newfactors`] — new parts of solution denominators, their factor
//!   tables, and the degree-capped factor atlas;
//! * [`reproots`] — repeated roots of solution denominators: the finite
//!   search procedure, admissibility filters, and quadratic reconstruction;
//! * [`builder`] — deciding and constructing Pellian polynomials of the
//!   shape F²·D;
//! * [`verify`] — a battery of named self-checks used by the CLI.
//!
//! All arithmetic is exact; there is no floating point anywhere in the
//! computational paths.

pub mod builder;
pub mod factor;
pub mod newfactors;
pub mod numeric;
pub mod pell;
pub mod poly;
pub mod psi;
pub mod reproots;
pub mod verify;

pub use numeric::{QuadNum, Rational};
pub use pell::{PellInstance, SolutionIndex};
pub use poly::{LaurentTail, Poly};

/// A dense univariate polynomial with rational coefficients, the concrete
/// instantiation used throughout the higher-level modules.
pub type QPoly = Poly<Rational>;

/// Errors shared across the crate. Certified mathematical negatives
/// (odd degree, non-square leading coefficient, perfect square) are kept
/// distinct from budget exhaustion and from plain misuse so that callers
/// can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated (wrong degree, zero
    /// where nonzero is required, out-of-range index, malformed text, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// deg D is odd, so √D has no Laurent expansion in t⁻¹ and the Pell
    /// equation has no nontrivial solutions.
    #[error("D has odd degree; the equation has no nontrivial solutions")]
    NotPellianOddDegree,

    /// The leading coefficient of D is not a square in ℚ, so √D has no
    /// Laurent expansion over ℚ and the equation has no nontrivial solutions.
    #[error("the leading coefficient of D is not a rational square; the equation has no nontrivial solutions")]
    NotPellianLeadingCoeff,

    /// D is a perfect square in ℚ[t]; then u² − D v² = 1 factors as a
    /// product of two polynomials summing/differing to constants and only
    /// the trivial solutions (±1, 0) exist.
    #[error("D is a perfect square; only the trivial solutions (±1, 0) exist")]
    OnlyTrivialSolutions,

    /// A step budget ran out before the continued fraction of √D became
    /// periodic. This is an "unknown" verdict, not a certificate.
    #[error("no solution found within {steps} continued-fraction steps; undecided")]
    BudgetExhausted { steps: usize },

    /// The truncated series square root failed its square-back check even
    /// after one retry at doubled precision. Indicates a bug or an
    /// unreasonable precision request, not a property of the input.
    #[error("series square root failed validation at doubled precision")]
    PrecisionExhausted,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for verdicts that certify the absence of nontrivial solutions
    /// (as opposed to misuse or an exhausted budget).
    pub fn is_certified_negative(&self) -> bool {
        matches!(
            self,
            Error::NotPellianOddDegree
                | Error::NotPellianLeadingCoeff
                | Error::OnlyTrivialSolutions
        )
    }
}
