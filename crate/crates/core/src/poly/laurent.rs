//! Truncated Laurent series in descending powers of t, and the formal
//! square root of an even-degree polynomial.
//!
//! A `LaurentTail` stores a finite window of coefficients downward from its
//! top exponent. Everything above the window is exactly zero; everything
//! below it is unknown. Series built from polynomials are exact and may be
//! zero-padded; arithmetic tracks how far down the result is trustworthy.

use num_traits::Zero;

use crate::numeric::{rational_sqrt_exact, ratio, Rational};
use crate::poly::Poly;
use crate::{Error, Result};

/// Σ cᵢ·t^(top−i) for i in 0..window, with c₀ ≠ 0 unless the series is
/// identically zero (empty window).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentTail {
    top: i64,
    coeffs: Vec<Rational>,
}

impl LaurentTail {
    pub fn zero() -> Self {
        LaurentTail { top: 0, coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact series of a polynomial; the window covers every nonzero term.
    pub fn from_poly(p: &Poly<Rational>) -> Self {
        match p.degree() {
            None => LaurentTail::zero(),
            Some(d) => LaurentTail {
                top: d as i64,
                coeffs: p.coeffs().iter().rev().cloned().collect(),
            },
        }
    }

    /// Exact series of a polynomial with the window extended to `window`
    /// terms (a polynomial is exactly zero below t⁰, so padding is sound).
    pub fn from_poly_with_window(p: &Poly<Rational>, window: usize) -> Self {
        let mut s = Self::from_poly(p);
        if !s.is_zero() {
            s.pad_to(window);
        }
        s
    }

    /// Exponent of the leading term; None for zero.
    pub fn top_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.top)
    }

    /// Number of known coefficients downward from the top.
    pub fn window_len(&self) -> usize {
        self.coeffs.len()
    }

    /// The known coefficient of t^e: Some(0) above the window (there is
    /// nothing up there), the stored value inside it, None below it.
    pub fn coeff_at(&self, e: i64) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if e > self.top {
            return Some(Rational::zero());
        }
        let i = (self.top - e) as usize;
        self.coeffs.get(i).cloned()
    }

    /// Keep at most `window` known terms from the top.
    pub fn truncate(&self, window: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(window);
        s.normalize();
        s
    }

    /// Extend the window with zeros. Caller asserts the series is exactly
    /// zero below the current window (true for Newton iterates, which are
    /// finite by construction).
    pub(crate) fn pad_to(&mut self, window: usize) {
        if !self.is_zero() {
            while self.coeffs.len() < window {
                self.coeffs.push(Rational::zero());
            }
        }
    }

    fn normalize(&mut self) {
        while self.coeffs.first().is_some_and(|c| c.is_zero()) {
            self.coeffs.remove(0);
            self.top -= 1;
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentTail::zero();
        }
        LaurentTail {
            top: self.top,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Sum; the window is the overlap of the known ranges. Panics if every
    /// known coefficient cancels (the result would start below the window,
    /// where nothing is known).
    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let top = self.top.max(rhs.top);
        let bottom = (self.top - self.coeffs.len() as i64 + 1)
            .max(rhs.top - rhs.coeffs.len() as i64 + 1);
        let mut out = Vec::with_capacity((top - bottom + 1) as usize);
        let mut e = top;
        while e >= bottom {
            let a = self.coeff_at(e).expect("within window");
            let b = rhs.coeff_at(e).expect("within window");
            out.push(a + b);
            e -= 1;
        }
        let mut s = LaurentTail { top, coeffs: out };
        s.normalize();
        assert!(
            !s.coeffs.is_empty(),
            "series sum cancelled through the whole known window"
        );
        s
    }

    /// Product, keeping `keep` terms; requires both windows to be at least
    /// `keep` deep (leading coefficients are nonzero, so precision is the
    /// minimum of the operand windows).
    pub fn mul(&self, rhs: &Self, keep: usize) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return LaurentTail::zero();
        }
        assert!(keep >= 1, "empty product window requested");
        assert!(
            self.coeffs.len() >= keep && rhs.coeffs.len() >= keep,
            "product window {keep} exceeds operand windows {} and {}",
            self.coeffs.len(),
            rhs.coeffs.len()
        );
        let mut out = vec![Rational::zero(); keep];
        for (i, a) in self.coeffs.iter().take(keep).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(keep - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentTail {
            top: self.top + rhs.top,
            coeffs: out,
        }
    }

    /// Quotient self/rhs to `keep` terms; rhs must be nonzero and both
    /// windows at least `keep` deep.
    pub fn div(&self, rhs: &Self, keep: usize) -> Self {
        assert!(!rhs.is_zero(), "division by the zero series");
        if self.is_zero() {
            return LaurentTail::zero();
        }
        assert!(keep >= 1, "empty quotient window requested");
        assert!(
            self.coeffs.len() >= keep && rhs.coeffs.len() >= keep,
            "quotient window {keep} exceeds operand windows {} and {}",
            self.coeffs.len(),
            rhs.coeffs.len()
        );
        let mut rem: Vec<Rational> = self.coeffs[..keep].to_vec();
        let b0 = &rhs.coeffs[0];
        let mut q = Vec::with_capacity(keep);
        for k in 0..keep {
            let qk = &rem[k] / b0;
            for j in 1..(keep - k) {
                let t = &qk * &rhs.coeffs[j];
                rem[k + j] -= t;
            }
            q.push(qk);
        }
        let mut s = LaurentTail {
            top: self.top - rhs.top,
            coeffs: q,
        };
        s.normalize();
        s
    }

    /// The terms with exponent ≥ 0 as a polynomial. The window must reach
    /// down to t⁰ (it always does at the precisions used by the solver).
    pub fn polynomial_part(&self) -> Poly<Rational> {
        if self.is_zero() || self.top < 0 {
            return Poly::zero();
        }
        let need = self.top as usize + 1;
        assert!(
            self.coeffs.len() >= need,
            "window of {} terms does not reach t^0 from t^{}",
            self.coeffs.len(),
            self.top
        );
        Poly::new(self.coeffs[..need].iter().rev().cloned().collect())
    }
}

/// Formal square root of d as a Laurent series in t⁻¹, to `precision`
/// known terms, with the branch whose leading coefficient is the positive
/// square root of lc(d).
///
/// Fails with a certified negative if deg d is odd or lc(d) is not a square
/// in ℚ — in both cases √d has no expansion over ℚ and the Pell equation
/// for d has no nontrivial solutions. The result is validated by squaring;
/// on mismatch the computation retries once at doubled precision and then
/// reports `PrecisionExhausted`.
pub fn laurent_sqrt(d: &Poly<Rational>, precision: usize) -> Result<LaurentTail> {
    let deg = match d.degree() {
        None => return Err(Error::InvalidArgument("square root of the zero polynomial".into())),
        Some(deg) => deg,
    };
    if deg % 2 == 1 {
        return Err(Error::NotPellianOddDegree);
    }
    let lead = rational_sqrt_exact(d.lc()).ok_or(Error::NotPellianLeadingCoeff)?;
    let precision = precision.max(1);
    for attempt in [precision, 2 * precision] {
        let y = sqrt_newton(d, deg / 2, &lead, attempt);
        if square_back_ok(&y, d, attempt) {
            return Ok(y.truncate(precision));
        }
    }
    Err(Error::PrecisionExhausted)
}

fn sqrt_newton(d: &Poly<Rational>, half_deg: usize, lead: &Rational, precision: usize) -> LaurentTail {
    let mut y = LaurentTail {
        top: half_deg as i64,
        coeffs: vec![lead.clone()],
    };
    let half = ratio(1, 2);
    let mut correct = 1;
    while correct < precision {
        let next = (2 * correct).min(precision);
        let d_tail = LaurentTail::from_poly_with_window(d, next);
        let mut y_wide = y.clone();
        y_wide.pad_to(next);
        let q = d_tail.div(&y_wide, next);
        y = y_wide.add(&q).scale(&half).truncate(next);
        y.pad_to(next);
        correct = next;
    }
    y
}

fn square_back_ok(y: &LaurentTail, d: &Poly<Rational>, window: usize) -> bool {
    let ysq = y.mul(y, window);
    let top = match ysq.top_degree() {
        Some(t) => t,
        None => return d.is_zero(),
    };
    for i in 0..window as i64 {
        let e = top - i;
        let expect = if e >= 0 { d.coeff(e as usize) } else { Rational::zero() };
        match ysq.coeff_at(e) {
            Some(c) if c == expect => {}
            _ => return false,
        }
    }
    true
}
