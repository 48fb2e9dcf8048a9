//! Dense univariate polynomials, generic over the coefficient type.
//!
//! `Poly<T>` stores coefficients in ascending order with no trailing zeros
//! (the zero polynomial is the empty list). Ring operations need only
//! [`Coeff`]; division with remainder needs [`FieldCoeff`]. Polynomials over
//! a field are themselves a `Coeff`, so `Poly<Poly<Rational>>` works as the
//! bivariate instantiation used by resultants.

mod gcd;
mod laurent;
mod resultant;
mod text;

pub use gcd::{content_primitive_int, gcd, squarefree_part, yun_squarefree};
pub(crate) use gcd::poly_from_ints_big;
pub use laurent::{laurent_sqrt, LaurentTail};
pub use resultant::{min_poly_of_image, resultant};
pub use text::ParseError;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Minimal bounds for polynomial ring arithmetic: exact equality, 0, 1,
/// and the ring operations. Satisfied by `Rational`, and by `Poly<K>` over
/// any field `K`, which is what makes nesting possible.
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

/// Coefficients forming a field: adds exact division. `Poly<T>` deliberately
/// does not implement `Div`, so nested polynomials only ever get ring
/// operations plus [`ExactDiv`].
pub trait FieldCoeff: Coeff + Div<Output = Self> {}

impl<T> FieldCoeff for T where T: Coeff + Div<Output = Self> {}

/// Division that must succeed exactly, panicking otherwise. Used by the
/// subresultant algorithm, whose intermediate divisions are exact by theory;
/// a panic here means a bug, not bad input.
pub trait ExactDiv: Coeff {
    fn exact_div(&self, rhs: &Self) -> Self;
}

impl ExactDiv for crate::numeric::Rational {
    fn exact_div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "exact division by zero rational");
        self / rhs
    }
}

impl<K: FieldCoeff> ExactDiv for Poly<K> {
    fn exact_div(&self, rhs: &Self) -> Self {
        self.try_exact_div(rhs)
            .expect("polynomial exact division left a remainder")
    }
}

/// Build a scalar from a small nonnegative integer using only ring
/// operations (binary doubling), so no `From<u64>` bound is needed.
pub(crate) fn scalar_from_u64<T: Coeff>(n: u64) -> T {
    if n == 0 {
        return T::zero();
    }
    let mut acc = T::zero();
    for bit in (0..64).rev() {
        acc = acc.clone() + acc;
        if (n >> bit) & 1 == 1 {
            acc = acc + T::one();
        }
    }
    acc
}

pub(crate) fn scalar_from_i64<T: Coeff>(n: i64) -> T {
    if n < 0 {
        -scalar_from_u64::<T>(n.unsigned_abs())
    } else {
        scalar_from_u64::<T>(n as u64)
    }
}

/// A dense univariate polynomial Σ cᵢ·tⁱ with no stored trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    /// From ascending coefficients; trailing zeros are trimmed.
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c·t^k.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable itself, t.
    pub fn var() -> Self {
        Poly::monomial(T::one(), 1)
    }

    /// Terse constructor from small integer coefficients (ascending), mainly
    /// for tables and tests: `from_ints(&[-1, 0, 1])` is t² − 1.
    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| scalar_from_i64(c)).collect())
    }

    /// Degree, None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero. Panics on zero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of the zero polynomial")
    }

    /// Leading coefficient. Panics on zero.
    pub fn lc(&self) -> &T {
        self.coeffs
            .last()
            .expect("leading coefficient of the zero polynomial")
    }

    /// Coefficient of t^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Ascending coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by t^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() * scalar_from_u64::<T>(i as u64 + 1))
                .collect(),
        )
    }

    /// Horner evaluation at a scalar.
    pub fn eval(&self, x: &T) -> T {
        self.eval_map(x, T::clone)
    }

    /// Horner evaluation in another ring, lifting each coefficient via `f`.
    pub fn eval_map<U: Coeff>(&self, x: &U, f: impl Fn(&T) -> U) -> U {
        let mut acc = U::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + f(c);
        }
        acc
    }

    /// Map coefficients into another ring (must send 0 to 0).
    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Substitution: self(g(t)).
    pub fn compose(&self, g: &Poly<T>) -> Poly<T> {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    /// self(−t).
    pub fn flip_sign(&self) -> Poly<T> {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Poly<T> {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Pseudo-division: returns (q, r) with lc(b)^(deg a − deg b + 1)·a = q·b + r
    /// and deg r < deg b, using ring operations only. Panics if b = 0.
    pub fn pseudo_div_rem(&self, b: &Poly<T>) -> (Poly<T>, Poly<T>) {
        assert!(!b.is_zero(), "pseudo-division by the zero polynomial");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            // lc(b)^(δ+1) with δ+1 = ... degenerate: contract is stated for
            // deg a ≥ deg b; for smaller a we take exponent 0: a = 0·b + a.
            return (Poly::zero(), self.clone());
        }
        let lb = b.lc().clone();
        let mut q = Poly::zero();
        let mut r = self.clone();
        let mut steps_left = self.deg() - db + 1;
        while !r.is_zero() && r.deg() >= db {
            let s = Poly::monomial(r.lc().clone(), r.deg() - db);
            q = &q.scale(&lb) + &s;
            r = &r.scale(&lb) - &(&s * b);
            steps_left -= 1;
        }
        // Pad so the exponent of lc(b) is exactly deg a − deg b + 1.
        for _ in 0..steps_left {
            q = q.scale(&lb);
            r = r.scale(&lb);
        }
        (q, r)
    }
}

impl<T: FieldCoeff> Poly<T> {
    /// Division with remainder over a field: a = q·b + r, deg r < deg b.
    /// Panics if b = 0.
    pub fn div_rem(&self, b: &Poly<T>) -> (Poly<T>, Poly<T>) {
        assert!(!b.is_zero(), "division by the zero polynomial");
        let db = b.deg();
        let lb = b.lc().clone();
        let mut q = Poly::zero();
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= db {
            let c = r.lc().clone() / lb.clone();
            let s = Poly::monomial(c, r.deg() - db);
            r = &r - &(&s * b);
            q = &q + &s;
        }
        (q, r)
    }

    /// Exact quotient if b divides self, else None. Panics if b = 0.
    pub fn try_exact_div(&self, b: &Poly<T>) -> Option<Poly<T>> {
        let (q, r) = self.div_rem(b);
        r.is_zero().then_some(q)
    }

    /// True if b divides self (b ≠ 0).
    pub fn divisible_by(&self, b: &Poly<T>) -> bool {
        self.div_rem(b).1.is_zero()
    }

    /// Scale to leading coefficient 1. Panics on zero.
    pub fn monic(&self) -> Poly<T> {
        let lc = self.lc().clone();
        if lc.is_one() {
            return self.clone();
        }
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| c.clone() / lc.clone())
                .collect(),
        )
    }
}

impl<T: Coeff> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Coeff> One for Poly<T> {
    fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl<'a, T: Coeff> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &'a Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            out.push(a + b);
        }
        Poly::new(out)
    }
}

impl<'a, T: Coeff> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &'a Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            out.push(a - b);
        }
        Poly::new(out)
    }
}

impl<'a, T: Coeff> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned_binop {
    ($imp:ident, $method:ident) => {
        impl<T: Coeff> $imp<Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, T: Coeff> $imp<&'a Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: &'a Poly<T>) -> Poly<T> {
                (&self).$method(rhs)
            }
        }
        impl<'a, T: Coeff> $imp<Poly<T>> for &'a Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coeff> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Coeff> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}
