//! Scalar arithmetic: arbitrary-precision rationals, real quadratic numbers
//! `a + b√l`, and the classification of rational cosine values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::{Error, Result};

/// Exact rational scalar used everywhere in the crate.
pub type Rational = num_rational::BigRational;

/// Rational from an integer, for terse test and table code.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics if d = 0.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p/q" or "p" (optionally signed) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::InvalidArgument(format!("bad rational {s:?}: {e}")))
}

/// Exact integer square root if `n` is a perfect square, else None.
pub fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact nonnegative square root of a rational if it is a square in ℚ.
pub fn rational_sqrt_exact(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = bigint_sqrt_exact(x.numer())?;
    let d = bigint_sqrt_exact(x.denom())?;
    Some(Rational::new(n, d))
}

/// True if `x` is the square of a rational.
pub fn is_rational_square(x: &Rational) -> bool {
    rational_sqrt_exact(x).is_some()
}

/// True if `n` has no repeated prime factor. 0 is not squarefree; 1 is.
pub fn is_squarefree_u64(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// An element a + b·√l of the real quadratic field ℚ(√l), with l ≥ 2
/// squarefree. Values with b = 0 still carry their radicand so that mixed
/// arithmetic stays well-defined; combining two values with different
/// radicands is a programming error and panics.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadNum {
    a: Rational,
    b: Rational,
    radicand: u32,
}

impl QuadNum {
    /// a + b√l. Errors unless l ≥ 2 is squarefree.
    pub fn new(a: Rational, b: Rational, radicand: u32) -> Result<Self> {
        if radicand < 2 || !is_squarefree_u64(radicand as u64) {
            return Err(Error::InvalidArgument(format!(
                "radicand {radicand} must be a squarefree integer >= 2"
            )));
        }
        Ok(QuadNum { a, b, radicand })
    }

    /// A rational embedded into ℚ(√l).
    pub fn from_rational(a: Rational, radicand: u32) -> Result<Self> {
        Self::new(a, Rational::zero(), radicand)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u32 {
        self.radicand
    }

    /// Galois conjugate a − b√l.
    pub fn conj(&self) -> Self {
        QuadNum {
            a: self.a.clone(),
            b: -self.b.clone(),
            radicand: self.radicand,
        }
    }

    /// Field norm a² − l·b², a rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(BigInt::from(self.radicand)) * &self.b * &self.b
    }

    /// True if the √l part vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn check_radicand(&self, other: &Self) {
        assert_eq!(
            self.radicand, other.radicand,
            "mixed radicands √{} and √{} in quadratic arithmetic",
            self.radicand, other.radicand
        );
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, c: &Rational) -> Self {
        QuadNum {
            a: &self.a * c,
            b: &self.b * c,
            radicand: self.radicand,
        }
    }
}

impl Add for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        self.check_radicand(rhs);
        QuadNum {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            radicand: self.radicand,
        }
    }
}

impl Sub for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        self.check_radicand(rhs);
        QuadNum {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            radicand: self.radicand,
        }
    }
}

impl Mul for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        self.check_radicand(rhs);
        let l = Rational::from_integer(BigInt::from(self.radicand));
        QuadNum {
            a: &self.a * &rhs.a + &(&l * &self.b) * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            radicand: self.radicand,
        }
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            a: -self.a.clone(),
            b: -self.b.clone(),
            radicand: self.radicand,
        }
    }
}

impl Add for QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: QuadNum) -> QuadNum {
        &self + &rhs
    }
}

impl Sub for QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: QuadNum) -> QuadNum {
        &self - &rhs
    }
}

impl Mul for QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: QuadNum) -> QuadNum {
        &self * &rhs
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{} ", self.a)?;
            if self.b.is_negative() {
                write!(f, "- ")?;
            } else {
                write!(f, "+ ")?;
            }
            let m = self.b.abs();
            if m.is_one() {
                write!(f, "sqrt({})", self.radicand)
            } else {
                write!(f, "{}*sqrt({})", m, self.radicand)
            }
        } else if self.b.abs().is_one() {
            if self.b.is_negative() {
                write!(f, "-sqrt({})", self.radicand)
            } else {
                write!(f, "sqrt({})", self.radicand)
            }
        } else {
            write!(f, "{}*sqrt({})", self.b, self.radicand)
        }
    }
}

/// Minimal polynomial over ℚ of a quadratic number: x − a when b = 0,
/// otherwise x² − 2a·x + (a² − l·b²), always monic.
pub fn quad_min_poly(q: &QuadNum) -> Poly<Rational> {
    if q.is_rational() {
        Poly::new(vec![-q.a.clone(), Rational::one()])
    } else {
        Poly::new(vec![
            q.norm(),
            -(&q.a + &q.a),
            Rational::one(),
        ])
    }
}

/// The rational values of cos(r·π/n) for gcd(r, n) = 1, n ≥ 1.
///
/// cos of a rational angle is rational only for the values 0, ±1/2, ±1
/// (Niven), which occur exactly at n = 1 (±1), n = 2 (0), n = 3 (±1/2).
/// For every other n the value is irrational and None is returned.
/// Arguments with gcd(r, n) > 1 are rejected rather than silently reduced.
pub fn rational_cos(r: u64, n: u64) -> Result<Option<Rational>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if r.gcd(&n) != 1 {
        return Err(Error::InvalidArgument(format!(
            "cos({r}π/{n}): arguments must be coprime, reduce first"
        )));
    }
    Ok(match n {
        1 => Some(if r.is_multiple_of(2) { rat(1) } else { rat(-1) }),
        2 => Some(Rational::zero()),
        3 => {
            // cos(rπ/3) with r coprime to 3: r ≡ ±1 (mod 6) gives +1/2,
            // r ≡ ±2 (mod 6) gives −1/2.
            let m = r % 6;
            Some(if m == 1 || m == 5 {
                ratio(1, 2)
            } else {
                ratio(-1, 2)
            })
        }
        _ => None,
    })
}
