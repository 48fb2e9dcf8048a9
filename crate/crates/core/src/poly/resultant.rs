//! Resultants via the subresultant polynomial remainder sequence, over any
//! coefficient ring with exact division, and the minimal polynomial of the
//! image of one polynomial on the roots of another.
//!
//! The nested instantiation `Poly<Poly<Rational>>` (outer variable t, inner
//! variable x) gives the resultant with respect to t of bivariate
//! polynomials, which is how `min_poly_of_image` eliminates t.

use num_traits::{One, Zero};

use crate::numeric::Rational;
use crate::poly::gcd::gcd;
use crate::poly::{Coeff, ExactDiv, Poly};
use crate::{Error, Result};

fn coeff_pow<T: Coeff>(c: &T, e: usize) -> T {
    let mut acc = T::one();
    let mut base = c.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// Resultant of a and b. Returns 0 if either input is 0. All intermediate
/// divisions are exact by the subresultant theory; an inexact division
/// panics (it would indicate a bug, not bad input).
pub fn resultant<T: Coeff + ExactDiv>(a: &Poly<T>, b: &Poly<T>) -> T {
    if a.is_zero() || b.is_zero() {
        return T::zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut negate = false;
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            negate = !negate;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        // res(a, c) = c^(deg a); covers the constant/constant case as 1.
        let r = coeff_pow(b.lc(), a.deg());
        return if negate { -r } else { r };
    }
    let mut g = T::one();
    let mut h = T::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            negate = !negate;
        }
        let (_, r) = a.pseudo_div_rem(&b);
        a = b;
        let denom = g.clone() * coeff_pow(&h, delta);
        b = r.map_coeffs(|c| c.exact_div(&denom));
        g = a.lc().clone();
        h = if delta == 0 {
            h
        } else {
            coeff_pow(&g, delta).exact_div(&coeff_pow(&h, delta - 1))
        };
        if b.is_zero() {
            // Positive-degree common factor: the resultant vanishes.
            return T::zero();
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg();
    let r = coeff_pow(b.lc(), da).exact_div(&coeff_pow(&h, da - 1));
    if negate {
        -r
    } else {
        r
    }
}

/// Monic squarefree polynomial whose roots are exactly the values u(τ) as τ
/// runs over the roots of p. For irreducible p this is the minimal
/// polynomial over ℚ of u(τ) for any single root τ of p.
///
/// Both arguments must be nonconstant; irreducibility of p is the caller's
/// responsibility (without it the result is still the squarefree kernel of
/// ∏(x − u(τ)), which is generally not irreducible).
pub fn min_poly_of_image(p: &Poly<Rational>, u: &Poly<Rational>) -> Result<Poly<Rational>> {
    if p.is_constant() {
        return Err(Error::InvalidArgument(
            "min_poly_of_image: p must be nonconstant".into(),
        ));
    }
    if u.is_constant() {
        return Err(Error::InvalidArgument(
            "min_poly_of_image: u must be nonconstant".into(),
        ));
    }
    // Only the residue of u modulo p matters: u(τ) = r(τ).
    let r = u.div_rem(p).1;
    if r.is_constant() {
        // All roots map to the same rational value.
        let c = r.coeff(0);
        return Ok(Poly::new(vec![-c, Rational::one()]));
    }
    // Outer variable t, inner variable x: eliminate t from {p(t) = 0, x = r(t)}.
    type Inner = Poly<Rational>;
    let pb: Poly<Inner> = p.map_coeffs(|c| Inner::constant(c.clone()));
    let mut cs: Vec<Inner> = r.coeffs().iter().map(|c| Inner::constant(-c.clone())).collect();
    cs[0] = &cs[0] + &Inner::var();
    let xr: Poly<Inner> = Poly::new(cs);
    let res: Inner = resultant(&pb, &xr);
    assert!(
        !res.is_zero(),
        "resultant vanished for nonconstant residue; p was not squarefree-compatible"
    );
    let m = res.monic();
    let sf = m
        .try_exact_div(&gcd(&m, &m.derivative()))
        .expect("gcd divides");
    Ok(sf.monic())
}
