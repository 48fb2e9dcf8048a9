//! Gcd and squarefree structure for rational polynomials.
//!
//! Gcds are computed by clearing denominators and running a primitive
//! polynomial remainder sequence over ℤ (pseudo-division, then dividing each
//! remainder by its integer content), which keeps coefficient growth tame
//! without modular machinery. Results are returned monic over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numeric::Rational;
use crate::poly::Poly;

/// Write f = c·g with c ∈ ℚ and g an integer polynomial that is primitive
/// (coefficient gcd 1) with positive leading coefficient. Returns (c, g) as
/// (content, ascending integer coefficients). f = 0 gives (0, []).
pub fn content_primitive_int(f: &Poly<Rational>) -> (Rational, Vec<BigInt>) {
    if f.is_zero() {
        return (Rational::zero(), Vec::new());
    }
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for a in &ints {
        g = g.gcd(a);
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    let prim: Vec<BigInt> = ints.iter().map(|a| a / &g).collect();
    (Rational::new(g, den), prim)
}

/// Integer coefficient vector → the corresponding rational polynomial.
pub(crate) fn poly_from_ints_big(cs: &[BigInt]) -> Poly<Rational> {
    Poly::new(cs.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Divide an integer polynomial by its content, sign-normalized to a
/// positive leading coefficient. Zero stays zero.
pub(crate) fn int_primitive_part(p: &Poly<BigInt>) -> Poly<BigInt> {
    if p.is_zero() {
        return Poly::zero();
    }
    let mut g = BigInt::zero();
    for c in p.coeffs() {
        g = g.gcd(c);
    }
    if p.lc().is_negative() {
        g = -g;
    }
    p.map_coeffs(|c| c / &g)
}

/// Monic gcd over ℚ[t]; gcd(0, 0) = 0, gcd(f, 0) = monic f.
pub fn gcd(f: &Poly<Rational>, g: &Poly<Rational>) -> Poly<Rational> {
    if f.is_zero() {
        return if g.is_zero() { Poly::zero() } else { g.monic() };
    }
    if g.is_zero() {
        return f.monic();
    }
    let (_, fi) = content_primitive_int(f);
    let (_, gi) = content_primitive_int(g);
    let mut a: Poly<BigInt> = Poly::new(fi);
    let mut b: Poly<BigInt> = Poly::new(gi);
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let (_, r) = a.pseudo_div_rem(&b);
        a = b;
        b = int_primitive_part(&r);
    }
    poly_from_ints_big(a.coeffs()).monic()
}

/// The product of the distinct irreducible factors of f (monic). For
/// nonzero constants this is 1. Panics on f = 0.
pub fn squarefree_part(f: &Poly<Rational>) -> Poly<Rational> {
    assert!(!f.is_zero(), "squarefree part of the zero polynomial");
    if f.is_constant() {
        return Poly::one();
    }
    let g = gcd(f, &f.derivative());
    f.monic()
        .try_exact_div(&g)
        .expect("gcd(f, f') must divide f")
}

/// Yun's squarefree decomposition: f = content · ∏ gᵢ^i with the gᵢ monic,
/// squarefree, pairwise coprime. Returns (content, [(gᵢ, i)]) with
/// multiplicities ascending; the content is exactly the leading coefficient
/// of f. Panics on f = 0.
pub fn yun_squarefree(f: &Poly<Rational>) -> (Rational, Vec<(Poly<Rational>, u32)>) {
    assert!(!f.is_zero(), "squarefree decomposition of the zero polynomial");
    let content = f.lc().clone();
    if f.is_constant() {
        return (content, Vec::new());
    }
    let fm = f.monic();
    let df = fm.derivative();
    let g = gcd(&fm, &df);
    let mut c = fm.try_exact_div(&g).expect("gcd divides f");
    let mut d = &df.try_exact_div(&g).expect("gcd divides f'") - &c.derivative();
    let mut out = Vec::new();
    let mut i: u32 = 1;
    while !c.is_constant() {
        let p = gcd(&c, &d);
        if !p.is_constant() {
            out.push((p.clone(), i));
        }
        c = c.try_exact_div(&p).expect("Yun: gcd divides c");
        d = &d.try_exact_div(&p).expect("Yun: gcd divides d") - &c.derivative();
        i += 1;
    }
    (content, out)
}
