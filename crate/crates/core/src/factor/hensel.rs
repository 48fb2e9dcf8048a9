//! Quadratic Hensel lifting of a modular factorization to a power of the
//! prime large enough for integer factor recovery.
//!
//! The factor tree carries the leading coefficient of the integer
//! polynomial as an extra constant leaf, so the polynomial itself is never
//! monicized: only the right child of each split must be monic, which the
//! lifting step supports directly. This keeps coefficient bounds tied to
//! the original polynomial — essential for degree-capped factor searches
//! on composed polynomials whose leading coefficients are huge.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::zp::ZpPoly;
use crate::poly::Poly;

pub(crate) fn reduce_mod(f: &Poly<BigInt>, m: &BigInt) -> Poly<BigInt> {
    f.map_coeffs(|c| c.mod_floor(m))
}

/// Representative with coefficients in (−m/2, m/2].
pub(crate) fn center_mod(f: &Poly<BigInt>, m: &BigInt) -> Poly<BigInt> {
    let half = m / BigInt::from(2);
    f.map_coeffs(|c| {
        let r = c.mod_floor(m);
        if r > half {
            r - m
        } else {
            r
        }
    })
}

/// Division with remainder by a monic divisor, all arithmetic mod m.
fn div_rem_monic_mod(a: &Poly<BigInt>, b: &Poly<BigInt>, m: &BigInt) -> (Poly<BigInt>, Poly<BigInt>) {
    assert!(!b.is_zero() && b.lc().is_one(), "divisor must be monic");
    let db = b.deg();
    let mut r = reduce_mod(a, m);
    let mut q = Poly::zero();
    while !r.is_zero() && r.deg() >= db {
        let s = Poly::monomial(r.lc().clone(), r.deg() - db);
        q = &q + &s;
        r = reduce_mod(&(&r - &(&s * b)), m);
    }
    (reduce_mod(&q, m), r)
}

pub(crate) fn zp_to_int(f: &ZpPoly) -> Poly<BigInt> {
    Poly::new(f.c.iter().map(|&a| BigInt::from(a)).collect())
}

/// One quadratic lifting step: from f ≡ g·h (mod m), s·g + t·h ≡ 1 (mod m)
/// with h monic, deg f = deg g + deg h, deg s < deg h, deg t < deg g,
/// produce the same configuration mod m².
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &Poly<BigInt>,
    g: &Poly<BigInt>,
    h: &Poly<BigInt>,
    s: &Poly<BigInt>,
    t: &Poly<BigInt>,
    m: &BigInt,
) -> (Poly<BigInt>, Poly<BigInt>, Poly<BigInt>, Poly<BigInt>) {
    let m2 = m * m;
    // Factor correction.
    let e = reduce_mod(&(f - &(g * h)), &m2);
    let (q, r) = div_rem_monic_mod(&(s * &e), h, &m2);
    let g1 = reduce_mod(&(g + &(t * &e) + &(&q * g)), &m2);
    let h1 = reduce_mod(&(h + &r), &m2);
    // Bezout correction.
    let b = reduce_mod(&(&(s * &g1) + &(t * &h1) - &Poly::one()), &m2);
    let (c, d) = div_rem_monic_mod(&(s * &b), &h1, &m2);
    let s1 = reduce_mod(&(s - &d), &m2);
    let t1 = reduce_mod(&(t - &(t * &b) - &(&c * &g1)), &m2);
    debug_assert!(reduce_mod(&(f - &(&g1 * &h1)), &m2).is_zero());
    debug_assert!(h1.lc().is_one() && h1.deg() == h.deg());
    debug_assert_eq!(g1.deg(), g.deg());
    (g1, h1, s1, t1)
}

/// Lift the two-way split f ≡ ḡ·h̄ (mod p) to modulus `modulus` (a power
/// p^(2^k) chosen by the caller), returning (g, h) mod `modulus`.
fn lift_split(
    f: &Poly<BigInt>,
    gbar: &ZpPoly,
    hbar: &ZpPoly,
    p: u64,
    modulus: &BigInt,
) -> (Poly<BigInt>, Poly<BigInt>) {
    let (one, sbar, tbar) = gbar.xgcd(hbar);
    assert_eq!(
        one.degree(),
        Some(0),
        "split halves must be coprime mod p"
    );
    let mut g = zp_to_int(gbar);
    let mut h = zp_to_int(hbar);
    let mut s = zp_to_int(&sbar);
    let mut t = zp_to_int(&tbar);
    let mut m = BigInt::from(p);
    while m < *modulus {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    (reduce_mod(&g, modulus), reduce_mod(&h, modulus))
}

/// Lift a full modular factorization of the primitive integer polynomial f
/// (squarefree, with p ∤ lc f and the given monic irreducible factors
/// mod p) to a modulus p^(2^k) ≥ target. Returns the lifted factors, in
/// the order of `modular`, together with the modulus. Each lifted factor
/// is monic mod the modulus and reduces to its modular counterpart mod p.
pub(crate) fn lift_factorization(
    f: &Poly<BigInt>,
    modular: &[ZpPoly],
    p: u64,
    target: &BigInt,
) -> (Vec<Poly<BigInt>>, BigInt) {
    let mut modulus = BigInt::from(p);
    while modulus < *target {
        modulus = &modulus * &modulus;
    }
    // Leaves: the leading coefficient as a constant, then the monic factors.
    let lc_leaf = ZpPoly::new(p, vec![f.lc().mod_floor(&BigInt::from(p)).try_into().unwrap()]);
    let mut leaves = vec![lc_leaf];
    leaves.extend(modular.iter().cloned());
    let mut lifted = Vec::with_capacity(modular.len());
    descend(&reduce_mod(f, &modulus), &leaves, p, &modulus, &mut lifted);
    assert_eq!(lifted.len(), modular.len());
    (lifted, modulus)
}

fn descend(
    f: &Poly<BigInt>,
    leaves: &[ZpPoly],
    p: u64,
    modulus: &BigInt,
    out: &mut Vec<Poly<BigInt>>,
) {
    if leaves.len() == 1 {
        if leaves[0].degree() == Some(0) {
            // The leading-coefficient leaf: not a factor.
        } else {
            out.push(f.clone());
        }
        return;
    }
    let mid = leaves.len() / 2;
    let prod = |side: &[ZpPoly]| side.iter().fold(ZpPoly::one(p), |acc, l| acc.mul(l));
    let gbar = prod(&leaves[..mid]);
    let hbar = prod(&leaves[mid..]);
    let (g, h) = lift_split(f, &gbar, &hbar, p, modulus);
    descend(&g, &leaves[..mid], p, modulus, out);
    descend(&h, &leaves[mid..], p, modulus, out);
}
