//! Factorization of primitive squarefree integer polynomials: prime
//! selection, modular factorization, Hensel lifting past a coefficient
//! bound, and subset recombination with trial division — optionally capped
//! at a maximum factor degree, in which case only the factors up to that
//! degree are produced (sound and complete for that degree range, with the
//! benefit of a much smaller lifting bound).

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hensel::{center_mod, lift_factorization, reduce_mod};
use super::zp::ZpPoly;
use crate::poly::Poly;

/// Largest modular factor count accepted without looking for a better
/// prime; beyond it a handful of further primes are tried and the one with
/// the fewest factors wins.
const RETRY_FACTOR_THRESHOLD: usize = 12;
const RETRY_PRIME_ATTEMPTS: usize = 5;

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7] {
        if n.is_multiple_of(d) {
            return n == d;
        }
    }
    let mut d = 11u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Divide by the integer content and normalize the leading coefficient to
/// be positive. Zero stays zero.
pub(crate) fn primitive_part_int(f: &Poly<BigInt>) -> Poly<BigInt> {
    if f.is_zero() {
        return Poly::zero();
    }
    let mut g = BigInt::zero();
    for c in f.coeffs() {
        g = g.gcd(c);
    }
    if f.lc().is_negative() {
        g = -g;
    }
    f.map_coeffs(|c| c / &g)
}

/// Exact division in ℤ[x] if it succeeds, else None. Correct as a
/// divisibility test whenever b is primitive (Gauss: the rational quotient
/// of integer polynomials with b primitive is integral iff b divides a).
pub(crate) fn try_div_int(a: &Poly<BigInt>, b: &Poly<BigInt>) -> Option<Poly<BigInt>> {
    assert!(!b.is_zero());
    if a.is_zero() {
        return Some(Poly::zero());
    }
    if a.deg() < b.deg() {
        return None;
    }
    let db = b.deg();
    let lb = b.lc();
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.deg() - db + 1];
    while !r.is_zero() && r.deg() >= db {
        let (c, rem) = r.lc().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let k = r.deg() - db;
        q[k] = c.clone();
        r = &r - &(&Poly::monomial(c, k) * b);
    }
    if r.is_zero() {
        Some(Poly::new(q))
    } else {
        None
    }
}

/// ⌈√(Σ cᵢ²)⌉ — the Euclidean length of the coefficient vector, rounded up.
fn norm2_ceil(f: &Poly<BigInt>) -> BigInt {
    let s: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + BigInt::one()
    }
}

/// Coefficient bound for the recombination candidates lc(F)·∏ (monic
/// lifted factors) of degree at most k: 2^k · ‖F‖₂ · |lc F| dominates the
/// classical factor bound for every divisor of F of degree ≤ k.
fn candidate_bound(f: &Poly<BigInt>, k: usize) -> BigInt {
    (BigInt::one() << k) * norm2_ceil(f) * f.lc().abs()
}

/// Choose a prime p ≥ 5 with p ∤ lc(F) and F squarefree mod p, preferring
/// few modular factors: the first admissible prime is kept unless it
/// produces more than `RETRY_FACTOR_THRESHOLD` factors, in which case a few
/// more admissible primes are examined and the best one wins (fewest
/// factors, ties to the smaller prime).
fn select_prime(f: &Poly<BigInt>) -> (u64, ZpPoly) {
    let mut best: Option<(usize, u64, ZpPoly)> = None;
    let mut examined = 0usize;
    let mut p = 5u64;
    loop {
        if is_prime_u64(p) && !f.lc().mod_floor(&BigInt::from(p)).is_zero() {
            let fp = ZpPoly::new(
                p,
                f.coeffs()
                    .iter()
                    .map(|c| c.mod_floor(&BigInt::from(p)).try_into().unwrap())
                    .collect(),
            );
            if fp.degree() == f.degree() && fp.is_squarefree() {
                let count = fp.monic().count_irreducible_factors();
                examined += 1;
                if best.as_ref().is_none_or(|(c, _, _)| count < *c) {
                    best = Some((count, p, fp.monic()));
                }
                let (c, _, _) = best.as_ref().unwrap();
                if *c <= RETRY_FACTOR_THRESHOLD || examined >= RETRY_PRIME_ATTEMPTS {
                    let (_, p, fp) = best.unwrap();
                    return (p, fp);
                }
            }
        }
        p += 2;
    }
}

/// All irreducible factors of degree ≤ cap of a primitive squarefree
/// integer polynomial of degree ≥ 1, as primitive integer polynomials with
/// positive leading coefficients, deterministically ordered by the modular
/// factor combination that produced them. With cap ≥ deg f this is the
/// complete irreducible factorization.
pub(crate) fn factor_primitive_squarefree(f: &Poly<BigInt>, cap: usize) -> Vec<Poly<BigInt>> {
    let n = f.deg();
    assert!(n >= 1, "factorization of a constant");
    if cap == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![primitive_part_int(f)];
    }
    let (p, fp) = select_prime(f);
    let modular = fp.factor_squarefree();
    if modular.len() == 1 {
        return if n <= cap { vec![primitive_part_int(f)] } else { Vec::new() };
    }
    // Candidates never exceed degree min(cap, ⌊n/2⌋) except for the final
    // remainder, which is exact and needs no bound.
    let k = cap.min(n / 2 + 1);
    let target = BigInt::from(2) * candidate_bound(f, k) + BigInt::one();
    let (lifted, modulus) = lift_factorization(f, &modular, p, &target);
    recombine(f, &lifted, &modulus, cap)
}

fn recombine(
    f: &Poly<BigInt>,
    lifted: &[Poly<BigInt>],
    modulus: &BigInt,
    cap: usize,
) -> Vec<Poly<BigInt>> {
    let mut found = Vec::new();
    let mut current = primitive_part_int(f);
    let mut alive: Vec<usize> = (0..lifted.len()).collect();
    'outer: loop {
        if alive.is_empty() {
            break;
        }
        let deg_current = current.deg();
        let full = cap >= deg_current;
        let limit = if full { deg_current / 2 } else { cap };
        for size in 1..=alive.len() {
            for subset in alive.iter().copied().combinations(size) {
                let deg_sum: usize = subset.iter().map(|&i| lifted[i].deg()).sum();
                if deg_sum > limit {
                    continue;
                }
                let mut cand = Poly::constant(current.lc().clone());
                for &i in &subset {
                    cand = reduce_mod(&(&cand * &lifted[i]), modulus);
                }
                let cand = primitive_part_int(&center_mod(&cand, modulus));
                if let Some(quotient) = try_div_int(&current, &cand) {
                    found.push(cand);
                    current = primitive_part_int(&quotient);
                    alive.retain(|i| !subset.contains(i));
                    continue 'outer;
                }
            }
        }
        break;
    }
    // Whatever remains is irreducible (every true factor's modular subset
    // was tried); report it only in full mode or when small enough.
    if current.deg() >= 1 && current.deg() <= cap {
        found.push(current);
    }
    found
}
