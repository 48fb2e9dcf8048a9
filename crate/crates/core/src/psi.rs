//! The factor system ψₘ of the solution denominators, Chebyshev
//! polynomials of the second kind, and real-cyclotomic polynomials.
//!
//! For a Pell instance with fundamental solution (u, v), the denominators
//! satisfy vₙ = v·U_{n−1}(u) with U the Chebyshev polynomial of the second
//! kind, and U_{n−1} = ∏_{m|n, m>1} ψₘ where ψₘ collects the primitive
//! part at index m: ψₘ has degree φ(m), leading coefficient 2^{φ(m)}, and
//! roots cos(rπ/m) over r coprime to m. The ψₘ are computed by exact
//! Chebyshev division and memoized.
//!
//! The real-cyclotomic polynomial Cₖ — the minimal polynomial of
//! 2cos(2π/k) — connects ψ to cyclotomic fields: ψₘ(u) = C₂ₘ(2u) for even
//! m, and ψₘ(u) = Cₘ(2u)·C₂ₘ(2u) for odd m, where Cₘ(2u) is the factor
//! denoted ψ*ₘ.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::numeric::{rat, Rational};
use crate::{Error, QPoly, Result};

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// ascending prime order. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorization of 0");
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// Euler's totient φ(n).
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient of 0");
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// The Möbius function μ(n): 0 on non-squarefree n, else (−1)^#primes.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius of 0");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of 0");
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Chebyshev polynomial of the second kind: U₀ = 1, U₁ = 2u,
/// Uₙ = 2u·U_{n−1} − U_{n−2}.
pub fn chebyshev_u(n: usize) -> QPoly {
    let two_u = QPoly::from_ints(&[0, 2]);
    let mut prev = QPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_u.clone();
    for _ in 1..n {
        let next = &(&two_u * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn psi_table() -> &'static Mutex<HashMap<u64, QPoly>> {
    static TABLE: OnceLock<Mutex<HashMap<u64, QPoly>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The raw ψₘ polynomial, memoized: U_{m−1} divided exactly by all ψ_d
/// over the proper divisors d > 1 of m.
fn psi_poly(m: u64) -> QPoly {
    assert!(m >= 2, "psi is defined for m >= 2");
    if let Some(p) = psi_table().lock().unwrap().get(&m) {
        return p.clone();
    }
    // Compute the divisor product without holding the lock: the recursive
    // calls below take it themselves.
    let mut den = QPoly::one();
    for d in divisors(m) {
        if d > 1 && d < m {
            den = &den * &psi_poly(d);
        }
    }
    let p = chebyshev_u(m as usize - 1)
        .try_exact_div(&den)
        .expect("Chebyshev division for psi must be exact");
    psi_table().lock().unwrap().insert(m, p.clone());
    p
}

/// ψₘ together with its index, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiPolynomial {
    m: u64,
    poly: QPoly,
}

impl PsiPolynomial {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }
}

/// Construct ψₘ (m ≥ 2) and check its structure: degree φ(m), leading
/// coefficient 2^{φ(m)}, and integer coefficients when rewritten in powers
/// of 2u.
pub fn psi(m: u64) -> PsiPolynomial {
    let poly = psi_poly(m);
    let phi = totient(m);
    assert_eq!(poly.deg() as u64, phi, "deg psi_m = phi(m)");
    assert_eq!(poly.lc(), &rat(2).pow(phi as i32), "lc psi_m = 2^phi(m)");
    for (j, a) in poly.coeffs().iter().enumerate() {
        let b = a / rat(2).pow(j as i32);
        assert!(b.is_integer(), "psi_m must lie in Z[2u]");
    }
    PsiPolynomial { m, poly }
}

/// The cyclotomic polynomial Φₖ, by iterated exact division of xᵏ − 1.
pub fn cyclotomic(k: u64) -> QPoly {
    assert!(k >= 1, "cyclotomic index must be >= 1");
    // x^k − 1
    let mut num = QPoly::monomial(Rational::one(), k as usize);
    num = &num - &QPoly::one();
    for d in divisors(k) {
        if d < k {
            num = num
                .try_exact_div(&cyclotomic(d))
                .expect("cyclotomic division must be exact");
        }
    }
    num
}

/// The minimal polynomial of 2cos(2π/k), monic of degree φ(k)/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealCyclotomic {
    k: u64,
    poly: QPoly,
}

impl RealCyclotomic {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }
}

/// Extract Cₖ from Φₖ(x) = x^{φ(k)/2}·Cₖ(x + 1/x) by solving the
/// triangular coefficient system top-down. Requires k ≥ 3 (below that the
/// half-degree substitution degenerates).
pub fn real_cyclotomic(k: u64) -> Result<RealCyclotomic> {
    if k < 3 {
        return Err(Error::InvalidArgument(
            "real cyclotomic polynomials need k >= 3".into(),
        ));
    }
    let phi = cyclotomic(k);
    let n = totient(k) as usize / 2;
    // Subtract c_j·x^{n−j}·(x²+1)^j from the residual for j = n..0; the
    // top coefficient of the residual at x^{n+j} is c_j.
    let x2p1 = QPoly::from_ints(&[1, 0, 1]);
    let mut residual = phi;
    let mut coeffs = vec![Rational::zero(); n + 1];
    for j in (0..=n).rev() {
        let c = residual.coeff(n + j);
        if !c.is_zero() {
            let term = QPoly::monomial(c.clone(), n - j) * x2p1.pow(j);
            residual = &residual - &term;
        }
        coeffs[j] = c;
    }
    assert!(
        residual.is_zero(),
        "the half-degree substitution must resolve exactly"
    );
    let poly = QPoly::new(coeffs);
    assert_eq!(poly.deg(), n);
    assert!(poly.lc().is_one());
    Ok(RealCyclotomic { k, poly })
}

/// The half factor ψ*ₘ = Cₘ(2u) of ψₘ for odd m ≥ 3, normalized with
/// leading coefficient 2^{φ(m)/2}. The splitting identity
/// ψₘ(u) = (−1)^{φ(m)/2}·ψ*ₘ(u)·ψ*ₘ(−u) is verified exactly before
/// returning. Even m is rejected: those ψₘ do not split.
pub fn psi_star(m: u64) -> Result<QPoly> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(
            "psi* is defined for odd m >= 3".into(),
        ));
    }
    let two_u = QPoly::from_ints(&[0, 2]);
    let star = real_cyclotomic(m)?.poly().compose(&two_u);
    let half = totient(m) / 2;
    assert_eq!(star.deg() as u64, half);
    assert_eq!(star.lc(), &rat(2).pow(half as i32));
    let mut product = &star * &star.flip_sign();
    if half % 2 == 1 {
        product = -product;
    }
    assert_eq!(product, psi(m).poly, "psi_m = ±psi*(u)·psi*(−u)");
    Ok(star)
}
