//! Polynomial arithmetic over 𝔽_p for small odd primes, with squarefree
//! factorization by distinct-degree splitting followed by equal-degree
//! splitting. The equal-degree stage enumerates split candidates
//! deterministically (counter → base-p digits), so the whole factorization
//! is reproducible run to run.

use num_bigint::BigUint;
use num_traits::One;

/// Dense polynomial over 𝔽_p, coefficients ascending, reduced into [0, p),
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct ZpPoly {
    pub(crate) p: u64,
    pub(crate) c: Vec<u64>,
}

fn addm(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subm(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mulm(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(p, acc, a);
        }
        a = mulm(p, a, a);
        e >>= 1;
    }
    acc
}

fn invm(p: u64, a: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of 0 mod {p}");
    powm(p, a, p - 2)
}

impl std::fmt::Debug for ZpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Zp[{}]{:?}", self.p, self.c)
    }
}

impl ZpPoly {
    pub(crate) fn new(p: u64, mut c: Vec<u64>) -> Self {
        for a in &mut c {
            *a %= p;
        }
        let mut f = ZpPoly { p, c };
        f.trim();
        f
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub(crate) fn zero(p: u64) -> Self {
        ZpPoly { p, c: Vec::new() }
    }

    pub(crate) fn one(p: u64) -> Self {
        ZpPoly { p, c: vec![1] }
    }

    pub(crate) fn x(p: u64) -> Self {
        ZpPoly { p, c: vec![0, 1] }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub(crate) fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial mod p")
    }

    pub(crate) fn lc(&self) -> u64 {
        *self.c.last().expect("leading coefficient of zero mod p")
    }

    pub(crate) fn add(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(addm(
                self.p,
                self.c.get(i).copied().unwrap_or(0),
                rhs.c.get(i).copied().unwrap_or(0),
            ));
        }
        ZpPoly::new(self.p, out)
    }

    pub(crate) fn sub(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(subm(
                self.p,
                self.c.get(i).copied().unwrap_or(0),
                rhs.c.get(i).copied().unwrap_or(0),
            ));
        }
        ZpPoly::new(self.p, out)
    }

    pub(crate) fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return ZpPoly::zero(self.p);
        }
        // Terms are reduced mod p (< 2^64) before accumulation, so sums of
        // polynomial length never overflow u128.
        let p = self.p as u128;
        let mut acc = vec![0u128; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                acc[i + j] += (a as u128 * b as u128) % p;
            }
        }
        ZpPoly::new(self.p, acc.into_iter().map(|v| (v % p) as u64).collect())
    }

    pub(crate) fn scale(&self, k: u64) -> Self {
        ZpPoly::new(self.p, self.c.iter().map(|&a| mulm(self.p, a, k)).collect())
    }

    pub(crate) fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invm(self.p, self.lc()))
    }

    pub(crate) fn div_rem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero mod p");
        let p = self.p;
        let db = b.deg();
        let binv = invm(p, b.lc());
        let mut r = self.clone();
        let mut q = vec![0u64; self.c.len().saturating_sub(db)];
        while !r.is_zero() && r.deg() >= db {
            let k = r.deg() - db;
            let coeff = mulm(p, r.lc(), binv);
            q[k] = coeff;
            // r -= coeff·x^k·b
            for (i, &bc) in b.c.iter().enumerate() {
                r.c[k + i] = subm(p, r.c[k + i], mulm(p, coeff, bc));
            }
            r.trim();
        }
        (ZpPoly::new(p, q), r)
    }

    pub(crate) fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    pub(crate) fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: (g, s, t) with s·self + t·rhs = g, g monic.
    pub(crate) fn xgcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (ZpPoly::one(p), ZpPoly::zero(p));
        let (mut t0, mut t1) = (ZpPoly::zero(p), ZpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invm(p, r0.lc());
        let (g, s, t) = (r0.scale(inv), s0.scale(inv), t0.scale(inv));
        debug_assert_eq!(s.mul(self).add(&t.mul(rhs)), g, "Bezout identity");
        (g, s, t)
    }

    pub(crate) fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return ZpPoly::zero(self.p);
        }
        ZpPoly::new(
            self.p,
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, &a)| mulm(self.p, a, (i as u64 + 1) % self.p))
                .collect(),
        )
    }

    pub(crate) fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// self^e mod m, with a big exponent.
    pub(crate) fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = ZpPoly::one(self.p);
        let mut base = self.rem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Canonical ordering: by degree, then coefficients from the leading
    /// end down. Gives factor lists a stable, reproducible order.
    pub(crate) fn cmp_canonical(&self, rhs: &Self) -> std::cmp::Ordering {
        self.c
            .len()
            .cmp(&rhs.c.len())
            .then_with(|| self.c.iter().rev().cmp(rhs.c.iter().rev()))
    }

    /// Distinct-degree split of a monic squarefree polynomial: returns
    /// (product of all irreducible factors of degree d, d) for each
    /// occurring d, in ascending d.
    pub(crate) fn distinct_degree_split(&self) -> Vec<(Self, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let x = ZpPoly::x(p);
        let mut h = x.rem(&f);
        let mut d = 0usize;
        let pe = BigUint::from(p);
        while f.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&pe, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                out.push((g.clone(), d));
                f = f.div_rem(&g).0;
                if f.deg() == 0 {
                    return out;
                }
                h = h.rem(&f);
            }
        }
        if f.deg() > 0 {
            let d = f.deg();
            out.push((f, d));
        }
        out
    }

    /// Equal-degree split: self is monic squarefree, a product of
    /// irreducibles all of degree d. Deterministic candidate enumeration.
    pub(crate) fn equal_degree_split(&self, d: usize) -> Vec<Self> {
        let mut out = Vec::new();
        self.edf_recurse(d, &mut out);
        out.sort_by(|a, b| a.cmp_canonical(b));
        out
    }

    fn edf_recurse(&self, d: usize, out: &mut Vec<Self>) {
        let p = self.p;
        assert!(p % 2 == 1, "equal-degree splitting requires an odd prime");
        if self.deg() == d {
            out.push(self.monic());
            return;
        }
        let exponent = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
        let one = ZpPoly::one(p);
        // Candidates are read off a counter in base p, starting at the
        // first polynomial of degree ≥ 1; each either splits f or is
        // skipped. A non-splitting run of any real length is astronomically
        // unlikely, so the hard cap only guards against bugs.
        for ctr in (p..).take(200_000) {
            let r = ZpPoly::from_counter(p, ctr);
            let s = r.pow_mod(&exponent, self);
            let g = self.gcd(&s.sub(&one));
            if g.deg() > 0 && g.deg() < self.deg() {
                let rest = self.div_rem(&g).0;
                g.edf_recurse(d, out);
                rest.edf_recurse(d, out);
                return;
            }
        }
        unreachable!("equal-degree split exhausted its candidate budget");
    }

    fn from_counter(p: u64, mut ctr: u64) -> Self {
        let mut c = Vec::new();
        while ctr > 0 {
            c.push(ctr % p);
            ctr /= p;
        }
        ZpPoly::new(p, c)
    }

    /// All monic irreducible factors of a monic squarefree polynomial,
    /// canonically sorted.
    pub(crate) fn factor_squarefree(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for (prod, d) in self.distinct_degree_split() {
            out.extend(prod.equal_degree_split(d));
        }
        out.sort_by(|a, b| a.cmp_canonical(b));
        debug_assert_eq!(
            out.iter().fold(ZpPoly::one(self.p), |acc, f| acc.mul(f)),
            self.monic(),
            "factor product must reassemble the input"
        );
        out
    }

    /// Number of monic irreducible factors, from the distinct-degree split
    /// only (no equal-degree work).
    pub(crate) fn count_irreducible_factors(&self) -> usize {
        self.distinct_degree_split()
            .iter()
            .map(|(prod, d)| prod.deg() / d)
            .sum()
    }
}
