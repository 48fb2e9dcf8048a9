//! Locating and certifying every repeated root of every new part.
//!
//! For n ≥ 2 the new part of a Pell instance is ψ_n(u(t)), and ψ_n has only
//! simple roots, so a repeated root α of the new part must also satisfy
//! u′(α) = 0. Its image u(α) is then a root of ψ_n — a cosine of a rational
//! multiple of π. Factoring u′ once and matching the image of each factor
//! against the ψ polynomials therefore finds all repeated roots of all new
//! parts in finite time: the degree of the image's minimal polynomial bounds
//! the set of indices n worth checking ([`admissible_n`]), and the ψ are
//! pairwise coprime, so each root matches at most one index. The index-1
//! part is v itself and is handled by direct squarefree decomposition.
//!
//! The rest of the module is the fine structure of which algebraic degrees
//! occur at which indices: parity constraints on φ(n)/2, the quadratic
//! fields ℚ(√2), ℚ(√5), ℚ(√3) attached to n = 4, 5, 6, the closed-form
//! slope coefficient of the polynomial whose graph meets a cosine level to
//! prescribed order at a quadratic irrational, and the 2-adic obstruction
//! showing that slope is never an integer — which rules out repeated
//! quadratic roots at n > 3 for instances with u ∈ ℤ[t].

use crate::factor::{
    canonical_poly_cmp, exact_multiplicity, factor_rationals, squarefree_decompose,
};
use crate::newfactors::v_new_poly;
use crate::numeric::{rat, rational_sqrt_exact, QuadNum};
use crate::pell::PellInstance;
use crate::poly::min_poly_of_image;
use crate::psi::{is_prime, psi, totient};
use crate::{Error, QPoly, Rational, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// One certified repeated root (as a Galois orbit) of some new part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatedRootSpec {
    /// Monic irreducible minimal polynomial of the repeated root α.
    pub p_alpha: QPoly,
    /// deg p_alpha, the algebraic degree of α.
    pub d_alpha: usize,
    /// The index whose new part contains α as a repeated root.
    pub n: u64,
    /// Exact multiplicity of p_alpha in u′.
    pub k: u32,
    /// Exact multiplicity of p_alpha in the new part at index n, verified
    /// by repeated division. Equals k + 1 for n ≥ 2.
    pub certified_multiplicity: u32,
    /// Minimal polynomial of the image u(α), a divisor of the monic form
    /// of ψ_n. None for n = 1, where the repeated factor comes from v
    /// itself rather than from a cosine image.
    pub cos_min_poly: Option<QPoly>,
}

/// The complete list of repeated roots across all new parts of an instance,
/// every multiplicity certified by exact division.
///
/// Two branches. Index 1: the new part is v; a factor p of v with
/// multiplicity e ≥ 2 is recorded, and differentiating u² − Dv² = 1 shows
/// u′ contains p to the exact order 2e − 1 (in particular p³ | u·u′), which
/// is asserted. Index ≥ 2: every irreducible factor p of u′, with its exact
/// multiplicity k, has its image minimal polynomial m = minpoly(u mod p)
/// tested against the monic ψ_n for all n admissible for deg m; on a match
/// the multiplicity k + 1 of p in the new part is certified by division.
///
/// The sum of deg p_alpha over distinct recorded roots is asserted to be at
/// most deg u − 1: every repeated root is a root of u′.
pub fn repeated_roots_report(inst: &PellInstance) -> Vec<RepeatedRootSpec> {
    let u = inst.u();
    // deg u = deg D / 2 ≥ 1 for any valid instance, so u′ ≠ 0.
    assert!(!u.is_constant(), "u is nonconstant for a valid instance");
    let du = u.derivative();
    let mut specs: Vec<RepeatedRootSpec> = Vec::new();

    // Index 1: repeated factors of v. From 2uu′ = D′v² + 2Dvv′ and
    // gcd(u, v) = gcd(D, v) = 1, a factor of multiplicity e in v sits in
    // the right side with exact order 2e − 1 (the D′v² term is higher),
    // hence in u′ with exact order 2e − 1 ≥ 3.
    if !inst.v().is_constant() {
        for (p, e) in squarefree_decompose(inst.v()).factors() {
            if *e < 2 {
                continue;
            }
            let k = exact_multiplicity(&du, p);
            assert_eq!(k, 2 * *e - 1, "order of a repeated factor of v in u′");
            assert!(
                (u * &du).divisible_by(&p.pow(3)),
                "cube of a repeated factor of v divides u·u′"
            );
            specs.push(RepeatedRootSpec {
                p_alpha: p.clone(),
                d_alpha: p.deg(),
                n: 1,
                k,
                certified_multiplicity: *e,
                cos_min_poly: None,
            });
        }
    }

    // Index ≥ 2: roots of u′ whose image under u is a root of some ψ_n.
    if !du.is_constant() {
        for (p, k) in factor_rationals(&du).factors() {
            let m = min_poly_of_image(p, u).expect("factor of u′ is nonconstant");
            let mut matched: Option<u64> = None;
            for n in admissible_n(m.deg()).expect("minimal polynomial has positive degree") {
                if psi(n).poly().monic().divisible_by(&m) {
                    assert!(
                        matched.is_none(),
                        "ψ polynomials are pairwise coprime, so at most one index matches"
                    );
                    matched = Some(n);
                }
            }
            if let Some(n) = matched {
                let cert = exact_multiplicity(&v_new_poly(inst, n), p);
                assert_eq!(cert, *k + 1, "multiplicity in the new part is k + 1 exactly");
                specs.push(RepeatedRootSpec {
                    p_alpha: p.clone(),
                    d_alpha: p.deg(),
                    n,
                    k: *k,
                    certified_multiplicity: cert,
                    cos_min_poly: Some(m),
                });
            }
        }
    }

    // Every repeated root of every new part is a root of u′, so the count
    // of distinct roots is bounded by deg u′ ≤ deg u − 1.
    let mut distinct: Vec<&QPoly> = Vec::new();
    for s in &specs {
        if !distinct.iter().any(|q| **q == s.p_alpha) {
            distinct.push(&s.p_alpha);
        }
    }
    let total: usize = distinct.iter().map(|p| p.deg()).sum();
    assert!(
        total < u.deg(),
        "distinct repeated roots exceed deg u − 1"
    );

    specs.sort_by(|a, b| a.n.cmp(&b.n).then_with(|| canonical_poly_cmp(&a.p_alpha, &b.p_alpha)));
    specs
}

/// All indices n ≥ 2 whose new part could contain a repeated root of
/// algebraic degree d: those with φ(2n)/2 ≤ d, since the minimal polynomial
/// of a root of ψ_n has degree φ(2n)/2 (n even) or φ(n)/2 (n odd), and for
/// odd n these coincide. The scan window is finite because φ(x) ≥ √(x/2)
/// forces 2n ≤ 8d². Errors on d = 0.
pub fn admissible_n(d: usize) -> Result<Vec<u64>> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "admissible indices are defined for positive degree".into(),
        ));
    }
    let d = d as u64;
    Ok((2..=4 * d * d)
        .filter(|&n| totient(2 * n) <= 2 * d)
        .collect())
}

/// One index n = q^s > 3 that an odd algebraic degree admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OddAdmissibleIndex {
    /// The index itself, a prime power q^s.
    pub n: u64,
    /// The prime q ≡ 3 (mod 4).
    pub q: u64,
    /// The exponent s ≥ 1.
    pub s: u32,
}

/// Which indices n > 3 admit a repeated root of odd algebraic degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddDegreeAdmissibility {
    d_alpha: u64,
    indices: Vec<OddAdmissibleIndex>,
}

impl OddDegreeAdmissibility {
    pub fn d_alpha(&self) -> u64 {
        self.d_alpha
    }

    pub fn indices(&self) -> &[OddAdmissibleIndex] {
        &self.indices
    }

    /// The admitted index values, ascending.
    pub fn index_values(&self) -> Vec<u64> {
        self.indices.iter().map(|e| e.n).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// The set of indices n > 3 that can host a repeated root of odd algebraic
/// degree d_alpha. A root of ψ_n generating a subfield of odd degree forces
/// φ(n)/2 odd, i.e. n = q^s for a prime q ≡ 3 (mod 4), and the tower of
/// fields forces φ(q^s)/2 to divide d_alpha; the function enumerates those
/// prime powers directly. When d_alpha is itself prime the set collapses to
/// {2·d_alpha + 1 if prime} ∪ {9 if d_alpha = 3} — possibly empty — and
/// this shape is asserted. Errors on even or unit input.
pub fn odd_degree_admissibility(d_alpha: u64) -> Result<OddDegreeAdmissibility> {
    if d_alpha <= 1 || d_alpha.is_multiple_of(2) {
        return Err(Error::InvalidArgument(
            "odd-degree admissibility takes an odd degree > 1".into(),
        ));
    }
    let mut indices = Vec::new();
    // φ(q^s)/2 ≥ (q − 1)/2 must divide d_alpha, so q ≤ 2·d_alpha + 1.
    for q in (3..=2 * d_alpha + 1).step_by(2) {
        if !is_prime(q) || q % 4 != 3 {
            continue;
        }
        let mut n = q;
        let mut phi_half = (q - 1) / 2;
        let mut s = 1u32;
        while phi_half <= d_alpha {
            if d_alpha.is_multiple_of(phi_half) && n > 3 {
                debug_assert!(totient(n) / 2 % 2 == 1 && d_alpha.is_multiple_of(totient(n) / 2));
                indices.push(OddAdmissibleIndex { n, q, s });
            }
            phi_half = match phi_half.checked_mul(q) {
                Some(v) => v,
                None => break,
            };
            n = match n.checked_mul(q) {
                Some(v) => v,
                None => break,
            };
            s += 1;
        }
    }
    indices.sort_by_key(|e| e.n);

    if is_prime(d_alpha) {
        let mut expected = Vec::new();
        if is_prime(2 * d_alpha + 1) {
            expected.push(2 * d_alpha + 1);
        }
        if d_alpha == 3 {
            expected.push(9);
        }
        expected.sort_unstable();
        let got: Vec<u64> = indices.iter().map(|e| e.n).collect();
        assert_eq!(got, expected, "prime-degree admissibility shape");
    }

    Ok(OddDegreeAdmissibility { d_alpha, indices })
}

/// Evaluates, for odd m > 3, the two predicates that drive the odd-degree
/// theory: whether φ(m)/2 is odd, and φ(m)/2 itself when it is prime.
/// Computed numerically from the factorization of m; the structural
/// equivalences (odd iff m = q^s with q ≡ 3 mod 4; prime p iff m = 2p + 1
/// is prime or m = 9) are what the tests check against this oracle.
pub fn totient_parity_lemmas(m: u64) -> (bool, Option<u64>) {
    assert!(m > 3 && m % 2 == 1, "parity predicates take odd m > 3");
    let half = totient(m) / 2;
    (half % 2 == 1, is_prime(half).then_some(half))
}

/// The quadratic field carrying the cosines at index n: roots of ψ_4 lie in
/// ℚ(√2), roots of ψ_5 in ℚ(√5), roots of ψ_6 in ℚ(√3). These are the only
/// indices beyond 3 whose new parts can have quadratic irrational roots at
/// all, so any other n is rejected.
pub fn quadratic_field_for_n(n: u64) -> Result<u32> {
    match n {
        4 => Ok(2),
        5 => Ok(5),
        6 => Ok(3),
        _ => Err(Error::InvalidArgument(format!(
            "index {n} carries no quadratic cosine field"
        ))),
    }
}

/// The slope coefficient a_k = (2k−1)!·g / ((−4l)^{k−1}·s^{2k−1}·((k−1)!)²)
/// of the degree-(2k−1) polynomial w with w′ = a_k·p^{k−1} and w(α) = h+g√l
/// at the root α = −b + s√l of p = t² + 2bt + c. Errors on s = 0; requires
/// k ≥ 2 and a radicand in {2, 3, 5}.
pub fn a_k_coefficient(k: u32, l: u32, s: &Rational, g: &Rational) -> Result<Rational> {
    assert!(k >= 2, "the slope formula applies to multiplicity k ≥ 2");
    assert!(
        matches!(l, 2 | 3 | 5),
        "quadratic cosine fields have radicand 2, 3 or 5"
    );
    if s.is_zero() {
        return Err(Error::InvalidArgument(
            "the scale s in b² − c = s²·l must be nonzero".into(),
        ));
    }
    let num = Rational::from_integer(factorial(2 * u64::from(k) - 1)) * g;
    let den = Rational::from_integer(BigInt::from(-4 * i64::from(l))).pow(k as i32 - 1)
        * s.pow(2 * k as i32 - 1)
        * Rational::from_integer(factorial(u64::from(k) - 1).pow(2));
    Ok(num / den)
}

/// A rational polynomial meeting a cosine level to prescribed order at a
/// quadratic irrational, together with all the data determining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticReconstruction {
    /// Radicand of the field: 2, 3 or 5.
    pub l: u32,
    /// Positive scale with b² − c = s²·l; the sign of the chosen root is
    /// fixed as α = −b + s√l and the cosine's irrational part carries sign.
    pub s: Rational,
    /// Half the linear coefficient of p = t² + 2bt + c.
    pub b: Rational,
    /// Constant coefficient of p.
    pub c: Rational,
    /// b² − c, equal to s²·l.
    pub disc: Rational,
    /// Irrational part of the cosine value h + g√l.
    pub g: Rational,
    /// Rational part of the cosine value.
    pub h: Rational,
    /// The slope coefficient: w′ = a_k·p^{k−1}.
    pub a_k: Rational,
    /// The reconstructed polynomial, with rational coefficients.
    pub w: QPoly,
}

/// Builds the unique polynomial w ∈ ℚ[t] of degree 2k−1 with
/// w′ = a_k·p^{k−1} and w(α) = cos_value, where α is a root of the monic
/// quadratic p and cos_value = h + g√l is a root of ψ_n, n ∈ {4, 5, 6}.
///
/// The slope a_k comes from the closed formula; that the integration
/// constant cos_value − a_k·∫p^{k−1} evaluated at α is rational — so that w
/// really has rational coefficients — is asserted, as is the independent
/// determination of a_k from the irrational part of that integral, and the
/// exact order k of vanishing of w − cos_value at α. Errors when the
/// splitting field of p or the field of cos_value does not match the field
/// attached to n.
pub fn reconstruct_w(
    p_alpha: &QPoly,
    k: u32,
    n: u64,
    cos_value: &QuadNum,
) -> Result<QuadraticReconstruction> {
    assert!(k >= 2, "reconstruction applies to multiplicity k ≥ 2");
    let l = quadratic_field_for_n(n)?;
    if p_alpha.deg() != 2 || !p_alpha.lc().is_one() {
        return Err(Error::InvalidArgument(
            "the minimal polynomial must be a monic quadratic".into(),
        ));
    }
    if cos_value.radicand() != l {
        return Err(Error::InvalidArgument(format!(
            "cosine value lives in ℚ(√{}), but index {n} requires ℚ(√{l})",
            cos_value.radicand()
        )));
    }
    let b = p_alpha.coeff(1) / rat(2);
    let c = p_alpha.coeff(0);
    let disc = &(&b * &b) - &c;
    let s = match rational_sqrt_exact(&(&disc / rat(i64::from(l)))) {
        Some(s) if !s.is_zero() => s,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "the splitting field of the quadratic is not ℚ(√{l})"
            )))
        }
    };
    debug_assert!(s.is_positive());
    let g = cos_value.b().clone();
    let h = cos_value.a().clone();
    if g.is_zero() {
        return Err(Error::InvalidArgument(
            "the cosine value must be a quadratic irrational".into(),
        ));
    }
    let alpha = QuadNum::new(-b.clone(), s.clone(), l).expect("validated radicand");
    debug_assert!(eval_quad(p_alpha, &alpha).is_zero());
    assert!(
        eval_quad(&psi(n).poly().monic(), cos_value).is_zero(),
        "the cosine value must be a root of ψ_n"
    );

    let a_k = a_k_coefficient(k, l, &s, &g)?;
    let raw_integral = antiderivative(&p_alpha.pow(k as usize - 1));

    // Independent route to the slope: w = a·∫p^{k−1} + C with C rational
    // forces a·(irrational part of the integral at α) = g.
    let tail = eval_quad(&raw_integral, &alpha);
    assert!(!tail.b().is_zero(), "integral of a power of p is irrational at α");
    assert_eq!(
        &g / tail.b(),
        a_k,
        "closed formula disagrees with direct integration"
    );

    let scaled = raw_integral.scale(&a_k);
    let constant = cos_value - &eval_quad(&scaled, &alpha);
    assert!(
        constant.is_rational(),
        "irrational parts failed to cancel in the integration constant"
    );
    let w = &scaled + &QPoly::monomial(constant.a().clone(), 0);

    assert_eq!(
        w.derivative(),
        p_alpha.pow(k as usize - 1).scale(&a_k),
        "defining property of w"
    );
    // w − cos_value vanishes at α to order exactly k.
    assert!((&eval_quad(&w, &alpha) - cos_value).is_zero());
    let mut der = w.clone();
    for j in 1..=k {
        der = der.derivative();
        let val = eval_quad(&der, &alpha);
        if j < k {
            assert!(val.is_zero(), "derivative order {j} must vanish at α");
        } else {
            assert!(!val.is_zero(), "vanishing order at α is exactly k");
        }
    }

    Ok(QuadraticReconstruction {
        l,
        s,
        b,
        c,
        disc,
        g,
        h,
        a_k,
        w,
    })
}

/// The alternating binomial sum Σ_{j=0}^{n} C(n,j)·(−1)^{n−j}/(2j+1),
/// evaluated term by term. It equals (−4)^n·(n!)²/(2n+1)! — the property
/// the tests verify — which shows the sum is never zero and decays fast.
pub fn combinatorial_f(n: u64) -> Rational {
    let mut sum = Rational::zero();
    for j in 0..=n {
        let num = BigInt::from(if (n - j).is_multiple_of(2) { 1 } else { -1 }) * binomial(n, j);
        sum += Rational::new(num, BigInt::from(2 * j + 1));
    }
    sum
}

/// True when (2k−1)!/(4^{k−1}·((k−1)!)²) has negative 2-adic valuation,
/// i.e. an even denominator in lowest terms. This holds for every k ≥ 2,
/// which is why a repeated quadratic irrational root at an index beyond 3
/// would force non-integer coefficients: the slope a_k inherits the even
/// denominator, so u cannot lie in ℤ[t].
pub fn integer_obstruction(k: u64) -> bool {
    assert!(k >= 2, "the obstruction concerns multiplicity k ≥ 2");
    let num = factorial(2 * k - 1);
    let den = BigInt::from(4).pow(k as u32 - 1) * factorial(k - 1).pow(2);
    Rational::new(num, den).denom().is_even()
}

/// A Pell instance whose new part at index n ∈ {2, 3} contains the given
/// monic polynomial p to the exact power k: u = p^k for n = 2 (so the new
/// part 2u is 2p^k) and u = p^k − 1/2 for n = 3 (so 2u + 1 = 2p^k divides
/// the new part 4u² − 1). D = u² − 1 and v = 1; the claimed multiplicity is
/// certified by division before returning. Panics on constant or non-monic
/// p, k = 0, or n outside {2, 3}.
pub fn construct_small_n_example(p: &QPoly, k: u32, n: u64) -> PellInstance {
    assert!(!p.is_constant(), "p must be nonconstant");
    assert!(p.lc().is_one(), "p must be monic");
    assert!(k >= 1, "multiplicity k must be positive");
    assert!(n == 2 || n == 3, "only indices 2 and 3 admit this shape");
    let pk = p.pow(k as usize);
    let u = if n == 2 {
        pk
    } else {
        &pk - &QPoly::monomial(Rational::new(BigInt::one(), BigInt::from(2)), 0)
    };
    let d = &(&u * &u) - &QPoly::one();
    let inst = PellInstance::new(d, u, QPoly::one()).expect("u² − (u² − 1)·1² = 1");
    assert_eq!(
        exact_multiplicity(&v_new_poly(&inst, n), p),
        k,
        "constructed new part contains p^k exactly"
    );
    inst
}

/// Horner evaluation of a rational polynomial at a point of ℚ(√l).
fn eval_quad(f: &QPoly, x: &QuadNum) -> QuadNum {
    let embed = |r: Rational| QuadNum::from_rational(r, x.radicand()).expect("validated radicand");
    let mut acc = embed(Rational::zero());
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * x) + &embed(c.clone());
    }
    acc
}

/// Term-by-term antiderivative with constant 0.
fn antiderivative(f: &QPoly) -> QPoly {
    let mut cs = vec![Rational::zero()];
    for (j, c) in f.coeffs().iter().enumerate() {
        cs.push(c / rat(j as i64 + 1));
    }
    QPoly::new(cs)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: u64, j: u64) -> BigInt {
    factorial(n) / (factorial(j) * factorial(n - j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::from_ints(cs)
    }

    #[test]
    fn admissible_indices_small_degrees() {
        assert_eq!(admissible_n(1).unwrap(), vec![2, 3]);
        assert_eq!(admissible_n(2).unwrap(), vec![2, 3, 4, 5, 6]);
        assert_eq!(admissible_n(3).unwrap(), vec![2, 3, 4, 5, 6, 7, 9]);
        assert!(admissible_n(5).unwrap().contains(&11));
        assert!(matches!(admissible_n(0), Err(Error::InvalidArgument(_))));
        // every listed index really meets the degree condition
        for n in admissible_n(4).unwrap() {
            assert!(totient(2 * n) <= 8);
        }
    }

    #[test]
    fn odd_degree_admissibility_goldens() {
        let d3 = odd_degree_admissibility(3).unwrap();
        assert_eq!(
            d3.indices(),
            &[
                OddAdmissibleIndex { n: 7, q: 7, s: 1 },
                OddAdmissibleIndex { n: 9, q: 3, s: 2 }
            ]
        );
        assert_eq!(odd_degree_admissibility(5).unwrap().index_values(), vec![11]);
        for d in [7, 13, 17, 19] {
            assert!(
                odd_degree_admissibility(d).unwrap().is_empty(),
                "degree {d} admits no index beyond 3"
            );
        }
        let d9 = odd_degree_admissibility(9).unwrap();
        assert_eq!(d9.index_values(), vec![7, 9, 19, 27]);
        assert_eq!(d9.indices()[3], OddAdmissibleIndex { n: 27, q: 3, s: 3 });
        assert!(matches!(
            odd_degree_admissibility(1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            odd_degree_admissibility(6),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn odd_degree_admissibility_matches_direct_scan() {
        // Independent oracle: scan all odd n > 3 in the finite window and
        // test the totient conditions numerically.
        for d in (3..=19).step_by(2) {
            let brute: Vec<u64> = (5..=8 * d * d)
                .step_by(2)
                .filter(|&n| {
                    let half = totient(n) / 2;
                    half % 2 == 1 && d % half == 0
                })
                .collect();
            assert_eq!(
                odd_degree_admissibility(d).unwrap().index_values(),
                brute,
                "degree {d}"
            );
        }
    }

    #[test]
    fn parity_predicates() {
        assert_eq!(totient_parity_lemmas(7), (true, Some(3)));
        assert_eq!(totient_parity_lemmas(9), (true, Some(3)));
        assert_eq!(totient_parity_lemmas(15), (false, None));
        assert_eq!(totient_parity_lemmas(11), (true, Some(5)));
        assert_eq!(totient_parity_lemmas(25), (false, None));
        assert_eq!(totient_parity_lemmas(27), (true, None));
    }

    #[test]
    fn parity_predicates_follow_structure() {
        use crate::psi::factorize;
        for m in (5..=301).step_by(2) {
            let (odd_half, prime_half) = totient_parity_lemmas(m);
            // φ(m)/2 odd exactly for prime powers q^s with q ≡ 3 (mod 4)
            let fac = factorize(m);
            let structural = fac.len() == 1 && fac[0].0 % 4 == 3;
            assert_eq!(odd_half, structural, "m = {m}");
            // φ(m)/2 = p prime exactly for m = 2p + 1 prime, or m = 9
            match prime_half {
                Some(p) => assert!((is_prime(m) && m == 2 * p + 1) || m == 9, "m = {m}"),
                None => assert!(!(is_prime(m) && is_prime((m - 1) / 2)) && m != 9, "m = {m}"),
            }
        }
    }

    #[test]
    fn quadratic_fields() {
        assert_eq!(quadratic_field_for_n(4).unwrap(), 2);
        assert_eq!(quadratic_field_for_n(5).unwrap(), 5);
        assert_eq!(quadratic_field_for_n(6).unwrap(), 3);
        for n in [1, 2, 3, 7, 8, 12] {
            assert!(matches!(
                quadratic_field_for_n(n),
                Err(Error::InvalidArgument(_))
            ));
        }
    }

    #[test]
    fn slope_coefficient_values() {
        let half = ratio(1, 2);
        assert_eq!(a_k_coefficient(2, 2, &rat(1), &half).unwrap(), ratio(-3, 8));
        assert_eq!(a_k_coefficient(2, 3, &rat(1), &half).unwrap(), ratio(-1, 4));
        assert_eq!(a_k_coefficient(3, 2, &rat(1), &half).unwrap(), ratio(15, 64));
        // odd power of s: flipping its sign flips the result's sign pattern
        assert_eq!(a_k_coefficient(2, 2, &rat(-1), &half).unwrap(), ratio(3, 8));
        assert!(matches!(
            a_k_coefficient(2, 2, &rat(0), &half),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn reconstruction_golden_sqrt2() {
        // p = t² − 2, k = 2, index 4, cosine (1/2)√2
        let p = qp(&[-2, 0, 1]);
        let cos = QuadNum::new(rat(0), ratio(1, 2), 2).unwrap();
        let rec = reconstruct_w(&p, 2, 4, &cos).unwrap();
        assert_eq!(rec.l, 2);
        assert_eq!(rec.s, rat(1));
        assert_eq!(rec.b, rat(0));
        assert_eq!(rec.c, rat(-2));
        assert_eq!(rec.disc, rat(2));
        assert_eq!(rec.g, ratio(1, 2));
        assert_eq!(rec.h, rat(0));
        assert_eq!(rec.a_k, ratio(-3, 8));
        assert_eq!(
            rec.w,
            QPoly::new(vec![rat(0), ratio(3, 4), rat(0), ratio(-1, 8)])
        );
        // conjugate cosine pairs with the conjugate root: mirrored w
        let cosc = QuadNum::new(rat(0), ratio(-1, 2), 2).unwrap();
        let recc = reconstruct_w(&p, 2, 4, &cosc).unwrap();
        assert_eq!(
            recc.w,
            QPoly::new(vec![rat(0), ratio(-3, 4), rat(0), ratio(1, 8)])
        );
    }

    #[test]
    fn reconstruction_golden_sqrt3_and_sqrt5() {
        // index 6: cosine (1/2)√3, root of ψ_6 = 4x² − 3
        let rec = reconstruct_w(
            &qp(&[-3, 0, 1]),
            2,
            6,
            &QuadNum::new(rat(0), ratio(1, 2), 3).unwrap(),
        )
        .unwrap();
        assert_eq!(rec.a_k, ratio(-1, 4));
        assert_eq!(
            rec.w,
            QPoly::new(vec![rat(0), ratio(3, 4), rat(0), ratio(-1, 12)])
        );
        // index 5: cosine (1 + √5)/4, root of ψ_5; nonzero constant term
        let rec5 = reconstruct_w(
            &qp(&[-5, 0, 1]),
            2,
            5,
            &QuadNum::new(ratio(1, 4), ratio(1, 4), 5).unwrap(),
        )
        .unwrap();
        assert_eq!(rec5.a_k, ratio(-3, 40));
        assert_eq!(
            rec5.w,
            QPoly::new(vec![ratio(1, 4), ratio(3, 8), rat(0), ratio(-1, 40)])
        );
    }

    #[test]
    fn reconstruction_field_mismatches() {
        let cos2 = QuadNum::new(rat(0), ratio(1, 2), 2).unwrap();
        // wrong index for a √2 cosine
        assert!(matches!(
            reconstruct_w(&qp(&[-2, 0, 1]), 2, 6, &cos2),
            Err(Error::InvalidArgument(_))
        ));
        // quadratic splitting over ℚ(√3) cannot meet a √2 cosine at index 4
        assert!(matches!(
            reconstruct_w(&qp(&[-3, 0, 1]), 2, 4, &cos2),
            Err(Error::InvalidArgument(_))
        ));
        // reducible quadratic: t² − 1 splits over ℚ
        assert!(matches!(
            reconstruct_w(&qp(&[-1, 0, 1]), 2, 4, &cos2),
            Err(Error::InvalidArgument(_))
        ));
        // rational "cosine"
        assert!(matches!(
            reconstruct_w(
                &qp(&[-2, 0, 1]),
                2,
                4,
                &QuadNum::from_rational(ratio(1, 2), 2).unwrap()
            ),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn alternating_sum_closed_form() {
        assert_eq!(combinatorial_f(0), rat(1));
        assert_eq!(combinatorial_f(1), ratio(-2, 3));
        assert_eq!(combinatorial_f(3), ratio(-16, 35));
        for n in 0..=50 {
            let closed = Rational::new(
                BigInt::from(-4).pow(n as u32) * factorial(n).pow(2),
                factorial(2 * n + 1),
            );
            assert_eq!(combinatorial_f(n), closed, "n = {n}");
        }
    }

    #[test]
    fn obstruction_always_fires() {
        for k in 2..=200 {
            assert!(integer_obstruction(k), "k = {k}");
        }
    }

    #[test]
    fn report_quadratic_root_at_index_two() {
        // u = (t² − 2)², D = u² − 1: the double root of u′ at ±√2 maps to
        // u(±√2) = 0 = cos(π/2), a root of ψ_2; multiplicity 2 in 2u.
        let p = qp(&[-2, 0, 1]);
        let inst = construct_small_n_example(&p, 2, 2);
        let report = repeated_roots_report(&inst);
        assert_eq!(
            report,
            vec![RepeatedRootSpec {
                p_alpha: p,
                d_alpha: 2,
                n: 2,
                k: 1,
                certified_multiplicity: 2,
                cos_min_poly: Some(qp(&[0, 1])),
            }]
        );
        // the rational root t = 0 of u′ was rejected: u(0) = 4 is no cosine
    }

    #[test]
    fn report_triple_rational_root() {
        let p = qp(&[-5, 1]);
        let inst = construct_small_n_example(&p, 3, 2);
        let report = repeated_roots_report(&inst);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].p_alpha, p);
        assert_eq!(report[0].n, 2);
        assert_eq!(report[0].k, 2);
        assert_eq!(report[0].certified_multiplicity, 3);
    }

    #[test]
    fn report_empty_for_linear_u() {
        let inst = construct_small_n_example(&qp(&[0, 1]), 1, 2);
        assert!(repeated_roots_report(&inst).is_empty());
    }

    #[test]
    fn report_index_three_construction() {
        // u = (t² + t + 1)² − 1/2: then 2u + 1 = 2(t² + t + 1)² divides
        // 4u² − 1, the new part at index 3.
        let p = qp(&[1, 1, 1]);
        let inst = construct_small_n_example(&p, 2, 3);
        let report = repeated_roots_report(&inst);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].p_alpha, p);
        assert_eq!(report[0].n, 3);
        assert_eq!(report[0].k, 1);
        assert_eq!(report[0].certified_multiplicity, 2);
        assert_eq!(report[0].cos_min_poly, Some(QPoly::new(vec![ratio(1, 2), rat(1)])));
    }

    #[test]
    fn report_repeated_factor_of_v_itself() {
        // u = 2t⁴ + 1, v = t², D = 4t⁴ + 4: v has the double factor t, and
        // u′ = 8t³ carries it to order 3 = 2·2 − 1.
        let d = qp(&[4, 0, 0, 0, 4]);
        let u = qp(&[1, 0, 0, 0, 2]);
        let v = qp(&[0, 0, 1]);
        let inst = PellInstance::new(d, u, v).unwrap();
        let report = repeated_roots_report(&inst);
        assert_eq!(
            report,
            vec![RepeatedRootSpec {
                p_alpha: qp(&[0, 1]),
                d_alpha: 1,
                n: 1,
                k: 3,
                certified_multiplicity: 2,
                cos_min_poly: None,
            }]
        );
    }

    #[test]
    fn reconstruction_feeds_back_into_report() {
        // u = p² + w puts a double root at ±√2 whose image is the index-4
        // cosine (1/2)√2; the report must find it with multiplicity 2.
        let p = qp(&[-2, 0, 1]);
        let cos = QuadNum::new(rat(0), ratio(1, 2), 2).unwrap();
        let rec = reconstruct_w(&p, 2, 4, &cos).unwrap();
        let u = &p.pow(2) + &rec.w;
        let d = &(&u * &u) - &QPoly::one();
        let inst = PellInstance::new(d, u, QPoly::one()).unwrap();
        let report = repeated_roots_report(&inst);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].p_alpha, p);
        assert_eq!(report[0].n, 4);
        assert_eq!(report[0].k, 1);
        assert_eq!(report[0].certified_multiplicity, 2);
        assert_eq!(
            report[0].cos_min_poly,
            Some(QPoly::new(vec![ratio(-1, 2), rat(0), rat(1)]))
        );
    }

    #[test]
    fn integer_instances_have_no_quadratic_roots_beyond_index_three() {
        // deterministic small LCG over integer u of degree ≤ 4
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        let mut tested = 0;
        while tested < 8 {
            let deg = 2 + (next().unsigned_abs() as usize % 3);
            let mut cs: Vec<i64> = (0..deg).map(|_| next()).collect();
            cs.push(1 + next().abs());
            let u = qp(&cs);
            if u.is_constant() {
                continue;
            }
            let d = &(&u * &u) - &QPoly::one();
            let inst = PellInstance::new(d, u, QPoly::one()).unwrap();
            for spec in repeated_roots_report(&inst) {
                assert!(
                    !(spec.d_alpha == 2 && spec.n > 3),
                    "integer u admits no quadratic repeated root beyond index 3"
                );
            }
            tested += 1;
        }
    }

    #[test]
    fn construction_validates_multiplicity() {
        let inst = construct_small_n_example(&qp(&[-2, 0, 1]), 2, 2);
        assert_eq!(inst.u(), &qp(&[-2, 0, 1]).pow(2));
        assert_eq!(inst.v(), &QPoly::one());
        let inst3 = construct_small_n_example(&qp(&[0, 1]), 1, 3);
        assert_eq!(inst3.u(), &QPoly::new(vec![ratio(-1, 2), rat(1)]));
    }
}
