//! Factorization over ℚ[t].
//!
//! The pipeline for a nonzero rational polynomial: split off the content
//! and make the primitive integer polynomial; squarefree-decompose it;
//! factor each squarefree part modulo a well-chosen small prime; Hensel
//! lift past a coefficient bound; recombine subsets of lifted factors by
//! trial division. A degree-capped entry point reuses the same pipeline
//! with a much smaller bound and returns only the factors up to the cap.

mod hensel;
mod zassenhaus;
mod zp;

use std::fmt;

use num_traits::{One, Zero};

use crate::numeric::Rational;
use crate::poly::{content_primitive_int, poly_from_ints_big, yun_squarefree, Poly};

/// A polynomial in factored form: content times a product of monic
/// nonconstant factors with multiplicities. Produced with irreducible
/// factors by [`factor_rationals`] and with squarefree, pairwise coprime
/// factors by [`squarefree_decompose`]. Factors are kept in a canonical
/// order: ascending degree, then ascending coefficient lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredPoly {
    content: Rational,
    factors: Vec<(Poly<Rational>, u32)>,
}

impl FactoredPoly {
    /// Assemble from parts; sorts canonically and validates shape.
    pub fn from_parts(content: Rational, factors: Vec<(Poly<Rational>, u32)>) -> Self {
        for (g, m) in &factors {
            assert!(!g.is_constant(), "factored-form parts must be nonconstant");
            assert!(g.lc().is_one(), "factored-form parts must be monic");
            assert!(*m >= 1, "multiplicities start at 1");
        }
        let mut factors = factors;
        factors.sort_by(|(a, _), (b, _)| canonical_poly_cmp(a, b));
        FactoredPoly { content, factors }
    }

    pub fn content(&self) -> &Rational {
        &self.content
    }

    pub fn factors(&self) -> &[(Poly<Rational>, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total degree Σ mᵢ·deg gᵢ.
    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(g, m)| g.deg() * *m as usize)
            .sum()
    }

    /// Number of factors counted with multiplicity.
    pub fn count_with_multiplicity(&self) -> usize {
        self.factors.iter().map(|&(_, m)| m as usize).sum()
    }

    /// Multiply out to a plain polynomial.
    pub fn expand(&self) -> Poly<Rational> {
        self.factors
            .iter()
            .fold(Poly::constant(self.content.clone()), |acc, (g, m)| {
                &acc * &g.pow(*m as usize)
            })
    }

    /// Multiplicity of a factor, compared modulo a scalar (0 if absent).
    pub fn multiplicity_of(&self, g: &Poly<Rational>) -> u32 {
        if g.is_zero() || g.is_constant() {
            return 0;
        }
        let gm = g.monic();
        self.factors
            .iter()
            .find(|(f, _)| *f == gm)
            .map_or(0, |&(_, m)| m)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.content);
        }
        if !self.content.is_one() {
            write!(f, "{} * ", self.content)?;
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(g, m)| {
                if *m == 1 {
                    format!("({g})")
                } else {
                    format!("({g})^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Canonical order on polynomials: degree, then coefficient lists compared
/// from the constant term up.
pub fn canonical_poly_cmp(a: &Poly<Rational>, b: &Poly<Rational>) -> std::cmp::Ordering {
    a.coeffs()
        .len()
        .cmp(&b.coeffs().len())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Equality up to a nonzero rational scalar: both zero, or monic forms equal.
pub fn scalar_equivalent(f: &Poly<Rational>, g: &Poly<Rational>) -> bool {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => true,
        (false, false) => f.monic() == g.monic(),
        _ => false,
    }
}

/// Squarefree decomposition f = content · ∏ gᵢ^i with monic squarefree
/// pairwise coprime gᵢ. Panics on f = 0.
pub fn squarefree_decompose(f: &Poly<Rational>) -> FactoredPoly {
    let (content, parts) = yun_squarefree(f);
    FactoredPoly::from_parts(content, parts)
}

/// Complete factorization into content and monic irreducible factors with
/// multiplicities. Panics on f = 0; constants give an empty factor list.
pub fn factor_rationals(f: &Poly<Rational>) -> FactoredPoly {
    assert!(!f.is_zero(), "factorization of the zero polynomial");
    let (content, parts) = yun_squarefree(f);
    let mut factors = Vec::new();
    for (g, m) in parts {
        for h in factor_monic_capped(&g, g.deg()) {
            factors.push((h, m));
        }
    }
    let out = FactoredPoly::from_parts(content, factors);
    debug_assert_eq!(out.expand(), *f, "factorization must reassemble the input");
    out
}

/// The monic irreducible factors of f of degree ≤ cap, with multiplicities,
/// canonically ordered. Sound and complete for that degree range; runs the
/// same pipeline as the full factorization but with the coefficient bound
/// of a degree-≤cap divisor, which is what makes small-factor searches on
/// large polynomials cheap. Panics on f = 0.
pub fn factors_up_to_degree(f: &Poly<Rational>, cap: usize) -> Vec<(Poly<Rational>, u32)> {
    assert!(!f.is_zero(), "factor search on the zero polynomial");
    if f.is_constant() || cap == 0 {
        return Vec::new();
    }
    let (_, parts) = yun_squarefree(f);
    let mut out: Vec<(Poly<Rational>, u32)> = Vec::new();
    for (g, m) in parts {
        for h in factor_monic_capped(&g, cap) {
            out.push((h, m));
        }
    }
    out.sort_by(|(a, _), (b, _)| canonical_poly_cmp(a, b));
    out
}

/// All rational roots with multiplicities, descending. The roots are the
/// linear factors t − r of the factorization.
pub fn rational_roots(f: &Poly<Rational>) -> Vec<Rational> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let mut roots = Vec::new();
    for (g, m) in factors_up_to_degree(f, 1) {
        debug_assert_eq!(g.deg(), 1);
        let r = -g.coeff(0);
        for _ in 0..m {
            roots.push(r.clone());
        }
    }
    roots.sort();
    roots.reverse();
    roots
}

/// Largest e with p^e dividing f, by repeated exact division. Does not
/// require p to be irreducible. Panics on f = 0 or constant p.
pub fn exact_multiplicity(f: &Poly<Rational>, p: &Poly<Rational>) -> u32 {
    assert!(!f.is_zero(), "multiplicity in the zero polynomial");
    assert!(!p.is_constant(), "multiplicity of a constant divisor");
    let mut rest = f.clone();
    let mut e = 0;
    while let Some(q) = rest.try_exact_div(p) {
        rest = q;
        e += 1;
    }
    e
}

/// Irreducible monic factors of a monic squarefree polynomial, up to the
/// degree cap.
fn factor_monic_capped(g: &Poly<Rational>, cap: usize) -> Vec<Poly<Rational>> {
    if g.is_constant() || cap == 0 {
        return Vec::new();
    }
    let (_, ints) = content_primitive_int(g);
    let f_int = Poly::new(ints);
    zassenhaus::factor_primitive_squarefree(&f_int, cap)
        .into_iter()
        .map(|h| poly_from_ints_big(h.coeffs()).monic())
        .collect()
}
