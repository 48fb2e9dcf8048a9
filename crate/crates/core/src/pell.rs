//! The polynomial Pell equation u² − D·v² = 1 over ℚ[t].
//!
//! For nonconstant D of even degree whose leading coefficient is a rational
//! square, √D lives in the Laurent field ℚ((1/t)) and has a continued
//! fraction with polynomial partial quotients. Whenever the expansion
//! reaches a constant remainder form, the current convergent (h, k)
//! satisfies h² − D·k² = c for a nonzero rational c, and a solution of the
//! Pell equation proper is obtained by normalizing c away. The solver
//! returns the fundamental solution — the one with v of minimal degree —
//! and [`PellInstance::generate`] produces the whole family
//! uₙ + vₙ√D = (u + v√D)ⁿ.
//!
//! The expansion itself needs no Laurent arithmetic beyond the polynomial
//! part a₀ of √D: the polynomial part of (Pᵢ + √D)/Qᵢ equals the quotient
//! of Pᵢ + a₀ by Qᵢ, because √D − a₀ contributes only negative powers of t
//! and taking polynomial parts is linear. Every step is therefore a single
//! exact polynomial division.

use num_traits::{One, Signed, Zero};

use crate::numeric::{rat, rational_sqrt_exact, Rational};
use crate::poly::{laurent_sqrt, squarefree_part};
use crate::{Error, QPoly, Result};

/// Default step budget for the continued-fraction search.
pub const DEFAULT_MAX_STEPS: usize = 64;

/// One completed step of the continued-fraction expansion of √D:
/// the state (Pᵢ, Qᵢ) it consumed, the partial quotient aᵢ it produced,
/// and the convergent (hᵢ, kᵢ) after incorporating aᵢ.
#[derive(Clone, Debug)]
pub struct CfStep {
    pub i: usize,
    pub p: QPoly,
    pub q: QPoly,
    pub a: QPoly,
    pub h: QPoly,
    pub k: QPoly,
}

/// Continued-fraction expansion of √D with exact polynomial state.
///
/// The expansion is infinite (eventually periodic exactly when the Pell
/// equation is solvable), so the caller drives it: [`advance`] performs one
/// step, and [`pending_q`] exposes the next remainder form Q so the caller
/// can stop at the first constant one.
///
/// [`advance`]: CfExpansion::advance
/// [`pending_q`]: CfExpansion::pending_q
pub struct CfExpansion {
    d: QPoly,
    a0: QPoly,
    /// (P, Q) of the upcoming step.
    p: QPoly,
    q: QPoly,
    /// Convergents one and two steps back.
    h1: QPoly,
    h2: QPoly,
    k1: QPoly,
    k2: QPoly,
    /// Index of the upcoming step.
    i: usize,
}

impl CfExpansion {
    /// Set up the expansion of √D, rejecting inputs for which no
    /// nontrivial solution can exist: D constant or zero (invalid), odd
    /// degree, leading coefficient not a rational square, or D a perfect
    /// square (only u = ±1, v = 0 solve the equation then).
    pub fn new(d: &QPoly) -> Result<Self> {
        if d.is_constant() {
            return Err(Error::InvalidArgument(
                "D must be a nonconstant polynomial".into(),
            ));
        }
        let tail = laurent_sqrt(d, d.deg() / 2 + 2)?;
        let a0 = tail.polynomial_part();
        if &(&a0 * &a0) == d {
            return Err(Error::OnlyTrivialSolutions);
        }
        Ok(CfExpansion {
            d: d.clone(),
            a0,
            p: QPoly::zero(),
            q: QPoly::one(),
            h1: QPoly::one(),
            h2: QPoly::zero(),
            k1: QPoly::zero(),
            k2: QPoly::one(),
            i: 0,
        })
    }

    /// Polynomial part a₀ of √D.
    pub fn polynomial_part(&self) -> &QPoly {
        &self.a0
    }

    /// The remainder form Qᵢ of the upcoming step. The expansion of a
    /// solvable instance reaches a constant here after ≥ 1 steps.
    pub fn pending_q(&self) -> &QPoly {
        &self.q
    }

    /// Number of steps performed so far.
    pub fn steps_taken(&self) -> usize {
        self.i
    }

    /// Perform one step: aᵢ = ⌊(Pᵢ + √D)/Qᵢ⌋, update the convergent, and
    /// advance to (Pᵢ₊₁, Qᵢ₊₁).
    pub fn advance(&mut self) -> CfStep {
        let i = self.i;
        let (a, _) = (&self.p + &self.a0).div_rem(&self.q);
        assert!(
            i == 0 || a.deg() >= 1,
            "partial quotients after the first must be nonconstant"
        );
        let h = &(&a * &self.h1) + &self.h2;
        let k = &(&a * &self.k1) + &self.k2;
        // hᵢ·kᵢ₋₁ − hᵢ₋₁·kᵢ = (−1)^(i−1), the convergent determinant.
        let det = &(&h * &self.k1) - &(&self.h1 * &k);
        let expected = if i.is_multiple_of(2) { -1 } else { 1 };
        assert_eq!(det, QPoly::from_ints(&[expected]), "convergent determinant");

        let p_next = &(&a * &self.q) - &self.p;
        let q_next = (&self.d - &(&p_next * &p_next))
            .try_exact_div(&self.q)
            .expect("Q must divide D - P^2 exactly");
        assert!(!q_next.is_zero(), "D is not a perfect square");
        assert!(
            q_next.degree().unwrap_or(0) < self.a0.deg(),
            "remainder form degree must stay below deg a0"
        );
        // hᵢ² − D·kᵢ² = (−1)^(i+1)·Qᵢ₊₁ ties convergents to remainder forms.
        debug_assert_eq!(
            &(&h * &h) - &(&(&self.d * &k) * &k),
            if i.is_multiple_of(2) { -q_next.clone() } else { q_next.clone() },
            "form value identity"
        );

        let step = CfStep {
            i,
            p: std::mem::replace(&mut self.p, p_next),
            q: std::mem::replace(&mut self.q, q_next),
            a,
            h: h.clone(),
            k: k.clone(),
        };
        self.h2 = std::mem::replace(&mut self.h1, h);
        self.k2 = std::mem::replace(&mut self.k1, k);
        self.i = i + 1;
        step
    }
}

/// Fundamental solution of u² − D·v² = 1, found by expanding √D until the
/// first constant remainder form.
///
/// `Ok(Some((u, v)))` is the fundamental solution with lc(u) > 0 and
/// lc(v) > 0. `Ok(None)` means the budget ran out without reaching a
/// constant remainder form — the instance may still be solvable, so this
/// is "unknown", not a certificate. The error cases are certificates:
/// odd degree and non-square leading coefficient make the equation
/// unsolvable outright, and perfect-square D admits only u = ±1, v = 0.
pub fn fundamental_solution(
    d: &QPoly,
    max_steps: usize,
) -> Result<Option<(QPoly, QPoly)>> {
    Ok(fundamental_solution_counted(d, max_steps)?.map(|(u, v, _)| (u, v)))
}

/// Like [`fundamental_solution`], but also reports how many expansion
/// steps were consumed before the constant remainder form appeared.
pub fn fundamental_solution_counted(
    d: &QPoly,
    max_steps: usize,
) -> Result<Option<(QPoly, QPoly, usize)>> {
    let mut cf = CfExpansion::new(d)?;
    for _ in 0..max_steps {
        let step = cf.advance();
        if cf.pending_q().is_constant() {
            let form = &(&step.h * &step.h) - &(&(d * &step.k) * &step.k);
            assert!(form.is_constant(), "terminal form value must be constant");
            let c = form.coeff(0);
            assert!(!c.is_zero());
            let (u, v) = normalize_solution(d, step.h, step.k, &c);
            assert!(is_pell_solution(&u, &v, d));
            assert_eq!(
                u.deg(),
                v.deg() + d.deg() / 2,
                "degree balance of a Pell solution"
            );
            return Ok(Some((u, v, cf.steps_taken())));
        }
    }
    Ok(None)
}

/// Turn h² − D·k² = c into an exact solution of u² − D·v² = 1.
///
/// If c = s² is a rational square, (h/s, k/s) already solves the equation
/// and keeps the degree of v — this is where the fundamental solution with
/// constant v comes from. Otherwise the composition-of-forms square
/// ((h² + D·k²)/c, 2hk/c) does, exactly: its form value is (h² − D·k²)²/c²
/// = 1. Signs are normalized so both leading coefficients are positive.
fn normalize_solution(d: &QPoly, h: QPoly, k: QPoly, c: &Rational) -> (QPoly, QPoly) {
    let (mut u, mut v) = if let Some(s) = rational_sqrt_exact(c) {
        let inv = s.recip();
        (h.scale(&inv), k.scale(&inv))
    } else {
        let inv = c.recip();
        let u2 = (&(&h * &h) + &(&(d * &k) * &k)).scale(&inv);
        let v2 = (&h * &k).scale(&(rat(2) * &inv));
        (u2, v2)
    };
    if u.lc().is_negative() {
        u = -u;
    }
    if v.lc().is_negative() {
        v = -v;
    }
    (u, v)
}

/// True exactly when u² − D·v² = 1 as polynomials.
pub fn is_pell_solution(u: &QPoly, v: &QPoly, d: &QPoly) -> bool {
    &(u * u) - &(&(d * v) * v) == QPoly::one()
}

/// A solvable instance: D together with its fundamental solution (u, v).
///
/// Solutions of uₙ² − D·vₙ² = 1 form a group generated by u + v√D (up to
/// sign), and [`generate`](PellInstance::generate) walks it. Instances are
/// immutable; construction normalizes lc(u) > 0, lc(v) > 0.
#[derive(Clone, Debug)]
pub struct PellInstance {
    d: QPoly,
    u: QPoly,
    v: QPoly,
}

impl PellInstance {
    /// Wrap a known solution after checking it: D nonconstant of even
    /// degree, v ≠ 0, and u² − D·v² = 1 exactly. Fundamentality (minimal
    /// degree of v) is the caller's responsibility.
    pub fn new(d: QPoly, u: QPoly, v: QPoly) -> Result<Self> {
        if d.is_constant() {
            return Err(Error::InvalidArgument(
                "D must be a nonconstant polynomial".into(),
            ));
        }
        if !d.deg().is_multiple_of(2) {
            return Err(Error::InvalidArgument(
                "D must have even degree".into(),
            ));
        }
        if v.is_zero() {
            return Err(Error::InvalidArgument(
                "the fundamental solution must have v != 0".into(),
            ));
        }
        if !is_pell_solution(&u, &v, &d) {
            return Err(Error::InvalidArgument(
                "u^2 - D v^2 = 1 does not hold".into(),
            ));
        }
        let u = if u.lc().is_negative() { -u } else { u };
        let v = if v.lc().is_negative() { -v } else { v };
        Ok(PellInstance { d, u, v })
    }

    /// Solve for the fundamental solution of D within the step budget.
    /// `Ok(None)` reports an exhausted budget (unknown), errors are
    /// certified negatives.
    pub fn solve(d: &QPoly, max_steps: usize) -> Result<Option<Self>> {
        match fundamental_solution(d, max_steps)? {
            Some((u, v)) => Ok(Some(PellInstance::new(d.clone(), u, v)?)),
            None => Ok(None),
        }
    }

    pub fn d(&self) -> &QPoly {
        &self.d
    }

    pub fn u(&self) -> &QPoly {
        &self.u
    }

    pub fn v(&self) -> &QPoly {
        &self.v
    }

    /// The n-th solution uₙ + vₙ√D = (u + v√D)ⁿ, via the recurrence
    /// uₘ₊₁ = u·uₘ + D·v·vₘ, vₘ₊₁ = u·vₘ + v·uₘ from (u₀, v₀) = (1, 0).
    /// Negative n mirrors through u₋ₙ = uₙ, v₋ₙ = −vₙ. The Pell identity
    /// of the result is re-verified before returning.
    pub fn generate(&self, n: i64) -> SolutionIndex {
        let dv = &self.d * &self.v;
        let mut u_n = QPoly::one();
        let mut v_n = QPoly::zero();
        for _ in 0..n.unsigned_abs() {
            let next_u = &(&self.u * &u_n) + &(&dv * &v_n);
            let next_v = &(&self.u * &v_n) + &(&self.v * &u_n);
            u_n = next_u;
            v_n = next_v;
        }
        if n < 0 {
            v_n = -v_n;
        }
        assert!(
            is_pell_solution(&u_n, &v_n, &self.d),
            "generated solution must satisfy the Pell identity"
        );
        SolutionIndex { n, u_n, v_n }
    }
}

/// The n-th solution of an instance; n may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionIndex {
    pub n: i64,
    pub u_n: QPoly,
    pub v_n: QPoly,
}

/// Certifying non-solvability from root multiplicities: if the squarefree
/// part of D has degree ≤ ½·deg D — i.e. D has few distinct complex zeros
/// — the equation u² − D·v² = 1 has no nontrivial solution. `Ok(false)`
/// means the test is inconclusive, not that D is solvable.
pub fn dubickas_nonpellian(d: &QPoly) -> Result<bool> {
    if d.is_constant() {
        return Err(Error::InvalidArgument(
            "D must be a nonconstant polynomial".into(),
        ));
    }
    Ok(2 * squarefree_part(d).deg() <= d.deg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;
    use crate::poly::Poly;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_ints(cs)
    }

    #[test]
    fn expansion_steps_of_degree_eight_example() {
        // D = t⁸ + 4t⁶ + 6t⁴ + 5t² + 2
        let d = p(&[2, 0, 5, 0, 6, 0, 4, 0, 1]);
        let mut cf = CfExpansion::new(&d).unwrap();
        assert_eq!(cf.polynomial_part(), &p(&[1, 0, 2, 0, 1])); // t⁴ + 2t² + 1
        let s0 = cf.advance();
        assert_eq!(s0.a, p(&[1, 0, 2, 0, 1]));
        assert_eq!(cf.pending_q(), &p(&[1, 0, 1])); // Q₁ = t² + 1
        let s1 = cf.advance();
        assert_eq!(s1.a, p(&[2, 0, 2])); // a₁ = 2t² + 2
        assert_eq!(cf.pending_q(), &QPoly::one()); // Q₂ = 1 → stop
        assert_eq!(s1.h, p(&[3, 0, 6, 0, 6, 0, 2]));
        assert_eq!(s1.k, p(&[2, 0, 2]));
    }

    #[test]
    fn fundamental_solutions_match_known_instances() {
        let cases: [(&[i64], &[i64], &[i64]); 3] = [
            (&[-1, 0, 1], &[0, 1], &[1]),                 // t²−1 → (t, 1)
            (&[0, 0, 1, 0, 1], &[1, 0, 2], &[2]),         // t⁴+t² → (2t²+1, 2)
            (
                &[2, 0, 5, 0, 6, 0, 4, 0, 1],
                &[3, 0, 6, 0, 6, 0, 2],
                &[2, 0, 2],
            ), // deg 8 → (2t⁶+6t⁴+6t²+3, 2t²+2)
        ];
        for (d, u, v) in cases {
            let (d, u, v) = (p(d), p(u), p(v));
            let got = fundamental_solution(&d, DEFAULT_MAX_STEPS).unwrap().unwrap();
            assert_eq!(got, (u, v), "for D = {d}");
        }
    }

    #[test]
    fn counted_solution_reports_steps() {
        let (u, v, steps) = fundamental_solution_counted(&p(&[-1, 0, 1]), 8)
            .unwrap()
            .unwrap();
        assert_eq!((u, v, steps), (p(&[0, 1]), p(&[1]), 1));
        let (.., steps) = fundamental_solution_counted(&p(&[2, 0, 5, 0, 6, 0, 4, 0, 1]), 8)
            .unwrap()
            .unwrap();
        assert_eq!(steps, 2);
        assert_eq!(fundamental_solution_counted(&p(&[1, 1, 0, 0, 1]), 3).unwrap(), None);
    }

    #[test]
    fn doubling_case_with_nonsquare_form_value() {
        // √(t²+1) stops with c = −1, so the composed square is fundamental.
        let d = p(&[1, 0, 1]);
        let (u, v) = fundamental_solution(&d, 8).unwrap().unwrap();
        assert_eq!(u, p(&[1, 0, 2]));
        assert_eq!(v, p(&[0, 2]));
    }

    #[test]
    fn certified_failures() {
        assert!(matches!(
            fundamental_solution(&p(&[1, 0, 0, 1]), 8),
            Err(Error::NotPellianOddDegree)
        ));
        assert!(matches!(
            fundamental_solution(&p(&[1, 0, 2]), 8),
            Err(Error::NotPellianLeadingCoeff)
        ));
        // (t²+1)² is a perfect square
        assert!(matches!(
            fundamental_solution(&p(&[1, 0, 2, 0, 1]), 8),
            Err(Error::OnlyTrivialSolutions)
        ));
        assert!(matches!(
            fundamental_solution(&p(&[4]), 8),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            fundamental_solution(&QPoly::zero(), 8),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn budget_exhaustion_is_unknown_not_negative() {
        // t⁴ + t + 1: the expansion does not reach a constant remainder
        // form within a small budget.
        let d = p(&[1, 1, 0, 0, 1]);
        assert_eq!(fundamental_solution(&d, 6).unwrap(), None);
    }

    #[test]
    fn generated_family_matches_closed_forms() {
        let inst = PellInstance::solve(&p(&[-1, 0, 1]), 8).unwrap().unwrap();
        let (u, v) = (inst.u().clone(), inst.v().clone());
        assert_eq!(inst.generate(0).u_n, QPoly::one());
        assert_eq!(inst.generate(0).v_n, QPoly::zero());
        assert_eq!(inst.generate(1).u_n, u);
        assert_eq!(inst.generate(1).v_n, v);
        // (u + v√D)² = (2u² − 1) + 2uv·√D, using Dv² = u² − 1
        let s2 = inst.generate(2);
        assert_eq!(s2.u_n, &(&u * &u).scale(&rat(2)) - &QPoly::one());
        assert_eq!(s2.v_n, (&u * &v).scale(&rat(2)));
        // mirror solutions
        let sm2 = inst.generate(-2);
        assert_eq!(sm2.u_n, s2.u_n);
        assert_eq!(sm2.v_n, -s2.v_n);
    }

    #[test]
    fn third_solution_agrees_with_chebyshev_route() {
        // For D = t²−1 the recurrence and v·(4u²−1) must coincide at n = 3.
        let inst = PellInstance::solve(&p(&[-1, 0, 1]), 8).unwrap().unwrap();
        let s3 = inst.generate(3);
        assert_eq!(s3.u_n, p(&[0, -3, 0, 4])); // 4t³ − 3t
        assert_eq!(s3.v_n, p(&[-1, 0, 4])); // 4t² − 1
        let via_product = inst.v() * &p(&[-1, 0, 4]).compose(inst.u());
        assert_eq!(s3.v_n, via_product);
    }

    #[test]
    fn pell_identity_predicate() {
        let d = p(&[-1, 0, 1]);
        assert!(is_pell_solution(&p(&[0, 1]), &p(&[1]), &d));
        assert!(is_pell_solution(&QPoly::one(), &QPoly::zero(), &d));
        assert!(is_pell_solution(&QPoly::one(), &QPoly::zero(), &p(&[7, 7])));
        assert!(!is_pell_solution(&p(&[0, 1]), &p(&[0, 1]), &d));
    }

    #[test]
    fn instance_validation() {
        assert!(PellInstance::new(p(&[-1, 0, 1]), p(&[0, 1]), p(&[1])).is_ok());
        // wrong identity
        assert!(PellInstance::new(p(&[-1, 0, 1]), p(&[0, 1]), p(&[0, 1])).is_err());
        // v = 0
        assert!(PellInstance::new(p(&[-1, 0, 1]), QPoly::one(), QPoly::zero()).is_err());
        // odd degree D
        assert!(PellInstance::new(p(&[0, 0, 1]), QPoly::one(), QPoly::zero()).is_err());
        // sign normalization
        let inst = PellInstance::new(p(&[-1, 0, 1]), p(&[0, -1]), p(&[-1])).unwrap();
        assert_eq!(inst.u(), &p(&[0, 1]));
        assert_eq!(inst.v(), &p(&[1]));
    }

    #[test]
    fn nonpellian_criterion_by_distinct_zero_count() {
        assert!(dubickas_nonpellian(&p(&[0, 0, 0, 0, 0, 0, 1])).unwrap()); // t⁶
        assert!(!dubickas_nonpellian(&p(&[0, 0, 1, 0, 1])).unwrap()); // t⁴+t² = t²(t²+1)
        assert!(dubickas_nonpellian(&p(&[0, 0, 0, 0, -1, 0, 1])).unwrap()); // t⁴(t²−1)
        assert!(dubickas_nonpellian(&p(&[5])).is_err());
    }

    #[test]
    fn fractional_coefficients_flow_through_the_expansion() {
        // D = t⁴ + t²: a₀ = t² + 1/2 and the terminal form value is 1/4,
        // a rational square, so no doubling happens.
        let d = p(&[0, 0, 1, 0, 1]);
        let mut cf = CfExpansion::new(&d).unwrap();
        assert_eq!(
            cf.polynomial_part(),
            &Poly::new(vec![ratio(1, 2), rat(0), rat(1)])
        );
        let s0 = cf.advance();
        assert_eq!(s0.h, *cf.polynomial_part());
        assert_eq!(cf.pending_q(), &Poly::constant(ratio(-1, 4)));
    }
}
