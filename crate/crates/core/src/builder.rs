//! Deciding and constructing Pellian multiples of the form F²·D.
//!
//! If D is squarefree and Pellian with solutions (u_n, v_n), then F²·D is
//! Pellian exactly when F divides some v_n: the pair (u_n, v_n/F) then
//! solves X² − F²D·Y² = 1. Because every irreducible polynomial G divides
//! the new parts of at most one index m_G — the v are products of the
//! pairwise coprime ψ_m(u) together with v itself — deciding divisibility
//! reduces to locating m_G for each irreducible power factor of F, and the
//! least witness index is the lcm of the located indices. The same scan,
//! run in reverse, enumerates every irreducible F of a given degree that
//! works: collect the degree-f factors of the finitely many new parts whose
//! factor degrees can reach f.

use crate::factor::{canonical_poly_cmp, exact_multiplicity, factor_rationals, factors_up_to_degree};
use crate::newfactors::v_new_poly;
use crate::pell::PellInstance;
use crate::poly::{gcd, squarefree_part};
use crate::reproots::admissible_n;
use crate::{Error, QPoly, Result};
use num_integer::Integer;
use num_traits::One;

/// Outcome of testing whether F²·D is Pellian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareTimesVerdict {
    /// F divides v_n for the witness index; F²·D is Pellian.
    Pellian,
    /// F divides no v_n; F²·D has no nontrivial solutions.
    NotPellian,
    /// The base equation for D was not solved within the step budget, so
    /// the question is undecided.
    BaseNotSolved,
}

/// A resolved query about F²·D, with the witness index when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareTimesQuery {
    d: QPoly,
    f: QPoly,
    verdict: SquareTimesVerdict,
    witness_n: Option<u64>,
}

impl SquareTimesQuery {
    pub fn d(&self) -> &QPoly {
        &self.d
    }

    pub fn f(&self) -> &QPoly {
        &self.f
    }

    pub fn verdict(&self) -> SquareTimesVerdict {
        self.verdict
    }

    /// The least n with F | v_n, present exactly for a Pellian verdict.
    pub fn witness_n(&self) -> Option<u64> {
        self.witness_n
    }
}

/// Decides whether F²·D is Pellian, given squarefree D and nonconstant F
/// coprime to D.
///
/// Solves the base equation (reporting `BaseNotSolved` if the step budget
/// runs out), then locates, for each irreducible power G^e of F, the unique
/// index m whose new part contains G, and checks its multiplicity there by
/// division. All located: verdict `Pellian`, witness lcm of the indices —
/// the least index n with F | v_n, since G^e | v_n requires m_G | n. Any
/// factor unlocated, or present with too small a multiplicity: verdict
/// `NotPellian`. A Pellian verdict is certified before returning: F is
/// divided out of v_witness and the quotient checked to solve the equation
/// for F²·D. Certified negatives for the base itself (odd degree, bad
/// leading coefficient, perfect square) propagate as errors.
pub fn is_square_times_pellian(d: &QPoly, f: &QPoly, max_steps: usize) -> Result<SquareTimesQuery> {
    if f.is_constant() {
        return Err(Error::InvalidArgument(
            "the square factor F must be nonconstant".into(),
        ));
    }
    if !gcd(f, d).is_one() {
        return Err(Error::InvalidArgument(
            "F and D must be coprime; common factors are not handled by the square-times reduction"
                .into(),
        ));
    }
    if squarefree_part(d).deg() != d.deg() {
        return Err(Error::InvalidArgument(
            "the base D must be squarefree".into(),
        ));
    }

    let inst = match PellInstance::solve(d, max_steps)? {
        Some(inst) => inst,
        None => {
            return Ok(SquareTimesQuery {
                d: d.clone(),
                f: f.clone(),
                verdict: SquareTimesVerdict::BaseNotSolved,
                witness_n: None,
            })
        }
    };

    let mut witness: u64 = 1;
    for (g, e) in factor_rationals(f).factors() {
        match locate_source_index(&inst, g) {
            Some(m) if exact_multiplicity(&v_new_poly(&inst, m), g) >= *e => {
                witness = witness.lcm(&m);
            }
            _ => {
                return Ok(SquareTimesQuery {
                    d: d.clone(),
                    f: f.clone(),
                    verdict: SquareTimesVerdict::NotPellian,
                    witness_n: None,
                });
            }
        }
    }

    let sol = inst.generate(witness as i64);
    let quotient = sol
        .v_n
        .try_exact_div(f)
        .expect("every factor of F was located in v_witness");
    // (u_n, v_n/F) solves the equation for F²·D
    let fsq_d = &(f * f) * d;
    let residue = &(&sol.u_n * &sol.u_n) - &(&(&fsq_d * &quotient) * &quotient);
    assert!(residue.is_one(), "square-times solution must verify exactly");

    Ok(SquareTimesQuery {
        d: d.clone(),
        f: f.clone(),
        verdict: SquareTimesVerdict::Pellian,
        witness_n: Some(witness),
    })
}

/// The complete list of monic irreducible degree-f polynomials F for which
/// F²·D is Pellian, as (F, least witness index), ordered by witness and
/// then canonically.
///
/// A degree-f irreducible divides some v_n exactly when it divides the new
/// part of its unique source index m, and minimal polynomials of new-part
/// roots have degree at least φ(2m)/2, so scanning m = 1 and the indices
/// admissible for degree f is exhaustive. Each emitted F is certified the
/// same way as in [`is_square_times_pellian`]. Errors if D is not
/// squarefree, f = 0, the base is certifiably non-Pellian, or the budget
/// runs out before the base is solved.
pub fn enumerate_square_factors(
    d: &QPoly,
    f_deg: usize,
    max_steps: usize,
) -> Result<Vec<(QPoly, u64)>> {
    if f_deg == 0 {
        return Err(Error::InvalidArgument(
            "the factor degree must be positive".into(),
        ));
    }
    if squarefree_part(d).deg() != d.deg() {
        return Err(Error::InvalidArgument(
            "the base D must be squarefree".into(),
        ));
    }
    let inst = match PellInstance::solve(d, max_steps)? {
        Some(inst) => inst,
        None => return Err(Error::BudgetExhausted { steps: max_steps }),
    };

    let mut scan = vec![1u64];
    scan.extend(admissible_n(f_deg)?);
    let mut out: Vec<(QPoly, u64)> = Vec::new();
    for m in scan {
        let part = v_new_poly(&inst, m);
        if part.is_constant() {
            continue;
        }
        for (g, _) in factors_up_to_degree(&part, f_deg) {
            if g.deg() != f_deg {
                continue;
            }
            // an irreducible factor has a unique source index
            debug_assert!(!out.iter().any(|(h, _)| *h == g));
            let check = is_square_times_pellian(d, &g, max_steps)?;
            assert_eq!(check.verdict(), SquareTimesVerdict::Pellian);
            assert_eq!(check.witness_n(), Some(m));
            out.push((g, m));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| ma.cmp(mb).then_with(|| canonical_poly_cmp(a, b)));
    Ok(out)
}

/// The unique index m ≥ 1 whose new part contains the monic irreducible g,
/// or None when no new part does. Scans m = 1 (the part is v itself) and
/// every index admissible for deg g; uniqueness holds because the ψ_m(u)
/// are pairwise coprime and share no root with v.
fn locate_source_index(inst: &PellInstance, g: &QPoly) -> Option<u64> {
    let mut scan = vec![1u64];
    scan.extend(admissible_n(g.deg()).expect("factors are nonconstant"));
    let mut found: Option<u64> = None;
    for m in scan {
        let part = v_new_poly(inst, m);
        if !part.is_constant() && part.divisible_by(g) {
            debug_assert!(found.is_none(), "irreducible factors have one source index");
            found = Some(m);
            if !cfg!(debug_assertions) {
                break;
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, ratio};
    use crate::Rational;

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::from_ints(cs)
    }

    fn base() -> QPoly {
        qp(&[-1, 0, 1])
    }

    #[test]
    fn square_times_known_examples() {
        // F = 2t² − 1 divides v_4; F = t divides v_2 = 2t
        let q = is_square_times_pellian(&base(), &qp(&[-1, 0, 2]), 16).unwrap();
        assert_eq!(q.verdict(), SquareTimesVerdict::Pellian);
        assert_eq!(q.witness_n(), Some(4));
        let q = is_square_times_pellian(&base(), &qp(&[0, 1]), 16).unwrap();
        assert_eq!(q.verdict(), SquareTimesVerdict::Pellian);
        assert_eq!(q.witness_n(), Some(2));
        // t² + 1 divides no new part of the base instance
        let q = is_square_times_pellian(&base(), &qp(&[1, 0, 1]), 16).unwrap();
        assert_eq!(q.verdict(), SquareTimesVerdict::NotPellian);
        assert_eq!(q.witness_n(), None);
    }

    #[test]
    fn square_times_solution_assembles() {
        // check the certified pair explicitly for F = 2t² − 1 at n = 4
        let f = qp(&[-1, 0, 2]);
        let inst = PellInstance::solve(&base(), 16).unwrap().unwrap();
        let sol = inst.generate(4);
        let w = sol.v_n.try_exact_div(&f).unwrap();
        let delta = &(&f * &f) * &base();
        let lhs = &(&sol.u_n * &sol.u_n) - &(&(&delta * &w) * &w);
        assert!(lhs.is_one());
    }

    #[test]
    fn square_times_multiplicities() {
        // each irreducible appears in exactly one new part, with exact
        // multiplicity 1 here, so squares of located factors must fail
        let f = &qp(&[-1, 0, 2]) * &qp(&[-1, 0, 2]);
        let q = is_square_times_pellian(&base(), &f, 16).unwrap();
        assert_eq!(q.verdict(), SquareTimesVerdict::NotPellian);
        let q = is_square_times_pellian(&base(), &qp(&[0, 0, 1]), 16).unwrap();
        assert_eq!(q.verdict(), SquareTimesVerdict::NotPellian);
        // a product of factors from different indices: witness is the lcm
        let f = &qp(&[0, 1]) * &qp(&[-1, 0, 2]);
        let q = is_square_times_pellian(&base(), &f, 16).unwrap();
        assert_eq!(q.verdict(), SquareTimesVerdict::Pellian);
        assert_eq!(q.witness_n(), Some(4));
        // factors from indices 2 and 3: least common index 6
        let f = &qp(&[0, 1]) * &qp(&[-1, 2]);
        let q = is_square_times_pellian(&base(), &f, 16).unwrap();
        assert_eq!(q.verdict(), SquareTimesVerdict::Pellian);
        assert_eq!(q.witness_n(), Some(6));
    }

    #[test]
    fn square_times_input_validation() {
        // common factor with D
        assert!(matches!(
            is_square_times_pellian(&base(), &qp(&[-1, 1]), 16),
            Err(Error::InvalidArgument(_))
        ));
        // constant F
        assert!(matches!(
            is_square_times_pellian(&base(), &qp(&[2]), 16),
            Err(Error::InvalidArgument(_))
        ));
        // non-squarefree base
        assert!(matches!(
            is_square_times_pellian(&base().pow(2), &qp(&[1, 0, 1]), 16),
            Err(Error::InvalidArgument(_))
        ));
        // certified negative for the base propagates
        assert!(matches!(
            is_square_times_pellian(&qp(&[-1, 0, 0, 1]), &qp(&[1, 0, 1]), 16),
            Err(Error::NotPellianOddDegree)
        ));
    }

    #[test]
    fn square_times_budget_exhaustion() {
        let q = is_square_times_pellian(&qp(&[1, 1, 0, 0, 1]), &qp(&[1, 0, 1]), 4).unwrap();
        assert_eq!(q.verdict(), SquareTimesVerdict::BaseNotSolved);
        assert_eq!(q.witness_n(), None);
    }

    #[test]
    fn enumerate_linear_factors() {
        let got = enumerate_square_factors(&base(), 1, 16).unwrap();
        assert_eq!(
            got,
            vec![
                (qp(&[0, 1]), 2),
                (QPoly::new(vec![ratio(-1, 2), rat(1)]), 3),
                (QPoly::new(vec![ratio(1, 2), rat(1)]), 3),
            ]
        );
    }

    #[test]
    fn enumerate_quadratic_factors() {
        let got = enumerate_square_factors(&base(), 2, 16).unwrap();
        assert_eq!(
            got,
            vec![
                (QPoly::new(vec![ratio(-1, 2), rat(0), rat(1)]), 4),
                (QPoly::new(vec![ratio(-1, 4), ratio(-1, 2), rat(1)]), 5),
                (QPoly::new(vec![ratio(-1, 4), ratio(1, 2), rat(1)]), 5),
                (QPoly::new(vec![ratio(-3, 4), rat(0), rat(1)]), 6),
            ]
        );
    }

    #[test]
    fn enumerate_cubic_factors() {
        let got = enumerate_square_factors(&base(), 3, 16).unwrap();
        assert_eq!(
            got,
            vec![
                (
                    QPoly::new(vec![ratio(-1, 8), ratio(-1, 2), ratio(1, 2), rat(1)]),
                    7
                ),
                (
                    QPoly::new(vec![ratio(1, 8), ratio(-1, 2), ratio(-1, 2), rat(1)]),
                    7
                ),
                (QPoly::new(vec![ratio(-1, 8), ratio(-3, 4), rat(0), rat(1)]), 9),
                (QPoly::new(vec![ratio(1, 8), ratio(-3, 4), rat(0), rat(1)]), 9),
            ]
        );
    }

    #[test]
    fn enumerate_matches_brute_force_scan() {
        // direct factorization of v_1..v_10 finds nothing extra at degree
        // 1 or 2
        let inst = PellInstance::solve(&base(), 16).unwrap().unwrap();
        for f_deg in [1usize, 2] {
            let listed = enumerate_square_factors(&base(), f_deg, 16).unwrap();
            let mut brute: Vec<QPoly> = Vec::new();
            for n in 1..=10 {
                let vn = inst.generate(n).v_n;
                if vn.is_constant() {
                    continue;
                }
                for (g, _) in factor_rationals(&vn).factors() {
                    if g.deg() == f_deg && !brute.contains(g) {
                        brute.push(g.clone());
                    }
                }
            }
            brute.sort_by(canonical_poly_cmp);
            let mut from_list: Vec<QPoly> = listed.into_iter().map(|(g, _)| g).collect();
            from_list.sort_by(canonical_poly_cmp);
            assert_eq!(from_list, brute, "degree {f_deg}");
        }
    }

    #[test]
    fn enumerate_input_validation() {
        assert!(matches!(
            enumerate_square_factors(&base(), 0, 16),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            enumerate_square_factors(&base().pow(2), 2, 16),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            enumerate_square_factors(&qp(&[1, 1, 0, 0, 1]), 2, 4),
            Err(Error::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn quadratic_sweep_finds_only_the_known_four() {
        // Sweep a grid of monic quadratics with quarter-integer
        // coefficients. Irreducible hits must be exactly the four
        // enumerated ones; reducible quadratics are Pellian exactly when
        // both linear factors are distinct members of the linear list (the
        // new parts here are squarefree, so a repeated factor never fits).
        let quads: Vec<QPoly> = enumerate_square_factors(&base(), 2, 16)
            .unwrap()
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        let linears: Vec<QPoly> = enumerate_square_factors(&base(), 1, 16)
            .unwrap()
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        let (mut tested, mut irreducible_hits, mut reducible_hits) = (0, 0, 0);
        for a4 in -2i64..=2 {
            for b4 in -4i64..=4 {
                let f = QPoly::new(vec![
                    Rational::new(b4.into(), 4.into()),
                    Rational::new(a4.into(), 4.into()),
                    rat(1),
                ]);
                if !gcd(&f, &base()).is_one() {
                    continue;
                }
                tested += 1;
                let fac = factor_rationals(&f);
                let expected = if fac.factors().len() == 1 && fac.factors()[0].1 == 1 {
                    let g = &fac.factors()[0].0;
                    if g.deg() == 2 {
                        quads.contains(g)
                    } else {
                        false // a square of a linear factor never fits
                    }
                } else {
                    fac.factors()
                        .iter()
                        .all(|(g, e)| *e == 1 && linears.contains(g))
                };
                let q = is_square_times_pellian(&base(), &f, 16).unwrap();
                assert_eq!(
                    q.verdict() == SquareTimesVerdict::Pellian,
                    expected,
                    "F = {f}"
                );
                if expected {
                    if f.deg() == 2 && fac.factors().len() == 1 && fac.factors()[0].0.deg() == 2 {
                        irreducible_hits += 1;
                    } else {
                        reducible_hits += 1;
                    }
                }
            }
        }
        assert!(tested >= 20);
        assert_eq!(irreducible_hits, 4);
        assert_eq!(reducible_hits, 3); // t(t ± 1/2) and (t − 1/2)(t + 1/2)
    }
}
