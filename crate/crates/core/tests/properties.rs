//! Property tests: algebraic identities that must hold on randomly drawn
//! inputs, not just on the table-driven cases in the unit suites.

use num_bigint::BigInt;
use num_traits::One;
use pell_core::newfactors::{verify_gcd_identities, verify_product_formula};
use pell_core::pell::{fundamental_solution, PellInstance};
use pell_core::{QPoly, Rational};
use proptest::prelude::*;

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Monic polynomials of degree 1..=4 with small rational coefficients.
fn monic_poly() -> impl Strategy<Value = QPoly> {
    (1usize..=4, prop::collection::vec((-6i64..=6, 1i64..=4), 4)).prop_map(|(deg, raw)| {
        let mut coeffs: Vec<Rational> = raw
            .into_iter()
            .take(deg)
            .map(|(n, d)| ratio(n, d))
            .collect();
        coeffs.resize(deg, Rational::from_integer(BigInt::from(0)));
        coeffs.push(rat(1));
        QPoly::new(coeffs)
    })
}

proptest! {
    /// D = u² − 1 always has fundamental solution (u, 1).
    #[test]
    fn square_minus_one_bases_solve_to_the_root(u in monic_poly()) {
        let d = &(&u * &u) - &QPoly::one();
        let (su, sv) = fundamental_solution(&d, 8).unwrap().unwrap();
        prop_assert_eq!(su, u);
        prop_assert_eq!(sv, QPoly::one());
    }

    /// D = t² + c with c > 0 has fundamental solution ((2/c)t² + 1, (2/c)t).
    #[test]
    fn shifted_square_bases_have_the_closed_form_solution(
        n in 1i64..=9, den in 1i64..=6,
    ) {
        let c = ratio(n, den);
        let d = QPoly::new(vec![c.clone(), rat(0), rat(1)]);
        let (su, sv) = fundamental_solution(&d, 8).unwrap().unwrap();
        let two_over_c = &rat(2) / &c;
        prop_assert_eq!(su, QPoly::new(vec![rat(1), rat(0), two_over_c.clone()]));
        prop_assert_eq!(sv, QPoly::new(vec![rat(0), two_over_c]));
    }

    /// Printing and re-parsing is the identity on polynomials.
    #[test]
    fn text_round_trip(raw in prop::collection::vec((-30i64..=30, 1i64..=8), 0..7)) {
        let p = QPoly::new(raw.into_iter().map(|(n, d)| ratio(n, d)).collect());
        let back = QPoly::parse(&p.to_text('t')).unwrap();
        prop_assert_eq!(back, p);
    }

    /// v_n factors through the new parts of the divisors of n.
    #[test]
    fn divisor_product_assembles_v_n(n in 1u64..=24) {
        let inst = PellInstance::solve(&QPoly::from_ints(&[1, 0, 1]), 8)
            .unwrap()
            .unwrap();
        prop_assert!(verify_product_formula(&inst, n));
    }

    /// gcd(v_m, v_n) = v_gcd(m,n) and the complementary coprimality.
    #[test]
    fn gcd_identities_hold_for_random_index_pairs(m in 1u64..=16, n in 1u64..=16) {
        let inst = PellInstance::solve(&QPoly::from_ints(&[-1, 0, 1]), 8)
            .unwrap()
            .unwrap();
        prop_assert!(verify_gcd_identities(&inst, m, n));
    }

    /// The Pell identity holds for every generated index, negative ones
    /// included.
    #[test]
    fn generated_solutions_satisfy_the_identity(n in -12i64..=12) {
        let d = QPoly::from_ints(&[1, 0, 1]);
        let inst = PellInstance::solve(&d, 8).unwrap().unwrap();
        let s = inst.generate(n);
        let residue = &(&s.u_n * &s.u_n) - &(&(&d * &s.v_n) * &s.v_n);
        prop_assert!(residue.is_constant());
        prop_assert!(residue.coeff(0).is_one());
    }
}
