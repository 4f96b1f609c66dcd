use conformal_dirac::exact::{int, rat, Rational};
use conformal_dirac::operator::{conformal_power, CurvatureMode};
use conformal_dirac::par::{self, Execution};
use conformal_dirac::pe::{decouple_check, obstruction_extract, solve_coupled, EinsteinParams};
use conformal_dirac::special::{q_closed, q_closed_at, q_recurrence, Family, QFamilySpec};
use conformal_dirac::sphere::{apply_power_spectrally, kernel_expected, sphere_spectrum, Sign};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Spinor), Just(Family::Function)]
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recurrence_matches_closed_form(family in family(), n in 3i64..=14, k in 1i64..=9, m in 0usize..9) {
        prop_assume!((m as i64) < k);
        let spec = QFamilySpec::new(family, n, k).unwrap();
        let rec = q_recurrence(&spec, m);
        prop_assert_eq!(&rec[m], &q_closed(&spec, m));
    }

    #[test]
    fn pointwise_closed_form_matches_expansion(family in family(), n in 3i64..=10, k in 1i64..=7, y in rational()) {
        let spec = QFamilySpec::new(family, n, k).unwrap();
        for m in 0..k as usize {
            prop_assert_eq!(q_closed_at(&spec, m, &y), q_closed(&spec, m).eval(&y));
        }
    }

    #[test]
    fn sphere_kernel_and_odd_symmetry(n in 2i64..=9, big_n in 0usize..=5, kmax in 0u64..=5) {
        let images = apply_power_spectrally(big_n, &sphere_spectrum(n, kmax));
        for pair in images.chunks(2) {
            let (plus, minus) = (&pair[0], &pair[1]);
            prop_assert_eq!(plus.sign, Sign::Plus);
            prop_assert_eq!(&minus.eigenvalue_out, &-plus.eigenvalue_out.clone());
            prop_assert_eq!(plus.in_kernel(), kernel_expected(n, plus.k, big_n));
        }
    }

    #[test]
    fn obstruction_is_the_conformal_power(n in 3i64..=8, j in rational(), big_n in 0usize..=3) {
        let params = EinsteinParams::new(n, j.clone()).unwrap();
        let c = int(2) * &j / int(n);
        prop_assert_eq!(
            obstruction_extract(&params, big_n).unwrap(),
            conformal_power(big_n, &CurvatureMode::Value(c))
        );
    }

    #[test]
    fn coupled_system_decouples(n in 3i64..=9, j in rational()) {
        let state = solve_coupled(&EinsteinParams::new(n, j).unwrap(), 9);
        prop_assert!(state.parity_holds());
        prop_assert!(decouple_check(&state));
    }

    #[test]
    fn execution_modes_agree(xs in proptest::collection::vec(rational(), 0..64)) {
        let square = |x: &Rational| x * x;
        prop_assert_eq!(par::map(Execution::Sequential, &xs, square), par::map(Execution::Parallel, &xs, square));
    }
}
