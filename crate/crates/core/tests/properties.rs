use hilbertforge::asymptotics::scan_power_series;
use hilbertforge::koszul::{betti_table_dense, betti_table_of};
use hilbertforge::poly::rat;
use hilbertforge::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn ideal_strategy(n: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..4, n), 1..5)
        .prop_map(move |gens| MonomialIdeal::minimalize(n, gens.into_iter().map(ExponentVector::new)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minimalize_is_idempotent(ideal in ideal_strategy(3)) {
        let again = MonomialIdeal::minimalize(3, ideal.generators().iter().cloned()).unwrap();
        prop_assert_eq!(again, ideal);
    }

    #[test]
    fn power_membership_matches_products(ideal in ideal_strategy(2), k in 1u32..4) {
        let lim = Limits::default();
        let power = ideal.power(k, &lim).unwrap();
        let gens = ideal.generators();
        // brute force: a monomial lies in I^k iff some k-fold product of generators divides it
        let mut products = vec![ExponentVector::zero(2)];
        for _ in 0..k {
            products = products.iter().flat_map(|p| gens.iter().map(move |g| p.mul(g))).collect();
        }
        for t in 0..=10 {
            for m in hilbertforge::monomial::monomials_of_degree(2, t) {
                let brute = products.iter().any(|p| p.divides(&m));
                prop_assert_eq!(power.contains(&m).unwrap(), brute);
            }
        }
    }

    #[test]
    fn series_matches_counts(ideal in ideal_strategy(3)) {
        let hs = hilbert_series_ideal(&ideal);
        for t in 0..=8 {
            let c = count_ideal_monomials(&ideal, t, &Limits::default()).unwrap();
            prop_assert_eq!(hs.coefficient(t as i64), BigInt::from(c));
        }
    }

    #[test]
    fn h_and_e_are_inverse(h in prop::collection::vec(-30i64..30, 1..12)) {
        let hv = HVector::from_ints(0, &h);
        let s = h.len() - 1;
        let e: Vec<BigInt> = (0..=s as u32).map(|j| e_from_h(&hv, j)).collect();
        prop_assert_eq!(h_from_e(&e, s), hv);
    }

    #[test]
    fn vandermonde(a in -20i64..20, b in -20i64..20, j in 0u32..8) {
        let lhs = generalized_binomial(a + b, j);
        let rhs: BigInt = (0..=j).map(|r| generalized_binomial(a, r) * generalized_binomial(b, j - r)).sum();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fit_refines_monotonically(coeffs in prop::collection::vec(-5i64..5, 0..4), extra in 0usize..4) {
        let p = QPoly::from_ints(&coeffs);
        let values = |len: usize| (1..=len as i64).map(|k| p.eval_int(k)).collect::<Vec<_>>();
        let scan = |len: usize| ScanResult { i: 0, j: 0, k_start: 1, values: values(len), dims: vec![0; len], truncated: None };
        let short = newton_fit(&scan(8), 3).unwrap();
        let long = newton_fit(&scan(8 + extra), 3).unwrap();
        let (short, long) = (short.stable().unwrap(), long.stable().unwrap());
        prop_assert_eq!(&short.poly, &p);
        prop_assert_eq!(&long.poly, &short.poly);
        prop_assert_eq!(long.confirmations, short.confirmations + extra);
    }

    #[test]
    fn coefficients_agree_across_iterates(ideal in ideal_strategy(3)) {
        let hs = hilbert_series_ideal(&ideal);
        let d = hs.dimension();
        for i in 1..=3u32 {
            let (a, b) = (hilbert_polynomial(&hs, i - 1), hilbert_polynomial(&hs, i));
            for j in 0..=(d + i as i64 - 2) {
                prop_assert_eq!(a.coefficient(j as usize), b.coefficient(j as usize));
            }
        }
    }

    #[test]
    fn koszul_routes_agree(ideal in ideal_strategy(2)) {
        let lim = Limits::default();
        let opts = KoszulOptions::default();
        let a = betti_table_of(&ideal, 1, &opts, &lim).unwrap();
        let b = betti_table_dense(&ideal, 1, &opts, &lim).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn fit_stays_unstable_without_confirmation() {
    // a cubic on six points leaves only two confirmations
    let values: Vec<_> = (1..=6i64).map(|k| rat(k * k * k)).collect();
    let scan = ScanResult {
        i: 0,
        j: 0,
        k_start: 1,
        values,
        dims: vec![0; 6],
        truncated: None,
    };
    assert!(newton_fit(&scan, 3).unwrap().stable().is_none());
}

#[test]
fn truncation_bound_is_sound() {
    let lim = Limits::default();
    for text in [
        "ring: x,y; ideal: x, y",
        "ring: x,y; ideal: x^2, x*y, y^3",
        "ring: x,y,z; ideal: x*y, y*z, z*x",
        "ring: x,y; ideal: x^2, y^2",
        "ring: x,y; ideal: x^3, x*y, y^4",
    ] {
        let ideal = parse_ideal(text).unwrap().ideal;
        for k in 1..=3 {
            let plain = betti_table(&ideal, k, &KoszulOptions::default(), &lim).unwrap();
            let wider = KoszulOptions {
                extra_degrees: 2,
                ..Default::default()
            };
            assert_eq!(betti_table(&ideal, k, &wider, &lim).unwrap(), plain, "{text} k={k}");
        }
    }
}

#[test]
fn zeroth_betti_row_is_generator_histogram() {
    let lim = Limits::default();
    for text in [
        "ring: x,y; ideal: x^2, x*y, y^3",
        "ring: x,y; ideal: x^3, x*y, y^4",
        "ring: x,y,z; ideal: x*y, y*z, z*x",
    ] {
        let ideal = parse_ideal(text).unwrap().ideal;
        for k in 1..=4 {
            let power = ideal.power(k, &lim).unwrap();
            let mut hist = std::collections::BTreeMap::new();
            for d in power.generator_degrees() {
                *hist.entry(d).or_insert(0u64) += 1;
            }
            assert_eq!(
                betti_table(&ideal, k, &KoszulOptions::default(), &lim).unwrap().row(0),
                hist
            );
        }
    }
}

#[test]
fn maximal_ideal_second_iterate_fit() {
    let lim = Limits::default();
    let scan = scan_power_series(&MonomialIdeal::maximal(2), 8, &lim)
        .unwrap()
        .coefficients(1, 2);
    assert_eq!(scan.value_at(3), Some(&rat(-6)));
    let fit = newton_fit(&scan, 3).unwrap();
    let fit = fit.stable().unwrap();
    assert_eq!(fit.poly.eval_int(3), rat(-6));
    // -k(k + 1)/2, degree j
    assert_eq!(
        fit.poly,
        QPoly::from_ints(&[0, -1, -1]).scale(&num_rational::BigRational::new(1.into(), 2.into()))
    );
}

#[test]
fn betti_scan_of_maximal_ideal() {
    let lim = Limits::default();
    let m = MonomialIdeal::maximal(2);
    let (scan, fit) = scan_betti(&m, 0, 1, 0, 8, 3, &KoszulOptions::default(), &lim).unwrap();
    assert_eq!(scan.value_at(4), Some(&rat(5)));
    let fit = fit.stable().unwrap();
    assert_eq!(fit.poly, QPoly::from_ints(&[1, 1]));
    assert!(fit.all_pass());

    let (_, fit) = scan_betti(&m, 3, 1, 0, 8, 3, &KoszulOptions::default(), &lim).unwrap();
    assert_eq!(fit.stable().unwrap().degree(), -1);

    let (_, fit) = scan_betti(&m, 1, 1, 0, 8, 3, &KoszulOptions::default(), &lim).unwrap();
    assert_eq!(fit.stable().unwrap().poly, QPoly::from_ints(&[0, 1]));
}

#[test]
fn betti_scan_mixed_ideal() {
    let lim = Limits::default();
    let i = parse_ideal("ring: x,y; ideal: x^2, x*y, y^3").unwrap().ideal;
    let (_, fit) = scan_betti(&i, 1, 1, 0, 10, 3, &KoszulOptions::default(), &lim).unwrap();
    let fit = fit.stable().unwrap();
    assert!(fit.verdicts.iter().any(|v| v.bound == "nu+j-1" && v.value == 2));
    assert!(fit.all_pass());
}

#[test]
fn maximal_ideal_closed_form_has_factorial_denominator() {
    // k(k-1)...(k-j+2) (1-j)(k+1) / j! against the flattened coefficients
    let lim = Limits::default();
    let scan = scan_power_series(&MonomialIdeal::maximal(2), 8, &lim).unwrap();
    for (idx, hs) in scan.series.iter().enumerate() {
        let k = idx as i64 + 1;
        for j in 1..=5u32 {
            let falling: i64 = (0..j as i64 - 1).map(|r| k - r).product();
            let fact: i64 = (1..=j as i64).product();
            let numer = falling * (1 - j as i64) * (k + 1);
            let got = hilbertforge::hilbert_poly::flattened_coefficient(hs, j);
            assert_eq!(got * fact, BigInt::from(numer), "k={k} j={j}");
        }
    }
    let e3 = hilbertforge::hilbert_poly::flattened_coefficient(&scan.series[2], 3);
    assert_eq!(e3, BigInt::from(-8));
}
