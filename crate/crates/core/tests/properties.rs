use std::f64::consts::PI;

use dualbasis::exactcore::{
    bernoulli_egf, bernoulli_poly, hermite_poly, int, rat, FormalSeries, Polynomial, Rational,
};
use dualbasis::ladder::{coherent_state_check, commutator, op_l, op_n, op_r, BasisTag, ExactOperator};
use dualbasis::pairing::{full_report, PairingOptions};
use dualbasis::quadrature::{pv_integrate, QuadratureConfig, WeightSpec};
use dualbasis::selector::{kernel_closed_form_j2, kernel_value, Parity};
use dualbasis::specfun::{
    clausen_a, clausen_c, dirichlet_beta, lerch_phi, zeta, ClausenVariant, Complex, Truncation,
};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=40).prop_map(|(n, d)| rat(n, d))
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Sin), Just(Parity::Cos)]
}

/// `J` valid for the parity: cos kernels need even `J`.
fn kernel_args() -> impl Strategy<Value = (u32, Parity)> {
    (1u32..=8, parity()).prop_map(|(j, p)| if p == Parity::Cos && j % 2 == 1 { (j + 1, p) } else { (j, p) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bernoulli_reflection(n in 0u32..=14, x in small_rational()) {
        let p = bernoulli_poly(n);
        let mirrored = p.eval(&(int(1) - &x));
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(mirrored, sign * p.eval(&x));
    }

    #[test]
    fn bernoulli_difference(n in 1u32..=14, x in small_rational()) {
        // B_n(x+1) - B_n(x) = n x^{n-1}
        let p = bernoulli_poly(n);
        let lhs = p.eval(&(&x + int(1))) - p.eval(&x);
        let rhs = int(n as i64) * Polynomial::monomial(int(1), n as usize - 1).eval(&x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn appell_derivatives(n in 1u32..=20) {
        prop_assert_eq!(bernoulli_poly(n).derivative(), bernoulli_poly(n - 1).scale(&int(n as i64)));
        prop_assert_eq!(hermite_poly(n).derivative(), hermite_poly(n - 1).scale(&int(2 * n as i64)));
    }

    #[test]
    fn series_reciprocal(cs in prop::collection::vec(small_rational(), 1..6), order in 1usize..8) {
        let mut cs = cs;
        if cs[0] == int(0) {
            cs[0] = int(1);
        }
        let s = FormalSeries::from_scalars(cs, order);
        let inv = s.reciprocal().unwrap();
        prop_assert_eq!(s.mul(&inv), FormalSeries::from_scalars([int(1)], order));
    }

    #[test]
    fn kernel_antiperiodic((j, p) in kernel_args(), k in -64i64..64) {
        let a = kernel_value(j, p, k).unwrap();
        let b = kernel_value(j, p, k + 2 * j as i64).unwrap();
        prop_assert!((a + b).abs() <= 1e-10);
        let c = kernel_value(j, p, k + 4 * j as i64).unwrap();
        prop_assert!((a - c).abs() <= 1e-10);
    }

    #[test]
    fn kernel_values_are_selectors((j, p) in kernel_args(), k in 0i64..64) {
        let v = kernel_value(j, p, k).unwrap();
        if k % 2 == 0 {
            prop_assert!(v.abs() <= 1e-10);
        } else {
            prop_assert!((v.abs() - 1.0).abs() <= 1e-10, "J={} k={} v={}", j, k, v);
        }
    }

    #[test]
    fn two_node_closed_form(k in -40i64..40, p in parity()) {
        let direct = kernel_value(2, p, k).unwrap();
        prop_assert!((direct - kernel_closed_form_j2(k, p)).abs() <= 1e-12);
    }

    #[test]
    fn quadrature_linear_in_weight(c in prop::collection::vec(-3.0f64..3.0, 1..5), phi in 0.0f64..6.3) {
        let f = |x: f64| c.iter().rev().fold(0.0, |acc, a| acc * x + a) + (2.0 * PI * x).sin();
        let cfg = QuadratureConfig::default();
        let alt = pv_integrate(f, &WeightSpec::alt(), &cfg).unwrap();
        let sym = pv_integrate(f, &WeightSpec::sym(), &cfg).unwrap();
        let rot = pv_integrate(f, &WeightSpec::rotated(phi), &cfg).unwrap();
        let lin = phi.cos() * alt + phi.sin() * sym;
        let scale = alt.abs() + sym.abs();
        prop_assert!((rot - lin).abs() <= 1e-13 * scale.max(1e-3), "{} vs {}", rot, lin);
    }

    #[test]
    fn quadrature_parity_annihilation(c in prop::collection::vec(-3.0f64..3.0, 1..5), n in 1usize..40) {
        // g(x(1-x)) is symmetric about 1/2
        let f = |x: f64| {
            let u = x * (1.0 - x);
            c.iter().rev().fold(0.0, |acc, a| acc * u + a)
        };
        let cfg = QuadratureConfig::trapezoid(2 * n).unwrap();
        prop_assert!(pv_integrate(f, &WeightSpec::sym(), &cfg).unwrap().abs() <= 1e-12);
        prop_assert!(pv_integrate(f, &WeightSpec::alt(), &cfg).unwrap().abs() <= 1e-12);
        let mid = QuadratureConfig::midpoint(2 * n).unwrap();
        prop_assert!(pv_integrate(f, &WeightSpec::sym(), &mid).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn quadrature_node_set_is_mirror_symmetric(c in prop::collection::vec(-3.0f64..3.0, 1..5)) {
        // for an odd weight, reflecting the integrand flips the sign exactly
        // when the retained nodes are closed under x -> 1-x
        let f = |x: f64| c.iter().rev().fold(0.0, |acc, a| acc * x + a);
        let g = |x: f64| f(1.0 - x);
        for cfg in [QuadratureConfig::trapezoid(64).unwrap(), QuadratureConfig::midpoint(64).unwrap()] {
            for w in [WeightSpec::alt(), WeightSpec::sym()] {
                let a = pv_integrate(f, &w, &cfg).unwrap();
                let b = pv_integrate(g, &w, &cfg).unwrap();
                prop_assert!((a + b).abs() <= 1e-11 * (1.0 + a.abs()));
            }
        }
    }

    #[test]
    fn clausen_symmetry(x in 0.001f64..0.999, n in 1u32..=3) {
        let k = Truncation(2_000);
        let c = clausen_c(2 * n, x, k).unwrap().value;
        let cm = clausen_c(2 * n, 1.0 - x, k).unwrap().value;
        prop_assert!((c - cm).abs() <= 1e-12);
        let a = clausen_a(2 * n + 1, x, k, ClausenVariant::Standard).unwrap().value;
        let am = clausen_a(2 * n + 1, 1.0 - x, k, ClausenVariant::Standard).unwrap().value;
        prop_assert!((a + am).abs() <= 1e-12);
    }

    #[test]
    fn clausen_c2_is_bernoulli(x in 0.0f64..1.0) {
        let e = clausen_c(2, x, Truncation(5_000)).unwrap();
        let b2 = x * x - x + 1.0 / 6.0;
        prop_assert!((e.value + 2.0 * b2).abs() <= e.tail_bound());
    }

    #[test]
    fn tail_bounds_cover_refinement(x in 0.0f64..1.0, p in 2u32..=5, k in 10usize..2_000) {
        let lo = clausen_c(2 * p, x, Truncation(k)).unwrap();
        let hi = clausen_c(2 * p, x, Truncation(4 * k)).unwrap();
        prop_assert!((lo.value - hi.value).abs() <= lo.tail_bound());
        let lo = clausen_a(2 * p + 1, x, Truncation(k), ClausenVariant::Literal).unwrap();
        let hi = clausen_a(2 * p + 1, x, Truncation(4 * k), ClausenVariant::Literal).unwrap();
        prop_assert!((lo.value - hi.value).abs() <= lo.tail_bound());
        let z = zeta(p as f64, Truncation(k)).unwrap();
        let z4 = zeta(p as f64, Truncation(4 * k)).unwrap();
        prop_assert!((z.value - z4.value).abs() <= z.tail_bound());
        let b = dirichlet_beta(p as f64, Truncation(k)).unwrap();
        let b4 = dirichlet_beta(p as f64, Truncation(4 * k)).unwrap();
        prop_assert!((b.value - b4.value).abs() <= b.tail_bound());
        let t = 2.0 * PI * x;
        let z = Complex::new(t.cos(), t.sin());
        let l = lerch_phi(z, p as f64, 0.5 + x, Truncation(k)).unwrap();
        let l4 = lerch_phi(z, p as f64, 0.5 + x, Truncation(4 * k)).unwrap();
        prop_assert!((l.value - l4.value).norm() <= l.tail_bound());
    }

    #[test]
    fn weyl_defect_confined_to_corner(d in 1usize..=18) {
        let c = commutator(&op_l(d).unwrap(), &op_r(d).unwrap()).unwrap();
        let defect = c.minus(&ExactOperator::identity(d + 1, BasisTag::Bernoulli)).unwrap();
        prop_assert!(defect.block_is_zero(d));
        prop_assert_eq!(defect.get(d, d), &int(-(d as i64) - 1));
        let n = op_n(d).unwrap();
        let l = op_l(d).unwrap();
        prop_assert!(commutator(&n, &l).unwrap().plus(&l).unwrap().block_is_zero(d));
        let r = op_r(d).unwrap();
        prop_assert!(commutator(&n, &r).unwrap().minus(&r).unwrap().block_is_zero(d));
    }

    #[test]
    fn coherent_states_are_eigenvectors(t in 2usize..=12, y in small_rational()) {
        let c = coherent_state_check(t, &y).unwrap();
        prop_assert_eq!(c.max_defect, int(0));
        prop_assert!(c.egf_matches);
    }
}

#[test]
fn egf_lists_bernoulli_polynomials() {
    let egf = bernoulli_egf(12);
    let mut fact = int(1);
    for n in 0..=12u32 {
        if n > 0 {
            fact *= int(n as i64);
        }
        assert_eq!(egf.coefficient(n as usize).scale(&fact), bernoulli_poly(n));
    }
}

#[test]
fn full_report_independent_of_thread_count() {
    let opts = PairingOptions {
        quadrature: QuadratureConfig::trapezoid(20).unwrap(),
        trunc: Truncation(300),
        ..PairingOptions::default()
    };
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| full_report(&opts))
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, full_report(&opts));
    assert!(one.failures.is_empty());
}
