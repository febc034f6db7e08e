use riesz::report::Comparison;
use riesz::riesz_core::algebra::{Algebra, AlgebraMatrix, PositiveDefiniteMatrix, Quaternion};
use riesz::riesz_core::riesz::{log_jacobian_congruence, log_jacobian_inverse, RieszParams, Scale, Variant};
use riesz::riesz_core::special::{Partition, SeriesControl, WeightSign};
use riesz::verify::*;

fn params(v: Variant, alg: Algebra, a: f64, k: &[u32], s: Scale) -> RieszParams {
    RieszParams::new(v, alg, a, Partition::new(k.to_vec()).unwrap(), s).unwrap()
}

#[test]
fn scalar_normalization_is_exact() {
    let p = params(Variant::TypeI, Algebra::Real, 2.5, &[0], Scale::Isotropic(1.3));
    let r = verify_normalization(&p, 100_000, 1).unwrap();
    assert!(r.pass, "{r}");
    assert!(r.statistic < 1e-9);
}

#[test]
fn real_type_one_normalizes() {
    let p = params(Variant::TypeI, Algebra::Real, 3.0, &[1, 0], Scale::Isotropic(1.0));
    let r = verify_normalization(&p, 200_000, 2).unwrap();
    assert!(r.pass, "{r}");
}

#[test]
fn printed_type_two_normalizer_is_detected() {
    let p = params(Variant::TypeII, Algebra::Real, 3.0, &[1, 0], Scale::Isotropic(1.0));
    let good = verify_normalization(&p, 100_000, 3).unwrap();
    let bad = verify_printed_normalizer_rejected(&p, 100_000, 3).unwrap();
    assert!(good.pass, "{good}");
    assert!(bad.pass && bad.comparison == Comparison::Above, "{bad}");
    let t1 = params(Variant::TypeI, Algebra::Real, 3.0, &[1, 0], Scale::Isotropic(1.0));
    assert!(verify_printed_normalizer_rejected(&t1, 1000, 3).is_err());
}

#[test]
fn laplace_examples() {
    let one = |alg, a: f64, k: &[u32], sigma, sign| LaplaceCase {
        algebra: alg,
        a,
        kappa: Partition::new(k.to_vec()).unwrap(),
        sigma,
        sign,
    };
    let s1 = PositiveDefiniteMatrix::diagonal(Algebra::Real, &[1.7]).unwrap();
    let s2 = PositiveDefiniteMatrix::identity(Algebra::Real, 2).unwrap();
    let cases = [
        one(Algebra::Real, 2.2, &[2], s1.clone(), WeightSign::Positive),
        one(Algebra::Real, 4.2, &[2], s1, WeightSign::Negative),
        one(Algebra::Real, 2.0, &[0, 0], s2, WeightSign::Positive),
    ];
    for c in &cases {
        let r = verify_laplace(c).unwrap();
        assert!(r.pass, "{r}");
    }
}

#[test]
fn identity_jacobians_vanish() {
    for (alg, m) in [(Algebra::Real, 2), (Algebra::Complex, 3), (Algebra::Quaternion, 2)] {
        let a = AlgebraMatrix::identity(alg, m).unwrap();
        assert!(numeric_log_jacobian_congruence(&a).unwrap().abs() < 1e-9);
        assert_eq!(log_jacobian_congruence(&a).unwrap(), 0.0);
        // inversion at the identity is -id on the coordinates
        let s = PositiveDefiniteMatrix::identity(alg, m).unwrap();
        assert!(numeric_log_jacobian_inverse(&s).unwrap().abs() < 1e-9);
        assert_eq!(log_jacobian_inverse(&s), 0.0);
    }
}

#[test]
fn diagonal_congruence_counts_powers() {
    let c = 2.0;
    let a = AlgebraMatrix::from_fn(Algebra::Real, 2, |i, j| match (i, j) {
        (0, 0) => Quaternion::real(c),
        (1, 1) => Quaternion::real(1.0),
        _ => Quaternion::real(0.0),
    })
    .unwrap();
    // x11 scales by c^2, x21 by c, x22 is fixed
    let expected = 3.0 * c.ln();
    assert!((numeric_log_jacobian_congruence(&a).unwrap() - expected).abs() < 1e-8);
    assert!((log_jacobian_congruence(&a).unwrap() - expected).abs() < 1e-12);
}

#[test]
fn complex_jacobians_over_many_trials() {
    let r = verify_jacobians(Algebra::Complex, 2, 100, 11).unwrap();
    assert!(r.pass, "{r}");
}

#[test]
fn eigen_law_examples() {
    let ctrl = SeriesControl::default();
    let scalar = params(Variant::TypeI, Algebra::Real, 1.7, &[0], Scale::Isotropic(1.0));
    let r = verify_eigen_law(&scalar, 100_000, 0, &ctrl).unwrap();
    assert!(r.pass, "{r}");
    let wishart = params(Variant::TypeI, Algebra::Real, 2.0, &[0, 0], Scale::Isotropic(1.0));
    let r = verify_eigen_law(&wishart, 100_000, 6, &ctrl).unwrap();
    assert!(r.pass, "{r}");
}

#[test]
fn scalar_marginal_matches_gamma_cdf() {
    use statrs::distribution::{ContinuousCDF, Gamma};
    let p = params(Variant::TypeI, Algebra::Real, 1.7, &[0], Scale::Isotropic(1.0));
    let d = p.eigen_density(riesz::riesz_core::riesz::EigenRoute::Auto, &SeriesControl::default()).unwrap();
    let law = MarginalLaw::new(&d, 0, 20.0).unwrap();
    let g = Gamma::new(1.7, 1.0).unwrap();
    for x in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0] {
        assert!((law.cdf(x) - g.cdf(x)).abs() < 1e-9);
    }
}

#[test]
fn quaternion_eigen_paths_agree() {
    let p = params(Variant::TypeI, Algebra::Quaternion, 3.5, &[1, 0], Scale::Isotropic(1.0));
    let r = verify_eigen_paths(&p, 50, &dual_path_control()).unwrap();
    assert!(r.pass, "{r}");
}

#[test]
fn marginal_laws_carry_unit_mass() {
    let p = params(Variant::TypeII, Algebra::Complex, 4.0, &[1, 1], Scale::Isotropic(0.5));
    let d = p.eigen_density(riesz::riesz_core::riesz::EigenRoute::Auto, &SeriesControl::default()).unwrap();
    for i in 0..2 {
        let law = MarginalLaw::new(&d, i, 60.0).unwrap();
        assert!((law.total() - 1.0).abs() < 1e-4, "{}", law.total());
        assert_eq!(law.cdf(0.0), 0.0);
        assert!(law.cdf(5.0) <= law.cdf(10.0));
    }
}

#[test]
fn suite_reports_are_reproducible() {
    let checks = Suite::Quick.checks().unwrap();
    let a: Vec<String> = run_suite(&checks, 42).iter().map(|r| r.to_json_line(false)).collect();
    let b: Vec<String> = run_suite(&checks, 42).iter().map(|r| r.to_json_line(false)).collect();
    assert_eq!(a, b);
}
