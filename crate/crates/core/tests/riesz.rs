mod common;

use common::{random_hermitian, random_partition, random_pd, rel_err, rng};
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;
use riesz_core::algebra::{Algebra, AlgebraMatrix, HermitianMatrix, PositiveDefiniteMatrix, Quaternion, Spectrum};
use riesz_core::riesz::*;
use riesz_core::special::{
    log_gamma, log_highest_weight, log_highest_weight_inverse, log_mv_gamma, log_mv_gamma_weighted, Partition,
    SeriesControl, WeightSign,
};
use riesz_core::{Complex, C64};

fn part(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

fn scalar(x: f64) -> PositiveDefiniteMatrix {
    PositiveDefiniteMatrix::diagonal(Algebra::Real, &[x]).unwrap()
}

fn params(v: Variant, alg: Algebra, a: f64, k: &[u32], s: Scale) -> RieszParams {
    RieszParams::new(v, alg, a, part(k), s).unwrap()
}

fn sigma2(alg: Algebra) -> PositiveDefiniteMatrix {
    let off = match alg {
        Algebra::Real => Quaternion::real(0.6),
        Algebra::Complex => Quaternion::new(0.4, -0.3, 0.0, 0.0),
        _ => Quaternion::new(0.3, -0.2, 0.25, 0.1),
    };
    HermitianMatrix::from_lower(alg, 2, |i, j| match (i, j) {
        (0, 0) => Quaternion::real(1.3),
        (1, 1) => Quaternion::real(0.8),
        _ => off,
    })
    .unwrap()
    .positive_definite()
    .unwrap()
}

#[test]
fn scalar_densities_are_gamma_laws() {
    let d = params(Variant::TypeI, Algebra::Real, 1.0, &[0], Scale::Isotropic(1.0));
    assert!((d.log_density(&scalar(2.5)).unwrap() + 2.5).abs() < 1e-14);
    let (a, k, s, x) = (2.3, 2u32, 1.7, 0.9);
    let kf = k as f64;
    for alg in Algebra::MATRIX {
        let x_mat = PositiveDefiniteMatrix::diagonal(alg, &[x]).unwrap();
        let one = params(Variant::TypeI, alg, a, &[k], Scale::Isotropic(s));
        let shape = a + kf;
        let oracle = (shape - 1.0) * x.ln() - x / s - log_gamma(shape) - shape * s.ln();
        assert!((one.log_density(&x_mat).unwrap() - oracle).abs() < 1e-12);
        let two = params(Variant::TypeII, alg, a, &[k], Scale::Isotropic(s));
        let shape = a - kf;
        let m = PositiveDefiniteMatrix::scalar(alg, 1, s).unwrap();
        let two_mat = RieszParams::new(Variant::TypeII, alg, a, part(&[k]), Scale::Matrix(m)).unwrap();
        let oracle = (shape - 1.0) * x.ln() - x / s - log_gamma(shape) - shape * s.ln();
        assert!((two.log_density(&x_mat).unwrap() - oracle).abs() < 1e-12);
        assert!((two_mat.log_density(&x_mat).unwrap() - oracle).abs() < 1e-12);
    }
}

#[test]
fn zero_weight_variants_agree() {
    let mut r = rng(31);
    for alg in Algebra::MATRIX {
        let s = Scale::Matrix(sigma2(alg));
        let one = params(Variant::TypeI, alg, 4.0, &[0, 0], s.clone());
        let two = params(Variant::TypeII, alg, 4.0, &[0, 0], s);
        for _ in 0..5 {
            let x = random_pd(alg, 2, 0.3, &mut r);
            assert!((one.log_density(&x).unwrap() - two.log_density(&x).unwrap()).abs() < 1e-13);
        }
    }
}

#[test]
fn real_zero_weight_matches_wishart() {
    // W = 2X ~ Wishart_2(n, S) when X has shape a = n/2.
    let sigma = sigma2(Algebra::Real);
    let mut r = rng(32);
    for n in [3u32, 4, 7] {
        let a = n as f64 / 2.0;
        let d = params(Variant::TypeI, Algebra::Real, a, &[0, 0], Scale::Matrix(sigma.clone()));
        for _ in 0..5 {
            let w = random_pd(Algebra::Real, 2, 0.5, &mut r);
            let x = w.as_hermitian().scale(0.5).positive_definite().unwrap();
            let nf = n as f64;
            let gamma2 = 0.5 * std::f64::consts::PI.ln() + libm::lgamma(nf / 2.0) + libm::lgamma((nf - 1.0) / 2.0);
            let winv = sigma.inverse();
            let oracle = (nf - 3.0) / 2.0 * w.log_det()
                - 0.5 * winv.as_hermitian().trace_product(w.as_hermitian()).unwrap()
                - nf * 2f64.ln()
                - nf / 2.0 * sigma.log_det()
                - gamma2;
            // dW = 2^3 dX on the three coordinates
            let v = d.log_density(&x).unwrap() - 3.0 * 2f64.ln();
            assert!(rel_err(v, oracle) < 1e-12, "{v} vs {oracle}");
        }
    }
}

#[test]
fn laplace_examples() {
    let k = part(&[2, 1]);
    for sign in [WeightSign::Positive, WeightSign::Negative] {
        let v = log_laplace_integral(Algebra::Complex, 5.0, &k, &Scale::Isotropic(1.0), sign).unwrap();
        assert!((v - log_mv_gamma_weighted(Algebra::Complex, 5.0, &k, sign).unwrap()).abs() < 1e-14);
    }
    let (a, kk, s) = (3.5, 2u32, 1.9);
    let plus = log_laplace_integral(Algebra::Real, a, &part(&[kk]), &Scale::Matrix(scalar(s)), WeightSign::Positive).unwrap();
    assert!((plus - (log_gamma(a + 2.0) + (a + 2.0) * s.ln())).abs() < 1e-13);
    let minus = log_laplace_integral(Algebra::Real, a, &part(&[kk]), &Scale::Matrix(scalar(s)), WeightSign::Negative).unwrap();
    assert!((minus - (log_gamma(a - 2.0) + (a - 2.0) * s.ln())).abs() < 1e-13);
}

#[test]
fn diagonal_scale_normalizers_agree_with_either_power() {
    // For diagonal S, q_kappa(S^-1) = 1 / q_kappa(S).
    let s = PositiveDefiniteMatrix::diagonal(Algebra::Quaternion, &[1.5, 0.4, 2.0]).unwrap();
    let k = part(&[3, 1, 0]);
    assert!((log_highest_weight_inverse(&s, &k).unwrap() + log_highest_weight(&s, &k).unwrap()).abs() < 1e-13);
    let general = sigma2(Algebra::Real);
    let k = part(&[2, 0]);
    let diff = log_highest_weight_inverse(&general, &k).unwrap() + log_highest_weight(&general, &k).unwrap();
    assert!(diff.abs() > 0.1);
}

#[test]
fn jacobian_examples() {
    for alg in Algebra::MATRIX {
        assert_eq!(log_jacobian_congruence(&AlgebraMatrix::identity(alg, 3).unwrap()).unwrap(), 0.0);
        assert_eq!(log_jacobian_inverse(&PositiveDefiniteMatrix::identity(alg, 2).unwrap()), 0.0);
    }
    let c = -1.7f64;
    let a = AlgebraMatrix::from_fn(Algebra::Real, 2, |i, j| Quaternion::real(if i == j { c } else { 0.0 })).unwrap();
    assert!((log_jacobian_congruence(&a).unwrap() - 6.0 * c.abs().ln()).abs() < 1e-13);
    assert!((log_jacobian_inverse(&scalar(3.0)) + 2.0 * 3f64.ln()).abs() < 1e-14);
    let singular = AlgebraMatrix::from_fn(Algebra::Real, 2, |_, _| Quaternion::ONE).unwrap();
    assert!(log_jacobian_congruence(&singular).is_err());
}

fn cf_symmetric_root(p: &RieszParams, t: &HermitianMatrix) -> C64 {
    // |I - i S^{1/2} T S^{1/2}|^{-a} times q_kappa at the symmetric root
    let sigma = p.sigma().unwrap();
    let root = sigma.sqrt();
    let h = root.as_hermitian().to_matrix().congruence(t).unwrap();
    let n = h.embedding().nrows();
    let d = p.algebra().embedding_factor() as f64;
    let m_mat = nalgebra::DMatrix::<C64>::identity(n, n) - h.embedding() * C64::new(0.0, 1.0);
    let mu = h.embedding().clone().symmetric_eigen().eigenvalues;
    let log_det: C64 = mu.iter().map(|&u| C64::new(1.0, -u).ln()).sum::<C64>() / d;
    let w = p.kappa().weights();
    let q = match p.variant() {
        Variant::TypeI => riesz_core::algebra::log_weighted_power_complex(p.algebra(), &m_mat.try_inverse().unwrap(), &w),
        Variant::TypeII => riesz_core::algebra::log_weighted_power_complex(p.algebra(), &m_mat, &w),
    }
    .unwrap();
    (log_det * (-p.a()) + q).exp()
}

#[test]
fn char_fn_examples() {
    let mut r = rng(33);
    for alg in Algebra::MATRIX {
        for v in [Variant::TypeI, Variant::TypeII] {
            let p = params(v, alg, 4.5, &[2, 1], Scale::Matrix(sigma2(alg)));
            let z = p.char_fn(&HermitianMatrix::zeros(alg, 2).unwrap()).unwrap();
            assert!((z - C64::new(1.0, 0.0)).norm() < 1e-15);
            // zero weight: matrix-gamma characteristic function
            let g = params(v, alg, 4.5, &[0, 0], Scale::Matrix(sigma2(alg)));
            let t = random_hermitian(alg, 2, 0.0, &mut r);
            let root = sigma2(alg).sqrt();
            let h = root.as_hermitian().to_matrix().congruence(&t).unwrap();
            let oracle: C64 = h.eigenvalues().iter().map(|&u| C64::new(1.0, -u).powf(-4.5)).product();
            assert!((g.char_fn(&t).unwrap() - oracle).norm() < 1e-12);
            // diagonal scale: the triangular and symmetric-root forms agree
            let d = PositiveDefiniteMatrix::diagonal(alg, &[1.4, 0.6]).unwrap();
            let pd = params(v, alg, 4.5, &[2, 1], Scale::Matrix(d));
            assert!((pd.char_fn(&t).unwrap() - cf_symmetric_root(&pd, &t)).norm() < 1e-12);
        }
    }
    let (a, k, s, t) = (2.5, 1u32, 0.7, 1.3);
    let t_mat = HermitianMatrix::diagonal(Algebra::Real, &[t]).unwrap();
    let one = params(Variant::TypeI, Algebra::Real, a, &[k], Scale::Isotropic(s));
    let oracle = Complex::new(1.0, -s * t).powf(-(a + k as f64));
    assert!((one.char_fn(&t_mat).unwrap() - oracle).norm() < 1e-13);
    let two = params(Variant::TypeII, Algebra::Real, a, &[k], Scale::Isotropic(s));
    let oracle = Complex::new(1.0, -s * t).powf(-(a - k as f64));
    assert!((two.char_fn(&t_mat).unwrap() - oracle).norm() < 1e-13);
}

#[test]
fn symmetric_root_form_differs_for_general_scale() {
    let alg = Algebra::Real;
    let p = params(Variant::TypeI, alg, 4.5, &[3, 0], Scale::Matrix(sigma2(alg)));
    let t = HermitianMatrix::from_real_symmetric(2, &[0.4, -0.7, -0.7, 0.2]).unwrap();
    let diff = (p.char_fn(&t).unwrap() - cf_symmetric_root(&p, &t)).norm();
    assert!(diff > 1e-3, "difference {diff}");
}

#[test]
fn eigen_measure_constant_matches_selberg_integral() {
    // int over ordered l of prod (l_i - l_j)^beta prod l_i^c e^{-l_i} times K
    // must equal Gamma_m[a] (the zero-weight unit-scale normalizer).
    for alg in Algebra::ALL {
        let beta = alg.beta_f64();
        for m in 1..=4usize {
            let a = (m as f64 - 1.0) * beta / 2.0 + 1.3;
            let c = a - (m as f64 - 1.0) * beta / 2.0 - 1.0;
            let mut selberg = 0.0;
            for j in 0..m {
                let jf = j as f64;
                selberg += log_gamma(1.0 + (jf + 1.0) * beta / 2.0) + log_gamma(c + 1.0 + jf * beta / 2.0)
                    - log_gamma(1.0 + beta / 2.0);
            }
            let ordered = selberg - log_gamma(m as f64 + 1.0);
            let lhs = log_eigen_measure_constant(alg, m) + ordered;
            assert!((lhs - log_mv_gamma(alg, m, a).unwrap()).abs() < 1e-11, "{alg} m={m}");
        }
    }
}

#[test]
fn scalar_eigen_density_is_the_density() {
    for v in [Variant::TypeI, Variant::TypeII] {
        let p = params(v, Algebra::Complex, 3.0, &[2], Scale::Isotropic(1.4));
        let x = 0.83;
        let e = p
            .log_eigen_density(&Spectrum::new(Algebra::Complex, vec![x]).unwrap(), EigenRoute::Auto, &SeriesControl::default())
            .unwrap();
        let d = p.log_density(&PositiveDefiniteMatrix::diagonal(Algebra::Complex, &[x]).unwrap()).unwrap();
        assert!((e - d).abs() < 1e-12);
    }
}

#[test]
fn isotropic_routes_agree() {
    let ctrl = SeriesControl { max_degree: 50, rel_tol: 1e-13, shift: riesz_core::special::ShiftPolicy::None, ..Default::default() };
    for alg in Algebra::ALL {
        for v in [Variant::TypeI, Variant::TypeII] {
            let p = params(v, alg, 2.5 * alg.beta_f64() + 2.0, &[2, 1], Scale::Isotropic(1.6));
            let closed = p.eigen_density(EigenRoute::ClosedForm, &ctrl).unwrap();
            let series = p.eigen_density(EigenRoute::Series, &ctrl).unwrap();
            let haar = p.eigen_density(EigenRoute::Haar, &ctrl).unwrap();
            for l in [[2.0, 0.5], [4.1, 3.9], [0.9, 0.1]] {
                let c = closed.log_density_values(&l).unwrap();
                assert!((series.log_density_values(&l).unwrap() - c).abs() < 1e-8);
                assert!((haar.log_density_values(&l).unwrap() - c).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn angular_quadrature_matches_series_for_rectangular_weight() {
    let ctrl = SeriesControl { max_degree: 60, rel_tol: 1e-12, ..Default::default() };
    for alg in Algebra::MATRIX {
        for v in [Variant::TypeI, Variant::TypeII] {
            let p = params(v, alg, 7.0, &[2, 2], Scale::Matrix(sigma2(alg)));
            let haar = p.eigen_density(EigenRoute::Haar, &ctrl).unwrap();
            let series = p.eigen_density(EigenRoute::Series, &ctrl).unwrap();
            for l in [[2.0, 0.5], [3.0, 2.6], [1.2, 0.3]] {
                let h = haar.log_density_values(&l).unwrap();
                let s = series.log_density_values(&l).unwrap();
                assert!((h - s).abs() < 1e-8, "{alg} {v}: {h} vs {s}");
            }
        }
    }
}

/// Average of `etr(-P Y) q(Y^{+-1})` over `Y = l_2 I + (l_1 - l_2) h h*`
/// with `h` a uniform unit vector, by plain Monte Carlo.
fn angular_monte_carlo(p: &RieszParams, l: [f64; 2], n: usize, seed: u64) -> (f64, f64) {
    let alg = p.algebra();
    let beta = alg.beta() as usize;
    let inv = p.sigma_inverse().unwrap();
    let mut r = rng(seed);
    let mut w = riesz_core::stats::Welford::new();
    for _ in 0..n {
        let mut c = [[0.0; 4]; 2];
        for e in c.iter_mut() {
            for v in e.iter_mut().take(beta) {
                *v = r.sample(StandardNormal);
            }
        }
        let h: Vec<Quaternion> = c.iter().map(|e| Quaternion::from_coords(e)).collect();
        let norm = (h[0].norm_sqr() + h[1].norm_sqr()).sqrt();
        let h: Vec<Quaternion> = h.iter().map(|q| q.scale(1.0 / norm)).collect();
        let y = HermitianMatrix::from_lower(alg, 2, |i, j| {
            let outer = h[i] * h[j].conj();
            let base = if i == j { Quaternion::real(l[1]) } else { Quaternion::ZERO };
            base + outer.scale(l[0] - l[1])
        })
        .unwrap()
        .positive_definite()
        .unwrap();
        let log_q = match p.variant() {
            Variant::TypeI => log_highest_weight(&y, p.kappa()).unwrap(),
            Variant::TypeII => log_highest_weight_inverse(&y, p.kappa()).unwrap(),
        };
        let tr = inv.as_hermitian().trace_product(y.as_hermitian()).unwrap();
        w.push((log_q - tr).exp());
    }
    (w.mean(), w.std_error())
}

#[test]
fn angular_quadrature_matches_haar_monte_carlo() {
    let ctrl = SeriesControl::default();
    for alg in Algebra::MATRIX {
        for v in [Variant::TypeI, Variant::TypeII] {
            let p = params(v, alg, 6.0, &[3, 1], Scale::Matrix(sigma2(alg)));
            let haar = p.eigen_density(EigenRoute::Haar, &ctrl).unwrap();
            let l = [2.4, 0.7];
            let phi = haar.log_angular(&l).unwrap().exp();
            let (mean, se) = angular_monte_carlo(&p, l, 200_000, 77 + alg.beta() as u64);
            assert!((mean - phi).abs() < 4.0 * se, "{alg} {v}: {mean} +- {se} vs {phi}");
        }
    }
}

#[test]
fn general_scale_eigen_density_integrates_to_one() {
    let gl = riesz_core::quadrature::GaussLegendre::new(64);
    for alg in Algebra::MATRIX {
        for (v, k) in [(Variant::TypeI, [2u32, 1]), (Variant::TypeII, [1, 0])] {
            let a = if v == Variant::TypeI { 3.0 } else { 3.0 + alg.beta_f64() / 2.0 };
            let p = params(v, alg, a, &k, Scale::Matrix(sigma2(alg)));
            let f = p.eigen_density(EigenRoute::Auto, &SeriesControl::default()).unwrap();
            // l_1 = u, l_2 = u * w with w in (0, 1); dl_1 dl_2 = u du dw
            let mut total = 0.0;
            let panels = [0.0, 1.0, 3.0, 6.0, 12.0, 25.0, 60.0];
            for win in panels.windows(2) {
                for (u, wu) in gl.on(win[0], win[1]) {
                    for (w, ww) in gl.on(0.0, 1.0) {
                        let val = f.log_density_values(&[u, u * w]).unwrap().exp();
                        total += wu * ww * u * val;
                    }
                }
            }
            assert!((total - 1.0).abs() < 1e-6, "{alg} {v}: {total}");
        }
    }
}

#[test]
fn unsupported_configuration_is_reported() {
    let s = PositiveDefiniteMatrix::diagonal(Algebra::Real, &[1.0, 2.0, 3.0]).unwrap();
    let p = params(Variant::TypeI, Algebra::Real, 3.0, &[2, 1, 0], Scale::Matrix(s));
    assert!(matches!(
        p.eigen_density(EigenRoute::Auto, &SeriesControl::default()),
        Err(riesz_core::Error::Unsupported(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn density_is_scale_equivariant(alg in common::algebra_strategy(), m in 1usize..=3, seed in any::<u64>(), second in any::<bool>()) {
        let mut r = rng(seed);
        let variant = if second { Variant::TypeII } else { Variant::TypeI };
        let kappa = random_partition(m, 4, &mut r);
        let beta = alg.beta_f64();
        let a = (m as f64 - 1.0) * beta / 2.0 + kappa.first() as f64 + 0.5 + r.random::<f64>() * 3.0;
        let sigma = random_pd(alg, m, 0.3, &mut r);
        let c_source = random_pd(alg, m, 0.3, &mut r);
        // lower factor for Type I, upper for Type II
        let c = if second { c_source.upper_cholesky() } else { c_source.cholesky() };
        let x = random_pd(alg, m, 0.3, &mut r);
        let base = RieszParams::new(variant, alg, a, kappa.clone(), Scale::Matrix(sigma.clone())).unwrap();
        let moved_sigma = c.congruence(sigma.as_hermitian()).unwrap().positive_definite().unwrap();
        let moved = RieszParams::new(variant, alg, a, kappa, Scale::Matrix(moved_sigma)).unwrap();
        let y = c.congruence(x.as_hermitian()).unwrap().positive_definite().unwrap();
        let lhs = moved.log_density(&y).unwrap();
        let rhs = base.log_density(&x).unwrap() - log_jacobian_congruence(&c).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0));
    }

    #[test]
    fn char_fn_is_bounded(alg in common::algebra_strategy(), seed in any::<u64>(), second in any::<bool>()) {
        let mut r = rng(seed);
        let variant = if second { Variant::TypeII } else { Variant::TypeI };
        let kappa = random_partition(2, 5, &mut r);
        let a = alg.beta_f64() / 2.0 + kappa.first() as f64 + 0.2 + r.random::<f64>() * 4.0;
        let p = RieszParams::new(variant, alg, a, kappa, Scale::Matrix(random_pd(alg, 2, 0.2, &mut r))).unwrap();
        let t = random_hermitian(alg, 2, 0.0, &mut r).scale(3.0);
        prop_assert!(p.char_fn(&t).unwrap().norm() <= 1.0 + 1e-12);
    }
}
