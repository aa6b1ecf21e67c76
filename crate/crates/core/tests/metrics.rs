mod common;

use common::*;
use hdr_core::channel::SystemDims;
use hdr_core::complexity::{flops_analytic, flops_measured};
use hdr_core::metrics::{ideal_spectral_efficiency, nmse, spectral_efficiency};
use hdr_core::pipeline::{
    build_permutations, complex_gaussian, hdr_estimate, krf_estimate, ls_estimate, matched_filter,
    simulate_observation, EstimateSet, Method,
};
use hdr_core::training::make_training;
use hdr_core::C64;

#[test]
fn nmse_of_additive_noise() {
    let dims = SystemDims::baseline();
    let sigma2 = 0.2;
    let mut r = rng(70);
    let mut acc = 0.0;
    for trial in 0..500 {
        let ch = random_channel(&dims, trial);
        let mut e_hat = ch.e.clone();
        e_hat.data_mut().iter_mut().for_each(|z| *z += complex_gaussian(&mut r, sigma2));
        acc += nmse(&ch.e, &e_hat).unwrap();
    }
    let mean = acc / 500.0;
    assert!((mean / sigma2 - 1.0).abs() < 0.1, "mean NMSE {mean}");
}

#[test]
fn nmse_common_phase_invariance() {
    let mut r = rng(71);
    let a = random_matrix(&mut r, 6, 4);
    let b = random_matrix(&mut r, 6, 4);
    let rot = C64::from_polar(1.0, 2.2);
    let x = nmse(&a, &b).unwrap();
    let y = nmse(&a.scale(rot), &b.scale(rot)).unwrap();
    assert!((x - y).abs() < 1e-14);
}

#[test]
fn ideal_spectral_efficiency_closed_form() {
    let dims = SystemDims::baseline();
    let value = ideal_spectral_efficiency(&dims, 1.0, 1.0);
    assert!((value - (1.0f64 + 16.0 * 16.0 * 256.0).log2()).abs() < 1e-12);
    // 10 dB SNR
    let value = ideal_spectral_efficiency(&dims, 1.0, 0.1);
    assert!((value - 19.321_930_296_263_613).abs() < 1e-9);
}

#[test]
fn noiseless_estimates_reach_ideal_rate() {
    let dims = SystemDims::baseline();
    let plan = build_permutations(&dims);
    for seed in 0..10 {
        let ch = random_channel(&dims, 200 + seed);
        for sigma2 in [10.0, 1.0, 0.1] {
            let ideal = ideal_spectral_efficiency(&dims, 1.0, sigma2);
            let truth = EstimateSet { method: Method::Ls, hdr: None, krf: None, e_hat: ch.e.clone() };
            for est in [
                hdr_estimate(&ch.e, &plan, &dims).unwrap(),
                krf_estimate(&ch.e, &dims).unwrap(),
                ls_estimate(&ch.e),
                truth,
            ] {
                let se = spectral_efficiency(&ch, &est, 1.0, sigma2).unwrap();
                assert!((se - ideal).abs() < 1e-9, "{}: {se} vs {ideal}", est.method);
            }
        }
    }
}

#[test]
fn ideal_rate_dominates_every_estimate() {
    let dims = SystemDims::baseline();
    let plan = build_permutations(&dims);
    let td = make_training::<f64>(&dims).unwrap();
    for trial in 0..100u64 {
        let ch = random_channel(&dims, 300 + trial);
        for snr in [-15.0, -5.0, 5.0] {
            let sigma2 = 10f64.powf(-snr / 10.0);
            let ideal = ideal_spectral_efficiency(&dims, 1.0, sigma2);
            let obs = simulate_observation(&ch, &td, sigma2, &mut rng(400 + trial)).unwrap();
            let e = matched_filter(&obs, &td).unwrap();
            for est in [hdr_estimate(&e, &plan, &dims).unwrap(), krf_estimate(&e, &dims).unwrap(), ls_estimate(&e)] {
                let se = spectral_efficiency(&ch, &est, 1.0, sigma2).unwrap();
                assert!(se >= 0.0 && se <= ideal + 1e-9, "{}: {se} > {ideal}", est.method);
            }
        }
    }
}

fn grid_dims(m_y: usize, m_z: usize, q_y: usize, q_z: usize, n_y: usize, n_z: usize) -> SystemDims {
    SystemDims { m_y, m_z, q_y, q_z, n_y, n_z, t: m_y * m_z, k: n_y * n_z }
}

#[test]
fn analytic_counts_at_large_ris() {
    let d = grid_dims(4, 4, 4, 4, 50, 50);
    let ls = flops_analytic(Method::Ls, &d) as f64;
    let hdr = flops_analytic(Method::Hdr, &d) as f64;
    let krf = flops_analytic(Method::Krf, &d) as f64;
    assert!((1.8..=2.2).contains(&(krf / hdr)), "KRF/HDR {}", krf / hdr);
    assert!(hdr / ls <= 1.1);
    // shared filtering term dominates more and more
    let ratio = |n: usize| {
        let d = grid_dims(4, 4, 4, 4, n, n);
        flops_analytic(Method::Hdr, &d) as f64 / flops_analytic(Method::Ls, &d) as f64
    };
    assert!(ratio(4) > ratio(10) && ratio(10) > ratio(20) && ratio(20) > ratio(50));
    assert!(ratio(50) - 1.0 < 1e-3);
}

#[test]
fn analytic_counts_are_monotone_in_every_dimension() {
    let base = [2usize, 3, 2, 1, 3, 2];
    for method in Method::ALL {
        for axis in 0..6 {
            let mut prev = 0u128;
            for v in 1..6 {
                let mut e = base;
                e[axis] = v;
                let d = grid_dims(e[0], e[1], e[2], e[3], e[4], e[5]);
                let c = flops_analytic(method, &d);
                assert!(c >= prev);
                prev = c;
            }
        }
    }
}

#[test]
fn measured_ratio_follows_analytic_direction() {
    let mut analytic = Vec::new();
    let mut measured = Vec::new();
    for side in [4, 8, 16] {
        let dims = grid_dims(2, 2, 2, 2, side, side);
        let ch = random_channel(&dims, 500);
        let td = make_training::<f64>(&dims).unwrap();
        let plan = build_permutations(&dims);
        let (_, hdr) = flops_measured(Method::Hdr, &ch, &td, &plan, 0.1, &mut rng(1)).unwrap();
        let (_, krf) = flops_measured(Method::Krf, &ch, &td, &plan, 0.1, &mut rng(1)).unwrap();
        measured.push(hdr as f64 / krf as f64);
        analytic.push(flops_analytic(Method::Hdr, &dims) as f64 / flops_analytic(Method::Krf, &dims) as f64);
    }
    for w in 0..2 {
        let a = (analytic[w + 1] - analytic[w]).signum();
        let m = (measured[w + 1] - measured[w]).signum();
        assert_eq!(a, m, "analytic {analytic:?} measured {measured:?}");
    }
}

#[test]
fn measured_ls_is_the_matched_filter() {
    let dims = SystemDims::baseline();
    let ch = random_channel(&dims, 501);
    let td = make_training::<f64>(&dims).unwrap();
    let plan = build_permutations(&dims);
    let (_, ls) = flops_measured(Method::Ls, &ch, &td, &plan, 0.1, &mut rng(2)).unwrap();
    assert_eq!(ls as usize, dims.q() * dims.t * dims.k * dims.m() * dims.n());
}
