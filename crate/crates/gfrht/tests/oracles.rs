//! Oracle checks: every pipeline output is compared against a straight-line
//! dense evaluation written independently of the library's operator
//! plumbing (no caching, no operator structs; inverses applied by solving
//! linear systems instead of multiplying by stored inverses).

use gfrht::{
    eigendecompose, gfras, ght, modulation_features, to_complex, unwrap_phase, EigenSystem,
    FrftOperator, GftOperator, Graph, GraphSpec, HilbertConfig,
};
use ndarray::{array, Array1, Array2};
use ndarray_linalg::{Eig, Solve};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

type C = Complex64;

#[allow(clippy::type_complexity)]
fn social5() -> (
    Graph<f64>,
    Arc<EigenSystem<f64>>,
    GftOperator<f64>,
    Arc<FrftOperator<f64>>,
) {
    let g = GraphSpec::Social5.generate::<f64>(0).unwrap();
    let eig = Arc::new(eigendecompose(&g).unwrap());
    let gft = GftOperator::new(eig.clone());
    let frft = Arc::new(FrftOperator::new(&gft).unwrap());
    (g, eig, gft, frft)
}

fn signal5() -> Array1<f64> {
    array![0.8, 0.3, 0.5, 0.2, 0.6]
}

/// Dense reference for the conventional transform: solve U z = x for the
/// spectrum, apply the exact {-i, 0, +i} mask by eigenvalue class, map back
/// with U.
fn oracle_ght(eig: &EigenSystem<f64>, x: &Array1<f64>) -> Array1<C> {
    let u = eig.vectors();
    let xc = to_complex(x);
    let spectrum = u.solve(&xc).unwrap();
    let tol = eig.im_tol();
    let masked = Array1::from_shape_fn(spectrum.len(), |k| {
        let lam = eig.values()[k];
        if lam.im > tol {
            spectrum[k] * C::new(0.0, -1.0)
        } else if lam.im < -tol {
            spectrum[k] * C::new(0.0, 1.0)
        } else {
            C::new(0.0, 0.0)
        }
    });
    u.dot(&masked)
}

/// Dense reference for the dual-parameter transform: eigendecompose the
/// forward matrix on the spot and evaluate
/// `V D^-a solve(V, mask .* (V D^a solve(V, x)))` step by step.
fn oracle_gfrht(eig: &EigenSystem<f64>, alpha: f64, beta: f64, x: &Array1<C>) -> Array1<C> {
    let f = eig.vectors_inv().clone();
    let (d, v) = f.eig().unwrap();
    let power_apply = |a: f64, z: &Array1<C>| -> Array1<C> {
        let coeffs = v.solve(z).unwrap();
        let scaled = Array1::from_shape_fn(coeffs.len(), |k| coeffs[k] * (d[k].ln() * a).exp());
        v.dot(&scaled)
    };
    let spectrum = power_apply(alpha, x);
    let tol = eig.im_tol();
    let masked = Array1::from_shape_fn(spectrum.len(), |k| {
        let lam = eig.values()[k];
        let h = if lam.im > tol {
            C::new(beta.cos(), -beta.sin())
        } else if lam.im < -tol {
            C::new(beta.cos(), beta.sin())
        } else {
            C::new(beta.cos(), 0.0)
        };
        spectrum[k] * h
    });
    power_apply(-alpha, &masked)
}

#[test]
fn ght_matches_dense_oracle_on_social5() {
    let (_, eig, gft, _) = social5();
    let x = signal5();
    let got = ght(&gft, &eig, to_complex(&x).view());
    let want = oracle_ght(&eig, &x);
    for (a, b) in got.iter().zip(want.iter()) {
        assert!((a - b).norm() < 1e-9, "{a:?} vs {b:?}");
    }
}

#[test]
fn ght_matches_dense_oracle_on_random_graphs() {
    for seed in 1..=20u64 {
        let mut rng = gfrht::rng::SplitMix64::new(seed);
        let n = 3 + (seed % 8) as usize;
        let m = Array2::from_shape_fn((n, n), |_| rng.uniform(0.0, 1.0));
        let g: Graph<f64> = Graph::from_adjacency(m, "rand").unwrap();
        let eig = Arc::new(eigendecompose(&g).unwrap());
        let gft = GftOperator::new(eig.clone());
        let x = Array1::from_shape_fn(n, |_| rng.uniform(-1.0, 1.0));
        let got = ght(&gft, &eig, to_complex(&x).view());
        let want = oracle_ght(&eig, &x);
        for (a, b) in got.iter().zip(want.iter()) {
            assert!((a - b).norm() < 1e-9, "seed {seed}: {a:?} vs {b:?}");
        }
    }
}

#[test]
fn gfrht_matches_dense_oracle_across_parameters() {
    let (_, eig, _, frft) = social5();
    let x = to_complex(&signal5());
    for &(alpha, beta) in &[
        (0.0, FRAC_PI_2),
        (0.5, PI / 4.0),
        (1.0, FRAC_PI_2),
        (1.3, 0.9),
        (0.7, PI / 10.0),
    ] {
        let cfg = HilbertConfig::new(alpha, beta, frft.clone(), eig.clone()).unwrap();
        let got = cfg.gfrht(x.view()).unwrap();
        let want = oracle_gfrht(&eig, alpha, beta, &x);
        for (a, b) in got.iter().zip(want.iter()) {
            assert!(
                (a - b).norm() < 1e-8,
                "(alpha, beta) = ({alpha}, {beta}): {a:?} vs {b:?}"
            );
        }
    }
}

#[test]
fn zero_order_half_pi_masks_in_the_vertex_domain() {
    // with order zero the fractional pair is the identity, so the transform
    // is the bare mask applied through identity transforms
    let (_, eig, _, frft) = social5();
    let x = to_complex(&signal5());
    let cfg = HilbertConfig::new(0.0, FRAC_PI_2, frft, eig.clone()).unwrap();
    let got = cfg.gfrht(x.view()).unwrap();
    let want = oracle_gfrht(&eig, 0.0, FRAC_PI_2, &x);
    for (a, b) in got.iter().zip(want.iter()) {
        assert!((a - b).norm() < 1e-9);
    }
    // explicit dense evaluation: mask entries times the signal
    let direct = Array1::from_shape_fn(5, |k| cfg.transfer().entries()[k] * x[k]);
    for (a, b) in got.iter().zip(direct.iter()) {
        assert!((a - b).norm() < 1e-9);
    }
}

#[test]
fn cycle4_impulse_gfrht_against_hand_arithmetic() {
    // order 1, angle pi/2 on the 4-cycle impulse equals the hand-computed
    // conventional-transform response
    let g = GraphSpec::DirectedCycle { n: 4 }
        .generate::<f64>(0)
        .unwrap();
    let eig = Arc::new(eigendecompose(&g).unwrap());
    let gft = GftOperator::new(eig.clone());
    let frft = Arc::new(FrftOperator::new(&gft).unwrap());
    let cfg = HilbertConfig::new(1.0, FRAC_PI_2, frft, eig).unwrap();
    let x = to_complex(&array![1.0, 0.0, 0.0, 0.0]);
    let got = cfg.gfrht(x.view()).unwrap();
    let want = [0.0, 0.5, 0.0, -0.5];
    for (v, w) in got.iter().zip(want.iter()) {
        assert!((v.re - w).abs() < 1e-9 && v.im.abs() < 1e-9, "{got:?}");
    }
}

/// Reference analytic-signal feature stack built on the dense oracle.
#[allow(clippy::type_complexity)]
fn oracle_features(
    graph: &Graph<f64>,
    eig: &EigenSystem<f64>,
    x: &Array1<f64>,
) -> (
    Array1<C>,
    Array1<f64>,
    Array1<f64>,
    Array1<f64>,
    Array1<f64>,
) {
    let h = oracle_ght(eig, x);
    let analytic = Array1::from_shape_fn(x.len(), |k| C::new(x[k], 0.0) + C::new(0.0, 1.0) * h[k]);
    let amp = analytic.mapv(|z| z.norm());
    let phase = analytic.mapv(|z| {
        let p = z.im.atan2(z.re);
        if p <= -PI {
            PI
        } else {
            p
        }
    });
    let unwrapped = unwrap_phase(phase.view());
    let freq = &unwrapped - &graph.adjacency().dot(&unwrapped);
    (analytic, amp, phase, unwrapped, freq)
}

#[test]
fn analytic_features_reduce_to_conventional_stack() {
    let (g, eig, _, frft) = social5();
    let x = signal5();
    let cfg = HilbertConfig::new(1.0, FRAC_PI_2, frft, eig.clone()).unwrap();

    let got_signal = gfras(&cfg, &x).unwrap();
    let feats = modulation_features(&cfg, &g, &x).unwrap();
    let (want_signal, want_amp, want_phase, want_unwrapped, want_freq) =
        oracle_features(&g, &eig, &x);

    for k in 0..5 {
        assert!((got_signal[k] - want_signal[k]).norm() < 1e-9);
        assert!((feats.amplitude[k] - want_amp[k]).abs() < 1e-9);
        assert!((feats.phase[k] - want_phase[k]).abs() < 1e-9);
        assert!((feats.phase_unwrapped[k] - want_unwrapped[k]).abs() < 1e-9);
        assert!((feats.freq_mod[k] - want_freq[k]).abs() < 1e-9);
    }
}

#[test]
fn analytic_specialization_on_random_graphs() {
    for seed in 1..=20u64 {
        let mut rng = gfrht::rng::SplitMix64::new(seed ^ 0xA5A5);
        let n = 3 + (seed % 8) as usize;
        let m = Array2::from_shape_fn((n, n), |_| rng.uniform(0.0, 1.0));
        let g: Graph<f64> = Graph::from_adjacency(m, "rand").unwrap();
        let eig = Arc::new(eigendecompose(&g).unwrap());
        let gft = GftOperator::new(eig.clone());
        let frft = Arc::new(FrftOperator::new(&gft).unwrap());
        let cfg = HilbertConfig::new(1.0, FRAC_PI_2, frft, eig.clone()).unwrap();
        let x = Array1::from_shape_fn(n, |_| rng.uniform(-1.0, 1.0));
        let feats = modulation_features(&cfg, &g, &x).unwrap();
        let (want_signal, want_amp, want_phase, want_unwrapped, want_freq) =
            oracle_features(&g, &eig, &x);
        for k in 0..n {
            assert!(
                (feats.gfras[k] - want_signal[k]).norm() < 1e-9,
                "seed {seed}"
            );
            assert!((feats.amplitude[k] - want_amp[k]).abs() < 1e-9);
            assert!((feats.phase[k] - want_phase[k]).abs() < 1e-9);
            assert!((feats.phase_unwrapped[k] - want_unwrapped[k]).abs() < 1e-9);
            assert!((feats.freq_mod[k] - want_freq[k]).abs() < 1e-9);
        }
    }
}

#[test]
fn fractional_kernel_on_cycle_against_dense_product() {
    // order 1: the kernel is U times the mask diagonal
    let g = GraphSpec::DirectedCycle { n: 4 }
        .generate::<f64>(0)
        .unwrap();
    let eig = Arc::new(eigendecompose(&g).unwrap());
    let gft = GftOperator::new(eig.clone());
    let frft = Arc::new(FrftOperator::new(&gft).unwrap());
    let cfg = HilbertConfig::new(1.0, FRAC_PI_2, frft, eig.clone()).unwrap();
    let kernel = cfg.fractional_kernel().unwrap();
    let want = eig.vectors().dot(cfg.transfer().entries());
    for (a, b) in kernel.iter().zip(want.iter()) {
        assert!((a - b).norm() < 1e-9);
    }
}

#[test]
fn gfrft_unit_order_equals_direct_solve() {
    // F^1 x must match solving U y = x
    let (_, eig, _, frft) = social5();
    let x = to_complex(&signal5());
    let got = frft.gfrft(1.0, x.view()).unwrap();
    let want = eig.vectors().solve(&x).unwrap();
    for (a, b) in got.iter().zip(want.iter()) {
        assert!((a - b).norm() < 1e-10);
    }
    // and the inverse transform at order 1 is multiplication by U
    let back = frft.igfrft(1.0, got.view()).unwrap();
    let direct = eig.vectors().dot(&got);
    for (a, b) in back.iter().zip(direct.iter()) {
        assert!((a - b).norm() < 1e-10);
    }
}
