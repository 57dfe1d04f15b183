use std::f64::consts::PI;

use hybridflow_core::kinetic::{cell_moments, ik_stress, maxwellian, Moments};
use hybridflow_core::stability::{analyze, Classification, StabilityQuery};
use hybridflow_core::{
    build_initial, l2_distance, total_mass, total_momentum, Experiment, Field2D, FluidModel, FluidSolver, FluidState,
    Grid2D, KineticSolver, KineticState, ModelParams, Reconstruction, VelocityGrid,
};
use proptest::prelude::*;

fn params(tau: f64) -> ModelParams {
    ModelParams {
        tau,
        tau_hmm: tau / 3.0,
        eps_ns: tau,
        ..Default::default()
    }
}

#[test]
fn oscillating_mass_matches_integral() {
    // the oscillatory part integrates to zero over whole periods
    let exp = Experiment::Oscillating;
    let g = exp.grid(64, 128).unwrap();
    let (s, _) = build_initial(&exp, &g, &params(0.0), None).unwrap();
    assert!((total_mass(&s, &g) - 2.0).abs() < 1e-12);
}

#[test]
fn stress_free_models_conserve_with_walls_in_x_only_momentum() {
    let exp = Experiment::Couette;
    let g = exp.grid(16, 32).unwrap();
    let (s0, _) = build_initial(&exp, &g, &params(0.01), None).unwrap();
    for model in [FluidModel::Euler, FluidModel::Hybrid] {
        let solver = FluidSolver::new(g.clone(), params(0.01), model).unwrap();
        let mut s = s0.clone();
        solver.advance(&mut s, 20).unwrap();
        // reflecting walls leave no mass flux through the boundary
        assert!((total_mass(&s, &g) - total_mass(&s0, &g)).abs() < 1e-12);
    }
}

#[test]
fn one_kinetic_step_tracks_euler_near_equilibrium() {
    let exp = Experiment::Oscillating;
    let mut diffs = Vec::new();
    for (nx, ny) in [(16, 32), (32, 64), (64, 128), (128, 256)] {
        let g = exp.grid(nx, ny).unwrap();
        let p = params(1e-6);
        let vg = VelocityGrid::default();
        let (f0, k0) = build_initial(&exp, &g, &p, Some(&vg)).unwrap();
        let euler = FluidSolver::new(g.clone(), p, FluidModel::Euler)
            .unwrap()
            .with_reconstruction(Reconstruction::FirstOrder);
        let kin = KineticSolver::new(g.clone(), vg.clone(), p)
            .unwrap()
            .with_reconstruction(Reconstruction::FirstOrder);
        let dt = 6.25e-4;
        let mut e = f0.clone();
        euler.step(&mut e, dt).unwrap();
        let mut k = k0.unwrap();
        let m0 = k.moments(&g, &vg).unwrap();
        kin.step(&mut k, dt).unwrap();
        let m1 = k.moments(&g, &vg).unwrap();
        // compare the increments so the lattice quadrature defect cancels
        let de = Field2D::from_fn(&g, |_, _| 0.0);
        let mut inc_e = de.clone();
        let mut inc_k = de;
        for j in 0..ny as isize {
            for i in 0..nx as isize {
                inc_e.set(i, j, e.rho.get(i, j) - f0.rho.get(i, j));
                inc_k.set(i, j, m1.rho.get(i, j) - m0.rho.get(i, j));
            }
        }
        let scale = l2_distance(&inc_e, &Field2D::from_fn(&g, |_, _| 0.0), &g).unwrap();
        diffs.push(l2_distance(&inc_e, &inc_k, &g).unwrap() / scale);
    }
    // mismatch is the difference of two upwind diffusions, O(dx) once resolved
    assert!(diffs.windows(2).all(|w| w[1] < w[0]), "{diffs:?}");
    assert!(diffs[2] / diffs[3] > 1.7, "{diffs:?}");
}

#[test]
fn homogeneous_relaxation_keeps_moments_and_decays() {
    let g = Grid2D::periodic(2, 2, (0.0, 1.0), (0.0, 1.0)).unwrap();
    let vg = VelocityGrid::default();
    let p = params(0.05);
    let a = maxwellian(0.6, (1.0, 0.5), &vg, &p);
    let b = maxwellian(0.6, (-0.8, -0.2), &vg, &p);
    let f0: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let m0 = cell_moments(&f0, &vg);
    let solver = KineticSolver::new(g.clone(), vg.clone(), p).unwrap();
    let mut s = KineticState::from_fn(&g, &vg, |_, _, out| out.copy_from_slice(&f0));
    let mut last = f64::INFINITY;
    for _ in 0..40 {
        solver.step(&mut s, 5e-3).unwrap();
        let m = cell_moments(s.cell(0, 0), &vg);
        assert!((m.rho - m0.rho).abs() < 1e-3);
        assert!((m.mx - m0.mx).abs() < 1e-3 && (m.my - m0.my).abs() < 1e-3);
        let eq = maxwellian(m.rho, m.velocity(), &vg, &p);
        let dist: f64 = s.cell(0, 0).iter().zip(&eq).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
        assert!(dist < last);
        last = dist;
    }
}

fn random_distribution(seed: &[f64], vg: &VelocityGrid) -> Vec<f64> {
    let p = ModelParams::default();
    let mut f = vec![0.0; vg.len()];
    for c in seed.chunks(4) {
        let m = maxwellian(0.2 + c[0], (2.0 * c[1] - 1.0, 2.0 * c[2] - 1.0), vg, &p);
        for (fk, mk) in f.iter_mut().zip(m) {
            *fk += mk * (0.5 + c[3]);
        }
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn collision_operator_conserves_moments(seed in prop::collection::vec(0.0f64..1.0, 12)) {
        let vg = VelocityGrid::default();
        let f = random_distribution(&seed, &vg);
        let m = cell_moments(&f, &vg);
        let eq = maxwellian(m.rho, m.velocity(), &vg, &ModelParams::default());
        let d: Vec<f64> = eq.iter().zip(&f).map(|(a, b)| a - b).collect();
        let Moments { rho, mx, my } = cell_moments(&d, &vg);
        prop_assert!(rho.abs() < 1e-3 && mx.abs() < 1e-3 && my.abs() < 1e-3);
    }

    #[test]
    fn maxwellian_moments_are_homogeneous(c in 0.1f64..10.0, ux in -1.0f64..1.0, uy in -1.0f64..1.0) {
        let vg = VelocityGrid::default();
        let p = ModelParams::default();
        let base = cell_moments(&maxwellian(1.0, (ux, uy), &vg, &p), &vg);
        let scaled = cell_moments(&maxwellian(c, (ux, uy), &vg, &p), &vg);
        prop_assert!((scaled.rho - c * base.rho).abs() < 1e-12 * c);
        let (a, b) = (base.velocity(), scaled.velocity());
        prop_assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    }

    #[test]
    fn resting_maxwellian_stress_is_isotropic(rho in 0.1f64..5.0) {
        let vg = VelocityGrid::default();
        let f = maxwellian(rho, (0.0, 0.0), &vg, &ModelParams::default());
        let t = ik_stress(&f, &vg, (0.0, 0.0));
        prop_assert!((t[0][0] - t[1][1]).abs() < 1e-12 * rho);
        prop_assert!(t[0][1].abs() < 1e-12 * rho && t[0][1] == t[1][0]);
        prop_assert!((t[0][0] + rho).abs() < 5e-3 * rho);
    }

    #[test]
    fn equilibrium_start_stays_nonnegative(
        rho in 0.5f64..2.0,
        amp in 0.0f64..0.3,
        ux in -1.0f64..1.0,
        tau in 1e-3f64..1.0,
    ) {
        let g = Grid2D::periodic(8, 8, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let vg = VelocityGrid::default();
        let p = params(tau);
        let fluid = FluidState::from_primitive(&g, |x, y| {
            (rho * (1.0 + amp * (2.0 * PI * x).sin() * (2.0 * PI * y).cos()), ux, 0.0)
        });
        let solver = KineticSolver::new(g.clone(), vg, p).unwrap();
        let mut s = solver.initial_state(&fluid).unwrap();
        solver.step(&mut s, solver.max_time_step(0.5)).unwrap();
        prop_assert!(s.interior_min() >= -1e-10);
    }

    #[test]
    fn periodic_fluid_runs_conserve(
        amp in 0.0f64..0.2,
        ux in -1.0f64..1.0,
        uy in -1.0f64..1.0,
        model in prop::sample::select(vec![FluidModel::Euler, FluidModel::NavierStokes, FluidModel::Hybrid]),
    ) {
        let g = Grid2D::periodic(12, 10, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let s0 = FluidState::from_primitive(&g, |x, y| {
            (1.0 + amp * (2.0 * PI * x).cos() * (4.0 * PI * y).sin(), ux * (2.0 * PI * y).cos(), uy)
        });
        let solver = FluidSolver::new(g.clone(), params(0.02), model).unwrap();
        let mut s = s0.clone();
        solver.advance(&mut s, 10).unwrap();
        let (m0, m1) = (total_mass(&s0, &g), total_mass(&s, &g));
        let (p0, p1) = (total_momentum(&s0, &g), total_momentum(&s, &g));
        prop_assert!((m1 - m0).abs() < 1e-12 * m0);
        prop_assert!((p1[0] - p0[0]).abs() < 1e-12 * m0);
        prop_assert!((p1[1] - p0[1]).abs() < 1e-12 * m0);
    }

    #[test]
    fn roots_agree_with_determinant_signs(
        k in 1e-3f64..10.0,
        theta in 0.0f64..PI,
        u0 in 0.0f64..10.0,
        t in 0.5f64..2.0,
        tau in 1e-4f64..1e-1,
    ) {
        let v = analyze(&StabilityQuery { k, theta, u0, temperature: t, tau }).unwrap();
        prop_assume!(v.delta4.abs() >= 1e-10);
        prop_assert!(-v.delta2 > 0.0);
        let expect = if v.delta4 > 0.0 { Classification::Stable } else { Classification::Unstable };
        prop_assert_eq!(v.classification, expect);
    }

    #[test]
    fn verdict_is_symmetric_in_angle(
        k in 1e-2f64..10.0,
        theta in 0.0f64..PI,
        u0 in 0.0f64..10.0,
        tau in 1e-4f64..1e-1,
    ) {
        let q = StabilityQuery { k, theta, u0, temperature: 1.0, tau };
        let v = analyze(&q).unwrap();
        prop_assume!(v.delta4.abs() >= 1e-10);
        for th in [-theta, PI - theta] {
            let w = analyze(&StabilityQuery { theta: th, ..q }).unwrap();
            prop_assert_eq!(w.classification, v.classification);
        }
    }

    #[test]
    fn determinants_scale_with_wavenumber(k in 1e-2f64..5.0, s in 0.1f64..3.0, theta in 0.0f64..PI, u0 in 0.0f64..10.0) {
        let q = StabilityQuery { k, theta, u0, temperature: 1.0, tau: 0.01 };
        let a = analyze(&q).unwrap();
        let b = analyze(&StabilityQuery { k: s * k, ..q }).unwrap();
        prop_assert!((b.delta2 - s * s * a.delta2).abs() <= 1e-12 * b.delta2.abs());
        prop_assert!((b.delta4 - s.powi(6) * a.delta4).abs() <= 1e-10 * b.delta4.abs().max(1e-300));
    }

    #[test]
    fn l2_distance_is_symmetric(a in 0.0f64..3.0, b in 0.0f64..3.0) {
        let g = Grid2D::periodic(5, 7, (0.0, 1.0), (0.0, 2.0)).unwrap();
        let fa = Field2D::from_fn(&g, |x, y| a * x + y);
        let fb = Field2D::from_fn(&g, |x, y| b * y * x);
        prop_assert_eq!(l2_distance(&fa, &fb, &g).unwrap(), l2_distance(&fb, &fa, &g).unwrap());
    }
}
