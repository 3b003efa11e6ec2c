use ggbm_core::ensemble::{mean_and_se, run_ensemble, EnsembleConfig};
use ggbm_core::paths::{sample_ggbm, sample_tcbm, DyadicGrid, Path, TimeChangeConfig};
use ggbm_core::sampling::RngStream;
use ggbm_core::sde::{solve_time_changed, solve_young, CoefficientSpec, Driver, Smoothness};
use ggbm_core::specfun::gamma;

const BETA: f64 = 0.8;
const ALPHA: f64 = 1.5;

fn sup_rel_error(sol: &Path, driver: &Path, x0: f64, c: f64) -> f64 {
    sol.values()
        .iter()
        .zip(driver.values())
        .map(|(x, b)| {
            let exact = x0 * (c * b).exp();
            ((x - exact) / exact).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn linear_young_solution_converges_to_exponential() {
    let driver = sample_ggbm(BETA, ALPHA, DyadicGrid::new(14).unwrap(), &mut RngStream::new(8, 0)).unwrap();
    let g = CoefficientSpec::linear(1.0);
    let mut errors = Vec::new();
    for m in 10..=14 {
        let coarse = driver.subsample(m).unwrap();
        let sol = solve_young(&g, None, 1.0, &coarse).unwrap();
        errors.push(sup_rel_error(&sol.path, &coarse, 1.0, 1.0));
    }
    assert!(errors[4] < 0.02, "{errors:?}");
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn young_rejects_rough_coefficients() {
    let driver = sample_ggbm(BETA, ALPHA, DyadicGrid::new(6).unwrap(), &mut RngStream::new(8, 1)).unwrap();
    let lip = CoefficientSpec::table(vec![0.0, 1.0], vec![1.0, 2.0], Smoothness::Lipschitz { constant: 1.0 }).unwrap();
    assert!(solve_young(&lip, None, 0.0, &driver).is_err());
    // kappa must exceed 2/alpha - 1 = 1/3
    let thin = CoefficientSpec::table(
        vec![0.0, 1.0],
        vec![1.0, 2.0],
        Smoothness::Holder { kappa: 0.2, lipschitz: 1.0 },
    )
    .unwrap();
    assert!(solve_young(&thin, None, 0.0, &driver).is_err());
    let ok = CoefficientSpec::table(
        vec![0.0, 1.0],
        vec![1.0, 2.0],
        Smoothness::Holder { kappa: 0.5, lipschitz: 1.0 },
    )
    .unwrap();
    let sol = solve_young(&ok, None, 0.0, &driver).unwrap();
    assert!(sol.outside_proven_regime);
    assert_eq!(sol.metadata().get("outside_proven_regime").map(String::as_str), Some("true"));
}

#[test]
fn constant_diffusion_second_moment() {
    let grid = DyadicGrid::new(1).unwrap();
    let cfg = TimeChangeConfig {
        operational_level: 10,
        ..TimeChangeConfig::default()
    };
    let sigma = 0.7;
    let f = CoefficientSpec::constant(sigma);
    let ens = EnsembleConfig::new(31, 10_000, 0);
    let ends = run_ensemble(&ens, |rng, _| {
        let sol = solve_time_changed(&f, None, 2.0, BETA, ALPHA, grid, &cfg, rng)?;
        let v = sol.path.values();
        Ok(((v[1] - 2.0).powi(2), (v[2] - 2.0).powi(2)))
    })
    .unwrap();
    let g1 = gamma(1.0 + BETA).unwrap();
    for (t, xs) in [
        (0.5, ends.iter().map(|e| e.0).collect::<Vec<_>>()),
        (1.0, ends.iter().map(|e| e.1).collect::<Vec<_>>()),
    ] {
        let (m, se) = mean_and_se(&xs);
        let target = sigma * sigma * f64::powf(t, ALPHA) / g1;
        assert!((m - target).abs() <= 4.0 * se, "t {t}: {m} +- {se} vs {target}");
    }
}

#[test]
fn linear_time_changed_solution_preserves_mean() {
    let grid = DyadicGrid::new(1).unwrap();
    let f = CoefficientSpec::linear(0.5);
    let ens = EnsembleConfig::new(32, 20_000, 0);
    let cfg = TimeChangeConfig {
        operational_level: 8,
        ..TimeChangeConfig::default()
    };
    let ends = run_ensemble(&ens, |rng, _| {
        Ok(solve_time_changed(&f, None, 1.0, BETA, ALPHA, grid, &cfg, rng)?.path.terminal())
    })
    .unwrap();
    let (m, se) = mean_and_se(&ends);
    assert!((m - 1.0).abs() <= 4.0 * se, "{m} +- {se}");
}

#[test]
fn constant_coefficient_matches_tcbm_and_flat_segments_stay_flat() {
    let grid = DyadicGrid::new(10).unwrap();
    let cfg = TimeChangeConfig::default();
    let sol = solve_time_changed(
        &CoefficientSpec::constant(1.0),
        None,
        0.0,
        BETA,
        ALPHA,
        grid,
        &cfg,
        &mut RngStream::new(33, 0),
    )
    .unwrap();
    let tcbm = sample_tcbm(BETA, ALPHA, grid, &cfg, &mut RngStream::new(33, 0)).unwrap();
    assert_eq!(sol.path.values(), tcbm.values());
    let Driver::TimeChanged { clock, .. } = &sol.driver else {
        panic!("expected a time-changed driver");
    };
    let mut flats = 0;
    for (i, w) in clock.values.windows(2).enumerate() {
        if w[0] == w[1] {
            flats += 1;
            assert_eq!(sol.path.values()[i], sol.path.values()[i + 1]);
        }
    }
    assert!(flats > 0, "a level-10 clock at beta = 0.8 should have flat steps");
}

#[test]
fn pure_drift_integrates_the_clock() {
    let grid = DyadicGrid::new(8).unwrap();
    let one = CoefficientSpec::constant(1.0);
    let sol = solve_time_changed(
        &CoefficientSpec::constant(0.0),
        Some(&one),
        0.25,
        BETA,
        ALPHA,
        grid,
        &TimeChangeConfig::default(),
        &mut RngStream::new(34, 0),
    )
    .unwrap();
    let Driver::TimeChanged { clock, .. } = &sol.driver else {
        panic!("expected a time-changed driver");
    };
    for (y, u) in sol.path.values().iter().zip(&clock.values) {
        assert!((y - (0.25 + u)).abs() < 1e-12);
    }
}
