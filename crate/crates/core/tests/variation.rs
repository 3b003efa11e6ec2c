use ggbm_core::paths::{sample_bm, DyadicGrid, FbmMethod, FbmSampler, Path};
use ggbm_core::sampling::RngStream;
use ggbm_core::variation::{
    dyadic_max_sums, dyadic_sums, estimate_index, exact_p_variation, write_profiles_csv,
};
use ggbm_core::Error;
use proptest::prelude::*;

/// Maximum over every subsequence that keeps both endpoints.
fn brute_force(v: &[f64], p: f64) -> f64 {
    let n = v.len();
    let inner = n - 2;
    let mut best = 0.0f64;
    for mask in 0u32..(1 << inner) {
        let mut prev = v[0];
        let mut s = 0.0;
        for (k, &x) in v[1..n - 1].iter().enumerate() {
            if mask & (1 << k) != 0 {
                s += (x - prev).abs().powf(p);
                prev = x;
            }
        }
        s += (v[n - 1] - prev).abs().powf(p);
        best = best.max(s);
    }
    best
}

proptest! {
    #[test]
    fn dp_matches_brute_force(
        v in prop::collection::vec(-3.0f64..3.0, 2..11),
        p in 1.0f64..3.5,
    ) {
        let dp = exact_p_variation(&v, p).unwrap();
        let bf = brute_force(&v, p);
        prop_assert!((dp - bf).abs() <= 1e-12 * bf.max(1.0), "dp {} bf {}", dp, bf);
    }

    #[test]
    fn max_sum_dominates_full_sum(seed in 0u64..1000, p in 1.0f64..3.0) {
        let path = sample_bm(DyadicGrid::new(6).unwrap(), &mut RngStream::new(seed, 0));
        let full = dyadic_sums(&path, p, &[6]).unwrap().sums[0];
        let max = dyadic_max_sums(&path, p, &[6]).unwrap().sums[0];
        prop_assert!(max >= full * (1.0 - 1e-12));
    }

    #[test]
    fn scaling_multiplies_by_power(seed in 0u64..1000, c in 0.1f64..10.0, p in 1.0f64..3.0) {
        let path = sample_bm(DyadicGrid::new(5).unwrap(), &mut RngStream::new(seed, 1));
        let scaled: Vec<f64> = path.values().iter().map(|x| c * x).collect();
        let scaled = Path::new(path.grid(), scaled, None).unwrap();
        for (a, b) in [
            (dyadic_sums(&path, p, &[3, 5]).unwrap(), dyadic_sums(&scaled, p, &[3, 5]).unwrap()),
            (dyadic_max_sums(&path, p, &[5]).unwrap(), dyadic_max_sums(&scaled, p, &[5]).unwrap()),
        ] {
            for (x, y) in a.sums.iter().zip(&b.sums) {
                prop_assert!((y - c.powf(p) * x).abs() <= 1e-11 * y.max(1e-300));
            }
        }
    }
}

#[test]
fn max_sums_grow_with_refinement() {
    // a finer grid contains the coarser one, so the supremum can only grow
    let path = sample_bm(DyadicGrid::new(9).unwrap(), &mut RngStream::new(5, 0));
    let prof = dyadic_max_sums(&path, 2.0, &[3, 4, 5, 6, 7, 8, 9]).unwrap();
    assert!(prof.sums.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn exact_variation_rejects_small_exponents() {
    assert!(matches!(exact_p_variation(&[0.0, 1.0], 0.5), Err(Error::ExponentBelowOne(_))));
    let too_long = vec![0.0; 4098];
    assert!(exact_p_variation(&too_long, 2.0).is_err());
}

#[test]
fn monotone_path_total_variation() {
    let v: Vec<f64> = (0..=16).map(|i| (i as f64).sqrt()).collect();
    assert!((exact_p_variation(&v, 1.0).unwrap() - 4.0).abs() < 1e-12);
    // for p > 1 a monotone path is best taken in one step
    assert!((exact_p_variation(&v, 2.0).unwrap() - 16.0).abs() < 1e-12);
}

#[test]
fn index_of_brownian_and_fractional_paths() {
    let p_grid: Vec<f64> = (0..=40).map(|k| 1.0 + 0.05 * k as f64).collect();
    let levels: Vec<u32> = (8..=14).collect();
    let grid = DyadicGrid::new(14).unwrap();
    let mut bm = Vec::new();
    let mut fbm = Vec::new();
    let sampler = FbmSampler::new(0.75, grid, FbmMethod::Circulant).unwrap();
    for i in 0..15 {
        let path = sample_bm(grid, &mut RngStream::new(21, i));
        bm.push(estimate_index(&path, &p_grid, &levels).unwrap().v_hat);
        let path = sampler.sample(&mut RngStream::new(22, i));
        fbm.push(estimate_index(&path, &p_grid, &levels).unwrap().v_hat);
    }
    let median = |v: &mut Vec<f64>| {
        v.sort_by(f64::total_cmp);
        v[v.len() / 2]
    };
    let (mb, mf) = (median(&mut bm), median(&mut fbm));
    assert!((mb - 2.0).abs() < 0.15, "Bm index {mb}");
    assert!((mf - 4.0 / 3.0).abs() < 0.1, "fBm index {mf}");
}

#[test]
fn profiles_csv_layout() {
    let path = sample_bm(DyadicGrid::new(4).unwrap(), &mut RngStream::new(1, 0));
    let prof = dyadic_sums(&path, 2.0, &[2, 4]).unwrap();
    let mut out = Vec::new();
    write_profiles_csv(&[prof], &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,level,sum");
    assert_eq!(lines.len(), 3);
    assert!(lines[2].starts_with("2.0000000000000000e0,4,"));
}
