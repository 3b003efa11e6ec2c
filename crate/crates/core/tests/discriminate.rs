use ggbm_core::discriminate::{
    classify, confusion_experiment, ConfusionSetup, DiscriminatorConfig, Label,
};
use ggbm_core::paths::{sample_ggbm, sample_tcbm, DyadicGrid, Path, TimeChangeConfig};
use ggbm_core::sampling::RngStream;

const BETA: f64 = 0.8;
const ALPHA: f64 = 1.5;

fn setup(n: usize, level: u32, threads: usize) -> ConfusionSetup {
    ConfusionSetup {
        n_per_class: n,
        level,
        seed: 99,
        threads,
        discriminator: DiscriminatorConfig::default(),
        time_change: TimeChangeConfig::default(),
    }
}

fn scaled(path: &Path, c: f64) -> Path {
    let v = path.values().iter().map(|x| c * x).collect();
    Path::new(path.grid(), v, None).unwrap()
}

#[test]
fn labels_match_generating_process() {
    let grid = DyadicGrid::new(13).unwrap();
    let cfg = DiscriminatorConfig::default();
    let mut right = 0;
    for i in 0..10 {
        let g = sample_ggbm(BETA, ALPHA, grid, &mut RngStream::new(4, i)).unwrap();
        right += usize::from(classify(&g, ALPHA, &cfg).unwrap().label == Label::Ggbm);
        let t = sample_tcbm(BETA, ALPHA, grid, &TimeChangeConfig::default(), &mut RngStream::new(5, i)).unwrap();
        right += usize::from(classify(&t, ALPHA, &cfg).unwrap().label == Label::Tcbm);
    }
    assert!(right >= 18, "{right} of 20 correct");
}

#[test]
fn label_is_scale_invariant() {
    let grid = DyadicGrid::new(12).unwrap();
    let cfg = DiscriminatorConfig::default();
    for i in 0..6 {
        let path = sample_ggbm(BETA, ALPHA, grid, &mut RngStream::new(6, i)).unwrap();
        let v = classify(&path, ALPHA, &cfg).unwrap();
        if v.label == Label::Inconclusive {
            continue;
        }
        for c in [0.1, 10.0] {
            let w = classify(&scaled(&path, c), ALPHA, &cfg).unwrap();
            assert_eq!(w.label, v.label);
            assert!((w.slope_2 - v.slope_2).abs() < 1e-9);
            assert!((w.slope_2a - v.slope_2a).abs() < 1e-9);
        }
    }
}

#[test]
fn zero_path_is_inconclusive() {
    let grid = DyadicGrid::new(8).unwrap();
    let zero = Path::new(grid, vec![0.0; grid.len()], None).unwrap();
    let v = classify(&zero, ALPHA, &DiscriminatorConfig::default()).unwrap();
    assert_eq!(v.label, Label::Inconclusive);
}

#[test]
fn rejects_alpha_outside_open_interval() {
    let grid = DyadicGrid::new(8).unwrap();
    let path = sample_ggbm(BETA, 0.9, grid, &mut RngStream::new(1, 0)).unwrap();
    for alpha in [0.9, 1.0, 2.0] {
        assert!(classify(&path, alpha, &DiscriminatorConfig::default()).is_err());
    }
    assert!(confusion_experiment(1.0, 2.0, &setup(2, 8, 1)).is_err());
    let bad = DiscriminatorConfig {
        eps_stable: 0.3,
        eps_trend: 0.2,
        ..DiscriminatorConfig::default()
    };
    assert!(bad.validate().is_err());
}

#[test]
fn confusion_matrix_is_deterministic_and_thread_invariant() {
    let a = confusion_experiment(BETA, ALPHA, &setup(8, 10, 1)).unwrap();
    let b = confusion_experiment(BETA, ALPHA, &setup(8, 10, 4)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.total(), 16);
    let (mut ca, mut cb) = (Vec::new(), Vec::new());
    a.write_csv(&mut ca).unwrap();
    b.write_csv(&mut cb).unwrap();
    assert_eq!(ca, cb);
    let text = String::from_utf8(ca).unwrap();
    assert_eq!(text.lines().next(), Some("replica,true_class,label,slope_2,slope_2a"));
    assert_eq!(text.lines().count(), 17);
}
