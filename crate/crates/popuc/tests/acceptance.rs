//! Acceptance suite: one test per criterion, each printing a pass line and
//! enforcing its stated tolerance and runtime budget.
//!
//! Run with `cargo test -p popuc --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use popuc::circle::CirclePoint;
use popuc::cmv;
use popuc::harness::{
    check_schur_shift, check_section_2, check_thm_3_4, classify_thm_1_4, corollary_beta_sequence,
    random_instance, verify_theorem, SectionTwoProp, TheoremId, Thm14Case, Thm14Classification,
    TrialConfig,
};
use popuc::linalg::{self, CVector};
use popuc::rankone::{
    perturb, radial_boundary_value, schur_function, spectral_measure, spiral_grid, unitary_eigs,
    RankOnePair, SchurConvention, SpectralMeasure, UnitaryMatrix,
};
use popuc::szego::{popuc_first, BoundaryCoefficient, MonicPoly, VerblunskyWord};

fn z(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn budget(name: &str, elapsed: Duration, limit: Duration) {
    assert!(
        elapsed <= limit,
        "{name} exceeded its runtime budget: {elapsed:?} > {limit:?}"
    );
}

#[test]
fn criterion_1_power_family_anchor() {
    let start = Instant::now();
    let lambda = Complex64::from_polar(1.0, 0.3);
    let word = VerblunskyWord::new(vec![z(0.0, 0.0); 49]).unwrap();
    let mut worst_coeff: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    for n in 1..=50usize {
        let beta = BoundaryCoefficient::from_complex(lambda.conj().powu(n as u32)).unwrap();
        let p = popuc_first(&word, &beta, n).unwrap();
        let mut expected = vec![z(0.0, 0.0); n + 1];
        expected[0] = -lambda.powu(n as u32);
        expected[n] = z(1.0, 0.0);
        let reference = MonicPoly::monic(expected).unwrap();
        worst_coeff = worst_coeff.max(p.max_coefficient_distance(&reference));
        worst_residual = worst_residual.max(p.eval(lambda).norm());
    }
    assert!(worst_coeff <= 1e-12, "coefficient error {worst_coeff:e}");
    assert!(worst_residual <= 1e-10, "zero residual {worst_residual:e}");
    let elapsed = start.elapsed();
    budget("criterion 1", elapsed, Duration::from_secs(1));
    println!(
        "ACCEPTANCE 1 (power-family anchor): PASS (coeff {worst_coeff:.2e}, residual {worst_residual:.2e}, {elapsed:?})"
    );
}

#[test]
fn criterion_2_char_poly_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let mut worst: f64 = 0.0;
    for trial in 0..200 {
        let n = 1 + rng.gen_range(0..30usize);
        let word = VerblunskyWord::new(
            (0..n - 1)
                .map(|_| {
                    Complex64::from_polar(
                        0.95 * rng.gen::<f64>().sqrt(),
                        std::f64::consts::TAU * rng.gen::<f64>(),
                    )
                })
                .collect(),
        )
        .unwrap();
        let beta = BoundaryCoefficient::from_angle(std::f64::consts::TAU * rng.gen::<f64>());
        let c = cmv::build(&word, &beta).unwrap();
        let direct = popuc_first(&word, &beta, n).unwrap();
        let dist = c.char_poly().max_coefficient_distance(&direct);
        assert!(dist <= 1e-8, "trial {trial}, n = {n}: distance {dist:e}");
        worst = worst.max(dist);
    }
    let elapsed = start.elapsed();
    budget("criterion 2", elapsed, Duration::from_secs(30));
    println!(
        "ACCEPTANCE 2 (characteristic polynomial identity, 200 trials): PASS (worst {worst:.2e}, {elapsed:?})"
    );
}

#[test]
fn criterion_3_interlacing_suites() {
    let start = Instant::now();
    let cfg = TrialConfig {
        seed: 3,
        trials: 500,
        n_min: 1,
        n_max: 20,
        alpha_radius_max: 0.95,
    };
    for id in [TheoremId::T1_2, TheoremId::T1_3] {
        let report = verify_theorem(id, &cfg).unwrap();
        assert!(
            report.passed(),
            "{}: {:?}",
            id.label(),
            report.failures.first()
        );
        assert_eq!(
            report.trials + report.skipped.len() as usize,
            500,
            "{} trial accounting",
            id.label()
        );
        println!("  {}", report.summary());
    }
    let elapsed = start.elapsed();
    budget("criterion 3", elapsed, Duration::from_secs(60));
    println!("ACCEPTANCE 3 (interlacing suites 1.2 and 1.3, 500 trials each): PASS ({elapsed:?})");
}

#[test]
fn criterion_4_consecutive_degrees_and_decoupled_value() {
    let start = Instant::now();

    // 500 random instances: all classify as the no-common-zero case and pass
    let cfg = TrialConfig {
        seed: 4,
        trials: 1,
        n_min: 1,
        n_max: 19,
        alpha_radius_max: 0.95,
    };
    let mut classified = 0usize;
    let mut trial = 0u64;
    while classified < 500 {
        assert!(trial < 550, "too many resamples in the random suite");
        let instance = random_instance(&cfg, trial);
        trial += 1;
        let n = instance.n;
        match classify_thm_1_4(&instance.word, &instance.betas[0], &instance.betas[1], n).unwrap()
        {
            Thm14Classification::Resample { .. } => continue,
            Thm14Classification::Classified(o) => {
                assert_eq!(
                    o.case,
                    Thm14Case::Disjoint,
                    "random instance {trial} produced a common zero"
                );
                assert!(o.pass, "trial {trial}: {:?}", o.witness);
                classified += 1;
            }
        }
    }

    // 50 constructed common-zero instances: the one-common case, with the
    // decoupled value within 1e−8 of the designed common zero
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    for k in 0..50 {
        let n = 2 + (k % 11);
        let lambda = CirclePoint::from_angle(std::f64::consts::TAU * rng.gen::<f64>());
        let word = VerblunskyWord::new(
            (0..n + 1)
                .map(|_| {
                    Complex64::from_polar(
                        0.9 * rng.gen::<f64>().sqrt(),
                        std::f64::consts::TAU * rng.gen::<f64>(),
                    )
                })
                .collect(),
        )
        .unwrap();
        let betas = corollary_beta_sequence(&lambda, &word, n + 2).unwrap();
        match classify_thm_1_4(&word, &betas[n - 1], &betas[n], n).unwrap() {
            Thm14Classification::Classified(o) => {
                assert_eq!(o.case, Thm14Case::OneCommon, "constructed instance {k}");
                assert!(o.pass, "constructed instance {k}: {:?}", o.witness);
                assert!(
                    o.lambda.dist(&lambda) <= 1e-8,
                    "constructed instance {k}: decoupled value {:e} from the common zero",
                    o.lambda.dist(&lambda)
                );
            }
            Thm14Classification::Resample { reason } => {
                panic!("constructed instance {k} resampled: {reason}")
            }
        }
    }

    // Formula certification on the power family: the derived decoupled value
    // matches the common zero; the alternate closed form (second boundary
    // factor conjugated, coefficient index shifted up by one) does not,
    // whenever λ^{2n} ≠ 1.
    let lambda = CirclePoint::from_angle(0.3);
    for n in 2..=10usize {
        let word = VerblunskyWord::new(vec![z(0.0, 0.0); n + 1]).unwrap();
        let beta_n =
            BoundaryCoefficient::from_complex(lambda.value().conj().powu(n as u32)).unwrap();
        let beta_next =
            BoundaryCoefficient::from_complex(lambda.value().conj().powu(n as u32 + 1)).unwrap();
        match classify_thm_1_4(&word, &beta_n, &beta_next, n).unwrap() {
            Thm14Classification::Classified(o) => {
                assert_eq!(o.case, Thm14Case::OneCommon);
                assert!(o.pass);
                assert!(o.lambda.dist(&lambda) <= 1e-8, "derived value must pass");
            }
            Thm14Classification::Resample { reason } => panic!("unexpected resample: {reason}"),
        }
        let alpha_at_n = word.get(n).unwrap();
        let bn = beta_n.complex();
        let rejected = beta_next.complex().conj() * bn.conj() * (bn * alpha_at_n - z(1.0, 0.0))
            / (bn.conj() * alpha_at_n.conj() - z(1.0, 0.0));
        assert!(
            (lambda.value().powu(2 * n as u32) - z(1.0, 0.0)).norm() > 1e-8,
            "foil needs λ^(2n) ≠ 1"
        );
        assert!(
            (rejected - lambda.value()).norm() > 1e-8,
            "n = {n}: the rejected closed form must fail the common-zero test"
        );
    }

    let elapsed = start.elapsed();
    budget("criterion 4", elapsed, Duration::from_secs(60));
    println!(
        "ACCEPTANCE 4 (consecutive degrees: 500 random disjoint + 50 constructed common-zero + formula certification): PASS ({elapsed:?})"
    );
}

#[test]
fn criterion_5_refinement_suite() {
    let start = Instant::now();
    // exact roots-of-unity cases first
    let one = BoundaryCoefficient::from_angle(0.0);
    for (n, m) in [(2usize, 3usize), (2, 8), (3, 7), (5, 15)] {
        let word = VerblunskyWord::new(vec![z(0.0, 0.0); m - 1]).unwrap();
        let report = check_thm_3_4(&word, &one, &one, n, m).unwrap();
        assert!(report.passed(), "roots of unity n = {n}, m = {m}");
    }
    let cfg = TrialConfig {
        seed: 5,
        trials: 200,
        n_min: 1,
        n_max: 15,
        alpha_radius_max: 0.95,
    };
    let report = verify_theorem(TheoremId::T3_4, &cfg).unwrap();
    assert!(report.passed(), "{:?}", report.failures.first());
    assert_eq!(report.trials + report.skipped.len(), 200);
    println!("  {}", report.summary());
    let elapsed = start.elapsed();
    budget("criterion 5", elapsed, Duration::from_secs(30));
    println!("ACCEPTANCE 5 (refinement across degrees, 200 trials + exact cases): PASS ({elapsed:?})");
}

#[test]
fn criterion_6_rank_one_suite() {
    let start = Instant::now();

    let shift_cfg = TrialConfig {
        seed: 6,
        trials: 100,
        ..TrialConfig::default()
    };
    let shift = check_schur_shift(&shift_cfg).unwrap();
    assert!(shift.passed(), "{:?}", shift.failures.first());
    assert!(shift.max_slack <= 1e-8, "shift slack {:e}", shift.max_slack);
    println!("  shift rule: {}", shift.summary());

    for (prop, trials) in [
        (SectionTwoProp::CyclicInterlace, 200usize),
        (SectionTwoProp::GapBound, 200),
        (SectionTwoProp::DirectSumPersistence, 50),
    ] {
        let cfg = TrialConfig {
            seed: 6,
            trials,
            ..TrialConfig::default()
        };
        let report = check_section_2(&[prop], &cfg).unwrap();
        assert!(
            report.passed(),
            "{}: {:?}",
            prop.label(),
            report.failures.first()
        );
        assert_eq!(report.trials + report.skipped.len(), trials, "{}", prop.label());
        println!("  {}: {}", prop.label(), report.summary());
    }

    let elapsed = start.elapsed();
    budget("criterion 6", elapsed, Duration::from_secs(60));
    println!("ACCEPTANCE 6 (rank-one suite: shift 100, cyclic 200, gap 200, direct sums 50): PASS ({elapsed:?})");
}

#[test]
fn criterion_7_schur_convention() {
    let start = Instant::now();
    let m = SpectralMeasure::from_atoms(vec![
        (CirclePoint::from_angle(0.0), 0.5),
        (CirclePoint::from_angle(std::f64::consts::PI), 0.5),
    ])
    .unwrap();

    // under the adopted convention the two-atom measure has f(z) = z
    for w in spiral_grid(20, 0.85) {
        let f = schur_function(&m, w, SchurConvention::Standard).unwrap();
        assert!((f - w).norm() <= 1e-10, "f({w}) = {f}");
    }

    // and z·f(z) = 1 at the atoms, via radial limits
    for &(point, _) in m.atoms() {
        let f = radial_boundary_value(&m, &point, SchurConvention::Standard).unwrap();
        let dev = (point.value() * f - z(1.0, 0.0)).norm();
        assert!(dev <= 1e-6, "atom {point:?}: deviation {dev:e}");

        // the mirrored convention puts the condition elsewhere
        let g = radial_boundary_value(&m, &point, SchurConvention::Mirror).unwrap();
        assert!((point.value() * g - z(1.0, 0.0)).norm() > 0.5);
    }

    let elapsed = start.elapsed();
    budget("criterion 7", elapsed, Duration::from_secs(5));
    println!("ACCEPTANCE 7 (Schur convention disambiguation): PASS ({elapsed:?})");
}

#[test]
fn criterion_8_numerical_hygiene() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
    let mut worst_defect: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    let mut worst_unimodularity: f64 = 0.0;

    for trial in 0..60 {
        let n = 2 + rng.gen_range(0..39usize);
        let word = VerblunskyWord::new(
            (0..n - 1)
                .map(|_| {
                    Complex64::from_polar(
                        0.95 * rng.gen::<f64>().sqrt(),
                        std::f64::consts::TAU * rng.gen::<f64>(),
                    )
                })
                .collect(),
        )
        .unwrap();
        let beta = BoundaryCoefficient::from_angle(std::f64::consts::TAU * rng.gen::<f64>());
        let c = cmv::build(&word, &beta).unwrap();
        worst_defect = worst_defect.max(linalg::unitarity_defect(c.dense()));

        let u = c.unitary().unwrap();
        let eigs = unitary_eigs(&u).unwrap();
        worst_residual = worst_residual.max(eigs.max_residual());
        for p in eigs.values() {
            worst_unimodularity = worst_unimodularity.max((p.value().norm() - 1.0).abs());
        }

        // perturb and split stay within the same budget
        let phi = linalg::random_unit_vector(n, &mut rng);
        let lambda = CirclePoint::from_angle(0.2 + 5.0 * rng.gen::<f64>());
        let v = perturb(&RankOnePair::new(u, phi, lambda).unwrap()).unwrap();
        worst_defect = worst_defect.max(v.defect());
        let eigs_v = unitary_eigs(&v).unwrap();
        worst_residual = worst_residual.max(eigs_v.max_residual());
        for p in eigs_v.values() {
            worst_unimodularity = worst_unimodularity.max((p.value().norm() - 1.0).abs());
        }

        if n >= 2 && trial % 3 == 0 {
            let beta_inner =
                BoundaryCoefficient::from_angle(std::f64::consts::TAU * rng.gen::<f64>());
            let s = cmv::split(&c, &beta_inner).unwrap();
            worst_defect = worst_defect.max(linalg::unitarity_defect(&s.perturbed));
            worst_defect = worst_defect.max(linalg::unitarity_defect(s.inner.dense()));
        }
    }

    assert!(worst_defect <= 1e-10, "unitarity defect {worst_defect:e}");
    assert!(worst_residual <= 1e-10, "eigen residual {worst_residual:e}");
    assert!(
        worst_unimodularity <= 1e-10,
        "eigenvalue modulus defect {worst_unimodularity:e}"
    );
    let elapsed = start.elapsed();
    budget("criterion 8", elapsed, Duration::from_secs(30));
    println!(
        "ACCEPTANCE 8 (numerical hygiene): PASS (defect {worst_defect:.2e}, residual {worst_residual:.2e}, modulus {worst_unimodularity:.2e}, {elapsed:?})"
    );
}

#[test]
fn criterion_9_byte_identical_reports() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_popuc");
    let run = || {
        std::process::Command::new(bin)
            .args([
                "verify",
                "--theorem",
                "1.3",
                "--trials",
                "40",
                "--seed",
                "7",
            ])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "first run failed");
    assert!(second.status.success(), "second run failed");
    assert!(!first.stdout.is_empty());
    assert_eq!(
        first.stdout, second.stdout,
        "verify output must be byte-identical for a fixed seed"
    );
    let elapsed = start.elapsed();
    budget("criterion 9", elapsed, Duration::from_secs(60));
    println!("ACCEPTANCE 9 (byte-identical reports): PASS ({elapsed:?})");
}
