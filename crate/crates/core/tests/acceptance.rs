//! Acceptance gate: ten pinned criteria covering the construction laws,
//! exhaustive and statistical extraction correctness, lemma invariants,
//! linear equivariance, and byte determinism.
//!
//! Each test prints one `criterion NN ...: PASS/FAIL` line (visible with
//! `--nocapture`); the runtime caps are pinned as constants next to the
//! goldens and asserted, not just observed. The suite assumes the optimized
//! test profile configured at the workspace root.

use std::collections::HashSet;
use std::panic::AssertUnwindSafe;
use std::process::{Command, Output};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use gallai_core::base::{BaseSequence, LinearMap};
use gallai_core::coloring::{
    enumerate_colorings, random_coloring, Color, Coloring, SplitMix64,
};
use gallai_core::construct::Builder;
use gallai_core::extract::Extractor;
use gallai_core::geometry::{Point, PointSet};
use gallai_core::io::{
    parse_base, parse_coloring, parse_set, parse_sweep_report, parse_witness, write_base,
    write_coloring, write_delta_witness, write_phi_witness, write_set, write_sweep_report,
    WitnessFile,
};
use gallai_core::rational::Rational;
use gallai_core::verify::{
    check_delta_witness, exhaustive_sweep, find_mono_copies, random_sweep, MonoMode, Strategy,
    SweepReport, SweepTarget, SWEEP_BUDGET_COLORINGS,
};

/// Frozen cardinality of the closure of the 65-point segment.
const GOLDEN_CLOSURE_PHI_2_64: usize = 2145;
/// Frozen cardinality of the full Phi(3,2) set on the fig1 base. A
/// union-style estimate 2145+6 = 2151 undercounts the complex sum; the true
/// general bound is 2145*6 and the exact value here is 2278.
const GOLDEN_PHI_3_2: usize = 2278;

const CAP_01: Duration = Duration::from_secs(1);
const CAP_02: Duration = Duration::from_secs(1);
const CAP_03: Duration = Duration::from_secs(10);
const CAP_04: Duration = Duration::from_secs(60);
const CAP_05: Duration = Duration::from_secs(10);
const CAP_06: Duration = Duration::from_secs(10);
const CAP_07: Duration = Duration::from_secs(300);
const CAP_09: Duration = Duration::from_secs(120);

fn criterion(number: u32, name: &str, cap: Option<Duration>, body: impl FnOnce() -> String) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(detail) => {
            if let Some(cap) = cap {
                assert!(
                    elapsed <= cap,
                    "criterion {number} ({name}) ran {elapsed:?}, over the pinned cap {cap:?}"
                );
            }
            println!("criterion {number:02} {name}: PASS ({detail}; {elapsed:.2?})");
        }
        Err(panic) => {
            println!("criterion {number:02} {name}: FAIL ({elapsed:.2?})");
            std::panic::resume_unwind(panic);
        }
    }
}

fn fig1_builder() -> Builder {
    Builder::with_default_budget(BaseSequence::fig1())
}

fn two() -> BigUint {
    BigUint::from(2u32)
}

fn pt(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

#[test]
fn criterion_01_segment_cardinality_law() {
    criterion(1, "segment cardinality", Some(CAP_01), || {
        for base in [BaseSequence::fig1(), BaseSequence::moment(2)] {
            let b = Builder::with_default_budget(base);
            for k in 1u32..=10 {
                assert_eq!(b.phi(2, &BigUint::from(k)).unwrap().len(), k as usize + 1);
            }
        }
        "|Phi(2,k)| = k+1 for k = 1..=10 on two bases".into()
    });
}

#[test]
fn criterion_02_three_point_closure() {
    criterion(2, "closure of the 3-point segment", Some(CAP_02), || {
        let b = fig1_builder();
        let v = b.phi_2(&two()).unwrap();
        let closure = b.e_n_closure(3, &v).unwrap();
        let expect = PointSet::from_points([
            pt(0, 0),
            pt(10, 0),
            pt(10, 5),
            pt(20, 0),
            pt(20, 10),
            pt(20, 5),
        ]);
        assert_eq!(closure, expect);
        assert_eq!(closure.len(), 6);
        "exactly the 6 expected points".into()
    });
}

#[test]
fn criterion_03_homothety_count_and_closure_golden() {
    criterion(3, "65-point segment closure", Some(CAP_03), || {
        let b = fig1_builder();
        let v = b.phi_2(&BigUint::from(64u32)).unwrap();
        let hs = b.enumerate_homotheties(2, &v).unwrap();
        assert_eq!(hs.len(), 2080);
        assert_eq!(hs.len(), 65 * 64 / 2);

        let closure = b.e_n_closure(3, &v).unwrap();
        assert!(closure.len() <= 2145);
        assert_eq!(closure.len(), GOLDEN_CLOSURE_PHI_2_64);

        // independent cross-check from raw arithmetic on the two base
        // vectors: the pair (i < j) contributes the image i*e_1 + (j-i)*e_2
        let e1 = pt(10, 0);
        let e2 = pt(10, 5);
        let mut distinct: HashSet<Point> = (0..=64)
            .map(|i| e1.scale(&Rational::from_int(i)))
            .collect();
        for i in 0..64i64 {
            for j in (i + 1)..=64 {
                distinct.insert(
                    e1.scale(&Rational::from_int(i))
                        .add(&e2.scale(&Rational::from_int(j - i))),
                );
            }
        }
        assert_eq!(distinct.len(), closure.len());
        "2080 homotheties, closure golden 2145 cross-checked by pair enumeration".into()
    });
}

#[test]
fn criterion_04_full_phi_3_2_golden() {
    criterion(4, "full Phi(3,2) construction", Some(CAP_04), || {
        let first = fig1_builder().phi(3, &two()).unwrap();
        let second = fig1_builder().phi(3, &two()).unwrap();
        assert_eq!(*first, *second);
        assert_eq!(write_set(&first), write_set(&second));

        // insertion order cannot matter: rebuilding from reversed points
        // reproduces the same canonical set
        let reshuffled = PointSet::from_points(first.iter().rev().cloned());
        assert_eq!(reshuffled, *first);

        assert_eq!(first.len(), GOLDEN_PHI_3_2);
        // the 2145+6 = 2151 union-style estimate does not hold for a complex
        // sum; the actual value sits between it and the product bound
        assert!(first.len() > 2151 && first.len() <= 2145 * 6);
        "cardinality 2278, deterministic; union-style estimate 2151 undercounts".into()
    });
}

#[test]
fn criterion_05_exhaustive_delta_level() {
    criterion(5, "all 64 two-colorings of Delta(3,2,1)", Some(CAP_05), || {
        let b = fig1_builder();
        let d1 = b.delta(3, &two(), 1).unwrap();
        let extractor = Extractor::new(&b);
        let mut passed = 0u32;
        for f in enumerate_colorings(&d1, 2, SWEEP_BUDGET_COLORINGS).unwrap() {
            let w = extractor.extract_delta(3, &two(), 1, &f).unwrap();
            let report = check_delta_witness(&f, &w, &d1, b.base()).unwrap();
            assert!(report.valid(), "{}", report.summary());
            let copies = find_mono_copies(&d1, &f, 3, MonoMode::Weak, &b).unwrap();
            assert!(!copies.is_empty());
            passed += 1;
        }
        assert_eq!(passed, 64);
        "64/64 systems valid, weak oracle nonempty for every coloring".into()
    });
}

#[test]
fn criterion_06_exhaustive_base_case() {
    criterion(6, "all colorings of Phi(2,k), k=2,3,4", Some(CAP_06), || {
        let b = fig1_builder();
        for (k, expected_total) in [(2u64, 8u64), (3, 81), (4, 1024)] {
            let report =
                exhaustive_sweep(&b, SweepTarget::Phi { n: 2, k }, Strategy::Both).unwrap();
            assert_eq!(report.total, expected_total);
            assert_eq!(report.passed, expected_total);
            assert_eq!(report.first_failure, None);
        }
        "8 + 81 + 1024 colorings, witness valid and in the strong oracle list".into()
    });
}

#[test]
fn criterion_07_random_phi_3_2() {
    criterion(7, "1000 random two-colorings of Phi(3,2)", Some(CAP_07), || {
        // the universal claim quantifies over 2^2278 colorings, which is not
        // reproducible; this seeded statistical suite substitutes for it
        let b = fig1_builder();
        let report = random_sweep(&b, SweepTarget::Phi { n: 3, k: 2 }, 1000, 0).unwrap();
        assert_eq!(report.total, 1000);
        assert_eq!(report.passed, 1000);
        assert_eq!(report.first_failure, None);
        "1000/1000 extracted copies validated by the independent checker".into()
    });
}

#[test]
fn criterion_08_lemma_invariants() {
    criterion(8, "coloring-shift and scalar-splice invariants", None, || {
        // same extraction workloads as criteria 5 and 7, with the lemma
        // assertions enabled (they are on by default there too, so any
        // violation would already have failed those criteria); here the
        // counter additionally proves the checks really execute
        let b = fig1_builder();
        let extractor = Extractor::new(&b);
        let d1 = b.delta(3, &two(), 1).unwrap();
        for f in enumerate_colorings(&d1, 2, SWEEP_BUDGET_COLORINGS).unwrap() {
            extractor.extract_delta(3, &two(), 1, &f).unwrap();
        }
        let phi32 = b.phi(3, &two()).unwrap();
        for seed in 0..200 {
            let f = random_coloring(Arc::clone(&phi32), 2, seed).unwrap();
            extractor.extract_phi(3, &two(), &f).unwrap();
        }
        let checks = extractor.lemma_checks();
        assert!(checks > 0);
        format!("{checks} lemma checks executed, zero violations")
    });
}

fn random_invertible_map(rng: &mut SplitMix64) -> LinearMap {
    loop {
        let mut entry = || Rational::from_int((rng.next_u64() % 7) as i64 - 3);
        let map = LinearMap::new(entry(), entry(), entry(), entry());
        if map.is_invertible() {
            return map;
        }
    }
}

/// Recolor the transformed domain so that `L(p)` gets `f(p)`.
fn transport_coloring(f: &Coloring, map: &LinearMap, domain_t: &Arc<PointSet>) -> Coloring {
    let mut colors = vec![Color::Plain(0); domain_t.len()];
    for p in f.domain().iter() {
        let pos = domain_t
            .position(&map.apply(p))
            .expect("transformed domain is the image of the original");
        colors[pos] = f.color_at(p).unwrap().clone();
    }
    Coloring::new(Arc::clone(domain_t), colors, f.arity().clone()).unwrap()
}

#[test]
fn criterion_09_linear_equivariance() {
    criterion(9, "equivariance under invertible linear maps", Some(CAP_09), || {
        let b = fig1_builder();
        let d1 = b.delta(3, &two(), 1).unwrap();
        let phi32 = b.phi(3, &two()).unwrap();
        let extractor = Extractor::new(&b);
        let mut rng = SplitMix64::new(0xC9);
        for trial in 0..20u64 {
            let map = random_invertible_map(&mut rng);
            let bt = Builder::with_default_budget(BaseSequence::fig1().transform(&map));
            let extractor_t = Extractor::new(&bt);

            let d1_t = bt.delta(3, &two(), 1).unwrap();
            assert_eq!(*d1_t, map.apply_set(&d1));
            let phi_t = bt.phi(3, &two()).unwrap();
            assert_eq!(*phi_t, map.apply_set(&phi32));

            let f = random_coloring(Arc::clone(&phi32), 2, 1000 + trial).unwrap();
            let f_t = transport_coloring(&f, &map, &phi_t);

            let w = extractor.extract_phi(3, &two(), &f).unwrap();
            let w_t = extractor_t.extract_phi(3, &two(), &f_t).unwrap();
            assert_eq!(w_t.h.lambda, w.h.lambda);
            assert_eq!(w_t.h.a, map.apply(&w.h.a));

            let s = extractor.extract_delta(3, &two(), 2, &f).unwrap();
            let s_t = extractor_t.extract_delta(3, &two(), 2, &f_t).unwrap();
            assert_eq!(s_t.lambdas(), s.lambdas());
            assert_eq!(s_t.a(), &map.apply(s.a()));
        }
        "20 maps: sets transported pointwise, scalar lists identical".into()
    });
}

fn gallai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(args)
        .env_remove("GALLAI_BUDGET_POINTS")
        .output()
        .expect("binary runs")
}

fn ok_stdout(args: &[&str]) -> Vec<u8> {
    let out = gallai(args);
    assert!(
        out.status.success(),
        "gallai {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

#[test]
fn criterion_10_determinism_and_formats() {
    criterion(10, "byte determinism and format round-trips", None, || {
        // build: repeated runs and different worker counts agree bytewise
        let build = ["build", "--n", "3", "--k", "2", "--base", "fig1"];
        let one = ok_stdout(&[&build[..], &["--threads", "1"]].concat());
        assert_eq!(one, ok_stdout(&[&build[..], &["--threads", "1"]].concat()));
        assert_eq!(one, ok_stdout(&[&build[..], &["--threads", "4"]].concat()));

        // extract: same invariance, driven through files
        let dir = tempfile::tempdir().unwrap();
        let d1_path = dir.path().join("d1.txt");
        let coloring_path = dir.path().join("f.txt");
        let b = fig1_builder();
        let d1 = b.delta(3, &two(), 1).unwrap();
        std::fs::write(&d1_path, write_set(&d1)).unwrap();
        let f = random_coloring(Arc::clone(&d1), 2, 7).unwrap();
        std::fs::write(&coloring_path, write_coloring(&f).unwrap()).unwrap();
        let extract = [
            "extract",
            "--n",
            "3",
            "--k",
            "2",
            "--m",
            "1",
            "--base",
            "fig1",
            "--coloring",
            coloring_path.to_str().unwrap(),
        ];
        let witness = ok_stdout(&[&extract[..], &["--threads", "1"]].concat());
        assert_eq!(
            witness,
            ok_stdout(&[&extract[..], &["--threads", "1"]].concat())
        );
        assert_eq!(
            witness,
            ok_stdout(&[&extract[..], &["--threads", "4"]].concat())
        );

        // sweep: report bytes identical across worker counts
        let sweep = [
            "sweep",
            "--n",
            "3",
            "--k",
            "2",
            "--m",
            "1",
            "--exhaustive",
            "--strategy",
            "both",
            "--base",
            "fig1",
        ];
        let report = ok_stdout(&[&sweep[..], &["--threads", "1"]].concat());
        assert_eq!(report, ok_stdout(&[&sweep[..], &["--threads", "4"]].concat()));
        assert_eq!(
            String::from_utf8(report).unwrap(),
            "gallai-sweep v1\ntotal 64\npassed 64\nfirst_failure none\n"
        );

        // every format round-trips through its parser
        assert_eq!(parse_set(&write_set(&d1)).unwrap(), *d1);
        let base = BaseSequence::fig1();
        assert_eq!(parse_base(&write_base(&base)).unwrap(), base);
        let f_text = write_coloring(&f).unwrap();
        assert_eq!(
            write_coloring(&parse_coloring(&f_text).unwrap()).unwrap(),
            f_text
        );
        let parsed = parse_witness(std::str::from_utf8(&witness).unwrap()).unwrap();
        match &parsed {
            WitnessFile::Delta(w) => {
                assert_eq!(write_delta_witness(w).as_bytes(), &witness[..]);
            }
            WitnessFile::Phi(_) => panic!("expected a scalar system"),
        }
        let phi_w = gallai_core::extract::Witness {
            n: 3,
            h: gallai_core::geometry::Homothety::new(pt(13, 146), Rational::from_int(3))
                .unwrap(),
        };
        assert_eq!(
            parse_witness(&write_phi_witness(&phi_w)).unwrap(),
            WitnessFile::Phi(phi_w)
        );
        let sr = SweepReport {
            total: 64,
            passed: 64,
            first_failure: None,
            elapsed: Duration::ZERO,
        };
        assert_eq!(parse_sweep_report(&write_sweep_report(&sr)).unwrap(), sr);
        "build/extract/sweep stable across runs and 1 vs 4 workers; formats round-trip".into()
    });
}
