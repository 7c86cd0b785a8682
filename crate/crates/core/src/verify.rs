//! Independent validity checking and brute-force sweeps.
//!
//! The checkers spell out the witness conditions literally: dilation
//! positivity, image containment, and monochromaticity, point by point. The
//! copy finder rediscovers monochromatic images from raw point pairs and
//! shares only the geometry layer with extraction, so agreement between the
//! two is meaningful evidence. Sweep drivers quantify over colorings,
//! exhaustively where the count is sane and by seeded sampling otherwise.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::base::BaseSequence;
use crate::coloring::{coloring_count, nth_coloring, random_coloring, Coloring};
use crate::construct::Builder;
use crate::error::{Error, Result};
use crate::extract::{witness_homothety, Extractor, Witness, WitnessSystem};
use crate::geometry::{Homothety, Point, PointSet};
use crate::rational::Rational;

/// Largest coloring space an exhaustive sweep will walk.
pub const SWEEP_BUDGET_COLORINGS: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    Containment,
    Monochromaticity,
    Monotonicity,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self {
            Violation::Containment => "containment",
            Violation::Monochromaticity => "monochromaticity",
            Violation::Monotonicity => "monotonicity",
        };
        f.write_str(tag)
    }
}

/// One failed condition: which pair of system indices (when applicable),
/// which point (when applicable), and what was violated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub pair: Option<(usize, usize)>,
    pub point: Option<Point>,
    pub violation: Violation,
}

impl std::fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.violation)?;
        if let Some((i, j)) = self.pair {
            write!(f, " at pair ({i},{j})")?;
        }
        if let Some(p) = &self.point {
            write!(f, " at {p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    failures: Vec<CheckFailure>,
}

impl CheckReport {
    pub fn valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[CheckFailure] {
        &self.failures
    }

    pub fn summary(&self) -> String {
        if self.failures.is_empty() {
            "valid".to_string()
        } else {
            self.failures
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        }
    }
}

/// Does `w.h` map `S_n` into `target` monochromatically, with positive
/// dilation? Errors with MissingPoint when an image point is in the target
/// but the coloring does not cover it.
pub fn check_phi_witness(
    f: &Coloring,
    w: &Witness,
    target: &PointSet,
    base: &BaseSequence,
) -> Result<CheckReport> {
    let mut failures = Vec::new();
    if !w.h.lambda.is_positive() {
        failures.push(CheckFailure {
            pair: None,
            point: None,
            violation: Violation::Monotonicity,
        });
    }
    let mut colors = Vec::new();
    for i in 0..w.n {
        let image = w.h.apply(base.point(i)?);
        if target.contains(&image) {
            let color = f.color_at(&image)?.clone();
            colors.push((image, color));
        } else {
            failures.push(CheckFailure {
                pair: None,
                point: Some(image),
                violation: Violation::Containment,
            });
        }
    }
    if let Some((_, first)) = colors.first() {
        for (point, color) in &colors[1..] {
            if color != first {
                failures.push(CheckFailure {
                    pair: None,
                    point: Some(point.clone()),
                    violation: Violation::Monochromaticity,
                });
            }
        }
    }
    Ok(CheckReport { failures })
}

/// Does every pair homothety of `w` map `S_n` into `delta_set` with a
/// monochromatic `S_{n-1}` image, over strictly increasing scalars from 0?
pub fn check_delta_witness(
    f: &Coloring,
    w: &WitnessSystem,
    delta_set: &PointSet,
    base: &BaseSequence,
) -> Result<CheckReport> {
    let mut failures = Vec::new();
    let lambdas = w.lambdas();
    if !lambdas[0].is_zero() {
        failures.push(CheckFailure {
            pair: Some((0, 0)),
            point: None,
            violation: Violation::Monotonicity,
        });
    }
    for i in 1..lambdas.len() {
        if lambdas[i - 1] >= lambdas[i] {
            failures.push(CheckFailure {
                pair: Some((i - 1, i)),
                point: None,
                violation: Violation::Monotonicity,
            });
        }
    }
    // a broken scalar ladder can make pair homotheties ill-formed, so the
    // pointwise conditions are only judged once it holds
    if !failures.is_empty() {
        return Ok(CheckReport { failures });
    }
    let n = w.n();
    for i in 0..=w.m() {
        for j in i + 1..=w.m() {
            let h = witness_homothety(w, i, j, base)?;
            let mut colors = Vec::new();
            for idx in 0..n {
                let image = h.apply(base.point(idx)?);
                if !delta_set.contains(&image) {
                    failures.push(CheckFailure {
                        pair: Some((i, j)),
                        point: Some(image.clone()),
                        violation: Violation::Containment,
                    });
                }
                if idx < n - 1 && delta_set.contains(&image) {
                    let color = f.color_at(&image)?.clone();
                    colors.push((image, color));
                }
            }
            if let Some((_, first)) = colors.first() {
                for (point, color) in &colors[1..] {
                    if color != first {
                        failures.push(CheckFailure {
                            pair: Some((i, j)),
                            point: Some(point.clone()),
                            violation: Violation::Monochromaticity,
                        });
                    }
                }
            }
        }
    }
    Ok(CheckReport { failures })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonoMode {
    /// All of `h(S_n)` one color.
    Strong,
    /// `h(S_n)` inside the set, only `h(S_{n-1})` one color.
    Weak,
}

/// Every positive-dilation homothety with `h(S_n)` inside `v` whose image is
/// monochromatic in the requested mode, canonically sorted. Discovers copies
/// from raw point pairs; shares nothing with the extraction recursion.
pub fn find_mono_copies(
    v: &PointSet,
    f: &Coloring,
    n: usize,
    mode: MonoMode,
    builder: &Builder,
) -> Result<Vec<Homothety>> {
    let prefix = builder.base().prefix_set(n)?;
    let mono_len = match mode {
        MonoMode::Strong => n,
        MonoMode::Weak => n - 1,
    };
    let mut out = Vec::new();
    for h in builder.enumerate_homotheties(n, v)? {
        if !h.image(&prefix).is_subset_of(v) {
            continue;
        }
        let mut mono = true;
        let mut first = None;
        for idx in 0..mono_len {
            let c = f.color_at(&h.apply(builder.base().point(idx)?))?.clone();
            match &first {
                None => first = Some(c),
                Some(f0) => {
                    if &c != f0 {
                        mono = false;
                        break;
                    }
                }
            }
        }
        if mono {
            out.push(h);
        }
    }
    Ok(out)
}

/// Which constructed family a sweep quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepTarget {
    Phi { n: usize, k: u64 },
    Delta { n: usize, k: u64, m: u64 },
}

impl SweepTarget {
    fn instantiate(&self, builder: &Builder) -> Result<(Arc<PointSet>, u64)> {
        match *self {
            SweepTarget::Phi { n, k } => {
                Ok((builder.phi(n, &BigUint::from(k))?, k))
            }
            SweepTarget::Delta { n, k, m } => {
                Ok((builder.delta(n, &BigUint::from(k), m)?, k))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Extract a witness and validate it with the checker.
    Extractor,
    /// Require the brute-force copy list to be nonempty.
    Oracle,
    /// Both, and the extracted witness must appear in the oracle's list.
    Both,
}

/// Outcome of quantifying over colorings. `first_failure` is a coloring
/// index for exhaustive sweeps and a seed for random sweeps. Equality
/// ignores `elapsed`.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub total: u64,
    pub passed: u64,
    pub first_failure: Option<u64>,
    pub elapsed: Duration,
}

impl PartialEq for SweepReport {
    fn eq(&self, other: &Self) -> bool {
        self.total == other.total
            && self.passed == other.passed
            && self.first_failure == other.first_failure
    }
}

impl Eq for SweepReport {}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

fn merge_outcomes(
    a: (u64, Option<u64>),
    b: (u64, Option<u64>),
) -> (u64, Option<u64>) {
    let first = match (a.1, b.1) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    (a.0 + b.0, first)
}

fn run_strategy(
    builder: &Builder,
    extractor: &Extractor<'_>,
    target: SweepTarget,
    strategy: Strategy,
    v: &Arc<PointSet>,
    f: &Coloring,
) -> bool {
    // any extraction or checking error counts as a failed coloring; the
    // report carries the index/seed so the case can be replayed directly
    let attempt = || -> Result<bool> {
        match target {
            SweepTarget::Phi { n, k } => {
                let kk = BigUint::from(k);
                let extracted = match strategy {
                    Strategy::Extractor | Strategy::Both => {
                        let w = extractor.extract_phi(n, &kk, f)?;
                        if !check_phi_witness(f, &w, v, builder.base())?.valid() {
                            return Ok(false);
                        }
                        Some(w)
                    }
                    Strategy::Oracle => None,
                };
                if matches!(strategy, Strategy::Oracle | Strategy::Both) {
                    let copies = find_mono_copies(v, f, n, MonoMode::Strong, builder)?;
                    if copies.is_empty() {
                        return Ok(false);
                    }
                    if let Some(w) = extracted {
                        if copies.binary_search(&w.h).is_err() {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            SweepTarget::Delta { n, k, m } => {
                let kk = BigUint::from(k);
                let extracted = match strategy {
                    Strategy::Extractor | Strategy::Both => {
                        let w = extractor.extract_delta(n, &kk, m, f)?;
                        if !check_delta_witness(f, &w, v, builder.base())?.valid() {
                            return Ok(false);
                        }
                        Some(w)
                    }
                    Strategy::Oracle => None,
                };
                if matches!(strategy, Strategy::Oracle | Strategy::Both) {
                    let copies = find_mono_copies(v, f, n, MonoMode::Weak, builder)?;
                    if copies.is_empty() {
                        return Ok(false);
                    }
                    if let Some(w) = extracted {
                        for i in 0..=w.m() {
                            for j in i + 1..=w.m() {
                                let h = witness_homothety(&w, i, j, builder.base())?;
                                if copies.binary_search(&h).is_err() {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                }
                Ok(true)
            }
        }
    };
    attempt().unwrap_or(false)
}

/// Run the strategy against every coloring of the target set.
pub fn exhaustive_sweep(
    builder: &Builder,
    target: SweepTarget,
    strategy: Strategy,
) -> Result<SweepReport> {
    let start = Instant::now();
    let (v, k) = target.instantiate(builder)?;
    let total = coloring_count(&v, k, SWEEP_BUDGET_COLORINGS)?;
    let extractor = Extractor::new(builder);
    let (passed, first_failure) = (0..total)
        .into_par_iter()
        .map(|idx| -> Result<(u64, Option<u64>)> {
            let f = nth_coloring(&v, k, idx)?;
            if run_strategy(builder, &extractor, target, strategy, &v, &f) {
                Ok((1, None))
            } else {
                Ok((0, Some(idx)))
            }
        })
        .try_reduce(|| (0, None), |a, b| Ok(merge_outcomes(a, b)))?;
    Ok(SweepReport {
        total,
        passed,
        first_failure,
        elapsed: start.elapsed(),
    })
}

/// Run extraction plus checking against seeded random colorings
/// `seed0, seed0+1, ...`; a failure records the offending seed.
pub fn random_sweep(
    builder: &Builder,
    target: SweepTarget,
    trials: u64,
    seed0: u64,
) -> Result<SweepReport> {
    if trials < 1 {
        return Err(Error::precondition("random sweep needs at least one trial"));
    }
    let start = Instant::now();
    let (v, k) = target.instantiate(builder)?;
    let extractor = Extractor::new(builder);
    let (passed, first_bad_trial) = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<(u64, Option<u64>)> {
            let f = random_coloring(Arc::clone(&v), k, seed0.wrapping_add(t))?;
            if run_strategy(builder, &extractor, target, Strategy::Extractor, &v, &f) {
                Ok((1, None))
            } else {
                Ok((0, Some(t)))
            }
        })
        .try_reduce(|| (0, None), |a, b| Ok(merge_outcomes(a, b)))?;
    Ok(SweepReport {
        total: trials,
        passed,
        first_failure: first_bad_trial.map(|t| seed0.wrapping_add(t)),
        elapsed: start.elapsed(),
    })
}

/// A trivial all-pass system for a single homothety, used to compare the
/// two checkers on the same witness.
pub fn system_of_phi_witness(w: &Witness) -> Result<WitnessSystem> {
    WitnessSystem::new(
        w.n,
        w.h.a.clone(),
        vec![Rational::zero(), w.h.lambda.clone()],
    )
}
