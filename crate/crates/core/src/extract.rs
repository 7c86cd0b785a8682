//! Witness extraction: the inductive argument run as a deterministic
//! algorithm.
//!
//! The recursion mirrors the construction. The base case pigeonholes `k+1`
//! collinear points against `k` colors. The `m = 1` case lifts a
//! one-dimension-lower witness through the closure. The `m > 1` case
//! monochromatizes shift vectors with a supercoloring, recurses on the
//! shifted coloring, and splices the two systems, appending
//! `lambda_m = mu_1 + lambda_{m-1}`.
//!
//! A system for dimension `n` shifts its displacement along `e_{n-1}`, the
//! last point of `S_n`. Every candidate point `a + lambda_i * e_{n-1}` is
//! then the image of `e_0` or of `e_{n-1}` under one of the system's
//! homotheties, so it lies in the constructed set and carries a color. The
//! final pigeonhole therefore completes a monochromatic `S_{n-1}` image to a
//! full monochromatic `S_n` image. With the shift taken along `e_n` instead,
//! the top candidate `a + lambda_m * e_n` escapes the constructed set
//! (already for the constant 2-coloring at n = 3), so no extraction would be
//! possible.
//!
//! Every pigeonhole resolves ties by the lexicographically smallest index
//! pair, making witnesses a pure function of the coloring. Each level
//! re-checks its own output against the independent checker before
//! returning; a failure there is reported as an internal proof error, never
//! silently ignored.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::base::BaseSequence;
use crate::coloring::Coloring;
use crate::construct::Builder;
use crate::error::{Error, Result};
use crate::geometry::{Homothety, Point, PointSet};
use crate::rational::Rational;
use crate::verify::{check_delta_witness, check_phi_witness};

/// A single monochromatic homothetic copy of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub n: usize,
    pub h: Homothety,
}

/// A nested witness family: displacement `a` and scalars
/// `0 = lambda_0 < ... < lambda_m`. Each index pair `i < j` names the
/// homothety `v -> a + lambda_i*e_{n-1} + (lambda_j - lambda_i)*v` whose
/// `S_n` image stays inside the set and whose `S_{n-1}` image is
/// monochromatic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSystem {
    n: usize,
    a: Point,
    lambdas: Vec<Rational>,
}

impl WitnessSystem {
    /// Shape validation only (dimension and at least two scalars); the value
    /// conditions on the lambdas are the checker's business.
    pub fn new(n: usize, a: Point, lambdas: Vec<Rational>) -> Result<Self> {
        if n < 2 {
            return Err(Error::precondition(format!(
                "witness system needs dimension >= 2, got {n}"
            )));
        }
        if lambdas.len() < 2 {
            return Err(Error::precondition(format!(
                "witness system needs at least two scalars, got {}",
                lambdas.len()
            )));
        }
        Ok(WitnessSystem { n, a, lambdas })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn m(&self) -> usize {
        self.lambdas.len() - 1
    }
}

/// The pair homothety of a system:
/// displacement `a + lambda_i * e_{n-1}`, dilation `lambda_j - lambda_i`.
pub fn witness_homothety(
    w: &WitnessSystem,
    i: usize,
    j: usize,
    base: &BaseSequence,
) -> Result<Homothety> {
    if i >= j || j > w.m() {
        return Err(Error::precondition(format!(
            "pair indices must satisfy 0 <= i < j <= {}, got ({i}, {j})",
            w.m()
        )));
    }
    let direction = base.point(w.n - 1)?;
    let shift = direction.scale(&w.lambdas[i]);
    let dilation = &w.lambdas[j] - &w.lambdas[i];
    Homothety::new(w.a.add(&shift), dilation)
}

/// Deterministic witness extraction driver. Lemma checking re-derives the
/// intermediate color equalities the splice step relies on; violations abort
/// with an internal proof error and satisfied checks are counted.
pub struct Extractor<'b> {
    builder: &'b Builder,
    check_lemmas: bool,
    lemma_checks: AtomicU64,
}

impl<'b> Extractor<'b> {
    pub fn new(builder: &'b Builder) -> Self {
        Extractor {
            builder,
            check_lemmas: true,
            lemma_checks: AtomicU64::new(0),
        }
    }

    pub fn with_lemma_checks(builder: &'b Builder, enabled: bool) -> Self {
        Extractor {
            builder,
            check_lemmas: enabled,
            lemma_checks: AtomicU64::new(0),
        }
    }

    /// Number of intermediate color equalities verified so far.
    pub fn lemma_checks(&self) -> u64 {
        self.lemma_checks.load(Ordering::Relaxed)
    }

    /// Pigeonhole on the `k+1` collinear points `i*e_1` of `phi(2,k)`.
    pub fn extract_phi2(&self, k: &BigUint, f: &Coloring) -> Result<Witness> {
        let points = self.builder.phi_2_points(k)?;
        let pair = self.first_equal_pair(f, &points)?.ok_or_else(|| Error::NoRepeat {
            points: points.len(),
            context: format!("{} collinear points against {k} colors", points.len()),
        })?;
        let (i, j) = pair;
        let h = Homothety::new(
            points[i].clone(),
            Rational::from_int((j - i) as i64),
        )?;
        let witness = Witness { n: 2, h };
        let target = PointSet::from_points(points);
        self.confirm_phi(f, &witness, &target)?;
        Ok(witness)
    }

    /// Extract a full witness system from a coloring of `delta(n,k,m)`.
    pub fn extract_delta(
        &self,
        n: usize,
        k: &BigUint,
        m: u64,
        f: &Coloring,
    ) -> Result<WitnessSystem> {
        if n < 3 {
            return Err(Error::precondition(format!(
                "delta extraction needs n >= 3, got {n}"
            )));
        }
        if m < 1 {
            return Err(Error::precondition("delta extraction needs m >= 1"));
        }
        let system = if m == 1 {
            self.extract_delta_base(n, k, f)?
        } else {
            self.extract_delta_step(n, k, m, f)?
        };
        let target = self.builder.delta(n, k, m)?;
        let report = check_delta_witness(f, &system, &target, self.builder.base())?;
        if !report.valid() {
            return Err(Error::InternalProof(format!(
                "delta({n},{k},{m}) system failed self-check: {}",
                report.summary()
            )));
        }
        Ok(system)
    }

    /// Monochromatic `S_n` copy from any k-coloring of `phi(n,k)`.
    pub fn extract_phi(&self, n: usize, k: &BigUint, f: &Coloring) -> Result<Witness> {
        if n == 2 {
            return self.extract_phi2(k, f);
        }
        let m = k.to_u64().ok_or_else(|| Error::ResourceLimit {
            quantity: "system length k of the final pigeonhole",
            needed: k.clone(),
            limit: BigUint::from(u64::MAX),
        })?;
        let system = self.extract_delta(n, k, m, f)?;
        let direction = self.builder.base().point(n - 1)?.clone();
        let candidates: Vec<Point> = system
            .lambdas()
            .iter()
            .map(|l| system.a().add(&direction.scale(l)))
            .collect();
        let pair = self
            .first_equal_pair(f, &candidates)?
            .ok_or_else(|| Error::NoRepeat {
                points: candidates.len(),
                context: format!("{} system points against {k} colors", candidates.len()),
            })?;
        let h = witness_homothety(&system, pair.0, pair.1, self.builder.base())?;
        let witness = Witness { n, h };
        let target = self.builder.phi(n, k)?;
        self.confirm_phi(f, &witness, &target)?;
        Ok(witness)
    }

    /// Lexicographically smallest index pair with equal colors.
    fn first_equal_pair(
        &self,
        f: &Coloring,
        points: &[Point],
    ) -> Result<Option<(usize, usize)>> {
        for i in 0..points.len() {
            let ci = f.color_at(&points[i])?;
            for (offset, q) in points[i + 1..].iter().enumerate() {
                if f.color_at(q)? == ci {
                    return Ok(Some((i, i + 1 + offset)));
                }
            }
        }
        Ok(None)
    }

    /// m = 1: a witness for `phi(n-1,k)` already is a system, because the
    /// closure put its whole `S_n` image into `delta(n,k,1)`.
    fn extract_delta_base(&self, n: usize, k: &BigUint, f: &Coloring) -> Result<WitnessSystem> {
        let phi_prev = self.builder.phi(n - 1, k)?;
        let d1 = self.builder.delta(n, k, 1)?;
        if !phi_prev.is_subset_of(&d1) {
            return Err(Error::InternalProof(format!(
                "phi({},{k}) not contained in delta({n},{k},1)",
                n - 1
            )));
        }
        let restricted = f.restrict(&phi_prev)?;
        let inner = self.extract_phi(n - 1, k, &restricted)?;
        WitnessSystem::new(
            n,
            inner.h.a.clone(),
            vec![Rational::zero(), inner.h.lambda.clone()],
        )
    }

    /// m > 1: monochromatize shifts, recurse on the shifted coloring, splice.
    fn extract_delta_step(
        &self,
        n: usize,
        k: &BigUint,
        m: u64,
        f: &Coloring,
    ) -> Result<WitnessSystem> {
        let d_prev = self.builder.delta(n, k, m - 1)?;
        let big_k = k.pow(d_prev.len() as u32);
        let shift_domain = self.builder.delta(n, &big_k, 1)?;
        let f_super = f.induced_supercoloring(&shift_domain, &d_prev)?;
        let sub = self.extract_delta(n, &big_k, 1, &f_super)?;
        let b = sub.a().clone();
        let mu1 = sub.lambdas()[1].clone();

        if self.check_lemmas {
            self.check_shift_lemma(n, f, &d_prev, &b, &mu1)?;
        }

        let shifted_colors = d_prev
            .iter()
            .map(|w| Ok(f.color_at(&b.add(w))?.clone()))
            .collect::<Result<Vec<_>>>()?;
        let f_b = Coloring::new(d_prev.clone(), shifted_colors, f.arity().clone())?;
        let inner = self.extract_delta(n, k, m - 1, &f_b)?;

        if self.check_lemmas {
            self.check_splice_lemma(n, f, &b, &inner)?;
        }

        let mut lambdas = inner.lambdas().to_vec();
        lambdas.push(&mu1 + inner.lambdas().last().expect("nonempty"));
        WitnessSystem::new(n, b.add(inner.a()), lambdas)
    }

    /// The coloring must not distinguish `b + w` from `b + mu_1*e_l + w` for
    /// any `w` in the previous level and any `l < n-1`; this is what makes
    /// the shift by `b` color-transparent.
    fn check_shift_lemma(
        &self,
        n: usize,
        f: &Coloring,
        d_prev: &PointSet,
        b: &Point,
        mu1: &Rational,
    ) -> Result<()> {
        for l in 0..n - 1 {
            let offset = self.builder.base().point(l)?.scale(mu1);
            for w in d_prev.iter() {
                let plain = b.add(w);
                let shifted = plain.add(&offset);
                if f.color_at(&plain)? != f.color_at(&shifted)? {
                    return Err(Error::InternalProof(format!(
                        "shift lemma violated at l={l}, w={w}: {plain} vs {shifted}"
                    )));
                }
                self.lemma_checks.fetch_add(1, Ordering::Relaxed);
            }
        }
        Ok(())
    }

    /// The spliced system's new top scalar must not change colors along any
    /// base direction `e_l`, `l < n-1`, starting from the inner candidates
    /// `b + a + lambda_i * e_{n-1}`, `i` below the inner top index.
    fn check_splice_lemma(
        &self,
        n: usize,
        f: &Coloring,
        b: &Point,
        inner: &WitnessSystem,
    ) -> Result<()> {
        let direction = self.builder.base().point(n - 1)?;
        let top = inner.lambdas().last().expect("nonempty");
        for i in 0..inner.m() {
            let anchor = b
                .add(inner.a())
                .add(&direction.scale(&inner.lambdas()[i]));
            let gap = top - &inner.lambdas()[i];
            for l in 0..n - 1 {
                let moved = anchor.add(&self.builder.base().point(l)?.scale(&gap));
                if f.color_at(&anchor)? != f.color_at(&moved)? {
                    return Err(Error::InternalProof(format!(
                        "splice lemma violated at i={i}, l={l}: {anchor} vs {moved}"
                    )));
                }
                self.lemma_checks.fetch_add(1, Ordering::Relaxed);
            }
        }
        Ok(())
    }

    fn confirm_phi(&self, f: &Coloring, w: &Witness, target: &PointSet) -> Result<()> {
        let report = check_phi_witness(f, w, target, self.builder.base())?;
        if !report.valid() {
            return Err(Error::InternalProof(format!(
                "phi({},?) witness failed self-check: {}",
                w.n,
                report.summary()
            )));
        }
        Ok(())
    }
}
