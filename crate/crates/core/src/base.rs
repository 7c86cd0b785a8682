//! Base point sequences `e_0, e_1, ..., e_N` and their prefixes `S_n`.

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::rational::Rational;

/// Ordered sequence of distinct points starting at `e_0 = (0,0)`.
///
/// Operations that reference `e_n` (the delta statement, phi extraction)
/// need the sequence to extend one index beyond the prefix they target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSequence {
    points: Vec<Point>,
}

impl BaseSequence {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        match points.first() {
            Some(p) if p.is_origin() => {}
            Some(_) => return Err(Error::precondition("base sequence must start at (0,0)")),
            None => return Err(Error::precondition("base sequence must be nonempty")),
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(Error::precondition(format!(
                        "base points must be pairwise distinct; e_{i} = e_{j} = {}",
                        points[i]
                    )));
                }
            }
        }
        Ok(BaseSequence { points })
    }

    /// Moment-curve default: `e_i = (i, i^2)` for `0 <= i <= n_max`.
    pub fn moment(n_max: usize) -> Self {
        let points = (0..=n_max as i64)
            .map(|i| Point::from_ints(i, i * i))
            .collect();
        BaseSequence { points }
    }

    /// Small lattice base with a vertical final direction, used by the
    /// worked examples and figure rendering:
    /// `(0,0), (10,0), (10,5), (0,13)`.
    pub fn fig1() -> Self {
        BaseSequence {
            points: vec![
                Point::from_ints(0, 0),
                Point::from_ints(10, 0),
                Point::from_ints(10, 5),
                Point::from_ints(0, 13),
            ],
        }
    }

    /// Look up a preset by name (`moment` extends to `n_max`).
    pub fn preset(name: &str, n_max: usize) -> Result<Self> {
        match name {
            "moment" => Ok(BaseSequence::moment(n_max.max(1))),
            "fig1" => Ok(BaseSequence::fig1()),
            other => Err(Error::precondition(format!(
                "unknown base preset {other:?} (expected `moment` or `fig1`)"
            ))),
        }
    }

    /// Number of points, i.e. one more than the largest valid index.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `e_i`; errors when the sequence is too short.
    pub fn point(&self, i: usize) -> Result<&Point> {
        self.points.get(i).ok_or_else(|| {
            Error::precondition(format!(
                "base sequence has {} points, e_{i} requested",
                self.points.len()
            ))
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// `S_n = {e_0, ..., e_{n-1}}`.
    pub fn prefix_set(&self, n: usize) -> Result<PointSet> {
        if n < 1 || n > self.points.len() {
            return Err(Error::precondition(format!(
                "prefix S_{n} out of range for a base of {} points",
                self.points.len()
            )));
        }
        Ok(PointSet::from_points(self.points[..n].iter().cloned()))
    }

    /// Apply a linear map given by columns `(l(1,0), l(0,1))` to every base
    /// point. Used by the equivariance checks.
    pub fn transform(&self, m: &LinearMap) -> Self {
        BaseSequence {
            points: self.points.iter().map(|p| m.apply(p)).collect(),
        }
    }
}

/// 2x2 rational linear map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl LinearMap {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        LinearMap { a, b, c, d }
    }

    pub fn determinant(&self) -> Rational {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(
            &(&self.a * &p.x) + &(&self.b * &p.y),
            &(&self.c * &p.x) + &(&self.d * &p.y),
        )
    }

    pub fn apply_set(&self, set: &PointSet) -> PointSet {
        set.iter().map(|p| self.apply(p)).collect()
    }
}
