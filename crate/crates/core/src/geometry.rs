//! Exact planar geometry: points, canonically ordered point sets, homotheties.
//!
//! A homothety is the map `v -> a + lambda*v` with displacement `a` and
//! dilation `lambda >= 0`. Point sets are deduplicated under exact rational
//! equality and iterate in lexicographic `(x, y)` order, which makes every
//! downstream serialization byte-deterministic.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(Rational::zero(), Rational::zero())
    }

    /// Convenience for integer lattice points.
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Rational::from_int(x), Rational::from_int(y))
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn scale(&self, factor: &Rational) -> Point {
        Point::new(factor * &self.x, factor * &self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Finite set of points, deduplicated, iterable in canonical order.
///
/// Carries a hash index so membership tests and point-to-index lookups are
/// O(1); the index is derived state and never serialized.
#[derive(Clone)]
pub struct PointSet {
    points: Vec<Point>,
    index: HashMap<Point, u32>,
}

impl PointSet {
    pub fn empty() -> Self {
        PointSet {
            points: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Build from arbitrary input order; sorts and deduplicates.
    pub fn from_points(points: impl IntoIterator<Item = Point>) -> Self {
        let mut points: Vec<Point> = points.into_iter().collect();
        points.sort();
        points.dedup();
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        PointSet { points, index }
    }

    pub fn singleton(p: Point) -> Self {
        PointSet::from_points([p])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    /// Canonical index of `p`, if present.
    pub fn position(&self, p: &Point) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    /// Points in canonical lexicographic order.
    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn as_slice(&self) -> &[Point] {
        &self.points
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet::from_points(self.iter().chain(other.iter()).cloned())
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for PointSet {}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points.iter()).finish()
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        PointSet::from_points(iter)
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// The map `v -> a + lambda*v`. `lambda` is always nonnegative; it is
/// strictly positive exactly when the map is injective.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Homothety {
    pub a: Point,
    pub lambda: Rational,
}

impl Homothety {
    pub fn new(a: Point, lambda: Rational) -> Result<Self> {
        if lambda.is_negative() {
            return Err(Error::precondition(format!(
                "homothety dilation must be nonnegative, got {lambda}"
            )));
        }
        Ok(Homothety { a, lambda })
    }

    pub fn identity() -> Self {
        Homothety {
            a: Point::origin(),
            lambda: Rational::one(),
        }
    }

    pub fn apply(&self, v: &Point) -> Point {
        self.a.add(&v.scale(&self.lambda))
    }

    /// Image of a whole set; collapses to `{a}` when `lambda = 0`.
    pub fn image(&self, set: &PointSet) -> PointSet {
        set.iter().map(|p| self.apply(p)).collect()
    }
}

impl fmt::Debug for Homothety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h(v) = {} + {}*v", self.a, self.lambda)
    }
}

/// Deduplicated `{v + w : v in V, w in W}`.
pub fn complex_sum(v: &PointSet, w: &PointSet) -> PointSet {
    let mut out = Vec::with_capacity(v.len().saturating_mul(w.len()));
    for p in v {
        for q in w {
            out.push(p.add(q));
        }
    }
    PointSet::from_points(out)
}

/// Invert `h(v) = a + lambda*v` from the images of `e_0 = (0,0)` and `e1`.
///
/// Returns the unique `h` with `h((0,0)) = q0`, `h(e1) = q1` and
/// `lambda >= 0`, or `None` when `q1 - q0` is not a nonnegative multiple of
/// `e1`. `e1` must not be the origin.
pub fn solve_anchored_homothety(e1: &Point, q0: &Point, q1: &Point) -> Result<Option<Homothety>> {
    if e1.is_origin() {
        return Err(Error::precondition(
            "anchored homothety solve needs e1 != (0,0)",
        ));
    }
    let d = q1.sub(q0);
    // lambda from the first nonzero coordinate of e1, consistency from the other
    let lambda = if !e1.x.is_zero() {
        let lambda = d.x.checked_div(&e1.x).expect("checked nonzero");
        if &lambda * &e1.y != d.y {
            return Ok(None);
        }
        lambda
    } else {
        let lambda = d.y.checked_div(&e1.y).expect("checked nonzero");
        if &lambda * &e1.x != d.x {
            return Ok(None);
        }
        lambda
    };
    if lambda.is_negative() {
        return Ok(None);
    }
    Ok(Some(Homothety {
        a: q0.clone(),
        lambda,
    }))
}
