//! Colorings of point sets and the induced supercoloring.
//!
//! A color is either a plain id below the coloring's arity or a supercolor:
//! an ordered tuple of colors. Supercolors arise from the induced coloring
//! `f'(v)(w) = f(v+w)`; their conceptual arity `k^|base|` overflows any fixed
//! width, so they are kept as interned tuples and only ever compared for
//! equality. Within one induced coloring equal tuples share one allocation,
//! making equality effectively O(1); comparisons across colorings fall back
//! to structural equality.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};

#[derive(Clone)]
pub enum Color {
    Plain(u64),
    Super(Arc<Vec<Color>>),
}

impl PartialEq for Color {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Color::Plain(a), Color::Plain(b)) => a == b,
            (Color::Super(a), Color::Super(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Eq for Color {}

impl Hash for Color {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Color::Plain(id) => {
                state.write_u8(0);
                id.hash(state);
            }
            Color::Super(tuple) => {
                state.write_u8(1);
                tuple.len().hash(state);
                for c in tuple.iter() {
                    c.hash(state);
                }
            }
        }
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Plain(id) => write!(f, "{id}"),
            Color::Super(tuple) => f.debug_list().entries(tuple.iter()).finish(),
        }
    }
}

/// Total map from a point set to colors, with a conceptual arity bound.
#[derive(Clone, PartialEq, Eq)]
pub struct Coloring {
    domain: Arc<PointSet>,
    /// Color of the i-th point in canonical domain order.
    colors: Vec<Color>,
    arity: BigUint,
}

impl Coloring {
    /// Build from colors listed in canonical domain order. Plain ids must be
    /// below the arity.
    pub fn new(domain: Arc<PointSet>, colors: Vec<Color>, arity: BigUint) -> Result<Self> {
        if colors.len() != domain.len() {
            return Err(Error::precondition(format!(
                "coloring covers {} points but domain has {}",
                colors.len(),
                domain.len()
            )));
        }
        if arity.is_zero() {
            return Err(Error::precondition("coloring arity must be >= 1"));
        }
        for c in &colors {
            if let Color::Plain(id) = c {
                if BigUint::from(*id) >= arity {
                    return Err(Error::precondition(format!(
                        "color id {id} out of range for arity {arity}"
                    )));
                }
            }
        }
        Ok(Coloring {
            domain,
            colors,
            arity,
        })
    }

    /// Constant coloring (color 0 everywhere).
    pub fn constant(domain: Arc<PointSet>, arity: u64) -> Result<Self> {
        let colors = vec![Color::Plain(0); domain.len()];
        Coloring::new(domain, colors, BigUint::from(arity.max(1)))
    }

    pub fn domain(&self) -> &Arc<PointSet> {
        &self.domain
    }

    pub fn arity(&self) -> &BigUint {
        &self.arity
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color_by_index(&self, i: usize) -> &Color {
        &self.colors[i]
    }

    pub fn color_at(&self, p: &Point) -> Result<&Color> {
        match self.domain.position(p) {
            Some(i) => Ok(&self.colors[i]),
            None => Err(Error::MissingPoint { point: p.clone() }),
        }
    }

    /// Same assignments on `v`; errors when `v` is not inside the domain.
    pub fn restrict(&self, v: &Arc<PointSet>) -> Result<Coloring> {
        let mut colors = Vec::with_capacity(v.len());
        for p in v.iter() {
            colors.push(self.color_at(p)?.clone());
        }
        Ok(Coloring {
            domain: Arc::clone(v),
            colors,
            arity: self.arity.clone(),
        })
    }

    /// The induced supercoloring `f'` with `f'(v)(w) = f(v+w)`.
    ///
    /// Colors `v` in `shift_domain` by the tuple of `f(v+w)` over the
    /// canonical order of `base_set`. Equal tuples are interned in first-seen
    /// order so equality checks share one allocation. The conceptual arity is
    /// `arity^|base_set|`, stored exactly but never materialized as a range.
    pub fn induced_supercoloring(
        &self,
        shift_domain: &Arc<PointSet>,
        base_set: &PointSet,
    ) -> Result<Coloring> {
        let mut interner: HashMap<Vec<Color>, Color> = HashMap::new();
        let mut colors = Vec::with_capacity(shift_domain.len());
        for v in shift_domain.iter() {
            let mut tuple = Vec::with_capacity(base_set.len());
            for w in base_set {
                tuple.push(self.color_at(&v.add(w))?.clone());
            }
            let color = interner
                .entry(tuple)
                .or_insert_with_key(|t| Color::Super(Arc::new(t.clone())));
            colors.push(color.clone());
        }
        Ok(Coloring {
            domain: Arc::clone(shift_domain),
            colors,
            arity: self.arity.pow(base_set.len() as u32),
        })
    }

    /// Number of distinct colors actually used.
    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<&Color> = Vec::new();
        for c in &self.colors {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen.len()
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring(k={}, {:?})", self.arity, self.colors)
    }
}

/// The splitmix64 generator, pinned so seeded colorings are portable.
///
/// State update adds the golden-gamma constant `0x9E3779B97F4A7C15`; outputs
/// are finalized with the two standard xor-multiply rounds.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Seeded random coloring: each point in canonical order gets
/// `splitmix64 output mod k`. Fully reproducible from the seed.
pub fn random_coloring(domain: Arc<PointSet>, k: u64, seed: u64) -> Result<Coloring> {
    if k < 1 {
        return Err(Error::precondition("random coloring needs k >= 1"));
    }
    let mut rng = SplitMix64::new(seed);
    let colors = (0..domain.len())
        .map(|_| Color::Plain(rng.next_u64() % k))
        .collect();
    Coloring::new(domain, colors, BigUint::from(k))
}

/// The `index`-th of the `k^|domain|` colorings of `domain`, in lexicographic
/// order of the color tuple over canonical point order: the first point is
/// the most significant base-k digit of the index.
pub fn nth_coloring(domain: &Arc<PointSet>, k: u64, index: u64) -> Result<Coloring> {
    if k < 1 {
        return Err(Error::precondition("coloring enumeration needs k >= 1"));
    }
    let mut digits = vec![0u64; domain.len()];
    let mut rest = index;
    for slot in digits.iter_mut().rev() {
        *slot = rest % k;
        rest /= k;
    }
    if rest != 0 {
        return Err(Error::precondition(format!(
            "coloring index {index} out of range for k={k}, |V|={}",
            domain.len()
        )));
    }
    let colors = digits.into_iter().map(Color::Plain).collect();
    Coloring::new(Arc::clone(domain), colors, BigUint::from(k))
}

/// Total number of k-colorings of `domain` when it fits the sweep budget.
pub fn coloring_count(domain: &PointSet, k: u64, sweep_budget: u64) -> Result<u64> {
    let total = BigUint::from(k).pow(domain.len() as u32);
    total
        .to_u64()
        .filter(|&t| t <= sweep_budget)
        .ok_or(Error::ResourceLimit {
            quantity: "coloring sweep size k^|V|",
            needed: total,
            limit: BigUint::from(sweep_budget),
        })
}

/// Iterator over all `k^|domain|` colorings in index order.
pub fn enumerate_colorings(
    domain: &Arc<PointSet>,
    k: u64,
    sweep_budget: u64,
) -> Result<impl Iterator<Item = Coloring> + '_> {
    let total = coloring_count(domain, k, sweep_budget)?;
    let domain = Arc::clone(domain);
    Ok((0..total).map(move |i| nth_coloring(&domain, k, i).expect("index below total")))
}
