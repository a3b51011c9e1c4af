//! Fuzzy sets with finitely many levels, stored through their nested cuts.

use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::metric::{GroundSpace, Point};
use crate::sets::GroundSet;

static EMPTY: GroundSet = GroundSet::Empty;

/// A fuzzy set `u` with levels `α_1 < … < α_K` and cuts `C_1 ⊇ … ⊇ C_K`.
///
/// `[u]_α = C_i` for `α ∈ (α_{i−1}, α_i]` (with `α_0 = 0`), `[u]_α = ∅` above
/// `α_K`, and `[u]_0 = C_1`. `K = 0` is the empty fuzzy set.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFuzzySet {
    space: Arc<GroundSpace>,
    levels: Vec<f64>,
    cuts: Vec<GroundSet>,
}

/// Class membership of a fuzzy set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub is_usc: bool,
    pub is_uscg: bool,
    pub is_uscb: bool,
    pub is_normal: bool,
    pub height_attained: bool,
    /// Only reported on the real line: every cut is a single interval or empty.
    pub is_connected_cuts: Option<bool>,
}

pub(crate) fn same_space(a: &Arc<GroundSpace>, b: &Arc<GroundSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl StepFuzzySet {
    /// The unique step fuzzy set with the given cut at each level.
    pub fn from_cuts(space: Arc<GroundSpace>, levels: Vec<f64>, cuts: Vec<GroundSet>) -> Result<Self> {
        if levels.len() != cuts.len() {
            return Err(Error::Representation(format!("{} levels but {} cuts", levels.len(), cuts.len())));
        }
        let mut prev = 0.0;
        for &a in &levels {
            if !(a > prev && a <= 1.0) {
                return Err(Error::Representation(format!("levels must increase strictly within (0,1], got {a} after {prev}")));
            }
            prev = a;
        }
        for (i, c) in cuts.iter().enumerate() {
            c.check_in(&space)?;
            if c.is_empty() {
                return Err(Error::Representation(format!("cut at level {} is empty", levels[i])));
            }
            if i > 0 && !c.is_subset(&cuts[i - 1]) {
                return Err(Error::Representation(format!(
                    "cut at level {} is not contained in the cut at level {}",
                    levels[i],
                    levels[i - 1]
                )));
            }
        }
        Ok(Self { space, levels, cuts })
    }

    /// The empty fuzzy set `∅_F(X)`.
    pub fn empty(space: Arc<GroundSpace>) -> Self {
        Self { space, levels: Vec::new(), cuts: Vec::new() }
    }

    /// The characteristic function `χ_A`.
    pub fn chi(space: Arc<GroundSpace>, a: GroundSet) -> Result<Self> {
        if a.is_empty() {
            a.check_in(&space)?;
            return Ok(Self::empty(space));
        }
        Self::from_cuts(space, vec![1.0], vec![a])
    }

    /// `x̂ = χ_{x}`.
    pub fn point_hat(space: Arc<GroundSpace>, x: Point) -> Result<Self> {
        Self::chi(space, GroundSet::points([x]))
    }

    pub fn space(&self) -> &Arc<GroundSpace> {
        &self.space
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn cuts(&self) -> &[GroundSet] {
        &self.cuts
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `u(x) = max{α_i : x ∈ C_i}`, or 0.
    pub fn membership(&self, x: &Point) -> f64 {
        self.levels
            .iter()
            .zip(&self.cuts)
            .rev()
            .find(|(_, c)| c.contains(x))
            .map_or(0.0, |(&a, _)| a)
    }

    /// Index of the first level `≥ alpha`.
    pub(crate) fn level_index(&self, alpha: f64) -> Option<usize> {
        let i = self.levels.partition_point(|&a| a < alpha);
        (i < self.levels.len()).then_some(i)
    }

    /// `[u]_α`; levels at or below 0 give `C_1`.
    pub fn cut(&self, alpha: f64) -> &GroundSet {
        if alpha <= 0.0 {
            return self.cuts.first().unwrap_or(&EMPTY);
        }
        self.level_index(alpha).map_or(&EMPTY, |i| &self.cuts[i])
    }

    /// `S_u`: the top level, or 0 for the empty fuzzy set.
    pub fn height(&self) -> f64 {
        self.levels.last().copied().unwrap_or(0.0)
    }

    pub fn classify(&self) -> ClassReport {
        let uscg = self.cuts.iter().all(GroundSet::is_compact);
        let uscb = uscg && self.cut(0.0).is_compact();
        let connected = self.space.is_real_line().then(|| {
            self.cuts.iter().all(|c| match c {
                GroundSet::Intervals(v) => v.len() == 1,
                GroundSet::Points(p) => p.len() == 1,
                GroundSet::Empty => true,
            })
        });
        ClassReport {
            is_usc: true,
            is_uscg: uscg,
            is_uscb: uscb,
            is_normal: self.height() == 1.0,
            height_attained: true,
            is_connected_cuts: connected,
        }
    }

    /// Adds the levels `kδ < S_u` without changing any cut.
    pub fn refine_levels(&self, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(domain(format!("mesh {delta} must be positive")));
        }
        let top = self.height();
        let mut levels: Vec<f64> = self.levels.clone();
        let mut k = 1u64;
        loop {
            let a = k as f64 * delta;
            if a >= top {
                break;
            }
            levels.push(a);
            k += 1;
        }
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        let cuts = levels.iter().map(|&a| self.cut(a).clone()).collect();
        Ok(Self { space: self.space.clone(), levels, cuts })
    }

    /// Drops levels whose cut equals the next higher cut.
    pub fn normalized(&self) -> Self {
        let mut levels = Vec::new();
        let mut cuts: Vec<GroundSet> = Vec::new();
        for i in 0..self.levels.len() {
            if i + 1 < self.levels.len() && self.cuts[i].set_eq(&self.cuts[i + 1]) {
                continue;
            }
            levels.push(self.levels[i]);
            cuts.push(self.cuts[i].clone());
        }
        Self { space: self.space.clone(), levels, cuts }
    }

    /// Whether both fuzzy sets have the same cuts at every level.
    pub fn same_fuzzy_set(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        same_space(&self.space, &other.space)
            && a.levels == b.levels
            && a.cuts.iter().zip(&b.cuts).all(|(x, y)| x.set_eq(y))
    }
}
