//! Seeded instance generators, including the standard counterexamples.
//!
//! Random generators draw from `ChaCha8Rng::seed_from_u64(seed)` on a single
//! thread, so a spec and seed determine the instance bit for bit.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::compactness::FuzzyFamily;
use crate::convergence::FuzzySeqWindow;
use crate::error::{Error, Result};
use crate::fuzzy::StepFuzzySet;
use crate::metric::{GroundSpace, Point};
use crate::sets::{GroundSet, Interval};

/// Shape of the random cuts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutShape {
    /// Finite point sets in `ℝ^dim`.
    Points,
    /// Finite unions of closed intervals; requires `dim = 1`.
    Intervals,
}

/// Parameters of [`gen_random_family`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomFamilySpec {
    pub members: usize,
    /// Inclusive range of the number of levels per member.
    pub levels: (usize, usize),
    /// Inclusive range of the number of points or intervals in the base cut.
    pub cut_size: (usize, usize),
    pub dim: usize,
    /// Coordinate box `[lo, hi]^dim`.
    pub bounds: (f64, f64),
    pub shape: CutShape,
    /// Snap coordinates to multiples of this grain.
    pub coord_grain: Option<f64>,
    /// Snap levels to multiples of this grain.
    pub level_grain: Option<f64>,
}

impl Default for RandomFamilySpec {
    fn default() -> Self {
        Self {
            members: 10,
            levels: (1, 4),
            cut_size: (1, 5),
            dim: 2,
            bounds: (0.0, 1.0),
            shape: CutShape::Points,
            coord_grain: None,
            level_grain: None,
        }
    }
}

fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl RandomFamilySpec {
    pub fn validate(&self) -> Result<()> {
        let (lmin, lmax) = self.levels;
        if lmin == 0 || lmin > lmax {
            return Err(config(format!("level count range {lmin}..={lmax} must be nonempty and start at 1 or more")));
        }
        if self.cut_size.0 == 0 || self.cut_size.0 > self.cut_size.1 {
            return Err(config("cut size range must be nonempty and start at 1 or more"));
        }
        if self.dim == 0 {
            return Err(config("dimension must be at least 1"));
        }
        if self.shape == CutShape::Intervals && self.dim != 1 {
            return Err(config("interval cuts need dimension 1"));
        }
        let (lo, hi) = self.bounds;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(config(format!("box [{lo}, {hi}] must be finite and nondegenerate")));
        }
        for g in [self.coord_grain, self.level_grain].into_iter().flatten() {
            if !(g > 0.0 && g.is_finite()) {
                return Err(config(format!("grain {g} must be positive")));
            }
        }
        if let Some(g) = self.level_grain {
            if level_slots(g) < lmax {
                return Err(config(format!("level grain {g} allows fewer than {lmax} levels")));
            }
        }
        Ok(())
    }

    /// `ℝ` for dimension 1, `ℝ^dim` otherwise.
    pub fn space(&self) -> GroundSpace {
        if self.dim == 1 {
            GroundSpace::RealLine
        } else {
            GroundSpace::EuclideanRm { dim: self.dim }
        }
    }
}

fn level_slots(g: f64) -> usize {
    (1.0 / g + 1e-9).floor() as usize
}

fn snap(x: f64, grain: Option<f64>, bounds: (f64, f64)) -> f64 {
    match grain {
        Some(g) => ((x / g).round() * g).clamp(bounds.0, bounds.1),
        None => x,
    }
}

fn random_levels(rng: &mut impl Rng, spec: &RandomFamilySpec) -> Vec<f64> {
    let m = rng.random_range(spec.levels.0..=spec.levels.1);
    let mut levels: Vec<f64> = match spec.level_grain {
        Some(g) => sample(rng, level_slots(g), m).into_iter().map(|i| ((i + 1) as f64 * g).min(1.0)).collect(),
        None => (0..m).map(|_| 1.0 - rng.random::<f64>()).collect(),
    };
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    levels
}

fn random_coord(rng: &mut impl Rng, spec: &RandomFamilySpec) -> f64 {
    let (lo, hi) = spec.bounds;
    snap(rng.random_range(lo..=hi), spec.coord_grain, spec.bounds)
}

/// Keeps each element with probability 0.7, and always at least one.
fn shrink<T: Clone>(rng: &mut impl Rng, items: &[T]) -> Vec<T> {
    let kept: Vec<T> = items.iter().filter(|_| rng.random_bool(0.7)).cloned().collect();
    if kept.is_empty() {
        vec![items[rng.random_range(0..items.len())].clone()]
    } else {
        kept
    }
}

fn shrink_interval(rng: &mut impl Rng, iv: Interval, grain: Option<f64>) -> Interval {
    let len = iv.hi - iv.lo;
    let (a, b) = (iv.lo + rng.random_range(0.0..0.5) * len, iv.hi - rng.random_range(0.0..0.5) * len);
    let (a, b) = match grain {
        Some(g) => ((a / g).ceil() * g, (b / g).floor() * g),
        None => (a, b),
    };
    if a <= b && a >= iv.lo && b <= iv.hi {
        Interval { lo: a, hi: b }
    } else {
        Interval::point(iv.lo)
    }
}

/// One random fuzzy set drawn from `rng` per `spec`; `spec` must be valid.
pub fn random_fuzzy(rng: &mut impl Rng, spec: &RandomFamilySpec, space: &Arc<GroundSpace>) -> StepFuzzySet {
    let levels = random_levels(rng, spec);
    let k = rng.random_range(spec.cut_size.0..=spec.cut_size.1);
    let cuts: Vec<GroundSet> = match spec.shape {
        CutShape::Points => {
            let base: Vec<Point> = (0..k).map(|_| Point::Coords((0..spec.dim).map(|_| random_coord(rng, spec)).collect())).collect();
            let mut cur = GroundSet::points(base);
            let mut cuts = Vec::with_capacity(levels.len());
            for i in 0..levels.len() {
                if i > 0 {
                    let GroundSet::Points(ps) = &cur else { unreachable!("point cuts stay point sets") };
                    cur = GroundSet::points(shrink(rng, ps));
                }
                cuts.push(cur.clone());
            }
            cuts
        }
        CutShape::Intervals => {
            let base: Vec<Interval> = (0..k)
                .map(|_| {
                    let (a, b) = (random_coord(rng, spec), random_coord(rng, spec));
                    if rng.random_bool(0.2) {
                        Interval::point(a)
                    } else {
                        Interval { lo: a.min(b), hi: a.max(b) }
                    }
                })
                .collect();
            let mut cur = GroundSet::intervals(base);
            let mut cuts = Vec::with_capacity(levels.len());
            for i in 0..levels.len() {
                if i > 0 {
                    let pieces = cur.to_intervals();
                    let kept = shrink(rng, &pieces);
                    cur = GroundSet::intervals(kept.into_iter().map(|iv| shrink_interval(rng, iv, spec.coord_grain)));
                }
                cuts.push(cur.clone());
            }
            cuts
        }
    };
    StepFuzzySet::from_cuts(space.clone(), levels, cuts).expect("shrinking keeps cuts nested and nonempty")
}

/// A random family of members with nested cuts on a bounded box.
pub fn gen_random_family(spec: &RandomFamilySpec, seed: u64) -> Result<FuzzyFamily> {
    spec.validate()?;
    let space = Arc::new(spec.space());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members = (0..spec.members).map(|_| random_fuzzy(&mut rng, spec, &space)).collect();
    FuzzyFamily::new(space, members)
}

/// Translates every cut by `v`.
pub fn translate(u: &StepFuzzySet, v: &[f64]) -> Result<StepFuzzySet> {
    let cuts = u
        .cuts()
        .iter()
        .map(|c| match c {
            GroundSet::Empty => GroundSet::Empty,
            GroundSet::Points(ps) => GroundSet::points(ps.iter().map(|p| match p {
                Point::Coords(x) => Point::Coords(x.iter().zip(v).map(|(a, b)| a + b).collect()),
                Point::Id(_) => p.clone(),
            })),
            GroundSet::Intervals(iv) => GroundSet::intervals(iv.iter().map(|i| Interval { lo: i.lo + v[0], hi: i.hi + v[0] })),
        })
        .collect();
    StepFuzzySet::from_cuts(u.space().clone(), u.levels().to_vec(), cuts)
}

/// A random limit `u` and the window `u_k = u + v_k` with `|v_k| = amplitude / k`.
pub fn gen_convergent(spec: &RandomFamilySpec, n: usize, amplitude: f64, seed: u64) -> Result<(FuzzySeqWindow, StepFuzzySet)> {
    spec.validate()?;
    if n == 0 || !(amplitude >= 0.0 && amplitude.is_finite()) {
        return Err(config("need at least one member and a finite nonnegative amplitude"));
    }
    let space = Arc::new(spec.space());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limit = random_fuzzy(&mut rng, spec, &space);
    let members = (1..=n)
        .map(|k| {
            let dir: Vec<f64> = (0..spec.dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
            let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
            let v: Vec<f64> = dir.iter().map(|x| x / norm * amplitude / k as f64).collect();
            translate(&limit, &v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((FuzzySeqWindow::new(members, 1)?, limit))
}

/// `u_k = χ_{x_1, x_k}` with `x_k = (k−1)·spacing` on ℝ.
pub fn gen_escaping(n: usize, spacing: f64) -> Result<FuzzySeqWindow> {
    if n < 2 || !(spacing > 0.0 && spacing.is_finite()) {
        return Err(config("escaping sequence needs n ≥ 2 and a positive spacing"));
    }
    let space = Arc::new(GroundSpace::RealLine);
    let members = (1..=n)
        .map(|k| StepFuzzySet::chi(space.clone(), GroundSet::reals([0.0, (k - 1) as f64 * spacing])))
        .collect::<Result<Vec<_>>>()?;
    FuzzySeqWindow::new(members, 1)
}

/// `1̂` at odd indices and `3̂` at even ones.
pub fn gen_oscillating(n: usize) -> Result<FuzzySeqWindow> {
    if n < 2 {
        return Err(config("oscillating sequence needs n ≥ 2"));
    }
    let space = Arc::new(GroundSpace::RealLine);
    let members = (1..=n)
        .map(|k| StepFuzzySet::point_hat(space.clone(), Point::real(if k % 2 == 1 { 1.0 } else { 3.0 })))
        .collect::<Result<Vec<_>>>()?;
    FuzzySeqWindow::new(members, 1)
}

/// `u_k = χ_[0, 1 + 1/k]`, converging to `χ_[0,1]`.
pub fn gen_nested_intervals(n: usize, tail_start: usize) -> Result<FuzzySeqWindow> {
    let space = Arc::new(GroundSpace::RealLine);
    let members = (1..=n)
        .map(|k| StepFuzzySet::chi(space.clone(), GroundSet::interval(0.0, 1.0 + 1.0 / k as f64)?))
        .collect::<Result<Vec<_>>>()?;
    FuzzySeqWindow::new(members, tail_start)
}

/// Grid `δ, 2δ, …` strictly below `top`.
fn level_grid(top: f64, mesh: f64) -> Vec<f64> {
    (1..).map(|i| i as f64 * mesh).take_while(|&a| a < top - mesh * 1e-6).collect()
}

/// The unbounded-cut fuzzy set with `[u]_α = (−∞, −1/(r−α)]`, sampled at levels `iδ < r`.
///
/// The sampled set attains its height `δ⌈r/δ − 1⌉` while the exact one does not.
pub fn gen_example_empu(r: f64, mesh: f64) -> Result<StepFuzzySet> {
    if !(r > 0.0 && r <= 1.0) || !(mesh > 0.0 && mesh < r) {
        return Err(config(format!("need 0 < r ≤ 1 and 0 < mesh < r, got r = {r}, mesh = {mesh}")));
    }
    let levels = level_grid(r, mesh);
    let cuts = levels.iter().map(|&a| GroundSet::interval(f64::NEG_INFINITY, -1.0 / (r - a))).collect::<Result<Vec<_>>>()?;
    StepFuzzySet::from_cuts(Arc::new(GroundSpace::RealLine), levels, cuts)
}

/// The window `u_1..u_n` with `[u_k]_α = [1 − 1/k, 2 − α/r]` and the limit
/// `[u]_α = [1, 2 − α/r]` for `α ≤ r`, on the level grid `δ, 2δ, …, r`.
///
/// On ℝ the cuts are closed, so `[u]_r = {1}`; `H_end(u_k, u) = min(1/k, r)` up to the mesh.
pub fn gen_example_rnce(r: f64, n: usize, mesh: f64) -> Result<(FuzzySeqWindow, StepFuzzySet)> {
    if !(r > 0.0 && r <= 1.0) || n == 0 || !(mesh > 0.0 && mesh <= r) {
        return Err(config(format!("need 0 < r ≤ 1, n ≥ 1 and 0 < mesh ≤ r, got r = {r}, n = {n}, mesh = {mesh}")));
    }
    let space = Arc::new(GroundSpace::RealLine);
    let mut levels = level_grid(r, mesh);
    levels.push(r);
    let build = |left: f64| {
        let cuts = levels.iter().map(|&a| GroundSet::interval(left, 2.0 - a / r)).collect::<Result<Vec<_>>>()?;
        StepFuzzySet::from_cuts(space.clone(), levels.clone(), cuts)
    };
    let members = (1..=n).map(|k| build(1.0 - 1.0 / k as f64)).collect::<Result<Vec<_>>>()?;
    Ok((FuzzySeqWindow::new(members, 1)?, build(1.0)?))
}
