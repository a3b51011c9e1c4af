//! Independent oracles and instance builders shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use fuzzymetric::{GroundSet, GroundSpace, Interval, Point, ProductMetric, StepFuzzySet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn coords(p: &Point) -> &[f64] {
    match p {
        Point::Coords(c) => c,
        Point::Id(_) => panic!("oracles work on coordinates"),
    }
}

/// Support points of a point-based fuzzy set with their membership grades.
fn graded_support(u: &StepFuzzySet) -> Vec<(Vec<f64>, f64)> {
    match u.cut(0.0) {
        GroundSet::Points(ps) => ps.iter().map(|p| (coords(p).to_vec(), u.membership(p))).collect(),
        GroundSet::Empty => Vec::new(),
        GroundSet::Intervals(_) => panic!("point oracle needs point cuts"),
    }
}

fn combine(variant: ProductMetric, d: f64, g: f64) -> f64 {
    match variant {
        ProductMetric::Sum => d + g,
        ProductMetric::Max => d.max(g),
    }
}

/// `H*(end u, end v)` by scanning every graph point `(x, u(x))` against every
/// `(y, min(t, v(y)))` and the drop to level 0.
pub fn brute_end_semi(variant: ProductMetric, u: &StepFuzzySet, v: &StepFuzzySet) -> f64 {
    let targets = graded_support(v);
    graded_support(u)
        .iter()
        .map(|(x, t)| {
            targets
                .iter()
                .map(|(y, s)| combine(variant, euclid(x, y), (t - s).max(0.0)))
                .fold(*t, f64::min)
        })
        .fold(0.0, f64::max)
}

pub fn brute_end_dist(variant: ProductMetric, u: &StepFuzzySet, v: &StepFuzzySet) -> f64 {
    brute_end_semi(variant, u, v).max(brute_end_semi(variant, v, u))
}

/// `H*(A, B)` for finite point sets; `+∞` when only `B` is empty.
pub fn brute_semi_hausdorff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.iter().map(|x| b.iter().map(|y| euclid(x, y)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
}

pub fn brute_hausdorff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    brute_semi_hausdorff(a, b).max(brute_semi_hausdorff(b, a))
}

/// `sup_{x ∈ A} d(x, B)` for interval unions, by dense sampling of `A` (spacing `h`).
pub fn sampled_semi_intervals(a: &[(f64, f64)], b: &[(f64, f64)], h: f64) -> f64 {
    let d = |x: f64| b.iter().map(|&(lo, hi)| if x < lo { lo - x } else if x > hi { x - hi } else { 0.0 }).fold(f64::INFINITY, f64::min);
    let mut best: f64 = 0.0;
    for &(lo, hi) in a {
        let n = ((hi - lo) / h).ceil() as usize;
        for i in 0..=n {
            best = best.max(d((lo + i as f64 * h).min(hi)));
        }
    }
    best
}

pub fn point_coords(s: &GroundSet) -> Vec<Vec<f64>> {
    match s {
        GroundSet::Points(ps) => ps.iter().map(|p| coords(p).to_vec()).collect(),
        GroundSet::Empty => Vec::new(),
        GroundSet::Intervals(_) => panic!("expected points"),
    }
}

/// Smallest `k` such that `k` of the items cover all of them within `eps`, by subset enumeration.
pub fn min_net_size(n: usize, eps: f64, dist: impl Fn(usize, usize) -> f64) -> usize {
    assert!(n <= 16, "brute force limited to 16 items");
    if n == 0 {
        return 0;
    }
    let balls: Vec<u32> = (0..n).map(|c| (0..n).filter(|&i| dist(c, i) <= eps).fold(0u32, |m, i| m | (1 << i))).collect();
    let full = (1u32 << n) - 1;
    (1..=n)
        .find(|&k| (0u32..=full).filter(|s| s.count_ones() as usize == k).any(|s| {
            (0..n).filter(|&c| s & (1 << c) != 0).fold(0u32, |m, c| m | balls[c]) == full
        }))
        .expect("all items cover themselves")
}

/// Fewest centers drawn from a bounded interval union covering it within `eps`.
///
/// Walks the pieces left to right and always places the next center at the
/// farthest point of the union within `eps` of the leftmost uncovered point.
pub fn chain_cover(pieces: &[(f64, f64)], eps: f64) -> usize {
    let mut count = 0;
    let mut covered_to = f64::NEG_INFINITY;
    let mut pieces = pieces.to_vec();
    pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut i = 0;
    while i < pieces.len() {
        if pieces[i].1 <= covered_to {
            i += 1;
            continue;
        }
        let start = pieces[i].0.max(covered_to);
        let limit = start + eps;
        let center = pieces.iter().filter(|p| p.0 <= limit).map(|p| p.1.min(limit)).fold(f64::NEG_INFINITY, f64::max);
        covered_to = center + eps;
        count += 1;
    }
    count
}

pub fn dyadic(rng: &mut impl Rng, lo: i64, hi: i64, denom: f64) -> f64 {
    rng.random_range(lo..=hi) as f64 / denom
}

/// A random finite set in ℝ² with coordinates on the `1/denom` grid of `[0, 2]`.
pub fn random_points(rng: &mut impl Rng, max: usize, denom: f64) -> GroundSet {
    let n = rng.random_range(1..=max);
    let top = (2.0 * denom) as i64;
    GroundSet::points((0..n).map(|_| Point::coords([dyadic(rng, 0, top, denom), dyadic(rng, 0, top, denom)])))
}

/// A random bounded interval union in `[−2, 2]` with endpoints on the `1/denom` grid.
pub fn random_intervals(rng: &mut impl Rng, max: usize, denom: f64) -> GroundSet {
    let n = rng.random_range(1..=max);
    let top = (2.0 * denom) as i64;
    GroundSet::intervals((0..n).map(|_| {
        let (a, b) = (dyadic(rng, -top, top, denom), dyadic(rng, -top, top, denom));
        if rng.random_bool(0.2) {
            Interval::point(a)
        } else {
            Interval { lo: a.min(b), hi: a.max(b) }
        }
    }))
}

/// A fuzzy set on ℝ on an integer grid: levels in units of `1/20`, endpoints in units of `1/100`.
#[derive(Clone, Debug)]
pub struct LineInstance {
    pub levels: Vec<i64>,
    pub cuts: Vec<Vec<(i64, i64)>>,
}

impl LineInstance {
    pub fn random(rng: &mut impl Rng) -> Self {
        Self::random_with(rng, 0.3)
    }

    /// Like [`LineInstance::random`], with each initial piece a point with probability `point_prob`.
    pub fn random_with(rng: &mut impl Rng, point_prob: f64) -> Self {
        let m = rng.random_range(1..=4);
        let mut levels: Vec<i64> = (0..m).map(|_| rng.random_range(1..=20)).collect();
        levels.sort();
        levels.dedup();
        let k = rng.random_range(1..=3);
        let mut cur: Vec<(i64, i64)> = (0..k)
            .map(|_| {
                let a = rng.random_range(-100..=100);
                if rng.random_bool(point_prob) {
                    (a, a)
                } else {
                    (a, a + rng.random_range(0..=60))
                }
            })
            .collect();
        let mut cuts = Vec::new();
        for i in 0..levels.len() {
            if i > 0 {
                let mut next = Vec::new();
                for &(a, b) in &cur {
                    if rng.random_bool(0.75) {
                        let l = a + rng.random_range(0..=(b - a) / 2);
                        next.push((l, b - rng.random_range(0..=(b - l) / 2)));
                    }
                }
                if next.is_empty() {
                    next.push((cur[0].0, cur[0].0));
                }
                cur = next;
            }
            cuts.push(cur.clone());
        }
        Self { levels, cuts }
    }

    /// Cuts made only of points use the finite-point backend.
    pub fn to_fuzzy(&self, space: &Arc<GroundSpace>) -> StepFuzzySet {
        let points = self.cuts.iter().flatten().all(|&(a, b)| a == b);
        let cuts = self
            .cuts
            .iter()
            .map(|c| {
                if points {
                    GroundSet::reals(c.iter().map(|&(a, _)| a as f64 / 100.0))
                } else {
                    GroundSet::intervals(c.iter().map(|&(a, b)| Interval { lo: a as f64 / 100.0, hi: b as f64 / 100.0 }))
                }
            })
            .collect();
        StepFuzzySet::from_cuts(space.clone(), self.levels.iter().map(|&l| l as f64 / 20.0).collect(), cuts).unwrap()
    }

    /// Level (in units of 1/20) at integer abscissa `x` (units of 1/100).
    fn level_at(&self, x100: i64) -> i64 {
        self.levels.iter().zip(&self.cuts).filter(|(_, c)| c.iter().any(|&(a, b)| a <= x100 && x100 <= b)).map(|(&l, _)| l).max().unwrap_or(0)
    }

    fn extent(&self) -> (i64, i64) {
        let all = self.cuts.iter().flatten();
        (all.clone().map(|c| c.0).min().unwrap_or(0), all.map(|c| c.1).max().unwrap_or(0))
    }
}

/// `H*(end u, end v)` on a raster of mesh `h = 0.01 / refine`: membership is
/// sampled at grid columns, and the distance to `end v` comes from a two-pass
/// distance transform (city block for the sum metric, chessboard for max).
pub fn raster_end_semi(variant: ProductMetric, u: &LineInstance, v: &LineInstance, refine: i64) -> f64 {
    let (ua, ub) = u.extent();
    let (va, vb) = v.extent();
    let (lo, hi) = ((ua.min(va) - 105) * refine, (ub.max(vb) + 105) * refine);
    let cols = (hi - lo + 1) as usize;
    let rows_per_level = 5 * refine;
    let rows = (20 * rows_per_level + 1) as usize;
    // Column heights in rows; a column at x holds rows 0..=height.
    let height = |w: &LineInstance| -> Vec<usize> {
        (0..cols)
            .map(|i| {
                let x = lo + i as i64;
                let lvl = if x % refine == 0 { w.level_at(x / refine) } else {
                    // Between 0.01-grid points the membership is that of the open gap.
                    let (l, r) = (x.div_euclid(refine), x.div_euclid(refine) + 1);
                    w.levels.iter().zip(&w.cuts).filter(|(_, c)| c.iter().any(|&(a, b)| a <= l && r <= b)).map(|(&lv, _)| lv).max().unwrap_or(0)
                };
                (lvl * rows_per_level) as usize
            })
            .collect()
    };
    let (hu, hv) = (height(u), height(v));
    const FAR: u32 = u32::MAX / 4;
    let mut d = vec![FAR; cols * rows];
    let at = |i: usize, k: usize| i * rows + k;
    for i in 0..cols {
        for k in 0..=hv[i] {
            d[at(i, k)] = 0;
        }
    }
    let diag = variant == ProductMetric::Max;
    for i in 0..cols {
        for k in 0..rows {
            let mut m = d[at(i, k)];
            if i > 0 {
                m = m.min(d[at(i - 1, k)] + 1);
                if diag {
                    if k > 0 {
                        m = m.min(d[at(i - 1, k - 1)] + 1);
                    }
                    if k + 1 < rows {
                        m = m.min(d[at(i - 1, k + 1)] + 1);
                    }
                }
            }
            if k > 0 {
                m = m.min(d[at(i, k - 1)] + 1);
            }
            d[at(i, k)] = m;
        }
    }
    for i in (0..cols).rev() {
        for k in (0..rows).rev() {
            let mut m = d[at(i, k)];
            if i + 1 < cols {
                m = m.min(d[at(i + 1, k)] + 1);
                if diag {
                    if k + 1 < rows {
                        m = m.min(d[at(i + 1, k + 1)] + 1);
                    }
                    if k > 0 {
                        m = m.min(d[at(i + 1, k - 1)] + 1);
                    }
                }
            }
            if k + 1 < rows {
                m = m.min(d[at(i, k + 1)] + 1);
            }
            d[at(i, k)] = m;
        }
    }
    let h = 0.01 / refine as f64;
    let mut best = 0u32;
    for i in 0..cols {
        for k in 0..=hu[i] {
            best = best.max(d[at(i, k)]);
        }
    }
    best as f64 * h
}
