//! Represented subsets of a ground space, Hausdorff distances, ε-nets and
//! windowed Kuratowski limits.
//!
//! Empty-set conventions: `H*(∅, B) = 0` for every `B`, and `H*(A, ∅) = +∞`
//! for nonempty `A`.
//!
//! Unbounded interval unions on the real line:
//!
//! | `A` unbounded toward | `B` unbounded toward the same side | `H*(A, B)` |
//! |----------------------|------------------------------------|------------|
//! | neither              | any                                | finite     |
//! | −∞ and/or +∞         | yes, on every such side            | finite     |
//! | −∞ or +∞             | no, on some such side              | `+∞`       |

use std::cmp::Ordering;
use std::fmt;

use crate::error::{domain, Result};
use crate::line::{interval_dist, sup_of_envelope, Tent};
use crate::metric::{GroundSpace, Point};

/// A closed interval of ℝ; infinite endpoints are open at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(domain(format!("[{lo}, {hi}] is not a nonempty closed interval")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn dist(&self, x: f64) -> f64 {
        interval_dist(x, self.lo, self.hi)
    }
}

/// A subset of a ground space.
///
/// Point lists are sorted and deduplicated; interval unions are sorted with
/// positive gaps. A `GroundSet` does not carry its space; operations take the
/// space explicitly.
#[derive(Clone, Debug, PartialEq)]
pub enum GroundSet {
    Empty,
    Points(Vec<Point>),
    Intervals(Vec<Interval>),
}

impl GroundSet {
    pub fn points(points: impl IntoIterator<Item = Point>) -> Self {
        let mut v: Vec<Point> = points.into_iter().collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            GroundSet::Empty
        } else {
            GroundSet::Points(v)
        }
    }

    pub fn reals(xs: impl IntoIterator<Item = f64>) -> Self {
        Self::points(xs.into_iter().map(Point::real))
    }

    /// Canonical union of closed intervals; overlapping or touching pieces merge.
    pub fn intervals(pieces: impl IntoIterator<Item = Interval>) -> Self {
        let mut v: Vec<Interval> = pieces.into_iter().collect();
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
                _ => out.push(iv),
            }
        }
        if out.is_empty() {
            GroundSet::Empty
        } else {
            GroundSet::Intervals(out)
        }
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Ok(Self::intervals([Interval::new(lo, hi)?]))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, GroundSet::Empty)
    }

    /// Checks that the set lives in `space`.
    pub fn check_in(&self, space: &GroundSpace) -> Result<()> {
        match self {
            GroundSet::Empty => Ok(()),
            GroundSet::Points(ps) => ps.iter().try_for_each(|p| space.check_point(p)),
            GroundSet::Intervals(_) if space.is_real_line() => Ok(()),
            GroundSet::Intervals(_) => Err(domain(format!("interval unions need the real line, not {}", space.name()))),
        }
    }

    /// The set as intervals; only meaningful on the real line.
    pub fn to_intervals(&self) -> Vec<Interval> {
        match self {
            GroundSet::Empty => Vec::new(),
            GroundSet::Intervals(v) => v.clone(),
            GroundSet::Points(ps) => ps.iter().filter_map(Point::as_real).map(Interval::point).collect(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            GroundSet::Empty => false,
            GroundSet::Points(ps) => ps.binary_search(p).is_ok(),
            GroundSet::Intervals(v) => p.as_real().is_some_and(|x| find_interval(v, x).is_some()),
        }
    }

    pub fn is_subset(&self, other: &GroundSet) -> bool {
        match (self, other) {
            (GroundSet::Empty, _) => true,
            (_, GroundSet::Empty) => false,
            (GroundSet::Points(a), _) => a.iter().all(|p| other.contains(p)),
            (GroundSet::Intervals(a), GroundSet::Intervals(b)) => {
                a.iter().all(|iv| b.iter().any(|jv| jv.lo <= iv.lo && iv.hi <= jv.hi))
            }
            (GroundSet::Intervals(a), GroundSet::Points(_)) => {
                a.iter().all(|iv| iv.lo == iv.hi && other.contains(&Point::real(iv.lo)))
            }
        }
    }

    /// Set equality, independent of representation.
    pub fn set_eq(&self, other: &GroundSet) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    pub fn union(&self, other: &GroundSet) -> GroundSet {
        match (self, other) {
            (GroundSet::Empty, s) | (s, GroundSet::Empty) => s.clone(),
            (GroundSet::Points(a), GroundSet::Points(b)) => GroundSet::points(a.iter().chain(b).cloned()),
            _ => GroundSet::intervals(self.to_intervals().into_iter().chain(other.to_intervals())),
        }
    }

    /// Bounded sets are exactly the compact ones in every backend (all sets are closed).
    pub fn is_bounded(&self) -> bool {
        match self {
            GroundSet::Intervals(v) => v.iter().all(Interval::is_bounded),
            _ => true,
        }
    }

    pub fn is_compact(&self) -> bool {
        self.is_bounded()
    }

    /// Number of represented pieces (points or intervals).
    pub fn piece_count(&self) -> usize {
        match self {
            GroundSet::Empty => 0,
            GroundSet::Points(v) => v.len(),
            GroundSet::Intervals(v) => v.len(),
        }
    }

    /// Finite endpoints and point coordinates on the real line.
    pub(crate) fn finite_extent(&self) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for iv in self.to_intervals() {
            for x in [iv.lo, iv.hi] {
                if x.is_finite() {
                    lo = lo.min(x);
                    hi = hi.max(x);
                }
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// `d(p, self)`, `+∞` for the empty set.
    pub fn dist_to(&self, space: &GroundSpace, p: &Point) -> f64 {
        match self {
            GroundSet::Empty => f64::INFINITY,
            GroundSet::Points(ps) => ps.iter().map(|q| space.dist_unchecked(p, q)).fold(f64::INFINITY, f64::min),
            GroundSet::Intervals(v) => {
                let x = p.as_real().expect("interval unions live on the real line");
                v.iter().map(|iv| iv.dist(x)).fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Finite probe points standing in for the set: every point of a point
    /// list; for intervals the finite endpoints plus multiples of `mesh`
    /// inside `clip`.
    pub fn representatives(&self, mesh: f64, clip: (f64, f64)) -> Vec<Point> {
        match self {
            GroundSet::Empty => Vec::new(),
            GroundSet::Points(ps) => ps.clone(),
            GroundSet::Intervals(v) => {
                let mut out = Vec::new();
                for iv in v {
                    if iv.lo.is_finite() {
                        out.push(iv.lo);
                    }
                    if iv.hi.is_finite() && iv.hi != iv.lo {
                        out.push(iv.hi);
                    }
                    let lo = iv.lo.max(clip.0);
                    let hi = iv.hi.min(clip.1);
                    if lo <= hi {
                        let first = (lo / mesh).ceil() as i64;
                        let last = (hi / mesh).floor() as i64;
                        out.extend((first..=last).map(|k| k as f64 * mesh).filter(|x| iv.contains(*x)));
                    }
                }
                out.sort_by(f64::total_cmp);
                out.dedup();
                out.into_iter().map(Point::real).collect()
            }
        }
    }
}

fn find_interval(v: &[Interval], x: f64) -> Option<usize> {
    let i = v.partition_point(|iv| iv.hi < x);
    (i < v.len() && v[i].lo <= x).then_some(i)
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundSet::Empty => write!(f, "∅"),
            GroundSet::Points(ps) => {
                write!(f, "{{")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "}}")
            }
            GroundSet::Intervals(v) => {
                for (i, iv) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ∪ ")?;
                    }
                    write!(f, "[{}, {}]", iv.lo, iv.hi)?;
                }
                Ok(())
            }
        }
    }
}

/// A nonnegative distance that may be `+∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtDist {
    Finite(f64),
    Infinity,
}

impl ExtDist {
    pub fn from_f64(v: f64) -> Self {
        if v == f64::INFINITY {
            ExtDist::Infinity
        } else {
            ExtDist::Finite(v)
        }
    }

    /// The value as a float, `+∞` for `Infinity`.
    pub fn value(self) -> f64 {
        match self {
            ExtDist::Finite(v) => v,
            ExtDist::Infinity => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtDist::Finite(v) => Some(v),
            ExtDist::Infinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtDist::Finite(_))
    }

    pub fn max(self, other: Self) -> Self {
        Self::from_f64(self.value().max(other.value()))
    }

    pub fn min(self, other: Self) -> Self {
        Self::from_f64(self.value().min(other.value()))
    }

    /// Whether the distance is at most `bound`.
    pub fn le(self, bound: f64) -> bool {
        self.value() <= bound
    }
}

impl PartialOrd for ExtDist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value().partial_cmp(&other.value())
    }
}

impl fmt::Display for ExtDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDist::Finite(v) => write!(f, "{v}"),
            ExtDist::Infinity => write!(f, "inf"),
        }
    }
}

fn check_pair(space: &GroundSpace, a: &GroundSet, b: &GroundSet) -> Result<()> {
    a.check_in(space)?;
    b.check_in(space)
}

/// `H*(A, B) = sup_{x ∈ A} d(x, B)` with the empty-set conventions.
pub fn semi_hausdorff(space: &GroundSpace, a: &GroundSet, b: &GroundSet) -> Result<ExtDist> {
    check_pair(space, a, b)?;
    Ok(semi_hausdorff_unchecked(space, a, b))
}

pub(crate) fn semi_hausdorff_unchecked(space: &GroundSpace, a: &GroundSet, b: &GroundSet) -> ExtDist {
    match (a, b) {
        (GroundSet::Empty, _) => ExtDist::Finite(0.0),
        (_, GroundSet::Empty) => ExtDist::Infinity,
        (GroundSet::Points(ps), _) if !matches!(b, GroundSet::Intervals(_)) => {
            ExtDist::Finite(ps.iter().map(|p| b.dist_to(space, p)).fold(0.0, f64::max))
        }
        _ => {
            let tents: Vec<Tent> = b.to_intervals().iter().map(|iv| Tent { lo: iv.lo, hi: iv.hi, offset: 0.0 }).collect();
            ExtDist::from_f64(sup_of_envelope(&a.to_intervals(), &tents, None))
        }
    }
}

/// `H(A, B) = max(H*(A, B), H*(B, A))`.
pub fn hausdorff(space: &GroundSpace, a: &GroundSet, b: &GroundSet) -> Result<ExtDist> {
    check_pair(space, a, b)?;
    Ok(hausdorff_unchecked(space, a, b))
}

pub(crate) fn hausdorff_unchecked(space: &GroundSpace, a: &GroundSet, b: &GroundSet) -> ExtDist {
    semi_hausdorff_unchecked(space, a, b).max(semi_hausdorff_unchecked(space, b, a))
}

/// A finite ε-net drawn from the covered set.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsNet {
    pub centers: Vec<Point>,
    pub radius: f64,
    pub covered: GroundSet,
}

/// Why a greedy net could not be completed.
#[derive(Clone, Debug, PartialEq)]
pub enum FailureWitness {
    /// A point farther than the radius from every chosen center.
    Uncovered(Point),
    /// The set is unbounded, hence not totally bounded.
    Unbounded,
}

impl fmt::Display for FailureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureWitness::Uncovered(p) => write!(f, "uncovered point {p}"),
            FailureWitness::Unbounded => write!(f, "unbounded set"),
        }
    }
}

/// Outcome of a budgeted greedy net.
#[derive(Clone, Debug, PartialEq)]
pub enum NetOutcome {
    Net(EpsNet),
    Failure(FailureWitness),
}

impl NetOutcome {
    pub fn is_net(&self) -> bool {
        matches!(self, NetOutcome::Net(_))
    }

    pub fn net(&self) -> Option<&EpsNet> {
        match self {
            NetOutcome::Net(n) => Some(n),
            NetOutcome::Failure(_) => None,
        }
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("radius {eps} must be positive and finite")))
    }
}

/// Greedy covering of `items` under `dist`: the first uncovered item in order
/// becomes a center. Returns the center indices, or the index of the first
/// item left uncovered once `budget` centers are in use.
pub(crate) fn greedy_cover<T>(
    items: &[T],
    eps: f64,
    budget: usize,
    mut dist: impl FnMut(&T, &T) -> f64,
) -> std::result::Result<Vec<usize>, usize> {
    let mut centers: Vec<usize> = Vec::new();
    for (i, item) in items.iter().enumerate() {
        if centers.iter().any(|&c| dist(&items[c], item) <= eps) {
            continue;
        }
        if centers.len() >= budget {
            return Err(i);
        }
        centers.push(i);
    }
    Ok(centers)
}

/// Greedy ε-net with at most `budget` centers drawn from `a`.
///
/// Centers are picked as the first uncovered point in canonical order; on an
/// interval union the sweep runs left to right and places each center `ε` to
/// the right of the first uncovered point, or at the last point of `a` before that.
pub fn greedy_eps_net(space: &GroundSpace, a: &GroundSet, eps: f64, budget: usize) -> Result<NetOutcome> {
    check_eps(eps)?;
    if budget == 0 {
        return Err(domain("net budget must be at least 1"));
    }
    a.check_in(space)?;
    let outcome = match a {
        GroundSet::Empty => NetOutcome::Net(EpsNet { centers: Vec::new(), radius: eps, covered: GroundSet::Empty }),
        GroundSet::Points(ps) => match greedy_cover(ps, eps, budget, |p, q| space.dist_unchecked(p, q)) {
            Ok(idx) => NetOutcome::Net(EpsNet {
                centers: idx.into_iter().map(|i| ps[i].clone()).collect(),
                radius: eps,
                covered: a.clone(),
            }),
            Err(i) => NetOutcome::Failure(FailureWitness::Uncovered(ps[i].clone())),
        },
        GroundSet::Intervals(v) => interval_net(v, eps, budget, a),
    };
    Ok(outcome)
}

fn interval_net(v: &[Interval], eps: f64, budget: usize, a: &GroundSet) -> NetOutcome {
    if v.iter().any(|iv| !iv.is_bounded()) {
        return NetOutcome::Failure(FailureWitness::Unbounded);
    }
    let mut centers = Vec::new();
    // Every point of `a` that is ≤ `reach` is covered.
    let mut reach = f64::NEG_INFINITY;
    let mut j = 0;
    loop {
        while j < v.len() && v[j].hi <= reach {
            j += 1;
        }
        let Some(iv) = v.get(j) else { break };
        let fresh = iv.lo > reach;
        let p = if fresh { iv.lo } else { reach };
        if centers.len() >= budget {
            let w = if fresh { iv.lo } else { iv.hi.min(reach + eps / 2.0) };
            return NetOutcome::Failure(FailureWitness::Uncovered(Point::real(w)));
        }
        // Farthest point of `a` within ε to the right of `p`.
        let k = j + v[j..].iter().take_while(|w| w.lo <= p + eps).count() - 1;
        let mut c = (p + eps).min(v[k].hi);
        while c - eps > p {
            c = c.next_down();
        }
        centers.push(Point::real(c));
        reach = c + eps;
    }
    NetOutcome::Net(EpsNet { centers, radius: eps, covered: a.clone() })
}

/// A window `C_1, …, C_N` of a set sequence with a chosen tail start (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct SetSequenceWindow {
    sets: Vec<GroundSet>,
    tail_start: usize,
}

impl SetSequenceWindow {
    pub fn new(sets: Vec<GroundSet>, tail_start: usize) -> Result<Self> {
        if tail_start < 1 || tail_start > sets.len() {
            return Err(domain(format!("tail start {tail_start} outside 1..={}", sets.len())));
        }
        Ok(Self { sets, tail_start })
    }

    pub fn sets(&self) -> &[GroundSet] {
        &self.sets
    }

    pub fn tail_start(&self) -> usize {
        self.tail_start
    }

    /// `C_n` for a 1-based index.
    pub fn get(&self, n: usize) -> &GroundSet {
        &self.sets[n - 1]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Suffix blocks of `tail_start..=n` used as the "infinitely often" proxy.
///
/// Block length is `max(1, ⌈(n − tail_start)/4⌉)`; blocks are aligned to the
/// end of the window, so the earliest block may be shorter.
pub fn suffix_blocks(n: usize, tail_start: usize) -> Vec<std::ops::RangeInclusive<usize>> {
    let len = (n - tail_start).div_ceil(4).max(1);
    let mut blocks = Vec::new();
    let mut hi = n;
    loop {
        let lo = if hi + 1 >= tail_start + len { hi + 1 - len } else { tail_start };
        blocks.push(lo..=hi);
        if lo == tail_start {
            break;
        }
        hi = lo - 1;
    }
    blocks.reverse();
    blocks
}

/// Whether `hit(n)` holds for at least one index in every suffix block.
pub(crate) fn hits_every_block(n: usize, tail_start: usize, mut hit: impl FnMut(usize) -> bool) -> bool {
    suffix_blocks(n, tail_start).into_iter().all(|mut b| b.any(&mut hit))
}

/// Per-probe liminf/limsup membership at tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct KuratowskiProbes {
    pub probes: Vec<Point>,
    pub in_liminf: Vec<bool>,
    pub in_limsup: Vec<bool>,
}

/// Finite window extent used to clip interval samples.
fn window_clip<'a>(sets: impl IntoIterator<Item = &'a GroundSet>, margin: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in sets {
        if let Some((a, b)) = s.finite_extent() {
            lo = lo.min(a);
            hi = hi.max(b);
        }
    }
    if lo > hi {
        (-margin, margin)
    } else {
        (lo - margin, hi + margin)
    }
}

/// Liminf/limsup membership of probe points at tolerance `eps`.
///
/// A probe is in `liminf_ε` iff it lies within `eps` of every `C_n` on the
/// tail, and in `limsup_ε` iff it lies within `eps` of some `C_n` in every
/// suffix block. Interval probes are replaced by their representatives at
/// mesh `eps/2`.
pub fn kuratowski_window(space: &GroundSpace, w: &SetSequenceWindow, eps: f64, probe: &GroundSet) -> Result<KuratowskiProbes> {
    check_eps(eps)?;
    probe.check_in(space)?;
    for s in w.sets() {
        s.check_in(space)?;
    }
    let clip = window_clip(w.sets().iter().chain([probe]), 1.0 + eps);
    let probes = probe.representatives(eps / 2.0, clip);
    let n = w.len();
    let near = |p: &Point, k: usize| w.get(k).dist_to(space, p) <= eps;
    let in_liminf = probes.iter().map(|p| (w.tail_start()..=n).all(|k| near(p, k))).collect();
    let in_limsup = probes.iter().map(|p| hits_every_block(n, w.tail_start(), |k| near(p, k))).collect();
    Ok(KuratowskiProbes { probes, in_liminf, in_limsup })
}

/// Where a Kuratowski check failed.
#[derive(Clone, Debug, PartialEq)]
pub enum KuratowskiWitness {
    /// Some point of the candidate limit is farther than ε from `C_index`.
    Liminf { index: usize, excess: ExtDist },
    /// A recurring point of the sequence (near `C_index`) lies farther than 2ε from the candidate.
    Limsup { index: usize, point: Point, distance: ExtDist },
}

#[derive(Clone, Debug, PartialEq)]
pub struct KuratowskiVerdict {
    pub passed: bool,
    pub witness: Option<KuratowskiWitness>,
}

/// Checks `C = lim^(K) C_n` at tolerance `eps` on the window tail.
///
/// Part one is exact: `C ⊆ liminf_ε` iff `H*(C, C_n) ≤ ε` for every tail
/// index. Part two requires every representative of the tail members that
/// recurs in each suffix block (the `limsup_ε` proxy) to lie within `2·eps`
/// of `C`; the wider radius absorbs points drifting toward `C` that sit just
/// past `eps`.
pub fn kuratowski_converges(space: &GroundSpace, w: &SetSequenceWindow, c: &GroundSet, eps: f64) -> Result<KuratowskiVerdict> {
    check_eps(eps)?;
    c.check_in(space)?;
    for s in w.sets() {
        s.check_in(space)?;
    }
    let n = w.len();
    for k in w.tail_start()..=n {
        let excess = semi_hausdorff_unchecked(space, c, w.get(k));
        if !excess.le(eps) {
            return Ok(KuratowskiVerdict { passed: false, witness: Some(KuratowskiWitness::Liminf { index: k, excess }) });
        }
    }
    let clip = window_clip(w.sets().iter().chain([c]), 1.0 + eps);
    let mut probes: Vec<Point> = (w.tail_start()..=n).flat_map(|k| w.get(k).representatives(eps / 2.0, clip)).collect();
    probes.sort();
    probes.dedup();
    for p in probes {
        let distance = ExtDist::from_f64(c.dist_to(space, &p));
        if distance.le(2.0 * eps) {
            continue;
        }
        let near = |k: usize| w.get(k).dist_to(space, &p) <= eps;
        if hits_every_block(n, w.tail_start(), near) {
            let index = (w.tail_start()..=n).find(|&k| near(k)).expect("recurring probe has a near member");
            return Ok(KuratowskiVerdict {
                passed: false,
                witness: Some(KuratowskiWitness::Limsup { index, point: p, distance }),
            });
        }
    }
    Ok(KuratowskiVerdict { passed: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: GroundSpace = GroundSpace::RealLine;

    fn iv(lo: f64, hi: f64) -> GroundSet {
        GroundSet::interval(lo, hi).unwrap()
    }

    #[test]
    fn semi_of_point_sets() {
        let a = GroundSet::reals([0.0, 1.0]);
        let b = GroundSet::reals([0.0, 2.0]);
        assert_eq!(semi_hausdorff(&R, &a, &b).unwrap(), ExtDist::Finite(1.0));
    }

    #[test]
    fn empty_conventions() {
        let a = GroundSet::reals([0.0]);
        assert_eq!(semi_hausdorff(&R, &a, &GroundSet::Empty).unwrap(), ExtDist::Infinity);
        assert_eq!(semi_hausdorff(&R, &GroundSet::Empty, &GroundSet::Empty).unwrap(), ExtDist::Finite(0.0));
        assert_eq!(semi_hausdorff(&R, &GroundSet::Empty, &a).unwrap(), ExtDist::Finite(0.0));
        assert_eq!(hausdorff(&R, &a, &GroundSet::Empty).unwrap(), ExtDist::Infinity);
    }

    #[test]
    fn interval_examples() {
        assert_eq!(hausdorff(&R, &iv(0.0, 1.0), &iv(0.0, 2.0)).unwrap(), ExtDist::Finite(1.0));
        assert_eq!(hausdorff(&R, &GroundSet::reals([0.0]), &GroundSet::reals([3.0])).unwrap(), ExtDist::Finite(3.0));
        let a = iv(f64::NEG_INFINITY, 0.0);
        let b = iv(f64::NEG_INFINITY, 5.0);
        assert_eq!(hausdorff(&R, &a, &b).unwrap(), ExtDist::Finite(5.0));
    }

    #[test]
    fn unbounded_truth_table() {
        let left = iv(f64::NEG_INFINITY, 0.0);
        let right = iv(0.0, f64::INFINITY);
        let bounded = iv(-1.0, 1.0);
        assert_eq!(semi_hausdorff(&R, &left, &bounded).unwrap(), ExtDist::Infinity);
        assert_eq!(semi_hausdorff(&R, &left, &right).unwrap(), ExtDist::Infinity);
        assert_eq!(semi_hausdorff(&R, &bounded, &left).unwrap(), ExtDist::Finite(1.0));
        let both = iv(f64::NEG_INFINITY, f64::INFINITY);
        assert_eq!(semi_hausdorff(&R, &both, &left.union(&right)).unwrap(), ExtDist::Finite(0.0));
        assert_eq!(semi_hausdorff(&R, &both, &left).unwrap(), ExtDist::Infinity);
    }

    #[test]
    fn semi_is_asymmetric() {
        let a = GroundSet::reals([0.0]);
        let b = GroundSet::reals([0.0, 4.0]);
        assert_eq!(semi_hausdorff(&R, &a, &b).unwrap(), ExtDist::Finite(0.0));
        assert_eq!(semi_hausdorff(&R, &b, &a).unwrap(), ExtDist::Finite(4.0));
    }

    #[test]
    fn mixed_points_and_intervals() {
        let pts = GroundSet::reals([0.5, 3.0]);
        assert_eq!(semi_hausdorff(&R, &pts, &iv(0.0, 1.0)).unwrap(), ExtDist::Finite(2.0));
        assert_eq!(semi_hausdorff(&R, &iv(0.0, 1.0), &pts).unwrap(), ExtDist::Finite(0.5));
    }

    #[test]
    fn wrong_space_is_rejected() {
        let s = GroundSpace::euclidean(2).unwrap();
        assert!(semi_hausdorff(&s, &iv(0.0, 1.0), &GroundSet::Empty).is_err());
    }

    #[test]
    fn canonical_forms() {
        let a = GroundSet::intervals([Interval::new(2.0, 3.0).unwrap(), Interval::new(0.0, 2.0).unwrap()]);
        assert_eq!(a, iv(0.0, 3.0));
        assert_eq!(GroundSet::reals([2.0, 1.0, 2.0]), GroundSet::reals([1.0, 2.0]));
        assert!(GroundSet::points([]).is_empty());
        assert!(Interval::new(1.0, 0.0).is_err());
    }

    #[test]
    fn subset_and_union() {
        let a = GroundSet::reals([0.0, 0.5]);
        assert!(a.is_subset(&iv(0.0, 1.0)));
        assert!(!iv(0.0, 1.0).is_subset(&a));
        assert!(GroundSet::reals([1.0]).set_eq(&iv(1.0, 1.0)));
        assert_eq!(a.union(&iv(0.25, 2.0)), GroundSet::intervals([Interval::point(0.0), Interval::new(0.25, 2.0).unwrap()]));
    }

    #[test]
    fn greedy_net_on_points() {
        let a = GroundSet::reals([0.0, 0.1, 0.2, 5.0]);
        let out = greedy_eps_net(&R, &a, 0.5, 2).unwrap();
        assert_eq!(out.net().unwrap().centers, vec![Point::real(0.0), Point::real(5.0)]);
        let fail = greedy_eps_net(&R, &a, 0.5, 1).unwrap();
        assert_eq!(fail, NetOutcome::Failure(FailureWitness::Uncovered(Point::real(5.0))));
    }

    #[test]
    fn greedy_net_edge_cases() {
        let empty = greedy_eps_net(&R, &GroundSet::Empty, 0.1, 1).unwrap();
        assert!(empty.net().unwrap().centers.is_empty());
        let unb = greedy_eps_net(&R, &iv(f64::NEG_INFINITY, 0.0), 10.0, 100).unwrap();
        assert_eq!(unb, NetOutcome::Failure(FailureWitness::Unbounded));
        assert!(greedy_eps_net(&R, &empty_or(0.0), 0.0, 1).is_err());
        assert!(greedy_eps_net(&R, &empty_or(0.0), 0.1, 0).is_err());
    }

    fn empty_or(x: f64) -> GroundSet {
        GroundSet::reals([x])
    }

    #[test]
    fn greedy_net_covers_intervals() {
        let a = GroundSet::intervals([
            Interval::new(0.0, 1.0).unwrap(),
            Interval::new(1.05, 1.1).unwrap(),
            Interval::new(3.0, 3.0).unwrap(),
        ]);
        let eps = 0.2;
        let net = greedy_eps_net(&R, &a, eps, 100).unwrap();
        let centers = &net.net().unwrap().centers;
        let cover = GroundSet::intervals(centers.iter().map(|c| {
            let x = c.as_real().unwrap();
            Interval::new(x - eps, x + eps).unwrap()
        }));
        assert!(a.is_subset(&cover), "{a} not within {cover}");
        assert!(centers.iter().all(|c| a.contains(c)));
        assert_eq!(centers.len(), 4);
        match greedy_eps_net(&R, &a, eps, 2).unwrap() {
            NetOutcome::Failure(FailureWitness::Uncovered(p)) => {
                assert!(a.contains(&p));
                assert!(centers[..2].iter().all(|c| (c.as_real().unwrap() - p.as_real().unwrap()).abs() > eps));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn blocks_align_to_window_end() {
        assert_eq!(suffix_blocks(9, 1), vec![1..=1, 2..=3, 4..=5, 6..=7, 8..=9]);
        assert_eq!(suffix_blocks(5, 5), vec![5..=5]);
        assert_eq!(suffix_blocks(10, 3), vec![3..=4, 5..=6, 7..=8, 9..=10]);
    }

    #[test]
    fn constant_sequence_probe() {
        let w = SetSequenceWindow::new(vec![GroundSet::reals([1.0]); 8], 1).unwrap();
        let k = kuratowski_window(&R, &w, 1e-9, &GroundSet::reals([1.0])).unwrap();
        assert_eq!((k.in_liminf[0], k.in_limsup[0]), (true, true));
    }

    #[test]
    fn alternating_probe() {
        let sets = (1..=20).map(|n| GroundSet::reals([if n % 2 == 1 { 1.0 } else { 3.0 }])).collect();
        let w = SetSequenceWindow::new(sets, 1).unwrap();
        let k = kuratowski_window(&R, &w, 0.1, &GroundSet::reals([1.0])).unwrap();
        assert_eq!((k.in_liminf[0], k.in_limsup[0]), (false, true));
    }

    #[test]
    fn shrinking_singletons_probe() {
        let sets = (1..=400).map(|n| GroundSet::reals([1.0 / n as f64])).collect();
        let w = SetSequenceWindow::new(sets, 200).unwrap();
        let k = kuratowski_window(&R, &w, 0.01, &GroundSet::reals([0.0])).unwrap();
        assert_eq!((k.in_liminf[0], k.in_limsup[0]), (true, true));
    }

    #[test]
    fn converges_examples() {
        let sets = (1..=80).map(|n| GroundSet::reals([1.0 + 1.0 / n as f64])).collect();
        let w = SetSequenceWindow::new(sets, 40).unwrap();
        assert!(kuratowski_converges(&R, &w, &GroundSet::reals([1.0]), 0.05).unwrap().passed);

        let sets = (1..=20).map(|n| GroundSet::reals([if n % 2 == 1 { 1.0 } else { 3.0 }])).collect();
        let w = SetSequenceWindow::new(sets, 1).unwrap();
        let v = kuratowski_converges(&R, &w, &GroundSet::reals([1.0]), 0.1).unwrap();
        assert!(!v.passed);
        match v.witness.unwrap() {
            KuratowskiWitness::Liminf { index, .. } => assert_eq!(index % 2, 0),
            other => panic!("unexpected witness {other:?}"),
        }

        let c = iv(0.0, 1.0);
        let w = SetSequenceWindow::new(vec![c.clone(); 10], 1).unwrap();
        assert!(kuratowski_converges(&R, &w, &c, 1e-6).unwrap().passed);
    }

    #[test]
    fn limsup_stray_is_reported() {
        // Every member contains the limit plus a recurring far point.
        let sets = (1..=12).map(|_| GroundSet::reals([0.0, 5.0])).collect();
        let w = SetSequenceWindow::new(sets, 1).unwrap();
        let v = kuratowski_converges(&R, &w, &GroundSet::reals([0.0]), 0.1).unwrap();
        assert!(matches!(v.witness, Some(KuratowskiWitness::Limsup { index: 1, .. })));
    }

    #[test]
    fn window_tail_bounds() {
        assert!(SetSequenceWindow::new(vec![GroundSet::Empty], 2).is_err());
        assert!(SetSequenceWindow::new(vec![GroundSet::Empty], 0).is_err());
    }
}
