//! Endographs as slab stacks, slice calculus, and exact endograph distances.
//!
//! For a point `(x, t)` and a step fuzzy set `v` with levels `α_j` and cuts
//! `C_j`, the distance to `end v` under the sum metric is
//!
//! ```text
//! min( t, min_j [ d(x, C_j) + (t − α_j)^+ ] )
//! ```
//!
//! (the max metric replaces `+` by `max`). The kernel is nondecreasing in `t`,
//! so `H*(end u, end v)` is attained at the points `(x, u(x))`. On the real
//! line each term is a tent in `x` and the supremum over an interval is found
//! exactly by breakpoint enumeration.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::fuzzy::{same_space, StepFuzzySet};
use crate::line::{sup_of_envelope, Tent};
use crate::metric::{GroundSpace, LiftedPoint, Point, ProductMetric};
use crate::sets::{semi_hausdorff_unchecked, ExtDist, GroundSet, Interval};

/// A slice of a subset of `X × [0,1]`: either the whole space or a ground set.
#[derive(Clone, Debug, PartialEq)]
pub enum Slice {
    Full,
    Set(GroundSet),
}

impl Slice {
    pub fn is_empty(&self) -> bool {
        matches!(self, Slice::Set(s) if s.is_empty())
    }

    fn union(&self, other: &Slice) -> Slice {
        match (self, other) {
            (Slice::Full, _) | (_, Slice::Full) => Slice::Full,
            (Slice::Set(a), Slice::Set(b)) => Slice::Set(a.union(b)),
        }
    }

    fn is_subset(&self, other: &Slice, space: &GroundSpace) -> bool {
        match (self, other) {
            (_, Slice::Full) => true,
            (Slice::Set(a), Slice::Set(b)) => a.is_subset(b),
            (Slice::Full, Slice::Set(b)) => covers_space(space, b),
        }
    }

    fn set_eq(&self, other: &Slice, space: &GroundSpace) -> bool {
        self.is_subset(other, space) && other.is_subset(self, space)
    }

    fn is_compact(&self, space: &GroundSpace) -> bool {
        match self {
            Slice::Full => space.is_compact(),
            Slice::Set(s) => s.is_compact(),
        }
    }
}

fn covers_space(space: &GroundSpace, s: &GroundSet) -> bool {
    match (space, s) {
        (GroundSpace::PointCloud(c), GroundSet::Points(p)) => p.len() == c.len(),
        (GroundSpace::RealLine, GroundSet::Intervals(v)) => {
            v.len() == 1 && v[0].lo == f64::NEG_INFINITY && v[0].hi == f64::INFINITY
        }
        _ => false,
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slice::Full => write!(f, "X"),
            Slice::Set(s) => write!(f, "{s}"),
        }
    }
}

/// One slab `body × I` with `I ⊆ (0, 1]` an interval of levels.
#[derive(Clone, Debug, PartialEq)]
pub struct Slab {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub body: GroundSet,
}

impl Slab {
    /// The slab `body × (lo, hi]`.
    pub fn half_open(lo: f64, hi: f64, body: GroundSet) -> Self {
        Self { lo, hi, lo_closed: false, hi_closed: true, body }
    }

    /// The slab `body × [lo, hi]`.
    pub fn closed(lo: f64, hi: f64, body: GroundSet) -> Self {
        Self { lo, hi, lo_closed: true, hi_closed: true, body }
    }

    fn contains_level(&self, a: f64) -> bool {
        (a > self.lo || (self.lo_closed && a == self.lo)) && (a < self.hi || (self.hi_closed && a == self.hi))
    }
}

/// A subset of `X × [0,1]` given by a level-0 base slice and disjoint slabs
/// over positive levels.
#[derive(Clone, Debug, PartialEq)]
pub struct SlabSet {
    space: Arc<GroundSpace>,
    base: Option<Slice>,
    slabs: Vec<Slab>,
}

/// A level piece of `[0,1]`: a single level, or the open interval between
/// two consecutive breakpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Piece {
    At(f64),
    Between(f64, f64),
}

impl Piece {
    fn probe(self) -> f64 {
        match self {
            Piece::At(a) => a,
            Piece::Between(a, b) => a + (b - a) / 2.0,
        }
    }
}

fn pieces(mut breaks: Vec<f64>) -> Vec<Piece> {
    breaks.extend([0.0, 1.0]);
    breaks.retain(|b| (0.0..=1.0).contains(b));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut out = vec![Piece::At(breaks[0])];
    for w in breaks.windows(2) {
        out.push(Piece::Between(w[0], w[1]));
        out.push(Piece::At(w[1]));
    }
    out
}

impl SlabSet {
    /// Builds a slab set, checking level ranges, ordering and bodies.
    ///
    /// Empty bodies are dropped. Slabs must lie in `(0, 1]`; level 0 belongs to the base.
    pub fn new(space: Arc<GroundSpace>, base: Option<Slice>, slabs: Vec<Slab>) -> Result<Self> {
        if let Some(Slice::Set(b)) = &base {
            b.check_in(&space)?;
        }
        let slabs: Vec<Slab> = slabs.into_iter().filter(|s| !s.body.is_empty()).collect();
        for (i, s) in slabs.iter().enumerate() {
            s.body.check_in(&space)?;
            let degenerate_ok = s.lo < s.hi || (s.lo == s.hi && s.lo_closed && s.hi_closed);
            if !(s.lo >= 0.0 && s.hi <= 1.0 && degenerate_ok) || (s.lo == 0.0 && s.lo_closed) {
                return Err(domain(format!("slab level interval ({}, {}) is not a nonempty interval in (0,1]", s.lo, s.hi)));
            }
            if i > 0 {
                let p = &slabs[i - 1];
                if p.hi > s.lo || (p.hi == s.lo && p.hi_closed && s.lo_closed) {
                    return Err(domain("slabs must be sorted and disjoint"));
                }
            }
        }
        let base = base.filter(|b| !b.is_empty());
        Ok(Self { space, base, slabs })
    }

    pub fn space(&self) -> &Arc<GroundSpace> {
        &self.space
    }

    pub fn base(&self) -> Option<&Slice> {
        self.base.as_ref()
    }

    pub fn slabs(&self) -> &[Slab] {
        &self.slabs
    }

    /// `⟨S⟩_α = {x : (x, α) ∈ S}`.
    pub fn slice(&self, alpha: f64) -> Slice {
        if alpha == 0.0 {
            return self.base.clone().unwrap_or(Slice::Set(GroundSet::Empty));
        }
        self.slabs
            .iter()
            .find(|s| s.contains_level(alpha))
            .map_or(Slice::Set(GroundSet::Empty), |s| Slice::Set(s.body.clone()))
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.slabs.iter().flat_map(|s| [s.lo, s.hi]).collect()
    }

    /// Builds a slab set from a slice function constant on the pieces cut out by `breaks`.
    fn from_slice_fn(space: Arc<GroundSpace>, breaks: Vec<f64>, f: impl Fn(f64) -> Slice) -> Self {
        let mut base = None;
        let mut slabs: Vec<Slab> = Vec::new();
        for piece in pieces(breaks) {
            let slice = f(piece.probe());
            if piece == Piece::At(0.0) {
                base = Some(slice);
                continue;
            }
            let body = match slice {
                Slice::Set(s) if !s.is_empty() => s,
                Slice::Set(_) => continue,
                Slice::Full => unreachable!("only the base slice may be the whole space"),
            };
            let slab = match piece {
                Piece::At(a) => Slab::closed(a, a, body),
                Piece::Between(a, b) => Slab { lo: a, hi: b, lo_closed: false, hi_closed: false, body },
            };
            if let Some(prev) = slabs.last_mut() {
                if prev.hi == slab.lo && prev.hi_closed != slab.lo_closed && prev.body.set_eq(&slab.body) {
                    prev.hi = slab.hi;
                    prev.hi_closed = slab.hi_closed;
                    continue;
                }
            }
            slabs.push(slab);
        }
        let base = base.filter(|b| !b.is_empty());
        Self { space, base, slabs }
    }

    /// Pointwise union of slices.
    pub fn union(&self, other: &SlabSet) -> Result<SlabSet> {
        if !same_space(&self.space, &other.space) {
            return Err(domain("slab sets live in different spaces"));
        }
        let mut breaks = self.breakpoints();
        breaks.extend(other.breakpoints());
        Ok(Self::from_slice_fn(self.space.clone(), breaks, |a| self.slice(a).union(&other.slice(a))))
    }

    /// Subset test, slice by slice.
    pub fn is_subset(&self, other: &SlabSet) -> bool {
        let mut breaks = self.breakpoints();
        breaks.extend(other.breakpoints());
        pieces(breaks).into_iter().all(|p| self.slice(p.probe()).is_subset(&other.slice(p.probe()), &self.space))
    }

    pub fn set_eq(&self, other: &SlabSet) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    /// Whether every slice is closed and `⟨S⟩_α = ⋂_{β<α} ⟨S⟩_β` for `α ∈ (0,1]`.
    ///
    /// With piecewise constant slices this holds iff slices never grow with
    /// the level and each breakpoint's slice equals the slice just below it.
    pub fn is_p_usc(&self) -> bool {
        let slices: Vec<Slice> = pieces(self.breakpoints()).into_iter().map(|p| self.slice(p.probe())).collect();
        let monotone = slices.windows(2).all(|w| w[1].is_subset(&w[0], &self.space));
        let left_continuous = slices.iter().enumerate().skip(2).step_by(2).all(|(i, s)| s.set_eq(&slices[i - 1], &self.space));
        monotone && left_continuous
    }

    /// `is_p_usc` with every slice compact.
    pub fn is_p_uscb(&self) -> bool {
        self.is_p_usc()
            && self.base.as_ref().is_none_or(|b| b.is_compact(&self.space))
            && self.slabs.iter().all(|s| s.body.is_compact())
    }

    /// The fuzzy set whose positive cuts are the positive-level slices.
    pub fn reconstruct(&self) -> Result<StepFuzzySet> {
        if !self.is_p_usc() {
            return Err(domain("slab set is not in P_USC"));
        }
        let mut levels = Vec::new();
        let mut cuts = Vec::new();
        for p in pieces(self.breakpoints()) {
            if let Piece::At(a) = p {
                if a > 0.0 {
                    if let Slice::Set(s) = self.slice(a) {
                        if !s.is_empty() {
                            levels.push(a);
                            cuts.push(s);
                        }
                    }
                }
            }
        }
        Ok(StepFuzzySet::from_cuts(self.space.clone(), levels, cuts)?.normalized())
    }
}

/// Which subset of `X × [0,1]` a view takes from a fuzzy set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ViewKind {
    /// `end u`, including `X × {0}`.
    End,
    /// `end u ∩ ([u]_0 × [0,1])`.
    Send,
    /// `end u ∩ ([u]_r × [r, t])`.
    Truncated { r: f64, t: f64 },
}

/// A lazily evaluated endograph-like view of a fuzzy set.
#[derive(Clone, Copy, Debug)]
pub struct EndographView<'a> {
    source: &'a StepFuzzySet,
    kind: ViewKind,
}

impl<'a> EndographView<'a> {
    pub fn new(source: &'a StepFuzzySet, kind: ViewKind) -> Result<Self> {
        if let ViewKind::Truncated { r, t } = kind {
            if !(0.0 <= r && r <= t && t <= 1.0) {
                return Err(domain(format!("truncation levels [{r}, {t}] must satisfy 0 ≤ r ≤ t ≤ 1")));
            }
        }
        Ok(Self { source, kind })
    }

    pub fn end(source: &'a StepFuzzySet) -> Self {
        Self { source, kind: ViewKind::End }
    }

    pub fn send(source: &'a StepFuzzySet) -> Self {
        Self { source, kind: ViewKind::Send }
    }

    pub fn slice(&self, alpha: f64) -> Slice {
        let u = self.source;
        match self.kind {
            ViewKind::End if alpha == 0.0 => Slice::Full,
            ViewKind::End | ViewKind::Send => Slice::Set(u.cut(alpha).clone()),
            ViewKind::Truncated { r, t } if alpha >= r && alpha <= t => Slice::Set(u.cut(alpha).clone()),
            ViewKind::Truncated { .. } => Slice::Set(GroundSet::Empty),
        }
    }

    pub fn to_slab_set(&self) -> SlabSet {
        let mut breaks = self.source.levels().to_vec();
        if let ViewKind::Truncated { r, t } = self.kind {
            breaks.extend([r, t]);
        }
        SlabSet::from_slice_fn(self.source.space().clone(), breaks, |a| self.slice(a))
    }
}

/// `end u` as a slab set.
pub fn end(u: &StepFuzzySet) -> SlabSet {
    EndographView::end(u).to_slab_set()
}

/// `send u` as a slab set.
pub fn send(u: &StepFuzzySet) -> SlabSet {
    EndographView::send(u).to_slab_set()
}

/// `end_r^t u` as a slab set.
pub fn truncated(u: &StepFuzzySet, r: f64, t: f64) -> Result<SlabSet> {
    Ok(EndographView::new(u, ViewKind::Truncated { r, t })?.to_slab_set())
}

fn check_same_space(u: &StepFuzzySet, v: &StepFuzzySet) -> Result<()> {
    if same_space(u.space(), v.space()) {
        Ok(())
    } else {
        Err(domain("fuzzy sets live in different spaces"))
    }
}

/// Distance from `a` to `end v`.
pub fn point_to_endograph(variant: ProductMetric, a: &LiftedPoint, v: &StepFuzzySet) -> Result<f64> {
    v.space().check_point(&a.x)?;
    let space = v.space();
    Ok(v.levels().iter().zip(v.cuts()).fold(a.t, |m, (&alpha, c)| {
        m.min(variant.combine(c.dist_to(space, &a.x), (a.t - alpha).max(0.0)))
    }))
}

/// Points of `[u]_floor` tagged with their membership.
fn tagged_points(u: &StepFuzzySet, start: usize) -> Vec<(&Point, f64)> {
    match &u.cuts()[start] {
        GroundSet::Points(ps) => ps.iter().map(|p| (p, u.membership(p))).collect(),
        _ => Vec::new(),
    }
}

/// `H*` from `u`'s endograph to `v`'s.
///
/// With `floor = None` both sides are full endographs (kernel capped by the
/// drop to `X × {0}`); with `floor = Some(r)` both are truncated to levels in
/// `[r, 1]`, which may produce `+∞`.
pub(crate) fn excess(variant: ProductMetric, u: &StepFuzzySet, v: &StepFuzzySet, floor: Option<f64>) -> ExtDist {
    let capped = floor.is_none();
    let Some(iu) = u.level_index(floor.unwrap_or(0.0)) else {
        return ExtDist::Finite(0.0);
    };
    let jv = v.level_index(floor.unwrap_or(0.0));
    let Some(jv) = jv else {
        return if capped { ExtDist::Finite(u.height()) } else { ExtDist::Infinity };
    };
    let space = u.space();
    let any_intervals = u.cuts()[iu..].iter().chain(&v.cuts()[jv..]).any(|c| matches!(c, GroundSet::Intervals(_)));

    if !any_intervals {
        let targets = tagged_points(v, jv);
        let best = tagged_points(u, iu).into_iter().fold(0.0_f64, |best, (x, t)| {
            let k = targets
                .iter()
                .map(|(y, s)| variant.combine(space.dist_unchecked(x, y), (t - s).max(0.0)))
                .fold(if capped { t } else { f64::INFINITY }, f64::min);
            best.max(k)
        });
        return ExtDist::from_f64(best);
    }

    let v_intervals: Vec<(f64, Vec<Interval>)> =
        v.levels()[jv..].iter().zip(&v.cuts()[jv..]).map(|(&a, c)| (a, c.to_intervals())).collect();
    let mut best = 0.0_f64;
    for (i, &t) in u.levels().iter().enumerate().skip(iu) {
        let mut tents = Vec::new();
        for (alpha, ivs) in &v_intervals {
            let c = (t - alpha).max(0.0);
            for iv in ivs {
                tents.push(match variant {
                    ProductMetric::Sum => Tent { lo: iv.lo, hi: iv.hi, offset: c },
                    ProductMetric::Max => Tent { lo: iv.lo - c, hi: iv.hi + c, offset: c },
                });
            }
        }
        let domain = u.cuts()[i].to_intervals();
        best = best.max(sup_of_envelope(&domain, &tents, capped.then_some(t)));
    }
    ExtDist::from_f64(best)
}

/// `H*(end u, end v)`; always finite.
pub fn endograph_semi(variant: ProductMetric, u: &StepFuzzySet, v: &StepFuzzySet) -> Result<ExtDist> {
    check_same_space(u, v)?;
    Ok(excess(variant, u, v, None))
}

/// `H_end(u, v)` (sum metric) or `H′_end(u, v)` (max metric).
pub fn endograph_dist(variant: ProductMetric, u: &StepFuzzySet, v: &StepFuzzySet) -> Result<ExtDist> {
    check_same_space(u, v)?;
    Ok(excess(variant, u, v, None).max(excess(variant, v, u, None)))
}

/// `H*(end_r u, end_r v)` for the endographs truncated to levels `[r, 1]`.
pub fn truncated_semi(variant: ProductMetric, u: &StepFuzzySet, v: &StepFuzzySet, r: f64) -> Result<ExtDist> {
    check_same_space(u, v)?;
    check_level(r)?;
    Ok(excess(variant, u, v, Some(r)))
}

/// `H(end_r u, end_r v)`.
pub fn truncated_dist(variant: ProductMetric, u: &StepFuzzySet, v: &StepFuzzySet, r: f64) -> Result<ExtDist> {
    check_same_space(u, v)?;
    check_level(r)?;
    Ok(excess(variant, u, v, Some(r)).max(excess(variant, v, u, Some(r))))
}

fn check_level(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("truncation level {r} must lie in (0,1]")))
    }
}

/// Both sides of the cut bound `H*([u]_α, [v]_β) ≤ H*(end u, end v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CutBoundReport {
    pub end_semi: ExtDist,
    pub cut_semi: ExtDist,
    /// `H*(end u, end v) < ε`.
    pub hypothesis_met: bool,
    /// The bound holds, or the hypothesis is not met.
    pub holds: bool,
}

/// Checks the cut bound for `α − β ≥ ε > 0`.
pub fn cut_bound_check(u: &StepFuzzySet, v: &StepFuzzySet, alpha: f64, beta: f64, eps: f64) -> Result<CutBoundReport> {
    check_same_space(u, v)?;
    if !(eps > 0.0 && alpha - beta >= eps && beta >= 0.0 && alpha <= 1.0) {
        return Err(domain(format!("need 0 ≤ β, α ≤ 1 and α − β ≥ ε > 0 (α={alpha}, β={beta}, ε={eps})")));
    }
    let end_semi = excess(ProductMetric::Sum, u, v, None);
    let cut_semi = semi_hausdorff_unchecked(u.space(), u.cut(alpha), v.cut(beta));
    let hypothesis_met = end_semi.value() < eps;
    let holds = !hypothesis_met || cut_semi <= end_semi;
    Ok(CutBoundReport { end_semi, cut_semi, hypothesis_met, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Point;

    fn line() -> Arc<GroundSpace> {
        Arc::new(GroundSpace::RealLine)
    }

    fn chi(xs: &[f64]) -> StepFuzzySet {
        StepFuzzySet::chi(line(), GroundSet::reals(xs.iter().copied())).unwrap()
    }

    fn chi_iv(lo: f64, hi: f64) -> StepFuzzySet {
        StepFuzzySet::chi(line(), GroundSet::interval(lo, hi).unwrap()).unwrap()
    }

    fn sum(u: &StepFuzzySet, v: &StepFuzzySet) -> f64 {
        endograph_dist(ProductMetric::Sum, u, v).unwrap().value()
    }

    #[test]
    fn slices_of_views() {
        let u = chi(&[0.0]);
        assert_eq!(EndographView::end(&u).slice(0.0), Slice::Full);
        assert_eq!(EndographView::end(&u).slice(0.7), Slice::Set(GroundSet::reals([0.0])));
        assert_eq!(EndographView::send(&u).slice(0.0), Slice::Set(GroundSet::reals([0.0])));
        let t = EndographView::new(&u, ViewKind::Truncated { r: 0.5, t: 0.9 }).unwrap();
        assert!(t.slice(0.3).is_empty());
        assert!(t.slice(0.95).is_empty());
        assert_eq!(t.slice(0.5), Slice::Set(GroundSet::reals([0.0])));
        assert!(EndographView::new(&u, ViewKind::Truncated { r: 0.6, t: 0.2 }).is_err());
    }

    #[test]
    fn p_usc_examples() {
        let u = StepFuzzySet::from_cuts(line(), vec![0.3, 0.8], vec![GroundSet::reals([0.0, 1.0]), GroundSet::reals([0.0])]).unwrap();
        assert!(end(&u).is_p_usc());
        assert!(send(&u).is_p_usc());

        let x = GroundSet::reals([0.0]);
        let two = SlabSet::new(line(), Some(Slice::Set(x.clone())), vec![Slab::closed(1.0, 1.0, x.clone())]).unwrap();
        assert!(!two.is_p_usc());

        let flat = SlabSet::new(line(), Some(Slice::Set(GroundSet::interval(0.0, 2.0).unwrap())), vec![]).unwrap();
        assert!(flat.is_p_uscb());
        let full = SlabSet::new(line(), Some(Slice::Full), vec![]).unwrap();
        assert!(full.is_p_usc() && !full.is_p_uscb());
    }

    #[test]
    fn growing_slices_are_not_p_usc() {
        let s = SlabSet::new(
            line(),
            Some(Slice::Full),
            vec![Slab::half_open(0.0, 0.5, GroundSet::reals([0.0])), Slab::half_open(0.5, 1.0, GroundSet::reals([0.0, 1.0]))],
        )
        .unwrap();
        assert!(!s.is_p_usc());
        assert!(s.reconstruct().is_err());
    }

    #[test]
    fn reconstruction() {
        let u = StepFuzzySet::from_cuts(line(), vec![0.3, 0.8], vec![GroundSet::reals([0.0, 1.0]), GroundSet::reals([0.0])]).unwrap();
        assert!(end(&u).reconstruct().unwrap().same_fuzzy_set(&u));
        assert!(send(&u).reconstruct().unwrap().same_fuzzy_set(&u));
        let a = chi_iv(0.0, 1.0);
        assert!(end(&a).reconstruct().unwrap().same_fuzzy_set(&a));
        let flat = SlabSet::new(line(), Some(Slice::Set(GroundSet::reals([2.0]))), vec![]).unwrap();
        assert!(flat.reconstruct().unwrap().is_empty());
        let r = end(&u).reconstruct().unwrap();
        assert!(send(&r).is_subset(&end(&u)) && end(&u).is_subset(&end(&r)));
    }

    #[test]
    fn truncated_slab_set_has_closed_bottom() {
        let u = StepFuzzySet::from_cuts(line(), vec![0.3, 0.8], vec![GroundSet::reals([0.0, 1.0]), GroundSet::reals([0.0])]).unwrap();
        let s = truncated(&u, 0.3, 1.0).unwrap();
        assert_eq!(s.slice(0.3), Slice::Set(GroundSet::reals([0.0, 1.0])));
        assert!(s.slice(0.2).is_empty());
        assert_eq!(s.slice(0.5), Slice::Set(GroundSet::reals([0.0])));
        assert!(!s.is_p_usc());
        let full = end(&u);
        assert!(s.is_subset(&full));
        assert!(s.union(&full).unwrap().set_eq(&full));
    }

    #[test]
    fn kernel_examples() {
        let b = chi(&[1.0, 4.0]);
        let a = LiftedPoint::new(Point::real(2.5), 0.9).unwrap();
        assert_eq!(point_to_endograph(ProductMetric::Sum, &a, &b).unwrap(), 0.9);
        let a = LiftedPoint::new(Point::real(1.5), 0.9).unwrap();
        assert_eq!(point_to_endograph(ProductMetric::Sum, &a, &b).unwrap(), 0.5);
        let zero = LiftedPoint::new(Point::real(100.0), 0.0).unwrap();
        assert_eq!(point_to_endograph(ProductMetric::Sum, &zero, &b).unwrap(), 0.0);
        let e = StepFuzzySet::empty(line());
        let a = LiftedPoint::new(Point::real(3.0), 0.4).unwrap();
        assert_eq!(point_to_endograph(ProductMetric::Sum, &a, &e).unwrap(), 0.4);
    }

    #[test]
    fn characteristic_identity() {
        assert_eq!(sum(&chi(&[0.0]), &chi(&[3.0])), 1.0);
        assert_eq!(sum(&chi(&[0.0]), &chi(&[0.3])), 0.3);
        assert_eq!(sum(&chi_iv(0.0, 1.0), &chi_iv(0.0, 1.25)), 0.25);
        let e = StepFuzzySet::empty(line());
        let u = StepFuzzySet::from_cuts(line(), vec![0.4, 0.7], vec![GroundSet::reals([0.0, 5.0]), GroundSet::reals([0.0])]).unwrap();
        assert_eq!(sum(&u, &e), 0.7);
        assert_eq!(sum(&u, &u), 0.0);
    }

    #[test]
    fn unbounded_cuts_stay_finite() {
        let u = chi_iv(f64::NEG_INFINITY, 0.0);
        let v = chi_iv(0.0, f64::INFINITY);
        assert_eq!(sum(&u, &v), 1.0);
    }

    #[test]
    fn truncated_distances() {
        let u = StepFuzzySet::from_cuts(line(), vec![0.25, 1.0], vec![GroundSet::reals([0.0, 3.0]), GroundSet::reals([0.0])]).unwrap();
        let v = chi(&[0.0]);
        assert_eq!(truncated_dist(ProductMetric::Sum, &u, &v, 0.5).unwrap(), ExtDist::Finite(0.0));
        assert_eq!(truncated_dist(ProductMetric::Sum, &u, &v, 0.25).unwrap(), ExtDist::Finite(3.0));
        let low = StepFuzzySet::from_cuts(line(), vec![0.2], vec![GroundSet::reals([0.0])]).unwrap();
        assert_eq!(truncated_semi(ProductMetric::Sum, &v, &low, 0.5).unwrap(), ExtDist::Infinity);
        assert_eq!(truncated_semi(ProductMetric::Sum, &low, &v, 0.5).unwrap(), ExtDist::Finite(0.0));
        assert!(truncated_dist(ProductMetric::Sum, &u, &v, 0.0).is_err());
    }

    #[test]
    fn cut_bound_examples() {
        let u = chi(&[0.0]);
        let r = cut_bound_check(&u, &u, 1.0, 0.5, 0.5).unwrap();
        assert!(r.hypothesis_met && r.holds);
        assert_eq!(r.cut_semi, ExtDist::Finite(0.0));

        let v = chi(&[0.1]);
        let r = cut_bound_check(&u, &v, 1.0, 0.5, 0.5).unwrap();
        assert!((r.end_semi.value() - 0.1).abs() < 1e-12);
        assert!((r.cut_semi.value() - 0.1).abs() < 1e-12);
        assert!(r.hypothesis_met && r.holds);

        let far = chi(&[9.0]);
        let r = cut_bound_check(&u, &far, 1.0, 0.5, 0.5).unwrap();
        assert!(!r.hypothesis_met && r.holds);
        assert!(cut_bound_check(&u, &v, 0.6, 0.5, 0.5).is_err());
    }
}
