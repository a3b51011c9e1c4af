//! Family-level ε-nets and tolerance audits of total boundedness, relative
//! compactness and compactness, plus the staged diagonal extraction.
//!
//! Every backend is complete, so relative compactness is audited as total
//! boundedness. Audit constants (`2ε`, `3ε`, `4ε`) come from the triangle
//! inequality budgets of each implication; they are sound, not tight.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::convergence::{gamma_limit_check, FuzzySeqWindow, GammaVerdict};
use crate::endograph::{excess, truncated, SlabSet, Slab, Slice};
use crate::error::{domain, Error, Result};
use crate::fuzzy::{same_space, StepFuzzySet};
use crate::metric::{GroundSpace, Point, ProductMetric};
use crate::sets::{check_eps, greedy_cover, greedy_eps_net, hausdorff_unchecked, semi_hausdorff_unchecked, GroundSet, NetOutcome};

/// A finite family of fuzzy sets over one space.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyFamily {
    space: Arc<GroundSpace>,
    members: Vec<StepFuzzySet>,
    height_tag: Option<f64>,
}

impl FuzzyFamily {
    pub fn new(space: Arc<GroundSpace>, members: Vec<StepFuzzySet>) -> Result<Self> {
        if members.iter().any(|u| !same_space(u.space(), &space)) {
            return Err(domain("family members live in different spaces"));
        }
        Ok(Self { space, members, height_tag: None })
    }

    /// A family whose members all have height `r`.
    pub fn with_height(space: Arc<GroundSpace>, members: Vec<StepFuzzySet>, r: f64) -> Result<Self> {
        let mut f = Self::new(space, members)?;
        if let Some(u) = f.members.iter().position(|u| u.height() != r) {
            return Err(domain(format!("member {u} has height {} instead of {r}", f.members[u].height())));
        }
        f.height_tag = Some(r);
        Ok(f)
    }

    pub fn space(&self) -> &Arc<GroundSpace> {
        &self.space
    }

    pub fn members(&self) -> &[StepFuzzySet] {
        &self.members
    }

    pub fn height_tag(&self) -> Option<f64> {
        self.height_tag
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn max_height(&self) -> f64 {
        self.members.iter().map(StepFuzzySet::height).fold(0.0, f64::max)
    }

    fn require_uscg(&self) -> Result<()> {
        match self.members.iter().position(|u| !u.classify().is_uscg) {
            Some(i) => Err(domain(format!("member {i} has a non-compact positive cut"))),
            None => Ok(()),
        }
    }
}

/// `U(α) = ⋃_{u ∈ U} [u]_α`.
pub fn family_union(u: &FuzzyFamily, alpha: f64) -> Result<GroundSet> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain(format!("level {alpha} must lie in (0,1]")));
    }
    Ok(union_at(u.members(), alpha))
}

fn union_at<'a>(members: impl IntoIterator<Item = &'a StepFuzzySet>, alpha: f64) -> GroundSet {
    members.into_iter().fold(GroundSet::Empty, |acc, u| acc.union(u.cut(alpha)))
}

/// Outcome of a budgeted greedy net over family members (indices into the family).
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyNet {
    Net { centers: Vec<usize>, radius: f64 },
    Failure { uncovered: usize },
}

impl FamilyNet {
    pub fn is_net(&self) -> bool {
        matches!(self, FamilyNet::Net { .. })
    }

    pub fn centers(&self) -> Option<&[usize]> {
        match self {
            FamilyNet::Net { centers, .. } => Some(centers),
            FamilyNet::Failure { .. } => None,
        }
    }
}

fn to_family_net(r: std::result::Result<Vec<usize>, usize>, radius: f64) -> FamilyNet {
    match r {
        Ok(centers) => FamilyNet::Net { centers, radius },
        Err(uncovered) => FamilyNet::Failure { uncovered },
    }
}

fn hend(u: &StepFuzzySet, v: &StepFuzzySet) -> f64 {
    excess(ProductMetric::Sum, u, v, None).max(excess(ProductMetric::Sum, v, u, None)).value()
}

/// Greedy net of family members under `H_end`; centers are members.
pub fn family_eps_net_hend(u: &FuzzyFamily, eps: f64, budget: usize) -> Result<FamilyNet> {
    check_eps(eps)?;
    Ok(to_family_net(greedy_cover(u.members(), eps, budget, hend), eps))
}

/// Greedy net of a list of ground sets under `H`; centers are members.
pub fn family_eps_net_hausdorff(space: &GroundSpace, d: &[GroundSet], eps: f64, budget: usize) -> Result<FamilyNet> {
    check_eps(eps)?;
    for s in d {
        s.check_in(space)?;
    }
    Ok(to_family_net(greedy_cover(d, eps, budget, |a, b| hausdorff_unchecked(space, a, b).value()), eps))
}

/// One implication checked by an audit.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionCheck {
    pub name: String,
    pub hypothesis_met: bool,
    pub conclusion_holds: bool,
    pub detail: String,
}

impl DirectionCheck {
    /// The implication holds (vacuously when the hypothesis fails).
    pub fn holds(&self) -> bool {
        !self.hypothesis_met || self.conclusion_holds
    }
}

/// The implications checked by one audit run.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub audit: String,
    pub checks: Vec<DirectionCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(DirectionCheck::holds)
    }
}

/// Largest gap between consecutive levels of `{0} ∪ grid ∪ {top}`, restricted to `[0, top]`.
fn level_gap(grid: &[f64], top: f64) -> f64 {
    let mut levels: Vec<f64> = grid.iter().copied().filter(|&a| a > 0.0 && a <= top).collect();
    levels.extend([0.0, top]);
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    levels.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}

fn check_grid(grid: &[f64]) -> Result<Vec<f64>> {
    if grid.iter().any(|&a| !(a > 0.0 && a <= 1.0)) {
        return Err(domain("grid levels must lie in (0,1]"));
    }
    let mut g = grid.to_vec();
    g.sort_by(f64::total_cmp);
    g.dedup();
    Ok(g)
}

/// Greedy `radius`-net of `a` without a budget; `None` when `a` is unbounded.
fn unbounded_net(space: &GroundSpace, a: &GroundSet, radius: f64) -> Option<GroundSet> {
    match greedy_eps_net(space, a, radius, usize::MAX).expect("validated radius") {
        NetOutcome::Net(n) => Some(GroundSet::points(n.centers)),
        NetOutcome::Failure(_) => None,
    }
}

/// Signature of a set against net points: which points lie within `eps`.
fn signature(space: &GroundSpace, net: &[Point], c: &GroundSet, eps: f64) -> Vec<usize> {
    net.iter().enumerate().filter(|(_, z)| c.dist_to(space, z) <= eps).map(|(i, _)| i).collect()
}

fn class_count<K: Ord>(keys: impl IntoIterator<Item = K>) -> usize {
    keys.into_iter().map(|k| (k, ())).collect::<BTreeMap<_, _>>().len()
}

/// Audits "U is totally bounded under H_end iff every U(α) is totally bounded".
///
/// (⇒) If a greedy `ε`-net of members succeeds within `budget`, then for each
/// grid level `α > 2ε` the union `U(α)` lies within `2ε` of a greedy `ε`-net of
/// `⋃_{c center} [c]_{α−ε}`.
///
/// (⇐) If greedy `ε`-nets of every `U(α_k)` succeed within `budget`, members
/// sharing the same net signature on every level are within `2ε + gap` of each
/// other, so a greedy family net at `3ε + gap` succeeds with one center per
/// signature class.
pub fn tb_audit(u: &FuzzyFamily, eps: f64, grid: &[f64], budget: usize) -> Result<AuditReport> {
    check_eps(eps)?;
    u.require_uscg()?;
    let grid = check_grid(grid)?;
    let space = u.space();
    let mut checks = Vec::new();

    let family = family_eps_net_hend(u, eps, budget)?;
    let mut forward = DirectionCheck {
        name: "family net ⇒ cut-union nets".into(),
        hypothesis_met: family.is_net(),
        conclusion_holds: true,
        detail: match &family {
            FamilyNet::Net { centers, .. } => format!("{} family centers", centers.len()),
            FamilyNet::Failure { uncovered } => format!("member {uncovered} uncovered"),
        },
    };
    if let Some(centers) = family.centers() {
        for &alpha in grid.iter().filter(|&&a| a > 2.0 * eps) {
            let seeds = union_at(centers.iter().map(|&i| &u.members()[i]), alpha - eps);
            let z = unbounded_net(space, &seeds, eps).expect("USCG cuts are bounded");
            let excess = semi_hausdorff_unchecked(space, &union_at(u.members(), alpha), &z);
            if !excess.le(2.0 * eps) {
                forward.conclusion_holds = false;
                forward.detail = format!("U({alpha}) exceeds the weak 2ε-net by {excess}");
                break;
            }
        }
    }
    checks.push(forward);

    let mut nets: Vec<Vec<Point>> = Vec::new();
    let mut failure = None;
    for &alpha in &grid {
        match greedy_eps_net(space, &union_at(u.members(), alpha), eps, budget)? {
            NetOutcome::Net(n) => nets.push(n.centers),
            NetOutcome::Failure(w) => {
                failure = Some(format!("U({alpha}): {w}"));
                break;
            }
        }
    }
    let mut backward = DirectionCheck {
        name: "cut-union nets ⇒ family net".into(),
        hypothesis_met: failure.is_none(),
        conclusion_holds: true,
        detail: failure.unwrap_or_default(),
    };
    if backward.hypothesis_met {
        let classes = class_count(u.members().iter().map(|m| {
            grid.iter().zip(&nets).map(|(&a, net)| signature(space, net, m.cut(a), eps)).collect::<Vec<_>>()
        }));
        let radius = 3.0 * eps + level_gap(&grid, u.max_height());
        let net = family_eps_net_hend(u, radius, classes.max(1))?;
        backward.conclusion_holds = net.is_net();
        backward.detail = format!("{classes} signature classes, family net at {radius}: {}", if net.is_net() { "ok" } else { "failed" });
    }
    checks.push(backward);
    Ok(AuditReport { audit: "tb_audit".into(), checks })
}

/// Audits "D is totally bounded under H iff ⋃D is totally bounded" with the
/// same construction as [`tb_audit`] on ground sets.
pub fn kx_tb_audit(space: &GroundSpace, d: &[GroundSet], eps: f64, budget: usize) -> Result<AuditReport> {
    check_eps(eps)?;
    for s in d {
        s.check_in(space)?;
        if !s.is_compact() {
            return Err(domain(format!("member {s} is unbounded")));
        }
    }
    let union = d.iter().fold(GroundSet::Empty, |acc, s| acc.union(s));
    let mut checks = Vec::new();

    let family = family_eps_net_hausdorff(space, d, eps, budget)?;
    let mut forward = DirectionCheck {
        name: "family net ⇒ union net".into(),
        hypothesis_met: family.is_net(),
        conclusion_holds: true,
        detail: String::new(),
    };
    if let Some(centers) = family.centers() {
        let seeds = centers.iter().fold(GroundSet::Empty, |acc, &i| acc.union(&d[i]));
        let z = unbounded_net(space, &seeds, eps).expect("compact members");
        let excess = semi_hausdorff_unchecked(space, &union, &z);
        forward.conclusion_holds = excess.le(2.0 * eps);
        forward.detail = format!("{} family centers, union excess {excess}", centers.len());
    }
    checks.push(forward);

    let net = greedy_eps_net(space, &union, eps, budget)?;
    let mut backward = DirectionCheck {
        name: "union net ⇒ family net".into(),
        hypothesis_met: net.is_net(),
        conclusion_holds: true,
        detail: String::new(),
    };
    if let NetOutcome::Net(n) = net {
        let classes = class_count(d.iter().map(|s| signature(space, &n.centers, s, eps)));
        let fam = family_eps_net_hausdorff(space, d, 3.0 * eps, classes.max(1))?;
        backward.conclusion_holds = fam.is_net();
        backward.detail = format!("{classes} signature classes");
    }
    checks.push(backward);
    Ok(AuditReport { audit: "kx_tb_audit".into(), checks })
}

/// Audits `H_end(χ_A, χ_B) = min(H(A,B), 1)` on all pairs and compares greedy
/// family nets of `D` and of its characteristic functions.
pub fn chi_transfer_audit(space: &Arc<GroundSpace>, d: &[GroundSet], eps: f64) -> Result<AuditReport> {
    check_eps(eps)?;
    let chis = d.iter().map(|a| StepFuzzySet::chi(space.clone(), a.clone())).collect::<Result<Vec<_>>>()?;
    let mut mismatch = None;
    'pairs: for i in 0..d.len() {
        for j in 0..d.len() {
            let h = hausdorff_unchecked(space, &d[i], &d[j]).value().min(1.0);
            let he = hend(&chis[i], &chis[j]);
            if h != he {
                mismatch = Some(format!("pair ({i},{j}): min(H,1) = {h}, H_end = {he}"));
                break 'pairs;
            }
        }
    }
    let identity = DirectionCheck {
        name: "H_end(χ_A, χ_B) = min(H(A,B), 1)".into(),
        hypothesis_met: true,
        conclusion_holds: mismatch.is_none(),
        detail: mismatch.unwrap_or_default(),
    };
    let ground = family_eps_net_hausdorff(space, d, eps, usize::MAX)?;
    let lifted = to_family_net(greedy_cover(&chis, eps.min(1.0), usize::MAX, hend), eps.min(1.0));
    let nets = DirectionCheck {
        name: "family nets agree".into(),
        hypothesis_met: eps < 1.0,
        conclusion_holds: ground.centers() == lifted.centers(),
        detail: format!("{:?} vs {:?}", ground.centers(), lifted.centers()),
    };
    Ok(AuditReport { audit: "chi_transfer_audit".into(), checks: vec![identity, nets] })
}

/// Level schedule for the diagonal extraction.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalSchedule {
    xi: f64,
    alphas: Vec<f64>,
    eps: Vec<f64>,
    net_budget: usize,
}

impl DiagonalSchedule {
    /// Requires `0 < α_{k+1} < α_k ≤ min(ξ, 1/k)` and positive `ε_k`.
    pub fn new(xi: f64, alphas: Vec<f64>, eps: Vec<f64>, net_budget: usize) -> Result<Self> {
        if !(xi > 0.0 && xi <= 1.0) {
            return Err(domain(format!("level floor ξ = {xi} must lie in (0,1]")));
        }
        if alphas.is_empty() || alphas.len() != eps.len() {
            return Err(domain("schedule needs one ε per level and at least one stage"));
        }
        for (k, &a) in alphas.iter().enumerate() {
            let bound = xi.min(1.0 / (k + 1) as f64);
            if !(a > 0.0 && a <= bound) || (k > 0 && a >= alphas[k - 1]) {
                return Err(domain(format!("stage {} level {a} violates 0 < α_(k+1) < α_k ≤ min(ξ, 1/k)", k + 1)));
            }
        }
        for &e in &eps {
            check_eps(e)?;
        }
        if net_budget == 0 {
            return Err(domain("net budget must be at least 1"));
        }
        Ok(Self { xi, alphas, eps, net_budget })
    }

    /// `α_k = ε_k = ξ·2^{−k}` for `k = 1..=stages`.
    pub fn dyadic(xi: f64, stages: usize, net_budget: usize) -> Result<Self> {
        let alphas: Vec<f64> = (1..=stages).map(|k| xi * 0.5f64.powi(k as i32)).collect();
        Self::new(xi, alphas.clone(), alphas, net_budget)
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn eps(&self) -> &[f64] {
        &self.eps
    }

    pub fn stages(&self) -> usize {
        self.alphas.len()
    }

    pub fn net_budget(&self) -> usize {
        self.net_budget
    }
}

/// What one extraction stage selected.
#[derive(Clone, Debug, PartialEq)]
pub struct StageRecord {
    pub alpha: f64,
    pub eps: f64,
    pub pool_size: usize,
    pub net_size: usize,
    /// Window index of the center whose cluster was kept.
    pub center: usize,
    /// Window indices of the kept cluster.
    pub cluster: Vec<usize>,
}

/// A successful diagonal extraction.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtractionResult {
    /// Window indices of the diagonal members, one per stage.
    pub subsequence: Vec<usize>,
    /// Window index of the member whose truncated endographs form the stage limits.
    pub representative: usize,
    pub stages: Vec<StageRecord>,
    /// `v^k`: truncated endograph of the representative over `[α_k, 1]`.
    pub stage_limits: Vec<SlabSet>,
    /// `v`: union of the stage limits, the base `X × {0}`, and the last cut filled down to level 0.
    pub limit: SlabSet,
    /// `H(end_{α_k} u_k, v^k)` for the `k`-th diagonal member.
    pub stage_residuals: Vec<f64>,
    /// `H_end(u_k, reconstruct(v))` for the `k`-th diagonal member.
    pub final_residuals: Vec<f64>,
}

impl ExtractionResult {
    /// Stages whose final residual exceeds `max(α_k, 3ε_k)` or `max(stage residual, α_k)`.
    pub fn bound_violations(&self) -> Vec<usize> {
        (0..self.stages.len())
            .filter(|&k| {
                let s = &self.stages[k];
                let r = self.final_residuals[k];
                r > s.alpha.max(3.0 * s.eps) + 1e-12 || r > self.stage_residuals[k].max(s.alpha) + 1e-12
            })
            .map(|k| k + 1)
            .collect()
    }

    pub fn limit_fuzzy_set(&self) -> StepFuzzySet {
        self.limit.reconstruct().expect("the assembled limit is in P_USC")
    }
}

/// Outcome of a diagonal extraction that ran to completion or hit a non-totally-bounded stage.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtractionOutcome {
    Extracted(Box<ExtractionResult>),
    /// The stage-`stage` net ran out of budget; `uncovered` is a window index.
    NetFailure { stage: usize, uncovered: usize },
}

/// Staged pigeonhole extraction of a convergent subsequence and its limit.
///
/// Stage `k` covers the current pool with a greedy `ε_k`-net of truncated
/// endographs `end_{α_k}` (Hausdorff distance), keeps the first cluster (in
/// center order) holding at least an average share of the pool, and takes
/// its `k`-th member as the diagonal member. The last member of the final
/// cluster represents the limit.
pub fn diagonal_extract(w: &FuzzySeqWindow, sched: &DiagonalSchedule) -> Result<ExtractionOutcome> {
    for n in w.tail() {
        let u = w.get(n);
        if !u.classify().is_uscg {
            return Err(domain(format!("member {n} has a non-compact positive cut")));
        }
        if u.height() < sched.xi {
            return Err(domain(format!("member {n} has height {} below ξ = {}", u.height(), sched.xi)));
        }
    }
    let mut pool: Vec<usize> = w.tail().collect();
    let mut stages = Vec::new();
    let mut subsequence = Vec::new();
    for (k, (&alpha, &eps)) in sched.alphas.iter().zip(&sched.eps).enumerate() {
        let stage = k + 1;
        let trunc = |a: &usize, b: &usize| {
            let (u, v) = (w.get(*a), w.get(*b));
            excess(ProductMetric::Sum, u, v, Some(alpha)).max(excess(ProductMetric::Sum, v, u, Some(alpha))).value()
        };
        let centers = match greedy_cover(&pool, eps, sched.net_budget, trunc) {
            Ok(c) => c,
            Err(i) => return Ok(ExtractionOutcome::NetFailure { stage, uncovered: pool[i] }),
        };
        let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); centers.len()];
        for m in &pool {
            let c = centers.iter().position(|&c| trunc(&pool[c], m) <= eps).expect("net covers the pool");
            clusters[c].push(*m);
        }
        let share = pool.len().div_ceil(centers.len());
        let pick = clusters.iter().position(|c| c.len() >= share).expect("some cluster holds an average share");
        let cluster = clusters.swap_remove(pick);
        if cluster.len() < stage {
            return Err(Error::Budget {
                stage,
                reason: format!("kept cluster has {} members, stage needs {stage}", cluster.len()),
            });
        }
        subsequence.push(cluster[stage - 1]);
        stages.push(StageRecord {
            alpha,
            eps,
            pool_size: pool.len(),
            net_size: centers.len(),
            center: pool[centers[pick]],
            cluster: cluster.clone(),
        });
        pool = cluster;
    }

    let representative = *pool.last().expect("final cluster is nonempty");
    let rep = w.get(representative);
    let stage_limits = sched.alphas.iter().map(|&a| truncated(rep, a, 1.0)).collect::<Result<Vec<_>>>()?;
    let last_alpha = *sched.alphas.last().expect("schedule has a stage");
    let fill = SlabSet::new(rep.space().clone(), Some(Slice::Full), vec![Slab::half_open(0.0, last_alpha, rep.cut(last_alpha).clone())])?;
    let limit = stage_limits.iter().try_fold(fill, |acc, s| acc.union(s))?;
    let limit_set = limit.reconstruct()?;

    let stage_residuals = subsequence
        .iter()
        .zip(&sched.alphas)
        .map(|(&n, &a)| {
            let u = w.get(n);
            excess(ProductMetric::Sum, u, rep, Some(a)).max(excess(ProductMetric::Sum, rep, u, Some(a))).value()
        })
        .collect();
    let final_residuals = subsequence.iter().map(|&n| hend(w.get(n), &limit_set)).collect();
    Ok(ExtractionOutcome::Extracted(Box::new(ExtractionResult {
        subsequence,
        representative,
        stages,
        stage_limits,
        limit,
        stage_residuals,
        final_residuals,
    })))
}

/// Result of a closedness probe.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosednessReport {
    /// Final residual of the extracted limit candidate, if any.
    pub candidate_residual: Option<f64>,
    /// Index into the family of the member nearest the candidate, with its distance.
    pub nearest: Option<(usize, f64)>,
    pub passed: bool,
}

/// Extracts a limit candidate from `w` and checks that some member of `u` lies within `2ε` of it.
///
/// The schedule is dyadic from `ξ = min height` with enough stages that the
/// residual bound `3ξ·2^{−K}` is at most `ε`.
pub fn closedness_probe(u: &FuzzyFamily, w: &FuzzySeqWindow, eps: f64) -> Result<ClosednessReport> {
    check_eps(eps)?;
    if !same_space(u.space(), w.space()) {
        return Err(domain("family and window live in different spaces"));
    }
    let xi = w.tail().map(|n| w.get(n).height()).fold(1.0, f64::min);
    if xi <= 0.0 {
        return Err(domain("window contains the empty fuzzy set"));
    }
    let stages = ((3.0 * xi / eps).log2().ceil().max(1.0)) as usize;
    let sched = DiagonalSchedule::dyadic(xi, stages, w.len())?;
    let result = match diagonal_extract(w, &sched)? {
        ExtractionOutcome::Extracted(r) => r,
        ExtractionOutcome::NetFailure { .. } => {
            return Ok(ClosednessReport { candidate_residual: None, nearest: None, passed: true });
        }
    };
    let residual = *result.final_residuals.last().expect("at least one stage");
    if residual > eps {
        return Ok(ClosednessReport { candidate_residual: Some(residual), nearest: None, passed: true });
    }
    let candidate = result.limit_fuzzy_set();
    let nearest = u
        .members()
        .iter()
        .enumerate()
        .map(|(i, m)| (i, hend(&candidate, m)))
        .min_by(|a, b| a.1.total_cmp(&b.1));
    let passed = nearest.is_none_or(|(_, d)| d <= 2.0 * eps) && !u.is_empty();
    Ok(ClosednessReport { candidate_residual: Some(residual), nearest, passed })
}

/// Result of the height-slice restriction audit.
#[derive(Clone, Debug, PartialEq)]
pub struct FrRestrictReport {
    /// `U(α) = ∅` for every grid level above `r`.
    pub unions_empty_above: bool,
    pub restricted: AuditReport,
    pub full: AuditReport,
    /// Both audits produced the same implication outcomes.
    pub verdicts_equal: bool,
}

impl FrRestrictReport {
    pub fn passed(&self) -> bool {
        self.unions_empty_above && self.verdicts_equal
    }
}

/// Runs [`tb_audit`] on `grid ∩ (0, r]` and on the full grid for a height-`r` family.
pub fn fr_restrict_audit(u: &FuzzyFamily, eps: f64, grid: &[f64], budget: usize) -> Result<FrRestrictReport> {
    let r = u.height_tag().ok_or_else(|| domain("family has no height tag"))?;
    if let Some(i) = u.members().iter().position(|m| m.height() != r) {
        return Err(domain(format!("member {i} has height {} instead of {r}", u.members()[i].height())));
    }
    let grid = check_grid(grid)?;
    let unions_empty_above = grid.iter().filter(|&&a| a > r).all(|&a| union_at(u.members(), a).is_empty());
    let low: Vec<f64> = grid.iter().copied().filter(|&a| a <= r).collect();
    let restricted = tb_audit(u, eps, &low, budget)?;
    let full = tb_audit(u, eps, &grid, budget)?;
    let outcome = |a: &AuditReport| a.checks.iter().map(|c| (c.hypothesis_met, c.conclusion_holds)).collect::<Vec<_>>();
    let verdicts_equal = outcome(&restricted) == outcome(&full);
    Ok(FrRestrictReport { unions_empty_above, restricted, full, verdicts_equal })
}

/// Raw verdicts of the endograph-convergence equivalence audit.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub tail_distance: f64,
    /// A: `H_end(u_n, u) ≤ ε` on the tail.
    pub a: bool,
    /// B: Γ check at `2ε`.
    pub b: bool,
    pub gamma: GammaVerdict,
    /// C: for grid levels `α > ε`, the tail cut union lies within `2ε` of a greedy `ε`-net of `[u]_{α−ε}`.
    pub c: bool,
    /// C′: for grid levels `α > ε/2`, the tail cut union lies within `ε/2` of a greedy `ε/4`-net of `[u]_{α−ε/2}`.
    pub c_prime: bool,
    /// The grid is fine enough for (B ∧ C′) ⇒ A at `4ε`.
    pub converse_applicable: bool,
    pub forward_holds: bool,
    pub converse_holds: bool,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.forward_holds && self.converse_holds
    }
}

/// Whether `⋃_{n ≥ n₀} [u_n]_α` lies within `cover` of a greedy `net`-net of
/// `[u]_{α−shift}` for every grid level `α > shift`.
fn cut_unions_covered(w: &FuzzySeqWindow, u: &StepFuzzySet, grid: &[f64], net: f64, shift: f64, cover: f64) -> bool {
    let space = u.space();
    grid.iter().filter(|&&a| a > shift).all(|&alpha| {
        let z = unbounded_net(space, u.cut(alpha - shift), net).expect("USCG cuts are bounded");
        let union = union_at(w.tail().map(|n| w.get(n)), alpha);
        semi_hausdorff_unchecked(space, &union, &z).le(cover)
    })
}

/// Audits "H_end convergence ⇔ Γ convergence plus relatively compact cut unions".
///
/// Asserts A ⇒ (B ∧ C), and (B ∧ C′) ⇒ (tail distance ≤ 4ε) whenever the
/// grid gaps within `(ε/2, max height]` are at most `3ε` and the lowest such
/// level is at most `4ε`.
pub fn hend_iff_gamma_plus_compact_audit(w: &FuzzySeqWindow, u: &StepFuzzySet, eps: f64, grid: &[f64]) -> Result<EquivalenceReport> {
    check_eps(eps)?;
    let grid = check_grid(grid)?;
    if !same_space(w.space(), u.space()) {
        return Err(domain("candidate limit lives in a different space"));
    }
    if !u.classify().is_uscg || w.tail().any(|n| !w.get(n).classify().is_uscg) {
        return Err(domain("members and limit must have compact positive cuts"));
    }
    let tail_distance = w.tail_distance(u)?;
    let a = tail_distance <= eps;
    let gamma = gamma_limit_check(w, u, 2.0 * eps)?;
    let b = gamma.passed;
    let c = cut_unions_covered(w, u, &grid, eps, eps, 2.0 * eps);
    let c_prime = cut_unions_covered(w, u, &grid, eps / 4.0, eps / 2.0, eps / 2.0);

    let top = w.tail().map(|n| w.get(n).height()).fold(u.height(), f64::max);
    let used: Vec<f64> = grid.iter().copied().filter(|&g| g > eps / 2.0 && g <= top).collect();
    let converse_applicable = match used.first() {
        None => top <= 4.0 * eps,
        Some(&lowest) => {
            let mut levels = used.clone();
            levels.push(top);
            let gap = levels.windows(2).map(|p| p[1] - p[0]).fold(0.0, f64::max);
            gap <= 3.0 * eps && lowest <= 4.0 * eps
        }
    };
    let forward_holds = !a || (b && c);
    let converse_holds = !(b && c_prime && converse_applicable) || tail_distance <= 4.0 * eps;
    Ok(EquivalenceReport { tail_distance, a, b, gamma, c, c_prime, converse_applicable, forward_holds, converse_holds })
}
