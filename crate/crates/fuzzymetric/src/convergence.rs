//! Γ-convergence of fuzzy-set sequences at tolerance.
//!
//! `u_n` Γ-converges to `u` when `end u_n` Kuratowski-converges to `end u`.
//! On a finite window the check has two parts, mirroring
//! [`crate::sets::kuratowski_converges`]:
//!
//! * `end u ⊆ liminf_ε end u_n`, decided exactly as `H*(end u, end u_n) ≤ ε`
//!   on the whole tail;
//! * `limsup_ε end u_n ⊆ N_2ε(end u)`, decided on lifted probe points (cut
//!   representatives of the members at each of their levels) that recur in
//!   every suffix block. The wider acceptance radius keeps points drifting
//!   toward the limit from being flagged when they sit just past `ε`.

use std::sync::Arc;

use crate::endograph::{endograph_dist, excess, point_to_endograph};
use crate::error::{domain, Result};
use crate::fuzzy::{same_space, StepFuzzySet};
use crate::metric::{GroundSpace, LiftedPoint, ProductMetric};
use crate::sets::{check_eps, hits_every_block, ExtDist};

/// A window `u_1, …, u_N` of a fuzzy-set sequence with a tail start (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzySeqWindow {
    members: Vec<StepFuzzySet>,
    tail_start: usize,
}

impl FuzzySeqWindow {
    pub fn new(members: Vec<StepFuzzySet>, tail_start: usize) -> Result<Self> {
        if tail_start < 1 || tail_start > members.len() {
            return Err(domain(format!("tail start {tail_start} outside 1..={}", members.len())));
        }
        let space = members[0].space();
        if members.iter().any(|u| !same_space(u.space(), space)) {
            return Err(domain("window members live in different spaces"));
        }
        Ok(Self { members, tail_start })
    }

    pub fn members(&self) -> &[StepFuzzySet] {
        &self.members
    }

    pub fn tail_start(&self) -> usize {
        self.tail_start
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn space(&self) -> &Arc<GroundSpace> {
        self.members[0].space()
    }

    /// `u_n` for a 1-based index.
    pub fn get(&self, n: usize) -> &StepFuzzySet {
        &self.members[n - 1]
    }

    /// Tail indices `tail_start..=N`.
    pub fn tail(&self) -> std::ops::RangeInclusive<usize> {
        self.tail_start..=self.members.len()
    }

    /// The subwindow `u_{n₀}, u_{n₀+k}, u_{n₀+2k}, …` starting at the tail, with tail start 1.
    pub fn stride(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(domain("stride must be positive"));
        }
        let members = self.tail().step_by(k).map(|n| self.get(n).clone()).collect();
        Self::new(members, 1)
    }

    /// `max_{n ≥ n₀} H_end(u_n, u)`.
    pub fn tail_distance(&self, u: &StepFuzzySet) -> Result<f64> {
        let mut worst = 0.0_f64;
        for n in self.tail() {
            worst = worst.max(endograph_dist(ProductMetric::Sum, self.get(n), u)?.value());
        }
        Ok(worst)
    }
}

/// Where a Γ check failed.
#[derive(Clone, Debug, PartialEq)]
pub enum GammaWitness {
    /// Some point of `end u` is farther than ε from `end u_index`.
    Liminf { index: usize, excess: ExtDist },
    /// A lifted point recurring near the members (first near `u_index`) lies farther than 2ε from `end u`.
    Limsup { index: usize, point: LiftedPoint, distance: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaVerdict {
    pub passed: bool,
    pub witness: Option<GammaWitness>,
}

fn check_window_space(w: &FuzzySeqWindow, u: &StepFuzzySet) -> Result<()> {
    if same_space(w.space(), u.space()) {
        Ok(())
    } else {
        Err(domain("candidate limit lives in a different space"))
    }
}

/// Lifted probe points `(x, α)` for every level `α` of the given members and
/// every representative `x` of the cut at `α`.
fn lifted_probes<'a>(members: impl IntoIterator<Item = &'a StepFuzzySet> + Clone, mesh: f64, margin: f64) -> Vec<LiftedPoint> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for u in members.clone() {
        for c in u.cuts() {
            if let Some((a, b)) = c.finite_extent() {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
    }
    let clip = if lo <= hi { (lo - margin, hi + margin) } else { (-margin, margin) };
    let mut probes: Vec<LiftedPoint> = members
        .into_iter()
        .flat_map(|u| {
            u.levels()
                .iter()
                .zip(u.cuts())
                .flat_map(move |(&t, c)| c.representatives(mesh, clip).into_iter().map(move |x| LiftedPoint { x, t }))
        })
        .collect();
    probes.sort_by(|a, b| a.x.cmp(&b.x).then(a.t.total_cmp(&b.t)));
    probes.dedup();
    probes
}

fn near(p: &LiftedPoint, u: &StepFuzzySet, eps: f64) -> bool {
    point_to_endograph(ProductMetric::Sum, p, u).expect("probe drawn from the same space") <= eps
}

/// Checks `Γ-lim u_n = u` at tolerance `eps` on the window tail.
pub fn gamma_limit_check(w: &FuzzySeqWindow, u: &StepFuzzySet, eps: f64) -> Result<GammaVerdict> {
    check_eps(eps)?;
    check_window_space(w, u)?;
    for n in w.tail() {
        let e = excess(ProductMetric::Sum, u, w.get(n), None);
        if !e.le(eps) {
            return Ok(GammaVerdict { passed: false, witness: Some(GammaWitness::Liminf { index: n, excess: e }) });
        }
    }
    let tail: Vec<&StepFuzzySet> = w.tail().map(|n| w.get(n)).collect();
    let all = tail.iter().copied().chain(std::iter::once(u));
    for p in lifted_probes(all, eps / 2.0, 1.0 + eps) {
        let distance = point_to_endograph(ProductMetric::Sum, &p, u)?;
        if distance <= 2.0 * eps {
            continue;
        }
        if hits_every_block(w.len(), w.tail_start(), |n| near(&p, w.get(n), eps)) {
            let index = w.tail().find(|&n| near(&p, w.get(n), eps)).expect("recurring probe has a near member");
            return Ok(GammaVerdict { passed: false, witness: Some(GammaWitness::Limsup { index, point: p, distance }) });
        }
    }
    Ok(GammaVerdict { passed: true, witness: None })
}

/// Outcome of an oscillation probe.
#[derive(Clone, Debug, PartialEq)]
pub struct OscillationReport {
    /// No probe separates `limsup_ε` from `liminf_2ε`.
    pub plausible_limit: bool,
    /// Probe points in `limsup_ε` that are not even in `liminf_2ε`.
    pub witnesses: Vec<LiftedPoint>,
}

/// Looks for lifted points that recur along the tail without staying near every member.
pub fn gamma_oscillation_probe(w: &FuzzySeqWindow, eps: f64) -> Result<OscillationReport> {
    check_eps(eps)?;
    let witnesses: Vec<LiftedPoint> = lifted_probes(w.members(), eps / 2.0, 1.0 + eps)
        .into_iter()
        .filter(|p| {
            let liminf = w.tail().all(|n| near(p, w.get(n), 2.0 * eps));
            !liminf && hits_every_block(w.len(), w.tail_start(), |n| near(p, w.get(n), eps))
        })
        .collect();
    Ok(OscillationReport { plausible_limit: witnesses.is_empty(), witnesses })
}

/// Record of the "endograph convergence implies Γ convergence" audit.
#[derive(Clone, Debug, PartialEq)]
pub struct ImplicationReport {
    /// `max_{n ≥ n₀} H_end(u_n, u)`.
    pub tail_distance: f64,
    /// `tail_distance ≤ ε`.
    pub hypothesis_met: bool,
    /// Γ check at `2ε`.
    pub gamma: GammaVerdict,
    /// The implication holds (vacuously when the hypothesis fails).
    pub holds: bool,
}

/// Whenever `H_end(u_n, u) ≤ ε` on the tail, the Γ check must pass at `2ε`.
pub fn hend_implies_gamma_audit(w: &FuzzySeqWindow, u: &StepFuzzySet, eps: f64) -> Result<ImplicationReport> {
    check_eps(eps)?;
    check_window_space(w, u)?;
    let tail_distance = w.tail_distance(u)?;
    let hypothesis_met = tail_distance <= eps;
    let gamma = gamma_limit_check(w, u, 2.0 * eps)?;
    let holds = !hypothesis_met || gamma.passed;
    Ok(ImplicationReport { tail_distance, hypothesis_met, gamma, holds })
}
