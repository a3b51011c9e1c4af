//! Exact suprema of capped lower envelopes of interval-distance functions on ℝ.
//!
//! Every distance computed on the real line reduces to
//! `sup_{x ∈ D} min(cap, min_k d(x, [a_k, b_k]) + c_k)` for a union of closed
//! intervals `D`. Each term is piecewise linear with slopes −1, 0, +1, so the
//! envelope's breakpoints are the term breakpoints plus pairwise crossings of
//! pieces with different slopes; the supremum over a closed interval is
//! attained at one of those abscissae, at a finite end of the interval, or in
//! the limit at an infinite end.

use crate::sets::Interval;

/// `x ↦ d(x, [lo, hi]) + offset`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Tent {
    pub lo: f64,
    pub hi: f64,
    pub offset: f64,
}

impl Tent {
    #[cfg(test)]
    pub fn eval(&self, x: f64) -> f64 {
        interval_dist(x, self.lo, self.hi) + self.offset
    }
}

#[inline]
pub(crate) fn interval_dist(x: f64, lo: f64, hi: f64) -> f64 {
    if x < lo {
        lo - x
    } else if x > hi {
        x - hi
    } else {
        0.0
    }
}

#[cfg(test)]
fn envelope(tents: &[Tent], cap: f64, x: f64) -> f64 {
    tents.iter().fold(cap, |m, t| m.min(t.eval(x)))
}

/// Min-heap entry for tents covering the current sweep position.
#[derive(PartialEq)]
struct Active {
    offset: f64,
    hi: f64,
}

impl Eq for Active {}

impl Ord for Active {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.offset.total_cmp(&self.offset)
    }
}

impl PartialOrd for Active {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `sup_{x ∈ [p, q]} min(k, x + pre, suf − x)`; the function is concave, so
/// the supremum sits at an end or at a crossing of two pieces.
fn concave_sup(p: f64, q: f64, k: f64, pre: f64, suf: f64) -> f64 {
    let g = |x: f64| k.min(x + pre).min(suf - x);
    [p, q, (suf - pre) / 2.0, k - pre, suf - k]
        .into_iter()
        .filter(|x| x.is_finite() && *x >= p && *x <= q)
        .fold(f64::NEG_INFINITY, |m, x| m.max(g(x)))
}

/// `sup_{x ∈ domain} min(cap, min_k tents[k](x))`, with `cap = None` meaning no cap.
///
/// Returns `+∞` when the envelope is unbounded on the domain, and `0` for an
/// empty domain. Sweeps the sorted breakpoints: between consecutive ones each
/// tent is entirely left of, right of, or covering the gap, so the envelope
/// there is `min(cap, M, x + P, S − x)`.
pub(crate) fn sup_of_envelope(domain: &[Interval], tents: &[Tent], cap: Option<f64>) -> f64 {
    let cap = cap.unwrap_or(f64::INFINITY);
    if domain.is_empty() {
        return 0.0;
    }
    let mut xs: Vec<f64> = tents.iter().flat_map(|t| [t.lo, t.hi]).chain(domain.iter().flat_map(|d| [d.lo, d.hi])).collect();
    xs.retain(|x| x.is_finite());
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.is_empty() {
        // Every tent and domain piece is the whole line.
        return tents.iter().fold(cap, |m, t| m.min(t.offset));
    }
    let in_domain = |x: f64| domain.iter().any(|d| d.lo <= x && x <= d.hi);

    let mut by_lo: Vec<&Tent> = tents.iter().collect();
    by_lo.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut by_hi: Vec<&Tent> = tents.iter().collect();
    by_hi.sort_by(|a, b| a.hi.total_cmp(&b.hi));
    // suffix[i] = min over by_lo[i..] of offset + lo.
    let mut suffix = vec![f64::INFINITY; by_lo.len() + 1];
    for i in (0..by_lo.len()).rev() {
        suffix[i] = suffix[i + 1].min(by_lo[i].offset + by_lo[i].lo);
    }
    let suffix_from = |x: f64| suffix[by_lo.partition_point(|t| t.lo < x)];

    let mut active = std::collections::BinaryHeap::new();
    let (mut next_lo, mut next_hi) = (0, 0);
    let mut prefix = f64::INFINITY;
    let mut best: f64 = 0.0;

    let first = xs[0];
    while next_lo < by_lo.len() && by_lo[next_lo].lo < first {
        active.push(Active { offset: by_lo[next_lo].offset, hi: by_lo[next_lo].hi });
        next_lo += 1;
    }
    if domain.iter().any(|d| d.lo == f64::NEG_INFINITY) {
        let m = active.peek().map_or(f64::INFINITY, |a| a.offset);
        best = best.max(cap.min(m));
    }

    for (i, &p) in xs.iter().enumerate() {
        while next_lo < by_lo.len() && by_lo[next_lo].lo <= p {
            active.push(Active { offset: by_lo[next_lo].offset, hi: by_lo[next_lo].hi });
            next_lo += 1;
        }
        while next_hi < by_hi.len() && by_hi[next_hi].hi <= p {
            prefix = prefix.min(by_hi[next_hi].offset - by_hi[next_hi].hi);
            next_hi += 1;
        }
        // At the point itself every tent with lo ≤ p ≤ hi is flat.
        while active.peek().is_some_and(|a| a.hi < p) {
            active.pop();
        }
        if in_domain(p) {
            let m = active.peek().map_or(f64::INFINITY, |a| a.offset);
            best = best.max(concave_sup(p, p, cap.min(m), prefix, suffix_from(p)));
        }
        // Open gap to the next breakpoint: covering tents need hi ≥ q > p.
        while active.peek().is_some_and(|a| a.hi <= p) {
            active.pop();
        }
        let m = active.peek().map_or(f64::INFINITY, |a| a.offset);
        match xs.get(i + 1) {
            Some(&q) => {
                if in_domain(0.5 * (p + q)) {
                    best = best.max(concave_sup(p, q, cap.min(m), prefix, suffix_from(q)));
                }
            }
            None => {
                if domain.iter().any(|d| d.hi == f64::INFINITY) {
                    best = best.max(cap.min(m));
                }
            }
        }
        if best == f64::INFINITY {
            return best;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn tent(lo: f64, hi: f64, offset: f64) -> Tent {
        Tent { lo, hi, offset }
    }

    fn sampled(domain: (f64, f64), tents: &[Tent], cap: f64) -> f64 {
        let n = 200_000;
        (0..=n)
            .map(|i| domain.0 + (domain.1 - domain.0) * i as f64 / n as f64)
            .map(|x| envelope(tents, cap, x))
            .fold(0.0, f64::max)
    }

    /// Evaluates at every pairwise crossing; cubic but independent of the sweep.
    fn brute(domain: &[Interval], tents: &[Tent], cap: f64) -> f64 {
        let mut xs: Vec<f64> = tents.iter().flat_map(|t| [t.lo, t.hi]).collect();
        for k in tents {
            for m in tents {
                xs.push((m.lo + k.hi + m.offset - k.offset) / 2.0);
            }
            for c in tents.iter().map(|t| t.offset).chain([cap]) {
                xs.push(k.lo - (c - k.offset));
                xs.push(k.hi + (c - k.offset));
            }
        }
        xs.extend(domain.iter().flat_map(|d| [d.lo, d.hi]));
        xs.retain(|x| x.is_finite());
        xs.iter().filter(|&&x| domain.iter().any(|d| d.lo <= x && x <= d.hi)).fold(0.0, |m, &x| m.max(envelope(tents, cap, x)))
    }

    #[test]
    fn sweep_matches_crossing_enumeration() {
        let mut state = 0x2545f4914f6cdd1d_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 64) as f64 / 8.0 - 4.0
        };
        for _ in 0..2000 {
            let tents: Vec<Tent> = (0..(1 + next().abs() as usize))
                .map(|_| {
                    let (a, b) = (next(), next());
                    tent(a.min(b), a.max(b), next().abs() / 4.0)
                })
                .collect();
            let domain: Vec<Interval> = (0..2)
                .map(|_| {
                    let (a, b) = (next(), next());
                    iv(a.min(b), a.max(b))
                })
                .collect();
            let cap = next().abs() + 0.25;
            assert_eq!(sup_of_envelope(&domain, &tents, Some(cap)), brute(&domain, &tents, cap), "{tents:?} on {domain:?}");
        }
    }

    #[test]
    fn degenerate_pieces() {
        let tents = [tent(1.0, 1.0, 0.0), tent(3.0, 3.0, 0.5)];
        assert_eq!(sup_of_envelope(&[iv(1.0, 1.0)], &tents, None), 0.0);
        assert_eq!(sup_of_envelope(&[iv(2.0, 2.0)], &tents, None), 1.0);
        assert_eq!(sup_of_envelope(&[iv(0.0, 4.0)], &tents, None), 1.5);
        let line = [tent(f64::NEG_INFINITY, f64::INFINITY, 0.3)];
        assert_eq!(sup_of_envelope(&[iv(f64::NEG_INFINITY, f64::INFINITY)], &line, None), 0.3);
    }

    #[test]
    fn gap_midpoint() {
        let tents = [tent(0.0, 1.0, 0.0), tent(3.0, 4.0, 0.0)];
        assert_eq!(sup_of_envelope(&[iv(0.0, 4.0)], &tents, None), 1.0);
    }

    #[test]
    fn unbounded_domain() {
        let tents = [tent(0.0, 1.0, 0.0)];
        assert_eq!(sup_of_envelope(&[iv(f64::NEG_INFINITY, 0.0)], &tents, None), f64::INFINITY);
        assert_eq!(sup_of_envelope(&[iv(f64::NEG_INFINITY, 0.0)], &tents, Some(0.7)), 0.7);
        let half_line = [tent(f64::NEG_INFINITY, 5.0, 0.0)];
        assert_eq!(sup_of_envelope(&[iv(f64::NEG_INFINITY, 0.0)], &half_line, None), 0.0);
    }

    #[test]
    fn empty_tents_without_cap() {
        assert_eq!(sup_of_envelope(&[iv(0.0, 1.0)], &[], None), f64::INFINITY);
        assert_eq!(sup_of_envelope(&[], &[], None), 0.0);
    }

    #[test]
    fn matches_sampling_with_offsets() {
        let tents = [tent(-1.0, -0.5, 0.3), tent(0.2, 0.4, 0.0), tent(1.5, 1.5, 0.1)];
        for cap in [0.25, 0.6, 10.0] {
            let exact = sup_of_envelope(&[iv(-2.0, 2.5)], &tents, Some(cap));
            let approx = sampled((-2.0, 2.5), &tents, cap);
            assert!(exact >= approx - 1e-12 && exact - approx < 1e-4, "{exact} vs {approx}");
        }
    }
}
