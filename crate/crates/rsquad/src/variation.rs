//! Oscillation and p-variation of catalog maps.
//!
//! Method selection follows the kind: a monotone map attains its
//! p-variation on the single increment `|f(d) - f(c)|` for every p; step
//! and piecewise-linear maps are handled exactly by a dynamic program over
//! their (finite) breakpoint value sequence; differentiable maps use the
//! derivative norm `(∫ |f'|^p)^{1/p}`; everything else falls back to a
//! dynamic program over sampled local extrema and is reported as a lower
//! bound, never silently substituted where a theorem needs an upper value.

use crate::catalog::{Direction, MapKind, RealMap};
use crate::quad;
use crate::{Error, Interval, Result};
use serde::{Deserialize, Serialize};

/// The p in `V_p`; infinity routes to the oscillation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(PExponent::Finite(p))
        } else if p.is_infinite() && p > 0.0 {
            Ok(PExponent::Infinity)
        } else {
            Err(Error::BadExponent(format!("p must satisfy p >= 1, got {p}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VariationMethod {
    ExactDerivativeNorm,
    ExactMonotone,
    ExactStep,
    PartitionLowerBound,
    Oscillation,
}

impl VariationMethod {
    pub fn is_exact(self) -> bool {
        !matches!(self, VariationMethod::PartitionLowerBound)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VariationMethod::ExactDerivativeNorm => "exact-derivative-norm",
            VariationMethod::ExactMonotone => "exact-monotone",
            VariationMethod::ExactStep => "exact-step",
            VariationMethod::PartitionLowerBound => "partition-lower-bound",
            VariationMethod::Oscillation => "oscillation",
        }
    }
}

/// A p-variation value with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationEstimate {
    pub p: PExponent,
    pub value: f64,
    pub method: VariationMethod,
    pub subinterval: Interval,
    /// Attaining partition `(point, value)` when the method is a
    /// partition lower bound.
    pub witness: Option<Vec<(f64, f64)>>,
}

fn check_subinterval(map: &RealMap, c: f64, d: f64) -> Result<Interval> {
    if !(c < d) {
        return Err(Error::BadInterval(c, d));
    }
    if !map.domain.contains_interval(c, d) {
        return Err(Error::OutsideDomain {
            point: if c < map.domain.a { c } else { d },
            a: map.domain.a,
            b: map.domain.b,
        });
    }
    Interval::new(c, d)
}

/// `sup f - inf f` over `[c, d]`. Exact for monotone, step and
/// piecewise-linear kinds; grid-sampled with local refinement otherwise.
pub fn oscillation(map: &RealMap, c: f64, d: f64) -> Result<VariationEstimate> {
    let sub = check_subinterval(map, c, d)?;
    let (lo, hi) = min_max(map, c, d);
    Ok(VariationEstimate {
        p: PExponent::Infinity,
        value: hi - lo,
        method: VariationMethod::Oscillation,
        subinterval: sub,
        witness: None,
    })
}

/// `(inf, sup)` of the map over `[c, d]`.
pub fn min_max(map: &RealMap, c: f64, d: f64) -> (f64, f64) {
    if let Some(dir) = monotone_direction(map) {
        let (vc, vd) = (map.eval_unchecked(c), map.eval_unchecked(d));
        return match dir {
            Direction::Increasing => (vc, vd),
            Direction::Decreasing => (vd, vc),
        };
    }
    match &map.kind {
        MapKind::Step { .. } | MapKind::PiecewiseLinear { .. } => {
            let seq = breakpoint_values(map, c, d);
            let lo = seq.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
            let hi = seq.iter().map(|&(_, v)| v).fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        }
        _ => sampled_min_max(map, c, d),
    }
}

fn monotone_direction(map: &RealMap) -> Option<Direction> {
    match &map.kind {
        MapKind::Power { .. } => Some(Direction::Increasing),
        MapKind::Exponential { scale } => Some(if *scale >= 0.0 {
            Direction::Increasing
        } else {
            Direction::Decreasing
        }),
        _ => None,
    }
}

fn sampled_min_max(map: &RealMap, c: f64, d: f64) -> (f64, f64) {
    const N: usize = 10_000;
    let h = (d - c) / N as f64;
    let vals: Vec<f64> = (0..=N).map(|i| map.eval_unchecked(c + h * i as f64)).collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut lo_i = 0;
    let mut hi_i = 0;
    for (i, &v) in vals.iter().enumerate() {
        if v < lo {
            lo = v;
            lo_i = i;
        }
        if v > hi {
            hi = v;
            hi_i = i;
        }
    }
    // refine each extremum with a ternary search in its bracketing cell
    let refine = |i: usize, maximize: bool| -> f64 {
        let mut a = c + h * i.saturating_sub(1) as f64;
        let mut b = (c + h * (i + 1) as f64).min(d);
        for _ in 0..100 {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            let (v1, v2) = (map.eval_unchecked(m1), map.eval_unchecked(m2));
            let keep_right = if maximize { v1 < v2 } else { v1 > v2 };
            if keep_right {
                a = m1;
            } else {
                b = m2;
            }
        }
        map.eval_unchecked(0.5 * (a + b))
    };
    (lo.min(refine(lo_i, false)), hi.max(refine(hi_i, true)))
}

/// The ordered `(position, value)` sequence of attainable values of a step
/// or piecewise-linear map on `[c, d]`: endpoint values, one-sided limits
/// around each jump, and the at-point values.
pub fn breakpoint_values(map: &RealMap, c: f64, d: f64) -> Vec<(f64, f64)> {
    match &map.kind {
        MapKind::Step { jumps } => {
            let mut seq = vec![(c, map.eval_unchecked(c))];
            if let Some(j0) = jumps.iter().find(|j| j.point == c) {
                seq.push((c, j0.right));
            }
            for j in jumps.iter().filter(|j| c < j.point && j.point < d) {
                seq.push((j.point, j.left));
                seq.push((j.point, j.at));
                seq.push((j.point, j.right));
            }
            if let Some(jd) = jumps.iter().find(|j| j.point == d) {
                seq.push((d, jd.left));
            }
            seq.push((d, map.eval_unchecked(d)));
            seq.dedup();
            seq
        }
        MapKind::PiecewiseLinear { knots, .. } => {
            let mut seq = vec![(c, map.eval_unchecked(c))];
            for &k in knots.iter().filter(|&&k| c < k && k < d) {
                seq.push((k, map.eval_unchecked(k)));
            }
            seq.push((d, map.eval_unchecked(d)));
            seq
        }
        _ => vec![(c, map.eval_unchecked(c)), (d, map.eval_unchecked(d))],
    }
}

/// Total p-variation over `[c, d]`.
pub fn p_variation(map: &RealMap, p: PExponent, c: f64, d: f64) -> Result<VariationEstimate> {
    let sub = check_subinterval(map, c, d)?;
    let p_val = match p {
        PExponent::Infinity => {
            let mut est = oscillation(map, c, d)?;
            est.p = PExponent::Infinity;
            return Ok(est);
        }
        PExponent::Finite(v) => {
            if v < 1.0 {
                return Err(Error::BadExponent(format!("p must satisfy p >= 1, got {v}")));
            }
            v
        }
    };

    if monotone_direction(map).is_some() || is_monotone_kind(map) {
        // single-increment optimum, exact for all p
        let value = (map.eval_unchecked(d) - map.eval_unchecked(c)).abs();
        return Ok(VariationEstimate {
            p,
            value,
            method: VariationMethod::ExactMonotone,
            subinterval: sub,
            witness: None,
        });
    }

    match &map.kind {
        MapKind::Step { .. } | MapKind::PiecewiseLinear { .. } => {
            let seq = breakpoint_values(map, c, d);
            let (value, witness) = wiener_dp(&seq, p_val);
            Ok(VariationEstimate {
                p,
                value,
                method: VariationMethod::ExactStep,
                subinterval: sub,
                witness: Some(witness),
            })
        }
        _ if map.derivative_order_available() >= 1 => {
            let norm = derivative_norm(map, p_val, c, d)?;
            Ok(VariationEstimate {
                p,
                value: norm,
                method: VariationMethod::ExactDerivativeNorm,
                subinterval: sub,
                witness: None,
            })
        }
        _ => {
            let seq = extremal_candidates(map, c, d, 1000);
            let (value, witness) = wiener_dp(&seq, p_val);
            Ok(VariationEstimate {
                p,
                value,
                method: VariationMethod::PartitionLowerBound,
                subinterval: sub,
                witness: Some(witness),
            })
        }
    }
}

fn is_monotone_kind(map: &RealMap) -> bool {
    match &map.kind {
        MapKind::Polynomial { coeffs } => {
            let prof = crate::catalog::make_catalog_entry("tmp", MapKind::Polynomial {
                coeffs: coeffs.clone(),
            }, map.domain);
            prof.map(|e| e.profile.monotone.is_some()).unwrap_or(false)
        }
        MapKind::Sine { scale, freq } => {
            // monotone iff the derivative keeps its sign on the domain
            let (a, b) = (map.domain.a, map.domain.b);
            let n = 4096;
            let mut pos = true;
            let mut neg = true;
            for i in 0..=n {
                let t = a + (b - a) * i as f64 / n as f64;
                let dv = scale * freq * (freq * t).cos();
                if dv < -1e-15 {
                    pos = false;
                }
                if dv > 1e-15 {
                    neg = false;
                }
            }
            pos || neg
        }
        MapKind::Step { jumps } => {
            let mut seq = vec![jumps[0].left];
            for j in jumps {
                seq.push(j.at);
                seq.push(j.right);
            }
            seq.windows(2).all(|w| w[1] >= w[0]) || seq.windows(2).all(|w| w[1] <= w[0])
        }
        MapKind::PiecewiseLinear { values, .. } => {
            values.windows(2).all(|w| w[1] >= w[0]) || values.windows(2).all(|w| w[1] <= w[0])
        }
        _ => false,
    }
}

/// `(∫_c^d |f'|^p dt)^{1/p}` by adaptive quadrature to relative 1e-10.
pub fn derivative_norm(map: &RealMap, p: f64, c: f64, d: f64) -> Result<f64> {
    let kinks = map.kink_points();
    let r = quad::adaptive_split(
        |t| {
            map.derivative_for_quadrature(t)
                .expect("differentiable kind")
                .abs()
                .powf(p)
        },
        c,
        d,
        &kinks,
        1e-10,
        1e-300,
        1 << 24,
    )?;
    Ok(r.value.powf(1.0 / p))
}

/// O(m^2) dynamic program over a value sequence maximizing `Σ |Δ|^p` with
/// both endpoints forced. Returns `(Σ^{1/p}, attaining partition)`.
/// Within a monotone run `|a+b|^p >= |a|^p + |b|^p`, so merging increments
/// is profitable and only extremal values matter; skipping extrema can
/// still help for p > 1, which is why this is a DP and not a scan.
pub fn wiener_dp(seq: &[(f64, f64)], p: f64) -> (f64, Vec<(f64, f64)>) {
    let m = seq.len();
    if m < 2 {
        return (0.0, seq.to_vec());
    }
    let mut best = vec![f64::NEG_INFINITY; m];
    let mut back = vec![0usize; m];
    best[0] = 0.0;
    for i in 1..m {
        for j in 0..i {
            let cand = best[j] + (seq[i].1 - seq[j].1).abs().powf(p);
            if cand > best[i] {
                best[i] = cand;
                back[i] = j;
            }
        }
    }
    let mut path = vec![m - 1];
    while *path.last().unwrap() != 0 {
        path.push(back[*path.last().unwrap()]);
    }
    path.reverse();
    let witness = path.into_iter().map(|i| seq[i]).collect();
    (best[m - 1].powf(1.0 / p), witness)
}

/// Local-extrema candidates from a fine sample grid (endpoints always
/// included), each refined by ternary search.
pub fn extremal_candidates(map: &RealMap, c: f64, d: f64, min_candidates: usize) -> Vec<(f64, f64)> {
    let n = (8 * min_candidates).max(10_000);
    let h = (d - c) / n as f64;
    let vals: Vec<f64> = (0..=n).map(|i| map.eval_unchecked(c + h * i as f64)).collect();
    let mut out = vec![(c, vals[0])];
    for i in 1..n {
        let is_max = vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1];
        let is_min = vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1];
        if (is_max || is_min) && (vals[i] != vals[i - 1] || vals[i] != vals[i + 1]) {
            let (mut a, mut b) = (c + h * (i - 1) as f64, c + h * (i + 1) as f64);
            for _ in 0..60 {
                let m1 = a + (b - a) / 3.0;
                let m2 = b - (b - a) / 3.0;
                let better = if is_max {
                    map.eval_unchecked(m1) < map.eval_unchecked(m2)
                } else {
                    map.eval_unchecked(m1) > map.eval_unchecked(m2)
                };
                if better {
                    a = m1;
                } else {
                    b = m2;
                }
            }
            let t = 0.5 * (a + b);
            out.push((t, map.eval_unchecked(t)));
        }
    }
    out.push((d, vals[n]));
    out
}

/// Partition-based lower bound on the Riesz-weighted variation
/// `sup_P (Σ |Δf|^p / |Δx|^{p-1})^{1/p}`, which for differentiable maps
/// converges to the derivative norm under refinement. Used as the
/// independent cross-check of `exact-derivative-norm` values.
pub fn riesz_sum_lower_bound(map: &RealMap, p: f64, c: f64, d: f64, n: usize) -> f64 {
    let h = (d - c) / n as f64;
    let mut sum = 0.0;
    let mut prev = map.eval_unchecked(c);
    for i in 1..=n {
        let t = c + h * i as f64;
        let v = map.eval_unchecked(t);
        sum += (v - prev).abs().powf(p) / h.powf(p - 1.0);
        prev = v;
    }
    sum.powf(1.0 / p)
}

/// Wiener-sense p-variation lower bound via the extrema DP, regardless of
/// kind. Exact for step/piecewise-linear; a certified lower bound
/// elsewhere. This is the estimator under which the classical ordering
/// facts (decreasing in p, osc <= V_p <= V_1) hold.
pub fn wiener_lower_bound(map: &RealMap, p: f64, c: f64, d: f64) -> Result<VariationEstimate> {
    let sub = check_subinterval(map, c, d)?;
    if p < 1.0 {
        return Err(Error::BadExponent(format!("p must satisfy p >= 1, got {p}")));
    }
    let (seq, method) = match &map.kind {
        MapKind::Step { .. } | MapKind::PiecewiseLinear { .. } => {
            (breakpoint_values(map, c, d), VariationMethod::ExactStep)
        }
        _ if monotone_direction(map).is_some() || is_monotone_kind(map) => (
            vec![(c, map.eval_unchecked(c)), (d, map.eval_unchecked(d))],
            VariationMethod::ExactMonotone,
        ),
        _ => (
            extremal_candidates(map, c, d, 1000),
            VariationMethod::PartitionLowerBound,
        ),
    };
    let (value, witness) = wiener_dp(&seq, p);
    Ok(VariationEstimate {
        p: PExponent::Finite(p),
        value,
        method,
        subinterval: sub,
        witness: Some(witness),
    })
}
