//! The two-point quadrature `Q = [u(x)-u(a)] f(t0) + [u(b)-u(x)] f(t1)`,
//! its remainder against the oracle, node presets, and uniform composites.

use crate::catalog::RealMap;
use crate::oracle::{self, IntegralResult};
use crate::{compensated_sum, Error, Interval, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderingClass {
    /// x ≤ t0
    XBelow,
    /// t0 ≤ x ≤ t1
    XBetween,
    /// t1 ≤ x
    XAbove,
}

impl OrderingClass {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderingClass::XBelow => "x<=t0",
            OrderingClass::XBetween => "t0<=x<=t1",
            OrderingClass::XAbove => "t1<=x",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeTriple {
    pub t0: f64,
    pub x: f64,
    pub t1: f64,
    pub interval: Interval,
}

impl NodeTriple {
    pub fn new(t0: f64, x: f64, t1: f64, interval: Interval) -> Result<Self> {
        let (a, b) = (interval.a, interval.b);
        let ok = a <= t0 && t0 <= t1 && t1 <= b && a <= x && x <= b;
        if !ok || !(t0.is_finite() && x.is_finite() && t1.is_finite()) {
            return Err(Error::BadNodes(format!(
                "need a <= t0 <= t1 <= b and x in [a,b]; got t0={t0}, x={x}, t1={t1} on [{a}, {b}]"
            )));
        }
        Ok(NodeTriple { t0, x, t1, interval })
    }

    pub fn ordering_class(&self) -> OrderingClass {
        if self.x <= self.t0 {
            OrderingClass::XBelow
        } else if self.x <= self.t1 {
            OrderingClass::XBetween
        } else {
            OrderingClass::XAbove
        }
    }

    /// True when the interior-node hypothesis t0 ≤ x ≤ t1 holds.
    pub fn x_between(&self) -> bool {
        self.t0 <= self.x && self.x <= self.t1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuleResult {
    pub q_value: f64,
    pub oracle: IntegralResult,
    /// oracle.value - q_value; the sign convention is integral minus rule.
    pub remainder: f64,
}

pub fn two_point_eval(f: &RealMap, u: &RealMap, nodes: &NodeTriple) -> Result<f64> {
    let (a, b) = (nodes.interval.a, nodes.interval.b);
    for m in [f, u] {
        if !m.domain.contains_interval(a, b) {
            return Err(Error::OutsideDomain { point: a, a: m.domain.a, b: m.domain.b });
        }
    }
    Ok((u.eval_unchecked(nodes.x) - u.eval_unchecked(a)) * f.eval_unchecked(nodes.t0)
        + (u.eval_unchecked(b) - u.eval_unchecked(nodes.x)) * f.eval_unchecked(nodes.t1))
}

pub fn remainder(f: &RealMap, u: &RealMap, nodes: &NodeTriple, tol: f64) -> Result<RuleResult> {
    let q_value = two_point_eval(f, u, nodes)?;
    let oracle = oracle::rs_integral(f, u, nodes.interval.a, nodes.interval.b, tol)?;
    Ok(RuleResult { q_value, oracle, remainder: oracle.value - q_value })
}

/// Same as [`remainder`] but reuses an already-computed integral, for sweeps
/// where the oracle value does not depend on the nodes.
pub fn remainder_with_oracle(
    f: &RealMap,
    u: &RealMap,
    nodes: &NodeTriple,
    oracle: IntegralResult,
) -> Result<RuleResult> {
    let q_value = two_point_eval(f, u, nodes)?;
    Ok(RuleResult { q_value, oracle, remainder: oracle.value - q_value })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Preset {
    Trapezoid { x: f64 },
    Midpoint { t0: f64, t1: f64 },
    Symmetric { y: f64 },
    HalfNodes { x: f64 },
    Quartile,
}

impl Preset {
    /// Parses `name[:params]`, e.g. `trapezoid:0.5`, `midpoint:0.25,0.75`,
    /// `quartile`. Parameters are given on the target interval.
    pub fn parse(s: &str) -> Result<Preset> {
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let nums = |p: Option<&str>, want: usize| -> Result<Vec<f64>> {
            let raw = p.ok_or_else(|| {
                Error::InvalidConfig(format!("preset {name} needs {want} parameter(s)"))
            })?;
            let vals: Vec<f64> = raw
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidConfig(format!("preset {name}: {e}")))?;
            if vals.len() != want {
                return Err(Error::InvalidConfig(format!(
                    "preset {name} needs {want} parameter(s), got {}",
                    vals.len()
                )));
            }
            Ok(vals)
        };
        match name {
            "trapezoid" => Ok(Preset::Trapezoid { x: nums(params, 1)?[0] }),
            "midpoint" => {
                let v = nums(params, 2)?;
                Ok(Preset::Midpoint { t0: v[0], t1: v[1] })
            }
            "symmetric" => Ok(Preset::Symmetric { y: nums(params, 1)?[0] }),
            "half-nodes" => Ok(Preset::HalfNodes { x: nums(params, 1)?[0] }),
            "quartile" => Ok(Preset::Quartile),
            _ => Err(Error::InvalidConfig(format!("unknown preset {name}"))),
        }
    }

    /// The preset's free parameters are interpreted on `interval` directly.
    pub fn nodes(&self, interval: Interval) -> Result<NodeTriple> {
        let (a, b) = (interval.a, interval.b);
        let mid = interval.midpoint();
        match *self {
            Preset::Trapezoid { x } => NodeTriple::new(a, x, b, interval),
            Preset::Midpoint { t0, t1 } => NodeTriple::new(t0, mid, t1, interval),
            Preset::Symmetric { y } => {
                if !(a <= y && y <= mid) {
                    return Err(Error::BadNodes(format!(
                        "symmetric preset needs y in [a, (a+b)/2]; got {y}"
                    )));
                }
                NodeTriple::new(y, mid, a + b - y, interval)
            }
            Preset::HalfNodes { x } => NodeTriple::new(0.5 * (a + x), x, 0.5 * (x + b), interval),
            Preset::Quartile => {
                NodeTriple::new(0.25 * (3.0 * a + b), mid, 0.25 * (a + 3.0 * b), interval)
            }
        }
    }

    /// Rescales the preset's free parameters from `from` onto `to` affinely,
    /// so a preset stated on [a,b] applies to each composite cell.
    pub fn rescaled(&self, from: Interval, to: Interval) -> Preset {
        let map = |t: f64| to.a + (t - from.a) / from.length() * to.length();
        match *self {
            Preset::Trapezoid { x } => Preset::Trapezoid { x: map(x) },
            Preset::Midpoint { t0, t1 } => Preset::Midpoint { t0: map(t0), t1: map(t1) },
            Preset::Symmetric { y } => Preset::Symmetric { y: map(y) },
            Preset::HalfNodes { x } => Preset::HalfNodes { x: map(x) },
            Preset::Quartile => Preset::Quartile,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeResult {
    pub q_total: f64,
    pub remainder_total: f64,
    pub oracle: IntegralResult,
    pub cells: Vec<NodeTriple>,
}

/// Applies the preset on each cell of a uniform n-partition of `interval`
/// and compares the summed rule against one oracle call on the whole
/// interval. Summation is left-to-right and compensated.
pub fn composite_rule(
    f: &RealMap,
    u: &RealMap,
    interval: Interval,
    n: u32,
    preset: Preset,
    tol: f64,
) -> Result<CompositeResult> {
    if n == 0 {
        return Err(Error::InvalidConfig("composite rule needs n >= 1".into()));
    }
    let edges = uniform_edges(interval, n);
    composite_on_edges(f, u, interval, &edges, preset, tol)
}

/// Composite over an explicit breakpoint list (must start at a, end at b,
/// strictly increasing).
pub fn composite_on_edges(
    f: &RealMap,
    u: &RealMap,
    interval: Interval,
    edges: &[f64],
    preset: Preset,
    tol: f64,
) -> Result<CompositeResult> {
    if edges.len() < 2
        || edges[0] != interval.a
        || *edges.last().unwrap() != interval.b
        || edges.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::InvalidConfig(
            "breakpoints must be strictly increasing from a to b".into(),
        ));
    }
    let mut cells = Vec::with_capacity(edges.len() - 1);
    for w in edges.windows(2) {
        let cell = Interval::new(w[0], w[1])?;
        cells.push(preset.rescaled(interval, cell).nodes(cell)?);
    }
    let q_parts: Vec<f64> = cells
        .iter()
        .map(|nodes| two_point_eval(f, u, nodes))
        .collect::<Result<_>>()?;
    let q_total = compensated_sum(q_parts.into_iter());
    let oracle = oracle::rs_integral(f, u, interval.a, interval.b, tol)?;
    Ok(CompositeResult { q_total, remainder_total: oracle.value - q_total, oracle, cells })
}

fn uniform_edges(interval: Interval, n: u32) -> Vec<f64> {
    let h = interval.length() / n as f64;
    (0..=n)
        .map(|i| if i == n { interval.b } else { interval.a + h * i as f64 })
        .collect()
}
