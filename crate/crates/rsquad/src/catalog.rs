//! Concrete integrands and integrators with regularity metadata.
//!
//! The catalog is a closed set of function kinds so that every declared
//! Hölder/Lipschitz constant, monotonicity flag and variation rule can be
//! computed in closed form (or tightly over-approximated) and then checked
//! by sampling. Bound evaluators only ever receive constants that come
//! from here.
//!
//! Entries are addressable by string id, e.g. `power:r=0.5`,
//! `step:points=0;left=-1;right=0`, `poly:0,1`, `sine:scale=1;freq=1`.

use crate::{Error, Interval, Result};
use serde::{Deserialize, Serialize};

/// One jump of a step map: the one-sided limits and the value taken at the
/// point itself. The at-point value is what `eval` returns; the one-sided
/// limits are what the Riemann-Stieltjes oracle needs for `u(c+)-u(c-)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub point: f64,
    pub left: f64,
    pub right: f64,
    pub at: f64,
}

/// The supported function kinds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MapKind {
    /// `t^r` with `r > 0`; the domain must lie in `[0, ∞)` unless `r` is a
    /// nonnegative integer.
    Power { r: f64 },
    /// `c0 + c1 t + c2 t^2 + ...`
    Polynomial { coeffs: Vec<f64> },
    /// `scale * sin(freq * t)`
    Sine { scale: f64, freq: f64 },
    /// `exp(scale * t)`
    Exponential { scale: f64 },
    /// Piecewise constant with the given jumps; constant between
    /// consecutive jump points.
    Step { jumps: Vec<Jump> },
    /// Linear interpolation through `(knots[i], values[i])`.
    PiecewiseLinear { knots: Vec<f64>, values: Vec<f64> },
}

/// An evaluable real function on a closed interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealMap {
    pub domain: Interval,
    pub kind: MapKind,
}

/// Monotonicity direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Which exact p-variation method applies to a map (metadata mirror of the
/// selection the variation module performs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VariationRule {
    MonotoneIncrement,
    JumpDynamicProgram,
    DerivativeNorm,
}

/// Membership marker for the class of maps whose n-th derivative is
/// locally absolutely continuous, positive on the open interval and
/// vanishing at both endpoints. Positivity is read as interior-only:
/// a positive n-th derivative on the closed interval would contradict
/// vanishing endpoint values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpClass {
    pub n: u32,
}

/// Declared analytic facts about a `RealMap`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct RegularityProfile {
    /// Hölder pair `(H, r)`: `|f(s)-f(t)| <= H |s-t|^r`, `r` in `(0,1]`.
    pub hoelder: Option<(f64, f64)>,
    /// Lipschitz constant; implies `hoelder = (L, 1)`.
    pub lipschitz: Option<f64>,
    pub monotone: Option<Direction>,
    pub variation_rule: Option<VariationRule>,
    pub up_class: Option<UpClass>,
}

/// A catalog entry: the map plus the strongest profile known for its kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub map: RealMap,
    pub profile: RegularityProfile,
}

impl RealMap {
    pub fn new(kind: MapKind, domain: Interval) -> Result<Self> {
        validate_kind(&kind, domain)?;
        Ok(RealMap { domain, kind })
    }

    /// Evaluate at `t`, checking the domain.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !self.domain.contains(t) {
            return Err(Error::OutsideDomain {
                point: t,
                a: self.domain.a,
                b: self.domain.b,
            });
        }
        Ok(self.eval_unchecked(t))
    }

    /// Evaluate without a domain check. For a step map at a jump point
    /// this returns the declared at-point value.
    pub fn eval_unchecked(&self, t: f64) -> f64 {
        match &self.kind {
            MapKind::Power { r } => pow_sig(t, *r),
            MapKind::Polynomial { coeffs } => horner(coeffs, t),
            MapKind::Sine { scale, freq } => scale * (freq * t).sin(),
            MapKind::Exponential { scale } => (scale * t).exp(),
            MapKind::Step { jumps } => step_eval(jumps, self.domain, t),
            MapKind::PiecewiseLinear { knots, values } => pl_eval(knots, values, t),
        }
    }

    /// Left-hand limit at `t` (equals the value except at step jumps).
    pub fn left_limit(&self, t: f64) -> f64 {
        if let MapKind::Step { jumps } = &self.kind {
            if let Some(j) = jumps.iter().find(|j| j.point == t) {
                return if t == self.domain.a { j.at } else { j.left };
            }
        }
        self.eval_unchecked(t)
    }

    /// Right-hand limit at `t`.
    pub fn right_limit(&self, t: f64) -> f64 {
        if let MapKind::Step { jumps } = &self.kind {
            if let Some(j) = jumps.iter().find(|j| j.point == t) {
                return if t == self.domain.b { j.at } else { j.right };
            }
        }
        self.eval_unchecked(t)
    }

    /// Number of closed-form derivatives exposed by the kind.
    pub fn derivative_order_available(&self) -> u32 {
        match &self.kind {
            MapKind::Power { r } => {
                if *r >= 0.0 && r.fract() == 0.0 {
                    u32::MAX
                } else if self.domain.a > 0.0 {
                    u32::MAX
                } else {
                    // fractional power: derivatives blow up at t = 0
                    0
                }
            }
            MapKind::Polynomial { .. } | MapKind::Sine { .. } | MapKind::Exponential { .. } => {
                u32::MAX
            }
            MapKind::Step { .. } | MapKind::PiecewiseLinear { .. } => 0,
        }
    }

    /// k-th closed-form derivative at `t`, when available for the kind.
    /// `derivative(0, t)` is plain evaluation.
    pub fn derivative(&self, k: u32, t: f64) -> Option<f64> {
        if k == 0 {
            return Some(self.eval_unchecked(t));
        }
        match &self.kind {
            MapKind::Power { r } => {
                let mut c = 1.0;
                for i in 0..k {
                    c *= r - i as f64;
                }
                if c == 0.0 {
                    return Some(0.0);
                }
                Some(c * pow_sig(t, r - k as f64))
            }
            MapKind::Polynomial { coeffs } => {
                let d = poly_derivative_coeffs(coeffs, k);
                Some(horner(&d, t))
            }
            MapKind::Sine { scale, freq } => {
                let phase = (k % 4) as f64 * std::f64::consts::FRAC_PI_2;
                Some(scale * freq.powi(k as i32) * (freq * t + phase).sin())
            }
            MapKind::Exponential { scale } => Some(scale.powi(k as i32) * (scale * t).exp()),
            MapKind::Step { .. } | MapKind::PiecewiseLinear { .. } => None,
        }
    }

    /// Points where the map is discontinuous.
    pub fn discontinuities(&self) -> Vec<f64> {
        match &self.kind {
            MapKind::Step { jumps } => jumps
                .iter()
                .filter(|j| j.left != j.right || j.at != j.left || j.at != j.right)
                .map(|j| j.point)
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn is_continuous(&self) -> bool {
        self.discontinuities().is_empty()
    }

    /// Points interior to the domain where the first derivative is
    /// discontinuous or the definition changes (used by the oracle to
    /// split quadrature panels).
    pub fn kink_points(&self) -> Vec<f64> {
        match &self.kind {
            MapKind::PiecewiseLinear { knots, .. } => {
                knots[1..knots.len() - 1].to_vec()
            }
            MapKind::Step { jumps } => jumps.iter().map(|j| j.point).collect(),
            _ => Vec::new(),
        }
    }

    /// True when the first derivative exists and is bounded on `[c, d]`.
    pub fn has_bounded_derivative_on(&self, c: f64, _d: f64) -> bool {
        match &self.kind {
            MapKind::Power { r } => {
                (*r >= 1.0) || (r.fract() == 0.0 && *r >= 0.0) || c > 0.0
            }
            MapKind::Polynomial { .. } | MapKind::Sine { .. } | MapKind::Exponential { .. } => {
                true
            }
            MapKind::Step { .. } | MapKind::PiecewiseLinear { .. } => false,
        }
    }

    /// First derivative for quadrature (pl maps use the cell slope; the
    /// value at a knot itself is immaterial under an integral).
    pub fn derivative_for_quadrature(&self, t: f64) -> Option<f64> {
        match &self.kind {
            MapKind::PiecewiseLinear { knots, values } => Some(pl_slope(knots, values, t)),
            _ => self.derivative(1, t),
        }
    }
}

fn validate_kind(kind: &MapKind, domain: Interval) -> Result<()> {
    match kind {
        MapKind::Power { r } => {
            if !r.is_finite() || *r <= 0.0 {
                return Err(Error::InvalidParameters(format!("power exponent r={r}")));
            }
            if r.fract() != 0.0 && domain.a < 0.0 {
                return Err(Error::InvalidParameters(format!(
                    "power:r={r} needs a domain within [0, inf)"
                )));
            }
            Ok(())
        }
        MapKind::Polynomial { coeffs } => {
            if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidParameters("polynomial coefficients".into()));
            }
            Ok(())
        }
        MapKind::Sine { scale, freq } => {
            if !scale.is_finite() || !freq.is_finite() {
                return Err(Error::InvalidParameters("sine parameters".into()));
            }
            Ok(())
        }
        MapKind::Exponential { scale } => {
            if !scale.is_finite() {
                return Err(Error::InvalidParameters("exponential scale".into()));
            }
            Ok(())
        }
        MapKind::Step { jumps } => {
            if jumps.is_empty() {
                return Err(Error::InvalidParameters("step map needs >= 1 jump".into()));
            }
            for w in jumps.windows(2) {
                if !(w[0].point < w[1].point) {
                    return Err(Error::InvalidParameters(
                        "step jump points must be strictly increasing".into(),
                    ));
                }
                if w[0].right != w[1].left {
                    return Err(Error::InvalidParameters(
                        "step map must be constant between jumps".into(),
                    ));
                }
            }
            if jumps.iter().any(|j| !domain.contains(j.point)) {
                return Err(Error::InvalidParameters(
                    "step jump points must lie inside the domain".into(),
                ));
            }
            Ok(())
        }
        MapKind::PiecewiseLinear { knots, values } => {
            if knots.len() < 2 || knots.len() != values.len() {
                return Err(Error::InvalidParameters(
                    "piecewise-linear needs matching knots/values, >= 2".into(),
                ));
            }
            for w in knots.windows(2) {
                if !(w[0] < w[1]) {
                    return Err(Error::InvalidParameters(
                        "piecewise-linear knots must be strictly increasing".into(),
                    ));
                }
            }
            if knots[0] != domain.a || *knots.last().unwrap() != domain.b {
                return Err(Error::InvalidParameters(
                    "piecewise-linear knots must span the domain".into(),
                ));
            }
            Ok(())
        }
    }
}

/// `t^r` supporting integer exponents at negative `t`.
fn pow_sig(t: f64, r: f64) -> f64 {
    if r == 0.0 {
        1.0
    } else if r.fract() == 0.0 {
        t.powi(r as i32)
    } else {
        t.powf(r)
    }
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

fn poly_derivative_coeffs(coeffs: &[f64], k: u32) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    for _ in 0..k {
        c = c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &v)| i as f64 * v)
            .collect();
        if c.is_empty() {
            c.push(0.0);
        }
    }
    c
}

fn step_eval(jumps: &[Jump], _domain: Interval, t: f64) -> f64 {
    if let Some(j) = jumps.iter().find(|j| j.point == t) {
        return j.at;
    }
    // constant level between jumps
    match jumps.iter().rposition(|j| j.point < t) {
        Some(i) => jumps[i].right,
        None => jumps[0].left,
    }
}

fn pl_eval(knots: &[f64], values: &[f64], t: f64) -> f64 {
    let n = knots.len();
    if t <= knots[0] {
        return values[0];
    }
    if t >= knots[n - 1] {
        return values[n - 1];
    }
    let i = knots.partition_point(|&k| k <= t) - 1;
    let w = (t - knots[i]) / (knots[i + 1] - knots[i]);
    values[i] + w * (values[i + 1] - values[i])
}

fn pl_slope(knots: &[f64], values: &[f64], t: f64) -> f64 {
    let n = knots.len();
    let i = if t >= knots[n - 1] {
        n - 2
    } else {
        knots.partition_point(|&k| k <= t).saturating_sub(1).min(n - 2)
    };
    (values[i + 1] - values[i]) / (knots[i + 1] - knots[i])
}

/// Build an entry with the strongest profile known in closed form for the
/// kind. The id is the canonical string form of the spec.
pub fn make_catalog_entry(id: &str, kind: MapKind, domain: Interval) -> Result<CatalogEntry> {
    let map = RealMap::new(kind, domain)?;
    let profile = strongest_profile(&map);
    Ok(CatalogEntry {
        id: id.to_string(),
        map,
        profile,
    })
}

fn strongest_profile(map: &RealMap) -> RegularityProfile {
    let Interval { a, b } = map.domain;
    let mut prof = RegularityProfile::default();
    match &map.kind {
        MapKind::Power { r } => {
            prof.monotone = Some(Direction::Increasing);
            prof.variation_rule = Some(VariationRule::MonotoneIncrement);
            if *r < 1.0 {
                // |s^r - t^r| <= |s - t|^r on [0, inf)
                prof.hoelder = Some((1.0, *r));
            } else {
                let l = r * a.abs().max(b.abs()).powf(r - 1.0);
                prof.lipschitz = Some(l);
                prof.hoelder = Some((l, 1.0));
            }
        }
        MapKind::Polynomial { coeffs } => {
            let dcoeffs = poly_derivative_coeffs(coeffs, 1);
            let l = sup_abs_poly(&dcoeffs, a, b) * (1.0 + 1e-12);
            prof.lipschitz = Some(l);
            prof.hoelder = Some((l, 1.0));
            prof.monotone = poly_monotone(&dcoeffs, a, b);
            prof.variation_rule = Some(if prof.monotone.is_some() {
                VariationRule::MonotoneIncrement
            } else {
                VariationRule::DerivativeNorm
            });
            prof.up_class = detect_up_class(map);
        }
        MapKind::Sine { scale, freq } => {
            let l = (scale * freq).abs();
            prof.lipschitz = Some(l);
            prof.hoelder = Some((l, 1.0));
            prof.monotone = sine_monotone(*scale, *freq, a, b);
            prof.variation_rule = Some(if prof.monotone.is_some() {
                VariationRule::MonotoneIncrement
            } else {
                VariationRule::DerivativeNorm
            });
        }
        MapKind::Exponential { scale } => {
            let l = scale.abs() * (scale * a).exp().max((scale * b).exp());
            prof.lipschitz = Some(l);
            prof.hoelder = Some((l, 1.0));
            prof.monotone = Some(if *scale >= 0.0 {
                Direction::Increasing
            } else {
                Direction::Decreasing
            });
            prof.variation_rule = Some(VariationRule::MonotoneIncrement);
        }
        MapKind::Step { jumps } => {
            prof.variation_rule = Some(VariationRule::JumpDynamicProgram);
            prof.monotone = step_monotone(jumps);
        }
        MapKind::PiecewiseLinear { knots, values } => {
            let l = knots
                .windows(2)
                .zip(values.windows(2))
                .map(|(k, v)| ((v[1] - v[0]) / (k[1] - k[0])).abs())
                .fold(0.0f64, f64::max);
            prof.lipschitz = Some(l);
            prof.hoelder = Some((l, 1.0));
            prof.variation_rule = Some(VariationRule::JumpDynamicProgram);
            let incr = values.windows(2).all(|v| v[1] >= v[0]);
            let decr = values.windows(2).all(|v| v[1] <= v[0]);
            prof.monotone = if incr {
                Some(Direction::Increasing)
            } else if decr {
                Some(Direction::Decreasing)
            } else {
                None
            };
        }
    }
    prof
}

fn sup_abs_poly(coeffs: &[f64], a: f64, b: f64) -> f64 {
    // grid scan plus local ternary refinement; adequate for the closed
    // catalog where degrees stay small
    let n = 2048;
    let mut best = 0.0f64;
    let mut best_t = a;
    for i in 0..=n {
        let t = a + (b - a) * i as f64 / n as f64;
        let v = horner(coeffs, t).abs();
        if v > best {
            best = v;
            best_t = t;
        }
    }
    let h = (b - a) / n as f64;
    let (mut lo, mut hi) = ((best_t - h).max(a), (best_t + h).min(b));
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if horner(coeffs, m1).abs() < horner(coeffs, m2).abs() {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    best.max(horner(coeffs, 0.5 * (lo + hi)).abs())
}

fn poly_monotone(dcoeffs: &[f64], a: f64, b: f64) -> Option<Direction> {
    let n = 4096;
    let mut pos = true;
    let mut neg = true;
    for i in 0..=n {
        let t = a + (b - a) * i as f64 / n as f64;
        let d = horner(dcoeffs, t);
        if d < 0.0 {
            pos = false;
        }
        if d > 0.0 {
            neg = false;
        }
    }
    if pos {
        Some(Direction::Increasing)
    } else if neg {
        Some(Direction::Decreasing)
    } else {
        None
    }
}

fn sine_monotone(scale: f64, freq: f64, a: f64, b: f64) -> Option<Direction> {
    let n = 4096;
    let mut pos = true;
    let mut neg = true;
    for i in 0..=n {
        let t = a + (b - a) * i as f64 / n as f64;
        let d = scale * freq * (freq * t).cos();
        if d < -1e-15 {
            pos = false;
        }
        if d > 1e-15 {
            neg = false;
        }
    }
    if pos {
        Some(Direction::Increasing)
    } else if neg {
        Some(Direction::Decreasing)
    } else {
        None
    }
}

fn step_monotone(jumps: &[Jump]) -> Option<Direction> {
    let mut seq = vec![jumps[0].left];
    for j in jumps {
        seq.push(j.at);
        seq.push(j.right);
    }
    let incr = seq.windows(2).all(|w| w[1] >= w[0]);
    let decr = seq.windows(2).all(|w| w[1] <= w[0]);
    if incr {
        Some(Direction::Increasing)
    } else if decr {
        Some(Direction::Decreasing)
    } else {
        None
    }
}

/// Check `f^(n)(a) = f^(n)(b) = 0` (within 1e-12) and `f^(n) > 0` on 100
/// interior samples, for n in {1, 2}.
fn detect_up_class(map: &RealMap) -> Option<UpClass> {
    let Interval { a, b } = map.domain;
    'outer: for n in 1u32..=2 {
        let da = map.derivative(n, a)?;
        let db = map.derivative(n, b)?;
        if da.abs() > 1e-12 || db.abs() > 1e-12 {
            continue;
        }
        for i in 1..=100 {
            let t = a + (b - a) * i as f64 / 101.0;
            if map.derivative(n, t)? <= 0.0 {
                continue 'outer;
            }
        }
        return Some(UpClass { n });
    }
    None
}

// ---------------------------------------------------------------------
// string ids
// ---------------------------------------------------------------------

/// Parse a catalog id on the given domain. Supported forms:
///
/// * `power:r=0.5`
/// * `poly:0,1` (coefficients, constant first) or `poly:1x`, `poly:x^2`
/// * `identity` (alias for `poly:0,1`), `const:3`
/// * `sine:scale=1;freq=1`
/// * `exp:scale=1`
/// * `step:points=0;left=-1;right=0` (comma lists; at-point value is the
///   left value at the domain's left endpoint and the right value
///   elsewhere, matching the proof functions; override with `at=...`)
/// * `pl:knots=0,0.5,1;values=0,1,0`
pub fn parse_id(id: &str, domain: Interval) -> Result<CatalogEntry> {
    let (head, rest) = match id.split_once(':') {
        Some((h, r)) => (h, r),
        None => (id, ""),
    };
    let kind = match head {
        "power" => {
            let kv = parse_kv(rest)?;
            MapKind::Power {
                r: get_num(&kv, "r")?,
            }
        }
        "poly" | "polynomial" => MapKind::Polynomial {
            coeffs: parse_poly(rest)?,
        },
        "identity" => MapKind::Polynomial {
            coeffs: vec![0.0, 1.0],
        },
        "const" => MapKind::Polynomial {
            coeffs: vec![parse_num(rest)?],
        },
        "sine" => {
            let kv = parse_kv(rest)?;
            MapKind::Sine {
                scale: get_num(&kv, "scale")?,
                freq: get_num(&kv, "freq")?,
            }
        }
        "exp" | "exponential" => {
            let kv = parse_kv(rest)?;
            MapKind::Exponential {
                scale: get_num(&kv, "scale")?,
            }
        }
        "step" => {
            let kv = parse_kv(rest)?;
            let points = get_list(&kv, "points")?;
            let left = get_list(&kv, "left")?;
            let right = get_list(&kv, "right")?;
            let at = match kv.iter().find(|(k, _)| k == "at") {
                Some((_, v)) => Some(parse_list(v)?),
                None => None,
            };
            if points.len() != left.len() || points.len() != right.len() {
                return Err(Error::InvalidParameters(
                    "step: points/left/right lengths differ".into(),
                ));
            }
            let jumps = points
                .iter()
                .enumerate()
                .map(|(i, &point)| Jump {
                    point,
                    left: left[i],
                    right: right[i],
                    at: match &at {
                        Some(v) => v[i],
                        None if point == domain.a => left[i],
                        None => right[i],
                    },
                })
                .collect();
            MapKind::Step { jumps }
        }
        "pl" | "piecewise-linear" => {
            let kv = parse_kv(rest)?;
            MapKind::PiecewiseLinear {
                knots: get_list(&kv, "knots")?,
                values: get_list(&kv, "values")?,
            }
        }
        other => return Err(Error::UnsupportedKind(other.to_string())),
    };
    make_catalog_entry(id, kind, domain)
}

fn parse_kv(s: &str) -> Result<Vec<(String, String)>> {
    s.split(';')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::InvalidParameters(format!("expected key=value in `{p}`")))
        })
        .collect()
}

fn get_num(kv: &[(String, String)], key: &str) -> Result<f64> {
    kv.iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| Error::InvalidParameters(format!("missing parameter `{key}`")))
        .and_then(|(_, v)| parse_num(v))
}

fn parse_num(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::InvalidParameters(format!("bad number `{s}`")))
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_num).collect()
}

fn get_list(kv: &[(String, String)], key: &str) -> Result<Vec<f64>> {
    kv.iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| Error::InvalidParameters(format!("missing parameter `{key}`")))
        .and_then(|(_, v)| parse_list(v))
}

/// Polynomial spec: either a comma list of coefficients (`0,1`) or a sum
/// of terms like `1x`, `2x^2`, `0.5`, joined by `+` or `-`.
fn parse_poly(s: &str) -> Result<Vec<f64>> {
    if !s.contains('x') {
        return parse_list(s);
    }
    let mut coeffs: Vec<f64> = Vec::new();
    let normalized = s.replace('-', "+-");
    for term in normalized.split('+').filter(|t| !t.trim().is_empty()) {
        let term = term.trim();
        let (coeff_str, power) = match term.split_once('x') {
            None => (term, 0usize),
            Some((c, tail)) => {
                let p = match tail.strip_prefix('^') {
                    Some(e) => e.trim().parse::<usize>().map_err(|_| {
                        Error::InvalidParameters(format!("bad exponent in `{term}`"))
                    })?,
                    None if tail.trim().is_empty() => 1,
                    None => {
                        return Err(Error::InvalidParameters(format!("bad term `{term}`")))
                    }
                };
                (c, p)
            }
        };
        let c = match coeff_str.trim() {
            "" => 1.0,
            "-" => -1.0,
            other => parse_num(other)?,
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0.0);
        }
        coeffs[power] += c;
    }
    Ok(coeffs)
}

// ---------------------------------------------------------------------
// metadata honesty checks
// ---------------------------------------------------------------------

/// Sampling validation of a profile: Hölder pairs at 10^4 random point
/// pairs, derivative/finite-difference agreement, and the class-membership
/// endpoint/positivity conditions. Returns the list of failures.
pub fn validate_entry(entry: &CatalogEntry, seed: u64) -> Vec<String> {
    use rand::{Rng, SeedableRng};
    let mut failures = Vec::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let Interval { a, b } = entry.map.domain;

    if let Some((h, r)) = entry.profile.hoelder {
        for _ in 0..10_000 {
            let s = rng.gen_range(a..=b);
            let t = rng.gen_range(a..=b);
            let lhs = (entry.map.eval_unchecked(s) - entry.map.eval_unchecked(t)).abs();
            let rhs = h * (s - t).abs().powf(r);
            if lhs > rhs * (1.0 + 1e-9) + 1e-14 {
                failures.push(format!(
                    "{}: hoelder ({h},{r}) violated at ({s},{t}): {lhs} > {rhs}",
                    entry.id
                ));
                break;
            }
        }
    }
    if let (Some(l), Some((h, r))) = (entry.profile.lipschitz, entry.profile.hoelder) {
        if r == 1.0 && (l - h).abs() > 1e-12 * l.abs().max(1.0) {
            failures.push(format!("{}: lipschitz {l} != hoelder constant {h}", entry.id));
        }
    }

    // closed-form derivatives vs central finite differences
    let orders = entry.map.derivative_order_available().min(3);
    for k in 1..=orders {
        let fd_h = 1e-5 * (b - a);
        for i in 1..=100 {
            let t = a + (b - a) * i as f64 / 101.0;
            if t - fd_h < a || t + fd_h > b {
                continue;
            }
            let lo = entry.map.derivative(k - 1, t - fd_h).unwrap();
            let hi = entry.map.derivative(k - 1, t + fd_h).unwrap();
            let fd = (hi - lo) / (2.0 * fd_h);
            let an = entry.map.derivative(k, t).unwrap();
            let scale = an.abs().max(1.0);
            if (fd - an).abs() > 1e-6 * scale {
                failures.push(format!(
                    "{}: derivative order {k} disagrees with finite difference at t={t}",
                    entry.id
                ));
                break;
            }
        }
    }

    if let Some(UpClass { n }) = entry.profile.up_class {
        let da = entry.map.derivative(n, a).unwrap_or(f64::NAN);
        let db = entry.map.derivative(n, b).unwrap_or(f64::NAN);
        if da.abs() > 1e-12 || db.abs() > 1e-12 {
            failures.push(format!("{}: n={n} derivative not vanishing at endpoints", entry.id));
        }
        for i in 1..=100 {
            let t = a + (b - a) * i as f64 / 101.0;
            if entry.map.derivative(n, t).unwrap_or(-1.0) <= 0.0 {
                failures.push(format!("{}: n={n} derivative not positive at t={t}", entry.id));
                break;
            }
        }
    }
    failures
}

/// The catalog shipped for sweeps and certification tests: smooth, rough
/// and discontinuous members, including the proof's step integrators and
/// class members with n = 1 and n = 2.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    let unit = Interval::new(0.0, 1.0).unwrap();
    let ids = [
        "power:r=0.25",
        "power:r=0.5",
        "power:r=2",
        "identity",
        "poly:0,0,0.5,-0.33333333333333331", // t^2/2 - t^3/3: first derivative t(1-t)
        "poly:0,0,0,0.16666666666666666,-0.083333333333333329", // t^3/6 - t^4/12
        "sine:scale=1;freq=1",
        "exp:scale=1",
        "step:points=0;left=-1;right=0",
        "step:points=1;left=0;right=1",
        "step:points=0,1;left=1,0;right=0,1",
        "pl:knots=0,0.5,1;values=0,1,0",
    ];
    ids.iter().map(|id| parse_id(id, unit).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn power_half_profile_and_eval() {
        let e = parse_id("power:r=0.5", unit()).unwrap();
        assert_eq!(e.profile.hoelder, Some((1.0, 0.5)));
        assert_eq!(e.map.eval(0.25).unwrap(), 0.5);
        assert!(e.map.eval(1.5).is_err());
    }

    #[test]
    fn identity_profile() {
        let e = parse_id("identity", unit()).unwrap();
        assert_eq!(e.profile.monotone, Some(Direction::Increasing));
        let l = e.profile.lipschitz.unwrap();
        assert!((l - 1.0).abs() < 1e-9, "lipschitz {l}");
    }

    #[test]
    fn step_at_point_values() {
        // the first proof integrator: u(0) = -1, u = 0 on (0, 1]
        let e = parse_id("step:points=0;left=-1;right=0", unit()).unwrap();
        assert_eq!(e.map.eval(0.0).unwrap(), -1.0);
        assert_eq!(e.map.eval(0.5).unwrap(), 0.0);
        assert_eq!(e.map.right_limit(0.0), 0.0);
        assert_eq!(e.map.left_limit(0.0), -1.0);
        // the second proof integrator: u = 0 on [0, 1), u(1) = 1
        let e2 = parse_id("step:points=1;left=0;right=1", unit()).unwrap();
        assert_eq!(e2.map.eval(1.0).unwrap(), 1.0);
        assert_eq!(e2.map.left_limit(1.0), 0.0);
        assert_eq!(e2.map.eval(0.999).unwrap(), 0.0);
    }

    #[test]
    fn indicator_step() {
        let e = parse_id("step:points=0,1;left=1,0;right=0,1", unit()).unwrap();
        assert_eq!(e.map.eval(0.0).unwrap(), 1.0);
        assert_eq!(e.map.eval(1.0).unwrap(), 1.0);
        assert_eq!(e.map.eval(0.4).unwrap(), 0.0);
    }

    #[test]
    fn sine_eval() {
        let d = Interval::new(0.0, 2.0 * std::f64::consts::PI).unwrap();
        let e = parse_id("sine:scale=1;freq=1", d).unwrap();
        assert!((e.map.eval(std::f64::consts::FRAC_PI_2).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bad_step_points_rejected() {
        assert!(parse_id("step:points=0.5,0.2;left=0,1;right=1,2", unit()).is_err());
        assert!(parse_id("nosuchkind:x=1", unit()).is_err());
    }

    #[test]
    fn up_class_detection() {
        let cubic = parse_id("poly:0,0,0.5,-0.33333333333333331", unit()).unwrap();
        assert_eq!(cubic.profile.up_class, Some(UpClass { n: 1 }));
        let quartic =
            parse_id("poly:0,0,0,0.16666666666666666,-0.083333333333333329", unit()).unwrap();
        assert_eq!(quartic.profile.up_class, Some(UpClass { n: 2 }));
        let ident = parse_id("identity", unit()).unwrap();
        assert_eq!(ident.profile.up_class, None);
    }

    #[test]
    fn poly_term_syntax() {
        let e = parse_id("poly:1x", unit()).unwrap();
        assert_eq!(e.map.eval(0.5).unwrap(), 0.5);
        let e2 = parse_id("poly:2x^2+1", unit()).unwrap();
        assert_eq!(e2.map.eval(0.5).unwrap(), 1.5);
    }

    #[test]
    fn whole_catalog_validates() {
        for entry in standard_catalog() {
            let failures = validate_entry(&entry, 42);
            assert!(failures.is_empty(), "{failures:?}");
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let d = Interval::new(0.1, 2.0).unwrap();
        for id in ["power:r=1.5", "poly:1,2,3", "sine:scale=2;freq=3", "exp:scale=-1"] {
            let e = parse_id(id, d).unwrap();
            let failures = validate_entry(&e, 7);
            assert!(failures.is_empty(), "{id}: {failures:?}");
        }
    }
}
