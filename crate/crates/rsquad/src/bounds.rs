//! A priori error-bound formulas for the two-point rule, as pure functions
//! of constants, nodes, and variation or norm inputs.
//!
//! Two theorems carry dual forms. The published right-hand side ("stated")
//! uses the whole-interval variation through the step
//! `V_p(a,x) + V_p(x,b) <= V_p(a,b)`, which fails for p > 1 (unit rise then
//! unit fall: 1 + 1 > sqrt(2) at p = 2). The "proof-safe" form keeps the
//! per-subinterval sum from the proof. Both are exposed; the harness
//! compares rather than trusts.

use crate::rules::NodeTriple;
use crate::{Error, Interval, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    Thm1,
    Thm1Safe,
    Thm2,
    Thm3,
    Thm4,
    Thm4Safe,
    Thm5,
    Lemma1,
    Lemma2,
    Cor4,
    Eq36,
    Eq37,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::Thm1,
        TheoremId::Thm1Safe,
        TheoremId::Thm2,
        TheoremId::Thm3,
        TheoremId::Thm4,
        TheoremId::Thm4Safe,
        TheoremId::Thm5,
        TheoremId::Lemma1,
        TheoremId::Lemma2,
        TheoremId::Cor4,
        TheoremId::Eq36,
        TheoremId::Eq37,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm1 => "thm1",
            TheoremId::Thm1Safe => "thm1-safe",
            TheoremId::Thm2 => "thm2",
            TheoremId::Thm3 => "thm3",
            TheoremId::Thm4 => "thm4",
            TheoremId::Thm4Safe => "thm4-safe",
            TheoremId::Thm5 => "thm5",
            TheoremId::Lemma1 => "lemma1",
            TheoremId::Lemma2 => "lemma2",
            TheoremId::Cor4 => "cor4",
            TheoremId::Eq36 => "eq3.6",
            TheoremId::Eq37 => "eq3.7",
        }
    }

    /// True for the evaluators that require the interior ordering
    /// t0 <= x <= t1.
    pub fn needs_x_between(self) -> bool {
        matches!(
            self,
            TheoremId::Thm1 | TheoremId::Thm1Safe | TheoremId::Thm2 | TheoremId::Thm3 | TheoremId::Cor4
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown theorem id {s}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundForm {
    Stated,
    ProofSafe,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub value: f64,
    pub theorem: TheoremId,
    pub form: BoundForm,
}

impl BoundValue {
    fn stated(value: f64, theorem: TheoremId) -> BoundValue {
        BoundValue { value, theorem, form: BoundForm::Stated }
    }
    fn proof_safe(value: f64, theorem: TheoremId) -> BoundValue {
        BoundValue { value, theorem, form: BoundForm::ProofSafe }
    }
}

/// `base^exp` with the degenerate-node conventions: exponent 0 gives 1
/// (covers the p=1 limit of 1-1/p powers) and nonpositive base gives 0.
pub fn powr(base: f64, exp: f64) -> f64 {
    if exp == 0.0 {
        1.0
    } else if base <= 0.0 {
        0.0
    } else if exp == 1.0 {
        base
    } else {
        (exp * base.ln()).exp()
    }
}

fn require_between(nodes: &NodeTriple, theorem: TheoremId) -> Result<()> {
    if nodes.x_between() {
        Ok(())
    } else {
        Err(Error::HypothesisMismatch {
            theorem: theorem.as_str(),
            reason: format!(
                "ordering class {} but t0 <= x <= t1 required",
                nodes.ordering_class().as_str()
            ),
        })
    }
}

fn require_nonneg(pairs: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in pairs {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameters(format!("{name} must be finite and >= 0, got {v}")));
        }
    }
    Ok(())
}

fn require_hoelder_exponent(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::BadExponent(format!("Hoelder exponent must lie in (0,1], got {r}")))
    }
}

fn require_p(p: f64, min: f64) -> Result<()> {
    if p >= min && p.is_finite() {
        Ok(())
    } else {
        Err(Error::BadExponent(format!("need p >= {min}, got {p}")))
    }
}

/// Half-width plus node offset on [lo, hi]: `(hi-lo)/2 + |node - (lo+hi)/2|`.
/// Equals `max(node - lo, hi - node)` for node in [lo, hi].
fn half_plus_offset(lo: f64, hi: f64, node: f64) -> f64 {
    0.5 * (hi - lo) + (node - 0.5 * (lo + hi)).abs()
}

/// `|∫ w dν| <= sup|w| · V_p(ν)` (and the tighter oscillation product when
/// the oscillation is supplied instead).
pub fn lemma1_bound(sup_w: f64, variation: f64) -> Result<BoundValue> {
    require_nonneg(&[("sup_w", sup_w), ("variation", variation)])?;
    Ok(BoundValue::stated(sup_w * variation, TheoremId::Lemma1))
}

/// `|∫ w dν| <= L (b-a)^{1-1/p} ‖w‖_p` for L-Lipschitz ν.
pub fn lemma2_bound(l: f64, interval: Interval, p: f64, w_norm_p: f64) -> Result<BoundValue> {
    require_nonneg(&[("L", l), ("w_norm_p", w_norm_p)])?;
    require_p(p, 1.0)?;
    let v = l * powr(interval.length(), 1.0 - 1.0 / p) * w_norm_p;
    Ok(BoundValue::stated(v, TheoremId::Lemma2))
}

/// The two max-terms of the first main bound:
/// `A = (x-a)/2 + |t0 - (a+x)/2|`, `B = (b-x)/2 + |t1 - (x+b)/2|`.
pub fn max_terms(nodes: &NodeTriple) -> (f64, f64) {
    let (a, b) = (nodes.interval.a, nodes.interval.b);
    (
        half_plus_offset(a, nodes.x, nodes.t0),
        half_plus_offset(nodes.x, b, nodes.t1),
    )
}

/// Stated form: `H max{A, B}^r V_p(u; a, b)`.
pub fn thm1_bound(h: f64, r: f64, nodes: &NodeTriple, v_ab: f64) -> Result<BoundValue> {
    require_between(nodes, TheoremId::Thm1)?;
    require_nonneg(&[("H", h), ("V", v_ab)])?;
    require_hoelder_exponent(r)?;
    let (ta, tb) = max_terms(nodes);
    Ok(BoundValue::stated(h * powr(ta.max(tb), r) * v_ab, TheoremId::Thm1))
}

/// Proof-safe form: `H A^r V_p(u; a, x) + H B^r V_p(u; x, b)`.
pub fn thm1_bound_safe(h: f64, r: f64, nodes: &NodeTriple, v_ax: f64, v_xb: f64) -> Result<BoundValue> {
    require_between(nodes, TheoremId::Thm1Safe)?;
    require_nonneg(&[("H", h), ("V(a,x)", v_ax), ("V(x,b)", v_xb)])?;
    require_hoelder_exponent(r)?;
    let (ta, tb) = max_terms(nodes);
    Ok(BoundValue::proof_safe(
        h * powr(ta, r) * v_ax + h * powr(tb, r) * v_xb,
        TheoremId::Thm1Safe,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Thm1Corollary {
    Trapezoid { x: f64 },
    Midpoint,
    Symmetric { y: f64 },
    HalfNodes { x: f64 },
}

/// Closed-form specializations of the first main bound at preset nodes.
pub fn thm1_corollary_bounds(
    case: Thm1Corollary,
    h: f64,
    r: f64,
    interval: Interval,
    v: f64,
) -> Result<BoundValue> {
    require_nonneg(&[("H", h), ("V", v)])?;
    require_hoelder_exponent(r)?;
    let (a, b) = (interval.a, interval.b);
    let len = interval.length();
    let value = match case {
        Thm1Corollary::Trapezoid { x } => h * powr(half_plus_offset(a, b, x), r) * v,
        Thm1Corollary::Midpoint => h * powr(0.25 * len, r) * v,
        Thm1Corollary::Symmetric { y } => {
            h * powr(0.25 * len + (y - 0.25 * (3.0 * a + b)).abs(), r) * v
        }
        Thm1Corollary::HalfNodes { x } => {
            h / powr(2.0, r) * powr(half_plus_offset(a, b, x), r) * v
        }
    };
    Ok(BoundValue::stated(value, TheoremId::Thm1))
}

/// Same max-term as the first main bound with the variation replaced by
/// `‖g‖_p` for an integrator given as `u(t) = ∫_a^t g`.
pub fn cor4_bound(h: f64, r: f64, nodes: &NodeTriple, g_norm_p: f64) -> Result<BoundValue> {
    require_between(nodes, TheoremId::Cor4)?;
    require_nonneg(&[("H", h), ("g_norm_p", g_norm_p)])?;
    require_hoelder_exponent(r)?;
    let (ta, tb) = max_terms(nodes);
    Ok(BoundValue::stated(h * powr(ta.max(tb), r) * g_norm_p, TheoremId::Cor4))
}

/// Bound for Hoelder integrand against a Lipschitz integrator:
/// `HL Σ_side (side)^{1-1/p} ( (inner powers)/(rp+1) )^{1/p}`.
pub fn thm2_bound(h: f64, l: f64, r: f64, p: f64, nodes: &NodeTriple) -> Result<BoundValue> {
    require_between(nodes, TheoremId::Thm2)?;
    require_nonneg(&[("H", h), ("L", l)])?;
    require_hoelder_exponent(r)?;
    require_p(p, 1.0)?;
    let (a, b) = (nodes.interval.a, nodes.interval.b);
    let rp1 = r * p + 1.0;
    let side = |lo: f64, node: f64, hi: f64| {
        powr(hi - lo, 1.0 - 1.0 / p)
            * powr((powr(node - lo, rp1) + powr(hi - node, rp1)) / rp1, 1.0 / p)
    };
    let value = h * l * (side(a, nodes.t0, nodes.x) + side(nodes.x, nodes.t1, b));
    Ok(BoundValue::stated(value, TheoremId::Thm2))
}

/// The closed-form constant printed for the quartile preset,
/// `HL (b-a)^{1+r} / (2^{2r+1/p} (rp+1)^{1/p})`. Kept separate because it
/// disagrees with [`thm2_bound`] at the same nodes by the factor `2^{1/p}`;
/// the general formula is treated as the source of truth.
pub fn thm2_quartile_closed_form(h: f64, l: f64, r: f64, p: f64, interval: Interval) -> f64 {
    let rp1 = r * p + 1.0;
    h * l * powr(interval.length(), 1.0 + r)
        / (powr(2.0, 2.0 * r + 1.0 / p) * powr(rp1, 1.0 / p))
}

/// `(p sin(π/p) / (π (p-1)^{1/p}))^n`; defined for p > 1, tends to 1 as
/// p → ∞.
pub fn thm3_constant(p: f64, n: u32) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::BadExponent(format!("the constant factor needs p > 1, got {p}")));
    }
    let base = p * (std::f64::consts::PI / p).sin()
        / (std::f64::consts::PI * powr(p - 1.0, 1.0 / p));
    Ok(base.powi(n as i32))
}

fn thm3_geometry(nodes: &NodeTriple, p_exponent: f64, n: u32) -> f64 {
    let (a, b) = (nodes.interval.a, nodes.interval.b);
    powr(nodes.x - a, p_exponent) * half_plus_offset(a, nodes.x, nodes.t0).powi(n as i32)
        + powr(b - nodes.x, p_exponent) * half_plus_offset(nodes.x, b, nodes.t1).powi(n as i32)
}

/// Bound through the n-th derivative:
/// `L C(p)^n { (x-a)^{1-1/p} A^n + (b-x)^{1-1/p} B^n } ‖f^{(n)}‖_p`.
pub fn thm3_bound(l: f64, n: u32, p: f64, nodes: &NodeTriple, fn_norm_p: f64) -> Result<BoundValue> {
    require_between(nodes, TheoremId::Thm3)?;
    require_nonneg(&[("L", l), ("fn_norm_p", fn_norm_p)])?;
    if n == 0 {
        return Err(Error::InvalidParameters("derivative order n must be >= 1".into()));
    }
    let c = thm3_constant(p, n)?;
    Ok(BoundValue::stated(
        l * c * thm3_geometry(nodes, 1.0 - 1.0 / p, n) * fn_norm_p,
        TheoremId::Thm3,
    ))
}

/// The p → ∞ form: `L { (x-a) A^n + (b-x) B^n } ‖f^{(n)}‖_∞`.
pub fn thm3_bound_sup(l: f64, n: u32, nodes: &NodeTriple, fn_norm_inf: f64) -> Result<BoundValue> {
    require_between(nodes, TheoremId::Thm3)?;
    require_nonneg(&[("L", l), ("fn_norm_inf", fn_norm_inf)])?;
    if n == 0 {
        return Err(Error::InvalidParameters("derivative order n must be >= 1".into()));
    }
    Ok(BoundValue::stated(
        l * thm3_geometry(nodes, 1.0, n) * fn_norm_inf,
        TheoremId::Thm3,
    ))
}

/// The three length terms of the second main bound: `t0-a`,
/// `(t1-t0)/2 + |x-(t0+t1)/2|`, `b-t1`.
pub fn thm4_terms(nodes: &NodeTriple) -> (f64, f64, f64) {
    let (a, b) = (nodes.interval.a, nodes.interval.b);
    (
        nodes.t0 - a,
        half_plus_offset(nodes.t0, nodes.t1, nodes.x),
        b - nodes.t1,
    )
}

/// Stated form: `H max{t0-a, middle, b-t1}^r V_p(f; a, b)`. Valid for any
/// x in [a,b].
pub fn thm4_bound(h: f64, r: f64, nodes: &NodeTriple, v_f_ab: f64) -> Result<BoundValue> {
    require_nonneg(&[("H", h), ("V(f)", v_f_ab)])?;
    require_hoelder_exponent(r)?;
    let (ta, tm, tb) = thm4_terms(nodes);
    Ok(BoundValue::stated(h * powr(ta.max(tm).max(tb), r) * v_f_ab, TheoremId::Thm4))
}

/// Proof-safe form with the variation of f split at t0 and t1.
pub fn thm4_bound_safe(
    h: f64,
    r: f64,
    nodes: &NodeTriple,
    v_a_t0: f64,
    v_t0_t1: f64,
    v_t1_b: f64,
) -> Result<BoundValue> {
    require_nonneg(&[("H", h), ("V(a,t0)", v_a_t0), ("V(t0,t1)", v_t0_t1), ("V(t1,b)", v_t1_b)])?;
    require_hoelder_exponent(r)?;
    let (ta, tm, tb) = thm4_terms(nodes);
    Ok(BoundValue::proof_safe(
        h * powr(ta, r) * v_a_t0 + h * powr(tm, r) * v_t0_t1 + h * powr(tb, r) * v_t1_b,
        TheoremId::Thm4Safe,
    ))
}

/// Bound for Lipschitz integrand against a Hoelder integrator:
/// `LH [ (t0-a)^{r+1}/(rp+1)^{1/p} + (t1-t0)^{1-1/p} (M/(rp+1))^{1/p}
///       + (b-t1)^{r+1}/(rp+1)^{1/p} ]`
/// where M depends on the ordering class of x against [t0, t1].
pub fn thm5_bound(l: f64, h: f64, r: f64, p: f64, nodes: &NodeTriple) -> Result<BoundValue> {
    require_nonneg(&[("L", l), ("H", h)])?;
    require_hoelder_exponent(r)?;
    require_p(p, 1.0)?;
    let (a, b) = (nodes.interval.a, nodes.interval.b);
    let (t0, x, t1) = (nodes.t0, nodes.x, nodes.t1);
    let rp1 = r * p + 1.0;
    let m = if x <= t0 {
        powr(t1 - x, rp1) - powr(t0 - x, rp1)
    } else if x <= t1 {
        powr(x - t0, rp1) + powr(t1 - x, rp1)
    } else {
        powr(x - t0, rp1) - powr(x - t1, rp1)
    };
    let m = m.max(0.0);
    let outer = |len: f64| powr(len, r + 1.0) / powr(rp1, 1.0 / p);
    let value = l * h
        * (outer(t0 - a) + powr(t1 - t0, 1.0 - 1.0 / p) * powr(m / rp1, 1.0 / p) + outer(b - t1));
    Ok(BoundValue::stated(value, TheoremId::Thm5))
}

/// Specializations of [`thm5_bound`]: a power-kernel integrator `u = t^r`
/// (Hoelder constant 1) and a K-Lipschitz integrator (r = 1, H = K).
pub fn thm5_presets(
    preset: TheoremId,
    l: f64,
    k_or_r: f64,
    p: f64,
    nodes: &NodeTriple,
) -> Result<BoundValue> {
    match preset {
        TheoremId::Eq36 => {
            let r = k_or_r;
            let b = thm5_bound(l, 1.0, r, p, nodes)?;
            Ok(BoundValue::stated(b.value, TheoremId::Eq36))
        }
        TheoremId::Eq37 => {
            let k = k_or_r;
            let b = thm5_bound(l, k, 1.0, p, nodes)?;
            Ok(BoundValue::stated(b.value, TheoremId::Eq37))
        }
        other => Err(Error::InvalidConfig(format!("{other} is not a thm5 preset"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    fn nodes(t0: f64, x: f64, t1: f64) -> NodeTriple {
        NodeTriple::new(t0, x, t1, unit()).unwrap()
    }

    fn quartile() -> NodeTriple {
        nodes(0.25, 0.5, 0.75)
    }

    #[test]
    fn lemma_values() {
        assert_eq!(lemma1_bound(1.0, 1.0).unwrap().value, 1.0);
        assert_eq!(lemma1_bound(0.5, 2.0).unwrap().value, 1.0);
        let iv = Interval::new(0.0, 4.0).unwrap();
        assert_eq!(lemma2_bound(2.0, iv, 2.0, 3.0).unwrap().value, 12.0);
        assert_eq!(lemma2_bound(2.0, unit(), 1.0, 3.0).unwrap().value, 6.0);
    }

    #[test]
    fn thm1_quartile_value() {
        let b = thm1_bound(1.0, 1.0, &quartile(), 1.0).unwrap();
        assert_eq!(b.value, 0.25);
    }

    #[test]
    fn thm1_rejects_outside_class() {
        let n = nodes(0.5, 0.25, 0.75);
        assert!(matches!(
            thm1_bound(1.0, 1.0, &n, 1.0),
            Err(Error::HypothesisMismatch { .. })
        ));
    }

    #[test]
    fn thm1_extremal_value() {
        // t0 = 1/2, x = t1 = 1: A = 1/2, B = 0
        for r in [0.25, 0.5, 1.0] {
            let n = nodes(0.5, 1.0, 1.0);
            let b = thm1_bound(1.0, r, &n, 1.0).unwrap();
            assert!((b.value - 0.5f64.powf(r)).abs() < 1e-15);
        }
    }

    #[test]
    fn corollary_values() {
        let v = thm1_corollary_bounds(Thm1Corollary::Trapezoid { x: 0.5 }, 1.0, 1.0, unit(), 1.0)
            .unwrap();
        assert_eq!(v.value, 0.5);
        let v = thm1_corollary_bounds(Thm1Corollary::HalfNodes { x: 0.5 }, 1.0, 1.0, unit(), 1.0)
            .unwrap();
        assert_eq!(v.value, 0.25);
        let v = thm1_corollary_bounds(Thm1Corollary::Symmetric { y: 0.25 }, 1.0, 1.0, unit(), 1.0)
            .unwrap();
        assert_eq!(v.value, 0.25);
        let v = thm1_corollary_bounds(Thm1Corollary::Midpoint, 1.0, 1.0, unit(), 1.0).unwrap();
        assert_eq!(v.value, 0.25);
    }

    #[test]
    fn cor4_quartile_matches_thm1_shape() {
        let b = cor4_bound(1.0, 1.0, &quartile(), 1.0).unwrap();
        assert_eq!(b.value, 0.25);
        let b = cor4_bound(1.0, 1.0, &quartile(), 2.0 / 3f64.sqrt()).unwrap();
        assert!((b.value - 0.25 * 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(cor4_bound(1.0, 1.0, &quartile(), 0.0).unwrap().value, 0.0);
    }

    #[test]
    fn thm2_reference_values() {
        let b = thm2_bound(1.0, 1.0, 1.0, 2.0, &quartile()).unwrap();
        assert!((b.value - 0.14433756729740646).abs() < 1e-12, "got {}", b.value);
        let b = thm2_bound(1.0, 1.0, 1.0, 2.0, &nodes(0.0, 0.5, 1.0)).unwrap();
        assert!((b.value - 0.28867513459481292).abs() < 1e-12, "got {}", b.value);
        // degenerate x = t0 = t1 = a: single term over the right half
        let n = nodes(0.0, 0.0, 0.0);
        let b = thm2_bound(1.0, 1.0, 1.0, 2.0, &n).unwrap();
        let expect = 1.0 * (1.0f64 / 3.0).sqrt();
        assert!((b.value - expect).abs() < 1e-12);
    }

    #[test]
    fn thm2_quartile_closed_form_ratio() {
        let closed = thm2_quartile_closed_form(1.0, 1.0, 1.0, 2.0, unit());
        assert!((closed - 0.10206207261596577).abs() < 1e-12, "got {closed}");
        let general = thm2_bound(1.0, 1.0, 1.0, 2.0, &quartile()).unwrap().value;
        assert!((general / closed - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn thm3_constant_values() {
        assert!((thm3_constant(2.0, 1).unwrap() - 2.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!((thm3_constant(1e4, 1).unwrap() - 1.0).abs() < 1e-3);
        assert!(thm3_constant(1.0, 1).is_err());
    }

    #[test]
    fn thm3_quartile_value() {
        let b = thm3_bound(1.0, 1, 2.0, &quartile(), 1.0).unwrap();
        let geometric = 2.0 * 0.5f64.sqrt() * 0.25;
        let expect = (2.0 / std::f64::consts::PI) * geometric;
        assert!((b.value - expect).abs() < 1e-12);
        assert!((b.value - 0.22507907903927651).abs() < 1e-8, "got {}", b.value);
    }

    #[test]
    fn thm4_reference_values() {
        let b = thm4_bound(1.0, 1.0, &quartile(), 1.0).unwrap();
        assert_eq!(b.value, 0.25);
        // t0 = a, t1 = b: only the middle term survives
        let n = nodes(0.0, 0.3, 1.0);
        let b = thm4_bound(1.0, 1.0, &n, 1.0).unwrap();
        assert!((b.value - (0.5 + 0.2)).abs() < 1e-15);
        // sharpness nodes (0, 1/2, 1), p = 1/r with r = 1: V_1 = 2
        let n = nodes(0.0, 0.5, 1.0);
        let b = thm4_bound(1.0, 1.0, &n, 2.0).unwrap();
        assert_eq!(b.value, 1.0);
    }

    #[test]
    fn thm5_reference_value() {
        let b = thm5_bound(1.0, 1.0, 1.0, 2.0, &quartile()).unwrap();
        assert!((b.value - 0.14433756729740646).abs() < 1e-12, "got {}", b.value);
        // t0 = a, t1 = b: only the middle term survives
        let b = thm5_bound(1.0, 1.0, 1.0, 2.0, &nodes(0.0, 0.5, 1.0)).unwrap();
        let expect = 1.0 * ((2.0 * 0.125) / 3.0f64).sqrt();
        assert!((b.value - expect).abs() < 1e-12);
        // degenerate t0 = t1 = x: middle term vanishes
        let b = thm5_bound(1.0, 1.0, 1.0, 2.0, &nodes(0.5, 0.5, 0.5)).unwrap();
        let expect = 2.0 * 0.5f64.powi(2) / 3f64.sqrt();
        assert!((b.value - expect).abs() < 1e-12);
    }

    #[test]
    fn thm5_presets_match() {
        let q = quartile();
        let via_37 = thm5_presets(TheoremId::Eq37, 1.0, 1.0, 2.0, &q).unwrap();
        let direct = thm5_bound(1.0, 1.0, 1.0, 2.0, &q).unwrap();
        assert_eq!(via_37.value, direct.value);
        assert_eq!(via_37.theorem, TheoremId::Eq37);
        let via_36 = thm5_presets(TheoremId::Eq36, 1.0, 0.5, 2.0, &q).unwrap();
        let direct = thm5_bound(1.0, 1.0, 0.5, 2.0, &q).unwrap();
        assert_eq!(via_36.value, direct.value);
    }

    #[test]
    fn theorem_id_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert!("thm9".parse::<TheoremId>().is_err());
    }

    fn interior_triple() -> impl Strategy<Value = NodeTriple> {
        (0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64).prop_map(|(u1, u2, u3)| {
            let mut v = [u1, u2, u3];
            v.sort_by(f64::total_cmp);
            NodeTriple::new(v[0], v[1], v[2], Interval::new(0.0, 1.0).unwrap()).unwrap()
        })
    }

    fn any_triple() -> impl Strategy<Value = NodeTriple> {
        (0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64).prop_map(|(u1, u2, u3)| {
            let (lo, hi) = if u1 <= u3 { (u1, u3) } else { (u3, u1) };
            NodeTriple::new(lo, u2, hi, Interval::new(0.0, 1.0).unwrap()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn nonnegativity(n in any_triple(), r in 0.05..1.0f64, p in 1.0..8.0f64,
                         h in 0.0..5.0f64, l in 0.0..5.0f64, v in 0.0..5.0f64) {
            prop_assert!(thm4_bound(h, r, &n, v).unwrap().value >= 0.0);
            prop_assert!(thm5_bound(l, h, r, p, &n).unwrap().value >= 0.0);
            prop_assert!(lemma2_bound(l, n.interval, p, v).unwrap().value >= 0.0);
            if n.x_between() {
                prop_assert!(thm1_bound(h, r, &n, v).unwrap().value >= 0.0);
                prop_assert!(thm2_bound(h, l, r, p, &n).unwrap().value >= 0.0);
            }
        }

        #[test]
        fn thm1_node_monotonicity(n in interior_triple(), r in 0.05..1.0f64,
                                  s in 0.0..1.0f64) {
            // pull t0 toward (a+x)/2 and t1 toward (x+b)/2 by factor s
            let c0 = 0.5 * n.x;
            let c1 = 0.5 * (n.x + 1.0);
            let pulled = NodeTriple::new(
                n.t0 + s * (c0 - n.t0),
                n.x,
                n.t1 + s * (c1 - n.t1),
                n.interval,
            ).unwrap();
            let before = thm1_bound(1.0, r, &n, 1.0).unwrap().value;
            let after = thm1_bound(1.0, r, &pulled, 1.0).unwrap().value;
            prop_assert!(after <= before + 1e-12);
        }

        #[test]
        fn thm1_reflection_symmetry(n in interior_triple(), r in 0.05..1.0f64) {
            let refl = NodeTriple::new(1.0 - n.t1, 1.0 - n.x, 1.0 - n.t0, n.interval).unwrap();
            let a = thm1_bound(1.0, r, &n, 1.0).unwrap().value;
            let b = thm1_bound(1.0, r, &refl, 1.0).unwrap().value;
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        }

        #[test]
        fn thm1_safe_le_stated_when_vars_split(n in interior_triple(), r in 0.05..1.0f64,
                                               v1 in 0.0..3.0f64, v2 in 0.0..3.0f64) {
            // with V(a,b) = V(a,x) + V(x,b), max{A,B}^r (V1+V2) >= A^r V1 + B^r V2
            let stated = thm1_bound(1.0, r, &n, v1 + v2).unwrap().value;
            let safe = thm1_bound_safe(1.0, r, &n, v1, v2).unwrap().value;
            prop_assert!(safe <= stated + 1e-12 * stated.max(1.0));
        }

        #[test]
        fn thm5_continuous_across_case_boundaries(n in interior_triple(),
                                                  r in 0.05..1.0f64, p in 1.0..8.0f64) {
            // evaluate both branch formulas at x = t0 and x = t1
            let at_t0 = NodeTriple::new(n.t0, n.t0, n.t1, n.interval).unwrap();
            let at_t1 = NodeTriple::new(n.t0, n.t1, n.t1, n.interval).unwrap();
            let v0 = thm5_bound(1.0, 1.0, r, p, &at_t0).unwrap().value;
            let v1 = thm5_bound(1.0, 1.0, r, p, &at_t1).unwrap().value;
            // nudge x across each boundary and compare
            let eps = 1e-9;
            for (base, x) in [(v0, n.t0), (v1, n.t1)] {
                for dx in [-eps, eps] {
                    let xs = (x + dx).clamp(0.0, 1.0);
                    let near = NodeTriple::new(n.t0, xs, n.t1, n.interval).unwrap();
                    let v = thm5_bound(1.0, 1.0, r, p, &near).unwrap().value;
                    prop_assert!((v - base).abs() < 1e-6, "jump at case boundary: {v} vs {base}");
                }
            }
        }

        #[test]
        fn preset_general_consistency(x in 0.0..1.0f64, r in 0.05..1.0f64) {
            // corollary closed forms equal the general stated bound at the
            // preset's nodes
            let iv = Interval::new(0.0, 1.0).unwrap();
            let tr = crate::rules::Preset::Trapezoid { x }.nodes(iv).unwrap();
            let a = thm1_bound(1.0, r, &tr, 1.0).unwrap().value;
            let b = thm1_corollary_bounds(Thm1Corollary::Trapezoid { x }, 1.0, r, iv, 1.0)
                .unwrap().value;
            prop_assert!((a - b).abs() <= 1e-12);
            let hn = crate::rules::Preset::HalfNodes { x }.nodes(iv).unwrap();
            let a = thm1_bound(1.0, r, &hn, 1.0).unwrap().value;
            let b = thm1_corollary_bounds(Thm1Corollary::HalfNodes { x }, 1.0, r, iv, 1.0)
                .unwrap().value;
            prop_assert!((a - b).abs() <= 1e-12);
            let y = 0.5 * x; // y in [a, mid]
            let sy = crate::rules::Preset::Symmetric { y }.nodes(iv).unwrap();
            let a = thm1_bound(1.0, r, &sy, 1.0).unwrap().value;
            let b = thm1_corollary_bounds(Thm1Corollary::Symmetric { y }, 1.0, r, iv, 1.0)
                .unwrap().value;
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }
}
