//! Pass/fail certificates tying rule, oracle and bound together, node-grid
//! sweeps, and the extremal configurations that attain equality.

use crate::bounds::{self, BoundForm, BoundValue, TheoremId};
use crate::catalog::{CatalogEntry, MapKind};
use crate::oracle::{self, IntegralResult};
use crate::rules::{self, NodeTriple};
use crate::variation::{self, PExponent};
use crate::{quad, Error, Interval, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    Equality,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Equality => "equality",
        }
    }
}

/// The proof-safe companion carried alongside a stated-form certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SafeCompanion {
    pub bound: BoundValue,
    pub slack: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub f_id: String,
    pub u_id: String,
    pub nodes: NodeTriple,
    pub theorem: TheoremId,
    pub p: f64,
    pub q_value: f64,
    pub oracle_value: f64,
    pub oracle_error: f64,
    pub oracle_method: oracle::IntegralMethod,
    pub remainder_abs: f64,
    pub bound: BoundValue,
    /// bound - |remainder|.
    pub slack: f64,
    pub verdict: Verdict,
    /// Populated for the stated forms of the two dual-form bounds.
    pub proof_safe: Option<SafeCompanion>,
    pub tol: f64,
}

fn verdict_for(slack: f64, bound: f64, oracle_error: f64) -> Verdict {
    if slack.abs() <= oracle_error + 1e-10 {
        Verdict::Equality
    } else if slack >= -(oracle_error + 1e-12 * bound.abs().max(1.0)) {
        Verdict::Holds
    } else {
        Verdict::Violated
    }
}

fn hoelder_of(e: &CatalogEntry, theorem: TheoremId) -> Result<(f64, f64)> {
    e.profile
        .hoelder
        .or(e.profile.lipschitz.map(|l| (l, 1.0)))
        .ok_or_else(|| Error::HypothesisMismatch {
            theorem: theorem.as_str(),
            reason: format!("{} carries no Hoelder pair", e.id),
        })
}

fn lipschitz_of(e: &CatalogEntry, theorem: TheoremId) -> Result<f64> {
    e.profile.lipschitz.ok_or_else(|| Error::HypothesisMismatch {
        theorem: theorem.as_str(),
        reason: format!("{} carries no Lipschitz constant", e.id),
    })
}

/// `(∫_c^d |f^{(n)}|^p)^{1/p}`.
pub fn nth_derivative_norm(
    map: &crate::catalog::RealMap,
    n: u32,
    p: f64,
    c: f64,
    d: f64,
) -> Result<f64> {
    if map.derivative_order_available() < n {
        return Err(Error::UnsupportedKind(format!(
            "no order-{n} derivative available"
        )));
    }
    let r = quad::adaptive_split(
        |t| map.derivative(n, t).expect("derivative available").abs().powf(p),
        c,
        d,
        &map.kink_points(),
        1e-12,
        1e-12,
        1 << 22,
    )?;
    Ok(r.value.max(0.0).powf(1.0 / p))
}

fn key(a: f64, b: f64) -> (u64, u64) {
    (a.to_bits(), b.to_bits())
}

/// Certifies one theorem for one (f, u) pair over many node triples,
/// computing the node-independent pieces (oracle value, whole-interval
/// variations and norms) once.
pub struct Certifier<'a> {
    pub f: &'a CatalogEntry,
    pub u: &'a CatalogEntry,
    pub theorem: TheoremId,
    pub p: f64,
    pub tol: f64,
    interval: Interval,
    oracle: IntegralResult,
    v_u_whole: f64,
    v_f_whole: f64,
    g_norm: f64,
    fn_norm: f64,
    n_order: u32,
    h: f64,
    r: f64,
    l: f64,
    // caches keyed by node coordinates, one per quantity
    split_u: HashMap<u64, (f64, f64)>,
    split_f: HashMap<(u64, u64), (f64, f64, f64)>,
    sup_cache: HashMap<(u64, u64, bool), f64>,
    norm_cache: HashMap<(u64, u64, bool), f64>,
}

fn vp_or_zero(map: &crate::catalog::RealMap, p: PExponent, c: f64, d: f64) -> Result<f64> {
    if d - c <= 0.0 {
        Ok(0.0)
    } else {
        Ok(variation::p_variation(map, p, c, d)?.value)
    }
}

impl<'a> Certifier<'a> {
    pub fn new(
        f: &'a CatalogEntry,
        u: &'a CatalogEntry,
        interval: Interval,
        theorem: TheoremId,
        p: f64,
        tol: f64,
    ) -> Result<Self> {
        let pe = PExponent::finite(p).map_err(|_| Error::BadExponent(format!("p = {p}")))?;
        let (a, b) = (interval.a, interval.b);
        let mut this = Certifier {
            f,
            u,
            theorem,
            p,
            tol,
            interval,
            oracle: oracle::rs_integral(&f.map, &u.map, a, b, tol)?,
            v_u_whole: 0.0,
            v_f_whole: 0.0,
            g_norm: 0.0,
            fn_norm: 0.0,
            n_order: 0,
            h: 0.0,
            r: 1.0,
            l: 0.0,
            split_u: HashMap::new(),
            split_f: HashMap::new(),
            sup_cache: HashMap::new(),
            norm_cache: HashMap::new(),
        };
        match theorem {
            TheoremId::Thm1 | TheoremId::Thm1Safe => {
                let (h, r) = hoelder_of(f, theorem)?;
                this.h = h;
                this.r = r;
                this.v_u_whole = vp_or_zero(&u.map, pe, a, b)?;
            }
            TheoremId::Thm2 => {
                let (h, r) = hoelder_of(f, theorem)?;
                this.h = h;
                this.r = r;
                this.l = lipschitz_of(u, theorem)?;
            }
            TheoremId::Thm3 => {
                let n = f
                    .profile
                    .up_class
                    .ok_or_else(|| Error::HypothesisMismatch {
                        theorem: theorem.as_str(),
                        reason: format!("{} carries no derivative-class marker", f.id),
                    })?
                    .n;
                if !(p > 1.0) {
                    return Err(Error::BadExponent(format!(
                        "the derivative-norm bound needs p > 1, got {p}"
                    )));
                }
                this.n_order = n;
                this.l = lipschitz_of(u, theorem)?;
                this.fn_norm = nth_derivative_norm(&f.map, n, p, a, b)?;
            }
            TheoremId::Thm4 | TheoremId::Thm4Safe => {
                let (h, r) = hoelder_of(u, theorem)?;
                this.h = h;
                this.r = r;
                this.v_f_whole = vp_or_zero(&f.map, pe, a, b)?;
            }
            TheoremId::Thm5 | TheoremId::Eq37 => {
                let (h, r) = hoelder_of(u, theorem)?;
                this.h = h;
                this.r = r;
                this.l = lipschitz_of(f, theorem)?;
            }
            TheoremId::Eq36 => {
                let MapKind::Power { r } = u.map.kind else {
                    return Err(Error::HypothesisMismatch {
                        theorem: theorem.as_str(),
                        reason: format!("{} is not a power-kernel integrator", u.id),
                    });
                };
                this.h = 1.0;
                this.r = r;
                this.l = lipschitz_of(f, theorem)?;
            }
            TheoremId::Lemma1 => {
                // node-dependent variations cached per x in certify()
            }
            TheoremId::Lemma2 => {
                this.l = lipschitz_of(u, theorem)?;
            }
            TheoremId::Cor4 => {
                let (h, r) = hoelder_of(f, theorem)?;
                this.h = h;
                this.r = r;
                if !u.map.is_continuous() || u.map.derivative_order_available() < 1 {
                    return Err(Error::HypothesisMismatch {
                        theorem: theorem.as_str(),
                        reason: format!("{} is not an integral of a density", u.id),
                    });
                }
                this.g_norm = variation::derivative_norm(&u.map, p, a, b)?;
            }
        }
        Ok(this)
    }

    pub fn oracle(&self) -> IntegralResult {
        self.oracle
    }

    fn u_split_at(&mut self, x: f64) -> Result<(f64, f64)> {
        let k = x.to_bits();
        if let Some(&v) = self.split_u.get(&k) {
            return Ok(v);
        }
        let pe = PExponent::finite(self.p)?;
        let (a, b) = (self.interval.a, self.interval.b);
        let v = (
            vp_or_zero(&self.u.map, pe, a, x)?,
            vp_or_zero(&self.u.map, pe, x, b)?,
        );
        self.split_u.insert(k, v);
        Ok(v)
    }

    fn f_split_at(&mut self, t0: f64, t1: f64) -> Result<(f64, f64, f64)> {
        let k = key(t0, t1);
        if let Some(&v) = self.split_f.get(&k) {
            return Ok(v);
        }
        let pe = PExponent::finite(self.p)?;
        let (a, b) = (self.interval.a, self.interval.b);
        let v = (
            vp_or_zero(&self.f.map, pe, a, t0)?,
            vp_or_zero(&self.f.map, pe, t0, t1)?,
            vp_or_zero(&self.f.map, pe, t1, b)?,
        );
        self.split_f.insert(k, v);
        Ok(v)
    }

    /// `sup_{t in [c,d]} |f(node) - f(t)|`, an upper envelope via the
    /// min/max of f.
    fn sup_dev(&mut self, node: f64, c: f64, d: f64, right: bool) -> f64 {
        // the split point x is c for the right piece and d for the left
        let k = (node.to_bits(), if right { c } else { d }.to_bits(), right);
        if let Some(&v) = self.sup_cache.get(&k) {
            return v;
        }
        let fx = self.f.map.eval_unchecked(node);
        let v = if d - c <= 0.0 {
            0.0
        } else {
            let (lo, hi) = variation::min_max(&self.f.map, c, d);
            (fx - lo).max(hi - fx).max(0.0)
        };
        self.sup_cache.insert(k, v);
        v
    }

    /// `(∫_c^d |f(node) - f(t)|^p dt)^{1/p}`.
    fn dev_norm(&mut self, node: f64, c: f64, d: f64, right: bool) -> Result<f64> {
        let k = (node.to_bits(), if right { c } else { d }.to_bits(), right);
        if let Some(&v) = self.norm_cache.get(&k) {
            return Ok(v);
        }
        let v = if d - c <= 0.0 {
            0.0
        } else {
            let fx = self.f.map.eval_unchecked(node);
            let p = self.p;
            let mut splits = self.f.map.kink_points();
            splits.extend(self.f.map.discontinuities());
            let r = quad::adaptive_split(
                |t| (fx - self.f.map.eval_unchecked(t)).abs().powf(p),
                c,
                d,
                &splits,
                1e-11,
                1e-11,
                1 << 22,
            )?;
            // biased up by the quadrature error so the bound never
            // understates
            (r.value + r.error).max(0.0).powf(1.0 / p)
        };
        self.norm_cache.insert(k, v);
        Ok(v)
    }

    pub fn certify(&mut self, nodes: &NodeTriple) -> Result<BoundCertificate> {
        if nodes.interval != self.interval {
            return Err(Error::BadNodes("nodes on a different interval".into()));
        }
        let rule = rules::remainder_with_oracle(&self.f.map, &self.u.map, nodes, self.oracle)?;
        let remainder_abs = rule.remainder.abs();
        let (a, b) = (self.interval.a, self.interval.b);

        let (bound, proof_safe_bound): (BoundValue, Option<BoundValue>) = match self.theorem {
            TheoremId::Thm1 => {
                let stated = bounds::thm1_bound(self.h, self.r, nodes, self.v_u_whole)?;
                let (vl, vr) = self.u_split_at(nodes.x)?;
                let safe = bounds::thm1_bound_safe(self.h, self.r, nodes, vl, vr)?;
                (stated, Some(safe))
            }
            TheoremId::Thm1Safe => {
                let (vl, vr) = self.u_split_at(nodes.x)?;
                (bounds::thm1_bound_safe(self.h, self.r, nodes, vl, vr)?, None)
            }
            TheoremId::Thm2 => (bounds::thm2_bound(self.h, self.l, self.r, self.p, nodes)?, None),
            TheoremId::Thm3 => (
                bounds::thm3_bound(self.l, self.n_order, self.p, nodes, self.fn_norm)?,
                None,
            ),
            TheoremId::Thm4 => {
                let stated = bounds::thm4_bound(self.h, self.r, nodes, self.v_f_whole)?;
                let (v0, v1, v2) = self.f_split_at(nodes.t0, nodes.t1)?;
                let safe = bounds::thm4_bound_safe(self.h, self.r, nodes, v0, v1, v2)?;
                (stated, Some(safe))
            }
            TheoremId::Thm4Safe => {
                let (v0, v1, v2) = self.f_split_at(nodes.t0, nodes.t1)?;
                (bounds::thm4_bound_safe(self.h, self.r, nodes, v0, v1, v2)?, None)
            }
            TheoremId::Thm5 => (bounds::thm5_bound(self.l, self.h, self.r, self.p, nodes)?, None),
            TheoremId::Eq36 => (
                bounds::thm5_presets(TheoremId::Eq36, self.l, self.r, self.p, nodes)?,
                None,
            ),
            TheoremId::Eq37 => (
                bounds::thm5_presets(TheoremId::Eq37, self.l, self.h, self.p, nodes)?,
                None,
            ),
            TheoremId::Lemma1 => {
                // the remainder splits at x into ∫(f(t0)-f)du + ∫(f(t1)-f)du,
                // each bounded by sup |w| times the integrator variation
                let pe = PExponent::finite(self.p)?;
                let (vl, vr) = {
                    let k = nodes.x.to_bits();
                    match self.split_u.get(&k) {
                        Some(&v) => v,
                        None => {
                            let v = (
                                vp_or_zero(&self.u.map, pe, a, nodes.x)?,
                                vp_or_zero(&self.u.map, pe, nodes.x, b)?,
                            );
                            self.split_u.insert(k, v);
                            v
                        }
                    }
                };
                let sl = self.sup_dev(nodes.t0, a, nodes.x, false);
                let sr = self.sup_dev(nodes.t1, nodes.x, b, true);
                let left = bounds::lemma1_bound(sl, vl)?;
                let right = bounds::lemma1_bound(sr, vr)?;
                (
                    BoundValue {
                        value: left.value + right.value,
                        theorem: TheoremId::Lemma1,
                        form: BoundForm::Stated,
                    },
                    None,
                )
            }
            TheoremId::Lemma2 => {
                let nl = self.dev_norm(nodes.t0, a, nodes.x, false)?;
                let nr = self.dev_norm(nodes.t1, nodes.x, b, true)?;
                let left = if nodes.x > a {
                    bounds::lemma2_bound(self.l, Interval::new(a, nodes.x)?, self.p, nl)?.value
                } else {
                    0.0
                };
                let right = if nodes.x < b {
                    bounds::lemma2_bound(self.l, Interval::new(nodes.x, b)?, self.p, nr)?.value
                } else {
                    0.0
                };
                (
                    BoundValue {
                        value: left + right,
                        theorem: TheoremId::Lemma2,
                        form: BoundForm::Stated,
                    },
                    None,
                )
            }
            TheoremId::Cor4 => (bounds::cor4_bound(self.h, self.r, nodes, self.g_norm)?, None),
        };

        let slack = bound.value - remainder_abs;
        let verdict = verdict_for(slack, bound.value, self.oracle.error_estimate);
        let proof_safe = proof_safe_bound.map(|bv| {
            let s = bv.value - remainder_abs;
            SafeCompanion {
                bound: bv,
                slack: s,
                verdict: verdict_for(s, bv.value, self.oracle.error_estimate),
            }
        });

        Ok(BoundCertificate {
            f_id: self.f.id.clone(),
            u_id: self.u.id.clone(),
            nodes: *nodes,
            theorem: self.theorem,
            p: self.p,
            q_value: rule.q_value,
            oracle_value: self.oracle.value,
            oracle_error: self.oracle.error_estimate,
            oracle_method: self.oracle.method,
            remainder_abs,
            bound,
            slack,
            verdict,
            proof_safe,
            tol: self.tol,
        })
    }
}

pub fn certify_one(
    f: &CatalogEntry,
    u: &CatalogEntry,
    nodes: &NodeTriple,
    theorem: TheoremId,
    p: f64,
    tol: f64,
) -> Result<BoundCertificate> {
    Certifier::new(f, u, nodes.interval, theorem, p, tol)?.certify(nodes)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub lo: f64,
    pub hi: f64,
    /// Number of grid points (>= 1); 1 pins the axis at `lo`.
    pub steps: u32,
}

impl AxisSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.hi } else { self.lo + h * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t0: AxisSpec,
    pub x: AxisSpec,
    pub t1: AxisSpec,
}

impl GridSpec {
    /// n uniform points per axis over the whole interval.
    pub fn cube(interval: Interval, n: u32) -> GridSpec {
        let ax = AxisSpec { lo: interval.a, hi: interval.b, steps: n };
        GridSpec { t0: ax, x: ax, t1: ax }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub points: usize,
    pub violations: usize,
    pub equalities: usize,
    pub min_slack: f64,
    pub argmin_nodes: Option<(f64, f64, f64)>,
    /// Counts of |remainder| / bound in [0, 0.1), ..., [0.9, 1.0], then > 1.
    pub tightness_histogram: [u32; 11],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub f_id: String,
    pub u_id: String,
    pub theorem: TheoremId,
    pub p: f64,
    pub tol: f64,
    pub grid: GridSpec,
    pub certificates: Vec<BoundCertificate>,
    /// Grid points whose evaluation failed, with the reason.
    pub failures: Vec<((f64, f64, f64), String)>,
    pub summary: SweepSummary,
}

/// Evaluates [`certify_one`] over the grid, in lexicographic (t0, x, t1)
/// order. Points outside the theorem's node-ordering class are skipped;
/// failures are recorded, not fatal.
pub fn sweep(
    f: &CatalogEntry,
    u: &CatalogEntry,
    interval: Interval,
    theorem: TheoremId,
    grid: &GridSpec,
    p: f64,
    tol: f64,
) -> Result<SweepReport> {
    let mut certifier = Certifier::new(f, u, interval, theorem, p, tol)?;
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    for &t0 in &grid.t0.points() {
        for &x in &grid.x.points() {
            for &t1 in &grid.t1.points() {
                if t0 > t1 || (theorem.needs_x_between() && !(t0 <= x && x <= t1)) {
                    continue;
                }
                let nodes = match NodeTriple::new(t0, x, t1, interval) {
                    Ok(n) => n,
                    Err(_) => continue,
                };
                match certifier.certify(&nodes) {
                    Ok(c) => certificates.push(c),
                    Err(e) => failures.push(((t0, x, t1), e.to_string())),
                }
            }
        }
    }
    let summary = summarize(&certificates);
    Ok(SweepReport {
        f_id: f.id.clone(),
        u_id: u.id.clone(),
        theorem,
        p,
        tol,
        grid: *grid,
        certificates,
        failures,
        summary,
    })
}

fn summarize(certs: &[BoundCertificate]) -> SweepSummary {
    let mut s = SweepSummary {
        points: certs.len(),
        violations: 0,
        equalities: 0,
        min_slack: f64::INFINITY,
        argmin_nodes: None,
        tightness_histogram: [0; 11],
    };
    for c in certs {
        match c.verdict {
            Verdict::Violated => s.violations += 1,
            Verdict::Equality => s.equalities += 1,
            Verdict::Holds => {}
        }
        if c.slack < s.min_slack {
            s.min_slack = c.slack;
            s.argmin_nodes = Some((c.nodes.t0, c.nodes.x, c.nodes.t1));
        }
        if c.bound.value > 0.0 {
            let ratio = c.remainder_abs / c.bound.value;
            let bin = if ratio > 1.0 { 10 } else { ((ratio * 10.0) as usize).min(9) };
            s.tightness_histogram[bin] += 1;
        }
    }
    if certs.is_empty() {
        s.min_slack = f64::NAN;
    }
    s
}

/// 17 significant digits, lossless for f64.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV rendering of a sweep. The proof-safe columns appear whenever the
/// sweep carries the dual form.
pub fn sweep_csv(report: &SweepReport) -> String {
    let with_safe = report.certificates.iter().any(|c| c.proof_safe.is_some());
    let mut out = String::from("t0,x,t1,q,integral,remainder_abs,bound,slack,verdict");
    if with_safe {
        out.push_str(",bound_safe,slack_safe,verdict_safe");
    }
    out.push('\n');
    for c in &report.certificates {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}",
            fmt17(c.nodes.t0),
            fmt17(c.nodes.x),
            fmt17(c.nodes.t1),
            fmt17(c.q_value),
            fmt17(c.oracle_value),
            fmt17(c.remainder_abs),
            fmt17(c.bound.value),
            fmt17(c.slack),
            c.verdict.as_str()
        ));
        if with_safe {
            match &c.proof_safe {
                Some(sp) => out.push_str(&format!(
                    ",{},{},{}",
                    fmt17(sp.bound.value),
                    fmt17(sp.slack),
                    sp.verdict.as_str()
                )),
                None => out.push_str(",,,"),
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRecord {
    pub label: String,
    pub verdict: Verdict,
    pub certificates: Vec<BoundCertificate>,
    /// For the disputed configuration: the value the construction asserts
    /// for the integral, next to what the jump-sum evaluation returns.
    pub asserted_integral: Option<f64>,
    pub observed_integral: Option<f64>,
    pub note: Option<String>,
}

fn rollup(certs: &[BoundCertificate]) -> Verdict {
    if certs.iter().any(|c| c.verdict == Verdict::Violated) {
        Verdict::Violated
    } else if certs.iter().all(|c| c.verdict == Verdict::Equality) {
        Verdict::Equality
    } else {
        Verdict::Holds
    }
}

/// The extremal configurations that pin the bound constants:
/// (i) a power integrand against a unit jump at the left endpoint attains
/// the first bound; (ii) a two-point indicator against the identity
/// attains the second; (iii) a jump at the right endpoint, where the
/// asserted integral value 0 disagrees with the jump-sum value f(1).
pub fn sharpness_suite(tol: f64) -> Result<Vec<SharpnessRecord>> {
    let iv = Interval::new(0.0, 1.0)?;
    let mut out = Vec::new();

    let u_step = crate::catalog::parse_id("step:points=0;left=-1;right=0", iv)?;
    let mut certs = Vec::new();
    for r in [0.25, 0.5, 1.0] {
        let f = crate::catalog::parse_id(&format!("power:r={r}"), iv)?;
        let nodes = NodeTriple::new(0.5, 1.0, 1.0, iv)?;
        certs.push(certify_one(&f, &u_step, &nodes, TheoremId::Thm1, 1.0, tol)?);
    }
    out.push(SharpnessRecord {
        label: "first-bound-equality".into(),
        verdict: rollup(&certs),
        certificates: certs,
        asserted_integral: None,
        observed_integral: None,
        note: Some("|R| = (1/2)^r matches the bound exactly for r in {1/4, 1/2, 1}".into()),
    });

    let f_ind = crate::catalog::parse_id("step:points=0,1;left=1,0;right=0,1", iv)?;
    let u_id = crate::catalog::parse_id("power:r=1", iv)?;
    let nodes = NodeTriple::new(0.0, 0.5, 1.0, iv)?;
    let cert = certify_one(&f_ind, &u_id, &nodes, TheoremId::Thm4, 1.0, tol)?;
    out.push(SharpnessRecord {
        label: "second-bound-equality".into(),
        verdict: cert.verdict,
        certificates: vec![cert],
        asserted_integral: None,
        observed_integral: None,
        note: Some("|R| = 1 matches H max{...}^r V_1 = (1/2) * 2 exactly".into()),
    });

    let u_right = crate::catalog::parse_id("step:points=1;left=0;right=1", iv)?;
    let f_half = crate::catalog::parse_id("power:r=0.5", iv)?;
    let nodes = NodeTriple::new(0.5, 1.0, 1.0, iv)?;
    let cert = certify_one(&f_half, &u_right, &nodes, TheoremId::Thm1, 1.0, tol)?;
    let observed = cert.oracle_value;
    out.push(SharpnessRecord {
        label: "right-endpoint-jump-disputed".into(),
        verdict: cert.verdict,
        certificates: vec![cert],
        asserted_integral: Some(0.0),
        observed_integral: Some(observed),
        note: Some(
            "the construction asserts the integral vanishes, but the jump sum \
             gives f(1)*(u(1)-u(1-)) = 1; both values are reported, neither asserted"
                .into(),
        ),
    });

    Ok(out)
}
