//! End-to-end acceptance checks. Each test prints one PASS/FAIL line; the
//! assertions pin the analytic extremal values and the soundness,
//! consistency and convergence properties of the whole stack.

use rsquad::bounds::{self, TheoremId, Thm1Corollary};
use rsquad::catalog::parse_id;
use rsquad::certify::{self, Certifier, GridSpec, Verdict};
use rsquad::oracle;
use rsquad::rules::{self, NodeTriple, Preset};
use rsquad::variation::{self, PExponent, VariationMethod};
use rsquad::{Error, Interval};
use std::time::Instant;

fn report<F: FnOnce() + std::panic::UnwindSafe>(n: u32, label: &str, body: F) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("ACCEPTANCE {n} ({label}): PASS"),
        Err(e) => {
            println!("ACCEPTANCE {n} ({label}): FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

fn unit() -> Interval {
    Interval::new(0.0, 1.0).unwrap()
}

#[test]
fn criterion_1_first_bound_sharpness() {
    report(1, "first-bound equality at the jump extremal", || {
        let start = Instant::now();
        let u = parse_id("step:points=0;left=-1;right=0", unit()).unwrap();
        let nodes = NodeTriple::new(0.5, 1.0, 1.0, unit()).unwrap();
        for r in [0.25, 0.5, 1.0] {
            let f = parse_id(&format!("power:r={r}"), unit()).unwrap();
            let c = certify::certify_one(&f, &u, &nodes, TheoremId::Thm1, 1.0, 1e-9).unwrap();
            let expect = 0.5f64.powf(r);
            assert_eq!(c.oracle_error, 0.0, "r={r}: oracle path must be exact");
            assert!((c.remainder_abs - expect).abs() <= 1e-10, "r={r}: |R|={}", c.remainder_abs);
            assert!((c.bound.value - expect).abs() <= 1e-10, "r={r}: bound={}", c.bound.value);
            assert_eq!(c.verdict, Verdict::Equality, "r={r}");
        }
        assert!(start.elapsed().as_secs_f64() < 1.0);
    });
}

#[test]
fn criterion_2_second_bound_sharpness() {
    report(2, "second-bound equality at the indicator extremal", || {
        let start = Instant::now();
        let f = parse_id("step:points=0,1;left=1,0;right=0,1", unit()).unwrap();
        let u = parse_id("power:r=1", unit()).unwrap();
        let nodes = NodeTriple::new(0.0, 0.5, 1.0, unit()).unwrap();
        let c = certify::certify_one(&f, &u, &nodes, TheoremId::Thm4, 1.0, 1e-9).unwrap();
        assert!((c.remainder_abs - 1.0).abs() <= 1e-10, "|R|={}", c.remainder_abs);
        assert!((c.bound.value - 1.0).abs() <= 1e-10, "bound={}", c.bound.value);
        assert_eq!(c.verdict, Verdict::Equality);
        // the bound is (1/2)^1 * V_1 with V_1 = 2
        let v1 = variation::p_variation(&f.map, PExponent::Finite(1.0), 0.0, 1.0).unwrap();
        assert!((v1.value - 2.0).abs() <= 1e-12);
        assert!(start.elapsed().as_secs_f64() < 1.0);
    });
}

#[test]
fn criterion_3_soundness_sweep_p1() {
    report(3, "zero violations over catalog x 21^3 grid at p=1", || {
        let start = Instant::now();
        let pairs = [
            ("power:r=0.25", "power:r=1"),
            ("power:r=0.5", "poly:1x"),
            ("power:r=2", "sine:scale=1;freq=1"),
            ("identity", "power:r=2"),
            ("sine:scale=1;freq=1", "exp:scale=1"),
            ("exp:scale=1", "poly:0,0,0.5,-0.33333333333333331"),
            ("poly:0,0,0.5,-0.33333333333333331", "identity"),
            ("pl:knots=0,0.5,1;values=0,1,0", "power:r=2"),
            ("power:r=0.5", "step:points=0;left=-1;right=0"),
            ("power:r=2", "step:points=0,1;left=1,0;right=0,1"),
            ("step:points=0,1;left=1,0;right=0,1", "power:r=1"),
            ("const:1", "sine:scale=1;freq=1"),
        ];
        let theorems = [
            TheoremId::Thm1,
            TheoremId::Thm2,
            TheoremId::Thm4,
            TheoremId::Thm5,
            TheoremId::Lemma1,
            TheoremId::Lemma2,
            TheoremId::Cor4,
        ];
        let grid = GridSpec::cube(unit(), 21);
        let mut sweeps = 0usize;
        let mut points = 0usize;
        for (fid, uid) in pairs {
            let f = parse_id(fid, unit()).unwrap();
            let u = parse_id(uid, unit()).unwrap();
            for thm in theorems {
                // skip combinations whose hypotheses the pair does not meet
                match Certifier::new(&f, &u, unit(), thm, 1.0, 1e-9) {
                    Err(Error::HypothesisMismatch { .. }) => continue,
                    Err(e) => panic!("{fid} / {uid} / {thm}: {e}"),
                    Ok(_) => {}
                }
                let rep = certify::sweep(&f, &u, unit(), thm, &grid, 1.0, 1e-9).unwrap();
                assert!(rep.failures.is_empty(), "{fid}/{uid}/{thm}: {:?}", rep.failures.first());
                assert_eq!(
                    rep.summary.violations, 0,
                    "{fid}/{uid}/{thm}: min slack {} at {:?}",
                    rep.summary.min_slack, rep.summary.argmin_nodes
                );
                for c in &rep.certificates {
                    assert!(
                        c.slack >= -(c.oracle_error + 1e-12 * c.bound.value.abs().max(1.0)),
                        "{fid}/{uid}/{thm}: slack {}",
                        c.slack
                    );
                }
                sweeps += 1;
                points += rep.summary.points;
            }
        }
        assert!(pairs.len() >= 10);
        assert!(sweeps >= 30, "only {sweeps} sweeps ran");
        let elapsed = start.elapsed().as_secs_f64();
        println!("  [{sweeps} sweeps, {points} certificates, {elapsed:.1}s]");
        assert!(elapsed < 60.0, "sweep took {elapsed:.1}s");
    });
}

#[test]
fn criterion_4_second_theorem_preset_consistency() {
    report(4, "general form at quartile nodes vs printed closed form", || {
        let quartile = Preset::Quartile.nodes(unit()).unwrap();
        let general = bounds::thm2_bound(1.0, 1.0, 1.0, 2.0, &quartile).unwrap().value;
        // brute evaluation, written out term by term
        let brute = {
            let (t0, x, t1) = (0.25f64, 0.5f64, 0.75f64);
            let left = (x - 0.0).sqrt() * (((t0 - 0.0).powi(3) + (x - t0).powi(3)) / 3.0).sqrt();
            let right = (1.0 - x).sqrt() * (((t1 - x).powi(3) + (1.0 - t1).powi(3)) / 3.0).sqrt();
            left + right
        };
        assert!((general - brute).abs() <= 1e-12);
        assert!((general - 0.144338).abs() <= 1e-6, "general = {general}");
        let closed = bounds::thm2_quartile_closed_form(1.0, 1.0, 1.0, 2.0, unit());
        assert!((closed - 0.102062).abs() <= 1e-6, "closed = {closed}");
        let ratio = general / closed;
        assert!((ratio - 2f64.sqrt()).abs() <= 1e-6, "ratio = {ratio}");
        println!("  [flag: closed-form constant {closed:.6} differs from the general value {general:.6} by the factor {ratio:.6} = 2^(1/2); the general formula is treated as the source of truth]");
    });
}

#[test]
fn criterion_5_derivative_bound_constant_limit() {
    report(5, "constant factor at p=2 and its large-p limit", || {
        let at2 = bounds::thm3_constant(2.0, 1).unwrap();
        assert!((at2 - 2.0 / std::f64::consts::PI).abs() <= 1e-12, "at2 = {at2}");
        let big = bounds::thm3_constant(1e4, 1).unwrap();
        assert!((big - 1.0).abs() <= 1e-3, "at p=1e4: {big}");
        // with the factor near 1, the finite-p bound approaches the sup form
        let nodes = NodeTriple::new(0.25, 0.5, 0.75, unit()).unwrap();
        let finite = bounds::thm3_bound(1.0, 1, 1e4, &nodes, 1.0).unwrap().value;
        let sup = bounds::thm3_bound_sup(1.0, 1, &nodes, 1.0).unwrap().value;
        assert!((finite - sup).abs() / sup <= 2e-3, "finite {finite} vs sup {sup}");
    });
}

#[test]
fn criterion_6_variation_properties() {
    report(6, "p-variation monotonicity, sandwich, closed forms, additivity", || {
        let ps = [1.0, 1.5, 2.0, 4.0, 10.0];
        for entry in rsquad::catalog::standard_catalog() {
            let id = &entry.id;
            let vals: Vec<f64> = ps
                .iter()
                .map(|&p| {
                    variation::p_variation(&entry.map, PExponent::Finite(p), 0.0, 1.0)
                        .unwrap()
                        .value
                })
                .collect();
            for w in vals.windows(2) {
                assert!(w[1] <= w[0] + 1e-9, "{id}: V_p increasing: {vals:?}");
            }
            let osc = variation::oscillation(&entry.map, 0.0, 1.0).unwrap().value;
            for (&p, &v) in ps.iter().zip(&vals) {
                assert!(osc <= v + 1e-9, "{id}: osc {osc} > V_{p} = {v}");
                assert!(v <= vals[0] + 1e-9, "{id}: V_{p} = {v} > V_1 = {}", vals[0]);
            }
            // total variation is additive over a split point
            let m = 0.37;
            let whole = vals[0];
            let l = variation::p_variation(&entry.map, PExponent::Finite(1.0), 0.0, m).unwrap();
            let r = variation::p_variation(&entry.map, PExponent::Finite(1.0), m, 1.0).unwrap();
            assert!(
                (l.value + r.value - whole).abs() <= 1e-12,
                "{id}: V_1 not additive: {} + {} vs {whole}",
                l.value,
                r.value
            );
        }
        // quadratic variation of a full sine period, two independent ways
        let two_pi = 2.0 * std::f64::consts::PI;
        let sine = parse_id("sine:scale=1;freq=1", Interval::new(0.0, two_pi).unwrap()).unwrap();
        let v2 = variation::p_variation(&sine.map, PExponent::Finite(2.0), 0.0, two_pi).unwrap();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_eq!(v2.method, VariationMethod::ExactDerivativeNorm);
        assert!((v2.value - sqrt_pi).abs() <= 1e-6, "V_2 = {}", v2.value);
        let dp = variation::riesz_sum_lower_bound(&sine.map, 2.0, 0.0, two_pi, 20_000);
        assert!(dp <= sqrt_pi + 1e-9 && dp >= 0.99 * sqrt_pi, "partition sum {dp}");
    });
}

#[test]
fn criterion_7_oracle_integrity() {
    report(7, "integration-by-parts residuals and exact jump sums", || {
        let smooth = [
            "identity",
            "power:r=2",
            "poly:0,0,0.5,-0.33333333333333331",
            "poly:0,0,0,0.16666666666666666,-0.083333333333333329",
            "sine:scale=1;freq=1",
            "exp:scale=1",
        ];
        let mut count = 0;
        'outer: for fid in smooth {
            for uid in smooth {
                if fid == uid {
                    continue;
                }
                let f = parse_id(fid, unit()).unwrap();
                let u = parse_id(uid, unit()).unwrap();
                let res = oracle::parts_identity_check(&f.map, &u.map, 0.0, 1.0, 1e-10).unwrap();
                assert!(res <= 1e-8, "{fid} vs {uid}: residual {res}");
                count += 1;
                if count == 20 {
                    break 'outer;
                }
            }
        }
        assert_eq!(count, 20);

        // jump at the left endpoint where the integrand vanishes: integral 0
        let u_left = parse_id("step:points=0;left=-1;right=0", unit()).unwrap();
        for r in [0.25, 0.5, 1.0] {
            let f = parse_id(&format!("power:r={r}"), unit()).unwrap();
            let res = oracle::rs_integral(&f.map, &u_left.map, 0.0, 1.0, 1e-9).unwrap();
            assert_eq!(res.value, 0.0, "r={r}");
            assert_eq!(res.error_estimate, 0.0);
        }
        // jump at the right endpoint: the jump sum gives f(1), not the
        // asserted 0
        let u_right = parse_id("step:points=1;left=0;right=1", unit()).unwrap();
        let f = parse_id("power:r=0.5", unit()).unwrap();
        let res = oracle::rs_integral(&f.map, &u_right.map, 0.0, 1.0, 1e-9).unwrap();
        assert_eq!(res.value, 1.0);
        println!("  [finding: the right-endpoint jump construction asserts integral 0; the exact jump sum gives f(1)*(u(1)-u(1-)) = 1]");
    });
}

#[test]
fn criterion_8_oscillating_integrator_probe() {
    report(8, "dual-form records for the rise-fall integrator at p=2", || {
        let f = parse_id("power:r=0.5", unit()).unwrap();
        let u = parse_id("pl:knots=0,0.5,1;values=0,1,0", unit()).unwrap();
        // the proof-gap premise: V_2 over [0,1] is sqrt(2), but the halves
        // sum to 2
        let v2 = variation::p_variation(&u.map, PExponent::Finite(2.0), 0.0, 1.0).unwrap();
        assert!((v2.value - 2f64.sqrt()).abs() <= 1e-12);
        let vl = variation::p_variation(&u.map, PExponent::Finite(2.0), 0.0, 0.5).unwrap();
        let vr = variation::p_variation(&u.map, PExponent::Finite(2.0), 0.5, 1.0).unwrap();
        assert!((vl.value + vr.value - 2.0).abs() <= 1e-12);

        let grid = GridSpec::cube(unit(), 21);
        let rep = certify::sweep(&f, &u, unit(), TheoremId::Thm1, &grid, 2.0, 1e-9).unwrap();
        assert!(rep.failures.is_empty());
        assert!(rep.summary.points > 0);
        // every grid point must carry the proof-safe bound alongside
        for c in &rep.certificates {
            let safe = c.proof_safe.as_ref().expect("proof-safe companion present");
            assert!(safe.bound.value.is_finite());
            assert_ne!(safe.verdict, Verdict::Violated, "proof-safe form violated at {:?}", c.nodes);
        }
        let recounted = rep.certificates.iter().filter(|c| c.verdict == Verdict::Violated).count();
        assert_eq!(recounted, rep.summary.violations);
        println!(
            "  [stated-form violations recorded: {} of {} grid points; min slack {:.3e}]",
            rep.summary.violations, rep.summary.points, rep.summary.min_slack
        );
    });
}

#[test]
fn criterion_9_composite_convergence() {
    report(9, "composite half-nodes refinement under the summed bound", || {
        let f = parse_id("power:r=2", unit()).unwrap();
        let u = parse_id("power:r=1", unit()).unwrap();
        let (h_const, r_const) = f.profile.hoelder.unwrap();
        assert_eq!((h_const, r_const), (2.0, 1.0));
        let mut last = f64::INFINITY;
        for n in [1u32, 2, 4, 8, 16] {
            let comp =
                rules::composite_rule(&f.map, &u.map, unit(), n, Preset::HalfNodes { x: 0.5 }, 1e-12)
                    .unwrap();
            let r_abs = comp.remainder_total.abs();
            assert!(r_abs < last, "n={n}: |R|={r_abs} did not decrease from {last}");
            last = r_abs;
            // summed per-cell bound: H (h/2)^r * V_1(u; cell) over n cells
            let mut bound_sum = 0.0;
            for cell in &comp.cells {
                let v_cell = cell.interval.length(); // V_1 of the identity
                bound_sum += bounds::thm1_corollary_bounds(
                    Thm1Corollary::HalfNodes { x: cell.x },
                    h_const,
                    r_const,
                    cell.interval,
                    v_cell,
                )
                .unwrap()
                .value;
            }
            let expect = 1.0 / (2.0 * n as f64);
            assert!((bound_sum - expect).abs() <= 1e-12, "n={n}: sum {bound_sum} vs {expect}");
            assert!(
                r_abs <= bound_sum + comp.oracle.error_estimate + 1e-12,
                "n={n}: |R|={r_abs} > bound {bound_sum}"
            );
        }
    });
}
