//! Probes the stated bound against its proof-safe companion for p > 1.
//!
//! The stated form uses the whole-interval variation through the step
//! V_p(a,x) + V_p(x,b) <= V_p(a,b), which fails for p > 1: the rise-fall
//! integrator has V_2 = sqrt(2) over [0,1] while the halves sum to 2.
//! The sweep records both forms at every grid point instead of trusting
//! either.
//!
//!     cargo run --release --example dual_form_probe

use rsquad::bounds::TheoremId;
use rsquad::catalog::parse_id;
use rsquad::certify::{sweep, GridSpec, Verdict};
use rsquad::variation::{p_variation, PExponent};
use rsquad::Interval;

fn main() {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let f = parse_id("power:r=0.5", iv).unwrap();
    let u = parse_id("pl:knots=0,0.5,1;values=0,1,0", iv).unwrap();

    let v = |c: f64, d: f64| p_variation(&u.map, PExponent::Finite(2.0), c, d).unwrap().value;
    println!("rise-fall integrator: V_2(0,1) = {:.6}, V_2(0,1/2) + V_2(1/2,1) = {:.6}\n", v(0.0, 1.0), v(0.0, 0.5) + v(0.5, 1.0));

    let rep = sweep(&f, &u, iv, TheoremId::Thm1, &GridSpec::cube(iv, 21), 2.0, 1e-9).unwrap();
    let stated_viol = rep.summary.violations;
    let safe_viol = rep
        .certificates
        .iter()
        .filter(|c| c.proof_safe.map(|s| s.verdict == Verdict::Violated).unwrap_or(false))
        .count();
    println!("grid points:              {}", rep.summary.points);
    println!("stated-form violations:   {stated_viol}");
    println!("proof-safe violations:    {safe_viol}");
    println!("stated-form min slack:    {:.6e} at {:?}", rep.summary.min_slack, rep.summary.argmin_nodes);

    // where the two forms differ the most
    let widest = rep
        .certificates
        .iter()
        .max_by(|a, b| {
            let da = a.proof_safe.unwrap().bound.value - a.bound.value;
            let db = b.proof_safe.unwrap().bound.value - b.bound.value;
            da.total_cmp(&db)
        })
        .unwrap();
    println!(
        "\nlargest proof-safe excess over stated at nodes ({}, {}, {}):",
        widest.nodes.t0, widest.nodes.x, widest.nodes.t1
    );
    println!(
        "  stated = {:.6}, proof-safe = {:.6}, |R| = {:.6}",
        widest.bound.value,
        widest.proof_safe.unwrap().bound.value,
        widest.remainder_abs
    );
}
