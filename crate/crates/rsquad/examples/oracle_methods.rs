//! Shows how the integral oracle picks its evaluation method per pair:
//! exact jump sums for step integrators, reduction to an ordinary integral
//! for differentiable ones, and refined two-sided sums otherwise.
//!
//!     cargo run --example oracle_methods

use rsquad::catalog::parse_id;
use rsquad::oracle::rs_integral;
use rsquad::Interval;

fn main() {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let cases = [
        ("power:r=0.5", "step:points=0;left=-1;right=0"),
        ("power:r=0.5", "step:points=1;left=0;right=1"),
        ("step:points=0,1;left=1,0;right=0,1", "power:r=1"),
        ("identity", "power:r=2"),
        ("sine:scale=1;freq=1", "exp:scale=1"),
        ("power:r=2", "pl:knots=0,0.5,1;values=0,1,0"),
        // sqrt integrator: no usable derivative at 0, so the oracle falls
        // back to two-sided refined sums, whose gap closes like the mesh
        ("identity", "power:r=0.5"),
    ];
    println!("{:<38} {:<34} {:<18} {:>14} {:>10} {:>9}", "f", "u", "method", "value", "error", "evals");
    for (fid, uid) in cases {
        let f = parse_id(fid, iv).unwrap();
        let u = parse_id(uid, iv).unwrap();
        let res = rs_integral(&f.map, &u.map, 0.0, 1.0, 1e-6).unwrap();
        println!(
            "{:<38} {:<34} {:<18} {:>14.9} {:>10.1e} {:>9}",
            fid,
            uid,
            res.method.as_str(),
            res.value,
            res.error_estimate,
            res.evaluations
        );
    }
    println!("\nintegration by parts as a cross-check (residual should sit at the oracle tolerance):");
    let f = parse_id("sine:scale=1;freq=1", iv).unwrap();
    let u = parse_id("power:r=2", iv).unwrap();
    let residual = rsquad::oracle::parts_identity_check(&f.map, &u.map, 0.0, 1.0, 1e-10).unwrap();
    println!("  |I(f,du) + I(u,df) - [fu]| = {residual:.3e}");
}
