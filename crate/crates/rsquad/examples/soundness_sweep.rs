//! Sweeps every bound over a 21x21x21 node grid for a catalog of (f, u)
//! pairs at p = 1 and reports slack statistics. Zero violations expected.
//!
//!     cargo run --release --example soundness_sweep

use rsquad::bounds::TheoremId;
use rsquad::catalog::parse_id;
use rsquad::certify::{sweep, Certifier, GridSpec};
use rsquad::{Error, Interval};

fn main() {
    let iv = Interval::new(0.0, 1.0).unwrap();
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
        ("step:points=0,1;left=1,0;right=0,1", "power:r=1"),
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
    let grid = GridSpec::cube(iv, 21);
    let mut total_violations = 0usize;
    println!("{:<34} {:<32} {:<7} {:>7} {:>5} {:>12}", "f", "u", "bound", "points", "viol", "min slack");
    for (fid, uid) in pairs {
        let f = parse_id(fid, iv).unwrap();
        let u = parse_id(uid, iv).unwrap();
        for thm in theorems {
            match Certifier::new(&f, &u, iv, thm, 1.0, 1e-9) {
                Err(Error::HypothesisMismatch { .. }) => continue,
                Err(e) => panic!("{fid}/{uid}/{thm}: {e}"),
                Ok(_) => {}
            }
            let rep = sweep(&f, &u, iv, thm, &grid, 1.0, 1e-9).unwrap();
            total_violations += rep.summary.violations;
            println!(
                "{:<34} {:<32} {:<7} {:>7} {:>5} {:>12.3e}",
                fid,
                uid,
                thm.as_str(),
                rep.summary.points,
                rep.summary.violations,
                rep.summary.min_slack
            );
        }
    }
    println!("\ntotal violations: {total_violations}");
}
