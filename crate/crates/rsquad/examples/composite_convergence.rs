//! Refines the two-point rule over uniform partitions and checks the
//! remainder against the summed per-cell bound, which scales like 1/(2n)
//! for a Lipschitz integrand against the identity integrator.
//!
//!     cargo run --example composite_convergence

use rsquad::bounds::{thm1_corollary_bounds, Thm1Corollary};
use rsquad::catalog::parse_id;
use rsquad::rules::{composite_rule, Preset};
use rsquad::Interval;

fn main() {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let f = parse_id("power:r=2", iv).unwrap();
    let u = parse_id("power:r=1", iv).unwrap();
    let (h, r) = f.profile.hoelder.unwrap();

    println!("f = t^2 (Lipschitz constant {h}), u = t, half-nodes preset per cell\n");
    println!("{:>4} {:>22} {:>22} {:>22}", "n", "q_total", "|remainder|", "summed bound");
    for n in [1u32, 2, 4, 8, 16, 32, 64] {
        let comp = composite_rule(&f.map, &u.map, iv, n, Preset::HalfNodes { x: 0.5 }, 1e-12)
            .expect("composite evaluates");
        let bound: f64 = comp
            .cells
            .iter()
            .map(|cell| {
                thm1_corollary_bounds(
                    Thm1Corollary::HalfNodes { x: cell.x },
                    h,
                    r,
                    cell.interval,
                    cell.interval.length(),
                )
                .unwrap()
                .value
            })
            .sum();
        println!(
            "{:>4} {:>22.15} {:>22.3e} {:>22.3e}",
            n,
            comp.q_total,
            comp.remainder_total.abs(),
            bound
        );
        assert!(comp.remainder_total.abs() <= bound + 1e-12);
    }
    println!("\nthe summed bound equals 1/(2n); the observed remainder decays like 1/n^2");
}
