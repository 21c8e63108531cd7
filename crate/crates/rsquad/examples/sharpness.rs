//! Reproduces the extremal configurations where the error bounds are
//! attained with equality, pinning their constants.
//!
//!     cargo run --example sharpness

fn main() {
    let records = rsquad::certify::sharpness_suite(1e-9).expect("suite runs");
    for rec in &records {
        println!("== {} [{}]", rec.label, rec.verdict.as_str());
        if let Some(note) = &rec.note {
            println!("   {note}");
        }
        for c in &rec.certificates {
            println!(
                "   f={:<20} u={:<32} nodes=({}, {}, {})",
                c.f_id, c.u_id, c.nodes.t0, c.nodes.x, c.nodes.t1
            );
            println!(
                "   |R| = {:.12}   bound = {:.12}   slack = {:+.3e}   verdict = {}",
                c.remainder_abs,
                c.bound.value,
                c.slack,
                c.verdict.as_str()
            );
        }
        if let (Some(asserted), Some(observed)) = (rec.asserted_integral, rec.observed_integral) {
            println!("   asserted integral = {asserted}, jump-sum evaluation = {observed}");
        }
        println!();
    }
}
