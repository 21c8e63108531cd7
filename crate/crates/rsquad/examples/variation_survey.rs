//! Surveys p-variation across the standard catalog: values over a range of
//! exponents, the method each estimate used, and the oscillation floor.
//!
//!     cargo run --example variation_survey

use rsquad::variation::{oscillation, p_variation, PExponent};

fn main() {
    let ps = [1.0, 1.5, 2.0, 4.0, 10.0];
    println!(
        "{:<46} {:>9} {:>9} {:>9} {:>9} {:>9} {:>7}  method",
        "entry", "V_1", "V_1.5", "V_2", "V_4", "V_10", "osc"
    );
    for entry in rsquad::catalog::standard_catalog() {
        let mut vals = Vec::new();
        let mut method = "";
        for &p in &ps {
            let est = p_variation(&entry.map, PExponent::Finite(p), 0.0, 1.0).unwrap();
            method = est.method.as_str();
            vals.push(est.value);
        }
        let osc = oscillation(&entry.map, 0.0, 1.0).unwrap().value;
        println!(
            "{:<46} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>7.4}  {}",
            entry.id, vals[0], vals[1], vals[2], vals[3], vals[4], osc, method
        );
    }

    // a full sine period, where the quadratic variation has the closed
    // form sqrt(pi) through the derivative norm
    let two_pi = 2.0 * std::f64::consts::PI;
    let iv = rsquad::Interval::new(0.0, two_pi).unwrap();
    let sine = rsquad::catalog::parse_id("sine:scale=1;freq=1", iv).unwrap();
    let v2 = p_variation(&sine.map, PExponent::Finite(2.0), 0.0, two_pi).unwrap();
    let dp = rsquad::variation::riesz_sum_lower_bound(&sine.map, 2.0, 0.0, two_pi, 20_000);
    println!("\nsine over one full period:");
    println!("  V_2 via derivative norm   = {:.9}   (sqrt(pi) = {:.9})", v2.value, std::f64::consts::PI.sqrt());
    println!("  V_2 via partition sums    = {dp:.9}");
}
