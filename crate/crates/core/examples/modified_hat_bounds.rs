// The analytic rejection bound for `e_inf` on the modified hat graph next
// to simulated acceptance frequencies.

use std::error::Error;

use msp::analysis::{estimate, modified_hat_bounds};
use msp::instances::modified_hat_graph;
use msp::policy::PolicyName;
use msp::sim::SimConfig;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = 0.5;
    println!("{:>4} {:>10} {:>12} {:>10}", "n", "p_n", "upper", "estimate");
    for n in [2, 4, 8] {
        let bounds = modified_hat_bounds(n, p)?;
        let bundle = modified_hat_graph(n)?;
        let report = estimate(&PolicyName::VirtualMsp, &bundle, &SimConfig::new(p, 7, 2_000)?)?;
        let freq = report.freq(bundle.id("e_inf")).ok_or("e_inf not optimal")?;
        let upper = 1.0 - bounds.rejection_lower_bound;
        println!("{n:>4} {:>10.6} {upper:>12.6} {:>10.4}", bounds.p_n, freq.freq);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
