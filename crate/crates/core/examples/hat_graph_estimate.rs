// Monte Carlo estimate for the virtual algorithm on the hat graph,
// compared with the 1/4 lower bound.

use std::error::Error;

use msp::analysis::{check_claw_blocker, estimate_with_check, BoundDirection};
use msp::instances::hat_graph;
use msp::policy::PolicyName;
use msp::sim::SimConfig;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let bundle = hat_graph(6)?;
    let config = SimConfig::new(0.5, 42, 5_000)?;
    let (report, tally) = estimate_with_check(&PolicyName::VirtualMsp, &bundle, &config, |trace, _| {
        check_claw_blocker(trace, &bundle)
    })?;
    let report = report.with_bound(0.25, BoundDirection::Lower);
    println!("{}", report.to_json());
    println!("claw blocker: {} held, {} vacuous, {} failed", tally.held, tally.vacuous, tally.failed);
    if report.meets_bound() != Some(true) || !tally.all_held() {
        return Err("hat graph estimate below bound".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
