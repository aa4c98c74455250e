// Forbidden-set checks: the hat-graph table against simulated traces, and
// the certificate that no policy has strong forbidden sets of size 1.

use std::error::Error;

use msp::analysis::{certify_no_size1_strong_fs, check_forbidden_consistency, HatForbiddenTable};
use msp::instances::hat_graph;
use msp::policy::PolicyName;
use msp::sim::{draw_schedule, run_trial, trial_rng};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let bundle = hat_graph(4)?;
    let table = HatForbiddenTable::new(&bundle)?;
    let mut inconsistent = 0;
    let trials = 500;
    for trial in 0..trials {
        let schedule = draw_schedule(bundle.len(), &mut trial_rng(1, trial));
        let trace = run_trial(&PolicyName::VirtualMsp, &bundle.view, &bundle.weights, &schedule, 0.5)?;
        let report = check_forbidden_consistency(&trace, &table, &bundle.view, &bundle.weights)?;
        if !report.consistent {
            inconsistent += 1;
        }
    }
    println!("hat table: {inconsistent} of {trials} traces reject an element with no forbidden element live before it");

    let cert = certify_no_size1_strong_fs()?;
    println!(
        "size-1 certificate: {} of {} assignments violated",
        cert.violations.len(),
        cert.checked_assignments
    );
    if let Some(last) = cert.violations.last() {
        println!("  {} forces {:?}", last.assignment, last.forced_accepted);
    }
    if !cert.complete() {
        return Err("certificate incomplete".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
