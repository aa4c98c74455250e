// Plugging a user-defined policy into the harness: accept every live
// element that keeps the accepted set independent.

use std::error::Error;

use msp::instances::hat_graph;
use msp::matroid::ElementId;
use msp::sim::{draw_schedule, run_policy, trial_rng, Decision, Observation, Policy, SimError};

struct TakeAnything;

impl Policy for TakeAnything {
    fn observe_sample(&mut self, _obs: &Observation<'_>) -> Result<Option<ElementId>, SimError> {
        Ok(None)
    }

    fn decide(&mut self, obs: &Observation<'_>) -> Result<Decision, SimError> {
        Ok(Decision {
            accept: obs.can_accept(obs.current()),
            kicked: None,
        })
    }
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let bundle = hat_graph(3)?;
    let e_inf = bundle.id("e_inf");
    let trials = 2_000;
    let mut hits = 0;
    for trial in 0..trials {
        let schedule = draw_schedule(bundle.len(), &mut trial_rng(11, trial));
        let trace = run_policy(&mut TakeAnything, &bundle.view, &bundle.weights, &schedule, 0.5)?;
        hits += trace.accepted.contains(&e_inf) as u32;
    }
    println!("take-anything accepts e_inf in {:.3} of trials", hits as f64 / trials as f64);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
