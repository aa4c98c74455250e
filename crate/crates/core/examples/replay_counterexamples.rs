// Replays the forced schedules shipped as fixtures and prints each trace.

use std::error::Error;

use msp::fixtures::{Fixture, FIXTURES};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for name in FIXTURES {
        let fixture = Fixture::load(name).ok_or("missing fixture")?;
        let outcome = fixture.replay()?;
        let labels = |ids: &msp::matroid::ElementSet| -> Vec<String> {
            ids.iter().map(|&id| fixture.bundle.weights.label(id).to_owned()).collect()
        };
        println!("{name} ({}): accepted {:?}", fixture.policy, labels(&outcome.trace.accepted));
        if !outcome.mismatches.is_empty() {
            return Err(format!("{name}: {:?}", outcome.mismatches).into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
