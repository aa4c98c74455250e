// Reading and writing the plain-text instance format.

use std::error::Error;

use msp::instances::InstanceBundle;
use msp::matroid::format::{parse_instance, write_instance};
use msp::policy::PolicyName;
use msp::sim::{forced_schedule, run_trial};

const K4: &str = "\
# complete graph on four vertices
matroid graphic 4 6
edge 0 0 1 6 a
edge 1 0 2 5 b
edge 2 0 3 4 c
edge 3 1 2 3 d
edge 4 1 3 2.5 e
edge 5 2 3 1/3 f
";

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let file = parse_instance(K4)?;
    print!("{}", write_instance(&file.base, &file.weights)?);
    let named = file.weights.ids().map(|id| (file.weights.label(id).to_owned(), id)).collect();
    let bundle = InstanceBundle::from_parts("file", file.base, file.weights, named)?;

    let order = ["f", "d", "a", "e", "b", "c"];
    let times: Vec<_> = order
        .iter()
        .enumerate()
        .map(|(i, l)| (bundle.id(l), (i as f64 + 1.0) / 7.0))
        .collect();
    let trace = run_trial(&PolicyName::VirtualMsp, &bundle.view, &bundle.weights, &forced_schedule(&times)?, 0.3)?;
    print!("{}", trace.to_jsonl());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
