// A small n × p sweep through the command-line entry point, written as CSV.

use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = [
        "msp", "sweep", "--instance", "hat", "--policy", "virtual-msp", "--ns", "2,4,8", "--ps",
        "0.3,0.5,0.7", "--trials", "1000", "--seed", "3", "--element", "e_inf",
    ];
    let code = msp::cli::run(args, &mut out, &mut err);
    if code != 0 {
        return Err(String::from_utf8(err)?.into());
    }
    print!("{}", String::from_utf8(out)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
