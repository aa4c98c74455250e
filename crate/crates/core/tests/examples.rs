//! Every crate example runs to completion.

mod matroid_basics {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/matroid_basics.rs"));
}

mod replay_counterexamples {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/replay_counterexamples.rs"));
}

mod hat_graph_estimate {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hat_graph_estimate.rs"));
}

mod modified_hat_bounds {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/modified_hat_bounds.rs"));
}

mod forbidden_sets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/forbidden_sets.rs"));
}

mod sweep_grid {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sweep_grid.rs"));
}

mod custom_policy {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/custom_policy.rs"));
}

mod instance_files {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/instance_files.rs"));
}

#[test]
fn matroid_basics_runs() {
    matroid_basics::run_example().expect("matroid_basics");
}

#[test]
fn replay_counterexamples_runs() {
    replay_counterexamples::run_example().expect("replay_counterexamples");
}

#[test]
fn hat_graph_estimate_runs() {
    hat_graph_estimate::run_example().expect("hat_graph_estimate");
}

#[test]
fn modified_hat_bounds_runs() {
    modified_hat_bounds::run_example().expect("modified_hat_bounds");
}

#[test]
fn forbidden_sets_runs() {
    forbidden_sets::run_example().expect("forbidden_sets");
}

#[test]
fn sweep_grid_runs() {
    sweep_grid::run_example().expect("sweep_grid");
}

#[test]
fn custom_policy_runs() {
    custom_policy::run_example().expect("custom_policy");
}

#[test]
fn instance_files_runs() {
    instance_files::run_example().expect("instance_files");
}
