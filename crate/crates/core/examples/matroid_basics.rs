// Independence, rank, span, minors and the greedy max-weight basis on a
// small graph.

use std::error::Error;

use msp::analysis::brute_force_mwb;
use msp::matroid::{BaseMatroid, ElementId, ElementSet, MatroidView, WeightedGroundSet};

fn set(ids: &[usize]) -> ElementSet {
    ids.iter().map(|&i| ElementId(i)).collect()
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // A square 0-1-2-3 with one diagonal 0-2.
    let base = BaseMatroid::graphic(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])?;
    let view = MatroidView::new(base);
    let weights = WeightedGroundSet::from_integers(&[5, 4, 3, 2, 6])?;

    let triangle = set(&[0, 1, 4]);
    println!("triangle independent: {}", view.is_independent(&triangle)?);
    println!("rank of triangle: {}", view.rank(&triangle)?);
    println!("span of {{e0, e1}}: {:?}", view.span(&set(&[0, 1]))?);

    let mwb = view.greedy_mwb(&weights, &view.ground())?;
    assert_eq!(mwb, brute_force_mwb(&view, &weights, &view.ground())?);
    println!("max-weight basis: {mwb:?}");

    // Contracting the diagonal leaves two parallel classes.
    let minor = view.contract(&set(&[4]))?.restrict(&set(&[0, 1, 2, 3]))?;
    println!("rank after contracting e4: {}", minor.rank(&minor.ground())?);
    println!("greedy in the minor: {:?}", minor.greedy_mwb(&weights, &minor.ground())?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
