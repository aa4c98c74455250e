//! Independent oracles for the integration tests. Nothing here calls the
//! library's independence test or greedy algorithm.

#![allow(dead_code)]

use msp::matroid::{BaseMatroid, ElementId, ElementSet, WeightedGroundSet};
use num_rational::Ratio;

/// True if some path joins `from` and `to` using `edges`.
fn connected(edges: &[(usize, usize)], from: usize, to: usize) -> bool {
    let mut stack = vec![from];
    let mut seen = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for &(a, b) in edges {
            let next = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if !seen.contains(&next) {
                seen.push(next);
                stack.push(next);
            }
        }
    }
    false
}

/// Independence straight from the definitions: at most `k` elements, or an
/// edge set built one edge at a time without ever closing a cycle.
pub fn independent(base: &BaseMatroid, set: &ElementSet) -> bool {
    match base {
        BaseMatroid::Uniform { k, .. } => set.len() <= *k,
        BaseMatroid::Graphic { endpoints, .. } => {
            let mut forest = Vec::new();
            for id in set {
                let (a, b) = endpoints[id.0];
                if a == b || connected(&forest, a, b) {
                    return false;
                }
                forest.push((a, b));
            }
            true
        }
    }
}

pub fn subsets(items: &[ElementId]) -> Vec<ElementSet> {
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &id)| id)
                .collect()
        })
        .collect()
}

/// Heaviest independent subset of `set` under `contraction`, by full
/// enumeration. Panics on a tie.
pub fn max_weight_independent(
    base: &BaseMatroid,
    weights: &WeightedGroundSet,
    contraction: &ElementSet,
    set: &ElementSet,
) -> ElementSet {
    let items: Vec<ElementId> = set.iter().copied().collect();
    let mut best: Option<(Ratio<i128>, ElementSet)> = None;
    let mut tied = false;
    for s in subsets(&items) {
        let with_c: ElementSet = s.union(contraction).copied().collect();
        if !independent(base, &with_c) {
            continue;
        }
        let w = weights.total(&s);
        match &best {
            Some((bw, _)) if w < *bw => {}
            Some((bw, _)) if w == *bw => tied = true,
            _ => {
                tied = false;
                best = Some((w, s));
            }
        }
    }
    assert!(!tied, "tied optimum");
    best.expect("the empty set is independent").1
}

pub fn rank(base: &BaseMatroid, contraction: &ElementSet, set: &ElementSet) -> usize {
    let items: Vec<ElementId> = set.iter().copied().collect();
    subsets(&items)
        .into_iter()
        .filter(|s| independent(base, &s.union(contraction).copied().collect()))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// Exact finite-n success probability of the Dynkin rule with cutoff `p`:
/// the best element arrives at `t >= p` and the heaviest of the others
/// arriving before `t` (if any) arrived before `p`.
pub fn dynkin_exact(n: usize, p: f64) -> f64 {
    let others = (n - 1) as i32;
    let f = |t: f64| {
        let none_before = (1.0 - t).powi(others);
        (1.0 - none_before) * p / t + none_before
    };
    let steps = 4096;
    let h = (1.0 - p) / steps as f64;
    let mut sum = f(p) + f(1.0);
    for i in 1..steps {
        let coef = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += coef * f(p + i as f64 * h);
    }
    sum * h / 3.0
}
