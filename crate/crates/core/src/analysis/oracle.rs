use num_rational::Ratio;

use crate::matroid::{ElementId, ElementSet, MatroidView, WeightedGroundSet};

use super::AnalysisError;

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Max-weight independent subset of `set` by enumerating all `2^|set|`
/// subsets. Fails if two subsets tie for the maximum.
pub fn brute_force_mwb(
    view: &MatroidView,
    weights: &WeightedGroundSet,
    set: &ElementSet,
) -> Result<ElementSet, AnalysisError> {
    if set.len() > BRUTE_FORCE_LIMIT {
        return Err(AnalysisError::TooLarge {
            size: set.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let items: Vec<ElementId> = set.iter().copied().collect();
    for &id in &items {
        if !view.contains(id) {
            return Err(crate::matroid::MatroidError::OutsideGroundSet(id).into());
        }
    }

    let mut best: Option<(Ratio<i128>, u32)> = None;
    let mut tied = false;
    for mask in 0u32..(1u32 << items.len()) {
        let chosen = || {
            items
                .iter()
                .enumerate()
                .filter(move |(i, _)| mask >> i & 1 == 1)
                .map(|(_, &id)| id)
        };
        if !view.independent_unchecked(chosen()) {
            continue;
        }
        let total: Ratio<i128> = chosen().map(|id| weights.weight(id).ratio()).sum();
        match &best {
            Some((b, _)) if total < *b => {}
            Some((b, _)) if total == *b => tied = true,
            _ => {
                best = Some((total, mask));
                tied = false;
            }
        }
    }
    if tied {
        return Err(AnalysisError::TiedOptimum);
    }
    let mask = best.map_or(0, |(_, m)| m);
    Ok(items
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &id)| id)
        .collect())
}
