//! The classical secretary rules on k-uniform matroids.

use crate::matroid::ElementId;
use crate::sim::{Decision, Observation, Policy, SimError};

/// Accepts the first live element heavier than every sample, then stops.
#[derive(Debug, Default)]
pub struct Dynkin {
    best_sample: Option<ElementId>,
    done: bool,
}

impl Policy for Dynkin {
    fn observe_sample(&mut self, obs: &Observation<'_>) -> Result<Option<ElementId>, SimError> {
        let u = obs.current();
        match self.best_sample {
            Some(best) if obs.heavier(best, u) => Ok(None),
            previous => {
                self.best_sample = Some(u);
                Ok(previous)
            }
        }
    }

    fn decide(&mut self, obs: &Observation<'_>) -> Result<Decision, SimError> {
        let u = obs.current();
        if self.done {
            return Ok(Decision::reject());
        }
        let above = self.best_sample.is_none_or(|best| obs.heavier(u, best));
        self.done = above;
        Ok(Decision {
            accept: above,
            kicked: None,
        })
    }
}

/// Keeps the k heaviest elements, heaviest first, inserting `u` and dropping
/// the overflow. Returns the dropped element unless it is `u` itself.
fn keep_top(obs: &Observation<'_>, list: &mut Vec<ElementId>, u: ElementId, k: usize) -> Option<ElementId> {
    let at = list.partition_point(|&r| obs.heavier(r, u));
    list.insert(at, u);
    if list.len() > k {
        list.pop().filter(|&x| x != u)
    } else {
        None
    }
}

/// Threshold on the (k − i)-th heaviest sample after i acceptances.
///
/// The reference list holds the top `min(|S|, k)` samples and is padded
/// with empty slots up to `k`; an empty slot accepts anything. Each
/// acceptance pops the lowest slot and nothing is ever added back.
#[derive(Debug)]
pub struct Optimistic {
    k: usize,
    top_samples: Vec<ElementId>,
    slots: Option<Vec<Option<ElementId>>>,
}

impl Optimistic {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            top_samples: Vec::new(),
            slots: None,
        }
    }
}

impl Policy for Optimistic {
    fn observe_sample(&mut self, obs: &Observation<'_>) -> Result<Option<ElementId>, SimError> {
        Ok(keep_top(obs, &mut self.top_samples, obs.current(), self.k))
    }

    fn decide(&mut self, obs: &Observation<'_>) -> Result<Decision, SimError> {
        let k = self.k;
        let top = &self.top_samples;
        let slots = self.slots.get_or_insert_with(|| {
            let mut slots: Vec<_> = top.iter().copied().map(Some).collect();
            slots.resize(k, None);
            slots
        });
        let u = obs.current();
        let accept = match slots.last() {
            None => false,
            Some(None) => true,
            Some(Some(r)) => obs.heavier(u, *r),
        };
        if !accept {
            return Ok(Decision::reject());
        }
        let kicked = slots.pop().flatten();
        Ok(Decision { accept, kicked })
    }
}

/// Threshold on the k-th heaviest element seen so far, accepting only when
/// that threshold element is a sample (or the list still has room).
#[derive(Debug)]
pub struct VirtualUniform {
    k: usize,
    reference: Vec<ElementId>,
}

impl VirtualUniform {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            reference: Vec::new(),
        }
    }
}

impl Policy for VirtualUniform {
    fn observe_sample(&mut self, obs: &Observation<'_>) -> Result<Option<ElementId>, SimError> {
        Ok(keep_top(obs, &mut self.reference, obs.current(), self.k))
    }

    fn decide(&mut self, obs: &Observation<'_>) -> Result<Decision, SimError> {
        let u = obs.current();
        if self.reference.len() < self.k {
            keep_top(obs, &mut self.reference, u, self.k);
            return Ok(Decision {
                accept: obs.can_accept(u),
                kicked: None,
            });
        }
        let Some(&last) = self.reference.last() else {
            // k = 0
            return Ok(Decision::reject());
        };
        if !obs.heavier(u, last) {
            return Ok(Decision::reject());
        }
        let kicked = keep_top(obs, &mut self.reference, u, self.k);
        debug_assert_eq!(kicked, Some(last));
        Ok(Decision {
            accept: obs.is_sample(last) && obs.can_accept(u),
            kicked,
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::matroid::{BaseMatroid, ElementId, MatroidView, WeightedGroundSet};
    use crate::policy::PolicyName;
    use crate::sim::{forced_schedule, run_trial, ArrivalSchedule};

    fn uniform(weights: &[i128], k: usize) -> (MatroidView, WeightedGroundSet) {
        (
            MatroidView::new(BaseMatroid::uniform(weights.len(), k).unwrap()),
            WeightedGroundSet::from_integers(weights).unwrap(),
        )
    }

    fn in_order(n: usize) -> ArrivalSchedule {
        let times: Vec<_> = (0..n)
            .map(|i| (ElementId(i), (i as f64 + 1.0) / (n as f64 + 1.0)))
            .collect();
        forced_schedule(&times).unwrap()
    }

    fn accepted_weights(
        policy: PolicyName,
        weights: &[i128],
        k: usize,
        samples: usize,
    ) -> Vec<i128> {
        let (view, ground) = uniform(weights, k);
        let schedule = in_order(weights.len());
        let p = (samples as f64 + 0.5) / (weights.len() as f64 + 1.0);
        let trace = run_trial(&policy, &view, &ground, &schedule, p).unwrap();
        trace
            .records
            .iter()
            .filter(|r| r.accepted)
            .map(|r| weights[r.element.0])
            .collect()
    }

    #[test]
    fn dynkin_accepts_first_above_best_sample() {
        // Weights scaled by 10: samples {2, 5}, live (3, 7, 6).
        assert_eq!(
            accepted_weights(PolicyName::Dynkin, &[20, 50, 30, 70, 60], 1, 2),
            vec![70]
        );
    }

    #[test]
    fn dynkin_without_samples_takes_the_first_arrival() {
        assert_eq!(accepted_weights(PolicyName::Dynkin, &[3, 9, 4], 1, 0), vec![3]);
    }

    #[test]
    fn optimistic_raises_threshold_after_each_acceptance() {
        // Samples {5, 4}, live (4.5, 6, 4.8), weights scaled by 10.
        assert_eq!(
            accepted_weights(PolicyName::Optimistic { k: 2 }, &[50, 40, 45, 60, 48], 2, 2),
            vec![45, 60]
        );
    }

    #[test]
    fn optimistic_with_too_few_samples_uses_empty_slots() {
        // One sample (5) and k = 2: the first live element fills the empty
        // slot, after which the threshold is the sample.
        assert_eq!(
            accepted_weights(PolicyName::Optimistic { k: 2 }, &[5, 1, 3, 6], 2, 1),
            vec![1, 6]
        );
    }

    #[test]
    fn virtual_uniform_on_the_stream_example() {
        // Stream (1, 3, 2, 4, 5, 6), samples {1, 3}.
        assert_eq!(
            accepted_weights(PolicyName::VirtualUniform { k: 2 }, &[1, 3, 2, 4, 5, 6], 2, 2),
            vec![2, 5]
        );
    }
}
