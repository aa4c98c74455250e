//! Policies that compare every live arrival against the sample set only.

use crate::matroid::{ElementId, ElementSet};
use crate::sim::{Decision, Observation, Policy, SimError};

use super::dropped;

fn with(set: &ElementSet, u: ElementId) -> ElementSet {
    let mut out = set.clone();
    out.insert(u);
    out
}

fn mwb_pair(
    obs: &Observation<'_>,
    view: &crate::matroid::MatroidView,
) -> (Vec<ElementId>, Vec<ElementId>) {
    let u = obs.current();
    let samples: Vec<ElementId> = obs.samples().iter().copied().collect();
    let before = obs.mwb(view, &samples);
    let mut candidates = samples;
    candidates.push(u);
    let after = obs.mwb(view, &candidates);
    (before, after)
}

/// SAMPLE: accept `u` iff `A_t ∪ {u}` is independent and
/// `u ∈ MWB(M|_{S ∪ {u}})`.
#[derive(Debug, Default)]
pub struct Sample;

impl Policy for Sample {
    fn decide(&mut self, obs: &Observation<'_>) -> Result<Decision, SimError> {
        let u = obs.current();
        let restricted = obs.view().restrict(&with(obs.samples(), u))?;
        let (before, after) = mwb_pair(obs, &restricted);
        Ok(Decision {
            accept: obs.can_accept(u) && after.contains(&u),
            kicked: dropped(&before, &after, u),
        })
    }
}

/// SAMPLE-CONTRACTED: accept `u` iff `u ∈ MWB((M / A_t)|_{S ∪ {u}})`,
/// recomputed from scratch at every arrival.
#[derive(Debug, Default)]
pub struct SampleContracted;

impl Policy for SampleContracted {
    fn decide(&mut self, obs: &Observation<'_>) -> Result<Decision, SimError> {
        let u = obs.current();
        let minor = obs
            .view()
            .contract(obs.accepted())?
            .restrict(&with(obs.samples(), u))?;
        let (before, after) = mwb_pair(obs, &minor);
        Ok(Decision {
            accept: after.contains(&u),
            kicked: dropped(&before, &after, u),
        })
    }
}
