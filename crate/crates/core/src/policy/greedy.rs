//! The greedy-algorithm framework: keep an independent reference set `I_t`
//! with `A_t ⊆ I_t ⊆ A_t ∪ S` that spans everything seen so far, and accept
//! `u` iff `u ∈ MWB((M|_{I_t ∪ {u}}) / A_t)`.

use std::fmt;

use crate::matroid::{ElementId, ElementSet, MatroidView};
use crate::sim::{Decision, Observation, Policy, SimError};

use super::dropped;

/// How `I_t` is rebuilt after an acceptance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReferenceRule {
    /// `I_t = MWB((M / A_t)|_S) ∪ A_t`.
    SampleContracted,
}

impl ReferenceRule {
    fn reference(
        &self,
        obs: &Observation<'_>,
        accepted: &ElementSet,
    ) -> Result<ElementSet, SimError> {
        match self {
            ReferenceRule::SampleContracted => {
                let minor = obs.view().contract(accepted)?.restrict(obs.samples())?;
                let samples: Vec<ElementId> = obs.samples().iter().copied().collect();
                let mut reference: ElementSet = obs.mwb(&minor, &samples).into_iter().collect();
                reference.extend(accepted.iter().copied());
                Ok(reference)
            }
        }
    }
}

impl fmt::Display for ReferenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReferenceRule::SampleContracted => f.write_str("sample-contracted"),
        }
    }
}

#[derive(Debug)]
pub struct GreedyFramework {
    rule: ReferenceRule,
    reference: Option<ElementSet>,
}

impl GreedyFramework {
    pub fn new(rule: ReferenceRule) -> Self {
        Self {
            rule,
            reference: None,
        }
    }

    /// `I_t` independent, `A_t ⊆ I_t ⊆ A_t ∪ S`, and `V_t ⊆ span(I_t)`.
    fn check_reference(obs: &Observation<'_>, reference: &ElementSet) -> Result<(), SimError> {
        let fail = |reason: &str| SimError::ReferenceInvariant {
            element: obs.current(),
            reason: reason.to_owned(),
        };
        let view = obs.view();
        if !view.is_independent(reference)? {
            return Err(fail("I_t is dependent"));
        }
        if !obs.accepted().is_subset(reference) {
            return Err(fail("A_t is not contained in I_t"));
        }
        if reference
            .iter()
            .any(|id| !obs.accepted().contains(id) && !obs.is_sample(*id))
        {
            return Err(fail("I_t is not contained in A_t ∪ S"));
        }
        let span = view.span(reference)?;
        if obs.arrived().iter().any(|id| !span.contains(id)) {
            return Err(fail("V_t is not spanned by I_t"));
        }
        Ok(())
    }
}

impl Policy for GreedyFramework {
    fn decide(&mut self, obs: &Observation<'_>) -> Result<Decision, SimError> {
        let u = obs.current();
        let reference = match self.reference.take() {
            Some(r) => r,
            None => self.rule.reference(obs, obs.accepted())?,
        };
        Self::check_reference(obs, &reference)?;

        let mut candidates = reference.clone();
        candidates.insert(u);
        let minor: MatroidView = obs.view().restrict(&candidates)?.contract(obs.accepted())?;
        let free: Vec<ElementId> = reference.difference(obs.accepted()).copied().collect();
        let mut before = free.clone();
        obs.sort_by_weight(&mut before);
        let mut with_u = free;
        with_u.push(u);
        let after = obs.mwb(&minor, &with_u);
        let accept = after.contains(&u);
        let kicked = dropped(&obs.mwb(&minor, &before), &after, u);

        self.reference = Some(if accept {
            let mut accepted = obs.accepted().clone();
            accepted.insert(u);
            self.rule.reference(obs, &accepted)?
        } else {
            reference
        });
        Ok(Decision { accept, kicked })
    }
}
