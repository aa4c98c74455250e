//! The virtual algorithm generalised to matroids.
//!
//! The reference set is `MWB(V_t)`, kept incrementally as
//! `MWB(MWB(V_t) ∪ {u})`. A live `u` is accepted iff `A_t ∪ {u}` is
//! independent, `u` enters the new basis, and the element it kicks out (if
//! any) is a sample.

use crate::matroid::ElementId;
use crate::sim::{Decision, Observation, Policy, SimError};

use super::dropped;

#[derive(Debug, Default)]
pub struct VirtualMsp {
    /// `MWB(V_t)`, heaviest first.
    reference: Vec<ElementId>,
    cross_check: bool,
}

impl VirtualMsp {
    /// Also recomputes `MWB(V_t ∪ {u})` from scratch at every arrival and
    /// fails the trial if it differs from the incremental basis.
    pub fn cross_checked() -> Self {
        Self {
            reference: Vec::new(),
            cross_check: true,
        }
    }

    pub fn reference(&self) -> &[ElementId] {
        &self.reference
    }

    /// Replaces the reference by `MWB(reference ∪ {u})`. Returns whether `u`
    /// entered and which element left.
    fn absorb(&mut self, obs: &Observation<'_>) -> Result<(bool, Option<ElementId>), SimError> {
        let u = obs.current();
        let mut candidates = self.reference.clone();
        let at = candidates.partition_point(|&r| obs.heavier(r, u));
        candidates.insert(at, u);
        let next = obs.view().greedy_sorted(&candidates);

        if self.cross_check {
            let mut seen = obs.arrived().to_vec();
            seen.push(u);
            let scratch = obs.mwb(obs.view(), &seen);
            if scratch != next {
                return Err(SimError::ReferenceInvariant {
                    element: u,
                    reason: format!("incremental basis {next:?} differs from {scratch:?}"),
                });
            }
        }

        let kicked = dropped(&self.reference, &next, u);
        let entered = next.contains(&u);
        self.reference = next;
        Ok((entered, kicked))
    }
}

impl Policy for VirtualMsp {
    fn observe_sample(&mut self, obs: &Observation<'_>) -> Result<Option<ElementId>, SimError> {
        Ok(self.absorb(obs)?.1)
    }

    fn decide(&mut self, obs: &Observation<'_>) -> Result<Decision, SimError> {
        let u = obs.current();
        let (entered, kicked) = self.absorb(obs)?;
        let kicked_ok = kicked.is_none_or(|k| obs.is_sample(k));
        Ok(Decision {
            accept: entered && kicked_ok && obs.can_accept(u),
            kicked,
        })
    }
}
