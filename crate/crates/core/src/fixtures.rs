//! Forced schedules with known decisions, replayed by `msp replay`.

use crate::instances::{hat_graph, modified_hat_graph, triangle, uniform_instance, InstanceBundle, WeightSpec};
use crate::matroid::ElementSet;
use crate::policy::{PolicyName, ReferenceRule};
use crate::sim::{forced_schedule, run_trial, ArrivalSchedule, DecisionTrace, SimError};

pub const FIXTURES: [&str; 5] = [
    "triangle-sample",
    "triangle-greedy",
    "uniform-virtual-stream",
    "hat-claw",
    "modified-hat-lemma1",
];

pub struct Fixture {
    pub name: &'static str,
    pub bundle: InstanceBundle,
    pub policy: PolicyName,
    pub p: f64,
    pub schedule: ArrivalSchedule,
    /// Final accepted set.
    pub accepted: Vec<&'static str>,
    /// Live arrivals that must be rejected.
    pub rejected: Vec<&'static str>,
}

pub struct ReplayOutcome {
    pub trace: DecisionTrace,
    /// Empty when every expected decision matched.
    pub mismatches: Vec<String>,
}

impl Fixture {
    pub fn load(name: &str) -> Option<Fixture> {
        let (name, bundle, policy, p, times, accepted, rejected): (
            &'static str,
            InstanceBundle,
            PolicyName,
            f64,
            &[(&str, f64)],
            Vec<&'static str>,
            Vec<&'static str>,
        ) = match name {
            "triangle-sample" => (
                "triangle-sample",
                triangle(),
                PolicyName::Sample,
                0.25,
                &[("e3", 0.1), ("e2", 0.5), ("e1", 0.9)],
                vec!["e2", "e1"],
                vec![],
            ),
            "triangle-greedy" => (
                "triangle-greedy",
                triangle(),
                PolicyName::Greedy(ReferenceRule::SampleContracted),
                0.25,
                &[("e3", 0.1), ("e2", 0.5), ("e1", 0.9)],
                vec!["e2"],
                vec!["e1"],
            ),
            "uniform-virtual-stream" => (
                "uniform-virtual-stream",
                uniform_instance(6, 2, WeightSpec::Identity).expect("valid"),
                PolicyName::VirtualMsp,
                0.25,
                &[("1", 0.05), ("3", 0.1), ("2", 0.3), ("4", 0.5), ("5", 0.7), ("6", 0.9)],
                vec!["2", "5"],
                vec!["4", "6"],
            ),
            "hat-claw" => (
                "hat-claw",
                hat_graph(3).expect("valid"),
                PolicyName::VirtualMsp,
                0.25,
                &[
                    ("t_1", 0.05),
                    ("b_1", 0.1),
                    ("t_2", 0.3),
                    ("b_2", 0.4),
                    ("t_3", 0.5),
                    ("b_3", 0.6),
                    ("e_inf", 0.9),
                ],
                vec!["t_2", "t_3", "e_inf"],
                vec!["b_2", "b_3"],
            ),
            "modified-hat-lemma1" => (
                "modified-hat-lemma1",
                modified_hat_graph(2).expect("valid"),
                PolicyName::VirtualMsp,
                0.5,
                &[
                    ("4_1", 0.05),
                    ("3_1", 0.1),
                    ("2_1", 0.15),
                    ("1_1", 0.2),
                    ("2_2", 0.25),
                    ("1_2", 0.6),
                    ("3_2", 0.7),
                    ("4_2", 0.8),
                    ("e_inf", 0.9),
                ],
                vec!["1_2", "4_2"],
                vec!["3_2", "e_inf"],
            ),
            _ => return None,
        };
        let assignments: Vec<_> = times.iter().map(|&(l, t)| (bundle.id(l), t)).collect();
        let schedule = forced_schedule(&assignments).expect("fixture times are distinct");
        Some(Fixture {
            name,
            bundle,
            policy,
            p,
            schedule,
            accepted,
            rejected,
        })
    }

    pub fn replay(&self) -> Result<ReplayOutcome, SimError> {
        let b = &self.bundle;
        let trace = run_trial(&self.policy, &b.view, &b.weights, &self.schedule, self.p)?;
        let mut mismatches = Vec::new();
        let expected: ElementSet = b.ids(&self.accepted);
        if trace.accepted != expected {
            let names = |s: &ElementSet| {
                s.iter().map(|&id| b.weights.label(id)).collect::<Vec<_>>().join(", ")
            };
            mismatches.push(format!(
                "accepted {{{}}}, expected {{{}}}",
                names(&trace.accepted),
                names(&expected)
            ));
        }
        for name in &self.rejected {
            let r = trace.record(b.id(name)).expect("scheduled");
            if r.accepted {
                mismatches.push(format!("{name} accepted, expected rejected"));
            }
        }
        Ok(ReplayOutcome { trace, mismatches })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_replay_as_stated() {
        for name in FIXTURES {
            let fixture = Fixture::load(name).unwrap();
            let outcome = fixture.replay().unwrap();
            assert!(outcome.mismatches.is_empty(), "{name}: {:?}", outcome.mismatches);
        }
        assert!(Fixture::load("nope").is_none());
    }

    #[test]
    fn hat_claw_kicks_the_sampled_bottom() {
        let f = Fixture::load("hat-claw").unwrap();
        let trace = f.replay().unwrap().trace;
        let r = trace.record(f.bundle.id("e_inf")).unwrap();
        assert_eq!(r.kicked, Some(f.bundle.id("b_1")));
        assert_eq!(r.kicked_was_sample, Some(true));
    }
}
