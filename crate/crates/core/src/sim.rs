//! Continuous arrival model.
//!
//! Every element gets an arrival time in `[0, 1]`. Elements with
//! `t(u) < p` form the sample set `S` and are shown to the policy but never
//! accepted; the rest arrive live, in time order, and the policy decides
//! irrevocably. The harness checks after every acceptance that the accepted
//! set is still independent and fails the trial if it is not.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matroid::{ElementId, ElementSet, MatroidError, MatroidView, WeightedGroundSet};
use crate::policy::PolicyName;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("sampling probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("arrival time {time} of element {element} is outside [0, 1]")]
    TimeOutOfRange { element: ElementId, time: f64 },
    #[error("arrival time {time} is used by elements {first} and {second}")]
    DuplicateTime {
        time: f64,
        first: ElementId,
        second: ElementId,
    },
    #[error("element {0} is scheduled twice")]
    DuplicateElement(ElementId),
    #[error("schedule does not cover element {0} of the ground set")]
    MissingElement(ElementId),
    #[error("schedule contains element {0}, which is not in the ground set")]
    UnknownElement(ElementId),
    #[error("harness violation: accepting {element} makes the accepted set {accepted:?} dependent")]
    HarnessViolation {
        element: ElementId,
        accepted: Vec<ElementId>,
    },
    #[error("policy reported element {0} as kicked by itself")]
    KickedSelf(ElementId),
    #[error("reference set invariant violated at element {element}: {reason}")]
    ReferenceInvariant { element: ElementId, reason: String },
    #[error("policy `{policy}` cannot run on this matroid: {reason}")]
    PolicyMismatch { policy: String, reason: String },
    #[error("malformed trace or schedule: {0}")]
    Format(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Arrival times for a set of elements, with the ascending-time order.
#[derive(Clone, Debug, PartialEq)]
pub struct ArrivalSchedule {
    times: BTreeMap<ElementId, f64>,
    order: Vec<ElementId>,
}

impl ArrivalSchedule {
    fn from_times(times: BTreeMap<ElementId, f64>) -> Self {
        let mut order: Vec<ElementId> = times.keys().copied().collect();
        // Ties are broken by id; they only happen for forced schedules that
        // were rejected earlier or for 2^-53-probability draws.
        order.sort_by(|a, b| times[a].total_cmp(&times[b]).then(a.cmp(b)));
        Self { times, order }
    }

    pub fn time(&self, id: ElementId) -> Option<f64> {
        self.times.get(&id).copied()
    }

    pub fn times(&self) -> &BTreeMap<ElementId, f64> {
        &self.times
    }

    /// Element ids sorted by arrival time.
    pub fn order(&self) -> &[ElementId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Elements arriving strictly before `p`.
    pub fn sampled(&self, p: f64) -> ElementSet {
        self.order
            .iter()
            .copied()
            .take_while(|id| self.times[id] < p)
            .collect()
    }

    /// Applies `f` to every time. `f` must be strictly increasing for the
    /// arrival order to be preserved.
    pub fn map_times(&self, f: impl Fn(f64) -> f64) -> ArrivalSchedule {
        Self::from_times(self.times.iter().map(|(&id, &t)| (id, f(t))).collect())
    }

    /// `schedule <id> <time>` lines in arrival order. Times use the
    /// shortest representation that parses back to the same `f64`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for id in &self.order {
            writeln!(out, "schedule {id} {:?}", self.times[id]).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, SimError> {
        let mut assignments = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || SimError::Format(format!("schedule line {}: `{line}`", idx + 1));
            let mut tokens = line.split_whitespace();
            if tokens.next() != Some("schedule") {
                return Err(bad());
            }
            let id: usize = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let time: f64 = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            if tokens.next().is_some() {
                return Err(bad());
            }
            assignments.push((ElementId(id), time));
        }
        forced_schedule(&assignments)
    }
}

/// Per-trial generator: the stream depends only on `(seed, trial)`, so
/// results do not change with the order or thread that runs a trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws i.i.d. uniform arrival times for elements `0..n`.
pub fn draw_schedule<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ArrivalSchedule {
    let times = (0..n).map(|i| (ElementId(i), rng.random::<f64>())).collect();
    ArrivalSchedule::from_times(times)
}

/// Builds a schedule exactly as given. Times must be distinct and in `[0, 1]`.
pub fn forced_schedule(assignments: &[(ElementId, f64)]) -> Result<ArrivalSchedule, SimError> {
    let mut times = BTreeMap::new();
    let mut by_time: Vec<(f64, ElementId)> = Vec::with_capacity(assignments.len());
    for &(id, time) in assignments {
        if !(0.0..=1.0).contains(&time) {
            return Err(SimError::TimeOutOfRange { element: id, time });
        }
        if times.insert(id, time).is_some() {
            return Err(SimError::DuplicateElement(id));
        }
        by_time.push((time, id));
    }
    by_time.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    if let Some(pair) = by_time.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(SimError::DuplicateTime {
            time: pair[0].0,
            first: pair[0].1,
            second: pair[1].1,
        });
    }
    Ok(ArrivalSchedule::from_times(times))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimConfig {
    pub p: f64,
    pub seed: u64,
    pub trials: u64,
}

impl SimConfig {
    pub fn new(p: f64, seed: u64, trials: u64) -> Result<Self, SimError> {
        check_probability(p)?;
        if trials == 0 {
            return Err(SimError::NoTrials);
        }
        Ok(Self { p, seed, trials })
    }
}

pub(crate) fn check_probability(p: f64) -> Result<(), SimError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(SimError::InvalidProbability(p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Sample,
    Live,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecisionRecord {
    pub element: ElementId,
    pub time: f64,
    pub phase: Phase,
    pub accepted: bool,
    /// Whether the element belongs to `MWB(V_t ∪ {u})` at its arrival.
    pub in_current_mwb: bool,
    pub kicked: Option<ElementId>,
    pub kicked_was_sample: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecisionTrace {
    pub records: Vec<DecisionRecord>,
    pub accepted: ElementSet,
    pub sample_set: ElementSet,
}

impl DecisionTrace {
    /// Rebuilds a trace from records, checking the record invariants.
    pub fn from_records(records: Vec<DecisionRecord>) -> Result<Self, SimError> {
        let mut accepted = ElementSet::new();
        let mut sample_set = ElementSet::new();
        for r in &records {
            if r.kicked == Some(r.element) {
                return Err(SimError::KickedSelf(r.element));
            }
            match r.phase {
                Phase::Sample if r.accepted => {
                    return Err(SimError::Format(format!(
                        "sample-phase element {} marked accepted",
                        r.element
                    )))
                }
                Phase::Sample => {
                    sample_set.insert(r.element);
                }
                Phase::Live if r.accepted => {
                    accepted.insert(r.element);
                }
                Phase::Live => {}
            }
        }
        Ok(Self {
            records,
            accepted,
            sample_set,
        })
    }

    pub fn record(&self, id: ElementId) -> Option<&DecisionRecord> {
        self.records.iter().find(|r| r.element == id)
    }

    pub fn accepted_before(&self, id: ElementId) -> ElementSet {
        self.records
            .iter()
            .take_while(|r| r.element != id)
            .filter(|r| r.accepted)
            .map(|r| r.element)
            .collect()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, SimError> {
        let records = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(|e| SimError::Format(e.to_string())))
            .collect::<Result<Vec<DecisionRecord>, _>>()?;
        Self::from_records(records)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub accept: bool,
    /// Element leaving the policy's reference set because of this arrival.
    pub kicked: Option<ElementId>,
}

impl Decision {
    pub fn reject() -> Self {
        Decision {
            accept: false,
            kicked: None,
        }
    }
}

/// What a policy may look at when an element arrives: the matroid, the
/// elements revealed so far (including the current one) and its own
/// accepted set. Weight comparisons on unrevealed elements panic.
pub struct Observation<'a> {
    view: &'a MatroidView,
    weights: &'a WeightedGroundSet,
    revealed: &'a [bool],
    arrived: &'a [ElementId],
    samples: &'a ElementSet,
    accepted: &'a ElementSet,
    current: ElementId,
}

impl<'a> Observation<'a> {
    pub fn view(&self) -> &'a MatroidView {
        self.view
    }

    pub fn current(&self) -> ElementId {
        self.current
    }

    /// `V_t`: elements that arrived before the current one, in order.
    pub fn arrived(&self) -> &'a [ElementId] {
        self.arrived
    }

    pub fn samples(&self) -> &'a ElementSet {
        self.samples
    }

    pub fn accepted(&self) -> &'a ElementSet {
        self.accepted
    }

    pub fn is_sample(&self, id: ElementId) -> bool {
        self.samples.contains(&id)
    }

    fn assert_revealed(&self, id: ElementId) {
        assert!(
            self.revealed.get(id.0).copied().unwrap_or(false),
            "policy inspected element {id} before its arrival"
        );
    }

    pub fn heavier(&self, a: ElementId, b: ElementId) -> bool {
        self.assert_revealed(a);
        self.assert_revealed(b);
        self.weights.heavier(a, b)
    }

    /// Sorts revealed elements heaviest first.
    pub fn sort_by_weight(&self, ids: &mut [ElementId]) {
        for &id in ids.iter() {
            self.assert_revealed(id);
        }
        self.weights.sort_descending(ids);
    }

    /// Greedy max-weight basis of `view` restricted to `candidates`,
    /// heaviest first. Candidates must be revealed and in `view`'s ground set.
    pub fn mwb(&self, view: &MatroidView, candidates: &[ElementId]) -> Vec<ElementId> {
        let mut sorted = candidates.to_vec();
        self.sort_by_weight(&mut sorted);
        debug_assert!(sorted.iter().all(|&id| view.contains(id)));
        view.greedy_sorted(&sorted)
    }

    /// Whether `A_t ∪ {u}` is independent in the instance matroid.
    pub fn can_accept(&self, u: ElementId) -> bool {
        !self.accepted.contains(&u)
            && self
                .view
                .independent_unchecked(self.accepted.iter().copied().chain([u]))
    }
}

/// An online policy, instantiated fresh for every trial.
pub trait Policy {
    /// Called for each sample-phase arrival. Returns the element the policy
    /// dropped from its reference set, if any.
    fn observe_sample(&mut self, _obs: &Observation<'_>) -> Result<Option<ElementId>, SimError> {
        Ok(None)
    }

    /// Called for each live arrival.
    fn decide(&mut self, obs: &Observation<'_>) -> Result<Decision, SimError>;
}

/// Runs the named policy on one schedule.
pub fn run_trial(
    policy: &PolicyName,
    view: &MatroidView,
    weights: &WeightedGroundSet,
    schedule: &ArrivalSchedule,
    p: f64,
) -> Result<DecisionTrace, SimError> {
    let mut instance = policy.instantiate(view)?;
    run_policy(instance.as_mut(), view, weights, schedule, p)
}

/// Runs an already instantiated policy on one schedule.
pub fn run_policy(
    policy: &mut dyn Policy,
    view: &MatroidView,
    weights: &WeightedGroundSet,
    schedule: &ArrivalSchedule,
    p: f64,
) -> Result<DecisionTrace, SimError> {
    check_probability(p)?;
    let ground = view.ground();
    if view.base().len() != weights.len() {
        return Err(MatroidError::GroundSizeMismatch {
            matroid: view.base().len(),
            weights: weights.len(),
        }
        .into());
    }
    if let Some(&id) = schedule.order().iter().find(|id| !ground.contains(id)) {
        return Err(SimError::UnknownElement(id));
    }
    if let Some(&id) = ground.iter().find(|id| schedule.time(**id).is_none()) {
        return Err(SimError::MissingElement(id));
    }

    let mut revealed = vec![false; weights.len()];
    let mut arrived: Vec<ElementId> = Vec::with_capacity(schedule.len());
    let mut samples = ElementSet::new();
    let mut accepted = ElementSet::new();
    let mut records = Vec::with_capacity(schedule.len());
    // MWB(V_t), heaviest first, maintained as MWB(MWB(V_t) ∪ {u}).
    let mut reference: Vec<ElementId> = Vec::new();

    for &u in schedule.order() {
        let time = schedule.times()[&u];
        let at = reference
            .iter()
            .position(|&r| weights.heavier(u, r))
            .unwrap_or(reference.len());
        reference.insert(at, u);
        reference = view.greedy_sorted(&reference);
        let in_current_mwb = reference.contains(&u);

        revealed[u.0] = true;
        let obs = Observation {
            view,
            weights,
            revealed: &revealed,
            arrived: &arrived,
            samples: &samples,
            accepted: &accepted,
            current: u,
        };
        let (phase, decision) = if time < p {
            let kicked = policy.observe_sample(&obs)?;
            (Phase::Sample, Decision { accept: false, kicked })
        } else {
            (Phase::Live, policy.decide(&obs)?)
        };
        if decision.kicked == Some(u) {
            return Err(SimError::KickedSelf(u));
        }
        if decision.accept {
            if !view.independent_unchecked(accepted.iter().copied().chain([u])) {
                return Err(SimError::HarnessViolation {
                    element: u,
                    accepted: accepted.iter().copied().collect(),
                });
            }
            accepted.insert(u);
        }
        if phase == Phase::Sample {
            samples.insert(u);
        }
        records.push(DecisionRecord {
            element: u,
            time,
            phase,
            accepted: decision.accept,
            in_current_mwb,
            kicked: decision.kicked,
            kicked_was_sample: decision.kicked.map(|k| samples.contains(&k)),
        });
        arrived.push(u);
    }

    Ok(DecisionTrace {
        records,
        accepted,
        sample_set: samples,
    })
}
