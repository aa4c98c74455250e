use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::instances::InstanceBundle;
use crate::matroid::ElementId;
use crate::policy::PolicyName;
use crate::sim::{draw_schedule, run_trial, trial_rng, ArrivalSchedule, DecisionTrace, SimConfig};

use super::AnalysisError;

/// Rounds to 9 significant digits so serialized reports are diff-stable.
pub fn round_sig9(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.8e}").parse().expect("formatted float parses")
    } else {
        x
    }
}

fn sig9<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig9(*x))
}

fn sig9_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig9(*v)),
        None => s.serialize_none(),
    }
}

/// `3 sqrt(f(1 - f) / trials)`.
pub fn ci_radius(freq: f64, trials: u64) -> f64 {
    3.0 * (freq * (1.0 - freq) / trials as f64).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundDirection {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ElementFrequency {
    pub element: ElementId,
    pub label: String,
    pub accepted: u64,
    #[serde(serialize_with = "sig9")]
    pub freq: f64,
    #[serde(serialize_with = "sig9")]
    pub ci_radius_3sigma: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EstimateReport {
    pub policy: String,
    pub instance: String,
    pub elements: usize,
    #[serde(serialize_with = "sig9")]
    pub p: f64,
    pub seed: u64,
    pub trials: u64,
    /// Acceptance frequency of every element of the optimal basis.
    pub per_element_accept_freq: Vec<ElementFrequency>,
    #[serde(serialize_with = "sig9")]
    pub min_over_mwb: f64,
    pub min_over_mwb_element: Option<ElementId>,
    #[serde(serialize_with = "sig9")]
    pub utility_ratio_mean: f64,
    /// Radius for `min_over_mwb`.
    #[serde(serialize_with = "sig9")]
    pub ci_radius_3sigma: f64,
    #[serde(serialize_with = "sig9_opt")]
    pub analytic_bound: Option<f64>,
    pub bound_direction: Option<BoundDirection>,
}

impl EstimateReport {
    pub fn freq(&self, id: ElementId) -> Option<&ElementFrequency> {
        self.per_element_accept_freq.iter().find(|f| f.element == id)
    }

    pub fn with_bound(mut self, bound: f64, direction: BoundDirection) -> Self {
        self.analytic_bound = Some(bound);
        self.bound_direction = Some(direction);
        self
    }

    /// Whether `min_over_mwb` respects the attached bound up to the 3σ radius.
    /// `None` when no bound is attached.
    pub fn meets_bound(&self) -> Option<bool> {
        let bound = self.analytic_bound?;
        Some(match self.bound_direction? {
            BoundDirection::Lower => self.min_over_mwb >= bound - self.ci_radius_3sigma,
            BoundDirection::Upper => self.min_over_mwb <= bound + self.ci_radius_3sigma,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Result of a per-trace property check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckOutcome {
    /// The premise did not hold in this trace.
    Vacuous,
    Held,
    Failed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckTally {
    pub vacuous: u64,
    pub held: u64,
    pub failed: u64,
    pub first_failure: Option<u64>,
}

impl CheckTally {
    fn add(&mut self, trial: u64, outcome: CheckOutcome) {
        match outcome {
            CheckOutcome::Vacuous => self.vacuous += 1,
            CheckOutcome::Held => self.held += 1,
            CheckOutcome::Failed => {
                self.failed += 1;
                self.first_failure = Some(self.first_failure.map_or(trial, |t| t.min(trial)));
            }
        }
    }

    fn merge(mut self, other: CheckTally) -> CheckTally {
        self.vacuous += other.vacuous;
        self.held += other.held;
        self.failed += other.failed;
        self.first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn all_held(&self) -> bool {
        self.failed == 0
    }
}

struct Totals {
    counts: Vec<u64>,
    utility: Ratio<i128>,
    tally: CheckTally,
    error: Option<(u64, AnalysisError)>,
}

impl Totals {
    fn new(n: usize) -> Self {
        Self {
            counts: vec![0; n],
            utility: Ratio::from_integer(0),
            tally: CheckTally::default(),
            error: None,
        }
    }

    fn merge(mut self, other: Totals) -> Totals {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.utility += other.utility;
        self.tally = self.tally.merge(other.tally);
        self.error = match (self.error, other.error) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Runs `config.trials` independent trials and reports acceptance
/// frequencies of the optimal elements and the mean utility ratio.
pub fn estimate(
    policy: &PolicyName,
    bundle: &InstanceBundle,
    config: &SimConfig,
) -> Result<EstimateReport, AnalysisError> {
    estimate_with_check(policy, bundle, config, |_, _| Ok(CheckOutcome::Vacuous)).map(|(r, _)| r)
}

/// Like [`estimate`], also running `check` on every trace. Trial `i` always
/// uses the stream `trial_rng(seed, i)`, and all aggregates are integer or
/// exact rational sums, so the result does not depend on scheduling.
pub fn estimate_with_check<F>(
    policy: &PolicyName,
    bundle: &InstanceBundle,
    config: &SimConfig,
    check: F,
) -> Result<(EstimateReport, CheckTally), AnalysisError>
where
    F: Fn(&DecisionTrace, &ArrivalSchedule) -> Result<CheckOutcome, AnalysisError> + Sync,
{
    let n = bundle.len();
    // Fail fast on a policy that cannot run here.
    policy.instantiate(&bundle.view)?;

    let one_trial = |trial: u64| -> Result<(DecisionTrace, CheckOutcome), AnalysisError> {
        let schedule = draw_schedule(n, &mut trial_rng(config.seed, trial));
        let trace = run_trial(policy, &bundle.view, &bundle.weights, &schedule, config.p)?;
        let outcome = check(&trace, &schedule)?;
        Ok((trace, outcome))
    };

    let totals = (0..config.trials)
        .into_par_iter()
        .fold(
            || Totals::new(n),
            |mut acc, trial| {
                if acc.error.is_some() {
                    return acc;
                }
                match one_trial(trial) {
                    Ok((trace, outcome)) => {
                        for id in &trace.accepted {
                            acc.counts[id.0] += 1;
                            acc.utility += bundle.weights.weight(*id).ratio();
                        }
                        acc.tally.add(trial, outcome);
                    }
                    Err(e) => acc.error = Some((trial, e)),
                }
                acc
            },
        )
        .reduce(|| Totals::new(n), Totals::merge);

    if let Some((trial, e)) = totals.error {
        return Err(match e {
            AnalysisError::Sim(source) => AnalysisError::Trial { trial, source },
            other => other,
        });
    }

    let trials = config.trials;
    let per_element: Vec<ElementFrequency> = bundle
        .mwb
        .iter()
        .map(|&id| {
            let accepted = totals.counts[id.0];
            let freq = accepted as f64 / trials as f64;
            ElementFrequency {
                element: id,
                label: bundle.weights.label(id).to_owned(),
                accepted,
                freq,
                ci_radius_3sigma: ci_radius(freq, trials),
            }
        })
        .collect();
    let worst = per_element
        .iter()
        .min_by(|a, b| a.accepted.cmp(&b.accepted).then(a.element.cmp(&b.element)));
    let min_over_mwb = worst.map_or(1.0, |f| f.freq);
    let optimum = bundle.weights.total(&bundle.mwb);
    let utility_ratio_mean = if optimum == Ratio::from_integer(0) {
        1.0
    } else {
        ratio_to_f64(totals.utility / (optimum * Ratio::from_integer(trials as i128)))
    };

    let report = EstimateReport {
        policy: policy.to_string(),
        instance: bundle.family.clone(),
        elements: n,
        p: config.p,
        seed: config.seed,
        trials,
        min_over_mwb_element: worst.map(|f| f.element),
        per_element_accept_freq: per_element,
        min_over_mwb,
        utility_ratio_mean,
        ci_radius_3sigma: ci_radius(min_over_mwb, trials),
        analytic_bound: None,
        bound_direction: None,
    };
    Ok((report, totals.tally))
}

fn ratio_to_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
