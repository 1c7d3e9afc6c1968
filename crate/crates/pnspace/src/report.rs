//! Campaign reports and the deterministic parallel trial runner.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    InsufficientSamples,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::InsufficientSamples => "insufficient-samples",
        })
    }
}

/// A reproducible counterexample: enough to re-run the trial that found it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub seed: u64,
    pub trial: u64,
    pub violation: f64,
    /// Where inside the trial the inequality broke, e.g. an abscissa or an
    /// axiom name.
    pub location: String,
    /// Sampled inputs in compact serialized form.
    pub inputs: BTreeMap<String, Value>,
}

/// Outcome of one randomized property campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub verdict: Verdict,
    /// Trials requested.
    pub trials: u64,
    /// Trials that produced a decidable sample (rejection sampling can lower
    /// this below `trials`).
    pub checked: u64,
    pub max_violation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Self-contained statement of the property the campaign examined.
    pub claim: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    /// One human-readable line, stable across runs.
    pub fn summary_line(&self) -> String {
        let mut line = format!(
            "{}: {} (trials={}, checked={}, max_violation={:.3e})",
            self.campaign, self.verdict, self.trials, self.checked, self.max_violation
        );
        if let Some(w) = &self.witness {
            line.push_str(&format!(" witness at trial {} [{}]", w.trial, w.location));
        }
        line
    }

    /// Folds several sub-reports into one verdict line. The merged verdict is
    /// the worst of the parts; the witness comes from the worst failing part.
    pub fn merge(campaign: &str, claim: &str, parts: &[VerificationReport]) -> VerificationReport {
        let mut verdict = Verdict::Pass;
        let mut trials = 0;
        let mut checked = 0;
        let mut max_violation = 0.0f64;
        let mut witness = None;
        for p in parts {
            trials += p.trials;
            checked += p.checked;
            if p.verdict == Verdict::Fail && verdict != Verdict::Fail {
                verdict = Verdict::Fail;
            } else if p.verdict == Verdict::InsufficientSamples && verdict == Verdict::Pass {
                verdict = Verdict::InsufficientSamples;
            }
            if p.max_violation > max_violation || (witness.is_none() && p.witness.is_some()) {
                max_violation = max_violation.max(p.max_violation);
                if p.witness.is_some() {
                    witness = p.witness.clone();
                }
            }
        }
        VerificationReport {
            campaign: campaign.into(),
            verdict,
            trials,
            checked,
            max_violation,
            witness,
            claim: claim.into(),
        }
    }

    /// Wraps a campaign whose *failure* is the predicted outcome: the wrapper
    /// passes exactly when the inner campaign found a violation, and carries
    /// the refuting witness forward as evidence.
    pub fn expect_refutation(
        self,
        campaign: &str,
        claim: &str,
    ) -> VerificationReport {
        let verdict = match self.verdict {
            Verdict::Fail => Verdict::Pass,
            Verdict::Pass => Verdict::Fail,
            Verdict::InsufficientSamples => Verdict::InsufficientSamples,
        };
        VerificationReport {
            campaign: campaign.into(),
            verdict,
            trials: self.trials,
            checked: self.checked,
            max_violation: self.max_violation,
            witness: self.witness,
            claim: claim.into(),
        }
    }
}

/// Shared knobs of every randomized campaign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub trials: u64,
    pub seed: u64,
}

impl CheckParams {
    pub fn new(trials: u64, seed: u64) -> Self {
        CheckParams { trials, seed }
    }

    /// Derives an independent parameter set for a named sub-campaign, so that
    /// sibling campaigns never share random streams.
    pub fn derive(&self, label: &str) -> CheckParams {
        CheckParams {
            trials: self.trials,
            seed: self.seed ^ fnv1a(label),
        }
    }

    pub fn with_trials(&self, trials: u64) -> CheckParams {
        CheckParams { trials, ..*self }
    }
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            trials: 1000,
            seed: 42,
        }
    }
}

/// FNV-1a hash; stable across platforms, used to split seeds per campaign.
pub fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// What a single trial reports back to the runner.
#[derive(Debug, Clone)]
pub enum TrialOutcome {
    /// Property held on this sample.
    Held { violation: f64 },
    /// Property broke; payload becomes the witness.
    Violated {
        violation: f64,
        location: String,
        inputs: BTreeMap<String, Value>,
    },
    /// Sample was rejected before the property could be evaluated.
    Rejected,
}

impl TrialOutcome {
    pub fn held() -> Self {
        TrialOutcome::Held { violation: 0.0 }
    }

    /// Adopts the verdict of a pointwise order comparison; the raw worst gap
    /// is kept either way as a diagnostic.
    pub fn from_order_check(
        check: &crate::ddf::OrderCheck,
        location: impl Into<String>,
        inputs: BTreeMap<String, Value>,
    ) -> Self {
        if check.holds {
            TrialOutcome::Held {
                violation: check.max_violation,
            }
        } else {
            TrialOutcome::Violated {
                violation: check.max_violation,
                location: location.into(),
                inputs,
            }
        }
    }

    pub fn from_gap(violation: f64, tol: f64, location: impl Into<String>, inputs: BTreeMap<String, Value>) -> Self {
        if violation > tol {
            TrialOutcome::Violated {
                violation,
                location: location.into(),
                inputs,
            }
        } else {
            TrialOutcome::Held {
                violation: violation.max(0.0),
            }
        }
    }
}

/// Runs `trials` independent trials in parallel and folds them into a report.
///
/// Determinism: trial i draws from a ChaCha stream keyed by (seed, i), and the
/// fold scans outcomes in trial order, so the report is identical regardless
/// of thread scheduling. On ties in violation magnitude the earliest trial
/// wins the witness slot.
pub fn run_campaign(
    campaign: &str,
    claim: &str,
    params: CheckParams,
    min_checked: u64,
    trial: impl Fn(u64, &mut ChaCha8Rng) -> TrialOutcome + Sync,
) -> VerificationReport {
    let outcomes: Vec<TrialOutcome> = (0..params.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            rng.set_stream(i + 1);
            trial(i, &mut rng)
        })
        .collect();

    let mut checked = 0;
    let mut max_violation = 0.0f64;
    let mut witness: Option<Witness> = None;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            TrialOutcome::Rejected => {}
            TrialOutcome::Held { violation } => {
                checked += 1;
                max_violation = max_violation.max(violation);
            }
            TrialOutcome::Violated {
                violation,
                location,
                inputs,
            } => {
                checked += 1;
                max_violation = max_violation.max(violation);
                let replace = match &witness {
                    None => true,
                    Some(w) => violation > w.violation,
                };
                if replace {
                    witness = Some(Witness {
                        seed: params.seed,
                        trial: i as u64,
                        violation,
                        location,
                        inputs,
                    });
                }
            }
        }
    }
    let verdict = if witness.is_some() {
        Verdict::Fail
    } else if checked < min_checked {
        Verdict::InsufficientSamples
    } else {
        Verdict::Pass
    };
    VerificationReport {
        campaign: campaign.into(),
        verdict,
        trials: params.trials,
        checked,
        max_violation,
        witness,
        claim: claim.into(),
    }
}
