use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The check failed in a scenario where failure is the expected outcome.
    ExpectedDivergence,
    /// The input run broke down; nothing was checked.
    NotApplicable,
}

/// Where the worst slack occurred.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Location {
    pub point: Vec<(f64, f64)>,
    pub time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub name: String,
    pub satisfied: bool,
    pub verdict: Verdict,
    pub worst_slack: f64,
    pub worst_location: Option<Location>,
    pub tolerance_used: f64,
    pub samples: usize,
    /// Extra named numbers (calibrated constants, rates, ...).
    #[serde(default)]
    pub notes: Vec<(String, f64)>,
}

impl EstimateReport {
    pub fn not_applicable(name: &str, why: &str) -> Self {
        EstimateReport {
            name: name.into(),
            satisfied: false,
            verdict: Verdict::NotApplicable,
            worst_slack: f64::NAN,
            worst_location: None,
            tolerance_used: 0.0,
            samples: 0,
            notes: vec![(format!("not applicable: {why}"), f64::NAN)],
        }
    }

    pub fn note(mut self, key: &str, value: f64) -> Self {
        self.notes.push((key.into(), value));
        self
    }

    pub fn noted(&self, key: &str) -> Option<f64> {
        self.notes.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }

    /// Marks a failure as the anticipated outcome of the scenario.
    pub fn expect_divergence(mut self) -> Self {
        if !self.satisfied {
            self.verdict = Verdict::ExpectedDivergence;
        }
        self
    }
}

/// Running minimum of slack values, remembering where it was attained.
#[derive(Clone, Debug)]
pub struct SlackTracker {
    name: String,
    tolerance: f64,
    worst: f64,
    at: Option<Location>,
    samples: usize,
}

impl SlackTracker {
    pub fn new(name: &str, tolerance: f64) -> Self {
        SlackTracker { name: name.into(), tolerance, worst: f64::INFINITY, at: None, samples: 0 }
    }

    pub fn push(&mut self, slack: f64, point: &[(f64, f64)], time: f64) {
        self.samples += 1;
        // NaN slack counts as a violation.
        if slack.is_nan() || slack < self.worst {
            self.worst = if slack.is_nan() { f64::NEG_INFINITY } else { slack };
            self.at = Some(Location { point: point.to_vec(), time });
        }
    }

    pub fn worst(&self) -> f64 {
        self.worst
    }

    pub fn finish(self) -> EstimateReport {
        let satisfied = self.samples > 0 && self.worst >= -self.tolerance;
        EstimateReport {
            name: self.name,
            satisfied,
            verdict: if satisfied { Verdict::Pass } else { Verdict::Fail },
            worst_slack: self.worst,
            worst_location: self.at,
            tolerance_used: self.tolerance,
            samples: self.samples,
            notes: Vec::new(),
        }
    }
}
