//! Delivery-ratio observations from any of the evaluation paths.

use crate::{DeliveryResult, SimEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueSource {
    Exact,
    Lower,
    Upper,
    MonteCarlo,
    Replay,
}

impl ValueSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ValueSource::Exact => "exact",
            ValueSource::Lower => "lower",
            ValueSource::Upper => "upper",
            ValueSource::MonteCarlo => "montecarlo",
            ValueSource::Replay => "replay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub alpha: f64,
    /// Maximum delay in time steps.
    pub max_delay: u64,
    pub n_nodes: usize,
    pub source: ValueSource,
    pub value: f64,
    /// Present for stochastic sources.
    pub std_error: Option<f64>,
    /// Number of delivery trials behind a stochastic value.
    pub samples: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentResult {
    pub observations: Vec<Observation>,
}

impl ExperimentResult {
    pub fn find(&self, alpha: f64, max_delay: u64, source: ValueSource) -> Option<&Observation> {
        self.observations
            .iter()
            .find(|o| o.alpha == alpha && o.max_delay == max_delay && o.source == source)
    }

    pub fn push_analytic(
        &mut self,
        alpha: f64,
        max_delay: u64,
        n_nodes: usize,
        result: DeliveryResult,
    ) {
        let base = Observation {
            alpha,
            max_delay,
            n_nodes,
            source: ValueSource::Exact,
            value: 0.0,
            std_error: None,
            samples: None,
        };
        match result {
            DeliveryResult::Exact(value) => self.observations.push(Observation { value, ..base }),
            DeliveryResult::Bounded { lower, upper, .. } => {
                self.observations.push(Observation {
                    source: ValueSource::Lower,
                    value: lower,
                    ..base
                });
                self.observations.push(Observation {
                    source: ValueSource::Upper,
                    value: upper,
                    ..base
                });
            }
        }
    }

    pub fn push_estimate(
        &mut self,
        alpha: f64,
        max_delay: u64,
        n_nodes: usize,
        estimate: &SimEstimate,
    ) {
        self.observations.push(Observation {
            alpha,
            max_delay,
            n_nodes,
            source: ValueSource::MonteCarlo,
            value: estimate.delivery_ratio,
            std_error: Some(estimate.std_error),
            samples: Some(estimate.runs),
        });
    }
}
