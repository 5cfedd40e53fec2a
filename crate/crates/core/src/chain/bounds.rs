//! Effective link probabilities for bundles larger than one link slot.
//!
//! Time is cut into non-overlapping intervals of `c = ceil(alpha)` steps and
//! only links that stay up for `c` consecutive steps can carry the bundle. The
//! chain is then run once per interval with the per-step probabilities
//! replaced by these effective ones.

use super::matrix::InfectionRates;
use crate::{BundleSize, EdgeMarkovParams, Error, Result};

/// How the lower bound treats links to nodes infected in earlier intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LowerBoundMode {
    /// The link must come up at the interval start and then stay up:
    /// `p_up * (1 - p_down)^(c-1)`.
    #[default]
    Corrected,
    /// `p_up * p_down^(c-1)`, with `p_down` in place of `1 - p_down`. Below
    /// the corrected form for `p_down <= 1/2`; can exceed the upper bound
    /// when `p_down > 1/2`.
    Verbatim,
}

/// Effective `(pi_up, p_up)` substituted into the chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveRates {
    pub pi_up: f64,
    pub p_up: f64,
}

impl EffectiveRates {
    pub fn pi_down(&self) -> f64 {
        1.0 - self.pi_up
    }
}

impl From<EffectiveRates> for InfectionRates {
    fn from(r: EffectiveRates) -> Self {
        InfectionRates {
            fresh: r.pi_up,
            earlier: r.p_up,
        }
    }
}

fn large_bundle(alpha: f64) -> Result<BundleSize> {
    let bundle = BundleSize::new(alpha)?;
    if alpha <= 1.0 {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "bounds apply only to bundles larger than the link size",
        });
    }
    Ok(bundle)
}

pub(crate) fn lower_rates(
    params: &EdgeMarkovParams,
    interval: u64,
    mode: LowerBoundMode,
) -> EffectiveRates {
    let extra = (interval - 1) as i32;
    let survives = (1.0 - params.p_down()).powi(extra);
    let p_up = match mode {
        LowerBoundMode::Corrected => params.p_up() * survives,
        LowerBoundMode::Verbatim => params.p_up() * params.p_down().powi(extra),
    };
    EffectiveRates {
        pi_up: params.pi_up() * survives,
        p_up,
    }
}

pub(crate) fn upper_rates(params: &EdgeMarkovParams, interval: u64) -> EffectiveRates {
    let extra = (interval - 1) as i32;
    let survives = (1.0 - params.p_down()).powi(extra);
    let stay_down = 1.0 - params.p_up();
    EffectiveRates {
        pi_up: (params.pi_up() + params.pi_down() * (1.0 - stay_down.powi(extra))) * survives,
        p_up: (1.0 - stay_down.powi(interval as i32)) * survives,
    }
}

pub fn effective_params_lower(
    params: &EdgeMarkovParams,
    alpha: f64,
    mode: LowerBoundMode,
) -> Result<EffectiveRates> {
    let bundle = large_bundle(alpha)?;
    Ok(lower_rates(params, bundle.interval_steps(), mode))
}

pub fn effective_params_upper(params: &EdgeMarkovParams, alpha: f64) -> Result<EffectiveRates> {
    let bundle = large_bundle(alpha)?;
    Ok(upper_rates(params, bundle.interval_steps()))
}
