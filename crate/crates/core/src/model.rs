//! The per-edge two-state Markov process and its closed-form quantities.
//!
//! Each potential link is independently either down or up. From one step to
//! the next a down link comes up with probability `p_up` and an up link goes
//! down with probability `p_down`:
//!
//! ```text
//!          down        up
//! down   1 - p_up     p_up
//! up     p_down       1 - p_down
//! ```

use crate::error::check_probability;
use crate::{Error, Result};

/// Parameters of the edge-Markov process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeMarkovParams {
    p_up: f64,
    p_down: f64,
    tau: f64,
}

impl EdgeMarkovParams {
    /// Both probabilities must lie in `(0, 1]`; `tau` is the step duration in
    /// seconds and must be positive.
    pub fn new(p_up: f64, p_down: f64, tau: f64) -> Result<Self> {
        for (name, p) in [("p_up", p_up), ("p_down", p_down)] {
            check_probability(name, p)?;
            if p == 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    value: p,
                    reason: "must be positive (a zero rate gives an infinite expected duration)",
                });
            }
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidParameter {
                name: "tau",
                value: tau,
                reason: "time step must be positive and finite",
            });
        }
        Ok(Self { p_up, p_down, tau })
    }

    pub fn p_up(&self) -> f64 {
        self.p_up
    }

    pub fn p_down(&self) -> f64 {
        self.p_down
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn pi_up(&self) -> f64 {
        self.p_up / (self.p_up + self.p_down)
    }

    pub fn pi_down(&self) -> f64 {
        self.p_down / (self.p_up + self.p_down)
    }

    /// Row-major 2x2 edge transition matrix, state 0 = down, state 1 = up.
    pub fn transition_matrix(&self) -> [[f64; 2]; 2] {
        [
            [1.0 - self.p_up, self.p_up],
            [self.p_down, 1.0 - self.p_down],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryStats {
    pub pi_up: f64,
    pub pi_down: f64,
    /// Expected contact duration in seconds.
    pub e_t_up: f64,
    /// Expected inter-contact duration in seconds.
    pub e_t_down: f64,
}

pub fn stationary_stats(params: &EdgeMarkovParams) -> StationaryStats {
    StationaryStats {
        pi_up: params.pi_up(),
        pi_down: params.pi_down(),
        e_t_up: params.tau / params.p_down,
        e_t_down: params.tau / params.p_up,
    }
}

/// Average node degree `(N - 1) * pi_up`.
pub fn mean_degree(params: &EdgeMarkovParams, n_nodes: usize) -> Result<f64> {
    if n_nodes < 2 {
        return Err(Error::TooFewNodes(n_nodes));
    }
    Ok((n_nodes - 1) as f64 * params.pi_up())
}

/// Summary statistics of a contact trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStats {
    pub n_nodes: usize,
    /// Mean duration of a contiguous contact, in seconds.
    pub mean_link_lifetime: f64,
    pub mean_degree: f64,
    /// Sampling period in seconds.
    pub tau: f64,
}

/// Recovers `(p_up, p_down)` from a trace's mean link lifetime and mean degree.
///
/// `p_down = tau / lifetime`, `pi_up = degree / (N - 1)` and
/// `p_up = p_down * pi_up / (1 - pi_up)`. Derived values outside `(0, 1]` are
/// reported as errors rather than clamped.
pub fn estimate_params(stats: &TraceStats) -> Result<EdgeMarkovParams> {
    let TraceStats {
        n_nodes,
        mean_link_lifetime,
        mean_degree,
        tau,
    } = *stats;
    if n_nodes < 2 {
        return Err(Error::TooFewNodes(n_nodes));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
            reason: "sampling period must be positive and finite",
        });
    }
    let max_degree = (n_nodes - 1) as f64;
    if !mean_degree.is_finite() || mean_degree < 0.0 {
        return Err(Error::Estimation(format!(
            "mean degree {mean_degree} is not a non-negative number"
        )));
    }
    if mean_degree == 0.0 {
        return Err(Error::Estimation(
            "mean degree is 0 (no contacts), p_up is undefined".into(),
        ));
    }
    if mean_degree >= max_degree {
        return Err(Error::Estimation(format!(
            "mean degree {mean_degree} must be below N - 1 = {max_degree}"
        )));
    }
    if !mean_link_lifetime.is_finite() || mean_link_lifetime < tau {
        return Err(Error::Estimation(format!(
            "mean link lifetime {mean_link_lifetime} s is shorter than the sampling period {tau} s"
        )));
    }
    let p_down = tau / mean_link_lifetime;
    let pi_up = mean_degree / max_degree;
    let p_up = p_down * pi_up / (1.0 - pi_up);
    if p_up > 1.0 {
        return Err(Error::Estimation(format!(
            "derived p_up = {p_up} exceeds 1; lifetime and degree are inconsistent"
        )));
    }
    EdgeMarkovParams::new(p_up, p_down, tau)
}
