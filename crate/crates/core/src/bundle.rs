//! Bundle size relative to the link size `phi * tau`.
//!
//! A bundle of size `alpha <= 1` can make `floor(1 / alpha)` hops inside one
//! time step; a bundle of size `alpha > 1` needs a link that stays up for
//! `ceil(alpha)` consecutive steps.

use crate::{Error, Result};

// Absorbs the representation error of reciprocals such as 1 / (1/3).
const RECIPROCAL_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BundleSize(f64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BundleRegime {
    /// `alpha <= 1`: up to `hops` synchronous hops on each step's topology.
    Hops(u64),
    /// `alpha > 1`: a transfer needs the link up for `steps` consecutive steps.
    Sustained(u64),
}

impl BundleSize {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "bundle size must be positive and finite",
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn regime(self) -> BundleRegime {
        if self.0 <= 1.0 {
            BundleRegime::Hops(self.hops_per_step())
        } else {
            BundleRegime::Sustained(self.interval_steps())
        }
    }

    /// `floor(1 / alpha)`, saturating for vanishingly small bundles. At least 1.
    pub fn hops_per_step(self) -> u64 {
        let hops = (1.0 / self.0 + RECIPROCAL_SLACK).floor();
        if hops >= u64::MAX as f64 {
            u64::MAX
        } else {
            (hops as u64).max(1)
        }
    }

    /// `ceil(alpha)`. At least 1.
    pub fn interval_steps(self) -> u64 {
        (self.0.ceil() as u64).max(1)
    }
}
