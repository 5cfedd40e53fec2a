use super::bounds::LowerBoundMode;
use super::matrix::{
    build_dynamic_matrix, build_lower_bound_matrix, build_static_matrix, build_upper_bound_matrix,
    check_nodes, TransitionMatrix,
};
use crate::{BundleRegime, BundleSize, EdgeMarkovParams, Error, Result};

/// Delivery question for one source/destination pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeliveryQuery {
    pub n_nodes: usize,
    /// Bundle size in units of the link size.
    pub alpha: f64,
    /// Maximum delay in time steps. Zero is allowed and always yields 0.
    pub max_delay: u64,
}

impl DeliveryQuery {
    pub fn new(n_nodes: usize, alpha: f64, max_delay: u64) -> Result<Self> {
        if n_nodes < 2 {
            return Err(Error::TooFewNodes(n_nodes));
        }
        BundleSize::new(alpha)?;
        Ok(Self {
            n_nodes,
            alpha,
            max_delay,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeliveryResult {
    Exact(f64),
    /// Bounds from `intervals = floor(d / ceil(alpha))` intervals. With zero
    /// intervals no transfer can complete and both bounds are 0.
    Bounded {
        lower: f64,
        upper: f64,
        intervals: u64,
    },
}

impl DeliveryResult {
    pub fn exact(&self) -> Option<f64> {
        match *self {
            DeliveryResult::Exact(v) => Some(v),
            DeliveryResult::Bounded { .. } => None,
        }
    }

    pub fn lower(&self) -> f64 {
        match *self {
            DeliveryResult::Exact(v) => v,
            DeliveryResult::Bounded { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> f64 {
        match *self {
            DeliveryResult::Exact(v) => v,
            DeliveryResult::Bounded { upper, .. } => upper,
        }
    }

    /// True for bounds computed from zero complete intervals (`d < ceil(alpha)`).
    pub fn no_complete_interval(&self) -> bool {
        matches!(self, DeliveryResult::Bounded { intervals: 0, .. })
    }
}

/// Distribution after `steps` left-multiplications by `matrix`.
pub fn evolve(initial: &[f64], matrix: &TransitionMatrix, steps: u64) -> Result<Vec<f64>> {
    if initial.len() != matrix.dim() {
        return Err(Error::DimensionMismatch {
            expected: matrix.dim(),
            found: initial.len(),
        });
    }
    let total: f64 = initial.iter().sum();
    if total.is_nan() || (total - 1.0).abs() > 1e-9 || initial.iter().any(|v| *v < 0.0) {
        return Err(Error::NotADistribution(total));
    }
    let mut current = initial.to_vec();
    let mut scratch = vec![0.0; current.len()];
    for _ in 0..steps {
        matrix.left_multiply(&current, &mut scratch);
        std::mem::swap(&mut current, &mut scratch);
    }
    Ok(current)
}

fn init_vector(dim: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[0] = 1.0;
    v
}

/// Succ mass after 0, 1, ..., `periods` applications of `step`.
fn succ_trajectory(
    dim: usize,
    periods: u64,
    mut step: impl FnMut(&mut Vec<f64>, &mut Vec<f64>),
) -> Vec<f64> {
    let mut current = init_vector(dim);
    let mut scratch = vec![0.0; dim];
    let mut out = Vec::with_capacity(periods as usize + 1);
    out.push(current[dim - 1]);
    for _ in 0..periods {
        step(&mut current, &mut scratch);
        out.push(current[dim - 1]);
    }
    out
}

/// Delivery results for every delay `0..=max_delay`.
pub fn delivery_curve(
    params: &EdgeMarkovParams,
    n_nodes: usize,
    alpha: f64,
    max_delay: u64,
    mode: LowerBoundMode,
) -> Result<Vec<DeliveryResult>> {
    check_nodes(n_nodes)?;
    let bundle = BundleSize::new(alpha)?;
    match bundle.regime() {
        BundleRegime::Hops(hops) => {
            let dynamic = build_dynamic_matrix(params, n_nodes)?;
            // After N-2 frozen rounds every fresh cohort is exhausted.
            let frozen_rounds = (hops - 1).min(n_nodes as u64);
            let frozen = if frozen_rounds > 0 {
                Some(build_static_matrix(params, n_nodes)?)
            } else {
                None
            };
            let succ = succ_trajectory(dynamic.dim(), max_delay, |cur, tmp| {
                dynamic.left_multiply(cur, tmp);
                std::mem::swap(cur, tmp);
                if let Some(frozen) = &frozen {
                    for _ in 0..frozen_rounds {
                        frozen.left_multiply(cur, tmp);
                        std::mem::swap(cur, tmp);
                    }
                }
            });
            Ok(succ.into_iter().map(DeliveryResult::Exact).collect())
        }
        BundleRegime::Sustained(interval) => {
            let intervals = max_delay / interval;
            let lower_t = build_lower_bound_matrix(params, n_nodes, bundle, mode)?;
            let upper_t = build_upper_bound_matrix(params, n_nodes, bundle)?;
            let run = |t: &TransitionMatrix| {
                succ_trajectory(t.dim(), intervals, |cur, tmp| {
                    t.left_multiply(cur, tmp);
                    std::mem::swap(cur, tmp);
                })
            };
            let (lower, upper) = (run(&lower_t), run(&upper_t));
            Ok((0..=max_delay)
                .map(|d| {
                    let k = (d / interval) as usize;
                    DeliveryResult::Bounded {
                        lower: lower[k],
                        upper: upper[k],
                        intervals: k as u64,
                    }
                })
                .collect())
        }
    }
}

/// Delivery ratio with the default (corrected) lower bound.
pub fn delivery_ratio(params: &EdgeMarkovParams, query: &DeliveryQuery) -> Result<DeliveryResult> {
    delivery_ratio_with_mode(params, query, LowerBoundMode::Corrected)
}

/// Exact probability that the destination is reached within `max_delay` steps
/// for `alpha <= 1`, or lower/upper bounds on it for `alpha > 1`.
pub fn delivery_ratio_with_mode(
    params: &EdgeMarkovParams,
    query: &DeliveryQuery,
    mode: LowerBoundMode,
) -> Result<DeliveryResult> {
    let curve = delivery_curve(params, query.n_nodes, query.alpha, query.max_delay, mode)?;
    Ok(*curve.last().expect("curve includes d = 0"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::build_matrix;
    use crate::chain::matrix::InfectionRates;

    fn defaults() -> EdgeMarkovParams {
        EdgeMarkovParams::new(1.0 / 20.0, 0.5, 1.0).unwrap()
    }

    fn exact(params: &EdgeMarkovParams, n: usize, alpha: f64, d: u64) -> f64 {
        let q = DeliveryQuery::new(n, alpha, d).unwrap();
        delivery_ratio(params, &q).unwrap().exact().unwrap()
    }

    #[test]
    fn one_step_is_pi_up() {
        assert!((exact(&defaults(), 3, 1.0, 1) - 1.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn two_steps_three_nodes() {
        // Init -> Succ, Init -> (1,0) -> Succ, Init -> (1,1) -> Succ.
        let (pu, up, down) = (0.05, 1.0 / 11.0, 10.0 / 11.0);
        let hand = up + down * down * pu + down * up * (1.0 - down * (1.0 - pu));
        let v = exact(&defaults(), 3, 1.0, 2);
        assert!((v - hand).abs() < 1e-14);
        assert!((v - 0.1435).abs() < 5e-5);
    }

    #[test]
    fn zero_delay_is_zero() {
        assert_eq!(exact(&defaults(), 2, 1.0, 0), 0.0);
        let q = DeliveryQuery::new(4, 3.0, 0).unwrap();
        let r = delivery_ratio(&defaults(), &q).unwrap();
        assert!(r.no_complete_interval());
    }

    #[test]
    fn converges_to_one() {
        let curve = delivery_curve(&defaults(), 2, 1.0, 10_000, LowerBoundMode::Corrected).unwrap();
        for w in curve.windows(2) {
            assert!(w[1].lower() >= w[0].lower());
        }
        assert!(curve.last().unwrap().lower() > 1.0 - 1e-12);
    }

    #[test]
    fn short_delay_for_large_bundle() {
        let q = DeliveryQuery::new(5, 3.0, 2).unwrap();
        let r = delivery_ratio(&defaults(), &q).unwrap();
        assert_eq!(
            r,
            DeliveryResult::Bounded {
                lower: 0.0,
                upper: 0.0,
                intervals: 0
            }
        );
        assert!(r.no_complete_interval());
    }

    #[test]
    fn bounds_use_floor_of_intervals() {
        let p = defaults();
        let at = |d| delivery_ratio(&p, &DeliveryQuery::new(6, 2.5, d).unwrap()).unwrap();
        assert_eq!(at(6), at(8));
        assert_ne!(at(8), at(9));
        match at(9) {
            DeliveryResult::Bounded {
                intervals,
                lower,
                upper,
            } => {
                assert_eq!(intervals, 3);
                assert!(lower <= upper);
            }
            _ => panic!("expected bounds"),
        }
    }

    #[test]
    fn evolve_identity_and_errors() {
        let t = build_dynamic_matrix(&defaults(), 4).unwrap();
        let v = init_vector(t.dim());
        assert_eq!(evolve(&v, &t, 0).unwrap(), v);
        assert!(matches!(
            evolve(&v[1..], &t, 1),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut half = v.clone();
        half[0] = 0.5;
        assert!(matches!(
            evolve(&half, &t, 1),
            Err(Error::NotADistribution(_))
        ));
    }

    #[test]
    fn evolve_matches_delivery_ratio() {
        let p = EdgeMarkovParams::new(0.2, 0.3, 1.0).unwrap();
        let t = build_dynamic_matrix(&p, 7).unwrap();
        let out = evolve(&init_vector(t.dim()), &t, 6).unwrap();
        assert!((out[t.dim() - 1] - exact(&p, 7, 1.0, 6)).abs() < 1e-15);
        assert!((out.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn evolve_is_associative() {
        let p = EdgeMarkovParams::new(0.13, 0.41, 1.0).unwrap();
        for t in [
            build_dynamic_matrix(&p, 6).unwrap(),
            build_static_matrix(&p, 6).unwrap(),
        ] {
            let v = init_vector(t.dim());
            for (a, b) in [(0, 3), (2, 5), (7, 1)] {
                let split = evolve(&evolve(&v, &t, a).unwrap(), &t, b).unwrap();
                let whole = evolve(&v, &t, a + b).unwrap();
                for (x, y) in split.iter().zip(&whole) {
                    assert!((x - y).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn succ_mass_never_decreases() {
        let p = EdgeMarkovParams::new(0.2, 0.3, 1.0).unwrap();
        let bundle = BundleSize::new(2.0).unwrap();
        let matrices = [
            build_dynamic_matrix(&p, 8).unwrap(),
            build_static_matrix(&p, 8).unwrap(),
            build_lower_bound_matrix(&p, 8, bundle, LowerBoundMode::Corrected).unwrap(),
            build_upper_bound_matrix(&p, 8, bundle).unwrap(),
        ];
        for t in &matrices {
            let mut v = init_vector(t.dim());
            let mut last = 0.0;
            for _ in 0..30 {
                v = evolve(&v, t, 1).unwrap();
                let succ = v[t.dim() - 1];
                assert!(succ >= last);
                last = succ;
            }
        }
    }

    #[test]
    fn monotone_in_delay_nodes_and_bundle() {
        for (pu, pd) in [(0.05, 0.5), (0.2, 0.3), (0.6, 0.2)] {
            let p = EdgeMarkovParams::new(pu, pd, 1.0).unwrap();
            for n in 2..=9 {
                for &alpha in &[0.125, 0.25, 1.0 / 3.0, 0.5, 1.0, 2.0, 3.0] {
                    let curve =
                        delivery_curve(&p, n, alpha, 12, LowerBoundMode::Corrected).unwrap();
                    let bigger =
                        delivery_curve(&p, n + 1, alpha, 12, LowerBoundMode::Corrected).unwrap();
                    for d in 0..curve.len() {
                        if d > 0 {
                            assert!(curve[d].lower() >= curve[d - 1].lower() - 1e-15);
                            assert!(curve[d].upper() >= curve[d - 1].upper() - 1e-15);
                        }
                        assert!(bigger[d].lower() >= curve[d].lower() - 1e-12);
                        assert!(curve[d].lower() <= curve[d].upper() + 1e-12);
                    }
                }
                for d in 1..=8 {
                    let mut last = 1.0;
                    for alpha in [0.125, 0.2, 0.25, 1.0 / 3.0, 0.5, 1.0] {
                        let v = exact(&p, n, alpha, d);
                        assert!(v <= last + 1e-12, "not non-increasing in alpha");
                        last = v;
                    }
                }
            }
        }
    }

    #[test]
    fn frozen_rounds_saturate() {
        let p = defaults();
        let n = 6;
        // N-1 hops per step already reach the whole component.
        let a = exact(&p, n, 1.0 / (n - 1) as f64, 4);
        let b = exact(&p, n, 1.0 / 5000.0, 4);
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn plain_rates_reproduce_dynamic_matrix() {
        let p = EdgeMarkovParams::new(0.3, 0.4, 1.0).unwrap();
        assert_eq!(
            build_matrix(5, InfectionRates::dynamic(&p)).unwrap(),
            build_dynamic_matrix(&p, 5).unwrap()
        );
    }
}
