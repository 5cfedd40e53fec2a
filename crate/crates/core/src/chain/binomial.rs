/// Binomial probability mass function over `0..=trials` with success
/// probability `q`.
///
/// Uses the multiplicative recurrence `P(k+1) = P(k) (n-k)/(k+1) q/(1-q)`,
/// falling back to the same recurrence in log space when `(1-q)^n` would
/// underflow.
pub fn binomial_pmf(trials: usize, q: f64) -> Vec<f64> {
    debug_assert!((0.0..=1.0).contains(&q), "q = {q}");
    let mut pmf = vec![0.0; trials + 1];
    if q <= 0.0 {
        pmf[0] = 1.0;
        return pmf;
    }
    if q >= 1.0 {
        pmf[trials] = 1.0;
        return pmf;
    }
    let n = trials as f64;
    let ln_fail = (-q).ln_1p();
    let start = ln_fail * n;
    if start > -700.0 {
        let odds = q / (1.0 - q);
        let mut p = start.exp();
        for (k, slot) in pmf.iter_mut().enumerate() {
            *slot = p;
            p *= (n - k as f64) / (k as f64 + 1.0) * odds;
        }
    } else {
        let ln_q = q.ln();
        let mut ln_choose = 0.0;
        for (k, slot) in pmf.iter_mut().enumerate() {
            let kf = k as f64;
            *slot = (ln_choose + kf * ln_q + (n - kf) * ln_fail).exp();
            ln_choose += ((n - kf) / (kf + 1.0)).ln();
        }
    }
    pmf
}

/// Probability that exactly `m` of `w` targets are infected when each of `u`
/// infectors independently reaches each target with probability `p`.
///
/// Panics if `m > w`.
pub fn p_inf(m: usize, p: f64, u: usize, w: usize) -> f64 {
    assert!(m <= w, "p_inf: m = {m} exceeds the {w} available targets");
    binomial_pmf(w, reach_probability(p, u))[m]
}

/// `1 - (1 - p)^u`: chance that at least one of `u` infectors reaches a target.
pub(crate) fn reach_probability(p: f64, u: usize) -> f64 {
    1.0 - miss_probability(p, u)
}

pub(crate) fn miss_probability(p: f64, u: usize) -> f64 {
    (1.0 - p).powi(u as i32)
}

/// Probability that the destination is infected during the next step, given
/// `i` earlier-infected and `j` freshly infected nodes:
/// `1 - pi_down_eff^j (1 - p_up_eff)^i`.
pub fn p_succ(i: usize, j: usize, pi_down_eff: f64, p_up_eff: f64) -> f64 {
    1.0 - pi_down_eff.powi(j as i32) * (1.0 - p_up_eff).powi(i as i32)
}
