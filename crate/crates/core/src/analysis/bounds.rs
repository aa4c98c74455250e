use serde::Serialize;

use super::AnalysisError;

/// `(α(k), p(k))`: the probability ratio guaranteed by forbidden sets of
/// size `k` and the sampling probability that achieves it.
pub fn alpha_p(k: usize) -> Result<(f64, f64), AnalysisError> {
    match k {
        0 => Err(AnalysisError::ZeroK),
        1 => {
            let inv_e = (-1.0f64).exp();
            Ok((inv_e, inv_e))
        }
        _ => {
            let k = k as f64;
            Ok((k.powf(-k / (k - 1.0)), k.powf(-1.0 / (k - 1.0))))
        }
    }
}

/// Probability that the best of many elements is accepted by Dynkin's rule
/// with threshold `p`, in the limit of many elements: `p ln(1/p)`.
pub fn dynkin_best_probability(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.ln()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModifiedHatBounds {
    pub n: usize,
    pub p: f64,
    /// Probability that some claw `j <= n/2` has `2_j, 3_j, 4_j` sampled.
    pub p_n: f64,
    /// `∫_p^1 q_{n,t} dt`.
    pub q_integral: f64,
    /// `p + p_n ∫_p^1 q_{n,t} dt`, a lower bound on `Pr[e_inf rejected]`.
    pub rejection_lower_bound: f64,
}

const SIMPSON_INTERVALS: usize = 1024;

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let h = (b - a) / SIMPSON_INTERVALS as f64;
    let mut sum = f(a) + f(b);
    for i in 1..SIMPSON_INTERVALS {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

pub fn modified_hat_bounds(n: usize, p: f64) -> Result<ModifiedHatBounds, AnalysisError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(AnalysisError::OpenUnitInterval(p));
    }
    let half = (n / 2) as f64;
    let p_n = 1.0 - (1.0 - p.powi(3)).powf(half);
    let q = |t: f64| 1.0 - (1.0 - p * (t - p).powi(3) / 6.0).powf(half);
    let q_integral = simpson(q, p, 1.0);
    Ok(ModifiedHatBounds {
        n,
        p,
        p_n,
        q_integral,
        rejection_lower_bound: p + p_n * q_integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_values() {
        let (a, p) = alpha_p(1).unwrap();
        assert!((a - 0.36788).abs() < 5e-6 && (p - 0.36788).abs() < 5e-6);
        assert_eq!(alpha_p(2).unwrap(), (0.25, 0.5));
        let (a, p) = alpha_p(3).unwrap();
        assert!((a - 0.19245).abs() < 5e-6 && (p - 0.57735).abs() < 5e-6);
        assert_eq!(alpha_p(0), Err(AnalysisError::ZeroK));
    }

    #[test]
    fn p_n_values() {
        assert!((modified_hat_bounds(2, 0.5).unwrap().p_n - 0.125).abs() < 1e-15);
        assert!(modified_hat_bounds(1_000_000, 0.5).unwrap().p_n > 1.0 - 1e-6);
        assert!(modified_hat_bounds(4, 0.0).is_err());
        assert!(modified_hat_bounds(4, 1.0).is_err());
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let got = simpson(|t| t * t * t - 2.0 * t, 0.25, 1.0);
        let exact = (1.0f64 / 4.0 - 1.0) - (0.25f64.powi(4) / 4.0 - 0.0625);
        assert!((got - exact).abs() < 1e-12);
    }

    #[test]
    fn bound_grows_with_n() {
        let mut last = 0.0;
        for e in 1..=10 {
            let b = modified_hat_bounds(1 << e, 0.5).unwrap().rejection_lower_bound;
            assert!(b >= last);
            last = b;
        }
    }

    #[test]
    fn dynkin_at_one_over_e() {
        let p = (-1.0f64).exp();
        assert!((dynkin_best_probability(p) - p).abs() < 1e-15);
    }
}
