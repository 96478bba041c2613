//! Formal series data: Laurent windows of `f` at the origin, the positive
//! majorant `κ(r) = Σ |a_m| r^m` and its tails, Bernoulli numbers, the formal
//! Borel transform `γ^m ↦ ξ^{m-1}/(m-1)!`, and Gevrey-1 growth diagnostics.

use crate::error::{MeroError, Result};
use crate::C64;
use std::sync::{Arc, Mutex, OnceLock};

/// Windowed Laurent series `f(z) = Σ_{m=-n0}^{M} a_m z^m` with convergence
/// radius `R_f` (`f64::INFINITY` for entire functions).
#[derive(Clone)]
pub struct LaurentSeries {
    /// Pole order `n0 ≥ 0` at the origin.
    pub pole_order: i32,
    /// Coefficients `a_{-n0}, ..., a_M` in ascending order of the exponent.
    pub coeffs: Vec<C64>,
    /// Distance from the origin to the nearest non-zero pole of `f`.
    pub radius: f64,
    /// Exact majorant `κ(r)` when a closed form is known (e.g. `1/sin r` for
    /// `1/sinh`); otherwise `κ` is summed from the window with a geometric
    /// tail bound.
    pub kappa_closed: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
}

impl std::fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LaurentSeries")
            .field("pole_order", &self.pole_order)
            .field("window", &self.coeffs.len())
            .field("radius", &self.radius)
            .finish()
    }
}

impl LaurentSeries {
    pub fn new(pole_order: i32, coeffs: Vec<C64>, radius: f64) -> Result<Self> {
        if pole_order < 0 {
            return Err(MeroError::Config("pole order n0 must be ≥ 0".into()));
        }
        if pole_order > 0 {
            let lead = coeffs.first().map(|c| c.norm()).unwrap_or(0.0);
            if lead == 0.0 {
                return Err(MeroError::Config(
                    "leading Laurent coefficient a_{-n0} must be nonzero when n0 > 0".into(),
                ));
            }
        }
        Ok(LaurentSeries { pole_order, coeffs, radius, kappa_closed: None })
    }

    pub fn with_kappa(mut self, kappa: Arc<dyn Fn(f64) -> f64 + Send + Sync>) -> Self {
        self.kappa_closed = Some(kappa);
        self
    }

    /// Coefficient `a_m`, zero outside the window.
    pub fn coeff(&self, m: i32) -> C64 {
        let idx = m + self.pole_order;
        if idx < 0 {
            return C64::new(0.0, 0.0);
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// Largest exponent in the window.
    pub fn max_exponent(&self) -> i32 {
        self.coeffs.len() as i32 - 1 - self.pole_order
    }

    /// Evaluates the windowed series at `z` (truncated, no tail estimate).
    pub fn eval_window(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        // Horner on the polynomial part of z^{n0} f(z), then divide.
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc * z.powi(-self.pole_order)
    }

    /// Recovers a Laurent window from samples of `f` on the circle `|z| = ρ`
    /// by trapezoidal Cauchy coefficients (spectrally accurate for `ρ < R_f`).
    pub fn from_fn<F>(f: F, pole_order: i32, rho: f64, max_exponent: i32, radius: f64) -> Result<Self>
    where
        F: Fn(C64) -> C64,
    {
        let n: usize = 4096;
        let samples: Vec<C64> = (0..n)
            .map(|k| {
                let phi = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                f(crate::cis(phi) * rho)
            })
            .collect();
        let mut coeffs = Vec::new();
        for m in -pole_order..=max_exponent {
            let mut acc = C64::new(0.0, 0.0);
            for (k, fv) in samples.iter().enumerate() {
                let phi = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                acc += fv * crate::cis(-phi * m as f64);
            }
            coeffs.push(acc / (n as f64 * rho.powi(m)));
        }
        LaurentSeries::new(pole_order, coeffs, radius)
    }

    fn check_r(&self, r: f64) -> Result<()> {
        if !(r > 0.0 && r < self.radius) {
            return Err(MeroError::DomainViolation(format!(
                "κ requires 0 < r < R_f = {}, got r = {r}",
                self.radius
            )));
        }
        Ok(())
    }

    /// Geometric ratio fitted from the top of the window, used to bound the
    /// truncated tail `Σ_{m>M} |a_m| r^m`.
    fn tail_ratio(&self) -> f64 {
        let mut best: f64 = 0.0;
        let m_hi = self.max_exponent();
        for m in (m_hi - 16).max(1)..=m_hi {
            let a = self.coeff(m).norm();
            if a > 0.0 {
                best = best.max(a.powf(1.0 / m as f64));
            }
        }
        best
    }

    fn kappa_window(&self, r: f64, from: i32, to: i32) -> f64 {
        let mut acc = 0.0;
        for m in from..=to {
            acc += self.coeff(m).norm() * r.powi(m);
        }
        acc
    }

    fn tail_bound(&self, r: f64) -> Result<f64> {
        let m_hi = self.max_exponent();
        let q = self.tail_ratio();
        let qr = q * r;
        if qr >= 0.999 {
            return Err(MeroError::NonConvergence {
                estimate: f64::INFINITY,
                tol: 0.0,
                evaluations: 0,
            });
        }
        Ok(q.powi(m_hi + 1) * r.powi(m_hi + 1) / (1.0 - qr))
    }

    /// `κ(r) = Σ_{m ≥ -n0} |a_m| r^m`.
    pub fn kappa(&self, r: f64) -> Result<f64> {
        self.check_r(r)?;
        if let Some(k) = &self.kappa_closed {
            return Ok(k(r));
        }
        Ok(self.kappa_window(r, -self.pole_order, self.max_exponent()) + self.tail_bound(r)?)
    }

    /// `κ_n(r) = Σ_{m ≥ n+1} |a_m| r^m`.
    pub fn kappa_tail(&self, n: i32, r: f64) -> Result<f64> {
        self.check_r(r)?;
        if let Some(k) = &self.kappa_closed {
            // subtract the explicitly known head from the exact total
            return Ok((k(r) - self.kappa_window(r, -self.pole_order, n)).max(0.0));
        }
        Ok(self.kappa_window(r, n + 1, self.max_exponent()) + self.tail_bound(r)?)
    }

    /// `κ_{n,n'}(r) = Σ_{m=n}^{n'} |a_m| r^m`.
    pub fn kappa_range(&self, n: i32, n_hi: i32, r: f64) -> Result<f64> {
        self.check_r(r)?;
        Ok(self.kappa_window(r, n, n_hi))
    }
}

/// One term `a_m h_m(w) γ^m` of the formal expansion.
#[derive(Debug, Clone, Copy)]
pub struct GammaTerm {
    pub m: i32,
    /// Laurent coefficient `a_m` of `f`.
    pub a: C64,
    /// Moment `h_m(w)`.
    pub h: C64,
    /// `c_m = a_m h_m(w)`.
    pub c: C64,
}

/// The formal series `Σ_m c_m(w) γ^m` with its split index `s`: terms with
/// `m < s` form the explicitly summed part `g⁻`, terms with `m ≥ s` the
/// (typically divergent) tail `g⁺` fed to the Borel transform.
#[derive(Debug, Clone)]
pub struct FormalGammaSeries {
    pub terms: Vec<GammaTerm>,
    pub split_index: i32,
}

impl FormalGammaSeries {
    pub fn minus_terms(&self) -> impl Iterator<Item = &GammaTerm> {
        self.terms.iter().filter(move |t| t.m < self.split_index)
    }

    pub fn plus_terms(&self) -> impl Iterator<Item = &GammaTerm> {
        self.terms.iter().filter(move |t| t.m >= self.split_index)
    }

    /// Evaluates `g⁻(γ)`, the finitely many terms below the split.
    pub fn eval_minus(&self, gamma: C64) -> C64 {
        self.minus_terms().map(|t| t.c * gamma.powi(t.m)).sum()
    }

    /// Partial sum of all windowed terms up to order `n`.
    pub fn partial_sum(&self, n: i32, gamma: C64) -> C64 {
        self.terms
            .iter()
            .filter(|t| t.m <= n)
            .map(|t| t.c * gamma.powi(t.m))
            .sum()
    }
}

/// Power series `Σ_l b_l ξ^l` obtained from a formal Borel transform.
#[derive(Debug, Clone)]
pub struct BorelSeries {
    pub coeffs: Vec<C64>,
    /// Ratio-test estimate of the convergence radius (NaN when too short).
    pub radius_estimate: f64,
}

impl BorelSeries {
    pub fn eval(&self, xi: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &b in self.coeffs.iter().rev() {
            acc = acc * xi + b;
        }
        acc
    }
}

/// Formal Borel transform of the `g⁺` part: `γ^m ↦ ξ^{m-1}/(m-1)!` termwise.
///
/// Requires split index ≥ 1; terms with `m ≤ 0` in `g⁺` are rejected.
pub fn borel_transform(g: &FormalGammaSeries) -> Result<BorelSeries> {
    if g.split_index < 1 {
        return Err(MeroError::Config(format!(
            "Borel transform needs split index ≥ 1, got {}",
            g.split_index
        )));
    }
    let mut max_m = 0;
    for t in g.plus_terms() {
        if t.m <= 0 {
            return Err(MeroError::Config(format!("g⁺ term with m = {} ≤ 0", t.m)));
        }
        max_m = max_m.max(t.m);
    }
    let mut coeffs = vec![C64::new(0.0, 0.0); max_m as usize];
    for t in g.plus_terms() {
        coeffs[(t.m - 1) as usize] = t.c / factorial(t.m as u32 - 1);
    }
    // ratio estimate over the trailing non-zero coefficients
    let nz: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(l, c)| (l, c.norm()))
        .collect();
    let radius_estimate = if nz.len() >= 4 {
        let (l0, b0) = nz[nz.len() - 3];
        let (l1, b1) = nz[nz.len() - 1];
        (b0 / b1).powf(1.0 / (l1 - l0) as f64)
    } else {
        f64::NAN
    };
    Ok(BorelSeries { coeffs, radius_estimate })
}

/// `n!` in f64.
pub fn factorial(n: u32) -> f64 {
    let mut acc = 1.0_f64;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

/// `ln n!`.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Riemann zeta at even integers `s ≥ 2` by Euler-Maclaurin (used for the
/// Bernoulli closed form below).
fn zeta_even(s: u32) -> f64 {
    let s = s as f64;
    let n = 100.0_f64;
    let mut acc = 0.0;
    let mut k = 1.0;
    while k < n {
        acc += k.powf(-s);
        k += 1.0;
    }
    // tail: ∫_N + f(N)/2 - f'(N)/12 + f'''(N)/720
    let f0 = n.powf(-s);
    acc += n.powf(1.0 - s) / (s - 1.0) + 0.5 * f0 + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0;
    acc
}

static BERNOULLI_CACHE: OnceLock<Mutex<Vec<f64>>> = OnceLock::new();

/// Maximum index accepted by [`bernoulli`].
pub const BERNOULLI_MAX: u32 = 200;

/// Bernoulli number `B_k` (convention `B_1 = -1/2`).
///
/// Even indices use `B_{2m} = (-1)^{m+1} 2 (2m)! ζ(2m) / (2π)^{2m}` with the
/// factorial folded into the product to avoid overflow; this stays accurate in
/// f64 far beyond the alternating recurrence. Values are cached after first
/// computation; odd `k > 1` returns 0 exactly.
pub fn bernoulli(k: u32) -> Result<f64> {
    if k > BERNOULLI_MAX {
        return Err(MeroError::Config(format!(
            "Bernoulli index {k} above configured maximum {BERNOULLI_MAX}"
        )));
    }
    if k == 0 {
        return Ok(1.0);
    }
    if k == 1 {
        return Ok(-0.5);
    }
    if k % 2 == 1 {
        return Ok(0.0);
    }
    let cache = BERNOULLI_CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().expect("bernoulli cache");
    let idx = (k / 2 - 1) as usize;
    while guard.len() <= idx {
        let kk = 2 * (guard.len() as u32 + 1);
        let m = kk / 2;
        let mut value = 2.0 * zeta_even(kk);
        for j in 1..=kk {
            value *= j as f64 / (2.0 * std::f64::consts::PI);
        }
        if m % 2 == 0 {
            value = -value;
        }
        guard.push(value);
    }
    Ok(guard[idx])
}

/// `B_k / k!`, computed without forming either factor (stable for all `k`).
pub fn bernoulli_over_factorial(k: u32) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k == 1 {
        return -0.5;
    }
    if k % 2 == 1 {
        return 0.0;
    }
    let m = k / 2;
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    sign * 2.0 * zeta_even(k) / (2.0 * std::f64::consts::PI).powi(k as i32)
}

/// Outcome of the Gevrey-1 growth fit on a `g⁺` window.
#[derive(Debug, Clone)]
pub struct GevreyReport {
    /// Fitted amplitude `A` in `|c_m| ≈ A σ^m (m-s)!`.
    pub amplitude: f64,
    /// Fitted rate `σ`; `1/σ` estimates the Borel radius.
    pub sigma: f64,
    /// RMS residual of the factorial-model fit in log space.
    pub residual: f64,
    /// Set when a plain geometric model fits better (no factorial growth).
    pub convergent: bool,
}

impl GevreyReport {
    pub fn borel_radius(&self) -> f64 {
        1.0 / self.sigma
    }
}

/// Fits `|c_m| ~ A σ^m (m-s)!` against the `g⁺` window and flags series whose
/// tail is better explained without the factorial factor.
pub fn gevrey1_diagnose(g: &FormalGammaSeries) -> Result<GevreyReport> {
    let s = g.split_index;
    let pts: Vec<(f64, f64, f64)> = g
        .plus_terms()
        .filter(|t| t.c.norm() > 0.0)
        .map(|t| {
            let lg = ln_factorial((t.m - s).max(0) as u32);
            (t.m as f64, t.c.norm().ln(), lg)
        })
        .collect();
    if pts.len() < 8 {
        if pts.is_empty() {
            return Ok(GevreyReport { amplitude: 0.0, sigma: 0.0, residual: 0.0, convergent: true });
        }
        return Err(MeroError::Config(format!(
            "Gevrey fit needs ≥ 8 nonzero g⁺ terms, got {}",
            pts.len()
        )));
    }
    // least squares y = a + b m for both models
    let fit = |ys: &[f64]| -> (f64, f64, f64) {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sy: f64 = ys.iter().sum();
        let sxy: f64 = pts.iter().zip(ys).map(|(p, y)| p.0 * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let inter = (sy - slope * sx) / n;
        let res = (pts
            .iter()
            .zip(ys)
            .map(|(p, y)| (y - inter - slope * p.0).powi(2))
            .sum::<f64>()
            / n)
            .sqrt();
        (inter, slope, res)
    };
    let y_fact: Vec<f64> = pts.iter().map(|p| p.1 - p.2).collect();
    let y_geom: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (a_f, b_f, r_f) = fit(&y_fact);
    let (_, b_g, r_g) = fit(&y_geom);
    // A geometric (or decaying) tail fits the no-factorial model markedly
    // better; factorial growth makes the geometric fit strongly convex.
    let convergent = r_g < r_f && b_g < 0.0;
    Ok(GevreyReport {
        amplitude: a_f.exp(),
        sigma: b_f.exp(),
        residual: r_f,
        convergent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::recip_sinh_laurent;
    use std::f64::consts::PI;

    fn exp_series(window: i32) -> LaurentSeries {
        let coeffs: Vec<C64> = (0..=window)
            .map(|m| C64::new(1.0 / factorial(m as u32), 0.0))
            .collect();
        LaurentSeries::new(0, coeffs, f64::INFINITY).unwrap()
    }

    #[test]
    fn kappa_exp_at_one() {
        let f = exp_series(40);
        assert!((f.kappa(1.0).unwrap() - 1.0_f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn kappa_recip_sinh_is_recip_sin() {
        let f = recip_sinh_laurent(64);
        // κ(r) = 1/sin r; at r = π/2 that is exactly 1
        assert!((f.kappa(PI / 2.0).unwrap() - 1.0).abs() < 1e-12);
        for r in [0.3, 1.0, 2.0, 2.9] {
            assert!(
                (f.kappa(r).unwrap() - 1.0 / r.sin()).abs() < 1e-9 / r.sin(),
                "r = {r}"
            );
        }
    }

    #[test]
    fn kappa_tail_matches_direct_sum() {
        let f = recip_sinh_laurent(64);
        // κ_1(1) = Σ_{m≥3}|a_m| = 1/sin(1) - 1 - 1/6  (a_{-1}=1, a_1=1/6 in modulus)
        let expect = 1.0 / 1.0_f64.sin() - 1.0 - 1.0 / 6.0;
        assert!((f.kappa_tail(1, 1.0).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn kappa_rejects_out_of_range() {
        let f = recip_sinh_laurent(32);
        assert!(f.kappa(-0.5).is_err());
        assert!(f.kappa(PI + 0.1).is_err());
        assert!(f.kappa(0.0).is_err());
    }

    #[test]
    fn kappa_monotone_and_dominates_terms() {
        let f = exp_series(48);
        let mut prev = 0.0;
        for i in 1..20 {
            let r = 0.2 * i as f64;
            let k = f.kappa(r).unwrap();
            assert!(k >= prev);
            prev = k;
            for m in 0..10 {
                assert!(k >= f.coeff(m).norm() * r.powi(m) - 1e-15);
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0).unwrap(), 1.0);
        assert_eq!(bernoulli(1).unwrap(), -0.5);
        assert_eq!(bernoulli(3).unwrap(), 0.0);
        assert!((bernoulli(2).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((bernoulli(12).unwrap() - (-691.0 / 2730.0)).abs() < 1e-12);
    }

    #[test]
    fn bernoulli_recurrence_oracle() {
        // Independent oracle: Σ_{j=0}^{k} C(k+1, j) B_j = 0 for k ≥ 1.
        for k in 1..=40u32 {
            let mut acc = 0.0;
            let mut binom = 1.0_f64; // C(k+1, 0)
            let mut scale: f64 = 0.0;
            for j in 0..=k {
                let term = binom * bernoulli(j).unwrap();
                acc += term;
                scale = scale.max(term.abs());
                binom *= (k + 1 - j) as f64 / (j + 1) as f64;
            }
            assert!(acc.abs() <= 1e-10 * scale.max(1.0), "k = {k}: {acc}");
        }
    }

    #[test]
    fn bernoulli_cap() {
        assert!(bernoulli(202).is_err());
        assert!(bernoulli(200).unwrap().is_finite());
    }

    #[test]
    fn borel_transform_monomials() {
        // γ¹ ↦ 1, γ³ ↦ ξ²/2
        let g = FormalGammaSeries {
            terms: vec![
                GammaTerm { m: 1, a: C64::new(1.0, 0.0), h: C64::new(1.0, 0.0), c: C64::new(1.0, 0.0) },
                GammaTerm { m: 3, a: C64::new(1.0, 0.0), h: C64::new(1.0, 0.0), c: C64::new(1.0, 0.0) },
            ],
            split_index: 1,
        };
        let b = borel_transform(&g).unwrap();
        assert_eq!(b.coeffs.len(), 3);
        assert!((b.coeffs[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((b.coeffs[2] - C64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn borel_of_factorial_series_is_geometric() {
        // Σ m! γ^{m+1} ↦ Σ ξ^m
        let terms: Vec<GammaTerm> = (1..=20)
            .map(|m| {
                let c = C64::new(factorial(m as u32 - 1), 0.0);
                GammaTerm { m, a: c, h: C64::new(1.0, 0.0), c }
            })
            .collect();
        let g = FormalGammaSeries { terms, split_index: 1 };
        let b = borel_transform(&g).unwrap();
        for c in &b.coeffs {
            assert!((c - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
        assert!((b.radius_estimate - 1.0).abs() < 1e-6);
    }

    #[test]
    fn borel_rejects_nonpositive_orders() {
        let g = FormalGammaSeries {
            terms: vec![GammaTerm {
                m: 0,
                a: C64::new(1.0, 0.0),
                h: C64::new(1.0, 0.0),
                c: C64::new(1.0, 0.0),
            }],
            split_index: 0,
        };
        assert!(borel_transform(&g).is_err());
    }

    #[test]
    fn borel_laplace_roundtrip_identity() {
        // term-by-term Laplace Σ b_l l! γ^{l+1} reproduces g⁺ exactly
        let terms: Vec<GammaTerm> = (1..=12)
            .map(|m| {
                let c = C64::new(0.3_f64.powi(m) * (m as f64), -0.1 * m as f64);
                GammaTerm { m, a: c, h: C64::new(1.0, 0.0), c }
            })
            .collect();
        let g = FormalGammaSeries { terms: terms.clone(), split_index: 1 };
        let b = borel_transform(&g).unwrap();
        for t in &terms {
            let back = b.coeffs[(t.m - 1) as usize] * factorial(t.m as u32 - 1);
            assert!((back - t.c).norm() < 1e-14 * t.c.norm().max(1.0));
        }
    }

    #[test]
    fn gevrey_detects_factorial_growth() {
        let terms: Vec<GammaTerm> = (1..=64)
            .map(|m| {
                let c = C64::new(factorial(m as u32), 0.0);
                GammaTerm { m, a: c, h: C64::new(1.0, 0.0), c }
            })
            .collect();
        let g = FormalGammaSeries { terms, split_index: 1 };
        let rep = gevrey1_diagnose(&g).unwrap();
        assert!(!rep.convergent);
        assert!((rep.sigma - 1.0).abs() < 0.05, "σ = {}", rep.sigma);
    }

    #[test]
    fn gevrey_flags_convergent_series() {
        let terms: Vec<GammaTerm> = (1..=24)
            .map(|m| {
                let c = C64::new(2.0_f64.powi(-m), 0.0);
                GammaTerm { m, a: c, h: C64::new(1.0, 0.0), c }
            })
            .collect();
        let g = FormalGammaSeries { terms, split_index: 1 };
        let rep = gevrey1_diagnose(&g).unwrap();
        assert!(rep.convergent);
    }
}
