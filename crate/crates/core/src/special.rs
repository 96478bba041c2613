//! Special-function plumbing shared by the example problems: the complex
//! gamma function (Lanczos), the complex dilogarithm, and standard Laurent
//! windows.

use crate::series::{bernoulli_over_factorial, factorial, LaurentSeries};
use crate::C64;
use std::f64::consts::PI;
use std::sync::Arc;

// Lanczos g = 7, n = 9 coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Complex gamma function `Γ(z)` (Lanczos approximation, reflection for
/// `Re z < 1/2`). Accurate to ~13 digits away from the poles.
pub fn gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let s = (PI * z).sin();
        if s.norm() == 0.0 {
            return C64::new(f64::INFINITY, 0.0);
        }
        return PI / (s * gamma(C64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut acc = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * acc
}

/// `log Γ(z)` up to a multiple of `2πi` (sufficient for exponentiated
/// products), stable far into the complex plane where `Γ` itself would
/// overflow or underflow.
pub fn ln_gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // lnΓ(z) = ln π - ln sin(πz) - lnΓ(1-z)
        return C64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(C64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut acc = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `log sin(πz)` up to a multiple of `2πi`, stable for large `|Im z|`.
pub fn ln_sin_pi(z: C64) -> C64 {
    let i = C64::i();
    if z.im >= 0.0 {
        // sin πz = -e^{-iπz}(1 - e^{2iπz}) / (2i)
        -i * PI * z + (1.0 - (2.0 * i * PI * z).exp()).ln() + C64::new(0.5_f64.ln(), PI / 2.0)
    } else {
        i * PI * z + (1.0 - (-2.0 * i * PI * z).exp()).ln() + C64::new(0.5_f64.ln(), -PI / 2.0)
    }
}

/// `log cos(z)` up to a multiple of `2πi`, stable for large `|Im z|`.
pub fn ln_cos(z: C64) -> C64 {
    let i = C64::i();
    if z.im >= 0.0 {
        // cos z = e^{-iz}(1 + e^{2iz}) / 2
        -i * z + (1.0 + (2.0 * i * z).exp()).ln() - 2.0_f64.ln()
    } else {
        i * z + (1.0 + (-2.0 * i * z).exp()).ln() - 2.0_f64.ln()
    }
}

/// Complex dilogarithm `Li₂(x)`, principal branch (cut along `[1, ∞)`).
///
/// Strategy: direct series for `|x| ≤ 1/2`, the inversion formula for
/// `|x| > 1`, and otherwise the expansion in `u = -log(1-x)` whose
/// coefficients are `B_j / (j+1)!`.
pub fn li2(x: C64) -> C64 {
    let n = x.norm();
    if n == 0.0 {
        return C64::new(0.0, 0.0);
    }
    if n > 1.0 {
        // Li₂(x) = -Li₂(1/x) - π²/6 - ln²(-x)/2
        let ln_neg = (-x).ln();
        return -li2(1.0 / x) - PI * PI / 6.0 - 0.5 * ln_neg * ln_neg;
    }
    if n <= 0.5 {
        let mut acc = C64::new(0.0, 0.0);
        let mut pow = C64::new(1.0, 0.0);
        for k in 1..200 {
            pow *= x;
            let term = pow / (k * k) as f64;
            acc += term;
            if term.norm() < 1e-18 * acc.norm().max(1.0) {
                break;
            }
        }
        return acc;
    }
    // u-series: Li₂(x) = Σ_{j≥0} B_j u^{j+1}/(j+1)!  with u = -log(1-x)
    let u = -(C64::new(1.0, 0.0) - x).ln();
    let mut acc = C64::new(0.0, 0.0);
    let mut upow = C64::new(1.0, 0.0);
    for j in 0..160u32 {
        upow *= u;
        // B_j / (j+1)! = (B_j / j!) / (j+1)
        let coef = bernoulli_over_factorial(j) / (j as f64 + 1.0);
        if coef != 0.0 {
            let term = upow * coef;
            acc += term;
            if j > 8 && term.norm() < 1e-18 * acc.norm().max(1.0) {
                break;
            }
        }
    }
    acc
}

/// Laurent window of `1/sinh z` at the origin: `a_{2m-1} = 2(1-2^{2m-1})
/// B_{2m}/(2m)!`, all even coefficients zero, radius `π`, with the exact
/// majorant `κ(r) = 1/sin r`.
pub fn recip_sinh_laurent(max_exponent: i32) -> LaurentSeries {
    let mut coeffs = vec![C64::new(0.0, 0.0); (max_exponent + 2) as usize];
    for m in 0..=((max_exponent + 1) / 2) as u32 {
        // a_{2m-1} = 2 (1 - 2^{2m-1}) B_{2m} / (2m)!
        let exp_idx = (2 * m) as usize; // position of exponent 2m-1 (offset n0 = 1)
        if exp_idx < coeffs.len() {
            let factor = 2.0 * (1.0 - 2.0_f64.powi(2 * m as i32 - 1));
            coeffs[exp_idx] = C64::new(factor * bernoulli_over_factorial(2 * m), 0.0);
        }
    }
    LaurentSeries::new(1, coeffs, PI)
        .expect("valid 1/sinh window")
        .with_kappa(Arc::new(|r: f64| 1.0 / r.sin()))
}

/// Laurent window of `e^{μ z}`: `a_m = μ^m / m!` (entire).
pub fn exp_laurent(mu: f64, max_exponent: i32) -> LaurentSeries {
    let coeffs: Vec<C64> = (0..=max_exponent)
        .map(|m| C64::new(mu.powi(m) / factorial(m as u32), 0.0))
        .collect();
    LaurentSeries::new(0, coeffs, f64::INFINITY).expect("valid exp window")
}

/// Pochhammer symbol `(a)_n`.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for k in 0..n {
        acc *= a + k as f64;
    }
    acc
}
