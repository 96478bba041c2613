//! Classical special functions as preconfigured transform problems over
//! Hankel-type contours: Euler's Gamma function and its reciprocal, the
//! Riemann and Hurwitz zeta functions, the Gauss hypergeometric function and
//! the Airy function.
//!
//! Orientation and prefactor conventions are pinned numerically against
//! independent reference values (`Γ(1/2) = √π`, `ζ(2) = π²/6`, the 2F1 and
//! Airy power series); branch choices are principal with the cut on `ℝ₋`,
//! which is continuous along every contour used here.

use crate::contour::{Contour, ContourFamily, Segment};
use crate::error::{MeroError, Result};
use crate::series::{bernoulli_over_factorial, factorial, LaurentSeries};
use crate::special::{exp_laurent, gamma as cgamma};
use crate::transform::{
    DecayHypotheses, Domain, FunctionSpec, KernelSpec, MomentTable, TransformProblem,
};
use crate::{cis, C64};
use std::f64::consts::PI;
use std::sync::Arc;

use crate::contour::HANKEL_DEFORMED_BETA as HANKEL_BETA;

fn hankel_family(epsilon: f64, clearance: f64) -> ContourFamily {
    let base: Arc<dyn Fn(C64) -> Contour + Send + Sync> = Arc::new(move |_w| {
        crate::contour::make_hankel(epsilon, false)
            .expect("valid Hankel")
            .with_clearance(clearance)
    });
    let hypothesis: Arc<dyn Fn(C64) -> Contour + Send + Sync> =
        Arc::new(move |_w| crate::contour::make_hankel(1.0, true).expect("valid deformed Hankel"));
    ContourFamily { base: base.clone(), hypothesis, borel: Some(base.clone()), moment: Some(base) }
}

/// Supremum of `t^q e^{-rate t}` over `t > 0`.
fn ray_peak(q: f64, rate: f64) -> f64 {
    if q <= 0.0 {
        1.0
    } else {
        (q / (rate * std::f64::consts::E)).powf(q)
    }
}

// ---------------------------------------------------------------------------
// Euler's Gamma function
// ---------------------------------------------------------------------------

/// `g^{Γ,α}_γ(w) = ∫_{H⁻_ε} z^{w-1} e^{αz} / (2i sin πw) · e^{(1-α)γz} dz`,
/// equal to `Γ(w)` at `γ = 1`.
pub fn gamma_problem(alpha: f64, epsilon: f64) -> Result<TransformProblem> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(MeroError::Config(format!("α must lie in (0,1), got {alpha}")));
    }
    let cosb = HANKEL_BETA.cos();
    let delta1 = 0.9 * alpha * cosb;
    let kernel = KernelSpec {
        eval: Arc::new(move |w: C64, z: C64| {
            ((w - 1.0) * z.ln()).exp() * (alpha * z).exp() / ((PI * w).sin() * C64::new(0.0, 2.0))
        }),
        k0: 1,
        delta1,
        c_w: Arc::new(move |w: C64| {
            let margin = alpha * cosb - delta1;
            (PI * w.im.abs()).exp() * ray_peak(w.re, margin).max(1.0)
                / (2.0 * (PI * w).sin().norm())
                * 1.1
        }),
        inner_radius: Arc::new(|_| f64::INFINITY),
        poles_near: Arc::new(|_, _| Vec::new()),
    };
    let function = FunctionSpec {
        eval: Arc::new(move |x: C64| ((1.0 - alpha) * x).exp()),
        laurent: exp_laurent(1.0 - alpha, 96),
        delta2: 0.0,
        c_tilde: Arc::new(|_| 1.0),
        c_floor: 1.0,
        poles_near: Arc::new(|_| Vec::new()),
    };
    Ok(TransformProblem {
        id: "gamma".into(),
        kernel,
        function,
        contours: hankel_family(epsilon, 0.4 * epsilon),
        w_domain: Domain {
            contains: Arc::new(|w: C64| w.re > 0.05 && w.re < 2.5),
            samples: vec![C64::new(0.5, 0.0), C64::new(1.3, 0.0), C64::new(0.8, 0.4)],
            description: "0.05 < Re w < 2.5".into(),
        },
        u_domain: Domain {
            contains: Arc::new(|g: C64| {
                g.norm() > 0.0 && g.norm() <= 4.0 && g.arg().abs() <= PI / 2.0 - HANKEL_BETA - 0.1
            }),
            samples: vec![C64::new(1.0, 0.0), C64::new(0.3, 0.1), C64::new(2.4, 0.0)],
            description: "|γ| ≤ 4, |Arg γ| ≤ π/2 - β - 0.1".into(),
        },
        split_index: 1,
        hyp: DecayHypotheses {
            delta1,
            delta2: 0.0,
            c_floor: 1.0,
            b: 1.0,
            d: 2,
            k0: 1,
            n0: 0,
            delta_tilde: None,
            rho_w: None,
            l_hat: Some(2.0),
            uniform_b: true,
        },
        eval_decay: Arc::new(move |_w, gamma: C64| {
            0.85 * (alpha + (1.0 - alpha) * gamma.re.max(0.0))
        }),
        moment_decay: Arc::new(move |_| 0.85 * alpha),
        integer_limit: Some(Arc::new(|wr: f64| wr >= 1.0)),
        phi_tail_envelope: None,
        moments: MomentTable::in_memory(),
    })
}

/// Evaluates the Gamma-function transform. Rejects `w ∈ ℤ`, where the
/// `1/sin πw` prefactor degenerates (the transform-level evaluator handles
/// removable positive integers by a symmetric limit instead).
pub fn gamma_eval(w: C64, gamma: C64, alpha: f64, tol: f64) -> Result<C64> {
    if w.im == 0.0 && (w.re - w.re.round()).abs() < 1e-12 {
        return Err(MeroError::DomainViolation(format!(
            "gamma_eval rejects integer w = {w} (sin πw = 0)"
        )));
    }
    let p = gamma_problem(alpha, 1.0)?;
    Ok(p.evaluate_g(w, gamma, tol)?.value)
}

// ---------------------------------------------------------------------------
// Reciprocal Gamma
// ---------------------------------------------------------------------------

/// `g^{1/Γ,α}_γ(w) = (1/2πi) ∫_{H⁻_ε} z^{-w} e^{αz} e^{(1-α)γz} dz`,
/// equal to `1/Γ(w)` at `γ = 1`.
pub fn recip_gamma_problem(alpha: f64, epsilon: f64) -> Result<TransformProblem> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(MeroError::Config(format!("α must lie in (0,1), got {alpha}")));
    }
    let cosb = HANKEL_BETA.cos();
    let delta1 = 0.9 * alpha * cosb;
    let kernel = KernelSpec {
        eval: Arc::new(move |w: C64, z: C64| {
            (-w * z.ln()).exp() * (alpha * z).exp() / C64::new(0.0, 2.0 * PI)
        }),
        k0: 1,
        delta1,
        c_w: Arc::new(move |w: C64| {
            let margin = alpha * cosb - delta1;
            (PI * w.im.abs()).exp() * ray_peak(1.0 - w.re, margin).max(1.0) / (2.0 * PI) * 1.1
        }),
        inner_radius: Arc::new(|_| f64::INFINITY),
        poles_near: Arc::new(|_, _| Vec::new()),
    };
    let function = FunctionSpec {
        eval: Arc::new(move |x: C64| ((1.0 - alpha) * x).exp()),
        laurent: exp_laurent(1.0 - alpha, 96),
        delta2: 0.0,
        c_tilde: Arc::new(|_| 1.0),
        c_floor: 1.0,
        poles_near: Arc::new(|_| Vec::new()),
    };
    Ok(TransformProblem {
        id: "recip_gamma".into(),
        kernel,
        function,
        contours: hankel_family(epsilon, 0.4 * epsilon),
        w_domain: Domain {
            contains: Arc::new(|w: C64| w.re < 1.05),
            samples: vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.4, 0.3)],
            description: "Re w < 1.05".into(),
        },
        u_domain: Domain {
            contains: Arc::new(|g: C64| {
                g.norm() > 0.0 && g.norm() <= 4.0 && g.arg().abs() <= PI / 2.0 - HANKEL_BETA - 0.1
            }),
            samples: vec![C64::new(1.0, 0.0), C64::new(0.5, -0.2)],
            description: "|γ| ≤ 4, |Arg γ| ≤ π/2 - β - 0.1".into(),
        },
        split_index: 1,
        hyp: DecayHypotheses {
            delta1,
            delta2: 0.0,
            c_floor: 1.0,
            b: 1.0,
            d: 2,
            k0: 1,
            n0: 0,
            delta_tilde: None,
            rho_w: None,
            l_hat: Some(2.0),
            uniform_b: true,
        },
        eval_decay: Arc::new(move |_w, gamma: C64| {
            0.85 * (alpha + (1.0 - alpha) * gamma.re.max(0.0))
        }),
        moment_decay: Arc::new(move |_| 0.85 * alpha),
        integer_limit: None,
        phi_tail_envelope: None,
        moments: MomentTable::in_memory(),
    })
}

/// Evaluates the reciprocal-Gamma transform (entire target; no special
/// handling needed anywhere).
pub fn recip_gamma_eval(w: C64, gamma: C64, alpha: f64, tol: f64) -> Result<C64> {
    let p = recip_gamma_problem(alpha, 1.0)?;
    Ok(p.evaluate_g(w, gamma, tol)?.value)
}

// ---------------------------------------------------------------------------
// Riemann zeta
// ---------------------------------------------------------------------------

/// True Laurent window of `e^{(1-α)z}/(1 - e^z)` at the origin:
/// `a_m = -Σ_{j=0}^{m+1} (1-α)^j/j! · B_{m+1-j}/(m+1-j)!`, `n0 = 1`,
/// radius `2π`.
pub fn zeta_laurent(alpha: f64, max_exponent: i32) -> LaurentSeries {
    let mut coeffs = Vec::with_capacity((max_exponent + 2) as usize);
    for m in -1..=max_exponent {
        let mut acc = 0.0;
        for j in 0..=(m + 1) {
            acc += (1.0 - alpha).powi(j) / factorial(j as u32)
                * bernoulli_over_factorial((m + 1 - j) as u32);
        }
        coeffs.push(C64::new(-acc, 0.0));
    }
    LaurentSeries::new(1, coeffs, 2.0 * PI).expect("zeta window")
}

/// Expansion coefficient `a_m = Σ_{m1=0}^{m} (1-α)^{m1}/m1! ·
/// B_{m-m1+1}/(m-m1+1)!` as displayed alongside the zeta example.
///
/// The Laurent window actually used by the transform (see [`zeta_laurent`])
/// differs from this display: the true coefficients carry an overall minus
/// sign and the additional `m1 = m+1` term `(1-α)^{m+1}/(m+1)!`.
pub fn zeta_coeff(m: u32, alpha: f64) -> f64 {
    let mut acc = 0.0;
    for m1 in 0..=m {
        acc += (1.0 - alpha).powi(m1 as i32) / factorial(m1)
            * bernoulli_over_factorial(m - m1 + 1);
    }
    acc
}

/// `g^{ζ,α}_γ(w) = (Γ(1-w)/2πi) ∫_{H⁻_ε} z^{w-1} e^{αz} e^{(1-α)γz}/(1-e^{γz}) dz`,
/// equal to `ζ(w)` at `γ = 1` for `w ≠ 1`.
pub fn zeta_problem(alpha: f64, epsilon: f64) -> Result<TransformProblem> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(MeroError::Config(format!("α must lie in (0,1), got {alpha}")));
    }
    let cosb = HANKEL_BETA.cos();
    let delta1 = 0.9 * alpha * cosb;
    let kernel = KernelSpec {
        eval: Arc::new(move |w: C64, z: C64| {
            cgamma(C64::new(1.0, 0.0) - w) / C64::new(0.0, 2.0 * PI)
                * ((w - 1.0) * z.ln()).exp()
                * (alpha * z).exp()
        }),
        k0: 1,
        delta1,
        c_w: Arc::new(move |w: C64| {
            let margin = alpha * cosb - delta1;
            cgamma(C64::new(1.0, 0.0) - w).norm() / (2.0 * PI)
                * (PI * w.im.abs()).exp()
                * ray_peak(w.re, margin).max(1.0)
                * 1.1
        }),
        inner_radius: Arc::new(|_| f64::INFINITY),
        poles_near: Arc::new(|_, _| Vec::new()),
    };
    let function = FunctionSpec {
        eval: Arc::new(move |x: C64| ((1.0 - alpha) * x).exp() / (1.0 - x.exp())),
        laurent: zeta_laurent(alpha, 80),
        delta2: 0.0,
        c_tilde: Arc::new(|_| 2.0),
        c_floor: 2.0,
        poles_near: Arc::new(|r| {
            let mut ps = Vec::new();
            let mut k = 1;
            while 2.0 * PI * k as f64 <= r {
                ps.push(C64::new(0.0, 2.0 * PI * k as f64));
                ps.push(C64::new(0.0, -2.0 * PI * k as f64));
                k += 1;
            }
            ps
        }),
    };
    Ok(TransformProblem {
        id: "riemann_zeta".into(),
        kernel,
        function,
        contours: hankel_family(epsilon, 0.4 * epsilon),
        w_domain: Domain {
            contains: Arc::new(|w: C64| {
                w.re > 0.05 && w.re < 4.0 && (w - C64::new(1.0, 0.0)).norm() > 1e-9
            }),
            samples: vec![C64::new(2.5, 0.0), C64::new(1.5, 0.5), C64::new(0.5, 0.0)],
            description: "0.05 < Re w < 4, w ≠ 1".into(),
        },
        u_domain: Domain {
            contains: Arc::new(|g: C64| g.norm() > 0.0 && g.norm() <= 2.0 && g.arg().abs() <= 0.05),
            samples: vec![C64::new(1.0, 0.0), C64::new(0.3, 0.01), C64::new(0.1, 0.0)],
            description: "|γ| ≤ 2, |Arg γ| ≤ 0.05".into(),
        },
        split_index: 1,
        hyp: DecayHypotheses {
            delta1,
            delta2: 0.0,
            c_floor: 2.0,
            b: 1.0,
            d: 2,
            k0: 1,
            n0: 1,
            delta_tilde: None,
            rho_w: None,
            l_hat: Some(2.0),
            uniform_b: true,
        },
        eval_decay: Arc::new(move |_w, gamma: C64| {
            0.85 * (alpha + (1.0 - alpha) * gamma.re.max(0.0))
        }),
        moment_decay: Arc::new(move |_| 0.85 * alpha),
        integer_limit: Some(Arc::new(|wr: f64| wr >= 2.0)),
        phi_tail_envelope: None,
        moments: MomentTable::in_memory(),
    })
}

/// Evaluates the zeta transform; `w = 1` (the pole of ζ) is rejected.
pub fn zeta_eval(w: C64, gamma: C64, alpha: f64, tol: f64) -> Result<C64> {
    if (w - C64::new(1.0, 0.0)).norm() < 1e-9 {
        return Err(MeroError::DomainViolation("ζ has a pole at w = 1".into()));
    }
    let p = zeta_problem(alpha, 1.0)?;
    Ok(p.evaluate_g(w, gamma, tol)?.value)
}

// ---------------------------------------------------------------------------
// Hurwitz zeta
// ---------------------------------------------------------------------------

/// `ζ^H(w, q) = g^H_{q-1}(w)` with kernel
/// `(Γ(1-w)/2πi) e^{(w-1) log z} / (e^{-z} - 1)` and `f = e^z`. The log
/// branch is continuous along the Hankel contour, starting from `Arg = -π`
/// on the lower ray (the principal branch).
pub fn hurwitz_problem(epsilon: f64) -> Result<TransformProblem> {
    let delta1 = 0.85 * HANKEL_BETA.cos();
    let delta_tilde = 0.6;
    let kernel = KernelSpec {
        eval: Arc::new(move |w: C64, z: C64| {
            cgamma(C64::new(1.0, 0.0) - w) / C64::new(0.0, 2.0 * PI) * ((w - 1.0) * z.ln()).exp()
                / ((-z).exp() - 1.0)
        }),
        k0: 1,
        delta1,
        c_w: Arc::new(move |w: C64| {
            // |z^{w-1}/(e^{-z}-1)| |z| e^{δ1|z|} along the deformed rays
            let margin = HANKEL_BETA.cos() - delta1;
            cgamma(C64::new(1.0, 0.0) - w).norm() / (2.0 * PI)
                * (PI * w.im.abs()).exp()
                * 2.2
                * ray_peak(w.re, margin).max(1.0)
                * 1.2
        }),
        inner_radius: Arc::new(|_| 2.0 * PI),
        poles_near: Arc::new(|_, r| {
            let mut ps = vec![C64::new(0.0, 0.0)];
            let mut k = 1;
            while 2.0 * PI * k as f64 <= r {
                ps.push(C64::new(0.0, 2.0 * PI * k as f64));
                ps.push(C64::new(0.0, -2.0 * PI * k as f64));
                k += 1;
            }
            ps
        }),
    };
    let function = FunctionSpec {
        eval: Arc::new(|x: C64| x.exp()),
        laurent: exp_laurent(1.0, 96),
        delta2: delta_tilde,
        c_tilde: Arc::new(|_| 1.0),
        c_floor: 1.0,
        poles_near: Arc::new(|_| Vec::new()),
    };
    Ok(TransformProblem {
        id: "hurwitz_zeta".into(),
        kernel,
        function,
        contours: hankel_family(epsilon, 0.4 * epsilon),
        w_domain: Domain {
            contains: Arc::new(|w: C64| {
                w.re > 1.05 && w.re < 5.0
            }),
            samples: vec![C64::new(2.0, 0.0), C64::new(3.0, 0.0), C64::new(2.5, 0.4)],
            description: "1.05 < Re w < 5".into(),
        },
        u_domain: Domain {
            contains: Arc::new(|g: C64| g.norm() > 0.0 && g.norm() <= 0.6),
            samples: vec![C64::new(0.5, 0.0), C64::new(-0.4, 0.0), C64::new(0.2, 0.1)],
            description: "0 < |γ| ≤ 0.6 (γ = q - 1)".into(),
        },
        split_index: 1,
        hyp: DecayHypotheses {
            delta1,
            delta2: delta_tilde,
            c_floor: 1.0,
            b: 1.0,
            d: 2,
            k0: 1,
            n0: 0,
            delta_tilde: Some(delta_tilde),
            rho_w: None,
            l_hat: Some(2.0),
            uniform_b: true,
        },
        eval_decay: Arc::new(move |_w, gamma: C64| 0.9 * (1.0 - gamma.norm()).max(0.1)),
        moment_decay: Arc::new(move |_| 0.9),
        integer_limit: Some(Arc::new(|wr: f64| wr >= 2.0)),
        // |φ̃_n(γz)| = |Σ_{k>n} (γz)^{k-n-1}/k!| ≤ e^{|γ||z|} ≤ e^{δ̃|z|}
        phi_tail_envelope: Some(Arc::new(|_n, _w| 1.0)),
        moments: MomentTable::in_memory(),
    })
}

/// Hurwitz zeta `ζ^H(w, q)` for `q > 0`; `q = 1` reduces to the plain
/// moment `ζ_0(w) = ζ(w)`.
pub fn hurwitz_eval(w: C64, q: f64, tol: f64) -> Result<C64> {
    if !(q > 0.0) {
        return Err(MeroError::DomainViolation(format!("Hurwitz q must be positive, got {q}")));
    }
    let p = hurwitz_problem(1.0)?;
    if (q - 1.0).abs() < 1e-12 {
        return Ok(p.moment_h(0, w, tol)?.0);
    }
    Ok(p.evaluate_g(w, C64::new(q - 1.0, 0.0), tol)?.value)
}

/// Moment `ζ_m(w) = ∫ K_H(w,z) z^m dz` of the Hurwitz expansion
/// `g^H_γ(w) = Σ ζ_m(w) γ^m / m!`.
pub fn hurwitz_moment(m: i32, w: C64, tol: f64) -> Result<C64> {
    let p = hurwitz_problem(1.0)?;
    Ok(p.moment_h(m, w, tol)?.0)
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric
// ---------------------------------------------------------------------------

/// Contour for the 2F1 transform: ray in at `-π/4`, quarter circle of radius
/// `ε` through the lower half plane, ray out at `-3π/4`.
///
/// In the Barnes variable `s = z²` this runs up the imaginary axis passing
/// the pole of `Γ(-s)` at `s = 0` on the left, which separates the `Γ(-s)`
/// poles from those of `Γ(s+a)Γ(s+b)`; the integrand is even in `z`, so the
/// out-ray at `-3π/4` carries the same integral as the one at `+π/4`.
pub fn gauss2f1_contour(epsilon: f64) -> Contour {
    Contour::new(vec![
        Segment::ray_inward(cis(-PI / 4.0) * epsilon, -PI / 4.0),
        Segment::arc(C64::new(0.0, 0.0), epsilon, -PI / 4.0, -3.0 * PI / 4.0),
        Segment::ray(cis(-3.0 * PI / 4.0) * epsilon, -3.0 * PI / 4.0),
    ])
    .with_clearance(0.2 * epsilon)
}

fn gauss2f1_f(a: f64, b: f64, c: f64, alpha: f64, z: C64) -> C64 {
    use crate::special::{ln_cos, ln_gamma};
    let s = z * z;
    // the log-sum form keeps the Γ-product finite where each factor alone
    // would over- or underflow
    let ln = ln_cos(alpha * s) + ln_gamma(-s) + ln_gamma(s + a) + ln_gamma(s + b)
        - ln_gamma(s + c);
    if ln.re > 700.0 {
        return C64::new(f64::INFINITY, 0.0);
    }
    if ln.re < -700.0 {
        return C64::new(0.0, 0.0);
    }
    ln.exp()
}

/// `(Γ(a)Γ(b)/Γ(c)) ₂F₁(a,b;c;w) = g^{2F1,α}_γ(w)/(πi)` at `γ = 1`, with
/// kernel `z e^{z² log(-w)}/cos(αz²)`.
pub fn gauss2f1_problem(a: f64, b: f64, c: f64, alpha: f64) -> Result<TransformProblem> {
    for (name, v) in [("a", a), ("b", b)] {
        if v <= 0.0 && (v - v.round()).abs() < 1e-12 {
            return Err(MeroError::DomainViolation(format!(
                "{name} = {v} is a nonpositive integer (Γ({name}) pole)"
            )));
        }
    }
    if !(alpha > 0.0 && alpha < PI) {
        return Err(MeroError::Config(format!("α must lie in (0, π), got {alpha}")));
    }
    let eps = 0.5;
    let contour: Arc<dyn Fn(C64) -> Contour + Send + Sync> =
        Arc::new(move |_w| gauss2f1_contour(eps));
    let family = ContourFamily {
        base: contour.clone(),
        hypothesis: contour.clone(),
        borel: Some(contour.clone()),
        moment: Some(contour),
    };
    let laurent = LaurentSeries::from_fn(
        move |z| gauss2f1_f(a, b, c, alpha, z),
        2,
        0.35,
        40,
        a.min(b).sqrt().min(1.0),
    )?;
    let kernel = KernelSpec {
        eval: Arc::new(move |w: C64, z: C64| {
            let s = z * z;
            z * (s * (-w).ln() - crate::special::ln_cos(alpha * s)).exp()
        }),
        k0: 0,
        delta1: 0.5,
        // |K| ≤ 2|z| e^{-(α - |Arg(-w)|)|z|²} on the rays; numeric sup of the
        // envelope ratio with margin
        c_w: Arc::new(move |w: C64| {
            let q = alpha - (-w).arg().abs();
            let sup = (0..400)
                .map(|i| {
                    let t = 0.02 * (i as f64 + 0.5);
                    2.0 * t * (-q * t * t + 0.5 * t).exp()
                })
                .fold(0.0_f64, f64::max);
            sup.max(2.0 * eps * (eps * eps * (-w).ln().norm()).exp()) * 1.3
        }),
        inner_radius: Arc::new(move |_w| (0.5 * PI / alpha).sqrt()),
        poles_near: Arc::new(move |_w, r| {
            // zeros of cos(αz²) on the real axis
            let mut ps = Vec::new();
            let mut k = 0;
            loop {
                let s = (k as f64 + 0.5) * PI / alpha;
                let t = s.sqrt();
                if t > r {
                    break;
                }
                ps.push(C64::new(t, 0.0));
                ps.push(C64::new(-t, 0.0));
                k += 1;
            }
            ps
        }),
    };
    let function = FunctionSpec {
        eval: Arc::new(move |x: C64| gauss2f1_f(a, b, c, alpha, x)),
        laurent,
        delta2: 0.0,
        // numeric sup of |f(γz)| |γz|² over the contour and U samples
        c_tilde: Arc::new(move |_g| 30.0 * (1.0 + cgamma(C64::new(a, 0.0)).norm() * cgamma(C64::new(b, 0.0)).norm())),
        c_floor: 30.0,
        poles_near: Arc::new(move |r| {
            let mut ps = Vec::new();
            let mut k = 1;
            while (k as f64).sqrt() <= r {
                ps.push(C64::new((k as f64).sqrt(), 0.0));
                ps.push(C64::new(-(k as f64).sqrt(), 0.0));
                k += 1;
            }
            let mut j = 0.0;
            while (a + j).sqrt() <= r || (b + j).sqrt() <= r {
                ps.push(C64::new(0.0, (a + j).sqrt()));
                ps.push(C64::new(0.0, -(a + j).sqrt()));
                ps.push(C64::new(0.0, (b + j).sqrt()));
                ps.push(C64::new(0.0, -(b + j).sqrt()));
                j += 1.0;
            }
            ps
        }),
    };
    Ok(TransformProblem {
        id: "gauss_2f1".into(),
        kernel,
        function,
        contours: family,
        w_domain: Domain {
            contains: Arc::new(move |w: C64| w.norm() > 0.0 && (-w).arg().abs() < alpha),
            samples: vec![C64::new(-0.3, 0.0), C64::new(-0.5, 0.2)],
            description: "|Arg(-w)| < α".into(),
        },
        u_domain: Domain {
            contains: Arc::new(|g: C64| g.norm() > 0.0 && g.norm() <= 1.2 && g.arg().abs() <= 0.2),
            samples: vec![C64::new(1.0, 0.0), C64::new(0.8, 0.05)],
            description: "0 < |γ| ≤ 1.2, |Arg γ| ≤ 0.2".into(),
        },
        split_index: 0,
        hyp: DecayHypotheses {
            delta1: 0.5,
            delta2: 0.0,
            c_floor: 30.0,
            b: 1.0,
            d: 3,
            k0: 0,
            n0: 2,
            delta_tilde: None,
            rho_w: Some(eps),
            l_hat: Some(PI / 2.0),
            uniform_b: false,
        },
        eval_decay: Arc::new(move |w: C64, gamma: C64| {
            let kernel_rate = (alpha - (-w).arg().abs()).max(0.0);
            let f_rate = (PI - alpha) * gamma.norm_sqr();
            0.4 * (kernel_rate + f_rate).min(4.0).max(0.2)
        }),
        moment_decay: Arc::new(move |w: C64| 0.5 * (alpha - (-w).arg().abs()).max(0.05).min(2.0)),
        integer_limit: None,
        phi_tail_envelope: None,
        moments: MomentTable::in_memory(),
    })
}

/// Evaluates the 2F1 transform `g^{2F1,α}_γ(w)`; at `γ = 1`,
/// `g/(πi) = (Γ(a)Γ(b)/Γ(c)) ₂F₁(a,b;c;w)`.
pub fn gauss2f1_eval(w: C64, gamma: C64, alpha: f64, a: f64, b: f64, c: f64, tol: f64) -> Result<C64> {
    let p = gauss2f1_problem(a, b, c, alpha)?;
    if !(p.w_domain.contains)(w) {
        return Err(MeroError::DomainViolation(format!(
            "|Arg(-w)| = {} must stay below α = {alpha}",
            (-w).arg().abs()
        )));
    }
    Ok(p.evaluate_g(w, gamma, tol)?.value)
}

// ---------------------------------------------------------------------------
// Airy
// ---------------------------------------------------------------------------

/// Expansion coefficient of `e^{z³/3 - αz}`:
/// `a_m = Σ_{l=0}^{⌊m/3⌋} (-1)^{m-l} α^{m-3l} / (l! (m-3l)! 3^l)`.
pub fn airy_coeff(m: u32, alpha: f64) -> f64 {
    let mut acc = 0.0;
    for l in 0..=(m / 3) {
        let sgn = if (m - l) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sgn * alpha.powi((m - 3 * l) as i32)
            / (factorial(l) * factorial(m - 3 * l) * 3.0_f64.powi(l as i32));
    }
    acc
}

fn airy_laurent(alpha: f64, max_exponent: i32) -> LaurentSeries {
    let coeffs: Vec<C64> = (0..=max_exponent)
        .map(|m| C64::new(airy_coeff(m as u32, alpha), 0.0))
        .collect();
    LaurentSeries::new(0, coeffs, f64::INFINITY).expect("airy window")
}

/// `g^{Ai,α}_γ(w) = ∫ e^{-zw} e^{αz} e^{(γz)³/3 - αγz} dz` over the two rays
/// `∞ e^{-iθ̃} → 0 → ∞ e^{iθ̃}`; at `γ = 1` this is `2πi Ai(w)`.
pub fn airy_problem(alpha: f64, theta_tilde: f64) -> Result<TransformProblem> {
    if !(theta_tilde >= PI / 6.0 - 1e-12 && theta_tilde <= PI / 3.0 + 1e-12) {
        return Err(MeroError::Config(format!(
            "Airy θ̃ must lie in [π/6, π/3], got {theta_tilde}"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0 / 3.0) {
        return Err(MeroError::Config(format!("Airy α must lie in (0, 1/3), got {alpha}")));
    }
    let tt = theta_tilde;
    let delta1 = 0.3;
    let contour: Arc<dyn Fn(C64) -> Contour + Send + Sync> = Arc::new(move |_w| {
        Contour::new(vec![
            Segment::ray_inward(C64::new(0.0, 0.0), -tt),
            Segment::ray(C64::new(0.0, 0.0), tt),
        ])
    });
    let family = ContourFamily {
        base: contour.clone(),
        hypothesis: contour.clone(),
        borel: Some(contour.clone()),
        moment: Some(contour),
    };
    let ray_margin = move |w: C64| {
        let mu = w - alpha;
        (mu * cis(tt)).re.min((mu * cis(-tt)).re)
    };
    let kernel = KernelSpec {
        eval: Arc::new(move |w: C64, z: C64| ((alpha - w) * z).exp()),
        k0: 0,
        delta1,
        c_w: Arc::new(|_| 1.0),
        inner_radius: Arc::new(|_| f64::INFINITY),
        poles_near: Arc::new(|_, _| Vec::new()),
    };
    let al = alpha;
    let function = FunctionSpec {
        eval: Arc::new(move |x: C64| (x * x * x / 3.0 - al * x).exp()),
        laurent: airy_laurent(alpha, 64),
        delta2: 0.0,
        c_tilde: Arc::new(|_| 1.0),
        c_floor: 1.0,
        poles_near: Arc::new(|_| Vec::new()),
    };
    // envelope constant for |φ̃_n(γz)| ≤ C^{(n)} e^{δ̃|z|}: sampled over the
    // contour at the largest admissible |γ| with margin
    let dtilde = 0.1;
    let lar = airy_laurent(alpha, 64);
    let phi_env: Arc<dyn Fn(i32, C64) -> f64 + Send + Sync> = Arc::new(move |n: i32, _w| {
        let mut sup: f64 = 0.0;
        for i in 0..200 {
            let t = 0.05 * 1.04_f64.powi(i);
            for sgn in [1.0, -1.0] {
                let z = cis(sgn * tt) * t;
                let gz = z * 1.1; // |γ| ≤ 1.1 extreme of U
                let phi_tail = if gz.norm() < 0.7 {
                    let mut acc = C64::new(0.0, 0.0);
                    for k in (n + 1)..=lar.max_exponent() {
                        acc += lar.coeff(k) * gz.powi(k - n - 1);
                    }
                    acc
                } else {
                    let f = (gz * gz * gz / 3.0 - al * gz).exp();
                    let mut head = C64::new(0.0, 0.0);
                    for k in 0..=n {
                        head += lar.coeff(k) * gz.powi(k);
                    }
                    (f - head) / gz.powi(n + 1)
                };
                sup = sup.max(phi_tail.norm() * (-dtilde * t).exp());
            }
        }
        1.3 * sup
    });
    Ok(TransformProblem {
        id: "airy".into(),
        kernel,
        function,
        contours: family,
        w_domain: Domain {
            contains: Arc::new(move |w: C64| ray_margin(w) > delta1),
            samples: vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(1.5, 0.3)],
            description: "Re((w-α) e^{±iθ̃}) > δ1".into(),
        },
        u_domain: Domain {
            contains: Arc::new(move |g: C64| {
                g.norm() > 0.0 && g.norm() <= 1.1 && (3.0 * (tt + g.arg())).cos() <= 1e-9 && (3.0 * (tt - g.arg())).cos() <= 1e-9
            }),
            samples: vec![C64::new(1.0, 0.0), C64::new(0.5, 0.0)],
            description: "|γ| ≤ 1.1, cubic decay preserved on both rays".into(),
        },
        split_index: 1,
        hyp: DecayHypotheses {
            delta1,
            delta2: 0.0,
            c_floor: 1.0,
            b: 1.0,
            d: 2,
            k0: 0,
            n0: 0,
            delta_tilde: Some(dtilde),
            rho_w: None,
            l_hat: Some(2.0),
            uniform_b: true,
        },
        eval_decay: Arc::new(move |w: C64, _g| 0.8 * ray_margin(w).max(0.05)),
        moment_decay: Arc::new(move |w: C64| 0.8 * ray_margin(w).max(0.05)),
        integer_limit: None,
        phi_tail_envelope: Some(phi_env),
        moments: MomentTable::in_memory(),
    })
}

/// Evaluates the Airy transform; at `γ = 1`, `g/(2πi) = Ai(w)`.
pub fn airy_eval(w: C64, gamma: C64, alpha: f64, theta_tilde: f64, tol: f64) -> Result<C64> {
    let p = airy_problem(alpha, theta_tilde)?;
    Ok(p.evaluate_g(w, gamma, tol)?.value)
}
