//! Faddeev's quantum dilogarithm as a meromorphic transform:
//! `S_γ(w) = exp(g_γ(w)/4)` with
//! `g_γ(w) = ∫_{e^{iθ̃}(ℝ+iε)} e^{wz} / (sinh(πz) z sinh(γz)) dz`,
//! its truncated expansion `P^{2n}_γ(w)`, the explicit constant chain
//! (`c^F`, minimizing radii `r_{2n}`, `c'_{2n}`, the three `C̃^F_{2n}` tiers),
//! remainder certificates, and the closed-form Borel sum `B_w(ξ)` with its
//! pole lattice.

use crate::bounds::{ErrorCertificate, TheoremId};
use crate::contour::{Contour, ContourFamily, QuadratureResult, Segment};
use crate::error::{MeroError, Result};
use crate::special::recip_sinh_laurent;
use crate::transform::{
    DecayHypotheses, Domain, FunctionSpec, KernelSpec, MomentTable, TransformProblem,
};
use crate::{cis, C64};
use std::f64::consts::PI;
use std::sync::Arc;

/// `c^F = √2 / (√π (1 - e^{-2}))`, the floor of `c̃^F_γ`.
pub fn c_f() -> f64 {
    2.0_f64.sqrt() / (PI.sqrt() * (1.0 - (-2.0_f64).exp()))
}

/// Offset of the evaluation contour `e^{iθ̃}(ℝ + iε)` from the kernel pole
/// at the origin.
pub const BASE_EPSILON: f64 = 1e-2;
/// Offset used for moment integrals; any value in (0, 1) gives the same
/// moments by contour deformation, and a larger offset conditions the
/// near-origin spike of `h_{-1}` much better.
pub const MOMENT_EPSILON: f64 = 0.45;

/// Strip/sector membership for the rotated-line setup: `w` lies in the strip
/// `-π cos θ̃ + δ < Re(w e^{iθ̃}) < π cos θ̃ - δ` and `γ` in the half plane
/// `cos(θ̃ - θ_γ) > 0`.
#[derive(Debug, Clone, Copy)]
pub struct FaddeevDomain {
    pub theta_tilde: f64,
    pub delta: f64,
}

impl FaddeevDomain {
    pub fn new(theta_tilde: f64, delta: f64) -> Result<Self> {
        if theta_tilde.abs() >= PI / 2.0 {
            return Err(MeroError::DomainViolation(format!(
                "θ̃ must lie in (-π/2, π/2), got {theta_tilde}"
            )));
        }
        if !(delta > 0.0 && delta < PI * theta_tilde.cos()) {
            return Err(MeroError::DomainViolation(format!(
                "δ must lie in (0, π cos θ̃), got {delta}"
            )));
        }
        Ok(FaddeevDomain { theta_tilde, delta })
    }

    /// Signed strip coordinate `Re(w e^{iθ̃}) = Re w cos θ̃ - Im w sin θ̃`.
    pub fn strip_coord(&self, w: C64) -> f64 {
        (w * cis(self.theta_tilde)).re
    }

    pub fn w_contains(&self, w: C64) -> bool {
        let x = self.strip_coord(w);
        let lim = PI * self.theta_tilde.cos() - self.delta;
        x > -lim && x < lim
    }

    pub fn u_contains(&self, gamma: C64) -> bool {
        gamma.norm() > 0.0 && (self.theta_tilde - gamma.arg()).cos() > 0.0
    }
}

/// The Faddeev transform problem at rotation angle `θ̃`.
pub struct FaddeevProblem {
    pub problem: TransformProblem,
    pub theta_tilde: f64,
}

fn rotated_offset_line(theta_tilde: f64, eps: f64, clearance: f64) -> Contour {
    let anchor = cis(theta_tilde) * C64::new(0.0, eps);
    Contour::new(vec![
        Segment::ray_inward(anchor, theta_tilde + PI),
        Segment::ray(anchor, theta_tilde),
    ])
    .with_clearance(clearance)
}

/// Builds the transform problem for `g^F_γ(w)` over `e^{iθ̃}(ℝ + iε)`.
///
/// Declared decay constants follow the kernel/function envelopes on the
/// rotated line: `δ1 = α δ_m`, `δ2 = 0`,
/// `c_w = √2/(√π (1-e^{-2π cos θ̃})) / ((1-α) δ_m)` and
/// `c̃_γ = c^F / cos(θ̃ - θ_γ)`, here with `α = 1/2` and strip margin
/// `δ_m = 1`.
pub fn faddeev_problem(theta_tilde: f64) -> Result<FaddeevProblem> {
    let delta_m = 1.0;
    let alpha = 0.5;
    let dom = FaddeevDomain::new(theta_tilde, delta_m)?;
    let tt = theta_tilde;

    let kernel = KernelSpec {
        eval: Arc::new(|w: C64, z: C64| (w * z).exp() / ((PI * z).sinh() * z)),
        k0: 2,
        delta1: alpha * delta_m,
        c_w: Arc::new(move |_w| {
            2.0_f64.sqrt()
                / (PI.sqrt() * (1.0 - (-2.0 * PI * tt.cos()).exp()))
                / ((1.0 - alpha) * delta_m)
        }),
        inner_radius: Arc::new(|_| 1.0),
        poles_near: Arc::new(|_w, r| {
            let mut ps = vec![C64::new(0.0, 0.0)];
            let mut k = 1;
            while k as f64 <= r {
                ps.push(C64::new(0.0, k as f64));
                ps.push(C64::new(0.0, -(k as f64)));
                k += 1;
            }
            ps
        }),
    };

    let cf = c_f();
    let function = FunctionSpec {
        eval: Arc::new(|x: C64| 1.0 / x.sinh()),
        laurent: recip_sinh_laurent(48),
        delta2: 0.0,
        c_tilde: Arc::new(move |gamma: C64| cf / (tt - gamma.arg()).cos()),
        c_floor: cf,
        poles_near: Arc::new(|r| {
            let mut ps = Vec::new();
            let mut k = 1;
            while PI * k as f64 <= r {
                ps.push(C64::new(0.0, PI * k as f64));
                ps.push(C64::new(0.0, -PI * k as f64));
                k += 1;
            }
            ps
        }),
    };

    let base: Arc<dyn Fn(C64) -> Contour + Send + Sync> =
        Arc::new(move |_w| rotated_offset_line(tt, BASE_EPSILON, BASE_EPSILON / 2.0));
    let hypothesis: Arc<dyn Fn(C64) -> Contour + Send + Sync> = Arc::new(move |_w| {
        Contour::new(vec![
            Segment::ray_inward(C64::new(0.0, 0.0), tt + PI),
            Segment::ray(C64::new(0.0, 0.0), tt),
        ])
    });
    let moment: Arc<dyn Fn(C64) -> Contour + Send + Sync> =
        Arc::new(move |_w| rotated_offset_line(tt, MOMENT_EPSILON, 0.2));

    let w_samples = vec![C64::new(0.5, 0.0), C64::new(1.0, 0.2), C64::new(-1.5, 0.0)]
        .into_iter()
        .filter(|w| dom.w_contains(*w))
        .collect();
    let u_samples: Vec<C64> = [C64::new(0.2, 0.0), C64::new(0.1, 0.03), C64::new(0.5, -0.1)]
        .into_iter()
        .filter(|g| dom.u_contains(*g))
        .collect();

    let eval_dom = dom;
    let problem = TransformProblem {
        id: "faddeev".into(),
        kernel,
        function,
        contours: ContourFamily { base, hypothesis, borel: Some(moment.clone()), moment: Some(moment) },
        w_domain: Domain {
            contains: Arc::new(move |w| eval_dom.w_contains(w)),
            samples: w_samples,
            description: format!("|Re(w e^(i {tt}))| < π cos θ̃ - {delta_m}"),
        },
        u_domain: Domain {
            contains: Arc::new(move |g| eval_dom.u_contains(g)),
            samples: u_samples,
            description: "cos(θ̃ - θ_γ) > 0".into(),
        },
        // φ^F subtracts only the 1/(γz) term, so the Borel split sits at m=1
        // rather than at k0 = 2.
        split_index: 1,
        hyp: DecayHypotheses {
            delta1: alpha * delta_m,
            delta2: 0.0,
            c_floor: cf,
            b: 1.0,
            d: 2,
            k0: 2,
            n0: 1,
            delta_tilde: None,
            rho_w: Some(BASE_EPSILON),
            l_hat: Some(2.0),
            uniform_b: true,
        },
        eval_decay: Arc::new(move |w: C64, gamma: C64| {
            let strip = PI * tt.cos() - (w * cis(tt)).re.abs();
            0.85 * strip + 0.8 * gamma.norm() * (tt - gamma.arg()).cos()
        }),
        moment_decay: Arc::new(move |w: C64| {
            0.85 * (PI * tt.cos() - (w * cis(tt)).re.abs())
        }),
        integer_limit: None,
        phi_tail_envelope: None,
        moments: MomentTable::in_memory(),
    };
    Ok(FaddeevProblem { problem, theta_tilde })
}

impl FaddeevProblem {
    /// `g^F_γ(w)` over `e^{iθ̃}(ℝ + iε)`.
    pub fn eval_g(&self, w: C64, gamma: C64, tol: f64) -> Result<QuadratureResult> {
        self.problem.evaluate_g(w, gamma, tol)
    }

    /// `Log S_γ(w)`, meaning the integral divided by 4 (no re-branching).
    pub fn log_s(&self, w: C64, gamma: C64, tol: f64) -> Result<(C64, f64)> {
        let g = self.eval_g(w, gamma, tol)?;
        Ok((g.value / 4.0, g.error_estimate / 4.0))
    }

    /// `S_γ(w) = exp(g_γ(w)/4)`.
    pub fn eval_s(&self, w: C64, gamma: C64, tol: f64) -> Result<C64> {
        Ok(self.log_s(w, gamma, tol)?.0.exp())
    }

    /// Truncated expansion
    /// `P^{2n}_γ(w) = (1/4) Σ_{m=0}^{n} [2(1-2^{2m-1}) B_{2m}/(2m)!] γ^{2m-1} h_{2m-1}(w)`,
    /// with the moments pinned by quadrature.
    pub fn p2n(&self, w: C64, gamma: C64, n: u32, tol: f64) -> Result<(C64, f64)> {
        let (t, err) = self.problem.truncated_series(2 * n as i32, w, gamma, tol)?;
        Ok((t / 4.0, err / 4.0))
    }

    /// Largest admissible strip margin for this `w`.
    pub fn strip_margin(&self, w: C64) -> Result<f64> {
        let x = (w * cis(self.theta_tilde)).re.abs();
        let margin = PI * self.theta_tilde.cos() - x;
        if margin <= 0.0 {
            return Err(MeroError::DomainViolation(format!(
                "w = {w} outside the θ̃ = {} strip",
                self.theta_tilde
            )));
        }
        Ok(margin)
    }

    /// Certifies `|Log S_γ(w) - P^{2n}_γ(w)| ≤ C̃^F_{2n} |γ|^{2n} δ^{-2n} (2n)!`
    /// for each of the three constant tiers, at the maximal strip margin δ.
    ///
    /// `n` is the half-order: the certificate order is `2n`.
    pub fn verify_fe(&self, w: C64, gamma: C64, n: u32, tol: f64) -> Result<[ErrorCertificate; 3]> {
        if n == 0 {
            return Err(MeroError::DomainViolation("FE certificates need n ≥ 1".into()));
        }
        let udom = FaddeevDomain { theta_tilde: self.theta_tilde, delta: f64::MIN_POSITIVE };
        if !udom.u_contains(gamma) {
            return Err(MeroError::DomainViolation(format!("γ = {gamma} outside U^F")));
        }
        let delta = self.strip_margin(w)?;
        let order = 2 * n;
        self.check_kernel_envelope(w, n, delta)?;
        let (log_s, ls_err) = self.log_s(w, gamma, tol)?;
        let (p, p_err) = self.p2n(w, gamma, n, tol)?;
        let measured = (log_s - p).norm();
        let meas_err = ls_err + p_err;
        let tiers = ctilde_f(order, self.theta_tilde, gamma.arg())?;
        let fact: f64 = crate::series::factorial(order);
        let scale = gamma.norm().powi(order as i32) * delta.powi(-(order as i32)) * fact;
        let mk = |constant: f64, tier: &str| ErrorCertificate {
            theorem: TheoremId::FE,
            n: order as i32,
            w,
            gamma,
            constant,
            bound: constant * scale,
            measured,
            slack: meas_err / (constant * scale),
            pass: measured <= constant * scale * (1.0 + meas_err / (constant * scale).max(1e-300)),
            detail: format!("tier = {tier}, δ = {delta:.6}, θ̃ = {}", self.theta_tilde),
        };
        Ok([
            mk(tiers.exact, "exact"),
            mk(tiers.envelope, "envelope"),
            mk(tiers.weakest, "weakest"),
        ])
    }

    /// Spot-checks the kernel envelope used by the FE chain at the
    /// order-optimal amplitude split `α* = 1 - 1/(2n)`.
    fn check_kernel_envelope(&self, w: C64, n: u32, delta: f64) -> Result<()> {
        let alpha = 1.0 - 1.0 / (2.0 * n as f64);
        let tt = self.theta_tilde;
        let cw = 2.0_f64.sqrt() / (PI.sqrt() * (1.0 - (-2.0 * PI * tt.cos()).exp()))
            / ((1.0 - alpha) * delta);
        for i in 0..64 {
            let t = 0.02 * 1.25_f64.powi(i) * if i % 2 == 0 { 1.0 } else { -1.0 };
            let z = cis(tt) * t;
            let lhs = ((w * z).exp() / ((PI * z).sinh() * z)).norm();
            let rhs = cw * (-alpha * delta * t.abs()).exp() / (t * t);
            if lhs > rhs * (1.0 + 1e-9) {
                return Err(MeroError::HypothesisFailure(format!(
                    "Faddeev kernel envelope fails at t = {t}: {lhs:.3e} > {rhs:.3e}"
                )));
            }
        }
        Ok(())
    }
}

/// Closed-form moment `h_1(w) = -2i/(1 + e^{-iw})`.
pub fn h1_closed(w: C64) -> C64 {
    C64::new(0.0, -2.0) / (1.0 + (-C64::i() * w).exp())
}

/// Closed-form moment `h_{-1}(w) = -2i Li₂(-e^{iw})`.
pub fn hm1_closed(w: C64) -> C64 {
    C64::new(0.0, -2.0) * crate::special::li2(-(C64::i() * w).exp())
}

/// Root in `(0, π)` of `c^F (ν+1) sin²r + ν r sin r + r² cos r = 0`, the
/// stationarity condition of `b_ν(r) = r^{-ν}(c^F/r + 1/sin r)`; `ν` is the
/// series order (`2n` for the table entries). Bracketed bisection plus a
/// Newton polish.
pub fn rn_root(order: u32) -> Result<f64> {
    if order < 1 {
        return Err(MeroError::Config("root order must be ≥ 1".into()));
    }
    let nu = order as f64;
    let cf = c_f();
    let g = |r: f64| cf * (nu + 1.0) * r.sin().powi(2) + nu * r * r.sin() + r * r * r.cos();
    let dg = |r: f64| {
        cf * (nu + 1.0) * 2.0 * r.sin() * r.cos() + nu * (r.sin() + r * r.cos()) + 2.0 * r * r.cos()
            - r * r * r.sin()
    };
    // scan for the sign change from + to - (b_ν' changes sign once there)
    let n_scan = 4096;
    let (mut lo, mut hi) = (f64::NAN, f64::NAN);
    let mut prev = g(0.05);
    for i in 1..=n_scan {
        let r = 0.05 + (PI - 1e-9 - 0.05) * i as f64 / n_scan as f64;
        let cur = g(r);
        if prev > 0.0 && cur <= 0.0 {
            lo = 0.05 + (PI - 1e-9 - 0.05) * (i - 1) as f64 / n_scan as f64;
            hi = r;
            break;
        }
        prev = cur;
    }
    if !lo.is_finite() {
        return Err(MeroError::NonConvergence { estimate: f64::NAN, tol: 1e-13, evaluations: n_scan as u64 });
    }
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut r = 0.5 * (lo + hi);
    for _ in 0..6 {
        let step = g(r) / dg(r);
        if !step.is_finite() {
            break;
        }
        r -= step;
    }
    Ok(r)
}

/// `c'_ν = inf_{r ∈ (0, π)} r^{-ν} (c^F/r + 1/sin r)`, evaluated at the
/// stationary radius.
pub fn cprime_f(order: u32) -> Result<f64> {
    let r = rn_root(order)?;
    let nu = order as i32;
    Ok(r.powi(-nu) * (c_f() / r + 1.0 / r.sin()))
}

/// The three displayed tiers of `C̃^F_{2n}`, ordered `exact ≤ envelope ≤ weakest`.
#[derive(Debug, Clone, Copy)]
pub struct CtildeTiers {
    /// `(4√2/(π√(4n-3))) (1-1/(2n))^{-(2n-1)} c'_{2n} / ((1-e^{-2π cos θ̃}) cos(θ̃-θ_γ))`
    pub exact: f64,
    /// Same with `c'_{2n}` replaced by `(√2 + 4c^F/(3π)) (2/3)^{2n} (2/π)^{2n}`.
    pub envelope: f64,
    /// `3 (2/π)^{2n} / ((1-e^{-2π cos θ̃}) cos(θ̃-θ_γ))`.
    pub weakest: f64,
}

/// Computes the `C̃^F` tier chain for the given series order `2n`.
pub fn ctilde_f(order: u32, theta_tilde: f64, theta_gamma: f64) -> Result<CtildeTiers> {
    if order < 2 || order % 2 != 0 {
        return Err(MeroError::Config(format!("order must be even and ≥ 2, got {order}")));
    }
    let ang = (theta_tilde - theta_gamma).cos();
    if ang <= 1e-14 {
        return Err(MeroError::Inadmissible { cos_value: ang, threshold: 0.0 });
    }
    let n = order as f64 / 2.0;
    let denom = (1.0 - (-2.0 * PI * theta_tilde.cos()).exp()) * ang;
    let front = 4.0 * 2.0_f64.sqrt() / (PI * (4.0 * n - 3.0).sqrt());
    let amp = (1.0 - 1.0 / (2.0 * n)).powi(-(order as i32 - 1));
    let exact = front * amp * cprime_f(order)? / denom;
    let cp_env = (2.0_f64.sqrt() + 4.0 * c_f() / (3.0 * PI))
        * (2.0 / 3.0_f64).powi(order as i32)
        * (2.0 / PI).powi(order as i32);
    let envelope = front * amp * cp_env / denom;
    let weakest = 3.0 * (2.0 / PI).powi(order as i32) / denom;
    if !(exact <= envelope * (1.0 + 1e-12) && envelope <= weakest * (1.0 + 1e-12)) {
        return Err(MeroError::HypothesisFailure(format!(
            "C̃ tier ordering violated at order {order}: {exact} / {envelope} / {weakest}"
        )));
    }
    Ok(CtildeTiers { exact, envelope, weakest })
}

/// Closed-form Borel sum
/// `B_w(ξ) = (2/(iπ²)) Σ_{n≥1} ((-1)^n/n²) [1/(1+e^{-i(w+iξ/(πn))}) + 1/(1+e^{-i(w-iξ/(πn))})]`.
///
/// The bracket tends to `2j(w)` with `j(v) = 1/(1+e^{-iv})`; its constant and
/// quadratic parts in `ξ/(πn)` are summed in closed form, leaving a residual
/// series whose terms decay like `n^{-6}`, summed in adjacent pairs until the
/// pair contribution falls below the tolerance.
pub fn bw(w: C64, xi: C64, tol: f64) -> Result<C64> {
    let k = ((w.re - PI) / (2.0 * PI)).round();
    if (w - C64::new(PI + 2.0 * PI * k, 0.0)).norm() < 1e-12 {
        return Err(MeroError::DomainViolation("w ∈ π + 2πℤ".into()));
    }
    for p in bw_poles(w, xi.norm() + 1.0) {
        if (xi - p).norm() < 1e-8 {
            return Err(MeroError::PoleTooClose { at: xi, magnitude: f64::INFINITY });
        }
    }
    let u = e_neg_iw(w);
    let j = 1.0 / (1.0 + u);
    let jpp = u * (1.0 - u) / ((1.0 + u) * (1.0 + u) * (1.0 + u));
    let delta = |n: f64| C64::i() * xi / (PI * n); // argument shift at index n
    // Σ(-1)^n n^{-2} = -π²/12 and Σ(-1)^n n^{-4} = -7π⁴/720
    let d1 = C64::i() * xi / PI;
    let head = 2.0 * j * (-PI * PI / 12.0) + jpp * d1 * d1 * (-7.0 * PI.powi(4) / 720.0);
    let residual = |n: f64| -> C64 {
        let sgn = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        let d = delta(n);
        let b1 = 1.0 / (1.0 + (-C64::i() * (w + d)).exp());
        let b2 = 1.0 / (1.0 + (-C64::i() * (w - d)).exp());
        (b1 + b2 - 2.0 * j - jpp * d * d) * (sgn / (n * n))
    };
    let mut acc = crate::contour::KahanSum::default();
    let mut n = 1u64;
    let mut quiet = 0u32;
    while n < 4_000_000 {
        let pair = residual(n as f64) + residual((n + 1) as f64);
        acc.add(pair);
        n += 2;
        if pair.norm() < tol / 10.0 {
            quiet += 1;
            if quiet >= 3 && n > 64 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok((head + acc.value()) * (2.0 / (C64::i() * PI * PI)))
}

fn e_neg_iw(w: C64) -> C64 {
    (-C64::i() * w).exp()
}

/// Pole set `P_{B_w} = ± i π ℤ₊ (π - w + 2πℤ)` restricted to `|p| ≤ radius`,
/// sorted by modulus.
pub fn bw_poles(w: C64, radius: f64) -> Vec<C64> {
    // closest lattice offset |π - w + 2πk| over k, which scales the reach in n
    let center = (w.re - PI) / (2.0 * PI);
    let k0 = center.round() as i64;
    let min_base = (-2..=2)
        .map(|dk| (C64::new(PI + 2.0 * PI * (k0 + dk) as f64, 0.0) - w).norm())
        .fold(f64::INFINITY, f64::min)
        .max(1e-12);
    let n_max = (radius / (PI * min_base)).ceil() as u32;
    let mut out: Vec<C64> = Vec::new();
    for n in 1..=n_max.min(100_000) {
        let scale = PI * n as f64;
        let r_k = radius / scale / (2.0 * PI) + 1.0;
        let k_lo = (center - r_k).floor() as i64;
        let k_hi = (center + r_k).ceil() as i64;
        for k in k_lo..=k_hi {
            let base = C64::new(PI + 2.0 * PI * k as f64, 0.0) - w;
            let p = C64::i() * scale * base;
            if p.norm() <= radius && p.norm() > 0.0 {
                out.push(p);
                out.push(-p);
            }
        }
    }
    out.sort_by(|a, b| {
        a.norm()
            .partial_cmp(&b.norm())
            .unwrap()
            .then(a.re.partial_cmp(&b.re).unwrap())
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    out.dedup_by(|a, b| (*a - *b).norm() < 1e-12);
    out
}

/// `L_θ^{-1}(φ^F_z)(ξ) = (2z/π²) Σ_{n≥1} ((-1)^n/n²) cos(zξ/(πn))`, the
/// per-`z` Borel transform of `1/sinh(γz) - 1/(γz)` fed to the integral
/// representation of `B_w`.
///
/// The first two Taylor orders of `cos(u/n)` are summed in closed form
/// (`Σ(-1)^n n^{-2} = -π²/12`, `Σ(-1)^n n^{-4} = -7π⁴/720`), leaving a
/// residual whose terms decay like `n^{-6}`.
pub fn inv_laplace_phi(z: C64, xi: C64, tol: f64) -> C64 {
    let u = z * xi / PI;
    let head = C64::new(-PI * PI / 12.0, 0.0)
        + u * u * (7.0 * PI.powi(4) / 1440.0);
    let residual = |n: f64| -> C64 {
        let sgn = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        let un = u / n;
        ((un).cos() - 1.0 + un * un * 0.5) * (sgn / (n * n))
    };
    let mut acc = crate::contour::KahanSum::default();
    let mut n = 1u64;
    let mut quiet = 0u32;
    while n < 4_000_000 {
        let pair = residual(n as f64) + residual((n + 1) as f64);
        acc.add(pair);
        n += 2;
        if pair.norm() < tol / 10.0 {
            quiet += 1;
            if quiet >= 3 && n > 16 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (head + acc.value()) * z * (2.0 / (PI * PI))
}

/// The closed-form Borel sum packaged for the Stokes/Laplace layer: the
/// evaluation closure, the pole lattice, and a growth envelope valid on rays
/// that keep the design clearance from the poles.
pub fn borel_function(w: C64) -> crate::borel::BorelFunction {
    let eval_tol = 1e-12;
    crate::borel::BorelFunction {
        w,
        eval: Arc::new(move |xi| {
            bw(w, xi, eval_tol).unwrap_or(C64::new(f64::INFINITY, 0.0))
        }),
        poles_within: Arc::new(move |r| bw_poles(w, r)),
        growth: crate::borel::GrowthBound::simple(0.0, 4.0),
        representation: "closed-form",
    }
}

/// Golden-data table of the minimizing radii `r_{2n}` (orders 2..10).
pub const RN_TABLE: [(u32, f64); 5] = [
    (2, 2.42067585291066),
    (4, 2.64172230058665),
    (6, 2.75972744591817),
    (8, 2.83308766213237),
    (10, 2.88302232511053),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::minimize_golden;

    #[test]
    fn rn_root_reproduces_table() {
        // the reference radii were tabulated with c^F rounded to nine
        // digits, which shifts the roots by a few times 1e-11
        for &(order, expect) in RN_TABLE.iter() {
            let got = rn_root(order).unwrap();
            assert!((got - expect).abs() < 1e-10, "order {order}: {got} vs {expect}");
        }
    }

    #[test]
    fn rn_roots_lie_in_bracket() {
        for order in [2u32, 4, 6, 8, 10, 20] {
            let r = rn_root(order).unwrap();
            assert!(r > 3.0 * PI / 4.0 && r < PI, "order {order}: {r}");
        }
    }

    #[test]
    fn cprime_respects_envelope() {
        // c'_{2n} ≤ (4c^F/(3π) + √2)(2/3)^{2n}(2/π)^{2n} for n = 1..5
        for n in 1..=5u32 {
            let order = 2 * n;
            let cp = cprime_f(order).unwrap();
            let env = (4.0 * c_f() / (3.0 * PI) + 2.0_f64.sqrt())
                * (2.0 / 3.0_f64).powi(order as i32)
                * (2.0 / PI).powi(order as i32);
            assert!(cp <= env, "order {order}: {cp} > {env}");
        }
    }

    #[test]
    fn cprime_matches_golden_section_minimum() {
        for order in [2u32, 6] {
            let nu = order as i32;
            let obj = |r: f64| r.powi(-nu) * (c_f() / r + 1.0 / r.sin());
            let (r_min, v_min) = minimize_golden(&obj, 1e-6, PI - 1e-9, 1e-12, 64);
            assert!((v_min - cprime_f(order).unwrap()).abs() < 1e-10 * v_min);
            assert!((r_min - rn_root(order).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn ctilde_tier_ordering() {
        for order in [2u32, 4, 6, 8] {
            let t = ctilde_f(order, 0.0, 0.0).unwrap();
            assert!(t.exact <= t.envelope && t.envelope <= t.weakest);
        }
        let t = ctilde_f(4, 0.0, 0.0).unwrap();
        let expect_weakest = 3.0 * (2.0 / PI).powi(4) / (1.0 - (-2.0 * PI).exp());
        assert!((t.weakest - expect_weakest).abs() < 1e-14);
    }

    #[test]
    fn ctilde_blows_up_at_sector_boundary() {
        assert!(ctilde_f(4, 0.0, PI / 2.0).is_err());
        let near = ctilde_f(4, 0.0, PI / 2.0 - 1e-6).unwrap();
        assert!(near.exact > 1e4);
    }

    #[test]
    fn bw_at_zero_matches_first_plus_coefficient() {
        // B_w(0) = a_1 h_1(w) = (-1/6)(-2i/(1+e^{-iw}))
        for &wre in &[0.5, 1.0, 2.0] {
            let w = C64::new(wre, 0.0);
            let got = bw(w, C64::new(0.0, 0.0), 1e-10).unwrap();
            let expect = C64::new(-1.0 / 6.0, 0.0) * h1_closed(w);
            assert!((got - expect).norm() < 1e-9, "w = {w}: {got} vs {expect}");
        }
    }

    #[test]
    fn bw_pole_lattice_nearest() {
        let w = C64::new(1.0, 0.0);
        let poles = bw_poles(w, 10.0);
        assert!(!poles.is_empty());
        let nearest = poles[0].norm();
        assert!((nearest - PI * (PI - 1.0)).abs() < 1e-12, "nearest = {nearest}");
        // poles are symmetric and on the imaginary axis for real w
        for p in &poles {
            assert!(p.re.abs() < 1e-12);
        }
    }

    #[test]
    fn bw_rejects_near_pole_xi() {
        let w = C64::new(1.0, 0.0);
        let p = bw_poles(w, 10.0)[0];
        assert!(bw(w, p, 1e-8).is_err());
    }

    #[test]
    fn moments_match_closed_forms() {
        let f = faddeev_problem(0.0).unwrap();
        for &wre in &[0.5, 1.0] {
            let w = C64::new(wre, 0.0);
            let (h1, _) = f.problem.moment_h(1, w, 1e-11).unwrap();
            assert!((h1 - h1_closed(w)).norm() < 1e-9, "h1({w}) = {h1}");
            let (hm1, _) = f.problem.moment_h(-1, w, 1e-11).unwrap();
            assert!((hm1 - hm1_closed(w)).norm() < 1e-8, "h-1({w}) = {hm1}");
        }
    }

    #[test]
    fn moment_epsilon_independent() {
        // deforming the moment contour within the pole-free band keeps h_1
        let w = C64::new(1.0, 0.0);
        let f = faddeev_problem(0.0).unwrap();
        let (h_a, _) = f.problem.moment_h(1, w, 1e-11).unwrap();
        let contour = rotated_offset_line(0.0, 0.7, 0.2);
        let r = crate::contour::integrate(
            &contour,
            |z| (w * z).exp() / (PI * z).sinh(),
            1e-11,
            Some(crate::contour::TailDecay { rate: 2.0 }),
        )
        .unwrap();
        assert!((h_a - r.value).norm() < 1e-9);
    }

    #[test]
    fn eval_theta_invariant() {
        let w = C64::new(1.0, 0.0);
        let gamma = C64::new(0.2, 0.0);
        let a = faddeev_problem(0.0).unwrap().eval_g(w, gamma, 1e-9).unwrap();
        let b = faddeev_problem(0.3).unwrap().eval_g(w, gamma, 1e-9).unwrap();
        assert!(
            (a.value - b.value).norm() < 1e-8,
            "θ̃-dependence: {} vs {}",
            a.value,
            b.value
        );
    }

    #[test]
    fn eval_parity_symmetrization() {
        // g(w) + g(-w) equals the integral of the even-in-w part times two
        let f = faddeev_problem(0.0).unwrap();
        let w = C64::new(0.8, 0.0);
        let gamma = C64::new(0.3, 0.0);
        let tol = 1e-10;
        let plus = f.eval_g(w, gamma, tol).unwrap().value;
        let minus = f.eval_g(-w, gamma, tol).unwrap().value;
        let contour = rotated_offset_line(0.0, BASE_EPSILON, BASE_EPSILON / 2.0);
        let sym = crate::contour::integrate(
            &contour,
            |z| {
                let base = 1.0 / ((PI * z).sinh() * z * (gamma * z).sinh());
                ((w * z).exp() + (-w * z).exp()) * base
            },
            tol,
            Some(crate::contour::TailDecay { rate: 2.0 }),
        )
        .unwrap();
        assert!((plus + minus - sym.value).norm() < 1e-8);
    }

    #[test]
    fn small_gamma_leading_order() {
        // g ≈ a_{-1} h_{-1} / γ as γ → 0 along ℝ₊
        let f = faddeev_problem(0.0).unwrap();
        let w = C64::new(1.0, 0.0);
        let lead = hm1_closed(w);
        for &g in &[0.05, 0.025] {
            let gamma = C64::new(g, 0.0);
            let gv = f.eval_g(w, gamma, 1e-10).unwrap().value;
            let rel = (gv - lead / gamma).norm() / (lead / gamma).norm();
            assert!(rel < 0.05 * g / 0.05, "γ = {g}: rel = {rel}");
        }
    }

    #[test]
    fn p2n_parity_odd_in_gamma() {
        let f = faddeev_problem(0.0).unwrap();
        let w = C64::new(1.0, 0.0);
        let gamma = C64::new(0.2, 0.1);
        let (p_plus, _) = f.p2n(w, gamma, 2, 1e-10).unwrap();
        let (p_minus, _) = f.p2n(w, -gamma, 2, 1e-10).unwrap();
        assert!((p_plus + p_minus).norm() < 1e-12 * p_plus.norm().max(1.0));
    }

    #[test]
    fn inv_laplace_phi_series_values() {
        // at ξ = 0 the series collapses to -z/6
        let z = C64::new(1.3, 0.4);
        let v0 = inv_laplace_phi(z, C64::new(0.0, 0.0), 1e-12);
        assert!((v0 - (-z / 6.0)).norm() < 1e-12);
        // brute-force partial sum oracle at a generic point
        let xi = C64::new(0.7, 0.1);
        let mut brute = C64::new(0.0, 0.0);
        for n in 1..400_000u64 {
            let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
            brute += (z * xi / (PI * n as f64)).cos() * (sgn / (n * n) as f64);
        }
        brute *= z * 2.0 / (PI * PI);
        let fast = inv_laplace_phi(z, xi, 1e-12);
        assert!((fast - brute).norm() < 1e-9, "{fast} vs {brute}");
    }

    #[test]
    fn borel_integral_matches_closed_form() {
        // two independent representations of B_w at (w, ξ) = (1, 0.3)
        let f = faddeev_problem(0.0).unwrap();
        let w = C64::new(1.0, 0.0);
        let xi = C64::new(0.3, 0.0);
        let rate = 0.85 * (PI - 1.0) - xi.norm() / PI;
        let (via_int, err) = crate::borel::borel_via_integral(
            &f.problem,
            w,
            xi,
            &|z, x| inv_laplace_phi(z, x, 1e-12),
            rate,
            1e-10,
        )
        .unwrap();
        let closed = bw(w, xi, 1e-11).unwrap();
        assert!(
            (via_int - closed).norm() < 1e-8 + err,
            "integral {via_int} vs closed {closed}"
        );
    }

    #[test]
    fn kernel_moments_quadrature_vs_closed() {
        // the pole-sum building blocks ∫ K e^{zξ/p} (z/p) dz equal
        // h_1(w + ξ/p)/p; this pins the quadrature route against the closed
        // form before the long pole tail is summed with the latter
        let f = faddeev_problem(0.0).unwrap();
        let w = C64::new(1.0, 0.0);
        let xi = C64::new(0.4, 0.0);
        let problem = &f.problem;
        for n in [1i32, -1, 2, 5] {
            let p = C64::new(0.0, PI * n as f64);
            let contour = problem.contours.moment_contour(w);
            let kf = &problem.kernel.eval;
            let quad = crate::contour::integrate(
                &contour,
                |z| kf(w, z) * (z * xi / p).exp() * (z / p),
                1e-11,
                Some(crate::contour::TailDecay { rate: 1.5 }),
            )
            .unwrap()
            .value;
            let closed = h1_closed(w + xi / p) / p;
            assert!((quad - closed).norm() < 1e-9, "n = {n}: {quad} vs {closed}");
        }
    }

    #[test]
    fn pole_sum_matches_closed_form() {
        // principal parts b_{±iπn,1} = (-1)^n with closed-form kernel moments
        // (validated against quadrature above); the 1/n² pole tail needs a few
        // thousand pairs for 1e-7
        let w = C64::new(1.0, 0.0);
        let xi = C64::new(0.4, 0.0);
        let mut poles = Vec::new();
        for n in 1..=3500i32 {
            let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
            for sign in [1.0, -1.0] {
                poles.push(crate::borel::PolePart {
                    pole: C64::new(0.0, sign * PI * n as f64),
                    coeffs: vec![C64::new(sgn, 0.0)],
                });
            }
        }
        let km = |p: C64, _k: u32, x: C64| -> crate::error::Result<C64> {
            Ok(h1_closed(w + x / p) / p)
        };
        let via_poles =
            crate::borel::borel_via_pole_sum(&poles, &km, None, xi, 1e-12, (2.0, 0.0)).unwrap();
        let closed = bw(w, xi, 1e-11).unwrap();
        assert!(
            (via_poles - closed).norm() < 1e-7,
            "pole sum {via_poles} vs closed {closed}"
        );
    }

    #[test]
    fn bw_acceleration_matches_brute_sum() {
        let w = C64::new(1.0, 0.2);
        let xi = C64::new(0.8, -0.1);
        let mut brute = C64::new(0.0, 0.0);
        for n in 1..200_000u64 {
            let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
            let shift = C64::i() * xi / (PI * n as f64);
            let b1 = 1.0 / (1.0 + (-C64::i() * (w + shift)).exp());
            let b2 = 1.0 / (1.0 + (-C64::i() * (w - shift)).exp());
            brute += (b1 + b2) * (sgn / (n * n) as f64);
        }
        brute *= 2.0 / (C64::i() * PI * PI);
        let fast = bw(w, xi, 1e-12).unwrap();
        assert!((fast - brute).norm() < 1e-9, "{fast} vs {brute}");
    }

    #[test]
    fn stokes_jump_meaningful_magnitude() {
        // |γ| = 2 puts the first pole's residue factor around e^{-3.4}, so the
        // residue sum and the lateral difference agree at a visible scale
        let w = C64::new(1.0, 0.0);
        let b = borel_function(w);
        let gamma = C64::new(0.0, 2.0);
        let s = crate::borel::stokes_jump(&b, PI / 2.0, gamma, 0.3, 1e-11).unwrap();
        assert!(s.jump.norm() > 1e-3, "jump unexpectedly tiny: {}", s.jump);
        let (lat, err) =
            crate::borel::lateral_laplace_difference(&b, PI / 2.0, 0.3, gamma, 1e-11).unwrap();
        assert!(
            (s.jump - lat).norm() < 1e-7 + err,
            "residues {} vs lateral {lat}",
            s.jump
        );
    }

    #[test]
    fn fe_certificate_holds_at_reference_point() {
        let f = faddeev_problem(0.0).unwrap();
        let certs = f.verify_fe(C64::new(1.0, 0.0), C64::new(0.2, 0.0), 2, 1e-10).unwrap();
        for c in &certs {
            assert!(c.pass, "tier failed: {c:?}");
            assert!(c.measured <= c.bound);
        }
    }

    #[test]
    fn fe_certificate_off_axis() {
        // θ̃ = 0.4 reaches γ with Arg γ = 0.3 without requiring Re γ > 0 alone
        let f = faddeev_problem(0.4).unwrap();
        let gamma = C64::new(0.1, 0.0) * crate::cis(0.3);
        let certs = f.verify_fe(C64::new(1.0, 0.0), gamma, 2, 1e-10).unwrap();
        for c in &certs {
            assert!(c.pass, "tier failed: {c:?}");
        }
    }

    #[test]
    fn fe_scaling_sweep_bounded() {
        let f = faddeev_problem(0.0).unwrap();
        let w = C64::new(1.0, 0.0);
        let n = 2u32;
        let mut prev_ratio = f64::INFINITY;
        for &g in &[0.2, 0.1, 0.05] {
            let gamma = C64::new(g, 0.0);
            let (ls, _) = f.log_s(w, gamma, 1e-11).unwrap();
            let (p, _) = f.p2n(w, gamma, n, 1e-11).unwrap();
            let ratio = (ls - p).norm() / g.powi(2 * n as i32);
            assert!(ratio <= prev_ratio * 1.05, "remainder/|γ|^{} grew: {ratio}", 2 * n);
            prev_ratio = ratio;
        }
    }
}
