//! Laplace transforms along rays, Borel sums of the divergent tail via the
//! integral and pole-sum representations, admissibility sectors, and Stokes
//! jumps computed as residue sums.

use crate::contour::{integrate, Contour, Segment, TailDecay};
use crate::error::{MeroError, Result};
use crate::transform::TransformProblem;
use crate::{cis, C64};
use std::sync::Arc;

/// Direction `ℝ₊^θ = e^{iθ} ℝ₊`.
#[derive(Debug, Clone, Copy)]
pub struct Ray {
    pub theta: f64,
}

/// Envelope `|ψ(ξ)| ≤ e^{α|ξ|} Σ_i C_i |ξ|^{m_i}` controlling a Laplace
/// integrand along its ray.
#[derive(Debug, Clone)]
pub struct GrowthBound {
    pub alpha: f64,
    pub terms: Vec<(f64, u32)>,
}

impl GrowthBound {
    pub fn simple(alpha: f64, c: f64) -> Self {
        GrowthBound { alpha, terms: vec![(c, 0)] }
    }

    /// `∫_T^∞ e^{-rate·t} Σ C_i t^{m_i} dt` in closed form.
    fn tail_integral(&self, rate: f64, t: f64) -> f64 {
        let mut acc = 0.0;
        for &(c, m) in &self.terms {
            let mut inner = 0.0;
            let mut fact = 1.0; // m! / (m-l)!
            for l in 0..=m {
                inner += fact * t.powi((m - l) as i32) / rate.powi(l as i32 + 1);
                fact *= (m - l) as f64;
            }
            acc += c * inner;
        }
        acc * (-rate * t).exp()
    }
}

/// Membership in `U_{θ,α}`: `cos(θ - θ_γ) > |γ| α` (α = 0 gives `U_θ`).
/// Cosines within 1e-14 of zero count as zero, so a ray exactly orthogonal
/// to `γ` is excluded.
pub fn admissible(theta: f64, gamma: C64, alpha: f64) -> bool {
    let c = (theta - gamma.arg()).cos();
    gamma.norm() > 0.0 && c > 1e-14 && c > gamma.norm() * alpha
}

/// Laplace transform `L_θ(ψ)(γ) = ∫_{ℝ₊^θ} e^{-ξ/γ} ψ(ξ) dξ` by adaptive
/// quadrature on the envelope-truncated ray; the closed-form tail bound from
/// the growth envelope is added to the error estimate.
pub fn laplace_along_ray<F>(
    psi: F,
    bound: &GrowthBound,
    theta: f64,
    gamma: C64,
    tol: f64,
) -> Result<(C64, f64)>
where
    F: Fn(C64) -> C64,
{
    let cosd = (theta - gamma.arg()).cos();
    if !(cosd > 1e-14 && cosd > gamma.norm() * bound.alpha) {
        return Err(MeroError::Inadmissible {
            cos_value: cosd,
            threshold: gamma.norm() * bound.alpha,
        });
    }
    let rate = cosd / gamma.norm() - bound.alpha;
    // truncation point: closed-form tail below tol/10
    let mut t_cut = 8.0 / rate;
    let mut tail = bound.tail_integral(rate, t_cut);
    let mut guard = 0;
    while tail > tol / 10.0 {
        t_cut *= 1.5;
        tail = bound.tail_integral(rate, t_cut);
        guard += 1;
        if guard > 200 {
            return Err(MeroError::NonConvergence { estimate: tail, tol, evaluations: 0 });
        }
    }
    let dir = cis(theta);
    let seg = Contour::new(vec![Segment::line(C64::new(0.0, 0.0), dir * t_cut)]);
    let inv_gamma = 1.0 / gamma;
    let r = integrate(&seg, |xi| (-xi * inv_gamma).exp() * psi(xi), tol, None)?;
    Ok((r.value, r.error_estimate + tail))
}

/// One principal part `Σ_{m=1}^{n_φ} b_{p,m} / (γz - p)^m` of the rescaled
/// function at a pole `p ≠ 0`.
#[derive(Debug, Clone)]
pub struct PolePart {
    pub pole: C64,
    /// `b_{p,1}, ..., b_{p,n_φ}`.
    pub coeffs: Vec<C64>,
}

/// A Borel sum `B_w(ξ)` exposed through an evaluation closure plus its pole
/// set and growth envelope. Built from the closed form, the contour-integral
/// representation, or the pole-sum representation; the representations agree
/// on overlaps and carry the same pole data.
#[derive(Clone)]
pub struct BorelFunction {
    pub w: C64,
    pub eval: Arc<dyn Fn(C64) -> C64 + Send + Sync>,
    /// Poles with modulus below a requested radius.
    pub poles_within: Arc<dyn Fn(f64) -> Vec<C64> + Send + Sync>,
    pub growth: GrowthBound,
    pub representation: &'static str,
}

impl BorelFunction {
    pub fn eval(&self, xi: C64) -> C64 {
        (self.eval)(xi)
    }
}

/// Borel sum via the contour representation
/// `B_w(ξ) = ∫_{Γ̄_w} K(w,z) L_θ^{-1}(φ_z)(ξ) dz`.
///
/// `inv_laplace_phi(z, ξ)` supplies the per-`z` Borel transform of the
/// principal-part-subtracted function (closed form per example); `z_decay` is
/// the net envelope rate of the integrand in `z` and must be positive inside
/// the representation's validity region.
pub fn borel_via_integral(
    p: &TransformProblem,
    w: C64,
    xi: C64,
    inv_laplace_phi: &(dyn Fn(C64, C64) -> C64 + Sync),
    z_decay: f64,
    tol: f64,
) -> Result<(C64, f64)> {
    if !(z_decay > 0.0) {
        return Err(MeroError::NonConvergence { estimate: f64::INFINITY, tol, evaluations: 0 });
    }
    let contour = p.contours.borel_contour(w);
    contour.validate_clearance(&(p.kernel.poles_near)(w, 64.0))?;
    let k = &p.kernel.eval;
    let r = integrate(
        &contour,
        |z| k(w, z) * inv_laplace_phi(z, xi),
        tol,
        Some(TailDecay { rate: z_decay }),
    )?;
    Ok((r.value, r.error_estimate))
}

/// Borel sum via the pole-sum representation: for each principal part,
///
/// `-Σ_p Σ_{m=1}^{n_φ} (b_{p,m}/p^m) Σ_{l=0}^{m-1} C(m,l)(-1)^l Σ_{l'=0}^{l}
///  C(l,l') KM(p, m-l+l', ξ) ξ^{m-l+l'-1}/(m-l+l'-1)!`,
///
/// where `KM(p,k,ξ) = ∫_{Γ̄_w} K(w,z) e^{zξ/p} (z/p)^k dz` is supplied by the
/// caller, plus the entire-part integral when present. Poles are consumed in
/// order of increasing modulus; the declared growth `|b_{p,m}| ≤ C̃ |p|^c`
/// with `c < 1` is checked and the truncation stops once pole contributions
/// stay below tolerance.
pub fn borel_via_pole_sum(
    poles: &[PolePart],
    kernel_moment: &(dyn Fn(C64, u32, C64) -> Result<C64> + Sync),
    entire_part: Option<&(dyn Fn(C64) -> Result<C64> + Sync)>,
    xi: C64,
    tol: f64,
    growth_check: (f64, f64),
) -> Result<C64> {
    let (c_big, c_exp) = growth_check;
    if c_exp >= 1.0 {
        return Err(MeroError::HypothesisFailure(format!(
            "pole-coefficient growth exponent must satisfy c < 1, got {c_exp}"
        )));
    }
    let mut sorted: Vec<&PolePart> = poles.iter().collect();
    sorted.sort_by(|a, b| a.pole.norm().partial_cmp(&b.pole.norm()).unwrap());
    for pp in &sorted {
        if pp.pole.norm() == 0.0 {
            return Err(MeroError::HypothesisFailure("pole at the origin".into()));
        }
        for bm in &pp.coeffs {
            if bm.norm() > c_big * pp.pole.norm().powf(c_exp) * (1.0 + 1e-9) {
                return Err(MeroError::HypothesisFailure(format!(
                    "|b_p,m| = {} exceeds C̃|p|^c = {} at p = {}",
                    bm.norm(),
                    c_big * pp.pole.norm().powf(c_exp),
                    pp.pole
                )));
            }
        }
    }
    let binom = |n: u32, k: u32| -> f64 {
        let mut acc = 1.0;
        for i in 0..k {
            acc *= (n - i) as f64 / (i + 1) as f64;
        }
        acc
    };
    let mut acc = crate::contour::KahanSum::default();
    let mut quiet = 0u32;
    for pp in &sorted {
        let p = pp.pole;
        let mut term = C64::new(0.0, 0.0);
        for (mi, bm) in pp.coeffs.iter().enumerate() {
            let m = (mi + 1) as u32;
            if bm.norm() == 0.0 {
                continue;
            }
            let mut sum_l = C64::new(0.0, 0.0);
            for l in 0..m {
                let sgn = if l % 2 == 0 { 1.0 } else { -1.0 };
                for lp in 0..=l {
                    let k = m - l + lp;
                    let km = kernel_moment(p, k, xi)?;
                    sum_l += binom(m, l) * sgn * binom(l, lp) * km * xi.powi(k as i32 - 1)
                        / crate::series::factorial(k - 1);
                }
            }
            term += bm / p.powi(m as i32) * sum_l;
        }
        term = -term;
        acc.add(term);
        if term.norm() < tol / 10.0 {
            quiet += 1;
            if quiet >= 5 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let mut total = acc.value();
    if let Some(psi) = entire_part {
        total += psi(xi)?;
    }
    Ok(total)
}

/// `α_θ(w) = (1/r_m) sup_{z ∈ Γ̄_w} |z| cos(θ + θ_z - θ_p)` with
/// `r_m = min_p |p|`, evaluated per pole-argument class over contour samples.
///
/// Rejects contours whose infinite rays make the supremum unbounded.
pub fn alpha_theta(poles: &[C64], contour: &Contour, theta: f64) -> Result<f64> {
    if contour.segments.is_empty() || poles.is_empty() {
        return Ok(0.0);
    }
    let r_m = poles.iter().map(|p| p.norm()).fold(f64::INFINITY, f64::min);
    if !(r_m > 0.0) {
        return Err(MeroError::HypothesisFailure("pole at the origin (r_m = 0)".into()));
    }
    // distinct pole arguments
    let mut classes: Vec<f64> = Vec::new();
    for p in poles {
        let a = p.arg();
        if !classes.iter().any(|&c| (c - a).abs() < 1e-9) {
            classes.push(a);
        }
    }
    let mut sup = 0.0_f64;
    for seg in &contour.segments {
        let (t0, t1) = seg.t_range();
        let ts: Vec<f64> = if t1.is_finite() {
            (0..=600).map(|i| t0 + (t1 - t0) * i as f64 / 600.0).collect()
        } else {
            // geometric samples plus an unboundedness check on the direction
            (0..=600).map(|i| t0 + 10.0_f64.powf(-3.0 + 10.0 * i as f64 / 600.0)).collect()
        };
        for &theta_p in &classes {
            if !t1.is_finite() {
                if let crate::contour::SegmentKind::Ray { angle, .. } = seg.kind {
                    let c = (theta + angle - theta_p).cos();
                    if c > 1e-9 {
                        return Err(MeroError::HypothesisFailure(format!(
                            "sup |z| cos(θ+θ_z-θ_p) unbounded along ray at angle {angle}"
                        )));
                    }
                }
            }
            for &t in &ts {
                let z = seg.point(t);
                let zn = z.norm();
                if zn == 0.0 {
                    continue;
                }
                let v = zn * (theta + z.arg() - theta_p).cos();
                sup = sup.max(v);
            }
        }
    }
    Ok(sup / r_m)
}

/// Stokes data along one singular direction.
#[derive(Debug, Clone)]
pub struct StokesData {
    pub direction: f64,
    /// Poles contributing to the truncated residue sum.
    pub poles: Vec<C64>,
    /// `Δ = 2πi Σ_p Res_{ξ=p}(e^{-ξ/γ} B_w(ξ))`.
    pub jump: C64,
    /// Residues per pole (of `e^{-ξ/γ} B_w`).
    pub residues: Vec<C64>,
}

/// Jump of `L_θ(B_w)(γ)` across the singular direction `θ_j`, as `2πi` times
/// the residue sum over the poles on `ℝ₊^{θ_j}`.
///
/// Residues come from 64-node circle quadrature of radius
/// `min(0.1·pole gap, 0.1 |p|)`; the pole sum truncates once the factor
/// `e^{-|p| cos(θ_j-θ_γ)/|γ|}` falls below tolerance. Poles found in the
/// sector `[θ_j - ε, θ_j + ε]` but off the ray are a purity violation.
pub fn stokes_jump(
    b: &BorelFunction,
    theta_j: f64,
    gamma: C64,
    eps: f64,
    tol: f64,
) -> Result<StokesData> {
    let cosd = (theta_j - gamma.arg()).cos();
    if !(cosd > 0.0) {
        return Err(MeroError::Inadmissible { cos_value: cosd, threshold: 0.0 });
    }
    let r_max = gamma.norm() / cosd * (1.0 / tol).ln().max(1.0) + 1.0;
    let all = (b.poles_within)(r_max);
    let mut on_ray: Vec<C64> = Vec::new();
    for p in &all {
        let dth = angle_diff(p.arg(), theta_j);
        if dth.abs() <= eps + 1e-12 {
            if dth.abs() > 1e-9 {
                return Err(MeroError::HypothesisFailure(format!(
                    "pole {p} in the sector but off the ray (Δθ = {dth:.3e})"
                )));
            }
            on_ray.push(*p);
        }
    }
    on_ray.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
    let mut jump = C64::new(0.0, 0.0);
    let mut residues = Vec::new();
    let mut used = Vec::new();
    for (i, &p) in on_ray.iter().enumerate() {
        let damp = (-p.norm() * cosd / gamma.norm()).exp();
        if damp < tol / 100.0 && i > 0 {
            break;
        }
        let gap = all
            .iter()
            .filter(|q| (*q - p).norm() > 1e-12)
            .map(|q| (q - p).norm())
            .fold(f64::INFINITY, f64::min);
        let rho = (0.1 * gap).min(0.1 * p.norm());
        for q in &all {
            let dist = (q - p).norm();
            if dist > 1e-12 && dist < 1.5 * rho {
                return Err(MeroError::HypothesisFailure(format!(
                    "residue circle at {p} collides with pole {q}"
                )));
            }
        }
        let res = circle_residue(|xi| b.eval(xi) * (-xi / gamma).exp(), p, rho);
        jump += res;
        residues.push(res);
        used.push(p);
    }
    Ok(StokesData {
        direction: theta_j,
        poles: used,
        jump: C64::new(0.0, 2.0 * std::f64::consts::PI) * jump,
        residues,
    })
}

fn angle_diff(a: f64, b: f64) -> f64 {
    let mut d = a - b;
    while d > std::f64::consts::PI {
        d -= 2.0 * std::f64::consts::PI;
    }
    while d < -std::f64::consts::PI {
        d += 2.0 * std::f64::consts::PI;
    }
    d
}

/// Residue by 64-node trapezoidal quadrature on a circle (spectrally accurate
/// for integrands analytic in the annulus).
pub fn circle_residue<F: Fn(C64) -> C64>(f: F, center: C64, radius: f64) -> C64 {
    let n = 64;
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..n {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let e = cis(phi);
        acc += f(center + e * radius) * e;
    }
    acc * radius / n as f64
}

/// Lateral Laplace discontinuity `L_{θ_j-ε}(B) - L_{θ_j+ε}(B)` across the
/// singular direction. Closing the sector contour around the poles on the
/// ray equates exactly this difference to `2πi Σ Res(e^{-ξ/γ} B)`, the value
/// reported by [`stokes_jump`].
pub fn lateral_laplace_difference(
    b: &BorelFunction,
    theta_j: f64,
    eps: f64,
    gamma: C64,
    tol: f64,
) -> Result<(C64, f64)> {
    let f = |xi: C64| b.eval(xi);
    let (above, e1) = laplace_along_ray(f, &b.growth, theta_j + eps, gamma, tol)?;
    let (below, e2) = laplace_along_ray(f, &b.growth, theta_j - eps, gamma, tol)?;
    Ok((below - above, e1 + e2))
}

/// Resummed value `g⁻_γ(w) + L_θ(B_w)(γ)`; equals the transform itself within
/// combined tolerances when the representation hypotheses hold.
pub fn laplace_borel_reconstruct(
    g_minus: C64,
    b: &BorelFunction,
    theta: f64,
    gamma: C64,
    tol: f64,
) -> Result<(C64, f64)> {
    let (lap, err) = laplace_along_ray(|xi| b.eval(xi), &b.growth, theta, gamma, tol)?;
    Ok((g_minus + lap, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn laplace_of_one_is_gamma() {
        for &theta in &[0.0, 0.4, -0.3] {
            let gamma = C64::new(0.3, 0.1);
            let (v, e) = laplace_along_ray(
                |_| C64::new(1.0, 0.0),
                &GrowthBound::simple(0.0, 1.0),
                theta,
                gamma,
                1e-12,
            )
            .unwrap();
            assert!((v - gamma).norm() < 1e-11 + e, "θ = {theta}: {v}");
        }
    }

    #[test]
    fn laplace_inverts_borel_on_monomials() {
        // L_θ(ξ^{m-1}/(m-1)!) = γ^m
        let gamma = C64::new(0.25, 0.1);
        for m in 1..=6u32 {
            let fact = crate::series::factorial(m - 1);
            let expect = gamma.powi(m as i32);
            let (v, _) = laplace_along_ray(
                |xi| xi.powi(m as i32 - 1) / fact,
                &GrowthBound { alpha: 0.0, terms: vec![(1.0 / fact, m - 1)] },
                0.1,
                gamma,
                1e-13 * expect.norm(),
            )
            .unwrap();
            assert!((v - expect).norm() < 1e-12 * expect.norm(), "m = {m}");
        }
    }

    #[test]
    fn laplace_geometric_kernel() {
        // ψ = e^{aξ} → γ/(1-aγ) when Re(a - 1/γ) < 0
        let a = C64::new(0.8, 0.3);
        let gamma = C64::new(0.4, 0.0);
        let (v, _) = laplace_along_ray(
            |xi| (a * xi).exp(),
            &GrowthBound::simple(a.norm(), 1.0),
            0.0,
            gamma,
            1e-12,
        )
        .unwrap();
        let expect = gamma / (1.0 - a * gamma);
        assert!((v - expect).norm() < 1e-11);
    }

    #[test]
    fn admissibility_thresholds() {
        assert!(admissible(0.0, C64::new(0.1, 0.0), 0.0));
        assert!(!admissible(0.0, C64::new(0.0, 0.1), 0.0)); // cos(π/2) = 0
        assert!(admissible(0.0, C64::new(0.1, 0.0), 9.0)); // 1 > 0.9
        assert!(!admissible(0.0, C64::new(0.1, 0.0), 11.0)); // 1 < 1.1
    }

    #[test]
    fn laplace_rejects_inadmissible() {
        let r = laplace_along_ray(
            |_| C64::new(1.0, 0.0),
            &GrowthBound::simple(0.0, 1.0),
            0.0,
            C64::new(0.0, 0.2),
            1e-10,
        );
        assert!(matches!(r, Err(MeroError::Inadmissible { .. })));
    }

    #[test]
    fn synthetic_simple_pole_jump() {
        // B(ξ) = 1/(ξ - p) with p on ℝ₊: Δ = 2πi e^{-p/γ}
        let p = C64::new(1.5, 0.0);
        let b = BorelFunction {
            w: C64::new(0.0, 0.0),
            eval: Arc::new(move |xi| 1.0 / (xi - p)),
            poles_within: Arc::new(move |r| if p.norm() <= r { vec![p] } else { vec![] }),
            growth: GrowthBound::simple(0.0, 2.0),
            representation: "closed-form",
        };
        let gamma = C64::new(0.4, 0.0);
        let s = stokes_jump(&b, 0.0, gamma, 0.3, 1e-12).unwrap();
        let expect = C64::new(0.0, 2.0 * PI) * (-p / gamma).exp();
        assert!((s.jump - expect).norm() < 1e-10, "jump = {}, expect = {expect}", s.jump);

        // no poles on a rotated ray → zero jump
        let s0 = stokes_jump(&b, 1.0, C64::new(0.3, 0.3), 0.2, 1e-12).unwrap();
        assert_eq!(s0.jump, C64::new(0.0, 0.0));
    }

    #[test]
    fn synthetic_jump_matches_lateral_difference() {
        let p = C64::new(1.2, 0.0);
        let b = BorelFunction {
            w: C64::new(0.0, 0.0),
            eval: Arc::new(move |xi| 1.0 / (xi - p)),
            poles_within: Arc::new(move |r| if p.norm() <= r { vec![p] } else { vec![] }),
            growth: GrowthBound::simple(0.0, 3.0),
            representation: "closed-form",
        };
        let gamma = C64::new(0.5, 0.0);
        let s = stokes_jump(&b, 0.0, gamma, 0.3, 1e-12).unwrap();
        let (diff, err) = lateral_laplace_difference(&b, 0.0, 0.5, gamma, 1e-12).unwrap();
        assert!(
            (s.jump - diff).norm() < 1e-9 + err,
            "residue {} vs lateral {diff}",
            s.jump
        );
    }

    #[test]
    fn jump_antisymmetric_in_crossing_direction() {
        let p = C64::new(1.0, 0.0);
        let b = BorelFunction {
            w: C64::new(0.0, 0.0),
            eval: Arc::new(move |xi| 1.0 / (xi - p)),
            poles_within: Arc::new(move |r| if p.norm() <= r { vec![p] } else { vec![] }),
            growth: GrowthBound::simple(0.0, 3.0),
            representation: "closed-form",
        };
        let gamma = C64::new(0.5, 0.0);
        // jump picked up sweeping downward across the ray vs upward
        let (down, e1) = lateral_laplace_difference(&b, 0.0, 0.4, gamma, 1e-12).unwrap();
        let f = |xi: C64| b.eval(xi);
        let (below, ea) = laplace_along_ray(f, &b.growth, -0.4, gamma, 1e-12).unwrap();
        let (above, eb) = laplace_along_ray(f, &b.growth, 0.4, gamma, 1e-12).unwrap();
        let up = above - below;
        assert!((down + up).norm() <= 1e-12 + e1 + ea + eb);
    }

    #[test]
    fn sector_purity_violation_detected() {
        let p = C64::new(1.0, 0.2); // off the ray but inside the sector
        let b = BorelFunction {
            w: C64::new(0.0, 0.0),
            eval: Arc::new(move |xi| 1.0 / (xi - p)),
            poles_within: Arc::new(move |r| if p.norm() <= r { vec![p] } else { vec![] }),
            growth: GrowthBound::simple(0.0, 3.0),
            representation: "closed-form",
        };
        let r = stokes_jump(&b, 0.0, C64::new(0.5, 0.0), 0.4, 1e-10);
        assert!(matches!(r, Err(MeroError::HypothesisFailure(_))));
    }

    #[test]
    fn alpha_theta_empty_and_segment_cases() {
        let empty = Contour { segments: vec![], reversed: false, clearance: 0.0 };
        assert_eq!(alpha_theta(&[C64::new(1.0, 0.0)], &empty, 0.0).unwrap(), 0.0);

        // single pole at p = 1, contour = segment [0, 1], θ = 0:
        // sup |z| cos(θ_z) = 1 at z = 1, so α = 1
        let seg = Contour::new(vec![Segment::line(C64::new(0.0, 0.0), C64::new(1.0, 0.0))]);
        let a = alpha_theta(&[C64::new(1.0, 0.0)], &seg, 0.0).unwrap();
        assert!((a - 1.0).abs() < 1e-6, "α = {a}");
    }

    #[test]
    fn alpha_theta_unbounded_ray_detected() {
        let ray = Contour::new(vec![Segment::ray(C64::new(0.0, 0.0), 0.0)]);
        // pole argument 0, θ = 0: cos(0) = 1 > 0 along the ray → unbounded
        assert!(alpha_theta(&[C64::new(2.0, 0.0)], &ray, 0.0).is_err());
        // Faddeev geometry: poles at ±π/2, ray along ℝ: cos(θ_z ± π/2) = 0
        let a = alpha_theta(
            &[C64::new(0.0, std::f64::consts::PI), C64::new(0.0, -std::f64::consts::PI)],
            &ray,
            0.0,
        )
        .unwrap();
        assert!(a.abs() < 1e-9, "α = {a}");
    }

    #[test]
    fn reconstruct_polynomial_exactly() {
        // B of the finite series 2γ + 3γ² is 2 + 3ξ; reconstruction returns
        // the polynomial for any admissible γ
        let b = BorelFunction {
            w: C64::new(0.0, 0.0),
            eval: Arc::new(|xi| C64::new(2.0, 0.0) + 3.0 * xi),
            poles_within: Arc::new(|_| vec![]),
            growth: GrowthBound { alpha: 0.0, terms: vec![(2.0, 0), (3.0, 1)] },
            representation: "closed-form",
        };
        let gamma = C64::new(0.2, 0.05);
        let g_minus = C64::new(5.0, 0.0);
        let (v, e) = laplace_borel_reconstruct(g_minus, &b, 0.0, gamma, 1e-13).unwrap();
        let expect = g_minus + 2.0 * gamma + 3.0 * gamma * gamma;
        assert!((v - expect).norm() < 1e-12 + e, "{v} vs {expect}");
    }
}
