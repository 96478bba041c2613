//! Transform problems: a meromorphic kernel `K(w, z)`, a rescaled function
//! `f(γz)` and a contour family, bundled with declared decay constants.
//!
//! The module evaluates `g_γ(w) = ∫_Γ K(w,z) f(γz) dz`, the moments
//! `h_m(w) = ∫_Γ K(w,z) z^m dz` (cached), the order-`n` truncations
//! `Σ_{m=-n0}^n a_m h_m(w) γ^m`, and assembles the formal γ-series.

use crate::contour::{integrate, Contour, ContourFamily, QuadratureResult, TailDecay};
use crate::error::{MeroError, Result};
use crate::series::{FormalGammaSeries, GammaTerm, LaurentSeries};
use crate::C64;
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

type CFn = Arc<dyn Fn(C64) -> C64 + Send + Sync>;
type RealOfC = Arc<dyn Fn(C64) -> f64 + Send + Sync>;

/// Meromorphic kernel with its declared decay envelope
/// `|K(w,z)| ≤ c_w e^{-δ1 |z|} |z|^{-k0}` along the estimate contour.
#[derive(Clone)]
pub struct KernelSpec {
    pub eval: Arc<dyn Fn(C64, C64) -> C64 + Send + Sync>,
    /// Pole order of `K_w` at the origin (independent of `w`).
    pub k0: i32,
    pub delta1: f64,
    /// Amplitude map `w ↦ c_w`.
    pub c_w: RealOfC,
    /// `R_K(w)`: distance from the origin to the nearest non-zero pole of `K_w`.
    pub inner_radius: RealOfC,
    /// Kernel poles within a given radius, for clearance checks.
    pub poles_near: Arc<dyn Fn(C64, f64) -> Vec<C64> + Send + Sync>,
}

/// The rescaled function `f` with its Laurent window and declared envelope
/// `|f(γz)| ≤ c̃_γ e^{δ2 |z|} |γz|^{-n0}`.
#[derive(Clone)]
pub struct FunctionSpec {
    pub eval: CFn,
    pub laurent: LaurentSeries,
    pub delta2: f64,
    /// Amplitude map `γ ↦ c̃_γ` (bounded below by `c_floor`).
    pub c_tilde: RealOfC,
    pub c_floor: f64,
    /// Poles of `f` within a given radius of the origin (in the `f` plane).
    pub poles_near: Arc<dyn Fn(f64) -> Vec<C64> + Send + Sync>,
}

/// Membership test plus sample points for a parameter domain.
#[derive(Clone)]
pub struct Domain {
    pub contains: Arc<dyn Fn(C64) -> bool + Send + Sync>,
    pub samples: Vec<C64>,
    pub description: String,
}

impl Domain {
    pub fn all(samples: Vec<C64>, description: &str) -> Self {
        Domain { contains: Arc::new(|_| true), samples, description: description.into() }
    }
}

/// Declared decay constants consumed by the remainder bounds.
#[derive(Debug, Clone)]
pub struct DecayHypotheses {
    pub delta1: f64,
    pub delta2: f64,
    /// Floor `c ≤ c̃_γ` entering the γ-free constants.
    pub c_floor: f64,
    /// Tangent-angle bound along the estimate contour.
    pub b: f64,
    /// Number of smooth segments of the estimate contour.
    pub d: u32,
    pub k0: i32,
    pub n0: i32,
    /// Envelope rate `δ̃` of `|φ̃_n(γz)| ≤ C^{(n)}_w e^{δ̃|z|}` (entire-`f` regime).
    pub delta_tilde: Option<f64>,
    /// `ρ_w`: minimum modulus of the zero-avoiding deformation.
    pub rho_w: Option<f64>,
    /// Scale-free inner length ratio (inner arc length / inner radius) of the
    /// γ-dependent deformation.
    pub l_hat: Option<f64>,
    /// Whether the tangent-angle bound holds at every truncation radius.
    pub uniform_b: bool,
}

impl DecayHypotheses {
    pub fn delta(&self) -> f64 {
        self.delta1 - self.delta2
    }

    pub fn validate(&self) -> Result<()> {
        if self.b <= 0.0 {
            return Err(MeroError::HypothesisFailure("angle bound b must be positive".into()));
        }
        if self.d == 0 {
            return Err(MeroError::HypothesisFailure("segment count d must be ≥ 1".into()));
        }
        Ok(())
    }
}

#[derive(PartialEq, Eq, Hash, Clone, Copy)]
struct MomentKey {
    m: i32,
    w_re: u64,
    w_im: u64,
    tol: u64,
}

/// Cache of moment integrals keyed by `(m, w, tol)`, optionally persisted to
/// a JSON file so repeated CLI runs and bound sweeps are cheap.
pub struct MomentTable {
    map: RwLock<HashMap<MomentKey, (f64, f64, f64)>>,
    path: Option<PathBuf>,
}

impl MomentTable {
    pub fn in_memory() -> Self {
        MomentTable { map: RwLock::new(HashMap::new()), path: None }
    }

    /// Backed by `<dir>/<problem_id>.moments.json`; loads existing entries.
    pub fn persistent(dir: &std::path::Path, problem_id: &str) -> Self {
        let path = dir.join(format!("{problem_id}.moments.json"));
        let mut map = HashMap::new();
        if let Ok(bytes) = std::fs::read(&path) {
            if let Ok(entries) =
                serde_json::from_slice::<Vec<(i32, u64, u64, u64, f64, f64, f64)>>(&bytes)
            {
                for (m, w_re, w_im, tol, re, im, err) in entries {
                    map.insert(MomentKey { m, w_re, w_im, tol }, (re, im, err));
                }
            }
        }
        MomentTable { map: RwLock::new(map), path: Some(path) }
    }

    fn key(m: i32, w: C64, tol: f64) -> MomentKey {
        MomentKey { m, w_re: w.re.to_bits(), w_im: w.im.to_bits(), tol: tol.to_bits() }
    }

    fn get(&self, m: i32, w: C64, tol: f64) -> Option<(C64, f64)> {
        self.map
            .read()
            .expect("moment cache")
            .get(&Self::key(m, w, tol))
            .map(|&(re, im, err)| (C64::new(re, im), err))
    }

    fn put(&self, m: i32, w: C64, tol: f64, value: C64, err: f64) {
        let mut guard = self.map.write().expect("moment cache");
        guard.insert(Self::key(m, w, tol), (value.re, value.im, err));
        if let Some(path) = &self.path {
            let entries: Vec<(i32, u64, u64, u64, f64, f64, f64)> = guard
                .iter()
                .map(|(k, v)| (k.m, k.w_re, k.w_im, k.tol, v.0, v.1, v.2))
                .collect();
            if let Ok(bytes) = serde_json::to_vec(&entries) {
                let _ = std::fs::write(path, bytes);
            }
        }
    }
}

/// A complete transform problem.
pub struct TransformProblem {
    pub id: String,
    pub kernel: KernelSpec,
    pub function: FunctionSpec,
    pub contours: ContourFamily,
    pub w_domain: Domain,
    pub u_domain: Domain,
    /// Boundary between `g⁻` and `g⁺` (defaults to `k0`).
    pub split_index: i32,
    pub hyp: DecayHypotheses,
    /// Envelope rate for truncating the evaluation integrand at `(w, γ)`.
    pub eval_decay: Arc<dyn Fn(C64, C64) -> f64 + Send + Sync>,
    /// Envelope rate for truncating the moment integrand at `w` (kernel only).
    pub moment_decay: RealOfC,
    /// Evaluate removable integer-`w` points by symmetric offset averaging
    /// (kernel prefactors like `Γ(1-w)` or `1/sin πw` degenerate there while
    /// the transform itself stays finite).
    pub integer_limit: Option<Arc<dyn Fn(f64) -> bool + Send + Sync>>,
    /// Envelope constant map `(n, w) ↦ C^{(n)}_w` for the entire-`f` bound.
    pub phi_tail_envelope: Option<Arc<dyn Fn(i32, C64) -> f64 + Send + Sync>>,
    pub moments: MomentTable,
}

impl TransformProblem {
    fn check_domain(&self, w: C64, gamma: C64) -> Result<()> {
        if gamma.norm() == 0.0 {
            return Err(MeroError::DomainViolation("γ must be nonzero".into()));
        }
        if !(self.w_domain.contains)(w) {
            return Err(MeroError::DomainViolation(format!(
                "w = {w} outside W ({})",
                self.w_domain.description
            )));
        }
        if !(self.u_domain.contains)(gamma) {
            return Err(MeroError::DomainViolation(format!(
                "γ = {gamma} outside U ({})",
                self.u_domain.description
            )));
        }
        Ok(())
    }

    fn integer_offset(&self, w: C64) -> Option<f64> {
        let pred = self.integer_limit.as_ref()?;
        let wr = w.re.round();
        if (w - C64::new(wr, 0.0)).norm() < 1e-9 && pred(wr) {
            Some(wr)
        } else {
            None
        }
    }

    /// The transform `g_γ(w)` by adaptive quadrature over `Γ_w`.
    pub fn evaluate_g(&self, w: C64, gamma: C64, tol: f64) -> Result<QuadratureResult> {
        self.check_domain(w, gamma)?;
        if let Some(wr) = self.integer_offset(w) {
            // kernel prefactor degenerates at integer w; take the symmetric
            // limit (the transform itself is analytic there)
            let h = 1e-5;
            let a = self.evaluate_g_inner(C64::new(wr + h, 0.0), gamma, tol)?;
            let b = self.evaluate_g_inner(C64::new(wr - h, 0.0), gamma, tol)?;
            return Ok(QuadratureResult {
                value: (a.value + b.value) / 2.0,
                error_estimate: a.error_estimate + b.error_estimate + 1e-9 * a.value.norm(),
                evaluations: a.evaluations + b.evaluations,
            });
        }
        self.evaluate_g_inner(w, gamma, tol)
    }

    fn evaluate_g_inner(&self, w: C64, gamma: C64, tol: f64) -> Result<QuadratureResult> {
        let contour = (self.contours.base)(w);
        let mut poles = (self.kernel.poles_near)(w, 64.0);
        for p in (self.function.poles_near)(64.0 * gamma.norm()) {
            poles.push(p / gamma);
        }
        contour.validate_clearance(&poles)?;
        let k = &self.kernel.eval;
        let f = &self.function.eval;
        let rate = (self.eval_decay)(w, gamma);
        integrate(&contour, |z| k(w, z) * f(gamma * z), tol, Some(TailDecay { rate }))
    }

    /// Moment `h_m(w) = ∫ K(w,z) z^m dz`, cached in the moment table.
    pub fn moment_h(&self, m: i32, w: C64, tol: f64) -> Result<(C64, f64)> {
        if m < -self.hyp.n0 {
            return Err(MeroError::DomainViolation(format!(
                "moment order m = {m} below -n0 = {}",
                -self.hyp.n0
            )));
        }
        if let Some(hit) = self.moments.get(m, w, tol) {
            return Ok(hit);
        }
        let computed = if let Some(wr) = self.integer_offset(w) {
            let h = 1e-5;
            let a = self.moment_inner(m, C64::new(wr + h, 0.0), tol)?;
            let b = self.moment_inner(m, C64::new(wr - h, 0.0), tol)?;
            (
                (a.value + b.value) / 2.0,
                a.error_estimate + b.error_estimate + 1e-9 * a.value.norm(),
            )
        } else {
            let r = self.moment_inner(m, w, tol)?;
            (r.value, r.error_estimate)
        };
        self.moments.put(m, w, tol, computed.0, computed.1);
        Ok(computed)
    }

    fn moment_inner(&self, m: i32, w: C64, tol: f64) -> Result<QuadratureResult> {
        let contour = self.contours.moment_contour(w);
        contour.validate_clearance(&(self.kernel.poles_near)(w, 64.0))?;
        let k = &self.kernel.eval;
        let rate = (self.moment_decay)(w);
        integrate(&contour, |z| k(w, z) * z.powi(m), tol, Some(TailDecay { rate }))
    }

    /// Truncation `Ã^{γ,n} = Σ_{m=-n0}^n a_m h_m(w) γ^m`. Missing moments are
    /// computed on demand; terms with `a_m = 0` are skipped.
    pub fn truncated_series(&self, n: i32, w: C64, gamma: C64, tol: f64) -> Result<(C64, f64)> {
        let mut acc = C64::new(0.0, 0.0);
        let mut err = 0.0;
        for m in -self.hyp.n0..=n {
            let a = self.function.laurent.coeff(m);
            if a.norm() == 0.0 {
                continue;
            }
            let (h, herr) = self.moment_h(m, w, tol)?;
            let gpow = gamma.powi(m);
            acc += a * h * gpow;
            err += a.norm() * herr * gpow.norm();
        }
        Ok((acc, err))
    }

    /// Formal series terms `c_m = a_m h_m(w)` for `m ≤ max_order`, split at
    /// the problem's split index.
    pub fn assemble_formal_series(
        &self,
        w: C64,
        max_order: i32,
        tol: f64,
    ) -> Result<FormalGammaSeries> {
        if self.function.laurent.max_exponent() < max_order {
            return Err(MeroError::Config(format!(
                "Laurent window tops out at {} < requested order {max_order}",
                self.function.laurent.max_exponent()
            )));
        }
        let mut terms = Vec::new();
        for m in -self.hyp.n0..=max_order {
            let a = self.function.laurent.coeff(m);
            let h = if a.norm() == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                self.moment_h(m, w, tol)?.0
            };
            terms.push(GammaTerm { m, a, h, c: a * h });
        }
        Ok(FormalGammaSeries { terms, split_index: self.split_index })
    }

    /// Spot-checks the declared kernel/function envelopes at sampled contour
    /// points over sampled `(w, γ)`; failure is a hard error since every
    /// downstream bound relies on them.
    pub fn validate_envelopes(&self) -> Result<()> {
        self.hyp.validate()?;
        let slack = 1.0 + 1e-6;
        for &w in self.w_domain.samples.iter().take(4) {
            let contour = (self.contours.hypothesis)(w);
            let points = sample_points(&contour, 32);
            let cw = (self.kernel.c_w)(w) * slack;
            for &z in &points {
                let zn = z.norm();
                if zn < 1e-9 {
                    continue;
                }
                let lhs = (self.kernel.eval)(w, z).norm()
                    * (self.hyp.delta1 * zn).exp()
                    * zn.powi(self.hyp.k0);
                if lhs > cw {
                    return Err(MeroError::HypothesisFailure(format!(
                        "kernel envelope fails at w = {w}, z = {z}: {lhs:.6e} > c_w = {cw:.6e}"
                    )));
                }
            }
            for &gamma in self.u_domain.samples.iter().take(4) {
                let ct = (self.function.c_tilde)(gamma) * slack;
                for &z in &points {
                    let zn = z.norm();
                    if zn < 1e-9 {
                        continue;
                    }
                    let gz = gamma * z;
                    let lhs = (self.function.eval)(gz).norm()
                        * gz.norm().powi(self.hyp.n0)
                        * (-self.hyp.delta2 * zn).exp();
                    if lhs > ct {
                        return Err(MeroError::HypothesisFailure(format!(
                            "function envelope fails at γ = {gamma}, z = {z}: {lhs:.6e} > c̃ = {ct:.6e}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Fixed sample points along a contour (finite parameters for rays).
pub fn sample_points(contour: &Contour, per_segment: usize) -> Vec<C64> {
    let mut out = Vec::new();
    for seg in &contour.segments {
        let (a, b) = seg.t_range();
        if b.is_finite() {
            for i in 0..per_segment {
                let t = a + (b - a) * (i as f64 + 0.5) / per_segment as f64;
                out.push(seg.point(t));
            }
        } else {
            for i in 0..per_segment {
                let t = a + 2.0_f64.powf(i as f64 * 14.0 / per_segment as f64) - 1.0 + 0.05;
                out.push(seg.point(t));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::synthetic_pole_problem;

    #[test]
    fn synthetic_pole_moments_are_factorials() {
        // kernel e^{-z} on ℝ₊ has h_m = m!
        let p = synthetic_pole_problem(1.0, C64::new(0.0, 2.0));
        let w = C64::new(0.0, 0.0);
        for m in 0..6 {
            let (h, _) = p.moment_h(m, w, 1e-11).unwrap();
            let expect = crate::series::factorial(m as u32);
            assert!((h - C64::new(expect, 0.0)).norm() < 1e-8 * expect.max(1.0), "m = {m}");
        }
    }

    #[test]
    fn synthetic_pole_g_matches_closed_form() {
        // g_γ = ∫₀^∞ e^{-z} b/(γz - p) dz has the same value as the
        // assembled series for small |γ| up to the certified remainder
        let b = 1.0;
        let p0 = C64::new(0.0, 2.0);
        let p = synthetic_pole_problem(b, p0);
        let w = C64::new(0.0, 0.0);
        let gamma = C64::new(0.05, 0.0);
        let g = p.evaluate_g(w, gamma, 1e-12).unwrap();
        let (trunc, _) = p.truncated_series(8, w, gamma, 1e-12).unwrap();
        assert!((g.value - trunc).norm() < 1e-8, "g = {}, trunc = {}", g.value, trunc);
    }

    #[test]
    fn truncation_increment_is_one_term() {
        let p = synthetic_pole_problem(1.0, C64::new(0.0, 2.0));
        let w = C64::new(0.0, 0.0);
        let gamma = C64::new(0.1, 0.0);
        let tol = 1e-11;
        let (t4, _) = p.truncated_series(4, w, gamma, tol).unwrap();
        let (t3, _) = p.truncated_series(3, w, gamma, tol).unwrap();
        let a4 = p.function.laurent.coeff(4);
        let (h4, _) = p.moment_h(4, w, tol).unwrap();
        let expect = a4 * h4 * gamma.powi(4);
        // exact assembly identity up to the cancellation roundoff of the sums
        assert!(((t4 - t3) - expect).norm() < 1e-13 * t4.norm().max(1.0));
    }

    #[test]
    fn empty_truncation_is_zero() {
        let p = synthetic_pole_problem(1.0, C64::new(0.0, 2.0));
        let (t, _) = p
            .truncated_series(-p.hyp.n0 - 1, C64::new(0.0, 0.0), C64::new(0.1, 0.0), 1e-10)
            .unwrap();
        assert_eq!(t, C64::new(0.0, 0.0));
    }

    #[test]
    fn envelope_spot_check_passes_for_synthetic() {
        let p = synthetic_pole_problem(1.0, C64::new(0.0, 2.0));
        p.validate_envelopes().unwrap();
    }

    #[test]
    fn envelope_spot_check_fails_with_bad_delta() {
        let mut p = synthetic_pole_problem(1.0, C64::new(0.0, 2.0));
        p.hyp.delta1 = 5.0; // declared decay far stronger than e^{-z}
        assert!(p.validate_envelopes().is_err());
    }

    #[test]
    fn domain_violations_reported() {
        let p = synthetic_pole_problem(1.0, C64::new(0.0, 2.0));
        let err = p.evaluate_g(C64::new(0.0, 0.0), C64::new(0.0, 0.0), 1e-8);
        assert!(matches!(err, Err(MeroError::DomainViolation(_))));
    }

    #[test]
    fn moment_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("mero-cache-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let mut p = synthetic_pole_problem(1.0, C64::new(0.0, 2.0));
        p.moments = MomentTable::persistent(&dir, "synthetic_pole");
        let w = C64::new(0.0, 0.0);
        let (h1, e1) = p.moment_h(3, w, 1e-10).unwrap();
        // a fresh table reads the persisted value back
        let table = MomentTable::persistent(&dir, "synthetic_pole");
        let (h2, e2) = table.get(3, w, 1e-10).expect("persisted");
        assert_eq!(h1, h2);
        assert_eq!(e1, e2);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
