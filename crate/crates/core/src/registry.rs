//! Problem registry: builds `TransformProblem`s by id for the CLI layer and
//! the test suites.

use crate::contour::{Contour, ContourFamily, Segment};
use crate::error::{MeroError, Result};
use crate::series::LaurentSeries;
use crate::transform::{
    DecayHypotheses, Domain, FunctionSpec, KernelSpec, MomentTable, TransformProblem,
};
use crate::C64;
use std::sync::Arc;

/// Parameters accepted by the builders; fields irrelevant to a given problem
/// are ignored.
#[derive(Debug, Clone)]
pub struct ProblemParams {
    pub alpha: f64,
    pub theta_tilde: f64,
    pub epsilon: Option<f64>,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub laurent_window: i32,
}

impl Default for ProblemParams {
    fn default() -> Self {
        ProblemParams {
            alpha: 0.75,
            theta_tilde: 0.0,
            epsilon: None,
            a: 1.0,
            b: 1.0,
            c: 2.0,
            laurent_window: 64,
        }
    }
}

/// Known problem ids.
pub const PROBLEM_IDS: &[&str] = &[
    "faddeev",
    "gamma",
    "recip_gamma",
    "riemann_zeta",
    "hurwitz_zeta",
    "gauss_2f1",
    "airy",
    "synthetic_pole",
];

/// Builds a registered problem by id.
pub fn build(id: &str, params: &ProblemParams) -> Result<TransformProblem> {
    match id {
        "faddeev" => Ok(crate::faddeev::faddeev_problem(params.theta_tilde)?.problem),
        "gamma" => crate::classical::gamma_problem(params.alpha, params.epsilon.unwrap_or(1.0)),
        "recip_gamma" => {
            crate::classical::recip_gamma_problem(params.alpha, params.epsilon.unwrap_or(1.0))
        }
        "riemann_zeta" => {
            crate::classical::zeta_problem(params.alpha, params.epsilon.unwrap_or(1.0))
        }
        "hurwitz_zeta" => crate::classical::hurwitz_problem(params.epsilon.unwrap_or(1.0)),
        "gauss_2f1" => crate::classical::gauss2f1_problem(params.a, params.b, params.c, 2.0),
        "airy" => crate::classical::airy_problem(0.25, params.theta_tilde_or_airy_default()),
        "synthetic_pole" => Ok(synthetic_pole_problem(params.b, C64::new(0.0, 2.0))),
        other => Err(MeroError::Config(format!("unknown problem id '{other}'"))),
    }
}

impl ProblemParams {
    fn theta_tilde_or_airy_default(&self) -> f64 {
        if self.theta_tilde == 0.0 {
            std::f64::consts::FRAC_PI_3
        } else {
            self.theta_tilde
        }
    }
}

/// Synthetic single-pole problem: kernel `e^{-z}` on `ℝ₊` (moments `m!`),
/// `f(x) = b/(x - p)` with a pole off the contour sector. Exercises the
/// full pipeline with closed-form oracles.
pub fn synthetic_pole_problem(b: f64, pole: C64) -> TransformProblem {
    let window: i32 = 48;
    // a_m = -b / p^{m+1}
    let coeffs: Vec<C64> = (0..=window).map(|m| -b / pole.powi(m + 1)).collect();
    let pn = pole.norm();
    let laurent = LaurentSeries::new(0, coeffs, pn)
        .expect("synthetic window")
        .with_kappa(Arc::new(move |r: f64| b.abs() / (pn - r)));

    let ray: Arc<dyn Fn(C64) -> Contour + Send + Sync> =
        Arc::new(|_w| Contour::new(vec![Segment::ray(C64::new(0.0, 0.0), 0.0)]));

    let kernel = KernelSpec {
        eval: Arc::new(|_w, z: C64| (-z).exp()),
        k0: 0,
        delta1: 1.0,
        c_w: Arc::new(|_| 1.0),
        inner_radius: Arc::new(|_| f64::INFINITY),
        poles_near: Arc::new(|_, _| Vec::new()),
    };
    // |f(γz)| ≤ |b| / dist(e^{i Arg γ} ℝ₊, p); over the declared U-sector the
    // distance stays above |p| sin(π/2 - 0.3) for p on the imaginary axis.
    let c_tilde_val = b.abs() / (pn * (std::f64::consts::FRAC_PI_2 - 0.3).sin());
    let fpole = pole;
    let function = FunctionSpec {
        eval: Arc::new(move |x: C64| b / (x - fpole)),
        laurent,
        delta2: 0.0,
        c_tilde: Arc::new(move |_| c_tilde_val),
        c_floor: c_tilde_val,
        poles_near: Arc::new(move |r| if fpole.norm() <= r { vec![fpole] } else { vec![] }),
    };

    TransformProblem {
        id: "synthetic_pole".into(),
        kernel,
        function,
        contours: ContourFamily::uniform(ray),
        w_domain: Domain::all(vec![C64::new(0.0, 0.0)], "any w (kernel w-independent)"),
        u_domain: Domain {
            contains: Arc::new(|g: C64| g.norm() <= 0.5 && g.arg().abs() <= 0.3),
            samples: vec![C64::new(0.1, 0.0), C64::new(0.3, 0.05), C64::new(0.45, -0.1)],
            description: "|γ| ≤ 1/2, |Arg γ| ≤ 0.3".into(),
        },
        split_index: 1,
        hyp: DecayHypotheses {
            delta1: 1.0,
            delta2: 0.0,
            c_floor: c_tilde_val,
            b: 1.0,
            d: 1,
            k0: 0,
            n0: 0,
            delta_tilde: None,
            rho_w: None,
            l_hat: None,
            uniform_b: true,
        },
        eval_decay: Arc::new(|_, _| 0.9),
        moment_decay: Arc::new(|_| 0.75),
        integer_limit: None,
        phi_tail_envelope: None,
        moments: MomentTable::in_memory(),
    }
}
