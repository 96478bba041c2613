//! Property-based checks of the structural invariants: quadrature linearity
//! and orientation behaviour, split/sum consistency, scale invariance of the
//! tangent-angle bound, majorant domination, and the Borel round trip.

use merotrans::contour::{integrate, make_rotated_line, Contour, Segment, TailDecay};
use merotrans::series::{borel_transform, factorial, FormalGammaSeries, GammaTerm, LaurentSeries};
use merotrans::C64;
use proptest::prelude::*;

fn finite_contour(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Contour {
    Contour::new(vec![
        Segment::line(C64::new(a.0, a.1), C64::new(b.0, b.1)),
        Segment::line(C64::new(b.0, b.1), C64::new(c.0, c.1)),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integrate_is_linear(
        alpha_re in -2.0..2.0f64, alpha_im in -2.0..2.0f64,
        beta_re in -2.0..2.0f64, beta_im in -2.0..2.0f64,
    ) {
        let c = finite_contour((-1.0, 0.2), (0.5, 1.0), (2.0, -0.4));
        let alpha = C64::new(alpha_re, alpha_im);
        let beta = C64::new(beta_re, beta_im);
        let f = |z: C64| (z * C64::new(0.3, 0.1)).exp();
        let g = |z: C64| z * z + 1.0;
        let tol = 1e-11;
        let i_f = integrate(&c, f, tol, None).unwrap();
        let i_g = integrate(&c, g, tol, None).unwrap();
        let i_mix = integrate(&c, |z| alpha * f(z) + beta * g(z), tol, None).unwrap();
        let lhs = (i_mix.value - alpha * i_f.value - beta * i_g.value).norm();
        let budget = i_mix.error_estimate
            + alpha.norm() * i_f.error_estimate
            + beta.norm() * i_g.error_estimate
            + 1e-12;
        prop_assert!(lhs <= budget, "lhs = {lhs}, budget = {budget}");
    }

    #[test]
    fn split_then_sum_matches_direct(r in 0.3..2.5f64) {
        let c = make_rotated_line(0.25, 0.02).unwrap();
        let f = |z: C64| (-z * z * 0.7).exp();
        let tol = 1e-10;
        let tail = Some(TailDecay { rate: 0.6 });
        let direct = integrate(&c, f, tol, tail).unwrap();
        let (inner, outer) = c.split_at_radius(r);
        let a = integrate(&inner, f, tol, tail).unwrap();
        let b = integrate(&outer, f, tol, tail).unwrap();
        let lhs = (direct.value - a.value - b.value).norm();
        let budget = 2.0 * (direct.error_estimate + a.error_estimate + b.error_estimate);
        prop_assert!(lhs <= budget.max(1e-12), "r = {r}: lhs = {lhs}, budget = {budget}");
    }

    #[test]
    fn orientation_reversal_negates(theta in -0.6..0.6f64, off in 0.0..0.5f64) {
        let c = make_rotated_line(theta, off).unwrap();
        let f = |z: C64| (-(z - C64::new(0.2, 0.0)) * z).exp();
        let fwd = integrate(&c, f, 1e-9, Some(TailDecay { rate: 0.4 })).unwrap();
        let bwd = integrate(&c.reversed(), f, 1e-9, Some(TailDecay { rate: 0.4 })).unwrap();
        prop_assert_eq!(fwd.value, -bwd.value);
    }

    #[test]
    fn cos_bound_scale_free(
        lam in 0.05..20.0f64,
        ax in -2.0..2.0f64, ay in 0.1..2.0f64,
        bx in -2.0..2.0f64, by in 0.1..2.0f64,
    ) {
        prop_assume!(((ax - bx).abs() + (ay - by).abs()) > 1e-3);
        let base = Contour::new(vec![Segment::line(C64::new(ax, ay), C64::new(bx, by))]);
        let scaled = Contour::new(vec![Segment::line(
            C64::new(ax, ay) * lam,
            C64::new(bx, by) * lam,
        )]);
        let b0 = base.cos_theta_bound(None);
        let b1 = scaled.cos_theta_bound(None);
        prop_assert!((b0 - b1).abs() < 1e-10, "{b0} vs {b1}");
    }

    #[test]
    fn kappa_monotone_and_dominates(seed in 1u64..500) {
        // pseudo-random positive-radius window with n0 = 0
        let coeffs: Vec<C64> = (0..24)
            .map(|m| {
                let x = ((seed.wrapping_mul(6364136223846793005).wrapping_add((m as u64).wrapping_mul(1442695040888963407))) >> 33) as f64
                    / (1u64 << 31) as f64;
                C64::new((x - 0.5) * 0.25_f64.powi(m as i32), 0.0)
            })
            .collect();
        let f = LaurentSeries::new(0, coeffs, 4.0).unwrap();
        let mut prev = 0.0;
        for i in 1..12 {
            let r = 0.25 * i as f64;
            let k = f.kappa(r).unwrap();
            prop_assert!(k + 1e-12 >= prev, "κ not monotone at r = {r}");
            prev = k;
            for m in 0..10 {
                prop_assert!(k + 1e-12 >= f.coeff(m).norm() * r.powi(m));
            }
        }
    }

    #[test]
    fn borel_laplace_term_roundtrip(seed in 1u64..200) {
        let terms: Vec<GammaTerm> = (1..=16)
            .map(|m| {
                let x = ((seed.wrapping_mul(2862933555777941757).wrapping_add((m as u64).wrapping_mul(3037000493))) >> 33) as f64
                    / (1u64 << 31) as f64;
                let c = C64::new(x - 0.4, 0.2 * x);
                GammaTerm { m, a: c, h: C64::new(1.0, 0.0), c }
            })
            .collect();
        let g = FormalGammaSeries { terms: terms.clone(), split_index: 1 };
        let b = borel_transform(&g).unwrap();
        for t in &terms {
            let back = b.coeffs[(t.m - 1) as usize] * factorial(t.m as u32 - 1);
            prop_assert!((back - t.c).norm() <= 1e-13 * t.c.norm().max(1e-6));
        }
    }
}
