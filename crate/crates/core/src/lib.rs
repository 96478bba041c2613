//! Numerical meromorphic transforms `g_γ(w) = ∫_Γ K(w,z) f(γz) dz`.
//!
//! The crate evaluates such transforms by adaptive contour quadrature,
//! assembles their asymptotic expansions `Σ a_m h_m(w) γ^m`, certifies the
//! truncation remainders against explicit constants, and resums the divergent
//! tail by Borel-Laplace summation, including Stokes-jump computation from
//! residue sums.
//!
//! Module map:
//!
//! - [`contour`]: oriented piecewise-smooth contours and adaptive quadrature
//! - [`series`]: Laurent windows, `κ(r)` majorants, Bernoulli numbers, the
//!   formal Borel transform and Gevrey-growth diagnostics
//! - [`transform`]: kernel/function/contour problem bundles, moments `h_m(w)`
//!   and truncated expansions
//! - [`bounds`]: remainder-bound constants and empirical certificates
//! - [`borel`]: Laplace transforms along rays, Borel sums via integral and
//!   pole-sum representations, Stokes jumps
//! - [`faddeev`]: Faddeev's quantum dilogarithm worked end to end
//! - [`classical`]: Gamma, 1/Gamma, Riemann and Hurwitz zeta, Gauss 2F1 and
//!   Airy as preconfigured problems
//! - [`registry`]: problem lookup by id for the CLI layer

pub mod borel;
pub mod bounds;
pub mod classical;
pub mod contour;
pub mod error;
pub mod faddeev;
pub mod registry;
pub mod series;
pub mod special;
pub mod transform;

pub use error::MeroError;

/// Shorthand used throughout the crate.
pub type C64 = num_complex::Complex64;

/// `e^{iθ}` as a complex number.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}
