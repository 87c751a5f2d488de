//! The b-hypergeometric functions: `F_b` via a Barnes-type contour integral
//! and `Psi_b` via a deformed Euler-type integral, together with their
//! defining finite-difference equations, mutual relation, special values, and
//! asymptotic expansions.
//!
//! Conventions:
//! - `F_b(alpha, beta; gamma; y) = (1/i) * S_b(gamma)/(S_b(alpha) S_b(beta))
//!    * int ds e^{2 pi i s y} S_b(alpha+s) S_b(beta+s) / (S_b(gamma+s) S_b(Q+s))`
//!   over a vertical contour passing right of the pole families
//!   `s = -alpha - (nb + m/b)`, `s = -beta - (nb + m/b)` and left of
//!   `s = nb + m/b`, `s = Q - gamma + (nb + m/b)`.
//! - `Psi_b(alpha, beta; gamma; y) = (1/i) * int ds e^{2 pi i s beta}
//!    G_b(s+y) G_b(s+gamma-beta) / (G_b(s+y+alpha) G_b(s+Q))`
//!   with `s = 0` passed on the right and `s = -y` on the left.
//!
//! The two are related by `Psi_b(a,b;c;y) = G_b(b) G_b(c-b) / G_b(c)
//! * F_b(a,b;c;y - (c-a-b+Q)/2)`, and each satisfies a second-order
//! b-difference equation; both facts are exercised by the tests and suites.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::VerticalContour;
use crate::special_fn::{log_gb, log_sb, BContext};

const I: Complex64 = Complex64::new(0.0, 1.0);
const PI: f64 = std::f64::consts::PI;

/// Parameter tuple for the b-hypergeometric functions: upper parameters
/// `alpha`, `beta`, lower parameter `gamma`, and the argument `y`.
///
/// The guaranteed-admissible regime is `Re(alpha) = Re(beta) = Q/2` with
/// `Re(gamma)` near `Q`; outside it, admissibility of the integration contour
/// is checked dynamically and inadmissible parameters error with
/// [`Error::ContourPinch`] or [`Error::Precondition`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub y: Complex64,
}

impl HypParams {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64, y: Complex64) -> Self {
        HypParams {
            alpha,
            beta,
            gamma,
            y,
        }
    }

    /// The same parameters with the argument replaced.
    pub fn with_y(&self, y: Complex64) -> Self {
        HypParams { y, ..*self }
    }
}

/// Vertical-tail data for a Fourier-type integrand whose upper tail behaves
/// like `e^{2 pi i s c_up}` and lower tail like `e^{2 pi i s c_dn}`: decay
/// rates (nats per unit height) and tilt angles that restore decay when the
/// real part of the coefficient vanishes but its imaginary part does not.
pub(crate) fn tail_plan(c_up: Complex64, c_dn: Complex64) -> Result<(f64, f64, f64, f64)> {
    let decay_up = 2.0 * PI * c_up.re;
    let decay_down = -2.0 * PI * c_dn.re;
    if decay_up <= 0.0 && c_up.im.abs() < 1e-9 {
        return Err(Error::Precondition(format!(
            "integrand does not decay along the upper tail (coefficient {c_up}); \
             the argument lies at or beyond the edge of the analyticity domain"
        )));
    }
    if decay_down <= 0.0 && c_dn.im.abs() < 1e-9 {
        return Err(Error::Precondition(format!(
            "integrand does not decay along the lower tail (coefficient {c_dn}); \
             the argument lies at or beyond the edge of the analyticity domain"
        )));
    }
    let tilt_up = if c_up.re < 0.2 {
        std::f64::consts::FRAC_PI_4.copysign(c_up.im)
    } else {
        0.0
    };
    let tilt_down = if c_dn.re > -0.2 {
        std::f64::consts::FRAC_PI_4.copysign(c_dn.im)
    } else {
        0.0
    };
    Ok((decay_up, decay_down, tilt_up, tilt_down))
}

/// Places a vertical contour in the window `(left_edge, right_edge)` between
/// the pole families; when the window is too narrow (or inverted, as happens
/// for `Psi_b` with `Re y <= 0`) the line sits at the window midpoint and the
/// detour machinery weaves around the imaginary-staggered poles, still
/// erroring on a genuine pinch.
///
/// `amp_rate` is the growth rate of the integrand's modulus with the line's
/// real position (d log|f| / d sigma, e.g. `-2 pi Im y` for a factor
/// `e^{2 pi i s y}`): when it is large, a midpoint placement amplifies the
/// integrand exponentially relative to the result and the quadrature's
/// absolute accuracy cannot reach the requested tolerance, so the line slides
/// toward the window edge that minimizes the amplitude, keeping a pole margin.
fn place_contour(
    ctx: &BContext,
    left_edge: f64,
    right_edge: f64,
    amp_rate: f64,
    left: Vec<Complex64>,
    right: Vec<Complex64>,
) -> Result<VerticalContour> {
    let width = right_edge - left_edge;
    if width > 2.0 * ctx.clearance {
        let cl = ctx.clearance.min(0.25 * width);
        let mut contour =
            VerticalContour::at_window_midpoint(left_edge, right_edge, left, right, cl)?;
        if amp_rate.abs() > 3.0 {
            let margin = (3.0 * cl).min(0.25 * width);
            contour.sigma = if amp_rate < 0.0 {
                right_edge - margin
            } else {
                left_edge + margin
            };
        }
        Ok(contour)
    } else {
        Ok(VerticalContour::at(
            0.5 * (left_edge + right_edge),
            left,
            right,
            ctx.clearance,
        ))
    }
}

/// The Barnes-type integral for `F_b(alpha, beta; gamma; y)`.
pub fn f_b(ctx: &BContext, p: &HypParams, tol: f64) -> Result<Complex64> {
    let q = ctx.big_q;
    let (alpha, beta, gamma, y) = (p.alpha, p.beta, p.gamma, p.y);
    // Up/down tail phase coefficients: the S_b ratio contributes
    // e^{-/+ i pi s (alpha+beta-gamma-Q)} as Im s -> +/-inf.
    let shift = (alpha + beta - gamma - q) / 2.0;
    let (decay_up, decay_down, tilt_up, tilt_down) = tail_plan(y - shift, y + shift)?;
    let offsets = ctx.lattice_offsets(6);
    let mut left: Vec<Complex64> = Vec::with_capacity(2 * offsets.len());
    let mut right: Vec<Complex64> = Vec::with_capacity(2 * offsets.len());
    for &l in &offsets {
        left.push(-alpha - l);
        left.push(-beta - l);
        right.push(Complex64::from(l));
        right.push(q - gamma + l);
    }
    let contour = place_contour(
        ctx,
        (-alpha.re).max(-beta.re),
        0.0f64.min(q - gamma.re),
        -2.0 * PI * y.im,
        left,
        right,
    )?
    .with_tilts(tilt_up, tilt_down);
    // Integrand evaluations may legitimately approach the contour's detour
    // distance from a lattice point; reject only within half the clearance.
    let ctx2 = {
        let mut c = ctx.clone();
        c.clearance *= 0.5;
        c
    };
    let f = move |s: Complex64| -> Complex64 {
        let terms = (|| -> Result<Complex64> {
            Ok(2.0 * PI * I * s * y + log_sb(&ctx2, alpha + s)? + log_sb(&ctx2, beta + s)?
                - log_sb(&ctx2, gamma + s)?
                - log_sb(&ctx2, q + s)?)
        })();
        match terms {
            Ok(t) => t.exp(),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let integral = contour.integrate(&f, decay_up, decay_down, tol)?.value;
    let prefactor = (log_sb(ctx, gamma)? - log_sb(ctx, alpha)? - log_sb(ctx, beta)?).exp();
    Ok(prefactor / I * integral)
}

/// The deformed Euler-type integral for `Psi_b(alpha, beta; gamma; y)`.
pub fn psi_b(ctx: &BContext, p: &HypParams, tol: f64) -> Result<Complex64> {
    let q = ctx.big_q;
    let (alpha, beta, gamma, y) = (p.alpha, p.beta, p.gamma, p.y);
    // Upward the G_b ratio tends to a constant, leaving e^{2 pi i s beta};
    // downward it contributes e^{2 pi i s (gamma - alpha - beta - Q)}.
    let (decay_up, decay_down, tilt_up, tilt_down) = tail_plan(beta, gamma - alpha - q)?;
    let offsets = ctx.lattice_offsets(6);
    let mut left: Vec<Complex64> = Vec::with_capacity(2 * offsets.len());
    let mut right: Vec<Complex64> = Vec::with_capacity(2 * offsets.len());
    for &l in &offsets {
        left.push(-y - l);
        left.push(beta - gamma - l);
        right.push(Complex64::from(l));
        right.push(q - y - alpha + l);
    }
    // For Re y < 0 the pole s = -y sits right of s = 0 and the defining
    // contour would have to weave between two poles that collide in imaginary
    // part as y approaches the negative real axis. Continue analytically
    // instead: run the line right of s = 0 and add back the crossed residue,
    // 2 pi i Res_{s=0} = -i G_b(y) G_b(gamma - beta) / G_b(y + alpha)
    // (from G_b(Q + s) ~ -2 pi s near s = 0).
    let step = ctx.b.min(1.0 / ctx.b);
    let cross_zero = y.re < 0.0 && -y.re < step - 2.0 * ctx.clearance;
    let (left_edge, right_edge, correction) = if cross_zero {
        right.retain(|p| p.norm() > 1e-12);
        left.push(Complex64::new(0.0, 0.0));
        let corr = (log_gb(ctx, y)? + log_gb(ctx, gamma - beta)? - log_gb(ctx, y + alpha)?).exp();
        (
            (-y.re).max(beta.re - gamma.re),
            step.min(q - y.re - alpha.re),
            corr,
        )
    } else {
        (
            (-y.re).max(beta.re - gamma.re),
            0.0f64.min(q - y.re - alpha.re),
            Complex64::new(0.0, 0.0),
        )
    };
    let contour = place_contour(
        ctx,
        left_edge,
        right_edge,
        -2.0 * PI * beta.im,
        left,
        right,
    )?
    .with_tilts(tilt_up, tilt_down);
    // Integrand evaluations may legitimately approach the contour's detour
    // distance from a lattice point; reject only within half the clearance.
    let ctx2 = {
        let mut c = ctx.clone();
        c.clearance *= 0.5;
        c
    };
    let f = move |s: Complex64| -> Complex64 {
        let terms = (|| -> Result<Complex64> {
            Ok(2.0 * PI * I * s * beta + log_gb(&ctx2, s + y)?
                + log_gb(&ctx2, s + gamma - beta)?
                - log_gb(&ctx2, s + y + alpha)?
                - log_gb(&ctx2, s + q)?)
        })();
        match terms {
            Ok(t) => t.exp(),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let integral = contour.integrate(&f, decay_up, decay_down, tol)?.value;
    Ok(integral / I + correction)
}

/// The coefficient of the `G_b(y)` singularity of `y -> Psi_b(alpha, beta;
/// gamma; y)` at `y = 0`: `G_b(gamma - beta) / G_b(alpha)` in closed form.
/// Since `G_b(y) ~ 1/(2 pi y)` near `y = 0`, the plain residue of `Psi_b`
/// at `y = 0` is this value divided by `2 pi`.
pub fn psi_singular_part(ctx: &BContext, p: &HypParams) -> Result<Complex64> {
    Ok((log_gb(ctx, p.gamma - p.beta)? - log_gb(ctx, p.alpha)?).exp())
}

/// Residual of the b-hypergeometric difference equation satisfied by
/// `x -> F_b(alpha, beta; gamma; -ix)`:
///
/// `([d_x + alpha][d_x + beta] - e^{-2 pi b x} [d_x][d_x + gamma - Q]) F = 0`,
///
/// where `[d_x + a]` is the finite-difference bracket of [`crate::brackets`].
/// Returns `(residual, scale)` with `scale` the larger magnitude of the two
/// operator terms, so `|residual| / scale` is the relative residual. The
/// composed brackets need `F` only at the arguments `-i x`, `-i x +- b`, so
/// three contour evaluations are shared by both terms.
pub fn fb_difference_residual(
    ctx: &BContext,
    p: &HypParams,
    x: Complex64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let q = ctx.big_q;
    let fm = f_b(ctx, &p.with_y(-I * x - ctx.b), tol)?;
    let f0 = f_b(ctx, &p.with_y(-I * x), tol)?;
    let fp = f_b(ctx, &p.with_y(-I * x + ctx.b), tol)?;
    // [d+a1][d+a2] f(x) = (e^{i pi b (a1+a2)} f(x+ib)
    //   - 2 cos(pi b (a1-a2)) f(x) + e^{-i pi b (a1+a2)} f(x-ib)) / (2i sin pi b^2)^2,
    // and f(x +- ib) corresponds to y = -ix +- b.
    let denom = {
        let d = 2.0 * I * ctx.sin_pi_b2();
        d * d
    };
    let pair = |a1: Complex64, a2: Complex64| -> Complex64 {
        let e = |z: Complex64| (I * PI * ctx.b * z).exp();
        (e(a1 + a2) * fp - (e(a1 - a2) + e(a2 - a1)) * f0 + fm / e(a1 + a2)) / denom
    };
    let term_a = pair(p.alpha, p.beta);
    let term_b = (-2.0 * PI * ctx.b * x).exp() * pair(Complex64::new(0.0, 0.0), p.gamma - q);
    Ok((term_a - term_b, term_a.norm().max(term_b.norm())))
}

/// Residual of the difference equation annihilating `y -> Psi_b`:
///
/// `L_b = e^{-2 pi i b y} (1 - T) (1 - e^{2 pi i b (gamma - Q)} T)
///        - (1 - e^{2 pi i b alpha} T)(1 - e^{2 pi i b beta} T)`,
///
/// with `T` the shift `y -> y + b`. Returns `(residual, scale)` as in
/// [`fb_difference_residual`].
pub fn lb_residual(ctx: &BContext, p: &HypParams, tol: f64) -> Result<(Complex64, f64)> {
    let q = ctx.big_q;
    let e = |z: Complex64| (2.0 * PI * I * ctx.b * z).exp();
    let p0 = psi_b(ctx, p, tol)?;
    let p1 = psi_b(ctx, &p.with_y(p.y + ctx.b), tol)?;
    let p2 = psi_b(ctx, &p.with_y(p.y + 2.0 * ctx.b), tol)?;
    let g = e(p.gamma - q);
    let term_a = (p0 - (1.0 + g) * p1 + g * p2) / e(p.y);
    let term_b = p0 - (e(p.alpha) + e(p.beta)) * p1 + e(p.alpha + p.beta) * p2;
    Ok((term_a - term_b, term_a.norm().max(term_b.norm())))
}
