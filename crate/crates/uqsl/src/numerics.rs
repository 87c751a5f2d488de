//! Complex-valued adaptive quadrature over parametrized contours, certified
//! tail truncation for infinite contours, and small-circle residue extraction.
//!
//! The integrands served here (ratios of double sine functions against
//! exponential weights) are smooth and exponentially decaying along every
//! contour we use, so an adaptive Gauss-Kronrod rule with bisection on the
//! error estimate is the whole engine. Infinite contours are realized as
//! finite paths that are doubled outward until the last chunk contributes
//! less than a tenth of the requested tolerance.

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A piecewise-linear integration contour in the complex plane.
#[derive(Debug, Clone)]
pub struct PathSpec {
    /// Ordered line segments; consecutive segments share endpoints.
    pub segments: Vec<(Complex64, Complex64)>,
    /// Expected exponential decay rate of the integrand along the final
    /// segments, in nats per unit arclength; used as the initial guess for
    /// tail truncation.
    pub tail_decay_hint: f64,
    /// Minimum distance the path keeps from declared poles.
    pub clearance: f64,
}

impl PathSpec {
    /// A contour made of straight segments through the given waypoints.
    pub fn through(points: &[Complex64], tail_decay_hint: f64, clearance: f64) -> Self {
        assert!(points.len() >= 2, "a path needs at least two waypoints");
        let segments = points.windows(2).map(|w| (w[0], w[1])).collect();
        PathSpec {
            segments,
            tail_decay_hint,
            clearance,
        }
    }

    /// A single straight segment from `a` to `b`.
    pub fn segment(a: Complex64, b: Complex64) -> Self {
        PathSpec {
            segments: vec![(a, b)],
            tail_decay_hint: 1.0,
            clearance: 0.0,
        }
    }
}

/// Result of a quadrature: value, an absolute error estimate, and the number
/// of integrand evaluations spent.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl QuadResult {
    fn zero() -> Self {
        QuadResult {
            value: Complex64::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            evaluations: 0,
        }
    }

    fn accumulate(&mut self, other: &QuadResult) {
        self.value += other.value;
        self.abs_error_estimate += other.abs_error_estimate;
        self.evaluations += other.evaluations;
    }
}

// 15-point Kronrod abscissae on [-1, 1] (positive half; the rule is symmetric)
// with the embedded 7-point Gauss rule on the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

/// One 15-point Gauss-Kronrod panel over the straight segment `a -> b`.
/// Returns (Kronrod value, error estimate, evaluations).
fn gk15<F: Fn(Complex64) -> Complex64>(
    f: &F,
    a: Complex64,
    b: Complex64,
) -> Result<(Complex64, f64, f64, usize)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut resk = Complex64::new(0.0, 0.0);
    let mut resg = Complex64::new(0.0, 0.0);
    let mut resabs = 0.0f64;
    let mut evals = 0usize;
    for (j, &x) in XGK.iter().enumerate() {
        let nodes: &[Complex64] = if x == 0.0 {
            &[center]
        } else {
            &[center - half * x, center + half * x]
        };
        let mut fsum = Complex64::new(0.0, 0.0);
        for &z in nodes {
            let fv = f(z);
            if !fv.re.is_finite() || !fv.im.is_finite() {
                return Err(Error::PoleHit { at: z });
            }
            fsum += fv;
            resabs += WGK[j] * fv.norm();
            evals += 1;
        }
        resk += WGK[j] * fsum;
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
    }
    let value = half * resk;
    let err = (half * (resk - resg)).norm();
    Ok((value, err, half.norm() * resabs, evals))
}

/// Adaptive bisection of one segment down to an absolute tolerance. `budget`
/// is a shared integrand-evaluation allowance; exhausting it aborts the whole
/// quadrature with [`Error::NonConvergence`] instead of grinding on.
fn adaptive_segment<F: Fn(Complex64) -> Complex64>(
    f: &F,
    a: Complex64,
    b: Complex64,
    tol: f64,
    depth: usize,
    budget: &mut i64,
) -> Result<QuadResult> {
    let (value, err, l1, evals) = gk15(f, a, b)?;
    *budget -= evals as i64;
    // The floor keeps bisection from chasing evaluation noise: once the panel
    // estimate sits at the roundoff scale of the panel's L1 mass, refinement
    // cannot improve it. Exhausting the evaluation budget also stops
    // refinement; the caller's final error check decides whether the
    // accumulated estimate is acceptable.
    let floor = 1e-14 * l1;
    if err <= tol.max(floor) || depth == 0 || *budget < 0 {
        if err > tol.max(floor) && std::env::var("UQSL_DEBUG_PANEL").is_ok() {
            eprintln!(
                "panel [{a:?} -> {b:?}] stuck: err {err:.3e} tol {tol:.3e} floor {floor:.3e} depth {depth} budget {budget}"
            );
        }
        return Ok(QuadResult {
            value,
            abs_error_estimate: err,
            evaluations: evals,
        });
    }
    let mid = 0.5 * (a + b);
    let left = adaptive_segment(f, a, mid, 0.5 * tol, depth - 1, budget)?;
    let right = adaptive_segment(f, mid, b, 0.5 * tol, depth - 1, budget)?;
    let mut out = QuadResult::zero();
    out.accumulate(&left);
    out.accumulate(&right);
    out.evaluations += evals;
    Ok(out)
}

const MAX_DEPTH: usize = 28;

/// Evaluation allowance for one top-level quadrature call.
const EVAL_BUDGET: i64 = 2_000_000;

/// Integrates `f` along the piecewise-linear contour `path`, adaptively
/// refining each segment until the combined error estimate is below `tol`.
///
/// Errors with [`Error::NonConvergence`] when the refinement budget is
/// exhausted and with [`Error::PoleHit`] when a non-finite value is met on
/// the path (the caller must then re-deform the contour).
pub fn integrate_path<F: Fn(Complex64) -> Complex64>(
    f: &F,
    path: &PathSpec,
    tol: f64,
) -> Result<QuadResult> {
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(!path.segments.is_empty(), "path must have segments");
    let per_segment = tol / path.segments.len() as f64;
    let mut out = QuadResult::zero();
    let mut budget = EVAL_BUDGET;
    for &(a, b) in &path.segments {
        if a == b {
            continue;
        }
        let seg = adaptive_segment(f, a, b, per_segment, MAX_DEPTH, &mut budget)?;
        out.accumulate(&seg);
    }
    if out.abs_error_estimate > tol.max(1e-15 * out.value.norm()) * 4.0 {
        return Err(Error::NonConvergence {
            estimate: out.abs_error_estimate,
            tol,
        });
    }
    Ok(out)
}

/// Integrates `f` along the full straight line `base + t * dir`, `t` from
/// `-inf` to `+inf`, with `dir` a unit direction. The line is realized as a
/// finite core `|t| <= half0` plus outward-doubled chunks on each side; a side
/// is truncated once its last chunk contributes less than `tol / 10`.
pub fn integrate_line<F: Fn(Complex64) -> Complex64>(
    f: &F,
    base: Complex64,
    dir: Complex64,
    decay_hint: f64,
    tol: f64,
) -> Result<QuadResult> {
    let half0 = (8.0 / decay_hint.max(1e-2)).max(2.0);
    let mut out = QuadResult::zero();
    let mut budget = EVAL_BUDGET;
    let core = adaptive_segment(
        f,
        base - half0 * dir,
        base + half0 * dir,
        0.25 * tol,
        MAX_DEPTH,
        &mut budget,
    )?;
    out.accumulate(&core);
    for side in [1.0f64, -1.0] {
        let mut lo = half0;
        let mut converged = false;
        for _ in 0..48 {
            let hi = 2.0 * lo;
            let (a, b) = if side > 0.0 {
                (base + lo * dir, base + hi * dir)
            } else {
                (base - hi * dir, base - lo * dir)
            };
            let chunk = adaptive_segment(f, a, b, 0.05 * tol, MAX_DEPTH, &mut budget)?;
            out.accumulate(&chunk);
            if chunk.value.norm() + chunk.abs_error_estimate < 0.1 * tol {
                converged = true;
                break;
            }
            lo = hi;
        }
        if !converged {
            return Err(Error::NonConvergence {
                estimate: out.abs_error_estimate.max(tol),
                tol,
            });
        }
    }
    Ok(out)
}

/// Integrates `f` along the semi-infinite ray `start + u * dir`, `u` from `0`
/// to `+inf` (`dir` a unit direction), by outward chunk doubling; terminates
/// once the last chunk contributes less than `tol / 10`.
pub fn integrate_ray<F: Fn(Complex64) -> Complex64>(
    f: &F,
    start: Complex64,
    dir: Complex64,
    tol: f64,
) -> Result<QuadResult> {
    let mut out = QuadResult::zero();
    let mut budget = EVAL_BUDGET;
    let mut lo = 0.0f64;
    let mut len = 2.0f64;
    for _ in 0..48 {
        let hi = lo + len;
        let chunk = adaptive_segment(
            f,
            start + lo * dir,
            start + hi * dir,
            0.1 * tol,
            MAX_DEPTH,
            &mut budget,
        )?;
        out.accumulate(&chunk);
        if chunk.value.norm() + chunk.abs_error_estimate < 0.1 * tol {
            return Ok(out);
        }
        lo = hi;
        len *= 2.0;
    }
    Err(Error::NonConvergence {
        estimate: out.abs_error_estimate.max(tol),
        tol,
    })
}

/// `(1 / 2 pi i) * closed circle integral` of `f` around `z0` with the given
/// radius: the residue when `z0` is the only (simple or higher) pole inside,
/// zero when `f` is analytic inside.
pub fn residue_at<F: Fn(Complex64) -> Complex64>(
    f: &F,
    z0: Complex64,
    radius: f64,
    tol: f64,
) -> Result<Complex64> {
    assert!(radius > 0.0);
    // Parametrize z = z0 + r e^{i theta}; dz = i r e^{i theta} d theta.
    let g = |theta: Complex64| {
        let phase = (I * theta).exp();
        f(z0 + radius * phase) * I * radius * phase
    };
    let mut out = QuadResult::zero();
    let mut budget = EVAL_BUDGET;
    let quarters = std::f64::consts::FRAC_PI_2;
    for k in 0..4 {
        let a = Complex64::new(k as f64 * quarters, 0.0);
        let b = Complex64::new((k + 1) as f64 * quarters, 0.0);
        let seg = adaptive_segment(&g, a, b, 0.25 * tol, MAX_DEPTH, &mut budget)?;
        out.accumulate(&seg);
    }
    if out.abs_error_estimate > tol.max(1e-13 * out.value.norm()) * 4.0 {
        return Err(Error::NonConvergence {
            estimate: out.abs_error_estimate,
            tol,
        });
    }
    Ok(out.value / (2.0 * std::f64::consts::PI * I))
}

/// Description of a vertical contour `Re s = sigma` that must leave the poles
/// in `left` on its left and the poles in `right` on its right, indenting with
/// small rectangular detours when a pole sits within `clearance` of the line.
#[derive(Debug, Clone)]
pub struct VerticalContour {
    pub sigma: f64,
    pub left: Vec<Complex64>,
    pub right: Vec<Complex64>,
    pub clearance: f64,
    /// Tilt angles (radians, positive toward +Re) applied to the upper/lower
    /// tails once past every pole; used to restore exponential decay when the
    /// integrand only oscillates along the vertical direction.
    pub tilt_up: f64,
    pub tilt_down: f64,
}

#[derive(Debug, Clone, Copy)]
struct Detour {
    im_lo: f64,
    im_hi: f64,
    re: f64,
}

impl VerticalContour {
    /// Places the line at the midpoint of the admissible real window between
    /// the right-most left pole and the left-most right pole, erroring with
    /// [`Error::ContourPinch`] when the window is empty. On-line poles away
    /// from the window (possible when the families are staggered in the
    /// imaginary direction) are handled later by detours.
    pub fn at_window_midpoint(
        left_edge: f64,
        right_edge: f64,
        left: Vec<Complex64>,
        right: Vec<Complex64>,
        clearance: f64,
    ) -> Result<Self> {
        if right_edge - left_edge <= 2.0 * clearance {
            return Err(Error::ContourPinch {
                left: left_edge,
                right: right_edge,
            });
        }
        Ok(VerticalContour {
            sigma: 0.5 * (left_edge + right_edge),
            left,
            right,
            clearance,
            tilt_up: 0.0,
            tilt_down: 0.0,
        })
    }

    /// A contour pinned at `sigma` whose admissibility rests entirely on the
    /// detour machinery (used when the pole families share the line's real
    /// part but are staggered in the imaginary direction).
    pub fn at(sigma: f64, left: Vec<Complex64>, right: Vec<Complex64>, clearance: f64) -> Self {
        VerticalContour {
            sigma,
            left,
            right,
            clearance,
            tilt_up: 0.0,
            tilt_down: 0.0,
        }
    }

    /// Sets the tail tilt angles (positive toward +Re).
    pub fn with_tilts(mut self, tilt_up: f64, tilt_down: f64) -> Self {
        self.tilt_up = tilt_up;
        self.tilt_down = tilt_down;
        self
    }

    fn detours(&self) -> Result<Vec<Detour>> {
        let c = self.clearance;
        let mut out: Vec<Detour> = Vec::new();
        for &p in &self.left {
            if p.re > self.sigma - c {
                out.push(Detour {
                    im_lo: p.im - c,
                    im_hi: p.im + c,
                    re: p.re + c,
                });
            }
        }
        for &q in &self.right {
            if q.re < self.sigma + c {
                out.push(Detour {
                    im_lo: q.im - c,
                    im_hi: q.im + c,
                    re: q.re - c,
                });
            }
        }
        // Detect pinches: a left pole and a right pole that are close to each
        // other force incompatible detours.
        for &p in &self.left {
            for &q in &self.right {
                if (p - q).norm() < 2.0 * c {
                    return Err(Error::ContourPinch {
                        left: p.re,
                        right: q.re,
                    });
                }
            }
        }
        out.sort_by(|a, b| a.im_lo.total_cmp(&b.im_lo));
        // Merge overlapping detours on the same side; overlapping detours on
        // opposite sides of the line are a pinch.
        let mut merged: Vec<Detour> = Vec::new();
        for d in out {
            if let Some(last) = merged.last_mut() {
                if d.im_lo <= last.im_hi {
                    let same_side =
                        (last.re - self.sigma).signum() == (d.re - self.sigma).signum();
                    if !same_side {
                        return Err(Error::ContourPinch {
                            left: last.re.min(d.re),
                            right: last.re.max(d.re),
                        });
                    }
                    last.im_hi = last.im_hi.max(d.im_hi);
                    last.re = if last.re > self.sigma {
                        last.re.max(d.re)
                    } else {
                        last.re.min(d.re)
                    };
                    continue;
                }
            }
            merged.push(d);
        }
        Ok(merged)
    }

    /// Integrates `f` along the contour from `-i inf` to `+i inf`, with the
    /// stated decay rates (nats per unit height) used for tail truncation.
    pub fn integrate<F: Fn(Complex64) -> Complex64>(
        &self,
        f: &F,
        decay_up: f64,
        decay_down: f64,
        tol: f64,
    ) -> Result<QuadResult> {
        let detours = self.detours()?;
        let span = detours
            .iter()
            .fold(1.0f64, |m, d| m.max(d.im_lo.abs()).max(d.im_hi.abs()));
        // The core only needs to clear the detour region plus a few decay
        // lengths; weakly-decaying directions are the tails' job (tilted if
        // necessary), so the decay-based extension is capped. A side with
        // non-positive decay grows along the straight line and must be handed
        // to its tilted ray as soon as the detours are cleared.
        let side = |decay: f64| -> f64 {
            let ext = if decay > 0.0 {
                (8.0 / decay).min(16.0)
            } else {
                0.0
            };
            span.max(ext).max(2.0) + 1.0
        };
        let half_up = side(decay_up);
        let half_dn = side(decay_down);
        let mut points: Vec<Complex64> = vec![Complex64::new(self.sigma, -half_dn)];
        for d in &detours {
            points.push(Complex64::new(self.sigma, d.im_lo));
            points.push(Complex64::new(d.re, d.im_lo));
            points.push(Complex64::new(d.re, d.im_hi));
            points.push(Complex64::new(self.sigma, d.im_hi));
        }
        points.push(Complex64::new(self.sigma, half_up));
        let core_path = PathSpec::through(&points, decay_up.min(decay_down), self.clearance);
        let mut out = QuadResult::zero();
        let core = integrate_path(f, &core_path, 0.25 * tol)?;
        let debug = std::env::var("UQSL_DEBUG_CONTOUR").is_ok();
        if debug {
            eprintln!(
                "contour core: evals={} err={:.3e} half=(-{half_dn:.2},{half_up:.2})",
                core.evaluations, core.abs_error_estimate
            );
        }
        out.accumulate(&core);
        // Tails proceed from the core endpoints along (possibly tilted) rays,
        // with chunk lengths doubling until a chunk's contribution falls
        // below tol / 10. Orientation: the lower tail is traversed inward
        // (toward the core), the upper tail outward.
        for (start, dir, inward) in [
            (
                Complex64::new(self.sigma, half_up),
                I * (-I * self.tilt_up).exp(),
                false,
            ),
            (
                Complex64::new(self.sigma, -half_dn),
                -I * (I * self.tilt_down).exp(),
                true,
            ),
        ] {
            let mut lo = 0.0f64;
            let mut len = half_up.max(half_dn).max(2.0);
            let mut converged = false;
            let mut budget = EVAL_BUDGET;
            for _ in 0..48 {
                let hi = lo + len;
                let (a, b) = if inward {
                    (start + hi * dir, start + lo * dir)
                } else {
                    (start + lo * dir, start + hi * dir)
                };
                let chunk = adaptive_segment(f, a, b, 0.05 * tol, MAX_DEPTH, &mut budget)?;
                if debug {
                    eprintln!(
                        "contour tail inward={inward} [{lo:.1},{hi:.1}]: evals={} err={:.3e} |value|={:.3e}",
                        chunk.evaluations,
                        chunk.abs_error_estimate,
                        chunk.value.norm()
                    );
                }
                out.accumulate(&chunk);
                if chunk.value.norm() + chunk.abs_error_estimate < 0.1 * tol {
                    converged = true;
                    break;
                }
                lo = hi;
                len *= 2.0;
            }
            if !converged {
                return Err(Error::NonConvergence {
                    estimate: out.abs_error_estimate.max(tol),
                    tol,
                });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_integrand_gives_endpoint_difference() {
        let path = PathSpec::segment(c(0.0, 0.0), c(3.0, 4.0));
        let r = integrate_path(&|_| c(1.0, 0.0), &path, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value.re, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.value.im, 4.0, epsilon = 1e-12);
    }

    #[test]
    fn gaussian_integral_is_sqrt_pi() {
        let path = PathSpec::segment(c(-10.0, 0.0), c(10.0, 0.0));
        let r = integrate_path(&|z| (-z * z).exp(), &path, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value.re, std::f64::consts::PI.sqrt(), epsilon = 1e-11);
        assert_abs_diff_eq!(r.value.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn gaussian_over_infinite_line() {
        let r = integrate_line(&|z| (-z * z).exp(), c(0.0, 0.0), c(1.0, 0.0), 2.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value.re, std::f64::consts::PI.sqrt(), epsilon = 1e-11);
    }

    #[test]
    fn path_additivity() {
        let f = |z: Complex64| (z * z + c(0.3, 0.1)).exp();
        let whole = integrate_path(&f, &PathSpec::segment(c(-1.0, 0.5), c(2.0, -0.5)), 1e-12)
            .unwrap()
            .value;
        let mid = c(0.7, 0.1);
        let split = PathSpec::through(&[c(-1.0, 0.5), mid, c(2.0, -0.5)], 1.0, 0.0);
        let parts = integrate_path(&f, &split, 1e-12).unwrap().value;
        assert!((whole - parts).norm() < 1e-11);
    }

    #[test]
    fn residue_of_simple_pole() {
        let r = residue_at(&|z| 1.0 / z, c(0.0, 0.0), 0.1, 1e-12).unwrap();
        assert_abs_diff_eq!(r.re, 1.0, epsilon = 1e-11);
        assert_abs_diff_eq!(r.im, 0.0, epsilon = 1e-11);
    }

    #[test]
    fn residue_of_entire_function_is_zero() {
        let r = residue_at(&|z| z.exp(), c(0.5, 0.0), 0.1, 1e-12).unwrap();
        assert!(r.norm() < 1e-12);
    }

    #[test]
    fn residue_is_radius_independent() {
        let f = |z: Complex64| z.exp() / (z - c(0.3, 0.2));
        let r1 = residue_at(&f, c(0.3, 0.2), 0.1, 1e-12).unwrap();
        let r2 = residue_at(&f, c(0.3, 0.2), 0.05, 1e-12).unwrap();
        assert!((r1 - r2).norm() < 1e-11);
        assert!((r1 - c(0.3, 0.2).exp()).norm() < 1e-11);
    }

    #[test]
    fn vertical_contour_matches_plain_line_for_analytic_integrand() {
        // e^{z^2} decays like e^{-t^2} along any vertical line Re z = sigma;
        // its contour integral is i e^{sigma^2} * integral of
        // e^{-t^2 + 2 i sigma t} dt = i sqrt(pi) e^{sigma^2} e^{-sigma^2}
        // = i sqrt(pi), independent of sigma.
        let contour = VerticalContour::at(0.3, vec![], vec![], 1e-2);
        let r2 = contour.integrate(&|z| (z * z).exp(), 2.0, 2.0, 1e-12).unwrap();
        let expect = Complex64::new(0.0, std::f64::consts::PI.sqrt());
        assert!((r2.value - expect).norm() < 1e-10);
    }

    #[test]
    fn vertical_contour_detour_avoids_on_line_pole() {
        // Integrand e^{z^2}/(z - i) has a pole at z = i, on the line Re z = 0.
        // Leaving the pole on the left adds no residue relative to a line far
        // to the right of it.
        let pole = c(0.0, 1.0);
        let left_contour = VerticalContour::at(0.0, vec![], vec![pole], 5e-2);
        let f = |z: Complex64| (z * z).exp() / (z - pole);
        let via_detour = left_contour.integrate(&f, 2.0, 2.0, 1e-11).unwrap().value;
        let plain = VerticalContour::at(-0.5, vec![], vec![pole], 5e-2)
            .integrate(&f, 2.0, 2.0, 1e-11)
            .unwrap()
            .value;
        assert!(
            (via_detour - plain).norm() < 1e-9,
            "detour {via_detour} vs plain {plain}"
        );
        // Leaving the pole on the right instead differs by the residue.
        let right_contour = VerticalContour::at(0.0, vec![pole], vec![], 5e-2);
        let other = right_contour.integrate(&f, 2.0, 2.0, 1e-11).unwrap().value;
        let residue = 2.0 * std::f64::consts::PI * I * (pole * pole).exp();
        assert!(((via_detour - other) - residue.scale(-1.0)).norm() < 1e-9
            || ((other - via_detour) - residue.scale(-1.0)).norm() < 1e-9);
    }

    #[test]
    fn pinch_is_reported() {
        let err = VerticalContour::at_window_midpoint(
            0.0,
            0.01,
            vec![c(0.0, 0.0)],
            vec![c(0.01, 0.0)],
            1e-2,
        );
        assert!(matches!(err, Err(Error::ContourPinch { .. })));
    }
}
