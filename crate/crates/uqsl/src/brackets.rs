//! The q-deformed brackets `[x]_b`, `{x}_b` and the finite-difference bracket
//! `[d_x + a]_b`, shared by the hypergeometric difference equations, the
//! representation operators, and the Casimir difference operators.
//!
//! Conventions:
//! - `[x]_b = sin(pi b x) / sin(pi b^2)`
//! - `{x}_b = cos(pi b x) / (i sin(pi b^2))`
//! - `[d_x + a]_b f(x) = (e^{i pi b a} f(x + i b/2) - e^{-i pi b a} f(x - i b/2))
//!    / (e^{i pi b^2} - e^{-i pi b^2})`
//!
//! so that `[d_x + a]_b e^{2 pi w x} = [-i w + a]_b e^{2 pi w x}`.

use num_complex::Complex64;

use crate::special_fn::BContext;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `[x]_b = sin(pi b x) / sin(pi b^2)` for complex `x`.
pub fn num_b(ctx: &BContext, x: Complex64) -> Complex64 {
    (Complex64::from(std::f64::consts::PI * ctx.b) * x).sin() / ctx.sin_pi_b2()
}

/// `{x}_b = cos(pi b x) / (i sin(pi b^2))` for complex `x`.
pub fn brace_b(ctx: &BContext, x: Complex64) -> Complex64 {
    (Complex64::from(std::f64::consts::PI * ctx.b) * x).cos() / (I * ctx.sin_pi_b2())
}

/// Applies the finite-difference bracket `[d_x + a]_b` to `f` at the point `x`,
/// evaluating `f` at the two imaginary shifts `x ± i b/2`.
pub fn bracket_apply(
    ctx: &BContext,
    a: Complex64,
    f: &dyn Fn(Complex64) -> Complex64,
    x: Complex64,
) -> Complex64 {
    let ib2 = I * Complex64::from(0.5 * ctx.b);
    let phase = (I * Complex64::from(std::f64::consts::PI * ctx.b) * a).exp();
    (phase * f(x + ib2) - f(x - ib2) / phase) / (2.0 * I * ctx.sin_pi_b2())
}
