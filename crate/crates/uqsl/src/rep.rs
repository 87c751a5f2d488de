//! The continuous-series representation of U_q(sl(2,R)) as exact
//! finite-difference operators.
//!
//! The representation space is modeled at desk scale by the [`GaussExpFun`]
//! family of finite sums of Gaussians-times-exponentials,
//!
//! `f(x) = sum_k c_k exp(-a_k (x - mu_k)^2 + lambda_k x)`, `a_k > 0`,
//!
//! which is closed under imaginary shifts `x -> x + i a`, multiplication by
//! `e^{kappa x}`, Fourier transformation, and bilinear pairing `int f g dx`,
//! all with closed-form coefficient arithmetic. The generators act as
//!
//! `pi_alpha(E) = e^{+2 pi b x} [d_x + Q - alpha]_b`,
//! `pi_alpha(F) = e^{-2 pi b x} [d_x + alpha - Q]_b`,
//! `pi_alpha(K) = T_x^{i b / 2}`,
//!
//! with `[d_x + a]_b` the finite-difference bracket of [`crate::brackets`],
//! so every algebra relation can be verified exactly (up to roundoff) on the
//! family. The intertwiner between the equivalent labels `alpha` and
//! `Q - alpha` is the Fourier multiplier
//! `B~_alpha(omega) = S_b(alpha - i omega) / S_b(Q - alpha - i omega)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::Result;
use crate::hyper::tail_plan;
use crate::numerics::VerticalContour;
use crate::special_fn::{log_sb, BContext};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One term `coef * exp(-a (x - mu)^2 + lambda x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussTerm {
    pub coef: Complex64,
    /// Gaussian width parameter, strictly positive (guarantees decay on any
    /// horizontal line, hence entirety plus square-integrability).
    pub a: f64,
    pub mu: Complex64,
    pub lambda: Complex64,
}

/// A finite sum of Gaussian-exponential terms; entire in `x`, rapidly
/// decaying on every horizontal line, and closed under the operations the
/// representation needs (imaginary shifts, `e^{kappa x}` multiplication,
/// Fourier transform, bilinear pairing).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GaussExpFun {
    pub terms: Vec<GaussTerm>,
}

impl GaussExpFun {
    /// The single term `coef * exp(-a (x - mu)^2 + lambda x)`.
    pub fn gaussian(coef: Complex64, a: f64, mu: Complex64, lambda: Complex64) -> Self {
        assert!(a > 0.0, "Gaussian width parameter must be positive");
        GaussExpFun {
            terms: vec![GaussTerm {
                coef,
                a,
                mu,
                lambda,
            }],
        }
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let d = x - t.mu;
                t.coef * (-t.a * d * d + t.lambda * x).exp()
            })
            .sum()
    }

    /// `x -> f(x + s)` for any complex `s`, exact on the coefficients.
    pub fn shift(&self, s: Complex64) -> Self {
        GaussExpFun {
            terms: self
                .terms
                .iter()
                .map(|t| GaussTerm {
                    coef: t.coef * (t.lambda * s).exp(),
                    a: t.a,
                    mu: t.mu - s,
                    lambda: t.lambda,
                })
                .collect(),
        }
    }

    /// Multiplication by `e^{kappa x}`.
    pub fn exp_mul(&self, kappa: Complex64) -> Self {
        GaussExpFun {
            terms: self
                .terms
                .iter()
                .map(|t| GaussTerm {
                    coef: t.coef,
                    a: t.a,
                    mu: t.mu,
                    lambda: t.lambda + kappa,
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        GaussExpFun {
            terms: self
                .terms
                .iter()
                .map(|t| GaussTerm {
                    coef: c * t.coef,
                    ..*t
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        GaussExpFun { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// The function `x -> conj(f(conj(x)))`, i.e. the complex conjugate of
    /// `f` on the real axis, extended entirely.
    pub fn conj(&self) -> Self {
        GaussExpFun {
            terms: self
                .terms
                .iter()
                .map(|t| GaussTerm {
                    coef: t.coef.conj(),
                    a: t.a,
                    mu: t.mu.conj(),
                    lambda: t.lambda.conj(),
                })
                .collect(),
        }
    }

    /// Fourier transform `f~(omega) = int dx e^{-2 pi i omega x} f(x)`,
    /// again a [`GaussExpFun`] (in the variable `omega`), in closed form:
    /// a term `(c, a, mu, lambda)` maps to
    /// `(c sqrt(pi/a) e^{lambda mu}, pi^2/a, -i lambda/(2 pi), -2 pi i mu)`.
    pub fn fourier_transform(&self) -> Self {
        GaussExpFun {
            terms: self
                .terms
                .iter()
                .map(|t| GaussTerm {
                    coef: t.coef * (PI / t.a).sqrt() * (t.lambda * t.mu).exp(),
                    a: PI * PI / t.a,
                    mu: -I * t.lambda / (2.0 * PI),
                    lambda: -2.0 * PI * I * t.mu,
                })
                .collect(),
        }
    }

    /// The bilinear pairing `<f, g> = int_R f(x) g(x) dx`, evaluated exactly
    /// as a sum of Gaussian integrals.
    pub fn pair(&self, other: &Self) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for s in &self.terms {
            for t in &other.terms {
                let big_a = s.a + t.a;
                let m = (s.a * s.mu + t.a * t.mu) / big_a;
                let lam = s.lambda + t.lambda;
                // -a1(x-mu1)^2 - a2(x-mu2)^2 = -A(x-M)^2 + A M^2
                //   - a1 mu1^2 - a2 mu2^2
                let quad = big_a * m * m - s.a * s.mu * s.mu - t.a * t.mu * t.mu;
                total += s.coef
                    * t.coef
                    * (PI / big_a).sqrt()
                    * (quad + lam * m + lam * lam / (4.0 * big_a)).exp();
            }
        }
        total
    }
}

/// Generator names of U_q(sl(2,R)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorName {
    E,
    F,
    K,
    Kinv,
}

/// `q = e^{i pi b^2}`.
pub fn q_param(ctx: &BContext) -> Complex64 {
    Complex64::new(0.0, PI * ctx.b * ctx.b).exp()
}

/// `[d_x + a]_b f` expanded into exact shift/multiply operations on the
/// Gaussian-exponential family.
pub fn bracket_on(ctx: &BContext, a: Complex64, f: &GaussExpFun) -> GaussExpFun {
    let ib2 = I * Complex64::from(0.5 * ctx.b);
    let phase = (I * Complex64::from(PI * ctx.b) * a).exp();
    let denom = 2.0 * I * ctx.sin_pi_b2();
    f.shift(ib2)
        .scale(phase / denom)
        .sub(&f.shift(-ib2).scale(1.0 / (phase * denom)))
}

/// Applies `pi_alpha(g)` to `f`; the family is closed, so no error cases.
pub fn apply_generator(
    ctx: &BContext,
    alpha: Complex64,
    g: GeneratorName,
    f: &GaussExpFun,
) -> GaussExpFun {
    let q = Complex64::from(ctx.big_q);
    let ib2 = I * Complex64::from(0.5 * ctx.b);
    match g {
        GeneratorName::K => f.shift(ib2),
        GeneratorName::Kinv => f.shift(-ib2),
        GeneratorName::E => bracket_on(ctx, q - alpha, f).exp_mul(Complex64::from(2.0 * PI * ctx.b)),
        GeneratorName::F => {
            bracket_on(ctx, alpha - q, f).exp_mul(Complex64::from(-2.0 * PI * ctx.b))
        }
    }
}

/// The q-Casimir `C = F E - (q K^2 + q^{-1} K^{-2} - 2) / (q - q^{-1})^2`
/// applied to `f` by composing [`apply_generator`].
pub fn apply_casimir(ctx: &BContext, alpha: Complex64, f: &GaussExpFun) -> GaussExpFun {
    let q = q_param(ctx);
    let dq = q - 1.0 / q;
    let ib = I * Complex64::from(ctx.b);
    let fe = apply_generator(
        ctx,
        alpha,
        GeneratorName::F,
        &apply_generator(ctx, alpha, GeneratorName::E, f),
    );
    let kk = f
        .shift(ib)
        .scale(q)
        .add(&f.shift(-ib).scale(1.0 / q))
        .sub(&f.scale(Complex64::from(2.0)));
    fe.sub(&kk.scale(1.0 / (dq * dq)))
}

/// The scalar by which the q-Casimir acts on the representation with label
/// `alpha`: `{alpha - Q/2}_b^2 = [alpha - Q/2]_b^2 + 4 (q - q^{-1})^{-2}`
/// (using `sin^2 - 1 = -cos^2`; verified against `(C f)(x) / f(x)` being
/// constant across sample functions and points).
pub fn casimir_eigenvalue(ctx: &BContext, alpha: Complex64) -> Complex64 {
    let n = crate::brackets::brace_b(ctx, alpha - Complex64::from(0.5 * ctx.big_q));
    n * n
}

/// The Fourier multiplier of the intertwiner between labels `alpha` and
/// `Q - alpha`: `B~_alpha(omega) = S_b(alpha - i omega) / S_b(Q - alpha -
/// i omega)`. Unimodular for `alpha` on the line `Q/2 + i R` and real
/// `omega`; general complex arguments are accepted for continuation.
pub fn intertwiner_symbol(ctx: &BContext, alpha: Complex64, omega: Complex64) -> Result<Complex64> {
    let q = Complex64::from(ctx.big_q);
    Ok((log_sb(ctx, alpha - I * omega)? - log_sb(ctx, q - alpha - I * omega)?).exp())
}

/// Independent cross-check of [`intertwiner_symbol`]: the Fourier transform
/// `int du e^{-2 pi i omega u} B_alpha(u)` of the position-space kernel
///
/// `B_alpha(u) = S_b(2 alpha) S_b(Q/2 + i u - alpha) / S_b(Q/2 + i u + alpha)`
///
/// computed by contour quadrature. Substituting `s = i u` turns the real-axis
/// integral (with its boundary-value pole prescription: the kernel's
/// ascending pole family passed on one side, descending on the other) into a
/// vertical contour with left pole family `alpha - Q/2 - (n b + m/b)` and
/// right family `Q/2 - alpha + (n b + m/b)`, handled by the detour machinery.
pub fn intertwiner_kernel_ft(
    ctx: &BContext,
    alpha: Complex64,
    omega: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let half_q = Complex64::from(0.5 * ctx.big_q);
    // e^{-2 pi i omega u} du = e^{2 pi i s (i omega)} (-i) ds; the kernel's
    // quadratic-phase asymptotics contribute e^{+/- 2 pi i alpha s} along the
    // upper/lower tails.
    let (decay_up, decay_down, tilt_up, tilt_down) =
        tail_plan(I * omega + alpha, I * omega - alpha)?;
    let offsets = ctx.lattice_offsets(6);
    let left: Vec<Complex64> = offsets.iter().map(|&l| alpha - half_q - l).collect();
    let right: Vec<Complex64> = offsets.iter().map(|&l| half_q - alpha + l).collect();
    let contour =
        VerticalContour::at(0.0, left, right, ctx.clearance).with_tilts(tilt_up, tilt_down);
    let ctx2 = {
        let mut c = ctx.clone();
        c.clearance *= 0.5;
        c
    };
    let f = move |s: Complex64| -> Complex64 {
        let terms = (|| -> Result<Complex64> {
            Ok(2.0 * PI * I * s * (I * omega) + log_sb(&ctx2, half_q + s - alpha)?
                - log_sb(&ctx2, half_q + s + alpha)?)
        })();
        match terms {
            Ok(t) => t.exp(),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let integral = contour.integrate(&f, decay_up, decay_down, tol)?.value;
    let prefactor = log_sb(ctx, 2.0 * alpha)?.exp();
    Ok(-I * prefactor * integral)
}

/// The Fourier-space generator action on a function `h` of `omega`:
/// `E~ h = [-i omega + alpha]_b h(omega + i b)`,
/// `F~ h = [-i omega - alpha]_b h(omega - i b)`,
/// `K~ h = e^{- pi b omega} h(omega)`.
pub fn apply_generator_ft(
    ctx: &BContext,
    alpha: Complex64,
    g: GeneratorName,
    h: &dyn Fn(Complex64) -> Complex64,
    omega: Complex64,
) -> Complex64 {
    let ib = I * Complex64::from(ctx.b);
    match g {
        GeneratorName::E => crate::brackets::num_b(ctx, -I * omega + alpha) * h(omega + ib),
        GeneratorName::F => crate::brackets::num_b(ctx, -I * omega - alpha) * h(omega - ib),
        GeneratorName::K => (-PI * ctx.b * omega).exp() * h(omega),
        GeneratorName::Kinv => (PI * ctx.b * omega).exp() * h(omega),
    }
}

/// Maximum relative residual of the intertwining relation
/// `pi_{Q-alpha}(g) I~_alpha = I~_alpha pi_alpha(g)` on the Fourier transform
/// `ft` of a family element, sampled at the given real frequencies.
pub fn check_intertwining(
    ctx: &BContext,
    alpha: Complex64,
    g: GeneratorName,
    ft: &GaussExpFun,
    omegas: &[f64],
) -> Result<f64> {
    let q = Complex64::from(ctx.big_q);
    let mut worst = 0.0f64;
    for &w in omegas {
        let omega = Complex64::from(w);
        let dressed = |v: Complex64| -> Complex64 {
            match intertwiner_symbol(ctx, alpha, v) {
                Ok(b) => b * ft.eval(v),
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }
        };
        let plain = |v: Complex64| ft.eval(v);
        let lhs = apply_generator_ft(ctx, q - alpha, g, &dressed, omega);
        let rhs = intertwiner_symbol(ctx, alpha, omega)?
            * apply_generator_ft(ctx, alpha, g, &plain, omega);
        let scale = lhs.norm().max(rhs.norm()).max(1e-300);
        worst = worst.max((lhs - rhs).norm() / scale);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate_line;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_fun(rng: &mut ChaCha8Rng) -> GaussExpFun {
        let mut f = GaussExpFun::default();
        for _ in 0..2 {
            f = f.add(&GaussExpFun::gaussian(
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                rng.gen_range(0.5..2.0),
                c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3)),
                c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
            ));
        }
        f
    }

    fn sample_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| c(rng.gen_range(-2.0..2.0), 0.0)).collect()
    }

    /// Pointwise relative deviation of `f` from `g` over the points, scaled
    /// by the largest magnitude seen.
    fn rel_dev(f: &GaussExpFun, g: &GaussExpFun, pts: &[Complex64]) -> f64 {
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for &x in pts {
            num = num.max((f.eval(x) - g.eval(x)).norm());
            den = den.max(f.eval(x).norm().max(g.eval(x).norm()));
        }
        num / den.max(1e-300)
    }

    #[test]
    fn shift_and_exp_mul_act_exactly() {
        let f = GaussExpFun::gaussian(c(1.3, -0.4), 0.8, c(0.2, 0.1), c(-0.3, 0.6));
        let s = c(0.0, 0.37);
        for x in [c(0.3, 0.0), c(-1.1, 0.2)] {
            let d = (f.shift(s).eval(x) - f.eval(x + s)).norm();
            assert!(d < 1e-14 * f.eval(x + s).norm());
            let m = (f.exp_mul(c(0.5, -0.2)).eval(x) - (c(0.5, -0.2) * x).exp() * f.eval(x)).norm();
            assert!(m < 1e-14 * f.eval(x).norm());
        }
    }

    #[test]
    fn k_then_kinv_is_identity() {
        let ctx = BContext::new(0.7);
        let alpha = c(0.5 * ctx.big_q, 0.4);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = sample_fun(&mut rng);
        let back = apply_generator(
            &ctx,
            alpha,
            GeneratorName::Kinv,
            &apply_generator(&ctx, alpha, GeneratorName::K, &f),
        );
        for (t, u) in f.terms.iter().zip(back.terms.iter()) {
            assert!((t.coef - u.coef).norm() < 1e-15 * t.coef.norm());
            assert!((t.mu - u.mu).norm() < 1e-15);
            assert_eq!(t.lambda, u.lambda);
        }
    }

    #[test]
    fn defining_relations_hold_pointwise() {
        let ctx = BContext::new(0.7);
        let q = q_param(&ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let alpha = c(0.5 * ctx.big_q, rng.gen_range(-1.0..1.0));
        let f = sample_fun(&mut rng);
        let pts = sample_points(&mut rng, 10);
        let gen = |g: GeneratorName, h: &GaussExpFun| apply_generator(&ctx, alpha, g, h);
        use GeneratorName::*;
        // KE = q EK
        let ke = gen(K, &gen(E, &f));
        let ek = gen(E, &gen(K, &f)).scale(q);
        assert!(rel_dev(&ke, &ek, &pts) < 1e-12, "KE = qEK");
        // KF = q^{-1} FK
        let kf = gen(K, &gen(F, &f));
        let fk = gen(F, &gen(K, &f)).scale(1.0 / q);
        assert!(rel_dev(&kf, &fk, &pts) < 1e-12, "KF = q^-1 FK");
        // [E, F] = -(K^2 - K^-2)/(q - q^-1)
        let comm = gen(E, &gen(F, &f)).sub(&gen(F, &gen(E, &f)));
        let kk = gen(K, &gen(K, &f))
            .sub(&gen(Kinv, &gen(Kinv, &f)))
            .scale(-1.0 / (q - 1.0 / q));
        assert!(rel_dev(&comm, &kk, &pts) < 1e-12, "EF commutator");
    }

    #[test]
    fn casimir_is_central_and_scalar() {
        let ctx = BContext::new(0.7);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let alpha = c(0.5 * ctx.big_q, 0.35);
        let f = sample_fun(&mut rng);
        let pts = sample_points(&mut rng, 10);
        use GeneratorName::*;
        for g in [K, E, F] {
            let cg = apply_casimir(&ctx, alpha, &apply_generator(&ctx, alpha, g, &f));
            let gc = apply_generator(&ctx, alpha, g, &apply_casimir(&ctx, alpha, &f));
            assert!(rel_dev(&cg, &gc, &pts) < 1e-10, "C commutes with {g:?}");
        }
        // The q-Casimir acts by the scalar [alpha - Q/2]^2 + 2/(q - q^-1)^2.
        let cf = apply_casimir(&ctx, alpha, &f);
        let ev = casimir_eigenvalue(&ctx, alpha);
        let scaled = f.scale(ev);
        assert!(
            rel_dev(&cf, &scaled, &pts) < 1e-10,
            "Casimir scalar {ev} (got deviation {})",
            rel_dev(&cf, &scaled, &pts)
        );
    }

    #[test]
    fn coproduct_of_k_is_product_of_shifts() {
        let ctx = BContext::new(0.7);
        let ib2 = I * Complex64::from(0.5 * ctx.b);
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = sample_fun(&mut rng);
        let g = sample_fun(&mut rng);
        // Delta(K) = K (x) K on a product function f(x2) g(x1).
        for _ in 0..5 {
            let x2 = c(rng.gen_range(-1.0..1.0), 0.0);
            let x1 = c(rng.gen_range(-1.0..1.0), 0.0);
            let lhs = f.shift(ib2).eval(x2) * g.shift(ib2).eval(x1);
            let rhs = f.eval(x2 + ib2) * g.eval(x1 + ib2);
            assert!((lhs - rhs).norm() < 1e-14 * rhs.norm());
        }
    }

    #[test]
    fn shift_transpose_rule_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let f = sample_fun(&mut rng);
        let g = sample_fun(&mut rng);
        for a in [0.3, -0.55] {
            let ia = c(0.0, a);
            let lhs = f.shift(ia).pair(&g);
            let rhs = f.pair(&g.shift(-ia));
            assert!(
                (lhs - rhs).norm() < 1e-13 * lhs.norm().max(rhs.norm()),
                "a={a}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn generator_transpose_relation() {
        let ctx = BContext::new(0.7);
        let q = Complex64::from(ctx.big_q);
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let alpha = c(0.5 * ctx.big_q, 0.45);
        let f = sample_fun(&mut rng);
        let g = sample_fun(&mut rng);
        use GeneratorName::*;
        // Bilinear transposition across the equivalent labels: E and F
        // transpose onto themselves, while the pure shift K transposes onto
        // K^{-1} (the contour-shift rule), so the relation is tested on the
        // pairs (E, E), (F, F), (K, Kinv), (Kinv, K).
        for (u, ut) in [(E, E), (F, F), (K, Kinv), (Kinv, K)] {
            let lhs = apply_generator(&ctx, q - alpha, u, &f).pair(&g);
            let rhs = f.pair(&apply_generator(&ctx, alpha, ut, &g));
            assert!(
                (lhs - rhs).norm() < 1e-12 * lhs.norm().max(rhs.norm()),
                "u={u:?}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn fourier_transform_matches_quadrature() {
        let f = GaussExpFun::gaussian(c(0.9, 0.3), 1.2, c(0.1, -0.2), c(0.3, 0.4));
        let ft = f.fourier_transform();
        for w in [0.0, 0.7, -1.3] {
            let omega = c(w, 0.0);
            let g = |x: Complex64| (-2.0 * PI * I * omega * x).exp() * f.eval(x);
            let quad = integrate_line(&g, c(0.0, 0.0), c(1.0, 0.0), 1.0, 1e-13)
                .unwrap()
                .value;
            let closed = ft.eval(omega);
            assert!(
                (quad - closed).norm() < 1e-11 * closed.norm().max(1.0),
                "omega={w}: {quad} vs {closed}"
            );
        }
    }

    #[test]
    fn fourier_space_generators_match_position_space() {
        let ctx = BContext::new(0.7);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let alpha = c(0.5 * ctx.big_q, -0.25);
        let f = sample_fun(&mut rng);
        let ft = f.fourier_transform();
        use GeneratorName::*;
        for g in [E, F, K, Kinv] {
            let lhs = apply_generator(&ctx, alpha, g, &f).fourier_transform();
            for w in [-0.8, 0.2, 1.1] {
                let omega = c(w, 0.0);
                let want = apply_generator_ft(&ctx, alpha, g, &|v| ft.eval(v), omega);
                let got = lhs.eval(omega);
                assert!(
                    (got - want).norm() < 1e-12 * want.norm().max(1e-6),
                    "g={g:?} omega={w}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn intertwiner_symbol_is_unimodular_on_the_line() {
        let ctx = BContext::new(0.7);
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..50 {
            let alpha = c(0.5 * ctx.big_q, rng.gen_range(-2.0..2.0));
            let omega = c(rng.gen_range(-3.0..3.0), 0.0);
            let b = intertwiner_symbol(&ctx, alpha, omega).unwrap();
            assert!((b.norm() - 1.0).abs() < 1e-10, "|B| = {} at {alpha}, {omega}", b.norm());
        }
    }

    #[test]
    fn intertwiner_symbol_is_one_at_half_q() {
        let ctx = BContext::new(0.7);
        let alpha = c(0.5 * ctx.big_q, 0.0);
        for w in [-1.7, 0.3, 2.4] {
            let b = intertwiner_symbol(&ctx, alpha, c(w, 0.0)).unwrap();
            assert!((b - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn kernel_fourier_transform_reproduces_symbol() {
        let ctx = BContext::new(0.7);
        let alpha = c(0.5 * ctx.big_q, 0.3);
        for w in [-1.1, -0.4, 0.0, 0.6, 1.5] {
            let omega = c(w, 0.0);
            let got = intertwiner_kernel_ft(&ctx, alpha, omega, 1e-9).unwrap();
            let want = intertwiner_symbol(&ctx, alpha, omega).unwrap();
            let rel = (got - want).norm() / want.norm();
            assert!(rel < 1e-6, "omega={w}: rel deviation {rel:.3e}");
        }
    }

    #[test]
    fn intertwining_relation_all_generators() {
        let ctx = BContext::new(0.7);
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        use GeneratorName::*;
        for _ in 0..5 {
            let alpha = c(0.5 * ctx.big_q, rng.gen_range(-0.8..0.8));
            let ft = sample_fun(&mut rng);
            let omegas: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.5..1.5)).collect();
            for g in [E, F, K, Kinv] {
                let r = check_intertwining(&ctx, alpha, g, &ft, &omegas).unwrap();
                assert!(r < 1e-8, "g={g:?} alpha={alpha}: residual {r:.3e}");
            }
        }
    }
}
