//! Scalar math shims over `libm`, plus the standard normal CDF and quantile.
//!
//! The crate is `no_std`, so the `f64` inherent methods from `std` are not
//! available; every float intrinsic goes through `libm` instead.

pub(crate) const SQRT_3: f64 = 1.732_050_807_568_877_2;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const LN_2PI: f64 = 1.837_877_066_409_345_3;
const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub(crate) fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Standard normal cumulative distribution function.
pub(crate) fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal quantile (inverse CDF) for `p` strictly inside (0, 1).
///
/// Rational approximations (Wichura's PPND16) cover the central region and
/// the near tail; past |z| ~ 6.7 an asymptotic guess refined by Halley
/// iterations on the CDF takes over. Relative accuracy is at machine level
/// across the representable range — validated against an independent
/// reference implementation in the test suite.
pub(crate) fn normal_quantile(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    let q = p - 0.5;
    if abs(q) <= 0.425 {
        return central(q);
    }
    // Exact by Sterbenz's lemma when p >= 0.5, so the tail mass is not
    // degraded by the subtraction.
    let pm = if q < 0.0 { p } else { 1.0 - p };
    let r = sqrt(-ln(pm));
    let magnitude = if r <= 5.0 { near_tail(r) } else { far_tail(pm) };
    if q < 0.0 {
        -magnitude
    } else {
        magnitude
    }
}

/// Horner evaluation with coefficients in ascending order.
fn polynomial(x: f64, coeffs: &[f64]) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// |q| <= 0.425, i.e. p in [0.075, 0.925].
fn central(q: f64) -> f64 {
    const NUM: [f64; 8] = [
        3.3871328727963666080e0,
        1.3314166789178437745e2,
        1.9715909503065514427e3,
        1.3731693765509461125e4,
        4.5921953931549871457e4,
        6.7265770927008700853e4,
        3.3430575583588128105e4,
        2.5090809287301226727e3,
    ];
    const DEN: [f64; 8] = [
        1.0,
        4.2313330701600911252e1,
        6.8718700749205790830e2,
        5.3941960214247511077e3,
        2.1213794301586595867e4,
        3.9307895800092710610e4,
        2.8729085735721942674e4,
        5.2264952788528545610e3,
    ];
    let r = 0.180625 - q * q;
    q * polynomial(r, &NUM) / polynomial(r, &DEN)
}

/// sqrt(-ln(min(p, 1-p))) in (sqrt(-ln 0.075), 5]: |z| up to ~6.7.
fn near_tail(r: f64) -> f64 {
    const NUM: [f64; 8] = [
        1.42343711074968357734e0,
        4.63033784615654529590e0,
        5.76949722146069140550e0,
        3.64784832476320460504e0,
        1.27045825245236838258e0,
        2.41780725177450611770e-1,
        2.27238449892691845833e-2,
        7.74545014278341407640e-4,
    ];
    const DEN: [f64; 8] = [
        1.0,
        2.05319162663775882187e0,
        1.67638483018380384940e0,
        6.89767334985100004550e-1,
        1.48103976427480074590e-1,
        1.51986665636164571966e-2,
        5.47593808499534494600e-4,
        1.05075007164441684324e-9,
    ];
    let r = r - 1.6;
    polynomial(r, &NUM) / polynomial(r, &DEN)
}

/// The deep tail: asymptotic expansion of the tail mass, polished by Halley
/// iterations on `Phi(x) - pm`. Returns the (positive) quantile magnitude.
fn far_tail(pm: f64) -> f64 {
    let u0 = -2.0 * ln(pm);
    let mut x = -sqrt(u0 - ln(u0) - LN_2PI);
    for _ in 0..60 {
        let pdf = exp(-0.5 * x * x) * INV_SQRT_2PI;
        if pdf <= 0.0 || !pdf.is_finite() {
            break; // below ~1e-308 of tail mass; keep the asymptotic value
        }
        let f = 0.5 * erfc(-x * FRAC_1_SQRT_2) - pm;
        let u = f / pdf;
        let next = x - u / (1.0 + 0.5 * x * u);
        if !next.is_finite() {
            break;
        }
        let done = abs(next - x) <= 4e-16 * abs(next);
        x = next;
        if done {
            break;
        }
    }
    -x
}
