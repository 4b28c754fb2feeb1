//! Minimal dense kernels shared by the model modules.
//!
//! Matrices are row-major `Vec<Vec<f64>>`. Dimensions are validated at the
//! module boundaries (`MarketParams`, `Schedule`, noise inputs), so these
//! helpers assume consistent shapes. All reductions are plain left-to-right
//! accumulation, which keeps results bit-reproducible.

use alloc::vec::Vec;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| dot(row, x)).collect()
}

/// `x' M x`. Symmetrizing `M` leaves this unchanged, so quadratic forms of a
/// permanent-impact matrix need no explicit `(M + M')/2`.
pub(crate) fn quad_form(x: &[f64], m: &[Vec<f64>]) -> f64 {
    x.iter().zip(m).map(|(xi, row)| xi * dot(row, x)).sum()
}

/// `x' D x` for a diagonal matrix stored as a vector.
pub(crate) fn diag_quad_form(x: &[f64], d: &[f64]) -> f64 {
    x.iter().zip(d).map(|(xi, di)| xi * xi * di).sum()
}
