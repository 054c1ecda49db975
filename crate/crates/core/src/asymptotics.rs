//! Roots of `x^4 - 3x^3 - 2x^2 - x + 1` and the leading growth term of `T_n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::counting::t_sequence;
use crate::error::{Error, Result};

/// Coefficients from the highest degree down.
pub const CHARACTERISTIC: [f64; 5] = [1.0, -3.0, -2.0, -1.0, 1.0];

/// Fit window for the leading coefficient.
pub const FIT_RANGE: (usize, usize) = (20, 30);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticModel {
    /// `(re, im)` of every root, sorted by decreasing modulus.
    pub roots: Vec<(f64, f64)>,
    pub dominant_root: f64,
    /// The real root of smallest modulus.
    pub second_real_root: f64,
    pub dominant_coefficient: f64,
    pub max_residual: f64,
}

pub fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn eval_derivative(coeffs: &[f64], z: Complex64) -> Complex64 {
    let degree = coeffs.len() - 1;
    coeffs[..degree]
        .iter()
        .enumerate()
        .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| {
            acc * z + c * (degree - i) as f64
        })
}

/// All complex roots of a monic polynomial by simultaneous Weierstrass
/// iteration, then a few Newton steps on each root.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 || coeffs[0] != 1.0 {
        return Err(Error::InvalidArgument("polynomial must be monic of degree >= 1".into()));
    }
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..degree).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..500 {
        let mut shift = 0.0f64;
        for i in 0..degree {
            let zi = roots[i];
            let denom = (0..degree)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (zi - roots[j]));
            let step = eval(coeffs, zi) / denom;
            roots[i] = zi - step;
            shift = shift.max(step.norm());
        }
        if shift < 1e-15 {
            break;
        }
    }
    for z in &mut roots {
        for _ in 0..5 {
            let d = eval_derivative(coeffs, *z);
            if d.norm() == 0.0 {
                break;
            }
            *z -= eval(coeffs, *z) / d;
        }
    }
    roots.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    Ok(roots)
}

/// Least-squares `c` minimising `sum (T_n - c r^n)^2` over `n` in `range`.
pub fn fit_leading_coefficient(root: f64, range: (usize, usize)) -> Result<f64> {
    let t = t_sequence(range.1)?;
    let (mut num, mut den) = (0.0f64, 0.0f64);
    for n in range.0..=range.1 {
        let p = root.powi(n as i32);
        num += t[n - 1] as f64 * p;
        den += p * p;
    }
    Ok(num / den)
}

pub fn characteristic_roots() -> Result<AsymptoticModel> {
    let roots = polynomial_roots(&CHARACTERISTIC)?;
    let max_residual = roots
        .iter()
        .map(|&z| eval(&CHARACTERISTIC, z).norm())
        .fold(0.0, f64::max);
    if max_residual >= 1e-12 {
        return Err(Error::Internal(format!(
            "root refinement stalled at residual {max_residual}"
        )));
    }
    let real: Vec<f64> = roots.iter().filter(|z| z.im.abs() < 1e-9).map(|z| z.re).collect();
    let dominant_root = roots[0].re;
    if roots[0].im.abs() >= 1e-9 {
        return Err(Error::Internal("dominant root is not real".into()));
    }
    let second_real_root = real
        .iter()
        .copied()
        .min_by(|a, b| a.abs().total_cmp(&b.abs()))
        .ok_or_else(|| Error::Internal("no real roots".into()))?;
    let dominant_coefficient = fit_leading_coefficient(dominant_root, FIT_RANGE)?;
    Ok(AsymptoticModel {
        roots: roots.iter().map(|z| (z.re, z.im)).collect(),
        dominant_root,
        second_real_root,
        dominant_coefficient,
        max_residual,
    })
}

/// `T_{n+1} / T_n` from the recurrence.
pub fn growth_ratio(n: usize) -> Result<f64> {
    let t = t_sequence(n + 1)?;
    Ok(t[n] as f64 / t[n - 1] as f64)
}
