//! Binary entropy and the scalar ratios built from it.
//!
//! All logarithms are base 2. The functions studied are
//!
//! * `h(x) = -(x log x + (1-x) log(1-x))`
//! * `f(x, y) = h(xy) / (y h(x) + x h(y))`, set to 1 on the boundary of the unit square
//! * `g(x) = h(x)/x`, `g'(x) = log(1-x)/x²`, `G(x) = x g'(x)`
//! * `r(x) = h(x²) / (x h(x))`, whose minimum over `(0,1)` sits at `φ`.

mod certify;
pub mod interval;

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::exec;

pub use certify::{
    certify_lower_bound, BoxStatus, Certificate, CertifyParams, FailingBox, Outcome, Rect,
    StripScan,
};
pub use interval::Interval;

/// `φ = (√5 − 1)/2`, the positive root of `x² + x − 1`.
pub const PHI: f64 = 0.618_033_988_749_894_8;
/// `ψ = 1 − φ = (3 − √5)/2`.
pub const PSI: f64 = 0.381_966_011_250_105_1;
/// `1/(2φ) = (1 + √5)/4`, the minimum of `f`.
pub const HALF_INV_PHI: f64 = 0.809_016_994_374_947_4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub psi: f64,
    pub phi: f64,
    pub half_inv_phi: f64,
}

pub const CONSTANTS: Constants = Constants {
    psi: PSI,
    phi: PHI,
    half_inv_phi: HALF_INV_PHI,
};

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticError {
    #[error("argument {0} outside [0, 1]")]
    Domain(f64),
    #[error("argument {0} outside the open interval (0, 1)")]
    OpenDomain(f64),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// `h(x)` in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64, AnalyticError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(AnalyticError::Domain(x));
    }
    Ok(binary_entropy_unchecked(x))
}

/// `h` without the domain check; callers guarantee `0 <= x <= 1`.
#[inline]
pub fn binary_entropy_unchecked(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -(x * x.log2() + (1.0 - x) * (-x).ln_1p() * std::f64::consts::LOG2_E)
}

/// `g(x) = h(x)/x` on `(0, 1)`.
#[inline]
pub(crate) fn g_unchecked(x: f64) -> f64 {
    binary_entropy_unchecked(x) / x
}

/// `log2(1 − x)`, accurate for small `x`.
#[inline]
pub(crate) fn log2_one_minus(x: f64) -> f64 {
    (-x).ln_1p() * std::f64::consts::LOG2_E
}

/// Below this product `f` is evaluated as `g(xy)/(g(x)+g(y))`.
const SMALL_PRODUCT: f64 = 1e-8;

/// `f(x, y)` on the closed unit square.
pub fn f_ratio(x: f64, y: f64) -> Result<f64, AnalyticError> {
    for v in [x, y] {
        if !(0.0..=1.0).contains(&v) {
            return Err(AnalyticError::Domain(v));
        }
    }
    Ok(f_ratio_unchecked(x, y))
}

/// `f` without the domain check. Symmetric bit-for-bit in its arguments.
pub fn f_ratio_unchecked(x: f64, y: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 || y <= 0.0 || y >= 1.0 {
        return 1.0;
    }
    let xy = x * y;
    if xy < SMALL_PRODUCT {
        return g_unchecked(xy) / (g_unchecked(x) + g_unchecked(y));
    }
    binary_entropy_unchecked(xy)
        / (binary_entropy_unchecked(x) * y + binary_entropy_unchecked(y) * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GValues {
    pub g: f64,
    pub g_prime: f64,
    #[serde(rename = "G")]
    pub big_g: f64,
}

/// `g`, its closed-form derivative, and `G = x g'(x)` at an interior point.
pub fn g_family(x: f64) -> Result<GValues, AnalyticError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(AnalyticError::OpenDomain(x));
    }
    let l = log2_one_minus(x);
    Ok(GValues {
        g: g_unchecked(x),
        g_prime: l / (x * x),
        big_g: l / x,
    })
}

/// `r(x) = h(x²)/(x h(x))` on `(0, 1)`.
pub fn diagonal_ratio(x: f64) -> Result<f64, AnalyticError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(AnalyticError::OpenDomain(x));
    }
    Ok(binary_entropy_unchecked(x * x) / (x * binary_entropy_unchecked(x)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalMinimum {
    pub x_star: f64,
    pub value: f64,
    pub grid_points: usize,
    pub refine_tol: f64,
    pub iterations: usize,
}

/// Coarse scan of `r` on the interior grid `i/(N+1)`, then golden-section
/// refinement inside the bracket around the best grid point.
pub fn minimize_diagonal(
    grid_points: usize,
    refine_tol: f64,
) -> Result<DiagonalMinimum, AnalyticError> {
    if grid_points < 100 {
        return Err(AnalyticError::Parameter(format!(
            "grid_points must be at least 100, got {grid_points}"
        )));
    }
    if refine_tol.is_nan() || refine_tol <= 0.0 {
        return Err(AnalyticError::Parameter(format!(
            "refine_tol must be positive, got {refine_tol}"
        )));
    }
    let step = 1.0 / (grid_points as f64 + 1.0);
    let r = |x: f64| binary_entropy_unchecked(x * x) / (x * binary_entropy_unchecked(x));
    let values = exec::map_range(1..grid_points + 1, |i| r(i as f64 * step));
    let best = values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v < values[best] { i } else { best });
    let i = best + 1;
    let lo = (i - 1) as f64 * step;
    let hi = ((i + 1) as f64 * step).min(1.0);
    let (x_star, value, iterations) = golden_section(r, lo.max(f64::MIN_POSITIVE), hi, refine_tol);
    Ok(DiagonalMinimum {
        x_star,
        value,
        grid_points,
        refine_tol,
        iterations,
    })
}

const GOLDEN_MAX_ITERATIONS: usize = 200;

/// Golden-section search for a unimodal minimum on `[a, b]`. Ties keep the
/// left bracket.
pub fn golden_section<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> (f64, f64, usize) {
    let inv_gr = PHI;
    let mut c = b - inv_gr * (b - a);
    let mut d = a + inv_gr * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while b - a > tol && iterations < GOLDEN_MAX_ITERATIONS {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_gr * (b - a);
            fd = f(d);
        }
        iterations += 1;
        if c >= d {
            break;
        }
    }
    let (x, v) = if fc <= fd { (c, fc) } else { (d, fd) };
    (x, v, iterations)
}

/// `m(x, y) = h(xy) − (x h(y) + y h(x)) / (2φ)`.
pub fn entropy_margin(x: f64, y: f64) -> f64 {
    binary_entropy_unchecked(x * y)
        - (x * binary_entropy_unchecked(y) + y * binary_entropy_unchecked(x)) / (2.0 * PHI)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridCheck {
    pub grid_points: usize,
    pub resolution: f64,
    /// Minimum of `m` over the interior grid.
    pub min_margin: f64,
    pub argmin: (f64, f64),
    /// Minimum of `m` over the four edges of the square, sampled at the same spacing.
    pub boundary_min_margin: f64,
    pub argmin_distance_to_phi: f64,
}

/// Evaluates `m` on the interior grid `{i/(N+1)}²` and on the square's edges.
pub fn margin_grid_check(grid_points: usize) -> Result<GridCheck, AnalyticError> {
    if grid_points < 100 {
        return Err(AnalyticError::Parameter(format!(
            "grid_points must be at least 100, got {grid_points}"
        )));
    }
    let step = 1.0 / (grid_points as f64 + 1.0);
    let rows = exec::map_range(1..grid_points + 1, |i| {
        let x = i as f64 * step;
        (1..grid_points + 1).fold((f64::INFINITY, 0.0), |(best, by), j| {
            let y = j as f64 * step;
            let m = entropy_margin(x, y);
            if m < best {
                (m, y)
            } else {
                (best, by)
            }
        })
    });
    let (mut min_margin, mut argmin) = (f64::INFINITY, (0.0, 0.0));
    for (i, &(m, y)) in rows.iter().enumerate() {
        if m < min_margin {
            min_margin = m;
            argmin = ((i + 1) as f64 * step, y);
        }
    }
    let boundary_min_margin = (0..=grid_points + 1)
        .map(|j| (j as f64 * step).min(1.0))
        .flat_map(|t| [(0.0, t), (1.0, t), (t, 0.0), (t, 1.0)])
        .map(|(x, y)| entropy_margin(x, y))
        .fold(f64::INFINITY, f64::min);
    Ok(GridCheck {
        grid_points,
        resolution: step,
        min_margin,
        argmin,
        boundary_min_margin,
        argmin_distance_to_phi: (argmin.0 - PHI).hypot(argmin.1 - PHI),
    })
}

/// CSV dump of `f` and `m` on the interior grid, header `x,y,f,margin`.
pub fn grid_csv(grid_points: usize) -> String {
    let step = 1.0 / (grid_points as f64 + 1.0);
    let mut out = String::from("x,y,f,margin\n");
    for i in 1..=grid_points {
        let x = i as f64 * step;
        for j in 1..=grid_points {
            let y = j as f64 * step;
            let _ = writeln!(
                out,
                "{x},{y},{},{}",
                f_ratio_unchecked(x, y),
                entropy_margin(x, y)
            );
        }
    }
    out
}
