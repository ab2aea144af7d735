//! Analysis windows and the normalization sums PSD scaling needs.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowKind {
    #[default]
    Hann,
    Rectangular,
}

/// Periodic windows are the DFT-analysis form (period `n`); symmetric
/// windows are the filter-design form (period `n - 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Symmetry {
    #[default]
    Periodic,
    Symmetric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowVector {
    coefficients: Vec<f64>,
    kind: WindowKind,
    symmetry: Symmetry,
}

impl WindowVector {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn kind(&self) -> WindowKind {
        self.kind
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `Σ w[j]²`
    pub fn power_sum(&self) -> f64 {
        window_power_sum(self)
    }

    /// `Σ w[j]`
    pub fn coherent_sum(&self) -> f64 {
        window_coherent_sum(self)
    }
}

/// Builds a window of length `n`.
///
/// A symmetric window of length 1 is `[1.0]`.
pub fn make_window(kind: WindowKind, n: usize, symmetry: Symmetry) -> Result<WindowVector> {
    if n == 0 {
        return Err(Error::invalid("window length must be at least 1"));
    }
    let coefficients = match kind {
        WindowKind::Rectangular => vec![1.0; n],
        WindowKind::Hann => {
            let period = match symmetry {
                Symmetry::Periodic => n,
                Symmetry::Symmetric if n == 1 => return Ok(single(kind, symmetry)),
                Symmetry::Symmetric => n - 1,
            };
            (0..n).map(|j| 0.5 * (1.0 - cos_turns(j, period))).collect()
        }
    };
    Ok(WindowVector {
        coefficients,
        kind,
        symmetry,
    })
}

fn single(kind: WindowKind, symmetry: Symmetry) -> WindowVector {
    WindowVector {
        coefficients: vec![1.0],
        kind,
        symmetry,
    }
}

pub fn window_power_sum(w: &WindowVector) -> f64 {
    neumaier_sum(w.coefficients.iter().map(|c| c * c))
}

pub fn window_coherent_sum(w: &WindowVector) -> f64 {
    neumaier_sum(w.coefficients.iter().copied())
}

/// `cos(2π j / period)` with the argument reduced to the first octant, so
/// quarter-period points come out as exact 0, ±1 and the table is exactly
/// symmetric about the half period.
pub(crate) fn cos_turns(j: usize, period: usize) -> f64 {
    let (c, _) = cos_sin_turns(j, period);
    c
}

/// `(cos, sin)` of `2π j / period`, reduced by quadrant and octant symmetry.
pub(crate) fn cos_sin_turns(j: usize, period: usize) -> (f64, f64) {
    debug_assert!(period > 0);
    let n = period as u128;
    let r = (j as u128) % n;
    // angle = (π/2)·(q + rem/n), rem in [0, n)
    let q = (4 * r) / n;
    let rem = 4 * r - q * n;
    let (c, s) = quarter_cos_sin(rem, n);
    match q {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

// cos/sin of (π/2)·rem/n for rem in [0, n); uses the complementary angle
// above π/4 so that both halves are evaluated with a small argument.
fn quarter_cos_sin(rem: u128, n: u128) -> (f64, f64) {
    use std::f64::consts::FRAC_PI_2;
    if rem == 0 {
        return (1.0, 0.0);
    }
    if 2 * rem <= n {
        let theta = FRAC_PI_2 * (rem as f64 / n as f64);
        (theta.cos(), theta.sin())
    } else {
        let theta = FRAC_PI_2 * ((n - rem) as f64 / n as f64);
        (theta.sin(), theta.cos())
    }
}

// Compensated summation; keeps the closed-form window sums exact at the
// lengths used for PSD normalization.
pub(crate) fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
