//! Independent reference implementations used to cross-check the library.
//! These deliberately avoid the library's own code paths.

#![allow(dead_code)]

pub type Mat = [[f64; 2]; 2];

pub const MAT_IDENTITY: Mat = [[1.0, 0.0], [0.0, 1.0]];

pub fn mat_mul(a: Mat, b: Mat) -> Mat {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_scale(a: Mat, s: f64) -> Mat {
    a.map(|r| r.map(|v| v * s))
}

pub fn mat_add(a: Mat, b: Mat) -> Mat {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

pub fn mat_max_abs_diff(a: Mat, b: Mat) -> f64 {
    let mut m = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

/// Matrix exponential by scaling-and-squaring over a 30-term Taylor series.
pub fn expm_series(a: Mat) -> Mat {
    let norm = a.iter().flatten().fold(0.0f64, |m, &v| m.max(v.abs()));
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > 0.5 {
        scaled_norm /= 2.0;
        squarings += 1;
    }
    let b = mat_scale(a, 0.5f64.powi(squarings as i32));
    let mut term = MAT_IDENTITY;
    let mut sum = MAT_IDENTITY;
    for j in 1..=30 {
        term = mat_scale(mat_mul(term, b), 1.0 / j as f64);
        sum = mat_add(sum, term);
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = mat_mul(result, result);
    }
    result
}

/// The pulse generator `[[0, sin phi], [-cos phi, 0]]` scaled by the
/// coupling, ready for [`expm_series`].
pub fn pulse_generator(coupling: f64, phase: f64) -> Mat {
    [
        [0.0, coupling * phase.sin()],
        [-coupling * phase.cos(), 0.0],
    ]
}

/// Single-lag autocorrelation computed directly from the definitions.
pub fn autocorr_direct_pearson(x: &[f64], k: usize) -> f64 {
    let n = x.len();
    let mut mean = 0.0;
    for &v in x {
        mean += v;
    }
    mean /= n as f64;
    let mut num = 0.0;
    for i in 0..n - k {
        num += (x[i] - mean) * (x[i + k] - mean);
    }
    let mut den = 0.0;
    for &v in x {
        den += (v - mean) * (v - mean);
    }
    num / den
}

pub fn autocorr_direct_raw(x: &[f64], k: usize) -> f64 {
    let n = x.len();
    let mut num = 0.0;
    for i in 0..n - k {
        num += x[i] * x[i + k];
    }
    num /= (n - k) as f64;
    let mut den = 0.0;
    for &v in x {
        den += v * v;
    }
    den /= n as f64;
    num / den
}
