//! Two-level pulse propagators and a scan-driven search over a drive
//! amplitude grid.
//!
//! A pulse with coupling `C` and phase `phi` acts as `V = exp(C * G)` with
//! the real generator `G = [[0, sin phi], [-cos phi, 0]]`. Since
//! `G^2 = -(sin phi cos phi) * I`, the exponential closes over `I` and `G`
//! and splits into a trigonometric, a hyperbolic and a nilpotent branch.

use crate::analysis::{autocorrelation, AutocorrMode};
use crate::error::{Error, Result};
use crate::par;
use crate::rng::SplitMix64;
use crate::sfc::{generate_trajectory, CurveOrder, GridCell, ScanKind};
use num_complex::Complex64;

/// One pulse: coupling strength `C` and drive phase `phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    pub coupling: f64,
    pub phase: f64,
}

/// A pulse sequence with a global phase `gamma_phase`; pulse 0 is applied
/// first.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseTrain {
    pulses: Vec<PulseSpec>,
    gamma_phase: f64,
}

impl PulseTrain {
    pub fn new(pulses: Vec<PulseSpec>, gamma_phase: f64) -> Result<Self> {
        if pulses.is_empty() {
            return Err(Error::EmptyPulseTrain);
        }
        let finite = gamma_phase.is_finite()
            && pulses
                .iter()
                .all(|p| p.coupling.is_finite() && p.phase.is_finite());
        if !finite {
            return Err(Error::InvalidConfig {
                what: "pulse train",
                details: "couplings, phases and gamma_phase must be finite".into(),
            });
        }
        Ok(Self {
            pulses,
            gamma_phase,
        })
    }

    pub fn pulses(&self) -> &[PulseSpec] {
        &self.pulses
    }

    pub fn gamma_phase(&self) -> f64 {
        self.gamma_phase
    }
}

/// Dense 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub rows: [[Complex64; 2]; 2],
}

impl Matrix2 {
    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn from_real(rows: [[f64; 2]; 2]) -> Self {
        Self {
            rows: rows.map(|r| r.map(|v| Complex64::new(v, 0.0))),
        }
    }

    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        let a = &self.rows;
        let b = &rhs.rows;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Matrix2 { rows: out }
    }

    pub fn scale(&self, z: Complex64) -> Matrix2 {
        Matrix2 {
            rows: self.rows.map(|r| r.map(|v| v * z)),
        }
    }

    pub fn det(&self) -> Complex64 {
        self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix2 {
        Matrix2 {
            rows: [
                [self.rows[0][0].conj(), self.rows[1][0].conj()],
                [self.rows[0][1].conj(), self.rows[1][1].conj()],
            ],
        }
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.rows[0][0] * v[0] + self.rows[0][1] * v[1],
            self.rows[1][0] * v[0] + self.rows[1][1] * v[1],
        ]
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, rhs: &Matrix2) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.rows[i][j] - rhs.rows[i][j]).norm());
            }
        }
        m
    }
}

/// Closed-form propagator of one pulse, `exp(C * G)`.
///
/// With `w2 = sin(phi) cos(phi)`:
/// - `w2 > 0`: `cos(C w) I + (sin(C w) / w) G`, `w = sqrt(w2)`;
/// - `w2 < 0`: `cosh(C k) I + (sinh(C k) / k) G`, `k = sqrt(-w2)`;
/// - `w2 = 0`: `I + C G` (nilpotent generator).
///
/// The determinant is exactly 1 in all branches; the matrix is real.
pub fn pulse_unitary(pulse: &PulseSpec) -> Matrix2 {
    let s = pulse.phase.sin();
    let c = pulse.phase.cos();
    let w2 = s * c;
    let (a, b) = if w2 > 0.0 {
        let w = w2.sqrt();
        let cw = pulse.coupling * w;
        (cw.cos(), cw.sin() / w)
    } else if w2 < 0.0 {
        let k = (-w2).sqrt();
        let ck = pulse.coupling * k;
        (ck.cosh(), ck.sinh() / k)
    } else {
        (1.0, pulse.coupling)
    };
    Matrix2::from_real([[a, b * s], [-b * c, a]])
}

/// Propagator of a whole train: `exp(i gamma) * V_K ... V_2 V_1`, pulse 1
/// applied first (rightmost factor).
pub fn compose_sequence(train: &PulseTrain) -> Matrix2 {
    let mut acc = Matrix2::identity();
    for pulse in train.pulses() {
        acc = pulse_unitary(pulse).mul(&acc);
    }
    acc.scale(Complex64::new(0.0, train.gamma_phase()).exp())
}

/// A drive segment: sampled field envelope `E(t)` and a fixed coupling
/// direction `mu`. Sample times must be finite and strictly increasing;
/// the segment spans `[t_start, t_end] = [first, last]` sample time.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSegment {
    samples: Vec<(f64, [f64; 2])>,
    mu: [f64; 2],
}

impl FieldSegment {
    pub fn new(samples: Vec<(f64, [f64; 2])>, mu: [f64; 2]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::TooFewSamples(samples.len()));
        }
        let finite = mu.iter().all(|v| v.is_finite())
            && samples
                .iter()
                .all(|(t, e)| t.is_finite() && e.iter().all(|v| v.is_finite()));
        if !finite {
            return Err(Error::InvalidConfig {
                what: "field segment",
                details: "sample times, field values and mu must be finite".into(),
            });
        }
        if samples.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::NonMonotonicSamples);
        }
        Ok(Self { samples, mu })
    }

    pub fn samples(&self) -> &[(f64, [f64; 2])] {
        &self.samples
    }

    pub fn mu(&self) -> [f64; 2] {
        self.mu
    }

    pub fn t_start(&self) -> f64 {
        self.samples[0].0
    }

    pub fn t_end(&self) -> f64 {
        self.samples[self.samples.len() - 1].0
    }
}

/// Trapezoid rule for `C = integral of mu . E(t) dt` over the segment.
/// Exact for fields that are piecewise linear between samples.
pub fn coupling_integral(segment: &FieldSegment) -> f64 {
    let mu = segment.mu();
    let f = |e: [f64; 2]| mu[0] * e[0] + mu[1] * e[1];
    let mut sum = 0.0;
    for w in segment.samples().windows(2) {
        let (t0, e0) = w[0];
        let (t1, e1) = w[1];
        sum += (t1 - t0) * (f(e0) + f(e1)) / 2.0;
    }
    sum
}

/// Parameters for [`control_scan_search`]: walk a scan trajectory over a
/// `2^order` grid of constant-drive amplitudes `E in [e_min, e_max]^2`,
/// apply each drive for `duration` at phase `phi`, and record the transfer
/// probability from `initial` to `target`.
///
/// The seed jitters the amplitude lattice: the cell centers are shifted by a
/// uniform draw in `[0, cell)` per axis. For `kind = random` the same seed
/// also shuffles the visit order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSearchParams {
    pub e_min: f64,
    pub e_max: f64,
    pub order: CurveOrder,
    pub mu: [f64; 2],
    pub duration: f64,
    pub phi: f64,
    pub initial: [f64; 2],
    pub target: [f64; 2],
    pub threshold: f64,
    pub kind: ScanKind,
    pub seed: u64,
}

/// Step-by-step record of one scan search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchTrace {
    pub kind: ScanKind,
    pub threshold: f64,
    pub cells: Vec<GridCell>,
    pub e_points: Vec<[f64; 2]>,
    pub j_values: Vec<f64>,
    /// Lag-1 Pearson autocorrelation of the J series; `None` when the
    /// series is constant.
    pub lag1_autocorr: Option<f64>,
    /// First step with `J >= threshold`, if any.
    pub first_hit: Option<usize>,
}

/// Runs the scan search. Cells are evaluated independently (in parallel with
/// the `parallel` feature); the J series, its lag-1 autocorrelation and the
/// first threshold hit all follow the trajectory order.
pub fn control_scan_search(params: &ScanSearchParams) -> Result<SearchTrace> {
    let finite = [
        params.e_min,
        params.e_max,
        params.duration,
        params.phi,
        params.threshold,
    ]
    .iter()
    .chain(&params.mu)
    .chain(&params.initial)
    .chain(&params.target)
    .all(|v| v.is_finite());
    if !finite {
        return Err(Error::InvalidConfig {
            what: "scan search",
            details: "all parameters must be finite".into(),
        });
    }
    if params.e_min >= params.e_max {
        return Err(Error::InvalidConfig {
            what: "scan search",
            details: format!("amplitude range [{}, {}] is empty", params.e_min, params.e_max),
        });
    }
    if params.duration <= 0.0 {
        return Err(Error::InvalidConfig {
            what: "scan search",
            details: format!("duration must be positive, got {}", params.duration),
        });
    }
    let initial = normalize(params.initial)?;
    let target = normalize(params.target)?;

    let side = params.order.side();
    let cell = (params.e_max - params.e_min) / side as f64;
    let mut rng = SplitMix64::new(params.seed);
    let ox = rng.next_f64() * cell;
    let oy = rng.next_f64() * cell;

    let trajectory = generate_trajectory(params.kind, params.order, params.seed);
    let total = trajectory.len();
    let per_step = par::map_indices(total, |step| {
        let c = trajectory.cells()[step];
        let e = [
            params.e_min + (c.x as f64 + 0.5) * cell + ox,
            params.e_min + (c.y as f64 + 0.5) * cell + oy,
        ];
        // Constant drive over the step: two samples are exact under the
        // trapezoid rule.
        let segment = FieldSegment::new(vec![(0.0, e), (params.duration, e)], params.mu)
            .expect("constant segment is valid");
        let coupling = coupling_integral(&segment);
        let v = pulse_unitary(&PulseSpec {
            coupling,
            phase: params.phi,
        });
        let out = v.apply([
            Complex64::new(initial[0], 0.0),
            Complex64::new(initial[1], 0.0),
        ]);
        let amp = Complex64::new(target[0], 0.0) * out[0] + Complex64::new(target[1], 0.0) * out[1];
        (e, amp.norm_sqr())
    });

    let mut e_points = Vec::with_capacity(total);
    let mut j_values = Vec::with_capacity(total);
    for (e, j) in per_step {
        e_points.push(e);
        j_values.push(j);
    }
    let lag1 = match autocorrelation(&j_values, 1, AutocorrMode::Pearson) {
        Ok(ac) => Some(ac.at(1)),
        Err(Error::ConstantSeries) => None,
        Err(e) => return Err(e),
    };
    let first_hit = j_values.iter().position(|&j| j >= params.threshold);
    Ok(SearchTrace {
        kind: params.kind,
        threshold: params.threshold,
        cells: trajectory.cells().to_vec(),
        e_points,
        j_values,
        lag1_autocorr: lag1,
        first_hit,
    })
}

fn normalize(v: [f64; 2]) -> Result<[f64; 2]> {
    let norm = (v[0] * v[0] + v[1] * v[1]).sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroNormState);
    }
    Ok([v[0] / norm, v[1] / norm])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    const TOL: f64 = 1e-12;

    fn demo_params(kind: ScanKind, seed: u64) -> ScanSearchParams {
        ScanSearchParams {
            e_min: 0.0,
            e_max: 4.0,
            order: CurveOrder::new(5).unwrap(),
            mu: [1.0, 0.0],
            duration: 1.0,
            phi: FRAC_PI_4,
            initial: [1.0, 0.0],
            target: [0.0, 1.0],
            threshold: 0.9,
            kind,
            seed,
        }
    }

    #[test]
    fn zero_coupling_is_the_identity() {
        for phi in [0.0, 0.3, FRAC_PI_4, 2.0, 5.5] {
            let v = pulse_unitary(&PulseSpec {
                coupling: 0.0,
                phase: phi,
            });
            assert_eq!(v.max_abs_diff(&Matrix2::identity()), 0.0);
        }
    }

    #[test]
    fn zero_phase_gives_the_shear_form() {
        let v = pulse_unitary(&PulseSpec {
            coupling: 1.0,
            phase: 0.0,
        });
        let expected = Matrix2::from_real([[1.0, 0.0], [-1.0, 1.0]]);
        assert_eq!(v.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn quarter_phase_rotates_with_unit_determinant() {
        let v = pulse_unitary(&PulseSpec {
            coupling: SQRT_2 * PI,
            phase: FRAC_PI_4,
        });
        let minus_i = Matrix2::from_real([[-1.0, 0.0], [0.0, -1.0]]);
        assert!(v.max_abs_diff(&minus_i) < TOL);
        assert!((v.det() - Complex64::new(1.0, 0.0)).norm() < TOL);
        let gram = v.adjoint().mul(&v);
        assert!(gram.max_abs_diff(&Matrix2::identity()) < TOL);
    }

    #[test]
    fn zero_phase_shear_is_far_from_unitary() {
        let v = pulse_unitary(&PulseSpec {
            coupling: 1.0,
            phase: 0.0,
        });
        let gram = v.adjoint().mul(&v);
        assert!(gram.max_abs_diff(&Matrix2::identity()) > 0.1);
    }

    #[test]
    fn hyperbolic_branch_matches_its_closed_form() {
        let phi = 3.0 * FRAC_PI_4;
        let v = pulse_unitary(&PulseSpec {
            coupling: 1.0,
            phase: phi,
        });
        let k = 0.5f64.sqrt();
        assert!((v.rows[0][0].re - k.cosh()).abs() < TOL);
        assert!((v.rows[0][1].re - (k.sinh() / k) * phi.sin()).abs() < TOL);
        assert!((v.det() - Complex64::new(1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn determinant_is_one_across_branches() {
        for &phi in &[0.0, 0.2, FRAC_PI_2, 1.9, PI, 4.0, 5.9] {
            for &c in &[-5.0, -1.3, 0.0, 0.7, 5.0] {
                let v = pulse_unitary(&PulseSpec {
                    coupling: c,
                    phase: phi,
                });
                assert!(
                    (v.det() - Complex64::new(1.0, 0.0)).norm() < TOL,
                    "phi={phi} c={c}"
                );
            }
        }
    }

    #[test]
    fn opposite_couplings_cancel() {
        let train = PulseTrain::new(
            vec![
                PulseSpec {
                    coupling: 1.7,
                    phase: 1.1,
                },
                PulseSpec {
                    coupling: -1.7,
                    phase: 1.1,
                },
            ],
            0.0,
        )
        .unwrap();
        assert!(compose_sequence(&train).max_abs_diff(&Matrix2::identity()) < TOL);
    }

    #[test]
    fn composition_applies_pulse_one_first() {
        let a = PulseSpec {
            coupling: 1.0,
            phase: 0.0,
        };
        let b = PulseSpec {
            coupling: 1.0,
            phase: FRAC_PI_2,
        };
        let train = PulseTrain::new(vec![a, b], 0.0).unwrap();
        let manual = pulse_unitary(&b).mul(&pulse_unitary(&a));
        assert_eq!(compose_sequence(&train).max_abs_diff(&manual), 0.0);
    }

    #[test]
    fn global_phase_multiplies_the_product() {
        let train = PulseTrain::new(
            vec![PulseSpec {
                coupling: 0.0,
                phase: 0.0,
            }],
            FRAC_PI_2,
        )
        .unwrap();
        let u = compose_sequence(&train);
        assert!((u.rows[0][0] - Complex64::new(0.0, 1.0)).norm() < TOL);
        assert!((u.rows[1][1] - Complex64::new(0.0, 1.0)).norm() < TOL);
        assert!(u.rows[0][1].norm() < TOL && u.rows[1][0].norm() < TOL);
    }

    #[test]
    fn empty_and_non_finite_trains_are_rejected() {
        assert_eq!(PulseTrain::new(vec![], 0.0), Err(Error::EmptyPulseTrain));
        assert!(PulseTrain::new(
            vec![PulseSpec {
                coupling: f64::NAN,
                phase: 0.0
            }],
            0.0
        )
        .is_err());
    }

    #[test]
    fn trapezoid_integral_is_exact_for_linear_fields() {
        let seg = FieldSegment::new(
            vec![
                (0.0, [0.0, 0.0]),
                (0.5, [0.5, 0.0]),
                (2.0, [2.0, 0.0]),
            ],
            [1.0, 0.0],
        )
        .unwrap();
        assert_eq!(coupling_integral(&seg), 2.0);
        assert_eq!(seg.t_start(), 0.0);
        assert_eq!(seg.t_end(), 2.0);
    }

    #[test]
    fn trapezoid_integral_converges_on_a_sine() {
        let n = 10_000;
        let samples: Vec<(f64, [f64; 2])> = (0..n)
            .map(|i| {
                let t = i as f64 * PI / (n - 1) as f64;
                (t, [t.sin(), 0.0])
            })
            .collect();
        let seg = FieldSegment::new(samples, [1.0, 0.0]).unwrap();
        let integral = coupling_integral(&seg);
        assert!((integral - 2.0).abs() < 1e-6);
        assert!((integral - 1.999999983547369).abs() < 1e-9);
    }

    #[test]
    fn segment_validation_rejects_bad_samples() {
        assert_eq!(
            FieldSegment::new(vec![(0.0, [1.0, 0.0])], [1.0, 0.0]),
            Err(Error::TooFewSamples(1))
        );
        assert_eq!(
            FieldSegment::new(vec![(0.0, [1.0, 0.0]), (0.0, [1.0, 0.0])], [1.0, 0.0]),
            Err(Error::NonMonotonicSamples)
        );
        assert!(FieldSegment::new(
            vec![(0.0, [f64::INFINITY, 0.0]), (1.0, [1.0, 0.0])],
            [1.0, 0.0]
        )
        .is_err());
    }

    #[test]
    fn search_j_values_follow_the_transfer_formula() {
        let trace = control_scan_search(&demo_params(ScanKind::Serpentine, 3)).unwrap();
        for (e, j) in trace.e_points.iter().zip(&trace.j_values) {
            let expected = (e[0] / SQRT_2).sin().powi(2);
            assert!((j - expected).abs() < TOL, "E={e:?}");
        }
    }

    #[test]
    fn search_lag1_values_are_pinned() {
        let hilbert = control_scan_search(&demo_params(ScanKind::Hilbert, 1)).unwrap();
        let raster = control_scan_search(&demo_params(ScanKind::Raster, 1)).unwrap();
        assert!((hilbert.lag1_autocorr.unwrap() - 0.9879843168100174).abs() < 1e-9);
        assert!((raster.lag1_autocorr.unwrap() - 0.9776416078693787).abs() < 1e-9);
    }

    #[test]
    fn search_first_hit_respects_the_threshold() {
        let mut params = demo_params(ScanKind::Hilbert, 1);
        params.threshold = 0.0;
        let trace = control_scan_search(&params).unwrap();
        assert_eq!(trace.first_hit, Some(0));

        params.threshold = 1.5;
        let trace = control_scan_search(&params).unwrap();
        assert_eq!(trace.first_hit, None);
        assert_eq!(trace.j_values.len(), 1024);
    }

    #[test]
    fn search_normalizes_states_and_rejects_zero_norm() {
        let mut params = demo_params(ScanKind::Hilbert, 2);
        let a = control_scan_search(&params).unwrap();
        params.initial = [3.0, 0.0];
        params.target = [0.0, -2.0];
        let b = control_scan_search(&params).unwrap();
        for (x, y) in a.j_values.iter().zip(&b.j_values) {
            assert!((x - y).abs() < TOL);
        }
        params.initial = [0.0, 0.0];
        assert_eq!(control_scan_search(&params), Err(Error::ZeroNormState));
    }

    #[test]
    fn constant_objective_has_undefined_lag1() {
        let mut params = demo_params(ScanKind::Raster, 4);
        params.mu = [0.0, 0.0];
        let trace = control_scan_search(&params).unwrap();
        assert_eq!(trace.lag1_autocorr, None);
        assert!(trace.j_values.iter().all(|&j| j.abs() < TOL));
    }

    #[test]
    fn search_validates_its_range() {
        let mut params = demo_params(ScanKind::Raster, 4);
        params.e_max = params.e_min;
        assert!(control_scan_search(&params).is_err());
    }

    #[test]
    fn search_rejects_non_positive_durations() {
        for duration in [0.0, -1.0] {
            let mut params = demo_params(ScanKind::Raster, 4);
            params.duration = duration;
            assert!(control_scan_search(&params).is_err());
        }
    }
}
