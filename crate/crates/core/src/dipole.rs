//! Static magnetic field of point dipoles, sampled over a square window, and
//! a local-resonance readout model driven by a scan trajectory.
//!
//! Everything is in reduced units: moments are order unity, distances are
//! order unity, and the field carries the bare `1/(4*pi)` prefactor.

use crate::error::{Error, Result};
use crate::par;
use crate::sfc::Trajectory;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

/// Samples closer than this to any dipole are rejected rather than returning
/// a huge, meaningless value.
pub const SINGULARITY_LIMIT: f64 = 1e-9;

/// A point dipole: position and moment vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dipole {
    pub position: [f64; 3],
    pub moment: [f64; 3],
}

/// One Cartesian component of the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldComponent {
    X,
    Y,
    Z,
}

impl FieldComponent {
    pub const ALL: [FieldComponent; 3] = [FieldComponent::X, FieldComponent::Y, FieldComponent::Z];

    pub fn index(self) -> usize {
        match self {
            FieldComponent::X => 0,
            FieldComponent::Y => 1,
            FieldComponent::Z => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FieldComponent::X => "x",
            FieldComponent::Y => "y",
            FieldComponent::Z => "z",
        }
    }
}

impl fmt::Display for FieldComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldComponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(FieldComponent::X),
            "y" => Ok(FieldComponent::Y),
            "z" => Ok(FieldComponent::Z),
            other => Err(Error::InvalidConfig {
                what: "field component",
                details: format!("expected x|y|z, got {other:?}"),
            }),
        }
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Field of a dipole set at one point:
/// `H = sum_k (3 (m_k . r_hat) r_hat - m_k) / (4 pi r^3)`,
/// with `r` running from each dipole to the sample point.
///
/// Errors with [`Error::NearSingularity`] when the point is within
/// [`SINGULARITY_LIMIT`] of any dipole.
pub fn dipole_field_at(dipoles: &[Dipole], point: [f64; 3]) -> Result<[f64; 3]> {
    let mut field = [0.0f64; 3];
    for d in dipoles {
        let r = [
            point[0] - d.position[0],
            point[1] - d.position[1],
            point[2] - d.position[2],
        ];
        let rn = dot(r, r).sqrt();
        if rn < SINGULARITY_LIMIT {
            return Err(Error::NearSingularity {
                point,
                limit: SINGULARITY_LIMIT,
            });
        }
        let rhat = [r[0] / rn, r[1] / rn, r[2] / rn];
        let mr = dot(d.moment, rhat);
        let scale = 1.0 / (4.0 * PI * rn * rn * rn);
        for (f, (h, m)) in field.iter_mut().zip(rhat.iter().zip(&d.moment)) {
            *f += scale * (3.0 * mr * h - m);
        }
    }
    Ok(field)
}

/// Sampling window: an axis-aligned square of side `window_side` centered at
/// `window_center` in the plane `z = plane_z`, discretized into
/// `grid_n x grid_n` cells sampled at their centers.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldConfig {
    pub dipoles: Vec<Dipole>,
    pub window_center: [f64; 2],
    pub window_side: f64,
    pub grid_n: u32,
    pub plane_z: f64,
}

impl FieldConfig {
    pub fn new(
        dipoles: Vec<Dipole>,
        window_center: [f64; 2],
        window_side: f64,
        grid_n: u32,
        plane_z: f64,
    ) -> Result<Self> {
        if !(window_side.is_finite() && window_side > 0.0) {
            return Err(Error::InvalidConfig {
                what: "field window",
                details: format!("window_side must be finite and positive, got {window_side}"),
            });
        }
        if grid_n == 0 {
            return Err(Error::InvalidConfig {
                what: "field window",
                details: "grid_n must be at least 1".into(),
            });
        }
        let coords_ok = window_center.iter().all(|v| v.is_finite())
            && plane_z.is_finite()
            && dipoles
                .iter()
                .all(|d| d.position.iter().chain(&d.moment).all(|v| v.is_finite()));
        if !coords_ok {
            return Err(Error::InvalidConfig {
                what: "field window",
                details: "all coordinates and moments must be finite".into(),
            });
        }
        Ok(Self {
            dipoles,
            window_center,
            window_side,
            grid_n,
            plane_z,
        })
    }

    /// Center of cell `(i, j)` in world coordinates.
    pub fn sample_point(&self, i: u32, j: u32) -> [f64; 3] {
        let n = self.grid_n as f64;
        let x = self.window_center[0] - self.window_side / 2.0
            + (i as f64 + 0.5) * self.window_side / n;
        let y = self.window_center[1] - self.window_side / 2.0
            + (j as f64 + 0.5) * self.window_side / n;
        [x, y, self.plane_z]
    }
}

/// Four identical dipoles at the corners `(+-1, +-1, 0)` of a square.
pub fn corner_dipoles(moment: [f64; 3]) -> Vec<Dipole> {
    [[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]
        .iter()
        .map(|&[x, y]| Dipole {
            position: [x, y, 0.0],
            moment,
        })
        .collect()
}

/// The benchmark geometry used by the bundled reference results: four unit
/// dipoles at `(+-1, +-1, 0)` with moments along the square diagonal
/// `(1, 1, 0)/sqrt(2)`, observed on a 32 x 32 lattice over the concentric
/// side-1 window in the `z = 0` plane. The window sits strictly inside the
/// dipole square, so no sample comes near a singularity.
pub fn reference_config() -> FieldConfig {
    reference_config_at(32)
}

/// Same geometry as [`reference_config`] at a chosen lattice resolution.
pub fn reference_config_at(grid_n: u32) -> FieldConfig {
    FieldConfig::new(
        corner_dipoles([FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]),
        [0.0, 0.0],
        1.0,
        grid_n,
        0.0,
    )
    .expect("benchmark geometry is valid")
}

/// Field sampled on every cell of a [`FieldConfig`] window. Storage is
/// row-major with `i` fastest: sample `(i, j)` lives at `j * grid_n + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldMap {
    config: FieldConfig,
    samples: Vec<[f64; 3]>,
}

impl FieldMap {
    pub fn config(&self) -> &FieldConfig {
        &self.config
    }

    pub fn grid_n(&self) -> u32 {
        self.config.grid_n
    }

    pub fn samples(&self) -> &[[f64; 3]] {
        &self.samples
    }

    /// Field vector at cell `(i, j)`. Panics if the cell is off-grid.
    pub fn at(&self, i: u32, j: u32) -> [f64; 3] {
        assert!(i < self.config.grid_n && j < self.config.grid_n);
        self.samples[(j * self.config.grid_n + i) as usize]
    }

    pub fn component(&self, i: u32, j: u32, component: FieldComponent) -> f64 {
        self.at(i, j)[component.index()]
    }

    /// (min, max) of one component over the whole map.
    pub fn component_range(&self, component: FieldComponent) -> (f64, f64) {
        let c = component.index();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for s in &self.samples {
            lo = lo.min(s[c]);
            hi = hi.max(s[c]);
        }
        (lo, hi)
    }
}

/// Evaluates the dipole field on every cell of the window. Cells are
/// evaluated independently (in parallel with the `parallel` feature); the
/// assembled map is identical either way. A sample falling within
/// [`SINGULARITY_LIMIT`] of a dipole fails the whole map with
/// [`Error::SingularCell`] naming the lowest offending cell.
pub fn sample_field_map(config: &FieldConfig) -> Result<FieldMap> {
    let n = config.grid_n as usize;
    let results = par::map_indices(n * n, |idx| {
        let i = (idx % n) as u32;
        let j = (idx / n) as u32;
        dipole_field_at(&config.dipoles, config.sample_point(i, j))
    });
    let mut samples = Vec::with_capacity(n * n);
    for (idx, r) in results.into_iter().enumerate() {
        match r {
            Ok(h) => samples.push(h),
            Err(Error::NearSingularity { point, limit }) => {
                return Err(Error::SingularCell {
                    i: (idx % n) as u32,
                    j: (idx / n) as u32,
                    point,
                    limit,
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(FieldMap {
        config: config.clone(),
        samples,
    })
}

/// Local-resonance readout: at each cell the probe sits in the local total
/// field `H_tot = H_z + 2 * strip_field`, responds with a Lorentzian line
/// centered at `gamma * |H_tot|`, and the readout sweeps drive frequency
/// over `[sweep_min, sweep_max]` in steps of `sweep_step`, keeping the
/// frequency of maximum absorption.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceModel {
    pub gamma: f64,
    pub linewidth: f64,
    pub sweep_min: f64,
    pub sweep_max: f64,
    pub sweep_step: f64,
    pub strip_field: f64,
}

impl ResonanceModel {
    pub fn new(
        gamma: f64,
        linewidth: f64,
        sweep_min: f64,
        sweep_max: f64,
        sweep_step: f64,
        strip_field: f64,
    ) -> Result<Self> {
        let finite = [gamma, linewidth, sweep_min, sweep_max, sweep_step, strip_field]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidConfig {
                what: "resonance model",
                details: "all parameters must be finite".into(),
            });
        }
        if gamma <= 0.0 || linewidth <= 0.0 || sweep_step <= 0.0 {
            return Err(Error::InvalidConfig {
                what: "resonance model",
                details: "gamma, linewidth and sweep_step must be positive".into(),
            });
        }
        if sweep_min >= sweep_max {
            return Err(Error::InvalidConfig {
                what: "resonance model",
                details: format!("sweep range [{sweep_min}, {sweep_max}] is empty"),
            });
        }
        Ok(Self {
            gamma,
            linewidth,
            sweep_min,
            sweep_max,
            sweep_step,
            strip_field,
        })
    }

    /// Builds a model whose sweep covers every resonance of the given map:
    /// the per-cell resonance range padded by `max(5 * linewidth, 5% of the
    /// range, 1e-6)`, with `linewidth = 0.01 * gamma * mean |H_tot|`
    /// (floored at 1e-12) and 4096 sweep steps.
    pub fn covering(map: &FieldMap, gamma: f64, strip_field: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) || !strip_field.is_finite() {
            return Err(Error::InvalidConfig {
                what: "resonance model",
                details: "gamma must be positive and strip_field finite".into(),
            });
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut sum = 0.0;
        for s in map.samples() {
            let w = gamma * (s[2] + 2.0 * strip_field).abs();
            lo = lo.min(w);
            hi = hi.max(w);
            sum += w;
        }
        let linewidth = (0.01 * sum / map.samples().len() as f64).max(1e-12);
        let pad = (5.0 * linewidth).max(0.05 * (hi - lo)).max(1e-6);
        let sweep_min = lo - pad;
        let sweep_max = hi + pad;
        let sweep_step = (sweep_max - sweep_min) / 4096.0;
        Self::new(gamma, linewidth, sweep_min, sweep_max, sweep_step, strip_field)
    }

    /// Number of points on the sweep grid.
    pub fn sweep_len(&self) -> usize {
        ((self.sweep_max - self.sweep_min) / self.sweep_step + 1e-9) as usize + 1
    }

    /// `k`-th sweep frequency.
    pub fn sweep_value(&self, k: usize) -> f64 {
        self.sweep_min + k as f64 * self.sweep_step
    }

    /// Lorentzian absorption at drive `omega` for a line at `omega_res`.
    pub fn absorption(&self, omega: f64, omega_res: f64) -> f64 {
        let d = (omega - omega_res) / self.linewidth;
        1.0 / (1.0 + d * d)
    }
}

/// Result of driving the readout along a trajectory: per cell, the inferred
/// z-field, an out-of-range flag, and the step at which the cell was
/// visited.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceScan {
    map: FieldMap,
    inferred: Vec<f64>,
    flagged: Vec<bool>,
    visit_step: Vec<u64>,
}

impl ResonanceScan {
    /// The true field map the readout was driven over.
    pub fn map(&self) -> &FieldMap {
        &self.map
    }

    pub fn grid_n(&self) -> u32 {
        self.map.grid_n()
    }

    /// Inferred z-field at cell `(i, j)`: `omega_best / gamma - 2 *
    /// strip_field`. For a flagged cell this is the (clamped) edge estimate
    /// and should not be trusted.
    pub fn inferred_at(&self, i: u32, j: u32) -> f64 {
        self.inferred[self.slot(i, j)]
    }

    /// True when the cell's resonance lies outside the sweep window.
    pub fn is_flagged(&self, i: u32, j: u32) -> bool {
        self.flagged[self.slot(i, j)]
    }

    /// Trajectory step at which cell `(i, j)` was visited.
    pub fn step_at(&self, i: u32, j: u32) -> u64 {
        self.visit_step[self.slot(i, j)]
    }

    pub fn flagged_count(&self) -> usize {
        self.flagged.iter().filter(|&&f| f).count()
    }

    /// Largest `|inferred - true H_z|` over unflagged cells; `None` when
    /// every cell is flagged.
    pub fn max_abs_error_unflagged(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (idx, s) in self.map.samples().iter().enumerate() {
            if self.flagged[idx] {
                continue;
            }
            let err = (self.inferred[idx] - s[2]).abs();
            best = Some(best.map_or(err, |b: f64| b.max(err)));
        }
        best
    }

    fn slot(&self, i: u32, j: u32) -> usize {
        let n = self.map.grid_n();
        assert!(i < n && j < n);
        (j * n + i) as usize
    }
}

/// Runs the resonance readout over every cell of `config`, visiting them in
/// `trajectory` order. The sweep outcome of a cell depends only on the cell,
/// so cells are evaluated independently (in parallel with the `parallel`
/// feature) and the visit order is recorded per cell.
///
/// Errors when the trajectory grid does not match `config.grid_n`, and
/// propagates sampling failures.
pub fn simulate_resonance_scan(
    config: &FieldConfig,
    model: &ResonanceModel,
    trajectory: &Trajectory,
) -> Result<ResonanceScan> {
    let n = config.grid_n;
    if trajectory.order().side() != n {
        return Err(Error::GridMismatch {
            map: n,
            trajectory: trajectory.order().side(),
        });
    }
    let map = sample_field_map(config)?;
    let total = (n as usize) * (n as usize);
    let mut visit_step = vec![0u64; total];
    for (step, cell) in trajectory.cells().iter().enumerate() {
        visit_step[(cell.y * n + cell.x) as usize] = step as u64;
    }
    let sweep_len = model.sweep_len();
    let per_cell = par::map_indices(total, |idx| {
        let h_tot = map.samples()[idx][2] + 2.0 * model.strip_field;
        let omega_res = model.gamma * h_tot.abs();
        let flagged = omega_res < model.sweep_min || omega_res > model.sweep_max;
        let mut best_a = f64::NEG_INFINITY;
        let mut best_omega = model.sweep_min;
        for k in 0..sweep_len {
            let omega = model.sweep_value(k);
            let a = model.absorption(omega, omega_res);
            if a > best_a {
                best_a = a;
                best_omega = omega;
            }
        }
        (best_omega / model.gamma - 2.0 * model.strip_field, flagged)
    });
    let mut inferred = Vec::with_capacity(total);
    let mut flagged = Vec::with_capacity(total);
    for (v, f) in per_cell {
        inferred.push(v);
        flagged.push(f);
    }
    Ok(ResonanceScan {
        map,
        inferred,
        flagged,
        visit_step,
    })
}
