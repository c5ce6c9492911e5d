//! Space-filling curve codec and scan trajectories over square grids.
//!
//! A trajectory visits every cell of a `2^m x 2^m` grid exactly once. Four
//! families are provided: plain raster order, serpentine (boustrophedon)
//! order, the Hilbert curve, and a seeded random permutation. The Hilbert
//! codec follows the classic bitwise construction: index 0 maps to the
//! lower-left cell `(0, 0)` and the order-1 curve visits
//! `(0,0), (0,1), (1,1), (1,0)`.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use std::fmt;
use std::str::FromStr;

/// Curve order `m`, valid from 1 to 16. Order `m` addresses a `2^m x 2^m`
/// grid, so every cell index fits in a `u64` (and every coordinate in a
/// `u32`) across the whole range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveOrder(u8);

impl CurveOrder {
    pub const MAX: u8 = 16;

    pub fn new(order: u32) -> Result<Self> {
        if order == 0 || order > Self::MAX as u32 {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self(order as u8))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Grid side length, `2^m`.
    pub fn side(self) -> u32 {
        1 << self.0
    }

    /// Total cell count, `4^m`.
    pub fn cell_count(self) -> u64 {
        1u64 << (2 * self.0)
    }
}

impl fmt::Display for CurveOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One grid cell, addressed by column `x` and row `y` from the lower-left
/// corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridCell {
    pub x: u32,
    pub y: u32,
}

/// Scan family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanKind {
    /// Row-major: x varies fastest, rows bottom to top.
    Raster,
    /// Like raster, but every other row is traversed right to left.
    Serpentine,
    /// Hilbert curve order.
    Hilbert,
    /// Seeded uniform random permutation of the cells.
    Random,
}

impl ScanKind {
    pub const ALL: [ScanKind; 4] = [
        ScanKind::Raster,
        ScanKind::Serpentine,
        ScanKind::Hilbert,
        ScanKind::Random,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScanKind::Raster => "raster",
            ScanKind::Serpentine => "serpentine",
            ScanKind::Hilbert => "hilbert",
            ScanKind::Random => "random",
        }
    }

    /// True for the families whose cell sequence ignores the seed.
    pub fn is_deterministic(self) -> bool {
        self != ScanKind::Random
    }
}

impl fmt::Display for ScanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raster" => Ok(ScanKind::Raster),
            "serpentine" => Ok(ScanKind::Serpentine),
            "hilbert" => Ok(ScanKind::Hilbert),
            "random" => Ok(ScanKind::Random),
            other => Err(Error::InvalidConfig {
                what: "scan kind",
                details: format!("expected raster|serpentine|hilbert|random, got {other:?}"),
            }),
        }
    }
}

/// A complete visit order over the grid: every cell exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    kind: ScanKind,
    order: CurveOrder,
    seed: Option<u64>,
    cells: Vec<GridCell>,
}

impl Trajectory {
    pub fn kind(&self) -> ScanKind {
        self.kind
    }

    pub fn order(&self) -> CurveOrder {
        self.order
    }

    /// Seed used to shuffle; `None` for the deterministic families.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn cells(&self) -> &[GridCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Quadrant rotation shared by both codec directions.
fn rot(n: u32, x: &mut u32, y: &mut u32, rx: u32, ry: u32) {
    if ry == 0 {
        if rx == 1 {
            *x = n - 1 - *x;
            *y = n - 1 - *y;
        }
        std::mem::swap(x, y);
    }
}

/// Maps a curve index to its cell. Errors if `index >= 4^m`.
pub fn hilbert_index_to_cell(index: u64, order: CurveOrder) -> Result<GridCell> {
    let cells = order.cell_count();
    if index >= cells {
        return Err(Error::IndexOutOfRange {
            index,
            order: order.get(),
            cells,
        });
    }
    let n = order.side();
    let mut t = index;
    let mut x = 0u32;
    let mut y = 0u32;
    let mut s = 1u32;
    while s < n {
        let rx = ((t / 2) & 1) as u32;
        let ry = ((t ^ rx as u64) & 1) as u32;
        rot(s, &mut x, &mut y, rx, ry);
        x += s * rx;
        y += s * ry;
        t /= 4;
        s *= 2;
    }
    Ok(GridCell { x, y })
}

/// Maps a cell to its curve index. Errors if the cell is off-grid.
pub fn hilbert_cell_to_index(cell: GridCell, order: CurveOrder) -> Result<u64> {
    let n = order.side();
    if cell.x >= n || cell.y >= n {
        return Err(Error::CellOutOfBounds {
            x: cell.x,
            y: cell.y,
            side: n,
        });
    }
    let mut x = cell.x;
    let mut y = cell.y;
    let mut d = 0u64;
    let mut s = n / 2;
    while s > 0 {
        let rx = u32::from(x & s > 0);
        let ry = u32::from(y & s > 0);
        d += (s as u64) * (s as u64) * ((3 * rx) ^ ry) as u64;
        rot(n, &mut x, &mut y, rx, ry);
        s /= 2;
    }
    Ok(d)
}

/// Builds the full visit order for a scan family. `seed` drives the shuffle
/// for [`ScanKind::Random`] and is ignored otherwise.
///
/// The cell list holds all `4^m` cells, so high orders allocate accordingly
/// (order 13 is already half a billion cells).
pub fn generate_trajectory(kind: ScanKind, order: CurveOrder, seed: u64) -> Trajectory {
    let n = order.side();
    let total = order.cell_count() as usize;
    let mut cells = Vec::with_capacity(total);
    match kind {
        ScanKind::Raster => {
            for y in 0..n {
                for x in 0..n {
                    cells.push(GridCell { x, y });
                }
            }
        }
        ScanKind::Serpentine => {
            for y in 0..n {
                if y % 2 == 0 {
                    for x in 0..n {
                        cells.push(GridCell { x, y });
                    }
                } else {
                    for x in (0..n).rev() {
                        cells.push(GridCell { x, y });
                    }
                }
            }
        }
        ScanKind::Hilbert => {
            for d in 0..order.cell_count() {
                // Index is always in range here.
                cells.push(hilbert_index_to_cell(d, order).expect("index in range"));
            }
        }
        ScanKind::Random => {
            for y in 0..n {
                for x in 0..n {
                    cells.push(GridCell { x, y });
                }
            }
            let mut rng = SplitMix64::new(seed);
            for i in (1..total).rev() {
                let j = rng.next_below(i as u64 + 1) as usize;
                cells.swap(i, j);
            }
        }
    }
    Trajectory {
        kind,
        order,
        seed: (kind == ScanKind::Random).then_some(seed),
        cells,
    }
}

/// Total Euclidean length of the visit path through cell centers, with the
/// grid scaled to the unit square: cell `(x, y)` sits at
/// `((x + 0.5) / 2^m, (y + 0.5) / 2^m)`.
pub fn polyline_length(trajectory: &Trajectory) -> f64 {
    let inv_n = 1.0 / trajectory.order.side() as f64;
    let mut sum = 0.0;
    for pair in trajectory.cells.windows(2) {
        let dx = (pair[1].x as f64 - pair[0].x as f64) * inv_n;
        let dy = (pair[1].y as f64 - pair[0].y as f64) * inv_n;
        sum += (dx * dx + dy * dy).sqrt();
    }
    sum
}
