//! Closed tours through planar point sets: a space-filling-curve ordering
//! heuristic, an exact solver for tiny instances, and the square-root
//! estimate for the optimal tour length through uniform points.

use crate::error::{Error, Result};
use crate::par;
use crate::rng::SplitMix64;
use crate::sfc::{hilbert_cell_to_index, CurveOrder, GridCell};
use itertools::Itertools;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Expected optimal closed-tour length through `N` uniform points in a
/// region of area `A` grows as `L ~ coefficient * sqrt(N A)`.
pub const TOUR_LENGTH_COEFFICIENT: f64 = 0.72;

/// Region containing a point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `[0, 1] x [0, 1]`, area 1.
    UnitSquare,
    /// Unit-radius disc centered at the origin, area pi.
    Disc,
}

impl Region {
    pub fn area(self) -> f64 {
        match self {
            Region::UnitSquare => 1.0,
            Region::Disc => PI,
        }
    }

    pub fn contains(self, p: [f64; 2]) -> bool {
        match self {
            Region::UnitSquare => (0.0..=1.0).contains(&p[0]) && (0.0..=1.0).contains(&p[1]),
            Region::Disc => p[0] * p[0] + p[1] * p[1] <= 1.0,
        }
    }

    /// Axis-aligned bounding square: (lower-left corner, side).
    pub fn bounding_square(self) -> ([f64; 2], f64) {
        match self {
            Region::UnitSquare => ([0.0, 0.0], 1.0),
            Region::Disc => ([-1.0, -1.0], 2.0),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::UnitSquare => "square",
            Region::Disc => "disc",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(Region::UnitSquare),
            "disc" => Ok(Region::Disc),
            other => Err(Error::InvalidConfig {
                what: "region",
                details: format!("expected square|disc, got {other:?}"),
            }),
        }
    }
}

/// Nonempty set of points inside a region.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<[f64; 2]>,
    region: Region,
}

impl PointSet {
    pub fn new(points: Vec<[f64; 2]>, region: Region) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for &p in &points {
            if !(p[0].is_finite() && p[1].is_finite()) || !region.contains(p) {
                return Err(Error::PointOutsideRegion {
                    point: p,
                    region: region.as_str(),
                });
            }
        }
        Ok(Self { points, region })
    }

    /// `n` independent uniform draws. The square draws coordinate pairs
    /// directly; the disc rejection-samples from its bounding square.
    pub fn uniform_random(n: usize, region: Region, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPointSet);
        }
        let mut rng = SplitMix64::new(seed);
        let mut points = Vec::with_capacity(n);
        match region {
            Region::UnitSquare => {
                for _ in 0..n {
                    let x = rng.next_f64();
                    let y = rng.next_f64();
                    points.push([x, y]);
                }
            }
            Region::Disc => {
                while points.len() < n {
                    let x = 2.0 * rng.next_f64() - 1.0;
                    let y = 2.0 * rng.next_f64() - 1.0;
                    if x * x + y * y <= 1.0 {
                        points.push([x, y]);
                    }
                }
            }
        }
        Ok(Self { points, region })
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn area(&self) -> f64 {
        self.region.area()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A closed visit order with its length.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    order: Vec<usize>,
    length: f64,
}

impl Tour {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn length(&self) -> f64 {
        self.length
    }
}

fn closed_length(points: &[[f64; 2]], order: &[usize]) -> f64 {
    let n = order.len();
    let mut sum = 0.0;
    for i in 0..n {
        let a = points[order[i]];
        let b = points[order[(i + 1) % n]];
        let dx = b[0] - a[0];
        let dy = b[1] - a[1];
        sum += (dx * dx + dy * dy).sqrt();
    }
    sum
}

/// Length of the closed tour visiting `points` in `order`, wrapping from the
/// last point back to the first. `order` must be a permutation of
/// `0..points.len()`.
pub fn tour_length(point_set: &PointSet, order: &[usize]) -> Result<f64> {
    let n = point_set.len();
    if order.len() != n {
        return Err(Error::NotAPermutation { n });
    }
    let mut seen = vec![false; n];
    for &idx in order {
        if idx >= n || seen[idx] {
            return Err(Error::NotAPermutation { n });
        }
        seen[idx] = true;
    }
    Ok(closed_length(point_set.points(), order))
}

/// Orders points by their cell index on an order-`m` curve over the region's
/// bounding square. Points sharing a cell keep their input order.
pub fn hilbert_order_tour(point_set: &PointSet, order: CurveOrder) -> Result<Tour> {
    let (corner, span) = point_set.region().bounding_square();
    let side = order.side();
    let mut keyed: Vec<(u64, usize)> = point_set
        .points()
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            let cx = cell_coord(p[0], corner[0], span, side);
            let cy = cell_coord(p[1], corner[1], span, side);
            let key = hilbert_cell_to_index(GridCell { x: cx, y: cy }, order)
                .expect("clamped cell is on-grid");
            (key, idx)
        })
        .collect();
    keyed.sort_by_key(|&(key, _)| key);
    let visit: Vec<usize> = keyed.into_iter().map(|(_, idx)| idx).collect();
    let length = tour_length(point_set, &visit)?;
    Ok(Tour {
        order: visit,
        length,
    })
}

fn cell_coord(v: f64, corner: f64, span: f64, side: u32) -> u32 {
    let u = (v - corner) / span;
    ((u * side as f64) as i64).clamp(0, side as i64 - 1) as u32
}

/// `coefficient * sqrt(N A)`: the expected optimal closed-tour length
/// through `n` uniform points in a region of area `area`.
pub fn etsp_estimate(n: u64, area: f64) -> f64 {
    TOUR_LENGTH_COEFFICIENT * (n as f64 * area).sqrt()
}

/// Exact shortest closed tour by exhaustive search, up to 10 points. The
/// first point is fixed (closed tours are rotation-invariant) and ties are
/// broken toward the lexicographically smallest visit order. Branches on the
/// second visit are searched independently (in parallel with the `parallel`
/// feature).
pub fn brute_force_tsp(point_set: &PointSet) -> Result<Tour> {
    let n = point_set.len();
    if n > 10 {
        return Err(Error::TooManyPoints(n));
    }
    if n <= 2 {
        let order: Vec<usize> = (0..n).collect();
        let length = closed_length(point_set.points(), &order);
        return Ok(Tour { order, length });
    }
    let points = point_set.points();
    let branch_best = par::map_indices(n - 1, |b| {
        let second = b + 1;
        let rest: Vec<usize> = (1..n).filter(|&v| v != second).collect();
        let mut best: Option<(f64, Vec<usize>)> = None;
        for tail in rest.iter().copied().permutations(rest.len()) {
            let mut order = Vec::with_capacity(n);
            order.push(0);
            order.push(second);
            order.extend(tail);
            let length = closed_length(points, &order);
            // Permutations arrive in ascending lexicographic order, so a
            // strict improvement keeps the lexicographically first optimum.
            let better = match &best {
                None => true,
                Some((bl, _)) => length < *bl,
            };
            if better {
                best = Some((length, order));
            }
        }
        best.expect("every branch has permutations")
    });
    let (length, order) = branch_best
        .into_iter()
        .reduce(|a, b| {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .expect("at least one branch");
    Ok(Tour { order, length })
}

/// Energy-level jump: a pair of distinct level indices, both at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LevelPair {
    pub n1: u32,
    pub n2: u32,
}

/// Validated list of level pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpSpec {
    pairs: Vec<LevelPair>,
}

impl JumpSpec {
    pub fn new(pairs: Vec<LevelPair>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for p in &pairs {
            if p.n1 == 0 || p.n2 == 0 || p.n1 == p.n2 {
                return Err(Error::InvalidLevelPair { n1: p.n1, n2: p.n2 });
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[LevelPair] {
        &self.pairs
    }
}

/// Jump set embedded in the unit square, with transition frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpPoints {
    pub point_set: PointSet,
    /// `|1/n1^2 - 1/n2^2|` per pair, in input order.
    pub frequencies: Vec<f64>,
}

/// Maps each pair `(n1, n2)` to the point `(1/n1^2, 1/n2^2)` in the unit
/// square; the transition frequency is the coordinate gap.
pub fn bohr_jump_points(spec: &JumpSpec) -> JumpPoints {
    let mut points = Vec::with_capacity(spec.pairs().len());
    let mut frequencies = Vec::with_capacity(spec.pairs().len());
    for p in spec.pairs() {
        let x = 1.0 / (p.n1 as f64 * p.n1 as f64);
        let y = 1.0 / (p.n2 as f64 * p.n2 as f64);
        points.push([x, y]);
        frequencies.push((x - y).abs());
    }
    let point_set =
        PointSet::new(points, Region::UnitSquare).expect("level points are in (0, 1]^2");
    JumpPoints {
        point_set,
        frequencies,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn corners() -> PointSet {
        PointSet::new(
            vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            Region::UnitSquare,
        )
        .unwrap()
    }

    fn order10() -> CurveOrder {
        CurveOrder::new(10).unwrap()
    }

    #[test]
    fn regions_validate_membership() {
        assert!(Region::UnitSquare.contains([0.0, 1.0]));
        assert!(!Region::UnitSquare.contains([1.0001, 0.5]));
        assert!(Region::Disc.contains([0.6, -0.6]));
        assert!(!Region::Disc.contains([0.9, 0.9]));
        assert_eq!(Region::Disc.area(), PI);
    }

    #[test]
    fn point_sets_are_validated() {
        assert_eq!(
            PointSet::new(vec![], Region::UnitSquare),
            Err(Error::EmptyPointSet)
        );
        assert!(matches!(
            PointSet::new(vec![[1.5, 0.0]], Region::UnitSquare),
            Err(Error::PointOutsideRegion { .. })
        ));
        assert!(matches!(
            PointSet::new(vec![[0.9, 0.9]], Region::Disc),
            Err(Error::PointOutsideRegion { .. })
        ));
        assert!(PointSet::new(vec![[f64::NAN, 0.0]], Region::UnitSquare).is_err());
    }

    #[test]
    fn uniform_draws_are_seeded_and_contained() {
        let ps = PointSet::uniform_random(100, Region::UnitSquare, 42).unwrap();
        assert_eq!(ps.points()[0], [0.7415648787718233, 0.1599103928769201]);
        let again = PointSet::uniform_random(100, Region::UnitSquare, 42).unwrap();
        assert_eq!(ps, again);

        let disc = PointSet::uniform_random(500, Region::Disc, 7).unwrap();
        assert_eq!(disc.len(), 500);
        assert!(disc.points().iter().all(|&p| Region::Disc.contains(p)));
        assert!(PointSet::uniform_random(0, Region::Disc, 7).is_err());
    }

    #[test]
    fn corner_tour_walks_the_perimeter() {
        let tour = hilbert_order_tour(&corners(), order10()).unwrap();
        assert_eq!(tour.order(), &[0, 3, 2, 1]);
        assert_eq!(tour.length(), 4.0);
    }

    #[test]
    fn tour_length_checks_permutations() {
        let ps = corners();
        assert_eq!(
            tour_length(&ps, &[0, 2, 1, 3]).unwrap(),
            2.0 + 2.0 * 2.0f64.sqrt()
        );
        assert!(matches!(
            tour_length(&ps, &[0, 1, 1, 3]),
            Err(Error::NotAPermutation { n: 4 })
        ));
        assert!(tour_length(&ps, &[0, 1]).is_err());
        assert!(tour_length(&ps, &[0, 1, 2, 4]).is_err());
    }

    #[test]
    fn curve_order_beats_the_diagonal_order() {
        let ps = corners();
        let heuristic = hilbert_order_tour(&ps, order10()).unwrap();
        let diagonal = tour_length(&ps, &[0, 2, 1, 3]).unwrap();
        assert!(heuristic.length() < diagonal);
    }

    #[test]
    fn shared_cells_preserve_input_order() {
        // Identical points all land in one cell; the heuristic must keep
        // 0, 1, 2.
        let ps = PointSet::new(vec![[0.5, 0.5]; 3], Region::UnitSquare).unwrap();
        let tour = hilbert_order_tour(&ps, order10()).unwrap();
        assert_eq!(tour.order(), &[0, 1, 2]);
        assert_eq!(tour.length(), 0.0);
    }

    #[test]
    fn estimate_follows_the_square_root_law() {
        assert!((etsp_estimate(100, 1.0) - 7.2).abs() < TOL);
        assert!((etsp_estimate(400, 1.0) - 2.0 * etsp_estimate(100, 1.0)).abs() < TOL);
        assert!((etsp_estimate(100, 4.0) - 2.0 * etsp_estimate(100, 1.0)).abs() < TOL);
    }

    #[test]
    fn exact_solver_finds_the_square_perimeter() {
        let tour = brute_force_tsp(&corners()).unwrap();
        assert_eq!(tour.length(), 4.0);
        // Both perimeter directions are optimal; the tie must resolve to
        // the lexicographically first order.
        assert_eq!(tour.order(), &[0, 1, 2, 3]);
    }

    #[test]
    fn exact_solver_handles_tiny_sets() {
        let one = PointSet::new(vec![[0.2, 0.2]], Region::UnitSquare).unwrap();
        assert_eq!(brute_force_tsp(&one).unwrap().length(), 0.0);

        let two = PointSet::new(vec![[0.0, 0.0], [0.0, 1.0]], Region::UnitSquare).unwrap();
        let tour = brute_force_tsp(&two).unwrap();
        assert_eq!(tour.order(), &[0, 1]);
        assert_eq!(tour.length(), 2.0);

        let three =
            PointSet::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], Region::UnitSquare).unwrap();
        let t3 = brute_force_tsp(&three).unwrap();
        assert_eq!(t3.order(), &[0, 1, 2]);
        assert!((t3.length() - tour_length(&three, &[0, 2, 1]).unwrap()).abs() < TOL);
    }

    #[test]
    fn exact_solver_rejects_large_sets() {
        let ps = PointSet::uniform_random(11, Region::UnitSquare, 1).unwrap();
        assert_eq!(brute_force_tsp(&ps), Err(Error::TooManyPoints(11)));
    }

    #[test]
    fn heuristic_never_beats_the_exact_solver() {
        for seed in 0..5 {
            let ps = PointSet::uniform_random(8, Region::UnitSquare, seed).unwrap();
            let exact = brute_force_tsp(&ps).unwrap();
            let heuristic = hilbert_order_tour(&ps, order10()).unwrap();
            assert!(
                exact.length() <= heuristic.length() + TOL,
                "seed {seed}: {} > {}",
                exact.length(),
                heuristic.length()
            );
        }
    }

    #[test]
    fn heuristic_ratio_is_near_the_estimate() {
        let ps = PointSet::uniform_random(1000, Region::UnitSquare, 3).unwrap();
        let tour = hilbert_order_tour(&ps, order10()).unwrap();
        let c = tour.length() / ((ps.len() as f64) * ps.area()).sqrt();
        assert!((0.5..1.5).contains(&c), "ratio {c}");
    }

    #[test]
    fn jump_points_map_levels_to_the_unit_square() {
        let spec = JumpSpec::new(vec![
            LevelPair { n1: 2, n2: 3 },
            LevelPair { n1: 1, n2: 2 },
        ])
        .unwrap();
        let jumps = bohr_jump_points(&spec);
        let p = jumps.point_set.points()[0];
        assert_eq!(p[0], 0.25);
        assert!((p[1] - 0.1111111111111111).abs() < TOL);
        assert!((jumps.frequencies[0] - 0.1388888888888889).abs() < TOL);
        assert_eq!(jumps.point_set.points()[1], [1.0, 0.25]);
        assert_eq!(jumps.frequencies[1], 0.75);
    }

    #[test]
    fn jump_spec_validation() {
        assert!(JumpSpec::new(vec![]).is_err());
        assert_eq!(
            JumpSpec::new(vec![LevelPair { n1: 2, n2: 2 }]),
            Err(Error::InvalidLevelPair { n1: 2, n2: 2 })
        );
        assert_eq!(
            JumpSpec::new(vec![LevelPair { n1: 0, n2: 1 }]),
            Err(Error::InvalidLevelPair { n1: 0, n2: 1 })
        );
    }
}
