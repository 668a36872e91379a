//! Occupancy grids: conservative volume estimates from counting filled
//! cells.

use crate::ball::PointCloud;
use crate::CcError;
use serde::Serialize;
use std::collections::HashSet;

/// Cubical cells of a fixed side anchored at the origin, recording every
/// cell some point landed in. Volume is the count times cellⁿ, which under-
/// counts the continuum region the points sample.
#[derive(Clone, Debug)]
pub struct OccupancyGrid {
    dim: usize,
    cell: f64,
    cells: HashSet<Vec<i64>>,
}

impl OccupancyGrid {
    pub fn new(dim: usize, cell: f64) -> Result<OccupancyGrid, CcError> {
        if dim == 0 {
            return Err(CcError::BadConfig("grids need a positive dimension".into()));
        }
        if !(cell > 0.0 && cell.is_finite()) {
            return Err(CcError::BadConfig(format!(
                "cell size must be positive and finite, got {cell}"
            )));
        }
        Ok(OccupancyGrid { dim, cell, cells: HashSet::new() })
    }

    pub fn from_points<'a>(
        dim: usize,
        cell: f64,
        points: impl Iterator<Item = &'a [f64]>,
    ) -> Result<OccupancyGrid, CcError> {
        let mut grid = OccupancyGrid::new(dim, cell)?;
        for p in points {
            grid.insert(p);
        }
        Ok(grid)
    }

    fn key(&self, point: &[f64]) -> Vec<i64> {
        point.iter().map(|v| (v / self.cell).floor() as i64).collect()
    }

    pub fn insert(&mut self, point: &[f64]) {
        debug_assert_eq!(point.len(), self.dim);
        let key = self.key(point);
        self.cells.insert(key);
    }

    /// Whether the point's cell is occupied.
    pub fn contains(&self, point: &[f64]) -> bool {
        self.cells.contains(&self.key(point))
    }

    pub fn occupied(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self) -> f64 {
        self.cell
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn volume(&self) -> f64 {
        self.cells.len() as f64 * self.cell.powi(self.dim as i32)
    }
}

/// A volume estimate with the diagnostics needed to judge the cell size:
/// the largest per-axis extent of the cloud and a mean nearest-neighbor
/// distance estimated on even subsamples.
#[derive(Clone, Debug, Serialize)]
pub struct VolumeEstimate {
    pub volume: f64,
    pub occupied: usize,
    pub cell: f64,
    pub extent: f64,
    pub mean_nn_distance: f64,
}

/// Largest per-axis extent of the cloud.
fn max_extent(cloud: &PointCloud) -> f64 {
    let dim = cloud.dim();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for p in cloud.points() {
        for ((l, h), v) in lo.iter_mut().zip(hi.iter_mut()).zip(p) {
            *l = l.min(*v);
            *h = h.max(*v);
        }
    }
    lo.iter().zip(&hi).map(|(l, h)| h - l).fold(0.0, f64::max)
}

fn mean_nn_distance(cloud: &PointCloud) -> f64 {
    let len = cloud.len();
    if len < 2 {
        return 0.0;
    }
    let candidate_stride = len.div_ceil(256);
    let pool_stride = len.div_ceil(4096);
    let mut total = 0.0;
    let mut count = 0usize;
    for ci in (0..len).step_by(candidate_stride) {
        let c = cloud.point(ci);
        let mut best = f64::INFINITY;
        for pi in (0..len).step_by(pool_stride) {
            if pi == ci {
                continue;
            }
            let d2: f64 =
                c.iter().zip(cloud.point(pi)).map(|(a, b)| (a - b) * (a - b)).sum();
            best = best.min(d2);
        }
        if best.is_finite() {
            total += best.sqrt();
            count += 1;
        }
    }
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

/// Default cell size: the cloud's largest per-axis extent over 64.
pub fn suggest_cell(cloud: &PointCloud) -> Result<f64, CcError> {
    if cloud.is_empty() {
        return Err(CcError::EmptyCloud);
    }
    let extent = max_extent(cloud);
    if extent == 0.0 {
        return Err(CcError::BadConfig(
            "the cloud has no extent; pass an explicit cell size".into(),
        ));
    }
    Ok(extent / 64.0)
}

/// Occupancy volume of the cloud at the given cell size, with diagnostics.
pub fn estimate_volume(cloud: &PointCloud, cell: f64) -> Result<VolumeEstimate, CcError> {
    if cloud.is_empty() {
        return Err(CcError::EmptyCloud);
    }
    let grid = OccupancyGrid::from_points(cloud.dim(), cell, cloud.points())?;
    Ok(VolumeEstimate {
        volume: grid.volume(),
        occupied: grid.occupied(),
        cell,
        extent: max_extent(cloud),
        mean_nn_distance: mean_nn_distance(cloud),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(dim: usize, data: Vec<f64>) -> PointCloud {
        PointCloud::new(dim, data).unwrap()
    }

    #[test]
    fn cells_are_counted_once() {
        let c = cloud(2, vec![0.01, 0.01, 0.02, 0.02, 0.9, 0.9]);
        let grid = OccupancyGrid::from_points(2, 0.1, c.points()).unwrap();
        assert_eq!(grid.occupied(), 2);
        assert!((grid.volume() - 0.02).abs() < 1e-15);
        assert!(grid.contains(&[0.05, 0.05]));
        assert!(!grid.contains(&[0.5, 0.5]));
    }

    #[test]
    fn negative_coordinates_index_cleanly() {
        let c = cloud(1, vec![-0.05, 0.05]);
        let grid = OccupancyGrid::from_points(1, 0.1, c.points()).unwrap();
        assert_eq!(grid.occupied(), 2);
    }

    #[test]
    fn single_point_occupies_one_cell() {
        let c = cloud(3, vec![0.3, 0.4, 0.5]);
        let est = estimate_volume(&c, 0.1).unwrap();
        assert_eq!(est.occupied, 1);
        assert!((est.volume - 0.001).abs() < 1e-15);
        assert_eq!(est.mean_nn_distance, 0.0);
        assert_eq!(est.extent, 0.0);
    }

    #[test]
    fn suggested_cell_needs_extent() {
        let c = cloud(2, vec![1.0, 2.0, 1.0, 2.0]);
        assert!(suggest_cell(&c).is_err());
        let c = cloud(2, vec![0.0, 0.0, 3.2, 0.0]);
        assert!((suggest_cell(&c).unwrap() - 0.05).abs() < 1e-15);
    }

    #[test]
    fn empty_clouds_are_refused() {
        let c = cloud(2, Vec::new());
        assert!(matches!(estimate_volume(&c, 0.1), Err(CcError::EmptyCloud)));
    }
}
