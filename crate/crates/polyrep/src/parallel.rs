//! Grid membership on a rayon pool. Chunks are evaluated independently and
//! concatenated in index order, so results do not depend on the thread count.

use polyrep_core::geom::{boundary_cells_from, compare_memberships, BoundaryCell, GridPoints, Membership};
use polyrep_core::{GridSpec, Representation, SampleReport};
use rayon::prelude::*;

const CHUNK: usize = 4096;

/// Runs `f` on a pool with `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

pub fn membership(rep: &Representation, grid: &GridSpec, points: GridPoints) -> Vec<bool> {
    let m = Membership::new(rep);
    let total = grid.point_count(points);
    let starts: Vec<usize> = (0..total).step_by(CHUNK).collect();
    let parts: Vec<Vec<bool>> = starts
        .par_iter()
        .map(|&s| m.grid_range(grid, points, s..(s + CHUNK).min(total)))
        .collect();
    parts.concat()
}

pub fn compare(a: &Representation, b: &Representation, grid: &GridSpec) -> SampleReport {
    let ma = membership(a, grid, GridPoints::Corners);
    let mb = membership(b, grid, GridPoints::Corners);
    compare_memberships(grid, &ma, &mb)
}

pub fn boundary_cells(rep: &Representation, grid: &GridSpec) -> Vec<BoundaryCell> {
    let corners = membership(rep, grid, GridPoints::Corners);
    boundary_cells_from(rep, grid, &corners)
}
