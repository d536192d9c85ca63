//! Binary PGM membership images of planar sets.

use polyrep_core::geom::GridPoints;
use polyrep_core::{GridSpec, Representation};

use crate::parallel;

pub const INSIDE: u8 = 255;
pub const OUTSIDE: u8 = 0;
pub const BOUNDARY: u8 = 128;
pub const MAX_RESOLUTION: usize = 4096;

/// One byte per cell, top row at the largest `x2`: 128 where the cell's
/// corners disagree, otherwise membership of the cell center.
pub fn pixels(rep: &Representation, grid: &GridSpec) -> Vec<u8> {
    assert_eq!(grid.dim(), 2, "rasters are planar");
    let n = grid.resolution();
    let centers = parallel::membership(rep, grid, GridPoints::Centers);
    let corners = parallel::membership(rep, grid, GridPoints::Corners);
    let corner = |i: usize, j: usize| corners[j * (n + 1) + i];
    let mut out = Vec::with_capacity(n * n);
    for row in 0..n {
        let j = n - 1 - row;
        for i in 0..n {
            let c = corner(i, j);
            let mixed = c != corner(i + 1, j) || c != corner(i, j + 1) || c != corner(i + 1, j + 1);
            out.push(if mixed {
                BOUNDARY
            } else if centers[j * n + i] {
                INSIDE
            } else {
                OUTSIDE
            });
        }
    }
    out
}

pub fn pgm(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", width, height).into_bytes();
    out.extend_from_slice(pixels);
    out
}

pub fn render(rep: &Representation, grid: &GridSpec) -> Vec<u8> {
    let n = grid.resolution();
    pgm(n, n, &pixels(rep, grid))
}
