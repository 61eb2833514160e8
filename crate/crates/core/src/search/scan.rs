use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::conditions::cayley_determinant;
use crate::error::{Error, Result};
use crate::kepler::params::SystemParams;
use crate::tolerance::Tolerances;

/// A rectangular grid over the `(E, D)` plane, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanGrid {
    pub energy_range: [f64; 2],
    pub d_range: [f64; 2],
    pub energy_steps: usize,
    pub d_steps: usize,
}

impl ScanGrid {
    pub fn new(energy_range: [f64; 2], d_range: [f64; 2], energy_steps: usize, d_steps: usize) -> Result<Self> {
        for (name, [lo, hi]) in [("E", energy_range), ("D", d_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidInput(format!("{name} range [{lo}, {hi}] is empty or not finite")));
            }
        }
        if energy_steps < 2 || d_steps < 2 {
            return Err(Error::InvalidInput("grid resolution must be at least 2 per axis".into()));
        }
        Ok(ScanGrid {
            energy_range,
            d_range,
            energy_steps,
            d_steps,
        })
    }

    fn coord([lo, hi]: [f64; 2], steps: usize, k: usize) -> f64 {
        if k + 1 == steps {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (steps - 1) as f64
        }
    }

    pub fn energy(&self, i: usize) -> f64 {
        Self::coord(self.energy_range, self.energy_steps, i)
    }

    pub fn second_integral(&self, j: usize) -> f64 {
        Self::coord(self.d_range, self.d_steps, j)
    }

    pub fn len(&self) -> usize {
        self.energy_steps * self.d_steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanCell {
    pub i: usize,
    pub j: usize,
    pub energy: f64,
    pub second_integral: f64,
    pub in_region: bool,
    pub regular: bool,
    /// `|det_n|` for `n = 3 … n_max`; `None` where it cannot be evaluated.
    pub determinants: Vec<Option<f64>>,
    /// `singular`, `zeroN` (`|det_n|` below the closure tolerance) and
    /// `crossN` (`det_n` changes sign towards the next cell in `E` or `D`).
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub grid: ScanGrid,
    pub n_max: usize,
    /// Every grid cell, `E` index major.
    pub cells: Vec<ScanCell>,
}

impl ScanResult {
    /// Cells inside the closed region of bounded motion.
    pub fn admissible(&self) -> impl Iterator<Item = &ScanCell> {
        self.cells.iter().filter(|c| c.in_region)
    }
}

/// Evaluates `|det_n|`, `n = 3 … n_max`, on every grid cell in parallel.
/// Output order follows the grid indices, independent of scheduling.
pub fn scan_periodicity(grid: &ScanGrid, n_max: usize) -> Result<ScanResult> {
    scan_periodicity_with(grid, n_max, &Tolerances::default())
}

pub fn scan_periodicity_with(grid: &ScanGrid, n_max: usize, tol: &Tolerances) -> Result<ScanResult> {
    if n_max < 3 {
        return Err(Error::UnsupportedPeriod(n_max));
    }
    let signed: Vec<(ScanCell, Vec<Option<f64>>)> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / grid.d_steps, idx % grid.d_steps);
            let (energy, second_integral) = (grid.energy(i), grid.second_integral(j));
            let p = SystemParams::new(energy, second_integral).with_tolerances(*tol);
            let regular = p.is_regular();
            let values: Vec<Option<f64>> = (3..=n_max)
                .map(|n| {
                    if regular {
                        cayley_determinant(&p, n).ok().filter(|v| v.is_finite())
                    } else {
                        None
                    }
                })
                .collect();
            let mut flags = Vec::new();
            if !regular {
                flags.push("singular".to_string());
            }
            for (k, v) in values.iter().enumerate() {
                if matches!(v, Some(v) if v.abs() < tol.close) {
                    flags.push(format!("zero{}", k + 3));
                }
            }
            let cell = ScanCell {
                i,
                j,
                energy,
                second_integral,
                in_region: p.in_region(),
                regular,
                determinants: values.iter().map(|v| v.map(f64::abs)).collect(),
                flags,
            };
            (cell, values)
        })
        .collect();

    let sign_at = |i: usize, j: usize, k: usize| signed[i * grid.d_steps + j].1[k].map(f64::signum);
    let mut cells: Vec<ScanCell> = Vec::with_capacity(signed.len());
    for (cell, values) in &signed {
        let mut cell = cell.clone();
        for k in 0..values.len() {
            let here = sign_at(cell.i, cell.j, k);
            let neighbours = [
                (cell.i + 1 < grid.energy_steps).then(|| sign_at(cell.i + 1, cell.j, k)),
                (cell.j + 1 < grid.d_steps).then(|| sign_at(cell.i, cell.j + 1, k)),
            ];
            let crosses = neighbours
                .into_iter()
                .flatten()
                .any(|there| matches!((here, there), (Some(a), Some(b)) if a != b));
            if crosses {
                cell.flags.push(format!("cross{}", k + 3));
            }
        }
        cells.push(cell);
    }
    Ok(ScanResult {
        grid: *grid,
        n_max,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(ScanGrid::new([-0.5, -0.1], [1.0, 3.0], 1, 5).is_err());
        assert!(ScanGrid::new([-0.1, -0.5], [1.0, 3.0], 5, 5).is_err());
        assert!(ScanGrid::new([-0.5, f64::NAN], [1.0, 3.0], 5, 5).is_err());
        let g = ScanGrid::new([-0.5, -0.1], [1.0, 3.0], 5, 3).unwrap();
        assert_eq!(g.energy(4), -0.1);
        assert_eq!(g.second_integral(1), 2.0);
    }

    #[test]
    fn period_three_cell_is_flagged() {
        // E step 1/24, D step 1/4: hits (-5/24, 7/4) up to rounding.
        let g = ScanGrid::new([-0.5, -1.0 / 24.0], [0.5, 3.0], 12, 11).unwrap();
        let res = scan_periodicity(&g, 5).unwrap();
        let cell = res
            .cells
            .iter()
            .find(|c| (c.energy + 5.0 / 24.0).abs() < 1e-15 && (c.second_integral - 1.75).abs() < 1e-15)
            .unwrap();
        assert!(cell.flags.contains(&"zero3".to_string()), "{cell:?}");
        // D = 2 runs through the grid
        assert!(res.cells.iter().any(|c| c.flags.contains(&"singular".to_string())));
        assert_eq!(res.cells.len(), 12 * 11);
    }

    #[test]
    fn two_periodic_curve_is_singular() {
        // 1 + 2DE + 4E² = 0 at E = -1/4, D = 5/2
        let g = ScanGrid::new([-0.5, -0.25], [2.0, 2.5], 2, 3).unwrap();
        let res = scan_periodicity(&g, 4).unwrap();
        let cell = res.cells.iter().find(|c| c.energy == -0.25 && c.second_integral == 2.5).unwrap();
        assert_eq!(cell.flags, vec!["singular".to_string()]);
        assert!(cell.in_region);
    }

    #[test]
    fn deterministic_under_parallelism() {
        let g = ScanGrid::new([-0.9, -0.05], [0.1, 4.0], 17, 19).unwrap();
        assert_eq!(scan_periodicity(&g, 6).unwrap(), scan_periodicity(&g, 6).unwrap());
    }
}
