//! Independent verification tools: a Numerov shooting eigensolver and the
//! reference adaptive quadrature.
//!
//! Nothing here calls into `specfun` or `quantum`; the solver only sees a
//! potential closure, which is what makes it usable as an oracle for them.

pub mod quad;

pub use quad::{integrate, quadrature, QuadOptions};

use crate::error::{DualError, Result};

/// Grid point distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Uniform,
    Log,
}

/// Discretization of the integration interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, n_points: usize, spacing: Spacing) -> Result<Self> {
        if !(r_min < r_max) || n_points < 100 || (spacing == Spacing::Log && r_min <= 0.0) {
            return Err(DualError::InvalidParameter(format!(
                "bad grid [{r_min}, {r_max}] with {n_points} points"
            )));
        }
        Ok(Self {
            r_min,
            r_max,
            n_points,
            spacing,
        })
    }

    pub fn log(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        Self::new(r_min, r_max, n_points, Spacing::Log)
    }

    pub fn uniform(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        Self::new(r_min, r_max, n_points, Spacing::Uniform)
    }

    /// Log spacing on `[1e-5, 50]` with 20 000 points.
    pub fn default_radial() -> Self {
        Self::log(1e-5, 50.0, 20_000).expect("valid default")
    }

    /// Uniform spacing on `[-10, 20]` with 20 000 points.
    pub fn default_line() -> Self {
        Self::uniform(-10.0, 20.0, 20_000).expect("valid default")
    }

    fn halved(&self) -> Self {
        Self {
            n_points: self.n_points / 2,
            ..*self
        }
    }

    /// Integration variable step (`ln r` for log grids).
    fn step(&self) -> f64 {
        let span = match self.spacing {
            Spacing::Uniform => self.r_max - self.r_min,
            Spacing::Log => (self.r_max / self.r_min).ln(),
        };
        span / (self.n_points - 1) as f64
    }

    /// Physical coordinate of point `i`.
    pub fn point(&self, i: usize) -> f64 {
        let h = self.step();
        match self.spacing {
            Spacing::Uniform => self.r_min + h * i as f64,
            Spacing::Log => self.r_min * (h * i as f64).exp(),
        }
    }
}

/// `u'' = (p_i - q_i E) u` on a uniform grid in the integration variable.
struct Discretized {
    p: Vec<f64>,
    q: Vec<f64>,
    h: f64,
    /// Outward start: `Some(values at points 0,1)` or `None` for a Dirichlet start.
    start: Option<(f64, f64)>,
}

/// Keeps `h²|k|` inside the stable range of the recurrence.
const STIFF_LIMIT: f64 = 6.0;
const RESCALE: f64 = 1e150;

impl Discretized {
    fn radial<V: Fn(f64) -> f64>(v: &V, l: f64, m: f64, hbar: f64, grid: &RadialGrid) -> Self {
        let n = grid.n_points;
        let s = 2.0 * m / (hbar * hbar);
        let mut p = Vec::with_capacity(n);
        let mut q = Vec::with_capacity(n);
        for i in 0..n {
            let r = grid.point(i);
            match grid.spacing {
                // ψ = r^{1/2} u(ln r): u'' = (L² + r² s (V - E)) u.
                Spacing::Log => {
                    p.push(l * l + r * r * s * v(r));
                    q.push(r * r * s);
                }
                Spacing::Uniform => {
                    p.push((l * l - 0.25) / (r * r) + s * v(r));
                    q.push(s);
                }
            }
        }
        let (r0, r1) = (grid.point(0), grid.point(1));
        let start = match grid.spacing {
            Spacing::Log => (r0.powf(l), r1.powf(l)),
            Spacing::Uniform => (r0.powf(l + 0.5), r1.powf(l + 0.5)),
        };
        Self {
            p,
            q,
            h: grid.step(),
            start: Some(start),
        }
    }

    fn line<V: Fn(f64) -> f64>(v: &V, m: f64, hbar: f64, grid: &RadialGrid) -> Self {
        let s = 2.0 * m / (hbar * hbar);
        let n = grid.n_points;
        let mut p = Vec::with_capacity(n);
        let q = vec![s; n];
        for i in 0..n {
            p.push(s * v(grid.point(i)));
        }
        Self {
            p,
            q,
            h: grid.step(),
            start: None,
        }
    }

    fn len(&self) -> usize {
        self.p.len()
    }

    fn k(&self, i: usize, e: f64) -> f64 {
        self.p[i] - self.q[i] * e
    }

    /// Index range where the recurrence is well conditioned at energy `e`.
    fn active_range(&self, e: f64) -> (usize, usize) {
        let h2 = self.h * self.h;
        let n = self.len();
        let mut lo = 0;
        while lo + 3 < n && h2 * self.k(lo, e) > STIFF_LIMIT {
            lo += 1;
        }
        let mut hi = n - 1;
        while hi > lo + 3 && h2 * self.k(hi, e) > STIFF_LIMIT {
            hi -= 1;
        }
        (lo, hi)
    }

    fn coeff(&self, i: usize, e: f64) -> f64 {
        1.0 - self.h * self.h * self.k(i, e) / 12.0
    }

    /// Outward Numerov sweep from `lo` to `to`; returns values and node count.
    fn outward(&self, e: f64, lo: usize, to: usize) -> (Vec<f64>, usize) {
        let mut u = vec![0.0; to + 1];
        match (lo, self.start) {
            (0, Some((a, b))) => {
                u[0] = a;
                u[1] = b;
            }
            _ => {
                u[lo] = 0.0;
                u[lo + 1] = 1e-30;
            }
        }
        let mut nodes = 0;
        let h2 = self.h * self.h;
        for i in lo + 1..to {
            let c_next = self.coeff(i + 1, e);
            let mid = 2.0 * (1.0 + 5.0 * h2 * self.k(i, e) / 12.0) * u[i];
            u[i + 1] = (mid - self.coeff(i - 1, e) * u[i - 1]) / c_next;
            if u[i + 1] == 0.0 || u[i + 1].signum() != u[i].signum() && u[i] != 0.0 {
                nodes += 1;
            }
            if u[i + 1].abs() > RESCALE {
                for x in &mut u[lo..=i + 1] {
                    *x /= RESCALE;
                }
            }
        }
        (u, nodes)
    }

    /// Inward sweep from `hi` down to `to`.
    fn inward(&self, e: f64, hi: usize, to: usize) -> Vec<f64> {
        let mut u = vec![0.0; hi + 1];
        u[hi] = 0.0;
        u[hi - 1] = 1e-30;
        let h2 = self.h * self.h;
        let mut i = hi - 1;
        while i > to {
            let c_prev = self.coeff(i - 1, e);
            let mid = 2.0 * (1.0 + 5.0 * h2 * self.k(i, e) / 12.0) * u[i];
            u[i - 1] = (mid - self.coeff(i + 1, e) * u[i + 1]) / c_prev;
            if u[i - 1].abs() > RESCALE {
                for x in &mut u[i - 1..=hi] {
                    *x /= RESCALE;
                }
            }
            i -= 1;
        }
        u
    }

    fn count(&self, e: f64) -> usize {
        let (lo, hi) = self.active_range(e);
        self.outward(e, lo, hi).1
    }

    /// Casoratian of the scaled outward and inward solutions at `m`; it is
    /// independent of `m` and vanishes exactly at discrete eigenvalues.
    fn mismatch(&self, e: f64, m: usize) -> f64 {
        let (lo, hi) = self.active_range(e);
        let m = m.clamp(lo + 2, hi - 2);
        let (uo, _) = self.outward(e, lo, m + 1);
        let ui = self.inward(e, hi, m);
        let (a0, a1) = (self.coeff(m, e), self.coeff(m + 1, e));
        let no = uo[m].abs().max(uo[m + 1].abs());
        let ni = ui[m].abs().max(ui[m + 1].abs());
        a0 * a1 * (uo[m] * ui[m + 1] - uo[m + 1] * ui[m]) / (no * ni)
    }

    fn turning_index(&self, e: f64) -> usize {
        (0..self.len())
            .rev()
            .find(|&i| self.k(i, e) < 0.0)
            .unwrap_or(self.len() / 2)
    }

    fn eigenvalue(&self, node_target: usize, energy_tol: f64) -> Result<f64> {
        let floor = self
            .p
            .iter()
            .zip(&self.q)
            .map(|(p, q)| p / q)
            .fold(f64::INFINITY, f64::min);
        if !floor.is_finite() {
            return Err(DualError::NoEigenvalueInBracket("potential is not finite on the grid".into()));
        }
        let mut lo = floor;
        let mut step = 1e-3 * floor.abs().max(1.0);
        let mut hi = lo + step;
        let mut found = false;
        for _ in 0..200 {
            if self.count(hi) > node_target {
                found = true;
                break;
            }
            lo = hi;
            step *= 2.0;
            hi = floor + step;
        }
        if !found {
            return Err(DualError::NoEigenvalueInBracket(format!(
                "fewer than {} states below {hi}",
                node_target + 1
            )));
        }
        // Narrow until exactly one eigenvalue is enclosed.
        for _ in 0..200 {
            let c_lo = self.count(lo);
            let c_hi = self.count(hi);
            if c_lo == node_target && c_hi == node_target + 1 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.count(mid) <= node_target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if self.count(lo) != node_target || self.count(hi) != node_target + 1 {
            return Err(DualError::NoEigenvalueInBracket(format!(
                "could not isolate state {node_target} in [{lo}, {hi}]"
            )));
        }
        let m = self.turning_index(0.5 * (lo + hi));
        let mut f_lo = self.mismatch(lo, m);
        let mut f_hi = self.mismatch(hi, m);
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if f_lo.signum() == f_hi.signum() {
            return Err(DualError::NoEigenvalueInBracket(format!(
                "matching function does not change sign on [{lo}, {hi}]"
            )));
        }
        // Bisection first, secant once the bracket is small.
        let mut iter = 0;
        while hi - lo > energy_tol && iter < 300 {
            iter += 1;
            let secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
            let narrow = hi - lo < 1e-4 * lo.abs().max(1.0);
            let trial = if narrow && secant > lo && secant < hi {
                secant
            } else {
                0.5 * (lo + hi)
            };
            let f = self.mismatch(trial, m);
            if f == 0.0 {
                return Ok(trial);
            }
            if f.signum() == f_lo.signum() {
                lo = trial;
                f_lo = f;
            } else {
                hi = trial;
                f_hi = f;
            }
            if narrow {
                // Guard the secant against one-sided stagnation.
                let mid = 0.5 * (lo + hi);
                let fm = self.mismatch(mid, m);
                if fm.signum() == f_lo.signum() {
                    lo = mid;
                    f_lo = fm;
                } else {
                    hi = mid;
                    f_hi = fm;
                }
            }
        }
        Ok(lo - f_lo * (hi - lo) / (f_hi - f_lo))
    }
}

/// Default absolute energy tolerance of the shooting refinement.
pub const ENERGY_TOL: f64 = 1e-10;
/// Largest tolerated change of an eigenvalue when the grid is halved.
pub const GRID_TOL: f64 = 1e-6;

/// Eigenvalue of `-(ħ²/2m)ψ'' + [V + ħ²(L²-1/4)/(2mr²)]ψ = Eψ` with `node_target` nodes.
///
/// The same solve is repeated on a grid with half the points; a disagreement
/// above [`GRID_TOL`] (relative to `max(1, |E|)`) is reported as
/// [`DualError::GridTooCoarse`].
pub fn numerov_eigen<V: Fn(f64) -> f64>(
    v: V,
    l: f64,
    m: f64,
    hbar: f64,
    node_target: usize,
    grid: &RadialGrid,
) -> Result<f64> {
    let fine = Discretized::radial(&v, l, m, hbar, grid).eigenvalue(node_target, ENERGY_TOL)?;
    let coarse =
        Discretized::radial(&v, l, m, hbar, &grid.halved()).eigenvalue(node_target, ENERGY_TOL)?;
    check_convergence(coarse, fine)
}

/// Single solve without the grid-halving check.
pub fn numerov_eigen_unchecked<V: Fn(f64) -> f64>(
    v: V,
    l: f64,
    m: f64,
    hbar: f64,
    node_target: usize,
    grid: &RadialGrid,
) -> Result<f64> {
    Discretized::radial(&v, l, m, hbar, grid).eigenvalue(node_target, ENERGY_TOL)
}

/// Eigenvalue of `-(ħ²/2m)ψ'' + Vψ = Eψ` on the whole line, Dirichlet at both grid ends.
pub fn numerov_eigen_line<V: Fn(f64) -> f64>(
    v: V,
    m: f64,
    hbar: f64,
    node_target: usize,
    grid: &RadialGrid,
) -> Result<f64> {
    let fine = Discretized::line(&v, m, hbar, grid).eigenvalue(node_target, ENERGY_TOL)?;
    let coarse = Discretized::line(&v, m, hbar, &grid.halved()).eigenvalue(node_target, ENERGY_TOL)?;
    check_convergence(coarse, fine)
}

/// Line solve without the grid-halving check.
pub fn numerov_eigen_line_unchecked<V: Fn(f64) -> f64>(
    v: V,
    m: f64,
    hbar: f64,
    node_target: usize,
    grid: &RadialGrid,
) -> Result<f64> {
    Discretized::line(&v, m, hbar, grid).eigenvalue(node_target, ENERGY_TOL)
}

fn check_convergence(coarse: f64, fine: f64) -> Result<f64> {
    if (coarse - fine).abs() > GRID_TOL * fine.abs().max(1.0) {
        Err(DualError::GridTooCoarse { coarse, fine })
    } else {
        Ok(fine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coulomb_ground_state() {
        let grid = RadialGrid::log(1e-6, 60.0, 20_000).unwrap();
        let e = numerov_eigen(|r| -1.0 / r, 0.5, 1.0, 1.0, 0, &grid).unwrap();
        assert!((e + 0.5).abs() < 1e-8, "{e}");
    }

    #[test]
    fn default_grid_coulomb() {
        let e = numerov_eigen(|r| -1.0 / r, 0.5, 1.0, 1.0, 0, &RadialGrid::default_radial()).unwrap();
        assert!((e + 0.5).abs() < 1e-5);
    }

    #[test]
    fn oscillator_levels_increase() {
        let grid = RadialGrid::log(1e-5, 12.0, 20_000).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for n in 0..4 {
            let e = numerov_eigen(|r| 0.5 * r * r, 0.5, 1.0, 1.0, n, &grid).unwrap();
            assert!((e - (2.0 * n as f64 + 1.5)).abs() < 1e-8, "n={n}: {e}");
            assert!(e > prev);
            prev = e;
        }
    }

    #[test]
    fn uniform_radial_grid() {
        let grid = RadialGrid::uniform(1e-4, 12.0, 40_000).unwrap();
        let e = numerov_eigen(|r| 0.5 * r * r, 1.5, 1.0, 1.0, 1, &grid).unwrap();
        assert!((e - 4.5).abs() < 1e-6, "{e}");
    }

    #[test]
    fn morse_ground_state_on_line() {
        let v = |x: f64| 8.0 * (-2.0 * x).exp() - 16.0 * (-x).exp();
        let e = numerov_eigen_line(v, 1.0, 1.0, 0, &RadialGrid::default_line()).unwrap();
        assert!((e + 6.125).abs() < 1e-4 * 6.125, "{e}");
    }

    #[test]
    fn coarse_grid_is_flagged() {
        let grid = RadialGrid::log(1e-5, 50.0, 200).unwrap();
        let r = numerov_eigen(|r| -1.0 / r, 0.5, 1.0, 1.0, 2, &grid);
        assert!(matches!(r, Err(DualError::GridTooCoarse { .. })), "{r:?}");
    }

    #[test]
    fn free_particle_has_no_bound_state_below_zero() {
        let grid = RadialGrid::log(1e-3, 10.0, 2000).unwrap();
        // With a box the state exists, but its energy is positive.
        let e = numerov_eigen_unchecked(|_| 0.0, 0.5, 1.0, 1.0, 0, &grid).unwrap();
        assert!(e > 0.0);
    }
}
