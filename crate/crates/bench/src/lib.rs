//! Benchmark fixtures.
//!
//! Each fixture is a small, valid problem sized so one iteration stays in the
//! microsecond to millisecond range.

use dualkit::oracle::RadialGrid;
use dualkit::orbits::ConicOrbit;
use dualkit::susy::Superpotential;
use dualkit::{PowerPotential, RadialSystem};

/// Hydrogen-like radial system with `ℓ = 0` in three dimensions.
pub fn coulomb_system() -> RadialSystem {
    RadialSystem::quantized(1.0, 1.0, 0, 3, PowerPotential::single(-1.0, -1.0)).expect("valid system")
}

/// `−r^{−1/2}` in two dimensions with `L = 0`.
pub fn fractional_system() -> RadialSystem {
    RadialSystem::new(1.0, 1.0, 0.0, 2, PowerPotential::single(-1.0, -0.5)).expect("valid system")
}

/// Oscillator superpotential `r` with `μ = 1`.
pub fn oscillator_superpotential() -> Superpotential {
    Superpotential::oscillator(1.0, 1.0, 1.0, 1.0).expect("valid superpotential")
}

pub fn kepler_ellipse() -> ConicOrbit {
    ConicOrbit::attractive(1.0, 0.6).expect("valid orbit")
}

/// Log grid reaching far enough for the lowest Coulomb levels.
pub fn coulomb_grid() -> RadialGrid {
    RadialGrid::log(1e-6, 250.0, 20_000).expect("valid grid")
}

/// Whittaker arguments `(k, μ, x)` spanning the series, asymptotic and
/// polynomial regimes.
pub const WHITTAKER_ARGS: [(f64, f64, f64); 4] = [(0.3, 1.2, 0.7), (1.7, 0.5, 8.0), (2.5, 1.0, 60.0), (-0.4, 2.0, 3.0)];
