//! Kepler conics and their images under the `r = C₂ρ²` map to the plane
//! oscillator.
//!
//! The parameter `ψ` is the eccentric anomaly counted from apocentre for
//! ellipses, so that `r = ā(1 + e cos ψ)` and the image point is
//! `(u, v) = (α cos(ψ/2), β sin(ψ/2))`. For hyperbolae `r = ā(e cosh ψ ∓ 1)`
//! (attractive / repulsive) and `(u, v) = (α cosh(ψ/2), β sinh(ψ/2))`.
//! In every case the Kepler position is `C₂ (u + iv)²`.

use std::f64::consts::PI;

use crate::error::{DualError, Result};

/// Distance from `e = 1` treated as parabolic.
pub const PARABOLIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingSign {
    Attractive,
    Repulsive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    Ellipse,
    Parabola,
    Hyperbola,
}

/// A Kepler orbit in geometric form. `abar` is the magnitude of the semi-major axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicOrbit {
    pub abar: f64,
    pub e: f64,
    pub coupling: CouplingSign,
}

impl ConicOrbit {
    pub fn new(abar: f64, e: f64, coupling: CouplingSign) -> Result<Self> {
        if !(abar > 0.0) || !(e >= 0.0) || !e.is_finite() {
            return Err(DualError::InvalidParameter(format!(
                "need abar > 0 and e >= 0, got abar={abar}, e={e}"
            )));
        }
        if coupling == CouplingSign::Repulsive && e <= 1.0 {
            return Err(DualError::WrongConicKind(format!(
                "repulsive orbits are hyperbolic, got e={e}"
            )));
        }
        Ok(Self { abar, e, coupling })
    }

    pub fn attractive(abar: f64, e: f64) -> Result<Self> {
        Self::new(abar, e, CouplingSign::Attractive)
    }

    /// From `(λ, L, E, m)`: `p = -L²/(mλ)`, `ā = -λ/(m|E|)`, `e = √(1 + 2L²E/(mλ²))`.
    pub fn from_dynamics(lambda: f64, l: f64, energy: f64, m: f64) -> Result<Self> {
        if lambda == 0.0 || m <= 0.0 {
            return Err(DualError::InvalidParameter("need lambda != 0 and m > 0".into()));
        }
        let e2 = 1.0 + 2.0 * l * l * energy / (m * lambda * lambda);
        if e2 < 0.0 {
            return Err(DualError::InvalidParameter(format!(
                "energy {energy} below the circular-orbit value"
            )));
        }
        let abar = (-lambda / (m * energy.abs())).abs();
        let coupling = if lambda < 0.0 {
            CouplingSign::Attractive
        } else {
            CouplingSign::Repulsive
        };
        Ok(Self {
            abar,
            e: e2.sqrt(),
            coupling,
        })
    }

    pub fn kind(&self) -> ConicKind {
        if (self.e - 1.0).abs() <= PARABOLIC_TOL || self.abar.is_infinite() {
            ConicKind::Parabola
        } else if self.e < 1.0 {
            ConicKind::Ellipse
        } else {
            ConicKind::Hyperbola
        }
    }

    /// Semi-latus rectum magnitude.
    pub fn semi_latus(&self) -> f64 {
        self.abar * (1.0 - self.e * self.e).abs()
    }

    /// Pericentre distance.
    pub fn r_min(&self) -> f64 {
        match (self.kind(), self.coupling) {
            (ConicKind::Hyperbola, CouplingSign::Repulsive) => self.abar * (self.e + 1.0),
            _ => self.abar * (1.0 - self.e).abs(),
        }
    }

    /// `r(ψ)`.
    pub fn radius(&self, psi: f64) -> f64 {
        match (self.kind(), self.coupling) {
            (ConicKind::Hyperbola, CouplingSign::Repulsive) => self.abar * (self.e * psi.cosh() + 1.0),
            (ConicKind::Hyperbola, _) => self.abar * (self.e * psi.cosh() - 1.0),
            _ => self.abar * (1.0 + self.e * psi.cos()),
        }
    }

    /// Cartesian position at parameter `ψ`, focus at the origin.
    pub fn position(&self, psi: f64) -> (f64, f64) {
        let a = self.abar;
        let e = self.e;
        match (self.kind(), self.coupling) {
            (ConicKind::Hyperbola, CouplingSign::Repulsive) => {
                (a * (e + psi.cosh()), a * (e * e - 1.0).sqrt() * psi.sinh())
            }
            (ConicKind::Hyperbola, _) => (a * (e - psi.cosh()), a * (e * e - 1.0).sqrt() * psi.sinh()),
            _ => (a * (psi.cos() + e), a * (1.0 - e * e).max(0.0).sqrt() * psi.sin()),
        }
    }

    /// Parameter window used for sampling.
    pub fn psi_range(&self) -> (f64, f64) {
        match self.kind() {
            ConicKind::Hyperbola => {
                let psi_max = hyperbola_psi_max(self.e);
                (-psi_max, psi_max)
            }
            _ => (0.0, 2.0 * PI),
        }
    }
}

/// `cosh ψ_max = max(10/e, 2)`.
pub fn hyperbola_psi_max(e: f64) -> f64 {
    (10.0 / e).max(2.0).acosh()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HookeKind {
    Ellipse,
    Hyperbola,
    /// Force-free straight line along `u`; carries no scale.
    Rectilinear,
}

/// Image orbit in the `(u, v)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HookeOrbit {
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub kind: HookeKind,
}

impl HookeOrbit {
    pub fn ellipse(alpha: f64, beta: f64) -> Self {
        let (big, small) = if alpha >= beta { (alpha, beta) } else { (beta, alpha) };
        Self {
            alpha,
            beta,
            epsilon: (1.0 - (small / big).powi(2)).max(0.0).sqrt(),
            kind: HookeKind::Ellipse,
        }
    }

    pub fn hyperbola(alpha: f64, beta: f64) -> Self {
        Self {
            alpha,
            beta,
            epsilon: (1.0 + (beta / alpha).powi(2)).sqrt(),
            kind: HookeKind::Hyperbola,
        }
    }

    pub fn rectilinear() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
            epsilon: 1.0,
            kind: HookeKind::Rectilinear,
        }
    }

    /// Point at parameter `ψ`.
    pub fn point(&self, psi: f64) -> (f64, f64) {
        match self.kind {
            HookeKind::Ellipse => (self.alpha * (0.5 * psi).cos(), self.beta * (0.5 * psi).sin()),
            HookeKind::Hyperbola => (self.alpha * (0.5 * psi).cosh(), self.beta * (0.5 * psi).sinh()),
            HookeKind::Rectilinear => (psi, 0.0),
        }
    }

    /// `u²/α² ± v²/β² - 1` at a point; zero on the orbit.
    pub fn implicit(&self, u: f64, v: f64) -> f64 {
        match self.kind {
            HookeKind::Ellipse => u * u / (self.alpha * self.alpha) + v * v / (self.beta * self.beta) - 1.0,
            HookeKind::Hyperbola => u * u / (self.alpha * self.alpha) - v * v / (self.beta * self.beta) - 1.0,
            HookeKind::Rectilinear => v,
        }
    }
}

fn check_c2(c2: f64) -> Result<()> {
    if c2 > 0.0 && c2.is_finite() {
        Ok(())
    } else {
        Err(DualError::InvalidParameter(format!("C2 must be positive, got {c2}")))
    }
}

/// Bound Kepler ellipse to oscillator ellipse; the parabolic limit gives a rectilinear image.
pub fn kepler_ellipse_to_hooke(orbit: &ConicOrbit, c2: f64) -> Result<HookeOrbit> {
    check_c2(c2)?;
    match orbit.kind() {
        ConicKind::Parabola => Ok(HookeOrbit::rectilinear()),
        ConicKind::Hyperbola => Err(DualError::WrongConicKind(format!(
            "expected e < 1, got e={}",
            orbit.e
        ))),
        ConicKind::Ellipse => {
            let s = orbit.abar / c2;
            let alpha = (s * (1.0 + orbit.e)).sqrt();
            let beta = (s * (1.0 - orbit.e)).sqrt();
            Ok(HookeOrbit {
                alpha,
                beta,
                epsilon: (2.0 * orbit.e / (1.0 + orbit.e)).sqrt(),
                kind: HookeKind::Ellipse,
            })
        }
    }
}

/// Kepler hyperbola (either sign of coupling) to oscillator hyperbola.
pub fn kepler_hyperbola_to_hooke(orbit: &ConicOrbit, c2: f64) -> Result<HookeOrbit> {
    check_c2(c2)?;
    if orbit.e <= 1.0 {
        return Err(DualError::WrongConicKind(format!(
            "expected e > 1, got e={}",
            orbit.e
        )));
    }
    let s = orbit.abar / c2;
    let e = orbit.e;
    let (alpha, beta) = match orbit.coupling {
        CouplingSign::Attractive => ((s * (e - 1.0)).sqrt(), (s * (e + 1.0)).sqrt()),
        CouplingSign::Repulsive => ((s * (e + 1.0)).sqrt(), (s * (e - 1.0)).sqrt()),
    };
    Ok(HookeOrbit {
        alpha,
        beta,
        epsilon: (1.0 + (beta / alpha).powi(2)).sqrt(),
        kind: HookeKind::Hyperbola,
    })
}

/// Dispatch on the conic kind.
pub fn kepler_to_hooke(orbit: &ConicOrbit, c2: f64) -> Result<HookeOrbit> {
    match orbit.kind() {
        ConicKind::Hyperbola => kepler_hyperbola_to_hooke(orbit, c2),
        _ => kepler_ellipse_to_hooke(orbit, c2),
    }
}

/// A sampled point: parameter and planar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSample {
    pub psi: f64,
    pub x: f64,
    pub y: f64,
}

/// Either kind of orbit, for sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnyOrbit {
    Kepler(ConicOrbit),
    Hooke(HookeOrbit),
}

fn grid(lo: f64, hi: f64, n: usize, closed: bool) -> impl Iterator<Item = f64> {
    let denom = if closed { (n - 1) as f64 } else { n as f64 };
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / denom)
}

/// `n ≥ 2` points uniform in `ψ` (shifted by `theta0`) over the orbit's parameter range.
pub fn sample_orbit(orbit: &AnyOrbit, n: usize, theta0: f64) -> Result<Vec<OrbitSample>> {
    if n < 2 {
        return Err(DualError::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let samples = match orbit {
        AnyOrbit::Kepler(k) => {
            let (lo, hi) = k.psi_range();
            let closed = k.kind() == ConicKind::Hyperbola;
            grid(lo, hi, n, closed)
                .map(|psi| {
                    let (x, y) = k.position(psi + theta0);
                    OrbitSample { psi, x, y }
                })
                .collect()
        }
        AnyOrbit::Hooke(h) => {
            let (lo, hi, closed) = match h.kind {
                HookeKind::Ellipse => (0.0, 2.0 * PI, false),
                HookeKind::Hyperbola => {
                    // Same window as the source hyperbola with ε² = 2e/(e-1).
                    let e = h.epsilon * h.epsilon / (h.epsilon * h.epsilon - 2.0);
                    let m = hyperbola_psi_max(e.abs().max(1.0 + 1e-12));
                    (-m, m, true)
                }
                HookeKind::Rectilinear => (0.0, 1.0, true),
            };
            grid(lo, hi, n, closed)
                .map(|psi| {
                    let (x, y) = h.point(psi + theta0);
                    OrbitSample { psi, x, y }
                })
                .collect()
        }
    };
    Ok(samples)
}

/// Source and image samples at matching parameters.
pub fn map_orbit_samples(
    orbit: &ConicOrbit,
    c2: f64,
    n: usize,
) -> Result<(HookeOrbit, Vec<(OrbitSample, OrbitSample)>)> {
    let image = kepler_to_hooke(orbit, c2)?;
    let src = sample_orbit(&AnyOrbit::Kepler(*orbit), n, 0.0)?;
    let pairs = src
        .into_iter()
        .map(|s| {
            let (u, v) = image.point(s.psi);
            (s, OrbitSample { psi: s.psi, x: u, y: v })
        })
        .collect();
    Ok((image, pairs))
}
