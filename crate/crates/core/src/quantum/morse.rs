use super::{laguerre_norm, Eigenfunction, LaguerreForm, SystemTag};
use crate::error::{DualError, Result};

/// `V(ξ) = D₁e^{−2αξ} − 2D₂e^{−αξ}` on the whole line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseParams {
    pub d1: f64,
    pub d2: f64,
    pub alpha: f64,
    pub m: f64,
    pub hbar: f64,
}

impl MorseParams {
    pub fn new(d1: f64, d2: f64, alpha: f64, m: f64, hbar: f64) -> Result<Self> {
        if [d1, d2, alpha, m, hbar].iter().all(|v| *v > 0.0 && v.is_finite()) {
            Ok(Self { d1, d2, alpha, m, hbar })
        } else {
            Err(DualError::InvalidParameter(format!(
                "Morse parameters must be positive: D1={d1}, D2={d2}, alpha={alpha}, m={m}, hbar={hbar}"
            )))
        }
    }

    pub fn potential(&self, xi: f64) -> f64 {
        let e = (-self.alpha * xi).exp();
        self.d1 * e * e - 2.0 * self.d2 * e
    }

    /// `γ = √(8mD₁)/(ħα)`.
    pub fn gamma(&self) -> f64 {
        (8.0 * self.m * self.d1).sqrt() / (self.hbar * self.alpha)
    }

    /// `L_c = k_c − ν − ½`, positive for bound states.
    pub fn l_c(&self, nu: u32) -> Result<f64> {
        let l = morse_k(self) - nu as f64 - 0.5;
        if l > 0.0 {
            Ok(l)
        } else {
            Err(DualError::NoSuchBoundState(format!(
                "nu={nu} but only nu < {} are bound",
                morse_k(self) - 0.5
            )))
        }
    }

    /// Number of bound states.
    pub fn bound_count(&self) -> u32 {
        let top = morse_k(self) - 0.5;
        if top <= 0.0 {
            0
        } else {
            top.ceil() as u32
        }
    }
}

/// `k_c = √(2mD₂²/(ħ²α²D₁))`.
pub fn morse_k(p: &MorseParams) -> f64 {
    (2.0 * p.m * p.d2 * p.d2 / (p.hbar * p.hbar * p.alpha * p.alpha * p.d1)).sqrt()
}

/// `E = −(ħ²α²/2m)(k_c − ν − ½)²`.
pub fn morse_spectrum(nu: u32, d1: f64, d2: f64, alpha: f64, m: f64, hbar: f64) -> Result<f64> {
    let p = MorseParams::new(d1, d2, alpha, m, hbar)?;
    let l = p.l_c(nu)?;
    Ok(-hbar * hbar * alpha * alpha * l * l / (2.0 * m))
}

/// `ψ_c(ξ) ∝ e^{αξ/2} M_{k_c, L_c}(γe^{−αξ})`, normalized on the line.
pub fn morse_eigenfunction(nu: u32, p: &MorseParams) -> Result<Eigenfunction> {
    let l = p.l_c(nu)?;
    let g = p.gamma();
    // ∫x^{2L−1}e^{−x}[L_ν^{2L}]² dx = Γ(ν+2L+1)/(ν!·2L), with dξ = dx/(αx) and e^{αξ} = γ/x.
    let norm = (p.alpha * 2.0 * l / g).sqrt() * laguerre_norm(nu, 2.0 * l)?;
    Ok(Eigenfunction {
        tag: SystemTag::Morse,
        nu,
        ell: None,
        dim: 1,
        l,
        energy: -p.hbar * p.hbar * p.alpha * p.alpha * l * l / (2.0 * p.m),
        norm,
        form: LaguerreForm {
            scale: g,
            power: p.alpha,
            mu: l,
            r_power: 0.0,
            exponential: true,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialitySystem {
    Coulomb,
    Hooke,
    Morse,
}

impl TrialitySystem {
    pub fn label(&self) -> &'static str {
        match self {
            TrialitySystem::Coulomb => "coulomb",
            TrialitySystem::Hooke => "hooke",
            TrialitySystem::Morse => "morse",
        }
    }

    /// `η_s` in the Whittaker index `μ = η_s L_s`.
    pub fn l_scale(&self) -> f64 {
        match self {
            TrialitySystem::Hooke => 0.5,
            _ => 1.0,
        }
    }

    /// `ν = k − η_s L − ½`, the bound condition read backwards.
    pub fn bound_nu(&self, k: f64, l: f64) -> f64 {
        k - self.l_scale() * l - 0.5
    }
}

/// How a system's coordinate meets the shared Whittaker variable:
/// `ψ = prefactor(q) · M_{k, η L}(x(q))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WhittakerChart {
    /// `x = 2κr`.
    Coulomb { kappa: f64 },
    /// `x = sρ²`, `s = mω/ħ`.
    Hooke { s: f64 },
    /// `x = γe^{−αξ}`.
    Morse { gamma: f64, alpha: f64 },
}

impl WhittakerChart {
    pub fn system(&self) -> TrialitySystem {
        match self {
            WhittakerChart::Coulomb { .. } => TrialitySystem::Coulomb,
            WhittakerChart::Hooke { .. } => TrialitySystem::Hooke,
            WhittakerChart::Morse { .. } => TrialitySystem::Morse,
        }
    }

    pub fn x(&self, q: f64) -> f64 {
        match *self {
            WhittakerChart::Coulomb { kappa } => 2.0 * kappa * q,
            WhittakerChart::Hooke { s } => s * q * q,
            WhittakerChart::Morse { gamma, alpha } => gamma * (-alpha * q).exp(),
        }
    }

    pub fn coordinate(&self, x: f64) -> f64 {
        match *self {
            WhittakerChart::Coulomb { kappa } => x / (2.0 * kappa),
            WhittakerChart::Hooke { s } => (x / s).sqrt(),
            WhittakerChart::Morse { gamma, alpha } => (gamma / x).ln() / alpha,
        }
    }

    pub fn prefactor(&self, q: f64) -> f64 {
        match *self {
            WhittakerChart::Coulomb { .. } => 1.0,
            WhittakerChart::Hooke { .. } => q.powf(-0.5),
            WhittakerChart::Morse { alpha, .. } => (0.5 * alpha * q).exp(),
        }
    }
}

/// One row of the triality table: a shared `x`, `k_t = k_s`, `η_t L_t = η_s L_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialityMap {
    pub source: WhittakerChart,
    pub target: WhittakerChart,
}

/// Substitution record from `source` to `target`.
pub fn triality_map(source: WhittakerChart, target: WhittakerChart) -> Result<TrialityMap> {
    if source.system() == target.system() {
        return Err(DualError::InvalidParameter(format!(
            "triality map needs distinct systems, got {} twice",
            source.system().label()
        )));
    }
    Ok(TrialityMap { source, target })
}

impl TrialityMap {
    pub fn map_k(&self, k: f64) -> f64 {
        k
    }

    pub fn map_l(&self, l: f64) -> f64 {
        self.source.system().l_scale() * l / self.target.system().l_scale()
    }

    /// Target coordinate carrying the same Whittaker variable.
    pub fn map_coordinate(&self, q: f64) -> f64 {
        self.target.coordinate(self.source.x(q))
    }

    /// `ψ_t(q_t) = [prefactor_t(q_t)/prefactor_s(q)] ψ_s(q)`, up to normalization.
    pub fn transport(&self, q: f64, psi_s: f64) -> (f64, f64) {
        let qt = self.map_coordinate(q);
        (qt, self.target.prefactor(qt) / self.source.prefactor(q) * psi_s)
    }

    /// `other ∘ self`; needs `self.target` and `other.source` to be the same chart.
    pub fn then(&self, other: &TrialityMap) -> Result<TrialityMap> {
        if self.target != other.source {
            return Err(DualError::MapIncompatible(format!(
                "cannot compose {}→{} with {}→{}",
                self.source.system().label(),
                self.target.system().label(),
                other.source.system().label(),
                other.target.system().label()
            )));
        }
        Ok(TrialityMap {
            source: self.source,
            target: other.target,
        })
    }
}
