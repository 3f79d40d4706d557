use super::{laguerre_norm, whittaker_kernel, Eigenfunction, LaguerreForm, SystemTag};
use crate::duality::{langer_l, DualityMap};
use crate::error::{DualError, Result};

/// `E = −me⁴/(2ħ²(ν + L + ½)²)`; `e2` is `e²`.
pub fn coulomb_energy(nu: u32, l: f64, e2: f64, m: f64, hbar: f64) -> f64 {
    -m * e2 * e2 / (2.0 * hbar * hbar * (nu as f64 + l + 0.5).powi(2))
}

/// Hydrogen-like state with continuous `L`.
pub fn coulomb_eigenfunction_l(nu: u32, l: f64, e2: f64, m: f64, hbar: f64) -> Result<Eigenfunction> {
    if !(l >= 0.0) || !(e2 > 0.0) || !(m > 0.0) || !(hbar > 0.0) {
        return Err(DualError::InvalidParameter(format!(
            "need L >= 0 and positive e2, m, hbar; got L={l}, e2={e2}, m={m}, hbar={hbar}"
        )));
    }
    let kappa = m * e2 / (hbar * hbar * (nu as f64 + l + 0.5));
    let norm = hbar * kappa / (m * e2).sqrt() * laguerre_norm(nu, 2.0 * l)?;
    Ok(Eigenfunction {
        tag: SystemTag::Coulomb,
        nu,
        ell: None,
        dim: 3,
        l,
        energy: coulomb_energy(nu, l, e2, m, hbar),
        norm,
        form: LaguerreForm {
            scale: 2.0 * kappa,
            power: 1.0,
            mu: l,
            r_power: 0.0,
            exponential: false,
        },
    })
}

/// State `(ν, ℓ)` in `D` dimensions, `L = ℓ + D/2 − 1`.
pub fn coulomb_eigenfunction(nu: u32, ell: u32, dim: u32, e2: f64, m: f64, hbar: f64) -> Result<Eigenfunction> {
    let mut psi = coulomb_eigenfunction_l(nu, langer_l(ell, dim), e2, m, hbar)?;
    psi.ell = Some(ell);
    psi.dim = dim;
    Ok(psi)
}

/// `G = −(m/ħ²κ) Γ(L−k+½)/Γ(2L+1) W_{k,L}(2κr_>) M_{k,L}(2κr_<)`, `E < 0`.
pub fn coulomb_green(r: f64, r_prime: f64, energy: f64, l: f64, e2: f64, m: f64, hbar: f64) -> Result<f64> {
    if !(energy < 0.0) {
        return Err(DualError::DomainError(format!(
            "Coulomb Green function needs E < 0, got {energy}"
        )));
    }
    if !(r > 0.0 && r_prime > 0.0) {
        return Err(DualError::DomainError(format!("need r, r' > 0, got {r}, {r_prime}")));
    }
    let kappa = (-2.0 * m * energy).sqrt() / hbar;
    let k = m * e2 / (hbar * hbar * kappa);
    let kernel = whittaker_kernel(k, l, 2.0 * kappa * r, 2.0 * kappa * r_prime, energy)?;
    Ok(-m / (hbar * hbar * kappa) * kernel)
}

/// Coulomb parameters dual to a Hooke problem at energy `E_b` under `r = Cρ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombFromHooke {
    pub c: f64,
    pub e_a: f64,
    pub l_a: f64,
    pub kappa: f64,
    pub map: DualityMap,
}

/// `C = E_b/(4e²)`, `E_a = −mω²/(8C²)`, `L_a = L_b/2`.
pub fn coulomb_params_for_hooke(
    e_b: f64,
    l_b: f64,
    omega: f64,
    e2: f64,
    m: f64,
    hbar: f64,
) -> Result<CoulombFromHooke> {
    if !(e_b > 0.0) {
        return Err(DualError::DomainError(format!(
            "a Coulomb partner needs E_b > 0, got {e_b}"
        )));
    }
    let c = e_b / (4.0 * e2);
    let e_a = -m * omega * omega / (8.0 * c * c);
    Ok(CoulombFromHooke {
        c,
        e_a,
        l_a: 0.5 * l_b,
        kappa: (-2.0 * m * e_a).sqrt() / hbar,
        map: DualityMap::class_ii(-1.0, c)?,
    })
}
