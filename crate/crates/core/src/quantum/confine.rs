//! Zero-energy states of `λ_a r^{−1/2} + λ′ r`.

use super::{normalize_by_quadrature, whittaker_kernel, Eigenfunction, LaguerreForm, SystemTag};
use crate::duality::{langer_l, DualityMap};
use crate::error::{DualError, Result};

fn check(lambda_prime: f64, m: f64, hbar: f64) -> Result<()> {
    if lambda_prime > 0.0 && m > 0.0 && hbar > 0.0 {
        Ok(())
    } else {
        Err(DualError::InvalidParameter(format!(
            "need positive lambda', m, hbar; got {lambda_prime}, {m}, {hbar}"
        )))
    }
}

fn alpha(lambda_prime: f64, m: f64, hbar: f64) -> f64 {
    4.0 / 3.0 * (2.0 * m * lambda_prime).sqrt() / hbar
}

/// Coupling `λ_a` for which `λ_a r^{−1/2} + λ′ r` holds a zero-energy state `ν₀`.
pub fn confinement_couplings(nu0: u32, ell: u32, dim: u32, lambda_prime: f64, m: f64, hbar: f64) -> Result<f64> {
    check(lambda_prime, m, hbar)?;
    let l = langer_l(ell, dim);
    Ok(-0.75 * (2.0 * lambda_prime * hbar * hbar / m).sqrt() * (2.0 * nu0 as f64 + 4.0 / 3.0 * l + 1.0))
}

/// Whittaker index `k = −(2/3)λ_a √m/(ħ√(2λ′))` attached to a coupling.
pub fn confinement_k(lambda_a: f64, lambda_prime: f64, m: f64, hbar: f64) -> f64 {
    -2.0 / 3.0 * lambda_a * m.sqrt() / (hbar * (2.0 * lambda_prime).sqrt())
}

/// Zero-energy state `∝ x^{−1/6} M_{ν₀+μ+½, μ}(x)`, `x = αr^{3/2}`, `μ = (2/3)L`, unit norm.
pub fn confinement_state(nu0: u32, ell: u32, dim: u32, lambda_prime: f64, m: f64, hbar: f64) -> Result<Eigenfunction> {
    check(lambda_prime, m, hbar)?;
    let l = langer_l(ell, dim);
    let psi = Eigenfunction {
        tag: SystemTag::Confinement,
        nu: nu0,
        ell: Some(ell),
        dim,
        l,
        energy: 0.0,
        norm: 1.0,
        form: LaguerreForm {
            scale: alpha(lambda_prime, m, hbar),
            power: 1.5,
            mu: 2.0 / 3.0 * l,
            r_power: -0.25,
            exponential: false,
        },
    };
    normalize_by_quadrature(psi)
}

/// Green function near `E = 0` as a function of the coupling `λ_a`:
/// `−(4m/3ħ²α)(rr′)^{−1/4} Γ(μ−k+½)/Γ(2μ+1) W_{k,μ}(αr_>^{3/2}) M_{k,μ}(αr_<^{3/2})`.
pub fn confinement_green(
    r: f64,
    r_prime: f64,
    lambda_a: f64,
    l: f64,
    lambda_prime: f64,
    m: f64,
    hbar: f64,
) -> Result<f64> {
    check(lambda_prime, m, hbar)?;
    if !(r > 0.0 && r_prime > 0.0) {
        return Err(DualError::DomainError(format!("need r, r' > 0, got {r}, {r_prime}")));
    }
    let a = alpha(lambda_prime, m, hbar);
    let k = confinement_k(lambda_a, lambda_prime, m, hbar);
    let kernel = whittaker_kernel(k, 2.0 / 3.0 * l, a * r.powf(1.5), a * r_prime.powf(1.5), 0.0)?;
    Ok(-4.0 * m / (3.0 * hbar * hbar * a) * (r * r_prime).powf(-0.25) * kernel)
}

/// Oscillator partner of the confinement problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfinementHooke {
    /// `C = (9λ_b′/(16λ′))^{1/3}` in `r = Cρ^{4/3}`.
    pub c: f64,
    pub lambda_b_prime: f64,
    pub omega: f64,
    pub e_b: f64,
    pub l_b: f64,
    /// `ρ = C^{−3/4} r^{3/4}`, the map carrying oscillator quantities to the confinement side.
    pub map: DualityMap,
}

/// Oscillator `λ_b′ρ²` dual to the confinement problem; `λ_b′` is a free scale.
pub fn confinement_hooke_partner(
    lambda_a: f64,
    l_a: f64,
    lambda_prime: f64,
    lambda_b_prime: f64,
    m: f64,
    hbar: f64,
) -> Result<ConfinementHooke> {
    check(lambda_prime, m, hbar)?;
    if !(lambda_b_prime > 0.0) {
        return Err(DualError::InvalidParameter(format!("need lambda_b' > 0, got {lambda_b_prime}")));
    }
    let c = (9.0 * lambda_b_prime / (16.0 * lambda_prime)).cbrt();
    Ok(ConfinementHooke {
        c,
        lambda_b_prime,
        omega: (2.0 * lambda_b_prime / m).sqrt(),
        e_b: -4.0 / 3.0 * lambda_a * (lambda_b_prime / lambda_prime).sqrt(),
        l_b: 4.0 / 3.0 * l_a,
        map: DualityMap::class_ii(-0.5, c)?.inverse(),
    })
}
