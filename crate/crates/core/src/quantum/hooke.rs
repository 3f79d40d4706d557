use super::{laguerre_norm, whittaker_kernel, Eigenfunction, LaguerreForm, SystemTag};
use crate::duality::langer_l;
use crate::error::{DualError, Result};

/// `E = ħω(2ν + L + 1)`.
pub fn hooke_energy(nu: u32, l: f64, omega: f64, hbar: f64) -> f64 {
    hbar * omega * (2.0 * nu as f64 + l + 1.0)
}

/// Oscillator state with continuous `L`, `y = (mω/ħ)ρ²`.
pub fn hooke_eigenfunction_l(nu: u32, l: f64, omega: f64, m: f64, hbar: f64) -> Result<Eigenfunction> {
    if !(l >= 0.0) || !(omega > 0.0) || !(m > 0.0) || !(hbar > 0.0) {
        return Err(DualError::InvalidParameter(format!(
            "need L >= 0 and positive omega, m, hbar; got L={l}, omega={omega}, m={m}, hbar={hbar}"
        )));
    }
    // The y^{-1/4} that turns y^{L/2+1/2} into y^{(L+1/2)/2} is carried by ρ^{-1/2}.
    Ok(Eigenfunction {
        tag: SystemTag::Hooke,
        nu,
        ell: None,
        dim: 3,
        l,
        energy: hooke_energy(nu, l, omega, hbar),
        norm: std::f64::consts::SQRT_2 * laguerre_norm(nu, l)?,
        form: LaguerreForm {
            scale: m * omega / hbar,
            power: 2.0,
            mu: 0.5 * l,
            r_power: -0.5,
            exponential: false,
        },
    })
}

/// State `(ν, ℓ)` in `D` dimensions, `L = ℓ + D/2 − 1`.
pub fn hooke_eigenfunction(nu: u32, ell: u32, dim: u32, omega: f64, m: f64, hbar: f64) -> Result<Eigenfunction> {
    let mut psi = hooke_eigenfunction_l(nu, langer_l(ell, dim), omega, m, hbar)?;
    psi.ell = Some(ell);
    psi.dim = dim;
    Ok(psi)
}

/// `G = −1/(ħω√(ρρ′)) Γ(L/2−k+½)/Γ(L+1) W_{k,L/2}(y_>) M_{k,L/2}(y_<)`, `k = E/(2ħω)`.
pub fn hooke_green(rho: f64, rho_prime: f64, energy: f64, l: f64, omega: f64, m: f64, hbar: f64) -> Result<f64> {
    if !(rho > 0.0 && rho_prime > 0.0) {
        return Err(DualError::DomainError(format!("need rho, rho' > 0, got {rho}, {rho_prime}")));
    }
    let s = m * omega / hbar;
    let k = energy / (2.0 * hbar * omega);
    let kernel = whittaker_kernel(k, 0.5 * l, s * rho * rho, s * rho_prime * rho_prime, energy)?;
    Ok(-kernel / (hbar * omega * (rho * rho_prime).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::gamma_pole_scan;
    use crate::specfun::gamma;

    #[test]
    fn energies() {
        assert_eq!(hooke_eigenfunction(0, 0, 3, 1.0, 1.0, 1.0).unwrap().energy, 1.5);
        assert_eq!(hooke_eigenfunction(0, 1, 4, 1.0, 1.0, 1.0).unwrap().energy, 3.0);
    }

    #[test]
    fn ground_state_closed_form() {
        // ψ = (4mω/ħ)^{1/4}/√Γ(L+1) e^{−y/2} y^{(L+½)/2}, written out directly.
        let (omega, l) = (1.7, 1.0);
        let psi = hooke_eigenfunction_l(0, l, omega, 1.0, 1.0).unwrap();
        for rho in [0.2, 0.8, 1.5] {
            let y = omega * rho * rho;
            let exact = (4.0 * omega).powf(0.25) / gamma(l + 1.0).sqrt() * (-0.5 * y).exp() * y.powf(0.5 * (l + 0.5));
            assert!((psi.eval(rho) - exact).abs() < 1e-14 * exact);
        }
    }

    #[test]
    fn normalized_and_orthogonal() {
        for l in [0.5, 1.5, 2.0] {
            let states: Vec<_> = (0..4).map(|nu| hooke_eigenfunction_l(nu, l, 0.7, 1.2, 1.0).unwrap()).collect();
            for (i, a) in states.iter().enumerate() {
                assert_eq!(a.node_count(), i);
                for (j, b) in states.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((a.overlap(b).unwrap() - expect).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn green_symmetry_and_residue() {
        let (l, omega) = (1.0, 1.0);
        let g = |a: f64, b: f64, e: f64| hooke_green(a, b, e, l, omega, 1.0, 1.0).unwrap();
        assert!((g(0.7, 1.9, 0.9) - g(1.9, 0.7, 0.9)).abs() < 1e-10 * g(0.7, 1.9, 0.9).abs());
        let psi = hooke_eigenfunction_l(1, l, omega, 1.0, 1.0).unwrap();
        let d = 1e-5;
        let (r, rp) = (0.6, 1.4);
        let residue = 0.5 * (d * g(r, rp, psi.energy + d) - d * g(r, rp, psi.energy - d));
        let exact = psi.eval(r) * psi.eval(rp);
        assert!((residue - exact).abs() < 1e-6 * exact.abs());
    }

    #[test]
    fn green_ode_residual() {
        let (e, l, omega) = (2.3, 0.5, 1.2);
        let rp = 1.1;
        let g = |x: f64| hooke_green(x, rp, e, l, omega, 1.0, 1.0).unwrap();
        for r in [0.3, 0.7, 1.8, 2.6] {
            let h = 1e-3;
            let d2 = (-g(r + 2.0 * h) + 16.0 * g(r + h) - 30.0 * g(r) + 16.0 * g(r - h) - g(r - 2.0 * h)) / (12.0 * h * h);
            let q = 2.0 * (0.5 * omega * omega * r * r - e) + (l * l - 0.25) / (r * r);
            assert!((d2 - q * g(r)).abs() < 1e-6 * d2.abs().max((q * g(r)).abs()), "r={r}");
        }
    }

    #[test]
    fn green_poles_match_spectrum() {
        let (l, omega) = (1.5, 0.8);
        let poles = gamma_pole_scan(|e: f64| 0.5 * l - e / (2.0 * omega) + 0.5, 0.1, 8.0, 4000).unwrap();
        assert!(poles.len() >= 4);
        for (nu, p) in poles.iter().enumerate() {
            let exact = hooke_energy(nu as u32, l, omega, 1.0);
            assert!((p - exact).abs() < 1e-12 * exact);
        }
        assert!(matches!(
            hooke_green(1.0, 1.0, hooke_energy(0, l, omega, 1.0), l, omega, 1.0, 1.0),
            Err(DualError::OnSpectrum { .. })
        ));
    }
}
