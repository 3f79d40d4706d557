//! Supersymmetric semiclassical quantization for `Φ(r) = ε√λ r^{a/2} − (ħ/√2m) μ/r`.
//!
//! Only the `H₋` branch is treated. The squared superpotential expands to
//! `λ r^a + λ' r^{a'} + ħ²μ²/(2mr²)` with `a' = (a−2)/2` and
//! `λ' = −εħμ√(2λ/m)`.

use std::f64::consts::PI;

use crate::duality::{PowerPotential, PowerTerm, RadialSystem};
use crate::error::{DualError, Result};
use crate::semiclassical::{energy_for_action, TurningScan};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Superpotential {
    pub lambda: f64,
    pub a: f64,
    pub mu: f64,
    pub epsilon: f64,
    pub m: f64,
    pub hbar: f64,
}

impl Superpotential {
    pub fn new(lambda: f64, a: f64, mu: f64, epsilon: f64, m: f64, hbar: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !(mu > 0.0) || !(m > 0.0) || !(hbar > 0.0) {
            return Err(DualError::InvalidParameter(format!(
                "need lambda >= 0, mu > 0, m > 0, hbar > 0; got {lambda}, {mu}, {m}, {hbar}"
            )));
        }
        if epsilon != 1.0 && epsilon != -1.0 {
            return Err(DualError::InvalidParameter(format!("epsilon must be ±1, got {epsilon}")));
        }
        Ok(Self {
            lambda,
            a,
            mu,
            epsilon,
            m,
            hbar,
        })
    }

    /// Radial oscillator: `a = 2`, `λ = mω²/2`, `ε = 1`.
    pub fn oscillator(m: f64, hbar: f64, omega: f64, mu: f64) -> Result<Self> {
        Self::new(0.5 * m * omega * omega, 2.0, mu, 1.0, m, hbar)
    }

    /// Hydrogen: `a = 0`, `λ = me⁴/(2ħ²μ²)`, `ε = 1`; `e2` is `e²`.
    pub fn hydrogen(m: f64, hbar: f64, e2: f64, mu: f64) -> Result<Self> {
        Self::new(m * e2 * e2 / (2.0 * hbar * hbar * mu * mu), 0.0, mu, 1.0, m, hbar)
    }

    pub fn a_prime(&self) -> f64 {
        0.5 * (self.a - 2.0)
    }

    pub fn lambda_prime(&self) -> f64 {
        -self.epsilon * self.hbar * self.mu * (2.0 * self.lambda / self.m).sqrt()
    }

    fn k(&self) -> f64 {
        self.hbar / (2.0 * self.m).sqrt()
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.epsilon * self.lambda.sqrt() * r.powf(0.5 * self.a) - self.k() * self.mu / r
    }

    pub fn derivative(&self, r: f64) -> f64 {
        self.epsilon * self.lambda.sqrt() * 0.5 * self.a * r.powf(0.5 * self.a - 1.0)
            + self.k() * self.mu / (r * r)
    }

    /// `λ r^a + λ' r^{a'} + ħ²μ²/(2mr²)`.
    pub fn squared(&self) -> PowerPotential {
        PowerPotential::new(vec![
            PowerTerm::new(self.lambda, self.a),
            PowerTerm::new(self.lambda_prime(), self.a_prime()),
            PowerTerm::new(self.hbar * self.hbar * self.mu * self.mu / (2.0 * self.m), -2.0),
        ])
    }

    /// `V = λ r^a + (1 + a/(4μ)) λ' r^{a'}`, the potential this `Φ` solves the Riccati equation for.
    pub fn matching_potential(&self) -> PowerPotential {
        PowerPotential::new(vec![
            PowerTerm::new(self.lambda, self.a),
            PowerTerm::new((1.0 + self.a / (4.0 * self.mu)) * self.lambda_prime(), self.a_prime()),
        ])
    }

    /// `Φ² − (ħ/√2m)Φ'`.
    pub fn minus_potential(&self, r: f64) -> f64 {
        self.eval(r).powi(2) - self.k() * self.derivative(r)
    }

    /// Angular parameter tied to `μ` by the Riccati equation.
    pub fn l(&self) -> f64 {
        self.mu - 0.5
    }
}

/// `Φ² − (ħ/√2m)Φ' − V(r) − ħ²(L²−¼)/(2mr²)`; zero when `V` and `L` match `Φ`.
pub fn riccati_residual(sp: &Superpotential, v: &PowerPotential, l: f64, r: f64) -> f64 {
    sp.minus_potential(r) - v.eval(r) - sp.hbar * sp.hbar * (l * l - 0.25) / (2.0 * sp.m * r * r)
}

fn min_squared(sp: &Superpotential, scan: &TurningScan) -> f64 {
    let lmin = scan.r_min.ln();
    let step = (scan.r_max.ln() - lmin) / (scan.n_points - 1) as f64;
    let grid: Vec<f64> = (0..scan.n_points).map(|i| (lmin + step * i as f64).exp()).collect();
    let phi: Vec<f64> = grid.iter().map(|&r| sp.eval(r)).collect();
    if phi.windows(2).any(|w| w[0].signum() != w[1].signum()) {
        return 0.0;
    }
    // Golden-section refinement around the smallest grid value.
    let (imin, _) = phi
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
        .expect("grid is non-empty");
    let mut lo = grid[imin.saturating_sub(1)];
    let mut hi = grid[(imin + 1).min(grid.len() - 1)];
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let f = |r: f64| sp.eval(r).powi(2);
    for _ in 0..200 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if f(x1) < f(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
        if hi - lo < 1e-15 * hi {
            break;
        }
    }
    f(0.5 * (lo + hi))
}

/// Energies with `∫√(2m(E − Φ²)) dr = πħ(ν + ½ + Δ/2)` for `ν = 0..=nu_max`.
pub fn cbc_quantize(sp: &Superpotential, nu_max: u32, witten_delta: i8) -> Result<Vec<f64>> {
    if !(-1..=1).contains(&witten_delta) {
        return Err(DualError::InvalidParameter(format!(
            "Witten index must be -1, 0 or 1, got {witten_delta}"
        )));
    }
    let scan = TurningScan::default();
    let sys = RadialSystem::new(sp.m, sp.hbar, 0.0, 3, sp.squared())?;
    (0..=nu_max)
        .map(|nu| {
            let w = PI * sp.hbar * (nu as f64 + 0.5 + 0.5 * witten_delta as f64);
            if w <= 0.0 {
                Ok(min_squared(sp, &scan))
            } else {
                energy_for_action(&sys, 2.0 * w, &scan)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SusyOption {
    /// `η = 2/(a+2)`: a Coulomb-like `ρ^{-1}` term appears.
    I,
    /// `η = 4/(a+2)`: a Hooke `ρ²` term appears.
    II,
}

/// `E_b − λ_b ρ^b − λ_{b'} ρ^{b'} − ħ²μ_b²/(2mρ²)` after the change of variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusyImage {
    pub option: SusyOption,
    pub eta: f64,
    pub c: f64,
    pub e_b: f64,
    pub b: f64,
    pub lambda_b: f64,
    pub b_prime: f64,
    pub lambda_b_prime: f64,
    pub mu_b: f64,
    pub m: f64,
    pub hbar: f64,
}

impl SusyImage {
    /// `λ_b ρ^b + λ_{b'} ρ^{b'} + ħ²μ_b²/(2mρ²)`, equal exponents merged.
    pub fn squared(&self) -> PowerPotential {
        let mut terms = vec![PowerTerm::new(self.lambda_b, self.b)];
        if self.b_prime == self.b {
            terms[0].lambda += self.lambda_b_prime;
        } else {
            terms.push(PowerTerm::new(self.lambda_b_prime, self.b_prime));
        }
        terms.push(PowerTerm::new(
            self.hbar * self.hbar * self.mu_b * self.mu_b / (2.0 * self.m),
            -2.0,
        ));
        PowerPotential::new(terms)
    }

    /// `E_b − Φ_b²(ρ)`.
    pub fn kinetic(&self, rho: f64) -> f64 {
        self.e_b - self.squared().eval(rho)
    }
}

/// Rewrites `f'²(E_a − Φ_a²(Cρ^η))` in standard form under option (i) or (ii).
pub fn susy_option_transform(sp: &Superpotential, e_a: f64, option: SusyOption, c: f64) -> Result<SusyImage> {
    let a = sp.a;
    let ap = sp.a_prime();
    if a == -2.0 || !a.is_finite() {
        return Err(DualError::DegenerateExponent { a });
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(DualError::InvalidParameter(format!("C must be positive, got {c}")));
    }
    let (lam, lamp) = (sp.lambda, sp.lambda_prime());
    let img = match option {
        SusyOption::I => {
            let eta = 2.0 / (a + 2.0);
            let eta2 = eta * eta;
            SusyImage {
                option,
                eta,
                c,
                e_b: -eta2 * c.powf(2.0 + a) * lam,
                b: -2.0 * a / (a + 2.0),
                lambda_b: -eta2 * c * c * e_a,
                b_prime: -1.0,
                lambda_b_prime: eta2 * c.powf(2.0 + ap) * lamp,
                mu_b: eta.abs() * sp.mu,
                m: sp.m,
                hbar: sp.hbar,
            }
        }
        SusyOption::II => {
            let eta = 4.0 / (a + 2.0);
            let eta2 = eta * eta;
            SusyImage {
                option,
                eta,
                c,
                e_b: -eta2 * c.powf(2.0 + ap) * lamp,
                b: 2.0,
                lambda_b: eta2 * c.powf(2.0 + a) * lam,
                b_prime: -2.0 * (a - 2.0) / (a + 2.0),
                lambda_b_prime: -eta2 * c * c * e_a,
                mu_b: eta.abs() * sp.mu,
                m: sp.m,
                hbar: sp.hbar,
            }
        }
    };
    Ok(img)
}

/// Result of carrying a SUSY oscillator level to the hydrogen side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HookeToCoulomb {
    pub c: f64,
    pub mu_b: f64,
    /// `E_b − me⁴/(2ħ²μ_b²)`, the ordinary hydrogen level.
    pub e_qm: f64,
    /// `E_b` of the hydrogen `H₋`.
    pub e_susy: f64,
    pub image: SusyImage,
}

/// Option (i) with `C² = 4e²/(E_a + ħωμ_a)`, which makes the `1/ρ` coefficient `−e²`.
pub fn hooke_to_coulomb(m: f64, hbar: f64, omega: f64, mu_a: f64, e_a: f64, e2: f64) -> Result<HookeToCoulomb> {
    let sp = Superpotential::oscillator(m, hbar, omega, mu_a)?;
    let shifted = e_a + hbar * omega * mu_a;
    if !(shifted > 0.0) {
        return Err(DualError::DomainError(format!("E_a + ħωμ_a must be positive, got {shifted}")));
    }
    let c = (4.0 * e2 / shifted).sqrt();
    let image = susy_option_transform(&sp, e_a, SusyOption::I, c)?;
    let shift = m * e2 * e2 / (2.0 * hbar * hbar * image.mu_b * image.mu_b);
    Ok(HookeToCoulomb {
        c,
        mu_b: image.mu_b,
        e_qm: image.e_b,
        e_susy: image.e_b + shift,
        image,
    })
}
