//! Bound states and radial Green functions of the Coulomb, Hooke, confinement and
//! Morse problems, and the duality transforms relating them.
//!
//! Wavefunctions are the reduced radial functions `ψ(r) = r^{(D−1)/2} R(r)`, so
//! `∫₀^∞ ψ² dr = 1`. Green functions satisfy `(E − H)G = δ(r − r′)`, so that
//! `(E − E_n)G → ψ_n(r)ψ_n(r′)` at a pole.

mod confine;
mod coulomb;
mod hooke;
mod morse;

pub use confine::{
    confinement_couplings, confinement_green, confinement_hooke_partner, confinement_k,
    confinement_state, ConfinementHooke,
};
pub use coulomb::{coulomb_eigenfunction, coulomb_eigenfunction_l, coulomb_energy, coulomb_green, coulomb_params_for_hooke, CoulombFromHooke};
pub use hooke::{hooke_eigenfunction, hooke_eigenfunction_l, hooke_energy, hooke_green};
pub use morse::{
    morse_eigenfunction, morse_k, morse_spectrum, triality_map, MorseParams, TrialityMap, TrialitySystem,
    WhittakerChart,
};

use crate::duality::{DualityMap, MapClass};
use crate::error::{DualError, Result};
use crate::oracle::quad::{integrate, QuadOptions};
use crate::roots::brent;
use crate::specfun::{gamma, laguerre, ln_gamma, rgamma, whittaker_m, whittaker_w};

/// Distance from a gamma pole treated as on-spectrum.
pub const POLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemTag {
    Coulomb,
    Hooke,
    Confinement,
    Morse,
}

impl SystemTag {
    pub fn label(&self) -> &'static str {
        match self {
            SystemTag::Coulomb => "coulomb",
            SystemTag::Hooke => "hooke",
            SystemTag::Confinement => "confinement",
            SystemTag::Morse => "morse",
        }
    }

    /// Power of the potential, for single-power systems.
    fn exponent(&self) -> Option<f64> {
        match self {
            SystemTag::Coulomb => Some(-1.0),
            SystemTag::Hooke => Some(2.0),
            _ => None,
        }
    }
}

/// `ψ = norm · prefactor(r) · e^{−x/2} x^{μ+1/2} L_ν^{2μ}(x)` with `x = scale · r^power`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct LaguerreForm {
    scale: f64,
    power: f64,
    mu: f64,
    /// Exponent `p` of an extra factor `r^p`.
    r_power: f64,
    /// Exponential chart `x = scale · e^{−power·ξ}` for line problems.
    exponential: bool,
}

impl LaguerreForm {
    fn x(&self, r: f64) -> f64 {
        if self.exponential {
            self.scale * (-self.power * r).exp()
        } else {
            self.scale * r.powf(self.power)
        }
    }

    fn eval(&self, nu: u32, r: f64) -> f64 {
        let x = self.x(r);
        if x <= 0.0 {
            return 0.0;
        }
        let pre = if self.exponential {
            (0.5 * self.power * r).exp()
        } else {
            r.powf(self.r_power)
        };
        let lx = -0.5 * x + (self.mu + 0.5) * x.ln();
        pre * lx.exp() * laguerre(nu, 2.0 * self.mu, x)
    }
}

/// A normalized bound state.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfunction {
    pub tag: SystemTag,
    pub nu: u32,
    /// Integer angular momentum, when the state was built from one.
    pub ell: Option<u32>,
    pub dim: u32,
    /// Continuous angular parameter.
    pub l: f64,
    pub energy: f64,
    /// Multiplier applied to the Laguerre form.
    pub norm: f64,
    form: LaguerreForm,
}

impl Eigenfunction {
    pub fn eval(&self, r: f64) -> f64 {
        self.norm * self.form.eval(self.nu, r)
    }

    /// `R(r) = r^{(1−D)/2} ψ(r)`.
    pub fn full_radial(&self, r: f64) -> f64 {
        r.powf(0.5 * (1.0 - self.dim as f64)) * self.eval(r)
    }

    /// Number of sign changes on a fine grid over the bulk of the state.
    pub fn node_count(&self) -> usize {
        let (lo, hi) = self.support();
        let n = 20_000;
        let mut prev = 0.0_f64;
        let mut count = 0;
        for i in 1..n {
            let r = lo + (hi - lo) * i as f64 / n as f64;
            let v = self.eval(r);
            if v != 0.0 {
                if prev != 0.0 && v.signum() != prev.signum() {
                    count += 1;
                }
                prev = v;
            }
        }
        count
    }

    /// Interval holding all but a negligible part of the state.
    pub fn support(&self) -> (f64, f64) {
        if self.form.exponential {
            // ψ² ~ x^{2μ} as x → 0, so the small-x end follows μ.
            let a = self.form.power;
            let g = self.form.scale;
            let x_min = (-60.0 / (2.0 * self.form.mu)).exp().clamp(1e-300, 1e-12);
            ((g / (200.0 + 4.0 * self.nu as f64)).ln() / a, (g / x_min).ln() / a)
        } else {
            let xmax = 80.0 + 4.0 * self.nu as f64 + 2.0 * self.form.mu;
            (0.0, (xmax / self.form.scale).powf(1.0 / self.form.power))
        }
    }

    /// `∫ψ²` by adaptive quadrature.
    pub fn norm_squared(&self) -> Result<f64> {
        let (lo, hi) = self.support();
        let opts = QuadOptions {
            rel_tol: 1e-12,
            max_intervals: 4000,
            ..QuadOptions::default()
        };
        integrate(|r| self.eval(r).powi(2), lo, hi, opts).map(|(v, _)| v)
    }

    /// `∫ψ φ` over the common support.
    pub fn overlap(&self, other: &Eigenfunction) -> Result<f64> {
        let (a0, a1) = self.support();
        let (b0, b1) = other.support();
        let opts = QuadOptions {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_intervals: 4000,
        };
        integrate(|r| self.eval(r) * other.eval(r), a0.min(b0), a1.max(b1), opts).map(|(v, _)| v)
    }
}

/// Rescale to unit norm by quadrature, doubling the cutoff until the norm settles.
fn normalize_by_quadrature(mut psi: Eigenfunction) -> Result<Eigenfunction> {
    psi.norm = 1.0;
    let (lo, mut hi) = psi.support();
    let opts = QuadOptions {
        rel_tol: 1e-13,
        max_intervals: 4000,
        ..QuadOptions::default()
    };
    let mut prev = integrate(|r| psi.eval(r).powi(2), lo, hi, opts)?.0;
    for _ in 0..30 {
        hi *= 2.0;
        let cur = integrate(|r| psi.eval(r).powi(2), lo, hi, opts)?.0;
        let settled = (cur - prev).abs() < 1e-10 * cur;
        prev = cur;
        if settled {
            break;
        }
    }
    psi.norm = 1.0 / prev.sqrt();
    Ok(psi)
}

/// `√(ν!/Γ(ν+α+1))`.
fn laguerre_norm(nu: u32, alpha: f64) -> Result<f64> {
    Ok((0.5 * (ln_gamma(nu as f64 + 1.0)? - ln_gamma(nu as f64 + alpha + 1.0)?)).exp())
}

/// `Γ(μ−k+½)/Γ(2μ+1) · W_{k,μ}(x_>) M_{k,μ}(x_<)`, with pole detection.
fn whittaker_kernel(k: f64, mu: f64, x1: f64, x2: f64, energy: f64) -> Result<f64> {
    let arg = mu - k + 0.5;
    check_pole(arg, energy)?;
    let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
    let w = whittaker_w(k, mu, hi)?;
    let m = whittaker_m(k, mu, lo)?;
    Ok(gamma(arg) * rgamma(2.0 * mu + 1.0) * w * m)
}

fn check_pole(arg: f64, energy: f64) -> Result<()> {
    if arg <= POLE_TOL && (arg - arg.round()).abs() < POLE_TOL {
        Err(DualError::OnSpectrum { energy })
    } else {
        Ok(())
    }
}

/// Roots of `1/Γ(arg(E))` on `[lo, hi]`: the poles of a Whittaker Green function.
pub fn gamma_pole_scan<F: Fn(f64) -> f64>(arg: F, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    let f = |e: f64| rgamma(arg(e));
    let mut out = Vec::new();
    let mut prev = (lo, f(lo));
    for i in 1..=n {
        let e = lo + (hi - lo) * i as f64 / n as f64;
        let v = f(e);
        if prev.1 == 0.0 {
            out.push(prev.0);
        } else if v != 0.0 && v.signum() != prev.1.signum() {
            out.push(brent(f, prev.0, e, 1e-15 * e.abs().max(1.0), 200)?);
        }
        prev = (e, v);
    }
    Ok(out)
}

fn check_map_for(tag: SystemTag, map: &DualityMap) -> Result<()> {
    if map.class == MapClass::ClassII {
        map.check_pairing()?;
        if let Some(a) = tag.exponent() {
            if map.source_exponent != a {
                return Err(DualError::MapIncompatible(format!(
                    "map pivots on exponent {} but the state is {} (a={a})",
                    map.source_exponent,
                    tag.label()
                )));
            }
        }
    } else if map.eta != 1.0 {
        return Err(DualError::MapIncompatible(format!("class I map with eta={}", map.eta)));
    }
    Ok(())
}

/// `ψ_b(ρ) = ψ_a(Cρ^η)/h(ρ)`, `h = √f′`; proportional, not equal, to the normalized dual state.
pub fn map_wavefunction<'a>(psi_a: &'a Eigenfunction, map: &DualityMap) -> Result<impl Fn(f64) -> f64 + 'a> {
    check_map_for(psi_a.tag, map)?;
    let map = *map;
    Ok(move |rho: f64| psi_a.eval(map.coordinate(rho)) / map.h(rho))
}

/// `G_b(ρ,ρ′) = [f′(ρ)f′(ρ′)]^{−1/2} G_a(f(ρ), f(ρ′))`.
pub fn transform_green<G>(g_a: G, map: &DualityMap) -> Result<impl Fn(f64, f64) -> Result<f64>>
where
    G: Fn(f64, f64) -> Result<f64>,
{
    if map.class == MapClass::ClassII {
        map.check_pairing()?;
    }
    if !(map.c > 0.0) || map.eta == 0.0 {
        return Err(DualError::MapIncompatible(format!("map with eta={}, C={}", map.eta, map.c)));
    }
    let map = *map;
    Ok(move |rho: f64, rho_p: f64| {
        let jac = (map.jacobian(rho) * map.jacobian(rho_p)).abs().sqrt();
        Ok(g_a(map.coordinate(rho), map.coordinate(rho_p))? / jac)
    })
}

/// Sampled Green values at fixed energy.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenEval {
    pub tag: SystemTag,
    pub energy: f64,
    pub l: f64,
    pub samples: Vec<(f64, f64, f64)>,
}

impl GreenEval {
    pub fn sample<G: Fn(f64, f64) -> Result<f64>>(
        tag: SystemTag,
        energy: f64,
        l: f64,
        g: G,
        points: &[(f64, f64)],
    ) -> Result<Self> {
        let samples = points
            .iter()
            .map(|&(r, rp)| g(r, rp).map(|v| (r, rp, v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            tag,
            energy,
            l,
            samples,
        })
    }
}

/// `𝒢 = (rr′)^{(1−D)/2} G`, the Green function of the full radial equation.
pub fn full_radial_green(g: f64, r: f64, r_prime: f64, dim: u32) -> f64 {
    (r * r_prime).powf(0.5 * (1.0 - dim as f64)) * g
}
