//! The ten end-to-end acceptance checks, shared by the `acceptance` test target
//! and the `verify` subcommand.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::duality::{partner_exponent, DualityMap, PowerPotential, RadialSystem};
use crate::error::{DualError, Result};
use crate::oracle::{numerov_eigen, numerov_eigen_line, numerov_eigen_unchecked, RadialGrid};
use crate::orbits::{map_orbit_samples, ConicOrbit};
use crate::quantum::{
    confinement_couplings, confinement_green, confinement_k, confinement_state, coulomb_eigenfunction_l,
    coulomb_green, coulomb_params_for_hooke, gamma_pole_scan, hooke_eigenfunction_l, hooke_green, map_wavefunction,
    morse_spectrum, transform_green,
};
use crate::semiclassical::{action_j, closed_form_zero_l, dual_energy, wkb_spectrum, OscillatorEnergy, ZeroLEnergy};
use crate::specfun::{whittaker_m, whittaker_m_derivative, whittaker_w, whittaker_w_with_derivative, wronskian, wronskian_wm};
use crate::susy::{cbc_quantize, hooke_to_coulomb, Superpotential};

/// Seed of the random samples in checks 1 and 7.
pub const SEED: u64 = 0x5eed_d0a1;

/// One measured quantity and its bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Part {
    pub label: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Part {
    fn new(label: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub parts: Vec<Part>,
    pub elapsed: Duration,
    pub time_limit: Option<Duration>,
    /// Set when the computation itself failed.
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && !self.parts.is_empty()
            && self.parts.iter().all(Part::passed)
            && self.time_limit.is_none_or(|t| self.elapsed <= t)
    }

    /// Part with the largest residual/tolerance ratio.
    pub fn worst(&self) -> Option<&Part> {
        self.parts
            .iter()
            .max_by(|a, b| (a.residual / a.tolerance).total_cmp(&(b.residual / b.tolerance)))
    }

    /// One-line summary.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let time = match self.time_limit {
            Some(t) => format!("{:.3}s/{:.0}s", self.elapsed.as_secs_f64(), t.as_secs_f64()),
            None => format!("{:.3}s", self.elapsed.as_secs_f64()),
        };
        let detail = match (&self.error, self.worst()) {
            (Some(e), _) => format!("error: {e}"),
            (None, Some(p)) => format!("worst {}: {:.3e} <= {:.0e}", p.label, p.residual, p.tolerance),
            (None, None) => "no measurements".to_string(),
        };
        format!("{status} [{:>2}] {:<34} {detail} ({time})", self.id, self.name)
    }
}

/// Options for a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    /// Fewer random samples and no grid-halving pass in the oracle check.
    pub fast: bool,
}

fn rel(x: f64, exact: f64) -> f64 {
    (x - exact).abs() / exact.abs().max(f64::MIN_POSITIVE)
}

fn timed(
    id: u32,
    name: &'static str,
    limit: Option<f64>,
    f: impl FnOnce() -> Result<Vec<Part>>,
) -> Check {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let (parts, error) = match out {
        Ok(p) => (p, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    Check {
        id,
        name,
        parts,
        elapsed,
        time_limit: limit.map(Duration::from_secs_f64),
        error,
    }
}

/// Runs every check in order.
pub fn run_all(opts: VerifyOptions) -> Vec<Check> {
    vec![
        duality_algebra(opts),
        action_invariance(),
        fractional_wkb(),
        coulomb_hooke_energy(),
        oracle_agreement(opts),
        wavefunction_duality(),
        green_duality(),
        confinement(),
        susy_cbc(),
        orbit_map(),
    ]
}

/// Partner round trip and `(a+2)(b+2) = 4` for random exponents.
pub fn duality_algebra(opts: VerifyOptions) -> Check {
    timed(1, "duality algebra", Some(1.0), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let n = if opts.fast { 100 } else { 1000 };
        let (mut round, mut hyper) = (0.0_f64, 0.0_f64);
        let mut drawn = 0;
        while drawn < n {
            let a: f64 = rng.gen_range(-10.0..10.0);
            if a == -2.0 {
                continue;
            }
            drawn += 1;
            let (b, _) = partner_exponent(a)?;
            let (a2, _) = partner_exponent(b)?;
            round = round.max((a2 - a).abs());
            hyper = hyper.max(((a + 2.0) * (b + 2.0) - 4.0).abs());
        }
        Ok(vec![
            Part::new("round trip |a''-a|", round, 1e-12),
            Part::new("(a+2)(b+2)-4", hyper, 1e-12),
        ])
    })
}

/// Classical action of a Coulomb orbit equals that of its Hooke image.
pub fn action_invariance() -> Check {
    timed(2, "classical action invariance", Some(1.0), || {
        let (m, hbar, lambda_a, l_a, e_a): (f64, f64, f64, f64, f64) = (1.0, 1.0, -1.0, 0.5, -0.5);
        let kappa = (-2.0 * m * e_a).sqrt() / hbar;
        let omega = 1.0;
        let c = m * omega / (2.0 * hbar * kappa);
        let map = DualityMap::class_ii(-1.0, c)?;
        let eta = map.eta;
        let lambda_b = -eta * eta * c * c * e_a;
        let e_b = -eta * eta * c.powf(-1.0 + 2.0) * lambda_a;
        let sys_a = RadialSystem::new(m, hbar, l_a, 3, PowerPotential::single(lambda_a, -1.0))?;
        let sys_b = RadialSystem::new(m, hbar, eta * l_a, 3, PowerPotential::single(lambda_b, 2.0))?;
        let mapped = sys_a.clone().with_energy(e_a).map_to_dual(&map)?;
        let j_a = action_j(&sys_a, e_a)?;
        let j_b = action_j(&sys_b, e_b)?;
        Ok(vec![
            Part::new("|J_a-J_b|/J_a", rel(j_b, j_a), 1e-8),
            Part::new("omega from lambda_b", rel((2.0 * lambda_b / m).sqrt(), omega), 1e-12),
            Part::new("mapped coupling", rel(mapped.potential.coupling(2.0), lambda_b), 1e-12),
            Part::new("mapped energy", rel(mapped.energy.unwrap_or(f64::NAN), e_b), 1e-12),
        ])
    })
}

/// `λ_b ρ^{2/3}` levels `2λ_b(8ħ²/(9mλ_b))^{1/4}(n+½)^{1/2}`.
pub fn two_thirds_levels(lambda_b: f64, m: f64, hbar: f64, n: u32) -> f64 {
    2.0 * lambda_b * (8.0 * hbar * hbar / (9.0 * m * lambda_b)).powf(0.25) * (n as f64 + 0.5).sqrt()
}

/// `λ r^{-1/2}` closed form against numeric WKB, and transfer to `ρ^{2/3}`.
pub fn fractional_wkb() -> Check {
    timed(3, "WKB fractional spectrum", Some(5.0), || {
        let (a, lambda, m, hbar) = (-0.5, -1.0, 1.0, 1.0);
        let sys = RadialSystem::new(m, hbar, 0.0, 2, PowerPotential::single(lambda, a))?;
        let numeric = wkb_spectrum(&sys, 4)?;
        let mut closed_vs_numeric = 0.0_f64;
        let mut transfer = 0.0_f64;
        let (_, eta) = partner_exponent(a)?;
        for entry in &numeric {
            let closed = closed_form_zero_l(a, lambda, m, hbar, entry.n_r)?;
            closed_vs_numeric = closed_vs_numeric.max(rel(entry.energy, closed));
            let f = ZeroLEnergy { a, m, hbar };
            let e_b = dual_energy(&f, 1.0, 0.0, entry.n_r as f64 + 0.5, eta, 1.0)?;
            transfer = transfer.max(rel(e_b, two_thirds_levels(1.0, m, hbar, entry.n_r)));
        }
        Ok(vec![
            Part::new("closed form vs WKB", closed_vs_numeric, 1e-8),
            Part::new("transfer vs rho^(2/3) levels", transfer, 1e-9),
        ])
    })
}

/// Oscillator energy formula carried to hydrogen levels.
pub fn coulomb_hooke_energy() -> Check {
    timed(4, "Coulomb-Hooke energy transfer", None, || {
        let (m, hbar, e2) = (1.0, 1.0, 1.0);
        let f = OscillatorEnergy { m, hbar };
        let mut worst = 0.0_f64;
        for c in [1.0, 0.37, 2.9] {
            for n_r in 0..=3u32 {
                for ell in 0..=3u32 {
                    let l_b = ell as f64 + 0.5;
                    let e = dual_energy(&f, -e2, l_b, n_r as f64 + 0.5, 0.5, c)?;
                    let exact = -m * e2 * e2 / (2.0 * hbar * hbar * ((n_r + ell + 1) as f64).powi(2));
                    worst = worst.max(rel(e, exact));
                }
            }
        }
        Ok(vec![Part::new("max relative error", worst, 1e-12)])
    })
}

/// Shooting eigenvalues against Coulomb, Hooke and Morse closed forms.
pub fn oracle_agreement(opts: VerifyOptions) -> Check {
    timed(5, "oracle agreement", Some(30.0), || {
        let solve = |v: &dyn Fn(f64) -> f64, l: f64, nodes: usize, grid: &RadialGrid| {
            if opts.fast {
                numerov_eigen_unchecked(v, l, 1.0, 1.0, nodes, grid)
            } else {
                numerov_eigen(v, l, 1.0, 1.0, nodes, grid)
            }
        };
        let coulomb_grid = RadialGrid::log(1e-6, 250.0, 20_000)?;
        let hooke_grid = RadialGrid::log(1e-6, 12.0, 20_000)?;
        let (mut coulomb, mut hooke) = (0.0_f64, 0.0_f64);
        for ell in 0..=1u32 {
            let l = ell as f64 + 0.5;
            for n_r in 0..=2u32 {
                let n = (n_r + ell + 1) as f64;
                let e = solve(&|r: f64| -1.0 / r, l, n_r as usize, &coulomb_grid)?;
                coulomb = coulomb.max(rel(e, -0.5 / (n * n)));
                let e = solve(&|r: f64| 0.5 * r * r, l, n_r as usize, &hooke_grid)?;
                hooke = hooke.max(rel(e, 2.0 * n_r as f64 + ell as f64 + 1.5));
            }
        }
        let line = RadialGrid::default_line();
        let mut morse = 0.0_f64;
        for nu in 0..=2u32 {
            let v = |xi: f64| 8.0 * (-2.0 * xi).exp() - 16.0 * (-xi).exp();
            let e = if opts.fast {
                crate::oracle::numerov_eigen_line_unchecked(v, 1.0, 1.0, nu as usize, &line)?
            } else {
                numerov_eigen_line(v, 1.0, 1.0, nu as usize, &line)?
            };
            morse = morse.max(rel(e, morse_spectrum(nu, 8.0, 8.0, 1.0, 1.0, 1.0)?));
        }
        Ok(vec![
            Part::new("Coulomb", coulomb, 1e-5),
            Part::new("Hooke", hooke, 1e-5),
            Part::new("Morse", morse, 1e-4),
        ])
    })
}

/// Mapped Coulomb ground state over the direct oscillator ground state.
pub fn wavefunction_duality() -> Check {
    timed(6, "wavefunction duality", None, || {
        let (m, hbar, e2, omega) = (1.0, 1.0, 1.0, 1.3);
        let psi_b = hooke_eigenfunction_l(0, 1.0, omega, m, hbar)?;
        let p = coulomb_params_for_hooke(psi_b.energy, 1.0, omega, e2, m, hbar)?;
        let psi_a = coulomb_eigenfunction_l(0, p.l_a, e2, m, hbar)?;
        let mapped = map_wavefunction(&psi_a, &p.map)?;
        let ratios: Vec<f64> = (0..=58).map(|i| 0.1 + 0.05 * i as f64).map(|r| mapped(r) / psi_b.eval(r)).collect();
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let var = ratios.iter().map(|q| (q / mean - 1.0).powi(2)).sum::<f64>() / ratios.len() as f64;
        Ok(vec![Part::new("relative variance of ratio", var, 1e-10)])
    })
}

/// Transformed Coulomb Green function against the oscillator one, and the Wronskian.
pub fn green_duality() -> Check {
    timed(7, "Green duality", None, || {
        let (m, hbar, e2, omega, l_b) = (1.0, 1.0, 1.0, 1.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
        let mut worst = 0.0_f64;
        let mut drawn = 0;
        while drawn < 10 {
            let rho: f64 = rng.gen_range(0.2..3.0);
            let rho_p: f64 = rng.gen_range(0.2..3.0);
            let e_b: f64 = rng.gen_range(0.3..9.0);
            let arg = 0.5 * l_b - e_b / (2.0 * hbar * omega) + 0.5;
            if arg <= 0.0 && (arg - arg.round()).abs() < 1e-3 {
                continue;
            }
            drawn += 1;
            let p = coulomb_params_for_hooke(e_b, l_b, omega, e2, m, hbar)?;
            let g_a = |r: f64, rp: f64| coulomb_green(r, rp, p.e_a, p.l_a, e2, m, hbar);
            let mapped = transform_green(g_a, &p.map)?(rho, rho_p)?;
            let direct = hooke_green(rho, rho_p, e_b, l_b, omega, m, hbar)?;
            worst = worst.max(rel(mapped, direct));
        }
        let mut wr = 0.0_f64;
        let mut wr_fd = 0.0_f64;
        for (k, mu, kappa, r) in [(1.3, 0.5, 0.8, 1.1), (2.7, 1.5, 0.4, 3.0), (0.2, 0.75, 1.7, 0.6), (-0.8, 2.0, 1.0, 2.2)] {
            let x = 2.0 * kappa * r;
            let (w, dw) = whittaker_w_with_derivative(k, mu, x)?;
            let mm = whittaker_m(k, mu, x)?;
            let dm = whittaker_m_derivative(k, mu, x)?;
            let exact = wronskian_wm(k, mu);
            wr = wr.max(rel(wronskian(w, dw, mm, dm), exact));
            // r-derivatives by finite differences, rescaled by 1/(2κ).
            let h = 1e-3;
            let d = |f: &dyn Fn(f64) -> Result<f64>| -> Result<f64> {
                Ok((-f(r + 2.0 * h)? + 8.0 * f(r + h)? - 8.0 * f(r - h)? + f(r - 2.0 * h)?) / (12.0 * h))
            };
            let dw_r = d(&|s| whittaker_w(k, mu, 2.0 * kappa * s))?;
            let dm_r = d(&|s| whittaker_m(k, mu, 2.0 * kappa * s))?;
            wr_fd = wr_fd.max(rel(wronskian(w, dw_r, mm, dm_r) / (2.0 * kappa), exact));
        }
        Ok(vec![
            Part::new("transformed vs direct Green", worst, 1e-8),
            Part::new("Wronskian", wr, 1e-8),
            Part::new("Wronskian in r (finite differences)", wr_fd, 1e-8),
        ])
    })
}

/// Zero-energy state of `λ_a r^{-1/2} + r` in units `2m = ħ = 1`.
pub fn confinement() -> Check {
    timed(8, "confinement", None, || {
        let (m, hbar, lp, ell, dim, nu0) = (0.5, 1.0, 1.0, 1u32, 3u32, 0u32);
        let lambda_a = confinement_couplings(nu0, ell, dim, lp, m, hbar)?;
        let l = ell as f64 + 0.5 * dim as f64 - 1.0;
        let grid = RadialGrid::log(1e-6, 30.0, 20_000)?;
        let e = numerov_eigen(|r: f64| lambda_a / r.sqrt() + lp * r, l, m, hbar, nu0 as usize, &grid)?;
        let psi = confinement_state(nu0, ell, dim, lp, m, hbar)?;
        let mut residual = 0.0_f64;
        let h = 1e-3;
        for i in 0..=99 {
            let r = 0.1 + 9.9 * i as f64 / 99.0;
            let f = |x: f64| psi.eval(x);
            let d2 = (-f(r + 2.0 * h) + 16.0 * f(r + h) - 30.0 * f(r) + 16.0 * f(r - h) - f(r - 2.0 * h)) / (12.0 * h * h);
            let q = 2.0 * m / (hbar * hbar) * (lambda_a / r.sqrt() + lp * r) + (l * l - 0.25) / (r * r);
            residual = residual.max((d2 - q * f(r)).abs() / d2.abs().max((q * f(r)).abs()));
        }
        let mu = 2.0 / 3.0 * l;
        let pole_arg = mu - confinement_k(lambda_a, lp, m, hbar) + 0.5;
        let poles = gamma_pole_scan(|lam| mu - confinement_k(lam, lp, m, hbar) + 0.5, -6.0, -0.1, 2000)?;
        let scanned = poles
            .last()
            .copied()
            .ok_or_else(|| DualError::NoEigenvalueInBracket("no Green pole in [-6, -0.1]".into()))?;
        let on_pole = matches!(
            confinement_green(1.0, 2.0, lambda_a, l, lp, m, hbar),
            Err(DualError::OnSpectrum { .. })
        );
        Ok(vec![
            Part::new("lambda_a + 4.5", (lambda_a + 4.5).abs(), 1e-12),
            Part::new("|E| from shooting", e.abs(), 1e-4),
            Part::new("state residual", residual, 1e-6),
            Part::new("pole argument + nu0", (pole_arg + nu0 as f64).abs(), 1e-12),
            Part::new("scanned pole vs coupling", rel(scanned, lambda_a), 1e-12),
            Part::new("Green flags the pole", if on_pole { 0.0 } else { 1.0 }, 0.0),
        ])
    })
}

/// CBC quantization of the oscillator and hydrogen superpotentials, and the option (i) transfer.
pub fn susy_cbc() -> Check {
    timed(9, "SUSY CBC", None, || {
        let (m, hbar, omega, e2) = (1.0, 1.0, 1.0, 1.0);
        let mut osc = 0.0_f64;
        for mu in [0.5, 1.5, 2.5] {
            let levels = cbc_quantize(&Superpotential::oscillator(m, hbar, omega, mu)?, 5, -1)?;
            for (nu, e) in levels.iter().enumerate() {
                let exact = 2.0 * hbar * omega * nu as f64;
                osc = osc.max(if nu == 0 { e.abs() } else { rel(*e, exact) });
            }
        }
        let mut hyd = 0.0_f64;
        for mu in [1.5, 2.5] {
            let levels = cbc_quantize(&Superpotential::hydrogen(m, hbar, e2, mu)?, 5, -1)?;
            for (nu, e) in levels.iter().enumerate() {
                let qm = -m * e2 * e2 / (2.0 * hbar * hbar * (nu as f64 + mu).powi(2));
                let exact = qm + m * e2 * e2 / (2.0 * hbar * hbar * mu * mu);
                hyd = hyd.max(if nu == 0 { e.abs() } else { rel(*e, exact) });
            }
        }
        let mut transfer = 0.0_f64;
        for ell in 0..=2u32 {
            let mu_b = ell as f64 + 1.0;
            let mu_a = 2.0 * mu_b;
            for nu in 0..=4u32 {
                let e_a = 2.0 * hbar * omega * nu as f64;
                let t = hooke_to_coulomb(m, hbar, omega, mu_a, e_a, e2)?;
                let exact = -m * e2 * e2 / (2.0 * hbar * hbar * (nu as f64 + mu_b).powi(2));
                transfer = transfer.max(rel(t.e_qm, exact));
            }
        }
        Ok(vec![
            Part::new("oscillator 2ħων", osc, 1e-9),
            Part::new("hydrogen levels", hyd, 1e-9),
            Part::new("option (i) transfer", transfer, 1e-9),
        ])
    })
}

/// Kepler ellipse `(ā, e) = (2, 0.6)` to its oscillator image.
pub fn orbit_map() -> Check {
    timed(10, "orbit map", None, || {
        let orbit = ConicOrbit::attractive(2.0, 0.6)?;
        let (image, pairs) = map_orbit_samples(&orbit, 1.0, 400)?;
        let params = (image.alpha - 1.788854)
            .abs()
            .max((image.beta - 0.894427).abs())
            .max((image.epsilon - 0.866025).abs());
        let on_curve = pairs
            .iter()
            .map(|(_, s)| ((s.x / image.alpha).powi(2) + (s.y / image.beta).powi(2) - 1.0).abs())
            .fold(0.0, f64::max);
        Ok(vec![
            Part::new("(alpha, beta, epsilon)", params, 1e-6),
            Part::new("ellipse equation", on_curve, 1e-10),
        ])
    })
}
