//! Radial actions, WKB quantization and transfer of spectra across a dual pair.
//!
//! The radial action is `J(E) = 2∫ √(2m(E − V) − ħ²L²/r²) dr` between the turning
//! points, with `L` the continuous (Langer) angular parameter. Quantization is
//! `J = 2πħN`, `N = n_r + 1/2`.

use std::f64::consts::PI;

use crate::duality::{langer_l, RadialSystem};
use crate::error::{DualError, Result};
use crate::oracle::quad::{integrate, QuadOptions};
use crate::roots::brent;
use crate::specfun::beta_fn;

/// Inner and outer turning point; `r_hi` is `+∞` when the motion is unbound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    pub r_lo: f64,
    pub r_hi: f64,
}

impl TurningPoints {
    pub fn is_bound(&self) -> bool {
        self.r_hi.is_finite()
    }
}

/// Log-spaced sign scan used to bracket turning points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningScan {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
    pub xtol: f64,
}

impl Default for TurningScan {
    fn default() -> Self {
        Self {
            r_min: 1e-6,
            r_max: 1e6,
            n_points: 512,
            xtol: 1e-12,
        }
    }
}

impl TurningScan {
    fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let lmin = self.r_min.ln();
        let step = (self.r_max.ln() - lmin) / (self.n_points - 1) as f64;
        (0..self.n_points).map(move |i| (lmin + step * i as f64).exp())
    }
}

/// Where the radial momentum is real.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Region {
    Bound(TurningPoints),
    Forbidden,
    Unbound(f64),
}

fn radicand(sys: &RadialSystem, e: f64, r: f64) -> f64 {
    2.0 * sys.m * (e - sys.potential.eval(r)) - sys.hbar * sys.hbar * sys.l * sys.l / (r * r)
}

fn refine(sys: &RadialSystem, e: f64, a: f64, b: f64, xtol: f64) -> Result<f64> {
    brent(|r| radicand(sys, e, r), a, b, xtol * b, 200)
}

fn allowed_region(sys: &RadialSystem, e: f64, scan: &TurningScan) -> Result<Region> {
    let mut prev: Option<(f64, f64)> = None;
    let mut r_lo = None;
    for r in scan.grid() {
        let q = radicand(sys, e, r);
        if q.is_nan() {
            return Err(DualError::DomainError(format!("radicand is NaN at r={r}")));
        }
        match (prev, r_lo) {
            (None, None) if q > 0.0 => r_lo = Some(0.0),
            (Some((rp, qp)), None) if qp <= 0.0 && q > 0.0 => {
                r_lo = Some(refine(sys, e, rp, r, scan.xtol)?);
            }
            (Some((rp, qp)), Some(lo)) if qp > 0.0 && q <= 0.0 => {
                let hi = refine(sys, e, rp, r, scan.xtol)?;
                return Ok(Region::Bound(TurningPoints { r_lo: lo, r_hi: hi }));
            }
            _ => {}
        }
        prev = Some((r, q));
    }
    Ok(match r_lo {
        Some(lo) => Region::Unbound(lo),
        None => Region::Forbidden,
    })
}

/// Turning points of the first classically allowed interval.
///
/// When the radicand is already positive at the start of the scan the inner
/// point is taken to be the origin.
pub fn turning_points(sys: &RadialSystem, e: f64, scan: &TurningScan) -> Result<TurningPoints> {
    match allowed_region(sys, e, scan)? {
        Region::Bound(tp) => Ok(tp),
        Region::Unbound(lo) => Ok(TurningPoints {
            r_lo: lo,
            r_hi: f64::INFINITY,
        }),
        Region::Forbidden => Err(DualError::NoBoundMotion(format!(
            "no classically allowed region at E={e}"
        ))),
    }
}

fn action_between(sys: &RadialSystem, e: f64, tp: TurningPoints, rel_tol: f64) -> Result<f64> {
    let width = tp.r_hi - tp.r_lo;
    let f = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let r = tp.r_lo + width * s * s;
        if r <= 0.0 {
            return 0.0;
        }
        radicand(sys, e, r).max(0.0).sqrt() * 2.0 * width * s * c
    };
    let opts = QuadOptions {
        rel_tol,
        ..QuadOptions::default()
    };
    integrate(f, 0.0, 0.5 * PI, opts).map(|(v, _)| 2.0 * v)
}

/// `J(E)` to relative tolerance `rel_tol`.
pub fn action_j_with(sys: &RadialSystem, e: f64, scan: &TurningScan, rel_tol: f64) -> Result<f64> {
    let tp = turning_points(sys, e, scan)?;
    if !tp.is_bound() {
        return Err(DualError::NoBoundMotion(format!(
            "motion at E={e} is unbound (outer turning point beyond r={})",
            scan.r_max
        )));
    }
    action_between(sys, e, tp, rel_tol)
}

/// `J(E)` with the default scan and a relative tolerance of `1e-10`.
pub fn action_j(sys: &RadialSystem, e: f64) -> Result<f64> {
    action_j_with(sys, e, &TurningScan::default(), 1e-10)
}

/// Action extended to the whole real line: 0 with no allowed region, `+∞` when unbound.
fn action_extended(sys: &RadialSystem, e: f64, scan: &TurningScan, rel_tol: f64) -> Result<f64> {
    match allowed_region(sys, e, scan)? {
        Region::Bound(tp) => action_between(sys, e, tp, rel_tol),
        Region::Forbidden => Ok(0.0),
        Region::Unbound(_) => Ok(f64::INFINITY),
    }
}

/// Where an energy came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    WkbNumeric,
    DualityTransferred,
    Oracle,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed_form",
            Provenance::WkbNumeric => "wkb_numeric",
            Provenance::DualityTransferred => "duality_transferred",
            Provenance::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub n_r: u32,
    pub ell: u32,
    pub dim: u32,
    pub energy: f64,
    pub provenance: Provenance,
}

/// Integer `ℓ` whose Langer value is closest to `L`.
pub fn ell_from_langer(l: f64, dim: u32) -> u32 {
    (l - (dim as f64 - 2.0) / 2.0).round().max(0.0) as u32
}

const WKB_QUAD_TOL: f64 = 1e-12;
const WKB_ENERGY_TOL: f64 = 1e-13;

/// Lowest value of the Langer effective potential on the scan grid.
fn potential_floor(sys: &RadialSystem, scan: &TurningScan) -> f64 {
    scan.grid()
        .map(|r| sys.langer_potential(r))
        .filter(|v| v.is_finite())
        .fold(f64::INFINITY, f64::min)
}

/// Energy at which `J(E)` equals `target`.
pub fn energy_for_action(sys: &RadialSystem, target: f64, scan: &TurningScan) -> Result<f64> {
    let g = |e: f64| action_extended(sys, e, scan, WKB_QUAD_TOL).map(|j| j - target);
    let floor = potential_floor(sys, scan);
    if !floor.is_finite() {
        return Err(DualError::RootNotBracketed("effective potential has no finite minimum".into()));
    }
    let mut lo = floor;
    let mut step = floor.abs().max(1.0) * 1e-3;
    let mut hi = lo + step;
    let mut ghi = g(hi)?;
    let mut expansions = 0;
    while ghi <= 0.0 {
        lo = hi;
        step *= 2.0;
        hi = lo + step;
        ghi = g(hi)?;
        expansions += 1;
        if expansions > 200 {
            return Err(DualError::RootNotBracketed(format!(
                "J(E) stays below {target} up to E={hi}"
            )));
        }
    }
    // Pull an unbound upper end back into the bound window.
    let mut inner = 0;
    while ghi.is_infinite() {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid)?;
        if gm <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
            ghi = gm;
        }
        inner += 1;
        if inner > 200 {
            return Err(DualError::RootNotBracketed(format!(
                "no finite action above {target} below E={hi}"
            )));
        }
    }
    let mut failure = None;
    let root = brent(
        |e| match g(e) {
            Ok(v) if v.is_finite() => v,
            Ok(_) => f64::MAX,
            Err(err) => {
                failure.get_or_insert(err);
                f64::NAN
            }
        },
        lo,
        hi,
        WKB_ENERGY_TOL * lo.abs().max(hi.abs()),
        300,
    );
    match failure {
        Some(err) => Err(err),
        None => root,
    }
}

/// WKB levels `n_r = 0..=n_max` solving `J(E) = 2πħ(n_r + 1/2)`.
pub fn wkb_spectrum(sys: &RadialSystem, n_max: u32) -> Result<Vec<SpectrumEntry>> {
    wkb_spectrum_with(sys, n_max, &TurningScan::default())
}

pub fn wkb_spectrum_with(sys: &RadialSystem, n_max: u32, scan: &TurningScan) -> Result<Vec<SpectrumEntry>> {
    let ell = ell_from_langer(sys.l, sys.dim);
    (0..=n_max)
        .map(|n| {
            let target = 2.0 * PI * sys.hbar * (n as f64 + 0.5);
            energy_for_action(sys, target, scan).map(|energy| SpectrumEntry {
                n_r: n,
                ell,
                dim: sys.dim,
                energy,
                provenance: Provenance::WkbNumeric,
            })
        })
        .collect()
}

/// Closed-form `L = 0` WKB energy for `λ r^a`, continuous `N = n + 1/2`.
pub fn closed_form_zero_l_n(a: f64, lambda: f64, m: f64, hbar: f64, n: f64) -> Result<f64> {
    let p = 2.0 / (a + 2.0);
    let q = -2.0 * a / (a + 2.0);
    if lambda < 0.0 && a > -2.0 && a < 0.0 {
        let b = beta_fn(-(a + 2.0) / (2.0 * a), 1.5)?;
        let k = (2.0 * m).sqrt() / (hbar * a.abs() * PI) * b;
        Ok(-(-lambda).powf(p) * k.powf(q) * n.powf(-q))
    } else if lambda > 0.0 && a > 0.0 {
        let b = beta_fn(1.0 / a, 1.5)?;
        let k = (2.0 * m).sqrt() * b / (PI * hbar * a);
        Ok(lambda.powf(p) * k.powf(q) * n.powf(-q))
    } else {
        Err(DualError::UnsupportedSignPattern(format!(
            "closed form needs (lambda<0, -2<a<0) or (lambda>0, a>0); got lambda={lambda}, a={a}"
        )))
    }
}

/// Closed-form `L = 0` WKB energy of level `n`.
pub fn closed_form_zero_l(a: f64, lambda: f64, m: f64, hbar: f64, n: u32) -> Result<f64> {
    closed_form_zero_l_n(a, lambda, m, hbar, n as f64 + 0.5)
}

/// An energy formula `ℰ(λ, L, N)` for a single power `λ r^a`.
pub trait EnergyFunction {
    fn exponent(&self) -> f64;
    fn energy(&self, lambda: f64, l: f64, n: f64) -> Result<f64>;
    /// Closed-form inverse in `λ`, if one is known.
    fn coupling_for(&self, _e: f64, _l: f64, _n: f64) -> Option<Result<f64>> {
        None
    }
}

/// `ℰ = ħ√(2λ/m)(2N + L)`, exact for `λ r²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorEnergy {
    pub m: f64,
    pub hbar: f64,
}

impl EnergyFunction for OscillatorEnergy {
    fn exponent(&self) -> f64 {
        2.0
    }

    fn energy(&self, lambda: f64, l: f64, n: f64) -> Result<f64> {
        if lambda < 0.0 {
            return Err(DualError::DomainError(format!("oscillator needs lambda >= 0, got {lambda}")));
        }
        Ok(self.hbar * (2.0 * lambda / self.m).sqrt() * (2.0 * n + l))
    }

    fn coupling_for(&self, e: f64, l: f64, n: f64) -> Option<Result<f64>> {
        let w = self.hbar * (2.0 * n + l);
        Some(if e < 0.0 || w <= 0.0 {
            Err(DualError::InversionFailure(format!("no oscillator coupling gives E={e}")))
        } else {
            Ok(0.5 * self.m * (e / w).powi(2))
        })
    }
}

/// `ℰ = -mλ²/(2ħ²(N + L)²)`, exact for `λ/r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombEnergy {
    pub m: f64,
    pub hbar: f64,
}

impl EnergyFunction for CoulombEnergy {
    fn exponent(&self) -> f64 {
        -1.0
    }

    fn energy(&self, lambda: f64, l: f64, n: f64) -> Result<f64> {
        Ok(-self.m * lambda * lambda / (2.0 * self.hbar * self.hbar * (n + l).powi(2)))
    }
}

/// Closed-form zero-`L` energies as an [`EnergyFunction`]; `L` must be zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroLEnergy {
    pub a: f64,
    pub m: f64,
    pub hbar: f64,
}

impl EnergyFunction for ZeroLEnergy {
    fn exponent(&self) -> f64 {
        self.a
    }

    fn energy(&self, lambda: f64, l: f64, n: f64) -> Result<f64> {
        if l != 0.0 {
            return Err(DualError::DomainError(format!("zero-L formula called with L={l}")));
        }
        closed_form_zero_l_n(self.a, lambda, self.m, self.hbar, n)
    }
}

/// Numeric WKB energy for `λ r^a` at continuous `(L, N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WkbEnergy {
    pub a: f64,
    pub m: f64,
    pub hbar: f64,
    pub dim: u32,
}

impl EnergyFunction for WkbEnergy {
    fn exponent(&self) -> f64 {
        self.a
    }

    fn energy(&self, lambda: f64, l: f64, n: f64) -> Result<f64> {
        let sys = RadialSystem::new(
            self.m,
            self.hbar,
            l,
            self.dim,
            crate::duality::PowerPotential::single(lambda, self.a),
        )?;
        energy_for_action(&sys, 2.0 * PI * self.hbar * n, &TurningScan::default())
    }
}

fn invert_coupling<F: EnergyFunction + ?Sized>(f: &F, e: f64, l: f64, n: f64) -> Result<f64> {
    let g = |lambda: f64| f.energy(lambda, l, n).map(|v| v - e).unwrap_or(f64::NAN);
    let mut candidates: Vec<f64> = (-12..=12).map(|k| 10f64.powi(k)).collect();
    let neg: Vec<f64> = candidates.iter().rev().map(|x| -x).collect();
    candidates = neg.into_iter().chain(candidates).collect();
    let values: Vec<(f64, f64)> = candidates.iter().map(|&x| (x, g(x))).collect();
    for w in values.windows(2) {
        let ((x0, g0), (x1, g1)) = (w[0], w[1]);
        if g0.is_nan() || g1.is_nan() || x0.signum() != x1.signum() {
            continue;
        }
        if g0 == 0.0 {
            return Ok(x0);
        }
        if g0.signum() != g1.signum() {
            return brent(
                &g,
                x0,
                x1,
                1e-15 * x0.abs().max(x1.abs()),
                300,
            )
            .map_err(|err| DualError::InversionFailure(err.to_string()));
        }
    }
    Err(DualError::InversionFailure(format!(
        "no coupling found with E(lambda, L={l}, N={n}) = {e}"
    )))
}

/// `E_b = -η²C^{a+2} ℰ⁻¹(-λ_b/(η²C²), L_b/|η|, N)`.
pub fn dual_energy<F: EnergyFunction + ?Sized>(
    f: &F,
    lambda_b: f64,
    l_b: f64,
    n: f64,
    eta: f64,
    c: f64,
) -> Result<f64> {
    if eta == 0.0 || !(c > 0.0) {
        return Err(DualError::InvalidParameter(format!("need eta != 0 and C > 0, got {eta}, {c}")));
    }
    let eta2 = eta * eta;
    let e_a = -lambda_b / (eta2 * c * c);
    let l_a = l_b / eta.abs();
    let lambda_a = match f.coupling_for(e_a, l_a, n) {
        Some(r) => r?,
        None => invert_coupling(f, e_a, l_a, n)?,
    };
    Ok(-eta2 * c.powf(f.exponent() + 2.0) * lambda_a)
}

/// Transferred spectrum with `L_b` and `N` quantized after mapping.
pub fn dual_spectrum<F: EnergyFunction + ?Sized>(
    f: &F,
    lambda_b: f64,
    ell: u32,
    dim: u32,
    n_max: u32,
    eta: f64,
    c: f64,
) -> Result<Vec<SpectrumEntry>> {
    let l_b = langer_l(ell, dim);
    (0..=n_max)
        .map(|n| {
            dual_energy(f, lambda_b, l_b, n as f64 + 0.5, eta, c).map(|energy| SpectrumEntry {
                n_r: n,
                ell,
                dim,
                energy,
                provenance: Provenance::DualityTransferred,
            })
        })
        .collect()
}

/// Shared function `F(x, N)` of a dual family.
pub type SharedFn = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Shared functions keyed by the (unordered) exponent pair they serve.
#[derive(Default)]
pub struct SharedFunctionRegistry {
    entries: Vec<((f64, f64), SharedFn)>,
}

impl SharedFunctionRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, pair: (f64, f64), f: SharedFn) {
        self.entries.push((pair, f));
    }

    /// Coulomb–Hooke family: `F(x, N) = (ħ²/2m)(N + x/√2)²`.
    pub fn with_coulomb_hooke(m: f64, hbar: f64) -> Self {
        let mut reg = Self::new();
        let k = hbar * hbar / (2.0 * m);
        reg.register(
            (-1.0, 2.0),
            Box::new(move |x, n| k * (n + x / std::f64::consts::SQRT_2).powi(2)),
        );
        reg
    }

    pub fn lookup(&self, a: f64) -> Option<&SharedFn> {
        self.entries
            .iter()
            .find(|((p, q), _)| *p == a || *q == a)
            .map(|(_, f)| f)
    }
}

/// `E = sgn(λ)·((a+2)²/4)|λ|^{2/(a+2)} F(√(2/(a+2)) L, N)^{1/a}`.
pub fn symmetric_energy_form(
    registry: &SharedFunctionRegistry,
    a: f64,
    lambda: f64,
    l: f64,
    n: f64,
) -> Result<f64> {
    let f = registry.lookup(a).ok_or(DualError::MissingF { a, b: -2.0 * a / (a + 2.0) })?;
    let d = a + 2.0;
    let fv = f((2.0 / d).sqrt() * l, n);
    let magnitude = 0.25 * d * d * lambda.abs().powf(2.0 / d) * fv.powf(1.0 / a);
    Ok(lambda.signum() * magnitude)
}

/// Kepler energy from the radial action: `E = -2π²mλ²/(J + 2πħL)²`.
pub fn kepler_energy_from_action(j: f64, l: f64, m: f64, lambda: f64, hbar: f64) -> f64 {
    -2.0 * PI * PI * m * lambda * lambda / (j + 2.0 * PI * hbar * l).powi(2)
}

/// Oscillator energy from the radial action: `E = (ω/2π)(2J + 2πħL)`.
pub fn hooke_energy_from_action(j: f64, l: f64, omega: f64, hbar: f64) -> f64 {
    omega / (2.0 * PI) * (2.0 * j + 2.0 * PI * hbar * l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{exchange_energy_coupling, PowerPotential};
    use proptest::prelude::*;

    fn coulomb(l: f64) -> RadialSystem {
        RadialSystem::new(1.0, 1.0, l, 3, PowerPotential::single(-1.0, -1.0)).unwrap()
    }

    fn hooke(omega: f64, l: f64) -> RadialSystem {
        RadialSystem::new(1.0, 1.0, l, 3, PowerPotential::single(0.5 * omega * omega, 2.0)).unwrap()
    }

    // Closed-form actions, obtained by inverting the exact Coulomb and oscillator energy formulas.
    fn coulomb_action(e: f64, l: f64) -> f64 {
        2.0 * PI * (1.0 / (-2.0 * e).sqrt() - l)
    }

    fn hooke_action(e: f64, omega: f64, l: f64) -> f64 {
        PI * (e / omega - l)
    }

    #[test]
    fn reference_actions() {
        assert!((action_j(&coulomb(0.5), -0.5).unwrap() - PI).abs() < 1e-9);
        assert!((action_j(&hooke(1.0, 1.0), 2.0).unwrap() - PI).abs() < 1e-9);
    }

    #[test]
    fn below_minimum_has_no_motion() {
        assert!(matches!(action_j(&hooke(1.0, 1.0), 0.5), Err(DualError::NoBoundMotion(_))));
        assert!(matches!(action_j(&coulomb(0.5), 0.1), Err(DualError::NoBoundMotion(_))));
    }

    #[test]
    fn turning_points_are_roots() {
        let sys = coulomb(0.5);
        let tp = turning_points(&sys, -0.5, &TurningScan::default()).unwrap();
        let exact = (1.0 - 0.75f64.sqrt(), 1.0 + 0.75f64.sqrt());
        assert!((tp.r_lo - exact.0).abs() < 1e-11);
        assert!((tp.r_hi - exact.1).abs() < 1e-11);
        let zero_l = turning_points(&coulomb(0.0), -0.5, &TurningScan::default()).unwrap();
        assert_eq!(zero_l.r_lo, 0.0);
        assert!((zero_l.r_hi - 2.0).abs() < 1e-11);
    }

    #[test]
    fn coulomb_wkb_is_exact() {
        let spec = wkb_spectrum(&RadialSystem::quantized(1.0, 1.0, 0, 3, PowerPotential::single(-1.0, -1.0)).unwrap(), 3).unwrap();
        for s in &spec {
            let exact = -0.5 / ((s.n_r + 1) as f64).powi(2);
            assert!((s.energy - exact).abs() < 1e-10 * exact.abs(), "{s:?}");
            assert_eq!(s.provenance, Provenance::WkbNumeric);
        }
    }

    #[test]
    fn oscillator_wkb_is_exact() {
        let sys = RadialSystem::quantized(1.0, 1.0, 0, 3, PowerPotential::single(0.5, 2.0)).unwrap();
        for s in wkb_spectrum(&sys, 3).unwrap() {
            let exact = 2.0 * s.n_r as f64 + 1.5;
            assert!((s.energy - exact).abs() < 1e-10 * exact, "{s:?}");
        }
    }

    #[test]
    fn fractional_power_closed_form() {
        let mut expected = [-0.793_700_525_984_099_7, -0.381_571_414_184_444];
        let sys = RadialSystem::new(1.0, 1.0, 0.0, 3, PowerPotential::single(-1.0, -0.5)).unwrap();
        let wkb = wkb_spectrum(&sys, 1).unwrap();
        for (n, e) in expected.iter_mut().enumerate() {
            let cf = closed_form_zero_l(-0.5, -1.0, 1.0, 1.0, n as u32).unwrap();
            assert!((cf - *e).abs() < 1e-14);
            assert!((wkb[n].energy - cf).abs() < 1e-9 * cf.abs());
        }
    }

    #[test]
    fn dual_partner_closed_form() {
        // High-precision values of the b = 2/3, λ = 1 formula.
        let reference = [
            1.373_178_095_938_078_6,
            2.378_414_230_005_442,
            3.070_519_567_731_271_8,
            3.633_087_747_653_349_6,
            4.119_534_287_814_235,
        ];
        for (n, r) in reference.iter().enumerate() {
            let e = closed_form_zero_l(2.0 / 3.0, 1.0, 1.0, 1.0, n as u32).unwrap();
            assert!((e - r).abs() < 1e-13 * r);
        }
        assert!(matches!(
            closed_form_zero_l(1.0, -1.0, 1.0, 1.0, 0),
            Err(DualError::UnsupportedSignPattern(_))
        ));
    }

    #[test]
    fn fractional_transfer() {
        let f = ZeroLEnergy { a: -0.5, m: 1.0, hbar: 1.0 };
        let (b, eta) = crate::duality::partner_exponent(-0.5).unwrap();
        for n in 0..5u32 {
            let transferred = dual_energy(&f, 1.0, 0.0, n as f64 + 0.5, eta, 1.0).unwrap();
            let direct = closed_form_zero_l(b, 1.0, 1.0, 1.0, n).unwrap();
            assert!((transferred - direct).abs() < 1e-9 * direct);
        }
    }

    #[test]
    fn oscillator_to_coulomb_transfer() {
        let f = OscillatorEnergy { m: 1.0, hbar: 1.0 };
        for ell in 0..=3u32 {
            for n_r in 0..=3u32 {
                let e = dual_energy(&f, -1.0, langer_l(ell, 3), n_r as f64 + 0.5, 0.5, 0.7).unwrap();
                let exact = -0.5 / ((n_r + ell + 1) as f64).powi(2);
                assert!((e - exact).abs() <= 1e-12 * exact.abs());
            }
        }
    }

    #[test]
    fn numeric_inversion_matches_closed_inverse() {
        struct Numeric(OscillatorEnergy);
        impl EnergyFunction for Numeric {
            fn exponent(&self) -> f64 {
                2.0
            }
            fn energy(&self, lambda: f64, l: f64, n: f64) -> Result<f64> {
                self.0.energy(lambda, l, n)
            }
        }
        let closed = OscillatorEnergy { m: 1.0, hbar: 1.0 };
        let a = dual_energy(&closed, -1.0, 1.5, 1.5, 0.5, 1.3).unwrap();
        let b = dual_energy(&Numeric(closed), -1.0, 1.5, 1.5, 0.5, 1.3).unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs());
    }

    #[test]
    fn identity_transfer() {
        let osc = OscillatorEnergy { m: 1.0, hbar: 1.0 };
        let e_b = dual_energy(&osc, -2.5, 1.0, 0.5, 1.0, 1.0).unwrap();
        let lambda_a = osc.coupling_for(2.5, 1.0, 0.5).unwrap().unwrap();
        assert!((e_b + lambda_a).abs() < 1e-15);
    }

    #[test]
    fn wkb_backed_energy_function() {
        let f = WkbEnergy { a: 2.0, m: 1.0, hbar: 1.0, dim: 3 };
        let e = dual_energy(&f, -1.0, 0.5, 0.5, 0.5, 1.0).unwrap();
        assert!((e + 0.5).abs() < 1e-8);
    }

    #[test]
    fn symmetric_form() {
        let reg = SharedFunctionRegistry::with_coulomb_hooke(1.0, 1.0);
        let coul = symmetric_energy_form(&reg, -1.0, -1.0, 0.5, 1.5).unwrap();
        assert!((coul + 0.5 / 4.0).abs() < 1e-14);
        // b = 2, λ = ω²/2 with ω = 1: ħω(2N + L).
        let osc = symmetric_energy_form(&reg, 2.0, 0.5, 1.0, 0.5).unwrap();
        assert!((osc - 2.0).abs() < 1e-14);
        assert!(matches!(
            symmetric_energy_form(&reg, 1.0, 1.0, 0.0, 0.5),
            Err(DualError::MissingF { .. })
        ));
    }

    #[test]
    fn classical_energies_from_action() {
        let j = coulomb_action(-0.3, 0.7);
        assert!((kepler_energy_from_action(j, 0.7, 1.0, -1.0, 1.0) + 0.3).abs() < 1e-14);
        let j = hooke_action(3.0, 1.5, 0.5);
        assert!((hooke_energy_from_action(j, 0.5, 1.5, 1.0) - 3.0).abs() < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn coulomb_action_matches_closed_form(x in 0.02f64..0.98, l in 0.0f64..2.0) {
            // Bound window is -1/(2L²) < E < 0.
            let e = -x / (2.0 * l.max(0.5).powi(2));
            let j = action_j(&coulomb(l), e).unwrap();
            let exact = coulomb_action(e, l);
            prop_assert!((j - exact).abs() <= 1e-9 * exact.max(1.0));
        }

        #[test]
        fn hooke_action_matches_closed_form(omega in 0.3f64..3.0, l in 0.0f64..2.0, x in 1.05f64..10.0) {
            let e = x * omega * l.max(0.1);
            let j = action_j(&hooke(omega, l), e).unwrap();
            let exact = hooke_action(e, omega, l);
            prop_assert!((j - exact).abs() <= 1e-9 * exact.max(1.0));
        }

        #[test]
        fn action_invariance(x in 0.02f64..0.98, l in 0.1f64..2.0, c in 0.2f64..3.0) {
            let e_a = -x / (2.0 * l * l);
            let a = coulomb(l).with_energy(e_a);
            let map = crate::duality::DualityMap::class_ii(-1.0, c).unwrap();
            let b = a.map_to_dual(&map).unwrap();
            let (e_b, lambda_b) = exchange_energy_coupling(e_a, -1.0, -1.0, 2.0, c).unwrap();
            prop_assert!((b.energy.unwrap() - e_b).abs() <= 1e-14 * e_b.abs());
            prop_assert!((b.potential.coupling(2.0) - lambda_b).abs() <= 1e-14 * lambda_b.abs());
            let ja = action_j(&a, e_a).unwrap();
            let jb = action_j(&b, e_b).unwrap();
            prop_assert!((ja - jb).abs() <= 1e-8 * ja);
        }

        #[test]
        fn action_monotone(x1 in 0.02f64..0.98, x2 in 0.02f64..0.98, l in 0.1f64..2.0) {
            prop_assume!(x1 - x2 > 1e-3);
            let (e1, e2) = (-x1 / (2.0 * l * l), -x2 / (2.0 * l * l));
            let sys = coulomb(l);
            prop_assert!(action_j(&sys, e1).unwrap() < action_j(&sys, e2).unwrap());
        }
    }
}
