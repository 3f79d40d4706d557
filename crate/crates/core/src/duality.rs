//! Exponent algebra of power-law duality.
//!
//! Two radial systems with potentials `λ_a r^a` and `λ_b ρ^b` are dual when
//! `(a+2)(b+2) = 4`; the map `r = C ρ^η` with `η = 2/(a+2)` exchanges energy and
//! coupling. Self-dual pairs (`a = b`) are reached with `η = 1`.

use crate::error::{DualError, Result};

/// Tolerance for every purely algebraic identity in this module.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// One term `λ r^a` of a power-law potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm {
    pub lambda: f64,
    pub a: f64,
}

impl PowerTerm {
    pub fn new(lambda: f64, a: f64) -> Self {
        Self { lambda, a }
    }

    pub fn eval(&self, r: f64) -> f64 {
        if self.a == 0.0 {
            self.lambda
        } else {
            self.lambda * r.powf(self.a)
        }
    }
}

/// A finite sum of power terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PowerPotential {
    pub terms: Vec<PowerTerm>,
}

impl PowerPotential {
    pub fn new(terms: Vec<PowerTerm>) -> Self {
        Self { terms }
    }

    pub fn single(lambda: f64, a: f64) -> Self {
        Self::new(vec![PowerTerm::new(lambda, a)])
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(r)).sum()
    }

    /// Coupling attached to exponent `a`, zero if absent.
    pub fn coupling(&self, a: f64) -> f64 {
        self.terms
            .iter()
            .filter(|t| (t.a - a).abs() <= ALGEBRA_TOL)
            .map(|t| t.lambda)
            .sum()
    }
}

/// Which family a map belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    ClassI,
    ClassII,
}

/// Outcome of [`classify_pair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    ClassI,
    ClassII,
    /// `(0,0)` and `(-4,-4)`: self-dual and on the duality hyperbola.
    Both,
    NotDual,
}

impl PairClass {
    pub fn label(&self) -> &'static str {
        match self {
            PairClass::ClassI => "I",
            PairClass::ClassII => "II",
            PairClass::Both => "I+II",
            PairClass::NotDual => "none",
        }
    }
}

/// The coordinate map `r = C ρ^η` together with the exponents it connects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityMap {
    pub eta: f64,
    pub c: f64,
    pub class: MapClass,
    /// Index of the term traded for the energy in a multi-term potential.
    pub pivot: usize,
    pub source_exponent: f64,
    pub target_exponent: f64,
}

impl DualityMap {
    /// `η = 1`, `C = 1`.
    pub fn identity() -> Self {
        Self {
            eta: 1.0,
            c: 1.0,
            class: MapClass::ClassI,
            pivot: 0,
            source_exponent: f64::NAN,
            target_exponent: f64::NAN,
        }
    }

    /// Class I scaling `r = C ρ` for the self-dual exponent `a`.
    pub fn class_i(a: f64, c: f64) -> Result<Self> {
        check_c(c)?;
        Ok(Self {
            eta: 1.0,
            c,
            class: MapClass::ClassI,
            pivot: 0,
            source_exponent: a,
            target_exponent: a,
        })
    }

    /// Proper dual map pivoting on exponent `a`.
    pub fn class_ii(a: f64, c: f64) -> Result<Self> {
        check_c(c)?;
        let (b, eta) = partner_exponent(a)?;
        Ok(Self {
            eta,
            c,
            class: MapClass::ClassII,
            pivot: 0,
            source_exponent: a,
            target_exponent: b,
        })
    }

    pub fn with_pivot(mut self, pivot: usize) -> Self {
        self.pivot = pivot;
        self
    }

    /// `η_b = 1/η`, `C_b = C^{-1/η}`.
    pub fn inverse(&self) -> Self {
        Self {
            eta: 1.0 / self.eta,
            c: self.c.powf(-1.0 / self.eta),
            class: self.class,
            pivot: self.pivot,
            source_exponent: self.target_exponent,
            target_exponent: self.source_exponent,
        }
    }

    /// `f(ρ) = C ρ^η`.
    pub fn coordinate(&self, rho: f64) -> f64 {
        self.c * rho.powf(self.eta)
    }

    /// `f'(ρ) = C η ρ^{η-1}`.
    pub fn jacobian(&self, rho: f64) -> f64 {
        self.c * self.eta * rho.powf(self.eta - 1.0)
    }

    /// `h(ρ) = √f'(ρ)`, the wavefunction rescaling factor.
    pub fn h(&self, rho: f64) -> f64 {
        self.jacobian(rho).abs().sqrt()
    }

    /// Checks that `η` is the Class II exponent attached to the pivot.
    pub fn check_pairing(&self) -> Result<()> {
        match self.class {
            MapClass::ClassI if (self.eta - 1.0).abs() <= ALGEBRA_TOL => Ok(()),
            MapClass::ClassI => Err(DualError::MapIncompatible(format!(
                "class I map with eta={}",
                self.eta
            ))),
            MapClass::ClassII => {
                let a = self.source_exponent;
                if (a + 2.0).abs() <= ALGEBRA_TOL {
                    return Err(DualError::DegenerateExponent { a });
                }
                let expected = 2.0 / (a + 2.0);
                if (self.eta - expected).abs() > ALGEBRA_TOL * expected.abs().max(1.0) {
                    Err(DualError::MapIncompatible(format!(
                        "eta={} but pivot exponent {a} requires {expected}",
                        self.eta
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// One side of a dual pair: a radial problem with continuous angular parameter `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSystem {
    pub m: f64,
    pub hbar: f64,
    pub l: f64,
    pub dim: u32,
    pub potential: PowerPotential,
    pub energy: Option<f64>,
}

impl RadialSystem {
    pub fn new(m: f64, hbar: f64, l: f64, dim: u32, potential: PowerPotential) -> Result<Self> {
        if !(m > 0.0) || !(hbar > 0.0) || !(l >= 0.0) || dim < 2 {
            return Err(DualError::InvalidParameter(format!(
                "need m > 0, hbar > 0, L >= 0, D >= 2; got m={m}, hbar={hbar}, L={l}, D={dim}"
            )));
        }
        Ok(Self {
            m,
            hbar,
            l,
            dim,
            potential,
            energy: None,
        })
    }

    /// System with the Langer value `L = ℓ + (D-2)/2`.
    pub fn quantized(m: f64, hbar: f64, ell: u32, dim: u32, potential: PowerPotential) -> Result<Self> {
        Self::new(m, hbar, langer_l(ell, dim), dim, potential)
    }

    pub fn with_energy(mut self, e: f64) -> Self {
        self.energy = Some(e);
        self
    }

    pub fn with_l(mut self, l: f64) -> Self {
        self.l = l;
        self
    }

    /// `V(r) + ħ²L²/(2mr²)`, the Langer-modified effective potential.
    pub fn langer_potential(&self, r: f64) -> f64 {
        self.potential.eval(r) + self.hbar * self.hbar * self.l * self.l / (2.0 * self.m * r * r)
    }

    /// `V(r) + ħ²(L²-1/4)/(2mr²)`, the potential seen by `u = r^{(D-1)/2} R`.
    pub fn schrodinger_potential(&self, r: f64) -> f64 {
        self.potential.eval(r)
            + self.hbar * self.hbar * (self.l * self.l - 0.25) / (2.0 * self.m * r * r)
    }

    /// Image under a Class II map pivoting on `map.pivot`; requires an energy.
    pub fn map_to_dual(&self, map: &DualityMap) -> Result<Self> {
        let e_a = self.energy.ok_or_else(|| {
            DualError::InvalidParameter("mapping a system requires its energy".into())
        })?;
        let image = map_multiterm(&self.potential, e_a, map.pivot, map.c)?;
        if (image.eta - map.eta).abs() > ALGEBRA_TOL * image.eta.abs().max(1.0) {
            return Err(DualError::MapIncompatible(format!(
                "map has eta={} but the pivot term requires {}",
                map.eta, image.eta
            )));
        }
        Ok(Self {
            m: self.m,
            hbar: self.hbar,
            l: map_angular_momentum(self.l, image.eta),
            dim: self.dim,
            potential: image.potential,
            energy: Some(image.e_b),
        })
    }
}

fn check_c(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(DualError::InvalidParameter(format!("C must be positive, got {c}")))
    }
}

/// `b = -2a/(a+2)`, `η = 2/(a+2)`.
pub fn partner_exponent(a: f64) -> Result<(f64, f64)> {
    if a == -2.0 || !a.is_finite() {
        return Err(DualError::DegenerateExponent { a });
    }
    let d = a + 2.0;
    Ok((-2.0 * a / d, 2.0 / d))
}

/// Energy-coupling exchange: `λ_b = -η²C²E_a`, `E_b = -η²C^{a+2}λ_a`.
pub fn exchange_energy_coupling(
    e_a: f64,
    lambda_a: f64,
    a: f64,
    eta: f64,
    c: f64,
) -> Result<(f64, f64)> {
    check_c(c)?;
    if eta == 0.0 {
        return Err(DualError::InvalidParameter("eta must be nonzero".into()));
    }
    let eta2 = eta * eta;
    let lambda_b = -eta2 * c * c * e_a;
    let e_b = -eta2 * c.powf(a + 2.0) * lambda_a;
    Ok((e_b, lambda_b))
}

/// Signs of `(E, λ)` before and after the exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignPattern {
    /// `E_a = 0`: the image is force free.
    ZeroEnergy,
    /// `(+,-) -> (+,-)`
    PosNeg,
    /// `(-,-) -> (+,+)`
    NegNeg,
    /// `(+,+) -> (-,-)`
    PosPos,
    /// `(-,+) -> (-,+)`
    NegPos,
}

impl SignPattern {
    pub fn index(&self) -> u8 {
        match self {
            SignPattern::ZeroEnergy => 0,
            SignPattern::PosNeg => 1,
            SignPattern::NegNeg => 2,
            SignPattern::PosPos => 3,
            SignPattern::NegPos => 4,
        }
    }

    /// Signs `(sgn E_b, sgn λ_b)` predicted for the image.
    pub fn image_signs(&self) -> (i8, i8) {
        match self {
            SignPattern::ZeroEnergy => (0, 0),
            SignPattern::PosNeg => (1, -1),
            SignPattern::NegNeg => (1, 1),
            SignPattern::PosPos => (-1, -1),
            SignPattern::NegPos => (-1, 1),
        }
    }
}

/// Classify `(E_a, λ_a)` into one of the five mapping patterns.
pub fn sign_pattern(e_a: f64, lambda_a: f64) -> Result<SignPattern> {
    if lambda_a == 0.0 || !lambda_a.is_finite() || !e_a.is_finite() {
        return Err(DualError::UnsupportedSignPattern(format!(
            "E={e_a}, lambda={lambda_a}"
        )));
    }
    Ok(match (e_a.partial_cmp(&0.0), lambda_a > 0.0) {
        (Some(std::cmp::Ordering::Equal), _) => SignPattern::ZeroEnergy,
        (Some(std::cmp::Ordering::Greater), false) => SignPattern::PosNeg,
        (Some(std::cmp::Ordering::Less), false) => SignPattern::NegNeg,
        (Some(std::cmp::Ordering::Greater), true) => SignPattern::PosPos,
        _ => SignPattern::NegPos,
    })
}

/// `L_b = |η| L_a`.
pub fn map_angular_momentum(l_a: f64, eta: f64) -> f64 {
    eta.abs() * l_a
}

/// Langer value `L = ℓ + (D-2)/2`.
pub fn langer_l(ell: u32, dim: u32) -> f64 {
    ell as f64 + (dim as f64 - 2.0) / 2.0
}

/// Image of a multi-term potential under the map pivoting on term `pivot`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiTermImage {
    pub eta: f64,
    pub e_b: f64,
    /// Same ordering as the source; the pivot slot carries `λ_{b_k} = -C²η²E_a`.
    pub potential: PowerPotential,
}

pub fn map_multiterm(
    potential: &PowerPotential,
    e_a: f64,
    pivot: usize,
    c: f64,
) -> Result<MultiTermImage> {
    check_c(c)?;
    let terms = &potential.terms;
    let pk = terms.get(pivot).ok_or_else(|| {
        DualError::InvalidParameter(format!("pivot {pivot} out of range ({} terms)", terms.len()))
    })?;
    for (i, t) in terms.iter().enumerate() {
        for u in &terms[i + 1..] {
            if t.a == u.a {
                return Err(DualError::InvalidParameter(format!(
                    "repeated exponent {}",
                    t.a
                )));
            }
        }
    }
    let ak = pk.a;
    let (bk, eta) = partner_exponent(ak)?;
    let eta2 = eta * eta;
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        if i == pivot {
            out.push(PowerTerm::new(-c * c * eta2 * e_a, bk));
        } else {
            let bi = 2.0 * (t.a - ak) / (ak + 2.0);
            out.push(PowerTerm::new(eta2 * c.powf(t.a + 2.0) * t.lambda, bi));
        }
    }
    Ok(MultiTermImage {
        eta,
        e_b: -eta2 * c.powf(ak + 2.0) * pk.lambda,
        potential: PowerPotential::new(out),
    })
}

/// Self-dual, proper dual, both, or unrelated.
pub fn classify_pair(a: f64, b: f64) -> PairClass {
    let self_dual = a == b;
    let on_hyperbola = a != -2.0 && ((a + 2.0) * (b + 2.0) - 4.0).abs() <= ALGEBRA_TOL;
    match (self_dual, on_hyperbola) {
        (true, true) => PairClass::Both,
        (true, false) => PairClass::ClassI,
        (false, true) => PairClass::ClassII,
        (false, false) => PairClass::NotDual,
    }
}

/// Coupling under inversion: `λ_b = (-1)^a λ_a`, defined for odd integer `a` only.
pub fn inversion_coupling(a: f64, lambda_a: f64) -> Result<f64> {
    let odd_integer = a.fract() == 0.0 && a.is_finite() && (a.abs() % 2.0) == 1.0;
    if odd_integer {
        Ok(-lambda_a)
    } else {
        Err(DualError::NonIntegerInversion { a })
    }
}

/// `C = mω/(2ħκ)`, the magnitude that makes the Coulomb and Hooke problems line up.
#[allow(non_snake_case)]
pub fn C_for_hooke(kappa: f64, omega: f64, m: f64, hbar: f64) -> f64 {
    m * omega / (2.0 * hbar * kappa)
}

/// Image of an exponent pair under the partner map, applied elementwise.
pub fn grand_dual(pair: (f64, f64)) -> Result<(f64, f64)> {
    Ok((partner_exponent(pair.0)?.0, partner_exponent(pair.1)?.0))
}

/// One point of the dual-pair chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairPoint {
    pub a: f64,
    pub b: f64,
    pub eta: f64,
    pub class: PairClass,
}

/// Sample the duality hyperbola on a uniform grid of `a`, skipping `a = -2`.
pub fn enumerate_pairs(a_min: f64, a_max: f64, n: usize) -> Vec<PairPoint> {
    let n = n.max(2);
    (0..n)
        .filter_map(|i| {
            let a = a_min + (a_max - a_min) * i as f64 / (n - 1) as f64;
            partner_exponent(a).ok().map(|(b, eta)| PairPoint {
                a,
                b,
                eta,
                class: classify_pair(a, b),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn named_partners() {
        assert_eq!(partner_exponent(-1.0).unwrap(), (2.0, 2.0));
        assert_eq!(partner_exponent(0.0).unwrap(), (0.0, 1.0));
        assert_eq!(partner_exponent(-3.0).unwrap(), (-6.0, -2.0));
        assert_eq!(partner_exponent(-4.0).unwrap(), (-4.0, -1.0));
        assert!(matches!(
            partner_exponent(-2.0),
            Err(DualError::DegenerateExponent { .. })
        ));
    }

    #[test]
    fn coulomb_ground_state_exchange() {
        let (e_b, l_b) = exchange_energy_coupling(-0.5, -1.0, -1.0, 2.0, 0.5).unwrap();
        assert!((e_b - 2.0).abs() < 1e-15);
        assert!((l_b - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_energy_maps_to_free_motion() {
        let (e_b, l_b) = exchange_energy_coupling(0.0, 1.0, 1.0, 2.0 / 3.0, 1.0).unwrap();
        assert!((e_b + 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(l_b, 0.0);
    }

    #[test]
    fn angular_momentum_scaling() {
        assert_eq!(map_angular_momentum(0.5, 2.0), 1.0);
        assert_eq!(map_angular_momentum(0.0, -7.0), 0.0);
        assert!((map_angular_momentum(1.5, 4.0 / 3.0) - 2.0).abs() < 1e-15);
        assert_eq!(map_angular_momentum(1.0, -2.0), 2.0);
    }

    #[test]
    fn multiterm_confinement_exponents() {
        let pot = PowerPotential::new(vec![PowerTerm::new(-4.5, -0.5), PowerTerm::new(1.0, 1.0)]);
        let img = map_multiterm(&pot, 0.0, 0, 1.3).unwrap();
        assert!((img.eta - 4.0 / 3.0).abs() < 1e-15);
        assert!((img.potential.terms[0].a - 2.0 / 3.0).abs() < 1e-15);
        assert!((img.potential.terms[1].a - 2.0).abs() < 1e-15);
    }

    #[test]
    fn multiterm_oscillator_with_constant() {
        let pot = PowerPotential::new(vec![PowerTerm::new(1.0, 2.0), PowerTerm::new(1.0, 0.0)]);
        let img = map_multiterm(&pot, 0.7, 0, 0.9).unwrap();
        assert_eq!(img.eta, 0.5);
        assert_eq!(img.potential.terms[0].a, -1.0);
        assert_eq!(img.potential.terms[1].a, -1.0);
    }

    #[test]
    fn single_term_multiterm_matches_exchange() {
        let pot = PowerPotential::single(-1.3, -1.0);
        let img = map_multiterm(&pot, -0.4, 0, 0.7).unwrap();
        let (e_b, l_b) = exchange_energy_coupling(-0.4, -1.3, -1.0, 2.0, 0.7).unwrap();
        assert_eq!(img.e_b, e_b);
        assert_eq!(img.potential.terms[0].lambda, l_b);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_pair(-1.0, 2.0), PairClass::ClassII);
        assert_eq!(classify_pair(3.0, 3.0), PairClass::ClassI);
        assert_eq!(classify_pair(-1.0, 3.0), PairClass::NotDual);
        assert_eq!(classify_pair(0.0, 0.0), PairClass::Both);
        assert_eq!(classify_pair(-4.0, -4.0), PairClass::Both);
    }

    #[test]
    fn inversion_needs_odd_integer() {
        assert_eq!(inversion_coupling(-1.0, 2.0).unwrap(), -2.0);
        assert_eq!(inversion_coupling(3.0, 2.0).unwrap(), -2.0);
        assert!(inversion_coupling(0.5, 1.0).is_err());
        assert!(inversion_coupling(2.0, 1.0).is_err());
    }

    #[test]
    fn grand_dual_chain() {
        let image = grand_dual((-1.0, -1.0)).unwrap();
        assert_eq!(image, (2.0, 2.0));
        assert_eq!(classify_pair(image.0, image.1), PairClass::ClassI);
        assert_eq!(grand_dual(image).unwrap(), (-1.0, -1.0));
    }

    #[test]
    fn hooke_magnitude() {
        assert_eq!(C_for_hooke(1.0, 1.0, 1.0, 1.0), 0.5);
    }

    proptest! {
        #[test]
        fn partner_is_involution(a in -10.0f64..10.0) {
            prop_assume!((a + 2.0).abs() > 1e-3);
            let (b, eta) = partner_exponent(a).unwrap();
            prop_assume!((b + 2.0).abs() > 1e-3);
            let (a2, eta_b) = partner_exponent(b).unwrap();
            prop_assert!((a2 - a).abs() <= 1e-12 * a.abs().max(1.0) * 10.0);
            prop_assert!((eta * eta_b - 1.0).abs() <= 1e-12);
            prop_assert!(((a + 2.0) * (b + 2.0) - 4.0).abs() <= 1e-12);
        }

        #[test]
        fn exchange_round_trip(
            a in -1.9f64..6.0,
            e in -5.0f64..5.0,
            lam in -5.0f64..5.0,
            c in 0.2f64..3.0,
            l in 0.0f64..4.0,
        ) {
            let map = DualityMap::class_ii(a, c).unwrap();
            let (e_b, l_b) = exchange_energy_coupling(e, lam, a, map.eta, c).unwrap();
            let inv = map.inverse();
            let (e2, lam2) = exchange_energy_coupling(e_b, l_b, inv.source_exponent, inv.eta, inv.c).unwrap();
            let scale = |x: f64| x.abs().max(1.0);
            prop_assert!((e2 - e).abs() <= 1e-12 * scale(e) * 10.0);
            prop_assert!((lam2 - lam).abs() <= 1e-12 * scale(lam) * 10.0);
            let l_b_val = map_angular_momentum(l, map.eta);
            prop_assert!((map_angular_momentum(l_b_val, inv.eta) - l).abs() <= 1e-12 * scale(l));
            let rho = 1.7;
            prop_assert!((inv.coordinate(map.coordinate(rho)) - rho).abs() <= 1e-12 * rho);
        }

        #[test]
        fn sign_patterns_hold(
            a in -1.9f64..6.0,
            e in prop_oneof![-5.0f64..-1e-3, 1e-3f64..5.0, Just(0.0)],
            lam in prop_oneof![-5.0f64..-1e-3, 1e-3f64..5.0],
            c in 0.2f64..3.0,
        ) {
            let (_, eta) = partner_exponent(a).unwrap();
            let (e_b, l_b) = exchange_energy_coupling(e, lam, a, eta, c).unwrap();
            let p = sign_pattern(e, lam).unwrap();
            let sg = |x: f64| if x > 0.0 { 1i8 } else if x < 0.0 { -1 } else { 0 };
            match p {
                SignPattern::ZeroEnergy => {
                    prop_assert_eq!(l_b, 0.0);
                    prop_assert_eq!(sg(e_b), -sg(lam));
                }
                _ => prop_assert_eq!((sg(e_b), sg(l_b)), p.image_signs()),
            }
        }

        #[test]
        fn multiterm_exponent_relation(
            ak in -1.9f64..6.0,
            others in proptest::collection::vec(-6.0f64..6.0, 1..4),
        ) {
            let mut terms = vec![PowerTerm::new(1.0, ak)];
            for (i, a) in others.iter().enumerate() {
                prop_assume!((a - ak).abs() > 1e-6);
                prop_assume!(others[..i].iter().all(|b| (b - a).abs() > 1e-6));
                terms.push(PowerTerm::new(0.5, *a));
            }
            let pot = PowerPotential::new(terms);
            let img = map_multiterm(&pot, 0.3, 0, 1.1).unwrap();
            let bk = img.potential.terms[0].a;
            for (t, u) in pot.terms.iter().zip(&img.potential.terms).skip(1) {
                let lhs = (t.a - ak) * (u.a - bk);
                let rhs = t.a * u.a;
                prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0) * 10.0);
            }
        }
    }
}
