//! Couplings, momenta, dispersions and the pair potential of the two-boson
//! lattice model on Z², together with the essential band of the fiber
//! operator at fixed total quasimomentum.

use crate::error::{Error, Result};
use crate::Scalar;

/// Interaction magnitudes in hopping-energy units: on-site (`gamma`),
/// nearest-neighbour (`lambda`) and next-nearest-neighbour (`mu`).
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct CouplingParams<T> {
    pub gamma: T,
    pub lambda: T,
    pub mu: T,
}

impl<T: Scalar> CouplingParams<T> {
    pub fn new(gamma: T, lambda: T, mu: T) -> Result<Self> {
        if !(gamma.is_finite() && lambda.is_finite() && mu.is_finite()) {
            return Err(Error::NonFinite { what: "coupling constant" });
        }
        Ok(Self { gamma, lambda, mu })
    }

    pub fn zero() -> Self {
        Self { gamma: T::zero(), lambda: T::zero(), mu: T::zero() }
    }

    /// Same `lambda`, `mu` with the on-site term switched off.
    pub fn without_onsite(self) -> Self {
        Self { gamma: T::zero(), ..self }
    }
}

/// Reduces an angle modulo 2π into `[-π, π)`.
pub fn reduce_angle<T: Scalar>(x: T) -> T {
    let pi = T::PI();
    let two_pi = pi + pi;
    let mut r = x - two_pi * ((x + pi) / two_pi).floor();
    if r >= pi {
        r -= two_pi;
    }
    if r < -pi {
        r = -pi;
    }
    r
}

/// Point of the 2-torus, components in `[-π, π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusPoint<T> {
    pub p1: T,
    pub p2: T,
}

impl<T: Scalar> TorusPoint<T> {
    pub fn new(p1: T, p2: T) -> Self {
        Self { p1: reduce_angle(p1), p2: reduce_angle(p2) }
    }

    pub fn negated(self) -> Self {
        Self::new(-self.p1, -self.p2)
    }

    pub fn shift(self, d1: T, d2: T) -> Self {
        Self::new(self.p1 + d1, self.p2 + d2)
    }
}

/// Total quasimomentum K of the pair; same reduction as [`TorusPoint`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quasimomentum<T> {
    pub k1: T,
    pub k2: T,
}

impl<T: Scalar> Quasimomentum<T> {
    pub fn new(k1: T, k2: T) -> Self {
        Self { k1: reduce_angle(k1), k2: reduce_angle(k2) }
    }

    pub fn zero() -> Self {
        Self { k1: T::zero(), k2: T::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.k1 == T::zero() && self.k2 == T::zero()
    }

    /// `(cos(K1/2), cos(K2/2))`, both non-negative on `[-π, π)`.
    ///
    /// The boundary point `-π` maps to an exact zero so that the band at
    /// `K = (π, π)` is exactly degenerate.
    pub fn half_cosines(&self) -> (T, T) {
        (half_cosine(self.k1), half_cosine(self.k2))
    }
}

fn half_cosine<T: Scalar>(k: T) -> T {
    if k == -T::PI() {
        T::zero()
    } else {
        (k / T::lit(2.0)).cos()
    }
}

/// Relative lattice coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub x1: i64,
    pub x2: i64,
}

impl LatticeVector {
    pub const fn new(x1: i64, x2: i64) -> Self {
        Self { x1, x2 }
    }

    /// ℓ¹ norm `|x1| + |x2|`.
    pub fn norm(&self) -> u64 {
        self.x1.unsigned_abs() + self.x2.unsigned_abs()
    }
}

/// Essential spectrum `[e_min, e_max]` of the fiber operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EssentialBand<T> {
    pub e_min: T,
    pub e_max: T,
}

impl<T: Scalar> EssentialBand<T> {
    pub fn width(&self) -> T {
        self.e_max - self.e_min
    }

    pub fn is_degenerate(&self) -> bool {
        self.width() <= T::lit(1e-12)
    }

    pub fn contains(&self, z: T) -> bool {
        z >= self.e_min && z <= self.e_max
    }
}

/// Single-boson dispersion `Σᵢ (1 - cos pᵢ)`.
pub fn single_dispersion<T: Scalar>(p: TorusPoint<T>) -> T {
    (T::one() - p.p1.cos()) + (T::one() - p.p2.cos())
}

/// Relative-motion kinetic energy at total quasimomentum `k`:
/// `2 Σᵢ (1 - cos(Kᵢ/2) cos pᵢ)`.
pub fn pair_dispersion<T: Scalar>(k: Quasimomentum<T>, p: TorusPoint<T>) -> T {
    let (b1, b2) = k.half_cosines();
    pair_dispersion_cos(b1, b2, p.p1.cos(), p.p2.cos())
}

/// [`pair_dispersion`] from precomputed half-cosines and momentum cosines.
#[inline]
pub(crate) fn pair_dispersion_cos<T: Scalar>(b1: T, b2: T, c1: T, c2: T) -> T {
    let two = T::lit(2.0);
    two * ((T::one() - b1 * c1) + (T::one() - b2 * c2))
}

pub fn essential_band<T: Scalar>(k: Quasimomentum<T>) -> EssentialBand<T> {
    let (b1, b2) = k.half_cosines();
    let two = T::lit(2.0);
    EssentialBand {
        e_min: two * ((T::one() - b1) + (T::one() - b2)),
        e_max: two * ((T::one() + b1) + (T::one() + b2)),
    }
}

/// Position-space pair potential: `γ` on site, `λ/2` at ℓ¹ distance one,
/// `μ/2` at ℓ¹ distance two (diagonals included), zero beyond.
pub fn potential_position<T: Scalar>(x: LatticeVector, c: &CouplingParams<T>) -> T {
    let half = T::lit(0.5);
    match x.norm() {
        0 => c.gamma,
        1 => half * c.lambda,
        2 => half * c.mu,
        _ => T::zero(),
    }
}

/// The 13 sites with ℓ¹ norm at most two, where the potential can be nonzero.
pub fn potential_support() -> impl Iterator<Item = LatticeVector> {
    (-2i64..=2)
        .flat_map(|a| (-2i64..=2).map(move |b| LatticeVector::new(a, b)))
        .filter(|x| x.norm() <= 2)
}

/// Momentum-space potential
/// `γ + λ Σ cos pᵢ + μ Σ cos 2pᵢ + 2μ cos p1 cos p2`.
pub fn potential_momentum<T: Scalar>(p: TorusPoint<T>, c: &CouplingParams<T>) -> T {
    let two = T::lit(2.0);
    let (c1, c2) = (p.p1.cos(), p.p2.cos());
    c.gamma
        + c.lambda * (c1 + c2)
        + c.mu * ((two * p.p1).cos() + (two * p.p2).cos())
        + two * c.mu * c1 * c2
}

/// Hopping kernel of the free two-particle Hamiltonian: 2 on site,
/// −1/2 to axis neighbours.
pub fn hopping_coefficient<T: Scalar>(s: LatticeVector) -> T {
    match s.norm() {
        0 => T::lit(2.0),
        1 => T::lit(-0.5),
        _ => T::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn tp(a: f64, b: f64) -> TorusPoint<f64> {
        TorusPoint::new(a, b)
    }

    #[test]
    fn reduction_lands_in_half_open_interval() {
        assert_eq!(reduce_angle(PI), -PI);
        assert_eq!(reduce_angle(-PI), -PI);
        assert_eq!(reduce_angle(0.0_f64), 0.0);
        assert!((reduce_angle(3.0 * PI + 0.25) - (-PI + 0.25)).abs() < 1e-12);
        assert!((reduce_angle(-7.0_f64) - (-7.0 + 2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn single_dispersion_extremes() {
        assert_eq!(single_dispersion(tp(0.0, 0.0)), 0.0);
        assert!((single_dispersion(tp(PI, PI)) - 4.0).abs() < 1e-15);
        assert!((single_dispersion(tp(PI, 0.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn pair_dispersion_examples() {
        let k0 = Quasimomentum::zero();
        assert_eq!(pair_dispersion(k0, tp(0.0, 0.0)), 0.0);
        assert!((pair_dispersion(k0, tp(PI, PI)) - 8.0).abs() < 1e-15);
        let kpp = Quasimomentum::new(PI, PI);
        for &(a, b) in &[(0.0, 0.0), (1.0, -2.0), (PI, 0.3)] {
            assert_eq!(pair_dispersion(kpp, tp(a, b)), 4.0);
        }
    }

    #[test]
    fn essential_band_examples() {
        let b = essential_band(Quasimomentum::<f64>::zero());
        assert_eq!((b.e_min, b.e_max), (0.0, 8.0));
        let b = essential_band(Quasimomentum::new(PI, PI));
        assert_eq!((b.e_min, b.e_max), (4.0, 4.0));
        assert!(b.is_degenerate());
        let b = essential_band(Quasimomentum::new(PI, 0.0));
        assert_eq!((b.e_min, b.e_max), (2.0, 6.0));
    }

    #[test]
    fn position_potential_table() {
        let c = CouplingParams::new(3.0, 5.0, 7.0).unwrap();
        assert_eq!(potential_position(LatticeVector::new(0, 0), &c), 3.0);
        assert_eq!(potential_position(LatticeVector::new(0, -1), &c), 2.5);
        assert_eq!(potential_position(LatticeVector::new(1, 1), &c), 3.5);
        assert_eq!(potential_position(LatticeVector::new(-2, 0), &c), 3.5);
        assert_eq!(potential_position(LatticeVector::new(3, 0), &c), 0.0);
        assert_eq!(potential_position(LatticeVector::new(2, 1), &c), 0.0);
        assert_eq!(potential_support().count(), 13);
    }

    #[test]
    fn momentum_potential_corners() {
        let c = CouplingParams::new(1.5, -2.0, 0.75).unwrap();
        let at0 = potential_momentum(tp(0.0, 0.0), &c);
        assert!((at0 - (1.5 - 4.0 + 3.0)).abs() < 1e-14);
        let atpi = potential_momentum(tp(PI, PI), &c);
        assert!((atpi - (1.5 + 4.0 + 3.0)).abs() < 1e-14);
    }

    #[test]
    fn hopping_table() {
        assert_eq!(hopping_coefficient::<f64>(LatticeVector::new(0, 0)), 2.0);
        assert_eq!(hopping_coefficient::<f64>(LatticeVector::new(0, -1)), -0.5);
        assert_eq!(hopping_coefficient::<f64>(LatticeVector::new(1, 1)), 0.0);
    }

    #[test]
    fn rejects_non_finite_couplings() {
        assert!(CouplingParams::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(CouplingParams::new(0.0, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let b = essential_band(Quasimomentum::<f32>::new(std::f32::consts::PI, 0.0));
        assert_eq!((b.e_min, b.e_max), (2.0, 6.0));
    }

    fn angle() -> impl Strategy<Value = f64> {
        -PI..PI
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn pair_dispersion_stays_in_band(k1 in angle(), k2 in angle(), p1 in angle(), p2 in angle()) {
            let k = Quasimomentum::new(k1, k2);
            let e = pair_dispersion(k, tp(p1, p2));
            let b = essential_band(k);
            prop_assert!(e >= b.e_min - 1e-13 && e <= b.e_max + 1e-13);
        }

        #[test]
        fn reflection_at_zero_momentum(p1 in angle(), p2 in angle()) {
            let k = Quasimomentum::zero();
            let p = tp(p1, p2);
            let e = pair_dispersion(k, p);
            let e_shift = pair_dispersion(k, p.shift(PI, PI));
            prop_assert!((e_shift - (8.0 - e)).abs() < 1e-12);
        }

        #[test]
        fn evenness(k1 in angle(), k2 in angle(), p1 in angle(), p2 in angle(),
                    g in -5.0..5.0f64, l in -5.0..5.0f64, m in -5.0..5.0f64) {
            let k = Quasimomentum::new(k1, k2);
            let p = tp(p1, p2);
            let c = CouplingParams::new(g, l, m).unwrap();
            prop_assert!((pair_dispersion(k, p) - pair_dispersion(k, p.negated())).abs() < 1e-12);
            prop_assert!((potential_momentum(p, &c) - potential_momentum(p.negated(), &c)).abs() < 1e-12);
        }

        // Finite Fourier sum over the 13-site support reproduces the momentum form.
        #[test]
        fn fourier_pair(p1 in angle(), p2 in angle(),
                        g in -10.0..10.0f64, l in -10.0..10.0f64, m in -10.0..10.0f64) {
            let c = CouplingParams::new(g, l, m).unwrap();
            let (mut re, mut im) = (0.0, 0.0);
            for x in potential_support() {
                let phase = p1 * x.x1 as f64 + p2 * x.x2 as f64;
                let v = potential_position(x, &c);
                re += v * phase.cos();
                im += v * phase.sin();
            }
            let direct = potential_momentum(tp(p1, p2), &c);
            prop_assert!((re - direct).abs() < 1e-12);
            prop_assert!(im.abs() < 1e-12);
        }
    }
}
