//! Partition of the `(λ, μ)` plane by the band-edge threshold polynomials.
//!
//! `C⁺(λ, μ)` is the limit of the antisymmetric determinant at the upper
//! band edge and factorizes as `d·[(λ − λ*)(μ − μ*) − κ]`; `C⁻` is its mirror
//! `C⁺(−λ, −μ)`. Their zero sets are hyperbolas that cut the plane into the
//! components `C±_k` and `G_{αβ} = C⁻_α ∩ C⁺_β`.

use std::fmt;

use crate::quadrature::EdgeConstants;
use crate::Scalar;

/// Default half-width of the boundary strip `|C±| ≤ ε_b`.
pub const DEFAULT_EPS_B: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign<T: Scalar>(self) -> T {
        match self {
            Side::Plus => T::one(),
            Side::Minus => -T::one(),
        }
    }
}

/// Threshold curve `(λ − s·λ*)(μ − s·μ*) = κ`, `s = ±1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseCurve<T> {
    pub mu_star: T,
    pub lambda_star: T,
    pub kappa: T,
    pub side: Side,
}

impl<T: Scalar> PhaseCurve<T> {
    pub fn new(e: &EdgeConstants<T>, side: Side) -> Self {
        Self { mu_star: e.mu_star, lambda_star: e.lambda_star, kappa: e.kappa(), side }
    }

    /// `λ_side(μ)`, or `None` on the vertical asymptote.
    pub fn lambda_at(&self, mu: T) -> Option<T> {
        let s = self.side.sign::<T>();
        let gap = mu - s * self.mu_star;
        if gap == T::zero() {
            return None;
        }
        Some(self.kappa / gap + s * self.lambda_star)
    }
}

/// `C⁺(λ, μ) = (1 − λ e11)(1 − μ e22) − λμ e12²`.
pub fn c_plus<T: Scalar>(lambda: T, mu: T, e: &EdgeConstants<T>) -> T {
    (T::one() - lambda * e.e11) * (T::one() - mu * e.e22) - lambda * mu * e.e12 * e.e12
}

/// `C⁻(λ, μ) = C⁺(−λ, −μ)`.
pub fn c_minus<T: Scalar>(lambda: T, mu: T, e: &EdgeConstants<T>) -> T {
    c_plus(-lambda, -mu, e)
}

pub fn threshold<T: Scalar>(side: Side, lambda: T, mu: T, e: &EdgeConstants<T>) -> T {
    match side {
        Side::Plus => c_plus(lambda, mu, e),
        Side::Minus => c_minus(lambda, mu, e),
    }
}

/// Zero of `C^side(·, μ)`; `None` at `μ = ±μ*` where no solution exists.
pub fn lambda_curve<T: Scalar>(mu: T, side: Side, e: &EdgeConstants<T>) -> Option<T> {
    PhaseCurve::new(e, side).lambda_at(mu)
}

/// Number of antisymmetric bound states on one side of the band.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Count {
    Zero,
    One,
    Two,
    Boundary,
}

impl Count {
    pub fn value(self) -> Option<usize> {
        match self {
            Count::Zero => Some(0),
            Count::One => Some(1),
            Count::Two => Some(2),
            Count::Boundary => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("B"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegionLabel {
    pub k_minus: Count,
    pub k_plus: Count,
}

impl RegionLabel {
    pub fn is_boundary(&self) -> bool {
        self.k_minus == Count::Boundary || self.k_plus == Count::Boundary
    }

    /// `(α, β)` of the component `G_{αβ}`, if the point is off both curves.
    pub fn component(&self) -> Option<(usize, usize)> {
        Some((self.k_minus.value()?, self.k_plus.value()?))
    }

    pub fn name(&self) -> String {
        format!("G{}{}", self.k_minus, self.k_plus)
    }
}

fn side_count<T: Scalar>(c: T, beyond_asymptote: bool, eps_b: T) -> Count {
    if c < -eps_b {
        Count::One
    } else if c > eps_b {
        if beyond_asymptote {
            Count::Two
        } else {
            Count::Zero
        }
    } else {
        Count::Boundary
    }
}

pub fn classify<T: Scalar>(lambda: T, mu: T, e: &EdgeConstants<T>, eps_b: T) -> RegionLabel {
    RegionLabel {
        k_minus: side_count(c_minus(lambda, mu, e), mu < -e.mu_star, eps_b),
        k_plus: side_count(c_plus(lambda, mu, e), mu > e.mu_star, eps_b),
    }
}

/// Counts implied by a region label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    /// Exact `(below, above)` antisymmetric-sector counts at `K = 0`.
    pub antisymmetric_at_zero: (usize, usize),
    /// Lower bound on `(n₋, n₊)` of the full operator at every `K` and `γ`.
    pub lower_bound: (usize, usize),
}

pub fn predicted_counts(label: RegionLabel) -> Option<Prediction> {
    let ab = label.component()?;
    Some(Prediction { antisymmetric_at_zero: ab, lower_bound: ab })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn exact() -> EdgeConstants<f64> {
        let e11 = (4.0 - PI) / (2.0 * PI);
        EdgeConstants::from_limits(e11, 4.0 * e11 - 0.5, 16.0 * e11 - 2.0)
    }

    #[test]
    fn asymptotes() {
        let e = exact();
        assert!((e.lambda_star - 8.0).abs() < 1e-12);
        assert!((e.kappa() - 4.0).abs() < 1e-12);
        assert!((e.mu_star - 2.0 * (4.0 - PI) / (16.0 - 5.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn origin_is_g00() {
        let e = exact();
        assert_eq!(c_plus(0.0, 0.0, &e), 1.0);
        assert_eq!(c_minus(0.0, 0.0, &e), 1.0);
        let l = classify(0.0, 0.0, &e, DEFAULT_EPS_B);
        assert_eq!(l.component(), Some((0, 0)));
        assert_eq!(l.name(), "G00");
    }

    #[test]
    fn factorized_form() {
        let e = exact();
        for &(l, m) in &[(3.0, -2.0), (20.0, 8.0), (-11.0, 0.5), (8.0, 5.0)] {
            let f = e.d * ((l - e.lambda_star) * (m - e.mu_star) - e.kappa());
            assert!((c_plus(l, m, &e) - f).abs() < 1e-12);
        }
    }

    #[test]
    fn curve_branches() {
        let e = exact();
        let up = lambda_curve(e.mu_star + 1.0, Side::Plus, &e).unwrap();
        assert!((up - 12.0).abs() < 1e-9);
        assert!(c_plus(up, e.mu_star + 1.0, &e).abs() < 1e-9);
        assert_eq!(lambda_curve(e.mu_star, Side::Plus, &e), None);
        assert_eq!(lambda_curve(-e.mu_star, Side::Minus, &e), None);
        let down = lambda_curve(-e.mu_star - 1.0, Side::Minus, &e).unwrap();
        assert!((down + 12.0).abs() < 1e-9);
    }

    #[test]
    fn asymptote_line_is_one_state() {
        let e = exact();
        for l in [-100.0, -8.0, 0.0, 8.0, 1e3] {
            assert!((c_plus(l, e.mu_star, &e) + e.e12 * e.e12 / e.d).abs() < 1e-9);
            assert_eq!(classify(l, e.mu_star, &e, DEFAULT_EPS_B).k_plus, Count::One);
        }
    }

    #[test]
    fn deep_samples() {
        let e = exact();
        let eps = DEFAULT_EPS_B;
        assert_eq!(classify(20.0, 8.0, &e, eps).component(), Some((0, 2)));
        assert_eq!(classify(-20.0, -8.0, &e, eps).component(), Some((2, 0)));
        assert_eq!(classify(20.0, -20.0, &e, eps).component(), Some((1, 1)));
        assert_eq!(classify(0.0, 10.0, &e, eps).component(), Some((0, 1)));
        assert_eq!(classify(-20.0, 0.0, &e, eps).component(), Some((1, 0)));
    }

    #[test]
    fn boundary_and_prediction() {
        let e = exact();
        let m = e.mu_star + 1.0;
        let l = lambda_curve(m, Side::Plus, &e).unwrap();
        let label = classify(l, m, &e, DEFAULT_EPS_B);
        assert_eq!(label.k_plus, Count::Boundary);
        assert!(label.is_boundary());
        assert_eq!(predicted_counts(label), None);
        assert_eq!(label.name(), "G0B");
        let p = predicted_counts(classify(20.0, 8.0, &e, DEFAULT_EPS_B)).unwrap();
        assert_eq!(p.antisymmetric_at_zero, (0, 2));
    }

    proptest! {
        #[test]
        fn curve_lies_on_zero_set(mu in -50.0f64..50.0, plus in any::<bool>()) {
            let e = exact();
            let side = if plus { Side::Plus } else { Side::Minus };
            prop_assume!((mu - side.sign::<f64>() * e.mu_star).abs() > 1e-3);
            let l = lambda_curve(mu, side, &e).unwrap();
            let scale = 1.0 + (l * mu).abs() * e.d;
            prop_assert!(threshold(side, l, mu, &e).abs() < 1e-9 * scale);
        }

        #[test]
        fn mirror_swaps_labels(l in -40.0f64..40.0, m in -40.0f64..40.0) {
            let e = exact();
            prop_assert_eq!(c_minus(-l, -m, &e), c_plus(l, m, &e));
            let a = classify(l, m, &e, DEFAULT_EPS_B);
            let b = classify(-l, -m, &e, DEFAULT_EPS_B);
            prop_assert_eq!((a.k_minus, a.k_plus), (b.k_plus, b.k_minus));
        }

        #[test]
        fn no_double_two(l in -60.0f64..60.0, m in -60.0f64..60.0) {
            let e = exact();
            let c = classify(l, m, &e, DEFAULT_EPS_B);
            prop_assert!(!(c.k_minus == Count::Two && c.k_plus != Count::Zero));
            prop_assert!(!(c.k_plus == Count::Two && c.k_minus != Count::Zero));
        }
    }
}
