//! Periodic quadrature on the 2-torus and the resolvent Gram integrals that
//! feed the Fredholm determinants.
//!
//! All integrals use the uniform periodic (trapezoidal) rule on an `n × n`
//! grid with nodes `p = -π + 2πj/n`. The Gram integrands are even in each
//! momentum component, so the sums are folded onto the quarter `[0, π]²`
//! (and onto the octant `p1 ≤ p2` where the integrand is also swap
//! symmetric) with the corresponding node multiplicities. The folded sum is
//! the same rule value, evaluated in a fixed node order.

use crate::error::{Error, Result};
use crate::lattice::{essential_band, pair_dispersion_cos, Quasimomentum, TorusPoint};
use crate::Scalar;

/// Points per axis of the uniform periodic grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    n: usize,
}

impl GridSpec {
    pub const DEFAULT_N: usize = 512;

    pub fn new(n: usize) -> Result<Self> {
        if n < 16 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid { n });
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn refined(&self) -> Self {
        Self { n: 2 * self.n }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n: Self::DEFAULT_N }
    }
}

/// Distance from a band edge inside which a spectral parameter is refused.
pub const EDGE_EXCLUSION: f64 = 1e-8;

/// `(2π/n)² Σ f(nodes)` over the full grid, summed lexicographically
/// (first component outer).
pub fn integrate_torus<T: Scalar, F>(f: F, grid: GridSpec) -> T
where
    F: Fn(TorusPoint<T>) -> T,
{
    let n = grid.n();
    let pi = T::PI();
    let h = (pi + pi) / T::lit(n as f64);
    let node = |j: usize| -pi + h * T::lit(j as f64);
    let mut sum = T::zero();
    for i in 0..n {
        let p1 = node(i);
        for j in 0..n {
            sum += f(TorusPoint { p1, p2: node(j) });
        }
    }
    sum * h * h
}

/// Cosines of the nodes in `[0, π]` with their folding multiplicity
/// (1 at `0` and `π`, 2 elsewhere).
#[derive(Clone, Debug)]
struct HalfAxis<T> {
    cos: Vec<T>,
    weight: Vec<T>,
}

impl<T: Scalar> HalfAxis<T> {
    fn new(grid: GridSpec) -> Self {
        let n = grid.n();
        let m = n / 2;
        let pi = T::PI();
        let h = (pi + pi) / T::lit(n as f64);
        let mut cos = Vec::with_capacity(m + 1);
        let mut weight = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let c = if j == 0 {
                T::one()
            } else if j == m {
                -T::one()
            } else {
                (h * T::lit(j as f64)).cos()
            };
            cos.push(c);
            weight.push(if j == 0 || j == m { T::one() } else { T::lit(2.0) });
        }
        Self { cos, weight }
    }
}

/// Resolvent Gram integrals of the two antisymmetric kernels
/// `φ₁ = cos p1 - cos p2`, `φ₂ = cos 2p1 - cos 2p2` at zero quasimomentum:
/// `a_ij(z) = (1/8π²) ∫ φᵢ φⱼ / (E₀(p) - z) dp`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramMatrix2<T> {
    pub a11: T,
    pub a12: T,
    pub a22: T,
    pub z: T,
}

/// Checks `z` against the zero-momentum band `[0, 8]`; `Ok(true)` means `z`
/// sits exactly on an edge.
fn check_antisymmetric_domain<T: Scalar>(z: T) -> Result<bool> {
    if !z.is_finite() {
        return Err(Error::NonFinite { what: "spectral parameter" });
    }
    let (lo, hi) = (T::zero(), T::lit(8.0));
    if z == lo || z == hi {
        return Ok(true);
    }
    if z > lo && z < hi {
        return Err(Error::InBand { z: z.as_f64(), e_min: 0.0, e_max: 8.0 });
    }
    let tol = T::lit(EDGE_EXCLUSION);
    for edge in [lo, hi] {
        if (z - edge).abs() < tol {
            return Err(Error::NearEdge { z: z.as_f64(), edge: edge.as_f64() });
        }
    }
    Ok(false)
}

/// Gram matrix `a_ij(z)` of the antisymmetric sector.
///
/// `z` must lie outside `[0, 8]` or exactly on an edge. At an edge the one
/// node where `E₀(p) = z` contributes zero: the numerators vanish there to
/// fourth order while the denominator vanishes to second.
pub fn gram2<T: Scalar>(z: T, grid: GridSpec) -> Result<GramMatrix2<T>> {
    check_antisymmetric_domain(z)?;
    let axis = HalfAxis::<T>::new(grid);
    let m = axis.cos.len();
    let two = T::lit(2.0);
    let (mut s11, mut s12, mut s22) = (T::zero(), T::zero(), T::zero());
    for i in 0..m {
        let c1 = axis.cos[i];
        let w1 = axis.weight[i];
        for j in i..m {
            let c2 = axis.cos[j];
            let denom = pair_dispersion_cos(T::one(), T::one(), c1, c2) - z;
            if denom == T::zero() {
                continue;
            }
            let mut w = w1 * axis.weight[j] / denom;
            if j > i {
                w *= two;
            }
            let f1 = c1 - c2;
            let f2 = two * f1 * (c1 + c2);
            s11 += w * f1 * f1;
            s12 += w * f1 * f2;
            s22 += w * f2 * f2;
        }
    }
    // (2π/n)² / (8π²) = 1 / (2n²)
    let n = T::lit(grid.n() as f64);
    let scale = T::one() / (two * n * n);
    Ok(GramMatrix2 { a11: s11 * scale, a12: s12 * scale, a22: s22 * scale, z })
}

/// Number of kernels in the rank decomposition of the full potential.
pub const KERNELS: usize = 7;

/// The seven kernels `(1, cos p1, cos p2, cos 2p1, cos 2p2, cos p1 cos p2, sin p1 sin p2)`.
pub fn kernel_values<T: Scalar>(p: TorusPoint<T>) -> [T; KERNELS] {
    let two = T::lit(2.0);
    let (c1, c2) = (p.p1.cos(), p.p2.cos());
    [
        T::one(),
        c1,
        c2,
        (two * p.p1).cos(),
        (two * p.p2).cos(),
        c1 * c2,
        p.p1.sin() * p.p2.sin(),
    ]
}

/// `g_mn(K, z) = (1/4π²) ∫ e_m e_n / (E_K(p) - z) dp` over the seven kernels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramMatrix7<T> {
    pub g: [[T; KERNELS]; KERNELS],
    pub k: Quasimomentum<T>,
    pub z: T,
}

fn check_band_domain<T: Scalar>(k: Quasimomentum<T>, z: T) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::NonFinite { what: "spectral parameter" });
    }
    let band = essential_band(k);
    let tol = T::lit(EDGE_EXCLUSION);
    if z >= band.e_min - tol && z <= band.e_max + tol {
        if band.contains(z) {
            return Err(Error::InBand {
                z: z.as_f64(),
                e_min: band.e_min.as_f64(),
                e_max: band.e_max.as_f64(),
            });
        }
        let edge = if z < band.e_min { band.e_min } else { band.e_max };
        return Err(Error::NearEdge { z: z.as_f64(), edge: edge.as_f64() });
    }
    Ok(())
}

/// Accumulates `Σ w · e_m e_n` over the folded quarter grid, where `w` is
/// the node multiplicity times `weight(E_K(p))`. Kernel products that are odd
/// in a single component integrate to zero and are never formed.
fn folded_kernel_sum<T: Scalar>(
    k: Quasimomentum<T>,
    grid: GridSpec,
    weight: impl Fn(T) -> T,
) -> [[T; KERNELS]; KERNELS] {
    let axis = HalfAxis::<T>::new(grid);
    let (b1, b2) = k.half_cosines();
    let two = T::lit(2.0);
    const COS_KERNELS: usize = KERNELS - 1;
    let mut acc = [[T::zero(); COS_KERNELS]; COS_KERNELS];
    let mut acc_sin = T::zero();
    for (c1, w1) in axis.cos.iter().zip(&axis.weight) {
        let (c1, w1) = (*c1, *w1);
        let t1 = two * c1 * c1 - T::one();
        let s1sq = T::one() - c1 * c1;
        for (c2, w2) in axis.cos.iter().zip(&axis.weight) {
            let (c2, w2) = (*c2, *w2);
            let w = w1 * w2 * weight(pair_dispersion_cos(b1, b2, c1, c2));
            let e = [T::one(), c1, c2, t1, two * c2 * c2 - T::one(), c1 * c2];
            for a in 0..COS_KERNELS {
                let we = w * e[a];
                for b in a..COS_KERNELS {
                    acc[a][b] += we * e[b];
                }
            }
            acc_sin += w * s1sq * (T::one() - c2 * c2);
        }
    }
    let mut g = [[T::zero(); KERNELS]; KERNELS];
    for a in 0..COS_KERNELS {
        for b in a..COS_KERNELS {
            g[a][b] = acc[a][b];
            g[b][a] = acc[a][b];
        }
    }
    g[KERNELS - 1][KERNELS - 1] = acc_sin;
    g
}

/// Full seven-kernel Gram matrix at quasimomentum `k`; `z` must lie off the
/// closed band (and at least [`EDGE_EXCLUSION`] away from it).
pub fn gram7<T: Scalar>(k: Quasimomentum<T>, z: T, grid: GridSpec) -> Result<GramMatrix7<T>> {
    check_band_domain(k, z)?;
    let mut g = folded_kernel_sum(k, grid, |e| T::one() / (e - z));
    // (2π/n)² / (4π²) = 1 / n²
    let n = T::lit(grid.n() as f64);
    let scale = T::one() / (n * n);
    for row in g.iter_mut() {
        for v in row.iter_mut() {
            *v *= scale;
        }
    }
    Ok(GramMatrix7 { g, k, z })
}

/// Overlap matrix `(1/4π²) ∫ e_m e_n dp` of the seven kernels (no resolvent).
pub fn kernel_overlaps<T: Scalar>(grid: GridSpec) -> [[T; KERNELS]; KERNELS] {
    let mut g = folded_kernel_sum(Quasimomentum::zero(), grid, |_| T::one());
    let n = T::lit(grid.n() as f64);
    let scale = T::one() / (n * n);
    for row in g.iter_mut() {
        for v in row.iter_mut() {
            *v *= scale;
        }
    }
    g
}

/// Kernels of the swap-symmetric sector at zero quasimomentum:
/// `(1, cos p1 + cos p2, cos 2p1 + cos 2p2, cos p1 cos p2, sin p1 sin p2)`.
pub const SYMMETRIC_KERNELS: usize = 5;

/// `(1/4π²) ∫ s_m s_n / (E₀(p) - z) dp` over the swap-symmetric kernels.
pub fn gram_symmetric5<T: Scalar>(
    z: T,
    grid: GridSpec,
) -> Result<[[T; SYMMETRIC_KERNELS]; SYMMETRIC_KERNELS]> {
    check_band_domain(Quasimomentum::zero(), z)?;
    let axis = HalfAxis::<T>::new(grid);
    let two = T::lit(2.0);
    let mut acc = [[T::zero(); SYMMETRIC_KERNELS]; SYMMETRIC_KERNELS];
    for (c1, w1) in axis.cos.iter().zip(&axis.weight) {
        for (c2, w2) in axis.cos.iter().zip(&axis.weight) {
            let (c1, c2) = (*c1, *c2);
            let w = *w1 * *w2 / (pair_dispersion_cos(T::one(), T::one(), c1, c2) - z);
            let s = [
                T::one(),
                c1 + c2,
                two * (c1 * c1 + c2 * c2) - two,
                c1 * c2,
                // sin p1 sin p2 only pairs with itself; store its square here
                (T::one() - c1 * c1) * (T::one() - c2 * c2),
            ];
            for a in 0..SYMMETRIC_KERNELS - 1 {
                for b in a..SYMMETRIC_KERNELS - 1 {
                    acc[a][b] += w * s[a] * s[b];
                }
            }
            acc[4][4] += w * s[4];
        }
    }
    let n = T::lit(grid.n() as f64);
    let scale = T::one() / (n * n);
    let mut g = [[T::zero(); SYMMETRIC_KERNELS]; SYMMETRIC_KERNELS];
    for a in 0..SYMMETRIC_KERNELS {
        for b in a..SYMMETRIC_KERNELS {
            g[a][b] = acc[a][b] * scale;
            g[b][a] = g[a][b];
        }
    }
    Ok(g)
}

/// Limits of `a_ij(z)` as `z ↗ 0`, their Gram determinant, and the curve
/// parameters derived from them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeConstants<T> {
    pub e11: T,
    pub e12: T,
    pub e22: T,
    /// `e11·e22 - e12²`
    pub d: T,
    /// `e11 / d`, the vertical asymptote of the threshold curves.
    pub mu_star: T,
    /// `e22 / d`, the horizontal asymptote of the threshold curves.
    pub lambda_star: T,
}

impl<T: Scalar> EdgeConstants<T> {
    pub fn from_limits(e11: T, e12: T, e22: T) -> Self {
        let d = e11 * e22 - e12 * e12;
        Self { e11, e12, e22, d, mu_star: e11 / d, lambda_star: e22 / d }
    }

    /// `(e12 / d)²`, the offset of the threshold hyperbolas.
    pub fn kappa(&self) -> T {
        let r = self.e12 / self.d;
        r * r
    }
}

/// Band-edge constants from the Gram matrix evaluated exactly at `z = 0`.
pub fn edge_constants<T: Scalar>(grid: GridSpec) -> EdgeConstants<T> {
    let g = gram2(T::zero(), grid).expect("z = 0 is an admissible edge point");
    EdgeConstants::from_limits(g.a11, g.a12, g.a22)
}

/// `e^{-t}(I₀(t) − I₁(t)) = (1/π)∫₀^π e^{t(cos θ − 1)}(1 − cos θ) dθ`.
fn scaled_bessel_difference(t: f64) -> f64 {
    let n = 200 + (20.0 * t.sqrt()).ceil() as usize;
    let h = std::f64::consts::PI / n as f64;
    let mut s = 0.0;
    for j in 1..n {
        let c = (j as f64 * h).cos();
        s += (t * (c - 1.0)).exp() * (1.0 - c);
    }
    s += 0.5 * 2.0 * (-2.0 * t).exp();
    s * h / std::f64::consts::PI
}

/// One-dimensional oracle for `e11 = a11(0)`:
/// `1/2 − ∫₀^∞ e^{−2t}(I₀(t) − I₁(t))² dt`, independent of the torus grid.
pub fn e11_bessel_laplace() -> f64 {
    let (t0, t1) = (1e-8f64, 1e4f64);
    let steps = 4000;
    let (a, b) = (t0.ln(), t1.ln());
    let h = (b - a) / steps as f64;
    let g = |s: f64| {
        let t = s.exp();
        let f = scaled_bessel_difference(t);
        f * f * t
    };
    let mut acc = g(a) + g(b);
    for j in 1..steps {
        acc += if j % 2 == 1 { 4.0 } else { 2.0 } * g(a + j as f64 * h);
    }
    let body = acc * h / 3.0;
    // f ≈ 1 near 0 and f² ≈ 1/(8π t³) beyond t1.
    let head = t0;
    let tail = 1.0 / (16.0 * std::f64::consts::PI * t1 * t1);
    0.5 - (head + body + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(n: usize) -> GridSpec {
        GridSpec::new(n).unwrap()
    }

    #[test]
    fn bessel_laplace_oracle() {
        let e = e11_bessel_laplace();
        assert!((e - (4.0 - PI) / (2.0 * PI)).abs() < 1e-9, "{e}");
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(14).is_err());
        assert!(GridSpec::new(17).is_err());
        assert!(GridSpec::new(16).is_ok());
        assert_eq!(GridSpec::default().n(), 512);
    }

    #[test]
    fn integrates_constants_and_trig() {
        let one = integrate_torus(|_| 1.0_f64, grid(16));
        assert!((one - 4.0 * PI * PI).abs() < 1e-12);
        let c2 = integrate_torus(|p: TorusPoint<f64>| p.p1.cos().powi(2), grid(32));
        assert!((c2 - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn resolvent_integral_self_converges() {
        let f = |p: TorusPoint<f64>| {
            1.0 / (crate::lattice::pair_dispersion(Quasimomentum::zero(), p) + 1.0)
        };
        let coarse = integrate_torus(f, grid(128));
        let fine = integrate_torus(f, grid(256));
        assert!((coarse - fine).abs() < 1e-10, "{coarse} vs {fine}");
    }

    #[test]
    fn folded_sum_equals_full_grid_sum() {
        let g = grid(64);
        let z = -0.7;
        let folded = gram2(z, g).unwrap();
        let e0 = |p: TorusPoint<f64>| crate::lattice::pair_dispersion(Quasimomentum::zero(), p);
        let full = |i: usize, j: usize| {
            integrate_torus(
                |p: TorusPoint<f64>| {
                    let f = [p.p1.cos() - p.p2.cos(), (2.0 * p.p1).cos() - (2.0 * p.p2).cos()];
                    f[i] * f[j] / (e0(p) - z)
                },
                g,
            ) / (8.0 * PI * PI)
        };
        assert!((folded.a11 - full(0, 0)).abs() < 1e-14);
        assert!((folded.a12 - full(0, 1)).abs() < 1e-14);
        assert!((folded.a22 - full(1, 1)).abs() < 1e-14);

        let k = Quasimomentum::new(0.9, -2.1);
        let g7 = gram7(k, -1.3, g).unwrap();
        for m in 0..KERNELS {
            for l in 0..KERNELS {
                let direct = integrate_torus(
                    |p: TorusPoint<f64>| {
                        let e = kernel_values(p);
                        e[m] * e[l] / (crate::lattice::pair_dispersion(k, p) + 1.3)
                    },
                    g,
                ) / (4.0 * PI * PI);
                assert!((g7.g[m][l] - direct).abs() < 1e-13, "({m},{l})");
            }
        }
    }

    #[test]
    fn gram2_domain() {
        let g = grid(32);
        assert!(matches!(gram2(3.0, g), Err(Error::InBand { .. })));
        assert!(matches!(gram2(-1e-9, g), Err(Error::NearEdge { .. })));
        assert!(matches!(gram2(8.0 + 5e-9, g), Err(Error::NearEdge { .. })));
        assert!(gram2(0.0, g).is_ok());
        assert!(gram2(8.0, g).is_ok());
        assert!(gram2(-1e-7, g).is_ok());
    }

    #[test]
    fn gram2_far_from_band_vanishes() {
        let a = gram2(-1e6f64, grid(64)).unwrap();
        assert!(a.a11.abs() < 1e-5 && a.a12.abs() < 1e-5 && a.a22.abs() < 1e-5);
        assert!(a.a11 > 0.0);
    }

    #[test]
    fn gram2_reflection() {
        let g = grid(256);
        for z in [-5.0f64, -1.0, -0.1] {
            let lo = gram2(z, g).unwrap();
            let hi = gram2(8.0 - z, g).unwrap();
            assert!((lo.a11 + hi.a11).abs() < 1e-9);
            assert!((lo.a22 + hi.a22).abs() < 1e-9);
            assert!((lo.a12 - hi.a12).abs() < 1e-9);
        }
    }

    #[test]
    fn gram7_degenerate_band_is_constant() {
        let k = Quasimomentum::new(PI, PI);
        let g = gram7(k, 5.0, grid(32)).unwrap();
        assert!((g.g[0][0] + 1.0).abs() < 1e-14);
        assert!((g.g[1][1] + 0.5).abs() < 1e-14);
        assert!((g.g[5][5] + 0.25).abs() < 1e-14);
        assert!((g.g[6][6] + 0.25).abs() < 1e-14);
        assert!(g.g[0][1].abs() < 1e-14 && g.g[1][5].abs() < 1e-14);
    }

    #[test]
    fn gram7_swap_symmetry_and_signs() {
        let k = Quasimomentum::zero();
        let g = gram7(k, -1.0f64, grid(128)).unwrap();
        assert!((g.g[1][1] - g.g[2][2]).abs() < 1e-12);
        assert!((g.g[3][3] - g.g[4][4]).abs() < 1e-12);
        for m in 0..KERNELS {
            assert!(g.g[m][m] > 0.0);
            for l in 0..KERNELS {
                assert_eq!(g.g[m][l], g.g[l][m]);
            }
        }
        let above = gram7(k, 9.0, grid(128)).unwrap();
        for m in 0..KERNELS {
            assert!(above.g[m][m] < 0.0);
        }
    }

    #[test]
    fn gram7_domain() {
        let k = Quasimomentum::new(PI, 0.0);
        let g = grid(32);
        assert!(matches!(gram7(k, 4.0, g), Err(Error::InBand { .. })));
        assert!(matches!(gram7(k, 2.0, g), Err(Error::InBand { .. })));
        assert!(matches!(gram7(k, 6.0 + 1e-9, g), Err(Error::NearEdge { .. })));
        assert!(gram7(k, 1.9, g).is_ok());
    }

    // Antisymmetric combinations of the seven kernels reproduce the 2×2 Gram
    // matrix: φ₁ = e₁ - e₂, φ₂ = e₃ - e₄ and a_ij carries an extra 1/2.
    #[test]
    fn gram7_contains_gram2() {
        let g = grid(256);
        for z in [-1.0f64, -0.2, 9.5] {
            let big = gram7(Quasimomentum::zero(), z, g).unwrap().g;
            let small = gram2(z, g).unwrap();
            let comb = |a: usize, b: usize, c: usize, d: usize| {
                (big[a][c] - big[a][d] - big[b][c] + big[b][d]) / 2.0
            };
            assert!((comb(1, 2, 1, 2) - small.a11).abs() < 1e-10);
            assert!((comb(1, 2, 3, 4) - small.a12).abs() < 1e-10);
            assert!((comb(3, 4, 3, 4) - small.a22).abs() < 1e-10);
        }
    }

    #[test]
    fn overlaps_are_orthogonal() {
        let o = kernel_overlaps::<f64>(grid(32));
        let diag = [1.0, 0.5, 0.5, 0.5, 0.5, 0.25, 0.25];
        for m in 0..KERNELS {
            for l in 0..KERNELS {
                let want = if m == l { diag[m] } else { 0.0 };
                assert!((o[m][l] - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn single_precision_gram() {
        let a = gram2(-1.0_f32, grid(64)).unwrap();
        let b = gram2(-1.0_f64, grid(64)).unwrap();
        assert!((a.a11 as f64 - b.a11).abs() < 1e-5);
    }
}
