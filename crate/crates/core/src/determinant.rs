//! Lippmann–Schwinger determinants of the fiber operator and bound-state
//! counting from their zeros.
//!
//! The potential has rank at most seven, so `H_0(K) + V` has an eigenvalue
//! `z` off the band exactly when `det(I + W G(K, z)) = 0`, where `G` is the
//! resolvent Gram matrix of the kernels and `W` their weights. At `K = 0`
//! the swap-antisymmetric sector reduces to the 2×2 problem in `λ, μ`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::Result;
use crate::lattice::{essential_band, CouplingParams, EssentialBand, Quasimomentum};
use crate::linalg::{jacobi_eigenvalues, SquareMatrix};
use crate::quadrature::{
    gram2, gram7, gram_symmetric5, kernel_overlaps, GramMatrix2, GramMatrix7, GridSpec, KERNELS,
    SYMMETRIC_KERNELS,
};
use crate::zeros::{locate_zeros, Edge, InertiaCount, ScanOptions, SpectralDeterminant, Zero, ZeroReport};
use crate::Scalar;

/// Antisymmetric-sector zeros per side never exceed the rank of that sector.
pub const ANTISYMMETRIC_RANK: usize = 2;

/// `I - B` for the antisymmetric sector:
/// `[[1 + λ a11, μ a12], [λ a12, 1 + μ a22]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LSMatrix2<T> {
    pub entries: [[T; 2]; 2],
    pub lambda: T,
    pub mu: T,
    pub z: T,
}

impl<T: Scalar> LSMatrix2<T> {
    pub fn new(lambda: T, mu: T, a: &GramMatrix2<T>) -> Self {
        Self {
            entries: [
                [T::one() + lambda * a.a11, mu * a.a12],
                [lambda * a.a12, T::one() + mu * a.a22],
            ],
            lambda,
            mu,
            z: a.z,
        }
    }

    pub fn determinant(&self) -> T {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }
}

/// Antisymmetric-sector determinant `Δ(z)` at `K = 0`; `z` outside `[0, 8]`
/// or exactly on an edge.
pub fn det2<T: Scalar>(lambda: T, mu: T, z: T, grid: GridSpec) -> Result<T> {
    Ok(LSMatrix2::new(lambda, mu, &gram2(z, grid)?).determinant())
}

/// Kernel weights `(γ, λ, λ, μ, μ, 2μ, 2μ)` of the rank-seven decomposition.
pub fn kernel_weights<T: Scalar>(c: &CouplingParams<T>) -> [T; KERNELS] {
    let two_mu = c.mu + c.mu;
    [c.gamma, c.lambda, c.lambda, c.mu, c.mu, two_mu, two_mu]
}

/// `I + W G(K, z)` over the seven kernels.
#[derive(Clone, Debug, PartialEq)]
pub struct LSMatrix7<T> {
    pub entries: SquareMatrix<T>,
    pub couplings: CouplingParams<T>,
    pub k: Quasimomentum<T>,
    pub z: T,
}

impl<T: Scalar> LSMatrix7<T> {
    pub fn new(c: &CouplingParams<T>, g: &GramMatrix7<T>) -> Self {
        let w = kernel_weights(c);
        let entries = SquareMatrix::from_fn(KERNELS, |m, n| {
            let delta = if m == n { T::one() } else { T::zero() };
            delta + w[m] * g.g[m][n]
        });
        Self { entries, couplings: *c, k: g.k, z: g.z }
    }

    pub fn determinant(&self) -> T {
        self.entries.determinant()
    }
}

/// Full determinant `det(I + W G(K, z))`; `z` off the closed band.
pub fn det7<T: Scalar>(c: &CouplingParams<T>, k: Quasimomentum<T>, z: T, grid: GridSpec) -> Result<T> {
    Ok(LSMatrix7::new(c, &gram7(k, z, grid)?).determinant())
}

/// Symmetric-sector determinant at `K = 0` over the kernels
/// `(1, cos p1 + cos p2, cos 2p1 + cos 2p2, cos p1 cos p2, sin p1 sin p2)`
/// with weights `(γ, λ/2, μ/2, 2μ, 2μ)`.
pub fn det5<T: Scalar>(c: &CouplingParams<T>, z: T, grid: GridSpec) -> Result<T> {
    let g = gram_symmetric5(z, grid)?;
    let half = T::lit(0.5);
    let two_mu = c.mu + c.mu;
    let w = [c.gamma, half * c.lambda, half * c.mu, two_mu, two_mu];
    let m = SquareMatrix::from_fn(SYMMETRIC_KERNELS, |i, j| {
        let delta = if i == j { T::one() } else { T::zero() };
        delta + w[i] * g[i][j]
    });
    Ok(m.determinant())
}

/// Eigenvalues of `H` beyond `z` for a potential `Σ w_m |e_m⟩⟨e_m|` with
/// resolvent Gram matrix `G(z)`.
///
/// With `S = sign W` and `D = |W|^{1/2}`, the Haynsworth inertia formula
/// gives `n₋(H − z) = n₊(S + D G D) − n₊(S)` below the band and
/// `n₊(H − z) = n₋(S + D G D) − n₋(S)` above it. Kernels with zero weight
/// drop out.
pub fn inertia_count<T: Scalar>(
    weights: &[T],
    gram: impl Fn(usize, usize) -> T,
    side: Edge,
) -> Result<usize> {
    let active: Vec<usize> = (0..weights.len()).filter(|&m| weights[m] != T::zero()).collect();
    if active.is_empty() {
        return Ok(0);
    }
    let root: Vec<T> = active.iter().map(|&m| weights[m].abs().sqrt()).collect();
    let m = SquareMatrix::from_fn(active.len(), |i, j| {
        let (i, j) = (i.min(j), i.max(j));
        let s = if i == j { weights[active[i]].signum() } else { T::zero() };
        s + root[i] * gram(active[i], active[j]) * root[j]
    });
    let ev = jacobi_eigenvalues(&m)?;
    let positive_w = active.iter().filter(|&&m| weights[m] > T::zero()).count();
    let negative_w = active.len() - positive_w;
    Ok(match side {
        Edge::Lower => ev.iter().filter(|&&e| e > T::zero()).count().saturating_sub(positive_w),
        Edge::Upper => ev.iter().filter(|&&e| e < T::zero()).count().saturating_sub(negative_w),
    })
}

fn cache_key<T: Scalar>(z: T) -> u64 {
    z.as_f64().to_bits()
}

/// Memoized antisymmetric Gram matrices on one quadrature grid. Gram values
/// depend on `z` only, so one table serves every `(λ, μ)`.
#[derive(Debug)]
pub struct Gram2Table<T> {
    grid: GridSpec,
    cache: Mutex<HashMap<u64, GramMatrix2<T>>>,
}

impl<T: Scalar> Gram2Table<T> {
    pub fn new(grid: GridSpec) -> Self {
        Self { grid, cache: Mutex::new(HashMap::new()) }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn get(&self, z: T) -> Result<GramMatrix2<T>> {
        let key = cache_key(z);
        if let Some(g) = self.cache.lock().unwrap().get(&key) {
            return Ok(*g);
        }
        let g = gram2(z, self.grid)?;
        self.cache.lock().unwrap().insert(key, g);
        Ok(g)
    }

    pub fn det(&self, lambda: T, mu: T) -> Det2<'_, T> {
        Det2 { lambda, mu, table: self }
    }
}

/// `Δ(z)` for fixed `(λ, μ)`, backed by a shared [`Gram2Table`].
#[derive(Clone, Copy, Debug)]
pub struct Det2<'a, T> {
    pub lambda: T,
    pub mu: T,
    table: &'a Gram2Table<T>,
}

impl<T: Scalar> SpectralDeterminant<T> for Det2<'_, T> {
    fn eval(&self, z: T) -> Result<T> {
        Ok(LSMatrix2::new(self.lambda, self.mu, &self.table.get(z)?).determinant())
    }

    fn edge_limit(&self, edge: Edge) -> Option<T> {
        let z = match edge {
            Edge::Lower => T::zero(),
            Edge::Upper => T::lit(8.0),
        };
        self.eval(z).ok()
    }
}

impl<T: Scalar> InertiaCount<T> for Det2<'_, T> {
    fn count_beyond(&self, z: T, side: Edge) -> Result<usize> {
        let a = self.table.get(z)?;
        let g = [[a.a11, a.a12], [a.a12, a.a22]];
        inertia_count(&[self.lambda, self.mu], |i, j| g[i][j], side)
    }
}

/// Zero-momentum band `[0, 8]`.
pub fn zero_momentum_band<T: Scalar>() -> EssentialBand<T> {
    essential_band(Quasimomentum::zero())
}

/// Zeros of `Δ(z)` on both sides of `[0, 8]`.
pub fn antisymmetric_zeros<T: Scalar>(
    lambda: T,
    mu: T,
    table: &Gram2Table<T>,
    opts: &ScanOptions<T>,
) -> Result<ZeroReport<T>> {
    locate_zeros(&table.det(lambda, mu), &zero_momentum_band(), opts)
}

/// Memoized seven-kernel Gram matrices at one quasimomentum.
#[derive(Debug)]
pub struct Gram7Table<T> {
    k: Quasimomentum<T>,
    grid: GridSpec,
    cache: Mutex<HashMap<u64, GramMatrix7<T>>>,
}

impl<T: Scalar> Gram7Table<T> {
    pub fn new(k: Quasimomentum<T>, grid: GridSpec) -> Self {
        Self { k, grid, cache: Mutex::new(HashMap::new()) }
    }

    pub fn k(&self) -> Quasimomentum<T> {
        self.k
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn get(&self, z: T) -> Result<GramMatrix7<T>> {
        let key = cache_key(z);
        if let Some(g) = self.cache.lock().unwrap().get(&key) {
            return Ok(*g);
        }
        let g = gram7(self.k, z, self.grid)?;
        self.cache.lock().unwrap().insert(key, g);
        Ok(g)
    }

    pub fn det(&self, c: CouplingParams<T>) -> Det7<'_, T> {
        Det7 { couplings: c, table: self }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Det7<'a, T> {
    pub couplings: CouplingParams<T>,
    table: &'a Gram7Table<T>,
}

impl<T: Scalar> SpectralDeterminant<T> for Det7<'_, T> {
    fn eval(&self, z: T) -> Result<T> {
        Ok(LSMatrix7::new(&self.couplings, &self.table.get(z)?).determinant())
    }
}

impl<T: Scalar> InertiaCount<T> for Det7<'_, T> {
    fn count_beyond(&self, z: T, side: Edge) -> Result<usize> {
        let g = self.table.get(z)?;
        inertia_count(&kernel_weights(&self.couplings), |i, j| g.g[i][j], side)
    }
}

/// Bound states of a degenerate band (`E_K ≡ e`): the determinant is
/// `Π (1 + s_k / (e - z))` with `s_k` the eigenvalues of `Lᵀ W L`, where
/// `L Lᵀ` is the kernel overlap matrix. Each nonzero `s_k` is a bound state
/// at `e + s_k`, counted with multiplicity.
fn degenerate_band_zeros<T: Scalar>(
    c: &CouplingParams<T>,
    band: &EssentialBand<T>,
    grid: GridSpec,
) -> Result<ZeroReport<T>> {
    let overlaps = kernel_overlaps::<T>(grid);
    let o = SquareMatrix::from_fn(KERNELS, |i, j| overlaps[i][j]);
    let l = o.cholesky().expect("kernel overlaps are positive definite");
    let w = kernel_weights(c);
    let s = SquareMatrix::from_fn(KERNELS, |i, j| {
        (0..KERNELS).map(|m| l[(m, i)] * w[m] * l[(m, j)]).sum()
    });
    let scale = w.iter().fold(T::one(), |a, v| a.max(v.abs()));
    let cutoff = T::lit(1e-12) * scale;
    let centre = band.e_min;
    let mut below = Vec::new();
    let mut above = Vec::new();
    for ev in jacobi_eigenvalues(&s)? {
        let zero = Zero { z: centre + ev, bracket: T::zero(), residual: T::zero() };
        if ev < -cutoff {
            below.push(zero);
        } else if ev > cutoff {
            above.push(zero);
        }
    }
    Ok(ZeroReport {
        below,
        above,
        inconclusive: Vec::new(),
        reach_below: centre,
        reach_above: centre,
    })
}

/// Zeros of the full determinant at the table's quasimomentum.
pub fn full_zeros<T: Scalar>(
    c: &CouplingParams<T>,
    table: &Gram7Table<T>,
    opts: &ScanOptions<T>,
) -> Result<ZeroReport<T>> {
    let band = essential_band(table.k());
    if band.is_degenerate() {
        return degenerate_band_zeros(c, &band, table.grid());
    }
    locate_zeros(&table.det(*c), &band, opts)
}

/// Number of bound states below and above the essential band of `H(K)`.
pub fn count_bound_states<T: Scalar>(
    c: &CouplingParams<T>,
    k: Quasimomentum<T>,
    grid: GridSpec,
) -> Result<(usize, usize)> {
    let table = Gram7Table::new(k, grid);
    Ok(full_zeros(c, &table, &ScanOptions::default())?.counts())
}
