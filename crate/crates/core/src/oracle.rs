//! Truncated position-space fiber Hamiltonian and its dense spectrum.
//!
//! In the relative coordinate `x ∈ Z²` the fiber operator acts as
//! `(H f)(x) = (4 + v̂(x)) f(x) − Σᵢ cos(Kᵢ/2) [f(x + eᵢ) + f(x − eᵢ)]`.
//! The oracle restricts it to the box `max(|x1|, |x2|) ≤ l` with Dirichlet
//! walls, projects onto the bosonic (negation-even) subspace and diagonalizes.

use crate::error::{Error, Result};
use crate::lattice::{essential_band, potential_position, CouplingParams, EssentialBand, LatticeVector, Quasimomentum};
use crate::linalg::{symmetry_tolerance, SquareMatrix};
use crate::Scalar;

pub const MIN_BOX: usize = 10;
/// Default exclusion margin around the band edges.
pub const DEFAULT_DELTA: f64 = 1e-4;
/// Largest eigenvalue movement between boxes accepted as converged.
pub const CONVERGENCE_TOL: f64 = 1e-6;
/// Box growth used for the convergence check.
pub const BOX_STEP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    FullEven,
    SwapSymmetric,
    SwapAntisymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxSpec {
    pub l: usize,
    pub sector: Sector,
}

impl BoxSpec {
    pub fn new(l: usize, sector: Sector) -> Result<Self> {
        if l < MIN_BOX {
            return Err(Error::InvalidBox { l });
        }
        Ok(Self { l, sector })
    }

    pub fn grown(&self, by: usize) -> Self {
        Self { l: self.l + by, ..*self }
    }

    fn check_momentum<T: Scalar>(&self, k: Quasimomentum<T>) -> Result<()> {
        if self.sector != Sector::FullEven && k.k1 != k.k2 {
            return Err(Error::InvalidSector { k1: k.k1.as_f64(), k2: k.k2.as_f64() });
        }
        Ok(())
    }
}

/// Point-group element acting on the relative coordinate: sign flips of
/// each component, then an optional swap.
#[derive(Clone, Copy, Debug)]
struct Op {
    flip1: bool,
    flip2: bool,
    swap: bool,
}

impl Op {
    fn apply(&self, x: LatticeVector) -> LatticeVector {
        let a = if self.flip1 { -x.x1 } else { x.x1 };
        let b = if self.flip2 { -x.x2 } else { x.x2 };
        if self.swap {
            LatticeVector::new(b, a)
        } else {
            LatticeVector::new(a, b)
        }
    }
}

/// Group elements with their one-dimensional character values.
type Representation = Vec<(Op, i8)>;

fn negation_even() -> Representation {
    vec![
        (Op { flip1: false, flip2: false, swap: false }, 1),
        (Op { flip1: true, flip2: true, swap: false }, 1),
    ]
}

/// Character of the reflection group with `χ(R1) = χ(R2) = parity` and, if
/// `swap` is set, `χ(S) = swap_parity`. Either choice of `parity` is even
/// under negation `R1·R2`.
fn reflection_character(parity: i8, swap: Option<i8>) -> Representation {
    let mut out = Vec::new();
    let swaps: &[bool] = if swap.is_some() { &[false, true] } else { &[false] };
    for &s in swaps {
        for f1 in [false, true] {
            for f2 in [false, true] {
                let mut chi = 1i8;
                if f1 {
                    chi *= parity;
                }
                if f2 {
                    chi *= parity;
                }
                if s {
                    chi *= swap.unwrap_or(1);
                }
                out.push((Op { flip1: f1, flip2: f2, swap: s }, chi));
            }
        }
    }
    out
}

fn swap_parity(sector: Sector) -> Option<i8> {
    match sector {
        Sector::FullEven => None,
        Sector::SwapSymmetric => Some(1),
        Sector::SwapAntisymmetric => Some(-1),
    }
}

/// Dense box sites indexed row-major from `(-l, -l)`.
struct Sites {
    l: i64,
    side: usize,
}

impl Sites {
    fn new(l: usize) -> Self {
        Self { l: l as i64, side: 2 * l + 1 }
    }

    fn len(&self) -> usize {
        self.side * self.side
    }

    fn index(&self, x: LatticeVector) -> Option<usize> {
        if x.x1.abs() > self.l || x.x2.abs() > self.l {
            return None;
        }
        Some((x.x1 + self.l) as usize * self.side + (x.x2 + self.l) as usize)
    }

    fn site(&self, i: usize) -> LatticeVector {
        LatticeVector::new((i / self.side) as i64 - self.l, (i % self.side) as i64 - self.l)
    }
}

/// Compression of `H(K)` onto the symmetry-adapted basis of `rep`.
fn assemble<T: Scalar>(c: &CouplingParams<T>, k: Quasimomentum<T>, l: usize, rep: &Representation) -> SquareMatrix<T> {
    let sites = Sites::new(l);
    // Basis index and coefficient of each site; orbits with vanishing
    // projection are dropped.
    let mut owner: Vec<Option<(usize, T)>> = vec![None; sites.len()];
    let mut visited = vec![false; sites.len()];
    let mut dim = 0;
    for i in 0..sites.len() {
        if visited[i] {
            continue;
        }
        let x = sites.site(i);
        let mut coef: Vec<(usize, i32)> = Vec::new();
        for (op, chi) in rep {
            let j = sites.index(op.apply(x)).expect("box is invariant");
            visited[j] = true;
            match coef.iter_mut().find(|(s, _)| *s == j) {
                Some(e) => e.1 += *chi as i32,
                None => coef.push((j, *chi as i32)),
            }
        }
        let norm2: i32 = coef.iter().map(|(_, v)| v * v).sum();
        if norm2 == 0 {
            continue;
        }
        let inv = T::one() / T::lit(norm2 as f64).sqrt();
        for (j, v) in coef {
            if v != 0 {
                owner[j] = Some((dim, T::lit(v as f64) * inv));
            }
        }
        dim += 1;
    }

    let (b1, b2) = k.half_cosines();
    let four = T::lit(4.0);
    let mut m = SquareMatrix::zeros(dim);
    for i in 0..sites.len() {
        let Some((a, ca)) = owner[i] else { continue };
        let x = sites.site(i);
        m[(a, a)] += ca * ca * (four + potential_position(x, c));
        for (d1, d2, hop) in [(1, 0, b1), (-1, 0, b1), (0, 1, b2), (0, -1, b2)] {
            let y = LatticeVector::new(x.x1 + d1, x.x2 + d2);
            let Some(j) = sites.index(y) else { continue };
            let Some((b, cb)) = owner[j] else { continue };
            m[(a, b)] -= ca * cb * hop;
        }
    }
    m
}

/// Truncated Hamiltonian in the negation-even basis `{x, −x}`, with swap
/// symmetrization for the swap sectors.
pub fn build_matrix<T: Scalar>(c: &CouplingParams<T>, k: Quasimomentum<T>, b: BoxSpec) -> Result<SquareMatrix<T>> {
    b.check_momentum(k)?;
    let mut rep = negation_even();
    if let Some(t) = swap_parity(b.sector) {
        let s = Op { flip1: false, flip2: false, swap: true };
        let ns = Op { flip1: true, flip2: true, swap: true };
        rep.extend([(s, t), (ns, t)]);
    }
    Ok(assemble(c, k, b.l, &rep))
}

/// The matrix of [`build_matrix`] split into its two reflection-parity
/// blocks; the union of their spectra is the same.
pub fn build_blocks<T: Scalar>(c: &CouplingParams<T>, k: Quasimomentum<T>, b: BoxSpec) -> Result<Vec<SquareMatrix<T>>> {
    b.check_momentum(k)?;
    let swap = swap_parity(b.sector);
    Ok([1i8, -1]
        .into_iter()
        .map(|p| assemble(c, k, b.l, &reflection_character(p, swap)))
        .filter(|m| m.dim() > 0)
        .collect())
}

/// All eigenvalues of a symmetric matrix, ascending.
pub fn eigensolve<T: Scalar>(m: &SquareMatrix<T>) -> Result<Vec<T>> {
    m.check_symmetric(symmetry_tolerance(T::lit(1e-12)))?;
    T::dense_sym_eigenvalues(m.dim(), m.as_slice()).ok_or(Error::EigenFailure { n: m.dim() })
}

/// Spectrum of the truncated operator, merged over parity blocks.
pub fn box_spectrum<T: Scalar>(c: &CouplingParams<T>, k: Quasimomentum<T>, b: BoxSpec) -> Result<Vec<T>> {
    let mut all = Vec::new();
    for m in build_blocks(c, k, b)? {
        all.extend(eigensolve(&m)?);
    }
    all.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(all)
}

/// Eigenvalues outside the band by more than `delta`, and those within
/// `delta` of an edge on the outside.
#[derive(Clone, Debug, PartialEq)]
pub struct OutsideCount<T> {
    pub below: Vec<T>,
    pub above: Vec<T>,
    pub indeterminate: Vec<T>,
}

impl<T: Scalar> OutsideCount<T> {
    pub fn counts(&self) -> (usize, usize) {
        (self.below.len(), self.above.len())
    }
}

pub fn count_outside<T: Scalar>(eigs: &[T], band: &EssentialBand<T>, delta: T) -> OutsideCount<T> {
    let mut out = OutsideCount { below: Vec::new(), above: Vec::new(), indeterminate: Vec::new() };
    for &e in eigs {
        if e < band.e_min - delta {
            out.below.push(e);
        } else if e > band.e_max + delta {
            out.above.push(e);
        } else if e < band.e_min || e > band.e_max {
            out.indeterminate.push(e);
        }
    }
    out.below.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out.above.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport<T> {
    pub l: usize,
    pub eigs_below: Vec<T>,
    pub eigs_above: Vec<T>,
    pub indeterminate: Vec<T>,
    /// Largest movement of a bound-state eigenvalue from box `l` to `l + 10`.
    pub convergence_delta: T,
    /// Deep states move down and high states move up as the box grows.
    pub monotone: bool,
    pub unconverged: bool,
}

impl<T: Scalar> OracleReport<T> {
    pub fn counts(&self) -> (usize, usize) {
        (self.eigs_below.len(), self.eigs_above.len())
    }
}

/// Pairs states outermost-first and returns (max movement, monotone).
fn compare_states<T: Scalar>(small: &[T], large: &[T], below: bool) -> (T, bool) {
    let slack = T::lit(1e-12);
    let mut worst = T::zero();
    let mut monotone = true;
    let n = small.len().min(large.len());
    for i in 0..n {
        let (a, b) = if below {
            (small[i], large[i])
        } else {
            (small[small.len() - 1 - i], large[large.len() - 1 - i])
        };
        worst = worst.max((a - b).abs());
        monotone &= if below { b <= a + slack } else { b >= a - slack };
    }
    (worst, monotone)
}

/// Bound states at box `b.l`, checked against box `b.l + 10`.
pub fn oracle_report<T: Scalar>(c: &CouplingParams<T>, k: Quasimomentum<T>, b: BoxSpec, delta: T) -> Result<OracleReport<T>> {
    let band = essential_band(k);
    let small = count_outside(&box_spectrum(c, k, b)?, &band, delta);
    let large = count_outside(&box_spectrum(c, k, b.grown(BOX_STEP))?, &band, delta);
    let (db, mb) = compare_states(&small.below, &large.below, true);
    let (da, ma) = compare_states(&small.above, &large.above, false);
    let convergence_delta = db.max(da);
    let unconverged = small.counts() != large.counts() || convergence_delta > T::lit(CONVERGENCE_TOL);
    Ok(OracleReport {
        l: b.l,
        eigs_below: small.below,
        eigs_above: small.above,
        indeterminate: small.indeterminate,
        convergence_delta,
        monotone: mb && ma,
        unconverged,
    })
}

/// Bound-state counts at a single box size, without the convergence check.
pub fn oracle_counts<T: Scalar>(c: &CouplingParams<T>, k: Quasimomentum<T>, b: BoxSpec, delta: T) -> Result<OutsideCount<T>> {
    Ok(count_outside(&box_spectrum(c, k, b)?, &essential_band(k), delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn bx(l: usize, s: Sector) -> BoxSpec {
        BoxSpec::new(l, s).unwrap()
    }

    fn couplings(g: f64, l: f64, m: f64) -> CouplingParams<f64> {
        CouplingParams::new(g, l, m).unwrap()
    }

    #[test]
    fn box_validation() {
        assert!(BoxSpec::new(9, Sector::FullEven).is_err());
        let k = Quasimomentum::new(0.5, 0.0);
        let c = CouplingParams::zero();
        assert!(build_matrix(&c, k, bx(10, Sector::SwapSymmetric)).is_err());
        assert!(build_matrix(&c, k, bx(10, Sector::FullEven)).is_ok());
    }

    #[test]
    fn dimensions() {
        let c = CouplingParams::<f64>::zero();
        let k = Quasimomentum::zero();
        let n = |s| build_matrix(&c, k, bx(10, s)).unwrap().dim();
        // (21² + 1)/2 negation orbits; diagonal sites drop out of the odd sector.
        assert_eq!(n(Sector::FullEven), 221);
        assert_eq!(n(Sector::SwapSymmetric) + n(Sector::SwapAntisymmetric), 221);
        assert_eq!(n(Sector::SwapAntisymmetric), 100);
        let blocks = build_blocks(&c, k, bx(10, Sector::FullEven)).unwrap();
        assert_eq!(blocks.iter().map(|b| b.dim()).collect::<Vec<_>>(), vec![121, 100]);
    }

    #[test]
    fn onsite_entry_and_symmetry() {
        let c = couplings(1.5, -2.0, 0.7);
        let k = Quasimomentum::new(0.3, -1.1);
        let m = build_matrix(&c, k, bx(10, Sector::FullEven)).unwrap();
        let origin = (0..m.dim()).find(|&i| (m[(i, i)] - 5.5).abs() < 1e-15);
        assert!(origin.is_some());
        assert_eq!(m.asymmetry().0, 0.0);
    }

    #[test]
    fn blocks_reproduce_full_spectrum() {
        let c = couplings(-1.0, 3.0, -2.5);
        for (k, s) in [
            (Quasimomentum::new(0.7, -0.2), Sector::FullEven),
            (Quasimomentum::new(1.0, 1.0), Sector::SwapSymmetric),
            (Quasimomentum::new(1.0, 1.0), Sector::SwapAntisymmetric),
        ] {
            let b = bx(10, s);
            let full = eigensolve(&build_matrix(&c, k, b).unwrap()).unwrap();
            let split = box_spectrum(&c, k, b).unwrap();
            assert_eq!(full.len(), split.len());
            for (x, y) in full.iter().zip(&split) {
                assert!((x - y).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn free_box_inside_band() {
        let c = CouplingParams::zero();
        for k in [Quasimomentum::zero(), Quasimomentum::new(PI / 2.0, 0.0)] {
            let band = essential_band(k);
            let ev = box_spectrum(&c, k, bx(20, Sector::FullEven)).unwrap();
            assert!(ev[0] > band.e_min && *ev.last().unwrap() < band.e_max);
            let r = oracle_counts(&c, k, bx(10, Sector::FullEven), DEFAULT_DELTA).unwrap();
            assert_eq!(r.counts(), (0, 0));
        }
        let small = box_spectrum(&c, Quasimomentum::zero(), bx(10, Sector::FullEven)).unwrap();
        let large = box_spectrum(&c, Quasimomentum::zero(), bx(20, Sector::FullEven)).unwrap();
        assert!(large[0] < small[0]);
    }

    #[test]
    fn degenerate_band_is_diagonal() {
        let k = Quasimomentum::new(PI, PI);
        let c = couplings(1.0, 0.0, 0.0);
        let m = build_matrix(&c, k, bx(10, Sector::FullEven)).unwrap();
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                if i != j {
                    assert_eq!(m[(i, j)], 0.0);
                }
            }
        }
        let r = oracle_counts(&c, k, bx(10, Sector::FullEven), DEFAULT_DELTA).unwrap();
        assert_eq!(r.counts(), (0, 1));
        assert_eq!(r.above, vec![5.0]);
    }

    #[test]
    fn strong_attraction_binds() {
        let r = oracle_counts(&couplings(-5.0, 0.0, 0.0), Quasimomentum::zero(), bx(10, Sector::FullEven), DEFAULT_DELTA).unwrap();
        assert!(r.counts().0 >= 1);
    }

    #[test]
    fn eigensolve_basics() {
        assert_eq!(eigensolve(&SquareMatrix::<f64>::identity(5)).unwrap(), vec![1.0; 5]);
        let ev = eigensolve(&SquareMatrix::from_rows(&[[0.0f64, 1.0], [1.0, 0.0]])).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
        let bad = SquareMatrix::from_rows(&[[0.0, 1.0], [0.5, 0.0]]);
        assert!(matches!(eigensolve(&bad), Err(Error::NonSymmetric { .. })));
    }

    #[test]
    fn count_outside_margin() {
        let band = EssentialBand { e_min: 0.0, e_max: 8.0 };
        let r = count_outside(&[-1.0, -5e-5, 0.5, 8.00005, 9.0, 10.0], &band, 1e-4);
        assert_eq!(r.counts(), (1, 2));
        assert_eq!(r.indeterminate, vec![-5e-5, 8.00005]);
    }

    #[test]
    fn report_for_deep_states() {
        let c = couplings(0.0, 20.0, 8.0);
        let r = oracle_report(&c, Quasimomentum::zero(), bx(10, Sector::SwapAntisymmetric), DEFAULT_DELTA).unwrap();
        assert_eq!(r.counts(), (0, 2));
        assert!(!r.unconverged && r.monotone);
    }
}
