//! Sign-change zero finding for determinants that tend to 1 away from the
//! essential band.
//!
//! Each side of the band is scanned on a geometric grid of distances from
//! the edge, so resolution is finest where zeros emerge from the continuum.
//! The scan is pushed outward until `|det - 1|` drops below the tail
//! tolerance. Sign changes are refined by bisection; local minima of `|det|`
//! without a sign change get one level of subdivision to catch close pairs.

use crate::error::{Error, Result};
use crate::lattice::EssentialBand;
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    Lower,
    Upper,
}

/// A real function of the spectral parameter that is continuous off the
/// band and tends to 1 at ±∞.
pub trait SpectralDeterminant<T: Scalar> {
    fn eval(&self, z: T) -> Result<T>;

    /// Value at the band edge itself, when the determinant has a finite limit
    /// there and the caller can supply it.
    fn edge_limit(&self, _edge: Edge) -> Option<T> {
        None
    }
}

impl<T: Scalar, F: Fn(T) -> Result<T>> SpectralDeterminant<T> for F {
    fn eval(&self, z: T) -> Result<T> {
        self(z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions<T> {
    /// Geometric scan points between `inner_offset` and `outer_offset`.
    pub points_per_side: usize,
    pub inner_offset: T,
    pub outer_offset: T,
    /// The scan continues outward until `|det - 1|` is below this.
    pub tail_tolerance: T,
    /// Give up if the tail tolerance is not met within this distance.
    pub max_reach: T,
    pub bisection_tolerance: T,
    /// Subintervals per scan interval around a local minimum of `|det|`.
    pub refine_factor: usize,
    /// Nested refinements of a local minimum before it is classified.
    pub refine_levels: usize,
    /// Zeros closer than this are flagged as a possible double root.
    pub min_separation: T,
    /// `|det|` below this at a refined local minimum without a sign change
    /// is flagged as a possible tangency.
    pub tangency_tolerance: T,
}

impl<T: Scalar> Default for ScanOptions<T> {
    fn default() -> Self {
        Self {
            points_per_side: 2000,
            inner_offset: T::lit(2e-8).max(T::epsilon() * T::lit(64.0)),
            outer_offset: T::lit(1e4),
            tail_tolerance: T::lit(1e-4),
            max_reach: T::lit(1e12),
            bisection_tolerance: T::lit(1e-10),
            refine_factor: 10,
            refine_levels: 8,
            min_separation: T::lit(1e-8).max(T::epsilon() * T::lit(64.0)),
            tangency_tolerance: T::lit(1e-8),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Zero<T> {
    pub z: T,
    /// Width of the final bisection bracket.
    pub bracket: T,
    /// `|det(z)|` at the reported location.
    pub residual: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InconclusiveReason {
    /// Two sign changes closer than the separation threshold.
    CloseRoots,
    /// `|det|` nearly touches zero without changing sign.
    Tangency,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inconclusive<T> {
    pub z: T,
    pub side: Edge,
    pub reason: InconclusiveReason,
}

/// Zeros of a determinant on both sides of the band, sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroReport<T> {
    pub below: Vec<Zero<T>>,
    pub above: Vec<Zero<T>>,
    pub inconclusive: Vec<Inconclusive<T>>,
    /// Outermost scanned point on each side.
    pub reach_below: T,
    pub reach_above: T,
}

impl<T: Scalar> ZeroReport<T> {
    pub fn counts(&self) -> (usize, usize) {
        (self.below.len(), self.above.len())
    }

    pub fn below_values(&self) -> Vec<T> {
        self.below.iter().map(|z| z.z).collect()
    }

    pub fn above_values(&self) -> Vec<T> {
        self.above.iter().map(|z| z.z).collect()
    }

    pub fn is_conclusive(&self) -> bool {
        self.inconclusive.is_empty()
    }

    /// Drops zeros within `delta` of the band and returns them separately.
    pub fn split_near_edge(&self, band: &EssentialBand<T>, delta: T) -> (Self, Vec<T>) {
        let mut near = Vec::new();
        let mut keep = |zs: &[Zero<T>], edge: T| -> Vec<Zero<T>> {
            zs.iter()
                .filter(|z| {
                    let far = (z.z - edge).abs() > delta;
                    if !far {
                        near.push(z.z);
                    }
                    far
                })
                .copied()
                .collect()
        };
        let below = keep(&self.below, band.e_min);
        let above = keep(&self.above, band.e_max);
        (
            Self {
                below,
                above,
                inconclusive: self.inconclusive.clone(),
                reach_below: self.reach_below,
                reach_above: self.reach_above,
            },
            near,
        )
    }
}

fn positive<T: Scalar>(v: T) -> bool {
    v >= T::zero()
}

struct SideScan<T> {
    zeros: Vec<Zero<T>>,
    inconclusive: Vec<Inconclusive<T>>,
    reach: T,
}

fn bisect<T: Scalar, D: SpectralDeterminant<T> + ?Sized>(
    det: &D,
    (mut za, mut va): (T, T),
    (mut zb, _vb): (T, T),
    tol: T,
) -> Result<Zero<T>> {
    let half = T::lit(0.5);
    for _ in 0..200 {
        if (zb - za).abs() <= tol {
            break;
        }
        let zm = za + (zb - za) * half;
        if zm == za || zm == zb {
            break;
        }
        // Midpoints may approach an edge closer than the determinant admits.
        let vm = match det.eval(zm) {
            Ok(v) => v,
            Err(Error::NearEdge { .. }) => break,
            Err(e) => return Err(e),
        };
        if positive(vm) == positive(va) {
            za = zm;
            va = vm;
        } else {
            zb = zm;
        }
    }
    let z = za + (zb - za) * half;
    let residual = det.eval(z).map(|v| v.abs()).unwrap_or(va.abs());
    Ok(Zero { z, bracket: (zb - za).abs(), residual })
}

fn is_sign_stable_minimum<T: Scalar>(a: (T, T), m: (T, T), b: (T, T)) -> bool {
    let same = positive(a.1) == positive(m.1) && positive(m.1) == positive(b.1);
    same && m.1.abs() < a.1.abs() && m.1.abs() < b.1.abs()
}

type Zoomed<T> = (Vec<Zero<T>>, (T, T));

/// Subdivides `[a, b]` around the minimum `m` and bisects any sign change;
/// otherwise descends into the finest local minimum, up to
/// `opts.refine_levels` times. Returns the zeros found and the smallest
/// `|det|` sample.
fn zoom<T: Scalar, D: SpectralDeterminant<T> + ?Sized>(
    det: &D,
    mut a: (T, T),
    mut m: (T, T),
    mut b: (T, T),
    opts: &ScanOptions<T>,
) -> Result<Zoomed<T>> {
    let r = opts.refine_factor.max(2);
    let mut lowest = m;
    for _ in 0..opts.refine_levels.max(1) {
        if (b.0 - a.0).abs() < opts.min_separation {
            break;
        }
        let mut fine = Vec::with_capacity(2 * r + 1);
        fine.push(a);
        for (lo, hi) in [(a, m), (m, b)] {
            for j in 1..r {
                let t = T::lit(j as f64) / T::lit(r as f64);
                let z = lo.0 + (hi.0 - lo.0) * t;
                fine.push((z, det.eval(z)?));
            }
            fine.push(hi);
        }
        let mut zeros = Vec::new();
        for w in fine.windows(2) {
            if positive(w[0].1) != positive(w[1].1) {
                zeros.push(bisect(det, w[0], w[1], opts.bisection_tolerance)?);
            }
        }
        if !zeros.is_empty() {
            return Ok((zeros, lowest));
        }
        let i = (1..fine.len() - 1)
            .min_by(|&x, &y| fine[x].1.abs().partial_cmp(&fine[y].1.abs()).unwrap())
            .unwrap();
        lowest = if fine[i].1.abs() < lowest.1.abs() { fine[i] } else { lowest };
        if !is_sign_stable_minimum(fine[i - 1], fine[i], fine[i + 1]) {
            break;
        }
        (a, m, b) = (fine[i - 1], fine[i], fine[i + 1]);
    }
    Ok((Vec::new(), lowest))
}

fn scan_side<T: Scalar, D: SpectralDeterminant<T> + ?Sized>(
    det: &D,
    edge_value: T,
    side: Edge,
    edge_limit: Option<T>,
    opts: &ScanOptions<T>,
) -> Result<SideScan<T>> {
    let dir = match side {
        Edge::Upper => T::one(),
        Edge::Lower => -T::one(),
    };
    let z_at = |d: T| edge_value + dir * d;
    let n = opts.points_per_side.max(2);
    let log_ratio = (opts.outer_offset / opts.inner_offset).ln() / T::lit((n - 1) as f64);
    let dist = |k: usize| opts.inner_offset * (log_ratio * T::lit(k as f64)).exp();

    // (z, det) in order of increasing distance from the edge.
    let mut pts: Vec<(T, T)> = Vec::with_capacity(n + 1);
    if let Some(v) = edge_limit {
        pts.push((edge_value, v));
    }
    let mut k = 0;
    loop {
        let d = dist(k);
        let z = z_at(d);
        let v = det.eval(z)?;
        pts.push((z, v));
        k += 1;
        if k >= n && (v - T::one()).abs() < opts.tail_tolerance {
            break;
        }
        if d > opts.max_reach {
            return Err(Error::NoTail { reach: d.as_f64() });
        }
    }
    let reach = pts.last().map(|p| p.0).unwrap_or(edge_value);

    let mut zeros = Vec::new();
    let mut inconclusive = Vec::new();
    for w in pts.windows(2) {
        if positive(w[0].1) != positive(w[1].1) {
            zeros.push(bisect(det, w[0], w[1], opts.bisection_tolerance)?);
        }
    }

    // Local minima of |det| with no adjacent sign change.
    for i in 1..pts.len().saturating_sub(1) {
        let (a, m, b) = (pts[i - 1], pts[i], pts[i + 1]);
        if !is_sign_stable_minimum(a, m, b) {
            continue;
        }
        let (found, lowest) = zoom(det, a, m, b, opts)?;
        if found.is_empty() {
            if lowest.1.abs() < opts.tangency_tolerance {
                inconclusive.push(Inconclusive { z: lowest.0, side, reason: InconclusiveReason::Tangency });
            }
        } else {
            zeros.extend(found);
        }
    }

    zeros.sort_by(|x, y| x.z.partial_cmp(&y.z).unwrap());
    let mut close = vec![false; zeros.len()];
    for i in 1..zeros.len() {
        if (zeros[i].z - zeros[i - 1].z).abs() < opts.min_separation {
            close[i] = true;
            close[i - 1] = true;
        }
    }
    let mut kept = Vec::with_capacity(zeros.len());
    for (zero, is_close) in zeros.into_iter().zip(close) {
        if is_close {
            inconclusive.push(Inconclusive { z: zero.z, side, reason: InconclusiveReason::CloseRoots });
        } else {
            kept.push(zero);
        }
    }
    Ok(SideScan { zeros: kept, inconclusive, reach })
}

/// All sign-change zeros of `det` outside `band`.
///
/// For a degenerate band the two sides are scanned away from the common
/// edge value.
pub fn find_zeros<T: Scalar, D: SpectralDeterminant<T> + ?Sized>(
    det: &D,
    band: &EssentialBand<T>,
    opts: &ScanOptions<T>,
) -> Result<ZeroReport<T>> {
    let lower = scan_side(det, band.e_min, Edge::Lower, det.edge_limit(Edge::Lower), opts)?;
    let upper = scan_side(det, band.e_max, Edge::Upper, det.edge_limit(Edge::Upper), opts)?;
    let mut below = lower.zeros;
    below.sort_by(|x, y| x.z.partial_cmp(&y.z).unwrap());
    let mut inconclusive = lower.inconclusive;
    inconclusive.extend(upper.inconclusive);
    Ok(ZeroReport {
        below,
        above: upper.zeros,
        inconclusive,
        reach_below: lower.reach,
        reach_above: upper.reach,
    })
}

/// Determinant whose zeros are eigenvalues of a self-adjoint operator, with
/// access to the exact number of eigenvalues beyond a point.
pub trait InertiaCount<T: Scalar>: SpectralDeterminant<T> {
    /// Eigenvalues below `z` for [`Edge::Lower`], above `z` for [`Edge::Upper`].
    fn count_beyond(&self, z: T, side: Edge) -> Result<usize>;
}

/// Splits `(near, far)` until each jump of the count is isolated to within
/// `tol`; each isolated jump of size `m` yields `m` coincident zeros.
fn isolate<T: Scalar, D: InertiaCount<T> + ?Sized>(
    det: &D,
    side: Edge,
    near: (T, usize),
    far: (T, usize),
    tol: T,
    out: &mut Vec<Zero<T>>,
) -> Result<()> {
    let jumps = near.1.saturating_sub(far.1);
    if jumps == 0 {
        return Ok(());
    }
    let mid = near.0 + (far.0 - near.0) * T::lit(0.5);
    let width = (far.0 - near.0).abs();
    if width <= tol || mid == near.0 || mid == far.0 {
        let residual = det.eval(mid).map(|v| v.abs()).unwrap_or(T::nan());
        out.extend((0..jumps).map(|_| Zero { z: mid, bracket: width, residual }));
        return Ok(());
    }
    let cm = det.count_beyond(mid, side)?;
    isolate(det, side, near, (mid, cm), tol, out)?;
    isolate(det, side, (mid, cm), far, tol, out)
}

fn locate_side<T: Scalar, D: InertiaCount<T> + ?Sized>(
    det: &D,
    edge_value: T,
    side: Edge,
    opts: &ScanOptions<T>,
) -> Result<(Vec<Zero<T>>, T)> {
    let dir = match side {
        Edge::Upper => T::one(),
        Edge::Lower => -T::one(),
    };
    let n = opts.points_per_side.max(2);
    let log_ratio = (opts.outer_offset / opts.inner_offset).ln() / T::lit((n - 1) as f64);
    let mut zeros = Vec::new();
    let mut prev: Option<(T, usize)> = None;
    let mut k = 0;
    loop {
        let d = opts.inner_offset * (log_ratio * T::lit(k as f64)).exp();
        let z = edge_value + dir * d;
        let c = det.count_beyond(z, side)?;
        if let Some(p) = prev {
            isolate(det, side, p, (z, c), opts.bisection_tolerance, &mut zeros)?;
        }
        prev = Some((z, c));
        k += 1;
        if k >= n && c == 0 && (det.eval(z)? - T::one()).abs() < opts.tail_tolerance {
            break;
        }
        if d > opts.max_reach {
            return Err(Error::NoTail { reach: d.as_f64() });
        }
    }
    zeros.sort_by(|x, y| x.z.partial_cmp(&y.z).unwrap());
    Ok((zeros, prev.map(|p| p.0).unwrap_or(edge_value)))
}

/// All zeros outside `band` located through the eigenvalue count, with
/// multiplicity. States closer to an edge than `opts.inner_offset` are not
/// reported.
pub fn locate_zeros<T: Scalar, D: InertiaCount<T> + ?Sized>(
    det: &D,
    band: &EssentialBand<T>,
    opts: &ScanOptions<T>,
) -> Result<ZeroReport<T>> {
    let (below, reach_below) = locate_side(det, band.e_min, Edge::Lower, opts)?;
    let (above, reach_above) = locate_side(det, band.e_max, Edge::Upper, opts)?;
    Ok(ZeroReport { below, above, inconclusive: Vec::new(), reach_below, reach_above })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn band08() -> EssentialBand<f64> {
        EssentialBand { e_min: 0.0, e_max: 8.0 }
    }

    #[test]
    fn constant_one_has_no_zeros() {
        let r = find_zeros(&|_z: f64| Ok(1.0), &band08(), &ScanOptions::default()).unwrap();
        assert_eq!(r.counts(), (0, 0));
        assert!(r.is_conclusive());
    }

    #[test]
    fn rational_determinant_zeros_located() {
        // (1 - 2/(z-8)) (1 + 3/(z-8)) on the upper side: zeros at 10 and 5 (in band);
        // below: 1 + 1/z has a zero at -1.
        let det = |z: f64| {
            Ok(if z > 8.0 { (1.0 - 2.0 / (z - 8.0)) * (1.0 + 3.0 / (z - 8.0)) } else { 1.0 + 1.0 / z })
        };
        let r = find_zeros(&det, &band08(), &ScanOptions::default()).unwrap();
        assert_eq!(r.counts(), (1, 1));
        assert!((r.below[0].z + 1.0).abs() < 1e-9);
        assert!((r.above[0].z - 10.0).abs() < 1e-9);
        assert!(r.above[0].bracket <= 1e-10);
    }

    #[test]
    fn close_pair_found_by_refinement() {
        // Two zeros 1e-3 apart near z = 9: inside a single refined interval.
        let det = |z: f64| Ok(if z > 8.0 { ((z - 9.0) * (z - 9.001) + 1e-9) / ((z - 8.0) * (z - 8.0)) } else { 1.0 });
        let r = find_zeros(&det, &band08(), &ScanOptions::default()).unwrap();
        assert_eq!(r.above.len(), 2, "{r:?}");
        assert!((r.above[0].z - 9.0).abs() < 1e-5 && (r.above[1].z - 9.001).abs() < 1e-5);
    }

    #[test]
    fn tangency_flagged() {
        let det = |z: f64| Ok(if z > 8.0 { (z - 9.5).powi(2) / ((z - 7.0) * (z - 7.0)) } else { 1.0 });
        let r = find_zeros(&det, &band08(), &ScanOptions::default()).unwrap();
        assert_eq!(r.counts(), (0, 0));
        assert!(r.inconclusive.iter().any(|i| i.reason == InconclusiveReason::Tangency
            && (i.z - 9.5).abs() < 0.05));
    }

    #[test]
    fn edge_limit_detects_zero_hugging_the_edge() {
        struct Hug;
        impl SpectralDeterminant<f64> for Hug {
            fn eval(&self, z: f64) -> Result<f64> {
                Ok(1.0 - 5e-10 / (z - 8.0).abs())
            }
            fn edge_limit(&self, edge: Edge) -> Option<f64> {
                Some(if edge == Edge::Upper { -1.0 } else { 1.0 })
            }
        }
        let r = find_zeros(&Hug, &EssentialBand { e_min: 8.0, e_max: 8.0 }, &ScanOptions::default());
        let r = r.unwrap();
        assert_eq!(r.above.len(), 1);
        assert!(r.above[0].z > 8.0 && r.above[0].z < 8.0 + 2e-8);
    }

    #[test]
    fn missing_tail_is_an_error() {
        let opts = ScanOptions { max_reach: 1e6, ..ScanOptions::default() };
        let r = find_zeros(&|_z: f64| Ok(2.0), &band08(), &opts);
        assert!(matches!(r, Err(Error::NoTail { .. })));
    }

    /// Two-level system with a double eigenvalue at 10 and a simple one at -2.
    struct Diagonal;

    impl SpectralDeterminant<f64> for Diagonal {
        fn eval(&self, z: f64) -> Result<f64> {
            Ok(if z > 8.0 { ((z - 10.0) / (z - 8.0)).powi(2) } else { (z + 2.0) / z })
        }
    }

    impl InertiaCount<f64> for Diagonal {
        fn count_beyond(&self, z: f64, side: Edge) -> Result<usize> {
            Ok(match side {
                Edge::Lower => usize::from(-2.0 < z),
                Edge::Upper => 2 * usize::from(10.0 > z),
            })
        }
    }

    #[test]
    fn inertia_location_keeps_multiplicity() {
        let r = locate_zeros(&Diagonal, &band08(), &ScanOptions::default()).unwrap();
        assert_eq!(r.counts(), (1, 2));
        assert!((r.below[0].z + 2.0).abs() < 1e-9);
        assert!(r.above.iter().all(|z| (z.z - 10.0).abs() < 1e-9 && z.residual < 1e-15));
        // The sign-change scan cannot see the double root.
        let s = find_zeros(&Diagonal, &band08(), &ScanOptions::default()).unwrap();
        assert_eq!(s.counts(), (1, 0));
    }
}
