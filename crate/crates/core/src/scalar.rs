//! Floating-point abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar the spectral routines are generic over: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal, rounding to the nearest representable value.
    fn lit(x: f64) -> Self;

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// All eigenvalues of the dense symmetric matrix stored row-major in `a`, ascending.
    fn dense_sym_eigenvalues(n: usize, a: &[Self]) -> Option<Vec<Self>>;
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn lit(x: f64) -> Self {
                x as $t
            }

            fn dense_sym_eigenvalues(n: usize, a: &[Self]) -> Option<Vec<Self>> {
                debug_assert_eq!(a.len(), n * n);
                if n == 0 {
                    return Some(Vec::new());
                }
                let m = faer::Mat::<$t>::from_fn(n, n, |i, j| a[i * n + j]);
                let mut ev = m.self_adjoint_eigenvalues(faer::Side::Lower).ok()?;
                ev.sort_by(|x, y| x.total_cmp(y));
                Some(ev)
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);
