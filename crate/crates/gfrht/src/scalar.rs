//! Scalar abstraction so the whole toolkit works over `f32` or `f64`.
//!
//! The real scalar `T` carries its complex companion `T::Cplx` (the matching
//! `num_complex::Complex` width) together with the LAPACK/BLAS plumbing both
//! need. Spectral code is written against `T::Cplx`; signals, weights, and
//! metrics stay in `T`.

use std::fmt::Debug;
use std::os::raw::c_char;

use ndarray::{LinalgScalar, ScalarOperand};
use ndarray_linalg::{Lapack, Scalar as NdScalar};
use num_complex::{Complex32, Complex64};
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

use crate::error::Error;

/// Floating-point scalar usable as the graph weight / signal type.
///
/// Tolerance constants default to the `f64` contract values; the `f32` lane
/// scales them to that type's precision and is intended for rough, large-n
/// exploration rather than the validated pipelines.
pub trait Scalar:
    NdScalar<Real = Self, Complex = <Self as Scalar>::Cplx>
    + Lapack
    + Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + LinalgScalar
    + ScalarOperand
    + Default
    + Send
    + Sync
{
    /// Complex companion type (`Complex32` / `Complex64`).
    type Cplx: NdScalar<Real = Self, Complex = <Self as Scalar>::Cplx>
        + Lapack
        + LinalgScalar
        + ScalarOperand
        + NumAssign
        + Default
        + Debug
        + Send
        + Sync
        + 'static;

    /// Relative bound on the eigendecomposition reconstruction residual.
    const RECON_TOL: Self;
    /// Condition-number estimate above which an eigenbasis is rejected.
    const COND_LIMIT: Self;
    /// Default relative threshold under which `Im(lambda)` is snapped to zero.
    const IM_TOL_REL: Self;
    /// Relative gap under which eigenvalues of the transform matrix are
    /// treated as one degenerate cluster.
    const CLUSTER_GAP_REL: Self;
    /// Relative commutator norm under which a matrix is treated as normal.
    const NORMAL_TOL: Self;
    /// Decimal scale used when rounding values for deterministic ordering
    /// and cache keys (1e12 keeps twelve digits in `f64`).
    const KEY_SCALE: f64;

    /// Eigenvalues and eigenvectors of a Hermitian matrix, ascending order,
    /// via the divide-and-conquer LAPACK driver. `a` is column-major and is
    /// overwritten with the orthonormal eigenvectors.
    fn heevd(n: usize, a: &mut [Self::Cplx]) -> Result<Vec<Self>, Error>;

    /// Real-symmetric counterpart of [`Scalar::heevd`].
    fn syevd(n: usize, a: &mut [Self]) -> Result<Vec<Self>, Error>;
}

// lax only wires the QR-iteration drivers (zheev); the divide-and-conquer
// ones are substantially faster on the dense operators built here, so bind
// them directly. openblas is already linked by ndarray-linalg.
#[link(name = "openblas")]
extern "C" {
    fn zheevd_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut Complex64,
        lda: *const i32,
        w: *mut f64,
        work: *mut Complex64,
        lwork: *const i32,
        rwork: *mut f64,
        lrwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
    fn cheevd_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut Complex32,
        lda: *const i32,
        w: *mut f32,
        work: *mut Complex32,
        lwork: *const i32,
        rwork: *mut f32,
        lrwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
    fn dsyevd_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut f64,
        lda: *const i32,
        w: *mut f64,
        work: *mut f64,
        lwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
    fn ssyevd_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut f32,
        lda: *const i32,
        w: *mut f32,
        work: *mut f32,
        lwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
}

macro_rules! impl_heevd {
    ($re:ty, $cx:ty, $heevd:ident, $syevd:ident) => {
        fn heevd(n: usize, a: &mut [$cx]) -> Result<Vec<$re>, Error> {
            assert_eq!(a.len(), n * n);
            let nn = n as i32;
            let mut w = vec![<$re>::default(); n];
            let mut info = 0i32;
            let (jobz, uplo) = (b'V' as c_char, b'L' as c_char);
            let minus_one = -1i32;
            // workspace query
            let (mut wq, mut rwq, mut iwq) = (<$cx>::default(), <$re>::default(), 0i32);
            unsafe {
                $heevd(
                    &jobz,
                    &uplo,
                    &nn,
                    a.as_mut_ptr(),
                    &nn,
                    w.as_mut_ptr(),
                    &mut wq,
                    &minus_one,
                    &mut rwq,
                    &minus_one,
                    &mut iwq,
                    &minus_one,
                    &mut info,
                );
            }
            if info != 0 {
                return Err(Error::Backend(format!(
                    "heevd workspace query: info={info}"
                )));
            }
            let (lwork, lrwork, liwork) = (wq.re as i32, rwq as i32, iwq);
            let mut work = vec![<$cx>::default(); lwork.max(1) as usize];
            let mut rwork = vec![<$re>::default(); lrwork.max(1) as usize];
            let mut iwork = vec![0i32; liwork.max(1) as usize];
            unsafe {
                $heevd(
                    &jobz,
                    &uplo,
                    &nn,
                    a.as_mut_ptr(),
                    &nn,
                    w.as_mut_ptr(),
                    work.as_mut_ptr(),
                    &lwork,
                    rwork.as_mut_ptr(),
                    &lrwork,
                    iwork.as_mut_ptr(),
                    &liwork,
                    &mut info,
                );
            }
            if info != 0 {
                return Err(Error::Backend(format!("heevd: info={info}")));
            }
            Ok(w)
        }

        fn syevd(n: usize, a: &mut [$re]) -> Result<Vec<$re>, Error> {
            assert_eq!(a.len(), n * n);
            let nn = n as i32;
            let mut w = vec![<$re>::default(); n];
            let mut info = 0i32;
            let (jobz, uplo) = (b'V' as c_char, b'L' as c_char);
            let minus_one = -1i32;
            let (mut wq, mut iwq) = (<$re>::default(), 0i32);
            unsafe {
                $syevd(
                    &jobz,
                    &uplo,
                    &nn,
                    a.as_mut_ptr(),
                    &nn,
                    w.as_mut_ptr(),
                    &mut wq,
                    &minus_one,
                    &mut iwq,
                    &minus_one,
                    &mut info,
                );
            }
            if info != 0 {
                return Err(Error::Backend(format!(
                    "syevd workspace query: info={info}"
                )));
            }
            let (lwork, liwork) = (wq as i32, iwq);
            let mut work = vec![<$re>::default(); lwork.max(1) as usize];
            let mut iwork = vec![0i32; liwork.max(1) as usize];
            unsafe {
                $syevd(
                    &jobz,
                    &uplo,
                    &nn,
                    a.as_mut_ptr(),
                    &nn,
                    w.as_mut_ptr(),
                    work.as_mut_ptr(),
                    &lwork,
                    iwork.as_mut_ptr(),
                    &liwork,
                    &mut info,
                );
            }
            if info != 0 {
                return Err(Error::Backend(format!("syevd: info={info}")));
            }
            Ok(w)
        }
    };
}

impl Scalar for f64 {
    type Cplx = Complex64;

    const RECON_TOL: f64 = 1e-8;
    const COND_LIMIT: f64 = 1e12;
    const IM_TOL_REL: f64 = 1e-9;
    const CLUSTER_GAP_REL: f64 = 1e-8;
    const NORMAL_TOL: f64 = 1e-12;
    const KEY_SCALE: f64 = 1e12;

    impl_heevd!(f64, Complex64, zheevd_, dsyevd_);
}

impl Scalar for f32 {
    type Cplx = Complex32;

    const RECON_TOL: f32 = 1e-4;
    const COND_LIMIT: f32 = 1e6;
    const IM_TOL_REL: f32 = 1e-5;
    const CLUSTER_GAP_REL: f32 = 1e-4;
    const NORMAL_TOL: f32 = 1e-6;
    const KEY_SCALE: f64 = 1e6;

    impl_heevd!(f32, Complex32, cheevd_, ssyevd_);
}

/// Complex vector/matrix entry type for a given real scalar.
pub type Cplx<T> = <T as Scalar>::Cplx;
