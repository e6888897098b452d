//! Graph Fourier transform operator and its fractional powers.
//!
//! The forward transform matrix is the inverse eigenvector matrix of the
//! adjacency; fractional powers come from the transform matrix's own
//! eigendecomposition, raising its eigenvalues to real powers with the
//! principal logarithm.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use ndarray::{Array1, Array2, ArrayView1};
use ndarray_linalg::{Inverse, Scalar as NdScalar};
use num_traits::{Float, One, Zero};

use crate::eig::{eig_complex, frob, validate, EigenSystem};
use crate::error::{Error, Result};
use crate::scalar::{Cplx, Scalar};

/// Forward/inverse graph Fourier transform pair, a thin view over the
/// eigendecomposition it was built from.
#[derive(Debug, Clone)]
pub struct GftOperator<T: Scalar> {
    eig: Arc<EigenSystem<T>>,
}

impl<T: Scalar> GftOperator<T> {
    pub fn new(eig: Arc<EigenSystem<T>>) -> Self {
        Self { eig }
    }

    pub fn eigensystem(&self) -> &Arc<EigenSystem<T>> {
        &self.eig
    }

    /// Forward transform matrix (`U^{-1}`).
    pub fn forward(&self) -> &Array2<Cplx<T>> {
        self.eig.vectors_inv()
    }

    /// Inverse transform matrix (`U`).
    pub fn inverse(&self) -> &Array2<Cplx<T>> {
        self.eig.vectors()
    }

    /// Spectrum of a signal.
    pub fn apply(&self, x: ArrayView1<Cplx<T>>) -> Array1<Cplx<T>> {
        self.forward().dot(&x)
    }

    /// Signal from its spectrum.
    pub fn apply_inverse(&self, spectrum: ArrayView1<Cplx<T>>) -> Array1<Cplx<T>> {
        self.inverse().dot(&spectrum)
    }
}

/// Fractional-power family of the graph Fourier transform matrix.
///
/// Construction eigendecomposes the transform matrix once; each requested
/// order is materialized as a dense matrix and cached under its order
/// rounded to twelve decimals. Reads share the cache lock-free once an
/// order is present; concurrent first requests may both compute the same
/// matrix, which is harmless because the computation is deterministic.
#[derive(Debug)]
pub struct FrftOperator<T: Scalar> {
    n: usize,
    v: Array2<Cplx<T>>,
    d: Array1<Cplx<T>>,
    v_inv: Array2<Cplx<T>>,
    cond_v: T,
    cache: RwLock<HashMap<i64, Arc<Array2<Cplx<T>>>>>,
}

/// Largest supported |order|; grid searches stay well inside this.
pub const MAX_ORDER: f64 = 8.0;

impl<T: Scalar> FrftOperator<T> {
    /// Eigendecomposes the forward transform matrix.
    ///
    /// Within numerically degenerate eigenvalue clusters (pairwise gap below
    /// `CLUSTER_GAP_REL * max|d|`) the eigenbasis is replaced by a pivoted
    /// orthonormalization and the cluster's eigenvalues by their mean;
    /// inside such subspaces the basis is mathematically arbitrary, and
    /// fixing it keeps fractional powers reproducible across solvers.
    pub fn new(gft: &GftOperator<T>) -> Result<Self> {
        let f = gft.forward().to_owned();
        // no imaginary snapping here: the transform matrix's eigenvalues are
        // genuinely complex and powers are sensitive to small perturbations
        let dec = eig_complex(&f, T::zero())?;
        let unitary = dec.unitary;
        let (mut d, mut v, mut v_inv) = (dec.values, dec.vectors, dec.vectors_inv);
        let n = d.len();

        let max_mag = d
            .iter()
            .map(|z| z.abs())
            .fold(T::zero(), |a, b| if b > a { b } else { a });
        let gap = T::CLUSTER_GAP_REL * max_mag;
        let clusters = cluster_indices(&d, gap);
        let mut modified = false;
        for cluster in clusters {
            if cluster.len() < 2 {
                continue;
            }
            modified = true;
            let mut mean = Cplx::<T>::default();
            for &k in &cluster {
                mean += d[k];
            }
            let mean = mean.mul_real(T::one() / T::from_usize(cluster.len()).unwrap());
            let mut block = Array2::<Cplx<T>>::default((n, cluster.len()));
            for (c, &k) in cluster.iter().enumerate() {
                block.column_mut(c).assign(&v.column(k));
            }
            let q = pivoted_orthonormalize(&block)?;
            for (c, &k) in cluster.iter().enumerate() {
                v.column_mut(k).assign(&q.column(c));
                d[k] = mean;
            }
        }
        let cond_v = if modified {
            v_inv = if unitary {
                let vt = v.t();
                vt.mapv(|z| z.conj())
            } else {
                v.inv().map_err(|_| Error::NotDiagonalizable {
                    residual: f64::INFINITY,
                    cond: f64::INFINITY,
                })?
            };
            let (_residual, cond_v) = validate(&f, &d, &v, &v_inv, unitary)?;
            cond_v
        } else {
            dec.cond
        };
        Ok(Self {
            n,
            v,
            d,
            v_inv,
            cond_v,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Eigenvalues of the transform matrix.
    pub fn eigenvalues(&self) -> &Array1<Cplx<T>> {
        &self.d
    }

    /// Frobenius condition estimate of the transform eigenbasis.
    pub fn cond(&self) -> T {
        self.cond_v
    }

    fn order_key(alpha: T) -> Result<i64> {
        let a = alpha.to_f64().unwrap_or(f64::NAN);
        if !a.is_finite() || a.abs() > MAX_ORDER {
            return Err(Error::AlphaOutOfRange { alpha: a });
        }
        Ok((a * T::KEY_SCALE).round() as i64)
    }

    /// The transform matrix raised to `alpha`, cached.
    pub fn power(&self, alpha: T) -> Result<Arc<Array2<Cplx<T>>>> {
        let key = Self::order_key(alpha)?;
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let mat = if key == 0 {
            Array2::from_shape_fn((self.n, self.n), |(i, j)| {
                if i == j {
                    T::complex(1.0, 0.0)
                } else {
                    Cplx::<T>::default()
                }
            })
        } else {
            // d^alpha = exp(alpha * Log d), principal branch; zero
            // eigenvalues only power to zero for positive orders
            let mut powered = Array1::<Cplx<T>>::default(self.n);
            for (k, dk) in self.d.iter().enumerate() {
                powered[k] = if dk.abs() == T::zero() {
                    if alpha > T::zero() {
                        Cplx::<T>::default()
                    } else {
                        return Err(Error::ZeroEigenvalueNegativePower);
                    }
                } else {
                    dk.ln().mul_real(alpha).exp()
                };
            }
            let mut scaled = self.v.clone();
            for (mut col, p) in scaled.columns_mut().into_iter().zip(powered.iter()) {
                let p = *p;
                col.mapv_inplace(|z| z * p);
            }
            scaled.dot(&self.v_inv)
        };
        let arc = Arc::new(mat);
        self.cache
            .write()
            .expect("cache lock")
            .insert(key, arc.clone());
        Ok(arc)
    }

    /// Fractional transform of a signal: `F^alpha x`.
    ///
    /// Order zero returns the input exactly.
    pub fn gfrft(&self, alpha: T, x: ArrayView1<Cplx<T>>) -> Result<Array1<Cplx<T>>> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        if Self::order_key(alpha)? == 0 {
            return Ok(x.to_owned());
        }
        Ok(self.power(alpha)?.dot(&x))
    }

    /// Inverse fractional transform: the transform with order `-alpha`.
    pub fn igfrft(&self, alpha: T, spectrum: ArrayView1<Cplx<T>>) -> Result<Array1<Cplx<T>>> {
        self.gfrft(-alpha, spectrum)
    }
}

/// Groups indices whose values sit within `gap` of each other (union-find
/// over all pairs, so wrap-around argument splits still merge). Returned
/// clusters and their members are in ascending index order.
fn cluster_indices<C: NdScalar>(d: &Array1<C>, gap: C::Real) -> Vec<Vec<usize>> {
    let n = d.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (d[i] - d[j]).abs() < gap {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

/// Modified Gram-Schmidt with column pivoting and a reorthogonalization
/// sweep. Pivots on the largest remaining column norm, ties to the lowest
/// index, so the basis is deterministic.
fn pivoted_orthonormalize<C: NdScalar>(block: &Array2<C>) -> Result<Array2<C>> {
    let (n, m) = block.dim();
    let mut cols: Vec<Array1<C>> = (0..m).map(|j| block.column(j).to_owned()).collect();
    let mut q: Vec<Array1<C>> = Vec::with_capacity(m);
    let mut remaining: Vec<usize> = (0..m).collect();
    while q.len() < m {
        // pivot
        let mut best = C::Real::neg_infinity();
        let mut pick = 0;
        for (slot, &c) in remaining.iter().enumerate() {
            let norm2 = cols[c]
                .iter()
                .map(|z| z.square())
                .fold(C::Real::zero(), |a, b| a + b);
            if norm2 > best {
                best = norm2;
                pick = slot;
            }
        }
        let c = remaining.remove(pick);
        let mut vec = cols[c].clone();
        for _ in 0..2 {
            for qi in &q {
                let mut proj = C::zero();
                for (a, b) in qi.iter().zip(vec.iter()) {
                    proj += a.conj() * *b;
                }
                for (vt, qt) in vec.iter_mut().zip(qi.iter()) {
                    *vt -= *qt * proj;
                }
            }
        }
        let norm = Float::sqrt(
            vec.iter()
                .map(|z| z.square())
                .fold(C::Real::zero(), |a, b| a + b),
        );
        if norm <= C::Real::epsilon() * C::real(n as f64) {
            return Err(Error::NotDiagonalizable {
                residual: f64::INFINITY,
                cond: f64::INFINITY,
            });
        }
        let inv = C::Real::one() / norm;
        vec.mapv_inplace(|z| z.mul_real(inv));
        // project the not-yet-chosen columns off the new direction so the
        // pivot norms reflect what is left to span
        for &rc in &remaining {
            let mut proj = C::zero();
            for (a, b) in vec.iter().zip(cols[rc].iter()) {
                proj += a.conj() * *b;
            }
            let dir = vec.clone();
            for (ct, qt) in cols[rc].iter_mut().zip(dir.iter()) {
                *ct -= *qt * proj;
            }
        }
        q.push(vec);
    }
    let mut out = Array2::<C>::zeros((n, m));
    for (j, col) in q.into_iter().enumerate() {
        out.column_mut(j).assign(&col);
    }
    Ok(out)
}

/// Lifts a real signal into the complex companion type.
pub fn to_complex<T: Scalar>(x: &Array1<T>) -> Array1<Cplx<T>> {
    x.mapv(|v| v.as_c())
}

/// Frobenius distance between two complex matrices.
pub fn matrix_distance<C: NdScalar>(a: &Array2<C>, b: &Array2<C>) -> C::Real {
    let diff = a - b;
    frob(&diff)
}
