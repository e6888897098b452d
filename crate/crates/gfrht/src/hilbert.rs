//! The dual-parameter fractional Hilbert transform on graphs.
//!
//! A diagonal spectral mask classifies each adjacency eigenvalue by the sign
//! of its imaginary part and assigns `exp(-i*beta)`, `cos(beta)`, or
//! `exp(i*beta)`. The transform conjugates that mask into the fractional
//! domain of order `alpha`: forward fractional transform, mask, inverse
//! fractional transform. At `(alpha, beta) = (1, pi/2)` this is the
//! conventional graph Hilbert transform; at `beta = 0` it is the identity.

use std::sync::Arc;

use ndarray::{Array1, Array2, ArrayView1};
use ndarray_linalg::{Scalar as NdScalar, Solve, SVD};
use num_traits::Float;

use crate::eig::EigenSystem;
use crate::error::{Error, Result};
use crate::scalar::{Cplx, Scalar};
use crate::transforms::{FrftOperator, GftOperator};

/// Classification of an adjacency eigenvalue by its imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumClass {
    PosIm,
    Zero,
    NegIm,
}

/// Classifies eigenvalues using the decomposition's imaginary-part
/// threshold.
pub fn classify<T: Scalar>(eig: &EigenSystem<T>) -> Vec<SpectrumClass> {
    let tol = eig.im_tol();
    eig.values()
        .iter()
        .map(|z| {
            let im = z.im();
            if im > tol {
                SpectrumClass::PosIm
            } else if im < -tol {
                SpectrumClass::NegIm
            } else {
                SpectrumClass::Zero
            }
        })
        .collect()
}

/// Reduces an angle into `[0, 2*pi)` and quantizes it to the deterministic
/// key grid, so `beta` and `beta + 2*pi*k` produce bit-identical masks.
pub fn reduce_angle<T: Scalar>(beta: T) -> T {
    let tau = T::TAU();
    let mut r = beta - tau * Float::floor(beta / tau);
    if r >= tau {
        r -= tau;
    }
    if r < T::zero() {
        r += tau;
    }
    let scale = T::from_f64(T::KEY_SCALE).unwrap();
    Float::round(r * scale) / scale
}

/// Diagonal transfer mask of the fractional Hilbert transform.
#[derive(Debug, Clone)]
pub struct TransferDiag<T: Scalar> {
    entries: Array1<Cplx<T>>,
    beta: T,
    classes: Vec<SpectrumClass>,
}

impl<T: Scalar> TransferDiag<T> {
    /// Builds the mask for angle `beta` (stored reduced into `[0, 2*pi)`).
    pub fn new(eig: &EigenSystem<T>, beta: T) -> Self {
        let beta = reduce_angle(beta);
        let classes = classify(eig);
        let (c, s) = (Float::cos(beta), Float::sin(beta));
        let entries = classes
            .iter()
            .map(|class| match class {
                SpectrumClass::PosIm => T::complex(c, -s),
                SpectrumClass::Zero => T::complex(c, T::zero()),
                SpectrumClass::NegIm => T::complex(c, s),
            })
            .collect();
        Self {
            entries,
            beta,
            classes,
        }
    }

    pub fn entries(&self) -> &Array1<Cplx<T>> {
        &self.entries
    }

    /// Angle, reduced into `[0, 2*pi)`.
    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn classes(&self) -> &[SpectrumClass] {
        &self.classes
    }
}

/// A fully-specified transform instance: fractional order, angle, and the
/// operators of the underlying graph. Cheap to clone; safe to share across
/// threads once built.
#[derive(Debug, Clone)]
pub struct HilbertConfig<T: Scalar> {
    alpha: T,
    frft: Arc<FrftOperator<T>>,
    eig: Arc<EigenSystem<T>>,
    transfer: TransferDiag<T>,
}

impl<T: Scalar> HilbertConfig<T> {
    pub fn new(
        alpha: T,
        beta: T,
        frft: Arc<FrftOperator<T>>,
        eig: Arc<EigenSystem<T>>,
    ) -> Result<Self> {
        if frft.n() != eig.n() {
            return Err(Error::LengthMismatch {
                expected: eig.n(),
                got: frft.n(),
            });
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::BadSpec(format!(
                "transform parameters must be finite, got ({alpha}, {beta})"
            )));
        }
        let transfer = TransferDiag::new(&eig, beta);
        Ok(Self {
            alpha,
            frft,
            eig,
            transfer,
        })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Angle, reduced into `[0, 2*pi)`.
    pub fn beta(&self) -> T {
        self.transfer.beta()
    }

    pub fn transfer(&self) -> &TransferDiag<T> {
        &self.transfer
    }

    pub fn frft(&self) -> &Arc<FrftOperator<T>> {
        &self.frft
    }

    pub fn eigensystem(&self) -> &Arc<EigenSystem<T>> {
        &self.eig
    }

    /// The fractional Hilbert transform: fractional transform of order
    /// `alpha`, diagonal mask, inverse fractional transform.
    ///
    /// The output is complex in general, even for real input; callers that
    /// need a single real curve take the real part explicitly and keep the
    /// imaginary part for audit.
    pub fn gfrht(&self, x: ArrayView1<Cplx<T>>) -> Result<Array1<Cplx<T>>> {
        let spectrum = self.frft.gfrft(self.alpha, x)?;
        let masked = &spectrum * self.transfer.entries();
        self.frft.igfrft(self.alpha, masked.view())
    }

    /// Convenience wrapper for real-valued signals.
    pub fn gfrht_real(&self, x: &Array1<T>) -> Result<Array1<Cplx<T>>> {
        for (i, v) in x.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteSignal { index: i });
            }
        }
        self.gfrht(crate::transforms::to_complex(x).view())
    }

    /// Convolution-kernel view: the inverse fractional transform of the
    /// mask diagonal. Filtering with this kernel in the fractional domain
    /// equals the transform itself.
    pub fn fractional_kernel(&self) -> Result<Array1<Cplx<T>>> {
        Ok(self.frft.power(-self.alpha)?.dot(self.transfer.entries()))
    }

    /// Fractional-domain shift operator: the adjacency eigenvalue diagonal
    /// conjugated by the fractional transform pair.
    pub fn fractional_shift(&self) -> Result<Array2<Cplx<T>>> {
        let forward = self.frft.power(self.alpha)?;
        let mut scaled = (*forward).clone();
        for (mut row, lam) in scaled.rows_mut().into_iter().zip(self.eig.values().iter()) {
            let l = *lam;
            row.mapv_inplace(|z| z * l);
        }
        Ok(self.frft.power(-self.alpha)?.dot(&scaled))
    }
}

/// Conventional graph Hilbert transform: spectral masking with the exact
/// values `-i` / `0` / `+i` by eigenvalue class. Components on real
/// eigenvalues are annihilated.
pub fn ght<T: Scalar>(
    gft: &GftOperator<T>,
    eig: &EigenSystem<T>,
    x: ArrayView1<Cplx<T>>,
) -> Array1<Cplx<T>> {
    let classes = classify(eig);
    let mut spectrum = gft.apply(x);
    for (z, class) in spectrum.iter_mut().zip(classes.iter()) {
        *z = match class {
            SpectrumClass::PosIm => *z * T::complex(0.0, -1.0),
            SpectrumClass::Zero => Cplx::<T>::default(),
            SpectrumClass::NegIm => *z * T::complex(0.0, 1.0),
        };
    }
    gft.apply_inverse(spectrum.view())
}

/// Real-signal convenience wrapper around [`ght`].
pub fn ght_real<T: Scalar>(
    gft: &GftOperator<T>,
    eig: &EigenSystem<T>,
    x: &Array1<T>,
) -> Array1<Cplx<T>> {
    ght(gft, eig, crate::transforms::to_complex(x).view())
}

/// Solves for polynomial filter coefficients reproducing the transfer mask
/// on the adjacency spectrum: `sum_l h_l lambda^l = mask(lambda)` for each
/// distinct eigenvalue. Duplicate eigenvalues collapse to one equation;
/// their mask values agree by construction.
pub fn poly_filter_coeffs<T: Scalar>(eig: &EigenSystem<T>, beta: T) -> Result<Vec<Cplx<T>>> {
    let transfer = TransferDiag::new(eig, beta);
    let values = eig.values();
    let n = values.len();

    // group numerically equal eigenvalues (same class) into one node
    let max_mag = values
        .iter()
        .map(|z| z.abs())
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    let gap = T::CLUSTER_GAP_REL * Float::max(T::one(), max_mag);
    let mut nodes: Vec<Cplx<T>> = Vec::new();
    let mut rhs_vals: Vec<Cplx<T>> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        let mut found = None;
        for (g, node) in nodes.iter().enumerate() {
            if (*node - values[k]).abs() < gap
                && transfer.classes()[members[g][0]] == transfer.classes()[k]
            {
                found = Some(g);
                break;
            }
        }
        match found {
            Some(g) => members[g].push(k),
            None => {
                nodes.push(values[k]);
                rhs_vals.push(transfer.entries()[k]);
                members.push(vec![k]);
            }
        }
    }
    // refine each node to its group mean
    for (g, member) in members.iter().enumerate() {
        let mut mean = Cplx::<T>::default();
        for &k in member {
            mean += values[k];
        }
        nodes[g] = mean.mul_real(T::one() / T::from_usize(member.len()).unwrap());
    }

    let l = nodes.len();
    let mut vander = Array2::<Cplx<T>>::default((l, l));
    for (row, node) in nodes.iter().enumerate() {
        let mut p = T::complex(1.0, 0.0);
        for col in 0..l {
            vander[(row, col)] = p;
            p *= *node;
        }
    }

    // reject spectra the polynomial path cannot represent
    let (_, sv, _) = vander.svd(false, false)?;
    let smax = sv.iter().fold(T::zero(), |a, &b| if b > a { b } else { a });
    let smin = sv.iter().fold(smax, |a, &b| if b < a { b } else { a });
    let cond = if smin > T::zero() {
        smax / smin
    } else {
        T::infinity()
    };
    if cond > T::COND_LIMIT {
        return Err(Error::IllConditionedVandermonde {
            cond: cond.to_f64().unwrap_or(f64::INFINITY),
        });
    }

    let rhs = Array1::from_vec(rhs_vals);
    let coeffs = vander.solve(&rhs)?;

    let mut residual = T::zero();
    let mut rhs_norm = T::zero();
    for row in 0..l {
        let mut acc = Cplx::<T>::default();
        for col in 0..l {
            acc += vander[(row, col)] * coeffs[col];
        }
        residual += (acc - rhs[row]).square();
        rhs_norm += rhs[row].square();
    }
    let residual = Float::sqrt(residual);
    let rhs_norm = Float::sqrt(rhs_norm);
    if residual > T::RECON_TOL * Float::max(T::one(), rhs_norm) {
        return Err(Error::IllConditionedVandermonde {
            cond: cond.to_f64().unwrap_or(f64::INFINITY),
        });
    }
    Ok(coeffs.to_vec())
}

/// Applies the polynomial filter through Horner evaluation on the
/// fractional-domain shift operator. Equivalent to the transform itself for
/// coefficients from [`poly_filter_coeffs`].
pub fn poly_filter_apply<T: Scalar>(
    cfg: &HilbertConfig<T>,
    coeffs: &[Cplx<T>],
    x: ArrayView1<Cplx<T>>,
) -> Result<Array1<Cplx<T>>> {
    if coeffs.is_empty() {
        return Err(Error::BadSpec("empty polynomial filter".into()));
    }
    if x.len() != cfg.eig.n() {
        return Err(Error::LengthMismatch {
            expected: cfg.eig.n(),
            got: x.len(),
        });
    }
    let last = *coeffs.last().unwrap();
    let mut acc: Array1<Cplx<T>> = x.mapv(|v| v * last);
    if coeffs.len() == 1 {
        return Ok(acc);
    }
    let shift = cfg.fractional_shift()?;
    for &h in coeffs.iter().rev().skip(1) {
        acc = shift.dot(&acc);
        acc.zip_mut_with(&x, |a, &b| *a += b * h);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::eigendecompose;
    use crate::generate::GraphSpec;
    use crate::graph::Graph;
    use crate::transforms::to_complex;
    use ndarray::array;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI, TAU};

    fn pipeline(
        spec: GraphSpec,
    ) -> (
        GftOperator<f64>,
        Arc<FrftOperator<f64>>,
        Arc<EigenSystem<f64>>,
    ) {
        let g = spec.generate::<f64>(0).unwrap();
        let eig = Arc::new(eigendecompose(&g).unwrap());
        let gft = GftOperator::new(eig.clone());
        let frft = Arc::new(FrftOperator::new(&gft).unwrap());
        (gft, frft, eig)
    }

    #[test]
    fn transfer_at_half_pi_matches_hilbert_mask() {
        let (_, _, eig) = pipeline(GraphSpec::DirectedCycle { n: 4 });
        let t = TransferDiag::new(&eig, FRAC_PI_2);
        for (entry, class) in t.entries().iter().zip(t.classes().iter()) {
            let want = match class {
                SpectrumClass::PosIm => (0.0, -1.0),
                SpectrumClass::Zero => (0.0, 0.0),
                SpectrumClass::NegIm => (0.0, 1.0),
            };
            assert!((entry.re - want.0).abs() < 1e-12);
            assert!((entry.im - want.1).abs() < 1e-12);
        }
        // the cycle has two real and two imaginary eigenvalues
        let zeros = t
            .classes()
            .iter()
            .filter(|c| **c == SpectrumClass::Zero)
            .count();
        assert_eq!(zeros, 2);
    }

    #[test]
    fn transfer_at_zero_is_exactly_one() {
        let (_, _, eig) = pipeline(GraphSpec::Social5);
        let t = TransferDiag::new(&eig, 0.0);
        for entry in t.entries() {
            assert_eq!(entry.re, 1.0);
            assert_eq!(entry.im, 0.0);
        }
    }

    #[test]
    fn transfer_zero_class_cosine() {
        let g: Graph<f64> = Graph::from_adjacency(array![[0.0, 1.0], [1.0, 0.0]], "k2").unwrap();
        let eig = eigendecompose(&g).unwrap();
        let t = TransferDiag::new(&eig, FRAC_PI_3);
        for entry in t.entries() {
            assert!((entry.re - 0.5).abs() < 1e-12);
            assert_eq!(entry.im, 0.0);
        }
    }

    #[test]
    fn transfer_is_bitwise_periodic() {
        let (_, _, eig) = pipeline(GraphSpec::Social5);
        for beta in [0.0, 0.3, FRAC_PI_4, 1.0, 3.0, -0.7] {
            let a = TransferDiag::new(&eig, beta);
            let b = TransferDiag::new(&eig, beta + TAU);
            for (x, y) in a.entries().iter().zip(b.entries().iter()) {
                assert_eq!(x, y, "beta = {beta}");
            }
        }
    }

    #[test]
    fn zero_angle_is_identity() {
        let (_, frft, eig) = pipeline(GraphSpec::Social5);
        let x = to_complex(&array![0.8, 0.3, 0.5, 0.2, 0.6]);
        for alpha in [0.0, 0.5, 1.0, 1.7] {
            let cfg = HilbertConfig::new(alpha, 0.0, frft.clone(), eig.clone()).unwrap();
            let y = cfg.gfrht(x.view()).unwrap();
            for (a, b) in y.iter().zip(x.iter()) {
                assert!((a - b).norm() < 1e-9, "alpha = {alpha}");
            }
        }
    }

    #[test]
    fn unit_order_half_pi_is_conventional_ght() {
        let (gft, frft, eig) = pipeline(GraphSpec::Social5);
        let x = to_complex(&array![0.8, 0.3, 0.5, 0.2, 0.6]);
        let cfg = HilbertConfig::new(1.0, FRAC_PI_2, frft, eig.clone()).unwrap();
        let a = cfg.gfrht(x.view()).unwrap();
        let b = ght(&gft, &eig, x.view());
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn ght_annihilates_real_spectrum_signals() {
        // symmetric adjacency: every eigenvalue real, so the mask is zero
        let g: Graph<f64> = Graph::from_adjacency(array![[0.0, 1.0], [1.0, 0.0]], "k2").unwrap();
        let eig = Arc::new(eigendecompose(&g).unwrap());
        let gft = GftOperator::new(eig.clone());
        let x = to_complex(&array![0.9, -0.4]);
        let y = ght(&gft, &eig, x.view());
        for v in y.iter() {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn cycle4_impulse_ght_frozen_values() {
        // hand-computed: masking the 4-cycle impulse gives [0, 1/2, 0, -1/2]
        let (gft, _, eig) = pipeline(GraphSpec::DirectedCycle { n: 4 });
        let x = to_complex(&array![1.0, 0.0, 0.0, 0.0]);
        let y = ght(&gft, &eig, x.view());
        let want = [0.0, 0.5, 0.0, -0.5];
        for (v, w) in y.iter().zip(want.iter()) {
            assert!((v.re - w).abs() < 1e-10, "{v:?} vs {w}");
            assert!(v.im.abs() < 1e-10);
        }
    }

    #[test]
    fn fractional_kernel_identity_random_signal() {
        let (_, frft, eig) = pipeline(GraphSpec::DirectedCycle { n: 6 });
        let mut rng = crate::rng::SplitMix64::new(5);
        let x = to_complex(&Array1::from_shape_fn(6, |_| rng.uniform(-1.0, 1.0)));
        let cfg = HilbertConfig::new(0.7, PI / 5.0, frft.clone(), eig).unwrap();
        let lhs = frft
            .gfrft(0.7, cfg.gfrht(x.view()).unwrap().view())
            .unwrap();
        let spectrum = frft.gfrft(0.7, x.view()).unwrap();
        let rhs = &spectrum * cfg.transfer().entries();
        for (a, b) in lhs.iter().zip(rhs.iter()) {
            assert!((a - b).norm() < 1e-9);
        }
        // and the kernel itself is the inverse transform of the mask
        let kernel = cfg.fractional_kernel().unwrap();
        let direct = frft.igfrft(0.7, cfg.transfer().entries().view()).unwrap();
        for (a, b) in kernel.iter().zip(direct.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn poly_coeffs_two_real_eigenvalues() {
        let g: Graph<f64> = Graph::from_adjacency(array![[0.0, 1.0], [1.0, 0.0]], "k2").unwrap();
        let eig = eigendecompose(&g).unwrap();
        let h = poly_filter_coeffs(&eig, FRAC_PI_4).unwrap();
        assert_eq!(h.len(), 2);
        assert!((h[0].re - FRAC_PI_4.cos()).abs() < 1e-10);
        assert!(h[0].im.abs() < 1e-10);
        assert!(h[1].norm() < 1e-10);
    }

    #[test]
    fn poly_coeffs_cycle4_frozen() {
        // roots-of-unity nodes: the mask (0, -i, 0, i) inverts to
        // coefficients (0, -1/2, 0, 1/2)
        let (_, _, eig) = pipeline(GraphSpec::DirectedCycle { n: 4 });
        let h = poly_filter_coeffs(&eig, FRAC_PI_2).unwrap();
        assert_eq!(h.len(), 4);
        let want = [(0.0, 0.0), (-0.5, 0.0), (0.0, 0.0), (0.5, 0.0)];
        for (c, (re, im)) in h.iter().zip(want.iter()) {
            assert!((c.re - re).abs() < 1e-10, "{h:?}");
            assert!((c.im - im).abs() < 1e-10, "{h:?}");
        }
    }

    #[test]
    fn poly_coeffs_random_six_node_residual() {
        let mut rng = crate::rng::SplitMix64::new(61);
        let m = ndarray::Array2::from_shape_fn((6, 6), |_| rng.uniform(0.0, 1.0));
        let g: Graph<f64> = Graph::from_adjacency(m, "rand6").unwrap();
        let eig = eigendecompose(&g).unwrap();
        let beta = PI / 5.0;
        let h = poly_filter_coeffs(&eig, beta).unwrap();
        // re-evaluate the moment conditions on every eigenvalue
        let t = TransferDiag::new(&eig, beta);
        let mut residual = 0.0f64;
        for (k, lam) in eig.values().iter().enumerate() {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            let mut p = num_complex::Complex64::new(1.0, 0.0);
            for c in &h {
                acc += c * p;
                p *= lam;
            }
            residual += (acc - t.entries()[k]).norm_sqr();
        }
        assert!(residual.sqrt() < 1e-8, "residual {:e}", residual.sqrt());
    }

    #[test]
    fn poly_apply_degree_zero_is_scaling() {
        let (_, frft, eig) = pipeline(GraphSpec::Social5);
        let cfg = HilbertConfig::new(0.5, FRAC_PI_4, frft, eig).unwrap();
        let x = to_complex(&array![0.8, 0.3, 0.5, 0.2, 0.6]);
        let one = [num_complex::Complex64::new(1.0, 0.0)];
        let y = poly_filter_apply(&cfg, &one, x.view()).unwrap();
        for (a, b) in y.iter().zip(x.iter()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn poly_apply_matches_transform_on_cycle() {
        let (gft, frft, eig) = pipeline(GraphSpec::DirectedCycle { n: 4 });
        let cfg = HilbertConfig::new(1.0, FRAC_PI_2, frft, eig.clone()).unwrap();
        let h = poly_filter_coeffs(&eig, FRAC_PI_2).unwrap();
        let x = to_complex(&array![1.0, 0.0, 0.0, 0.0]);
        let poly = poly_filter_apply(&cfg, &h, x.view()).unwrap();
        let direct = ght(&gft, &eig, x.view());
        for (a, b) in poly.iter().zip(direct.iter()) {
            assert!((a - b).norm() < 1e-8);
        }
    }

    #[test]
    fn poly_apply_matches_transform_on_social() {
        let (_, frft, eig) = pipeline(GraphSpec::Social5);
        let cfg = HilbertConfig::new(0.5, FRAC_PI_4, frft, eig.clone()).unwrap();
        let h = poly_filter_coeffs(&eig, FRAC_PI_4).unwrap();
        let x = to_complex(&array![0.8, 0.3, 0.5, 0.2, 0.6]);
        let poly = poly_filter_apply(&cfg, &h, x.view()).unwrap();
        let direct = cfg.gfrht(x.view()).unwrap();
        for (a, b) in poly.iter().zip(direct.iter()) {
            assert!((a - b).norm() < 1e-6);
        }
    }
}
