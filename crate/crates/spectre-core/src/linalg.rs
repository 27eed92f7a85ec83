//! Dense complex linear algebra helpers shared by every module.
//!
//! All operator-level computation in this crate runs on [`CMat`]
//! (`nalgebra::DMatrix<Complex64>`). This module collects the generic
//! machinery: Kronecker products with a fixed leg convention, vectorization,
//! rank/nullspace computations with relative tolerances, polar decomposition,
//! Haar-distributed structured random matrices, and the two special
//! factorizations of unitary matrices needed by the real-structure
//! normalization algorithms:
//!
//! * Autonne–Takagi: a symmetric unitary `K` factors as `K = W Wᵀ`;
//! * Hua: an antisymmetric unitary `K` (even size) factors as `K = W Ω Wᵀ`
//!   with `Ω = [[0, -I], [I, 0]]`.
//!
//! Both are implemented constructively through the associated antiunitary
//! involution `ξ ↦ K ξ̄`, which avoids any dependence on specialized
//! eigensolvers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Complex scalar used everywhere.
pub type C64 = Complex64;
/// Dense complex matrix used everywhere.
pub type CMat = DMatrix<C64>;

/// Dense real matrix.
pub type RMat = DMatrix<f64>;

/// Dense real vector.
pub type RVec = DVector<f64>;
/// Dense complex vector.
pub type CVec = DVector<C64>;

/// Absolute tolerance for structural identities checked at unit scale
/// (idempotency, commutation relations, homomorphism defects). Chosen three
/// orders of magnitude above f64 round-off accumulation on the largest
/// fixtures (dimension ≲ 100) so that genuine violations, which are O(1),
/// are never confused with noise.
pub const TOL_STRUCT: f64 = 1e-10;

/// Relative tolerance separating "zero" from "nonzero" singular/eigenvalues
/// in rank decisions. Rank gaps in this crate's constraint systems are
/// exact at the mathematical level, so any cutoff well above round-off and
/// well below 1 works; 1e-8 relative leaves ≥ 6 orders of magnitude margin
/// on both sides for the sizes involved.
pub const TOL_RANK: f64 = 1e-8;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

/// Kronecker product `a ⊗ b` (entry `(a ⊗ b)[(i1,i2),(j1,j2)] = a[i1,j1] b[i2,j2]`
/// with the second index fastest, matching the block layout convention).
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Triple Kronecker product `a ⊗ b ⊗ c` (third leg fastest).
pub fn kron3(a: &CMat, b: &CMat, m: &CMat) -> CMat {
    kron(&kron(a, b), m)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn zeros(r: usize, ccols: usize) -> CMat {
    CMat::zeros(r, ccols)
}

/// Frobenius norm.
pub fn fro_norm(m: &CMat) -> f64 {
    m.norm()
}

/// Spectral (operator) norm via singular values.
pub fn op_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Column-major vectorization.
pub fn vec_mat(m: &CMat) -> CVec {
    CVec::from_column_slice(m.as_slice())
}

/// Inverse of [`vec_mat`].
pub fn unvec(v: &CVec, rows: usize, cols: usize) -> CMat {
    CMat::from_column_slice(rows, cols, v.as_slice())
}

/// Defect of unitarity `‖M†M − 1‖`.
pub fn unitary_defect(m: &CMat) -> f64 {
    fro_norm(&(dagger(m) * m - eye(m.ncols())))
}

/// Defect of Hermiticity `‖M − M†‖`.
pub fn hermitian_defect(m: &CMat) -> f64 {
    fro_norm(&(m - dagger(m)))
}

/// Unitary polar factor `U` of an invertible `A = U·P`, computed from the
/// singular value decomposition `A = U Σ V†` as `U V†`.
pub fn polar_unitary(a: &CMat) -> CMat {
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("svd requested u");
    let vt = svd.v_t.expect("svd requested v_t");
    u * vt
}

/// Rank of a matrix with relative singular-value cutoff [`TOL_RANK`].
pub fn rank(m: &CMat) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.max();
    if max <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > max * TOL_RANK).count()
}

/// Orthonormal basis of the (right) nullspace of `m`, via SVD.
pub fn null_space_basis(m: &CMat) -> Vec<CVec> {
    let cols = m.ncols();
    if cols == 0 {
        return vec![];
    }
    if m.nrows() == 0 {
        return (0..cols)
            .map(|j| {
                let mut v = CVec::zeros(cols);
                v[j] = cr(1.0);
                v
            })
            .collect();
    }
    // The thin SVD only returns min(rows, cols) right singular vectors;
    // pad wide matrices with zero rows so v_t spans all of C^cols.
    let padded = if m.nrows() < cols {
        let mut p = zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("svd requested v_t");
    let sv = &svd.singular_values;
    let max = sv.max().max(0.0);
    let cutoff = if max > 0.0 { max * TOL_RANK } else { f64::MAX };
    let mut basis = vec![];
    for i in 0..cols {
        let s = if i < sv.len() { sv[i] } else { 0.0 };
        if s <= cutoff {
            basis.push(vt.row(i).adjoint());
        }
    }
    basis
}

/// Nullity of a Hermitian positive-semidefinite Gram matrix: the number of
/// eigenvalues below `TOL_RANK` relative to the largest.
pub fn gram_nullity(g: &CMat) -> usize {
    let n = g.nrows();
    if n == 0 {
        return 0;
    }
    let eig = g.clone().symmetric_eigenvalues();
    let max = eig.iter().cloned().fold(0.0_f64, f64::max);
    if max <= 0.0 {
        return n;
    }
    eig.iter().filter(|&&e| e.abs() <= max * TOL_RANK).count()
}

/// Orthonormal eigenvectors of a Hermitian PSD Gram matrix whose eigenvalues
/// vanish relative to the largest — i.e. a basis of the joint kernel.
pub fn gram_kernel_basis(g: &CMat) -> Vec<CVec> {
    let n = g.nrows();
    if n == 0 {
        return vec![];
    }
    let eig = nalgebra::SymmetricEigen::new(g.clone());
    let max = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    // Relative cutoff with an absolute floor: Gram eigenvalues are squared
    // norms of constraint images, so anything below TOL_STRUCT² is noise even
    // when the whole Gram matrix is numerically zero.
    let cutoff = (max * TOL_RANK).max(TOL_STRUCT * TOL_STRUCT);
    let mut basis = vec![];
    for i in 0..n {
        if eig.eigenvalues[i].abs() <= cutoff {
            basis.push(eig.eigenvectors.column(i).clone_owned());
        }
    }
    basis
}

/// Real analogue of [`gram_kernel_basis`], for symmetric PSD matrices.
pub fn gram_kernel_basis_real(g: &RMat) -> Vec<RVec> {
    let n = g.nrows();
    if n == 0 {
        return vec![];
    }
    let eig = nalgebra::SymmetricEigen::new(g.clone());
    let max = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    let cutoff = (max * TOL_RANK).max(TOL_STRUCT * TOL_STRUCT);
    let mut basis = vec![];
    for i in 0..n {
        if eig.eigenvalues[i].abs() <= cutoff {
            basis.push(eig.eigenvectors.column(i).clone_owned());
        }
    }
    basis
}

/// The standard skew form `Ω_n = [[0, -1_k], [1_k, 0]]` for even `n = 2k`.
pub fn omega(n: usize) -> CMat {
    assert!(n % 2 == 0, "Ω_n requires even n, got {n}");
    let k = n / 2;
    let mut m = zeros(n, n);
    for i in 0..k {
        m[(i, k + i)] = cr(-1.0);
        m[(k + i, i)] = cr(1.0);
    }
    m
}

/// Autonne–Takagi factorization of a symmetric unitary `K`: returns unitary
/// `W` with `K = W Wᵀ`.
///
/// The antiunitary `A: ξ ↦ K ξ̄` is an involution (`A² = K K̄ = 1`); its
/// fixed-point set is a real form of `Cᵐ`, and any orthonormal real basis
/// `w_1,…,w_m` of it satisfies `K w̄_j = w_j`, i.e. `K = W Wᵀ`.
pub fn takagi_symmetric_unitary(k: &CMat) -> CMat {
    let m = k.nrows();
    assert_eq!(k.ncols(), m);
    debug_assert!(unitary_defect(k) < 1e-6, "takagi input must be unitary");
    debug_assert!(fro_norm(&(k - k.transpose())) < 1e-6, "takagi input must be symmetric");
    let apply_a = |v: &CVec| -> CVec { k * v.map(|z| z.conj()) };
    let mut fixed: Vec<CVec> = vec![];
    let mut candidates: Vec<CVec> = vec![];
    for j in 0..m {
        let mut e = CVec::zeros(m);
        e[j] = cr(1.0);
        candidates.push(e.clone());
        e[j] = c(0.0, 1.0);
        candidates.push(e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6b);
    let mut tries = 0;
    while fixed.len() < m {
        let cand = if let Some(cd) = candidates.pop() {
            cd
        } else {
            tries += 1;
            assert!(tries < 64 * m, "takagi: failed to complete fixed-point basis");
            CVec::from_fn(m, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        };
        let mut u = &cand + apply_a(&cand);
        for w in &fixed {
            // Inner products between fixed vectors of A are real, so this
            // projection stays inside the fixed-point set.
            let coeff = w.dotc(&u);
            u -= w * coeff;
        }
        let norm = u.norm();
        if norm > 1e-6 {
            fixed.push(u / cr(norm));
        }
    }
    CMat::from_columns(&fixed)
}

/// Hua factorization of an antisymmetric unitary `K` (even size `m = 2k`):
/// returns unitary `W` with `K = W Ω_m Wᵀ`.
///
/// The antiunitary `A: ξ ↦ K ξ̄` satisfies `A² = -1`; the quaternionic pair
/// structure `(w, A w)` is orthogonal because `⟨w, A w⟩ = w̄ᵀ K w̄ = 0` for
/// antisymmetric `K`. Collecting `k` such pairs gives `K w̄_j = w_{k+j}` and
/// `K w̄_{k+j} = -w_j`, i.e. `K W̄ = W Ω`.
pub fn hua_antisymmetric_unitary(k_mat: &CMat) -> CMat {
    let m = k_mat.nrows();
    assert_eq!(k_mat.ncols(), m);
    assert!(m % 2 == 0, "hua factorization requires even size");
    debug_assert!(unitary_defect(k_mat) < 1e-6, "hua input must be unitary");
    debug_assert!(fro_norm(&(k_mat + k_mat.transpose())) < 1e-6, "hua input must be antisymmetric");
    let half = m / 2;
    let apply_a = |v: &CVec| -> CVec { k_mat * v.map(|z| z.conj()) };
    let mut first: Vec<CVec> = vec![];
    let mut second: Vec<CVec> = vec![];
    let mut candidates: Vec<CVec> = vec![];
    for j in (0..m).rev() {
        let mut e = CVec::zeros(m);
        e[j] = cr(1.0);
        candidates.push(e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x48a1);
    let mut tries = 0;
    while first.len() < half {
        let cand = if let Some(cd) = candidates.pop() {
            cd
        } else {
            tries += 1;
            assert!(tries < 64 * m, "hua: failed to complete symplectic basis");
            CVec::from_fn(m, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        };
        let mut u = cand;
        for w in first.iter().chain(second.iter()) {
            let coeff = w.dotc(&u);
            u -= w * coeff;
        }
        let norm = u.norm();
        if norm > 1e-6 {
            let w = u / cr(norm);
            let wp = apply_a(&w);
            first.push(w);
            second.push(wp);
        }
    }
    let cols: Vec<CVec> = first.into_iter().chain(second).collect();
    CMat::from_columns(&cols)
}

/// Ginibre matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre_complex<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    CMat::from_fn(rows, cols, |_, _| c(gauss(rng), gauss(rng)))
}

/// Ginibre matrix with i.i.d. real Gaussian entries.
pub fn ginibre_real<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    CMat::from_fn(rows, cols, |_, _| cr(gauss(rng)))
}

fn gauss<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; adequate quality for Monte-Carlo test oracles.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Exact determinant of an integer matrix by fraction-free Bareiss
/// elimination over `i128`.
pub fn int_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "int_det requires a square matrix");
            row.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| a[i][k] != 0);
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn takagi_recovers_symmetric_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 2, 3, 5] {
            let u = polar_unitary(&ginibre_complex(n, n, &mut rng));
            let k = &u * u.transpose();
            let w = takagi_symmetric_unitary(&k);
            assert!(unitary_defect(&w) < 1e-9);
            assert!(fro_norm(&(&w * w.transpose() - &k)) < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn hua_recovers_antisymmetric_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for half in [1usize, 2, 3] {
            let n = 2 * half;
            let u = polar_unitary(&ginibre_complex(n, n, &mut rng));
            let k = &u * omega(n) * u.transpose();
            let w = hua_antisymmetric_unitary(&k);
            assert!(unitary_defect(&w) < 1e-9);
            assert!(fro_norm(&(&w * omega(n) * w.transpose() - &k)) < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn bareiss_determinant_matches_known_values() {
        assert_eq!(int_det(&[vec![0, 1], vec![-1, 0]]), 1);
        assert_eq!(int_det(&[vec![2, 3], vec![4, 6]]), 0);
        assert_eq!(
            int_det(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]),
            -3
        );
    }

    #[test]
    fn nullspace_dimensions() {
        let m = CMat::from_row_slice(2, 3, &[cr(1.0), cr(0.0), cr(1.0), cr(0.0), cr(1.0), cr(1.0)]);
        assert_eq!(rank(&m), 2);
        assert_eq!(null_space_basis(&m).len(), 1);
    }
}
