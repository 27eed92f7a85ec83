//! Bimodules over a Wedderburn algebra, encoded by multiplicity matrices.
//!
//! A bimodule is determined up to equivalence by a nonnegative integer
//! matrix `m` indexed by spectrum pairs `(α, β)`: it is realized concretely
//! as the orthogonal sum of blocks `C^{n_α} ⊗ C^{m_αβ} ⊗ C^{n_β}` with the
//! left action on the first leg and the (transposed) right action on the
//! third. Blocks are ordered lexicographically by `(α, β)` and linearized
//! with the third tensor index fastest.
//!
//! All multiplicity, orientability, and intersection-form computations are
//! exact integer arithmetic; floating point appears only in the concrete
//! operator realizations.

use crate::algebra::{Algebra, AlgebraElement, Ring, SpecPoint};
use crate::linalg::{c, cr, eye, fro_norm, int_det, kron3, zeros, CMat};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact integer matrix, row-major.
pub type IMat = Vec<Vec<i64>>;

pub fn imat_zero(rows: usize, cols: usize) -> IMat {
    vec![vec![0; cols]; rows]
}

pub fn imat_transpose(m: &IMat) -> IMat {
    if m.is_empty() {
        return vec![];
    }
    let (r, ccols) = (m.len(), m[0].len());
    let mut t = imat_zero(ccols, r);
    for i in 0..r {
        for j in 0..ccols {
            t[j][i] = m[i][j];
        }
    }
    t
}

pub fn imat_add(a: &IMat, b: &IMat) -> IMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn imat_sub(a: &IMat, b: &IMat) -> IMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn imat_scale(a: &IMat, s: i64) -> IMat {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = imat_zero(rows, cols);
    for i in 0..rows {
        for l in 0..inner {
            if a[i][l] == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

#[derive(Debug, Error)]
pub enum BimoduleError {
    #[error("matrix shape {got:?} does not match spectrum size {want}")]
    Shape { got: (usize, usize), want: usize },
    #[error("multiplicity matrices live over different algebras")]
    AlgebraMismatch,
    #[error("negative entry {value} at ({row},{col}) in a multiplicity matrix")]
    Negative { row: usize, col: usize, value: i64 },
    #[error("supports of the even/odd multiplicity matrices overlap at ({row},{col})")]
    NotQuasiOrientable { row: usize, col: usize },
    #[error("KO-dimension parity mismatch: {0}")]
    KoParity(String),
    #[error("left/right actions fail to commute (defect {0:.3e})")]
    ActionsDontCommute(f64),
    #[error("recovered multiplicity {value} at ({row},{col}) is not a nonnegative integer")]
    NonIntegerMultiplicity { row: usize, col: usize, value: f64 },
}

/// Nonnegative integer multiplicity matrix over a fixed algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityMatrix {
    pub algebra: Algebra,
    pub m: IMat,
}

impl MultiplicityMatrix {
    pub fn new(algebra: Algebra, m: IMat) -> Result<Self, BimoduleError> {
        let s = algebra.spectrum_size();
        if m.len() != s || m.iter().any(|r| r.len() != s) {
            return Err(BimoduleError::Shape {
                got: (m.len(), m.first().map_or(0, |r| r.len())),
                want: s,
            });
        }
        for (i, row) in m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v < 0 {
                    return Err(BimoduleError::Negative { row: i, col: j, value: v });
                }
            }
        }
        Ok(MultiplicityMatrix { algebra, m })
    }

    pub fn zero(algebra: Algebra) -> Self {
        let s = algebra.spectrum_size();
        MultiplicityMatrix { m: imat_zero(s, s), algebra }
    }

    pub fn is_symmetric(&self) -> bool {
        self.m == imat_transpose(&self.m)
    }

    pub fn total_dimension(&self) -> usize {
        let spec = self.algebra.spectrum();
        let mut d = 0usize;
        for (i, &a) in spec.iter().enumerate() {
            for (j, &b) in spec.iter().enumerate() {
                d += self.algebra.n_of(a) * self.m[i][j] as usize * self.algebra.n_of(b);
            }
        }
        d
    }
}

/// Pair of multiplicity matrices of a graded bimodule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvenPair {
    pub even: MultiplicityMatrix,
    pub odd: MultiplicityMatrix,
}

impl EvenPair {
    pub fn new(even: MultiplicityMatrix, odd: MultiplicityMatrix) -> Result<Self, BimoduleError> {
        if even.algebra != odd.algebra {
            return Err(BimoduleError::AlgebraMismatch);
        }
        Ok(EvenPair { even, odd })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.even.algebra
    }
}

/// Signed multiplicity matrix of a quasi-orientable graded bimodule:
/// `μ = m_even − m_odd` with disjoint supports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignedMultiplicityMatrix {
    pub algebra: Algebra,
    pub mu: IMat,
}

impl SignedMultiplicityMatrix {
    pub fn new(algebra: Algebra, mu: IMat) -> Result<Self, BimoduleError> {
        let s = algebra.spectrum_size();
        if mu.len() != s || mu.iter().any(|r| r.len() != s) {
            return Err(BimoduleError::Shape {
                got: (mu.len(), mu.first().map_or(0, |r| r.len())),
                want: s,
            });
        }
        Ok(SignedMultiplicityMatrix { algebra, mu })
    }

    /// Split into the graded pair `(positive part, negative part)`.
    pub fn to_pair(&self) -> EvenPair {
        let pos: IMat = self.mu.iter().map(|r| r.iter().map(|&x| x.max(0)).collect()).collect();
        let neg: IMat = self.mu.iter().map(|r| r.iter().map(|&x| (-x).max(0)).collect()).collect();
        EvenPair {
            even: MultiplicityMatrix { algebra: self.algebra.clone(), m: pos },
            odd: MultiplicityMatrix { algebra: self.algebra.clone(), m: neg },
        }
    }

    pub fn from_pair(p: &EvenPair) -> Result<Self, BimoduleError> {
        if let Some((i, j)) = support_overlap(&p.even.m, &p.odd.m) {
            return Err(BimoduleError::NotQuasiOrientable { row: i, col: j });
        }
        Ok(SignedMultiplicityMatrix {
            algebra: p.algebra().clone(),
            mu: imat_sub(&p.even.m, &p.odd.m),
        })
    }
}

/// One block `C^{n_α} ⊗ C^{m_αβ} ⊗ C^{n_β}` of a realized bimodule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    /// Index of `α` in the spectrum.
    pub alpha: usize,
    /// Index of `β` in the spectrum.
    pub beta: usize,
    pub n_alpha: usize,
    pub mult: usize,
    pub n_beta: usize,
    /// Offset of the block in the linearized Hilbert space.
    pub offset: usize,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.n_alpha * self.mult * self.n_beta
    }
}

/// Concrete block realization of the bimodule attached to a multiplicity
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Bimodule {
    pub mult: MultiplicityMatrix,
    pub blocks: Vec<Block>,
    pub dim: usize,
}

impl Bimodule {
    pub fn build(mult: MultiplicityMatrix) -> Self {
        let spec = mult.algebra.spectrum();
        let mut blocks = vec![];
        let mut offset = 0usize;
        for (i, &a) in spec.iter().enumerate() {
            for (j, &b) in spec.iter().enumerate() {
                let m = mult.m[i][j];
                if m > 0 {
                    let blk = Block {
                        alpha: i,
                        beta: j,
                        n_alpha: mult.algebra.n_of(a),
                        mult: m as usize,
                        n_beta: mult.algebra.n_of(b),
                        offset,
                    };
                    offset += blk.dim();
                    blocks.push(blk);
                }
            }
        }
        Bimodule { dim: offset, mult, blocks }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.mult.algebra
    }

    pub fn spectrum(&self) -> Vec<SpecPoint> {
        self.algebra().spectrum()
    }

    pub fn block_at(&self, alpha: usize, beta: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.alpha == alpha && b.beta == beta)
    }

    /// The left action `λ(x) = ⊕ λ_α(x) ⊗ 1 ⊗ 1`.
    pub fn lambda(&self, x: &AlgebraElement) -> CMat {
        let spec = self.spectrum();
        let mut out = zeros(self.dim, self.dim);
        for b in &self.blocks {
            let rep = self.algebra().irrep_apply(spec[b.alpha], x);
            let block = kron3(&rep, &eye(b.mult), &eye(b.n_beta));
            out.view_mut((b.offset, b.offset), (b.dim(), b.dim())).copy_from(&block);
        }
        out
    }

    /// The right action `ρ(x) = ⊕ 1 ⊗ 1 ⊗ λ_β(x)ᵀ`.
    pub fn rho(&self, x: &AlgebraElement) -> CMat {
        let spec = self.spectrum();
        let mut out = zeros(self.dim, self.dim);
        for b in &self.blocks {
            let rep = self.algebra().irrep_apply(spec[b.beta], x).transpose();
            let block = kron3(&eye(b.n_alpha), &eye(b.mult), &rep);
            out.view_mut((b.offset, b.offset), (b.dim(), b.dim())).copy_from(&block);
        }
        out
    }

    /// Orthogonal projection onto the `(α, β)` block.
    pub fn block_projection(&self, alpha: usize, beta: usize) -> CMat {
        let mut p = zeros(self.dim, self.dim);
        if let Some(b) = self.block_at(alpha, beta) {
            for i in 0..b.dim() {
                p[(b.offset + i, b.offset + i)] = cr(1.0);
            }
        }
        p
    }
}

/// Recover the multiplicity matrix of an abstract pair of commuting actions
/// given as closures on a Hilbert space of dimension `dim`.
///
/// Uses the spectral projections `P^L_α`, `P^R_β` cut out of `λ(e_i)`,
/// `ρ(e_i)` (split by the imaginary unit for `C` summands) and the trace
/// formula `m_αβ = tr(P^L_α P^R_β) / (n_α n_β)`.
pub fn multiplicity_of(
    algebra: &Algebra,
    dim: usize,
    lambda: &dyn Fn(&AlgebraElement) -> CMat,
    rho: &dyn Fn(&AlgebraElement) -> CMat,
) -> Result<MultiplicityMatrix, BimoduleError> {
    debug_assert_eq!(lambda(&algebra.one()).nrows(), dim);
    // Commutation sanity check on the basis.
    let basis = algebra.basis();
    let mut defect: f64 = 0.0;
    for x in &basis {
        for y in &basis {
            let l = lambda(x);
            let r = rho(y);
            defect = defect.max(fro_norm(&(&l * &r - &r * &l)));
        }
    }
    if defect > 1e-8 {
        return Err(BimoduleError::ActionsDontCommute(defect));
    }

    let spec = algebra.spectrum();
    let left: Vec<CMat> = spec.iter().map(|&p| spectral_projection(algebra, lambda, p)).collect();
    let right: Vec<CMat> = spec.iter().map(|&p| spectral_projection(algebra, rho, p)).collect();

    trace_multiplicities(algebra, &spec, &left, &right, None)
}

/// Multiplicity pair of a graded bimodule given as actions plus a grading
/// operator commuting with both: the even part counts with the projection
/// `(1+γ)/2`, the odd part with `(1−γ)/2`.
pub fn multiplicity_of_graded(
    algebra: &Algebra,
    dim: usize,
    lambda: &dyn Fn(&AlgebraElement) -> CMat,
    rho: &dyn Fn(&AlgebraElement) -> CMat,
    gamma: &CMat,
) -> Result<EvenPair, BimoduleError> {
    debug_assert_eq!(gamma.nrows(), dim);
    let spec = algebra.spectrum();
    let left: Vec<CMat> = spec.iter().map(|&p| spectral_projection(algebra, lambda, p)).collect();
    let right: Vec<CMat> = spec.iter().map(|&p| spectral_projection(algebra, rho, p)).collect();
    let half = cr(0.5);
    let plus = (eye(dim) + gamma) * half;
    let minus = (eye(dim) - gamma) * half;
    let even = trace_multiplicities(algebra, &spec, &left, &right, Some(&plus))?;
    let odd = trace_multiplicities(algebra, &spec, &left, &right, Some(&minus))?;
    EvenPair::new(even, odd)
}

/// The spectral projection onto the isotypic part of spectrum point `p`,
/// realized through the given action.
fn spectral_projection(
    algebra: &Algebra,
    act: &dyn Fn(&AlgebraElement) -> CMat,
    p: SpecPoint,
) -> CMat {
    let i = p.summand_index;
    let e = algebra.central_projection(i);
    if algebra.summands[i].ring != Ring::C {
        act(&e)
    } else {
        let mut ie = algebra.zero();
        ie.blocks[i] = eye(algebra.summands[i].n()) * c(0.0, 1.0);
        let sign = if p.conjugate { 1.0 } else { -1.0 };
        (act(&e) + act(&ie) * c(0.0, sign)) * cr(0.5)
    }
}

fn trace_multiplicities(
    algebra: &Algebra,
    spec: &[SpecPoint],
    left: &[CMat],
    right: &[CMat],
    weight: Option<&CMat>,
) -> Result<MultiplicityMatrix, BimoduleError> {
    let s = spec.len();
    let mut m = imat_zero(s, s);
    for (i, &a) in spec.iter().enumerate() {
        for (j, &b) in spec.iter().enumerate() {
            let mut prod = &left[i] * &right[j];
            if let Some(w) = weight {
                prod = &prod * w;
            }
            let dim = prod.nrows();
            let tr: f64 = (0..dim).map(|d| prod[(d, d)].re).sum();
            let denom = (algebra.n_of(a) * algebra.n_of(b)) as f64;
            let val = tr / denom;
            let rounded = val.round();
            if (val - rounded).abs() > 1e-6 || rounded < 0.0 {
                return Err(BimoduleError::NonIntegerMultiplicity { row: i, col: j, value: val });
            }
            m[i][j] = rounded as i64;
        }
    }
    MultiplicityMatrix::new(algebra.clone(), m)
}

/// Sum spectrum-indexed entries down to summand-indexed entries:
/// `m̂_ij = Σ_{α ∈ spec(i), β ∈ spec(j)} m_αβ`.
pub fn hat(algebra: &Algebra, m: &IMat) -> IMat {
    let spec = algebra.spectrum();
    let n = algebra.summands.len();
    let mut out = imat_zero(n, n);
    for (i, &a) in spec.iter().enumerate() {
        for (j, &b) in spec.iter().enumerate() {
            out[a.summand_index][b.summand_index] += m[i][j];
        }
    }
    out
}

fn support_overlap(a: &IMat, b: &IMat) -> Option<(usize, usize)> {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (&x, &y)) in ra.iter().zip(rb).enumerate() {
            if x != 0 && y != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

/// A graded bimodule is quasi-orientable iff the supports of its even and
/// odd multiplicity matrices are disjoint. Returns the first offending
/// entry when they are not.
pub fn quasi_orientability_witness(p: &EvenPair) -> Option<(usize, usize)> {
    support_overlap(&p.even.m, &p.odd.m)
}

pub fn is_quasi_orientable(p: &EvenPair) -> bool {
    quasi_orientability_witness(p).is_none()
}

/// Orientability of a quasi-orientable graded bimodule: the grading must be
/// implementable by the algebra itself, which happens exactly when the signs
/// of `μ` are consistent across each conjugate pair of spectrum points.
/// When orientable, returns the summand-level coefficient matrix
/// `sgn(μ̂)_ij`.
pub fn is_orientable(mu: &SignedMultiplicityMatrix) -> (bool, Option<IMat>) {
    let alg = &mu.algebra;
    let spec = alg.spectrum();
    let s = spec.len();
    let conj_of = |i: usize| -> Option<usize> {
        let p = spec[i];
        if alg.summands[p.summand_index].ring == Ring::C {
            spec.iter().position(|&q| {
                q.summand_index == p.summand_index && q.conjugate != p.conjugate
            })
        } else {
            None
        }
    };
    for a in 0..s {
        for b in 0..s {
            // Condition 1: rows of a conjugate pair agree in sign.
            if let Some(ac) = conj_of(a) {
                if mu.mu[a][b] * mu.mu[ac][b] < 0 {
                    return (false, None);
                }
            }
            // Condition 2: columns of a conjugate pair agree in sign.
            if let Some(bc) = conj_of(b) {
                if mu.mu[a][b] * mu.mu[a][bc] < 0 {
                    return (false, None);
                }
            }
            // Condition 3: cross terms for two C summands.
            if let (Some(ac), Some(bc)) = (conj_of(a), conj_of(b)) {
                if mu.mu[a][bc] * mu.mu[ac][b] < 0 {
                    return (false, None);
                }
            }
        }
    }
    let hat_mu = hat(alg, &mu.mu);
    let sgn: IMat = hat_mu.iter().map(|r| r.iter().map(|&x| x.signum()).collect()).collect();
    (true, Some(sgn))
}

/// Exact intersection form of a graded bimodule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntersectionForm {
    pub form: IMat,
    pub determinant: i128,
    pub poincare: bool,
}

pub fn intersection_form(p: &EvenPair) -> IntersectionForm {
    let alg = p.algebra();
    let diff = imat_sub(&hat(alg, &p.even.m), &hat(alg, &p.odd.m));
    let n = alg.summands.len();
    let mut form = imat_zero(n, n);
    for i in 0..n {
        for j in 0..n {
            form[i][j] = alg.summands[i].tau() * alg.summands[j].tau() * diff[i][j];
        }
    }
    let determinant = int_det(&diff);
    IntersectionForm { form, poincare: determinant != 0, determinant }
}

/// Total multiplicity data of the doubled module `H = H_i ⊕ H_{-i}` built
/// from `S⁰`-real data of odd KO-dimension: `m = m_i + m_iᵀ`.
pub fn s0_assemble_odd(m_i: &MultiplicityMatrix) -> MultiplicityMatrix {
    MultiplicityMatrix {
        algebra: m_i.algebra.clone(),
        m: imat_add(&m_i.m, &imat_transpose(&m_i.m)),
    }
}

/// Total multiplicity pair of the doubled module for even KO-dimension:
/// the transpose lands in the same parity for `n ∈ {0,4}` (ε″ = +1) and in
/// the opposite parity for `n ∈ {2,6}` (ε″ = -1).
pub fn s0_assemble_even(pair_i: &EvenPair, ko: u8) -> Result<EvenPair, BimoduleError> {
    if ko % 2 != 0 {
        return Err(BimoduleError::KoParity(format!("expected even KO-dimension, got {ko}")));
    }
    let alg = pair_i.algebra().clone();
    let (e, o) = (&pair_i.even.m, &pair_i.odd.m);
    let (me, mo) = match ko % 8 {
        0 | 4 => (imat_add(e, &imat_transpose(e)), imat_add(o, &imat_transpose(o))),
        _ => (imat_add(e, &imat_transpose(o)), imat_add(o, &imat_transpose(e))),
    };
    Ok(EvenPair {
        even: MultiplicityMatrix { algebra: alg.clone(), m: me },
        odd: MultiplicityMatrix { algebra: alg, m: mo },
    })
}

/// Signed version: `μ = μ_i + ε″ μ_iᵀ`.
pub fn s0_assemble_signed(
    mu_i: &SignedMultiplicityMatrix,
    ko: u8,
) -> Result<SignedMultiplicityMatrix, BimoduleError> {
    if ko % 2 != 0 {
        return Err(BimoduleError::KoParity(format!("expected even KO-dimension, got {ko}")));
    }
    let epp = crate::real_structure::ko_signs(ko).epsilon_dd.unwrap();
    let mu = imat_add(&mu_i.mu, &imat_scale(&imat_transpose(&mu_i.mu), epp as i64));
    SignedMultiplicityMatrix::new(mu_i.algebra.clone(), mu)
}

/// Quasi-orientability of the doubled module in terms of the halved data.
pub fn s0_quasi_orientable(pair_i: &EvenPair, ko: u8) -> Result<bool, BimoduleError> {
    if ko % 2 != 0 {
        return Err(BimoduleError::KoParity(format!("expected even KO-dimension, got {ko}")));
    }
    if !is_quasi_orientable(pair_i) {
        return Ok(false);
    }
    let (e, o) = (&pair_i.even.m, &pair_i.odd.m);
    let ok = match ko % 8 {
        0 | 4 => {
            support_overlap(e, &imat_transpose(o)).is_none()
        }
        _ => {
            support_overlap(e, &imat_transpose(e)).is_none()
                && support_overlap(o, &imat_transpose(o)).is_none()
        }
    };
    Ok(ok)
}

/// Orientability of the doubled module: the halved data must be orientable
/// and, when ε″ = -1, symmetric across every conjugate pair diagonal of a
/// `C` summand.
pub fn s0_orientable(mu_i: &SignedMultiplicityMatrix, ko: u8) -> Result<bool, BimoduleError> {
    if ko % 2 != 0 {
        return Err(BimoduleError::KoParity(format!("expected even KO-dimension, got {ko}")));
    }
    let (ok, _) = is_orientable(mu_i);
    if !ok {
        return Ok(false);
    }
    let epp = crate::real_structure::ko_signs(ko).epsilon_dd.unwrap();
    if epp == 1 {
        return Ok(true);
    }
    let alg = &mu_i.algebra;
    let spec = alg.spectrum();
    for (j, s) in alg.summands.iter().enumerate() {
        if s.ring == Ring::C {
            let lin = spec
                .iter()
                .position(|&p| p.summand_index == j && !p.conjugate)
                .unwrap();
            let con = spec
                .iter()
                .position(|&p| p.summand_index == j && p.conjugate)
                .unwrap();
            if mu_i.mu[lin][con] != mu_i.mu[con][lin] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Poincaré duality for the doubled module: nondegeneracy of
/// `μ̂_i + ε″ μ̂_iᵀ` over the exact integers.
pub fn s0_poincare(pair_i: &EvenPair, ko: u8) -> Result<bool, BimoduleError> {
    if ko % 2 != 0 {
        return Err(BimoduleError::KoParity(format!("expected even KO-dimension, got {ko}")));
    }
    let epp = crate::real_structure::ko_signs(ko).epsilon_dd.unwrap();
    let alg = pair_i.algebra();
    let d = imat_sub(&hat(alg, &pair_i.even.m), &hat(alg, &pair_i.odd.m));
    let total = imat_add(&d, &imat_scale(&imat_transpose(&d), epp as i64));
    Ok(int_det(&total) != 0)
}

/// Restriction of multiplicity data along a branching matrix `P`
/// (sub-spectrum × ambient-spectrum): `m' = P m Pᵀ`.
pub fn restrict_matrix(sub: &Algebra, p: &IMat, m: &IMat) -> Result<MultiplicityMatrix, BimoduleError> {
    let m_new = imat_mul(&imat_mul(p, m), &imat_transpose(p));
    MultiplicityMatrix::new(sub.clone(), m_new)
}

pub fn restrict_pair(sub: &Algebra, p: &IMat, pair: &EvenPair) -> Result<EvenPair, BimoduleError> {
    Ok(EvenPair {
        even: restrict_matrix(sub, p, &pair.even.m)?,
        odd: restrict_matrix(sub, p, &pair.odd.m)?,
    })
}

/// Complex dimensions of the spaces of left-linear, right-linear, and
/// two-sided-linear maps between the bimodules of `m1` and `m2`.
pub fn linmap_dims(m1: &MultiplicityMatrix, m2: &MultiplicityMatrix) -> (usize, usize, usize) {
    assert_eq!(m1.algebra, m2.algebra, "linmap_dims requires a common algebra");
    let alg = &m1.algebra;
    let spec = alg.spectrum();
    let s = spec.len();
    let n: Vec<usize> = spec.iter().map(|&p| alg.n_of(p)).collect();
    let mut dim_l = 0usize;
    let mut dim_r = 0usize;
    let mut dim_lr = 0usize;
    for a in 0..s {
        let row1: usize = (0..s).map(|b| m1.m[a][b] as usize * n[b]).sum();
        let row2: usize = (0..s).map(|d| m2.m[a][d] as usize * n[d]).sum();
        dim_l += row1 * row2;
    }
    for b in 0..s {
        let col1: usize = (0..s).map(|a| n[a] * m1.m[a][b] as usize).sum();
        let col2: usize = (0..s).map(|g| n[g] * m2.m[g][b] as usize).sum();
        dim_r += col1 * col2;
    }
    for a in 0..s {
        for b in 0..s {
            dim_lr += (m1.m[a][b] * m2.m[a][b]) as usize;
        }
    }
    (dim_l, dim_r, dim_lr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Summand;

    fn rr() -> Algebra {
        Algebra::direct_sum(&[Algebra::real(1), Algebra::real(1)])
    }

    #[test]
    fn build_and_recover_round_trip() {
        let a = Algebra::new(vec![
            Summand { ring: Ring::C, k: 1 },
            Summand { ring: Ring::H, k: 1 },
        ]);
        let m = MultiplicityMatrix::new(
            a.clone(),
            vec![vec![1, 0, 2], vec![0, 1, 0], vec![1, 0, 0]],
        )
        .unwrap();
        let h = Bimodule::build(m.clone());
        let rec = multiplicity_of(&a, h.dim, &|x| h.lambda(x), &|x| h.rho(x)).unwrap();
        assert_eq!(rec.m, m.m);
    }

    #[test]
    fn conjugate_point_right_action() {
        // A = C, m = E_{1,1̄}: ρ(z) acts as λ_{1̄}(z)ᵀ = z̄.
        let a = Algebra::complex(1);
        let m = MultiplicityMatrix::new(a.clone(), vec![vec![0, 1], vec![0, 0]]).unwrap();
        let h = Bimodule::build(m);
        assert_eq!(h.dim, 1);
        let mut i_elem = a.zero();
        i_elem.blocks[0][(0, 0)] = c(0.0, 1.0);
        assert!((h.lambda(&i_elem)[(0, 0)] - c(0.0, 1.0)).norm() < 1e-14);
        assert!((h.rho(&i_elem)[(0, 0)] - c(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn hat_collapses_conjugate_pairs() {
        let a = Algebra::complex(1);
        let m = vec![vec![1, 2], vec![3, 4]];
        assert_eq!(hat(&a, &m), vec![vec![10]]);
    }

    #[test]
    fn orientability_sign_conditions() {
        let a = Algebra::complex(1);
        // μ = E_{1,1} − E_{1̄,1}: condition 1 violated.
        let mu =
            SignedMultiplicityMatrix::new(a.clone(), vec![vec![1, 0], vec![-1, 0]]).unwrap();
        assert!(!is_orientable(&mu).0);
        let mu_ok = SignedMultiplicityMatrix::new(a, vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(is_orientable(&mu_ok).0);
    }

    #[test]
    fn s0_poincare_two_reals() {
        let a = rr();
        // Off-diagonal seed: both symmetrizations are nondegenerate.
        let mu_i = MultiplicityMatrix::new(a.clone(), vec![vec![0, 1], vec![0, 0]]).unwrap();
        let pair = EvenPair::new(mu_i, MultiplicityMatrix::zero(a.clone())).unwrap();
        assert!(s0_poincare(&pair, 6).unwrap());
        assert!(s0_poincare(&pair, 0).unwrap());
        // Diagonal seed diag(1, -1): symmetric doubling survives, the
        // antisymmetric one cancels.
        let me = MultiplicityMatrix::new(a.clone(), vec![vec![1, 0], vec![0, 0]]).unwrap();
        let mo = MultiplicityMatrix::new(a, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let diag = EvenPair::new(me, mo).unwrap();
        assert!(s0_poincare(&diag, 0).unwrap());
        assert!(!s0_poincare(&diag, 6).unwrap());
    }

    #[test]
    fn linmap_dims_lr_diagonal() {
        let a = rr();
        let m = MultiplicityMatrix::new(a, vec![vec![2, 1], vec![0, 3]]).unwrap();
        let (_, _, lr) = linmap_dims(&m, &m);
        assert_eq!(lr, 4 + 1 + 9);
    }
}
