//! Finite-dimensional real C*-algebras presented by Wedderburn data.
//!
//! An algebra is an ordered list of summands `M_k(K)` with `K ∈ {R, C, H}`.
//! Quaternionic summands are stored exclusively through the standard
//! embedding `M_k(H) ⊂ M_{2k}(C)`, realized in the adjoint-pair block form
//! `[[A, B], [-B̄, Ā]]`, so that a matrix `Q` is quaternionic precisely when
//! `Q = Ω Q̄ Ωᵀ` with `Ω = [[0, -1_k], [1_k, 0]]`.
//!
//! The spectrum of the algebra is the ordered list of its irreducible
//! complex representations: one point per `R` or `H` summand, and a
//! linear/conjugate-linear pair per `C` summand, ordered lexicographically
//! by (summand index, conjugate) with the linear point first.

use crate::linalg::{
    c, cr, dagger, eye, fro_norm, gram_nullity, omega, polar_unitary, zeros, CMat, TOL_STRUCT,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The three real division rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    R,
    C,
    H,
}

/// One Wedderburn summand `M_k(K)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Summand {
    pub ring: Ring,
    pub k: usize,
}

impl Summand {
    /// Complex dimension of the irreducible representation space.
    pub fn n(&self) -> usize {
        match self.ring {
            Ring::H => 2 * self.k,
            _ => self.k,
        }
    }

    /// Trace of a minimal projection in the irreducible representation.
    pub fn tau(&self) -> i64 {
        match self.ring {
            Ring::H => 2,
            _ => 1,
        }
    }

    /// Real dimension of the summand as a real algebra.
    pub fn dim_real(&self) -> usize {
        let k2 = self.k * self.k;
        match self.ring {
            Ring::R => k2,
            Ring::C => 2 * k2,
            Ring::H => 4 * k2,
        }
    }
}

/// A finite-dimensional real C*-algebra with a fixed, ordered Wedderburn
/// decomposition. The empty list is the zero algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Algebra {
    pub summands: Vec<Summand>,
}

/// A point of the spectrum: an irreducible complex representation, named by
/// its summand and (for `C` summands) whether it is the conjugate-linear one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpecPoint {
    pub summand_index: usize,
    pub conjugate: bool,
}

/// An element of the algebra: one complex matrix block per summand, each of
/// the irrep size `n_i × n_i`, with the ring constraint (real entries for R,
/// quaternionic block structure for H) maintained by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub blocks: Vec<CMat>,
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("element has {got} blocks, algebra has {want} summands")]
    BlockCount { got: usize, want: usize },
    #[error("block {index} has shape {got:?}, expected {want}x{want}")]
    BlockShape { index: usize, got: (usize, usize), want: usize },
    #[error("embedding is not a unital *-homomorphism (defect {defect:.3e})")]
    BadEmbedding { defect: f64 },
    #[error("branching multiplicities failed the dimension identity")]
    BranchingDimension,
}

impl Algebra {
    pub fn new(summands: Vec<Summand>) -> Self {
        Algebra { summands }
    }

    /// Convenience constructors for the common building blocks.
    pub fn real(k: usize) -> Self {
        Algebra::new(vec![Summand { ring: Ring::R, k }])
    }
    pub fn complex(k: usize) -> Self {
        Algebra::new(vec![Summand { ring: Ring::C, k }])
    }
    pub fn quaternionic(k: usize) -> Self {
        Algebra::new(vec![Summand { ring: Ring::H, k }])
    }
    pub fn direct_sum(parts: &[Algebra]) -> Self {
        Algebra::new(parts.iter().flat_map(|a| a.summands.iter().copied()).collect())
    }

    /// The ordered spectrum.
    pub fn spectrum(&self) -> Vec<SpecPoint> {
        let mut pts = vec![];
        for (i, s) in self.summands.iter().enumerate() {
            pts.push(SpecPoint { summand_index: i, conjugate: false });
            if s.ring == Ring::C {
                pts.push(SpecPoint { summand_index: i, conjugate: true });
            }
        }
        pts
    }

    /// Number of spectrum points.
    pub fn spectrum_size(&self) -> usize {
        self.summands
            .iter()
            .map(|s| if s.ring == Ring::C { 2 } else { 1 })
            .sum()
    }

    /// Irrep dimension `n_α` of a spectrum point.
    pub fn n_of(&self, p: SpecPoint) -> usize {
        self.summands[p.summand_index].n()
    }

    /// Validate an element's block shapes.
    pub fn check_element(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if x.blocks.len() != self.summands.len() {
            return Err(AlgebraError::BlockCount { got: x.blocks.len(), want: self.summands.len() });
        }
        for (i, (b, s)) in x.blocks.iter().zip(&self.summands).enumerate() {
            if b.nrows() != s.n() || b.ncols() != s.n() {
                return Err(AlgebraError::BlockShape { index: i, got: (b.nrows(), b.ncols()), want: s.n() });
            }
        }
        Ok(())
    }

    /// Apply the irreducible representation at spectrum point `p`: the
    /// summand block, conjugated entrywise for the conjugate-linear point.
    pub fn irrep_apply(&self, p: SpecPoint, x: &AlgebraElement) -> CMat {
        let b = &x.blocks[p.summand_index];
        if p.conjugate {
            b.map(|z| z.conj())
        } else {
            b.clone()
        }
    }

    /// The multiplicative unit.
    pub fn one(&self) -> AlgebraElement {
        AlgebraElement { blocks: self.summands.iter().map(|s| eye(s.n())).collect() }
    }

    /// The zero element.
    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { blocks: self.summands.iter().map(|s| zeros(s.n(), s.n())).collect() }
    }

    /// Element with block `i` equal to `scale · 1` and all others zero.
    pub fn scaled_unit(&self, i: usize, scale: f64) -> AlgebraElement {
        let mut e = self.zero();
        e.blocks[i] = eye(self.summands[i].n()) * cr(scale);
        e
    }

    /// The central projection `e_i` onto summand `i`.
    pub fn central_projection(&self, i: usize) -> AlgebraElement {
        self.scaled_unit(i, 1.0)
    }

    /// A real-vector-space basis of the algebra.
    pub fn basis(&self) -> Vec<AlgebraElement> {
        let mut out = vec![];
        for (idx, s) in self.summands.iter().enumerate() {
            for b in summand_basis(s) {
                let mut e = self.zero();
                e.blocks[idx] = b;
                out.push(e);
            }
        }
        out
    }

    /// A small generating set of the algebra as a real unital algebra:
    /// per summand, the matrix unit `E_11`, a cyclic permutation, and the
    /// imaginary units (`i·1` for `C`; `i·1` and `j·1` for `H`).
    ///
    /// Conditions like the order-one identity that are derivation-like in
    /// each argument hold for all elements as soon as they hold on these.
    pub fn generators(&self) -> Vec<AlgebraElement> {
        let mut out = vec![];
        for (idx, s) in self.summands.iter().enumerate() {
            let k = s.k;
            let mut push = |blk: CMat| {
                let mut e = self.zero();
                e.blocks[idx] = blk;
                out.push(e);
            };
            let e11 = CMat::from_fn(k, k, |r, c| if r == 0 && c == 0 { cr(1.0) } else { cr(0.0) });
            let cycle = CMat::from_fn(k, k, |r, c| if (c + 1) % k == r { cr(1.0) } else { cr(0.0) });
            match s.ring {
                Ring::R => {
                    push(e11);
                    if k > 1 {
                        push(cycle);
                    }
                }
                Ring::C => {
                    push(e11);
                    if k > 1 {
                        push(cycle.clone());
                    }
                    push(eye(k) * c(0.0, 1.0));
                }
                Ring::H => {
                    let z = zeros(k, k);
                    push(quaternionic_assemble(&e11, &z));
                    if k > 1 {
                        push(quaternionic_assemble(&cycle, &z));
                    }
                    push(quaternionic_assemble(&(eye(k) * c(0.0, 1.0)), &z));
                    push(quaternionic_assemble(&z, &eye(k)));
                }
            }
        }
        out
    }

    /// Real dimension of the algebra.
    pub fn dim_real(&self) -> usize {
        self.summands.iter().map(|s| s.dim_real()).sum()
    }

    /// Coordinates of an element in [`Algebra::basis`] order.
    pub fn coordinates(&self, x: &AlgebraElement) -> Vec<f64> {
        let mut out = vec![];
        for (idx, s) in self.summands.iter().enumerate() {
            let b = &x.blocks[idx];
            match s.ring {
                Ring::R => {
                    for i in 0..s.k {
                        for j in 0..s.k {
                            out.push(b[(i, j)].re);
                        }
                    }
                }
                Ring::C => {
                    for i in 0..s.k {
                        for j in 0..s.k {
                            out.push(b[(i, j)].re);
                            out.push(b[(i, j)].im);
                        }
                    }
                }
                Ring::H => {
                    // Block form [[A, B], [-B̄, Ā]]: quaternion coordinates of
                    // entry (i,j) are (Re A, Im A, Re B, Im B).
                    for i in 0..s.k {
                        for j in 0..s.k {
                            let a = b[(i, j)];
                            let bb = b[(i, s.k + j)];
                            out.push(a.re);
                            out.push(a.im);
                            out.push(bb.re);
                            out.push(bb.im);
                        }
                    }
                }
            }
        }
        out
    }

    /// Haar-distributed random unitary element: per summand, the unitary
    /// polar factor of a structured Ginibre matrix (real, complex, or
    /// quaternionic-embedded), which is invariant under one-sided
    /// multiplication by fixed unitaries of the same structure.
    pub fn random_unitary(&self, seed: u64) -> AlgebraElement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks = self
            .summands
            .iter()
            .map(|s| match s.ring {
                Ring::R => polar_unitary(&crate::linalg::ginibre_real(s.k, s.k, &mut rng)),
                Ring::C => polar_unitary(&crate::linalg::ginibre_complex(s.k, s.k, &mut rng)),
                Ring::H => {
                    let a = crate::linalg::ginibre_complex(s.k, s.k, &mut rng);
                    let b = crate::linalg::ginibre_complex(s.k, s.k, &mut rng);
                    polar_unitary(&quaternionic_assemble(&a, &b))
                }
            })
            .collect();
        AlgebraElement { blocks }
    }

    /// Branching matrix of a unital *-embedding `self → amb`.
    ///
    /// `images[i]` must be the image in `amb` of `self.basis()[i]`. Returns
    /// the nonnegative integer matrix `P` of shape `S_sub × S_amb` with
    /// `P[β][α]` the multiplicity of sub-irrep `β` in the restriction of
    /// amb-irrep `α`.
    pub fn branching_matrix(
        &self,
        amb: &Algebra,
        images: &[AlgebraElement],
    ) -> Result<Vec<Vec<i64>>, AlgebraError> {
        let basis = self.basis();
        assert_eq!(images.len(), basis.len(), "one image per basis element required");
        for im in images {
            amb.check_element(im)?;
        }
        let embed = |x: &AlgebraElement| -> AlgebraElement {
            let coords = self.coordinates(x);
            let mut acc = amb.zero();
            for (cf, im) in coords.iter().zip(images) {
                for (b, ib) in acc.blocks.iter_mut().zip(&im.blocks) {
                    *b += ib * cr(*cf);
                }
            }
            acc
        };
        // Unital + *-homomorphism validation.
        let mut defect: f64 = element_distance(&embed(&self.one()), &amb.one());
        for x in &basis {
            defect = defect.max(element_distance(&embed(&x.adjoint()), &embed(x).adjoint()));
        }
        for x in &basis {
            for y in &basis {
                let lhs = embed(&x.mul(y));
                let rhs = embed(x).mul(&embed(y));
                defect = defect.max(element_distance(&lhs, &rhs));
            }
        }
        if defect > 1e-6 {
            return Err(AlgebraError::BadEmbedding { defect });
        }

        let sub_spec = self.spectrum();
        let amb_spec = amb.spectrum();
        let embedded_basis: Vec<AlgebraElement> = basis.iter().map(embed).collect();
        let mut p = vec![vec![0i64; amb_spec.len()]; sub_spec.len()];
        for (aj, &alpha) in amb_spec.iter().enumerate() {
            let n_a = amb.n_of(alpha);
            let restricted: Vec<CMat> =
                embedded_basis.iter().map(|e| amb.irrep_apply(alpha, e)).collect();
            for (bj, &beta) in sub_spec.iter().enumerate() {
                let n_b = self.n_of(beta);
                // dim_C of intertwiners S with π(x) S = S λ_β(x) for all x.
                let dim = n_a * n_b;
                let mut gram = zeros(dim, dim);
                for (x, pi_x) in basis.iter().zip(&restricted) {
                    let lam = self.irrep_apply(beta, x);
                    // vec(π S - S λ) = (1 ⊗ π - λᵀ ⊗ 1) vec S with our
                    // kron convention (second factor fastest) applied to the
                    // row-major pair (row ← π, col ← λ): use
                    // K = λᵀ ⊗ 1 acting on columns minus 1 ⊗ π on rows in
                    // column-major vec: vec(AS) = (1 ⊗ A) vec S,
                    // vec(S B) = (Bᵀ ⊗ 1) vec S.
                    let k = crate::linalg::kron(&eye(n_b), pi_x)
                        - crate::linalg::kron(&lam.transpose(), &eye(n_a));
                    gram += dagger(&k) * &k;
                }
                p[bj][aj] = gram_nullity(&gram) as i64;
            }
        }
        // Exact dimension identity.
        for (aj, &alpha) in amb_spec.iter().enumerate() {
            let total: i64 = sub_spec
                .iter()
                .enumerate()
                .map(|(bj, &beta)| p[bj][aj] * self.n_of(beta) as i64)
                .sum();
            if total != amb.n_of(alpha) as i64 {
                return Err(AlgebraError::BranchingDimension);
            }
        }
        Ok(p)
    }
}

/// Assemble the quaternionic-embedded matrix `[[A, B], [-B̄, Ā]]`.
pub fn quaternionic_assemble(a: &CMat, b: &CMat) -> CMat {
    let k = a.nrows();
    let mut q = zeros(2 * k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            q[(i, j)] = a[(i, j)];
            q[(i, k + j)] = b[(i, j)];
            q[(k + i, j)] = -b[(i, j)].conj();
            q[(k + i, k + j)] = a[(i, j)].conj();
        }
    }
    q
}

/// Defect of the quaternionic structure identity `Q = Ω Q̄ Ωᵀ`.
pub fn quaternionic_defect(q: &CMat) -> f64 {
    let n = q.nrows();
    let om = omega(n);
    fro_norm(&(q - &om * q.map(|z| z.conj()) * om.transpose()))
}

fn summand_basis(s: &Summand) -> Vec<CMat> {
    let mut out = vec![];
    match s.ring {
        Ring::R => {
            for i in 0..s.k {
                for j in 0..s.k {
                    let mut m = zeros(s.k, s.k);
                    m[(i, j)] = cr(1.0);
                    out.push(m);
                }
            }
        }
        Ring::C => {
            for i in 0..s.k {
                for j in 0..s.k {
                    let mut m = zeros(s.k, s.k);
                    m[(i, j)] = cr(1.0);
                    out.push(m.clone());
                    m[(i, j)] = c(0.0, 1.0);
                    out.push(m);
                }
            }
        }
        Ring::H => {
            for i in 0..s.k {
                for j in 0..s.k {
                    for unit in 0..4 {
                        let mut a = zeros(s.k, s.k);
                        let mut b = zeros(s.k, s.k);
                        match unit {
                            0 => a[(i, j)] = cr(1.0),
                            1 => a[(i, j)] = c(0.0, 1.0),
                            2 => b[(i, j)] = cr(1.0),
                            _ => b[(i, j)] = c(0.0, 1.0),
                        }
                        out.push(quaternionic_assemble(&a, &b));
                    }
                }
            }
        }
    }
    out
}

fn element_distance(x: &AlgebraElement, y: &AlgebraElement) -> f64 {
    x.blocks
        .iter()
        .zip(&y.blocks)
        .map(|(a, b)| fro_norm(&(a - b)))
        .fold(0.0, f64::max)
}

impl AlgebraElement {
    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement { blocks: self.blocks.iter().map(dagger).collect() }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, t: f64) -> AlgebraElement {
        AlgebraElement { blocks: self.blocks.iter().map(|b| b * cr(t)).collect() }
    }

    /// Largest unitarity defect over the blocks.
    pub fn unitary_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(crate::linalg::unitary_defect)
            .fold(0.0, f64::max)
    }
}

/// Is `x` within `TOL_STRUCT` of `y` blockwise?
pub fn elements_close(x: &AlgebraElement, y: &AlgebraElement) -> bool {
    element_distance(x, y) <= TOL_STRUCT
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_sizes_and_order() {
        let a_f = Algebra::new(vec![
            Summand { ring: Ring::C, k: 1 },
            Summand { ring: Ring::H, k: 1 },
            Summand { ring: Ring::C, k: 3 },
        ]);
        let spec = a_f.spectrum();
        assert_eq!(spec.len(), 5);
        assert_eq!(spec[0], SpecPoint { summand_index: 0, conjugate: false });
        assert_eq!(spec[1], SpecPoint { summand_index: 0, conjugate: true });
        assert_eq!(spec[2], SpecPoint { summand_index: 1, conjugate: false });
        assert_eq!(a_f.n_of(spec[2]), 2);
    }

    #[test]
    fn quaternion_units_multiply_correctly() {
        let h = Algebra::quaternionic(1);
        let basis = h.basis();
        let (i, j, k) = (&basis[1], &basis[2], &basis[3]);
        assert!(elements_close(&i.mul(j), k));
        assert!(elements_close(&i.mul(i), &h.one().scale(-1.0)));
        assert!(elements_close(&j.mul(j), &h.one().scale(-1.0)));
        for b in &basis {
            assert!(quaternionic_defect(&b.blocks[0]) < 1e-12);
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let a = Algebra::new(vec![
            Summand { ring: Ring::R, k: 2 },
            Summand { ring: Ring::C, k: 2 },
            Summand { ring: Ring::H, k: 2 },
        ]);
        let basis = a.basis();
        assert_eq!(basis.len(), a.dim_real());
        for (i, x) in basis.iter().enumerate() {
            let coords = a.coordinates(x);
            for (j, cf) in coords.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((cf - expect).abs() < 1e-12, "basis {i} coord {j}");
            }
        }
    }

    #[test]
    fn random_unitary_is_unitary_and_structured() {
        let a = Algebra::new(vec![
            Summand { ring: Ring::R, k: 3 },
            Summand { ring: Ring::C, k: 2 },
            Summand { ring: Ring::H, k: 2 },
        ]);
        let u = a.random_unitary(42);
        assert!(u.unitary_defect() < 1e-10);
        // Real block stays real, quaternionic block stays quaternionic.
        assert!(u.blocks[0].iter().all(|z| z.im.abs() < 1e-10));
        assert!(quaternionic_defect(&u.blocks[2]) < 1e-9);
    }

    #[test]
    fn branching_real_into_complex() {
        let r = Algebra::real(1);
        let cplx = Algebra::complex(1);
        // R → C as real scalars: image of the single basis element 1 is 1.
        let images = vec![cplx.one()];
        let p = r.branching_matrix(&cplx, &images).unwrap();
        assert_eq!(p, vec![vec![1, 1]]);
    }

    #[test]
    fn branching_identity() {
        let a = Algebra::new(vec![
            Summand { ring: Ring::C, k: 1 },
            Summand { ring: Ring::H, k: 1 },
        ]);
        let p = a.branching_matrix(&a, &a.basis()).unwrap();
        assert_eq!(p, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }
}
