//! Dirac operators compatible with the order-one condition.
//!
//! On the block realization `H = ⊕ C^{n_α} ⊗ C^{m_αβ} ⊗ C^{n_β}`, an
//! operator satisfying the order-one condition splits into a right-linear
//! part (acting on the first two tensor legs, constant on the third) and a
//! left-linear part (acting on the last two legs). The module provides:
//!
//! * the conditional expectations `E_λ`, `E_ρ` onto the commutants of the
//!   two actions, in closed form (partial trace over the touched leg);
//! * exact dimension formulas for the space of admissible self-adjoint
//!   operators, with and without a real structure, for every KO-dimension;
//! * random admissible operators, built from free block components and
//!   symmetrized by the real structure;
//! * an independent brute-force oracle that solves the defining linear
//!   systems numerically, used by the test suite to cross-check all of the
//!   structural formulas;
//! * the reconstruction/trivialization identities expressing an admissible
//!   operator through commutators with the central projections.

use crate::algebra::{Algebra, AlgebraElement};
use crate::bimodule::{linmap_dims, EvenPair, MultiplicityMatrix};
use crate::linalg::{
    c, cr, dagger, eye, fro_norm, ginibre_complex, gram_kernel_basis, gram_kernel_basis_real,
    kron, zeros, CMat, RMat,
};
use crate::real_structure::{RealStructureError, Slot};
use rand::Rng;

/// Maximum of `‖[[T, λ(a)], ρ(b)]‖_F` over the supplied generator images.
pub fn order_one_defect(t: &CMat, lambda_gens: &[CMat], rho_gens: &[CMat]) -> f64 {
    let mut worst: f64 = 0.0;
    for a in lambda_gens {
        let inner = t * a - a * t;
        for b in rho_gens {
            worst = worst.max(fro_norm(&(&inner * b - b * &inner)));
        }
    }
    worst
}

/// Conditional expectation onto operators commuting with the left action:
/// keeps only slot pairs with equal `α` and replaces the first leg by
/// `(1/n_α) 1 ⊗ ptr₁`.
pub fn e_lambda(t: &CMat, slots: &[Slot]) -> CMat {
    let dim = t.nrows();
    let mut out = zeros(dim, dim);
    for tgt in slots {
        for src in slots {
            if tgt.alpha != src.alpha {
                continue;
            }
            let n = tgt.n_alpha;
            let rest_t = tgt.mult * tgt.n_beta;
            let rest_s = src.mult * src.n_beta;
            let mut p = zeros(rest_t, rest_s);
            for i in 0..n {
                for r in 0..rest_t {
                    for cidx in 0..rest_s {
                        p[(r, cidx)] +=
                            t[(tgt.offset + i * rest_t + r, src.offset + i * rest_s + cidx)];
                    }
                }
            }
            let block = kron(&eye(n), &p) * cr(1.0 / n as f64);
            out.view_mut((tgt.offset, src.offset), (tgt.dim(), src.dim()))
                .copy_from(&block);
        }
    }
    out
}

/// Conditional expectation onto operators commuting with the right action:
/// keeps only slot pairs with equal `β` and replaces the third leg by
/// `(1/n_β) ptr₃ ⊗ 1`.
pub fn e_rho(t: &CMat, slots: &[Slot]) -> CMat {
    let dim = t.nrows();
    let mut out = zeros(dim, dim);
    for tgt in slots {
        for src in slots {
            if tgt.beta != src.beta {
                continue;
            }
            let nb = tgt.n_beta;
            let head_t = tgt.n_alpha * tgt.mult;
            let head_s = src.n_alpha * src.mult;
            let mut p = zeros(head_t, head_s);
            for r in 0..head_t {
                for cidx in 0..head_s {
                    for i in 0..nb {
                        p[(r, cidx)] +=
                            t[(tgt.offset + r * nb + i, src.offset + cidx * nb + i)];
                    }
                }
            }
            let block = kron(&p, &eye(nb)) * cr(1.0 / nb as f64);
            out.view_mut((tgt.offset, src.offset), (tgt.dim(), src.dim()))
                .copy_from(&block);
        }
    }
    out
}

/// Monte-Carlo average `(1/S) Σ U T U†` over Haar-random unitaries of the
/// algebra pushed through `realize`; converges to the conditional
/// expectation onto the commutant of the realized action.
pub fn haar_average(
    t: &CMat,
    algebra: &Algebra,
    realize: &dyn Fn(&AlgebraElement) -> CMat,
    samples: usize,
    seed: u64,
) -> CMat {
    let dim = t.nrows();
    let mut acc = zeros(dim, dim);
    for s in 0..samples {
        let u = realize(&algebra.random_unitary(seed.wrapping_add(s as u64)));
        acc += &u * t * dagger(&u);
    }
    acc * cr(1.0 / samples as f64)
}

/// Real dimension of the self-adjoint order-one operators on the ungraded
/// module of `m`, without a real structure. Equals the complex dimension of
/// `B^L + B^R` because that space is closed under adjoints.
pub fn dirac_dim_odd_plain(m: &MultiplicityMatrix) -> usize {
    let (l, r, lr) = linmap_dims(m, m);
    l + r - lr
}

/// Real dimension of the grading-odd self-adjoint order-one operators on
/// the graded module of `pair`, without a real structure: the lower corner
/// `Δ: H^even → H^odd` is a free element of `B^L + B^R`.
pub fn dirac_dim_even_plain(pair: &EvenPair) -> usize {
    let (l, r, lr) = linmap_dims(&pair.even, &pair.odd);
    2 * (l + r - lr)
}

fn ker_dim_odd(m: &MultiplicityMatrix, ko: u8) -> usize {
    // Dimension of the kernel of T ↦ T + ε′ J T J⁻¹ on the right-linear
    // (equivalently left-linear) operators, by the diagonal-slot symmetry
    // class: symmetric (ko 1, 3) or antisymmetric (ko 5, 7) middle
    // matrices, plus one full matrix space per off-diagonal pair.
    let s = m.m.len();
    let diag = |x: i64| match ko % 8 {
        1 | 3 => x * (x + 1) / 2,
        _ => x * (x - 1) / 2,
    };
    let mut k = 0i64;
    for a in 0..s {
        k += diag(m.m[a][a]);
        for b in (a + 1)..s {
            k += m.m[a][b] * m.m[a][b];
        }
    }
    k as usize
}

/// Real dimension of the admissible Dirac operators on the ungraded module
/// of `m` with the canonical real structure of odd KO-dimension `ko`:
/// `dim_C B^R − dim ker(T ↦ T + ε′ J T J⁻¹)`.
pub fn dirac_dim_odd(m: &MultiplicityMatrix, ko: u8) -> Result<usize, RealStructureError> {
    let ko = ko % 8;
    if ko % 2 == 0 {
        return Err(RealStructureError::Parity(ko));
    }
    if !crate::real_structure::admissible_kos_odd(m).contains(&ko) {
        return Err(RealStructureError::NotAdmissible {
            ko,
            reason: "multiplicity matrix does not admit this KO-dimension".into(),
        });
    }
    let (_, r, _) = linmap_dims(m, m);
    Ok(r - ker_dim_odd(m, ko))
}

fn ker_dim_even(pair: &EvenPair, ko: u8) -> usize {
    let me = &pair.even.m;
    let mo = &pair.odd.m;
    let s = me.len();
    let mut k = 0i64;
    match ko % 8 {
        0 | 4 => {
            // K_βα = -K̄_αβ with m_even, m_odd symmetric: each ordered pair
            // contributes m^o_αβ · m^e_αβ real dimensions in total.
            for a in 0..s {
                for b in 0..s {
                    k += mo[a][b] * me[a][b];
                }
            }
        }
        _ => {
            // m_odd = m_evenᵀ; K_βα = -ε K_αβᵀ: off-diagonal pairs are free,
            // diagonal slots are symmetric (ko 2) or antisymmetric (ko 6).
            for a in 0..s {
                k += match ko % 8 {
                    2 => me[a][a] * (me[a][a] + 1),
                    _ => me[a][a] * (me[a][a] - 1),
                };
                for b in 0..s {
                    if a != b {
                        k += me[a][b] * me[b][a];
                    }
                }
            }
        }
    }
    k as usize
}

/// Real dimension of the admissible Dirac operators on the graded module of
/// `pair` with the canonical real structure of even KO-dimension `ko`:
/// `2 dim_C B^R(H^even, H^odd) − dim ker(T ↦ T + ε′ J T J⁻¹)`.
pub fn dirac_dim_even(pair: &EvenPair, ko: u8) -> Result<usize, RealStructureError> {
    let ko = ko % 8;
    if ko % 2 != 0 {
        return Err(RealStructureError::Parity(ko));
    }
    if !crate::real_structure::admissible_kos_even(pair).contains(&ko) {
        return Err(RealStructureError::NotAdmissible {
            ko,
            reason: "multiplicity pair does not admit this KO-dimension".into(),
        });
    }
    let (_, r, _) = linmap_dims(&pair.even, &pair.odd);
    Ok(2 * r - ker_dim_even(pair, ko))
}

fn add_block(out: &mut CMat, tgt: &Slot, src: &Slot, blk: &CMat) {
    let mut view = out.view_mut((tgt.offset, src.offset), (tgt.dim(), src.dim()));
    view += blk;
}

fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> CMat {
    let g = ginibre_complex(n, n, rng);
    (&g + dagger(&g)) * cr(0.5)
}

/// Random self-adjoint operator in `B^L + B^R` between the given source and
/// target slot families (use the same family twice for the ungraded case):
/// free right components `M ⊗ 1` on matching `β`, free left components
/// `1 ⊗ N` on matching `α`, Hermitian on self-paired slots.
fn random_order_one<R: Rng>(dim: usize, src: &[Slot], tgt: &[Slot], rng: &mut R) -> CMat {
    let mut d = zeros(dim, dim);
    let self_paired = |s: &Slot, t: &Slot| s == t;
    for t in tgt {
        for s in src {
            // Right components: same β, act on legs 1-2.
            if t.beta == s.beta {
                let rows = t.n_alpha * t.mult;
                let cols = s.n_alpha * s.mult;
                let m = if self_paired(s, t) {
                    random_hermitian(rows, rng)
                } else {
                    ginibre_complex(rows, cols, rng)
                };
                let blk = kron(&m, &eye(s.n_beta));
                add_block(&mut d, t, s, &blk);
                if !self_paired(s, t) {
                    add_block(&mut d, s, t, &dagger(&blk));
                }
            }
            // Left components: same α, act on legs 2-3.
            if t.alpha == s.alpha {
                let rows = t.mult * t.n_beta;
                let cols = s.mult * s.n_beta;
                let n = if self_paired(s, t) {
                    random_hermitian(rows, rng)
                } else {
                    ginibre_complex(rows, cols, rng)
                };
                let blk = kron(&eye(s.n_alpha), &n);
                add_block(&mut d, t, s, &blk);
                if !self_paired(s, t) {
                    add_block(&mut d, s, t, &dagger(&blk));
                }
            }
        }
    }
    d
}

/// `J D J⁻¹` for the antiunitary with linear part `m` (unitary).
pub fn conjugate_by_j(d: &CMat, m: &CMat) -> CMat {
    m * d.map(|z| z.conj()) * dagger(m)
}

/// Random admissible self-adjoint order-one operator on the ungraded module,
/// optionally symmetrized against a real structure (`j = (M, ε′)`).
pub fn random_dirac_odd<R: Rng>(
    slots: &[Slot],
    dim: usize,
    j: Option<(&CMat, i8)>,
    rng: &mut R,
) -> CMat {
    let d = random_order_one(dim, slots, slots, rng);
    match j {
        Some((m, epsp)) => (&d + conjugate_by_j(&d, m) * cr(epsp as f64)) * cr(0.5),
        None => d,
    }
}

/// Random admissible grading-odd self-adjoint order-one operator on the
/// graded module (even slots ↔ odd slots), optionally symmetrized.
pub fn random_dirac_even<R: Rng>(
    slots: &[Slot],
    dim: usize,
    j: Option<(&CMat, i8)>,
    rng: &mut R,
) -> CMat {
    use crate::real_structure::Parity;
    let even: Vec<Slot> = slots.iter().copied().filter(|s| s.parity == Parity::Even).collect();
    let odd: Vec<Slot> = slots.iter().copied().filter(|s| s.parity == Parity::Odd).collect();
    let mut d = zeros(dim, dim);
    // Lower corner Δ: H^even → H^odd plus its adjoint.
    for t in &odd {
        for s in &even {
            if t.beta == s.beta {
                let m = ginibre_complex(t.n_alpha * t.mult, s.n_alpha * s.mult, rng);
                let blk = kron(&m, &eye(s.n_beta));
                add_block(&mut d, t, s, &blk);
                add_block(&mut d, s, t, &dagger(&blk));
            }
            if t.alpha == s.alpha {
                let n = ginibre_complex(t.mult * t.n_beta, s.mult * s.n_beta, rng);
                let blk = kron(&eye(s.n_alpha), &n);
                add_block(&mut d, t, s, &blk);
                add_block(&mut d, s, t, &dagger(&blk));
            }
        }
    }
    match j {
        Some((m, epsp)) => (&d + conjugate_by_j(&d, m) * cr(epsp as f64)) * cr(0.5),
        None => d,
    }
}

// ---------------------------------------------------------------------------
// Brute-force oracle.
// ---------------------------------------------------------------------------

/// Refine a complex spanning set by one C-linear constraint `f(T) = 0`.
pub(crate) fn refine_complex(basis: Vec<CMat>, f: &dyn Fn(&CMat) -> CMat) -> Vec<CMat> {
    let k = basis.len();
    if k == 0 {
        return basis;
    }
    let dim = basis[0].nrows();
    let mut l = zeros(dim * dim, k);
    for (jcol, t) in basis.iter().enumerate() {
        let img = f(t);
        for cidx in 0..dim {
            for r in 0..dim {
                l[(cidx * dim + r, jcol)] = img[(r, cidx)];
            }
        }
    }
    let gram = dagger(&l) * &l;
    let kernel = gram_kernel_basis(&gram);
    kernel
        .iter()
        .map(|coef| {
            let mut acc = zeros(dim, dim);
            for (jcol, t) in basis.iter().enumerate() {
                acc += t * coef[jcol];
            }
            acc
        })
        .collect()
}

/// Refine the real span of `basis ∪ i·basis` by R-linear constraints,
/// returning a real basis of the solution set.
pub(crate) fn refine_real(basis: Vec<CMat>, fs: &[&dyn Fn(&CMat) -> CMat]) -> Vec<CMat> {
    let k = basis.len();
    if k == 0 {
        return basis;
    }
    let dim = basis[0].nrows();
    let mut real_basis: Vec<CMat> = Vec::with_capacity(2 * k);
    for t in &basis {
        real_basis.push(t.clone());
    }
    for t in &basis {
        real_basis.push(t * c(0.0, 1.0));
    }
    let mut gram = RMat::zeros(2 * k, 2 * k);
    for f in fs {
        let mut l = RMat::zeros(2 * dim * dim, 2 * k);
        for (jcol, t) in real_basis.iter().enumerate() {
            let img = f(t);
            for cidx in 0..dim {
                for r in 0..dim {
                    let z = img[(r, cidx)];
                    l[(cidx * dim + r, jcol)] = z.re;
                    l[(dim * dim + cidx * dim + r, jcol)] = z.im;
                }
            }
        }
        gram += l.transpose() * &l;
    }
    gram_kernel_basis_real(&gram)
        .iter()
        .map(|coef| {
            let mut acc = zeros(dim, dim);
            for (jcol, t) in real_basis.iter().enumerate() {
                acc += t * cr(coef[jcol]);
            }
            acc
        })
        .collect()
}

fn full_matrix_basis(dim: usize, gamma: Option<&CMat>) -> Vec<CMat> {
    // With a (diagonal ±1) grading present, admissible operators
    // anticommute with it, so start from the grading-odd matrix units.
    let mut out = vec![];
    for r in 0..dim {
        for cidx in 0..dim {
            if let Some(g) = gamma {
                if (g[(r, r)] * g[(cidx, cidx)]).re > 0.0 {
                    continue;
                }
            }
            let mut m = zeros(dim, dim);
            m[(r, cidx)] = cr(1.0);
            out.push(m);
        }
    }
    out
}

/// Numerically solve for a real basis of the admissible Dirac operators:
/// order-one for all generator pairs, grading-odd (if `gamma` given),
/// self-adjoint, and `J D J⁻¹ = ε′ D` (if `j = (M, ε′)` given).
///
/// Completely independent of the structural block formulas; used as the
/// oracle in the cross-check suites.
pub fn brute_force_dirac_basis(
    dim: usize,
    lambda_gens: &[CMat],
    rho_gens: &[CMat],
    gamma: Option<&CMat>,
    j: Option<(&CMat, i8)>,
) -> Vec<CMat> {
    brute_force_dirac_basis_commuting(dim, lambda_gens, rho_gens, gamma, j, &[])
}

/// Variant of [`brute_force_dirac_basis`] that additionally requires
/// `[D, c] = 0` for each matrix in `commute_with` (e.g. the realized
/// generators of a distinguished subalgebra).
pub fn brute_force_dirac_basis_commuting(
    dim: usize,
    lambda_gens: &[CMat],
    rho_gens: &[CMat],
    gamma: Option<&CMat>,
    j: Option<(&CMat, i8)>,
    commute_with: &[CMat],
) -> Vec<CMat> {
    let mut basis = full_matrix_basis(dim, gamma);
    for cmatrix in commute_with {
        let f = move |t: &CMat| t * cmatrix - cmatrix * t;
        basis = refine_complex(basis, &f);
    }
    for a in lambda_gens {
        for b in rho_gens {
            let f = move |t: &CMat| {
                let inner = t * a - a * t;
                &inner * b - b * &inner
            };
            basis = refine_complex(basis, &f);
        }
    }
    let sa = |t: &CMat| t - dagger(t);
    let mut rops: Vec<&dyn Fn(&CMat) -> CMat> = vec![&sa];
    let jop;
    if let Some((m, epsp)) = j {
        jop = move |t: &CMat| t - conjugate_by_j(t, m) * cr(epsp as f64);
        rops.push(&jop);
    }
    refine_real(basis, &rops)
}

/// Numerically solve for the operators commuting with both actions; returns
/// a complex basis (the complex dimension equals `Σ m_αβ²`).
pub fn brute_force_lr_basis(dim: usize, lambda_gens: &[CMat], rho_gens: &[CMat]) -> Vec<CMat> {
    let mut basis = full_matrix_basis(dim, None);
    for a in lambda_gens.iter().chain(rho_gens) {
        let f = move |t: &CMat| t * a - a * t;
        basis = refine_complex(basis, &f);
    }
    basis
}

/// Real dimension of the Lie algebra of the unitary group commuting with
/// both actions and (optionally) with the real structure: anti-Hermitian
/// `X` in the LR commutant with `X M + M Xᵀ = 0`.
pub fn brute_force_unitary_dim(
    dim: usize,
    lambda_gens: &[CMat],
    rho_gens: &[CMat],
    j_matrix: Option<&CMat>,
) -> usize {
    let basis = brute_force_lr_basis(dim, lambda_gens, rho_gens);
    let ah = |t: &CMat| t + dagger(t);
    let mut rops: Vec<&dyn Fn(&CMat) -> CMat> = vec![&ah];
    let jop;
    if let Some(m) = j_matrix {
        jop = move |t: &CMat| t * m + m * t.transpose();
        rops.push(&jop);
    }
    refine_real(basis, &rops).len()
}

// ---------------------------------------------------------------------------
// Reconstruction and trivialization.
// ---------------------------------------------------------------------------

/// `Σ_{i≠j} λ(e_i) [D, λ(e_j)] + Σ_{k≠l} ρ(e_k) [D, ρ(e_l)]`, which
/// reproduces `D` whenever `D` has no component diagonal for both actions.
pub fn off_diagonal_reconstruction(d: &CMat, lambda_units: &[CMat], rho_units: &[CMat]) -> CMat {
    let dim = d.nrows();
    let mut acc = zeros(dim, dim);
    for units in [lambda_units, rho_units] {
        for (i, ei) in units.iter().enumerate() {
            for (jn, ej) in units.iter().enumerate() {
                if i != jn {
                    acc += ei * (d * ej - ej * d);
                }
            }
        }
    }
    acc
}

/// The gauge potential `A = -Σ_{i≠j} λ(e_i) [D, λ(e_j)]`; when every
/// component of `D` changes the left summand index, the inner fluctuation
/// `D + A + J A J⁻¹` vanishes identically.
pub fn trivializing_potential(d: &CMat, lambda_units: &[CMat]) -> CMat {
    let dim = d.nrows();
    let mut acc = zeros(dim, dim);
    for (i, ei) in lambda_units.iter().enumerate() {
        for (jn, ej) in lambda_units.iter().enumerate() {
            if i != jn {
                acc -= ei * (d * ej - ej * d);
            }
        }
    }
    acc
}

/// Inner fluctuation `D + A + J A J⁻¹`.
pub fn fluctuated(d: &CMat, a: &CMat, j_matrix: &CMat) -> CMat {
    d + a + conjugate_by_j(a, j_matrix)
}

/// `vec` of the double commutator as a matrix acting on `vec(T)`; kept as a
/// utility for direct constraint assembly.
pub fn order_one_constraint_matrix(a: &CMat, b: &CMat) -> CMat {
    let n = a.nrows();
    let id = eye(n);
    kron(&(a * b).transpose(), &id) - kron(&b.transpose(), a) - kron(&a.transpose(), b)
        + kron(&id, &(b * a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::Bimodule;
    use crate::real_structure::{
        canonical_even, canonical_odd, ko_signs, slots_of_ungraded, GradedBimodule,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fixture() -> Bimodule {
        let a = Algebra::direct_sum(&[Algebra::real(1), Algebra::real(2)]);
        let m = MultiplicityMatrix::new(a, vec![vec![2, 1], vec![1, 0]]).unwrap();
        Bimodule::build(m)
    }

    fn gens(h: &Bimodule) -> (Vec<CMat>, Vec<CMat>) {
        let g = h.algebra().generators();
        (
            g.iter().map(|x| h.lambda(x)).collect(),
            g.iter().map(|x| h.rho(x)).collect(),
        )
    }

    #[test]
    fn expectations_are_projections_onto_commutants() {
        let h = fixture();
        let slots = slots_of_ungraded(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = ginibre_complex(h.dim, h.dim, &mut rng);
        let el = e_lambda(&t, &slots);
        let er = e_rho(&t, &slots);
        assert!(fro_norm(&(e_lambda(&el, &slots) - &el)) < 1e-10);
        assert!(fro_norm(&(e_rho(&er, &slots) - &er)) < 1e-10);
        // Images commute with the respective action.
        for x in h.algebra().basis() {
            let l = h.lambda(&x);
            let r = h.rho(&x);
            assert!(fro_norm(&(&el * &l - &l * &el)) < 1e-10);
            assert!(fro_norm(&(&er * &r - &r * &er)) < 1e-10);
        }
        // They commute with each other.
        let a = e_lambda(&er, &slots);
        let b = e_rho(&el, &slots);
        assert!(fro_norm(&(a - b)) < 1e-10);
    }

    #[test]
    fn expectation_matches_haar_average() {
        let h = fixture();
        let slots = slots_of_ungraded(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = ginibre_complex(h.dim, h.dim, &mut rng);
        let mc = haar_average(&t, h.algebra(), &|x| h.lambda(x), 4000, 17);
        let exact = e_lambda(&t, &slots);
        let rel = fro_norm(&(&mc - &exact)) / fro_norm(&t);
        assert!(rel < 0.1, "Monte-Carlo disagreement {rel:.3}");
    }

    #[test]
    fn random_dirac_odd_satisfies_all_conditions() {
        let h = fixture();
        let slots = slots_of_ungraded(&h);
        let (lg, rg) = gens(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for ko in [1u8, 7] {
            let m_can = canonical_odd(&h, ko).unwrap();
            let epsp = ko_signs(ko).epsilon_p;
            let d = random_dirac_odd(&slots, h.dim, Some((&m_can, epsp)), &mut rng);
            assert!(fro_norm(&(&d - dagger(&d))) < 1e-10);
            assert!(order_one_defect(&d, &lg, &rg) < 1e-9);
            let jd = conjugate_by_j(&d, &m_can) * cr(epsp as f64);
            assert!(fro_norm(&(&d - jd)) < 1e-9);
        }
    }

    #[test]
    fn structural_dims_match_brute_force_odd() {
        let h = fixture();
        let (lg, rg) = gens(&h);
        let plain = brute_force_dirac_basis(h.dim, &lg, &rg, None, None).len();
        assert_eq!(plain, dirac_dim_odd_plain(&h.mult));
        for ko in [1u8, 7] {
            let m_can = canonical_odd(&h, ko).unwrap();
            let epsp = ko_signs(ko).epsilon_p;
            let brute =
                brute_force_dirac_basis(h.dim, &lg, &rg, None, Some((&m_can, epsp))).len();
            assert_eq!(brute, dirac_dim_odd(&h.mult, ko).unwrap(), "ko={ko}");
        }
    }

    #[test]
    fn structural_dims_match_brute_force_even() {
        let a = Algebra::direct_sum(&[Algebra::real(1), Algebra::real(1)]);
        let me = MultiplicityMatrix::new(a.clone(), vec![vec![1, 1], vec![0, 1]]).unwrap();
        let mo = MultiplicityMatrix::new(a, vec![vec![1, 0], vec![1, 1]]).unwrap();
        let pair = EvenPair::new(me, mo).unwrap();
        let g = GradedBimodule::build(&pair);
        let gensa = g.even.algebra().generators();
        let lg: Vec<CMat> = gensa.iter().map(|x| g.lambda(x)).collect();
        let rg: Vec<CMat> = gensa.iter().map(|x| g.rho(x)).collect();
        let gamma = g.gamma();
        let plain = brute_force_dirac_basis(g.dim, &lg, &rg, Some(&gamma), None).len();
        assert_eq!(plain, dirac_dim_even_plain(&pair));
        for ko in [2u8, 6] {
            let m_can = canonical_even(&g, ko).unwrap();
            let epsp = ko_signs(ko).epsilon_p;
            let brute =
                brute_force_dirac_basis(g.dim, &lg, &rg, Some(&gamma), Some((&m_can, epsp)))
                    .len();
            assert_eq!(brute, dirac_dim_even(&pair, ko).unwrap(), "ko={ko}");
        }
    }

    #[test]
    fn lr_commutant_dimension() {
        let h = fixture();
        let (lg, rg) = gens(&h);
        let basis = brute_force_lr_basis(h.dim, &lg, &rg);
        let expect: i64 = h.mult.m.iter().flatten().map(|&x| x * x).sum();
        assert_eq!(basis.len(), expect as usize);
        assert_eq!(
            brute_force_unitary_dim(h.dim, &lg, &rg, None),
            expect as usize
        );
    }

    #[test]
    fn constraint_matrix_matches_double_commutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let (a, b, t) = (
            ginibre_complex(4, 4, &mut rng),
            ginibre_complex(4, 4, &mut rng),
            ginibre_complex(4, 4, &mut rng),
        );
        let direct = {
            let inner = &t * &a - &a * &t;
            &inner * &b - &b * &inner
        };
        let cmat = order_one_constraint_matrix(&a, &b);
        let mut vec_t = crate::linalg::CVec::zeros(16);
        for cidx in 0..4 {
            for r in 0..4 {
                vec_t[cidx * 4 + r] = t[(r, cidx)];
            }
        }
        let lifted = crate::linalg::unvec(&(&cmat * vec_t), 4, 4);
        assert!(fro_norm(&(lifted - direct)) < 1e-10);
    }
}
