//! Particle-physics fixtures: the left-right symmetric algebra
//! `A_LR = C ⊕ H_L ⊕ H_R ⊕ M_3(C)`, its even subalgebra
//! `A_F = C ⊕ H ⊕ M_3(C)`, the fermion bimodule with `N` generations, and
//! the physical Dirac operators built from Yukawa and Majorana matrices.
//!
//! All multiplicity data here is frozen as exact integer matrices; the test
//! suites check them against the general machinery (multiplicity recovery,
//! restriction along the inclusion `A_F ⊂ A_LR`, intersection forms,
//! admissibility, dimension formulas, and the brute-force oracle).

use crate::algebra::{Algebra, AlgebraElement, Ring, Summand};
use crate::bimodule::{
    imat_scale, restrict_pair, EvenPair, IMat, MultiplicityMatrix, SignedMultiplicityMatrix,
};
use crate::dirac::conjugate_by_j;
use crate::linalg::{cr, dagger, eye, kron, zeros, CMat};
use crate::real_structure::{canonical_even, ko_signs, GradedBimodule, Parity, Slot};

/// KO-dimension of the finite standard-model geometry.
pub const SM_KO: u8 = 6;

/// `A_LR = C ⊕ H_L ⊕ H_R ⊕ M_3(C)`, spectrum `(1, 1̄, 2_L, 2_R, 3, 3̄)`.
pub fn algebra_lr() -> Algebra {
    Algebra::new(vec![
        Summand { ring: Ring::C, k: 1 },
        Summand { ring: Ring::H, k: 1 },
        Summand { ring: Ring::H, k: 1 },
        Summand { ring: Ring::C, k: 3 },
    ])
}

/// `A_F = C ⊕ H ⊕ M_3(C)`, spectrum `(1, 1̄, 2, 3, 3̄)`.
pub fn algebra_f() -> Algebra {
    Algebra::new(vec![
        Summand { ring: Ring::C, k: 1 },
        Summand { ring: Ring::H, k: 1 },
        Summand { ring: Ring::C, k: 3 },
    ])
}

/// Seed matrix `μ_E` of one fermion generation over `A_LR`: the part of the
/// signed multiplicity matrix listing left-handed doublets against leptons
/// and quarks (row `2_L`), with the right-handed row its negative.
pub fn mu_seed_lr(generations: i64) -> SignedMultiplicityMatrix {
    let mut m: IMat = vec![vec![0; 6]; 6];
    m[2] = vec![1, 0, 0, 0, 1, 0];
    m[3] = vec![-1, 0, 0, 0, -1, 0];
    SignedMultiplicityMatrix::new(algebra_lr(), imat_scale(&m, generations)).unwrap()
}

/// Full signed multiplicity matrix of the fermion module over `A_LR`:
/// `μ = μ_E − μ_Eᵀ` (particles plus their conjugates), `N` generations.
pub fn mu_lr(generations: i64) -> SignedMultiplicityMatrix {
    use crate::bimodule::{imat_sub, imat_transpose};
    let seed = mu_seed_lr(generations);
    let mu = imat_sub(&seed.mu, &imat_transpose(&seed.mu));
    SignedMultiplicityMatrix::new(algebra_lr(), mu).unwrap()
}

/// Graded multiplicity pair of the fermion module over `A_LR`.
pub fn fermion_pair_lr(generations: i64) -> EvenPair {
    mu_lr(generations).to_pair()
}

/// Images in `A_LR` of a basis of `A_F` under the inclusion
/// `(ζ, q, m) ↦ (ζ, q, diag(ζ, ζ̄), m)`.
pub fn embedding_images_f_in_lr() -> Vec<AlgebraElement> {
    let sub = algebra_f();
    let amb = algebra_lr();
    sub.basis()
        .iter()
        .map(|x| {
            let mut y = amb.zero();
            y.blocks[0] = x.blocks[0].clone();
            y.blocks[1] = x.blocks[1].clone();
            // ζ ↦ diag(ζ, ζ̄) is exactly the 1×1 quaternion adjoint pair.
            y.blocks[2] = crate::algebra::quaternionic_assemble(
                &x.blocks[0],
                &zeros(1, 1),
            );
            y.blocks[3] = x.blocks[2].clone();
            y
        })
        .collect()
}

/// Branching matrix of the inclusion `A_F ⊂ A_LR` (rows: `A_F` spectrum
/// `(1, 1̄, 2, 3, 3̄)`; columns: `A_LR` spectrum `(1, 1̄, 2_L, 2_R, 3, 3̄)`):
/// `2_R` restricts to `1 ⊕ 1̄`, everything else matches its namesake.
pub fn branching_lr_to_f() -> IMat {
    vec![
        vec![1, 0, 0, 1, 0, 0],
        vec![0, 1, 0, 1, 0, 0],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 1],
    ]
}

/// Graded multiplicity pair of the fermion module over `A_F` (the
/// restriction of [`fermion_pair_lr`] along the inclusion), frozen:
/// `m_even` is `N` times the pattern below and `m_odd` its transpose.
pub fn fermion_pair_f(generations: i64) -> EvenPair {
    use crate::bimodule::imat_transpose;
    let pattern: IMat = vec![
        vec![1, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 0],
        vec![1, 0, 0, 1, 0],
        vec![1, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 0],
    ];
    let even = imat_scale(&pattern, generations);
    let odd = imat_transpose(&even);
    EvenPair::new(
        MultiplicityMatrix::new(algebra_f(), even).unwrap(),
        MultiplicityMatrix::new(algebra_f(), odd).unwrap(),
    )
    .unwrap()
}

/// The central element `(-1, 1, 1, -1)` of `A_LR` whose left action is the
/// two-point grading separating the particle and antiparticle sectors.
pub fn epsilon_element_lr() -> AlgebraElement {
    let a = algebra_lr();
    let mut e = a.zero();
    e.blocks[0] = eye(1) * cr(-1.0);
    e.blocks[1] = eye(2);
    e.blocks[2] = eye(2);
    e.blocks[3] = eye(3) * cr(-1.0);
    e
}

/// Generators (as a real unital algebra) of the distinguished subalgebra
/// `C_F = {(ζ, diag(ζ, ζ̄), 0)} ⊂ A_F`.
pub fn cf_generators_f() -> Vec<AlgebraElement> {
    let a = algebra_f();
    let make = |re: f64, im: f64| {
        let mut e = a.zero();
        e.blocks[0] = eye(1) * crate::linalg::c(re, im);
        e.blocks[1] = crate::algebra::quaternionic_assemble(
            &(eye(1) * crate::linalg::c(re, im)),
            &zeros(1, 1),
        );
        e
    };
    vec![make(1.0, 0.0), make(0.0, 1.0)]
}

/// Yukawa/Majorana data of a standard-model Dirac operator: four `N×N`
/// complex matrices and a symmetric `N×N` Majorana block.
#[derive(Debug, Clone)]
pub struct YukawaData {
    pub y_nu: CMat,
    pub y_e: CMat,
    pub y_u: CMat,
    pub y_d: CMat,
    pub y_r: CMat,
}

impl YukawaData {
    pub fn generations(&self) -> usize {
        self.y_nu.nrows()
    }

    pub fn random(generations: usize, seed: u64) -> Self {
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = |rng: &mut ChaCha8Rng| crate::linalg::ginibre_complex(generations, generations, rng);
        let yr = g(&mut rng);
        YukawaData {
            y_nu: g(&mut rng),
            y_e: g(&mut rng),
            y_u: g(&mut rng),
            y_d: g(&mut rng),
            y_r: (&yr + yr.transpose()) * cr(0.5),
        }
    }
}

fn slot(slots: &[Slot], parity: Parity, alpha: usize, beta: usize) -> Slot {
    *slots
        .iter()
        .find(|s| s.parity == parity && s.alpha == alpha && s.beta == beta)
        .expect("fermion module slot")
}

/// The physical Dirac operator on the graded fermion module over `A_F`,
/// built from Yukawa components and symmetrized by the canonical real
/// structure of KO-dimension 6.
///
/// Component placement (spectrum indices `0=1, 1=1̄, 2=2, 3=3, 4=3̄`; the
/// first column index of a doublet block is the upper component):
/// `½ Y_R` on `(1,1) → (1,1)`, `(Y_ν 0)` on `(2,1) → (1,1)`,
/// `(0 Y_e)` on `(2,1) → (1̄,1)`, `(Y_u 0)` on `(2,3) → (1,3)`,
/// `(0 Y_d)` on `(2,3) → (1̄,3)`.
pub fn sm_dirac(g: &GradedBimodule, yuk: &YukawaData) -> CMat {
    let n = yuk.generations();
    let slots = g.slots();
    let mut d = zeros(g.dim, g.dim);
    let mut place = |tgt: Slot, src: Slot, m: &CMat| {
        assert_eq!(m.nrows(), tgt.n_alpha * tgt.mult);
        assert_eq!(m.ncols(), src.n_alpha * src.mult);
        let blk = kron(m, &eye(src.n_beta));
        let mut v = d.view_mut((tgt.offset, src.offset), (tgt.dim(), src.dim()));
        v += &blk;
        let mut w = d.view_mut((src.offset, tgt.offset), (src.dim(), tgt.dim()));
        w += dagger(&blk);
    };
    let doublet = |up: &CMat, down: &CMat| {
        let mut m = zeros(n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(up);
        m.view_mut((0, n), (n, n)).copy_from(down);
        m
    };
    let zero_n = zeros(n, n);
    place(
        slot(&slots, Parity::Odd, 0, 0),
        slot(&slots, Parity::Even, 0, 0),
        &(yuk.y_r.clone() * cr(0.5)),
    );
    place(
        slot(&slots, Parity::Odd, 0, 0),
        slot(&slots, Parity::Even, 2, 0),
        &doublet(&yuk.y_nu, &zero_n),
    );
    place(
        slot(&slots, Parity::Odd, 1, 0),
        slot(&slots, Parity::Even, 2, 0),
        &doublet(&zero_n, &yuk.y_e),
    );
    place(
        slot(&slots, Parity::Odd, 0, 3),
        slot(&slots, Parity::Even, 2, 3),
        &doublet(&yuk.y_u, &zero_n),
    );
    place(
        slot(&slots, Parity::Odd, 1, 3),
        slot(&slots, Parity::Even, 2, 3),
        &doublet(&zero_n, &yuk.y_d),
    );
    let j = canonical_even(g, SM_KO).expect("fermion module admits KO-dimension 6");
    let epsp = ko_signs(SM_KO).epsilon_p;
    &d + conjugate_by_j(&d, &j) * cr(epsp as f64)
}

/// Real dimension of the full admissible Dirac space over `A_F`:
/// `31 N² + N`.
pub fn dirac_dim_f(generations: i64) -> usize {
    (31 * generations * generations + generations) as usize
}

/// Real dimension of the admissible Dirac operators over `A_F` that also
/// commute with `C_F` (the physical Yukawa sector): `8N² + N(N+1)`.
pub fn constrained_dirac_dim_f(generations: i64) -> usize {
    (8 * generations * generations + generations * (generations + 1)) as usize
}

/// Real dimension of the admissible Dirac space over `A_LR`: `16 N²`
/// (two free complex `2N × 2N` blocks).
pub fn dirac_dim_lr(generations: i64) -> usize {
    (16 * generations * generations) as usize
}

/// Restriction of the `A_LR` fermion pair along the inclusion, computed via
/// the branching matrix; equals [`fermion_pair_f`].
pub fn restricted_fermion_pair_f(generations: i64) -> EvenPair {
    restrict_pair(
        &algebra_f(),
        &branching_lr_to_f(),
        &fermion_pair_lr(generations),
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{
        hat, imat_scale, intersection_form, is_quasi_orientable, quasi_orientability_witness,
        SignedMultiplicityMatrix,
    };
    use crate::dirac::{brute_force_dirac_basis_commuting, order_one_defect};
    use crate::linalg::fro_norm;
    use crate::real_structure::{admissible_kos_even, ulr_fixed_dim_even};

    #[test]
    fn frozen_mu_matrix_lr() {
        let mu = mu_lr(1);
        let want: IMat = vec![
            vec![0, 0, -1, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 1, 0],
            vec![-1, 0, 0, 0, -1, 0],
            vec![0, 0, -1, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0],
        ];
        assert_eq!(mu.mu, want);
        let hat_mu = hat(&algebra_lr(), &mu.mu);
        let want_hat: IMat = vec![
            vec![0, -1, 1, 0],
            vec![1, 0, 0, 1],
            vec![-1, 0, 0, -1],
            vec![0, -1, 1, 0],
        ];
        assert_eq!(hat_mu, want_hat);
    }

    #[test]
    fn intersection_forms_lr() {
        let pair = fermion_pair_lr(1);
        let form = intersection_form(&pair);
        // τ_i = 2 for the two H summands.
        let want: IMat = vec![
            vec![0, -2, 2, 0],
            vec![2, 0, 0, 2],
            vec![-2, 0, 0, -2],
            vec![0, -2, 2, 0],
        ];
        assert_eq!(form.form, want);
        // Rows for the two conjugate C summands coincide, so the form is
        // degenerate and the pairing cannot be non-degenerate.
        assert!(!form.poincare);
        let seed_form = intersection_form(&mu_seed_lr(1).to_pair());
        let want_seed: IMat = vec![
            vec![0, 0, 0, 0],
            vec![2, 0, 0, 2],
            vec![-2, 0, 0, -2],
            vec![0, 0, 0, 0],
        ];
        assert_eq!(seed_form.form, want_seed);
        assert!(!seed_form.poincare);
    }

    #[test]
    fn branching_matrix_matches_computed() {
        let computed = algebra_f()
            .branching_matrix(&algebra_lr(), &embedding_images_f_in_lr())
            .unwrap();
        assert_eq!(computed, branching_lr_to_f());
    }

    #[test]
    fn restriction_reproduces_frozen_pair() {
        for n in [1, 3] {
            let restricted = restricted_fermion_pair_f(n);
            let frozen = fermion_pair_f(n);
            assert_eq!(restricted.even.m, frozen.even.m);
            assert_eq!(restricted.odd.m, frozen.odd.m);
        }
    }

    #[test]
    fn fermion_module_over_f_is_degenerate() {
        let pair = fermion_pair_f(1);
        assert!(!is_quasi_orientable(&pair));
        assert_eq!(quasi_orientability_witness(&pair), Some((0, 0)));
        // Over A_LR it is quasi-orientable and the total dimension is 32N.
        assert!(is_quasi_orientable(&fermion_pair_lr(1)));
        for n in [1i64, 3] {
            let p = fermion_pair_f(n);
            assert_eq!(
                p.even.total_dimension() + p.odd.total_dimension(),
                (32 * n) as usize
            );
        }
    }

    #[test]
    fn intersection_form_f() {
        let form = intersection_form(&fermion_pair_f(1));
        let want: IMat = imat_scale(
            &vec![vec![0, -1, -1], vec![1, 0, 1], vec![1, -1, 0]],
            2,
        );
        assert_eq!(form.form, want);
        // Antisymmetric form of odd size: determinant vanishes identically.
        assert!(!form.poincare);
    }

    #[test]
    fn admissibility_and_dimension_formulas() {
        for n in [1i64, 3] {
            let pair = fermion_pair_f(n);
            assert_eq!(admissible_kos_even(&pair), vec![2, 6]);
            assert_eq!(
                crate::dirac::dirac_dim_even(&pair, SM_KO).unwrap(),
                dirac_dim_f(n)
            );
            assert_eq!(ulr_fixed_dim_even(&pair, SM_KO).unwrap(), (6 * n * n) as usize);
            let pair_lr = fermion_pair_lr(n);
            assert_eq!(admissible_kos_even(&pair_lr), vec![2, 6]);
            assert_eq!(
                crate::dirac::dirac_dim_even(&pair_lr, SM_KO).unwrap(),
                dirac_dim_lr(n)
            );
            assert_eq!(
                ulr_fixed_dim_even(&pair_lr, SM_KO).unwrap(),
                (4 * n * n) as usize
            );
        }
    }

    #[test]
    fn sm_dirac_is_admissible_and_constrained() {
        let pair = fermion_pair_f(1);
        let g = GradedBimodule::build(&pair);
        let yuk = YukawaData::random(1, 42);
        let d = sm_dirac(&g, &yuk);
        let gens = algebra_f().generators();
        let lg: Vec<CMat> = gens.iter().map(|x| g.lambda(x)).collect();
        let rg: Vec<CMat> = gens.iter().map(|x| g.rho(x)).collect();
        assert!(fro_norm(&(&d - dagger(&d))) < 1e-12);
        assert!(order_one_defect(&d, &lg, &rg) < 1e-10);
        let gamma = g.gamma();
        assert!(fro_norm(&(&gamma * &d + &d * &gamma)) < 1e-12);
        let j = canonical_even(&g, SM_KO).unwrap();
        let jd = conjugate_by_j(&d, &j);
        assert!(fro_norm(&(&d - &jd)) < 1e-12);
        for c in cf_generators_f() {
            let lc = g.lambda(&c);
            assert!(fro_norm(&(&d * &lc - &lc * &d)) < 1e-12, "commutes with C_F");
        }
    }

    #[test]
    fn constrained_dimension_oracle_at_one_generation() {
        let pair = fermion_pair_f(1);
        let g = GradedBimodule::build(&pair);
        let gens = algebra_f().generators();
        let lg: Vec<CMat> = gens.iter().map(|x| g.lambda(x)).collect();
        let rg: Vec<CMat> = gens.iter().map(|x| g.rho(x)).collect();
        let gamma = g.gamma();
        let j = canonical_even(&g, SM_KO).unwrap();
        let epsp = ko_signs(SM_KO).epsilon_p;
        let full = brute_force_dirac_basis_commuting(
            g.dim, &lg, &rg, Some(&gamma), Some((&j, epsp)), &[],
        );
        assert_eq!(full.len(), dirac_dim_f(1));
        let cf: Vec<CMat> = cf_generators_f().iter().map(|x| g.lambda(x)).collect();
        let constrained = brute_force_dirac_basis_commuting(
            g.dim, &lg, &rg, Some(&gamma), Some((&j, epsp)), &cf,
        );
        assert_eq!(constrained.len(), constrained_dirac_dim_f(1));
    }

    #[test]
    fn epsilon_element_grades_particles_and_antiparticles() {
        let pair = fermion_pair_lr(1);
        let g = GradedBimodule::build(&pair);
        let eps = g.lambda(&epsilon_element_lr());
        // ε² = 1, commutes with γ and both actions' grading, anticommutes
        // with the canonical real structure.
        assert!(fro_norm(&(&eps * &eps - eye(g.dim))) < 1e-12);
        let gamma = g.gamma();
        assert!(fro_norm(&(&eps * &gamma - &gamma * &eps)) < 1e-12);
        let j = canonical_even(&g, SM_KO).unwrap();
        // Anticommuting with an antiunitary: ε M = -M ε̄ = -M ε (ε real).
        assert!(fro_norm(&(&eps * &j + &j * &eps)) < 1e-12);
        // It is the S⁰ doubling grading: the halved data μ_E recovers μ.
        let mu = mu_lr(1);
        let assembled =
            crate::bimodule::s0_assemble_signed(&mu_seed_lr(1), SM_KO).unwrap();
        assert_eq!(assembled.mu, mu.mu);
        assert!(crate::bimodule::s0_orientable(&mu_seed_lr(1), SM_KO).unwrap());
        assert!(!crate::bimodule::s0_poincare(&mu_seed_lr(1).to_pair(), SM_KO).unwrap());
        let _ = SignedMultiplicityMatrix::from_pair(&pair).unwrap();
    }
}
