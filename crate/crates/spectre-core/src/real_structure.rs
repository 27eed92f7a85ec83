//! Real structures (charge conjugations) on realized bimodules.
//!
//! An antiunitary operator `J` is stored as the unitary matrix `M` of its
//! linear part, so that `J v = M v̄`. With this convention:
//!
//! * `J² = M M̄` (a scalar `±1` when `J` is a real structure),
//! * conjugation of a linear operator `D` is `J D J⁻¹ = M D̄ M†`,
//! * conjugating `J` by a unitary `U` produces the matrix `U M Uᵀ`.
//!
//! Every admissible real structure is unitarily equivalent (by a unitary
//! commuting with both actions) to a canonical one built from the flip
//! `ξ₁ ⊗ ξ₂ ⊗ ξ₃ ↦ ξ̄₃ ⊗ ξ̄₂ ⊗ ξ̄₁` between the `(α, β)` and `(β, α)`
//! blocks, decorated per KO-dimension class; `normalize_real_structure`
//! computes the normalizing unitary explicitly.

use crate::bimodule::{Bimodule, EvenPair, MultiplicityMatrix};
use crate::linalg::{
    cr, dagger, eye, fro_norm, hua_antisymmetric_unitary, kron3, omega,
    takagi_symmetric_unitary, zeros, CMat, TOL_RANK,
};
use crate::algebra::AlgebraElement;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The sign table governing a real spectral triple of KO-dimension `n mod 8`:
/// `J² = ε`, `J D = ε′ D J`, and (even case) `J γ = ε″ γ J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoSigns {
    pub ko: u8,
    pub epsilon: i8,
    pub epsilon_p: i8,
    pub epsilon_dd: Option<i8>,
}

pub fn ko_signs(ko: u8) -> KoSigns {
    let n = (ko % 8) as usize;
    let epsilon = [1i8, 1, -1, -1, -1, -1, 1, 1][n];
    let epsilon_p = [1i8, -1, 1, 1, 1, -1, 1, 1][n];
    let epsilon_dd = match n {
        0 => Some(1),
        2 => Some(-1),
        4 => Some(1),
        6 => Some(-1),
        _ => None,
    };
    KoSigns { ko: n as u8, epsilon, epsilon_p, epsilon_dd }
}

#[derive(Debug, Error)]
pub enum RealStructureError {
    #[error("KO-dimension {0} has the wrong parity for this module shape")]
    Parity(u8),
    #[error("multiplicity data is not admissible for KO-dimension {ko}: {reason}")]
    NotAdmissible { ko: u8, reason: String },
    #[error("operator is not of the expected flip-block form (defect {0:.3e})")]
    NotFlipForm(f64),
    #[error("middle components have incompatible symmetry types")]
    SymmetryMismatch,
    #[error("normalization failed verification (defect {0:.3e})")]
    NormalizationDefect(f64),
}

/// Parity tag for graded block slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// One tensor block of a (possibly graded) realized bimodule, with its
/// offset in the total Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub parity: Parity,
    pub alpha: usize,
    pub beta: usize,
    pub n_alpha: usize,
    pub mult: usize,
    pub n_beta: usize,
    pub offset: usize,
}

impl Slot {
    pub fn dim(&self) -> usize {
        self.n_alpha * self.mult * self.n_beta
    }
}

/// Graded realization `H = H_even ⊕ H_odd` (even part first).
#[derive(Debug, Clone, PartialEq)]
pub struct GradedBimodule {
    pub even: Bimodule,
    pub odd: Bimodule,
    pub dim: usize,
}

impl GradedBimodule {
    pub fn build(pair: &EvenPair) -> Self {
        let even = Bimodule::build(pair.even.clone());
        let odd = Bimodule::build(pair.odd.clone());
        let dim = even.dim + odd.dim;
        GradedBimodule { even, odd, dim }
    }

    pub fn lambda(&self, x: &AlgebraElement) -> CMat {
        two_block_diag(&self.even.lambda(x), &self.odd.lambda(x))
    }

    pub fn rho(&self, x: &AlgebraElement) -> CMat {
        two_block_diag(&self.even.rho(x), &self.odd.rho(x))
    }

    pub fn gamma(&self) -> CMat {
        let mut g = eye(self.dim);
        for i in self.even.dim..self.dim {
            g[(i, i)] = cr(-1.0);
        }
        g
    }

    pub fn slots(&self) -> Vec<Slot> {
        let mut out = slots_of(&self.even, Parity::Even, 0);
        out.extend(slots_of(&self.odd, Parity::Odd, self.even.dim));
        out
    }
}

fn two_block_diag(a: &CMat, b: &CMat) -> CMat {
    let (na, nb) = (a.nrows(), b.nrows());
    let mut out = zeros(na + nb, na + nb);
    out.view_mut((0, 0), (na, na)).copy_from(a);
    out.view_mut((na, na), (nb, nb)).copy_from(b);
    out
}

fn slots_of(h: &Bimodule, parity: Parity, base: usize) -> Vec<Slot> {
    h.blocks
        .iter()
        .map(|b| Slot {
            parity,
            alpha: b.alpha,
            beta: b.beta,
            n_alpha: b.n_alpha,
            mult: b.mult,
            n_beta: b.n_beta,
            offset: base + b.offset,
        })
        .collect()
}

pub fn slots_of_ungraded(h: &Bimodule) -> Vec<Slot> {
    slots_of(h, Parity::Even, 0)
}

/// The flip partner of a slot under a real structure of the given
/// KO-dimension: `(α, β) ↦ (β, α)`, staying in the same parity when
/// `ε″ = +1` (and in the odd case) and crossing parity when `ε″ = -1`.
pub fn flip_partner(slots: &[Slot], s: &Slot, ko: u8) -> Option<Slot> {
    let swap_parity = ko_signs(ko).epsilon_dd == Some(-1);
    let want = if swap_parity {
        match s.parity {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    } else {
        s.parity
    };
    slots
        .iter()
        .find(|t| t.parity == want && t.alpha == s.beta && t.beta == s.alpha)
        .copied()
}

/// Write the permutation entries of the flip with middle matrix `mid` from
/// slot `src` into slot `tgt` of `out`: basis vector `(i₁, i₂, i₃)` of
/// `src` is sent to `Σ_j mid[j, i₂] · (i₃, j, i₁)` of `tgt`.
fn write_flip(out: &mut CMat, src: &Slot, tgt: &Slot, mid: &CMat) {
    debug_assert_eq!(src.n_alpha, tgt.n_beta);
    debug_assert_eq!(src.n_beta, tgt.n_alpha);
    debug_assert_eq!(mid.ncols(), src.mult);
    debug_assert_eq!(mid.nrows(), tgt.mult);
    for i1 in 0..src.n_alpha {
        for i2 in 0..src.mult {
            for i3 in 0..src.n_beta {
                let col = src.offset + (i1 * src.mult + i2) * src.n_beta + i3;
                for j in 0..tgt.mult {
                    let v = mid[(j, i2)];
                    if v.norm_sqr() != 0.0 {
                        let row = tgt.offset + (i3 * tgt.mult + j) * tgt.n_beta + i1;
                        out[(row, col)] += v;
                    }
                }
            }
        }
    }
}

/// Extract the middle matrix of the flip component `src → tgt` of `m`, and
/// the Frobenius defect of `m`'s block against the pure flip form.
fn extract_flip(m: &CMat, src: &Slot, tgt: &Slot) -> (CMat, f64) {
    let mut mid = zeros(tgt.mult, src.mult);
    for j in 0..tgt.mult {
        for i2 in 0..src.mult {
            // Read off at first-leg and third-leg indices 0.
            let row = tgt.offset + (0 * tgt.mult + j) * tgt.n_alpha + 0;
            let col = src.offset + (0 * src.mult + i2) * src.n_beta + 0;
            mid[(j, i2)] = m[(row, col)];
        }
    }
    let mut model = zeros(m.nrows(), m.ncols());
    write_flip(&mut model, src, tgt, &mid);
    let mut defect: f64 = 0.0;
    for i1 in 0..src.n_alpha {
        for i2 in 0..src.mult {
            for i3 in 0..src.n_beta {
                let col = src.offset + (i1 * src.mult + i2) * src.n_beta + i3;
                for r in 0..tgt.dim() {
                    let row = tgt.offset + r;
                    defect = defect.max((m[(row, col)] - model[(row, col)]).norm());
                }
            }
        }
    }
    (mid, defect)
}

/// KO-dimensions for which the ungraded multiplicity matrix admits a real
/// structure of odd class.
pub fn admissible_kos_odd(m: &MultiplicityMatrix) -> Vec<u8> {
    let mut out = vec![];
    if m.is_symmetric() {
        out.push(1);
        let diag_even = (0..m.m.len()).all(|a| m.m[a][a] % 2 == 0);
        if diag_even {
            out.push(3);
            out.push(5);
        }
        out.push(7);
    }
    out.sort_unstable();
    out
}

/// KO-dimensions for which the graded pair admits a real structure of even
/// class.
pub fn admissible_kos_even(p: &EvenPair) -> Vec<u8> {
    use crate::bimodule::imat_transpose;
    let mut out = vec![];
    let sym = p.even.is_symmetric() && p.odd.is_symmetric();
    if sym {
        out.push(0);
        let de = (0..p.even.m.len()).all(|a| p.even.m[a][a] % 2 == 0);
        let dodd = (0..p.odd.m.len()).all(|a| p.odd.m[a][a] % 2 == 0);
        if de && dodd {
            out.push(4);
        }
    }
    if p.odd.m == imat_transpose(&p.even.m) {
        out.push(2);
        out.push(6);
    }
    out.sort_unstable();
    out
}

/// Canonical real structure on an ungraded bimodule, odd KO-dimension.
///
/// * `n ∈ {1,7}`: the plain flip `X` (`J² = +1`).
/// * `n ∈ {3,5}`: `+X` on blocks `α < β`, `-X` on `α > β`, and
///   `(1 ⊗ Ω ⊗ 1) X` on diagonal blocks (`J² = -1`), which needs even
///   diagonal multiplicities.
pub fn canonical_odd(h: &Bimodule, ko: u8) -> Result<CMat, RealStructureError> {
    let ko = ko % 8;
    if ko % 2 == 0 {
        return Err(RealStructureError::Parity(ko));
    }
    if !h.mult.is_symmetric() {
        return Err(RealStructureError::NotAdmissible {
            ko,
            reason: "multiplicity matrix is not symmetric".into(),
        });
    }
    let quaternionic = matches!(ko, 3 | 5);
    let slots = slots_of_ungraded(h);
    let mut m = zeros(h.dim, h.dim);
    for s in &slots {
        let t = flip_partner(&slots, s, ko).expect("symmetric support has flip partners");
        let mid = if !quaternionic {
            eye(s.mult)
        } else if s.alpha < s.beta {
            eye(s.mult)
        } else if s.alpha > s.beta {
            eye(s.mult) * cr(-1.0)
        } else {
            if s.mult % 2 != 0 {
                return Err(RealStructureError::NotAdmissible {
                    ko,
                    reason: format!(
                        "diagonal multiplicity {} at spectrum index {} is odd",
                        s.mult, s.alpha
                    ),
                });
            }
            omega(s.mult)
        };
        write_flip(&mut m, s, &t, &mid);
    }
    Ok(m)
}

/// Canonical real structure on a graded bimodule, even KO-dimension.
///
/// * `n ∈ {0,4}`: a parity-preserving flip, of class `{1,7}` (`n = 0`) or
///   `{3,5}` (`n = 4`) on each parity separately.
/// * `n ∈ {2,6}`: the parity-swapping flip `J = [[0, ε J̃*], [J̃, 0]]`,
///   with `J̃` sending the even `(α, β)` block to the odd `(β, α)` block;
///   this needs `m_odd = m_evenᵀ`.
pub fn canonical_even(g: &GradedBimodule, ko: u8) -> Result<CMat, RealStructureError> {
    let ko = ko % 8;
    let signs = ko_signs(ko);
    let Some(epp) = signs.epsilon_dd else {
        return Err(RealStructureError::Parity(ko));
    };
    let slots = g.slots();
    let mut m = zeros(g.dim, g.dim);
    if epp == 1 {
        let inner = if ko == 0 { 1 } else { 3 };
        let me = canonical_odd(&g.even, inner)?;
        let mo = canonical_odd(&g.odd, inner)?;
        m.view_mut((0, 0), (g.even.dim, g.even.dim)).copy_from(&me);
        m.view_mut((g.even.dim, g.even.dim), (g.odd.dim, g.odd.dim)).copy_from(&mo);
        return Ok(m);
    }
    // n ∈ {2, 6}: J̃ is the plain flip from even (α, β) to odd (β, α); the
    // upper-right corner ε J̃* has matrix ε M̃ᵀ because M̃ is real.
    for s in &slots {
        if s.parity != Parity::Even {
            continue;
        }
        let Some(t) = flip_partner(&slots, s, ko) else {
            return Err(RealStructureError::NotAdmissible {
                ko,
                reason: format!(
                    "odd part has no ({}, {}) block matching even ({}, {})",
                    s.beta, s.alpha, s.alpha, s.beta
                ),
            });
        };
        if t.mult != s.mult {
            return Err(RealStructureError::NotAdmissible {
                ko,
                reason: "m_odd is not the transpose of m_even".into(),
            });
        }
        write_flip(&mut m, s, &t, &eye(s.mult));
    }
    // Fill the upper-right corner as ε (lower-left)ᵀ.
    let (de, dd) = (g.even.dim, g.odd.dim);
    let lower = m.view((de, 0), (dd, de)).into_owned();
    let eps = cr(signs.epsilon as f64);
    let upper = lower.transpose() * eps;
    m.view_mut((0, de), (de, dd)).copy_from(&upper);
    Ok(m)
}

/// Measurable defects of a candidate real structure against the KO sign
/// table and the two actions. All should vanish for a genuine one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RealStructureDefects {
    pub unitarity: f64,
    pub squared: f64,
    pub intertwining: f64,
    pub grading: Option<f64>,
}

impl RealStructureDefects {
    pub fn max(&self) -> f64 {
        self.unitarity
            .max(self.squared)
            .max(self.intertwining)
            .max(self.grading.unwrap_or(0.0))
    }
}

pub fn real_structure_defects(
    m: &CMat,
    ko: u8,
    basis: &[AlgebraElement],
    lambda: &dyn Fn(&AlgebraElement) -> CMat,
    rho: &dyn Fn(&AlgebraElement) -> CMat,
    gamma: Option<&CMat>,
) -> RealStructureDefects {
    let signs = ko_signs(ko);
    let dim = m.nrows();
    let unitarity = fro_norm(&(m * dagger(m) - eye(dim)));
    let squared = fro_norm(&(m * m.map(|z| z.conj()) - eye(dim) * cr(signs.epsilon as f64)));
    // J λ(a*) J⁻¹ = ρ(a), i.e. M λ(a*)bar M† = ρ(a).
    let mut intertwining: f64 = 0.0;
    for x in basis {
        let lhs = m * lambda(&x.adjoint()).map(|z| z.conj()) * dagger(m);
        intertwining = intertwining.max(fro_norm(&(lhs - rho(x))));
    }
    let grading = match (signs.epsilon_dd, gamma) {
        (Some(epp), Some(g)) => {
            Some(fro_norm(&(m * g.map(|z| z.conj()) - g * m * cr(epp as f64))))
        }
        _ => None,
    };
    RealStructureDefects { unitarity, squared, intertwining, grading }
}

/// Find a unitary `U` commuting with both actions (so blockwise
/// `1 ⊗ U_s ⊗ 1`) with `U M_in Uᵀ = M_can`, given two real structures of
/// the same KO-dimension on the same slot layout.
///
/// Componentwise the equation reads `U_t S^in U_sᵀ = S^can` for the middle
/// matrices of the flip components `s → t`. Cross pairs are solved by
/// `U_s = 1`, `U_t = S^can (S^in)†`; self-paired diagonal slots by Takagi
/// (`S` symmetric) or Hua (`S` antisymmetric) factorization.
pub fn normalize_real_structure(
    slots: &[Slot],
    m_in: &CMat,
    m_can: &CMat,
    ko: u8,
) -> Result<CMat, RealStructureError> {
    let dim = m_in.nrows();
    let mut u = zeros(dim, dim);
    let mut done = vec![false; slots.len()];
    let index_of = |s: &Slot| slots.iter().position(|x| x == s).unwrap();
    for (si, s) in slots.iter().enumerate() {
        if done[si] {
            continue;
        }
        let t = flip_partner(slots, s, ko).ok_or_else(|| RealStructureError::NotAdmissible {
            ko,
            reason: format!("slot ({}, {}) has no flip partner", s.alpha, s.beta),
        })?;
        let ti = index_of(&t);
        let (s_in, d1) = extract_flip(m_in, s, &t);
        let (s_can, d2) = extract_flip(m_can, s, &t);
        let defect = d1.max(d2);
        if defect > TOL_RANK {
            return Err(RealStructureError::NotFlipForm(defect));
        }
        let (u_s, u_t);
        if ti == si {
            // Self-paired diagonal slot: factor both middle matrices.
            let sym_in = fro_norm(&(&s_in - s_in.transpose()));
            let asym_in = fro_norm(&(&s_in + s_in.transpose()));
            let sym_can = fro_norm(&(&s_can - s_can.transpose()));
            let asym_can = fro_norm(&(&s_can + s_can.transpose()));
            if sym_in < TOL_RANK && sym_can < TOL_RANK {
                let w_in = takagi_symmetric_unitary(&s_in);
                let w_can = takagi_symmetric_unitary(&s_can);
                u_s = &w_can * dagger(&w_in);
            } else if asym_in < TOL_RANK && asym_can < TOL_RANK {
                let w_in = hua_antisymmetric_unitary(&s_in);
                let w_can = hua_antisymmetric_unitary(&s_can);
                u_s = &w_can * dagger(&w_in);
            } else {
                return Err(RealStructureError::SymmetryMismatch);
            }
            u_t = u_s.clone();
        } else {
            u_s = eye(s.mult);
            u_t = &s_can * dagger(&s_in);
        }
        let block_s = kron3(&eye(s.n_alpha), &u_s, &eye(s.n_beta));
        u.view_mut((s.offset, s.offset), (s.dim(), s.dim())).copy_from(&block_s);
        done[si] = true;
        if ti != si {
            let block_t = kron3(&eye(t.n_alpha), &u_t, &eye(t.n_beta));
            u.view_mut((t.offset, t.offset), (t.dim(), t.dim())).copy_from(&block_t);
            done[ti] = true;
        }
    }
    let residual = fro_norm(&(&u * m_in * u.transpose() - m_can));
    if residual > 1e-8 {
        return Err(RealStructureError::NormalizationDefect(residual));
    }
    Ok(u)
}

/// Real dimension of the unitary group commuting with both actions:
/// `Σ_{αβ} m_αβ²`.
pub fn ulr_dim(m: &MultiplicityMatrix) -> usize {
    m.m.iter().flatten().map(|&x| (x * x) as usize).sum()
}

fn fixed_dim_symmetric(m: &crate::bimodule::IMat, diag_shift: i64) -> usize {
    let s = m.len();
    let mut d = 0i64;
    for a in 0..s {
        d += m[a][a] * (m[a][a] + diag_shift) / 2;
        for b in (a + 1)..s {
            d += m[a][b] * m[a][b];
        }
    }
    d as usize
}

/// Real dimension of the subgroup additionally commuting with the canonical
/// real structure, ungraded odd case.
pub fn ulr_fixed_dim_odd(m: &MultiplicityMatrix, ko: u8) -> Result<usize, RealStructureError> {
    match ko % 8 {
        1 | 7 => Ok(fixed_dim_symmetric(&m.m, -1)),
        3 | 5 => Ok(fixed_dim_symmetric(&m.m, 1)),
        k => Err(RealStructureError::Parity(k)),
    }
}

/// Real dimension of the subgroup commuting with the canonical real
/// structure, graded even case.
pub fn ulr_fixed_dim_even(p: &EvenPair, ko: u8) -> Result<usize, RealStructureError> {
    match ko % 8 {
        0 => Ok(fixed_dim_symmetric(&p.even.m, -1) + fixed_dim_symmetric(&p.odd.m, -1)),
        4 => Ok(fixed_dim_symmetric(&p.even.m, 1) + fixed_dim_symmetric(&p.odd.m, 1)),
        2 | 6 => Ok(p.even.m.iter().flatten().map(|&x| (x * x) as usize).sum()),
        k => Err(RealStructureError::Parity(k)),
    }
}
