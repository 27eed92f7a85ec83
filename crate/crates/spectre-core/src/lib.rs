//! Structure theory of finite real spectral triples.
//!
//! The library works with finite-dimensional real C*-algebras in Wedderburn
//! form, their bimodules encoded by integer multiplicity matrices, real
//! structures classified by KO-dimension mod 8, and the Dirac operators
//! allowed by the order-one condition. On top of those it provides moduli
//! dimension counts, a low-dimensional classification sweep, and the
//! particle-physics fixtures built from the left-right symmetric algebra.
//!
//! Layering (each module only depends on the ones above it):
//! `linalg` → `algebra` → `bimodule` → `real_structure` → `dirac` →
//! `ccm` → `classify`.

pub mod algebra;
pub mod bimodule;
pub mod linalg;
pub mod ccm;
pub mod classify;
pub mod dirac;
pub mod real_structure;
