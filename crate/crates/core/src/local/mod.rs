//! Local theory: residue and Hilbert symbols, quadratic spaces over ℚ_p,
//! Jordan splittings and representations over ℤ_p, genus equality and the
//! local buried-pair criteria.

mod genus;
mod jordan;
mod qp;
mod symbols;
mod zp;

pub use genus::{
    buried_in_genus, buried_in_genus_detail, buried_over_zp, buried_over_zp_search, maximal_candidates, same_genus,
    Candidate, GenusVerdict,
};
pub use jordan::{jordan_decomposition, JordanForm, Unimodular};
pub use qp::{buried_over_qp, qp_invariants, qp_space_represents, rational_diagonal, QpSpaceInv};
pub use symbols::{hilbert, jacobi, least_nonresidue, same_square_class, split, square_class, square_classes, Place};
pub use zp::zp_represents;
