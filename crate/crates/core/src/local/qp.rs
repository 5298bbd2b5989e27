//! Quadratic spaces over ℚ_v: invariants, representation and the rational
//! buried-pair trichotomy.

use serde::Serialize;

use super::symbols::{hilbert, square_class, Place};
use crate::lattice::Lattice;

/// Dimension, determinant square class and Hasse symbol `∏_{i<j}(a_i, a_j)`
/// of a diagonalized space. Equal invariants ⟺ isometric spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QpSpaceInv {
    pub place: Place,
    pub dim: usize,
    pub det_class: i128,
    pub hasse: i32,
}

impl QpSpaceInv {
    /// Invariants of `⟨a_1, …, a_n⟩` (non-zero integers).
    pub fn diagonal(entries: &[i128], v: Place) -> Self {
        let mut hasse = 1;
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                hasse *= hilbert(entries[i], entries[j], v);
            }
        }
        let det_class = entries.iter().fold(1i128, |acc, &a| square_class(acc * square_class(a, v), v));
        QpSpaceInv { place: v, dim: entries.len(), det_class, hasse }
    }

    /// Hasse symbol with the `i ≤ j` convention, `∏_{i≤j}(a_i, a_j)`.
    pub fn hasse_inclusive(&self) -> i32 {
        self.hasse * hilbert(self.det_class, -1, self.place)
    }

    /// `⊥ ⟨a⟩`.
    pub fn append(&self, a: i128) -> Self {
        let v = self.place;
        QpSpaceInv {
            place: v,
            dim: self.dim + 1,
            det_class: square_class(self.det_class * square_class(a, v), v),
            hasse: self.hasse * hilbert(self.det_class, a, v),
        }
    }

    /// Whether the space `self` is represented by (embeds in) `big`. At the
    /// real place only positive definite spaces occur, where this reduces
    /// to the dimension count.
    pub fn represented_by(&self, big: &QpSpaceInv) -> bool {
        assert_eq!(self.place, big.place);
        let v = self.place;
        if self.dim > big.dim {
            return false;
        }
        if v == Place::Infinite {
            return true;
        }
        let (du, sv, su) = (self.det_class, big.hasse, self.hasse);
        match big.dim - self.dim {
            0 => self == big,
            1 => {
                // big ≅ self ⊥ ⟨dU·dV⟩
                sv == su * hilbert(du, du * big.det_class, v)
            }
            2 => {
                // big ≅ self ⊥ W with W binary, d(W) = dU·dV
                let dw = square_class(du * big.det_class, v);
                let sw = sv * su * hilbert(du, dw, v);
                !(square_class(-dw, v) == 1 && sw == -1)
            }
            _ => true,
        }
    }
}

/// Rational diagonalization: `a_i ∼ D_i·D_{i−1}` from the leading minors.
pub fn rational_diagonal(l: &Lattice) -> Vec<i128> {
    let minors = l.gram().leading_minors();
    let mut out = Vec::with_capacity(minors.len());
    let mut prev = 1;
    for d in minors {
        out.push(d * prev);
        prev = d;
    }
    out
}

pub fn qp_invariants(l: &Lattice, v: Place) -> QpSpaceInv {
    QpSpaceInv::diagonal(&reduce_entries(&rational_diagonal(l), v), v)
}

/// Replaces each entry by its canonical square class (keeps products small).
fn reduce_entries(a: &[i128], v: Place) -> Vec<i128> {
    a.iter().map(|&x| square_class(x, v)).collect()
}

/// Whether `ℚ_v U` is represented by `ℚ_v V`.
pub fn qp_space_represents(u: &Lattice, big: &Lattice, v: Place) -> bool {
    qp_invariants(u, v).represented_by(&qp_invariants(big, v))
}

/// Whether some `n`-dimensional ℚ_v-space represents both `ℓ1` and `ℓ2`.
pub fn buried_over_qp(l1: &Lattice, l2: &Lattice, n: usize, v: Place) -> bool {
    let m = l1.rank();
    assert_eq!(m, l2.rank(), "buried pairs need equal ranks");
    assert!(m <= n, "rank {n} is below the pair rank {m}");
    let (a, b) = (qp_invariants(l1, v), qp_invariants(l2, v));
    if n >= m + 2 || a == b {
        return true;
    }
    n == m + 1 && a.det_class != b.det_class
}
