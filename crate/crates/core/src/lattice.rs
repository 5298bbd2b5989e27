//! Integral lattices given by Gram matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{size_reduce, Mat};

/// Whether a lattice is positive definite or the positive semi-definite
/// variant that only arises from degenerate `L(t)` witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Definiteness {
    Definite,
    Semidefinite,
}

/// A classically integral ℤ-lattice: a symmetric integer Gram matrix with a
/// positivity certificate.
#[derive(Clone, Debug)]
pub struct Lattice {
    gram: Mat,
    label: Option<String>,
    kind: Definiteness,
}

// Labels are display metadata; equality is on the Gram matrix.
impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram && self.kind == other.kind
    }
}

impl Eq for Lattice {}

impl std::hash::Hash for Lattice {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gram.hash(state);
        self.kind.hash(state);
    }
}

impl Lattice {
    /// Validates a Gram matrix and returns a positive definite lattice.
    pub fn new(gram: Mat) -> Result<Self> {
        Self::validate(&gram)?;
        Ok(Lattice { gram, label: None, kind: Definiteness::Definite })
    }

    pub fn from_rows<R: AsRef<[i128]>>(rows: &[R]) -> Result<Self> {
        Self::new(Mat::from_rows(rows))
    }

    /// Panicking constructor for Gram matrices known to be valid.
    pub fn gram_unchecked(rows: &[&[i128]]) -> Self {
        Self::from_rows(rows).expect("valid Gram matrix")
    }

    pub fn diagonal(entries: &[i128]) -> Self {
        Self::new(Mat::diag(entries)).expect("positive diagonal")
    }

    /// The rank-0 lattice, the neutral element of `direct_sum`.
    pub fn zero() -> Self {
        Lattice { gram: Mat::zeros(0, 0), label: None, kind: Definiteness::Definite }
    }

    /// Positive semi-definite lattice. Only used for degenerate witnesses.
    pub fn semidefinite(gram: Mat) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if let Some(minor) = principal_minors_nonnegative(&gram) {
            return Err(Error::NotPositiveSemidefinite { minor });
        }
        let kind = if gram.det() > 0 { Definiteness::Definite } else { Definiteness::Semidefinite };
        Ok(Lattice { gram, label: None, kind })
    }

    fn validate(gram: &Mat) -> Result<()> {
        if !gram.is_square() || !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for (k, d) in gram.leading_minors().into_iter().enumerate() {
            if d <= 0 {
                return Err(Error::NotPositiveDefinite { index: k + 1, minor: d });
            }
        }
        Ok(())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn kind(&self) -> Definiteness {
        self.kind
    }

    pub fn is_definite(&self) -> bool {
        self.kind == Definiteness::Definite
    }

    pub fn det(&self) -> i128 {
        self.gram.det()
    }

    pub fn entry(&self, i: usize, j: usize) -> i128 {
        self.gram[(i, j)]
    }

    /// Norm `Q(x) = xᵗ G x` of a coordinate vector.
    pub fn norm(&self, x: &[i128]) -> i128 {
        self.gram.quad(x)
    }

    pub fn inner(&self, x: &[i128], y: &[i128]) -> i128 {
        self.gram.bilinear(x, y)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)] % 2 == 0)
    }

    /// Orthogonal sum, block-diagonal Gram.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice { gram: self.gram.block_diag(&other.gram), label: None, kind: Definiteness::Definite }
    }

    /// Multiplies the bilinear form by `c > 0`.
    pub fn scale(&self, c: i128) -> Lattice {
        assert!(c > 0, "scale factor must be positive");
        Lattice { gram: self.gram.scaled(c), label: None, kind: self.kind }
    }

    /// Lattice in the basis given by the columns of `t` (`tᵗ G t`).
    pub fn transform(&self, t: &Mat) -> Result<Lattice> {
        Lattice::new(self.gram.congruent(t))
    }

    /// The sublattice of vectors of even norm, index 1 or 2, returned in a
    /// size-reduced basis.
    pub fn even_sublattice(&self) -> Lattice {
        if self.is_even() {
            return self.clone();
        }
        let n = self.rank();
        let odd = (0..n).find(|&i| self.gram[(i, i)] % 2 != 0).unwrap();
        // Q(x) ≡ Σ g_ii x_i (mod 2); kernel of that functional
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = vec![0i128; n];
            if j == odd {
                v[odd] = 2;
            } else {
                v[j] = 1;
                if self.gram[(j, j)] % 2 != 0 {
                    v[odd] = 1;
                }
            }
            cols.push(v);
        }
        let basis = Mat::from_columns(&cols);
        let g = self.gram.congruent(&basis);
        Lattice::new(size_reduce(&g).0).expect("sublattice of a definite lattice")
    }

    /// Same lattice in a size-reduced basis, with the change of basis.
    pub fn reduced(&self) -> (Lattice, Mat) {
        let (g, u) = size_reduce(&self.gram);
        (Lattice { gram: g, label: self.label.clone(), kind: self.kind }, u)
    }

    /// Gram matrix restricted to a subset of the basis.
    pub fn section(&self, idx: &[usize]) -> Lattice {
        Lattice { gram: self.gram.submatrix(idx, idx), label: None, kind: self.kind }
    }
}

/// Returns the first negative principal minor, if any (all principal minors
/// must be non-negative for positive semi-definiteness).
fn principal_minors_nonnegative(g: &Mat) -> Option<i128> {
    let n = g.rows();
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let d = g.submatrix(&idx, &idx).det();
        if d < 0 {
            return Some(d);
        }
    }
    None
}

/// Orthogonal sum of several lattices.
pub fn orthogonal_sum<'a>(parts: impl IntoIterator<Item = &'a Lattice>) -> Lattice {
    parts.into_iter().fold(Lattice::zero(), |acc, l| acc.direct_sum(l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_lattice_examples() {
        assert_eq!(Lattice::from_rows(&[[2, 1], [1, 2]]).unwrap().det(), 3);
        assert_eq!(Lattice::from_rows(&[[21, 5], [5, 64]]).unwrap().det(), 1319);
        assert!(matches!(
            Lattice::from_rows(&[[1, 2], [2, 1]]),
            Err(Error::NotPositiveDefinite { index: 2, minor: -3 })
        ));
        assert!(matches!(Lattice::from_rows(&[[1, 2], [1, 1]]), Err(Error::NotSymmetric)));
    }

    #[test]
    fn sums_and_scaling() {
        let l = Lattice::diagonal(&[1]).direct_sum(&Lattice::diagonal(&[2]));
        assert_eq!(l, Lattice::diagonal(&[1, 2]));
        assert_eq!(Lattice::diagonal(&[1, 23]).scale(2), Lattice::diagonal(&[2, 46]));
        assert_eq!(Lattice::diagonal(&[2, 3, 19]).det(), 114);
    }

    #[test]
    fn even_sublattice_examples() {
        assert_eq!(Lattice::diagonal(&[1, 1]).even_sublattice(), Lattice::diagonal(&[2, 2]));
        assert_eq!(Lattice::diagonal(&[1]).even_sublattice(), Lattice::diagonal(&[4]));
        let a2 = Lattice::from_rows(&[[2, -1], [-1, 2]]).unwrap();
        assert_eq!(a2.even_sublattice(), a2);
    }

    #[test]
    fn semidefinite_rules() {
        let psd = Lattice::semidefinite(Mat::from_rows(&[[1, 1], [1, 1]])).unwrap();
        assert_eq!(psd.kind(), Definiteness::Semidefinite);
        assert!(Lattice::semidefinite(Mat::from_rows(&[[1, 2], [2, 1]])).is_err());
    }
}
