//! Genus equality and the local buried-pair criteria.

use serde::Serialize;

use super::jordan::{jordan_decomposition, Unimodular};
use super::qp::{buried_over_qp, qp_invariants, QpSpaceInv};
use super::symbols::{least_nonresidue, Place};
use super::zp::{zp_represents, zp_represents_gram};
use crate::lattice::Lattice;
use crate::linalg::{kernel_mod_p, prime_divisors, projective_points, Mat};

/// Same rank, same determinant and ℤ_p-isometric at every `p | 2·det`.
pub fn same_genus(l1: &Lattice, l2: &Lattice) -> bool {
    if l1.rank() != l2.rank() || l1.det() != l2.det() {
        return false;
    }
    prime_divisors(2 * l1.det()).into_iter().all(|p| {
        if p == 2 {
            zp_represents(l1, l2, 2) && zp_represents(l2, l1, 2)
        } else {
            jordan_decomposition(l1, p) == jordan_decomposition(l2, p)
        }
    })
}

/// Whether some rank-`n` ℤ_p-lattice represents both `ℓ1` and `ℓ2`.
///
/// Odd `p` defers to the rational criterion. At `p = 2` every representing
/// lattice sits inside a maximal integral one, and maximal lattices only
/// have Jordan scales `1` and `2`, so those candidates are searched.
pub fn buried_over_zp(l1: &Lattice, l2: &Lattice, n: usize, p: i128) -> bool {
    if p != 2 {
        return buried_over_qp(l1, l2, n, Place::Finite(p));
    }
    buried_over_zp_search(l1, l2, n, p)
}

/// Candidate search valid at every prime.
pub fn buried_over_zp_search(l1: &Lattice, l2: &Lattice, n: usize, p: i128) -> bool {
    let m = l1.rank();
    assert_eq!(m, l2.rank(), "buried pairs need equal ranks");
    assert!(m <= n, "rank {n} is below the pair rank {m}");
    if n >= 2 * m {
        return true;
    }
    let v = Place::Finite(p);
    let (i1, i2) = (qp_invariants(l1, v), qp_invariants(l2, v));
    maximal_candidates(n, p).iter().any(|c| {
        i1.represented_by(&c.inv)
            && i2.represented_by(&c.inv)
            && zp_represents_gram(l1.gram(), &c.gram, p)
            && zp_represents_gram(l2.gram(), &c.gram, p)
    })
}

/// A maximal ℤ_p-lattice together with the invariants of its ℚ_p-space.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub gram: Mat,
    pub inv: QpSpaceInv,
}

/// The rank-`n` ℤ_p-lattices with scales in `{1, p}` that admit no integral
/// overlattice.
pub fn maximal_candidates(n: usize, p: i128) -> Vec<Candidate> {
    let constituents: Vec<Unimodular> = if p == 2 {
        vec![Unimodular::Unit(1), Unimodular::Unit(3), Unimodular::Unit(5), Unimodular::Unit(7), Unimodular::H, Unimodular::A]
    } else {
        Vec::new()
    };
    let mut out = Vec::new();
    for k0 in 0..=n {
        let lows = blocks_of_dim(k0, p, &constituents);
        let highs = blocks_of_dim(n - k0, p, &constituents);
        for (lo, dlo) in &lows {
            for (hi, dhi) in &highs {
                let gram = lo.block_diag(&hi.scaled(p));
                if is_maximal_at(&gram, p) {
                    let diag: Vec<i128> = dlo.iter().copied().chain(dhi.iter().map(|x| x * p)).collect();
                    out.push(Candidate { gram, inv: QpSpaceInv::diagonal(&diag, Place::Finite(p)) });
                }
            }
        }
    }
    out
}

/// Unimodular Gram matrices of dimension `d` with a rational diagonal form:
/// one per determinant class at odd `p`, all multisets of constituents at 2.
fn blocks_of_dim(d: usize, p: i128, constituents: &[Unimodular]) -> Vec<(Mat, Vec<i128>)> {
    if d == 0 {
        return vec![(Mat::zeros(0, 0), Vec::new())];
    }
    if p != 2 {
        let mut twisted = vec![1; d];
        twisted[d - 1] = least_nonresidue(p);
        return vec![(Mat::identity(d), vec![1; d]), (Mat::diag(&twisted), twisted)];
    }
    let mut out = Vec::new();
    multisets(d, 0, constituents, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|parts| {
            let gram = parts.iter().fold(Mat::zeros(0, 0), |g, u| g.block_diag(&u.gram(2)));
            let diag = parts
                .iter()
                .flat_map(|u| match u {
                    Unimodular::Unit(x) => vec![*x as i128],
                    Unimodular::H => vec![1, -1],
                    Unimodular::A => vec![2, 6],
                    Unimodular::Odd { .. } => unreachable!(),
                })
                .collect();
            (gram, diag)
        })
        .collect()
}

fn multisets(d: usize, from: usize, cs: &[Unimodular], cur: &mut Vec<Unimodular>, out: &mut Vec<Vec<Unimodular>>) {
    if d == 0 {
        out.push(cur.clone());
        return;
    }
    for i in from..cs.len() {
        if cs[i].dim() <= d {
            cur.push(cs[i]);
            multisets(d - cs[i].dim(), i, cs, cur, out);
            cur.pop();
        }
    }
}

/// No vector `v/p` with `v ∉ pL` can be adjoined keeping integrality.
fn is_maximal_at(g: &Mat, p: i128) -> bool {
    projective_points(&kernel_mod_p(g, p), p).iter().all(|v| g.quad(v) % (p * p) != 0)
}

/// Per-prime breakdown of a genus-level buried test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusVerdict {
    pub buried: bool,
    pub primes: Vec<(i128, bool)>,
}

/// Whether `ℓ1, ℓ2` are buried in some genus of rank `n`, with the verdict
/// at each prime dividing `2·dℓ1·dℓ2`.
pub fn buried_in_genus_detail(l1: &Lattice, l2: &Lattice, n: usize) -> GenusVerdict {
    let primes: Vec<(i128, bool)> = prime_divisors(2 * l1.det() * l2.det())
        .into_iter()
        .map(|p| (p, buried_over_zp(l1, l2, n, p)))
        .collect();
    GenusVerdict { buried: primes.iter().all(|&(_, b)| b), primes }
}

pub fn buried_in_genus(l1: &Lattice, l2: &Lattice, n: usize) -> bool {
    buried_in_genus_detail(l1, l2, n).buried
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::NamedLattice;

    fn d(e: &[i128]) -> Lattice {
        Lattice::diagonal(e)
    }

    #[test]
    fn genus_examples() {
        let l1 = d(&[1]).direct_sum(&Lattice::gram_unchecked(&[&[5, 1], &[1, 23]]));
        assert!(same_genus(&l1, &d(&[2, 3, 19])));
        assert!(!same_genus(&d(&[1, 3]), &NamedLattice::A(2).lattice()));
        assert!(same_genus(&l1, &l1));
        assert!(!same_genus(&d(&[1, 1, 1]), &d(&[1, 1])));
    }

    #[test]
    fn one_twenty_eight_vs_a2() {
        let a2 = NamedLattice::A(2).lattice();
        assert!(!buried_over_zp(&d(&[1, 28]), &a2, 3, 2));
        assert!(!buried_in_genus(&d(&[1, 28]), &a2, 3));
        assert!(buried_over_zp(&d(&[1, 28]), &a2, 4, 2));
    }

    #[test]
    fn example_pair() {
        assert!(buried_in_genus(&d(&[1, 23]), &d(&[2, 3]), 3));
        assert!(buried_in_genus(&d(&[1, 1]), &d(&[1, 1]), 2));
    }

    #[test]
    fn candidates_are_maximal() {
        let c = maximal_candidates(3, 2);
        assert!(!c.is_empty());
        assert!(c.iter().all(|c| c.gram.rows() == 3));
        assert!(c.iter().any(|c| c.gram == Mat::identity(3)));
        assert!(c.iter().any(|c| c.gram == Mat::diag(&[1, 1, 2])));
        let hyperbolic = Mat::diag(&[1]).block_diag(&Mat::from_rows(&[[0, 2], [2, 0]]));
        assert!(c.iter().all(|c| c.gram != hyperbolic));
        // ⟨1,1⟩, ⟨1,2⟩, four of shape ⟨ε⟩⊥3⟨η⟩, and the anisotropic 3⟨1,1⟩
        assert_eq!(maximal_candidates(2, 3).len(), 7);
    }
}
