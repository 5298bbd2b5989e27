//! Short vectors, successive minima, isometry testing and enumeration of
//! lattices (reduced binaries, finite-index superlattices).

mod embed;
mod shortvec;

use std::collections::BTreeMap;

pub(crate) use embed::find_embedding;
pub(crate) use shortvec::{Enumerator, Target};
pub use shortvec::{box_search, find_vector, represented_values, short_vectors, vectors_of_norm, ShortVectorList};

use crate::lattice::Lattice;
use crate::linalg::{column_echelon, kernel_mod_p, prime_divisors, projective_points, Mat};

/// Successive minima `m_1 ≤ … ≤ m_n`.
pub fn successive_minima(l: &Lattice) -> Vec<i128> {
    let n = l.rank();
    let (red, _) = l.reduced();
    let bound = (0..n).map(|i| red.entry(i, i)).max().unwrap_or(0);
    let sv = short_vectors(l, bound);
    let mut basis: Vec<Vec<i128>> = Vec::new();
    let mut minima = Vec::with_capacity(n);
    for (v, q) in &sv.vectors {
        basis.push(v.clone());
        if rank_of(&basis) == basis.len() {
            minima.push(*q);
            if minima.len() == n {
                break;
            }
        } else {
            basis.pop();
        }
    }
    assert_eq!(minima.len(), n, "reduced diagonal bounds the last minimum");
    minima
}

fn rank_of(vectors: &[Vec<i128>]) -> usize {
    column_echelon(&Mat::from_columns(vectors).transpose()).2
}

/// Counts of vectors (up to sign) of each norm `1..=bound`.
pub fn norm_profile(l: &Lattice, bound: i128) -> Vec<usize> {
    let mut counts = vec![0usize; bound.max(0) as usize];
    if bound > 0 {
        Enumerator::new(l.gram()).visit_raw(Target::AtMost(bound), false, &mut |_, q| {
            counts[q as usize - 1] += 1;
            true
        });
    }
    counts
}

fn max_reduced_diag(l: &Lattice) -> i128 {
    let (r, _) = l.reduced();
    (0..r.rank()).map(|i| r.entry(i, i)).max().unwrap_or(0)
}

/// An isometry `T` with `Tᵗ G₁ T = G₂` (`|det T| = 1`), if the lattices are isometric.
pub fn isometry(l1: &Lattice, l2: &Lattice) -> Option<Mat> {
    if l1.rank() != l2.rank() || l1.det() != l2.det() || l1.kind() != l2.kind() {
        return None;
    }
    if l1.gram() == l2.gram() {
        return Some(Mat::identity(l1.rank()));
    }
    let b = max_reduced_diag(l1).max(max_reduced_diag(l2));
    if norm_profile(l1, b) != norm_profile(l2, b) {
        return None;
    }
    find_embedding(l2.gram(), l1.gram())
}

pub fn is_isometric(l1: &Lattice, l2: &Lattice) -> bool {
    isometry(l1, l2).is_some()
}

/// Keeps the first member of every isometry class, preserving order.
pub fn dedup_isometric(lattices: Vec<Lattice>) -> Vec<Lattice> {
    let mut classes: BTreeMap<(usize, i128), Vec<Lattice>> = BTreeMap::new();
    let mut out = Vec::new();
    for l in lattices {
        let bucket = classes.entry((l.rank(), l.det())).or_default();
        if bucket.iter().any(|m| is_isometric(m, &l)) {
            continue;
        }
        bucket.push(l.clone());
        out.push(l);
    }
    out
}

/// Reduced binaries `[[a,b],[b,c]]` with `0 ≤ 2b ≤ a ≤ c` and `ac − b² = d`,
/// one per isometry class, sorted by `(a, b, c)`.
pub fn enumerate_binary_by_det(d: i128) -> Vec<Lattice> {
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= 4 * d {
        for b in 0..=a / 2 {
            if (d + b * b) % a == 0 {
                let c = (d + b * b) / a;
                if c >= a {
                    out.push(Lattice::gram_unchecked(&[&[a, b], &[b, c]]));
                }
            }
        }
        a += 1;
    }
    dedup_isometric(out)
}

/// Superlattices obtained by adjoining one vector `v/p` to `l`, up to isometry.
fn one_step_superlattices(l: &Lattice) -> Vec<Lattice> {
    let g = l.gram();
    let n = l.rank();
    let det = l.det();
    let mut out = Vec::new();
    for p in prime_divisors(det) {
        if det % (p * p) != 0 {
            continue;
        }
        let kernel = kernel_mod_p(g, p);
        for v in projective_points(&kernel, p) {
            if g.quad(&v) % (p * p) != 0 {
                continue;
            }
            let mut cols: Vec<Vec<i128>> = (0..n)
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = p;
                    e
                })
                .collect();
            cols.push(v);
            let (h, _, r) = column_echelon(&Mat::from_columns(&cols));
            debug_assert_eq!(r, n);
            let basis = Mat::from_columns(&(0..n).map(|j| h.column(j)).collect::<Vec<_>>());
            let big = g.congruent(&basis);
            let scaled = Mat::from_rows(
                &big.to_rows().iter().map(|row| row.iter().map(|x| x / (p * p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            );
            let sup = Lattice::new(scaled).expect("superlattice of a definite lattice");
            out.push(sup.reduced().0);
        }
    }
    dedup_isometric(out)
}

/// All integral lattices containing `s` with finite index, up to isometry,
/// with `s` itself first and the rest in breadth-first order.
pub fn superlattices(s: &Lattice) -> Vec<Lattice> {
    let mut all = vec![s.clone()];
    let mut frontier = vec![s.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for l in &frontier {
            for sup in one_step_superlattices(l) {
                if !all.iter().chain(next.iter()).any(|m: &Lattice| is_isometric(m, &sup)) {
                    next.push(sup);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// No proper integral superlattice on the same rational space.
pub fn is_primitive(l: &Lattice) -> bool {
    one_step_superlattices(l).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::NamedLattice;

    #[test]
    fn minima_examples() {
        assert_eq!(successive_minima(&Lattice::diagonal(&[2, 3, 19])), vec![2, 3, 19]);
        assert_eq!(successive_minima(&Lattice::gram_unchecked(&[&[21, 5], &[5, 64]])), vec![21, 64]);
        assert_eq!(successive_minima(&NamedLattice::A(2).lattice()), vec![2, 2]);
    }

    #[test]
    fn isometry_examples() {
        let one = Lattice::diagonal(&[1]);
        let a2 = NamedLattice::A(2).lattice();
        assert!(is_isometric(&one.direct_sum(&a2), &a2.direct_sum(&one)));
        let t = isometry(&Lattice::gram_unchecked(&[&[2, 1], &[1, 2]]), &a2).unwrap();
        assert_eq!(t.det().abs(), 1);
        assert!(!is_isometric(&Lattice::diagonal(&[1, 1]), &Lattice::diagonal(&[1, 2])));
        // same determinant, different classes
        assert!(!is_isometric(&Lattice::diagonal(&[1, 4]), &Lattice::diagonal(&[2, 2])));
    }

    #[test]
    fn binaries_by_det() {
        let grams = |d| enumerate_binary_by_det(d).iter().map(|l| l.gram().to_rows()).collect::<Vec<_>>();
        assert_eq!(grams(1), vec![vec![vec![1, 0], vec![0, 1]]]);
        assert_eq!(grams(3), vec![vec![vec![1, 0], vec![0, 3]], vec![vec![2, 1], vec![1, 2]]]);
        assert_eq!(grams(4), vec![vec![vec![1, 0], vec![0, 4]], vec![vec![2, 0], vec![0, 2]]]);
    }

    #[test]
    fn superlattice_examples() {
        assert_eq!(superlattices(&Lattice::diagonal(&[1, 1])).len(), 1);
        let s = superlattices(&Lattice::diagonal(&[2, 2]));
        assert_eq!(s.len(), 2);
        assert!(is_isometric(&s[1], &Lattice::diagonal(&[1, 1])));
        let lp = Lattice::diagonal(&[2]).direct_sum(&Lattice::gram_unchecked(&[&[4, 2], &[2, 8]]));
        let target = Lattice::diagonal(&[2]).direct_sum(&Lattice::gram_unchecked(&[&[2, 1], &[1, 4]]));
        assert!(superlattices(&lp).iter().any(|m| is_isometric(m, &target)));
        assert!(is_primitive(&Lattice::diagonal(&[1, 1])));
        assert!(!is_primitive(&Lattice::diagonal(&[2, 2])));
        assert!(is_primitive(&NamedLattice::A(2).lattice()));
    }

    #[test]
    fn superlattice_index_identity() {
        let s = Lattice::diagonal(&[4, 9, 2]);
        for l in superlattices(&s) {
            let ratio = s.det() / l.det();
            assert_eq!(s.det() % l.det(), 0);
            let idx = crate::linalg::isqrt(ratio);
            assert_eq!(idx * idx, ratio);
            let t = find_embedding(s.gram(), l.gram()).expect("sublattice embeds");
            assert_eq!(t.det().abs(), idx);
        }
    }
}
