//! Backtracking search for representations of one Gram matrix by another.
//!
//! Basis vectors of the (size-reduced) source are matched one at a time. Once
//! `w_0 … w_{i-1}` are fixed, the admissible images of the next vector form a
//! coset `v_0 + K·z` of the integer kernel `K` of `Wᵗ G`; vectors of the
//! required norm in that coset are listed by enumerating on the Gram of
//! `(K, v_0)` with the last coordinate pinned to 1.

use super::shortvec::{Enumerator, Target};
use crate::linalg::{integer_kernel, round_div, size_reduce, solve_integer, Mat};

/// Returns `T` (`dst.rows() × src.rows()`) with `Tᵗ·dst·T = src`, if any.
pub(crate) fn find_embedding(src: &Mat, dst: &Mat) -> Option<Mat> {
    let (m, n) = (src.rows(), dst.rows());
    if m > n {
        return None;
    }
    if m == 0 {
        return Some(Mat::zeros(n, 0));
    }
    let (gs, us) = size_reduce(src);
    let (gd, ud) = size_reduce(dst);
    let mut chosen = Vec::with_capacity(m);
    if !search(&gs, &gd, &mut chosen) {
        return None;
    }
    let t = ud.mul(&Mat::from_columns(&chosen)).mul(&us.unimodular_inverse());
    assert_eq!(dst.congruent(&t), *src, "embedding witness failed verification");
    Some(t)
}

fn search(gs: &Mat, gd: &Mat, chosen: &mut Vec<Vec<i128>>) -> bool {
    let i = chosen.len();
    if i == gs.rows() {
        return true;
    }
    for c in candidates(gs, gd, chosen) {
        chosen.push(c);
        if search(gs, gd, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Images for source vector `i = chosen.len()` consistent with the choices so far.
fn candidates(gs: &Mat, gd: &Mat, chosen: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let i = chosen.len();
    let n = gd.rows();
    let norm = gs[(i, i)];
    if i == 0 {
        // sign of the first image is free
        return homogeneous(gd, &Mat::identity(n), norm, false);
    }
    let w = Mat::from_columns(&chosen.to_vec());
    let a = w.transpose().mul(gd);
    let b: Vec<i128> = (0..i).map(|j| gs[(j, i)]).collect();
    if b.iter().all(|&x| x == 0) {
        let k = integer_kernel(&a);
        return homogeneous(gd, &k, norm, true);
    }
    let Some((v0, k)) = solve_integer(&a, &b) else {
        return Vec::new();
    };
    if k.cols() == 0 {
        return if gd.quad(&v0) == norm { vec![v0] } else { Vec::new() };
    }
    let k = reduce_columns(gd, &k);
    let v0 = reduce_against(gd, &k, v0);
    let mut cols: Vec<Vec<i128>> = (0..k.cols()).map(|j| k.column(j)).collect();
    cols.push(v0);
    let basis = Mat::from_columns(&cols);
    let e = Enumerator::raw(&gd.congruent(&basis));
    let mut out = Vec::new();
    e.visit_raw(Target::Exact(norm), true, &mut |z, _| {
        out.push(basis.mul_vec(z));
        true
    });
    out
}

/// Vectors of norm `norm` in the column span of `k`, optionally with both signs.
fn homogeneous(gd: &Mat, k: &Mat, norm: i128, both_signs: bool) -> Vec<Vec<i128>> {
    if k.cols() == 0 {
        return Vec::new();
    }
    let k = reduce_columns(gd, k);
    let e = Enumerator::raw(&gd.congruent(&k));
    let mut out = Vec::new();
    e.visit_raw(Target::Exact(norm), false, &mut |z, _| {
        let v = k.mul_vec(z);
        if both_signs {
            out.push(v.iter().map(|c| -c).collect());
        }
        out.push(v);
        true
    });
    out
}

/// Size-reduces the sublattice spanned by the columns of `k`.
fn reduce_columns(gd: &Mat, k: &Mat) -> Mat {
    let (_, u) = size_reduce(&gd.congruent(k));
    k.mul(&u)
}

/// Translates `v` by the column span of `k` towards the origin.
fn reduce_against(gd: &Mat, k: &Mat, mut v: Vec<i128>) -> Vec<i128> {
    loop {
        let mut changed = false;
        for j in 0..k.cols() {
            let kj = k.column(j);
            let q = round_div(gd.bilinear(&v, &kj), gd.quad(&kj));
            if q != 0 {
                let next: Vec<i128> = v.iter().zip(&kj).map(|(a, b)| a - q * b).collect();
                if gd.quad(&next) < gd.quad(&v) {
                    v = next;
                    changed = true;
                }
            }
        }
        if !changed {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusion_and_failure() {
        let a2 = Mat::from_rows(&[[2, -1], [-1, 2]]);
        let big = Mat::diag(&[1]).block_diag(&a2);
        assert!(find_embedding(&a2, &big).is_some());
        let k = Mat::from_rows(&[[4, 1], [1, 4]]);
        assert!(find_embedding(&k, &Mat::identity(4)).is_none());
        assert!(find_embedding(&k, &Mat::identity(4).block_diag(&Mat::diag(&[1]))).is_some());
    }
}
