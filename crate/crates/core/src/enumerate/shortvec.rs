//! Integer-only Fincke–Pohst enumeration.
//!
//! With `D_k` the leading minors and `a_kj` the fraction-free (Bareiss)
//! elimination rows, the quadratic form splits as
//! `Q(x) = Σ_k (D_{k+1} x_k + β_k)² / (D_k D_{k+1})` with
//! `β_k = Σ_{j>k} a_kj x_j`. The scaled tails `v_k = D_k · Σ_{i≥k} term_i`
//! are integers, so the whole traversal is exact.

use serde::Serialize;

use crate::lattice::Lattice;
use crate::linalg::{ceil_div, floor_div, isqrt, size_reduce, Mat};

/// Vectors of norm at most `bound`, one per `±` pair (first non-zero
/// coordinate positive), sorted by norm and then by coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortVectorList {
    pub bound: i128,
    pub vectors: Vec<(Vec<i128>, i128)>,
}

impl ShortVectorList {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn with_norm(&self, n: i128) -> impl Iterator<Item = &Vec<i128>> {
        self.vectors.iter().filter(move |(_, q)| *q == n).map(|(v, _)| v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Target {
    AtMost(i128),
    Exact(i128),
}

impl Target {
    fn bound(self) -> i128 {
        match self {
            Target::AtMost(b) | Target::Exact(b) => b,
        }
    }
}

/// Precomputed elimination data for one Gram matrix.
#[derive(Clone, Debug)]
pub(crate) struct Enumerator {
    n: usize,
    /// `d[k]` is the leading minor of size `k`, `d[0] = 1`.
    d: Vec<i128>,
    /// Upper triangle of the Bareiss rows.
    a: Mat,
    /// Change of basis from enumeration coordinates to caller coordinates.
    u: Mat,
}

impl Enumerator {
    /// Size-reduces first; output vectors are in the original basis.
    pub fn new(gram: &Mat) -> Self {
        let (g, u) = size_reduce(gram);
        Self::with_basis(&g, u)
    }

    /// Enumerates directly in the given basis.
    pub fn raw(gram: &Mat) -> Self {
        Self::with_basis(gram, Mat::identity(gram.rows()))
    }

    fn with_basis(g: &Mat, u: Mat) -> Self {
        let n = g.rows();
        let mut m = g.clone();
        let mut d = vec![1i128; n + 1];
        let mut prev = 1i128;
        for k in 0..n {
            let piv = m[(k, k)];
            assert!(piv > 0, "Gram matrix must be positive definite");
            d[k + 1] = piv;
            for i in k + 1..n {
                for j in k + 1..n {
                    m[(i, j)] = (piv * m[(i, j)] - m[(i, k)] * m[(k, j)]) / prev;
                }
            }
            prev = piv;
        }
        Enumerator { n, d, a: m, u }
    }

    /// Calls `visit(x, Q(x))` for every non-zero `x` meeting `target`, one per
    /// `±` pair, with `x` in enumeration coordinates. With `fix_last`, the last
    /// coordinate is pinned to 1 and both signs of the rest are visited.
    /// Returning `false` from `visit` stops the traversal.
    pub fn visit_raw(&self, target: Target, fix_last: bool, visit: &mut dyn FnMut(&[i128], i128) -> bool) {
        if self.n == 0 {
            return;
        }
        let mut x = vec![0i128; self.n];
        self.level(self.n - 1, &mut x, 0, !fix_last, fix_last, target, visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn level(
        &self,
        k: usize,
        x: &mut [i128],
        v_above: i128,
        zero_above: bool,
        fix_last: bool,
        target: Target,
        visit: &mut dyn FnMut(&[i128], i128) -> bool,
    ) -> bool {
        let (dk, dk1) = (self.d[k], self.d[k + 1]);
        let beta: i128 = (k + 1..self.n).map(|j| self.a[(k, j)] * x[j]).sum();
        let slack = dk1 * target.bound() - v_above;
        if slack < 0 {
            return true;
        }
        if k == 0 {
            if let Target::Exact(norm) = target {
                // y² = D_1·N − v_1 with y = D_1 t + β
                let rhs = dk1 * norm - v_above;
                let s = isqrt(rhs);
                if s * s != rhs {
                    return true;
                }
                let ys: &[i128] = if s == 0 { &[0] } else { &[-s, s] };
                for &y in ys {
                    let num = y - beta;
                    if num % dk1 != 0 {
                        continue;
                    }
                    let t = num / dk1;
                    if zero_above && t <= 0 {
                        continue;
                    }
                    x[0] = t;
                    if !visit(x, norm) {
                        return false;
                    }
                }
                x[0] = 0;
                return true;
            }
        }
        let r = isqrt(dk * slack);
        let mut lo = ceil_div(-r - beta, dk1);
        let mut hi = floor_div(r - beta, dk1);
        if fix_last && k == self.n - 1 {
            if lo > 1 || hi < 1 {
                return true;
            }
            lo = 1;
            hi = 1;
        }
        if zero_above {
            lo = lo.max(if k == 0 { 1 } else { 0 });
        }
        for t in lo..=hi {
            let y = dk1 * t + beta;
            let vk = (y * y + dk * v_above) / dk1;
            x[k] = t;
            if k == 0 {
                if vk <= target.bound() && !visit(x, vk) {
                    return false;
                }
            } else if !self.level(k - 1, x, vk, zero_above && t == 0, fix_last, target, visit) {
                return false;
            }
        }
        x[k] = 0;
        true
    }

    /// Like [`visit_raw`](Self::visit_raw) but in caller coordinates.
    pub fn visit(&self, target: Target, fix_last: bool, visit: &mut dyn FnMut(&[i128], i128) -> bool) {
        self.visit_raw(target, fix_last, &mut |x, q| visit(&self.u.mul_vec(x), q));
    }

    pub fn collect(&self, target: Target) -> Vec<(Vec<i128>, i128)> {
        let mut out = Vec::new();
        self.visit(target, false, &mut |x, q| {
            out.push((normalize_sign(x.to_vec()), q));
            true
        });
        out.sort_by(|(x, p), (y, q)| p.cmp(q).then_with(|| x.cmp(y)));
        out
    }
}

/// Flips `v` so its first non-zero coordinate is positive.
pub(crate) fn normalize_sign(mut v: Vec<i128>) -> Vec<i128> {
    if v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        v.iter_mut().for_each(|c| *c = -*c);
    }
    v
}

/// All non-zero vectors with `Q(x) ≤ bound`, one per `±` pair.
pub fn short_vectors(l: &Lattice, bound: i128) -> ShortVectorList {
    let vectors = if bound <= 0 { Vec::new() } else { Enumerator::new(l.gram()).collect(Target::AtMost(bound)) };
    ShortVectorList { bound, vectors }
}

/// Vectors with `Q(x) = n` exactly, one per `±` pair.
pub fn vectors_of_norm(l: &Lattice, n: i128) -> Vec<Vec<i128>> {
    if n <= 0 {
        return Vec::new();
    }
    Enumerator::new(l.gram()).collect(Target::Exact(n)).into_iter().map(|(v, _)| v).collect()
}

/// `represented[m]` is true iff some vector has norm `m`, for `0 ≤ m ≤ bound`.
pub fn represented_values(l: &Lattice, bound: i128) -> Vec<bool> {
    let mut seen = vec![false; bound.max(0) as usize + 1];
    seen[0] = true;
    if bound > 0 {
        Enumerator::new(l.gram()).visit_raw(Target::AtMost(bound), false, &mut |_, q| {
            seen[q as usize] = true;
            true
        });
    }
    seen
}

/// Some vector of norm exactly `n`, if one exists.
pub fn find_vector(l: &Lattice, n: i128) -> Option<Vec<i128>> {
    if n <= 0 {
        return None;
    }
    let e = Enumerator::new(l.gram());
    let mut found = None;
    e.visit(Target::Exact(n), false, &mut |x, _| {
        found = Some(x.to_vec());
        false
    });
    found
}

/// Box-search oracle for tests: coordinates bounded by `x_i² ≤ B·adj_ii/det`.
#[doc(hidden)]
pub fn box_search(l: &Lattice, bound: i128) -> Vec<(Vec<i128>, i128)> {
    let n = l.rank();
    let adj = l.gram().adjugate();
    let det = l.det();
    let radii: Vec<i128> = (0..n).map(|i| isqrt(bound * adj[(i, i)] / det)).collect();
    let mut out = Vec::new();
    let mut x: Vec<i128> = radii.iter().map(|r| -r).collect();
    loop {
        let q = l.norm(&x);
        if q > 0 && q <= bound && x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
            out.push((x.clone(), q));
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by(|(x, p), (y, q)| p.cmp(q).then_with(|| x.cmp(y)));
                return out;
            }
            if x[i] < radii[i] {
                x[i] += 1;
                break;
            }
            x[i] = -radii[i];
            i += 1;
        }
    }
}
