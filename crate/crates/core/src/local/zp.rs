//! Representations of lattices over ℤ_p.
//!
//! A representation `ℓ → L` is a matrix `X` with `Xᵗ G X = S`. We build `X`
//! one `p`-adic digit at a time. Past the first digit each new digit solves a
//! linear system over 𝔽_p, so the search tree is the tree of approximate
//! solutions. A branch is accepted once a Hensel argument shows it lifts:
//!
//! * generically, when the current precision exceeds `δ + 2·v_p(2)` where
//!   `p^δ` bounds the denominators of `S⁻¹` (Newton step `X ← X(1 − S⁻¹E/2)`);
//! * earlier, when the differential `Y ↦ XᵗGY + YᵗGX` is surjective up to a
//!   small power `p^c` and the precision exceeds `2c + v_p(2)`.
//!
//! At `p = 2` a state of precision `j` fixes `X mod 2^j` with the
//! off-diagonal of the error divisible by `2^j` and its diagonal by
//! `2^{j+1}`. Both conditions only depend on `X mod 2^j`.

use crate::lattice::Lattice;
use crate::linalg::{mod_inverse, pow, valuation, Mat};

/// Whether `ℓ` is represented by `L` over ℤ_p.
pub fn zp_represents(l: &Lattice, big: &Lattice, p: i128) -> bool {
    zp_represents_gram(l.gram(), big.gram(), p)
}

pub(crate) fn zp_represents_gram(s: &Mat, g: &Mat, p: i128) -> bool {
    let (m, n) = (s.rows(), g.rows());
    if m > n {
        return false;
    }
    if m == 0 {
        return true;
    }
    let det = s.det();
    assert!(det != 0, "degenerate source form");
    let adj = s.adjugate();
    let min_adj = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| adj[(i, j)] != 0)
        .map(|(i, j)| valuation(adj[(i, j)], p))
        .min()
        .expect("adjugate of an invertible matrix");
    let delta = valuation(det, p) - min_adj;
    let two = u32::from(p == 2);
    let search = Search { s, g, p, m, n, two, bound: delta + 2 * two + 1 };
    let mut found = false;
    search.base(&mut Vec::new(), &mut |x| {
        found = search.dfs(x, 1);
        !found
    });
    found
}

struct Search<'a> {
    s: &'a Mat,
    g: &'a Mat,
    p: i128,
    m: usize,
    n: usize,
    two: u32,
    bound: u32,
}

impl Search<'_> {
    /// First digit, column by column. Calls `f` on each `X mod p`
    /// (column-major) until it returns false.
    fn base(&self, cols: &mut Vec<Vec<i128>>, f: &mut dyn FnMut(&[i128]) -> bool) -> bool {
        let k = cols.len();
        if k == self.m {
            let x: Vec<i128> = cols.iter().flatten().copied().collect();
            return f(&x);
        }
        let (p, n) = (self.p, self.n);
        let diag_mod = if p == 2 { 4 } else { p };
        let total = pow(p, n as u32);
        let mut v = vec![0i128; n];
        for code in 0..total {
            let mut c = code;
            for x in v.iter_mut() {
                *x = c % p;
                c /= p;
            }
            if (self.g.quad(&v) - self.s[(k, k)]).rem_euclid(diag_mod) != 0 {
                continue;
            }
            if cols.iter().enumerate().any(|(i, w)| (self.g.bilinear(w, &v) - self.s[(i, k)]).rem_euclid(p) != 0) {
                continue;
            }
            cols.push(v.clone());
            let go_on = self.base(cols, f);
            cols.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    fn column<'x>(&self, x: &'x [i128], k: usize) -> &'x [i128] {
        &x[k * self.n..(k + 1) * self.n]
    }

    /// `H = XᵗG` reduced mod `modulus`, as `m` rows of length `n`.
    fn h(&self, x: &[i128], modulus: i128) -> Vec<Vec<i128>> {
        (0..self.m)
            .map(|i| {
                let col = self.column(x, i);
                (0..self.n)
                    .map(|r| (0..self.n).map(|t| col[t] * self.g[(t, r)]).sum::<i128>().rem_euclid(modulus))
                    .collect()
            })
            .collect()
    }

    /// Matrix of the differential in the basis `{E_ik + E_ki}` (and `E_ii`,
    /// halved at `p = 2`) against the entries of `Y`.
    fn differential(&self, h: &[Vec<i128>], modulus: i128) -> Vec<Vec<i128>> {
        let (m, n) = (self.m, self.n);
        let mut rows = Vec::with_capacity(m * (m + 1) / 2);
        for i in 0..m {
            for k in i..m {
                let mut row = vec![0i128; n * m];
                for r in 0..n {
                    if i == k {
                        let c = if self.p == 2 { h[i][r] } else { 2 * h[i][r] };
                        row[i * n + r] = c.rem_euclid(modulus);
                    } else {
                        row[k * n + r] = (row[k * n + r] + h[i][r]).rem_euclid(modulus);
                        row[i * n + r] = (row[i * n + r] + h[k][r]).rem_euclid(modulus);
                    }
                }
                rows.push(row);
            }
        }
        rows
    }

    fn dfs(&self, x: &[i128], j: u32) -> bool {
        if j >= self.bound {
            return true;
        }
        let (p, n, m) = (self.p, self.n, self.m);
        let pj = pow(p, j);
        if let Some(c) = max_elementary_valuation(self.differential(&self.h(x, pj), pj), p, j) {
            if j > 2 * c + self.two {
                return true;
            }
        }
        let h = self.h(x, p);
        let mut system = self.differential(&h, p);
        let mut rhs = Vec::with_capacity(system.len());
        for i in 0..m {
            for k in i..m {
                let e = self.g.bilinear(self.column(x, i), self.column(x, k)) - self.s[(i, k)];
                let shift = if i == k { pj * pow(2, self.two) } else { pj };
                debug_assert_eq!(e % shift, 0);
                rhs.push((-e / shift).rem_euclid(p));
            }
        }
        if p == 2 && j == 1 {
            // the square of the new digit still reaches the diagonal
            let mut row_idx = 0;
            for i in 0..m {
                for k in i..m {
                    if i == k {
                        for r in 0..n {
                            system[row_idx][i * n + r] = (system[row_idx][i * n + r] + self.g[(r, r)]).rem_euclid(2);
                        }
                    }
                    row_idx += 1;
                }
            }
        }
        let Some((particular, kernel)) = solve_mod_p(&system, &rhs, p) else {
            return false;
        };
        let count = pow(p, kernel.len() as u32);
        let mut next = x.to_vec();
        for code in 0..count {
            let mut c = code;
            let mut w = particular.clone();
            for b in &kernel {
                let coeff = c % p;
                c /= p;
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi = (*wi + coeff * bi) % p;
                }
            }
            for (t, wi) in w.iter().enumerate() {
                next[t] = x[t] + pj * wi;
            }
            if self.dfs(&next, j + 1) {
                return true;
            }
        }
        false
    }
}

/// Largest valuation among the elementary divisors of `a` over ℤ_p, known
/// modulo `p^j`; `None` when the matrix does not have full row rank there.
fn max_elementary_valuation(mut a: Vec<Vec<i128>>, p: i128, j: u32) -> Option<u32> {
    let modulus = pow(p, j);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut live_rows: Vec<usize> = (0..rows).collect();
    let mut live_cols: Vec<usize> = (0..cols).collect();
    let mut worst = 0;
    while !live_rows.is_empty() {
        let mut best: Option<(u32, usize, usize)> = None;
        for &r in &live_rows {
            for &c in &live_cols {
                let x = a[r][c];
                if x != 0 {
                    let v = valuation(x, p);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                    }
                }
            }
        }
        let (v, pr, pc) = best?;
        worst = worst.max(v);
        let pv = pow(p, v);
        let inv = mod_inverse(a[pr][pc] / pv, modulus);
        live_rows.retain(|&r| r != pr);
        live_cols.retain(|&c| c != pc);
        for &r in &live_rows {
            if a[r][pc] == 0 {
                continue;
            }
            let f = (a[r][pc] / pv * inv).rem_euclid(modulus);
            for &c in &live_cols {
                a[r][c] = (a[r][c] - f * a[pr][c]).rem_euclid(modulus);
            }
            a[r][pc] = 0;
        }
    }
    Some(worst)
}

/// Affine solution set of `A·w = b` over 𝔽_p: a particular solution and a
/// kernel basis.
fn solve_mod_p(a: &[Vec<i128>], b: &[i128], p: i128) -> Option<(Vec<i128>, Vec<Vec<i128>>)> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .zip(b)
        .map(|(row, &r)| row.iter().map(|x| x.rem_euclid(p)).chain([r.rem_euclid(p)]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = mod_inverse(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x * inv) % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for t in 0..=cols {
                    m[i][t] = (m[i][t] - f * m[r][t]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut particular = vec![0i128; cols];
    for (i, &pc) in pivots.iter().enumerate() {
        particular[pc] = m[i][cols];
    }
    let kernel = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0i128; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (-m[i][f]).rem_euclid(p);
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(e: &[i128]) -> Lattice {
        Lattice::diagonal(e)
    }

    #[test]
    fn sums_of_three_squares() {
        let i3 = d(&[1, 1, 1]);
        for a in 1..200 {
            let mut r = a;
            while r % 4 == 0 {
                r /= 4;
            }
            assert_eq!(zp_represents(&d(&[a]), &i3, 2), r % 8 != 7, "a = {a}");
        }
    }

    #[test]
    fn anisotropic_plane_at_three() {
        // ⟨1,1⟩ is anisotropic unimodular over ℤ_3: exactly the even valuations
        let plane = d(&[1, 1]);
        for a in 1..100 {
            let even = crate::linalg::valuation(a, 3) % 2 == 0;
            assert_eq!(zp_represents(&d(&[a]), &plane, 3), even, "a = {a}");
        }
    }

    #[test]
    fn reflexive_and_rank() {
        for g in [d(&[1, 28]), Lattice::gram_unchecked(&[&[2, 1], &[1, 2]]), d(&[2, 3, 19])] {
            for p in [2, 3, 5, 7, 19] {
                assert!(zp_represents(&g, &g, p));
            }
        }
        assert!(!zp_represents(&d(&[1, 1, 1]), &d(&[1, 1]), 2));
    }

    #[test]
    fn binary_examples() {
        // ⟨3,3⟩ is not even represented over ℚ_2 by I_2 ⊥ ⟨a⟩
        for a in 1..20 {
            assert!(!zp_represents(&d(&[3, 3]), &d(&[1, 1, a]), 2));
        }
        assert!(zp_represents(&d(&[1, 1]), &d(&[1, 1, 1]), 2));
        assert!(!zp_represents(&d(&[1, 3]), &Lattice::gram_unchecked(&[&[2, 1], &[1, 2]]), 2));
    }

    #[test]
    fn smith_valuations() {
        assert_eq!(max_elementary_valuation(vec![vec![2, 0], vec![0, 4]], 2, 5), Some(2));
        assert_eq!(max_elementary_valuation(vec![vec![2, 4]], 2, 5), Some(1));
        assert_eq!(max_elementary_valuation(vec![vec![0, 0]], 2, 5), None);
    }
}
