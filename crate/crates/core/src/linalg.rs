//! Dense integer matrices and the exact linear algebra the rest of the crate
//! is built on: fraction-free determinants, column Hermite reduction,
//! integer kernels, and pairwise size reduction of Gram matrices.

use std::fmt;

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[i128]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].as_ref().len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged matrix");
            data.extend_from_slice(row.as_ref());
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn diag(entries: &[i128]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_columns(cols: &[Vec<i128>]) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = Mat::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..r {
                m[(i, j)] = col[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `Tᵗ · self · T`, the Gram matrix in the basis given by the columns of `t`.
    pub fn congruent(&self, t: &Mat) -> Mat {
        t.transpose().mul(&self.mul(t))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Quadratic form value `vᵗ·self·v`.
    pub fn quad(&self, v: &[i128]) -> i128 {
        let mut s = 0;
        for i in 0..self.rows {
            if v[i] == 0 {
                continue;
            }
            s += v[i] * dot(self.row(i), v);
        }
        s
    }

    pub fn bilinear(&self, u: &[i128], v: &[i128]) -> i128 {
        dot(u, &self.mul_vec(v))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    pub fn leading(&self, k: usize) -> Mat {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx)
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        let n = self.rows + other.rows;
        let m = self.cols + other.cols;
        let mut out = Mat::zeros(n, m);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    pub fn scaled(&self, c: i128) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `col[dst] += k * col[src]`.
    pub fn add_col(&mut self, dst: usize, src: usize, k: i128) {
        if k == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    pub fn add_row(&mut self, dst: usize, src: usize, k: i128) {
        if k == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)];
        }
    }

    /// Exact determinant by Bareiss elimination with row pivoting.
    pub fn det(&self) -> i128 {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a = self.clone();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a[(k, k)] == 0 {
                match (k + 1..n).find(|&r| a[(r, k)] != 0) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[(i, j)] = (a[(k, k)] * a[(i, j)] - a[(i, k)] * a[(k, j)]) / prev;
                }
            }
            prev = a[(k, k)];
        }
        sign * a[(n - 1, n - 1)]
    }

    /// Leading principal minors `D_1, …, D_n`.
    pub fn leading_minors(&self) -> Vec<i128> {
        (1..=self.rows).map(|k| self.leading(k).det()).collect()
    }

    /// Adjugate matrix, so that `self · adj = det · I`.
    pub fn adjugate(&self) -> Mat {
        let n = self.rows;
        let mut adj = Mat::zeros(n, n);
        if n == 1 {
            adj[(0, 0)] = 1;
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                let rs: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cs: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let m = self.submatrix(&rs, &cs).det();
                adj[(i, j)] = if (i + j) % 2 == 0 { m } else { -m };
            }
        }
        adj
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Mat {
        let d = self.det();
        assert!(d == 1 || d == -1, "matrix is not unimodular");
        self.adjugate().scaled(d)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, x, y)` with `g = gcd(a, b) = a·x + b·y`, `g ≥ 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

/// Nearest integer to `a / b` (`b > 0`), ties rounded up.
pub fn round_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    floor_div(2 * a + b, 2 * b)
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative number");
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n);
        r * r == n
    }
}

/// Column Hermite-style reduction: returns `(h, u)` with `u` unimodular and
/// `a·u = h`, where the first `r` columns of `h` are in lower echelon form
/// and the remaining columns are zero. `r` is the rank of `a`.
pub fn column_echelon(a: &Mat) -> (Mat, Mat, usize) {
    let mut h = a.clone();
    let n = a.cols();
    let mut u = Mat::identity(n);
    let mut piv = 0;
    for row in 0..a.rows() {
        if piv == n {
            break;
        }
        // gcd-eliminate entries of this row right of the pivot column
        for c in piv + 1..n {
            let (x, y) = (h[(row, piv)], h[(row, c)]);
            if y == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(x, y);
            let (p, q) = (x / g, y / g);
            // [piv, c] <- [piv, c] * [[s, -q], [t, p]]
            for m in [&mut h, &mut u] {
                for i in 0..m.rows() {
                    let (vp, vc) = (m[(i, piv)], m[(i, c)]);
                    m[(i, piv)] = s * vp + t * vc;
                    m[(i, c)] = -q * vp + p * vc;
                }
            }
        }
        if h[(row, piv)] != 0 {
            if h[(row, piv)] < 0 {
                h.negate_col(piv);
                u.negate_col(piv);
            }
            // keep earlier entries of the row small
            for c in 0..piv {
                let k = floor_div(h[(row, c)], h[(row, piv)]);
                h.add_col(c, piv, -k);
                u.add_col(c, piv, -k);
            }
            piv += 1;
        }
    }
    (h, u, piv)
}

/// Basis (as columns) of the integer kernel `{x ∈ ℤⁿ : a·x = 0}`.
pub fn integer_kernel(a: &Mat) -> Mat {
    let (_, u, r) = column_echelon(a);
    let cols: Vec<Vec<i128>> = (r..a.cols()).map(|j| u.column(j)).collect();
    if cols.is_empty() {
        Mat::zeros(a.cols(), 0)
    } else {
        Mat::from_columns(&cols)
    }
}

/// Integer solutions of `a·x = b` for `a` of full row rank: a particular
/// solution and a kernel basis, or `None` when no integer solution exists.
pub fn solve_integer(a: &Mat, b: &[i128]) -> Option<(Vec<i128>, Mat)> {
    let (h, u, r) = column_echelon(a);
    let k = a.rows();
    assert_eq!(r, k, "solve_integer needs full row rank");
    let mut z = vec![0i128; a.cols()];
    // row i of h has pivot at column i because rank is full
    for i in 0..k {
        let mut rhs = b[i];
        for c in 0..i {
            rhs -= h[(i, c)] * z[c];
        }
        if rhs % h[(i, i)] != 0 {
            return None;
        }
        z[i] = rhs / h[(i, i)];
    }
    let x = u.mul_vec(&z);
    let cols: Vec<Vec<i128>> = (k..a.cols()).map(|j| u.column(j)).collect();
    let kernel = if cols.is_empty() { Mat::zeros(a.cols(), 0) } else { Mat::from_columns(&cols) };
    Some((x, kernel))
}

/// Basis of the lattice spanned by the columns of `gens` (full column echelon).
pub fn column_span_basis(gens: &Mat) -> Mat {
    let (h, _, r) = column_echelon(gens);
    let cols: Vec<Vec<i128>> = (0..r).map(|j| h.column(j)).collect();
    Mat::from_columns(&cols)
}

/// Pairwise size reduction of a positive definite Gram matrix. Returns the
/// reduced Gram and the unimodular change of basis `u` (`reduced = uᵗ g u`).
/// The reduced basis is sorted by norm and satisfies `2|g_ij| ≤ g_ii` for
/// `i < j`.
pub fn size_reduce(g: &Mat) -> (Mat, Mat) {
    let n = g.rows();
    let mut g = g.clone();
    let mut u = Mat::identity(n);
    loop {
        let mut changed = false;
        // insertion sort by norm
        for i in 1..n {
            let mut j = i;
            while j > 0 && g[(j, j)] < g[(j - 1, j - 1)] {
                g.swap_rows(j, j - 1);
                g.swap_cols(j, j - 1);
                u.swap_cols(j, j - 1);
                j -= 1;
            }
        }
        for j in 0..n {
            for i in 0..n {
                if i == j {
                    continue;
                }
                let gii = g[(i, i)];
                let gij = g[(i, j)];
                if 2 * gij.abs() <= gii {
                    continue;
                }
                let q = round_div(gij, gii);
                // b_j -= q b_i
                g.add_col(j, i, -q);
                g.add_row(j, i, -q);
                u.add_col(j, i, -q);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (g, u)
}

/// p-adic valuation of a non-zero integer.
pub fn valuation(mut n: i128, p: i128) -> u32 {
    assert!(n != 0, "valuation of zero");
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn pow(base: i128, e: u32) -> i128 {
    base.checked_pow(e).expect("integer overflow in pow")
}

pub fn is_prime(n: i128) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of |n| in increasing order.
pub fn prime_divisors(n: i128) -> Vec<i128> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Kernel of a matrix over 𝔽_p as a list of basis vectors with entries in `[0, p)`.
pub fn kernel_mod_p(a: &Mat, p: i128) -> Vec<Vec<i128>> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<i128>> = (0..rows)
        .map(|i| a.row(i).iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = mod_inverse(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x * inv).rem_euclid(p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0i128; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (-m[i][f]).rem_euclid(p);
            }
            v
        })
        .collect()
}

pub fn mod_inverse(a: i128, m: i128) -> i128 {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    assert_eq!(g, 1, "{a} not invertible mod {m}");
    x.rem_euclid(m)
}

/// All non-zero vectors of an 𝔽_p-subspace (given by a basis), one per line
/// through the origin (first non-zero coefficient equal to 1).
pub fn projective_points(basis: &[Vec<i128>], p: i128) -> Vec<Vec<i128>> {
    let r = basis.len();
    if r == 0 {
        return Vec::new();
    }
    let n = basis[0].len();
    let mut out = Vec::new();
    let total = pow(p, r as u32);
    for code in 1..total {
        let mut coeffs = Vec::with_capacity(r);
        let mut c = code;
        for _ in 0..r {
            coeffs.push(c % p);
            c /= p;
        }
        if coeffs.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0i128; n];
        for (k, b) in coeffs.iter().zip(basis) {
            for i in 0..n {
                v[i] = (v[i] + k * b[i]).rem_euclid(p);
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let m = Mat::from_rows(&[[2, 1], [1, 2]]);
        assert_eq!(m.det(), 3);
        let z = Mat::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 5]]);
        assert_eq!(z.det(), -5);
    }

    #[test]
    fn adjugate_inverts() {
        let m = Mat::from_rows(&[[2, 1, 0], [1, 2, 1], [0, 1, 3]]);
        let prod = m.mul(&m.adjugate());
        assert_eq!(prod, Mat::identity(3).scaled(m.det()));
    }

    #[test]
    fn echelon_and_kernel() {
        let a = Mat::from_rows(&[[2, 4, 6], [1, 3, 5]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert_eq!(a.mul_vec(&v), vec![0, 0]);
        assert_eq!(v.iter().fold(0, |g, &x| gcd(g, x)), 1);
        let (x, _) = solve_integer(&a, &[2, 1]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![2, 1]);
        assert!(solve_integer(&a, &[1, 0]).is_none());
    }

    #[test]
    fn size_reduction_is_congruence() {
        let g = Mat::from_rows(&[[3080, 1321, 1409], [1321, 567, 604], [1409, 604, 645]]);
        let (r, u) = size_reduce(&g);
        assert_eq!(g.congruent(&u), r);
        assert_eq!(u.det().abs(), 1);
        assert!(r[(0, 0)] <= r[(1, 1)] && r[(1, 1)] <= r[(2, 2)]);
    }

    #[test]
    fn roots_and_rounding() {
        assert_eq!(isqrt(1_000_000_000_000_000_000_000), 31_622_776_601);
        assert_eq!(round_div(7, 2), 4);
        assert_eq!(round_div(-7, 2), -3);
        assert_eq!(floor_div(-1, 3), -1);
        assert_eq!(ceil_div(1, 3), 1);
    }

    #[test]
    fn kernel_mod_two() {
        let g = Mat::from_rows(&[[2, 0], [0, 2]]);
        assert_eq!(kernel_mod_p(&g, 2).len(), 2);
        assert_eq!(projective_points(&kernel_mod_p(&g, 2), 2).len(), 3);
    }
}
