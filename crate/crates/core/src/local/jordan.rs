//! Jordan splittings over ℤ_p, computed with exact rational arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::symbols::{jacobi, least_nonresidue, Place};
use crate::lattice::Lattice;
use crate::linalg::{is_prime, Mat};

/// A unimodular constituent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Unimodular {
    /// Odd `p`: dimension and whether the unit determinant is a square.
    Odd { dim: usize, square_det: bool },
    /// `⟨u⟩` at `p = 2`, `u ∈ {1, 3, 5, 7}`.
    Unit(u8),
    /// `[[0,1],[1,0]]`.
    H,
    /// `[[2,1],[1,2]]`.
    A,
}

impl Unimodular {
    pub fn dim(&self) -> usize {
        match self {
            Unimodular::Odd { dim, .. } => *dim,
            Unimodular::Unit(_) => 1,
            Unimodular::H | Unimodular::A => 2,
        }
    }

    /// An integer Gram matrix for the constituent at `p`.
    pub fn gram(&self, p: i128) -> Mat {
        match *self {
            Unimodular::Odd { dim, square_det } => {
                let mut d = vec![1; dim];
                if !square_det {
                    d[dim - 1] = least_nonresidue(p);
                }
                Mat::diag(&d)
            }
            Unimodular::Unit(u) => Mat::diag(&[u as i128]),
            Unimodular::H => Mat::from_rows(&[[0, 1], [1, 0]]),
            Unimodular::A => Mat::from_rows(&[[2, 1], [1, 2]]),
        }
    }
}

impl fmt::Display for Unimodular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unimodular::Odd { dim, square_det } => write!(f, "{dim}{}", if *square_det { "+" } else { "-" }),
            Unimodular::Unit(u) => write!(f, "<{u}>"),
            Unimodular::H => f.write_str("H"),
            Unimodular::A => f.write_str("A"),
        }
    }
}

/// `L ≅ ⊥_s p^s U_s` with strictly increasing scales. At odd `p` there is one
/// constituent per scale and the form is a complete invariant; at `p = 2`
/// each scale holds a sorted list of constituents (not canonical).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JordanForm {
    pub place: Place,
    pub blocks: Vec<(u32, Vec<Unimodular>)>,
}

impl JordanForm {
    pub fn prime(&self) -> i128 {
        match self.place {
            Place::Finite(p) => p,
            Place::Infinite => unreachable!("Jordan forms live at finite places"),
        }
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().flat_map(|(_, us)| us).map(Unimodular::dim).sum()
    }

    /// `v_p` of the determinant.
    pub fn det_valuation(&self) -> u32 {
        self.blocks.iter().map(|(s, us)| s * us.iter().map(|u| u.dim() as u32).sum::<u32>()).sum()
    }

    /// Integer Gram matrix of `⊥ p^s U_s`.
    pub fn gram(&self) -> Mat {
        let p = self.prime();
        let mut g = Mat::zeros(0, 0);
        for (s, us) in &self.blocks {
            for u in us {
                g = g.block_diag(&u.gram(p).scaled(p.pow(*s)));
            }
        }
        g
    }

    fn from_parts(p: i128, mut parts: Vec<(u32, Unimodular)>) -> Self {
        parts.sort();
        let mut blocks: Vec<(u32, Vec<Unimodular>)> = Vec::new();
        for (s, u) in parts {
            match blocks.last_mut() {
                Some((t, us)) if *t == s => us.push(u),
                _ => blocks.push((s, vec![u])),
            }
        }
        if p != 2 {
            for (_, us) in &mut blocks {
                let dim = us.iter().map(Unimodular::dim).sum();
                let square_det = us.iter().filter(|u| matches!(u, Unimodular::Odd { square_det: false, .. })).count() % 2 == 0;
                *us = vec![Unimodular::Odd { dim, square_det }];
            }
        }
        JordanForm { place: Place::Finite(p), blocks }
    }
}

impl fmt::Display for JordanForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(s, us)| format!("{}^{s}:{}", self.prime(), us.iter().map(|u| u.to_string()).collect::<Vec<_>>().join("+")))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

fn val_int(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

fn val(r: &BigRational, p: &BigInt) -> Option<i64> {
    if r.is_zero() {
        None
    } else {
        Some(val_int(r.numer(), p) as i64 - val_int(r.denom(), p) as i64)
    }
}

/// `p`-free part of `r` as `numer · denom` (same square class).
fn unit_part(r: &BigRational, p: &BigInt) -> BigInt {
    let strip = |n: &BigInt| {
        let mut n = n.clone();
        while (&n % p).is_zero() {
            n /= p;
        }
        n
    };
    strip(r.numer()) * strip(r.denom())
}

fn residue(n: &BigInt, m: i128) -> i128 {
    let m = BigInt::from(m);
    (((n % &m) + &m) % &m).to_i128().expect("small residue")
}

pub fn jordan_decomposition(l: &Lattice, p: i128) -> JordanForm {
    jordan_of_gram(l.gram(), p)
}

pub(crate) fn jordan_of_gram(g: &Mat, p: i128) -> JordanForm {
    assert!(is_prime(p), "{p} is not prime");
    let n = g.rows();
    let bp = BigInt::from(p);
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(BigInt::from(g[(i, j)]))).collect()).collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut parts = Vec::new();
    while !live.is_empty() {
        // minimal valuation over the live block, diagonal entries preferred
        let mut best: Option<(i64, bool, usize, usize)> = None;
        for (x, &i) in live.iter().enumerate() {
            for &j in &live[x..] {
                if let Some(v) = val(&a[i][j], &bp) {
                    let diag = i == j;
                    let better = match best {
                        None => true,
                        Some((bv, bd, _, _)) => v < bv || (v == bv && diag && !bd),
                    };
                    if better {
                        best = Some((v, diag, i, j));
                    }
                }
            }
        }
        let (v, diag, i, j) = best.expect("non-degenerate Gram matrix");
        let s = u32::try_from(v).expect("integral lattice");
        if diag || p != 2 {
            let i = if diag {
                i
            } else {
                // e_i ← e_i + e_j makes the diagonal attain the minimum
                for k in 0..n {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for k in 0..n {
                    let t = a[k][j].clone();
                    a[k][i] += t;
                }
                i
            };
            let piv = a[i][i].clone();
            let u = unit_part(&piv, &bp);
            let unit = if p == 2 {
                Unimodular::Unit(residue(&u, 8) as u8)
            } else {
                Unimodular::Odd { dim: 1, square_det: jacobi(residue(&u, p), p) == 1 }
            };
            parts.push((s, unit));
            live.retain(|&k| k != i);
            for &k in &live {
                let c = &a[k][i] / &piv;
                for &t in &live {
                    let d = &c * &a[i][t];
                    a[k][t] -= d;
                }
            }
            for &k in &live {
                a[k][i] = BigRational::zero();
                a[i][k] = BigRational::zero();
            }
        } else {
            let (b11, b12, b22) = (a[i][i].clone(), a[i][j].clone(), a[j][j].clone());
            let det = &b11 * &b22 - &b12 * &b12;
            let scaled = &det / BigRational::from_integer(BigInt::from(2).pow(2 * s));
            let kind = if residue(&unit_part(&scaled, &bp), 8) == 3 { Unimodular::A } else { Unimodular::H };
            parts.push((s, kind));
            live.retain(|&k| k != i && k != j);
            for &k in &live {
                // coefficients of e_k's projection onto span(e_i, e_j)
                let (x, y) = (a[k][i].clone(), a[k][j].clone());
                let c1 = (&b22 * &x - &b12 * &y) / &det;
                let c2 = (&b11 * &y - &b12 * &x) / &det;
                for &t in &live {
                    let d = &c1 * &a[i][t] + &c2 * &a[j][t];
                    a[k][t] -= d;
                }
            }
            for &k in &live {
                for r in [i, j] {
                    a[k][r] = BigRational::zero();
                    a[r][k] = BigRational::zero();
                }
            }
        }
    }
    let out = JordanForm::from_parts(p, parts);
    debug_assert!(out.rank() == n);
    out
}
