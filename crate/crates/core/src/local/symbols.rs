//! Residue symbols, Hilbert symbols and square classes.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::linalg::{is_prime, valuation};

/// A place of ℚ: a prime or the real place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(i128),
    Infinite,
}

impl Place {
    pub fn prime(p: i128) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        Place::Finite(p)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "inf" | "infinity" | "oo" => Ok(Place::Infinite),
            _ => match s.parse::<i128>() {
                Ok(p) if is_prime(p) => Ok(Place::Finite(p)),
                _ => Err(Error::InvalidArgument(format!("not a place: {s:?}"))),
            },
        }
    }
}

/// Jacobi symbol `(a/m)` for odd `m ≥ 1`.
pub fn jacobi(a: i128, m: i128) -> i32 {
    assert!(m > 0 && m % 2 == 1, "jacobi needs odd positive modulus");
    let mut a = a.rem_euclid(m);
    let mut m = m;
    let mut sign = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        a %= m;
    }
    if m == 1 {
        sign
    } else {
        0
    }
}

/// `a = p^v · u` with `p ∤ u`.
pub fn split(a: i128, p: i128) -> (u32, i128) {
    let v = valuation(a, p);
    (v, a / p.pow(v))
}

fn eps(u: i128) -> i32 {
    (((u - 1) / 2).rem_euclid(2)) as i32
}

fn omega(u: i128) -> i32 {
    let r = u.rem_euclid(8);
    (((r * r - 1) / 8) % 2) as i32
}

/// Hilbert symbol `(a, b)_v` for non-zero integers.
pub fn hilbert(a: i128, b: i128, v: Place) -> i32 {
    assert!(a != 0 && b != 0, "hilbert symbol of zero");
    match v {
        Place::Infinite => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (al, u) = split(a, 2);
            let (be, w) = split(b, 2);
            let e = eps(u) * eps(w) + al as i32 * omega(w) + be as i32 * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let (al, u) = split(a, p);
            let (be, w) = split(b, p);
            let mut s = 1;
            if (al * be) % 2 == 1 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            if be % 2 == 1 {
                s *= jacobi(u, p);
            }
            if al % 2 == 1 {
                s *= jacobi(w, p);
            }
            s
        }
    }
}

/// Least quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: i128) -> i128 {
    (2..p).find(|&u| jacobi(u, p) == -1).expect("odd prime has a non-residue")
}

/// Canonical square-class representative of a non-zero integer at `v`:
/// `{1, u, p, up}` for odd `p` (`u` the least non-residue),
/// `{±1, ±2, ±5, ±10}` at 2, and the sign at ∞.
pub fn square_class(a: i128, v: Place) -> i128 {
    assert!(a != 0, "square class of zero");
    match v {
        Place::Infinite => a.signum(),
        Place::Finite(2) => {
            let (e, u) = split(a, 2);
            let unit = match u.rem_euclid(8) {
                1 => 1,
                3 => -5,
                5 => 5,
                _ => -1,
            };
            if e % 2 == 0 {
                unit
            } else {
                2 * unit
            }
        }
        Place::Finite(p) => {
            let (e, u) = split(a, p);
            let unit = if jacobi(u, p) == 1 { 1 } else { least_nonresidue(p) };
            if e % 2 == 0 {
                unit
            } else {
                unit * p
            }
        }
    }
}

/// `a ∼ b` over ℚ_v.
pub fn same_square_class(a: i128, b: i128, v: Place) -> bool {
    square_class(a, v) == square_class(b, v)
}

/// All canonical square classes at `v`.
pub fn square_classes(v: Place) -> Vec<i128> {
    match v {
        Place::Infinite => vec![1, -1],
        Place::Finite(2) => vec![1, -1, 2, -2, 5, -5, 10, -10],
        Place::Finite(p) => {
            let u = least_nonresidue(p);
            vec![1, u, p, u * p]
        }
    }
}
