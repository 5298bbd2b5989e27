//! Constructors for the named lattices used throughout the crate.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::lattice::Lattice;
use crate::linalg::Mat;

/// Tags for the lattices that have a fixed name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedLattice {
    /// The identity lattice `I_n`.
    I(usize),
    /// Root lattice `A_n`.
    A(usize),
    E6,
    E7,
    E8,
    /// The binary `(4 1; 1 4)`.
    K,
    /// Ternaries `L(1)…L(7)` with the 2-adic exception progressions.
    L(u8),
    /// Ternaries `M(1)…M(4)` with the 3- and 5-adic exception progressions.
    M(u8),
    /// Ramanujan's ternary `⟨1,1,10⟩`.
    Ramanujan,
}

impl NamedLattice {
    pub fn lattice(self) -> Lattice {
        let l = match self {
            NamedLattice::I(n) => Lattice::diagonal(&vec![1; n]),
            NamedLattice::A(n) => a_n(n),
            NamedLattice::E6 => e_n(6),
            NamedLattice::E7 => e_n(7),
            NamedLattice::E8 => e_n(8),
            NamedLattice::K => Lattice::gram_unchecked(&[&[4, 1], &[1, 4]]),
            NamedLattice::L(i) => l_ternary(i),
            NamedLattice::M(i) => m_ternary(i),
            NamedLattice::Ramanujan => Lattice::diagonal(&[1, 1, 10]),
        };
        l.with_label(self.to_string())
    }

    /// All tags with a fixed rank, in display order.
    pub fn ternaries() -> Vec<NamedLattice> {
        let mut v: Vec<NamedLattice> = (1..=7).map(NamedLattice::L).collect();
        v.extend((1..=4).map(NamedLattice::M));
        v.push(NamedLattice::Ramanujan);
        v
    }
}

impl fmt::Display for NamedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedLattice::I(n) => write!(f, "I{n}"),
            NamedLattice::A(n) => write!(f, "A{n}"),
            NamedLattice::E6 => f.write_str("E6"),
            NamedLattice::E7 => f.write_str("E7"),
            NamedLattice::E8 => f.write_str("E8"),
            NamedLattice::K => f.write_str("K"),
            NamedLattice::L(i) => write!(f, "L({i})"),
            NamedLattice::M(i) => write!(f, "M({i})"),
            NamedLattice::Ramanujan => f.write_str("N"),
        }
    }
}

impl FromStr for NamedLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidArgument(format!("unknown lattice name {s:?}"));
        let inner = |t: &str| -> Option<u8> {
            t.strip_prefix('(')?.strip_suffix(')')?.parse().ok()
        };
        let tag = match s {
            "E6" => NamedLattice::E6,
            "E7" => NamedLattice::E7,
            "E8" => NamedLattice::E8,
            "K" => NamedLattice::K,
            "N" | "Ramanujan" => NamedLattice::Ramanujan,
            _ if s.starts_with("L(") => match inner(&s[1..]) {
                Some(i @ 1..=7) => NamedLattice::L(i),
                _ => return Err(bad()),
            },
            _ if s.starts_with("M(") => match inner(&s[1..]) {
                Some(i @ 1..=4) => NamedLattice::M(i),
                _ => return Err(bad()),
            },
            _ if s.starts_with('I') => NamedLattice::I(s[1..].parse().map_err(|_| bad())?),
            _ if s.starts_with('A') => NamedLattice::A(s[1..].parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        match tag {
            NamedLattice::I(0) | NamedLattice::A(0) => Err(bad()),
            t => Ok(t),
        }
    }
}

fn a_n(n: usize) -> Lattice {
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = 2;
        if i + 1 < n {
            g[(i, i + 1)] = -1;
            g[(i + 1, i)] = -1;
        }
    }
    Lattice::new(g).expect("A_n is positive definite")
}

/// `E_n` from its Dynkin diagram: a chain of `n − 1` nodes with one extra
/// node attached to the third node of the chain.
fn e_n(n: usize) -> Lattice {
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = 2;
    }
    let mut link = |a: usize, b: usize| {
        g[(a, b)] = -1;
        g[(b, a)] = -1;
    };
    for i in 0..n - 2 {
        link(i, i + 1);
    }
    link(2, n - 1);
    Lattice::new(g).expect("E_n is positive definite")
}

fn l_ternary(i: u8) -> Lattice {
    let one = Lattice::diagonal(&[1]);
    match i {
        1 => Lattice::gram_unchecked(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 3]]),
        2 => one.direct_sum(&Lattice::gram_unchecked(&[&[3, 1], &[1, 5]])),
        3 => Lattice::diagonal(&[1, 1, 5]),
        4 => one.direct_sum(&Lattice::gram_unchecked(&[&[2, 1], &[1, 2]])),
        5 => Lattice::diagonal(&[1, 2, 3]),
        6 => Lattice::diagonal(&[1, 1, 1]),
        7 => Lattice::diagonal(&[1, 1, 2]),
        _ => panic!("L({i}) is not defined"),
    }
}

fn m_ternary(i: u8) -> Lattice {
    match i {
        1 => Lattice::diagonal(&[1, 1, 6]),
        2 => Lattice::diagonal(&[1, 1, 3]),
        3 => Lattice::diagonal(&[1]).direct_sum(&Lattice::gram_unchecked(&[&[2, 1], &[1, 3]])),
        4 => Lattice::diagonal(&[1, 2, 5]),
        _ => panic!("M({i}) is not defined"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_lattice_determinants() {
        assert_eq!(NamedLattice::A(2).lattice().det(), 3);
        assert_eq!(NamedLattice::A(5).lattice().det(), 6);
        assert_eq!(NamedLattice::E6.lattice().det(), 3);
        assert_eq!(NamedLattice::E7.lattice().det(), 2);
        assert_eq!(NamedLattice::E8.lattice().det(), 1);
    }

    #[test]
    fn printed_grams() {
        assert_eq!(NamedLattice::K.lattice().det(), 15);
        assert_eq!(NamedLattice::L(1).lattice().det(), 7);
        assert_eq!(NamedLattice::L(2).lattice().det(), 14);
        assert_eq!(NamedLattice::M(3).lattice().det(), 5);
    }

    #[test]
    fn parse_round_trip() {
        for tag in [NamedLattice::I(6), NamedLattice::A(5), NamedLattice::E6, NamedLattice::L(4), NamedLattice::M(2), NamedLattice::Ramanujan] {
            assert_eq!(tag.to_string().parse::<NamedLattice>().unwrap(), tag);
        }
        assert!("L(9)".parse::<NamedLattice>().is_err());
    }
}
