//! Oracle sweeps shared by the property tests and the acceptance target.
#![allow(dead_code)]

use qlat::enumerate::{box_search, enumerate_binary_by_det, short_vectors};
use qlat::linalg::prime_divisors;
use qlat::local::{hilbert, qp_invariants, zp_represents, Place};
use qlat::represent::embeds;
use qlat::{Lattice, Mat};

pub fn binaries(max_det: i128) -> Vec<Lattice> {
    (1..=max_det).flat_map(enumerate_binary_by_det).collect()
}

/// Ternaries with diagonal `a ≤ b ≤ c ≤ max_diag`, off-diagonal entries in
/// `{−1, 0, 1}` and determinant at most `max_det`.
pub fn ternaries(max_diag: i128, max_det: i128) -> Vec<Lattice> {
    let mut out = Vec::new();
    for a in 1..=max_diag {
        for b in a..=max_diag {
            for c in b..=max_diag {
                for x in -1..=1 {
                    for y in -1..=1 {
                        for z in -1..=1 {
                            if let Ok(l) = Lattice::from_rows(&[[a, x, y], [x, b, z], [y, z, c]]) {
                                if l.det() <= max_det {
                                    out.push(l);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Number of `(a, b)` with `∏_v (a, b)_v ≠ 1` for `0 < |a|, |b| ≤ r`.
pub fn reciprocity_failures(r: i128) -> (usize, usize) {
    let mut checked = 0;
    let mut bad = 0;
    for a in -r..=r {
        for b in -r..=r {
            if a == 0 || b == 0 {
                continue;
            }
            checked += 1;
            let mut prod = hilbert(a, b, Place::Infinite);
            for p in prime_divisors(2 * a * b) {
                prod *= hilbert(a, b, Place::Finite(p));
            }
            if prod != 1 {
                bad += 1;
            }
        }
    }
    (checked, bad)
}

/// Vectors of norm `n`, both signs.
fn signed_vectors(l: &Lattice, n: i128) -> Vec<Vec<i128>> {
    box_search(l, n)
        .into_iter()
        .filter(|(_, q)| *q == n)
        .flat_map(|(v, _)| {
            let neg: Vec<i128> = v.iter().map(|x| -x).collect();
            [v, neg]
        })
        .collect()
}

/// Brute-force representation test: pick images basis vector by basis
/// vector from a coordinate box, matching every inner product.
pub fn embeds_oracle(small: &Lattice, big: &Lattice) -> bool {
    let k = small.rank();
    if k > big.rank() {
        return false;
    }
    let s = small.gram();
    let pools: Vec<Vec<Vec<i128>>> = (0..k).map(|i| signed_vectors(big, s[(i, i)])).collect();
    fn go(i: usize, chosen: &mut Vec<Vec<i128>>, pools: &[Vec<Vec<i128>>], s: &Mat, big: &Lattice) -> bool {
        if i == pools.len() {
            return true;
        }
        for v in &pools[i] {
            if (0..i).all(|j| big.inner(&chosen[j], v) == s[(j, i)]) {
                chosen.push(v.clone());
                if go(i + 1, chosen, pools, s, big) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(0, &mut Vec::new(), &pools, s, big)
}

/// Sources and targets for the embedding comparison.
pub fn embed_corpus() -> (Vec<Lattice>, Vec<Lattice>) {
    let mut sources: Vec<Lattice> = (1..=24).map(|a| Lattice::diagonal(&[a])).collect();
    sources.extend(binaries(16));
    let mut targets = binaries(60);
    targets.extend(ternaries(5, 60));
    (sources, targets)
}

/// `(pairs, mismatches)` between `embeds` and the oracle; a found witness
/// must also verify.
pub fn embed_mismatches() -> (usize, Vec<(Lattice, Lattice)>) {
    let (sources, targets) = embed_corpus();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for big in &targets {
        for small in sources.iter().filter(|s| s.rank() <= big.rank()) {
            pairs += 1;
            let fast = embeds(small, big);
            let ok = match &fast {
                Some(w) => w.verify() && embeds_oracle(small, big),
                None => !embeds_oracle(small, big),
            };
            if !ok {
                bad.push((small.clone(), big.clone()));
            }
        }
    }
    (pairs, bad)
}

/// Every global representation in a smaller corpus is also local at every
/// prime dividing `2·dℓ·dL`.
pub fn zp_violations() -> (usize, Vec<(Lattice, Lattice, i128)>) {
    let mut sources: Vec<Lattice> = (1..=16).map(|a| Lattice::diagonal(&[a])).collect();
    sources.extend(binaries(8));
    let mut targets = binaries(20);
    targets.extend(ternaries(3, 20));
    let mut checked = 0;
    let mut bad = Vec::new();
    for big in &targets {
        for small in sources.iter().filter(|s| s.rank() <= big.rank()) {
            if embeds(small, big).is_none() {
                continue;
            }
            for p in prime_divisors(2 * small.det() * big.det()) {
                checked += 1;
                if !zp_represents(small, big, p) {
                    bad.push((small.clone(), big.clone(), p));
                }
            }
        }
    }
    (checked, bad)
}

/// `short_vectors` against the box oracle on the embedding targets and a
/// few larger lattices.
pub fn shortvec_mismatches() -> (usize, usize) {
    let mut ls = binaries(30);
    ls.extend(ternaries(4, 40));
    ls.push(qlat::NamedLattice::E8.lattice());
    ls.push(qlat::NamedLattice::A(4).lattice());
    ls.push(Lattice::diagonal(&[1, 2, 3, 5]));
    let mut bad = 0;
    for l in &ls {
        let bound = if l.rank() > 4 { 4 } else { 24 };
        if short_vectors(l, bound).vectors != box_search(l, bound) {
            bad += 1;
        }
    }
    (ls.len(), bad)
}

/// The displayed criterion for `ℓ1 → ℓ2 ⊥ ⟨α⟩` over ℚ_p, with the Hasse
/// symbol over `i ≤ j`: `(applicable cases, mismatches)`.
pub fn codimension_one_mismatches() -> (usize, usize) {
    let ls = binaries(20);
    let primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    let mut cases = 0;
    let mut bad = 0;
    for &p in &primes {
        let v = Place::Finite(p);
        let inv: Vec<_> = ls.iter().map(|l| qp_invariants(l, v)).collect();
        for (l1, i1) in ls.iter().zip(&inv) {
            for (l2, i2) in ls.iter().zip(&inv) {
                let dd = l1.det() * l2.det();
                for alpha in 1..=60 {
                    cases += 1;
                    let lhs = i1.represented_by(&i2.append(alpha));
                    let rhs = hilbert(dd, alpha, v) == i1.hasse_inclusive() * i2.hasse_inclusive() * hilbert(dd, l2.det(), v);
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
        }
    }
    (cases, bad)
}
