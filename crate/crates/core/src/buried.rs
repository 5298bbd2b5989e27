//! Buried pairs of binary lattices in rank 3.
//!
//! Two binaries `ℓ1, ℓ2` are buried in rank 3 when one positive definite
//! ternary represents both. For primitive inputs this happens exactly when
//! some `a` is primitively represented by both, say
//! `ℓi ≅ [[a, bi], [bi, ci]]`, and an integer `t` satisfies
//! `(a·t − b1·b2)² < dℓ1·dℓ2`; then
//! `L(t) = [[a, b1, b2], [b1, c1, t], [b2, t, c2]]` is a witness.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_binary_by_det, is_isometric, is_primitive, short_vectors};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{Definiteness, Lattice};
use crate::linalg::{floor_div, isqrt, Mat};
use crate::local::buried_in_genus;
use crate::represent::{completion, embeds};

/// The ternary `L(t)`. Positive definite iff `t` lies strictly inside the
/// interval; semi-definite on its boundary, where the determinant
/// `(dℓ1·dℓ2 − (a·t − b1·b2)²)/a` vanishes.
pub fn witness_l(a: i128, b1: i128, c1: i128, b2: i128, c2: i128, t: i128) -> Result<Lattice> {
    let g = Mat::from_rows(&[[a, b1, b2], [b1, c1, t], [b2, t, c2]]);
    let l = Lattice::semidefinite(g)?;
    debug_assert_eq!(l.det() * a, (a * c1 - b1 * b1) * (a * c2 - b2 * b2) - (a * t - b1 * b2).pow(2));
    Ok(l)
}

/// An integer `t` with `(a·t − b1·b2)² < d`, if one exists.
pub fn interval_integer(a: i128, b1: i128, b2: i128, d: i128) -> Option<i128> {
    let center = b1 * b2;
    let t0 = floor_div(center, a);
    [t0, t0 + 1].into_iter().find(|t| (a * t - center).pow(2) < d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BuriedStatus {
    Buried,
    NotBuriedUpTo,
}

/// How a `Buried` verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// An integer inside the open interval.
    Interval,
    /// The inputs are already buried in rank 2; the witness is `ℓ ⊥ ⟨1⟩`.
    Rank2,
    /// A boundary `t` gave a semi-definite `L(t)`; its binary quotient
    /// `⊥ ⟨1⟩` is the witness.
    SemidefiniteRepair,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub a: i128,
    pub b1: i128,
    pub b2: i128,
    pub lower: f64,
    pub upper: f64,
    pub t: Option<i128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuriedVerdict {
    pub status: BuriedStatus,
    pub witness: Option<Lattice>,
    pub route: Option<Route>,
    pub bound: Option<i128>,
    pub trace: Vec<TraceEntry>,
}

impl BuriedVerdict {
    pub fn is_buried(&self) -> bool {
        self.status == BuriedStatus::Buried
    }
}

/// `a ↦ [b]` over primitive vectors of norm `a ≤ bound`, with `0 ≤ b ≤ a/2`.
fn completion_table(l: &Lattice, bound: i128) -> BTreeMap<i128, Vec<(i128, i128)>> {
    let mut table: BTreeMap<i128, Vec<(i128, i128)>> = BTreeMap::new();
    for (v, a) in short_vectors(l, bound).vectors {
        if let Some(bc) = completion(l, &v) {
            let e = table.entry(a).or_default();
            if !e.contains(&bc) {
                e.push(bc);
            }
        }
    }
    for bs in table.values_mut() {
        bs.sort();
    }
    table
}

/// Binary quotient of a rank-3 semi-definite Gram matrix by its radical.
fn quotient_by_radical(g: &Mat) -> Lattice {
    let k = crate::linalg::integer_kernel(g);
    assert_eq!(k.cols(), 1, "radical of a rank-2 form");
    let r = k.column(0);
    // rᵗ·U = (±1, 0, 0) so r is the first row of U⁻¹, i.e. the first
    // column of the basis (U⁻¹)ᵗ
    let (_, u, _) = crate::linalg::column_echelon(&Mat::from_rows(&[r.clone()]));
    let basis = u.unimodular_inverse().transpose();
    debug_assert_eq!(basis.column(0).iter().map(|x| x.abs()).collect::<Vec<_>>(), r.iter().map(|x| x.abs()).collect::<Vec<_>>());
    let h = g.congruent(&basis);
    Lattice::new(h.submatrix(&[1, 2], &[1, 2])).expect("quotient of a semi-definite form").reduced().0
}

fn verified(witness: Lattice, l1: &Lattice, l2: &Lattice) -> Lattice {
    assert_eq!(witness.kind(), Definiteness::Definite);
    assert!(embeds(l1, &witness).is_some() && embeds(l2, &witness).is_some(), "buried witness failed verification");
    witness
}

/// Searches common primitive values `a ≤ a_max` for a positive definite
/// `L(t)`. `NotBuriedUpTo` is a bounded verdict, not a proof.
pub fn buried3(l1: &Lattice, l2: &Lattice, a_max: i128) -> Result<BuriedVerdict> {
    for l in [l1, l2] {
        if l.rank() != 2 {
            return Err(Error::InvalidArgument(format!("buried3 needs binary lattices, got rank {}", l.rank())));
        }
        if !is_primitive(l) {
            return Err(Error::NotPrimitiveInput(format!("{:?}", l.gram())));
        }
    }
    if is_isometric(l1, l2) || embeds(l1, l2).is_some() || embeds(l2, l1).is_some() {
        let big = if embeds(l1, l2).is_some() { l2 } else { l1 };
        let w = verified(big.direct_sum(&Lattice::diagonal(&[1])), l1, l2);
        return Ok(BuriedVerdict { status: BuriedStatus::Buried, witness: Some(w), route: Some(Route::Rank2), bound: None, trace: Vec::new() });
    }
    let d = l1.det() * l2.det();
    let root = (d as f64).sqrt();
    let (t1, t2) = (completion_table(l1, a_max), completion_table(l2, a_max));
    let mut trace = Vec::new();
    let mut boundary = None;
    for (&a, bs1) in &t1 {
        let Some(bs2) = t2.get(&a) else { continue };
        for &(b1, c1) in bs1 {
            for &(b2, c2) in bs2 {
                for b2 in signed(b2, a) {
                    let t = interval_integer(a, b1, b2, d);
                    let center = (b1 * b2) as f64;
                    trace.push(TraceEntry { a, b1, b2, lower: (center - root) / a as f64, upper: (center + root) / a as f64, t });
                    if let Some(t) = t {
                        let w = verified(witness_l(a, b1, c1, b2, c2, t)?, l1, l2);
                        return Ok(BuriedVerdict { status: BuriedStatus::Buried, witness: Some(w), route: Some(Route::Interval), bound: None, trace });
                    }
                    if boundary.is_none() {
                        let t0 = floor_div(b1 * b2, a);
                        boundary = [t0, t0 + 1].into_iter().find(|t| (a * t - b1 * b2).pow(2) == d).map(|t| (a, b1, c1, b2, c2, t));
                    }
                }
            }
        }
    }
    if let Some((a, b1, c1, b2, c2, t)) = boundary {
        let psd = witness_l(a, b1, c1, b2, c2, t)?;
        let w = verified(quotient_by_radical(psd.gram()).direct_sum(&Lattice::diagonal(&[1])), l1, l2);
        return Ok(BuriedVerdict { status: BuriedStatus::Buried, witness: Some(w), route: Some(Route::SemidefiniteRepair), bound: None, trace });
    }
    Ok(BuriedVerdict { status: BuriedStatus::NotBuriedUpTo, witness: None, route: None, bound: Some(a_max), trace })
}

/// `b` and, when it is a different residue mod `a`, `−b`.
fn signed(b: i128, a: i128) -> Vec<i128> {
    if b == 0 || 2 * b == a {
        vec![b]
    } else {
        vec![b, -b]
    }
}

/// The `a`-bound used for each discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AMaxPolicy {
    /// `k·d`.
    Multiple(i128),
    Fixed(i128),
}

impl Default for AMaxPolicy {
    fn default() -> Self {
        AMaxPolicy::Multiple(4)
    }
}

impl AMaxPolicy {
    pub fn bound(&self, d: i128) -> i128 {
        match *self {
            AMaxPolicy::Multiple(k) => k * d,
            AMaxPolicy::Fixed(a) => a,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub d: i128,
    /// Primitive classes of determinant `d`.
    pub classes: usize,
    pub pairs_checked: usize,
    /// Pairs buried in some genus of rank 3.
    pub genus_pairs: usize,
    pub buried_pairs: usize,
    pub counterexamples: Vec<(Lattice, Lattice)>,
    pub a_bound: i128,
    pub errors: Vec<String>,
}

/// Checks, for every `d` in range, that pairs buried in a rank-3 genus are
/// buried in rank 3. Reports come back in increasing `d`. With `resume`, a
/// report already stored as `<dir>/d<d>.json` for the same bound is reused
/// and new ones are written there.
pub fn conjecture_scan(d_lo: i128, d_hi: i128, policy: AMaxPolicy, exec: Execution, resume: Option<&Path>) -> Vec<ScanReport> {
    if d_lo > d_hi {
        return Vec::new();
    }
    if let Some(dir) = resume {
        let _ = fs::create_dir_all(dir);
    }
    let ds: Vec<i128> = (d_lo.max(1)..=d_hi).collect();
    exec.map(ds, |d| {
        let bound = policy.bound(d);
        let path = resume.map(|dir| dir.join(format!("d{d}.json")));
        if let Some(path) = &path {
            if let Some(r) = fs::read_to_string(path).ok().and_then(|s| serde_json::from_str::<ScanReport>(&s).ok()) {
                if r.d == d && r.a_bound == bound {
                    return r;
                }
            }
        }
        let report = scan_one(d, bound);
        if let Some(path) = &path {
            let _ = fs::write(path, serde_json::to_string(&report).expect("serializable report"));
        }
        report
    })
}

/// Scan of a single discriminant.
pub fn scan_one(d: i128, bound: i128) -> ScanReport {
    let classes: Vec<Lattice> = enumerate_binary_by_det(d).into_iter().filter(is_primitive).collect();
    let mut report = ScanReport {
        d,
        classes: classes.len(),
        pairs_checked: 0,
        genus_pairs: 0,
        buried_pairs: 0,
        counterexamples: Vec::new(),
        a_bound: bound,
        errors: Vec::new(),
    };
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let (l1, l2) = (&classes[i], &classes[j]);
            report.pairs_checked += 1;
            if !buried_in_genus(l1, l2, 3) {
                continue;
            }
            report.genus_pairs += 1;
            match buried3(l1, l2, bound) {
                Ok(v) if v.is_buried() => report.buried_pairs += 1,
                Ok(_) => report.counterexamples.push((l1.clone(), l2.clone())),
                Err(e) => report.errors.push(format!("{:?} / {:?}: {e}", l1.gram(), l2.gram())),
            }
        }
    }
    report
}

/// `⌊√(d1·d2)⌋·2`, the range where a common primitive value always works.
pub fn guaranteed_range(l1: &Lattice, l2: &Lattice) -> i128 {
    2 * isqrt(l1.det() * l2.det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::is_isometric;

    fn g(rows: &[&[i128]]) -> Lattice {
        Lattice::gram_unchecked(rows)
    }

    #[test]
    fn witness_examples() {
        assert_eq!(witness_l(1, 0, 1, 0, 1, 0).unwrap(), Lattice::diagonal(&[1, 1, 1]));
        let l = witness_l(3080, 1321, 567, 1409, 645, 604).unwrap();
        assert_eq!(l.det(), 260);
        assert_eq!(l.kind(), Definiteness::Definite);
        assert!(matches!(witness_l(3080, 1321, 567, 1409, 645, 605), Err(Error::NotPositiveSemidefinite { .. })));
    }

    #[test]
    fn interval_is_integer_comparison() {
        for a in 1..30 {
            for b1 in -10..10 {
                for b2 in -10..10 {
                    for d in 1..50 {
                        let exact = (-200..=200).any(|t: i128| (a * t - b1 * b2).pow(2) < d);
                        assert_eq!(interval_integer(a, b1, b2, d).is_some(), exact);
                    }
                }
            }
        }
    }

    #[test]
    fn not_buried_example() {
        let v = buried3(&Lattice::diagonal(&[1, 23]), &Lattice::diagonal(&[2, 3]), 1000).unwrap();
        assert_eq!(v.status, BuriedStatus::NotBuriedUpTo);
        assert_eq!(v.bound, Some(1000));
    }

    #[test]
    fn large_first_common_value() {
        let (l1, l2) = (g(&[&[21, 5], &[5, 64]]), g(&[&[24, 1], &[1, 55]]));
        let v = buried3(&l1, &l2, 4000).unwrap();
        assert!(v.is_buried());
        let w = v.witness.unwrap();
        assert!(is_isometric(&w, &witness_l(3080, 1321, 567, 1409, 645, 604).unwrap()));
        assert_eq!(v.trace.last().unwrap().a, 3080);
    }

    #[test]
    fn small_buried_example() {
        let v = buried3(&Lattice::diagonal(&[1, 1]), &g(&[&[2, 1], &[1, 2]]), 10).unwrap();
        assert!(v.is_buried());
        assert_eq!(v.route, Some(Route::Interval));
    }

    #[test]
    fn rank_two_and_errors() {
        let x = Lattice::diagonal(&[1, 2]);
        assert_eq!(buried3(&x, &x, 5).unwrap().route, Some(Route::Rank2));
        assert!(matches!(buried3(&Lattice::diagonal(&[1, 4]), &x, 5), Err(Error::NotPrimitiveInput(_))));
    }

    #[test]
    fn radical_quotient() {
        let q = quotient_by_radical(&Mat::from_rows(&[[1, 0, 1], [0, 2, 0], [1, 0, 1]]));
        assert!(is_isometric(&q, &Lattice::diagonal(&[1, 2])));
    }

    #[test]
    fn scan_ranges() {
        assert!(conjecture_scan(1, 0, AMaxPolicy::default(), Execution::Sequential, None).is_empty());
        let r = conjecture_scan(1, 20, AMaxPolicy::default(), Execution::Sequential, None);
        assert_eq!(r.len(), 20);
        assert!(r.iter().all(|r| r.counterexamples.is_empty() && r.errors.is_empty()));
    }
}
