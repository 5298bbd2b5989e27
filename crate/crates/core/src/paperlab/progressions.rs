//! Exception progressions of the class-number-one ternaries and the
//! necessary conditions on a bad set of seven integers.

use serde::Serialize;
use serde_json::json;

use super::CheckResult;
use crate::enumerate::represented_values;
use crate::local::{same_square_class, split, Place};
use crate::named::NamedLattice;

/// Integers `p^k·r` with `p ∤ r`, `k ≡ parity (mod 2)` and `r mod m` in `residues`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Progression {
    pub prime: i128,
    pub parity: u32,
    pub modulus: i128,
    pub residues: Vec<i128>,
}

impl Progression {
    fn new(prime: i128, parity: u32, modulus: i128, residues: &[i128]) -> Self {
        Progression { prime, parity, modulus, residues: residues.to_vec() }
    }

    pub fn contains(&self, n: i128) -> bool {
        if n <= 0 {
            return false;
        }
        let (k, r) = split(n, self.prime);
        k % 2 == self.parity && self.residues.contains(&r.rem_euclid(self.modulus))
    }
}

/// The integers a named ternary misses (for `N`, only its even exceptions).
pub fn excluded(tag: NamedLattice) -> Option<Progression> {
    Some(match tag {
        NamedLattice::L(1) => Progression::new(2, 0, 8, &[1]),
        NamedLattice::L(2) => Progression::new(2, 1, 8, &[1]),
        NamedLattice::L(3) => Progression::new(2, 0, 8, &[3]),
        NamedLattice::L(4) => Progression::new(2, 0, 8, &[5]),
        NamedLattice::L(5) => Progression::new(2, 1, 8, &[5]),
        NamedLattice::L(6) => Progression::new(2, 0, 8, &[7]),
        NamedLattice::L(7) => Progression::new(2, 1, 8, &[7]),
        NamedLattice::M(1) => Progression::new(3, 1, 3, &[1]),
        NamedLattice::M(2) => Progression::new(3, 1, 3, &[2]),
        NamedLattice::M(3) => Progression::new(5, 1, 5, &[1, 4]),
        NamedLattice::M(4) => Progression::new(5, 1, 5, &[2, 3]),
        NamedLattice::Ramanujan => Progression::new(2, 1, 8, &[3]),
        _ => return None,
    })
}

/// Odd integers that `⟨1,1,10⟩` misses (conditionally complete).
pub const RAMANUJAN_ODD: [i128; 18] = [3, 7, 21, 31, 33, 43, 67, 79, 87, 133, 217, 219, 223, 253, 307, 391, 679, 2719];

/// Compares representability up to `bound` with the exception predicate.
/// For `N` only even integers are compared.
pub fn verify_progressions(which: NamedLattice, bound: i128) -> CheckResult {
    let id = format!("progression/{which}");
    let Some(prog) = excluded(which) else {
        return CheckResult::skipped(id, format!("{which} has no exception progression"));
    };
    let l = which.lattice();
    let seen = represented_values(&l, bound);
    let even_only = which == NamedLattice::Ramanujan;
    let mismatches: Vec<i128> = (1..=bound)
        .filter(|&n| !even_only || n % 2 == 0)
        .filter(|&n| seen[n as usize] == prog.contains(n))
        .collect();
    let excluded_sample: Vec<i128> = (1..=bound).filter(|&n| prog.contains(n)).take(8).collect();
    CheckResult::verdict(
        id,
        mismatches.is_empty(),
        json!({
            "bound": bound,
            "progression": prog,
            "first_excluded": excluded_sample,
            "mismatches": mismatches.len(),
            "first_mismatch": mismatches.first(),
        }),
    )
}

/// `⟨1,1,10⟩` misses exactly the listed odd integers up to `bound`.
pub fn verify_ramanujan_odd_to(bound: i128) -> CheckResult {
    let seen = represented_values(&NamedLattice::Ramanujan.lattice(), bound);
    let mut wrong = Vec::new();
    for n in (1..=bound).step_by(2) {
        if seen[n as usize] == RAMANUJAN_ODD.contains(&n) {
            wrong.push(n);
        }
    }
    CheckResult::verdict(
        "prop2.4/ramanujan-odd",
        wrong.is_empty(),
        json!({ "bound": bound, "listed": RAMANUJAN_ODD, "mismatches": wrong }),
    )
}

pub fn verify_ramanujan_odd() -> CheckResult {
    verify_ramanujan_odd_to(3000)
}

/// Which necessary conditions a candidate bad set satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub set: Vec<i128>,
    /// Pairwise distinct ℚ_2-classes, none of them `6`.
    pub distinct_q2: bool,
    /// Members in the ℚ_3-classes of `3` and of `6`.
    pub q3_three_and_six: bool,
    /// Members in the ℚ_5-classes of `5` and of `10`.
    pub q5_five_and_ten: bool,
    /// Some member is odd.
    pub has_odd: bool,
    /// Some odd member lies in the listed set.
    pub odd_in_list: bool,
    pub failing: Vec<String>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.failing.is_empty()
    }
}

pub fn prop_conditions_check(a: &[i128]) -> ConditionReport {
    assert_eq!(a.len(), 7, "the conditions concern sets of seven integers");
    let q = |p| Place::Finite(p);
    let distinct_q2 = a.iter().enumerate().all(|(i, &x)| {
        !same_square_class(x, 6, q(2)) && a[i + 1..].iter().all(|&y| !same_square_class(x, y, q(2)))
    });
    let has = |c: i128, p: i128| a.iter().any(|&x| same_square_class(x, c, q(p)));
    let report = ConditionReport {
        set: a.to_vec(),
        distinct_q2,
        q3_three_and_six: has(3, 3) && has(6, 3),
        q5_five_and_ten: has(5, 5) && has(10, 5),
        has_odd: a.iter().any(|x| x % 2 != 0),
        odd_in_list: a.iter().any(|x| RAMANUJAN_ODD.contains(x)),
        failing: Vec::new(),
    };
    let failing = [
        ("(i)", report.distinct_q2),
        ("(ii)", report.q3_three_and_six),
        ("(iii)", report.q5_five_and_ten),
        ("(iv)", report.has_odd && report.odd_in_list),
    ]
    .into_iter()
    .filter(|(_, ok)| !ok)
    .map(|(name, _)| name.to_string())
    .collect();
    ConditionReport { failing, ..report }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paperlab::Status;

    #[test]
    fn predicate_examples() {
        let l6 = excluded(NamedLattice::L(6)).unwrap();
        let first: Vec<i128> = (1..=40).filter(|&n| l6.contains(n)).collect();
        assert_eq!(first, vec![7, 15, 23, 28, 31, 39]);
        let m2 = excluded(NamedLattice::M(2)).unwrap();
        let first: Vec<i128> = (1..=60).filter(|&n| m2.contains(n)).collect();
        assert_eq!(first, vec![6, 15, 24, 33, 42, 51, 54, 60]);
        assert!(excluded(NamedLattice::L(5)).unwrap().contains(10));
        assert!(excluded(NamedLattice::M(3)).unwrap().contains(5 * 4));
        assert!(!excluded(NamedLattice::M(3)).unwrap().contains(125 * 2));
    }

    #[test]
    fn small_bounds_pass() {
        for tag in NamedLattice::ternaries() {
            assert_eq!(verify_progressions(tag, 300).status, Status::Pass, "{tag}");
        }
        assert_eq!(verify_progressions(NamedLattice::L(5), 10).status, Status::Pass);
        assert!(matches!(verify_progressions(NamedLattice::E8, 10).status, Status::Skipped(_)));
    }

    #[test]
    fn ramanujan_small() {
        let r = verify_ramanujan_odd_to(1000);
        assert_eq!(r.status, Status::Pass, "{}", r.details);
    }

    #[test]
    fn condition_examples() {
        let r = prop_conditions_check(&[1, 2, 3, 5, 10, 14, 15]);
        assert!(r.distinct_q2 && r.q3_three_and_six && r.q5_five_and_ten && r.odd_in_list);
        assert!(r.all_hold());
        let r = prop_conditions_check(&[1, 4, 3, 5, 10, 14, 15]);
        assert!(!r.distinct_q2);
        assert_eq!(r.failing, vec!["(i)"]);
        let r = prop_conditions_check(&[2, 4, 6, 10, 12, 14, 20]);
        assert!(!r.has_odd);
    }
}
