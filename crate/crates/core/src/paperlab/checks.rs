//! Checks for the rank-gap statements, the buried pair examples and the
//! higher rank cases.

use std::collections::BTreeSet;

use serde_json::json;

use super::CheckResult;
use crate::buried::{buried3, conjecture_scan, AMaxPolicy, BuriedStatus};
use crate::enumerate::{dedup_isometric, is_isometric, short_vectors, superlattices};
use crate::exec::Execution;
use crate::io::to_text;
use crate::lattice::{orthogonal_sum, Lattice};
use crate::linalg::{gcd, is_square, prime_divisors, Mat};
use crate::local::{
    buried_in_genus_detail, buried_over_qp, buried_over_zp, qp_space_represents, same_genus, square_classes,
    zp_represents, Place, QpSpaceInv,
};
use crate::named::NamedLattice;
use crate::represent::{binaries_representing, embeds, orthogonal_complement, represents_integer, same_classes, StageScript};

fn g<R: AsRef<[i128]>>(rows: &[R]) -> Lattice {
    Lattice::from_rows(rows).expect("fixed Gram matrices are positive definite")
}

fn diag(e: &[i128]) -> Lattice {
    Lattice::diagonal(e)
}

/// Equal-rank index argument, `1, 2, 15` against binaries, and `⟨3,3⟩`
/// against `⟨1,1,a⟩` over ℚ_2.
pub fn verify_thm21() -> Vec<CheckResult> {
    let mut out = Vec::new();
    // dI_m·k² = dL and d(I_{m-1} ⊥ ⟨2⟩)·k'² = dL force 2 to be a square
    let no_index = !is_square(2) && (2..=4).all(|m| {
        let mut e = vec![1; m];
        e[m - 1] = 2;
        embeds(&diag(&e), &NamedLattice::I(m).lattice()).is_none()
    });
    out.push(CheckResult::verdict("thm2.1/equal-rank", no_index, json!({ "ranks_checked": [2, 3, 4] })));

    let bins = binaries_representing(1, 2);
    let hits: Vec<String> = bins.iter().filter(|l| represents_integer(l, 15)).map(to_text).collect();
    out.push(CheckResult::verdict(
        "thm2.1/one-two-fifteen",
        hits.is_empty(),
        json!({ "binaries": bins.iter().map(to_text).collect::<Vec<_>>(), "representing_15": hits }),
    ));

    let two = Place::Finite(2);
    let inv = QpSpaceInv::diagonal(&[3, 3], two);
    let representing: Vec<i128> = square_classes(two)
        .into_iter()
        .filter(|&a| inv.represented_by(&QpSpaceInv::diagonal(&[1, 1, a], two)))
        .collect();
    // the positive classes once more through the lattice entry point
    let positive_ok = square_classes(two).into_iter().filter(|&a| a > 0).all(|a| !qp_space_represents(&diag(&[3, 3]), &diag(&[1, 1, a]), two));
    out.push(CheckResult::verdict(
        "thm2.1/three-three-over-q2",
        representing.is_empty() && positive_ok,
        json!({ "classes": square_classes(two), "representing": representing }),
    ));
    out
}

pub fn verify_example38() -> Vec<CheckResult> {
    let (l1, l2) = (diag(&[1, 23]), diag(&[2, 3]));
    let mut out = Vec::new();
    match buried3(&l1, &l2, 1000) {
        Ok(v) => out.push(CheckResult::verdict(
            "ex3.8/not-buried-to-1000",
            v.status == BuriedStatus::NotBuriedUpTo,
            json!({ "status": v.status, "bound": v.bound, "values_tried": v.trace.len() }),
        )),
        Err(e) => out.push(CheckResult::verdict("ex3.8/not-buried-to-1000", false, json!({ "error": e.to_string() }))),
    }
    let a = diag(&[1]).direct_sum(&g(&[[5, 1], [1, 23]]));
    let b = diag(&[2, 3, 19]);
    out.push(CheckResult::verdict(
        "ex3.8/same-genus",
        same_genus(&a, &b),
        json!({ "first": to_text(&a), "second": to_text(&b), "isometric": is_isometric(&a, &b) }),
    ));
    let gv = buried_in_genus_detail(&l1, &l2, 3);
    out.push(CheckResult::verdict("ex3.8/buried-in-genus", gv.buried, serde_json::to_value(&gv).unwrap_or_default()));
    out
}

/// Least positive integer primitively represented by both (up to `bound`).
fn first_common_primitive(l1: &Lattice, l2: &Lattice, bound: i128) -> Option<i128> {
    let values = |l: &Lattice| -> BTreeSet<i128> {
        short_vectors(l, bound).vectors.into_iter().filter(|(x, _)| gcd(x[0], x[1]) == 1).map(|(_, q)| q).collect()
    };
    let (a, b) = (values(l1), values(l2));
    a.intersection(&b).next().copied()
}

pub fn verify_example310() -> Vec<CheckResult> {
    let (l1, l2) = (g(&[[21, 5], [5, 64]]), g(&[[24, 1], [1, 55]]));
    let printed = g(&[[3080, 1321, 1409], [1321, 567, 604], [1409, 604, 645]]);
    let mut out = Vec::new();
    let first = first_common_primitive(&l1, &l2, 4000);
    out.push(CheckResult::verdict(
        "ex3.10/first-common-value",
        first == Some(3080) && l1.det() == 1319 && l2.det() == 1319 && same_genus(&l1, &l2),
        json!({ "value": first, "dets": [l1.det(), l2.det()] }),
    ));
    match buried3(&l1, &l2, 4000) {
        Ok(v) => {
            let w = v.witness.clone();
            let ok = w.as_ref().is_some_and(|w| {
                w.det() == 260 && is_isometric(w, &printed) && embeds(&l1, w).is_some() && embeds(&l2, w).is_some()
            });
            out.push(CheckResult::verdict(
                "ex3.10/witness",
                ok,
                json!({
                    "route": v.route,
                    "witness": w.as_ref().map(to_text),
                    "last_value": v.trace.last().map(|t| t.a),
                }),
            ));
        }
        Err(e) => out.push(CheckResult::verdict("ex3.10/witness", false, json!({ "error": e.to_string() }))),
    }
    out
}

/// Quaternaries `I_2 ⊥ M` containing `⟨3,3⟩`, built directly from the
/// generators `e_1, e_2, x, y` with `|B(e_i, x)|, |B(e_i, y)| ≤ 1`.
fn remark33_oracle() -> Vec<Lattice> {
    let mut seeds = Vec::new();
    for code in 0..81 {
        let c: Vec<i128> = (0..4).map(|k| (code / 3i128.pow(k)) % 3 - 1).collect();
        let gram = Mat::from_rows(&[
            [1, 0, c[0], c[1]],
            [0, 1, c[2], c[3]],
            [c[0], c[2], 3, 0],
            [c[1], c[3], 0, 3],
        ]);
        if let Ok(l) = Lattice::new(gram) {
            seeds.push(l);
        }
    }
    let all: Vec<Lattice> = dedup_isometric(seeds).iter().flat_map(superlattices).collect();
    dedup_isometric(all)
}

pub fn verify_remark33() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let set = match StageScript::QuaternaryPair.run() {
        Ok(s) => s,
        Err(e) => return vec![CheckResult::verdict("rem3.3/candidates", false, json!({ "error": e.to_string() }))],
    };
    let oracle = remark33_oracle();
    let member_i2_33 = NamedLattice::I(2).lattice().direct_sum(&diag(&[3, 3]));
    out.push(CheckResult::verdict(
        "rem3.3/candidates",
        !set.members.is_empty()
            && same_classes(&set.members, &oracle)
            && set.members.iter().any(|m| is_isometric(m, &member_i2_33)),
        json!({
            "count": set.members.len(),
            "oracle_count": oracle.len(),
            "members": set.members.iter().map(to_text).collect::<Vec<_>>(),
            "justification": set.justification,
        }),
    ));
    let target = diag(&[7, 161]);
    let mut evidence = Vec::new();
    let mut none_embed = true;
    for m in &set.members {
        let global = embeds(&target, m).is_some();
        none_embed &= !global;
        let local: Vec<i128> =
            prime_divisors(2 * target.det() * m.det()).into_iter().filter(|&p| !zp_represents(&target, m, p)).collect();
        evidence.push(json!({ "lattice": to_text(m), "embeds": global, "local_failures": local }));
    }
    out.push(CheckResult::verdict("rem3.3/no-quaternary", none_embed, json!({ "members": evidence })));
    out
}

pub fn verify_remark35() -> CheckResult {
    let (l1, l2) = (diag(&[1, 28]), NamedLattice::A(2).lattice());
    let q = buried_over_qp(&l1, &l2, 3, Place::Finite(2));
    let z = buried_over_zp(&l1, &l2, 3, 2);
    CheckResult::verdict("rem3.5/q2-but-not-z2", q && !z, json!({ "over_q2": q, "over_z2": z }))
}

/// Rank 5 and rank 6 non-representations plus the complements of `K`.
pub fn verify_section4(glue: Option<&Lattice>) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let i = |n| NamedLattice::I(n).lattice();
    let k = NamedLattice::K.lattice();
    let l2 = orthogonal_sum([&i(2), &k, &diag(&[105])]);

    let i2a5 = i(2).direct_sum(&NamedLattice::A(5).lattice());
    out.push(CheckResult::verdict(
        "thm4.1/l2-not-in-I2+A5",
        embeds(&l2, &i2a5).is_none(),
        json!({ "source": to_text(&l2), "target": to_text(&i2a5) }),
    ));
    out.push(CheckResult::verdict("thm4.1/K-not-in-I4", embeds(&k, &i(4)).is_none(), json!({})));

    let printed = [
        g(&[[2, 1], [1, 3]]).direct_sum(&diag(&[3])),
        diag(&[1, 3, 10]),
        g(&[[2, 1], [1, 2]]).direct_sum(&diag(&[15])),
    ];
    let mut comps = Vec::new();
    let mut comp_ok = true;
    for (t, expect) in (1..=3).zip(&printed) {
        let host = i(4).direct_sum(&diag(&[t]));
        match embeds(&k, &host) {
            Some(w) => {
                let c = orthogonal_complement(&w);
                comp_ok &= w.verify() && is_isometric(&c, expect);
                comps.push(c);
            }
            None => comp_ok = false,
        }
    }
    out.push(CheckResult::verdict(
        "thm4.1/complements",
        comp_ok,
        json!({ "complements": comps.iter().map(to_text).collect::<Vec<_>>() }),
    ));
    let reps: Vec<bool> = comps.iter().map(|c| represents_integer(c, 105)).collect();
    out.push(CheckResult::verdict(
        "thm4.1/105-not-represented",
        comps.len() == 3 && reps.iter().all(|r| !r),
        json!({ "represented": reps }),
    ));

    let cands = StageScript::Section4.run();
    match cands {
        Ok(set) => {
            let fails: Vec<bool> = set.members.iter().map(|m| embeds(&l2, m).is_none()).collect();
            out.push(CheckResult::verdict(
                "thm4.1/rank7-candidates",
                fails.iter().all(|&f| f),
                json!({
                    "members": set.members.iter().map(to_text).collect::<Vec<_>>(),
                    "l2_absent": fails,
                    "justification": set.justification,
                }),
            ));
        }
        Err(e) => out.push(CheckResult::verdict("thm4.1/rank7-candidates", false, json!({ "error": e.to_string() }))),
    }

    let host = i(6).direct_sum(&NamedLattice::E6.lattice());
    out.push(CheckResult::verdict(
        "thm4.1/A6-not-in-I6+E6",
        embeds(&NamedLattice::A(6).lattice(), &host).is_none(),
        json!({}),
    ));
    match glue {
        Some(l) => {
            let host = i(7).direct_sum(&NamedLattice::E7.lattice());
            out.push(CheckResult::verdict(
                "thm4.1/a7-glue",
                l.rank() == 7 && embeds(l, &host).is_none(),
                json!({ "lattice": to_text(l) }),
            ));
        }
        None => out.push(CheckResult::skipped("thm4.1/a7-glue", "no Gram matrix supplied for the glue lattice")),
    }
    out
}

/// Genus-buried pairs of equal determinant up to `to` are buried in rank 3.
pub fn verify_conjecture(to: i128, exec: Execution) -> CheckResult {
    let reports = conjecture_scan(1, to, AMaxPolicy::default(), exec, None);
    let counter: Vec<serde_json::Value> = reports
        .iter()
        .flat_map(|r| r.counterexamples.iter().map(move |(a, b)| json!({ "d": r.d, "pair": [to_text(a), to_text(b)] })))
        .collect();
    let errors: Vec<&String> = reports.iter().flat_map(|r| r.errors.iter()).collect();
    CheckResult::verdict(
        "conjecture/scan",
        counter.is_empty() && errors.is_empty(),
        json!({
            "to": to,
            "policy": "a_max = 4d",
            "pairs": reports.iter().map(|r| r.pairs_checked).sum::<usize>(),
            "genus_pairs": reports.iter().map(|r| r.genus_pairs).sum::<usize>(),
            "buried_pairs": reports.iter().map(|r| r.buried_pairs).sum::<usize>(),
            "counterexamples": counter,
            "errors": errors,
        }),
    )
}
