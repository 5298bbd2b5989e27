//! Global representations: integers and lattices by lattices, orthogonal
//! complements, unary splitting, primitive representations, and staged
//! enumeration of lattices that represent a list of targets.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::enumerate::{
    dedup_isometric, enumerate_binary_by_det, find_embedding, find_vector, is_isometric, represented_values,
    superlattices, vectors_of_norm,
};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{ext_gcd, gcd, integer_kernel, isqrt, round_div, Mat};
use crate::named::NamedLattice;

/// A representation `ℓ → L`: `Tᵗ G_L T = G_ℓ`.
#[derive(Clone, Debug)]
pub struct EmbeddingWitness {
    pub t: Mat,
    pub source: Lattice,
    pub target: Lattice,
}

impl EmbeddingWitness {
    pub fn verify(&self) -> bool {
        self.target.gram().congruent(&self.t) == *self.source.gram()
    }
}

pub fn represents_integer(l: &Lattice, n: i128) -> bool {
    n > 0 && find_vector(l, n).is_some()
}

/// Complete search for a representation of `small` by `big`.
pub fn embeds(small: &Lattice, big: &Lattice) -> Option<EmbeddingWitness> {
    if small.rank() > big.rank() {
        return None;
    }
    let t = find_embedding(small.gram(), big.gram())?;
    let w = EmbeddingWitness { t, source: small.clone(), target: big.clone() };
    assert!(w.verify());
    Some(w)
}

/// Completions `[[a,b],[b,c]] ≅ ℓ` from primitive vectors of norm `a`,
/// normalized to `0 ≤ b ≤ a/2`, sorted and deduplicated.
pub fn primitive_reps(l: &Lattice, a: i128) -> Vec<(i128, i128)> {
    assert_eq!(l.rank(), 2, "primitive_reps needs a binary lattice");
    let mut out: Vec<(i128, i128)> = vectors_of_norm(l, a).into_iter().filter_map(|v| completion(l, &v)).collect();
    out.sort();
    out.dedup();
    out
}

/// `(b, c)` with `ℓ ≅ [[Q(v), b], [b, c]]` for a primitive `v`, `0 ≤ b ≤ Q(v)/2`.
pub(crate) fn completion(l: &Lattice, v: &[i128]) -> Option<(i128, i128)> {
    if gcd(v[0], v[1]) != 1 {
        return None;
    }
    let a = l.norm(v);
    let (_, s, t) = ext_gcd(v[0], v[1]);
    // (v, w) with w = (−t, s) is a basis
    let w = [-t, s];
    let b = l.inner(v, &w);
    let mut b = b - a * round_div(b, a);
    if 2 * b > a {
        b -= a;
    }
    let b = b.abs();
    Some((b, (l.det() + b * b) / a))
}

/// Gram of `{x ∈ L : B(x, T·ℓ) = 0}`, size-reduced.
pub fn orthogonal_complement(w: &EmbeddingWitness) -> Lattice {
    let g = w.target.gram();
    let k = integer_kernel(&w.t.transpose().mul(g));
    if k.cols() == 0 {
        return Lattice::zero();
    }
    Lattice::new(g.congruent(&k)).expect("sublattice of a definite lattice").reduced().0
}

/// `L ≅ I_k ⊥ M` with `k` maximal, so `M` has no vectors of norm 1.
pub fn split_unary(l: &Lattice) -> (usize, Lattice) {
    let mut k = 0;
    let mut m = l.clone();
    while m.rank() > 0 {
        let Some(v) = find_vector(&m, 1) else { break };
        let w = EmbeddingWitness { t: Mat::from_columns(&[v]), source: Lattice::diagonal(&[1]), target: m.clone() };
        m = orthogonal_complement(&w);
        k += 1;
    }
    (k, m)
}

/// Smallest integer of `targets` (in the given order) not represented by `l`.
pub fn truant(l: &Lattice, targets: &[i128]) -> Option<i128> {
    let max = targets.iter().copied().max()?;
    if l.rank() == 0 {
        return targets.first().copied();
    }
    let seen = represented_values(l, max);
    targets.iter().copied().find(|&t| !seen[t as usize])
}

/// One constraint for [`common_rep_candidates`].
#[derive(Clone, Debug)]
pub enum RepTarget {
    Integer(i128),
    /// Represent at least one of these integers.
    AnyOf(Vec<i128>),
    Lattice(Lattice),
}

impl fmt::Display for RepTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepTarget::Integer(n) => write!(f, "{n}"),
            RepTarget::AnyOf(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", s.join(" or "))
            }
            RepTarget::Lattice(l) => match l.label() {
                Some(name) => f.write_str(name),
                None => write!(f, "{:?}", l.gram().to_rows()),
            },
        }
    }
}

impl RepTarget {
    pub fn holds_for(&self, l: &Lattice) -> bool {
        match self {
            RepTarget::Integer(n) => represents_integer(l, *n),
            RepTarget::AnyOf(v) => v.iter().any(|&n| represents_integer(l, n)),
            RepTarget::Lattice(s) => embeds(s, l).is_some(),
        }
    }

    fn integers(&self) -> Vec<i128> {
        match self {
            RepTarget::Integer(n) => vec![*n],
            RepTarget::AnyOf(v) => v.clone(),
            RepTarget::Lattice(_) => Vec::new(),
        }
    }
}

/// One step of a stage script.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Stage {
    /// The first `k` targets are `1` or `I_k`: split off `I_k`.
    SplitUnit(usize),
    /// Rest of rank 2 given by reduced binaries whose minima are bounded by
    /// successive truants of the integer targets.
    BinaryMinimaCell,
    /// First basis vector is a minimal vector of norm at most the first integer target.
    MinimalVector,
    /// Adjoin a vector whose norm is exactly the current truant.
    ExactTruant,
    /// Adjoin a basis of the given lattice target (index into the targets),
    /// with cross products to the split unit part bounded by Cauchy–Schwarz.
    AdjoinLattice(usize),
    /// Replace each candidate by all its integral superlattices.
    SuperlatticeClosure,
    /// Keep only isometry class representatives.
    Dedup,
}

/// The case analyses behind the shipped scripts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StageScript {
    /// Ternaries representing 1, 2 and 3 or 5.
    Kappa13,
    /// Ternaries representing 2, 4 and 6 or 10 (sublattices `L′`).
    EvenTernary,
    /// Quaternaries representing `⟨1,1⟩` and `⟨3,3⟩`.
    QuaternaryPair,
    /// Rank 7 lattices representing `A_5` and `I_2 ⊥ K ⊥ ⟨105⟩`.
    Section4,
}

impl StageScript {
    pub const ALL: [StageScript; 4] =
        [StageScript::Kappa13, StageScript::EvenTernary, StageScript::QuaternaryPair, StageScript::Section4];

    pub fn name(self) -> &'static str {
        match self {
            StageScript::Kappa13 => "thm2.3",
            StageScript::EvenTernary => "thm2.5",
            StageScript::QuaternaryPair => "rem3.3",
            StageScript::Section4 => "thm4.1",
        }
    }

    pub fn stages(self) -> Vec<Stage> {
        use Stage::*;
        match self {
            StageScript::Kappa13 => vec![SplitUnit(1), BinaryMinimaCell, Dedup],
            StageScript::EvenTernary => vec![MinimalVector, ExactTruant, ExactTruant],
            StageScript::QuaternaryPair => vec![SplitUnit(1), AdjoinLattice(1), SuperlatticeClosure, Dedup],
            StageScript::Section4 => Vec::new(),
        }
    }

    pub fn targets(self) -> Vec<RepTarget> {
        use RepTarget::*;
        match self {
            StageScript::Kappa13 => vec![Integer(1), Integer(2), AnyOf(vec![3, 5])],
            StageScript::EvenTernary => vec![Integer(2), Integer(4), AnyOf(vec![6, 10])],
            StageScript::QuaternaryPair => vec![
                Lattice(NamedLattice::I(2).lattice()),
                Lattice(crate::lattice::Lattice::diagonal(&[3, 3]).with_label("<3,3>")),
            ],
            StageScript::Section4 => {
                let k = NamedLattice::K.lattice();
                let l2 = crate::lattice::orthogonal_sum([&NamedLattice::I(2).lattice(), &k, &crate::lattice::Lattice::diagonal(&[105])])
                    .with_label("I2+K+<105>");
                vec![Lattice(NamedLattice::A(5).lattice()), Lattice(l2)]
            }
        }
    }

    pub fn rank(self) -> usize {
        match self {
            StageScript::Kappa13 | StageScript::EvenTernary => 3,
            StageScript::QuaternaryPair => 4,
            StageScript::Section4 => 7,
        }
    }

    /// Candidates for the script's own targets and rank.
    pub fn run(self) -> Result<CandidateSet> {
        common_rep_candidates(&self.targets(), self.rank(), self)
    }
}

impl fmt::Display for StageScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StageScript {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StageScript::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown stage script {s:?}")))
    }
}

/// What one stage produced.
#[derive(Clone, Debug, Serialize)]
pub struct StageLog {
    pub stage: Stage,
    pub count: usize,
    /// Cross-product vectors tried per parent Gram, up to sign symmetries.
    pub extensions: Vec<ExtensionLog>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionLog {
    pub parent: Vec<Vec<i128>>,
    pub norm: i128,
    pub cross: Vec<Vec<i128>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateSet {
    pub constraints: Vec<String>,
    pub rank: usize,
    pub members: Vec<Lattice>,
    pub exhaustive: bool,
    pub justification: String,
    pub stages: Vec<StageLog>,
}

/// Builds every lattice (up to isometry) that the script's case analysis
/// allows for lattices of rank `rank` representing `targets`.
pub fn common_rep_candidates(targets: &[RepTarget], rank: usize, script: StageScript) -> Result<CandidateSet> {
    let needed = targets
        .iter()
        .map(|t| match t {
            RepTarget::Lattice(l) => l.rank(),
            _ => 1,
        })
        .max()
        .unwrap_or(0);
    if needed > rank {
        return Err(Error::RankTooSmall { needed, rank });
    }
    if script == StageScript::Section4 {
        return section4_candidates(targets, rank);
    }
    let ints: Vec<i128> = targets.iter().flat_map(|t| t.integers()).collect();
    let mut unit = 0usize;
    // partial Grams of the part orthogonal to I_unit
    let mut partials: Vec<Mat> = vec![Mat::zeros(0, 0)];
    let mut logs = Vec::new();
    let mut notes = Vec::new();
    for stage in script.stages() {
        let mut extensions = Vec::new();
        match &stage {
            Stage::SplitUnit(k) => {
                unit = *k;
                if let Some(RepTarget::Lattice(l)) = targets.first() {
                    unit = unit.max(l.rank());
                }
                notes.push(format!("a unimodular I_{unit} splits off as an orthogonal summand"));
            }
            Stage::BinaryMinimaCell => {
                let prefix = NamedLattice::I(unit.max(1)).lattice();
                let prefix = if unit == 0 { Lattice::zero() } else { prefix };
                let t1 = truant(&prefix, &ints).ok_or_else(|| Error::BoundsExhausted("no truant".into()))?;
                let mut next = Vec::new();
                for a in 1..=t1 {
                    let t2 = truant(&prefix.direct_sum(&Lattice::diagonal(&[a])), &ints)
                        .ok_or_else(|| Error::BoundsExhausted("no second truant".into()))?;
                    for b in 0..=a / 2 {
                        for c in a..=t2 {
                            if a * c - b * b > 0 {
                                next.push(Mat::from_rows(&[[a, b], [b, c]]));
                            }
                        }
                    }
                }
                notes.push(format!("m1 ≤ {t1}, m2 ≤ truant of I_{unit} ⊥ ⟨m1⟩"));
                partials = next;
            }
            Stage::MinimalVector => {
                let t = ints[0];
                partials = (1..=t).map(|m| Mat::diag(&[m])).collect();
                notes.push(format!("m1 ≤ {t}"));
            }
            Stage::ExactTruant => {
                let mut next = Vec::new();
                for s in &partials {
                    let lat = with_unit(unit, s);
                    let Some(t) = truant(&lat, &ints) else {
                        next.push(s.clone());
                        continue;
                    };
                    let cross = sign_normalized_extensions(s, t);
                    for c in &cross {
                        next.push(extend(s, c, t));
                    }
                    extensions.push(ExtensionLog { parent: s.to_rows(), norm: t, cross });
                }
                notes.push("each new basis vector realizes the current truant exactly".into());
                partials = next;
            }
            Stage::AdjoinLattice(idx) => {
                let RepTarget::Lattice(target) = &targets[*idx] else {
                    return Err(Error::InvalidArgument("AdjoinLattice needs a lattice target".into()));
                };
                assert!(partials.len() == 1 && partials[0].rows() == 0, "AdjoinLattice starts from the unit part");
                partials = adjoin_against_unit(unit, target.gram());
                notes.push(format!("cross products with I_{unit} bounded by Cauchy–Schwarz"));
            }
            Stage::SuperlatticeClosure => {
                let mut next = Vec::new();
                for s in &partials {
                    let l = Lattice::new(s.clone())?;
                    next.extend(superlattices(&l).into_iter().map(|m| m.gram().clone()));
                }
                notes.push("closed under finite-index integral superlattices".into());
                partials = next;
            }
            Stage::Dedup => {
                let lats: Vec<Lattice> = partials.iter().map(|s| Lattice::new(s.clone())).collect::<Result<_>>()?;
                partials = dedup_isometric(lats).into_iter().map(|l| l.gram().clone()).collect();
            }
        }
        logs.push(StageLog { stage, count: partials.len(), extensions });
    }
    let members: Vec<Lattice> = partials.iter().map(|s| Lattice::new(with_unit(unit, s).gram().clone())).collect::<Result<_>>()?;
    let members = if script.stages().contains(&Stage::Dedup) { members } else { dedup_isometric(members) };
    Ok(CandidateSet {
        constraints: targets.iter().map(|t| t.to_string()).collect(),
        rank,
        members,
        exhaustive: true,
        justification: notes.join("; "),
        stages: logs,
    })
}

fn with_unit(unit: usize, s: &Mat) -> Lattice {
    let g = Mat::identity(unit).block_diag(s);
    if g.rows() == 0 {
        Lattice::zero()
    } else {
        Lattice::new(g).expect("definite partial Gram")
    }
}

fn extend(s: &Mat, c: &[i128], t: i128) -> Mat {
    let i = s.rows();
    let mut g = Mat::zeros(i + 1, i + 1);
    for r in 0..i {
        for q in 0..i {
            g[(r, q)] = s[(r, q)];
        }
        g[(r, i)] = c[r];
        g[(i, r)] = c[r];
    }
    g[(i, i)] = t;
    g
}

/// Cross-product vectors `c` making `[[S, c], [cᵗ, t]]` positive definite,
/// one per orbit of the sign changes that fix `S` (and the global sign).
pub fn sign_normalized_extensions(s: &Mat, t: i128) -> Vec<Vec<i128>> {
    let i = s.rows();
    let radii: Vec<i128> = (0..i).map(|r| isqrt(s[(r, r)] * t)).collect();
    let flips: Vec<Vec<i128>> = (0..1u32 << i)
        .map(|mask| (0..i).map(|r| if mask & (1 << r) != 0 { -1 } else { 1 }).collect::<Vec<i128>>())
        .filter(|e| (0..i).all(|r| (0..i).all(|q| e[r] * e[q] * s[(r, q)] == s[(r, q)])))
        .collect();
    let mut out = Vec::new();
    let mut c: Vec<i128> = radii.iter().map(|r| -r).collect();
    loop {
        if extend(s, &c, t).leading_minors().iter().all(|&m| m > 0) {
            // canonical: lexicographically largest image under flips and global sign
            let best = flips
                .iter()
                .flat_map(|e| {
                    let v: Vec<i128> = c.iter().zip(e).map(|(x, y)| x * y).collect();
                    let w: Vec<i128> = v.iter().map(|x| -x).collect();
                    [v, w]
                })
                .max()
                .unwrap();
            if best == c {
                out.push(c.clone());
            }
        }
        let mut r = 0;
        loop {
            if r == i {
                out.sort_by(|a, b| b.cmp(a).reverse());
                return out;
            }
            if c[r] < radii[r] {
                c[r] += 1;
                break;
            }
            c[r] = -radii[r];
            r += 1;
        }
    }
}

/// Gram matrices `T − CᵗC` for all integer `C` (`unit × rank T`) with
/// `C_ij² ≤ T_jj`, keeping those that are positive definite.
fn adjoin_against_unit(unit: usize, t: &Mat) -> Vec<Mat> {
    let r = t.rows();
    let cells = unit * r;
    let radii: Vec<i128> = (0..cells).map(|k| isqrt(t[(k % r, k % r)])).collect();
    let mut out = Vec::new();
    let mut c: Vec<i128> = radii.iter().map(|x| -x).collect();
    loop {
        let cm = Mat::from_rows(&c.chunks(r.max(1)).collect::<Vec<_>>());
        let ctc = cm.transpose().mul(&cm);
        let mut m = t.clone();
        for a in 0..r {
            for b in 0..r {
                m[(a, b)] -= ctc[(a, b)];
            }
        }
        if m.leading_minors().iter().all(|&x| x > 0) {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == cells {
                return out;
            }
            if c[k] < radii[k] {
                c[k] += 1;
                break;
            }
            c[k] = -radii[k];
            k += 1;
        }
    }
}

/// Rank 7 candidates representing `A_5` and `I_2 ⊥ K ⊥ ⟨105⟩`. Writing
/// `L = I_k ⊥ M` with `m_1(M) ≥ 2`, `k ≥ 2` and the indecomposable root lattice
/// `A_5` must sit inside `M` or be assembled from unit vectors, leaving
/// `I_2 ⊥ A_5` or `I_6 ⊥ ⟨t⟩`. `K` then forces `t ≤ 4`, checked by search.
fn section4_candidates(targets: &[RepTarget], rank: usize) -> Result<CandidateSet> {
    let i2 = NamedLattice::I(2).lattice();
    let i6 = NamedLattice::I(6).lattice();
    let k = NamedLattice::K.lattice();
    let mut members = vec![i2.direct_sum(&NamedLattice::A(5).lattice())];
    let mut notes = vec!["L = I_k ⊥ M, k ≥ 2; A_5 indecomposable gives I_2 ⊥ A_5 or I_6 ⊥ ⟨t⟩".to_string()];
    // a vector of K touching ⟨t⟩ has norm ≥ t, and K's basis has norm 4
    for t in 1..=4 {
        let host = NamedLattice::I(4).lattice().direct_sum(&Lattice::diagonal(&[t]));
        if embeds(&k, &host).is_some() {
            members.push(i6.direct_sum(&Lattice::diagonal(&[t])));
        } else {
            notes.push(format!("K does not embed in I_4 ⊥ <{t}>"));
        }
    }
    notes.push("t ≥ 5 impossible: K ↛ I_4 and every vector meeting ⟨t⟩ has norm ≥ 5".into());
    Ok(CandidateSet {
        constraints: targets.iter().map(|t| t.to_string()).collect(),
        rank,
        stages: vec![StageLog { stage: Stage::Dedup, count: members.len(), extensions: Vec::new() }],
        members,
        exhaustive: true,
        justification: notes.join("; "),
    })
}

/// Whether two lists agree up to isometry (as multisets of classes).
pub fn same_classes(a: &[Lattice], b: &[Lattice]) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| is_isometric(x, y)))
        && b.iter().all(|y| a.iter().any(|x| is_isometric(x, y)))
}

/// Binaries (up to isometry) representing both `a` and `b`: all have
/// determinant at most `a·b`.
pub fn binaries_representing(a: i128, b: i128) -> Vec<Lattice> {
    (1..=a * b)
        .flat_map(enumerate_binary_by_det)
        .filter(|l| represents_integer(l, a) && represents_integer(l, b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::is_isometric;

    fn k() -> Lattice {
        NamedLattice::K.lattice()
    }

    #[test]
    fn integer_examples() {
        let i3 = NamedLattice::I(3).lattice();
        assert!(!represents_integer(&i3, 7));
        assert!(!represents_integer(&Lattice::diagonal(&[1, 1, 2]), 14));
        assert!(represents_integer(&i3, 3));
    }

    #[test]
    fn embed_examples() {
        let a5 = NamedLattice::A(5).lattice();
        let i2a5 = NamedLattice::I(2).lattice().direct_sum(&a5);
        assert!(embeds(&a5, &i2a5).is_some());
        assert!(embeds(&k(), &NamedLattice::I(4).lattice()).is_none());
    }

    #[test]
    fn primitive_rep_examples() {
        assert_eq!(primitive_reps(&Lattice::diagonal(&[1, 1]), 1), vec![(0, 1)]);
        assert_eq!(primitive_reps(&Lattice::diagonal(&[1, 23]), 24), vec![(1, 1)]);
        let l1 = Lattice::gram_unchecked(&[&[21, 5], &[5, 64]]);
        assert!(primitive_reps(&l1, 3080).contains(&(1321, 567)));
    }

    #[test]
    fn complement_examples() {
        for (t, expect) in [
            (1, Lattice::gram_unchecked(&[&[2, 1], &[1, 3]]).direct_sum(&Lattice::diagonal(&[3]))),
            (2, Lattice::diagonal(&[1, 3, 10])),
            (3, Lattice::gram_unchecked(&[&[2, 1], &[1, 2]]).direct_sum(&Lattice::diagonal(&[15]))),
        ] {
            let host = NamedLattice::I(4).lattice().direct_sum(&Lattice::diagonal(&[t]));
            let w = embeds(&k(), &host).unwrap();
            let c = orthogonal_complement(&w);
            assert!(is_isometric(&c, &expect), "t = {t}: {:?}", c.gram());
        }
        let a2 = NamedLattice::A(2).lattice();
        let host = Lattice::diagonal(&[1]).direct_sum(&a2);
        let w = EmbeddingWitness { t: Mat::from_columns(&[vec![1, 0, 0]]), source: Lattice::diagonal(&[1]), target: host };
        assert!(is_isometric(&orthogonal_complement(&w), &a2));
    }

    #[test]
    fn split_examples() {
        let (k6, m) = split_unary(&NamedLattice::I(6).lattice().direct_sum(&Lattice::diagonal(&[3])));
        assert_eq!((k6, m), (6, Lattice::diagonal(&[3])));
        let a2 = NamedLattice::A(2).lattice();
        let (k0, m) = split_unary(&a2);
        assert_eq!(k0, 0);
        assert!(is_isometric(&m, &a2));
        let b = Lattice::gram_unchecked(&[&[5, 1], &[1, 23]]);
        let (k1, m) = split_unary(&Lattice::diagonal(&[1]).direct_sum(&b));
        assert_eq!(k1, 1);
        assert!(is_isometric(&m, &b));
        assert_eq!(split_unary(&NamedLattice::I(2).lattice()).1.rank(), 0);
    }

    #[test]
    fn rank_too_small() {
        let r = common_rep_candidates(&StageScript::Section4.targets(), 4, StageScript::Section4);
        assert!(matches!(r, Err(Error::RankTooSmall { needed: 5, rank: 4 })));
    }
}
