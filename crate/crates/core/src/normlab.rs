//! Conjugation-invariant word norms, `Δ_k`, `Π(T)` and normal generation.
//!
//! For `T ⊆ G` the ball `B_T(k)` is the set of products of at most `k` conjugates of elements
//! of `T ∪ T⁻¹`. It is computed by breadth-first search from the identity with step set `S`,
//! the union of the conjugacy classes of `T ∪ T⁻¹`.

use crate::error::{Error, Result};
use crate::finring::{ChainKind, Elem, FiniteRing, Ideal};
use crate::group::{abelianization, normal_closure, FiniteGroup, GroupTable};
use crate::sl2::Mat2;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

/// A value in `ℕ ∪ {∞}`; serializes as a number or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Norm {
    Finite(u32),
    Infinite,
}

impl Serialize for Norm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Norm::Finite(n) => s.serialize_u32(*n),
            Norm::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A value in `ℕ ∪ {-∞}`; serializes as a number or `"-inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DeltaValue {
    MinusInfinity,
    Finite(u32),
}

impl Serialize for DeltaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DeltaValue::Finite(n) => s.serialize_u32(*n),
            DeltaValue::MinusInfinity => s.serialize_str("-inf"),
        }
    }
}

/// Union of the conjugacy classes of `t` and of the inverses of `t`, sorted.
pub fn step_set(g: &GroupTable, t: &[u32]) -> Vec<u32> {
    let mut s: Vec<u32> = t
        .iter()
        .flat_map(|&x| [x, g.inv(x)])
        .flat_map(|x| g.class_of(x))
        .collect();
    s.sort_unstable();
    s.dedup();
    s
}

const UNREACHED: u32 = u32::MAX;

/// BFS distances from the identity; `dist` is scratch of length `|G|`. Returns ball sizes.
fn ball_search<G: FiniteGroup + ?Sized>(g: &G, steps: &[u32], dist: &mut [u32], frontier: &mut Vec<u32>) -> Vec<usize> {
    dist.fill(UNREACHED);
    frontier.clear();
    let e = g.identity();
    dist[e as usize] = 0;
    frontier.push(e);
    let mut sizes = vec![1];
    let mut head = 0;
    let mut level = 0;
    while head < frontier.len() {
        let end = frontier.len();
        level += 1;
        for i in head..end {
            let x = frontier[i];
            for &s in steps {
                let y = g.mul(x, s);
                if dist[y as usize] == UNREACHED {
                    dist[y as usize] = level;
                    frontier.push(y);
                }
            }
        }
        head = end;
        if frontier.len() > end {
            sizes.push(frontier.len());
        }
    }
    sizes
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormProfile {
    /// `|B_T(k)|` for `k = 0, 1, …` until the ball stops growing.
    pub ball_sizes: Vec<usize>,
    /// `‖x‖_T` per group element.
    pub norm: Vec<Norm>,
    pub diameter: Norm,
}

pub fn norm_profile(g: &GroupTable, t: &[u32]) -> NormProfile {
    let steps = step_set(g, t);
    let mut dist = vec![UNREACHED; g.order()];
    let ball_sizes = ball_search(g, &steps, &mut dist, &mut Vec::new());
    let norm: Vec<Norm> = dist
        .iter()
        .map(|&d| {
            if d == UNREACHED {
                Norm::Infinite
            } else {
                Norm::Finite(d)
            }
        })
        .collect();
    let diameter = if *ball_sizes.last().unwrap() == g.order() {
        Norm::Finite(ball_sizes.len() as u32 - 1)
    } else {
        Norm::Infinite
    };
    NormProfile {
        ball_sizes,
        norm,
        diameter,
    }
}

/// Conjugacy classes merged with the classes of their inverses, identity excluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricClasses {
    /// Each entry: the (one or two) class ids merged.
    pub class_ids: Vec<Vec<u32>>,
    /// Sorted element union per entry.
    pub members: Vec<Vec<u32>>,
}

pub fn symmetric_classes(g: &GroupTable) -> SymmetricClasses {
    let cc = g.classes();
    let mut class_ids = Vec::new();
    let mut members = Vec::new();
    for (i, class) in cc.classes.iter().enumerate() {
        let j = cc.class_of[g.inv(class[0]) as usize] as usize;
        if j < i || class.contains(&g.identity()) {
            continue;
        }
        let mut m = class.clone();
        let mut ids = vec![i as u32];
        if j != i {
            m.extend(&cc.classes[j]);
            m.sort_unstable();
            ids.push(j as u32);
        }
        class_ids.push(ids);
        members.push(m);
    }
    SymmetricClasses { class_ids, members }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Subsets of `0..m` of size `1..=k`, by size then lexicographically.
fn subsets(m: usize, k: usize, limit: u64) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=k.min(m) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if out.len() as u64 >= limit {
                return out;
            }
            out.push(idx.clone());
            let Some(pos) = (0..size).rev().find(|&p| idx[p] != p + m - size) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DeltaReport {
    pub k: usize,
    pub value: DeltaValue,
    /// Class ids of a worst normally generating set (first maximum in search order).
    pub witness: Vec<u32>,
    /// One representative per merged class of the witness.
    pub witness_representatives: Vec<u32>,
    /// Number of inverse-closed class sets of size `1..=k`.
    pub search_space: u64,
    pub evaluated: u64,
    pub normally_generating: u64,
    /// The budget cut the search short; `value` is then only a lower bound.
    pub truncated: bool,
}

/// `Δ_k(G)`: the largest diameter `‖G‖_T` over normally generating `T` with `|T| ≤ k`.
pub fn delta_k(g: &GroupTable, k: usize, budget: Option<u64>) -> Result<DeltaReport> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let sym = symmetric_classes(g);
    let m = sym.members.len();
    let search_space = (1..=k.min(m) as u64).fold(0u64, |acc, j| acc.saturating_add(binomial(m as u64, j)));
    let limit = budget.unwrap_or(u64::MAX).min(search_space);
    let candidates = subsets(m, k, limit);
    let diameters: Vec<Option<u32>> = candidates
        .par_iter()
        .map_init(
            || (vec![UNREACHED; g.order()], Vec::with_capacity(g.order()), Vec::new()),
            |(dist, frontier, steps), cand| {
                steps.clear();
                for &c in cand {
                    steps.extend_from_slice(&sym.members[c]);
                }
                let sizes = ball_search(g, steps, dist, frontier);
                (*sizes.last().unwrap() == g.order()).then(|| sizes.len() as u32 - 1)
            },
        )
        .collect();
    let mut best: Option<(u32, usize)> = None;
    for (i, d) in diameters.iter().enumerate() {
        if let Some(d) = *d {
            if best.is_none_or(|(b, _)| d > b) {
                best = Some((d, i));
            }
        }
    }
    let (value, witness, witness_representatives) = match best {
        None => (DeltaValue::MinusInfinity, Vec::new(), Vec::new()),
        Some((d, i)) => (
            DeltaValue::Finite(d),
            candidates[i].iter().flat_map(|&c| sym.class_ids[c].clone()).collect(),
            candidates[i].iter().map(|&c| sym.members[c][0]).collect(),
        ),
    };
    Ok(DeltaReport {
        k,
        value,
        witness,
        witness_representatives,
        search_space,
        evaluated: candidates.len() as u64,
        normally_generating: diameters.iter().filter(|d| d.is_some()).count() as u64,
        truncated: (candidates.len() as u64) < search_space,
    })
}

/// `l(T) = Σ l(A)`.
pub fn level_sum(r: &FiniteRing, t: &[Mat2]) -> Ideal {
    t.iter().fold(r.zero_ideal(), |acc, a| acc.sum(&a.level_ideal(r)))
}

/// `Π(T)`: maximal ideals modulo which every element of `T` is scalar.
pub fn pi_set(r: &FiniteRing, t: &[Mat2]) -> Vec<Ideal> {
    r.maximal_ideals()
        .into_iter()
        .filter(|p| {
            let (q, map) = r.quotient_ring(p).expect("maximal ideals are proper");
            t.iter().all(|a| a.map_entries(&map).is_scalar(&q))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct NormalGenerationVerdict {
    /// Ground truth: `⟨⟨T⟩⟩ = G`.
    pub closure: bool,
    pub pi_empty: bool,
    /// The image of `T` generates the abelianization.
    pub ab_generates: bool,
    /// Whether `closure` coincides with `pi_empty ∧ ab_generates`.
    pub agree: bool,
}

pub fn normally_generates(g: &GroupTable, t: &[u32]) -> NormalGenerationVerdict {
    let closure = normal_closure(g, t).is_whole();
    let mats: Vec<Mat2> = t.iter().map(|&x| g.element(x)).collect();
    let pi_empty = pi_set(g.ring(), &mats).is_empty();
    let ab_generates = abelianization(g).images_generate(t);
    NormalGenerationVerdict {
        closure,
        pi_empty,
        ab_generates,
        agree: closure == (pi_empty && ab_generates),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundSearch {
    /// `C(b·x³)`.
    pub target: Mat2,
    /// Least `k ≤ k_max` with the target in `B_A(k)`.
    pub k: Option<u32>,
    pub ball_sizes: Vec<usize>,
}

/// Least `k` such that `C(b·x³) ∈ B_A(k)`, searching up to `k_max`.
pub fn bound_search(g: &GroupTable, a: &Mat2, x: Elem, b: Elem, k_max: u32) -> Result<BoundSearch> {
    let r = g.ring();
    if !a.level_ideal(r).contains(r, x) {
        return Err(Error::NotInLevelIdeal(r.format_element(x)));
    }
    let ai = g.require(a)?;
    let target = Mat2::c(r, r.mul(b, r.pow(x, 3)));
    let ti = g.require(&target)?;
    let profile = norm_profile(g, &[ai]);
    let k = match profile.norm[ti as usize] {
        Norm::Finite(d) if d <= k_max => Some(d),
        _ => None,
    };
    let ball_sizes = profile.ball_sizes.into_iter().take(k_max as usize + 1).collect();
    Ok(BoundSearch { target, k, ball_sizes })
}

/// How each local factor enters the generating-set construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorRole {
    /// `Z/4`.
    Unramified,
    /// `F2[T]/(T²)` and its twin `F2[T]/((T+1)²)`.
    Ramified,
    /// `F3`.
    Three,
    /// Residue field of order at least 4; `SL2` is perfect there.
    Helper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorProfile {
    pub roles: Vec<FactorRole>,
    pub r1: usize,
    pub r2: usize,
    pub q: usize,
    /// `max(2·r2 + r1, q)`.
    pub v: usize,
}

pub fn factor_profile(r: &FiniteRing) -> Result<FactorProfile> {
    let roles = r
        .factors()
        .iter()
        .map(
            |f| match (f.characteristic_prime(), f.kind(), f.length(), f.residue_order()) {
                (2, ChainKind::IntegerMod, 2, _) => Ok(FactorRole::Unramified),
                (2, ChainKind::Polynomial { .. }, 2, 2) => Ok(FactorRole::Ramified),
                (3, _, 1, 3) => Ok(FactorRole::Three),
                (_, _, _, q) if q >= 4 => Ok(FactorRole::Helper),
                _ => Err(Error::UnsupportedRing(format!(
                    "factor {} is none of Z/4, F2[T]/(T^2), F3 or a ring with residue field of order >= 4",
                    f.canonical_spec()
                ))),
            },
        )
        .collect::<Result<Vec<_>>>()?;
    let count = |role| roles.iter().filter(|&&x| x == role).count();
    let (r1, r2, q) = (
        count(FactorRole::Unramified),
        count(FactorRole::Ramified),
        count(FactorRole::Three),
    );
    Ok(FactorProfile {
        v: (2 * r2 + r1).max(q),
        roles,
        r1,
        r2,
        q,
    })
}

/// A set `{E12(s_1), …, E12(s_k)}` that normally generates `SL2(R)` when `k ≥ v`.
///
/// Indices `u ≤ r1 + 2·r2` are assigned to the 2-local factors: `s_u` is a unit at the `u`-th
/// `Z/4` factor, a unit at the `(u - r1)`-th `F2[T]/(T²)` factor, the uniformizer at the
/// `(u - r1 - r2)`-th one, and zero at the other 2-local factors. Indices `u ≤ q` likewise put
/// a unit at the `u`-th `F3` factor and zero at the others. Indices beyond a block get units
/// throughout that block, and helper factors always get units.
pub fn construct_generators(r: &FiniteRing, k: usize) -> Result<Vec<Mat2>> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let profile = factor_profile(r)?;
    if k < profile.v {
        return Err(Error::RankObstruction { k, v: profile.v });
    }
    let two_block = profile.r1 + 2 * profile.r2;
    let mut s_values = Vec::with_capacity(k);
    for u in 1..=k {
        let (mut nq, mut np, mut nk) = (0, 0, 0);
        let comps: Vec<u32> = r
            .factors()
            .iter()
            .zip(&profile.roles)
            .map(|(f, role)| match role {
                FactorRole::Unramified => {
                    nq += 1;
                    if u > two_block || u == nq {
                        1
                    } else {
                        0
                    }
                }
                FactorRole::Ramified => {
                    np += 1;
                    if u > two_block || u == profile.r1 + np {
                        1
                    } else if u == profile.r1 + profile.r2 + np {
                        f.uniformizer()
                    } else {
                        0
                    }
                }
                FactorRole::Three => {
                    nk += 1;
                    if u > profile.q || u == nk {
                        1
                    } else {
                        0
                    }
                }
                FactorRole::Helper => 1,
            })
            .collect();
        s_values.push(r.from_components(&comps));
    }
    Ok(s_values.into_iter().map(|s| Mat2::e12(r, s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{parse_element, parse_ring_spec};
    use crate::sl2::parse_matrix;

    fn group(s: &str) -> GroupTable {
        GroupTable::enumerate(&parse_ring_spec(s).unwrap()).unwrap()
    }

    fn ids(g: &GroupTable, t: &str) -> Vec<u32> {
        crate::sl2::parse_matrix_list(g.ring(), t)
            .unwrap()
            .iter()
            .map(|m| g.index_of(m).unwrap())
            .collect()
    }

    #[test]
    fn diameter_examples() {
        let g = group("F2");
        assert_eq!(norm_profile(&g, &ids(&g, "E12(1)")).diameter, Norm::Finite(2));
        assert_eq!(norm_profile(&g, &ids(&g, "I")).diameter, Norm::Infinite);
        let p = norm_profile(&g, &ids(&g, "I"));
        assert_eq!(p.ball_sizes, vec![1]);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_k(&group("F2"), 1, None).unwrap().value, DeltaValue::Finite(2));
        // -I is not a product of two elements of order 3 (that would need y = -x⁻¹ of order 6),
        // nor of two elements of order 6, so every single normal generator needs 3 factors.
        assert_eq!(delta_k(&group("F3"), 1, None).unwrap().value, DeltaValue::Finite(3));
        let g = group("F2[T]/(T^2)");
        assert_eq!(delta_k(&g, 1, None).unwrap().value, DeltaValue::MinusInfinity);
        assert!(delta_k(&g, 2, None).unwrap().value >= DeltaValue::Finite(3));
        assert_eq!(delta_k(&g, 0, None).err(), Some(Error::InvalidK));
    }

    #[test]
    fn delta_budget_truncates() {
        let g = group("F3");
        let full = delta_k(&g, 2, None).unwrap();
        let cut = delta_k(&g, 2, Some(2)).unwrap();
        assert!(!full.truncated);
        assert!(cut.truncated);
        assert_eq!(cut.evaluated, 2);
        assert!(cut.value <= full.value);
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(
            subsets(3, 2, u64::MAX),
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(binomial(5, 2), 10);
    }

    #[test]
    fn pi_examples() {
        let r = parse_ring_spec("Z/6").unwrap();
        let e1 = parse_matrix(&r, "E12(1)").unwrap();
        assert!(pi_set(&r, &[e1]).is_empty());
        let e2 = parse_matrix(&r, "E12(2)").unwrap();
        let pi = pi_set(&r, &[e2]);
        assert_eq!(pi.iter().map(|p| p.describe(&r)).collect::<Vec<_>>(), vec!["(2)"]);
        let z4 = parse_ring_spec("Z/4").unwrap();
        let minus = parse_matrix(&z4, "-I").unwrap();
        assert_eq!(
            pi_set(&z4, &[minus])
                .iter()
                .map(|p| p.describe(&z4))
                .collect::<Vec<_>>(),
            vec!["(2)"]
        );
    }

    #[test]
    fn level_sum_examples() {
        let r = parse_ring_spec("Z/6").unwrap();
        assert!(level_sum(&r, &[Mat2::identity(&r)]).is_zero(&r));
        let t = crate::sl2::parse_matrix_list(&r, "E12(2), E12(3)").unwrap();
        assert!(level_sum(&r, &t).is_whole());
        let z4 = parse_ring_spec("Z/4").unwrap();
        let t = crate::sl2::parse_matrix_list(&z4, "E12(2)").unwrap();
        assert_eq!(level_sum(&z4, &t).describe(&z4), "(2)");
    }

    #[test]
    fn verdict_examples() {
        let g = group("Z/4");
        let v = normally_generates(&g, &ids(&g, "E12(1)"));
        assert!(v.closure && v.pi_empty && v.ab_generates && v.agree);
        let g = group("F2[T]/(T^2)");
        let v = normally_generates(&g, &ids(&g, "E12(1)"));
        assert!(!v.closure && !v.ab_generates && v.agree);
        let g = group("F3");
        let v = normally_generates(&g, &ids(&g, "-I"));
        assert!(!v.closure && !v.pi_empty);
    }

    #[test]
    fn bound_search_examples() {
        let g = group("Z/9");
        let r = g.ring().clone();
        let one = r.one();
        let c1 = Mat2::c(&r, one);
        assert_eq!(bound_search(&g, &c1, one, one, 5).unwrap().k, Some(1));
        let e = Mat2::e12(&r, one);
        assert_eq!(bound_search(&g, &e, one, one, 5).unwrap().k, Some(2));
        let e3 = Mat2::e12(&r, parse_element(&r, "3").unwrap());
        assert_eq!(
            bound_search(&g, &e3, one, one, 5).err(),
            Some(Error::NotInLevelIdeal("1".into()))
        );
    }

    #[test]
    fn construction_examples() {
        let r = parse_ring_spec("Z/12").unwrap();
        assert_eq!(construct_generators(&r, 1).unwrap(), vec![Mat2::e12(&r, r.one())]);
        let r = parse_ring_spec("F2[T]/(T^2) x F3").unwrap();
        let t = construct_generators(&r, 2).unwrap();
        let expected = crate::sl2::parse_matrix_list(&r, "E12((1,1)), E12((T,1))").unwrap();
        assert_eq!(t, expected);
        let r = parse_ring_spec("F2[T]/(T^2)").unwrap();
        assert_eq!(
            construct_generators(&r, 1).err(),
            Some(Error::RankObstruction { k: 1, v: 2 })
        );
    }
}
