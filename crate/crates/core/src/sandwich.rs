//! Radices, the subgroups `G(P)`, `G(J, U)` and `G(N)` attached to a normal subgroup `N`,
//! the inclusion chain `[E(2,R), G(N)] ⊆ N ⊆ G(N)`, and the explicit abelianization maps of
//! `SL2` over `F2[T]/(T²)`, `Z/4` and `F3`.

use crate::error::{Error, Result};
use crate::finring::{AdditiveSubgroup, Elem, FiniteRing, Ideal};
use crate::group::{
    abelianization, normal_closure, subgroup_closure, AbelianGroup, FiniteGroup, GroupHom, GroupTable, Subgroup,
    SubgroupBuilder,
};
use crate::sl2::Mat2;
use rayon::prelude::*;
use serde::Serialize;

/// `P` is closed under `x ↦ (a³ - a)x² + a²x` and `x ↦ a·x³` for every `a ∈ R`.
pub fn is_radix(r: &FiniteRing, p: &AdditiveSubgroup) -> bool {
    p.members().iter().all(|&x| {
        let x2 = r.mul(x, x);
        let x3 = r.mul(x2, x);
        r.elements().all(|a| {
            let a2 = r.mul(a, a);
            let cubic = r.sub(r.mul(a2, a), a);
            p.contains(r.add(r.mul(cubic, x2), r.mul(a2, x))) && p.contains(r.mul(a, x3))
        })
    })
}

/// `ρ(N)`: the additive subgroup generated by `ρ(A)`, `A ∈ N`.
pub fn rho_subgroup(g: &GroupTable, n: &Subgroup) -> AdditiveSubgroup {
    let r = g.ring();
    let mut seeds: Vec<Elem> = n.elements().iter().map(|&i| g.element(i).rho(r)).collect();
    seeds.sort_unstable();
    seeds.dedup();
    r.additive_closure(&seeds)
}

/// `l(N)`: the ideal generated by the level ideals of the members of `N`.
pub fn level_of(g: &GroupTable, n: &Subgroup) -> Ideal {
    let r = g.ring();
    n.elements()
        .iter()
        .fold(r.zero_ideal(), |acc, &i| acc.sum(&g.element(i).level_ideal(r)))
}

/// A subgroup `U` of `(R/J)*`, stored with the quotient it lives in.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    /// `None` when `J = R`.
    pub quotient: Option<(FiniteRing, Vec<Elem>)>,
    /// Sorted elements of `U` in `R/J`.
    pub units: Vec<Elem>,
}

impl UnitGroup {
    pub fn contains(&self, u: Elem) -> bool {
        self.units.binary_search(&u).is_ok()
    }

    pub fn all_units(r: &FiniteRing, j: &Ideal) -> Result<Self> {
        if j.is_whole() {
            return Ok(UnitGroup {
                quotient: None,
                units: Vec::new(),
            });
        }
        let (q, map) = r.quotient_ring(j)?;
        let units = q.units();
        Ok(UnitGroup {
            quotient: Some((q, map)),
            units,
        })
    }

    pub fn describe(&self) -> Vec<String> {
        match &self.quotient {
            Some((q, _)) => self.units.iter().map(|&u| q.format_element(u)).collect(),
            None => Vec::new(),
        }
    }
}

/// `U(N)`: units `u` of `R/l(N)` with some `A ∈ N` congruent to `uI`, closed under products.
pub fn units_of(g: &GroupTable, n: &Subgroup) -> Result<UnitGroup> {
    let r = g.ring();
    let level = level_of(g, n);
    if level.is_whole() {
        return Ok(UnitGroup {
            quotient: None,
            units: Vec::new(),
        });
    }
    let (q, map) = r.quotient_ring(&level)?;
    let mut found = vec![false; q.order()];
    for &i in n.elements() {
        let m = g.element(i).map_entries(&map);
        if m.is_scalar(&q) {
            found[m.a.index()] = true;
        }
    }
    let mut units: Vec<Elem> = q.elements().filter(|u| found[u.index()]).collect();
    let mut head = 0;
    while head < units.len() {
        let u = units[head];
        head += 1;
        for k in 0..units.len() {
            let w = q.mul(u, units[k]);
            if !found[w.index()] {
                found[w.index()] = true;
                units.push(w);
            }
        }
    }
    units.sort_unstable();
    Ok(UnitGroup {
        quotient: Some((q, map)),
        units,
    })
}

/// Membership in `G(P)`. `P` must be a radix.
pub fn in_g_p(r: &FiniteRing, a: &Mat2, p: &AdditiveSubgroup) -> Result<bool> {
    if !is_radix(r, p) {
        return Err(Error::NotRadix);
    }
    Ok(in_g_p_unchecked(r, a, p, &r.vn2()))
}

fn in_g_p_unchecked(r: &FiniteRing, a: &Mat2, p: &AdditiveSubgroup, vn2: &Ideal) -> bool {
    if !a.rho_family(r).as_array().iter().all(|&x| p.contains(x)) {
        return false;
    }
    let square_minus_one = |x: Elem| r.principal_ideal(r.sub(r.mul(x, x), r.one()));
    let ideal = square_minus_one(a.a)
        .product(vn2, r)
        .sum(&square_minus_one(a.d).product(vn2, r));
    ideal.members(r).iter().all(|&x| p.contains(x))
}

/// Membership in `G(J, U)`: the image of `a` in `SL2(R/J)` is `uI` with `u ∈ U`.
/// Vacuous when `J = R`.
pub fn in_g_ju(a: &Mat2, u: &UnitGroup) -> bool {
    match &u.quotient {
        None => true,
        Some((q, map)) => {
            let m = a.map_entries(map);
            m.is_scalar(q) && u.contains(m.a)
        }
    }
}

/// `G(N) = G(l(N), U(N)) ∩ G(ρ(N))`.
pub fn g_of_n(g: &GroupTable, n: &Subgroup) -> Result<Subgroup> {
    let r = g.ring();
    let level = level_of(g, n);
    if level.is_zero(r) {
        return Err(Error::LevelZero);
    }
    let p = rho_subgroup(g, n);
    let u = units_of(g, n)?;
    let vn2 = r.vn2();
    let members: Vec<u32> = (0..g.order() as u32)
        .into_par_iter()
        .filter(|&i| {
            let a = g.element(i);
            in_g_ju(&a, &u) && in_g_p_unchecked(r, &a, &p, &vn2)
        })
        .collect();
    let closure = subgroup_closure(g, &members);
    assert_eq!(closure.order(), members.len(), "G(N) is a subgroup");
    Ok(closure)
}

/// Elementary matrices `E12(x)`, `E21(x)` as group indices, deduplicated.
pub fn elementary_generators(g: &GroupTable) -> Vec<u32> {
    let r = g.ring();
    let mut out: Vec<u32> = r
        .elements()
        .flat_map(|x| [Mat2::e12(r, x), Mat2::e21(r, x)])
        .map(|m| g.index_of(&m).expect("elementary matrices lie in SL2"))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `[E(2,R), H]`: generated by `[e, h]` for elementary generators `e` and `h ∈ H`, then closed
/// under conjugation by `E(2,R)`.
pub fn elementary_commutator(g: &GroupTable, h: &Subgroup) -> Subgroup {
    let elementary = elementary_generators(g);
    let mut b = SubgroupBuilder::new(g);
    for &e in &elementary {
        for &x in h.elements() {
            b.add(g.comm(e, x));
        }
    }
    loop {
        let current = b.finish();
        let mut b2 = SubgroupBuilder::new(g);
        for &x in &current.generated_by {
            b2.add(x);
        }
        let mut grew = false;
        for &x in &current.generated_by {
            for &e in &elementary {
                grew |= b2.add(g.conj(x, e));
            }
        }
        if !grew {
            return b2.finish();
        }
        b = b2;
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SandwichReport {
    pub ring_spec: String,
    pub generator: String,
    pub n_order: usize,
    pub level_ideal: String,
    pub rho_subgroup: Vec<String>,
    pub units: Vec<String>,
    pub g_of_n_order: usize,
    pub commutator_order: usize,
    /// `[E(2,R), G(N)] ⊆ N`.
    pub chain_left_ok: bool,
    /// `N ⊆ G(N)`.
    pub chain_right_ok: bool,
    pub rho_is_radix: bool,
    /// `C(x³b) ∈ N` for all `x ∈ l(N)`, `b ∈ R`.
    pub selfrep_in_n: bool,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.chain_left_ok && self.chain_right_ok && self.rho_is_radix && self.selfrep_in_n
    }
}

pub fn sandwich_check(g: &GroupTable, a: &Mat2) -> Result<SandwichReport> {
    let r = g.ring();
    if !r.has_many_units() {
        return Err(Error::ManyUnitsFailed(r.spec().to_string()));
    }
    let ai = g.require(a)?;
    let n = normal_closure(g, &[ai]);
    let level = level_of(g, &n);
    if level.is_zero(r) {
        return Err(Error::LevelZero);
    }
    let gn = g_of_n(g, &n)?;
    let comm = elementary_commutator(g, &gn);
    let p = rho_subgroup(g, &n);
    let u = units_of(g, &n)?;
    let selfrep_in_n = level.members(r).iter().all(|&x| {
        let x3 = r.pow(x, 3);
        r.elements()
            .all(|b| n.contains(g.index_of(&Mat2::c(r, r.mul(x3, b))).expect("C(x) lies in SL2")))
    });
    Ok(SandwichReport {
        ring_spec: r.spec().to_string(),
        generator: a.format(r),
        n_order: n.order(),
        level_ideal: level.describe(r),
        rho_subgroup: p.members().iter().map(|&x| r.format_element(x)).collect(),
        units: u.describe(),
        g_of_n_order: gn.order(),
        commutator_order: comm.order(),
        chain_left_ok: comm.is_subgroup_of(&n),
        chain_right_ok: n.is_subgroup_of(&gn),
        rho_is_radix: is_radix(r, &p),
        selfrep_in_n,
    })
}

/// A homomorphism from `SL2(R)` onto a small abelian group.
#[derive(Debug)]
pub struct AbelianHom {
    pub name: &'static str,
    pub group: GroupTable,
    pub target: AbelianGroup,
    pub hom: GroupHom,
}

impl AbelianHom {
    pub fn image(&self, m: &Mat2) -> Result<Vec<u64>> {
        let i = self.group.require(m)?;
        Ok(self.target.decode(self.hom.apply(i)))
    }

    pub fn is_multiplicative(&self) -> bool {
        self.hom.is_multiplicative(&self.group, &self.target)
    }

    pub fn kernel(&self) -> Subgroup {
        self.hom.kernel(&self.group, &self.target)
    }

    pub fn is_surjective(&self) -> bool {
        self.hom.image_size() == self.target.order()
    }

    /// Tab-separated rows `id, matrix, image` with a header line.
    pub fn to_tsv(&self) -> String {
        let r = self.group.ring();
        let mut out = String::from("id\tmatrix\timage\n");
        for (i, m) in self.group.elements().iter().enumerate() {
            let img = self.target.decode(self.hom.apply(i as u32));
            let img: Vec<String> = img.iter().map(u64::to_string).collect();
            out.push_str(&format!("{}\t{}\t{}\n", m.dense_id(r), m.format(r), img.join(",")));
        }
        out
    }
}

fn require_ring(r: &FiniteRing, expected: &str) -> Result<()> {
    if r.canonical_spec() != expected {
        return Err(Error::WrongRing {
            expected: expected.to_string(),
            got: r.spec().to_string(),
        });
    }
    Ok(())
}

fn build(
    name: &'static str,
    r: &FiniteRing,
    moduli: Vec<u64>,
    f: impl Fn(&Mat2) -> Vec<u64> + Sync,
) -> Result<AbelianHom> {
    let group = GroupTable::enumerate(r)?;
    let target = AbelianGroup::new(moduli);
    let image = group.elements().par_iter().map(|m| target.encode(&f(m))).collect();
    let hom = GroupHom {
        domain: format!("SL2({})", r.spec()),
        codomain: target
            .moduli()
            .iter()
            .map(|m| format!("Z/{m}"))
            .collect::<Vec<_>>()
            .join(" x "),
        image,
    };
    Ok(AbelianHom {
        name,
        group,
        target,
        hom,
    })
}

/// The constant-coefficient lift of the reduction of `m` modulo `(T)`.
fn constant_part(r: &FiniteRing, m: &Mat2) -> Mat2 {
    let f = &r.factors()[0];
    let lift = |x: Elem| r.from_components(&[f.reduce(x.0 as u32, 1)]);
    Mat2::raw(lift(m.a), lift(m.b), lift(m.c), lift(m.d))
}

fn q_value(r: &FiniteRing, m: &Mat2) -> u64 {
    let k = m.mul(&constant_part(r, m).inv(r), r);
    let s = r.add(r.sub(k.a, r.one()), r.add(k.b, k.c));
    // s lies in (T) = {0, T}
    u64::from(s != r.zero())
}

/// Sign of the permutation of the three nonzero vectors of `F2²` induced by `m mod (T)`.
fn h_value(r: &FiniteRing, m: &Mat2) -> u64 {
    let c = constant_part(r, m);
    let bit = |x: Elem| u8::from(x != r.zero());
    let (a, b, cc, d) = (bit(c.a), bit(c.b), bit(c.c), bit(c.d));
    let vectors = [(1u8, 0u8), (0, 1), (1, 1)];
    let image: Vec<usize> = vectors
        .iter()
        .map(|&(x, y)| {
            let v = ((a * x + b * y) % 2, (cc * x + d * y) % 2);
            vectors.iter().position(|&w| w == v).expect("invertible")
        })
        .collect();
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| image[i] > image[j])
        .count();
    (inversions % 2) as u64
}

/// `q : SL2(F2[T]/(T²)) → F2`.
pub fn q_hom(r: &FiniteRing) -> Result<AbelianHom> {
    require_ring(r, "F2[T]/(T^2)")?;
    let rr = r.clone();
    build("q", r, vec![2], move |m| vec![q_value(&rr, m)])
}

/// `h ⊕ q : SL2(F2[T]/(T²)) → F2 ⊕ F2`.
pub fn hq_hom(r: &FiniteRing) -> Result<AbelianHom> {
    require_ring(r, "F2[T]/(T^2)")?;
    let rr = r.clone();
    build("hq", r, vec![2, 2], move |m| vec![h_value(&rr, m), q_value(&rr, m)])
}

/// Abelianization of `SL2(R)` onto `Z/n`, scaled so that `E12(1) ↦ 1`.
fn normalized_cyclic(name: &'static str, r: &FiniteRing, n: u64) -> Result<AbelianHom> {
    let group = GroupTable::enumerate(r)?;
    let ab = abelianization(&group);
    assert_eq!(
        ab.factors,
        vec![n],
        "abelianization of SL2({}) is cyclic of order {n}",
        r.spec()
    );
    let e = group.index_of(&Mat2::e12(r, r.one())).expect("E12(1) lies in SL2");
    let g = ab.image(e)[0];
    let g_inv = (1..n)
        .find(|&t| (t * g) % n == 1)
        .expect("E12(1) generates the abelianization");
    let target = AbelianGroup::new(vec![n]);
    let image = (0..group.order() as u32)
        .map(|x| target.encode(&[(ab.image(x)[0] * g_inv) % n]))
        .collect();
    let hom = GroupHom {
        domain: format!("SL2({})", r.spec()),
        codomain: format!("Z/{n}"),
        image,
    };
    Ok(AbelianHom {
        name,
        group,
        target,
        hom,
    })
}

pub fn z4_hom(r: &FiniteRing) -> Result<AbelianHom> {
    require_ring(r, "Z/4")?;
    normalized_cyclic("z4", r, 4)
}

pub fn f3_hom(r: &FiniteRing) -> Result<AbelianHom> {
    require_ring(r, "F3")?;
    normalized_cyclic("f3", r, 3)
}
