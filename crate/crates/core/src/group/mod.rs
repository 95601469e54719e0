//! `SL2(R)` as an explicit finite group, and generic finite-group algorithms.
//!
//! Group elements are `u32` indices. [`GroupTable`] stores the matrices of `SL2(R)` sorted by
//! dense id and multiplies by recomputing matrix products; there is no Cayley table.
//! The algorithms (closures, classes, quotients, abelianization) work over any
//! [`FiniteGroup`], which lets them run unchanged on quotient groups and small abelian groups.

mod abelian;
mod hom;

pub use abelian::{AbelianGroup, AbelianInvariants};
pub use hom::{reduction_hom, split_extension_check, GroupHom, Reduction, SplitExtensionReport};

use crate::error::{Error, Result};
use crate::finring::FiniteRing;
use crate::sl2::Mat2;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::OnceLock;

pub const DEFAULT_GROUP_ORDER_CAP: usize = 200_000;

/// A finite group on the index set `0..order()`.
pub trait FiniteGroup: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> u32;
    fn mul(&self, x: u32, y: u32) -> u32;
    fn inv(&self, x: u32) -> u32;
    /// A generating set of the whole group.
    fn generators(&self) -> &[u32];

    /// `y⁻¹·x·y`.
    fn conj(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// `x·y·x⁻¹·y⁻¹`.
    fn comm(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    /// The conjugacy class of `x`, sorted.
    fn class_of(&self, x: u32) -> Vec<u32> {
        conjugation_orbit(self, x)
    }
}

fn conjugation_orbit<G: FiniteGroup + ?Sized>(g: &G, x: u32) -> Vec<u32> {
    let mut seen = vec![false; g.order()];
    seen[x as usize] = true;
    let mut orbit = vec![x];
    let mut head = 0;
    while head < orbit.len() {
        let y = orbit[head];
        head += 1;
        for &s in g.generators() {
            let z = g.conj(y, s);
            if !seen[z as usize] {
                seen[z as usize] = true;
                orbit.push(z);
            }
        }
    }
    orbit.sort_unstable();
    orbit
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub group_order_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            group_order_cap: DEFAULT_GROUP_ORDER_CAP,
        }
    }
}

/// `|SL2(R)| = ∏ m³(1 - q⁻²)` over chain factors of order `m` with residue field order `q`.
pub fn sl2_order(ring: &FiniteRing) -> u64 {
    ring.factors()
        .iter()
        .map(|f| {
            let m = f.order() as u64;
            let q = f.residue_order() as u64;
            m * m * m - m * m * m / (q * q)
        })
        .product()
}

#[derive(Debug)]
enum Lookup {
    Dense(Vec<u32>),
    Hashed(HashMap<u64, u32>),
}

const NOT_IN_GROUP: u32 = u32::MAX;
const DENSE_LOOKUP_LIMIT: u64 = 1 << 22;

/// The partition of a group into conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    /// Classes ordered by their smallest element; each class sorted.
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn compute<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        let mut class_of = vec![u32::MAX; g.order()];
        let mut classes = Vec::new();
        for x in 0..g.order() as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let orbit = conjugation_orbit(g, x);
            for &y in &orbit {
                class_of[y as usize] = classes.len() as u32;
            }
            classes.push(orbit);
        }
        ConjugacyClasses { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// `SL2(R)` fully enumerated.
#[derive(Debug)]
pub struct GroupTable {
    ring: FiniteRing,
    elements: Vec<Mat2>,
    lookup: Lookup,
    inverse: Vec<u32>,
    identity: u32,
    generators: Vec<u32>,
    classes: OnceLock<ConjugacyClasses>,
}

impl GroupTable {
    pub fn enumerate(ring: &FiniteRing) -> Result<Self> {
        Self::enumerate_with_limits(ring, Limits::default())
    }

    pub fn enumerate_with_limits(ring: &FiniteRing, limits: Limits) -> Result<Self> {
        let predicted = sl2_order(ring);
        if predicted > limits.group_order_cap as u64 {
            return Err(Error::GroupCap {
                order: predicted as usize,
                cap: limits.group_order_cap,
            });
        }
        let r = ring;
        let mut elements = Vec::with_capacity(predicted as usize);
        for a in r.elements() {
            let a_inv = r.inv(a).ok();
            for b in r.elements() {
                for c in r.elements() {
                    let target = r.add(r.one(), r.mul(b, c));
                    match a_inv {
                        Some(ai) => elements.push(Mat2::raw(a, b, c, r.mul(ai, target))),
                        None => {
                            for d in r.elements() {
                                if r.mul(a, d) == target {
                                    elements.push(Mat2::raw(a, b, c, d));
                                }
                            }
                        }
                    }
                }
            }
        }
        elements.sort_unstable_by_key(|m| m.dense_id(r));
        debug_assert_eq!(elements.len() as u64, predicted);
        Ok(Self::from_sorted(r.clone(), elements))
    }

    fn from_sorted(ring: FiniteRing, elements: Vec<Mat2>) -> Self {
        let n = ring.order() as u64;
        let lookup = if n.pow(4) <= DENSE_LOOKUP_LIMIT {
            let mut table = vec![NOT_IN_GROUP; n.pow(4) as usize];
            for (i, m) in elements.iter().enumerate() {
                table[m.dense_id(&ring) as usize] = i as u32;
            }
            Lookup::Dense(table)
        } else {
            Lookup::Hashed(
                elements
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (m.dense_id(&ring), i as u32))
                    .collect(),
            )
        };
        let mut g = GroupTable {
            identity: 0,
            inverse: Vec::new(),
            generators: Vec::new(),
            classes: OnceLock::new(),
            ring,
            elements,
            lookup,
        };
        let id = Mat2::identity(&g.ring);
        g.identity = g.index_of(&id).expect("identity is in SL2");
        g.inverse = g
            .elements
            .iter()
            .map(|m| g.index_of(&m.inv(&g.ring)).expect("closed under inverse"))
            .collect();
        g.generators = g.find_generators();
        g
    }

    /// Elementary matrices first, in ring-element order, then any other element needed.
    fn find_generators(&self) -> Vec<u32> {
        let r = &self.ring;
        let mut builder = SubgroupBuilder::new(self);
        let elementary = r
            .elements()
            .flat_map(|x| [Mat2::e12(r, x), Mat2::e21(r, x)])
            .map(|m| self.index_of(&m).expect("elementary matrices lie in SL2"));
        for x in elementary.chain(0..self.order() as u32) {
            if builder.order() == self.order() {
                break;
            }
            builder.add(x);
        }
        builder.finish().generated_by
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn element(&self, i: u32) -> Mat2 {
        self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn index_of(&self, m: &Mat2) -> Option<u32> {
        let id = m.dense_id(&self.ring);
        let i = match &self.lookup {
            Lookup::Dense(t) => *t.get(id as usize)?,
            Lookup::Hashed(h) => *h.get(&id)?,
        };
        (i != NOT_IN_GROUP).then_some(i)
    }

    /// Index of `m`, or `NotInGroup` when `m` is not a determinant-one matrix over this ring.
    pub fn require(&self, m: &Mat2) -> Result<u32> {
        self.index_of(m).ok_or_else(|| Error::NotInGroup(m.format(&self.ring)))
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| ConjugacyClasses::compute(self))
    }

    pub fn report(&self) -> GroupReport {
        let ab = abelianization(self);
        GroupReport {
            ring_spec: self.ring.spec().to_string(),
            group_order: self.order(),
            class_sizes: self.classes().sizes(),
            perfect: ab.factors.is_empty(),
            abelian_invariants: ab.factors,
        }
    }
}

impl FiniteGroup for GroupTable {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> u32 {
        self.identity
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        let m = self.elements[x as usize].mul(&self.elements[y as usize], &self.ring);
        self.index_of(&m).expect("closed under multiplication")
    }

    fn inv(&self, x: u32) -> u32 {
        self.inverse[x as usize]
    }

    fn generators(&self) -> &[u32] {
        &self.generators
    }

    fn class_of(&self, x: u32) -> Vec<u32> {
        let cc = self.classes();
        cc.classes[cc.class_of[x as usize] as usize].clone()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroupReport {
    pub ring_spec: String,
    pub group_order: usize,
    pub class_sizes: Vec<usize>,
    pub abelian_invariants: Vec<u64>,
    pub perfect: bool,
}

/// A subgroup as a membership table plus the generators that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    member: Vec<bool>,
    elements: Vec<u32>,
    pub generated_by: Vec<u32>,
}

impl Subgroup {
    pub fn trivial<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        SubgroupBuilder::new(g).finish()
    }

    pub fn whole<G: FiniteGroup + ?Sized>(g: &G) -> Self {
        Subgroup {
            member: vec![true; g.order()],
            elements: (0..g.order() as u32).collect(),
            generated_by: g.generators().to_vec(),
        }
    }

    /// Wrap a set already known to be a subgroup.
    pub(crate) fn from_members(order: usize, mut elements: Vec<u32>, generated_by: Vec<u32>) -> Self {
        elements.sort_unstable();
        let mut member = vec![false; order];
        for &x in &elements {
            member[x as usize] = true;
        }
        Subgroup {
            member,
            elements,
            generated_by,
        }
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.member[x as usize]
    }

    /// Sorted members.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.member.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.elements.iter().filter(|&&x| other.contains(x)).count()
    }

    /// Normal iff generator conjugates by group generators stay inside.
    pub fn is_normal_in<G: FiniteGroup + ?Sized>(&self, g: &G) -> bool {
        self.generated_by
            .iter()
            .all(|&h| g.generators().iter().all(|&s| self.contains(g.conj(h, s))))
    }

    pub fn is_abelian<G: FiniteGroup + ?Sized>(&self, g: &G) -> bool {
        let gens = &self.generated_by;
        gens.iter().all(|&x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
    }
}

/// Incremental subgroup closure. Generators already in the current subgroup are skipped.
pub struct SubgroupBuilder<'a, G: FiniteGroup + ?Sized> {
    g: &'a G,
    member: Vec<bool>,
    elements: Vec<u32>,
    gens: Vec<u32>,
}

impl<'a, G: FiniteGroup + ?Sized> SubgroupBuilder<'a, G> {
    pub fn new(g: &'a G) -> Self {
        let mut member = vec![false; g.order()];
        member[g.identity() as usize] = true;
        SubgroupBuilder {
            g,
            member,
            elements: vec![g.identity()],
            gens: Vec::new(),
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        self.member[x as usize]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Returns whether `x` enlarged the subgroup.
    pub fn add(&mut self, x: u32) -> bool {
        if self.member[x as usize] {
            return false;
        }
        self.gens.push(x);
        let old = self.elements.len();
        for i in 0..old {
            let y = self.g.mul(self.elements[i], x);
            self.insert(y);
        }
        let mut head = old;
        while head < self.elements.len() {
            let e = self.elements[head];
            head += 1;
            for k in 0..self.gens.len() {
                let y = self.g.mul(e, self.gens[k]);
                self.insert(y);
            }
        }
        true
    }

    #[inline]
    fn insert(&mut self, y: u32) {
        if !self.member[y as usize] {
            self.member[y as usize] = true;
            self.elements.push(y);
        }
    }

    pub fn finish(mut self) -> Subgroup {
        self.elements.sort_unstable();
        Subgroup {
            member: self.member,
            elements: self.elements,
            generated_by: self.gens,
        }
    }
}

pub fn subgroup_closure<G: FiniteGroup + ?Sized>(g: &G, seeds: &[u32]) -> Subgroup {
    let mut b = SubgroupBuilder::new(g);
    for &s in seeds {
        b.add(s);
    }
    b.finish()
}

/// `⟨⟨T⟩⟩`: closure of the union of the conjugacy classes of `T`.
pub fn normal_closure<G: FiniteGroup + ?Sized>(g: &G, t: &[u32]) -> Subgroup {
    let mut b = SubgroupBuilder::new(g);
    for &x in t {
        for y in g.class_of(x) {
            b.add(y);
        }
    }
    b.finish()
}

/// Normal closure of the commutators of the group generators.
pub fn derived_subgroup<G: FiniteGroup + ?Sized>(g: &G) -> Subgroup {
    let gens = g.generators();
    let comms: Vec<u32> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| gens[i + 1..].iter().map(move |&y| (x, y)))
        .map(|(x, y)| g.comm(x, y))
        .collect();
    normal_closure(g, &comms)
}

pub fn is_perfect<G: FiniteGroup + ?Sized>(g: &G) -> bool {
    derived_subgroup(g).is_whole()
}

pub fn abelianization<G: FiniteGroup + ?Sized>(g: &G) -> AbelianInvariants {
    let derived = derived_subgroup(g);
    let q = QuotientGroup::new(g, &derived).expect("derived subgroup is normal");
    AbelianInvariants::from_abelian_quotient(&q)
}

/// `G/N` with cosets labelled `0..[G:N]` in order of their smallest element.
pub struct QuotientGroup<'a, G: FiniteGroup + ?Sized> {
    parent: &'a G,
    coset_of: Vec<u32>,
    reps: Vec<u32>,
    generators: Vec<u32>,
    identity: u32,
}

impl<'a, G: FiniteGroup + ?Sized> QuotientGroup<'a, G> {
    pub fn new(parent: &'a G, n: &Subgroup) -> Result<Self> {
        if !n.is_normal_in(parent) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![u32::MAX; parent.order()];
        let mut reps = Vec::new();
        for x in 0..parent.order() as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let label = reps.len() as u32;
            for &h in n.elements() {
                coset_of[parent.mul(x, h) as usize] = label;
            }
            reps.push(x);
        }
        let identity = coset_of[parent.identity() as usize];
        let mut generators: Vec<u32> = Vec::new();
        for &s in parent.generators() {
            let c = coset_of[s as usize];
            if c != identity && !generators.contains(&c) {
                generators.push(c);
            }
        }
        Ok(QuotientGroup {
            parent,
            coset_of,
            reps,
            generators,
            identity,
        })
    }

    /// The projection `G → G/N` as a table.
    pub fn projection(&self) -> &[u32] {
        &self.coset_of
    }

    pub fn representative(&self, coset: u32) -> u32 {
        self.reps[coset as usize]
    }
}

impl<G: FiniteGroup + ?Sized> FiniteGroup for QuotientGroup<'_, G> {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn identity(&self) -> u32 {
        self.identity
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        let p = self.parent.mul(self.reps[x as usize], self.reps[y as usize]);
        self.coset_of[p as usize]
    }

    fn inv(&self, x: u32) -> u32 {
        self.coset_of[self.parent.inv(self.reps[x as usize]) as usize]
    }

    fn generators(&self) -> &[u32] {
        &self.generators
    }
}
