use super::{Elem, FiniteRing};
use serde::Serialize;

/// An ideal of a product of chain rings: `m_1^{j_1} × … × m_r^{j_r}`.
///
/// Exponent `0` is the whole factor, the factor's length is zero there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ideal {
    exponents: Vec<u32>,
}

impl Ideal {
    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Ideal { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_whole(&self) -> bool {
        self.exponents.iter().all(|&j| j == 0)
    }

    pub fn is_zero(&self, ring: &FiniteRing) -> bool {
        self.exponents.iter().zip(ring.factors()).all(|(&j, f)| j >= f.length())
    }

    pub fn contains(&self, ring: &FiniteRing, x: Elem) -> bool {
        self.exponents
            .iter()
            .enumerate()
            .all(|(i, &j)| ring.valuation(x, i) >= j)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal::from_exponents(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn product(&self, other: &Ideal, ring: &FiniteRing) -> Ideal {
        Ideal::from_exponents(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .zip(ring.factors())
                .map(|((&a, &b), f)| (a + b).min(f.length()))
                .collect(),
        )
    }

    /// Containment of ideals (`self ⊆ other`).
    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(&a, &b)| a >= b)
    }

    pub fn members(&self, ring: &FiniteRing) -> Vec<Elem> {
        ring.elements().filter(|&x| self.contains(ring, x)).collect()
    }

    /// Generator of the ideal: `uniformizer^j` in each factor.
    pub fn generator(&self, ring: &FiniteRing) -> Elem {
        let comps: Vec<u32> = ring
            .factors()
            .iter()
            .zip(&self.exponents)
            .map(|(f, &j)| f.uniformizer_power(j))
            .collect();
        ring.from_components(&comps)
    }

    /// `(d)` with `d | N` for `Z/N`, otherwise `(generator)` in factor coordinates.
    pub fn describe(&self, ring: &FiniteRing) -> String {
        if ring.is_integer_residue_ring() {
            let d: u64 = ring
                .factors()
                .iter()
                .zip(&self.exponents)
                .map(|(f, &j)| (f.characteristic_prime() as u64).pow(j))
                .product();
            let d = if self.is_zero(ring) { 0 } else { d };
            return format!("({d})");
        }
        format!("({})", ring.format_element(self.generator(ring)))
    }
}

/// An additive subgroup of a ring, stored as an explicit membership table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveSubgroup {
    member: Vec<bool>,
    members: Vec<Elem>,
}

impl AdditiveSubgroup {
    pub(crate) fn from_membership(member: Vec<bool>) -> Self {
        let members = member
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| Elem(i as u16))
            .collect();
        AdditiveSubgroup { member, members }
    }

    pub fn whole(ring: &FiniteRing) -> Self {
        Self::from_membership(vec![true; ring.order()])
    }

    pub fn trivial(ring: &FiniteRing) -> Self {
        let mut member = vec![false; ring.order()];
        member[ring.zero().index()] = true;
        Self::from_membership(member)
    }

    /// Accepts an arbitrary element set; returns `None` unless it is a subgroup.
    pub fn from_elements(ring: &FiniteRing, elems: &[Elem]) -> Option<Self> {
        let mut member = vec![false; ring.order()];
        for &x in elems {
            member[x.index()] = true;
        }
        let closed = member[ring.zero().index()]
            && elems
                .iter()
                .all(|&x| member[ring.neg(x).index()] && elems.iter().all(|&y| member[ring.add(x, y).index()]));
        closed.then(|| Self::from_membership(member))
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.member[x.index()]
    }

    /// Sorted member list.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
