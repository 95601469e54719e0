use super::{subgroup_closure, FiniteGroup, GroupTable, Subgroup};
use crate::error::{Error, Result};
use crate::finring::{Elem, Ideal};
use serde::Serialize;

/// A map between finite groups stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub domain: String,
    pub codomain: String,
    pub image: Vec<u32>,
}

impl GroupHom {
    pub fn apply(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    /// Exhaustive check of `f(xy) = f(x)f(y)`.
    pub fn is_multiplicative<G, H>(&self, dom: &G, cod: &H) -> bool
    where
        G: FiniteGroup + ?Sized,
        H: FiniteGroup + ?Sized,
    {
        use rayon::prelude::*;
        let n = dom.order() as u32;
        (0..n).into_par_iter().all(|x| {
            let fx = self.apply(x);
            (0..n).all(|y| self.apply(dom.mul(x, y)) == cod.mul(fx, self.apply(y)))
        })
    }

    pub fn kernel<G, H>(&self, dom: &G, cod: &H) -> Subgroup
    where
        G: FiniteGroup + ?Sized,
        H: FiniteGroup + ?Sized,
    {
        let e = cod.identity();
        let members: Vec<u32> = (0..dom.order() as u32).filter(|&x| self.apply(x) == e).collect();
        let gens = members.clone();
        let closure = subgroup_closure(dom, &gens);
        Subgroup::from_members(dom.order(), members, closure.generated_by)
    }

    pub fn image_size(&self) -> usize {
        let mut img = self.image.clone();
        img.sort_unstable();
        img.dedup();
        img.len()
    }
}

/// `π_I : SL2(R) → SL2(R/I)` together with its kernel `SL2(R, I)`.
#[derive(Debug)]
pub struct Reduction {
    pub target: GroupTable,
    pub hom: GroupHom,
    pub kernel: Subgroup,
}

pub fn reduction_hom(g: &GroupTable, ideal: &Ideal) -> Result<Reduction> {
    if ideal.is_whole() {
        return Err(Error::IdealIsWholeRing);
    }
    let (quotient, map) = g.ring().quotient_ring(ideal)?;
    let target = GroupTable::enumerate(&quotient)?;
    let image = g
        .elements()
        .iter()
        .map(|m| target.index_of(&m.map_entries(&map)).expect("reduction preserves det"))
        .collect();
    let hom = GroupHom {
        domain: format!("SL2({})", g.ring().spec()),
        codomain: format!("SL2({})", quotient.spec()),
        image,
    };
    let kernel = hom.kernel(g, &target);
    Ok(Reduction { target, hom, kernel })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SplitExtensionReport {
    pub kernel_order: usize,
    pub kernel_elementary_abelian: bool,
    pub complement_order: usize,
    pub intersection_trivial: bool,
    pub jointly_generate: bool,
    /// Conjugation by the complement acts faithfully on the kernel.
    pub action_faithful: bool,
    /// Some orbit of the complement on the kernel generates the kernel and has as many
    /// elements as the kernel's rank, i.e. the complement permutes a basis.
    pub permutes_a_basis: bool,
}

impl SplitExtensionReport {
    pub fn holds(&self) -> bool {
        self.intersection_trivial && self.jointly_generate
    }
}

/// Compares `ker π_I` with the matrices whose entries lie in `subring`.
pub fn split_extension_check(g: &GroupTable, ideal: &Ideal, subring: &[Elem]) -> Result<SplitExtensionReport> {
    let red = reduction_hom(g, ideal)?;
    let k = &red.kernel;
    let complement_members: Vec<u32> = (0..g.order() as u32)
        .filter(|&i| {
            let m = g.element(i);
            [m.a, m.b, m.c, m.d].iter().all(|x| subring.contains(x))
        })
        .collect();
    let complement = subgroup_closure(g, &complement_members);
    let exponent_two = k.elements().iter().all(|&x| g.mul(x, x) == g.identity());
    let both: Vec<u32> = k.generated_by.iter().chain(&complement.generated_by).copied().collect();
    let action_faithful = complement
        .elements()
        .iter()
        .all(|&c| c == g.identity() || k.elements().iter().any(|&x| g.conj(x, c) != x));
    let rank = k.order().trailing_zeros() as usize;
    let permutes_a_basis = exponent_two
        && k.order().is_power_of_two()
        && k.elements().iter().any(|&x| {
            let orbit: Vec<u32> = {
                let mut o: Vec<u32> = complement.elements().iter().map(|&c| g.conj(x, c)).collect();
                o.sort_unstable();
                o.dedup();
                o
            };
            orbit.len() == rank && subgroup_closure(g, &orbit).order() == k.order()
        });
    Ok(SplitExtensionReport {
        kernel_order: k.order(),
        kernel_elementary_abelian: k.is_abelian(g) && exponent_two,
        complement_order: complement.order(),
        intersection_trivial: k.intersection_order(&complement) == 1,
        jointly_generate: subgroup_closure(g, &both).is_whole(),
        action_faithful,
        permutes_a_basis,
    })
}
