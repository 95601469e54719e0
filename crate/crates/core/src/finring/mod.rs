//! Small finite commutative rings presented as products of chain local rings.
//!
//! Every ring is CRT-normalized at construction: it is a list of [`ChainLocalRing`] factors and
//! an element is addressed by a dense index in `0..order`, mixed-radix over the factors with the
//! first factor least significant. All arithmetic goes through precomputed tables, so a
//! [`FiniteRing`] is cheap to clone and immutable after construction.

mod chain;
mod ideal;
mod parse;

pub use chain::{ChainKind, ChainLocalRing, FactorDescriptor, Poly};
pub use ideal::{AdditiveSubgroup, Ideal};
pub(crate) use parse::split_top_level;
pub use parse::{parse_element, parse_ring_spec, parse_ring_spec_with_cap, DEFAULT_RING_ORDER_CAP};

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// Element of a [`FiniteRing`], identified by its dense index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u16);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const NO_INVERSE: u16 = u16::MAX;

/// Tables are `order²`; beyond this they stop being desk-sized.
const HARD_ORDER_LIMIT: usize = 4096;

#[derive(Debug)]
struct RingData {
    spec: String,
    factors: Vec<ChainLocalRing>,
    order: usize,
    /// `radix[i]` = product of orders of factors `0..i`.
    radix: Vec<usize>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    /// `order × factors` valuations, row-major by element.
    valuations: Vec<u8>,
    zero: Elem,
    one: Elem,
}

/// A finite commutative ring with `1 ≠ 0`.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    data: Arc<RingData>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.factors == other.data.factors
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Build the ring `factors[0] × factors[1] × …`. `spec` is the user-facing name.
    pub fn from_factors(spec: impl Into<String>, factors: Vec<ChainLocalRing>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::ZeroRing);
        }
        let order: usize = factors.iter().map(|f| f.order()).product();
        if order > HARD_ORDER_LIMIT {
            return Err(Error::OrderCap {
                order,
                cap: HARD_ORDER_LIMIT,
            });
        }
        let mut radix = Vec::with_capacity(factors.len());
        let mut acc = 1;
        for f in &factors {
            radix.push(acc);
            acc *= f.order();
        }
        let split = |x: usize| -> Vec<u32> {
            factors
                .iter()
                .zip(&radix)
                .map(|(f, &r)| ((x / r) % f.order()) as u32)
                .collect()
        };
        let join =
            |comps: &[u32]| -> u16 { comps.iter().zip(&radix).map(|(&c, &r)| c as usize * r).sum::<usize>() as u16 };
        let comps: Vec<Vec<u32>> = (0..order).map(split).collect();

        // Per-factor tables first, then combine.
        let factor_add: Vec<Vec<u32>> = factors
            .iter()
            .map(|f| {
                let n = f.order() as u32;
                (0..n * n).map(|k| f.add(k / n, k % n)).collect()
            })
            .collect();
        let factor_mul: Vec<Vec<u32>> = factors
            .iter()
            .map(|f| {
                let n = f.order() as u32;
                (0..n * n).map(|k| f.mul(k / n, k % n)).collect()
            })
            .collect();

        let mut add = vec![0u16; order * order];
        let mut mul = vec![0u16; order * order];
        let mut buf_add = vec![0u32; factors.len()];
        let mut buf_mul = vec![0u32; factors.len()];
        for x in 0..order {
            for y in 0..order {
                for (i, f) in factors.iter().enumerate() {
                    let n = f.order();
                    let k = comps[x][i] as usize * n + comps[y][i] as usize;
                    buf_add[i] = factor_add[i][k];
                    buf_mul[i] = factor_mul[i][k];
                }
                add[x * order + y] = join(&buf_add);
                mul[x * order + y] = join(&buf_mul);
            }
        }
        let neg: Vec<u16> = (0..order)
            .map(|x| {
                let c: Vec<u32> = factors.iter().zip(&comps[x]).map(|(f, &c)| f.neg(c)).collect();
                join(&c)
            })
            .collect();
        let one = Elem(join(&factors.iter().map(|f| f.from_integer(1)).collect::<Vec<_>>()));
        let mut inv = vec![NO_INVERSE; order];
        for x in 0..order {
            if inv[x] != NO_INVERSE {
                continue;
            }
            if let Some(y) = (0..order).find(|&y| mul[x * order + y] == one.0) {
                inv[x] = y as u16;
                inv[y] = x as u16;
            }
        }
        let mut valuations = Vec::with_capacity(order * factors.len());
        for c in &comps {
            for (f, &ci) in factors.iter().zip(c) {
                valuations.push(f.valuation(ci) as u8);
            }
        }
        Ok(FiniteRing {
            data: Arc::new(RingData {
                spec: spec.into(),
                factors,
                order,
                radix,
                add,
                mul,
                neg,
                inv,
                valuations,
                zero: Elem(0),
                one,
            }),
        })
    }

    pub fn spec(&self) -> &str {
        &self.data.spec
    }

    /// A spec string that parses back to a ring with identical element indexing.
    pub fn canonical_spec(&self) -> String {
        self.data
            .factors
            .iter()
            .map(|f| f.canonical_spec())
            .collect::<Vec<_>>()
            .join(" x ")
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn factors(&self) -> &[ChainLocalRing] {
        &self.data.factors
    }

    pub fn zero(&self) -> Elem {
        self.data.zero
    }

    pub fn one(&self) -> Elem {
        self.data.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.data.order).map(|i| Elem(i as u16))
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.data.add[x.index() * self.data.order + y.index()])
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.data.mul[x.index() * self.data.order + y.index()])
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        Elem(self.data.neg[x.index()])
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        match self.data.inv[x.index()] {
            NO_INVERSE => Err(Error::NotUnit(self.format_element(x))),
            y => Ok(Elem(y)),
        }
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.data.inv[x.index()] != NO_INVERSE
    }

    pub fn pow(&self, x: Elem, e: u32) -> Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(acc, x))
    }

    /// Image of the integer `n`.
    pub fn from_integer(&self, n: i64) -> Elem {
        let comps: Vec<u32> = self.data.factors.iter().map(|f| f.from_integer(n)).collect();
        self.from_components(&comps)
    }

    pub fn components(&self, x: Elem) -> Vec<u32> {
        self.data
            .factors
            .iter()
            .zip(&self.data.radix)
            .map(|(f, &r)| ((x.index() / r) % f.order()) as u32)
            .collect()
    }

    pub fn component(&self, x: Elem, factor: usize) -> u32 {
        ((x.index() / self.data.radix[factor]) % self.data.factors[factor].order()) as u32
    }

    pub fn from_components(&self, comps: &[u32]) -> Elem {
        debug_assert_eq!(comps.len(), self.data.factors.len());
        Elem(
            comps
                .iter()
                .zip(&self.data.radix)
                .map(|(&c, &r)| c as usize * r)
                .sum::<usize>() as u16,
        )
    }

    /// Valuation of `x` in local factor `factor` (the factor's length for a zero component).
    #[inline]
    pub fn valuation(&self, x: Elem, factor: usize) -> u32 {
        self.data.valuations[x.index() * self.data.factors.len() + factor] as u32
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    /// One maximal ideal per local factor.
    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        (0..self.data.factors.len())
            .map(|i| {
                let mut exps = vec![0; self.data.factors.len()];
                exps[i] = 1;
                Ideal::from_exponents(exps)
            })
            .collect()
    }

    pub fn whole_ideal(&self) -> Ideal {
        Ideal::from_exponents(vec![0; self.data.factors.len()])
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal::from_exponents(self.data.factors.iter().map(|f| f.length()).collect())
    }

    /// Ideal generated by `gens`: per factor, the minimum valuation among the generators.
    pub fn ideal_from_generators(&self, gens: &[Elem]) -> Ideal {
        let exps = self
            .data
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| gens.iter().map(|&g| self.valuation(g, i)).min().unwrap_or(f.length()))
            .collect();
        Ideal::from_exponents(exps)
    }

    pub fn principal_ideal(&self, x: Elem) -> Ideal {
        self.ideal_from_generators(&[x])
    }

    /// Quotient `R/I` together with the reduction map on element indices.
    pub fn quotient_ring(&self, ideal: &Ideal) -> Result<(FiniteRing, Vec<Elem>)> {
        if ideal.is_whole() {
            return Err(Error::IdealIsWholeRing);
        }
        let kept: Vec<(usize, u32)> = ideal
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &j)| j > 0)
            .map(|(i, &j)| (i, j))
            .collect();
        let factors: Vec<ChainLocalRing> = kept.iter().map(|&(i, j)| self.data.factors[i].truncated(j)).collect();
        let spec = factors
            .iter()
            .map(|f| f.canonical_spec())
            .collect::<Vec<_>>()
            .join(" x ");
        let quotient = FiniteRing::from_factors(spec, factors)?;
        let map = self
            .elements()
            .map(|x| {
                let comps: Vec<u32> = kept
                    .iter()
                    .map(|&(i, j)| self.data.factors[i].reduce(self.component(x, i), j))
                    .collect();
                quotient.from_components(&comps)
            })
            .collect();
        Ok((quotient, map))
    }

    /// The booleanizing ideal, generated by all `x^2 - x`.
    pub fn vn2(&self) -> Ideal {
        let gens: Vec<Elem> = self.elements().map(|x| self.sub(self.mul(x, x), x)).collect();
        self.ideal_from_generators(&gens)
    }

    /// Smallest additive subgroup containing `seed`.
    pub fn additive_closure(&self, seed: &[Elem]) -> AdditiveSubgroup {
        let mut member = vec![false; self.order()];
        member[self.zero().index()] = true;
        let mut members = vec![self.zero()];
        let gens: Vec<Elem> = seed.iter().copied().filter(|&s| s != self.zero()).collect();
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in &gens {
                let y = self.add(x, g);
                if !member[y.index()] {
                    member[y.index()] = true;
                    members.push(y);
                }
            }
        }
        AdditiveSubgroup::from_membership(member)
    }

    /// Whether `(a, b) = R` implies some `a + b x` is a unit (checked exhaustively).
    pub fn has_stable_range_one(&self) -> bool {
        let n = self.data.factors.len();
        self.elements().all(|a| {
            self.elements().all(|b| {
                let comaximal = (0..n).all(|i| self.valuation(a, i) == 0 || self.valuation(b, i) == 0);
                !comaximal || self.elements().any(|x| self.is_unit(self.add(a, self.mul(b, x))))
            })
        })
    }

    /// Both conditions of a ring with many units, evaluated exhaustively.
    pub fn has_many_units(&self) -> bool {
        let (stable, enough) = self.many_units_conditions();
        stable && enough
    }

    /// `(condition i, condition ii)`: stable range one for every `R/cR` with `c` a non-zero
    /// non-unit; and for every `x ≠ 0` a unit `u` with `u^4 ≠ 1` and `u^2 ≡ 1 mod xR`.
    pub fn many_units_conditions(&self) -> (bool, bool) {
        let stable = self
            .elements()
            .filter(|&c| c != self.zero() && !self.is_unit(c))
            .all(|c| match self.quotient_ring(&self.principal_ideal(c)) {
                Ok((q, _)) => q.has_stable_range_one(),
                Err(_) => true,
            });
        let units = self.units();
        let enough = self.elements().filter(|&x| x != self.zero()).all(|x| {
            let ideal = self.principal_ideal(x);
            units.iter().any(|&u| {
                let u2 = self.mul(u, u);
                self.mul(u2, u2) != self.one() && ideal.contains(self, self.sub(u2, self.one()))
            })
        });
        (stable, enough)
    }

    /// Canonical text of an element: the factor text for one factor, a tuple otherwise.
    pub fn format_element(&self, x: Elem) -> String {
        let comps = self.components(x);
        if comps.len() == 1 {
            return self.data.factors[0].format_element(comps[0]);
        }
        let parts: Vec<String> = self
            .data
            .factors
            .iter()
            .zip(&comps)
            .map(|(f, &c)| f.format_element(c))
            .collect();
        format!("({})", parts.join(","))
    }

    /// True when the ring is `Z/N` in disguise: all factors are integer residues of distinct primes.
    pub(crate) fn is_integer_residue_ring(&self) -> bool {
        let mut primes: Vec<u32> = Vec::new();
        for f in &self.data.factors {
            if f.kind() != &ChainKind::IntegerMod || primes.contains(&f.characteristic_prime()) {
                return false;
            }
            primes.push(f.characteristic_prime());
        }
        true
    }

    pub fn info(&self) -> RingInfo {
        RingInfo {
            spec: self.spec().to_string(),
            order: self.order(),
            factors: self.data.factors.iter().map(|f| f.descriptor()).collect(),
            units_count: self.units().len(),
        }
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.spec())
    }
}

/// JSON document describing a ring.
#[derive(Clone, Debug, Serialize)]
pub struct RingInfo {
    pub spec: String,
    pub order: usize,
    pub factors: Vec<FactorDescriptor>,
    pub units_count: usize,
}
