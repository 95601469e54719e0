//! Finite chain local rings: `Z/p^k` and `F_p[T]/(g^e)` for a monic irreducible `g`.
//!
//! Elements of a chain ring are addressed by a component index. For `Z/p^k` the index is
//! the residue itself; for the polynomial kind it is `sum c_i p^i` over the coefficients of
//! the reduced representative (coefficient-lexicographic order).

use serde::Serialize;
use std::fmt;

/// Dense polynomial over `F_p`, coefficients from low to high degree, no trailing zeros.
pub type Poly = Vec<u32>;

pub(crate) fn poly_trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn poly_degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub(crate) fn poly_mul(f: &[u32], g: &[u32], p: u32) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
        }
    }
    poly_trim(out.into_iter().map(|c| c as u32).collect())
}

pub(crate) fn poly_pow(f: &[u32], e: u32, p: u32) -> Poly {
    let mut acc = vec![1];
    for _ in 0..e {
        acc = poly_mul(&acc, f, p);
    }
    acc
}

fn inv_mod_prime(a: u32, p: u32) -> u32 {
    // p is prime and tiny; Fermat is fine.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

/// Quotient and remainder of `f` by a non-zero divisor `g` over `F_p`.
pub(crate) fn poly_divrem(f: &[u32], g: &[u32], p: u32) -> (Poly, Poly) {
    let dg = poly_degree(g).expect("division by zero polynomial");
    let lead_inv = inv_mod_prime(g[dg], p) as u64;
    let mut rem: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let mut quot = vec![0u64; f.len().saturating_sub(dg).max(1)];
    let pp = p as u64;
    let mut top = rem.len();
    while top > dg {
        top -= 1;
        let c = rem[top] % pp;
        if c == 0 {
            continue;
        }
        let factor = c * lead_inv % pp;
        let shift = top - dg;
        quot[shift] = factor;
        for (i, &gc) in g[..=dg].iter().enumerate() {
            let sub = factor * gc as u64 % pp;
            rem[shift + i] = (rem[shift + i] + pp - sub) % pp;
        }
    }
    rem.truncate(dg);
    (
        poly_trim(quot.into_iter().map(|c| c as u32).collect()),
        poly_trim(rem.into_iter().map(|c| (c % pp) as u32).collect()),
    )
}

/// Monic polynomial of the given degree whose lower coefficients are the base-`p` digits of `idx`.
pub(crate) fn monic_from_index(degree: usize, idx: usize, p: u32) -> Poly {
    let mut f = Vec::with_capacity(degree + 1);
    let mut rest = idx;
    for _ in 0..degree {
        f.push((rest % p as usize) as u32);
        rest /= p as usize;
    }
    f.push(1);
    f
}

pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(deg) = poly_degree(f) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for idx in 0..(p as usize).pow(d as u32) {
            let h = monic_from_index(d, idx, p);
            if poly_divrem(f, &h, p).1.is_empty() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `m` over `F_p` with the smallest coefficient index.
pub(crate) fn smallest_irreducible(m: usize, p: u32) -> Poly {
    (0..(p as usize).pow(m as u32))
        .map(|idx| monic_from_index(m, idx, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Factor a monic polynomial into powers of distinct monic irreducibles by trial division,
/// in increasing degree and coefficient index.
pub(crate) fn factor_monic(f: &[u32], p: u32) -> Vec<(Poly, u32)> {
    let mut rest: Poly = poly_trim(f.to_vec());
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let mut d = 1;
    while let Some(deg) = poly_degree(&rest) {
        if deg == 0 {
            break;
        }
        if 2 * d > deg {
            out.push((rest.clone(), 1));
            break;
        }
        for idx in 0..(p as usize).pow(d as u32) {
            let h = monic_from_index(d, idx, p);
            let mut e = 0;
            loop {
                let (q, r) = poly_divrem(&rest, &h, p);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((h, e));
            }
        }
        d += 1;
    }
    out
}

pub(crate) fn format_poly(f: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        let term = match i {
            0 => coeff,
            1 => format!("{coeff}T"),
            _ => format!("{coeff}T^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Which presentation a chain local ring uses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChainKind {
    /// `Z/p^k`.
    IntegerMod,
    /// `F_p[T]/(g^e)` with `g` monic irreducible over `F_p`.
    Polynomial { g: Poly },
}

/// A finite local ring whose ideals form the chain `R ⊋ m ⊋ m^2 ⊋ … ⊋ m^length = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainLocalRing {
    p: u32,
    kind: ChainKind,
    length: u32,
    order: usize,
    residue_order: usize,
    /// Modulus `g^e` for the polynomial kind.
    modulus: Poly,
}

impl ChainLocalRing {
    pub fn integer_mod(p: u32, k: u32) -> Self {
        assert!(k >= 1);
        ChainLocalRing {
            p,
            kind: ChainKind::IntegerMod,
            length: k,
            order: (p as usize).pow(k),
            residue_order: p as usize,
            modulus: Vec::new(),
        }
    }

    pub fn polynomial(p: u32, g: Poly, e: u32) -> Self {
        assert!(e >= 1);
        let deg = poly_degree(&g).expect("non-zero modulus");
        let modulus = poly_pow(&g, e, p);
        ChainLocalRing {
            p,
            length: e,
            order: (p as usize).pow(deg as u32 * e),
            residue_order: (p as usize).pow(deg as u32),
            kind: ChainKind::Polynomial { g },
            modulus,
        }
    }

    pub fn characteristic_prime(&self) -> u32 {
        self.p
    }

    pub fn kind(&self) -> &ChainKind {
        &self.kind
    }

    /// Nilpotency length of the maximal ideal (`k` or `e`).
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn residue_order(&self) -> usize {
        self.residue_order
    }

    /// Same ring with the chain cut down to `m^j` (the quotient by `m^j`), `1 <= j <= length`.
    pub fn truncated(&self, j: u32) -> Self {
        match &self.kind {
            ChainKind::IntegerMod => Self::integer_mod(self.p, j),
            ChainKind::Polynomial { g } => Self::polynomial(self.p, g.clone(), j),
        }
    }

    fn coeff_len(&self) -> usize {
        self.modulus.len() - 1
    }

    pub(crate) fn poly_of(&self, idx: u32) -> Poly {
        let mut f = Vec::with_capacity(self.coeff_len());
        let mut rest = idx as usize;
        for _ in 0..self.coeff_len() {
            f.push((rest % self.p as usize) as u32);
            rest /= self.p as usize;
        }
        poly_trim(f)
    }

    pub(crate) fn index_of_poly(&self, f: &[u32]) -> u32 {
        let r = poly_divrem(f, &self.modulus, self.p).1;
        let mut idx = 0usize;
        for &c in r.iter().rev() {
            idx = idx * self.p as usize + c as usize;
        }
        idx as u32
    }

    /// Image of the integer `n` (i.e. `n·1`).
    pub fn from_integer(&self, n: i64) -> u32 {
        match &self.kind {
            ChainKind::IntegerMod => n.rem_euclid(self.order as i64) as u32,
            ChainKind::Polynomial { .. } => n.rem_euclid(self.p as i64) as u32,
        }
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        match &self.kind {
            ChainKind::IntegerMod => ((x as usize + y as usize) % self.order) as u32,
            ChainKind::Polynomial { .. } => {
                let (mut x, mut y) = (x as usize, y as usize);
                let p = self.p as usize;
                let mut out = 0usize;
                let mut place = 1usize;
                for _ in 0..self.coeff_len() {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                out as u32
            }
        }
    }

    pub fn neg(&self, x: u32) -> u32 {
        match &self.kind {
            ChainKind::IntegerMod => ((self.order - x as usize) % self.order) as u32,
            ChainKind::Polynomial { .. } => {
                let f: Poly = self.poly_of(x).into_iter().map(|c| (self.p - c) % self.p).collect();
                self.index_of_poly(&f)
            }
        }
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        match &self.kind {
            ChainKind::IntegerMod => ((x as usize * y as usize) % self.order) as u32,
            ChainKind::Polynomial { .. } => {
                let f = poly_mul(&self.poly_of(x), &self.poly_of(y), self.p);
                self.index_of_poly(&f)
            }
        }
    }

    /// Largest `j <= length` with `x ∈ m^j`; zero has valuation `length`.
    pub fn valuation(&self, x: u32) -> u32 {
        match &self.kind {
            ChainKind::IntegerMod => {
                if x == 0 {
                    return self.length;
                }
                let mut v = 0;
                let mut n = x;
                while n.is_multiple_of(self.p) {
                    n /= self.p;
                    v += 1;
                }
                v
            }
            ChainKind::Polynomial { g } => {
                let mut f = self.poly_of(x);
                if f.is_empty() {
                    return self.length;
                }
                let mut v = 0;
                loop {
                    let (q, r) = poly_divrem(&f, g, self.p);
                    if !r.is_empty() || v == self.length {
                        break;
                    }
                    f = q;
                    v += 1;
                }
                v
            }
        }
    }

    /// Reduction of the component `x` into `self.truncated(j)`.
    pub fn reduce(&self, x: u32, j: u32) -> u32 {
        match &self.kind {
            ChainKind::IntegerMod => x % (self.p.pow(j)),
            ChainKind::Polynomial { g } => {
                let m = poly_pow(g, j, self.p);
                let r = poly_divrem(&self.poly_of(x), &m, self.p).1;
                let mut idx = 0usize;
                for &c in r.iter().rev() {
                    idx = idx * self.p as usize + c as usize;
                }
                idx as u32
            }
        }
    }

    /// A fixed generator of the maximal ideal: `p` or `g`.
    pub fn uniformizer(&self) -> u32 {
        match &self.kind {
            ChainKind::IntegerMod => self.from_integer(self.p as i64),
            ChainKind::Polynomial { g } => self.index_of_poly(g),
        }
    }

    /// The `j`-th power of the uniformizer (zero once `j >= length`).
    pub fn uniformizer_power(&self, j: u32) -> u32 {
        let u = self.uniformizer();
        let mut acc = self.from_integer(1);
        for _ in 0..j {
            acc = self.mul(acc, u);
        }
        acc
    }

    pub fn format_element(&self, x: u32) -> String {
        match &self.kind {
            ChainKind::IntegerMod => x.to_string(),
            ChainKind::Polynomial { .. } => format_poly(&self.poly_of(x)),
        }
    }

    /// Spec text that parses back to this ring.
    pub fn canonical_spec(&self) -> String {
        match &self.kind {
            ChainKind::IntegerMod if self.length == 1 => format!("F{}", self.p),
            ChainKind::IntegerMod => format!("Z/{}", self.order),
            ChainKind::Polynomial { .. } => {
                format!("F{}[T]/({})", self.p, format_poly(&self.modulus))
            }
        }
    }

    pub(crate) fn descriptor(&self) -> FactorDescriptor {
        match &self.kind {
            ChainKind::IntegerMod => FactorDescriptor::IntegerMod {
                p: self.p,
                k: self.length,
            },
            ChainKind::Polynomial { g } => FactorDescriptor::Polynomial {
                p: self.p,
                g: format_poly(g),
                e: self.length,
            },
        }
    }
}

impl fmt::Display for ChainLocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_spec())
    }
}

/// JSON shape of one local factor: `{p,k}` or `{p,g,e}`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum FactorDescriptor {
    IntegerMod { p: u32, k: u32 },
    Polynomial { p: u32, g: String, e: u32 },
}
