//! Invariant factors of finite abelian groups.
//!
//! The abelian quotient is explored from its identity along the images of the generators.
//! Every coset gets an integer coordinate vector; every edge landing on an already-labelled
//! coset yields a relation. The relation lattice is kept in echelon form modulo the group
//! order and then brought to Smith normal form, which gives both the invariant factors and
//! the change of coordinates used for the quotient map.

use super::{FiniteGroup, QuotientGroup};

/// `Z/d1 × Z/d2 × …` with elements encoded mixed-radix, first factor least significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    gens: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Self {
        let mut g = AbelianGroup {
            moduli,
            gens: Vec::new(),
        };
        g.gens = (0..g.moduli.len())
            .filter(|&i| g.moduli[i] > 1)
            .map(|i| {
                let mut v = vec![0; g.moduli.len()];
                v[i] = 1;
                g.encode(&v)
            })
            .collect();
        g
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn encode(&self, v: &[u64]) -> u32 {
        let mut code = 0u64;
        for (x, m) in v.iter().zip(&self.moduli).rev() {
            code = code * m + x % m;
        }
        code as u32
    }

    pub fn decode(&self, code: u32) -> Vec<u64> {
        let mut c = code as u64;
        self.moduli
            .iter()
            .map(|m| {
                let x = c % m;
                c /= m;
                x
            })
            .collect()
    }
}

impl FiniteGroup for AbelianGroup {
    fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    fn identity(&self) -> u32 {
        0
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.decode(x), self.decode(y));
        let s: Vec<u64> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
        self.encode(&s)
    }

    fn inv(&self, x: u32) -> u32 {
        let a = self.decode(x);
        let n: Vec<u64> = a.iter().zip(&self.moduli).map(|(p, m)| (m - p) % m).collect();
        self.encode(&n)
    }

    fn generators(&self) -> &[u32] {
        &self.gens
    }
}

/// Invariant factors `d1 | d2 | …` (all `≥ 2`) of `G/[G,G]`, with the quotient map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub factors: Vec<u64>,
    coset_of: Vec<u32>,
    coords: Vec<Vec<u64>>,
}

impl AbelianInvariants {
    pub fn from_abelian_quotient<G: FiniteGroup + ?Sized>(q: &QuotientGroup<'_, G>) -> Self {
        let m = q.order();
        let gens = q.generators().to_vec();
        let r = gens.len();
        let mut lattice = Lattice::new(r, m as i128);
        let mut vecs: Vec<Option<Vec<i128>>> = vec![None; m];
        vecs[q.identity() as usize] = Some(vec![0; r]);
        let mut queue = vec![q.identity()];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            let va = vecs[a as usize].clone().expect("labelled");
            for (i, &s) in gens.iter().enumerate() {
                let b = q.mul(a, s);
                let mut step = va.clone();
                step[i] += 1;
                match &vecs[b as usize] {
                    Some(vb) => {
                        let rel: Vec<i128> = step.iter().zip(vb).map(|(x, y)| x - y).collect();
                        lattice.insert(rel);
                    }
                    None => {
                        vecs[b as usize] = Some(step);
                        queue.push(b);
                    }
                }
            }
        }
        let (diag, v) = smith_normal_form(lattice.rows);
        let kept: Vec<usize> = (0..r).filter(|&i| diag[i] > 1).collect();
        let factors: Vec<u64> = kept.iter().map(|&i| diag[i] as u64).collect();
        let coords = vecs
            .into_iter()
            .map(|vec| {
                let x = vec.expect("quotient is generated by the generator images");
                kept.iter()
                    .map(|&j| {
                        let y: i128 = (0..r).map(|k| x[k] * v[k][j]).sum();
                        y.rem_euclid(diag[j]) as u64
                    })
                    .collect()
            })
            .collect();
        AbelianInvariants {
            factors,
            coset_of: q.projection().to_vec(),
            coords,
        }
    }

    /// Order of the abelianization.
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Image of a group element in `Z/d1 × Z/d2 × …`.
    pub fn image(&self, x: u32) -> &[u64] {
        &self.coords[self.coset_of[x as usize] as usize]
    }

    pub fn target(&self) -> AbelianGroup {
        AbelianGroup::new(self.factors.clone())
    }

    /// The quotient map as a table into [`Self::target`].
    pub fn quotient_map(&self) -> Vec<u32> {
        let t = self.target();
        self.coset_of
            .iter()
            .map(|&c| t.encode(&self.coords[c as usize]))
            .collect()
    }

    /// Whether the images of `elems` generate the abelianization.
    pub fn images_generate(&self, elems: &[u32]) -> bool {
        let t = self.target();
        let imgs: Vec<u32> = elems.iter().map(|&x| t.encode(self.image(x))).collect();
        super::subgroup_closure(&t, &imgs).is_whole()
    }
}

/// Full-rank lattice in `Z^r` containing `m·Z^r`, kept upper triangular with entries reduced
/// modulo `m`.
struct Lattice {
    m: i128,
    rows: Vec<Vec<i128>>,
}

impl Lattice {
    fn new(r: usize, m: i128) -> Self {
        let rows = (0..r)
            .map(|i| {
                let mut row = vec![0; r];
                row[i] = m;
                row
            })
            .collect();
        Lattice { m, rows }
    }

    #[allow(clippy::needless_range_loop)]
    fn insert(&mut self, mut v: Vec<i128>) {
        let r = v.len();
        for x in v.iter_mut() {
            *x = x.rem_euclid(self.m);
        }
        for i in 0..r {
            if v[i] == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(self.rows[i][i], v[i]);
            let (p, q) = (self.rows[i][i] / g, v[i] / g);
            let row = &self.rows[i];
            let combined: Vec<i128> = (0..r).map(|k| s * row[k] + t * v[k]).collect();
            let rest: Vec<i128> = (0..r).map(|k| q * row[k] - p * v[k]).collect();
            self.rows[i] = combined;
            v = rest;
            for k in i + 1..r {
                self.rows[i][k] = self.rows[i][k].rem_euclid(self.m);
                v[k] = v[k].rem_euclid(self.m);
            }
            debug_assert_eq!(v[i], 0);
        }
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1, 0, 0, 1);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Smith normal form of a square nonsingular matrix. Returns the diagonal (positive, each
/// dividing the next) and the column transform `V` with `U·A·V = D`.
#[allow(clippy::needless_range_loop)]
pub(crate) fn smith_normal_form(mut a: Vec<Vec<i128>>) -> (Vec<i128>, Vec<Vec<i128>>) {
    let n = a.len();
    let mut v: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    for t in 0..n {
        loop {
            let Some((pi, pj)) = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                return (a.iter().enumerate().map(|(i, row)| row[i].abs()).collect(), v);
            };
            a.swap(t, pi);
            for row in a.iter_mut().chain(v.iter_mut()) {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t] / p;
                if q != 0 {
                    for k in t..n {
                        a[i][k] -= q * a[t][k];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().chain(v.iter_mut()) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            if let Some(i) = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0)) {
                for k in t..n {
                    a[t][k] += a[i][k];
                }
                continue;
            }
            if p < 0 {
                for k in t..n {
                    a[t][k] = -a[t][k];
                }
            }
            break;
        }
    }
    (a.iter().enumerate().map(|(i, row)| row[i]).collect(), v)
}
