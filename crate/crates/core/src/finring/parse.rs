//! Ring-spec and element-literal grammar.
//!
//! ```text
//! spec    := term ( ("x" | "×") term )*
//! term    := "Z/" n | "F" q | "F" p "[T]/(" poly ")"
//! element := "(" expr ("," expr)+ ")"      factor coordinates
//!          | expr                          integer image, or a polynomial for one-factor rings
//! ```

use super::chain::{factor_monic, poly_degree, poly_trim, smallest_irreducible, ChainKind, ChainLocalRing, Poly};
use super::{Elem, FiniteRing};
use crate::error::{Error, Result};

pub const DEFAULT_RING_ORDER_CAP: usize = 64;

pub fn parse_ring_spec(spec: &str) -> Result<FiniteRing> {
    parse_ring_spec_with_cap(spec, DEFAULT_RING_ORDER_CAP)
}

pub fn parse_ring_spec_with_cap(spec: &str, cap: usize) -> Result<FiniteRing> {
    let mut terms: Vec<String> = vec![String::new()];
    for tok in spec.split_whitespace() {
        if tok == "x" || tok == "×" {
            terms.push(String::new());
        } else {
            terms.last_mut().unwrap().push_str(tok);
        }
    }
    if terms.iter().any(|t| t.is_empty()) {
        return Err(Error::Parse(format!("malformed ring spec `{spec}`")));
    }
    let mut factors = Vec::new();
    for t in &terms {
        factors.extend(parse_term(t)?);
    }
    let order = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()));
    match order {
        Some(o) if o <= cap => {}
        Some(o) => return Err(Error::OrderCap { order: o, cap }),
        None => return Err(Error::OrderCap { order: usize::MAX, cap }),
    }
    FiniteRing::from_factors(spec.trim(), factors)
}

fn prime_factorization(mut n: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d as u32, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n as u32, 1));
    }
    out
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.parse::<u64>()
        .map_err(|_| Error::Parse(format!("expected {what}, found `{s}`")))
}

fn parse_term(t: &str) -> Result<Vec<ChainLocalRing>> {
    if let Some(n) = t.strip_prefix("Z/") {
        let n = parse_u64(n, "a modulus")?;
        if n < 2 {
            return Err(Error::Parse(format!("Z/{n} is not a ring with 1 ≠ 0")));
        }
        if n > 1 << 20 {
            return Err(Error::OrderCap {
                order: n as usize,
                cap: 1 << 20,
            });
        }
        return Ok(prime_factorization(n)
            .into_iter()
            .map(|(p, k)| ChainLocalRing::integer_mod(p, k))
            .collect());
    }
    let Some(rest) = t.strip_prefix('F') else {
        return Err(Error::Parse(format!("unknown ring term `{t}`")));
    };
    if let Some(open) = rest.find("[T]/(") {
        let p = parse_u64(&rest[..open], "a prime")?;
        let pf = prime_factorization(p);
        if pf.len() != 1 || pf[0].1 != 1 {
            return Err(Error::Parse(format!("F{p}[T] needs a prime characteristic")));
        }
        let body = &rest[open + "[T]/(".len()..];
        let body = body
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced modulus in `{t}`")))?;
        let p = p as u32;
        let f = reduce_poly(&parse_poly_expr(body)?, p as i64);
        let deg = poly_degree(&f)
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::Parse(format!("modulus `{body}` must be non-constant mod {p}")))?;
        let lead_inv = (1..p).find(|&c| (c as u64 * f[deg] as u64) % p as u64 == 1).unwrap();
        let monic: Poly = f
            .iter()
            .map(|&c| ((c as u64 * lead_inv as u64) % p as u64) as u32)
            .collect();
        return Ok(factor_monic(&monic, p)
            .into_iter()
            .map(|(g, e)| ChainLocalRing::polynomial(p, g, e))
            .collect());
    }
    let q = parse_u64(rest, "a field order")?;
    let pf = prime_factorization(q);
    if pf.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let (p, m) = pf[0];
    if m == 1 {
        Ok(vec![ChainLocalRing::integer_mod(p, 1)])
    } else {
        Ok(vec![ChainLocalRing::polynomial(
            p,
            smallest_irreducible(m as usize, p),
            1,
        )])
    }
}

/// Polynomial in `T` with integer coefficients, low degree first.
type ZPoly = Vec<i64>;

fn reduce_poly(f: &ZPoly, m: i64) -> Poly {
    poly_trim(f.iter().map(|&c| c.rem_euclid(m) as u32).collect())
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn expr(&mut self) -> Result<ZPoly> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            zneg(&self.term()?)
        } else {
            self.term()?
        };
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = zadd(&acc, &self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = zadd(&acc, &zneg(&self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ZPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = zmul(&acc, &self.factor()?);
                }
                Some(b'T') | Some(b'(') => acc = zmul(&acc, &self.factor()?),
                Some(c) if c.is_ascii_digit() => acc = zmul(&acc, &self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ZPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            if e > 64 {
                return Err(self.err("exponent too large"));
            }
            let mut acc = vec![1];
            for _ in 0..e {
                acc = zmul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ZPoly> {
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                Ok(vec![0, 1])
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(vec![self.integer()?]),
            _ => Err(self.err("expected an integer, `T` or `(`")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("expected an integer"))
    }
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

fn zneg(a: &ZPoly) -> ZPoly {
    a.iter().map(|c| -c).collect()
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j].wrapping_add(x.wrapping_mul(y));
        }
    }
    out
}

fn parse_poly_expr(s: &str) -> Result<ZPoly> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = ExprParser {
        s: cleaned.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.pos != cleaned.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

fn zpoly_is_constant(f: &ZPoly) -> bool {
    f.iter().skip(1).all(|&c| c == 0)
}

fn element_in_factor(f: &ChainLocalRing, expr: &ZPoly, text: &str) -> Result<u32> {
    match f.kind() {
        ChainKind::IntegerMod => {
            if !zpoly_is_constant(expr) {
                return Err(Error::Parse(format!("`{text}` uses T in an integer residue ring")));
            }
            Ok(f.from_integer(expr[0]))
        }
        ChainKind::Polynomial { .. } => Ok(f.index_of_poly(&reduce_poly(expr, f.characteristic_prime() as i64))),
    }
}

/// Split `s` on commas that are not nested inside brackets.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// Parse a ring-element literal.
pub fn parse_element(ring: &FiniteRing, text: &str) -> Result<Elem> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.starts_with('(') && t.ends_with(')') {
        let inner = &t[1..t.len() - 1];
        let parts = split_top_level(inner);
        if parts.len() > 1 {
            if parts.len() != ring.factors().len() {
                return Err(Error::Parse(format!(
                    "`{text}` has {} coordinates but the ring has {} factors",
                    parts.len(),
                    ring.factors().len()
                )));
            }
            let comps = parts
                .iter()
                .zip(ring.factors())
                .map(|(p, f)| element_in_factor(f, &parse_poly_expr(p)?, p))
                .collect::<Result<Vec<u32>>>()?;
            return Ok(ring.from_components(&comps));
        }
    }
    let expr = parse_poly_expr(&t)?;
    if ring.factors().len() == 1 {
        let c = element_in_factor(&ring.factors()[0], &expr, text)?;
        return Ok(ring.from_components(&[c]));
    }
    if !zpoly_is_constant(&expr) {
        return Err(Error::Parse(format!(
            "`{text}` is ambiguous in a product ring; use factor coordinates `(a,b,…)`"
        )));
    }
    Ok(ring.from_integer(expr[0]))
}
