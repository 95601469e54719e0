//! 2×2 determinant-one matrices over a [`FiniteRing`].
//!
//! A [`Mat2`] is a plain value holding four ring elements; the ring is passed explicitly to
//! every operation. Commutators follow the convention `[A, B] = A·B·A⁻¹·B⁻¹` and conjugation
//! is `A^B = B⁻¹·A·B`.

use crate::error::{Error, Result};
use crate::finring::{parse_element, Elem, FiniteRing, Ideal};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl Mat2 {
    /// Entries without a determinant check; callers inside the crate guarantee `det = 1`.
    pub(crate) const fn raw(a: Elem, b: Elem, c: Elem, d: Elem) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_entries(r: &FiniteRing, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<Self> {
        let m = Mat2 { a, b, c, d };
        let det = m.det(r);
        if det != r.one() {
            return Err(Error::DeterminantNotOne(r.format_element(det)));
        }
        Ok(m)
    }

    pub fn identity(r: &FiniteRing) -> Self {
        Mat2::raw(r.one(), r.zero(), r.zero(), r.one())
    }

    pub fn e12(r: &FiniteRing, x: Elem) -> Self {
        Mat2::raw(r.one(), x, r.zero(), r.one())
    }

    pub fn e21(r: &FiniteRing, x: Elem) -> Self {
        Mat2::raw(r.one(), r.zero(), x, r.one())
    }

    /// `diag(u, u⁻¹)`.
    pub fn h(r: &FiniteRing, u: Elem) -> Result<Self> {
        let ui = r.inv(u)?;
        Ok(Mat2::raw(u, r.zero(), r.zero(), ui))
    }

    /// `uI`; requires `u² = 1`.
    pub fn scalar(r: &FiniteRing, u: Elem) -> Result<Self> {
        r.inv(u)?;
        if r.mul(u, u) != r.one() {
            return Err(Error::ScalarNotInSl2(r.format_element(u)));
        }
        Ok(Mat2::raw(u, r.zero(), r.zero(), u))
    }

    /// The self-reproducing element `C(x) = E21(x)·E12(x) = [[1, x], [x, 1 + x²]]`.
    pub fn c(r: &FiniteRing, x: Elem) -> Self {
        Mat2::raw(r.one(), x, x, r.add(r.one(), r.mul(x, x)))
    }

    pub fn det(&self, r: &FiniteRing) -> Elem {
        r.sub(r.mul(self.a, self.d), r.mul(self.b, self.c))
    }

    pub fn mul(&self, o: &Mat2, r: &FiniteRing) -> Mat2 {
        Mat2::raw(
            r.add(r.mul(self.a, o.a), r.mul(self.b, o.c)),
            r.add(r.mul(self.a, o.b), r.mul(self.b, o.d)),
            r.add(r.mul(self.c, o.a), r.mul(self.d, o.c)),
            r.add(r.mul(self.c, o.b), r.mul(self.d, o.d)),
        )
    }

    /// Inverse via the adjugate `[[d, -b], [-c, a]]`.
    pub fn inv(&self, r: &FiniteRing) -> Mat2 {
        Mat2::raw(self.d, r.neg(self.b), r.neg(self.c), self.a)
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::raw(self.a, self.c, self.b, self.d)
    }

    /// `B⁻¹·A·B`.
    pub fn conj(&self, by: &Mat2, r: &FiniteRing) -> Mat2 {
        by.inv(r).mul(self, r).mul(by, r)
    }

    /// `A·B·A⁻¹·B⁻¹`.
    pub fn comm(&self, o: &Mat2, r: &FiniteRing) -> Mat2 {
        self.mul(o, r).mul(&self.inv(r), r).mul(&o.inv(r), r)
    }

    pub fn pow(&self, e: u32, r: &FiniteRing) -> Mat2 {
        (0..e).fold(Mat2::identity(r), |acc, _| acc.mul(self, r))
    }

    /// Dense id `a + n(b + n(c + n d))`.
    pub fn dense_id(&self, r: &FiniteRing) -> u64 {
        let n = r.order() as u64;
        self.a.0 as u64 + n * (self.b.0 as u64 + n * (self.c.0 as u64 + n * self.d.0 as u64))
    }

    pub fn from_dense_id(r: &FiniteRing, id: u64) -> Mat2 {
        let n = r.order() as u64;
        let digit = |k: u32| Elem(((id / n.pow(k)) % n) as u16);
        Mat2::raw(digit(0), digit(1), digit(2), digit(3))
    }

    /// The level ideal `(a - d, b, c)`.
    pub fn level_ideal(&self, r: &FiniteRing) -> Ideal {
        r.ideal_from_generators(&[r.sub(self.a, self.d), self.b, self.c])
    }

    pub fn is_scalar(&self, r: &FiniteRing) -> bool {
        self.b == r.zero() && self.c == r.zero() && self.a == self.d
    }

    /// `ρ(A) = a² - 1 + ab`.
    pub fn rho(&self, r: &FiniteRing) -> Elem {
        r.add(r.sub(r.mul(self.a, self.a), r.one()), r.mul(self.a, self.b))
    }

    pub fn rho_family(&self, r: &FiniteRing) -> RhoFamily {
        let inv = self.inv(r);
        RhoFamily {
            rho: self.rho(r),
            rho_t: self.transpose().rho(r),
            rho_inv: inv.rho(r),
            rho_inv_t: inv.transpose().rho(r),
        }
    }

    /// Entry-wise image under a ring map given as an index table.
    pub fn map_entries(&self, map: &[Elem]) -> Mat2 {
        Mat2::raw(
            map[self.a.index()],
            map[self.b.index()],
            map[self.c.index()],
            map[self.d.index()],
        )
    }

    pub fn format(&self, r: &FiniteRing) -> String {
        format!(
            "[[{},{}],[{},{}]]",
            r.format_element(self.a),
            r.format_element(self.b),
            r.format_element(self.c),
            r.format_element(self.d)
        )
    }

    pub fn to_json(&self, r: &FiniteRing) -> MatrixJson {
        MatrixJson {
            a: r.format_element(self.a),
            b: r.format_element(self.b),
            c: r.format_element(self.c),
            d: r.format_element(self.d),
            ring_spec: r.spec().to_string(),
        }
    }
}

/// `(ρ(A), ρ(Aᵀ), ρ(A⁻¹), ρ(A⁻ᵀ))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhoFamily {
    pub rho: Elem,
    pub rho_t: Elem,
    pub rho_inv: Elem,
    pub rho_inv_t: Elem,
}

impl RhoFamily {
    pub fn as_array(&self) -> [Elem; 4] {
        [self.rho, self.rho_t, self.rho_inv, self.rho_inv_t]
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub ring_spec: String,
}

/// Checks `C(x)⁻¹·C(y) = C(y - x)^{E12(x)}`.
pub fn selfrep_shift_check(r: &FiniteRing, x: Elem, y: Elem) -> bool {
    let lhs = Mat2::c(r, x).inv(r).mul(&Mat2::c(r, y), r);
    let rhs = Mat2::c(r, r.sub(y, x)).conj(&Mat2::e12(r, x), r);
    lhs == rhs
}

/// Parse one matrix: `E12(x)`, `E21(x)`, `h(u)`, `C(x)`, `I`, `-I` or `[[a,b],[c,d]]`.
pub fn parse_matrix(r: &FiniteRing, text: &str) -> Result<Mat2> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    match t.as_str() {
        "I" => return Ok(Mat2::identity(r)),
        "-I" => return Mat2::scalar(r, r.neg(r.one())),
        _ => {}
    }
    let call = |prefix: &str| -> Option<&str> { t.strip_prefix(prefix)?.strip_suffix(')') };
    if let Some(arg) = call("E12(") {
        return Ok(Mat2::e12(r, parse_element(r, arg)?));
    }
    if let Some(arg) = call("E21(") {
        return Ok(Mat2::e21(r, parse_element(r, arg)?));
    }
    if let Some(arg) = call("h(") {
        return Mat2::h(r, parse_element(r, arg)?);
    }
    if let Some(arg) = call("C(") {
        return Ok(Mat2::c(r, parse_element(r, arg)?));
    }
    if let Some(inner) = t.strip_prefix("[[").and_then(|s| s.strip_suffix("]]")) {
        let rows: Vec<&str> = inner.splitn(2, "],[").collect();
        if rows.len() == 2 {
            let top = crate::finring::split_top_level(rows[0]);
            let bottom = crate::finring::split_top_level(rows[1]);
            if top.len() == 2 && bottom.len() == 2 {
                return Mat2::from_entries(
                    r,
                    parse_element(r, top[0])?,
                    parse_element(r, top[1])?,
                    parse_element(r, bottom[0])?,
                    parse_element(r, bottom[1])?,
                );
            }
        }
    }
    Err(Error::Parse(format!("cannot read matrix `{text}`")))
}

/// Comma-separated list of matrices.
pub fn parse_matrix_list(r: &FiniteRing, text: &str) -> Result<Vec<Mat2>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    crate::finring::split_top_level(text)
        .into_iter()
        .map(|m| parse_matrix(r, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::parse_ring_spec;

    fn setup(s: &str) -> FiniteRing {
        parse_ring_spec(s).unwrap()
    }

    fn el(r: &FiniteRing, s: &str) -> Elem {
        parse_element(r, s).unwrap()
    }

    fn m(r: &FiniteRing, s: &str) -> Mat2 {
        parse_matrix(r, s).unwrap()
    }

    #[test]
    fn constructor_examples() {
        let z4 = setup("Z/4");
        assert_eq!(Mat2::c(&z4, z4.zero()), Mat2::identity(&z4));
        assert_eq!(Mat2::c(&z4, z4.one()), m(&z4, "[[1,1],[1,2]]"));
        assert_eq!(
            Mat2::c(&z4, z4.one()),
            Mat2::e21(&z4, z4.one()).mul(&Mat2::e12(&z4, z4.one()), &z4)
        );
        assert_eq!(Mat2::h(&z4, el(&z4, "3")).unwrap(), m(&z4, "[[3,0],[0,3]]"));
        assert!(Mat2::h(&z4, el(&z4, "2")).is_err());
        assert!(parse_matrix(&z4, "[[1,1],[1,1]]").is_err());
        let z9 = setup("Z/9");
        assert!(Mat2::scalar(&z9, el(&z9, "2")).is_err());
        assert!(Mat2::scalar(&z9, el(&z9, "8")).is_ok());
    }

    #[test]
    fn product_and_inverse() {
        let z9 = setup("Z/9");
        let (x, y) = (el(&z9, "4"), el(&z9, "7"));
        assert_eq!(
            Mat2::e12(&z9, x).mul(&Mat2::e12(&z9, y), &z9),
            Mat2::e12(&z9, z9.add(x, y))
        );
        let f3 = setup("F3");
        let c1 = Mat2::c(&f3, f3.one());
        assert_eq!(c1.inv(&f3), m(&f3, "[[2,2],[2,1]]"));
        assert_eq!(c1.mul(&c1.inv(&f3), &f3), Mat2::identity(&f3));
        assert_eq!(c1.mul(&Mat2::identity(&f3), &f3), c1);
    }

    #[test]
    fn conjugation_examples() {
        let z9 = setup("Z/9");
        let w = m(&z9, "[[0,1],[-1,0]]");
        for x in z9.elements() {
            assert_eq!(Mat2::e12(&z9, x).conj(&w, &z9), Mat2::e21(&z9, z9.neg(x)));
            assert_eq!(
                w.mul(&Mat2::e12(&z9, x), &z9).mul(&w.inv(&z9), &z9),
                Mat2::e21(&z9, z9.neg(x))
            );
        }
        let a = Mat2::e12(&z9, z9.one());
        let b = Mat2::e21(&z9, z9.one());
        let direct = Mat2::e21(&z9, z9.neg(z9.one())).mul(&a, &z9).mul(&b, &z9);
        assert_eq!(a.conj(&b, &z9), direct);
        assert_eq!(direct, m(&z9, "[[2,1],[-1,0]]"));
        assert_eq!(a.conj(&Mat2::identity(&z9), &z9), a);
    }

    #[test]
    fn commutator_examples() {
        let f5 = setup("F5");
        let h2 = Mat2::h(&f5, el(&f5, "2")).unwrap();
        assert_eq!(h2.comm(&Mat2::e12(&f5, f5.one()), &f5), Mat2::e12(&f5, el(&f5, "3")));
        assert_eq!(h2.comm(&h2, &f5), Mat2::identity(&f5));
        let f3 = setup("F3");
        let (a, b) = (Mat2::e12(&f3, f3.one()), Mat2::e21(&f3, f3.one()));
        let direct = a
            .mul(&b, &f3)
            .mul(&Mat2::e12(&f3, el(&f3, "2")), &f3)
            .mul(&Mat2::e21(&f3, el(&f3, "2")), &f3);
        assert_eq!(a.comm(&b, &f3), direct);
    }

    #[test]
    fn level_ideal_examples() {
        let z4 = setup("Z/4");
        assert!(Mat2::identity(&z4).level_ideal(&z4).is_zero(&z4));
        let two = el(&z4, "2");
        assert_eq!(Mat2::e12(&z4, two).level_ideal(&z4), z4.principal_ideal(two));
        assert!(Mat2::c(&z4, z4.one()).level_ideal(&z4).is_whole());
    }

    #[test]
    fn rho_examples() {
        let z9 = setup("Z/9");
        assert_eq!(Mat2::identity(&z9).rho(&z9), z9.zero());
        for x in z9.elements() {
            let f = Mat2::e12(&z9, x).rho_family(&z9);
            assert_eq!(
                (f.rho, f.rho_t, f.rho_inv, f.rho_inv_t),
                (x, z9.zero(), z9.neg(x), z9.zero())
            );
        }
        let h2 = Mat2::h(&z9, el(&z9, "2")).unwrap();
        assert_eq!(h2.rho(&z9), el(&z9, "3"));
    }

    #[test]
    fn selfrep_examples() {
        for s in ["Z/9", "F3"] {
            let r = setup(s);
            for x in r.elements() {
                assert!(selfrep_shift_check(&r, x, x));
                for y in r.elements() {
                    assert!(selfrep_shift_check(&r, x, y));
                }
            }
        }
    }

    #[test]
    fn matrix_text_round_trip() {
        let r = setup("F2[T]/(T^2) x F3");
        let a = m(&r, "[[(1+T,1),(T,0)],[0,(1+T,1)]]");
        assert_eq!(a.format(&r), "[[(1+T,1),(T,0)],[(0,0),(1+T,1)]]");
        assert_eq!(parse_matrix(&r, &a.format(&r)).unwrap(), a);
        let list = parse_matrix_list(&r, "E12((1,1)), E12((T,1)), I").unwrap();
        assert_eq!(list.len(), 3);
        assert_eq!(Mat2::from_dense_id(&r, a.dense_id(&r)), a);
    }
}
