//! Elements of `W^(l)` and `L^(l)` over the rationals.
//!
//! `W^(l)` extends the Weyl algebra `[Y, X] = 1` by the fractional powers
//! `X^(1/l)`, `X^(-1/l)`; as a linear space it is spanned by the normal-form
//! monomials `X^(i/l) Y^j` with `j >= 0`. The commutative counterpart
//! `L^(l) = K[x^(1/l), x^(-1/l), y]` shares the representation behind a
//! `commutative` flag and carries the supports, so one sparse term map
//! serves both sides of the symbol map.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::point::SupportPoint;
use crate::{lcm64, Error, Rat, Result};

/// Sparse normal-form element: a finite map from support points to nonzero
/// rational coefficients, all stored at the element's level.
#[derive(Clone, Debug)]
pub struct WeylElement {
    level: i64,
    commutative: bool,
    terms: BTreeMap<SupportPoint, Rat>,
}

impl WeylElement {
    pub fn zero(level: i64, commutative: bool) -> Self {
        assert!(level >= 1, "level must be positive");
        WeylElement { level, commutative, terms: BTreeMap::new() }
    }

    pub fn one(level: i64, commutative: bool) -> Self {
        Self::monomial(0, level, 0, Rat::one(), commutative)
    }

    /// `c * X^(xnum/level) Y^y` (or its symbol when `commutative`).
    pub fn monomial(xnum: i64, level: i64, y: i64, c: Rat, commutative: bool) -> Self {
        let mut e = Self::zero(level, commutative);
        e.add_term(SupportPoint::new(xnum, level, y), c);
        e
    }

    /// Builds an element from `(point, coefficient)` pairs, embedding every
    /// point at `level`.
    pub fn from_terms<I>(level: i64, commutative: bool, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SupportPoint, Rat)>,
    {
        let mut e = Self::zero(level, commutative);
        for (p, c) in terms {
            if p.y < 0 {
                return Err(Error::Malformed(format!("negative Y exponent at {p}")));
            }
            e.add_term(p.at_level(level)?, c);
        }
        Ok(e)
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SupportPoint, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &SupportPoint> {
        self.terms.keys()
    }

    pub fn coeff(&self, p: &SupportPoint) -> Rat {
        match p.at_level(self.level) {
            Ok(q) => self.terms.get(&q).cloned().unwrap_or_else(Rat::zero),
            Err(_) => Rat::zero(),
        }
    }

    fn add_term(&mut self, p: SupportPoint, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert!(p.level == self.level);
        debug_assert!(p.y >= 0, "Y exponents must be nonnegative");
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The inclusion `W^(l) -> W^(h)` rewriting `i/l` as `(i*h/l)/h`; `h`
    /// must be a multiple of the element's level.
    pub fn embed_level(&self, h: i64) -> Result<WeylElement> {
        if h < 1 || h % self.level != 0 {
            return Err(Error::LevelNotDivisible { child: self.level, parent: h });
        }
        let d = h / self.level;
        let mut out = WeylElement::zero(h, self.commutative);
        for (p, c) in &self.terms {
            out.terms.insert(SupportPoint::new(p.xnum * d, h, p.y), c.clone());
        }
        Ok(out)
    }

    /// `self + c * other`, after aligning both operands at the lcm of their
    /// levels. The zero result keeps that level.
    pub fn add_scale(&self, other: &WeylElement, c: &Rat) -> WeylElement {
        assert_eq!(self.commutative, other.commutative, "mixed W/L addition");
        let l = lcm64(self.level, other.level);
        let mut out = self.embed_level(l).expect("lcm is a multiple");
        for (p, b) in &other.embed_level(l).expect("lcm is a multiple").terms {
            out.add_term(*p, b * c);
        }
        out
    }

    pub fn add(&self, other: &WeylElement) -> WeylElement {
        self.add_scale(other, &Rat::one())
    }

    pub fn sub(&self, other: &WeylElement) -> WeylElement {
        self.add_scale(other, &-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> WeylElement {
        let mut out = WeylElement::zero(self.level, self.commutative);
        if c.is_zero() {
            return out;
        }
        for (p, a) in &self.terms {
            out.terms.insert(*p, a * c);
        }
        out
    }

    pub fn neg(&self) -> WeylElement {
        self.scale(&-Rat::one())
    }

    /// Normal-form product. Monomials combine through
    /// `Y^j X^(i/l) = sum_k k! C(j,k) C(i/l,k) X^(i/l - k) Y^(j-k)`,
    /// where the upper argument of the second binomial is rational; in the
    /// commutative case exponents simply add. Levels align to the lcm.
    pub fn multiply(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.commutative, other.commutative, "mixed W/L product");
        let l = lcm64(self.level, other.level);
        let a = self.embed_level(l).expect("lcm is a multiple");
        let b = other.embed_level(l).expect("lcm is a multiple");
        let mut out = WeylElement::zero(l, self.commutative);
        for (p, cp) in &a.terms {
            for (q, cq) in &b.terms {
                let c = cp * cq;
                if self.commutative {
                    out.add_term(SupportPoint::new(p.xnum + q.xnum, l, p.y + q.y), c);
                } else {
                    // X^(p.x) Y^(p.y) X^(q.x) Y^(q.y): commute Y^(p.y) past X^(q.x).
                    let mut binom = Rat::one(); // k! C(p.y, k) C(q.x, k)
                    for k in 0..=p.y {
                        if !binom.is_zero() {
                            out.add_term(
                                SupportPoint::new(p.xnum + q.xnum - k * l, l, p.y + q.y - k),
                                &c * &binom,
                            );
                        }
                        // step k -> k+1: multiply by (p.y - k)(q.x - k)/(k + 1)
                        binom *= crate::rat_int(p.y - k) * crate::rat(q.xnum - k * l, l) / crate::rat_int(k + 1);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> WeylElement {
        let mut acc = WeylElement::one(self.level, self.commutative);
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc
    }

    /// `[P, Q] = PQ - QP`.
    pub fn commutator(&self, other: &WeylElement) -> WeylElement {
        self.multiply(other).sub(&other.multiply(self))
    }

    /// The symbol map `Psi: X^(i/l) Y^j -> x^(i/l) y^j` (and its inverse);
    /// flips the commutative flag and keeps the support pointwise.
    pub fn symbol_map(&self) -> WeylElement {
        WeylElement { level: self.level, commutative: !self.commutative, terms: self.terms.clone() }
    }

    pub fn to_commutative(&self) -> WeylElement {
        if self.commutative {
            self.clone()
        } else {
            self.symbol_map()
        }
    }

    /// Splits into `(1,-1)`-homogeneous components keyed by degree `i/l - j`.
    pub fn graded_split(&self) -> BTreeMap<Rat, WeylElement> {
        let mut out: BTreeMap<Rat, WeylElement> = BTreeMap::new();
        for (p, c) in &self.terms {
            let d = p.weight(1, -1);
            out.entry(d)
                .or_insert_with(|| WeylElement::zero(self.level, self.commutative))
                .add_term(*p, c.clone());
        }
        out
    }

    /// Independent multiplication oracle: instead of the closed binomial
    /// formula, `Y` is pushed through the `X`-word one fractional letter at
    /// a time via `Y X^(s/l) = X^(s/l) Y + (s/l) X^((s-l)/l)`, `s = +-1`.
    pub fn multiply_oracle(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.commutative, other.commutative, "mixed W/L product");
        let l = lcm64(self.level, other.level);
        let a = self.embed_level(l).expect("lcm is a multiple");
        let b = other.embed_level(l).expect("lcm is a multiple");
        if self.commutative {
            return a.multiply(&b);
        }
        let mut cache: BTreeMap<(i64, i64), Vec<(i64, i64, Rat)>> = BTreeMap::new();
        let mut out = WeylElement::zero(l, false);
        for (p, cp) in &a.terms {
            for (q, cq) in &b.terms {
                for (xn, y, c) in normal_form(p.y, q.xnum, l, &mut cache) {
                    out.add_term(SupportPoint::new(p.xnum + xn, l, y + q.y), c * cp * cq);
                }
            }
        }
        out
    }

    /// Rewrites the element at the smallest level carrying every term.
    /// Binary operations never call this; their results keep the lcm level
    /// so provenance stays explicit.
    pub fn reduce_level(&self) -> WeylElement {
        let mut l = 1i64;
        for p in self.terms.keys() {
            l = lcm64(l, p.reduced().level);
        }
        if l == self.level {
            return self.clone();
        }
        let mut out = WeylElement::zero(l, self.commutative);
        for (p, c) in &self.terms {
            out.terms.insert(p.at_level(l).expect("reduced level divides"), c.clone());
        }
        out
    }
}

/// Normal form of `Y^j X^(c/l)` as a list of `(x-numerator, y, coeff)`
/// triples, computed by single-letter rewriting only.
fn normal_form(
    j: i64,
    c: i64,
    l: i64,
    cache: &mut BTreeMap<(i64, i64), Vec<(i64, i64, Rat)>>,
) -> Vec<(i64, i64, Rat)> {
    if j == 0 || c == 0 {
        return vec![(c, j, Rat::one())];
    }
    if let Some(hit) = cache.get(&(j, c)) {
        return hit.clone();
    }
    // Y^j X^(c/l) = Y^(j-1) (Y X^(c/l)); push one Y through the whole word.
    let pushed = push_y(c, l);
    let mut acc: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
    for (xn, yexp, coeff) in pushed {
        for (xn2, y2, c2) in normal_form(j - 1, xn, l, cache) {
            let e = acc.entry((xn2, y2 + yexp)).or_insert_with(Rat::zero);
            *e += c2 * &coeff;
        }
    }
    let out: Vec<(i64, i64, Rat)> =
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((xn, y), c)| (xn, y, c)).collect();
    cache.insert((j, c), out.clone());
    out
}

/// `Y X^(c/l)` as a sum of `X^(xn/l) Y^y` with `y <= 1`, peeling one letter
/// `X^(+-1/l)` per step.
fn push_y(c: i64, l: i64) -> Vec<(i64, i64, Rat)> {
    if c == 0 {
        return vec![(0, 1, Rat::one())];
    }
    let s = c.signum();
    let mut tail = push_y(c - s, l);
    for t in &mut tail {
        t.0 += s;
    }
    tail.push((c - l, 0, crate::rat(s, l)));
    tail
}

impl PartialEq for WeylElement {
    /// Semantic equality: same side of the symbol map and the same reduced
    /// terms, regardless of the levels the operands are stored at.
    fn eq(&self, other: &Self) -> bool {
        if self.commutative != other.commutative || self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .zip(other.terms.iter())
            .all(|((p, c), (q, d))| p == q && c == d)
    }
}

impl Eq for WeylElement {}

impl std::fmt::Display for WeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (xs, ys) = if self.commutative { ("x", "y") } else { ("X", "Y") };
        let mut first = true;
        for (p, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", crate::format_rat(c))?;
            let r = p.reduced();
            if r.xnum != 0 {
                if r.level == 1 {
                    write!(f, "*{xs}^{}", r.xnum)?;
                } else {
                    write!(f, "*{xs}^({}/{})", r.xnum, r.level)?;
                }
            }
            if p.y != 0 {
                write!(f, "*{ys}^{}", p.y)?;
            }
        }
        Ok(())
    }
}

/// Wire format for elements:
/// `{"level": L, "commutative": b, "terms": [{"xnum": i, "y": j, "c": "p/q"}, ...]}`
/// with terms sorted by `(y, x)` descending and coefficients as reduced
/// fraction strings.
#[derive(Serialize, Deserialize)]
pub struct ElementJson {
    pub level: i64,
    pub commutative: bool,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
pub struct TermJson {
    pub xnum: i64,
    pub y: i64,
    pub c: String,
}

impl WeylElement {
    pub fn to_json(&self) -> ElementJson {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(p, c)| TermJson { xnum: p.xnum, y: p.y, c: crate::format_rat(c) })
            .collect();
        ElementJson { level: self.level, commutative: self.commutative, terms }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("element serialization cannot fail")
    }

    pub fn from_json(j: &ElementJson) -> Result<WeylElement> {
        if j.level < 1 {
            return Err(Error::Malformed(format!("level {} is not positive", j.level)));
        }
        let mut e = WeylElement::zero(j.level, j.commutative);
        for t in &j.terms {
            if t.y < 0 {
                return Err(Error::Malformed(format!("negative Y exponent {}", t.y)));
            }
            let c = crate::parse_rat(&t.c)?;
            if c.is_zero() {
                return Err(Error::Malformed("explicit zero coefficient".into()));
            }
            let p = SupportPoint::new(t.xnum, j.level, t.y);
            if !e.coeff(&p).is_zero() {
                return Err(Error::Malformed(format!("duplicate term at {p}")));
            }
            e.add_term(p, c);
        }
        Ok(e)
    }

    pub fn from_json_str(s: &str) -> Result<WeylElement> {
        let j: ElementJson = serde_json::from_str(s)?;
        Self::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn x_pow(xnum: i64, level: i64) -> WeylElement {
        WeylElement::monomial(xnum, level, 0, Rat::one(), false)
    }

    fn y() -> WeylElement {
        WeylElement::monomial(0, 1, 1, Rat::one(), false)
    }

    #[test]
    fn defining_relation() {
        let yx = y().multiply(&x_pow(1, 1));
        // Y X = X Y + 1
        let mut expect = WeylElement::monomial(1, 1, 1, Rat::one(), false);
        expect = expect.add(&WeylElement::one(1, false));
        assert_eq!(yx, expect);
        assert_eq!(y().commutator(&x_pow(1, 1)), WeylElement::one(1, false));
    }

    #[test]
    fn half_power_commutation() {
        // Y X^(1/2) = X^(1/2) Y + (1/2) X^(-1/2)
        let p = y().multiply(&x_pow(1, 2));
        let expect = WeylElement::monomial(1, 2, 1, Rat::one(), false)
            .add(&WeylElement::monomial(-1, 2, 0, rat(1, 2), false));
        assert_eq!(p, expect);
        assert_eq!(p, y().multiply_oracle(&x_pow(1, 2)));
    }

    #[test]
    fn y_squared_x() {
        // Y^2 X = X Y^2 + 2 Y
        let p = y().pow(2).multiply(&x_pow(1, 1));
        let expect = WeylElement::monomial(1, 1, 2, Rat::one(), false)
            .add(&WeylElement::monomial(0, 1, 1, rat_int(2), false));
        assert_eq!(p, expect);
        assert_eq!(p, y().pow(2).multiply_oracle(&x_pow(1, 1)));
    }

    #[test]
    fn inverse_pair() {
        let p = x_pow(1, 3).multiply_oracle(&x_pow(-1, 3));
        assert_eq!(p, WeylElement::one(3, false));
    }

    #[test]
    fn embed_is_exponent_rescaling() {
        let p = x_pow(1, 2);
        let q = p.embed_level(6).unwrap();
        assert_eq!(q.level(), 6);
        assert_eq!(q.support().next().unwrap().xnum, 3);
        assert_eq!(p, q);
        let e = y().embed_level(3).unwrap();
        assert_eq!(e, y());
        assert!(x_pow(1, 2).embed_level(3).is_err());
    }

    #[test]
    fn add_scale_basics() {
        let p = x_pow(2, 1).add(&y());
        assert_eq!(p.add_scale(&y(), &Rat::zero()), p);
        assert!(p.add_scale(&p, &rat_int(-1)).is_zero());
        let s = x_pow(1, 1).add(&y()).scale(&rat(2, 3));
        let cs: Vec<Rat> = s.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(cs, vec![rat(2, 3), rat(2, 3)]);
    }

    #[test]
    fn symbol_map_round_trip() {
        let p = x_pow(1, 1).multiply(&y()).add(&WeylElement::one(1, false));
        let s = p.symbol_map();
        assert!(s.is_commutative());
        assert_eq!(s.symbol_map(), p);
        assert_eq!(
            s,
            WeylElement::monomial(1, 1, 1, Rat::one(), true).add(&WeylElement::one(1, true))
        );
    }

    #[test]
    fn graded_split_components() {
        let p = x_pow(1, 1).add(&y());
        let split = p.graded_split();
        assert_eq!(split.len(), 2);
        assert!(split.contains_key(&rat_int(1)));
        assert!(split.contains_key(&rat_int(-1)));
        let xy = WeylElement::monomial(1, 1, 1, Rat::one(), false);
        assert_eq!(xy.graded_split().len(), 1);
        assert!(xy.graded_split().contains_key(&rat_int(0)));
    }

    #[test]
    fn json_round_trip() {
        let p = y()
            .multiply(&x_pow(1, 2))
            .add(&WeylElement::monomial(-3, 2, 2, rat(-7, 3), false));
        let s = p.to_json_string();
        let q = WeylElement::from_json_str(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.to_json_string(), s);
    }

    #[test]
    fn json_rejects_malformed() {
        assert!(WeylElement::from_json_str(
            r#"{"level":1,"commutative":false,"terms":[{"xnum":0,"y":0,"c":"2/0"}]}"#
        )
        .is_err());
        assert!(WeylElement::from_json_str(
            r#"{"level":1,"commutative":false,"terms":[{"xnum":0,"y":0,"c":"2/4"}]}"#
        )
        .is_err());
        assert!(WeylElement::from_json_str(
            r#"{"level":1,"commutative":false,"terms":[{"xnum":0,"y":0,"c":"0"}]}"#
        )
        .is_err());
        // Unsorted input loads fine and saves sorted.
        let e = WeylElement::from_json_str(
            r#"{"level":1,"commutative":false,"terms":[{"xnum":0,"y":0,"c":"1"},{"xnum":0,"y":2,"c":"3"}]}"#,
        )
        .unwrap();
        assert!(e.to_json_string().find("\"y\":2").unwrap() < e.to_json_string().find("\"y\":0").unwrap());
    }
}
