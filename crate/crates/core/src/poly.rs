//! Exact univariate polynomials over the rationals.
//!
//! Hosts the coefficient polynomials attached to leading terms along a
//! support line, together with the gcd-based toolkit the rest of the crate
//! leans on: Yun's squarefree decomposition, maximal power extraction, and
//! rational root enumeration.

use num::{BigInt, Integer, One, Signed, Zero};

use crate::{Error, Rat, Result};

/// Dense univariate polynomial; `coeffs[i]` multiplies `x^i`, the leading
/// coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `c * x^d`.
    pub fn monomial(c: Rat, d: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); d + 1];
        coeffs[d] = c;
        UniPoly::new(coeffs)
    }

    pub fn x() -> Self {
        UniPoly::monomial(Rat::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        UniPoly::new(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        UniPoly::new(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * crate::rat_int(i as i64))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (UniPoly::zero(), self.clone());
        }
        let lead_inv = Rat::one() / divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd - 1].clone() * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = Rat::one() / self.leading_coeff();
        self.scale(&inv)
    }

    /// Squarefree part `f / gcd(f, f')`, monic.
    pub fn radical(&self) -> UniPoly {
        if self.is_zero() || self.is_constant() {
            return UniPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.is_constant() || self.gcd(&self.derivative()).is_constant()
    }

    /// Taylor shift `f(x + a)`.
    pub fn shift(&self, a: &Rat) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        let n = coeffs.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let add = coeffs[j + 1].clone() * a;
                coeffs[j] += add;
            }
        }
        UniPoly::new(coeffs)
    }

    /// Multiplicity of `x - a` in `f`; zero for a non-root.
    pub fn root_multiplicity(&self, a: &Rat) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = UniPoly::new(vec![-a.clone(), Rat::one()]);
        let mut f = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = f.div_rem(&lin);
            if !r.is_zero() {
                return m;
            }
            m += 1;
            f = q;
        }
    }

    /// Multiplicity of `x` dividing `f`.
    pub fn x_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", crate::format_rat(c))?,
                _ => write!(f, "{}*x^{}", crate::format_rat(c), i)?,
            }
        }
        Ok(())
    }
}

/// One factor of a squarefree decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeFactor {
    pub multiplicity: usize,
    /// Monic, squarefree, pairwise coprime with the other factors.
    pub factor: UniPoly,
}

/// Yun's algorithm: `f = unit * prod factor_e^e` with squarefree, pairwise
/// coprime, monic factors. Constants decompose into an empty product.
pub fn squarefree_decompose(f: &UniPoly) -> Result<(Rat, Vec<SquarefreeFactor>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading_coeff();
    if f.is_constant() {
        return Ok((unit, Vec::new()));
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0);
    let mut c = df.div_exact(&a0);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1usize;
    while b.degree() != Some(0) {
        let q = b.gcd(&d);
        if q.degree().unwrap_or(0) > 0 {
            out.push(SquarefreeFactor { multiplicity: i, factor: q.clone() });
        }
        b = b.div_exact(&q);
        c = d.div_exact(&q);
        d = c.sub(&b.derivative());
        i += 1;
    }
    Ok((unit, out))
}

/// Writes `f = lambda * g^m` with `m` maximal and `g` monic.
pub fn power_decompose(f: &UniPoly) -> Result<(UniPoly, u32, Rat)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let (unit, factors) = squarefree_decompose(f)?;
    let mut m = 0u32;
    for sq in &factors {
        m = num::integer::gcd(m, sq.multiplicity as u32);
    }
    debug_assert!(m >= 1);
    let mut g = UniPoly::one();
    for sq in &factors {
        g = g.mul(&sq.factor.pow(sq.multiplicity as u32 / m));
    }
    Ok((g, m, unit))
}

/// All rational roots of `f`, ascending, via the rational root bound on an
/// integer multiple of `f`.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<Rat>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let x_mult = f.x_multiplicity();
    let mut roots = Vec::new();
    if x_mult > 0 {
        roots.push(Rat::zero());
    }
    let g = UniPoly::new(f.coeffs()[x_mult..].to_vec());
    if g.is_constant() {
        roots.sort();
        return Ok(roots);
    }
    // Clear denominators so candidates are p/q with p | a0 and q | lead.
    let mut den = BigInt::one();
    for c in g.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = g.coeffs().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for sign in [1i64, -1] {
                let cand = Rat::new(&p * BigInt::from(sign), q.clone());
                if g.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Positive divisors by trial division; adequate for the coefficient sizes
/// produced by the fixtures and search drivers.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    loop {
        let dsq = &d * &d;
        if dsq > n {
            break;
        }
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
        // TODO: switch to factor-based enumeration if fixtures ever carry
        // coefficients past ~10^12.
        if d > BigInt::from(2_000_000u64) {
            break;
        }
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = poly(&[2, -3, 0, 1]);
        let (unit, factors) = squarefree_decompose(&f).unwrap();
        assert_eq!(unit, rat_int(1));
        assert_eq!(
            factors,
            vec![
                SquarefreeFactor { multiplicity: 1, factor: poly(&[2, 1]) },
                SquarefreeFactor { multiplicity: 2, factor: poly(&[-1, 1]) },
            ]
        );

        let f = poly(&[0, 0, 0, 1]); // x^3
        let (_, factors) = squarefree_decompose(&f).unwrap();
        assert_eq!(factors, vec![SquarefreeFactor { multiplicity: 3, factor: poly(&[0, 1]) }]);

        let f = poly(&[1, 0, 1]); // x^2 + 1, already squarefree
        let (_, factors) = squarefree_decompose(&f).unwrap();
        assert_eq!(factors, vec![SquarefreeFactor { multiplicity: 1, factor: poly(&[1, 0, 1]) }]);
    }

    #[test]
    fn power_examples() {
        // (x^2+x)^2
        let f = poly(&[0, 1, 1]).pow(2);
        let (g, m, lambda) = power_decompose(&f).unwrap();
        assert_eq!((g, m, lambda), (poly(&[0, 1, 1]), 2, rat_int(1)));

        let (g, m, lambda) = power_decompose(&poly(&[0, 1])).unwrap();
        assert_eq!((g, m, lambda), (poly(&[0, 1]), 1, rat_int(1)));

        // 4 (x+1)^6
        let f = poly(&[1, 1]).pow(6).scale(&rat_int(4));
        let (g, m, lambda) = power_decompose(&f).unwrap();
        assert_eq!((g.clone(), m, lambda.clone()), (poly(&[1, 1]), 6, rat_int(4)));
        assert_eq!(g.pow(m).scale(&lambda), f);

        assert!(power_decompose(&poly(&[5])).is_err());
    }

    #[test]
    fn roots_and_multiplicities() {
        let f = poly(&[1, 1]).pow(2).mul(&poly(&[-3, 2])); // (x+1)^2 (2x-3)
        assert_eq!(rational_roots(&f).unwrap(), vec![rat_int(-1), rat(3, 2)]);
        assert_eq!(f.root_multiplicity(&rat_int(-1)), 2);
        assert_eq!(f.root_multiplicity(&rat(3, 2)), 1);
        assert_eq!(f.root_multiplicity(&rat_int(7)), 0);
        assert_eq!(poly(&[0, 0, 5]).x_multiplicity(), 2);
    }

    #[test]
    fn shift_matches_eval() {
        let f = poly(&[3, -2, 0, 1]);
        let g = f.shift(&rat(1, 2));
        for v in [-2i64, -1, 0, 1, 5] {
            let x = rat_int(v);
            assert_eq!(g.eval(&x), f.eval(&(x.clone() + rat(1, 2))));
        }
    }
}
