//! Valuation geometry of supports: directions `(rho, sigma)`, their total
//! order, `(rho,sigma)`-degrees and leading parts, the `w`/`ovw` corners and
//! `st`/`en`, the associated univariate polynomial of a leading term, the
//! direction `val(p)` annihilating a lattice point, and the finite set
//! `Val(P)` of directions whose leading support is not a single point.

use std::cmp::Ordering;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::element::WeylElement;
use crate::point::SupportPoint;
use crate::poly::UniPoly;
use crate::{gcd64, Error, Rat, Result};

/// A primitive integer pair `(rho, sigma)` with `rho + sigma >= 0`.
///
/// These index the weights `v_{rho,sigma}(i/l, j) = rho*i/l + sigma*j`. The
/// boundary directions `(1,-1)` and `(-1,1)` are the global minimum and
/// maximum of the order; the interior (`rho + sigma > 0`) is ordered by the
/// sign of the cross product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Direction {
    pub rho: i64,
    pub sigma: i64,
}

pub const DIR_MIN: Direction = Direction { rho: 1, sigma: -1 };
pub const DIR_MAX: Direction = Direction { rho: -1, sigma: 1 };

impl Direction {
    pub fn new(rho: i64, sigma: i64) -> Result<Self> {
        if gcd64(rho, sigma) != 1 || rho + sigma < 0 {
            return Err(Error::InvalidDirection(rho, sigma));
        }
        Ok(Direction { rho, sigma })
    }

    /// The primitive direction proportional to `(rho, sigma)`.
    pub fn primitive(rho: i64, sigma: i64) -> Result<Self> {
        let g = gcd64(rho, sigma);
        if g == 0 {
            return Err(Error::InvalidDirection(rho, sigma));
        }
        Direction::new(rho / g, sigma / g)
    }

    /// Member of the open set (both boundary rays excluded).
    pub fn is_interior(&self) -> bool {
        self.rho + self.sigma > 0
    }

    pub fn cross(&self, other: &Direction) -> i64 {
        self.rho * other.sigma - self.sigma * other.rho
    }

    /// A direction strictly between two distinct comparable directions
    /// (the mediant, reduced).
    pub fn mediant(&self, other: &Direction) -> Result<Direction> {
        Direction::primitive(self.rho + other.rho, self.sigma + other.sigma)
    }

    pub fn weight_of(&self, p: &SupportPoint) -> Rat {
        p.weight(self.rho, self.sigma)
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if *self == DIR_MIN || *other == DIR_MAX {
            return Ordering::Less;
        }
        if *self == DIR_MAX || *other == DIR_MIN {
            return Ordering::Greater;
        }
        // Interior pair: d1 <= d2 iff d1 x d2 >= 0; primitive distinct
        // directions in the open half-plane never have vanishing cross.
        match self.cross(other) {
            c if c > 0 => Ordering::Less,
            c if c < 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.rho, self.sigma)
    }
}

/// The two extreme corners of a leading support together with the global
/// `w`/`ovw` corners and their coefficients.
#[derive(Clone, Debug)]
pub struct CornerData {
    /// `st = w(leading part)`; absent only at direction `(1,-1)`.
    pub st: Option<SupportPoint>,
    /// `en = ovw(leading part)`; absent only at direction `(-1,1)`.
    pub en: Option<SupportPoint>,
    /// `w(P)`: on the maximal `(1,-1)`-weight line, the point of largest `x`.
    pub w: SupportPoint,
    /// `ovw(P)`: on the maximal `(-1,1)`-weight line, the point of largest `x`.
    pub ovw: SupportPoint,
    /// Coefficient at `w(P)`.
    pub lc: Rat,
    /// Coefficient at `ovw(P)`.
    pub ovlc: Rat,
}

impl WeylElement {
    /// `v_{rho,sigma}(P)`: the maximal weight over the support.
    pub fn degree(&self, d: &Direction) -> Result<Rat> {
        self.support()
            .map(|p| d.weight_of(p))
            .max()
            .ok_or(Error::ZeroElement)
    }

    /// The `(rho,sigma)`-leading term as a symbol (commutative) element.
    pub fn leading_part(&self, d: &Direction) -> Result<WeylElement> {
        let v = self.degree(d)?;
        let terms = self
            .terms()
            .filter(|(p, _)| d.weight_of(p) == v)
            .map(|(p, c)| (*p, c.clone()));
        WeylElement::from_terms(self.level(), true, terms)
    }

    pub fn is_homogeneous(&self, d: &Direction) -> bool {
        !self.is_zero() && self.leading_part(d).unwrap() == self.to_commutative()
    }

    /// `w(P)`: on the line of maximal `v_{1,-1}`, the support point with the
    /// largest first coordinate (ties broken per the max-over-x rule).
    pub fn w_corner(&self) -> Result<(SupportPoint, Rat)> {
        extreme_corner(self, 1, -1)
    }

    /// `ovw(P)`: same rule on the line of maximal `v_{-1,1}`.
    pub fn ovw_corner(&self) -> Result<(SupportPoint, Rat)> {
        extreme_corner(self, -1, 1)
    }

    /// `st`, `en`, `w`, `ovw` and the two extreme coefficients.
    ///
    /// `st` is only defined away from `(1,-1)` and `en` away from `(-1,1)`;
    /// requesting a defined subset is always safe, the undefined corner is
    /// reported as `None`.
    pub fn corners(&self, d: &Direction) -> Result<CornerData> {
        let lead = self.leading_part(d)?;
        let (w, lc) = self.w_corner()?;
        let (ovw, ovlc) = self.ovw_corner()?;
        let st = if *d == DIR_MIN { None } else { Some(lead.w_corner()?.0) };
        let en = if *d == DIR_MAX { None } else { Some(lead.ovw_corner()?.0) };
        Ok(CornerData { st, en, w, ovw, lc, ovlc })
    }

    /// `st_{rho,sigma}(P)`; errors at the boundary direction `(1,-1)`.
    pub fn st(&self, d: &Direction) -> Result<SupportPoint> {
        if *d == DIR_MIN {
            return Err(Error::BoundaryCorner(d.rho, d.sigma));
        }
        self.leading_part(d)?.w_corner().map(|(p, _)| p)
    }

    /// `en_{rho,sigma}(P)`; errors at the boundary direction `(-1,1)`.
    pub fn en(&self, d: &Direction) -> Result<SupportPoint> {
        if *d == DIR_MAX {
            return Err(Error::BoundaryCorner(d.rho, d.sigma));
        }
        self.leading_part(d)?.ovw_corner().map(|(p, _)| p)
    }

    /// Alignment `P ~ Q`: the determinant of `w(P)` and `w(Q)` vanishes.
    pub fn aligned(&self, other: &WeylElement) -> Result<bool> {
        let (wp, _) = self.w_corner()?;
        let (wq, _) = other.w_corner()?;
        Ok(wp.aligned_with(&wq))
    }

    /// The coefficient polynomial of the `(rho,sigma)`-leading term along
    /// its support line, plus the line's start `st`.
    ///
    /// With `st = (r/l, s)`, the leading part is
    /// `sum_i a_i x^(r/l - i*sigma/rho) y^(s+i)` and the result is
    /// `f = sum_i a_i x^i` with `a_0 != 0` and nonzero top coefficient;
    /// interior zeros are stored so indices match the `y`-offsets from `st`.
    /// Requires an interior direction with `sigma <= 0`.
    pub fn f_polynomial(&self, d: &Direction) -> Result<(UniPoly, SupportPoint)> {
        if d.sigma > 0 {
            return Err(Error::SigmaPositive(d.rho, d.sigma));
        }
        if !d.is_interior() {
            return Err(Error::InvalidDirection(d.rho, d.sigma));
        }
        let lead = self.leading_part(d)?;
        let st = lead.w_corner()?.0;
        let mut coeffs = Vec::new();
        for (p, c) in lead.terms() {
            let i = p.y - st.y;
            if i < 0 {
                return Err(Error::OffLattice);
            }
            // p must equal st + i * (-sigma/rho, 1)
            let expected_x = st.x() + crate::rat(-d.sigma * i, d.rho);
            if p.x() != expected_x {
                return Err(Error::OffLattice);
            }
            let i = i as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, Rat::zero());
            }
            coeffs[i] = c.clone();
        }
        Ok((UniPoly::new(coeffs), st))
    }

    /// The ordered direction set `Val(P)` of hull edges, ascending.
    pub fn valuation_set(&self) -> Result<Vec<Direction>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let l = self.level();
        let pts: Vec<(i128, i128)> = self
            .support()
            .map(|p| (p.xnum as i128, p.y as i128 * l as i128))
            .collect();
        let hull = convex_hull(pts);
        let mut dirs = Vec::new();
        let n = hull.len();
        if n < 2 {
            return Ok(dirs);
        }
        let edges: Vec<((i128, i128), (i128, i128))> = if n == 2 {
            vec![(hull[0], hull[1]), (hull[1], hull[0])]
        } else {
            (0..n).map(|i| (hull[i], hull[(i + 1) % n])).collect()
        };
        for (p, q) in edges {
            // Outward normal of a ccw edge, in unscaled coordinates
            // proportional to (l*dy, -dxnum); keep it when rho+sigma > 0.
            let (dx, dy) = (q.0 - p.0, q.1 - p.1);
            if dy - dx <= 0 {
                continue;
            }
            let (a, b) = (dy, -dx);
            let g = gcd128(a, b);
            dirs.push(Direction::new((a / g) as i64, (b / g) as i64)?);
        }
        dirs.sort();
        Ok(dirs)
    }

    /// `ovVal(P) = Val(P) + {(1,-1), (-1,1)}`.
    pub fn valuation_set_closed(&self) -> Result<Vec<Direction>> {
        let mut v = vec![DIR_MIN];
        v.extend(self.valuation_set()?);
        v.push(DIR_MAX);
        Ok(v)
    }

    /// `Succ` and `Pred` of a direction in `Val(P)`: the nearest members of
    /// `Val(P)` strictly above and strictly below `d`.
    pub fn succ_pred(&self, d: &Direction) -> Result<(Option<Direction>, Option<Direction>)> {
        if !d.is_interior() {
            return Err(Error::InvalidDirection(d.rho, d.sigma));
        }
        let val = self.valuation_set()?;
        let succ = val.iter().find(|v| **v > *d).copied();
        let pred = val.iter().rev().find(|v| **v < *d).copied();
        Ok((succ, pred))
    }
}

fn extreme_corner(e: &WeylElement, rho: i64, sigma: i64) -> Result<(SupportPoint, Rat)> {
    let d = Direction { rho, sigma };
    let v = e.degree(&d)?;
    let best = e
        .terms()
        .filter(|(p, _)| d.weight_of(p) == v)
        .max_by(|(p, _), (q, _)| {
            (p.xnum as i128 * q.level as i128).cmp(&(q.xnum as i128 * p.level as i128))
        })
        .expect("nonzero element has a corner");
    Ok((*best.0, best.1.clone()))
}

/// The unique interior direction with `v_{rho,sigma}(p) = 0`; the point must
/// avoid the diagonal `Z(1,1)`.
pub fn val_of_point(p: &SupportPoint) -> Result<Direction> {
    let r = p.xnum as i128;
    let ls = p.level as i128 * p.y as i128;
    if r == ls {
        return Err(Error::DiagonalPoint);
    }
    let g = gcd128(r, ls);
    let (rho, sigma) = if r > ls { (-ls / g, r / g) } else { (ls / g, -r / g) };
    Direction::new(rho as i64, sigma as i64)
}

/// A direction `(rho'', sigma'') < d` such that `v(p) > 0` holds on the whole
/// open direction window between the result and `d`; requires `v_d(p) > 0`.
pub fn window_below(p: &SupportPoint, d: &Direction) -> Result<Direction> {
    if !d.is_interior() {
        return Err(Error::InvalidDirection(d.rho, d.sigma));
    }
    if !d.weight_of(p).is_positive() {
        return Err(Error::Precondition(format!("v_{d}({p}) must be positive")));
    }
    let r = p.reduced();
    if crate::rat(r.xnum, r.level) >= crate::rat_int(r.y) {
        return Ok(DIR_MIN);
    }
    // (jl, -i)/gcd annihilates p, so every direction strictly above it and
    // below d keeps the weight positive.
    Direction::primitive(r.y * r.level, -r.xnum)
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Andrew's monotone chain; returns the hull counterclockwise with strictly
/// convex turns (collinear points dropped).
fn convex_hull(mut pts: Vec<(i128, i128)>) -> Vec<(i128, i128)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (i128, i128), a: (i128, i128), b: (i128, i128)| -> i128 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i128, i128)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i128, i128)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 1 && pts.len() > 1 {
        // All points collinear: keep the two extremes.
        return vec![pts[0], *pts.last().unwrap()];
    }
    lower
}

/// Builds the symbol element `x^(st) * f(x^(-sigma/rho) y)` from a line
/// polynomial: term `a_i` lands on `st + i*(-sigma/rho, 1)`.
pub fn element_from_line(
    f: &UniPoly,
    st: &SupportPoint,
    d: &Direction,
    level: i64,
) -> Result<WeylElement> {
    if d.sigma > 0 {
        return Err(Error::SigmaPositive(d.rho, d.sigma));
    }
    let mut terms = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let step_num = -d.sigma * i as i64;
        if (step_num * level) % d.rho != 0 {
            return Err(Error::OffLattice);
        }
        let p = st.at_level(level)?;
        let q = SupportPoint::new(p.xnum + step_num * level / d.rho, level, p.y + i as i64);
        terms.push((q, c.clone()));
    }
    WeylElement::from_terms(level, true, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::WeylElement;
    use crate::{rat, rat_int};
    use num::One;

    fn dir(rho: i64, sigma: i64) -> Direction {
        Direction::new(rho, sigma).unwrap()
    }

    fn mono(xnum: i64, level: i64, y: i64) -> WeylElement {
        WeylElement::monomial(xnum, level, y, Rat::one(), false)
    }

    #[test]
    fn direction_order() {
        assert!(dir(5, -3) < dir(3, -1));
        assert!(DIR_MIN < dir(1, 0));
        assert!(dir(1, 0) < DIR_MAX);
        assert_eq!(dir(2, -1).cmp(&dir(2, -1)), Ordering::Equal);
        assert!(dir(3, -1) < dir(1, 0));
        assert!(dir(1, 0) < dir(1, 1));
        assert!(dir(1, 1) < dir(0, 1));
        assert!(Direction::new(2, -4).is_err());
        assert!(Direction::new(1, -2).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(mono(9, 1, 21).degree(&dir(3, -1)).unwrap(), rat_int(6));
        assert_eq!(mono(1, 1, 1).degree(&dir(1, 1)).unwrap(), rat_int(2));
        assert_eq!(mono(-1, 2, 0).degree(&dir(1, 0)).unwrap(), rat(-1, 2));
        assert!(WeylElement::zero(1, false).degree(&dir(1, 0)).is_err());
    }

    #[test]
    fn leading_part_picks_max() {
        // x^3 y + x y^2 at (1,1): weights 4 and 3.
        let p = mono(3, 1, 1).add(&mono(1, 1, 2));
        let lead = p.leading_part(&dir(1, 1)).unwrap();
        assert_eq!(lead, mono(3, 1, 1).symbol_map());
        let m = mono(2, 1, 5);
        assert_eq!(m.leading_part(&dir(1, 0)).unwrap(), m.symbol_map());
    }

    #[test]
    fn corners_example() {
        // Support {(1,0), (4,6)} at direction (2,-1): both on the weight-2 line.
        let p = mono(1, 1, 0).add(&mono(4, 1, 6));
        let c = p.corners(&dir(2, -1)).unwrap();
        assert_eq!(c.st.unwrap(), SupportPoint::new(1, 1, 0));
        assert_eq!(c.en.unwrap(), SupportPoint::new(4, 1, 6));
        let m = mono(3, 1, 2);
        let cm = m.corners(&dir(1, 0)).unwrap();
        assert_eq!(cm.st.unwrap(), SupportPoint::new(3, 1, 2));
        assert_eq!(cm.en.unwrap(), SupportPoint::new(3, 1, 2));
        assert!(m.st(&DIR_MIN).is_err());
        assert!(m.en(&DIR_MAX).is_err());
    }

    #[test]
    fn alignment() {
        assert!(mono(2, 1, 1).aligned(&mono(4, 1, 2)).unwrap());
        assert!(!mono(1, 1, 0).aligned(&mono(0, 1, 1)).unwrap());
        // w = (0,0) is aligned with everything.
        assert!(mono(0, 1, 0).aligned(&mono(5, 1, 3)).unwrap());
    }

    #[test]
    fn f_polynomial_example() {
        // mu0 x y + mu1 x^2 y^4 at (3,-1): f = mu0 + mu1 x^3.
        let p = mono(1, 1, 1).scale(&rat_int(5)).add(&mono(2, 1, 4).scale(&rat_int(7)));
        let (f, st) = p.f_polynomial(&dir(3, -1)).unwrap();
        assert_eq!(st, SupportPoint::new(1, 1, 1));
        assert_eq!(f.coeffs().to_vec(), vec![rat_int(5), rat_int(0), rat_int(0), rat_int(7)]);
        // Reconstruction identity.
        let back = element_from_line(&f, &st, &dir(3, -1), 3).unwrap();
        assert_eq!(back, p.symbol_map());
        let (fc, _) = mono(4, 2, 1).f_polynomial(&dir(1, 0)).unwrap();
        assert!(fc.is_constant());
    }

    #[test]
    fn val_examples() {
        assert_eq!(val_of_point(&SupportPoint::new(1, 1, 3)).unwrap(), dir(3, -1));
        assert_eq!(val_of_point(&SupportPoint::new(3, 1, 6)).unwrap(), dir(2, -1));
        assert!(val_of_point(&SupportPoint::new(1, 1, 1)).is_err());
        assert_eq!(val_of_point(&SupportPoint::new(0, 1, 4)).unwrap(), dir(1, 0));
        assert_eq!(val_of_point(&SupportPoint::new(-3, 1, 0)).unwrap(), dir(0, 1));
    }

    #[test]
    fn valuation_set_examples() {
        // Support {(2,0), (0,1)}: one edge with val (1,2).
        let p = mono(2, 1, 0).add(&mono(0, 1, 1));
        assert_eq!(p.valuation_set().unwrap(), vec![dir(1, 2)]);
        assert!(mono(5, 1, 2).valuation_set().unwrap().is_empty());
        // A diagonal edge contributes nothing.
        let q = mono(0, 1, 0).add(&mono(1, 1, 1));
        assert!(q.valuation_set().unwrap().is_empty());
    }

    #[test]
    fn succ_pred_handoff() {
        // Support {(2,0), (1,2), (0,3)}: hull edges with vals (2,-1) and (3,-1)... compute.
        let p = mono(2, 1, 0).add(&mono(1, 1, 2)).add(&mono(0, 1, 3));
        let val = p.valuation_set().unwrap();
        assert_eq!(val.len(), 2);
        // Just below the upper edge's direction: Succ is that edge's val and
        // the en/st corners hand off.
        let d = val[1];
        let below = Direction::primitive(d.rho * 2 + 1, d.sigma * 2).unwrap();
        assert!(below < d && below > val[0]);
        let (succ, pred) = p.succ_pred(&below).unwrap();
        assert_eq!(succ.unwrap(), d);
        assert_eq!(pred.unwrap(), val[0]);
        assert_eq!(p.en(&below).unwrap(), p.st(&d).unwrap());
        let m = mono(3, 1, 1);
        assert_eq!(m.succ_pred(&dir(1, 0)).unwrap(), (None, None));
    }

    #[test]
    fn window_below_examples() {
        assert_eq!(window_below(&SupportPoint::new(1, 1, 2), &dir(1, 0)).unwrap(), dir(2, -1));
        assert_eq!(window_below(&SupportPoint::new(3, 1, 2), &dir(1, 1)).unwrap(), DIR_MIN);
        assert!(window_below(&SupportPoint::new(-5, 1, 1), &dir(1, 0)).is_err());
    }
}
