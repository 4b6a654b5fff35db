//! Lattice points `(xnum/level, y)` of `(1/l)Z x Z`, the index set for
//! supports of elements of `W^(l)` and `L^(l)`.

use std::cmp::Ordering;

use num::BigInt;

use crate::{gcd64, lcm64, Error, Rat, Result};

/// A point `(xnum/level, y)` in `(1/l)Z x Z`.
///
/// Two points are equal iff their reduced coordinates agree, regardless of
/// the level they are stored at; `(1/2, 3)` at level 2 equals `(3/6, 3)` at
/// level 6.
#[derive(Clone, Copy, Debug)]
pub struct SupportPoint {
    pub xnum: i64,
    pub level: i64,
    pub y: i64,
}

impl SupportPoint {
    pub fn new(xnum: i64, level: i64, y: i64) -> Self {
        assert!(level >= 1, "level must be positive");
        SupportPoint { xnum, level, y }
    }

    /// The same point with `gcd(|xnum|, level) = 1`.
    pub fn reduced(&self) -> SupportPoint {
        let g = gcd64(self.xnum, self.level).max(1);
        SupportPoint { xnum: self.xnum / g, level: self.level / g, y: self.y }
    }

    /// Rewrites the point at a coarser level; fails if the reduced
    /// denominator does not divide `level`.
    pub fn at_level(&self, level: i64) -> Result<SupportPoint> {
        let r = self.reduced();
        if level % r.level != 0 {
            return Err(Error::LevelNotDivisible { child: r.level, parent: level });
        }
        Ok(SupportPoint { xnum: r.xnum * (level / r.level), level, y: r.y })
    }

    pub fn x(&self) -> Rat {
        crate::rat(self.xnum, self.level)
    }

    pub fn y_rat(&self) -> Rat {
        crate::rat_int(self.y)
    }

    /// `v_{rho,sigma}(p) = rho*x + sigma*y`.
    pub fn weight(&self, rho: i64, sigma: i64) -> Rat {
        Rat::new(
            BigInt::from(rho as i128 * self.xnum as i128 + sigma as i128 * self.y as i128 * self.level as i128),
            BigInt::from(self.level),
        )
    }

    /// Cross product `self x other = x1*y2 - y1*x2`.
    pub fn cross(&self, other: &SupportPoint) -> Rat {
        let a = self.xnum as i128 * (other.y as i128 * other.level as i128)
            - (self.y as i128 * self.level as i128) * other.xnum as i128;
        Rat::new(BigInt::from(a), BigInt::from(self.level as i128 * other.level as i128))
    }

    pub fn add(&self, other: &SupportPoint) -> SupportPoint {
        let l = lcm64(self.level, other.level);
        SupportPoint {
            xnum: self.xnum * (l / self.level) + other.xnum * (l / other.level),
            level: l,
            y: self.y + other.y,
        }
    }

    pub fn sub(&self, other: &SupportPoint) -> SupportPoint {
        let l = lcm64(self.level, other.level);
        SupportPoint {
            xnum: self.xnum * (l / self.level) - other.xnum * (l / other.level),
            level: l,
            y: self.y - other.y,
        }
    }

    pub fn scale(&self, c: &Rat) -> Option<SupportPoint> {
        let xn = BigInt::from(self.xnum) * c.numer();
        let lv = BigInt::from(self.level) * c.denom();
        let yn = BigInt::from(self.y) * c.numer();
        if (&yn % c.denom()) != BigInt::from(0) {
            return None;
        }
        let p = SupportPoint {
            xnum: i64::try_from(xn).ok()?,
            level: i64::try_from(lv).ok()?,
            y: i64::try_from(yn / c.denom()).ok()?,
        };
        Some(p.reduced())
    }

    pub fn is_origin(&self) -> bool {
        self.xnum == 0 && self.y == 0
    }

    /// True iff the 2x2 determinant of the two points vanishes.
    pub fn aligned_with(&self, other: &SupportPoint) -> bool {
        use num::Zero;
        self.cross(other).is_zero()
    }
}

impl PartialEq for SupportPoint {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.reduced(), other.reduced());
        a.xnum == b.xnum && a.level == b.level && a.y == b.y
    }
}

impl Eq for SupportPoint {}

impl PartialOrd for SupportPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SupportPoint {
    /// Lexicographic by `(y, x)`; serialization reverses this for the
    /// canonical descending term order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.y.cmp(&other.y).then_with(|| {
            let lhs = self.xnum as i128 * other.level as i128;
            let rhs = other.xnum as i128 * self.level as i128;
            lhs.cmp(&rhs)
        })
    }
}

impl std::hash::Hash for SupportPoint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.xnum.hash(state);
        r.level.hash(state);
        r.y.hash(state);
    }
}

impl std::fmt::Display for SupportPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let r = self.reduced();
        if r.level == 1 {
            write!(f, "({}, {})", r.xnum, r.y)
        } else {
            write!(f, "({}/{}, {})", r.xnum, r.level, r.y)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_ignores_level() {
        let a = SupportPoint::new(1, 2, 3);
        let b = SupportPoint::new(3, 6, 3);
        assert_eq!(a, b);
        assert_ne!(a, SupportPoint::new(1, 3, 3));
    }

    #[test]
    fn weight_and_cross() {
        let p = SupportPoint::new(9, 1, 21);
        assert_eq!(p.weight(3, -1), crate::rat_int(6));
        let q = SupportPoint::new(4, 2, 1);
        assert_eq!(q.weight(1, 0), crate::rat(2, 1));
        assert!(SupportPoint::new(2, 1, 1).aligned_with(&SupportPoint::new(4, 1, 2)));
        assert!(!SupportPoint::new(1, 1, 0).aligned_with(&SupportPoint::new(0, 1, 1)));
    }

    #[test]
    fn at_level_checks_divisibility() {
        let p = SupportPoint::new(1, 2, 0);
        assert_eq!(p.at_level(6).unwrap().xnum, 3);
        assert!(p.at_level(3).is_err());
    }
}
