use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::poly::{rational_from_f64, Rational};

#[inline]
fn down(x: f64) -> f64 {
    if x.is_finite() {
        x.next_down()
    } else {
        x
    }
}

#[inline]
fn up(x: f64) -> f64 {
    if x.is_finite() {
        x.next_up()
    } else {
        x
    }
}

/// Closed interval `[lo, hi]` of doubles.
///
/// Every arithmetic result is widened by one ulp on each side, so the exact
/// real result of the operation on any members of the operands lies inside.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Panics unless `lo <= hi`.
    #[inline]
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    #[inline]
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    /// Tightest double interval containing the rational `r`.
    pub fn from_rational(r: &Rational) -> Self {
        let f = crate::poly::rational_to_f64(r);
        if !f.is_finite() {
            return if r.is_negative() {
                Self::new(f64::NEG_INFINITY, f64::MIN)
            } else {
                Self::new(f64::MAX, f64::INFINITY)
            };
        }
        let mut lo = f;
        while lo.is_finite() && rational_from_f64(lo) > *r {
            lo = lo.next_down();
        }
        let mut hi = f;
        while hi.is_finite() && rational_from_f64(hi) < *r {
            hi = hi.next_up();
        }
        Self { lo, hi }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// A double inside the interval, near its center.
    #[inline]
    pub fn mid(&self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        rational_from_f64(self.lo) <= *r && *r <= rational_from_f64(self.hi)
    }

    #[inline]
    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    #[inline]
    pub fn subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    #[inline]
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    #[inline]
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    #[inline]
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { lo: self.lo, hi: m }, Interval { lo: m, hi: self.hi })
    }

    /// `x²`, tight at zero.
    #[inline]
    pub fn sqr(self) -> Interval {
        self.powi(2)
    }

    pub fn powi(self, n: u32) -> Interval {
        match n {
            0 => Interval::point(1.0),
            1 => self,
            _ if n % 2 == 0 => {
                let a = self.lo.abs();
                let b = self.hi.abs();
                if self.contains_zero() {
                    Interval {
                        lo: 0.0,
                        hi: pow_up(a.max(b), n),
                    }
                } else {
                    Interval {
                        lo: pow_down(a.min(b), n),
                        hi: pow_up(a.max(b), n),
                    }
                }
            }
            _ => {
                let lo = if self.lo >= 0.0 {
                    pow_down(self.lo, n)
                } else {
                    -pow_up(-self.lo, n)
                };
                let hi = if self.hi >= 0.0 {
                    pow_up(self.hi, n)
                } else {
                    -pow_down(-self.hi, n)
                };
                Interval { lo, hi }
            }
        }
    }

    /// Outward-rounded square root of the nonnegative part; `None` if the
    /// interval is entirely negative.
    pub fn sqrt(self) -> Option<Interval> {
        if self.hi < 0.0 {
            return None;
        }
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            down(self.lo.sqrt()).max(0.0)
        };
        Some(Interval {
            lo,
            hi: up(self.hi.sqrt()),
        })
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval {
                lo: 0.0,
                hi: self.hi.max(-self.lo),
            }
        }
    }

    /// Largest absolute value of a member.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }
}

fn pow_down(a: f64, n: u32) -> f64 {
    let mut r = a;
    for _ in 1..n {
        r = down(r * a).max(0.0);
    }
    r
}

fn pow_up(a: f64, n: u32) -> f64 {
    let mut r = a;
    for _ in 1..n {
        r = up(r * a);
    }
    r
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: down(self.lo + rhs.lo),
            hi: up(self.hi + rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: down(self.lo - rhs.hi),
            hi: up(self.hi - rhs.lo),
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        if self.lo >= 0.0 && rhs.lo >= 0.0 {
            return Interval {
                lo: down(self.lo * rhs.lo).max(0.0),
                hi: up(self.hi * rhs.hi),
            };
        }
        let a = self.lo * rhs.lo;
        let b = self.lo * rhs.hi;
        let c = self.hi * rhs.lo;
        let d = self.hi * rhs.hi;
        let lo = a.min(b).min(c).min(d);
        let hi = a.max(b).max(c).max(d);
        // 0 * inf yields NaN; such intervals are unbounded anyway.
        if lo.is_nan() || hi.is_nan() {
            return Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            };
        }
        Interval {
            lo: down(lo),
            hi: up(hi),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}
