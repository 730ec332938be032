//! Closed intervals with outward rounding.
//!
//! Each arithmetic result is widened by one ulp on each side. Library
//! transcendentals carry no directed-rounding guarantee, so every enclosure of
//! `log`, `h` or `g` is additionally widened by [`TRANSCENDENTAL_SLACK`].

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{binary_entropy_unchecked, g_unchecked, log2_one_minus};

/// Absolute widening applied to every transcendental endpoint.
pub const TRANSCENDENTAL_SLACK: f64 = 4e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    fn rounded(lo: f64, hi: f64) -> Self {
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn widen(&self, slack: f64) -> Self {
        Interval::rounded(self.lo - slack, self.hi + slack)
    }

    pub fn split(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval::new(self.lo, m), Interval::new(m, self.hi))
    }

    /// Symmetric interval `[-r, r]`.
    pub fn radius(r: f64) -> Self {
        Interval { lo: -r, hi: r }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::rounded(self.lo + o.lo, self.hi + o.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::rounded(self.lo - o.hi, self.hi - o.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let p = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::rounded(lo, hi)
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Panics if the divisor contains zero.
    fn div(self, o: Interval) -> Interval {
        assert!(
            o.lo > 0.0 || o.hi < 0.0,
            "division by interval containing 0"
        );
        let q = [
            self.lo / o.lo,
            self.lo / o.hi,
            self.hi / o.lo,
            self.hi / o.hi,
        ];
        let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::rounded(lo, hi)
    }
}

/// Endpoint values of a monotone function; library rounding can swap
/// them on very narrow arguments.
fn ordered(a: f64, b: f64) -> Interval {
    Interval::new(a.min(b), a.max(b))
}

/// Enclosure of `h` on a subinterval of `[0, 1]`: increasing up to 1/2,
/// decreasing after, peak value 1.
pub fn entropy(x: Interval) -> Interval {
    let (a, b) = (x.lo.max(0.0), x.hi.min(1.0));
    let (ha, hb) = (binary_entropy_unchecked(a), binary_entropy_unchecked(b));
    let (lo, hi) = if b <= 0.5 {
        (ha, hb)
    } else if a >= 0.5 {
        (hb, ha)
    } else {
        (ha.min(hb), 1.0)
    };
    let w = ordered(lo, hi).widen(TRANSCENDENTAL_SLACK);
    Interval::new(w.lo.max(0.0), w.hi.min(1.0))
}

/// Enclosure of the decreasing function `g(t) = h(t)/t` on a subinterval of `(0, 1)`.
pub fn g(t: Interval) -> Interval {
    debug_assert!(t.lo > 0.0 && t.hi < 1.0);
    ordered(g_unchecked(t.hi), g_unchecked(t.lo)).widen(TRANSCENDENTAL_SLACK)
}

/// Enclosure of the decreasing function `log2(1 − t)`.
pub fn log2_one_minus_iv(t: Interval) -> Interval {
    ordered(log2_one_minus(t.hi), log2_one_minus(t.lo)).widen(TRANSCENDENTAL_SLACK)
}

/// Enclosure of `g'(t) = log2(1 − t)/t²`.
pub fn g_prime(t: Interval) -> Interval {
    debug_assert!(t.lo > 0.0 && t.hi < 1.0);
    log2_one_minus_iv(t) / (t * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_on_increasing_segment() {
        let e = entropy(Interval::new(0.2, 0.3));
        let (h2, h3) = (binary_entropy_unchecked(0.2), binary_entropy_unchecked(0.3));
        assert!(e.lo <= h2 && h3 <= e.hi);
        assert!((h2 - 0.72193).abs() < 1e-5 && (h3 - 0.88129).abs() < 1e-5);
        assert!(e.width() < h3 - h2 + 1e-11);
    }

    #[test]
    fn entropy_across_peak() {
        let e = entropy(Interval::new(0.4, 0.7));
        assert_eq!(e.hi, 1.0);
        assert!(e.lo <= binary_entropy_unchecked(0.7));
    }

    #[test]
    fn arithmetic_is_outward() {
        let a = Interval::new(0.1, 0.2);
        let s = a + a;
        assert!(s.lo < 0.2 && s.hi > 0.4);
        let p = Interval::new(-1.0, 2.0) * Interval::new(-3.0, 0.5);
        assert!(p.lo <= -6.0 && p.hi >= 3.0);
        let q = Interval::new(1.0, 2.0) / Interval::new(4.0, 8.0);
        assert!(q.contains(0.125) && q.contains(0.5));
        assert!((Interval::new(1.0, 2.0) - Interval::new(0.5, 1.0)).contains(0.0));
    }

    #[test]
    fn g_and_derivative_enclose_points() {
        let t = Interval::new(0.3, 0.31);
        let gi = g(t);
        let gp = g_prime(t);
        for k in 0..=10 {
            let x = 0.3 + 0.001 * k as f64;
            assert!(gi.contains(g_unchecked(x)));
            assert!(gp.contains(log2_one_minus(x) / (x * x)));
        }
    }
}
