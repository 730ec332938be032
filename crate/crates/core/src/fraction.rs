use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exact non-negative rational kept as raw counts.
///
/// The denominator is the natural count the value came from (|F| for
/// frequencies, |F|² for pair fractions) and is never reduced, so reports show
/// the counts that produced them. Comparison and equality are by value.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Fraction { num, den }
    }

    pub fn zero(den: u64) -> Self {
        Fraction::new(0, den)
    }

    /// `1 - self`, on the same denominator.
    pub fn complement(self) -> Self {
        debug_assert!(self.num <= self.den);
        Fraction::new(self.den - self.num, self.den)
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Reduced to lowest terms.
    pub fn reduced(self) -> Self {
        let g = num_integer::gcd(self.num, self.den).max(1);
        Fraction::new(self.num / g, self.den / g)
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Fraction {}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
