//! Exact binomial coefficients and their base-2 logarithms.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `C(n, j)` for `j = 0..=n`, by the multiplicative recurrence.
pub fn binomial_row(n: u32) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * (n - j) / (j + 1);
        row.push(c.clone());
    }
    row
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for j in 0..k {
        c = c * (n - j) / (j + 1);
    }
    c
}

/// `Σ_{j >= from} row[j]`.
pub fn tail_sum(row: &[BigUint], from: usize) -> BigUint {
    row.iter().skip(from).sum()
}

/// `log2(v)` from the top 64 bits; `-inf` for zero.
pub fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return v.to_u64().map(|x| (x as f64).log2()).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64
}

/// `num / den` as a float, keeping 64 significant bits of the quotient.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        (num >> (-shift) as u64) / den
    };
    q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let row = binomial_row(10);
        let as_u64: Vec<u64> = row.iter().map(|c| c.to_u64().unwrap()).collect();
        assert_eq!(as_u64, vec![1, 10, 45, 120, 210, 252, 210, 120, 45, 10, 1]);
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(tail_sum(&row, 7), BigUint::from(176u32));
    }

    #[test]
    fn pascal_rule_holds_at_scale() {
        let upper = binomial_row(1000);
        let lower = binomial_row(999);
        for j in 1..1000 {
            assert_eq!(upper[j], &lower[j - 1] + &lower[j]);
        }
        let total: BigUint = upper.iter().sum();
        assert_eq!(total, BigUint::one() << 1000u32);
    }

    #[test]
    fn logs_and_ratios() {
        assert_eq!(log2_big(&(BigUint::one() << 200u32)), 200.0);
        assert!((log2_big(&BigUint::from(1000u32)) - 1000f64.log2()).abs() < 1e-12);
        let a = BigUint::from(3u32) << 500u32;
        let b = BigUint::from(7u32) << 500u32;
        assert!((ratio_to_f64(&a, &b) - 3.0 / 7.0).abs() < 1e-15);
        assert!(
            (ratio_to_f64(&binomial(1000, 481), &binomial(1000, 482)) - 482.0 / 519.0).abs()
                < 1e-14
        );
    }
}
