//! Exhaustive enumeration of union-closed families over tiny universes.
//!
//! A candidate family over `[n]` is a bit pattern over the `2^n` masks, so
//! `n = 4` has `2^16` candidates. Candidates are visited in increasing
//! pattern order and only non-empty union-closed ones are yielded.

use super::GeneratorError;
use crate::setfamily::SetFamily;

pub const MAX_ENUMERATION_UNIVERSE: u32 = 4;

pub struct UnionClosedFamilies {
    n: u32,
    include_empty_set: bool,
    next: u64,
    end: u64,
}

/// Every non-empty union-closed family over `[n]`, `n <= 4`. With
/// `include_empty_set = false`, families containing `∅` are skipped.
pub fn enumerate_union_closed(
    n: u32,
    include_empty_set: bool,
) -> Result<UnionClosedFamilies, GeneratorError> {
    if n == 0 || n > MAX_ENUMERATION_UNIVERSE {
        return Err(GeneratorError::UniverseTooLarge {
            n,
            limit: MAX_ENUMERATION_UNIVERSE,
        });
    }
    Ok(UnionClosedFamilies {
        n,
        include_empty_set,
        next: 1,
        end: 1u64 << (1u32 << n),
    })
}

/// Number of families [`enumerate_union_closed`] yields.
pub fn count_union_closed(n: u32, include_empty_set: bool) -> Result<usize, GeneratorError> {
    Ok(enumerate_union_closed(n, include_empty_set)?.count())
}

fn pattern_is_union_closed(pattern: u64) -> bool {
    let mut a_bits = pattern;
    while a_bits != 0 {
        let a = a_bits.trailing_zeros();
        let mut b_bits = a_bits & (a_bits - 1);
        while b_bits != 0 {
            let b = b_bits.trailing_zeros();
            if pattern >> (a | b) & 1 == 0 {
                return false;
            }
            b_bits &= b_bits - 1;
        }
        a_bits &= a_bits - 1;
    }
    true
}

impl Iterator for UnionClosedFamilies {
    type Item = SetFamily;

    fn next(&mut self) -> Option<SetFamily> {
        while self.next < self.end {
            let pattern = self.next;
            self.next += 1;
            if !self.include_empty_set && pattern & 1 == 1 {
                continue;
            }
            if pattern_is_union_closed(pattern) {
                let masks: Vec<u64> = (0..64u64).filter(|&m| pattern >> m & 1 == 1).collect();
                return Some(SetFamily::from_sorted_unchecked(self.n, masks));
            }
        }
        None
    }
}
