//! Finite set systems over `[n]` stored as bit masks.
//!
//! Element `j` (1-based) is bit `j - 1` of a mask. Families are kept sorted
//! by mask value and free of duplicates, so two families are equal exactly
//! when their mask vectors are.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::exec;
use crate::fraction::Fraction;

/// Largest supported universe; one set fits in a machine word.
pub const MAX_UNIVERSE: u32 = 63;

/// Default cap on the size of a computed union closure.
pub const DEFAULT_CLOSURE_CAP: usize = 5_000_000;

/// Universes up to this size get a dense bitmap membership index.
const DENSE_INDEX_LIMIT: u32 = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("line {line}: malformed header, expected `n=<int>`")]
    BadHeader { line: usize },
    #[error("missing `n=<int>` header")]
    MissingHeader,
    #[error("universe size {0} outside 1..={MAX_UNIVERSE}")]
    UniverseTooLarge(u64),
    #[error("line {line}: expected {expected} characters, found {found}")]
    WrongLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: invalid character {ch:?}, only 0 and 1 allowed")]
    BadChar { line: usize, ch: char },
    #[error("line {line}: duplicate set")]
    Duplicate { line: usize },
    #[error("mask {mask:#x} uses bits outside a universe of size {n}")]
    MaskOutOfRange { mask: u64, n: u32 },
    #[error("operation requires a non-empty family")]
    Empty,
    #[error("union closure exceeds the cap of {cap} sets")]
    ClosureCap { cap: usize },
}

/// A deduplicated, canonically ordered family of subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    universe: u32,
    sets: Vec<u64>,
}

/// Exact per-element membership counts over a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrequencyProfile {
    pub family_size: u64,
    /// `counts[i]` is the number of members containing element `i + 1`.
    pub counts: Vec<u64>,
    /// 0-based index of the first element attaining the maximum count.
    pub argmax: usize,
}

impl FrequencyProfile {
    pub fn freq(&self, i: usize) -> Fraction {
        Fraction::new(self.counts[i], self.family_size)
    }

    pub fn max_freq(&self) -> Fraction {
        Fraction::new(
            self.counts.get(self.argmax).copied().unwrap_or(0),
            self.family_size,
        )
    }

    /// `min_i Pr[A_i = 0]` for `A` uniform on the family.
    pub fn p_min_zero(&self) -> Fraction {
        self.max_freq().complement()
    }
}

fn universe_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_universe(n: u64) -> Result<u32, FamilyError> {
    if n == 0 || n > MAX_UNIVERSE as u64 {
        return Err(FamilyError::UniverseTooLarge(n));
    }
    Ok(n as u32)
}

impl SetFamily {
    /// Builds a family, sorting and dropping duplicate masks.
    pub fn new(universe: u32, masks: impl IntoIterator<Item = u64>) -> Result<Self, FamilyError> {
        let universe = check_universe(universe as u64)?;
        let full = universe_mask(universe);
        let mut sets: Vec<u64> = masks.into_iter().collect();
        if let Some(&bad) = sets.iter().find(|&&m| m & !full != 0) {
            return Err(FamilyError::MaskOutOfRange {
                mask: bad,
                n: universe,
            });
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(SetFamily { universe, sets })
    }

    /// Builds a family from masks already known to be sorted, unique and in range.
    pub(crate) fn from_sorted_unchecked(universe: u32, sets: Vec<u64>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        SetFamily { universe, sets }
    }

    /// Family of all `2^n` subsets of `[n]`.
    pub fn power_set(universe: u32) -> Result<Self, FamilyError> {
        let universe = check_universe(universe as u64)?;
        if universe > DENSE_INDEX_LIMIT {
            return Err(FamilyError::ClosureCap {
                cap: 1 << DENSE_INDEX_LIMIT,
            });
        }
        Ok(SetFamily {
            universe,
            sets: (0..=universe_mask(universe)).collect(),
        })
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn sets(&self) -> &[u64] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.sets.binary_search(&mask).is_ok()
    }

    pub(crate) fn index(&self) -> MembershipIndex<'_> {
        MembershipIndex::new(self)
    }

    fn require_nonempty(&self) -> Result<(), FamilyError> {
        if self.sets.is_empty() {
            Err(FamilyError::Empty)
        } else {
            Ok(())
        }
    }

    /// True iff the union of every ordered pair of members is a member.
    pub fn is_union_closed(&self) -> Result<bool, FamilyError> {
        self.require_nonempty()?;
        let idx = self.index();
        let sets = &self.sets;
        // (A, A) and (A, B) vs (B, A) are redundant; scan i < j only.
        Ok(exec::all_range(0..sets.len(), |i| {
            let a = sets[i];
            sets[i + 1..].iter().all(|&b| idx.contains(a | b))
        }))
    }

    /// Number of ordered pairs `(A, B)`, with replacement, whose union is a member.
    pub fn closed_pair_count(&self) -> Result<u64, FamilyError> {
        self.require_nonempty()?;
        let idx = self.index();
        let sets = &self.sets;
        let off_diagonal = exec::sum_range(0..sets.len(), |i| {
            let a = sets[i];
            sets[i + 1..]
                .iter()
                .filter(|&&b| idx.contains(a | b))
                .count() as u64
        });
        Ok(2 * off_diagonal + sets.len() as u64)
    }

    /// Fraction of ordered pairs with replacement whose union lies in the family.
    pub fn closure_fraction(&self) -> Result<Fraction, FamilyError> {
        let good = self.closed_pair_count()?;
        let m = self.sets.len() as u64;
        Ok(Fraction::new(good, m * m))
    }

    /// Fraction of unordered pairs of distinct members whose union lies in the
    /// family. `None` for a single-member family.
    pub fn unordered_closure_fraction(&self) -> Result<Option<Fraction>, FamilyError> {
        let good = self.closed_pair_count()?;
        let m = self.sets.len() as u64;
        if m < 2 {
            return Ok(None);
        }
        Ok(Some(Fraction::new((good - m) / 2, m * (m - 1) / 2)))
    }

    pub fn element_frequencies(&self) -> Result<FrequencyProfile, FamilyError> {
        self.require_nonempty()?;
        let n = self.universe as usize;
        let mut counts = vec![0u64; n];
        for &s in &self.sets {
            let mut bits = s;
            while bits != 0 {
                counts[bits.trailing_zeros() as usize] += 1;
                bits &= bits - 1;
            }
        }
        let mut argmax = 0;
        for (i, &c) in counts.iter().enumerate() {
            if c > counts[argmax] {
                argmax = i;
            }
        }
        Ok(FrequencyProfile {
            family_size: self.sets.len() as u64,
            counts,
            argmax,
        })
    }

    /// Smallest union-closed family containing `self`, with the default cap.
    pub fn union_closure(&self) -> Result<SetFamily, FamilyError> {
        self.union_closure_capped(DEFAULT_CLOSURE_CAP)
    }

    /// Worklist fixed point: every new set is joined with every known set.
    pub fn union_closure_capped(&self, cap: usize) -> Result<SetFamily, FamilyError> {
        self.require_nonempty()?;
        if self.sets.len() > cap {
            return Err(FamilyError::ClosureCap { cap });
        }
        let mut seen: HashSet<u64> = self.sets.iter().copied().collect();
        let mut all: Vec<u64> = self.sets.clone();
        let mut next = 0;
        while next < all.len() {
            let a = all[next];
            let known = all.len();
            for j in 0..known {
                let u = a | all[j];
                if seen.insert(u) {
                    if all.len() >= cap {
                        return Err(FamilyError::ClosureCap { cap });
                    }
                    all.push(u);
                }
            }
            next += 1;
        }
        all.sort_unstable();
        Ok(SetFamily::from_sorted_unchecked(self.universe, all))
    }

    /// Serializes in `.uc` format.
    pub fn to_uc(&self) -> String {
        let mut out = String::with_capacity(8 + self.sets.len() * (self.universe as usize + 1));
        let _ = writeln!(out, "n={}", self.universe);
        for &s in &self.sets {
            out.push_str(&mask_to_bits(s, self.universe));
            out.push('\n');
        }
        out
    }
}

/// Bit-string for a mask: character `j` is membership of element `j`.
pub fn mask_to_bits(mask: u64, n: u32) -> String {
    (0..n)
        .map(|j| if mask >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses the `.uc` text format.
///
/// The first non-comment line is `n=<int>`; each later non-comment line is
/// exactly `n` characters over `{0,1}`. `#` starts a comment. Blank lines
/// are skipped; CRLF endings are accepted.
pub fn parse_family(text: &str) -> Result<SetFamily, FamilyError> {
    let mut universe: Option<u32> = None;
    let mut seen = HashSet::new();
    let mut sets = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some(n) = universe else {
            let value = line
                .strip_prefix("n=")
                .ok_or(FamilyError::BadHeader { line: line_no })?;
            let n: u64 = value
                .trim()
                .parse()
                .map_err(|_| FamilyError::BadHeader { line: line_no })?;
            universe = Some(check_universe(n)?);
            continue;
        };
        let found = line.chars().count();
        if found != n as usize {
            return Err(FamilyError::WrongLength {
                line: line_no,
                expected: n as usize,
                found,
            });
        }
        let mut mask = 0u64;
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => mask |= 1 << j,
                _ => return Err(FamilyError::BadChar { line: line_no, ch }),
            }
        }
        if !seen.insert(mask) {
            return Err(FamilyError::Duplicate { line: line_no });
        }
        sets.push(mask);
    }
    let n = universe.ok_or(FamilyError::MissingHeader)?;
    sets.sort_unstable();
    Ok(SetFamily::from_sorted_unchecked(n, sets))
}

/// Constant-time membership for small universes, binary search otherwise.
pub(crate) enum MembershipIndex<'a> {
    Dense(Vec<u64>),
    Sorted(&'a [u64]),
}

impl<'a> MembershipIndex<'a> {
    fn new(family: &'a SetFamily) -> Self {
        if family.universe <= DENSE_INDEX_LIMIT {
            let mut bits = vec![0u64; (1usize << family.universe).div_ceil(64)];
            for &s in &family.sets {
                bits[(s >> 6) as usize] |= 1 << (s & 63);
            }
            MembershipIndex::Dense(bits)
        } else {
            MembershipIndex::Sorted(&family.sets)
        }
    }

    #[inline]
    pub(crate) fn contains(&self, mask: u64) -> bool {
        match self {
            MembershipIndex::Dense(bits) => bits[(mask >> 6) as usize] >> (mask & 63) & 1 == 1,
            MembershipIndex::Sorted(sets) => sets.binary_search(&mask).is_ok(),
        }
    }
}
