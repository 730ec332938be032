//! The slice-plus-up-set family over `[n]`.
//!
//! `F₁` is every set of size exactly `k` (default `round(ψn + n^{2/3})`), `F₂`
//! every set of size at least `m` (default `⌈(1−ψ)n⌉`). Two independent
//! `k`-sets have a union of size about `(2ψ − ψ²)n = (1 − ψ)n`, just above
//! `m`, so almost every pair is closed, while `F₂` is a vanishing fraction of
//! the family and each element sits in roughly `k/n` of the sets.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::binomial::{binomial_row, log2_big, ratio_to_f64, tail_sum};
use super::GeneratorError;
use crate::analytic::{PHI, PSI};
use crate::exec;
use crate::setfamily::{SetFamily, MAX_UNIVERSE};

/// Default cap on explicitly materialized families.
pub const DEFAULT_MATERIALIZE_CAP: u64 = 5_000_000;

/// Largest universe for which exact binomial rows are computed.
pub const MAX_EXAMPLE_UNIVERSE: u32 = 100_000;

/// Fixed number of sampling shards; part of every report so results do not
/// depend on the machine.
pub const SAMPLE_SHARDS: u64 = 64;

/// Two-sided 99% normal quantile.
pub const CONFIDENCE_Z: f64 = 2.575_829_303_548_900_4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExampleMode {
    Explicit,
    Implicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExampleSpec {
    pub n: u32,
    pub k: u32,
    pub m: u32,
    pub mode: ExampleMode,
}

impl ExampleSpec {
    /// `round(ψn + n^{2/3})`, ties rounding up.
    pub fn default_k(n: u32) -> u32 {
        let v = PSI * n as f64 + (n as f64).powf(2.0 / 3.0);
        (v + 0.5).floor() as u32
    }

    /// `⌈(1 − ψ)n⌉`.
    pub fn default_m(n: u32) -> u32 {
        (PHI * n as f64).ceil() as u32
    }

    /// Parameters with optional overrides for `k` and `m`; rejects degenerate choices.
    pub fn new(
        n: u32,
        k: Option<u32>,
        m: Option<u32>,
        mode: ExampleMode,
    ) -> Result<Self, GeneratorError> {
        if n > MAX_EXAMPLE_UNIVERSE {
            return Err(GeneratorError::UniverseTooLarge {
                n,
                limit: MAX_EXAMPLE_UNIVERSE,
            });
        }
        let spec = ExampleSpec {
            n,
            k: k.unwrap_or_else(|| Self::default_k(n)),
            m: m.unwrap_or_else(|| Self::default_m(n)),
            mode,
        };
        if !(0 < spec.k && spec.k < spec.m && spec.m <= n) {
            return Err(GeneratorError::Degenerate {
                n,
                k: spec.k,
                m: spec.m,
            });
        }
        Ok(spec)
    }

    pub fn implicit(n: u32) -> Result<Self, GeneratorError> {
        Self::new(n, None, None, ExampleMode::Implicit)
    }
}

/// A subset of `[n]` for arbitrary `n`, as little-endian words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    words: Vec<u64>,
}

impl Subset {
    fn empty(n: u32) -> Self {
        Subset {
            words: vec![0; (n as usize).div_ceil(64)],
        }
    }

    fn insert(&mut self, i: u32) {
        self.words[(i / 64) as usize] |= 1 << (i % 64);
    }

    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, i: u32) -> bool {
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn union_len(&self, other: &Subset) -> u32 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones())
            .sum()
    }

    /// Low word; the whole set when `n <= 64`.
    pub fn low_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

/// Implicit handle: membership by cardinality and exact uniform sampling.
#[derive(Debug, Clone)]
pub struct ExampleFamily {
    spec: ExampleSpec,
    row: Vec<BigUint>,
    slice_size: BigUint,
    upset_size: BigUint,
    total: BigUint,
}

impl ExampleFamily {
    pub fn new(spec: ExampleSpec) -> Self {
        let row = binomial_row(spec.n);
        let slice_size = row[spec.k as usize].clone();
        let upset_size = tail_sum(&row, spec.m as usize);
        let total = &slice_size + &upset_size;
        ExampleFamily {
            spec,
            row,
            slice_size,
            upset_size,
            total,
        }
    }

    pub fn spec(&self) -> &ExampleSpec {
        &self.spec
    }

    pub fn slice_size(&self) -> &BigUint {
        &self.slice_size
    }

    pub fn upset_size(&self) -> &BigUint {
        &self.upset_size
    }

    pub fn size(&self) -> &BigUint {
        &self.total
    }

    pub fn contains_weight(&self, weight: u32) -> bool {
        weight == self.spec.k || weight >= self.spec.m
    }

    pub fn contains(&self, set: &Subset) -> bool {
        self.contains_weight(set.len())
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.contains_weight(mask.count_ones())
    }

    /// Uniform member: pick the component by exact size, then the level by
    /// exact binomial weight, then a uniform subset of that size.
    pub fn sample<R: RngCore>(&self, rng: &mut R, perm: &mut Vec<u32>) -> Subset {
        let r = uniform_below(rng, &self.total);
        let level = if r < self.slice_size {
            self.spec.k
        } else {
            let mut rest = r - &self.slice_size;
            let mut j = self.spec.m as usize;
            while rest >= self.row[j] {
                rest -= &self.row[j];
                j += 1;
            }
            j as u32
        };
        random_subset(rng, self.spec.n, level, perm)
    }

    /// All members as masks; requires `n <= 63` and the size within `cap`.
    pub fn materialize(&self, cap: u64) -> Result<SetFamily, GeneratorError> {
        let n = self.spec.n;
        if n > MAX_UNIVERSE {
            return Err(GeneratorError::UniverseTooLarge {
                n,
                limit: MAX_UNIVERSE,
            });
        }
        if self.total > BigUint::from(cap) {
            return Err(GeneratorError::Cap {
                size: self.total.to_string(),
                cap,
            });
        }
        let mut masks = Vec::new();
        for w in std::iter::once(self.spec.k).chain(self.spec.m..=n) {
            push_subsets_of_weight(n, w, &mut masks);
        }
        Ok(SetFamily::new(n, masks)?)
    }
}

/// All `w`-subsets of `[n]` (Gosper's hack).
fn push_subsets_of_weight(n: u32, w: u32, out: &mut Vec<u64>) {
    if w == 0 {
        out.push(0);
        return;
    }
    let limit = 1u64 << n;
    let mut x = (1u64 << w) - 1;
    while x < limit {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

/// Uniform integer in `[0, bound)` by rejection on the bit length.
fn uniform_below<R: RngCore>(rng: &mut R, bound: &BigUint) -> BigUint {
    debug_assert!(!bound.is_zero());
    let bits = bound.bits();
    let digits = bits.div_ceil(32) as usize;
    let top_bits = bits - 32 * (digits as u64 - 1);
    let top_mask = if top_bits == 32 {
        u32::MAX
    } else {
        (1u32 << top_bits) - 1
    };
    let mut buf = vec![0u32; digits];
    loop {
        for d in buf.iter_mut() {
            *d = rng.next_u32();
        }
        buf[digits - 1] &= top_mask;
        let v = BigUint::from_slice(&buf);
        if &v < bound {
            return v;
        }
    }
}

/// Uniform `size`-subset of `[n]` by a partial Fisher–Yates shuffle over `perm`.
///
/// `perm` may hold any arrangement of `0..n` left from earlier calls.
fn random_subset<R: RngCore>(rng: &mut R, n: u32, size: u32, perm: &mut Vec<u32>) -> Subset {
    if perm.len() != n as usize {
        *perm = (0..n).collect();
    }
    let mut set = Subset::empty(n);
    for i in 0..size as usize {
        let j = rng.random_range(i..n as usize);
        perm.swap(i, j);
        set.insert(perm[i]);
    }
    set
}

/// Result of [`build_example`].
#[derive(Debug, Clone)]
pub enum ExampleOutput {
    Explicit(SetFamily),
    Implicit(ExampleFamily),
}

/// Builds the example in the requested mode.
pub fn build_example(spec: ExampleSpec) -> Result<ExampleOutput, GeneratorError> {
    let family = ExampleFamily::new(spec);
    match spec.mode {
        ExampleMode::Explicit => Ok(ExampleOutput::Explicit(
            family.materialize(DEFAULT_MATERIALIZE_CAP)?,
        )),
        ExampleMode::Implicit => Ok(ExampleOutput::Implicit(family)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleStats {
    pub n: u32,
    pub k: u32,
    pub m: u32,
    pub log2_f1: f64,
    pub log2_f2: f64,
    pub size_ratio: f64,
    pub closure_fraction_estimate: f64,
    pub confidence_halfwidth: f64,
    pub confidence_level: f64,
    pub closed_pairs: u64,
    pub max_freq_exact: f64,
    /// `ψ + n^{-1/3}`, the leading behaviour of `max_freq_exact`.
    pub psi_plus_rate: f64,
    pub samples: u64,
    pub seed: u64,
    pub shards: u64,
    /// `(1 − ψ) − (2ψ − ψ²)`, zero up to rounding.
    pub union_level_identity_error: f64,
}

/// Exact sizes and frequencies, plus a sampled closure fraction.
pub fn example_stats(
    spec: ExampleSpec,
    samples: u64,
    seed: u64,
) -> Result<ExampleStats, GeneratorError> {
    if samples < 1000 {
        return Err(GeneratorError::Parameter(format!(
            "at least 1000 samples required, got {samples}"
        )));
    }
    let family = ExampleFamily::new(spec);
    let (n, k, m) = (spec.n, spec.k, spec.m);

    // An element is in C(n-1, j-1) of the C(n, j) sets of size j.
    let lower = binomial_row(n - 1);
    let containing = &lower[(k - 1) as usize] + lower[(m - 1) as usize..].iter().sum::<BigUint>();
    let max_freq_exact = ratio_to_f64(&containing, family.size());

    let per_shard = samples / SAMPLE_SHARDS;
    let extra = samples % SAMPLE_SHARDS;
    let hits = exec::sum_range(0..SAMPLE_SHARDS as usize, |shard| {
        let count = per_shard + u64::from((shard as u64) < extra);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shard as u64);
        let mut perm = Vec::new();
        let mut closed = 0u64;
        for _ in 0..count {
            let a = family.sample(&mut rng, &mut perm);
            let b = family.sample(&mut rng, &mut perm);
            if family.contains_weight(a.union_len(&b)) {
                closed += 1;
            }
        }
        closed
    });
    let p = hits as f64 / samples as f64;
    let halfwidth = CONFIDENCE_Z * (p * (1.0 - p) / samples as f64).sqrt();

    let log2_f1 = log2_big(family.slice_size());
    let log2_f2 = log2_big(family.upset_size());
    Ok(ExampleStats {
        n,
        k,
        m,
        log2_f1,
        log2_f2,
        size_ratio: ratio_to_f64(family.upset_size(), family.slice_size()),
        closure_fraction_estimate: p,
        confidence_halfwidth: halfwidth,
        confidence_level: 0.99,
        closed_pairs: hits,
        max_freq_exact,
        psi_plus_rate: PSI + (n as f64).powf(-1.0 / 3.0),
        samples,
        seed,
        shards: SAMPLE_SHARDS,
        union_level_identity_error: (1.0 - PSI) - (2.0 * PSI - PSI * PSI),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_levels() {
        assert_eq!(ExampleSpec::default_k(1000), 482);
        assert_eq!(ExampleSpec::default_m(1000), 619);
        let spec = ExampleSpec::implicit(1000).unwrap();
        assert_eq!((spec.k, spec.m), (482, 619));
    }

    #[test]
    fn small_n_is_degenerate() {
        assert_eq!(ExampleSpec::default_k(20), 15);
        assert_eq!(ExampleSpec::default_m(20), 13);
        assert_eq!(
            ExampleSpec::implicit(20),
            Err(GeneratorError::Degenerate {
                n: 20,
                k: 15,
                m: 13
            })
        );
        assert!(ExampleSpec::new(10, Some(7), Some(7), ExampleMode::Explicit).is_err());
        assert!(ExampleSpec::new(10, Some(0), Some(7), ExampleMode::Explicit).is_err());
        assert!(ExampleSpec::new(10, Some(3), Some(11), ExampleMode::Explicit).is_err());
    }

    #[test]
    fn explicit_size_matches_binomials() {
        let spec = ExampleSpec::new(10, Some(3), Some(7), ExampleMode::Explicit).unwrap();
        let ExampleOutput::Explicit(f) = build_example(spec).unwrap() else {
            panic!("expected explicit family");
        };
        assert_eq!(f.len(), 120 + 176);
        assert!(f
            .sets()
            .iter()
            .all(|s| s.count_ones() == 3 || s.count_ones() >= 7));
    }

    #[test]
    fn materialize_cap() {
        let spec = ExampleSpec::new(30, Some(10), Some(20), ExampleMode::Explicit).unwrap();
        let fam = ExampleFamily::new(spec);
        assert!(matches!(
            fam.materialize(1000),
            Err(GeneratorError::Cap { .. })
        ));
        let spec = ExampleSpec::new(100, Some(40), Some(70), ExampleMode::Explicit).unwrap();
        assert!(matches!(
            ExampleFamily::new(spec).materialize(u64::MAX),
            Err(GeneratorError::UniverseTooLarge { .. })
        ));
    }

    #[test]
    fn samples_are_members_of_expected_size() {
        let spec = ExampleSpec::new(12, Some(3), Some(9), ExampleMode::Implicit).unwrap();
        let fam = ExampleFamily::new(spec);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut perm = Vec::new();
        for _ in 0..500 {
            let s = fam.sample(&mut rng, &mut perm);
            assert!(fam.contains(&s));
        }
    }

    #[test]
    fn uniform_below_covers_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let bound = BigUint::from(5u32);
        let mut seen = [0u32; 5];
        for _ in 0..5000 {
            let v = uniform_below(&mut rng, &bound);
            seen[v.to_u32_digits().first().copied().unwrap_or(0) as usize] += 1;
        }
        assert!(seen.iter().all(|&c| (850..1150).contains(&c)), "{seen:?}");
    }

    #[test]
    fn stats_require_enough_samples() {
        let spec = ExampleSpec::new(30, Some(10), Some(20), ExampleMode::Implicit).unwrap();
        assert!(example_stats(spec, 10, 0).is_err());
    }
}
