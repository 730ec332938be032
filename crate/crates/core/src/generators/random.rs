//! Seeded random families for fuzzing the bound checks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GeneratorError;
use crate::entropy::DEFAULT_PAIR_CAP;
use crate::setfamily::{SetFamily, MAX_UNIVERSE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyKind {
    /// `size` distinct masks, uniform.
    Uniform,
    /// Union closure of up to `size` random masks, kept within the pair cap.
    ClosureOfRandom,
    /// A closure-of-random family with each set other than the top deleted
    /// independently with probability `rho`.
    NoisyUc { rho: f64 },
}

/// Deterministic stream of random families; family `i` uses ChaCha8 stream `i`.
pub struct RandomFamilies {
    n: u32,
    size: usize,
    kind: FamilyKind,
    seed: u64,
    index: u64,
    count: u64,
}

pub fn random_families(
    n: u32,
    size: usize,
    count: u64,
    seed: u64,
    kind: FamilyKind,
) -> Result<RandomFamilies, GeneratorError> {
    if n == 0 || n > MAX_UNIVERSE {
        return Err(GeneratorError::UniverseTooLarge {
            n,
            limit: MAX_UNIVERSE,
        });
    }
    if size == 0 {
        return Err(GeneratorError::Parameter("size must be positive".into()));
    }
    if n < 64 && size as u128 > 1u128 << n {
        return Err(GeneratorError::Parameter(format!(
            "cannot draw {size} distinct subsets of a {n}-element set"
        )));
    }
    if let FamilyKind::NoisyUc { rho } = kind {
        if !(0.0..=1.0).contains(&rho) {
            return Err(GeneratorError::Parameter(format!(
                "rho must lie in [0, 1], got {rho}"
            )));
        }
    }
    Ok(RandomFamilies {
        n,
        size,
        kind,
        seed,
        index: 0,
        count,
    })
}

impl Iterator for RandomFamilies {
    type Item = SetFamily;

    fn next(&mut self) -> Option<SetFamily> {
        if self.index >= self.count {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.index);
        self.index += 1;
        Some(draw(&mut rng, self.n, self.size, self.kind))
    }
}

fn draw(rng: &mut ChaCha8Rng, n: u32, size: usize, kind: FamilyKind) -> SetFamily {
    match kind {
        FamilyKind::Uniform => uniform(rng, n, size),
        FamilyKind::ClosureOfRandom => closure_of_random(rng, n, size),
        FamilyKind::NoisyUc { rho } => {
            let closed = closure_of_random(rng, n, size);
            let top = closed.sets().iter().fold(0, |acc, &s| acc | s);
            let kept: Vec<u64> = closed
                .sets()
                .iter()
                .copied()
                .filter(|&s| s == top || rng.random::<f64>() >= rho)
                .collect();
            SetFamily::from_sorted_unchecked(n, kept)
        }
    }
}

fn random_mask(rng: &mut ChaCha8Rng, n: u32) -> u64 {
    rng.random::<u64>() & ((1u64 << n) - 1)
}

fn uniform(rng: &mut ChaCha8Rng, n: u32, size: usize) -> SetFamily {
    let mut seen = HashSet::with_capacity(size);
    let mut masks = Vec::with_capacity(size);
    if n <= 16 && size * 2 > 1 << n {
        // Dense case: partial shuffle of every mask.
        let mut all: Vec<u64> = (0..1u64 << n).collect();
        for i in 0..size {
            let j = rng.random_range(i..all.len());
            all.swap(i, j);
        }
        masks.extend_from_slice(&all[..size]);
    } else {
        while masks.len() < size {
            let m = random_mask(rng, n);
            if seen.insert(m) {
                masks.push(m);
            }
        }
    }
    masks.sort_unstable();
    SetFamily::from_sorted_unchecked(n, masks)
}

/// Adds random masks one at a time, closing after each, and stops before
/// the closure would exceed the pair cap.
fn closure_of_random(rng: &mut ChaCha8Rng, n: u32, size: usize) -> SetFamily {
    let mut members: HashSet<u64> = HashSet::new();
    let mut sets: Vec<u64> = Vec::new();
    for _ in 0..size {
        let x = random_mask(rng, n);
        if members.contains(&x) {
            continue;
        }
        // C ∪ {x} ∪ {x | c} is union closed whenever C is.
        let mut added: Vec<u64> = std::iter::once(x)
            .chain(sets.iter().map(|&c| c | x))
            .filter(|u| !members.contains(u))
            .collect();
        added.sort_unstable();
        added.dedup();
        if sets.len() + added.len() > DEFAULT_PAIR_CAP {
            break;
        }
        members.extend(added.iter().copied());
        sets.extend(added);
    }
    if sets.is_empty() {
        sets.push(random_mask(rng, n));
    }
    sets.sort_unstable();
    SetFamily::from_sorted_unchecked(n, sets)
}

/// Mixed corpus for the fuzz suite: kinds rotate through uniform,
/// closure-of-random and two noise levels; sizes vary with the index.
pub fn fuzz_corpus(n: u32, count: u64, seed: u64) -> Result<Vec<SetFamily>, GeneratorError> {
    if n == 0 || n > 16 {
        return Err(GeneratorError::UniverseTooLarge { n, limit: 16 });
    }
    let kinds = [
        FamilyKind::Uniform,
        FamilyKind::ClosureOfRandom,
        FamilyKind::NoisyUc { rho: 0.02 },
        FamilyKind::NoisyUc { rho: 0.1 },
    ];
    let max_size = (1usize << n).min(48);
    let mut out = Vec::with_capacity(count as usize);
    for i in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let size = rng.random_range(2..=max_size.max(2));
        let kind = kinds[(i % kinds.len() as u64) as usize];
        let size = if kind == FamilyKind::Uniform {
            size
        } else {
            size.div_ceil(4).max(1)
        };
        out.push(draw(&mut rng, n, size.min(1 << n), kind));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic() {
        let a: Vec<_> = random_families(5, 8, 10, 7, FamilyKind::Uniform)
            .unwrap()
            .collect();
        let b: Vec<_> = random_families(5, 8, 10, 7, FamilyKind::Uniform)
            .unwrap()
            .collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|f| f.len() == 8));
        let c: Vec<_> = random_families(5, 8, 10, 8, FamilyKind::Uniform)
            .unwrap()
            .collect();
        assert_ne!(a, c);
    }

    #[test]
    fn closures_are_union_closed() {
        for f in random_families(8, 6, 50, 1, FamilyKind::ClosureOfRandom).unwrap() {
            assert!(f.is_union_closed().unwrap());
        }
    }

    #[test]
    fn noise_free_is_exactly_closed() {
        for f in random_families(6, 5, 20, 2, FamilyKind::NoisyUc { rho: 0.0 }).unwrap() {
            assert!(f.closure_fraction().unwrap().complement().is_zero());
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(random_families(3, 9, 1, 0, FamilyKind::Uniform).is_err());
        assert!(random_families(3, 0, 1, 0, FamilyKind::Uniform).is_err());
        assert!(random_families(64, 2, 1, 0, FamilyKind::Uniform).is_err());
        assert!(random_families(3, 2, 1, 0, FamilyKind::NoisyUc { rho: 1.5 }).is_err());
    }

    #[test]
    fn full_power_set_draw() {
        let f = random_families(3, 8, 1, 0, FamilyKind::Uniform)
            .unwrap()
            .next()
            .unwrap();
        assert_eq!(f, SetFamily::power_set(3).unwrap());
    }

    #[test]
    fn corpus_is_reproducible() {
        let a = fuzz_corpus(5, 40, 11).unwrap();
        assert_eq!(a, fuzz_corpus(5, 40, 11).unwrap());
        assert!(a.iter().all(|f| !f.is_empty()));
    }
}
