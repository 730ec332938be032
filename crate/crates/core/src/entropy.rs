//! Exact entropy of `A ∪ B` for independent uniform draws `A, B` from a
//! family, and executable forms of the inequalities bounding it.
//!
//! All distributions here are integer counts over `|F|` or `|F|²`; floating
//! point only enters when an entropy is evaluated, always in a fixed order
//! with compensated summation.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::analytic::{binary_entropy_unchecked as h, PHI, PSI};
use crate::exec;
use crate::fraction::Fraction;
use crate::setfamily::{FamilyError, SetFamily};

/// Largest family whose `|F|²` ordered pairs are enumerated.
pub const DEFAULT_PAIR_CAP: usize = 4096;

/// Absolute slack, in bits, allowed on every floating comparison.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum EntropyError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("family of {size} sets exceeds the pair-enumeration cap of {cap}")]
    PairCap { size: usize, cap: usize },
    #[error("theorem check needs at least 2 sets, family has {size}")]
    TooSmall { size: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub tolerance: f64,
    pub pair_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            tolerance: DEFAULT_TOLERANCE,
            pair_cap: DEFAULT_PAIR_CAP,
        }
    }
}

/// Exact law of `A ∪ B`: `(mask, count)` pairs sorted by mask, counts over `total = |F|²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionDistribution {
    universe: u32,
    total: u64,
    support: Vec<(u64, u64)>,
}

impl UnionDistribution {
    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn support(&self) -> &[(u64, u64)] {
        &self.support
    }

    pub fn prob(&self, mask: u64) -> Fraction {
        let count = self
            .support
            .binary_search_by_key(&mask, |&(m, _)| m)
            .map(|i| self.support[i].1)
            .unwrap_or(0);
        Fraction::new(count, self.total)
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        entropy_of_counts(self.support.iter().map(|&(_, c)| c), self.total)
    }
}

/// Distribution of `A ∪ B` with the default pair cap.
pub fn union_distribution(family: &SetFamily) -> Result<UnionDistribution, EntropyError> {
    union_distribution_capped(family, DEFAULT_PAIR_CAP)
}

pub fn union_distribution_capped(
    family: &SetFamily,
    cap: usize,
) -> Result<UnionDistribution, EntropyError> {
    if family.is_empty() {
        return Err(FamilyError::Empty.into());
    }
    if family.len() > cap {
        return Err(EntropyError::PairCap {
            size: family.len(),
            cap,
        });
    }
    let sets = family.sets();
    let m = sets.len();
    let chunks = m.min(64);
    let per_chunk = exec::map_range(0..chunks, |c| {
        let mut local: HashMap<u64, u64> = HashMap::new();
        let mut i = c;
        while i < m {
            let a = sets[i];
            *local.entry(a).or_insert(0) += 1;
            for &b in &sets[i + 1..] {
                *local.entry(a | b).or_insert(0) += 2;
            }
            i += chunks;
        }
        local
    });
    let mut merged: BTreeMap<u64, u64> = BTreeMap::new();
    for local in per_chunk {
        for (k, v) in local {
            *merged.entry(k).or_insert(0) += v;
        }
    }
    Ok(UnionDistribution {
        universe: family.universe(),
        total: (m as u64) * (m as u64),
        support: merged.into_iter().collect(),
    })
}

/// Entropy in bits of the distribution `counts / total`; zero counts contribute 0.
pub fn entropy_of_counts<I: IntoIterator<Item = u64>>(counts: I, total: u64) -> f64 {
    let t = total as f64;
    exec::compensated_sum(counts.into_iter().filter(|&c| c > 0).map(|c| {
        let q = c as f64 / t;
        -q * q.log2()
    }))
}

/// Entropy in bits of an explicit probability vector.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    exec::compensated_sum(probs.iter().filter(|&&q| q > 0.0).map(|&q| -q * q.log2()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs >= rhs`
    AtLeast,
    /// `lhs <= rhs`
    AtMost,
}

/// One side-by-side comparison. `margin_bits` is signed so that a
/// non-negative margin means the stated relation holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub relation: Relation,
    pub lhs_bits: f64,
    pub rhs_bits: f64,
    pub margin_bits: f64,
    pub tolerance: f64,
    pub satisfied: bool,
    pub inputs: BTreeMap<String, f64>,
}

impl BoundReport {
    fn new(relation: Relation, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let margin = match relation {
            Relation::AtLeast => lhs - rhs,
            Relation::AtMost => rhs - lhs,
        };
        BoundReport {
            relation,
            lhs_bits: lhs,
            rhs_bits: rhs,
            margin_bits: margin,
            tolerance,
            satisfied: margin >= -tolerance,
            inputs: BTreeMap::new(),
        }
    }

    fn input(mut self, name: &str, value: f64) -> Self {
        self.inputs.insert(name.to_string(), value);
        self
    }
}

/// Per-coordinate terms of the chain-rule argument, coordinate `i` 0-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoordinateTerms {
    pub element: usize,
    /// `H((A∪B)_i | (A∪B)_{<i})`
    pub union_conditional_bits: f64,
    /// `H(A_i ∪ B_i | A_{<i}, B_{<i})`
    pub pairwise_conditional_bits: f64,
    /// `H(A_i | A_{<i})`
    pub single_conditional_bits: f64,
    /// `Pr[A_i = 0]`
    pub zero_probability: f64,
    /// `(1/(2φ)) (Pr[A_i=0] H(B_i|B_{<i}) + Pr[B_i=0] H(A_i|A_{<i}))`
    pub averaged_bound_bits: f64,
    pub averaged_bound_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainRuleReport {
    pub entropy_bits: f64,
    pub chain_sum_bits: f64,
    pub identity_error_bits: f64,
    pub identity_holds: bool,
    /// `Σ_i H(A_i | A_{<i})`, which must equal `log2 |F|`.
    pub single_chain_sum_bits: f64,
    pub single_identity_holds: bool,
    /// `H(A∪B) >= Σ_i H(A_i ∪ B_i | A_{<i}, B_{<i})`
    pub data_processing: BoundReport,
    pub coordinates: Vec<CoordinateTerms>,
    pub satisfied: bool,
}

/// Upper-bound side, split by the indicator `I = [A∪B ∈ F]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub indicator_bits: f64,
    pub indicator_bound_bits: f64,
    pub prob_outside: f64,
    pub outside_bits: f64,
    pub outside_bound_bits: f64,
    pub prob_inside: f64,
    pub inside_bits: f64,
    pub inside_bound_bits: f64,
    pub total_bits: f64,
    /// Every term is within its bound and `H(A∪B) <= total <= rhs`.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpperBoundReport {
    pub epsilon: Fraction,
    pub applicable: bool,
    pub bound: Option<BoundReport>,
    pub decomposition: Option<Decomposition>,
}

impl UpperBoundReport {
    pub fn satisfied(&self) -> bool {
        match (&self.bound, &self.decomposition) {
            (Some(b), Some(d)) => b.satisfied && d.consistent,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub epsilon: Fraction,
    pub delta: f64,
    pub psi_minus_delta: f64,
    pub max_freq: Fraction,
    pub applicable: bool,
    pub satisfied: bool,
    pub tolerance: f64,
}

impl TheoremReport {
    /// An applicable instance that fails: a would-be counterexample.
    pub fn is_violation(&self) -> bool {
        self.applicable && !self.satisfied
    }
}

/// `δ = 2ε(1 + log(1/ε)/log|F|)`, with `δ = 0` at `ε = 0`.
pub fn theorem_delta(epsilon: f64, family_size: u64) -> f64 {
    if epsilon <= 0.0 {
        return 0.0;
    }
    2.0 * epsilon * (1.0 + (1.0 / epsilon).log2() / (family_size as f64).log2())
}

/// Checks that some element lies in at least a `ψ − δ` fraction of sets.
pub fn check_theorem(family: &SetFamily) -> Result<TheoremReport, EntropyError> {
    check_theorem_with(family, DEFAULT_TOLERANCE)
}

pub fn check_theorem_with(family: &SetFamily, tol: f64) -> Result<TheoremReport, EntropyError> {
    if family.len() < 2 {
        return Err(EntropyError::TooSmall { size: family.len() });
    }
    let epsilon = family.closure_fraction()?.complement();
    let max_freq = family.element_frequencies()?.max_freq();
    Ok(theorem_report(epsilon, max_freq, family.len() as u64, tol))
}

fn theorem_report(epsilon: Fraction, max_freq: Fraction, size: u64, tol: f64) -> TheoremReport {
    let eps = epsilon.to_f64();
    let delta = theorem_delta(eps, size);
    let psi_minus_delta = PSI - delta;
    let below_half = 2 * epsilon.num < epsilon.den;
    TheoremReport {
        epsilon,
        delta,
        psi_minus_delta,
        max_freq,
        applicable: below_half && psi_minus_delta > 0.0,
        satisfied: max_freq.to_f64() >= psi_minus_delta - tol,
        tolerance: tol,
    }
}

/// Chain-rule identity and data-processing inequality for `A ∪ B`.
pub fn chain_rule_check(family: &SetFamily) -> Result<ChainRuleReport, EntropyError> {
    let opts = CheckOptions::default();
    let dist = union_distribution_capped(family, opts.pair_cap)?;
    Ok(chain_rule_from(family, &dist, opts.tolerance))
}

/// Prefix classes of a family at coordinate `i`: per class, (members, members with bit `i` clear).
fn family_classes(sets: &[u64], i: u32) -> Vec<(u64, u64)> {
    let prefix = (1u64 << i) - 1;
    let mut classes: HashMap<u64, (u64, u64)> = HashMap::new();
    for &s in sets {
        let e = classes.entry(s & prefix).or_insert((0, 0));
        e.0 += 1;
        if s >> i & 1 == 0 {
            e.1 += 1;
        }
    }
    classes.into_values().collect()
}

/// Collapses classes to distinct `(size, zeros)` types with multiplicities, sorted.
fn class_types(classes: &[(u64, u64)]) -> Vec<((u64, u64), u64)> {
    let mut types: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for &c in classes {
        *types.entry(c).or_insert(0) += 1;
    }
    types.into_iter().collect()
}

fn coordinate_terms(
    family: &SetFamily,
    dist: &UnionDistribution,
    i: u32,
    tol: f64,
) -> CoordinateTerms {
    let m = family.len() as f64;

    // H((A∪B)_i | (A∪B)_{<i}) from the exact union law.
    let prefix = (1u64 << i) - 1;
    let mut union_classes: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    for &(mask, count) in dist.support() {
        let e = union_classes.entry(mask & prefix).or_insert((0, 0));
        e.0 += count;
        if mask >> i & 1 == 1 {
            e.1 += count;
        }
    }
    let total = dist.total() as f64;
    let union_conditional = exec::compensated_sum(
        union_classes
            .values()
            .map(|&(c, ones)| c as f64 / total * h(ones as f64 / c as f64)),
    );

    // H(A_i ∪ B_i | A_{<i}, B_{<i}) for independent copies of the same law.
    let types = class_types(&family_classes(family.sets(), i));
    let mut pair_terms = Vec::with_capacity(types.len() * types.len());
    for &((cx, zx), mx) in &types {
        for &((cy, zy), my) in &types {
            let weight = (mx * cx) as f64 * (my * cy) as f64 / (m * m);
            let p0 = (zx * zy) as f64 / (cx * cy) as f64;
            pair_terms.push(weight * h(p0));
        }
    }
    let pairwise = exec::compensated_sum(pair_terms);

    let single = exec::compensated_sum(
        types
            .iter()
            .map(|&((c, z), mult)| (mult * c) as f64 / m * h(z as f64 / c as f64)),
    );
    let zeros: u64 = types.iter().map(|&((_, z), mult)| z * mult).sum();
    let zero_probability = zeros as f64 / m;
    let averaged = (zero_probability * single + zero_probability * single) / (2.0 * PHI);

    CoordinateTerms {
        element: i as usize,
        union_conditional_bits: union_conditional,
        pairwise_conditional_bits: pairwise,
        single_conditional_bits: single,
        zero_probability,
        averaged_bound_bits: averaged,
        averaged_bound_holds: pairwise >= averaged - tol,
    }
}

fn chain_rule_from(family: &SetFamily, dist: &UnionDistribution, tol: f64) -> ChainRuleReport {
    let entropy = dist.entropy();
    let coordinates = exec::map_range(0..family.universe() as usize, |i| {
        coordinate_terms(family, dist, i as u32, tol)
    });
    let chain_sum = exec::compensated_sum(coordinates.iter().map(|c| c.union_conditional_bits));
    let single_sum = exec::compensated_sum(coordinates.iter().map(|c| c.single_conditional_bits));
    let dp_sum = exec::compensated_sum(coordinates.iter().map(|c| c.pairwise_conditional_bits));
    let identity_error = (chain_sum - entropy).abs();
    let single_identity_holds = (single_sum - (family.len() as f64).log2()).abs() <= tol;
    let data_processing = BoundReport::new(Relation::AtLeast, entropy, dp_sum, tol);
    let satisfied = identity_error <= tol
        && single_identity_holds
        && data_processing.satisfied
        && coordinates.iter().all(|c| c.averaged_bound_holds);
    ChainRuleReport {
        entropy_bits: entropy,
        chain_sum_bits: chain_sum,
        identity_error_bits: identity_error,
        identity_holds: identity_error <= tol,
        single_chain_sum_bits: single_sum,
        single_identity_holds,
        data_processing,
        coordinates,
        satisfied,
    }
}

/// `H(A∪B) >= (p/(2φ)) (H(A) + H(B))` with `p = min_i Pr[A_i = 0]`.
pub fn check_lower_bound(family: &SetFamily) -> Result<BoundReport, EntropyError> {
    let opts = CheckOptions::default();
    let dist = union_distribution_capped(family, opts.pair_cap)?;
    lower_bound_from(family, &dist, opts.tolerance)
}

fn lower_bound_from(
    family: &SetFamily,
    dist: &UnionDistribution,
    tol: f64,
) -> Result<BoundReport, EntropyError> {
    let p = family.element_frequencies()?.p_min_zero().to_f64();
    let log_size = (family.len() as f64).log2();
    let rhs = p / (2.0 * PHI) * (log_size + log_size);
    Ok(
        BoundReport::new(Relation::AtLeast, dist.entropy(), rhs, tol)
            .input("p", p)
            .input("family_size", family.len() as f64)
            .input("entropy_a_bits", log_size)
            .input("phi", PHI)
            .input("psi", PSI),
    )
}

/// `H(A∪B) <= 2ε log(1/ε) + (1+2ε) log|F|`, applicable when `ε < 1/2`.
pub fn check_upper_bound(family: &SetFamily) -> Result<UpperBoundReport, EntropyError> {
    let opts = CheckOptions::default();
    let dist = union_distribution_capped(family, opts.pair_cap)?;
    upper_bound_from(family, &dist, opts.tolerance)
}

fn upper_bound_from(
    family: &SetFamily,
    dist: &UnionDistribution,
    tol: f64,
) -> Result<UpperBoundReport, EntropyError> {
    let idx = family.index();
    let inside_count: u64 = dist
        .support()
        .iter()
        .filter(|&&(mask, _)| idx.contains(mask))
        .map(|&(_, c)| c)
        .sum();
    let total = dist.total();
    let epsilon = Fraction::new(total - inside_count, total);
    if 2 * epsilon.num >= epsilon.den {
        return Ok(UpperBoundReport {
            epsilon,
            applicable: false,
            bound: None,
            decomposition: None,
        });
    }
    let eps = epsilon.to_f64();
    let log_size = (family.len() as f64).log2();
    let indicator_bound = if eps > 0.0 {
        2.0 * eps * (1.0 / eps).log2()
    } else {
        0.0
    };
    let rhs = indicator_bound + (1.0 + 2.0 * eps) * log_size;
    let lhs = dist.entropy();

    let outside = total - inside_count;
    let cond_entropy = |keep_inside: bool, mass: u64| -> f64 {
        if mass == 0 {
            return 0.0;
        }
        entropy_of_counts(
            dist.support()
                .iter()
                .filter(|&&(mask, _)| idx.contains(mask) == keep_inside)
                .map(|&(_, c)| c),
            mass,
        )
    };
    let indicator = h(eps);
    let outside_bits = cond_entropy(false, outside);
    let inside_bits = cond_entropy(true, inside_count);
    let prob_inside = inside_count as f64 / total as f64;
    let total_bits =
        exec::compensated_sum([indicator, eps * outside_bits, prob_inside * inside_bits]);
    let consistent = indicator <= indicator_bound + tol
        && outside_bits <= 2.0 * log_size + tol
        && inside_bits <= log_size + tol
        && lhs <= total_bits + tol
        && total_bits <= rhs + tol;

    let bound = BoundReport::new(Relation::AtMost, lhs, rhs, tol)
        .input("epsilon", eps)
        .input("family_size", family.len() as f64)
        .input("log2_family_size", log_size);
    Ok(UpperBoundReport {
        epsilon,
        applicable: true,
        bound: Some(bound),
        decomposition: Some(Decomposition {
            indicator_bits: indicator,
            indicator_bound_bits: indicator_bound,
            prob_outside: eps,
            outside_bits,
            outside_bound_bits: 2.0 * log_size,
            prob_inside,
            inside_bits,
            inside_bound_bits: log_size,
            total_bits,
            consistent,
        }),
    })
}

/// Every check on one family, sharing a single pair enumeration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyAnalysis {
    pub entropy_union_bits: f64,
    pub lower_bound: BoundReport,
    pub upper_bound: UpperBoundReport,
    pub chain_rule: ChainRuleReport,
    /// `None` when `|F| < 2`.
    pub theorem: Option<TheoremReport>,
}

impl FamilyAnalysis {
    /// True if any check that must hold for every family failed.
    pub fn has_violation(&self) -> bool {
        !self.lower_bound.satisfied
            || !self.upper_bound.satisfied()
            || !self.chain_rule.satisfied
            || self.theorem.as_ref().is_some_and(|t| t.is_violation())
    }
}

pub fn analyze(family: &SetFamily, opts: &CheckOptions) -> Result<FamilyAnalysis, EntropyError> {
    let dist = union_distribution_capped(family, opts.pair_cap)?;
    let tol = opts.tolerance;
    let lower_bound = lower_bound_from(family, &dist, tol)?;
    let upper_bound = upper_bound_from(family, &dist, tol)?;
    let chain_rule = chain_rule_from(family, &dist, tol);
    let theorem = if family.len() >= 2 {
        let max_freq = family.element_frequencies()?.max_freq();
        Some(theorem_report(
            upper_bound.epsilon,
            max_freq,
            family.len() as u64,
            tol,
        ))
    } else {
        None
    };
    Ok(FamilyAnalysis {
        entropy_union_bits: dist.entropy(),
        lower_bound,
        upper_bound,
        chain_rule,
        theorem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfamily::parse_family;

    fn power(n: u32) -> SetFamily {
        SetFamily::power_set(n).unwrap()
    }

    // -(1/16)log(1/16) - 2(3/16)log(3/16) - (9/16)log(9/16), written out.
    fn power2_union_entropy() -> f64 {
        let t = |q: f64| -q * q.log2();
        t(1.0 / 16.0) + 2.0 * t(3.0 / 16.0) + t(9.0 / 16.0)
    }

    #[test]
    fn distribution_examples() {
        let single = SetFamily::new(1, [1]).unwrap();
        let d = union_distribution(&single).unwrap();
        assert_eq!(d.support(), &[(1, 1)]);
        assert_eq!(d.entropy(), 0.0);

        let d = union_distribution(&power(1)).unwrap();
        assert_eq!(d.support(), &[(0, 1), (1, 3)]);
        assert_eq!(d.total(), 4);

        let d = union_distribution(&power(2)).unwrap();
        assert_eq!(d.support(), &[(0, 1), (1, 3), (2, 3), (3, 9)]);
        assert_eq!(d.prob(3), Fraction::new(9, 16));
        assert!((d.entropy() - power2_union_entropy()).abs() < 1e-12);
        assert!((d.entropy() - 1.6225562489182657).abs() < 1e-12);
    }

    #[test]
    fn pair_cap_enforced() {
        let f = power(4);
        assert_eq!(
            union_distribution_capped(&f, 8),
            Err(EntropyError::PairCap { size: 16, cap: 8 })
        );
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy(&[1.0]), 0.0);
        assert_eq!(shannon_entropy(&[0.25; 4]), 2.0);
        assert_eq!(shannon_entropy(&[0.5, 0.0, 0.5]), 1.0);
    }

    #[test]
    fn chain_rule_examples() {
        let r = chain_rule_check(&power(2)).unwrap();
        assert!(r.identity_error_bits <= 1e-9);
        assert!(r.data_processing.rhs_bits <= power2_union_entropy() + 1e-12);
        assert!(r.satisfied);

        let f = parse_family("n=2\n10\n01").unwrap();
        let r = chain_rule_check(&f).unwrap();
        assert!(r.identity_holds && r.data_processing.satisfied);
        // A∪B is {1}, {2} w.p. 1/4 each and {1,2} w.p. 1/2.
        assert!((r.entropy_bits - 1.5).abs() < 1e-12);
    }

    #[test]
    fn lower_bound_examples() {
        let r = check_lower_bound(&power(2)).unwrap();
        assert!((r.lhs_bits - 1.6225562489182657).abs() < 1e-12);
        assert!((r.rhs_bits - 0.5 / PHI * 2.0 / 2.0 * 2.0).abs() < 1e-12);
        assert!((r.rhs_bits - 1.618033988749895).abs() < 1e-12);
        assert!(r.satisfied);

        let r = check_lower_bound(&SetFamily::new(1, [1]).unwrap()).unwrap();
        assert_eq!((r.lhs_bits, r.rhs_bits, r.margin_bits), (0.0, 0.0, 0.0));
        assert!(r.satisfied);

        let f = parse_family("n=2\n10\n11").unwrap();
        let r = check_lower_bound(&f).unwrap();
        assert_eq!(r.rhs_bits, 0.0);
        assert!(r.satisfied);
    }

    #[test]
    fn upper_bound_examples() {
        let r = check_upper_bound(&power(2)).unwrap();
        assert!(r.applicable && r.epsilon.is_zero());
        let b = r.bound.as_ref().unwrap();
        assert_eq!(b.rhs_bits, 2.0);
        assert!(b.satisfied && r.satisfied());

        let f = parse_family("n=2\n00\n10\n01").unwrap();
        let r = check_upper_bound(&f).unwrap();
        assert_eq!((r.epsilon.num, r.epsilon.den), (2, 9));
        let eps: f64 = 2.0 / 9.0;
        let rhs = 2.0 * eps * (4.5f64).log2() + (1.0 + 2.0 * eps) * 3f64.log2();
        let b = r.bound.as_ref().unwrap();
        assert!((b.rhs_bits - rhs).abs() < 1e-12);
        assert!(b.satisfied);
        let d = r.decomposition.as_ref().unwrap();
        // I is a function of A∪B, so the decomposition is exact.
        assert!((d.total_bits - b.lhs_bits).abs() < 1e-12);
        assert!(d.consistent);

        let f = parse_family("n=2\n10\n01").unwrap();
        let r = check_upper_bound(&f).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.epsilon, Fraction::new(1, 2));
    }

    #[test]
    fn theorem_examples() {
        let r = check_theorem(&power(3)).unwrap();
        assert_eq!(r.delta, 0.0);
        assert_eq!(r.max_freq, Fraction::new(1, 2));
        assert!(r.applicable && r.satisfied);

        let f = parse_family("n=2\n00\n10\n01").unwrap();
        let r = check_theorem(&f).unwrap();
        let expected = (4.0 / 9.0) * (1.0 + 4.5f64.log2() / 3f64.log2());
        assert!((r.delta - expected).abs() < 1e-12);
        assert!((r.delta - 1.05).abs() < 0.01);
        assert!(r.psi_minus_delta < 0.0 && !r.applicable);

        assert_eq!(
            check_theorem(&SetFamily::new(1, [1]).unwrap()),
            Err(EntropyError::TooSmall { size: 1 })
        );
    }

    #[test]
    fn union_closed_needs_psi() {
        // Chain ∅ ⊂ {1}: max_freq 1/2.
        let f = parse_family("n=1\n0\n1").unwrap();
        let r = check_theorem(&f).unwrap();
        assert!((r.psi_minus_delta - 0.3819660112501051).abs() < 1e-15);
        assert!(r.satisfied);
    }

    #[test]
    fn analyze_agrees_with_single_checks() {
        let f = parse_family("n=3\n000\n100\n010\n110\n011").unwrap();
        let a = analyze(&f, &CheckOptions::default()).unwrap();
        assert_eq!(a.lower_bound, check_lower_bound(&f).unwrap());
        assert_eq!(a.upper_bound, check_upper_bound(&f).unwrap());
        assert_eq!(a.chain_rule, chain_rule_check(&f).unwrap());
        assert_eq!(a.theorem.clone().unwrap(), check_theorem(&f).unwrap());
        assert!(!a.has_violation());
    }
}
