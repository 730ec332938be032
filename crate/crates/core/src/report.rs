//! Machine-readable report envelope with stable field names.

use serde::Serialize;

use crate::entropy::{
    self, BoundReport, ChainRuleReport, CheckOptions, EntropyError, UpperBoundReport,
};
use crate::fraction::Fraction;
use crate::generators::ExampleStats;
use crate::setfamily::SetFamily;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub applicable: bool,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family_size: usize,
    pub universe: u32,
    pub epsilon: Fraction,
    pub unordered_closure_fraction: Option<Fraction>,
    pub delta: Option<f64>,
    pub psi_minus_delta: Option<f64>,
    pub max_freq: Fraction,
    /// 1-based element attaining `max_freq`.
    pub max_freq_element: usize,
    pub frequencies: Vec<Fraction>,
    pub entropy_union_bits: Option<f64>,
    pub lower_bound: Option<BoundReport>,
    pub upper_bound: Option<UpperBoundReport>,
    pub theorem: TheoremVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_rule: Option<ChainRuleReport>,
    pub tolerance: f64,
}

impl FamilyReport {
    /// Closure fraction, frequencies and the frequency bound; no entropies.
    pub fn check(family: &SetFamily, tolerance: f64) -> Result<Self, EntropyError> {
        Self::build(family, tolerance, None)
    }

    /// Everything in [`FamilyReport::check`] plus the entropy bounds.
    pub fn with_entropy(family: &SetFamily, opts: &CheckOptions) -> Result<Self, EntropyError> {
        let analysis = entropy::analyze(family, opts)?;
        Self::build(family, opts.tolerance, Some(analysis))
    }

    fn build(
        family: &SetFamily,
        tolerance: f64,
        analysis: Option<entropy::FamilyAnalysis>,
    ) -> Result<Self, EntropyError> {
        let epsilon = family.closure_fraction()?.complement();
        let profile = family.element_frequencies()?;
        let theorem = if family.len() >= 2 {
            Some(entropy::check_theorem_with(family, tolerance)?)
        } else {
            None
        };
        let verdict = theorem.as_ref().map_or(
            TheoremVerdict {
                applicable: false,
                satisfied: true,
            },
            |t| TheoremVerdict {
                applicable: t.applicable,
                satisfied: t.satisfied,
            },
        );
        let (entropy_union_bits, lower_bound, upper_bound, chain_rule) = match analysis {
            Some(a) => (
                Some(a.entropy_union_bits),
                Some(a.lower_bound),
                Some(a.upper_bound),
                Some(a.chain_rule),
            ),
            None => (None, None, None, None),
        };
        Ok(FamilyReport {
            family_size: family.len(),
            universe: family.universe(),
            epsilon,
            unordered_closure_fraction: family.unordered_closure_fraction()?,
            delta: theorem.as_ref().map(|t| t.delta),
            psi_minus_delta: theorem.as_ref().map(|t| t.psi_minus_delta),
            max_freq: profile.max_freq(),
            max_freq_element: profile.argmax + 1,
            frequencies: (0..profile.counts.len()).map(|i| profile.freq(i)).collect(),
            entropy_union_bits,
            lower_bound,
            upper_bound,
            theorem: verdict,
            chain_rule,
            tolerance,
        })
    }

    /// A checked inequality failed on this family.
    pub fn has_violation(&self) -> bool {
        let theorem = self.theorem.applicable && !self.theorem.satisfied;
        let lower = self.lower_bound.as_ref().is_some_and(|b| !b.satisfied);
        let upper = self.upper_bound.as_ref().is_some_and(|u| !u.satisfied());
        let chain = self.chain_rule.as_ref().is_some_and(|c| !c.satisfied);
        theorem || lower || upper || chain
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleReport {
    pub example: ExampleStats,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfamily::parse_family;

    #[test]
    fn check_omits_entropy() {
        let f = SetFamily::power_set(2).unwrap();
        let r = FamilyReport::check(&f, 1e-9).unwrap();
        assert!(r.epsilon.is_zero());
        assert_eq!(r.delta, Some(0.0));
        assert!(r.entropy_union_bits.is_none());
        assert!(r.theorem.applicable && r.theorem.satisfied);
        assert!(!r.has_violation());
    }

    #[test]
    fn singleton_is_inapplicable() {
        let f = parse_family("n=2\n10").unwrap();
        let r = FamilyReport::with_entropy(&f, &CheckOptions::default()).unwrap();
        assert!(!r.theorem.applicable);
        assert_eq!(r.delta, None);
        assert_eq!(r.entropy_union_bits, Some(0.0));
        assert!(!r.has_violation());
    }
}
