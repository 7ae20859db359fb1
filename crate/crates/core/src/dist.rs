//! Exact-rational outcome distributions over party-grouped bit strings,
//! optionally carrying classical label symbols per party.

use crate::error::NetworkError;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// One party's output: measured bits plus appended classical symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PartyOutput {
    pub bits: Vec<bool>,
    pub symbols: Vec<String>,
}

impl PartyOutput {
    pub fn bits_only(bits: Vec<bool>) -> Self {
        PartyOutput {
            bits,
            symbols: Vec::new(),
        }
    }
}

/// A full outcome: one `PartyOutput` per party, in party order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct OutcomeKey {
    pub groups: Vec<PartyOutput>,
}

impl OutcomeKey {
    pub fn bits_flat(&self) -> Vec<bool> {
        self.groups.iter().flat_map(|g| g.bits.iter().copied()).collect()
    }

    pub fn total_bits(&self) -> usize {
        self.groups.iter().map(|g| g.bits.len()).sum()
    }

    pub fn has_symbols(&self) -> bool {
        self.groups.iter().any(|g| !g.symbols.is_empty())
    }
}

impl fmt::Display for OutcomeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbolic = self.has_symbols() || self.groups.iter().any(|g| g.bits.is_empty());
        for (i, g) in self.groups.iter().enumerate() {
            if symbolic && i > 0 {
                write!(f, "|")?;
            }
            for &b in &g.bits {
                write!(f, "{}", if b { '1' } else { '0' })?;
            }
            for s in &g.symbols {
                write!(f, ":{}", s)?;
            }
        }
        Ok(())
    }
}

/// Exact probability map over outcomes. Probabilities are positive rationals
/// summing to exactly 1; all keys share one shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OutcomeDistribution {
    group_bit_lens: Vec<usize>,
    entries: BTreeMap<OutcomeKey, BigRational>,
}

impl OutcomeDistribution {
    pub fn new(
        group_bit_lens: Vec<usize>,
        entries: BTreeMap<OutcomeKey, BigRational>,
    ) -> Self {
        let d = OutcomeDistribution {
            group_bit_lens,
            entries,
        };
        debug_assert!(d.check_shape());
        d
    }

    fn check_shape(&self) -> bool {
        let mut sum = BigRational::zero();
        for (k, p) in &self.entries {
            if k.groups.len() != self.group_bit_lens.len() || !p.is_positive() {
                return false;
            }
            for (g, &len) in k.groups.iter().zip(&self.group_bit_lens) {
                if g.bits.len() != len {
                    return false;
                }
            }
            sum += p;
        }
        self.entries.is_empty() || sum.is_one()
    }

    /// A distribution over plain bit strings as a single group.
    pub fn single_group(n: usize, entries: BTreeMap<Vec<bool>, BigRational>) -> Self {
        let entries = entries
            .into_iter()
            .map(|(bits, p)| {
                (
                    OutcomeKey {
                        groups: vec![PartyOutput::bits_only(bits)],
                    },
                    p,
                )
            })
            .collect();
        OutcomeDistribution::new(vec![n], entries)
    }

    pub fn point_mass(key: OutcomeKey) -> Self {
        let lens = key.groups.iter().map(|g| g.bits.len()).collect();
        let mut entries = BTreeMap::new();
        entries.insert(key, BigRational::one());
        OutcomeDistribution::new(lens, entries)
    }

    pub fn group_bit_lens(&self) -> &[usize] {
        &self.group_bit_lens
    }

    pub fn total_bits(&self) -> usize {
        self.group_bit_lens.iter().sum()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OutcomeKey, &BigRational)> {
        self.entries.iter()
    }

    pub fn probability(&self, key: &OutcomeKey) -> BigRational {
        self.entries.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn has_symbols(&self) -> bool {
        self.entries.keys().any(|k| k.has_symbols())
    }

    /// Sum of p over keys, which must be exactly 1.
    pub fn total(&self) -> BigRational {
        self.entries.values().sum()
    }

    /// True when every probability has a power-of-two denominator.
    pub fn is_dyadic(&self) -> bool {
        self.entries.values().all(|p| {
            let d = p.denom().magnitude();
            d.count_ones() == 1
        })
    }

    /// Mix weighted distributions (weights must sum to 1; shapes must agree).
    pub fn mix(parts: &[(BigRational, OutcomeDistribution)]) -> OutcomeDistribution {
        assert!(!parts.is_empty());
        let lens = parts[0].1.group_bit_lens.clone();
        let mut entries: BTreeMap<OutcomeKey, BigRational> = BTreeMap::new();
        for (w, d) in parts {
            assert_eq!(d.group_bit_lens, lens);
            for (k, p) in &d.entries {
                let slot = entries.entry(k.clone()).or_insert_with(BigRational::zero);
                *slot += w * p;
            }
        }
        entries.retain(|_, p| p.is_positive());
        OutcomeDistribution::new(lens, entries)
    }

    /// Condition on the given flat bit positions having the given values.
    /// Returns the conditional distribution and the probability of the event.
    pub fn condition(
        &self,
        positions: &[usize],
        values: &[bool],
    ) -> Result<(OutcomeDistribution, BigRational), NetworkError> {
        assert_eq!(positions.len(), values.len());
        let total_bits = self.total_bits();
        for &p in positions {
            if p >= total_bits {
                return Err(NetworkError::ShapeMismatch {
                    left: p,
                    right: total_bits,
                });
            }
        }
        let mut entries = BTreeMap::new();
        let mut prob = BigRational::zero();
        for (k, p) in &self.entries {
            let flat = k.bits_flat();
            if positions.iter().zip(values).all(|(&i, &v)| flat[i] == v) {
                prob += p;
                entries.insert(k.clone(), p.clone());
            }
        }
        if prob.is_zero() {
            return Err(NetworkError::ZeroProbabilityEvent);
        }
        for p in entries.values_mut() {
            *p /= &prob;
        }
        Ok((
            OutcomeDistribution::new(self.group_bit_lens.clone(), entries),
            prob,
        ))
    }

    /// Marginal over a subset of party groups (kept in the given order).
    pub fn marginal_groups(&self, keep: &[usize]) -> OutcomeDistribution {
        let lens = keep.iter().map(|&i| self.group_bit_lens[i]).collect();
        let mut entries: BTreeMap<OutcomeKey, BigRational> = BTreeMap::new();
        for (k, p) in &self.entries {
            let key = OutcomeKey {
                groups: keep.iter().map(|&i| k.groups[i].clone()).collect(),
            };
            *entries.entry(key).or_insert_with(BigRational::zero) += p;
        }
        OutcomeDistribution::new(lens, entries)
    }

    /// Independent product (groups of `other` appended after `self`).
    pub fn product(&self, other: &OutcomeDistribution) -> OutcomeDistribution {
        let mut lens = self.group_bit_lens.clone();
        lens.extend_from_slice(&other.group_bit_lens);
        let mut entries = BTreeMap::new();
        for (ka, pa) in &self.entries {
            for (kb, pb) in &other.entries {
                let mut groups = ka.groups.clone();
                groups.extend(kb.groups.iter().cloned());
                entries.insert(OutcomeKey { groups }, pa * pb);
            }
        }
        OutcomeDistribution::new(lens, entries)
    }

    /// Merge all party groups into a single group (bits concatenated,
    /// symbols concatenated in party order).
    pub fn flatten_groups(&self) -> OutcomeDistribution {
        let total = self.total_bits();
        let entries = self
            .entries
            .iter()
            .map(|(k, p)| {
                let merged = PartyOutput {
                    bits: k.bits_flat(),
                    symbols: k
                        .groups
                        .iter()
                        .flat_map(|g| g.symbols.iter().cloned())
                        .collect(),
                };
                (
                    OutcomeKey {
                        groups: vec![merged],
                    },
                    p.clone(),
                )
            })
            .collect();
        OutcomeDistribution::new(vec![total], entries)
    }

    /// Total-variation distance against a float-valued map on the same keys.
    pub fn tv_distance(&self, float: &BTreeMap<OutcomeKey, f64>) -> f64 {
        let mut keys: std::collections::BTreeSet<&OutcomeKey> = self.entries.keys().collect();
        keys.extend(float.keys());
        let mut acc = 0.0;
        for k in keys {
            let a = self
                .entries
                .get(k)
                .map(rational_to_f64)
                .unwrap_or(0.0);
            let b = float.get(k).copied().unwrap_or(0.0);
            acc += (a - b).abs();
        }
        acc / 2.0
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let numer = bigint_to_f64(r.numer());
    let denom = bigint_to_f64(r.denom());
    numer / denom
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    // Good enough for the magnitudes appearing in probabilities.
    x.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::Ratio;

    fn half() -> BigRational {
        Ratio::new(BigInt::from(1), BigInt::from(2))
    }

    fn bell_dist() -> OutcomeDistribution {
        let mut m = BTreeMap::new();
        m.insert(vec![false, false], half());
        m.insert(vec![true, true], half());
        OutcomeDistribution::single_group(2, m)
    }

    #[test]
    fn condition_bell() {
        let d = bell_dist();
        let (c, p) = d.condition(&[0], &[false]).unwrap();
        assert_eq!(p, half());
        assert_eq!(c.support_len(), 1);
        let (_, p_all) = d.condition(&[0, 1], &[true, true]).unwrap();
        assert_eq!(p_all, half());
        assert!(matches!(
            d.condition(&[0, 1], &[true, false]),
            Err(NetworkError::ZeroProbabilityEvent)
        ));
    }

    #[test]
    fn product_and_marginal() {
        let d = bell_dist();
        let prod = d.product(&d);
        assert_eq!(prod.support_len(), 4);
        assert_eq!(prod.total(), BigRational::one());
        let m = prod.marginal_groups(&[0]);
        assert_eq!(m, d);
    }

    #[test]
    fn display_plain_and_symbolic() {
        let d = bell_dist();
        let keys: Vec<String> = d.iter().map(|(k, _)| k.to_string()).collect();
        assert_eq!(keys, vec!["00", "11"]);
        let key = OutcomeKey {
            groups: vec![
                PartyOutput {
                    bits: vec![true],
                    symbols: vec!["r1".into()],
                },
                PartyOutput {
                    bits: vec![],
                    symbols: vec!["r1".into()],
                },
            ],
        };
        assert_eq!(key.to_string(), "1:r1|:r1");
    }

    #[test]
    fn dyadic_detection() {
        assert!(bell_dist().is_dyadic());
        let mut m = BTreeMap::new();
        m.insert(vec![false], Ratio::new(BigInt::from(1), BigInt::from(3)));
        m.insert(vec![true], Ratio::new(BigInt::from(2), BigInt::from(3)));
        assert!(!OutcomeDistribution::single_group(1, m).is_dyadic());
    }
}
