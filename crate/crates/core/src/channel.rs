//! The sticky-deletion channel: up to `t` runs of a word each lose up to `l`
//! repeated bits, and no run disappears entirely.
//!
//! In run-profile terms an error is a non-negative vector `e` with
//! `wt(support(e)) <= t` and `e_i <= min(l, u_i)` where `u` is the profile of
//! the transmitted word; the received word has profile `u - e`. The run
//! count is invariant, which is what every decoder here relies on.

use std::collections::BTreeSet;

use rand::seq::index::sample as sample_indices;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{PatternViolation, Result};
use crate::word::{self, BitWord, RunProfile};

/// Channel parameters: at most `t` affected runs, at most `l` bits lost per
/// affected run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub t: usize,
    pub l: u64,
}

impl ChannelSpec {
    pub fn new(t: usize, l: u64) -> Self {
        ChannelSpec { t, l }
    }

    /// Total zero-deletion budget t*l in the derivative domain.
    pub fn budget(&self) -> u64 {
        self.t as u64 * self.l
    }
}

/// Deletion magnitudes per run of `x·1`; all-zero entries mean the run is
/// untouched.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ErrorPattern {
    magnitudes: Vec<u64>,
}

impl ErrorPattern {
    pub fn new(magnitudes: Vec<u64>) -> Self {
        ErrorPattern { magnitudes }
    }

    pub fn zero(len: usize) -> Self {
        ErrorPattern {
            magnitudes: vec![0; len],
        }
    }

    pub fn magnitudes(&self) -> &[u64] {
        &self.magnitudes
    }

    pub fn len(&self) -> usize {
        self.magnitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.magnitudes.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.magnitudes.iter().all(|&m| m == 0)
    }

    /// Indices of affected runs.
    pub fn support(&self) -> Vec<usize> {
        self.magnitudes
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.magnitudes.iter().sum()
    }

    /// Checks the pattern against a transmitted word and channel limits,
    /// naming the violated constraint.
    pub fn validate(
        &self,
        profile: &RunProfile,
        spec: ChannelSpec,
    ) -> std::result::Result<(), PatternViolation> {
        if self.magnitudes.len() != profile.len() {
            return Err(PatternViolation::LengthMismatch {
                expected: profile.len(),
                got: self.magnitudes.len(),
            });
        }
        let support = self.magnitudes.iter().filter(|&&m| m != 0).count();
        if support > spec.t {
            return Err(PatternViolation::SupportTooLarge {
                got: support,
                limit: spec.t,
            });
        }
        for (index, (&magnitude, &available)) in
            self.magnitudes.iter().zip(profile.entries()).enumerate()
        {
            if magnitude > spec.l {
                return Err(PatternViolation::MagnitudeTooLarge {
                    index,
                    magnitude,
                    limit: spec.l,
                });
            }
            if magnitude > available {
                return Err(PatternViolation::WholeRunDeleted {
                    index,
                    magnitude,
                    available,
                });
            }
        }
        Ok(())
    }
}

/// Applies a deletion pattern: the output's run profile is the input's minus
/// the pattern, so the output is `sum(e)` bits shorter.
pub fn apply(x: &BitWord, pattern: &ErrorPattern, spec: ChannelSpec) -> Result<BitWord> {
    let profile = word::run_profile(x);
    pattern.validate(&profile, spec)?;
    let reduced: Vec<u64> = profile
        .entries()
        .iter()
        .zip(pattern.magnitudes())
        .map(|(&u, &e)| u - e)
        .collect();
    Ok(word::from_run_profile(&RunProfile::new(reduced)))
}

/// Lazily yields every valid pattern for `x` exactly once, the zero pattern
/// first, then by growing support size.
pub fn enumerate_patterns(x: &BitWord, spec: ChannelSpec) -> PatternIter {
    let profile = word::run_profile(x);
    PatternIter::new(&profile, spec)
}

/// Number of valid patterns: sum over support choices of the product of
/// per-run magnitude counts min(l, u_i).
pub fn count_patterns(x: &BitWord, spec: ChannelSpec) -> u128 {
    let profile = word::run_profile(x);
    // Coefficients of prod (1 + cap_i z) truncated past degree t.
    let mut coeffs = vec![0u128; spec.t + 1];
    coeffs[0] = 1;
    for &u in profile.entries() {
        let cap = u.min(spec.l) as u128;
        if cap == 0 {
            continue;
        }
        for s in (1..=spec.t).rev() {
            coeffs[s] += coeffs[s - 1] * cap;
        }
    }
    coeffs.iter().sum()
}

pub struct PatternIter {
    profile_len: usize,
    /// (profile index, magnitude cap) for runs with at least one deletable bit.
    deletable: Vec<(usize, u64)>,
    max_support: usize,
    support_size: usize,
    combo: Vec<usize>,
    mags: Vec<u64>,
    state: IterState,
}

enum IterState {
    Fresh,
    Running,
    Done,
}

impl PatternIter {
    fn new(profile: &RunProfile, spec: ChannelSpec) -> Self {
        let deletable: Vec<(usize, u64)> = profile
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &u)| (i, u.min(spec.l)))
            .filter(|&(_, cap)| cap > 0)
            .collect();
        let max_support = spec.t.min(deletable.len());
        PatternIter {
            profile_len: profile.len(),
            deletable,
            max_support,
            support_size: 0,
            combo: Vec::new(),
            mags: Vec::new(),
            state: IterState::Fresh,
        }
    }

    fn current(&self) -> ErrorPattern {
        let mut magnitudes = vec![0u64; self.profile_len];
        for (&slot, &mag) in self.combo.iter().zip(&self.mags) {
            magnitudes[self.deletable[slot].0] = mag;
        }
        ErrorPattern::new(magnitudes)
    }

    /// Moves to the next state; returns false when exhausted. Order:
    /// magnitude odometer, then next support combination, then larger
    /// support size.
    fn advance(&mut self) -> bool {
        // Magnitude odometer, rightmost position fastest.
        for i in (0..self.support_size).rev() {
            let cap = self.deletable[self.combo[i]].1;
            if self.mags[i] < cap {
                self.mags[i] += 1;
                for m in self.mags[i + 1..].iter_mut() {
                    *m = 1;
                }
                return true;
            }
        }
        // Next combination of the same size (lexicographic).
        let n = self.deletable.len();
        let s = self.support_size;
        let mut i = s;
        while i > 0 {
            i -= 1;
            if self.combo[i] < n - (s - i) {
                self.combo[i] += 1;
                for j in i + 1..s {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                self.mags.iter_mut().for_each(|m| *m = 1);
                return true;
            }
        }
        // Grow the support.
        if self.support_size < self.max_support {
            self.support_size += 1;
            self.combo = (0..self.support_size).collect();
            self.mags = vec![1; self.support_size];
            return true;
        }
        false
    }
}

impl Iterator for PatternIter {
    type Item = ErrorPattern;

    fn next(&mut self) -> Option<ErrorPattern> {
        match self.state {
            IterState::Fresh => {
                self.state = IterState::Running;
                Some(self.current())
            }
            IterState::Running => {
                if self.advance() {
                    Some(self.current())
                } else {
                    self.state = IterState::Done;
                    None
                }
            }
            IterState::Done => None,
        }
    }
}

/// Draws a valid pattern: support size uniform over 0..=min(t, deletable
/// runs), then a uniform subset of that size, then per-run magnitudes
/// uniform over 1..=min(l, u_i).
pub fn sample_pattern<R: Rng>(x: &BitWord, spec: ChannelSpec, rng: &mut R) -> ErrorPattern {
    let profile = word::run_profile(x);
    let deletable: Vec<(usize, u64)> = profile
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &u)| (i, u.min(spec.l)))
        .filter(|&(_, cap)| cap > 0)
        .collect();
    let max_support = spec.t.min(deletable.len());
    let support_size = rng.gen_range(0..=max_support);
    let mut magnitudes = vec![0u64; profile.len()];
    for slot in sample_indices(rng, deletable.len(), support_size) {
        let (index, cap) = deletable[slot];
        magnitudes[index] = rng.gen_range(1..=cap);
    }
    ErrorPattern::new(magnitudes)
}

/// Seeded variant with a fixed stream cipher generator, reproducible across
/// platforms and runs.
pub fn sample_pattern_seeded(x: &BitWord, spec: ChannelSpec, seed: u64) -> ErrorPattern {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_pattern(x, spec, &mut rng)
}

/// The error ball: every word reachable from `x` through the channel,
/// deduplicated. Output lengths range over [n - t*l, n].
pub fn ball(x: &BitWord, spec: ChannelSpec) -> BTreeSet<BitWord> {
    enumerate_patterns(x, spec)
        .map(|e| apply(x, &e, spec).expect("enumerated patterns are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn apply_worked_example() {
        // Deleting (0,0,1,2,1,0) from 0100111001 leaves 010101.
        let x = w("0100111001");
        let e = ErrorPattern::new(vec![0, 0, 1, 2, 1, 0]);
        let out = apply(&x, &e, ChannelSpec::new(3, 2)).unwrap();
        assert_eq!(out, w("010101"));
        assert_eq!(
            word::run_profile(&out).entries(),
            &[0, 0, 0, 0, 0, 1]
        );
    }

    #[test]
    fn apply_zero_pattern_is_identity() {
        let x = w("0100111001");
        let e = ErrorPattern::zero(6);
        assert_eq!(apply(&x, &e, ChannelSpec::new(3, 2)).unwrap(), x);
    }

    #[test]
    fn apply_rejects_invalid_patterns_by_name() {
        let x = w("0011");
        let spec = ChannelSpec::new(1, 1);
        let err = apply(&x, &ErrorPattern::new(vec![1, 1]), spec).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidPattern(PatternViolation::SupportTooLarge { got: 2, limit: 1 })
        ));
        let err = apply(&x, &ErrorPattern::new(vec![0, 2]), spec).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidPattern(PatternViolation::MagnitudeTooLarge { index: 1, .. })
        ));
        let err = apply(&x, &ErrorPattern::new(vec![2, 0]), ChannelSpec::new(1, 3)).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidPattern(PatternViolation::WholeRunDeleted { index: 0, .. })
        ));
        let err = apply(&x, &ErrorPattern::new(vec![0]), spec).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidPattern(PatternViolation::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn profiles_subtract_and_run_count_is_invariant() {
        let spec = ChannelSpec::new(2, 2);
        for n in 1..=10usize {
            for idx in 0..(1u64 << n) {
                let x = BitWord::from_index(idx, n);
                let u = word::run_profile(&x);
                for e in enumerate_patterns(&x, spec) {
                    let y = apply(&x, &e, spec).unwrap();
                    let v = word::run_profile(&y);
                    assert_eq!(v.len(), u.len());
                    let diff: Vec<u64> = u
                        .entries()
                        .iter()
                        .zip(v.entries())
                        .map(|(&a, &b)| a - b)
                        .collect();
                    assert_eq!(diff, e.magnitudes());
                    assert_eq!(y.len(), n - e.total() as usize);
                }
            }
        }
    }

    #[test]
    fn derivative_domain_equivalence() {
        // Applying a pattern deletes exactly sum(e) zeros from the
        // derivative and preserves the count of 1s.
        let spec = ChannelSpec::new(2, 3);
        for n in 1..=9usize {
            for idx in 0..(1u64 << n) {
                let x = BitWord::from_index(idx, n);
                let dx = word::derivative(&x.with_trailing_one()).unwrap();
                for e in enumerate_patterns(&x, spec) {
                    let y = apply(&x, &e, spec).unwrap();
                    let dy = word::derivative(&y.with_trailing_one()).unwrap();
                    assert_eq!(dy.weight(), dx.weight());
                    assert_eq!(
                        dx.len() - dy.len(),
                        e.total() as usize
                    );
                }
            }
        }
    }

    #[test]
    fn enumerate_alternating_word_has_only_zero_pattern() {
        // Every run of 10·1 has length one, so nothing may be deleted.
        let x = w("10");
        let patterns: Vec<_> = enumerate_patterns(&x, ChannelSpec::new(3, 4)).collect();
        assert_eq!(patterns.len(), 1);
        assert!(patterns[0].is_zero());
    }

    #[test]
    fn enumerate_small_word_by_hand() {
        // 0011·1 has profile (1, 2); with t=1, l=1 the patterns are the zero
        // pattern plus one single-bit deletion per run.
        let x = w("0011");
        let patterns: Vec<_> = enumerate_patterns(&x, ChannelSpec::new(1, 1))
            .map(|e| e.magnitudes().to_vec())
            .collect();
        assert_eq!(patterns, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let ball = ball(&x, ChannelSpec::new(1, 1));
        let expect: BTreeSet<BitWord> = [w("0011"), w("011"), w("001")].into_iter().collect();
        assert_eq!(ball, expect);
    }

    /// Independent recursive counter used as an oracle for the iterator.
    fn count_recursive(caps: &[u64], t: usize) -> u128 {
        if caps.is_empty() {
            return 1;
        }
        let rest = &caps[1..];
        let skip = count_recursive(rest, t);
        if t == 0 || caps[0] == 0 {
            skip
        } else {
            skip + caps[0] as u128 * count_recursive(rest, t - 1)
        }
    }

    #[test]
    fn enumeration_matches_recursive_oracle() {
        for spec in [ChannelSpec::new(1, 1), ChannelSpec::new(2, 2), ChannelSpec::new(3, 1)] {
            for n in 0..=10usize {
                for idx in 0..(1u64 << n) {
                    let x = BitWord::from_index(idx, n);
                    let profile = word::run_profile(&x);
                    let caps: Vec<u64> =
                        profile.entries().iter().map(|&u| u.min(spec.l)).collect();
                    let expected = count_recursive(&caps, spec.t);
                    let mut seen = std::collections::HashSet::new();
                    for e in enumerate_patterns(&x, spec) {
                        assert!(e.validate(&profile, spec).is_ok());
                        assert!(seen.insert(e.magnitudes().to_vec()), "duplicate pattern");
                    }
                    assert_eq!(seen.len() as u128, expected);
                    assert_eq!(count_patterns(&x, spec), expected);
                }
            }
        }
    }

    #[test]
    fn ball_of_zero_support_channel_is_identity() {
        let x = w("0100111001");
        let b = ball(&x, ChannelSpec::new(0, 5));
        assert_eq!(b.len(), 1);
        assert!(b.contains(&x));
    }

    #[test]
    fn ball_contains_worked_example() {
        let b = ball(&w("0100111001"), ChannelSpec::new(3, 2));
        assert!(b.contains(&w("010101")));
    }

    #[test]
    fn sampling_is_reproducible_and_valid() {
        let x = w("0110001110100111");
        let spec = ChannelSpec::new(3, 2);
        let profile = word::run_profile(&x);
        let a = sample_pattern_seeded(&x, spec, 7);
        let b = sample_pattern_seeded(&x, spec, 7);
        assert_eq!(a, b);
        for seed in 0..10_000u64 {
            let e = sample_pattern_seeded(&x, spec, seed);
            assert!(e.validate(&profile, spec).is_ok(), "seed {seed}");
        }
        // A zero-support channel always yields the zero pattern.
        let e = sample_pattern_seeded(&x, ChannelSpec::new(0, 2), 3);
        assert!(e.is_zero());
    }
}
