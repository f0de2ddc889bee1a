//! Brute-force ground truth: ball-intersection decoding, confusability, and
//! the counting bounds every enumerated codebook is checked against.
//!
//! Everything here goes through exhaustive error-ball enumeration or exact
//! big-integer arithmetic, independent of the algebraic decoders it
//! certifies.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::channel::{self, ChannelSpec};
use crate::galois::smallest_prime_at_least;
use crate::word::BitWord;

/// Every codeword whose error ball contains `received`. A valid code yields
/// at most a singleton for channel outputs; an empty set means the word is
/// unreachable.
pub fn brute_force_decode(
    codebook: &[BitWord],
    received: &BitWord,
    spec: ChannelSpec,
) -> BTreeSet<BitWord> {
    codebook
        .iter()
        .filter(|x| channel::ball(x, spec).contains(received))
        .cloned()
        .collect()
}

/// Map from every reachable word to the codewords that can produce it.
/// Precomputing this turns repeated ball-intersection queries into lookups.
pub fn ball_index(codebook: &[BitWord], spec: ChannelSpec) -> HashMap<BitWord, Vec<BitWord>> {
    let mut index: HashMap<BitWord, Vec<BitWord>> = HashMap::new();
    for x in codebook {
        for y in channel::ball(x, spec) {
            index.entry(y).or_default().push(x.clone());
        }
    }
    index
}

/// True iff the error balls of `x` and `y` intersect.
pub fn confusable(x: &BitWord, y: &BitWord, spec: ChannelSpec) -> bool {
    let bx = channel::ball(x, spec);
    channel::ball(y, spec).iter().any(|w| bx.contains(w))
}

/// Largest code size correcting `r` sticky deletions, as an exact rational
/// `numerator / denominator` (an upper bound, parity-dependent).
#[derive(Clone, Debug)]
pub struct LevenshteinBound {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl LevenshteinBound {
    pub fn log2(&self) -> f64 {
        big_log2(&self.numerator) - big_log2(&self.denominator)
    }
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Base-2 logarithm of a big integer, good to well under 1e-6 at desk scale.
fn big_log2(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 53 {
        let small: u64 = v.try_into().ok().map(|x: u64| x).unwrap_or(1);
        return (small as f64).log2();
    }
    // Take the top 53 bits and account for the shift.
    let shift = bits - 53;
    let top: u64 = (v >> shift).try_into().expect("53 bits fit");
    (top as f64).log2() + shift as f64
}

/// Upper bound on the size of a code correcting `r` sticky deletions:
/// `2^(n+r) r! / n^r` for odd `r`, `2^(n+3r/2) ((r/2)!)^2 / n^r` for even.
pub fn levenshtein_bound(n: u64, r: u64) -> LevenshteinBound {
    assert!(n > r && r >= 1, "requires n > r >= 1");
    let (numerator, denominator) = if r % 2 == 1 {
        (
            (BigUint::one() << (n + r)) * factorial(r),
            BigUint::from(n).pow(r as u32),
        )
    } else {
        let half = factorial(r / 2);
        (
            (BigUint::one() << (n + 3 * r / 2)) * (&half * &half),
            BigUint::from(n).pow(r as u32),
        )
    };
    LevenshteinBound {
        numerator,
        denominator,
    }
}

/// Exact check of the codebook size bound
/// `|C| >= 2^n / (p (n+1)^(2t(1-1/p)))`, cleared of the fractional exponent
/// by raising both sides to the p-th power.
pub fn size_bound_holds(code_size: u64, n: usize, t: usize, p: u64) -> bool {
    let lhs = BigUint::from(code_size).pow(p as u32)
        * BigUint::from(p).pow(p as u32)
        * BigUint::from(n as u64 + 1).pow((2 * t as u64 * (p - 1)) as u32);
    let rhs = BigUint::one() << (n as u64 * p);
    lhs >= rhs
}

/// The weaker closed form `|C| >= 2^n / ((2l+2)(n+1)^(t(2l+1)/(l+1)))`,
/// cleared of the fractional exponent by raising to the (l+1)-th power.
pub fn weak_size_bound_holds(code_size: u64, n: usize, t: usize, l: u64) -> bool {
    let q = l + 1;
    let lhs = BigUint::from(code_size).pow(q as u32)
        * BigUint::from(2 * q).pow(q as u32)
        * BigUint::from(n as u64 + 1).pow((t as u64 * (2 * l + 1)) as u32);
    let rhs = BigUint::one() << (n as u64 * q);
    lhs >= rhs
}

/// Everything the size/redundancy story says about one (n, t, l) point,
/// under both prime conventions (p >= l+1 and p > l+1).
#[derive(Clone, Debug, Serialize)]
pub struct SizeBoundsReport {
    pub n: usize,
    pub t: usize,
    pub l: u64,
    /// Smallest prime >= l+1 and the bound's log2 under it.
    pub prime_geq: u64,
    pub bound_log2_geq: f64,
    /// Smallest prime > l+1 and the bound's log2 under it.
    pub prime_gt: u64,
    pub bound_log2_gt: f64,
    /// log2 of the weaker prime-free bound.
    pub weak_bound_log2: f64,
    /// Redundancy main term t(2l+1)/(l+1) * log2(n+1) and its constant.
    pub redundancy_main_term: f64,
    pub redundancy_constant: f64,
    /// Sticky-deletion budget r = t*l: a code correcting r unrestricted
    /// sticky deletions also handles this channel, so its size limit is the
    /// comparison point. r counts total deletions, t counts affected runs.
    pub unrestricted_budget: u64,
    pub levenshtein_log2: Option<f64>,
    pub levenshtein_redundancy_lower: Option<f64>,
    /// Filled when the codebook was actually enumerated.
    pub enumerated_size: Option<u64>,
    pub enumerated_redundancy: Option<f64>,
}

fn bound_log2(n: usize, t: usize, p: u64) -> f64 {
    let exponent = 2.0 * t as f64 * (1.0 - 1.0 / p as f64);
    n as f64 - (p as f64).log2() - exponent * ((n + 1) as f64).log2()
}

pub fn size_bounds_report(
    n: usize,
    spec: ChannelSpec,
    enumerated_size: Option<u64>,
) -> SizeBoundsReport {
    let (t, l) = (spec.t, spec.l);
    let prime_geq = smallest_prime_at_least(l + 1);
    let prime_gt = smallest_prime_at_least(l + 2);
    let budget = spec.budget();
    let lev = (budget >= 1 && (n as u64) > budget).then(|| levenshtein_bound(n as u64, budget));
    SizeBoundsReport {
        n,
        t,
        l,
        prime_geq,
        bound_log2_geq: bound_log2(n, t, prime_geq),
        prime_gt,
        bound_log2_gt: bound_log2(n, t, prime_gt),
        weak_bound_log2: n as f64
            - (2.0 * (l + 1) as f64).log2()
            - t as f64 * (2 * l + 1) as f64 / (l + 1) as f64 * ((n + 1) as f64).log2(),
        redundancy_main_term: t as f64 * (2 * l + 1) as f64 / (l + 1) as f64
            * ((n + 1) as f64).log2(),
        redundancy_constant: (2.0 * (l + 1) as f64).log2(),
        unrestricted_budget: budget,
        levenshtein_log2: lev.as_ref().map(|b| b.log2()),
        levenshtein_redundancy_lower: lev.as_ref().map(|b| n as f64 - b.log2()),
        enumerated_size,
        enumerated_redundancy: enumerated_size.map(|s| n as f64 - (s as f64).log2()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn decode_zero_pattern_finds_the_codeword() {
        let spec = ChannelSpec::new(1, 1);
        let codebook = vec![w("0011"), w("0101")];
        let hits = brute_force_decode(&codebook, &w("0011"), spec);
        assert!(hits.contains(&w("0011")));
    }

    #[test]
    fn merged_codebook_with_intersecting_balls_is_detected() {
        // 0011 and 011 share the descendant 011 under one single-bit
        // deletion, so a codebook containing both is not a valid code.
        let spec = ChannelSpec::new(1, 1);
        let codebook = vec![w("0011"), w("011")];
        let hits = brute_force_decode(&codebook, &w("011"), spec);
        assert_eq!(hits.len(), 2);
    }

    #[test]
    fn confusability_examples() {
        let spec = ChannelSpec::new(1, 1);
        assert!(confusable(&w("0110"), &w("0110"), spec));
        assert!(confusable(&w("0011"), &w("011"), spec));
        assert!(!confusable(&w("01"), &w("10"), spec));
    }

    #[test]
    fn ball_index_matches_direct_decoding() {
        let spec = ChannelSpec::new(2, 1);
        let codebook: Vec<BitWord> = (0..32).map(|i| BitWord::from_index(i, 5)).collect();
        let index = ball_index(&codebook, spec);
        for (received, hits) in &index {
            let direct = brute_force_decode(&codebook, received, spec);
            let indexed: BTreeSet<BitWord> = hits.iter().cloned().collect();
            assert_eq!(direct, indexed);
        }
    }

    #[test]
    fn levenshtein_bound_closed_forms() {
        // r = 1: 2^(n+1)/n.
        let b = levenshtein_bound(10, 1);
        assert_eq!(b.numerator, BigUint::from(2048u32));
        assert_eq!(b.denominator, BigUint::from(10u32));
        // r = 2: 2^(n+3)/n^2.
        let b = levenshtein_bound(10, 2);
        assert_eq!(b.numerator, BigUint::from(8192u32));
        assert_eq!(b.denominator, BigUint::from(100u32));
        // The log2 gap to 2^n is r log n + O(1): for fixed r the residual
        // gap - r log2(n) must not depend on n.
        for r in 1..=4u64 {
            let residual = |n: u64| {
                let gap = n as f64 - levenshtein_bound(n, r).log2();
                gap - r as f64 * (n as f64).log2()
            };
            let base = residual(32);
            for n in [64u64, 128, 1024, 65536] {
                assert!((residual(n) - base).abs() < 1e-9, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn exact_bound_comparisons() {
        // 2^n / (p(n+1)^(2t(1-1/p))) at n=8, t=1, p=3 is 256/(3*9^(4/3));
        // 9^(4/3) ~ 18.72, so the bound is ~4.56.
        assert!(size_bound_holds(5, 8, 1, 3));
        assert!(!size_bound_holds(4, 8, 1, 3));
        // Weaker form is implied whenever the strong form holds.
        assert!(weak_size_bound_holds(5, 8, 1, 2));
    }

    #[test]
    fn exponent_grows_to_2t_monotonically() {
        let t = 3u64;
        let mut last = 0.0;
        for l in 1..=40u64 {
            let e = t as f64 * (2 * l + 1) as f64 / (l + 1) as f64;
            assert!(e > last && e < 2.0 * t as f64);
            last = e;
        }
    }

    #[test]
    fn report_is_consistent() {
        let r = size_bounds_report(12, ChannelSpec::new(1, 1), Some(157));
        assert_eq!(r.prime_geq, 2);
        assert_eq!(r.prime_gt, 3);
        assert_eq!(r.unrestricted_budget, 1);
        // The strong bound under each prime dominates the weak closed form.
        assert!(r.bound_log2_geq >= r.weak_bound_log2 - 1e-9);
        let red = r.enumerated_redundancy.unwrap();
        assert!(red > 0.0 && red < 12.0);
    }
}
