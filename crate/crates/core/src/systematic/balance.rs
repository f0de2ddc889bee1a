//! Balanced marker blocks: a leading 1 followed by a word with equally many
//! 0s and 1s. Zero deletions never change the count of 1s, so a decoder
//! scanning for the k-th 1 from the end finds these blocks regardless of the
//! damage, which is how the codeword is cut into sections.

use crate::error::{DecodeFailure, Result};
use crate::word::BitWord;

/// A word whose first bit is 1 and whose remainder is balanced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BalancedWord(BitWord);

impl BalancedWord {
    pub fn new(word: BitWord) -> Result<Self> {
        if word.is_empty() || word.bit(0) != 1 {
            return Err(DecodeFailure::BalanceMalformed("missing leading marker").into());
        }
        if (word.len() - 1) % 2 != 0 {
            return Err(DecodeFailure::BalanceMalformed("remainder length is odd").into());
        }
        let remainder_weight = word.weight() - 1;
        if 2 * remainder_weight != word.len() - 1 {
            return Err(DecodeFailure::BalanceMalformed("remainder is not balanced").into());
        }
        Ok(BalancedWord(word))
    }

    pub fn word(&self) -> &BitWord {
        &self.0
    }

    pub fn into_word(self) -> BitWord {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Length of the index suffix for a body of even length `body_len`: the
/// least even s whose balanced words *ending in 0* can address
/// body_len + 1 flip indices. The trailing 0 keeps every encoded block out
/// of the codeword's final run, whose total loss would silently drop a 1
/// from the derivative.
pub fn suffix_len(body_len: usize) -> usize {
    let mut s = 2u64;
    while binomial(s - 1, s / 2) < body_len as u128 + 1 {
        s += 2;
    }
    s as usize
}

/// The `index`-th word of length `len` and weight `weight` in lexicographic
/// order (0 before 1).
pub fn unrank_constant_weight(index: u128, len: usize, weight: usize) -> BitWord {
    assert!(index < binomial(len as u64, weight as u64));
    let mut bits = Vec::with_capacity(len);
    let mut index = index;
    let mut ones = weight as u64;
    for pos in 0..len as u64 {
        let remaining = len as u64 - pos - 1;
        let with_zero = binomial(remaining, ones);
        if index < with_zero {
            bits.push(0);
        } else {
            index -= with_zero;
            bits.push(1);
            ones -= 1;
        }
    }
    debug_assert_eq!(ones, 0);
    BitWord::new(bits)
}

/// Inverse of [`unrank_constant_weight`].
pub fn rank_constant_weight(word: &BitWord) -> u128 {
    let len = word.len() as u64;
    let mut ones = word.weight() as u64;
    let mut rank = 0u128;
    for (pos, bit) in word.iter().enumerate() {
        let remaining = len - pos as u64 - 1;
        if bit == 1 {
            rank += binomial(remaining, ones);
            ones -= 1;
        }
    }
    rank
}

/// Flip the first `count` bits.
fn flip_prefix(x: &BitWord, count: usize) -> BitWord {
    BitWord::new(
        x.iter()
            .enumerate()
            .map(|(i, b)| if i < count { 1 - b } else { b })
            .collect(),
    )
}

/// Balances an even-length word: flip the least prefix that equalizes the
/// weight (one always exists, since each extra flip moves the weight by one
/// and the full flip lands on the complementary weight), then append the
/// flip index as a fixed-length balanced suffix.
pub fn balance(x: &BitWord) -> BalancedWord {
    let len = x.len();
    assert!(len % 2 == 0, "balance input must have even length");
    let mut weight = x.weight();
    let mut flip_at = None;
    for i in 0..=len {
        if 2 * weight == len {
            flip_at = Some(i);
            break;
        }
        if i < len {
            // Flipping bit i changes the weight by +-1.
            weight = if x.bit(i) == 1 { weight - 1 } else { weight + 1 };
        }
    }
    let index = flip_at.expect("a balancing flip index always exists");
    let sigma = suffix_len(len);
    let suffix = unrank_constant_weight(index as u128, sigma, sigma / 2);
    let body = flip_prefix(x, index);
    let word = BitWord::new(vec![1]).concat(&body).concat(&suffix);
    BalancedWord::new(word).expect("constructed word is balanced by construction")
}

/// Recovers the original word of known length from its balanced encoding.
pub fn unbalance(w: &BalancedWord, original_len: usize) -> Result<BitWord> {
    let sigma = suffix_len(original_len);
    if w.len() != 1 + original_len + sigma {
        return Err(DecodeFailure::BalanceMalformed("length does not match parameters").into());
    }
    let word = w.word();
    let body = word.slice(1, 1 + original_len);
    let suffix = word.slice(1 + original_len, word.len());
    if suffix.weight() != sigma / 2 {
        return Err(DecodeFailure::BalanceMalformed("index suffix is not balanced").into());
    }
    let index = rank_constant_weight(&suffix);
    if index > original_len as u128 {
        return Err(DecodeFailure::BalanceMalformed("flip index out of range").into());
    }
    Ok(flip_prefix(&body, index as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, 5), 0);
    }

    #[test]
    fn constant_weight_rank_round_trip() {
        for len in [4usize, 6, 8] {
            let weight = len / 2;
            let total = binomial(len as u64, weight as u64);
            let mut seen = std::collections::BTreeSet::new();
            for index in 0..total {
                let word = unrank_constant_weight(index, len, weight);
                assert_eq!(word.len(), len);
                assert_eq!(word.weight(), weight);
                assert_eq!(rank_constant_weight(&word), index);
                seen.insert(word);
            }
            assert_eq!(seen.len() as u128, total);
            // Lexicographic order.
            let words: Vec<_> = seen.into_iter().collect();
            for (i, w) in words.iter().enumerate() {
                assert_eq!(rank_constant_weight(w), i as u128);
            }
        }
    }

    #[test]
    fn balance_defining_property_exhaustive() {
        for len in (2..=12usize).step_by(2) {
            for idx in 0..(1u64 << len) {
                let x = BitWord::from_index(idx, len);
                let b = balance(&x);
                assert_eq!(b.word().bit(0), 1);
                assert_eq!(2 * (b.word().weight() - 1), b.len() - 1);
                assert_eq!(unbalance(&b, len).unwrap(), x);
            }
        }
    }

    #[test]
    fn already_balanced_word_flips_nothing() {
        let x: BitWord = "0101".parse().unwrap();
        let b = balance(&x);
        // Flip index 0: body equals the input, suffix encodes 0.
        assert_eq!(b.word().slice(1, 5), x);
        let sigma = suffix_len(4);
        assert_eq!(
            rank_constant_weight(&b.word().slice(5, 5 + sigma)),
            0
        );
    }

    #[test]
    fn unbalance_rejects_malformed_blocks() {
        let x: BitWord = "1100".parse().unwrap();
        let b = balance(&x);
        // Out-of-range flip index: craft a suffix encoding a large rank.
        let sigma = suffix_len(4);
        let last = unrank_constant_weight(binomial(sigma as u64, sigma as u64 / 2) - 1, sigma, sigma / 2);
        let bad = BitWord::new(vec![1])
            .concat(&b.word().slice(1, 5))
            .concat(&last);
        if let Ok(bad) = BalancedWord::new(bad) {
            assert!(unbalance(&bad, 4).is_err());
        }
        // Wrong declared length.
        assert!(unbalance(&b, 6).is_err());
    }
}
