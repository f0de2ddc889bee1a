//! Binary words, run profiles, and the bijective transforms between them.
//!
//! A word `x` of length `n` is identified with the vector of run lengths of
//! `x·1` (the word with a 1 appended), each reduced by one. Sticky deletions
//! act on that vector as entrywise decreases, never changing its length,
//! which is the property every code in this crate is built on.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite word of bits; serializes as an ASCII string of '0'/'1'.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitWord(Vec<u8>);

impl BitWord {
    /// Builds a word from raw bits. Panics if any value is not 0 or 1.
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bit values must be 0 or 1");
        BitWord(bits)
    }

    pub fn empty() -> Self {
        BitWord(Vec::new())
    }

    pub fn zeros(n: usize) -> Self {
        BitWord(vec![0; n])
    }

    /// The `i`-th word of length `n` in lexicographic order, bit 0 most
    /// significant. Used by exhaustive sweeps.
    pub fn from_index(index: u64, n: usize) -> Self {
        assert!(n < 64);
        let bits = (0..n).map(|i| ((index >> (n - 1 - i)) & 1) as u8).collect();
        BitWord(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.0[i]
    }

    /// Number of 1s.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Number of maximal runs of identical bits; 0 for the empty word.
    pub fn run_count(&self) -> usize {
        if self.0.is_empty() {
            return 0;
        }
        1 + self.0.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Concatenation.
    pub fn concat(&self, other: &BitWord) -> BitWord {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        BitWord(bits)
    }

    /// Copy of `self` with a single 1 appended.
    pub fn with_trailing_one(&self) -> BitWord {
        let mut bits = self.0.clone();
        bits.push(1);
        BitWord(bits)
    }

    pub fn slice(&self, start: usize, end: usize) -> BitWord {
        BitWord(self.0[start..end].to_vec())
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (position, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                found => return Err(Error::BadBit { position, found }),
            }
        }
        Ok(BitWord(bits))
    }
}

/// Run-length profile: entry `i` is the length of the `i`-th run of `x·1`
/// minus one. `origin_length` is the bit length of the source word, so
/// inversion needs no side information.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RunProfile {
    entries: Vec<u64>,
    origin_length: usize,
}

impl RunProfile {
    /// Wraps raw entries; the origin length is forced by the sum identity
    /// `sum(entries) + len(entries) = origin_length + 1`.
    pub fn new(entries: Vec<u64>) -> Self {
        let origin_length = entries.iter().sum::<u64>() as usize + entries.len() - 1;
        RunProfile {
            entries,
            origin_length,
        }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn origin_length(&self) -> usize {
        self.origin_length
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// Entrywise sum, used when adding recovered deletion magnitudes back.
    pub fn add(&self, delta: &[u64]) -> RunProfile {
        assert_eq!(self.entries.len(), delta.len());
        RunProfile::new(
            self.entries
                .iter()
                .zip(delta)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }
}

/// Residues in `[0, modulus)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidueVector {
    entries: Vec<u64>,
    modulus: u64,
}

impl ResidueVector {
    pub fn new(entries: Vec<u64>, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall(modulus));
        }
        for &value in &entries {
            if value >= modulus {
                return Err(Error::SymbolOutOfRange { value, modulus });
            }
        }
        Ok(ResidueVector { entries, modulus })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Adjacent-bit XOR, last bit copied. Turns run boundaries into 1s: a run of
/// length L becomes the block `0^{L-1} 1`.
pub fn derivative(x: &BitWord) -> Result<BitWord> {
    if x.is_empty() {
        return Err(Error::EmptyWord);
    }
    let bits = &x.0;
    let n = bits.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n - 1 {
        out.push(bits[i] ^ bits[i + 1]);
    }
    out.push(bits[n - 1]);
    Ok(BitWord(out))
}

/// Inverse of [`derivative`], computed right to left.
pub fn integrate(y: &BitWord) -> Result<BitWord> {
    if y.is_empty() {
        return Err(Error::EmptyWord);
    }
    let bits = &y.0;
    let n = bits.len();
    let mut out = vec![0u8; n];
    out[n - 1] = bits[n - 1];
    for i in (0..n - 1).rev() {
        out[i] = bits[i] ^ out[i + 1];
    }
    Ok(BitWord(out))
}

/// Zero-run lengths of a word ending in 1: `y = 0^{r_1} 1 0^{r_2} 1 … 0^{r_w} 1`
/// maps to `(r_1, …, r_w)` with `w = wt(y)`.
pub fn zero_run_profile(y: &BitWord) -> Result<RunProfile> {
    if y.is_empty() {
        return Err(Error::EmptyWord);
    }
    if y.0[y.len() - 1] != 1 {
        return Err(Error::NoTrailingOne);
    }
    let mut entries = Vec::new();
    let mut zeros = 0u64;
    for &b in &y.0 {
        if b == 0 {
            zeros += 1;
        } else {
            entries.push(zeros);
            zeros = 0;
        }
    }
    Ok(RunProfile::new(entries))
}

/// Inverse of [`zero_run_profile`].
pub fn from_zero_runs(profile: &RunProfile) -> BitWord {
    let mut bits = Vec::with_capacity(profile.origin_length() + 1);
    for &r in profile.entries() {
        bits.extend(std::iter::repeat(0).take(r as usize));
        bits.push(1);
    }
    BitWord(bits)
}

/// The run profile of `x`: zero-run lengths of the derivative of `x·1`.
/// Entry `i` equals the length of the `i`-th run of `x·1` minus one.
/// The empty word maps to `(0)`: the appended 1 alone forms one run.
pub fn run_profile(x: &BitWord) -> RunProfile {
    let appended = x.with_trailing_one();
    let deriv = derivative(&appended).expect("appended word is non-empty");
    zero_run_profile(&deriv).expect("derivative of a word ending in 1 ends in 1")
}

/// Inverse of [`run_profile`]; strips the appended trailing 1.
pub fn from_run_profile(profile: &RunProfile) -> BitWord {
    let deriv = from_zero_runs(profile);
    let appended = integrate(&deriv).expect("profile inversion is non-empty");
    debug_assert_eq!(appended.0.last(), Some(&1));
    BitWord(appended.0[..appended.len() - 1].to_vec())
}

/// Indicator word of the nonzero entries.
pub fn support(v: &[u64]) -> BitWord {
    BitWord(v.iter().map(|&e| u8::from(e != 0)).collect())
}

/// Entrywise residues.
pub fn reduce_mod(v: &[u64], a: u64) -> Result<ResidueVector> {
    if a < 2 {
        return Err(Error::ModulusTooSmall(a));
    }
    ResidueVector::new(v.iter().map(|&e| e % a).collect(), a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn derivative_matches_worked_example() {
        assert_eq!(derivative(&w("01110101001")).unwrap(), w("10011111011"));
    }

    #[test]
    fn derivative_fixed_points() {
        assert_eq!(derivative(&w("00000")).unwrap(), w("00000"));
        assert_eq!(derivative(&w("1")).unwrap(), w("1"));
        assert_eq!(derivative(&BitWord::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn integrate_inverts_worked_example() {
        assert_eq!(integrate(&w("10011111011")).unwrap(), w("01110101001"));
        assert_eq!(integrate(&w("0000")).unwrap(), w("0000"));
        assert_eq!(integrate(&BitWord::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn derivative_integrate_inverse_exhaustive() {
        for n in 1..=12usize {
            for idx in 0..(1u64 << n) {
                let x = BitWord::from_index(idx, n);
                let y = derivative(&x).unwrap();
                assert_eq!(integrate(&y).unwrap(), x);
            }
        }
    }

    #[test]
    fn zero_runs_worked_example() {
        let p = zero_run_profile(&w("10011111011")).unwrap();
        assert_eq!(p.entries(), &[0, 2, 0, 0, 0, 0, 1, 0]);
        assert_eq!(zero_run_profile(&w("1")).unwrap().entries(), &[0]);
        assert_eq!(zero_run_profile(&w("0001")).unwrap().entries(), &[3]);
        assert_eq!(zero_run_profile(&w("10")), Err(Error::NoTrailingOne));
        assert_eq!(zero_run_profile(&w("000")), Err(Error::NoTrailingOne));
    }

    #[test]
    fn from_zero_runs_inverts() {
        let p = RunProfile::new(vec![0, 2, 0, 0, 0, 0, 1, 0]);
        assert_eq!(from_zero_runs(&p), w("10011111011"));
        assert_eq!(from_zero_runs(&RunProfile::new(vec![0])), w("1"));
        assert_eq!(from_zero_runs(&RunProfile::new(vec![3])), w("0001"));
    }

    #[test]
    fn run_profile_worked_examples() {
        assert_eq!(
            run_profile(&w("0111010100")).entries(),
            &[0, 2, 0, 0, 0, 0, 1, 0]
        );
        assert_eq!(run_profile(&w("0100111001")).entries(), &[0, 0, 1, 2, 1, 1]);
        // The appended 1 extends a trailing 1-run but opens a run of its own
        // after trailing zeros.
        assert_eq!(run_profile(&w("1111")).entries(), &[4]);
        assert_eq!(run_profile(&w("0000")).entries(), &[3, 0]);
        assert_eq!(run_profile(&BitWord::empty()).entries(), &[0]);
    }

    #[test]
    fn run_profile_length_is_run_count_of_appended_word() {
        for n in 0..=10usize {
            for idx in 0..(1u64 << n) {
                let x = BitWord::from_index(idx, n);
                let p = run_profile(&x);
                assert_eq!(p.len(), x.with_trailing_one().run_count());
                assert_eq!(p.sum() as usize + p.len(), n + 1);
                assert_eq!(p.origin_length(), n);
            }
        }
    }

    #[test]
    fn from_run_profile_inverts_example() {
        let p = RunProfile::new(vec![0, 0, 1, 2, 1, 1]);
        assert_eq!(from_run_profile(&p), w("0100111001"));
        assert_eq!(from_run_profile(&RunProfile::new(vec![5])), w("11111"));
        assert_eq!(from_run_profile(&RunProfile::new(vec![3, 0])), w("0000"));
    }

    #[test]
    fn profile_bijective_up_to_12() {
        use std::collections::HashSet;
        for n in 0..=12usize {
            let mut seen = HashSet::new();
            for idx in 0..(1u64 << n) {
                let x = BitWord::from_index(idx, n);
                let p = run_profile(&x);
                assert_eq!(from_run_profile(&p), x);
                assert!(seen.insert(p.entries().to_vec()));
            }
            assert_eq!(seen.len(), 1usize << n);
        }
    }

    #[test]
    fn support_and_reduce_mod() {
        assert_eq!(support(&[0, 0, 1, 2, 1, 0]), w("001110"));
        assert_eq!(support(&[0, 0, 0]), w("000"));
        assert_eq!(support(&[5, 0, 3]), w("101"));

        let r = reduce_mod(&[0, 0, 1, 2, 1, 1], 3).unwrap();
        assert_eq!(r.entries(), &[0, 0, 1, 2, 1, 1]);
        let r = reduce_mod(&[3, 4, 5], 3).unwrap();
        assert_eq!(r.entries(), &[0, 1, 2]);
        assert_eq!(reduce_mod(&[1], 1), Err(Error::ModulusTooSmall(1)));
    }

    #[test]
    fn parse_rejects_bad_characters() {
        let err = "0101x1".parse::<BitWord>().unwrap_err();
        assert_eq!(
            err,
            Error::BadBit {
                position: 4,
                found: 'x'
            }
        );
    }
}
