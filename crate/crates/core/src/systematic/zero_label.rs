//! Zero-deletion protection for the balanced parity block.
//!
//! Deleting up to T zeros from a word decreases its zero-run vector
//! entrywise with total deficit at most T, so two words confusable under the
//! same received word have zero-run vectors differing by a signed vector of
//! support at most 2T and magnitude at most T. A BCH remainder over GF(p')
//! with designed distance 4T+1 and p' > 2T+1 therefore separates all
//! confusable pairs: their difference reduced mod p' is a nonzero vector of
//! weight at most 2T, too light to be a codeword. Decoding reinserts the
//! missing zeros by brute force and keeps the unique label match.

use crate::bch::BchCode;
use crate::error::{DecodeFailure, Result};
use crate::galois::{smallest_prime_at_least, Poly, PrimeField};
use crate::word::{self, BitWord};

#[derive(Clone, Debug)]
pub struct ZeroLabel {
    budget: u64,
    protected_len: usize,
    prime: u64,
    mother_len: usize,
    field: PrimeField,
    generator: Poly,
    label_syms: usize,
    /// x^j mod generator for every possible zero-run index.
    power_remainders: Vec<Poly>,
}

impl ZeroLabel {
    /// Scheme protecting words of length `protected_len` against up to
    /// `budget` zero deletions.
    pub fn new(protected_len: usize, budget: u64) -> Result<Self> {
        assert!(budget >= 1, "a zero budget needs no label");
        let prime = smallest_prime_at_least(2 * budget + 2);
        let distance = 4 * budget + 1;
        let mut m = 1usize;
        while prime.pow(m as u32) - 1 < (protected_len as u64 + 1).max(distance) {
            m += 1;
        }
        let bch = BchCode::design(prime, m, distance)?;
        let generator = bch.generator().clone();
        let field = PrimeField::new(prime);
        let label_syms = generator.degree();
        let max_positions = protected_len + 2;
        let mut power_remainders = Vec::with_capacity(max_positions);
        let mut cur = Poly::one();
        for _ in 0..max_positions {
            power_remainders.push(cur.clone());
            cur = cur.mul(&Poly::monomial(1), &field).rem(&generator, &field);
        }
        Ok(ZeroLabel {
            budget,
            protected_len,
            prime,
            mother_len: bch.len(),
            field,
            generator,
            label_syms,
            power_remainders,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn mother_len(&self) -> usize {
        self.mother_len
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Label width in GF(p') symbols.
    pub fn label_syms(&self) -> usize {
        self.label_syms
    }

    pub fn protected_len(&self) -> usize {
        self.protected_len
    }

    fn zero_runs(x: &BitWord) -> Vec<u64> {
        word::zero_run_profile(&x.with_trailing_one())
            .expect("appended word ends in 1")
            .entries()
            .to_vec()
    }

    fn label_of_runs(&self, runs: &[u64]) -> Vec<u64> {
        let poly = Poly::new(runs.iter().map(|&r| r % self.prime).collect());
        let rem = poly.rem(&self.generator, &self.field);
        let mut out = rem.coeffs().to_vec();
        out.resize(self.label_syms, 0);
        out
    }

    /// The label: remainder of the zero-run vector by the BCH generator.
    pub fn label(&self, x: &BitWord) -> Vec<u64> {
        assert_eq!(x.len(), self.protected_len, "label is length-specific");
        self.label_of_runs(&Self::zero_runs(x))
    }

    /// Brute-force recovery: try every way of distributing the missing zeros
    /// over the zero-runs and keep the unique candidate whose label matches.
    /// Also reports how many candidates were examined.
    pub fn decode_counting(
        &self,
        corrupted: &BitWord,
        label: &[u64],
        budget: u64,
    ) -> Result<(BitWord, usize)> {
        if corrupted.len() > self.protected_len
            || self.protected_len - corrupted.len() > budget as usize
        {
            return Err(DecodeFailure::TooManyDeletions.into());
        }
        let deficit = self.protected_len - corrupted.len();
        let runs = Self::zero_runs(corrupted);
        let base = self.label_of_runs(&runs);

        let mut matches: Vec<Vec<u64>> = Vec::new();
        let mut examined = 0usize;
        // DFS over compositions of `deficit` into runs.len() parts, keeping
        // the label remainder updated incrementally.
        let mut addition = vec![0u64; runs.len()];
        let mut remainder = base;
        self.search(
            0,
            deficit,
            &mut addition,
            &mut remainder,
            label,
            &runs,
            &mut matches,
            &mut examined,
        );
        match matches.len() {
            1 => {
                let restored: Vec<u64> = runs
                    .iter()
                    .zip(&matches[0])
                    .map(|(&r, &d)| r + d)
                    .collect();
                let with_marker = word::from_zero_runs(&word::RunProfile::new(restored));
                // Strip the appended 1.
                Ok((
                    with_marker.slice(0, with_marker.len() - 1),
                    examined,
                ))
            }
            candidates => Err(DecodeFailure::LabelMismatch { candidates }.into()),
        }
    }

    pub fn decode(&self, corrupted: &BitWord, label: &[u64], budget: u64) -> Result<BitWord> {
        self.decode_counting(corrupted, label, budget)
            .map(|(word, _)| word)
    }

    /// Adds x^pos (mod generator) into the running remainder.
    fn bump(&self, pos: usize, remainder: &mut [u64], down: bool) {
        for (slot, &coeff) in self.power_remainders[pos].coeffs().iter().enumerate() {
            remainder[slot] = if down {
                self.field.sub(remainder[slot], coeff)
            } else {
                self.field.add(remainder[slot], coeff)
            };
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        pos: usize,
        remaining: usize,
        addition: &mut Vec<u64>,
        remainder: &mut Vec<u64>,
        target: &[u64],
        runs: &[u64],
        matches: &mut Vec<Vec<u64>>,
        examined: &mut usize,
    ) {
        if pos == runs.len() {
            debug_assert_eq!(remaining, 0);
            *examined += 1;
            if remainder == target {
                matches.push(addition.clone());
            }
            return;
        }
        // The last position absorbs whatever is left; adding a zero to run
        // `pos` adds x^pos to the zero-run vector.
        let min_here = if pos + 1 == runs.len() { remaining } else { 0 };
        for _ in 0..min_here {
            self.bump(pos, remainder, false);
        }
        addition[pos] = min_here as u64;
        for share in min_here..=remaining {
            if share > min_here {
                self.bump(pos, remainder, false);
                addition[pos] = share as u64;
            }
            self.search(
                pos + 1,
                remaining - share,
                addition,
                remainder,
                target,
                runs,
                matches,
                examined,
            );
        }
        for _ in 0..addition[pos] {
            self.bump(pos, remainder, true);
        }
        addition[pos] = 0;
    }

    /// Upper bound on the candidates a decode may examine:
    /// C(#zero-runs + budget - 1, budget) compositions.
    pub fn candidate_bound(&self, corrupted: &BitWord, budget: u64) -> u128 {
        let runs = Self::zero_runs(corrupted).len() as u64;
        super::balance::binomial(runs + budget - 1, budget)
    }
}
