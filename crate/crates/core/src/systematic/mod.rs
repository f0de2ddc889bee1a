//! The systematic codec.
//!
//! A codeword is the message followed by an integrated redundancy block. In
//! the derivative domain the redundancy is two balanced sections: the BCH
//! parity of the message's padded profile residues (balanced, then protected
//! by a zero-deletion label) and that label itself (balanced, then framed by
//! bit repetition). Channel damage deletes zeros in the derivative domain
//! and never touches 1s, so counting 1s from the end locates both sections
//! no matter what was deleted; each protection layer is provisioned for the
//! full budget since the channel may concentrate damage anywhere.

mod balance;
mod repetition;
mod zero_label;

pub use balance::{balance, unbalance, BalancedWord};
pub use repetition::{rep_decode, rep_encode};
pub use zero_label::ZeroLabel;

use serde::Serialize;

use crate::bch::BchCode;
use crate::channel::ChannelSpec;
use crate::error::{DecodeFailure, Error, Result};
use crate::galois::smallest_prime_at_least;
use crate::word::{self, BitWord, ResidueVector};

/// Every derived length of the codec, in encoding order. The two balanced
/// sections keep odd total lengths (marker + even balanced remainder), so
/// the decoder's 1-counts below are exact integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodecParams {
    pub k: usize,
    pub t: usize,
    pub l: u64,
    /// Zero-deletion budget t*l.
    pub budget: u64,
    /// Profile alphabet prime (smallest prime >= l+1) and BCH context.
    pub p: u64,
    pub m: usize,
    pub bch_len: usize,
    pub bch_dim: usize,
    /// Parity section: symbols, serialized bits, evenness pad, flip-index
    /// suffix, and the total balanced length n1.
    pub parity_syms: usize,
    pub parity_bits: usize,
    pub parity_pad: usize,
    pub parity_suffix: usize,
    pub n1: usize,
    /// Label section: the zero-deletion label of the parity section.
    pub label_prime: u64,
    pub label_mother_len: usize,
    pub label_syms: usize,
    pub label_bits: usize,
    pub label_pad: usize,
    pub label_suffix: usize,
    pub inner_n2: usize,
    pub repetition: usize,
    pub n2: usize,
    /// Codeword length N = k + n1 + n2.
    pub total_len: usize,
    /// 1s in the label section alone and in the whole redundancy, the
    /// decoder's scan counts.
    pub label_section_ones: usize,
    pub redundancy_ones: usize,
}

/// Bit width of symbols below `p`.
fn symbol_width(p: u64) -> usize {
    (64 - (p - 1).leading_zeros()) as usize
}

/// Fixed-width big-endian serialization of symbols below `p`.
pub fn to_bits(symbols: &[u64], p: u64) -> BitWord {
    let width = symbol_width(p);
    let mut bits = Vec::with_capacity(symbols.len() * width);
    for &s in symbols {
        debug_assert!(s < p);
        for shift in (0..width).rev() {
            bits.push(((s >> shift) & 1) as u8);
        }
    }
    BitWord::new(bits)
}

/// Inverse of [`to_bits`]; rejects fields that are not valid symbols.
pub fn from_bits(word: &BitWord, p: u64) -> Result<Vec<u64>> {
    let width = symbol_width(p);
    if word.len() % width != 0 {
        return Err(Error::LengthMismatch {
            expected: word.len().next_multiple_of(width),
            got: word.len(),
        });
    }
    let mut out = Vec::with_capacity(word.len() / width);
    for chunk in word.bits().chunks(width) {
        let mut value = 0u64;
        for &b in chunk {
            value = (value << 1) | b as u64;
        }
        if value >= p {
            return Err(Error::SymbolOutOfRange { value, modulus: p });
        }
        out.push(value);
    }
    Ok(out)
}

/// The full codec: parameters plus the two algebraic engines behind them.
#[derive(Clone, Debug)]
pub struct SystematicCode {
    params: CodecParams,
    bch: BchCode,
    labeler: ZeroLabel,
}

/// Derives the parameter ledger alone.
pub fn derive_params(k: usize, spec: ChannelSpec) -> Result<CodecParams> {
    SystematicCode::new(k, spec).map(|c| c.params)
}

impl SystematicCode {
    pub fn new(k: usize, spec: ChannelSpec) -> Result<Self> {
        assert!(k >= 4, "message length below 4 is not supported");
        assert!(spec.t >= 1 && spec.l >= 1, "channel must allow deletions");
        let p = smallest_prime_at_least(spec.l + 1);
        let d = 2 * spec.t as u64 + 1;

        // Smallest extension with room for the k+1 padded profile symbols.
        let mut m = 1usize;
        let bch = loop {
            if p.pow(m as u32) - 1 >= d {
                let candidate = BchCode::design(p, m, d)?;
                if candidate.dimension() >= k + 1 {
                    break candidate;
                }
            }
            m += 1;
        };

        let parity_syms = bch.len() - bch.dimension();
        let parity_bits = parity_syms * symbol_width(p);
        let parity_pad = parity_bits % 2;
        let parity_body = parity_bits + parity_pad;
        let parity_suffix = balance::suffix_len(parity_body);
        let n1 = 1 + parity_body + parity_suffix;

        let budget = spec.budget();
        let repetition = 2 * budget as usize + 1;
        let labeler = ZeroLabel::new(n1, budget)?;
        let label_syms = labeler.label_syms();
        let label_bits = label_syms * symbol_width(labeler.prime());
        let label_pad = label_bits % 2;
        let label_body = label_bits + label_pad;
        let label_suffix = balance::suffix_len(label_body);
        let inner_n2 = 1 + label_body + label_suffix;
        let n2 = repetition * inner_n2;

        let label_section_ones = repetition * (inner_n2 + 1) / 2;
        let redundancy_ones = (n1 + 1) / 2 + label_section_ones;

        let params = CodecParams {
            k,
            t: spec.t,
            l: spec.l,
            budget,
            p,
            m: bch.extension_degree(),
            bch_len: bch.len(),
            bch_dim: bch.dimension(),
            parity_syms,
            parity_bits,
            parity_pad,
            parity_suffix,
            n1,
            label_prime: labeler.prime(),
            label_mother_len: labeler.mother_len(),
            label_syms,
            label_bits,
            label_pad,
            label_suffix,
            inner_n2,
            repetition,
            n2,
            total_len: k + n1 + n2,
            label_section_ones,
            redundancy_ones,
        };
        Ok(SystematicCode {
            params,
            bch,
            labeler,
        })
    }

    pub fn params(&self) -> &CodecParams {
        &self.params
    }

    pub fn spec(&self) -> ChannelSpec {
        ChannelSpec::new(self.params.t, self.params.l)
    }

    /// Padded profile residues of the message: length k+1 over GF(p).
    fn padded_profile(&self, msg: &BitWord) -> Vec<u64> {
        let profile = word::run_profile(msg);
        let mut out: Vec<u64> = profile
            .entries()
            .iter()
            .map(|&u| u % self.params.p)
            .collect();
        out.resize(self.params.k + 1, 0);
        out
    }

    /// The redundancy sections in the derivative domain: the balanced parity
    /// section (n1 bits) and the repetition-framed label section (n2 bits).
    fn derivative_sections(&self, msg: &BitWord) -> (BitWord, BitWord) {
        let p = &self.params;
        let parity = self.bch.parity_of(&self.padded_profile(msg));
        let mut parity_word = to_bits(&parity, p.p);
        if p.parity_pad == 1 {
            parity_word = parity_word.concat(&BitWord::zeros(1));
        }
        let section_one = balance(&parity_word).into_word();

        let label = self.labeler.label(&section_one);
        let mut label_word = to_bits(&label, p.label_prime);
        if p.label_pad == 1 {
            label_word = label_word.concat(&BitWord::zeros(1));
        }
        let inner = balance(&label_word).into_word();
        let section_two = rep_encode(&inner, p.repetition);
        (section_one, section_two)
    }

    /// Encode: the message itself, then the integral of the redundancy
    /// sections, so that the codeword's derivative carries them verbatim.
    pub fn encode(&self, msg: &BitWord) -> Result<BitWord> {
        let p = &self.params;
        if msg.len() != p.k {
            return Err(Error::LengthMismatch {
                expected: p.k,
                got: msg.len(),
            });
        }
        let (section_one, section_two) = self.derivative_sections(msg);
        debug_assert_eq!(section_one.len(), p.n1);
        debug_assert_eq!(section_two.len(), p.n2);
        debug_assert_eq!(
            section_one.weight() + section_two.weight(),
            p.redundancy_ones
        );
        let redundancy = section_one.concat(&section_two);
        let out = msg.concat(&word::integrate(&redundancy)?);
        debug_assert_eq!(out.len(), p.total_len);
        Ok(out)
    }

    /// Index (0-based) of the `count`-th 1 from the end, if present.
    fn ones_from_end(y: &BitWord, count: usize) -> Option<usize> {
        let mut seen = 0usize;
        for i in (0..y.len()).rev() {
            if y.bit(i) == 1 {
                seen += 1;
                if seen == count {
                    return Some(i);
                }
            }
        }
        None
    }

    pub fn decode(&self, received: &BitWord) -> Result<BitWord> {
        let p = &self.params;
        if received.len() > p.total_len
            || p.total_len - received.len() > p.budget as usize
        {
            return Err(DecodeFailure::TooManyDeletions.into());
        }
        let deriv = word::derivative(received)?;

        // The two section markers, located by 1-counts that deletions cannot
        // disturb.
        let label_start = Self::ones_from_end(&deriv, p.label_section_ones)
            .ok_or(DecodeFailure::MarkerNotFound)?;
        let parity_start = Self::ones_from_end(&deriv, p.redundancy_ones)
            .ok_or(DecodeFailure::MarkerNotFound)?;

        // Undo the repetition framing and the balancing of the label section.
        let label_section = deriv.slice(label_start, deriv.len());
        let inner = rep_decode(&label_section, p.repetition, p.budget)?;
        if inner.len() != p.inner_n2 {
            return Err(DecodeFailure::SectionLength { section: "label" }.into());
        }
        let label_word = unbalance(&BalancedWord::new(inner)?, p.label_bits + p.label_pad)?;
        let label_word = label_word.slice(0, p.label_bits);
        let label = from_bits(&label_word, p.label_prime)
            .map_err(|_| DecodeFailure::BalanceMalformed("label symbol out of range"))?;

        // Recover the parity section through its zero-deletion label.
        let parity_section = deriv.slice(parity_start, label_start);
        let section_one = self
            .labeler
            .decode(&parity_section, &label, p.budget)?;
        let parity_word = unbalance(
            &BalancedWord::new(section_one)?,
            p.parity_bits + p.parity_pad,
        )?;
        let parity_word = parity_word.slice(0, p.parity_bits);
        let parity = from_bits(&parity_word, p.p)
            .map_err(|_| DecodeFailure::BalanceMalformed("parity symbol out of range"))?;

        // The surviving message region, with its profile re-padded exactly
        // as the encoder padded it.
        let msg_region = received.slice(0, parity_start);
        let profile = word::run_profile(&msg_region);
        if profile.len() > p.k + 1 {
            return Err(DecodeFailure::SectionLength { section: "message" }.into());
        }
        let mut bch_word: Vec<u64> = profile
            .entries()
            .iter()
            .map(|&u| u % p.p)
            .collect();
        bch_word.resize(p.bch_dim, 0);
        bch_word.extend_from_slice(&parity);
        let decoded = self
            .bch
            .decode(&ResidueVector::new(bch_word, p.p)?)?;

        // Deletion magnitudes are the negated error symbols; they must sit
        // inside the surviving profile and within the channel budget.
        let magnitudes: Vec<u64> = decoded
            .error
            .iter()
            .map(|&e| (p.p - e) % p.p)
            .collect();
        if magnitudes[profile.len()..].iter().any(|&e| e != 0) {
            return Err(DecodeFailure::PaddingCorrupted.into());
        }
        let eps = &magnitudes[..profile.len()];
        if eps.iter().any(|&e| e > p.l) {
            return Err(DecodeFailure::BudgetExceeded.into());
        }
        if eps.iter().filter(|&&e| e != 0).count() > p.t {
            return Err(DecodeFailure::BudgetExceeded.into());
        }
        if eps.iter().sum::<u64>() > p.budget {
            return Err(DecodeFailure::BudgetExceeded.into());
        }

        let restored = profile.add(eps);
        let msg = word::from_run_profile(&restored);
        if msg.len() != p.k {
            return Err(DecodeFailure::NotACodeword.into());
        }
        Ok(msg)
    }
}
