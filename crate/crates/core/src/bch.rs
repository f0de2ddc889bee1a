//! p-ary primitive narrow-sense BCH codes over GF(p): parameter design,
//! systematic encoding, and bounded-distance decoding via syndromes,
//! Berlekamp–Massey, Chien search, and Forney magnitudes.
//!
//! Decode failure is a first-class result: the sticky-deletion decoders rely
//! on guaranteed-correct decoding only within the channel promise and treat
//! everything else as a reported failure, never a silent wrong answer.

use crate::error::{DecodeFailure, Error, Result};
use crate::galois::{ExtElem, ExtField, Poly, PrimeField};
use crate::word::ResidueVector;

/// A narrow-sense primitive BCH code of length p^m - 1 over GF(p) whose
/// generator has the consecutive roots alpha^1 … alpha^(d-1).
#[derive(Clone, Debug)]
pub struct BchCode {
    field: PrimeField,
    ext: ExtField,
    n: usize,
    designed_distance: u64,
    dimension: usize,
    generator: Poly,
    /// (x^k)^{-1} mod g, precomputed for systematic parity.
    xk_inverse: Poly,
    /// alpha^i for i in 0..n.
    alpha_powers: Vec<ExtElem>,
}

/// Outcome of a successful bounded-distance decode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BchDecode {
    /// The unique codeword within the decoding radius.
    pub codeword: ResidueVector,
    /// `word - codeword` entrywise mod p.
    pub error: Vec<u64>,
}

impl BchCode {
    /// Designs the [n, k, d] code over GF(p) with n = p^m - 1. The generator
    /// is the least common multiple of the minimal polynomials of
    /// alpha^1 … alpha^(d-1).
    pub fn design(p: u64, m: usize, d: u64) -> Result<Self> {
        let ext = ExtField::new(p, m);
        let field = *ext.base();
        let n = ext.group_order() as usize;
        if d > n as u64 {
            return Err(Error::DistanceTooLarge { d, n: n as u64 });
        }
        assert!(d >= 2, "designed distance must be at least 2");

        let mut covered = std::collections::BTreeSet::new();
        let mut generator = Poly::one();
        for s in 1..d {
            if covered.contains(&(s % n as u64)) {
                continue;
            }
            let coset = crate::galois::cyclotomic_coset(p, n as u64, s);
            for &c in &coset {
                covered.insert(c);
            }
            let mp = ext.minimal_polynomial(&ext.alpha_pow(s as i64));
            generator = generator.mul(&mp, &field);
        }
        let dimension = n - generator.degree();

        // Redundancy formula n - k = ceil((d-1)(1-1/p)) * m, exact whenever
        // the design precondition d <= p^(ceil(m/2)-1) holds.
        let precondition_bound = p.checked_pow((m as u32).div_ceil(2) - 1);
        if let Some(bound) = precondition_bound {
            if d <= bound {
                let expected = ((d - 1) * (p - 1)).div_ceil(p) as usize * m;
                assert_eq!(
                    generator.degree(),
                    expected,
                    "generator degree disagrees with the designed redundancy"
                );
            }
        }

        let xk_inverse = Poly::monomial(dimension).inv_mod(&generator, &field)?;

        let mut alpha_powers = Vec::with_capacity(n);
        let mut cur = ext.one();
        for _ in 0..n {
            alpha_powers.push(cur.clone());
            cur = ext.mul(&cur, ext.alpha());
        }

        Ok(BchCode {
            field,
            ext,
            n,
            designed_distance: d,
            dimension,
            generator,
            xk_inverse,
            alpha_powers,
        })
    }

    pub fn p(&self) -> u64 {
        self.field.order()
    }

    pub fn extension_degree(&self) -> usize {
        self.ext.degree()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn designed_distance(&self) -> u64 {
        self.designed_distance
    }

    /// Guaranteed correction radius, floor((d-1)/2) symbol errors.
    pub fn radius(&self) -> usize {
        ((self.designed_distance - 1) / 2) as usize
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    fn check_symbols(&self, word: &ResidueVector) -> Result<()> {
        if word.modulus() != self.p() {
            return Err(Error::SymbolOutOfRange {
                value: word.modulus(),
                modulus: self.p(),
            });
        }
        Ok(())
    }

    /// Systematic encoding: the message occupies the first k symbols, parity
    /// the remaining n - k. Messages shorter than k are zero-padded on the
    /// right (code shortening); zero symbols contribute nothing to parity.
    pub fn encode_systematic(&self, msg: &ResidueVector) -> Result<ResidueVector> {
        self.check_symbols(msg)?;
        if msg.len() > self.dimension {
            return Err(Error::LengthMismatch {
                expected: self.dimension,
                got: msg.len(),
            });
        }
        let parity = self.parity_of(msg.entries());
        let mut out = msg.entries().to_vec();
        out.resize(self.dimension, 0);
        out.extend_from_slice(&parity);
        ResidueVector::new(out, self.p())
    }

    /// Parity symbols alone (length n - k) for a message of length <= k.
    pub fn parity_of(&self, msg: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let msg_poly = Poly::new(msg.to_vec());
        let rem = msg_poly.rem(&self.generator, f);
        // parity = -(msg mod g) * (x^k)^{-1} mod g, so that
        // msg(x) + x^k * parity(x) = 0 mod g.
        let parity_poly = rem
            .mul(&self.xk_inverse, f)
            .rem(&self.generator, f)
            .scale(f.neg(1), f);
        let mut parity = parity_poly.coeffs().to_vec();
        parity.resize(self.n - self.dimension, 0);
        parity
    }

    /// Syndromes S_j = word(alpha^j) for j = 1..d-1.
    pub fn syndromes(&self, word: &[u64]) -> Vec<ExtElem> {
        let mut out = Vec::with_capacity(self.designed_distance as usize - 1);
        for j in 1..self.designed_distance {
            let mut acc = self.ext.zero();
            for (i, &w) in word.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let idx = (i as u64 * j) % self.n as u64;
                let term = self.ext.scale(&self.alpha_powers[idx as usize], w);
                acc = self.ext.add(&acc, &term);
            }
            out.push(acc);
        }
        out
    }

    pub fn is_codeword(&self, word: &ResidueVector) -> bool {
        word.modulus() == self.p()
            && word.len() == self.n
            && self
                .syndromes(word.entries())
                .iter()
                .all(|s| self.ext.is_zero(s))
    }

    /// Bounded-distance decode. Returns the unique codeword within Hamming
    /// distance floor((d-1)/2) if one exists, otherwise a decode failure.
    pub fn decode(&self, word: &ResidueVector) -> Result<BchDecode> {
        self.check_symbols(word)?;
        if word.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: word.len(),
            });
        }
        let syndromes = self.syndromes(word.entries());
        if syndromes.iter().all(|s| self.ext.is_zero(s)) {
            return Ok(BchDecode {
                codeword: word.clone(),
                error: vec![0; self.n],
            });
        }

        let lambda = self.berlekamp_massey(&syndromes);
        let num_errors = lambda.len() - 1;
        if num_errors > self.radius() {
            return Err(DecodeFailure::BchUncorrectable.into());
        }
        let positions = self.chien_search(&lambda);
        if positions.len() != num_errors {
            return Err(DecodeFailure::BchUncorrectable.into());
        }
        let magnitudes = self.forney(&syndromes, &lambda, &positions)?;

        let mut corrected = word.entries().to_vec();
        let mut error = vec![0u64; self.n];
        for (&pos, &mag) in positions.iter().zip(&magnitudes) {
            corrected[pos] = self.field.sub(corrected[pos], mag);
            error[pos] = mag;
        }
        if !self
            .syndromes(&corrected)
            .iter()
            .all(|s| self.ext.is_zero(s))
        {
            return Err(DecodeFailure::BchUncorrectable.into());
        }
        Ok(BchDecode {
            codeword: ResidueVector::new(corrected, self.p())?,
            error,
        })
    }

    /// Error-locator polynomial from the syndrome sequence; coefficient i of
    /// the returned vector is the x^i coefficient over GF(p^m).
    fn berlekamp_massey(&self, syndromes: &[ExtElem]) -> Vec<ExtElem> {
        let ext = &self.ext;
        let mut lambda = vec![ext.one()];
        let mut prev = vec![ext.one()];
        let mut l = 0usize;
        let mut shift = 1usize;
        let mut prev_disc = ext.one();

        for r in 0..syndromes.len() {
            let mut disc = syndromes[r].clone();
            for i in 1..=l.min(lambda.len() - 1) {
                if r >= i {
                    let term = ext.mul(&lambda[i], &syndromes[r - i]);
                    disc = ext.add(&disc, &term);
                }
            }
            if ext.is_zero(&disc) {
                shift += 1;
                continue;
            }
            let scale = ext.mul(&disc, &ext.inv(&prev_disc).expect("nonzero discrepancy"));
            let mut next = lambda.clone();
            if next.len() < prev.len() + shift {
                next.resize(prev.len() + shift, ext.zero());
            }
            for (i, c) in prev.iter().enumerate() {
                let term = ext.mul(&scale, c);
                next[i + shift] = ext.sub(&next[i + shift], &term);
            }
            if 2 * l <= r {
                prev = lambda;
                prev_disc = disc;
                l = r + 1 - l;
                shift = 1;
            } else {
                shift += 1;
            }
            lambda = next;
        }
        while lambda.len() > 1 && self.ext.is_zero(lambda.last().unwrap()) {
            lambda.pop();
        }
        lambda
    }

    /// Positions i with lambda(alpha^{-i}) = 0.
    fn chien_search(&self, lambda: &[ExtElem]) -> Vec<usize> {
        let ext = &self.ext;
        let n = self.n as u64;
        let mut positions = Vec::new();
        for i in 0..self.n {
            let mut acc = ext.zero();
            for (j, c) in lambda.iter().enumerate() {
                // alpha^{-i*j} = alpha_powers[(-i*j) mod n]
                let idx = (n - (i as u64 * j as u64) % n) % n;
                let term = ext.mul(c, &self.alpha_powers[idx as usize]);
                acc = ext.add(&acc, &term);
            }
            if ext.is_zero(&acc) {
                positions.push(i);
            }
        }
        positions
    }

    /// Error magnitudes at the located positions; they must land in the base
    /// field or the received word is outside the decodable region.
    fn forney(
        &self,
        syndromes: &[ExtElem],
        lambda: &[ExtElem],
        positions: &[usize],
    ) -> Result<Vec<u64>> {
        let ext = &self.ext;
        let n = self.n as u64;
        // Omega = S(x) * lambda(x) mod x^(d-1), with S(x) = sum S_{j+1} x^j.
        let width = syndromes.len();
        let mut omega = vec![ext.zero(); width];
        for (i, s) in syndromes.iter().enumerate() {
            for (j, c) in lambda.iter().enumerate() {
                if i + j < width {
                    let term = ext.mul(s, c);
                    omega[i + j] = ext.add(&omega[i + j], &term);
                }
            }
        }
        // Formal derivative of lambda.
        let deriv: Vec<ExtElem> = (1..lambda.len())
            .map(|i| ext.scale(&lambda[i], (i as u64) % self.p()))
            .collect();

        let eval = |poly: &[ExtElem], x_index: u64| {
            let mut acc = ext.zero();
            for (j, c) in poly.iter().enumerate() {
                let idx = (x_index * j as u64) % n;
                let term = ext.mul(c, &self.alpha_powers[idx as usize]);
                acc = ext.add(&acc, &term);
            }
            acc
        };

        let mut magnitudes = Vec::with_capacity(positions.len());
        for &pos in positions {
            let inv_index = (n - pos as u64 % n) % n; // alpha^{-pos}
            let num = eval(&omega, inv_index);
            let den = eval(&deriv, inv_index);
            if ext.is_zero(&den) {
                return Err(DecodeFailure::BchUncorrectable.into());
            }
            let value = ext.neg(&ext.mul(&num, &ext.inv(&den)?));
            match ext.as_base(&value) {
                Some(mag) if mag != 0 => magnitudes.push(mag),
                _ => return Err(DecodeFailure::BchUncorrectable.into()),
            }
        }
        Ok(magnitudes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(entries: &[u64], p: u64) -> ResidueVector {
        ResidueVector::new(entries.to_vec(), p).unwrap()
    }

    /// All p^k codewords of a small code, by encoding every message.
    fn enumerate_codewords(code: &BchCode) -> Vec<ResidueVector> {
        let p = code.p();
        let k = code.dimension();
        let total = (p as u128).pow(k as u32);
        assert!(total <= 1 << 20, "code too large to enumerate");
        let mut out = Vec::with_capacity(total as usize);
        for mut idx in 0..total {
            let mut msg = vec![0u64; k];
            for slot in msg.iter_mut() {
                *slot = (idx % p as u128) as u64;
                idx /= p as u128;
            }
            out.push(code.encode_systematic(&rv(&msg, p)).unwrap());
        }
        out
    }

    #[test]
    fn design_matches_redundancy_formula() {
        let code = BchCode::design(3, 2, 3).unwrap();
        assert_eq!(code.len(), 8);
        assert_eq!(code.len() - code.dimension(), 4);
        assert_eq!(code.dimension(), 4);

        // d = 5 over GF(9): the cosets of 1..4 mod 8 are {1,3}, {2,6} and the
        // singleton {4}, so the generator has degree 5 (the closed-form
        // redundancy needs d within its precondition, which fails at m = 2).
        let code = BchCode::design(3, 2, 5).unwrap();
        assert_eq!(code.len() - code.dimension(), 5);
        assert_eq!(code.dimension(), 3);

        // Binary single-error BCH is the Hamming code: n - k = m.
        for m in [3usize, 4, 5] {
            let code = BchCode::design(2, m, 3).unwrap();
            assert_eq!(code.len() - code.dimension(), m);
        }

        let code = BchCode::design(5, 2, 3).unwrap();
        assert_eq!(code.len(), 24);
        assert_eq!(code.len() - code.dimension(), 4);

        assert!(matches!(
            BchCode::design(2, 2, 4),
            Err(Error::DistanceTooLarge { .. })
        ));
    }

    #[test]
    fn zero_message_encodes_to_zero() {
        let code = BchCode::design(3, 2, 3).unwrap();
        let encoded = code.encode_systematic(&rv(&[0, 0, 0, 0], 3)).unwrap();
        assert!(encoded.entries().iter().all(|&s| s == 0));
        assert!(code.is_codeword(&encoded));
    }

    #[test]
    fn shortened_message_has_same_parity() {
        let code = BchCode::design(3, 2, 3).unwrap();
        let full = code.encode_systematic(&rv(&[1, 2, 0, 0], 3)).unwrap();
        let short = code.encode_systematic(&rv(&[1, 2], 3)).unwrap();
        assert_eq!(full, short);
        assert!(code
            .encode_systematic(&rv(&[0, 0, 0, 0, 0], 3))
            .is_err());
    }

    #[test]
    fn every_codeword_meets_designed_distance() {
        for (p, m, d) in [(3u64, 2usize, 3u64), (3, 2, 5), (2, 3, 3)] {
            let code = BchCode::design(p, m, d).unwrap();
            for cw in enumerate_codewords(&code) {
                let weight = cw.entries().iter().filter(|&&s| s != 0).count();
                assert!(
                    weight == 0 || weight >= d as usize,
                    "codeword {:?} has weight {weight} < {d}",
                    cw.entries()
                );
            }
        }
    }

    #[test]
    fn decode_identity_on_codewords() {
        let code = BchCode::design(3, 2, 5).unwrap();
        for cw in enumerate_codewords(&code) {
            let out = code.decode(&cw).unwrap();
            assert_eq!(out.codeword, cw);
            assert!(out.error.iter().all(|&e| e == 0));
        }
    }

    #[test]
    fn corrects_up_to_radius_exhaustively() {
        // Every weight<=t error pattern on every codeword of small codes.
        for (p, m, d) in [(3u64, 2usize, 3u64), (3, 2, 5), (2, 4, 3)] {
            let code = BchCode::design(p, m, d).unwrap();
            let t = code.radius();
            let n = code.len();
            let codewords = enumerate_codewords(&code);
            for cw in &codewords {
                for pos1 in 0..n {
                    for mag1 in 1..p {
                        let mut corrupted = cw.entries().to_vec();
                        corrupted[pos1] = (corrupted[pos1] + mag1) % p;
                        if t >= 1 {
                            let received = rv(&corrupted, p);
                            let out = code.decode(&received).unwrap();
                            assert_eq!(&out.codeword, cw);
                        }
                        if t >= 2 {
                            for pos2 in pos1 + 1..n {
                                for mag2 in 1..p {
                                    let mut twice = corrupted.clone();
                                    twice[pos2] = (twice[pos2] + mag2) % p;
                                    let out = code.decode(&rv(&twice, p)).unwrap();
                                    assert_eq!(&out.codeword, cw, "2 errors at {pos1},{pos2}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn error_vector_is_word_minus_codeword() {
        let code = BchCode::design(3, 2, 5).unwrap();
        let cw = code.encode_systematic(&rv(&[1, 2], 3)).unwrap();
        let mut corrupted = cw.entries().to_vec();
        corrupted[0] = (corrupted[0] + 2) % 3;
        corrupted[5] = (corrupted[5] + 1) % 3;
        let out = code.decode(&rv(&corrupted, 3)).unwrap();
        assert_eq!(out.codeword, cw);
        for i in 0..code.len() {
            assert_eq!(
                out.error[i],
                (corrupted[i] + 3 - cw.entries()[i]) % 3,
                "position {i}"
            );
        }
    }

    #[test]
    fn reports_failure_beyond_radius() {
        // The [8,2,5] ternary code has 9 codewords; find a word at distance
        // >= 3 from all of them and check the decoder refuses it.
        let code = BchCode::design(3, 2, 5).unwrap();
        let codewords = enumerate_codewords(&code);
        let dist = |a: &[u64], b: &[u64]| a.iter().zip(b).filter(|(x, y)| x != y).count();
        let mut found = false;
        'outer: for idx in 0..3u64.pow(8) {
            let mut word = vec![0u64; 8];
            let mut k = idx;
            for slot in word.iter_mut() {
                *slot = k % 3;
                k /= 3;
            }
            if codewords
                .iter()
                .all(|cw| dist(&word, cw.entries()) > code.radius())
            {
                let received = rv(&word, 3);
                assert!(matches!(
                    code.decode(&received),
                    Err(Error::Decode(DecodeFailure::BchUncorrectable))
                ));
                found = true;
                break 'outer;
            }
        }
        assert!(found, "no word beyond the decoding radius exists?");
    }

    #[test]
    fn decode_agrees_with_nearest_codeword_search() {
        // Brute-force oracle: for every received word of the [8,2,5] code,
        // bounded-distance decoding must return exactly the codewords found
        // by exhaustive nearest-codeword search within the radius.
        let code = BchCode::design(3, 2, 5).unwrap();
        let codewords = enumerate_codewords(&code);
        let dist = |a: &[u64], b: &[u64]| a.iter().zip(b).filter(|(x, y)| x != y).count();
        for idx in 0..3u64.pow(8) {
            let mut word = vec![0u64; 8];
            let mut k = idx;
            for slot in word.iter_mut() {
                *slot = k % 3;
                k /= 3;
            }
            let nearest: Vec<_> = codewords
                .iter()
                .filter(|cw| dist(&word, cw.entries()) <= code.radius())
                .collect();
            let received = rv(&word, 3);
            match code.decode(&received) {
                Ok(out) => {
                    assert_eq!(nearest.len(), 1);
                    assert_eq!(&out.codeword, nearest[0]);
                }
                Err(_) => assert!(nearest.is_empty()),
            }
        }
    }
}
