//! Bitwise repetition framing. Each bit is repeated r = 2T+1 times, so
//! losing up to T zeros shortens 0-runs without ever destroying one;
//! rounding every 0-run length up to the next multiple of r undoes the
//! damage exactly.

use crate::error::{DecodeFailure, Result};
use crate::word::BitWord;

pub fn rep_encode(x: &BitWord, r: usize) -> BitWord {
    let mut bits = Vec::with_capacity(x.len() * r);
    for b in x.iter() {
        bits.extend(std::iter::repeat(b).take(r));
    }
    BitWord::new(bits)
}

/// Inverts [`rep_encode`] after at most `budget` zeros were deleted
/// (`budget < r`). 1-runs must still be exact multiples of r; 0-runs are
/// rounded up, and the total shortfall must stay within the budget.
pub fn rep_decode(segment: &BitWord, r: usize, budget: u64) -> Result<BitWord> {
    assert!((budget as usize) < r, "budget must be below the repetition order");
    let mut out = Vec::new();
    let mut deficit = 0u64;
    let mut i = 0;
    let bits = segment.bits();
    while i < bits.len() {
        let bit = bits[i];
        let mut j = i;
        while j < bits.len() && bits[j] == bit {
            j += 1;
        }
        let run = j - i;
        if bit == 1 {
            if run % r != 0 {
                return Err(DecodeFailure::RepetitionMalformed.into());
            }
            out.extend(std::iter::repeat(1).take(run / r));
        } else {
            let shortfall = (r - run % r) % r;
            deficit += shortfall as u64;
            if deficit > budget {
                return Err(DecodeFailure::RepetitionMalformed.into());
            }
            out.extend(std::iter::repeat(0).take(run.div_ceil(r)));
        }
        i = j;
    }
    Ok(BitWord::new(out))
}
