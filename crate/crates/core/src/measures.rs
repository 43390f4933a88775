//! Certificate complexity and block sensitivity by exhaustive search.
//!
//! All searches are exact: certificates are found by increasing-size
//! subset enumeration with early exit, block packings by
//! branch-and-bound over the sensitive blocks ordered by size then
//! lexicographically. Blocks whose flip leaves the domain of a partial
//! function are not sensitive and are skipped.

use crate::function::{PartialFunction, Word};
use crate::{Error, Result};

fn enumeration_guard(f: &PartialFunction) -> Result<()> {
    if f.n() > crate::function::LENGTH_CAP {
        return Err(Error::LengthCap { n: f.n(), cap: crate::function::LENGTH_CAP });
    }
    Ok(())
}

/// Smallest certificate size for `x`: the least `|C|` such that every
/// domain element agreeing with `x` on `C` shares its output.
pub fn certificate_complexity(f: &PartialFunction, x: Word) -> Result<usize> {
    enumeration_guard(f)?;
    let k = f.index_of(x)?;
    let fx = f.output_at(k);
    let n = f.n();
    let full: Word = ((1 as Word) << n) - 1;
    for size in 0..=n {
        let mut mask: Word = if size == 0 { 0 } else { ((1 as Word) << size) - 1 };
        loop {
            if f.domain()
                .iter()
                .zip(f.outputs())
                .all(|(&y, &fy)| (x ^ y) & mask != 0 || fy == fx)
            {
                return Ok(size);
            }
            if size == 0 {
                break;
            }
            // Gosper's hack: next mask of the same popcount
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
            if mask > full {
                break;
            }
        }
    }
    unreachable!("the full index set always certifies: only x itself agrees on it")
}

/// A maximum family of pairwise-disjoint sensitive blocks for one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockWitness {
    /// Block sensitivity `bs_x(F)`.
    pub count: usize,
    /// Witnessing blocks as bit masks; pairwise disjoint.
    pub blocks: Vec<Word>,
}

impl BlockWitness {
    /// Re-check that the witness blocks are pairwise disjoint.
    pub fn is_disjoint(&self) -> bool {
        let mut used: Word = 0;
        for &b in &self.blocks {
            if used & b != 0 {
                return false;
            }
            used |= b;
        }
        true
    }
}

/// Block sensitivity of `x` with a witnessing block family.
pub fn block_sensitivity(f: &PartialFunction, x: Word) -> Result<BlockWitness> {
    enumeration_guard(f)?;
    let k = f.index_of(x)?;
    let fx = f.output_at(k);
    let n = f.n();
    let mut sensitive: Vec<Word> = Vec::new();
    for b in 1..((1 as Word) << n) {
        let y = x ^ b;
        if let Ok(fy) = f.eval(y) {
            if fy != fx {
                sensitive.push(b);
            }
        }
    }
    sensitive.sort_unstable_by_key(|&b| (b.count_ones(), b));

    let mut best = BlockWitness { count: 0, blocks: Vec::new() };
    let mut chosen: Vec<Word> = Vec::new();
    fn rec(
        blocks: &[Word],
        from: usize,
        used: Word,
        chosen: &mut Vec<Word>,
        best: &mut BlockWitness,
    ) {
        if chosen.len() > best.count {
            best.count = chosen.len();
            best.blocks = chosen.clone();
        }
        if chosen.len() + (blocks.len() - from) <= best.count {
            return; // cannot beat the incumbent
        }
        for j in from..blocks.len() {
            if blocks[j] & used == 0 {
                chosen.push(blocks[j]);
                rec(blocks, j + 1, used | blocks[j], chosen, best);
                chosen.pop();
            }
        }
    }
    rec(&sensitive, 0, 0, &mut chosen, &mut best);
    debug_assert!(best.is_disjoint());
    Ok(best)
}

/// Per-input and aggregate measures for one function.
#[derive(Clone, Debug)]
pub struct MeasureReport {
    /// `(input, certificate size, block sensitivity)` per domain element,
    /// in canonical domain order.
    pub per_input: Vec<(Word, usize, usize)>,
    /// `(output value z, C_z, bs_z)` for each occurring output value.
    pub per_output: Vec<(Word, usize, usize)>,
    /// Certificate complexity `C(F)`.
    pub certificate: usize,
    /// Block sensitivity `bs(F)`.
    pub block_sensitivity: usize,
}

impl MeasureReport {
    /// `C_z(F)` for an occurring output value.
    pub fn certificate_for(&self, z: Word) -> Option<usize> {
        self.per_output.iter().find(|e| e.0 == z).map(|e| e.1)
    }

    /// `bs_z(F)` for an occurring output value.
    pub fn block_sensitivity_for(&self, z: Word) -> Option<usize> {
        self.per_output.iter().find(|e| e.0 == z).map(|e| e.2)
    }
}

/// Compute certificate complexity and block sensitivity for every input.
pub fn measure_report(f: &PartialFunction) -> Result<MeasureReport> {
    let mut per_input = Vec::with_capacity(f.len());
    for &x in f.domain() {
        let c = certificate_complexity(f, x)?;
        let bs = block_sensitivity(f, x)?.count;
        per_input.push((x, c, bs));
    }
    let mut per_output: Vec<(Word, usize, usize)> = Vec::new();
    for z in f.output_values() {
        let mut c = 0;
        let mut bs = 0;
        for (k, &(_, ci, bi)) in per_input.iter().enumerate() {
            if f.output_at(k) == z {
                c = c.max(ci);
                bs = bs.max(bi);
            }
        }
        per_output.push((z, c, bs));
    }
    let certificate = per_output.iter().map(|e| e.1).max().unwrap_or(0);
    let block_sensitivity = per_output.iter().map(|e| e.2).max().unwrap_or(0);
    Ok(MeasureReport { per_input, per_output, certificate, block_sensitivity })
}
