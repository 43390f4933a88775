//! Partial functions with explicit finite domains.
//!
//! A [`PartialFunction`] is a map `F: S -> {0,1}^m` with `S` a subset of
//! `{0,1}^n`, stored as an explicit table. Inputs are packed into a
//! [`Word`] with bit 1 (the leftmost bit of the written string) in the
//! most significant position, so numeric order of words equals
//! lexicographic order of bitstrings and the canonical domain ordering
//! is simply ascending order.

use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

pub mod specfile;

/// Packed bitstring. Bit `i` (1-based, leftmost first) of an `n`-bit
/// input `x` is `(x >> (n - i)) & 1`.
pub type Word = u128;

/// Cap on input length for anything that enumerates `2^n` objects:
/// total-function constructors, composition, and the combinatorial
/// measures. Keeps every exhaustive path at desk scale.
pub const LENGTH_CAP: usize = 20;

/// Cap on input length for explicitly-listed domains (promise problems
/// carry few inputs over many bits, so only the word width limits them).
pub const EXPLICIT_CAP: usize = 128;

/// Extract bit `i` (1-based) of an `n`-bit word.
#[inline]
pub fn bit(x: Word, n: usize, i: usize) -> bool {
    debug_assert!(i >= 1 && i <= n);
    (x >> (n - i)) & 1 == 1
}

/// Render an `n`-bit word as a bitstring, leftmost bit first.
pub fn word_to_string(x: Word, n: usize) -> String {
    (1..=n).map(|i| if bit(x, n, i) { '1' } else { '0' }).collect()
}

/// Parse a bitstring into a word; rejects wrong lengths and non-binary digits.
pub fn word_from_str(s: &str, n: usize) -> Result<Word> {
    if s.len() != n {
        return Err(Error::BadFunction(format!(
            "bitstring {s:?} has length {}, expected {n}",
            s.len()
        )));
    }
    let mut x: Word = 0;
    for c in s.chars() {
        x <<= 1;
        match c {
            '0' => {}
            '1' => x |= 1,
            _ => return Err(Error::BadFunction(format!("bad digit {c:?} in bitstring {s:?}"))),
        }
    }
    Ok(x)
}

/// A function `F: S -> {0,1}^m` with explicit domain `S ⊆ {0,1}^n`.
///
/// The domain is kept sorted ascending (lexicographic on bitstrings),
/// and `outputs[k]` is the value on `domain[k]`; matrix-valued code
/// throughout the crate indexes rows and columns by this ordering.
#[derive(Clone, Debug)]
pub struct PartialFunction {
    n: usize,
    m: usize,
    domain: Vec<Word>,
    outputs: Vec<Word>,
    index: HashMap<Word, usize>,
    name: String,
}

impl PartialFunction {
    /// Build a function from explicit `(input, output)` pairs.
    pub fn from_pairs(
        n: usize,
        m: usize,
        pairs: impl IntoIterator<Item = (Word, Word)>,
        name: impl Into<String>,
    ) -> Result<Self> {
        if n < 1 || n > EXPLICIT_CAP {
            return Err(Error::LengthCap { n, cap: EXPLICIT_CAP });
        }
        if m < 1 || m > n {
            return Err(Error::BadFunction(format!(
                "output length {m} outside 1..={n}"
            )));
        }
        let fits = |v: Word, bits: usize| bits == 128 || v < (1 as Word) << bits;
        let mut table: Vec<(Word, Word)> = Vec::new();
        for (x, y) in pairs {
            if !fits(x, n) {
                return Err(Error::BadFunction(format!(
                    "input {x:#b} does not fit in {n} bits"
                )));
            }
            if !fits(y, m) {
                return Err(Error::BadFunction(format!(
                    "output {y:#b} does not fit in {m} bits"
                )));
            }
            table.push((x, y));
        }
        if table.is_empty() {
            return Err(Error::BadFunction("empty domain".into()));
        }
        table.sort_unstable();
        for w in table.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::BadFunction(format!(
                    "duplicate input {}",
                    word_to_string(w[0].0, n)
                )));
            }
        }
        let domain: Vec<Word> = table.iter().map(|p| p.0).collect();
        let outputs: Vec<Word> = table.iter().map(|p| p.1).collect();
        let index = domain.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        Ok(Self { n, m, domain, outputs, index, name: name.into() })
    }

    /// Build a total function from a predicate on words.
    pub fn total(n: usize, m: usize, name: impl Into<String>, f: impl Fn(Word) -> Word) -> Result<Self> {
        if n < 1 || n > LENGTH_CAP {
            return Err(Error::LengthCap { n, cap: LENGTH_CAP });
        }
        Self::from_pairs(n, m, (0..(1 as Word) << n).map(|x| (x, f(x))), name)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_boolean(&self) -> bool {
        self.m == 1
    }

    /// Domain size |S|.
    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty domains
    }

    pub fn is_total(&self) -> bool {
        self.domain.len() == 1usize << self.n
    }

    /// Canonically ordered domain.
    pub fn domain(&self) -> &[Word] {
        &self.domain
    }

    /// Outputs aligned with [`Self::domain`].
    pub fn outputs(&self) -> &[Word] {
        &self.outputs
    }

    pub fn contains(&self, x: Word) -> bool {
        self.index.contains_key(&x)
    }

    /// Position of `x` in the canonical ordering.
    pub fn index_of(&self, x: Word) -> Result<usize> {
        self.index.get(&x).copied().ok_or(Error::OutsideDomain(x))
    }

    /// Evaluate the function at `x`.
    pub fn eval(&self, x: Word) -> Result<Word> {
        Ok(self.outputs[self.index_of(x)?])
    }

    /// Output on the `k`-th domain element.
    #[inline]
    pub fn output_at(&self, k: usize) -> Word {
        self.outputs[k]
    }

    /// Bit `i` (1-based) of the `k`-th domain element.
    #[inline]
    pub fn input_bit(&self, k: usize, i: usize) -> bool {
        bit(self.domain[k], self.n, i)
    }

    /// All unordered pairs `(x, y)` with `F(x) != F(y)`, each listed once
    /// with `x < y` in the canonical order.
    pub fn differing_pairs(&self) -> Vec<(Word, Word)> {
        self.differing_index_pairs()
            .into_iter()
            .map(|(a, b)| (self.domain[a], self.domain[b]))
            .collect()
    }

    /// Same as [`Self::differing_pairs`] but as domain indices.
    pub fn differing_index_pairs(&self) -> Vec<(usize, usize)> {
        let d = self.domain.len();
        let mut pairs = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                if self.outputs[a] != self.outputs[b] {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// Distinct output values, ascending.
    pub fn output_values(&self) -> Vec<Word> {
        let mut v = self.outputs.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for PartialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}, m={}, |S|={})", self.name, self.n, self.m, self.domain.len())
    }
}

/// Total OR function: output 1 iff the input has at least one 1.
pub fn make_or(n: usize) -> Result<PartialFunction> {
    PartialFunction::total(n, 1, format!("or{n}"), |x| Word::from(x != 0))
}

/// Total parity function: output the XOR of all input bits.
pub fn make_parity(n: usize) -> Result<PartialFunction> {
    PartialFunction::total(n, 1, format!("parity{n}"), |x| Word::from(x.count_ones() & 1 == 1))
}

/// Total threshold function: output 1 iff the input weight is at least `t`.
///
/// `t = 0` is the constant-1 function and `t = n + 1` the constant-0 one.
pub fn make_threshold(n: usize, t: usize) -> Result<PartialFunction> {
    if t > n + 1 {
        return Err(Error::BadFunction(format!("threshold {t} outside 0..={}", n + 1)));
    }
    PartialFunction::total(n, 1, format!("threshold{t}of{n}"), move |x| {
        Word::from(x.count_ones() as usize >= t)
    })
}

/// Total AND function, as the `t = n` threshold.
pub fn make_and(n: usize) -> Result<PartialFunction> {
    Ok(PartialFunction { name: format!("and{n}"), ..make_threshold(n, n)? })
}

/// Ordered-search promise function. The domain holds the `n` monotone
/// strings `0^(n-k) 1^k` and the output is the 1-based position of the
/// leftmost 1, in `ceil(log2(n+1))` bits.
pub fn make_ordered_search(n: usize) -> Result<PartialFunction> {
    if n < 1 || n > EXPLICIT_CAP {
        return Err(Error::LengthCap { n, cap: EXPLICIT_CAP });
    }
    // 1-based outputs 1..=n need ceil(log2(n+1)) bits, which never exceeds n
    let m = (usize::BITS - n.leading_zeros()) as usize;
    debug_assert!(n < (1 << m) && m <= n);
    let pairs = (1..=n).map(|k| {
        let x: Word = ((1 as Word) << k) - 1; // 0^(n-k) 1^k
        let leftmost = (n - k + 1) as Word;
        (x, leftmost)
    });
    PartialFunction::from_pairs(n, m, pairs, format!("ordered-search{n}"))
}

/// The 4-bit "sorted" function: 1 iff the bits are non-decreasing or
/// non-increasing as a sequence.
pub fn make_sorted4() -> Result<PartialFunction> {
    PartialFunction::total(4, 1, "sorted4", |x| {
        let b: Vec<bool> = (1..=4).map(|i| bit(x, 4, i)).collect();
        let nondec = b.windows(2).all(|w| !w[0] || w[1]);
        let noninc = b.windows(2).all(|w| w[0] || !w[1]);
        Word::from(nondec || noninc)
    })
}

/// Compose `outer` with one inner function per outer input bit:
/// `H(x^1 .. x^k) = outer(inner_1(x^1), ..., inner_k(x^k))`.
///
/// The domain of the composite holds exactly those tuples whose inner
/// outputs land in the outer domain.
pub fn compose(outer: &PartialFunction, inners: &[&PartialFunction]) -> Result<PartialFunction> {
    if outer.m() != 1 {
        return Err(Error::BadFunction("outer function must have m = 1".into()));
    }
    if inners.len() != outer.n() {
        return Err(Error::ArityMismatch { expected: outer.n(), got: inners.len() });
    }
    for g in inners {
        if g.m() != 1 {
            return Err(Error::BadFunction("inner functions must have m = 1".into()));
        }
    }
    let total_n: usize = inners.iter().map(|g| g.n()).sum();
    if total_n > LENGTH_CAP {
        return Err(Error::LengthCap { n: total_n, cap: LENGTH_CAP });
    }

    let mut pairs: Vec<(Word, Word)> = Vec::new();
    let k = inners.len();
    let mut cursor = vec![0usize; k];
    'outer: loop {
        let mut x: Word = 0;
        let mut inner_bits: Word = 0;
        for (j, g) in inners.iter().enumerate() {
            let xi = g.domain()[cursor[j]];
            x = (x << g.n()) | xi;
            inner_bits = (inner_bits << 1) | g.output_at(cursor[j]);
        }
        if outer.contains(inner_bits) {
            pairs.push((x, outer.eval(inner_bits)?));
        }
        // odometer increment
        for j in (0..k).rev() {
            cursor[j] += 1;
            if cursor[j] < inners[j].len() {
                continue 'outer;
            }
            cursor[j] = 0;
        }
        break;
    }

    let inner_names: Vec<&str> = inners.iter().map(|g| g.name()).collect();
    let name = format!("{}({})", outer.name(), inner_names.join(","));
    PartialFunction::from_pairs(total_n, 1, pairs, name)
}
