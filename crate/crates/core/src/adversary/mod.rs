//! Adversary matrices and the bound family built on them.
//!
//! An [`AdversaryMatrix`] assigns a nonnegative symmetric weight to every
//! pair of domain inputs, zero whenever the outputs agree. The spectral
//! bound is `λ(Γ) / max_i λ(Γ_i)` where `Γ_i` keeps only the pairs that
//! differ in bit `i`; the other methods (unweighted relations, weight
//! schemes, probability schedules, cost vectors) live in the submodules
//! and are re-exported here.

use std::sync::Arc;

use crate::function::{PartialFunction, Word};
use crate::measures;
use crate::{tol, Error, Result};

pub mod spectral;

mod minimax;
mod relation;
mod scheme;
mod search;
mod triplet;

pub use minimax::{minimax_value, ProbabilitySchedule};
pub use relation::{
    mathias_bound, relation_quantities, relation_to_gamma, unweighted_bound, Relation,
    RelationQuantities,
};
pub use scheme::{gamma_to_scheme, position_t, weighted_bound, TripleSplit, WeightScheme, WeightedBound};
pub use search::improve_gamma;
pub use spectral::{spectral_norm_dense, spectral_norm_op, DenseOp, LinOp, SpectralResult};
pub use triplet::{parse_gamma, serialize_gamma};

/// Domains larger than this use the entry-generator representation;
/// dense storage would cross the desk-scale memory budget.
pub const DENSE_CAP: usize = 4096;

/// How an adversary matrix was obtained; carried for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Inverse output-distance weights.
    SearchWeights,
    /// Star matrix over a maximum disjoint sensitive-block family.
    BlockStar,
    /// Derived from an unweighted relation.
    Relation,
    /// Uniform weight on all differing pairs.
    Uniform,
    /// Seeded random weights.
    Random { seed: u64 },
    /// Parsed from a triplet file.
    File,
    /// Output of the local search.
    Improved,
    Custom(String),
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::SearchWeights => write!(f, "search-weights"),
            Provenance::BlockStar => write!(f, "block-star"),
            Provenance::Relation => write!(f, "relation"),
            Provenance::Uniform => write!(f, "uniform"),
            Provenance::Random { seed } => write!(f, "random(seed={seed})"),
            Provenance::File => write!(f, "file"),
            Provenance::Improved => write!(f, "improved"),
            Provenance::Custom(s) => write!(f, "{s}"),
        }
    }
}

type EntryFn = Arc<dyn Fn(usize, usize) -> f64 + Send + Sync>;

#[derive(Clone)]
enum GammaData {
    Dense(Vec<f64>),
    /// Entry generator for domains past [`DENSE_CAP`]; matvecs stream
    /// over pairs instead of materializing the matrix.
    Generator(EntryFn),
}

/// Symmetric nonnegative pair weights over a function's domain, zero on
/// output-agreeing pairs.
#[derive(Clone)]
pub struct AdversaryMatrix {
    dim: usize,
    n: usize,
    inputs: Vec<Word>,
    outputs: Vec<Word>,
    data: GammaData,
    provenance: Provenance,
}

impl std::fmt::Debug for AdversaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AdversaryMatrix")
            .field("dim", &self.dim)
            .field("n", &self.n)
            .field("provenance", &self.provenance)
            .field("dense", &matches!(self.data, GammaData::Dense(_)))
            .finish()
    }
}

impl AdversaryMatrix {
    /// Build from explicit entries (row-major, `|S| × |S|`).
    pub fn from_dense(f: &PartialFunction, entries: Vec<f64>, provenance: Provenance) -> Result<Self> {
        let dim = f.len();
        if dim > DENSE_CAP {
            return Err(Error::DomainCap { size: dim, cap: DENSE_CAP });
        }
        if entries.len() != dim * dim {
            return Err(Error::BadGamma(format!(
                "expected {}x{} entries, got {}",
                dim,
                dim,
                entries.len()
            )));
        }
        let mut entries = entries;
        let mut any_positive = false;
        for r in 0..dim {
            for c in r..dim {
                let v = entries[r * dim + c];
                let w = entries[c * dim + r];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::BadGamma(format!("entry ({r},{c}) = {v} is not finite nonnegative")));
                }
                if (v - w).abs() > tol::EXACT_DRIFT * v.abs().max(1.0) {
                    return Err(Error::BadGamma(format!("asymmetric at ({r},{c}): {v} vs {w}")));
                }
                if f.output_at(r) == f.output_at(c) {
                    if v != 0.0 || w != 0.0 {
                        return Err(Error::BadGamma(format!(
                            "entry ({r},{c}) must be zero: outputs agree"
                        )));
                    }
                } else if v > 0.0 {
                    any_positive = true;
                }
                entries[c * dim + r] = v; // exact symmetry
            }
        }
        if !any_positive && !f.differing_index_pairs().is_empty() {
            return Err(Error::BadGamma("matrix is identically zero on a non-constant function".into()));
        }
        Ok(Self {
            dim,
            n: f.n(),
            inputs: f.domain().to_vec(),
            outputs: f.outputs().to_vec(),
            data: GammaData::Dense(entries),
            provenance,
        })
    }

    /// Build from a weight on differing index pairs `(a, b)` with `a < b`.
    pub fn from_pair_weights(
        f: &PartialFunction,
        provenance: Provenance,
        mut weight: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let dim = f.len();
        if dim > DENSE_CAP {
            return Err(Error::DomainCap { size: dim, cap: DENSE_CAP });
        }
        let mut entries = vec![0.0; dim * dim];
        for (a, b) in f.differing_index_pairs() {
            let w = weight(a, b);
            entries[a * dim + b] = w;
            entries[b * dim + a] = w;
        }
        Self::from_dense(f, entries, provenance)
    }

    /// Build a generator-backed matrix for large domains. The closure is
    /// canonicalized: it is only consulted on output-differing pairs and
    /// is symmetrized by evaluating on `(min, max)`.
    pub fn from_generator(
        f: &PartialFunction,
        provenance: Provenance,
        entry: impl Fn(usize, usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let outputs = f.outputs().to_vec();
        let out = outputs.clone();
        let wrapped: EntryFn = Arc::new(move |r, c| {
            if out[r] == out[c] {
                0.0
            } else {
                entry(r.min(c), r.max(c)).max(0.0)
            }
        });
        Self {
            dim: f.len(),
            n: f.n(),
            inputs: f.domain().to_vec(),
            outputs,
            data: GammaData::Generator(wrapped),
            provenance,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.data, GammaData::Dense(_))
    }

    /// Entry by domain indices.
    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> f64 {
        match &self.data {
            GammaData::Dense(e) => e[r * self.dim + c],
            GammaData::Generator(g) => g(r, c),
        }
    }

    pub(crate) fn dense_entries(&self) -> Result<&[f64]> {
        match &self.data {
            GammaData::Dense(e) => Ok(e),
            GammaData::Generator(_) => Err(Error::Unsupported(
                "operation needs the dense representation".into(),
            )),
        }
    }

    /// Check this matrix indexes the same domain as `f`.
    pub fn compatible_with(&self, f: &PartialFunction) -> Result<()> {
        if f.n() != self.n || f.domain() != self.inputs.as_slice() || f.outputs() != self.outputs.as_slice() {
            return Err(Error::BadGamma("matrix was built for a different function/domain".into()));
        }
        Ok(())
    }

    #[inline]
    fn input_bit(&self, k: usize, i: usize) -> bool {
        crate::function::bit(self.inputs[k], self.n, i)
    }

    /// Keep only the pairs that differ in bit `i` (1-based).
    pub fn mask(&self, i: usize) -> Result<MaskedMatrix<'_>> {
        if i < 1 || i > self.n {
            return Err(Error::IndexRange { index: i, n: self.n });
        }
        Ok(MaskedMatrix { gamma: self, i })
    }

    /// Spectral norm with the principal eigenvector.
    pub fn spectral_norm(&self) -> Result<SpectralResult> {
        spectral_norm_op(&GammaOp { gamma: self, mask: None }, None)
    }
}

/// View of `Γ_i`: entries of `Γ` on pairs whose inputs differ in bit `i`.
pub struct MaskedMatrix<'a> {
    gamma: &'a AdversaryMatrix,
    i: usize,
}

impl MaskedMatrix<'_> {
    pub fn index(&self) -> usize {
        self.i
    }

    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> f64 {
        if self.gamma.input_bit(r, self.i) != self.gamma.input_bit(c, self.i) {
            self.gamma.entry(r, c)
        } else {
            0.0
        }
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim
    }

    /// Materialize the masked entries (test/report helper).
    pub fn to_dense(&self) -> Vec<f64> {
        let d = self.gamma.dim;
        let mut out = vec![0.0; d * d];
        for r in 0..d {
            for c in 0..d {
                out[r * d + c] = self.entry(r, c);
            }
        }
        out
    }

    pub fn spectral_norm(&self) -> Result<SpectralResult> {
        spectral_norm_op(&GammaOp { gamma: self.gamma, mask: Some(self.i) }, None)
    }
}

/// Matvec over a gamma matrix, optionally masked to one index.
pub(crate) struct GammaOp<'a> {
    pub gamma: &'a AdversaryMatrix,
    pub mask: Option<usize>,
}

impl LinOp for GammaOp<'_> {
    fn dim(&self) -> usize {
        self.gamma.dim
    }

    fn matvec(&self, x: &[f64], y: &mut [f64]) {
        let d = self.gamma.dim;
        match (&self.gamma.data, self.mask) {
            (GammaData::Dense(e), None) => {
                for (r, yr) in y.iter_mut().enumerate() {
                    *yr = e[r * d..(r + 1) * d].iter().zip(x).map(|(a, b)| a * b).sum();
                }
            }
            (GammaData::Dense(e), Some(i)) => {
                let bits: Vec<bool> = (0..d).map(|k| self.gamma.input_bit(k, i)).collect();
                for (r, yr) in y.iter_mut().enumerate() {
                    let row = &e[r * d..(r + 1) * d];
                    let br = bits[r];
                    let mut acc = 0.0;
                    for c in 0..d {
                        if bits[c] != br {
                            acc += row[c] * x[c];
                        }
                    }
                    *yr = acc;
                }
            }
            (GammaData::Generator(g), maski) => {
                for (r, yr) in y.iter_mut().enumerate() {
                    let mut acc = 0.0;
                    for c in 0..d {
                        if let Some(i) = maski {
                            if self.gamma.input_bit(r, i) == self.gamma.input_bit(c, i) {
                                continue;
                            }
                        }
                        acc += g(r, c) * x[c];
                    }
                    *yr = acc;
                }
            }
        }
    }
}

/// The spectral bound `λ(Γ) / max_i λ(Γ_i)` with full diagnostics.
#[derive(Clone, Debug)]
pub struct SpectralBound {
    pub lambda: SpectralResult,
    /// `λ(Γ_i)` for i = 1..=n.
    pub masked_norms: Vec<f64>,
    pub value: f64,
}

/// Compute the spectral bound of `gamma` for `f`.
pub fn spectral_bound(f: &PartialFunction, gamma: &AdversaryMatrix) -> Result<SpectralBound> {
    gamma.compatible_with(f)?;
    let lambda = gamma.spectral_norm()?;
    let mut masked_norms = Vec::with_capacity(f.n());
    for i in 1..=f.n() {
        masked_norms.push(gamma.mask(i)?.spectral_norm()?.value);
    }
    let denom = masked_norms.iter().cloned().fold(0.0, f64::max);
    if denom <= 0.0 {
        return Err(Error::DegenerateGamma);
    }
    Ok(SpectralBound { value: lambda.value / denom, lambda, masked_norms })
}

/// Inverse output-distance weights: `Γ[x,y] = 1 / |F(x) − F(y)|` on
/// differing pairs, reading outputs as integers. For boolean functions
/// this is the uniform weight on differing pairs.
pub fn search_gamma(f: &PartialFunction) -> Result<AdversaryMatrix> {
    let weight = |a: Word, b: Word| 1.0 / (a as f64 - b as f64).abs();
    let outputs = f.outputs().to_vec();
    if f.len() <= DENSE_CAP {
        AdversaryMatrix::from_pair_weights(f, Provenance::SearchWeights, |a, b| {
            weight(outputs[a], outputs[b])
        })
    } else {
        Ok(AdversaryMatrix::from_generator(f, Provenance::SearchWeights, move |a, b| {
            weight(outputs[a], outputs[b])
        }))
    }
}

/// Uniform weight 1 on every differing pair.
pub fn uniform_gamma(f: &PartialFunction) -> Result<AdversaryMatrix> {
    AdversaryMatrix::from_pair_weights(f, Provenance::Uniform, |_, _| 1.0)
}

/// Seeded random weights in `[0.01, 1]` on differing pairs.
pub fn random_gamma(f: &PartialFunction, seed: u64) -> Result<AdversaryMatrix> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    AdversaryMatrix::from_pair_weights(f, Provenance::Random { seed }, |_, _| {
        rng.gen_range(0.01..=1.0)
    })
}

/// Star matrix over a maximum disjoint sensitive-block family of a
/// block-sensitivity-maximizing input: weight 1 on `(x', x'^B)` for each
/// block. Its spectral bound is exactly `sqrt(bs(F))`.
pub fn bs_gamma(f: &PartialFunction) -> Result<AdversaryMatrix> {
    let mut best: Option<(Word, measures::BlockWitness)> = None;
    for &x in f.domain() {
        let w = measures::block_sensitivity(f, x)?;
        match &best {
            Some((_, bw)) if bw.count >= w.count => {}
            _ => best = Some((x, w)),
        }
    }
    let (center, witness) = best.expect("domain is nonempty");
    if witness.count == 0 {
        return Err(Error::ZeroBlockSensitivity);
    }
    let ci = f.index_of(center)?;
    let partners: Vec<usize> = witness
        .blocks
        .iter()
        .map(|&b| f.index_of(center ^ b))
        .collect::<Result<_>>()?;
    AdversaryMatrix::from_pair_weights(f, Provenance::BlockStar, |a, b| {
        let hit = (a == ci && partners.contains(&b)) || (b == ci && partners.contains(&a));
        if hit {
            1.0
        } else {
            0.0
        }
    })
}

/// Cost-weighted bound `min_i α_i λ(Γ) / λ(Γ_i)` for a given matrix,
/// skipping indices with `λ(Γ_i) = 0`.
pub fn adv_alpha(f: &PartialFunction, gamma: &AdversaryMatrix, alpha: &[f64]) -> Result<f64> {
    gamma.compatible_with(f)?;
    if alpha.len() != f.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), got: alpha.len() });
    }
    if let Some(i) = alpha.iter().position(|&a| !(a > 0.0)) {
        return Err(Error::NonPositiveCost(i + 1));
    }
    let lambda = gamma.spectral_norm()?.value;
    let mut best: Option<f64> = None;
    for i in 1..=f.n() {
        let li = gamma.mask(i)?.spectral_norm()?.value;
        if li > 0.0 {
            let v = alpha[i - 1] * lambda / li;
            best = Some(best.map_or(v, |b: f64| b.min(v)));
        }
    }
    best.ok_or(Error::DegenerateGamma)
}

/// Ceiling on every spectral bound in terms of certificate complexity:
/// `min(sqrt(C_0 n), sqrt(C_1 n))`, and also `sqrt(C_0 C_1)` for total
/// functions. Boolean functions only.
pub fn certificate_limit(f: &PartialFunction) -> Result<f64> {
    if !f.is_boolean() {
        return Err(Error::NonBooleanOutput(f.m()));
    }
    let report = measures::measure_report(f)?;
    let n = f.n() as f64;
    let mut limit = f64::INFINITY;
    for &(_, c, _) in &report.per_output {
        limit = limit.min((c as f64 * n).sqrt());
    }
    if f.is_total() {
        if let (Some(c0), Some(c1)) = (report.certificate_for(0), report.certificate_for(1)) {
            limit = limit.min(((c0 * c1) as f64).sqrt());
        }
    }
    Ok(limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{make_or, make_ordered_search, make_parity, make_sorted4, make_threshold};

    #[test]
    fn search_gamma_ordered_4_entries() {
        let f = make_ordered_search(4).unwrap();
        let g = search_gamma(&f).unwrap();
        // domain order (0001, 0011, 0111, 1111); weights 1/|F(x)-F(y)|
        let expect = [
            [0.0, 1.0, 0.5, 1.0 / 3.0],
            [1.0, 0.0, 1.0, 0.5],
            [0.5, 1.0, 0.0, 1.0],
            [1.0 / 3.0, 0.5, 1.0, 0.0],
        ];
        for r in 0..4 {
            for c in 0..4 {
                assert!((g.entry(r, c) - expect[r][c]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn mask_keeps_only_differing_bits() {
        let f = make_parity(2).unwrap();
        let g = search_gamma(&f).unwrap();
        let m1 = g.mask(1).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let differs =
                    crate::function::bit(f.domain()[r], 2, 1) != crate::function::bit(f.domain()[c], 2, 1);
                if !differs {
                    assert_eq!(m1.entry(r, c), 0.0);
                } else {
                    assert_eq!(m1.entry(r, c), g.entry(r, c));
                }
            }
        }
        assert!(g.mask(0).is_err());
        assert!(g.mask(3).is_err());
    }

    #[test]
    fn mask_of_unrelated_index_is_zero() {
        // single nonzero pair differing only in bit 3
        let f = make_or(3).unwrap();
        let g = AdversaryMatrix::from_pair_weights(&f, Provenance::Custom("test".into()), |a, b| {
            let (x, y) = (f.domain()[a], f.domain()[b]);
            if (x, y) == (0b000, 0b001) {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        let m1 = g.mask(1).unwrap().to_dense();
        assert!(m1.iter().all(|&v| v == 0.0));
        let m3 = g.mask(3).unwrap();
        assert!(m3.spectral_norm().unwrap().value > 0.9999999);
    }

    #[test]
    fn ordered_search_masked_block_is_hilbert_section() {
        let f = make_ordered_search(4).unwrap();
        let g = search_gamma(&f).unwrap();
        let m = g.mask(2).unwrap();
        // the nonzero block pairs rows {0111,1111} with columns {0011,0001};
        // with 1-based block coordinates (r,s) the entries follow 1/(r+s-1)
        let rows = [2usize, 3]; // 0111, 1111
        let cols = [1usize, 0]; // 0011, 0001
        for (ri, &r) in rows.iter().enumerate() {
            for (si, &c) in cols.iter().enumerate() {
                let expect = 1.0 / (ri as f64 + si as f64 + 1.0);
                assert!((m.entry(r, c) - expect).abs() < 1e-15, "({ri},{si})");
            }
        }
        // everything outside the block and its mirror is zero
        let dense = m.to_dense();
        let nonzero = dense.iter().filter(|&&v| v > 0.0).count();
        assert_eq!(nonzero, 8);
    }

    #[test]
    fn spectral_bound_ordered_search_4() {
        let f = make_ordered_search(4).unwrap();
        let g = search_gamma(&f).unwrap();
        let b = spectral_bound(&f, &g).unwrap();
        assert!(b.lambda.value >= 11.0 / 6.0 - 1e-9);
        let max_mask = b.masked_norms.iter().cloned().fold(0.0, f64::max);
        assert!(max_mask <= std::f64::consts::PI + 1e-6);
        assert!(b.value >= (11.0 / 6.0) / std::f64::consts::PI);
    }

    #[test]
    fn spectral_bound_single_pair_is_one() {
        let f = make_parity(1).unwrap();
        let g = uniform_gamma(&f).unwrap();
        let b = spectral_bound(&f, &g).unwrap();
        assert!((b.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bs_gamma_or4_is_two() {
        let f = make_or(4).unwrap();
        let g = bs_gamma(&f).unwrap();
        let b = spectral_bound(&f, &g).unwrap();
        assert!((b.value - 2.0).abs() < 1e-9, "got {}", b.value);
        assert!((b.lambda.value - 2.0).abs() < 1e-9);
        let mx = b.masked_norms.iter().cloned().fold(0.0, f64::max);
        assert!((mx - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bs_gamma_parity2_is_sqrt2() {
        let f = make_parity(2).unwrap();
        let g = bs_gamma(&f).unwrap();
        let b = spectral_bound(&f, &g).unwrap();
        assert!((b.value - 2.0f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn bs_gamma_constant_errors() {
        let f = make_threshold(3, 0).unwrap();
        assert!(matches!(bs_gamma(&f), Err(Error::ZeroBlockSensitivity)));
    }

    #[test]
    fn adv_alpha_all_ones_is_spectral_bound() {
        let f = make_sorted4().unwrap();
        let g = search_gamma(&f).unwrap();
        let sb = spectral_bound(&f, &g).unwrap().value;
        let aa = adv_alpha(&f, &g, &[1.0; 4]).unwrap();
        assert!((sb - aa).abs() < 1e-9);
        // homogeneity
        let aa2 = adv_alpha(&f, &g, &[2.0; 4]).unwrap();
        assert!((aa2 - 2.0 * aa).abs() < 1e-9);
        assert!(adv_alpha(&f, &g, &[1.0, -1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn certificate_limits() {
        assert!((certificate_limit(&make_or(4).unwrap()).unwrap() - 2.0).abs() < 1e-12);
        assert!((certificate_limit(&make_parity(4).unwrap()).unwrap() - 4.0).abs() < 1e-12);
        assert!(certificate_limit(&make_ordered_search(4).unwrap()).is_err());
    }

    #[test]
    fn generator_matches_dense() {
        let f = make_ordered_search(64).unwrap();
        let dense = search_gamma(&f).unwrap();
        let outputs = f.outputs().to_vec();
        let gen = AdversaryMatrix::from_generator(&f, Provenance::SearchWeights, move |a, b| {
            1.0 / (outputs[a] as f64 - outputs[b] as f64).abs()
        });
        let ld = dense.spectral_norm().unwrap().value;
        let lg = gen.spectral_norm().unwrap().value;
        assert!((ld - lg).abs() < 1e-8);
        let md = dense.mask(32).unwrap().spectral_norm().unwrap().value;
        let mg = gen.mask(32).unwrap().spectral_norm().unwrap().value;
        assert!((md - mg).abs() < 1e-8);
    }

    #[test]
    fn validity_enforced_on_construction() {
        let f = make_parity(2).unwrap();
        // nonzero where outputs agree
        let mut entries = vec![0.0; 16];
        entries[3] = 1.0;
        entries[12] = 1.0;
        assert!(AdversaryMatrix::from_dense(&f, entries, Provenance::Uniform).is_err());
        // negative entry
        let mut entries = vec![0.0; 16];
        entries[1] = -1.0;
        entries[4] = -1.0;
        assert!(AdversaryMatrix::from_dense(&f, entries, Provenance::Uniform).is_err());
        // asymmetric
        let mut entries = vec![0.0; 16];
        entries[1] = 1.0;
        entries[4] = 0.5;
        assert!(AdversaryMatrix::from_dense(&f, entries, Provenance::Uniform).is_err());
    }

    #[test]
    fn every_positive_entry_is_covered_by_a_mask() {
        let f = make_sorted4().unwrap();
        let g = random_gamma(&f, 3).unwrap();
        let d = g.dim();
        for r in 0..d {
            for c in 0..d {
                if g.entry(r, c) > 0.0 {
                    let covered = (1..=f.n()).any(|i| g.mask(i).unwrap().entry(r, c) > 0.0);
                    assert!(covered);
                }
            }
        }
        // and each masked norm is at most the full norm
        let lam = g.spectral_norm().unwrap().value;
        for i in 1..=f.n() {
            assert!(g.mask(i).unwrap().spectral_norm().unwrap().value <= lam + 1e-9);
        }
    }
}
