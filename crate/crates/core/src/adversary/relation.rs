//! The unweighted (relation) method and the row/column-norm bound it
//! rests on.
//!
//! A relation pairs hard 0-inputs with hard 1-inputs. Writing `m, m'`
//! for the minimal number of pairs through any used row and column, and
//! `l, l'` for the maximal number of pairs through any row and column
//! after restricting to one differing bit, the bound is
//! `sqrt(m m' / (l l'))`.

use crate::adversary::{AdversaryMatrix, Provenance};
use crate::function::{bit, PartialFunction, Word};
use crate::{tol, Error, Result};

/// A nonempty set of `(zero-input, one-input)` pairs of a boolean function.
#[derive(Clone, Debug)]
pub struct Relation {
    pairs: Vec<(usize, usize)>,
}

impl Relation {
    /// Validate and build a relation from explicit input pairs.
    pub fn new(f: &PartialFunction, pairs: &[(Word, Word)]) -> Result<Self> {
        if !f.is_boolean() {
            return Err(Error::NonBooleanOutput(f.m()));
        }
        if pairs.is_empty() {
            return Err(Error::BadRelation);
        }
        let mut out = Vec::with_capacity(pairs.len());
        for &(x, y) in pairs {
            let (a, b) = (f.index_of(x)?, f.index_of(y)?);
            if f.output_at(a) != 0 || f.output_at(b) != 1 {
                return Err(Error::BadRelation);
            }
            out.push((a, b));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Self { pairs: out })
    }

    /// All differing pairs of minimal Hamming distance; a reasonable
    /// default set of hard pairs.
    pub fn min_hamming(f: &PartialFunction) -> Result<Self> {
        if !f.is_boolean() {
            return Err(Error::NonBooleanOutput(f.m()));
        }
        let mut best = usize::MAX;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (a, b) in f.differing_index_pairs() {
            let d = (f.domain()[a] ^ f.domain()[b]).count_ones() as usize;
            if d < best {
                best = d;
                pairs.clear();
            }
            if d == best {
                let (za, ob) = if f.output_at(a) == 0 { (a, b) } else { (b, a) };
                pairs.push((za, ob));
            }
        }
        if pairs.is_empty() {
            return Err(Error::BadRelation);
        }
        pairs.sort_unstable();
        Ok(Self { pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// The four counts entering the unweighted bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationQuantities {
    /// Minimal pairs through a used zero-input.
    pub row_min: usize,
    /// Minimal pairs through a used one-input.
    pub col_min: usize,
    /// Maximal pairs through a zero-input within one differing bit.
    pub row_bit_max: usize,
    /// Maximal pairs through a one-input within one differing bit.
    pub col_bit_max: usize,
}

fn quantities(f: &PartialFunction, r: &Relation) -> Result<RelationQuantities> {
    let n = f.n();
    let mut row = std::collections::HashMap::new();
    let mut col = std::collections::HashMap::new();
    let mut row_bit = std::collections::HashMap::new();
    let mut col_bit = std::collections::HashMap::new();
    for &(a, b) in &r.pairs {
        *row.entry(a).or_insert(0usize) += 1;
        *col.entry(b).or_insert(0usize) += 1;
        let (x, y) = (f.domain()[a], f.domain()[b]);
        for i in 1..=n {
            if bit(x, n, i) != bit(y, n, i) {
                *row_bit.entry((a, i)).or_insert(0usize) += 1;
                *col_bit.entry((b, i)).or_insert(0usize) += 1;
            }
        }
    }
    let row_min = row.values().copied().min().ok_or(Error::BadRelation)?;
    let col_min = col.values().copied().min().ok_or(Error::BadRelation)?;
    let row_bit_max = row_bit.values().copied().max().unwrap_or(0);
    let col_bit_max = col_bit.values().copied().max().unwrap_or(0);
    if row_min == 0 || col_min == 0 || row_bit_max == 0 {
        return Err(Error::BadRelation);
    }
    Ok(RelationQuantities { row_min, col_min, row_bit_max, col_bit_max })
}

/// Unweighted bound `sqrt(m m' / (l l'))` for a relation.
pub fn unweighted_bound(f: &PartialFunction, r: &Relation) -> Result<f64> {
    let q = quantities(f, r)?;
    Ok(((q.row_min * q.col_min) as f64 / (q.row_bit_max * q.col_bit_max) as f64).sqrt())
}

/// Expose the counts alongside the bound.
pub fn relation_quantities(f: &PartialFunction, r: &Relation) -> Result<RelationQuantities> {
    quantities(f, r)
}

/// Convert a relation to an adversary matrix: with `d_x` the square root
/// of the symmetrized degree of `x`, set `Γ[x,y] = 1/(d_x d_y)` on the
/// relation. Its spectral norm is at least 1.
pub fn relation_to_gamma(f: &PartialFunction, r: &Relation) -> Result<AdversaryMatrix> {
    let dim = f.len();
    let mut degree = vec![0usize; dim];
    for &(a, b) in &r.pairs {
        degree[a] += 1;
        degree[b] += 1;
    }
    let d: Vec<f64> = degree.iter().map(|&k| (k as f64).sqrt()).collect();
    let mut entries = vec![0.0; dim * dim];
    for &(a, b) in &r.pairs {
        let v = 1.0 / (d[a] * d[b]);
        entries[a * dim + b] = v;
        entries[b * dim + a] = v;
    }
    AdversaryMatrix::from_dense(f, entries, Provenance::Relation)
}

/// Row/column-norm bound on the spectral norm of an entrywise product:
/// if `G = M ∘ N` entrywise with all matrices nonnegative and `G`
/// symmetric, then `λ(G) ≤ max_(x,y): G[x,y]>0 of r_x(M) c_y(N)`.
pub fn mathias_bound(g: &[f64], m_fac: &[f64], n_fac: &[f64], dim: usize) -> Result<f64> {
    if g.len() != dim * dim || m_fac.len() != dim * dim || n_fac.len() != dim * dim {
        return Err(Error::BadMatrix("all three matrices must be dim x dim".into()));
    }
    for r in 0..dim {
        for c in 0..dim {
            let (gv, mv, nv) = (g[r * dim + c], m_fac[r * dim + c], n_fac[r * dim + c]);
            if gv < 0.0 || mv < 0.0 || nv < 0.0 {
                return Err(Error::BadMatrix("matrices must be nonnegative".into()));
            }
            if (g[r * dim + c] - g[c * dim + r]).abs() > tol::EXACT_DRIFT * gv.abs().max(1.0) {
                return Err(Error::BadMatrix("G must be symmetric".into()));
            }
            let diff = (mv * nv - gv).abs();
            if diff > tol::EXACT_DRIFT * gv.abs().max(1.0) {
                return Err(Error::FactorizationMismatch { row: r, col: c, diff });
            }
        }
    }
    let row_norm = |mat: &[f64], r: usize| -> f64 {
        mat[r * dim..(r + 1) * dim].iter().map(|v| v * v).sum::<f64>().sqrt()
    };
    let col_norm = |mat: &[f64], c: usize| -> f64 {
        (0..dim).map(|r| mat[r * dim + c] * mat[r * dim + c]).sum::<f64>().sqrt()
    };
    let mut best = 0.0f64;
    for r in 0..dim {
        for c in 0..dim {
            if g[r * dim + c] > 0.0 {
                best = best.max(row_norm(m_fac, r) * col_norm(n_fac, c));
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{spectral_bound, spectral_norm_dense};
    use crate::function::{make_or, make_parity};
    use rand::{Rng, SeedableRng};

    fn star_relation(n: usize) -> (PartialFunction, Relation) {
        let f = make_or(n).unwrap();
        let pairs: Vec<(Word, Word)> = (0..n).map(|i| (0, (1 as Word) << i)).collect();
        let r = Relation::new(&f, &pairs).unwrap();
        (f, r)
    }

    #[test]
    fn or_star_gives_sqrt_n() {
        for n in [2usize, 4, 9] {
            let (f, r) = star_relation(n);
            let b = unweighted_bound(&f, &r).unwrap();
            assert!((b - (n as f64).sqrt()).abs() < 1e-12, "n={n}: {b}");
        }
    }

    #[test]
    fn single_pair_is_one() {
        let f = make_or(3).unwrap();
        let r = Relation::new(&f, &[(0b000, 0b101)]).unwrap();
        assert!((unweighted_bound(&f, &r).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parity2_full_bipartite_gives_two() {
        let f = make_parity(2).unwrap();
        let r = Relation::new(&f, &[(0b00, 0b01), (0b00, 0b10), (0b11, 0b01), (0b11, 0b10)]).unwrap();
        let q = relation_quantities(&f, &r).unwrap();
        assert_eq!((q.row_min, q.col_min, q.row_bit_max, q.col_bit_max), (2, 2, 1, 1));
        assert!((unweighted_bound(&f, &r).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn relation_gamma_has_norm_at_least_one() {
        let f = make_or(2).unwrap();
        let r = Relation::new(&f, &[(0b00, 0b01), (0b00, 0b10)]).unwrap();
        let g = relation_to_gamma(&f, &r).unwrap();
        assert!(g.spectral_norm().unwrap().value >= 1.0 - 1e-12);
    }

    #[test]
    fn bad_relations_rejected() {
        let f = make_or(2).unwrap();
        assert!(Relation::new(&f, &[]).is_err());
        // both inputs map to 1
        assert!(Relation::new(&f, &[(0b01, 0b10)]).is_err());
    }

    #[test]
    fn spectral_subsumes_unweighted_on_random_relations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let f = make_or(4).unwrap();
        let zeros: [Word; 1] = [0];
        let ones: Vec<Word> = (1..16).collect();
        for _ in 0..20 {
            let k = rng.gen_range(2..=8);
            let mut pairs = Vec::new();
            for _ in 0..k {
                pairs.push((zeros[0], ones[rng.gen_range(0..ones.len())]));
            }
            pairs.sort_unstable();
            pairs.dedup();
            let r = match Relation::new(&f, &pairs) {
                Ok(r) => r,
                Err(_) => continue,
            };
            let ub = unweighted_bound(&f, &r).unwrap();
            let g = relation_to_gamma(&f, &r).unwrap();
            let sb = spectral_bound(&f, &g).unwrap().value;
            assert!(sb >= ub - 1e-9, "spectral {sb} vs unweighted {ub}");
        }
    }

    #[test]
    fn mathias_simple_and_random() {
        // square-root split of the antidiagonal pair
        let g = [0.0, 1.0, 1.0, 0.0];
        let b = mathias_bound(&g, &g, &g, 2).unwrap();
        assert!((b - 1.0).abs() < 1e-12);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let dim = 5;
            let mut g = vec![0.0; dim * dim];
            for r in 0..dim {
                for c in r + 1..dim {
                    let v: f64 = rng.gen_range(0.0..1.0);
                    g[r * dim + c] = v;
                    g[c * dim + r] = v;
                }
            }
            // random entrywise split g = m ∘ n
            let mut m = vec![0.0; dim * dim];
            let mut n = vec![0.0; dim * dim];
            for k in 0..dim * dim {
                let s: f64 = rng.gen_range(0.2..0.8);
                m[k] = g[k].powf(s);
                n[k] = g[k].powf(1.0 - s);
                if g[k] == 0.0 {
                    m[k] = 0.0;
                    n[k] = 0.0;
                }
            }
            let bound = mathias_bound(&g, &m, &n, dim).unwrap();
            let lam = spectral_norm_dense(&g, dim).unwrap().value;
            assert!(bound >= lam - 1e-9, "bound {bound} < lambda {lam}");
        }
    }

    #[test]
    fn mathias_rejects_wrong_factorization() {
        let g = [0.0, 1.0, 1.0, 0.0];
        let m = [0.0, 0.5, 0.5, 0.0];
        assert!(matches!(
            mathias_bound(&g, &m, &m, 2),
            Err(Error::FactorizationMismatch { .. })
        ));
    }

    #[test]
    fn theorem_style_factorization_on_or4_star() {
        // the star relation's masked matrices admit the 1/d split whose
        // row/col norms give sqrt(l l' / (m m'))
        let (f, r) = star_relation(4);
        let q = relation_quantities(&f, &r).unwrap();
        let g = relation_to_gamma(&f, &r).unwrap();
        let dim = f.len();
        let mut degree = vec![0usize; dim];
        for &(a, b) in r.index_pairs() {
            degree[a] += 1;
            degree[b] += 1;
        }
        let d: Vec<f64> = degree.iter().map(|&k| (k as f64).sqrt()).collect();
        for i in 1..=4 {
            let gi = g.mask(i).unwrap().to_dense();
            let mut m = vec![0.0; dim * dim];
            let mut nf = vec![0.0; dim * dim];
            for rr in 0..dim {
                for cc in 0..dim {
                    if gi[rr * dim + cc] > 0.0 {
                        m[rr * dim + cc] = 1.0 / d[rr];
                        nf[rr * dim + cc] = 1.0 / d[cc];
                    }
                }
            }
            let bound = mathias_bound(&gi, &m, &nf, dim).unwrap();
            let expect = ((q.row_bit_max * q.col_bit_max) as f64 / (q.row_min * q.col_min) as f64).sqrt();
            assert!((bound - expect).abs() < 1e-12, "i={i}: {bound} vs {expect}");
            assert!(bound >= spectral_norm_dense(&gi, dim).unwrap().value - 1e-9);
        }
    }
}
