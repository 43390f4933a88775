//! Query-probability schedules and the minimax value.
//!
//! A schedule gives, for every input, a distribution over "which bit a
//! run queries on average" (slot 0 standing for the non-query). The
//! minimax value `M_p` is the largest over differing pairs of the
//! inverse overlap `1 / Σ_{i: x_i≠y_i} sqrt(p_x(i) p_y(i))`; pairs with
//! zero overlap contribute `+∞`, which propagates as `f64::INFINITY`.

use crate::function::{PartialFunction, Word};
use crate::{tol, Error, Result};

/// One probability distribution over `{0, …, n}` per domain input.
#[derive(Clone, Debug)]
pub struct ProbabilitySchedule {
    n: usize,
    /// Row-major `|S| × (n+1)`.
    p: Vec<f64>,
}

impl ProbabilitySchedule {
    /// Validate rows: nonnegative, summing to 1 within tolerance.
    pub fn new(f: &PartialFunction, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = f.n();
        if rows.len() != f.len() {
            return Err(Error::DimensionMismatch { expected: f.len(), got: rows.len() });
        }
        let mut p = Vec::with_capacity(f.len() * (n + 1));
        for (k, row) in rows.iter().enumerate() {
            let input = f.domain()[k];
            if row.len() != n + 1 {
                return Err(Error::BadSchedule {
                    input,
                    msg: format!("row has {} entries, expected {}", row.len(), n + 1),
                });
            }
            let mut sum = 0.0;
            for &v in row {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::BadSchedule { input, msg: format!("entry {v} not in [0,1]") });
                }
                sum += v;
            }
            if (sum - 1.0).abs() > tol::CHECK_ABS {
                return Err(Error::BadSchedule { input, msg: format!("row sums to {sum}, not 1") });
            }
            p.extend_from_slice(row);
        }
        Ok(Self { n, p })
    }

    /// Uniform over the `n` query slots for every input.
    pub fn uniform(f: &PartialFunction) -> Self {
        let n = f.n();
        let mut row = vec![1.0 / n as f64; n + 1];
        row[0] = 0.0;
        Self { n, p: row.repeat(f.len()) }
    }

    /// Seeded random rows (normalized positive weights).
    pub fn random(f: &PartialFunction, seed: u64) -> Self {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = f.n();
        let mut p = Vec::with_capacity(f.len() * (n + 1));
        for _ in 0..f.len() {
            let row: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.01..1.0)).collect();
            let s: f64 = row.iter().sum();
            p.extend(row.into_iter().map(|v| v / s));
        }
        Self { n, p }
    }

    /// `p_x(i)` by domain index; `i = 0` is the non-query slot.
    #[inline]
    pub fn prob(&self, k: usize, i: usize) -> f64 {
        self.p[k * (self.n + 1) + i]
    }
}

/// The minimax value `M_p`; `f64::INFINITY` when some differing pair has
/// no joint query mass on its differing bits (the schedule is then
/// non-informative for that pair).
pub fn minimax_value(f: &PartialFunction, p: &ProbabilitySchedule) -> Result<(f64, Option<(Word, Word)>)> {
    if p.n != f.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), got: p.n });
    }
    if p.p.len() != f.len() * (f.n() + 1) {
        return Err(Error::DimensionMismatch { expected: f.len() * (f.n() + 1), got: p.p.len() });
    }
    let mut best: f64 = 0.0;
    let mut arg = None;
    for (a, b) in f.differing_index_pairs() {
        let mut overlap = 0.0;
        for i in 1..=f.n() {
            if f.input_bit(a, i) != f.input_bit(b, i) {
                overlap += (p.prob(a, i) * p.prob(b, i)).sqrt();
            }
        }
        let val = if overlap > 0.0 { 1.0 / overlap } else { f64::INFINITY };
        if val > best {
            best = val;
            arg = Some((f.domain()[a], f.domain()[b]));
        }
    }
    Ok((best, arg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{random_gamma, spectral_bound};
    use crate::function::{make_or, make_parity};

    /// Point mass on the leftmost 1 for nonzero inputs, uniform for 0^n.
    fn or_analytic_schedule(f: &PartialFunction) -> ProbabilitySchedule {
        let n = f.n();
        let rows: Vec<Vec<f64>> = f
            .domain()
            .iter()
            .map(|&x| {
                let mut row = vec![0.0; n + 1];
                if x == 0 {
                    for i in 1..=n {
                        row[i] = 1.0 / n as f64;
                    }
                } else {
                    let first = (1..=n).find(|&i| crate::function::bit(x, n, i)).unwrap();
                    row[first] = 1.0;
                }
                row
            })
            .collect();
        ProbabilitySchedule::new(f, rows).unwrap()
    }

    #[test]
    fn or_analytic_minimax_is_sqrt_n() {
        for n in [2usize, 4, 8] {
            let f = make_or(n).unwrap();
            let p = or_analytic_schedule(&f);
            let (v, _) = minimax_value(&f, &p).unwrap();
            assert!((v - (n as f64).sqrt()).abs() < 1e-9, "n={n}: {v}");
        }
    }

    #[test]
    fn single_pair_unit_mass_gives_one() {
        let f = make_parity(1).unwrap();
        let p = ProbabilitySchedule::new(&f, vec![vec![0.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let (v, _) = minimax_value(&f, &p).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_overlap_is_infinite() {
        let f = make_parity(2).unwrap();
        // all mass on the non-query slot
        let rows = vec![vec![1.0, 0.0, 0.0]; 4];
        let p = ProbabilitySchedule::new(&f, rows).unwrap();
        let (v, _) = minimax_value(&f, &p).unwrap();
        assert!(v.is_infinite());
    }

    #[test]
    fn weak_duality_on_random_pairs() {
        let f = make_parity(2).unwrap();
        for seed in 0..50u64 {
            let g = random_gamma(&f, seed).unwrap();
            let sb = spectral_bound(&f, &g).unwrap().value;
            let p = ProbabilitySchedule::random(&f, seed + 1000);
            let (mp, _) = minimax_value(&f, &p).unwrap();
            assert!(sb <= mp + 1e-6, "seed {seed}: spectral {sb} > minimax {mp}");
        }
    }

    #[test]
    fn invalid_rows_rejected() {
        let f = make_parity(1).unwrap();
        assert!(ProbabilitySchedule::new(&f, vec![vec![0.5, 0.4], vec![0.0, 1.0]]).is_err());
        assert!(ProbabilitySchedule::new(&f, vec![vec![-0.1, 1.1], vec![0.0, 1.0]]).is_err());
        assert!(ProbabilitySchedule::new(&f, vec![vec![0.0, 1.0]]).is_err());
    }
}
