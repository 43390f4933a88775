//! Pair/triple weight schemes and the weighted bound.
//!
//! A scheme assigns a symmetric weight `w(x,y)` to differing pairs and a
//! directed weight `w'(x,y,i)` to triples with `x_i != y_i`, subject to
//! `w'(x,y,i) w'(y,x,i) >= w(x,y)^2`. Writing `wt(x) = Σ_y w(x,y)` and
//! `v(x,i) = Σ_y w'(x,y,i)`, the bound is the minimum over admissible
//! triples of `sqrt(wt(x) wt(y) / (v(x,i) v(y,i)))`.

use crate::adversary::AdversaryMatrix;
use crate::function::{bit, PartialFunction, Word};
use crate::{tol, Error, Result};

/// Schemes store `|S|^2 (n+1)` triple weights; domains past this size
/// have no business in the weighted method's dense representation.
pub const SCHEME_CAP: usize = 512;

/// Pair weights and triple weights over a function's domain.
#[derive(Clone, Debug)]
pub struct WeightScheme {
    dim: usize,
    n: usize,
    /// `w(x,y)`, row-major over domain indices.
    w: Vec<f64>,
    /// `w'(x,y,i)`, indexed `(a * dim + b) * n + (i-1)`.
    wp: Vec<f64>,
}

impl WeightScheme {
    /// Validate and build a scheme from explicit weights.
    ///
    /// `w` is `dim × dim` row-major; `wp[(a·dim + b)·n + i−1]` is the
    /// triple weight for the ordered pair `(a, b)` and bit `i`.
    pub fn new(f: &PartialFunction, w: Vec<f64>, wp: Vec<f64>) -> Result<Self> {
        let dim = f.len();
        let n = f.n();
        if dim > SCHEME_CAP {
            return Err(Error::DomainCap { size: dim, cap: SCHEME_CAP });
        }
        if w.len() != dim * dim || wp.len() != dim * dim * n {
            return Err(Error::BadScheme {
                x: 0,
                y: 0,
                i: 0,
                msg: "weight arrays have the wrong shape".into(),
            });
        }
        let xw = |a: usize| f.domain()[a];
        for a in 0..dim {
            for b in 0..dim {
                let wab = w[a * dim + b];
                if !wab.is_finite() || wab < 0.0 {
                    return Err(bad(f, a, b, 0, "pair weight must be finite nonnegative"));
                }
                if (wab - w[b * dim + a]).abs() > tol::EXACT_DRIFT * wab.abs().max(1.0) {
                    return Err(bad(f, a, b, 0, "pair weights must be symmetric"));
                }
                if f.output_at(a) == f.output_at(b) && wab != 0.0 {
                    return Err(bad(f, a, b, 0, "pair weight must vanish when outputs agree"));
                }
                for i in 1..=n {
                    let t = wp[(a * dim + b) * n + i - 1];
                    if !t.is_finite() || t < 0.0 {
                        return Err(bad(f, a, b, i, "triple weight must be finite nonnegative"));
                    }
                    let same_bit = bit(xw(a), n, i) == bit(xw(b), n, i);
                    if (same_bit || f.output_at(a) == f.output_at(b)) && t != 0.0 {
                        return Err(bad(f, a, b, i, "triple weight must vanish off differing bits/outputs"));
                    }
                    if !same_bit && wab > 0.0 {
                        let back = wp[(b * dim + a) * n + i - 1];
                        if t * back < wab * wab * (1.0 - 1e-9) {
                            return Err(bad(f, a, b, i, "product constraint w'(x,y,i) w'(y,x,i) >= w(x,y)^2 violated"));
                        }
                    }
                }
            }
        }
        Ok(Self { dim, n, w, wp })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn pair_weight(&self, a: usize, b: usize) -> f64 {
        self.w[a * self.dim + b]
    }

    #[inline]
    pub fn triple_weight(&self, a: usize, b: usize, i: usize) -> f64 {
        self.wp[(a * self.dim + b) * self.n + i - 1]
    }

    /// `wt(x) = Σ_y w(x,y)`.
    pub fn wt(&self, a: usize) -> f64 {
        self.w[a * self.dim..(a + 1) * self.dim].iter().sum()
    }

    /// `v(x,i) = Σ_y w'(x,y,i)`.
    pub fn v(&self, a: usize, i: usize) -> f64 {
        (0..self.dim).map(|b| self.triple_weight(a, b, i)).sum()
    }
}

fn bad(f: &PartialFunction, a: usize, b: usize, i: usize, msg: &str) -> Error {
    Error::BadScheme { x: f.domain()[a], y: f.domain()[b], i, msg: msg.into() }
}

/// How to split a pair weight into the two directed triple weights.
pub enum TripleSplit<'a> {
    /// `w'(x,y,i) = w'(y,x,i) = w(x,y)`; always valid, product holds with equality.
    Symmetric,
    /// `w'(x,y,i) = w √t(x,y,i)` and `w'(y,x,i) = w / √t(x,y,i)` for a
    /// positive ratio function on `(x, y, i)`.
    Ratio(&'a dyn Fn(Word, Word, usize) -> f64),
}

/// The ratio `t(x,y,i) = (|F(x) − i| + 1) / (|F(y) − i| + 1)` for
/// functions whose outputs are positions: querying a bit close to `F(x)`
/// reveals little about pairs beyond it, so weight shifts accordingly.
pub fn position_t(f: &PartialFunction) -> impl Fn(Word, Word, usize) -> f64 + '_ {
    move |x, y, i| {
        let fx = f.eval(x).expect("x in domain") as f64;
        let fy = f.eval(y).expect("y in domain") as f64;
        ((fx - i as f64).abs() + 1.0) / ((fy - i as f64).abs() + 1.0)
    }
}

/// Convert an adversary matrix into a weight scheme: the pair weights
/// are `Γ[x,y] δ_x δ_y` with `δ` the principal eigenvector, and the
/// triple weights follow the chosen split.
pub fn gamma_to_scheme(
    f: &PartialFunction,
    gamma: &AdversaryMatrix,
    split: TripleSplit<'_>,
) -> Result<WeightScheme> {
    gamma.compatible_with(f)?;
    let dim = f.len();
    let n = f.n();
    if dim > SCHEME_CAP {
        return Err(Error::DomainCap { size: dim, cap: SCHEME_CAP });
    }
    let delta = gamma.spectral_norm()?.eigenvector;
    let mut w = vec![0.0; dim * dim];
    let mut wp = vec![0.0; dim * dim * n];
    for a in 0..dim {
        for b in 0..dim {
            w[a * dim + b] = gamma.entry(a, b) * delta[a] * delta[b];
        }
    }
    for (a, b) in f.differing_index_pairs() {
        let wab = w[a * dim + b];
        for i in 1..=n {
            if f.input_bit(a, i) != f.input_bit(b, i) {
                let (fwd, back) = match &split {
                    TripleSplit::Symmetric => (wab, wab),
                    TripleSplit::Ratio(t) => {
                        let r = t(f.domain()[a], f.domain()[b], i);
                        if !(r > 0.0) || !r.is_finite() {
                            return Err(bad(f, a, b, i, "ratio function must be positive finite"));
                        }
                        (wab * r.sqrt(), wab / r.sqrt())
                    }
                };
                wp[(a * dim + b) * n + i - 1] = fwd;
                wp[(b * dim + a) * n + i - 1] = back;
            }
        }
    }
    WeightScheme::new(f, w, wp)
}

/// The weighted bound with its minimizing triple.
#[derive(Clone, Debug)]
pub struct WeightedBound {
    pub value: f64,
    /// `(x, y, i)` achieving the minimum.
    pub argmin: (Word, Word, usize),
}

/// Evaluate the weighted bound of a scheme.
pub fn weighted_bound(f: &PartialFunction, scheme: &WeightScheme) -> Result<WeightedBound> {
    if scheme.dim != f.len() || scheme.n != f.n() {
        return Err(Error::BadScheme { x: 0, y: 0, i: 0, msg: "scheme shape does not match function".into() });
    }
    let dim = scheme.dim;
    let n = scheme.n;
    let wt: Vec<f64> = (0..dim).map(|a| scheme.wt(a)).collect();
    let mut v = vec![0.0; dim * (n + 1)];
    for a in 0..dim {
        for i in 1..=n {
            v[a * (n + 1) + i] = scheme.v(a, i);
        }
    }
    let mut best: Option<WeightedBound> = None;
    for (a, b) in f.differing_index_pairs() {
        if scheme.pair_weight(a, b) <= 0.0 {
            continue;
        }
        for i in 1..=n {
            if f.input_bit(a, i) != f.input_bit(b, i) {
                let (va, vb) = (v[a * (n + 1) + i], v[b * (n + 1) + i]);
                if va <= 0.0 || vb <= 0.0 {
                    return Err(bad(f, a, b, i, "v(x,i) vanished on an admissible triple"));
                }
                let val = (wt[a] * wt[b] / (va * vb)).sqrt();
                if best.as_ref().map_or(true, |bst| val < bst.value) {
                    best = Some(WeightedBound { value: val, argmin: (f.domain()[a], f.domain()[b], i) });
                }
            }
        }
    }
    best.ok_or(Error::BadScheme { x: 0, y: 0, i: 0, msg: "scheme has no positive pair weight".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{search_gamma, uniform_gamma};
    use crate::function::{make_ordered_search, make_parity, PartialFunction};

    #[test]
    fn symmetric_split_always_satisfies_product() {
        let f = make_ordered_search(4).unwrap();
        let g = search_gamma(&f).unwrap();
        let s = gamma_to_scheme(&f, &g, TripleSplit::Symmetric).unwrap();
        for (a, b) in f.differing_index_pairs() {
            for i in 1..=4 {
                if f.input_bit(a, i) != f.input_bit(b, i) {
                    let p = s.triple_weight(a, b, i) * s.triple_weight(b, a, i);
                    let w2 = s.pair_weight(a, b) * s.pair_weight(a, b);
                    assert!(p >= w2 * (1.0 - 1e-12));
                }
            }
        }
    }

    #[test]
    fn scheme_pair_weight_matches_eigenvector() {
        let f = make_ordered_search(4).unwrap();
        let g = search_gamma(&f).unwrap();
        let delta = g.spectral_norm().unwrap().eigenvector;
        let s = gamma_to_scheme(&f, &g, TripleSplit::Symmetric).unwrap();
        // w(0011, 0111) = Γ[x,y] δ_x δ_y with Γ[x,y] = 1
        let a = f.index_of(0b0011).unwrap();
        let b = f.index_of(0b0111).unwrap();
        assert!((s.pair_weight(a, b) - delta[a] * delta[b]).abs() < 1e-12);
    }

    #[test]
    fn zero_row_gives_zero_wt() {
        // one isolated pair: other inputs have wt = 0
        let f = PartialFunction::from_pairs(2, 1, [(0b00, 0), (0b01, 1), (0b10, 1)], "p").unwrap();
        let mut w = vec![0.0; 9];
        let wp = {
            let mut wp = vec![0.0; 9 * 2];
            // pair (00, 01) differs in bit 2
            w[1] = 1.0;
            w[3] = 1.0;
            wp[(1) * 2 + 1] = 1.0; // (a=0,b=1,i=2)
            wp[(3) * 2 + 1] = 1.0; // (a=1,b=0,i=2)
            wp
        };
        let s = WeightScheme::new(&f, w, wp).unwrap();
        assert_eq!(s.wt(2), 0.0);
        let b = weighted_bound(&f, &s).unwrap();
        assert!((b.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_parity2_scheme_gives_two() {
        // uniform weights on the 4 differing pairs with the symmetric split
        let f = make_parity(2).unwrap();
        let g = uniform_gamma(&f).unwrap();
        let dim = f.len();
        let mut w = vec![0.0; dim * dim];
        let mut wp = vec![0.0; dim * dim * 2];
        for (a, b) in f.differing_index_pairs() {
            w[a * dim + b] = 1.0;
            w[b * dim + a] = 1.0;
            for i in 1..=2 {
                if f.input_bit(a, i) != f.input_bit(b, i) {
                    wp[(a * dim + b) * 2 + i - 1] = 1.0;
                    wp[(b * dim + a) * 2 + i - 1] = 1.0;
                }
            }
        }
        let s = WeightScheme::new(&f, w, wp).unwrap();
        let bound = weighted_bound(&f, &s).unwrap();
        // hand enumeration: wt = 2 for every input, v(x,i) = 1 on admissible
        // triples, so every triple evaluates to sqrt(4/1) = 2
        assert!((bound.value - 2.0).abs() < 1e-12);
        let _ = g;
    }

    #[test]
    fn product_constraint_violation_rejected() {
        let f = make_parity(1).unwrap();
        let mut w = vec![0.0; 4];
        w[1] = 1.0;
        w[2] = 1.0;
        let mut wp = vec![0.0; 4];
        wp[1] = 0.5; // w'(0,1,1)
        wp[2] = 0.5; // w'(1,0,1): product 0.25 < 1
        assert!(WeightScheme::new(&f, w, wp).is_err());
    }

    #[test]
    fn position_ratio_split_is_valid_on_ordered_search() {
        let f = make_ordered_search(8).unwrap();
        let g = search_gamma(&f).unwrap();
        let t = position_t(&f);
        let s = gamma_to_scheme(&f, &g, TripleSplit::Ratio(&t)).unwrap();
        let b = weighted_bound(&f, &s).unwrap();
        assert!(b.value > 1.0);
    }
}
