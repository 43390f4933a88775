//! Two-phase dense-tableau simplex with Bland's rule.
//!
//! Solves `min c·x  s.t.  A x = b, x >= 0` for any [`LpScalar`]. Bland's
//! smallest-index rule makes the pivot sequence deterministic and, in
//! exact arithmetic, cycle-free. Fixed-width rationals report overflow
//! through [`SolverFailure::Overflow`] so the caller can escalate to
//! arbitrary precision.

use super::rational::LpScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverFailure {
    /// Fixed-width arithmetic overflowed; retry with a wider scalar.
    Overflow,
    /// The objective is unbounded below (never expected for our LPs).
    Unbounded,
    /// Iteration limit hit (f64 pivoting can stall on degeneracy).
    Stalled,
}

#[derive(Debug, Clone)]
pub enum LpOutcome<S> {
    Optimal { objective: S, solution: Vec<S> },
    Infeasible,
}

/// Equality-form program `min c·x, A x = b, x >= 0`; `b` entries may be
/// negative (rows are re-signed internally).
pub struct Program<S> {
    pub a: Vec<Vec<S>>,
    pub b: Vec<S>,
    pub c: Vec<S>,
}

struct Tableau<S> {
    rows: usize,
    cols: usize, // structural + artificial columns
    structural: usize,
    a: Vec<Vec<S>>,
    b: Vec<S>,
    basis: Vec<usize>,
}

impl<S: LpScalar> Tableau<S> {
    fn pivot(&mut self, row: usize, col: usize) -> Result<(), SolverFailure> {
        let piv = self.a[row][col].clone();
        let inv = S::one().checked_div(&piv).ok_or(SolverFailure::Overflow)?;
        for v in self.a[row].iter_mut() {
            *v = v.checked_mul(&inv).ok_or(SolverFailure::Overflow)?;
        }
        self.b[row] = self.b[row].checked_mul(&inv).ok_or(SolverFailure::Overflow)?;
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            let factor = self.a[r][col].clone();
            if factor == S::zero() {
                continue;
            }
            for cidx in 0..self.cols {
                let delta = factor.checked_mul(&self.a[row][cidx]).ok_or(SolverFailure::Overflow)?;
                self.a[r][cidx] = self.a[r][cidx].checked_sub(&delta).ok_or(SolverFailure::Overflow)?;
            }
            let delta = factor.checked_mul(&self.b[row]).ok_or(SolverFailure::Overflow)?;
            self.b[r] = self.b[r].checked_sub(&delta).ok_or(SolverFailure::Overflow)?;
        }
        self.basis[row] = col;
        Ok(())
    }

    /// Minimize `obj` over the current feasible dictionary; `allowed`
    /// marks the columns permitted to enter.
    fn optimize(&mut self, obj: &[S], allowed: &dyn Fn(usize) -> bool) -> Result<S, SolverFailure> {
        let max_pivots = 200 * (self.rows + self.cols).max(4);
        // reduced costs maintained directly: z_j = c_j - c_B · B^{-1} A_j
        let mut reduced: Vec<S> = obj.to_vec();
        let mut offset = S::zero();
        // express the objective in terms of the current basis
        for (r, &bc) in self.basis.iter().enumerate() {
            let coef = reduced[bc].clone();
            if coef == S::zero() {
                continue;
            }
            for cidx in 0..self.cols {
                let delta = coef.checked_mul(&self.a[r][cidx]).ok_or(SolverFailure::Overflow)?;
                reduced[cidx] = reduced[cidx].checked_sub(&delta).ok_or(SolverFailure::Overflow)?;
            }
            let delta = coef.checked_mul(&self.b[r]).ok_or(SolverFailure::Overflow)?;
            offset = offset.checked_add(&delta).ok_or(SolverFailure::Overflow)?;
        }
        for _ in 0..max_pivots {
            // Bland: first allowed column with negative reduced cost
            let entering = (0..self.cols).find(|&j| allowed(j) && reduced[j].is_negative());
            let Some(col) = entering else {
                return Ok(offset);
            };
            // ratio test; Bland tie-break on the smallest basis index
            let mut leave: Option<(usize, S)> = None;
            for r in 0..self.rows {
                if self.a[r][col].is_positive() {
                    let ratio = self.b[r].checked_div(&self.a[r][col]).ok_or(SolverFailure::Overflow)?;
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => match ratio.checked_cmp(lratio).ok_or(SolverFailure::Overflow)? {
                            std::cmp::Ordering::Less => true,
                            std::cmp::Ordering::Equal => self.basis[r] < self.basis[*lr],
                            std::cmp::Ordering::Greater => false,
                        },
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return Err(SolverFailure::Unbounded);
            };
            self.pivot(row, col)?;
            // update reduced costs for the pivot
            let coef = reduced[col].clone();
            for cidx in 0..self.cols {
                let delta = coef.checked_mul(&self.a[row][cidx]).ok_or(SolverFailure::Overflow)?;
                reduced[cidx] = reduced[cidx].checked_sub(&delta).ok_or(SolverFailure::Overflow)?;
            }
            let delta = coef.checked_mul(&self.b[row]).ok_or(SolverFailure::Overflow)?;
            offset = offset.checked_add(&delta).ok_or(SolverFailure::Overflow)?;
        }
        Err(SolverFailure::Stalled)
    }
}

/// Solve an equality-form program.
pub fn solve_min<S: LpScalar>(p: &Program<S>) -> Result<LpOutcome<S>, SolverFailure> {
    let rows = p.a.len();
    let structural = p.c.len();
    debug_assert!(p.a.iter().all(|r| r.len() == structural));
    debug_assert_eq!(p.b.len(), rows);

    // sign-normalize so b >= 0, then append one artificial per row
    let cols = structural + rows;
    let mut a = Vec::with_capacity(rows);
    let mut b = Vec::with_capacity(rows);
    for r in 0..rows {
        let flip = p.b[r].is_negative();
        let mut row: Vec<S> = Vec::with_capacity(cols);
        for v in &p.a[r] {
            row.push(if flip { S::zero().checked_sub(v).ok_or(SolverFailure::Overflow)? } else { v.clone() });
        }
        for k in 0..rows {
            row.push(if k == r { S::one() } else { S::zero() });
        }
        a.push(row);
        b.push(if flip {
            S::zero().checked_sub(&p.b[r]).ok_or(SolverFailure::Overflow)?
        } else {
            p.b[r].clone()
        });
    }
    let mut t = Tableau { rows, cols, structural, a, b, basis: (structural..cols).collect() };

    // phase 1: drive the artificials to zero
    let mut phase1: Vec<S> = vec![S::zero(); cols];
    for j in structural..cols {
        phase1[j] = S::one();
    }
    let infeasibility = t.optimize(&phase1, &|_| true)?;
    if infeasibility.is_positive() {
        return Ok(LpOutcome::Infeasible);
    }
    // pivot out any artificial still sitting in the basis at level zero
    for r in 0..rows {
        if t.basis[r] >= structural {
            if let Some(col) = (0..structural).find(|&j| t.a[r][j].is_positive() || t.a[r][j].is_negative()) {
                t.pivot(r, col)?;
            }
        }
    }

    // phase 2: original objective, artificials barred
    let mut phase2: Vec<S> = vec![S::zero(); cols];
    phase2[..structural].clone_from_slice(&p.c);
    let structural_only = move |j: usize| j < structural;
    let objective = t.optimize(&phase2, &structural_only)?;

    let mut solution = vec![S::zero(); structural];
    for (r, &bc) in t.basis.iter().enumerate() {
        if bc < structural {
            solution[bc] = t.b[r].clone();
        }
    }
    Ok(LpOutcome::Optimal { objective, solution })
}
