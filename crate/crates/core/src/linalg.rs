//! Dense linear solving over an arbitrary coefficient field.
//!
//! One reduced-row-echelon pass serves both scalar modes: with exact
//! coefficients pivots are chosen as the first nonzero entry and the answer
//! is exact; with approximate ones pivots maximize magnitude and a relative
//! threshold decides what counts as zero. Free variables are always set to
//! zero, so the particular solution is deterministic given the column order.

use crate::scalar::Coeff;

/// A linear system `A x = b`, built incrementally.
pub struct LinearSystem<C: Coeff> {
    cols: usize,
    rows: Vec<Vec<C>>,
    rhs: Vec<C>,
}

/// Result of an elimination pass.
pub enum SolveOutcome<C: Coeff> {
    /// A particular solution with every free column set to zero.
    Solved(Solution<C>),
    /// Some equation reduced to `0 = r` with `r` above threshold.
    Inconsistent { row: usize, residual: f64 },
}

pub struct Solution<C: Coeff> {
    pub x: Vec<C>,
    pub rank: usize,
    /// Column indices that carried no pivot.
    pub free: Vec<usize>,
    /// Canonical kernel basis, one vector per free column in `free` order:
    /// that column set to one, pivot columns filled in from the reduced
    /// matrix, all other free columns zero.
    pub kernel: Vec<Vec<C>>,
}

impl<C: Coeff> LinearSystem<C> {
    pub fn new(cols: usize) -> Self {
        LinearSystem { cols, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Appends one equation `sum_j row[j] x_j = b`.
    pub fn push_row(&mut self, row: Vec<C>, b: C) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
        self.rhs.push(b);
    }

    /// Gauss-Jordan elimination; `tol` is the relative zero threshold in
    /// approximate mode (ignored for exact coefficients).
    pub fn solve(&self, tol: f64) -> SolveOutcome<C> {
        let mut a = self.rows.clone();
        let mut b = self.rhs.clone();
        let nrows = a.len();
        let scale = self
            .rows
            .iter()
            .flatten()
            .chain(self.rhs.iter())
            .map(C::magnitude)
            .fold(0.0, f64::max);
        let eps = if C::EXACT { 0.0 } else { tol * scale.max(1.0) };

        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.cols];
        let mut next_row = 0usize;
        for col in 0..self.cols {
            // pick the pivot row among the untouched ones
            let mut pick: Option<usize> = None;
            let mut best = eps;
            for r in next_row..nrows {
                let mag = a[r][col].magnitude();
                if C::EXACT {
                    if !a[r][col].is_zero() {
                        pick = Some(r);
                        break;
                    }
                } else if mag > best {
                    best = mag;
                    pick = Some(r);
                }
            }
            let Some(pr) = pick else { continue };
            a.swap(next_row, pr);
            b.swap(next_row, pr);
            let inv = a[next_row][col]
                .try_inv()
                .expect("pivot chosen nonzero");
            for j in col..self.cols {
                a[next_row][j] = a[next_row][j].clone() * inv.clone();
            }
            b[next_row] = b[next_row].clone() * inv;
            for r in 0..nrows {
                if r == next_row || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in col..self.cols {
                    a[r][j] = a[r][j].clone() - f.clone() * a[next_row][j].clone();
                }
                b[r] = b[r].clone() - f * b[next_row].clone();
            }
            pivot_of_col[col] = Some(next_row);
            next_row += 1;
        }

        // consistency: zero rows must have (near-)zero right-hand sides
        for r in next_row..nrows {
            let lead = a[r].iter().map(C::magnitude).fold(0.0, f64::max);
            let res = b[r].magnitude();
            let bad = if C::EXACT {
                !b[r].is_zero()
            } else {
                lead <= eps && res > eps
            };
            if bad {
                return SolveOutcome::Inconsistent { row: r, residual: res };
            }
        }

        let mut x = vec![C::zero(); self.cols];
        let mut free = Vec::new();
        for col in 0..self.cols {
            match pivot_of_col[col] {
                Some(r) => x[col] = b[r].clone(),
                None => free.push(col),
            }
        }
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for col in 0..self.cols {
                    if let Some(r) = pivot_of_col[col] {
                        v[col] = -a[r][f].clone();
                    }
                }
                v
            })
            .collect();
        SolveOutcome::Solved(Solution { x, rank: next_row, free, kernel })
    }
}

/// Rank of a dense matrix given as rows.
pub fn rank<C: Coeff>(rows: &[Vec<C>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut sys = LinearSystem::new(rows[0].len());
    for r in rows {
        sys.push_row(r.clone(), C::zero());
    }
    match sys.solve(tol) {
        SolveOutcome::Solved(s) => s.rank,
        SolveOutcome::Inconsistent { .. } => unreachable!("zero rhs is consistent"),
    }
}
