//! Gauss-Jordan elimination over an exact field.

use super::Field;

/// Result of solving `M u = b`.
#[derive(Clone, Debug)]
pub struct LinearSolution<F> {
    /// One solution (free variables set to zero), or `None` if inconsistent.
    pub particular: Option<Vec<F>>,
    /// Basis of the null space of `M`.
    pub kernel: Vec<Vec<F>>,
    pub rank: usize,
}

/// Solves a dense system with `cols` unknowns. Rows are equations.
pub fn solve<F: Field>(mut rows: Vec<Vec<F>>, mut rhs: Vec<F>, cols: usize) -> LinearSolution<F> {
    assert_eq!(rows.len(), rhs.len());
    let nrows = rows.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        rhs[r] = rhs[r].clone() * inv;
        let pivot_row = rows[r].clone();
        let pivot_rhs = rhs[r].clone();
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for (v, pv) in rows[i].iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *v = v.clone() - factor.clone() * pv.clone();
                }
            }
            rhs[i] = rhs[i].clone() - factor * pivot_rhs.clone();
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    let consistent = rhs[rank..].iter().all(|v| v.is_zero());
    let particular = consistent.then(|| {
        let mut u = vec![F::zero(); cols];
        for (row, &c) in pivots.iter().enumerate() {
            u[c] = rhs[row].clone();
        }
        u
    });
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -rows[row][f].clone();
            }
            v
        })
        .collect();
    LinearSolution { particular, kernel, rank }
}
