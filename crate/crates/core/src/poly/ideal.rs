use std::collections::BTreeMap;

use thiserror::Error;

use super::linalg::solve;
use super::{BivarPoly, Conic, Field, Frame, GaussRat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("target is not Q·R for any cofactor R of degree at most {max_deg}")]
pub struct NotInIdeal {
    pub max_deg: u32,
}

/// Monomials `z^i z̄^j` with `i + j <= max_deg`, graded then lexicographic
/// (higher `z` power first within a degree).
pub(crate) fn graded_monomials(max_deg: u32) -> Vec<(u32, u32)> {
    (0..=max_deg).flat_map(|d| (0..=d).rev().map(move |i| (i, d - i))).collect()
}

/// Finds `R` with `target = Q·R` and `deg R <= max_deg` by exact elimination.
///
/// The target may be in either frame; the cofactor is returned in the `(z, z̄)` frame.
pub fn ideal_member_solve(
    target: &BivarPoly<GaussRat>,
    q: &Conic,
    max_deg: u32,
) -> Result<BivarPoly<GaussRat>, NotInIdeal> {
    let target = target.to_zzbar();
    let q_poly = q.poly_xy().to_zzbar();
    let unknowns = graded_monomials(max_deg);

    // Row index per monomial appearing in target or in any Q·m.
    let mut rows: BTreeMap<(u32, u32), Vec<GaussRat>> = BTreeMap::new();
    for (col, &(i, j)) in unknowns.iter().enumerate() {
        for (&(qi, qj), c) in q_poly.terms() {
            let row = rows.entry((i + qi, j + qj)).or_insert_with(|| vec![GaussRat::zero(); unknowns.len()]);
            row[col] = row[col].clone() + c.clone();
        }
    }
    for (&k, _) in target.terms() {
        rows.entry(k).or_insert_with(|| vec![GaussRat::zero(); unknowns.len()]);
    }
    let (matrix, rhs): (Vec<_>, Vec<_>) = rows.into_iter().map(|(k, row)| (row, target.coeff(k.0, k.1))).unzip();
    let sol = solve(matrix, rhs, unknowns.len());
    let u = sol.particular.ok_or(NotInIdeal { max_deg })?;
    Ok(BivarPoly::from_terms(unknowns.into_iter().zip(u), Frame::ZZbar))
}
