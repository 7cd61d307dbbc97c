//! Ideal membership in `Q[x]` by linear algebra on a degree-bounded truncation.

use super::components::exponents;
use super::poly::{XExp, XPoly};
use crate::linalg::{ColumnSpace, SparseMatrix};
use crate::rational::Q;
use num_traits::One;
use std::collections::BTreeMap;

/// Whether every target lies in the span of `x^α g` over generators `g` and
/// multipliers of degree `≤ mult_deg`. A `true` answer is a proof of
/// membership; `false` only says no certificate exists at this bound.
pub fn in_truncated_ideal(targets: &[XPoly], gens: &[XPoly], m: usize, mult_deg: u32) -> bool {
    let mut rows: BTreeMap<XExp, usize> = BTreeMap::new();
    let index = |e: &XExp, rows: &mut BTreeMap<XExp, usize>| {
        let k = rows.len();
        *rows.entry(*e).or_insert(k)
    };
    let mults = exponents(m, mult_deg);
    let mut cols = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        for a in &mults {
            let prod = g * &XPoly::monomial(*a, Q::one());
            let mut col: Vec<(usize, Q)> = prod.terms().map(|(e, c)| (index(e, &mut rows), c.clone())).collect();
            col.sort_by_key(|(i, _)| *i);
            cols.push(col);
        }
    }
    let target_cols: Vec<Vec<(usize, Q)>> = targets
        .iter()
        .map(|t| {
            let mut v: Vec<(usize, Q)> = t.terms().map(|(e, c)| (index(e, &mut rows), c.clone())).collect();
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect();
    let space = ColumnSpace::of(&SparseMatrix::from_columns(rows.len(), cols));
    target_cols.iter().all(|v| v.is_empty() || space.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn x(a: u8, b: u8) -> XPoly {
        let mut e = [0u8; super::super::poly::MAX_DIM];
        e[0] = a;
        e[1] = b;
        XPoly::monomial(e, q(1))
    }

    #[test]
    fn membership_needs_enough_degree() {
        // x² y − y³ = y (x − y)(x + y)
        let g = &x(1, 0) - &x(0, 1);
        let t = &x(2, 1) - &x(0, 3);
        assert!(!in_truncated_ideal(std::slice::from_ref(&t), std::slice::from_ref(&g), 2, 1));
        assert!(in_truncated_ideal(&[t], &[g], 2, 2));
    }

    #[test]
    fn non_members_are_rejected() {
        let g = &x(2, 0) + &x(0, 2);
        assert!(!in_truncated_ideal(&[x(1, 0)], &[g], 2, 4));
    }
}
