//! Exact rank of sparse rational matrices by incremental row echelon form.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::Rational;

/// Sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, Rational)>;

/// Builds a sparse row from (column, value) pairs, merging duplicates and
/// dropping zeros.
pub fn sparse_row(entries: impl IntoIterator<Item = (usize, Rational)>) -> SparseRow {
    let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, v) in entries {
        *m.entry(c).or_insert_with(Rational::zero) += v;
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `row - factor * pivot`
fn eliminate(row: &SparseRow, pivot: &SparseRow, factor: &Rational) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - factor * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over ℚ of the matrix whose rows are given.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        while let Some((lead, lead_val)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = lead_val / &p[0].1;
                    row = eliminate(&row, p, &factor);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> SparseRow {
        sparse_row(
            v.iter()
                .enumerate()
                .map(|(i, &x)| (i, Rational::from_integer(x.into()))),
        )
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(Vec::<SparseRow>::new()), 0);
        assert_eq!(rank([row(&[0, 0])]), 0);
        assert_eq!(rank([row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank([row(&[1, 2, 3]), row(&[4, 5, 6]), row(&[7, 8, 9])]), 2);
        assert_eq!(rank([row(&[0, 1, 0]), row(&[1, 0, 0]), row(&[0, 0, 3])]), 3);
    }

    #[test]
    fn triangle_boundary() {
        // edges 01, 02, 12 -> vertices
        let d1 = [row(&[-1, 1, 0]), row(&[-1, 0, 1]), row(&[0, -1, 1])];
        assert_eq!(rank(d1), 2);
    }
}
