//! Classical Schur module oracle, built directly from signed letter
//! placements with no braiding and no parameters. Everything here is an
//! independent recomputation used to cross-check the deformed constructions
//! at Q = 1.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::algebras::{FreeModule, TensorMonom};
use crate::arith::{LaurentPoly, SparseLinearMap};
use crate::shapes::{Letter, Partition, SkewShape};

fn inversions(word: &[Letter]) -> usize {
    let mut inv = 0;
    for i in 0..word.len() {
        for j in (i + 1)..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// The classical Schur map: expand every row wedge as the signed sum over
/// arrangements of its letters onto the row's cells, then read each column
/// top to bottom as a plain monomial. No braiding sign is applied, so the
/// matrix may differ from the Q = 1 limit of the deformed map by one global
/// sign per shape; ranks and straightening coefficients are unaffected.
pub fn classical_schur_matrix(shape: &SkewShape, n: usize) -> SparseLinearMap<TensorMonom> {
    let row_degs: Vec<usize> = (1..=shape.num_rows()).map(|i| shape.row_len(i)).collect();
    let col_degs: Vec<usize> = (1..=shape.num_cols())
        .map(|j| shape.col_len(j))
        .filter(|&d| d > 0)
        .collect();
    let domain = FreeModule::wedge_series(n, &row_degs);
    let codomain = FreeModule::sym_series(n, &col_degs);
    let nonempty_cols: Vec<usize> =
        (1..=shape.num_cols()).filter(|&j| shape.col_len(j) > 0).collect();

    let mut matrix = SparseLinearMap::new(domain.basis(), codomain.basis());
    for label in domain.basis() {
        let mut column: BTreeMap<TensorMonom, i64> = BTreeMap::new();
        // one arrangement per row, each contributing its permutation sign
        let arrangements: Vec<Vec<(Vec<Letter>, i64)>> = label
            .iter()
            .map(|row| {
                row.iter()
                    .copied()
                    .permutations(row.len())
                    .map(|w| {
                        let s = if inversions(&w) % 2 == 0 { 1 } else { -1 };
                        (w, s)
                    })
                    .collect()
            })
            .collect();
        for choice in arrangements.iter().multi_cartesian_product() {
            let sign: i64 = choice.iter().map(|(_, s)| s).product();
            // place the arranged letters on the grid and read off columns
            let mut cols: BTreeMap<usize, Vec<Letter>> = BTreeMap::new();
            for (i, (row_word, _)) in choice.iter().enumerate() {
                let start = shape.inner().part(i + 1) as usize;
                for (k, &a) in row_word.iter().enumerate() {
                    cols.entry(start + k + 1).or_default().push(a);
                }
            }
            let blocks: TensorMonom = nonempty_cols
                .iter()
                .map(|j| {
                    let mut w = cols.remove(j).unwrap_or_default();
                    w.sort_unstable();
                    w
                })
                .collect();
            *column.entry(blocks).or_insert(0) += sign;
        }
        let column: BTreeMap<TensorMonom, LaurentPoly> = column
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(l, c)| (l, LaurentPoly::from_int(c)))
            .collect();
        matrix.set_column(&label, &column);
    }
    matrix
}

/// Littlewood-Richardson number computed the textbook way: semistandard
/// skew tableaux of the shape with the given content whose reverse reading
/// word (rows right to left, top to bottom) is a lattice word.
pub fn classical_lr(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) {
        return 0;
    }
    let Ok(shape) = SkewShape::new(lambda.clone(), mu.clone()) else {
        return 0;
    };
    let letters = nu.len();
    if letters == 0 {
        return usize::from(shape.size() == 0);
    }
    let cells = shape.cells_row_major();
    let mut grid = vec![vec![0 as Letter; shape.num_cols() + 1]; shape.num_rows() + 1];
    let mut budget: Vec<usize> = (1..=letters).map(|i| nu.part(i) as usize).collect();
    let mut count = 0usize;

    fn rec(
        cells: &[(usize, usize)],
        pos: usize,
        letters: usize,
        shape: &SkewShape,
        grid: &mut Vec<Vec<Letter>>,
        budget: &mut Vec<usize>,
        count: &mut usize,
    ) {
        if pos == cells.len() {
            // reverse reading word, checked incrementally elsewhere is
            // subtler; do it directly here
            let mut word = Vec::new();
            for i in 1..=shape.num_rows() {
                let lo = shape.inner().part(i) as usize + 1;
                let hi = shape.outer().part(i) as usize;
                for j in (lo..=hi).rev() {
                    word.push(grid[i][j]);
                }
            }
            if crate::shapes::is_lattice(&word) {
                *count += 1;
            }
            return;
        }
        let (i, j) = cells[pos];
        let left = if j > shape.inner().part(i) as usize + 1 { grid[i][j - 1] } else { 0 };
        let up = if i > 1 { grid[i - 1][j] } else { 0 };
        for a in 1..=letters as Letter {
            if budget[a as usize - 1] == 0 {
                continue;
            }
            // rows weakly increase, columns strictly increase
            if left != 0 && left > a {
                continue;
            }
            if up != 0 && up >= a {
                continue;
            }
            budget[a as usize - 1] -= 1;
            grid[i][j] = a;
            rec(cells, pos + 1, letters, shape, grid, budget, count);
            grid[i][j] = 0;
            budget[a as usize - 1] += 1;
        }
    }

    rec(&cells, 0, letters, &shape, &mut grid, &mut budget, &mut count);
    count
}

/// Row label and sign of a tableau vector in the classical module: each row
/// sorted increasingly, with the sign of the sorting permutation. `None`
/// when a row repeats a letter.
pub fn classical_xi(t: &crate::shapes::Tableau) -> Option<(TensorMonom, i64)> {
    let mut label = TensorMonom::with_capacity(t.rows().len());
    let mut sign = 1i64;
    for row in t.rows() {
        let mut w = row.clone();
        if inversions(&w) % 2 == 1 {
            sign = -sign;
        }
        w.sort_unstable();
        if w.windows(2).any(|p| p[0] == p[1]) {
            return None;
        }
        label.push(w);
    }
    Some((label, sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{exact_rank, CoefficientSpec};
    use crate::shapes::{enumerate_standard, natural_order};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn classical_ranks_are_schur_dimensions() {
        // dim of the classical Schur module for (2,1) over n letters is
        // n(n^2-1)/3; over 2 letters that is 2, over 3 letters 8
        let sh = SkewShape::straight(p(&[2, 1]));
        let m2 = classical_schur_matrix(&sh, 2);
        assert_eq!(exact_rank(&m2, &CoefficientSpec::Generic).unwrap(), 2);
        let m3 = classical_schur_matrix(&sh, 3);
        assert_eq!(exact_rank(&m3, &CoefficientSpec::Generic).unwrap(), 8);
    }

    #[test]
    fn classical_rank_matches_standard_count() {
        for (outer, inner) in [
            (vec![2u32, 2], vec![]),
            (vec![3, 1], vec![1u32]),
            (vec![2, 2, 1], vec![1]),
        ] {
            let sh = SkewShape::new(p(&outer), p(&inner)).unwrap();
            for n in 2..=3usize {
                let m = classical_schur_matrix(&sh, n);
                let st = enumerate_standard(&sh, &natural_order(n));
                assert_eq!(
                    exact_rank(&m, &CoefficientSpec::Generic).unwrap(),
                    st.len(),
                    "shape {sh} over {n} letters"
                );
            }
        }
    }

    #[test]
    fn lr_numbers_small_table() {
        assert_eq!(classical_lr(&p(&[2, 1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(classical_lr(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(classical_lr(&p(&[2, 2]), &p(&[1]), &p(&[2, 1])), 1);
        assert_eq!(classical_lr(&p(&[2, 2]), &p(&[2]), &p(&[2])), 1);
        assert_eq!(classical_lr(&p(&[2, 2]), &p(&[2]), &p(&[1, 1])), 0);
        assert_eq!(classical_lr(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert_eq!(classical_lr(&p(&[2]), &p(&[]), &p(&[2])), 1);
        assert_eq!(classical_lr(&p(&[]), &p(&[]), &p(&[])), 1);
    }
}
