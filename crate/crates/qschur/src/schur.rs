//! Skew Schur modules: the defining map from a product of wedge powers (one
//! per row) to a product of symmetric powers (one per column), the standard
//! basis formed by tableau vectors, straightening against that basis, and
//! the box maps that present the kernel.

use std::collections::BTreeMap;

use crate::algebras::{
    diagonal_alpha, full_diagonal_word, sym_normalize_word, wedge_normalize_word,
    FreeModule, ModuleElement, TensorMonom,
};
use crate::arith::{
    exact_rank, rank_of_vectors, solve_in_span, CoefficientSpec, LaurentPoly, SparseLinearMap,
};
use crate::braiding::{add_to_word_sum, apply_beta_sigma, ParamMatrix, WordSum};
use crate::shapes::{enumerate_standard, SkewShape, Tableau};
use crate::{Error, Result};

/// The defining map of the Schur module for a skew shape, with its labeled
/// domain (rows) and codomain (nonempty columns).
#[derive(Clone, Debug)]
pub struct SchurMap {
    pub shape: SkewShape,
    pub params: ParamMatrix,
    pub domain: FreeModule,
    pub codomain: FreeModule,
    pub matrix: SparseLinearMap<TensorMonom>,
}

fn row_degrees(shape: &SkewShape) -> Vec<usize> {
    (1..=shape.num_rows()).map(|i| shape.row_len(i)).collect()
}

fn column_degrees(shape: &SkewShape) -> Vec<usize> {
    (1..=shape.num_cols()).map(|j| shape.col_len(j)).filter(|&d| d > 0).collect()
}

/// Builds the full matrix of the Schur map: expand every row by the wedge
/// diagonal, braid the flattened word from row order into column order with
/// the `(-Q^-2)`-twisted lift, then symmetrize each column.
pub fn build_schur_map(shape: &SkewShape, p: &ParamMatrix) -> Result<SchurMap> {
    let n = p.dim();
    let domain = FreeModule::wedge_series(n, &row_degrees(shape));
    let codomain = FreeModule::sym_series(n, &column_degrees(shape));
    let chi = shape.chi_permutation();
    let chi_len = crate::braiding::permutation_length(&chi);
    let twist = LaurentPoly::q_power(-2 * chi_len as i64);
    let col_degs = column_degrees(shape);

    let mut matrix = SparseLinearMap::new(domain.basis(), codomain.basis());
    for label in domain.basis() {
        let mut acc: Vec<(Vec<crate::shapes::Letter>, LaurentPoly)> =
            vec![(Vec::new(), LaurentPoly::one())];
        for row in &label {
            let expanded = full_diagonal_word(p, row);
            let mut next = Vec::with_capacity(acc.len() * expanded.len());
            for (w0, c0) in &acc {
                for (w1, c1) in &expanded {
                    let mut w = w0.clone();
                    w.extend_from_slice(w1);
                    next.push((w, c0 * c1));
                }
            }
            acc = next;
        }
        let mut ws = WordSum::new();
        for (w, c) in acc {
            add_to_word_sum(&mut ws, w, c);
        }
        let moved = apply_beta_sigma(p, &ws, &chi, true);
        let mut column: BTreeMap<TensorMonom, LaurentPoly> = BTreeMap::new();
        for (word, c) in moved {
            let mut coeff = &c * &twist;
            let mut blocks = TensorMonom::with_capacity(col_degs.len());
            let mut off = 0;
            for &d in &col_degs {
                let (w, k) = sym_normalize_word(p, &word[off..off + d]);
                coeff = &coeff * &k;
                blocks.push(w);
                off += d;
            }
            let slot = column.entry(blocks).or_insert_with(LaurentPoly::zero);
            *slot = &*slot + &coeff;
        }
        column.retain(|_, v| !v.is_zero());
        matrix.set_column(&label, &column);
    }
    Ok(SchurMap {
        shape: shape.clone(),
        params: p.clone(),
        domain,
        codomain,
        matrix,
    })
}

impl SchurMap {
    pub fn apply(&self, x: &ModuleElement) -> ModuleElement {
        ModuleElement { terms: self.matrix.apply(&x.terms) }
    }

    pub fn rank(&self, spec: &CoefficientSpec) -> Result<usize> {
        exact_rank(&self.matrix, spec)
    }
}

/// Tensor of wedged row words of a tableau; zero when a row repeats a
/// letter (the flag is the zero return, there is nothing else to report).
pub fn xi_of_tableau(p: &ParamMatrix, t: &Tableau) -> ModuleElement {
    let mut label = TensorMonom::with_capacity(t.rows().len());
    let mut coeff = LaurentPoly::one();
    for row in t.rows() {
        match wedge_normalize_word(p, row) {
            Some((w, k)) => {
                label.push(w);
                coeff = &coeff * &k;
            }
            None => return ModuleElement::zero(),
        }
    }
    ModuleElement::single(label, coeff)
}

/// Standard tableaux with their image vectors under the Schur map, verified
/// to span the image independently.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    pub order: Vec<crate::shapes::Letter>,
    pub tableaux: Vec<Tableau>,
    pub vectors: Vec<ModuleElement>,
}

pub fn standard_basis(
    schur: &SchurMap,
    order: &[crate::shapes::Letter],
) -> Result<StandardBasis> {
    if order.len() != schur.params.dim() {
        return Err(Error::InvalidInput(format!(
            "alphabet order for {} letters used with {} parameters",
            order.len(),
            schur.params.dim()
        )));
    }
    let tableaux = enumerate_standard(&schur.shape, order);
    let vectors: Vec<ModuleElement> = tableaux
        .iter()
        .map(|t| schur.apply(&xi_of_tableau(&schur.params, t)))
        .collect();
    let count = tableaux.len();
    let spanned =
        rank_of_vectors(&vectors.iter().map(|v| v.terms.clone()).collect::<Vec<_>>(),
            &CoefficientSpec::Generic)?;
    if spanned != count {
        return Err(Error::VerificationFailed(format!(
            "standard vectors of {} dependent: rank {spanned} of {count}",
            schur.shape
        )));
    }
    let full = schur.rank(&CoefficientSpec::Generic)?;
    if full != count {
        return Err(Error::VerificationFailed(format!(
            "Schur map of {} has rank {full}, standard count {count}",
            schur.shape
        )));
    }
    Ok(StandardBasis { order: order.to_vec(), tableaux, vectors })
}

/// Expansion of the image of an arbitrary tableau vector over the standard
/// basis, with coefficients verified to lie in Z[Q,Q^-1].
pub fn straighten(
    schur: &SchurMap,
    basis: &StandardBasis,
    s: &Tableau,
) -> Result<Vec<(Tableau, LaurentPoly)>> {
    if s.shape() != &schur.shape {
        return Err(Error::InvalidInput(format!(
            "tableau of shape {} straightened against {}",
            s.shape(),
            schur.shape
        )));
    }
    let target = schur.apply(&xi_of_tableau(&schur.params, s));
    let vectors: Vec<_> = basis.vectors.iter().map(|v| v.terms.clone()).collect();
    let sol = solve_in_span(&vectors, &target.terms, &CoefficientSpec::Generic)?
        .ok_or_else(|| {
            Error::VerificationFailed(format!(
                "image of tableau not in standard span for {}",
                schur.shape
            ))
        })?;
    if !sol.integral {
        return Err(Error::IntegralityFailed(format!(
            "straightening of {:?} leaves Z[Q,Q^-1]",
            s.rows()
        )));
    }
    Ok(basis
        .tableaux
        .iter()
        .zip(&sol.coeffs)
        .filter_map(|(t, c)| {
            let c = c.to_laurent().expect("integral coefficient");
            (!c.is_zero()).then(|| (t.clone(), c))
        })
        .collect())
}

/// Degrees of the box-map summand merging rows i and i+1 with lower degree
/// nu: same as the rows of the shape except at those two slots.
fn box_summand_degrees(shape: &SkewShape, i: usize, nu: usize) -> Vec<usize> {
    let gammas = row_degrees(shape);
    let mut degs = gammas.clone();
    degs[i - 1] = gammas[i - 1] + gammas[i] - nu;
    degs[i] = nu;
    degs
}

/// The sum of all adjacent-row exchange maps into the domain of the Schur
/// map; its image is the kernel of the Schur map. Domain labels carry a
/// leading marker word `[i, nu]` naming the summand.
pub fn box_map(shape: &SkewShape, p: &ParamMatrix) -> Result<SparseLinearMap<TensorMonom>> {
    let n = p.dim();
    let codomain = FreeModule::wedge_series(n, &row_degrees(shape));
    let gammas = row_degrees(shape);
    let mut domain_labels: Vec<TensorMonom> = Vec::new();
    let mut columns: Vec<BTreeMap<TensorMonom, LaurentPoly>> = Vec::new();

    for i in 1..shape.num_rows() {
        let bound = shape.outer().part(i + 1) as i64 - shape.inner().part(i) as i64;
        if bound <= 0 {
            continue;
        }
        for nu in 0..bound as usize {
            let degs = box_summand_degrees(shape, i, nu);
            let summand = FreeModule::wedge_series(n, &degs);
                for label in summand.basis() {
                let y = &label[i - 1];
                let z = &label[i];
                let split = diagonal_alpha(
                    p,
                    &ModuleElement::basis(vec![y.clone()]),
                    &[gammas[i - 1], y.len() - gammas[i - 1]],
                )?;
                let mut column: BTreeMap<TensorMonom, LaurentPoly> = BTreeMap::new();
                for (halves, c) in &split.terms {
                    let y1 = &halves[0];
                    let y2 = &halves[1];
                    let merged: Vec<crate::shapes::Letter> =
                        y2.iter().chain(z.iter()).copied().collect();
                    let Some((w, k)) = wedge_normalize_word(p, &merged) else {
                        continue;
                    };
                    let mut out = label.clone();
                    out[i - 1] = y1.clone();
                    out[i] = w;
                    let coeff = c * &k;
                    let slot = column.entry(out).or_insert_with(LaurentPoly::zero);
                    *slot = &*slot + &coeff;
                }
                column.retain(|_, v| !v.is_zero());
                let mut tagged = Vec::with_capacity(label.len() + 1);
                tagged.push(vec![i as crate::shapes::Letter, nu as crate::shapes::Letter]);
                tagged.extend(label);
                domain_labels.push(tagged);
                columns.push(column);
            }
        }
    }
    let mut matrix = SparseLinearMap::new(domain_labels.clone(), codomain.basis());
    for (label, column) in domain_labels.iter().zip(columns) {
        matrix.set_column(label, &column);
    }
    Ok(matrix)
}

/// Exchange map on a two-row shape that splits the middle factor and wedges
/// the halves outward: `x (x) y (x) z` goes to the sum of
/// `(x ^ y1) (x) (y2 ^ z)`. Defined when `a + b < lambda_2 - mu_1`.
pub fn overline_box(
    shape: &SkewShape,
    p: &ParamMatrix,
    a: usize,
    b: usize,
) -> Result<SparseLinearMap<TensorMonom>> {
    if shape.num_rows() != 2 {
        return Err(Error::InvalidInput(format!(
            "exchange map needs a two-row shape, got {shape}"
        )));
    }
    let bound = shape.outer().part(2) as i64 - shape.inner().part(1) as i64;
    if (a + b) as i64 >= bound {
        return Err(Error::InvalidInput(format!(
            "degrees a={a}, b={b} must satisfy a + b < {bound}"
        )));
    }
    let n = p.dim();
    let g1 = shape.row_len(1);
    let g2 = shape.row_len(2);
    let mid = g1 - a + g2 - b;
    let domain = FreeModule::wedge_series(n, &[a, mid, b]);
    let codomain = FreeModule::wedge_series(n, &[g1, g2]);
    let mut matrix = SparseLinearMap::new(domain.basis(), codomain.basis());
    for label in domain.basis() {
        let (x, y, z) = (&label[0], &label[1], &label[2]);
        let split = diagonal_alpha(
            p,
            &ModuleElement::basis(vec![y.clone()]),
            &[g1 - a, g2 - b],
        )?;
        let mut column: BTreeMap<TensorMonom, LaurentPoly> = BTreeMap::new();
        for (halves, c) in &split.terms {
            let left: Vec<crate::shapes::Letter> =
                x.iter().chain(halves[0].iter()).copied().collect();
            let right: Vec<crate::shapes::Letter> =
                halves[1].iter().chain(z.iter()).copied().collect();
            let Some((lw, lk)) = wedge_normalize_word(p, &left) else { continue };
            let Some((rw, rk)) = wedge_normalize_word(p, &right) else { continue };
            let coeff = &(c * &lk) * &rk;
            let slot = column.entry(vec![lw, rw]).or_insert_with(LaurentPoly::zero);
            *slot = &*slot + &coeff;
        }
        column.retain(|_, v| !v.is_zero());
        matrix.set_column(&label, &column);
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rank_of_stacked_columns;
    use crate::braiding::{params_from_alternating, AlternatingIntMatrix};
    use crate::shapes::{natural_order, Partition};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shape(outer: &[u32], inner: &[u32]) -> SkewShape {
        SkewShape::new(
            Partition::new(outer.to_vec()).unwrap(),
            Partition::new(inner.to_vec()).unwrap(),
        )
        .unwrap()
    }

    fn random_params(n: usize, seed: u64) -> ParamMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        params_from_alternating(&AlternatingIntMatrix::random(n - 1, 2, &mut rng))
    }

    #[test]
    fn single_cell_map_is_identity_like() {
        let p = ParamMatrix::ones(2);
        let m = build_schur_map(&shape(&[1], &[]), &p).unwrap();
        assert_eq!(m.rank(&CoefficientSpec::Generic).unwrap(), 2);
    }

    #[test]
    fn tiny_shapes_have_expected_ranks() {
        for p in [ParamMatrix::ones(2), random_params(2, 3)] {
            // one row of two cells: rank 1 over two letters
            let m = build_schur_map(&shape(&[2], &[]), &p).unwrap();
            assert_eq!(m.rank(&CoefficientSpec::Generic).unwrap(), 1);
            // one column of two cells: rank 3 over two letters
            let m = build_schur_map(&shape(&[1, 1], &[]), &p).unwrap();
            assert_eq!(m.rank(&CoefficientSpec::Generic).unwrap(), 3);
            // hook over two letters: rank 2
            let m = build_schur_map(&shape(&[2, 1], &[]), &p).unwrap();
            assert_eq!(m.rank(&CoefficientSpec::Generic).unwrap(), 2);
        }
    }

    #[test]
    fn standard_basis_counts_rank() {
        for p in [ParamMatrix::ones(3), random_params(3, 21)] {
            for (outer, inner) in [(vec![2, 1], vec![]), (vec![2, 2], vec![1]), (vec![3, 1], vec![1])] {
                let sh = shape(&outer, &inner);
                let m = build_schur_map(&sh, &p).unwrap();
                let basis = standard_basis(&m, &natural_order(3)).unwrap();
                assert_eq!(basis.tableaux.len(), m.rank(&CoefficientSpec::Generic).unwrap());
            }
        }
    }

    #[test]
    fn straightening_is_integral_and_fixes_standard_tableaux() {
        let p = random_params(3, 22);
        let sh = shape(&[2, 1], &[]);
        let m = build_schur_map(&sh, &p).unwrap();
        let basis = standard_basis(&m, &natural_order(3)).unwrap();
        // standard tableaux straighten to themselves
        for t in &basis.tableaux {
            let expansion = straighten(&m, &basis, t).unwrap();
            assert_eq!(expansion.len(), 1);
            assert_eq!(&expansion[0].0, t);
            assert!(expansion[0].1.is_one());
        }
        // a non-standard fill straightens integrally
        let t = Tableau::new(sh.clone(), vec![vec![2, 3], vec![1]], natural_order(3)).unwrap();
        let expansion = straighten(&m, &basis, &t).unwrap();
        assert!(!expansion.is_empty());
    }

    #[test]
    fn straightening_descends_in_the_pseudo_order() {
        use crate::shapes::pseudo_order_leq;
        for (outer, inner, n) in [
            (vec![2, 1], vec![], 3usize),
            (vec![2, 2], vec![1], 3),
            (vec![1, 1, 1], vec![], 2),
        ] {
            let p = ParamMatrix::ones(n);
            let sh = shape(&outer, &inner);
            let m = build_schur_map(&sh, &p).unwrap();
            let basis = standard_basis(&m, &natural_order(n)).unwrap();
            for label in m.domain.basis() {
                let s = Tableau::new(sh.clone(), label, natural_order(n)).unwrap();
                for (t, _) in straighten(&m, &basis, &s).unwrap() {
                    assert!(
                        pseudo_order_leq(&t, &s).unwrap(),
                        "term {:?} above input {:?} on {sh}",
                        t.rows(),
                        s.rows()
                    );
                }
            }
        }
    }

    #[test]
    fn box_image_is_the_kernel() {
        for p in [ParamMatrix::ones(2), ParamMatrix::ones(3), random_params(3, 23)] {
            for (outer, inner) in [
                (vec![2, 2], vec![]),
                (vec![2, 1], vec![]),
                (vec![2, 2], vec![1]),
                (vec![3, 2], vec![1]),
            ] {
                let sh = shape(&outer, &inner);
                let d = build_schur_map(&sh, &p).unwrap();
                let bx = box_map(&sh, &p).unwrap();
                let composed = d.matrix.compose(&bx);
                assert!(composed.is_zero_map(), "d . box != 0 on {sh}");
                let spec = CoefficientSpec::Generic;
                let rank_d = d.rank(&spec).unwrap();
                let rank_box = exact_rank(&bx, &spec).unwrap();
                assert_eq!(
                    rank_box + rank_d,
                    d.domain.rank(),
                    "rank split fails on {sh} over {} letters",
                    p.dim()
                );
            }
        }
    }

    #[test]
    fn overline_box_respects_its_bound() {
        let p = ParamMatrix::ones(3);
        let sh = shape(&[3, 3], &[]);
        assert!(overline_box(&sh, &p, 0, 0).is_ok());
        assert!(overline_box(&sh, &p, 1, 1).is_ok());
        assert!(overline_box(&sh, &p, 2, 1).is_err());
        let sh2 = shape(&[2, 2], &[1]);
        // bound is lambda_2 - mu_1 = 1, so only a = b = 0 is allowed
        assert!(overline_box(&sh2, &p, 0, 0).is_ok());
        assert!(overline_box(&sh2, &p, 1, 0).is_err());
    }

    #[test]
    fn exchange_images_stay_in_kernel() {
        // every admissible overline box lands in the kernel of the Schur map
        let p = random_params(3, 24);
        let sh = shape(&[3, 2], &[]);
        let d = build_schur_map(&sh, &p).unwrap();
        for (a, b) in [(0usize, 0usize), (1, 0), (0, 1)] {
            let ob = overline_box(&sh, &p, a, b).unwrap();
            let composed = d.matrix.compose(&ob);
            assert!(composed.is_zero_map(), "d . exchange({a},{b}) != 0");
        }
        // and for reference the plain box stacks to the same rank
        let bx = box_map(&sh, &p).unwrap();
        let r1 = exact_rank(&bx, &CoefficientSpec::Generic).unwrap();
        let r2 = rank_of_stacked_columns(&[&bx], &CoefficientSpec::Generic).unwrap();
        assert_eq!(r1, r2);
    }
}
