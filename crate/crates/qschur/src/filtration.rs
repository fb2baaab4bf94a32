//! Filtrations of skew modules. A skew module over one alphabet embeds into
//! a straight module over the union of a fresh auxiliary alphabet and the
//! original one; canonical invariant elements indexed by lattice tableaux
//! then cut the embedded module into layers whose quotients are straight
//! modules. A second, coarser filtration covers modules over a direct sum
//! of two parameter alphabets.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebras::{
    diagonal_alpha, factor_basis, fusion_apply, omega_rs, wedge_normalize_word, FactorKind,
    ModuleElement, TensorMonom,
};
use crate::arith::{rank_of_vectors, CoefficientSpec, LaurentPoly};
use crate::braiding::ParamMatrix;
use crate::schur::{build_schur_map, SchurMap};
use crate::shapes::{
    enumerate_standard, lr_tableaux, natural_order, subpartitions, transpose_word, Letter,
    Partition, SkewShape, Tableau,
};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// direct sums of parameter alphabets

/// Parameters for two alphabets glued side by side: the combined matrix is
/// block diagonal in the two inputs and every cross entry is 1.
#[derive(Clone, Debug)]
pub struct DirectSumParams {
    pub left: ParamMatrix,
    pub right: ParamMatrix,
    pub combined: ParamMatrix,
}

pub fn direct_sum_params(left: &ParamMatrix, right: &ParamMatrix) -> DirectSumParams {
    let n = left.dim();
    let m = right.dim();
    let mut exp = vec![vec![0i64; n + m]; n + m];
    for i in 1..=n {
        for j in 1..=n {
            exp[i - 1][j - 1] = left.exponent(i as Letter, j as Letter);
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            exp[n + i - 1][n + j - 1] = right.exponent(i as Letter, j as Letter);
        }
    }
    let combined = ParamMatrix::from_exponents(exp)
        .expect("block-diagonal gluing preserves antisymmetry");
    DirectSumParams { left: left.clone(), right: right.clone(), combined }
}

/// Alphabet order on the sum module that ranks the original letters
/// (shifted past the auxiliary ones) below the auxiliary letters.
pub fn sum_alphabet_order(aux_letters: usize, main_letters: usize) -> Vec<Letter> {
    let mut order: Vec<Letter> =
        (1..=main_letters).map(|a| (aux_letters + a) as Letter).collect();
    order.extend((1..=aux_letters).map(|a| a as Letter));
    order
}

// ---------------------------------------------------------------------------
// column data

/// A rectangular array of nonnegative integers whose j-th row sums to the
/// j-th part of a fixed partition. Rows index parts of that partition,
/// columns index rows of the ambient shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TFamily {
    t: Vec<Vec<u32>>,
    cols: usize,
}

impl TFamily {
    pub fn new(t: Vec<Vec<u32>>, mu: &Partition, cols: usize) -> Result<Self> {
        if t.len() != mu.len() {
            return Err(Error::InvalidInput(format!(
                "array has {} rows, partition {mu} has {} parts",
                t.len(),
                mu.len()
            )));
        }
        for (j, row) in t.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "row {} has {} entries, expected {cols}",
                    j + 1,
                    row.len()
                )));
            }
            let sum: u32 = row.iter().sum();
            if sum != mu.part(j + 1) {
                return Err(Error::InvalidInput(format!(
                    "row {} sums to {sum}, expected {}",
                    j + 1,
                    mu.part(j + 1)
                )));
            }
        }
        Ok(TFamily { t, cols })
    }

    pub fn num_rows(&self) -> usize {
        self.t.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// Entry t_{ji}, both indices 1-based.
    pub fn entry(&self, j: usize, i: usize) -> u32 {
        self.t[j - 1][i - 1]
    }

    pub fn column_sums(&self) -> Vec<u32> {
        (1..=self.cols).map(|i| self.t.iter().map(|row| row[i - 1]).sum()).collect()
    }

    /// Whether the column sums match the row lengths of outer/inner, which
    /// places the resulting element in the layer of inner.
    pub fn matches_layer(&self, outer: &Partition, inner: &Partition) -> bool {
        (1..=self.cols).all(|i| {
            self.column_sums()[i - 1] == outer.part(i).saturating_sub(inner.part(i))
        }) && outer.len() <= self.cols
    }
}

// ---------------------------------------------------------------------------
// the embedding context

/// Everything needed to move between a skew module over the main alphabet
/// and the straight module over the auxiliary-plus-main alphabet: both
/// defining maps, the combined parameters, and the letter shift.
pub struct SkewEmbedding {
    lambda: Partition,
    mu: Partition,
    n_letters: usize,
    m_letters: usize,
    params_v: ParamMatrix,
    params_aux: ParamMatrix,
    params_sum: ParamMatrix,
    pub skew_map: SchurMap,
    pub sum_map: SchurMap,
}

impl SkewEmbedding {
    /// `params_aux` must have dimension mu_1: one auxiliary letter per
    /// column of mu, so that each row prefix 1..mu_i is a wedge word.
    pub fn new(
        lambda: Partition,
        mu: Partition,
        n_letters: usize,
        params_v: ParamMatrix,
        params_aux: ParamMatrix,
    ) -> Result<Self> {
        if params_v.dim() != n_letters {
            return Err(Error::InvalidInput(format!(
                "main parameters are {}x{0}, alphabet has {n_letters} letters",
                params_v.dim()
            )));
        }
        let m_letters = mu.first() as usize;
        if params_aux.dim() != m_letters {
            return Err(Error::InvalidInput(format!(
                "auxiliary parameters are {}x{0}, need dimension {m_letters}",
                params_aux.dim()
            )));
        }
        let skew = SkewShape::new(lambda.clone(), mu.clone())?;
        let skew_map = build_schur_map(&skew, &params_v)?;
        let params_sum = direct_sum_params(&params_aux, &params_v).combined;
        let sum_map = build_schur_map(&SkewShape::straight(lambda.clone()), &params_sum)?;
        Ok(SkewEmbedding {
            lambda,
            mu,
            n_letters,
            m_letters,
            params_v,
            params_aux,
            params_sum,
            skew_map,
            sum_map,
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn main_letters(&self) -> usize {
        self.n_letters
    }

    pub fn aux_letters(&self) -> usize {
        self.m_letters
    }

    pub fn params_main(&self) -> &ParamMatrix {
        &self.params_v
    }

    pub fn params_aux(&self) -> &ParamMatrix {
        &self.params_aux
    }

    pub fn params_sum(&self) -> &ParamMatrix {
        &self.params_sum
    }

    /// Prefixes row i with the auxiliary letters 1..mu_i and shifts the main
    /// letters past the auxiliary alphabet. The result is again increasing.
    pub fn lift_label(&self, label: &TensorMonom) -> TensorMonom {
        let m = self.m_letters as Letter;
        label
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut lifted: Vec<Letter> = (1..=self.mu.part(i + 1) as Letter).collect();
                lifted.extend(row.iter().map(|&a| a + m));
                lifted
            })
            .collect()
    }

    /// The embedding as a matrix from the skew wedge domain into the sum
    /// module's column codomain: each basis row tuple is lifted and pushed
    /// through the straight defining map.
    pub fn embed_matrix(&self) -> crate::arith::SparseLinearMap<TensorMonom> {
        let mut out = crate::arith::SparseLinearMap::new(
            self.skew_map.domain.basis(),
            self.sum_map.codomain.basis(),
        );
        for label in self.skew_map.domain.basis() {
            let column = self.sum_map.matrix.column(&self.lift_label(&label));
            out.set_column(&label, &column);
        }
        out
    }

    // -----------------------------------------------------------------------
    // invariant elements from column data

    /// The invariant element of the auxiliary wedge series attached to a
    /// column-data array: split each generator 1 ^ ... ^ mu_j along row j of
    /// the array, interleave all blocks so that same-column pieces become
    /// adjacent, and multiply each group back together.
    pub fn invariant_of_array(&self, t: &TFamily) -> Result<ModuleElement> {
        let r = self.mu.len();
        let s = self.lambda.len();
        if t.num_rows() != r || (r > 0 && t.num_cols() != s) {
            return Err(Error::InvalidInput(format!(
                "column data is {}x{}, expected {r}x{s}",
                t.num_rows(),
                t.num_cols()
            )));
        }
        for j in 1..=r {
            let sum: u32 = (1..=s).map(|i| t.entry(j, i)).sum();
            if sum != self.mu.part(j) {
                return Err(Error::InvalidInput(format!(
                    "row {j} of the column data sums to {sum}, expected {}",
                    self.mu.part(j)
                )));
            }
        }
        // generators in reversed part order: factor k holds 1..mu_{r-k}
        let start: TensorMonom =
            (1..=r).rev().map(|j| (1..=self.mu.part(j) as Letter).collect()).collect();
        let mut x = ModuleElement::basis(start);
        // split factor by factor; each split widens the element by s blocks
        for k in 0..r {
            let j = r - k;
            let alpha: Vec<usize> = (1..=s).map(|i| t.entry(j, i) as usize).collect();
            x = split_factor(&self.params_aux, &x, k * s, &alpha)?;
        }
        let x = fusion_apply(&self.params_aux, &omega_rs(r, s), &x)?;
        // multiply each run of r adjacent blocks into one wedge factor
        let mut out = ModuleElement::zero();
        for (label, c) in &x.terms {
            let mut blocks = TensorMonom::with_capacity(s);
            let mut coeff = c.clone();
            let mut dead = false;
            for i in 0..s {
                let grp: Vec<Letter> = label[i * r..(i + 1) * r].concat();
                match wedge_normalize_word(&self.params_aux, &grp) {
                    Some((w, k)) => {
                        coeff = &coeff * &k;
                        blocks.push(w);
                    }
                    None => {
                        dead = true;
                        break;
                    }
                }
            }
            if !dead {
                out.add_term(blocks, coeff);
            }
        }
        Ok(out)
    }

    /// Column-data array read off a lattice tableau: walk the cells in
    /// associated-word order, replace each entry by its running occurrence
    /// count, and tally the replaced entries row by row.
    pub fn array_of_tableau(&self, tab: &Tableau) -> Result<TFamily> {
        let shape = tab.shape();
        if shape.outer() != &self.lambda {
            return Err(Error::InvalidInput(format!(
                "tableau has outer shape {}, expected {}",
                shape.outer(),
                self.lambda
            )));
        }
        if !tab.is_standard() {
            return Err(Error::InvalidInput("tableau is not standard".into()));
        }
        let mu_conj = self.mu.conjugate();
        let mut want: Vec<usize> = mu_conj.parts().iter().map(|&p| p as usize).collect();
        let mut got = tab.content();
        while want.last() == Some(&0) {
            want.pop();
        }
        while got.last() == Some(&0) {
            got.pop();
        }
        if got != want {
            return Err(Error::InvalidInput(format!(
                "tableau content {got:?} differs from conjugate content {want:?}"
            )));
        }
        // cells in associated-word order: columns left to right, each
        // bottom to top
        let mut cells = Vec::new();
        for j in 1..=shape.num_cols() {
            for i in (1..=shape.num_rows()).rev() {
                if shape.inner().part(i) < j as u32 && j as u32 <= shape.outer().part(i) {
                    cells.push((i, j));
                }
            }
        }
        let word: Vec<Letter> = cells.iter().map(|&(i, j)| tab.entry(i, j).unwrap()).collect();
        if !crate::shapes::is_lattice(&word) {
            return Err(Error::InvalidInput(
                "tableau's associated word is not a lattice word".into(),
            ));
        }
        let counts = transpose_word(&word);
        let r = self.mu.len();
        let s = self.lambda.len();
        let mut t = vec![vec![0u32; s]; r];
        for (k, &(i, _)) in cells.iter().enumerate() {
            t[counts[k] as usize - 1][i - 1] += 1;
        }
        TFamily::new(t, &self.mu, s)
    }

    /// The invariant element attached to a lattice tableau, together with
    /// its column data.
    pub fn invariant_of_tableau(&self, tab: &Tableau) -> Result<(TFamily, ModuleElement)> {
        let t = self.array_of_tableau(tab)?;
        if !t.matches_layer(&self.lambda, tab.shape().inner()) {
            return Err(Error::VerificationFailed(format!(
                "column sums of the derived array miss the layer of {}",
                tab.shape().inner()
            )));
        }
        let b = self.invariant_of_array(&t)?;
        Ok((t, b))
    }

    /// All layer generators for one inner shape: one invariant element per
    /// lattice tableau, in lexicographic order of the tableaux words.
    pub fn layer_generators(&self, nu: &Partition) -> Result<Vec<LayerGenerator>> {
        let tabs = lr_tableaux(&self.lambda, &self.mu, nu)?;
        tabs.into_iter()
            .map(|tab| {
                let (family, element) = self.invariant_of_tableau(&tab)?;
                Ok(LayerGenerator { tableau: tab, family, element })
            })
            .collect()
    }

    // -----------------------------------------------------------------------
    // layer maps into the sum module

    /// Wedges a main-alphabet element of the inner shape's wedge series
    /// against an auxiliary element of the complementary degrees, row by
    /// row with the main letters first, then applies the straight defining
    /// map. Inputs with fewer factors than the outer shape are padded with
    /// empty rows.
    pub fn layer_map(
        &self,
        nu: &Partition,
        x: &ModuleElement,
        b: &ModuleElement,
    ) -> Result<ModuleElement> {
        let s = self.lambda.len();
        let m = self.m_letters as Letter;
        let mut merged = ModuleElement::zero();
        for (xl, xc) in &x.terms {
            if xl.len() > s {
                return Err(Error::InvalidInput(format!(
                    "main factor count {} exceeds {} rows",
                    xl.len(),
                    s
                )));
            }
            for i in 0..s {
                let deg = xl.get(i).map_or(0, |w| w.len());
                if deg != nu.part(i + 1) as usize {
                    return Err(Error::InvalidInput(format!(
                        "main factor {} has degree {deg}, expected {}",
                        i + 1,
                        nu.part(i + 1)
                    )));
                }
            }
            for (bl, bc) in &b.terms {
                if bl.len() > s {
                    return Err(Error::InvalidInput(format!(
                        "auxiliary factor count {} exceeds {} rows",
                        bl.len(),
                        s
                    )));
                }
                for i in 0..s {
                    let deg = bl.get(i).map_or(0, |w| w.len());
                    let want = (self.lambda.part(i + 1) - nu.part(i + 1)) as usize;
                    if deg != want {
                        return Err(Error::InvalidInput(format!(
                            "auxiliary factor {} has degree {deg}, expected {want}",
                            i + 1
                        )));
                    }
                }
                let mut blocks = TensorMonom::with_capacity(s);
                let mut coeff = xc * bc;
                let mut dead = false;
                for i in 0..s {
                    let mut word: Vec<Letter> =
                        xl.get(i).map_or(Vec::new(), |w| w.iter().map(|&a| a + m).collect());
                    if let Some(bw) = bl.get(i) {
                        word.extend_from_slice(bw);
                    }
                    match wedge_normalize_word(&self.params_sum, &word) {
                        Some((w, k)) => {
                            coeff = &coeff * &k;
                            blocks.push(w);
                        }
                        None => {
                            dead = true;
                            break;
                        }
                    }
                }
                if !dead {
                    merged.add_term(blocks, coeff);
                }
            }
        }
        Ok(self.sum_map.apply(&merged))
    }

    /// The full spanning family of the embedded skew module: for every
    /// inner shape with a nonzero layer count, every layer generator paired
    /// with every standard tableau of the inner shape.
    pub fn spanning_family(&self) -> Result<Vec<FamilyEntry>> {
        let target = self.lambda.size() - self.mu.size();
        let mut inners: Vec<Partition> =
            subpartitions(&self.lambda).into_iter().filter(|nu| nu.size() == target).collect();
        inners.sort_by(|a, b| b.lex_cmp(a));
        let mut out = Vec::new();
        for nu in inners {
            let gens = self.layer_generators(&nu)?;
            if gens.is_empty() {
                continue;
            }
            let straight = SkewShape::straight(nu.clone());
            let tabs = enumerate_standard(&straight, &natural_order(self.n_letters));
            for gen in &gens {
                for st in &tabs {
                    let x = ModuleElement::basis(st.rows().to_vec());
                    let vector = self.layer_map(&nu, &x, &gen.element)?;
                    out.push(FamilyEntry {
                        nu: nu.clone(),
                        source: gen.tableau.clone(),
                        x: st.clone(),
                        vector: vector.terms,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Checks that the spanning family is a basis: its cardinality must
    /// equal the generic rank of the skew module and its vectors must be
    /// linearly independent.
    pub fn verify_family(&self, entries: &[FamilyEntry]) -> Result<()> {
        let rank = self.skew_map.rank(&CoefficientSpec::Generic)?;
        if entries.len() != rank {
            return Err(Error::BasisFailed(format!(
                "family has {} elements, module rank is {rank}",
                entries.len()
            )));
        }
        let vectors: Vec<BTreeMap<TensorMonom, LaurentPoly>> =
            entries.iter().map(|e| e.vector.clone()).collect();
        let got = rank_of_vectors(&vectors, &CoefficientSpec::Generic)?;
        if got != entries.len() {
            return Err(Error::BasisFailed(format!(
                "family of {} elements only spans rank {got}",
                entries.len()
            )));
        }
        Ok(())
    }

    /// Builds every filtration layer and compares its quotient rank with
    /// the layer count times the straight module's rank, all at the given
    /// specialization.
    pub fn filtration_verify(&self, spec: &CoefficientSpec) -> Result<FiltrationReport> {
        let entries = self.spanning_family()?;
        let target = self.lambda.size() - self.mu.size();
        let mut inners: Vec<(Partition, usize)> = subpartitions(&self.lambda)
            .into_iter()
            .filter(|nu| nu.size() == target)
            .map(|nu| {
                let gamma = lr_tableaux(&self.lambda, &self.mu, &nu).map(|v| v.len())?;
                Ok((nu, gamma))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, g)| *g > 0)
            .collect();
        inners.sort_by(|a, b| b.0.lex_cmp(&a.0));

        let mut layers = Vec::new();
        let mut all_ok = true;
        for (nu, gamma) in &inners {
            let at_least: Vec<BTreeMap<TensorMonom, LaurentPoly>> = entries
                .iter()
                .filter(|e| e.nu.lex_cmp(nu) != Ordering::Less)
                .map(|e| e.vector.clone())
                .collect();
            let above: Vec<BTreeMap<TensorMonom, LaurentPoly>> = entries
                .iter()
                .filter(|e| e.nu.lex_cmp(nu) == Ordering::Greater)
                .map(|e| e.vector.clone())
                .collect();
            let rank_m = rank_of_vectors(&at_least, spec)?;
            let rank_mdot = rank_of_vectors(&above, spec)?;
            let straight = build_schur_map(&SkewShape::straight(nu.clone()), &self.params_v)?;
            let rank_l = straight.rank(spec)?;
            let quotient = rank_m - rank_mdot;
            let ok = quotient == gamma * rank_l;
            all_ok &= ok;
            layers.push(LayerReport {
                nu: nu.to_string(),
                gamma: *gamma,
                rank_l_nu: rank_l,
                quotient_rank: quotient,
                ok,
            });
        }
        let vectors: Vec<BTreeMap<TensorMonom, LaurentPoly>> =
            entries.iter().map(|e| e.vector.clone()).collect();
        let rank = rank_of_vectors(&vectors, spec)?;
        Ok(FiltrationReport {
            lambda: self.lambda.to_string(),
            mu: self.mu.to_string(),
            n: self.n_letters,
            m: self.m_letters,
            spec: spec.to_string(),
            layers,
            f_size: entries.len(),
            rank,
            status: if all_ok { "ok".into() } else { "FILTRATION_FAILED".into() },
        })
    }
}

/// Splits the single wedge factor at `pos` into blocks of the given sizes,
/// leaving the other factors untouched.
fn split_factor(
    p: &ParamMatrix,
    x: &ModuleElement,
    pos: usize,
    alpha: &[usize],
) -> Result<ModuleElement> {
    let mut out = ModuleElement::zero();
    for (label, c) in &x.terms {
        if pos >= label.len() {
            return Err(Error::InvalidInput(format!(
                "no factor at position {pos} in a {}-factor element",
                label.len()
            )));
        }
        let piece = ModuleElement::basis(vec![label[pos].clone()]);
        let split = diagonal_alpha(p, &piece, alpha)?;
        for (sl, sc) in &split.terms {
            let mut new_label = Vec::with_capacity(label.len() + alpha.len() - 1);
            new_label.extend_from_slice(&label[..pos]);
            new_label.extend(sl.iter().cloned());
            new_label.extend_from_slice(&label[pos + 1..]);
            out.add_term(new_label, c * sc);
        }
    }
    Ok(out)
}

/// One generator of a filtration layer: the lattice tableau it came from,
/// the derived column data, and the invariant element itself.
#[derive(Clone, Debug)]
pub struct LayerGenerator {
    pub tableau: Tableau,
    pub family: TFamily,
    pub element: ModuleElement,
}

/// One member of the spanning family: the inner shape, the lattice tableau
/// behind the invariant element, the standard tableau fed through the layer
/// map, and the resulting vector in the sum module's codomain.
#[derive(Clone, Debug)]
pub struct FamilyEntry {
    pub nu: Partition,
    pub source: Tableau,
    pub x: Tableau,
    pub vector: BTreeMap<TensorMonom, LaurentPoly>,
}

/// Leading-term shape of an invariant element: the coefficient of the
/// source tableau's own row tuple is a single signed power of Q, and every
/// other monomial in the support is lexicographically smaller.
pub fn leading_term_check(tab: &Tableau, b: &ModuleElement) -> bool {
    let target: TensorMonom = tab.rows().to_vec();
    let target_word: Vec<Letter> = target.concat();
    let mut saw = false;
    for (label, c) in &b.terms {
        if label == &target {
            if c.unit_monomial().is_none() {
                return false;
            }
            saw = true;
        } else {
            let word: Vec<Letter> = label.concat();
            if word >= target_word {
                return false;
            }
        }
    }
    saw
}

/// Letter counts of every monomial of an element, or None when two
/// monomials disagree.
pub fn uniform_content(x: &ModuleElement, alphabet: usize) -> Option<Vec<usize>> {
    let mut seen: Option<Vec<usize>> = None;
    for label in x.terms.keys() {
        let mut counts = vec![0usize; alphabet];
        for w in label {
            for &a in w {
                counts[a as usize - 1] += 1;
            }
        }
        match &seen {
            None => seen = Some(counts),
            Some(prev) if *prev != counts => return None,
            _ => {}
        }
    }
    seen
}

#[derive(Serialize, Clone, Debug)]
pub struct LayerReport {
    pub nu: String,
    pub gamma: usize,
    #[serde(rename = "rank_L_nu")]
    pub rank_l_nu: usize,
    pub quotient_rank: usize,
    pub ok: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct FiltrationReport {
    pub lambda: String,
    pub mu: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub spec: String,
    pub layers: Vec<LayerReport>,
    #[serde(rename = "F_size")]
    pub f_size: usize,
    pub rank: usize,
    pub status: String,
}

impl FiltrationReport {
    pub fn ok(&self) -> bool {
        self.status == "ok"
    }

    pub fn ensure_ok(&self) -> Result<()> {
        if self.ok() {
            Ok(())
        } else {
            Err(Error::FiltrationFailed(format!(
                "layer mismatch for {}/{} over {} letters at {}",
                self.lambda, self.mu, self.n, self.spec
            )))
        }
    }
}

// ---------------------------------------------------------------------------
// the direct-sum filtration

/// A skew module over two glued alphabets, filtered by how many letters of
/// each row come from the left alphabet.
pub struct DirectSumModule {
    lambda: Partition,
    mu: Partition,
    left_letters: usize,
    right_letters: usize,
    pub params: DirectSumParams,
    pub map: SchurMap,
}

impl DirectSumModule {
    pub fn new(
        lambda: Partition,
        mu: Partition,
        left: &ParamMatrix,
        right: &ParamMatrix,
    ) -> Result<Self> {
        let shape = SkewShape::new(lambda.clone(), mu.clone())?;
        let params = direct_sum_params(left, right);
        let map = build_schur_map(&shape, &params.combined)?;
        Ok(DirectSumModule {
            lambda,
            mu,
            left_letters: left.dim(),
            right_letters: right.dim(),
            params,
            map,
        })
    }

    /// Domain labels whose row i takes its first sigma_i - mu_i letters
    /// from the left alphabet and the rest from the right one.
    fn split_labels(&self, sigma: &Partition) -> Vec<TensorMonom> {
        let rows = self.lambda.len();
        let mut per_row: Vec<Vec<Vec<Letter>>> = Vec::with_capacity(rows);
        for i in 1..=rows {
            let left_deg = (sigma.part(i) - self.mu.part(i)) as usize;
            let right_deg = (self.lambda.part(i) - sigma.part(i)) as usize;
            let lefts = factor_basis(FactorKind::Wedge, left_deg, self.left_letters);
            let rights = factor_basis(FactorKind::Wedge, right_deg, self.right_letters);
            let mut words = Vec::new();
            for lw in &lefts {
                for rw in &rights {
                    let mut w = lw.clone();
                    w.extend(rw.iter().map(|&a| a + self.left_letters as Letter));
                    words.push(w);
                }
            }
            per_row.push(words);
        }
        let mut labels = vec![TensorMonom::new()];
        for words in per_row {
            let mut next = Vec::with_capacity(labels.len() * words.len());
            for l in &labels {
                for w in &words {
                    let mut nl = l.clone();
                    nl.push(w.clone());
                    next.push(nl);
                }
            }
            labels = next;
        }
        labels
    }

    /// Image vectors of the split-degree submodules for all middle shapes
    /// at least (or strictly above) the given one.
    pub fn graded_piece_vectors(
        &self,
        gamma: &Partition,
        strict: bool,
    ) -> Result<Vec<BTreeMap<TensorMonom, LaurentPoly>>> {
        if !gamma.contains(&self.mu) || !self.lambda.contains(gamma) {
            return Err(Error::InvalidInput(format!(
                "{} does not sit between {} and {}",
                gamma, self.mu, self.lambda
            )));
        }
        let mut vectors = Vec::new();
        for sigma in crate::shapes::partitions_between(&self.mu, &self.lambda) {
            let cmp = sigma.lex_cmp(gamma);
            let keep = if strict { cmp == Ordering::Greater } else { cmp != Ordering::Less };
            if !keep {
                continue;
            }
            for label in self.split_labels(&sigma) {
                vectors.push(self.map.matrix.column(&label));
            }
        }
        Ok(vectors)
    }

    /// Verifies the rank identity for one middle shape: the graded quotient
    /// of the filtration matches the product of the two one-alphabet
    /// module ranks.
    pub fn verify_layer(
        &self,
        gamma: &Partition,
        spec: &CoefficientSpec,
    ) -> Result<DsumLayerReport> {
        let at_least = self.graded_piece_vectors(gamma, false)?;
        let above = self.graded_piece_vectors(gamma, true)?;
        let rank_m = rank_of_vectors(&at_least, spec)?;
        let rank_mdot = rank_of_vectors(&above, spec)?;
        let left_shape = SkewShape::new(gamma.clone(), self.mu.clone())?;
        let right_shape = SkewShape::new(self.lambda.clone(), gamma.clone())?;
        let rank_left =
            build_schur_map(&left_shape, &self.params.left)?.rank(spec)?;
        let rank_right =
            build_schur_map(&right_shape, &self.params.right)?.rank(spec)?;
        let quotient = rank_m - rank_mdot;
        Ok(DsumLayerReport {
            gamma: gamma.to_string(),
            quotient_rank: quotient,
            rank_left,
            rank_right,
            ok: quotient == rank_left * rank_right,
        })
    }

    /// Runs the layer check for every middle shape between the inner and
    /// outer partitions.
    pub fn verify_all_layers(&self, spec: &CoefficientSpec) -> Result<DsumReport> {
        let mut gammas = crate::shapes::partitions_between(&self.mu, &self.lambda);
        gammas.sort_by(|a, b| b.lex_cmp(a));
        let mut layers = Vec::new();
        let mut all_ok = true;
        for gamma in &gammas {
            let layer = self.verify_layer(gamma, spec)?;
            all_ok &= layer.ok;
            layers.push(layer);
        }
        Ok(DsumReport {
            lambda: self.lambda.to_string(),
            mu: self.mu.to_string(),
            left_letters: self.left_letters,
            right_letters: self.right_letters,
            spec: spec.to_string(),
            layers,
            status: if all_ok { "ok".into() } else { "FILTRATION_FAILED".into() },
        })
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct DsumLayerReport {
    pub gamma: String,
    pub quotient_rank: usize,
    pub rank_left: usize,
    pub rank_right: usize,
    pub ok: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct DsumReport {
    pub lambda: String,
    pub mu: String,
    #[serde(rename = "n")]
    pub left_letters: usize,
    #[serde(rename = "m")]
    pub right_letters: usize,
    pub spec: String,
    pub layers: Vec<DsumLayerReport>,
    pub status: String,
}

impl DsumReport {
    pub fn ok(&self) -> bool {
        self.status == "ok"
    }

    pub fn ensure_ok(&self) -> Result<()> {
        if self.ok() {
            Ok(())
        } else {
            Err(Error::FiltrationFailed(format!(
                "direct-sum layer mismatch for {}/{} at {}",
                self.lambda, self.mu, self.spec
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::solve_in_span;
    use crate::braiding::{params_from_alternating, verify_braid, AlternatingIntMatrix};
    use crate::shapes::enumerate_standard_with_content;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn random_params(letters: usize, seed: u64) -> ParamMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = AlternatingIntMatrix::random(letters - 1, 2, &mut rng);
        params_from_alternating(&u)
    }

    fn exp_params(e: i64) -> ParamMatrix {
        ParamMatrix::from_exponents(vec![vec![0, e], vec![-e, 0]]).unwrap()
    }

    #[test]
    fn direct_sum_of_ones_is_ones() {
        let d = direct_sum_params(&ParamMatrix::ones(2), &ParamMatrix::ones(2));
        assert!(d.combined.is_ones());
        assert_eq!(d.combined.dim(), 4);
    }

    #[test]
    fn direct_sum_keeps_blocks_and_clears_cross_entries() {
        let a = exp_params(2);
        let b = exp_params(-4);
        let d = direct_sum_params(&a, &b);
        assert!(verify_braid(&d.combined));
        for i in 1..=2 {
            for j in 1..=2 {
                assert_eq!(d.combined.exponent(i, j), a.exponent(i, j));
                assert_eq!(d.combined.exponent(i + 2, j + 2), b.exponent(i, j));
                assert_eq!(d.combined.exponent(i, j + 2), 0);
            }
        }
    }

    #[test]
    fn embedding_preserves_rank_and_kernel() {
        for (lambda, mu, n) in [
            (vec![1u32, 1], vec![1u32], 2usize),
            (vec![2, 2], vec![1], 2),
            (vec![2, 1], vec![1], 3),
        ] {
            let lam = p(&lambda);
            let mu = p(&mu);
            let aux = ParamMatrix::ones(mu.first() as usize);
            let ctx = SkewEmbedding::new(lam, mu, n, ParamMatrix::ones(n), aux).unwrap();
            let embed = ctx.embed_matrix();
            let spec = CoefficientSpec::Generic;
            let skew_rank = ctx.skew_map.rank(&spec).unwrap();
            assert_eq!(crate::arith::exact_rank(&embed, &spec).unwrap(), skew_rank);
            // equal kernels: stacking the two maps over the shared domain
            // must not increase the rank
            let tag = |t: Letter, row: &TensorMonom| {
                let mut v = vec![vec![t]];
                v.extend(row.iter().cloned());
                v
            };
            let mut cod: Vec<TensorMonom> =
                ctx.sum_map.codomain.basis().iter().map(|r| tag(0, r)).collect();
            cod.extend(ctx.skew_map.codomain.basis().iter().map(|r| tag(1, r)));
            let mut stacked =
                crate::arith::SparseLinearMap::new(ctx.skew_map.domain.basis(), cod);
            for label in ctx.skew_map.domain.basis() {
                let mut col: BTreeMap<TensorMonom, LaurentPoly> = BTreeMap::new();
                for (row, c) in embed.column(&label) {
                    col.insert(tag(0, &row), c);
                }
                for (row, c) in ctx.skew_map.matrix.column(&label) {
                    col.insert(tag(1, &row), c);
                }
                stacked.set_column(&label, &col);
            }
            assert_eq!(crate::arith::exact_rank(&stacked, &spec).unwrap(), skew_rank);
        }
    }

    #[test]
    fn invariant_of_single_part_array_is_a_generator() {
        // one part, all of it kept in the first block
        let ctx = SkewEmbedding::new(
            p(&[2, 2]),
            p(&[2]),
            2,
            ParamMatrix::ones(2),
            ParamMatrix::ones(2),
        )
        .unwrap();
        let t = TFamily::new(vec![vec![2, 0]], &p(&[2]), 2).unwrap();
        let b = ctx.invariant_of_array(&t).unwrap();
        let expect = ModuleElement::basis(vec![vec![1, 2], vec![]]);
        assert_eq!(b.terms, expect.terms);
    }

    #[test]
    fn invariant_content_is_conjugate_of_inner() {
        let ctx = SkewEmbedding::new(
            p(&[2, 1]),
            p(&[1, 1]),
            2,
            exp_params(2),
            ParamMatrix::ones(1),
        )
        .unwrap();
        let t = TFamily::new(vec![vec![1, 0], vec![0, 1]], &p(&[1, 1]), 2).unwrap();
        let b = ctx.invariant_of_array(&t).unwrap();
        assert!(!b.is_zero());
        // conjugate of (1,1) is (2): the single auxiliary letter twice
        assert_eq!(uniform_content(&b, 1), Some(vec![2]));
    }

    #[test]
    fn tableau_arrays_hit_their_layers() {
        let ctx = SkewEmbedding::new(
            p(&[2, 2]),
            p(&[1]),
            2,
            ParamMatrix::ones(2),
            ParamMatrix::ones(1),
        )
        .unwrap();
        for nu in [p(&[2, 1])] {
            for tab in lr_tableaux(&p(&[2, 2]), &p(&[1]), &nu).unwrap() {
                let (t, b) = ctx.invariant_of_tableau(&tab).unwrap();
                assert!(t.matches_layer(&p(&[2, 2]), &nu));
                assert!(leading_term_check(&tab, &b), "leading term fails for {tab:?}");
            }
        }
    }

    #[test]
    fn leading_term_rejects_corrupted_elements() {
        let ctx = SkewEmbedding::new(
            p(&[2, 2]),
            p(&[1]),
            2,
            ParamMatrix::ones(2),
            ParamMatrix::ones(1),
        )
        .unwrap();
        let nu = p(&[2, 1]);
        let tab = &lr_tableaux(&p(&[2, 2]), &p(&[1]), &nu).unwrap()[0];
        let (_, b) = ctx.invariant_of_tableau(tab).unwrap();
        let mut corrupted = ModuleElement::zero();
        let target: TensorMonom = tab.rows().to_vec();
        for (l, c) in &b.terms {
            if l != &target {
                corrupted.add_term(l.clone(), c.clone());
            }
        }
        assert!(!leading_term_check(tab, &corrupted));
    }

    #[test]
    fn layer_map_lands_in_the_embedded_module() {
        let ctx = SkewEmbedding::new(
            p(&[2, 1]),
            p(&[1]),
            2,
            ParamMatrix::ones(2),
            ParamMatrix::ones(1),
        )
        .unwrap();
        let embed = ctx.embed_matrix();
        let span: Vec<BTreeMap<TensorMonom, LaurentPoly>> = ctx
            .skew_map
            .domain
            .basis()
            .iter()
            .map(|l| embed.column(l))
            .collect();
        let entries = ctx.spanning_family().unwrap();
        assert!(!entries.is_empty());
        for e in &entries {
            let sol = solve_in_span(&span, &e.vector, &CoefficientSpec::Generic).unwrap();
            assert!(sol.is_some(), "family vector escapes the embedded module");
        }
        // family vectors keep the auxiliary content of the inner shape
        for e in &entries {
            let elt = ModuleElement { terms: e.vector.clone() };
            let content = uniform_content(&elt, ctx.aux_letters() + ctx.main_letters());
            assert!(content.is_some());
            let mu_conj = ctx.mu().conjugate();
            let aux: Vec<usize> =
                content.unwrap()[..ctx.aux_letters()].to_vec();
            for (i, &c) in aux.iter().enumerate() {
                assert_eq!(c, mu_conj.part(i + 1) as usize);
            }
        }
    }

    #[test]
    fn family_is_a_basis_for_small_shapes() {
        for (lambda, mu, n, params) in [
            (vec![2u32, 1], vec![1u32], 2usize, ParamMatrix::ones(2)),
            (vec![2, 1], vec![1], 3, random_params(3, 9)),
            (vec![2, 2], vec![1], 2, exp_params(2)),
        ] {
            let lam = p(&lambda);
            let mu = p(&mu);
            let aux = ParamMatrix::ones(mu.first() as usize);
            let ctx = SkewEmbedding::new(lam, mu, n, params, aux).unwrap();
            let entries = ctx.spanning_family().unwrap();
            ctx.verify_family(&entries).unwrap();
        }
    }

    #[test]
    fn filtration_layers_match_at_generic_and_cyclotomic() {
        let ctx = SkewEmbedding::new(
            p(&[2, 2]),
            p(&[1]),
            2,
            exp_params(2),
            ParamMatrix::ones(1),
        )
        .unwrap();
        for spec in [CoefficientSpec::Generic, CoefficientSpec::Cyclotomic(3)] {
            let report = ctx.filtration_verify(&spec).unwrap();
            assert!(report.ok(), "spec {spec}: {report:?}");
            assert_eq!(report.f_size, report.rank);
        }
    }

    #[test]
    fn single_layer_when_inner_shape_is_empty() {
        let ctx = SkewEmbedding::new(
            p(&[2, 1]),
            Partition::empty(),
            2,
            ParamMatrix::ones(2),
            ParamMatrix::ones(0),
        )
        .unwrap();
        let report = ctx.filtration_verify(&CoefficientSpec::Generic).unwrap();
        assert!(report.ok());
        assert_eq!(report.layers.len(), 1);
        assert_eq!(report.layers[0].nu, "2,1");
        assert_eq!(report.layers[0].quotient_rank, report.rank);
    }

    #[test]
    fn direct_sum_layers_match_rank_products() {
        let dsum = DirectSumModule::new(
            p(&[2, 1]),
            Partition::empty(),
            &ParamMatrix::ones(2),
            &exp_params(6),
        )
        .unwrap();
        let report = dsum.verify_all_layers(&CoefficientSpec::Generic).unwrap();
        assert!(report.ok(), "{report:?}");
        // top shape keeps only the all-left labels, bottom keeps everything
        let top = dsum.verify_layer(&p(&[2, 1]), &CoefficientSpec::Generic).unwrap();
        assert_eq!(top.rank_right, 1);
        let bottom = dsum.graded_piece_vectors(&Partition::empty(), false).unwrap();
        let full = rank_of_vectors(&bottom, &CoefficientSpec::Generic).unwrap();
        assert_eq!(full, dsum.map.rank(&CoefficientSpec::Generic).unwrap());
    }

    #[test]
    fn sum_alphabet_order_ranks_main_letters_first() {
        assert_eq!(sum_alphabet_order(2, 3), vec![3, 4, 5, 1, 2]);
        // the order is usable for standard enumeration over the sum alphabet
        let shape = SkewShape::straight(p(&[1, 1]));
        let tabs = enumerate_standard_with_content(
            &shape,
            &sum_alphabet_order(1, 1),
            &[1, 1],
        );
        assert_eq!(tabs.len(), 1);
        assert_eq!(tabs[0].rows(), &[vec![2], vec![1]]);
    }
}
