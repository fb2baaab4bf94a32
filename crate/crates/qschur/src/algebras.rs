//! Quantum exterior and symmetric powers: normal forms, diagonals, products,
//! and the fusion operators that braid tensor factors past each other.
//!
//! Basis conventions: a wedge power is spanned by strictly increasing words,
//! a symmetric power by weakly increasing words, a tensor power by all
//! words. An element carries labels that are tuples of such words, one per
//! factor.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::arith::LaurentPoly;
use crate::braiding::{all_words, apply_beta_sigma, is_permutation, ParamMatrix, WordSum};
use crate::shapes::Letter;
use crate::{Error, Result};

/// One factor's basis word.
pub type Monom = Vec<Letter>;
/// Basis label of a tensor product of factors.
pub type TensorMonom = Vec<Monom>;

/// Formal Z[Q,Q^-1]-combination of tensor-product basis labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleElement {
    pub terms: BTreeMap<TensorMonom, LaurentPoly>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(label: TensorMonom, coeff: LaurentPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(label, coeff);
        e
    }

    pub fn basis(label: TensorMonom) -> Self {
        Self::single(label, LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, label: TensorMonom, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(label).or_insert_with(LaurentPoly::zero);
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            let dead: Vec<TensorMonom> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (l, v) in &self.terms {
            out.add_term(l.clone(), v * c);
        }
        out
    }

    /// View a single-factor element as a sum of plain words.
    pub fn to_word_sum(&self) -> WordSum {
        let mut out = WordSum::new();
        for (l, c) in &self.terms {
            assert_eq!(l.len(), 1, "word sum view needs single-factor labels");
            out.insert(l[0].clone(), c.clone());
        }
        out
    }

    pub fn from_word_sum(ws: WordSum) -> Self {
        let mut e = Self::zero();
        for (w, c) in ws {
            e.add_term(vec![w], c);
        }
        e
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Tensor,
    Wedge,
    Sym,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    pub degree: usize,
}

impl Factor {
    pub fn wedge(degree: usize) -> Self {
        Factor { kind: FactorKind::Wedge, degree }
    }

    pub fn sym(degree: usize) -> Self {
        Factor { kind: FactorKind::Sym, degree }
    }

    pub fn tensor(degree: usize) -> Self {
        Factor { kind: FactorKind::Tensor, degree }
    }
}

/// Tensor product of wedge, symmetric, and tensor powers over one alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub alphabet: usize,
    pub factors: Vec<Factor>,
}

pub fn factor_basis(kind: FactorKind, degree: usize, alphabet: usize) -> Vec<Monom> {
    match kind {
        FactorKind::Tensor => all_words(alphabet, degree),
        FactorKind::Wedge => (1..=alphabet as Letter).combinations(degree).collect(),
        FactorKind::Sym => {
            (1..=alphabet as Letter).combinations_with_replacement(degree).collect()
        }
    }
}

impl FreeModule {
    pub fn new(alphabet: usize, factors: Vec<Factor>) -> Self {
        FreeModule { alphabet, factors }
    }

    pub fn wedge_series(alphabet: usize, degrees: &[usize]) -> Self {
        Self::new(alphabet, degrees.iter().map(|&d| Factor::wedge(d)).collect())
    }

    pub fn sym_series(alphabet: usize, degrees: &[usize]) -> Self {
        Self::new(alphabet, degrees.iter().map(|&d| Factor::sym(d)).collect())
    }

    pub fn basis(&self) -> Vec<TensorMonom> {
        let mut out: Vec<TensorMonom> = vec![Vec::new()];
        for f in &self.factors {
            let words = factor_basis(f.kind, f.degree, self.alphabet);
            out = out
                .into_iter()
                .cartesian_product(words)
                .map(|(mut t, w)| {
                    t.push(w);
                    t
                })
                .collect();
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.factors
            .iter()
            .map(|f| factor_basis(f.kind, f.degree, self.alphabet).len())
            .product()
    }

    pub fn contains(&self, label: &TensorMonom) -> bool {
        if label.len() != self.factors.len() {
            return false;
        }
        label.iter().zip(&self.factors).all(|(w, f)| {
            w.len() == f.degree
                && w.iter().all(|&a| a >= 1 && a as usize <= self.alphabet)
                && match f.kind {
                    FactorKind::Tensor => true,
                    FactorKind::Wedge => w.windows(2).all(|p| p[0] < p[1]),
                    FactorKind::Sym => w.windows(2).all(|p| p[0] <= p[1]),
                }
        })
    }
}

// ---------------------------------------------------------------------------
// normal forms

/// Sorts a wedge word into its increasing basis form. Swapping a descending
/// adjacent pair (x, y), x > y, costs a factor `-Q * p_yx`. `None` on a
/// repeated letter.
pub fn wedge_normalize_word(p: &ParamMatrix, word: &[Letter]) -> Option<(Monom, LaurentPoly)> {
    let mut sorted_check = word.to_vec();
    sorted_check.sort_unstable();
    if sorted_check.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let mut w = word.to_vec();
    let mut sign = false;
    let mut exp = 0i64;
    loop {
        let mut done = true;
        for t in 0..w.len().saturating_sub(1) {
            if w[t] > w[t + 1] {
                let (x, y) = (w[t], w[t + 1]);
                sign = !sign;
                exp += 1 + p.exponent(y, x);
                w.swap(t, t + 1);
                done = false;
            }
        }
        if done {
            break;
        }
    }
    Some((w, LaurentPoly::monomial(if sign { -1 } else { 1 }, exp)))
}

/// Sorts a symmetric word into its weakly increasing basis form. Swapping a
/// descending adjacent pair (x, y), x > y, costs a factor `Q^-1 * p_yx`.
pub fn sym_normalize_word(p: &ParamMatrix, word: &[Letter]) -> (Monom, LaurentPoly) {
    let mut w = word.to_vec();
    let mut exp = 0i64;
    loop {
        let mut done = true;
        for t in 0..w.len().saturating_sub(1) {
            if w[t] > w[t + 1] {
                let (x, y) = (w[t], w[t + 1]);
                exp += p.exponent(y, x) - 1;
                w.swap(t, t + 1);
                done = false;
            }
        }
        if done {
            break;
        }
    }
    (w, LaurentPoly::q_power(exp))
}

/// Normal form of a formal wedge of letters, as a single-factor element.
pub fn wedge_normalize(p: &ParamMatrix, seq: &[Letter]) -> ModuleElement {
    match wedge_normalize_word(p, seq) {
        Some((w, c)) => ModuleElement::single(vec![w], c),
        None => ModuleElement::zero(),
    }
}

/// Normal form of a formal product of letters in the symmetric power.
pub fn sym_normalize(p: &ParamMatrix, seq: &[Letter]) -> ModuleElement {
    let (w, c) = sym_normalize_word(p, seq);
    ModuleElement::single(vec![w], c)
}

/// Product of two single-factor wedge elements.
pub fn wedge_multiply(p: &ParamMatrix, x: &ModuleElement, y: &ModuleElement) -> ModuleElement {
    let mut out = ModuleElement::zero();
    for (lx, cx) in &x.terms {
        assert_eq!(lx.len(), 1, "wedge product needs single-factor inputs");
        for (ly, cy) in &y.terms {
            assert_eq!(ly.len(), 1, "wedge product needs single-factor inputs");
            let concat: Vec<Letter> =
                lx[0].iter().chain(ly[0].iter()).copied().collect();
            if let Some((w, c)) = wedge_normalize_word(p, &concat) {
                out.add_term(vec![w], &(cx * cy) * &c);
            }
        }
    }
    out
}

/// Projection of a tensor word onto the wedge power.
pub fn projection_to_wedge(p: &ParamMatrix, x: &ModuleElement) -> ModuleElement {
    let mut out = ModuleElement::zero();
    for (l, c) in &x.terms {
        assert_eq!(l.len(), 1, "projection needs single-factor labels");
        if let Some((w, k)) = wedge_normalize_word(p, &l[0]) {
            out.add_term(vec![w], c * &k);
        }
    }
    out
}

/// Projection of a tensor word onto the symmetric power.
pub fn projection_to_sym(p: &ParamMatrix, x: &ModuleElement) -> ModuleElement {
    let mut out = ModuleElement::zero();
    for (l, c) in &x.terms {
        assert_eq!(l.len(), 1, "projection needs single-factor labels");
        let (w, k) = sym_normalize_word(p, &l[0]);
        out.add_term(vec![w], c * &k);
    }
    out
}

// ---------------------------------------------------------------------------
// diagonals

/// Coefficient picked up by writing the increasing word underlying `word` in
/// this order: one factor `-Q * p_xy` per inversion (x before y, x > y).
fn inversion_coeff(p: &ParamMatrix, word: &[Letter]) -> LaurentPoly {
    let mut sign = false;
    let mut exp = 0i64;
    for r in 0..word.len() {
        for t in (r + 1)..word.len() {
            if word[r] > word[t] {
                sign = !sign;
                exp += 1 + p.exponent(word[r], word[t]);
            }
        }
    }
    LaurentPoly::monomial(if sign { -1 } else { 1 }, exp)
}

/// Full diagonal of one increasing wedge word into the tensor power: the sum
/// over all rearrangements, each weighted by its inversion coefficient.
pub fn full_diagonal_word(p: &ParamMatrix, word: &[Letter]) -> Vec<(Monom, LaurentPoly)> {
    debug_assert!(word.windows(2).all(|w| w[0] < w[1]));
    word.iter()
        .copied()
        .permutations(word.len())
        .map(|perm| {
            let c = inversion_coeff(p, &perm);
            (perm, c)
        })
        .collect()
}

/// Diagonal of a wedge power into the full tensor power, one term per
/// rearrangement of each word.
pub fn full_diagonal(p: &ParamMatrix, x: &ModuleElement) -> ModuleElement {
    let mut out = ModuleElement::zero();
    for (l, c) in &x.terms {
        assert_eq!(l.len(), 1, "diagonal needs single-factor labels");
        for (w, k) in full_diagonal_word(p, &l[0]) {
            out.add_term(vec![w], c * &k);
        }
    }
    out
}

/// All ways to distribute positions `0..total` into blocks with the given
/// sizes, as a block index per position.
fn block_assignments(sizes: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = sizes.iter().sum();
    let mut out = Vec::new();
    let mut assign = vec![usize::MAX; total];
    let mut remaining = sizes.to_vec();
    fn rec(
        pos: usize,
        total: usize,
        remaining: &mut Vec<usize>,
        assign: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == total {
            out.push(assign.clone());
            return;
        }
        for j in 0..remaining.len() {
            if remaining[j] == 0 {
                continue;
            }
            remaining[j] -= 1;
            assign[pos] = j;
            rec(pos + 1, total, remaining, assign, out);
            remaining[j] += 1;
        }
    }
    rec(0, total, &mut remaining, &mut assign, &mut out);
    out
}

/// Component of the diagonal refining a wedge power into a tensor product
/// of wedge powers with the given degrees. For one increasing word this is
/// the sum over ordered set partitions into blocks of those sizes, each
/// weighted by `-Q * p_xy` for every cross pair with x in an earlier block,
/// y in a later block, x > y.
pub fn diagonal_alpha(
    p: &ParamMatrix,
    x: &ModuleElement,
    alpha: &[usize],
) -> Result<ModuleElement> {
    let total: usize = alpha.iter().sum();
    let mut out = ModuleElement::zero();
    for (l, c) in &x.terms {
        if l.len() != 1 || l[0].len() != total {
            return Err(Error::InvalidInput(format!(
                "diagonal with blocks {alpha:?} needs single wedge words of degree {total}"
            )));
        }
        let w = &l[0];
        for assign in block_assignments(alpha) {
            let mut sign = false;
            let mut exp = 0i64;
            // w is increasing, so a cross pair with the larger letter in an
            // earlier block is exactly a pair of positions i2 < i1 assigned
            // to blocks assign[i1] < assign[i2]
            for i2 in 0..w.len() {
                for i1 in (i2 + 1)..w.len() {
                    if assign[i1] < assign[i2] {
                        sign = !sign;
                        exp += 1 + p.exponent(w[i1], w[i2]);
                    }
                }
            }
            let mut blocks: TensorMonom = vec![Vec::new(); alpha.len()];
            for (i, &j) in assign.iter().enumerate() {
                blocks[j].push(w[i]);
            }
            let coeff = LaurentPoly::monomial(if sign { -1 } else { 1 }, exp);
            out.add_term(blocks, c * &coeff);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// fusion

/// Lifts a permutation of factors to a permutation of tensor positions:
/// the whole block t moves, in order, to the slot `omega[t-1]`.
pub fn block_permutation(omega: &[usize], degrees: &[usize]) -> Vec<usize> {
    let m = omega.len();
    debug_assert_eq!(degrees.len(), m);
    let mut out_deg = vec![0usize; m];
    for t in 0..m {
        out_deg[omega[t] - 1] = degrees[t];
    }
    let mut off_in = vec![0usize; m];
    for t in 1..m {
        off_in[t] = off_in[t - 1] + degrees[t - 1];
    }
    let mut off_out = vec![0usize; m];
    for s in 1..m {
        off_out[s] = off_out[s - 1] + out_deg[s - 1];
    }
    let total: usize = degrees.iter().sum();
    let mut perm = vec![0usize; total];
    for t in 0..m {
        for r in 0..degrees[t] {
            perm[off_in[t] + r] = off_out[omega[t] - 1] + r + 1;
        }
    }
    perm
}

/// Fusion operator: permutes the wedge factors of an element by braiding
/// whole blocks past each other with the signed braid lift, then renormalizes
/// each output factor.
pub fn fusion_apply(p: &ParamMatrix, omega: &[usize], x: &ModuleElement) -> Result<ModuleElement> {
    if !is_permutation(omega) {
        return Err(Error::InvalidInput(format!("{omega:?} is not a permutation")));
    }
    let mut out = ModuleElement::zero();
    for (label, c) in &x.terms {
        if label.len() != omega.len() {
            return Err(Error::InvalidInput(format!(
                "element has {} factors, fusion permutes {}",
                label.len(),
                omega.len()
            )));
        }
        let degrees: Vec<usize> = label.iter().map(|w| w.len()).collect();
        let bperm = block_permutation(omega, &degrees);
        let mut out_deg = vec![0usize; omega.len()];
        for t in 0..omega.len() {
            out_deg[omega[t] - 1] = degrees[t];
        }
        let flat: Vec<Letter> = label.iter().flatten().copied().collect();
        let mut v = WordSum::new();
        v.insert(flat, c.clone());
        let moved = apply_beta_sigma(p, &v, &bperm, true);
        for (word, c2) in moved {
            let mut blocks: TensorMonom = Vec::with_capacity(out_deg.len());
            let mut coeff = c2;
            let mut offset = 0;
            let mut dead = false;
            for &d in &out_deg {
                match wedge_normalize_word(p, &word[offset..offset + d]) {
                    Some((w, k)) => {
                        coeff = &coeff * &k;
                        blocks.push(w);
                    }
                    None => {
                        dead = true;
                        break;
                    }
                }
                offset += d;
            }
            if !dead {
                out.add_term(blocks, coeff);
            }
        }
    }
    Ok(out)
}

/// The shuffle permutation interleaving s groups of size r: position
/// `(j-1)s + i` moves to `(i-1)r + j`.
pub fn omega_rs(r: usize, s: usize) -> Vec<usize> {
    let mut perm = vec![0usize; r * s];
    for j in 1..=r {
        for i in 1..=s {
            perm[(j - 1) * s + i - 1] = (i - 1) * r + j;
        }
    }
    perm
}

/// Scalar by which `projection . full_diagonal` acts on a wedge power; the
/// computation checks on the way that the action really is scalar.
pub fn wedge_split_scalar(p: &ParamMatrix, degree: usize, alphabet: usize) -> Result<LaurentPoly> {
    let module = FreeModule::wedge_series(alphabet, &[degree]);
    let mut scalar: Option<LaurentPoly> = None;
    for label in module.basis() {
        let x = ModuleElement::basis(label.clone());
        let back = projection_to_wedge(p, &full_diagonal(p, &x));
        if back.terms.len() != 1 || !back.terms.contains_key(&label) {
            return Err(Error::VerificationFailed(format!(
                "diagonal followed by projection is not scalar on {label:?}"
            )));
        }
        let c = back.terms[&label].clone();
        match &scalar {
            None => scalar = Some(c),
            Some(s) if *s == c => {}
            Some(s) => {
                return Err(Error::VerificationFailed(format!(
                    "split scalar differs between basis vectors: {s} vs {c}"
                )));
            }
        }
    }
    scalar.ok_or_else(|| Error::VerificationFailed("empty wedge power".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::{apply_beta_at, params_from_alternating, AlternatingIntMatrix};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_params(n: usize, seed: u64) -> ParamMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        params_from_alternating(&AlternatingIntMatrix::random(n - 1, 2, &mut rng))
    }

    fn as_word_sum(x: &ModuleElement) -> WordSum {
        let mut out = WordSum::new();
        for (l, c) in &x.terms {
            let flat: Vec<Letter> = l.iter().flatten().copied().collect();
            crate::braiding::add_to_word_sum(&mut out, flat, c.clone());
        }
        out
    }

    #[test]
    fn wedge_projection_intertwines_beta() {
        // proj . beta = -Q^2 proj precisely when the wedge relations kill
        // the unit eigenspace of beta
        for p in [ParamMatrix::ones(3), random_params(3, 5)] {
            let scale = LaurentPoly::monomial(-1, 2);
            for w in all_words(3, 2) {
                let mut v = WordSum::new();
                v.insert(w.clone(), LaurentPoly::one());
                let bv = apply_beta_at(&p, &v, 1, false);
                let lhs = projection_to_wedge(&p, &ModuleElement::from_word_sum(bv));
                let rhs = projection_to_wedge(&p, &ModuleElement::from_word_sum(v)).scale(&scale);
                assert_eq!(lhs, rhs, "word {w:?}");
            }
        }
    }

    #[test]
    fn sym_projection_absorbs_beta() {
        for p in [ParamMatrix::ones(3), random_params(3, 6)] {
            for w in all_words(3, 2) {
                let mut v = WordSum::new();
                v.insert(w.clone(), LaurentPoly::one());
                let bv = apply_beta_at(&p, &v, 1, false);
                let lhs = projection_to_sym(&p, &ModuleElement::from_word_sum(bv));
                let rhs = projection_to_sym(&p, &ModuleElement::from_word_sum(v));
                assert_eq!(lhs, rhs, "word {w:?}");
            }
        }
    }

    #[test]
    fn wedge_words_square_to_zero() {
        let p = ParamMatrix::ones(3);
        assert!(wedge_normalize(&p, &[2, 1, 2]).is_zero());
        let e = wedge_normalize(&p, &[2, 1]);
        assert_eq!(e.terms[&vec![vec![1, 2]]], LaurentPoly::monomial(-1, 1));
    }

    #[test]
    fn classical_limits_of_normal_forms() {
        let one = num_rational::BigRational::from_integer(1.into());
        let p = random_params(4, 9);
        let (w, c) = wedge_normalize_word(&p, &[3, 1, 2]).unwrap();
        assert_eq!(w, vec![1, 2, 3]);
        // two transpositions: sign +1 at Q = 1
        assert_eq!(c.evaluate(&one), one);
        let (w, c) = sym_normalize_word(&p, &[3, 1, 2]);
        assert_eq!(w, vec![1, 2, 3]);
        assert_eq!(c.evaluate(&one), one);
    }

    #[test]
    fn full_diagonal_matches_unit_blocks() {
        let p = random_params(3, 12);
        let x = ModuleElement::basis(vec![vec![1, 2, 3]]);
        let full = full_diagonal(&p, &x);
        let fine = diagonal_alpha(&p, &x, &[1, 1, 1]).unwrap();
        assert_eq!(as_word_sum(&full), as_word_sum(&fine));
        assert_eq!(full.terms.len(), 6);
    }

    #[test]
    fn diagonal_with_one_block_is_identity() {
        let p = random_params(4, 13);
        let x = ModuleElement::basis(vec![vec![1, 3, 4]]);
        assert_eq!(diagonal_alpha(&p, &x, &[3]).unwrap(), x);
    }

    #[test]
    fn diagonal_is_coassociative() {
        let p = random_params(4, 14);
        let x = ModuleElement::basis(vec![vec![1, 2, 3, 4]]);
        // refine the first block of (2,2) into (1,1) versus (1,1,2) directly
        let coarse = diagonal_alpha(&p, &x, &[2, 2]).unwrap();
        let mut refined = ModuleElement::zero();
        for (l, c) in &coarse.terms {
            let head = ModuleElement::basis(vec![l[0].clone()]);
            for (hl, hc) in diagonal_alpha(&p, &head, &[1, 1]).unwrap().terms {
                refined.add_term(vec![hl[0].clone(), hl[1].clone(), l[1].clone()], c * &hc);
            }
        }
        let direct = diagonal_alpha(&p, &x, &[1, 1, 2]).unwrap();
        assert_eq!(refined, direct);
    }

    #[test]
    fn split_scalar_on_degree_two() {
        let expected = LaurentPoly::from_terms([(1, 0), (1, 2)]);
        for p in [ParamMatrix::ones(3), random_params(3, 15)] {
            assert_eq!(wedge_split_scalar(&p, 2, 3).unwrap(), expected);
        }
    }

    #[test]
    fn split_scalar_is_the_q_squared_factorial() {
        // brackets [j] at Q^2, so the scalar evaluates to k! at Q = 1 and
        // never depends on the parameter matrix
        for p in [ParamMatrix::ones(4), random_params(4, 18)] {
            let mut expected = LaurentPoly::one();
            for k in 1..=4usize {
                let bracket = LaurentPoly::from_terms((0..k).map(|j| (1, 2 * j as i64)));
                expected = &expected * &bracket;
                assert_eq!(wedge_split_scalar(&p, k, 4).unwrap(), expected, "degree {k}");
            }
        }
    }

    #[test]
    fn omega_fixtures() {
        assert_eq!(omega_rs(2, 2), vec![1, 3, 2, 4]);
        assert_eq!(omega_rs(2, 3), vec![1, 3, 5, 2, 4, 6]);
        assert_eq!(omega_rs(1, 4), vec![1, 2, 3, 4]);
    }

    #[test]
    fn fusion_by_identity_is_identity() {
        let p = random_params(4, 16);
        let x = ModuleElement::basis(vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(fusion_apply(&p, &[1, 2], &x).unwrap(), x);
    }

    #[test]
    fn factor_bases_have_binomial_sizes() {
        for n in 1..=4usize {
            for k in 0..=4usize {
                let wedge = factor_basis(FactorKind::Wedge, k, n).len();
                let sym = factor_basis(FactorKind::Sym, k, n).len();
                assert_eq!(wedge, num_integer::binomial(n, k), "wedge n={n} k={k}");
                assert_eq!(sym, num_integer::binomial(n + k - 1, k), "sym n={n} k={k}");
            }
        }
    }

    #[test]
    fn full_diagonal_has_full_rank() {
        use crate::arith::{exact_rank, CoefficientSpec, SparseLinearMap};
        for n in 1..=4usize {
            for p in [ParamMatrix::ones(n), random_params(n.max(2), 21)] {
                for k in 1..=n.min(4) {
                    let domain = factor_basis(FactorKind::Wedge, k, n);
                    let codomain = all_words(n, k);
                    let columns = domain
                        .iter()
                        .map(|w| full_diagonal_word(&p, w).into_iter().collect())
                        .collect();
                    let m = SparseLinearMap::from_columns(domain.clone(), codomain, columns);
                    let rank = exact_rank(&m, &CoefficientSpec::Generic).unwrap();
                    assert_eq!(rank, domain.len(), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn wedge_multiply_is_associative() {
        for n in 2..=3usize {
            for p in [ParamMatrix::ones(n), random_params(n, 22)] {
                for a in 1..=2usize {
                    for b in 1..=2usize {
                        for c in 1..=(4 - a - b).min(2) {
                            for wx in factor_basis(FactorKind::Wedge, a, n) {
                                for wy in factor_basis(FactorKind::Wedge, b, n) {
                                    for wz in factor_basis(FactorKind::Wedge, c, n) {
                                        let x = ModuleElement::basis(vec![wx.clone()]);
                                        let y = ModuleElement::basis(vec![wy.clone()]);
                                        let z = ModuleElement::basis(vec![wz.clone()]);
                                        let left =
                                            wedge_multiply(&p, &wedge_multiply(&p, &x, &y), &z);
                                        let right =
                                            wedge_multiply(&p, &x, &wedge_multiply(&p, &y, &z));
                                        assert_eq!(left, right, "{wx:?} {wy:?} {wz:?}");
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fusion_swap_of_disjoint_singletons() {
        // swapping two singleton factors is -beta followed by no projection
        let p = random_params(3, 17);
        let x = ModuleElement::basis(vec![vec![1], vec![2]]);
        let out = fusion_apply(&p, &[2, 1], &x).unwrap();
        let expected = ModuleElement::single(
            vec![vec![2], vec![1]],
            -LaurentPoly::q_power(1 + p.exponent(2, 1)),
        );
        assert_eq!(out, expected);
    }
}
