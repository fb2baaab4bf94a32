//! The Yang-Baxter operator attached to a multiplicatively antisymmetric
//! parameter matrix, and its action on tensor words.
//!
//! Parameter matrices here always have single Q-powers as entries, so they
//! are stored as integer exponent matrices: `p_ij = Q^exp[i][j]` with
//! `exp[i][j] = -exp[j][i]` and zero diagonal.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Deserialize;

use crate::arith::{LaurentPoly, SparseLinearMap};
use crate::shapes::Letter;
use crate::{Error, Result};

/// Formal Z[Q,Q^-1]-combination of words over one alphabet.
pub type WordSum = BTreeMap<Vec<Letter>, LaurentPoly>;

pub fn add_to_word_sum(sum: &mut WordSum, word: Vec<Letter>, coeff: LaurentPoly) {
    if coeff.is_zero() {
        return;
    }
    let slot = sum.entry(word).or_insert_with(LaurentPoly::zero);
    *slot = &*slot + &coeff;
    if slot.is_zero() {
        let key = sum
            .iter()
            .find_map(|(k, v)| v.is_zero().then(|| k.clone()))
            .expect("zero entry present");
        sum.remove(&key);
    }
}

/// Multiplicatively antisymmetric matrix of Q-power parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMatrix {
    n: usize,
    exp: Vec<Vec<i64>>,
}

impl ParamMatrix {
    pub fn ones(n: usize) -> Self {
        ParamMatrix { n, exp: vec![vec![0; n]; n] }
    }

    pub fn from_exponents(exp: Vec<Vec<i64>>) -> Result<Self> {
        let n = exp.len();
        if exp.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("exponent matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if exp[i][j] != -exp[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "exponent matrix not antisymmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(ParamMatrix { n, exp })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_ones(&self) -> bool {
        self.exp.iter().all(|row| row.iter().all(|&e| e == 0))
    }

    /// Exponent of `p_ij`, letters 1-based.
    pub fn exponent(&self, i: Letter, j: Letter) -> i64 {
        self.exp[i as usize - 1][j as usize - 1]
    }

    pub fn entry(&self, i: Letter, j: Letter) -> LaurentPoly {
        LaurentPoly::q_power(self.exponent(i, j))
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exp
    }
}

/// Integer matrix with `u[a][b] = -u[b][a]` (hence zero diagonal), the free
/// datum behind a parameter matrix on one more letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingIntMatrix {
    u: Vec<Vec<i64>>,
}

impl AlternatingIntMatrix {
    pub fn new(u: Vec<Vec<i64>>) -> Result<Self> {
        let d = u.len();
        if u.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidInput("alternating matrix must be square".into()));
        }
        for a in 0..d {
            for b in 0..d {
                if u[a][b] != -u[b][a] {
                    return Err(Error::InvalidInput(format!(
                        "matrix not alternating at ({},{})",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(AlternatingIntMatrix { u })
    }

    pub fn zeros(dim: usize) -> Self {
        AlternatingIntMatrix { u: vec![vec![0; dim]; dim] }
    }

    pub fn random<R: Rng>(dim: usize, bound: i64, rng: &mut R) -> Self {
        let mut u = vec![vec![0i64; dim]; dim];
        for a in 0..dim {
            for b in (a + 1)..dim {
                let v = rng.gen_range(-bound..=bound);
                u[a][b] = v;
                u[b][a] = -v;
            }
        }
        AlternatingIntMatrix { u }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.u
    }

    /// Entry with 1-based indices; anything outside `1..=dim` reads as zero.
    fn at(&self, a: i64, b: i64) -> i64 {
        let d = self.dim() as i64;
        if a < 1 || a > d || b < 1 || b > d {
            0
        } else {
            self.u[a as usize - 1][b as usize - 1]
        }
    }
}

/// Parameter matrix on `dim(U) + 1` letters determined by an alternating
/// integer matrix through second differences of its entries.
pub fn params_from_alternating(u: &AlternatingIntMatrix) -> ParamMatrix {
    let n = u.dim() + 1;
    let mut exp = vec![vec![0i64; n]; n];
    for i in 1..=n as i64 {
        for j in 1..=n as i64 {
            exp[i as usize - 1][j as usize - 1] =
                2 * (u.at(j, i) - u.at(j - 1, i) - u.at(j, i - 1) + u.at(j - 1, i - 1));
        }
    }
    let p = ParamMatrix { n, exp };
    debug_assert!((1..=n as Letter).all(|i| p.exponent(i, i) == 0));
    p
}

/// On-disk form of an alternating matrix: the alphabet size and the
/// `(N-1) x (N-1)` integer entries.
#[derive(Deserialize)]
struct AlternatingFile {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "U")]
    u: Vec<Vec<i64>>,
}

pub fn params_from_json(text: &str) -> Result<ParamMatrix> {
    let file: AlternatingFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("bad parameter file: {e}")))?;
    if file.n == 0 {
        return Err(Error::InvalidInput("alphabet size must be >= 1".into()));
    }
    if file.u.len() != file.n - 1 {
        return Err(Error::InvalidInput(format!(
            "matrix must be {0} x {0} for alphabet size {1}",
            file.n - 1,
            file.n
        )));
    }
    Ok(params_from_alternating(&AlternatingIntMatrix::new(file.u)?))
}

/// All words of the given length over letters `1..=n`, lexicographic.
pub fn all_words(n: usize, k: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=n as Letter).map(move |a| {
                    let mut w2 = w.clone();
                    w2.push(a);
                    w2
                })
            })
            .collect();
    }
    out
}

/// Applies the Yang-Baxter operator to factors `pos, pos+1` (1-based) of
/// every word. With `negate` the operator is `-beta` instead.
pub fn apply_beta_at(p: &ParamMatrix, v: &WordSum, pos: usize, negate: bool) -> WordSum {
    let mut out = WordSum::new();
    for (w, c) in v {
        let a = w[pos - 1];
        let b = w[pos];
        let c = if negate { -c } else { c.clone() };
        if a == b {
            add_to_word_sum(&mut out, w.clone(), c);
            continue;
        }
        let mut swapped = w.clone();
        swapped.swap(pos - 1, pos);
        let swap_coeff = LaurentPoly::q_power(1 + p.exponent(b, a));
        add_to_word_sum(&mut out, swapped, &c * &swap_coeff);
        if a > b {
            let stay = LaurentPoly::from_terms([(1, 0), (-1, 2)]);
            add_to_word_sum(&mut out, w.clone(), &c * &stay);
        }
    }
    out
}

/// A reduced word for the permutation, as 1-based adjacent swap positions;
/// the rightmost entry acts first under composition.
pub fn reduced_word(sigma: &[usize]) -> Vec<usize> {
    let mut w = sigma.to_vec();
    let mut swaps = Vec::new();
    loop {
        let mut done = true;
        for t in 0..w.len().saturating_sub(1) {
            if w[t] > w[t + 1] {
                w.swap(t, t + 1);
                swaps.push(t + 1);
                done = false;
            }
        }
        if done {
            break;
        }
    }
    swaps.reverse();
    swaps
}

pub fn permutation_length(sigma: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..sigma.len() {
        for j in (i + 1)..sigma.len() {
            if sigma[i] > sigma[j] {
                inv += 1;
            }
        }
    }
    inv
}

pub fn is_permutation(sigma: &[usize]) -> bool {
    let k = sigma.len();
    let mut seen = vec![false; k + 1];
    sigma.iter().all(|&s| {
        if s == 0 || s > k || seen[s] {
            false
        } else {
            seen[s] = true;
            true
        }
    })
}

/// The braid-group lift of a permutation: the letter at position t moves to
/// position `sigma[t-1]`. With `sign_flip` every elementary factor is `-beta`
/// instead of `beta`, giving the `(-1)^length` twist.
pub fn apply_beta_sigma(
    p: &ParamMatrix,
    v: &WordSum,
    sigma: &[usize],
    sign_flip: bool,
) -> WordSum {
    let mut out = v.clone();
    for &pos in reduced_word(sigma).iter().rev() {
        out = apply_beta_at(p, &out, pos, sign_flip);
    }
    out
}

/// Dense operator on the full word basis of a tensor power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorOperator {
    pub arity: usize,
    pub matrix: SparseLinearMap<Vec<Letter>>,
}

pub fn beta_operator(p: &ParamMatrix) -> TensorOperator {
    beta_sigma_operator(p, 2, &[2, 1], false).expect("transposition is a permutation")
}

pub fn beta_sigma_operator(
    p: &ParamMatrix,
    arity: usize,
    sigma: &[usize],
    sign_flip: bool,
) -> Result<TensorOperator> {
    if sigma.len() != arity || !is_permutation(sigma) {
        return Err(Error::InvalidInput(format!(
            "{sigma:?} is not a permutation of 1..={arity}"
        )));
    }
    let words = all_words(p.dim(), arity);
    let columns = words
        .iter()
        .map(|w| {
            let mut v = WordSum::new();
            v.insert(w.clone(), LaurentPoly::one());
            apply_beta_sigma(p, &v, sigma, sign_flip)
        })
        .collect();
    Ok(TensorOperator {
        arity,
        matrix: SparseLinearMap::from_columns(words.clone(), words, columns),
    })
}

/// Checks `(id - beta)(id + Q^-2 beta) = 0` on the square of the alphabet.
pub fn verify_iwahori(p: &ParamMatrix) -> bool {
    let b = beta_operator(p).matrix;
    let id = SparseLinearMap::identity(all_words(p.dim(), 2));
    let minus_one = -LaurentPoly::one();
    let lhs = id.add_map(&b.scale(&minus_one));
    let rhs = id.add_map(&b.scale(&LaurentPoly::q_power(-2)));
    lhs.compose(&rhs).is_zero_map()
}

/// Checks the braid relation `b1 b2 b1 = b2 b1 b2` on the cube of the
/// alphabet.
pub fn verify_braid(p: &ParamMatrix) -> bool {
    let b1 = beta_sigma_operator(p, 3, &[2, 1, 3], false).unwrap().matrix;
    let b2 = beta_sigma_operator(p, 3, &[1, 3, 2], false).unwrap().matrix;
    let lhs = b1.compose(&b2).compose(&b1);
    let rhs = b2.compose(&b1).compose(&b2);
    lhs == rhs
}
