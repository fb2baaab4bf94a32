//! Partitions, skew shapes, tableaux and their words, and the
//! Littlewood-Richardson combinatorics built from them.
//!
//! Conventions, fixed once for the whole crate:
//! - cells are addressed `(row, col)`, 1-based, rows growing downward;
//! - a tableau is standard when its rows strictly increase rightward and its
//!   columns are non-decreasing downward, both in the chosen alphabet order;
//! - `w(T)` is the row reading word, top row first, left to right.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Entries of tableaux and of basis words.
pub type Letter = u8;

/// Weakly decreasing positive parts; trailing zeros are stripped on input.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Parses a comma-separated part list; empty input and "0" both denote
    /// the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad partition part {p:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The i-th part, 1-based, zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.0.len() {
            0
        } else {
            self.0[i - 1]
        }
    }

    pub fn first(&self) -> u32 {
        self.part(1)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first() as usize;
        let parts = (1..=cols)
            .map(|j| self.0.iter().filter(|&&p| p as usize >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    pub fn contains(&self, inner: &Partition) -> bool {
        (1..=inner.len()).all(|i| inner.part(i) <= self.part(i))
    }

    /// Lexicographic comparison with implicit zero padding; coincides with
    /// the derived `Ord` because parts are positive.
    pub fn lex_cmp(&self, other: &Partition) -> Ordering {
        self.cmp(other)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Cells of `outer` not in `inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::InvalidInput(format!(
                "inner shape {inner} does not fit inside outer shape {outer}"
            )));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        (self.outer.size() - self.inner.size()) as usize
    }

    pub fn num_rows(&self) -> usize {
        self.outer.len()
    }

    pub fn num_cols(&self) -> usize {
        self.outer.first() as usize
    }

    pub fn row_len(&self, i: usize) -> usize {
        (self.outer.part(i) - self.inner.part(i)) as usize
    }

    /// Column bounds: cells of column j sit in rows
    /// `inner~_j + 1 ..= outer~_j`, always contiguous.
    pub fn col_len(&self, j: usize) -> usize {
        (self.outer.conjugate().part(j) - self.inner.conjugate().part(j)) as usize
    }

    pub fn conjugate(&self) -> SkewShape {
        SkewShape { outer: self.outer.conjugate(), inner: self.inner.conjugate() }
    }

    pub fn cells_row_major(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::with_capacity(self.size());
        for i in 1..=self.num_rows() {
            for j in (self.inner.part(i) as usize + 1)..=(self.outer.part(i) as usize) {
                cells.push((i, j));
            }
        }
        cells
    }

    pub fn cells_col_major(&self) -> Vec<(usize, usize)> {
        let outer_c = self.outer.conjugate();
        let inner_c = self.inner.conjugate();
        let mut cells = Vec::with_capacity(self.size());
        for j in 1..=self.num_cols() {
            for i in (inner_c.part(j) as usize + 1)..=(outer_c.part(j) as usize) {
                cells.push((i, j));
            }
        }
        cells
    }

    /// Permutation rearranging the row-major cell enumeration into the
    /// column-major one: position k holds the column-major index of the k-th
    /// row-major cell. One-line form, 1-based.
    pub fn chi_permutation(&self) -> Vec<usize> {
        let col_major = self.cells_col_major();
        let col_index = |cell: &(usize, usize)| {
            col_major.iter().position(|c| c == cell).expect("cell in both enumerations") + 1
        };
        self.cells_row_major().iter().map(col_index).collect()
    }
}

impl std::fmt::Display for SkewShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.inner.is_empty() {
            write!(f, "({})", self.outer)
        } else {
            write!(f, "({})/({})", self.outer, self.inner)
        }
    }
}

/// Filling of a skew shape by letters `1..=N`, compared in an explicit
/// alphabet order (one-line permutation of `1..=N`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tableau {
    shape: SkewShape,
    rows: Vec<Vec<Letter>>,
    alphabet_order: Vec<Letter>,
}

/// The identity alphabet order on `1..=n`.
pub fn natural_order(n: usize) -> Vec<Letter> {
    (1..=n as Letter).collect()
}

impl Tableau {
    pub fn new(shape: SkewShape, rows: Vec<Vec<Letter>>, alphabet_order: Vec<Letter>) -> Result<Self> {
        let n = alphabet_order.len();
        let mut seen = vec![false; n + 1];
        for &a in &alphabet_order {
            if a == 0 || a as usize > n || seen[a as usize] {
                return Err(Error::InvalidInput(format!(
                    "alphabet order {alphabet_order:?} is not a permutation of 1..={n}"
                )));
            }
            seen[a as usize] = true;
        }
        if rows.len() != shape.num_rows() {
            return Err(Error::InvalidInput(format!(
                "tableau has {} rows, shape {shape} has {}",
                rows.len(),
                shape.num_rows()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != shape.row_len(i + 1) {
                return Err(Error::InvalidInput(format!(
                    "row {} has {} entries, shape {shape} wants {}",
                    i + 1,
                    row.len(),
                    shape.row_len(i + 1)
                )));
            }
            if row.iter().any(|&a| a == 0 || a as usize > n) {
                return Err(Error::InvalidInput(format!(
                    "row {} of {row:?} leaves the alphabet 1..={n}",
                    i + 1
                )));
            }
        }
        Ok(Tableau { shape, rows, alphabet_order })
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn alphabet_order(&self) -> &[Letter] {
        &self.alphabet_order
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_order.len()
    }

    /// Entry at absolute coordinates, 1-based; `None` outside the shape.
    pub fn entry(&self, i: usize, j: usize) -> Option<Letter> {
        if i == 0 || i > self.shape.num_rows() {
            return None;
        }
        let lo = self.shape.inner().part(i) as usize;
        let hi = self.shape.outer().part(i) as usize;
        if j <= lo || j > hi {
            return None;
        }
        Some(self.rows[i - 1][j - lo - 1])
    }

    fn rank(&self, a: Letter) -> usize {
        self.alphabet_order.iter().position(|&x| x == a).expect("letter in alphabet")
    }

    pub fn cmp_letters(&self, a: Letter, b: Letter) -> Ordering {
        self.rank(a).cmp(&self.rank(b))
    }

    pub fn is_row_standard(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.windows(2).all(|w| self.cmp_letters(w[0], w[1]) == Ordering::Less))
    }

    pub fn is_column_standard(&self) -> bool {
        for i in 1..self.shape.num_rows() {
            for j in 1..=self.shape.num_cols() {
                if let (Some(a), Some(b)) = (self.entry(i, j), self.entry(i + 1, j)) {
                    if self.cmp_letters(a, b) == Ordering::Greater {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_standard(&self) -> bool {
        self.is_row_standard() && self.is_column_standard()
    }

    /// Multiplicity of each letter, indexed by `letter - 1`.
    pub fn content(&self) -> Vec<usize> {
        let mut c = vec![0usize; self.alphabet_size()];
        for row in &self.rows {
            for &a in row {
                c[a as usize - 1] += 1;
            }
        }
        c
    }

    /// Row reading word, top row first.
    pub fn word(&self) -> Vec<Letter> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Column word: each column read bottom to top, leftmost column first.
    pub fn associated_word(&self) -> Vec<Letter> {
        let mut w = Vec::with_capacity(self.shape.size());
        for j in 1..=self.shape.num_cols() {
            for i in (1..=self.shape.num_rows()).rev() {
                if let Some(a) = self.entry(i, j) {
                    w.push(a);
                }
            }
        }
        w
    }
}

/// Prefix-counting comparison in the shared alphabet order: `s <= t` when,
/// for every row prefix and every alphabet prefix, `s` holds at least as
/// many cells filled from that alphabet prefix as `t` does. A partial
/// order on row-standard tableaux; shapes and alphabet orders must agree.
/// Straightening only ever moves downward in this order.
pub fn pseudo_order_leq(s: &Tableau, t: &Tableau) -> Result<bool> {
    if s.shape() != t.shape() {
        return Err(Error::InvalidInput(format!(
            "cannot compare tableaux of shapes {} and {}",
            s.shape(),
            t.shape()
        )));
    }
    if s.alphabet_order() != t.alphabet_order() {
        return Err(Error::InvalidInput(
            "cannot compare tableaux over different alphabet orders".into(),
        ));
    }
    let order = s.alphabet_order();
    for q in 1..=order.len() {
        let low: BTreeSet<Letter> = order[..q].iter().copied().collect();
        let mut count_s = 0usize;
        let mut count_t = 0usize;
        for (rs, rt) in s.rows().iter().zip(t.rows()) {
            count_s += rs.iter().filter(|a| low.contains(a)).count();
            count_t += rt.iter().filter(|a| low.contains(a)).count();
            if count_s < count_t {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Natural lexicographic comparison of row reading words.
pub fn lex_compare(s: &Tableau, t: &Tableau) -> Ordering {
    s.word().cmp(&t.word())
}

/// All standard tableaux of the shape over letters `1..=order.len()`,
/// compared in `order`, sorted by the natural lex order on `w(T)`.
pub fn enumerate_standard(shape: &SkewShape, order: &[Letter]) -> Vec<Tableau> {
    enumerate_with(shape, order, None)
}

/// Standard tableaux with the given letter content, same ordering contract
/// as `enumerate_standard`.
pub fn enumerate_standard_with_content(
    shape: &SkewShape,
    order: &[Letter],
    content: &[usize],
) -> Vec<Tableau> {
    enumerate_with(shape, order, Some(content))
}

fn enumerate_with(shape: &SkewShape, order: &[Letter], content: Option<&[usize]>) -> Vec<Tableau> {
    let n = order.len();
    let mut rank = vec![usize::MAX; n + 1];
    for (r, &a) in order.iter().enumerate() {
        rank[a as usize] = r;
    }
    let cells = shape.cells_row_major();
    let mut budget: Vec<usize> = match content {
        Some(c) => {
            assert_eq!(c.len(), n);
            if c.iter().sum::<usize>() != shape.size() {
                return Vec::new();
            }
            c.to_vec()
        }
        None => vec![shape.size(); n],
    };
    let mut grid = vec![vec![0 as Letter; shape.num_cols() + 1]; shape.num_rows() + 1];
    let mut current: Vec<Letter> = Vec::with_capacity(cells.len());
    let mut out: Vec<Vec<Letter>> = Vec::new();

    fn dfs(
        cells: &[(usize, usize)],
        pos: usize,
        n: usize,
        rank: &[usize],
        inner: &Partition,
        budget: &mut Vec<usize>,
        grid: &mut Vec<Vec<Letter>>,
        current: &mut Vec<Letter>,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if pos == cells.len() {
            out.push(current.clone());
            return;
        }
        let (i, j) = cells[pos];
        let left = if j > inner.part(i) as usize + 1 { grid[i][j - 1] } else { 0 };
        let up = if i > 1 { grid[i - 1][j] } else { 0 };
        for a in 1..=n as Letter {
            if budget[a as usize - 1] == 0 {
                continue;
            }
            if left != 0 && rank[left as usize] >= rank[a as usize] {
                continue;
            }
            if up != 0 && rank[up as usize] > rank[a as usize] {
                continue;
            }
            budget[a as usize - 1] -= 1;
            grid[i][j] = a;
            current.push(a);
            dfs(cells, pos + 1, n, rank, inner, budget, grid, current, out);
            current.pop();
            grid[i][j] = 0;
            budget[a as usize - 1] += 1;
        }
    }

    dfs(
        &cells,
        0,
        n,
        &rank,
        shape.inner(),
        &mut budget,
        &mut grid,
        &mut current,
        &mut out,
    );
    out.sort();
    out.into_iter()
        .map(|flat| {
            let mut rows = Vec::with_capacity(shape.num_rows());
            let mut it = flat.into_iter();
            for i in 1..=shape.num_rows() {
                rows.push((&mut it).take(shape.row_len(i)).collect());
            }
            Tableau::new(shape.clone(), rows, order.to_vec()).expect("enumerated fill is valid")
        })
        .collect()
}

/// Straight-shape tableau with row i equal to `1, 2, ..., alpha_i`.
pub fn canonical_tableau(alpha: &Partition) -> Tableau {
    let shape = SkewShape::straight(alpha.clone());
    let rows: Vec<Vec<Letter>> =
        alpha.parts().iter().map(|&len| (1..=len as Letter).collect()).collect();
    let n = alpha.first().max(1) as usize;
    Tableau::new(shape, rows, natural_order(n)).expect("canonical fill is standard")
}

/// Running multiplicities: position i holds how many times `w[i]` has
/// appeared in `w[..=i]`.
pub fn transpose_word(w: &[Letter]) -> Vec<Letter> {
    let mut counts = std::collections::BTreeMap::new();
    w.iter()
        .map(|&a| {
            let c = counts.entry(a).or_insert(0u8);
            *c += 1;
            *c
        })
        .collect()
}

/// Lattice condition: in every prefix, letter x occurs at least as often as
/// letter x+1.
pub fn is_lattice(w: &[Letter]) -> bool {
    let max = w.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0usize; max + 2];
    for &a in w {
        let a = a as usize;
        counts[a] += 1;
        if a > 1 && counts[a] > counts[a - 1] {
            return false;
        }
    }
    true
}

/// Index set of the filtration layer at nu: standard tableaux of shape
/// lambda/nu with content equal to the conjugate of mu and lattice column
/// word. Natural alphabet order throughout.
pub fn lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Vec<Tableau>> {
    let total = (lambda.size() as i64) - (mu.size() as i64);
    if nu.size() as i64 + mu.size() as i64 != lambda.size() as i64 {
        return Err(Error::InvalidInput(format!(
            "sizes do not match: |{lambda}| != |{mu}| + |{nu}|"
        )));
    }
    let _ = total;
    if !lambda.contains(nu) {
        return Ok(Vec::new());
    }
    let shape = SkewShape::new(lambda.clone(), nu.clone())?;
    let content_part = mu.conjugate();
    let letters = content_part.len().max(1);
    let content: Vec<usize> =
        (1..=letters).map(|i| content_part.part(i) as usize).collect();
    let order = natural_order(letters);
    let tableaux = enumerate_standard_with_content(&shape, &order, &content)
        .into_iter()
        .filter(|t| is_lattice(&t.associated_word()))
        .collect();
    Ok(tableaux)
}

/// Littlewood-Richardson multiplicity of the layer at nu inside the
/// filtration of the skew module for lambda/mu.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<usize> {
    Ok(lr_tableaux(lambda, mu, nu)?.len())
}

/// All partitions with the given maximum size, first part, and length;
/// includes the empty partition.
pub fn partitions_up_to(max_size: u32, max_first: u32, max_len: usize) -> Vec<Partition> {
    let mut out = vec![Partition::empty()];
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(parts) = stack.pop() {
        let used: u32 = parts.iter().sum();
        let cap = parts.last().copied().unwrap_or(max_first);
        if parts.len() == max_len {
            continue;
        }
        for next in 1..=cap.min(max_size - used) {
            let mut p = parts.clone();
            p.push(next);
            out.push(Partition(p.clone()));
            stack.push(p);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All partitions sigma with `inner ⊆ sigma ⊆ outer`.
pub fn partitions_between(inner: &Partition, outer: &Partition) -> Vec<Partition> {
    let mut out: Vec<Partition> = Vec::new();
    let rows = outer.len();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(parts) = stack.pop() {
        let i = parts.len();
        if i == rows {
            let mut p = parts.clone();
            while p.last() == Some(&0) {
                p.pop();
            }
            out.push(Partition(p));
            continue;
        }
        let lo = inner.part(i + 1);
        let hi = outer.part(i + 1).min(parts.last().copied().unwrap_or(u32::MAX));
        for next in lo..=hi {
            let mut p = parts.clone();
            p.push(next);
            stack.push(p);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Subpartitions of `outer`, i.e. everything between the empty partition and
/// `outer`.
pub fn subpartitions(outer: &Partition) -> Vec<Partition> {
    partitions_between(&Partition::empty(), outer)
}
