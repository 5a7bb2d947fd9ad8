//! Exact sparse linear algebra over the rationals.
//!
//! Elimination is incremental Gauss–Jordan: every stored pivot row is kept
//! fully reduced, so a new row is reduced in one pass and the nullspace can
//! be read off the free columns directly.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::LinalgError;
use crate::scalar::Scalar;

/// Sparse vector: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Normalises an arbitrary list of entries into a [`SparseVec`].
pub fn sparse_from(entries: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, v) in entries {
        *acc.entry(c).or_default() += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn dense_to_sparse(values: &[Scalar]) -> SparseVec {
    values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

pub fn dot(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> Scalar {
    let (mut i, mut j) = (0, 0);
    let mut acc = Scalar::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// `a + c * b`
pub fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scaled(a: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

fn get(a: &[(usize, Scalar)], col: usize) -> Option<&Scalar> {
    a.binary_search_by_key(&col, |e| e.0).ok().map(|i| &a[i].1)
}

/// Scales `v` so its first nonzero entry is 1.
pub fn normalize(v: &[(usize, Scalar)]) -> SparseVec {
    match v.first() {
        Some((_, lead)) if !lead.is_one() => scaled(v, &lead.recip()),
        _ => v.to_vec(),
    }
}

#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged dense matrix");
            m.push_row(dense_to_sparse(r));
        }
        m
    }

    /// Appends a row; entries are merged, zeros dropped. Empty rows are kept.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) {
        let row = sparse_from(entries);
        assert!(row.last().is_none_or(|(c, _)| *c < self.ncols), "column out of range");
        self.rows.push(row);
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `A·v`, one entry per row.
    pub fn apply(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    /// True when `A·v = 0` exactly.
    pub fn annihilates(&self, v: &[(usize, Scalar)]) -> bool {
        self.rows.iter().all(|r| dot(r, v).is_zero())
    }
}

/// How the next pivot column is chosen among a reduced row's entries.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Column with the fewest occurrences in stored rows; ties prefer a unit
    /// coefficient, then the smallest column.
    #[default]
    Sparsest,
    /// Smallest column index (classical reduced row echelon form).
    Leading,
}

/// Incrementally built, fully reduced row space.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    rule: PivotRule,
    rows: Vec<SparseVec>,
    pivot_col: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
    /// Rows that may contain a given non-pivot column. Entries can be stale.
    occ: Vec<Vec<usize>>,
}

impl Rref {
    pub fn new(ncols: usize, rule: PivotRule) -> Self {
        Rref {
            ncols,
            rule,
            rows: Vec::new(),
            pivot_col: Vec::new(),
            row_of_pivot: vec![None; ncols],
            occ: vec![Vec::new(); ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_pivot[col].is_some()
    }

    /// Remainder of `v` modulo the stored row space.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut out = v.to_vec();
        for (c, x) in v {
            if let Some(r) = self.row_of_pivot[*c] {
                out = axpy(&out, &-x.clone(), &self.rows[r]);
            }
        }
        out
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let red = self.reduce(v);
        if red.is_empty() {
            return false;
        }
        let p = match self.rule {
            PivotRule::Leading => red[0].0,
            PivotRule::Sparsest => {
                red.iter()
                    .min_by_key(|(c, x)| (self.occ[*c].len(), !(x.is_one() || (-x).is_one()), *c))
                    .unwrap()
                    .0
            }
        };
        let new = scaled(&red, &get(&red, p).unwrap().recip());
        let id = self.rows.len();
        for r in std::mem::take(&mut self.occ[p]) {
            let Some(c) = get(&self.rows[r], p).cloned() else { continue };
            let updated = axpy(&self.rows[r], &-c, &new);
            for (col, _) in &updated {
                if *col != self.pivot_col[r] && get(&self.rows[r], *col).is_none() {
                    self.occ[*col].push(r);
                }
            }
            self.rows[r] = updated;
        }
        for (col, _) in &new {
            if *col != p {
                self.occ[*col].push(id);
            }
        }
        self.rows.push(new);
        self.pivot_col.push(p);
        self.row_of_pivot[p] = Some(id);
        true
    }

    /// Basis of the nullspace: one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        (0..self.ncols)
            .filter(|c| !self.is_pivot(*c))
            .map(|f| {
                let mut rows: Vec<usize> = self.occ[f].clone();
                rows.sort_unstable();
                rows.dedup();
                let entries = rows
                    .into_iter()
                    .filter_map(|r| get(&self.rows[r], f).map(|x| (self.pivot_col[r], -x.clone())))
                    .chain(std::iter::once((f, Scalar::one())));
                sparse_from(entries)
            })
            .collect()
    }

    /// Stored rows ordered by pivot column.
    pub fn rows_by_pivot(&self) -> Vec<SparseVec> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&r| self.pivot_col[r]);
        idx.into_iter().map(|r| self.rows[r].clone()).collect()
    }
}

/// A subspace of `Q^ncols` held by its reduced row echelon basis, so equal
/// spans have identical bases and every basis vector starts with a 1.
#[derive(Clone, PartialEq, Eq)]
pub struct SolutionSpace {
    ncols: usize,
    basis: Vec<SparseVec>,
}

impl fmt::Debug for SolutionSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SolutionSpace(dim {} in Q^{}) ", self.basis.len(), self.ncols)?;
        f.debug_list().entries(self.basis.iter()).finish()
    }
}

impl SolutionSpace {
    pub fn zero(ncols: usize) -> Self {
        SolutionSpace { ncols, basis: Vec::new() }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ncols: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut r = Rref::new(ncols, PivotRule::Leading);
        for v in vectors {
            r.insert(&v);
        }
        SolutionSpace { ncols, basis: r.rows_by_pivot() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    fn rref(&self) -> Rref {
        let mut r = Rref::new(self.ncols, PivotRule::Leading);
        for v in &self.basis {
            r.insert(v);
        }
        r
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> Result<bool, LinalgError> {
        if let Some((c, _)) = v.last() {
            if *c >= self.ncols {
                return Err(LinalgError::DimensionMismatch { expected: self.ncols, got: c + 1 });
            }
        }
        Ok(self.rref().reduce(v).is_empty())
    }

    pub fn contains_dense(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        if v.len() != self.ncols {
            return Err(LinalgError::DimensionMismatch { expected: self.ncols, got: v.len() });
        }
        self.contains(&dense_to_sparse(v))
    }

    /// True when `other` lies inside `self`.
    pub fn contains_space(&self, other: &SolutionSpace) -> Result<bool, LinalgError> {
        if other.ncols != self.ncols {
            return Err(LinalgError::DimensionMismatch { expected: self.ncols, got: other.ncols });
        }
        let r = self.rref();
        Ok(other.basis.iter().all(|v| r.reduce(v).is_empty()))
    }

    /// First vector of `other` outside `self`, if any.
    pub fn first_outside<'a>(&self, other: &'a SolutionSpace) -> Option<&'a SparseVec> {
        let r = self.rref();
        other.basis.iter().find(|v| !r.reduce(v).is_empty())
    }

    pub fn sum(&self, other: &SolutionSpace) -> SolutionSpace {
        assert_eq!(self.ncols, other.ncols);
        SolutionSpace::span(self.ncols, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Image under restriction to `columns`, renumbered by position in
    /// `columns` (which must be strictly increasing).
    pub fn project(&self, columns: &[usize]) -> SolutionSpace {
        debug_assert!(columns.windows(2).all(|w| w[0] < w[1]));
        let pos: BTreeMap<usize, usize> = columns.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let images = self.basis.iter().map(|v| {
            v.iter().filter_map(|(c, x)| pos.get(c).map(|i| (*i, x.clone()))).collect::<SparseVec>()
        });
        SolutionSpace::span(columns.len(), images)
    }
}

/// Nullspace of `a` under the given pivot rule, returned in canonical form.
pub fn nullspace_with(a: &SparseMatrix, rule: PivotRule) -> SolutionSpace {
    let mut order: Vec<&SparseVec> = a.rows.iter().collect();
    order.sort_by_key(|r| r.len());
    let mut r = Rref::new(a.ncols, rule);
    for row in order {
        r.insert(row);
    }
    SolutionSpace::span(a.ncols, r.kernel())
}

pub fn nullspace(a: &SparseMatrix) -> SolutionSpace {
    nullspace_with(a, PivotRule::Sparsest)
}

pub fn rank(a: &SparseMatrix) -> usize {
    let mut r = Rref::new(a.ncols, PivotRule::Sparsest);
    a.rows.iter().filter(|row| r.insert(row)).count()
}
