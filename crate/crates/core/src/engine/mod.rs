//! Windowed constraint systems for centroids and super-biderivations.
//!
//! Unknowns are the coefficients of a homogeneous map on generator inputs.
//! Degree additivity splits every system into independent blocks, one per
//! `(map parity, degree shift k)`; blocks are built and solved in parallel
//! and merged in key order.

mod keyed;
pub mod postlie;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::Range;

use rayon::prelude::*;

use crate::algebra::{AlgebraSpec, Element, FamilyInfo, GenId, ModuleSpec, Window};
use crate::error::EngineError;
use crate::index::{HalfInt, Parity};
use crate::linalg::{self, normalize, sparse_from, PivotRule, SolutionSpace, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

pub use keyed::KeyedSpace;

/// Symmetry condition imposed on a bilinear map.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// `φ(x,y) = (-1)^{|x||y|} φ(y,x)`
    Symmetric,
    /// `φ(x,y) = -(-1)^{|x||y|} φ(y,x)`
    Skew,
    Unrestricted,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Skew => "skew",
            Symmetry::Unrestricted => "none",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ParityChoice {
    Even,
    Odd,
    /// Both homogeneous problems, solved independently and direct-summed.
    Both,
}

impl ParityChoice {
    pub fn parities(self) -> &'static [Parity] {
        match self {
            ParityChoice::Even => &[Parity::Even],
            ParityChoice::Odd => &[Parity::Odd],
            ParityChoice::Both => &[Parity::Even, Parity::Odd],
        }
    }
}

impl fmt::Display for ParityChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityChoice::Even => "even",
            ParityChoice::Odd => "odd",
            ParityChoice::Both => "both",
        })
    }
}

/// Names one unknown coefficient: the component of the map of the given
/// parity on `x` (and `y` for bilinear maps) along the generator `out`,
/// where `out.index = x.index + y.index + shift`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnknownKey {
    pub parity: Parity,
    pub shift: HalfInt,
    pub x: GenId,
    pub y: Option<GenId>,
    pub out: GenId,
}

impl UnknownKey {
    pub fn in_interior(&self, window: &Window) -> bool {
        window.in_interior(self.x.index) && self.y.is_none_or(|y| window.in_interior(y.index))
    }
}

impl fmt::Display for UnknownKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.y {
            Some(y) => write!(f, "[{}|k={}] ({}, {}) -> {}", self.parity, self.shift, self.x, y, self.out),
            None => write!(f, "[{}|k={}] ({}) -> {}", self.parity, self.shift, self.x, self.out),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MapKind {
    Centroid,
    Bider(Symmetry),
}

/// One independent `(parity, shift)` block.
#[derive(Clone, Debug)]
pub struct Block {
    pub parity: Parity,
    pub shift: HalfInt,
    /// Global column range; block matrices use local columns.
    pub cols: Range<usize>,
    pub matrix: SparseMatrix,
    pub space: SolutionSpace,
}

/// Solved windowed system: the raw solution space over every unknown of the
/// window, plus its projection onto interior unknowns.
#[derive(Clone, Debug)]
pub struct MapSpace {
    pub algebra: String,
    pub module: String,
    pub kind: MapKind,
    pub parity: ParityChoice,
    pub window: Window,
    keys: Vec<UnknownKey>,
    blocks: Vec<Block>,
}

pub type BiderSpace = MapSpace;
pub type CentroidSpace = MapSpace;

#[derive(Clone)]
pub struct BiderQuery {
    pub algebra: AlgebraSpec,
    pub module: ModuleSpec,
    pub parity: ParityChoice,
    pub symmetry: Symmetry,
    pub window: Window,
}

impl BiderQuery {
    pub fn new(
        module: &ModuleSpec,
        parity: ParityChoice,
        symmetry: Symmetry,
        window: Window,
    ) -> Self {
        BiderQuery { algebra: module.over().clone(), module: module.clone(), parity, symmetry, window }
    }
}

/// Window generators with dense ids, plus cached bracket and action tables.
/// Module generators get dense ids too, covering every index an action
/// output can reach.
struct Frame {
    gens: Vec<GenId>,
    par: Vec<Parity>,
    /// `None` when the bracket is nonzero but leaves the window.
    brackets: Vec<Option<Vec<(usize, Scalar)>>>,
    mfams: Vec<FamilyInfo>,
    /// Doubled index bound of module ids.
    reach: i64,
    /// `acts[x * nm + w]` holds `x·w` over module ids.
    acts: Vec<Vec<(usize, Scalar)>>,
}

impl Frame {
    fn new(alg: &AlgebraSpec, module: &ModuleSpec, window: &Window) -> Result<Self, EngineError> {
        let gens = alg.generators(window.n);
        let pos: HashMap<GenId, usize> = gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let par = gens.iter().map(|g| alg.parity(*g)).collect::<Result<Vec<_>, _>>()?;
        let mut brackets = Vec::with_capacity(gens.len() * gens.len());
        for &x in &gens {
            for &y in &gens {
                let t = alg.bracket_gens(x, y)?;
                let mapped: Option<Vec<(usize, Scalar)>> =
                    t.into_iter().map(|(g, c)| pos.get(&g).map(|i| (*i, c))).collect();
                brackets.push(mapped);
            }
        }
        let (n, k) = (window.n.doubled(), window.k.doubled());
        let mut frame = Frame {
            gens,
            par,
            brackets,
            mfams: module.families().to_vec(),
            reach: 3 * n + k,
            acts: Vec::new(),
        };
        let nm = frame.nm();
        let mut acts = vec![Vec::new(); frame.gens.len() * nm];
        for fam in module.families() {
            let sources = fam.generators(HalfInt::from_doubled(2 * n + k));
            for w in sources {
                let wid = frame.mid(w);
                for (x, &g) in frame.gens.iter().enumerate() {
                    let mut out = Vec::new();
                    for (o, c) in module.act_gens(g, w)? {
                        assert!(o.index.doubled().abs() <= frame.reach, "action is not degree-additive");
                        out.push((frame.mid(o), c));
                    }
                    acts[x * nm + wid] = out;
                }
            }
        }
        frame.acts = acts;
        Ok(frame)
    }

    fn ng(&self) -> usize {
        self.gens.len()
    }

    fn width(&self) -> usize {
        (2 * self.reach + 1) as usize
    }

    fn nm(&self) -> usize {
        self.mfams.len() * self.width()
    }

    fn mid(&self, g: GenId) -> usize {
        let f = self.mfams.iter().position(|f| f.name == g.family).expect("module family");
        f * self.width() + (g.index.doubled() + self.reach) as usize
    }

    fn bracket(&self, i: usize, j: usize) -> Option<&Vec<(usize, Scalar)>> {
        self.brackets[i * self.ng() + j].as_ref()
    }

    fn act(&self, x: usize, w: usize) -> &[(usize, Scalar)] {
        &self.acts[x * self.nm() + w]
    }

    /// Module generators of parity `parity` at `index`.
    fn outputs(&self, parity: Parity, index: HalfInt) -> Vec<GenId> {
        self.mfams
            .iter()
            .filter(|f| f.parity == parity)
            .filter(|f| if f.central { index == HalfInt::ZERO } else { f.lattice.contains(index) })
            .map(|f| GenId::new(f.name, index))
            .collect()
    }
}

fn shifts(bound: HalfInt) -> impl Iterator<Item = HalfInt> {
    let d = bound.doubled();
    (-d..=d).map(HalfInt::from_doubled)
}

/// Unknowns of one block indexed by input ids.
struct BlockUnknowns {
    keys: Vec<UnknownKey>,
    /// `outs[u * ng + v]` (or `outs[u]` for arity 1): `(module id, local column)`.
    outs: Vec<Vec<(usize, usize)>>,
}

fn enumerate_keys(frame: &Frame, kind: MapKind, parity: Parity, k: HalfInt) -> BlockUnknowns {
    let ng = frame.ng();
    let mut keys = Vec::new();
    match kind {
        MapKind::Centroid => {
            for (u, &x) in frame.gens.iter().enumerate() {
                for out in frame.outputs(parity + frame.par[u], x.index + k) {
                    keys.push(UnknownKey { parity, shift: k, x, y: None, out });
                }
            }
        }
        MapKind::Bider(_) => {
            for (u, &x) in frame.gens.iter().enumerate() {
                for (v, &y) in frame.gens.iter().enumerate() {
                    for out in frame.outputs(parity + frame.par[u] + frame.par[v], x.index + y.index + k) {
                        keys.push(UnknownKey { parity, shift: k, x, y: Some(y), out });
                    }
                }
            }
        }
    }
    keys.sort();
    let pos: HashMap<GenId, usize> = frame.gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let slots = if matches!(kind, MapKind::Centroid) { ng } else { ng * ng };
    let mut outs = vec![Vec::new(); slots];
    for (col, key) in keys.iter().enumerate() {
        let u = pos[&key.x];
        let slot = match key.y {
            Some(y) => u * ng + pos[&y],
            None => u,
        };
        outs[slot].push((frame.mid(key.out), col));
    }
    BlockUnknowns { keys, outs }
}

/// Pending row entries `(output module id, column, coefficient)` of one
/// instantiated identity; split into one row per output.
struct Acc<'a> {
    frame: &'a Frame,
    buf: Vec<(usize, usize, Scalar)>,
    rows: HashSet<SparseVec>,
}

impl<'a> Acc<'a> {
    fn direct(&mut self, outs: &[(usize, usize)], c: &Scalar) {
        for (w, col) in outs {
            self.buf.push((*w, *col, c.clone()));
        }
    }

    fn acted(&mut self, x: usize, outs: &[(usize, usize)], c: &Scalar) {
        for (w, col) in outs {
            for (g, a) in self.frame.act(x, *w) {
                self.buf.push((*g, *col, a * c));
            }
        }
    }

    fn flush(&mut self) {
        self.buf.sort_unstable_by_key(|e| (e.0, e.1));
        let mut i = 0;
        while i < self.buf.len() {
            let out = self.buf[i].0;
            let mut row: SparseVec = Vec::new();
            while i < self.buf.len() && self.buf[i].0 == out {
                let col = self.buf[i].1;
                let mut v = Scalar::zero();
                while i < self.buf.len() && self.buf[i].0 == out && self.buf[i].1 == col {
                    v += &self.buf[i].2;
                    i += 1;
                }
                if !v.is_zero() {
                    row.push((col, v));
                }
            }
            if !row.is_empty() {
                self.rows.insert(normalize(&row));
            }
        }
        self.buf.clear();
    }

    fn insert(&mut self, row: SparseVec) {
        if !row.is_empty() {
            self.rows.insert(normalize(&row));
        }
    }
}

/// Rows of one block. With a symmetry condition the second biderivation
/// identity is left out: on symmetric or skew maps it is the image of the
/// first under `φ ↦ τφ`, so the symmetry rows already imply it.
fn block_rows(
    frame: &Frame,
    kind: MapKind,
    parity: Parity,
    bu: &BlockUnknowns,
    both_identities: bool,
) -> Vec<SparseVec> {
    let ng = frame.ng();
    let mut acc = Acc { frame, buf: Vec::new(), rows: HashSet::new() };
    match kind {
        MapKind::Centroid => {
            // γ([x,y]) - (-1)^{|γ||x|} x·γ(y) = 0
            for x in 0..ng {
                let s = -(parity * frame.par[x]).sign_scalar();
                for y in 0..ng {
                    let Some(bxy) = frame.bracket(x, y) else { continue };
                    for (u, c) in bxy {
                        acc.direct(&bu.outs[*u], c);
                    }
                    acc.acted(x, &bu.outs[y], &s);
                    acc.flush();
                }
            }
        }
        MapKind::Bider(sym) => {
            let o = |u: usize, v: usize| &bu.outs[u * ng + v];
            let second = both_identities || sym == Symmetry::Unrestricted;
            for x in 0..ng {
                let px = frame.par[x];
                for y in 0..ng {
                    let py = frame.par[y];
                    let bxy = frame.bracket(x, y);
                    let sa = -(parity * px).sign_scalar();
                    let sb = (py * (parity + px)).sign_scalar();
                    for z in 0..ng {
                        let pz = frame.par[z];
                        // φ([x,y],z) = (-1)^{p|x|} x·φ(y,z) - (-1)^{|y|(p+|x|)} y·φ(x,z)
                        if let Some(bxy) = bxy {
                            for (u, c) in bxy {
                                acc.direct(o(*u, z), c);
                            }
                            acc.acted(x, o(y, z), &sa);
                            acc.acted(y, o(x, z), &sb);
                            acc.flush();
                        }
                        // φ(x,[y,z]) = (-1)^{(p+|x|)|y|} y·φ(x,z) - (-1)^{|z|(p+|x|+|y|)} z·φ(x,y)
                        if !second {
                            continue;
                        }
                        if let Some(byz) = frame.bracket(y, z) {
                            for (u, c) in byz {
                                acc.direct(o(x, *u), c);
                            }
                            acc.acted(y, o(x, z), &-((parity + px) * py).sign_scalar());
                            acc.acted(z, o(x, y), &(pz * (parity + px + py)).sign_scalar());
                            acc.flush();
                        }
                    }
                }
            }
            if sym != Symmetry::Unrestricted {
                let one = Scalar::one();
                for x in 0..ng {
                    for y in 0..ng {
                        let mut s = (frame.par[x] * frame.par[y]).sign_scalar();
                        if sym == Symmetry::Skew {
                            s = -s;
                        }
                        let rev: HashMap<usize, usize> = o(y, x).iter().cloned().collect();
                        for (w, col) in o(x, y) {
                            acc.insert(sparse_from([(*col, one.clone()), (rev[w], -s.clone())]));
                        }
                    }
                }
            }
        }
    }
    let mut rows: Vec<SparseVec> = acc.rows.into_iter().collect();
    rows.sort();
    rows
}

fn solve(
    alg: &AlgebraSpec,
    module: &ModuleSpec,
    kind: MapKind,
    parity: ParityChoice,
    window: Window,
    both_identities: bool,
) -> Result<MapSpace, EngineError> {
    let frame = Frame::new(alg, module, &window)?;
    let jobs: Vec<(Parity, HalfInt)> = parity
        .parities()
        .iter()
        .flat_map(|p| shifts(window.k).map(move |k| (*p, k)))
        .collect();
    let solved: Vec<(Parity, HalfInt, Vec<UnknownKey>, SparseMatrix, SolutionSpace)> = jobs
        .into_par_iter()
        .filter_map(|(p, k)| {
            let bu = enumerate_keys(&frame, kind, p, k);
            if bu.keys.is_empty() {
                return None;
            }
            let mut m = SparseMatrix::new(bu.keys.len());
            for r in block_rows(&frame, kind, p, &bu, both_identities) {
                m.push_row(r);
            }
            let space = linalg::nullspace_with(&m, PivotRule::Sparsest);
            Some((p, k, bu.keys, m, space))
        })
        .collect();
    let mut keys = Vec::new();
    let mut blocks = Vec::new();
    for (parity, shift, bkeys, matrix, space) in solved {
        let start = keys.len();
        keys.extend(bkeys);
        blocks.push(Block { parity, shift, cols: start..keys.len(), matrix, space });
    }
    Ok(MapSpace {
        algebra: alg.name().to_string(),
        module: module.name().to_string(),
        kind,
        parity,
        window,
        keys,
        blocks,
    })
}

/// Super-biderivations `L × L → M` on the query window.
pub fn solve_bider(query: &BiderQuery) -> Result<BiderSpace, EngineError> {
    solve(&query.algebra, &query.module, MapKind::Bider(query.symmetry), query.parity, query.window, false)
}

/// Like [`solve_bider`] but instantiating both identities whatever the
/// symmetry; used to cross-check the reduced system.
pub fn solve_bider_full_rows(query: &BiderQuery) -> Result<BiderSpace, EngineError> {
    solve(&query.algebra, &query.module, MapKind::Bider(query.symmetry), query.parity, query.window, true)
}

/// Centroid maps `γ: L → M`, `γ([x,y]) = (-1)^{|γ||x|} x·γ(y)`.
pub fn solve_centroid(
    module: &ModuleSpec,
    parity: ParityChoice,
    window: Window,
) -> Result<CentroidSpace, EngineError> {
    solve(module.over(), module, MapKind::Centroid, parity, window, false)
}

impl MapSpace {
    pub fn keys(&self) -> &[UnknownKey] {
        &self.keys
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn column(&self, key: &UnknownKey) -> Option<usize> {
        self.keys.binary_search(key).ok()
    }

    pub fn symmetry(&self) -> Option<Symmetry> {
        match self.kind {
            MapKind::Bider(s) => Some(s),
            MapKind::Centroid => None,
        }
    }

    pub fn nrows(&self) -> usize {
        self.blocks.iter().map(|b| b.matrix.nrows()).sum()
    }

    /// Raw window solution space over all columns.
    pub fn raw(&self) -> SolutionSpace {
        SolutionSpace::span(self.keys.len(), self.raw_basis())
    }

    fn raw_basis(&self) -> Vec<SparseVec> {
        self.blocks
            .iter()
            .flat_map(|b| {
                let off = b.cols.start;
                b.space.basis().iter().map(move |v| v.iter().map(|(c, x)| (c + off, x.clone())).collect())
            })
            .collect()
    }

    pub fn raw_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.space.dim()).sum()
    }

    /// Columns of interior unknowns, ascending.
    pub fn interior_columns(&self) -> Vec<usize> {
        (0..self.keys.len()).filter(|&c| self.keys[c].in_interior(&self.window)).collect()
    }

    pub fn interior(&self) -> KeyedSpace {
        self.project_interior(&self.raw())
    }

    /// Projects a space over this system's columns to the interior unknowns.
    pub fn project_interior(&self, space: &SolutionSpace) -> KeyedSpace {
        let cols = self.interior_columns();
        let keys = cols.iter().map(|&c| self.keys[c]).collect();
        KeyedSpace::new(keys, space.project(&cols))
    }

    /// Whether a global vector satisfies every instantiated row exactly.
    pub fn satisfies(&self, v: &[(usize, Scalar)]) -> bool {
        self.blocks.iter().all(|b| {
            let local: SparseVec = v
                .iter()
                .filter(|(c, _)| b.cols.contains(c))
                .map(|(c, x)| (c - b.cols.start, x.clone()))
                .collect();
            b.matrix.annihilates(&local)
        })
    }

    /// Global vector from named coefficients. Keys outside the window are
    /// reported as an error.
    pub fn vector(&self, entries: &[(UnknownKey, Scalar)]) -> Result<SparseVec, EngineError> {
        let mut out = Vec::new();
        for (k, x) in entries {
            out.push((self.column(k).ok_or(EngineError::NamespaceMismatch)?, x.clone()));
        }
        Ok(sparse_from(out))
    }

    /// `τφ(x,y) = (-1)^{|x||y|} φ(y,x)` on a global vector.
    fn tau(&self, alg: &AlgebraSpec, v: &[(usize, Scalar)]) -> Result<SparseVec, EngineError> {
        let mut out = Vec::with_capacity(v.len());
        for (c, x) in v {
            let k = self.keys[*c];
            let y = k.y.ok_or(EngineError::NotSymmetric)?;
            let swapped = UnknownKey { x: y, y: Some(k.x), ..k };
            let s = (alg.parity(k.x)? * alg.parity(y)?).sign_scalar();
            out.push((self.column(&swapped).ok_or(EngineError::NamespaceMismatch)?, x * &s));
        }
        Ok(sparse_from(out))
    }
}

/// Symmetric and skew parts of an unrestricted biderivation space.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub symmetric: SolutionSpace,
    pub skew: SolutionSpace,
}

/// `φ± = (φ ± τφ)/2` applied to every raw basis vector.
pub fn decompose(full: &BiderSpace, alg: &AlgebraSpec) -> Result<Decomposition, EngineError> {
    if full.kind != MapKind::Bider(Symmetry::Unrestricted) {
        return Err(EngineError::NotSymmetric);
    }
    let half = Scalar::frac(1, 2);
    let n = full.keys.len();
    let (mut sym, mut skew) = (Vec::new(), Vec::new());
    for v in full.raw_basis() {
        let t = full.tau(alg, &v)?;
        sym.push(linalg::axpy(&v, &Scalar::one(), &t).iter().map(|(c, x)| (*c, x * &half)).collect());
        skew.push(linalg::axpy(&v, &-Scalar::one(), &t).iter().map(|(c, x)| (*c, x * &half)).collect());
    }
    Ok(Decomposition { symmetric: SolutionSpace::span(n, sym), skew: SolutionSpace::span(n, skew) })
}

/// Per-degree annihilator `{w : x·w = 0 for all in-window x}` of the module
/// on indices `|i| <= window.n`, as a list of nonzero elements.
pub fn annihilator(module: &ModuleSpec, window: &Window) -> Result<Vec<Element>, EngineError> {
    let alg = module.over();
    let gens = alg.generators(window.n);
    let mut by_index: BTreeMap<HalfInt, Vec<GenId>> = BTreeMap::new();
    for w in module.table().generators(window.n) {
        by_index.entry(w.index).or_default().push(w);
    }
    let mut out = Vec::new();
    for ws in by_index.values() {
        for parity in [Parity::Even, Parity::Odd] {
            let cand: Vec<GenId> =
                ws.iter().copied().filter(|w| module.table().parity(*w).ok() == Some(parity)).collect();
            if cand.is_empty() {
                continue;
            }
            let mut rows: BTreeMap<(GenId, GenId), Vec<(usize, Scalar)>> = BTreeMap::new();
            for &x in &gens {
                for (j, &w) in cand.iter().enumerate() {
                    for (g, c) in module.act_gens(x, w)? {
                        rows.entry((x, g)).or_default().push((j, c));
                    }
                }
            }
            let mut m = SparseMatrix::new(cand.len());
            for r in rows.into_values() {
                m.push_row(r);
            }
            for v in linalg::nullspace(&m).basis() {
                out.push(Element::from_terms(v.iter().map(|(j, c)| (cand[*j], c.clone())), parity));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
