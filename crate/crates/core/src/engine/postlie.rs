//! Commutative post-Lie products built from symmetric biderivations.
//!
//! The product is parameterised as `x∘y = Σ t_i ψ_i(x,y)` over a basis `ψ_i`
//! of the windowed symmetric adjoint space, and the identity
//! `[x,y]∘z - x∘(y∘z) + (-1)^{|x||y|} y∘(x∘z) = 0` is instantiated on
//! generator triples. `[x,y]∘z` is linear in `t`; the other two terms are
//! quadratic.
//!
//! `ψ_i` is known on window inputs. Outside the window an input pair is
//! evaluated as zero when no basis map has any support on that pair of
//! families; triples needing any other outside evaluation are skipped.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::algebra::{AlgebraSpec, Family, GenId, ModuleSpec, Window};
use crate::engine::{solve_bider, BiderQuery, BiderSpace, KeyedSpace, MapKind, ParityChoice, Symmetry};
use crate::error::EngineError;
use crate::index::Parity;
use crate::linalg::{self, SolutionSpace, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionEquation {
    pub triple: [GenId; 3],
    pub output: GenId,
    /// Coefficients of `t_i`.
    pub linear: SparseVec,
    /// Coefficients of `t_i t_j`, `i <= j`.
    pub quadratic: Vec<((usize, usize), Scalar)>,
}

#[derive(Clone, Debug)]
pub struct PostLieObstruction {
    pub nparams: usize,
    pub equations: Vec<ObstructionEquation>,
    pub triples_used: usize,
    pub triples_skipped: usize,
}

impl PostLieObstruction {
    /// True when every quadratic coefficient is exactly zero.
    pub fn quadratic_vanishes(&self) -> bool {
        self.equations.iter().all(|e| e.quadratic.iter().all(|(_, c)| c.is_zero()))
    }

    pub fn linear_system(&self) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.nparams);
        for e in &self.equations {
            m.push_row(e.linear.iter().cloned());
        }
        m
    }

    /// Equations coming from the given triple.
    pub fn from_triple(&self, triple: [GenId; 3]) -> impl Iterator<Item = &ObstructionEquation> {
        self.equations.iter().filter(move |e| e.triple == triple)
    }

    /// Triples owning an equation that alone forces a single parameter to 0.
    pub fn forcing_triples(&self) -> BTreeMap<usize, [GenId; 3]> {
        let mut out = BTreeMap::new();
        for e in &self.equations {
            if e.quadratic.is_empty() && e.linear.len() == 1 {
                out.entry(e.linear[0].0).or_insert(e.triple);
            }
        }
        out
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PostLieStatus {
    /// Quadratic terms vanish identically; `space` solves the linear system.
    Linear,
    /// Some quadratic coefficient is nonzero; nothing is concluded.
    Nonlinear,
}

#[derive(Clone, Debug)]
pub struct PostLieResult {
    pub bider: BiderSpace,
    pub obstruction: PostLieObstruction,
    pub status: PostLieStatus,
    /// Surviving parameters `t`, when linear.
    pub params: Option<SolutionSpace>,
    /// Surviving products restricted to interior inputs, when linear.
    pub interior: Option<KeyedSpace>,
}

impl PostLieResult {
    pub fn dim(&self) -> Option<usize> {
        self.interior.as_ref().map(KeyedSpace::dim)
    }
}

type Table = HashMap<(GenId, GenId), Vec<(usize, GenId, Scalar)>>;

struct Evaluator {
    n: crate::index::HalfInt,
    table: Table,
    support: BTreeSet<(Family, Family)>,
}

impl Evaluator {
    /// `ψ_i(u, v)` for all `i`, or `None` when unknown.
    fn eval(&self, u: GenId, v: GenId) -> Option<&[(usize, GenId, Scalar)]> {
        if u.index.abs() <= self.n && v.index.abs() <= self.n {
            return Some(self.table.get(&(u, v)).map_or(&[], Vec::as_slice));
        }
        if self.support.contains(&(u.family, v.family)) {
            None
        } else {
            Some(&[])
        }
    }
}

pub fn postlie_obstruction(space: &BiderSpace, alg: &AlgebraSpec) -> Result<PostLieObstruction, EngineError> {
    if space.kind != MapKind::Bider(Symmetry::Symmetric) {
        return Err(EngineError::NotSymmetric);
    }
    let raw = space.raw();
    let nparams = raw.dim();
    let mut table: Table = HashMap::new();
    let mut support = BTreeSet::new();
    for (i, v) in raw.basis().iter().enumerate() {
        for (c, x) in v {
            let k = space.keys()[*c];
            let y = k.y.expect("bilinear key");
            table.entry((k.x, y)).or_default().push((i, k.out, x.clone()));
            support.insert((k.x.family, y.family));
        }
    }
    let ev = Evaluator { n: space.window.n, table, support };
    let gens = alg.generators(space.window.n);
    let mut equations = Vec::new();
    let (mut used, mut skipped) = (0, 0);
    if nparams == 0 {
        return Ok(PostLieObstruction { nparams, equations, triples_used: 0, triples_skipped: 0 });
    }
    for &x in &gens {
        for &y in &gens {
            let bxy = alg.bracket_gens(x, y)?;
            let sign = (alg.parity(x)? * alg.parity(y)?).sign_scalar();
            for &z in &gens {
                match triple_equations(&ev, [x, y, z], &bxy, &sign)? {
                    Some(eqs) => {
                        used += 1;
                        equations.extend(eqs);
                    }
                    None => skipped += 1,
                }
            }
        }
    }
    Ok(PostLieObstruction { nparams, equations, triples_used: used, triples_skipped: skipped })
}

#[derive(Default)]
struct Poly {
    linear: BTreeMap<usize, Scalar>,
    quadratic: BTreeMap<(usize, usize), Scalar>,
}

/// Equations for one triple, or `None` when an evaluation is unknown.
fn triple_equations(
    ev: &Evaluator,
    [x, y, z]: [GenId; 3],
    bxy: &[(GenId, Scalar)],
    sign: &Scalar,
) -> Result<Option<Vec<ObstructionEquation>>, EngineError> {
    let mut acc: BTreeMap<GenId, Poly> = BTreeMap::new();
    // [x,y]∘z
    for (u, c) in bxy {
        let Some(vals) = ev.eval(*u, z) else { return Ok(None) };
        for (i, w, a) in vals {
            *acc.entry(*w).or_default().linear.entry(*i).or_default() += &(c * a);
        }
    }
    // -x∘(y∘z) + sign y∘(x∘z)
    for (outer, inner, coef) in [(x, y, -Scalar::one()), (y, x, sign.clone())] {
        let Some(first) = ev.eval(inner, z) else { return Ok(None) };
        for (j, w, a) in first {
            let Some(second) = ev.eval(outer, *w) else { return Ok(None) };
            for (i, g, b) in second {
                let key = if i <= j { (*i, *j) } else { (*j, *i) };
                *acc.entry(*g).or_default().quadratic.entry(key).or_default() += &(&coef * &(a * b));
            }
        }
    }
    let mut out = Vec::new();
    for (output, p) in acc {
        let linear: SparseVec = p.linear.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let quadratic: Vec<_> = p.quadratic.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if !linear.is_empty() || !quadratic.is_empty() {
            out.push(ObstructionEquation { triple: [x, y, z], output, linear, quadratic });
        }
    }
    Ok(Some(out))
}

/// Symmetric adjoint biderivations of both parities followed by the
/// post-Lie obstruction.
pub fn solve_postlie(alg: &AlgebraSpec, window: Window) -> Result<PostLieResult, EngineError> {
    let adj = ModuleSpec::adjoint(alg);
    let bider = solve_bider(&BiderQuery::new(&adj, ParityChoice::Both, Symmetry::Symmetric, window))?;
    let obstruction = postlie_obstruction(&bider, alg)?;
    if !obstruction.quadratic_vanishes() {
        return Ok(PostLieResult { bider, obstruction, status: PostLieStatus::Nonlinear, params: None, interior: None });
    }
    let params = linalg::nullspace(&obstruction.linear_system());
    let raw = bider.raw();
    let products = params.basis().iter().map(|t| {
        let mut v: SparseVec = Vec::new();
        for (i, ti) in t {
            v = linalg::axpy(&v, ti, &raw.basis()[*i]);
        }
        v
    });
    let image = SolutionSpace::span(bider.keys().len(), products);
    let interior = bider.project_interior(&image);
    Ok(PostLieResult { bider, obstruction, status: PostLieStatus::Linear, params: Some(params), interior: Some(interior) })
}

/// Parities of the basis maps carrying support, for reporting.
pub fn parities_of(space: &KeyedSpace) -> BTreeSet<Parity> {
    space.basis_entries().iter().flat_map(|v| v.iter().map(|(k, _)| k.parity)).collect()
}
