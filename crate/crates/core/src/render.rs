//! Human-readable forms of computed maps. Each component (input families,
//! output family, shift) of a basis vector is fitted by the lowest-degree
//! exact polynomial in the input indices, then printed as e.g.
//! `(m-n) v_{m+n}` or `δ_{m+n+k,0} C`.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::algebra::ModuleSpec;
use crate::engine::{KeyedSpace, UnknownKey};
use crate::index::{HalfInt, Parity};
use crate::linalg::{PivotRule, Rref};
use crate::scalar::Scalar;

const MAX_DEGREE: u32 = 3;

/// A polynomial over named variables; terms in display order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<&'static str>,
    terms: Vec<(Vec<u32>, Scalar)>,
}

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in monomials(nvars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn eval_monomial(exps: &[u32], point: &[Scalar]) -> Scalar {
    exps.iter().zip(point).fold(Scalar::one(), |acc, (e, x)| acc * x.pow(*e))
}

impl Poly {
    /// Lowest-degree polynomial through all points, if one of degree at
    /// most 3 exists. Underdetermined coefficients are set to zero.
    pub fn fit(vars: Vec<&'static str>, points: &[(Vec<Scalar>, Scalar)]) -> Option<Poly> {
        for degree in 0..=MAX_DEGREE {
            let monos: Vec<Vec<u32>> = (0..=degree).rev().flat_map(|d| monomials(vars.len(), d)).collect();
            let rhs = monos.len();
            let mut rref = Rref::new(rhs + 1, PivotRule::Leading);
            for (pt, value) in points {
                let mut row: Vec<(usize, Scalar)> = monos
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (i, eval_monomial(e, pt)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                if !value.is_zero() {
                    row.push((rhs, value.clone()));
                }
                rref.insert(&row);
            }
            let rows = rref.rows_by_pivot();
            if rows.iter().any(|r| r[0].0 == rhs) {
                continue;
            }
            let terms = rows
                .iter()
                .filter_map(|r| {
                    let c = r.iter().find(|(c, _)| *c == rhs)?.1.clone();
                    Some((monos[r[0].0].clone(), c))
                })
                .collect::<BTreeMap<_, _>>();
            let terms = monos.iter().filter_map(|m| terms.get(m).map(|c| (m.clone(), c.clone()))).collect();
            return Some(Poly { vars, terms });
        }
        None
    }

    pub fn terms(&self) -> &[(Vec<u32>, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, (e, c)| acc + c * eval_monomial(e, point))
    }

    /// Coefficient of the first displayed term.
    pub fn leading(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn scaled(&self, c: &Scalar) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// A nonzero constant, if the polynomial is one.
    pub fn constant(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [(e, c)] if e.iter().all(|x| *x == 0) => Some(c),
            _ => None,
        }
    }
}

fn monomial_text(vars: &[&str], exps: &[u32]) -> String {
    let mut s = String::new();
    for (v, e) in vars.iter().zip(exps) {
        match e {
            0 => {}
            1 => s.push_str(v),
            _ => {
                let _ = write!(s, "{v}^{e}");
            }
        }
    }
    s
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let (num, den) = c.abs().parts();
            let mono = monomial_text(&self.vars, e);
            if mono.is_empty() {
                let _ = write!(out, "{}", c.abs());
            } else {
                if num != 1.into() {
                    let _ = write!(out, "{num}");
                }
                out.push_str(&mono);
                if den != 1.into() {
                    let _ = write!(out, "/{den}");
                }
            }
        }
        f.write_str(&out)
    }
}

/// `base` followed by a signed shift, e.g. `m+n-1`.
fn index_text(base: &str, shift: Option<HalfInt>) -> String {
    match shift {
        None => format!("{base}+k"),
        Some(k) if k == HalfInt::ZERO => base.to_string(),
        Some(k) if k.doubled() < 0 => format!("{base}{k}"),
        Some(k) => format!("{base}+{k}"),
    }
}

/// Rule text of one component: coefficient polynomial times the output.
pub fn rule_text(poly: &Poly, output: &str, central: bool, arity: usize, shift: Option<HalfInt>) -> String {
    let base = if arity == 2 { "m+n" } else { "m" };
    let idx = index_text(base, shift);
    let target = if central { format!("δ_{{{idx},0}} {output}") } else { format!("{output}_{{{idx}}}") };
    match poly.constant() {
        Some(c) if c.is_one() => target,
        Some(c) if (-c).is_one() => format!("-{target}"),
        Some(c) => format!("{c} {target}"),
        None if poly.terms.len() == 1 && poly.terms[0].1.is_one() => format!("{poly} {target}"),
        None => format!("({poly}) {target}"),
    }
}

/// Component of a basis vector on one (inputs, output, shift) family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub parity: Parity,
    pub pair: String,
    pub output_family: String,
    pub k: HalfInt,
    pub central: bool,
    /// Fitted polynomial; `None` when no fit of degree at most 3 exists.
    pub poly: Option<Poly>,
    pub rule: String,
    /// `(input indices, coefficient)` at every key of the component,
    /// zeros included.
    pub table: Vec<(Vec<HalfInt>, Scalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedVector {
    pub components: Vec<Component>,
}

type GroupKey = (Parity, HalfInt, &'static str, Option<&'static str>, &'static str);

fn group_key(k: &UnknownKey) -> GroupKey {
    (k.parity, k.shift, k.x.family, k.y.map(|y| y.family), k.out.family)
}

fn variables(arity: usize, central: bool, with_k: bool) -> Vec<&'static str> {
    let mut v = if arity == 2 && !central { vec!["m", "n"] } else { vec!["m"] };
    if with_k {
        v.push("k");
    }
    v
}

fn sample_point(key_indices: &[HalfInt], central: bool, k: Option<HalfInt>) -> Vec<Scalar> {
    let mut p: Vec<Scalar> = if central { vec![key_indices[0].to_scalar()] } else { key_indices.iter().map(|i| i.to_scalar()).collect() };
    if let Some(k) = k {
        p.push(k.to_scalar());
    }
    p
}

/// Renders every basis vector of `space`. Vectors are rescaled so the first
/// component's leading coefficient is 1; `central` names the output
/// families that only live at index 0.
pub fn render_basis(space: &KeyedSpace, central: &dyn Fn(&str) -> bool) -> Vec<RenderedVector> {
    // every key of a group, so that zero coefficients constrain the fit too
    let mut all: BTreeMap<GroupKey, Vec<Vec<HalfInt>>> = BTreeMap::new();
    for key in space.keys() {
        all.entry(group_key(key)).or_default().push(indices(key));
    }
    space
        .basis_entries()
        .into_iter()
        .map(|entries| {
            let mut groups: BTreeMap<GroupKey, Vec<(Vec<HalfInt>, Scalar)>> = BTreeMap::new();
            for (key, c) in entries {
                groups.entry(group_key(&key)).or_default().push((indices(&key), c));
            }
            let mut comps: Vec<Component> = groups
                .into_iter()
                .map(|(gk, table)| {
                    let (parity, k, x, y, out) = gk;
                    let arity = if y.is_some() { 2 } else { 1 };
                    let is_central = central(out);
                    let table: Vec<(Vec<HalfInt>, Scalar)> = all[&gk]
                        .iter()
                        .map(|i| {
                            let c = table.iter().find(|(j, _)| j == i).map_or_else(Scalar::zero, |t| t.1.clone());
                            (i.clone(), c)
                        })
                        .collect();
                    let points: Vec<(Vec<Scalar>, Scalar)> =
                        table.iter().map(|(i, c)| (sample_point(i, is_central, None), c.clone())).collect();
                    let poly = Poly::fit(variables(arity, is_central, false), &points);
                    Component {
                        parity,
                        pair: match y {
                            Some(y) => format!("{x},{y}"),
                            None => x.to_string(),
                        },
                        output_family: out.to_string(),
                        k,
                        central: is_central,
                        poly,
                        rule: String::new(),
                        table,
                    }
                })
                .collect();
            let scale = comps
                .iter()
                .find_map(|c| c.poly.as_ref().and_then(|p| p.leading().cloned()))
                .or_else(|| comps.first().and_then(|c| c.table.iter().find(|t| !t.1.is_zero()).map(|t| t.1.clone())))
                .map(|s| s.recip())
                .unwrap_or_else(Scalar::one);
            for c in &mut comps {
                for t in &mut c.table {
                    t.1 = &t.1 * &scale;
                }
                c.poly = c.poly.as_ref().map(|p| p.scaled(&scale));
                let arity = if c.pair.contains(',') { 2 } else { 1 };
                c.rule = match &c.poly {
                    Some(p) => rule_text(p, &c.output_family, c.central, arity, Some(c.k)),
                    None => format!("{} {}", table_text(&c.table), c.output_family),
                };
            }
            RenderedVector { components: comps }
        })
        .collect()
}

fn indices(key: &UnknownKey) -> Vec<HalfInt> {
    match key.y {
        Some(y) => vec![key.x.index, y.index],
        None => vec![key.x.index],
    }
}

/// [`render_basis`] with central families read off the module.
pub fn render_for(space: &KeyedSpace, module: &ModuleSpec) -> Vec<RenderedVector> {
    render_basis(space, &|f| module.table().get(f).is_some_and(|i| i.central))
}

fn table_text(table: &[(Vec<HalfInt>, Scalar)]) -> String {
    let cells: Vec<String> = table
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let idx: Vec<String> = i.iter().map(|x| x.to_string()).collect();
            format!("({}):{c}", idx.join(","))
        })
        .collect();
    format!("{{{}}}", cells.join(" "))
}

/// A rule holding for every shift at once, e.g. `(m+n+k) v_{m+n+k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyForm {
    pub parity: Parity,
    pub pair: String,
    pub output_family: String,
    pub rule: String,
}

/// Family forms across shifts, for parities with vectors on at least two
/// shifts. `None` unless every vector lives on a single shift, each
/// (parity, shift) carries at most one vector and all vectors of a parity
/// share the same component pattern.
pub fn family_forms(vectors: &[RenderedVector]) -> Option<Vec<FamilyForm>> {
    let mut by_parity: BTreeMap<Parity, Vec<&RenderedVector>> = BTreeMap::new();
    for v in vectors {
        let first = v.components.first()?;
        if v.components.iter().any(|c| c.k != first.k || c.parity != first.parity) {
            return None;
        }
        by_parity.entry(first.parity).or_default().push(v);
    }
    let mut out = Vec::new();
    for (parity, vs) in by_parity {
        let mut shifts: Vec<HalfInt> = vs.iter().map(|v| v.components[0].k).collect();
        shifts.sort();
        if shifts.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        if shifts.len() < 2 {
            continue;
        }
        let pattern = |v: &RenderedVector| -> Vec<(String, String)> {
            v.components.iter().map(|c| (c.pair.clone(), c.output_family.clone())).collect()
        };
        let p0 = pattern(vs[0]);
        if vs.iter().any(|v| pattern(v) != p0) {
            return None;
        }
        for (i, (pair, outf)) in p0.iter().enumerate() {
            let c0 = &vs[0].components[i];
            let arity = if pair.contains(',') { 2 } else { 1 };
            let mut points = Vec::new();
            for v in &vs {
                let c = &v.components[i];
                for (idx, x) in &c.table {
                    points.push((sample_point(idx, c.central, Some(c.k)), x.clone()));
                }
            }
            let poly = Poly::fit(variables(arity, c0.central, true), &points)?;
            out.push(FamilyForm {
                parity,
                pair: pair.clone(),
                output_family: outf.clone(),
                rule: rule_text(&poly, outf, c0.central, arity, None),
            });
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Window;
    use crate::catalog;
    use crate::engine::{solve_bider, BiderQuery, ParityChoice, Symmetry};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn fits_lowest_degree() {
        let pts: Vec<_> = (-2..=2)
            .flat_map(|m| (-2..=2).map(move |n| (vec![s(m), s(n)], s(m - n))))
            .collect();
        let p = Poly::fit(vec!["m", "n"], &pts).unwrap();
        assert_eq!(p.to_string(), "m-n");
        let cubic: Vec<_> = (-3..=3).map(|m| (vec![s(m)], Scalar::frac(m * m * m - m, 12))).collect();
        let p = Poly::fit(vec!["m"], &cubic).unwrap();
        assert_eq!(p.to_string(), "m^3/12-m/12");
    }

    #[test]
    fn no_fit_beyond_cubic() {
        let pts: Vec<_> = (-3..=3).map(|m| (vec![s(m)], s(m.pow(4)))).collect();
        assert!(Poly::fit(vec!["m"], &pts).is_none());
    }

    #[test]
    fn rule_strings() {
        let one = Poly { vars: vec!["m", "n"], terms: vec![(vec![0, 0], s(1))] };
        assert_eq!(rule_text(&one, "H", false, 2, None), "H_{m+n+k}");
        assert_eq!(rule_text(&one, "v", false, 2, Some(HalfInt::from_int(-1))), "v_{m+n-1}");
        assert_eq!(rule_text(&one, "C", true, 2, Some(HalfInt::ZERO)), "δ_{m+n,0} C");
        let p = Poly { vars: vec!["m", "n", "k"], terms: vec![(vec![1, 0, 0], s(1)), (vec![0, 1, 0], s(1)), (vec![0, 0, 1], s(1))] };
        assert_eq!(rule_text(&p, "v", false, 2, None), "(m+n+k) v_{m+n+k}");
        let half = Poly { vars: vec!["m", "n"], terms: vec![(vec![1, 0], Scalar::frac(1, 2)), (vec![0, 1], s(-1))] };
        assert_eq!(rule_text(&half, "J", false, 2, Some(HalfInt::from_doubled(1))), "(m/2-n) J_{m+n+1/2}");
    }

    fn win(n: i64, k: i64) -> Window {
        Window::with_default_interior(HalfInt::from_int(n), HalfInt::from_int(k)).unwrap()
    }

    #[test]
    fn skew_family_of_f_minus_one() {
        let m = catalog::density_f(&catalog::virasoro(), s(-1));
        let sp = solve_bider(&BiderQuery::new(&m, ParityChoice::Even, Symmetry::Skew, win(6, 2))).unwrap();
        let r = render_for(&sp.interior(), &m);
        assert_eq!(r.len(), 1);
        let rules: Vec<&str> = r[0].components.iter().map(|c| c.rule.as_str()).collect();
        assert_eq!(rules, ["(m-n) v_{m+n}"]);
    }

    #[test]
    fn symmetric_family_across_shifts() {
        let m = catalog::density_f(&catalog::virasoro(), s(1));
        let sp = solve_bider(&BiderQuery::new(&m, ParityChoice::Even, Symmetry::Symmetric, win(6, 2))).unwrap();
        let r = render_for(&sp.interior(), &m);
        assert_eq!(r.len(), 5);
        let f = family_forms(&r).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].rule, "(m+n+k) v_{m+n+k}");
        let adj = catalog::adjoint_module(&catalog::hv_super());
        let sp = solve_bider(&BiderQuery::new(&adj, ParityChoice::Both, Symmetry::Symmetric, win(5, 2))).unwrap();
        let f = family_forms(&render_for(&sp.interior(), &adj)).unwrap();
        let got: Vec<(&str, &str)> = f.iter().map(|x| (x.pair.as_str(), x.rule.as_str())).collect();
        assert_eq!(got, [("L,L", "H_{m+n+k}")]);
    }

    // W(0,1) has φ(I_0, I_0) = C and nothing else on (I, I); zero entries
    // must stop this reading as δ_{m+n,0} C for every m.
    #[test]
    fn single_point_component_is_a_table() {
        let alg = catalog::w0b(Scalar::one());
        let adj = catalog::adjoint_module(&alg);
        let sp = solve_bider(&BiderQuery::new(&adj, ParityChoice::Even, Symmetry::Symmetric, win(6, 2))).unwrap();
        let r = render_for(&sp.interior(), &adj);
        let ii: Vec<&Component> = r.iter().flat_map(|v| &v.components).filter(|c| c.pair == "I,I").collect();
        assert_eq!(ii.len(), 1);
        assert_eq!(ii[0].rule, "{(0,0):1} C");
    }
}
