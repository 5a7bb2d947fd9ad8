//! Graded basis elements and structure-constant specifications.
//!
//! An algebra (or module) is described by a table of generator families and a
//! rule that evaluates the bracket (or action) on a pair of generators. Every
//! rule is degree-additive: each output generator's index is the sum of the
//! input indices, central generators living at index 0.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::index::{HalfInt, Parity};
use crate::scalar::Scalar;

pub type Family = &'static str;

/// A basis generator: a family symbol together with its index.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId {
    pub family: Family,
    pub index: HalfInt,
}

impl GenId {
    pub fn new(family: Family, index: HalfInt) -> Self {
        GenId { family, index }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.index.to_string();
        if idx.len() == 1 {
            write!(f, "{}_{}", self.family, idx)
        } else {
            write!(f, "{}_{{{}}}", self.family, idx)
        }
    }
}

impl fmt::Debug for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Index lattice of a generator family.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// `Z`
    Integer,
    /// `Z + 1/2`
    HalfOdd,
}

impl Lattice {
    pub fn contains(self, index: HalfInt) -> bool {
        match self {
            Lattice::Integer => index.is_integer(),
            Lattice::HalfOdd => !index.is_integer(),
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::Integer => "Z",
            Lattice::HalfOdd => "Z+1/2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInfo {
    pub name: Family,
    pub lattice: Lattice,
    pub parity: Parity,
    /// Central families have the single generator at index 0.
    pub central: bool,
}

impl FamilyInfo {
    pub fn graded(name: Family, lattice: Lattice, parity: Parity) -> Self {
        FamilyInfo { name, lattice, parity, central: false }
    }

    pub fn central(name: Family) -> Self {
        FamilyInfo { name, lattice: Lattice::Integer, parity: Parity::Even, central: true }
    }

    fn admits(&self, index: HalfInt) -> bool {
        if self.central {
            index == HalfInt::ZERO
        } else {
            self.lattice.contains(index)
        }
    }

    /// Generators of this family with `|index| <= bound`, ascending.
    pub fn generators(&self, bound: HalfInt) -> Vec<GenId> {
        if self.central {
            return vec![GenId::new(self.name, HalfInt::ZERO)];
        }
        HalfInt::lattice_points(bound, self.lattice == Lattice::HalfOdd)
            .map(|i| GenId::new(self.name, i))
            .collect()
    }
}

/// Sparse list of `(generator, coefficient)` pairs returned by rules.
pub type Terms = Vec<(GenId, Scalar)>;

/// A bracket or action rule on generators.
pub type Rule = Arc<dyn Fn(GenId, GenId) -> Terms + Send + Sync>;

/// Anything that can name an index: integers, `HalfInt`, or a literal such
/// as `"3/2"`.
pub trait IntoIndex {
    fn into_index(self) -> HalfInt;
}

impl IntoIndex for HalfInt {
    fn into_index(self) -> HalfInt {
        self
    }
}

impl IntoIndex for i64 {
    fn into_index(self) -> HalfInt {
        HalfInt::from_int(self)
    }
}

impl IntoIndex for i32 {
    fn into_index(self) -> HalfInt {
        HalfInt::from_int(self as i64)
    }
}

impl IntoIndex for &str {
    fn into_index(self) -> HalfInt {
        self.parse().unwrap_or_else(|e| panic!("{e}"))
    }
}

/// Family table shared by algebra and module specs.
#[derive(Clone, Debug)]
pub struct FamilyTable {
    owner: String,
    families: Vec<FamilyInfo>,
}

impl FamilyTable {
    pub fn new(owner: impl Into<String>, families: Vec<FamilyInfo>) -> Self {
        FamilyTable { owner: owner.into(), families }
    }

    pub fn families(&self) -> &[FamilyInfo] {
        &self.families
    }

    pub fn get(&self, name: &str) -> Option<&FamilyInfo> {
        self.families.iter().find(|f| f.name == name)
    }

    /// Looks up the family of `g` and checks the index lies on its lattice.
    pub fn info(&self, g: GenId) -> Result<&FamilyInfo, AlgebraError> {
        let info = self.get(g.family).ok_or_else(|| AlgebraError::UnknownFamily {
            spec: self.owner.clone(),
            family: g.family.to_string(),
        })?;
        if !info.admits(g.index) {
            return Err(AlgebraError::OffLattice { spec: self.owner.clone(), gen: g });
        }
        Ok(info)
    }

    pub fn parity(&self, g: GenId) -> Result<Parity, AlgebraError> {
        self.info(g).map(|i| i.parity)
    }

    pub fn is_central(&self, g: GenId) -> bool {
        self.get(g.family).is_some_and(|f| f.central)
    }

    /// All generators with `|index| <= bound`, in table order then by index.
    pub fn generators(&self, bound: HalfInt) -> Vec<GenId> {
        self.families.iter().flat_map(|f| f.generators(bound)).collect()
    }

    pub fn gen(&self, family: &str, index: impl IntoIndex) -> GenId {
        let info = self
            .get(family)
            .unwrap_or_else(|| panic!("`{}` has no family `{family}`", self.owner));
        GenId::new(info.name, index.into_index())
    }
}

/// A homogeneous element: a sparse rational combination of generators of one
/// parity. The zero element compares equal whatever parity it carries.
#[derive(Clone)]
pub struct Element {
    terms: BTreeMap<GenId, Scalar>,
    parity: Parity,
}

impl Element {
    pub fn zero(parity: Parity) -> Self {
        Element { terms: BTreeMap::new(), parity }
    }

    /// Builds an element from raw terms, merging duplicates and dropping zeros.
    /// The caller vouches that every generator has parity `parity`.
    pub fn from_terms(terms: impl IntoIterator<Item = (GenId, Scalar)>, parity: Parity) -> Self {
        let mut e = Element::zero(parity);
        for (g, c) in terms {
            e.add_term(g, &c);
        }
        e
    }

    pub fn add_term(&mut self, g: GenId, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: GenId) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GenId, &Scalar)> + '_ {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(self.parity);
        }
        Element {
            terms: self.terms.iter().map(|(g, v)| (*g, v * c)).collect(),
            parity: self.parity,
        }
    }

    /// `self + c * other`.
    ///
    /// # Panics
    /// Panics when both summands are nonzero and of different parity.
    pub fn add_scaled(&self, c: &Scalar, other: &Element) -> Element {
        if other.is_zero() || c.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.scale(c);
        }
        assert_eq!(self.parity, other.parity, "sum of elements of different parity");
        let mut out = self.clone();
        for (g, v) in &other.terms {
            out.add_term(*g, &(v * c));
        }
        out
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.terms.is_empty() || self.parity == other.parity)
    }
}

impl Eq for Element {}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "({c})·{g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Z-graded Lie superalgebra given by structure constants.
#[derive(Clone)]
pub struct AlgebraSpec {
    name: String,
    params: BTreeMap<String, Scalar>,
    table: FamilyTable,
    rule: Rule,
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("families", &self.table.families)
            .finish()
    }
}

impl AlgebraSpec {
    pub fn new(
        name: impl Into<String>,
        params: BTreeMap<String, Scalar>,
        families: Vec<FamilyInfo>,
        rule: Rule,
    ) -> Self {
        let name = name.into();
        AlgebraSpec { table: FamilyTable::new(name.clone(), families), name, params, rule }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, Scalar> {
        &self.params
    }

    pub fn table(&self) -> &FamilyTable {
        &self.table
    }

    pub fn families(&self) -> &[FamilyInfo] {
        self.table.families()
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn parity(&self, g: GenId) -> Result<Parity, AlgebraError> {
        self.table.parity(g)
    }

    pub fn gen(&self, family: &str, index: impl IntoIndex) -> GenId {
        self.table.gen(family, index)
    }

    pub fn generators(&self, bound: HalfInt) -> Vec<GenId> {
        self.table.generators(bound)
    }

    /// Element `c * g` with `g` validated against the family table.
    pub fn element(&self, terms: &[(GenId, Scalar)]) -> Result<Element, AlgebraError> {
        let mut parity = None;
        for (g, _) in terms {
            let p = self.parity(*g)?;
            assert!(parity.is_none_or(|q| q == p), "inhomogeneous element");
            parity = Some(p);
        }
        Ok(Element::from_terms(terms.iter().cloned(), parity.unwrap_or_default()))
    }

    pub fn basis(&self, g: GenId) -> Result<Element, AlgebraError> {
        self.element(&[(g, Scalar::one())])
    }

    /// Bracket of two generators.
    pub fn bracket_gens(&self, x: GenId, y: GenId) -> Result<Terms, AlgebraError> {
        self.table.info(x)?;
        self.table.info(y)?;
        Ok((self.rule)(x, y))
    }

    /// Bilinear extension of the bracket rule.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        let mut out = Element::zero(x.parity() + y.parity());
        for (gx, cx) in x.terms() {
            for (gy, cy) in y.terms() {
                let c = cx * cy;
                for (g, v) in self.bracket_gens(gx, gy)? {
                    out.add_term(g, &(&v * &c));
                }
            }
        }
        Ok(out)
    }
}

/// A graded module over an [`AlgebraSpec`], given by an action rule.
#[derive(Clone)]
pub struct ModuleSpec {
    name: String,
    params: BTreeMap<String, Scalar>,
    over: AlgebraSpec,
    table: FamilyTable,
    rule: Rule,
    adjoint: bool,
}

impl fmt::Debug for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleSpec")
            .field("name", &self.name)
            .field("over", &self.over.name)
            .field("params", &self.params)
            .field("families", &self.table.families)
            .finish()
    }
}

impl ModuleSpec {
    pub fn new(
        name: impl Into<String>,
        params: BTreeMap<String, Scalar>,
        over: AlgebraSpec,
        families: Vec<FamilyInfo>,
        rule: Rule,
    ) -> Self {
        let name = name.into();
        ModuleSpec {
            table: FamilyTable::new(name.clone(), families),
            name,
            params,
            over,
            rule,
            adjoint: false,
        }
    }

    /// The adjoint module: the algebra acting on itself by the bracket.
    pub fn adjoint(alg: &AlgebraSpec) -> Self {
        ModuleSpec {
            name: format!("adjoint({})", alg.name),
            params: alg.params.clone(),
            over: alg.clone(),
            table: FamilyTable::new(alg.name.clone(), alg.families().to_vec()),
            rule: alg.rule.clone(),
            adjoint: true,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, Scalar> {
        &self.params
    }

    pub fn over(&self) -> &AlgebraSpec {
        &self.over
    }

    pub fn is_adjoint(&self) -> bool {
        self.adjoint
    }

    pub fn table(&self) -> &FamilyTable {
        &self.table
    }

    pub fn families(&self) -> &[FamilyInfo] {
        self.table.families()
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn gen(&self, family: &str, index: impl IntoIndex) -> GenId {
        self.table.gen(family, index)
    }

    pub fn element(&self, terms: &[(GenId, Scalar)]) -> Result<Element, AlgebraError> {
        let mut parity = None;
        for (g, _) in terms {
            let p = self.table.parity(*g)?;
            assert!(parity.is_none_or(|q| q == p), "inhomogeneous element");
            parity = Some(p);
        }
        Ok(Element::from_terms(terms.iter().cloned(), parity.unwrap_or_default()))
    }

    pub fn act_gens(&self, x: GenId, v: GenId) -> Result<Terms, AlgebraError> {
        self.over.table.info(x)?;
        self.table.info(v)?;
        Ok((self.rule)(x, v))
    }

    /// Bilinear extension of the action rule.
    pub fn act(&self, x: &Element, v: &Element) -> Result<Element, AlgebraError> {
        let mut out = Element::zero(x.parity() + v.parity());
        for (gx, cx) in x.terms() {
            for (gv, cv) in v.terms() {
                let c = cx * cv;
                for (g, w) in self.act_gens(gx, gv)? {
                    out.add_term(g, &(&w * &c));
                }
            }
        }
        Ok(out)
    }
}

/// Finite truncation of the graded problem.
///
/// * `n`: bound on generator indices entering any instantiated identity.
/// * `k`: bound on the degree shift of unknown map components.
/// * `n_int`: interior bound on which results are reported.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub n: HalfInt,
    pub k: HalfInt,
    pub n_int: HalfInt,
}

impl Window {
    pub fn new(n: HalfInt, k: HalfInt, n_int: HalfInt) -> Result<Self, AlgebraError> {
        if k < HalfInt::ZERO {
            return Err(AlgebraError::EmptyWindow(format!("negative shift bound K={k}")));
        }
        if n_int <= HalfInt::ZERO {
            return Err(AlgebraError::EmptyWindow(format!(
                "interior bound N_int={n_int} leaves no interior (N={n}, K={k})"
            )));
        }
        if n_int > n {
            return Err(AlgebraError::EmptyWindow(format!("N_int={n_int} exceeds N={n}")));
        }
        Ok(Window { n, k, n_int })
    }

    /// Window with the default interior `N_int = N - 2K`.
    pub fn with_default_interior(n: HalfInt, k: HalfInt) -> Result<Self, AlgebraError> {
        Window::new(n, k, n - k - k)
    }

    /// Same window with `N` widened by `by`, keeping `K` and `N_int`.
    pub fn widened(self, by: HalfInt) -> Self {
        Window { n: self.n + by, ..self }
    }

    pub fn in_bound(&self, index: HalfInt) -> bool {
        index.abs() <= self.n
    }

    pub fn in_interior(&self, index: HalfInt) -> bool {
        index.abs() <= self.n_int
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} K={} N_int={}", self.n, self.k, self.n_int)
    }
}

/// What a structural check verified.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CheckKind {
    SuperJacobi,
    SuperSkew,
    ModuleAxiom,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::SuperJacobi => "super-jacobi",
            CheckKind::SuperSkew => "super-skew",
            CheckKind::ModuleAxiom => "module-axiom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub gens: Vec<GenId>,
    pub residual: Element,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub kind: CheckKind,
    pub subject: String,
    pub bound: HalfInt,
    pub checked: usize,
    pub failures: usize,
    /// First failing tuple in iteration order.
    pub witness: Option<Witness>,
}

impl CheckReport {
    fn new(kind: CheckKind, subject: &str, bound: HalfInt) -> Self {
        CheckReport { kind, subject: subject.to_string(), bound, checked: 0, failures: 0, witness: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, gens: Vec<GenId>, residual: Element) {
        self.checked += 1;
        if !residual.is_zero() {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(Witness { gens, residual });
            }
        }
    }
}

/// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]]`.
pub fn jacobiator(alg: &AlgebraSpec, x: GenId, y: GenId, z: GenId) -> Result<Element, AlgebraError> {
    let (px, py, pz) = (alg.parity(x)?, alg.parity(y)?, alg.parity(z)?);
    let (ex, ey, ez) = (alg.basis(x)?, alg.basis(y)?, alg.basis(z)?);
    let t1 = alg.bracket(&ex, &alg.bracket(&ey, &ez)?)?;
    let t2 = alg.bracket(&ey, &alg.bracket(&ez, &ex)?)?;
    let t3 = alg.bracket(&ez, &alg.bracket(&ex, &ey)?)?;
    Ok(t1
        .scale(&(px * pz).sign_scalar())
        .add_scaled(&(py * px).sign_scalar(), &t2)
        .add_scaled(&(pz * py).sign_scalar(), &t3))
}

/// Graded Jacobi identity over every generator triple of the window whose
/// intermediate and final brackets stay within `bound`.
pub fn check_super_jacobi(alg: &AlgebraSpec, bound: HalfInt) -> Result<CheckReport, AlgebraError> {
    check_super_jacobi_on(alg, &alg.generators(bound), bound)
}

/// Jacobi check restricted to the given generators (e.g. the even part).
pub fn check_super_jacobi_on(
    alg: &AlgebraSpec,
    gens: &[GenId],
    bound: HalfInt,
) -> Result<CheckReport, AlgebraError> {
    let mut report = CheckReport::new(CheckKind::SuperJacobi, alg.name(), bound);
    let ok = |i: HalfInt| i.abs() <= bound;
    for &x in gens {
        for &y in gens {
            for &z in gens {
                let (a, b, c) = (x.index, y.index, z.index);
                if !(ok(a + b) && ok(b + c) && ok(a + c) && ok(a + b + c)) {
                    continue;
                }
                report.record(vec![x, y, z], jacobiator(alg, x, y, z)?);
            }
        }
    }
    Ok(report)
}

/// `[x,y] + (-1)^{|x||y|}[y,x] = 0` over all in-window generator pairs.
pub fn check_super_skew(alg: &AlgebraSpec, bound: HalfInt) -> Result<CheckReport, AlgebraError> {
    let mut report = CheckReport::new(CheckKind::SuperSkew, alg.name(), bound);
    let gens = alg.generators(bound);
    for &x in &gens {
        for &y in &gens {
            if (x.index + y.index).abs() > bound {
                continue;
            }
            let sign = (alg.parity(x)? * alg.parity(y)?).sign_scalar();
            let xy = alg.bracket(&alg.basis(x)?, &alg.basis(y)?)?;
            let yx = alg.bracket(&alg.basis(y)?, &alg.basis(x)?)?;
            report.record(vec![x, y], xy.add_scaled(&sign, &yx));
        }
    }
    Ok(report)
}

/// `[x,y]·v = x·(y·v) - (-1)^{|x||y|} y·(x·v)` over in-window triples.
pub fn check_module_axiom(module: &ModuleSpec, bound: HalfInt) -> Result<CheckReport, AlgebraError> {
    let alg = module.over();
    let mut report = CheckReport::new(CheckKind::ModuleAxiom, module.name(), bound);
    let gens = alg.generators(bound);
    let vecs = module.table().generators(bound);
    let ok = |i: HalfInt| i.abs() <= bound;
    for &x in &gens {
        for &y in &gens {
            for &v in &vecs {
                let (a, b, c) = (x.index, y.index, v.index);
                if !(ok(a + b) && ok(b + c) && ok(a + c) && ok(a + b + c)) {
                    continue;
                }
                let (ex, ey) = (alg.basis(x)?, alg.basis(y)?);
                let ev = module.element(&[(v, Scalar::one())])?;
                let sign = (alg.parity(x)? * alg.parity(y)?).sign_scalar();
                let lhs = module.act(&alg.bracket(&ex, &ey)?, &ev)?;
                let xyv = module.act(&ex, &module.act(&ey, &ev)?)?;
                let yxv = module.act(&ey, &module.act(&ex, &ev)?)?;
                let residual = lhs.add_scaled(&-Scalar::one(), &xyv).add_scaled(&sign, &yxv);
                report.record(vec![x, y, v], residual);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> AlgebraSpec {
        // Witt algebra: [L_m, L_n] = (m - n) L_{m+n}
        let rule: Rule = Arc::new(|x: GenId, y: GenId| {
            let c = (x.index - y.index).to_scalar();
            if c.is_zero() {
                vec![]
            } else {
                vec![(GenId::new("L", x.index + y.index), c)]
            }
        });
        AlgebraSpec::new(
            "witt",
            BTreeMap::new(),
            vec![FamilyInfo::graded("L", Lattice::Integer, Parity::Even)],
            rule,
        )
    }

    #[test]
    fn unknown_family_and_off_lattice_are_errors() {
        let w = toy();
        let bad = GenId::new("X", HalfInt::ZERO);
        assert!(matches!(
            w.bracket_gens(bad, w.gen("L", 0)),
            Err(AlgebraError::UnknownFamily { .. })
        ));
        let half = GenId::new("L", HalfInt::from_doubled(1));
        assert!(matches!(w.bracket_gens(half, w.gen("L", 0)), Err(AlgebraError::OffLattice { .. })));
    }

    #[test]
    fn zero_element_ignores_parity() {
        assert_eq!(Element::zero(Parity::Even), Element::zero(Parity::Odd));
        let w = toy();
        let e = w.basis(w.gen("L", 1)).unwrap();
        assert_ne!(e, Element::zero(Parity::Even));
        assert!(e.add_scaled(&Scalar::from_int(-1), &e).is_zero());
    }

    #[test]
    fn witt_passes_checks() {
        let w = toy();
        let b = HalfInt::from_int(4);
        assert!(check_super_jacobi(&w, b).unwrap().passed());
        assert!(check_super_skew(&w, b).unwrap().passed());
    }

    #[test]
    fn window_validation() {
        let h = HalfInt::from_int;
        assert!(Window::new(h(6), h(2), h(2)).is_ok());
        assert!(Window::with_default_interior(h(2), h(2)).is_err());
        assert!(Window::new(h(3), h(1), h(4)).is_err());
        assert_eq!(Window::with_default_interior(h(6), h(2)).unwrap().n_int, h(2));
        let half: HalfInt = "11/2".parse().unwrap();
        assert_eq!(Window::with_default_interior(half, h(2)).unwrap().n_int.to_string(), "3/2");
    }
}
