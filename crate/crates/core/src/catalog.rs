//! Built-in algebras and modules, keyed by name and parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraSpec, Family, FamilyInfo, GenId, Lattice, ModuleSpec, Rule, Terms};
use crate::error::CatalogError;
use crate::index::{HalfInt, Parity};
use crate::scalar::Scalar;

pub const ALGEBRAS: [&str; 7] =
    ["virasoro", "w0b", "svir-ramond", "sw22", "bms3-n1", "n2-ramond", "hv-super"];
pub const MODULES: [&str; 2] = ["density-F", "density-Fsuper"];
/// Names that are recognised but deliberately not built.
pub const RESERVED: [&str; 1] = ["svir-ns"];

/// A catalog name plus its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalogKey {
    pub name: String,
    pub params: BTreeMap<String, Scalar>,
}

impl CatalogKey {
    pub fn new(name: impl Into<String>) -> Self {
        CatalogKey { name: name.into(), params: BTreeMap::new() }
    }

    pub fn with_param(mut self, param: &str, value: Scalar) -> Self {
        self.params.insert(param.to_string(), value);
        self
    }

    /// Shorthand for keys taking a single `b`.
    pub fn with_b(name: &str, b: Scalar) -> Self {
        CatalogKey::new(name).with_param("b", b)
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", ps.join(","))?;
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Algebra,
    Module,
}

/// One row of [`list_catalog`].
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub params: Vec<&'static str>,
    /// For modules, the algebra they are defined over.
    pub over: Option<&'static str>,
    pub families: Vec<FamilyInfo>,
}

fn required_params(name: &str) -> &'static [&'static str] {
    match name {
        "w0b" | "density-F" | "density-Fsuper" => &["b"],
        _ => &[],
    }
}

fn check_params(key: &CatalogKey) -> Result<(), CatalogError> {
    let req = required_params(&key.name);
    for p in req {
        if !key.params.contains_key(*p) {
            return Err(CatalogError::MissingParam { name: key.name.clone(), param: p.to_string() });
        }
    }
    if let Some(extra) = key.params.keys().find(|p| !req.contains(&p.as_str())) {
        return Err(CatalogError::ExtraParam { name: key.name.clone(), param: extra.clone() });
    }
    Ok(())
}

pub fn get_algebra(key: &CatalogKey) -> Result<AlgebraSpec, CatalogError> {
    if RESERVED.contains(&key.name.as_str()) {
        return Err(CatalogError::Reserved(key.name.clone()));
    }
    if !ALGEBRAS.contains(&key.name.as_str()) {
        return Err(CatalogError::UnknownName(key.name.clone()));
    }
    check_params(key)?;
    Ok(match key.name.as_str() {
        "virasoro" => virasoro(),
        "w0b" => w0b(key.params["b"].clone()),
        "svir-ramond" => svir_ramond(),
        "sw22" => sw22(),
        "bms3-n1" => bms3_n1(),
        "n2-ramond" => n2_ramond(),
        "hv-super" => hv_super(),
        _ => unreachable!(),
    })
}

pub fn get_module(key: &CatalogKey, over: &CatalogKey) -> Result<ModuleSpec, CatalogError> {
    if !MODULES.contains(&key.name.as_str()) {
        return Err(CatalogError::UnknownName(key.name.clone()));
    }
    check_params(key)?;
    let b = key.params["b"].clone();
    match (key.name.as_str(), over.name.as_str()) {
        ("density-F", "virasoro") => Ok(density_f(&get_algebra(over)?, b)),
        ("density-Fsuper", "svir-ramond") => Ok(density_fsuper(&get_algebra(over)?, b)),
        _ => Err(CatalogError::UnsupportedPair { module: key.name.clone(), algebra: over.name.clone() }),
    }
}

pub fn adjoint_module(alg: &AlgebraSpec) -> ModuleSpec {
    ModuleSpec::adjoint(alg)
}

/// Every catalog entry in a fixed order: algebras first, then modules.
pub fn list_catalog() -> Vec<CatalogEntry> {
    let zero = Scalar::zero();
    let mut out = Vec::new();
    for name in ALGEBRAS {
        let mut key = CatalogKey::new(name);
        for p in required_params(name) {
            key = key.with_param(p, zero.clone());
        }
        let alg = get_algebra(&key).expect("catalog entry builds");
        out.push(CatalogEntry {
            name,
            kind: EntryKind::Algebra,
            params: required_params(name).to_vec(),
            over: None,
            families: alg.families().to_vec(),
        });
    }
    for (name, over) in [("density-F", "virasoro"), ("density-Fsuper", "svir-ramond")] {
        let m = get_module(&CatalogKey::with_b(name, zero.clone()), &CatalogKey::new(over))
            .expect("catalog entry builds");
        out.push(CatalogEntry {
            name,
            kind: EntryKind::Module,
            params: required_params(name).to_vec(),
            over: Some(over),
            families: m.families().to_vec(),
        });
    }
    out
}

// ---------------------------------------------------------------------------
// rule helpers

#[derive(Default)]
struct Out(Terms);

impl Out {
    fn push(&mut self, family: Family, index: HalfInt, c: Scalar) {
        if !c.is_zero() {
            self.0.push((GenId::new(family, index), c));
        }
    }

    fn central(&mut self, family: Family, sum: HalfInt, c: Scalar) {
        if sum == HalfInt::ZERO {
            self.push(family, HalfInt::ZERO, c);
        }
    }
}

fn s(h: HalfInt) -> Scalar {
    h.to_scalar()
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

/// `(m - n) X_{m+n} + (1/12) δ (m³ - m) Z`
fn vir_like(out: &mut Out, x: Family, z: Family, m: HalfInt, n: HalfInt) {
    out.push(x, m + n, s(m) - s(n));
    out.central(z, m + n, q(1, 12) * (s(m).pow(3) - s(m)));
}

/// `(1/3) δ (r² - 1/4) Z`
fn ramond_central(out: &mut Out, z: Family, r: HalfInt, t: HalfInt) {
    out.central(z, r + t, q(1, 3) * (s(r).pow(2) - q(1, 4)));
}

/// `(m/2 - r)`
fn half_weight(m: HalfInt, r: HalfInt) -> Scalar {
    s(m) * q(1, 2) - s(r)
}

/// Builds a rule from the listed ordered pairs. A pair `(y, x)` that is not
/// listed but whose reverse is, gets `-(-1)^{|x||y|}` times the listed value;
/// everything else brackets to zero.
fn skew_completed<F>(families: &[FamilyInfo], direct: F) -> Rule
where
    F: Fn(GenId, GenId) -> Option<Terms> + Send + Sync + 'static,
{
    let parity: BTreeMap<Family, Parity> = families.iter().map(|f| (f.name, f.parity)).collect();
    Arc::new(move |x: GenId, y: GenId| {
        if let Some(t) = direct(x, y) {
            return t;
        }
        match direct(y, x) {
            Some(t) => {
                let sign = -(parity[x.family] * parity[y.family]).sign_scalar();
                t.into_iter().map(|(g, c)| (g, c * &sign)).collect()
            }
            None => Vec::new(),
        }
    })
}

fn int(name: Family, parity: Parity) -> FamilyInfo {
    FamilyInfo::graded(name, Lattice::Integer, parity)
}

fn half(name: Family, parity: Parity) -> FamilyInfo {
    FamilyInfo::graded(name, Lattice::HalfOdd, parity)
}

fn b_param(b: &Scalar) -> BTreeMap<String, Scalar> {
    BTreeMap::from([("b".to_string(), b.clone())])
}

// ---------------------------------------------------------------------------
// algebras

pub fn virasoro() -> AlgebraSpec {
    use Parity::Even;
    let fams = vec![int("L", Even), FamilyInfo::central("C")];
    let rule = skew_completed(&fams, |x, y| match (x.family, y.family) {
        ("L", "L") => {
            let mut o = Out::default();
            vir_like(&mut o, "L", "C", x.index, y.index);
            Some(o.0)
        }
        _ => None,
    });
    AlgebraSpec::new("virasoro", BTreeMap::new(), fams, rule)
}

/// `W(0,b)`: Virasoro extended by the abelian ideal spanned by `I_n`.
pub fn w0b(b: Scalar) -> AlgebraSpec {
    use Parity::Even;
    let fams = vec![int("L", Even), int("I", Even), FamilyInfo::central("C")];
    let bb = b.clone();
    let rule = skew_completed(&fams, move |x, y| {
        let (m, n) = (x.index, y.index);
        let mut o = Out::default();
        match (x.family, y.family) {
            ("L", "L") => vir_like(&mut o, "L", "C", m, n),
            ("L", "I") => o.push("I", m + n, -(&bb * s(m) + s(n))),
            _ => return None,
        }
        Some(o.0)
    });
    AlgebraSpec::new("w0b", b_param(&b), fams, rule)
}

pub fn svir_ramond() -> AlgebraSpec {
    use Parity::{Even, Odd};
    let fams = vec![int("L", Even), int("G", Odd), FamilyInfo::central("C")];
    let rule = skew_completed(&fams, |x, y| {
        let (m, n) = (x.index, y.index);
        let mut o = Out::default();
        match (x.family, y.family) {
            ("L", "L") => vir_like(&mut o, "L", "C", m, n),
            ("L", "G") => o.push("G", m + n, half_weight(m, n)),
            ("G", "G") => {
                o.push("L", m + n, Scalar::from_int(2));
                ramond_central(&mut o, "C", m, n);
            }
            _ => return None,
        }
        Some(o.0)
    });
    AlgebraSpec::new("svir-ramond", BTreeMap::new(), fams, rule)
}

pub fn sw22() -> AlgebraSpec {
    use Parity::{Even, Odd};
    let fams = vec![
        int("L", Even),
        int("H", Even),
        half("G", Odd),
        half("Q", Odd),
        FamilyInfo::central("C1"),
        FamilyInfo::central("C2"),
    ];
    let rule = skew_completed(&fams, |x, y| {
        let (m, n) = (x.index, y.index);
        let mut o = Out::default();
        match (x.family, y.family) {
            ("L", "L") => vir_like(&mut o, "L", "C1", m, n),
            ("L", "H") => vir_like(&mut o, "H", "C2", m, n),
            ("L", "G") => o.push("G", m + n, half_weight(m, n)),
            ("L", "Q") => o.push("Q", m + n, half_weight(m, n)),
            ("G", "G") => {
                o.push("L", m + n, Scalar::from_int(2));
                ramond_central(&mut o, "C1", m, n);
            }
            ("G", "Q") => {
                o.push("H", m + n, Scalar::from_int(2));
                ramond_central(&mut o, "C2", m, n);
            }
            ("H", "G") => o.push("Q", m + n, half_weight(m, n)),
            _ => return None,
        }
        Some(o.0)
    });
    AlgebraSpec::new("sw22", BTreeMap::new(), fams, rule)
}

pub fn bms3_n1() -> AlgebraSpec {
    use Parity::{Even, Odd};
    let fams = vec![
        int("L", Even),
        int("W", Even),
        half("Q", Odd),
        FamilyInfo::central("C1"),
        FamilyInfo::central("C2"),
    ];
    let rule = skew_completed(&fams, |x, y| {
        let (m, n) = (x.index, y.index);
        let mut o = Out::default();
        match (x.family, y.family) {
            ("L", "L") => vir_like(&mut o, "L", "C1", m, n),
            ("L", "W") => vir_like(&mut o, "W", "C2", m, n),
            ("L", "Q") => o.push("Q", m + n, half_weight(m, n)),
            ("Q", "Q") => {
                o.push("W", m + n, Scalar::from_int(2));
                ramond_central(&mut o, "C2", m, n);
            }
            _ => return None,
        }
        Some(o.0)
    });
    AlgebraSpec::new("bms3-n1", BTreeMap::new(), fams, rule)
}

/// N=2 Ramond algebra. The `[L, L]` central term carries `δ_{m+n,0}` as in
/// every other Virasoro-type bracket here.
pub fn n2_ramond() -> AlgebraSpec {
    use Parity::{Even, Odd};
    let fams =
        vec![int("L", Even), int("H", Even), int("G+", Odd), int("G-", Odd), FamilyInfo::central("C")];
    let rule = skew_completed(&fams, |x, y| {
        let (m, n) = (x.index, y.index);
        let mut o = Out::default();
        match (x.family, y.family) {
            ("L", "L") => vir_like(&mut o, "L", "C", m, n),
            ("H", "H") => o.central("C", m + n, q(1, 3) * s(m)),
            ("L", "H") => o.push("H", m + n, -s(n)),
            ("L", "G+") => o.push("G+", m + n, half_weight(m, n)),
            ("L", "G-") => o.push("G-", m + n, half_weight(m, n)),
            ("H", "G+") => o.push("G+", m + n, Scalar::one()),
            ("H", "G-") => o.push("G-", m + n, -Scalar::one()),
            ("G+", "G-") => {
                o.push("L", m + n, Scalar::from_int(2));
                o.push("H", m + n, s(m) - s(n));
                ramond_central(&mut o, "C", m, n);
            }
            _ => return None,
        }
        Some(o.0)
    });
    AlgebraSpec::new("n2-ramond", BTreeMap::new(), fams, rule)
}

/// Heisenberg–Virasoro superalgebra; `[L_m, G_r] = -r G_{m+r}`.
pub fn hv_super() -> AlgebraSpec {
    use Parity::{Even, Odd};
    let fams = vec![int("L", Even), int("H", Even), half("G", Odd), FamilyInfo::central("C")];
    let rule = skew_completed(&fams, |x, y| {
        let (m, n) = (x.index, y.index);
        let mut o = Out::default();
        match (x.family, y.family) {
            ("L", "L") => vir_like(&mut o, "L", "C", m, n),
            ("L", "H") => o.push("H", m + n, -s(n)),
            ("L", "G") => o.push("G", m + n, -s(n)),
            ("G", "G") => o.push("H", m + n, Scalar::from_int(2)),
            _ => return None,
        }
        Some(o.0)
    });
    AlgebraSpec::new("hv-super", BTreeMap::new(), fams, rule)
}

// ---------------------------------------------------------------------------
// modules

/// `L_m v_i = -(i + bm) v_{m+i}`, `C v_i = 0`.
pub fn density_f(vir: &AlgebraSpec, b: Scalar) -> ModuleSpec {
    let fams = vec![int("v", Parity::Even)];
    let bb = b.clone();
    let rule: Rule = Arc::new(move |x: GenId, v: GenId| {
        let mut o = Out::default();
        if x.family == "L" {
            o.push("v", x.index + v.index, -(s(v.index) + &bb * s(x.index)));
        }
        o.0
    });
    ModuleSpec::new("density-F", b_param(&b), vir.clone(), fams, rule)
}

pub fn density_fsuper(svir: &AlgebraSpec, b: Scalar) -> ModuleSpec {
    let fams = vec![int("I", Parity::Even), int("J", Parity::Odd)];
    let bb = b.clone();
    let rule: Rule = Arc::new(move |x: GenId, v: GenId| {
        let (m, r) = (x.index, v.index);
        let mut o = Out::default();
        match (x.family, v.family) {
            ("L", "I") => o.push("I", m + r, -(s(r) + &bb * s(m))),
            ("L", "J") => o.push("J", m + r, -(s(r) + (&bb + q(1, 2)) * s(m))),
            ("G", "I") => o.push("J", m + r, -(s(r) * q(1, 2) + &bb * s(m))),
            ("G", "J") => o.push("I", m + r, Scalar::from_int(2)),
            _ => {}
        }
        o.0
    });
    ModuleSpec::new("density-Fsuper", b_param(&b), svir.clone(), fams, rule)
}

/// Semidirect product `alg ⋉ module` with the module an abelian ideal. Module
/// families must not clash with algebra family names.
pub fn semidirect(module: &ModuleSpec) -> AlgebraSpec {
    let alg = module.over().clone();
    let mut fams = alg.families().to_vec();
    fams.extend(module.families().iter().cloned());
    let alg_fams: Vec<Family> = alg.families().iter().map(|f| f.name).collect();
    let is_alg = move |g: GenId| alg_fams.contains(&g.family);
    let (arule, mrule) = (alg.rule().clone(), module.rule().clone());
    let parity: BTreeMap<Family, Parity> = fams.iter().map(|f| (f.name, f.parity)).collect();
    let rule: Rule = Arc::new(move |x: GenId, y: GenId| match (is_alg(x), is_alg(y)) {
        (true, true) => arule(x, y),
        (true, false) => mrule(x, y),
        (false, true) => {
            let sign = -(parity[x.family] * parity[y.family]).sign_scalar();
            mrule(y, x).into_iter().map(|(g, c)| (g, c * &sign)).collect()
        }
        (false, false) => Vec::new(),
    });
    AlgebraSpec::new(
        format!("{}⋉{}", alg.name(), module.name()),
        module.params().clone(),
        fams,
        rule,
    )
}
