//! Theorem cases: an expected parametric family plus a window experiment,
//! certified by mutual containment on the interior.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{AlgebraSpec, Family, ModuleSpec, Window};
use crate::catalog::{self, CatalogKey};
use crate::engine::postlie::{solve_postlie, PostLieStatus};
use crate::engine::{
    annihilator, solve_bider, solve_centroid, BiderQuery, KeyedSpace, MapSpace, ParityChoice, Symmetry,
    UnknownKey,
};
use crate::error::EngineError;
use crate::index::{HalfInt, Parity};
use crate::linalg::SparseVec;
use crate::scalar::Scalar;

/// Coefficient of one component as a function of `(m, n, k)`; `n` is zero
/// for maps of one argument.
pub type CoeffFn = Arc<dyn Fn(&Scalar, &Scalar, &Scalar) -> Scalar + Send + Sync>;

#[derive(Clone)]
pub struct ComponentRule {
    pub x: Family,
    pub y: Option<Family>,
    pub out: Family,
    pub coeff: CoeffFn,
}

impl ComponentRule {
    pub fn new(
        x: Family,
        y: Option<Family>,
        out: Family,
        coeff: impl Fn(&Scalar, &Scalar, &Scalar) -> Scalar + Send + Sync + 'static,
    ) -> Self {
        ComponentRule { x, y, out, coeff: Arc::new(coeff) }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Shifts {
    /// A single parameter at `k = 0`.
    Zero,
    /// One parameter per shift `|k| <= K`.
    All,
}

/// A parametric family of maps. Components not listed are zero.
#[derive(Clone)]
pub struct ExpectedFamily {
    pub label: String,
    pub parity: Parity,
    pub shifts: Shifts,
    pub rules: Vec<ComponentRule>,
}

impl fmt::Debug for ExpectedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpectedFamily({})", self.label)
    }
}

impl ExpectedFamily {
    /// The family member for shift `k`, evaluated on the given keys.
    pub fn member(&self, keys: &[UnknownKey], k: HalfInt) -> SparseVec {
        let ks = k.to_scalar();
        let zero = Scalar::zero();
        let mut out = Vec::new();
        for (col, key) in keys.iter().enumerate() {
            if key.parity != self.parity || key.shift != k {
                continue;
            }
            let yf = key.y.map(|y| y.family);
            for r in &self.rules {
                if r.x == key.x.family && r.y == yf && r.out == key.out.family {
                    let n = key.y.map_or(zero.clone(), |y| y.index.to_scalar());
                    let c = (r.coeff)(&key.x.index.to_scalar(), &n, &ks);
                    if !c.is_zero() {
                        out.push((col, c));
                    }
                }
            }
        }
        out
    }

    /// Nonzero members for every shift allowed by the window, with their shifts.
    pub fn members(&self, keys: &[UnknownKey], window: &Window) -> Vec<(HalfInt, SparseVec)> {
        let ks: Vec<HalfInt> = match self.shifts {
            Shifts::Zero => vec![HalfInt::ZERO],
            Shifts::All => {
                let d = window.k.doubled();
                (-d..=d).map(HalfInt::from_doubled).collect()
            }
        };
        ks.into_iter().map(|k| (k, self.member(keys, k))).filter(|(_, v)| !v.is_empty()).collect()
    }
}

#[derive(Clone, Debug)]
pub enum Expected {
    Zero,
    Family(ExpectedFamily),
}

impl Expected {
    pub fn label(&self) -> String {
        match self {
            Expected::Zero => "0".to_string(),
            Expected::Family(f) => f.label.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum CaseQuery {
    Centroid { module: ModuleSpec, parity: ParityChoice },
    Bider { module: ModuleSpec, parity: ParityChoice, symmetry: Symmetry },
    PostLie { algebra: AlgebraSpec },
}

impl CaseQuery {
    fn algebra(&self) -> &AlgebraSpec {
        match self {
            CaseQuery::Centroid { module, .. } | CaseQuery::Bider { module, .. } => module.over(),
            CaseQuery::PostLie { algebra } => algebra,
        }
    }

    fn module(&self) -> Option<&ModuleSpec> {
        match self {
            CaseQuery::Centroid { module, .. } | CaseQuery::Bider { module, .. } => Some(module),
            CaseQuery::PostLie { .. } => None,
        }
    }

    fn half_lattice(&self) -> bool {
        let fams = self.algebra().families().iter().chain(self.module().map_or(&[][..], |m| m.families()));
        fams.into_iter().any(|f| f.lattice == crate::algebra::Lattice::HalfOdd)
    }
}

/// One parameter point of a theorem case.
#[derive(Clone, Debug)]
pub struct Sample {
    pub label: String,
    pub query: CaseQuery,
    pub expected: Expected,
    /// Whether the theorem this sample comes from asserts the expectation.
    pub asserted: bool,
    /// Check the module annihilator before asserting (hypothesis of the
    /// skew/centroid factorisation).
    pub needs_trivial_annihilator: bool,
}

#[derive(Clone, Debug)]
pub struct TheoremCase {
    pub id: &'static str,
    pub title: &'static str,
    pub samples: Vec<Sample>,
}

/// Window overrides; unset fields take the per-sample defaults.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct WindowSpec {
    pub n: Option<HalfInt>,
    pub k: Option<HalfInt>,
    pub n_int: Option<HalfInt>,
}

impl WindowSpec {
    /// Default window: `N=6, K=2, N_int=2`, or `N=11/2, N_int=3/2` when a
    /// half-integer lattice is involved.
    pub fn resolve(&self, half_lattice: bool) -> Result<Window, String> {
        let (dn, dk) = if half_lattice { (HalfInt::from_doubled(11), HalfInt::from_int(2)) } else { (HalfInt::from_int(6), HalfInt::from_int(2)) };
        let n = self.n.unwrap_or(dn);
        let k = self.k.unwrap_or(dk);
        let w = match self.n_int {
            Some(ni) => Window::new(n, k, ni),
            None => Window::with_default_interior(n, k),
        };
        w.map_err(|e| e.to_string())
    }

    /// Same overrides with `N` widened by 2 and the interior pinned to what
    /// the unwidened window would use.
    pub fn widened(&self, half_lattice: bool) -> Result<WindowSpec, String> {
        let base = self.resolve(half_lattice)?;
        Ok(WindowSpec { n: Some(base.n + HalfInt::from_int(2)), k: Some(base.k), n_int: Some(base.n_int) })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    WindowTooSmall,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::WindowTooSmall => "window too small",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SampleReport {
    pub label: String,
    pub window: Option<Window>,
    pub expected_label: String,
    pub computed_dim: usize,
    pub expected_dim: usize,
    /// Shifts carrying an expected family member.
    pub expected_shifts: Vec<HalfInt>,
    pub expected_in_computed: bool,
    pub computed_in_expected: bool,
    /// Every expected member satisfies the instantiated rows.
    pub sound: bool,
    pub asserted: bool,
    pub status: Status,
    pub witness: Option<String>,
    pub notes: Vec<String>,
    /// Interior dimension per map parity.
    pub dims_by_parity: BTreeMap<Parity, usize>,
    pub computed: Option<KeyedSpace>,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub case: &'static str,
    pub title: &'static str,
    pub samples: Vec<SampleReport>,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        self.samples.iter().map(|s| s.status).max().unwrap_or(Status::Pass)
    }
}

fn dims_by_parity(space: &KeyedSpace) -> BTreeMap<Parity, usize> {
    let mut out = BTreeMap::new();
    for p in [Parity::Even, Parity::Odd] {
        let d = space.restrict(|k| k.parity == p).dim();
        if space.keys().iter().any(|k| k.parity == p) {
            out.insert(p, d);
        }
    }
    out
}

fn describe(entries: &[(UnknownKey, Scalar)]) -> String {
    let parts: Vec<String> = entries.iter().take(6).map(|(k, c)| format!("{c}·{k}")).collect();
    let more = if entries.len() > 6 { format!(" … ({} terms)", entries.len()) } else { String::new() };
    format!("{}{more}", parts.join(" + "))
}

fn to_entries(space: &KeyedSpace, v: &SparseVec) -> Vec<(UnknownKey, Scalar)> {
    v.iter().map(|(c, x)| (space.keys()[*c], x.clone())).collect()
}

fn compare(
    computed: &KeyedSpace,
    raw: &MapSpace,
    expected: &Expected,
) -> (usize, Vec<HalfInt>, bool, bool, bool, Option<String>) {
    let (members, raw_members) = match expected {
        Expected::Zero => (Vec::new(), Vec::new()),
        Expected::Family(f) => (f.members(computed.keys(), &raw.window), f.members(raw.keys(), &raw.window)),
    };
    let shifts: Vec<HalfInt> = members.iter().map(|(k, _)| *k).collect();
    let exp = KeyedSpace::span(computed.keys().to_vec(), members.into_iter().map(|(_, v)| v));
    let sound = raw_members.iter().all(|(_, v)| raw.satisfies(v));
    let e_in_c = computed.contains_space(&exp).expect("same keys");
    let c_in_e = exp.contains_space(computed).expect("same keys");
    let mut witness = None;
    if let Some(v) = computed.space().first_outside(exp.space()) {
        witness = Some(format!("expected member outside computed space: {}", describe(&to_entries(&exp, v))));
    } else if let Some(v) = exp.space().first_outside(computed.space()) {
        witness = Some(format!("computed map outside expected family: {}", describe(&to_entries(computed, v))));
    } else if let Some((k, _)) = raw_members.iter().find(|(_, v)| !raw.satisfies(v)) {
        witness = Some(format!("expected member at k={k} violates an instantiated row"));
    }
    (exp.dim(), shifts, e_in_c, c_in_e, sound, witness)
}

/// Runs one sample on the window resolved from `spec`.
pub fn verify_sample(sample: &Sample, spec: &WindowSpec) -> Result<SampleReport, EngineError> {
    let mut report = SampleReport {
        label: sample.label.clone(),
        window: None,
        expected_label: sample.expected.label(),
        computed_dim: 0,
        expected_dim: 0,
        expected_shifts: Vec::new(),
        expected_in_computed: false,
        computed_in_expected: false,
        sound: false,
        asserted: sample.asserted,
        status: Status::WindowTooSmall,
        witness: None,
        notes: Vec::new(),
        dims_by_parity: BTreeMap::new(),
        computed: None,
    };
    let window = match spec.resolve(sample.query.half_lattice()) {
        Ok(w) => w,
        Err(e) => {
            report.witness = Some(e);
            return Ok(report);
        }
    };
    report.window = Some(window);
    if sample.needs_trivial_annihilator {
        let module = sample.query.module().expect("module query");
        let z = annihilator(module, &window)?;
        if !z.is_empty() {
            let shown: Vec<String> = z.iter().map(|e| e.to_string()).collect();
            report.notes.push(format!(
                "module annihilator is nonzero on the window ({}); the factorisation hypothesis does not hold, the statement is checked as printed",
                shown.join(", ")
            ));
        }
    }
    let (space, interior) = match &sample.query {
        CaseQuery::Centroid { module, parity } => {
            let s = solve_centroid(module, *parity, window)?;
            let i = s.interior();
            (s, i)
        }
        CaseQuery::Bider { module, parity, symmetry } => {
            let s = solve_bider(&BiderQuery::new(module, *parity, *symmetry, window))?;
            let i = s.interior();
            (s, i)
        }
        CaseQuery::PostLie { algebra } => {
            let r = solve_postlie(algebra, window)?;
            report.notes.push(format!(
                "symmetric biderivations: {}; obstruction triples used {}, skipped {}",
                r.bider.interior().dim(),
                r.obstruction.triples_used,
                r.obstruction.triples_skipped
            ));
            match r.status {
                PostLieStatus::Linear => {
                    let i = r.interior.clone().expect("linear result");
                    (r.bider, i)
                }
                PostLieStatus::Nonlinear => {
                    report.status = Status::Fail;
                    report.witness = Some("quadratic obstruction terms do not vanish; no conclusion".into());
                    return Ok(report);
                }
            }
        }
    };
    let (edim, shifts, e_in_c, c_in_e, sound, witness) = compare(&interior, &space, &sample.expected);
    report.computed_dim = interior.dim();
    report.expected_dim = edim;
    report.expected_shifts = shifts;
    report.expected_in_computed = e_in_c;
    report.computed_in_expected = c_in_e;
    report.sound = sound;
    report.dims_by_parity = dims_by_parity(&interior);
    report.status = if e_in_c && c_in_e && sound && edim == interior.dim() { Status::Pass } else { Status::Fail };
    report.witness = witness;
    if raw_has_boundary_junk(&space) {
        report.notes.push(format!(
            "raw window space has dimension {} against interior {}",
            space.raw_dim(),
            interior.dim()
        ));
    }
    report.computed = Some(interior);
    Ok(report)
}

fn raw_has_boundary_junk(space: &MapSpace) -> bool {
    space.raw_dim() != space.interior().dim()
}

pub fn verify(case: &TheoremCase, spec: &WindowSpec) -> Result<VerificationReport, EngineError> {
    let samples = case
        .samples
        .par_iter()
        .map(|s| verify_sample(s, spec))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerificationReport { case: case.id, title: case.title, samples })
}

pub fn verify_all(spec: &WindowSpec) -> Result<Vec<VerificationReport>, EngineError> {
    theorem_cases().iter().map(|c| verify(c, spec)).collect()
}

// ---------------------------------------------------------------------------
// case table

/// The `b` samples used wherever a case depends on `b`.
pub fn b_samples() -> Vec<Scalar> {
    [(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)].iter().map(|(n, d)| Scalar::frac(*n, *d)).collect()
}

fn sc(x: i64) -> Scalar {
    Scalar::from_int(x)
}

fn alg(name: &str) -> AlgebraSpec {
    catalog::get_algebra(&CatalogKey::new(name)).expect("catalog algebra")
}

fn density_f(b: &Scalar) -> ModuleSpec {
    catalog::density_f(&catalog::virasoro(), b.clone())
}

fn density_fsuper(b: &Scalar) -> ModuleSpec {
    catalog::density_fsuper(&catalog::svir_ramond(), b.clone())
}

fn fam(label: &str, parity: Parity, shifts: Shifts, rules: Vec<ComponentRule>) -> Expected {
    Expected::Family(ExpectedFamily { label: label.into(), parity, shifts, rules })
}

fn sample(label: String, query: CaseQuery, expected: Expected) -> Sample {
    Sample { label, query, expected, asserted: true, needs_trivial_annihilator: false }
}

fn bider(module: ModuleSpec, parity: ParityChoice, symmetry: Symmetry) -> CaseQuery {
    CaseQuery::Bider { module, parity, symmetry }
}

/// `ε(L_m) = v_m`
pub fn epsilon_vir() -> Expected {
    fam("ε: L_m ↦ v_m", Parity::Even, Shifts::Zero, vec![ComponentRule::new("L", None, "v", |_, _, _| sc(1))])
}

/// `ε(L_m) = I_m`, `ε(G_r) = J_r`
pub fn epsilon_svir() -> Expected {
    fam(
        "ε: L_m ↦ I_m, G_r ↦ J_r",
        Parity::Even,
        Shifts::Zero,
        vec![
            ComponentRule::new("L", None, "I", |_, _, _| sc(1)),
            ComponentRule::new("G", None, "J", |_, _, _| sc(1)),
        ],
    )
}

/// `λ (m - n) v_{m+n}`
pub fn skew_vir_family() -> Expected {
    fam(
        "λ(m-n) v_{m+n}",
        Parity::Even,
        Shifts::Zero,
        vec![ComponentRule::new("L", Some("L"), "v", |m, n, _| m - n)],
    )
}

/// `λ ε([x,y])` on SVir.
pub fn skew_svir_family() -> Expected {
    let half = Scalar::frac(1, 2);
    let h2 = half.clone();
    fam(
        "λ ε([x,y])",
        Parity::Even,
        Shifts::Zero,
        vec![
            ComponentRule::new("L", Some("L"), "I", |m, n, _| m - n),
            ComponentRule::new("L", Some("G"), "J", move |m, r, _| m * &half - r),
            ComponentRule::new("G", Some("L"), "J", move |r, m, _| r - m * &h2),
            ComponentRule::new("G", Some("G"), "I", |_, _, _| sc(2)),
        ],
    )
}

/// `μ_k X_{m+n+k}` on the `(L, L)` components.
pub fn shift_family(out: Family) -> Expected {
    fam(
        &format!("μ_k {out}_{{m+n+k}}"),
        Parity::Even,
        Shifts::All,
        vec![ComponentRule::new("L", Some("L"), out, |_, _, _| sc(1))],
    )
}

/// `(m+n+k) μ_k X_{m+n+k}` on the `(L, L)` components.
pub fn weighted_shift_family(out: Family) -> Expected {
    fam(
        &format!("(m+n+k) μ_k {out}_{{m+n+k}}"),
        Parity::Even,
        Shifts::All,
        vec![ComponentRule::new("L", Some("L"), out, |m, n, k| m + n + k)],
    )
}

pub fn theorem_cases() -> Vec<TheoremCase> {
    let bs = b_samples();
    let is = |b: &Scalar, n: i64| *b == sc(n);
    let mut cases = Vec::new();

    cases.push(TheoremCase {
        id: "L3.1",
        title: "centroid of Vir with values in F_b",
        samples: bs
            .iter()
            .map(|b| {
                let exp = if is(b, -1) { epsilon_vir() } else { Expected::Zero };
                let q = CaseQuery::Centroid { module: density_f(b), parity: ParityChoice::Even };
                sample(format!("b={b}"), q, exp)
            })
            .collect(),
    });

    cases.push(TheoremCase {
        id: "T3.2",
        title: "skew-symmetric biderivations Vir × Vir → F_b",
        samples: bs
            .iter()
            .map(|b| {
                let exp = if is(b, -1) { skew_vir_family() } else { Expected::Zero };
                let q = bider(density_f(b), ParityChoice::Even, Symmetry::Skew);
                Sample { needs_trivial_annihilator: true, ..sample(format!("b={b}"), q, exp) }
            })
            .collect(),
    });

    cases.push(TheoremCase {
        id: "T3.3",
        title: "symmetric biderivations Vir × Vir → F_b",
        samples: bs
            .iter()
            .map(|b| {
                let exp = if is(b, 0) {
                    shift_family("v")
                } else if is(b, 1) {
                    weighted_shift_family("v")
                } else {
                    Expected::Zero
                };
                sample(format!("b={b}"), bider(density_f(b), ParityChoice::Even, Symmetry::Symmetric), exp)
            })
            .collect(),
    });

    cases.push(TheoremCase {
        id: "C3.4",
        title: "symmetric biderivations of Vir",
        samples: vec![sample(
            "adjoint".into(),
            bider(ModuleSpec::adjoint(&alg("virasoro")), ParityChoice::Both, Symmetry::Symmetric),
            Expected::Zero,
        )],
    });

    cases.push(TheoremCase {
        id: "C3.5",
        title: "symmetric biderivations of W(0,b)",
        samples: [0, 1, 2]
            .iter()
            .map(|&b| {
                let exp = match b {
                    0 => shift_family("I"),
                    1 => weighted_shift_family("I"),
                    _ => Expected::Zero,
                };
                let a = catalog::w0b(sc(b));
                sample(format!("b={b}"), bider(ModuleSpec::adjoint(&a), ParityChoice::Both, Symmetry::Symmetric), exp)
            })
            .collect(),
    });

    cases.push(TheoremCase {
        id: "L4.3",
        title: "centroid of SVir with values in 𝔉_b",
        samples: bs
            .iter()
            .map(|b| {
                let exp = if is(b, -1) { epsilon_svir() } else { Expected::Zero };
                let q = CaseQuery::Centroid { module: density_fsuper(b), parity: ParityChoice::Even };
                sample(format!("b={b}"), q, exp)
            })
            .collect(),
    });

    cases.push(TheoremCase {
        id: "T4.4",
        title: "skew-symmetric super-biderivations SVir × SVir → 𝔉_b",
        samples: bs
            .iter()
            .map(|b| {
                let exp = if is(b, -1) { skew_svir_family() } else { Expected::Zero };
                let q = bider(density_fsuper(b), ParityChoice::Both, Symmetry::Skew);
                Sample { needs_trivial_annihilator: true, ..sample(format!("b={b}"), q, exp) }
            })
            .collect(),
    });

    cases.push(TheoremCase {
        id: "T4.5",
        title: "symmetric super-biderivations SVir × SVir → 𝔉_b",
        samples: bs
            .iter()
            .map(|b| {
                sample(format!("b={b}"), bider(density_fsuper(b), ParityChoice::Both, Symmetry::Symmetric), Expected::Zero)
            })
            .collect(),
    });

    for (id, name, title) in [
        ("T5.1", "svir-ramond", "symmetric super-biderivations of SVir"),
        ("T5.2", "sw22", "symmetric super-biderivations of the super W(2,2) algebra"),
        ("T5.4", "bms3-n1", "symmetric super-biderivations of N=1 super-BMS3"),
        ("T5.6", "n2-ramond", "symmetric super-biderivations of the N=2 Ramond algebra"),
    ] {
        cases.push(TheoremCase {
            id,
            title,
            samples: vec![sample(
                "adjoint".into(),
                bider(ModuleSpec::adjoint(&alg(name)), ParityChoice::Both, Symmetry::Symmetric),
                Expected::Zero,
            )],
        });
    }

    cases.push(TheoremCase {
        id: "T5.8",
        title: "symmetric super-biderivations of the Heisenberg–Virasoro superalgebra",
        samples: vec![sample(
            "adjoint".into(),
            bider(ModuleSpec::adjoint(&alg("hv-super")), ParityChoice::Both, Symmetry::Symmetric),
            shift_family("H"),
        )],
    });

    cases.push(TheoremCase {
        id: "T6.3",
        title: "commutative post-Lie superalgebra structures",
        samples: ["virasoro", "svir-ramond", "sw22", "bms3-n1", "n2-ramond", "hv-super"]
            .iter()
            .map(|name| sample(name.to_string(), CaseQuery::PostLie { algebra: alg(name) }, Expected::Zero))
            .collect(),
    });

    cases
}

pub fn case_ids() -> Vec<&'static str> {
    theorem_cases().iter().map(|c| c.id).collect()
}

pub fn find_case(id: &str) -> Option<TheoremCase> {
    theorem_cases().into_iter().find(|c| c.id == id)
}

/// Keeps only the samples whose `b` equals `b`; cases without `b` samples
/// come back empty.
pub fn restrict_b(case: &TheoremCase, b: &Scalar) -> TheoremCase {
    let label = format!("b={b}");
    TheoremCase { samples: case.samples.iter().filter(|s| s.label == label).cloned().collect(), ..case.clone() }
}
