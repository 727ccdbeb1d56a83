//! Experiment harness: seeded random modules, full bound audits, checkers for
//! the local-cohomology identities and the linear-section tower, and a
//! binomial-ideal corpus generator.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    big_to_json, brodmann_goetsch_bound, cm_regularity_bound, ideal_bounds, low_dimension_bounds,
    multiplicity_bounds, refined_regularity_bound, serialize_big, small_support_bounds, sym_power_bound,
    uniform_degree_bound, BoundInputs, RefinedBound,
};
use crate::complexes::{complex_regularity_bound, complex_terms};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{minimal_generator_indices, FreeModule, ModuleElement};
use crate::hilbert::LaurentPoly;
use crate::invariants::{hilbert_numerator, module_invariants, regularity, ring_invariants, RingInvariants};
use crate::modops::{
    colon_kernel, fitting_ideal_0, h0_profile, minimal_presentation, quotient_by_linear, sym_power,
    top_presentation_degrees, ColonKernel, H0Profile,
};
use crate::monomial::{Monomial, MonomialOrder};
use crate::polynomial::Polynomial;
use crate::presentation::{cyclic, GradedPresentation};
use crate::resolution::BettiTable;
use crate::ring::{GradedRing, RingRef};

/// Attempts per level when looking for a linear form with finite-length colon.
pub const FORM_ATTEMPTS: usize = 20;
/// Largest `C(n+l-1, l)` for which `Sym^l(M)` is resolved during an audit.
pub const SYM_RANK_CAP: usize = 20;

const MODULE_ATTEMPTS: usize = 64;
const COLUMN_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomParams {
    pub p_vars: usize,
    pub characteristic: u64,
    pub n: usize,
    pub m: usize,
    pub max_a: i64,
    pub max_b: i64,
    pub density: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            p_vars: 3,
            characteristic: 101,
            n: 2,
            m: 3,
            max_a: 1,
            max_b: 3,
            density: 0.7,
        }
    }
}

impl RandomParams {
    fn check(&self) -> Result<()> {
        if self.p_vars == 0 || self.n == 0 {
            return Err(Error::Precondition("need at least one variable and one generator".into()));
        }
        if self.max_a < 0 || self.max_b <= self.max_a {
            return Err(Error::Precondition(format!(
                "need max_b > max_a ≥ 0, got max_a = {}, max_b = {}",
                self.max_a, self.max_b
            )));
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(Error::Precondition(format!("density {} is outside (0, 1]", self.density)));
        }
        Ok(())
    }
}

/// A random homogeneous form of degree `k` with one to three terms and
/// nonzero coefficients.
pub fn random_form<R: Rng>(ring: &GradedRing, k: u32, rng: &mut R) -> Polynomial {
    let nv = ring.nvars();
    let p = ring.field().characteristic();
    let monos = Monomial::all_of_degree(nv, k);
    let t = rng.gen_range(1..=monos.len().min(3));
    let terms: Vec<(Monomial, u32)> = sample(rng, monos.len(), t)
        .into_iter()
        .map(|i| (monos[i].clone(), rng.gen_range(1..p)))
        .collect();
    Polynomial::from_terms(nv, terms, ring.field())
}

/// A linear form with every coefficient nonzero.
pub fn random_linear_form<R: Rng>(ring: &GradedRing, rng: &mut R) -> Polynomial {
    let p = ring.field().characteristic() as i64;
    let coeffs: Vec<i64> = (0..ring.nvars()).map(|_| rng.gen_range(1..p)).collect();
    ring.linear_form(&coeffs)
}

/// Seeded random graded presentation over `F_p[x_1..x_p]`, minimalized.
///
/// Row twists are uniform in `[0, max_a]`. Each column gets a degree uniform
/// in `[min a + 1, max_b]` and entries of the matching degrees, each kept with
/// probability `density`. All-zero columns and presentations of the zero
/// module are redrawn.
pub fn random_module(seed: u64, params: &RandomParams) -> Result<GradedPresentation> {
    params.check()?;
    let ring: RingRef = Arc::new(GradedRing::polynomial(params.characteristic, params.p_vars)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = ring.nvars();
    for _ in 0..MODULE_ATTEMPTS {
        let twists: Vec<i64> = (0..params.n).map(|_| rng.gen_range(0..=params.max_a)).collect();
        let lo = twists.iter().min().unwrap() + 1;
        let mut columns = Vec::with_capacity(params.m);
        let mut degrees = Vec::with_capacity(params.m);
        for _ in 0..params.m {
            let mut drawn = None;
            for _ in 0..COLUMN_ATTEMPTS {
                let deg = rng.gen_range(lo..=params.max_b);
                let col: Vec<Polynomial> = twists
                    .iter()
                    .map(|&a| {
                        let k = deg - a;
                        if k < 0 || !rng.gen_bool(params.density) {
                            Polynomial::zero(nv)
                        } else {
                            random_form(&ring, k as u32, &mut rng)
                        }
                    })
                    .collect();
                if col.iter().any(|f| !f.is_zero()) {
                    drawn = Some((col, deg));
                    break;
                }
            }
            let (col, deg) =
                drawn.ok_or_else(|| Error::Unsupported("could not draw a nonzero column".into()))?;
            columns.push(col);
            degrees.push(Some(deg));
        }
        let pres = GradedPresentation::with_degrees(ring.clone(), twists, columns, degrees)?;
        let mp = minimal_presentation(&pres)?;
        if mp.n() > 0 {
            return Ok(mp);
        }
    }
    Err(Error::Unsupported(format!(
        "every one of {MODULE_ATTEMPTS} draws presented the zero module"
    )))
}

/// Seed of instance `index` in a sweep started from `master`.
pub fn instance_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng.gen()
}

/// Parameters for one soundness-sweep instance: at most three variables,
/// three generators and five relations, generator degrees at most 2 and
/// relation degrees at most 4.
pub fn sweep_params(seed: u64) -> RandomParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let max_a = rng.gen_range(0..=2);
    RandomParams {
        p_vars: rng.gen_range(1..=3),
        characteristic: 101,
        n: rng.gen_range(1..=3),
        m: rng.gen_range(1..=5),
        max_a,
        max_b: rng.gen_range(max_a + 1..=4),
        density: [0.5, 0.75, 1.0][rng.gen_range(0..3)],
    }
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub id: String,
    /// The invariant the bound is compared with, e.g. `reg(M)`.
    pub target: String,
    #[serde(serialize_with = "crate::bounds::serialize_opt_big")]
    pub value: Option<BigInt>,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub target: String,
    pub computed: i64,
    #[serde(serialize_with = "serialize_big")]
    pub bound: BigInt,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceInfo {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub characteristic: u32,
    pub p_vars: usize,
    pub quotient_generators: usize,
    pub n: usize,
    pub m: usize,
    /// Generator degrees of the minimal presentation, descending.
    pub a: Vec<i64>,
    /// Relation degrees of the minimal presentation, descending.
    pub b: Vec<i64>,
    pub big_b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Computed {
    pub regularity: i64,
    pub dimension: usize,
    pub codimension: usize,
    pub multiplicity: i64,
    pub betti: BettiTable,
    pub ring: RingInvariants,
    /// `reg R/Fitt_0(M)`, absent when `Fitt_0(M) = 0`.
    pub fitting_regularity: Option<i64>,
    /// `reg Sym^l(M)` for the `l` that were resolved.
    pub sym_regularity: BTreeMap<usize, i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub instance: InstanceInfo,
    pub computed: Computed,
    pub bounds: Vec<BoundEntry>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for BoundReport {
    /// Timings are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.instance == other.instance
            && self.computed == other.computed
            && self.bounds == other.bounds
            && self.verdicts == other.verdicts
    }
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| !v.pass).collect()
    }

    /// `id -> value` for every applicable bound.
    pub fn values(&self) -> serde_json::Map<String, serde_json::Value> {
        self.bounds
            .iter()
            .filter(|b| b.applicable)
            .filter_map(|b| b.value.as_ref().map(|v| (b.id.clone(), big_to_json(v))))
            .collect()
    }

    /// Stable JSON document: `instance`, `computed`, `bounds`, `verdicts` and
    /// a flat `values` map.
    pub fn to_json(&self) -> serde_json::Value {
        let mut doc = serde_json::to_value(self).expect("report serializes");
        doc.as_object_mut()
            .unwrap()
            .insert("values".into(), serde_json::Value::Object(self.values()));
        doc
    }

    pub fn value(&self, id: &str) -> Option<&BigInt> {
        self.bounds.iter().find(|b| b.id == id && b.applicable)?.value.as_ref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditOptions {
    pub id: String,
    pub seed: Option<u64>,
    /// Overrides the derived `B`; must not be smaller.
    pub big_b: Option<i64>,
    /// Largest symmetric power audited.
    pub max_l: usize,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            id: "instance".into(),
            seed: None,
            big_b: None,
            max_l: 3,
        }
    }
}

struct Collector {
    bounds: Vec<BoundEntry>,
    verdicts: Vec<Verdict>,
}

impl Collector {
    fn push<V: Into<BigInt>>(&mut self, id: &str, target: &str, value: Result<V>, computed: Option<i64>) {
        match value {
            Err(e) => self.skip(id, target, &e.to_string()),
            Ok(v) => {
                let v: BigInt = v.into();
                match computed {
                    Some(c) => {
                        self.verdicts.push(Verdict {
                            id: id.into(),
                            target: target.into(),
                            computed: c,
                            bound: v.clone(),
                            pass: BigInt::from(c) <= v,
                        });
                        self.bounds.push(BoundEntry {
                            id: id.into(),
                            target: target.into(),
                            value: Some(v),
                            applicable: true,
                            note: None,
                        });
                    }
                    None => self.bounds.push(BoundEntry {
                        id: id.into(),
                        target: target.into(),
                        value: Some(v),
                        applicable: false,
                        note: Some("target invariant not computed".into()),
                    }),
                }
            }
        }
    }

    fn skip(&mut self, id: &str, target: &str, note: &str) {
        self.bounds.push(BoundEntry {
            id: id.into(),
            target: target.into(),
            value: None,
            applicable: false,
            note: Some(note.into()),
        });
    }

    fn info(&mut self, id: &str, target: &str, value: BigInt, note: &str) {
        self.bounds.push(BoundEntry {
            id: id.into(),
            target: target.into(),
            value: Some(value),
            applicable: false,
            note: Some(note.into()),
        });
    }
}

fn sym_target(l: usize) -> String {
    if l == 1 {
        "reg(M)".into()
    } else {
        format!("reg(Sym^{l}(M))")
    }
}

fn regularity_or_none(m: &GradedPresentation) -> Result<Option<i64>> {
    match regularity(m) {
        Ok(r) => Ok(Some(r)),
        Err(Error::ZeroModule) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Computes the invariants of `M` and checks them against every bound whose
/// hypotheses hold.
pub fn audit(m: &GradedPresentation, opts: &AuditOptions) -> Result<BoundReport> {
    let start = Instant::now();
    let mp = minimal_presentation(m)?;
    if mp.n() == 0 {
        return Err(Error::ZeroModule);
    }
    let ring = mp.ring().clone();
    let rinv = ring_invariants(&ring)?;
    let inv = module_invariants(&mp)?;
    let delta = inv.hilbert.dimension.ok_or(Error::ZeroModule)?;
    let codim = rinv.dim - delta;
    let multiplicity = inv.hilbert.multiplicity.unwrap();
    let reg = inv.regularity;
    let a = mp.sorted_a();
    let b = mp.sorted_b();
    let mut inputs = BoundInputs::new(&a, &b, rinv.dim, rinv.regularity, rinv.degree, codim)?;
    if let Some(bb) = opts.big_b {
        inputs = inputs.with_b(bb)?;
    }
    let n = mp.n();

    let mut sym_reg: BTreeMap<usize, i64> = BTreeMap::new();
    sym_reg.insert(1, reg);
    for l in 2..=opts.max_l {
        if crate::complexes::multiset_count(n, l) <= SYM_RANK_CAP {
            sym_reg.insert(l, regularity(&sym_power(&mp, l)?)?);
        }
    }
    let minors = fitting_ideal_0(&mp);
    let fitting_regularity = if minors.is_empty() {
        None
    } else {
        regularity_or_none(&cyclic(ring.clone(), 0, minors)?)?
    };

    let mut out = Collector {
        bounds: Vec::new(),
        verdicts: Vec::new(),
    };
    let fitt_target = "reg(R/Fitt_0(M))";
    let fitt_note = "Fitt_0(M) is zero";

    if rinv.dim <= 1 {
        for l in 1..=opts.max_l {
            let r = low_dimension_bounds(&inputs, l);
            if l == 1 {
                match (&r, fitting_regularity) {
                    (Ok(v), Some(f)) => out.push("low_dimension.fitt", fitt_target, Ok(v.fitt), Some(f)),
                    (Ok(_), None) => out.skip("low_dimension.fitt", fitt_target, fitt_note),
                    (Err(e), _) => out.skip("low_dimension.fitt", fitt_target, &e.to_string()),
                }
            }
            out.push(
                &format!("low_dimension.sym{l}"),
                &sym_target(l),
                r.map(|v| v.sym),
                sym_reg.get(&l).copied(),
            );
        }
    } else if delta <= 1 {
        for l in 1..=opts.max_l {
            let r = small_support_bounds(&inputs, l);
            for (family, padded) in [("small_support", false), ("small_support_padded", true)] {
                if l == 1 {
                    let id = format!("{family}.fitt");
                    match (&r, fitting_regularity) {
                        (Ok(v), Some(f)) => {
                            let value = if padded { v.padded_fitt } else { v.fitt };
                            out.push(&id, fitt_target, Ok(value), Some(f))
                        }
                        (Ok(_), None) => out.skip(&id, fitt_target, fitt_note),
                        (Err(e), _) => out.skip(&id, fitt_target, &e.to_string()),
                    }
                }
                out.push(
                    &format!("{family}.sym{l}"),
                    &sym_target(l),
                    r.clone().map(|v| if padded { v.padded_sym } else { v.sym }),
                    sym_reg.get(&l).copied(),
                );
            }
        }
    } else {
        out.skip("small_support", "reg(M)", "module dimension is larger than 1");
    }

    out.push("uniform_degree", "reg(M)", uniform_degree_bound(&inputs), Some(reg));

    if rinv.cohen_macaulay {
        out.push("cm_regularity", "reg(M)", cm_regularity_bound(&inputs), Some(reg));
        if codim > 0 {
            match multiplicity_bounds(&inputs.a, &inputs.b, codim, rinv.degree) {
                Ok(mb) => {
                    out.push("multiplicity.sum", "deg(M)", Ok(mb.sum_form.clone()), Some(multiplicity));
                    out.push("multiplicity.series", "deg(M)", Ok(mb.series_form), Some(multiplicity));
                    out.push("multiplicity.binomial", "deg(M)", Ok(mb.binomial_form), Some(multiplicity));
                }
                Err(e) => out.skip("multiplicity", "deg(M)", &e.to_string()),
            }
            match refined_regularity_bound(&inputs.a, &inputs.b, codim, delta, rinv.degree, rinv.regularity) {
                Ok(RefinedBound::Bracket(v)) => out.push("refined", "reg(M)", Ok(v), Some(reg)),
                Ok(RefinedBound::Exact(v)) => out.info(
                    "refined",
                    "reg(M)",
                    BigInt::from(v),
                    "exact-case value; informational, not a verdict",
                ),
                Err(e) => out.skip("refined", "reg(M)", &e.to_string()),
            }
        } else {
            out.skip("multiplicity", "deg(M)", "support has codimension 0");
        }
        if delta >= 2 {
            let a_max = inputs.max_a().unwrap();
            for l in 2..=opts.max_l {
                out.push(
                    &format!("sym_power.sym{l}"),
                    &sym_target(l),
                    sym_power_bound(&inputs, a_max, l),
                    sym_reg.get(&l).copied(),
                );
            }
        }
        let bg = if inputs.a.iter().any(|&x| x < 0) {
            Err(Error::Precondition("generator degrees must be non-negative".into()))
        } else {
            brodmann_goetsch_bound(rinv.dim, n, rinv.degree, rinv.regularity, inputs.big_b())
        };
        out.push("brodmann_goetsch", "reg(M)", bg, Some(reg));
    } else {
        for id in ["cm_regularity", "multiplicity", "refined", "brodmann_goetsch"] {
            out.skip(id, "reg(M)", "ring is not Cohen-Macaulay");
        }
    }

    if delta <= 1 {
        if mp.m() >= n {
            let terms = complex_terms(&mp, 0);
            let v = complex_regularity_bound(&terms, rinv.regularity, rinv.dim);
            match fitting_regularity {
                Some(f) => out.push("complex.fitt", fitt_target, v, Some(f)),
                None => out.skip("complex.fitt", fitt_target, fitt_note),
            }
        }
        for l in 1..=opts.max_l {
            let terms = complex_terms(&mp, l);
            out.push(
                &format!("complex.sym{l}"),
                &sym_target(l),
                complex_regularity_bound(&terms, rinv.regularity, rinv.dim),
                sym_reg.get(&l).copied(),
            );
        }
    }

    if ring.is_polynomial_ring() && n == 1 && a == [0] && !b.is_empty() {
        let ib = ideal_bounds(rinv.dim, inputs.big_b(), Some(codim));
        for (name, v) in ib.entries() {
            let id = format!("ideal.{name}");
            match v {
                Some(v) => out.push(&id, "reg(I)", Ok(v.clone()), Some(reg + 1)),
                None => out.skip(&id, "reg(I)", "not defined for this number of variables"),
            }
        }
    }

    let Collector { bounds, verdicts } = out;
    let nonzero_quotient = ring.quotient().len();
    Ok(BoundReport {
        instance: InstanceInfo {
            id: opts.id.clone(),
            seed: opts.seed,
            characteristic: ring.field().characteristic(),
            p_vars: ring.nvars(),
            quotient_generators: nonzero_quotient,
            n,
            m: mp.m(),
            a,
            b,
            big_b: inputs.big_b(),
        },
        computed: Computed {
            regularity: reg,
            dimension: delta,
            codimension: codim,
            multiplicity,
            betti: inv.betti,
            ring: rinv,
            fitting_regularity,
            sym_regularity: sym_reg,
        },
        bounds,
        verdicts,
        elapsed: start.elapsed(),
    })
}

fn zero_or_h0(m: &GradedPresentation) -> Result<(H0Profile, Option<GradedPresentation>)> {
    if hilbert_numerator(m)?.is_zero() {
        return Ok((H0Profile::from_values(BTreeMap::new()), None));
    }
    let (p, q) = h0_profile(m)?;
    Ok((p, Some(q)))
}

/// Hilbert function of a finite-length module from its numerator.
fn finite_hilbert_function(num: &LaurentPoly, p: usize) -> Option<LaurentPoly> {
    let mut q = num.clone();
    for _ in 0..p {
        q = q.div_one_minus_t()?;
    }
    Some(q)
}

/// `max{b_0^S(J), 1}`: top degree of a minimal generator of the defining
/// ideal of `R`, at least 1.
pub fn quotient_generator_bound(ring: &GradedRing) -> Result<i64> {
    if ring.quotient().is_empty() {
        return Ok(1);
    }
    let elems: Vec<ModuleElement> = ring
        .quotient()
        .iter()
        .map(|g| ModuleElement::from_dense(std::slice::from_ref(g)))
        .collect();
    let idx = minimal_generator_indices(&ring.ambient(), &FreeModule::new(vec![0]), &elems, &[])?;
    let top = idx
        .iter()
        .filter_map(|&i| ring.quotient()[i].degree())
        .max()
        .map_or(1, |d| d as i64);
    Ok(top.max(1))
}

/// Comparison at one degree: `lhs` relation `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub mu: i64,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalCohomologyReport {
    pub window: (i64, i64),
    pub colon_length: i64,
    /// `λ(K_{≥μ})` against `h⁰(M)_μ + h⁰(M/lM)_{>μ} - h⁰(M'/lM')_{>μ}`.
    pub identity: Vec<Residual>,
    pub identity_holds: bool,
    /// `λ(K_{≥μ}) ≥ h⁰(M)_μ`.
    pub lower_bound_holds: bool,
    /// `a0(M) - indeg H⁰(M) + 1`; `None` when `H⁰(M) = 0`.
    pub span: Option<i64>,
    /// `h⁰(M)_{μ+a}` against `Σ_{j=1..a} (h⁰(M/lM) - h⁰(M'/lM'))_{μ+j}`.
    pub shifted: Vec<Residual>,
    pub shifted_holds: bool,
    pub threshold: i64,
    /// `reg M` against `μ - 1 + h⁰(M)_μ` at the threshold and one above.
    pub regularity: Vec<Residual>,
    pub regularity_holds: bool,
}

impl LocalCohomologyReport {
    pub fn passed(&self) -> bool {
        self.identity_holds && self.lower_bound_holds && self.shifted_holds && self.regularity_holds
    }

    pub fn violations(&self) -> usize {
        self.identity.iter().filter(|r| r.lhs != r.rhs).count()
            + self.shifted.iter().filter(|r| r.lhs > r.rhs).count()
            + self.regularity.iter().filter(|r| r.lhs > r.rhs).count()
            + usize::from(!self.lower_bound_holds)
    }
}

/// Checks the relations between `H⁰_m(M)`, `H⁰_m(M/lM)` and `0 :_M l` for a
/// linear form `l` whose colon has finite length.
pub fn lemma31_check(m: &GradedPresentation, l: &Polynomial) -> Result<LocalCohomologyReport> {
    let k = colon_kernel(m, l)?;
    lemma31_with_kernel(m, l, &k)
}

fn lemma31_with_kernel(m: &GradedPresentation, l: &Polynomial, k: &ColonKernel) -> Result<LocalCohomologyReport> {
    let p = m.ring().nvars();
    let colon_length = k
        .length
        .ok_or_else(|| Error::Precondition("0 :_M l has infinite length".into()))?;
    let kh = finite_hilbert_function(&k.numerator, p).unwrap();
    let reg_m = regularity(m)?;
    let (h0m, m_sat) = h0_profile(m)?;
    let mbar = quotient_by_linear(m, l)?;
    let (h0bar, _) = zero_or_h0(&mbar)?;
    let (h0bar_sat, _) = zero_or_h0(&quotient_by_linear(&m_sat, l)?)?;

    let mut lo = m.row_twists().iter().copied().min().unwrap_or(0);
    let mut hi = lo;
    for prof in [&h0m, &h0bar, &h0bar_sat] {
        if let (Some(i), Some(a)) = (prof.indeg_h0, prof.a0) {
            lo = lo.min(i);
            hi = hi.max(a);
        }
    }
    if let (Some(i), Some(a)) = (kh.min_exponent(), kh.max_exponent()) {
        lo = lo.min(i);
        hi = hi.max(a);
    }
    let (lo, hi) = (lo - 1, hi + 1);

    let k_from = |mu: i64| -> i64 { (mu..=hi + 1).map(|d| kh.coefficient(d)).sum() };
    let mut identity = Vec::new();
    let mut lower_bound_holds = true;
    for mu in lo..=hi {
        let lhs = k_from(mu);
        let rhs = h0m.get(mu) + h0bar.sum_above(mu) - h0bar_sat.sum_above(mu);
        lower_bound_holds &= lhs >= h0m.get(mu);
        identity.push(Residual { mu, lhs, rhs });
    }
    let identity_holds = identity.iter().all(|r| r.lhs == r.rhs);

    let span = (!h0m.is_empty()).then_some(h0m.a_span);
    let mut shifted = Vec::new();
    if let Some(a) = span {
        for mu in lo - a..=hi {
            let lhs = h0m.get(mu + a);
            let rhs = (1..=a).map(|j| h0bar.get(mu + j) - h0bar_sat.get(mu + j)).sum();
            shifted.push(Residual { mu, lhs, rhs });
        }
    }
    let shifted_holds = shifted.iter().all(|r| r.lhs <= r.rhs);

    let h = quotient_generator_bound(m.ring())?;
    let (b0, b1) = top_presentation_degrees(m)?;
    let reg_bar = regularity_or_none(&mbar)?;
    let threshold = [
        b0.map(|x| x + h - 1),
        b1.map(|x| x - 1),
        reg_bar.map(|x| x + 1),
    ]
    .into_iter()
    .flatten()
    .max()
    .unwrap();
    let regularity_rows: Vec<Residual> = [threshold, threshold + 1]
        .into_iter()
        .map(|mu| Residual {
            mu,
            lhs: reg_m,
            rhs: mu - 1 + h0m.get(mu),
        })
        .collect();
    let regularity_holds = regularity_rows.iter().all(|r| r.lhs <= r.rhs);

    Ok(LocalCohomologyReport {
        window: (lo, hi),
        colon_length,
        identity,
        identity_holds,
        lower_bound_holds,
        span,
        shifted,
        shifted_holds,
        threshold,
        regularity: regularity_rows,
        regularity_holds,
    })
}

/// Draws linear forms until `0 :_M l` has finite length.
pub fn finite_colon_form<R: Rng>(
    m: &GradedPresentation,
    rng: &mut R,
    attempts: usize,
) -> Result<(Polynomial, ColonKernel)> {
    for _ in 0..attempts {
        let l = random_linear_form(m.ring(), rng);
        let k = colon_kernel(m, &l)?;
        if k.is_finite() {
            return Ok((l, k));
        }
    }
    Err(Error::NoFiniteColon(attempts))
}

/// Local cohomology check with a random form, resampled until the colon is finite.
pub fn lemma31_random(m: &GradedPresentation, seed: u64) -> Result<(Polynomial, LocalCohomologyReport)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (l, k) = finite_colon_form(m, &mut rng, FORM_ATTEMPTS)?;
    let report = lemma31_with_kernel(m, &l, &k)?;
    Ok((l, report))
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerStep {
    pub i: usize,
    /// The form cutting `M_i` down to `M_{i+1}`.
    pub form: String,
    #[serde(skip)]
    pub module: GradedPresentation,
    /// `reg(M_i)`; `None` when `M_i = 0`.
    pub regularity: Option<i64>,
    /// `λ(0 :_{M_i} l_{i+1})`.
    pub colon_length: i64,
    pub r: i64,
    pub q: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerReport {
    pub s: usize,
    pub steps: Vec<TowerStep>,
    /// `(i, Q_i, Q_{i+1}^2, holds)`.
    pub squares: Vec<(usize, i64, i64, bool)>,
    pub regularity: i64,
    #[serde(serialize_with = "serialize_big")]
    pub final_bound: BigInt,
    pub final_holds: bool,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.final_holds && self.squares.iter().all(|s| s.3)
    }
}

/// Where the forms of a tower come from.
#[derive(Debug, Clone)]
pub enum TowerForms {
    /// `l_1 .. l_{s+1}`.
    Given(Vec<Polynomial>),
    /// Random forms; `s` defaults to `max(dim M - 1, 0)`.
    Random { seed: u64, s: Option<usize> },
}

/// Cuts `M` by `s + 1` linear forms and checks `Q_i ≤ Q_{i+1}^2` and
/// `reg M ≤ Q_s^{2^s}`, where
/// `Q_i = 1 + max{reg M_i, λ(K_i), b_1^R(M) - 2, b_0^R(M) + max{1, b_0^S(J)} - 2}`.
pub fn lemma32_tower(m: &GradedPresentation, forms: TowerForms) -> Result<TowerReport> {
    if m.row_twists().iter().any(|&a| a < 0) {
        return Err(Error::Precondition("generators must sit in non-negative degrees".into()));
    }
    let reg_m = regularity(m)?;
    let (b0, b1) = top_presentation_degrees(m)?;
    let h = quotient_generator_bound(m.ring())?;
    let floor = [b1.map(|x| x - 2), b0.map(|x| x + h - 2)].into_iter().flatten().max().unwrap();

    let (s, mut next_form): (usize, Box<dyn FnMut(&GradedPresentation, usize) -> Result<(Polynomial, ColonKernel)>>) =
        match forms {
            TowerForms::Given(fs) => {
                if fs.is_empty() {
                    return Err(Error::Precondition("a tower needs at least one form".into()));
                }
                let s = fs.len() - 1;
                (
                    s,
                    Box::new(move |mi: &GradedPresentation, i: usize| {
                        let k = colon_kernel(mi, &fs[i])?;
                        if !k.is_finite() {
                            return Err(Error::Precondition(format!("form {} has an infinite-length colon", i + 1)));
                        }
                        Ok((fs[i].clone(), k))
                    }),
                )
            }
            TowerForms::Random { seed, s } => {
                let s = match s {
                    Some(s) => s,
                    None => crate::invariants::hilbert_data(m)?
                        .dimension
                        .unwrap_or(0)
                        .saturating_sub(1),
                };
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (
                    s,
                    Box::new(move |mi: &GradedPresentation, _| finite_colon_form(mi, &mut rng, FORM_ATTEMPTS)),
                )
            }
        };

    let mut steps = Vec::with_capacity(s + 1);
    let mut current = m.clone();
    for i in 0..=s {
        let (l, k) = next_form(&current, i)?;
        let reg_i = regularity_or_none(&current)?;
        let colon_length = k.length.unwrap();
        let r = reg_i.map_or(floor, |x| x.max(floor));
        let q = 1 + r.max(colon_length);
        let next = quotient_by_linear(&current, &l)?;
        steps.push(TowerStep {
            i,
            form: current.ring().render(&l),
            module: current,
            regularity: reg_i,
            colon_length,
            r,
            q,
        });
        current = next;
    }
    let squares = (0..s)
        .map(|i| {
            let (qi, qn) = (steps[i].q, steps[i + 1].q);
            (i, qi, qn * qn, qi <= qn * qn)
        })
        .collect();
    let final_bound = crate::bounds::power_of_two_tower(&BigInt::from(steps[s].q), s as u32)?;
    Ok(TowerReport {
        s,
        steps,
        squares,
        regularity: reg_m,
        final_holds: BigInt::from(reg_m) <= final_bound,
        final_bound,
    })
}

/// Exponent used in the first-level binomials.
pub const MAYR_MEYER_DEGREE: u32 = 2;

/// Homogeneous binomial ideal of Mayr–Meyer type at level `k ∈ {1, 2}`, as the
/// cyclic module `S/I`.
///
/// Variables are `h`, and `s_r, f_r, b_{r1..r4}, c_{r1..r4}` for `r = 0..k`.
/// Level 0 contributes `s_0 c_{0i} h^e - f_0 c_{0i} b_{0i}^e` for `i = 1..4`
/// (with `e = 2`); each level `r ≥ 1` contributes ten binomials
///
/// ```text
/// h s_{r-1} - s_r c_{r1}        h f_{r-1} - s_r c_{r4}
/// f_r c_{r1} - s_r c_{r2}       f_r c_{r4} - s_r c_{r3}
/// s_r c_{r3} - s_r c_{r2}       f_r c_{r2} - f_r c_{r3}
/// h f_r c_{r2} c_{r-1,i} - f_r c_{r3} c_{r-1,i} b_{r-1,i}   (i = 1..4)
/// ```
///
/// so the ideal has `10k + 4` generators in `10k + 11` variables.
pub fn mayr_meyer(k: usize) -> Result<GradedPresentation> {
    if !(1..=2).contains(&k) {
        return Err(Error::Unsupported(format!("level {k}; only levels 1 and 2 are generated")));
    }
    let mut names = vec!["h".to_string()];
    for r in 0..=k {
        names.push(format!("s{r}"));
        names.push(format!("f{r}"));
        for i in 1..=4 {
            names.push(format!("b{r}{i}"));
        }
        for i in 1..=4 {
            names.push(format!("c{r}{i}"));
        }
    }
    let ring = GradedRing::new(PrimeField::new(101)?, names, MonomialOrder::GRevLex)?;
    let v = |name: String| ring.var_by_name(&name).expect("declared variable");
    let field = *ring.field();
    let mul = |fs: &[Polynomial]| fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.mul(f, &field));
    let h = v("h".into());
    let e = MAYR_MEYER_DEGREE;
    let mut gens = Vec::new();
    for i in 1..=4 {
        let c = v(format!("c0{i}"));
        let lhs = mul(&[v("s0".into()), c.clone(), h.pow(e, &field)]);
        let rhs = mul(&[v("f0".into()), c, v(format!("b0{i}")).pow(e, &field)]);
        gens.push(lhs.sub(&rhs, &field));
    }
    for r in 1..=k {
        let s = v(format!("s{r}"));
        let f = v(format!("f{r}"));
        let c = |i: usize| v(format!("c{r}{i}"));
        let sp = v(format!("s{}", r - 1));
        let fp = v(format!("f{}", r - 1));
        let bin = |x: Polynomial, y: Polynomial| x.sub(&y, &field);
        gens.push(bin(mul(&[h.clone(), sp]), mul(&[s.clone(), c(1)])));
        gens.push(bin(mul(&[h.clone(), fp]), mul(&[s.clone(), c(4)])));
        gens.push(bin(mul(&[f.clone(), c(1)]), mul(&[s.clone(), c(2)])));
        gens.push(bin(mul(&[f.clone(), c(4)]), mul(&[s.clone(), c(3)])));
        gens.push(bin(mul(&[s.clone(), c(3)]), mul(&[s.clone(), c(2)])));
        gens.push(bin(mul(&[f.clone(), c(2)]), mul(&[f.clone(), c(3)])));
        for i in 1..=4 {
            let cp = v(format!("c{}{i}", r - 1));
            let bp = v(format!("b{}{i}", r - 1));
            gens.push(bin(
                mul(&[h.clone(), f.clone(), c(2), cp.clone()]),
                mul(&[f.clone(), c(3), cp, bp]),
            ));
        }
    }
    cyclic(Arc::new(ring), 0, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize) -> RingRef {
        Arc::new(GradedRing::polynomial(101, n).unwrap())
    }

    fn mono(e: &[u16]) -> Polynomial {
        Polynomial::monomial(Monomial::from_exponents(e), 1)
    }

    fn x2_xy(nv: usize) -> GradedPresentation {
        let r = s(nv);
        let mut e1 = vec![0u16; nv];
        e1[0] = 2;
        let mut e2 = vec![0u16; nv];
        e2[0] = 1;
        e2[1] = 1;
        cyclic(r, 0, vec![mono(&e1), mono(&e2)]).unwrap()
    }

    #[test]
    fn random_module_is_deterministic() {
        let p = RandomParams::default();
        assert_eq!(random_module(7, &p).unwrap(), random_module(7, &p).unwrap());
    }

    #[test]
    fn random_module_shapes() {
        let p = RandomParams {
            n: 1,
            m: 3,
            density: 1.0,
            max_a: 0,
            max_b: 3,
            ..RandomParams::default()
        };
        let m = random_module(3, &p).unwrap();
        assert_eq!(m.n(), 1);
        assert!(m.m() <= 3);
        let lin = RandomParams {
            max_a: 0,
            max_b: 1,
            ..RandomParams::default()
        };
        for seed in 0..5 {
            let m = random_module(seed, &lin).unwrap();
            assert!(m.column_degrees().iter().all(|&b| b == 1));
        }
        let bad = RandomParams {
            max_a: 2,
            max_b: 2,
            ..RandomParams::default()
        };
        assert!(random_module(0, &bad).is_err());
    }

    #[test]
    fn audit_two_variables() {
        let rep = audit(&x2_xy(2), &AuditOptions::default()).unwrap();
        assert_eq!(rep.computed.regularity, 1);
        assert_eq!(rep.value("uniform_degree"), Some(&BigInt::from(2)));
        assert_eq!(rep.value("small_support.fitt"), Some(&BigInt::from(2)));
        assert_eq!(rep.value("small_support.sym1"), Some(&BigInt::from(2)));
        assert_eq!(rep.computed.fitting_regularity, Some(1));
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn audit_three_variables() {
        let rep = audit(&x2_xy(3), &AuditOptions::default()).unwrap();
        assert_eq!(rep.computed.regularity, 1);
        assert_eq!(rep.computed.dimension, 2);
        assert_eq!(rep.value("cm_regularity"), Some(&BigInt::from(6)));
        assert!(rep.passed());
        assert_eq!(rep, audit(&x2_xy(3), &AuditOptions::default()).unwrap());
    }

    #[test]
    fn audit_free_module() {
        let m = GradedPresentation::free(s(2), vec![0, 2]).unwrap();
        let rep = audit(&m, &AuditOptions::default()).unwrap();
        assert_eq!(rep.computed.regularity, 2);
        assert_eq!(rep.computed.fitting_regularity, None);
        assert!(rep.passed());
        let zero = cyclic(s(2), 0, vec![s(2).one()]).unwrap();
        assert_eq!(audit(&zero, &AuditOptions::default()).unwrap_err(), Error::ZeroModule);
    }

    #[test]
    fn local_cohomology_example() {
        let m = x2_xy(2);
        let r = s(2);
        let rep = lemma31_check(&m, &r.var(1)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let at1 = rep.identity.iter().find(|x| x.mu == 1).unwrap();
        assert_eq!((at1.lhs, at1.rhs), (1, 1));
        assert_eq!(rep.span, Some(1));
        let at0 = rep.shifted.iter().find(|x| x.mu == 0).unwrap();
        assert_eq!((at0.lhs, at0.rhs), (1, 1));
        assert_eq!(rep.threshold, 2);
        assert_eq!(rep.regularity[0], Residual { mu: 2, lhs: 1, rhs: 1 });
        // x has an infinite colon on S/(x^2)
        let inf = cyclic(r.clone(), 0, vec![mono(&[2, 0])]).unwrap();
        assert!(lemma31_check(&inf, &r.var(0)).is_err());
    }

    #[test]
    fn tower_example() {
        let m = x2_xy(3);
        let r = m.ring().clone();
        let rep = lemma32_tower(&m, TowerForms::Given(vec![r.var(2), r.var(1)])).unwrap();
        assert_eq!(rep.s, 1);
        let q: Vec<i64> = rep.steps.iter().map(|st| st.q).collect();
        assert_eq!(q, vec![2, 2]);
        assert_eq!(rep.steps[0].colon_length, 0);
        assert_eq!(rep.steps[1].colon_length, 1);
        assert_eq!(rep.final_bound, BigInt::from(4));
        assert!(rep.passed());

        let single = lemma32_tower(&m, TowerForms::Random { seed: 1, s: Some(0) }).unwrap();
        assert_eq!(single.steps.len(), 1);
        assert!(single.passed());
    }

    #[test]
    fn free_tower_has_zero_colons() {
        let m = GradedPresentation::free(s(3), vec![0, 1]).unwrap();
        let rep = lemma32_tower(&m, TowerForms::Random { seed: 5, s: None }).unwrap();
        assert_eq!(rep.s, 2);
        for st in &rep.steps {
            assert_eq!(st.colon_length, 0);
            assert_eq!(st.q, 1 + st.r);
        }
        assert!(rep.passed());
    }

    #[test]
    fn binomial_corpus_structure() {
        for k in 1..=2 {
            let m = mayr_meyer(k).unwrap();
            assert_eq!(m.ring().nvars(), 10 * k + 11);
            assert_eq!(m.m(), 10 * k + 4);
            assert_eq!(m.n(), 1);
            assert_eq!(m.column_degrees().iter().max(), Some(&4));
            assert!(m.revalidate().is_ok());
        }
        assert!(mayr_meyer(0).is_err());
        assert!(mayr_meyer(3).is_err());
    }
}
