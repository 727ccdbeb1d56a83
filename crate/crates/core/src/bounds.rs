//! Closed-form regularity and multiplicity bounds.
//!
//! Every calculator here is pure arithmetic on degree data and a handful of
//! ring invariants. Quantities raised to powers `2^k` or `k!` are returned as
//! [`BigInt`]; linear bounds stay in `i64`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Results with more bits than this are refused rather than materialized.
pub const MAX_RESULT_BITS: u64 = 1 << 24;

/// Degree data of a presentation `⊕ R(-b_j) → ⊕ R(-a_i) → M → 0` together
/// with the invariants of `R` and the support of `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    /// Generator degrees, descending.
    pub a: Vec<i64>,
    /// Relation degrees, descending.
    pub b: Vec<i64>,
    pub dim_r: usize,
    pub reg_r: i64,
    pub deg_r: i64,
    /// Codimension of the support of `M` in `R`.
    pub codim: usize,
    b_override: Option<i64>,
}

impl BoundInputs {
    pub fn new(a: &[i64], b: &[i64], dim_r: usize, reg_r: i64, deg_r: i64, codim: usize) -> Result<Self> {
        if codim > dim_r {
            return Err(Error::Precondition(format!(
                "codimension {codim} exceeds the ring dimension {dim_r}"
            )));
        }
        if deg_r < 1 {
            return Err(Error::Precondition(format!("ring degree {deg_r} must be positive")));
        }
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable_by(|x, y| y.cmp(x));
        Ok(BoundInputs {
            a,
            b,
            dim_r,
            reg_r,
            deg_r,
            codim,
            b_override: None,
        })
    }

    /// Replaces the derived `B` by a larger value.
    pub fn with_b(mut self, big_b: i64) -> Result<Self> {
        let derived = self.derived_b();
        if big_b < derived {
            return Err(Error::Precondition(format!(
                "B = {big_b} is below the smallest admissible value {derived}"
            )));
        }
        self.b_override = Some(big_b);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }

    /// Dimension of the support of `M`.
    pub fn support_dim(&self) -> usize {
        self.dim_r - self.codim
    }

    /// `max{1 + max a_i, max b_j, 1}`.
    pub fn derived_b(&self) -> i64 {
        let a = self.a.first().map_or(i64::MIN, |x| x + 1);
        let b = self.b.first().copied().unwrap_or(i64::MIN);
        a.max(b).max(1)
    }

    pub fn big_b(&self) -> i64 {
        self.b_override.unwrap_or_else(|| self.derived_b())
    }

    pub fn max_a(&self) -> Option<i64> {
        self.a.first().copied()
    }

    pub fn min_a(&self) -> Option<i64> {
        self.a.last().copied()
    }

    fn require_nonzero(&self) -> Result<()> {
        if self.a.is_empty() {
            return Err(Error::ZeroModule);
        }
        Ok(())
    }

    /// `0 ≤ a_i ≤ B - 1` and `b_j ≤ B`.
    fn require_degree_window(&self) -> Result<()> {
        let big_b = self.big_b();
        if self.a.iter().any(|&x| x < 0) {
            return Err(Error::Precondition("generator degrees must be non-negative".into()));
        }
        if self.a.iter().any(|&x| x > big_b - 1) || self.b.iter().any(|&x| x > big_b) {
            return Err(Error::Precondition(format!("degrees exceed the window for B = {big_b}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymFittBounds {
    /// Bound for `reg Sym^l(M)`.
    pub sym: i64,
    /// Bound for `reg R/Fitt_0(M)`.
    pub fitt: i64,
}

/// Bounds over rings of dimension at most one.
pub fn low_dimension_bounds(inp: &BoundInputs, l: usize) -> Result<SymFittBounds> {
    if inp.dim_r > 1 {
        return Err(Error::Precondition(format!(
            "ring dimension {} is larger than 1",
            inp.dim_r
        )));
    }
    if l == 0 {
        return Err(Error::Precondition("l must be positive".into()));
    }
    inp.require_nonzero()?;
    let a = inp.max_a().unwrap();
    let l = l as i64;
    if inp.dim_r == 0 {
        return Ok(SymFittBounds {
            sym: inp.reg_r + l * a,
            fitt: inp.reg_r,
        });
    }
    let sym = match inp.b.first() {
        Some(&b) => (l * a).max((l - 1) * a + b - 1),
        None => l * a,
    };
    // With fewer relations than generators the sum stops early; Fitt_0 is
    // then zero and the bound reduces to reg R.
    let excess: i64 = inp.b.iter().zip(&inp.a).map(|(b, a)| b - a).sum();
    Ok(SymFittBounds {
        sym: inp.reg_r + sym,
        fitt: inp.reg_r + 0.max(excess - 1),
    })
}

/// Partial sums and the determinantal defect used by the small-support bounds.
///
/// The `padded_*` variants replace relation degrees that the estimates on the
/// complex terms need but the presentation does not supply: `b_i` for
/// `m < i ≤ n+d-1` counts as `a_n + 1` in the defect, and every `b_i` in the
/// partial sums is raised to at least `a_1 + 1`. Where the presentation has
/// enough relations of large enough degree they agree with the plain values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportDegreeData {
    /// `partial_sums[l - 1] = D_l = Σ_{i ≤ l} (b_i - 1)`; missing `b_i` count
    /// as `a_1 + 1`.
    pub partial_sums: Vec<i64>,
    /// `Σ_{i ≤ min(m, n+d-1)} b_i - Σ a_i - (d-1) a_n - d`.
    pub delta: i64,
    /// `D_l` with each `b_i` replaced by `max(b_i, a_1 + 1)`.
    pub padded_partial_sums: Vec<i64>,
    /// `Δ` with the missing `b_{m+1} .. b_{n+d-1}` counted as `a_n + 1`.
    pub padded_delta: i64,
    /// Whether the presentation has at most `n + d - 2` relations, so that
    /// truncating it to its first `n + d - 2` columns changes nothing.
    pub truncation_equal: bool,
}

impl SupportDegreeData {
    pub fn from_inputs(inp: &BoundInputs, up_to: usize) -> Result<Self> {
        inp.require_nonzero()?;
        let n = inp.n();
        let d = inp.dim_r;
        let a1 = inp.a[0];
        let an = inp.a[n - 1];
        let b_at = |i: usize| inp.b.get(i).copied().unwrap_or(a1 + 1);
        let mut partial_sums = Vec::with_capacity(up_to);
        let mut padded_partial_sums = Vec::with_capacity(up_to);
        let (mut acc, mut pacc) = (0, 0);
        for i in 0..up_to {
            acc += b_at(i) - 1;
            pacc += b_at(i).max(a1 + 1) - 1;
            partial_sums.push(acc);
            padded_partial_sums.push(pacc);
        }
        let top = inp.m().min(n + d - 1);
        let rest = inp.a.iter().sum::<i64>() + (d as i64 - 1) * an + d as i64;
        let delta = inp.b[..top].iter().sum::<i64>() - rest;
        let missing = (n + d - 1 - top) as i64;
        Ok(SupportDegreeData {
            partial_sums,
            delta,
            padded_partial_sums,
            padded_delta: delta + missing * (an + 1),
            truncation_equal: inp.m() + 2 <= n + d,
        })
    }

    pub fn d(&self, l: usize) -> i64 {
        if l == 0 {
            0
        } else {
            self.partial_sums[l - 1]
        }
    }

    pub fn padded_d(&self, l: usize) -> i64 {
        if l == 0 {
            0
        } else {
            self.padded_partial_sums[l - 1]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallSupportBounds {
    /// `reg Sym^l(M)` bound from `D_l` and `Δ`.
    pub sym: i64,
    /// `reg R/Fitt_0(M)` bound `reg R + Δ`.
    pub fitt: i64,
    /// Same case split evaluated on the padded data.
    pub padded_sym: i64,
    pub padded_fitt: i64,
    pub data: SupportDegreeData,
}

/// Bounds for modules of dimension at most one over rings of dimension at
/// least two. The inputs should come from a minimal presentation.
///
/// `sym` and `fitt` evaluate the formulas on the plain `D_l` and `Δ`. They
/// can undershoot when `m < n + d - 1` or when `b_d ≤ a_1`; the padded values
/// cover those cases (see [`SupportDegreeData`]).
pub fn small_support_bounds(inp: &BoundInputs, l: usize) -> Result<SmallSupportBounds> {
    let d = inp.dim_r;
    if d < 2 {
        return Err(Error::Precondition(format!("ring dimension {d} is below 2")));
    }
    if inp.support_dim() > 1 {
        return Err(Error::Precondition(format!(
            "module dimension {} is larger than 1",
            inp.support_dim()
        )));
    }
    if l == 0 {
        return Err(Error::Precondition("l must be positive".into()));
    }
    inp.require_nonzero()?;
    let n = inp.n();
    if inp.m() + 2 < n + d {
        return Err(Error::Precondition(format!(
            "{} relations cannot cut {} generators down to dimension at most 1 in dimension {}",
            inp.m(),
            n,
            d
        )));
    }
    let data = SupportDegreeData::from_inputs(inp, l.max(d))?;
    let a1 = inp.a[0];
    let an = inp.a[n - 1];
    let li = l as i64;
    let sym_of = |dl: &dyn Fn(usize) -> i64, delta: i64| {
        if l >= d {
            dl(d) + (li - d as i64) * a1
        } else if data.truncation_equal && l == d - 1 {
            dl(d - 1)
        } else {
            dl(l).max(delta + li * an)
        }
    };
    let sym = sym_of(&|k| data.d(k), data.delta);
    let padded_sym = sym_of(&|k| data.padded_d(k), data.padded_delta);
    Ok(SmallSupportBounds {
        sym: inp.reg_r + sym,
        fitt: inp.reg_r + data.delta,
        padded_sym: inp.reg_r + padded_sym,
        padded_fitt: inp.reg_r + data.padded_delta,
        data,
    })
}

/// `reg R + (d + n - 1) B - d` for modules of dimension at most one.
pub fn uniform_degree_bound(inp: &BoundInputs) -> Result<i64> {
    inp.require_nonzero()?;
    if inp.support_dim() > 1 {
        return Err(Error::Precondition(format!(
            "module dimension {} is larger than 1",
            inp.support_dim()
        )));
    }
    if inp.dim_r == 0 && inp.n() == 1 {
        return Err(Error::Precondition("needs a positive-dimensional ring or n > 1".into()));
    }
    inp.require_degree_window()?;
    let d = inp.dim_r as i64;
    Ok(inp.reg_r + (d + inp.n() as i64 - 1) * inp.big_b() - d)
}

/// Three upper bounds for the multiplicity of a module of codimension `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityBounds {
    /// `deg R · Σ_{i_1 ≤ … ≤ i_c} Π_ℓ (b_{i_ℓ+ℓ-1} - a_{i_ℓ})`.
    #[serde(serialize_with = "serialize_big")]
    pub sum_form: BigInt,
    /// `deg R · Σ_{p+q=c} (-1)^{p-c} σ_p(b) h_q(a)`.
    #[serde(serialize_with = "serialize_big")]
    pub series_form: BigInt,
    /// `deg R · C(c+n-1, n-1) · Π_{i ≤ c} (b_i - min a)`.
    #[serde(serialize_with = "serialize_big")]
    pub binomial_form: BigInt,
}

/// `b` must be descending with at least `c + n - 1` entries; only the first
/// `c + n - 1` are used.
pub fn multiplicity_bounds(a: &[i64], b: &[i64], c: usize, deg_r: i64) -> Result<MultiplicityBounds> {
    if c == 0 {
        return Err(Error::Precondition("codimension must be positive".into()));
    }
    let n = a.len();
    if n == 0 {
        return Err(Error::ZeroModule);
    }
    let s = c + n - 1;
    if b.len() < s {
        return Err(Error::Precondition(format!(
            "need at least {s} relation degrees, got {}",
            b.len()
        )));
    }
    if b.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition("relation degrees must be descending".into()));
    }
    let b = &b[..s];
    let deg = BigInt::from(deg_r);

    let mut sum = BigInt::zero();
    for idx in nondecreasing_tuples(n, c) {
        let mut prod = BigInt::one();
        for (ell, &i) in idx.iter().enumerate() {
            prod *= b[i + ell] - a[i];
        }
        sum += prod;
    }

    let sigma = elementary_symmetric(b, c);
    let h = complete_homogeneous(a, c);
    let mut series = BigInt::zero();
    for p in 0..=c {
        let term = &sigma[p] * &h[c - p];
        if (c - p).is_multiple_of(2) {
            series += term;
        } else {
            series -= term;
        }
    }

    let amin = *a.iter().min().unwrap();
    let mut binomial_form = binomial(s as u64, (n - 1) as u64);
    for &bi in &b[..c] {
        binomial_form *= bi - amin;
    }

    Ok(MultiplicityBounds {
        sum_form: &deg * sum,
        series_form: &deg * series,
        binomial_form: deg * binomial_form,
    })
}

/// Regularity bound for modules over a Cohen–Macaulay ring, split by the
/// dimension of the support.
pub fn cm_regularity_bound(inp: &BoundInputs) -> Result<BigInt> {
    inp.require_nonzero()?;
    inp.require_degree_window()?;
    cm_formula(
        inp.n() as u64,
        inp.big_b(),
        inp.codim,
        inp.support_dim(),
        inp.dim_r,
        inp.deg_r,
        inp.reg_r,
    )
}

fn cm_formula(n: u64, big_b: i64, c: usize, delta: usize, dim_r: usize, deg_r: i64, reg_r: i64) -> Result<BigInt> {
    let nb = BigInt::from(n);
    let bb = BigInt::from(big_b);
    let reg = BigInt::from(reg_r);
    let deg = BigInt::from(deg_r);
    if delta <= 1 {
        return Ok(if c > 0 {
            let d = BigInt::from(dim_r);
            reg + (&d + &nb - 1) * &bb - d
        } else {
            reg + bb - 1
        });
    }
    let base = if c > 0 {
        let ci = BigInt::from(c);
        deg * (reg + (&ci + &nb) * &bb - &ci) * binomial(c as u64 + n - 1, c as u64) * bb.pow(c as u32)
    } else {
        nb * deg * (reg + bb)
    };
    power_of_two_tower(&base, (delta - 2) as u32)
}

/// Bounds for homogeneous ideals `I ⊂ k[x_1..x_p]` generated in degree at
/// most `B`. Entries whose hypotheses fail are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealBounds {
    #[serde(serialize_with = "serialize_opt_big")]
    pub general_codim: Option<BigInt>,
    #[serde(serialize_with = "serialize_opt_big")]
    pub small_vars: Option<BigInt>,
    #[serde(serialize_with = "serialize_opt_big")]
    pub large_vars: Option<BigInt>,
    #[serde(serialize_with = "serialize_opt_big")]
    pub refined: Option<BigInt>,
    #[serde(serialize_with = "serialize_opt_big")]
    pub caviglia_sbarra: Option<BigInt>,
    #[serde(serialize_with = "serialize_opt_big")]
    pub brodmann_goetsch: Option<BigInt>,
    #[serde(serialize_with = "serialize_opt_big")]
    pub galligo_giusti: Option<BigInt>,
    #[serde(serialize_with = "serialize_opt_big")]
    pub bayer_mumford: Option<BigInt>,
}

impl IdealBounds {
    pub fn entries(&self) -> Vec<(&'static str, Option<&BigInt>)> {
        vec![
            ("general_codim", self.general_codim.as_ref()),
            ("small_vars", self.small_vars.as_ref()),
            ("large_vars", self.large_vars.as_ref()),
            ("refined", self.refined.as_ref()),
            ("caviglia_sbarra", self.caviglia_sbarra.as_ref()),
            ("brodmann_goetsch", self.brodmann_goetsch.as_ref()),
            ("galligo_giusti", self.galligo_giusti.as_ref()),
            ("bayer_mumford", self.bayer_mumford.as_ref()),
        ]
    }
}

/// `codim` enables the codimension-dependent entry; the Brodmann–Götsch
/// entry is evaluated for the cyclic module `S/I`.
pub fn ideal_bounds(p: usize, big_b: i64, codim: Option<usize>) -> IdealBounds {
    if p == 0 || big_b < 1 {
        return IdealBounds {
            general_codim: None,
            small_vars: None,
            large_vars: None,
            refined: None,
            caviglia_sbarra: None,
            brodmann_goetsch: None,
            galligo_giusti: None,
            bayer_mumford: None,
        };
    }
    let bb = BigInt::from(big_b);
    let pi = p as i64;
    let general_codim = codim.filter(|&c| c <= p && p - c >= 2).and_then(|c| {
        let base = BigInt::from(c + 1) * bb.pow(c as u32 + 1);
        power_of_two_tower(&base, (p - c - 2) as u32).ok()
    });
    let small_vars = (p <= 3).then(|| BigInt::from(pi * (big_b - 1) + 1));
    let (large_vars, refined) = if p >= 4 {
        let k = (p - 4) as u32;
        let large = power_of_two_tower(&(BigInt::from(3) * bb.pow(3u32)), k).ok();
        let refined = power_of_two_tower(&(BigInt::from(3) * bb.pow(2u32) * (&bb - 1)), k)
            .ok()
            .map(|x| x + 1);
        (large, refined)
    } else {
        (None, None)
    };
    let caviglia_sbarra =
        (p >= 3).then(|| power_of_two_tower(&(bb.pow(2u32) + 2 * &bb - 1), (p - 3) as u32).ok()).flatten();
    let galligo_giusti = (p >= 2).then(|| power_of_two_tower(&(2 * &bb), (p - 2) as u32).ok()).flatten();
    let bayer_mumford = factorial(p as u64 - 1).and_then(|e| checked_pow(&(2 * &bb), e).ok());
    IdealBounds {
        general_codim,
        small_vars,
        large_vars,
        refined,
        caviglia_sbarra,
        brodmann_goetsch: brodmann_goetsch_bound(p, 1, 1, 0, big_b).ok(),
        galligo_giusti,
        bayer_mumford,
    }
}

/// `[reg R + (n + 1) deg R + B + 1]^{2^{p-1}}` with `p = dim R`.
pub fn brodmann_goetsch_bound(p: usize, n: usize, deg_r: i64, reg_r: i64, big_b: i64) -> Result<BigInt> {
    if p == 0 {
        return Err(Error::Precondition("ring dimension must be positive".into()));
    }
    let base = BigInt::from(reg_r) + BigInt::from(n as i64 + 1) * deg_r + big_b + 1;
    power_of_two_tower(&base, (p - 1) as u32)
}

/// Either the exact regularity of a module with exactly `c + n - 1`
/// relations or the refined bracket bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum RefinedBound {
    Exact(i64),
    Bracket(#[serde(serialize_with = "serialize_big")] BigInt),
}

impl RefinedBound {
    pub fn value(&self) -> BigInt {
        match self {
            RefinedBound::Exact(v) => BigInt::from(*v),
            RefinedBound::Bracket(v) => v.clone(),
        }
    }
}

/// The exact case evaluates `reg R + Σ b_j - Σ a_i - c · min a_i` as written;
/// on complete intersections this differs from the Koszul value
/// `Σ (b_j - 1)`, so callers treat it as informational.
pub fn refined_regularity_bound(
    a: &[i64],
    b: &[i64],
    c: usize,
    delta: usize,
    deg_r: i64,
    reg_r: i64,
) -> Result<RefinedBound> {
    if c == 0 {
        return Err(Error::Precondition("codimension must be positive".into()));
    }
    let n = a.len();
    if n == 0 {
        return Err(Error::ZeroModule);
    }
    let mut bs = b.to_vec();
    bs.sort_unstable_by(|x, y| y.cmp(x));
    let mut asc = a.to_vec();
    asc.sort_unstable();
    if bs.len() == c + n - 1 {
        let v = reg_r + bs.iter().sum::<i64>() - asc.iter().sum::<i64>() - c as i64 * asc[0];
        return Ok(RefinedBound::Exact(v));
    }
    if bs.len() < c + n {
        return Err(Error::Precondition(format!(
            "need at least {} relation degrees, got {}",
            c + n,
            bs.len()
        )));
    }
    if delta < 2 {
        return Err(Error::Precondition(format!("support dimension {delta} is below 2")));
    }
    let head: i64 = bs[..c + n].iter().sum();
    let sum = multiplicity_bounds(&asc, &bs, c, 1)?.sum_form;
    let base = BigInt::from(deg_r) * (reg_r + head - c as i64) * sum;
    Ok(RefinedBound::Bracket(power_of_two_tower(&base, (delta - 2) as u32)?))
}

/// Bound for `reg Sym^l(M)`: the Cohen–Macaulay bound applied to the
/// presentation of `Sym^l(M)`, generated by `C(n+l-1, l)` elements in degrees
/// at most `l · a_max` and related in degrees at most `B + (l-1) a_max`.
pub fn sym_power_bound(inp: &BoundInputs, a_max: i64, l: usize) -> Result<BigInt> {
    inp.require_nonzero()?;
    inp.require_degree_window()?;
    if l == 0 {
        return Err(Error::Precondition("l must be positive".into()));
    }
    let big_b = inp.big_b();
    if a_max < inp.max_a().unwrap() || a_max > big_b - 1 {
        return Err(Error::Precondition(format!(
            "a_max = {a_max} must lie between max a_i and B - 1"
        )));
    }
    if inp.support_dim() < 2 {
        return Err(Error::Precondition(format!(
            "support dimension {} is below 2",
            inp.support_dim()
        )));
    }
    let n_sym = binomial((inp.n() + l - 1) as u64, l as u64)
        .to_u64()
        .ok_or_else(|| Error::Unsupported("too many generators".into()))?;
    cm_formula(
        n_sym,
        big_b + (l as i64 - 1) * a_max,
        inp.codim,
        inp.support_dim(),
        inp.dim_r,
        inp.deg_r,
        inp.reg_r,
    )
}

/// Writes a big integer as a JSON number with every digit.
pub fn serialize_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    big_to_json(v).serialize(s)
}

pub fn serialize_opt_big<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(big_to_json).serialize(s)
}

pub fn big_to_json(v: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(v.to_string().parse().expect("integers are valid JSON numbers"))
}

/// `base^{2^k}`.
pub fn power_of_two_tower(base: &BigInt, k: u32) -> Result<BigInt> {
    if k >= 63 {
        return Err(Error::Unsupported(format!("exponent 2^{k} is too large")));
    }
    checked_pow(base, 1u64 << k)
}

fn checked_pow(base: &BigInt, e: u64) -> Result<BigInt> {
    let bits = base.abs().bits().max(1);
    if bits.saturating_mul(e) > MAX_RESULT_BITS || e > u32::MAX as u64 {
        return Err(Error::Unsupported(format!(
            "a {bits}-bit base to the power {e} is too large to evaluate"
        )));
    }
    Ok(num_traits::Pow::pow(base, e as u32))
}

fn factorial(k: u64) -> Option<u64> {
    (1..=k).try_fold(1u64, |acc, i| acc.checked_mul(i))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// All `i_1 ≤ … ≤ i_c` in `0..n`.
fn nondecreasing_tuples(n: usize, c: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(c);
    fn rec(n: usize, c: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == c {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, c, i, cur, out);
            cur.pop();
        }
    }
    rec(n, c, 0, &mut cur, &mut out);
    out
}

/// `σ_0 .. σ_k` of `xs`.
fn elementary_symmetric(xs: &[i64], k: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); k + 1];
    e[0] = BigInt::one();
    for &x in xs {
        for j in (1..=k).rev() {
            let prev = &e[j - 1] * x;
            e[j] += prev;
        }
    }
    e
}

/// `h_0 .. h_k` of `xs` (sum of all monomials of each degree).
fn complete_homogeneous(xs: &[i64], k: usize) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero(); k + 1];
    h[0] = BigInt::one();
    for &x in xs {
        for j in 1..=k {
            let prev = &h[j - 1] * x;
            h[j] += prev;
        }
    }
    h
}
