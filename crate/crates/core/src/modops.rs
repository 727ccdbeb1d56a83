//! Module constructions: quotients by linear forms, colon kernels, `H⁰_m` via
//! saturation, symmetric powers, Fitting ideals and minimal presentations.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, generator_degrees, minimal_generator_indices, normal_form, syzygy_generators, FreeModule,
    GroebnerBasis, ModuleElement,
};
use crate::hilbert::LaurentPoly;
use crate::invariants::quotient_numerator;
use crate::linalg::quotient_dimension;
use crate::polynomial::Polynomial;
use crate::presentation::GradedPresentation;
use crate::ring::{GradedRing, RingRef};

/// The submodule `N = im φ + J·G` of `G` describing `M = G/N` over the ambient
/// polynomial ring.
#[derive(Debug, Clone)]
pub(crate) struct Submodule {
    pub ring: GradedRing,
    pub twists: Vec<i64>,
    pub gens: Vec<ModuleElement>,
}

impl Submodule {
    pub fn of(m: &GradedPresentation) -> Self {
        let lifted = m.lift_to_ambient();
        Submodule {
            ring: lifted.ring().as_ref().clone(),
            twists: lifted.row_twists().to_vec(),
            gens: lifted.column_elements().into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    pub fn degrees(&self) -> Vec<i64> {
        generator_degrees(&FreeModule::new(self.twists.clone()), &self.gens)
    }

    pub fn numerator(&self) -> Result<LaurentPoly> {
        quotient_numerator(&self.ring, &self.twists, &self.gens)
    }

    /// `dim (G/N)_d` by dense linear algebra.
    pub fn quotient_dimension(&self, d: i64) -> usize {
        quotient_dimension(self.ring.field(), self.ring.nvars(), &self.twists, &self.gens, &self.degrees(), d)
    }

    fn free(&self) -> FreeModule {
        FreeModule::new(self.twists.clone())
    }

    /// Elements of `G` not in `N` among `cands`, pruned to a minimal set
    /// modulo `N`.
    pub fn new_generators(&self, cands: &[ModuleElement]) -> Result<Vec<ModuleElement>> {
        let idx = minimal_generator_indices(&self.ring, &self.free(), cands, &self.gens)?;
        Ok(idx.into_iter().map(|i| cands[i].clone()).collect())
    }

    /// Generators of `N :_G f` for a form `f` (together they generate the
    /// colon; `N` itself is contained in it).
    pub fn colon_by_form(&self, f: &Polynomial) -> Result<Vec<ModuleElement>> {
        let n = self.twists.len();
        let mut cols: Vec<ModuleElement> = (0..n)
            .map(|i| ModuleElement::from_components([(i, f.clone())]))
            .collect();
        cols.extend(self.gens.iter().cloned());
        let syz = syzygy_generators(&self.ring, &self.free(), &cols)?;
        Ok(project(&syz, n))
    }

    /// Generators of `N :_G m` for the irrelevant ideal `m = (x_1..x_p)`.
    pub fn colon_by_max_ideal(&self) -> Result<Vec<ModuleElement>> {
        let n = self.twists.len();
        let p = self.ring.nvars();
        let block_twists: Vec<i64> = (0..p).flat_map(|_| self.twists.iter().copied()).collect();
        let mut cols: Vec<ModuleElement> = (0..n)
            .map(|i| ModuleElement::from_components((0..p).map(|b| (b * n + i, self.ring.var(b)))))
            .collect();
        for b in 0..p {
            for g in &self.gens {
                cols.push(ModuleElement::from_components(
                    g.components().iter().map(|(&i, q)| (b * n + i, q.clone())),
                ));
            }
        }
        let syz = syzygy_generators(&self.ring, &FreeModule::new(block_twists), &cols)?;
        Ok(project(&syz, n))
    }

    pub fn with_extra(&self, extra: &[ModuleElement]) -> Submodule {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Submodule {
            ring: self.ring.clone(),
            twists: self.twists.clone(),
            gens,
        }
    }
}

/// Keeps the first `n` coordinates.
fn project(elems: &[ModuleElement], n: usize) -> Vec<ModuleElement> {
    elems
        .iter()
        .map(|e| ModuleElement::from_components(e.components().range(..n).map(|(&i, p)| (i, p.clone()))))
        .filter(|e| !e.is_zero())
        .collect()
}

pub fn check_linear(ring: &GradedRing, l: &Polynomial) -> Result<()> {
    ring.check_poly(l)?;
    if !l.is_homogeneous() || l.degree() != Some(1) {
        return Err(Error::NotLinear(l.degree()));
    }
    Ok(())
}

/// `M / lM`: appends `l · e_i` for every generator.
pub fn quotient_by_linear(m: &GradedPresentation, l: &Polynomial) -> Result<GradedPresentation> {
    check_linear(m.ring(), l)?;
    let nv = m.ring().nvars();
    let extra = (0..m.n())
        .map(|i| {
            let mut col = vec![Polynomial::zero(nv); m.n()];
            col[i] = l.clone();
            col
        })
        .collect();
    m.with_extra_columns(extra)
}

/// `K = 0 :_M l`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColonKernel {
    /// Minimal generators of `(N :_G l) / N`, as elements of `G`.
    pub generators: Vec<ModuleElement>,
    pub generator_degrees: Vec<i64>,
    /// Presentation of `K` on those generators; `None` when `K = 0`.
    pub presentation: Option<GradedPresentation>,
    /// Hilbert numerator of `K`.
    pub numerator: LaurentPoly,
    /// `λ(K)`; `None` when `K` has infinite length.
    pub length: Option<i64>,
}

impl ColonKernel {
    pub fn is_finite(&self) -> bool {
        self.length.is_some()
    }
}

/// Computes `0 :_M l` and its length.
pub fn colon_kernel(m: &GradedPresentation, l: &Polynomial) -> Result<ColonKernel> {
    check_linear(m.ring(), l)?;
    let sub = Submodule::of(m);
    let colon = sub.colon_by_form(l)?;
    let generators = sub.new_generators(&colon)?;
    let free = sub.free();
    let generator_degrees = generator_degrees(&free, &generators);
    let bigger = sub.with_extra(&generators);
    let numerator = sub.numerator()?.sub(&bigger.numerator()?);
    let length = finite_length(&numerator, sub.ring.nvars());
    let presentation = if generators.is_empty() {
        None
    } else {
        // relations among the generators modulo N
        let k = generators.len();
        let mut cols = generators.clone();
        cols.extend(sub.gens.iter().cloned());
        let syz = syzygy_generators(&sub.ring, &free, &cols)?;
        let rels = project(&syz, k);
        let rel_module = FreeModule::new(generator_degrees.clone());
        let idx = minimal_generator_indices(&sub.ring, &rel_module, &rels, &[])?;
        let ring: RingRef = Arc::new(sub.ring.clone());
        let columns: Vec<Vec<Polynomial>> = idx.iter().map(|&i| rels[i].to_dense(k, sub.ring.nvars())).collect();
        let degrees = idx.iter().map(|&i| rels[i].degree(&generator_degrees)).collect();
        Some(GradedPresentation::with_degrees(
            ring,
            generator_degrees.clone(),
            columns,
            degrees,
        )?)
    };
    Ok(ColonKernel {
        generators,
        generator_degrees,
        presentation,
        numerator,
        length,
    })
}

/// Length of a module with Hilbert numerator `num` over `p` variables, if
/// finite.
pub fn finite_length(num: &LaurentPoly, p: usize) -> Option<i64> {
    if num.is_zero() {
        return Some(0);
    }
    let mut q = num.clone();
    for _ in 0..p {
        q = q.div_one_minus_t()?;
    }
    Some(q.eval_at_one())
}

/// Degreewise lengths of `H⁰_m(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H0Profile {
    pub h0_by_degree: BTreeMap<i64, i64>,
    /// Top nonvanishing degree; `None` encodes `-∞`.
    pub a0: Option<i64>,
    pub indeg_h0: Option<i64>,
    /// `a0 - indeg + 1`, or 0 for an empty profile.
    pub a_span: i64,
}

impl H0Profile {
    pub fn from_values(values: BTreeMap<i64, i64>) -> Self {
        let h0_by_degree: BTreeMap<i64, i64> = values.into_iter().filter(|(_, v)| *v != 0).collect();
        let a0 = h0_by_degree.keys().next_back().copied();
        let indeg_h0 = h0_by_degree.keys().next().copied();
        let a_span = match (a0, indeg_h0) {
            (Some(a), Some(i)) => a - i + 1,
            _ => 0,
        };
        H0Profile {
            h0_by_degree,
            a0,
            indeg_h0,
            a_span,
        }
    }

    pub fn get(&self, mu: i64) -> i64 {
        self.h0_by_degree.get(&mu).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.h0_by_degree.is_empty()
    }

    /// `Σ_{ν > μ} h⁰(ν)`.
    pub fn sum_above(&self, mu: i64) -> i64 {
        self.h0_by_degree.range(mu + 1..).map(|(_, v)| v).sum()
    }

    pub fn sum_from(&self, mu: i64) -> i64 {
        self.h0_by_degree.range(mu..).map(|(_, v)| v).sum()
    }
}

/// Result of saturating `N` by the irrelevant ideal.
#[derive(Debug, Clone)]
pub struct Saturation {
    pub profile: H0Profile,
    /// `M' = M / H⁰_m(M)`.
    pub quotient: GradedPresentation,
    /// Generators of `N^sat / N` as elements of `G`.
    pub generators: Vec<ModuleElement>,
}

/// `H⁰_m(M) = (N :_G m^∞) / N` by iterated colon with the irrelevant ideal,
/// stopping when the Hilbert numerator no longer changes.
pub fn saturate(m: &GradedPresentation) -> Result<Saturation> {
    let sub = Submodule::of(m);
    let base_num = sub.numerator()?;
    if base_num.is_zero() {
        return Err(Error::ZeroModule);
    }
    let mut current = sub.clone();
    let mut num = base_num.clone();
    let mut extra: Vec<ModuleElement> = Vec::new();
    loop {
        let colon = current.colon_by_max_ideal()?;
        let new = current.new_generators(&colon)?;
        if new.is_empty() {
            break;
        }
        let next = current.with_extra(&new);
        let next_num = next.numerator()?;
        extra.extend(new);
        current = next;
        if next_num == num {
            break;
        }
        num = next_num;
    }
    let p = sub.ring.nvars();
    let diff = base_num.sub(&num);
    let series = {
        let mut q = diff.clone();
        for _ in 0..p {
            q = q
                .div_one_minus_t()
                .ok_or_else(|| Error::Unsupported("saturation did not produce a finite-length quotient".into()))?;
        }
        q
    };
    let mut values = BTreeMap::new();
    if let (Some(lo), Some(hi)) = (series.min_exponent(), series.max_exponent()) {
        let lo = lo.min(0).min(sub.twists.iter().copied().min().unwrap_or(0));
        for mu in lo..=hi + 2 {
            let h = sub.quotient_dimension(mu) as i64 - current.quotient_dimension(mu) as i64;
            debug_assert_eq!(h, series.coefficient(mu), "dense and series values of h0 disagree at {mu}");
            values.insert(mu, h);
        }
    }
    let profile = H0Profile::from_values(values);
    let nv = sub.ring.nvars();
    let generators = if extra.is_empty() {
        Vec::new()
    } else {
        sub.new_generators(&extra)?
    };
    let extra_cols: Vec<Vec<Polynomial>> = generators.iter().map(|g| g.to_dense(m.n(), nv)).collect();
    let quotient = m.with_extra_columns(extra_cols)?;
    Ok(Saturation {
        profile,
        quotient,
        generators,
    })
}

/// `H⁰_m` profile of `M` and a presentation of `M' = M / H⁰_m(M)`.
pub fn h0_profile(m: &GradedPresentation) -> Result<(H0Profile, GradedPresentation)> {
    let s = saturate(m)?;
    Ok((s.profile, s.quotient))
}

/// Multisets of size `l` from `0..n`, as nondecreasing index lists in
/// lexicographic order.
pub fn multisets(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, l, cur, out);
            cur.pop();
        }
    }
    rec(0, n, l, &mut cur, &mut out);
    out
}

/// Subsets of size `k` of `0..n`, increasing, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `Sym^l(M)`: generators are the degree-`l` monomials in the generators of
/// `M`; relations are the columns of φ multiplied into every degree-`(l-1)`
/// monomial.
pub fn sym_power(m: &GradedPresentation, l: usize) -> Result<GradedPresentation> {
    if l == 0 {
        return Err(Error::Precondition("symmetric power index must be at least 1".into()));
    }
    let n = m.n();
    let nv = m.ring().nvars();
    let gens = multisets(n, l);
    let index: HashMap<&Vec<usize>, usize> = gens.iter().enumerate().map(|(k, g)| (g, k)).collect();
    let twists: Vec<i64> = gens.iter().map(|g| g.iter().map(|&i| m.row_twists()[i]).sum()).collect();
    let mut columns = Vec::new();
    let mut degrees = Vec::new();
    for j in 0..m.m() {
        for beta in multisets(n, l - 1) {
            let mut col = vec![Polynomial::zero(nv); gens.len()];
            for i in 0..n {
                let f = m.entry(i, j);
                if f.is_zero() {
                    continue;
                }
                let mut g = beta.clone();
                g.push(i);
                g.sort_unstable();
                col[index[&g]] = f.clone();
            }
            columns.push(col);
            degrees.push(Some(m.column_degrees()[j] + beta.iter().map(|&i| m.row_twists()[i]).sum::<i64>()));
        }
    }
    GradedPresentation::with_degrees(m.ring().clone(), twists, columns, degrees)
}

/// Maximal minors of φ by Laplace expansion along the rows, memoized on
/// (row, remaining column set).
pub struct MinorCache<'a> {
    m: &'a GradedPresentation,
    memo: HashMap<(usize, u64), Polynomial>,
}

impl<'a> MinorCache<'a> {
    pub fn new(m: &'a GradedPresentation) -> Self {
        assert!(m.m() <= 64, "too many columns for minor enumeration");
        MinorCache { m, memo: HashMap::new() }
    }

    /// Maximal minor (all `n` rows) on `cols`.
    pub fn minor(&mut self, cols: &[usize]) -> Polynomial {
        let mask = cols.iter().fold(0u64, |acc, &c| acc | (1 << c));
        self.minor_from(0, mask)
    }

    fn minor_from(&mut self, row: usize, mask: u64) -> Polynomial {
        let nv = self.m.ring().nvars();
        if row == self.m.n() {
            return Polynomial::constant(nv, 1);
        }
        if let Some(p) = self.memo.get(&(row, mask)) {
            return p.clone();
        }
        let field = *self.m.ring().field();
        let mut acc = Polynomial::zero(nv);
        let mut t = 0;
        for c in 0..self.m.m() {
            if mask & (1 << c) == 0 {
                continue;
            }
            let e = self.m.entry(row, c).clone();
            if !e.is_zero() {
                let sub = self.minor_from(row + 1, mask & !(1 << c));
                let term = e.mul(&sub, &field);
                acc = if t % 2 == 0 { acc.add(&term, &field) } else { acc.sub(&term, &field) };
            }
            t += 1;
        }
        self.memo.insert((row, mask), acc.clone());
        acc
    }
}

/// All nonzero `n × n` minors of φ, exact duplicates removed, in the order of
/// their column sets.
pub fn fitting_ideal_0(m: &GradedPresentation) -> Vec<Polynomial> {
    let (n, k) = (m.n(), m.m());
    if k < n || n == 0 {
        return Vec::new();
    }
    let mut cache = MinorCache::new(m);
    let mut out: Vec<Polynomial> = Vec::new();
    for cols in subsets(k, n) {
        let d = cache.minor(&cols);
        if !d.is_zero() && !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

fn quotient_gb(ring: &GradedRing) -> Result<Option<GroebnerBasis>> {
    if ring.is_polynomial_ring() {
        return Ok(None);
    }
    let gens: Vec<ModuleElement> = ring
        .quotient()
        .iter()
        .map(|g| ModuleElement::from_dense(std::slice::from_ref(g)))
        .collect();
    Ok(Some(buchberger(&ring.ambient(), &FreeModule::new(vec![0]), &gens)?))
}

fn reduce_entry(gb: &Option<GroebnerBasis>, f: &Polynomial) -> Result<Polynomial> {
    match gb {
        None => Ok(f.clone()),
        Some(gb) => {
            let nf = normal_form(&ModuleElement::from_dense(std::slice::from_ref(f)), gb)?;
            Ok(nf.get(0).cloned().unwrap_or_else(|| Polynomial::zero(f.nvars())))
        }
    }
}

/// Eliminates unit entries and redundant relations. The result has no
/// nonzero constant entries and a minimal set of relations; a module that
/// turns out to be zero comes back with no generators.
pub fn minimal_presentation(m: &GradedPresentation) -> Result<GradedPresentation> {
    let ring = m.ring().clone();
    let field = *ring.field();
    let jgb = quotient_gb(&ring)?;
    let mut twists = m.row_twists().to_vec();
    let mut degrees = m.column_degrees().to_vec();
    let mut cols: Vec<Vec<Polynomial>> = m
        .columns()
        .iter()
        .map(|c| c.iter().map(|f| reduce_entry(&jgb, f)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    loop {
        let mut pivot = None;
        'search: for (c, col) in cols.iter().enumerate() {
            for (r, f) in col.iter().enumerate() {
                if f.is_nonzero_constant() {
                    pivot = Some((c, r, f.as_constant().unwrap()));
                    break 'search;
                }
            }
        }
        let Some((c, r, u)) = pivot else { break };
        let uinv = field.inv(u);
        let pc = cols[c].clone();
        for j in 0..cols.len() {
            if j == c || cols[j][r].is_zero() {
                continue;
            }
            let q = cols[j][r].scale(uinv, &field);
            for i in 0..twists.len() {
                if pc[i].is_zero() {
                    continue;
                }
                let v = cols[j][i].sub(&pc[i].mul(&q, &field), &field);
                cols[j][i] = reduce_entry(&jgb, &v)?;
            }
            debug_assert!(cols[j][r].is_zero());
        }
        cols.remove(c);
        degrees.remove(c);
        for col in cols.iter_mut() {
            col.remove(r);
        }
        twists.remove(r);
    }

    let keep: Vec<usize> = (0..cols.len()).filter(|&j| cols[j].iter().any(|f| !f.is_zero())).collect();
    let cols: Vec<Vec<Polynomial>> = keep.iter().map(|&j| cols[j].clone()).collect();
    let degrees: Vec<i64> = keep.iter().map(|&j| degrees[j]).collect();
    if twists.is_empty() {
        return Ok(GradedPresentation::from_parts(ring, twists, Vec::new(), Vec::new()));
    }

    // drop relations that are redundant modulo J·G and the others
    let ambient = ring.ambient();
    let free = FreeModule::new(twists.clone());
    let base: Vec<ModuleElement> = (0..twists.len())
        .flat_map(|i| {
            ring.quotient()
                .iter()
                .map(move |g| ModuleElement::from_components([(i, g.clone())]))
        })
        .collect();
    let elems: Vec<ModuleElement> = cols.iter().map(|c| ModuleElement::from_dense(c)).collect();
    let mut idx = minimal_generator_indices(&ambient, &free, &elems, &base)?;
    idx.sort_unstable();
    Ok(GradedPresentation::from_parts(
        ring,
        twists,
        idx.iter().map(|&j| cols[j].clone()).collect(),
        idx.iter().map(|&j| degrees[j]).collect(),
    ))
}

/// `(b_0^R(M), b_1^R(M))`: top generator and relation degrees of a minimal
/// presentation over `R`. `None` encodes `-∞`.
pub fn top_presentation_degrees(m: &GradedPresentation) -> Result<(Option<i64>, Option<i64>)> {
    let mp = minimal_presentation(m)?;
    Ok((
        mp.row_twists().iter().copied().max(),
        mp.column_degrees().iter().copied().max(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{hilbert_data, regularity};
    use crate::monomial::Monomial;
    use crate::presentation::cyclic;

    fn s(n: usize) -> RingRef {
        Arc::new(GradedRing::polynomial(101, n).unwrap())
    }

    fn mono(e: &[u16]) -> Polynomial {
        Polynomial::monomial(Monomial::from_exponents(e), 1)
    }

    #[test]
    fn quotient_by_linear_appends_columns() {
        let r = s(3);
        let m = cyclic(r.clone(), 0, vec![mono(&[2, 0, 0]), mono(&[1, 1, 0])]).unwrap();
        let q = quotient_by_linear(&m, &r.var(2)).unwrap();
        assert_eq!(q.m(), 3);
        assert_eq!(q.column_degrees(), &[2, 2, 1]);
        assert_eq!(q.row_twists(), m.row_twists());
        assert!(matches!(quotient_by_linear(&m, &mono(&[2, 0, 0])), Err(Error::NotLinear(Some(2)))));
        let free = GradedPresentation::free(r.clone(), vec![3]).unwrap();
        let q = quotient_by_linear(&free, &r.var(0)).unwrap();
        assert_eq!(q.column_degrees(), &[4]);
    }

    #[test]
    fn colon_kernel_examples() {
        let r = s(2);
        let m = cyclic(r.clone(), 0, vec![mono(&[2, 0]), mono(&[1, 1])]).unwrap();
        let k = colon_kernel(&m, &r.var(1)).unwrap();
        assert_eq!(k.length, Some(1));
        assert_eq!(k.generator_degrees, vec![1]);

        let r3 = s(3);
        let m = cyclic(r3.clone(), 0, vec![mono(&[2, 0, 0]), mono(&[1, 1, 0])]).unwrap();
        let k = colon_kernel(&m, &r3.var(2)).unwrap();
        assert_eq!(k.length, Some(0));
        assert!(k.generators.is_empty());

        let free = GradedPresentation::free(r.clone(), vec![0]).unwrap();
        assert_eq!(colon_kernel(&free, &r.var(0)).unwrap().length, Some(0));
    }

    #[test]
    fn colon_kernel_of_infinite_length() {
        // M = S/(x) in 2 vars, l = x: K = M has dimension 1
        let r = s(2);
        let m = cyclic(r.clone(), 0, vec![mono(&[2, 0])]).unwrap();
        let k = colon_kernel(&m, &r.var(0)).unwrap();
        assert_eq!(k.length, None);
        let p = k.presentation.unwrap();
        assert_eq!(hilbert_data(&p).unwrap().dimension, Some(1));
    }

    #[test]
    fn h0_examples() {
        let r = s(2);
        let m = cyclic(r.clone(), 0, vec![mono(&[2, 0]), mono(&[1, 1])]).unwrap();
        let (p, mp) = h0_profile(&m).unwrap();
        assert_eq!(p.h0_by_degree, BTreeMap::from([(1, 1)]));
        assert_eq!((p.a0, p.a_span), (Some(1), 1));
        assert_eq!(regularity(&mp).unwrap(), 0);

        let m = cyclic(r.clone(), 0, vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]).unwrap();
        let (p, _) = h0_profile(&m).unwrap();
        assert_eq!(p.h0_by_degree, BTreeMap::from([(0, 1), (1, 2)]));
        assert_eq!((p.a0, p.indeg_h0, p.a_span), (Some(1), Some(0), 2));

        let free = GradedPresentation::free(r, vec![0]).unwrap();
        let (p, mp) = h0_profile(&free).unwrap();
        assert!(p.is_empty());
        assert_eq!((p.a0, p.a_span), (None, 0));
        assert_eq!(mp, free);
    }

    #[test]
    fn sym_power_examples() {
        let r = s(2);
        let m = GradedPresentation::new(r.clone(), vec![0, 0], vec![vec![r.var(0), r.var(1)]]).unwrap();
        assert_eq!(sym_power(&m, 1).unwrap(), m);
        let s2 = sym_power(&m, 2).unwrap();
        assert_eq!(s2.n(), 3);
        assert_eq!(s2.m(), 2);
        assert_eq!(s2.column(0), &[r.var(0), r.var(1), r.zero()]);
        assert_eq!(s2.column(1), &[r.zero(), r.var(0), r.var(1)]);

        let c = cyclic(r.clone(), 0, vec![mono(&[2, 0]), mono(&[1, 1])]).unwrap();
        let c3 = sym_power(&c, 3).unwrap();
        assert_eq!(c3.n(), 1);
        assert_eq!(c3.column_degrees(), c.column_degrees());
    }

    #[test]
    fn fitting_examples() {
        let r = s(2);
        let m = cyclic(r.clone(), 0, vec![mono(&[2, 0]), mono(&[1, 1])]).unwrap();
        assert_eq!(fitting_ideal_0(&m), vec![mono(&[2, 0]), mono(&[1, 1])]);
        let d = GradedPresentation::new(r.clone(), vec![0, 0], vec![vec![r.var(0), r.zero()], vec![r.zero(), r.var(1)]]).unwrap();
        assert_eq!(fitting_ideal_0(&d), vec![mono(&[1, 1])]);
        let wide = GradedPresentation::new(r.clone(), vec![0, 0], vec![vec![r.var(0), r.var(1)]]).unwrap();
        assert!(fitting_ideal_0(&wide).is_empty());
    }

    #[test]
    fn minimal_presentation_examples() {
        let r = s(2);
        let unit = cyclic(r.clone(), 0, vec![r.one()]).unwrap();
        let mp = minimal_presentation(&unit).unwrap();
        assert!(mp.has_no_generators());

        let m = cyclic(r.clone(), 0, vec![mono(&[2, 0]), mono(&[1, 1])]).unwrap();
        assert_eq!(minimal_presentation(&m).unwrap(), m);

        // [[ψ, 0], [0, 1], [0, 0]] with ψ = (x^2, xy) on the first row
        let z = r.zero();
        let block = GradedPresentation::new(
            r.clone(),
            vec![0, 2, 0],
            vec![
                vec![mono(&[2, 0]), z.clone(), z.clone()],
                vec![mono(&[1, 1]), z.clone(), z.clone()],
                vec![z.clone(), r.one(), z.clone()],
            ],
        )
        .unwrap();
        let mp = minimal_presentation(&block).unwrap();
        assert_eq!(mp.row_twists(), &[0, 0]);
        assert_eq!(mp.m(), 2);
        assert_eq!(mp.column(0), &[mono(&[2, 0]), z.clone()]);

        // redundant relation: x^2 listed twice
        let dup = cyclic(r.clone(), 0, vec![mono(&[2, 0]), mono(&[2, 0]).scale(3, r.field())]).unwrap();
        assert_eq!(minimal_presentation(&dup).unwrap().m(), 1);
    }
}
