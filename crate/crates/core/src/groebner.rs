//! Buchberger's algorithm for homogeneous submodules of graded free modules.
//!
//! Module elements are handled internally as flat term lists
//! `(component, monomial, coefficient)` sorted decreasingly for a module
//! order. Two module orders are supported: position-over-term with lower
//! component index winning, and the Schreyer order induced by the lead terms
//! of a previous Gröbner basis (used by the resolution engine).

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField};
use crate::monomial::{Monomial, MonomialOrder};
use crate::polynomial::Polynomial;
use crate::ring::GradedRing;

/// A graded free module `⊕ R(-t_i)`, described by its twists `t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        FreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// An element of a free module: sparse map from component index to entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ModuleElement {
    components: BTreeMap<usize, Polynomial>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement::default()
    }

    pub fn from_components(components: impl IntoIterator<Item = (usize, Polynomial)>) -> Self {
        ModuleElement {
            components: components.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
        }
    }

    /// Builds from a dense column.
    pub fn from_dense(entries: &[Polynomial]) -> Self {
        Self::from_components(entries.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        (0..rank).map(|i| self.get(i).cloned().unwrap_or_else(|| Polynomial::zero(nvars))).collect()
    }

    pub fn components(&self) -> &BTreeMap<usize, Polynomial> {
        &self.components
    }

    pub fn get(&self, i: usize) -> Option<&Polynomial> {
        self.components.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Common value of `deg(entry_i) + twist_i`; `None` for zero or
    /// inhomogeneous elements.
    pub fn degree(&self, twists: &[i64]) -> Option<i64> {
        let mut deg = None;
        for (&i, p) in &self.components {
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree()? as i64 + twists[i];
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn is_homogeneous(&self, twists: &[i64]) -> bool {
        self.is_zero() || self.degree(twists).is_some()
    }

    pub fn add(&self, other: &ModuleElement, field: &PrimeField) -> ModuleElement {
        let mut out = self.components.clone();
        for (&i, p) in &other.components {
            let s = match out.get(&i) {
                Some(q) => q.add(p, field),
                None => p.clone(),
            };
            if s.is_zero() {
                out.remove(&i);
            } else {
                out.insert(i, s);
            }
        }
        ModuleElement { components: out }
    }

    pub fn scale_by(&self, f: &Polynomial, field: &PrimeField) -> ModuleElement {
        Self::from_components(self.components.iter().map(|(&i, p)| (i, p.mul(f, field))))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: Coeff,
}

pub(crate) type Vector = Vec<Term>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FrameEntry {
    pub comp0: u32,
    pub lead: Monomial,
    pub path: Vec<u32>,
}

/// Data defining a Schreyer order on a free module `F_k` whose basis maps to
/// a Gröbner basis in `F_{k-1}`: for each basis element, the component and
/// monomial of its image's lead term pushed all the way down to `F_0`, plus
/// the chain of intermediate indices used for tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SchreyerFrame {
    pub entries: Vec<FrameEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum OrderKind {
    Pot,
    Schreyer(Arc<SchreyerFrame>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ModOrder {
    pub mono: MonomialOrder,
    pub kind: OrderKind,
}

impl ModOrder {
    pub fn pot(mono: MonomialOrder) -> Self {
        ModOrder {
            mono,
            kind: OrderKind::Pot,
        }
    }

    #[inline]
    pub fn cmp(&self, ac: u32, am: &Monomial, bc: u32, bm: &Monomial) -> Ordering {
        match &self.kind {
            OrderKind::Pot => {
                if ac != bc {
                    return bc.cmp(&ac);
                }
                self.mono.cmp(am, bm)
            }
            OrderKind::Schreyer(frame) => {
                let ea = &frame.entries[ac as usize];
                let eb = &frame.entries[bc as usize];
                if ea.comp0 != eb.comp0 {
                    return eb.comp0.cmp(&ea.comp0);
                }
                let o = self.mono.cmp_products(am, &ea.lead, bm, &eb.lead);
                if o != Ordering::Equal {
                    return o;
                }
                for (x, y) in ea.path.iter().zip(eb.path.iter()) {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                bc.cmp(&ac)
            }
        }
    }

    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(a.comp, &a.mono, b.comp, &b.mono)
    }
}

/// Arithmetic on sorted term vectors.
pub(crate) struct Engine<'a> {
    pub field: &'a PrimeField,
    pub order: &'a ModOrder,
    pub twists: &'a [i64],
}

impl<'a> Engine<'a> {
    pub fn new(field: &'a PrimeField, order: &'a ModOrder, twists: &'a [i64]) -> Self {
        Engine { field, order, twists }
    }

    /// Sorts terms decreasingly and combines duplicates.
    pub fn normalize(&self, mut terms: Vec<Term>) -> Vector {
        terms.sort_by(|a, b| self.order.cmp_terms(b, a));
        let mut out: Vector = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mono == t.mono {
                    last.coeff = self.field.add(last.coeff, t.coeff);
                    if last.coeff == 0 {
                        out.pop();
                    }
                    continue;
                }
            }
            if t.coeff != 0 {
                out.push(t);
            }
        }
        out
    }

    pub fn from_element(&self, e: &ModuleElement) -> Vector {
        let terms = e
            .components
            .iter()
            .flat_map(|(&i, p)| {
                p.terms().iter().map(move |(m, c)| Term {
                    comp: i as u32,
                    mono: m.clone(),
                    coeff: *c,
                })
            })
            .collect();
        self.normalize(terms)
    }

    pub fn to_element(&self, v: &[Term], nvars: usize) -> ModuleElement {
        let mut by_comp: BTreeMap<usize, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for t in v {
            by_comp.entry(t.comp as usize).or_default().push((t.mono.clone(), t.coeff));
        }
        ModuleElement::from_components(
            by_comp
                .into_iter()
                .map(|(i, ts)| (i, Polynomial::from_terms(nvars, ts, self.field))),
        )
    }

    pub fn degree(&self, v: &[Term]) -> i64 {
        v[0].mono.degree() as i64 + self.twists[v[0].comp as usize]
    }

    /// `a - c * m * g`.
    pub fn sub_mul(&self, a: &[Term], c: Coeff, m: &Monomial, g: &[Term]) -> Vector {
        let neg = self.field.neg(c);
        let mut out = Vec::with_capacity(a.len() + g.len());
        let mut i = 0;
        let mut gi = g.iter().map(|t| Term {
            comp: t.comp,
            mono: t.mono.mul(m),
            coeff: self.field.mul(t.coeff, neg),
        });
        let mut next = gi.next();
        while let Some(gt) = next.take() {
            while i < a.len() && self.order.cmp_terms(&a[i], &gt) == Ordering::Greater {
                out.push(a[i].clone());
                i += 1;
            }
            if i < a.len() && a[i].comp == gt.comp && a[i].mono == gt.mono {
                let s = self.field.add(a[i].coeff, gt.coeff);
                if s != 0 {
                    out.push(Term {
                        comp: gt.comp,
                        mono: gt.mono,
                        coeff: s,
                    });
                }
                i += 1;
            } else {
                out.push(gt);
            }
            next = gi.next();
        }
        out.extend_from_slice(&a[i..]);
        out
    }

    pub fn make_monic(&self, v: &mut Vector) {
        if let Some(t) = v.first() {
            if t.coeff != 1 {
                let inv = self.field.inv(t.coeff);
                for t in v.iter_mut() {
                    t.coeff = self.field.mul(t.coeff, inv);
                }
            }
        }
    }

    pub fn scale(&self, v: &[Term], c: Coeff, m: &Monomial) -> Vector {
        if c == 0 {
            return Vec::new();
        }
        v.iter()
            .map(|t| Term {
                comp: t.comp,
                mono: t.mono.mul(m),
                coeff: self.field.mul(t.coeff, c),
            })
            .collect()
    }
}

/// Lookup of basis elements by lead component.
pub(crate) struct Divisors {
    by_comp: Vec<Vec<usize>>,
}

impl Divisors {
    pub fn new(rank: usize) -> Self {
        Divisors {
            by_comp: vec![Vec::new(); rank],
        }
    }

    pub fn build(rank: usize, basis: &[Vector]) -> Self {
        let mut d = Divisors::new(rank);
        for (i, g) in basis.iter().enumerate() {
            d.insert(i, g);
        }
        d
    }

    pub fn insert(&mut self, idx: usize, g: &[Term]) {
        self.by_comp[g[0].comp as usize].push(idx);
    }

    pub fn find(&self, basis: &[Vector], t: &Term) -> Option<usize> {
        self.by_comp[t.comp as usize]
            .iter()
            .copied()
            .find(|&i| basis[i][0].mono.divides(&t.mono))
    }

    pub fn find_excluding(&self, basis: &[Vector], t: &Term, skip: usize) -> Option<usize> {
        self.by_comp[t.comp as usize]
            .iter()
            .copied()
            .find(|&i| i != skip && basis[i][0].mono.divides(&t.mono))
    }
}

/// Reduces until the lead term is irreducible.
pub(crate) fn top_reduce(eng: &Engine, mut v: Vector, basis: &[Vector], divs: &Divisors) -> Vector {
    while let Some(t) = v.first() {
        match divs.find(basis, t) {
            Some(k) => {
                let g = &basis[k];
                let c = eng.field.div(t.coeff, g[0].coeff);
                let m = g[0].mono.quotient_of(&t.mono);
                v = eng.sub_mul(&v, c, &m, g);
            }
            None => break,
        }
    }
    v
}

/// Full normal form: no term of the result is divisible by a lead term.
pub(crate) fn full_reduce(eng: &Engine, v: Vector, basis: &[Vector], divs: &Divisors, skip: Option<usize>) -> Vector {
    let mut rem: Vector = Vec::new();
    let mut v = v;
    let mut start = 0;
    while start < v.len() {
        let t = &v[start];
        let found = match skip {
            Some(s) => divs.find_excluding(basis, t, s),
            None => divs.find(basis, t),
        };
        match found {
            Some(k) => {
                let g = &basis[k];
                let c = eng.field.div(t.coeff, g[0].coeff);
                let m = g[0].mono.quotient_of(&t.mono);
                v = eng.sub_mul(&v[start..], c, &m, g);
                start = 0;
            }
            None => {
                rem.push(v[start].clone());
                start += 1;
            }
        }
    }
    rem
}

/// Division with quotient bookkeeping: returns the remainder and the list of
/// `(basis index, monomial, coefficient)` quotient terms.
pub(crate) fn reduce_with_quotients(
    eng: &Engine,
    v: Vector,
    basis: &[Vector],
    divs: &Divisors,
) -> (Vector, Vec<(usize, Monomial, Coeff)>) {
    let mut rem: Vector = Vec::new();
    let mut quots = Vec::new();
    let mut v = v;
    let mut start = 0;
    while start < v.len() {
        let t = &v[start];
        match divs.find(basis, t) {
            Some(k) => {
                let g = &basis[k];
                let c = eng.field.div(t.coeff, g[0].coeff);
                let m = g[0].mono.quotient_of(&t.mono);
                v = eng.sub_mul(&v[start..], c, &m, g);
                quots.push((k, m, c));
                start = 0;
            }
            None => {
                rem.push(v[start].clone());
                start += 1;
            }
        }
    }
    (rem, quots)
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum Item {
    // (degree, lead component, i, j)
    Pair(i64, u32, usize, usize),
    Input(i64, usize),
}

impl Item {
    fn key(&self) -> (i64, u8, u32, usize, usize) {
        match *self {
            Item::Pair(d, c, i, j) => (d, 0, c, i, j),
            Item::Input(d, k) => (d, 1, 0, k, 0),
        }
    }
}

/// Buchberger completion with the normal selection strategy followed by full
/// interreduction. Input vectors must be homogeneous.
pub(crate) fn groebner_vectors(eng: &Engine, rank: usize, inputs: Vec<Vector>) -> Vec<Vector> {
    let inputs: Vec<Vector> = inputs.into_iter().filter(|v| !v.is_empty()).collect();
    let mut basis: Vec<Vector> = Vec::new();
    let mut divs = Divisors::new(rank);
    let mut queue: BinaryHeap<Reverse<((i64, u8, u32, usize, usize), usize)>> = BinaryHeap::new();
    let mut items: Vec<Item> = Vec::new();
    for (k, v) in inputs.iter().enumerate() {
        let it = Item::Input(eng.degree(v), k);
        queue.push(Reverse((it.key(), items.len())));
        items.push(it);
    }
    while let Some(Reverse((_, id))) = queue.pop() {
        let v = match items[id] {
            Item::Input(_, k) => inputs[k].clone(),
            Item::Pair(_, _, i, j) => {
                let (gi, gj) = (&basis[i], &basis[j]);
                let l = gi[0].mono.lcm(&gj[0].mono);
                let ui = gi[0].mono.quotient_of(&l);
                let uj = gj[0].mono.quotient_of(&l);
                let a = eng.scale(gi, 1, &ui);
                // basis elements are monic
                eng.sub_mul(&a, 1, &uj, gj)
            }
        };
        let mut r = top_reduce(eng, v, &basis, &divs);
        if r.is_empty() {
            continue;
        }
        eng.make_monic(&mut r);
        let k = basis.len();
        let comp = r[0].comp;
        for &i in &divs.by_comp[comp as usize] {
            let l = basis[i][0].mono.lcm(&r[0].mono);
            let d = l.degree() as i64 + eng.twists[comp as usize];
            let it = Item::Pair(d, comp, i, k);
            queue.push(Reverse((it.key(), items.len())));
            items.push(it);
        }
        divs.insert(k, &r);
        basis.push(r);
    }
    interreduce(eng, rank, basis)
}

/// Drops elements with redundant lead terms, tail-reduces the rest, makes
/// them monic and sorts them by decreasing lead term.
pub(crate) fn interreduce(eng: &Engine, rank: usize, basis: Vec<Vector>) -> Vec<Vector> {
    let mut keep: Vec<Vector> = Vec::new();
    'outer: for (i, g) in basis.iter().enumerate() {
        for (j, h) in basis.iter().enumerate() {
            if i == j || h[0].comp != g[0].comp {
                continue;
            }
            if h[0].mono.divides(&g[0].mono) && (h[0].mono != g[0].mono || j < i) {
                continue 'outer;
            }
        }
        keep.push(g.clone());
    }
    let divs = Divisors::build(rank, &keep);
    let mut out: Vec<Vector> = Vec::with_capacity(keep.len());
    for (i, g) in keep.iter().enumerate() {
        let head = g[0].clone();
        let tail = full_reduce(eng, g[1..].to_vec(), &keep, &divs, Some(i));
        let mut v = vec![head];
        v.extend(tail);
        eng.make_monic(&mut v);
        out.push(v);
    }
    out.sort_by(|a, b| eng.order.cmp_terms(&b[0], &a[0]));
    out
}

/// A reduced Gröbner basis of a submodule of a graded free module, for the
/// position-over-term order refined by the ring's monomial order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    field: PrimeField,
    nvars: usize,
    module: FreeModule,
    order: ModOrder,
    vectors: Vec<Vector>,
}

impl GroebnerBasis {
    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn generators(&self) -> Vec<ModuleElement> {
        let eng = Engine::new(&self.field, &self.order, &self.module.twists);
        self.vectors.iter().map(|v| eng.to_element(v, self.nvars)).collect()
    }

    /// Lead terms as `(component, monomial)`.
    pub fn lead_terms(&self) -> Vec<(usize, Monomial)> {
        self.vectors.iter().map(|v| (v[0].comp as usize, v[0].mono.clone())).collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let eng = Engine::new(&self.field, &self.order, &self.module.twists);
        self.vectors.iter().map(|v| eng.degree(v)).collect()
    }

    pub fn contains(&self, f: &ModuleElement) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }

    /// Lead monomial ideals per component (minimal generators).
    pub fn initial_monomials(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.module.rank()];
        for v in &self.vectors {
            out[v[0].comp as usize].push(v[0].mono.clone());
        }
        out
    }
}

fn check_elements(ring: &GradedRing, module: &FreeModule, gens: &[ModuleElement]) -> Result<()> {
    for (k, g) in gens.iter().enumerate() {
        for (&i, p) in g.components() {
            if i >= module.rank() {
                return Err(Error::RingMismatch(format!(
                    "generator {k} has component {i} outside a free module of rank {}",
                    module.rank()
                )));
            }
            ring.check_poly(p)?;
        }
        if !g.is_homogeneous(&module.twists) {
            return Err(Error::NonHomogeneous {
                row: 0,
                col: k,
                detail: format!("generator {k} is not homogeneous"),
            });
        }
    }
    Ok(())
}

/// Reduced Gröbner basis of the submodule generated by `gens`, computed in the
/// ambient polynomial ring of `ring`.
pub fn buchberger(ring: &GradedRing, module: &FreeModule, gens: &[ModuleElement]) -> Result<GroebnerBasis> {
    check_elements(ring, module, gens)?;
    let order = ModOrder::pot(ring.order());
    let vectors = {
        let eng = Engine::new(ring.field(), &order, &module.twists);
        let inputs = gens.iter().map(|g| eng.from_element(g)).collect();
        groebner_vectors(&eng, module.rank(), inputs)
    };
    Ok(GroebnerBasis {
        field: *ring.field(),
        nvars: ring.nvars(),
        module: module.clone(),
        order,
        vectors,
    })
}

pub fn normal_form(f: &ModuleElement, gb: &GroebnerBasis) -> Result<ModuleElement> {
    if f.components().keys().any(|&i| i >= gb.module.rank()) {
        return Err(Error::RingMismatch("element lies outside the basis' free module".into()));
    }
    if f.components().values().any(|p| p.nvars() != gb.nvars) {
        return Err(Error::RingMismatch("element uses a different number of variables".into()));
    }
    let eng = Engine::new(&gb.field, &gb.order, &gb.module.twists);
    let divs = Divisors::build(gb.module.rank(), &gb.vectors);
    let r = full_reduce(&eng, eng.from_element(f), &gb.vectors, &divs, None);
    Ok(eng.to_element(&r, gb.nvars))
}

/// A generating set (not necessarily minimal) of the syzygy module of
/// `gens`, living in the free module with twists `deg(gens)`. Computed by
/// eliminating the ambient components from the submodule generated by
/// `(g_j, e_j)`. Zero generators contribute their unit vector.
pub fn syzygy_generators(ring: &GradedRing, module: &FreeModule, gens: &[ModuleElement]) -> Result<Vec<ModuleElement>> {
    check_elements(ring, module, gens)?;
    let r = module.rank();
    let degs = generator_degrees(module, gens);
    let mut twists = module.twists.clone();
    twists.extend(degs.iter().copied());
    let order = ModOrder::pot(ring.order());
    let eng = Engine::new(ring.field(), &order, &twists);
    let nv = ring.nvars();
    let inputs: Vec<Vector> = gens
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut e = g.clone();
            e.components.insert(r + j, Polynomial::constant(nv, 1));
            eng.from_element(&e)
        })
        .collect();
    let gb = groebner_vectors(&eng, r + gens.len(), inputs);
    Ok(gb
        .iter()
        .filter(|v| v[0].comp as usize >= r)
        .map(|v| {
            let e = eng.to_element(v, nv);
            ModuleElement::from_components(e.components.into_iter().map(|(i, p)| (i - r, p)))
        })
        .collect())
}

/// Degrees of homogeneous generators; zero generators get degree 0 unless
/// the caller knows better.
pub fn generator_degrees(module: &FreeModule, gens: &[ModuleElement]) -> Vec<i64> {
    gens.iter().map(|g| g.degree(&module.twists).unwrap_or(0)).collect()
}

/// A minimal homogeneous generating set of the syzygy module of `gens`.
pub fn syzygies(ring: &GradedRing, module: &FreeModule, gens: &[ModuleElement]) -> Result<Vec<ModuleElement>> {
    let syz = syzygy_generators(ring, module, gens)?;
    let syz_module = FreeModule::new(generator_degrees(module, gens));
    minimal_generators(ring, &syz_module, &syz, &[])
}

/// Greedy minimal generating set modulo the submodule spanned by `base`
/// (graded Nakayama). Candidates are processed degree by degree: a candidate
/// is kept iff its normal form modulo everything of lower degree is linearly
/// independent of the normal forms already kept in its degree.
pub fn minimal_generators(
    ring: &GradedRing,
    module: &FreeModule,
    candidates: &[ModuleElement],
    base: &[ModuleElement],
) -> Result<Vec<ModuleElement>> {
    let idx = minimal_generator_indices(ring, module, candidates, base)?;
    Ok(idx.into_iter().map(|i| candidates[i].clone()).collect())
}

/// Indices (in processing order) of the candidates kept by
/// [`minimal_generators`].
pub fn minimal_generator_indices(
    ring: &GradedRing,
    module: &FreeModule,
    candidates: &[ModuleElement],
    base: &[ModuleElement],
) -> Result<Vec<usize>> {
    let field = ring.field();
    let order = ModOrder::pot(ring.order());
    let eng = Engine::new(field, &order, &module.twists);
    let mut idx: Vec<usize> = (0..candidates.len()).filter(|&i| !candidates[i].is_zero()).collect();
    for &i in &idx {
        if !candidates[i].is_homogeneous(&module.twists) {
            return Err(Error::NonHomogeneous {
                row: 0,
                col: i,
                detail: format!("candidate generator {i} is not homogeneous"),
            });
        }
    }
    idx.sort_by_key(|&i| (candidates[i].degree(&module.twists).unwrap(), i));
    let mut current = groebner_vectors(
        &eng,
        module.rank(),
        base.iter().map(|b| eng.from_element(b)).filter(|v| !v.is_empty()).collect(),
    );
    let mut kept = Vec::new();
    let mut pos = 0;
    while pos < idx.len() {
        let d = candidates[idx[pos]].degree(&module.twists).unwrap();
        let mut end = pos;
        while end < idx.len() && candidates[idx[end]].degree(&module.twists).unwrap() == d {
            end += 1;
        }
        let divs = Divisors::build(module.rank(), &current);
        let mut echelon: Vec<((u32, Monomial), BTreeMap<(u32, Monomial), Coeff>)> = Vec::new();
        let mut new_vectors = Vec::new();
        for &i in &idx[pos..end] {
            let v = eng.from_element(&candidates[i]);
            let nf = full_reduce(&eng, v.clone(), &current, &divs, None);
            let mut row: BTreeMap<(u32, Monomial), Coeff> =
                nf.into_iter().map(|t| ((t.comp, t.mono), t.coeff)).collect();
            // forward elimination: row k has zeros at the pivots of rows < k
            for (pk, e) in &echelon {
                if let Some(&c) = row.get(pk) {
                    for (k, &x) in e {
                        let val = field.sub(row.get(k).copied().unwrap_or(0), field.mul(c, x));
                        if val == 0 {
                            row.remove(k);
                        } else {
                            row.insert(k.clone(), val);
                        }
                    }
                }
            }
            if let Some((pivot, &lead)) = row.iter().next().map(|(k, v)| (k.clone(), v)) {
                let inv = field.inv(lead);
                for x in row.values_mut() {
                    *x = field.mul(*x, inv);
                }
                echelon.push((pivot, row));
                kept.push(i);
                new_vectors.push(v);
            }
        }
        if end < idx.len() && !new_vectors.is_empty() {
            let mut next = current.clone();
            next.extend(new_vectors);
            current = groebner_vectors(&eng, module.rank(), next);
        }
        pos = end;
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> GradedRing {
        GradedRing::polynomial(101, n).unwrap()
    }

    fn poly(r: &GradedRing, terms: &[(i64, &[u16])]) -> Polynomial {
        Polynomial::from_terms(
            r.nvars(),
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exponents(e), r.field().from_i64(*c))),
            r.field(),
        )
    }

    fn ideal(polys: &[Polynomial]) -> Vec<ModuleElement> {
        polys.iter().map(|p| ModuleElement::from_dense(std::slice::from_ref(p))).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(2);
        let x2 = poly(&r, &[(1, &[2, 0])]);
        let xy = poly(&r, &[(1, &[1, 1])]);
        let gb = buchberger(&r, &FreeModule::new(vec![0]), &ideal(&[x2.clone(), xy.clone()])).unwrap();
        let gens: Vec<Polynomial> = gb.generators().iter().map(|g| g.get(0).unwrap().clone()).collect();
        assert_eq!(gens, vec![x2, xy]);
    }

    #[test]
    fn single_generator() {
        let r = ring(2);
        let x = r.var(0);
        let gb = buchberger(&r, &FreeModule::new(vec![0]), &ideal(std::slice::from_ref(&x))).unwrap();
        assert_eq!(gb.generators(), ideal(&[x]));
    }

    #[test]
    fn linear_elimination() {
        let r = ring(3);
        let f = &r.field().clone();
        let x_y = r.var(0).sub(&r.var(1), f);
        let y_z = r.var(1).sub(&r.var(2), f);
        let gb = buchberger(&r, &FreeModule::new(vec![0]), &ideal(&[x_y, y_z.clone()])).unwrap();
        let leads = gb.lead_terms();
        assert_eq!(leads.len(), 2);
        assert_eq!(leads[0].1, Monomial::from_exponents(&[1, 0, 0]));
        assert_eq!(leads[1].1, Monomial::from_exponents(&[0, 1, 0]));
        // reduced basis: x - z, y - z
        let x_z = r.var(0).sub(&r.var(2), f);
        assert_eq!(gb.generators(), ideal(&[x_z, y_z]));
    }

    #[test]
    fn normal_forms() {
        let r = ring(2);
        let x2 = poly(&r, &[(1, &[2, 0])]);
        let xy = poly(&r, &[(1, &[1, 1])]);
        let m = FreeModule::new(vec![0]);
        let gb = buchberger(&r, &m, &ideal(std::slice::from_ref(&x2))).unwrap();
        // x^3 + y is not homogeneous but normal forms do not require it
        let f = poly(&r, &[(1, &[3, 0]), (1, &[0, 1])]);
        let nf = normal_form(&ModuleElement::from_dense(&[f]), &gb).unwrap();
        assert_eq!(nf, ModuleElement::from_dense(&[r.var(1)]));

        let gb2 = buchberger(&r, &m, &ideal(&[x2.clone(), xy])).unwrap();
        assert!(normal_form(&ModuleElement::from_dense(&[x2]), &gb2).unwrap().is_zero());
        let y2 = poly(&r, &[(1, &[0, 2])]);
        assert_eq!(
            normal_form(&ModuleElement::from_dense(std::slice::from_ref(&y2)), &gb2).unwrap(),
            ModuleElement::from_dense(&[y2])
        );
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring(2);
        let f = *r.field();
        let m = FreeModule::new(vec![0]);
        let syz = syzygies(&r, &m, &ideal(&[r.var(0), r.var(1)])).unwrap();
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        // proportional to (y, -x)
        let a = s.get(0).unwrap();
        let b = s.get(1).unwrap();
        let c = a.coefficient(&Monomial::from_exponents(&[0, 1]));
        assert_ne!(c, 0);
        assert_eq!(a, &r.var(1).scale(c, &f));
        assert_eq!(b, &r.var(0).scale(f.neg(c), &f));
    }

    #[test]
    fn syzygy_of_x2_xy() {
        let r = ring(2);
        let f = *r.field();
        let x2 = poly(&r, &[(1, &[2, 0])]);
        let xy = poly(&r, &[(1, &[1, 1])]);
        let syz = syzygies(&r, &FreeModule::new(vec![0]), &ideal(&[x2, xy])).unwrap();
        assert_eq!(syz.len(), 1);
        let a = syz[0].get(0).unwrap();
        let c = a.coefficient(&Monomial::from_exponents(&[0, 1]));
        assert_eq!(a, &r.var(1).scale(c, &f));
        assert_eq!(syz[0].get(1).unwrap(), &r.var(0).scale(f.neg(c), &f));
    }

    #[test]
    fn unit_generator_has_no_syzygies() {
        let r = ring(2);
        let syz = syzygies(&r, &FreeModule::new(vec![0]), &ideal(&[r.one()])).unwrap();
        assert!(syz.is_empty());
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let r = ring(2);
        let f = poly(&r, &[(1, &[1, 0]), (1, &[2, 0])]);
        assert!(buchberger(&r, &FreeModule::new(vec![0]), &ideal(&[f])).is_err());
    }
}
