//! Schreyer free resolutions, minimalization and graded Betti tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{
    groebner_vectors, reduce_with_quotients, Divisors, Engine, FrameEntry, ModOrder, ModuleElement, OrderKind,
    SchreyerFrame, Term, Vector,
};
use crate::hilbert::LaurentPoly;
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::presentation::GradedPresentation;
use crate::ring::RingRef;

/// A complex of graded free modules `F_L -> ... -> F_1 -> F_0` over a
/// polynomial ring. `maps[k - 1]` holds the columns of `d_k: F_k -> F_{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolution {
    ring: RingRef,
    twists: Vec<Vec<i64>>,
    maps: Vec<Vec<ModuleElement>>,
    minimal: bool,
}

impl Resolution {
    pub fn from_parts(ring: RingRef, twists: Vec<Vec<i64>>, maps: Vec<Vec<ModuleElement>>, minimal: bool) -> Self {
        assert_eq!(twists.len(), maps.len() + 1);
        Resolution {
            ring,
            twists,
            maps,
            minimal,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Index of the last free module.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn twists(&self, k: usize) -> &[i64] {
        &self.twists[k]
    }

    pub fn all_twists(&self) -> &[Vec<i64>] {
        &self.twists
    }

    pub fn rank(&self, k: usize) -> usize {
        self.twists.get(k).map(|t| t.len()).unwrap_or(0)
    }

    /// Columns of `d_k`, `1 ≤ k ≤ length`.
    pub fn map(&self, k: usize) -> &[ModuleElement] {
        &self.maps[k - 1]
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// True when no map has a nonzero constant entry.
    pub fn has_no_unit_entries(&self) -> bool {
        self.maps
            .iter()
            .flatten()
            .all(|c| c.components().values().all(|p| !p.is_nonzero_constant()))
    }

    /// `d_k ∘ d_{k+1} = 0` for all `k`.
    pub fn composes_to_zero(&self) -> bool {
        let field = self.ring.field();
        for k in 1..self.maps.len() {
            let lower = &self.maps[k - 1];
            for col in &self.maps[k] {
                let mut acc = ModuleElement::zero();
                for (&j, p) in col.components() {
                    acc = acc.add(&lower[j].scale_by(p, field), field);
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Every column of every map is homogeneous of the degree recorded for it.
    pub fn is_graded(&self) -> bool {
        (1..=self.maps.len()).all(|k| {
            self.maps[k - 1]
                .iter()
                .zip(&self.twists[k])
                .all(|(c, &t)| c.is_zero() || c.degree(&self.twists[k - 1]) == Some(t))
        })
    }

    /// `Σ_i (-1)^i Σ_{t ∈ twists(F_i)} t^t`.
    pub fn euler_numerator(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, ts) in self.twists.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &t in ts {
                out.add_term(t, sign);
            }
        }
        out
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, ts) in self.twists.iter().enumerate() {
            for &t in ts {
                *entries.entry((i, t)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }
}

/// Graded Betti numbers: `(i, j) ↦ dim Tor_i(M, F)_j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, i64), usize)>) -> Self {
        BettiTable {
            entries: entries.into_iter().filter(|(_, v)| *v > 0).collect(),
        }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), usize> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological index with a nonzero entry.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `b_i`: the top internal degree in homological index `i`.
    pub fn top_degree(&self, i: usize) -> Option<i64> {
        self.entries.keys().filter(|&&(k, _)| k == i).map(|&(_, j)| j).max()
    }

    pub fn bottom_degree(&self, i: usize) -> Option<i64> {
        self.entries.keys().filter(|&&(k, _)| k == i).map(|&(_, j)| j).min()
    }

    /// `max_i (b_i - i)`; `None` for the zero module.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j - i as i64).max()
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|(&(k, _), _)| k == i).map(|(_, v)| v).sum()
    }

    pub fn euler_numerator(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(i, j), &v) in &self.entries {
            out.add_term(j, if i % 2 == 0 { v as i64 } else { -(v as i64) });
        }
        out
    }
}

impl fmt::Display for BettiTable {
    /// Standard layout: column `i`, row `j - i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(pd) = self.projective_dimension() else {
            return writeln!(f, "(zero module)");
        };
        let rows: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
        let (lo, hi) = (*rows.iter().min().unwrap(), *rows.iter().max().unwrap());
        let width = self.entries.values().map(|v| v.to_string().len()).max().unwrap_or(1).max(pd.to_string().len()) + 1;
        let label = lo.to_string().len().max(hi.to_string().len()).max(5);
        write!(f, "{:>label$}", "")?;
        for i in 0..=pd {
            write!(f, "{:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>label$}", "total")?;
        for i in 0..=pd {
            write!(f, "{:>width$}", self.total(i))?;
        }
        writeln!(f)?;
        for r in lo..=hi {
            write!(f, "{:>label$}", format!("{r}:"))?;
            for i in 0..=pd {
                let v = self.get(i, r + i as i64);
                if v == 0 {
                    write!(f, "{:>width$}", "-")?;
                } else {
                    write!(f, "{:>width$}", v)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(|(&(i, j), &v)| [i as i64, j, v as i64]))
    }
}

/// Ordering used to index Gröbner basis elements before taking syzygies:
/// lead component ascending, then lead monomial lexicographically descending.
/// With this indexing the lead terms of the syzygies at level `k` avoid the
/// first `k - 1` variables, which bounds the length of the resolution.
fn sort_for_schreyer(basis: &mut [Vector]) {
    basis.sort_by(|a, b| a[0].comp.cmp(&b[0].comp).then_with(|| b[0].mono.cmp(&a[0].mono)));
}

fn frame_for(basis: &[Vector], prev: Option<&SchreyerFrame>) -> SchreyerFrame {
    let entries = basis
        .iter()
        .map(|v| {
            let t = &v[0];
            match prev {
                None => FrameEntry {
                    comp0: t.comp,
                    lead: t.mono.clone(),
                    path: Vec::new(),
                },
                Some(f) => {
                    let e = &f.entries[t.comp as usize];
                    let mut path = e.path.clone();
                    path.push(t.comp);
                    FrameEntry {
                        comp0: e.comp0,
                        lead: t.mono.mul(&e.lead),
                        path,
                    }
                }
            }
        })
        .collect();
    SchreyerFrame { entries }
}

/// The Schreyer syzygies of a Gröbner basis `basis` (living in a module with
/// order `eng_prev`), expressed in the free module on `basis` under the
/// induced order `cur`. Only pairs whose syzygy lead term is minimal are
/// lifted.
fn schreyer_syzygies(eng_prev: &Engine, prev_rank: usize, basis: &[Vector], cur: &Engine) -> Vec<Vector> {
    let divs = Divisors::build(prev_rank, basis);
    // candidate lead monomials per basis index i: u_ij = lcm / lm_i for j > i
    let mut kept: Vec<(usize, usize, Monomial)> = Vec::new();
    for i in 0..basis.len() {
        let mut cands: Vec<(Monomial, usize)> = Vec::new();
        for j in i + 1..basis.len() {
            if basis[j][0].comp != basis[i][0].comp {
                continue;
            }
            let l = basis[i][0].mono.lcm(&basis[j][0].mono);
            cands.push((basis[i][0].mono.quotient_of(&l), j));
        }
        cands.sort_by_key(|(u, j)| (u.degree(), *j));
        let mut chosen: Vec<(Monomial, usize)> = Vec::new();
        for (u, j) in cands {
            if !chosen.iter().any(|(v, _)| v.divides(&u)) {
                chosen.push((u, j));
            }
        }
        kept.extend(chosen.into_iter().map(|(u, j)| (i, j, u)));
    }
    let nvars = basis.first().map(|v| v[0].mono.nvars()).unwrap_or(0);
    let mut out: Vec<Vector> = Vec::with_capacity(kept.len());
    for (i, j, ui) in kept {
        let l = ui.mul(&basis[i][0].mono);
        let uj = basis[j][0].mono.quotient_of(&l);
        let a = eng_prev.scale(&basis[i], 1, &ui);
        let s = eng_prev.sub_mul(&a, 1, &uj, &basis[j]);
        let (rem, quots) = reduce_with_quotients(eng_prev, s, basis, &divs);
        debug_assert!(rem.is_empty(), "S-pair of a Gröbner basis did not reduce to zero");
        let mut terms = vec![
            Term {
                comp: i as u32,
                mono: ui,
                coeff: 1,
            },
            Term {
                comp: j as u32,
                mono: uj,
                coeff: cur.field.neg(1),
            },
        ];
        for (k, m, c) in quots {
            terms.push(Term {
                comp: k as u32,
                mono: m,
                coeff: cur.field.neg(c),
            });
        }
        let v = cur.normalize(terms);
        debug_assert_eq!(v[0].comp as usize, i);
        debug_assert_eq!(v[0].coeff, 1);
        let _ = nvars;
        out.push(v);
    }
    sort_for_schreyer(&mut out);
    out
}

/// A free resolution of `M` over the ambient polynomial ring: the first map
/// is a Gröbner basis of the relations, each later map the Schreyer syzygies
/// of the previous one. Usually not minimal.
pub fn schreyer_resolution(m: &GradedPresentation) -> Result<Resolution> {
    let lifted = m.lift_to_ambient();
    let ring = lifted.ring().clone();
    let field = *ring.field();
    let nv = ring.nvars();
    let mono_order = ring.order();
    let twists0 = lifted.row_twists().to_vec();

    let mut prev_order = ModOrder::pot(mono_order);
    let mut prev_twists = twists0.clone();
    let mut basis = {
        let eng = Engine::new(&field, &prev_order, &prev_twists);
        let inputs = lifted.column_elements().iter().map(|e| eng.from_element(e)).collect();
        groebner_vectors(&eng, prev_twists.len(), inputs)
    };
    sort_for_schreyer(&mut basis);

    let mut twists = vec![twists0];
    let mut maps: Vec<Vec<ModuleElement>> = Vec::new();
    let mut prev_frame: Option<Arc<SchreyerFrame>> = None;
    while !basis.is_empty() {
        if maps.len() > nv + 1 {
            return Err(Error::Unsupported("resolution failed to terminate".into()));
        }
        let cur_twists: Vec<i64>;
        let frame;
        {
            let eng = Engine::new(&field, &prev_order, &prev_twists);
            cur_twists = basis.iter().map(|v| eng.degree(v)).collect();
            maps.push(basis.iter().map(|v| eng.to_element(v, nv)).collect());
            frame = Arc::new(frame_for(&basis, prev_frame.as_deref()));
        }
        twists.push(cur_twists.clone());
        let cur_order = ModOrder {
            mono: mono_order,
            kind: OrderKind::Schreyer(frame.clone()),
        };
        let next = {
            let eng_prev = Engine::new(&field, &prev_order, &prev_twists);
            let eng_cur = Engine::new(&field, &cur_order, &cur_twists);
            schreyer_syzygies(&eng_prev, prev_twists.len(), &basis, &eng_cur)
        };
        prev_order = cur_order;
        prev_twists = cur_twists;
        prev_frame = Some(frame);
        basis = next;
    }
    Ok(Resolution {
        ring,
        twists,
        maps,
        minimal: false,
    })
}

type Column = BTreeMap<usize, Polynomial>;

/// Cancels unit entries (smallest column first, then smallest row) until
/// none remain, and reads off the Betti table.
pub fn minimalize(res: &Resolution) -> (Resolution, BettiTable) {
    let field = *res.ring.field();
    let levels = res.twists.len();
    let mut cols: Vec<Vec<Column>> = res
        .maps
        .iter()
        .map(|m| m.iter().map(|c| c.components().clone()).collect())
        .collect();
    let mut alive: Vec<Vec<bool>> = res.twists.iter().map(|t| vec![true; t.len()]).collect();

    for k in 1..levels {
        loop {
            let mut pivot = None;
            'search: for (c, col) in cols[k - 1].iter().enumerate() {
                if !alive[k][c] {
                    continue;
                }
                for (&r, p) in col {
                    if alive[k - 1][r] && p.is_nonzero_constant() {
                        pivot = Some((c, r, p.as_constant().unwrap()));
                        break 'search;
                    }
                }
            }
            let Some((c, r, u)) = pivot else { break };
            let uinv = field.inv(u);
            let pivot_col = cols[k - 1][c].clone();
            for j in 0..cols[k - 1].len() {
                if j == c || !alive[k][j] {
                    continue;
                }
                let Some(e) = cols[k - 1][j].get(&r) else { continue };
                let q = e.scale(field.neg(uinv), &field);
                let col = &mut cols[k - 1][j];
                for (&i, p) in &pivot_col {
                    let add = p.mul(&q, &field);
                    let s = match col.get(&i) {
                        Some(old) => old.add(&add, &field),
                        None => add,
                    };
                    if s.is_zero() {
                        col.remove(&i);
                    } else {
                        col.insert(i, s);
                    }
                }
                debug_assert!(!col.contains_key(&r));
            }
            alive[k][c] = false;
            alive[k - 1][r] = false;
        }
    }

    // compact
    let index: Vec<Vec<Option<usize>>> = alive
        .iter()
        .map(|a| {
            let mut next = 0;
            a.iter()
                .map(|&x| {
                    if x {
                        next += 1;
                        Some(next - 1)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    let mut twists: Vec<Vec<i64>> = res
        .twists
        .iter()
        .zip(&alive)
        .map(|(t, a)| t.iter().zip(a).filter(|(_, &x)| x).map(|(&t, _)| t).collect())
        .collect();
    let mut maps: Vec<Vec<ModuleElement>> = (1..levels)
        .map(|k| {
            cols[k - 1]
                .iter()
                .enumerate()
                .filter(|(c, _)| alive[k][*c])
                .map(|(_, col)| {
                    ModuleElement::from_components(
                        col.iter()
                            .filter_map(|(&i, p)| index[k - 1][i].map(|ni| (ni, p.clone()))),
                    )
                })
                .collect()
        })
        .collect();
    while twists.len() > 1 && twists.last().unwrap().is_empty() {
        twists.pop();
        maps.pop();
    }
    let min = Resolution {
        ring: res.ring.clone(),
        twists,
        maps,
        minimal: true,
    };
    let betti = min.betti_table();
    (min, betti)
}

/// Minimal free resolution of `M` over the ambient polynomial ring.
pub fn minimal_resolution(m: &GradedPresentation) -> Result<(Resolution, BettiTable)> {
    let res = schreyer_resolution(m)?;
    Ok(minimalize(&res))
}
