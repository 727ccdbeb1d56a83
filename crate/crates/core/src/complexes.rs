//! The complexes `E^(l)` attached to a presentation matrix: terms
//! `L_s = Sym_{l-s} G ⊗ ∧^s F` for `0 ≤ s ≤ l` and
//! `N_s[σ] = Sym_{s-l} G* ⊗ ∧^{n+s} F [σ]` for `l ≤ s ≤ m-n`, where
//! `σ = Σ a_i`. `E^(0)` is the Eagon–Northcott complex and `E^(1)` the
//! Buchsbaum–Rim complex.
//!
//! Homological positions: `L_s` sits at position `s` and `N_s` at `s + 1`, so
//! that `ε: N_l → L_l` is the map from position `l + 1` to position `l`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::ModuleElement;
use crate::modops::{multisets, subsets, MinorCache};
use crate::polynomial::Polynomial;
use crate::presentation::GradedPresentation;
use crate::resolution::Resolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    L,
    N,
}

/// One free term of `E^(l)` with its twist multiset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexTerm {
    pub side: Side,
    pub s: usize,
    pub position: usize,
    pub twists: Vec<i64>,
}

impl ComplexTerm {
    pub fn max_twist(&self) -> Option<i64> {
        self.twists.iter().copied().max()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexTerms {
    pub l: usize,
    pub sigma: i64,
    pub n: usize,
    pub m: usize,
    /// Terms ordered by homological position; nonempty terms only.
    pub terms: Vec<ComplexTerm>,
}

impl ComplexTerms {
    pub fn at(&self, position: usize) -> Option<&ComplexTerm> {
        self.terms.iter().find(|t| t.position == position)
    }

    /// Largest twist at each position, indexed by position.
    pub fn max_twists(&self) -> Vec<(usize, i64)> {
        self.terms.iter().filter_map(|t| t.max_twist().map(|d| (t.position, d))).collect()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(n+k-1, k)`: number of multisets of size `k` from `n` items.
pub fn multiset_count(n: usize, k: usize) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    binomial(n + k - 1, k)
}

/// Expected number of basis elements of `L_s`.
pub fn l_term_rank(n: usize, m: usize, l: usize, s: usize) -> usize {
    multiset_count(n, l - s) * binomial(m, s)
}

/// Expected number of basis elements of `N_s`.
pub fn n_term_rank(n: usize, m: usize, l: usize, s: usize) -> usize {
    multiset_count(n, s - l) * binomial(m, n + s)
}

/// Degree data of `E^(l)` from generator degrees `a` and relation degrees `b`.
pub fn complex_terms_from_degrees(a: &[i64], b: &[i64], l: usize) -> ComplexTerms {
    let (n, m) = (a.len(), b.len());
    let sigma: i64 = a.iter().sum();
    let mut terms = Vec::new();
    for s in 0..=l {
        let mut twists = Vec::new();
        for alpha in multisets(n, l - s) {
            let ta: i64 = alpha.iter().map(|&i| a[i]).sum();
            for jset in subsets(m, s) {
                twists.push(ta + jset.iter().map(|&j| b[j]).sum::<i64>());
            }
        }
        if !twists.is_empty() {
            terms.push(ComplexTerm {
                side: Side::L,
                s,
                position: s,
                twists,
            });
        }
    }
    if m >= n {
        for s in l..=(m - n) {
            let mut twists = Vec::new();
            for alpha in multisets(n, s - l) {
                let ta: i64 = alpha.iter().map(|&i| a[i]).sum();
                for jset in subsets(m, n + s) {
                    twists.push(jset.iter().map(|&j| b[j]).sum::<i64>() - ta - sigma);
                }
            }
            if !twists.is_empty() {
                terms.push(ComplexTerm {
                    side: Side::N,
                    s,
                    position: s + 1,
                    twists,
                });
            }
        }
    }
    ComplexTerms { l, sigma, n, m, terms }
}

pub fn complex_terms(m: &GradedPresentation, l: usize) -> ComplexTerms {
    complex_terms_from_degrees(m.row_twists(), m.column_degrees(), l)
}

/// `max_{j ≤ dim R} (reg R + max twist at j - j)`.
pub fn complex_regularity_bound(terms: &ComplexTerms, reg_r: i64, dim_r: usize) -> Result<i64> {
    if terms.at(0).is_none() {
        return Err(Error::Precondition("the complex has no term in position 0".into()));
    }
    Ok(terms
        .max_twists()
        .into_iter()
        .filter(|&(j, _)| j <= dim_r)
        .map(|(j, d)| reg_r + d - j as i64)
        .max()
        .unwrap())
}

/// Basis of `N_s`: pairs (dual multiset α of size `s - l`, column subset J of
/// size `n + s`).
fn n_basis(n: usize, m: usize, l: usize, s: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for alpha in multisets(n, s - l) {
        for jset in subsets(m, n + s) {
            out.push((alpha.clone(), jset));
        }
    }
    out
}

/// `E^(0)` or `E^(1)` with explicit maps, as a chain complex indexed by
/// homological position. Interior maps on the `N` side are the divided-power
/// contractions `u^(α) ⊗ e_J ↦ Σ_{i: α_i>0} Σ_t (-1)^t φ_{i,j_t} u^(α-ε_i) ⊗ e_{J∖j_t}`.
pub fn explicit_differentials(m: &GradedPresentation, l: usize) -> Result<Resolution> {
    if l > 1 {
        return Err(Error::Unsupported(format!("explicit differentials are only built for l ≤ 1, got l = {l}")));
    }
    let (n, k) = (m.n(), m.m());
    if k < n {
        return Err(Error::Precondition(format!("need at least as many relations as generators ({k} < {n})")));
    }
    let field = *m.ring().field();
    let terms = complex_terms(m, l);
    let mut twists: Vec<Vec<i64>> = Vec::new();
    let mut maps: Vec<Vec<ModuleElement>> = Vec::new();
    let mut cache = MinorCache::new(m);

    // L side
    if l == 0 {
        twists.push(vec![0]);
    } else {
        twists.push(m.row_twists().to_vec());
        twists.push(m.column_degrees().to_vec());
        maps.push(m.column_elements());
    }

    // ε: N_l → L_l
    let nl = n_basis(n, k, l, l);
    twists.push(terms.at(l + 1).map(|t| t.twists.clone()).unwrap_or_default());
    let mut eps = Vec::with_capacity(nl.len());
    for (_, jset) in &nl {
        if l == 0 {
            eps.push(ModuleElement::from_components([(0, cache.minor(jset))]));
        } else {
            let mut comps = Vec::new();
            for (t, &jt) in jset.iter().enumerate() {
                let rest: Vec<usize> = jset.iter().copied().filter(|&x| x != jt).collect();
                let d = cache.minor(&rest);
                comps.push((jt, if t % 2 == 0 { d } else { d.neg(&field) }));
            }
            eps.push(ModuleElement::from_components(comps));
        }
    }
    maps.push(eps);

    // N_s → N_{s-1}
    for s in (l + 1)..=(k - n) {
        let src = n_basis(n, k, l, s);
        let tgt = n_basis(n, k, l, s - 1);
        let index: HashMap<&(Vec<usize>, Vec<usize>), usize> = tgt.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut cols = Vec::with_capacity(src.len());
        for (alpha, jset) in &src {
            let mut acc: HashMap<usize, Polynomial> = HashMap::new();
            let mut distinct = alpha.clone();
            distinct.dedup();
            for &i in &distinct {
                let pos = alpha.iter().position(|&x| x == i).unwrap();
                let mut reduced = alpha.clone();
                reduced.remove(pos);
                for (t, &jt) in jset.iter().enumerate() {
                    let f = m.entry(i, jt);
                    if f.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = jset.iter().copied().filter(|&x| x != jt).collect();
                    let key = (reduced.clone(), rest);
                    let row = index[&key];
                    let term = if t % 2 == 0 { f.clone() } else { f.neg(&field) };
                    let e = acc.entry(row).or_insert_with(|| Polynomial::zero(f.nvars()));
                    *e = e.add(&term, &field);
                }
            }
            cols.push(ModuleElement::from_components(acc));
        }
        twists.push(terms.at(s + 1).map(|t| t.twists.clone()).unwrap_or_default());
        maps.push(cols);
    }
    Ok(Resolution::from_parts(m.ring().clone(), twists, maps, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::presentation::cyclic;
    use crate::ring::{GradedRing, RingRef};
    use std::sync::Arc;

    fn s(n: usize) -> RingRef {
        Arc::new(GradedRing::polynomial(101, n).unwrap())
    }

    fn mono(e: &[u16]) -> Polynomial {
        Polynomial::monomial(Monomial::from_exponents(e), 1)
    }

    #[test]
    fn buchsbaum_rim_terms() {
        let t = complex_terms_from_degrees(&[0, 0], &[1, 1, 1], 1);
        assert_eq!(t.sigma, 0);
        assert_eq!(t.at(0).unwrap().twists, vec![0, 0]);
        assert_eq!(t.at(1).unwrap().twists, vec![1, 1, 1]);
        assert_eq!(t.at(2).unwrap().twists, vec![3]);
        assert_eq!(t.at(2).unwrap().side, Side::N);
        assert_eq!(complex_regularity_bound(&t, 0, 3).unwrap(), 1);
    }

    #[test]
    fn eagon_northcott_terms() {
        let t = complex_terms_from_degrees(&[0], &[2, 2], 0);
        assert_eq!(t.at(0).unwrap().twists, vec![0]);
        assert_eq!(t.at(1).unwrap().twists, vec![2, 2]);
        assert_eq!(t.at(2).unwrap().twists, vec![4]);
    }

    #[test]
    fn n_side_empty_when_too_few_relations() {
        let t = complex_terms_from_degrees(&[0, 0], &[1, 1], 1);
        assert!(t.terms.iter().all(|x| x.side == Side::L));
    }

    #[test]
    fn complex_bound_examples() {
        let free = complex_terms_from_degrees(&[3], &[], 0);
        assert_eq!(complex_regularity_bound(&free, 0, 2).unwrap(), 0);
        let t = complex_terms_from_degrees(&[0], &[2, 2], 1);
        assert_eq!(complex_regularity_bound(&t, 0, 2).unwrap(), 2);
        // positions beyond dim R are ignored
        assert_eq!(complex_regularity_bound(&t, 0, 1).unwrap(), 1);
    }

    #[test]
    fn eagon_northcott_first_map_is_the_minor_row() {
        let r = s(2);
        let m = cyclic(r, 0, vec![mono(&[2, 0]), mono(&[1, 1])]).unwrap();
        let c = explicit_differentials(&m, 0).unwrap();
        let eps: Vec<Polynomial> = c.map(1).iter().map(|e| e.get(0).unwrap().clone()).collect();
        assert_eq!(eps, vec![mono(&[2, 0]), mono(&[1, 1])]);
        assert!(c.composes_to_zero());
        assert!(c.is_graded());
    }

    #[test]
    fn buchsbaum_rim_composes_to_zero() {
        let r = s(3);
        let lin = |c: [i64; 3]| r.linear_form(&c);
        let cols = vec![
            vec![lin([1, 2, 0]), lin([0, 1, 1])],
            vec![lin([3, 0, 1]), lin([1, 1, 0])],
            vec![lin([0, 5, 2]), lin([2, 0, 7])],
            vec![lin([1, 1, 1]), lin([4, 0, 3])],
        ];
        let m = GradedPresentation::new(r.clone(), vec![0, 0], cols).unwrap();
        for l in 0..=1 {
            let c = explicit_differentials(&m, l).unwrap();
            assert!(c.composes_to_zero(), "l = {l}");
            assert!(c.is_graded(), "l = {l}");
        }
        assert!(explicit_differentials(&m, 2).is_err());
    }
}
