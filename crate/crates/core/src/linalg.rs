//! Dense linear algebra over `F_p`, and degree-slice matrices of module maps.
//!
//! This is deliberately independent of the Gröbner engine so that it can act
//! as an oracle for it.

use std::collections::HashMap;

use crate::field::{Coeff, PrimeField};
use crate::groebner::ModuleElement;
use crate::monomial::Monomial;

/// Row-reduces in place and returns the pivot columns.
pub fn row_reduce(field: &PrimeField, rows: &mut [Vec<Coeff>]) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                    if *y != 0 {
                        *x = field.sub(*x, field.mul(f, *y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &PrimeField, rows: &[Vec<Coeff>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(field, &mut m).len()
}

/// Basis of `{ v : A v = 0 }` where `A` is given by rows of length `ncols`.
pub fn kernel(field: &PrimeField, rows: &[Vec<Coeff>], ncols: usize) -> Vec<Vec<Coeff>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(field, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m[r][f]);
            }
            v
        })
        .collect()
}

/// Index of the monomial basis of a graded free module in one degree.
pub struct DegreeBasis {
    pub elements: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl DegreeBasis {
    pub fn new(nvars: usize, twists: &[i64], d: i64) -> Self {
        let mut elements = Vec::new();
        for (i, &t) in twists.iter().enumerate() {
            if d - t >= 0 {
                for m in Monomial::all_of_degree(nvars, (d - t) as u32) {
                    elements.push((i, m));
                }
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        DegreeBasis { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, comp: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(comp, m.clone())).copied()
    }

    /// Coordinates of a homogeneous element of degree `d`.
    pub fn coordinates(&self, e: &ModuleElement) -> Vec<Coeff> {
        let mut v = vec![0; self.len()];
        for (&i, p) in e.components() {
            for (m, c) in p.terms() {
                let k = self.position(i, m).expect("element not homogeneous of the basis degree");
                v[k] = *c;
            }
        }
        v
    }
}

/// Rows spanning the degree-`d` part of the submodule generated by `gens`
/// (each of degree `gen_degrees[j]`) inside the free module with `twists`.
pub fn degree_slice(
    field: &PrimeField,
    nvars: usize,
    twists: &[i64],
    gens: &[ModuleElement],
    gen_degrees: &[i64],
    d: i64,
) -> (DegreeBasis, Vec<Vec<Coeff>>) {
    let basis = DegreeBasis::new(nvars, twists, d);
    let mut rows = Vec::new();
    for (g, &gd) in gens.iter().zip(gen_degrees) {
        if g.is_zero() || d - gd < 0 {
            continue;
        }
        for m in Monomial::all_of_degree(nvars, (d - gd) as u32) {
            let mut v = vec![0; basis.len()];
            for (&i, p) in g.components() {
                for (t, c) in p.terms() {
                    let k = basis.position(i, &t.mul(&m)).expect("generator degree mismatch");
                    v[k] = field.add(v[k], *c);
                }
            }
            rows.push(v);
        }
    }
    (basis, rows)
}

/// `dim_F (submodule generated by gens)_d`.
pub fn span_dimension(
    field: &PrimeField,
    nvars: usize,
    twists: &[i64],
    gens: &[ModuleElement],
    gen_degrees: &[i64],
    d: i64,
) -> usize {
    let (_, rows) = degree_slice(field, nvars, twists, gens, gen_degrees, d);
    rank(field, &rows)
}

/// `dim_F (G / N)_d` where `N` is generated by `gens`.
pub fn quotient_dimension(
    field: &PrimeField,
    nvars: usize,
    twists: &[i64],
    gens: &[ModuleElement],
    gen_degrees: &[i64],
    d: i64,
) -> usize {
    let (basis, rows) = degree_slice(field, nvars, twists, gens, gen_degrees, d);
    basis.len() - rank(field, &rows)
}

/// Nullity of the degree-`d` part of the map sending the `j`-th basis vector
/// of a free module (twists `gen_degrees`) to `gens[j]`.
pub fn map_nullity(
    field: &PrimeField,
    nvars: usize,
    twists: &[i64],
    gens: &[ModuleElement],
    gen_degrees: &[i64],
    d: i64,
) -> usize {
    let source: usize = gen_degrees
        .iter()
        .filter(|&&g| d - g >= 0)
        .map(|&g| Monomial::all_of_degree(nvars, (d - g) as u32).len())
        .sum();
    // zero generators still contribute source dimension; their rows are zero
    let nonzero_rank = span_dimension(field, nvars, twists, gens, gen_degrees, d);
    source - nonzero_rank
}
