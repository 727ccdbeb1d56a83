//! Homogeneous presentation matrices `F --φ--> G --> M --> 0`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{FreeModule, ModuleElement};
use crate::polynomial::Polynomial;
use crate::ring::RingRef;

/// A graded module given by generators of degrees `a_i` (rows) and relations
/// of degrees `b_j` (columns of φ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPresentation {
    ring: RingRef,
    row_twists: Vec<i64>,
    columns: Vec<Vec<Polynomial>>,
    column_degrees: Vec<i64>,
}

/// Checks homogeneity and derives the column degrees. A zero column needs an
/// externally supplied degree.
pub fn validate_presentation(
    ring: RingRef,
    row_twists: Vec<i64>,
    columns: Vec<Vec<Polynomial>>,
    supplied_degrees: Option<Vec<Option<i64>>>,
) -> Result<GradedPresentation> {
    if row_twists.is_empty() {
        return Err(Error::InvalidPresentation("at least one generator is required".into()));
    }
    let p = build(ring, row_twists, columns, supplied_degrees)?;
    Ok(p)
}

fn build(
    ring: RingRef,
    row_twists: Vec<i64>,
    columns: Vec<Vec<Polynomial>>,
    supplied_degrees: Option<Vec<Option<i64>>>,
) -> Result<GradedPresentation> {
    let n = row_twists.len();
    if let Some(s) = &supplied_degrees {
        if s.len() != columns.len() {
            return Err(Error::InvalidPresentation(format!(
                "{} column degrees supplied for {} columns",
                s.len(),
                columns.len()
            )));
        }
    }
    let mut column_degrees = Vec::with_capacity(columns.len());
    for (j, col) in columns.iter().enumerate() {
        if col.len() != n {
            return Err(Error::InvalidPresentation(format!(
                "column {j} has {} entries but there are {n} generators",
                col.len()
            )));
        }
        let mut b: Option<i64> = supplied_degrees.as_ref().and_then(|s| s[j]);
        let mut b_source: Option<usize> = None;
        for (i, f) in col.iter().enumerate() {
            ring.check_poly(f)?;
            if f.is_zero() {
                continue;
            }
            if !f.is_homogeneous() {
                return Err(Error::NonHomogeneous {
                    row: i,
                    col: j,
                    detail: format!("entry {} mixes degrees", ring.render(f)),
                });
            }
            let d = f.degree().unwrap() as i64 + row_twists[i];
            match b {
                None => {
                    b = Some(d);
                    b_source = Some(i);
                }
                Some(bj) if bj != d => {
                    let why = match b_source {
                        Some(k) => format!("row {k} forces column degree {bj}"),
                        None => format!("supplied column degree is {bj}"),
                    };
                    return Err(Error::NonHomogeneous {
                        row: i,
                        col: j,
                        detail: format!("entry {} has degree {} + twist {} = {d}; {why}", ring.render(f), d - row_twists[i], row_twists[i]),
                    });
                }
                _ => {}
            }
        }
        match b {
            Some(bj) => column_degrees.push(bj),
            None => return Err(Error::EmptyColumn(j)),
        }
    }
    Ok(GradedPresentation {
        ring,
        row_twists,
        columns,
        column_degrees,
    })
}

impl GradedPresentation {
    /// Validates a presentation given by its columns.
    pub fn new(ring: RingRef, row_twists: Vec<i64>, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        validate_presentation(ring, row_twists, columns, None)
    }

    pub fn with_degrees(
        ring: RingRef,
        row_twists: Vec<i64>,
        columns: Vec<Vec<Polynomial>>,
        degrees: Vec<Option<i64>>,
    ) -> Result<Self> {
        validate_presentation(ring, row_twists, columns, Some(degrees))
    }

    /// Builds from rows of the matrix (`rows[i][j]` = entry `(i, j)`).
    pub fn from_rows(ring: RingRef, row_twists: Vec<i64>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let m = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidPresentation("ragged matrix rows".into()));
        }
        let columns = (0..m).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        Self::new(ring, row_twists, columns)
    }

    /// The free module `⊕ R(-a_i)`.
    pub fn free(ring: RingRef, row_twists: Vec<i64>) -> Result<Self> {
        Self::new(ring, row_twists, Vec::new())
    }

    /// Internal constructor that allows zero generators (the zero module).
    pub(crate) fn from_parts(
        ring: RingRef,
        row_twists: Vec<i64>,
        columns: Vec<Vec<Polynomial>>,
        column_degrees: Vec<i64>,
    ) -> Self {
        debug_assert_eq!(columns.len(), column_degrees.len());
        GradedPresentation {
            ring,
            row_twists,
            columns,
            column_degrees,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn row_twists(&self) -> &[i64] {
        &self.row_twists
    }

    pub fn column_degrees(&self) -> &[i64] {
        &self.column_degrees
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.row_twists.len()
    }

    /// Number of relations.
    pub fn m(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.columns[j][i]
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[Polynomial] {
        &self.columns[j]
    }

    pub fn column_element(&self, j: usize) -> ModuleElement {
        ModuleElement::from_dense(&self.columns[j])
    }

    pub fn column_elements(&self) -> Vec<ModuleElement> {
        (0..self.m()).map(|j| self.column_element(j)).collect()
    }

    pub fn free_module(&self) -> FreeModule {
        FreeModule::new(self.row_twists.clone())
    }

    /// True when there are no generators (the zero module in minimal form).
    pub fn has_no_generators(&self) -> bool {
        self.row_twists.is_empty()
    }

    /// Generator degrees sorted descending.
    pub fn sorted_a(&self) -> Vec<i64> {
        let mut a = self.row_twists.clone();
        a.sort_unstable_by(|x, y| y.cmp(x));
        a
    }

    /// Relation degrees sorted descending.
    pub fn sorted_b(&self) -> Vec<i64> {
        let mut b = self.column_degrees.clone();
        b.sort_unstable_by(|x, y| y.cmp(x));
        b
    }

    /// Runs validation again on the stored data.
    pub fn revalidate(&self) -> Result<Self> {
        let degrees = self.column_degrees.iter().map(|&b| Some(b)).collect();
        if self.row_twists.is_empty() {
            return Ok(self.clone());
        }
        validate_presentation(self.ring.clone(), self.row_twists.clone(), self.columns.clone(), Some(degrees))
    }

    /// Reorders generators by `row_perm` (new row `k` is old row
    /// `row_perm[k]`) and relations by `col_perm`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let row_twists = row_perm.iter().map(|&i| self.row_twists[i]).collect();
        let columns = col_perm
            .iter()
            .map(|&j| row_perm.iter().map(|&i| self.columns[j][i].clone()).collect())
            .collect();
        let column_degrees = col_perm.iter().map(|&j| self.column_degrees[j]).collect();
        GradedPresentation {
            ring: self.ring.clone(),
            row_twists,
            columns,
            column_degrees,
        }
    }

    /// Appends relations (homogeneity is checked).
    pub fn with_extra_columns(&self, extra: Vec<Vec<Polynomial>>) -> Result<Self> {
        let mut columns = self.columns.clone();
        let mut degrees: Vec<Option<i64>> = self.column_degrees.iter().map(|&b| Some(b)).collect();
        let k = extra.len();
        columns.extend(extra);
        degrees.extend(std::iter::repeat_n(None, k));
        // zero columns carry no information; drop them rather than fail
        let keep: Vec<usize> = (0..columns.len())
            .filter(|&j| j < self.m() || columns[j].iter().any(|f| !f.is_zero()))
            .collect();
        let columns: Vec<Vec<Polynomial>> = keep.iter().map(|&j| columns[j].clone()).collect();
        let degrees: Vec<Option<i64>> = keep.iter().map(|&j| degrees[j]).collect();
        build(self.ring.clone(), self.row_twists.clone(), columns, Some(degrees))
    }

    /// The same module viewed over the ambient polynomial ring: relations
    /// `J · e_i` are appended for every generator and quotient generator.
    pub fn lift_to_ambient(&self) -> GradedPresentation {
        let ambient: RingRef = Arc::new(self.ring.ambient());
        let nv = self.ring.nvars();
        let mut columns = self.columns.clone();
        let mut degrees = self.column_degrees.clone();
        for (i, &a) in self.row_twists.iter().enumerate() {
            for g in self.ring.quotient() {
                let mut col = vec![Polynomial::zero(nv); self.n()];
                col[i] = g.clone();
                columns.push(col);
                degrees.push(a + g.degree().unwrap_or(0) as i64);
            }
        }
        GradedPresentation {
            ring: ambient,
            row_twists: self.row_twists.clone(),
            columns,
            column_degrees: degrees,
        }
    }

    /// The same entries over a ring with identical variables (for example one
    /// whose quotient differs). Entries are rechecked.
    pub fn with_ring(&self, ring: RingRef) -> Result<Self> {
        let degrees = self.column_degrees.iter().map(|&b| Some(b)).collect();
        build(ring, self.row_twists.clone(), self.columns.clone(), Some(degrees))
    }

    /// Rows of the matrix.
    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.n())
            .map(|i| self.columns.iter().map(|c| c[i].clone()).collect())
            .collect()
    }
}

/// Convenience: a cyclic module `R(-a)/(f_1, ..., f_k)`.
pub fn cyclic(ring: RingRef, a: i64, gens: Vec<Polynomial>) -> Result<GradedPresentation> {
    GradedPresentation::new(ring, vec![a], gens.into_iter().map(|g| vec![g]).collect())
}
