//! Regularity, Hilbert series, dimension, multiplicity and ring invariants.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, FreeModule, ModuleElement};
use crate::hilbert::{monomial_module_numerator, LaurentPoly};
use crate::presentation::GradedPresentation;
use crate::resolution::{minimal_resolution, BettiTable};
use crate::ring::{GradedRing, RingRef};

/// Hilbert series `N(t) / (1-t)^p` and the data read off it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub numerator: LaurentPoly,
    pub var_count: usize,
    /// Krull dimension; `None` encodes the `-∞` of the zero module.
    pub dimension: Option<usize>,
    /// `var_count - dimension` (codimension in the polynomial ring).
    pub codimension: Option<usize>,
    pub multiplicity: Option<i64>,
    /// Present iff the module has finite length.
    pub length: Option<i64>,
}

impl HilbertData {
    pub fn from_numerator(numerator: LaurentPoly, var_count: usize) -> Self {
        match numerator.split_one_minus_t() {
            None => HilbertData {
                numerator,
                var_count,
                dimension: None,
                codimension: None,
                multiplicity: None,
                length: None,
            },
            Some((c, q)) => {
                let e = q.eval_at_one();
                let dim = var_count - c.min(var_count);
                HilbertData {
                    numerator,
                    var_count,
                    dimension: Some(dim),
                    codimension: Some(c),
                    multiplicity: Some(e),
                    length: if dim == 0 { Some(e) } else { None },
                }
            }
        }
    }

    pub fn is_zero_module(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Value of the Hilbert function in degree `d`.
    pub fn hilbert_function(&self, d: i64) -> i64 {
        self.numerator.series_coefficient(self.var_count, d)
    }

    /// `(1-t)^{δ}`-reduced numerator `Q(t)` with `HS = Q(t) / (1-t)^δ`.
    pub fn reduced_numerator(&self) -> Option<LaurentPoly> {
        self.numerator.split_one_minus_t().map(|(_, q)| q)
    }
}

/// Numerator of the Hilbert series of `G / N` where `G = ⊕ S(-t_i)` and `N`
/// is generated by `gens`, computed from the lead terms of a Gröbner basis.
pub fn quotient_numerator(ring: &GradedRing, twists: &[i64], gens: &[ModuleElement]) -> Result<LaurentPoly> {
    let ambient = ring.ambient();
    let module = FreeModule::new(twists.to_vec());
    let gb = buchberger(&ambient, &module, gens)?;
    Ok(monomial_module_numerator(ring.nvars(), twists, &gb.initial_monomials()))
}

/// Hilbert numerator of `M` (over the ambient polynomial ring).
pub fn hilbert_numerator(m: &GradedPresentation) -> Result<LaurentPoly> {
    let lifted = m.lift_to_ambient();
    quotient_numerator(lifted.ring(), lifted.row_twists(), &lifted.column_elements())
}

pub fn hilbert_data(m: &GradedPresentation) -> Result<HilbertData> {
    Ok(HilbertData::from_numerator(hilbert_numerator(m)?, m.ring().nvars()))
}

/// Minimal graded Betti numbers of `M` over the ambient polynomial ring.
pub fn betti_table(m: &GradedPresentation) -> Result<BettiTable> {
    Ok(minimal_resolution(m)?.1)
}

/// `reg(M) = max_i (b_i - i)`, computed over the ambient polynomial ring.
pub fn regularity(m: &GradedPresentation) -> Result<i64> {
    betti_table(m)?.regularity().ok_or(Error::ZeroModule)
}

/// Everything the bound calculators need about one module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    pub betti: BettiTable,
    pub regularity: i64,
    pub hilbert: HilbertData,
}

pub fn module_invariants(m: &GradedPresentation) -> Result<ModuleInvariants> {
    let (_, betti) = minimal_resolution(m)?;
    let regularity = betti.regularity().ok_or(Error::ZeroModule)?;
    let hilbert = hilbert_data(m)?;
    debug_assert_eq!(betti.euler_numerator(), hilbert.numerator);
    Ok(ModuleInvariants {
        betti,
        regularity,
        hilbert,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RingInvariants {
    pub dim: usize,
    pub degree: i64,
    pub regularity: i64,
    pub cohen_macaulay: bool,
}

/// `(dim R, deg R, reg R, R Cohen–Macaulay)` for `R = S/J`, treating `R` as
/// an `S`-module. Cohen–Macaulayness is decided by comparing the projective
/// dimension with the codimension.
pub fn ring_invariants(ring: &GradedRing) -> Result<RingInvariants> {
    let rr: RingRef = Arc::new(ring.clone());
    let m = GradedPresentation::free(rr, vec![0])?;
    let inv = module_invariants(&m)?;
    let dim = inv.hilbert.dimension.ok_or(Error::ZeroModule)?;
    let codim = inv.hilbert.codimension.unwrap();
    let pd = inv.betti.projective_dimension().unwrap_or(0);
    Ok(RingInvariants {
        dim,
        degree: inv.hilbert.multiplicity.unwrap(),
        regularity: inv.regularity,
        cohen_macaulay: pd == codim,
    })
}
