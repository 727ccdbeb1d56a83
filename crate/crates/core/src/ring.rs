//! Standard graded rings `S/J` with `S = F_p[x_1, ..., x_n]`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField};
use crate::monomial::MonomialOrder;
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRing {
    field: PrimeField,
    variables: Vec<String>,
    order: MonomialOrder,
    quotient: Vec<Polynomial>,
}

pub type RingRef = Arc<GradedRing>;

impl GradedRing {
    pub fn new(field: PrimeField, variables: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::Precondition("a ring needs at least one variable".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &variables {
            if !seen.insert(v) {
                return Err(Error::Precondition(format!("duplicate variable '{v}'")));
            }
        }
        Ok(GradedRing {
            field,
            variables,
            order,
            quotient: Vec::new(),
        })
    }

    /// Polynomial ring in variables named `x1..xn` (or `x, y, z` for n ≤ 3).
    pub fn polynomial(p: u64, nvars: usize) -> Result<Self> {
        let names: Vec<String> = if nvars <= 3 {
            ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=nvars).map(|i| format!("x{i}")).collect()
        };
        GradedRing::new(PrimeField::new(p)?, names, MonomialOrder::GRevLex)
    }

    /// Adds quotient generators `J`. Each must be homogeneous of degree ≥ 2.
    pub fn with_quotient(mut self, gens: Vec<Polynomial>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            self.check_poly(g)?;
            if !g.is_homogeneous() {
                return Err(Error::Precondition(format!("quotient generator {i} is not homogeneous")));
            }
            match g.degree() {
                Some(d) if d >= 2 => {}
                None => {}
                Some(d) => {
                    return Err(Error::Precondition(format!(
                        "quotient generator {i} has degree {d}; degree ≥ 2 required"
                    )))
                }
            }
        }
        self.quotient = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(self)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn quotient(&self) -> &[Polynomial] {
        &self.quotient
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.quotient.is_empty()
    }

    /// The ambient polynomial ring `S` (same variables, no quotient).
    pub fn ambient(&self) -> GradedRing {
        GradedRing {
            quotient: Vec::new(),
            ..self.clone()
        }
    }

    pub fn with_order(&self, order: MonomialOrder) -> GradedRing {
        GradedRing {
            order,
            ..self.clone()
        }
    }

    /// Same variables and quotient generators over another prime.
    pub fn with_characteristic(&self, p: u64) -> Result<GradedRing> {
        let field = PrimeField::new(p)?;
        let lift = |g: &Polynomial| {
            Polynomial::from_terms(
                g.nvars(),
                g.terms()
                    .iter()
                    .map(|(m, c)| (m.clone(), field.from_i64(self.field.to_signed(*c)))),
                &field,
            )
        };
        let quotient = self.quotient.iter().map(lift).collect();
        Ok(GradedRing {
            field,
            variables: self.variables.clone(),
            order: self.order,
            quotient,
        })
    }

    pub fn check_poly(&self, f: &Polynomial) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "polynomial in {} variables used in a ring with {}",
                f.nvars(),
                self.nvars()
            )));
        }
        let p = self.field.characteristic();
        if f.terms().iter().any(|(_, c)| *c >= p) {
            return Err(Error::RingMismatch(format!("coefficient out of range for F_{p}")));
        }
        Ok(())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self.nvars(), 1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::constant(self.nvars(), self.field.from_i64(c))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::variable(self.nvars(), i)
    }

    pub fn var_by_name(&self, name: &str) -> Option<Polynomial> {
        self.variables.iter().position(|v| v == name).map(|i| self.var(i))
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check_poly(f)?;
        self.check_poly(g)?;
        Ok(f.add(g, &self.field))
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check_poly(f)?;
        self.check_poly(g)?;
        Ok(f.sub(g, &self.field))
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check_poly(f)?;
        self.check_poly(g)?;
        Ok(f.mul(g, &self.field))
    }

    pub fn scale(&self, f: &Polynomial, c: Coeff) -> Result<Polynomial> {
        self.check_poly(f)?;
        Ok(f.scale(c % self.field.characteristic(), &self.field))
    }

    pub fn render(&self, f: &Polynomial) -> String {
        f.render(&self.variables, &self.field, self.order)
    }

    /// A linear form from integer coefficients, one per variable.
    pub fn linear_form(&self, coeffs: &[i64]) -> Polynomial {
        assert_eq!(coeffs.len(), self.nvars());
        let mut out = self.zero();
        for (i, &c) in coeffs.iter().enumerate() {
            out = out.add(&self.var(i).scale(self.field.from_i64(c), &self.field), &self.field);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_mismatch_is_reported() {
        let r2 = GradedRing::polynomial(101, 2).unwrap();
        let r3 = GradedRing::polynomial(101, 3).unwrap();
        let err = r2.add(&r2.var(0), &r3.var(0)).unwrap_err();
        assert!(matches!(err, Error::RingMismatch(_)));
    }

    #[test]
    fn quotient_rejects_linear_generators() {
        let r = GradedRing::polynomial(101, 2).unwrap();
        let x = r.var(0);
        assert!(r.clone().with_quotient(vec![x.clone()]).is_err());
        let xy = r.mul(&x, &r.var(1)).unwrap();
        assert!(r.with_quotient(vec![xy]).is_ok());
    }
}
