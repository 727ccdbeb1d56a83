//! Sparse multivariate polynomials over a prime field.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::{Coeff, PrimeField};
use crate::monomial::{Monomial, MonomialOrder};

/// A polynomial in a fixed number of variables.
///
/// Terms are kept sorted by the canonical (lexicographic exponent) order with
/// no zero coefficients and no repeated monomials, so structural equality is
/// polynomial equality regardless of which monomial order a ring uses.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        let nvars = m.nvars();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { nvars, terms }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::variable(nvars, i), 1)
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>, field: &PrimeField) -> Self {
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c % field.characteristic());
        }
        Polynomial {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// The value if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        matches!(self.as_constant(), Some(c) if c != 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        match self.terms.binary_search_by(|(t, _)| t.cmp(m)) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<&(Monomial, Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    fn merge(&self, other: &Polynomial, field: &PrimeField, negate: bool) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: Coeff| if negate { field.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((other.terms[j].0.clone(), conv(other.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(self.terms[i].1, conv(other.terms[j].1));
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), conv(*c))));
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial, field: &PrimeField) -> Polynomial {
        self.merge(other, field, false)
    }

    pub fn sub(&self, other: &Polynomial, field: &PrimeField) -> Polynomial {
        self.merge(other, field, true)
    }

    pub fn neg(&self, field: &PrimeField) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: Coeff, field: &PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), field.mul(*d, c))).collect(),
        }
    }

    /// Multiplication by `c * m`; keeps canonical order since monomial
    /// multiplication is monotone for the lexicographic storage order.
    pub fn mul_term(&self, m: &Monomial, c: Coeff, field: &PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, d)| (t.mul(m), field.mul(*d, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, field: &PrimeField) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = acc.entry(a.mul(b)).or_insert(0);
                *e = field.add(*e, field.mul(*ca, *cb));
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    pub fn pow(&self, e: u32, field: &PrimeField) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, 1);
        for _ in 0..e {
            acc = acc.mul(self, field);
        }
        acc
    }

    /// Substitutes polynomials for the variables.
    pub fn substitute(&self, images: &[Polynomial], field: &PrimeField) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, *c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32, field), field);
                }
            }
            out = out.add(&t, field);
        }
        out
    }

    /// Renders with the given variable names; coefficients use the symmetric
    /// representative. Terms are printed in decreasing `order`.
    pub fn render(&self, names: &[String], field: &PrimeField, order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<&(Monomial, Coeff)> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let s = field.to_signed(*c);
            let (neg, mag) = (s < 0, s.unsigned_abs());
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let f = f101();
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let s = x.add(&y, &f).add(&x.neg(&f), &f);
        assert_eq!(s, y);
    }

    #[test]
    fn difference_of_squares() {
        let f = f101();
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let lhs = x.add(&y, &f).mul(&x.sub(&y, &f), &f);
        let rhs = x.mul(&x, &f).sub(&y.mul(&y, &f), &f);
        assert_eq!(lhs, rhs);
        assert!(lhs.is_homogeneous());
        assert_eq!(lhs.degree(), Some(2));
    }

    #[test]
    fn characteristic_wraparound() {
        let f = f101();
        let x = Polynomial::variable(1, 0);
        assert!(x.scale(100, &f).add(&x, &f).is_zero());
        assert_eq!(Polynomial::zero(3).degree(), None);
    }

    #[test]
    fn render_uses_signed_coefficients() {
        let f = f101();
        let names = vec!["x".to_string(), "y".to_string()];
        let p = Polynomial::from_terms(
            2,
            [
                (Monomial::from_exponents(&[2, 0]), 1),
                (Monomial::from_exponents(&[0, 2]), 100),
                (Monomial::from_exponents(&[1, 1]), 3),
            ],
            &f,
        );
        assert_eq!(p.render(&names, &f, MonomialOrder::GRevLex), "x^2 + 3*x*y - y^2");
    }
}
