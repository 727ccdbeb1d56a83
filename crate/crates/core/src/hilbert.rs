//! Hilbert series numerators of monomial modules.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::monomial::Monomial;

/// An integer Laurent polynomial in `t`, stored as exponent → coefficient with
/// no zero entries.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(e: i64, c: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(low + k as i64, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.coeffs.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn shift(&self, s: i64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + s, c)).collect(),
        }
    }

    /// Multiplies by `1 - t^d`.
    pub fn times_one_minus_t_pow(&self, d: i64) -> LaurentPoly {
        self.sub(&self.shift(d))
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Exact division by `1 - t`, if possible.
    pub fn div_one_minus_t(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if self.eval_at_one() != 0 {
            return None;
        }
        // q_k = sum of coefficients of self up to k
        let lo = self.min_exponent().unwrap();
        let hi = self.max_exponent().unwrap();
        let mut q = LaurentPoly::zero();
        let mut acc = 0;
        for e in lo..hi {
            acc += self.coefficient(e);
            q.add_term(e, acc);
        }
        Some(q)
    }

    /// Writes `self = (1 - t)^k * q` with `q(1) != 0`; `None` for zero.
    pub fn split_one_minus_t(&self) -> Option<(usize, LaurentPoly)> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut q = self.clone();
        while let Some(next) = q.div_one_minus_t() {
            if q.eval_at_one() != 0 {
                break;
            }
            q = next;
            k += 1;
        }
        Some((k, q))
    }

    /// Coefficient of `t^d` in `self / (1 - t)^p`.
    pub fn series_coefficient(&self, p: usize, d: i64) -> i64 {
        self.terms()
            .filter(|&(e, _)| e <= d)
            .map(|(e, c)| c * binomial_i64((d - e) as u64 + p as u64 - 1, p as u64 - 1))
            .sum()
    }

    pub fn dense(&self) -> (i64, Vec<i64>) {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo, (lo..=hi).map(|e| self.coefficient(e)).collect()),
            _ => (0, Vec::new()),
        }
    }
}

fn binomial_i64(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.coeffs.iter().map(|(e, c)| (e.to_string(), c)))
    }
}

fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens.drain(..) {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    *gens = out;
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1-t)^n` of `S / I` for a
/// monomial ideal `I` in `n` variables.
pub fn monomial_ideal_numerator(nvars: usize, gens: &[Monomial]) -> LaurentPoly {
    let mut g = gens.to_vec();
    minimalize(&mut g);
    numerator_rec(nvars, g)
}

fn numerator_rec(nvars: usize, gens: Vec<Monomial>) -> LaurentPoly {
    if gens.iter().any(|m| m.is_one()) {
        return LaurentPoly::zero();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut out = LaurentPoly::one();
        for m in &gens {
            out = out.times_one_minus_t_pow(m.degree() as i64);
        }
        return out;
    }
    // pivot: the variable occurring in the most generators of degree >= 2
    let mut counts = vec![0usize; nvars];
    for m in gens.iter().filter(|m| m.degree() >= 2) {
        for (v, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                counts[v] += 1;
            }
        }
    }
    let v = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();
    let x = Monomial::variable(nvars, v);
    // N(I) = N(I + (x)) + t * N(I : x)
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exponent(v) == 0).cloned().collect();
    plus.push(x.clone());
    minimalize(&mut plus);
    let mut colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            if m.exponent(v) > 0 {
                x.quotient_of(m)
            } else {
                m.clone()
            }
        })
        .collect();
    minimalize(&mut colon);
    numerator_rec(nvars, plus).add(&numerator_rec(nvars, colon).shift(1))
}

/// Numerator for `⊕_i S(-t_i) / (I_i e_i)` given per-component monomial
/// ideals and twists.
pub fn monomial_module_numerator(nvars: usize, twists: &[i64], ideals: &[Vec<Monomial>]) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (t, gens) in twists.iter().zip(ideals) {
        out = out.add(&monomial_ideal_numerator(nvars, gens).shift(*t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn max_ideal_square() {
        let n = monomial_ideal_numerator(2, &[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        assert_eq!(n, LaurentPoly::from_coeffs(0, &[1, 0, -3, 2]));
        let (k, q) = n.split_one_minus_t().unwrap();
        assert_eq!(k, 2);
        assert_eq!(q, LaurentPoly::from_coeffs(0, &[1, 2]));
    }

    #[test]
    fn x2_xy() {
        let n = monomial_ideal_numerator(2, &[m(&[2, 0]), m(&[1, 1])]);
        let (k, q) = n.split_one_minus_t().unwrap();
        assert_eq!(k, 1);
        assert_eq!(q.eval_at_one(), 1);
        // Hilbert function 1, 2, 1, 1, ...
        let hf: Vec<i64> = (0..5).map(|d| n.series_coefficient(2, d)).collect();
        assert_eq!(hf, vec![1, 2, 1, 1, 1]);
    }

    #[test]
    fn whole_ring_and_unit_ideal() {
        assert_eq!(monomial_ideal_numerator(3, &[]), LaurentPoly::one());
        assert!(monomial_ideal_numerator(3, &[m(&[0, 0, 0])]).is_zero());
    }

    #[test]
    fn division_by_one_minus_t() {
        let p = LaurentPoly::from_coeffs(-1, &[1, -1]);
        assert_eq!(p.div_one_minus_t().unwrap(), LaurentPoly::monomial(-1, 1));
        assert!(LaurentPoly::one().div_one_minus_t().is_none());
        assert_eq!(format!("{}", LaurentPoly::from_coeffs(0, &[1, 0, -3, 2])), "1 - 3t^2 + 2t^3");
    }
}
