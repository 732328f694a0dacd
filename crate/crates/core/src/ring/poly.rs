use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::coeff::Coefficient;
use super::monomial::ExponentVector;
use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// Variable names plus a monomial order. Two specs with equal fields are the same ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    variable_names: Vec<String>,
    order: MonomialOrder,
}

/// Shared handle to a ring; polynomials carry one each.
pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, order: MonomialOrder) -> Result<Ring> {
        let variable_names: Vec<String> = names.into_iter().map(Into::into).collect();
        if variable_names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        for (i, n) in variable_names.iter().enumerate() {
            if variable_names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable {n:?}")));
            }
        }
        order.validate(variable_names.len()).map_err(Error::InvalidRing)?;
        Ok(Arc::new(RingSpec { variable_names, order }))
    }

    /// Ring with the given names under the local order `ds`.
    pub fn local<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Ring> {
        Self::new(names, MonomialOrder::LocalNegDegRevLex)
    }

    /// Ring with the given names under the global order `dp`.
    pub fn global<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Ring> {
        Self::new(names, MonomialOrder::GlobalDegRevLex)
    }

    pub fn nvars(&self) -> usize {
        self.variable_names.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variable_names.iter().position(|n| n == name)
    }

    /// Same variables under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        Self::new(self.variable_names.clone(), order)
    }

    /// A variable name not already used in the ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut i = 0;
        while self.variable_names.contains(&name) {
            i += 1;
            name = format!("{base}{i}");
        }
        name
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring ({}) {};", self.variable_names.join(","), self.order)
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// One nonzero term of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coefficient,
    pub exp: ExponentVector,
}

/// Sparse polynomial over the rationals, terms strictly descending in the ring order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Coefficient) -> Self {
        Self::monomial(ring, c, ExponentVector::one(ring.nvars()))
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Coefficient::one())
    }

    pub fn monomial(ring: &Ring, c: Coefficient, exp: ExponentVector) -> Self {
        debug_assert_eq!(exp.len(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![Term { coeff: c, exp }] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// The variable with the given index.
    pub fn var(ring: &Ring, index: usize) -> Result<Self> {
        if index >= ring.nvars() {
            return Err(Error::IndexOutOfRange { index, len: ring.nvars() });
        }
        Ok(Self::monomial(ring, Coefficient::one(), ExponentVector::variable(ring.nvars(), index)))
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Coefficient, ExponentVector)>) -> Self {
        let mut v: Vec<Term> = terms
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(coeff, exp)| Term { coeff, exp })
            .collect();
        let order = ring.order();
        v.sort_by(|a, b| order.cmp(&b.exp, &a.exp));
        let mut out: Vec<Term> = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.exp == t.exp => {
                    last.coeff = &last.coeff + &t.coeff;
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Wrap terms already strictly descending and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].exp, &w[1].exp) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_one())
    }

    pub fn lead_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lm(&self) -> Option<&ExponentVector> {
        self.terms.first().map(|t| &t.exp)
    }

    pub fn lc(&self) -> Option<&Coefficient> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Maximal total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.exp.degree()).max()
    }

    /// Minimal total degree of a term (the order of the germ); `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.exp.degree()).min()
    }

    /// `deg(p) - deg(LM(p))`, the Mora ecart.
    pub fn ecart(&self) -> u32 {
        match (self.total_degree(), self.lm()) {
            (Some(d), Some(m)) => d - m.degree(),
            _ => 0,
        }
    }

    /// True when every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].exp.degree() == w[1].exp.degree())
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Coefficient {
        self.terms
            .iter()
            .find(|t| t.exp.is_one())
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Coefficient::zero)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(&Coefficient::one(), &Coefficient::from_i64(-1), None, other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(&Coefficient::one(), &Coefficient::one(), None, other))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.len() < other.len() {
            return other.mul_unchecked(self);
        }
        // Accumulate one shifted copy of `self` per term of the shorter factor.
        let mut acc = Polynomial::zero(&self.ring);
        for t in &other.terms {
            acc = acc.combine(&Coefficient::one(), &-&t.coeff, Some(&t.exp), self);
        }
        acc
    }

    /// `a*self - b*m*g` in a single merge pass (`m = 1` when `None`).
    pub fn combine(&self, a: &Coefficient, b: &Coefficient, m: Option<&ExponentVector>, g: &Polynomial) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &g.ring));
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().map(|t| {
            let exp = match m {
                Some(m) => t.exp.mul(m),
                None => t.exp.clone(),
            };
            (t, exp)
        });
        let mut next_g = gi.next();
        let scale_self = |c: &Coefficient| if a.is_one() { c.clone() } else { c * a };
        let scale_g = |c: &Coefficient| -(c * b);
        loop {
            match (self.terms.get(i), &next_g) {
                (None, None) => break,
                (Some(t), None) => {
                    out.push(Term { coeff: scale_self(&t.coeff), exp: t.exp.clone() });
                    i += 1;
                }
                (None, Some((gt, gexp))) => {
                    out.push(Term { coeff: scale_g(&gt.coeff), exp: gexp.clone() });
                    next_g = gi.next();
                }
                (Some(t), Some((gt, gexp))) => match order.cmp(&t.exp, gexp) {
                    Ordering::Greater => {
                        out.push(Term { coeff: scale_self(&t.coeff), exp: t.exp.clone() });
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(Term { coeff: scale_g(&gt.coeff), exp: gexp.clone() });
                        next_g = gi.next();
                    }
                    Ordering::Equal => {
                        let c = &scale_self(&t.coeff) + &scale_g(&gt.coeff);
                        if !c.is_zero() {
                            out.push(Term { coeff: c, exp: t.exp.clone() });
                        }
                        i += 1;
                        next_g = gi.next();
                    }
                },
            }
        }
        if a.is_zero() {
            out.retain(|t| !t.coeff.is_zero());
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|t| Term { coeff: &t.coeff * c, exp: t.exp.clone() }).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_term(&self, c: &Coefficient, m: &ExponentVector) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|t| Term { coeff: &t.coeff * c, exp: t.exp.mul(m) }).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.ring.nvars() {
            return Err(Error::IndexOutOfRange { index: var, len: self.ring.nvars() });
        }
        let terms = self.terms.iter().filter(|t| t.exp.get(var) > 0).map(|t| {
            let e = t.exp.get(var);
            let mut exp = t.exp.clone();
            exp.decrement(var);
            (&t.coeff * &Coefficient::from_i64(e as i64), exp)
        });
        // Differentiation can reorder terms under a degree order, so re-sort.
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Multiply by the inverse of the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.lc() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Integer polynomial with coprime coefficients and positive leading coefficient,
    /// a rational multiple of `self`.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let all_int = self.terms.iter().all(|t| t.coeff.is_integer());
        let scaled = if all_int {
            self.clone()
        } else {
            let mut l = num_bigint::BigInt::from(1);
            for t in &self.terms {
                l = num_integer::Integer::lcm(&l, &t.coeff.denom());
            }
            self.scale(&Coefficient::from_bigint(l))
        };
        let content = scaled.int_content();
        let neg = scaled.lc().map(|c| c.is_negative()).unwrap_or(false);
        let divisor = if neg { -&content } else { content };
        if divisor.is_one() {
            return scaled;
        }
        let terms = scaled
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.int_div_exact(&divisor), exp: t.exp.clone() })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Gcd of the coefficients of an integer polynomial.
    pub(crate) fn int_content(&self) -> Coefficient {
        let mut g = Coefficient::zero();
        for t in &self.terms {
            g = g.int_gcd(&t.coeff);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Re-express in another ring through an exponent map; terms are re-sorted.
    pub fn map_into(&self, ring: &Ring, f: impl Fn(&ExponentVector) -> ExponentVector) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|t| (t.coeff.clone(), f(&t.exp))))
    }

    /// Same polynomial viewed in a ring with identical variables and another order.
    pub fn reorder(&self, ring: &Ring) -> Polynomial {
        debug_assert_eq!(ring.nvars(), self.ring.nvars());
        self.map_into(ring, |e| e.clone())
    }

    /// Exact quotient `self / d` in the polynomial ring, or `None` if `d` does not divide.
    pub fn divide_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero(&self.ring));
        }
        // Division is run under a well-order so that it terminates.
        let gring = if self.ring.order().is_global() {
            self.ring.clone()
        } else {
            self.ring.with_order(MonomialOrder::GlobalDegRevLex).ok()?
        };
        let d = d.reorder(&gring);
        let mut r = self.reorder(&gring);
        let (dlm, dlc) = (d.lm()?.clone(), d.lc()?.clone());
        let mut q = Vec::new();
        while let Some(t) = r.lead_term() {
            let m = dlm.quotient_of(&t.exp)?;
            let c = t.coeff.checked_div(&dlc)?;
            r = r.combine(&Coefficient::one(), &c, Some(&m), &d);
            q.push((c, m));
        }
        Some(Polynomial::from_terms(&self.ring, q))
    }

    /// Substitute `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ring);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.ring)];
        for t in &self.terms {
            let e = t.exp.get(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul_unchecked(value);
                powers.push(next);
            }
            let mut rest = t.exp.clone();
            rest.set(var, 0);
            let part = powers[e].mul_term(&t.coeff, &rest);
            acc = acc.combine(&Coefficient::one(), &Coefficient::from_i64(-1), None, &part);
        }
        acc
    }

    /// Degree in a single variable; `None` for zero.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|t| t.exp.get(var)).max()
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Coefficient]) -> Coefficient {
        let mut acc = Coefficient::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, e) in t.exp.exponents().iter().enumerate() {
                if *e > 0 {
                    v = &v * &point[i].pow(*e);
                }
            }
            acc = &acc + &v;
        }
        acc
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use `checked_add` for a `Result`.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Coefficient::from_i64(-1))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, names: &[String], exp: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, e) in exp.exponents().iter().enumerate() {
        if *e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", names[i])?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.variable_names();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t.exp.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, names, &t.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> Ring {
        RingSpec::global(["x", "y", "z"]).unwrap()
    }

    fn var(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i).unwrap()
    }

    #[test]
    fn binomial_square() {
        let r = ring3();
        let s = &var(&r, 0) + &var(&r, 1);
        assert_eq!((&s * &s).to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn absorbing_zero_and_cancellation() {
        let r = ring3();
        let (x, y) = (var(&r, 0), var(&r, 1));
        assert!((&x * &Polynomial::zero(&r)).is_zero());
        let d = &(&x * &x) - &(&y * &y);
        assert_eq!((&d + &(&y * &y)).to_string(), "x^2");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = ring3();
        let s = RingSpec::local(["x", "y", "z"]).unwrap();
        assert!(matches!(var(&r, 0).checked_add(&var(&s, 0)), Err(Error::RingMismatch)));
        assert!(RingSpec::global(["x", "x"]).is_err());
    }

    #[test]
    fn derivatives() {
        let r = ring3();
        let (x, y, z) = (var(&r, 0), var(&r, 1), var(&r, 2));
        let xyz = &(&x * &y) * &z;
        assert_eq!(xyz.derivative(0).unwrap(), &y * &z);
        assert!(y.pow(3).derivative(0).unwrap().is_zero());
        assert!(x.derivative(5).is_err());
    }

    #[test]
    fn local_display_puts_low_degree_first() {
        let r = RingSpec::local(["x"]).unwrap();
        let x = var(&r, 0);
        assert_eq!((&x - &x.pow(2)).to_string(), "x - x^2");
    }

    #[test]
    fn exact_division() {
        let r = RingSpec::local(["x", "y"]).unwrap();
        let (x, y) = (var(&r, 0), var(&r, 1));
        let f = &x + &y.pow(2);
        let g = &(&x - &y) * &f;
        assert_eq!(g.divide_exact(&f).unwrap(), &x - &y);
        assert!(x.divide_exact(&(&x - &x.pow(2))).is_none());
    }

    #[test]
    fn primitive_clears_denominators() {
        let r = ring3();
        let p = Polynomial::from_terms(
            &r,
            [
                (Coefficient::fraction(-1, 2).unwrap(), ExponentVector::from_exponents(&[1, 0, 0])),
                (Coefficient::fraction(3, 4).unwrap(), ExponentVector::from_exponents(&[0, 1, 0])),
            ],
        );
        assert_eq!(p.primitive().to_string(), "2*x - 3*y");
    }
}
