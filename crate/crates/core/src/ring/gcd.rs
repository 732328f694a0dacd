//! Multivariate gcd over the rationals by recursive content and primitive
//! pseudo-remainder sequences.

use super::coeff::Coefficient;
use super::monomial::ExponentVector;
use super::poly::Polynomial;

/// Coefficients of `p` as a univariate polynomial in `var`; index = power.
pub fn coefficients_in(p: &Polynomial, var: usize) -> Vec<Polynomial> {
    let ring = p.ring();
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<(Coefficient, ExponentVector)>> = vec![Vec::new(); deg + 1];
    for t in p.terms() {
        let e = t.exp.get(var) as usize;
        let mut rest = t.exp.clone();
        rest.set(var, 0);
        buckets[e].push((t.coeff.clone(), rest));
    }
    buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect()
}

fn var_power(p: &Polynomial, var: usize, e: u32) -> ExponentVector {
    let mut m = ExponentVector::one(p.ring().nvars());
    m.set(var, e);
    m
}

fn lead_in(p: &Polynomial, var: usize) -> (u32, Polynomial) {
    let cs = coefficients_in(p, var);
    let d = cs.len() - 1;
    (d as u32, cs[d].clone())
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
fn pseudo_rem(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let (db, lb) = lead_in(b, var);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = lead_in(&r, var);
        if dr < db {
            break;
        }
        let shift = var_power(&r, var, dr - db);
        let shifted = &(&lr * b).mul_term(&Coefficient::one(), &shift);
        r = &(&lb * &r) - shifted;
        r = r.primitive();
    }
    r
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.ring());
    for c in coefficients_in(p, var) {
        if !c.is_zero() {
            g = gcd(&g, &c);
            if g.is_constant() {
                break;
            }
        }
    }
    g
}

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    let n = a.ring().nvars();
    let var = match (0..n).find(|&v| a.degree_in(v).unwrap_or(0) > 0 || b.degree_in(v).unwrap_or(0) > 0) {
        Some(v) => v,
        None => return Polynomial::one(a.ring()),
    };
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let cont = gcd(&ca, &cb);
    let mut pa = a.divide_exact(&ca).expect("content divides").primitive();
    let mut pb = b.divide_exact(&cb).expect("content divides").primitive();
    if pa.degree_in(var) < pb.degree_in(var) {
        std::mem::swap(&mut pa, &mut pb);
    }
    // Primitive PRS in `var`.
    while pb.degree_in(var).unwrap_or(0) > 0 {
        let r = pseudo_rem(&pa, &pb, var);
        pa = pb;
        if r.is_zero() {
            pb = Polynomial::zero(a.ring());
            break;
        }
        pb = r.divide_exact(&content_in(&r, var)).expect("content divides").primitive();
    }
    let core = if pb.is_zero() { pa } else { Polynomial::one(a.ring()) };
    (&cont * &core).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingSpec};

    fn setup() -> (Ring, Polynomial, Polynomial, Polynomial) {
        let r = RingSpec::global(["x", "y", "z"]).unwrap();
        let v = |i| Polynomial::var(&r, i).unwrap();
        (r.clone(), v(0), v(1), v(2))
    }

    #[test]
    fn gcd_of_products() {
        let (_, x, y, z) = setup();
        let common = &(&x + &y) * &(&z - &x);
        let a = &common * &(&y.pow(2) + &z);
        let b = &common * &(&x - &y.pow(3));
        let g = gcd(&a, &b);
        assert_eq!(g, common.monic());
    }

    #[test]
    fn coprime_is_one() {
        let (r, x, y, _) = setup();
        assert_eq!(gcd(&(&x + &y), &(&x - &y)), Polynomial::one(&r));
        assert_eq!(gcd(&x.pow(3), &x.pow(2)), x.pow(2));
    }

    #[test]
    fn content_is_found() {
        let (_, x, y, z) = setup();
        let a = &(&y * &z) * &(&x + &Polynomial::one(x.ring()));
        let b = &(&y * &z) * &x;
        assert_eq!(gcd(&a, &b), &y * &z);
    }
}
