//! Mora's weak normal form.
//!
//! Reducers are chosen with minimal ecart; whenever the chosen reducer has a
//! larger ecart than the current remainder, the remainder itself is added to the
//! reducer set. For well-orders every ecart comparison is harmless and the
//! procedure is ordinary multivariate division of the leading term.

use crate::ring::{Coefficient, ExponentVector, Polynomial};

/// A polynomial prepared for use as a reducer.
#[derive(Clone, Debug)]
pub(crate) struct Reducer {
    pub poly: Polynomial,
    pub lm: ExponentVector,
    pub mask: u64,
    pub ecart: u32,
}

pub(crate) fn support_mask(m: &ExponentVector) -> u64 {
    let mut mask = 0u64;
    for (i, e) in m.exponents().iter().enumerate() {
        if *e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

impl Reducer {
    pub fn new(poly: Polynomial) -> Self {
        let lm = poly.lm().expect("reducer must be nonzero").clone();
        let mask = support_mask(&lm);
        let ecart = poly.ecart();
        Reducer { poly, lm, mask, ecart }
    }

    #[inline]
    pub fn divides(&self, m: &ExponentVector, m_mask: u64) -> bool {
        self.mask & !m_mask == 0 && self.lm.divides(m)
    }
}

/// One fraction-free reduction step `h <- a*h - b*m*g`, cancelling `LT(h)`.
/// Returns the factor `a` applied to `h`.
pub(crate) fn reduce_step(h: &Polynomial, g: &Polynomial, g_lm: &ExponentVector) -> (Polynomial, Coefficient) {
    let ht = h.lead_term().expect("nonzero remainder");
    let gc = g.lc().expect("nonzero reducer");
    let m = g_lm.quotient_of(&ht.exp).expect("reducer divides leading monomial");
    if ht.coeff.is_integer() && gc.is_integer() {
        let gg = ht.coeff.int_gcd(gc);
        let a = gc.int_div_exact(&gg);
        let b = ht.coeff.int_div_exact(&gg);
        let (a, b) = if a.is_negative() { (-&a, -&b) } else { (a, b) };
        let out = h.combine(&a, &b, Some(&m), g);
        (out, a)
    } else {
        let b = ht.coeff.checked_div(gc).expect("nonzero leading coefficient");
        (h.combine(&Coefficient::one(), &b, Some(&m), g), Coefficient::one())
    }
}

/// Outcome of a normal form computation: `scale * u * p = remainder mod (basis)`
/// with `u` a unit of the localization (`u = 1` for well-orders).
pub(crate) struct NormalForm {
    pub remainder: Polynomial,
    pub scale: Coefficient,
    pub steps: usize,
}

/// Weak normal form of `p` with respect to `basis`.
///
/// With `full = true` and a well-order, tail terms are reduced as well.
pub(crate) fn mora_nf(p: &Polynomial, basis: &[Reducer], full: bool) -> NormalForm {
    let mut h = p.clone();
    let mut scale = Coefficient::one();
    let mut extra: Vec<Reducer> = Vec::new();
    let mut steps = 0usize;
    let mut done: Vec<crate::ring::Term> = Vec::new();
    loop {
        let Some(lt) = h.lead_term() else { break };
        let lm = lt.exp.clone();
        let lm_mask = support_mask(&lm);
        let mut best: Option<usize> = None;
        let mut best_ecart = u32::MAX;
        for (i, r) in basis.iter().chain(extra.iter()).enumerate() {
            if r.ecart < best_ecart && r.divides(&lm, lm_mask) {
                best = Some(i);
                best_ecart = r.ecart;
                if r.ecart == 0 {
                    break;
                }
            }
        }
        let Some(gi) = best else {
            if full {
                // Move the irreducible leading term out and continue with the tail.
                let mut terms = h.into_terms();
                let t = terms.remove(0);
                done.push(t);
                h = Polynomial::from_sorted_terms(p.ring(), terms);
                continue;
            }
            break;
        };
        let h_ecart = h.ecart();
        let (next, a, keep_h) = {
            let g = if gi < basis.len() { &basis[gi] } else { &extra[gi - basis.len()] };
            let (next, a) = reduce_step(&h, &g.poly, &g.lm);
            (next, a, g.ecart > h_ecart)
        };
        if keep_h {
            extra.push(Reducer::new(h.primitive()));
        }
        if !a.is_one() {
            scale = &scale * &a;
            for t in done.iter_mut() {
                t.coeff = &t.coeff * &a;
            }
        }
        h = next;
        steps += 1;
        if steps % 16 == 0 && done.is_empty() && !h.is_zero() {
            let before = h.lc().cloned();
            h = h.primitive();
            if let (Some(b), Some(after)) = (before, h.lc()) {
                scale = (&scale * after).checked_div(&b).expect("nonzero");
            }
        }
    }
    let remainder = if done.is_empty() {
        h
    } else {
        let mut terms = done;
        terms.extend(h.into_terms());
        Polynomial::from_sorted_terms(p.ring(), terms)
    };
    NormalForm { remainder, scale, steps }
}
