//! Standard bases for local, global and mixed orders.

mod engine;
mod normal_form;

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU8, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{same_ring, ExponentVector, Polynomial, Ring};
pub(crate) use normal_form::{mora_nf, Reducer};

/// Critical pair selection strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// Smallest lcm degree first.
    #[default]
    Normal,
    /// Smallest sugar degree first.
    Sugar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StdOptions {
    pub selection: Selection,
    pub trace: bool,
}

static TRACE: AtomicBool = AtomicBool::new(false);
static SELECTION: AtomicU8 = AtomicU8::new(0);

/// Process-wide switch for per-step statistics on stderr.
pub fn set_trace(on: bool) {
    TRACE.store(on, AtomicOrdering::Relaxed);
}

/// Process-wide default pair selection.
pub fn set_default_selection(sel: Selection) {
    SELECTION.store(sel as u8, AtomicOrdering::Relaxed);
}

impl Default for StdOptions {
    fn default() -> Self {
        let selection = if SELECTION.load(AtomicOrdering::Relaxed) == 1 { Selection::Sugar } else { Selection::Normal };
        StdOptions { selection, trace: TRACE.load(AtomicOrdering::Relaxed) }
    }
}

/// Counters collected during one basis computation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BasisStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub reduction_steps: usize,
    pub chain_criterion: usize,
    pub product_criterion: usize,
    pub max_basis_size: usize,
}

/// A minimal standard basis with monic elements.
///
/// For global orders tails are fully reduced, which makes the basis unique.
/// Under local and mixed orders only leading terms are guaranteed irreducible.
#[derive(Clone, Debug)]
pub struct StdBasis {
    ring: Ring,
    elements: Vec<Polynomial>,
    leading: Vec<ExponentVector>,
    reducers: Vec<Reducer>,
    stats: BasisStats,
}

impl StdBasis {
    fn from_primitive(ring: &Ring, prim: Vec<Polynomial>, stats: BasisStats) -> Self {
        let elements: Vec<Polynomial> = prim.iter().map(Polynomial::monic).collect();
        let leading = elements.iter().map(|p| p.lm().expect("nonzero").clone()).collect();
        let reducers = prim.into_iter().map(Reducer::new).collect();
        StdBasis { ring: ring.clone(), elements, leading, reducers, stats }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_ideal(&self) -> &[ExponentVector] {
        &self.leading
    }

    pub fn stats(&self) -> &BasisStats {
        &self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(ExponentVector::is_one)
    }

    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }

    /// Weak normal form of `p`; zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let nf = mora_nf(p, &self.reducers, self.ring.order().is_global());
        if nf.remainder.is_zero() {
            return nf.remainder;
        }
        match nf.scale.inv() {
            Some(inv) => nf.remainder.scale(&inv),
            None => nf.remainder,
        }
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        if self.is_unit() {
            return true;
        }
        mora_nf(p, &self.reducers, false).remainder.is_zero()
    }
}

/// An ideal given by generators, with its standard basis computed on demand.
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    cached: OnceLock<Arc<StdBasis>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cached = OnceLock::new();
        if let Some(b) = self.cached.get() {
            let _ = cached.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), generators: self.generators.clone(), cached }
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), generators: gens, cached: OnceLock::new() })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new(), cached: OnceLock::new() }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), generators: vec![Polynomial::one(ring)], cached: OnceLock::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Standard basis under the default options, cached after the first call.
    pub fn std(&self) -> Arc<StdBasis> {
        self.cached.get_or_init(|| Arc::new(self.std_with(&StdOptions::default()))).clone()
    }

    /// Uncached computation with explicit options.
    pub fn std_with(&self, opts: &StdOptions) -> StdBasis {
        let c = engine::compute(&self.ring, &self.generators, opts);
        StdBasis::from_primitive(&self.ring, c.basis, c.stats)
    }

    pub fn has_std(&self) -> bool {
        self.cached.get().is_some()
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.std().contains(p))
    }

    /// Equality of the generated ideals via two-sided membership.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let a = self.std();
        let b = other.std();
        Ok(other.generators.iter().all(|g| a.contains(g)) && self.generators.iter().all(|g| b.contains(g)))
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let b = other.std();
        Ok(self.generators.iter().all(|g| b.contains(g)))
    }

    /// Generators sorted by their printed form with duplicates removed.
    pub fn canonical_generators(&self) -> Vec<String> {
        let mut v: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// Weak normal form of `p` with respect to the given polynomials, which are
/// used as is (no basis is computed). The result is scaled back so that
/// `u * p - h` lies in the ideal for a unit `u`.
pub fn mora_normal_form(p: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    if basis.iter().any(|b| !same_ring(b.ring(), p.ring())) {
        return Err(Error::RingMismatch);
    }
    let reducers: Vec<Reducer> = basis.iter().filter(|b| !b.is_zero()).cloned().map(Reducer::new).collect();
    let nf = mora_nf(p, &reducers, false);
    Ok(match nf.scale.inv() {
        Some(inv) if !nf.remainder.is_zero() => nf.remainder.scale(&inv),
        _ => nf.remainder,
    })
}

pub fn std_basis(i: &Ideal) -> Arc<StdBasis> {
    i.std()
}

pub fn ideal_contains(i: &Ideal, p: &Polynomial) -> Result<bool> {
    i.contains(p)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.equals(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn vars(r: &Ring) -> Vec<Polynomial> {
        (0..r.nvars()).map(|i| Polynomial::var(r, i).unwrap()).collect()
    }

    #[test]
    fn unit_membership_depends_on_order() {
        let loc = RingSpec::local(["x"]).unwrap();
        let x = &vars(&loc)[0];
        let g = x - &x.pow(2);
        assert!(mora_normal_form(x, &[g.clone()]).unwrap().is_zero());
        let glob = RingSpec::global(["x"]).unwrap();
        let xg = &vars(&glob)[0];
        let gg = xg - &xg.pow(2);
        assert_eq!(mora_normal_form(xg, &[gg]).unwrap(), xg.clone());
    }

    #[test]
    fn irreducible_before_spair() {
        let r = RingSpec::local(["x", "y"]).unwrap();
        let v = vars(&r);
        let (x, y) = (&v[0], &v[1]);
        let b = [&x.pow(2) + &y.pow(3), x * y];
        assert_eq!(mora_normal_form(&y.pow(4), &b).unwrap(), y.pow(4));
        let i = Ideal::new(&r, b).unwrap();
        let s = i.std();
        assert_eq!(s.elements().len(), 3);
        assert!(s.elements().contains(&y.pow(4)));
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = RingSpec::global(["x", "y"]).unwrap();
        let v = vars(&r);
        let gens = vec![v[0].pow(2), &v[0] * &v[1], v[1].pow(2)];
        let s = Ideal::new(&r, gens.clone()).unwrap().std();
        assert_eq!(s.elements().len(), 3);
        for g in &gens {
            assert!(s.elements().contains(g));
        }
    }

    #[test]
    fn linear_ideal_reduces_fully() {
        let r = RingSpec::local(["x", "y", "z"]).unwrap();
        let v = vars(&r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let i = Ideal::new(&r, [&(x * y) * z, y - z, y - x]).unwrap();
        let s = i.std();
        assert!(s.contains(&(&(&(x * y) * z) - &x.pow(3))));
        assert!(!s.is_unit());
        let j = Ideal::new(&r, [x.clone(), y.clone(), z.clone()]).unwrap();
        assert!(!i.equals(&j).unwrap());
        assert!(i.is_subset_of(&j).unwrap());
        assert!(!j.is_subset_of(&i).unwrap());
        let k = Ideal::new(&r, [y - x, z - x, x.pow(3)]).unwrap();
        assert!(i.equals(&k).unwrap());
    }

    #[test]
    fn global_reduced_basis_is_unique() {
        let r = RingSpec::global(["x", "y"]).unwrap();
        let v = vars(&r);
        let (x, y) = (&v[0], &v[1]);
        let a = Ideal::new(&r, [&x.pow(2) - y, x * y]).unwrap();
        let b = Ideal::new(&r, [&(&x.pow(2) - y) + &(x * y), x * y, y.pow(2)]).unwrap();
        assert_eq!(a.std().elements(), b.std().elements());
    }

    #[test]
    fn unit_detected() {
        let r = RingSpec::local(["x"]).unwrap();
        let x = &vars(&r)[0];
        let one = Polynomial::one(&r);
        let i = Ideal::new(&r, [&one + x]).unwrap();
        assert!(i.std().is_unit());
    }
}
