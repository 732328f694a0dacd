//! Ideal arithmetic on top of standard bases.

mod hilbert;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{gcd::gcd, same_ring, ExponentVector, MonomialOrder, OrderKind, Polynomial, Ring, RingSpec};
use crate::stdbasis::Ideal;
pub use hilbert::{hilbert_series as monomial_hilbert_series, monomial_dim, standard_monomial_count, HilbertSeries};

/// Vector-space dimension of a quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Vdim {
    Finite(u64),
    Infinite,
}

impl Vdim {
    pub fn finite(self) -> Option<u64> {
        match self {
            Vdim::Finite(n) => Some(n),
            Vdim::Infinite => None,
        }
    }
}

impl fmt::Display for Vdim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vdim::Finite(n) => write!(f, "{n}"),
            Vdim::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Vdim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Vdim::Finite(n) => s.serialize_u64(*n),
            Vdim::Infinite => s.serialize_str("infinite"),
        }
    }
}

pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    Ideal::new(a.ring(), a.generators().iter().chain(b.generators()).cloned())
}

/// `I + (polys)`.
pub fn ideal_add(a: &Ideal, polys: &[Polynomial]) -> Result<Ideal> {
    Ideal::new(a.ring(), a.generators().iter().chain(polys).cloned())
}

/// Ring with `count` fresh variables prepended in a global block.
fn prefixed_ring(ring: &Ring, base: &str, count: usize) -> Result<Ring> {
    let mut names = Vec::with_capacity(ring.nvars() + count);
    for k in 0..count {
        let stem = if count == 1 { base.to_string() } else { format!("{base}{k}") };
        names.push(ring.fresh_name(&stem));
    }
    names.extend(ring.variable_names().iter().cloned());
    let order = ring.order().with_global_prefix(count, ring.nvars());
    RingSpec::new(names, order)
}

/// `A ∩ B` via `(t*A + (1-t)*B) ∩ R` with `t` eliminated.
pub fn ideal_intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring();
    if a.generators().is_empty() || b.generators().is_empty() {
        return Ok(Ideal::zero(ring));
    }
    let big = prefixed_ring(ring, "@t", 1)?;
    let lift = |p: &Polynomial| p.map_into(&big, |e| e.widened(0, 1));
    let t = Polynomial::var(&big, 0)?;
    let one_minus_t = &Polynomial::one(&big) - &t;
    let gens = a
        .generators()
        .iter()
        .map(|p| &t * &lift(p))
        .chain(b.generators().iter().map(|p| &one_minus_t * &lift(p)));
    let lifted = Ideal::new(&big, gens)?;
    let basis = lifted.std();
    let out = basis
        .elements()
        .iter()
        .filter(|p| p.lm().is_some_and(|m| m.get(0) == 0))
        .map(|p| p.map_into(ring, |e| e.narrowed(0, 1).expect("free of t")));
    Ideal::new(ring, out)
}

/// `I ∩ K[remaining variables]`, returned in the original ring.
pub fn eliminate(i: &Ideal, vars: &[usize]) -> Result<Ideal> {
    let ring = i.ring();
    let n = ring.nvars();
    let mut elim = vec![false; n];
    for &v in vars {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, len: n });
        }
        elim[v] = true;
    }
    let count = elim.iter().filter(|e| **e).count();
    if count == 0 {
        return Ok(i.clone());
    }
    if count == n {
        return Err(Error::InvalidRing("cannot eliminate every variable".into()));
    }
    // New position of each old variable: eliminated ones first.
    let mut perm = vec![0usize; n];
    let mut names = Vec::with_capacity(n);
    let mut pos = 0;
    for (v, _) in elim.iter().enumerate().filter(|(_, e)| **e) {
        perm[v] = pos;
        names.push(ring.variable_names()[v].clone());
        pos += 1;
    }
    for (v, _) in elim.iter().enumerate().filter(|(_, e)| !**e) {
        perm[v] = pos;
        names.push(ring.variable_names()[v].clone());
        pos += 1;
    }
    let keep: Vec<bool> = elim.iter().map(|e| !e).collect();
    let rest = ring.order().restricted(&keep);
    let mut parts = vec![(OrderKind::GlobalDegRevLex, count)];
    parts.extend(rest.parts(n - count));
    let big = RingSpec::new(names, MonomialOrder::blocks(&parts))?;
    let to_big = |e: &ExponentVector| {
        let mut out = ExponentVector::one(n);
        for v in 0..n {
            out.set(perm[v], e.get(v));
        }
        out
    };
    let from_big = |e: &ExponentVector| {
        let mut out = ExponentVector::one(n);
        for v in 0..n {
            out.set(v, e.get(perm[v]));
        }
        out
    };
    let lifted = Ideal::new(&big, i.generators().iter().map(|p| p.map_into(&big, to_big)))?;
    let basis = lifted.std();
    let out = basis
        .elements()
        .iter()
        .filter(|p| p.lm().is_some_and(|m| m.partial_degree(0, count) == 0))
        .map(|p| p.map_into(ring, from_big));
    Ideal::new(ring, out)
}

/// Divide `h` by `f`. Under local orders `h` may only be a unit multiple of a
/// polynomial multiple of `f`; then `h / gcd(h, f)` generates the same element.
fn divide_generator(h: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    if let Some(q) = h.divide_exact(f) {
        return Ok(q);
    }
    let g = gcd(h, f);
    h.divide_exact(&g).ok_or_else(|| Error::Internal("gcd does not divide".into()))
}

/// `I : (f)` computed as `(I ∩ (f)) / f`.
pub fn ideal_colon(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if !same_ring(i.ring(), f.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("colon"));
    }
    let ring = i.ring();
    if f.is_constant() {
        return Ok(i.clone());
    }
    let principal = Ideal::new(ring, [f.clone()])?;
    let inter = ideal_intersect(i, &principal)?;
    let quot = inter.generators().iter().map(|h| divide_generator(h, f)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, quot)
}

/// Saturation `I : f^∞` by the chain `J_1 = I : f`, `J_{k+1} = J_k : f`.
/// Returns the first `J_k` with `J_{k+1} = J_k` together with `k`.
pub fn ideal_saturate(i: &Ideal, f: &Polynomial) -> Result<(Ideal, usize)> {
    if !same_ring(i.ring(), f.ring()) {
        return Err(Error::RingMismatch);
    }
    if let Some(v) = single_variable(f) {
        if let Some(out) = saturate_homogeneous(i, v)? {
            return Ok(out);
        }
    }
    if let Some(out) = saturate_artinian(i, f)? {
        return Ok(out);
    }
    saturate_by_chain(i, f)
}

/// Under a local order a zero-dimensional `I` contains a power of the maximal
/// ideal, so `I : f^∞ = (1)` for every `f` vanishing at the origin. `k` is the
/// least exponent with `f^k ∈ I`, at most `vdim(I)`.
fn saturate_artinian(i: &Ideal, f: &Polynomial) -> Result<Option<(Ideal, usize)>> {
    if !i.ring().order().is_local() || !f.constant_term().is_zero() {
        return Ok(None);
    }
    let Vdim::Finite(v) = vdim(i) else { return Ok(None) };
    let basis = i.std();
    let mut power = f.clone();
    for k in 1..=v.max(1) as usize {
        if basis.contains(&power) {
            return Ok(Some((Ideal::unit(i.ring()), k)));
        }
        power = &power * f;
    }
    Err(Error::Internal(format!("no power of f up to {v} lies in a local ideal of colength {v}")))
}

fn single_variable(f: &Polynomial) -> Option<usize> {
    match f.terms() {
        [t] if t.exp.degree() == 1 => t.exp.support().next(),
        _ => None,
    }
}

/// `I : v^∞` for homogeneous `I` under a plain degree reverse lexicographic
/// order: with `v` moved last, every basis element divided by its largest
/// power of `v` generates the saturation. `None` when not applicable.
fn saturate_homogeneous(i: &Ideal, v: usize) -> Result<Option<(Ideal, usize)>> {
    let ring = i.ring();
    if matches!(ring.order(), MonomialOrder::Block(_)) || !i.generators().iter().all(Polynomial::is_homogeneous) {
        return Ok(None);
    }
    let n = ring.nvars();
    let mut names: Vec<String> = ring.variable_names().to_vec();
    let moved = names.remove(v);
    names.push(moved);
    // Old index of the variable at each new position.
    let old_of: Vec<usize> = (0..n).filter(|&k| k != v).chain([v]).collect();
    let permuted = RingSpec::new(names, ring.order().clone())?;
    let to_new = |e: &ExponentVector| ExponentVector::from_exponents(&old_of.iter().map(|&o| e.get(o)).collect::<Vec<_>>());
    let to_old = |e: &ExponentVector| {
        let mut out = ExponentVector::one(n);
        for (new, &old) in old_of.iter().enumerate() {
            out.set(old, e.get(new));
        }
        out
    };
    let lifted = Ideal::new(&permuted, i.generators().iter().map(|p| p.map_into(&permuted, to_new)))?;
    let basis = lifted.std();
    let mut max_power = 0;
    let quotients: Vec<Polynomial> = basis
        .elements()
        .iter()
        .map(|g| {
            let a = g.terms().iter().map(|t| t.exp.get(n - 1)).min().unwrap_or(0);
            max_power = max_power.max(a);
            g.map_into(&permuted, |e| {
                let mut e = e.clone();
                for _ in 0..a {
                    e.decrement(n - 1);
                }
                e
            })
        })
        .collect();
    // The quotients form a standard basis of the saturation; keep a minimal one.
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in quotients.iter().enumerate() {
        let lm = g.lm().expect("nonzero");
        let redundant = quotients.iter().enumerate().any(|(j, o)| {
            let olm = o.lm().expect("nonzero");
            j != k && olm.divides(lm) && (olm != lm || j < k)
        });
        if !redundant {
            minimal.push(g.map_into(ring, to_old));
        }
    }
    let sat = Ideal::new(ring, minimal)?;
    // Smallest k >= 1 with v^k * sat ⊆ I, matching the chain's stopping index.
    let x = Polynomial::var(ring, v)?;
    let mut k = 1usize;
    while (k as u32) < max_power {
        let xk = x.pow(k as u32);
        let mut inside = true;
        for g in sat.generators() {
            if !i.contains(&(&xk * g))? {
                inside = false;
                break;
            }
        }
        if inside {
            break;
        }
        k += 1;
    }
    Ok(Some((sat, k)))
}

/// The colon chain of [`ideal_saturate`] without the single-variable shortcut.
pub fn saturate_by_chain(i: &Ideal, f: &Polynomial) -> Result<(Ideal, usize)> {
    let mut cur = ideal_colon(i, f)?;
    let mut k = 1usize;
    loop {
        if cur.std().is_unit() {
            return Ok((cur, k));
        }
        let next = ideal_colon(&cur, f)?;
        // The chain ascends, so containment of the next step suffices.
        if next.is_subset_of(&cur)? {
            return Ok((cur, k));
        }
        cur = next;
        k += 1;
    }
}

/// Krull dimension of the quotient; the unit ideal gives -1.
pub fn krull_dim(i: &Ideal) -> i64 {
    let basis = i.std();
    monomial_dim(i.ring().nvars(), basis.leading_ideal())
}

/// Number of standard monomials, `Infinite` in positive dimension.
pub fn vdim(i: &Ideal) -> Vdim {
    let basis = i.std();
    match standard_monomial_count(i.ring().nvars(), basis.leading_ideal()) {
        Some(n) => Vdim::Finite(n),
        None => Vdim::Infinite,
    }
}

pub fn hilbert_series(i: &Ideal) -> Result<HilbertSeries> {
    let basis = i.std();
    monomial_hilbert_series(i.ring().nvars(), basis.leading_ideal()).ok_or(Error::UnitIdeal { op: "hilbert series" })
}

/// Degree of the leading ideal, i.e. the multiplicity under local orders.
pub fn hilbert_multiplicity(i: &Ideal) -> Result<BigInt> {
    Ok(hilbert_series(i)?.degree)
}

/// `f / gcd(f, ∂f/∂x_1, ..., ∂f/∂x_n)`.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree part"));
    }
    if f.is_constant() {
        return Ok(Polynomial::one(f.ring()));
    }
    let mut g = f.clone();
    for v in 0..f.ring().nvars() {
        let d = f.derivative(v)?;
        if d.is_zero() {
            continue;
        }
        g = gcd(&g, &d);
        if g.is_constant() {
            break;
        }
    }
    f.divide_exact(&g).ok_or_else(|| Error::Internal("gcd does not divide".into()))
}
