//! Lê–Greuel type invariants: relative Jacobian ideals, Euler-characteristic
//! differences, slicing formulas and their applications to curves, ICIS,
//! determinantal and Gorenstein singularities.

mod generic;
mod pfaffian;
mod smoothing;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{ideal_add, ideal_saturate, krull_dim, vdim, Vdim};
use crate::ring::{jacobian, same_ring, Polynomial, Ring};
use crate::stdbasis::Ideal;

pub use generic::{sample_generic_forms, sample_generic_linear, GenericityConfig, LinearForm, BOUND, DEFAULT_RETRIES};
pub use pfaffian::{pfaffian, pfaffians};
pub use smoothing::{curve_invariants, gorenstein_mu, ids_invariants, nu_invariant, CurveInvariants, IdsInvariants};

/// A germ `(X, 0)` given by its ideal in a local ring, with caller-asserted
/// metadata.
#[derive(Clone, Debug)]
pub struct VarietyPresentation {
    ideal: Ideal,
    pure_dim: usize,
    isolated_asserted: bool,
}

impl VarietyPresentation {
    /// Fails unless the ring order is local and `krull_dim(ideal) == pure_dim`.
    pub fn new(ideal: Ideal, pure_dim: usize, isolated_asserted: bool) -> Result<Self> {
        if !ideal.ring().order().is_local() {
            return Err(Error::InvalidRing("the ambient ring must carry a local order".into()));
        }
        let found = krull_dim(&ideal);
        if found != pure_dim as i64 {
            return Err(Error::DimensionMismatch { expected: pure_dim as i64, found });
        }
        Ok(VarietyPresentation { ideal, pure_dim, isolated_asserted })
    }

    /// The smooth germ `(C^N, 0)`.
    pub fn smooth(ring: &Ring) -> Result<Self> {
        Self::new(Ideal::zero(ring), ring.nvars(), true)
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn pure_dim(&self) -> usize {
        self.pure_dim
    }

    pub fn isolated_asserted(&self) -> bool {
        self.isolated_asserted
    }

    /// `X ∩ {h_1 = ... = h_k = 0}`, required to drop dimension by `k`.
    pub fn cut(&self, hs: &[Polynomial]) -> Result<Self> {
        if hs.len() > self.pure_dim {
            return Err(Error::DimensionMismatch { expected: 0, found: self.pure_dim as i64 - hs.len() as i64 });
        }
        Self::new(ideal_add(&self.ideal, hs)?, self.pure_dim - hs.len(), self.isolated_asserted)
    }

    fn require_isolated(&self) -> Result<()> {
        if self.isolated_asserted {
            Ok(())
        } else {
            Err(Error::Hypothesis("X is not asserted to have an isolated singularity".into()))
        }
    }
}

/// What a report entry measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    /// `dim O_X / ((f) + J_X(f, g) : f^∞)`.
    Jacobian,
    /// Local degree `dim O_{X_1} / (f)`.
    Base,
    /// Multiplicity of the central fiber.
    Multiplicity,
    Constant,
}

/// One signed summand of a formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceTerm {
    /// Dimension of the slice the term lives on.
    pub index: usize,
    pub kind: TermKind,
    pub form: Option<LinearForm>,
    pub saturation_exponent: Option<usize>,
    pub polar_dim: Option<i64>,
    pub vdim: u64,
    pub sign: i64,
}

impl SliceTerm {
    fn plain(index: usize, kind: TermKind, vdim: u64, sign: i64) -> Self {
        SliceTerm { index, kind, form: None, saturation_exponent: None, polar_dim: None, vdim, sign }
    }
}

/// An invariant together with everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComputationReport {
    pub formula: &'static str,
    pub value: i64,
    pub per_slice: Vec<SliceTerm>,
    pub resamples: usize,
    pub seed: u64,
    /// The linear forms `l1, l2, ...` in display form.
    pub forms: Vec<String>,
    pub failed_attempts: Vec<String>,
}

impl ComputationReport {
    fn new(formula: &'static str, per_slice: Vec<SliceTerm>, seed: u64) -> Self {
        let value = per_slice.iter().map(|t| t.sign * t.vdim as i64).sum();
        ComputationReport { formula, value, per_slice, resamples: 0, seed, forms: Vec::new(), failed_attempts: Vec::new() }
    }

    fn with_attempts(mut self, ring: &Ring, forms: &[LinearForm], failed: Vec<String>) -> Self {
        self.resamples = failed.len();
        self.failed_attempts = failed;
        self.forms = forms.iter().map(|f| f.display(ring)).collect();
        self
    }
}

/// Replacement for the last slice `X_1` in [`chi_fiber`].
#[derive(Clone)]
pub enum SliceOverride {
    Fixed(Ideal),
    /// Built from the forms `l1, ..., ln` of the current attempt.
    Deferred(Arc<dyn Fn(&[Polynomial]) -> Result<Ideal> + Send + Sync>),
}

impl fmt::Debug for SliceOverride {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceOverride::Fixed(i) => write!(f, "Fixed({i})"),
            SliceOverride::Deferred(_) => write!(f, "Deferred"),
        }
    }
}

impl SliceOverride {
    fn resolve(&self, forms: &[Polynomial]) -> Result<Ideal> {
        match self {
            SliceOverride::Fixed(i) => Ok(i.clone()),
            SliceOverride::Deferred(build) => build(forms),
        }
    }
}

fn check_same_ring(x: &VarietyPresentation, ps: &[&Polynomial]) -> Result<()> {
    if ps.iter().all(|p| same_ring(p.ring(), x.ring())) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn check_vanishes_at_origin(f: &Polynomial, what: &str) -> Result<()> {
    if f.constant_term().is_zero() {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{what} = {f} does not vanish at the origin")))
    }
}

/// `I_X + (minors of size N - d + r of jacobian(gens(I_X) ++ fs))`.
pub fn jacobian_ideal(x: &VarietyPresentation, fs: &[Polynomial]) -> Result<Ideal> {
    if fs.is_empty() {
        return Err(Error::EmptyInput("jacobian_ideal"));
    }
    check_same_ring(x, &fs.iter().collect::<Vec<_>>())?;
    let n = x.ring().nvars();
    let size = n - x.pure_dim + fs.len();
    let rows: Vec<Polynomial> = x.ideal.generators().iter().chain(fs).cloned().collect();
    let jac = jacobian(&rows)?;
    if size > jac.rows().min(jac.cols()) {
        return Err(Error::MinorSize { k: size, rows: jac.rows(), cols: jac.cols() });
    }
    ideal_add(&x.ideal, &jac.minors(size)?)
}

/// `J_X(f, g) : f^∞` and the exponent at which the chain stabilised.
pub fn saturated_jacobian(x: &VarietyPresentation, f: &Polynomial, g: &Polynomial) -> Result<(Ideal, usize)> {
    let j = jacobian_ideal(x, &[f.clone(), g.clone()])?;
    ideal_saturate(&j, f)
}

/// The term `dim O_X / ((f) + J_X(f, g) : f^∞)` with post-hoc checks.
pub(crate) fn relative_term(x: &VarietyPresentation, f: &Polynomial, g: &Polynomial) -> Result<SliceTerm> {
    if x.ideal.contains(f)? {
        return Err(Error::Hypothesis(format!("{f} vanishes identically on X")));
    }
    let (sat, k) = saturated_jacobian(x, f, g)?;
    let polar = krull_dim(&sat);
    if polar > 1 {
        return Err(Error::PolarDimensionTooHigh { dim: polar, context: format!("J_X({f}, {g}) : ({f})^∞") });
    }
    let s = ideal_add(&sat, std::slice::from_ref(f))?;
    let v = match vdim(&s) {
        Vdim::Finite(v) => v,
        Vdim::Infinite => {
            return Err(Error::InfiniteDimension(format!("({f}) + J_X({f}, {g}) : ({f})^∞ has positive dimension")))
        }
    };
    Ok(SliceTerm {
        index: x.pure_dim,
        kind: TermKind::Jacobian,
        form: LinearForm::from_polynomial(g).ok(),
        saturation_exponent: Some(k),
        polar_dim: Some(polar),
        vdim: v,
        sign: 1,
    })
}

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `χ(F_f) - χ(F_{g,f}) = (-1)^n dim O_X / ((f) + J_X(f, g) : f^∞)` for `X`
/// of pure dimension `n + 1`.
pub fn euler_diff(x: &VarietyPresentation, f: &Polynomial, g: &Polynomial) -> Result<ComputationReport> {
    check_same_ring(x, &[f, g])?;
    x.require_isolated()?;
    if x.pure_dim == 0 {
        return Err(Error::Hypothesis("X must have positive dimension".into()));
    }
    check_vanishes_at_origin(f, "f")?;
    let mut term = relative_term(x, f, g)?;
    term.sign = sign(x.pure_dim - 1);
    let mut report = ComputationReport::new("euler_diff", vec![term], 0);
    report.forms = vec![g.to_string()];
    Ok(report)
}

/// `χ(F_f)` as the alternating sum over generic slices plus the local degree
/// of `f` on the last slice `X_1`.
pub fn chi_fiber(
    x: &VarietyPresentation,
    f: &Polynomial,
    cfg: &GenericityConfig,
    slice: Option<&SliceOverride>,
) -> Result<ComputationReport> {
    check_same_ring(x, &[f])?;
    x.require_isolated()?;
    if x.pure_dim == 0 {
        return Err(Error::Hypothesis("X must have positive dimension".into()));
    }
    check_vanishes_at_origin(f, "f")?;
    let d = x.pure_dim;
    let ring = x.ring().clone();
    let (terms, forms, failed) = generic::with_retries(&ring, cfg, d - 1, &[], |forms| {
        let ls = forms.iter().map(|l| l.to_polynomial(&ring)).collect::<Result<Vec<_>>>()?;
        let mut terms = Vec::with_capacity(d);
        for i in (2..=d).rev() {
            let xi = x.cut(&ls[i - 1..])?;
            let mut t = relative_term(&xi, f, &ls[i - 2])?;
            t.form = Some(forms[i - 2].clone());
            t.sign = sign(i - 1);
            terms.push(t);
        }
        let x1 = match slice {
            Some(o) => {
                let ideal = o.resolve(&ls)?;
                if !same_ring(ideal.ring(), &ring) {
                    return Err(Error::RingMismatch);
                }
                VarietyPresentation::new(ideal, 1, true)?
            }
            None => x.cut(&ls)?,
        };
        let base = match vdim(&ideal_add(x1.ideal(), std::slice::from_ref(f))?) {
            Vdim::Finite(v) => v,
            Vdim::Infinite => return Err(Error::InfiniteDimension(format!("{f} vanishes on a component of X_1"))),
        };
        terms.push(SliceTerm::plain(1, TermKind::Base, base, 1));
        Ok(terms)
    })?;
    Ok(ComputationReport::new("chi_fiber", terms, cfg.seed).with_attempts(&ring, &forms, failed))
}

/// `μ(X) + μ(X') = dim O / ((f_1, ..., f_{k-1}) + k-minors of jacobian(f))`,
/// where `X' = V(f_1..f_{k-1})` and `X = V(f_1..f_k)`.
pub fn icis_legreuel(fs: &[Polynomial]) -> Result<u64> {
    let first = fs.first().ok_or(Error::EmptyInput("icis_legreuel"))?;
    let ring = first.ring();
    if fs.iter().any(|f| !same_ring(f.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    let k = fs.len();
    let jac = jacobian(fs)?;
    if k > jac.cols() {
        return Err(Error::MinorSize { k, rows: jac.rows(), cols: jac.cols() });
    }
    let mut gens: Vec<Polynomial> = fs[..k - 1].to_vec();
    gens.extend(jac.minors(k)?);
    match vdim(&Ideal::new(ring, gens)?) {
        Vdim::Finite(v) => Ok(v),
        Vdim::Infinite => Err(Error::InfiniteDimension("the complete intersection is not isolated".into())),
    }
}

/// `μ(X) + μ(X')` recovered from [`euler_diff`] on `X'' = V(f_1..f_{k-2})`
/// with `f = f_{k-1}` and `g = f_k`. Needs `k >= 2`.
pub fn icis_via_euler_diff(fs: &[Polynomial]) -> Result<(i64, ComputationReport)> {
    if fs.len() < 2 {
        return Err(Error::Hypothesis("at least two equations are needed".into()));
    }
    let ring = fs[0].ring();
    let k = fs.len();
    let base = Ideal::new(ring, fs[..k - 2].iter().cloned())?;
    let dim = ring.nvars() - (k - 2);
    let x = VarietyPresentation::new(base, dim, true)?;
    let report = euler_diff(&x, &fs[k - 2], &fs[k - 1])?;
    Ok((sign(dim - 1) * report.value, report))
}

/// Best-effort finiteness check of the singular locus:
/// `vdim(I_X + (N - d)-minors of jacobian(gens(I_X))) < ∞`.
pub fn isolated_singularity_check(x: &VarietyPresentation) -> Result<Vdim> {
    let n = x.ring().nvars();
    let size = n - x.pure_dim;
    if size == 0 {
        return Ok(Vdim::Finite(0));
    }
    let jac = jacobian(x.ideal.generators())?;
    if size > jac.rows().min(jac.cols()) {
        return Err(Error::MinorSize { k: size, rows: jac.rows(), cols: jac.cols() });
    }
    Ok(vdim(&ideal_add(&x.ideal, &jac.minors(size)?)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stdbasis::ideal_equal;
    use crate::parser::parse_polynomial;
    use crate::ring::RingSpec;

    fn polys(r: &Ring, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    #[test]
    fn xyz_example() {
        let r = RingSpec::local(["x", "y", "z"]).unwrap();
        let p = polys(&r, &["x*y*z", "x+y+z", "y-z", "y-x"]);
        let x = VarietyPresentation::smooth(&r).unwrap();
        let j = jacobian_ideal(&x, &p[..2]).unwrap();
        let expected = Ideal::new(&r, polys(&r, &["y*z-x*z", "y*z-x*y", "x*z-x*y"])).unwrap();
        assert!(ideal_equal(&j, &expected).unwrap());
        let (sat, _) = saturated_jacobian(&x, &p[0], &p[1]).unwrap();
        assert!(ideal_equal(&sat, &Ideal::new(&r, p[2..].to_vec()).unwrap()).unwrap());
        assert_eq!(euler_diff(&x, &p[0], &p[1]).unwrap().value, 3);
    }

    #[test]
    fn euler_diff_in_the_plane() {
        let r = RingSpec::local(["x", "y"]).unwrap();
        let x = VarietyPresentation::smooth(&r).unwrap();
        let p = polys(&r, &["x^2+y^2", "x", "y"]);
        assert_eq!(euler_diff(&x, &p[0], &p[1]).unwrap().value, -2);
        assert_eq!(euler_diff(&x, &p[1], &p[2]).unwrap().value, 0);
        let j = jacobian_ideal(&x, &p[1..]).unwrap();
        assert!(j.std().is_unit());
    }

    #[test]
    fn chi_of_plane_curves() {
        let r = RingSpec::local(["x", "y"]).unwrap();
        let x = VarietyPresentation::smooth(&r).unwrap();
        let cfg = GenericityConfig::with_seed(11);
        let p = polys(&r, &["x", "x^3-y^2"]);
        assert_eq!(chi_fiber(&x, &p[0], &cfg, None).unwrap().value, 1);
        let rep = chi_fiber(&x, &p[1], &cfg, None).unwrap();
        assert_eq!(rep.value, -1);
        assert_eq!(rep.per_slice.iter().map(|t| t.sign * t.vdim as i64).collect::<Vec<_>>(), vec![-3, 2]);
    }

    #[test]
    fn chi_on_a_curve_is_the_degree() {
        let r = RingSpec::local(["x", "y"]).unwrap();
        let x = VarietyPresentation::new(Ideal::new(&r, polys(&r, &["y^2-x^3"])).unwrap(), 1, true).unwrap();
        let rep = chi_fiber(&x, &polys(&r, &["x"])[0], &GenericityConfig::default(), None).unwrap();
        assert_eq!(rep.value, 2);
        assert!(rep.forms.is_empty());
    }

    #[test]
    fn icis_examples() {
        let r = RingSpec::local(["x", "y", "z"]).unwrap();
        assert_eq!(icis_legreuel(&polys(&r, &["x"])).unwrap(), 0);
        assert_eq!(icis_legreuel(&polys(&r, &["x^2+y^3"])).unwrap_err().kind(), "infinite_dimension");
        let r2 = RingSpec::local(["x", "y"]).unwrap();
        assert_eq!(icis_legreuel(&polys(&r2, &["x^2+y^3"])).unwrap(), 2);
        let fs = polys(&r, &["x^2+y^2+z^2", "z"]);
        assert_eq!(icis_legreuel(&fs).unwrap(), 2);
        assert_eq!(icis_via_euler_diff(&fs).unwrap().0, 2);
    }

    #[test]
    fn scaling_g_is_harmless() {
        let r = RingSpec::local(["x", "y"]).unwrap();
        let x = VarietyPresentation::smooth(&r).unwrap();
        let p = polys(&r, &["x^3-y^2", "2*x+3*y", "-14*x-21*y"]);
        assert_eq!(euler_diff(&x, &p[0], &p[1]).unwrap().value, euler_diff(&x, &p[0], &p[2]).unwrap().value);
    }

    #[test]
    fn presentation_checks() {
        let g = RingSpec::global(["x", "y"]).unwrap();
        assert!(VarietyPresentation::smooth(&g).is_err());
        let r = RingSpec::local(["x", "y"]).unwrap();
        let i = Ideal::new(&r, polys(&r, &["x"])).unwrap();
        assert_eq!(VarietyPresentation::new(i.clone(), 2, true).unwrap_err().kind(), "dimension_mismatch");
        let x = VarietyPresentation::new(i, 1, false).unwrap();
        let p = polys(&r, &["y", "x+y"]);
        assert_eq!(euler_diff(&x, &p[0], &p[1]).unwrap_err().kind(), "hypothesis");
        let plane = VarietyPresentation::smooth(&r).unwrap();
        assert_eq!(euler_diff(&plane, &(&p[0] + &Polynomial::one(&r)), &p[1]).unwrap_err().kind(), "hypothesis");
    }

    #[test]
    fn singular_locus_check() {
        let r = RingSpec::local(["x", "y", "z"]).unwrap();
        let cone = VarietyPresentation::new(Ideal::new(&r, polys(&r, &["x^2+y^2+z^2"])).unwrap(), 2, true).unwrap();
        assert_eq!(isolated_singularity_check(&cone).unwrap(), Vdim::Finite(1));
        let line = VarietyPresentation::new(Ideal::new(&r, polys(&r, &["x^2"])).unwrap(), 2, true).unwrap();
        assert_eq!(isolated_singularity_check(&line).unwrap(), Vdim::Infinite);
    }
}
