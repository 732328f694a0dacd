//! Invariants read off a one-parameter smoothing `π: (𝒳, 0) → (C, 0)`.

use serde::Serialize;

use super::generic::{with_retries, GenericityConfig};
use super::{check_same_ring, check_vanishes_at_origin, relative_term, sign, ComputationReport, SliceTerm, TermKind, VarietyPresentation};
use crate::error::{Error, Result};
use crate::ideal::{hilbert_multiplicity, ideal_add, krull_dim, vdim, Vdim};
use crate::ring::{MonomialOrder, PolyMatrix, Polynomial, RingSpec};
use crate::stdbasis::Ideal;

/// Index of `π` when it is a multiple of a single variable.
fn single_variable(pi: &Polynomial) -> Option<usize> {
    match pi.terms() {
        [t] if t.exp.degree() == 1 => t.exp.support().next(),
        _ => None,
    }
}

/// Vanishing Euler characteristic of the central fiber `X = 𝒳 ∩ {π = 0}`:
/// `(-1)^d (Σ_{i=2}^{d+1} (-1)^{i+1} T_i + m_0 - 1)` where
/// `T_i = dim O_{𝒳_i} / ((π) + J_{𝒳_i}(π, l_{i-1}) : π^∞)` and
/// `𝒳_i = 𝒳 ∩ {l_d = ... = l_i = 0}`.
///
/// `accept` sees each candidate value and may reject it, which counts as a
/// failed generic choice.
pub fn nu_invariant(
    total: &VarietyPresentation,
    pi: &Polynomial,
    cfg: &GenericityConfig,
    accept: impl Fn(i64) -> Result<()>,
) -> Result<ComputationReport> {
    check_same_ring(total, &[pi])?;
    check_vanishes_at_origin(pi, "π")?;
    if total.pure_dim() < 2 {
        return Err(Error::Hypothesis("the total space of a smoothing has dimension at least 2".into()));
    }
    let d = total.pure_dim() - 1;
    let ring = total.ring().clone();
    let central = ideal_add(total.ideal(), std::slice::from_ref(pi))?;
    if krull_dim(&central) != d as i64 {
        return Err(Error::Hypothesis(format!("π = {pi} does not cut 𝒳 in dimension {d}")));
    }
    let m0 = hilbert_multiplicity(&central)?;
    let m0 = u64::try_from(m0).map_err(|_| Error::Internal("multiplicity out of range".into()))?;
    let overall = sign(d);
    let exclude: Vec<usize> = single_variable(pi).into_iter().collect();
    let (terms, forms, failed) = with_retries(&ring, cfg, d, &exclude, |forms| {
        let ls = forms.iter().map(|l| l.to_polynomial(&ring)).collect::<Result<Vec<_>>>()?;
        let mut terms = Vec::with_capacity(d + 2);
        for i in (2..=d + 1).rev() {
            let xi = total.cut(&ls[i - 1..])?;
            let mut t = relative_term(&xi, pi, &ls[i - 2])?;
            t.form = Some(forms[i - 2].clone());
            t.sign = overall * sign(i + 1);
            terms.push(t);
        }
        terms.push(SliceTerm::plain(d, TermKind::Multiplicity, m0, overall));
        terms.push(SliceTerm::plain(d, TermKind::Constant, 1, -overall));
        let value: i64 = terms.iter().map(|t| t.sign * t.vdim as i64).sum();
        accept(value)?;
        Ok(terms)
    })?;
    Ok(ComputationReport::new("nu", terms, cfg.seed).with_attempts(&ring, &forms, failed))
}

/// `dim O_𝒳 / ((π) + J_𝒳(π, f̄) : π^∞)`, the Milnor number of `f̄|_X`.
fn milnor_of_function(total: &VarietyPresentation, pi: &Polynomial, fbar: &Polynomial) -> Result<SliceTerm> {
    let mut t = relative_term(total, pi, fbar)?;
    t.form = None;
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub mu_f: u64,
    pub mu_x: i64,
    pub deg_f: u64,
    pub mu_f_term: SliceTerm,
    pub report: ComputationReport,
}

/// Milnor numbers of a function `f` on a smoothable curve and of the curve
/// itself, with the identity `μ(f) = μ(X) + deg(f) - 1` enforced.
pub fn curve_invariants(
    smoothing: &VarietyPresentation,
    pi: &Polynomial,
    fbar: &Polynomial,
    cfg: &GenericityConfig,
) -> Result<CurveInvariants> {
    check_same_ring(smoothing, &[pi, fbar])?;
    if smoothing.pure_dim() != 2 {
        return Err(Error::Hypothesis(format!("a curve smoothing has dimension 2, not {}", smoothing.pure_dim())));
    }
    check_vanishes_at_origin(fbar, "f")?;
    let mu_f_term = milnor_of_function(smoothing, pi, fbar)?;
    let mu_f = mu_f_term.vdim;
    let deg_f = match vdim(&ideal_add(smoothing.ideal(), &[pi.clone(), fbar.clone()])?) {
        Vdim::Finite(v) => v,
        Vdim::Infinite => return Err(Error::InfiniteDimension(format!("{fbar} vanishes on a branch of X"))),
    };
    let mut report = nu_invariant(smoothing, pi, cfg, |mu_x| {
        if mu_f as i64 == mu_x + deg_f as i64 - 1 {
            Ok(())
        } else {
            Err(Error::ConsistencyViolation(format!("mu(f) = {mu_f} but mu(X) + deg(f) - 1 = {}", mu_x + deg_f as i64 - 1)))
        }
    })?;
    report.formula = "curve_mu";
    Ok(CurveInvariants { mu_f, mu_x: report.value, deg_f, mu_f_term, report })
}

/// Milnor number of a smoothable Gorenstein surface from a 3-dimensional
/// total space.
pub fn gorenstein_mu(smoothing: &VarietyPresentation, pi: &Polynomial, cfg: &GenericityConfig) -> Result<ComputationReport> {
    if smoothing.pure_dim() != 3 {
        return Err(Error::Hypothesis(format!("a surface smoothing has dimension 3, not {}", smoothing.pure_dim())));
    }
    let mut report = nu_invariant(smoothing, pi, cfg, |_| Ok(()))?;
    report.formula = "gorenstein_mu";
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdsInvariants {
    pub nu_x: i64,
    pub mu_f: Option<u64>,
    pub nu_slice: Option<i64>,
    /// The name given to the deformation parameter.
    pub parameter: String,
    pub report: ComputationReport,
}

/// Determinantal singularity `X = F^{-1}(rank < s)` smoothed by `F + tA`.
pub fn ids_invariants(
    f: &PolyMatrix,
    a: &PolyMatrix,
    s: usize,
    fbar: Option<&Polynomial>,
    cfg: &GenericityConfig,
) -> Result<IdsInvariants> {
    let ring = f.ring();
    if !ring.order().is_local() {
        return Err(Error::InvalidRing("the ambient ring must carry a local order".into()));
    }
    if (a.rows(), a.cols()) != (f.rows(), f.cols()) {
        return Err(Error::InvalidMatrix(format!(
            "deformation matrix is {}x{}, expected {}x{}",
            a.rows(),
            a.cols(),
            f.rows(),
            f.cols()
        )));
    }
    if a.entries().iter().any(|e| !e.is_constant()) {
        return Err(Error::Hypothesis("the deformation matrix must be constant".into()));
    }
    if s == 0 || s > f.rows().min(f.cols()) {
        return Err(Error::MinorSize { k: s, rows: f.rows(), cols: f.cols() });
    }
    if a.is_zero() {
        return Err(Error::CodimMismatch("the deformation matrix is zero, so F + tA is not a smoothing".into()));
    }
    let n = ring.nvars();
    let codim = (f.rows() - s + 1) * (f.cols() - s + 1);
    if codim > n {
        return Err(Error::CodimMismatch(format!("expected codimension {codim} exceeds {n} variables")));
    }
    let x = Ideal::new(ring, f.minors(s)?)?;
    let found = krull_dim(&x);
    if found != (n - codim) as i64 {
        return Err(Error::CodimMismatch(format!("X has codimension {} instead of {codim}", n as i64 - found)));
    }
    let d = n - codim;

    let parameter = ring.fresh_name("t");
    let mut names = ring.variable_names().to_vec();
    names.push(parameter.clone());
    let ext = RingSpec::new(names, MonomialOrder::LocalNegDegRevLex)?;
    let lift = |p: &Polynomial| p.map_into(&ext, |e| e.widened(n, 1));
    let t = Polynomial::var(&ext, n)?;
    let fe = f.map_entries(&ext, lift)?;
    let ae = a.map_entries(&ext, lift)?;
    let deformed = fe.add_scaled(&t, &ae)?;
    let total_ideal = Ideal::new(&ext, deformed.minors(s)?)?;
    let found = krull_dim(&total_ideal);
    if found != d as i64 + 1 {
        return Err(Error::CodimMismatch(format!("the total space has dimension {found} instead of {}", d + 1)));
    }
    let total = VarietyPresentation::new(total_ideal, d + 1, true)?;
    let mut report = nu_invariant(&total, &t, cfg, |_| Ok(()))?;
    report.formula = "ids_nu";
    let nu_x = report.value;
    let (mu_f, nu_slice) = match fbar {
        Some(g) => {
            if !crate::ring::same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            let mu = milnor_of_function(&total, &t, &lift(g))?.vdim;
            (Some(mu), Some(mu as i64 - nu_x))
        }
        None => (None, None),
    };
    Ok(IdsInvariants { nu_x, mu_f, nu_slice, parameter, report })
}
