//! Seeded sampling of generic linear forms and the resampling loop.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Coefficient, Polynomial, Ring};

/// Coefficients are drawn uniformly from `[-BOUND, BOUND]`.
pub const BOUND: i64 = 97;

pub const DEFAULT_RETRIES: usize = 8;

/// A linear form with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearForm {
    pub coefficients: Vec<Coefficient>,
    /// `(seed, attempt)` for sampled forms, `None` for user-supplied ones.
    pub seed_provenance: Option<(u64, u32)>,
}

impl LinearForm {
    /// Read the coefficients of a homogeneous linear polynomial.
    pub fn from_polynomial(p: &Polynomial) -> Result<LinearForm> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial("linear form"));
        }
        let n = p.ring().nvars();
        let mut coefficients = vec![Coefficient::zero(); n];
        for t in p.terms() {
            if t.exp.degree() != 1 {
                return Err(Error::Hypothesis(format!("{p} is not a linear form")));
            }
            let v = t.exp.support().next().expect("degree one");
            coefficients[v] = t.coeff.clone();
        }
        Ok(LinearForm { coefficients, seed_provenance: None })
    }

    pub fn to_polynomial(&self, ring: &Ring) -> Result<Polynomial> {
        if self.coefficients.len() != ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars() as i64,
                found: self.coefficients.len() as i64,
            });
        }
        let mut acc = Polynomial::zero(ring);
        for (i, c) in self.coefficients.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &Polynomial::var(ring, i)?.scale(c);
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Coefficient::is_zero)
    }

    pub fn display(&self, ring: &Ring) -> String {
        self.to_polynomial(ring).map(|p| p.to_string()).unwrap_or_default()
    }
}

fn draw_sets(nvars: usize, seed: u64, upto: u32, count: usize, exclude: &[usize]) -> Vec<Vec<LinearForm>> {
    let mut sets: Vec<Vec<LinearForm>> = Vec::new();
    for attempt in 0..=upto {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let mut set: Vec<LinearForm> = Vec::with_capacity(count);
        while set.len() < count {
            let coefficients: Vec<Coefficient> = (0..nvars)
                .map(|i| {
                    let c = rng.gen_range(-BOUND..=BOUND);
                    if exclude.contains(&i) {
                        Coefficient::zero()
                    } else {
                        Coefficient::from_i64(c)
                    }
                })
                .collect();
            let form = LinearForm { coefficients, seed_provenance: Some((seed, attempt)) };
            let repeat = |f: &LinearForm| f.coefficients == form.coefficients;
            if form.is_zero() || set.iter().any(repeat) || sets.iter().flatten().any(repeat) {
                continue;
            }
            set.push(form);
        }
        sets.push(set);
    }
    sets
}

/// One generic linear form, reproducible from `(seed, attempt)`. Forms of
/// earlier attempts with the same seed are never repeated.
pub fn sample_generic_linear(ring: &Ring, seed: u64, attempt: u32) -> LinearForm {
    sample_generic_forms(ring, seed, attempt, 1, &[]).pop().expect("one form")
}

/// `count` distinct nonzero forms for one attempt; variables in `exclude`
/// get coefficient zero.
pub fn sample_generic_forms(ring: &Ring, seed: u64, attempt: u32, count: usize, exclude: &[usize]) -> Vec<LinearForm> {
    if count == 0 {
        return Vec::new();
    }
    assert!(exclude.len() < ring.nvars(), "cannot exclude every variable");
    draw_sets(ring.nvars(), seed, attempt, count, exclude).pop().expect("attempt drawn")
}

/// How generic choices are made.
#[derive(Clone, Debug)]
pub struct GenericityConfig {
    pub seed: u64,
    /// Total number of attempts.
    pub retries: usize,
    /// Forms to use instead of sampling, in the order `l1, l2, ...`.
    pub fixed_forms: Option<Vec<LinearForm>>,
}

impl Default for GenericityConfig {
    fn default() -> Self {
        GenericityConfig { seed: 0, retries: DEFAULT_RETRIES, fixed_forms: None }
    }
}

impl GenericityConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenericityConfig { seed, ..Default::default() }
    }
}

/// Run `body` on fresh forms until it succeeds or a non-genericity error
/// occurs. Returns the value, the forms used and the failed-attempt diagnostics.
pub(crate) fn with_retries<T>(
    ring: &Ring,
    cfg: &GenericityConfig,
    count: usize,
    exclude: &[usize],
    mut body: impl FnMut(&[LinearForm]) -> Result<T>,
) -> Result<(T, Vec<LinearForm>, Vec<String>)> {
    if let Some(fixed) = &cfg.fixed_forms {
        if fixed.len() < count {
            return Err(Error::Hypothesis(format!("{count} linear forms needed, {} supplied", fixed.len())));
        }
        let forms = fixed[..count].to_vec();
        let v = body(&forms)?;
        return Ok((v, forms, Vec::new()));
    }
    let mut failures = Vec::new();
    let attempts = cfg.retries.max(1);
    for attempt in 0..attempts {
        let forms = sample_generic_forms(ring, cfg.seed, attempt as u32, count, exclude);
        match body(&forms) {
            Ok(v) => return Ok((v, forms, failures)),
            Err(e) if e.is_genericity_failure() => {
                let shown: Vec<String> = forms.iter().map(|f| f.display(ring)).collect();
                failures.push(format!("attempt {attempt} [{}]: {e}", shown.join(", ")));
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted { attempts: failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn reproducible_and_distinct() {
        let r = RingSpec::local(["x", "y", "z"]).unwrap();
        let a = sample_generic_linear(&r, 7, 0);
        assert_eq!(a, sample_generic_linear(&r, 7, 0));
        let b = sample_generic_linear(&r, 7, 1);
        assert_ne!(a.coefficients, b.coefficients);
        assert_eq!(b.seed_provenance, Some((7, 1)));
        assert!(a.coefficients.iter().all(|c| c.as_small().is_some_and(|v| v.abs() <= BOUND)));
    }

    #[test]
    fn exclusion_and_roundtrip() {
        let r = RingSpec::local(["x", "y", "t"]).unwrap();
        let forms = sample_generic_forms(&r, 3, 2, 2, &[2]);
        assert_eq!(forms.len(), 2);
        for f in &forms {
            assert!(f.coefficients[2].is_zero());
            let p = f.to_polynomial(&r).unwrap();
            assert_eq!(LinearForm::from_polynomial(&p).unwrap().coefficients, f.coefficients);
        }
    }

    #[test]
    fn retries_report_failures() {
        let r = RingSpec::local(["x"]).unwrap();
        let cfg = GenericityConfig { seed: 1, retries: 3, fixed_forms: None };
        let out: Result<((), _, _)> =
            with_retries(&r, &cfg, 1, &[], |_| Err(Error::InfiniteDimension("always".into())));
        match out {
            Err(Error::RetriesExhausted { attempts }) => assert_eq!(attempts.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
        let mut calls = 0;
        let (v, _, failed) = with_retries(&r, &cfg, 1, &[], |_| {
            calls += 1;
            if calls < 2 {
                Err(Error::InfiniteDimension("once".into()))
            } else {
                Ok(5)
            }
        })
        .unwrap();
        assert_eq!((v, failed.len()), (5, 1));
    }
}
