use legreuel::ideal::{ideal_intersect, ideal_saturate, saturate_by_chain, vdim, Vdim};
use legreuel::parser::{parse_polynomial, parse_script};
use legreuel::ring::*;
use legreuel::stdbasis::{ideal_equal, Ideal, Selection, StdOptions};
use proptest::prelude::*;

fn ring(local: bool, n: usize) -> Ring {
    let names = ["x", "y", "z", "w"][..n].to_vec();
    if local {
        RingSpec::local(names).unwrap()
    } else {
        RingSpec::global(names).unwrap()
    }
}

/// Sparse polynomial as (coefficient, exponents) pairs.
fn terms(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0..=max_deg, n)), 0..=max_terms)
}

fn poly(r: &Ring, ts: &[(i64, Vec<u32>)]) -> Polynomial {
    Polynomial::from_terms(r, ts.iter().map(|(c, e)| (Coefficient::from_i64(*c), ExponentVector::from_exponents(e))))
}

fn minimal(mut lead: Vec<ExponentVector>) -> Vec<Vec<u32>> {
    lead.sort_by_key(|m| m.exponents().to_vec());
    lead.dedup();
    let keep: Vec<_> = lead.iter().filter(|m| !lead.iter().any(|o| o != *m && o.divides(m))).collect();
    let mut out: Vec<Vec<u32>> = keep.iter().map(|m| m.exponents().to_vec()).collect();
    out.sort();
    out
}

/// Lattice points in the box `[0, bound)^n` divisible by no generator.
fn brute_count(n: usize, gens: &[ExponentVector], bound: u32) -> u64 {
    let mut count = 0;
    let mut e = vec![0u32; n];
    loop {
        let m = ExponentVector::from_exponents(&e);
        if !gens.iter().any(|g| g.divides(&m)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            e[i] += 1;
            if e[i] < bound {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Ideal in two variables made zero-dimensional by pure powers.
fn zero_dim(local: bool) -> impl Strategy<Value = (bool, u32, u32, Vec<Vec<(i64, Vec<u32>)>>)> {
    (Just(local), 1u32..=5, 1u32..=5, prop::collection::vec(terms(2, 4, 3), 0..=2))
}

fn build_zero_dim(local: bool, a: u32, b: u32, extra: &[Vec<(i64, Vec<u32>)>]) -> Ideal {
    let r = ring(local, 2);
    let x = Polynomial::var(&r, 0).unwrap();
    let y = Polynomial::var(&r, 1).unwrap();
    let mut gens = vec![&x.pow(a) + &poly(&r, &extra.first().cloned().unwrap_or_default()).mul_term(&Coefficient::one(), &ExponentVector::from_exponents(&[a, 1])), y.pow(b)];
    gens.extend(extra.iter().skip(1).map(|t| poly(&r, t)));
    Ideal::new(&r, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in terms(3, 3, 4), b in terms(3, 3, 4), c in terms(3, 3, 4), local in any::<bool>()) {
        let r = ring(local, 3);
        let (a, b, c) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&r), a.clone());
    }

    #[test]
    fn leibniz_rule(a in terms(3, 4, 4), b in terms(3, 4, 4), v in 0usize..3) {
        let r = ring(true, 3);
        let (a, b) = (poly(&r, &a), poly(&r, &b));
        let lhs = (&a * &b).derivative(v).unwrap();
        let rhs = &(&a.derivative(v).unwrap() * &b) + &(&a * &b.derivative(v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_parses_back(a in terms(3, 4, 5), local in any::<bool>()) {
        let r = ring(local, 3);
        let p = poly(&r, &a);
        prop_assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
    }

    #[test]
    fn parser_is_total(src in "[a-z0-9 ()=;,*+^\\-\\[\\]#\n]{0,80}") {
        let _ = parse_script(&src);
        let r = ring(true, 3);
        let _ = parse_polynomial(&src, &r);
    }

    #[test]
    fn canonical_script_text_is_stable(a in terms(3, 3, 3), b in terms(3, 3, 3)) {
        let r = ring(true, 3);
        let src = format!("ring (x, y, z) local;\npoly f = {};\nideal I = {}, f;\nvdim(I);\n", poly(&r, &a), poly(&r, &b));
        let once = parse_script(&src).unwrap().to_string();
        let twice = parse_script(&once).unwrap().to_string();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn strategy_invariance((local, a, b, extra) in prop_oneof![zero_dim(true), zero_dim(false)]) {
        let i = build_zero_dim(local, a, b, &extra);
        let n = i.std_with(&StdOptions { selection: Selection::Normal, trace: false });
        let s = i.std_with(&StdOptions { selection: Selection::Sugar, trace: false });
        prop_assert_eq!(minimal(n.leading_ideal().to_vec()), minimal(s.leading_ideal().to_vec()));
    }

    #[test]
    fn std_is_idempotent_and_contains_generators((local, a, b, extra) in prop_oneof![zero_dim(true), zero_dim(false)]) {
        let i = build_zero_dim(local, a, b, &extra);
        let basis = i.std();
        let again = Ideal::new(i.ring(), basis.elements().to_vec()).unwrap();
        prop_assert_eq!(minimal(basis.leading_ideal().to_vec()), minimal(again.std().leading_ideal().to_vec()));
        for g in i.generators() {
            prop_assert!(basis.contains(g));
        }
    }

    #[test]
    fn vdim_matches_staircase((local, a, b, extra) in prop_oneof![zero_dim(true), zero_dim(false)]) {
        let i = build_zero_dim(local, a, b, &extra);
        let lead = i.std().leading_ideal().to_vec();
        // x^a and y^b bound the staircase, so a box of side max(a, b) covers it.
        let brute = brute_count(2, &lead, a.max(b));
        prop_assert_eq!(vdim(&i), Vdim::Finite(brute));
    }

    #[test]
    fn products_are_members((local, a, b, extra) in prop_oneof![zero_dim(true), zero_dim(false)], h in terms(2, 3, 3)) {
        let i = build_zero_dim(local, a, b, &extra);
        let h = poly(i.ring(), &h);
        for g in i.generators() {
            prop_assert!(i.contains(&(g * &h)).unwrap());
        }
    }

    #[test]
    fn monomial_intersection(a in prop::collection::vec(prop::collection::vec(0u32..4, 3), 1..4),
                             b in prop::collection::vec(prop::collection::vec(0u32..4, 3), 1..4)) {
        let r = ring(false, 3);
        let mono = |e: &Vec<u32>| Polynomial::monomial(&r, Coefficient::one(), ExponentVector::from_exponents(e));
        let ia = Ideal::new(&r, a.iter().map(mono)).unwrap();
        let ib = Ideal::new(&r, b.iter().map(mono)).unwrap();
        let ab = ideal_intersect(&ia, &ib).unwrap();
        let ba = ideal_intersect(&ib, &ia).unwrap();
        prop_assert!(ideal_equal(&ab, &ba).unwrap());
        let lcms = Ideal::new(&r, a.iter().flat_map(|p| b.iter().map(move |q| {
            ExponentVector::from_exponents(p).lcm(&ExponentVector::from_exponents(q))
        })).map(|m| Polynomial::monomial(&r, Coefficient::one(), m))).unwrap();
        prop_assert!(ideal_equal(&ab, &lcms).unwrap());
    }

    #[test]
    fn saturation_laws(gens in prop::collection::vec(terms(2, 2, 3), 1..=3), v in 0usize..2, local in any::<bool>()) {
        let r = ring(local, 2);
        let i = Ideal::new(&r, gens.iter().map(|t| poly(&r, t))).unwrap();
        let f = Polynomial::var(&r, v).unwrap();
        let (s, k) = ideal_saturate(&i, &f).unwrap();
        let (s2, _) = ideal_saturate(&s, &f).unwrap();
        prop_assert!(ideal_equal(&s, &s2).unwrap());
        prop_assert!(i.is_subset_of(&s).unwrap());
        let fk = f.pow(k as u32);
        for g in s.generators() {
            prop_assert!(i.contains(&(g * &fk)).unwrap());
        }
        let (c, kc) = saturate_by_chain(&i, &f).unwrap();
        prop_assert!(ideal_equal(&s, &c).unwrap());
        prop_assert_eq!(k, kc);
    }

    #[test]
    fn homogeneous_saturation_agrees(gens in prop::collection::vec(prop::collection::vec((-4i64..=4, prop::collection::vec(0u32..3, 3)), 1..4), 1..=3),
                                     degree in 1u32..=3, v in 0usize..3) {
        let r = ring(false, 3);
        // Keep only the terms of one degree so every generator is homogeneous.
        let polys: Vec<_> = gens.iter().map(|ts| {
            let homog: Vec<_> = ts.iter().filter(|(_, e)| e.iter().sum::<u32>() == degree).cloned().collect();
            poly(&r, &homog)
        }).collect();
        let i = Ideal::new(&r, polys).unwrap();
        let f = Polynomial::var(&r, v).unwrap();
        let (fast, k) = ideal_saturate(&i, &f).unwrap();
        let (slow, kc) = saturate_by_chain(&i, &f).unwrap();
        prop_assert!(ideal_equal(&fast, &slow).unwrap());
        prop_assert_eq!(k, kc);
    }
}

#[test]
fn local_global_contrast() {
    for (local, want) in [(true, 2), (false, 3)] {
        let r = ring(local, 1);
        let i = Ideal::new(&r, [parse_polynomial("x^2 - x^3", &r).unwrap()]).unwrap();
        assert_eq!(vdim(&i), Vdim::Finite(want));
    }
}

#[test]
fn units_normalize_to_zero_locally() {
    let r = ring(true, 1);
    let p = |s: &str| parse_polynomial(s, &r).unwrap();
    let nf = legreuel::stdbasis::mora_normal_form(&p("x"), &[p("x - x^2")]).unwrap();
    assert!(nf.is_zero());
    let g = ring(false, 1);
    let nf = legreuel::stdbasis::mora_normal_form(&parse_polynomial("x", &g).unwrap(), &[parse_polynomial("x - x^2", &g).unwrap()]).unwrap();
    assert!(!nf.is_zero());
}
