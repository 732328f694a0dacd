//! Buchberger loop over Mora normal forms with Gebauer–Möller pair management.

use super::normal_form::{mora_nf, reduce_step, Reducer};
use super::{BasisStats, Selection, StdOptions};
use crate::ring::{ExponentVector, Polynomial, Ring};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ExponentVector,
    sugar: u32,
}

struct Elem {
    red: Reducer,
    sugar: u32,
    /// False once a later element's leading monomial divides this one's.
    active: bool,
}

pub(crate) struct Computed {
    /// Minimal standard basis with primitive integer coefficients.
    pub basis: Vec<Polynomial>,
    pub stats: BasisStats,
}

fn spoly(a: &Elem, b: &Elem, lcm: &ExponentVector) -> Polynomial {
    // a' = (lcm / lm a) * a, then reduce it by b.
    let ma = a.red.lm.quotient_of(lcm).expect("lcm divisible");
    let shifted = a.red.poly.mul_term(&crate::ring::Coefficient::one(), &ma);
    reduce_step(&shifted, &b.red.poly, &b.red.lm).0
}

fn pair_key(p: &Pair, sel: Selection) -> (u32, u32, usize, usize) {
    match sel {
        Selection::Normal => (p.lcm.degree(), p.sugar, p.j, p.i),
        Selection::Sugar => (p.sugar, p.lcm.degree(), p.j, p.i),
    }
}

pub(crate) fn compute(ring: &Ring, gens: &[Polynomial], opts: &StdOptions) -> Computed {
    let order = ring.order().clone();
    let global = order.is_global();
    let mut stats = BasisStats::default();

    let mut input: Vec<Polynomial> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let p = g.primitive();
        if !input.contains(&p) {
            input.push(p);
        }
    }
    // Units (leading monomial 1) generate everything.
    if input.iter().any(|p| p.lm().is_some_and(ExponentVector::is_one)) {
        return Computed { basis: vec![Polynomial::one(ring)], stats };
    }
    // Low-degree leading monomials first: under a local order these are the
    // largest ones and make the strongest reducers.
    input.sort_by(|a, b| {
        let (ma, mb) = (a.lm().unwrap(), b.lm().unwrap());
        ma.degree().cmp(&mb.degree()).then_with(|| order.cmp(ma, mb))
    });

    let mut elems: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut queue: Vec<(Polynomial, u32)> = input.into_iter().map(|p| {
        let s = p.total_degree().unwrap_or(0);
        (p, s)
    }).collect();
    queue.reverse();

    let mut reducers_cache: Vec<Reducer> = Vec::new();

    loop {
        let (candidate, sugar) = if let Some(q) = queue.pop() {
            q
        } else if !pairs.is_empty() {
            let idx = (0..pairs.len())
                .min_by(|&a, &b| {
                    let ka = pair_key(&pairs[a], opts.selection);
                    let kb = pair_key(&pairs[b], opts.selection);
                    ka.cmp(&kb).then_with(|| order.cmp(&pairs[b].lcm, &pairs[a].lcm))
                })
                .unwrap();
            let p = pairs.swap_remove(idx);
            stats.pairs_reduced += 1;
            (spoly(&elems[p.i], &elems[p.j], &p.lcm), p.sugar)
        } else {
            break;
        };
        if candidate.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let nf = mora_nf(&candidate, &reducers_cache, global);
        stats.reduction_steps += nf.steps;
        let h = nf.remainder;
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let h = h.primitive();
        if h.lm().unwrap().is_one() {
            return Computed { basis: vec![Polynomial::one(ring)], stats };
        }
        let sugar = sugar.max(h.total_degree().unwrap_or(0));
        let new = Elem { red: Reducer::new(h), sugar, active: true };
        let k = elems.len();

        // Gebauer–Möller update.
        let mut cands: Vec<Pair> = elems
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(i, e)| {
                let lcm = e.red.lm.lcm(&new.red.lm);
                let si = e.sugar + (lcm.degree() - e.red.lm.degree());
                let sk = new.sugar + (lcm.degree() - new.red.lm.degree());
                Pair { i, j: k, lcm, sugar: si.max(sk) }
            })
            .collect();
        let coprime = |p: &Pair, elems: &Vec<Elem>| elems[p.i].red.lm.is_coprime(&new.red.lm);

        // Old pairs whose lcm is strictly covered by the new leading monomial.
        let before = pairs.len();
        pairs.retain(|p| {
            !(new.red.lm.divides(&p.lcm)
                && elems[p.i].red.lm.lcm(&new.red.lm) != p.lcm
                && elems[p.j].red.lm.lcm(&new.red.lm) != p.lcm)
        });
        stats.chain_criterion += before - pairs.len();

        // Among the new pairs keep one per minimal lcm.
        cands.sort_by(|a, b| a.lcm.degree().cmp(&b.lcm.degree()).then(a.i.cmp(&b.i)));
        let mut kept: Vec<Pair> = Vec::new();
        for c in cands {
            let dominated = kept.iter().any(|d| d.lcm.divides(&c.lcm));
            if dominated {
                stats.chain_criterion += 1;
                continue;
            }
            kept.push(c);
        }
        for p in kept {
            if global && coprime(&p, &elems) {
                stats.product_criterion += 1;
                continue;
            }
            pairs.push(p);
        }
        for e in elems.iter_mut() {
            if e.active && new.red.lm.divides(&e.red.lm) {
                e.active = false;
            }
        }
        reducers_cache.push(new.red.clone());
        elems.push(new);
        stats.max_basis_size = stats.max_basis_size.max(elems.iter().filter(|e| e.active).count());
        if opts.trace {
            eprintln!(
                "[std] basis {} (active {}), pairs {}, lm {:?}, sugar {}, terms {}, bits {}",
                elems.len(),
                elems.iter().filter(|e| e.active).count(),
                pairs.len(),
                elems[k].red.lm,
                elems[k].sugar,
                elems[k].red.poly.len(),
                elems[k].red.poly.terms().iter().map(|t| t.coeff.bits()).max().unwrap_or(0)
            );
        }
    }

    let mut minimal: Vec<Polynomial> = Vec::new();
    let actives: Vec<&Elem> = elems.iter().filter(|e| e.active).collect();
    for (i, e) in actives.iter().enumerate() {
        let redundant = actives.iter().enumerate().any(|(j, o)| {
            j != i && o.red.lm.divides(&e.red.lm) && (o.red.lm != e.red.lm || j < i)
        });
        if !redundant {
            minimal.push(e.red.poly.clone());
        }
    }
    minimal.sort_by(|a, b| order.cmp(b.lm().unwrap(), a.lm().unwrap()));

    if global {
        // Tail reduction only terminates for well-orders.
        let reds: Vec<Reducer> = minimal.iter().cloned().map(Reducer::new).collect();
        let mut out = Vec::with_capacity(minimal.len());
        for (i, p) in minimal.iter().enumerate() {
            let lt = p.lead_term().unwrap().clone();
            let tail = Polynomial::from_sorted_terms(ring, p.terms()[1..].to_vec());
            let others: Vec<Reducer> =
                reds.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r.clone()).collect();
            let nf = mora_nf(&tail, &others, true);
            // a*tail = r mod others, so a*p = a*lt + r.
            let lead = Polynomial::monomial(ring, &lt.coeff * &nf.scale, lt.exp.clone());
            out.push((&lead + &nf.remainder).primitive());
        }
        minimal = out;
    }
    debug_assert!(minimal.iter().all(|p| !p.is_zero()));
    Computed { basis: minimal, stats }
}
