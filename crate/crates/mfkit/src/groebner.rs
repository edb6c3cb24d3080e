//! Buchberger engine and the ideal arithmetic built on it: reduced bases,
//! normal forms, ideal equality, colon ideals, elimination, and intersections.
//!
//! Selection uses the sugar strategy; pairs with coprime leading terms are
//! discarded and the chain criterion prunes the rest. Reduced bases are
//! canonical for a fixed order: monic, fully inter-reduced, sorted by leading
//! monomial.

use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::scalar::Scalar;
use std::collections::BTreeSet;

/// Terms sorted descending under the active order.
#[derive(Debug, Clone)]
struct OrdPoly {
    terms: Vec<(Monomial, Scalar)>,
}

impl OrdPoly {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrdPoly { terms }
    }

    fn to_poly(&self, ring: &PolyRing) -> Polynomial {
        let mut out = ring.zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> &(Monomial, Scalar) {
        &self.terms[0]
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.inv();
                for (_, c) in &mut self.terms {
                    *c = c.mul(&inv);
                }
            }
        }
    }

    fn degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// self - coef * mono * other, keeping the descending term order.
    fn sub_scaled(&self, other: &OrdPoly, mono: &Monomial, coef: &Scalar, order: &MonomialOrder) -> OrdPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            let om = other.terms[j].0.mul(mono);
            match order.cmp(&self.terms[i].0, &om) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((om, other.terms[j].1.mul(coef).neg()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].1.sub(&other.terms[j].1.mul(coef));
                    if !c.is_zero() {
                        out.push((om, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (m, c) in &other.terms[j..] {
            out.push((m.mul(mono), c.mul(coef).neg()));
        }
        OrdPoly { terms: out }
    }
}

/// Full multivariate division remainder; also returns the sugar bound of the
/// reduction when the input carries one.
fn reduce_full(p: &OrdPoly, basis: &[(OrdPoly, u64)], order: &MonomialOrder, sugar: u64) -> (OrdPoly, u64) {
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    let mut work = p.clone();
    let mut sugar = sugar;
    'outer: while !work.is_zero() {
        let (lm, lc) = work.leading().clone();
        for (g, gs) in basis {
            if g.is_zero() {
                continue;
            }
            let (glm, glc) = g.leading();
            if glm.divides(&lm) {
                let t = glm.quotient_into(&lm);
                let c = lc.div(glc);
                sugar = sugar.max(gs + t.degree());
                work = work.sub_scaled(g, &t, &c, order);
                continue 'outer;
            }
        }
        // Leading term irreducible: shift it to the remainder.
        rem.push((lm, lc));
        work.terms.remove(0);
    }
    (OrdPoly { terms: rem }, sugar)
}

fn s_poly(f: &(OrdPoly, u64), g: &(OrdPoly, u64), order: &MonomialOrder) -> (OrdPoly, u64) {
    let (flm, flc) = f.0.leading();
    let (glm, glc) = g.0.leading();
    let lcm = flm.lcm(glm);
    let tf = flm.quotient_into(&lcm);
    let tg = glm.quotient_into(&lcm);
    // (lcm/lt f)*f - (fc/gc)*(lcm/lt g)*g, both scaled so leading terms cancel.
    let shifted = OrdPoly {
        terms: f.0.terms.iter().map(|(m, c)| (m.mul(&tf), c.clone())).collect(),
    };
    let coef = flc.div(glc);
    let s = shifted.sub_scaled(&g.0, &tg, &coef, order);
    let sugar = (f.1 + tf.degree()).max(g.1 + tg.degree());
    (s, sugar)
}

/// Reduced Groebner basis of an ideal for a fixed monomial order. The
/// generator list is the unique canonical representative of the ideal.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: PolyRing,
    order: MonomialOrder,
    gens: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Remainder of full reduction; zero exactly on ideal members.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert!(p.ring() == &self.ring, "normal form across rings");
        if self.gens.is_empty() {
            return p.clone();
        }
        let basis: Vec<(OrdPoly, u64)> = self
            .gens
            .iter()
            .map(|g| (OrdPoly::from_poly(g, &self.order), g.total_degree()))
            .collect();
        let w = OrdPoly::from_poly(p, &self.order);
        let (r, _) = reduce_full(&w, &basis, &self.order, w.degree());
        r.to_poly(&self.ring)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Compute the reduced Groebner basis of `gens` inside `ring`.
pub fn groebner(ring: &PolyRing, gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::MixedRings);
        }
    }
    let mut basis: Vec<(OrdPoly, u64)> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut op = OrdPoly::from_poly(g, order);
        op.make_monic();
        let sugar = op.degree();
        basis.push((op, sugar));
    }

    // Pair queue keyed by (sugar, lcm degree, lcm, i, j) for a deterministic
    // sugar-first selection.
    let mut pairs: BTreeSet<(u64, u64, Monomial, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let pair_key = |basis: &[(OrdPoly, u64)], i: usize, j: usize| {
        let li = basis[i].0.leading().0.clone();
        let lj = basis[j].0.leading().0.clone();
        let lcm = li.lcm(&lj);
        let sugar = (basis[i].1 + li.quotient_into(&lcm).degree())
            .max(basis[j].1 + lj.quotient_into(&lcm).degree());
        (sugar, lcm.degree(), lcm, i, j)
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.insert(pair_key(&basis, i, j));
        }
    }

    while let Some(key) = pairs.iter().next().cloned() {
        pairs.remove(&key);
        let (_, _, lcm, i, j) = key;
        done.insert((i, j));
        let (li, _) = basis[i].0.leading();
        let (lj, _) = basis[j].0.leading();
        if li.coprime(lj) {
            continue;
        }
        // Chain criterion: an element whose leading term divides the lcm and
        // whose pairs with both ends are settled makes this pair redundant.
        let mut chained = false;
        for (k, (g, _)) in basis.iter().enumerate() {
            if k == i || k == j || g.is_zero() {
                continue;
            }
            if g.leading().0.divides(&lcm) {
                let a = (i.min(k), i.max(k));
                let b = (j.min(k), j.max(k));
                if done.contains(&a) && done.contains(&b) {
                    chained = true;
                    break;
                }
            }
        }
        if chained {
            continue;
        }
        let (s, sugar) = s_poly(&basis[i], &basis[j], order);
        let (mut r, sugar) = reduce_full(&s, &basis, order, sugar);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        let new_idx = basis.len();
        basis.push((r, sugar));
        for k in 0..new_idx {
            if !basis[k].0.is_zero() {
                pairs.insert(pair_key(&basis, k, new_idx));
            }
        }
    }

    // Minimal basis: drop any generator whose leading term is divisible by
    // another surviving one. Processing descending leading terms keeps the
    // divisors alive.
    let mut idx: Vec<usize> = (0..basis.len()).filter(|&k| !basis[k].0.is_zero()).collect();
    idx.sort_by(|&a, &b| order.cmp(&basis[b].0.leading().0, &basis[a].0.leading().0));
    let mut keep: Vec<usize> = Vec::new();
    for &k in &idx {
        let lk = &basis[k].0.leading().0;
        let strictly = idx.iter().any(|&h| {
            h != k && basis[h].0.leading().0.divides(lk) && basis[h].0.leading().0 != *lk
        });
        let duplicate = keep.iter().any(|&h| basis[h].0.leading().0 == *lk);
        if !strictly && !duplicate {
            keep.push(k);
        }
    }

    // Inter-reduce: every generator fully reduced against the others.
    let mut reduced: Vec<OrdPoly> = keep.iter().map(|&k| basis[k].0.clone()).collect();
    loop {
        let mut changed = false;
        for i in 0..reduced.len() {
            let others: Vec<(OrdPoly, u64)> = reduced
                .iter()
                .enumerate()
                .filter(|(j, g)| *j != i && !g.is_zero())
                .map(|(_, g)| (g.clone(), g.degree()))
                .collect();
            if others.is_empty() {
                continue;
            }
            let cur = reduced[i].clone();
            let (mut r, _) = reduce_full(&cur, &others, order, cur.degree());
            r.make_monic();
            if r.terms != cur.terms {
                changed = true;
                reduced[i] = r;
            }
        }
        if !changed {
            break;
        }
    }
    let mut gens: Vec<Polynomial> = reduced
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.to_poly(ring))
        .collect();
    let lm = |p: &Polynomial| -> Monomial {
        let op = OrdPoly::from_poly(p, order);
        op.leading().0.clone()
    };
    gens.sort_by(|a, b| order.cmp(&lm(a), &lm(b)));
    gens.dedup();

    Ok(GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        gens,
    })
}

/// Two generator lists span the same ideal exactly when their reduced bases
/// coincide.
pub fn ideal_equal(
    ring: &PolyRing,
    lhs: &[Polynomial],
    rhs: &[Polynomial],
    order: &MonomialOrder,
) -> Result<bool> {
    let a = groebner(ring, lhs, order)?;
    let b = groebner(ring, rhs, order)?;
    Ok(a.gens == b.gens)
}

fn fresh_var(ring: &PolyRing, stem: &str) -> String {
    let mut k = 0;
    loop {
        let name = format!("{stem}{k}");
        if ring.var_index(&name).is_none() {
            return name;
        }
        k += 1;
    }
}

/// Restrict a polynomial of an extended ring back to `target`, which must be
/// a prefix of the extended variable list. Fails if dropped variables occur.
fn restrict(p: &Polynomial, target: &PolyRing) -> Option<Polynomial> {
    let n = target.nvars();
    let mut out = target.zero();
    for (m, c) in p.terms() {
        if m.0[n..].iter().any(|&e| e > 0) {
            return None;
        }
        out.add_term(Monomial(m.0[..n].to_vec()), c.clone());
    }
    Some(out)
}

/// Generators of I ∩ J, by eliminating a tag variable from t·I + (1−t)·J.
pub fn intersect(
    ring: &PolyRing,
    lhs: &[Polynomial],
    rhs: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    let tname = fresh_var(ring, "__t");
    let ext = ring.extended(&[&tname])?;
    let t = ext.var(&tname)?;
    let one_minus_t = ext.one().sub(&t)?;
    let mut gens = Vec::new();
    for f in lhs {
        gens.push(t.mul(&f.embed(&ext)?)?);
    }
    for g in rhs {
        gens.push(one_minus_t.mul(&g.embed(&ext)?)?);
    }
    let order = MonomialOrder::block(&[ext.nvars() - 1], ext.nvars());
    let gb = groebner(&ext, &gens, &order)?;
    let mut out = Vec::new();
    for g in gb.gens() {
        if let Some(r) = restrict(g, ring) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Exact division a / b when b divides a; None otherwise.
pub fn exact_div(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    if a.is_zero() {
        return Some(a.ring().zero());
    }
    if b.is_zero() {
        return None;
    }
    let order = MonomialOrder::degrevlex(a.ring().nvars());
    let bo = OrdPoly::from_poly(b, &order);
    let (blm, blc) = bo.leading().clone();
    let mut work = OrdPoly::from_poly(a, &order);
    let mut quot = a.ring().zero();
    while !work.is_zero() {
        let (lm, lc) = work.leading().clone();
        if !blm.divides(&lm) {
            return None;
        }
        let t = blm.quotient_into(&lm);
        let c = lc.div(&blc);
        quot.add_term(t.clone(), c.clone());
        work = work.sub_scaled(&bo, &t, &c, &order);
    }
    Some(quot)
}

/// Generators of the colon ideal (I : g) = { s | s·g ∈ I }, computed through
/// the intersection I ∩ (g) and exact division by g.
pub fn colon_ideal(
    ring: &PolyRing,
    gens: &[Polynomial],
    g: &Polynomial,
    order: &MonomialOrder,
) -> Result<Vec<Polynomial>> {
    if g.is_zero() {
        return Err(Error::ColonByZero);
    }
    let meet = intersect(ring, gens, std::slice::from_ref(g))?;
    let mut out = Vec::new();
    for h in &meet {
        let q = exact_div(h, g).expect("member of (g) must divide exactly");
        if !q.is_zero() {
            out.push(q);
        }
    }
    let gb = groebner(ring, &out, order)?;
    Ok(gb.gens().to_vec())
}

/// Generators of I ∩ k[vars \ drop], via a block order that eliminates
/// `drop` first.
pub fn eliminate(
    ring: &PolyRing,
    gens: &[Polynomial],
    drop: &[usize],
) -> Result<Vec<Polynomial>> {
    let order = MonomialOrder::block(drop, ring.nvars());
    let gb = groebner(ring, gens, &order)?;
    let mut allowed = vec![true; ring.nvars()];
    for &d in drop {
        allowed[d] = false;
    }
    Ok(gb
        .gens()
        .iter()
        .filter(|g| g.supported_on(&allowed))
        .cloned()
        .collect())
}
