//! Ring towers: a polynomial base, quotients by relation ideals, and
//! localization realized by adjoining inverse variables with `u*s - 1`
//! relations. Every element question (zeroness, unit-ness, annihilators,
//! ideal equality) is answered in the base polynomial ring against the cached
//! reduced basis of the full relation ideal.

use crate::error::{Error, Result};
use crate::groebner::{colon_ideal, groebner, ideal_equal, GroebnerBasis};
use crate::order::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};
use crate::scalar::CoeffField;

#[derive(Debug, Clone)]
struct InvertedElem {
    elem: Polynomial,
    inv_var: usize,
}

/// A ring in the tower: base variables, relation ideal, and a multiplicative
/// set realized through hidden inverse variables. Immutable; the reduced
/// basis of the full relation ideal is computed eagerly at construction.
#[derive(Debug, Clone)]
pub struct RingDescriptor {
    ring: PolyRing,
    base_vars: usize,
    relations: Vec<Polynomial>,
    inverted: Vec<InvertedElem>,
    order: MonomialOrder,
    gb: GroebnerBasis,
    unit_vars: Vec<bool>,
}

impl PartialEq for RingDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.base_vars == other.base_vars
            && self.relations == other.relations
            && self
                .inverted
                .iter()
                .map(|i| &i.elem)
                .eq(other.inverted.iter().map(|i| &i.elem))
    }
}

impl Eq for RingDescriptor {}

impl RingDescriptor {
    /// The free polynomial ring on `vars`: no relations, nothing inverted.
    pub fn polynomial(vars: &[&str], field: CoeffField) -> Self {
        let ring = PolyRing::new(vars, field);
        Self::assemble(ring, vars.len(), Vec::new(), Vec::new())
    }

    fn assemble(
        ring: PolyRing,
        base_vars: usize,
        relations: Vec<Polynomial>,
        inverted: Vec<InvertedElem>,
    ) -> Self {
        let order = MonomialOrder::degrevlex(ring.nvars());
        let mut full = relations.clone();
        for inv in &inverted {
            let u = ring
                .var(&ring.vars()[inv.inv_var].clone())
                .expect("inverse variable exists");
            let rel = u
                .mul(&inv.elem)
                .and_then(|p| p.sub(&ring.one()))
                .expect("same ring");
            full.push(rel);
        }
        let gb = groebner(&ring, &full, &order).expect("relation ideal in own ring");
        let mut unit_vars = vec![false; ring.nvars()];
        for inv in &inverted {
            unit_vars[inv.inv_var] = true;
        }
        let names: Vec<String> = ring.vars().to_vec();
        for (v, flag) in unit_vars.iter_mut().enumerate() {
            if *flag {
                continue;
            }
            let var = ring.var(&names[v]).expect("var exists");
            let mut gens = full.clone();
            gens.push(var);
            let test = groebner(&ring, &gens, &order).expect("unit test basis");
            *flag = test.is_unit_ideal();
        }
        RingDescriptor {
            ring,
            base_vars,
            relations,
            inverted,
            order,
            gb,
            unit_vars,
        }
    }

    /// Quotient by additional relations; the empty list returns the same ring.
    pub fn make_quotient(&self, new_relations: &[Polynomial]) -> Result<Self> {
        let mut relations = self.relations.clone();
        for r in new_relations {
            relations.push(r.embed(&self.ring)?);
        }
        Ok(Self::assemble(
            self.ring.clone(),
            self.base_vars,
            relations,
            self.inverted.clone(),
        ))
    }

    /// Invert the given elements by adjoining fresh inverse variables.
    /// Refuses elements that are already zero in this ring.
    pub fn localize(&self, invert: &[Polynomial]) -> Result<Self> {
        if invert.is_empty() {
            return Ok(self.clone());
        }
        for s in invert {
            let s = s.embed(&self.ring)?;
            if self.normal_form(&s)?.is_zero() {
                return Err(Error::InvertZero(s.to_string()));
            }
        }
        let mut ring = self.ring.clone();
        let mut inverted = self.inverted.clone();
        let mut relations = self.relations.clone();
        for s in invert {
            let name = fresh_inverse_name(&ring);
            let bigger = ring.extended(&[&name])?;
            relations = relations
                .iter()
                .map(|p| p.embed(&bigger))
                .collect::<Result<Vec<_>>>()?;
            inverted = inverted
                .iter()
                .map(|i| {
                    Ok(InvertedElem {
                        elem: i.elem.embed(&bigger)?,
                        inv_var: i.inv_var,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            inverted.push(InvertedElem {
                elem: s.embed(&bigger)?,
                inv_var: bigger.nvars() - 1,
            });
            ring = bigger;
        }
        Ok(Self::assemble(ring, self.base_vars, relations, inverted))
    }

    /// Append fresh base variables (used by the sheet construction). The new
    /// variables sit after the existing base block and before any inverse
    /// variables.
    pub fn extend_base_vars(&self, names: &[&str]) -> Result<Self> {
        for n in names {
            if self.ring.var_index(n).is_some() {
                return Err(Error::VariableCollision(n.to_string()));
            }
        }
        let mut vars: Vec<String> = self.ring.vars()[..self.base_vars].to_vec();
        vars.extend(names.iter().map(|s| s.to_string()));
        vars.extend_from_slice(&self.ring.vars()[self.base_vars..]);
        let bigger = PolyRing::from_names(vars, self.ring.field());
        let k = names.len();
        let map: Vec<usize> = (0..self.ring.nvars())
            .map(|v| if v < self.base_vars { v } else { v + k })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|p| p.map_to(&bigger, &map))
            .collect();
        let inverted = self
            .inverted
            .iter()
            .map(|i| InvertedElem {
                elem: i.elem.map_to(&bigger, &map),
                inv_var: i.inv_var + k,
            })
            .collect();
        Ok(Self::assemble(
            bigger,
            self.base_vars + k,
            relations,
            inverted,
        ))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> CoeffField {
        self.ring.field()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn base_var_names(&self) -> &[String] {
        &self.ring.vars()[..self.base_vars]
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn inverted_elems(&self) -> Vec<&Polynomial> {
        self.inverted.iter().map(|i| &i.elem).collect()
    }

    /// Relations plus the inverse-adjunction relations, the full ideal the
    /// cached basis reduces by.
    pub fn full_relations(&self) -> Vec<Polynomial> {
        let mut out = self.relations.clone();
        for inv in &self.inverted {
            let u = self
                .ring
                .var(&self.ring.vars()[inv.inv_var].clone())
                .expect("inverse var");
            out.push(
                u.mul(&inv.elem)
                    .and_then(|p| p.sub(&self.ring.one()))
                    .expect("same ring"),
            );
        }
        out
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty() && self.inverted.is_empty()
    }

    /// Canonical representative of `e`; zero exactly when `e` = 0 here.
    pub fn normal_form(&self, e: &Polynomial) -> Result<Polynomial> {
        let e = e.embed(&self.ring)?;
        Ok(self.gb.normal_form(&e))
    }

    pub fn is_zero_elem(&self, e: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(e)?.is_zero())
    }

    /// Unit test in the modeled local ring. Elements with a nonzero constant
    /// term whose remaining terms all touch a non-invertible variable are
    /// units of the local model; otherwise invertibility is decided by
    /// whether the element generates the unit ideal together with the
    /// relations.
    pub fn is_unit(&self, e: &Polynomial) -> Result<bool> {
        let nf = self.normal_form(e)?;
        if nf.is_zero() {
            return Ok(false);
        }
        if nf.is_constant() {
            return Ok(true);
        }
        if !nf.constant_term().is_zero() {
            let all_nonunit = nf.terms().all(|(m, _)| {
                m.is_one()
                    || m.0
                        .iter()
                        .enumerate()
                        .any(|(v, &e)| e > 0 && !self.unit_vars[v])
            });
            if all_nonunit {
                return Ok(true);
            }
        }
        let mut gens = self.full_relations();
        gens.push(nf);
        let test = groebner(&self.ring, &gens, &self.order)?;
        Ok(test.is_unit_ideal())
    }

    /// Generators of the annihilator (0 : e), computed as the colon ideal of
    /// the relation ideal in the base polynomial ring and reduced back here.
    /// A zero element is refused: its annihilator is the unit ideal.
    pub fn annihilator(&self, e: &Polynomial) -> Result<Vec<Polynomial>> {
        let nf = self.normal_form(e)?;
        if nf.is_zero() {
            return Err(Error::AnnihilatorOfZero(e.to_string()));
        }
        let full = self.full_relations();
        let colon = colon_ideal(&self.ring, &full, &nf, &self.order)?;
        let mut out = Vec::new();
        for g in colon {
            let r = self.gb.normal_form(&g);
            if !r.is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// Ideal equality in this ring: both sides are lifted to the base
    /// polynomial ring together with the full relation ideal.
    pub fn ideal_equal_in(&self, lhs: &[Polynomial], rhs: &[Polynomial]) -> Result<bool> {
        let mut a = self.full_relations();
        for p in lhs {
            a.push(p.embed(&self.ring)?);
        }
        let mut b = self.full_relations();
        for p in rhs {
            b.push(p.embed(&self.ring)?);
        }
        ideal_equal(&self.ring, &a, &b, &self.order)
    }

    /// Reduced canonical generators of (ideal + relations) in the base ring.
    pub fn reduced_ideal(&self, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let mut all = self.full_relations();
        for p in gens {
            all.push(p.embed(&self.ring)?);
        }
        Ok(groebner(&self.ring, &all, &self.order)?.gens().to_vec())
    }

    /// True when `self` sits above `sub` in a tower: same field, `sub`'s
    /// variables form a prefix, and all of `sub`'s relations vanish here.
    pub fn extends(&self, sub: &RingDescriptor) -> bool {
        if self.ring.field() != sub.ring.field() {
            return false;
        }
        let sv = sub.ring.vars();
        let tv = self.ring.vars();
        if sv.len() > tv.len() || sv != &tv[..sv.len()] {
            return false;
        }
        sub.relations.iter().all(|r| {
            r.embed(&self.ring)
                .map(|e| self.gb.normal_form(&e).is_zero())
                .unwrap_or(false)
        }) && sub.inverted.iter().all(|i| {
            i.elem
                .embed(&self.ring)
                .map(|e| {
                    self.inverted
                        .iter()
                        .any(|j| j.elem == e)
                })
                .unwrap_or(false)
        })
    }
}

fn fresh_inverse_name(ring: &PolyRing) -> String {
    let mut k = 0;
    loop {
        let name = format!("__inv{k}");
        if ring.var_index(&name).is_none() {
            return name;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly_parse;

    fn pqr() -> RingDescriptor {
        RingDescriptor::polynomial(&["p", "q", "r"], CoeffField::Rational)
    }

    fn pp(d: &RingDescriptor, s: &str) -> Polynomial {
        poly_parse(s, d.ring()).unwrap()
    }

    #[test]
    fn quotient_by_empty_is_identity() {
        let s = pqr();
        let r = s.make_quotient(&[]).unwrap();
        assert_eq!(s, r);
    }

    #[test]
    fn hypersurface_quotient() {
        let s = pqr();
        let r = s.make_quotient(&[pp(&s, "p^2*q*r")]).unwrap();
        assert!(r.is_zero_elem(&pp(&r, "p^2*q*r")).unwrap());
        assert!(!r.is_zero_elem(&pp(&r, "p*q*r")).unwrap());
        assert!(r.normal_form(&pp(&r, "1")).unwrap().is_one());
    }

    #[test]
    fn localization_makes_square_zero() {
        let s = pqr();
        let r = s.make_quotient(&[pp(&s, "p^2*q*r")]).unwrap();
        let loc = r.localize(&[pp(&r, "q"), pp(&r, "r")]).unwrap();
        // q and r are invertible, so p^2 dies.
        assert!(loc.is_zero_elem(&poly_parse("p^2", loc.ring()).unwrap()).unwrap());
        assert!(!loc.is_zero_elem(&poly_parse("p", loc.ring()).unwrap()).unwrap());
        assert!(loc.is_unit(&poly_parse("q", loc.ring()).unwrap()).unwrap());
        assert!(loc.is_unit(&poly_parse("r^3", loc.ring()).unwrap()).unwrap());
        assert!(!loc.is_unit(&poly_parse("p*q", loc.ring()).unwrap()).unwrap());
    }

    #[test]
    fn localize_nothing_is_identity() {
        let s = pqr();
        assert_eq!(s.localize(&[]).unwrap(), s);
    }

    #[test]
    fn localize_rejects_zero() {
        let s = pqr();
        let r = s.make_quotient(&[pp(&s, "p")]).unwrap();
        assert!(matches!(
            r.localize(&[pp(&r, "p")]),
            Err(Error::InvertZero(_))
        ));
    }

    #[test]
    fn inverse_relation_reduces_to_one() {
        let s = pqr();
        let loc = s.localize(&[pp(&s, "q")]).unwrap();
        let u = loc.ring().var("__inv0").unwrap();
        let q = loc.ring().var("q").unwrap();
        let prod = u.mul(&q).unwrap();
        assert!(loc.normal_form(&prod).unwrap().is_one());
    }

    #[test]
    fn complete_intersection_witness() {
        // T = Q[u,v,z]/(u*z - (u^2+v^3), z^2); z^2 = 0 and (0 : z) = (z).
        let s = RingDescriptor::polynomial(&["u", "v", "z"], CoeffField::Rational);
        let t = s
            .make_quotient(&[pp(&s, "u*z - u^2 - v^3"), pp(&s, "z^2")])
            .unwrap();
        assert!(t.is_zero_elem(&pp(&t, "z^2")).unwrap());
        let ann = t.annihilator(&pp(&t, "z")).unwrap();
        assert!(t.ideal_equal_in(&ann, &[pp(&t, "z")]).unwrap());
    }

    #[test]
    fn annihilator_examples() {
        // (0 : x) = (x) in S/(x^2).
        let s = RingDescriptor::polynomial(&["x", "y"], CoeffField::Rational);
        let r = s.make_quotient(&[pp(&s, "x^2")]).unwrap();
        let ann = r.annihilator(&pp(&r, "x")).unwrap();
        assert!(r.ideal_equal_in(&ann, &[pp(&r, "x")]).unwrap());

        // (0 : x*y) = (z) in S/(x*y*z).
        let s = RingDescriptor::polynomial(&["x", "y", "z"], CoeffField::Rational);
        let r = s.make_quotient(&[pp(&s, "x*y*z")]).unwrap();
        let ann = r.annihilator(&pp(&r, "x*y")).unwrap();
        assert!(r.ideal_equal_in(&ann, &[pp(&r, "z")]).unwrap());

        // Annihilator of zero is refused.
        assert!(matches!(
            r.annihilator(&pp(&r, "x*y*z")),
            Err(Error::AnnihilatorOfZero(_))
        ));
    }

    #[test]
    fn annihilator_generators_kill_element() {
        let s = pqr();
        let r = s.make_quotient(&[pp(&s, "p^2*q*r")]).unwrap();
        let e = pp(&r, "p*q*r");
        for a in r.annihilator(&e).unwrap() {
            let prod = a.mul(&e).unwrap();
            assert!(r.is_zero_elem(&prod).unwrap());
        }
    }

    #[test]
    fn unit_with_constant_term() {
        let s = RingDescriptor::polynomial(&["x", "y"], CoeffField::Rational);
        let r = s.make_quotient(&[pp(&s, "x^2*y")]).unwrap();
        // 1 + x has no polynomial inverse modulo x^2*y, but it is a unit of
        // the local model.
        assert!(r.is_unit(&pp(&r, "1 + x")).unwrap());
        assert!(!r.is_unit(&pp(&r, "x")).unwrap());
        assert!(r.is_unit(&pp(&r, "3")).unwrap());
    }

    #[test]
    fn x_squared_dies_in_localized_x2h_ring() {
        let s = RingDescriptor::polynomial(&["x", "y", "s", "t", "u"], CoeffField::Rational);
        let h = pp(&s, "x^2*s + x*y*t + y^2*u");
        let f = pp(&s, "x^2").mul(&h).unwrap();
        let r = s.make_quotient(&[f]).unwrap();
        let loc = r.localize(&[pp(&r, "y"), h]).unwrap();
        assert!(loc
            .normal_form(&poly_parse("x^2", loc.ring()).unwrap())
            .unwrap()
            .is_zero());
        assert!(!loc
            .is_zero_elem(&poly_parse("x", loc.ring()).unwrap())
            .unwrap());
    }

    #[test]
    fn descriptors_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<RingDescriptor>();
        assert_send_sync::<Polynomial>();
        assert_send_sync::<crate::matrix::PolyMatrix>();
        assert_send_sync::<crate::mf::MatrixFactorization>();
        assert_send_sync::<crate::modules::ModulePresentation>();
    }

    #[test]
    fn normal_form_is_idempotent_and_multiplicative() {
        let s = pqr();
        let r = s.make_quotient(&[pp(&s, "p^2*q*r")]).unwrap();
        let a = pp(&r, "p^3*q^2*r + p*q");
        let b = pp(&r, "q*r^2 - p");
        let nf = |x: &Polynomial| r.normal_form(x).unwrap();
        assert_eq!(nf(&nf(&a)), nf(&a));
        let prod_then_nf = nf(&a.mul(&b).unwrap());
        let nf_then_prod = nf(&nf(&a).mul(&nf(&b)).unwrap());
        assert_eq!(prod_then_nf, nf_then_prod);
    }
}
