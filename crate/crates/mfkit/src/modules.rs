//! Presented modules over a ring in the tower: minimal presentations,
//! Fitting ideals, base change, freeness and free-summand tests,
//! locally-free classification over a declared finite spectrum, and
//! invariant-based distinctness.

use crate::error::{Error, Result};
use crate::groebner::exact_div;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::tower::RingDescriptor;

/// A finite presentation: rows index generators, columns index relations.
/// Entries are kept in ring-normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulePresentation {
    matrix: PolyMatrix,
    ring: RingDescriptor,
}

/// Freeness verdict of a presented module over the modeled local ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Freeness {
    Free(usize),
    NotFree,
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free(_))
    }
}

/// Classification against the punctured spectrum: locally free everywhere
/// away from the maximal ideal, or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PuncturedClass {
    Cm0,
    CmPlus,
}

/// A named nonmaximal prime together with the declared multiplicative set
/// that realizes localization at it.
#[derive(Debug, Clone)]
pub struct PrimeDecl {
    pub name: String,
    pub gens: Vec<Polynomial>,
    pub invert: Vec<Polynomial>,
}

/// The declared finite spectrum: nonmaximal primes plus the maximal ideal.
/// Primes are declared, not verified.
#[derive(Debug, Clone)]
pub struct SpectrumDeclaration {
    pub primes: Vec<PrimeDecl>,
    pub maximal: Vec<Polynomial>,
}

impl SpectrumDeclaration {
    pub fn prime(&self, name: &str) -> Result<&PrimeDecl> {
        self.primes
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::UnknownPrime(name.to_string()))
    }
}

/// Per-prime verdicts plus the overall class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub per_prime: Vec<(String, Freeness)>,
    pub verdict: PuncturedClass,
}

/// distinguish() outcome; `Distinct` is backed by an invariant that differs,
/// `Indistinguishable` makes no isomorphism claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distinctness {
    Distinct(String),
    Indistinguishable,
}

impl ModulePresentation {
    pub fn new(matrix: PolyMatrix, ring: RingDescriptor) -> Result<Self> {
        let matrix = normalize_matrix(&matrix, &ring)?;
        Ok(ModulePresentation { matrix, ring })
    }

    /// The cyclic module R/(g), presented by the 1x1 matrix `[g]`.
    pub fn cyclic(ring: &RingDescriptor, g: &Polynomial) -> Result<Self> {
        let m = PolyMatrix::from_rows(ring.ring(), vec![vec![g.embed(ring.ring())?]])?;
        Self::new(m, ring.clone())
    }

    /// The free module of the given rank: no relation columns.
    pub fn free(ring: &RingDescriptor, rank: usize) -> Self {
        ModulePresentation {
            matrix: PolyMatrix::zero(ring.ring(), rank, 0),
            ring: ring.clone(),
        }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.matrix.rows()
    }

    pub fn relation_count(&self) -> usize {
        self.matrix.cols()
    }

    /// Ideal generated by the entries of one relation column.
    pub fn column_ideal(&self, col: usize) -> Vec<Polynomial> {
        (0..self.matrix.rows())
            .map(|r| self.matrix.get(r, col).clone())
            .filter(|p| !p.is_zero())
            .collect()
    }

    /// Block-diagonal direct sum of two presentations over the same ring.
    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        ModulePresentation::new(self.matrix.block_diag(&other.matrix)?, self.ring.clone())
    }

    /// Remove unit pivots until none remain. A pivoted unit deletes one
    /// generator and one relation (division-free Schur pruning); zero
    /// relation columns are dropped; relation columns that are visible ring
    /// multiples of another are dropped and generator rows that are visible
    /// multiples of another are zeroed. The cokernel is preserved by every
    /// step.
    pub fn minimalize(&self) -> Result<ModulePresentation> {
        let mut mat = self.matrix.clone();
        loop {
            mat = drop_zero_columns(&mat);
            if let Some((i, j)) = find_unit_pivot(&mat, &self.ring)? {
                mat = pivot(&mat, i, j, &self.ring)?;
                continue;
            }
            if let Some(next) = drop_multiple_column(&mat, &self.ring)? {
                mat = next;
                continue;
            }
            if let Some(next) = zero_multiple_row(&mat, &self.ring)? {
                mat = next;
                continue;
            }
            break;
        }
        Ok(ModulePresentation {
            matrix: mat,
            ring: self.ring.clone(),
        })
    }

    /// Fitting ideal Fitt_r = I_{m-r}(matrix), lifted to the base polynomial
    /// ring together with the ring's relations; returned as the canonical
    /// reduced basis. Fitt_r is the unit ideal for r >= m and contains only
    /// the relations when m - r exceeds the relation count.
    pub fn fitting_ideal(&self, r: usize) -> Result<Vec<Polynomial>> {
        let m = self.matrix.rows();
        if r >= m {
            return self.ring.reduced_ideal(&[self.ring.ring().one()]);
        }
        let s = m - r;
        if s > self.matrix.cols() {
            return self.ring.reduced_ideal(&[]);
        }
        let minors = self.matrix.minors(s)?;
        self.ring.reduced_ideal(&minors)
    }

    /// Re-read the presentation in a ring further along the tower.
    pub fn base_change(&self, target: &RingDescriptor) -> Result<ModulePresentation> {
        if *target == self.ring {
            return Ok(self.clone());
        }
        if !target.extends(&self.ring) {
            return Err(Error::IncompatibleTowers(
                "target does not extend the presentation ring".into(),
            ));
        }
        ModulePresentation::new(self.matrix.embed(target.ring())?, target.clone())
    }

    /// Freeness over the modeled local ring: free exactly when minimalization
    /// removes every relation column.
    pub fn is_free(&self) -> Result<Freeness> {
        let min = self.minimalize()?;
        if min.relation_count() == 0 {
            Ok(Freeness::Free(min.generators()))
        } else {
            Ok(Freeness::NotFree)
        }
    }

    /// Zero-row criterion on the minimal presentation.
    pub fn has_free_summand(&self) -> Result<bool> {
        let min = self.minimalize()?;
        if min.generators() == 0 {
            return Ok(false);
        }
        Ok((0..min.generators())
            .any(|i| (0..min.relation_count()).all(|j| min.matrix.get(i, j).is_zero())))
    }

    /// Localize at every declared nonmaximal prime and test freeness; the
    /// verdict is CM+ exactly when some localization is not free.
    pub fn classify_punctured_locus(&self, spec: &SpectrumDeclaration) -> Result<Classification> {
        let mut per_prime = Vec::new();
        let mut verdict = PuncturedClass::Cm0;
        for prime in &spec.primes {
            let local_ring = self.ring.localize(&prime.invert)?;
            let localized = self.base_change(&local_ring)?;
            let freeness = localized.is_free()?;
            if !freeness.is_free() {
                verdict = PuncturedClass::CmPlus;
            }
            per_prime.push((prime.name.clone(), freeness));
        }
        Ok(Classification { per_prime, verdict })
    }

    /// Invariant-based distinctness: differing minimal generator counts or a
    /// differing Fitting ideal certify distinctness; otherwise the modules
    /// are indistinguishable to these invariants (no isomorphism is claimed).
    pub fn distinguish(&self, other: &ModulePresentation, max_fitting_index: usize) -> Result<Distinctness> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        let a = self.minimalize()?;
        let b = other.minimalize()?;
        if a.generators() != b.generators() {
            return Ok(Distinctness::Distinct(format!(
                "minimal generator counts differ: {} vs {}",
                a.generators(),
                b.generators()
            )));
        }
        for r in 0..=max_fitting_index {
            if self.fitting_ideal(r)? != other.fitting_ideal(r)? {
                return Ok(Distinctness::Distinct(format!("fitting ideal index {r} differs")));
            }
        }
        Ok(Distinctness::Indistinguishable)
    }

    /// Profile equality used for direct-sum comparisons: minimal Betti counts
    /// plus every Fitting ideal up to the generator count.
    pub fn same_profile(&self, other: &ModulePresentation) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        if self.matrix == other.matrix {
            return Ok(true);
        }
        let a = self.minimalize()?;
        let b = other.minimalize()?;
        if a.generators() != b.generators() || a.relation_count() != b.relation_count() {
            return Ok(false);
        }
        if a.matrix == b.matrix {
            return Ok(true);
        }
        let top = a.generators();
        for r in 0..=top {
            if self.fitting_ideal(r)? != other.fitting_ideal(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn normalize_matrix(m: &PolyMatrix, ring: &RingDescriptor) -> Result<PolyMatrix> {
    let embedded = m.embed(ring.ring())?;
    let mut out = PolyMatrix::zero(ring.ring(), embedded.rows(), embedded.cols());
    for i in 0..embedded.rows() {
        for j in 0..embedded.cols() {
            out.set(i, j, ring.normal_form(embedded.get(i, j))?);
        }
    }
    Ok(out)
}

fn drop_zero_columns(m: &PolyMatrix) -> PolyMatrix {
    let cols: Vec<usize> = (0..m.cols())
        .filter(|&c| (0..m.rows()).any(|r| !m.get(r, c).is_zero()))
        .collect();
    if cols.len() == m.cols() {
        return m.clone();
    }
    let rows: Vec<usize> = (0..m.rows()).collect();
    m.submatrix(&rows, &cols)
}

fn find_unit_pivot(m: &PolyMatrix, ring: &RingDescriptor) -> Result<Option<(usize, usize)>> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if !e.is_zero() && ring.is_unit(e)? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Division-free pruning of a unit pivot u at (pi, pj): the remaining block
/// is u*a_kc - a_k,pj * a_pi,c, which presents the same cokernel because
/// scaling a generator row by a unit is invertible.
fn pivot(m: &PolyMatrix, pi: usize, pj: usize, ring: &RingDescriptor) -> Result<PolyMatrix> {
    let u = m.get(pi, pj).clone();
    let mut out = PolyMatrix::zero(ring.ring(), m.rows() - 1, m.cols() - 1);
    let mut oi = 0;
    for i in 0..m.rows() {
        if i == pi {
            continue;
        }
        let mut oj = 0;
        for j in 0..m.cols() {
            if j == pj {
                continue;
            }
            let val = u
                .mul(m.get(i, j))?
                .sub(&m.get(i, pj).mul(m.get(pi, j))?)?;
            out.set(oi, oj, ring.normal_form(&val)?);
            oj += 1;
        }
        oi += 1;
    }
    Ok(out)
}

/// Drop a relation column that is a visible ring multiple of another.
fn drop_multiple_column(m: &PolyMatrix, ring: &RingDescriptor) -> Result<Option<PolyMatrix>> {
    for c1 in (0..m.cols()).rev() {
        for c2 in 0..m.cols() {
            if c1 == c2 {
                continue;
            }
            let witness = (0..m.rows()).find(|&r| !m.get(r, c2).is_zero());
            let Some(w) = witness else { continue };
            let Some(mult) = exact_div(m.get(w, c1), m.get(w, c2)) else {
                continue;
            };
            let mut all = true;
            for r in 0..m.rows() {
                let diff = m.get(r, c1).sub(&mult.mul(m.get(r, c2))?)?;
                if !ring.is_zero_elem(&diff)? {
                    all = false;
                    break;
                }
            }
            if all {
                let rows: Vec<usize> = (0..m.rows()).collect();
                let cols: Vec<usize> = (0..m.cols()).filter(|&c| c != c1).collect();
                return Ok(Some(m.submatrix(&rows, &cols)));
            }
        }
    }
    Ok(None)
}

/// Zero a generator row that is a visible ring multiple of another row
/// (an invertible change of generators); the row itself stays.
fn zero_multiple_row(m: &PolyMatrix, ring: &RingDescriptor) -> Result<Option<PolyMatrix>> {
    for r1 in (0..m.rows()).rev() {
        if (0..m.cols()).all(|c| m.get(r1, c).is_zero()) {
            continue;
        }
        for r2 in 0..m.rows() {
            if r1 == r2 || (0..m.cols()).all(|c| m.get(r2, c).is_zero()) {
                continue;
            }
            let witness = (0..m.cols()).find(|&c| !m.get(r2, c).is_zero());
            let Some(w) = witness else { continue };
            let Some(mult) = exact_div(m.get(r1, w), m.get(r2, w)) else {
                continue;
            };
            let mut all = true;
            for c in 0..m.cols() {
                let diff = m.get(r1, c).sub(&mult.mul(m.get(r2, c))?)?;
                if !ring.is_zero_elem(&diff)? {
                    all = false;
                    break;
                }
            }
            if all {
                let mut out = m.clone();
                for c in 0..m.cols() {
                    out.set(r1, c, ring.ring().zero());
                }
                return Ok(Some(out));
            }
        }
    }
    Ok(None)
}

/// Report of a composition-zero and minimality check over a ring.
#[derive(Debug, Clone)]
pub struct ComplexReport {
    pub ok: bool,
    pub detail: Option<String>,
}

/// True when every consecutive product vanishes in the ring and no matrix
/// carries a unit entry. Exactness is not checked.
pub fn complex_check(mats: &[PolyMatrix], ring: &RingDescriptor) -> Result<ComplexReport> {
    for pair in mats.windows(2) {
        if pair[0].cols() != pair[1].rows() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} then {}x{}",
                pair[0].rows(),
                pair[0].cols(),
                pair[1].rows(),
                pair[1].cols()
            )));
        }
        let prod = pair[0].embed(ring.ring())?.mul(&pair[1].embed(ring.ring())?)?;
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                if !ring.is_zero_elem(prod.get(i, j))? {
                    return Ok(ComplexReport {
                        ok: false,
                        detail: Some(format!("composition nonzero at ({i},{j})")),
                    });
                }
            }
        }
    }
    for (k, m) in mats.iter().enumerate() {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let e = m.get(i, j).embed(ring.ring())?;
                if !e.is_zero() && ring.is_unit(&e)? {
                    return Ok(ComplexReport {
                        ok: false,
                        detail: Some(format!("unit entry in matrix {k} at ({i},{j})")),
                    });
                }
            }
        }
    }
    Ok(ComplexReport { ok: true, detail: None })
}

/// One tagged member of a cyclic enumeration.
#[derive(Debug, Clone)]
pub struct CyclicModule {
    pub divisor: Polynomial,
    pub presentation: ModulePresentation,
    pub class: Classification,
}

/// Enumerate the cyclic modules R/(g) over R = S/(f) for every divisor g of
/// f (up to units), where f is given in factored form over the base
/// polynomial ring, and tag each by its punctured-locus class.
pub fn cyclic_mcm_enumerate(
    base: &RingDescriptor,
    factors: &[(String, u32)],
    spec: &SpectrumDeclaration,
) -> Result<Vec<CyclicModule>> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorization);
    }
    let ring = base.ring();
    let mut f = ring.one();
    for (name, mult) in factors {
        let v = ring.var(name)?;
        f = f.mul(&v.pow(*mult))?;
    }
    let r = base.make_quotient(&[f])?;

    let mut exps = vec![0u32; factors.len()];
    let mut out = Vec::new();
    loop {
        let mut g = ring.one();
        for ((name, _), &e) in factors.iter().zip(&exps) {
            g = g.mul(&ring.var(name)?.pow(e))?;
        }
        let pres = ModulePresentation::cyclic(&r, &g)?;
        let class = pres.classify_punctured_locus(spec)?;
        out.push(CyclicModule {
            divisor: g,
            presentation: pres,
            class,
        });
        // next exponent tuple
        let mut k = 0;
        loop {
            if k == factors.len() {
                return Ok(out);
            }
            if exps[k] < factors[k].1 {
                exps[k] += 1;
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}
