//! Matrix factorizations (A, B) of an element f: verification of
//! A·B = B·A = f·E, the syzygy swap, block direct sums, the sheet
//! construction that passes from f to f + x²g, and cokernel presentations.

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::modules::ModulePresentation;
use crate::poly::Polynomial;
use crate::tower::RingDescriptor;

/// A pair of square matrices over the ambient ring whose products both equal
/// f times the identity. The cokernel of A is the module the pair presents
/// over the hypersurface ring S/(f).
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFactorization {
    pub a: PolyMatrix,
    pub b: PolyMatrix,
    pub f: Polynomial,
    pub ring: RingDescriptor,
}

/// Outcome of verification, with the first offending entry on failure.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub ok: bool,
    pub failure: Option<VerifyFailure>,
}

#[derive(Debug, Clone)]
pub struct VerifyFailure {
    /// "A*B" or "B*A".
    pub product: &'static str,
    pub row: usize,
    pub col: usize,
    pub got: String,
    pub expected: String,
}

impl MatrixFactorization {
    pub fn new(a: PolyMatrix, b: PolyMatrix, f: Polynomial, ring: RingDescriptor) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::DimensionMismatch(format!(
                "factorization blocks {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(MatrixFactorization { a, b, f, ring })
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    /// Check A·B = B·A = f·E entrywise, after ring normal forms.
    pub fn verify(&self) -> Result<VerifyReport> {
        let n = self.size();
        let f = self.ring.normal_form(&self.f)?;
        for (name, left, right) in [("A*B", &self.a, &self.b), ("B*A", &self.b, &self.a)] {
            let prod = left.mul(right)?;
            for i in 0..n {
                for j in 0..n {
                    let got = self.ring.normal_form(prod.get(i, j))?;
                    let expected = if i == j { f.clone() } else { self.ring.ring().zero() };
                    if got != expected {
                        return Ok(VerifyReport {
                            ok: false,
                            failure: Some(VerifyFailure {
                                product: name,
                                row: i,
                                col: j,
                                got: got.to_string(),
                                expected: expected.to_string(),
                            }),
                        });
                    }
                }
            }
        }
        Ok(VerifyReport { ok: true, failure: None })
    }

    /// The syzygy of the cokernel: swap the pair. An involution.
    pub fn syzygy(&self) -> MatrixFactorization {
        MatrixFactorization {
            a: self.b.clone(),
            b: self.a.clone(),
            f: self.f.clone(),
            ring: self.ring.clone(),
        }
    }

    /// Block-diagonal sum; both factorizations must share f and the ring.
    pub fn direct_sum(&self, other: &MatrixFactorization) -> Result<MatrixFactorization> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        let diff = self.f.sub(&other.f)?;
        if !self.ring.is_zero_elem(&diff)? {
            return Err(Error::MismatchedScalar);
        }
        Ok(MatrixFactorization {
            a: self.a.block_diag(&other.a)?,
            b: self.b.block_diag(&other.b)?,
            f: self.f.clone(),
            ring: self.ring.clone(),
        })
    }

    /// The sheet construction: from a factorization of f over S, build the
    /// block pair
    ///
    /// ```text
    /// ( (A  -xE) , (B    xE) )
    /// ( (xgE  B)   (-xgE  A) )
    /// ```
    ///
    /// a factorization of f + x²g over S extended by the fresh variable x.
    pub fn knoerrer_sheet(&self, g: &Polynomial, x_name: &str) -> Result<MatrixFactorization> {
        let ring = self.ring.extend_base_vars(&[x_name])?;
        let pring = ring.ring().clone();
        let x = pring.var(x_name)?;
        let n = self.size();
        let a = self.a.embed(&pring)?;
        let b = self.b.embed(&pring)?;
        let g = g.embed(&pring)?;
        let xe = PolyMatrix::scalar(&pring, &x, n);
        let xge = PolyMatrix::scalar(&pring, &x.mul(&g)?, n);
        let neg_xe = xe.map(|p| p.neg());
        let neg_xge = xge.map(|p| p.neg());
        let a_sharp = PolyMatrix::block_2x2(&a, &neg_xe, &xge, &b)?;
        let b_sharp = PolyMatrix::block_2x2(&b, &xe, &neg_xge, &a)?;
        let f_sharp = self
            .f
            .embed(&pring)?
            .add(&x.pow(2).mul(&g)?)?;
        Ok(MatrixFactorization {
            a: a_sharp,
            b: b_sharp,
            f: f_sharp,
            ring,
        })
    }

    /// The same factorization read over a base ring with extra variables,
    /// e.g. to make room for a new scalar in the sheet construction.
    pub fn extend_scalars(&self, names: &[&str]) -> Result<MatrixFactorization> {
        let ring = self.ring.extend_base_vars(names)?;
        Ok(MatrixFactorization {
            a: self.a.embed(ring.ring())?,
            b: self.b.embed(ring.ring())?,
            f: self.f.embed(ring.ring())?,
            ring,
        })
    }

    /// Presentation of the cokernel of A over the hypersurface R = S/(f).
    pub fn cokernel(&self) -> Result<ModulePresentation> {
        let r = self.ring.make_quotient(std::slice::from_ref(&self.f))?;
        let matrix = self.a.embed(r.ring())?;
        ModulePresentation::new(matrix, r)
    }
}
