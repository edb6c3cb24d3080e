//! Generators for the bundled matrix-factorization families over one- and
//! two-dimensional hypersurface rings, together with their declared spectra
//! and cyclic-module setups. Matrix entries are transcribed verbatim,
//! including signs; `MatrixFactorization::verify` is the transcription
//! oracle.

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::mf::MatrixFactorization;
use crate::modules::{PrimeDecl, SpectrumDeclaration};
use crate::poly::{PolyRing, Polynomial};
use crate::scalar::CoeffField;
use crate::tower::RingDescriptor;

/// Base ring, factored equation, and spectrum for a cyclic enumeration.
pub type CyclicSetup = (RingDescriptor, Vec<(String, u32)>, SpectrumDeclaration);

/// The named families exposed on the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    /// 3x3 pair over `Q[p,q,r]` factoring `p^2*q*r`.
    P2qr,
    /// 3x3 pair over `Q[x,y,s,t,u]` factoring `x^2*h`, `h = x^2*s + x*y*t + y^2*u`.
    X2h,
    /// 2x2 pair over `Q[x,y,a,b]` factoring `x*y`, indexed by `z_n = a^n*b`.
    XyZn,
    /// 4x4 block pair over `Q[x,y,z,a,b]` factoring `x^n + x^2*y*a + y^2*b`.
    XnYg,
    /// 2x2 pair over `Q[x,y]` factoring `x^2`; one-dimensional sanity anchor.
    AInf1d,
}

impl FamilyId {
    pub fn all() -> [FamilyId; 5] {
        [
            FamilyId::P2qr,
            FamilyId::X2h,
            FamilyId::XyZn,
            FamilyId::XnYg,
            FamilyId::AInf1d,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::P2qr => "p2qr",
            FamilyId::X2h => "x2h",
            FamilyId::XyZn => "xy-zn",
            FamilyId::XnYg => "xn-yg",
            FamilyId::AInf1d => "a-inf-1d",
        }
    }

    pub fn parse(s: &str) -> Result<FamilyId> {
        match s {
            "p2qr" => Ok(FamilyId::P2qr),
            "x2h" => Ok(FamilyId::X2h),
            "xy-zn" | "xy_zn" => Ok(FamilyId::XyZn),
            "xn-yg" | "xn_yg" => Ok(FamilyId::XnYg),
            "a-inf-1d" | "a_inf_1d" => Ok(FamilyId::AInf1d),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    /// Build the family member with symbolic parameters. `n` is only read by
    /// the `xn-yg` family (default 4).
    pub fn generate(&self, i: u32, n: Option<u32>, field: CoeffField) -> Result<MatrixFactorization> {
        match self {
            FamilyId::P2qr => gen_p2qr(i, field),
            FamilyId::X2h => gen_x2h(i, field),
            FamilyId::XyZn => gen_xy_zn(i, field),
            FamilyId::XnYg => gen_xn_yg(i, n.unwrap_or(4), field),
            FamilyId::AInf1d => gen_a_inf_dim1(i, field),
        }
    }

    /// The declared spectrum used for punctured-locus classification, over
    /// the family's base polynomial ring.
    pub fn spectrum(&self, field: CoeffField) -> (RingDescriptor, SpectrumDeclaration) {
        match self {
            FamilyId::P2qr => {
                let s = RingDescriptor::polynomial(&["p", "q", "r"], field);
                let v = |n: &str| s.ring().var(n).unwrap();
                let spec = SpectrumDeclaration {
                    primes: vec![
                        PrimeDecl {
                            name: "p".into(),
                            gens: vec![v("p")],
                            invert: vec![v("q"), v("r")],
                        },
                        PrimeDecl {
                            name: "q".into(),
                            gens: vec![v("q")],
                            invert: vec![v("p"), v("r")],
                        },
                        PrimeDecl {
                            name: "r".into(),
                            gens: vec![v("r")],
                            invert: vec![v("p"), v("q")],
                        },
                    ],
                    maximal: vec![v("p"), v("q"), v("r")],
                };
                (s, spec)
            }
            FamilyId::X2h => {
                let s = RingDescriptor::polynomial(&["x", "y", "s", "t", "u"], field);
                let v = |n: &str| s.ring().var(n).unwrap();
                let h = x2h_h(s.ring());
                let spec = SpectrumDeclaration {
                    primes: vec![
                        PrimeDecl {
                            name: "p".into(),
                            gens: vec![v("x")],
                            invert: vec![v("y"), h.clone()],
                        },
                        PrimeDecl {
                            name: "q".into(),
                            gens: vec![h],
                            invert: vec![v("x")],
                        },
                    ],
                    maximal: vec![v("x"), v("y")],
                };
                (s, spec)
            }
            FamilyId::XyZn => {
                let s = RingDescriptor::polynomial(&["x", "y", "a", "b"], field);
                let v = |n: &str| s.ring().var(n).unwrap();
                let spec = SpectrumDeclaration {
                    primes: vec![PrimeDecl {
                        name: "p".into(),
                        gens: vec![v("x"), v("y"), v("b")],
                        invert: vec![v("a")],
                    }],
                    maximal: vec![v("x"), v("y"), v("a"), v("b")],
                };
                (s, spec)
            }
            FamilyId::XnYg => {
                let s = RingDescriptor::polynomial(&["x", "y", "z", "a", "b"], field);
                let v = |n: &str| s.ring().var(n).unwrap();
                let spec = SpectrumDeclaration {
                    primes: vec![PrimeDecl {
                        name: "p".into(),
                        gens: vec![v("x"), v("y")],
                        invert: vec![v("z"), v("a"), v("b")],
                    }],
                    maximal: vec![v("x"), v("y"), v("z"), v("a"), v("b")],
                };
                (s, spec)
            }
            FamilyId::AInf1d => {
                let s = RingDescriptor::polynomial(&["x", "y"], field);
                let v = |n: &str| s.ring().var(n).unwrap();
                let spec = SpectrumDeclaration {
                    primes: vec![PrimeDecl {
                        name: "p".into(),
                        gens: vec![v("x")],
                        invert: vec![v("y")],
                    }],
                    maximal: vec![v("x"), v("y")],
                };
                (s, spec)
            }
        }
    }

    /// Base ring, factored hypersurface equation, and spectrum for cyclic
    /// enumeration. Families whose classification needs a non-principal
    /// prime have no finite cyclic setup here.
    pub fn cyclic_setup(&self, field: CoeffField) -> Option<CyclicSetup> {
        match self {
            FamilyId::P2qr => {
                let (s, spec) = self.spectrum(field);
                Some((s, vec![("p".into(), 2), ("q".into(), 1), ("r".into(), 1)], spec))
            }
            FamilyId::X2h => {
                // For divisor bookkeeping the irreducible h is modeled as an
                // independent variable; the matrix family expands it instead.
                let s = RingDescriptor::polynomial(&["x", "h"], field);
                let v = |n: &str| s.ring().var(n).unwrap();
                let spec = SpectrumDeclaration {
                    primes: vec![
                        PrimeDecl {
                            name: "p".into(),
                            gens: vec![v("x")],
                            invert: vec![v("h")],
                        },
                        PrimeDecl {
                            name: "q".into(),
                            gens: vec![v("h")],
                            invert: vec![v("x")],
                        },
                    ],
                    maximal: vec![v("x"), v("h")],
                };
                Some((s, vec![("x".into(), 2), ("h".into(), 1)], spec))
            }
            FamilyId::AInf1d => {
                let (s, spec) = self.spectrum(field);
                Some((s, vec![("x".into(), 2)], spec))
            }
            FamilyId::XyZn | FamilyId::XnYg => None,
        }
    }
}

fn mat(ring: &PolyRing, rows: Vec<Vec<Polynomial>>) -> PolyMatrix {
    PolyMatrix::from_rows(ring, rows).expect("family matrix shape")
}

/// The 3x3 pair factoring p^2*q*r:
///
/// ```text
/// A_i = (p  0   r^i)     B_i = (p*q*r  0    -q*r^i)
///       (0  p*q  p  )           (0     p*r   -p   )
///       (0  0   p*r )           (0     0     p*q  )
/// ```
pub fn gen_p2qr(i: u32, field: CoeffField) -> Result<MatrixFactorization> {
    if i < 1 {
        return Err(Error::BadFamilyIndex("i >= 1"));
    }
    let s = RingDescriptor::polynomial(&["p", "q", "r"], field);
    let ring = s.ring().clone();
    let p = ring.var("p")?;
    let q = ring.var("q")?;
    let r = ring.var("r")?;
    let zero = ring.zero();
    let ri = r.pow(i);
    let a = mat(
        &ring,
        vec![
            vec![p.clone(), zero.clone(), ri.clone()],
            vec![zero.clone(), p.mul(&q)?, p.clone()],
            vec![zero.clone(), zero.clone(), p.mul(&r)?],
        ],
    );
    let b = mat(
        &ring,
        vec![
            vec![p.mul(&q)?.mul(&r)?, zero.clone(), q.mul(&ri)?.neg()],
            vec![zero.clone(), p.mul(&r)?, p.neg()],
            vec![zero.clone(), zero.clone(), p.mul(&q)?],
        ],
    );
    let f = p.pow(2).mul(&q)?.mul(&r)?;
    MatrixFactorization::new(a, b, f, s)
}

fn x2h_h(ring: &PolyRing) -> Polynomial {
    let x = ring.var("x").unwrap();
    let y = ring.var("y").unwrap();
    let s = ring.var("s").unwrap();
    let t = ring.var("t").unwrap();
    let u = ring.var("u").unwrap();
    x.pow(2)
        .mul(&s)
        .and_then(|a| a.add(&x.mul(&y).unwrap().mul(&t).unwrap()))
        .and_then(|a| a.add(&y.pow(2).mul(&u).unwrap()))
        .expect("same ring")
}

/// The 3x3 pair factoring x^2*h with h = x^2*s + x*y*t + y^2*u symbolic:
///
/// ```text
/// A_i = (x  0    y^i)    B_i = (x*h  -y^i*h  y^(i+1))
///       (0  x*y  x  )          (0    0       x      )
///       (0  x*h  0  )          (0    x*h     -x*y   )
/// ```
pub fn gen_x2h(i: u32, field: CoeffField) -> Result<MatrixFactorization> {
    let sd = RingDescriptor::polynomial(&["x", "y", "s", "t", "u"], field);
    let ring = sd.ring().clone();
    gen_x2h_with(i, &sd, &ring.var("s")?, &ring.var("t")?, &ring.var("u")?)
}

/// Same pair with the coefficients of h bound to given elements of an
/// ambient ring containing x and y.
pub fn gen_x2h_with(
    i: u32,
    ambient: &RingDescriptor,
    s: &Polynomial,
    t: &Polynomial,
    u: &Polynomial,
) -> Result<MatrixFactorization> {
    if i < 1 {
        return Err(Error::BadFamilyIndex("i >= 1"));
    }
    let ring = ambient.ring().clone();
    let x = ring.var("x")?;
    let y = ring.var("y")?;
    let h = x
        .pow(2)
        .mul(&s.embed(&ring)?)?
        .add(&x.mul(&y)?.mul(&t.embed(&ring)?)?)?
        .add(&y.pow(2).mul(&u.embed(&ring)?)?)?;
    let zero = ring.zero();
    let yi = y.pow(i);
    let a = mat(
        &ring,
        vec![
            vec![x.clone(), zero.clone(), yi.clone()],
            vec![zero.clone(), x.mul(&y)?, x.clone()],
            vec![zero.clone(), x.mul(&h)?, zero.clone()],
        ],
    );
    let b = mat(
        &ring,
        vec![
            vec![x.mul(&h)?, yi.mul(&h)?.neg(), y.pow(i + 1)],
            vec![zero.clone(), zero.clone(), x.clone()],
            vec![zero.clone(), x.mul(&h)?, x.mul(&y)?.neg()],
        ],
    );
    let f = x.pow(2).mul(&h)?;
    MatrixFactorization::new(a, b, f, ambient.clone())
}

/// The 2x2 pair factoring x*y with off-diagonal z_n = a^n*b:
///
/// ```text
/// A_n = (x  z_n)    B_n = (y  z_n)
///       (0  -y )          (0  -x )
/// ```
pub fn gen_xy_zn(n: u32, field: CoeffField) -> Result<MatrixFactorization> {
    let s = RingDescriptor::polynomial(&["x", "y", "a", "b"], field);
    let ring = s.ring().clone();
    gen_xy_zn_with(n, &s, &ring.var("a")?, &ring.var("b")?)
}

/// Same pair with a and b bound to given elements of an ambient ring
/// containing x and y.
pub fn gen_xy_zn_with(
    n: u32,
    ambient: &RingDescriptor,
    a_elem: &Polynomial,
    b_elem: &Polynomial,
) -> Result<MatrixFactorization> {
    if n < 1 {
        return Err(Error::BadFamilyIndex("n >= 1"));
    }
    let ring = ambient.ring().clone();
    let x = ring.var("x")?;
    let y = ring.var("y")?;
    let zn = a_elem.embed(&ring)?.pow(n).mul(&b_elem.embed(&ring)?)?;
    let zero = ring.zero();
    let a = mat(
        &ring,
        vec![vec![x.clone(), zn.clone()], vec![zero.clone(), y.neg()]],
    );
    let b = mat(
        &ring,
        vec![vec![y.clone(), zn], vec![zero, x.neg()]],
    );
    let f = x.mul(&y)?;
    MatrixFactorization::new(a, b, f, ambient.clone())
}

/// The 4x4 block pair factoring f = x^n + x^2*y*a + y^2*b (so f = x^n + y*g
/// with g = x^2*a + y*b), for n >= 4 and i >= 0:
///
/// ```text
/// A_i# = (A_i  -y*E)   B_i# = (B_i   y*E)     A_i = (x^2  x*z^i )
///        (g*E   B_i)          (-g*E  A_i)           (0    -x^2  )
///                                                B_i = (x^(n-2)  x^(n-3)*z^i)
///                                                      (0        -x^(n-2)  )
/// ```
pub fn gen_xn_yg(i: u32, n: u32, field: CoeffField) -> Result<MatrixFactorization> {
    let s = RingDescriptor::polynomial(&["x", "y", "z", "a", "b"], field);
    let ring = s.ring().clone();
    gen_xn_yg_with(i, n, &s, &ring.var("a")?, &ring.var("b")?)
}

/// Same pair with a and b bound to given elements of an ambient ring
/// containing x, y and z.
pub fn gen_xn_yg_with(
    i: u32,
    n: u32,
    ambient: &RingDescriptor,
    a_elem: &Polynomial,
    b_elem: &Polynomial,
) -> Result<MatrixFactorization> {
    if n < 4 {
        return Err(Error::BadFamilyIndex("n >= 4"));
    }
    let ring = ambient.ring().clone();
    let x = ring.var("x")?;
    let y = ring.var("y")?;
    let z = ring.var("z")?;
    let a_sym = a_elem.embed(&ring)?;
    let b_sym = b_elem.embed(&ring)?;
    let zero = ring.zero();
    let zi = z.pow(i);
    let inner_a = mat(
        &ring,
        vec![
            vec![x.pow(2), x.mul(&zi)?],
            vec![zero.clone(), x.pow(2).neg()],
        ],
    );
    let inner_b = mat(
        &ring,
        vec![
            vec![x.pow(n - 2), x.pow(n - 3).mul(&zi)?],
            vec![zero.clone(), x.pow(n - 2).neg()],
        ],
    );
    let g = x.pow(2).mul(&a_sym)?.add(&y.mul(&b_sym)?)?;
    let ye = PolyMatrix::scalar(&ring, &y, 2);
    let ge = PolyMatrix::scalar(&ring, &g, 2);
    let neg_ye = ye.map(|p| p.neg());
    let neg_ge = ge.map(|p| p.neg());
    let a_sharp = PolyMatrix::block_2x2(&inner_a, &neg_ye, &ge, &inner_b)?;
    let b_sharp = PolyMatrix::block_2x2(&inner_b, &ye, &neg_ge, &inner_a)?;
    let f = x.pow(n).add(&y.mul(&g)?)?;
    MatrixFactorization::new(a_sharp, b_sharp, f, ambient.clone())
}

/// The classical one-dimensional 2x2 anchor factoring x^2:
///
/// ```text
/// A_j = (x  y^j)    B_j = (x  -y^j)
///       (0  x  )          (0  x   )
/// ```
pub fn gen_a_inf_dim1(j: u32, field: CoeffField) -> Result<MatrixFactorization> {
    if j < 1 {
        return Err(Error::BadFamilyIndex("j >= 1"));
    }
    let s = RingDescriptor::polynomial(&["x", "y"], field);
    let ring = s.ring().clone();
    let x = ring.var("x")?;
    let y = ring.var("y")?;
    let zero = ring.zero();
    let a = mat(
        &ring,
        vec![vec![x.clone(), y.pow(j)], vec![zero.clone(), x.clone()]],
    );
    let b = mat(
        &ring,
        vec![vec![x.clone(), y.pow(j).neg()], vec![zero, x.clone()]],
    );
    let f = x.pow(2);
    MatrixFactorization::new(a, b, f, s)
}
