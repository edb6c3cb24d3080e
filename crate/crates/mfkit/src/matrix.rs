//! Dense matrices of polynomials, sized for desk-scale work: products,
//! block sums, determinants (cofactor below 5x5, fraction-free Bareiss
//! above), minor ideals, and a canonical fingerprint under simultaneous
//! row/column permutation.

use crate::error::{Error, Result};
use crate::groebner::exact_div;
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: PolyRing,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(ring: &PolyRing, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn from_rows(ring: &PolyRing, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for e in row {
                if e.ring() != ring {
                    return Err(Error::MixedRings);
                }
                data.push(e);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn scalar(ring: &PolyRing, f: &Polynomial, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, f.clone());
        }
        m
    }

    pub fn identity(ring: &PolyRing, n: usize) -> Self {
        Self::scalar(ring, &ring.one(), n)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.data[r * self.cols + c] = p;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> Self {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Re-express every entry in an extension ring.
    pub fn embed(&self, target: &PolyRing) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|p| p.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    if self.get(i, k).is_zero() || other.get(k, j).is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn block_diag(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// 2x2 block matrix [[a, b], [c, d]]; all blocks square of equal size.
    pub fn block_2x2(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> Result<PolyMatrix> {
        let n = a.rows;
        for m in [a, b, c, d] {
            if m.rows != n || m.cols != n {
                return Err(Error::DimensionMismatch("block sizes differ".into()));
            }
        }
        let ring = a.ring.clone();
        let mut out = PolyMatrix::zero(&ring, 2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a.get(i, j).clone());
                out.set(i, n + j, b.get(i, j).clone());
                out.set(n + i, j, c.get(i, j).clone());
                out.set(n + i, n + j, d.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.ring, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn delete_row_col(&self, row: usize, col: usize) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != col).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square".into()));
        }
        if self.rows <= 4 {
            Ok(self.det_cofactor())
        } else {
            Ok(self.det_bareiss())
        }
    }

    fn det_cofactor(&self) -> Polynomial {
        let n = self.rows;
        match n {
            0 => self.ring.one(),
            1 => self.get(0, 0).clone(),
            _ => {
                let mut acc = self.ring.zero();
                for j in 0..n {
                    let e = self.get(0, j);
                    if e.is_zero() {
                        continue;
                    }
                    let minor = self.delete_row_col(0, j).det_cofactor();
                    let term = e.mul(&minor).expect("same ring");
                    acc = if j % 2 == 0 {
                        acc.add(&term).expect("same ring")
                    } else {
                        acc.sub(&term).expect("same ring")
                    };
                }
                acc
            }
        }
    }

    /// Fraction-free elimination; every division is exact, which keeps
    /// coefficient growth polynomial.
    fn det_bareiss(&self) -> Polynomial {
        let n = self.rows;
        let mut w: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev = self.ring.one();
        for k in 0..n - 1 {
            if w[k][k].is_zero() {
                let swap = (k + 1..n).find(|&l| !w[l][k].is_zero());
                match swap {
                    Some(l) => {
                        w.swap(k, l);
                        sign_flip = !sign_flip;
                    }
                    None => return self.ring.zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = w[k][k]
                        .mul(&w[i][j])
                        .and_then(|a| w[i][k].mul(&w[k][j]).and_then(|b| a.sub(&b)))
                        .expect("same ring");
                    w[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
                }
            }
            prev = w[k][k].clone();
        }
        let det = w[n - 1][n - 1].clone();
        if sign_flip {
            det.neg()
        } else {
            det
        }
    }

    /// All s-minors, deterministically ordered by row/column subsets.
    pub fn minors(&self, s: usize) -> Result<Vec<Polynomial>> {
        if s < 1 || s > self.rows.min(self.cols) {
            return Err(Error::MinorSizeOutOfRange {
                size: s,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let row_sets = combinations(self.rows, s);
        let col_sets = combinations(self.cols, s);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.submatrix(rs, cs).determinant()?);
            }
        }
        Ok(out)
    }

    /// Canonical fingerprint under simultaneous row/column permutation
    /// (conjugation by a permutation matrix), via color refinement on index
    /// signatures. Equal fingerprints certify equivalence; the converse can
    /// miss exotic automorphisms, which is adequate for the block-diagonal
    /// comparisons the suite performs.
    pub fn conjugation_fingerprint(&self) -> String {
        assert!(self.is_square(), "fingerprint defined for square matrices");
        let n = self.rows;
        let mut colors: Vec<String> = (0..n).map(|i| self.get(i, i).to_string()).collect();
        for _ in 0..n {
            let mut next = Vec::with_capacity(n);
            for i in 0..n {
                let mut row_sig: Vec<String> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| format!("{}~{}", self.get(i, j), colors[j]))
                    .collect();
                row_sig.sort();
                let mut col_sig: Vec<String> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| format!("{}~{}", self.get(j, i), colors[j]))
                    .collect();
                col_sig.sort();
                next.push(format!("{}|{}|{}", colors[i], row_sig.join(","), col_sig.join(",")));
            }
            // Renumber to keep strings short.
            let mut palette: Vec<String> = next.clone();
            palette.sort();
            palette.dedup();
            colors = next
                .iter()
                .map(|c| format!("{:04}", palette.binary_search(c).unwrap()))
                .collect();
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| colors[a].cmp(&colors[b]).then(a.cmp(&b)));
        let mut s = String::new();
        for &i in &perm {
            s.push('[');
            for &j in &perm {
                s.push_str(&self.get(i, j).to_string());
                s.push(';');
            }
            s.push(']');
        }
        s
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly_parse;
    use crate::scalar::CoeffField;

    fn ring() -> PolyRing {
        PolyRing::new(&["x", "y", "z"], CoeffField::Rational)
    }

    fn m(r: &PolyRing, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r,
            rows.iter()
                .map(|row| row.iter().map(|s| poly_parse(s, r).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn product_shapes() {
        let r = ring();
        let a = m(&r, &[&["x", "0"], &["0", "y"]]);
        let b = m(&r, &[&["y", "0"], &["0", "x"]]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.get(0, 0).to_string(), "x*y");
        assert_eq!(p.get(1, 1).to_string(), "x*y");
        assert!(a.mul(&PolyMatrix::zero(&r, 3, 3)).is_err());
    }

    #[test]
    fn determinant_routes_agree() {
        // Bareiss vs cofactor on a 5x5 with repeated structure.
        let r = ring();
        let entries = [
            ["x", "y", "0", "1", "z"],
            ["0", "x", "y", "0", "1"],
            ["z", "0", "x", "y", "0"],
            ["0", "z", "0", "x", "y"],
            ["y", "0", "z", "0", "x"],
        ];
        let rows: Vec<&[&str]> = entries.iter().map(|r| &r[..]).collect();
        let a = m(&r, &rows);
        let bareiss = a.determinant().unwrap();
        let cof = a.det_cofactor();
        assert_eq!(bareiss, cof);
    }

    #[test]
    fn determinant_with_zero_pivot() {
        let r = ring();
        let entries = [
            ["0", "x", "0", "0", "0"],
            ["x", "0", "0", "0", "0"],
            ["0", "0", "y", "0", "0"],
            ["0", "0", "0", "y", "0"],
            ["0", "0", "0", "0", "z"],
        ];
        let rows: Vec<&[&str]> = entries.iter().map(|r| &r[..]).collect();
        let a = m(&r, &rows);
        assert_eq!(a.determinant().unwrap(), a.det_cofactor());
    }

    #[test]
    fn minors_of_scaled_identity() {
        let r = ring();
        let f = poly_parse("x*y", &r).unwrap();
        let a = PolyMatrix::scalar(&r, &f, 2);
        let m2 = a.minors(2).unwrap();
        assert_eq!(m2.len(), 1);
        assert_eq!(m2[0].to_string(), "x^2*y^2");
        assert!(a.minors(3).is_err());
        assert!(a.minors(0).is_err());
    }

    #[test]
    fn fingerprint_invariant_under_conjugation() {
        let r = ring();
        let a = m(&r, &[&["x", "y"], &["0", "z"]]);
        // Conjugate by the swap permutation.
        let b = m(&r, &[&["z", "0"], &["y", "x"]]);
        assert_eq!(a.conjugation_fingerprint(), b.conjugation_fingerprint());
        let c = m(&r, &[&["x", "z"], &["0", "y"]]);
        assert_ne!(a.conjugation_fingerprint(), c.conjugation_fingerprint());
    }
}
