//! Dense exact linear algebra over a small finite field.
//!
//! Everything here is deterministic: pivots are always the first usable row
//! in column order, so reduced echelon forms and null-space bases are
//! canonical for a given input.

use crate::error::{Error, Result};
use crate::gfq::{FieldElem, FieldSpec};

/// A dense row-major matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatF {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl MatF {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> MatF {
        MatF { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> MatF {
        let mut m = MatF::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<FieldElem>]) -> MatF {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        MatF { field, rows: r, cols: c, data }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> MatF {
        let mut t = MatF::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &MatF) -> MatF {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = MatF::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.get(r, c) + a * rhs.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    acc = acc + self.get(r, c) * v[c];
                }
                acc
            })
            .collect()
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot = match (r..self.rows).find(|&i| !self.get(i, c).is_zero()) {
                None => continue,
                Some(i) => i,
            };
            if pivot != r {
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), self.get(pivot, k));
                    self.set(r, k, b);
                    self.set(pivot, k, a);
                }
            }
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for k in 0..self.cols {
                let v = self.get(r, k) * inv;
                self.set(r, k, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for k in 0..self.cols {
                    let v = self.get(i, k) - factor * self.get(r, k);
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Canonical basis of `{ v : self * v = 0 }`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<FieldElem>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if pivot_set.contains(&fc) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -m.get(prow, fc);
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix; errors when singular.
    pub fn inverse(&self) -> Result<MatF> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let mut aug = MatF::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, self.field.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::Singular);
        }
        let mut out = MatF::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(out)
    }

    pub fn det(&self) -> FieldElem {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let pivot = match (c..n).find(|&i| !m.get(i, c).is_zero()) {
                None => return self.field.zero(),
                Some(i) => i,
            };
            if pivot != c {
                for k in 0..n {
                    let (a, b) = (m.get(c, k), m.get(pivot, k));
                    m.set(c, k, b);
                    m.set(pivot, k, a);
                }
                det = -det;
            }
            det = det * m.get(c, c);
            let inv = m.get(c, c).inv().expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = m.get(i, c) * inv;
                if factor.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = m.get(i, k) - factor * m.get(c, k);
                    m.set(i, k, v);
                }
            }
        }
        det
    }
}

/// Reduces `rows` to a canonical spanning set (nonzero RREF rows); returns
/// the rows together with their pivot columns.
pub fn row_basis(field: FieldSpec, rows: &[Vec<FieldElem>]) -> (Vec<Vec<FieldElem>>, Vec<usize>) {
    if rows.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut m = MatF::from_rows(field, rows);
    let pivots = m.rref();
    let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
    (basis, pivots)
}

/// Reduces `v` against RREF rows with the given pivot columns; returns the
/// remainder and the coefficient used at each pivot row.
pub fn reduce_against(
    v: &[FieldElem],
    basis: &[Vec<FieldElem>],
    pivots: &[usize],
) -> (Vec<FieldElem>, Vec<FieldElem>) {
    let mut rem = v.to_vec();
    let mut coeffs = Vec::with_capacity(basis.len());
    for (row, &pc) in basis.iter().zip(pivots) {
        let c = rem[pc];
        coeffs.push(c);
        if c.is_zero() {
            continue;
        }
        for (r, b) in rem.iter_mut().zip(row) {
            *r = *r - c * *b;
        }
    }
    (rem, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldSpec;

    fn f9() -> FieldSpec {
        FieldSpec::new(3, 2).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let f = f9();
        // A deterministic family of invertible matrices.
        for seed in 0..20u16 {
            let a = f.from_code(seed % 9).unwrap();
            let b = f.from_code((seed + 3) % 9).unwrap();
            let m = MatF::from_rows(
                f,
                &[
                    vec![f.one(), a, b],
                    vec![f.zero(), f.one(), a * b + f.one()],
                    vec![a, f.zero(), f.one()],
                ],
            );
            if m.det().is_zero() {
                assert!(m.inverse().is_err());
                continue;
            }
            let inv = m.inverse().unwrap();
            assert_eq!(m.mul(&inv), MatF::identity(f, 3));
            assert_eq!(inv.mul(&m), MatF::identity(f, 3));
        }
    }

    #[test]
    fn null_space_kills_matrix() {
        let f = f9();
        let g = f.gen();
        let m = MatF::from_rows(
            f,
            &[
                vec![f.one(), g, f.zero(), g * g],
                vec![f.zero(), f.zero(), f.one(), g],
                vec![f.one(), g, f.one(), g * g + g],
            ],
        );
        let ns = m.null_space();
        assert_eq!(ns.len(), m.cols() - m.rank());
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn rref_is_idempotent() {
        let f = f9();
        let g = f.gen();
        let mut m = MatF::from_rows(
            f,
            &[vec![g, g * g, f.one()], vec![g * g, f.one(), g], vec![f.zero(), g, g]],
        );
        m.rref();
        let snapshot = m.clone();
        m.rref();
        assert_eq!(m, snapshot);
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let f = f9();
        let m = MatF::from_rows(f, &[vec![f.one(), f.one()], vec![f.one(), f.one()]]);
        assert_eq!(m.inverse().unwrap_err(), Error::Singular);
        assert!(m.det().is_zero());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn reduce_against_basis() {
        let f = f9();
        let rows = vec![
            vec![f.one(), f.gen(), f.zero()],
            vec![f.zero(), f.one(), f.one()],
        ];
        let (basis, pivots) = row_basis(f, &rows);
        assert_eq!(pivots, vec![0, 1]);
        let v = vec![f.one(), f.gen() + f.one(), f.one()];
        let (rem, _) = reduce_against(&v, &basis, &pivots);
        assert!(rem[0].is_zero() && rem[1].is_zero());
    }
}
