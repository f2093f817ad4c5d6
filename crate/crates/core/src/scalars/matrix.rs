use std::fmt;

use super::field::{CyclotomicField, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over one cyclotomic field.
///
/// Action and differential matrices follow the column convention: column `j`
/// holds the image of the `j`-th domain basis vector.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: &'static CyclotomicField,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: &'static CyclotomicField, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &'static CyclotomicField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries from `field`.
    pub fn from_rows(
        field: &'static CyclotomicField,
        cols: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for s in row {
                if s.root_order() != field.order() {
                    return Err(Error::FieldMismatch(field.order(), s.root_order()));
                }
                entries.push(s);
            }
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            field,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        self.entries[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        ExactMatrix {
            entries: self.entries.iter().map(|e| e * s).collect(),
            ..self.clone()
        }
    }

    pub fn checked_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(rhs)?;
        Ok(ExactMatrix {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        })
    }

    pub fn checked_sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(rhs)?;
        Ok(ExactMatrix {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        })
    }

    fn same_shape(&self, rhs: &ExactMatrix) -> Result<()> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.cols,
            });
        }
        Ok(())
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product `self ⊗ rhs`, rows and columns ordered lexicographically.
    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let mut out = Self::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(
        field: &'static CyclotomicField,
        cols: usize,
        blocks: &[ExactMatrix],
    ) -> Result<Self> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: b.cols,
                });
            }
            rows += b.rows;
            entries.extend(b.entries.iter().cloned());
        }
        Ok(ExactMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    /// Reduced row echelon form and pivot columns, by exact Gauss–Jordan elimination.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = eliminate(&mut rows, self.cols, true);
        let entries = rows.into_iter().flatten().collect();
        (
            ExactMatrix {
                rows: self.rows,
                cols: self.cols,
                field: self.field,
                entries,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| self.row(r).to_vec())
            .filter(|row| row.iter().any(|s| !s.is_zero()))
            .collect();
        eliminate(&mut rows, self.cols, false).len()
    }

    /// `(rank, kernel_dim)` with `rank + kernel_dim == cols`.
    pub fn rank_kernel(&self) -> (usize, usize) {
        let r = self.rank();
        (r, self.cols - r)
    }

    /// A basis of the right kernel `{v : Mv = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -red.get(r, free);
            }
            basis.push(v);
        }
        basis
    }
}

/// Row-reduces in place and returns pivot columns. With `full`, clears above pivots as well.
fn eliminate(rows: &mut [Vec<Scalar>], cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("pivot is nonzero");
        for x in rows[r][c..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("row r exists");
        let above: &mut [Vec<Scalar>] = if full { head } else { &mut [] };
        for row in below.iter_mut().chain(above.iter_mut()) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for k in c..cols {
                let pv = &pivot_row[k];
                if !pv.is_zero() {
                    row[k] -= &(&f * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ExactMatrix {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_is_annihilated() {
        let q = CyclotomicField::rationals();
        let m = ExactMatrix::from_rows(
            q,
            3,
            vec![
                vec![q.from_int(1), q.from_int(2), q.from_int(3)],
                vec![q.from_int(2), q.from_int(4), q.from_int(6)],
            ],
        )
        .unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.apply(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn ragged_rows_rejected() {
        let q = CyclotomicField::rationals();
        let err = ExactMatrix::from_rows(q, 2, vec![vec![q.one()]]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn kron_dimensions() {
        let q = CyclotomicField::rationals();
        let a = ExactMatrix::identity(q, 2);
        let b = ExactMatrix::zeros(q, 3, 1);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 2));
    }
}
