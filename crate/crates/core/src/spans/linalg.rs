//! Dense Gaussian elimination over F_p with byte-sized entries.

use crate::error::{AlgebraError, Result};
use crate::field::Field;

/// A dense matrix over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(AlgebraError::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, field.reduce(x));
            }
        }
        Ok(m)
    }

    /// The matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(AlgebraError::DimensionMismatch {
                    expected: rows,
                    got: c.len(),
                });
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % field.p());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        u32::from(self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x as u8;
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

pub fn rank_f_p(m: &Matrix) -> usize {
    let mut e = Echelon::new(m.field(), m.rows(), false);
    for j in 0..m.cols() {
        e.insert(&m.column(j)).expect("columns have the row count");
    }
    e.rank()
}

/// Coefficients `c` with `sum_j c_j * column_j == target`, if any exist.
pub fn solve_in_span(m: &Matrix, target: &[u32]) -> Result<Option<Vec<u32>>> {
    if target.len() != m.rows() {
        return Err(AlgebraError::DimensionMismatch {
            expected: m.rows(),
            got: target.len(),
        });
    }
    let mut e = Echelon::new(m.field(), m.rows(), true);
    let mut accepted = Vec::new();
    for j in 0..m.cols() {
        if e.insert(&m.column(j))?.is_some() {
            accepted.push(j);
        }
    }
    Ok(e.express(target)?.map(|combo| {
        let mut out = vec![0; m.cols()];
        for (k, c) in combo.into_iter().enumerate() {
            out[accepted[k]] = c;
        }
        out
    }))
}

#[derive(Debug, Clone)]
struct Row {
    pivot: usize,
    /// Normalized so that `vec[pivot] == 1`.
    vec: Vec<u8>,
    /// This row as a combination of the accepted vectors (empty when untracked).
    combo: Vec<u8>,
}

/// An incrementally built echelon basis of a subspace of F_p^dim.
///
/// Vectors are offered one at a time; those independent of the current span
/// are accepted and numbered `0, 1, ...`. With tracking enabled the basis can
/// express any vector in the span as a combination of the accepted ones.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    dim: usize,
    track: bool,
    rows: Vec<Row>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize, track: bool) -> Self {
        Echelon {
            field,
            dim,
            track,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduces `v` against the basis, returning the residual and, when
    /// tracking, the combination of accepted vectors that was subtracted.
    fn reduce(&self, v: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
        if v.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let f = self.field;
        let p = f.p();
        let mut r: Vec<u32> = v.iter().map(|x| x % p).collect();
        let mut used = if self.track {
            vec![0u32; self.rows.len()]
        } else {
            Vec::new()
        };
        for row in &self.rows {
            let c = r[row.pivot];
            if c == 0 {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(&row.vec).skip(row.pivot) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, u32::from(y)));
                }
            }
            if self.track {
                for (u, &y) in used.iter_mut().zip(&row.combo) {
                    if y != 0 {
                        *u = f.add(*u, f.mul(c, u32::from(y)));
                    }
                }
            }
        }
        Ok((r, used))
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        Ok(self.reduce(v)?.0.iter().all(|&x| x == 0))
    }

    /// The nonzero residual of `v` modulo the span, or `None` if `v` lies in it.
    pub fn residual(&self, v: &[u32]) -> Result<Option<Vec<u32>>> {
        let r = self.reduce(v)?.0;
        Ok(r.iter().any(|&x| x != 0).then_some(r))
    }

    /// Offers `v`; returns its acceptance index if it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> Result<Option<usize>> {
        let (r, used) = self.reduce(v)?;
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return Ok(None);
        };
        let f = self.field;
        let inv = f.inv(r[pivot])?;
        let index = self.rows.len();
        let vec = r.iter().map(|&x| f.mul(x, inv) as u8).collect();
        let combo = if self.track {
            let mut c: Vec<u8> = used.iter().map(|&u| f.mul(f.neg(u), inv) as u8).collect();
            c.push(inv as u8);
            for row in &mut self.rows {
                row.combo.push(0);
            }
            c
        } else {
            Vec::new()
        };
        self.rows.push(Row { pivot, vec, combo });
        Ok(Some(index))
    }

    /// Coefficients over the accepted vectors summing to `v`, if `v` is in the span.
    /// Requires tracking.
    pub fn express(&self, v: &[u32]) -> Result<Option<Vec<u32>>> {
        assert!(self.track, "express needs an echelon built with tracking");
        let (r, used) = self.reduce(v)?;
        Ok(r.iter().all(|&x| x == 0).then_some(used))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let m = Matrix::from_rows(f3(), &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(rank_f_p(&m), 3);
    }

    #[test]
    fn proportional_rows() {
        let m = Matrix::from_rows(f3(), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(rank_f_p(&m), 1);
    }

    #[test]
    fn solve_sum_of_two_columns() {
        let m = Matrix::from_rows(f3(), &[vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 0]]).unwrap();
        let sol = solve_in_span(&m, &[1, 1, 0]).unwrap().unwrap();
        assert_eq!(sol, vec![1, 1, 0]);
        assert_eq!(solve_in_span(&m, &[0, 0, 1]).unwrap(), None);
        assert!(solve_in_span(&m, &[1, 1]).is_err());
    }

    #[test]
    fn tracked_combinations_reconstruct() {
        let f = Field::new(5).unwrap();
        let vs = [
            vec![1, 2, 3, 4],
            vec![2, 4, 1, 0],
            vec![3, 1, 4, 4],
            vec![0, 0, 2, 3],
        ];
        let mut e = Echelon::new(f, 4, true);
        let accepted: Vec<_> = vs
            .iter()
            .filter_map(|v| e.insert(v).unwrap().map(|_| v.clone()))
            .collect();
        let target = [4, 3, 2, 1];
        if let Some(c) = e.express(&target).unwrap() {
            let mut sum = [0u32; 4];
            for (k, v) in accepted.iter().enumerate() {
                for i in 0..4 {
                    sum[i] = f.add(sum[i], f.mul(c[k], v[i]));
                }
            }
            assert_eq!(sum, target);
        } else {
            assert!(e.rank() < 4);
        }
    }
}
