//! Dense exact linear algebra over `Q` and `Q(r2, r3)`.

use num_traits::{One, Zero};

use crate::scalars::{FieldElem, Rational};

pub trait FieldOps: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self) -> Self;
}

impl FieldOps for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl FieldOps for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn one() -> Self {
        FieldElem::one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.inverse().expect("pivot is nonzero")
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

/// Reduced row echelon form in place. Columns are scanned in `order`;
/// returns the pivot column of each nonzero row.
pub fn rref_with_order<T: FieldOps>(m: &mut Matrix<T>, order: &[usize]) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &col in order {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in 0..m[i].len() {
                    let delta = factor.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&delta);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

pub fn rref<T: FieldOps>(m: &mut Matrix<T>, cols: usize) -> Vec<usize> {
    let order: Vec<usize> = (0..cols).collect();
    rref_with_order(m, &order)
}

pub fn rank<T: FieldOps>(m: &Matrix<T>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut work = m.clone();
    rref(&mut work, cols).len()
}

/// Basis of `{x : m x = 0}` for an `rows x cols` matrix.
pub fn nullspace<T: FieldOps>(m: &Matrix<T>, cols: usize) -> Vec<Vec<T>> {
    let mut work = m.clone();
    let pivots = rref(&mut work, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![T::zero(); cols];
            v[fc] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = T::zero().sub(&work[row][fc]);
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<T: FieldOps>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.len();
    let mut aug: Matrix<T> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let order: Vec<usize> = (0..n).collect();
    let pivots = rref_with_order(&mut aug, &order);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `m x = b`. Returns a particular solution and a nullspace basis,
/// or `None` if inconsistent.
pub fn solve<T: FieldOps>(m: &Matrix<T>, b: &[T], cols: usize) -> Option<(Vec<T>, Vec<Vec<T>>)> {
    let mut aug: Matrix<T> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some((x, nullspace(m, cols)))
}
