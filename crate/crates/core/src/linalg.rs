//! Dense linear algebra over exact rationals, sized for homology of small surfaces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// `a += f * b`
pub fn axpy(a: &mut [Q], f: &Q, b: &[Q]) {
    if f.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += f * y;
        }
    }
}

/// `v^T M`
pub fn vec_mat(v: &[Q], m: &[Vec<Q>]) -> Vec<Q> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = zeros(cols);
    for (x, row) in v.iter().zip(m) {
        axpy(&mut out, x, row);
    }
    out
}

/// Reduced row-echelon form of a row set. The nonzero rows are kept, so the
/// struct is also the canonical basis of the row space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rref {
    ncols: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn new(mut rows: Vec<Vec<Q>>, ncols: usize) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[col].is_zero() {
                    let f = -row[col].clone();
                    axpy(row, &f, &pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Rref { ncols, rows, pivots }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the row space: zero at every pivot column.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = -v[p].clone();
                axpy(&mut v, &f, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coefficients of `v` in the RREF basis, assuming `v` lies in the row space.
    pub fn coordinates(&self, v: &[Q]) -> Vec<Q> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Basis of `{x : row . x = 0 for every row}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = zeros(self.ncols);
                x[f] = Q::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = -row[f].clone();
                }
                x
            })
            .collect()
    }
}

pub fn rank(rows: Vec<Vec<Q>>, ncols: usize) -> usize {
    Rref::new(rows, ncols).rank()
}

pub fn nullspace(rows: Vec<Vec<Q>>, ncols: usize) -> Vec<Vec<Q>> {
    Rref::new(rows, ncols).nullspace()
}

/// Intersection of two row spaces, as the annihilator of the sum of annihilators.
pub fn intersect(a: &Rref, b: &Rref) -> Rref {
    let n = a.ncols;
    let mut ann = a.nullspace();
    ann.extend(b.nullspace());
    Rref::new(nullspace(ann, n), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let a = Rref::new(vec![v(&[1, 1, 0]), v(&[0, 1, 1])], 3);
        let b = Rref::new(vec![v(&[1, 2, 1]), v(&[2, 2, 0]), v(&[3, 4, 1])], 3);
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn nullspace_and_reduce() {
        let r = Rref::new(vec![v(&[1, 1, 0]), v(&[0, 1, 1])], 3);
        let ns = r.nullspace();
        assert_eq!(ns, vec![v(&[1, -1, 1])]);
        assert!(r.contains(&v(&[2, 3, 1])));
        assert!(!r.contains(&v(&[0, 0, 1])));
        assert_eq!(r.coordinates(&v(&[2, 3, 1])), v(&[2, 3]));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Rref::new(vec![v(&[1, 0, 0]), v(&[0, 1, 0])], 3);
        let b = Rref::new(vec![v(&[0, 1, 0]), v(&[0, 0, 1])], 3);
        assert_eq!(intersect(&a, &b), Rref::new(vec![v(&[0, 1, 0])], 3));
        let empty = Rref::new(vec![], 3);
        assert_eq!(intersect(&a, &empty).rank(), 0);
    }

    #[test]
    fn zero_width() {
        let r = Rref::new(vec![vec![]], 0);
        assert_eq!(r.rank(), 0);
        assert!(r.nullspace().is_empty());
    }
}
