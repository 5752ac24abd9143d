//! Dense exact linear algebra over `CycScalar`.

use crate::cycfield::CycScalar;

pub type Vector = Vec<CycScalar>;
pub type Matrix = Vec<Vec<CycScalar>>;

pub fn zeros(n: usize) -> Vector {
    vec![CycScalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = CycScalar::one();
    v
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn is_zero_vec(v: &[CycScalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn add(a: &[CycScalar], b: &[CycScalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[CycScalar], b: &[CycScalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &CycScalar, v: &[CycScalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn axpy(acc: &mut [CycScalar], c: &CycScalar, v: &[CycScalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

pub fn mat_vec(m: &Matrix, v: &[CycScalar]) -> Vector {
    m.iter()
        .map(|row| {
            let mut acc = CycScalar::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = zeros(n);
            for (k, x) in row.iter().enumerate() {
                axpy(&mut out, x, &b[k]);
            }
            out
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let rows = m.len();
    if rows == 0 {
        return (m, vec![]);
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(vectors: &[Vector]) -> usize {
    rref(vectors.to_vec()).1.len()
}

/// Basis of the null space of `m` (as column vectors `x` with `m x = 0`).
pub fn kernel(m: &Matrix, ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(m.clone());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(ncols);
            v[f] = CycScalar::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Solves `sum_i x_i * columns[i] = target`, returning one solution if any.
pub fn solve_combination(columns: &[Vector], target: &[CycScalar]) -> Option<Vector> {
    let n = target.len();
    let k = columns.len();
    let aug: Matrix = (0..n)
        .map(|i| {
            let mut row: Vector = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(aug);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = zeros(k);
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let (r, pivots) = rref(aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vector]) -> Vec<Vector> {
    rref(vectors.to_vec()).0
}

pub fn in_span(basis: &[Vector], v: &[CycScalar]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    solve_combination(basis, v).is_some()
}

/// Intersection of two subspaces given by spanning sets.
pub fn intersect(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let n = a[0].len();
    // Solve sum x_i a_i - sum y_j b_j = 0.
    let cols: Vec<Vector> = a.iter().cloned().chain(b.iter().map(|v| scale(&CycScalar::from_int(-1), v))).collect();
    let m: Matrix = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let ker = kernel(&m, cols.len());
    let out: Vec<Vector> = ker
        .iter()
        .map(|x| {
            let mut v = zeros(n);
            for (xi, ai) in x.iter().zip(a) {
                axpy(&mut v, xi, ai);
            }
            v
        })
        .collect();
    span_basis(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| CycScalar::from_int(x)).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let m = vec![v(&[1, 2, 3]), v(&[2, 4, 6])];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(is_zero_vec(&mat_vec(&m, x)));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = vec![v(&[2, 1]), v(&[1, 1])];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        let x = solve_combination(&[v(&[1, 0]), v(&[1, 1])], &v(&[3, 2])).unwrap();
        assert_eq!(x, v(&[1, 2]));
        assert!(solve_combination(&[v(&[1, 1])], &v(&[1, 2])).is_none());
        assert!(inverse(&vec![v(&[1, 1]), v(&[1, 1])]).is_none());
    }

    #[test]
    fn intersections() {
        let a = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let b = vec![v(&[0, 1, 0]), v(&[0, 0, 1])];
        let i = intersect(&a, &b);
        assert_eq!(i, vec![v(&[0, 1, 0])]);
    }
}
