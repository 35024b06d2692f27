//! Exact dense linear algebra over [`Scalar`].
//!
//! Vectors are plain `Vec<Scalar>`; a matrix is a slice of row vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// A subspace kept in reduced row-echelon form.
///
/// Rows are sorted by pivot column, every pivot is 1 and pivot columns are
/// zero in all other rows.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

fn first_nonzero(v: &[Scalar]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi -= &(a * xi);
        }
    }
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(n: usize, rows: impl IntoIterator<Item = &'a Vec<Scalar>>) -> Self {
        let mut e = Echelon::new(n);
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    /// Remainder of `v` modulo the subspace; zero exactly when `v` lies in it.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n, "vector length does not match the ambient space");
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let a = v[p].clone();
                axpy(&mut v, &a, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        first_nonzero(&self.reduce(v.to_vec())).is_none()
    }

    /// Adds `v` to the subspace; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = first_nonzero(&v) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for c in v.iter_mut().skip(p) {
            if !c.is_zero() {
                *c *= &inv;
            }
        }
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let a = row[p].clone();
                axpy(row, &a, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

/// Reduced row-echelon form of a matrix with `n` columns.
pub fn rref(rows: &[Vec<Scalar>], n: usize) -> Echelon {
    Echelon::from_rows(n, rows)
}

pub fn rank(rows: &[Vec<Scalar>], n: usize) -> usize {
    rref(rows, n).rank()
}

/// Basis of `{x : A x = 0}` in reduced row-echelon form, where `A` has `n`
/// columns.
///
/// Eliminating with the column order reversed makes the free columns the
/// leading ones, so the kernel vectors read off directly are already reduced.
pub fn kernel(rows: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
    let reversed: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().rev().cloned().collect()).collect();
    let e = rref(&reversed, n);
    let mut is_pivot = vec![false; n];
    for &p in e.pivots() {
        is_pivot[n - 1 - p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Scalar::zero(); n];
            x[f] = Scalar::one();
            for (row, &p) in e.rows().iter().zip(e.pivots()) {
                let c = &row[n - 1 - f];
                if !c.is_zero() {
                    x[n - 1 - p] = -c;
                }
            }
            x
        })
        .collect()
}

/// `n - rank(A)`, without building a basis.
pub fn nullity(rows: &[Vec<Scalar>], n: usize) -> usize {
    n - rank(rows, n)
}

/// Some solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve(rows: &[Vec<Scalar>], b: &[Scalar], n: usize) -> Option<Vec<Scalar>> {
    assert_eq!(rows.len(), b.len());
    let augmented: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let e = rref(&augmented, n + 1);
    let mut x = vec![Scalar::zero(); n];
    for (row, &p) in e.rows().iter().zip(e.pivots()) {
        if p == n {
            return None;
        }
        x[p] = row[n].clone();
    }
    Some(x)
}

/// `A x` for a matrix given by rows.
pub fn mat_vec(rows: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
    rows.iter()
        .map(|r| {
            let mut acc = Scalar::zero();
            for (a, b) in r.iter().zip(x) {
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
        .collect()
}

/// Each rational row scaled to integers, or `None` when a residue appears.
fn integer_rows(rows: &[Vec<Scalar>]) -> Option<Vec<Vec<BigInt>>> {
    rows.iter()
        .map(|r| {
            let mut lcm = BigInt::one();
            for c in r {
                lcm = lcm.lcm(c.as_rational()?.denom());
            }
            r.iter()
                .map(|c| c.as_rational().map(|q| q.numer() * (&lcm / q.denom())))
                .collect()
        })
        .collect()
}

/// Divides a nonzero integer row by the gcd of its entries.
fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if !g.is_zero() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

/// Rank by integer elimination, keeping every row primitive. Same answer
/// as [`rank`], but avoids a gcd per operation on rational input with large
/// entries. Residue input takes the ordinary path.
pub fn rank_fraction_free(rows: &[Vec<Scalar>], n: usize) -> usize {
    let Some(mut a) = integer_rows(rows) else {
        return rank(rows, n);
    };
    for row in a.iter_mut() {
        make_primitive(row);
    }
    let mut r = 0;
    for c in 0..n {
        // the shortest pivot keeps the products small
        let Some(p) = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].bits()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in rest.iter_mut().filter(|row| !row[c].is_zero()) {
            let g = pivot[c].gcd(&row[c]);
            let (fp, fr) = (&pivot[c] / &g, &row[c] / &g);
            row[c] = BigInt::zero();
            for j in c + 1..n {
                let mut x = &fp * &row[j];
                if !pivot[j].is_zero() {
                    x -= &fr * &pivot[j];
                }
                row[j] = x;
            }
            make_primitive(row);
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Basis of `{x : A x = 0}` in reduced echelon form, like [`kernel`], but
/// eliminating over the integers with primitive rows and forming fractions
/// only at the end. Residue input takes the ordinary path.
pub fn kernel_fraction_free(rows: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
    let Some(mut a) = integer_rows(rows) else {
        return kernel(rows, n);
    };
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    for row in a.iter_mut() {
        make_primitive(row);
    }
    // Gauss-Jordan, pivot columns taken from the right so that the free
    // columns come first, matching `kernel`
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in (0..n).rev() {
        let Some(p) = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].bits()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pivot[c].gcd(&row[c]);
            let (fp, fr) = (&pivot[c] / &g, &row[c] / &g);
            for (y, x) in row.iter_mut().zip(&pivot) {
                let mut v = &fp * &*y;
                if !x.is_zero() {
                    v -= &fr * x;
                }
                *y = v;
            }
            make_primitive(row);
        }
        pivots.push((r, c));
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut is_pivot = vec![false; n];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    let basis: Vec<Vec<Scalar>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Scalar::zero(); n];
            x[f] = Scalar::one();
            for &(i, c) in &pivots {
                if !a[i][f].is_zero() {
                    x[c] = Scalar::from(BigRational::new(-a[i][f].clone(), a[i][c].clone()));
                }
            }
            x
        })
        .collect();
    Echelon::from_rows(n, &basis).into_rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Scalar> {
        x.iter().map(|&c| Scalar::from(c)).collect()
    }

    #[test]
    fn echelon_is_reduced() {
        let e = Echelon::from_rows(3, &[v(&[0, 2, 4]), v(&[1, 1, 1]), v(&[1, 3, 5])]);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
        assert_eq!(e.rows()[0], v(&[1, 0, -1]));
        assert_eq!(e.rows()[1], v(&[0, 1, 2]));
        assert!(e.contains(&v(&[2, 5, 8])));
        assert!(!e.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn kernel_and_solve() {
        let a = vec![v(&[1, 2, 3]), v(&[2, 4, 6])];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        // reduced: leading ones in distinct columns, zero elsewhere in those columns
        assert_eq!(Echelon::from_rows(3, &k).rows(), &k[..]);
        assert_eq!(nullity(&a, 3), 2);
        for x in &k {
            assert!(mat_vec(&a, x).iter().all(Scalar::is_zero));
        }
        let x = solve(&a, &v(&[6, 12]), 3).unwrap();
        assert_eq!(mat_vec(&a, &x), v(&[6, 12]));
        assert!(solve(&a, &v(&[1, 1]), 3).is_none());
    }

    #[test]
    fn rational_entries() {
        let a = vec![v(&[3, 1]), v(&[1, 2])];
        let x = solve(&a, &v(&[1, 0]), 2).unwrap();
        assert_eq!(x, vec![Scalar::rational(2, 5), Scalar::rational(-1, 5)]);
        assert_eq!(rank(&a, 2), 2);
        assert!(kernel(&a, 2).is_empty());
    }

    #[test]
    fn fraction_free_rank_agrees() {
        let cases = [
            vec![v(&[0, 2, 4]), v(&[1, 1, 1]), v(&[1, 3, 5])],
            vec![v(&[0, 0, 3]), v(&[0, 0, 1]), v(&[0, 5, 0]), v(&[0, 1, 2])],
            vec![v(&[2, 4, 6, 8]), v(&[1, 2, 3, 4]), v(&[0, 0, 0, 1])],
            vec![
                vec![Scalar::rational(1, 2), Scalar::rational(-2, 3), Scalar::from(1)],
                vec![Scalar::from(3), Scalar::from(-4), Scalar::from(6)],
            ],
            vec![],
        ];
        for a in &cases {
            let n = a.first().map_or(3, Vec::len);
            assert_eq!(rank_fraction_free(a, n), rank(a, n), "{a:?}");
        }
    }

    #[test]
    fn fraction_free_kernel_agrees() {
        let cases = [
            (vec![v(&[1, 2, 3, 4]), v(&[2, 4, 6, 8]), v(&[0, 1, -1, 2])], 4),
            (vec![v(&[0, 0, 5]), v(&[3, 0, 1])], 3),
            (vec![vec![Scalar::rational(1, 3), Scalar::from(2), Scalar::rational(-5, 7)]], 3),
            (vec![], 2),
        ];
        for (a, n) in &cases {
            let k = kernel_fraction_free(a, *n);
            assert_eq!(k, Echelon::from_rows(*n, &kernel(a, *n)).into_rows(), "{a:?}");
        }
    }
}
