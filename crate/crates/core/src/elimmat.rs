//! Sylvester and Bezout matrices with X-form entries, and exact determinants.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{BiForm, XForm};

/// Rectangular matrix of X-forms. Every row is homogeneous: all entries of a
/// row share one degree, zero entries included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<XForm>>,
    ncols: usize,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<XForm>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::NonSquare(rows.len(), r.len()));
        }
        for r in &rows {
            if let Some(e) = r.iter().find(|e| e.degree() != r[0].degree()) {
                return Err(Error::DegreeMismatch(
                    format!("row entries of degree {}", r[0].degree()),
                    format!("entry of degree {}", e.degree()),
                ));
            }
        }
        Ok(PolyMatrix { rows, ncols })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<XForm>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &XForm {
        &self.rows[i][j]
    }

    fn row_degree(&self, i: usize) -> usize {
        self.rows[i].first().map_or(0, XForm::degree)
    }

    /// Degree of the determinant, the sum of the row degrees.
    pub fn det_degree(&self) -> usize {
        (0..self.nrows()).map(|i| self.row_degree(i)).sum()
    }

    fn check_square(&self) -> Result<()> {
        if self.nrows() != self.ncols {
            return Err(Error::NonSquare(self.nrows(), self.ncols));
        }
        Ok(())
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Sylvester matrix of two forms in `t`, with X-form coefficients.
///
/// For t-degrees `m` and `n` the first `n` rows hold shifts of the
/// coefficient sequence of `f` and the last `m` rows shifts of `g`.
pub fn sylvester_matrix(f: &BiForm, g: &BiForm) -> Result<PolyMatrix> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (m, n) = (f.tdeg(), g.tdeg());
    if m + n == 0 {
        return Err(Error::InvalidInput("both forms are constant in t".into()));
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (form, shifts) in [(f, n), (g, m)] {
        for s in 0..shifts {
            let mut row = vec![XForm::zero(form.xdeg()); size];
            for (i, c) in form.coeffs().iter().enumerate() {
                row[s + i] = c.clone();
            }
            rows.push(row);
        }
    }
    PolyMatrix::new(rows)
}

/// Bezout matrix from the Cayley quotient
/// `(f(s) g(t) - f(t) g(s)) / (s0 t1 - s1 t0)`.
///
/// Entry `(i, j)` is the coefficient of `s1^i t1^j` in the dehomogenized
/// quotient.
pub fn bezout_matrix(f: &BiForm, g: &BiForm) -> Result<PolyMatrix> {
    let m = f.tdeg();
    if g.tdeg() != m {
        return Err(Error::UnequalTDegrees(m, g.tdeg()));
    }
    if m == 0 {
        return Err(Error::InvalidInput("Bezout matrix of forms constant in t".into()));
    }
    let deg = f.xdeg() + g.xdeg();
    let (fc, gc) = (f.coeffs(), g.coeffs());
    let numer = |a: usize, b: usize| &(&fc[a] * &gc[b]) - &(&fc[b] * &gc[a]);
    let mut c = vec![vec![XForm::zero(deg); m]; m];
    for a in 0..m {
        for b in 1..=m {
            let mut e = numer(a, b);
            if a > 0 && b < m {
                e = &e + &c[a - 1][b];
            }
            c[a][b - 1] = e;
        }
    }
    PolyMatrix::new(c)
}

/// Exact determinant: cofactor expansion up to size 4, fraction-free
/// elimination beyond.
pub fn determinant(m: &PolyMatrix) -> Result<XForm> {
    m.check_square()?;
    if m.nrows() <= 4 {
        determinant_cofactor(m)
    } else {
        determinant_bareiss(m)
    }
}

/// Laplace expansion along the first row.
pub fn determinant_cofactor(m: &PolyMatrix) -> Result<XForm> {
    m.check_square()?;
    let rows: Vec<usize> = (0..m.nrows()).collect();
    let cols: Vec<usize> = (0..m.ncols()).collect();
    Ok(cofactor(m, &rows, &cols))
}

fn cofactor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> XForm {
    let deg: usize = rows.iter().map(|&i| m.row_degree(i)).sum();
    match rows.len() {
        0 => XForm::one(),
        1 => m.rows[rows[0]][cols[0]].clone(),
        _ => {
            let mut acc = XForm::zero(deg);
            for (k, &j) in cols.iter().enumerate() {
                let e = &m.rows[rows[0]][j];
                if e.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
                let minor = cofactor(m, &rows[1..], &rest);
                let term = e * &minor;
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Bareiss fraction-free elimination with exact X-form division. The pivot
/// is the first nonzero entry of the column; each row swap flips the sign.
pub fn determinant_bareiss(m: &PolyMatrix) -> Result<XForm> {
    m.check_square()?;
    let n = m.nrows();
    let total = m.det_degree();
    if n == 0 {
        return Ok(XForm::one());
    }
    let mut a = m.rows.clone();
    let mut negate = false;
    let mut prev = XForm::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            // a structurally zero column below the diagonal
            return Ok(XForm::zero(total));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_divide(&prev)?;
            }
            a[i][k] = XForm::zero(a[i][k + 1].degree());
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TForm;
    use crate::text::{parse_biform, parse_xform};

    fn x(s: &str) -> XForm {
        parse_xform(s).unwrap()
    }

    fn circle_pair() -> (BiForm, BiForm) {
        (
            parse_biform("X2*t0^2 - 2*X0*t0*t1 + X2*t1^2").unwrap(),
            parse_biform("X2*t0^2 - 2*X1*t0*t1 - X2*t1^2").unwrap(),
        )
    }

    #[test]
    fn circle_sylvester_layout() {
        let (f, g) = circle_pair();
        let m = sylvester_matrix(&f, &g).unwrap();
        let expect = [
            ["X2", "-2*X0", "X2", "0"],
            ["0", "X2", "-2*X0", "X2"],
            ["X2", "-2*X1", "-X2", "0"],
            ["0", "X2", "-2*X1", "-X2"],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(m.get(i, j).to_string(), *e, "entry ({i},{j})");
            }
        }
        let det = determinant(&m).unwrap();
        assert_eq!(det, x("-4*X2^2*(X0^2 - X1^2 - X2^2)"));
        assert_eq!(determinant_bareiss(&m).unwrap(), det);
    }

    #[test]
    fn circle_moving_line_matrix() {
        let f = parse_biform("t0*X2 - (X0 + X1)*t1").unwrap();
        let g = parse_biform("(-X0 + X1)*t0 + X2*t1").unwrap();
        let m = sylvester_matrix(&f, &g).unwrap();
        assert_eq!(m.nrows(), 2);
        assert_eq!(determinant(&m).unwrap(), x("X1^2 + X2^2 - X0^2"));
    }

    #[test]
    fn equal_inputs_vanish() {
        let f = parse_biform("t0*X2 - t1*X0").unwrap();
        let m = sylvester_matrix(&f, &f).unwrap();
        assert!(determinant(&m).unwrap().is_zero());
        let b = bezout_matrix(&f, &f).unwrap();
        assert!(b.rows()[0].iter().all(XForm::is_zero));
    }

    #[test]
    fn diagonal() {
        let m = PolyMatrix::new(vec![vec![x("X0"), XForm::zero(1)], vec![XForm::zero(1), x("X0")]]).unwrap();
        assert_eq!(determinant(&m).unwrap(), x("X0^2"));
    }

    #[test]
    fn coprime_linear_forms() {
        let f = BiForm::from_product(&TForm::t0(), &XForm::one());
        let g = BiForm::from_product(&TForm::t1(), &XForm::one());
        let b = bezout_matrix(&f, &g).unwrap();
        assert_eq!(b.nrows(), 1);
        assert_eq!(b.get(0, 0).to_string(), "1");
        assert_eq!(determinant(&sylvester_matrix(&f, &g).unwrap()).unwrap().to_string(), "1");
    }

    #[test]
    fn circle_bezout_determinant() {
        let (f, g) = circle_pair();
        let b = bezout_matrix(&f, &g).unwrap();
        assert_eq!(b.get(0, 1), b.get(1, 0));
        let det = determinant(&b).unwrap();
        let (canon, _) = det.canonical();
        assert_eq!(canon, x("X2^2*(X0^2 - X1^2 - X2^2)").canonical().0);
    }

    #[test]
    fn non_square() {
        let m = PolyMatrix::new(vec![vec![x("X0"), x("X1")]]).unwrap();
        assert_eq!(determinant(&m), Err(Error::NonSquare(1, 2)));
    }
}
