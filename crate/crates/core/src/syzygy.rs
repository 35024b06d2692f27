//! Moving curves in a fixed bidegree, the invariant mu and mu-bases.
//!
//! Every space here is computed by graded linear algebra: the unknowns are
//! the coefficients of a bihomogeneous form and the equations are the
//! t-coefficients of its substitution into the parametrization.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::poly::xform::PowerTable;
use crate::poly::{cross, monomials, BiForm, Parametrization, TForm};
use crate::scalar::Scalar;

/// A bihomogeneous form known to vanish on a parametrization, tagged with
/// that parametrization's fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovingCurve {
    form: BiForm,
    fingerprint: u64,
}

impl MovingCurve {
    /// Checks `form(t, u(t)) = 0` before wrapping.
    pub fn new(form: BiForm, phi: &Parametrization) -> Result<Self> {
        if !form.substitute(phi).is_zero() {
            return Err(Error::NotMovingCurve);
        }
        Ok(MovingCurve {
            form,
            fingerprint: phi.fingerprint(),
        })
    }

    pub(crate) fn trusted(form: BiForm, fingerprint: u64) -> Self {
        MovingCurve { form, fingerprint }
    }

    pub fn form(&self) -> &BiForm {
        &self.form
    }

    pub fn into_form(self) -> BiForm {
        self.form
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn follows(&self, phi: &Parametrization) -> bool {
        self.fingerprint == phi.fingerprint()
    }
}

impl Deref for MovingCurve {
    type Target = BiForm;
    fn deref(&self) -> &BiForm {
        &self.form
    }
}

/// Matrix of `L -> L(t, u(t))` on bidegree `(tdeg, xdeg)`, with columns in
/// [`BiForm::to_coords`] order and one row per t-coefficient of the image.
pub(crate) fn substitution_matrix(powers: &PowerTable, tdeg: usize, xdeg: usize) -> Vec<Vec<Scalar>> {
    let mons = monomials(xdeg);
    let n = mons.len() * (tdeg + 1);
    let out_len = tdeg + xdeg * powers.d + 1;
    let mut rows = vec![vec![Scalar::zero(); n]; out_len];
    for (k, m) in mons.iter().enumerate() {
        let um = powers.monomial(m);
        for i in 0..=tdeg {
            let col = k * (tdeg + 1) + i;
            for (e, c) in um.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    rows[i + e][col] = c.clone();
                }
            }
        }
    }
    rows
}

/// Basis, in reduced row-echelon form, of the moving curves of bidegree
/// `(tdeg, xdeg)` following `phi`.
pub fn moving_space(phi: &Parametrization, tdeg: usize, xdeg: usize) -> Vec<MovingCurve> {
    let powers = PowerTable::new(phi.components(), xdeg);
    let a = substitution_matrix(&powers, tdeg, xdeg);
    let n = monomials(xdeg).len() * (tdeg + 1);
    let fp = phi.fingerprint();
    linalg::kernel(&a, n)
        .into_iter()
        .map(|v| MovingCurve::trusted(BiForm::from_coords(tdeg, xdeg, &v), fp))
        .collect()
}

/// Dimension of the moving-curve space of bidegree `(tdeg, xdeg)`.
pub fn moving_space_dim(phi: &Parametrization, tdeg: usize, xdeg: usize) -> usize {
    let powers = PowerTable::new(phi.components(), xdeg);
    let a = substitution_matrix(&powers, tdeg, xdeg);
    linalg::nullity(&a, monomials(xdeg).len() * (tdeg + 1))
}

/// The smallest t-degree of a nonzero moving line.
pub fn mu(phi: &Parametrization) -> usize {
    let d = phi.degree();
    (0..=d)
        .find(|&delta| moving_space_dim(phi, delta, 1) > 0)
        .expect("a moving line of degree d always exists")
}

/// A pair of moving lines of t-degrees `mu` and `d - mu` that freely
/// generates all moving lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuBasis {
    mu: usize,
    p: MovingCurve,
    q: MovingCurve,
    constant: Scalar,
}

impl MuBasis {
    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn p(&self) -> &MovingCurve {
        &self.p
    }

    pub fn q(&self) -> &MovingCurve {
        &self.q
    }

    pub fn p_coeffs(&self) -> [TForm; 3] {
        self.p.line_coefficients().expect("moving line")
    }

    pub fn q_coeffs(&self) -> [TForm; 3] {
        self.q.line_coefficients().expect("moving line")
    }

    /// The nonzero `c` with `P x Q = c * u`.
    pub fn cross_constant(&self) -> &Scalar {
        &self.constant
    }
}

/// `Some(c)` when `v = c * u` with `c` a nonzero scalar.
pub fn proportionality(v: &[TForm; 3], u: &[TForm; 3]) -> Option<Scalar> {
    let (j, k) = (0..3)
        .flat_map(|j| u[j].coeffs().iter().enumerate().map(move |(k, c)| (j, k, c)))
        .find(|(_, _, c)| !c.is_zero())
        .map(|(j, k, _)| (j, k))?;
    if v[j].degree() != u[j].degree() {
        return None;
    }
    let c = v[j].coeff(k) / u[j].coeff(k);
    if c.is_zero() {
        return None;
    }
    (0..3).all(|i| v[i] == u[i].scale(&c)).then_some(c)
}

/// Computes a mu-basis: `P` is the first echelon basis element in degree
/// `mu`, `Q` the first echelon element in degree `d - mu` outside the span of
/// the t-multiples of `P`.
pub fn mu_basis(phi: &Parametrization) -> Result<MuBasis> {
    let d = phi.degree();
    let m = mu(phi);
    let p = moving_space(phi, m, 1).into_iter().next().expect("mu is attained");
    let qdeg = d - m;
    let shift = qdeg - m;
    let multiples: Vec<Vec<Scalar>> = (0..=shift)
        .map(|i| p.mul_tform(&TForm::monomial(shift, i, Scalar::one())).to_coords())
        .collect();
    let span = Echelon::from_rows(multiples.first().map_or(0, Vec::len), &multiples);
    let q = moving_space(phi, qdeg, 1)
        .into_iter()
        .find(|l| !span.contains(&l.to_coords()))
        .ok_or(Error::CrossProductFailure)?;
    let pc = p.line_coefficients().expect("moving line");
    let qc = q.line_coefficients().expect("moving line");
    let constant = proportionality(&cross(&pc, &qc), phi.components()).ok_or(Error::CrossProductFailure)?;
    Ok(MuBasis {
        mu: m,
        p,
        q,
        constant,
    })
}

/// Writes a moving line `L` as `p * P + q * Q`.
///
/// `p` has degree `deg L - mu`. When `deg L < d - mu` no multiple of `Q` fits
/// and `q` is returned as the zero form of degree 0.
pub fn decompose_moving_line(l: &BiForm, basis: &MuBasis) -> Result<(TForm, TForm)> {
    if l.xdeg() != 1 {
        return Err(Error::NoDecomposition);
    }
    let delta = l.tdeg();
    let (pd, qd) = (basis.p.tdeg(), basis.q.tdeg());
    if delta < pd {
        return if l.is_zero() {
            Ok((TForm::zero(0), TForm::zero(0)))
        } else {
            Err(Error::NoDecomposition)
        };
    }
    let np = delta - pd + 1;
    let nq = if delta >= qd { delta - qd + 1 } else { 0 };
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(np + nq);
    for i in 0..np {
        cols.push(basis.p.mul_tform(&TForm::monomial(np - 1, i, Scalar::one())).to_coords());
    }
    for i in 0..nq {
        cols.push(basis.q.mul_tform(&TForm::monomial(nq - 1, i, Scalar::one())).to_coords());
    }
    let target = l.to_coords();
    let rows: Vec<Vec<Scalar>> = (0..target.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let x = linalg::solve(&rows, &target, np + nq).ok_or(Error::NoDecomposition)?;
    let p = TForm::new(x[..np].to_vec());
    let q = if nq > 0 { TForm::new(x[np..].to_vec()) } else { TForm::zero(0) };
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_biform, parse_xform};

    fn circle() -> Parametrization {
        Parametrization::from_ints(&[1, 0, 1], &[1, 0, -1], &[0, 2, 0]).unwrap()
    }

    fn example5() -> Parametrization {
        Parametrization::from_ints(&[1, 0, 0, 0, -1], &[0, 0, -1, 0, 0], &[0, 0, 0, 1, 0]).unwrap()
    }

    fn span_contains(space: &[MovingCurve], l: &BiForm) -> bool {
        let rows: Vec<Vec<Scalar>> = space.iter().map(|c| c.to_coords()).collect();
        Echelon::from_rows(l.to_coords().len(), &rows).contains(&l.to_coords())
    }

    #[test]
    fn circle_spaces() {
        let phi = circle();
        let lines = moving_space(&phi, 1, 1);
        assert_eq!(lines.len(), 2);
        for s in ["t0*X2 - (X0 + X1)*t1", "(-X0 + X1)*t0 + X2*t1"] {
            assert!(span_contains(&lines, &parse_biform(s).unwrap()));
        }
        assert!(moving_space(&phi, 0, 1).is_empty());
        let conics = moving_space(&phi, 0, 2);
        assert_eq!(conics.len(), 1);
        let f = conics[0].coeffs()[0].canonical().0;
        assert_eq!(f, parse_xform("X0^2 - X1^2 - X2^2").unwrap());
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu(&circle()), 1);
        assert_eq!(mu(&example5()), 1);
        let line = Parametrization::from_ints(&[1, 0], &[0, 1], &[0, 1]).unwrap();
        let b = mu_basis(&line).unwrap();
        assert_eq!(b.mu(), 0);
        let (canon, _) = b.p().coeffs()[0].canonical();
        assert_eq!(canon, parse_xform("X1 - X2").unwrap());
    }

    #[test]
    fn circle_basis_cross_product() {
        let phi = circle();
        let b = mu_basis(&phi).unwrap();
        assert_eq!(b.mu(), 1);
        assert_eq!(
            proportionality(&cross(&b.p_coeffs(), &b.q_coeffs()), phi.components()),
            Some(b.cross_constant().clone())
        );
    }

    #[test]
    fn example5_p() {
        let b = mu_basis(&example5()).unwrap();
        let expected = parse_biform("t0*X2 + t1*X1").unwrap();
        let rows = vec![b.p().to_coords()];
        assert!(Echelon::from_rows(rows[0].len(), &rows).contains(&expected.to_coords()));
    }

    #[test]
    fn decomposition_roundtrip() {
        let phi = circle();
        let b = mu_basis(&phi).unwrap();
        assert_eq!(
            decompose_moving_line(b.p(), &b).unwrap(),
            (TForm::from_ints(&[1]), TForm::zero(0))
        );
        let p = TForm::from_ints(&[2, -1, 3]);
        let q = TForm::from_ints(&[0, 5, 1]);
        let l = &b.p().mul_tform(&p) + &b.q().mul_tform(&q);
        assert_eq!(decompose_moving_line(&l, &b).unwrap(), (p, q));
        let not_moving = parse_biform("t0*X0").unwrap();
        assert_eq!(decompose_moving_line(&not_moving, &b), Err(Error::NoDecomposition));
    }

    #[test]
    fn moving_curve_check() {
        let phi = circle();
        assert!(MovingCurve::new(parse_biform("t0*X2 - (X0 + X1)*t1").unwrap(), &phi).is_ok());
        assert_eq!(
            MovingCurve::new(parse_biform("t0*X2").unwrap(), &phi),
            Err(Error::NotMovingCurve)
        );
    }
}
