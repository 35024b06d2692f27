use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::xform::{monomials, PowerTable, XMono};
use super::{Parametrization, TForm, XForm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Bihomogeneous form of bidegree `(t-degree, X-degree)`.
///
/// Stored as the vector of X-form coefficients of the t-monomials:
/// `coeffs[i]` multiplies `t0^(tdeg-i) * t1^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiForm {
    xdeg: usize,
    coeffs: Vec<XForm>,
}

impl BiForm {
    pub fn zero(tdeg: usize, xdeg: usize) -> Self {
        BiForm {
            xdeg,
            coeffs: vec![XForm::zero(xdeg); tdeg + 1],
        }
    }

    pub fn from_coeffs(xdeg: usize, coeffs: Vec<XForm>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a bihomogeneous form needs coefficients".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| c.degree() != xdeg) {
            return Err(Error::DegreeMismatch(
                format!("X-degree {xdeg}"),
                format!("coefficient of X-degree {}", c.degree()),
            ));
        }
        Ok(BiForm { xdeg, coeffs })
    }

    /// Product of a binary form and an X-form.
    pub fn from_product(t: &TForm, x: &XForm) -> Self {
        BiForm {
            xdeg: x.degree(),
            coeffs: t.coeffs().iter().map(|c| x.scale(c)).collect(),
        }
    }

    /// An X-form seen as a bidegree `(0, deg)` element.
    pub fn from_xform(x: &XForm) -> Self {
        BiForm {
            xdeg: x.degree(),
            coeffs: vec![x.clone()],
        }
    }

    /// The moving line `v0 X0 + v1 X1 + v2 X2`.
    pub fn from_line(v: &[TForm; 3]) -> Result<Self> {
        let tdeg = v[0].degree();
        if v.iter().any(|c| c.degree() != tdeg) {
            return Err(Error::DegreeMismatch(
                format!("t-degree {tdeg}"),
                "line coefficient of another degree".into(),
            ));
        }
        let mut out = BiForm::zero(tdeg, 1);
        for (j, vj) in v.iter().enumerate() {
            out = &out + &BiForm::from_product(vj, &XForm::var(j));
        }
        Ok(out)
    }

    /// Coefficient triple `(v0, v1, v2)` of a form with X-degree 1.
    pub fn line_coefficients(&self) -> Option<[TForm; 3]> {
        if self.xdeg != 1 {
            return None;
        }
        Some(std::array::from_fn(|j| {
            let mut m = [0u32; 3];
            m[j] = 1;
            TForm::new(self.coeffs.iter().map(|c| c.coeff(&m)).collect())
        }))
    }

    pub fn tdeg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn xdeg(&self) -> usize {
        self.xdeg
    }

    /// `(t-degree, X-degree)`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.tdeg(), self.xdeg)
    }

    pub fn coeffs(&self) -> &[XForm] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(XForm::is_zero)
    }

    pub fn try_add(&self, other: &BiForm) -> Result<BiForm> {
        self.check(other)?;
        Ok(BiForm {
            xdeg: self.xdeg,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &BiForm) -> Result<BiForm> {
        self.check(other)?;
        Ok(BiForm {
            xdeg: self.xdeg,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    fn check(&self, other: &BiForm) -> Result<()> {
        if self.bidegree() != other.bidegree() {
            return Err(Error::DegreeMismatch(
                format!("bidegree {:?}", self.bidegree()),
                format!("bidegree {:?}", other.bidegree()),
            ));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> BiForm {
        BiForm {
            xdeg: self.xdeg,
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn mul_tform(&self, t: &TForm) -> BiForm {
        let mut coeffs = vec![XForm::zero(self.xdeg); self.tdeg() + t.degree() + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, c) in t.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &x.scale(c);
                }
            }
        }
        BiForm {
            xdeg: self.xdeg,
            coeffs,
        }
    }

    pub fn mul_xform(&self, x: &XForm) -> BiForm {
        BiForm {
            xdeg: self.xdeg + x.degree(),
            coeffs: self.coeffs.iter().map(|c| c * x).collect(),
        }
    }

    /// Partial derivative with respect to `X_j`.
    pub fn partial_x(&self, j: usize) -> BiForm {
        BiForm {
            xdeg: self.xdeg.saturating_sub(1),
            coeffs: self.coeffs.iter().map(|c| c.partial(j)).collect(),
        }
    }

    /// Partial derivative with respect to `t0` (`which = 0`) or `t1`.
    pub fn partial_t(&self, which: usize) -> BiForm {
        let n = self.tdeg();
        if n == 0 {
            return BiForm::zero(0, self.xdeg);
        }
        let coeffs = if which == 0 {
            (0..n).map(|i| self.coeffs[i].scale(&Scalar::from((n - i) as i64))).collect()
        } else {
            (1..=n).map(|i| self.coeffs[i].scale(&Scalar::from(i as i64))).collect()
        };
        BiForm {
            xdeg: self.xdeg,
            coeffs,
        }
    }

    /// `self(t, u0(t), u1(t), u2(t))`, a binary form of degree
    /// `tdeg + xdeg * d`. Zero exactly when `self` follows `phi`.
    pub fn substitute(&self, phi: &Parametrization) -> TForm {
        let powers = PowerTable::new(phi.components(), self.xdeg);
        self.substitute_with(&powers)
    }

    pub(crate) fn substitute_with(&self, powers: &PowerTable) -> TForm {
        let n = self.tdeg();
        let mut acc = TForm::zero(n + self.xdeg * powers.d);
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let inner = x.substitute_with(powers);
            let shifted = &inner * &TForm::monomial(n, i, Scalar::one());
            acc = &acc + &shifted;
        }
        acc
    }

    /// Flattens to coordinates over the basis `t0^(tdeg-i) t1^i X^m`,
    /// ordered X-monomial major (descending graded-lex) then by `i`.
    pub fn to_coords(&self) -> Vec<Scalar> {
        let mons = monomials(self.xdeg);
        let mut out = Vec::with_capacity(mons.len() * self.coeffs.len());
        for m in &mons {
            for c in &self.coeffs {
                out.push(c.coeff(m));
            }
        }
        out
    }

    pub fn from_coords(tdeg: usize, xdeg: usize, coords: &[Scalar]) -> BiForm {
        let mons = monomials(xdeg);
        assert_eq!(coords.len(), mons.len() * (tdeg + 1));
        let mut terms: Vec<Vec<(XMono, Scalar)>> = vec![Vec::new(); tdeg + 1];
        for (k, m) in mons.iter().enumerate() {
            for (i, slot) in terms.iter_mut().enumerate() {
                let c = &coords[k * (tdeg + 1) + i];
                if !c.is_zero() {
                    slot.push((*m, c.clone()));
                }
            }
        }
        BiForm {
            xdeg,
            coeffs: terms
                .into_iter()
                .map(|t| XForm::from_terms(xdeg, t).expect("degree-consistent terms"))
                .collect(),
        }
    }

    pub fn max_bit_size(&self) -> u64 {
        self.coeffs.iter().map(XForm::max_bit_size).max().unwrap_or(0)
    }
}

impl Add for &BiForm {
    type Output = BiForm;
    fn add(self, rhs: &BiForm) -> BiForm {
        self.try_add(rhs).expect("adding forms of different bidegrees")
    }
}

impl Sub for &BiForm {
    type Output = BiForm;
    fn sub(self, rhs: &BiForm) -> BiForm {
        self.try_sub(rhs).expect("subtracting forms of different bidegrees")
    }
}

impl Mul for &BiForm {
    type Output = BiForm;
    fn mul(self, rhs: &BiForm) -> BiForm {
        let mut coeffs = vec![XForm::zero(self.xdeg + rhs.xdeg); self.tdeg() + rhs.tdeg() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        BiForm {
            xdeg: self.xdeg + rhs.xdeg,
            coeffs,
        }
    }
}

impl Neg for &BiForm {
    type Output = BiForm;
    fn neg(self) -> BiForm {
        BiForm {
            xdeg: self.xdeg,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.tdeg();
        let mut first = true;
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = TForm::monomial(n, i, Scalar::one()).to_string();
            if n == 0 {
                write!(f, "{x}")?;
            } else if x.num_terms() == 1 && x.terms().next().unwrap().1.is_one() && x.degree() > 0 {
                write!(f, "{mono}*{x}")?;
            } else {
                write!(f, "{mono}*({x})")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
