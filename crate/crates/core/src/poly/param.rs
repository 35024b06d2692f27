use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::tform::{gcd_t, univariate};
use super::TForm;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A rational plane parametrization `(t0:t1) -> (u0:u1:u2)` by coprime forms
/// of a common degree `d >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    u: [TForm; 3],
}

impl Parametrization {
    pub fn new(u0: TForm, u1: TForm, u2: TForm) -> Result<Self> {
        let d = u0.degree();
        for c in [&u1, &u2] {
            if c.degree() != d {
                return Err(Error::DegreeMismatch(
                    format!("u0 of degree {d}"),
                    format!("component of degree {}", c.degree()),
                ));
            }
        }
        if u0.is_zero() && u1.is_zero() && u2.is_zero() {
            return Err(Error::AllZero);
        }
        if d == 0 {
            return Err(Error::InvalidInput("components must have degree at least 1".into()));
        }
        let g = gcd_t(&gcd_t(&u0, &u1).unwrap_or_else(|_| TForm::zero(d)), &u2)?;
        if g.degree() > 0 {
            return Err(Error::CommonFactor(g.to_string()));
        }
        Ok(Parametrization { u: [u0, u1, u2] })
    }

    pub fn from_ints(u0: &[i64], u1: &[i64], u2: &[i64]) -> Result<Self> {
        Parametrization::new(TForm::from_ints(u0), TForm::from_ints(u1), TForm::from_ints(u2))
    }

    /// The parametrization whose components are the cross product of two
    /// moving lines' coefficient triples.
    pub fn from_cross_product(p: &[TForm; 3], q: &[TForm; 3]) -> Result<Self> {
        let [a, b, c] = cross(p, q);
        Parametrization::new(a, b, c)
    }

    pub fn degree(&self) -> usize {
        self.u[0].degree()
    }

    pub fn components(&self) -> &[TForm; 3] {
        &self.u
    }

    pub fn eval(&self, t0: &Scalar, t1: &Scalar) -> [Scalar; 3] {
        std::array::from_fn(|j| self.u[j].eval(t0, t1))
    }

    /// Reparametrizes by an invertible linear change `t -> A t`.
    pub fn reparametrize(&self, a: &[[Scalar; 2]; 2]) -> Result<Self> {
        let det = &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]);
        if det.is_zero() {
            return Err(Error::InvalidInput("singular reparametrization".into()));
        }
        let [u0, u1, u2] = &self.u;
        Parametrization::new(
            u0.linear_substitute(a),
            u1.linear_substitute(a),
            u2.linear_substitute(a),
        )
    }

    /// Composition with `(t0:t1) -> (t0^k:t1^k)`; the tracing index gets
    /// multiplied by `k`.
    pub fn compose_power(&self, k: usize) -> Result<Self> {
        let [u0, u1, u2] = &self.u;
        Parametrization::new(u0.compose_power(k), u1.compose_power(k), u2.compose_power(k))
    }

    /// Stable hash of the canonical rendering.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.to_string().hash(&mut h);
        h.finish()
    }

    pub fn max_bit_size(&self) -> u64 {
        self.u
            .iter()
            .flat_map(|f| f.coeffs().iter().map(Scalar::bit_size))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.u[0], self.u[1], self.u[2])
    }
}

/// Cross product of two triples of binary forms.
pub fn cross(p: &[TForm; 3], q: &[TForm; 3]) -> [TForm; 3] {
    [
        &(&p[1] * &q[2]) - &(&p[2] * &q[1]),
        &(&p[2] * &q[0]) - &(&p[0] * &q[2]),
        &(&p[0] * &q[1]) - &(&p[1] * &q[0]),
    ]
}

/// Result of turning an affine parametrization into a projective one.
#[derive(Clone, Debug)]
pub struct Homogenized {
    pub param: Parametrization,
    /// Common factor divided out of the homogenized components, if any.
    pub stripped: Option<TForm>,
}

/// Homogenizes `t -> (a(t)/c(t), b(t)/c(t))` with `t = t1/t0`: `u0` comes from
/// the denominator `c`, `u1` from `a`, `u2` from `b`, all to the largest
/// degree among them.
pub fn homogenize(a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Result<Homogenized> {
    let da = univariate::degree(a);
    let db = univariate::degree(b);
    let Some(dc) = univariate::degree(c) else {
        return Err(if da.is_none() && db.is_none() {
            Error::AllZero
        } else {
            Error::InvalidInput("denominator is zero".into())
        });
    };
    let d = [da, db, Some(dc)].into_iter().flatten().max().unwrap();
    if d == 0 {
        return Err(Error::InvalidInput("parametrization is constant".into()));
    }
    let mut u = [
        TForm::homogenize(c, d),
        TForm::homogenize(a, d),
        TForm::homogenize(b, d),
    ];
    let g = gcd_t(&gcd_t(&u[0], &u[1])?, &u[2])?;
    let stripped = if g.degree() > 0 {
        for f in &mut u {
            *f = f.div_exact(&g)?;
        }
        Some(g)
    } else {
        None
    };
    let [u0, u1, u2] = u;
    Ok(Homogenized {
        param: Parametrization::new(u0, u1, u2)?,
        stripped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&c| Scalar::from(c)).collect()
    }

    #[test]
    fn unit_circle() {
        let h = homogenize(&ints(&[1, 0, -1]), &ints(&[0, 2]), &ints(&[1, 0, 1])).unwrap();
        assert_eq!(h.param.to_string(), "(t0^2 + t1^2, t0^2 - t1^2, 2*t0*t1)");
        assert!(h.stripped.is_none());
    }

    #[test]
    fn diagonal_line() {
        let h = homogenize(&ints(&[0, 1]), &ints(&[0, 1]), &ints(&[1])).unwrap();
        assert_eq!(h.param.to_string(), "(t0, t1, t1)");
    }

    #[test]
    fn folium() {
        // x = 3t/(1+t^3), y = 3t^2/(1+t^3)
        let h = homogenize(&ints(&[0, 3]), &ints(&[0, 0, 3]), &ints(&[1, 0, 0, 1])).unwrap();
        assert_eq!(h.param.to_string(), "(t0^3 + t1^3, 3*t0^2*t1, 3*t0*t1^2)");
        // with the roles of a and b exchanged the X1, X2 components swap
        let h = homogenize(&ints(&[0, 0, 3]), &ints(&[0, 3]), &ints(&[1, 0, 0, 1])).unwrap();
        assert_eq!(h.param.to_string(), "(t0^3 + t1^3, 3*t0*t1^2, 3*t0^2*t1)");
    }

    #[test]
    fn common_factor_is_stripped() {
        // (t(1+t))/(t(1-t)), same for b: shared factor t
        let h = homogenize(&ints(&[0, 1, 1]), &ints(&[0, 2]), &ints(&[0, 1, -1])).unwrap();
        assert_eq!(h.stripped.unwrap().to_string(), "t1");
        assert_eq!(h.param.degree(), 1);
    }

    #[test]
    fn validation() {
        let circ = TForm::from_ints(&[1, 0, 1]);
        assert!(matches!(
            Parametrization::new(circ.clone(), circ.clone(), TForm::zero(2)),
            Err(Error::CommonFactor(_))
        ));
        assert_eq!(
            Parametrization::new(TForm::zero(2), TForm::zero(2), TForm::zero(2)),
            Err(Error::AllZero)
        );
        assert!(homogenize(&[], &[], &[]).is_err());
    }
}
