use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Binary form in `t0, t1`, stored densely: `coeffs[i]` multiplies
/// `t0^(deg-i) * t1^i`. The zero form keeps its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TForm {
    coeffs: Vec<Scalar>,
}

impl TForm {
    /// Builds a form from its coefficient vector (length = degree + 1).
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        TForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        TForm::new(coeffs.iter().map(|&c| Scalar::from(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        TForm {
            coeffs: vec![Scalar::zero(); degree + 1],
        }
    }

    pub fn constant(c: Scalar) -> Self {
        TForm { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        TForm::constant(Scalar::one())
    }

    /// `c * t0^(degree - t1_exp) * t1^t1_exp`.
    pub fn monomial(degree: usize, t1_exp: usize, c: Scalar) -> Self {
        assert!(t1_exp <= degree);
        let mut f = TForm::zero(degree);
        f.coeffs[t1_exp] = c;
        f
    }

    pub fn t0() -> Self {
        TForm::from_ints(&[1, 0])
    }

    pub fn t1() -> Self {
        TForm::from_ints(&[0, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, t1_exp: usize) -> &Scalar {
        &self.coeffs[t1_exp]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn try_add(&self, other: &TForm) -> Result<TForm> {
        self.check_degree(other)?;
        Ok(TForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &TForm) -> Result<TForm> {
        self.check_degree(other)?;
        Ok(TForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    fn check_degree(&self, other: &TForm) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(
                format!("t-degree {}", self.degree()),
                format!("t-degree {}", other.degree()),
            ));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> TForm {
        TForm {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> TForm {
        let mut acc = TForm::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `t0`.
    pub fn d_t0(&self) -> TForm {
        let n = self.degree();
        if n == 0 {
            return TForm::zero(0);
        }
        TForm {
            coeffs: (0..n)
                .map(|i| &self.coeffs[i] * &Scalar::from((n - i) as i64))
                .collect(),
        }
    }

    /// Partial derivative with respect to `t1`.
    pub fn d_t1(&self) -> TForm {
        let n = self.degree();
        if n == 0 {
            return TForm::zero(0);
        }
        TForm {
            coeffs: (1..=n)
                .map(|i| &self.coeffs[i] * &Scalar::from(i as i64))
                .collect(),
        }
    }

    pub fn eval(&self, t0: &Scalar, t1: &Scalar) -> Scalar {
        let n = self.degree();
        let mut acc = Scalar::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += &(&(c * &t0.pow((n - i) as u32)) * &t1.pow(i as u32));
        }
        acc
    }

    /// Substitutes `t0 -> a00 t0 + a01 t1`, `t1 -> a10 t0 + a11 t1`.
    pub fn linear_substitute(&self, a: &[[Scalar; 2]; 2]) -> TForm {
        let n = self.degree();
        let l0 = TForm::new(vec![a[0][0].clone(), a[0][1].clone()]);
        let l1 = TForm::new(vec![a[1][0].clone(), a[1][1].clone()]);
        let mut acc = TForm::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = (&l0.pow((n - i) as u32) * &l1.pow(i as u32)).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    /// Substitutes `t0 -> t0^k`, `t1 -> t1^k`.
    pub fn compose_power(&self, k: usize) -> TForm {
        let mut out = TForm::zero(self.degree() * k);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i * k] = c.clone();
        }
        out
    }

    /// Highest powers of `t0` and `t1` dividing a nonzero form.
    fn monomial_valuations(&self) -> (usize, usize) {
        let low = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let high = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        (self.degree() - high, low)
    }

    /// Exact division; fails unless `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &TForm) -> Result<TForm> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible("0".into()));
        }
        if self.degree() < divisor.degree() {
            return Err(Error::NotDivisible(divisor.to_string()));
        }
        let qdeg = self.degree() - divisor.degree();
        if self.is_zero() {
            return Ok(TForm::zero(qdeg));
        }
        // Solve q from the lowest t1 power upwards.
        let j = divisor.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let lead_inv = divisor.coeffs[j].inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); qdeg + 1];
        for k in 0..=qdeg {
            let c = &rem[k + j] * &lead_inv;
            if !c.is_zero() {
                for (l, g) in divisor.coeffs.iter().enumerate() {
                    if !g.is_zero() {
                        let t = &c * g;
                        rem[k + l] -= &t;
                    }
                }
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible(divisor.to_string()));
        }
        Ok(TForm { coeffs: q })
    }

    /// Scales so that the coefficient of the highest `t1` power is one.
    pub fn monic(&self) -> TForm {
        match self.coeffs.iter().rev().find(|c| !c.is_zero()) {
            Some(lc) => self.scale(&lc.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Evaluates at `t0 = 1`, returning ascending coefficients in `t = t1/t0`.
    pub fn dehomogenize(&self) -> Vec<Scalar> {
        let mut v = self.coeffs.clone();
        univariate::trim(&mut v);
        v
    }

    /// Homogenizes an ascending coefficient vector to the given degree.
    pub fn homogenize(poly: &[Scalar], degree: usize) -> TForm {
        let mut coeffs = vec![Scalar::zero(); degree + 1];
        for (i, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            assert!(i <= degree, "polynomial degree exceeds target degree {degree}");
            coeffs[i] = c.clone();
        }
        TForm { coeffs }
    }
}

/// Monic gcd of two binary forms: split off monomial factors, then run the
/// Euclidean algorithm on the dehomogenized remainders.
pub fn gcd_t(f: &TForm, g: &TForm) -> Result<TForm> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::BothZero),
        (true, false) => return Ok(g.monic()),
        (false, true) => return Ok(f.monic()),
        _ => {}
    }
    let (fa, fb) = f.monomial_valuations();
    let (ga, gb) = g.monomial_valuations();
    let strip = |h: &TForm, a: usize, b: usize| -> Vec<Scalar> {
        h.coeffs[b..=h.degree() - a].to_vec()
    };
    let uf = strip(f, fa, fb);
    let ug = strip(g, ga, gb);
    let ud = univariate::gcd(&uf, &ug);
    let a = fa.min(ga);
    let b = fb.min(gb);
    let core_deg = ud.len() - 1;
    let mut coeffs = vec![Scalar::zero(); a + b + core_deg + 1];
    for (i, c) in ud.into_iter().enumerate() {
        coeffs[b + i] = c;
    }
    Ok(TForm { coeffs }.monic())
}

/// Dense univariate helpers; vectors hold ascending coefficients with no
/// trailing zeros (the zero polynomial is empty).
pub mod univariate {
    use crate::scalar::Scalar;

    pub fn trim(v: &mut Vec<Scalar>) {
        while v.last().is_some_and(Scalar::is_zero) {
            v.pop();
        }
    }

    pub fn rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        divrem(a, b).1
    }

    pub fn divrem(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        assert!(!b.is_empty(), "division by zero polynomial");
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lc_inv = b.last().unwrap().inv().unwrap();
        let mut q = vec![Scalar::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * &lc_inv;
            for (i, bc) in b.iter().enumerate() {
                let t = &c * bc;
                r[shift + i] -= &t;
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        (q, r)
    }

    pub fn gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        if let Some(lc) = x.last() {
            let inv = lc.inv().unwrap();
            for c in &mut x {
                *c = &*c * &inv;
            }
        }
        x
    }

    pub fn mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        trim(&mut out);
        out
    }

    pub fn degree(a: &[Scalar]) -> Option<usize> {
        a.iter().rposition(|c| !c.is_zero())
    }
}

impl Add for &TForm {
    type Output = TForm;
    fn add(self, rhs: &TForm) -> TForm {
        self.try_add(rhs).expect("adding forms of different degrees")
    }
}

impl Sub for &TForm {
    type Output = TForm;
    fn sub(self, rhs: &TForm) -> TForm {
        self.try_sub(rhs).expect("subtracting forms of different degrees")
    }
}

impl Mul for &TForm {
    type Output = TForm;
    fn mul(self, rhs: &TForm) -> TForm {
        let mut coeffs = vec![Scalar::zero(); self.degree() + rhs.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        TForm { coeffs }
    }
}

impl Neg for &TForm {
    type Output = TForm;
    fn neg(self) -> TForm {
        TForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let terms = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
            let mut mono = Vec::new();
            match n - i {
                0 => {}
                1 => mono.push("t0".to_string()),
                e => mono.push(format!("t0^{e}")),
            }
            match i {
                0 => {}
                1 => mono.push("t1".to_string()),
                e => mono.push(format!("t1^{e}")),
            }
            (c.clone(), mono.join("*"))
        });
        crate::text::write_terms(f, terms)
    }
}
