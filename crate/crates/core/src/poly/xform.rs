use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::Sign;

use super::TForm;
use crate::error::{Error, Result};
use crate::scalar::{content_scale, sign_of, Scalar};

/// Exponent triple of `X0^a0 X1^a1 X2^a2`.
pub type XMono = [u32; 3];

/// Homogeneous form in `X0, X1, X2`, stored sparsely.
///
/// Keys sort lexicographically; since all terms share one degree this is the
/// graded-lex order with `X0 > X1 > X2`, so the leading term is the last key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XForm {
    degree: usize,
    terms: BTreeMap<XMono, Scalar>,
}

/// All exponent triples of total degree `degree`, in descending graded-lex
/// order (`X0^degree` first).
pub fn monomials(degree: usize) -> Vec<XMono> {
    let d = degree as u32;
    let mut out = Vec::with_capacity((degree + 1) * (degree + 2) / 2);
    for a0 in (0..=d).rev() {
        for a1 in (0..=d - a0).rev() {
            out.push([a0, a1, d - a0 - a1]);
        }
    }
    out
}

fn mono_mul(a: &XMono, b: &XMono) -> XMono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mono_div(a: &XMono, b: &XMono) -> Option<XMono> {
    (a[0] >= b[0] && a[1] >= b[1] && a[2] >= b[2]).then(|| [a[0] - b[0], a[1] - b[1], a[2] - b[2]])
}

impl XForm {
    pub fn zero(degree: usize) -> Self {
        XForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        XForm::monomial([0, 0, 0], c)
    }

    pub fn one() -> Self {
        XForm::constant(Scalar::one())
    }

    /// The variable `X_j`.
    pub fn var(j: usize) -> Self {
        let mut m = [0; 3];
        m[j] = 1;
        XForm::monomial(m, Scalar::one())
    }

    pub fn monomial(m: XMono, c: Scalar) -> Self {
        let degree = (m[0] + m[1] + m[2]) as usize;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        XForm { degree, terms }
    }

    /// Builds a form from terms; zero coefficients are dropped and repeated
    /// monomials summed.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (XMono, Scalar)>) -> Result<Self> {
        let mut f = XForm::zero(degree);
        for (m, c) in terms {
            if (m[0] + m[1] + m[2]) as usize != degree {
                return Err(Error::DegreeMismatch(
                    format!("X-degree {degree}"),
                    format!("monomial of degree {}", m[0] + m[1] + m[2]),
                ));
            }
            f.add_term(m, &c);
        }
        Ok(f)
    }

    pub fn from_int_terms(degree: usize, terms: &[(XMono, i64)]) -> Self {
        XForm::from_terms(degree, terms.iter().map(|&(m, c)| (m, Scalar::from(c))))
            .expect("monomials of the stated degree")
    }

    fn add_term(&mut self, m: XMono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&XMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &XMono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&XMono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn try_add(&self, other: &XForm) -> Result<XForm> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &XForm) -> Result<XForm> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        Ok(out)
    }

    fn check_degree(&self, other: &XForm) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(
                format!("X-degree {}", self.degree),
                format!("X-degree {}", other.degree),
            ));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> XForm {
        if c.is_zero() {
            return XForm::zero(self.degree);
        }
        XForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> XForm {
        let mut acc = XForm::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `X_j`.
    pub fn partial(&self, j: usize) -> XForm {
        let mut out = XForm::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if m[j] == 0 {
                continue;
            }
            let mut n = *m;
            n[j] -= 1;
            out.add_term(n, &(c * &Scalar::from(m[j] as i64)));
        }
        out
    }

    pub fn eval(&self, x: &[Scalar; 3]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for j in 0..3 {
                if m[j] > 0 {
                    t *= &x[j].pow(m[j]);
                }
            }
            acc += &t;
        }
        acc
    }

    /// `self(u0, u1, u2)` for binary forms of a common degree `d`; the result
    /// has degree `self.degree() * d`.
    pub fn substitute(&self, u: &[TForm; 3]) -> TForm {
        let powers = PowerTable::new(u, self.degree);
        self.substitute_with(&powers)
    }

    pub(crate) fn substitute_with(&self, powers: &PowerTable) -> TForm {
        let mut acc = TForm::zero(self.degree * powers.d);
        for (m, c) in &self.terms {
            let t = powers.monomial(m).scale(c);
            acc = &acc + &t;
        }
        acc
    }

    /// Integral primitive representative with positive leading coefficient
    /// (monic in prime mode). Returns `(canonical, c)` with `self = c * canonical`.
    pub fn canonical(&self) -> (XForm, Scalar) {
        let Some((_, lc)) = self.leading() else {
            return (self.clone(), Scalar::one());
        };
        // mode-free constants such as `Scalar::one()` can sit among residues
        if let Some(mode) = self.terms.values().map(Scalar::mode).find(|m| !m.is_rational()) {
            let lc = lc.clone().into_mode(mode);
            return (self.scale(&lc.inv().unwrap()), lc);
        }
        match lc {
            Scalar::Rational(lc) => {
                let mut scale = content_scale(self.terms.values()).expect("nonzero rational form");
                if sign_of(lc) == Sign::Minus {
                    scale = -scale;
                }
                let s = Scalar::Rational(scale);
                let canon = self.scale(&s);
                (canon, s.inv().unwrap())
            }
            Scalar::Residue { .. } => {
                let inv = lc.inv().unwrap();
                (self.scale(&inv), lc.clone())
            }
        }
    }

    pub fn normalized(&self) -> XForm {
        self.canonical().0
    }

    /// `Q` with `Q * divisor = self`, by graded-lex division with zero
    /// remainder required.
    pub fn exact_divide(&self, divisor: &XForm) -> Result<XForm> {
        let Some((dm, dc)) = divisor.leading() else {
            return Err(Error::NotDivisible("0".into()));
        };
        if self.degree < divisor.degree {
            return Err(Error::NotDivisible(divisor.to_string()));
        }
        let dinv = dc.inv().unwrap();
        let mut q = XForm::zero(self.degree - divisor.degree);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading() {
            let Some(qm) = mono_div(rm, dm) else {
                return Err(Error::NotDivisible(divisor.to_string()));
            };
            let qc = rc * &dinv;
            for (m, c) in &divisor.terms {
                r.add_term(mono_mul(m, &qm), &-(c * &qc));
            }
            q.add_term(qm, &qc);
        }
        Ok(q)
    }

    /// Largest `a` with `X_j^a` dividing a nonzero form.
    pub fn valuation(&self, j: usize) -> u32 {
        self.terms.keys().map(|m| m[j]).min().unwrap_or(0)
    }

    /// Canonical `F` with `F^k` proportional to `self`.
    ///
    /// Works on the monic rescaling of `self`: the root is monic as well, and
    /// its terms are recovered one at a time in decreasing graded-lex order
    /// from the leading term of the remainder `G - F^k`.
    pub fn kth_root(&self, k: u32) -> Result<XForm> {
        if k == 0 {
            return Err(Error::InvalidInput("root index must be positive".into()));
        }
        let Some((lm, lc)) = self.leading() else {
            return Err(Error::NotAPower(k));
        };
        if k == 1 {
            return Ok(self.normalized());
        }
        if self.degree % k as usize != 0 || lm.iter().any(|e| e % k != 0) {
            return Err(Error::NotAPower(k));
        }
        let k_scalar = Scalar::from(k as i64).into_mode(lc.mode());
        if k_scalar.is_zero() {
            return Err(Error::InvalidInput(format!("root index {k} vanishes in the field")));
        }
        let k_inv = k_scalar.inv().unwrap();
        let target = self.scale(&lc.inv().unwrap());
        let lead_root: XMono = [lm[0] / k, lm[1] / k, lm[2] / k];
        let root_deg = self.degree / k as usize;
        let lead_pow = XForm::monomial(lead_root, Scalar::one()).pow(k - 1);
        let (lead_pow_m, _) = lead_pow.leading().map(|(m, c)| (*m, c.clone())).unwrap();

        let mut root = XForm::monomial(lead_root, Scalar::one());
        let mut last = lead_root;
        let max_terms = (root_deg + 1) * (root_deg + 2) / 2;
        for _ in 0..=max_terms {
            let rem = target.try_sub(&root.pow(k))?;
            let Some((rm, rc)) = rem.leading() else {
                return Ok(root.normalized());
            };
            let Some(next) = mono_div(rm, &lead_pow_m) else {
                return Err(Error::NotAPower(k));
            };
            if next >= last {
                return Err(Error::NotAPower(k));
            }
            root.add_term(next, &(rc * &k_inv));
            last = next;
        }
        Err(Error::NotAPower(k))
    }

    /// Largest coefficient size in bits.
    pub fn max_bit_size(&self) -> u64 {
        self.terms.values().map(Scalar::bit_size).max().unwrap_or(0)
    }
}

/// Cached powers `u_j^e` for repeated substitution.
pub(crate) struct PowerTable {
    pub(crate) d: usize,
    powers: [Vec<TForm>; 3],
}

impl PowerTable {
    pub(crate) fn new(u: &[TForm; 3], max_exp: usize) -> Self {
        let d = u[0].degree();
        let powers = std::array::from_fn(|j| {
            let mut v = vec![TForm::one()];
            for e in 1..=max_exp {
                let next = &v[e - 1] * &u[j];
                v.push(next);
            }
            v
        });
        PowerTable { d, powers }
    }

    pub(crate) fn monomial(&self, m: &XMono) -> TForm {
        let a = &self.powers[0][m[0] as usize] * &self.powers[1][m[1] as usize];
        &a * &self.powers[2][m[2] as usize]
    }
}

impl Add for &XForm {
    type Output = XForm;
    fn add(self, rhs: &XForm) -> XForm {
        self.try_add(rhs).expect("adding forms of different degrees")
    }
}

impl Sub for &XForm {
    type Output = XForm;
    fn sub(self, rhs: &XForm) -> XForm {
        self.try_sub(rhs).expect("subtracting forms of different degrees")
    }
}

impl Mul for &XForm {
    type Output = XForm;
    fn mul(self, rhs: &XForm) -> XForm {
        let mut out = XForm::zero(self.degree + rhs.degree);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(mono_mul(a, b), &(x * y));
            }
        }
        out
    }
}

impl Neg for &XForm {
    type Output = XForm;
    fn neg(self) -> XForm {
        XForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

pub(crate) fn xmono_string(m: &XMono) -> String {
    let mut parts = Vec::new();
    for (j, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("X{j}")),
            e => parts.push(format!("X{j}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for XForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_terms(f, self.terms.iter().rev().map(|(m, c)| (c.clone(), xmono_string(m))))
    }
}
