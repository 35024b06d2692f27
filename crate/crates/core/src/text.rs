//! Canonical text rendering and parsing of forms.
//!
//! Rendering lists terms in descending graded-lex order with explicit `*`
//! and `^`, e.g. `X0^2 - X1^2 - X2^2`. The parser accepts
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := integer | variable | factor '^' nat | '(' expr ')'
//! ```
//!
//! with whitespace ignored and no implicit multiplication. Rational-function
//! parsing additionally allows `/` between factors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::tform::univariate;
use crate::poly::{BiForm, TForm, XForm};
use crate::scalar::Scalar;

pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Scalar, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        let (neg, mag) = match &c {
            Scalar::Rational(r) if r.is_negative() => (true, Scalar::Rational(-r)),
            _ => (false, c.clone()),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(
        "not homogeneous: term of degree {first_degree} at position {first_pos} \
         and term of degree {second_degree} at position {second_pos}"
    )]
    NotHomogeneous {
        first_degree: usize,
        first_pos: usize,
        second_degree: usize,
        second_pos: usize,
    },
    #[error("division by zero at position {0}")]
    DivisionByZero(usize),
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SYNTAX",
            ParseError::NotHomogeneous { .. } => "NOT-HOMOGENEOUS",
            ParseError::DivisionByZero(_) => "DIVISION-BY-ZERO",
        }
    }
}

type Exps = Vec<u32>;

/// Sparse multivariate polynomial over the rationals, used while parsing.
#[derive(Clone, Debug, PartialEq)]
struct Poly {
    nvars: usize,
    terms: BTreeMap<Exps, BigRational>,
}

impl Poly {
    fn constant(nvars: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Poly { nvars, terms }
    }

    fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        Poly { nvars, terms }
    }

    fn add(&self, o: &Poly, sign: bool) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let c = if sign { c.clone() } else { -c };
            let entry = out.terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::constant(self.nvars, BigRational::zero());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e: Exps = a.iter().zip(b).map(|(p, q)| p + q).collect();
                let entry = out.terms.entry(e.clone()).or_insert_with(BigRational::zero);
                *entry += x * y;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}

/// Univariate rational function `num / den` (ascending coefficients).
#[derive(Clone, Debug)]
struct RatFun {
    num: Vec<Scalar>,
    den: Vec<Scalar>,
}

impl RatFun {
    fn reduce(mut self) -> RatFun {
        let g = univariate::gcd(&self.num, &self.den);
        if g.len() > 1 {
            self.num = univariate::divrem(&self.num, &g).0;
            self.den = univariate::divrem(&self.den, &g).0;
        }
        univariate::trim(&mut self.num);
        univariate::trim(&mut self.den);
        self
    }
}

trait Value: Clone {
    fn constant(&self, c: BigRational) -> Self;
    fn add(&self, o: &Self, sign: bool) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl Value for Poly {
    fn constant(&self, c: BigRational) -> Self {
        Poly::constant(self.nvars, c)
    }
    fn add(&self, o: &Self, sign: bool) -> Self {
        Poly::add(self, o, sign)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        let c = o.as_constant()?;
        if c.is_zero() {
            return None;
        }
        Some(self.mul(&Poly::constant(self.nvars, c.recip())))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Value for RatFun {
    fn constant(&self, c: BigRational) -> Self {
        RatFun {
            num: {
                let mut v = vec![Scalar::Rational(c)];
                univariate::trim(&mut v);
                v
            },
            den: vec![Scalar::one()],
        }
    }
    fn add(&self, o: &Self, sign: bool) -> Self {
        let a = univariate::mul(&self.num, &o.den);
        let mut b = univariate::mul(&o.num, &self.den);
        if !sign {
            b.iter_mut().for_each(|c| *c = -&*c);
        }
        let n = a.len().max(b.len());
        let mut num: Vec<Scalar> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_default();
                let y = b.get(i).cloned().unwrap_or_default();
                &x + &y
            })
            .collect();
        univariate::trim(&mut num);
        RatFun {
            num,
            den: univariate::mul(&self.den, &o.den),
        }
        .reduce()
    }
    fn mul(&self, o: &Self) -> Self {
        RatFun {
            num: univariate::mul(&self.num, &o.num),
            den: univariate::mul(&self.den, &o.den),
        }
        .reduce()
    }
    fn div(&self, o: &Self) -> Option<Self> {
        if o.num.is_empty() {
            return None;
        }
        Some(
            RatFun {
                num: univariate::mul(&self.num, &o.den),
                den: univariate::mul(&self.den, &o.num),
            }
            .reduce(),
        )
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

struct Parser<'a, V: Value> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [(&'a str, V)],
    allow_division: bool,
    unit: V,
}

impl<'a, V: Value> Parser<'a, V> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    /// Top-level expression, returning each additive term with its start.
    fn expr_terms(&mut self) -> Result<Vec<(V, usize)>, ParseError> {
        let mut out = Vec::new();
        let mut sign = true;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            sign = c == b'+';
            self.pos += 1;
        }
        loop {
            self.skip_ws();
            let start = self.pos;
            let t = self.term()?;
            let t = if sign { t } else { self.unit.constant(BigRational::zero()).add(&t, false) };
            out.push((t, start));
            match self.peek() {
                Some(c @ (b'+' | b'-')) => {
                    sign = c == b'+';
                    self.pos += 1;
                }
                _ => return Ok(out),
            }
        }
    }

    fn expr(&mut self) -> Result<V, ParseError> {
        let terms = self.expr_terms()?;
        let mut acc = self.unit.constant(BigRational::zero());
        for (t, _) in terms {
            acc = acc.add(&t, true);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<V, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(b'/') if self.allow_division => {
                    let at = self.pos;
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.div(&f).ok_or(if f.is_zero() {
                        ParseError::DivisionByZero(at)
                    } else {
                        ParseError::Syntax {
                            pos: at,
                            msg: "division by a non-constant".into(),
                        }
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<V, ParseError> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected a natural-number exponent after '^'");
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| ParseError::Syntax {
                    pos: start,
                    msg: "exponent too large".into(),
                })?;
            let mut acc = self.unit.clone();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            base = acc;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<V, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                Ok(self.unit.constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().find(|(n, _)| *n == name) {
                    Some((_, v)) => Ok(v.clone()),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable '{name}'"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

/// Parses into a polynomial over `names`, checking homogeneity in each group
/// of variable indices. Returns the polynomial and the degree of each group
/// (`None` when the polynomial is zero).
fn parse_poly_groups(
    text: &str,
    names: &[&str],
    groups: &[&[usize]],
    allow_division: bool,
) -> Result<(Poly, Vec<Option<usize>>), ParseError> {
    let n = names.len();
    let vars: Vec<(&str, Poly)> = names.iter().enumerate().map(|(i, s)| (*s, Poly::var(n, i))).collect();
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: &vars,
        allow_division,
        unit: Poly::constant(n, BigRational::one()),
    };
    let terms = p.expr_terms()?;
    p.finish()?;
    let mut total = Poly::constant(n, BigRational::zero());
    for (t, _) in &terms {
        total = total.add(t, true);
    }
    let origin = |e: &Exps| {
        terms
            .iter()
            .find(|(t, _)| t.terms.contains_key(e))
            .map(|(_, pos)| *pos)
            .unwrap_or(0)
    };
    let mut degrees = Vec::new();
    for g in groups {
        let mut seen: Option<(usize, usize)> = None;
        for e in total.terms.keys() {
            let deg: usize = g.iter().map(|&i| e[i] as usize).sum();
            match seen {
                None => seen = Some((deg, origin(e))),
                Some((d0, p0)) if d0 != deg => {
                    // report the pair in reading order
                    let (a, b) = ((d0, p0), (deg, origin(e)));
                    let (a, b) = if a.1 <= b.1 { (a, b) } else { (b, a) };
                    return Err(ParseError::NotHomogeneous {
                        first_degree: a.0,
                        first_pos: a.1,
                        second_degree: b.0,
                        second_pos: b.1,
                    });
                }
                _ => {}
            }
        }
        degrees.push(seen.map(|(d, _)| d));
    }
    Ok((total, degrees))
}

/// Parses a binary form in `t0, t1`; constant divisors are allowed. The zero
/// polynomial parses as the zero form of degree 0.
pub fn parse_tform(text: &str) -> Result<TForm, ParseError> {
    let (p, degs) = parse_poly_groups(text, &["t0", "t1"], &[&[0, 1]], true)?;
    let d = degs[0].unwrap_or(0);
    let mut f = TForm::zero(d);
    let mut coeffs = f.coeffs().to_vec();
    for (e, c) in p.terms {
        coeffs[e[1] as usize] = Scalar::Rational(c);
    }
    f = TForm::new(coeffs);
    Ok(f)
}

/// Parses a form in `X0, X1, X2`; constant divisors are allowed.
pub fn parse_xform(text: &str) -> Result<XForm, ParseError> {
    let (p, degs) = parse_poly_groups(text, &["X0", "X1", "X2"], &[&[0, 1, 2]], true)?;
    let d = degs[0].unwrap_or(0);
    Ok(XForm::from_terms(
        d,
        p.terms.into_iter().map(|(e, c)| ([e[0], e[1], e[2]], Scalar::Rational(c))),
    )
    .expect("homogeneity checked"))
}

/// Parses a bihomogeneous form in `t0, t1, X0, X1, X2`; constant divisors are
/// allowed.
pub fn parse_biform(text: &str) -> Result<BiForm, ParseError> {
    let (p, degs) =
        parse_poly_groups(text, &["t0", "t1", "X0", "X1", "X2"], &[&[0, 1], &[2, 3, 4]], true)?;
    let tdeg = degs[0].unwrap_or(0);
    let xdeg = degs[1].unwrap_or(0);
    let mut coeffs: Vec<Vec<([u32; 3], Scalar)>> = vec![Vec::new(); tdeg + 1];
    for (e, c) in p.terms {
        coeffs[e[1] as usize].push(([e[2], e[3], e[4]], Scalar::Rational(c)));
    }
    Ok(BiForm::from_coeffs(
        xdeg,
        coeffs
            .into_iter()
            .map(|t| XForm::from_terms(xdeg, t).expect("homogeneity checked"))
            .collect(),
    )
    .expect("degrees agree"))
}

/// Parses a univariate rational function in `t`, returning ascending
/// numerator and denominator coefficients in lowest terms.
pub fn parse_rational_function(text: &str) -> Result<(Vec<Scalar>, Vec<Scalar>), ParseError> {
    let t = RatFun {
        num: vec![Scalar::zero(), Scalar::one()],
        den: vec![Scalar::one()],
    };
    let vars = [("t", t)];
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: &vars,
        allow_division: true,
        unit: RatFun {
            num: vec![Scalar::one()],
            den: vec![Scalar::one()],
        },
    };
    let v = p.expr()?;
    p.finish()?;
    let mut v = v.reduce();
    // make the denominator monic
    if let Some(lc) = v.den.last().cloned() {
        let inv = lc.inv().unwrap();
        v.num.iter_mut().for_each(|c| *c = &*c * &inv);
        v.den.iter_mut().for_each(|c| *c = &*c * &inv);
    }
    Ok((v.num, v.den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_circle_component() {
        let f = parse_tform("t0^2 + t1^2").unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.to_string(), "t0^2 + t1^2");
    }

    #[test]
    fn folium_component() {
        let f = parse_tform("3*t0^2*t1").unwrap();
        assert_eq!(f, TForm::from_ints(&[0, 3, 0, 0]));
    }

    #[test]
    fn rejects_non_homogeneous() {
        match parse_tform("t0 + 1") {
            Err(ParseError::NotHomogeneous {
                first_degree,
                second_degree,
                first_pos,
                second_pos,
            }) => {
                let mut degs = [first_degree, second_degree];
                degs.sort();
                assert_eq!(degs, [0, 1]);
                let mut pos = [first_pos, second_pos];
                pos.sort();
                assert_eq!(pos, [0, 5]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_tform("t0 ^"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_tform("2 t0"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_tform("t0 + t2"), Err(ParseError::Syntax { pos: 5, .. })));
        assert!(matches!(parse_tform("t0/t1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_tform("t0/0"), Err(ParseError::DivisionByZero(2))));
        assert_eq!(parse_tform("-1/3*t0^2").unwrap().to_string(), "-1/3*t0^2");
    }

    #[test]
    fn parenthesized_products() {
        let f = parse_tform("(t0 + t1)*(t0 - t1)").unwrap();
        assert_eq!(f.to_string(), "t0^2 - t1^2");
        let g = parse_tform("-(t0 - 2*t1)^2").unwrap();
        assert_eq!(g.to_string(), "-t0^2 + 4*t0*t1 - 4*t1^2");
    }

    #[test]
    fn rational_functions() {
        let (n, d) = parse_rational_function("(1 - t^2)/(1 + t^2)").unwrap();
        assert_eq!(n, vec![Scalar::from(1), Scalar::from(0), Scalar::from(-1)]);
        assert_eq!(d, vec![Scalar::from(1), Scalar::from(0), Scalar::from(1)]);
        let (n, d) = parse_rational_function("2*t/(2 + 2*t^2)").unwrap();
        assert_eq!(n, vec![Scalar::from(0), Scalar::from(1)]);
        assert_eq!(d.len(), 3);
        assert!(matches!(parse_rational_function("1/(t - t)"), Err(ParseError::DivisionByZero(_))));
    }

    #[test]
    fn biform_with_rational_coefficient() {
        let l = parse_biform("t0*(X1^2 + X2^2/2 - 2*X0*X1) + t1*(X0*X2 - X1*X2)").unwrap();
        assert_eq!(l.bidegree(), (1, 2));
        assert_eq!(l.coeffs()[0].to_string(), "-2*X0*X1 + X1^2 + 1/2*X2^2");
    }
}
