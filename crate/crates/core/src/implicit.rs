//! Implicitization by direct resultant, by mu-basis resultant and by a
//! determinant of moving lines, plus the tracing index.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elimmat::{bezout_matrix, determinant, sylvester_matrix, PolyMatrix};
use crate::error::{Error, Result};
use crate::poly::{gcd_t, BiForm, Parametrization, XForm};
use crate::scalar::Scalar;
use crate::syzygy::{moving_space, mu_basis, MuBasis};

/// Which pipeline produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Resultant,
    MuBasis,
    MovingLines,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Resultant, Method::MuBasis, Method::MovingLines];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Resultant => "resultant",
            Method::MuBasis => "mubasis",
            Method::MovingLines => "movinglines",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "resultant" => Ok(Method::Resultant),
            "mubasis" => Ok(Method::MuBasis),
            "movinglines" => Ok(Method::MovingLines),
            _ => Err(Error::InvalidInput(format!("unknown method '{s}'"))),
        }
    }
}

/// Implicit equation together with the data of its derivation.
///
/// The raw determinant equals `constant * X2^alpha * F^beta`, with `alpha`
/// taken as 0 when absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitResult {
    pub method: Method,
    /// Canonical implicit polynomial.
    pub f: XForm,
    pub degree: usize,
    pub beta: usize,
    /// Power of `X2` split off the direct resultant.
    pub alpha: Option<usize>,
    pub constant: Scalar,
    pub raw: XForm,
    /// `F(u0, u1, u2) = 0`.
    pub vanishes: bool,
}

fn sample_mode_scalar(phi: &Parametrization, v: i64) -> Scalar {
    let mode = phi
        .components()
        .iter()
        .flat_map(|f| f.coeffs())
        .find(|c| !c.is_zero())
        .map(Scalar::mode)
        .expect("nonzero parametrization");
    Scalar::from(v).into_mode(mode)
}

/// Degree of the gcd cutting out the fiber through `phi(tau)`.
fn fiber_degree(phi: &Parametrization, tau: (i64, i64)) -> Option<usize> {
    let t0 = sample_mode_scalar(phi, tau.0);
    let t1 = sample_mode_scalar(phi, tau.1);
    let s = phi.eval(&t0, &t1);
    let u = phi.components();
    let j = [2, 0, 1].into_iter().find(|&j| !s[j].is_zero())?;
    let others: Vec<usize> = (0..3).filter(|&i| i != j).collect();
    let form = |a: usize| &u[a].scale(&s[j]) - &u[j].scale(&s[a]);
    let g = gcd_t(&form(others[0]), &form(others[1])).ok()?;
    Some(g.degree())
}

/// Probabilistic generic fiber size: the minimum fiber degree over three
/// random points, accepted once it divides `d`.
pub fn tracing_index(phi: &Parametrization, seed: u64) -> Result<usize> {
    let d = phi.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..5 {
        let mut best: Option<usize> = None;
        for _ in 0..3 {
            let tau = (rng.gen_range(1..=997), rng.gen_range(-997..=997));
            if let Some(k) = fiber_degree(phi, tau) {
                best = Some(best.map_or(k, |b| b.min(k)));
            }
        }
        if let Some(b) = best {
            if b >= 1 && d % b == 0 {
                return Ok(b);
            }
        }
    }
    Err(Error::Unstable)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|k| n % k == 0).collect()
}

fn is_proper_power(f: &XForm) -> bool {
    let deg = f.degree();
    (2..=deg).filter(|p| deg % p == 0 && divisors(*p).len() == 2).any(|p| f.kth_root(p as u32).is_ok())
}

/// Extracts `(F, beta)` from `g = c * F^beta`, where `beta * deg F = d`.
///
/// Tries the estimated tracing index, one fresh estimate, then every divisor
/// of `d` in increasing order, accepting only a root that is not itself a
/// proper power.
fn certified_root(g: &XForm, phi: &Parametrization, seed: u64) -> Result<(XForm, usize)> {
    let d = phi.degree();
    let mut candidates = vec![tracing_index(phi, seed)?];
    if let Ok(b) = tracing_index(phi, seed.wrapping_add(0x9e37_79b9_7f4a_7c15)) {
        candidates.push(b);
    }
    candidates.extend(divisors(d));
    for k in candidates {
        if g.degree() != d || d % k != 0 {
            continue;
        }
        if let Ok(f) = g.kth_root(k as u32) {
            if !is_proper_power(&f) {
                return Ok((f, k));
            }
        }
    }
    Err(Error::RootFailure(d))
}

/// `Some(c)` with `a = c * b`, for nonzero `b`.
pub fn proportionality(a: &XForm, b: &XForm) -> Option<Scalar> {
    let (bm, bc) = b.leading()?;
    if a.degree() != b.degree() {
        return None;
    }
    let c = &a.coeff(bm) / bc;
    (!c.is_zero() && *a == b.scale(&c)).then_some(c)
}

fn finish(method: Method, phi: &Parametrization, raw: XForm, alpha: Option<usize>, seed: u64) -> Result<ImplicitResult> {
    let rem = match alpha {
        Some(a) => raw.exact_divide(&XForm::var(2).pow(a as u32))?,
        None => raw.clone(),
    };
    let (f, beta) = certified_root(&rem, phi, seed)?;
    let constant = proportionality(&rem, &f.pow(beta as u32)).ok_or(Error::RootFailure(phi.degree()))?;
    let vanishes = f.substitute(phi.components()).is_zero();
    Ok(ImplicitResult {
        method,
        degree: f.degree(),
        f,
        beta,
        alpha,
        constant,
        raw,
        vanishes,
    })
}

/// The pair `X2 u0 - X0 u2`, `X2 u1 - X1 u2`.
pub fn elimination_pair(phi: &Parametrization) -> (BiForm, BiForm) {
    let [u0, u1, u2] = phi.components();
    let x = XForm::var;
    let f = &BiForm::from_product(u0, &x(2)) - &BiForm::from_product(u2, &x(0));
    let g = &BiForm::from_product(u1, &x(2)) - &BiForm::from_product(u2, &x(1));
    (f, g)
}

/// Direct resultant of the elimination pair, `c * X2^alpha * F^beta`.
pub fn implicitize_resultant(phi: &Parametrization, seed: u64) -> Result<ImplicitResult> {
    let d = phi.degree();
    let (f, g) = elimination_pair(phi);
    if f.is_zero() || g.is_zero() {
        return Err(Error::DegenerateImage);
    }
    let raw = determinant(&sylvester_matrix(&f, &g)?)?;
    if raw.is_zero() {
        return Err(Error::DegenerateImage);
    }
    let alpha = raw.valuation(2) as usize;
    if alpha == raw.degree() {
        // u2 = 0: the image is the line X2 = 0 traced d times
        let f = XForm::var(2);
        return Ok(ImplicitResult {
            method: Method::Resultant,
            degree: 1,
            beta: d,
            alpha: Some(d),
            constant: raw.leading().map(|(_, c)| c.clone()).unwrap(),
            vanishes: f.substitute(phi.components()).is_zero(),
            f,
            raw,
        });
    }
    finish(Method::Resultant, phi, raw, Some(alpha), seed)
}

/// Resultant of a mu-basis, `c * F^beta`.
pub fn implicitize_mubasis(phi: &Parametrization, seed: u64) -> Result<ImplicitResult> {
    let basis = mu_basis(phi)?;
    implicitize_with_basis(phi, &basis, seed)
}

pub fn implicitize_with_basis(phi: &Parametrization, basis: &MuBasis, seed: u64) -> Result<ImplicitResult> {
    let raw = determinant(&sylvester_matrix(basis.p(), basis.q())?)?;
    if raw.is_zero() {
        return Err(Error::DegenerateImage);
    }
    finish(Method::MuBasis, phi, raw, None, seed)
}

/// Square matrix whose rows are the coefficient vectors of a basis of the
/// moving lines of degree `d - 1`.
pub fn moving_line_matrix(phi: &Parametrization) -> Result<PolyMatrix> {
    let d = phi.degree();
    let lines = moving_space(phi, d - 1, 1);
    if lines.len() != d {
        return Err(Error::NonSquare(lines.len(), d));
    }
    PolyMatrix::new(lines.iter().map(|l| l.coeffs().to_vec()).collect())
}

/// Determinant of [`moving_line_matrix`], `c * F^beta`.
pub fn implicitize_moving_lines(phi: &Parametrization, seed: u64) -> Result<(PolyMatrix, ImplicitResult)> {
    let m = moving_line_matrix(phi)?;
    let raw = determinant(&m)?;
    if raw.is_zero() {
        return Err(Error::DegenerateImage);
    }
    let r = finish(Method::MovingLines, phi, raw, None, seed)?;
    Ok((m, r))
}

pub fn implicitize(phi: &Parametrization, method: Method, seed: u64) -> Result<ImplicitResult> {
    match method {
        Method::Resultant => implicitize_resultant(phi, seed),
        Method::MuBasis => implicitize_mubasis(phi, seed),
        Method::MovingLines => implicitize_moving_lines(phi, seed).map(|(_, r)| r),
    }
}

/// Determinant of the t-coefficient matrix of `delta + 1` moving curves of
/// t-degree `delta`, checked to be a constant multiple of `F^beta`.
pub fn hybrid_det(curves: &[BiForm], phi: &Parametrization) -> Result<XForm> {
    let Some(first) = curves.first() else {
        return Err(Error::NonSquare(0, 0));
    };
    let delta = first.tdeg();
    if curves.len() != delta + 1 {
        return Err(Error::NonSquare(curves.len(), delta + 1));
    }
    if let Some(c) = curves.iter().find(|c| c.tdeg() != delta) {
        return Err(Error::NonSquare(curves.len(), c.tdeg() + 1));
    }
    let m = PolyMatrix::new(curves.iter().map(|c| c.coeffs().to_vec()).collect())?;
    let det = determinant(&m)?;
    if det.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let implicit = implicitize_mubasis(phi, 0)?;
    let power = implicit.f.pow(implicit.beta as u32);
    match det.exact_divide(&power) {
        Ok(q) if q.degree() == 0 => Ok(det),
        _ => Err(Error::NotImplicit(det.to_string())),
    }
}

/// Outcome of comparing `X2^d * Res(P, Q)` with the Bezout determinant of
/// the elimination pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterBezout {
    pub holds: bool,
    /// `c` with `det Bez = c * X2^d * Res(P, Q)`, when it exists.
    pub constant: Option<Scalar>,
}

pub fn sylvester_bezout_check(phi: &Parametrization) -> Result<SylvesterBezout> {
    let d = phi.degree();
    let basis = mu_basis(phi)?;
    let res = determinant(&sylvester_matrix(basis.p(), basis.q())?)?;
    let lhs = &XForm::var(2).pow(d as u32) * &res;
    let (f, g) = elimination_pair(phi);
    let rhs = determinant(&bezout_matrix(&f, &g)?)?;
    let constant = proportionality(&rhs, &lhs);
    Ok(SylvesterBezout {
        holds: constant.is_some(),
        constant,
    })
}

/// Matrix sizes of the three routes: `2d`, `d`, `d`.
pub fn route_sizes(phi: &Parametrization) -> Result<[usize; 3]> {
    let (f, g) = elimination_pair(phi);
    let basis = mu_basis(phi)?;
    Ok([
        sylvester_matrix(&f, &g)?.nrows(),
        sylvester_matrix(basis.p(), basis.q())?.nrows(),
        moving_line_matrix(phi)?.nrows(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_biform, parse_xform};

    fn circle() -> Parametrization {
        Parametrization::from_ints(&[1, 0, 1], &[1, 0, -1], &[0, 2, 0]).unwrap()
    }

    fn x(s: &str) -> XForm {
        parse_xform(s).unwrap()
    }

    #[test]
    fn circle_resultant() {
        let r = implicitize_resultant(&circle(), 1).unwrap();
        assert_eq!(r.raw, x("-4*X2^2*(X0^2 - X1^2 - X2^2)"));
        assert_eq!(r.alpha, Some(2));
        assert_eq!(r.beta, 1);
        assert_eq!(r.f, x("X0^2 - X1^2 - X2^2"));
        assert_eq!(r.constant, Scalar::from(-4));
        assert!(r.vanishes);
    }

    #[test]
    fn circle_all_methods() {
        for m in Method::ALL {
            let r = implicitize(&circle(), m, 3).unwrap();
            assert_eq!(r.f, x("X0^2 - X1^2 - X2^2"), "{m}");
            assert_eq!(r.beta, 1);
        }
        assert_eq!(route_sizes(&circle()).unwrap(), [4, 2, 2]);
    }

    #[test]
    fn tracing_index_values() {
        assert_eq!(tracing_index(&circle(), 5).unwrap(), 1);
        let doubled = circle().compose_power(2).unwrap();
        assert_eq!(tracing_index(&doubled, 5).unwrap(), 2);
        let line = Parametrization::from_ints(&[1, 0], &[0, 1], &[1, 1]).unwrap();
        assert_eq!(tracing_index(&line, 5).unwrap(), 1);
    }

    #[test]
    fn doubled_circle() {
        let doubled = circle().compose_power(2).unwrap();
        for m in Method::ALL {
            let r = implicitize(&doubled, m, 9).unwrap();
            assert_eq!(r.beta, 2, "{m}");
            assert_eq!(r.f, x("X0^2 - X1^2 - X2^2"));
        }
    }

    #[test]
    fn collinear_image() {
        // u1 = u2: a double cover of the line X1 = X2
        let line = Parametrization::from_ints(&[1, 0, 1], &[0, 1, 0], &[0, 1, 0]).unwrap();
        for m in Method::ALL {
            let r = implicitize(&line, m, 1).unwrap();
            assert_eq!(r.f, x("X1 - X2"), "{m}");
            assert_eq!(r.beta, 2);
        }
        let on_infinity = Parametrization::from_ints(&[1, 0], &[0, 1], &[0, 0]).unwrap();
        let r = implicitize_resultant(&on_infinity, 1).unwrap();
        assert_eq!((r.f.clone(), r.alpha, r.beta), (XForm::var(2), Some(1), 1));
    }

    #[test]
    fn example5_hybrid() {
        let phi = Parametrization::from_ints(&[1, 0, 0, 0, -1], &[0, 0, -1, 0, 0], &[0, 0, 0, 1, 0]).unwrap();
        let l11 = parse_biform("t0*X2 + t1*X1").unwrap();
        let l13 = parse_biform("t0*(X1^3 + X0*X2^2) + t1*X2^3").unwrap();
        let det = hybrid_det(&[l11, l13], &phi).unwrap();
        assert_eq!(det, x("X2^4 - X1^4 - X0*X1*X2^2"));
        assert!(sylvester_bezout_check(&phi).unwrap().holds);
    }

    #[test]
    fn hybrid_rejects_bad_shapes() {
        let l = parse_biform("t0*X2 - (X0 + X1)*t1").unwrap();
        assert_eq!(hybrid_det(&[l], &circle()), Err(Error::NonSquare(1, 2)));
        let a = parse_biform("t0*X2 - (X0 + X1)*t1").unwrap();
        assert_eq!(hybrid_det(&[a.clone(), a], &circle()), Err(Error::ZeroDeterminant));
    }

    #[test]
    fn circle_sylvester_bezout() {
        let c = sylvester_bezout_check(&circle()).unwrap();
        assert!(c.holds);
    }
}
