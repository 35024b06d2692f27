//! Turning command-line or stdin text into a validated parametrization.

use movingcurves::poly::gcd_t;
use movingcurves::text::{parse_rational_function, parse_tform};
use movingcurves::{homogenize, Parametrization, Scalar, ScalarMode, TForm};

use crate::error::CliError;

/// A parsed input together with notes for the user.
#[derive(Clone, Debug)]
pub struct InputSpec {
    pub phi: Parametrization,
    pub mode: ScalarMode,
    pub notes: Vec<String>,
}

/// Splits stdin into expressions: one per non-empty line, `#` starts a
/// comment.
pub fn stdin_expressions(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn read_input(exprs: &[String], affine: bool, mode: ScalarMode) -> Result<InputSpec, CliError> {
    let mut notes = Vec::new();
    let phi = if affine {
        affine_input(exprs, &mut notes)?
    } else {
        projective_input(exprs)?
    };
    let phi = into_mode(&phi, mode)?;
    Ok(InputSpec { phi, mode, notes })
}

fn projective_input(exprs: &[String]) -> Result<Parametrization, CliError> {
    if exprs.len() != 3 {
        return Err(CliError::Usage(format!(
            "expected three forms u0 u1 u2 in t0, t1, got {}",
            exprs.len()
        )));
    }
    let mut u = Vec::with_capacity(3);
    for (index, e) in exprs.iter().enumerate() {
        u.push(parse_tform(e).map_err(|source| CliError::Parse { index, source })?);
    }
    // "0" parses with degree 0; give zero components the common degree
    let d = u.iter().filter(|f| !f.is_zero()).map(TForm::degree).max().unwrap_or(0);
    let u: Vec<TForm> = u.into_iter().map(|f| if f.is_zero() { TForm::zero(d) } else { f }).collect();
    let [u0, u1, u2]: [TForm; 3] = u.try_into().expect("three components");
    Ok(Parametrization::new(u0, u1, u2)?)
}

fn tform_of(p: &[Scalar]) -> TForm {
    TForm::homogenize(p, p.len().saturating_sub(1))
}

/// `(x, y) = (a/c, b/c)` over the least common denominator.
fn affine_input(exprs: &[String], notes: &mut Vec<String>) -> Result<Parametrization, CliError> {
    if exprs.len() != 2 {
        return Err(CliError::Usage(format!(
            "expected two rational functions x(t) y(t) with --affine, got {}",
            exprs.len()
        )));
    }
    let mut parsed = Vec::with_capacity(2);
    for (index, e) in exprs.iter().enumerate() {
        let (num, den) = parse_rational_function(e).map_err(|source| CliError::Parse { index, source })?;
        parsed.push((tform_of(&num), tform_of(&den)));
    }
    let (xn, xd) = &parsed[0];
    let (yn, yd) = &parsed[1];
    let g = gcd_t(xd, yd)?;
    let c = (xd * yd).div_exact(&g)?;
    let a = xn * &c.div_exact(xd)?;
    let b = yn * &c.div_exact(yd)?;
    let (a, b, c) = (a.dehomogenize(), b.dehomogenize(), c.dehomogenize());
    let h = homogenize(&a, &b, &c)?;
    let [u0, u1, u2] = h.param.components();
    notes.push(format!(
        "affine input (a/c, b/c) homogenized with t = t1/t0: u0 = c -> {u0}, u1 = a -> {u1}, u2 = b -> {u2}"
    ));
    if let Some(s) = h.stripped {
        notes.push(format!("common factor {s} removed"));
    }
    Ok(h.param)
}

fn into_mode(phi: &Parametrization, mode: ScalarMode) -> Result<Parametrization, CliError> {
    if mode.is_rational() {
        return Ok(phi.clone());
    }
    let conv = |f: &TForm| -> Result<TForm, CliError> {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.clone().try_into_mode(mode))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TForm::new(coeffs))
    };
    let [u0, u1, u2] = phi.components();
    Ok(Parametrization::new(conv(u0)?, conv(u1)?, conv(u2)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn projective() {
        let s = read_input(&strs(&["t0^2 + t1^2", "t0^2 - t1^2", "2*t0*t1"]), false, ScalarMode::Rational).unwrap();
        assert_eq!(s.phi.to_string(), "(t0^2 + t1^2, t0^2 - t1^2, 2*t0*t1)");
        assert!(s.notes.is_empty());
    }

    #[test]
    fn zero_component_takes_common_degree() {
        let s = read_input(&strs(&["t0^2", "t1^2", "0"]), false, ScalarMode::Rational).unwrap();
        assert_eq!(s.phi.components()[2].degree(), 2);
        let e = read_input(&strs(&["t0^2 + t1^2", "t0^2 + t1^2", "0"]), false, ScalarMode::Rational).unwrap_err();
        assert_eq!(e.code(), "COMMON-FACTOR");
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn affine_circle() {
        let s = read_input(&strs(&["(1 - t^2)/(1 + t^2)", "2*t/(1 + t^2)"]), true, ScalarMode::Rational).unwrap();
        assert_eq!(s.phi.to_string(), "(t0^2 + t1^2, t0^2 - t1^2, 2*t0*t1)");
        assert_eq!(s.notes.len(), 1);
    }

    #[test]
    fn affine_unequal_denominators() {
        // x = 1/t, y = t: common denominator t
        let s = read_input(&strs(&["1/t", "t"]), true, ScalarMode::Rational).unwrap();
        assert_eq!(s.phi.to_string(), "(t0*t1, t0^2, t1^2)");
    }

    #[test]
    fn parse_errors_carry_the_expression() {
        let e = read_input(&strs(&["t0^2", "t0 + 1", "t1^2"]), false, ScalarMode::Rational).unwrap_err();
        assert_eq!(e.code(), "NOT-HOMOGENEOUS");
        assert_eq!(e.to_json()["error"]["expression"], 1);
    }

    #[test]
    fn prime_mode() {
        let mode: ScalarMode = "prime:7".parse().unwrap();
        let s = read_input(&strs(&["t0^2 + t1^2", "t0^2 - t1^2", "2*t0*t1"]), false, mode).unwrap();
        assert_eq!(s.phi.components()[0].coeff(0).mode(), mode);
        let e = read_input(&strs(&["t/7", "t^2"]), true, mode).unwrap_err();
        assert_eq!(e.code(), "INVALID-FIELD");
    }

    #[test]
    fn stdin_lines() {
        assert_eq!(stdin_expressions("t0\n\n t1 # second\nt1\n"), strs(&["t0", "t1", "t1"]));
    }
}
