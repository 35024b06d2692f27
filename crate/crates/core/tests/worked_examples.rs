use movingcurves::implicit::{hybrid_det, implicitize, implicitize_mubasis, tracing_index, Method};
use movingcurves::rees::{minimal_generators, minimal_generators_direct, survey, verify_generation};
use movingcurves::syzygy::{mu, MovingCurve};
use movingcurves::text::{parse_biform, parse_tform, parse_xform};
use movingcurves::{BiForm, Parametrization, TForm, XForm};

fn param(u: [&str; 3]) -> Parametrization {
    Parametrization::new(parse_tform(u[0]).unwrap(), parse_tform(u[1]).unwrap(), parse_tform(u[2]).unwrap()).unwrap()
}

fn canon(s: &str) -> XForm {
    parse_xform(s).unwrap().normalized()
}

#[test]
fn triple_point_quartic() {
    let phi = param(["t0^4 - t1^4", "-t0^2*t1^2", "t0*t1^3"]);
    assert_eq!(mu(&phi), 1);
    let l11 = parse_biform("t0*X2 + t1*X1").unwrap();
    let l13 = parse_biform("t0*(X1^3 + X0*X2^2) + t1*X2^3").unwrap();
    assert!(MovingCurve::new(l11.clone(), &phi).is_ok());
    assert!(MovingCurve::new(l13.clone(), &phi).is_ok());
    let det = hybrid_det(&[l11, l13], &phi).unwrap();
    assert_eq!(det, parse_xform("X2^4 - X1^4 - X0*X1*X2^2").unwrap());
    for m in Method::ALL {
        assert_eq!(implicitize(&phi, m, 0).unwrap().f, canon("X2^4 - X1^4 - X0*X1*X2^2"));
    }
}

#[test]
fn three_node_quartic() {
    let phi = param(["t0^4", "6*t0^2*t1^2 - 4*t1^4", "4*t0^3*t1 - 4*t0*t1^3"]);
    let f = canon("X2^4 + 4*X0*X1^3 + 2*X0*X1*X2^2 - 16*X0^2*X1^2 - 6*X0^2*X2^2 + 16*X0^3*X1");
    let a = parse_biform("t0*(X1*X2 - X0*X2) + t1*(-X2^2 - 2*X0*X1 + 4*X0^2)").unwrap();
    let b = parse_biform("t0*(X1^2 + 1/2*X2^2 - 2*X0*X1) + t1*(X0*X2 - X1*X2)").unwrap();
    assert!(a.substitute(&phi).is_zero() && b.substitute(&phi).is_zero());
    assert_eq!(hybrid_det(&[a, b], &phi).unwrap().normalized(), f);
    assert_eq!(implicitize(&phi, Method::Resultant, 0).unwrap().f, f);
}

#[test]
fn doubled_circle() {
    let circle = param(["t0^2 + t1^2", "t0^2 - t1^2", "2*t0*t1"]);
    let doubled = circle.compose_power(2).unwrap();
    assert_eq!(doubled, param(["t0^4 + t1^4", "t0^4 - t1^4", "2*t0^2*t1^2"]));
    assert_eq!(tracing_index(&doubled, 5).unwrap(), 2);
    let r = implicitize_mubasis(&doubled, 5).unwrap();
    assert_eq!(r.beta, 2);
    let f = canon("X0^2 - X1^2 - X2^2");
    assert_eq!(r.f, f);
    // the raw resultant is a constant times the square of the circle
    assert_eq!(r.raw.kth_root(2).unwrap(), f);
    assert!(r.raw.kth_root(3).is_err());
}

/// `(0,d), (1,1), (1,d-1), (2,d-2), ..., (d-1,1)`.
fn mu_one_profile(d: usize) -> Vec<(usize, usize)> {
    let mut b = vec![(0, d), (1, 1)];
    b.extend((1..d).map(|k| (k, d - k)));
    b.sort();
    b
}

#[test]
fn mu_one_formula() {
    // cross product of a degree-1 and a degree-(d-1) moving line
    for (d, q) in [
        (3, "(t0^2 + t1^2)*X0 + t0*t1*X1 + (t0^2 - 2*t1^2)*X2"),
        (5, "(t0^4 + t1^4)*X0 + (t0^3*t1 - t1^4)*X1 + (2*t0^2*t1^2 + t0*t1^3)*X2"),
    ] {
        let p = parse_biform("t0*X1 + t1*X2").unwrap().line_coefficients().unwrap();
        let q = parse_biform(q).unwrap().line_coefficients().unwrap();
        let phi = Parametrization::from_cross_product(&p, &q).unwrap();
        assert_eq!((phi.degree(), mu(&phi)), (d, 1));
        let b = minimal_generators(&phi, d, d).unwrap();
        assert_eq!(b.multiset(), mu_one_profile(d), "d = {d}");
        assert!(verify_generation(&phi, &b));
        let direct: Vec<_> = minimal_generators_direct(&phi, d, d)
            .into_iter()
            .flat_map(|(k, m)| std::iter::repeat(k).take(m))
            .collect();
        assert_eq!(direct, b.multiset());
    }
}

#[test]
fn circle_profile() {
    let b = minimal_generators(&param(["t0^2 + t1^2", "t0^2 - t1^2", "2*t0*t1"]), 2, 2).unwrap();
    assert_eq!(b.multiset(), vec![(0, 2), (1, 1), (1, 1)]);
    assert_eq!(b.n0(), 3);
}

#[test]
fn mu_two_with_point_of_multiplicity_d_minus_two() {
    // u0, u1 share a factor g of degree d - 2, so (0:0:1) has multiplicity d - 2
    for (d, g, u2) in [
        (5, "t0^3 + t0*t1^2 + t1^3", "t0^5 + 2*t0^2*t1^3 - t1^5"),
        (6, "t0^4 + t0*t1^3 - t1^4", "t0^6 + t0^3*t1^3 + 3*t0*t1^5 + t1^6"),
    ] {
        let g = parse_tform(g).unwrap();
        let a = &g * &parse_tform("t0^2 - t1^2").unwrap();
        let b = &g * &parse_tform("t0*t1 + 2*t1^2").unwrap();
        let phi = Parametrization::new(a, b, parse_tform(u2).unwrap()).unwrap();
        assert_eq!((phi.degree(), mu(&phi), tracing_index(&phi, 0).unwrap()), (d, 2, 1));
        let profile = minimal_generators(&phi, d, d).unwrap();
        assert_eq!(profile.n0(), (d + 6) / 2, "d = {d}: {:?}", profile.multiset());
        let direct: usize = minimal_generators_direct(&phi, d, d).values().sum();
        assert_eq!(direct, profile.n0());
    }
}

#[test]
fn profile_invariants() {
    let phi = param(["t0^3 + t1^3", "3*t0^2*t1", "3*t0*t1^2"]);
    let b = minimal_generators(&phi, 3, 3).unwrap();
    assert_eq!(b.count(0, 3), 1);
    assert!(b.count(1, 1) >= 1 && b.count(2, 1) >= 1);
    for g in &b.generators {
        assert!(g.substitute(&phi).is_zero());
    }
    // widening the box keeps every generator already found
    let wide = minimal_generators(&phi, 5, 5).unwrap();
    for (&k, &m) in &b.betti {
        assert_eq!(wide.betti.get(&k), Some(&m));
    }
}

#[test]
fn survey_contracts() {
    let r = survey(4, 20, 7, None).unwrap();
    assert_eq!(r.samples.len(), 20);
    assert!(r.samples.iter().all(|s| s.mu == 2));
    let r3 = survey(3, 10, 1, None).unwrap();
    for s in &r3.samples {
        assert_eq!(s.betti.iter().filter(|&&(a, b, _)| (a, b) == (0, 3)).map(|t| t.2).sum::<usize>(), 1);
    }
    assert_eq!(survey(3, 10, 1, None).unwrap(), r3);
}

#[test]
fn zero_forms_carry_degrees() {
    assert_eq!(TForm::zero(3).degree(), 3);
    assert_eq!(BiForm::zero(2, 1).bidegree(), (2, 1));
}
