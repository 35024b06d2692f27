//! Minimal generators of the moving-curve ideal `K`, the kernel of
//! `K[t, X] -> K[t, z]`, `X_j -> u_j(t) z`.
//!
//! Let `I = (u0, u1, u2)` in `B = K[t0, t1]` and `m = (t0, t1)`. Minimal
//! generators of `K` in bidegree `(delta, nu)` are counted by the first
//! Koszul homology of the Rees algebra. Splitting the Koszul complex into its
//! `t` and `X` parts gives, for `delta >= 1` and `s = delta + nu*d - 2`,
//!
//! ```text
//! count = dim (I^nu : m)_s - dim (I^nu_s + sum_j u_j (I^(nu-1) : m)_(s-d))
//! ```
//!
//! while in t-degree 0 the only generator is the implicit equation. All
//! spaces live in `B_s`, of dimension `s + 1`, which keeps the linear algebra
//! small even when the bidegree pieces of `K` are large. Each `I^nu_s` is
//! kept through its orthogonal complement, whose dimension is the small
//! codimension of `I^nu_s`; the counts are ranks of matrices built from
//! these complements.
//! [`minimal_generators_direct`] performs the plain Nakayama count inside the
//! pieces of `K` instead and serves as a cross-check on small inputs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::implicit::{implicitize_mubasis, tracing_index};
use crate::linalg::{self, Echelon};
use crate::par;
use crate::poly::xform::PowerTable;
use crate::poly::{monomials, BiForm, Parametrization, TForm, XForm};
use crate::scalar::Scalar;
use crate::syzygy::{moving_space, moving_space_dim, mu, substitution_matrix, MovingCurve};

/// Dimension of `K` in bidegree `(tdeg, xdeg)`.
pub fn kernel_dimension(phi: &Parametrization, tdeg: usize, xdeg: usize) -> usize {
    moving_space_dim(phi, tdeg, xdeg)
}

/// Bidegrees of a minimal generating set of `K` found inside a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiProfile {
    pub d: usize,
    pub mu: usize,
    /// Degree of the implicit equation.
    pub implicit_degree: usize,
    /// `(tmax, xmax)`.
    pub bounds: (usize, usize),
    /// Multiplicity of each bidegree `(delta, nu)`.
    pub betti: BTreeMap<(usize, usize), usize>,
    /// One representative per generator, in scan order.
    pub generators: Vec<MovingCurve>,
    /// `dim K` for every bidegree of the box.
    pub kernel_dims: BTreeMap<(usize, usize), usize>,
    /// No generator lies beyond the box in the t-direction, for X-degrees
    /// inside the box.
    pub t_certified: bool,
    /// Result of the widened rescan, when one was run: whether it found
    /// generators outside the original box.
    pub rescan_found_more: Option<bool>,
    /// Set unless the t-direction is certified and a widened rescan found
    /// nothing new. The X-direction is never certified.
    pub truncated: bool,
}

impl BettiProfile {
    pub fn n0(&self) -> usize {
        self.betti.values().sum()
    }

    /// The bidegree multiset as a sorted list with repetitions.
    pub fn multiset(&self) -> Vec<(usize, usize)> {
        self.betti
            .iter()
            .flat_map(|(&b, &m)| std::iter::repeat(b).take(m))
            .collect()
    }

    pub fn count(&self, delta: usize, nu: usize) -> usize {
        self.betti.get(&(delta, nu)).copied().unwrap_or(0)
    }
}

/// `I^nu_s` for a fixed `nu` and `s` from `nu*d` upward, stored through its
/// orthogonal complement in `B_s`. The complements stay small (at most the
/// codimension of `I^nu_s`), while `I^nu_s` itself fills almost all of `B_s`.
struct PowerChain {
    start: usize,
    /// Reduced echelon basis of `(I^nu_s)^perp` for `s = start..=top`.
    duals: Vec<Vec<Vec<Scalar>>>,
}

impl PowerChain {
    /// `gens` spans `I^nu_start`.
    fn new(gens: &[Vec<Scalar>], start: usize, top: usize) -> Self {
        let base = linalg::kernel_fraction_free(gens, start + 1);
        let mut duals = vec![base];
        for s in start..top {
            let next = next_dual(duals.last().unwrap(), s);
            duals.push(next);
        }
        PowerChain { start, duals }
    }

    /// Complement of `I^nu_s`; all of `B_s` below the initial degree.
    fn dual(&self, s: usize) -> Vec<Vec<Scalar>> {
        if s < self.start {
            identity(s + 1)
        } else {
            self.duals[s - self.start].clone()
        }
    }

    fn rank(&self, s: usize) -> usize {
        s + 1 - self.dual(s).len()
    }

    fn is_full(&self, s: usize) -> bool {
        s >= self.start && self.duals.get(s - self.start).is_some_and(Vec::is_empty)
    }

    /// Spanning set of `((I^nu : m)_s)^perp`, or `None` when the colon is
    /// zero: `f` lies in the colon when `t0 f` and `t1 f` are orthogonal to
    /// the complement in degree `s + 1`, i.e. when `f` is orthogonal to both
    /// windows of each complement vector.
    fn colon_perp(&self, s: usize) -> Option<Vec<Vec<Scalar>>> {
        if s + 1 < self.start {
            return None;
        }
        let dual = &self.duals[s + 1 - self.start];
        Some(dual.iter().flat_map(|n| [n[..=s].to_vec(), n[1..].to_vec()]).collect())
    }

    /// Basis of `(I^nu : m)_s`.
    fn colon(&self, s: usize) -> Vec<Vec<Scalar>> {
        match self.colon_perp(s) {
            None => Vec::new(),
            Some(perp) if perp.is_empty() => identity(s + 1),
            Some(perp) => linalg::kernel(&perp, s + 1),
        }
    }
}

/// Complement in degree `s + 1` of `t0 W + t1 W`, from a complement `m` of
/// `W` in degree `s`: the `n` whose two length-`(s+1)` windows both lie in
/// the span of `m`.
fn next_dual(m: &[Vec<Scalar>], s: usize) -> Vec<Vec<Scalar>> {
    let k = m.len();
    if k == 0 {
        return Vec::new();
    }
    // n[..=s] = a.m and n[1..] = b.m, so (a.m)[i+1] = (b.m)[i]
    let rows: Vec<Vec<Scalar>> = (0..s)
        .map(|i| {
            let mut r: Vec<Scalar> = m.iter().map(|row| row[i + 1].clone()).collect();
            r.extend(m.iter().map(|row| -&row[i]));
            r
        })
        .collect();
    let combos = linalg::kernel_fraction_free(&rows, 2 * k);
    let ns: Vec<Vec<Scalar>> = combos
        .iter()
        .map(|ab| {
            let (a, b) = ab.split_at(k);
            let mut n = combine(a, m, s + 1);
            n.push(combine(b, m, s + 1)[s].clone());
            n
        })
        .collect();
    Echelon::from_rows(s + 2, &ns).into_rows()
}

/// `sum_r a_r m_r`.
fn combine(a: &[Scalar], m: &[Vec<Scalar>], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (ar, row) in a.iter().zip(m) {
        if !ar.is_zero() {
            for (o, x) in out.iter_mut().zip(row) {
                *o += &(ar * x);
            }
        }
    }
    out
}

/// The functional `w -> n . (u w)` on forms `w` of length `len`.
fn contract(n: &[Scalar], u: &TForm, len: usize) -> Vec<Scalar> {
    (0..len)
        .map(|i| {
            let mut acc = Scalar::zero();
            for (k, c) in u.coeffs().iter().enumerate() {
                if !c.is_zero() && !n[i + k].is_zero() {
                    acc += &(&n[i + k] * c);
                }
            }
            acc
        })
        .collect()
}

/// Number of minimal generators of bidegree `(delta, nu)`: the dimension of
/// `(I^nu : m)_s` modulo `I^nu_s + sum u_j (I^(nu-1) : m)_(s-d)`, computed
/// as a difference of the two orthogonal complements.
fn socle_count(phi: &Parametrization, chains: &[PowerChain], delta: usize, nu: usize) -> usize {
    let d = phi.degree();
    let s = delta + nu * d - 2;
    let dual = chains[nu].dual(s);
    let Some(perp) = chains[nu].colon_perp(s) else {
        return 0;
    };
    if dual.is_empty() {
        return 0;
    }
    let colon_codim = linalg::rank_fraction_free(&perp, s + 1);
    // the a.dual with every contraction by u_j orthogonal to the lower colon
    let lower = if s >= d { chains[nu - 1].colon_perp(s - d) } else { None };
    // rank of [C' (+) C' (+) C'; contractions] minus that of the block part
    let constrained = lower.map_or(0, |p| {
        let len = s - d + 1;
        let width = 3 * len;
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(3 * p.len() + dual.len());
        for block in 0..3 {
            for r in &p {
                let mut row = vec![Scalar::zero(); width];
                row[block * len..(block + 1) * len].clone_from_slice(r);
                rows.push(row);
            }
        }
        let lower_rank = 3 * linalg::rank_fraction_free(&p, len);
        rows.extend(dual.iter().map(|m| phi.components().iter().flat_map(|u| contract(m, u, len)).collect()));
        linalg::rank_fraction_free(&rows, width) - lower_rank
    });
    (dual.len() - constrained).checked_sub(colon_codim).expect("colon contains the lower span")
}

/// Elements of `(I^nu : m)_s` independent modulo the lower span, one per
/// minimal generator.
fn socle_basis(phi: &Parametrization, chains: &[PowerChain], delta: usize, nu: usize) -> Vec<Vec<Scalar>> {
    let d = phi.degree();
    let s = delta + nu * d - 2;
    let colon = chains[nu].colon(s);
    // work modulo I^nu_s: project onto its complement
    let dual = chains[nu].dual(s);
    let project = |v: &[Scalar]| linalg::mat_vec(&dual, v);
    let mut span = Echelon::new(dual.len());
    if s >= d {
        for c in chains[nu - 1].colon(s - d) {
            for uj in phi.components() {
                span.insert(project(&times(&c, uj)));
            }
        }
    }
    colon.into_iter().filter(|c| span.insert(project(c))).collect()
}

fn identity(n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        })
        .collect()
}

fn times(v: &[Scalar], u: &TForm) -> Vec<Scalar> {
    (&TForm::new(v.to_vec()) * u).coeffs().to_vec()
}

/// The products `u^alpha` with `|alpha| = nu`, for `nu = 0..=xmax`; they
/// span `I^nu_(nu d)`.
fn power_generators(phi: &Parametrization, xmax: usize) -> Vec<Vec<Vec<Scalar>>> {
    let u = phi.components();
    // (last factor index, coefficients), so each monomial appears once
    let mut level: Vec<(usize, Vec<Scalar>)> = vec![(0, vec![Scalar::one()])];
    let mut out = vec![vec![vec![Scalar::one()]]];
    for _ in 1..=xmax {
        level = level
            .iter()
            .flat_map(|(last, g)| (*last..3).map(move |j| (j, times(g, &u[j]))))
            .collect();
        out.push(level.iter().map(|(_, g)| g.clone()).collect());
    }
    out
}

/// Moving curve of bidegree `(delta, nu)` attached to a socle element
/// `c` of `B/I^nu` in degree `s = delta + nu*d - 2`.
fn representative(phi: &Parametrization, c: &[Scalar], delta: usize, nu: usize) -> Result<BiForm> {
    let powers = PowerTable::new(phi.components(), nu);
    let a = substitution_matrix(&powers, delta - 1, nu);
    let n = monomials(nu).len() * delta;
    let ct = TForm::new(c.to_vec());
    let rhs_a = (&ct * &TForm::t1()).coeffs().to_vec();
    let rhs_b = (&(-&ct) * &TForm::t0()).coeffs().to_vec();
    let xa = linalg::solve(&a, &rhs_a, n).ok_or(Error::NotMovingCurve)?;
    let xb = linalg::solve(&a, &rhs_b, n).ok_or(Error::NotMovingCurve)?;
    let la = BiForm::from_coords(delta - 1, nu, &xa).mul_tform(&TForm::t0());
    let lb = BiForm::from_coords(delta - 1, nu, &xb).mul_tform(&TForm::t1());
    Ok(&la + &lb)
}

struct Scan {
    betti: BTreeMap<(usize, usize), usize>,
    socle_reps: Vec<((usize, usize), Vec<Scalar>)>,
    kernel_dims: BTreeMap<(usize, usize), usize>,
    t_certified: bool,
}

fn scan(phi: &Parametrization, tmax: usize, xmax: usize, implicit_degree: usize, reps: bool) -> Scan {
    let d = phi.degree();
    let gens = power_generators(phi, xmax);
    let nus: Vec<usize> = (0..=xmax).collect();
    let chains: Vec<PowerChain> = par::map(&nus, |&nu| PowerChain::new(&gens[nu], nu * d, tmax + nu * d));
    let t_certified = (1..=xmax).all(|nu| tmax + nu * d >= 1 && chains[nu].is_full(tmax + nu * d - 1));

    let mut kernel_dims = BTreeMap::new();
    for nu in 0..=xmax {
        for delta in 0..=tmax {
            let ambient = (delta + 1) * monomials(nu).len();
            kernel_dims.insert((delta, nu), ambient - chains[nu].rank(delta + nu * d));
        }
    }

    let cells: Vec<(usize, usize)> = (1..=xmax).flat_map(|nu| (1..=tmax).map(move |delta| (delta, nu))).collect();
    let counted: Vec<(usize, Vec<Vec<Scalar>>)> = par::map(&cells, |&(delta, nu)| {
        let n = socle_count(phi, &chains, delta, nu);
        if n == 0 || !reps {
            return (n, Vec::new());
        }
        let basis = socle_basis(phi, &chains, delta, nu);
        assert_eq!(basis.len(), n, "socle count at ({delta},{nu})");
        (n, basis)
    });

    let mut betti = BTreeMap::new();
    let mut socle_reps = Vec::new();
    if implicit_degree <= xmax {
        betti.insert((0, implicit_degree), 1);
    }
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&i| (cells[i].0 + cells[i].1, cells[i].0));
    for i in order {
        let (n, basis) = &counted[i];
        if *n > 0 {
            betti.insert(cells[i], *n);
            socle_reps.extend(basis.iter().map(|c| (cells[i], c.clone())));
        }
    }
    Scan {
        betti,
        socle_reps,
        kernel_dims,
        t_certified,
    }
}

/// Options for [`minimal_generators_with`].
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Also scan a box widened by this much in both directions and report
    /// whether generators appear outside the requested box.
    pub rescan: Option<usize>,
    /// Build an explicit moving curve for every generator.
    pub representatives: bool,
    pub seed: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            rescan: None,
            representatives: true,
            seed: 0,
        }
    }
}

/// Minimal generator bidegrees in the box `[0, tmax] x [0, xmax]`.
pub fn minimal_generators(phi: &Parametrization, tmax: usize, xmax: usize) -> Result<BettiProfile> {
    minimal_generators_with(phi, tmax, xmax, ScanOptions::default())
}

pub fn minimal_generators_with(
    phi: &Parametrization,
    tmax: usize,
    xmax: usize,
    opts: ScanOptions,
) -> Result<BettiProfile> {
    let d = phi.degree();
    let m = mu(phi);
    let implicit = implicitize_mubasis(phi, opts.seed)?;
    let big_d = implicit.degree;
    if xmax < big_d.max(1) {
        return Err(Error::BoxTooSmall(tmax, xmax, format!("the implicit equation has degree {big_d}")));
    }
    if tmax < d - m {
        return Err(Error::BoxTooSmall(tmax, xmax, format!("the mu-basis needs t-degree {}", d - m)));
    }
    let sc = scan(phi, tmax, xmax, big_d, opts.representatives);
    let rescan_found_more = opts.rescan.map(|w| {
        let wide = scan(phi, tmax + w, xmax + w, big_d, false);
        wide.betti.len() != sc.betti.len() || wide.betti.keys().any(|&(a, b)| a > tmax || b > xmax)
    });

    let fp = phi.fingerprint();
    let mut generators = Vec::new();
    if opts.representatives {
        generators.push(MovingCurve::trusted(BiForm::from_xform(&implicit.f), fp));
        let built: Vec<Result<BiForm>> =
            par::map(&sc.socle_reps, |((delta, nu), c)| representative(phi, c, *delta, *nu));
        for l in built {
            generators.push(MovingCurve::trusted(l?, fp));
        }
        generators.sort_by_key(|g| (g.tdeg() + g.xdeg(), g.tdeg()));
    }
    let truncated = !sc.t_certified || rescan_found_more != Some(false);
    Ok(BettiProfile {
        d,
        mu: m,
        implicit_degree: big_d,
        bounds: (tmax, xmax),
        betti: sc.betti,
        generators,
        kernel_dims: sc.kernel_dims,
        t_certified: sc.t_certified,
        rescan_found_more,
        truncated,
    })
}

/// Nakayama count inside the pieces of `K`: at each bidegree, the dimension
/// of `K` minus the span of the `t`- and `X`-multiples of the neighbouring
/// lower pieces.
pub fn minimal_generators_direct(phi: &Parametrization, tmax: usize, xmax: usize) -> BTreeMap<(usize, usize), usize> {
    let mut spaces: BTreeMap<(usize, usize), Vec<BiForm>> = BTreeMap::new();
    let mut betti = BTreeMap::new();
    let mut cells: Vec<(usize, usize)> = (0..=tmax).flat_map(|a| (0..=xmax).map(move |b| (a, b))).collect();
    cells.sort_by_key(|&(a, b)| (a + b, a));
    for (delta, nu) in cells {
        let basis = forms(phi, delta, nu);
        let lower = lower_span(delta, nu, spaces.get(&(delta.wrapping_sub(1), nu)), spaces.get(&(delta, nu.wrapping_sub(1))));
        let count = basis.len() - lower.rank();
        if count > 0 {
            betti.insert((delta, nu), count);
        }
        spaces.insert((delta, nu), basis);
    }
    betti
}

/// The direct Nakayama count at a single bidegree.
pub fn generator_count_direct(phi: &Parametrization, delta: usize, nu: usize) -> usize {
    let below_t = (delta > 0).then(|| forms(phi, delta - 1, nu));
    let below_x = (nu > 0).then(|| forms(phi, delta, nu - 1));
    let lower = lower_span(delta, nu, below_t.as_ref(), below_x.as_ref());
    kernel_dimension(phi, delta, nu) - lower.rank()
}

fn forms(phi: &Parametrization, delta: usize, nu: usize) -> Vec<BiForm> {
    moving_space(phi, delta, nu).into_iter().map(MovingCurve::into_form).collect()
}

fn lower_span(delta: usize, nu: usize, below_t: Option<&Vec<BiForm>>, below_x: Option<&Vec<BiForm>>) -> Echelon {
    let mut lower = Echelon::new((delta + 1) * monomials(nu).len());
    for l in below_t.into_iter().flatten() {
        lower.insert(l.mul_tform(&TForm::t0()).to_coords());
        lower.insert(l.mul_tform(&TForm::t1()).to_coords());
    }
    for l in below_x.into_iter().flatten() {
        for j in 0..3 {
            lower.insert(l.mul_xform(&XForm::var(j)).to_coords());
        }
    }
    lower
}

/// Checks that monomial multiples of the profile's generators span every
/// piece of `K` in the box, and that each generator follows `phi`.
pub fn verify_generation(phi: &Parametrization, profile: &BettiProfile) -> bool {
    if profile.generators.iter().any(|g| !g.substitute(phi).is_zero()) {
        return false;
    }
    let (tmax, xmax) = profile.bounds;
    let mut spans: BTreeMap<(usize, usize), Echelon> = BTreeMap::new();
    for delta in 0..=tmax {
        for nu in 0..=xmax {
            let n = (delta + 1) * monomials(nu).len();
            let mut e = Echelon::new(n);
            for g in profile.generators.iter().filter(|g| g.bidegree() == (delta, nu)) {
                e.insert(g.to_coords());
            }
            if delta > 0 {
                let below = &spans[&(delta - 1, nu)];
                for row in below.rows() {
                    let l = BiForm::from_coords(delta - 1, nu, row);
                    e.insert(l.mul_tform(&TForm::t0()).to_coords());
                    e.insert(l.mul_tform(&TForm::t1()).to_coords());
                }
            }
            if nu > 0 {
                let below = &spans[&(delta, nu - 1)];
                for row in below.rows() {
                    let l = BiForm::from_coords(delta, nu - 1, row);
                    for j in 0..3 {
                        e.insert(l.mul_xform(&XForm::var(j)).to_coords());
                    }
                }
            }
            if e.rank() != profile.kernel_dims[&(delta, nu)] {
                return false;
            }
            spans.insert((delta, nu), e);
        }
    }
    true
}

/// One accepted sample of a survey.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveySample {
    pub index: usize,
    pub phi: Parametrization,
    pub mu: usize,
    pub n0: usize,
    pub betti: Vec<(usize, usize, usize)>,
    pub truncated: bool,
}

/// Frequency table of Betti profiles over random proper parametrizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    pub d: usize,
    pub seed: u64,
    pub samples: Vec<SurveySample>,
    /// `(n0, profile) -> count`.
    pub table: BTreeMap<(usize, Vec<(usize, usize, usize)>), usize>,
    /// Samples rejected for a common factor, improperness or the mu filter.
    pub rejected: usize,
    /// Indices of samples whose `n0` exceeds the most frequent `n0` among
    /// samples with `mu = floor(d/2)`; candidates against the expectation
    /// that generic inputs maximize `n0`.
    pub flagged: Vec<usize>,
}

const SURVEY_ATTEMPTS: usize = 200;

fn random_param(rng: &mut ChaCha8Rng, d: usize) -> Result<Parametrization> {
    let mut comp = || TForm::new((0..=d).map(|_| Scalar::from(rng.gen_range(-3i64..=3))).collect());
    let (a, b, c) = (comp(), comp(), comp());
    Parametrization::new(a, b, c)
}

/// First proper parametrization of degree `d` on stream `index` of `seed`,
/// drawn as [`survey`] draws its samples.
pub fn sample_parametrization(d: usize, seed: u64, index: u64) -> Result<Parametrization> {
    if d == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index + 1);
    for _ in 0..SURVEY_ATTEMPTS {
        if let Ok(phi) = random_param(&mut rng, d) {
            if tracing_index(&phi, seed ^ index)? == 1 {
                return Ok(phi);
            }
        }
    }
    Err(Error::InvalidInput(format!("no proper degree-{d} sample in {SURVEY_ATTEMPTS} draws")))
}

/// Samples `count` proper parametrizations of degree `d` (optionally with a
/// prescribed `mu`) and tabulates their Betti profiles in the box `(d, d)`.
/// Each sample index draws from its own seeded stream, so the report does
/// not depend on scheduling.
pub fn survey(d: usize, count: usize, seed: u64, mu_filter: Option<usize>) -> Result<SurveyReport> {
    if d == 0 || d > 12 {
        return Err(Error::InvalidInput(format!("survey degree {d} outside 1..=12")));
    }
    if count == 0 {
        return Err(Error::InvalidInput("survey needs at least one sample".into()));
    }
    let indices: Vec<usize> = (0..count).collect();
    let drawn: Vec<Result<(Option<SurveySample>, usize)>> = par::map(&indices, |&index| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64 + 1);
        let mut rejected = 0;
        for _ in 0..SURVEY_ATTEMPTS {
            let Ok(phi) = random_param(&mut rng, d) else {
                rejected += 1;
                continue;
            };
            let m = mu(&phi);
            if mu_filter.is_some_and(|f| f != m) || tracing_index(&phi, seed ^ index as u64)? != 1 {
                rejected += 1;
                continue;
            }
            let opts = ScanOptions {
                representatives: false,
                seed,
                ..ScanOptions::default()
            };
            let profile = minimal_generators_with(&phi, d, d, opts)?;
            let betti = profile.betti.iter().map(|(&(a, b), &k)| (a, b, k)).collect();
            return Ok((
                Some(SurveySample {
                    index,
                    mu: m,
                    n0: profile.n0(),
                    betti,
                    truncated: profile.truncated,
                    phi,
                }),
                rejected,
            ));
        }
        Ok((None, rejected))
    });

    let mut samples = Vec::new();
    let mut rejected = 0;
    for r in drawn {
        let (s, rej) = r?;
        rejected += rej;
        samples.extend(s);
    }
    let mut table = BTreeMap::new();
    for s in &samples {
        *table.entry((s.n0, s.betti.clone())).or_insert(0) += 1;
    }
    let mut generic_n0: BTreeMap<usize, usize> = BTreeMap::new();
    for s in samples.iter().filter(|s| s.mu == d / 2) {
        *generic_n0.entry(s.n0).or_insert(0) += 1;
    }
    let mode = generic_n0.iter().max_by_key(|(n0, c)| (**c, std::cmp::Reverse(**n0))).map(|(n0, _)| *n0);
    let flagged = match mode {
        Some(m) => samples.iter().filter(|s| s.n0 > m).map(|s| s.index).collect(),
        None => Vec::new(),
    };
    Ok(SurveyReport {
        d,
        seed,
        samples,
        table,
        rejected,
        flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> Parametrization {
        Parametrization::from_ints(&[1, 0, 1], &[1, 0, -1], &[0, 2, 0]).unwrap()
    }

    #[test]
    fn circle_profile() {
        let p = minimal_generators(&circle(), 2, 2).unwrap();
        assert_eq!(p.multiset(), vec![(0, 2), (1, 1), (1, 1)]);
        assert_eq!(p.n0(), 3);
        assert_eq!(p.kernel_dims[&(0, 2)], 1);
        assert_eq!(p.kernel_dims[&(1, 1)], 2);
        assert_eq!(p.kernel_dims[&(0, 0)], 0);
        assert!(p.t_certified);
        assert!(verify_generation(&circle(), &p));
        assert_eq!(minimal_generators_direct(&circle(), 2, 2), p.betti);
    }

    #[test]
    fn kernel_dims_match_moving_spaces() {
        let phi = Parametrization::from_ints(&[1, 0, 0, 1], &[0, 3, 0, 0], &[0, 0, 3, 0]).unwrap();
        let p = minimal_generators(&phi, 3, 3).unwrap();
        for (&(a, b), &k) in &p.kernel_dims {
            assert_eq!(k, kernel_dimension(&phi, a, b), "({a},{b})");
        }
        assert_eq!(minimal_generators_direct(&phi, 3, 3), p.betti);
    }

    #[test]
    fn box_validation() {
        assert!(matches!(minimal_generators(&circle(), 2, 1), Err(Error::BoxTooSmall(..))));
        assert!(matches!(minimal_generators(&circle(), 0, 2), Err(Error::BoxTooSmall(..))));
    }

    #[test]
    fn survey_is_deterministic() {
        let a = survey(3, 4, 11, None).unwrap();
        let b = survey(3, 4, 11, None).unwrap();
        assert_eq!(a, b);
        assert!(a.samples.iter().all(|s| s.betti.iter().filter(|(x, y, _)| (*x, *y) == (0, 3)).count() == 1));
    }
}
