//! Randomized and exhaustive checks of the library against its closed-form
//! statements. Each suite returns a report with one line per check group.
//!
//! Samples are drawn sequentially from a seeded ChaCha generator and then
//! evaluated in parallel; results are collected in sample order, so reports
//! do not depend on thread scheduling.

use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{compositions, GaussRational, Matrix, Monomial, Poly, Rational};
use crate::classify::{
    classify_cr_image, classify_quadric, levi_flat_image_param, squared_image_example, CRImageForm, ClassLabel,
};
use crate::error::Error;
use crate::extend::{
    build_xd, counterexample_linear, cr_dimension_formula, cr_homogeneous_basis, extend_homogeneous,
    matching_system, rank_formula,
};
use crate::formal::formal_extend;
use crate::manifold::{Manifold, Quadric};
use crate::odecrit::{brute_force_ode, decide, OdeCase, OdeDecision, OdeParams, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    RankFormula,
    BlockRanks,
    ExtensionSweep,
    Uniqueness,
    Examples,
    Classification,
    Ode,
    Restriction,
    LeviFlat,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::RankFormula,
        Suite::BlockRanks,
        Suite::ExtensionSweep,
        Suite::Uniqueness,
        Suite::Examples,
        Suite::Classification,
        Suite::Ode,
        Suite::Restriction,
        Suite::LeviFlat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RankFormula => "rank-formula",
            Suite::BlockRanks => "block-ranks",
            Suite::ExtensionSweep => "extension-sweep",
            Suite::Uniqueness => "uniqueness",
            Suite::Examples => "examples",
            Suite::Classification => "classification",
            Suite::Ode => "ode",
            Suite::Restriction => "restriction",
            Suite::LeviFlat => "levi-flat",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Degree bound used when none is given.
    pub fn default_dmax(self) -> u32 {
        match self {
            Suite::RankFormula | Suite::BlockRanks | Suite::Examples => 8,
            Suite::ExtensionSweep => 4,
            Suite::Uniqueness | Suite::Restriction => 6,
            Suite::Ode => 12,
            Suite::Classification | Suite::LeviFlat => 0,
        }
    }

    /// Sample count used when none is given.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::RankFormula | Suite::BlockRanks => 20,
            Suite::ExtensionSweep | Suite::Uniqueness => 200,
            Suite::Examples | Suite::Classification => 50,
            Suite::Ode => 500,
            Suite::Restriction => 100,
            Suite::LeviFlat => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub dmax: Option<u32>,
    pub samples: Option<usize>,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            dmax: None,
            samples: None,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub lines: Vec<String>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            lines: Vec::new(),
            passed: true,
        }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.lines.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, line: String) {
        self.lines.push(format!("     {line}"));
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for l in &self.lines {
            writeln!(f, "  {l}")?;
        }
        write!(f, "result: {}", if self.passed { "pass" } else { "fail" })
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> SuiteReport {
    let dmax = cfg.dmax.unwrap_or(suite.default_dmax());
    let samples = cfg.samples.unwrap_or(suite.default_samples());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match suite {
        Suite::RankFormula => rank_formula_suite(&mut rng, samples, dmax),
        Suite::BlockRanks => block_rank_suite(&mut rng, samples, dmax),
        Suite::ExtensionSweep => extension_sweep_suite(&mut rng, samples, dmax),
        Suite::Uniqueness => uniqueness_suite(&mut rng, samples, dmax),
        Suite::Examples => examples_suite(&mut rng, samples, dmax),
        Suite::Classification => classification_suite(&mut rng, samples),
        Suite::Ode => ode_suite(&mut rng, samples, dmax),
        Suite::Restriction => restriction_suite(&mut rng, samples, dmax),
        Suite::LeviFlat => levi_flat_suite(),
    }
}

// ---------------------------------------------------------------------------
// sampling

fn frac(num: i64, den: i64) -> GaussRational {
    GaussRational::from_frac(num, den, 0, 1)
}

/// Uniform over `{0, +-1, +-i, +-1/2}`.
pub fn small_entry(rng: &mut impl Rng) -> GaussRational {
    match rng.gen_range(0..7) {
        0 => GaussRational::zero(),
        1 => frac(1, 1),
        2 => frac(-1, 1),
        3 => GaussRational::i(),
        4 => -GaussRational::i(),
        5 => frac(1, 2),
        _ => frac(-1, 2),
    }
}

/// Nonzero Gaussian rational with small numerators and denominators.
pub fn nonzero_entry(rng: &mut impl Rng) -> GaussRational {
    loop {
        let c = GaussRational::from_frac(
            rng.gen_range(-5..=5),
            rng.gen_range(1..=4),
            rng.gen_range(-3..=3),
            rng.gen_range(1..=3),
        );
        if !c.is_zero() {
            return c;
        }
    }
}

fn entry_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, small_entry(rng));
        }
    }
    m
}

fn symmetric_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let c = small_entry(rng);
            m.set(i, j, c.clone());
            m.set(j, i, c);
        }
    }
    m
}

/// Random quadric with entries in `{0, +-1, +-i, +-1/2}`. One sample in
/// three is forced to rank at most one (`A* = x a^t`, `B = beta x x^t`),
/// since generic matrices almost never fail the rank condition.
pub fn random_quadric(rng: &mut impl Rng, n: usize) -> Quadric {
    let c = symmetric_matrix(rng, n);
    if rng.gen_range(0..3) == 0 {
        let x: Vec<GaussRational> = (0..n).map(|_| small_entry(rng)).collect();
        let a_row: Vec<GaussRational> = (0..n).map(|_| small_entry(rng)).collect();
        let beta = small_entry(rng);
        // A* = a_row^T x^T as columns: (A*)_{ij} = a_i x_j, so A_{ij} = conj(a_j x_i)
        let a = Matrix::from_fn(n, n, |i, j| (&a_row[j] * &x[i]).conj());
        let b = Matrix::from_fn(n, n, |i, j| &beta * &(&x[i] * &x[j]));
        return Quadric::new(a, b, c).expect("symmetric by construction");
    }
    Quadric::new(entry_matrix(rng, n), symmetric_matrix(rng, n), c).expect("symmetric by construction")
}

fn random_rank2_quadric(rng: &mut impl Rng, n: usize) -> Quadric {
    loop {
        let q = Quadric::new(entry_matrix(rng, n), symmetric_matrix(rng, n), symmetric_matrix(rng, n))
            .expect("symmetric by construction");
        if q.rank_condition() >= 2 {
            return q;
        }
    }
}

/// Random invertible matrix with entries in `{0, +-1, +-i, +-1/2}`.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let t = entry_matrix(rng, n);
        if !t.determinant().is_zero() {
            return t;
        }
    }
}

/// Random holomorphic polynomial in `(z, w)` of weighted degree `<= max`.
pub fn random_holomorphic(rng: &mut impl Rng, n: usize, max_weighted: u32) -> Poly {
    let mut monos = Vec::new();
    for d in 0..=max_weighted {
        for j in 0..=d / 2 {
            for alpha in compositions(n, d - 2 * j) {
                monos.push(Monomial::from_parts(&alpha, &vec![0; n], j));
            }
        }
    }
    let count = rng.gen_range(1..=5);
    let terms: Vec<(Monomial, GaussRational)> = monos
        .choose_multiple(rng, count)
        .cloned()
        .map(|m| (m, nonzero_entry(rng)))
        .collect();
    Poly::from_terms(n, terms)
}

fn random_higher_order(rng: &mut impl Rng, n: usize) -> Poly {
    let mut monos: Vec<Monomial> = Vec::new();
    for d in 3..=4 {
        monos.extend(crate::algebra::zzbar_monomials(n, d));
    }
    let count = rng.gen_range(1..=4);
    let terms: Vec<(Monomial, GaussRational)> = monos
        .choose_multiple(rng, count)
        .cloned()
        .map(|m| (m, small_nonzero(rng)))
        .collect();
    Poly::from_terms(n, terms)
}

fn small_nonzero(rng: &mut impl Rng) -> GaussRational {
    loop {
        let c = small_entry(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn hermitian_family(beta: &GaussRational, delta: &GaussRational) -> Quadric {
    let a = Matrix::from_rows(vec![
        vec![GaussRational::one(), beta.clone()],
        vec![GaussRational::zero(), delta.clone()],
    ]);
    Quadric::hermitian(a).expect("square")
}

fn family_samples(rng: &mut impl Rng, samples: usize) -> Vec<(GaussRational, GaussRational)> {
    (0..samples)
        .map(|_| {
            let beta = GaussRational::from_frac(
                rng.gen_range(-5..=5),
                rng.gen_range(1..=4),
                rng.gen_range(-3..=3),
                rng.gen_range(1..=3),
            );
            (beta, nonzero_entry(rng))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// rank formula and block ranks

fn rank_formula_suite(rng: &mut impl Rng, samples: usize, dmax: u32) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::RankFormula);
    let params = family_samples(rng, samples);
    report.note(format!(
        "Q = |z1|^2 + beta*z2*zb1 + delta*|z2|^2, {samples} random (beta, delta != 0)"
    ));
    report.note(format!("{:>3} {:>6} {:>8} {:>5} {:>9} {:>8}", "d", "rank", "formula", "dim", "expected", "samples"));
    for d in 1..=dmax {
        let ranks: Vec<usize> = params
            .par_iter()
            .map(|(b, dl)| build_xd(&hermitian_family(b, dl), d).rank())
            .collect();
        let columns = crate::algebra::monomial_count(4, d);
        let formula = rank_formula(d);
        let expected_dim = cr_dimension_formula(d);
        let agree = ranks
            .iter()
            .filter(|&&r| r as u64 == formula && columns - r as u64 == expected_dim)
            .count();
        let shown = ranks.first().copied().unwrap_or(0);
        report.check(
            agree == ranks.len(),
            format!(
                "{:>3} {:>6} {:>8} {:>5} {:>9} {:>5}/{:<3} match={}",
                d,
                shown,
                formula,
                columns - shown as u64,
                expected_dim,
                agree,
                ranks.len(),
                agree == ranks.len()
            ),
        );
    }
    report
}

/// Predicted rank of the block sending `zb`-degree `j` to `j - 1`.
pub fn block_rank_formula(j: u32, d: u32) -> u64 {
    let (j, d) = (j as u64, d as u64);
    if d - j + 1 <= j {
        (j + 1) * (d - j + 1)
    } else {
        j * (d - j + 2)
    }
}

/// Exact ranks of the blocks of `X_d` (columns of `zb`-degree `j`, rows of
/// `zb`-degree `j - 1`) for `j = 1..=d`, and the rank of `X_d` itself.
pub fn block_ranks(q: &Quadric, d: u32) -> (Vec<usize>, usize) {
    let xd = build_xd(q, d);
    let blocks = (1..=d)
        .map(|j| {
            let cols: Vec<usize> = (0..xd.columns.len())
                .filter(|&c| xd.columns[c].antiholomorphic_degree() == j)
                .collect();
            let rows: Vec<usize> = (0..xd.rows.len())
                .filter(|&r| xd.rows[r].monomial.antiholomorphic_degree() == j - 1)
                .collect();
            xd.matrix.select(&rows, &cols).rank()
        })
        .collect();
    (blocks, xd.rank())
}

fn block_rank_suite(rng: &mut impl Rng, samples: usize, dmax: u32) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::BlockRanks);
    let params = family_samples(rng, samples);
    for d in 1..=dmax {
        let predicted: Vec<u64> = (1..=d).map(|j| block_rank_formula(j, d)).collect();
        let sum: u64 = predicted.iter().sum();
        let results: Vec<(Vec<usize>, usize)> = params
            .par_iter()
            .map(|(b, dl)| block_ranks(&hermitian_family(b, dl), d))
            .collect();
        let agree = results
            .iter()
            .filter(|(blocks, total)| {
                blocks.iter().zip(&predicted).all(|(&b, &p)| b as u64 == p) && *total as u64 == sum
            })
            .count();
        let shown: Vec<String> = predicted.iter().map(u64::to_string).collect();
        report.check(
            agree == results.len() && sum == rank_formula(d),
            format!(
                "d={d} blocks=[{}] sum={sum} rank(X_d)={} agree={agree}/{}",
                shown.join(", "),
                results.first().map_or(0, |r| r.1),
                results.len()
            ),
        );
    }
    report
}

// ---------------------------------------------------------------------------
// extension sweep and uniqueness

/// Outcome of the three-way comparison on one quadric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOutcome {
    pub n: usize,
    pub rank: usize,
    /// Every kernel element of `X_d`, `d <= dmax`, extends with zero residual.
    pub all_extend: bool,
    pub linear_space_trivial: bool,
    /// For `n = 2` and rank two: `dim CR^d = floor((d+2)^2/4)` for all `d`.
    pub dimension_formula: Option<bool>,
    /// For rank one: `counterexample_linear` gave a certified nonzero `v`.
    pub counterexample: Option<bool>,
}

impl SweepOutcome {
    pub fn consistent(&self) -> bool {
        let rank_ok = self.rank >= 2;
        rank_ok == self.all_extend
            && rank_ok == self.linear_space_trivial
            && self.dimension_formula != Some(false)
            && self.counterexample != Some(false)
    }
}

pub fn sweep_quadric(q: &Quadric, dmax: u32) -> SweepOutcome {
    let n = q.n();
    let rank = q.rank_condition();
    let mut all_extend = true;
    let mut dims_ok = true;
    for d in 1..=dmax {
        let space = cr_homogeneous_basis(q, d);
        if n == 2 && rank >= 2 && space.dim() as u64 != cr_dimension_formula(d) {
            dims_ok = false;
        }
        let extends = space.basis.iter().all(|f| {
            matches!(extend_homogeneous(q, f), Ok(r) if r.residual.is_zero())
        });
        if !extends {
            all_extend = false;
            if rank < 2 {
                break;
            }
        }
    }
    let linear_space_trivial = q.cr_linear_space().map(|v| v.is_empty()).unwrap_or(false);
    let counterexample = (rank == 1).then(|| certify_counterexample(q));
    SweepOutcome {
        n,
        rank,
        all_extend,
        linear_space_trivial,
        dimension_formula: (n == 2 && rank >= 2).then_some(dims_ok),
        counterexample,
    }
}

fn certify_counterexample(q: &Quadric) -> bool {
    let Ok(Some(c)) = counterexample_linear(q) else {
        return false;
    };
    let nonzero = c.v.iter().any(|x| !x.is_zero());
    let model = Manifold::from_quadric(q.clone());
    let cr = model.is_cr(&c.h).map(|r| r.holds).unwrap_or(false);
    let fails = matches!(extend_homogeneous(q, &c.h), Err(Error::NoExtension { .. }));
    nonzero && cr && fails
}

fn sweep_samples(rng: &mut impl Rng, samples: usize) -> Vec<Quadric> {
    (0..samples)
        .map(|_| {
            let n = if rng.gen_bool(0.5) { 2 } else { 3 };
            random_quadric(rng, n)
        })
        .collect()
}

/// `zb1^2 + zb2^2`.
pub fn sum_of_squares_quadric() -> Quadric {
    Quadric::new(Matrix::zeros(2, 2), Matrix::identity(2), Matrix::zeros(2, 2)).expect("symmetric")
}

fn extension_sweep_suite(rng: &mut impl Rng, samples: usize, dmax: u32) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::ExtensionSweep);
    let quadrics = sweep_samples(rng, samples);
    let outcomes: Vec<SweepOutcome> = quadrics.par_iter().map(|q| sweep_quadric(q, dmax)).collect();
    let count = |f: &dyn Fn(&SweepOutcome) -> bool| outcomes.iter().filter(|o| f(o)).count();
    report.note(format!(
        "{} quadrics: n=2 {}, n=3 {}; rank 0 {}, rank 1 {}, rank >=2 {}; d <= {dmax}",
        outcomes.len(),
        count(&|o| o.n == 2),
        count(&|o| o.n == 3),
        count(&|o| o.rank == 0),
        count(&|o| o.rank == 1),
        count(&|o| o.rank >= 2),
    ));
    let agree = count(&|o| o.consistent());
    report.check(
        agree == outcomes.len(),
        format!(
            "(rank >= 2) <=> (all kernel elements extend) <=> (linear CR space = 0): {agree}/{}",
            outcomes.len()
        ),
    );
    let rank1 = count(&|o| o.rank == 1);
    let certified = count(&|o| o.counterexample == Some(true));
    report.check(
        certified == rank1,
        format!("rank-1 quadrics with a certified linear counterexample: {certified}/{rank1}"),
    );
    let dims = count(&|o| o.dimension_formula.is_some());
    let dims_ok = count(&|o| o.dimension_formula == Some(true));
    report.check(
        dims_ok == dims,
        format!("n=2 rank-2 quadrics with dim CR^d = floor((d+2)^2/4): {dims_ok}/{dims}"),
    );
    let squares = sweep_quadric(&sum_of_squares_quadric(), dmax);
    report.check(
        squares.rank == 2 && squares.consistent() && squares.all_extend,
        format!("zb1^2 + zb2^2: rank {} all_extend={}", squares.rank, squares.all_extend),
    );
    for (i, (q, o)) in quadrics.iter().zip(&outcomes).enumerate() {
        if !o.consistent() {
            report.note(format!("sample {i} inconsistent: {o:?} Q = {}", q.to_poly()));
        }
    }
    report
}

/// `rank` of the matching matrix and its number of unknowns.
pub fn matching_rank(q: &Quadric, d: u32) -> (usize, usize) {
    let sys = matching_system(q, d);
    (sys.matrix.rank(), sys.unknowns.len())
}

fn uniqueness_suite(rng: &mut impl Rng, samples: usize, dmax: u32) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Uniqueness);
    let quadrics: Vec<Quadric> = sweep_samples(rng, samples)
        .into_iter()
        .filter(|q| q.rank_condition() >= 2)
        .collect();
    let full: Vec<bool> = quadrics
        .par_iter()
        .map(|q| {
            (1..=dmax).all(|d| {
                let (r, k) = matching_rank(q, d);
                r == k
            })
        })
        .collect();
    let ok = full.iter().filter(|&&b| b).count();
    report.check(
        ok == full.len(),
        format!(
            "rank >= 2 quadrics whose matching matrix has full column rank for d <= {dmax}: {ok}/{}",
            full.len()
        ),
    );
    report
}

// ---------------------------------------------------------------------------
// worked examples

fn p(text: &str) -> Poly {
    crate::polyio::parse_poly(text, 2).expect("valid literal")
}

fn zb1z2() -> Quadric {
    let a = Matrix::from_rows(vec![
        vec![GaussRational::zero(), GaussRational::one()],
        vec![GaussRational::zero(), GaussRational::zero()],
    ]);
    Quadric::hermitian(a).expect("square")
}

fn examples_suite(rng: &mut impl Rng, samples: usize, order: u32) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Examples);

    let norm = p("z1*zb1 + z2*zb2");
    let quartic = Manifold::new(Quadric::zero(2), &norm * &norm).expect("order 4");
    let cr = quartic.is_cr(&norm).ok();
    let degenerate = formal_extend(&quartic, &norm, order);
    report.check(
        cr.is_some_and(|c| c.holds && !c.vacuous) && degenerate == Err(Error::DegenerateQuadric),
        format!("w = |z|^4: |z|^2 is CR; formal extension -> {}", outcome(&degenerate)),
    );

    let model = Manifold::from_quadric(zb1z2());
    let cr = model.is_cr(&p("zb1")).map(|c| c.holds).unwrap_or(false);
    let ext = extend_homogeneous(&zb1z2(), &p("zb1"));
    report.check(
        cr && ext == Err(Error::NoExtension { degree: 1 }),
        format!("w = zb1*z2: zb1 is CR = {cr}; extension -> {}", outcome(&ext)),
    );

    let ehot = Manifold::new(zb1z2(), p("zb2^3")).expect("order 3");
    let funcs: Vec<Poly> = (0..samples).map(|_| random_holomorphic(rng, 2, 6)).collect();
    let roundtrips: Vec<bool> = funcs
        .par_iter()
        .map(|f_hol| {
            let f = f_hol.substitute_w(ehot.rho()).expect("rho has no constant term");
            matches!(formal_extend(&ehot, &f, order),
                Ok(r) if &r.f == f_hol && r.residual_order.is_none_or(|k| k > order))
        })
        .collect();
    let ok = roundtrips.iter().filter(|&&b| b).count();
    report.check(
        ok == roundtrips.len(),
        format!(
            "w = zb1*z2 + zb2^3: random F of weighted degree <= 6 recovered at N = {order}: {ok}/{}",
            roundtrips.len()
        ),
    );
    let rejected = formal_extend(&ehot, &p("zb1"), order);
    report.check(
        rejected == Err(Error::NotCRAtDegree(1)),
        format!("w = zb1*z2 + zb2^3: zb1 -> {}", outcome(&rejected)),
    );
    report
}

fn outcome<T>(r: &Result<T, Error>) -> String {
    match r {
        Ok(_) => "ok".into(),
        Err(e) => format!("{e:?}"),
    }
}

// ---------------------------------------------------------------------------
// classification

/// The exceptional normal forms, with two case-3 parameters and the scaled
/// form `2|z1|^2 + 3 zb1^2`.
pub fn exceptional_samples(n: usize) -> Vec<(String, Quadric, ClassLabel)> {
    let g = |re: i64, den: i64| GaussRational::from_frac(re, den, 0, 1);
    let build = |a: &[(usize, usize, GaussRational)], b11: GaussRational| {
        let mut am = Matrix::zeros(n, n);
        for (i, j, c) in a {
            am.set(*i, *j, c.clone());
        }
        let mut bm = Matrix::zeros(n, n);
        bm.set(0, 0, b11);
        Quadric::new(am, bm, Matrix::zeros(n, n)).expect("symmetric")
    };
    let a_sq = |num: i64, den: i64| ClassLabel::Case3 {
        a_squared: Rational::new(num.into(), den.into()),
    };
    vec![
        ("zb1*z2 + zb1^2".into(), build(&[(0, 1, g(1, 1))], g(1, 1)), ClassLabel::Case1),
        ("zb1*z2".into(), build(&[(0, 1, g(1, 1))], g(0, 1)), ClassLabel::Case2),
        ("|z1|^2".into(), build(&[(0, 0, g(1, 1))], g(0, 1)), a_sq(0, 1)),
        ("|z1|^2 + 1/2*zb1^2".into(), build(&[(0, 0, g(1, 1))], g(1, 2)), a_sq(1, 4)),
        ("2|z1|^2 + 3*zb1^2".into(), build(&[(0, 0, g(2, 1))], g(3, 1)), a_sq(9, 4)),
        ("zb1^2".into(), build(&[], g(1, 1)), ClassLabel::Case4),
    ]
}

fn with_holomorphic_part(q: &Quadric, c: Matrix) -> Quadric {
    Quadric::new(q.a().clone(), q.b().clone(), c).expect("symmetric")
}

fn classification_suite(rng: &mut impl Rng, samples: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Classification);
    for n in [2, 3] {
        for (name, q, label) in exceptional_samples(n) {
            let direct = classify_quadric(&q).ok();
            let transforms: Vec<(Matrix, Matrix)> = (0..samples)
                .map(|_| (random_invertible(rng, n), symmetric_matrix(rng, n)))
                .collect();
            let agree = transforms
                .par_iter()
                .filter(|(t, c)| {
                    let moved = with_holomorphic_part(&q, c.clone()).transform(t).expect("invertible");
                    classify_quadric(&moved).ok().as_ref() == Some(&label)
                })
                .count();
            report.check(
                direct.as_ref() == Some(&label) && agree == transforms.len(),
                format!("n={n} {name}: {label}, invariant under {agree}/{} random T", transforms.len()),
            );
        }
    }
    let labels: Vec<ClassLabel> = exceptional_samples(2).into_iter().map(|(_, _, l)| l).collect();
    let distinct = [&labels[0], &labels[1], &labels[2], &labels[5]]
        .iter()
        .enumerate()
        .all(|(i, a)| [&labels[0], &labels[1], &labels[2], &labels[5]].iter().skip(i + 1).all(|b| a != b));
    report.check(distinct, "the four normal forms receive distinct labels".into());

    let forms_ok = exceptional_samples(2).iter().all(|(_, q, label)| {
        let form = classify_cr_image(&Manifold::from_quadric(q.clone())).ok();
        let expected = match label.case_number() {
            Some(1) => CRImageForm::Form1,
            Some(2) => CRImageForm::Form2,
            Some(3) => CRImageForm::Form3,
            _ => CRImageForm::Form4,
        };
        form == Some(expected)
    });
    report.check(forms_ok, "CR-image form k matches case k for every normal form".into());

    let squared = classify_cr_image(&squared_image_example()).ok();
    report.check(
        squared == Some(CRImageForm::Form4),
        format!("w = (zb2 + i|z1|^2 + |z1|^4)^2 -> {squared:?}"),
    );
    let cubic = Manifold::new(Quadric::zero(2), p("zb1^3")).expect("order 3");
    let cubic_form = classify_cr_image(&cubic).ok();
    report.check(cubic_form == Some(CRImageForm::Form5), format!("w = zb1^3 -> {cubic_form:?}"));
    let sphere = Manifold::from_quadric(Quadric::hermitian(Matrix::identity(2)).expect("square"));
    let sphere_form = classify_cr_image(&sphere).ok();
    report.check(
        sphere_form == Some(CRImageForm::NotApplicable),
        format!("w = |z1|^2 + |z2|^2 -> {sphere_form:?}"),
    );
    report
}

// ---------------------------------------------------------------------------
// ODE criteria

/// Predicted degree of the polynomial solution, when the closed form has
/// one.
fn predicted_degree(d: &OdeDecision) -> Option<usize> {
    match d.verdict {
        Verdict::NonconstantPoly => d.degree(),
        Verdict::ConstantOnly => Some(0),
        Verdict::NoNonzero => None,
    }
}

/// Random equation of the given shape, biased toward solvable parameters.
pub fn random_ode(rng: &mut impl Rng, case: OdeCase) -> OdeParams {
    let zero = GaussRational::zero;
    let int = |k: i64| GaussRational::from_int(k);
    let mut pr = OdeParams::default();
    match case {
        OdeCase::A => {
            pr.s = nonzero_entry(rng);
            pr.r = small_entry(rng);
            match rng.gen_range(0..4) {
                0 => pr.p = &int(rng.gen_range(-3..=12)) * &pr.s,
                1 => {}
                2 => {
                    pr.p = &frac(rng.gen_range(-7..=7), rng.gen_range(2..=3)) * &pr.s;
                    pr.q = if rng.gen_bool(0.5) { zero() } else { small_entry(rng) };
                }
                _ => {
                    pr.p = nonzero_entry(rng);
                    pr.q = nonzero_entry(rng);
                }
            }
        }
        OdeCase::B => {
            pr.t = nonzero_entry(rng);
            let (x1, x2) = loop {
                let (a, b) = (small_entry(rng), nonzero_entry(rng));
                if a != b {
                    break (a, b);
                }
            };
            pr.r = &pr.t * &(&x1 * &x2);
            pr.s = -(&pr.t * &(&x1 + &x2));
            match rng.gen_range(0..4) {
                0 => {
                    // prescribe exponents e1, e2
                    let e1 = int(rng.gen_range(-2..=7));
                    let e2 = int(rng.gen_range(0..=6));
                    pr.q = &(&e1 + &e2) * &pr.t;
                    pr.p = &(&e1 * &(&pr.t * &(&x1 - &x2))) - &(&pr.q * &x1);
                }
                1 => {}
                2 => {
                    let e1 = frac(rng.gen_range(-5..=9), rng.gen_range(1..=2));
                    let e2 = frac(rng.gen_range(-1..=9), 2);
                    pr.q = &(&e1 + &e2) * &pr.t;
                    pr.p = &(&e1 * &(&pr.t * &(&x1 - &x2))) - &(&pr.q * &x1);
                }
                _ => {
                    pr.p = nonzero_entry(rng);
                    pr.q = small_entry(rng);
                }
            }
        }
        OdeCase::C => {
            pr.t = nonzero_entry(rng);
            pr.xi = small_entry(rng);
            match rng.gen_range(0..4) {
                0 => {
                    pr.q = &int(rng.gen_range(-2..=12)) * &pr.t;
                    pr.p = -(&pr.q * &pr.xi);
                }
                1 => {}
                2 => {
                    pr.q = &frac(rng.gen_range(1..=9), 2) * &pr.t;
                    pr.p = if rng.gen_bool(0.5) { -(&pr.q * &pr.xi) } else { small_entry(rng) };
                }
                _ => {
                    pr.q = &int(rng.gen_range(1..=6)) * &pr.t;
                    pr.p = &(-(&pr.q * &pr.xi)) + &small_nonzero(rng);
                }
            }
            pr.r = &pr.t * &(&pr.xi * &pr.xi);
            pr.s = -(&(&int(2) * &pr.t) * &pr.xi);
        }
    }
    pr
}

/// Decision and oracle for one equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeComparison {
    pub decision: OdeDecision,
    pub oracle: OdeDecision,
    pub witness_ok: bool,
}

impl OdeComparison {
    pub fn agrees(&self) -> bool {
        self.decision.verdict == self.oracle.verdict
            && predicted_degree(&self.decision) == predicted_degree(&self.oracle)
            && self.witness_ok
    }
}

pub fn compare_ode(params: &OdeParams, case: OdeCase, max_degree: u32) -> Option<OdeComparison> {
    let decision = decide(params, case).ok()?;
    let oracle = brute_force_ode(params, case, max_degree);
    let witness_ok = match &decision.witness {
        Some(z) => params.satisfied_by(case, z),
        None => true,
    } && oracle.witness.as_ref().is_none_or(|z| params.satisfied_by(case, z));
    Some(OdeComparison {
        decision,
        oracle,
        witness_ok,
    })
}

/// The non-solvable instances arising in the extension proofs: `p/s` equal
/// to `-1/2`, `-1/3` and `-2/3` in case a.
pub fn proof_instances() -> Vec<(&'static str, OdeParams)> {
    let mk = |p: i64, r: i64, s: i64| OdeParams {
        p: GaussRational::from_int(p),
        r: GaussRational::from_int(r),
        s: GaussRational::from_int(s),
        ..OdeParams::default()
    };
    vec![
        ("p/s = -1/2", mk(1, 1, -2)),
        ("p/s = -1/3", mk(1, 3, -3)),
        ("p/s = -2/3", mk(2, 3, -3)),
    ]
}

fn ode_suite(rng: &mut impl Rng, samples: usize, max_degree: u32) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Ode);
    for case in [OdeCase::A, OdeCase::B, OdeCase::C] {
        // draw until `samples` tuples have predicted degree within range
        let mut tuples = Vec::new();
        let mut excluded = 0;
        while tuples.len() < samples {
            let pr = random_ode(rng, case);
            match decide(&pr, case) {
                Ok(d) if predicted_degree(&d).is_none_or(|k| k <= max_degree as usize) => tuples.push(pr),
                Ok(_) => excluded += 1,
                Err(_) => {}
            }
        }
        let results: Vec<OdeComparison> = tuples
            .par_iter()
            .map(|pr| compare_ode(pr, case, max_degree).expect("valid parameters"))
            .collect();
        let agree = results.iter().filter(|c| c.agrees()).count();
        let tally = |v: Verdict| results.iter().filter(|c| c.decision.verdict == v).count();
        report.check(
            agree == results.len(),
            format!(
                "case {}: {agree}/{} agree with brute force (D = {max_degree}); nonconstant {}, constant {}, none {}; {excluded} tuples above degree bound skipped",
                case.label(),
                results.len(),
                tally(Verdict::NonconstantPoly),
                tally(Verdict::ConstantOnly),
                tally(Verdict::NoNonzero),
            ),
        );
    }
    for (name, pr) in proof_instances() {
        let cmp = compare_ode(&pr, OdeCase::A, max_degree).expect("s != 0");
        report.check(
            cmp.agrees() && cmp.decision.verdict == Verdict::NoNonzero,
            format!("case a, {name}: {:?}", cmp.decision.verdict),
        );
    }
    report
}

// ---------------------------------------------------------------------------
// restrictions and parametrizations

fn restriction_suite(rng: &mut impl Rng, samples: usize, max_weighted: u32) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Restriction);
    let cases: Vec<(Manifold, Poly)> = (0..samples)
        .map(|_| {
            let n = if rng.gen_range(0..5) == 0 { 3 } else { 2 };
            let q = random_rank2_quadric(rng, n);
            let e = random_higher_order(rng, n);
            let m = Manifold::new(q, e).expect("order >= 3");
            (m, random_holomorphic(rng, n, max_weighted))
        })
        .collect();
    let ok = cases
        .par_iter()
        .filter(|(m, f_hol)| {
            let f = f_hol.substitute_w(m.rho()).expect("no constant term");
            m.is_cr(&f).is_ok_and(|c| c.holds)
        })
        .count();
    report.check(
        ok == cases.len(),
        format!(
            "F(z, rho) is CR for random rank-2 Q + E (deg 3-4) and F of weighted degree <= {max_weighted}: {ok}/{}",
            cases.len()
        ),
    );
    report
}

fn levi_flat_suite() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::LeviFlat);
    let labels = [
        ClassLabel::Case1,
        ClassLabel::Case2,
        ClassLabel::Case3 {
            a_squared: Rational::zero(),
        },
        ClassLabel::Case4,
    ];
    for n in [2, 3] {
        for label in &labels {
            match levi_flat_image_param(label, n) {
                Ok(param) => report.check(param.verified, format!("n={n} case {}: {}", label.case_number().unwrap_or(0), param.render())),
                Err(e) => report.check(false, format!("n={n} {label}: {e}")),
            }
        }
    }
    let squares = sweep_quadric(&sum_of_squares_quadric(), 4);
    report.check(
        squares.rank == 2 && squares.consistent(),
        format!("zb1^2 + zb2^2 passes the extension sweep as a rank-{} quadric", squares.rank),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_formula_small_degrees() {
        assert_eq!((1..=3).map(|j| block_rank_formula(j, 3)).sum::<u64>(), 14);
        assert_eq!(block_rank_formula(1, 1), 2);
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
    }

    #[test]
    fn random_quadrics_hit_every_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ranks: Vec<usize> = (0..60).map(|_| random_quadric(&mut rng, 2).rank_condition()).collect();
        assert!(ranks.contains(&1) && ranks.iter().any(|&r| r >= 2));
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = SuiteConfig {
            dmax: Some(3),
            samples: Some(4),
            seed: 3,
        };
        assert_eq!(run_suite(Suite::ExtensionSweep, &cfg), run_suite(Suite::ExtensionSweep, &cfg));
    }
}
