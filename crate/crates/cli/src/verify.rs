//! The acceptance criteria, each a list of expected-vs-observed checks.

use crate::report::Check;
use homaloid::fatpoints::{
    self, betti_table, eta_transform, hilbert_value, initial_degree, linear_system, mult_map,
    multiplier_kernel, power_dim, quad_transform_points, sample_points, symbolic_dim,
    zeta_transform, EngineError, FatIdealSpec,
};
use homaloid::ffla::FieldConfig;
use homaloid::search::{classify_842, enumerate_subhomaloidal};
use homaloid::typecalc::{
    self, classify, double, hudson_test, parse_literal, plus_minus, predict_invariants,
    quad_transform, HudsonTrace, MultiplicityType,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Parameters shared by every criterion.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub field: FieldConfig,
    pub retries: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            field: FieldConfig::default(),
            retries: fatpoints::DEFAULT_RETRIES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Duration,
    /// Part of the `--fast` subset.
    pub fast: bool,
}

pub const CRITERIA: [Criterion; 11] = [
    crit(1, "equations of condition", 1, true),
    crit(2, "Hudson improperness", 1, true),
    crit(3, "Hudson traces", 10, true),
    crit(4, "8-4-2 classification", 1_000, true),
    crit(5, "engine, s = 3", 5_000, true),
    crit(6, "engine, s = 5", 30_000, true),
    crit(7, "transformed ideal, s = 5", 10_000, true),
    crit(8, "eta transform, s = 5", 10_000, true),
    crit(9, "Harbourne criterion, s = 5", 10_000, true),
    crit(10, "engine, s = 7", 60_000, false),
    crit(11, "property suites", 30_000, false),
];

const fn crit(id: u8, title: &'static str, ms: u64, fast: bool) -> Criterion {
    Criterion {
        id,
        title,
        budget: Duration::from_millis(ms),
        fast,
    }
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub criterion: Criterion,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.criterion.budget
    }

    pub fn summary_line(&self) -> String {
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.id.as_str())
            .collect();
        let mut line = format!(
            "criterion {:>2} {:<28} {} ({} checks",
            self.criterion.id,
            self.criterion.title,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        );
        if !failed.is_empty() {
            line.push_str(&format!("; failed: {}", failed.join(", ")));
        }
        line.push(')');
        line
    }
}

/// Deterministic part of a criterion outcome, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionSummary {
    pub id: u8,
    pub title: String,
    pub budget_ms: u64,
    pub checks: usize,
    pub pass: bool,
}

impl From<&CriterionOutcome> for CriterionSummary {
    fn from(o: &CriterionOutcome) -> Self {
        Self {
            id: o.criterion.id,
            title: o.criterion.title.to_string(),
            budget_ms: o.criterion.budget.as_millis() as u64,
            checks: o.checks.len(),
            pass: o.passed(),
        }
    }
}

pub fn criterion(id: u8) -> Option<Criterion> {
    CRITERIA.iter().copied().find(|c| c.id == id)
}

pub fn run_criterion(id: u8, cfg: &VerifyConfig) -> CriterionOutcome {
    let criterion = criterion(id).unwrap_or_else(|| panic!("no criterion {id}"));
    let start = Instant::now();
    let checks = match id {
        1 => c1(),
        2 => c2(),
        3 => c3(),
        4 => c4(),
        5 => c5(cfg),
        6 => c6(cfg),
        7 => c7(cfg),
        8 => c8(cfg),
        9 => c9(cfg),
        10 => c10(cfg),
        _ => c11(cfg),
    };
    CriterionOutcome {
        criterion,
        checks,
        elapsed: start.elapsed(),
    }
}

/// Runs the selected criteria in identifier order.
pub fn run_all(
    cfg: &VerifyConfig,
    fast: bool,
    mut progress: impl FnMut(&CriterionOutcome),
) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .filter(|c| c.fast || !fast)
        .map(|c| {
            let o = run_criterion(c.id, cfg);
            progress(&o);
            o
        })
        .collect()
}

type Checks = Vec<Check>;

fn lit(s: &str) -> MultiplicityType {
    parse_literal(s).expect("criterion literals are well-formed")
}

/// Runs `body`; an error becomes one failed check named `id`.
fn guarded<E: std::fmt::Display>(
    id: &str,
    body: impl FnOnce(&mut Checks) -> Result<(), E>,
) -> Checks {
    let mut out = Vec::new();
    if let Err(e) = body(&mut out) {
        out.push(Check::failed(id, "evaluation", e.to_string()));
    }
    out
}

fn general(
    t: &MultiplicityType,
    cfg: &VerifyConfig,
    frame: bool,
) -> Result<FatIdealSpec, EngineError> {
    FatIdealSpec::general(t, cfg.field, frame)
}

fn hilbert_checks(
    out: &mut Checks,
    id: &str,
    what: &str,
    spec: &FatIdealSpec,
    t: u32,
    expected: u64,
    retries: usize,
) -> Result<(), EngineError> {
    let h = hilbert_value(spec, t, retries)?;
    out.push(Check::equal(
        format!("{id}.dim"),
        format!("{what} in degree {t}"),
        expected,
        h.sampled_dim,
    ));
    out.push(Check::holds(
        format!("{id}.certified"),
        format!("{what} certified"),
        h.certified,
    ));
    Ok(())
}

fn betti_checks(
    out: &mut Checks,
    id: &str,
    spec: &FatIdealSpec,
    cfg: &VerifyConfig,
    gens: &[(u32, u64)],
    syz: &[(u32, u64)],
) -> Result<(), EngineError> {
    let b = betti_table(spec, fatpoints::DEFAULT_BETTI_WINDOW, cfg.retries)?;
    out.push(Check::equal(
        format!("{id}.generators"),
        "minimal generators by degree",
        gens.iter().copied().collect::<BTreeMap<_, _>>(),
        b.generators,
    ));
    out.push(Check::equal(
        format!("{id}.syzygies"),
        "first syzygies by degree",
        syz.iter().copied().collect::<BTreeMap<_, _>>(),
        b.syzygies,
    ));
    Ok(())
}

fn c1() -> Checks {
    guarded("c1", |out| {
        let t = lit("7;4,2^6,1^2");
        let c = classify(&t)?;
        out.push(Check::equal(
            "c1.subhomaloidal",
            "(7;4,2^6,1^2) is sub-homaloidal in degree",
            Some(7),
            c.subhomaloidal_degree,
        ));
        let d = double(&t)?;
        out.push(Check::equal(
            "c1.double",
            "doubled type",
            "13;8,4^6,2^2".to_string(),
            d.to_string(),
        ));
        out.push(Check::holds(
            "c1.double_homaloidal",
            "doubled type is homaloidal",
            classify(&d)?.is_homaloidal,
        ));
        Ok::<_, typecalc::TypeError>(())
    })
}

fn c2() -> Checks {
    guarded("c2", |out| {
        let t = lit("13;8,4^6,2^2");
        let tr = hudson_test(&t, HudsonTrace::default_step_limit(&t))?;
        out.push(Check::equal(
            "c2.verdict",
            "Hudson verdict",
            "improper",
            tr.verdict.label(),
        ));
        out.push(Check::equal(
            "c2.final",
            "final sorted type",
            "4;2^2,1^6,-1".to_string(),
            tr.final_type().to_string(),
        ));
        Ok::<_, typecalc::TypeError>(())
    })
}

fn c3() -> Checks {
    guarded("c3", |out| {
        let t = lit("9;4^4,2^4");
        let tr = hudson_test(&t, HudsonTrace::default_step_limit(&t))?;
        let through = tr
            .steps
            .iter()
            .any(|s| s.output.to_string() == "4;2^3,1^3,0^2");
        out.push(Check::holds(
            "c3.9.passes",
            "(9;4^4,2^4) passes through (4;2^3,1^3,0^2)",
            through,
        ));
        out.push(Check::equal(
            "c3.9.verdict",
            "(9;4^4,2^4) verdict",
            "proper",
            tr.verdict.label(),
        ));
        for s in ["5;2^6", "17;8^3,4^6", "17;8^4,2^8"] {
            let t = lit(s);
            let tr = hudson_test(&t, HudsonTrace::default_step_limit(&t))?;
            out.push(Check::equal(
                format!("c3.{s}.verdict"),
                format!("({s}) verdict"),
                "proper",
                tr.verdict.label(),
            ));
        }
        Ok::<_, typecalc::TypeError>(())
    })
}

fn c4() -> Checks {
    guarded("c4", |out| {
        let rows: Vec<(String, String)> = classify_842(40)?
            .into_iter()
            .map(|r| (r.homaloidal_type.to_string(), r.verdict.label().to_string()))
            .collect();
        let expected: Vec<(String, String)> = [
            ("5;2^6", "proper"),
            ("9;4^4,2^4", "proper"),
            ("13;8,4^6,2^2", "improper"),
            ("13;8^2,2^10", "improper"),
            ("17;8^3,4^6", "proper"),
            ("17;8^4,2^8", "proper"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        out.push(Check::equal(
            "c4.rows",
            "homaloidal (d; 8, 4, 2) types with verdicts, d ≤ 40",
            expected,
            rows,
        ));
        Ok::<_, typecalc::TypeError>(())
    })
}

fn c5(cfg: &VerifyConfig) -> Checks {
    guarded("c5", |out| {
        let t = lit("3;1^6");
        let j = general(&t, cfg, false)?;
        hilbert_checks(out, "c5.j3", "dim J", &j, 3, 4, cfg.retries)?;
        out.push(Check::equal(
            "c5.indeg",
            "initial degree",
            3,
            initial_degree(&j, 3, cfg.retries)?.degree,
        ));
        out.push(Check::equal(
            "c5.power2",
            "dim (J^2) in degree 6",
            10,
            power_dim(&j, 2)?.dim,
        ));
        let net = symbolic_dim(&j, 2, 5, cfg.retries)?;
        out.push(Check::equal(
            "c5.net.dim",
            "doubled multiplicities in degree 5",
            3,
            net.sampled_dim,
        ));
        out.push(Check::holds(
            "c5.net.certified",
            "doubled multiplicities in degree 5 certified",
            net.certified,
        ));
        let doubled = j.scaled(2)?;
        let sys = linear_system(&doubled, 5)?;
        let m = mult_map(&sys, &doubled, 6)?;
        out.push(Check::equal(
            "c5.net.linear_syzygies",
            "kernel of R_1 ⊗ net → degree 6",
            3,
            m.kernel_dim,
        ));
        let by_degree: Vec<usize> = (1..=3).map(|k| multiplier_kernel(&sys, k)).collect();
        out.push(Check::equal(
            "c5.net.syzygy_degrees",
            "kernel of R_k ⊗ net → degree 5 + k for k = 1, 2, 3",
            vec![0, 0, 3],
            by_degree,
        ));
        Ok::<_, EngineError>(())
    })
}

fn c6(cfg: &VerifyConfig) -> Checks {
    guarded("c6", |out| {
        let t = lit("5;2^4,1^4");
        let j = general(&t, cfg, false)?;
        hilbert_checks(out, "c6.j5", "dim J", &j, 5, 5, cfg.retries)?;
        let sys = linear_system(&j, 5)?;
        let m = mult_map(&sys, &j, 6)?;
        out.push(Check::holds(
            "c6.mult.surjective",
            "R_1 ⊗ J_5 → J_6 surjective",
            m.surjective,
        ));
        out.push(Check::holds(
            "c6.mult.certified",
            "surjectivity certified",
            m.surjective_certified,
        ));
        out.push(Check::equal(
            "c6.mult.kernel",
            "kernel of R_1 ⊗ J_5 → J_6",
            3,
            m.kernel_dim,
        ));
        betti_checks(out, "c6.betti", &j, cfg, &[(5, 5)], &[(6, 3), (7, 1)])?;
        let pred = predict_invariants(&t)?;
        for (n, expected) in [(2u32, 14usize), (3, 28)] {
            let p = power_dim(&j, n)?;
            out.push(Check::equal(
                format!("c6.power{n}"),
                format!("dim (J^{n}) in degree {}", 5 * n),
                expected,
                p.dim,
            ));
            out.push(Check::equal(
                format!("c6.power{n}.formula"),
                format!("closed form (s/2)n^2 + (3/2)n + 1 at n = {n}"),
                expected as i64,
                pred.image_hilbert.eval(n as i64),
            ));
            let sym = symbolic_dim(&j, n, 5 * n, cfg.retries)?;
            out.push(Check::equal(
                format!("c6.symbolic{n}"),
                format!("dim (J^({n})) equals dim (J^{n}) in degree {}", 5 * n),
                p.dim as u64,
                sym.sampled_dim,
            ));
        }
        let d = symbolic_dim(&j, 2, 9, cfg.retries)?;
        out.push(Check::equal(
            "c6.doubled9",
            "doubled multiplicities in degree 9",
            3,
            d.sampled_dim,
        ));
        out.push(Check::holds(
            "c6.doubled9.certified",
            "doubled multiplicities in degree 9 certified",
            d.certified,
        ));
        Ok::<_, EngineError>(())
    })
}

/// `J` at frame-normalized points and `J̃` at their image under the
/// standard quadratic map based at the first three.
fn transformed_pair(cfg: &VerifyConfig) -> Result<(FatIdealSpec, FatIdealSpec), EngineError> {
    let t = lit("5;2^4,1^4");
    let j = general(&t, cfg, true)?;
    let tt = quad_transform(&t, 0, 1, 2)?;
    let pts = quad_transform_points(j.points(), 0, 1, 2)?;
    Ok((j, FatIdealSpec::from_type(pts, &tt)?))
}

fn c7(cfg: &VerifyConfig) -> Checks {
    guarded("c7", |out| {
        let (_, tilde) = transformed_pair(cfg)?;
        out.push(Check::equal(
            "c7.type",
            "transformed type, sorted",
            "4;2,1^7".to_string(),
            tilde.as_type(4).sorted().to_string(),
        ));
        out.push(Check::equal(
            "c7.indeg",
            "initial degree",
            4,
            initial_degree(&tilde, 4, cfg.retries)?.degree,
        ));
        hilbert_checks(out, "c7.j4", "dim J̃", &tilde, 4, 5, cfg.retries)?;
        betti_checks(out, "c7.betti", &tilde, cfg, &[(4, 5)], &[(5, 4)])?;
        out.push(Check::equal(
            "c7.scheme_degree",
            "scheme degree equals C(5,2)",
            10,
            tilde.scheme_degree(),
        ));
        let s6 = symbolic_dim(&tilde, 2, 6, cfg.retries)?;
        out.push(Check::equal(
            "c7.symbolic2.6",
            "dim (J̃^(2)) in degree 6",
            0,
            s6.sampled_dim,
        ));
        let s7 = symbolic_dim(&tilde, 2, 7, cfg.retries)?;
        out.push(Check::equal(
            "c7.symbolic2.7",
            "dim (J̃^(2)) in degree 7",
            5,
            s7.sampled_dim,
        ));
        out.push(Check::holds(
            "c7.symbolic2.7.certified",
            "degree 7 value certified",
            s7.certified,
        ));
        Ok::<_, EngineError>(())
    })
}

fn c8(cfg: &VerifyConfig) -> Checks {
    guarded("c8", |out| {
        let (j, tilde) = transformed_pair(cfg)?;
        let js = linear_system(&j, 5)?;
        let nu = [2, 2, 2];
        let eta = eta_transform(&js, nu)?;
        out.push(Check::equal(
            "c8.degree",
            "degree of the transformed system",
            4,
            eta.degree(),
        ));
        out.push(Check::equal(
            "c8.dim",
            "dimension of the transformed system",
            5,
            eta.basis().rank(),
        ));
        let target = linear_system(&tilde, 4)?;
        out.push(Check::holds(
            "c8.inside",
            "image lies in J̃ in degree 4",
            target.contains(&eta)?,
        ));
        let back = zeta_transform(&eta, 5, nu)?;
        out.push(Check::holds(
            "c8.round_trip",
            "inverse transform restores J in degree 5",
            back.same_span(&js)?,
        ));
        Ok::<_, EngineError>(())
    })
}

fn c9(cfg: &VerifyConfig) -> Checks {
    guarded("c9", |out| {
        let t = lit("5;2^4,1^4");
        let (minus, plus) = plus_minus(&t)?;
        let points = sample_points(t.arity(), cfg.field, false)?;
        let j = FatIdealSpec::from_type(points.clone(), &t)?;
        let jm = FatIdealSpec::from_type(points.clone(), &minus)?;
        let jp = FatIdealSpec::from_type(points, &plus)?;
        hilbert_checks(out, "c9.minus4", "dim J⁻", &jm, 4, 1, cfg.retries)?;
        hilbert_checks(out, "c9.plus5", "dim J⁺", &jp, 5, 2, cfg.retries)?;
        for (name, spec) in [("j", &j), ("minus", &jm), ("plus", &jp)] {
            let t0 = initial_degree(spec, fatpoints::forced_degree(spec), cfg.retries)?;
            let h = hilbert_value(spec, t0.degree, cfg.retries)?;
            out.push(Check::equal(
                format!("c9.{name}.minimal"),
                format!(
                    "{name}: Hilbert value at the initial degree {} equals its lower bound",
                    t0.degree
                ),
                h.expected,
                h.sampled_dim,
            ));
        }
        Ok::<_, EngineError>(())
    })
}

fn c10(cfg: &VerifyConfig) -> Checks {
    guarded("c10", |out| {
        let seven = enumerate_subhomaloidal(7, None)?;
        out.push(Check::equal(
            "c10.three_uniform",
            "three-uniform sub-homaloidal sets in degree 7",
            vec!["3^4,1^6".to_string(), "3^3,2^3,1^3".to_string()],
            seven.three_uniform_only().literals(),
        ));
        out.push(Check::equal(
            "c10.oracle",
            "enumeration matches brute force in degree 7",
            brute_force(7),
            sets_of(7)?,
        ));
        let t = lit("7;3^3,2^3,1^3");
        let j = general(&t, cfg, false)?;
        hilbert_checks(out, "c10.j7", "dim J", &j, 7, 6, cfg.retries)?;
        betti_checks(out, "c10.betti", &j, cfg, &[(7, 6)], &[(8, 3), (9, 2)])?;
        out.push(Check::equal(
            "c10.power2",
            "dim (J^2) in degree 14",
            18,
            power_dim(&j, 2)?.dim,
        ));
        Ok::<_, EngineError>(())
    })
}

fn c11(cfg: &VerifyConfig) -> Checks {
    let mut out = Vec::new();
    out.push(involution_suite(cfg.field.seed, 1000));
    out.push(semicontinuity_suite(cfg, 50));
    out.extend(containment_suite(cfg));
    let mut mismatched = Vec::new();
    for s in 2..=9 {
        match sets_of(s) {
            Ok(sets) if sets == brute_force(s) => {}
            Ok(_) => mismatched.push(s),
            Err(e) => {
                out.push(Check::failed(
                    "c11.enumeration",
                    "enumeration",
                    e.to_string(),
                ));
                return out;
            }
        }
    }
    out.push(Check::equal(
        "c11.enumeration",
        "degrees 2..=9 where enumeration differs from brute force",
        Vec::<i64>::new(),
        mismatched,
    ));
    out
}

fn involution_suite(seed: u64, cases: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0u64;
    for _ in 0..cases {
        let arity = rng.gen_range(3..14);
        let mults: Vec<i64> = (0..arity).map(|_| rng.gen_range(0..40)).collect();
        let t = MultiplicityType::new(rng.gen_range(0..80), mults).expect("non-negative");
        let idx = rand::seq::index::sample(&mut rng, arity, 3).into_vec();
        let ok = quad_transform(&t, idx[0], idx[1], idx[2])
            .and_then(|q| Ok((quad_transform(&q, idx[0], idx[1], idx[2])?, q)))
            .map(|(back, q)| back == t && invariants(&q) == invariants(&t))
            .unwrap_or(false);
        if !ok {
            failures += 1;
        }
    }
    Check::equal(
        "c11.involution",
        format!("random types failing involution or invariance ({cases} cases)"),
        0,
        failures,
    )
}

fn invariants(t: &MultiplicityType) -> (i64, i64) {
    let sum: i64 = t.mults().iter().sum();
    let sq: i64 = t.mults().iter().map(|m| m * m).sum();
    (3 * t.degree() - sum, t.degree() * t.degree() - sq)
}

fn semicontinuity_suite(cfg: &VerifyConfig, cases: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.field.seed ^ 0x5e31);
    let mut violations = Vec::new();
    for case in 0..cases {
        let arity = rng.gen_range(1..9);
        let mults: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..5)).collect();
        let degree: u32 = rng.gen_range(0..10);
        let field = cfg.field.with_seed(cfg.field.seed.wrapping_add(case));
        let result = sample_points(arity, field, false)
            .map_err(EngineError::from)
            .and_then(|pts| FatIdealSpec::new(pts, mults.clone()))
            .and_then(|spec| hilbert_value(&spec, degree, 1));
        match result {
            Ok(h) if h.sampled_dim >= h.expected => {}
            Ok(h) => violations.push(format!(
                "{mults:?} in degree {degree}: {} < {}",
                h.sampled_dim, h.expected
            )),
            Err(e) => violations.push(format!("{mults:?} in degree {degree}: {e}")),
        }
    }
    Check::equal(
        "c11.semicontinuity",
        format!("random specs with sampled < expected ({cases} cases)"),
        Vec::<String>::new(),
        violations,
    )
}

fn containment_suite(cfg: &VerifyConfig) -> Checks {
    let mut out = Vec::new();
    let mut specs = Vec::new();
    for s in ["3;1^6", "5;2^4,1^4", "7;3^3,2^3,1^3"] {
        specs.push((s.to_string(), general(&lit(s), cfg, false)));
    }
    specs.push(("4;2,1^7".to_string(), transformed_pair(cfg).map(|p| p.1)));
    for (name, spec) in specs {
        let check_id = format!("c11.containment.{name}");
        let result = spec.and_then(|spec| {
            let mut bad = Vec::new();
            for n in 1..=3 {
                let p = power_dim(&spec, n)?;
                let sym = symbolic_dim(&spec, n, p.degree, 1)?;
                if p.dim as u64 > sym.sampled_dim {
                    bad.push(n);
                }
            }
            Ok::<_, EngineError>(bad)
        });
        out.push(match result {
            Ok(bad) => Check::equal(
                check_id,
                format!("({name}): exponents n ≤ 3 with dim (J^n) > dim (J^(n))"),
                Vec::<u32>::new(),
                bad,
            ),
            Err(e) => Check::failed(check_id, "containment", e.to_string()),
        });
    }
    out
}

fn sets_of(s: i64) -> Result<Vec<Vec<i64>>, typecalc::TypeError> {
    let mut sets: Vec<Vec<i64>> = enumerate_subhomaloidal(s, None)?
        .entries
        .into_iter()
        .map(|e| e.mults)
        .collect();
    sets.sort();
    Ok(sets)
}

/// Every partition of `3(s−1)` into parts `≤ s−1`, filtered by the
/// square-sum condition.
fn brute_force(s: i64) -> Vec<Vec<i64>> {
    fn partitions(n: i64, cap: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for m in (1..=cap.min(n)).rev() {
            prefix.push(m);
            partitions(n - m, m, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    partitions(3 * (s - 1), s - 1, &mut Vec::new(), &mut all);
    let mut hits: Vec<Vec<i64>> = all
        .into_iter()
        .filter(|p| p.iter().map(|m| m * m).sum::<i64>() == s * (s - 1))
        .collect();
    hits.sort();
    hits
}
