//! Seeded sweeps over random corpora with JSONL reports.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{
    item_rng, random_param, random_param_of_dim, random_symplectic, Family, RecipeCase,
    SampleOptions,
};
use crate::dsl::print_rep;
use crate::error::{Error, Result};
use crate::exact::ExactNumber;
use crate::exec::{map_indexed, map_indexed_seq};
use crate::f2::SignCharacter;
use crate::lfactors::{epsilon_half, epsilon_half_psi, is_generic, lambda_factor};
use crate::localfield::{FormVariant, OrthSpaceLabel, PAdicField, Sign, SquareClass};
use crate::packets::EnhancedParam;
use crate::thetaggp::{
    bessel_recipe, fj_recipe, mp_change_psi, prasad_p1, prasad_p2, verify_adjoint_factorization,
    verify_fj_seesaw, SeesawOptions, SeesawReport,
};
use crate::wdalg::{GroupKind, Rational, TwistedChar, WdIrred, WdRep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    RootNumber,
    EpsDual,
    Lambda,
    Adjoint,
    Recipe,
    MpCocycle,
    Prasad,
    Seesaw,
    Classify,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::RootNumber,
        Check::EpsDual,
        Check::Lambda,
        Check::Adjoint,
        Check::Recipe,
        Check::MpCocycle,
        Check::Prasad,
        Check::Seesaw,
        Check::Classify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::RootNumber => "root-number",
            Check::EpsDual => "eps-dual",
            Check::Lambda => "lambda",
            Check::Adjoint => "adjoint",
            Check::Recipe => "recipe",
            Check::MpCocycle => "mp-cocycle",
            Check::Prasad => "prasad",
            Check::Seesaw => "seesaw",
            Check::Classify => "classify",
        }
    }

    fn stream(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub primes: Vec<u64>,
    /// Family for the `classify` check; random when unset.
    pub family: Option<Family>,
    pub max_dim: u32,
    pub count: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub output: Option<PathBuf>,
    pub allow_nontempered: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            primes: vec![3, 5],
            family: None,
            max_dim: 8,
            count: 100,
            seed: 0,
            checks: Check::ALL.to_vec(),
            output: None,
            allow_nontempered: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub index: usize,
    pub p: u64,
    pub check: &'static str,
    pub inputs: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub checks: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    /// One line per record, then `{"summary": ...}`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        let tail = serde_json::json!({ "summary": self.summary });
        out.push_str(&tail.to_string());
        out.push('\n');
        out
    }
}

struct Outcome {
    inputs: BTreeMap<String, String>,
    result: Result<Option<String>>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            inputs: BTreeMap::new(),
            result: Ok(None),
        }
    }

    fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }
}

fn opts(cfg: &SweepConfig, max_dim: u32) -> SampleOptions {
    SampleOptions {
        max_dim,
        tempered: !cfg.allow_nontempered,
        max_n: 4,
    }
}

fn random_class(rng: &mut ChaCha8Rng, field: PAdicField) -> SquareClass {
    *field
        .square_classes()
        .choose(rng)
        .expect("classes are nonempty")
}

fn random_signs(rng: &mut ChaCha8Rng, k: usize) -> Vec<Sign> {
    (0..k)
        .map(|_| Sign::from_parity(rng.random_bool(0.5)))
        .collect()
}

fn sign_list(v: &[Sign]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn check_root_number(
    rng: &mut ChaCha8Rng,
    field: PAdicField,
    cfg: &SweepConfig,
    out: &mut Outcome,
) -> Result<Option<String>> {
    let m = random_symplectic(
        rng,
        field,
        SampleOptions {
            tempered: false,
            ..opts(cfg, cfg.max_dim)
        },
    );
    out.input("rep", print_rep(&m));
    let eps = epsilon_half(&m)?;
    if eps.as_sign().is_none() {
        return Ok(Some(format!("epsilon = {eps}")));
    }
    for c in field.square_classes() {
        let e = epsilon_half_psi(&m, c)?;
        if e != eps {
            return Ok(Some(format!("psi_{c}: {e} vs {eps}")));
        }
    }
    Ok(None)
}

const EXPONENTS: [(i64, i64); 5] = [(1, 2), (1, 3), (-1, 4), (1, 1), (-3, 2)];

fn check_eps_dual(
    rng: &mut ChaCha8Rng,
    field: PAdicField,
    cfg: &SweepConfig,
    out: &mut Outcome,
) -> Result<Option<String>> {
    let family = *[Family::Sp, Family::SoOdd, Family::SoEven, Family::Mp]
        .choose(rng)
        .expect("nonempty");
    let (mut rho, _) = random_param(
        rng,
        field,
        family,
        opts(cfg, cfg.max_dim.saturating_sub(2).max(1)),
    );
    let (a, b) = *EXPONENTS.choose(rng).expect("nonempty");
    let n = rng.random_range(1..=2);
    rho.add(
        WdIrred::quadratic(random_class(rng, field), Rational::new(a, b), n),
        1,
    );
    out.input("rep", print_rep(&rho));
    let lhs = epsilon_half(&rho)? * epsilon_half(&rho.dual())?;
    let det = rho.det().eval_sign(field.class_of(-1)?)?;
    let rhs = ExactNumber::sign(det, field.p());
    Ok((lhs != rhs).then(|| format!("eps(rho) eps(rho^) = {lhs}, det(-1) = {det}")))
}

fn check_lambda(
    rng: &mut ChaCha8Rng,
    field: PAdicField,
    out: &mut Outcome,
) -> Result<Option<String>> {
    let d = random_class(rng, field);
    out.input("d", d);
    let sq = lambda_factor(d).pow(2);
    let want = TwistedChar::quadratic(d, Rational::from(0)).eval_sign(field.class_of(-1)?)?;
    Ok((sq != ExactNumber::sign(want, field.p()))
        .then(|| format!("lambda^2 = {sq}, chi_d(-1) = {want}")))
}

fn check_adjoint(
    rng: &mut ChaCha8Rng,
    field: PAdicField,
    cfg: &SweepConfig,
    out: &mut Outcome,
) -> Result<Option<String>> {
    let (phi, _) = random_param(
        rng,
        field,
        Family::Sp,
        SampleOptions {
            tempered: false,
            ..opts(cfg, cfg.max_dim)
        },
    );
    let chi_v = random_class(rng, field);
    out.input("rep", print_rep(&phi));
    out.input("chi_v", chi_v);
    let ok = verify_adjoint_factorization(&phi, chi_v)?;
    Ok((!ok).then(|| "Lambda^2 sides differ".to_string()))
}

fn multiplicative(chi: &SignCharacter) -> Option<String> {
    let table = chi.table();
    for &(x, sx) in &table {
        for &(y, sy) in &table {
            match chi.eval(x ^ y) {
                Ok(s) if s == sx * sy => {}
                _ => return Some(format!("chi({x}+{y}) != chi({x}) chi({y})")),
            }
        }
    }
    None
}

/// Checks the recipe characters on one (M, N) pair.
pub fn recipe_pair_defect(
    case: RecipeCase,
    phi_m: &WdRep,
    phi_n: &WdRep,
) -> Result<Option<String>> {
    let chars: Vec<(&str, SignCharacter)> = if case == RecipeCase::FourierJacobi {
        let r = fj_recipe(phi_m, phi_n)?;
        vec![
            ("chi_N", r.pair.chi_on_m),
            ("chi_M", r.pair.chi_on_n),
            ("chi_M on N1", r.chi_m_on_n1),
        ]
    } else {
        let r = bessel_recipe(phi_m, phi_n)?;
        vec![("chi_N", r.pair.chi_on_m), ("chi_M", r.pair.chi_on_n)]
    };
    Ok(chars
        .iter()
        .find_map(|(name, chi)| multiplicative(chi).map(|w| format!("{name}: {w}"))))
}

fn check_recipe(
    rng: &mut ChaCha8Rng,
    field: PAdicField,
    cfg: &SweepConfig,
    out: &mut Outcome,
) -> Result<Option<String>> {
    let fj = rng.random_bool(0.5);
    let top = cfg.max_dim.max(2);
    let (m, n) = if fj {
        let dm = 2 * rng.random_range(0..top / 2);
        let dn = if dm == 0 || rng.random_bool(0.5) {
            dm + 1
        } else {
            dm - 1
        };
        let (m, _) = random_param_of_dim(rng, field, Family::Mp, dm, opts(cfg, dm));
        let (n, _) = random_param_of_dim(rng, field, Family::Sp, dn, opts(cfg, dn));
        (m, n)
    } else {
        let dm = 2 * rng.random_range(0..=(top - 2) / 2);
        let dn = if rng.random_bool(0.5) { dm } else { dm + 2 };
        let (m, _) = random_param_of_dim(rng, field, Family::SoOdd, dm, opts(cfg, dm));
        let (n, _) = random_param_of_dim(rng, field, Family::SoEven, dn, opts(cfg, dn));
        (m, n)
    };
    out.input("recipe", if fj { "fj" } else { "bessel" });
    out.input("rep_m", print_rep(&m));
    out.input("rep_n", print_rep(&n));
    let case = if fj {
        RecipeCase::FourierJacobi
    } else {
        RecipeCase::Bessel
    };
    recipe_pair_defect(case, &m, &n)
}

/// Compares change(c1) after change(c2) with change(c1 c2).
pub fn mp_cocycle_defect(
    e: &EnhancedParam,
    c1: SquareClass,
    c2: SquareClass,
) -> Result<Option<String>> {
    let twice = mp_change_psi(&mp_change_psi(e, c2)?, c1)?;
    let once = mp_change_psi(e, c1.try_mul(c2)?)?;
    Ok((twice != once).then(|| format!("c1={c1} c2={c2}: composite differs")))
}

fn check_mp_cocycle(
    rng: &mut ChaCha8Rng,
    field: PAdicField,
    cfg: &SweepConfig,
    out: &mut Outcome,
) -> Result<Option<String>> {
    let (phi, _) = random_param(rng, field, Family::Mp, opts(cfg, cfg.max_dim));
    let rank = crate::packets::component_group(&phi, GroupKind::Mp)?.rank();
    let values = random_signs(rng, rank);
    let label = random_class(rng, field);
    let (c1, c2) = (random_class(rng, field), random_class(rng, field));
    out.input("rep", print_rep(&phi));
    out.input("eta", sign_list(&values));
    out.input("label", label);
    out.input("c1", c1);
    out.input("c2", c2);
    let e = EnhancedParam::with_basis_values(GroupKind::Mp, phi, &values, label)?;
    mp_cocycle_defect(&e, c1, c2)
}

/// Extension count and round trip for prasad_p1.
pub fn prasad_p1_defect(e: &EnhancedParam, v: &OrthSpaceLabel) -> Result<Option<String>> {
    let lift = prasad_p1(e, v)?;
    let chi_v = WdIrred::quadratic(v.disc, Rational::from(0), 1);
    let expected = if e.phi.contains(&chi_v) { 1 } else { 2 };
    let got = lift.partial.extensions.len();
    if got != expected {
        return Ok(Some(format!("{got} extensions, expected {expected}")));
    }
    let back = lift
        .phi
        .remove(&WdIrred::new(TwistedChar::trivial(e.field()), 1), 1)?
        .twist(v.disc);
    Ok((back != e.phi).then(|| format!("round trip gave {}", print_rep(&back))))
}

/// Extension count for prasad_p2.
pub fn prasad_p2_defect(e: &EnhancedParam) -> Result<Option<String>> {
    let lift = prasad_p2(e)?;
    let one = WdIrred::new(TwistedChar::trivial(e.field()), 1);
    let expected = if e.phi.is_epsilon_invariant()? && !e.phi.contains(&one) {
        2
    } else {
        1
    };
    let got = lift.partial.extensions.len();
    Ok((got != expected).then(|| format!("{got} extensions, expected {expected}")))
}

fn check_prasad(
    rng: &mut ChaCha8Rng,
    field: PAdicField,
    cfg: &SweepConfig,
    out: &mut Outcome,
) -> Result<Option<String>> {
    let label = random_class(rng, field);
    if rng.random_bool(0.5) {
        let (phi, kind) = random_param(
            rng,
            field,
            Family::Sp,
            opts(cfg, cfg.max_dim.saturating_sub(1).max(1)),
        );
        let rank = crate::packets::component_group(&phi, kind)?.rank();
        let values = random_signs(rng, rank);
        let disc = random_class(rng, field);
        out.input("map", "p1");
        out.input("rep", print_rep(&phi));
        out.input("eta", sign_list(&values));
        out.input("disc", disc);
        let v = OrthSpaceLabel::new(phi.dim() + 1, disc, FormVariant::Plus)?;
        let e = EnhancedParam::with_basis_values(kind, phi, &values, label)?;
        prasad_p1_defect(&e, &v)
    } else {
        let (phi, kind) = random_param(
            rng,
            field,
            Family::SoEven,
            opts(cfg, cfg.max_dim.saturating_sub(1).max(2)),
        );
        let rank = crate::packets::component_group(&phi, kind)?.rank();
        let values = random_signs(rng, rank);
        out.input("map", "p2");
        out.input("rep", print_rep(&phi));
        out.input("eta", sign_list(&values));
        let e = EnhancedParam::with_basis_values(kind, phi, &values, label)?;
        prasad_p2_defect(&e)
    }
}

fn table_key(r: &SeesawReport) -> Vec<(u64, u64, Sign, Sign)> {
    r.table
        .iter()
        .map(|e| (e.a, e.b, e.direct, e.transported))
        .collect()
}

/// Runs the see-saw check at two classes and compares the verdict tables.
pub fn seesaw_defect(
    phi_m: &WdRep,
    phi_n: &WdRep,
    d1: SquareClass,
    d2: SquareClass,
    opts: SeesawOptions,
) -> Result<Option<String>> {
    let r1 = verify_fj_seesaw(phi_m, phi_n, d1, opts)?;
    if let Some(w) = &r1.witness {
        return Ok(Some(format!(
            "d={d1} a={} b={}: direct {} transported {}",
            r1.group_m.element_name(w.a),
            r1.group_n.element_name(w.b),
            w.direct,
            w.transported
        )));
    }
    let r2 = verify_fj_seesaw(phi_m, phi_n, d2, opts)?;
    if r2.pass != r1.pass || table_key(&r1) != table_key(&r2) {
        return Ok(Some(format!(
            "verdict tables differ between d={d1} and d={d2}"
        )));
    }
    Ok(None)
}

fn check_seesaw(
    rng: &mut ChaCha8Rng,
    field: PAdicField,
    cfg: &SweepConfig,
    out: &mut Outcome,
) -> Result<Option<String>> {
    // dim M + 2 = dim N + 1 <= max_dim
    let top = cfg.max_dim.max(2) - 2;
    let dm = 2 * rng.random_range(0..=top / 2);
    let (m, _) = random_param_of_dim(rng, field, Family::Mp, dm, opts(cfg, dm));
    let (n, _) = random_param_of_dim(rng, field, Family::Sp, dm + 1, opts(cfg, dm + 1));
    let admissible: Vec<SquareClass> = field
        .square_classes()
        .into_iter()
        .filter(|&d| crate::thetaggp::seesaw_admissible(&n, d))
        .collect();
    out.input("rep_m", print_rep(&m));
    out.input("rep_n", print_rep(&n));
    if admissible.len() < 2 {
        return Err(Error::NotGeneric(
            "fewer than two admissible classes".into(),
        ));
    }
    let picks: Vec<SquareClass> = admissible.choose_multiple(rng, 2).copied().collect();
    out.input("d1", picks[0]);
    out.input("d2", picks[1]);
    seesaw_defect(
        &m,
        &n,
        picks[0],
        picks[1],
        SeesawOptions {
            allow_nontempered: cfg.allow_nontempered,
        },
    )
}

fn check_classify(
    rng: &mut ChaCha8Rng,
    field: PAdicField,
    cfg: &SweepConfig,
    out: &mut Outcome,
) -> Result<Option<String>> {
    let family = match cfg.family {
        Some(f) => f,
        None => *[Family::Sp, Family::SoOdd, Family::SoEven, Family::Mp]
            .choose(rng)
            .expect("nonempty"),
    };
    let (phi, kind) = random_param(
        rng,
        field,
        family,
        SampleOptions {
            tempered: false,
            ..opts(cfg, cfg.max_dim)
        },
    );
    out.input("rep", print_rep(&phi));
    out.input("kind", kind.name());
    if let Err(r) = phi.classify_parameter(kind) {
        return Ok(Some(format!("rejected: {}", r.code())));
    }
    let back = phi.langlands_decompose()?.reassemble();
    if back != phi {
        return Ok(Some(format!(
            "Langlands data reassembles to {}",
            print_rep(&back)
        )));
    }
    if phi.is_tempered() && !is_generic(&phi, kind)? {
        return Ok(Some("tempered but not generic".into()));
    }
    Ok(None)
}

fn run_one(cfg: &SweepConfig, item: usize, check: Check) -> Record {
    let p = cfg.primes[item % cfg.primes.len()];
    let mut rng = item_rng(cfg.seed, (item as u64) * 16 + check.stream());
    let mut out = Outcome::new();
    out.result = PAdicField::new(p).and_then(|field| {
        let o = &mut out;
        match check {
            Check::RootNumber => check_root_number(&mut rng, field, cfg, o),
            Check::EpsDual => check_eps_dual(&mut rng, field, cfg, o),
            Check::Lambda => check_lambda(&mut rng, field, o),
            Check::Adjoint => check_adjoint(&mut rng, field, cfg, o),
            Check::Recipe => check_recipe(&mut rng, field, cfg, o),
            Check::MpCocycle => check_mp_cocycle(&mut rng, field, cfg, o),
            Check::Prasad => check_prasad(&mut rng, field, cfg, o),
            Check::Seesaw => check_seesaw(&mut rng, field, cfg, o),
            Check::Classify => check_classify(&mut rng, field, cfg, o),
        }
    });
    let (verdict, witness) = match out.result {
        Ok(None) => (Verdict::Pass, None),
        Ok(Some(w)) => (Verdict::Fail, Some(w)),
        Err(e) => (Verdict::Error, Some(e.to_string())),
    };
    Record {
        index: item,
        p,
        check: check.name(),
        inputs: out.inputs,
        verdict,
        witness,
    }
}

/// Runs the sweep, choosing sequential or parallel execution explicitly.
pub fn run_sweep_with(cfg: &SweepConfig, parallel: bool) -> Result<SweepReport> {
    if cfg.primes.is_empty() {
        return Err(Error::MalformedParameter("no primes given".into()));
    }
    for &p in &cfg.primes {
        PAdicField::new(p)?;
    }
    let k = cfg.checks.len();
    let jobs = cfg.count * k;
    let job = |j: usize| run_one(cfg, j / k, cfg.checks[j % k]);
    let records = if parallel {
        map_indexed(jobs, job)
    } else {
        map_indexed_seq(jobs, job)
    };
    let passed = records
        .iter()
        .filter(|r| r.verdict == Verdict::Pass)
        .count();
    let errors = records
        .iter()
        .filter(|r| r.verdict == Verdict::Error)
        .count();
    let summary = Summary {
        total: records.len(),
        passed,
        failed: records.len() - passed - errors,
        errors,
        seed: cfg.seed,
        primes: cfg.primes.clone(),
        checks: cfg.checks.iter().map(|c| c.name()).collect(),
    };
    let report = SweepReport { records, summary };
    if let Some(path) = &cfg.output {
        std::fs::write(path, report.to_jsonl()).map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(report)
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    run_sweep_with(cfg, true)
}

/// Parses a comma-separated list of check names; `all` selects every check.
pub fn parse_checks(text: &str) -> Result<Vec<Check>> {
    if text.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    text.split(',').map(|s| s.trim().parse()).collect()
}
