use std::fmt;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use strickland_lab::actions::{enumerate_action_classes, MAX_BRUTE_DEGREE};
use strickland_lab::divisors::{
    component_count_closed_form, count_components, enumerate_components, fiber_partition_check,
    rank_identity_check, MAX_COMPONENTS,
};
use strickland_lab::honda::{
    chern_subring_rank, expected_subring_rank, i_series, stirling_divisibility,
};
use strickland_lab::linalg::{smith_normal_form, IntegerMatrix};
use strickland_lab::perm::{all_perms, centralizer_order, orbits};
use strickland_lab::wreath::{
    diagram_check, induce, inner_product, norm_pullback_bijectivity, restrict, surjections_onto,
    verify_height0, ClassFunction, YoungSubgroup,
};
use strickland_lab::{Error, FiniteAbelianGroup, Int, Rational, WreathProduct};

use crate::report::{CheckReport, Params};

pub const CHECKS: &[&str] = &[
    "rank",
    "height0",
    "norm",
    "diagram",
    "centralizers",
    "transfer",
    "appendix",
    "fibers",
    "components",
    "snf",
    "frobenius",
];

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest `|A|^n n!` for checks that work inside `A ≀ Σ_n`.
    pub max_order: u128,
    /// Largest degree for brute force over permutations.
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 1_000_000,
            max_degree: 8,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::ResourceBound { .. }) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(s) => write!(f, "configuration error: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Outcome = Result<Vec<CheckReport>, CliError>;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn get_u64(params: &Params, key: &str) -> Result<u64, CliError> {
    match params.get(key) {
        Some(Value::Number(n)) => n.as_u64().ok_or_else(|| config(format!("--{key} must be a non-negative integer"))),
        Some(Value::String(s)) => s.trim().parse().map_err(|_| config(format!("--{key}: cannot parse {s:?}"))),
        Some(other) => Err(config(format!("--{key}: unexpected value {other}"))),
        None => Err(config(format!("missing --{key}"))),
    }
}

fn get_u64_or(params: &Params, key: &str, default: u64) -> Result<u64, CliError> {
    if params.contains_key(key) {
        get_u64(params, key)
    } else {
        Ok(default)
    }
}

pub fn get_string(params: &Params, key: &str) -> Result<String, CliError> {
    match params.get(key) {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(Value::Number(n)) => Ok(n.to_string()),
        Some(other) => Err(config(format!("--{key}: unexpected value {other}"))),
        None => Err(config(format!("missing --{key}"))),
    }
}

/// `"1"` is the trivial group, `"4,2"` is `Z/4 ⊕ Z/2`.
pub fn parse_group(text: &str) -> Result<FiniteAbelianGroup, CliError> {
    let factors: Vec<u64> = text
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| config(format!("cannot parse group {text:?}")))?;
    if factors.contains(&0) {
        return Err(config("group factors must be positive"));
    }
    Ok(FiniteAbelianGroup::from_cyclic_factors(&factors))
}

pub fn get_group(params: &Params) -> Result<FiniteAbelianGroup, CliError> {
    parse_group(&get_string(params, "A")?)
}

/// Generator images separated by `;`, coordinates by `,`.
pub fn parse_alpha(text: &str, rank: usize) -> Result<Vec<Vec<i64>>, CliError> {
    text.split(';')
        .map(|row| {
            let v: Vec<i64> = if row.trim().is_empty() {
                Vec::new()
            } else {
                row.split(',')
                    .map(|s| s.trim().parse::<i64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| config(format!("cannot parse alpha {text:?}")))?
            };
            if v.len() != rank {
                return Err(config(format!("alpha row {row:?} needs {rank} coordinates")));
            }
            Ok(v)
        })
        .collect()
}

fn format_alpha(alpha: &[Vec<i64>]) -> String {
    alpha
        .iter()
        .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn wreath_order(a: &FiniteAbelianGroup, n: u64) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    (a.order() as u128).saturating_pow(n as u32).saturating_mul(fact)
}

fn check_order(a: &FiniteAbelianGroup, n: u64, limits: &Limits) -> Result<(), CliError> {
    let order = wreath_order(a, n);
    if order > limits.max_order {
        return Err(Error::ResourceBound {
            what: "wreath product order",
            requested: order,
            limit: limits.max_order,
        }
        .into());
    }
    Ok(())
}

/// Whether a grid point exceeds its `skip_above_order` filter.
pub fn skipped(params: &Params) -> bool {
    let Ok(limit) = get_u64(params, "skip_above_order") else {
        return false;
    };
    match (get_group(params), get_u64(params, "n")) {
        (Ok(a), Ok(n)) => wreath_order(&a, n) > limit as u128,
        _ => false,
    }
}

pub fn run_check(name: &str, params: &Params, limits: &Limits) -> Outcome {
    match name {
        "rank" => rank(params),
        "height0" => height0(params, limits),
        "norm" => norm(params, limits),
        "diagram" => diagram(params),
        "centralizers" => centralizers(params, limits),
        "transfer" => transfer(params, limits),
        "appendix" => appendix(params),
        "fibers" => fibers(params),
        "components" => components(params),
        "snf" => snf(params),
        "frobenius" => frobenius(params, limits),
        other => Err(config(format!("unknown check {other:?}"))),
    }
}

fn rank(params: &Params) -> Outcome {
    let p = get_u64(params, "p")?;
    let k = get_u64(params, "k")? as u32;
    let d = get_u64(params, "d")? as usize;
    let r = rank_identity_check(p, k, d)?;
    let mut report = CheckReport::new("rank", params, r.lhs, r.rhs, r.holds());
    report = report.with_detail(json!({
        "bijection_ok": r.bijection_ok,
        "permutation_count": r.permutation_count,
    }));
    Ok(vec![report])
}

fn height0(params: &Params, limits: &Limits) -> Outcome {
    let a = get_group(params)?;
    let n = get_u64(params, "n")?;
    check_order(&a, n, limits)?;
    let r = verify_height0(&a, n as usize)?;
    let lhs = [r.span_dim, r.intersection_dim];
    let rhs = [r.vanishing_dim, r.vanishing_dim];
    let pass = r.holds && r.span_dim + a.order() as usize == r.classes;
    Ok(vec![CheckReport::new("height0", params, lhs, rhs, pass).with_detail(&r)])
}

fn norm(params: &Params, limits: &Limits) -> Outcome {
    let a = get_group(params)?;
    let n = get_u64(params, "n")?;
    check_order(&a, n, limits)?;
    let r = norm_pullback_bijectivity(&a, n as usize)?;
    Ok(vec![CheckReport::new("norm", params, r.rank, r.base_order, r.holds).with_detail(&r)])
}

fn diagram(params: &Params) -> Outcome {
    let a = get_group(params)?;
    let l = get_u64(params, "l")?;
    let alphas: Vec<Vec<Vec<i64>>> = if params.contains_key("alpha") {
        vec![parse_alpha(&get_string(params, "alpha")?, a.rank())?]
    } else if params.contains_key("h") {
        surjections_onto(&a, get_u64(params, "h")? as usize)
    } else {
        (1..=2).flat_map(|h| surjections_onto(&a, h)).collect()
    };
    let mut out = Vec::new();
    for alpha in alphas {
        let r = diagram_check(&a, &alpha, l)?;
        let mut p = params.clone();
        p.insert("alpha".into(), Value::String(format_alpha(&alpha)));
        let lhs: Vec<String> = r.entries.iter().map(|e| e.via_pushout.to_string()).collect();
        let rhs: Vec<String> = r.entries.iter().map(|e| e.via_pullback.to_string()).collect();
        out.push(CheckReport::new("diagram", &p, lhs, rhs, r.holds).with_detail(&r.entries));
    }
    Ok(out)
}

fn centralizers(params: &Params, limits: &Limits) -> Outcome {
    let a = get_group(params)?;
    let n = get_u64(params, "n")? as usize;
    let h = get_u64(params, "h")? as usize;
    let degree = n * a.order() as usize;
    if degree > limits.max_degree {
        return Err(Error::ResourceBound {
            what: "permutation degree n|A|",
            requested: degree as u128,
            limit: limits.max_degree as u128,
        }
        .into());
    }
    let mut formula = Vec::new();
    let mut brute = Vec::new();
    let mut shapes = Vec::new();
    for c in enumerate_action_classes(&a, h, n) {
        let model = c.to_permutations();
        brute.push(centralizer_order(model.degree, &model.all_generators()).to_string());
        formula.push(c.centralizer_shape().order().to_string());
        shapes.push(format!("{c}: {}", c.centralizer_shape()));
    }
    Ok(vec![CheckReport::equality("centralizers", params, formula, brute).with_detail(shapes)])
}

fn transfer(params: &Params, limits: &Limits) -> Outcome {
    let n = get_u64(params, "n")? as usize;
    let h = get_u64(params, "h")? as usize;
    let cap = MAX_BRUTE_DEGREE.min(limits.max_degree);
    if n > cap {
        return Err(Error::ResourceBound {
            what: "degree n for the Young subgroup search",
            requested: n as u128,
            limit: cap as u128,
        }
        .into());
    }
    let trivial = FiniteAbelianGroup::trivial();
    let perms = all_perms(n);
    let mut survives = Vec::new();
    let mut unfactorable = Vec::new();
    let mut single_orbit = Vec::new();
    for c in enumerate_action_classes(&trivial, h, n) {
        let tuple = c.to_permutations().tuple;
        let factors = (1..n).any(|m| {
            perms.iter().any(|g| {
                tuple.iter().all(|t| {
                    let s = t.conjugate_by(g);
                    (0..m).all(|x| s.apply(x) < m)
                })
            })
        });
        survives.push(c.survives_transfer());
        unfactorable.push(!factors);
        single_orbit.push(orbits(n, &tuple).len() == 1);
    }
    let pass = survives == unfactorable && survives == single_orbit;
    Ok(vec![CheckReport::new("transfer", params, &survives, &unfactorable, pass)])
}

fn appendix(params: &Params) -> Outcome {
    let p = get_u64(params, "p")?;
    let n = get_u64(params, "n")? as u32;
    let mut linear = Vec::new();
    let mut expected = Vec::new();
    let mut clean = true;
    for i in 0..=p {
        let s = i_series(i, p, n)?;
        clean &= s.support().iter().all(|&d| d == 1);
        linear.push(s.coeff(1));
        expected.push(i % p);
    }
    let mut series = CheckReport::equality("appendix.i_series", params, &linear, &expected);
    series.pass &= clean;

    let st = stirling_divisibility(p)?;
    let mut want: Vec<u64> = vec![0; st.residues.len()];
    if let Some(last) = want.last_mut() {
        *last = p - 1;
    }
    let stirling = CheckReport::new("appendix.stirling", params, &st.residues, want, st.holds)
        .with_detail(json!({ "e": st.values }));

    let rank = chern_subring_rank(p, n)?;
    let subring =
        CheckReport::equality("appendix.subring_rank", params, rank as u64, expected_subring_rank(p, n));
    Ok(vec![series, stirling, subring])
}

fn fibers(params: &Params) -> Outcome {
    let m = get_u64(params, "m")?;
    let h = get_u64(params, "h")? as usize;
    let r = fiber_partition_check(m, h)?;
    let counts: Vec<usize> = r.fibers.iter().map(|f| f.fiber).collect();
    let orders: Vec<u64> = r.fibers.iter().map(|f| f.a_star_order).collect();
    let labels: Vec<&str> = r.fibers.iter().map(|f| f.a_star.as_str()).collect();
    Ok(vec![
        CheckReport::equality("fibers", params, &counts, &orders).with_detail(labels),
        CheckReport::equality("fibers.partition", params, r.sum_of_fibers, r.total),
    ])
}

fn components(params: &Params) -> Outcome {
    let m = get_u64(params, "m")? as usize;
    let k = get_u64(params, "k")? as u32;
    let h = get_u64(params, "h")? as usize;
    let p = get_u64(params, "p")?;
    let closed = component_count_closed_form(m, k, h, p)?;
    let counted = if closed.to_u128().is_some_and(|c| c <= MAX_COMPONENTS) {
        enumerate_components(m, k, h, p)?.len() as u64
    } else {
        count_components(m, k, h, p)?
    };
    Ok(vec![CheckReport::equality(
        "components",
        params,
        counted.to_string(),
        closed.to_string(),
    )])
}

fn snf(params: &Params) -> Outcome {
    let count = get_u64_or(params, "count", 1000)?;
    let seed = get_u64_or(params, "seed", 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verified = 0u64;
    for _ in 0..count {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let m = IntegerMatrix::from_fn(rows, cols, |_, _| Int::from(rng.gen_range(-9i64..=9)));
        verified += smith_normal_form(&m).verify(&m) as u64;
    }
    Ok(vec![CheckReport::equality("snf", params, verified, count)])
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(Int::from(rng.gen_range(-20i64..=20)), Int::from(rng.gen_range(1i64..=6)))
}

fn frobenius(params: &Params, limits: &Limits) -> Outcome {
    let a = get_group(params)?;
    let n = get_u64(params, "n")? as usize;
    if n < 2 {
        return Err(config("frobenius needs n >= 2"));
    }
    check_order(&a, n as u64, limits)?;
    let count = get_u64_or(params, "count", 20)?;
    let seed = get_u64_or(params, "seed", 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = WreathProduct::new(a, n)?;
    let classes = g.conjugacy_classes();
    let labels: Vec<_> = classes.iter().map(|c| c.0.clone()).collect();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for _ in 0..count {
        let young = YoungSubgroup::new(&g, rng.gen_range(1..n))?;
        let h_classes = young.conjugacy_classes();
        let mut f = ClassFunction::zero(h_classes.iter().map(|c| &c.0));
        for (k, _) in &h_classes {
            f.set(k, random_rational(&mut rng));
        }
        let mut phi = ClassFunction::zero(labels.iter());
        for k in &labels {
            phi.set(k, random_rational(&mut rng));
        }
        lhs.push(inner_product(&classes, g.order(), &induce(&young, &f), &phi).to_string());
        rhs.push(inner_product(&h_classes, young.order(), &f, &restrict(&young, &phi)).to_string());
    }
    Ok(vec![CheckReport::equality("frobenius", params, lhs, rhs)])
}
