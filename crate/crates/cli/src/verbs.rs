use std::fmt;

use kmalg::{
    bracket_via_commutator, check_admissible, check_symbol_conditions, default_probe_depth, generate_conditions,
    nullity_identity_check, probe_admissible, separating_witness, symbol_conditions, Error, GluedFunction,
    IdentityStatus, PairedOp, Poly, Rational, SpaceSpec, SymbolElem, DEFAULT_DEGREE_CAP,
};
use serde_json::json;

use crate::dsl::{DslError, Item, OpBlock, PairedBlock, SymbolBlock, Value};
use crate::report::{Report, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Check,
    Compose,
    Commutator,
    Symbol,
    Bracket,
    Conditions,
    Extend,
    Restrict,
    Witness,
    Nullity,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Check => "check",
            Verb::Compose => "compose",
            Verb::Commutator => "commutator",
            Verb::Symbol => "symbol",
            Verb::Bracket => "bracket",
            Verb::Conditions => "conditions",
            Verb::Extend => "extend",
            Verb::Restrict => "restrict",
            Verb::Witness => "witness",
            Verb::Nullity => "nullity",
        }
    }

    /// Verbs that read no DSL input.
    pub fn takes_input(self) -> bool {
        !matches!(self, Verb::Conditions | Verb::Nullity)
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub space: Option<SpaceSpec>,
    pub order: Option<usize>,
    pub degree: Option<usize>,
    pub probe_depth: Option<usize>,
    pub max_degree: usize,
    pub profile: Option<Poly>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            space: None,
            order: None,
            degree: None,
            probe_depth: None,
            max_degree: DEFAULT_DEGREE_CAP,
            profile: None,
        }
    }
}

/// Input problems; all map to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Syntax(DslError),
    Usage(String),
    Algebra { line: Option<usize>, error: Error },
}

impl CliError {
    fn at(item: &Item, error: Error) -> Self {
        CliError::Algebra {
            line: Some(item.line),
            error,
        }
    }
}

impl From<DslError> for CliError {
    fn from(e: DslError) -> Self {
        CliError::Syntax(e)
    }
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        CliError::Algebra { line: None, error }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Algebra { line: Some(l), error } => write!(f, "line {l}: {error}"),
            CliError::Algebra { line: None, error } => write!(f, "{error}"),
        }
    }
}

impl std::error::Error for CliError {}

type Outcome = Result<Report, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn require_space(verb: Verb, opts: &Options) -> Result<SpaceSpec, CliError> {
    opts.space
        .ok_or_else(|| usage(format!("{} requires --space K<m>", verb.name())))
}

/// Reconciles `--space` with a space written in the input.
fn agree_space(opts: &Options, item: &Item, written: SpaceSpec) -> Result<SpaceSpec, CliError> {
    match opts.space {
        Some(s) if s != written => Err(usage(format!(
            "line {}: input lives on {written} but --space is {s}",
            item.line
        ))),
        _ => Ok(written),
    }
}

fn describe(items: &[Item]) -> String {
    if items.is_empty() {
        return "nothing".into();
    }
    items
        .iter()
        .map(|it| format!("{} (line {})", it.value.kind(), it.line))
        .collect::<Vec<_>>()
        .join(", ")
}

fn arity_error(verb: Verb, expected: &str, items: &[Item]) -> CliError {
    usage(format!("{} expects {expected}, got {}", verb.name(), describe(items)))
}

fn cap_poly(item: &Item, p: &Poly, cap: usize) -> Result<(), CliError> {
    p.check_degree_cap(cap).map_err(|e| CliError::at(item, e))
}

fn cap_input(item: &Item, cap: usize) -> Result<(), CliError> {
    let polys: Vec<&Poly> = match &item.value {
        Value::Poly(p) => vec![p],
        Value::Plane(p) => {
            let degree = p.x_degree().unwrap_or(0).max(p.y_degree().unwrap_or(0));
            if degree > cap {
                return Err(CliError::at(item, Error::DegreeCap { degree, cap }));
            }
            vec![]
        }
        Value::Glued(u) => vec![u.f(), u.g()],
        Value::Op(b) => b.op.coeffs().iter().collect(),
        Value::Paired(b) => b.d1.coeffs().iter().chain(b.d2.coeffs()).collect(),
        Value::Symbol(s) => vec![&s.a, &s.b],
        Value::Char(_) => vec![],
    };
    polys.into_iter().try_for_each(|p| cap_poly(item, p, cap))
}

fn cap_result(value: &Value, cap: usize) -> Result<(), CliError> {
    let item = Item {
        value: value.clone(),
        line: 0,
    };
    cap_input(&item, cap).map_err(|e| match e {
        CliError::Algebra { error, .. } => CliError::Algebra { line: None, error },
        other => other,
    })
}

/// Runs one verb on already parsed input.
pub fn run(verb: Verb, opts: &Options, items: &[Item]) -> Outcome {
    if let Some(h) = &opts.profile {
        h.check_degree_cap(opts.max_degree)?;
    }
    for item in items {
        cap_input(item, opts.max_degree)?;
    }
    if !verb.takes_input() && !items.is_empty() {
        return Err(arity_error(verb, "no input", items));
    }
    let report = match verb {
        Verb::Check => check(opts, items),
        Verb::Compose | Verb::Commutator => combine(verb, opts, items),
        Verb::Symbol => symbol(opts, items),
        Verb::Bracket => bracket(opts, items),
        Verb::Conditions => conditions(opts),
        Verb::Extend => extend(opts, items),
        Verb::Restrict => restrict(opts, items),
        Verb::Witness => witness(opts, items),
        Verb::Nullity => nullity(opts),
    }?;
    if let Some(value) = &report.result {
        cap_result(value, opts.max_degree)?;
    }
    Ok(report)
}

fn check(opts: &Options, items: &[Item]) -> Outcome {
    let [Item {
        value: Value::Paired(block),
        ..
    }] = items
    else {
        return Err(arity_error(Verb::Check, "one paired operator", items));
    };
    let space = require_space(Verb::Check, opts)?;
    let order = opts.order.unwrap_or(block.order);
    let mut report = Report::new(Verb::Check, Some(space));
    match check_admissible(&block.d1, &block.d2, space, order) {
        Err(Error::OrderExceeded { found, declared }) => {
            report.line(format!("{space} order {order}: not admissible"));
            report.line(format!("operator has order {found}, above the requested order {declared}"));
            report.verdict = Verdict::Fail;
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
        Ok(result) => {
            let ok = result.is_admissible();
            report.line(format!(
                "{space} order {order}: {}",
                if ok { "admissible" } else { "not admissible" }
            ));
            report.fail_with(result.violations);
            report.verdict = Verdict::from_bool(ok);
        }
    }
    let depth = opts.probe_depth.unwrap_or_else(|| default_probe_depth(space, order));
    let probe = probe_admissible(&block.d1, &block.d2, space, depth);
    report.line(format!(
        "probe D={depth}: {}",
        if probe { "admissible" } else { "not admissible" }
    ));
    if probe != (report.verdict == Verdict::Pass) {
        report.line("warning: the probe disagrees with the generated conditions");
    }
    report
        .extra
        .insert("probe".into(), json!({"depth": depth, "admissible": probe}));
    Ok(report)
}

/// Validates a paired block as an operator of its declared order.
fn paired(report: &mut Report, item: &Item, block: &PairedBlock, space: SpaceSpec, label: &str) -> Option<PairedOp> {
    let result = check_admissible(&block.d1, &block.d2, space, block.order).expect("block order bounds its coefficients");
    if result.is_admissible() {
        Some(PairedOp::new(block.d1.clone(), block.d2.clone(), space, block.order).expect("admissible"))
    } else {
        report.line(format!(
            "{label} (line {}) is not admissible on {space} at order {}",
            item.line, block.order
        ));
        report.fail_with(result.violations);
        None
    }
}

fn combine(verb: Verb, opts: &Options, items: &[Item]) -> Outcome {
    let commutator = verb == Verb::Commutator;
    match items {
        [a @ Item {
            value: Value::Paired(x),
            ..
        }, b @ Item {
            value: Value::Paired(y),
            ..
        }] => {
            let space = require_space(verb, opts)?;
            let mut report = Report::new(verb, Some(space));
            let lhs = paired(&mut report, a, x, space, "first operator");
            let rhs = paired(&mut report, b, y, space, "second operator");
            let (Some(lhs), Some(rhs)) = (lhs, rhs) else {
                return Ok(report);
            };
            let out = if commutator { lhs.commutator(&rhs) } else { lhs.compose(&rhs) };
            match out {
                Ok(op) => report.set_result(Value::Paired(PairedBlock {
                    order: op.order(),
                    d1: op.d1().clone(),
                    d2: op.d2().clone(),
                })),
                Err(e @ Error::ClosureViolation { .. }) => {
                    report.line(e.to_string());
                    report.verdict = Verdict::Fail;
                }
                Err(e) => return Err(e.into()),
            }
            Ok(report)
        }
        [Item {
            value: Value::Op(x), ..
        }, Item {
            value: Value::Op(y), ..
        }] => {
            let mut report = Report::new(verb, opts.space);
            let (op, order) = if commutator {
                (x.op.commutator(&y.op), (x.order + y.order).saturating_sub(1))
            } else {
                (x.op.compose(&y.op), x.order + y.order)
            };
            report.set_result(Value::Op(OpBlock { order, op }));
            Ok(report)
        }
        _ => Err(arity_error(verb, "two paired operators or two branch operators", items)),
    }
}

/// Validates a written symbol, recording violations in `report`.
fn symbol_value(report: &mut Report, opts: &Options, item: &Item, s: &SymbolBlock) -> Result<Option<SymbolElem>, CliError> {
    agree_space(opts, item, s.space)?;
    let violations = check_symbol_conditions(s.degree, &s.a, &s.b, s.space);
    if violations.is_empty() {
        return Ok(Some(SymbolElem::new(s.degree, s.a.clone(), s.b.clone(), s.space).expect("no violations")));
    }
    report.line(format!(
        "line {}: not a symbol of degree {} on {}",
        item.line, s.degree, s.space
    ));
    report.fail_with(violations);
    Ok(None)
}

fn symbol_block(s: &SymbolElem) -> Value {
    Value::Symbol(SymbolBlock {
        degree: s.degree(),
        space: s.space(),
        a: s.a().clone(),
        b: s.b().clone(),
    })
}

fn symbol(opts: &Options, items: &[Item]) -> Outcome {
    match items {
        [item @ Item {
            value: Value::Paired(block),
            ..
        }] => {
            let space = require_space(Verb::Symbol, opts)?;
            let degree = opts.degree.or(opts.order).unwrap_or(block.order);
            let mut report = Report::new(Verb::Symbol, Some(space));
            match check_admissible(&block.d1, &block.d2, space, degree) {
                Err(Error::OrderExceeded { found, declared }) => {
                    report.line(format!("operator has order {found}, so it has no symbol in degree {declared}"));
                    report.verdict = Verdict::Fail;
                }
                Err(e) => return Err(CliError::at(item, e)),
                Ok(r) if !r.is_admissible() => {
                    report.line(format!("line {}: not admissible on {space} at order {degree}", item.line));
                    report.fail_with(r.violations);
                }
                Ok(_) => {
                    let op = PairedOp::new(block.d1.clone(), block.d2.clone(), space, degree).expect("admissible");
                    report.set_result(symbol_block(&SymbolElem::of_pair(&op)));
                }
            }
            Ok(report)
        }
        [item @ Item {
            value: Value::Symbol(s),
            ..
        }] => {
            let mut report = Report::new(Verb::Symbol, Some(s.space));
            if let Some(sym) = symbol_value(&mut report, opts, item, s)? {
                report.line(format!("valid symbol of degree {} on {}", s.degree, s.space));
                report.set_result(symbol_block(&sym));
            }
            Ok(report)
        }
        _ => Err(arity_error(Verb::Symbol, "one paired operator or one symbol", items)),
    }
}

fn bracket(opts: &Options, items: &[Item]) -> Outcome {
    match items {
        [a @ Item {
            value: Value::Symbol(x),
            ..
        }, b @ Item {
            value: Value::Symbol(y),
            ..
        }] => {
            let mut report = Report::new(Verb::Bracket, Some(x.space));
            agree_space(opts, b, x.space)?;
            let lhs = symbol_value(&mut report, opts, a, x)?;
            let rhs = symbol_value(&mut report, opts, b, y)?;
            if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
                report.set_result(symbol_block(&lhs.bracket(&rhs)?));
            }
            Ok(report)
        }
        [a @ Item {
            value: Value::Paired(x),
            ..
        }, b @ Item {
            value: Value::Paired(y),
            ..
        }] => {
            let space = require_space(Verb::Bracket, opts)?;
            let mut report = Report::new(Verb::Bracket, Some(space));
            let lhs = paired(&mut report, a, x, space, "first operator");
            let rhs = paired(&mut report, b, y, space, "second operator");
            if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
                report.set_result(symbol_block(&bracket_via_commutator(&lhs, &rhs)?));
            }
            Ok(report)
        }
        _ => Err(arity_error(Verb::Bracket, "two symbols or two paired operators", items)),
    }
}

fn conditions(opts: &Options) -> Outcome {
    let space = require_space(Verb::Conditions, opts)?;
    let set = match (opts.degree, opts.order) {
        (Some(d), _) => symbol_conditions::<Rational>(space, d),
        (None, Some(k)) => generate_conditions::<Rational>(space, k),
        (None, None) => return Err(usage("conditions requires --order <k> or --degree <k>")),
    };
    let mut report = Report::new(Verb::Conditions, Some(space));
    let lines = set.renderings();
    if lines.is_empty() {
        report.line("no conditions");
    }
    for l in &lines {
        report.line(l.clone());
    }
    report.extra.insert("conditions".into(), json!(lines));
    report.extra.insert("rank".into(), json!(set.rank()));
    Ok(report)
}

fn profile(opts: &Options, space: SpaceSpec) -> Poly {
    opts.profile.clone().unwrap_or_else(|| space.default_profile())
}

fn extend(opts: &Options, items: &[Item]) -> Outcome {
    let [item @ Item {
        value: Value::Glued(u),
        ..
    }] = items
    else {
        return Err(arity_error(Verb::Extend, "one glued function", items));
    };
    let space = agree_space(opts, item, u.space())?;
    let plane = u.extend_to_plane(&profile(opts, space)).map_err(|e| CliError::at(item, e))?;
    let mut report = Report::new(Verb::Extend, Some(space));
    report.set_result(Value::Plane(plane));
    Ok(report)
}

fn restrict(opts: &Options, items: &[Item]) -> Outcome {
    let [item @ Item {
        value: Value::Plane(p),
        ..
    }] = items
    else {
        return Err(arity_error(Verb::Restrict, "one plane polynomial", items));
    };
    let space = require_space(Verb::Restrict, opts)?;
    let u = GluedFunction::restrict(p, &profile(opts, space), space).map_err(|e| CliError::at(item, e))?;
    let mut report = Report::new(Verb::Restrict, Some(space));
    report.set_result(Value::Glued(u));
    Ok(report)
}

fn witness(opts: &Options, items: &[Item]) -> Outcome {
    let [Item {
        value: Value::Char(c1),
        ..
    }, Item {
        value: Value::Char(c2),
        ..
    }] = items
    else {
        return Err(arity_error(Verb::Witness, "two characters", items));
    };
    let space = require_space(Verb::Witness, opts)?;
    let mut report = Report::new(Verb::Witness, Some(space));
    match separating_witness(c1, c2, space, opts.max_degree) {
        Some(u) => {
            report.line(format!("{c1} -> {}", c1.eval(&u)));
            report.line(format!("{c2} -> {}", c2.eval(&u)));
            report.set_result(Value::Glued(u));
        }
        None => {
            report.line(format!(
                "no witness up to degree {}: both characters are the same point of {space}",
                opts.max_degree
            ));
            report.verdict = Verdict::Fail;
        }
    }
    Ok(report)
}

fn nullity(opts: &Options) -> Outcome {
    let space = require_space(Verb::Nullity, opts)?;
    let result = nullity_identity_check::<Rational>(space)?;
    let mut report = Report::new(Verb::Nullity, Some(space));
    for c in &result.checks {
        report.line(format!("{} {}: {}", c.status, c.name, c.detail));
    }
    report.verdict = Verdict::from_bool(result.passed());
    report.extra.insert(
        "checks".into(),
        json!(result
            .checks
            .iter()
            .map(|c| json!({
                "name": c.name,
                "status": c.status.to_string(),
                "detail": c.detail,
            }))
            .collect::<Vec<_>>()),
    );
    let unverified = result.checks.iter().filter(|c| c.status == IdentityStatus::Unverified).count();
    report.extra.insert("unverified".into(), json!(unverified));
    Ok(report)
}
