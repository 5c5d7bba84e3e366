//! Linear conditions on the coefficient jets of an operator pair.
//!
//! A pair `(D1, D2)` with `D1 = sum a_s(x) d^s`, `D2 = sum b_s(y) d^s`
//! descends to the glued algebra iff `(D1 f)^(i)(0) = (D2 g)^(i)(0)` for all
//! glued `(f, g)` and all `i <= m`. Expanding by Leibniz,
//!
//! ```text
//! (D1 f)^(i)(0) = sum_s sum_{r <= i} C(i, r) a_s^(r)(0) f^(s + i - r)(0)
//! ```
//!
//! so the requirement is a linear system in the unknowns `a_s^(r)(0)`,
//! `b_s^(r)(0)` with `s <= k`, `r <= m`. It is instantiated on a spanning
//! family of glued functions and brought to reduced row-echelon form.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::diffop::linalg;
use crate::glued::SpaceSpec;
use crate::scalar::{binomial, Scalar};

/// Which branch a coefficient belongs to: `a` (first) or `b` (second).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    pub fn letter(self) -> char {
        match self {
            Branch::First => 'a',
            Branch::Second => 'b',
        }
    }
}

/// The jet value `a_s^(r)(0)` (or `b_s^(r)(0)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Unknown {
    pub branch: Branch,
    pub index: usize,
    pub derivative: usize,
}

impl Unknown {
    pub fn new(branch: Branch, index: usize, derivative: usize) -> Self {
        Self {
            branch,
            index,
            derivative,
        }
    }

    fn display_key(&self) -> (usize, usize, Branch) {
        (self.index, self.derivative, self.branch)
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.branch.letter(), self.index)?;
        match self.derivative {
            0 => {}
            r @ 1..=2 => f.write_str(&"'".repeat(r))?,
            r => write!(f, "^({r})")?,
        }
        f.write_str("(0)")
    }
}

/// Which coefficients the system constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    /// All coefficients `s = 0..=k` of an order-`k` pair.
    Operators,
    /// Only the top coefficient `s = k`: the conditions on a degree-`k` symbol.
    Symbol,
}

/// One reduced linear equation `sum c_u u = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<S> {
    terms: Vec<(Unknown, S)>,
}

impl<S: Scalar> Constraint<S> {
    pub fn terms(&self) -> &[(Unknown, S)] {
        &self.terms
    }

    /// `Some((a, b))` when the equation reads `a_s^(r)(0) = b_s^(r)(0)`.
    fn as_branch_equality(&self) -> Option<(Unknown, Unknown)> {
        let [(u, cu), (v, cv)] = self.terms.as_slice() else {
            return None;
        };
        let same_slot = u.index == v.index && u.derivative == v.derivative && u.branch != v.branch;
        if same_slot && (cu.clone() + cv.clone()).is_zero() {
            let (a, b) = if u.branch == Branch::First { (*u, *v) } else { (*v, *u) };
            Some((a, b))
        } else {
            None
        }
    }

    /// Human-readable form in jet notation, e.g. `a2'(0) + a1(0) = 0`.
    pub fn rendering(&self) -> String {
        if let Some((a, b)) = self.as_branch_equality() {
            return format!("{a} = {b}");
        }
        let mut s = String::new();
        for (i, (u, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i == 0, neg) {
                (true, true) => s.push('-'),
                (true, false) => {}
                (false, true) => s.push_str(" - "),
                (false, false) => s.push_str(" + "),
            }
            let mag = c.abs();
            if mag.is_one() {
                s.push_str(&u.to_string());
            } else {
                s.push_str(&format!("{mag}*{u}"));
            }
        }
        s.push_str(" = 0");
        s
    }

    /// Values of the two displayed sides under `lookup`.
    pub fn sides(&self, lookup: &impl Fn(Unknown) -> S) -> (S, S) {
        if let Some((a, b)) = self.as_branch_equality() {
            return (lookup(a), lookup(b));
        }
        let lhs = self
            .terms
            .iter()
            .fold(S::zero(), |acc, (u, c)| acc + c.clone() * lookup(*u));
        (lhs, S::zero())
    }
}

impl<S: Scalar> fmt::Display for Constraint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendering())
    }
}

/// A violated constraint with both sides evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation<S> {
    pub constraint: String,
    pub lhs: S,
    pub rhs: S,
}

/// A canonical (reduced, deduplicated) system of constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionSet<S> {
    space: SpaceSpec,
    order: usize,
    scope: Scope,
    unknowns: Vec<Unknown>,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

/// Column order: second branch before first, higher index and higher
/// derivative first. With this order a pivot on `b_s` absorbs each branch
/// equality, and the remaining rows read in the familiar `a_s'(0) + ...` form.
fn columns(space: SpaceSpec, indices: impl DoubleEndedIterator<Item = usize> + Clone) -> Vec<Unknown> {
    let m = space.contact_order();
    let mut cols = Vec::new();
    for branch in [Branch::Second, Branch::First] {
        for s in indices.clone().rev() {
            for r in (0..=m).rev() {
                cols.push(Unknown::new(branch, s, r));
            }
        }
    }
    cols
}

fn universe(space: SpaceSpec, order: usize, scope: Scope) -> Vec<Unknown> {
    match scope {
        Scope::Operators => columns(space, 0..=order),
        Scope::Symbol => columns(space, order..=order),
    }
}

/// An equation term referenced an unknown outside the system's universe.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {0} is not part of this system")]
pub struct OutOfUniverse(pub String);

impl<S: Scalar> ConditionSet<S> {
    /// Reduces the given equations (each `sum c_u u = 0`) over the universe of
    /// `(space, order, scope)`. Coefficients with index above `order` are
    /// identically zero and are dropped.
    pub fn from_equations(
        space: SpaceSpec,
        order: usize,
        scope: Scope,
        equations: &[Vec<(Unknown, S)>],
    ) -> Result<Self, OutOfUniverse> {
        let unknowns = universe(space, order, scope);
        let col = |u: &Unknown| unknowns.iter().position(|v| v == u);
        let mut rows = Vec::with_capacity(equations.len());
        for eq in equations {
            let mut row = vec![S::zero(); unknowns.len()];
            for (u, c) in eq {
                if u.index > order {
                    continue;
                }
                let j = col(u).ok_or_else(|| OutOfUniverse(u.to_string()))?;
                row[j] = row[j].clone() + c.clone();
            }
            rows.push(row);
        }
        Ok(Self::from_rows(space, order, scope, unknowns, rows))
    }

    fn from_rows(space: SpaceSpec, order: usize, scope: Scope, unknowns: Vec<Unknown>, rows: Vec<Vec<S>>) -> Self {
        let (rows, pivots) = linalg::rref(rows, unknowns.len());
        Self {
            space,
            order,
            scope,
            unknowns,
            rows,
            pivots,
        }
    }

    pub fn space(&self) -> SpaceSpec {
        self.space
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    /// Column ordering of the reduced rows.
    pub fn unknowns(&self) -> &[Unknown] {
        &self.unknowns
    }

    /// Reduced row-echelon rows (pivot entries equal to 1).
    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The constraints, in display order (by the pivot's index, then
    /// derivative, then branch).
    pub fn constraints(&self) -> Vec<Constraint<S>> {
        let mut indexed: Vec<(Unknown, Constraint<S>)> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| {
                let terms = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (self.unknowns[j], c.clone()))
                    .collect();
                (self.unknowns[p], Constraint { terms })
            })
            .collect();
        indexed.sort_by_key(|(p, _)| p.display_key());
        indexed.into_iter().map(|(_, c)| c).collect()
    }

    pub fn renderings(&self) -> Vec<String> {
        self.constraints().iter().map(Constraint::rendering).collect()
    }

    /// Every constraint whose two sides differ under `lookup`.
    pub fn evaluate(&self, lookup: &impl Fn(Unknown) -> S) -> Vec<Violation<S>> {
        self.constraints()
            .into_iter()
            .filter_map(|c| {
                let (lhs, rhs) = c.sides(lookup);
                (lhs != rhs).then(|| Violation {
                    constraint: c.rendering(),
                    lhs,
                    rhs,
                })
            })
            .collect()
    }

    /// A basis of the solution space, each vector indexed like [`Self::unknowns`].
    pub fn solution_basis(&self) -> Vec<Vec<S>> {
        linalg::nullspace(&self.rows, &self.pivots, self.unknowns.len())
    }

    /// Whether both systems cut out the same solution space.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.space == other.space && self.unknowns == other.unknowns && self.rows == other.rows
    }
}

/// Rows expressing `(D1 x^n)^(i)(0)` on branch `branch`, divided by `n!`:
/// the coefficient of `(branch, s, r)` is `C(i, r)` when `s + i - r = n`.
fn family_row<S: Scalar>(unknowns: &[Unknown], branch: Branch, n: usize, i: usize, sign: &S, row: &mut [S]) {
    for (j, u) in unknowns.iter().enumerate() {
        if u.branch != branch || u.derivative > i {
            continue;
        }
        if u.index + i - u.derivative == n {
            row[j] = row[j].clone() + sign.clone() * binomial::<S>(i, u.derivative);
        }
    }
}

fn build_operator_conditions<S: Scalar>(space: SpaceSpec, k: usize) -> ConditionSet<S> {
    let m = space.contact_order();
    let unknowns = universe(space, k, Scope::Operators);
    let ncols = unknowns.len();
    let (plus, minus) = (S::one(), -S::one());
    let mut rows = Vec::new();
    for i in 0..=m {
        // branch-supported members (x^{m+1+j}, 0) and (0, y^{m+1+j})
        for j in 0..=k {
            let n = m + 1 + j;
            for branch in [Branch::First, Branch::Second] {
                let mut row = vec![S::zero(); ncols];
                family_row(&unknowns, branch, n, i, &plus, &mut row);
                rows.push(row);
            }
        }
        // diagonal members (x^n, y^n)
        for n in 0..=k + m {
            let mut row = vec![S::zero(); ncols];
            family_row(&unknowns, Branch::First, n, i, &plus, &mut row);
            family_row(&unknowns, Branch::Second, n, i, &minus, &mut row);
            rows.push(row);
        }
    }
    ConditionSet::from_rows(space, k, Scope::Operators, unknowns, rows)
}

/// Projection of the order-`k` system onto the top coefficients: lower
/// unknowns are ordered first and eliminated.
fn build_symbol_conditions<S: Scalar>(space: SpaceSpec, k: usize) -> ConditionSet<S> {
    let full = generate_conditions::<S>(space, k);
    let top = universe(space, k, Scope::Symbol);
    let lower: Vec<Unknown> = full.unknowns.iter().filter(|u| u.index < k).copied().collect();
    let order: Vec<Unknown> = lower.iter().chain(&top).copied().collect();
    let perm: Vec<usize> = order
        .iter()
        .map(|u| full.unknowns.iter().position(|v| v == u).expect("same universe"))
        .collect();
    let permuted: Vec<Vec<S>> = full
        .rows
        .iter()
        .map(|row| perm.iter().map(|&j| row[j].clone()).collect())
        .collect();
    let (reduced, pivots) = linalg::rref(permuted, order.len());
    let projected: Vec<Vec<S>> = reduced
        .into_iter()
        .zip(pivots)
        .filter(|(_, p)| *p >= lower.len())
        .map(|(row, _)| row[lower.len()..].to_vec())
        .collect();
    ConditionSet::from_rows(space, k, Scope::Symbol, top, projected)
}

type CacheKey = (TypeId, usize, usize, Scope);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached<S: Scalar>(space: SpaceSpec, k: usize, scope: Scope, build: impl FnOnce() -> ConditionSet<S>) -> Arc<ConditionSet<S>> {
    let key = (TypeId::of::<S>(), space.contact_order(), k, scope);
    if let Some(hit) = cache().lock().expect("condition cache poisoned").get(&key) {
        return Arc::clone(hit).downcast::<ConditionSet<S>>().expect("keyed by type");
    }
    // built outside the lock: symbol conditions recurse into operator conditions
    let built = Arc::new(build());
    cache()
        .lock()
        .expect("condition cache poisoned")
        .entry(key)
        .or_insert_with(|| built.clone() as Arc<dyn Any + Send + Sync>);
    built
}

/// The reduced system cutting out order-`k` admissible pairs on `space`.
pub fn generate_conditions<S: Scalar>(space: SpaceSpec, k: usize) -> Arc<ConditionSet<S>> {
    cached(space, k, Scope::Operators, || build_operator_conditions(space, k))
}

/// The conditions on the top coefficient pair of a degree-`k` symbol.
pub fn symbol_conditions<S: Scalar>(space: SpaceSpec, k: usize) -> Arc<ConditionSet<S>> {
    cached(space, k, Scope::Symbol, || build_symbol_conditions(space, k))
}

/// Error from [`parse_condition_line`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct ConditionSyntaxError {
    pub column: usize,
    pub message: String,
}

/// Parses a chain of linear equalities such as `a_2(0) = 0 = b_2(0)` or
/// `a'_2(0) + a_1(0) = 0` into equations `sum c_u u = 0` (one per `=`).
///
/// Unknowns may be written `a2'(0)`, `a'_2(0)`, `a_2'(0)` or `a2^(3)(0)`;
/// coefficients are integers or fractions, optionally followed by `*`.
pub fn parse_condition_line<S: Scalar>(line: &str) -> Result<Vec<Vec<(Unknown, S)>>, ConditionSyntaxError> {
    let mut parser = CondParser {
        chars: line.char_indices().peekable(),
        len: line.len(),
    };
    let mut sides: Vec<Vec<(Unknown, S)>> = vec![parser.side()?];
    loop {
        parser.skip_ws();
        match parser.chars.next() {
            None => break,
            Some((_, '=')) => sides.push(parser.side()?),
            Some((pos, c)) => {
                return Err(ConditionSyntaxError {
                    column: pos + 1,
                    message: format!("unexpected '{c}'"),
                })
            }
        }
    }
    if sides.len() < 2 {
        return Err(ConditionSyntaxError {
            column: line.len() + 1,
            message: "expected '='".into(),
        });
    }
    Ok(sides
        .windows(2)
        .map(|w| {
            let mut eq = w[0].clone();
            eq.extend(w[1].iter().map(|(u, c)| (*u, -c.clone())));
            eq
        })
        .collect())
}

struct CondParser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    len: usize,
}

impl CondParser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn pos(&mut self) -> usize {
        self.chars.peek().map_or(self.len, |(p, _)| *p) + 1
    }

    fn err<T>(&mut self, message: impl Into<String>) -> Result<T, ConditionSyntaxError> {
        Err(ConditionSyntaxError {
            column: self.pos(),
            message: message.into(),
        })
    }

    fn number(&mut self) -> Option<i64> {
        let mut s = String::new();
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            s.push(c);
        }
        s.parse().ok()
    }

    fn primes(&mut self) -> usize {
        let mut n = 0;
        while self.chars.next_if(|(_, c)| *c == '\'').is_some() {
            n += 1;
        }
        n
    }

    fn side<S: Scalar>(&mut self) -> Result<Vec<(Unknown, S)>, ConditionSyntaxError> {
        let mut terms = Vec::new();
        let mut sign = S::one();
        let mut first = true;
        loop {
            self.skip_ws();
            match self.chars.peek().map(|(_, c)| *c) {
                Some('-') => {
                    self.chars.next();
                    sign = -sign;
                    continue;
                }
                Some('+') if !first => {
                    self.chars.next();
                    continue;
                }
                _ => {}
            }
            let coeff = match self.chars.peek().map(|(_, c)| *c) {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.number().unwrap_or(0);
                    let den = if self.chars.next_if(|(_, c)| *c == '/').is_some() {
                        match self.number() {
                            Some(d) if d != 0 => d,
                            _ => return self.err("bad denominator"),
                        }
                    } else {
                        1
                    };
                    self.skip_ws();
                    self.chars.next_if(|(_, c)| *c == '*');
                    self.skip_ws();
                    Some(S::from_ratio(num, den))
                }
                _ => None,
            };
            let unknown = match self.chars.peek().map(|(_, c)| *c) {
                Some('a') | Some('b') => Some(self.unknown()?),
                _ => None,
            };
            match (coeff, unknown) {
                (Some(c), None) => {
                    if !c.is_zero() {
                        return self.err("constant terms other than 0 are not linear conditions");
                    }
                }
                (c, Some(u)) => terms.push((u, sign.clone() * c.unwrap_or_else(S::one))),
                (None, None) => return self.err("expected a term"),
            }
            first = false;
            sign = S::one();
            self.skip_ws();
            match self.chars.peek().map(|(_, c)| *c) {
                Some('+') | Some('-') => continue,
                _ => return Ok(terms),
            }
        }
    }

    fn unknown(&mut self) -> Result<Unknown, ConditionSyntaxError> {
        let branch = match self.chars.next() {
            Some((_, 'a')) => Branch::First,
            Some((_, 'b')) => Branch::Second,
            _ => return self.err("expected 'a' or 'b'"),
        };
        let mut derivative = self.primes();
        self.chars.next_if(|(_, c)| *c == '_');
        let Some(index) = self.number() else {
            return self.err("expected a coefficient index");
        };
        derivative += self.primes();
        if self.chars.next_if(|(_, c)| *c == '^').is_some() {
            if self.chars.next_if(|(_, c)| *c == '(').is_none() {
                return self.err("expected '(' after '^'");
            }
            let Some(r) = self.number() else {
                return self.err("expected a derivative order");
            };
            if self.chars.next_if(|(_, c)| *c == ')').is_none() {
                return self.err("expected ')'");
            }
            derivative += r as usize;
        }
        for expect in ['(', '0', ')'] {
            if self.chars.next_if(|(_, c)| *c == expect).is_none() {
                return self.err("expected '(0)'");
            }
        }
        Ok(Unknown::new(branch, index as usize, derivative))
    }
}
