//! Line-oriented text format for polynomials, glued functions, operators,
//! symbols and characters.
//!
//! ```text
//! # comment
//! 3/2*x^2 - x + 1
//! pair m=1: x | y^2 + y
//! plane x*y + 2*y - 1
//! symbol deg=1 m=1: x^2 | y^2
//! char branch=1 at=-2
//! branch x
//! op order=2
//! coeff 2: x
//! coeff 1: -1
//! branch y
//! op order=2
//! coeff 2: y
//! ```

use std::collections::BTreeMap;
use std::fmt;

use kmalg::{BranchOp, Character, CharacterSite, GluedFunction, Poly, Poly2, Rational, SpaceSpec};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A syntax or validation error with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DslError {
    pub source: Option<String>,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl DslError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            source: None,
            line,
            column,
            message: message.into(),
        }
    }

    pub fn in_source(mut self, name: &str) -> Self {
        self.source = Some(name.to_string());
        self
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(src) = &self.source {
            write!(f, "{src}:")?;
        }
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for DslError {}

/// A branch operator with the order declared in its block header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpBlock {
    pub order: usize,
    pub op: BranchOp,
}

impl OpBlock {
    pub fn to_dsl(&self, var: char) -> String {
        self.op.to_dsl(self.order, var)
    }
}

/// Two branch operators labeled `branch x` / `branch y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedBlock {
    pub order: usize,
    pub d1: BranchOp,
    pub d2: BranchOp,
}

impl PairedBlock {
    pub fn to_dsl(&self) -> String {
        format!(
            "branch x\n{}branch y\n{}",
            self.d1.to_dsl(self.order, 'x'),
            self.d2.to_dsl(self.order, 'y')
        )
    }
}

/// A symbol as written; validity is checked by the command that uses it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolBlock {
    pub degree: usize,
    pub space: SpaceSpec,
    pub a: Poly,
    pub b: Poly,
}

impl SymbolBlock {
    pub fn to_dsl(&self) -> String {
        format!(
            "symbol deg={} m={}: {} | {}",
            self.degree,
            self.space.contact_order(),
            self.a.display_in('x'),
            self.b.display_in('y')
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Poly(Poly),
    Plane(Poly2),
    Glued(GluedFunction),
    Op(OpBlock),
    Paired(PairedBlock),
    Symbol(SymbolBlock),
    Char(Character),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "polynomial",
            Value::Plane(_) => "plane polynomial",
            Value::Glued(_) => "glued function",
            Value::Op(_) => "operator",
            Value::Paired(_) => "paired operator",
            Value::Symbol(_) => "symbol",
            Value::Char(_) => "character",
        }
    }

    /// Text that [`parse_dsl`] reads back to an equal value.
    pub fn to_dsl(&self) -> String {
        match self {
            Value::Poly(p) => format!("{}\n", p.display_in('x')),
            Value::Plane(p) => format!("plane {p}\n"),
            Value::Glued(u) => format!("{}\n", u.to_dsl()),
            Value::Op(b) => b.to_dsl('x'),
            Value::Paired(b) => b.to_dsl(),
            Value::Symbol(s) => format!("{}\n", s.to_dsl()),
            Value::Char(c) => format!("{}\n", c.to_dsl()),
        }
    }
}

/// A parsed value and the line it starts on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub value: Value,
    pub line: usize,
}

/// Parses every value in `source`, in order.
pub fn parse_dsl(source: &str) -> Result<Vec<Item>, DslError> {
    let lines: Vec<(usize, &str)> = source
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let mut items = Vec::new();
    let mut pending_x: Option<(usize, OpBlock)> = None;
    let mut i = 0;
    while i < lines.len() {
        let (ln, text) = lines[i];
        let start = text.len() - text.trim_start().len();
        let body = text.trim();
        let col = start + 1;
        let (word, rest) = split_word(body);
        let rest_col = col + (body.len() - rest.len());
        i += 1;
        match word {
            "branch" => {
                let label = rest.trim();
                let (hdr_ln, hdr) = lines.get(i).copied().ok_or_else(|| {
                    DslError::new(ln, col, "`branch` must be followed by an `op` block")
                })?;
                i += 1;
                let block = parse_op_block(hdr_ln, hdr, &lines, &mut i)?;
                match (label, pending_x.take()) {
                    ("x", None) => pending_x = Some((ln, block)),
                    ("y", Some((x_ln, x))) => items.push(Item {
                        value: Value::Paired(PairedBlock {
                            order: x.order.max(block.order),
                            d1: x.op,
                            d2: block.op,
                        }),
                        line: x_ln,
                    }),
                    ("x", Some((x_ln, _))) => {
                        return Err(DslError::new(
                            ln,
                            col,
                            format!("`branch x` at line {x_ln} has no matching `branch y`"),
                        ))
                    }
                    ("y", None) => return Err(DslError::new(ln, col, "`branch y` without a preceding `branch x`")),
                    _ => return Err(DslError::new(ln, rest_col, format!("expected `x` or `y`, found `{label}`"))),
                }
                continue;
            }
            _ if pending_x.is_some() => {
                let (x_ln, _) = pending_x.take().expect("checked");
                return Err(DslError::new(
                    ln,
                    col,
                    format!("`branch x` at line {x_ln} has no matching `branch y`"),
                ));
            }
            _ => {}
        }
        let value = match word {
            "op" => Value::Op(parse_op_block(ln, text, &lines, &mut i)?),
            "coeff" => return Err(DslError::new(ln, col, "`coeff` line outside an `op` block")),
            "pair" => parse_pair(ln, col, rest_col, rest)?,
            "symbol" => parse_symbol(ln, rest_col, rest)?,
            "char" => parse_char(ln, rest_col, rest)?,
            "plane" => Value::Plane(parse_plane(ln, rest_col, rest)?),
            _ => Value::Poly(parse_poly(ln, col, body)?),
        };
        items.push(Item { value, line: ln });
    }
    if let Some((x_ln, _)) = pending_x {
        return Err(DslError::new(x_ln, 1, "`branch x` has no matching `branch y`"));
    }
    Ok(items)
}

/// Parses a single polynomial in `x` (or `y`).
pub fn parse_poly_text(text: &str) -> Result<Poly, DslError> {
    parse_poly(1, 1, text)
}

fn split_word(s: &str) -> (&str, &str) {
    let end = s
        .find(|c: char| !c.is_ascii_alphabetic())
        .unwrap_or(s.len());
    (&s[..end], &s[end..])
}

fn parse_op_block(ln: usize, text: &str, lines: &[(usize, &str)], i: &mut usize) -> Result<OpBlock, DslError> {
    let col = text.len() - text.trim_start().len() + 1;
    let body = text.trim();
    let (word, rest) = split_word(body);
    if word != "op" {
        return Err(DslError::new(ln, col, format!("expected `op order=<k>`, found `{body}`")));
    }
    let rest_col = col + (body.len() - rest.len());
    let fields = parse_fields(ln, rest_col, rest, &["order"])?;
    let order = fields["order"].as_usize()?;
    let mut coeffs: BTreeMap<usize, Poly> = BTreeMap::new();
    while let Some(&(cln, ctext)) = lines.get(*i) {
        let ccol = ctext.len() - ctext.trim_start().len() + 1;
        let cbody = ctext.trim();
        let (word, rest) = split_word(cbody);
        if word != "coeff" {
            break;
        }
        *i += 1;
        let rest_col = ccol + (cbody.len() - rest.len());
        let (idx_text, poly_text) = rest
            .split_once(':')
            .ok_or_else(|| DslError::new(cln, rest_col, "expected `coeff <i>: <poly>`"))?;
        let idx_col = rest_col + (idx_text.len() - idx_text.trim_start().len());
        let index: usize = idx_text
            .trim()
            .parse()
            .map_err(|_| DslError::new(cln, idx_col, format!("invalid coefficient index `{}`", idx_text.trim())))?;
        if index > order {
            return Err(DslError::new(
                cln,
                idx_col,
                format!("coefficient index {index} exceeds the declared order {order}"),
            ));
        }
        let poly_col = rest_col + idx_text.len() + 1;
        let p = parse_poly(cln, poly_col, poly_text)?;
        if coeffs.insert(index, p).is_some() {
            return Err(DslError::new(cln, idx_col, format!("coefficient {index} given twice")));
        }
    }
    let op = BranchOp::from_coeffs((0..=order).map(|s| coeffs.remove(&s).unwrap_or_else(Poly::zero)).collect());
    Ok(OpBlock { order, op })
}

struct Field<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

impl Field<'_> {
    fn as_usize(&self) -> Result<usize, DslError> {
        self.text
            .parse()
            .map_err(|_| DslError::new(self.line, self.column, format!("expected a nonnegative integer, found `{}`", self.text)))
    }
}

/// `key=value` pairs separated by whitespace; exactly the given keys.
fn parse_fields<'a>(ln: usize, col: usize, text: &'a str, keys: &[&str]) -> Result<BTreeMap<String, Field<'a>>, DslError> {
    let mut out = BTreeMap::new();
    let mut offset = 0;
    for token in text.split_whitespace() {
        let pos = offset + text[offset..].find(token).expect("token from split");
        offset = pos + token.len();
        let tcol = col + pos;
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| DslError::new(ln, tcol, format!("expected `key=value`, found `{token}`")))?;
        if !keys.contains(&key) {
            return Err(DslError::new(ln, tcol, format!("unknown field `{key}`")));
        }
        let field = Field {
            line: ln,
            column: tcol + key.len() + 1,
            text: value,
        };
        if out.insert(key.to_string(), field).is_some() {
            return Err(DslError::new(ln, tcol, format!("field `{key}` given twice")));
        }
    }
    if let Some(missing) = keys.iter().find(|k| !out.contains_key(**k)) {
        return Err(DslError::new(ln, col, format!("missing field `{missing}=`")));
    }
    Ok(out)
}

/// Splits `<fields>: <p> | <q>` and parses both polynomials.
fn header_and_branches(ln: usize, col: usize, rest: &str) -> Result<(&str, Poly, Poly), DslError> {
    let (header, body) = rest
        .split_once(':')
        .ok_or_else(|| DslError::new(ln, col, "expected `:` after the header"))?;
    let body_col = col + header.len() + 1;
    let (left, right) = body
        .split_once('|')
        .ok_or_else(|| DslError::new(ln, body_col, "expected `<poly> | <poly>`"))?;
    let f = parse_poly(ln, body_col, left)?;
    let g = parse_poly(ln, body_col + left.len() + 1, right)?;
    Ok((header, f, g))
}

fn parse_pair(ln: usize, keyword_col: usize, col: usize, rest: &str) -> Result<Value, DslError> {
    let (header, f, g) = header_and_branches(ln, col, rest)?;
    let fields = parse_fields(ln, col, header, &["m"])?;
    let space = SpaceSpec::new(fields["m"].as_usize()?);
    GluedFunction::new(f, g, space)
        .map(Value::Glued)
        .map_err(|e| DslError::new(ln, keyword_col, e.to_string()))
}

fn parse_symbol(ln: usize, col: usize, rest: &str) -> Result<Value, DslError> {
    let (header, a, b) = header_and_branches(ln, col, rest)?;
    let fields = parse_fields(ln, col, header, &["deg", "m"])?;
    Ok(Value::Symbol(SymbolBlock {
        degree: fields["deg"].as_usize()?,
        space: SpaceSpec::new(fields["m"].as_usize()?),
        a,
        b,
    }))
}

fn parse_char(ln: usize, col: usize, rest: &str) -> Result<Value, DslError> {
    let fields = parse_fields(ln, col, rest, &["branch", "at"])?;
    let at = &fields["at"];
    let t = parse_rational_text(at.text).ok_or_else(|| DslError::new(ln, at.column, format!("invalid rational `{}`", at.text)))?;
    let branch = &fields["branch"];
    let site = match branch.text {
        "1" => CharacterSite::First,
        "2" => CharacterSite::Second,
        "sing" => CharacterSite::Singular,
        other => {
            return Err(DslError::new(
                ln,
                branch.column,
                format!("expected `1`, `2` or `sing`, found `{other}`"),
            ))
        }
    };
    if site == CharacterSite::Singular && !t.is_zero() {
        return Err(DslError::new(ln, at.column, "the singular point sits at 0"));
    }
    Ok(Value::Char(Character::new(site, t)))
}

fn parse_rational_text(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    (d != BigInt::from(0)).then(|| Rational::new(n, d))
}

/// Terms of a polynomial in at most the variables `x` and `y`, keyed by
/// `(x power, y power)`.
fn parse_terms(ln: usize, col: usize, text: &str) -> Result<BTreeMap<(usize, usize), Rational>, DslError> {
    let mut lexer = Lexer {
        chars: text.char_indices().peekable(),
        ln,
        col,
        end: text.len(),
    };
    let mut terms: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    let mut first = true;
    loop {
        lexer.skip_ws();
        let Some(&(pos, c)) = lexer.chars.peek() else {
            if first {
                return Err(lexer.error(text.len(), "expected a polynomial"));
            }
            break;
        };
        let negative = match c {
            '+' | '-' => {
                lexer.chars.next();
                c == '-'
            }
            _ if first => false,
            _ => return Err(lexer.error(pos, format!("expected `+` or `-`, found `{c}`"))),
        };
        let (coeff, powers) = lexer.term()?;
        let coeff = if negative { -coeff } else { coeff };
        let entry = terms.entry(powers).or_insert_with(Rational::zero);
        *entry = entry.clone() + coeff;
        first = false;
    }
    Ok(terms)
}

fn parse_poly(ln: usize, col: usize, text: &str) -> Result<Poly, DslError> {
    let terms = parse_terms(ln, col, text)?;
    let uses_x = terms.keys().any(|&(i, _)| i > 0);
    let uses_y = terms.keys().any(|&(_, j)| j > 0);
    if uses_x && uses_y {
        return Err(DslError::new(ln, col, "a branch polynomial uses a single variable, found both `x` and `y`"));
    }
    let degree = terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for ((i, j), c) in terms {
        coeffs[i + j] = c;
    }
    Ok(Poly::from_coeffs(coeffs))
}

fn parse_plane(ln: usize, col: usize, text: &str) -> Result<Poly2, DslError> {
    let terms = parse_terms(ln, col, text)?;
    let rows = terms.keys().map(|&(i, _)| i + 1).max().unwrap_or(0);
    let cols = terms.keys().map(|&(_, j)| j + 1).max().unwrap_or(0);
    let mut grid = vec![vec![Rational::zero(); cols]; rows];
    for ((i, j), c) in terms {
        grid[i][j] = c;
    }
    Ok(Poly2::from_grid(grid))
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    ln: usize,
    col: usize,
    end: usize,
}

impl Lexer<'_> {
    fn error(&self, pos: usize, message: impl Into<String>) -> DslError {
        DslError::new(self.ln, self.col + pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn pos(&mut self) -> usize {
        self.chars.peek().map_or(self.end, |&(p, _)| p)
    }

    fn integer(&mut self) -> Result<BigInt, DslError> {
        self.skip_ws();
        let start = self.pos();
        let mut digits = String::new();
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            digits.push(c);
        }
        if digits.is_empty() {
            return Err(self.error(start, "expected an integer"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<usize, DslError> {
        self.skip_ws();
        if self.chars.next_if(|&(_, c)| c == '^').is_none() {
            return Ok(1);
        }
        let start = self.pos();
        let n = self.integer()?;
        usize::try_from(n).map_err(|_| self.error(start, "exponent out of range"))
    }

    /// `rational ('*'? var ('^' INT)?)*` or `var ('^' INT)? ...`.
    fn term(&mut self) -> Result<(Rational, (usize, usize)), DslError> {
        self.skip_ws();
        let start = self.pos();
        let mut coeff = Rational::one();
        let has_number = self.chars.peek().is_some_and(|(_, c)| c.is_ascii_digit());
        if self.chars.peek().is_some_and(|(_, c)| c.is_ascii_digit()) {
            let num = self.integer()?;
            self.skip_ws();
            let den = if self.chars.next_if(|&(_, c)| c == '/').is_some() {
                let at = self.pos();
                let d = self.integer()?;
                if d == BigInt::from(0) {
                    return Err(self.error(at, "zero denominator"));
                }
                d
            } else {
                BigInt::from(1)
            };
            coeff = Rational::new(num, den);
        }
        let mut powers = (0, 0);
        let mut factors = 0;
        loop {
            self.skip_ws();
            let star_pos = self.pos();
            let star = self.chars.next_if(|&(_, c)| c == '*').is_some();
            self.skip_ws();
            let pos = self.pos();
            match self.chars.peek().map(|&(_, c)| c) {
                Some(v @ ('x' | 'y')) => {
                    self.chars.next();
                    let n = self.exponent()?;
                    if v == 'x' {
                        powers.0 += n;
                    } else {
                        powers.1 += n;
                    }
                    factors += 1;
                }
                Some(c) if star || (c.is_alphabetic()) => {
                    return Err(self.error(pos, format!("expected `x` or `y`, found `{c}`")));
                }
                None if star => return Err(self.error(star_pos, "dangling `*`")),
                _ => break,
            }
        }
        if factors == 0 && !has_number {
            return Err(self.error(start, "expected a term"));
        }
        Ok((coeff, powers))
    }
}
