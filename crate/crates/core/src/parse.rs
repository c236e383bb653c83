//! Text front end: cycle notation, group specifications and subset lists.
//!
//! Group specifications:
//!
//! ```text
//! spec    := term ('x' term)*              products are left-associative
//! term    := 'Z' n | 'S' n | 'D' n | 'Q' n
//!          | 'perm' '(' degree ')' ':' perm (',' perm)*
//!          | 'table:' path                 path runs to the end of input
//! perm    := 'e' | cycle+
//! cycle   := '(' point* ')'
//! ```
//!
//! Cycles in a product compose right to left, so `(1 2)(2 3)` applies
//! `(2 3)` first. Whitespace is allowed between tokens.

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::error::Error;
use crate::group::{FiniteGroup, Magma};
use crate::named::{direct_product, make_named, permutation_group, Family, MAX_DEGREE};
use crate::perm::Permutation;
use crate::subset::GSubset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Syntax { expected: String, found: String },
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {point} repeats within one cycle")]
    RepeatedPointInCycle { point: usize },
    #[error("unknown element {label:?}")]
    UnknownLabel { label: String },
    #[error("subset specification is empty")]
    EmptySubsetSpec,
    #[error("{0}")]
    Build(Error),
}

/// A parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(position: usize, kind: ParseErrorKind) -> Self {
        ParseError { position, kind }
    }
}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

/// One permutation written as a product of cycles (one-based points). An
/// empty list is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleNotation {
    pub cycles: Vec<Vec<usize>>,
}

impl CycleNotation {
    /// Product of the cycles, rightmost applied first.
    pub fn to_permutation(&self, degree: usize) -> Permutation {
        self.cycles
            .iter()
            .map(|c| Permutation::cycle(degree, c))
            .fold(Permutation::identity(degree), |acc, c| acc.compose(&c))
    }
}

impl fmt::Display for CycleNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("e");
        }
        for cycle in &self.cycles {
            let points: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", points.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Named { family: Family, parameter: usize },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Perm { degree: usize, generators: Vec<CycleNotation> },
    Table(PathBuf),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, Error> {
        match self {
            GroupSpec::Named { family, parameter } => make_named(*family, *parameter),
            GroupSpec::Product(a, b) => direct_product(&a.build()?, &b.build()?),
            GroupSpec::Perm { degree, generators } => {
                let perms: Vec<Permutation> = generators.iter().map(|g| g.to_permutation(*degree)).collect();
                permutation_group(*degree, &perms)
            }
            GroupSpec::Table(path) => FiniteGroup::load_json(path),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Named { family, parameter } => {
                let letter = match family {
                    Family::Cyclic => "Z",
                    Family::Symmetric => "S",
                    Family::Dihedral => "D",
                    Family::Quaternion => "Q",
                };
                write!(f, "{letter}{parameter}")
            }
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
            GroupSpec::Perm { degree, generators } => {
                let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                write!(f, "perm({degree}): {}", gens.join(", "))
            }
            GroupSpec::Table(path) => write!(f, "table:{}", path.display()),
        }
    }
}

/// Single-character lookahead over the input.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.text.len()
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".into(),
        }
    }

    fn syntax(&self, expected: &str) -> ParseError {
        ParseError::new(self.pos, ParseErrorKind::Syntax { expected: expected.into(), found: self.found() })
    }

    fn expect(&mut self, c: char) -> ParseResult<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(&format!("{c:?}")))
        }
    }

    fn eat_keyword(&mut self, word: &str) -> bool {
        if self.text[self.pos..].starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> ParseResult<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.syntax("a number"));
        }
        self.text[start..self.pos].parse().map_err(|_| {
            ParseError::new(
                start,
                ParseErrorKind::Syntax { expected: "a number that fits in memory".into(), found: self.text[start..self.pos].into() },
            )
        })
    }

    fn finish(&mut self) -> ParseResult<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax("end of input"))
        }
    }
}

/// Parses one permutation: `e`, `()`, or a product of cycles.
fn cycle_notation(cur: &mut Cursor, degree: usize) -> ParseResult<CycleNotation> {
    cur.skip_ws();
    if cur.peek() == Some('e') {
        cur.bump();
        return Ok(CycleNotation { cycles: Vec::new() });
    }
    if cur.peek() != Some('(') {
        return Err(cur.syntax("'(' or 'e'"));
    }
    let mut cycles = Vec::new();
    while cur.peek() == Some('(') {
        cur.bump();
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            cur.skip_ws();
            if cur.peek() == Some(')') {
                cur.bump();
                break;
            }
            let start = cur.pos;
            if !cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(cur.syntax("a point or ')'"));
            }
            let point = cur.number()?;
            if point == 0 || point > degree {
                return Err(ParseError::new(start, ParseErrorKind::PointOutOfRange { point, degree }));
            }
            if cycle.contains(&point) {
                return Err(ParseError::new(start, ParseErrorKind::RepeatedPointInCycle { point }));
            }
            cycle.push(point);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        cur.skip_ws();
    }
    Ok(CycleNotation { cycles })
}

fn check_degree(degree: usize, position: usize) -> ParseResult<()> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(ParseError::new(
            position,
            ParseErrorKind::Build(Error::UnsupportedParameter {
                family: "permutation degree".into(),
                parameter: degree.to_string(),
            }),
        ));
    }
    Ok(())
}

/// Parses cycle notation into an element of `S_degree`, `degree` in `1..=6`.
pub fn parse_permutation(text: &str, degree: usize) -> ParseResult<Permutation> {
    check_degree(degree, 0)?;
    let mut cur = Cursor::new(text);
    let notation = cycle_notation(&mut cur, degree)?;
    cur.finish()?;
    Ok(notation.to_permutation(degree))
}

fn term(cur: &mut Cursor) -> ParseResult<GroupSpec> {
    cur.skip_ws();
    if cur.eat_keyword("table:") {
        let path = cur.text[cur.pos..].trim();
        if path.is_empty() {
            return Err(cur.syntax("a file path"));
        }
        cur.pos = cur.text.len();
        return Ok(GroupSpec::Table(PathBuf::from(path)));
    }
    if cur.eat_keyword("perm") {
        cur.expect('(')?;
        let degree_pos = cur.pos;
        let degree = cur.number()?;
        check_degree(degree, degree_pos)?;
        cur.expect(')')?;
        cur.expect(':')?;
        let mut generators = vec![cycle_notation(cur, degree)?];
        loop {
            cur.skip_ws();
            if cur.peek() != Some(',') {
                break;
            }
            cur.bump();
            generators.push(cycle_notation(cur, degree)?);
        }
        return Ok(GroupSpec::Perm { degree, generators });
    }
    let family = match cur.peek() {
        Some('Z') => Family::Cyclic,
        Some('S') => Family::Symmetric,
        Some('D') => Family::Dihedral,
        Some('Q') => Family::Quaternion,
        _ => return Err(cur.syntax("a group (Z<n>, S<n>, D<n>, Q8, perm(<d>): ..., table:<path>)")),
    };
    cur.bump();
    if !cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        return Err(cur.syntax("a number"));
    }
    let parameter = cur.number()?;
    Ok(GroupSpec::Named { family, parameter })
}

/// Parses a group specification without building it.
pub fn parse_group_ast(text: &str) -> ParseResult<GroupSpec> {
    let mut cur = Cursor::new(text);
    let mut spec = term(&mut cur)?;
    loop {
        cur.skip_ws();
        if cur.peek() != Some('x') {
            break;
        }
        cur.bump();
        let rhs = term(&mut cur)?;
        spec = GroupSpec::Product(Box::new(spec), Box::new(rhs));
    }
    cur.finish()?;
    Ok(spec)
}

/// Parses and builds a group. Construction errors are reported at
/// position 0 since they concern the whole specification.
pub fn parse_group_spec(text: &str) -> ParseResult<FiniteGroup> {
    let spec = parse_group_ast(text)?;
    spec.build().map_err(|e| ParseError::new(0, ParseErrorKind::Build(e)))
}

/// Splits on commas outside parentheses, returning trimmed pieces with the
/// offset of each.
fn split_top_level(text: &str) -> Vec<(usize, &str)> {
    let mut pieces = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                pieces.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push((start, &text[start..]));
    pieces
        .into_iter()
        .map(|(offset, piece)| {
            let lead = piece.len() - piece.trim_start().len();
            (offset + lead, piece.trim())
        })
        .collect()
}

/// Parses a comma-separated list of element labels. Labels match exactly;
/// permutation groups also accept any cycle notation for an element.
pub fn parse_subset_spec(text: &str, owner: &(impl Magma + ?Sized)) -> ParseResult<GSubset> {
    if text.trim().is_empty() {
        return Err(ParseError::new(0, ParseErrorKind::EmptySubsetSpec));
    }
    let mut subset = GSubset::empty(owner);
    for (offset, token) in split_top_level(text) {
        if token.is_empty() {
            return Err(ParseError::new(
                offset,
                ParseErrorKind::Syntax { expected: "an element label".into(), found: "','".into() },
            ));
        }
        let index = owner
            .lookup(token)
            .ok_or_else(|| ParseError::new(offset, ParseErrorKind::UnknownLabel { label: token.into() }))?;
        subset.insert(index);
    }
    Ok(subset)
}

/// Parses a single element token.
pub fn parse_element(text: &str, owner: &(impl Magma + ?Sized)) -> ParseResult<usize> {
    let token = text.trim();
    if token.is_empty() {
        return Err(ParseError::new(0, ParseErrorKind::Syntax { expected: "an element label".into(), found: "end of input".into() }));
    }
    owner
        .lookup(token)
        .ok_or_else(|| ParseError::new(text.len() - text.trim_start().len(), ParseErrorKind::UnknownLabel { label: token.into() }))
}
