//! Pattern parsing.
//!
//! Two entry points: [`parse_regex`] for plain regular expressions and
//! [`parse_rewb`] for patterns of the form `e0 (e) e1 \1 e2`, a regular
//! expression extended with a single capture group and a single
//! backreference to it.
//!
//! The grammar, lowest to highest precedence: alternation `|`,
//! concatenation, postfix quantifiers `*` `+` `?`, atoms.  Atoms are
//! literal bytes, `.`, character classes `[...]` and `[^...]` (with
//! ranges), non-capturing groups `(?:...)`, and, in rewb patterns only,
//! the capture `(...)` and its reference `\1`.  Patterns must be ASCII;
//! metacharacters are matched literally when escaped.

use std::fmt;

use crate::byteset::ByteSet;

/// Abstract syntax for a plain regular expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegexAst {
    /// Matches the empty string only.
    Empty,
    /// Matches one specific byte.
    Literal(u8),
    /// Matches any single byte of the alphabet (`.`).
    AnyByte,
    /// Matches one byte of `set`, or of the alphabet minus `set` when
    /// `negated`.  The set is non-empty unless `negated`.
    Class { set: ByteSet, negated: bool },
    /// Children in sequence; always two or more of them.
    Concat(Vec<RegexAst>),
    /// One of the children; always two or more of them.
    Alternation(Vec<RegexAst>),
    Star(Box<RegexAst>),
    Plus(Box<RegexAst>),
    Optional(Box<RegexAst>),
}

impl RegexAst {
    /// Number of AST nodes; the pattern-size parameter of the complexity
    /// bounds.
    pub fn node_count(&self) -> usize {
        match self {
            RegexAst::Empty
            | RegexAst::Literal(_)
            | RegexAst::AnyByte
            | RegexAst::Class { .. } => 1,
            RegexAst::Concat(children) | RegexAst::Alternation(children) => {
                1 + children.iter().map(RegexAst::node_count).sum::<usize>()
            }
            RegexAst::Star(child) | RegexAst::Plus(child) | RegexAst::Optional(child) => {
                1 + child.node_count()
            }
        }
    }

    /// The expression denoting the reversal of this expression's language.
    ///
    /// Structural: concatenations flip their child order, everything else
    /// is mapped recursively.  Applying it twice yields the original tree.
    pub fn reversed(&self) -> RegexAst {
        match self {
            RegexAst::Empty => RegexAst::Empty,
            RegexAst::Literal(b) => RegexAst::Literal(*b),
            RegexAst::AnyByte => RegexAst::AnyByte,
            RegexAst::Class { set, negated } => RegexAst::Class {
                set: *set,
                negated: *negated,
            },
            RegexAst::Concat(children) => {
                RegexAst::Concat(children.iter().rev().map(RegexAst::reversed).collect())
            }
            RegexAst::Alternation(children) => {
                RegexAst::Alternation(children.iter().map(RegexAst::reversed).collect())
            }
            RegexAst::Star(child) => RegexAst::Star(Box::new(child.reversed())),
            RegexAst::Plus(child) => RegexAst::Plus(Box::new(child.reversed())),
            RegexAst::Optional(child) => RegexAst::Optional(Box::new(child.reversed())),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            RegexAst::Alternation(_) => 0,
            RegexAst::Concat(_) => 1,
            RegexAst::Star(_) | RegexAst::Plus(_) | RegexAst::Optional(_) => 2,
            _ => 3,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "(?:")?;
            self.fmt_body(f)?;
            write!(f, ")")
        } else {
            self.fmt_body(f)
        }
    }

    fn fmt_body(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegexAst::Empty => write!(f, "(?:)"),
            RegexAst::Literal(b) => write_literal(f, *b),
            RegexAst::AnyByte => write!(f, "."),
            RegexAst::Class { set, negated } => {
                write!(f, "[")?;
                if *negated {
                    write!(f, "^")?;
                }
                let mut bytes = set.iter().peekable();
                while let Some(lo) = bytes.next() {
                    let mut hi = lo;
                    while bytes.peek() == Some(&(hi + 1)) {
                        hi = bytes.next().unwrap();
                    }
                    write_class_byte(f, lo)?;
                    if hi > lo {
                        if hi > lo + 1 {
                            write!(f, "-")?;
                        }
                        write_class_byte(f, hi)?;
                    }
                }
                write!(f, "]")
            }
            RegexAst::Concat(children) => {
                for child in children {
                    child.fmt_prec(f, 1)?;
                }
                Ok(())
            }
            RegexAst::Alternation(children) => {
                for (i, child) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    child.fmt_prec(f, 1)?;
                }
                Ok(())
            }
            RegexAst::Star(child) => {
                child.fmt_prec(f, 3)?;
                write!(f, "*")
            }
            RegexAst::Plus(child) => {
                child.fmt_prec(f, 3)?;
                write!(f, "+")
            }
            RegexAst::Optional(child) => {
                child.fmt_prec(f, 3)?;
                write!(f, "?")
            }
        }
    }
}

/// Prints the pattern syntax the parser accepts; reparsing yields an
/// expression with the same language.
impl fmt::Display for RegexAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

fn write_literal(f: &mut fmt::Formatter<'_>, b: u8) -> fmt::Result {
    match b {
        b'\\' | b'|' | b'*' | b'+' | b'?' | b'(' | b')' | b'[' | b']' | b'.' => {
            write!(f, "\\{}", b as char)
        }
        b'\n' => write!(f, "\\n"),
        b'\t' => write!(f, "\\t"),
        b'\r' => write!(f, "\\r"),
        _ => write!(f, "{}", b as char),
    }
}

fn write_class_byte(f: &mut fmt::Formatter<'_>, b: u8) -> fmt::Result {
    match b {
        b'\\' | b']' | b'^' | b'-' => write!(f, "\\{}", b as char),
        b'\n' => write!(f, "\\n"),
        b'\t' => write!(f, "\\t"),
        b'\r' => write!(f, "\\r"),
        _ => write!(f, "{}", b as char),
    }
}

/// A pattern of the form `e0 (e) e1 \1 e2`, split into its four regular
/// components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewbQuery {
    /// Before the capture.
    pub e0: RegexAst,
    /// Inside the capture.
    pub e: RegexAst,
    /// Between the capture and the reference.
    pub e1: RegexAst,
    /// After the reference.
    pub e2: RegexAst,
}

impl RewbQuery {
    pub fn new(e0: RegexAst, e: RegexAst, e1: RegexAst, e2: RegexAst) -> RewbQuery {
        RewbQuery { e0, e, e1, e2 }
    }

    /// Total AST node count over the four components.
    pub fn node_count(&self) -> usize {
        self.e0.node_count()
            + self.e.node_count()
            + self.e1.node_count()
            + self.e2.node_count()
    }

    /// Pattern text that reparses to this query.
    pub fn to_pattern(&self) -> String {
        let mut out = String::new();
        push_component(&mut out, &self.e0);
        out.push('(');
        out.push_str(&self.e.to_string());
        out.push(')');
        push_component(&mut out, &self.e1);
        out.push_str("\\1");
        push_component(&mut out, &self.e2);
        out
    }
}

/// Writes a component so that it concatenates correctly with its
/// neighbors: alternations get a group, the empty expression vanishes.
fn push_component(out: &mut String, ast: &RegexAst) {
    match ast {
        RegexAst::Empty => {}
        RegexAst::Alternation(_) => {
            out.push_str("(?:");
            out.push_str(&ast.to_string());
            out.push_str(")");
        }
        _ => out.push_str(&ast.to_string()),
    }
}

/// Parse failure at a byte offset of the pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 0-based byte offset of the offending token.
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Pattern ended inside a group or class.
    UnexpectedEnd,
    /// `)` with no open group.
    UnbalancedParen,
    /// Quantifier with nothing to repeat.
    DanglingQuantifier,
    /// `[]` denotes no byte; an empty class must be negated.
    EmptyClass,
    /// Class range with its endpoints out of order.
    InvalidClassRange,
    /// Escape of a byte that does not need or support escaping.
    InvalidEscape,
    /// `\` at the end of the pattern.
    TrailingEscape,
    /// `(?` followed by anything but `:`.
    UnsupportedGroup,
    /// Patterns are byte-oriented and must be ASCII.
    NonAscii,
    /// Capture group in a context where only plain regexes are allowed.
    CaptureNotAllowed,
    /// `\1` in a context where only plain regexes are allowed.
    ReferenceNotAllowed,
    /// The pattern is not of the form `e0 (e) e1 \1 e2`.
    Form(RewbFormError),
}

/// Why a pattern fails to decompose as `e0 (e) e1 \1 e2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewbFormError {
    MissingCapture,
    MultipleCaptures,
    MissingReference,
    MultipleReferences,
    ReferenceBeforeCapture,
    /// The capture sits under a quantifier, alternation, or group instead
    /// of directly under the top-level concatenation.
    CaptureNotTopLevel,
    /// Likewise for the reference.
    ReferenceNotTopLevel,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.kind)
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of pattern"),
            ParseErrorKind::UnbalancedParen => write!(f, "unbalanced parenthesis"),
            ParseErrorKind::DanglingQuantifier => {
                write!(f, "quantifier with nothing to repeat")
            }
            ParseErrorKind::EmptyClass => write!(f, "empty character class"),
            ParseErrorKind::InvalidClassRange => write!(f, "invalid class range"),
            ParseErrorKind::InvalidEscape => write!(f, "invalid escape"),
            ParseErrorKind::TrailingEscape => write!(f, "trailing backslash"),
            ParseErrorKind::UnsupportedGroup => {
                write!(f, "unsupported group syntax; use (?:...) for grouping")
            }
            ParseErrorKind::NonAscii => write!(f, "pattern must be ASCII"),
            ParseErrorKind::CaptureNotAllowed => {
                write!(f, "capture group not allowed here; use (?:...) for grouping")
            }
            ParseErrorKind::ReferenceNotAllowed => {
                write!(f, "backreference not allowed here")
            }
            ParseErrorKind::Form(e) => write!(f, "{}", e),
        }
    }
}

impl fmt::Display for RewbFormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            RewbFormError::MissingCapture => "pattern has no capture group",
            RewbFormError::MultipleCaptures => "pattern has more than one capture group",
            RewbFormError::MissingReference => "pattern has no backreference",
            RewbFormError::MultipleReferences => "pattern has more than one backreference",
            RewbFormError::ReferenceBeforeCapture => {
                "backreference appears before the capture group"
            }
            RewbFormError::CaptureNotTopLevel => {
                "capture group must appear at the top level of the pattern"
            }
            RewbFormError::ReferenceNotTopLevel => {
                "backreference must appear at the top level of the pattern"
            }
        };
        write!(f, "{}", msg)
    }
}

impl std::error::Error for ParseError {}

/// Parses a plain regular expression.  Capture groups and backreferences
/// are rejected; group with `(?:...)`.
pub fn parse_regex(pattern: &str) -> Result<RegexAst, ParseError> {
    let raw = parse_raw(pattern)?;
    lower_regex(raw)
}

/// Parses a pattern of the form `e0 (e) e1 \1 e2` and splits it into its
/// four regular components.
pub fn parse_rewb(pattern: &str) -> Result<RewbQuery, ParseError> {
    let raw = parse_raw(pattern)?;
    split_rewb(raw, pattern.len())
}

/// Parse tree before capture/reference placement has been checked.
#[derive(Debug)]
enum Raw {
    Empty,
    Literal(u8),
    AnyByte,
    Class { set: ByteSet, negated: bool },
    Concat(Vec<Raw>),
    Alternation(Vec<Raw>),
    Star(Box<Raw>),
    Plus(Box<Raw>),
    Optional(Box<Raw>),
    /// `(...)` and the offset of its `(`.
    Capture(Box<Raw>, usize),
    /// `\1` and the offset of its `\`.
    Reference(usize),
}

struct Parser<'a> {
    pattern: &'a [u8],
    pos: usize,
}

fn parse_raw(pattern: &str) -> Result<Raw, ParseError> {
    let mut parser = Parser {
        pattern: pattern.as_bytes(),
        pos: 0,
    };
    let ast = parser.alternation()?;
    match parser.peek() {
        None => Ok(ast),
        // alternation() only stops early at a stray `)`.
        Some(_) => Err(parser.error(ParseErrorKind::UnbalancedParen)),
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.pattern.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.pos,
            kind,
        }
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { pos, kind }
    }

    fn alternation(&mut self) -> Result<Raw, ParseError> {
        let mut branches = vec![self.concat()?];
        while self.eat(b'|') {
            branches.push(self.concat()?);
        }
        if branches.len() == 1 {
            Ok(branches.pop().unwrap())
        } else {
            Ok(Raw::Alternation(branches))
        }
    }

    fn concat(&mut self) -> Result<Raw, ParseError> {
        let mut items = Vec::new();
        while let Some(b) = self.peek() {
            if b == b'|' || b == b')' {
                break;
            }
            items.push(self.quantified()?);
        }
        match items.len() {
            0 => Ok(Raw::Empty),
            1 => Ok(items.pop().unwrap()),
            _ => Ok(Raw::Concat(items)),
        }
    }

    fn quantified(&mut self) -> Result<Raw, ParseError> {
        let mut ast = self.atom()?;
        loop {
            match self.peek() {
                Some(b'*') => ast = Raw::Star(Box::new(ast)),
                Some(b'+') => ast = Raw::Plus(Box::new(ast)),
                Some(b'?') => ast = Raw::Optional(Box::new(ast)),
                _ => return Ok(ast),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Raw, ParseError> {
        let start = self.pos;
        let b = self.bump().expect("caller checked for end of input");
        match b {
            b'(' => {
                let capture = if self.eat(b'?') {
                    if !self.eat(b':') {
                        return Err(self.error_at(start, ParseErrorKind::UnsupportedGroup));
                    }
                    false
                } else {
                    true
                };
                let inner = self.alternation()?;
                if !self.eat(b')') {
                    return Err(self.error_at(start, ParseErrorKind::UnexpectedEnd));
                }
                if capture {
                    Ok(Raw::Capture(Box::new(inner), start))
                } else {
                    Ok(inner)
                }
            }
            b'[' => self.class(start),
            b'.' => Ok(Raw::AnyByte),
            b'\\' => match self.bump() {
                None => Err(self.error_at(start, ParseErrorKind::TrailingEscape)),
                Some(b'1') => Ok(Raw::Reference(start)),
                Some(e) => self
                    .escaped_literal(e)
                    .map(Raw::Literal)
                    .ok_or_else(|| self.error_at(start, ParseErrorKind::InvalidEscape)),
            },
            b'*' | b'+' | b'?' => Err(self.error_at(start, ParseErrorKind::DanglingQuantifier)),
            _ if b.is_ascii() => Ok(Raw::Literal(b)),
            _ => Err(self.error_at(start, ParseErrorKind::NonAscii)),
        }
    }

    /// The literal byte for `\e`, if the escape is supported.  `\1` is
    /// handled by the callers.
    fn escaped_literal(&self, e: u8) -> Option<u8> {
        match e {
            b'\\' | b'|' | b'*' | b'+' | b'?' | b'(' | b')' | b'[' | b']' | b'.' | b'^'
            | b'-' => Some(e),
            b'n' => Some(b'\n'),
            b't' => Some(b'\t'),
            b'r' => Some(b'\r'),
            _ => None,
        }
    }

    fn class(&mut self, start: usize) -> Result<Raw, ParseError> {
        let negated = self.eat(b'^');
        let mut set = ByteSet::new();
        loop {
            match self.peek() {
                None => return Err(self.error_at(start, ParseErrorKind::UnexpectedEnd)),
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                Some(_) => {
                    let lo = self.class_byte()?;
                    // `-` forms a range unless it closes the class.
                    if self.peek() == Some(b'-') && self.pattern.get(self.pos + 1) != Some(&b']')
                    {
                        let range_pos = self.pos;
                        self.pos += 1;
                        if self.peek().is_none() {
                            return Err(self.error_at(start, ParseErrorKind::UnexpectedEnd));
                        }
                        let hi = self.class_byte()?;
                        if lo > hi {
                            return Err(
                                self.error_at(range_pos, ParseErrorKind::InvalidClassRange)
                            );
                        }
                        set.insert_range(lo, hi);
                    } else {
                        set.insert(lo);
                    }
                }
            }
        }
        if set.is_empty() && !negated {
            return Err(self.error_at(start, ParseErrorKind::EmptyClass));
        }
        Ok(Raw::Class { set, negated })
    }

    fn class_byte(&mut self) -> Result<u8, ParseError> {
        let start = self.pos;
        let b = self.bump().expect("caller peeked an item byte");
        match b {
            b'\\' => match self.bump() {
                None => Err(self.error_at(start, ParseErrorKind::TrailingEscape)),
                Some(e) => self
                    .escaped_literal(e)
                    .ok_or_else(|| self.error_at(start, ParseErrorKind::InvalidEscape)),
            },
            _ if b.is_ascii() => Ok(b),
            _ => Err(self.error_at(start, ParseErrorKind::NonAscii)),
        }
    }
}

/// Lowers a raw tree into a plain regex, rejecting captures and
/// references.
fn lower_regex(raw: Raw) -> Result<RegexAst, ParseError> {
    match raw {
        Raw::Empty => Ok(RegexAst::Empty),
        Raw::Literal(b) => Ok(RegexAst::Literal(b)),
        Raw::AnyByte => Ok(RegexAst::AnyByte),
        Raw::Class { set, negated } => Ok(RegexAst::Class { set, negated }),
        Raw::Concat(children) => Ok(RegexAst::Concat(
            children
                .into_iter()
                .map(lower_regex)
                .collect::<Result<_, _>>()?,
        )),
        Raw::Alternation(children) => Ok(RegexAst::Alternation(
            children
                .into_iter()
                .map(lower_regex)
                .collect::<Result<_, _>>()?,
        )),
        Raw::Star(child) => Ok(RegexAst::Star(Box::new(lower_regex(*child)?))),
        Raw::Plus(child) => Ok(RegexAst::Plus(Box::new(lower_regex(*child)?))),
        Raw::Optional(child) => Ok(RegexAst::Optional(Box::new(lower_regex(*child)?))),
        Raw::Capture(_, pos) => Err(ParseError {
            pos,
            kind: ParseErrorKind::CaptureNotAllowed,
        }),
        Raw::Reference(pos) => Err(ParseError {
            pos,
            kind: ParseErrorKind::ReferenceNotAllowed,
        }),
    }
}

/// Position of the first capture or reference strictly below the top
/// level, if any.
fn find_nested(raw: &Raw) -> Option<(usize, RewbFormError)> {
    match raw {
        Raw::Capture(_, pos) => Some((*pos, RewbFormError::CaptureNotTopLevel)),
        Raw::Reference(pos) => Some((*pos, RewbFormError::ReferenceNotTopLevel)),
        Raw::Concat(children) | Raw::Alternation(children) => {
            children.iter().find_map(find_nested)
        }
        Raw::Star(child) | Raw::Plus(child) | Raw::Optional(child) => find_nested(child),
        _ => None,
    }
}

fn form_error(pos: usize, e: RewbFormError) -> ParseError {
    ParseError {
        pos,
        kind: ParseErrorKind::Form(e),
    }
}

/// Splits a raw tree along its top-level capture and reference.
fn split_rewb(raw: Raw, pattern_len: usize) -> Result<RewbQuery, ParseError> {
    let children = match raw {
        Raw::Concat(children) => children,
        other => vec![other],
    };

    let mut capture: Option<usize> = None;
    let mut reference: Option<usize> = None;
    for (i, child) in children.iter().enumerate() {
        match child {
            Raw::Capture(inner, pos) => {
                if capture.is_some() {
                    return Err(form_error(*pos, RewbFormError::MultipleCaptures));
                }
                if let Some((nested, kind)) = find_nested(inner.as_ref()) {
                    // A capture inside the capture is a second capture.
                    let kind = match kind {
                        RewbFormError::CaptureNotTopLevel => RewbFormError::MultipleCaptures,
                        other => other,
                    };
                    return Err(form_error(nested, kind));
                }
                capture = Some(i);
            }
            Raw::Reference(pos) => {
                if reference.is_some() {
                    return Err(form_error(*pos, RewbFormError::MultipleReferences));
                }
                if capture.is_none() {
                    return Err(form_error(*pos, RewbFormError::ReferenceBeforeCapture));
                }
                reference = Some(i);
            }
            other => {
                if let Some((pos, e)) = find_nested(other) {
                    return Err(form_error(pos, e));
                }
            }
        }
    }

    let capture = match capture {
        Some(i) => i,
        None => return Err(form_error(pattern_len, RewbFormError::MissingCapture)),
    };
    let reference = match reference {
        Some(i) => i,
        None => return Err(form_error(pattern_len, RewbFormError::MissingReference)),
    };

    let mut parts: Vec<Option<Raw>> = children.into_iter().map(Some).collect();
    let e = match parts[capture].take().unwrap() {
        Raw::Capture(inner, _) => lower_regex(*inner)?,
        _ => unreachable!("index found above"),
    };
    let e0 = lower_concat(parts[..capture].iter_mut().map(|p| p.take().unwrap()))?;
    let e1 = lower_concat(
        parts[capture + 1..reference]
            .iter_mut()
            .map(|p| p.take().unwrap()),
    )?;
    let e2 = lower_concat(parts[reference + 1..].iter_mut().map(|p| p.take().unwrap()))?;
    Ok(RewbQuery { e0, e, e1, e2 })
}

fn lower_concat(parts: impl Iterator<Item = Raw>) -> Result<RegexAst, ParseError> {
    let mut lowered: Vec<RegexAst> = Vec::new();
    for part in parts {
        lowered.push(lower_regex(part)?);
    }
    match lowered.len() {
        0 => Ok(RegexAst::Empty),
        1 => Ok(lowered.pop().unwrap()),
        _ => Ok(RegexAst::Concat(lowered)),
    }
}
