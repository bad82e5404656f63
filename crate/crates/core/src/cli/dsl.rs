//! Text format for presentations and the data attached to them.
//!
//! ```text
//! field q;
//! gens x, y;
//! param f = {-2, -1, 0, 1, 2};
//! rel y*x - x*y - x^2;
//! aut theta { x -> 3*x; y -> 5*x + 3*y; }
//! sigma s { p = -1; q = 0; S11 = [[0, 0], [0, 0]]; S12 = [[1, 0], [f, 1]];
//!           S21 = [[1, 0], [f, 1]]; S22 = [[0, 0], [0, 0]]; }
//! ext B = double-ore(s) as y1, y2;
//! ```
//!
//! Matrix rows are images of generators. Comments run from `#` or `//` to
//! the end of the line.

use std::collections::HashSet;
use std::fmt::{self, Display, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

impl Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: expected {}, found {}", self.line, self.col, self.expected, self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Accepts `q`, `Q`, `F7`, `GF7`.
    pub fn parse(s: &str) -> Option<FieldSpec> {
        match s {
            "q" | "Q" | "QQ" => Some(FieldSpec::Rational),
            _ => {
                let digits = s.strip_prefix("GF").or_else(|| s.strip_prefix('F'))?;
                let p: u64 = digits.parse().ok()?;
                (p >= 2).then_some(FieldSpec::Prime(p))
            }
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Expression tree. Literals are non-negative; signs are explicit `Neg` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a scalar expression.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Pow(..) => 3,
            Expr::Num(_) | Expr::Var(_) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let fraction = matches!(self, Expr::Num(r) if !r.is_integer());
        let paren = self.precedence() < min || (fraction && min == 4);
        if paren {
            write!(f, "(")?;
        }
        match self {
            Expr::Num(r) => write!(f, "{r}")?,
            Expr::Var(v) => write!(f, "{v}")?,
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 2)?;
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 0)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 1)?;
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "*")?;
                b.write_at(f, 2)?;
            }
            Expr::Div(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " / ")?;
                b.write_at(f, 2)?;
            }
            Expr::Pow(a, k) => {
                a.write_at(f, 4)?;
                write!(f, "^{k}")?;
            }
        }
        if paren {
            write!(f, ")")?;
        }
        Ok(())
    }

    /// Polynomial degree in `gens`, if the expression is homogeneous.
    fn degree(&self, gens: &[String]) -> Result<usize, String> {
        Ok(match self {
            Expr::Num(_) => 0,
            Expr::Var(v) => usize::from(gens.contains(v)),
            Expr::Neg(a) => a.degree(gens)?,
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (da, db) = (a.degree(gens)?, b.degree(gens)?);
                if da != db {
                    return Err(format!("terms of degrees {da} and {db}"));
                }
                da
            }
            Expr::Mul(a, b) => a.degree(gens)? + b.degree(gens)?,
            Expr::Div(a, b) => {
                if b.degree(gens)? != 0 {
                    return Err("division by a generator".into());
                }
                a.degree(gens)?
            }
            Expr::Pow(a, k) => a.degree(gens)? * *k as usize,
        })
    }
}

impl Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamDecl {
    pub name: String,
    pub values: Vec<Rational>,
}

/// A graded automorphism given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutDecl {
    pub name: String,
    pub images: Vec<(String, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaDecl {
    pub name: String,
    pub p: Expr,
    pub q: Expr,
    /// `blocks[j][k]` is `S_{j+1,k+1}`, a square matrix of scalar expressions.
    pub blocks: [[Vec<Vec<Expr>>; 2]; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtKind {
    Ore,
    DoubleOre,
    Laurent,
    LaurentDiagonal,
    Iterated,
    IteratedLaurent,
}

impl ExtKind {
    pub const ALL: [ExtKind; 6] = [
        ExtKind::Ore,
        ExtKind::DoubleOre,
        ExtKind::Laurent,
        ExtKind::LaurentDiagonal,
        ExtKind::Iterated,
        ExtKind::IteratedLaurent,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            ExtKind::Ore => "ore",
            ExtKind::DoubleOre => "double-ore",
            ExtKind::Laurent => "laurent",
            ExtKind::LaurentDiagonal => "laurent-diagonal",
            ExtKind::Iterated => "iterated",
            ExtKind::IteratedLaurent => "iterated-laurent",
        }
    }

    fn from_keyword(s: &str) -> Option<ExtKind> {
        ExtKind::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

/// A named extension of the base algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtDecl {
    pub name: String,
    pub kind: ExtKind,
    /// Names of the automorphisms or the sigma the extension is built from.
    pub args: Vec<String>,
    /// `p` of a diagonal Laurent extension.
    pub p: Option<Expr>,
    /// Names of the adjoined generators; empty means defaults.
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub field: FieldSpec,
    pub gens: Vec<String>,
    pub params: Vec<ParamDecl>,
    pub relations: Vec<Expr>,
    pub auts: Vec<AutDecl>,
    pub sigmas: Vec<SigmaDecl>,
    pub exts: Vec<ExtDecl>,
}

impl Default for Document {
    fn default() -> Self {
        Document {
            field: FieldSpec::Rational,
            gens: vec![],
            params: vec![],
            relations: vec![],
            auts: vec![],
            sigmas: vec![],
            exts: vec![],
        }
    }
}

impl Document {
    pub fn aut(&self, name: &str) -> Option<&AutDecl> {
        self.auts.iter().find(|a| a.name == name)
    }

    pub fn sigma(&self, name: &str) -> Option<&SigmaDecl> {
        self.sigmas.iter().find(|s| s.name == name)
    }

    pub fn ext(&self, name: &str) -> Option<&ExtDecl> {
        self.exts.iter().find(|e| e.name == name)
    }

    pub fn param(&self, name: &str) -> Option<&ParamDecl> {
        self.params.iter().find(|p| p.name == name)
    }
}

fn write_matrix(f: &mut fmt::Formatter<'_>, m: &[Vec<Expr>]) -> fmt::Result {
    write!(f, "[")?;
    for (i, row) in m.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "[{}]", row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))?;
    }
    write!(f, "]")
}

impl Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {};", self.field)?;
        if self.gens.is_empty() {
            writeln!(f, "gens;")?;
        } else {
            writeln!(f, "gens {};", self.gens.join(", "))?;
        }
        for p in &self.params {
            let values: Vec<String> = p.values.iter().map(|v| v.to_string()).collect();
            writeln!(f, "param {} = {{{}}};", p.name, values.join(", "))?;
        }
        for r in &self.relations {
            writeln!(f, "rel {r};")?;
        }
        for a in &self.auts {
            writeln!(f, "aut {} {{", a.name)?;
            for (g, e) in &a.images {
                writeln!(f, "    {g} -> {e};")?;
            }
            writeln!(f, "}}")?;
        }
        for s in &self.sigmas {
            writeln!(f, "sigma {} {{", s.name)?;
            writeln!(f, "    p = {};", s.p)?;
            writeln!(f, "    q = {};", s.q)?;
            for j in 0..2 {
                for k in 0..2 {
                    write!(f, "    S{}{} = ", j + 1, k + 1)?;
                    write_matrix(f, &s.blocks[j][k])?;
                    writeln!(f, ";")?;
                }
            }
            writeln!(f, "}}")?;
        }
        for e in &self.exts {
            write!(f, "ext {} = {}({})", e.name, e.kind.keyword(), e.args.join(", "))?;
            if let Some(p) = &e.p {
                write!(f, " with p = {p}")?;
            }
            if !e.vars.is_empty() {
                write!(f, " as {}", e.vars.join(", "))?;
            }
            writeln!(f, ";")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(Rational),
    Sym(&'static str),
    Eof,
}

impl Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(r) => write!(f, "`{r}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 16] = ["->", "..", ";", ",", "=", "{", "}", "[", "]", "(", ")", "+", "-", "*", "/", "^"];

struct Cursor {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.i + ahead).copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars[self.i];
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while self.peek(0).is_some_and(&f) {
            s.push(self.bump());
        }
        s
    }

    fn error(&self, expected: &str, found: String) -> ParseError {
        ParseError { line: self.line, col: self.col, expected: expected.into(), found }
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor { chars: src.chars().collect(), i: 0, line: 1, col: 1 };
    let mut out = vec![];
    while let Some(c) = cur.peek(0) {
        let (line, col) = (cur.line, cur.col);
        let tok = if c.is_whitespace() {
            cur.bump();
            continue;
        } else if c == '#' || (c == '/' && cur.peek(1) == Some('/')) {
            cur.take_while(|c| c != '\n');
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            Tok::Ident(cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_'))
        } else if c.is_ascii_digit() {
            let num: BigInt = cur.take_while(|c| c.is_ascii_digit()).parse().expect("digits");
            let mut value = Rational::from_integer(num);
            if cur.peek(0) == Some('.') && cur.peek(1).is_some_and(|c| c.is_ascii_digit()) {
                return Err(cur.error("an exact rational literal", "a decimal point".into()));
            }
            if cur.peek(0) == Some('/') && cur.peek(1).is_some_and(|c| c.is_ascii_digit()) {
                cur.bump();
                let den_at = cur.error("a nonzero denominator", "`0`".into());
                let den: BigInt = cur.take_while(|c| c.is_ascii_digit()).parse().expect("digits");
                if den.is_zero() {
                    return Err(den_at);
                }
                value /= Rational::from_integer(den);
            }
            Tok::Num(value)
        } else if let Some(sym) = SYMBOLS.iter().find(|s| s.chars().enumerate().all(|(k, ch)| cur.peek(k) == Some(ch)))
        {
            for _ in 0..sym.len() {
                cur.bump();
            }
            Tok::Sym(sym)
        } else {
            return Err(cur.error("a token", format!("`{c}`")));
        };
        out.push(Token { tok, line, col });
    }
    out.push(Token { tok: Tok::Eof, line: cur.line, col: cur.col });
    Ok(out)
}

/// What an identifier may refer to inside an expression.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Scope {
    /// Generators and parameters.
    Algebra,
    /// Parameters only.
    Scalar,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    doc: Document,
    gens_declared: bool,
    field_declared: bool,
    /// Names of automorphisms, sigmas and extensions.
    objects: HashSet<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, expected: impl Into<String>) -> ParseError {
        ParseError { line: t.line, col: t.col, expected: expected.into(), found: t.tok.to_string() }
    }

    fn error(&self, expected: impl Into<String>) -> ParseError {
        self.error_at(self.peek(), expected)
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(t) if *t == s)
    }

    fn at_ident(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(t) if t == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.at_sym(s);
        if hit {
            self.next();
        }
        hit
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(format!("`{s}`")))
        }
    }

    fn expect_ident(&mut self, what: &str) -> PResult<(String, Token)> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(s) => {
                self.next();
                Ok((s.clone(), t))
            }
            _ => Err(self.error_at(&t, what)),
        }
    }

    fn ident_list(&mut self, what: &str) -> PResult<Vec<(String, Token)>> {
        let mut out = vec![self.expect_ident(what)?];
        while self.eat_sym(",") {
            out.push(self.expect_ident(what)?);
        }
        Ok(out)
    }

    fn require_gens(&self, t: &Token) -> PResult<()> {
        if self.gens_declared {
            Ok(())
        } else {
            Err(self.error_at(t, "a `gens` declaration first"))
        }
    }

    fn scalar_name_taken(&self, name: &str) -> bool {
        self.doc.gens.iter().any(|g| g == name) || self.doc.param(name).is_some()
    }

    fn declare_object(&mut self, name: String, t: &Token) -> PResult<String> {
        if !self.objects.insert(name.clone()) {
            return Err(self.error_at(t, "a name not already used by an automorphism, sigma or extension"));
        }
        Ok(name)
    }

    fn document(mut self) -> PResult<Document> {
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Eof => return Ok(self.doc),
                Tok::Ident(kw) => {
                    self.next();
                    match kw.as_str() {
                        "field" => self.field(&t)?,
                        "gens" => self.gens(&t)?,
                        "param" => self.param()?,
                        "rel" => self.relation(&t)?,
                        "aut" => self.aut(&t)?,
                        "sigma" => self.sigma(&t)?,
                        "ext" => self.ext(&t)?,
                        _ => return Err(self.error_at(&t, "a statement (field, gens, param, rel, aut, sigma, ext)")),
                    }
                }
                _ => return Err(self.error_at(&t, "a statement (field, gens, param, rel, aut, sigma, ext)")),
            }
        }
    }

    fn field(&mut self, kw: &Token) -> PResult<()> {
        if self.field_declared {
            return Err(self.error_at(kw, "a single `field` declaration"));
        }
        let (name, t) = self.expect_ident("a field (`q` or `F<prime>`)")?;
        self.doc.field = FieldSpec::parse(&name).ok_or_else(|| self.error_at(&t, "a field (`q` or `F<prime>`)"))?;
        self.field_declared = true;
        self.expect_sym(";")
    }

    fn gens(&mut self, kw: &Token) -> PResult<()> {
        if self.gens_declared {
            return Err(self.error_at(kw, "a single `gens` declaration"));
        }
        self.gens_declared = true;
        if self.eat_sym(";") {
            return Ok(());
        }
        for (name, t) in self.ident_list("a generator name")? {
            if self.scalar_name_taken(&name) {
                return Err(self.error_at(&t, "a fresh generator name"));
            }
            self.doc.gens.push(name);
        }
        self.expect_sym(";")
    }

    fn signed_rational(&mut self) -> PResult<Rational> {
        let neg = self.eat_sym("-");
        let t = self.next();
        match t.tok {
            Tok::Num(r) => Ok(if neg { -r } else { r }),
            _ => Err(self.error_at(&t, "a rational number")),
        }
    }

    fn param(&mut self) -> PResult<()> {
        let (name, t) = self.expect_ident("a parameter name")?;
        if self.scalar_name_taken(&name) {
            return Err(self.error_at(&t, "a fresh parameter name"));
        }
        self.expect_sym("=")?;
        let mut values = vec![];
        if self.eat_sym("{") {
            if !self.at_sym("}") {
                values.push(self.signed_rational()?);
                while self.eat_sym(",") {
                    values.push(self.signed_rational()?);
                }
            }
            self.expect_sym("}")?;
        } else {
            let start_tok = self.peek().clone();
            let first = self.signed_rational()?;
            if self.eat_sym("..") {
                let end_tok = self.peek().clone();
                let last = self.signed_rational()?;
                let int = |r: &Rational, t: &Token| {
                    if r.is_integer() {
                        Ok(r.to_integer())
                    } else {
                        Err(self.error_at(t, "an integer range bound"))
                    }
                };
                let (a, b) = (int(&first, &start_tok)?, int(&last, &end_tok)?);
                let mut k = a;
                while k <= b {
                    values.push(Rational::from_integer(k.clone()));
                    k += BigInt::one();
                }
            } else {
                values.push(first);
            }
        }
        self.expect_sym(";")?;
        self.doc.params.push(ParamDecl { name, values });
        Ok(())
    }

    fn checked_expr(&mut self, scope: Scope, degree: usize, what: &str) -> PResult<Expr> {
        let start = self.peek().clone();
        let e = self.expr(scope)?;
        match e.degree(&self.doc.gens) {
            Ok(d) if d == degree => Ok(e),
            Ok(d) => Err(ParseError {
                line: start.line,
                col: start.col,
                expected: what.into(),
                found: format!("degree {d}"),
            }),
            Err(found) => {
                Err(ParseError { line: start.line, col: start.col, expected: format!("{what} (homogeneous)"), found })
            }
        }
    }

    fn relation(&mut self, kw: &Token) -> PResult<()> {
        self.require_gens(kw)?;
        let e = self.checked_expr(Scope::Algebra, 2, "a quadratic relation")?;
        self.doc.relations.push(e);
        self.expect_sym(";")
    }

    fn aut(&mut self, kw: &Token) -> PResult<()> {
        self.require_gens(kw)?;
        let (name, t) = self.expect_ident("an automorphism name")?;
        let name = self.declare_object(name, &t)?;
        self.expect_sym("{")?;
        let mut images: Vec<(String, Expr)> = vec![];
        while !self.at_sym("}") {
            let (g, gt) = self.expect_ident("a generator")?;
            if !self.doc.gens.contains(&g) || images.iter().any(|(h, _)| *h == g) {
                return Err(self.error_at(&gt, "a generator without an image yet"));
            }
            self.expect_sym("->")?;
            let e = self.checked_expr(Scope::Algebra, 1, "a linear form in the generators")?;
            images.push((g, e));
            if !self.eat_sym(";") {
                break;
            }
        }
        if images.len() != self.doc.gens.len() {
            let missing: Vec<&str> =
                self.doc.gens.iter().filter(|g| !images.iter().any(|(h, _)| h == *g)).map(|s| s.as_str()).collect();
            return Err(self.error(format!("images for {}", missing.join(", "))));
        }
        self.expect_sym("}")?;
        self.eat_sym(";");
        self.doc.auts.push(AutDecl { name, images });
        Ok(())
    }

    fn matrix(&mut self) -> PResult<Vec<Vec<Expr>>> {
        let n = self.doc.gens.len();
        let start = self.peek().clone();
        self.expect_sym("[")?;
        let mut rows = vec![];
        if !self.at_sym("]") {
            loop {
                self.expect_sym("[")?;
                let mut row = vec![self.checked_expr(Scope::Scalar, 0, "a scalar")?];
                while self.eat_sym(",") {
                    row.push(self.checked_expr(Scope::Scalar, 0, "a scalar")?);
                }
                self.expect_sym("]")?;
                rows.push(row);
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        self.expect_sym("]")?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(ParseError {
                line: start.line,
                col: start.col,
                expected: format!("a {n}x{n} matrix"),
                found: format!("{} rows of lengths {:?}", rows.len(), rows.iter().map(|r| r.len()).collect::<Vec<_>>()),
            });
        }
        Ok(rows)
    }

    fn sigma(&mut self, kw: &Token) -> PResult<()> {
        self.require_gens(kw)?;
        let (name, t) = self.expect_ident("a sigma name")?;
        let name = self.declare_object(name, &t)?;
        self.expect_sym("{")?;
        let (mut p, mut q) = (None, None);
        let mut blocks: [[Option<Vec<Vec<Expr>>>; 2]; 2] = Default::default();
        while !self.at_sym("}") {
            let (key, kt) = self.expect_ident("`p`, `q` or a block S11, S12, S21, S22")?;
            self.expect_sym("=")?;
            let dup = self.error_at(&kt, "each entry once");
            let slot_taken = |taken: bool| if taken { Err(dup.clone()) } else { Ok(()) };
            match key.as_str() {
                "p" => {
                    slot_taken(p.is_some())?;
                    p = Some(self.checked_expr(Scope::Scalar, 0, "a scalar")?);
                }
                "q" => {
                    slot_taken(q.is_some())?;
                    q = Some(self.checked_expr(Scope::Scalar, 0, "a scalar")?);
                }
                "S11" | "S12" | "S21" | "S22" => {
                    let b = key.as_bytes();
                    let (j, k) = ((b[1] - b'1') as usize, (b[2] - b'1') as usize);
                    slot_taken(blocks[j][k].is_some())?;
                    blocks[j][k] = Some(self.matrix()?);
                }
                _ => return Err(self.error_at(&kt, "`p`, `q` or a block S11, S12, S21, S22")),
            }
            if !self.eat_sym(";") {
                break;
            }
        }
        let missing = |label: &str| self.error(format!("a value for {label} before `}}`"));
        let p = p.ok_or_else(|| missing("p"))?;
        let q = q.ok_or_else(|| missing("q"))?;
        let [[b11, b12], [b21, b22]] = blocks;
        let blocks = [
            [b11.ok_or_else(|| missing("S11"))?, b12.ok_or_else(|| missing("S12"))?],
            [b21.ok_or_else(|| missing("S21"))?, b22.ok_or_else(|| missing("S22"))?],
        ];
        self.expect_sym("}")?;
        self.eat_sym(";");
        self.doc.sigmas.push(SigmaDecl { name, p, q, blocks });
        Ok(())
    }

    fn ext(&mut self, kw: &Token) -> PResult<()> {
        self.require_gens(kw)?;
        let (name, t) = self.expect_ident("an extension name")?;
        let name = self.declare_object(name, &t)?;
        self.expect_sym("=")?;
        let (mut word, kt) = self.expect_ident("an extension kind")?;
        while self.at_sym("-") {
            self.next();
            word.push('-');
            word.push_str(&self.expect_ident("an extension kind")?.0);
        }
        let kinds: Vec<&str> = ExtKind::ALL.iter().map(|k| k.keyword()).collect();
        let kind = ExtKind::from_keyword(&word)
            .ok_or_else(|| self.error_at(&kt, format!("an extension kind ({})", kinds.join(", "))))?;
        self.expect_sym("(")?;
        let args = self.ident_list("an automorphism or sigma name")?;
        self.expect_sym(")")?;
        let (want_sigma, count) = match kind {
            ExtKind::DoubleOre => (true, Some(1)),
            ExtKind::Ore | ExtKind::Laurent => (false, Some(1)),
            ExtKind::LaurentDiagonal => (false, Some(2)),
            ExtKind::Iterated | ExtKind::IteratedLaurent => (false, None),
        };
        for (a, at) in &args {
            let ok = if want_sigma { self.doc.sigma(a).is_some() } else { self.doc.aut(a).is_some() };
            if !ok {
                let what = if want_sigma { "a declared sigma" } else { "a declared automorphism" };
                return Err(self.error_at(at, what));
            }
        }
        if let Some(c) = count {
            if args.len() != c {
                return Err(self.error_at(&kt, format!("{c} argument(s) for {}", kind.keyword())));
            }
        }
        let mut p = None;
        if self.at_ident("with") {
            let wt = self.next();
            if kind != ExtKind::LaurentDiagonal {
                return Err(self.error_at(&wt, "`as` or `;`"));
            }
            let (key, kt) = self.expect_ident("`p`")?;
            if key != "p" {
                return Err(self.error_at(&kt, "`p`"));
            }
            self.expect_sym("=")?;
            p = Some(self.checked_expr(Scope::Scalar, 0, "a scalar")?);
        } else if kind == ExtKind::LaurentDiagonal {
            return Err(self.error("`with p = ...`"));
        }
        let mut vars = vec![];
        if self.at_ident("as") {
            let at = self.next();
            for (v, vt) in self.ident_list("a generator name")? {
                if self.scalar_name_taken(&v) || vars.contains(&v) {
                    return Err(self.error_at(&vt, "a fresh generator name"));
                }
                vars.push(v);
            }
            let expected = match kind {
                ExtKind::Ore | ExtKind::Laurent => 1,
                ExtKind::DoubleOre | ExtKind::LaurentDiagonal => 2,
                ExtKind::Iterated | ExtKind::IteratedLaurent => args.len(),
            };
            if vars.len() != expected {
                return Err(self.error_at(&at, format!("{expected} new generator name(s)")));
            }
        }
        self.expect_sym(";")?;
        let args = args.into_iter().map(|(a, _)| a).collect();
        self.doc.exts.push(ExtDecl { name, kind, args, p, vars });
        Ok(())
    }

    fn expr(&mut self, scope: Scope) -> PResult<Expr> {
        let mut acc = self.term(scope)?;
        loop {
            if self.eat_sym("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.term(scope)?));
            } else if self.eat_sym("-") {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term(scope)?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, scope: Scope) -> PResult<Expr> {
        let mut acc = self.factor(scope)?;
        loop {
            if self.eat_sym("*") {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor(scope)?));
            } else if self.eat_sym("/") {
                acc = Expr::Div(Box::new(acc), Box::new(self.factor(scope)?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, scope: Scope) -> PResult<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.factor(scope)?)));
        }
        let base = self.atom(scope)?;
        if !self.eat_sym("^") {
            return Ok(base);
        }
        let t = self.next();
        match &t.tok {
            Tok::Num(r) if r.is_integer() => {
                let k = r.to_integer().try_into().ok().filter(|k: &u32| *k <= 64);
                k.map(|k| Expr::Pow(Box::new(base), k)).ok_or_else(|| self.error_at(&t, "an exponent at most 64"))
            }
            _ => Err(self.error_at(&t, "a non-negative integer exponent")),
        }
    }

    fn atom(&mut self, scope: Scope) -> PResult<Expr> {
        let t = self.next();
        match &t.tok {
            Tok::Num(r) => Ok(Expr::Num(r.clone())),
            Tok::Ident(name) => {
                let is_gen = self.doc.gens.contains(name);
                if (is_gen && scope == Scope::Algebra) || self.doc.param(name).is_some() {
                    Ok(Expr::Var(name.clone()))
                } else if scope == Scope::Algebra {
                    Err(self.error_at(&t, "a generator, parameter or number"))
                } else {
                    Err(self.error_at(&t, "a parameter or number"))
                }
            }
            Tok::Sym("(") => {
                let e = self.expr(scope)?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => Err(self.error_at(&t, "an expression")),
        }
    }
}

pub fn parse(src: &str) -> Result<Document, ParseError> {
    let parser = Parser {
        tokens: lex(src)?,
        pos: 0,
        doc: Document::default(),
        gens_declared: false,
        field_declared: false,
        objects: HashSet::new(),
    };
    parser.document()
}

/// Canonical text of a document; `parse(&pretty(d)) == Ok(d)`.
pub fn pretty(doc: &Document) -> String {
    let mut s = String::new();
    write!(s, "{doc}").expect("writing to a string");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(s: &str) -> Expr {
        Expr::Var(s.into())
    }

    #[test]
    fn jordan_plane_parses() {
        let d = parse("gens x,y; rel y*x - x*y - x^2;").unwrap();
        assert_eq!(d.gens, vec!["x", "y"]);
        assert_eq!(d.field, FieldSpec::Rational);
        let expected = Expr::Sub(
            Box::new(Expr::Sub(
                Box::new(Expr::Mul(Box::new(var("y")), Box::new(var("x")))),
                Box::new(Expr::Mul(Box::new(var("x")), Box::new(var("y")))),
            )),
            Box::new(Expr::Pow(Box::new(var("x")), 2)),
        );
        assert_eq!(d.relations, vec![expected]);
    }

    #[test]
    fn cubic_relation_is_rejected() {
        let e = parse("gens x, y, z;\nrel x*y*z;").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        assert_eq!(e.found, "degree 3");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("gens x, y;\nrel x*y +;").unwrap_err();
        assert_eq!((e.line, e.col, e.found.as_str()), (2, 10, "`;`"));
        let e = parse("gens x;\nrel x*w;").unwrap_err();
        assert_eq!((e.line, e.col), (2, 7));
        let e = parse("rel x*y;").unwrap_err();
        assert!(e.expected.contains("gens"));
        let e = parse("gens x;\nrel 0.5*x*x;").unwrap_err();
        assert!(e.expected.contains("exact"));
        let e = parse("gens x, y;\naut t { x -> y; }").unwrap_err();
        assert!(e.expected.contains("images for y"));
        let e = parse("gens x;\nrel x*x + x;").unwrap_err();
        assert!(e.expected.contains("homogeneous"));
        let e = parse("gens x;\nsigma s { p = 1; q = 0; S11 = [[1, 0]]; }").unwrap_err();
        assert_eq!(e.expected, "a 1x1 matrix");
    }

    #[test]
    fn full_document() {
        let src = "
            field F7;            # a prime field
            gens x, y;
            param h = -2..2;
            param f = {0, 1/2};
            rel y*x + x*y;
            aut theta { x -> -x; y -> 2/3*x - y }
            sigma s {
                p = -1; q = 0;
                S11 = [[0, 0], [0, 0]]; S12 = [[h, 0], [h*f, h]];
                S21 = [[h, 0], [h*f, h]]; S22 = [[0, 0], [0, 0]];
            }
            ext B = double-ore(s) as y1, y2;
            ext D = laurent-diagonal(theta, theta) with p = 2;
        ";
        let d = parse(src).unwrap();
        assert_eq!(d.field, FieldSpec::Prime(7));
        assert_eq!(d.param("h").unwrap().values.len(), 5);
        assert_eq!(d.ext("B").unwrap().vars, vec!["y1", "y2"]);
        assert_eq!(d.ext("D").unwrap().kind, ExtKind::LaurentDiagonal);
        assert_eq!(parse(&pretty(&d)).unwrap(), d);
    }

    #[test]
    fn printing_keeps_structure() {
        for src in [
            "-x^2",
            "(-x)^2",
            "a*-b",
            "a - (b - c)",
            "-(a + b)*c",
            "(1/2)^3",
            "--a",
            "(a^2)^3",
            "2 / 4",
            "a / (b*c)",
            "a / b*c",
        ] {
            let doc = format!("gens; param a = 1; param b = 1; param c = 1; param x = 1; sigma s {{ p = {src}; q = 0; S11 = []; S12 = []; S21 = []; S22 = []; }}");
            let d = parse(&doc).unwrap();
            assert_eq!(d.sigmas[0].p.to_string(), src);
            assert_eq!(parse(&pretty(&d)).unwrap(), d);
        }
    }
}
