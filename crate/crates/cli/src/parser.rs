use std::collections::HashMap;

use relcoh::arith::{rat, BaseRing, BaseScalar, Polynomial, Rational, Ring};
use relcoh::groebner::ModulePresentation;

use crate::ast::{Command, Matrix, Pos, Session, Statement};
use crate::error::{ParseError, ParseErrorKind};
use crate::lexer::{lex, Tok};

/// Declarations seen so far. Shared with the printer, which needs the ring
/// of each polynomial, and the runner, which needs the modules.
#[derive(Default)]
pub(crate) struct Scope {
    bases: HashMap<String, Option<String>>,
    rings: HashMap<String, Ring>,
    pub(crate) active: Option<Ring>,
    pub(crate) module_rings: HashMap<String, Ring>,
    pub(crate) modules: HashMap<String, ModulePresentation>,
}

impl Scope {
    pub(crate) fn declare(&mut self, st: &Statement) {
        match st {
            Statement::BaseRing { name, param } => {
                self.bases.insert(name.clone(), param.clone());
            }
            Statement::PolyRing { name, base, vars } => {
                let param = self.bases.get(base).cloned().flatten();
                let ring = make_ring(param, vars);
                self.rings.insert(name.clone(), ring.clone());
                self.active = Some(ring);
            }
            Statement::Module { name, rows, twists } => {
                if let Some(r) = &self.active {
                    if let Ok(m) = build_module(r, rows, twists) {
                        self.modules.insert(name.clone(), m);
                    }
                    self.module_rings.insert(name.clone(), r.clone());
                }
            }
            Statement::Command(_) => {}
        }
    }
}

pub(crate) fn make_ring(param: Option<String>, vars: &[String]) -> Ring {
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let base = if param.is_some() { BaseRing::RationalPoly } else { BaseRing::Rational };
    let mut ring = Ring::new(base, &names);
    if let Some(p) = param {
        ring.param = p;
    }
    ring
}

/// Builds the presentation a module statement describes.
pub fn build_module(ring: &Ring, rows: &Matrix, twists: &Option<Vec<i64>>) -> relcoh::Result<ModulePresentation> {
    ModulePresentation::from_rows(ring.clone(), rows.clone(), twists.clone())
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    k: usize,
    scope: Scope,
}

/// Parses and checks a session script: identifiers must be declared before
/// use and relation entries must be x-homogeneous.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        k: 0,
        scope: Scope::default(),
    };
    let mut session = Session::default();
    while p.peek() != &Tok::Eof {
        let pos = p.pos();
        let st = p.statement()?;
        session.statements.push(st);
        session.positions.push(pos);
    }
    Ok(session)
}

fn is_sym(t: &Tok, s: &str) -> bool {
    matches!(t, Tok::Sym(x) if *x == s)
}

fn is_word(t: &Tok, s: &str) -> bool {
    matches!(t, Tok::Ident(x) if x == s)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.k].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.k].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.k].0.clone();
        if t != Tok::Eof {
            self.k += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::syntax(self.pos(), format!("expected {wanted}, found {}", self.peek()))
    }

    fn sym(&mut self, s: &str) -> Result<(), ParseError> {
        if is_sym(self.peek(), s) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = is_sym(self.peek(), s);
        if hit {
            self.bump();
        }
        hit
    }

    fn word(&mut self, s: &str) -> Result<(), ParseError> {
        if is_word(self.peek(), s) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let pos = self.pos();
        let neg = self.eat_sym("-");
        let n = i64::try_from(self.uint()?).map_err(|_| ParseError::syntax(pos, "integer out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let pos = self.pos();
        let num = self.int()?;
        if self.eat_sym("/") {
            let den = self.int()?;
            if den == 0 {
                return Err(ParseError::new(ParseErrorKind::Invalid, pos, "division by zero"));
            }
            return Ok(rat(num) / rat(den));
        }
        Ok(rat(num))
    }

    /// `a..b` or a single value `a`.
    fn range(&mut self) -> Result<(i64, i64), ParseError> {
        let pos = self.pos();
        let a = self.int()?;
        let b = if self.eat_sym("..") { self.int()? } else { a };
        if a > b {
            return Err(ParseError::new(ParseErrorKind::Invalid, pos, format!("empty range {a}..{b}")));
        }
        Ok((a, b))
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.sym(";")
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let pos = self.pos();
        let head = self.ident()?;
        let st = match head.as_str() {
            "ring" => self.ring()?,
            "module" => self.module()?,
            "compute" | "check" | "find" => Statement::Command(self.command(&head)?),
            _ => {
                return Err(ParseError::syntax(
                    pos,
                    format!("expected `ring`, `module`, `compute`, `check` or `find`, found `{head}`"),
                ))
            }
        };
        self.end()?;
        self.scope.declare(&st);
        Ok(st)
    }

    fn fresh(&self, pos: Pos, name: &str) -> Result<(), ParseError> {
        if self.scope.bases.contains_key(name) || self.scope.rings.contains_key(name) || self.scope.modules.contains_key(name)
        {
            return Err(ParseError::new(
                ParseErrorKind::Invalid,
                pos,
                format!("`{name}` is already declared"),
            ));
        }
        Ok(())
    }

    fn ring(&mut self) -> Result<Statement, ParseError> {
        let pos = self.pos();
        let name = self.ident()?;
        self.fresh(pos, &name)?;
        self.sym("=")?;
        let base_pos = self.pos();
        let base = self.ident()?;
        if base == "QQ" {
            let param = if self.eat_sym("[") {
                let p = self.ident()?;
                self.sym("]")?;
                Some(p)
            } else {
                None
            };
            return Ok(Statement::BaseRing { name, param });
        }
        let Some(param) = self.scope.bases.get(&base).cloned() else {
            return Err(ParseError::new(
                ParseErrorKind::UndefinedIdentifier,
                base_pos,
                format!("undefined base ring `{base}`"),
            ));
        };
        self.sym("[")?;
        let mut vars = Vec::new();
        loop {
            let vpos = self.pos();
            let v = self.ident()?;
            if vars.contains(&v) || param.as_deref() == Some(v.as_str()) {
                return Err(ParseError::new(ParseErrorKind::Invalid, vpos, format!("variable `{v}` repeats a name")));
            }
            vars.push(v);
            if !self.eat_sym(",") {
                break;
            }
        }
        self.sym("]")?;
        Ok(Statement::PolyRing { name, base, vars })
    }

    fn active_ring(&self, pos: Pos) -> Result<Ring, ParseError> {
        self.scope.active.clone().ok_or_else(|| {
            ParseError::new(ParseErrorKind::UndefinedIdentifier, pos, "no polynomial ring declared")
        })
    }

    fn module(&mut self) -> Result<Statement, ParseError> {
        let pos = self.pos();
        let name = self.ident()?;
        self.fresh(pos, &name)?;
        self.sym("=")?;
        self.word("coker")?;
        let ring = self.active_ring(pos)?;
        let rows = self.matrix(&ring, true)?;
        let twists = if is_word(self.peek(), "twists") {
            self.bump();
            self.sym("=")?;
            let bracket = self.eat_sym("[");
            let mut tw = vec![self.int()?];
            while self.eat_sym(",") {
                tw.push(self.int()?);
            }
            if bracket {
                self.sym("]")?;
            }
            Some(tw)
        } else {
            None
        };
        build_module(&ring, &rows, &twists).map_err(|e| {
            let kind = match e {
                relcoh::Error::NotHomogeneous(_) => ParseErrorKind::NotHomogeneous,
                _ => ParseErrorKind::Invalid,
            };
            ParseError::new(kind, pos, e.to_string())
        })?;
        Ok(Statement::Module { name, rows, twists })
    }

    /// `[[p, ...], ...]`; relation entries are checked for homogeneity.
    fn matrix(&mut self, ring: &Ring, relations: bool) -> Result<Matrix, ParseError> {
        self.sym("[")?;
        let mut rows = Vec::new();
        loop {
            let row_pos = self.pos();
            self.sym("[")?;
            let mut row = Vec::new();
            if !is_sym(self.peek(), "]") {
                loop {
                    let cell = self.pos();
                    let p = self.poly(ring)?;
                    if !p.is_homogeneous() {
                        let what = if relations { "relation entry" } else { "map entry" };
                        return Err(ParseError::new(
                            ParseErrorKind::NotHomogeneous,
                            cell,
                            format!(
                                "{what} not x-homogeneous at row {}, column {}: {}",
                                rows.len() + 1,
                                row.len() + 1,
                                ring.show(&p)
                            ),
                        ));
                    }
                    row.push(p);
                    if !self.eat_sym(",") {
                        break;
                    }
                }
            }
            self.sym("]")?;
            if rows.first().is_some_and(|r: &Vec<Polynomial>| r.len() != row.len()) {
                return Err(ParseError::new(ParseErrorKind::Invalid, row_pos, "rows of a matrix must have equal length"));
            }
            rows.push(row);
            if !self.eat_sym(",") {
                break;
            }
        }
        self.sym("]")?;
        Ok(rows)
    }

    fn poly(&mut self, ring: &Ring) -> Result<Polynomial, ParseError> {
        let mut acc = self.product(ring)?;
        loop {
            if self.eat_sym("+") {
                acc = &acc + &self.product(ring)?;
            } else if self.eat_sym("-") {
                acc = &acc - &self.product(ring)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self, ring: &Ring) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary(ring)?;
        loop {
            if self.eat_sym("*") {
                acc = &acc * &self.unary(ring)?;
            } else if is_sym(self.peek(), "/") {
                let pos = self.pos();
                self.bump();
                let d = self.unary(ring)?;
                let c = d
                    .coeff(&relcoh::arith::Monomial::one(ring.nvars()))
                    .as_constant()
                    .filter(|_| d.num_terms() == 1);
                match c {
                    Some(c) if !BaseScalar::constant(c.clone()).is_zero() => {
                        acc = acc.scale(&BaseScalar::constant(rat(1) / c));
                    }
                    _ => {
                        return Err(ParseError::new(
                            ParseErrorKind::Invalid,
                            pos,
                            "only division by a nonzero rational number is allowed",
                        ))
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, ring: &Ring) -> Result<Polynomial, ParseError> {
        if self.eat_sym("-") {
            return Ok(-&self.unary(ring)?);
        }
        let base = self.atom(ring)?;
        if self.eat_sym("^") {
            let pos = self.pos();
            let e = u32::try_from(self.uint()?).map_err(|_| ParseError::syntax(pos, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &Ring) -> Result<Polynomial, ParseError> {
        let n = ring.nvars();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => {
                let v = i64::try_from(v).map_err(|_| ParseError::syntax(pos, "integer out of range"))?;
                Ok(Polynomial::constant(n, BaseScalar::from_int(v)))
            }
            Tok::Ident(name) => {
                if let Some(i) = ring.vars.iter().position(|v| *v == name) {
                    Ok(Polynomial::var(n, i))
                } else if ring.base.has_parameter() && name == ring.param {
                    Ok(Polynomial::constant(n, BaseScalar::t()))
                } else {
                    Err(ParseError::new(
                        ParseErrorKind::UndefinedIdentifier,
                        pos,
                        format!("undefined identifier `{name}`"),
                    ))
                }
            }
            Tok::Sym("(") => {
                let p = self.poly(ring)?;
                self.sym(")")?;
                Ok(p)
            }
            t => Err(ParseError::syntax(pos, format!("expected a polynomial, found {t}"))),
        }
    }

    fn target(&mut self) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        let name = self.ident()?;
        if !self.scope.modules.contains_key(&name) {
            return Err(ParseError::new(
                ParseErrorKind::UndefinedIdentifier,
                pos,
                format!("undefined module `{name}`"),
            ));
        }
        Ok((name, pos))
    }

    /// `key=value` options in any order.
    fn options(&mut self, allowed: &[&str]) -> Result<HashMap<String, (Pos, OptValue)>, ParseError> {
        let mut out = HashMap::new();
        while let Tok::Ident(key) = self.peek().clone() {
            let pos = self.pos();
            if !allowed.contains(&key.as_str()) {
                return Err(ParseError::syntax(pos, format!("unexpected option `{key}`")));
            }
            self.bump();
            let value = if key == "oracle" {
                OptValue::Flag
            } else {
                self.sym("=")?;
                OptValue::Range(self.range()?)
            };
            if out.insert(key.clone(), (pos, value)).is_some() {
                return Err(ParseError::new(ParseErrorKind::Invalid, pos, format!("option `{key}` given twice")));
            }
        }
        Ok(out)
    }

    fn command(&mut self, verb: &str) -> Result<Command, ParseError> {
        let pos = self.pos();
        let what = self.ident()?;
        match (verb, what.as_str()) {
            ("compute", "localcoh") => {
                let (target, _) = self.target()?;
                let mut opts = self.options(&["i", "window", "oracle"])?;
                let i = match opts.remove("i") {
                    Some((p, v)) => nonneg(p, v.range())?,
                    None => return Err(ParseError::syntax(self.pos(), "localcoh needs `i=`")),
                };
                Ok(Command::LocalCoh {
                    target,
                    i,
                    window: opts.remove("window").map(|(_, v)| v.range()),
                    oracle: opts.contains_key("oracle"),
                })
            }
            ("compute", "ext") => {
                let (target, _) = self.target()?;
                let mut opts = self.options(&["j", "window"])?;
                let j = match opts.remove("j") {
                    Some((p, v)) => {
                        let (a, b) = nonneg(p, v.range())?;
                        if a != b {
                            return Err(ParseError::new(ParseErrorKind::Invalid, p, "`j=` takes a single index"));
                        }
                        a
                    }
                    None => return Err(ParseError::syntax(self.pos(), "ext needs `j=`")),
                };
                Ok(Command::Ext {
                    target,
                    j,
                    window: opts.remove("window").map(|(_, v)| v.range()),
                })
            }
            ("check", "duality") => {
                let (target, _) = self.target()?;
                let mut opts = self.options(&["window"])?;
                Ok(Command::Duality {
                    target,
                    window: opts.remove("window").map(|(_, v)| v.range()),
                })
            }
            ("check", "basechange") => {
                let (target, _) = self.target()?;
                self.word("at")?;
                let mut at = vec![self.rational()?];
                while self.eat_sym(",") {
                    at.push(self.rational()?);
                }
                let mut opts = self.options(&["i", "window"])?;
                let i = match opts.remove("i") {
                    Some((p, v)) => Some(nonneg(p, v.range())?),
                    None => None,
                };
                Ok(Command::BaseChange {
                    target,
                    at,
                    i,
                    window: opts.remove("window").map(|(_, v)| v.range()),
                })
            }
            ("check", "dualexact") => self.dualexact(),
            ("find", "witness") => {
                let (target, _) = self.target()?;
                let mut opts = self.options(&["window"])?;
                Ok(Command::Witness {
                    target,
                    window: opts.remove("window").map(|(_, v)| v.range()),
                })
            }
            _ => Err(ParseError::syntax(pos, format!("unknown command `{verb} {what}`"))),
        }
    }

    fn dualexact(&mut self) -> Result<Command, ParseError> {
        let (a, pa) = self.target()?;
        let (b, _) = self.target()?;
        let (c, _) = self.target()?;
        let ms: Vec<&ModulePresentation> = [&a, &b, &c].iter().map(|n| &self.scope.modules[*n]).collect();
        let ring = ms[1].ring().clone();
        if ms.iter().any(|m| m.ring() != &ring) {
            return Err(ParseError::new(ParseErrorKind::Invalid, pa, "dualexact needs three modules over one ring"));
        }
        let ranks: Vec<usize> = ms.iter().map(|m| m.rank()).collect();
        let maps = if is_word(self.peek(), "maps") {
            self.bump();
            let fpos = self.pos();
            let f = self.matrix(&ring, false)?;
            check_shape(fpos, "first map", &f, ranks[1], ranks[0])?;
            let gpos = self.pos();
            let g = self.matrix(&ring, false)?;
            check_shape(gpos, "second map", &g, ranks[2], ranks[1])?;
            Some((f, g))
        } else {
            if ranks[0] != ranks[1] || ranks[1] != ranks[2] {
                return Err(ParseError::new(
                    ParseErrorKind::Invalid,
                    pa,
                    "modules of different rank need explicit `maps`",
                ));
            }
            None
        };
        let mut opts = self.options(&["window"])?;
        Ok(Command::DualExact {
            targets: [a, b, c],
            maps,
            window: opts.remove("window").map(|(_, v)| v.range()),
        })
    }
}

/// A source-by-target map matrix has one row per target generator and one
/// column per source generator.
fn check_shape(pos: Pos, what: &str, m: &Matrix, rows: usize, cols: usize) -> Result<(), ParseError> {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    if (r, c) != (rows, cols) && !(cols == 0 && r == rows) {
        return Err(ParseError::new(
            ParseErrorKind::Invalid,
            pos,
            format!("{what} should be {rows}x{cols}, got {r}x{c}"),
        ));
    }
    Ok(())
}

fn nonneg(pos: Pos, (a, b): (i64, i64)) -> Result<(usize, usize), ParseError> {
    if a < 0 {
        return Err(ParseError::new(ParseErrorKind::Invalid, pos, "indices must be nonnegative"));
    }
    Ok((a as usize, b as usize))
}

enum OptValue {
    Flag,
    Range((i64, i64)),
}

impl OptValue {
    fn range(self) -> (i64, i64) {
        match self {
            OptValue::Range(r) => r,
            OptValue::Flag => unreachable!("flags carry no value"),
        }
    }
}
