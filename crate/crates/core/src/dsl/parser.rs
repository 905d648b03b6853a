use super::ast::{BinOp, ChartDecl, Command, Expr, Item, Program};
use super::error::ParseError;
use super::lexer::{lex, Tok, Token};
use std::collections::HashSet;

/// Catalog entries usable as bare names or zero-argument calls.
pub(crate) const CATALOG_CONSTANTS: &[&str] = &["so3", "heisenberg3", "aff1", "sphere_periods"];
/// Catalog entries that take arguments.
pub(crate) const CATALOG_FUNCTIONS: &[&str] = &["product", "sphere_so3", "period_model"];
const BOOLEANS: &[&str] = &["true", "false"];
/// The formal period symbol, available in every program.
const PERIOD_SYMBOL: &str = "PI";

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    chart_names: HashSet<String>,
    coords: HashSet<String>,
    bound: HashSet<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        }
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(n) => format!("'{n}'"),
            Tok::Vector(v) => format!("'d/d{v}'"),
            Tok::Form(v) => format!("'dx[{v}]'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(Self::error_at(
                &t,
                format!("expected '{c}', found {}", Self::describe(&t.tok)),
            ))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => Err(Self::error_at(
                &t,
                format!("expected a name, found {}", Self::describe(other)),
            )),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(()),
            other => Err(Self::error_at(
                &t,
                format!("expected '{kw}', found {}", Self::describe(other)),
            )),
        }
    }

    fn idlist(&mut self) -> PResult<Vec<String>> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if self.eat_sym(']') {
            return Ok(out);
        }
        loop {
            out.push(self.ident()?.0);
            if self.eat_sym(']') {
                return Ok(out);
            }
            self.expect_sym(',')?;
        }
    }

    fn section(&mut self, kw: &str) -> PResult<Vec<String>> {
        self.keyword(kw)?;
        self.expect_sym(':')?;
        let ids = self.idlist()?;
        self.expect_sym(';')?;
        Ok(ids)
    }

    fn chart(&mut self) -> PResult<ChartDecl> {
        self.keyword("chart")?;
        let open = self.peek().clone();
        self.expect_sym('{')?;
        let base = self.section("base")?;
        let fiber = self.section("fiber")?;
        let params = if matches!(&self.peek().tok, Tok::Ident(s) if s == "params") {
            self.section("params")?
        } else {
            Vec::new()
        };
        self.expect_sym('}')?;
        let mut seen = HashSet::new();
        if let Some(dup) = base
            .iter()
            .chain(&fiber)
            .chain(&params)
            .find(|n| !seen.insert(n.as_str()))
        {
            return Err(Self::error_at(&open, format!("'{dup}' declared twice in the chart")));
        }
        if base.iter().chain(&fiber).any(|n| n == PERIOD_SYMBOL) {
            return Err(Self::error_at(
                &open,
                format!("'{PERIOD_SYMBOL}' can only be a parameter"),
            ));
        }
        self.coords = base.iter().chain(&fiber).cloned().collect();
        self.chart_names = self.coords.iter().chain(&params).cloned().collect();
        Ok(ChartDecl { base, fiber, params })
    }

    fn check_name(&self, name: &str, t: &Token) -> PResult<()> {
        let known = self.bound.contains(name)
            || self.chart_names.contains(name)
            || CATALOG_CONSTANTS.contains(&name)
            || BOOLEANS.contains(&name)
            || name == PERIOD_SYMBOL;
        if known {
            Ok(())
        } else {
            Err(ParseError::UnknownIdentifier {
                name: name.into(),
                line: t.line,
                col: t.col,
            })
        }
    }

    fn check_coord(&self, name: &str, t: &Token) -> PResult<()> {
        if self.coords.contains(name) {
            Ok(())
        } else {
            Err(ParseError::UnknownIdentifier {
                name: name.into(),
                line: t.line,
                col: t.col,
            })
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.tensor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.tensor()?));
        }
    }

    fn tensor(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while self.eat_sym('&') {
            lhs = Expr::Bin(BinOp::Tensor, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let mut lhs = self.primary()?;
        while self.eat_sym('^') {
            lhs = Expr::Bin(BinOp::Caret, Box::new(lhs), Box::new(self.primary()?));
        }
        Ok(lhs)
    }

    fn args(&mut self, close: char) -> PResult<Vec<Expr>> {
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat_sym(close) {
                return Ok(out);
            }
            self.expect_sym(',')?;
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(Expr::Num(n.clone())),
            Tok::Vector(v) => {
                self.check_coord(v, &t)?;
                Ok(Expr::Vector(v.clone()))
            }
            Tok::Form(v) => {
                self.check_coord(v, &t)?;
                Ok(Expr::Form(v.clone()))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Sym('[') => Ok(Expr::List(self.args(']')?)),
            Tok::Ident(name) => {
                if self.eat_sym('(') {
                    if !CATALOG_FUNCTIONS.contains(&name.as_str()) && !CATALOG_CONSTANTS.contains(&name.as_str()) {
                        return Err(ParseError::UnknownIdentifier {
                            name: name.clone(),
                            line: t.line,
                            col: t.col,
                        });
                    }
                    Ok(Expr::Call(name.clone(), self.args(')')?))
                } else {
                    self.check_name(name, &t)?;
                    Ok(Expr::Var(name.clone()))
                }
            }
            other => Err(Self::error_at(
                &t,
                format!("expected an expression, found {}", Self::describe(other)),
            )),
        }
    }

    fn natural(&mut self) -> PResult<u32> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => u32::try_from(n).map_err(|_| Self::error_at(&t, "order too large")),
            other => Err(Self::error_at(
                &t,
                format!("expected an integer, found {}", Self::describe(other)),
            )),
        }
    }

    fn command(&mut self, name: &str, at: &Token) -> PResult<Command> {
        self.expect_sym('(')?;
        let cmd = match name {
            "jacobi" => Command::Jacobi(self.expr()?),
            "dirac" => Command::Dirac(self.expr()?),
            "decompose" => Command::Decompose(self.expr()?),
            "structure_eqs" => Command::StructureEqs(self.expr()?),
            "jet" => {
                let e = self.expr()?;
                self.expect_sym(',')?;
                Command::Jet(e, self.natural()?)
            }
            "moser" => Command::Moser(self.expr()?),
            "chain_map" => {
                let e = self.expr()?;
                self.expect_sym(',')?;
                Command::ChainMap(e, self.expr()?)
            }
            "monodromy" => {
                let m = self.expr()?;
                let point = if self.eat_sym(',') { Some(self.expr()?) } else { None };
                Command::Monodromy(m, point)
            }
            "ratio_constancy" => Command::RatioConstancy(self.expr()?),
            "affine" => Command::Affine(self.expr()?),
            "int_identity" => {
                let f = self.expr()?;
                self.expect_sym(';')?;
                let mut basis = vec![self.expr()?];
                while self.eat_sym(',') {
                    basis.push(self.expr()?);
                }
                Command::IntIdentity(f, basis)
            }
            "emit" => Command::Emit(self.expr()?),
            _ => return Err(Self::error_at(at, format!("unknown command '{name}'"))),
        };
        self.expect_sym(')')?;
        self.expect_sym(';')?;
        Ok(cmd)
    }

    fn item(&mut self) -> PResult<Item> {
        let (word, t) = self.ident()?;
        match word.as_str() {
            "chart" => Err(ParseError::ChartRedeclared {
                line: t.line,
                col: t.col,
            }),
            "let" => {
                let (name, nt) = self.ident()?;
                if self.chart_names.contains(&name)
                    || CATALOG_CONSTANTS.contains(&name.as_str())
                    || CATALOG_FUNCTIONS.contains(&name.as_str())
                    || BOOLEANS.contains(&name.as_str())
                    || name == PERIOD_SYMBOL
                {
                    return Err(Self::error_at(&nt, format!("'{name}' is reserved")));
                }
                self.expect_sym('=')?;
                let e = self.expr()?;
                self.expect_sym(';')?;
                self.bound.insert(name.clone());
                Ok(Item::Let(name, e))
            }
            "check" => {
                let (what, wt) = self.ident()?;
                if what != "jacobi" && what != "dirac" {
                    return Err(Self::error_at(&wt, format!("unknown check '{what}'")));
                }
                Ok(Item::Command(self.command(&what, &wt)?))
            }
            "jacobi" | "dirac" => Err(Self::error_at(&t, format!("use 'check {word}(..)'"))),
            _ => Ok(Item::Command(self.command(&word, &t)?)),
        }
    }
}

/// Parses a program; names must be bound before use.
pub fn parse(src: &str) -> Result<Program, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        chart_names: HashSet::new(),
        coords: HashSet::new(),
        bound: HashSet::new(),
    };
    let chart = p.chart()?;
    let mut items = Vec::new();
    while p.peek().tok != Tok::Eof {
        items.push(p.item()?);
    }
    Ok(Program { chart, items })
}
