//! Recursive-descent parser for `.dga` files.

use crate::ast::*;
use crate::error::{ErrorKind, SpecError, SpecResult};
use crate::lexer::{lex, Tok, Token};

/// Words that start a statement and therefore cannot name basis vectors.
pub const RESERVED: &[&str] = &[
    "field", "algebra", "laurent", "module", "let", "run", "over", "basis", "unit", "mul", "act", "d", "default",
    "zero", "r0", "sigma", "degX", "dX", "dr0",
];

pub fn parse_spec(text: &str) -> SpecResult<SpecFile> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, at: 0 };
    let mut items = Vec::new();
    while !p.done() {
        items.push(p.item()?);
    }
    Ok(SpecFile { items })
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn done(&self) -> bool {
        self.at >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.at + k).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        match self.tokens.get(self.at) {
            Some(t) => t.pos,
            None => self.tokens.last().map(|t| Pos { line: t.pos.line, col: t.pos.col + 1 }).unwrap_or(Pos {
                line: 1,
                col: 1,
            }),
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> SpecResult<T> {
        Err(SpecError::new(ErrorKind::Syntax, self.pos(), message))
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of file".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Int(s)) => format!("`{s}`"),
            Some(Tok::Str(s)) => format!("string \"{s}\""),
            Some(Tok::Flag(s)) => format!("`--{s}`"),
            Some(Tok::Sym(c)) => format!("`{c}`"),
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == w)
    }

    fn sym(&mut self, c: char) -> SpecResult<()> {
        if self.is_sym(c) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`, found {}", self.describe()))
        }
    }

    fn word(&mut self, w: &str) -> SpecResult<()> {
        if self.is_word(w) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected `{w}`, found {}", self.describe()))
        }
    }

    fn name(&mut self) -> SpecResult<Name> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let name = Name { text: s.clone(), pos: self.pos() };
                self.at += 1;
                Ok(name)
            }
            _ => self.err(format!("expected a name, found {}", self.describe())),
        }
    }

    fn basis_name(&mut self) -> SpecResult<Name> {
        let pos = self.pos();
        let n = self.name()?;
        if RESERVED.contains(&n.text.as_str()) {
            return Err(SpecError::new(ErrorKind::Syntax, pos, format!("`{}` is a reserved word", n.text)));
        }
        Ok(n)
    }

    fn uint(&mut self) -> SpecResult<String> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err(format!("expected a number, found {}", self.describe())),
        }
    }

    fn sint(&mut self) -> SpecResult<i64> {
        let pos = self.pos();
        let neg = if self.is_sym('-') {
            self.at += 1;
            true
        } else {
            false
        };
        let digits = self.uint()?;
        let v: i64 = digits
            .parse()
            .map_err(|_| SpecError::new(ErrorKind::Lexical, pos, format!("integer `{digits}` is out of range")))?;
        Ok(if neg { -v } else { v })
    }

    /// `INT ['/' INT]`, with the sign already consumed.
    fn magnitude(&mut self) -> SpecResult<String> {
        let mut s = self.uint()?;
        if self.is_sym('/') {
            self.at += 1;
            s.push('/');
            s.push_str(&self.uint()?);
        }
        Ok(s)
    }

    fn signed_coef(&mut self) -> SpecResult<String> {
        let neg = if self.is_sym('-') {
            self.at += 1;
            true
        } else {
            false
        };
        let m = self.magnitude()?;
        Ok(if neg { format!("-{m}") } else { m })
    }

    fn item(&mut self) -> SpecResult<Item> {
        let pos = self.pos();
        let keyword = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return self.err(format!("expected a declaration or `run`, found {}", self.describe())),
        };
        self.at += 1;
        match keyword.as_str() {
            "field" => {
                let name = self.name()?;
                self.sym('=')?;
                let field = if self.is_word("Q") {
                    self.at += 1;
                    FieldExpr::Rationals
                } else if self.is_word("Fp") {
                    self.at += 1;
                    self.sym('(')?;
                    let ppos = self.pos();
                    let digits = self.uint()?;
                    self.sym(')')?;
                    let p = digits
                        .parse()
                        .map_err(|_| SpecError::new(ErrorKind::Lexical, ppos, "prime out of range"))?;
                    FieldExpr::Prime(p)
                } else {
                    return self.err(format!("expected `Q` or `Fp(p)`, found {}", self.describe()));
                };
                Ok(Item::Field(FieldDecl { name, field }))
            }
            "algebra" => self.algebra().map(Item::Algebra),
            "laurent" => self.laurent().map(Item::Laurent),
            "module" => self.module().map(Item::Module),
            "let" => {
                let name = self.name()?;
                self.sym('=')?;
                let value = self.call()?;
                Ok(Item::Let(LetDecl { name, value }))
            }
            "run" => {
                let call = self.call()?;
                let mut json = false;
                while let Some(Tok::Flag(f)) = self.peek() {
                    if f == "json" {
                        json = true;
                        self.at += 1;
                    } else {
                        return self.err(format!("unknown flag `--{f}`"));
                    }
                }
                Ok(Item::Run(Command { call, json }))
            }
            other => Err(SpecError::new(
                ErrorKind::Syntax,
                pos,
                format!("expected a declaration or `run`, found `{other}`"),
            )),
        }
    }

    fn basis_list(&mut self) -> SpecResult<Vec<BasisEntry>> {
        let mut out = Vec::new();
        loop {
            let name = self.basis_name()?;
            self.sym(':')?;
            let degree = self.sint()?;
            out.push(BasisEntry { name, degree });
            if self.is_sym(',') {
                self.at += 1;
            } else {
                return Ok(out);
            }
        }
    }

    fn block_open(&mut self) -> SpecResult<()> {
        self.sym('{')
    }

    fn skip_semis(&mut self) {
        while self.is_sym(';') {
            self.at += 1;
        }
    }

    fn algebra(&mut self) -> SpecResult<AlgebraDecl> {
        let name = self.name()?;
        self.word("over")?;
        let field = self.name()?;
        self.block_open()?;
        let mut decl = AlgebraDecl {
            name,
            field,
            basis: Vec::new(),
            unit: LinComb::default(),
            products: Vec::new(),
            default_zero: false,
            diffs: Vec::new(),
        };
        let mut unit_seen = false;
        loop {
            self.skip_semis();
            if self.is_sym('}') {
                self.at += 1;
                break;
            }
            let pos = self.pos();
            let w = self.name()?;
            match w.text.as_str() {
                "basis" => decl.basis.extend(self.basis_list()?),
                "unit" => {
                    decl.unit = self.lincomb()?;
                    unit_seen = true;
                }
                "mul" if self.is_word("default") => {
                    self.at += 1;
                    self.word("zero")?;
                    decl.default_zero = true;
                }
                "mul" => decl.products.push(self.product()?),
                "d" => decl.diffs.push(self.diff_rule()?),
                other => {
                    return Err(SpecError::new(
                        ErrorKind::Syntax,
                        pos,
                        format!("expected `basis`, `unit`, `mul`, `d` or `}}`, found `{other}`"),
                    ))
                }
            }
        }
        if !unit_seen {
            return Err(SpecError::new(ErrorKind::Syntax, decl.name.pos, "algebra has no `unit` statement"));
        }
        Ok(decl)
    }

    fn product(&mut self) -> SpecResult<Product> {
        let left = self.basis_name()?;
        self.sym('*')?;
        let right = self.basis_name()?;
        self.sym('=')?;
        let value = self.lincomb()?;
        Ok(Product { left, right, value })
    }

    fn diff_rule(&mut self) -> SpecResult<DiffRule> {
        let of = self.basis_name()?;
        self.sym('=')?;
        let value = self.lincomb()?;
        Ok(DiffRule { of, value })
    }

    fn module(&mut self) -> SpecResult<ModuleDecl> {
        let name = self.name()?;
        self.word("over")?;
        let algebra = self.name()?;
        self.block_open()?;
        let mut decl = ModuleDecl {
            name,
            algebra,
            basis: Vec::new(),
            actions: Vec::new(),
            default_zero: false,
            diffs: Vec::new(),
        };
        loop {
            self.skip_semis();
            if self.is_sym('}') {
                self.at += 1;
                break;
            }
            let pos = self.pos();
            let w = self.name()?;
            match w.text.as_str() {
                "basis" => decl.basis.extend(self.basis_list()?),
                "act" if self.is_word("default") => {
                    self.at += 1;
                    self.word("zero")?;
                    decl.default_zero = true;
                }
                "act" => decl.actions.push(self.product()?),
                "d" => decl.diffs.push(self.diff_rule()?),
                other => {
                    return Err(SpecError::new(
                        ErrorKind::Syntax,
                        pos,
                        format!("expected `basis`, `act`, `d` or `}}`, found `{other}`"),
                    ))
                }
            }
        }
        Ok(decl)
    }

    fn laurent(&mut self) -> SpecResult<LaurentDecl> {
        let name = self.name()?;
        self.block_open()?;
        let (mut r0, mut sigma, mut degree, mut dx) = (None, None, None, None);
        let mut dr0 = Vec::new();
        loop {
            self.skip_semis();
            if self.is_sym('}') {
                self.at += 1;
                break;
            }
            let pos = self.pos();
            let w = self.name()?;
            match w.text.as_str() {
                "r0" => {
                    if self.is_sym('=') {
                        self.at += 1;
                    }
                    r0 = Some(self.name()?);
                }
                "sigma" => {
                    if self.is_sym('=') {
                        self.at += 1;
                    }
                    sigma = Some(self.matrix()?);
                }
                "degX" => {
                    if self.is_sym('=') {
                        self.at += 1;
                    }
                    degree = Some(self.sint()?);
                }
                "dX" => {
                    if self.is_sym('=') {
                        self.at += 1;
                    }
                    dx = Some(self.laurent_expr()?);
                }
                "dr0" => {
                    let of = self.basis_name()?;
                    self.sym('=')?;
                    dr0.push((of, self.laurent_expr()?));
                }
                other => {
                    return Err(SpecError::new(
                        ErrorKind::Syntax,
                        pos,
                        format!("expected `r0`, `sigma`, `degX`, `dX`, `dr0` or `}}`, found `{other}`"),
                    ))
                }
            }
        }
        let missing = |what: &str| SpecError::new(ErrorKind::Syntax, name.pos, format!("laurent block lacks `{what}`"));
        Ok(LaurentDecl {
            r0: r0.ok_or_else(|| missing("r0"))?,
            sigma: sigma.ok_or_else(|| missing("sigma"))?,
            degree: degree.ok_or_else(|| missing("degX"))?,
            dx: dx.unwrap_or_default(),
            dr0,
            name,
        })
    }

    fn matrix(&mut self) -> SpecResult<Vec<Vec<String>>> {
        self.sym('[')?;
        let mut rows = Vec::new();
        loop {
            self.sym('[')?;
            let mut row = vec![self.signed_coef()?];
            while self.is_sym(',') {
                self.at += 1;
                row.push(self.signed_coef()?);
            }
            self.sym(']')?;
            rows.push(row);
            if self.is_sym(',') {
                self.at += 1;
            } else {
                break;
            }
        }
        self.sym(']')?;
        Ok(rows)
    }

    /// Leading sign handling shared by both kinds of linear combinations.
    fn sign(&mut self, first: bool) -> Option<bool> {
        match self.peek() {
            Some(Tok::Sym('+')) if !first => {
                self.at += 1;
                Some(false)
            }
            Some(Tok::Sym('-')) => {
                self.at += 1;
                Some(true)
            }
            _ if first => Some(false),
            _ => None,
        }
    }

    fn coef_then_name(&mut self, neg: bool) -> SpecResult<(String, Name)> {
        let coef = if matches!(self.peek(), Some(Tok::Int(_))) {
            let m = self.magnitude()?;
            self.sym('*')?;
            m
        } else {
            "1".to_string()
        };
        let basis = self.basis_name()?;
        Ok((if neg { format!("-{coef}") } else { coef }, basis))
    }

    fn is_zero_literal(&self) -> bool {
        self.peek() == Some(&Tok::Int("0".into())) && self.peek_at(1) != Some(&Tok::Sym('*'))
            && self.peek_at(1) != Some(&Tok::Sym('/'))
    }

    fn lincomb(&mut self) -> SpecResult<LinComb> {
        let pos = self.pos();
        if self.is_zero_literal() {
            self.at += 1;
            return Ok(LinComb { terms: Vec::new(), pos });
        }
        let mut terms = Vec::new();
        let mut first = true;
        while let Some(neg) = self.sign(first) {
            let (coef, basis) = self.coef_then_name(neg)?;
            terms.push(Term { coef, basis });
            first = false;
        }
        Ok(LinComb { terms, pos })
    }

    fn laurent_expr(&mut self) -> SpecResult<LaurentExpr> {
        let pos = self.pos();
        if self.is_zero_literal() {
            self.at += 1;
            return Ok(LaurentExpr { terms: Vec::new(), pos });
        }
        let mut terms = Vec::new();
        let mut first = true;
        while let Some(neg) = self.sign(first) {
            let (coef, basis) = self.coef_then_name(neg)?;
            let power = if self.is_sym('*') && matches!(self.peek_at(1), Some(Tok::Ident(x)) if x == "X") {
                self.at += 2;
                self.sym('^')?;
                self.sint()?
            } else {
                0
            };
            terms.push(LaurentTerm { coef, basis, power });
            first = false;
        }
        Ok(LaurentExpr { terms, pos })
    }

    fn call(&mut self) -> SpecResult<Call> {
        let op = self.name()?;
        self.sym('(')?;
        let mut args = Vec::new();
        if !self.is_sym(')') {
            loop {
                args.push(self.arg()?);
                if self.is_sym(',') {
                    self.at += 1;
                } else {
                    break;
                }
            }
        }
        self.sym(')')?;
        Ok(Call { op, args })
    }

    fn arg(&mut self) -> SpecResult<Arg> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(Arg::Str(s, pos))
            }
            Some(Tok::Sym('[')) => {
                self.at += 1;
                let mut items = Vec::new();
                if !self.is_sym(']') {
                    loop {
                        items.push(self.lincomb()?);
                        if self.is_sym(',') {
                            self.at += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.sym(']')?;
                Ok(Arg::List(items, pos))
            }
            _ => {
                let k = usize::from(self.is_sym('-'));
                let plain_int = matches!(self.peek_at(k), Some(Tok::Int(_)))
                    && !matches!(self.peek_at(k + 1), Some(Tok::Sym('*')) | Some(Tok::Sym('/')));
                if plain_int {
                    Ok(Arg::Int(self.sint()?, pos))
                } else {
                    let c = self.lincomb()?;
                    if c.terms.is_empty() {
                        return self.err(format!("expected an argument, found {}", self.describe()));
                    }
                    Ok(Arg::Comb(c))
                }
            }
        }
    }
}
