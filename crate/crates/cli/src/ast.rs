//! Abstract syntax of `.dga` files.

use std::fmt;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A name with the place it was written. Positions are ignored by `==`.
#[derive(Clone, Debug, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

impl PartialEq for Name {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Name {
    pub fn new(text: impl Into<String>) -> Self {
        Name { text: text.into(), pos: Pos::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub items: Vec<Item>,
}

impl SpecFile {
    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.items.iter().filter_map(|i| match i {
            Item::Run(c) => Some(c),
            _ => None,
        })
    }

    pub fn declarations(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| !matches!(i, Item::Run(_)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Field(FieldDecl),
    Algebra(AlgebraDecl),
    Laurent(LaurentDecl),
    Module(ModuleDecl),
    Let(LetDecl),
    Run(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldExpr {
    Rationals,
    Prime(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDecl {
    pub name: Name,
    pub field: FieldExpr,
}

/// A coefficient as written (`3`, `-1/2`) times a basis name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: String,
    pub basis: Name,
}

/// Empty means zero. Positions are ignored by `==`.
#[derive(Clone, Debug, Default, Eq)]
pub struct LinComb {
    pub terms: Vec<Term>,
    pub pos: Pos,
}

impl PartialEq for LinComb {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisEntry {
    pub name: Name,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub left: Name,
    pub right: Name,
    pub value: LinComb,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRule {
    pub of: Name,
    pub value: LinComb,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDecl {
    pub name: Name,
    pub field: Name,
    pub basis: Vec<BasisEntry>,
    pub unit: LinComb,
    pub products: Vec<Product>,
    pub default_zero: bool,
    pub diffs: Vec<DiffRule>,
}

/// `coef * r * X^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTerm {
    pub coef: String,
    pub basis: Name,
    pub power: i64,
}

#[derive(Clone, Debug, Default, Eq)]
pub struct LaurentExpr {
    pub terms: Vec<LaurentTerm>,
    pub pos: Pos,
}

impl PartialEq for LaurentExpr {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentDecl {
    pub name: Name,
    pub r0: Name,
    /// Rows of coefficient literals.
    pub sigma: Vec<Vec<String>>,
    pub degree: i64,
    pub dx: LaurentExpr,
    pub dr0: Vec<(Name, LaurentExpr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: Name,
    pub algebra: Name,
    pub basis: Vec<BasisEntry>,
    pub actions: Vec<Product>,
    pub default_zero: bool,
    pub diffs: Vec<DiffRule>,
}

#[derive(Clone, Debug, Eq)]
pub enum Arg {
    Int(i64, Pos),
    Str(String, Pos),
    /// A name or a linear combination of basis names.
    Comb(LinComb),
    List(Vec<LinComb>, Pos),
}

impl PartialEq for Arg {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Arg::Int(a, _), Arg::Int(b, _)) => a == b,
            (Arg::Str(a, _), Arg::Str(b, _)) => a == b,
            (Arg::Comb(a), Arg::Comb(b)) => a == b,
            (Arg::List(a, _), Arg::List(b, _)) => a == b,
            _ => false,
        }
    }
}

impl Arg {
    pub fn pos(&self) -> Pos {
        match self {
            Arg::Int(_, p) | Arg::Str(_, p) | Arg::List(_, p) => *p,
            Arg::Comb(c) => c.pos,
        }
    }

    /// The single bare name this argument consists of, if any.
    pub fn as_name(&self) -> Option<&Name> {
        match self {
            Arg::Comb(c) if c.terms.len() == 1 && c.terms[0].coef == "1" => Some(&c.terms[0].basis),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub op: Name,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetDecl {
    pub name: Name,
    pub value: Call,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub call: Call,
    pub json: bool,
}
