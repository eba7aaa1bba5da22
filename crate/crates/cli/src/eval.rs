//! Turns declarations into algebras, modules and Laurent algebras.

use std::collections::{BTreeMap, HashMap};

use dgkernel_core::catalog::DEFAULT_WINDOW;
use dgkernel_core::dga::{laurent_window, DGAlgebra, LaurentElement, LaurentWindow, TwistedLaurentDGA};
use dgkernel_core::dgmod::DGModule;
use dgkernel_core::enumerate::DEFAULT_BUDGET;
use dgkernel_core::linalg::matrix::{unit_vec, zero_vec};
use dgkernel_core::linalg::{FieldSpec, Matrix, Scalar, Vector};

use crate::ast::*;
use crate::error::{ErrorKind, SpecError, SpecResult};

#[derive(Clone, Debug)]
pub enum Value {
    Field(FieldSpec),
    Algebra(DGAlgebra),
    Laurent(TwistedLaurentDGA),
    Module(DGModule),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Field(_) => "field",
            Value::Algebra(_) => "algebra",
            Value::Laurent(_) => "laurent algebra",
            Value::Module(_) => "module",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub budget: u64,
    pub window: (i64, i64),
}

impl Default for Options {
    fn default() -> Self {
        Options { budget: DEFAULT_BUDGET, window: DEFAULT_WINDOW }
    }
}

pub struct Session {
    pub options: Options,
    env: HashMap<String, Value>,
}

fn resolution(pos: Pos, message: impl Into<String>) -> SpecError {
    SpecError::new(ErrorKind::Resolution, pos, message)
}

pub fn scalar(f: FieldSpec, text: &str, pos: Pos) -> SpecResult<Scalar> {
    f.parse_scalar(text).map_err(|e| resolution(pos, format!("coefficient `{text}`: {e}")))
}

/// Coordinates of `c` on the basis `names`.
pub fn lincomb_vector(f: FieldSpec, names: &[String], c: &LinComb) -> SpecResult<Vector> {
    let mut v = zero_vec(f, names.len());
    for t in &c.terms {
        let i = names
            .iter()
            .position(|n| *n == t.basis.text)
            .ok_or_else(|| resolution(t.basis.pos, format!("unknown basis element `{}`", t.basis.text)))?;
        v[i] = &v[i] + &scalar(f, &t.coef, t.basis.pos)?;
    }
    Ok(v)
}

fn basis_of(entries: &[BasisEntry]) -> SpecResult<(Vec<String>, Vec<i64>)> {
    let mut names: Vec<String> = Vec::new();
    for b in entries {
        if names.contains(&b.name.text) {
            return Err(resolution(b.name.pos, format!("basis element `{}` declared twice", b.name.text)));
        }
        names.push(b.name.text.clone());
    }
    Ok((names, entries.iter().map(|b| b.degree).collect()))
}

fn index(names: &[String], n: &Name, what: &str) -> SpecResult<usize> {
    names
        .iter()
        .position(|x| *x == n.text)
        .ok_or_else(|| resolution(n.pos, format!("unknown {what} basis element `{}`", n.text)))
}

/// The basis index `u` when the unit is exactly the basis vector `u`.
fn unit_index(unit: &[Scalar]) -> Option<usize> {
    let nonzero: Vec<usize> = (0..unit.len()).filter(|&i| !unit[i].is_zero()).collect();
    match nonzero.as_slice() {
        [u] if unit[*u].is_one() => Some(*u),
        _ => None,
    }
}

fn diff_matrix(f: FieldSpec, names: &[String], diffs: &[DiffRule]) -> SpecResult<Matrix> {
    let n = names.len();
    let mut cols: Vec<Option<Vector>> = vec![None; n];
    for rule in diffs {
        let j = index(names, &rule.of, "a")?;
        if cols[j].is_some() {
            return Err(resolution(rule.of.pos, format!("d {} given twice", rule.of.text)));
        }
        cols[j] = Some(lincomb_vector(f, names, &rule.value)?);
    }
    let cols: Vec<Vector> = cols.into_iter().map(|c| c.unwrap_or_else(|| zero_vec(f, n))).collect();
    Ok(Matrix::from_columns(f, n, &cols))
}

impl Session {
    pub fn new(options: Options) -> Self {
        Session { options, env: HashMap::new() }
    }

    pub fn budget(&self) -> dgkernel_core::enumerate::Budget {
        dgkernel_core::enumerate::Budget::new(self.options.budget)
    }

    pub fn get(&self, n: &Name) -> SpecResult<&Value> {
        self.env.get(&n.text).ok_or_else(|| resolution(n.pos, format!("unknown name `{}`", n.text)))
    }

    pub fn bind(&mut self, n: &Name, v: Value) -> SpecResult<()> {
        if self.env.contains_key(&n.text) {
            return Err(resolution(n.pos, format!("`{}` is already defined", n.text)));
        }
        self.env.insert(n.text.clone(), v);
        Ok(())
    }

    pub fn names(&self) -> BTreeMap<&str, &'static str> {
        self.env.iter().map(|(k, v)| (k.as_str(), v.kind())).collect()
    }

    pub fn window(&self, l: &TwistedLaurentDGA, pos: Pos) -> SpecResult<LaurentWindow> {
        let (lo, hi) = self.options.window;
        laurent_window(l, lo, hi).map_err(|e| SpecError::from_core(pos, e))
    }

    pub fn field(&self, n: &Name) -> SpecResult<FieldSpec> {
        match self.get(n)? {
            Value::Field(f) => Ok(*f),
            v => Err(resolution(n.pos, format!("`{}` is a {}, not a field", n.text, v.kind()))),
        }
    }

    pub fn algebra(&self, n: &Name) -> SpecResult<&DGAlgebra> {
        match self.get(n)? {
            Value::Algebra(a) => Ok(a),
            v => Err(resolution(n.pos, format!("`{}` is a {}, not an algebra", n.text, v.kind()))),
        }
    }

    /// Adds a `field`, `algebra`, `laurent` or `module` declaration.
    pub fn declare(&mut self, item: &Item) -> SpecResult<()> {
        match item {
            Item::Field(d) => {
                let f = match d.field {
                    FieldExpr::Rationals => FieldSpec::Rationals,
                    FieldExpr::Prime(p) => FieldSpec::prime(p).map_err(|e| resolution(d.name.pos, e.to_string()))?,
                };
                self.bind(&d.name, Value::Field(f))
            }
            Item::Algebra(d) => {
                let a = self.build_algebra(d)?;
                self.bind(&d.name, Value::Algebra(a))
            }
            Item::Laurent(d) => {
                let l = self.build_laurent(d)?;
                self.bind(&d.name, Value::Laurent(l))
            }
            Item::Module(d) => {
                let m = self.build_module(d)?;
                self.bind(&d.name, Value::Module(m))
            }
            Item::Let(_) | Item::Run(_) => Ok(()),
        }
    }

    pub fn build_algebra(&self, d: &AlgebraDecl) -> SpecResult<DGAlgebra> {
        let f = self.field(&d.field)?;
        let (names, degrees) = basis_of(&d.basis)?;
        let n = names.len();
        let unit = lincomb_vector(f, &names, &d.unit)?;
        let mut table: Vec<Vec<Option<Vector>>> = vec![vec![None; n]; n];
        for p in &d.products {
            let i = index(&names, &p.left, "a")?;
            let j = index(&names, &p.right, "a")?;
            if table[i][j].is_some() {
                return Err(resolution(p.left.pos, format!("product {}*{} given twice", p.left.text, p.right.text)));
            }
            table[i][j] = Some(lincomb_vector(f, &names, &p.value)?);
        }
        let u = unit_index(&unit);
        let mut mul = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let v = match table[i][j].take() {
                    Some(v) => v,
                    None if u == Some(i) => unit_vec(f, n, j),
                    None if u == Some(j) => unit_vec(f, n, i),
                    None if d.default_zero => zero_vec(f, n),
                    None => {
                        return Err(resolution(
                            d.name.pos,
                            format!(
                                "algebra `{}` lacks the product {}*{} (declare it or add `mul default zero`)",
                                d.name.text, names[i], names[j]
                            ),
                        ))
                    }
                };
                row.push(v);
            }
            mul.push(row);
        }
        let diff = diff_matrix(f, &names, &d.diffs)?;
        DGAlgebra::new(f, names, degrees, unit, mul, diff).map_err(|e| resolution(d.name.pos, e.to_string()))
    }

    pub fn build_laurent(&self, d: &LaurentDecl) -> SpecResult<TwistedLaurentDGA> {
        let r0 = self.algebra(&d.r0)?.clone();
        let f = r0.field();
        let n = r0.dim();
        if d.sigma.len() != n || d.sigma.iter().any(|r| r.len() != n) {
            return Err(resolution(d.name.pos, format!("sigma must be {n}x{n}")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in &d.sigma {
            for c in row {
                entries.push(scalar(f, c, d.name.pos)?);
            }
        }
        let sigma = Matrix::from_entries(f, n, n, entries);
        let element = |e: &LaurentExpr| -> SpecResult<LaurentElement> {
            let mut out = LaurentElement::zero();
            for t in &e.terms {
                let i = index(r0.names(), &t.basis, "an R0")?;
                let c = scalar(f, &t.coef, t.basis.pos)?;
                let mut r = zero_vec(f, n);
                r[i] = c;
                out = out.add(&LaurentElement::monomial(r, t.power));
            }
            Ok(out)
        };
        let dx = element(&d.dx)?;
        let dr0 = if d.dr0.is_empty() {
            Vec::new()
        } else {
            let mut vals = vec![LaurentElement::zero(); n];
            for (of, e) in &d.dr0 {
                let i = index(r0.names(), of, "an R0")?;
                vals[i] = element(e)?;
            }
            vals
        };
        TwistedLaurentDGA::new(r0, sigma, d.degree, dx, dr0).map_err(|e| resolution(d.name.pos, e.to_string()))
    }

    pub fn build_module(&self, d: &ModuleDecl) -> SpecResult<DGModule> {
        let a = self.algebra(&d.algebra)?.clone();
        let f = a.field();
        let (names, degrees) = basis_of(&d.basis)?;
        let n = names.len();
        let mut table: Vec<Vec<Option<Vector>>> = vec![vec![None; n]; a.dim()];
        for p in &d.actions {
            let i = index(a.names(), &p.left, "an algebra")?;
            let j = index(&names, &p.right, "a module")?;
            if table[i][j].is_some() {
                return Err(resolution(p.left.pos, format!("action {}*{} given twice", p.left.text, p.right.text)));
            }
            table[i][j] = Some(lincomb_vector(f, &names, &p.value)?);
        }
        let u = unit_index(a.unit());
        let mut action = Vec::with_capacity(a.dim());
        for i in 0..a.dim() {
            let mut cols = Vec::with_capacity(n);
            for j in 0..n {
                let v = match table[i][j].take() {
                    Some(v) => v,
                    None if u == Some(i) => unit_vec(f, n, j),
                    None if d.default_zero => zero_vec(f, n),
                    None => {
                        return Err(resolution(
                            d.name.pos,
                            format!(
                                "module `{}` lacks the action {}*{} (declare it or add `act default zero`)",
                                d.name.text,
                                a.names()[i],
                                names[j]
                            ),
                        ))
                    }
                };
                cols.push(v);
            }
            action.push(Matrix::from_columns(f, n, &cols));
        }
        let delta = diff_matrix(f, &names, &d.diffs)?;
        DGModule::new(a, names, degrees, action, delta).map_err(|e| resolution(d.name.pos, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_spec;
    use dgkernel_core::catalog::dual;
    use dgkernel_core::dga::validate_dga;

    fn session(text: &str) -> SpecResult<Session> {
        let spec = parse_spec(text)?;
        let mut s = Session::new(Options::default());
        for item in spec.declarations() {
            s.declare(item)?;
        }
        Ok(s)
    }

    #[test]
    fn dual_matches_constructor() {
        let s = session(
            "field K = Q
algebra DUAL over K { basis one:0, eps:-1; unit one; mul eps*eps = 0; d eps = one }",
        )
        .unwrap();
        let a = s.algebra(&Name::new("DUAL")).unwrap();
        assert!(validate_dga(a).passed());
        assert_eq!(a, &dual(FieldSpec::Rationals));
    }

    #[test]
    fn missing_product_is_named() {
        let e = session(
            "field K = Fp(2)
algebra A over K { basis one:0, e1:0; unit one; mul one*e1 = e1 }",
        )
        .err()
        .unwrap();
        assert_eq!(e.kind, ErrorKind::Resolution);
        assert!(e.message.contains("e1*e1"), "{}", e.message);
        assert_eq!(e.pos, Pos { line: 2, col: 9 });
    }

    #[test]
    fn unknown_names_are_located() {
        let e = session("field K = Q\nalgebra A over L { basis one:0; unit one }").err().unwrap();
        assert_eq!(e.pos, Pos { line: 2, col: 16 });
        let e = session("field K = Q\nalgebra A over K { basis one:0; unit one; d one = two }").err().unwrap();
        assert!(e.message.contains("`two`"));
        let e = session("field K = Q\nfield K = Q").err().unwrap();
        assert!(e.message.contains("already defined"));
    }

    #[test]
    fn modules_and_laurent() {
        let s = session(
            "field K = Fp(3)
algebra R over K { basis one:0; unit one }
laurent L { r0 = R; sigma = [[1]]; degX = -1; dX = one*X^0 }
module M over R { basis a:0, b:1; d a = b }",
        )
        .unwrap();
        assert!(matches!(s.get(&Name::new("L")).unwrap(), Value::Laurent(_)));
        let Value::Module(m) = s.get(&Name::new("M")).unwrap() else { panic!() };
        assert_eq!(m.dim(), 2);
        assert!(dgkernel_core::dgmod::validate_module(m).passed());
    }
}
