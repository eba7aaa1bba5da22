//! Writes library objects back out as declarations.

use dgkernel_core::catalog::{self, CatalogObject};
use dgkernel_core::dga::{DGAlgebra, LaurentElement, TwistedLaurentDGA};
use dgkernel_core::dgmod::DGModule;
use dgkernel_core::linalg::{FieldSpec, Scalar};

use crate::ast::*;
use crate::printer::print_spec;

fn lincomb(names: &[String], v: &[Scalar]) -> LinComb {
    let terms = names
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| Term { coef: c.to_string(), basis: Name::new(n.clone()) })
        .collect();
    LinComb { terms, pos: Pos::default() }
}

fn basis(names: &[String], degrees: &[i64]) -> Vec<BasisEntry> {
    names.iter().zip(degrees).map(|(n, &d)| BasisEntry { name: Name::new(n.clone()), degree: d }).collect()
}

fn unit_index(unit: &[Scalar]) -> Option<usize> {
    let nz: Vec<usize> = (0..unit.len()).filter(|&i| !unit[i].is_zero()).collect();
    match nz.as_slice() {
        [u] if unit[*u].is_one() => Some(*u),
        _ => None,
    }
}

fn is_basis(v: &[Scalar], i: usize) -> bool {
    v.iter().enumerate().all(|(k, c)| if k == i { c.is_one() } else { c.is_zero() })
}

pub fn field_decl(name: &str, f: FieldSpec) -> FieldDecl {
    let field = match f {
        FieldSpec::Rationals => FieldExpr::Rationals,
        FieldSpec::Prime(p) => FieldExpr::Prime(p),
    };
    FieldDecl { name: Name::new(name), field }
}

pub fn algebra_decl(name: &str, field: &str, a: &DGAlgebra) -> AlgebraDecl {
    let n = a.dim();
    let u = unit_index(a.unit());
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = a.product(i, j);
            let implied = (u == Some(i) && is_basis(v, j)) || (u == Some(j) && is_basis(v, i));
            if !implied && v.iter().any(|c| !c.is_zero()) {
                products.push(Product {
                    left: Name::new(a.names()[i].clone()),
                    right: Name::new(a.names()[j].clone()),
                    value: lincomb(a.names(), v),
                });
            }
        }
    }
    let diffs = (0..n)
        .filter(|&j| a.diff_of(j).iter().any(|c| !c.is_zero()))
        .map(|j| DiffRule { of: Name::new(a.names()[j].clone()), value: lincomb(a.names(), &a.diff_of(j)) })
        .collect();
    AlgebraDecl {
        name: Name::new(name),
        field: Name::new(field),
        basis: basis(a.names(), a.degrees()),
        unit: lincomb(a.names(), a.unit()),
        products,
        default_zero: true,
        diffs,
    }
}

pub fn module_decl(name: &str, algebra: &str, m: &DGModule) -> ModuleDecl {
    let a = m.algebra();
    let u = unit_index(a.unit());
    let mut actions = Vec::new();
    for (i, act) in m.action_matrices().iter().enumerate() {
        for j in 0..m.dim() {
            let v = act.column(j);
            if (u == Some(i) && is_basis(&v, j)) || v.iter().all(Scalar::is_zero) {
                continue;
            }
            actions.push(Product {
                left: Name::new(a.names()[i].clone()),
                right: Name::new(m.names()[j].clone()),
                value: lincomb(m.names(), &v),
            });
        }
    }
    let diffs = (0..m.dim())
        .filter_map(|j| {
            let v = m.delta().column(j);
            (!v.iter().all(Scalar::is_zero))
                .then(|| DiffRule { of: Name::new(m.names()[j].clone()), value: lincomb(m.names(), &v) })
        })
        .collect();
    ModuleDecl {
        name: Name::new(name),
        algebra: Name::new(algebra),
        basis: basis(m.names(), m.degrees()),
        actions,
        default_zero: true,
        diffs,
    }
}

fn laurent_expr(names: &[String], e: &LaurentElement) -> LaurentExpr {
    let mut terms = Vec::new();
    for (&k, r) in e.terms() {
        for (n, c) in names.iter().zip(r) {
            if !c.is_zero() {
                terms.push(LaurentTerm { coef: c.to_string(), basis: Name::new(n.clone()), power: k });
            }
        }
    }
    LaurentExpr { terms, pos: Pos::default() }
}

pub fn laurent_decl(name: &str, r0: &str, l: &TwistedLaurentDGA) -> LaurentDecl {
    let s = l.sigma();
    let names = l.r0().names();
    let sigma = (0..s.rows()).map(|r| (0..s.cols()).map(|c| s.get(r, c).to_string()).collect()).collect();
    let dr0 = names
        .iter()
        .zip(l.dr0())
        .filter(|(_, e)| !e.is_zero())
        .map(|(n, e)| (Name::new(n.clone()), laurent_expr(names, e)))
        .collect();
    LaurentDecl {
        name: Name::new(name),
        r0: Name::new(r0),
        sigma,
        degree: l.gen_degree(),
        dx: laurent_expr(names, l.dx()),
        dr0,
    }
}

/// Declarations reproducing the catalog entry `name` over `f`.
pub fn emit_catalog(name: &str, f: FieldSpec) -> Option<String> {
    let e = catalog::entry(name)?;
    let mut items = vec![Item::Field(field_decl("K", f))];
    match e.build(f) {
        CatalogObject::Algebra(a) => items.push(Item::Algebra(algebra_decl(e.name, "K", &a))),
        CatalogObject::Laurent(l) => {
            let r0 = format!("{}_R0", e.name);
            items.push(Item::Algebra(algebra_decl(&r0, "K", l.r0())));
            items.push(Item::Laurent(laurent_decl(e.name, &r0, &l)));
        }
        CatalogObject::Module(m) => {
            let base = format!("{}_A", e.name);
            items.push(Item::Algebra(algebra_decl(&base, "K", m.algebra())));
            items.push(Item::Module(module_decl(e.name, &base, &m)));
        }
    }
    Some(print_spec(&SpecFile { items }))
}
