//! Canonical text for a parsed file. `parse_spec(&print_spec(s))` gives back `s`.

use std::fmt::Write;

use crate::ast::*;

pub fn print_spec(s: &SpecFile) -> String {
    let mut out = String::new();
    for (k, item) in s.items.iter().enumerate() {
        let block = matches!(item, Item::Algebra(_) | Item::Laurent(_) | Item::Module(_));
        if k > 0 && block {
            out.push('\n');
        }
        out.push_str(&print_item(item));
        out.push('\n');
    }
    out
}

pub fn print_item(item: &Item) -> String {
    match item {
        Item::Field(f) => match f.field {
            FieldExpr::Rationals => format!("field {} = Q", f.name.text),
            FieldExpr::Prime(p) => format!("field {} = Fp({p})", f.name.text),
        },
        Item::Algebra(a) => {
            let mut s = format!("algebra {} over {} {{\n", a.name.text, a.field.text);
            basis_line(&mut s, &a.basis);
            let _ = writeln!(s, "  unit {}", print_lincomb(&a.unit));
            for p in &a.products {
                let _ = writeln!(s, "  mul {}*{} = {}", p.left.text, p.right.text, print_lincomb(&p.value));
            }
            if a.default_zero {
                s.push_str("  mul default zero\n");
            }
            diff_lines(&mut s, &a.diffs);
            s.push('}');
            s
        }
        Item::Laurent(l) => {
            let mut s = format!("laurent {} {{\n", l.name.text);
            let _ = writeln!(s, "  r0 = {}", l.r0.text);
            let rows: Vec<String> = l.sigma.iter().map(|r| format!("[{}]", r.join(", "))).collect();
            let _ = writeln!(s, "  sigma = [{}]", rows.join(", "));
            let _ = writeln!(s, "  degX = {}", l.degree);
            let _ = writeln!(s, "  dX = {}", print_laurent(&l.dx));
            for (of, e) in &l.dr0 {
                let _ = writeln!(s, "  dr0 {} = {}", of.text, print_laurent(e));
            }
            s.push('}');
            s
        }
        Item::Module(m) => {
            let mut s = format!("module {} over {} {{\n", m.name.text, m.algebra.text);
            basis_line(&mut s, &m.basis);
            for p in &m.actions {
                let _ = writeln!(s, "  act {}*{} = {}", p.left.text, p.right.text, print_lincomb(&p.value));
            }
            if m.default_zero {
                s.push_str("  act default zero\n");
            }
            diff_lines(&mut s, &m.diffs);
            s.push('}');
            s
        }
        Item::Let(l) => format!("let {} = {}", l.name.text, print_call(&l.value)),
        Item::Run(c) => {
            let mut s = format!("run {}", print_call(&c.call));
            if c.json {
                s.push_str(" --json");
            }
            s
        }
    }
}

fn basis_line(s: &mut String, basis: &[BasisEntry]) {
    if !basis.is_empty() {
        let entries: Vec<String> = basis.iter().map(|b| format!("{}:{}", b.name.text, b.degree)).collect();
        let _ = writeln!(s, "  basis {}", entries.join(", "));
    }
}

fn diff_lines(s: &mut String, diffs: &[DiffRule]) {
    for d in diffs {
        let _ = writeln!(s, "  d {} = {}", d.of.text, print_lincomb(&d.value));
    }
}

/// `coef` as written, with the sign split off.
fn signed(coef: &str) -> (bool, &str) {
    match coef.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, coef),
    }
}

fn join_terms(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (neg, body)) in parts.into_iter().enumerate() {
        match (k, neg) {
            (0, false) => {}
            (0, true) => s.push('-'),
            (_, false) => s.push_str(" + "),
            (_, true) => s.push_str(" - "),
        }
        s.push_str(&body);
    }
    s
}

pub fn print_lincomb(c: &LinComb) -> String {
    join_terms(
        c.terms
            .iter()
            .map(|t| {
                let (neg, mag) = signed(&t.coef);
                let body = if mag == "1" { t.basis.text.clone() } else { format!("{mag}*{}", t.basis.text) };
                (neg, body)
            })
            .collect(),
    )
}

pub fn print_laurent(e: &LaurentExpr) -> String {
    join_terms(
        e.terms
            .iter()
            .map(|t| {
                let (neg, mag) = signed(&t.coef);
                let head = if mag == "1" { t.basis.text.clone() } else { format!("{mag}*{}", t.basis.text) };
                (neg, format!("{head}*X^{}", t.power))
            })
            .collect(),
    )
}

pub fn print_arg(a: &Arg) -> String {
    match a {
        Arg::Int(n, _) => n.to_string(),
        Arg::Str(s, _) => format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
        Arg::Comb(c) => print_lincomb(c),
        Arg::List(items, _) => {
            let parts: Vec<String> = items.iter().map(print_lincomb).collect();
            format!("[{}]", parts.join(", "))
        }
    }
}

pub fn print_call(c: &Call) -> String {
    let args: Vec<String> = c.args.iter().map(print_arg).collect();
    format!("{}({})", c.op.text, args.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_spec;

    #[test]
    fn round_trip() {
        let text = "field K = Fp(3)
algebra A over K { basis one:0, x:2; unit one; mul x*x = 0; mul default zero; d x = 0 }
laurent L { r0 = R; sigma = [[1, 0], [-1/2, 1]]; degX = -1; dX = one*X^0 - 2/3*u*X^-2 }
module M over A { basis m:0; act x*m = 0; d m = 0 }
let B = tensor_over_base(A, A)
run density_solve(M, [m, -m + 2*m], [0], \"a\\\"b\", -3) --json
";
        let s = parse_spec(text).unwrap();
        let printed = print_spec(&s);
        assert_eq!(parse_spec(&printed).unwrap(), s);
        assert_eq!(print_spec(&parse_spec(&printed).unwrap()), printed);
    }

    #[test]
    fn lincomb_forms() {
        let s = parse_spec("run f(-a + 2*b - 1/2*c)").unwrap();
        let c = s.commands().next().unwrap();
        assert_eq!(print_arg(&c.call.args[0]), "-a + 2*b - 1/2*c");
    }
}
