//! Dispatches a call to the library and packages the result as a [`Report`].

use serde_json::{json, Value as Json};

use dgkernel_core::catalog::{self, CatalogObject};
use dgkernel_core::dga::{
    cycles_algebra, graded_center, homology_algebra, laurent_window, opposite_algebra, tensor_over_base,
    tensor_over_central, validate_dga, validate_table, CentralPair, DGAlgebra, LaurentElement, LaurentWindow,
    TwistedLaurentDGA, ValidationReport,
};
use dgkernel_core::dgmod::{
    annihilator, direct_sum, end_algebra, extend_scalars, faithful_embedding, free_basis, hom_complex,
    induce_functor, induction_round_trip, quotient_module, regular_module, shift_module, submodule,
    submodule_closure, submodule_rank_compare, validate_module, z_functor, DGModule, ModuleValidation,
};
use dgkernel_core::linalg::matrix::zero_vec;
use dgkernel_core::linalg::{kernel_and_image, FieldSpec, GradedSubspace, Scalar, Vector};
use dgkernel_core::report::{dims_json, matrix_json, subspace_json, vector_json, Report};
use dgkernel_core::structure::*;
use dgkernel_core::Result as CoreResult;

use crate::ast::{Arg, Call, Name, Pos};
use crate::error::{ErrorKind, SpecError, SpecResult};
use crate::eval::{lincomb_vector, Session, Value};
use crate::printer::print_arg;

/// A report, plus the object built when the operation is a constructor.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub value: Option<Value>,
}

/// Every operation name understood by `run` and `let`.
pub const OPERATIONS: &[&str] = &[
    "acyclic_decomposition",
    "acyclic_tensor_check",
    "annihilator",
    "catalog",
    "classify_dg_division",
    "cycles_algebra",
    "cycles_of_tensor_check",
    "d_independent",
    "density_solve",
    "dg_ideal_generate",
    "differentiate",
    "direct_sum",
    "end_algebra",
    "extend_scalars",
    "faithful_embedding",
    "find_simple_faithful",
    "free_basis",
    "graded_center",
    "graded_center_division_check",
    "hom_complex",
    "homology",
    "homology_algebra",
    "homology_of_division",
    "induce_functor",
    "induction_round_trip",
    "inject_alarm",
    "is_acyclic",
    "is_dg_division",
    "is_dg_prime",
    "is_dg_simple_algebra",
    "is_dg_simple_module",
    "is_gr_division",
    "is_semisimple_category",
    "kernel_and_image",
    "laurent_window",
    "matrix_decomposition",
    "multiply",
    "opposite_algebra",
    "quotient_module",
    "regular_module",
    "regularity_condition",
    "shift_module",
    "skew_presentation",
    "submodule",
    "submodule_closure",
    "submodule_rank_compare",
    "tensor_of_divisions_simplicity",
    "tensor_over_base",
    "tensor_over_central",
    "validate_dga",
    "validate_module",
    "z_functor",
];

enum Alg<'a> {
    Fin(&'a DGAlgebra),
    Lau(&'a TwistedLaurentDGA),
}

struct Ctx<'a> {
    s: &'a Session,
    call: &'a Call,
}

fn lincomb_text(names: &[String], v: &[Scalar]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| if c.is_one() { n.clone() } else { format!("{c}*{n}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn element_json(names: &[String], v: &[Scalar]) -> Json {
    json!({"text": lincomb_text(names, v), "vector": vector_json(v)})
}

fn laurent_json(l: &TwistedLaurentDGA, e: &LaurentElement) -> Json {
    let terms: Vec<Json> = e
        .terms()
        .iter()
        .map(|(k, r)| json!({"power": k, "coefficient": element_json(l.r0().names(), r)}))
        .collect();
    Json::Array(terms)
}

fn basis_json(names: &[String], degrees: &[i64]) -> Json {
    Json::Array(names.iter().zip(degrees).map(|(n, d)| json!({"name": n, "degree": d})).collect())
}

fn carrier_json(names: &[String], s: &GradedSubspace) -> Json {
    let mut j = subspace_json(s);
    let texts: Vec<String> = s.basis().iter().map(|v| lincomb_text(names, v)).collect();
    j["text"] = json!(texts);
    j
}

fn validation_json(r: &ValidationReport) -> Json {
    json!(r.failures.iter().map(|f| json!({"axiom": f.axiom.name(), "indices": f.indices, "detail": f.detail})).collect::<Vec<_>>())
}

fn module_validation_json(r: &ModuleValidation) -> Json {
    json!(r.failures.iter().map(|f| json!({"axiom": f.axiom.name(), "indices": f.indices, "detail": f.detail})).collect::<Vec<_>>())
}

fn witness_json(names: &[String], w: &ProperWitness) -> Json {
    json!({
        "degree": w.degree,
        "generator": element_json(names, &w.generator),
        "ideal": carrier_json(names, &w.carrier),
    })
}

fn search_json(names: &[String], s: &IdealSearch) -> Json {
    json!({
        "side": s.side.name(),
        "trivial": s.trivial,
        "checked": s.checked,
        "witness": s.witness.as_ref().map(|w| witness_json(names, w)),
    })
}

fn gr_json(names: &[String], g: &GrDivisionVerdict) -> Json {
    json!({
        "gr_division": g.gr_division,
        "route": serde_json::to_value(g.route).expect("enum serializes"),
        "checked": g.checked,
        "witness": g.witness.as_ref().map(|(d, v)| json!({"degree": d, "element": element_json(names, v)})),
        "note": g.note,
    })
}

fn shape_json(shape: &CyclesShape, laurent: Option<&TwistedLaurentDGA>) -> Json {
    match shape {
        CyclesShape::DegreeZeroDivision => json!({"shape": shape.name()}),
        CyclesShape::TwistedLaurent { generator, degree, sigma, sigma_is_identity } => json!({
            "shape": shape.name(),
            "generator": laurent.map(|l| laurent_json(l, generator)).unwrap_or_else(|| {
                json!(generator.terms().iter().map(|(k, r)| json!({"power": k, "coefficient": vector_json(r)})).collect::<Vec<_>>())
            }),
            "generator_degree": degree,
            "sigma": matrix_json(sigma),
            "sigma_is_identity": sigma_is_identity,
        }),
    }
}

/// `cycle_names` names the basis of the cycles algebra, where the cycles witness lives.
fn division_verdict(r: &mut Report, names: &[String], cycle_names: &[String], v: &DivisionVerdict) {
    r.check("regularity", json!({"holds": v.regularity.holds, "justification": v.regularity.justification}));
    r.check("cycles_gr_division", v.cycles.gr_division);
    let enumeration = json!({
        "left": v.left.as_ref().map(|s| search_json(names, s)),
        "right": v.right.as_ref().map(|s| search_json(names, s)),
    });
    r.certificate("ideal_enumeration", enumeration);
    r.certificate("cycles_criterion", gr_json(cycle_names, &v.cycles));
    for n in &v.notes {
        r.note(n.clone());
    }
    let sides: Vec<bool> = [&v.left, &v.right].iter().filter_map(|s| s.as_ref().map(|s| s.trivial)).collect();
    if sides.iter().any(|&t| t != v.cycles.gr_division) {
        r.alarm("ideal enumeration and the cycles criterion disagree");
    }
}

impl<'a> Ctx<'a> {
    fn op(&self) -> &str {
        &self.call.op.text
    }

    fn pos(&self) -> Pos {
        self.call.op.pos
    }

    fn report(&self) -> Report {
        let inputs: Vec<String> = self.call.args.iter().map(print_arg).collect();
        let refs: Vec<&str> = inputs.iter().map(String::as_str).collect();
        Report::new(self.op(), &refs)
    }

    fn core<T>(&self, r: CoreResult<T>) -> SpecResult<T> {
        r.map_err(|e| {
            let mut err = SpecError::from_core(self.pos(), e);
            err.message = format!("{}: {}", self.op(), err.message);
            err
        })
    }

    fn fail<T>(&self, kind: ErrorKind, pos: Pos, msg: impl Into<String>) -> SpecResult<T> {
        Err(SpecError::new(kind, pos, format!("{}: {}", self.op(), msg.into())))
    }

    fn arity(&self, lo: usize, hi: usize) -> SpecResult<()> {
        let n = self.call.args.len();
        if n < lo || n > hi {
            let want = if lo == hi { format!("{lo}") } else { format!("{lo} to {hi}") };
            return self.fail(ErrorKind::Arity, self.pos(), format!("expects {want} arguments, got {n}"));
        }
        Ok(())
    }

    fn arg(&self, k: usize) -> Option<&'a Arg> {
        self.call.args.get(k)
    }

    fn name(&self, k: usize) -> SpecResult<&'a Name> {
        let a = &self.call.args[k];
        a.as_name()
            .ok_or_else(|| SpecError::new(ErrorKind::Arity, a.pos(), format!("{}: argument {} must be a name", self.op(), k + 1)))
    }

    fn value(&self, k: usize) -> SpecResult<&'a Value> {
        self.s.get(self.name(k)?)
    }

    fn kind_error<T>(&self, k: usize, want: &str) -> SpecResult<T> {
        let got = self.value(k).map(|v| v.kind()).unwrap_or("value");
        self.fail(ErrorKind::Arity, self.call.args[k].pos(), format!("argument {} must be {want}, got a {got}", k + 1))
    }

    fn raw_algebra(&self, k: usize) -> SpecResult<&'a DGAlgebra> {
        match self.value(k)? {
            Value::Algebra(a) => Ok(a),
            _ => self.kind_error(k, "an algebra"),
        }
    }

    /// An algebra that passes validation.
    fn algebra(&self, k: usize) -> SpecResult<&'a DGAlgebra> {
        let a = self.raw_algebra(k)?;
        let v = validate_dga(a);
        if !v.passed() {
            let axioms: Vec<&str> = v.failed_axioms().iter().map(|x| x.name()).collect();
            return self.fail(
                ErrorKind::Operation,
                self.call.args[k].pos(),
                format!("`{}` is not a dg-algebra (fails {})", self.name(k)?.text, axioms.join(", ")),
            );
        }
        Ok(a)
    }

    fn any_algebra(&self, k: usize) -> SpecResult<Alg<'a>> {
        match self.value(k)? {
            Value::Algebra(_) => Ok(Alg::Fin(self.algebra(k)?)),
            Value::Laurent(l) => Ok(Alg::Lau(l)),
            _ => self.kind_error(k, "an algebra"),
        }
    }

    fn window(&self, l: &TwistedLaurentDGA) -> SpecResult<LaurentWindow> {
        self.s.window(l, self.pos())
    }

    fn raw_module(&self, k: usize) -> SpecResult<&'a DGModule> {
        match self.value(k)? {
            Value::Module(m) => Ok(m),
            _ => self.kind_error(k, "a module"),
        }
    }

    fn module(&self, k: usize) -> SpecResult<&'a DGModule> {
        let m = self.raw_module(k)?;
        let v = validate_module(m);
        if !v.passed() {
            let axioms: Vec<&str> = v.failed_axioms().iter().map(|x| x.name()).collect();
            return self.fail(
                ErrorKind::Operation,
                self.call.args[k].pos(),
                format!("`{}` is not a dg-module (fails {})", self.name(k)?.text, axioms.join(", ")),
            );
        }
        Ok(m)
    }

    fn int(&self, k: usize) -> SpecResult<i64> {
        match &self.call.args[k] {
            Arg::Int(n, _) => Ok(*n),
            a => self.fail(ErrorKind::Arity, a.pos(), format!("argument {} must be an integer", k + 1)),
        }
    }

    fn string(&self, k: usize) -> SpecResult<&'a str> {
        match &self.call.args[k] {
            Arg::Str(s, _) => Ok(s),
            Arg::Comb(_) if self.call.args[k].as_name().is_some() => Ok(&self.call.args[k].as_name().unwrap().text),
            a => self.fail(ErrorKind::Arity, a.pos(), format!("argument {} must be a string", k + 1)),
        }
    }

    fn element(&self, k: usize, f: FieldSpec, names: &[String]) -> SpecResult<Vector> {
        match &self.call.args[k] {
            Arg::Int(0, _) => Ok(zero_vec(f, names.len())),
            Arg::Comb(c) => lincomb_vector(f, names, c),
            a => self.fail(ErrorKind::Arity, a.pos(), format!("argument {} must be an element", k + 1)),
        }
    }

    fn elements(&self, k: usize, f: FieldSpec, names: &[String]) -> SpecResult<Vec<Vector>> {
        match &self.call.args[k] {
            Arg::List(items, _) => items.iter().map(|c| lincomb_vector(f, names, c)).collect(),
            a => self.fail(ErrorKind::Arity, a.pos(), format!("argument {} must be a list of elements", k + 1)),
        }
    }

    fn side(&self, k: usize) -> SpecResult<Side> {
        match self.string(k)? {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "twosided" | "two_sided" | "both" => Ok(Side::TwoSided),
            other => self.fail(ErrorKind::Arity, self.call.args[k].pos(), format!("unknown side `{other}`")),
        }
    }

    fn field_arg(&self, k: usize) -> SpecResult<FieldSpec> {
        if let Arg::Comb(_) = &self.call.args[k] {
            let n = self.name(k)?;
            if let Ok(Value::Field(f)) = self.s.get(n) {
                return Ok(*f);
            }
            if n.text == "Q" {
                return Ok(FieldSpec::Rationals);
            }
        }
        self.fail(ErrorKind::Arity, self.call.args[k].pos(), format!("argument {} must be a field", k + 1))
    }

    /// The explicit witness in argument `k`, or the one found by `is_acyclic`.
    fn witness(&self, a: &DGAlgebra, k: usize) -> SpecResult<Vector> {
        if self.arg(k).is_some() {
            return self.element(k, a.field(), a.names());
        }
        match self.core(acyclicity_witness(a))? {
            Some(w) => Ok(w.y),
            None => self.fail(ErrorKind::Operation, self.pos(), "the algebra is not acyclic (1 is not a boundary)"),
        }
    }

    fn pair(&self, a: &DGAlgebra, b: &DGAlgebra, k: usize) -> SpecResult<Option<CentralPair>> {
        let mode = if self.arg(k).is_some() { self.string(k)? } else { "base" };
        match mode {
            "base" | "K" => Ok(None),
            "center" => {
                if a != b {
                    return self.fail(ErrorKind::Operation, self.pos(), "tensoring over the graded center needs A = B");
                }
                Ok(Some(self.core(CentralPair::graded_center_of(a))?))
            }
            other => self.fail(ErrorKind::Arity, self.call.args[k].pos(), format!("unknown base `{other}`")),
        }
    }
}

fn algebra_summary(r: &mut Report, a: &DGAlgebra) {
    r.check("dim", a.dim());
    r.check("dims", dims_json(&a.space().dims()));
    r.witness("basis", basis_json(a.names(), a.degrees()));
    let v = validate_dga(a);
    r.check("valid", v.passed());
    if !v.passed() {
        r.witness("validation_failures", validation_json(&v));
        r.alarm("constructed algebra fails validate_dga");
    }
}

fn module_summary(r: &mut Report, m: &DGModule) {
    r.check("dim", m.dim());
    r.check("dims", dims_json(&m.space().dims()));
    r.witness("basis", basis_json(m.names(), m.degrees()));
    let v = validate_module(m);
    r.check("valid", v.passed());
    if !v.passed() {
        r.witness("validation_failures", module_validation_json(&v));
        r.alarm("constructed module fails validate_module");
    }
}

fn constructed_algebra(c: &Ctx, a: DGAlgebra) -> Outcome {
    let mut r = c.report().verdict("constructed");
    algebra_summary(&mut r, &a);
    Outcome { report: r, value: Some(Value::Algebra(a)) }
}

fn constructed_module(c: &Ctx, m: DGModule) -> Outcome {
    let mut r = c.report().verdict("constructed");
    module_summary(&mut r, &m);
    Outcome { report: r, value: Some(Value::Module(m)) }
}

fn report_only(r: Report) -> SpecResult<Outcome> {
    Ok(Outcome { report: r, value: None })
}

/// Runs `call` against the declarations in `s`.
pub fn apply(s: &Session, call: &Call) -> SpecResult<Outcome> {
    let c = Ctx { s, call };
    let mut budget = s.budget();
    let budget = &mut budget;
    match c.op() {
        "inject_alarm" => {
            c.arity(0, 1)?;
            let msg = if c.arg(0).is_some() { c.string(0)?.to_string() } else { "injected alarm".to_string() };
            let mut r = c.report().verdict("alarm");
            r.alarm(msg);
            report_only(r)
        }
        "catalog" => {
            c.arity(1, 2)?;
            let n = c.name(0)?;
            let f = if c.arg(1).is_some() { c.field_arg(1)? } else { FieldSpec::Rationals };
            let e = catalog::entry(&n.text)
                .ok_or_else(|| SpecError::new(ErrorKind::Resolution, n.pos, format!("no catalog entry `{}`", n.text)))?;
            let mut out = match e.build(f) {
                CatalogObject::Algebra(a) => constructed_algebra(&c, a),
                CatalogObject::Module(m) => constructed_module(&c, m),
                CatalogObject::Laurent(l) => {
                    let mut r = c.report().verdict("constructed");
                    let w = c.window(&l)?;
                    laurent_summary(&mut r, &w);
                    Outcome { report: r, value: Some(Value::Laurent(l)) }
                }
            };
            out.report.note(format!("{}: {}", e.name, e.description));
            Ok(out)
        }
        "validate_dga" => {
            c.arity(1, 1)?;
            let (v, dim) = match c.value(0)? {
                Value::Algebra(a) => (validate_dga(a), a.dim()),
                Value::Laurent(l) => {
                    let w = c.window(l)?;
                    (validate_table(&w), w.basis().len())
                }
                _ => return c.kind_error(0, "an algebra"),
            };
            let mut r = c.report().verdict(if v.passed() { "valid" } else { "invalid" });
            r.check("dim", dim);
            let names: Vec<&str> = v.failed_axioms().iter().map(|x| x.name()).collect();
            r.check("failed_axioms", names);
            r.check("failure_counts", v.counts());
            r.check("skipped", v.skipped);
            r.witness("failures", validation_json(&v));
            for w in &v.warnings {
                r.note(w.clone());
            }
            report_only(r)
        }
        "validate_module" => {
            c.arity(1, 1)?;
            let m = c.raw_module(0)?;
            let v = validate_module(m);
            let mut r = c.report().verdict(if v.passed() { "valid" } else { "invalid" });
            r.check("dim", m.dim());
            let names: Vec<&str> = v.failed_axioms().iter().map(|x| x.name()).collect();
            r.check("failed_axioms", names);
            r.witness("failures", module_validation_json(&v));
            report_only(r)
        }
        "multiply" | "differentiate" => {
            let binary = c.op() == "multiply";
            c.arity(if binary { 3 } else { 2 }, if binary { 3 } else { 2 })?;
            let a = c.algebra(0)?;
            let x = c.element(1, a.field(), a.names())?;
            let dx = c.core(a.degree_of_vector(&x))?;
            let (out, degree) = if binary {
                let y = c.element(2, a.field(), a.names())?;
                let dy = c.core(a.degree_of_vector(&y))?;
                (a.mul(&x, &y), dx.zip(dy).map(|(p, q)| p + q))
            } else {
                (a.d(&x), dx.map(|p| p + 1))
            };
            let mut r = c.report().verdict("computed");
            r.check("degree", degree);
            r.witness("result", element_json(a.names(), &out));
            report_only(r)
        }
        "kernel_and_image" => {
            c.arity(1, 1)?;
            let (names, map) = match c.value(0)? {
                Value::Algebra(a) => (a.names().to_vec(), c.core(a.diff_map())?),
                Value::Module(m) => (m.names().to_vec(), c.core(m.delta_map())?),
                _ => return c.kind_error(0, "an algebra or a module"),
            };
            let (ker, im) = kernel_and_image(&map);
            let mut r = c.report().verdict("computed");
            r.check("kernel_dims", dims_json(&ker.dims()));
            r.check("image_dims", dims_json(&im.dims()));
            r.check("image_in_kernel", ker.contains_subspace(&im));
            if !ker.contains_subspace(&im) {
                r.alarm("d does not square to zero on the image");
            }
            r.witness("kernel", carrier_json(&names, &ker));
            r.witness("image", carrier_json(&names, &im));
            report_only(r)
        }
        "opposite_algebra" => {
            c.arity(1, 1)?;
            Ok(constructed_algebra(&c, opposite_algebra(c.algebra(0)?)))
        }
        "cycles_algebra" => {
            c.arity(1, 1)?;
            let sub = c.core(cycles_algebra(c.algebra(0)?))?;
            let mut out = constructed_algebra(&c, sub.algebra.clone());
            out.report.witness("embedding", matrix_json(&sub.embedding));
            out.report.check("zero_differential", sub.algebra.has_zero_differential());
            Ok(out)
        }
        "homology_algebra" | "homology" => {
            c.arity(1, 1)?;
            match c.any_algebra(0)? {
                Alg::Fin(a) => {
                    let h = c.core(homology_algebra(a))?;
                    let mut out = constructed_algebra(&c, h.algebra.clone());
                    out.report.verdict = Some(if h.algebra.dim() == 0 { "zero" } else { "nonzero" }.into());
                    out.report.check("cycles_dims", dims_json(&h.cycles.algebra.space().dims()));
                    out.report.witness("projection", matrix_json(&h.projection));
                    Ok(out)
                }
                Alg::Lau(l) => {
                    let w = c.window(l)?;
                    let v = is_acyclic_laurent(&w);
                    let mut r = c.report().verdict(if v.acyclic { "zero" } else { "nonzero" });
                    r.check("homology_dims", dims_json(&v.homology_dims));
                    r.note(format!("computed on the window [{}, {}]", w.lo, w.hi));
                    report_only(r)
                }
            }
        }
        "graded_center" => {
            c.arity(1, 1)?;
            let a = c.algebra(0)?;
            let z = c.core(graded_center(a))?;
            let mut out = constructed_algebra(&c, z.sub.algebra.clone());
            let r = &mut out.report;
            r.verdict = Some(if z.certified() { "certified" } else { "not_certified" }.into());
            r.check("diff_closed", z.diff_closed);
            r.check("mult_closed", z.mult_closed);
            r.check("contains_unit", z.contains_unit);
            r.check("even_matches_ungraded", z.even_matches_ungraded());
            r.check("ungraded_center_dims", dims_json(&z.ungraded_center.dims()));
            r.witness("center", carrier_json(a.names(), &z.carrier));
            if !z.certified() {
                r.alarm("graded center is not a dg-subalgebra");
            }
            if !z.even_matches_ungraded() {
                r.alarm(format!("even components differ from the ungraded center in degrees {:?}", z.even_mismatch));
            }
            Ok(out)
        }
        "tensor_over_base" => {
            c.arity(2, 2)?;
            Ok(constructed_algebra(&c, c.core(tensor_over_base(c.algebra(0)?, c.algebra(1)?))?))
        }
        "tensor_over_central" => {
            c.arity(2, 3)?;
            let (a, b) = (c.algebra(0)?, c.algebra(1)?);
            let pair = match c.pair(a, b, 2)? {
                Some(p) => p,
                None => c.core(CentralPair::base_field(a, b))?,
            };
            let t = c.core(tensor_over_central(a, b, &pair))?;
            let mut out = constructed_algebra(&c, t.algebra.clone());
            out.report.check("central_dim", pair.z.dim());
            out.report.check("base_tensor_dim", t.base_tensor.dim());
            out.report.check("relations_dim", t.relations.dim());
            Ok(out)
        }
        "laurent_window" => {
            c.arity(1, 3)?;
            let l = match c.value(0)? {
                Value::Laurent(l) => l,
                _ => return c.kind_error(0, "a laurent algebra"),
            };
            let (lo, hi) = if c.arg(1).is_some() {
                c.arity(3, 3)?;
                (c.int(1)?, c.int(2)?)
            } else {
                s.options.window
            };
            let w = c.core(laurent_window(l, lo, hi))?;
            let mut r = c.report().verdict("constructed");
            laurent_summary(&mut r, &w);
            report_only(r)
        }
        "regular_module" => {
            c.arity(1, 1)?;
            Ok(constructed_module(&c, regular_module(c.algebra(0)?)))
        }
        "shift_module" => {
            c.arity(2, 2)?;
            Ok(constructed_module(&c, shift_module(c.module(0)?, c.int(1)?)))
        }
        "direct_sum" => {
            c.arity(2, 2)?;
            Ok(constructed_module(&c, c.core(direct_sum(c.module(0)?, c.module(1)?))?))
        }
        "extend_scalars" => {
            c.arity(2, 2)?;
            Ok(constructed_module(&c, c.core(extend_scalars(c.algebra(0)?, c.module(1)?))?))
        }
        "end_algebra" => {
            c.arity(1, 1)?;
            Ok(constructed_algebra(&c, c.core(end_algebra(c.module(0)?))?))
        }
        "hom_complex" => {
            c.arity(2, 2)?;
            let h = c.core(hom_complex(c.module(0)?, c.module(1)?))?;
            let mut r = c.report().verdict("computed");
            r.check("dim", h.dim());
            r.check("dims", dims_json(&h.space().dims()));
            let sq = h.dhom_squares_to_zero();
            r.check("d_hom_squared_zero", sq);
            if !sq {
                r.alarm("d_Hom does not square to zero");
            }
            r.witness("d_hom", matrix_json(&h.dhom));
            report_only(r)
        }
        "submodule_closure" | "submodule" | "quotient_module" => {
            c.arity(2, 2)?;
            let m = c.module(0)?;
            let gens = c.elements(1, m.space().field(), m.names())?;
            let carrier = c.core(submodule_closure(m, &gens))?;
            match c.op() {
                "submodule_closure" => {
                    let mut r = c.report().verdict(if carrier.is_zero() {
                        "zero"
                    } else if carrier.is_full() {
                        "whole"
                    } else {
                        "proper"
                    });
                    r.witness("submodule", carrier_json(m.names(), &carrier));
                    report_only(r)
                }
                "submodule" => {
                    let (sm, inc) = c.core(submodule(m, &carrier))?;
                    let mut out = constructed_module(&c, sm);
                    out.report.witness("inclusion", matrix_json(&inc));
                    Ok(out)
                }
                _ => {
                    let (q, proj) = c.core(quotient_module(m, &carrier))?;
                    let mut out = constructed_module(&c, q);
                    out.report.witness("projection", matrix_json(&proj));
                    Ok(out)
                }
            }
        }
        "z_functor" => {
            c.arity(1, 1)?;
            let z = c.core(z_functor(c.module(0)?))?;
            let mut out = constructed_module(&c, z.module.clone());
            out.report.witness("inclusion", matrix_json(&z.inclusion));
            out.report.note("a graded module over the cycles algebra of the base");
            Ok(out)
        }
        "induce_functor" => {
            c.arity(2, 3)?;
            let a = c.algebra(0)?;
            let n = c.module(1)?;
            let y = c.witness(a, 2)?;
            let ind = c.core(induce_functor(a, &y, n))?;
            let mut out = constructed_module(&c, ind.module.clone());
            out.report.witness("y", element_json(a.names(), &y));
            out.report.witness("unit_map", matrix_json(&ind.unit_map));
            Ok(out)
        }
        "induction_round_trip" => {
            c.arity(2, 3)?;
            let a = c.algebra(0)?;
            let n = c.module(1)?;
            let y = c.witness(a, 2)?;
            let rt = c.core(induction_round_trip(a, &y, n))?;
            let mut r = c.report().verdict(if rt.verified() { "verified" } else { "failed" });
            r.witness("forward", matrix_json(&rt.forward));
            r.witness("backward", matrix_json(&rt.backward));
            r.check("failures", &rt.failures);
            if !rt.verified() {
                r.alarm("Z(A ⊗ N) is not isomorphic to N");
            }
            report_only(r)
        }
        "is_acyclic" => {
            c.arity(1, 1)?;
            match c.any_algebra(0)? {
                Alg::Fin(a) => {
                    let v = c.core(is_acyclic(a))?;
                    let mut r = c.report().verdict(if v.acyclic { "acyclic" } else { "not_acyclic" });
                    r.check("homology_dims", dims_json(&v.homology_dims));
                    if let Some(w) = &v.witness {
                        r.witness("y", element_json(a.names(), &w.y));
                        r.check("y_degree", w.degree);
                        r.check("d_y_is_one", a.d(&w.y) == *a.unit());
                    }
                    report_only(r)
                }
                Alg::Lau(l) => {
                    let w = c.window(l)?;
                    let v = is_acyclic_laurent(&w);
                    let mut r = c.report().verdict(if v.acyclic { "acyclic" } else { "not_acyclic" });
                    r.check("homology_dims", dims_json(&v.homology_dims));
                    if let Some(y) = &v.witness {
                        r.witness("y", laurent_json(l, y));
                        r.check("d_y_is_one", l.differentiate(y) == l.one());
                    }
                    r.note(format!("computed on the window [{}, {}]", w.lo, w.hi));
                    report_only(r)
                }
            }
        }
        "acyclic_decomposition" => {
            c.arity(1, 2)?;
            let a = c.algebra(0)?;
            let y = c.witness(a, 1)?;
            let d = c.core(acyclic_decomposition(a, &y))?;
            let ok = d.left && d.right;
            let mut r = c.report().verdict(if ok { "verified" } else { "failed" });
            r.witness("y", element_json(a.names(), &y));
            r.check("left", d.left);
            r.check("right", d.right);
            let rows: Vec<Json> = d
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "degree": row.degree, "dim_a": row.dim_a, "dim_cycles": row.dim_cycles,
                        "dim_cycles_y": row.dim_cycles_y, "dim_y_cycles": row.dim_y_cycles,
                        "rank_left": row.rank_left, "rank_right": row.rank_right,
                    })
                })
                .collect();
            r.certificate("degreewise", json!(rows));
            if !ok {
                r.alarm("A is not ker(d) ⊕ ker(d)y and ker(d) ⊕ y ker(d)");
            }
            report_only(r)
        }
        "skew_presentation" => {
            c.arity(1, 2)?;
            let a = c.algebra(0)?;
            let y = c.witness(a, 1)?;
            let p = c.core(skew_presentation(a, &y))?;
            let mut out = constructed_algebra(&c, p.algebra.clone());
            let r = &mut out.report;
            r.verdict = Some(if p.verified() { "verified" } else { "failed" }.into());
            r.witness("y", element_json(a.names(), &y));
            r.witness("derivation", matrix_json(&p.derivation));
            r.witness("x_squared", element_json(p.base.algebra.names(), &p.x_squared));
            r.certificate("phi", matrix_json(&p.phi));
            r.check("failures", &p.failures);
            if !p.verified() {
                r.alarm("the skew presentation map is not a dg-isomorphism");
            }
            Ok(out)
        }
        "is_gr_division" => {
            c.arity(1, 1)?;
            let (v, names, obj) = match c.any_algebra(0)? {
                Alg::Fin(a) => (c.core(is_gr_division(a, budget))?, a.names().to_vec(), "algebra"),
                Alg::Lau(l) => (c.core(is_gr_division_laurent_cycles(l, budget))?, l.r0().names().to_vec(), "cycles"),
            };
            let mut r = c.report().verdict(if v.gr_division { "gr_division" } else { "not_gr_division" });
            r.check("object", obj);
            r.certificate("gr_division", gr_json(&names, &v));
            report_only(r)
        }
        "regularity_condition" => {
            c.arity(1, 1)?;
            let v = match c.any_algebra(0)? {
                Alg::Fin(a) => regularity_condition(a),
                Alg::Lau(l) => c.core(regularity_laurent(&c.window(l)?, budget))?,
            };
            let verdict = match v.holds {
                Some(true) => "holds",
                Some(false) => "fails",
                None => "undecided",
            };
            let mut r = c.report().verdict(verdict);
            r.check("justification", &v.justification);
            report_only(r)
        }
        "dg_ideal_generate" => {
            c.arity(2, 3)?;
            let a = c.algebra(0)?;
            let gens = c.elements(1, a.field(), a.names())?;
            let side = if c.arg(2).is_some() { c.side(2)? } else { Side::TwoSided };
            let i = c.core(dg_ideal_generate(a, &gens, side))?;
            let verdict = if i.carrier.is_zero() {
                "zero"
            } else if i.is_proper() {
                "proper"
            } else {
                "whole"
            };
            let mut r = c.report().verdict(verdict);
            r.check("side", side.name());
            r.check("is_dg_ideal", is_dg_ideal(a, &i.carrier, side));
            r.witness("ideal", carrier_json(a.names(), &i.carrier));
            report_only(r)
        }
        "is_dg_simple_algebra" => {
            c.arity(1, 1)?;
            let a = c.algebra(0)?;
            let v = c.core(is_dg_simple_algebra(a, budget))?;
            let mut r = c.report().verdict(if v.simple { "simple" } else { "not_simple" });
            r.check("checked", v.checked);
            if let Some(w) = &v.witness {
                r.witness("ideal", witness_json(a.names(), w));
                let cert = verify_ideal_certificate(a, &w.carrier, Side::TwoSided);
                r.certificate(
                    "ideal_certificate",
                    json!({"is_dg_ideal": cert.is_dg_ideal, "nonzero": cert.nonzero, "proper": cert.proper}),
                );
                if !cert.refutes_simplicity() {
                    r.alarm("the witness ideal does not refute simplicity");
                }
            }
            report_only(r)
        }
        "is_dg_division" => {
            c.arity(1, 1)?;
            let (v, names, cycle_names) = match c.any_algebra(0)? {
                Alg::Fin(a) => {
                    let z = c.core(cycles_algebra(a))?;
                    (c.core(is_dg_division(a, budget))?, a.names().to_vec(), z.algebra.names().to_vec())
                }
                Alg::Lau(l) => {
                    let names = l.r0().names().to_vec();
                    (c.core(is_dg_division_laurent(&c.window(l)?, budget))?, names.clone(), names)
                }
            };
            let mut r = c.report().verdict(if v.division { "dg_division" } else { "not_dg_division" });
            division_verdict(&mut r, &names, &cycle_names, &v);
            report_only(r)
        }
        "classify_dg_division" => {
            c.arity(1, 1)?;
            let mut r;
            match c.any_algebra(0)? {
                Alg::Fin(a) => {
                    let v = c.core(classify_dg_division(a, budget))?;
                    r = c.report().verdict(v.case.name());
                    r.check("cycles_shape", v.shape.name());
                    if let Some(w) = &v.witness {
                        r.witness("y", element_json(a.names(), &w.y));
                    }
                    r.certificate("cycles", shape_json(&v.shape, None));
                }
                Alg::Lau(l) => {
                    let v = c.core(classify_laurent(&c.window(l)?, budget))?;
                    r = c.report().verdict(v.case.name());
                    r.check("cycles_shape", v.shape.name());
                    if let Some(y) = &v.witness {
                        r.witness("y", laurent_json(l, y));
                    }
                    r.certificate("cycles", shape_json(&v.shape, Some(l)));
                }
            }
            report_only(r)
        }
        "homology_of_division" => {
            c.arity(1, 1)?;
            let mut r;
            match c.any_algebra(0)? {
                Alg::Fin(a) => {
                    let v = c.core(homology_of_division(a, budget))?;
                    r = c.report().verdict(v.case.name());
                    r.check("homology_dim", v.homology_dim);
                    r.check("equals_cycles", v.equals_cycles);
                    r.check("gr_division", v.gr_division);
                }
                Alg::Lau(l) => {
                    let v = c.core(homology_of_division_laurent(&c.window(l)?, budget))?;
                    r = c.report().verdict(v.case.name());
                    r.check("homology_dims", dims_json(&v.homology_dims));
                    r.check("cycles_dims", dims_json(&v.cycles_dims));
                    r.check("gr_division", v.gr_division);
                }
            }
            report_only(r)
        }
        "graded_center_division_check" => {
            c.arity(1, 1)?;
            let mut r;
            match c.any_algebra(0)? {
                Alg::Fin(a) => {
                    let v = c.core(graded_center_division_check(a, budget))?;
                    let names = v.center.sub.algebra.names().to_vec();
                    r = c.report().verdict(if v.division.division { "dg_division" } else { "not_dg_division" });
                    r.check("center_dim", v.center.sub.algebra.dim());
                    r.check("center_dims", dims_json(&v.center.carrier.dims()));
                    r.check("certified", v.center.certified());
                    r.check("cycles_even", v.cycles_even);
                    r.check("cycles_shape", v.shape.name());
                    r.witness("center", carrier_json(a.names(), &v.center.carrier));
                    let z = c.core(cycles_algebra(&v.center.sub.algebra))?;
                    division_verdict(&mut r, &names, z.algebra.names(), &v.division);
                    if !v.division.division {
                        r.alarm("the graded center of a dg-simple algebra is not dg-division");
                    }
                    if v.cycles_even == Some(false) {
                        r.alarm("center cycles are not concentrated in even degrees");
                    }
                }
                Alg::Lau(l) => {
                    let v = c.core(graded_center_check_laurent(&c.window(l)?, budget))?;
                    r = c.report().verdict("dg_division");
                    r.check("center_dims", dims_json(&v.center_dims));
                    r.check("center_cycle_dims", dims_json(&v.center_cycle_dims));
                    r.check("cycles_even", v.cycles_even);
                    r.check("d_closed", v.d_closed);
                    if !v.d_closed || v.cycles_even == Some(false) {
                        r.alarm("graded center check failed on the window");
                    }
                }
            }
            report_only(r)
        }
        "is_dg_prime" => {
            c.arity(1, 1)?;
            let a = c.algebra(0)?;
            let v = c.core(is_dg_prime(a, budget))?;
            let mut r = c.report().verdict(if v.prime { "prime" } else { "not_prime" });
            r.check("distinct_ideals", v.distinct_ideals);
            if let Some(w) = &v.witness {
                r.witness(
                    "pair",
                    json!({
                        "a": {"degree": w.a.0, "element": element_json(a.names(), &w.a.1), "ideal": carrier_json(a.names(), &w.ideal_a)},
                        "b": {"degree": w.b.0, "element": element_json(a.names(), &w.b.1), "ideal": carrier_json(a.names(), &w.ideal_b)},
                    }),
                );
                let zero = w.ideal_a.basis().iter().all(|x| w.ideal_b.basis().iter().all(|y| a.mul(x, y).iter().all(Scalar::is_zero)));
                r.certificate("product_is_zero", json!(zero));
                if !zero {
                    r.alarm("prime witness ideals have a nonzero product");
                }
            }
            report_only(r)
        }
        "find_simple_faithful" => {
            c.arity(1, 1)?;
            let a = c.algebra(0)?;
            let v = c.core(find_simple_faithful(a, budget))?;
            let mut r = c.report().verdict(if v.primitive { "primitive" } else { "not_primitive" });
            r.check("candidates", v.candidates.len());
            let cands: Vec<Json> = v
                .candidates
                .iter()
                .map(|k| {
                    json!({
                        "generator": element_json(a.names(), &k.generator),
                        "dim": k.carrier.dim(),
                        "faithful": k.faithful,
                        "annihilator_witness": k.annihilator_witness.as_ref().map(|x| element_json(a.names(), x)),
                    })
                })
                .collect();
            r.witness("candidates", json!(cands));
            if let Some(m) = &v.witness {
                r.witness("module_basis", basis_json(m.names(), m.degrees()));
            }
            report_only(r)
        }
        "is_semisimple_category" => {
            c.arity(1, 1)?;
            let a = c.algebra(0)?;
            let v = c.core(is_semisimple_category(a, budget))?;
            let mut r = c.report().verdict(if v.semisimple { "semisimple" } else { "not_semisimple" });
            r.check("acyclic", v.witness.is_some());
            r.check("homology_dims", dims_json(&v.homology_dims));
            r.check("cycles_semisimple", v.cycles_semisimple);
            r.check("socle_dim", v.socle_dim);
            if let Some(w) = &v.witness {
                r.witness("y", element_json(a.names(), &w.y));
            }
            if let Some(parts) = &v.regular_decomposition {
                let dims: Vec<usize> = parts.iter().map(GradedSubspace::dim).collect();
                r.certificate("regular_decomposition", json!({"summand_dims": dims}));
            }
            for n in &v.notes {
                r.note(n.clone());
            }
            report_only(r)
        }
        "matrix_decomposition" => {
            c.arity(1, 1)?;
            let m = c.module(0)?;
            let v = c.core(matrix_decomposition(m, budget))?;
            let mut r = c.report().verdict(if v.verified() { "verified" } else { "failed" });
            r.check("n", v.n());
            r.check("shifts", &v.shifts);
            r.check("simple_dim", v.simple.dim());
            r.check("division_dim", v.d.dim());
            r.check("end_dim", v.end_m.dim());
            r.check("failures", &v.failures);
            r.certificate("psi", matrix_json(&v.psi));
            if !v.verified() {
                r.alarm("End(M) is not isomorphic to the shifted matrix algebra");
            }
            report_only(r)
        }
        "cycles_of_tensor_check" => {
            c.arity(2, 4)?;
            let (a, b) = (c.algebra(0)?, c.algebra(1)?);
            let z = c.witness(a, 2)?;
            let w = c.witness(b, 3)?;
            let v = c.core(cycles_of_tensor_check(a, b, &z, &w))?;
            let mut r = c.report().verdict(if v.passed() { "passed" } else { "failed" });
            r.check("kernel_dims", dims_json(&v.kernel_dims));
            r.check("formula_dims", dims_json(&v.formula_dims));
            r.check("expected_dim", v.expected_dim);
            r.check("direct", v.direct);
            r.check("equal", v.equal);
            if !v.passed() {
                r.alarm("cycles of the tensor product differ from the formula");
            }
            report_only(r)
        }
        "acyclic_tensor_check" => {
            c.arity(2, 3)?;
            let (a, b) = (c.algebra(0)?, c.algebra(1)?);
            let pair = c.pair(a, b, 2)?;
            let za = c.core(acyclicity_witness(a))?.map(|w| w.y);
            let zb = c.core(acyclicity_witness(b))?.map(|w| w.y);
            let v = c.core(acyclic_tensor_check(a, b, pair.as_ref(), za.as_ref(), zb.as_ref()))?;
            let ok = v.witness_verified && v.homology_zero;
            let mut r = c.report().verdict(if ok { "acyclic" } else { "failed" });
            r.check("dim", v.algebra.dim());
            r.check("witness_verified", v.witness_verified);
            r.check("homology_zero", v.homology_zero);
            r.witness("y", element_json(v.algebra.names(), &v.witness));
            if !ok {
                r.alarm("tensor product with an acyclic factor is not acyclic");
            }
            report_only(r)
        }
        "tensor_of_divisions_simplicity" => {
            c.arity(2, 2)?;
            let v = c.core(tensor_of_divisions_simplicity(c.algebra(0)?, c.algebra(1)?, budget))?;
            let mut r = c.report().verdict(if v.simplicity.simple { "simple" } else { "not_simple" });
            r.check("dim", v.algebra.dim());
            r.check("characteristic_two", v.characteristic_two);
            if let Some(w) = &v.simplicity.witness {
                r.witness("ideal", witness_json(v.algebra.names(), w));
            }
            if !v.simplicity.simple {
                r.alarm("tensor of dg-division algebras over their common center is not dg-simple");
            }
            report_only(r)
        }
        "is_dg_simple_module" => {
            c.arity(1, 1)?;
            let m = c.module(0)?;
            let v = c.core(is_dg_simple_module(m, budget))?;
            let mut r = c.report().verdict(if v.simple { "simple" } else { "not_simple" });
            r.check("checked", v.checked);
            if let Some(w) = &v.witness {
                r.witness("submodule", witness_json(m.names(), w));
            }
            report_only(r)
        }
        "annihilator" => {
            c.arity(1, 1)?;
            let m = c.module(0)?;
            let v = c.core(annihilator(m))?;
            let a = m.algebra();
            let mut r = c.report().verdict(if v.ideal.is_zero() { "zero" } else { "nonzero" });
            r.check("d_closed", v.d_closed);
            r.check("two_sided", v.two_sided);
            r.witness("ideal", carrier_json(a.names(), &v.ideal));
            if !(v.d_closed && v.two_sided) {
                r.alarm("the annihilator is not a two-sided dg-ideal");
            }
            report_only(r)
        }
        "faithful_embedding" => {
            c.arity(1, 1)?;
            let m = c.module(0)?;
            let v = c.core(faithful_embedding(m))?;
            let mut r = c.report().verdict(if v.faithful { "faithful" } else { "not_faithful" });
            r.check("end_dim", v.end_k.dim());
            r.check("map_failures", &v.map_failures);
            r.certificate("mu", matrix_json(&v.mu));
            if let Some(x) = &v.kernel_witness {
                r.witness("kernel", element_json(m.algebra().names(), x));
            }
            if !v.map_failures.is_empty() {
                r.alarm("the action map is not a dg-algebra map");
            }
            report_only(r)
        }
        "free_basis" => {
            c.arity(1, 1)?;
            let m = c.module(0)?;
            let v = c.core(free_basis(m, budget))?;
            let ok = v.direct && v.factors_verified;
            let mut r = c.report().verdict(if ok { "free" } else { "failed" });
            r.check("rank", v.generators.len());
            r.check("direct", v.direct);
            r.check("factors_verified", v.factors_verified);
            let gens: Vec<Json> = v
                .generators
                .iter()
                .map(|(d, x)| json!({"degree": d, "element": element_json(m.names(), x)}))
                .collect();
            r.witness("generators", json!(gens));
            if !ok {
                r.alarm("the free basis does not decompose the module");
            }
            report_only(r)
        }
        "submodule_rank_compare" => {
            c.arity(2, 2)?;
            let m = c.module(0)?;
            let gens = c.elements(1, m.space().field(), m.names())?;
            let n = c.core(submodule_closure(m, &gens))?;
            let v = c.core(submodule_rank_compare(m, &n, budget))?;
            let mut r = c.report().verdict(if v.equal { "equal_rank" } else { "smaller_rank" });
            r.check("m_rank", v.m_rank);
            r.check("n_rank", v.n_rank);
            r.check("coefficients_are_cycles", v.coefficients_are_cycles);
            r.check("consistent", v.consistent());
            if !v.consistent() {
                r.alarm("rank comparison is inconsistent");
            }
            report_only(r)
        }
        "d_independent" => {
            c.arity(2, 2)?;
            let m = c.module(0)?;
            let xs = c.elements(1, m.space().field(), m.names())?;
            let v = c.core(d_independent(m, &xs))?;
            let mut r = c.report().verdict(if v.independent { "independent" } else { "dependent" });
            if let Some(dep) = &v.dependency {
                r.witness("dependency", json!(dep.iter().map(matrix_json).collect::<Vec<_>>()));
            }
            report_only(r)
        }
        "density_solve" => {
            c.arity(3, 3)?;
            let m = c.module(0)?;
            let xs = c.elements(1, m.space().field(), m.names())?;
            let ys = c.elements(2, m.space().field(), m.names())?;
            let inst = DensityInstance { module: m.clone(), xs, ys };
            let v = c.core(density_solve(&inst, budget))?;
            let mut r = c.report().verdict(if v.verified { "solved" } else { "failed" });
            r.witness("a", element_json(m.algebra().names(), &v.a));
            r.check("verified", v.verified);
            r.check("d_a_is_zero", m.algebra().d(&v.a).iter().all(Scalar::is_zero));
            for n in &v.notes {
                r.note(n.clone());
            }
            if !v.verified {
                r.alarm("density solution fails substitution");
            }
            report_only(r)
        }
        other => Err(SpecError::new(ErrorKind::Resolution, c.pos(), format!("unknown operation `{other}`"))),
    }
}

fn laurent_summary(r: &mut Report, w: &LaurentWindow) {
    let v = validate_table(w);
    r.check("window", [w.lo, w.hi]);
    r.check("dim", w.basis().len());
    r.check("valid", v.passed());
    r.check("skipped", v.skipped);
    r.check("generator_degree", w.algebra.gen_degree());
    r.check("zero_differential", w.algebra.has_zero_differential());
    if !v.passed() {
        r.witness("validation_failures", validation_json(&v));
    }
}
