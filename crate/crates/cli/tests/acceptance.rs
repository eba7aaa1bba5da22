//! Acceptance suite. Each criterion prints one PASS or FAIL line; the
//! process exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dgkernel::{parse_spec, print_spec};
use dgkernel_core::catalog;
use dgkernel_core::dga::{
    cycles_algebra, graded_center, tensor_over_base, validate_dga, validate_table, DGAlgebra,
};
use dgkernel_core::dgmod::{
    direct_sum, end_algebra, induce_functor, induction_round_trip, regular_module, shift_module, submodule,
    z_functor, DGModule,
};
use dgkernel_core::enumerate::Budget;
use dgkernel_core::linalg::matrix::{is_zero_vec, unit_vec, zero_vec};
use dgkernel_core::linalg::{FieldSpec, Matrix, Scalar, Vector};
use dgkernel_core::random::population;
use dgkernel_core::structure::{
    acyclic_decomposition, acyclicity_witness, classify_dg_division, classify_laurent, cycles_of_tensor_check,
    d_independent, density_solve, graded_center_check_laurent, graded_center_division_check, is_acyclic_laurent,
    is_dg_division_laurent, is_dg_prime, is_dg_simple_algebra, is_dg_simple_module, is_gr_division,
    matrix_decomposition, minimal_cyclic_submodules, search_ideals, skew_presentation, CyclesShape,
    DensityInstance, DifferentialCase, Side,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn fp(p: u32) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn budget() -> Budget {
    Budget::default()
}

// ---------------------------------------------------------------------------
// Oracles, written against raw structure constants.

fn sign(f: FieldSpec, e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        f.one()
    } else {
        f.from_i64(-1)
    }
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

fn scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c.clone() * x.clone()).collect()
}

/// Bilinear extension of the product table.
fn mul(a: &DGAlgebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    let n = a.dim();
    let mut out = zero_vec(a.field(), n);
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            out = add(&out, &scale(&(x[i].clone() * y[j].clone()), a.product(i, j)));
        }
    }
    out
}

fn diff(a: &DGAlgebra, x: &[Scalar]) -> Vector {
    let n = a.dim();
    let mut out = zero_vec(a.field(), n);
    for j in 0..n {
        if !x[j].is_zero() {
            out = add(&out, &scale(&x[j], &a.diff_of(j)));
        }
    }
    out
}

fn supported(a: &DGAlgebra, v: &[Scalar], degree: i64) -> bool {
    v.iter().enumerate().all(|(k, c)| c.is_zero() || a.degrees()[k] == degree)
}

/// Names of every dg-algebra axiom the table violates.
fn violated_axioms(a: &DGAlgebra) -> BTreeSet<&'static str> {
    let n = a.dim();
    let f = a.field();
    let e = |i: usize| unit_vec(f, n, i);
    let deg = |i: usize| a.degrees()[i];
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if !supported(a, a.product(i, j), deg(i) + deg(j)) {
                out.insert("degree_additivity");
            }
        }
    }
    let u = a.unit().clone();
    if !supported(a, &u, 0) || is_zero_vec(&u) {
        out.insert("unit");
    } else if (0..n).any(|i| mul(a, &u, &e(i)) != e(i) || mul(a, &e(i), &u) != e(i)) {
        out.insert("unit");
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let l = mul(a, &mul(a, &e(i), &e(j)), &e(k));
                let r = mul(a, &e(i), &mul(a, &e(j), &e(k)));
                if l != r {
                    out.insert("associativity");
                }
            }
        }
    }
    for i in 0..n {
        if !supported(a, &a.diff_of(i), deg(i) + 1) {
            out.insert("diff_shift");
        }
        if !is_zero_vec(&diff(a, &diff(a, &e(i)))) {
            out.insert("diff_square");
        }
    }
    if !is_zero_vec(&diff(a, &u)) {
        out.insert("diff_of_unit");
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = diff(a, &mul(a, &e(i), &e(j)));
            let rhs = add(
                &mul(a, &diff(a, &e(i)), &e(j)),
                &scale(&sign(f, deg(i)), &mul(a, &e(i), &diff(a, &e(j)))),
            );
            if lhs != rhs {
                out.insert("leibniz");
            }
        }
    }
    out
}

/// Every nonzero vector supported on `indices`.
fn vectors_on(f: FieldSpec, n: usize, indices: &[usize]) -> Vec<Vector> {
    let elems = f.elements().expect("finite field");
    let mut out = Vec::new();
    let total = elems.len().pow(indices.len() as u32);
    for code in 1..total {
        let mut v = zero_vec(f, n);
        let mut c = code;
        for &i in indices {
            v[i] = elems[c % elems.len()].clone();
            c /= elems.len();
        }
        out.push(v);
    }
    out
}

fn homogeneous_vectors(a: &DGAlgebra) -> Vec<(i64, Vector)> {
    let degrees: BTreeSet<i64> = a.degrees().iter().copied().collect();
    let mut out = Vec::new();
    for d in degrees {
        let idx: Vec<usize> = (0..a.dim()).filter(|&i| a.degrees()[i] == d).collect();
        out.extend(vectors_on(a.field(), a.dim(), &idx).into_iter().map(|v| (d, v)));
    }
    out
}

fn rank_of(f: FieldSpec, rows: usize, cols: &[Vector]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    Matrix::from_columns(f, rows, cols).rank()
}

fn in_span(f: FieldSpec, rows: usize, span: &[Vector], v: &[Scalar]) -> bool {
    let mut with = span.to_vec();
    with.push(v.to_vec());
    rank_of(f, rows, span) == rank_of(f, rows, &with)
}

/// Whether every nonzero homogeneous element generates the whole algebra as a
/// one-sided dg-ideal: `A v + A d(v)` (left) or `v A + d(v) A` (right).
fn only_trivial_ideals(a: &DGAlgebra, left: bool) -> bool {
    let n = a.dim();
    let f = a.field();
    homogeneous_vectors(a).iter().all(|(_, v)| {
        let dv = diff(a, v);
        let mut gens = Vec::new();
        for i in 0..n {
            let e = unit_vec(f, n, i);
            if left {
                gens.push(mul(a, &e, v));
                gens.push(mul(a, &e, &dv));
            } else {
                gens.push(mul(a, v, &e));
                gens.push(mul(a, &dv, &e));
            }
        }
        in_span(f, n, &gens, a.unit())
    })
}

/// Cycles of `a` as (degree, vector) pairs spanning each homogeneous kernel.
fn cycle_basis(a: &DGAlgebra) -> Vec<(i64, Vector)> {
    let degrees: BTreeSet<i64> = a.degrees().iter().copied().collect();
    let mut out = Vec::new();
    for d in degrees {
        let idx: Vec<usize> = (0..a.dim()).filter(|&i| a.degrees()[i] == d).collect();
        let cols: Vec<Vector> = idx.iter().map(|&i| a.diff_of(i)).collect();
        let m = Matrix::from_columns(a.field(), a.dim(), &cols);
        for k in m.nullspace() {
            let mut v = zero_vec(a.field(), a.dim());
            for (c, &i) in k.iter().zip(&idx) {
                v[i] = c.clone();
            }
            out.push((d, v));
        }
    }
    out
}

/// Every nonzero homogeneous cycle, by enumerating coefficient tuples.
fn homogeneous_cycles(a: &DGAlgebra) -> Vec<(i64, Vector)> {
    let basis = cycle_basis(a);
    let f = a.field();
    let mut by_degree: BTreeMap<i64, Vec<Vector>> = BTreeMap::new();
    for (d, v) in basis {
        by_degree.entry(d).or_default().push(v);
    }
    let mut out = Vec::new();
    for (d, vs) in by_degree {
        let idx: Vec<usize> = (0..vs.len()).collect();
        for coeffs in vectors_on(f, vs.len(), &idx) {
            let mut v = zero_vec(f, a.dim());
            for (c, b) in coeffs.iter().zip(&vs) {
                v = add(&v, &scale(c, b));
            }
            out.push((d, v));
        }
    }
    out
}

/// Every nonzero homogeneous cycle has a two-sided inverse among the cycles.
fn cycles_gr_division(a: &DGAlgebra) -> bool {
    let cycles = homogeneous_cycles(a);
    if cycles.is_empty() || is_zero_vec(a.unit()) {
        return false;
    }
    cycles.iter().all(|(d, z)| {
        cycles
            .iter()
            .filter(|(e, _)| *e == -d)
            .any(|(_, w)| mul(a, z, w) == *a.unit() && mul(a, w, z) == *a.unit())
    })
}

fn homology_dims(a: &DGAlgebra) -> BTreeMap<i64, usize> {
    let f = a.field();
    let n = a.dim();
    let degrees: BTreeSet<i64> = a.degrees().iter().copied().collect();
    let mut out = BTreeMap::new();
    for d in degrees {
        let idx: Vec<usize> = (0..n).filter(|&i| a.degrees()[i] == d).collect();
        let prev: Vec<usize> = (0..n).filter(|&i| a.degrees()[i] == d - 1).collect();
        let rank_out = rank_of(f, n, &idx.iter().map(|&i| a.diff_of(i)).collect::<Vec<_>>());
        let rank_in = rank_of(f, n, &prev.iter().map(|&i| a.diff_of(i)).collect::<Vec<_>>());
        let h = idx.len() - rank_out - rank_in;
        if h > 0 {
            out.insert(d, h);
        }
    }
    out
}

/// Solutions of `x e_j = s(n, |e_j|) e_j x` in degree `n`.
fn commutant(a: &DGAlgebra, n: i64, graded: bool) -> Vec<Vector> {
    let f = a.field();
    let dim = a.dim();
    let idx: Vec<usize> = (0..dim).filter(|&i| a.degrees()[i] == n).collect();
    if idx.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<Vector> = Vec::new();
    for j in 0..dim {
        let ej = unit_vec(f, dim, j);
        let s = if graded { sign(f, n * a.degrees()[j]) } else { f.one() };
        let cols: Vec<Vector> = idx
            .iter()
            .map(|&i| {
                let ei = unit_vec(f, dim, i);
                let l = mul(a, &ei, &ej);
                let r = scale(&s, &mul(a, &ej, &ei));
                l.iter().zip(&r).map(|(x, y)| x.clone() - y.clone()).collect()
            })
            .collect();
        let block = Matrix::from_columns(f, dim, &cols);
        for r in 0..dim {
            rows.push(block.row(r).to_vec());
        }
    }
    let sys = Matrix::from_rows(f, idx.len(), &rows);
    sys.nullspace()
        .into_iter()
        .map(|k| {
            let mut v = zero_vec(f, dim);
            for (c, &i) in k.iter().zip(&idx) {
                v[i] = c.clone();
            }
            v
        })
        .collect()
}

fn is_identity(m: &Matrix) -> bool {
    m.rows() == m.cols() && *m == Matrix::identity(m.field(), m.rows())
}

// ---------------------------------------------------------------------------
// Population.

struct Population {
    /// (field, label, algebra)
    algebras: Vec<(FieldSpec, String, DGAlgebra)>,
}

fn finite_catalog(f: FieldSpec) -> Vec<(String, DGAlgebra)> {
    vec![
        ("Q0".into(), catalog::q0(f)),
        ("DUAL".into(), catalog::dual(f)),
        ("M2".into(), catalog::m2(f)),
        ("DD".into(), catalog::dd(f)),
    ]
}

fn build_population(per_field: usize) -> Population {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut algebras = Vec::new();
    for p in [2, 3] {
        let f = fp(p);
        for (l, a) in finite_catalog(f) {
            algebras.push((f, l, a));
        }
        for (l, a) in population(f, per_field, &mut rng).expect("population") {
            algebras.push((f, l, a));
        }
    }
    Population { algebras }
}

// ---------------------------------------------------------------------------
// Criteria.

fn c1_validator() -> Outcome {
    let start = Instant::now();
    for p in [2, 3, 5] {
        let f = fp(p);
        for (l, a) in finite_catalog(f) {
            ensure!(validate_dga(&a).passed(), "{l} over F{p} fails validation");
            ensure!(violated_axioms(&a).is_empty(), "oracle rejects {l} over F{p}");
        }
        ensure!(validate_table(&catalog::lau_window(f)).passed(), "LAU window fails over F{p}");
        ensure!(validate_table(&catalog::lau2_window(f)).passed(), "LAU2 window fails over F{p}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut rejected, mut neutral, mut tally) = (0usize, 0usize, BTreeMap::<&str, usize>::new());
    while rejected < 100 {
        let f = fp(*[2u32, 3, 5].choose(&mut rng).unwrap());
        let base = if rng.gen_bool(0.5) { catalog::dual(f) } else { catalog::m2(f) };
        let n = base.dim();
        let delta = f.from_i64(rng.gen_range(1..f.characteristic() as i64));
        let mutated = if rng.gen_bool(0.6) {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let mut v = base.product(i, j).clone();
            v[k] = v[k].clone() + delta;
            base.clone().with_product(i, j, v)
        } else {
            let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let mut m = base.diff_matrix().clone();
            m.set(r, c, m.get(r, c).clone() + delta);
            base.clone().with_diff(m)
        };
        let expected = violated_axioms(&mutated);
        let report = validate_dga(&mutated);
        let named: BTreeSet<&str> = report.failed_axioms().iter().map(|x| x.name()).collect();
        ensure!(named == expected, "validator names {named:?}, oracle expects {expected:?}");
        if expected.is_empty() {
            neutral += 1;
            continue;
        }
        rejected += 1;
        for a in expected {
            *tally.entry(a).or_default() += 1;
        }
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(5), "took {t:?}");
    Ok(format!("6 catalog algebras valid; 100 mutations rejected ({neutral} still-valid draws accepted); axioms {tally:?}; {t:.2?}"))
}

struct DivisionRow {
    left: bool,
    right: bool,
    cycles: bool,
    oracle_left: bool,
    oracle_right: bool,
    oracle_cycles: bool,
}

fn division_rows(pop: &Population) -> Result<Vec<DivisionRow>, String> {
    let mut rows = Vec::new();
    for (f, l, a) in &pop.algebras {
        let mut b = budget();
        let z = cycles_algebra(a).map_err(|e| format!("{l}: {e}"))?;
        let left = search_ideals(a, Side::Left, &mut b).map_err(|e| format!("{l}: {e}"))?;
        let right = search_ideals(a, Side::Right, &mut b).map_err(|e| format!("{l}: {e}"))?;
        let cycles = is_gr_division(&z.algebra, &mut b).map_err(|e| format!("{l} over {f}: {e}"))?;
        rows.push(DivisionRow {
            left: left.trivial,
            right: right.trivial,
            cycles: cycles.gr_division,
            oracle_left: only_trivial_ideals(a, true),
            oracle_right: only_trivial_ideals(a, false),
            oracle_cycles: cycles_gr_division(a),
        });
    }
    Ok(rows)
}

fn c2_biconditional(rows: &[DivisionRow], elapsed: Duration) -> Outcome {
    let bad = rows.iter().filter(|r| r.left != r.cycles || r.right != r.cycles).count();
    ensure!(bad == 0, "{bad} enumeration/cycles disagreements");
    let oracle_bad = rows
        .iter()
        .filter(|r| r.left != r.oracle_left || r.right != r.oracle_right || r.cycles != r.oracle_cycles)
        .count();
    ensure!(oracle_bad == 0, "{oracle_bad} verdicts differ from the brute-force oracles");
    ensure!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    let division = rows.iter().filter(|r| r.cycles).count();
    Ok(format!("{} algebras over F2/F3, {division} dg-division, zero disagreements; {elapsed:.2?}", rows.len()))
}

fn c3_triple(rows: &[DivisionRow]) -> Outcome {
    let core = rows.iter().filter(|r| !(r.left == r.right && r.right == r.cycles)).count();
    let oracle =
        rows.iter().filter(|r| !(r.oracle_left == r.oracle_right && r.oracle_right == r.oracle_cycles)).count();
    ensure!(core == 0 && oracle == 0, "disagreements: library {core}, oracle {oracle}");
    Ok(format!("left ≡ right ≡ cycles on {} algebras", rows.len()))
}

fn c4_classification(pop: &Population, rows: &[DivisionRow]) -> Outcome {
    let (mut zero, mut acyclic) = (0, 0);
    for ((f, l, a), row) in pop.algebras.iter().zip(rows) {
        if !row.cycles {
            continue;
        }
        let c = classify_dg_division(a, &mut budget()).map_err(|e| format!("{l} over {f}: {e}"))?;
        let d_zero = a.diff_matrix().is_zero();
        let is_acyclic = homology_dims(a).is_empty();
        ensure!(d_zero != is_acyclic, "{l} over {f}: d = 0 is {d_zero}, acyclic is {is_acyclic}");
        match c.case {
            DifferentialCase::ZeroDifferential => {
                ensure!(d_zero, "{l} classified d = 0 but d != 0");
                zero += 1;
            }
            DifferentialCase::Acyclic => {
                ensure!(is_acyclic, "{l} classified acyclic but has homology");
                let w = c.witness.ok_or(format!("{l}: no witness"))?;
                ensure!(diff(a, &w.y) == *a.unit(), "{l}: d(y) != 1");
                let s = skew_presentation(a, &w.y).map_err(|e| format!("{l}: {e}"))?;
                ensure!(s.verified(), "{l}: skew presentation failures {:?}", s.failures);
                ensure!(s.phi.rows() == a.dim() && s.phi.rank() == a.dim(), "{l}: phi is not bijective");
                acyclic += 1;
            }
        }
    }
    ensure!(zero > 0 && acyclic > 0, "population lacks a case: d=0 {zero}, acyclic {acyclic}");
    Ok(format!("{zero} with d = 0, {acyclic} acyclic with verified skew presentations"))
}

fn acyclic_members(pop: &Population) -> Vec<(FieldSpec, String, DGAlgebra, Vector)> {
    pop.algebras
        .iter()
        .filter_map(|(f, l, a)| acyclicity_witness(a).ok().flatten().map(|w| (*f, l.clone(), a.clone(), w.y)))
        .collect()
}

fn c5_decomposition(pop: &Population) -> Outcome {
    let members = acyclic_members(pop);
    for (f, l, a, y) in &members {
        ensure!(homology_dims(a).is_empty(), "{l}: witness for a non-acyclic algebra");
        let dec = acyclic_decomposition(a, y).map_err(|e| format!("{l}: {e}"))?;
        ensure!(dec.left && dec.right, "{l} over {f}: decomposition fails");
        let z = cycle_basis(a);
        let n = a.dim();
        for d in a.degrees().iter().copied().collect::<BTreeSet<_>>() {
            let dim_a = a.degrees().iter().filter(|&&x| x == d).count();
            let zd: Vec<Vector> = z.iter().filter(|(e, _)| *e == d).map(|(_, v)| v.clone()).collect();
            let zprev: Vec<Vector> = z.iter().filter(|(e, _)| *e == d + 1).map(|(_, v)| v.clone()).collect();
            for left in [true, false] {
                let zy: Vec<Vector> =
                    zprev.iter().map(|c| if left { mul(a, c, y) } else { mul(a, y, c) }).collect();
                let mut all = zd.clone();
                all.extend(zy.iter().cloned());
                ensure!(
                    rank_of(*f, n, &all) == dim_a && zd.len() + rank_of(*f, n, &zy) == dim_a,
                    "{l}: degree {d} is not Z ⊕ Zy"
                );
            }
            let row = dec.rows.iter().find(|r| r.degree == d);
            if let Some(r) = row {
                ensure!(r.dim_a == dim_a && r.dim_cycles == zd.len(), "{l}: degree {d} counts differ");
            }
        }
    }
    ensure!(!members.is_empty(), "no acyclic algebras");
    Ok(format!("{} acyclic algebras, both decompositions verified degreewise", members.len()))
}

fn c6_cycles_of_tensor(pop: &Population) -> Outcome {
    let members = acyclic_members(pop);
    let mut pairs = 0;
    for p in [2, 3] {
        let f = fp(p);
        let here: Vec<_> = members.iter().filter(|m| m.0 == f).collect();
        for (k, (_, la, a, z)) in here.iter().enumerate() {
            for (_, lb, b, w) in here.iter().skip(k).take(3) {
                if a.dim() * b.dim() > 16 {
                    continue;
                }
                let c = cycles_of_tensor_check(a, b, z, w).map_err(|e| format!("{la}⊗{lb}: {e}"))?;
                let t = tensor_over_base(a, b).map_err(|e| format!("{la}⊗{lb}: {e}"))?;
                let direct = cycle_basis(&t).len();
                let expected = 2 * cycle_basis(a).len() * cycle_basis(b).len();
                ensure!(c.passed(), "{la}⊗{lb}: check failed {c:?}");
                ensure!(direct == expected && c.expected_dim == expected, "{la}⊗{lb}: {direct} != {expected}");
                ensure!(c.kernel_dims == c.formula_dims, "{la}⊗{lb}: degreewise mismatch");
                pairs += 1;
            }
        }
    }
    ensure!(pairs >= 20, "only {pairs} pairs");
    Ok(format!("{pairs} acyclic pairs; formula = kernel, dim = 2·dim Z_A·dim Z_B"))
}

fn span_equal(f: FieldSpec, n: usize, a: &[Vector], b: &[Vector]) -> bool {
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    let r = rank_of(f, n, &all);
    r == rank_of(f, n, a) && r == rank_of(f, n, b)
}

fn c7_named() -> Outcome {
    for p in [2, 3, 5] {
        let f = fp(p);
        let mut b = budget();
        let dual = catalog::dual(f);
        ensure!(only_trivial_ideals(&dual, true) && cycles_gr_division(&dual), "DUAL not division over F{p}");
        ensure!(search_ideals(&dual, Side::Left, &mut b).unwrap().trivial, "DUAL enumeration over F{p}");

        let m2 = catalog::m2(f);
        ensure!(is_dg_simple_algebra(&m2, &mut b).unwrap().simple, "M2 not simple over F{p}");
        ensure!(!cycles_gr_division(&m2), "M2 division by oracle over F{p}");
        ensure!(!search_ideals(&m2, Side::Left, &mut b).unwrap().trivial, "M2 division over F{p}");

        let dd = catalog::dd(f);
        let s = is_dg_simple_algebra(&dd, &mut b).unwrap();
        ensure!(!s.simple, "DD simple over F{p}");
        let carrier = s.witness.ok_or("DD: no witness")?.carrier;
        let ix = |name: &str| dd.index_of(name).unwrap();
        let mut diffv = unit_vec(f, 4, ix("one.eps"));
        diffv[ix("eps.one")] = f.from_i64(-1);
        let expected = vec![diffv, unit_vec(f, 4, ix("eps.eps"))];
        ensure!(carrier.dim() == 2, "DD ideal has dimension {}", carrier.dim());
        ensure!(span_equal(f, 4, carrier.basis(), &expected), "DD ideal is not span(1⊗ε−ε⊗1, ε⊗ε) over F{p}");
        let pr = is_dg_prime(&dd, &mut b).unwrap();
        ensure!(!pr.prime, "DD prime over F{p}");
        let w = pr.witness.ok_or("DD: no prime witness")?;
        for x in w.ideal_a.basis() {
            for y in w.ideal_b.basis() {
                ensure!(is_zero_vec(&mul(&dd, x, y)), "DD witness: J·J != 0");
            }
        }

        let lau = catalog::lau_window(f);
        ensure!(is_dg_division_laurent(&lau, &mut b).unwrap().division, "LAU not division over F{p}");
        let acyc = is_acyclic_laurent(&lau);
        ensure!(acyc.acyclic && acyc.homology_dims.values().all(|&d| d == 0), "LAU not acyclic over F{p}");

        let lau2 = catalog::lau2_window(f);
        ensure!(is_dg_division_laurent(&lau2, &mut b).unwrap().division, "LAU2 not division over F{p}");
        let c = classify_laurent(&lau2, &mut b).unwrap();
        ensure!(c.case == DifferentialCase::ZeroDifferential, "LAU2 case {:?}", c.case);
        match c.shape {
            CyclesShape::TwistedLaurent { sigma, sigma_is_identity, .. } => {
                ensure!(sigma_is_identity && is_identity(&sigma), "LAU2 sigma is not the identity over F{p}")
            }
            other => return Err(format!("LAU2 cycles shape {}", other.name())),
        }
    }
    Ok("DUAL, M2, DD (ideal span{1⊗ε−ε⊗1, ε⊗ε}, J·J=0), LAU, LAU2 (σ = id) over F2, F3, F5".into())
}

fn simple_submodules(m: &DGModule) -> Result<Vec<DGModule>, String> {
    let mut b = budget();
    let mut out = Vec::new();
    for (_, carrier) in minimal_cyclic_submodules(m, &mut b).map_err(|e| e.to_string())? {
        let (s, _) = submodule(m, &carrier).map_err(|e| e.to_string())?;
        if is_dg_simple_module(&s, &mut b).map_err(|e| e.to_string())?.simple {
            out.push(s);
        }
    }
    Ok(out)
}

fn c8_end_of_simple(pop: &Population) -> Outcome {
    let mut found = 0;
    for (f, l, a) in &pop.algebras {
        for s in simple_submodules(&regular_module(a)).map_err(|e| format!("{l} over {f}: {e}"))? {
            let e = end_algebra(&s).map_err(|e| format!("{l}: {e}"))?;
            ensure!(validate_dga(&e).passed(), "{l}: End(S) is not a dg-algebra");
            let z = cycles_algebra(&e).map_err(|e| format!("{l}: {e}"))?;
            ensure!(is_gr_division(&z.algebra, &mut budget()).unwrap().gr_division, "{l}: Z(End S) not gr-division");
            ensure!(cycles_gr_division(&e), "{l}: oracle says Z(End S) is not gr-division");
            found += 1;
        }
    }
    let mut decomps = 0;
    for f in [fp(2), fp(3), fp(5)] {
        let s = regular_module(&catalog::dual(f));
        for k in [1, 2, 3] {
            let m = direct_sum(&s, &shift_module(&s, k)).unwrap();
            let d = matrix_decomposition(&m, &mut budget()).map_err(|e| format!("S ⊕ S[{k}] over {f}: {e}"))?;
            ensure!(d.verified() && d.n() == 2, "S ⊕ S[{k}] over {f}: {:?}", d.failures);
            ensure!(d.psi.rank() == d.end_m.dim() && d.end_m.dim() == 4 * d.d.dim(), "psi is not bijective");
            decomps += 1;
        }
    }
    ensure!(found > 0, "no dg-simple modules found");
    Ok(format!("{found} dg-simple modules with gr-division Z(End); {decomps} Mat_2(D) decompositions over DUAL"))
}

fn random_cycles(m: &DGModule, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    let f = m.algebra().field();
    let kernel = m.delta().nullspace();
    (0..count)
        .map(|_| {
            let mut v = zero_vec(f, m.dim());
            for k in &kernel {
                let c = f.from_i64(rng.gen_range(0..f.characteristic() as i64));
                v = add(&v, &scale(&c, k));
            }
            v
        })
        .collect()
}

fn mat2_over_dual(f: FieldSpec) -> DGAlgebra {
    let q0 = catalog::q0(f);
    let v = DGModule::new(q0, vec!["v0".into(), "v1".into()], vec![0, 0], vec![Matrix::identity(f, 2)], Matrix::zeros(f, 2, 2))
        .unwrap();
    tensor_over_base(&catalog::dual(f), &end_algebra(&v).unwrap()).unwrap()
}

fn c9_density() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut targets: Vec<(String, DGModule, usize)> = Vec::new();
    for p in [2, 3, 5] {
        let f = fp(p);
        targets.push((format!("DUAL/F{p}"), regular_module(&catalog::dual(f)), 1));
        let s = simple_submodules(&regular_module(&catalog::m2(f)))?;
        targets.push((format!("M2/F{p}"), s.first().cloned().ok_or("no simple M2-module")?, 1));
    }
    for p in [2, 3] {
        let t = mat2_over_dual(fp(p));
        let s = simple_submodules(&regular_module(&t))?;
        targets.push((format!("DUAL⊗Mat2/F{p}"), s.first().cloned().ok_or("no simple module")?, 2));
    }
    let (mut k2_draws, mut k2_rejected) = (0, 0);
    for (_, m, k) in &targets {
        if *k == 1 {
            for _ in 0..5 {
                let xs = random_cycles(m, 2, &mut rng);
                k2_draws += 1;
                if !d_independent(m, &xs).unwrap().independent {
                    k2_rejected += 1;
                }
            }
        }
    }
    let (mut solved, mut attempts, mut per_k) = (0, 0, [0usize; 3]);
    while solved < 50 {
        let (label, m, k) = &targets[solved % targets.len()];
        attempts += 1;
        ensure!(attempts < 10_000, "too few certified instances");
        let xs = random_cycles(m, *k, &mut rng);
        if xs.iter().any(|x| is_zero_vec(x)) || !d_independent(m, &xs).unwrap().independent {
            continue;
        }
        let ys = random_cycles(m, *k, &mut rng);
        let inst = DensityInstance { module: m.clone(), xs: xs.clone(), ys: ys.clone() };
        let sol = density_solve(&inst, &mut budget()).map_err(|e| format!("{label}: {e}"))?;
        let alg = m.algebra();
        ensure!(is_zero_vec(&diff(alg, &sol.a)), "{label}: d(a) != 0");
        for (x, y) in xs.iter().zip(&ys) {
            ensure!(m.act(&sol.a, x) == *y, "{label}: a·x != y");
        }
        per_k[*k] += 1;
        solved += 1;
    }
    ensure!(k2_rejected == k2_draws, "a k = 2 family over DUAL/M2 was certified");
    Ok(format!(
        "50 solved and verified (k=1: {}, k=2: {}), 0 NoSolution; all {k2_rejected} k=2 draws over DUAL/M2 rejected as D-dependent",
        per_k[1], per_k[2]
    ))
}

fn c10_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut cases: Vec<(String, DGAlgebra, Vector, DGModule)> = Vec::new();
    for p in [2, 3] {
        let f = fp(p);
        for (l, a) in [("DUAL", catalog::dual(f)), ("M2", catalog::m2(f)), ("DD", catalog::dd(f))] {
            let y = acyclicity_witness(&a).unwrap().ok_or(format!("{l} is not acyclic"))?.y;
            let z = cycles_algebra(&a).unwrap().algebra;
            let reg = regular_module(&z);
            cases.push((format!("{l}/F{p} regular"), a.clone(), y.clone(), reg.clone()));
            for s in simple_submodules(&reg)? {
                cases.push((format!("{l}/F{p} simple"), a.clone(), y.clone(), s));
            }
        }
    }
    let mut randoms = 0;
    while randoms < 20 {
        let f = fp(*[2u32, 3].choose(&mut rng).unwrap());
        let (l, a) = [("DUAL", catalog::dual(f)), ("M2", catalog::m2(f)), ("DD", catalog::dd(f))]
            .choose(&mut rng)
            .cloned()
            .unwrap();
        let y = acyclicity_witness(&a).unwrap().unwrap().y;
        let z = cycles_algebra(&a).unwrap().algebra;
        let n = dgkernel_core::random::random_graded_module(&z, &mut rng).unwrap();
        cases.push((format!("{l}/{f} random"), a, y, n));
        randoms += 1;
    }
    let mut simple = 0;
    for (l, a, y, n) in &cases {
        let rt = induction_round_trip(a, y, n).map_err(|e| format!("{l}: {e}"))?;
        ensure!(rt.verified(), "{l}: {:?}", rt.failures);
        ensure!(is_identity(&rt.backward.mul(&rt.forward)), "{l}: backward∘forward != id");
        ensure!(is_identity(&rt.forward.mul(&rt.backward)), "{l}: forward∘backward != id");
        let ind = induce_functor(a, y, n).unwrap();
        let zm = z_functor(&ind.module).unwrap().module;
        for j in 0..n.dim() {
            let col = rt.forward.column(j);
            ensure!(
                col.iter().enumerate().all(|(i, c)| c.is_zero() || zm.degree(i) == n.degree(j)),
                "{l}: forward map is not graded"
            );
        }
        let s_n = is_dg_simple_module(n, &mut budget()).unwrap().simple;
        let s_ind = is_dg_simple_module(&ind.module, &mut budget()).unwrap().simple;
        ensure!(s_n == s_ind, "{l}: simplicity of N is {s_n}, of the induced module {s_ind}");
        if s_n {
            simple += 1;
        }
    }
    ensure!(simple > 0, "no simple instances tested");
    Ok(format!("{} round trips ({randoms} random N), {simple} simple, simplicity transfers both ways", cases.len()))
}

fn c11_center(pop: &Population, rows: &[DivisionRow]) -> Outcome {
    let (mut simple_count, mut division_f3) = (0, 0);
    for ((f, l, a), row) in pop.algebras.iter().zip(rows) {
        let gc = graded_center(a).map_err(|e| format!("{l}: {e}"))?;
        let n = a.dim();
        for v in gc.carrier.basis() {
            ensure!(gc.carrier.contains(&diff(a, v)), "{l} over {f}: center not d-closed");
        }
        for d in a.degrees().iter().copied().collect::<BTreeSet<_>>() {
            let graded = commutant(a, d, true);
            ensure!(gc.carrier.dim_in(d) == graded.len(), "{l}: graded center dim in degree {d}");
            ensure!(graded.iter().all(|v| gc.carrier.contains(v)), "{l}: graded center differs in degree {d}");
            if d.rem_euclid(2) == 0 {
                let ungraded = commutant(a, d, false);
                ensure!(span_equal(*f, n, &graded, &ungraded), "{l}: even degree {d} differs from ungraded center");
            }
        }
        ensure!(gc.certified() && gc.even_matches_ungraded(), "{l}: center certificate fails");
        let mut b = budget();
        if is_dg_simple_algebra(a, &mut b).unwrap().simple {
            let chk = graded_center_division_check(a, &mut b).map_err(|e| format!("{l}: {e}"))?;
            ensure!(chk.division.division, "{l}: center of a dg-simple algebra is not dg-division");
            ensure!(cycles_gr_division(&chk.center.sub.algebra), "{l}: oracle rejects the center");
            simple_count += 1;
        }
        if f.characteristic() != 2 && row.cycles {
            let chk = graded_center_division_check(a, &mut b).map_err(|e| format!("{l}: {e}"))?;
            ensure!(chk.cycles_even == Some(true), "{l}: center cycles flagged odd");
            let odd = cycle_basis(&chk.center.sub.algebra).iter().any(|(d, _)| d.rem_euclid(2) == 1);
            ensure!(!odd, "{l}: center has odd cycles");
            ensure!(cycle_basis(a).iter().all(|(d, _)| d.rem_euclid(2) == 0), "{l}: odd cycles");
            division_f3 += 1;
        }
    }
    for p in [3, 5] {
        for (l, w) in [("LAU", catalog::lau_window(fp(p))), ("LAU2", catalog::lau2_window(fp(p)))] {
            let c = graded_center_check_laurent(&w, &mut budget()).map_err(|e| format!("{l}: {e}"))?;
            ensure!(c.d_closed && c.cycles_even == Some(true), "{l} over F{p}: {c:?}");
        }
    }
    Ok(format!(
        "{} algebras: d-closed, even parts match; {simple_count} dg-simple certified; {division_f3} F3 divisions with even cycles",
        pop.algebras.len()
    ))
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "dga"))
        .collect();
    files.sort();
    files
}

fn run_bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dgkernel")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn c12_cli() -> Outcome {
    let files = corpus();
    let mut parsed = 0;
    for p in &files {
        let text = std::fs::read_to_string(p).unwrap();
        let name = p.file_name().unwrap().to_string_lossy().to_string();
        let Ok(spec) = parse_spec(&text) else {
            ensure!(name == "syntax_error.dga", "{name} does not parse");
            continue;
        };
        let printed = print_spec(&spec);
        let again = parse_spec(&printed).map_err(|e| format!("{name}: reprint does not parse: {e}"))?;
        ensure!(again == spec, "{name}: parse∘print changes the file");
        ensure!(print_spec(&again) == printed, "{name}: printing is not stable");
        parsed += 1;
    }
    ensure!(files.len() >= 15 && parsed >= 15, "corpus has {} files, {parsed} parse", files.len());

    let expected_code = |name: &str| match name {
        "missing_product.dga" | "syntax_error.dga" => 1,
        "alarm.dga" => 2,
        _ => 0,
    };
    for p in &files {
        let path = p.to_str().unwrap();
        let name = p.file_name().unwrap().to_string_lossy().to_string();
        let (c1, o1) = run_bin(&["run", path, "--json"]);
        let (c2, o2) = run_bin(&["run", path, "--json"]);
        ensure!(o1 == o2 && c1 == c2, "{name}: JSON differs between runs");
        ensure!(c1 == expected_code(&name), "{name}: exit code {c1}");
        for line in o1.lines() {
            serde_json::from_str::<serde_json::Value>(line).map_err(|e| format!("{name}: bad JSON line: {e}"))?;
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dga");
    std::fs::write(&bad, "field K = Fp(3)\nalgebra B over K {\n  basis one:0, x:1\n  unit one\n  mul default zero\n  d one = x\n}\n").unwrap();
    let (code, _) = run_bin(&["validate", bad.to_str().unwrap()]);
    ensure!(code == 1, "validate on an invalid algebra exits {code}");
    let (code, _) = run_bin(&["run", "/nonexistent/file.dga"]);
    ensure!(code == 1, "missing file exits {code}");
    Ok(format!("{} corpus files ({parsed} round-trip), JSON byte-identical, exit codes 0/1/2 honored", files.len()))
}

fn report(n: usize, name: &str, failures: &mut usize, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let t = start.elapsed();
    match result {
        Ok(detail) => println!("PASS [{n:>2}] {name}: {detail} ({t:.2?})"),
        Err(detail) => {
            *failures += 1;
            println!("FAIL [{n:>2}] {name}: {detail} ({t:.2?})");
        }
    }
}

fn main() {
    let mut failures = 0;
    report(1, "validator soundness", &mut failures, c1_validator);
    let start = Instant::now();
    let pop = build_population(200);
    let rows = match division_rows(&pop) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL population: {e}");
            std::process::exit(1);
        }
    };
    let elapsed = start.elapsed();
    report(2, "dg-division iff cycles gr-division", &mut failures, || c2_biconditional(&rows, elapsed));
    report(3, "triple equivalence", &mut failures, || c3_triple(&rows));
    report(4, "classification totality", &mut failures, || c4_classification(&pop, &rows));
    report(5, "acyclic decomposition", &mut failures, || c5_decomposition(&pop));
    report(6, "cycles of tensor products", &mut failures, || c6_cycles_of_tensor(&pop));
    report(7, "named verdicts", &mut failures, c7_named);
    report(8, "endomorphisms of simples", &mut failures, || c8_end_of_simple(&pop));
    report(9, "density", &mut failures, c9_density);
    report(10, "induction round trip", &mut failures, c10_round_trip);
    report(11, "graded center", &mut failures, || c11_center(&pop, &rows));
    report(12, "command line", &mut failures, c12_cli);
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
