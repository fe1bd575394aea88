//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tiltbench::algebra::{endomorphism_algebra, find_symmetrizing_form, PartitionedAlgebra};
use tiltbench::analysis::{
    cartan_recurrence_audit, fit_recurrence, resolution_growth, theorem_main_verdict, Outcome, RECURRENCE_DISCREPANCY,
};
use tiltbench::cli::{execute, RunConfig};
use tiltbench::data;
use tiltbench::homotopy::{
    duality_check, or_tilting, random_complex, trace_resolution, verify_tilting, CartanTable, RandomComplexSpec,
};
use tiltbench::module::{
    hom_as_e_module, hom_space, indecomposable_projectives, projective_modules, SearchPolicy, StructureSummary,
    DEFAULT_CAP,
};

use common::*;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn ex1() -> std::result::Result<Arc<PartitionedAlgebra>, String> {
    Ok(data::ex1().map_err(e)?.into_shared())
}

fn big(v: &[usize]) -> Vec<num_bigint::BigInt> {
    v.iter().map(|&x| num_bigint::BigInt::from(x)).collect()
}

fn group_builder() -> Check {
    let a = ex1()?;
    ensure(a.num_simples() == 2, || format!("{} simples", a.num_simples()))?;
    let ps = indecomposable_projectives(&a).map_err(e)?;
    for p in &ps {
        let layers = StructureSummary::of(p).loewy_layers;
        ensure(layers == [1, 2, 3, 2, 1], || format!("projective layers {layers:?}"))?;
    }
    let c = a.cartan_matrix();
    ensure(c == [[5, 4], [4, 5]], || format!("Cartan {c:?}"))?;
    Ok(format!("2 simples, layers [1,2,3,2,1], Cartan {c:?}"))
}

fn endomorphism_ex1() -> Check {
    let a = ex1()?;
    let t = endomorphism_algebra(&a, &[0]).map_err(e)?;
    let en = &t.endo;
    let sym = find_symmetrizing_form(en);
    let layers = en.radical_layers();
    ensure(en.dim() == 5, || format!("dim {}", en.dim()))?;
    ensure(en.is_commutative() && en.is_local(), || "not commutative and local".into())?;
    ensure(sym.is_verified(), || sym.note.clone())?;
    ensure(layers == [1, 3, 1], || format!("radical layers {layers:?}"))?;
    Ok(format!("dim 5, commutative, local, {}, layers {layers:?}", sym.note))
}

fn module_ex1() -> Check {
    let a = ex1()?;
    let t = endomorphism_algebra(&a, &[0]).map_err(e)?;
    let m = hom_as_e_module(&t, &projective_modules(&a)[1].rep).map_err(e)?;
    let s = StructureSummary::of(&m);
    ensure((s.dim, s.head_dim, s.socle_dim) == (4, 2, 2), || format!("{s:?}"))?;
    Ok("dim 4, head 2, socle 2".into())
}

fn growth_ex1() -> Check {
    let a = ex1()?;
    let t = endomorphism_algebra(&a, &[0]).map_err(e)?;
    let g = resolution_growth(&t, 1, 6, DEFAULT_CAP).map_err(e)?;
    let socles = g.socle_dims();
    ensure(socles == [2, 2, 4, 10, 26, 68, 178], || format!("socle dims {socles:?}"))?;
    let terms = g.term_dims();
    ensure(terms[..5] == [10, 20, 50, 130, 340], || format!("term dims {terms:?}"))?;
    let fit = fit_recurrence(&big(&socles)).ok_or("no recurrence fits the socle dimensions")?;
    ensure(fit.describe() == "x^2 = 3x - 1", || fit.describe())?;
    ensure(fit.bracket_contains_golden_square(), || format!("bracket {:?}", fit.dominant_root))?;
    let v = theorem_main_verdict(&a, &[0], 1, 6, DEFAULT_CAP, &SearchPolicy::default()).map_err(e)?;
    ensure(v.outcome.name() == "GROWTH_OBSERVED", || v.outcome.name().into())?;
    let cfg = RunConfig {
        take: vec!["k".into()],
        target: Some("eps".into()),
        steps: 6,
        tilt_t: 0,
        ..RunConfig::new("analyze", "ex1")
    };
    let doc = execute(&cfg).map_err(e)?;
    ensure(doc.warnings.iter().any(|w| w == RECURRENCE_DISCREPANCY), || "report lacks the recurrence flag".into())?;
    Ok(format!("a_s = {socles:?}, {}, verdict GROWTH_OBSERVED, report flags the first-order recurrence", fit.describe()))
}

fn periodic_ex2() -> Check {
    let a = data::ex2().map_err(e)?.into_shared();
    let t = endomorphism_algebra(&a, &[0]).map_err(e)?;
    ensure(t.endo.dim() == 6 && t.endo.is_commutative(), || format!("E dim {}", t.endo.dim()))?;
    let m = hom_as_e_module(&t, &projective_modules(&a)[1].rep).map_err(e)?;
    ensure(m.dim() == 3, || format!("M dim {}", m.dim()))?;
    let v = theorem_main_verdict(&a, &[0], 1, 4, DEFAULT_CAP, &SearchPolicy::default()).map_err(e)?;
    let Outcome::Periodic(p) = &v.outcome else { return Err(format!("verdict {}", v.outcome.name())) };
    ensure((p.s, p.s_prime) == (0, 1), || format!("period pair {:?}", (p.s, p.s_prime)))?;
    let g = v.growth.as_ref().ok_or("no growth data")?;
    let (x, y) = (&g.syzygies[0], &g.syzygies[1]);
    ensure(p.witness.is_invertible() && intertwines(&p.witness, x.actions(), y.actions()), || {
        "witness is not an isomorphism".into()
    })?;
    Ok("E dim 6 commutative, M dim 3, ΩM ≅ M with checked witness, verdict PERIODIC".into())
}

fn a4_periodic() -> Check {
    let a = data::a4().map_err(e)?.into_shared();
    let labels = a.simple_labels();
    let k = a.simple_index("k").ok_or("no trivial simple")?;
    let others: Vec<usize> = (0..labels.len()).filter(|&i| i != k).collect();
    let t = endomorphism_algebra(&a, &[k]).map_err(e)?;
    let en = &t.endo;
    ensure(en.dim() == 2 && en.is_local() && en.is_commutative() && en.radical_layers() == [1, 1], || {
        format!("E dim {}, layers {:?}", en.dim(), en.radical_layers())
    })?;
    let policy = SearchPolicy::default();
    let v1 = theorem_main_verdict(&a, &[k], others[0], 6, DEFAULT_CAP, &policy).map_err(e)?;
    ensure(v1.outcome.name() == "PERIODIC", || format!("singleton verdict {}", v1.outcome.name()))?;
    let two = [k, others[0]];
    let t2 = endomorphism_algebra(&a, &two).map_err(e)?;
    ensure(t2.endo.dim() == 6, || format!("E dim {} for two simples", t2.endo.dim()))?;
    let v2 = theorem_main_verdict(&a, &two, others[1], 6, DEFAULT_CAP, &policy).map_err(e)?;
    ensure(v2.outcome.name() == "PERIODIC", || format!("two-simple verdict {}", v2.outcome.name()))?;
    Ok("one simple: E ≅ k[x]/(x^2), PERIODIC; two simples: E dim 6, PERIODIC".into())
}

fn tilting_ex1() -> Check {
    let start = Instant::now();
    let a = ex1()?;
    let t = endomorphism_algebra(&a, &[0]).map_err(e)?;
    let mut checked = 0;
    for tt in 1..=3 {
        let ts = or_tilting(&t, tt, DEFAULT_CAP).map_err(e)?;
        let r = verify_tilting(&t, &ts, tt, None).map_err(e)?;
        ensure(r.passed && r.certificates.iter().all(|c| c.holds()), || {
            format!("t = {tt}: offending {:?}", r.offending)
        })?;
        checked += r.checked;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("t = 1, 2, 3: {checked} off-degree homs vanish, generation certified, {secs:.2} s"))
}

fn cartan_tables() -> Check {
    let a = ex1()?;
    let t = endomorphism_algebra(&a, &[0]).map_err(e)?;
    let table = CartanTable::build(&t, 3, DEFAULT_CAP).map_err(e)?;
    let expected = vec![
        vec![vec![5, 4], vec![4, 5]],
        vec![vec![5, 6], vec![6, 9]],
        vec![vec![5, 14], vec![14, 41]],
        vec![vec![5, 36], vec![36, 261]],
    ];
    ensure(table.matrices == expected, || format!("{:?}", table.matrices))?;
    ensure(table.symmetric().iter().all(|&s| s), || "asymmetric matrix".into())?;
    let dets = table.determinants();
    ensure(dets.iter().all(|d| *d == 9.into()), || format!("determinants {dets:?}"))?;
    ensure(table.block_stable(), || "I_0 block changes".into())?;
    Ok("c_(k,eps) = 4, 6, 14, 36; symmetric; det 9; I_0 block constant 5".into())
}

fn recurrence_audit() -> Check {
    let a = ex1()?;
    let t = endomorphism_algebra(&a, &[0]).map_err(e)?;
    let table = CartanTable::build(&t, 3, DEFAULT_CAP).map_err(e)?;
    let audit = cartan_recurrence_audit(&t, &table, 3, DEFAULT_CAP).map_err(e)?;
    let sums: Vec<usize> = audit.rows.iter().map(|r| r.hom_dim).collect();
    ensure(audit.all_pass(), || format!("{:?}", audit.rows))?;
    ensure(sums == [10, 20, 50], || format!("sums {sums:?}"))?;
    Ok("c^(t) + c^(t+1) = dim Hom(P_k, R_eps^(t)) = 10, 20, 50".into())
}

fn duality_suite() -> Check {
    let a = data::ex1().map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0a1);
    let spec = RandomComplexSpec::default();
    let mut nonzero = 0;
    for case in 0..50 {
        let x = random_complex(&mut rng, &a, &spec);
        let y = random_complex(&mut rng, &a, &spec);
        let rows = duality_check(&a, &x, &y, -3..=3).map_err(e)?;
        if let Some(r) = rows.iter().find(|r| !r.agree) {
            return Err(format!("pair {case}, n = {}: {} vs {}", r.n, r.forward, r.backward));
        }
        nonzero += rows.iter().filter(|r| r.forward > 0).count();
    }
    Ok(format!("50 pairs, window [-3, 3], {nonzero} nonzero hom spaces, all dual"))
}

fn cross_check() -> Check {
    let mut out = Vec::new();
    for (name, a) in [("ex1", data::ex1()), ("ex2", data::ex2())] {
        let a = a.map_err(e)?.into_shared();
        let t = endomorphism_algebra(&a, &[0]).map_err(e)?;
        let res = trace_resolution(&a, &[0], 1, 6, DEFAULT_CAP).map_err(e)?;
        let g = resolution_growth(&t, 1, 5, DEFAULT_CAP).map_err(e)?;
        let a_side: Vec<usize> = res.terms.iter().take(6).map(|s| s.multiplicities(a.num_simples())[0]).collect();
        let e_side: Vec<usize> = g.records.iter().map(|r| r.term[0]).collect();
        ensure(a_side == e_side, || format!("{name}: A-side {a_side:?}, E-side {e_side:?}"))?;
        out.push(format!("{name} {a_side:?}"));
    }
    Ok(format!("A-side and E-side multiplicities agree for s = 0..5: {}", out.join(", ")))
}

fn kernel_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1000);
    let fields = [gf(3, 1), gf(2, 2), gf(5, 1)];
    for case in 0..1000 {
        let f = &fields[case % fields.len()];
        let (r, c) = (1 + case % 7, 1 + (case / 7) % 7);
        let m = random_matrix(&mut rng, f, r, c);
        let x = random_vector(&mut rng, f, r);
        check_matrix_round_trip(&m, &x).map_err(|err| format!("matrix case {case}: {err}"))?;
    }
    let a = ex1()?;
    let ps = projective_modules(&a);
    let homs: Vec<_> = (0..4).map(|k| hom_space(&ps[k / 2].rep, &ps[k % 2].rep)).collect::<Result<_, _>>().map_err(e)?;
    for case in 0..1000 {
        let k = case % 4;
        if let Some(f) = random_hom(&mut rng, &homs[k], a.field()) {
            ensure(intertwines(&f, ps[k / 2].rep.actions(), ps[k % 2].rep.actions()), || {
                format!("hom case {case} does not intertwine")
            })?;
        }
    }
    for (p, d) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        check_field_axioms(&gf(p, d)).map_err(|err| format!("GF({p}^{d}): {err}"))?;
    }
    Ok("1000 rref/solve/kernel cases, 1000 hom cases, field axioms for GF(2), GF(3), GF(4), GF(9)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("group builder", group_builder),
        ("endomorphism algebra", endomorphism_ex1),
        ("Hom(Q_0, P_eps) as E-module", module_ex1),
        ("growth", growth_ex1),
        ("mixed action periodicity", periodic_ex2),
        ("A4 periodicity", a4_periodic),
        ("tilting verification", tilting_ex1),
        ("Cartan tables", cartan_tables),
        ("recurrence audit", recurrence_audit),
        ("duality", duality_suite),
        ("cross-check", cross_check),
        ("kernel properties", kernel_suite),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} ({secs:.2} s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why} ({secs:.2} s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
