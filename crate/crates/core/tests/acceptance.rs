//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p functcat --test acceptance`.

use functcat::endo::{
    c_battery, endomorphism_algebra, gl_dim_inequality_check, pd_transfer_check, recollement_check,
};
use functcat::funmod::{dual_basis, realize_bundle, FModule};
use functcat::homology::{
    ar_duality_check, battery_seed, ext, ext_via_injectives, idempotency_level, projective_dimension,
    BatteryModule, TraceContext,
};
use functcat::instance::{fixture, load_instance, Instance, FIXTURES};
use serde_json::Value;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

const LIMIT_C1: Duration = Duration::from_secs(10);
const LIMIT_C2: Duration = Duration::from_secs(10);
const LIMIT_C5: Duration = Duration::from_secs(30);
const MIN_BATTERY: usize = 10;
const MAX_K: usize = 6;
const AR_DEGREES: usize = 5;
const EXT_DEGREES: usize = 4;
const PD_BOUND: usize = 8;

type Outcome = Result<String, String>;

fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}.cat", env!("CARGO_MANIFEST_DIR"))
}

fn instance(name: &str) -> Instance {
    load_instance(fixture(name).expect("shipped fixture")).expect("fixture loads")
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_functcat")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_json(args: &[&str]) -> Result<(i32, Value), String> {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = cli(&full);
    let v = serde_json::from_slice(&out).map_err(|e| format!("bad JSON from {args:?}: {e}"))?;
    Ok((code, v))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn verdict<'a>(report: &'a Value, name: &str) -> Result<&'a Value, String> {
    report["verdicts"]
        .as_array()
        .and_then(|vs| vs.iter().find(|v| v["check"] == name))
        .ok_or_else(|| format!("no verdict `{name}`"))
}

fn c1() -> Outcome {
    let t = Instant::now();
    let z6 = fixture_path("z6");
    let (code, rep) = cli_json(&["idempotency", &z6, "--bundle", "P23", "--max-k", "6"])?;
    check(code == 0, || format!("idempotency exit {code}"))?;
    check(rep["params"]["level"] == 2, || format!("level {}", rep["params"]["level"]))?;
    let (code, rep) = cli_json(&["ext", &z6, "--from", "S1", "--to", "S4", "--max-i", "3"])?;
    check(code == 0, || format!("ext exit {code}"))?;
    let dims = verdict(&rep, "injective_oracle")?["detail"]["dims"].clone();
    check(dims[3].as_u64().is_some_and(|d| d > 0), || format!("Ext dims {dims}"))?;
    check(dims == serde_json::json!([0, 0, 0, 1]), || format!("Ext dims {dims}"))?;
    let (_, text) = cli(&["idempotency", &z6, "--bundle", "P23", "--max-k", "6"]);
    check(String::from_utf8_lossy(&text).contains("level = 2"), || "missing `level = 2`".into())?;
    let e = t.elapsed();
    within(e, LIMIT_C1)?;
    Ok(format!("level = 2, Ext(S1, S4) = {dims}, {e:.2?}"))
}

fn c2() -> Outcome {
    let t = Instant::now();
    let (code, rep) = cli_json(&["idempotency", &fixture_path("z6"), "--bundle", "P123", "--max-k", "6"])?;
    check(code == 0, || format!("exit {code}"))?;
    check(rep["params"]["level"] == 6, || format!("level {}", rep["params"]["level"]))?;
    let e = t.elapsed();
    within(e, LIMIT_C2)?;
    Ok(format!("level = 6, {e:.2?}"))
}

fn c3() -> Outcome {
    let (code, rep) = cli_json(&["endo-report", &fixture_path("a3h"), "--bundle", "P2"])?;
    check(code == 0, || format!("exit {code}"))?;
    let p = &verdict(&rep, "projectivity_biconditional")?["detail"];
    let all = p["ideal_projective"].as_array().ok_or("no projectivity table")?;
    check(all.iter().all(|e| e[1] == true) && p["all_projective"] == true, || format!("I(c,-) {all:?}"))?;
    check(p["level"].as_u64().is_some_and(|l| l >= 2), || format!("level {}", p["level"]))?;
    check(p["i1_eq_iinf"] == true && p["biconditional"] == true, || "biconditional".into())?;
    let gl = p["gl_dim_algebra"]["Exact"].as_u64();
    check(gl.is_some_and(|g| g <= 2), || format!("gl.dim R_P {}", p["gl_dim_algebra"]))?;
    check(p["quasi_hereditary"] == true, || "quasi-hereditary flag not raised".into())?;
    Ok(format!("{} vertices projective, gl.dim R_P = {}", all.len(), gl.unwrap()))
}

fn c4() -> Outcome {
    let seed = battery_seed();
    let mut cases = 0;
    for (name, _) in FIXTURES {
        let inst = instance(name);
        for (bname, bundle) in &inst.bundles {
            let ctx = TraceContext::new(&inst.category, bundle);
            let rep = idempotency_level(&ctx.quotient, MAX_K, Some(&ctx), seed)
                .map_err(|e| format!("{name}/{bname}: {e}"))?;
            check(rep.verdicts.len() == MAX_K, || format!("{name}/{bname}: {} verdicts", rep.verdicts.len()))?;
            for v in &rep.verdicts {
                check(v.trace.is_some() && v.concordant(), || format!("{name}/{bname} k={}: {v:?}", v.k))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} fixture x bundle x k cases concordant"))
}

fn c5() -> Outcome {
    let t = Instant::now();
    let seed = battery_seed();
    let mut axioms = 0;
    for (name, _) in FIXTURES {
        let inst = instance(name);
        let cat = &inst.category;
        for (bname, bundle) in &inst.bundles {
            let ctx = TraceContext::new(cat, bundle);
            let alg = endomorphism_algebra(cat, bundle).map_err(|e| e.to_string())?;
            let cb = c_battery(cat, seed, MIN_BATTERY);
            let qb = c_battery(ctx.quotient.quotient(), seed, MIN_BATTERY);
            let rep = recollement_check(&ctx, &alg, &cb, &qb).map_err(|e| format!("{name}/{bname}: {e}"))?;
            check(
                rep.battery_c >= MIN_BATTERY && rep.battery_quotient >= MIN_BATTERY && rep.battery_algebra >= MIN_BATTERY,
                || format!("{name}/{bname}: batteries {} {} {}", rep.battery_c, rep.battery_quotient, rep.battery_algebra),
            )?;
            for tag in ["R1", "R2", "R3"] {
                check(rep.axioms.iter().any(|a| a.axiom.starts_with(tag)), || format!("{name}/{bname}: no {tag}"))?;
            }
            for a in &rep.axioms {
                check(a.passed, || format!("{name}/{bname}: {} {:?}", a.axiom, a.failures))?;
                axioms += 1;
            }
        }
    }
    let e = t.elapsed();
    within(e, LIMIT_C5)?;
    Ok(format!("{axioms} axiom checks, {e:.2?}"))
}

fn c6() -> Outcome {
    let seed = battery_seed();
    let mut pairs = 0;
    for (name, _) in FIXTURES {
        let cat = instance(name).category;
        let left = c_battery(&cat.opposite(), seed, MIN_BATTERY);
        let right = c_battery(&cat, seed, MIN_BATTERY);
        for n in &left {
            for m in &right {
                let ok = ar_duality_check(&n.module, &m.module, AR_DEGREES).map_err(|e| e.to_string())?;
                check(ok, || format!("{name}: Tor({}, {}) vs Ext", n.name, m.name))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, degrees 0..={AR_DEGREES}"))
}

fn c7() -> Outcome {
    let mut checked = 0;
    let mut rejected = 0;
    for (name, _) in FIXTURES {
        let inst = instance(name);
        let cat = &inst.category;
        let mut modules: Vec<(String, FModule)> = inst.modules.clone();
        for v in cat.vertices() {
            for p in ["P", "S", "I"] {
                let n = format!("{p}{v}");
                modules.push((n.clone(), inst.module(&n).map_err(|e| e.to_string())?));
            }
        }
        for (bname, b) in &inst.bundles {
            modules.push((format!("bundle {bname}"), realize_bundle(cat, b).module));
        }
        for (mname, m) in &modules {
            let projective = projective_dimension(m, 0) == Some(0);
            let db = dual_basis(m).map_err(|e| e.to_string())?;
            match (projective, db) {
                (true, Some(db)) => {
                    check(db.reconstructs(m), || format!("{name}: {mname} fails reconstruction"))?;
                    checked += 1;
                }
                (false, None) => rejected += 1,
                (p, db) => return Err(format!("{name}: {mname} projective {p}, dual basis {}", db.is_some())),
            }
        }
    }
    Ok(format!("{checked} projective modules reconstructed, {rejected} non-projective rejected"))
}

fn c8() -> Outcome {
    let seed = battery_seed();
    let mut pairs = 0;
    for (name, _) in FIXTURES {
        let battery: Vec<BatteryModule> = c_battery(&instance(name).category, seed, MIN_BATTERY);
        for a in &battery {
            for b in &battery {
                let p = ext(&a.module, &b.module, EXT_DEGREES).map_err(|e| e.to_string())?;
                let i = ext_via_injectives(&a.module, &b.module, EXT_DEGREES).map_err(|e| e.to_string())?;
                check(p == i, || format!("{name}: Ext({}, {}) {:?} vs {:?}", a.name, b.name, p.dims, i.dims))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, degrees 0..={EXT_DEGREES}"))
}

fn c9() -> Outcome {
    let seed = battery_seed();
    let (mut rows, mut inequalities) = (0, 0);
    for (name, _) in FIXTURES {
        let inst = instance(name);
        let cat = &inst.category;
        let mut battery = c_battery(cat, seed, MIN_BATTERY);
        battery.extend(inst.modules.iter().map(|(n, m)| BatteryModule { name: n.clone(), module: m.clone() }));
        for (bname, bundle) in &inst.bundles {
            let ctx = TraceContext::new(cat, bundle);
            let alg = endomorphism_algebra(cat, bundle).map_err(|e| e.to_string())?;
            for r in pd_transfer_check(&ctx, &alg, &battery, PD_BOUND).map_err(|e| e.to_string())? {
                check(r.equal, || format!("{name}/{bname}: {} pd {} vs {:?}", r.module, r.pd, r.pd_algebra))?;
                rows += 1;
            }
            let gl = gl_dim_inequality_check(&alg, PD_BOUND).map_err(|e| e.to_string())?;
            if gl.i1_eq_iinf {
                check(gl.inequality == Some(true), || format!("{name}/{bname}: {gl:?}"))?;
                inequalities += 1;
            }
        }
    }
    check(rows > 0, || "no module certified in P_inf".into())?;
    Ok(format!("{rows} pd transfers, {inequalities} gl.dim inequalities"))
}

fn c10() -> Outcome {
    let (c1, first) = cli(&["--json", "examples"]);
    let (c2, second) = cli(&["--json", "examples"]);
    check(c1 == 0 && c2 == 0, || format!("exit codes {c1}, {c2}"))?;
    check(first == second, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", first.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("z6 {2,3}: level 2 and Ext^3(S1, S4) nonzero", c1),
        ("z6 {1,2,3}: level 6", c2),
        ("a3h {2}: heredity report", c3),
        ("criteria concordance", c4),
        ("recollement axioms", c5),
        ("AR duality", c6),
        ("dual basis reconstruction", c7),
        ("Ext via injective coresolutions", c8),
        ("pd and gl.dim transfers", c9),
        ("examples --json determinism", c10),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS  C{:<2} {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  C{:<2} {title}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
