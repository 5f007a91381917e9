//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wobetti::families::{cycles, forests, stars, StarKind};
use wobetti::splitting::{verify_splitting, NodeKind};
use wobetti::{
    betti_table, classify, evaluate_formula, family_certificate, invariants_from_table,
    oracle_report, polarize, BettiTable, Monomial, MonomialIdeal, OracleConfig, SplitOptions,
    SplittingCertificate, VarSet, WeightedOrientedGraph,
};
use wobetti_cli::random_ideal;

const LIMIT_POLARIZATION: Duration = Duration::from_secs(1);
const LIMIT_STARS: Duration = Duration::from_secs(60);
const LIMIT_FORESTS: Duration = Duration::from_secs(600);
const LIMIT_CYCLES: Duration = Duration::from_secs(300);

const SEED_POLARIZATION: u64 = 20_240_501;
const SEED_LAWS: u64 = 7_340_211;

struct Verdict {
    ok: bool,
    detail: String,
}

fn report(n: usize, title: &str, v: &Verdict, elapsed: Duration) -> bool {
    println!(
        "criterion {n}: {} {title}: {} [{:.2?}]",
        if v.ok { "PASS" } else { "FAIL" },
        v.detail,
        elapsed
    );
    v.ok
}

fn timed(f: impl FnOnce() -> Verdict) -> (Verdict, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

/// Rewrites `x_{ij}` as `xi_j`.
fn from_tex(s: &str) -> String {
    let mut out = String::new();
    let mut rest = s;
    while let Some(p) = rest.find("x_{") {
        out.push_str(&rest[..p]);
        let body = &rest[p + 3..];
        let end = body.find('}').unwrap();
        let digits = &body[..end];
        let sep = if out.ends_with('(') || out.ends_with(',') || out.is_empty() {
            ""
        } else {
            "*"
        };
        out.push_str(&format!("{sep}x{}_{}", &digits[..1], &digits[1..]));
        rest = &body[end + 1..];
    }
    out.push_str(rest);
    out.replace(',', ", ")
}

fn golden_polarization() -> Verdict {
    let cases = [
        (
            "(x1^2*x2^3, x2^4*x3, x3*x4^2, x4^2*x5)",
            "(x_{11}x_{12}x_{21}x_{22}x_{23},x_{21}x_{22}x_{23}x_{24}x_{31},x_{31}x_{41}x_{42},x_{41}x_{42}x_{51})",
        ),
        (
            "(x1*x2^3, x2*x3, x3*x4^2, x4*x5^5)",
            "(x_{11}x_{21}x_{22}x_{23},x_{21}x_{31},x_{31}x_{41}x_{42},x_{41}x_{51}x_{52}x_{53}x_{54}x_{55})",
        ),
    ];
    let mut bad = Vec::new();
    for (input, expected) in cases {
        let p = polarize(&MonomialIdeal::parse(input).unwrap()).unwrap();
        let want = MonomialIdeal::parse_in(&from_tex(expected), p.ideal().vars()).unwrap();
        if p.ideal().to_string() != want.to_string() {
            bad.push(format!("{input} gave {} expected {want}", p.ideal()));
        }
    }
    Verdict {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            "both golden generator sets reproduced".into()
        } else {
            bad.join("; ")
        },
    }
}

/// Formula versus oracle, with the certificate kept for the splitting check.
struct FamilyRun {
    instances: usize,
    mismatches: Vec<String>,
    certificates: Vec<SplittingCertificate>,
}

fn run_family(
    graphs: impl IntoIterator<Item = WeightedOrientedGraph>,
    extra: impl Fn(&WeightedOrientedGraph, &wobetti::InvariantReport) -> Option<String>,
) -> FamilyRun {
    let cfg = OracleConfig::default();
    let opts = SplitOptions::default();
    let mut run = FamilyRun {
        instances: 0,
        mismatches: Vec::new(),
        certificates: Vec::new(),
    };
    for d in graphs {
        run.instances += 1;
        let f = evaluate_formula(&d).unwrap();
        let o = oracle_report(&d, &cfg).unwrap();
        let label = d.to_edge_list().trim_end().replace('\n', "; ");
        if !f.same_invariants(&o) {
            run.mismatches.push(format!(
                "{label}: formula ({}, {}) oracle ({}, {})",
                f.pd, f.reg, o.pd, o.reg
            ));
        }
        if f.pd + f.depth != d.num_vertices() {
            run.mismatches.push(format!("{label}: pd + depth != |V|"));
        }
        if let Some(msg) = extra(&d, &f) {
            run.mismatches.push(format!("{label}: {msg}"));
        }
        match family_certificate(&d, &opts) {
            Ok(fc) => run.certificates.push(fc.certificate),
            Err(e) => run.mismatches.push(format!("{label}: certificate {e}")),
        }
    }
    run
}

fn family_verdict(run: &FamilyRun) -> Verdict {
    Verdict {
        ok: run.mismatches.is_empty(),
        detail: format!(
            "{} instances, {} mismatches{}",
            run.instances,
            run.mismatches.len(),
            run.mismatches
                .first()
                .map(|m| format!(" (first: {m})"))
                .unwrap_or_default()
        ),
    }
}

fn star_graphs() -> Vec<WeightedOrientedGraph> {
    let mut out = Vec::new();
    for kind in StarKind::ALL {
        for n in 3..=6 {
            out.extend(stars(kind, n, &[2, 3, 4]).unwrap());
        }
    }
    out
}

fn forest_graphs() -> Vec<WeightedOrientedGraph> {
    (1..=6).flat_map(|e| forests(e, &[2, 3]).unwrap()).collect()
}

fn cycle_graphs() -> Vec<WeightedOrientedGraph> {
    (3..=6).flat_map(|n| cycles(n, &[2, 3]).unwrap()).collect()
}

fn tree_depth_is_two(d: &WeightedOrientedGraph, f: &wobetti::InvariantReport) -> Option<String> {
    let c = classify(d).unwrap();
    let trees = c.forest.as_ref().map(|s| s.components).unwrap_or(0);
    (trees == 1 && f.depth != 2).then(|| format!("tree depth {} != 2", f.depth))
}

fn cycle_depth_is_one(_: &WeightedOrientedGraph, f: &wobetti::InvariantReport) -> Option<String> {
    (f.depth != 1).then(|| format!("cycle depth {} != 1", f.depth))
}

fn polarization_invariance() -> Verdict {
    let cfg = OracleConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED_POLARIZATION);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let i = random_ideal(&mut rng, 4, 6, 3);
        let p = polarize(&i).unwrap();
        if betti_table(&i, &cfg).unwrap().entries() != betti_table(p.ideal(), &cfg).unwrap().entries() {
            bad.push(i.to_string());
        }
    }
    Verdict {
        ok: bad.is_empty(),
        detail: format!("200 seeded ideals, {} mismatches", bad.len()),
    }
}

fn splitting_identity(runs: &[&FamilyRun]) -> Verdict {
    let cfg = OracleConfig::default();
    let (mut checked, mut failed) = (0usize, Vec::new());
    for run in runs {
        for cert in &run.certificates {
            for node in cert.root.walk() {
                if let NodeKind::Split { generator, k, .. } = &node.kind {
                    checked += 1;
                    let j = MonomialIdeal::principal(generator.clone()).unwrap();
                    match verify_splitting(&node.ideal, &j, &k.ideal, &cfg) {
                        Ok(c) if c.holds() => {}
                        Ok(_) => failed.push(node.ideal.to_string()),
                        Err(e) => failed.push(format!("{}: {e}", node.ideal)),
                    }
                }
            }
        }
    }
    Verdict {
        ok: failed.is_empty() && checked > 0,
        detail: format!("{checked} split nodes checked, {} failures", failed.len()),
    }
}

fn exps(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
    loop {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        if e.iter().any(|&x| x > 0) {
            return e;
        }
    }
}

fn random_in(rng: &mut ChaCha8Rng, vars: &VarSet, slots: std::ops::Range<usize>) -> MonomialIdeal {
    let count = rng.gen_range(1..=3);
    let gens: Vec<Monomial> = (0..count)
        .map(|_| {
            let mut e = vec![0; vars.len()];
            let local = exps(rng, slots.len());
            e[slots.clone()].copy_from_slice(&local);
            Monomial::new(vars, e).unwrap()
        })
        .collect();
    MonomialIdeal::new(vars, gens).unwrap()
}

fn pd_reg(t: &BettiTable) -> (usize, u64) {
    let inv = invariants_from_table(t).unwrap();
    (inv.pd, inv.reg)
}

fn disjoint_and_coprime_laws() -> Verdict {
    let cfg = OracleConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED_LAWS);
    let vars = VarSet::numbered(6).unwrap();
    let mut failures = Vec::new();
    for _ in 0..100 {
        let a = random_in(&mut rng, &vars, 0..3);
        let b = random_in(&mut rng, &vars, 3..6);
        let (pa, ra) = pd_reg(&betti_table(&a, &cfg).unwrap());
        let (pb, rb) = pd_reg(&betti_table(&b, &cfg).unwrap());
        let (ps, rs) = pd_reg(&betti_table(&a.sum(&b).unwrap(), &cfg).unwrap());
        if ps != pa + pb + 1 {
            failures.push(format!("pd of {a} + {b}"));
        }
        if rs != ra + rb - 1 {
            failures.push(format!("reg of {a} + {b}"));
        }
    }
    for _ in 0..100 {
        let i = random_in(&mut rng, &vars, 0..3);
        let mut ue = vec![0; 6];
        ue[3..6].copy_from_slice(&exps(&mut rng, 3));
        let u = Monomial::new(&vars, ue).unwrap();
        let ti = betti_table(&i, &cfg).unwrap();
        let tu = betti_table(&i.scale(&u).unwrap(), &cfg).unwrap();
        let (pi, ri) = pd_reg(&ti);
        let (pu, ru) = pd_reg(&tu);
        if pu != pi {
            failures.push(format!("pd of {u}·{i}"));
        }
        if ru != ri + u.degree() {
            failures.push(format!("reg of {u}·{i}"));
        }
        let shifted: Vec<_> = ti
            .entries()
            .iter()
            .map(|(&(a, j), &b)| ((a, j + u.degree()), b))
            .collect();
        if tu.entries().iter().map(|(&k, &v)| (k, v)).collect::<Vec<_>>() != shifted {
            failures.push(format!("shifted table of {u}·{i}"));
        }
    }
    Verdict {
        ok: failures.is_empty(),
        detail: format!(
            "100 disjoint pairs and 100 coprime scalings, {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    }
}

fn certificate_determinism() -> Verdict {
    let dir = std::env::temp_dir().join(format!("wobetti-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cycle4.txt");
    std::fs::write(
        &path,
        "x1 -> x2; x2 -> x3; x3 -> x4; x4 -> x1\nw(x1)=2; w(x2)=2; w(x3)=2; w(x4)=2\n",
    )
    .unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_wobetti"))
            .arg("certificate")
            .arg(&path)
            .output()
            .unwrap()
    };
    let (first, second) = (run(), run());
    let _ = std::fs::remove_dir_all(&dir);
    let same = first.stdout == second.stdout && first.status.success() && second.status.success();
    let text = String::from_utf8_lossy(&first.stdout);
    let spine = text
        .lines()
        .find(|l| l.contains("spine-splits="))
        .and_then(|l| l.split("spine-splits=").nth(1))
        .and_then(|s| s.split_whitespace().next())
        .and_then(|s| s.parse::<usize>().ok());
    Verdict {
        ok: same && spine == Some(3),
        detail: format!(
            "outputs {}, spine split nodes {:?}",
            if same { "byte-identical" } else { "differ" },
            spine
        ),
    }
}

fn triangle_table() -> Verdict {
    let i = MonomialIdeal::parse("(x1*x2^2, x2*x3^2, x3*x1^2)").unwrap();
    let t = betti_table(&i, &OracleConfig::default()).unwrap();
    let got: Vec<_> = t.entries().iter().map(|(&(a, b), &c)| (a, b, c)).collect();
    let want = vec![(0, 3, 3), (1, 5, 3), (2, 6, 1)];
    let (pd, reg) = pd_reg(&t);
    Verdict {
        ok: got == want && (pd, reg) == (2, 4),
        detail: format!("table {got:?}, pd {pd}, reg {reg}"),
    }
}

fn main() {
    let mut ok = true;

    let (v, t) = timed(golden_polarization);
    ok &= report(1, "golden polarization", &v, t) & within(t, LIMIT_POLARIZATION);

    let t0 = Instant::now();
    let star_run = run_family(star_graphs(), |_, _| None);
    let t = t0.elapsed();
    ok &= report(2, "star formulas", &family_verdict(&star_run), t) & within(t, LIMIT_STARS);

    let t0 = Instant::now();
    let forest_run = run_family(forest_graphs(), tree_depth_is_two);
    let t = t0.elapsed();
    ok &= report(3, "forest formulas", &family_verdict(&forest_run), t) & within(t, LIMIT_FORESTS);

    let t0 = Instant::now();
    let cycle_run = run_family(cycle_graphs(), cycle_depth_is_one);
    let t = t0.elapsed();
    ok &= report(4, "cycle formulas", &family_verdict(&cycle_run), t) & within(t, LIMIT_CYCLES);

    let (v, t) = timed(polarization_invariance);
    ok &= report(5, "polarization invariance", &v, t);

    let (v, t) = timed(|| splitting_identity(&[&star_run, &forest_run, &cycle_run]));
    ok &= report(6, "splitting identity", &v, t);

    let (v, t) = timed(disjoint_and_coprime_laws);
    ok &= report(7, "disjoint and coprime laws", &v, t);

    let (v, t) = timed(certificate_determinism);
    ok &= report(8, "certificate determinism", &v, t);

    let (v, t) = timed(triangle_table);
    ok &= report(9, "triangle Betti table", &v, t);

    if !ok {
        println!("acceptance: FAIL");
        std::process::exit(1);
    }
    println!("acceptance: PASS");
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    if elapsed > limit {
        println!("  runtime {elapsed:.2?} exceeds the limit of {limit:?}");
        false
    } else {
        true
    }
}
