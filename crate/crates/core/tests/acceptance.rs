//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the lines are always
//! printed.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use iwahori::reduction::regular_path_length;
use iwahori::{AffineElement, Engine, Int, Isogeny, NewtonClass, Rational};

/// Wall-clock limits per criterion.
const LIMITS: [Duration; 6] = [
    Duration::from_secs(1),
    Duration::from_secs(60),
    Duration::from_secs(300),
    Duration::from_secs(600),
    Duration::from_secs(60),
    Duration::from_secs(600),
];

/// Seeds for the strategy-invariance check.
const SEEDS: [u64; 3] = [1, 7, 2024];
const MAX_LEN: usize = 8;

type Outcome = Result<String, String>;

fn engine(label: &str, iso: Isogeny) -> Engine {
    Engine::build(label, iso).expect("root datum")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: iwahori::Error) -> String {
    e.to_string()
}

fn worked_example() -> Outcome {
    let e = engine("A1", Isogeny::SimplyConnected);
    let d = e.datum();
    let w = d.from_word(&[0, 1, 0]).map_err(err)?;
    ensure(w == AffineElement::new(vec![2], d.simple_weyl(0)) && d.length(&w) == 3, || "s0s1s0 ≠ t^{2α∨}s1".into())?;
    for (nu, want) in [(0, 2), (1, 1)] {
        let c = NewtonClass::of_translation(d, &[nu]);
        let dw = e.virtual_dim(&w, &c).map_err(err)?;
        let dim = e.dim_adlv(&w, &c).map_err(err)?;
        let count = e.count_adlv(&w, &c).map_err(err)?;
        ensure(dw == Rational::from_integer(want) && dim == Some(want) && count == 1, || {
            format!("ν={nu}: d_w={dw}, dim={dim:?}, count={count}")
        })?;
    }
    let tree = e.build_tree(&w, iwahori::Strategy::Canonical).map_err(err)?;
    let paths = tree.paths(None, 100).map_err(err)?;
    ensure(paths.len() == 2 && paths.iter().all(|p| p.len() == 1), || format!("{} paths", paths.len()))?;
    Ok("d_w = dim = (2, 1), counts 1, two 1-edge paths".into())
}

fn superregular() -> Outcome {
    let a1 = engine("A1", Isogeny::SimplyConnected);
    let a2 = engine("A2", Isogeny::SimplyConnected);
    let two_rho_check = a2.datum().two_rho_check().clone();
    let cases: [(&Engine, Vec<Int>); 3] = [(&a1, vec![2]), (&a1, vec![3]), (&a2, two_rho_check)];
    let (mut rows, mut tables) = (0, 0);
    for (e, mu) in cases {
        for c in e.superregular_classes(&mu).map_err(err)? {
            let rep = e.check_superregular(&mu, &c).map_err(err)?;
            ensure(rep.mismatches() == 0, || {
                format!("μ={mu:?}, {}: {} mismatches", iwahori::encoding::class_to_string(&c), rep.mismatches())
            })?;
            ensure(!rep.variants_disagree(), || format!("μ={mu:?}: the two ≤ readings disagree"))?;
            rows += rep.rows.len();
            tables += 1;
        }
    }
    Ok(format!("{tables} tables, {rows} (x, y) rows, 0 mismatches"))
}

fn chi() -> Outcome {
    let a1 = engine("A1", Isogeny::SimplyConnected);
    let a2 = engine("A2", Isogeny::SimplyConnected);
    // Fundamental coweights need the adjoint lattice.
    let c2 = engine("C2", Isogeny::Adjoint);
    let theta = {
        let d = a2.datum();
        d.coroot(d.highest_root().expect("A2 has roots")).to_vec()
    };
    let cases: Vec<(&Engine, Vec<Int>)> = vec![
        (&a1, vec![2]),
        (&a2, theta),
        (&a2, a2.datum().two_rho_check().clone()),
        (&c2, vec![1, 1]),
    ];
    let mut checked = 0;
    for (e, mu) in cases {
        for c in e.chi_classes(&mu).map_err(err)? {
            let chk = e.chi_check(&mu, &c).map_err(err)?;
            ensure(chk.equal, || {
                format!(
                    "{} μ={mu:?} {}: engine {} vs dual {}",
                    e.datum().label(),
                    iwahori::encoding::class_to_string(&c),
                    chk.engine_count,
                    chk.dual_mult
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (μ, class) pairs equal"))
}

fn sweep_engines() -> Vec<(Engine, Int)> {
    vec![
        (engine("A1", Isogeny::SimplyConnected), 0),
        (engine("A2", Isogeny::SimplyConnected), 0),
        (engine("A2", Isogeny::Adjoint), 1),
        (engine("GL2", Isogeny::Gl), 1),
    ]
}

fn very_special(sweeps: &[(String, Vec<iwahori::invariants::InvariantCheck>)]) -> Outcome {
    let mut checked = 0;
    for (label, checks) in sweeps {
        let law = checks.iter().find(|c| c.name.starts_with("cordial")).expect("law line");
        ensure(law.passed(), || format!("{label}: {:?}", law.failures))?;
        checked += law.checked;
    }
    ensure(checked > 0, || "no cordial paths examined".into())?;
    Ok(format!("{checked} paths from antidominant or regular w with ℓ ≤ {MAX_LEN}"))
}

fn constructive_paths() -> Outcome {
    let mut steps = 0;
    for label in ["A1", "A2"] {
        let e = engine(label, Isogeny::Adjoint);
        let d = e.datum();
        // Regular dominant μ ≤ 3ρ∨ in fundamental coordinates.
        let mut mus: Vec<Vec<Int>> = vec![vec![]];
        for _ in 0..d.rank() {
            mus = mus.into_iter().flat_map(|m| (1..=3).map(move |k| [m.clone(), vec![k]].concat())).collect();
        }
        for mu in &mus {
            ensure((0..d.rank()).all(|i| d.pair(mu, d.root(i)) >= 1), || format!("{mu:?} not regular"))?;
            for x in d.weyl_elements() {
                for y in d.weyl_elements() {
                    let seq = e.constructive_path_regular(&x, &y, mu).map_err(err)?;
                    let want = regular_path_length(d, &x, &y);
                    ensure(seq.len() - 1 == want, || format!("{label} μ={mu:?}: {} edges, want {want}", seq.len() - 1))?;
                    let end = d.product(&[d.finite(&x), d.translation(mu), d.finite(&y)]);
                    ensure(*seq.last().expect("nonempty") == end, || format!("{label} μ={mu:?}: wrong end point"))?;
                    for m in e.check_sequence(&seq).map_err(err)? {
                        ensure(m.valid, || format!("{label} μ={mu:?}: invalid regular step"))?;
                    }
                    steps += want;

                    let seq = e.constructive_path_antidominant(&y, mu).map_err(err)?;
                    ensure(seq.len() - 1 == d.weyl_length(&y), || format!("{label} μ={mu:?}: antidominant length"))?;
                    for m in e.check_sequence(&seq).map_err(err)? {
                        ensure(m.valid, || format!("{label} μ={mu:?}: invalid antidominant step"))?;
                    }
                    steps += seq.len() - 1;
                }
            }
        }
    }
    Ok(format!("{steps} replayed steps, all valid moves with the predicted counts"))
}

fn properties(sweeps: &[(String, Vec<iwahori::invariants::InvariantCheck>)]) -> Outcome {
    let mut boxes = 0;
    for (label, iso) in [
        ("A1", Isogeny::SimplyConnected),
        ("A2", Isogeny::Adjoint),
        ("C2", Isogeny::SimplyConnected),
        ("G2", Isogeny::SimplyConnected),
        ("GL2", Isogeny::Gl),
    ] {
        let e = engine(label, iso);
        let d = e.datum();
        for w in common::lattice_box(d, 3) {
            ensure(d.length(&w) == common::alcove_length(d, &w), || {
                format!("{label}: ℓ({}) = {} but the alcove count is {}", iwahori::encoding::element_to_string(d, &w), d.length(&w), common::alcove_length(d, &w))
            })?;
            boxes += 1;
        }
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (label, checks) in sweeps {
        for c in checks.iter().filter(|c| !c.name.starts_with("cordial")) {
            ensure(c.passed(), || format!("{label} {}: {:?}", c.name, c.failures))?;
            *counts.entry(c.name.as_str()).or_default() += c.checked;
        }
    }
    let gl2 = engine("GL2", Isogeny::Gl);
    let gl3 = engine("GL3", Isogeny::Gl);
    let half = Rational::new(1, 2);
    let third = Rational::new(1, 3);
    let sb2 = NewtonClass::new(gl2.datum(), vec![1], vec![half; 2]).map_err(err)?;
    let sb3 = NewtonClass::new(gl3.datum(), vec![1], vec![third; 3]).map_err(err)?;
    ensure(gl2.defect(&sb2).map_err(err)? == 1, || "GL2 superbasic defect ≠ 1".into())?;
    ensure(gl3.defect(&sb3).map_err(err)? == 2, || "GL3 superbasic defect ≠ 2".into())?;
    let mut translations = 0;
    for (e, _) in sweep_engines() {
        let d = e.datum();
        for w in common::lattice_box(d, 2).into_iter().filter(AffineElement::is_translation) {
            let (lambda, _) = d.dominant_rep_int(&w.t);
            ensure(e.defect(&NewtonClass::of_translation(d, &lambda)).map_err(err)? == 0, || {
                format!("{}: defect of t^{lambda:?} ≠ 0", d.label())
            })?;
            translations += 1;
        }
    }
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    Ok(format!(
        "{boxes} alcove checks; {translations} translation defects; {}; seeds {SEEDS:?}",
        summary.join(", ")
    ))
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome, Duration)> = Vec::new();
    let timed = |f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let out = f();
        (out, start.elapsed())
    };

    let (out, t) = timed(&worked_example);
    results.push((1, "A1 worked example s0s1s0", out, t));
    let (out, t) = timed(&superregular);
    results.push((2, "superregular table", out, t));
    let (out, t) = timed(&chi);
    results.push((3, "chi / dual multiplicity", out, t));

    // Criteria 4 and 6 share one sweep per group; the sweep time is charged to both.
    let start = Instant::now();
    let sweeps: Result<Vec<_>, String> = sweep_engines()
        .into_iter()
        .map(|(e, omega_box)| {
            let checks = e.sweep_invariants(MAX_LEN, omega_box, &SEEDS).map_err(err)?;
            Ok((e.datum().label(), checks))
        })
        .collect();
    let sweep_time = start.elapsed();
    let (out, t) = match &sweeps {
        Ok(s) => timed(&|| very_special(s)),
        Err(e) => (Err(e.clone()), Duration::ZERO),
    };
    results.push((4, "cordial paths are very special", out, t + sweep_time));
    let (out, t) = timed(&constructive_paths);
    results.push((5, "constructive path lemmas", out, t));
    let (out, t) = match &sweeps {
        Ok(s) => timed(&|| properties(s)),
        Err(e) => (Err(e.clone()), Duration::ZERO),
    };
    results.push((6, "invariance and property suites", out, t + sweep_time));

    let mut failed = 0;
    for (n, name, out, t) in results {
        let limit = LIMITS[n - 1];
        let (ok, detail) = match out {
            Ok(d) if t <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {t:.2?} > {limit:?}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!("{} criterion {n}: {name} [{t:.2?}] {detail}", if ok { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
