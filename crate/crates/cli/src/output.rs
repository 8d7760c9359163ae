//! Command bodies and their JSON / table / DOT renderings.

use std::fmt::Write as _;

use iwahori::encoding::{self, class_to_json, class_to_string, count_to_json, element_to_json, element_to_string, scalar_to_json};
use iwahori::invariants::InvariantCheck;
use iwahori::{AffineElement, Engine, Error, Int, Isogeny, NewtonClass, Rational};
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};

pub struct Report {
    pub json: Value,
    pub table: String,
    pub dot: Option<String>,
    pub failed: bool,
    pub summary: String,
}

impl Report {
    fn new(command: &str, groups: Value, body: Map<String, Value>) -> Self {
        let mut top = Map::new();
        top.insert("schema".into(), json!("1"));
        top.insert("command".into(), json!(command));
        top.insert("group".into(), groups);
        top.extend(body);
        Self { json: Value::Object(top), table: String::new(), dot: None, failed: false, summary: String::new() }
    }

    pub fn render(&self, format: Format) -> iwahori::Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("JSON values serialize") + "\n"),
            Format::Table => Ok(self.table.clone()),
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| Error::Config("dot output is only available for `tree`".into())),
        }
    }
}

fn group_json(e: &Engine) -> Value {
    json!({ "type": e.datum().label(), "isogeny": e.datum().isogeny().short_name() })
}

fn fmt_opt(x: Option<Int>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

fn fmt_q(x: &Rational) -> String {
    encoding::rational_to_string(x)
}

/// `{w, c, d_w, dim, count}` for one class.
fn base_row(e: &Engine, w: &AffineElement, c: &NewtonClass, cfg: &RunConfig) -> iwahori::Result<(Map<String, Value>, Rational, Option<Int>, u128)> {
    let d_w = e.virtual_dim(w, c)?;
    let (dim, count) = match e.dim_count_with(w, c, cfg.strategy())? {
        Some((k, n)) => (Some(k), n),
        None => (None, 0),
    };
    let mut row = Map::new();
    row.insert("w".into(), element_to_json(e.datum(), w));
    row.insert("c".into(), class_to_json(c));
    row.insert("d_w".into(), scalar_to_json(&d_w));
    row.insert("dim".into(), json!(dim));
    row.insert("count".into(), count_to_json(count));
    Ok((row, d_w, dim, count))
}

/// The class from `--b`, or every end class of the tree.
fn classes_of(e: &Engine, w: &AffineElement, cfg: &RunConfig) -> iwahori::Result<Vec<NewtonClass>> {
    match cfg.class(e.datum())? {
        Some(c) => Ok(vec![c]),
        None => Ok(e.tree(w, cfg.strategy())?.summary.keys().cloned().collect()),
    }
}

pub fn tree(cfg: &RunConfig) -> iwahori::Result<Report> {
    let e = cfg.engine()?;
    let d = e.datum();
    let w = cfg.element(d)?;
    let bundle = e.tree(&w, cfg.strategy())?;
    let t = &bundle.tree;
    let Value::Object(mut body) = t.to_json(&e) else { unreachable!("trees serialize to objects") };
    body.remove("schema");
    body.insert(
        "strategy".into(),
        match cfg.seed {
            Some(s) => json!({ "seeded": s }),
            None => json!("canonical"),
        },
    );
    let mut r = Report::new("tree", group_json(&e), body);
    let mut table = format!("{:>4}  {:<24} {:>3}  {:<28} children\n", "id", "element", "len", "f");
    for (i, n) in t.nodes.iter().enumerate() {
        let kids: Vec<String> = n.children.iter().map(|(c, k)| format!("{c}:{}", k.as_str())).collect();
        let _ = writeln!(
            table,
            "{i:>4}  {:<24} {:>3}  {:<28} {}",
            element_to_string(d, &n.element),
            n.length,
            class_to_string(&n.class),
            if kids.is_empty() { "end".to_string() } else { kids.join(" ") }
        );
    }
    let _ = writeln!(table, "paths: {}", t.path_count());
    r.table = table;
    r.dot = Some(t.to_dot(&e));
    Ok(r)
}

pub fn dims(cfg: &RunConfig) -> iwahori::Result<Report> {
    let e = cfg.engine()?;
    let w = cfg.element(e.datum())?;
    let mut rows = Vec::new();
    let mut table = format!("{:<28} {:>6} {:>4} {:>6}\n", "class", "d_w", "dim", "count");
    for c in classes_of(&e, &w, cfg)? {
        let (row, d_w, dim, count) = base_row(&e, &w, &c, cfg)?;
        let _ = writeln!(table, "{:<28} {:>6} {:>4} {:>6}", class_to_string(&c), fmt_q(&d_w), fmt_opt(dim), count);
        rows.push(Value::Object(row));
    }
    let mut body = Map::new();
    body.insert("rows".into(), Value::Array(rows));
    let mut r = Report::new("dims", group_json(&e), body);
    r.table = table;
    Ok(r)
}

pub fn components(cfg: &RunConfig) -> iwahori::Result<Report> {
    let e = cfg.engine()?;
    let w = cfg.element(e.datum())?;
    let mut rows = Vec::new();
    let mut table = format!(
        "{:<28} {:>6} {:>4} {:>6} {:>8}  flags\n",
        "class", "d_w", "dim", "count", "weighted"
    );
    for c in classes_of(&e, &w, cfg)? {
        let (mut row, d_w, dim, count) = base_row(&e, &w, &c, cfg)?;
        let alv = e.count_alv(&w, &c, &cfg.n_values, cfg.dim_y_gamma)?;
        let mut flags = Vec::new();
        if alv.dim_equals_d_w {
            flags.push("dim=d_w");
        }
        if alv.antidominant {
            flags.push("antidominant");
        }
        if alv.regular_translation {
            flags.push("regular");
        }
        let _ = writeln!(
            table,
            "{:<28} {:>6} {:>4} {:>6} {:>8}  {}",
            class_to_string(&c),
            fmt_q(&d_w),
            fmt_opt(dim),
            count,
            alv.count,
            flags.join(",")
        );
        row.insert("components".into(), alv.to_json());
        rows.push(Value::Object(row));
    }
    let mut body = Map::new();
    body.insert("n_values".into(), json!(cfg.n_values));
    body.insert("rows".into(), Value::Array(rows));
    let mut r = Report::new("components", group_json(&e), body);
    r.table = table;
    Ok(r)
}

pub fn classify(cfg: &RunConfig) -> iwahori::Result<Report> {
    let e = cfg.engine()?;
    let d = e.datum();
    let w = cfg.element(d)?;
    let mut rows = Vec::new();
    let mut table = String::new();
    for c in classes_of(&e, &w, cfg)? {
        let (mut row, d_w, dim, count) = base_row(&e, &w, &c, cfg)?;
        let reports = e.classify_paths(&w, &c)?;
        let _ = writeln!(
            table,
            "{}  d_w={} dim={} count={}",
            class_to_string(&c),
            fmt_q(&d_w),
            fmt_opt(dim),
            count
        );
        for p in &reports {
            let _ = writeln!(
                table,
                "  path {:>3}  len={:<2} end={:<22} score={:<4} cordial={:<5} very_special={:<5} shape={}",
                p.id,
                p.length,
                element_to_string(d, &p.end),
                fmt_q(&p.score),
                p.cordial,
                p.very_special,
                p.springer_factor.shape
            );
        }
        row.insert("paths".into(), Value::Array(reports.iter().map(|p| p.to_json(&e)).collect()));
        rows.push(Value::Object(row));
    }
    let mut body = Map::new();
    body.insert("rows".into(), Value::Array(rows));
    let mut r = Report::new("classify", group_json(&e), body);
    r.table = table;
    Ok(r)
}

/// The class from `--b`; with `--all-classes` the supplied list; otherwise
/// the basic class of `κ(μ)`.
fn check_classes(
    e: &Engine,
    mu: &[Int],
    cfg: &RunConfig,
    all: impl FnOnce() -> iwahori::Result<Vec<NewtonClass>>,
) -> iwahori::Result<Vec<NewtonClass>> {
    match cfg.class(e.datum())? {
        Some(c) => Ok(vec![c]),
        None if cfg.all_classes => all(),
        None => Ok(vec![NewtonClass::basic(e.datum(), e.datum().pi1_class(mu))?]),
    }
}

pub fn verify_chi(cfg: &RunConfig) -> iwahori::Result<Report> {
    let e = cfg.engine()?;
    let mu = cfg.mu(e.datum())?;
    let mut rows = Vec::new();
    let mut table = format!("{:<28} {:>8} {:>8}  verdict\n", "class", "engine", "dual");
    let mut bad = 0;
    for c in check_classes(&e, &mu, cfg, || e.chi_classes(&mu))? {
        let chk = e.chi_check(&mu, &c)?;
        bad += usize::from(!chk.equal);
        let _ = writeln!(
            table,
            "{:<28} {:>8} {:>8}  {}",
            class_to_string(&c),
            chk.engine_count,
            chk.dual_mult,
            if chk.equal { "equal" } else { "MISMATCH" }
        );
        rows.push(chk.to_json());
    }
    let mut body = Map::new();
    body.insert("mu".into(), json!(mu));
    body.insert("rows".into(), Value::Array(rows));
    let mut r = Report::new("verify chi", group_json(&e), body);
    r.table = table;
    r.failed = bad > 0;
    r.summary = format!("{bad} classes with engine count ≠ dual multiplicity");
    Ok(r)
}

pub fn verify_superregular(cfg: &RunConfig) -> iwahori::Result<Report> {
    let e = cfg.engine()?;
    let d = e.datum();
    let mu = cfg.mu(d)?;
    let mut reports = Vec::new();
    let mut table = String::new();
    let mut bad = 0;
    for c in check_classes(&e, &mu, cfg, || e.superregular_classes(&mu))? {
        let rep = e.check_superregular(&mu, &c)?;
        bad += rep.mismatches();
        let _ = writeln!(
            table,
            "{}  mismatches={}{}",
            class_to_string(&c),
            rep.mismatches(),
            if rep.variants_disagree() { "  (the two readings of ν + 2ρ∨ ≤ μ disagree)" } else { "" }
        );
        for row in &rep.rows {
            let _ = writeln!(
                table,
                "  {:<26} predicted={:<5} d_w={:<4} dim={:<3} count={:<3} {}",
                element_to_string(d, &row.w),
                row.predicted_nonempty,
                fmt_q(&row.d_w),
                fmt_opt(row.dim),
                row.count,
                if row.ok { "ok" } else { "MISMATCH" }
            );
        }
        reports.push(rep.to_json(&e));
    }
    let mut body = Map::new();
    body.insert("mu".into(), json!(mu));
    body.insert("tables".into(), Value::Array(reports));
    let mut r = Report::new("verify superregular", group_json(&e), body);
    r.table = table;
    r.failed = bad > 0;
    r.summary = format!("{bad} (x, y) rows disagree with the prediction");
    Ok(r)
}

/// Groups checked by `verify invariants` when no `--type` is given.
const DEFAULT_MATRIX: [(&str, Isogeny); 6] = [
    ("A1", Isogeny::SimplyConnected),
    ("A2", Isogeny::SimplyConnected),
    ("A2", Isogeny::Adjoint),
    ("C2", Isogeny::SimplyConnected),
    ("GL2", Isogeny::Gl),
    ("GL3", Isogeny::Gl),
];

const DEFAULT_SEEDS: [u64; 3] = [1, 7, 2024];

pub fn verify_invariants(cfg: &RunConfig) -> iwahori::Result<Report> {
    let engines: Vec<Engine> = match &cfg.group {
        Some(_) => vec![cfg.engine()?],
        None => DEFAULT_MATRIX
            .iter()
            .map(|(l, i)| Ok(Engine::with_budgets(iwahori::RootDatum::build(l, *i)?, cfg.budgets)))
            .collect::<iwahori::Result<_>>()?,
    };
    let seeds: Vec<u64> = cfg.seed.map_or_else(|| DEFAULT_SEEDS.to_vec(), |s| vec![s]);
    let mut groups = Vec::new();
    let mut table = String::new();
    let mut bad = 0;
    for e in &engines {
        let omega_box = if e.datum().pi1().is_trivial() { 0 } else { 1 };
        let checks: Vec<InvariantCheck> = e.sweep_invariants(cfg.max_len, omega_box, &seeds)?;
        for c in &checks {
            bad += usize::from(!c.passed());
            let _ = writeln!(
                table,
                "{:<6} {:<3} {:<52} {:>6}  {}",
                e.datum().label(),
                e.datum().isogeny().short_name(),
                c.name,
                c.checked,
                if c.passed() { "ok" } else { "FAIL" }
            );
        }
        groups.push(json!({
            "group": group_json(e),
            "checks": checks.iter().map(InvariantCheck::to_json).collect::<Vec<_>>(),
        }));
    }
    let mut body = Map::new();
    body.insert("max_len".into(), json!(cfg.max_len));
    body.insert("seeds".into(), json!(seeds));
    body.insert("results".into(), Value::Array(groups));
    let all: Vec<Value> = engines.iter().map(group_json).collect();
    let mut r = Report::new("verify invariants", Value::Array(all), body);
    r.table = table;
    r.failed = bad > 0;
    r.summary = format!("{bad} invariant checks failed");
    Ok(r)
}
