//! Run configuration: command-line flags layered over an optional TOML file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use iwahori::{encoding, AffineElement, Budgets, Engine, Int, Isogeny, NewtonClass, RootDatum};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
    Dot,
}

/// Keys accepted in a `--config` file; anything else is rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    #[serde(rename = "type")]
    pub group: Option<String>,
    pub isogeny: Option<String>,
    pub word: Option<String>,
    pub elem: Option<String>,
    pub b: Option<String>,
    pub mu: Option<String>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub max_nodes: Option<usize>,
    pub max_paths: Option<usize>,
    pub max_len: Option<usize>,
    pub golden: Option<PathBuf>,
    pub n_values: Option<BTreeMap<String, u64>>,
    pub dim_y_gamma: Option<Int>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// TOML file with the same keys as the flags (flags win).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Group label: A1, A2, B2, C2, G2, GL2, GL3, ...
    #[arg(long = "type", global = true)]
    pub group: Option<String>,
    /// simply-connected (sc), adjoint (ad) or GL; defaults to sc, or GL for GLn.
    #[arg(long, global = true)]
    pub isogeny: Option<String>,
    /// Element as a word in the affine simple reflections, 0 = affine node.
    #[arg(long, global = true, conflicts_with = "elem")]
    pub word: Option<String>,
    /// Element as JSON `{"t": [...], "w": [...]}`.
    #[arg(long, global = true)]
    pub elem: Option<String>,
    /// Newton class `kappa=...,nu=...`.
    #[arg(long, global = true)]
    pub b: Option<String>,
    /// Dominant coweight: theta, rho, 2rho or a list like [2,1].
    #[arg(long, global = true)]
    pub mu: Option<String>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Seed for a randomized pivot strategy (canonical when absent).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub max_nodes: Option<usize>,
    #[arg(long, global = true)]
    pub max_paths: Option<usize>,
    /// Length ceiling for `verify invariants`.
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Compare output against this file (or write it with --write-golden).
    #[arg(long, global = true)]
    pub golden: Option<PathBuf>,
    #[arg(long, global = true, requires = "golden")]
    pub write_golden: bool,
    /// `n` value for a springer-factor shape, as SHAPE=N; repeatable.
    #[arg(long = "n-value", global = true)]
    pub n_value: Vec<String>,
    #[arg(long, global = true)]
    pub dim_y_gamma: Option<Int>,
    /// Iterate over every relevant class instead of the default one.
    #[arg(long, global = true)]
    pub all_classes: bool,
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group: Option<String>,
    pub isogeny: Option<String>,
    pub word: Option<String>,
    pub elem: Option<String>,
    pub b: Option<String>,
    pub mu: Option<String>,
    pub format: Format,
    pub seed: Option<u64>,
    pub budgets: Budgets,
    pub max_len: usize,
    pub golden: Option<PathBuf>,
    pub write_golden: bool,
    pub n_values: BTreeMap<String, u64>,
    pub dim_y_gamma: Option<Int>,
    pub all_classes: bool,
}

fn read_file(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

impl RunConfig {
    pub fn resolve(args: CommonArgs) -> Result<Self, String> {
        let file = match &args.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        if args.word.is_some() && file.elem.is_some() || args.elem.is_some() && file.word.is_some() {
            return Err("give the element either as a word or as JSON, not both".into());
        }
        let mut n_values = file.n_values.unwrap_or_default();
        for item in &args.n_value {
            let (k, v) = item.rsplit_once('=').ok_or_else(|| format!("--n-value expects SHAPE=N, got `{item}`"))?;
            let v: u64 = v.trim().parse().map_err(|_| format!("bad n value in `{item}`"))?;
            n_values.insert(k.to_string(), v);
        }
        if let Some((k, _)) = n_values.iter().find(|(_, &v)| v == 0) {
            return Err(format!("n value for `{k}` must be positive"));
        }
        let defaults = Budgets::default();
        let budgets = Budgets {
            max_nodes: args.max_nodes.or(file.max_nodes).unwrap_or(defaults.max_nodes),
            max_paths: args.max_paths.or(file.max_paths).unwrap_or(defaults.max_paths),
            ..defaults
        };
        if budgets.max_nodes == 0 || budgets.max_paths == 0 {
            return Err("budgets must be positive".into());
        }
        Ok(Self {
            group: args.group.or(file.group),
            isogeny: args.isogeny.or(file.isogeny),
            word: args.word.or(file.word),
            elem: args.elem.or(file.elem),
            b: args.b.or(file.b),
            mu: args.mu.or(file.mu),
            format: args.format.or(file.format).unwrap_or(Format::Json),
            seed: args.seed.or(file.seed),
            budgets,
            max_len: args.max_len.or(file.max_len).unwrap_or(8),
            golden: args.golden.or(file.golden),
            write_golden: args.write_golden,
            n_values,
            dim_y_gamma: args.dim_y_gamma.or(file.dim_y_gamma),
            all_classes: args.all_classes,
        })
    }

    pub fn isogeny_for(&self, label: &str) -> iwahori::Result<Isogeny> {
        match &self.isogeny {
            Some(s) => Isogeny::parse(s),
            None if label.to_ascii_uppercase().starts_with("GL") => Ok(Isogeny::Gl),
            None => Ok(Isogeny::SimplyConnected),
        }
    }

    pub fn engine(&self) -> iwahori::Result<Engine> {
        let label = self.group.as_deref().ok_or_else(|| iwahori::Error::Config("--type is required".into()))?;
        let datum = RootDatum::build(label, self.isogeny_for(label)?)?;
        Ok(Engine::with_budgets(datum, self.budgets))
    }

    pub fn element(&self, d: &RootDatum) -> iwahori::Result<AffineElement> {
        match (&self.word, &self.elem) {
            (Some(w), None) => d.from_word(&encoding::parse_word(w)?),
            (None, Some(e)) => {
                let v: serde_json::Value = serde_json::from_str(e)
                    .map_err(|err| iwahori::Error::Config(format!("--elem is not JSON: {err}")))?;
                encoding::element_from_json(d, &v)
            }
            (None, None) => Err(iwahori::Error::Config("an element is required: --word or --elem".into())),
            (Some(_), Some(_)) => Err(iwahori::Error::Config("give either --word or --elem".into())),
        }
    }

    pub fn class(&self, d: &RootDatum) -> iwahori::Result<Option<NewtonClass>> {
        self.b.as_deref().map(|s| encoding::parse_class(d, s)).transpose()
    }

    pub fn mu(&self, d: &RootDatum) -> iwahori::Result<Vec<Int>> {
        let s = self.mu.as_deref().ok_or_else(|| iwahori::Error::Config("--mu is required".into()))?;
        let mu = parse_mu(d, s)?;
        if !d.is_dominant(&mu) {
            return Err(iwahori::Error::Config(format!("μ = {mu:?} is not dominant")));
        }
        Ok(mu)
    }

    pub fn strategy(&self) -> iwahori::Strategy {
        self.seed.map_or(iwahori::Strategy::Canonical, iwahori::Strategy::Seeded)
    }
}

fn parse_mu(d: &RootDatum, s: &str) -> iwahori::Result<Vec<Int>> {
    let half = |v: &[Int]| -> iwahori::Result<Vec<Int>> {
        if v.iter().any(|x| x % 2 != 0) {
            return Err(iwahori::Error::Config(format!(
                "ρ∨ is not in the coweight lattice of {} (try --isogeny ad or 2rho)",
                d.label()
            )));
        }
        Ok(v.iter().map(|x| x / 2).collect())
    };
    match s.trim() {
        "theta" => {
            let i = d.highest_root().ok_or_else(|| iwahori::Error::Config("no roots, θ∨ undefined".into()))?;
            Ok(d.coroot(i).to_vec())
        }
        "rho" => half(d.two_rho_check()),
        "2rho" => Ok(d.two_rho_check().clone()),
        other => {
            let v = encoding::parse_qvector(d, other)?;
            iwahori::to_integral(&v).ok_or_else(|| iwahori::Error::Config(format!("μ = {other} is not integral")))
        }
    }
}
