//! Numerical predicates on reduction trees: virtual dimension, dimension and
//! top-component counts of `X_w(b)`, cordial / very-special path
//! classification, the weighted component count `Σ_p n_{p,γ}`, and the
//! superregular prediction table.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classes::NewtonClass;
use crate::encoding::{self, class_to_json, count_to_json, element_to_json, element_to_string, scalar_to_json};
use crate::error::{Error, Result};
use crate::reduction::{EdgeKind, ReductionTree, Strategy};
use crate::{to_rational, AffineElement, Coweight, Engine, Int, Rational, WeylElement};

/// End-point data `(Φ_ν, K_w, τ)` that indexes the affine Springer fiber of a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpringerFactor {
    pub levi_type: String,
    /// Labels of `K_w` inside `S̃_ν`.
    pub k: Vec<String>,
    pub k_type: String,
    pub tau: AffineElement,
    pub tau_cycles: String,
    /// Key for user-supplied `n` values.
    pub shape: String,
    pub n_kw: usize,
    /// The conjugate of the end point the triple was read off, with the
    /// simple conjugations leading to it (empty when it is the end point).
    pub representative: AffineElement,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PathReport {
    pub id: usize,
    pub nodes: Vec<usize>,
    pub kinds: Vec<EdgeKind>,
    pub end: AffineElement,
    pub f: NewtonClass,
    pub length: usize,
    pub score: Rational,
    pub d_w: Rational,
    pub cordial: bool,
    pub very_special: bool,
    pub springer_factor: SpringerFactor,
}

impl PathReport {
    pub fn to_json(&self, engine: &Engine) -> Value {
        let d = engine.datum();
        let s = &self.springer_factor;
        json!({
            "id": self.id,
            "nodes": self.nodes,
            "kinds": self.kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>(),
            "end": element_to_json(d, &self.end),
            "end_label": element_to_string(d, &self.end),
            "f": class_to_json(&self.f),
            "length": self.length,
            "score": scalar_to_json(&self.score),
            "cordial": self.cordial,
            "very_special": self.very_special,
            "springer_factor": {
                "levi_type": s.levi_type,
                "K": s.k,
                "K_type": s.k_type,
                "tau": element_to_string(d, &s.tau),
                "tau_cycles": s.tau_cycles,
                "shape": s.shape,
                "n_K": s.n_kw,
                "representative": element_to_string(d, &s.representative),
                "witness": s.witness,
            },
        })
    }
}

/// Result of `count_alv`, with the hypotheses of the comparison theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlvReport {
    /// `Σ n_{p,γ}` over paths of maximal score.
    pub count: u128,
    pub count_adlv: u128,
    pub dim: Option<Int>,
    pub d_w: Rational,
    pub dim_equals_d_w: bool,
    /// `x = w₀` in `w = x t^μ y`.
    pub antidominant: bool,
    pub regular_translation: bool,
    pub dim_y_gamma: Option<Int>,
    /// `dim X_w(b) + dim Y_γ` when both are known.
    pub dim_y_w_gamma: Option<Int>,
}

impl AlvReport {
    pub fn to_json(&self) -> Value {
        json!({
            "count": count_to_json(self.count),
            "count_adlv": count_to_json(self.count_adlv),
            "dim": self.dim,
            "d_w": scalar_to_json(&self.d_w),
            "dim_equals_d_w": self.dim_equals_d_w,
            "antidominant": self.antidominant,
            "regular_translation": self.regular_translation,
            "dim_y_gamma": self.dim_y_gamma,
            "dim_y_w_gamma": self.dim_y_w_gamma,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuperregularRow {
    pub x: WeylElement,
    pub y: WeylElement,
    pub w: AffineElement,
    pub predicted_nonempty: bool,
    pub d_w: Rational,
    pub dim: Option<Int>,
    pub count: u128,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct SuperregularReport {
    pub mu: Coweight,
    pub class: NewtonClass,
    /// `μ − ν − 2ρ∨` is a nonnegative combination of simple coroots.
    pub cone_ok: bool,
    /// `⟨μ − ν − 2ρ∨, α_i⟩ ≥ 0` for every simple root.
    pub fundamental_ok: bool,
    pub rows: Vec<SuperregularRow>,
}

impl SuperregularReport {
    pub fn variants_disagree(&self) -> bool {
        self.cone_ok != self.fundamental_ok
    }

    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| !r.ok).count()
    }

    pub fn to_json(&self, engine: &Engine) -> Value {
        let d = engine.datum();
        let word = |u: &WeylElement| d.reduced_word(u).into_iter().map(|i| i + 1).collect::<Vec<_>>();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "x": word(&r.x),
                    "y": word(&r.y),
                    "w": element_to_json(d, &r.w),
                    "w_label": element_to_string(d, &r.w),
                    "predicted_nonempty": r.predicted_nonempty,
                    "d_w": scalar_to_json(&r.d_w),
                    "dim": r.dim,
                    "count": count_to_json(r.count),
                    "ok": r.ok,
                })
            })
            .collect();
        json!({
            "mu": self.mu,
            "class": class_to_json(&self.class),
            "cone_ok": self.cone_ok,
            "fundamental_ok": self.fundamental_ok,
            "variants_disagree": self.variants_disagree(),
            "mismatches": self.mismatches(),
            "rows": rows,
        })
    }
}

/// One line of an invariant sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl InvariantCheck {
    fn new(name: &str) -> Self {
        Self { name: name.to_string(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "checked": self.checked, "passed": self.passed(), "failures": self.failures })
    }
}

/// Number of root-to-node paths of each edge count, per node.
fn path_length_counts(tree: &ReductionTree) -> Vec<BTreeMap<usize, u128>> {
    let mut order: Vec<usize> = (0..tree.nodes.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(tree.nodes[i].length), i));
    let mut counts: Vec<BTreeMap<usize, u128>> = vec![BTreeMap::new(); tree.nodes.len()];
    counts[0].insert(0, 1);
    for id in order {
        let here = std::mem::take(&mut counts[id]);
        for &(c, _) in &tree.nodes[id].children {
            for (&len, &n) in &here {
                let slot = counts[c].entry(len + 1).or_insert(0);
                *slot = slot.saturating_add(n);
            }
        }
        counts[id] = here;
    }
    counts
}

impl Engine {
    /// `d_w(c) = ½(ℓ(w) + ℓ(η(w)) − def(c)) − ⟨ν_c, ρ⟩`.
    pub fn virtual_dim(&self, w: &AffineElement, c: &NewtonClass) -> Result<Rational> {
        let d = self.datum();
        let eta = d.decompose_xmuy(w)?.eta;
        let def = self.defect(c)?;
        let sum = d.length(w) as Int + d.weyl_length(&eta) as Int - def as Int;
        Ok(Rational::new(sum, 2) - d.pair_two_rho(&c.nu) / 2)
    }

    /// `dim X_w(b)`, or `None` when `X_w(b)` is empty.
    pub fn dim_adlv(&self, w: &AffineElement, c: &NewtonClass) -> Result<Option<Int>> {
        let bundle = self.tree(w, Strategy::Canonical)?;
        bundle.summary.get(c).map(|(score, _)| self.integral_score(w, score)).transpose()
    }

    /// Number of paths of maximal score ending in `c`; 0 when `X_w(b)` is empty.
    pub fn count_adlv(&self, w: &AffineElement, c: &NewtonClass) -> Result<u128> {
        let bundle = self.tree(w, Strategy::Canonical)?;
        Ok(bundle.summary.get(c).map_or(0, |&(_, n)| n))
    }

    /// `(dim, count)` under an explicit strategy.
    pub fn dim_count_with(&self, w: &AffineElement, c: &NewtonClass, strategy: Strategy) -> Result<Option<(Int, u128)>> {
        let bundle = self.tree(w, strategy)?;
        bundle.summary.get(c).map(|(score, n)| Ok((self.integral_score(w, score)?, *n))).transpose()
    }

    fn integral_score(&self, w: &AffineElement, score: &Rational) -> Result<Int> {
        if score.is_integer() {
            Ok(score.to_integer())
        } else {
            Err(Error::Certification(format!(
                "non-integral path score {} in the tree of {}",
                encoding::rational_to_string(score),
                element_to_string(self.datum(), w)
            )))
        }
    }

    fn springer_factor(&self, end: &AffineElement) -> Result<(SpringerFactor, bool)> {
        let d = self.datum();
        let t = self.standard_triple(end)?;
        let very_special = self.triple_is_very_special(&t)?;
        let factor = SpringerFactor {
            levi_type: t.context.levi_type(d),
            k: t.context.labels(&t.k_w),
            k_type: t.context.subset_type(d, &t.k_w),
            tau: t.tau.clone(),
            tau_cycles: t.tau_cycle_type(),
            shape: t.shape_key(d),
            n_kw: t.n_kw(d)?,
            representative: t.element.clone(),
            witness: t.witness.clone(),
        };
        Ok((factor, very_special))
    }

    /// Springer data and very-special flag per end node ending in `c`.
    fn end_factors(&self, tree: &ReductionTree, c: &NewtonClass) -> Result<HashMap<usize, (SpringerFactor, bool)>> {
        let ends: Vec<usize> = tree.end_points().into_iter().filter(|&i| &tree.nodes[i].class == c).collect();
        let computed: Vec<(usize, (SpringerFactor, bool))> = ends
            .into_par_iter()
            .map(|i| self.springer_factor(&tree.nodes[i].element).map(|f| (i, f)))
            .collect::<Result<_>>()?;
        Ok(computed.into_iter().collect())
    }

    /// One report per root-to-end path whose end point lies in `c`.
    pub fn classify_paths(&self, w: &AffineElement, c: &NewtonClass) -> Result<Vec<PathReport>> {
        let d = self.datum();
        let bundle = self.tree(w, Strategy::Canonical)?;
        let tree = &bundle.tree;
        let paths = tree.paths(Some(c), self.budgets().max_paths)?;
        if paths.is_empty() {
            return Ok(Vec::new());
        }
        let d_w = self.virtual_dim(w, c)?;
        let factors = self.end_factors(tree, c)?;
        let pairing = d.pair_two_rho(&c.nu);
        let mut out = Vec::with_capacity(paths.len());
        for (id, p) in paths.into_iter().enumerate() {
            let end = &tree.nodes[p.end()];
            let score = Rational::from_integer((p.len() + end.length) as Int) - pairing;
            if score > d_w {
                return Err(Error::Certification(format!(
                    "path {id} of {} has score {} above d_w = {}",
                    element_to_string(d, w),
                    encoding::rational_to_string(&score),
                    encoding::rational_to_string(&d_w)
                )));
            }
            let (factor, very_special) = factors[&p.end()].clone();
            out.push(PathReport {
                id,
                end: end.element.clone(),
                f: end.class.clone(),
                length: p.len(),
                score,
                d_w,
                cordial: score == d_w,
                very_special,
                springer_factor: factor,
                nodes: p.nodes,
                kinds: p.kinds,
            });
        }
        Ok(out)
    }

    /// `Σ n_{p,γ}` over paths of maximal score ending in `c`, with
    /// `n_values` keyed by springer-factor shape (missing shapes count 1).
    pub fn count_alv(
        &self,
        w: &AffineElement,
        c: &NewtonClass,
        n_values: &BTreeMap<String, u64>,
        dim_y_gamma: Option<Int>,
    ) -> Result<AlvReport> {
        let d = self.datum();
        let bundle = self.tree(w, Strategy::Canonical)?;
        let tree = &bundle.tree;
        let d_w = self.virtual_dim(w, c)?;
        let dec = d.decompose_xmuy(w)?;
        let antidominant = dec.x == d.longest_element();
        let regular_translation = d.is_regular(&dec.mu);
        let Some(&(best, count_adlv)) = bundle.summary.get(c) else {
            return Ok(AlvReport {
                count: 0,
                count_adlv: 0,
                dim: None,
                d_w,
                dim_equals_d_w: false,
                antidominant,
                regular_translation,
                dim_y_gamma,
                dim_y_w_gamma: None,
            });
        };
        let dim = self.integral_score(w, &best)?;
        let factors = self.end_factors(tree, c)?;
        let counts = path_length_counts(tree);
        let pairing = d.pair_two_rho(&c.nu);
        let (mut weighted, mut plain) = (0u128, 0u128);
        let mut ends: Vec<&usize> = factors.keys().collect();
        ends.sort_unstable();
        for &i in ends {
            let end = &tree.nodes[i];
            let n = n_values.get(&factors[&i].0.shape).copied().unwrap_or(1);
            if n == 0 {
                return Err(Error::Config(format!("n value for shape `{}` must be positive", factors[&i].0.shape)));
            }
            for (&len, &k) in &counts[i] {
                if Rational::from_integer((len + end.length) as Int) - pairing == best {
                    plain = plain.saturating_add(k);
                    weighted = weighted.saturating_add(k.saturating_mul(n as u128));
                }
            }
        }
        if plain != count_adlv {
            return Err(Error::Certification(format!(
                "forward path count {plain} disagrees with tree summary {count_adlv} for {}",
                element_to_string(d, w)
            )));
        }
        Ok(AlvReport {
            count: weighted,
            count_adlv,
            dim: Some(dim),
            d_w,
            dim_equals_d_w: Rational::from_integer(dim) == d_w,
            antidominant,
            regular_translation,
            dim_y_gamma,
            dim_y_w_gamma: dim_y_gamma.map(|y| y + dim),
        })
    }

    /// Integral classes `ν` with `μ − ν − 2ρ∨` a nonnegative integral
    /// combination of simple coroots and `ν` dominant, plus the basic class
    /// of `κ(μ)`, sorted.
    pub fn superregular_classes(&self, mu: &[Int]) -> Result<Vec<NewtonClass>> {
        let d = self.datum();
        let top: Coweight = mu.iter().zip(d.two_rho_check()).map(|(a, b)| a - b).collect();
        let budget = d.pair(&top, d.two_rho());
        let mut seen: HashSet<Coweight> = HashSet::new();
        let mut stack = vec![top];
        let mut out = vec![NewtonClass::basic(d, d.pi1_class(mu))?];
        while let Some(nu) = stack.pop() {
            if !seen.insert(nu.clone()) || d.pair(&nu, d.two_rho()) < -budget {
                continue;
            }
            if d.is_dominant(&nu) {
                out.push(NewtonClass::of_translation(d, &nu));
            }
            for i in 0..d.rank() {
                let next: Coweight = nu.iter().zip(d.coroot(i)).map(|(a, b)| a - b).collect();
                stack.push(next);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Predicted versus computed `(nonempty, dim)` of `X_{x t^μ y}(b)` over
    /// all `(x, y) ∈ W₀²`, for superregular `μ`.
    pub fn check_superregular(&self, mu: &[Int], c: &NewtonClass) -> Result<SuperregularReport> {
        let d = self.datum();
        if mu.len() != d.dim() {
            return Err(Error::Config(format!("μ has {} coordinates, lattice has {}", mu.len(), d.dim())));
        }
        if let Some(i) = (0..d.rank()).find(|&i| d.pair(mu, d.root(i)) < 2) {
            return Err(Error::Contract(format!("⟨μ, α_{}⟩ = {} < 2", i + 1, d.pair(mu, d.root(i)))));
        }
        let diff: Vec<Rational> = to_rational(mu)
            .iter()
            .zip(&c.nu)
            .zip(d.two_rho_check())
            .map(|((m, n), r)| m - n - Rational::from_integer(*r))
            .collect();
        let cone_ok = d.coroot_coordinates(&diff).is_some_and(|v| v.iter().all(|x| !x.is_negative()));
        let fundamental_ok = (0..d.rank()).all(|i| !d.pair_q(&diff, d.root(i)).is_negative());
        // The two readings of `ν + 2ρ∨ ≤ μ` can disagree (off the coroot
        // span, e.g. a κ mismatch); that is reported, not resolved.
        if !cone_ok && !fundamental_ok {
            return Err(Error::Contract(format!(
                "ν + 2ρ∨ ≤ μ fails in both readings for {}",
                encoding::class_to_string(c)
            )));
        }
        let kappa_ok = d.pi1_class(mu) == c.kappa;
        let all = d.weyl_elements();
        let pairs: Vec<(WeylElement, WeylElement)> =
            all.iter().flat_map(|x| all.iter().map(move |y| (x.clone(), y.clone()))).collect();
        let rows = pairs
            .into_par_iter()
            .map(|(x, y)| {
                let w = AffineElement::new(x.act(mu), x.compose(&y));
                let predicted_nonempty = kappa_ok && d.support(&y.compose(&x)).len() == d.rank();
                let d_w = self.virtual_dim(&w, c)?;
                let dim = self.dim_adlv(&w, c)?;
                let count = self.count_adlv(&w, c)?;
                let ok = match dim {
                    Some(k) => predicted_nonempty && Rational::from_integer(k) == d_w,
                    None => !predicted_nonempty,
                };
                Ok(SuperregularRow { x, y, w, predicted_nonempty, d_w, dim, count, ok })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SuperregularReport { mu: mu.to_vec(), class: c.clone(), cone_ok, fundamental_ok, rows })
    }

    /// Elements of length at most `max_len` whose length-zero part has
    /// translation in the box of radius `omega_box`, by length.
    pub fn elements_up_to(&self, max_len: usize, omega_box: Int) -> Result<Vec<AffineElement>> {
        let d = self.datum();
        let omegas = if d.pi1().is_trivial() { vec![d.identity()] } else { d.omega_elements(omega_box)? };
        let mut out = Vec::new();
        for tau in omegas {
            let mut layer = vec![tau];
            for k in 0..=max_len {
                out.extend(layer.iter().cloned());
                if k == max_len {
                    break;
                }
                let mut seen = HashSet::new();
                layer = layer
                    .iter()
                    .flat_map(|x| d.affine_simple().iter().map(move |s| d.mul(s, x)))
                    .filter(|y| d.length(y) == k + 1 && seen.insert(y.clone()))
                    .collect();
            }
        }
        if out.len() > self.budgets().max_generated {
            return Err(Error::Budget(format!("{} elements up to length {max_len}", out.len())));
        }
        out.sort_by_cached_key(|w| (d.length(w), w.clone()));
        Ok(out)
    }

    /// Checks the dimension bound, nonemptiness counts, strategy invariance,
    /// the very-special law and the minimal-length bound on every element up
    /// to `max_len` (and every end class of its tree).
    pub fn sweep_invariants(&self, max_len: usize, omega_box: Int, seeds: &[u64]) -> Result<Vec<InvariantCheck>> {
        let elements = self.elements_up_to(max_len, omega_box)?;
        let per_element: Vec<[InvariantCheck; 5]> = elements
            .par_iter()
            .map(|w| self.sweep_one(w, seeds))
            .collect::<Result<_>>()?;
        let mut checks = [
            InvariantCheck::new("dim <= d_w"),
            InvariantCheck::new("count >= 1 when nonempty"),
            InvariantCheck::new("strategy invariance of (dim, count)"),
            InvariantCheck::new("cordial => very special (antidominant or regular)"),
            InvariantCheck::new("minimal length >= <nu, 2rho>"),
        ];
        for row in per_element {
            for (acc, c) in checks.iter_mut().zip(row) {
                acc.checked += c.checked;
                acc.failures.extend(c.failures);
            }
        }
        Ok(checks.into())
    }

    fn sweep_one(&self, w: &AffineElement, seeds: &[u64]) -> Result<[InvariantCheck; 5]> {
        let d = self.datum();
        let label = || element_to_string(d, w);
        let mut bound = InvariantCheck::new("");
        let mut count = InvariantCheck::new("");
        let mut strategy = InvariantCheck::new("");
        let mut law = InvariantCheck::new("");
        let mut minimal = InvariantCheck::new("");
        let bundle = self.tree(w, Strategy::Canonical)?;
        for end in bundle.tree.end_points() {
            let e = &bundle.tree.nodes[end].element;
            let ok = Rational::from_integer(d.length(e) as Int) >= d.pair_two_rho(&bundle.tree.nodes[end].class.nu);
            minimal.record(ok, || format!("end {} of {}", element_to_string(d, e), label()));
        }
        let dec = d.decompose_xmuy(w)?;
        let law_applies = dec.x == d.longest_element() || d.is_regular(&dec.mu);
        for (c, (score, n)) in &bundle.summary {
            let d_w = self.virtual_dim(w, c)?;
            bound.record(*score <= d_w, || format!("{} at {}", label(), encoding::class_to_string(c)));
            count.record(*n >= 1, || format!("{} at {}", label(), encoding::class_to_string(c)));
            for &seed in seeds {
                let other = self.tree(w, Strategy::Seeded(seed))?;
                let same = other.summary.get(c) == Some(&(*score, *n)) && other.summary.len() == bundle.summary.len();
                strategy.record(same, || format!("{} at {} with seed {seed}", label(), encoding::class_to_string(c)));
            }
            if law_applies {
                for r in self.classify_paths(w, c)? {
                    law.record(!r.cordial || r.very_special, || {
                        format!("{} path {} ending at {}", label(), r.id, element_to_string(d, &r.end))
                    });
                }
            }
        }
        Ok([bound, count, strategy, law, minimal])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Isogeny;

    fn engine(label: &str, iso: Isogeny) -> Engine {
        Engine::build(label, iso).unwrap()
    }

    fn class(e: &Engine, nu: &[Int]) -> NewtonClass {
        NewtonClass::of_translation(e.datum(), nu)
    }

    #[test]
    fn a1_virtual_dimensions() {
        let e = engine("A1", Isogeny::SimplyConnected);
        let d = e.datum();
        let w = d.from_word(&[0, 1, 0]).unwrap();
        assert_eq!(e.virtual_dim(&w, &class(&e, &[0])).unwrap(), Rational::from_integer(2));
        assert_eq!(e.virtual_dim(&w, &class(&e, &[1])).unwrap(), Rational::from_integer(1));
        let t = d.translation(&[3]);
        assert_eq!(e.virtual_dim(&t, &class(&e, &[3])).unwrap(), Rational::from_integer(0));
    }

    #[test]
    fn a1_dims_and_counts() {
        let e = engine("A1", Isogeny::SimplyConnected);
        let d = e.datum();
        let w = d.from_word(&[0, 1, 0]).unwrap();
        for nu in [[0], [1]] {
            let c = class(&e, &nu);
            assert_eq!(e.dim_adlv(&w, &c).unwrap(), Some(e.virtual_dim(&w, &c).unwrap().to_integer()));
            assert_eq!(e.count_adlv(&w, &c).unwrap(), 1);
        }
        let s1 = d.from_word(&[1]).unwrap();
        assert_eq!(e.dim_adlv(&s1, &class(&e, &[1])).unwrap(), None);
        assert_eq!(e.count_adlv(&s1, &class(&e, &[1])).unwrap(), 0);
    }

    #[test]
    fn a1_classification() {
        let e = engine("A1", Isogeny::SimplyConnected);
        let d = e.datum();
        let w = d.from_word(&[0, 1, 0]).unwrap();
        let reports = e.classify_paths(&w, &class(&e, &[0])).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].cordial && reports[0].very_special);

        let t = d.translation(&[1]);
        let reports = e.classify_paths(&t, &class(&e, &[1])).unwrap();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!(r.length, 0);
        assert!(r.cordial && r.very_special);
        assert!(r.springer_factor.k.is_empty());
    }

    #[test]
    fn a1_weighted_count() {
        let e = engine("A1", Isogeny::SimplyConnected);
        let d = e.datum();
        let w = d.from_word(&[0, 1, 0]).unwrap();
        let c = class(&e, &[0]);
        let shape = e.classify_paths(&w, &c).unwrap()[0].springer_factor.shape.clone();
        let plain = e.count_alv(&w, &c, &BTreeMap::new(), None).unwrap();
        assert_eq!(plain.count, 1);
        assert!(plain.dim_equals_d_w);
        let scaled = e.count_alv(&w, &c, &BTreeMap::from([(shape, 2)]), Some(3)).unwrap();
        assert_eq!(scaled.count, 2);
        assert_eq!(scaled.dim_y_w_gamma, Some(5));
    }

    #[test]
    fn a2_antidominant_law() {
        let e = engine("A2", Isogeny::SimplyConnected);
        let d = e.datum();
        let theta = d.coroot(d.highest_root().unwrap()).to_vec();
        let w0 = d.longest_element();
        let w = AffineElement::new(w0.act(&theta), w0.clone());
        let c = class(&e, &[0, 0]);
        let reports = e.classify_paths(&w, &c).unwrap();
        assert!(!reports.is_empty());
        assert!(reports.iter().filter(|r| r.cordial).all(|r| r.very_special));
        assert_eq!(e.count_alv(&w, &c, &BTreeMap::new(), None).unwrap().count, 2);
    }

    #[test]
    fn forward_counts_match_summary() {
        let e = engine("A2", Isogeny::SimplyConnected);
        for w in e.elements_up_to(6, 0).unwrap() {
            let bundle = e.tree(&w, Strategy::Canonical).unwrap();
            for c in bundle.summary.keys() {
                e.count_alv(&w, c, &BTreeMap::new(), None).unwrap();
            }
        }
    }

    #[test]
    fn superregular_a1() {
        let e = engine("A1", Isogeny::SimplyConnected);
        let rep = e.check_superregular(&[2], &class(&e, &[0])).unwrap();
        assert_eq!(rep.mismatches(), 0);
        let nonempty: Vec<(usize, usize)> = rep
            .rows
            .iter()
            .filter(|r| r.dim.is_some())
            .map(|r| (e.datum().weyl_length(&r.x), e.datum().weyl_length(&r.y)))
            .collect();
        assert_eq!(nonempty, vec![(0, 1), (1, 0)]);
        let row = rep.rows.iter().find(|r| r.x.is_identity() && !r.y.is_identity()).unwrap();
        assert_eq!(row.dim, Some(2));
        assert!(e.check_superregular(&[0], &class(&e, &[0])).is_err());
        assert!(e.check_superregular(&[2], &class(&e, &[2])).is_err());
    }

    #[test]
    fn superregular_kappa_mismatch_gl2() {
        let e = engine("GL2", Isogeny::Gl);
        let c = NewtonClass::new(e.datum(), vec![1], vec![Rational::new(1, 2); 2]).unwrap();
        // μ = (3, 1): even sum, so κ(μ) ≠ κ(c).
        let rep = e.check_superregular(&[3, 1], &c).unwrap();
        assert!(rep.variants_disagree());
        assert_eq!(rep.mismatches(), 0);
        assert!(rep.rows.iter().all(|r| r.dim.is_none() && !r.predicted_nonempty));
    }

    #[test]
    fn superregular_class_list() {
        let e = engine("A1", Isogeny::SimplyConnected);
        let got: Vec<Vec<Rational>> = e.superregular_classes(&[3]).unwrap().into_iter().map(|c| c.nu).collect();
        assert_eq!(got, vec![to_rational(&[0]), to_rational(&[1]), to_rational(&[2])]);
    }

    #[test]
    fn small_sweep() {
        let e = engine("A1", Isogeny::SimplyConnected);
        for check in e.sweep_invariants(5, 0, &[1, 2, 3]).unwrap() {
            assert!(check.passed(), "{}: {:?}", check.name, check.failures);
            assert!(check.checked > 0 || check.name.starts_with("cordial"), "{}", check.name);
        }
    }
}
