//! Levi subsystems `Φ_ν`, their affine simple reflections and length
//! function, standard triples `w = uτ` and spherical subsets.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{cartan_type_name, RootDatum};
use crate::{encoding, AffineElement, Engine, Int, QVector};

/// A simple reflection of `W̃_ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviGenerator {
    pub element: AffineElement,
    pub component: usize,
    pub affine: bool,
    /// Positive root whose reflection this is (the component's highest root
    /// for affine generators).
    pub root: usize,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct LeviContext {
    pub nu: QVector,
    /// Positive roots with `⟨ν, α⟩ = 0`.
    pub roots: Vec<usize>,
    /// Simple roots of `Φ_ν ∩ Φ⁺`, grouped by irreducible component.
    pub components: Vec<Vec<usize>>,
    pub highest: Vec<usize>,
    /// Per component: the affine generator first, then the finite ones.
    pub generators: Vec<LeviGenerator>,
}

/// `w = u τ` with `u` a word in the generators of `W̃_ν` and `ℓ_ν(τ) = 0`.
#[derive(Clone, Debug)]
pub struct StandardTriple {
    /// The element decomposed; equal to the input unless the input needed to
    /// be replaced by a cyclic shift to make `K_w` spherical.
    pub element: AffineElement,
    /// Simple conjugations taking the input to `element`.
    pub witness: Vec<usize>,
    pub context: LeviContext,
    pub u: Vec<usize>,
    pub tau: AffineElement,
    /// `Ad(τ)` on the generators.
    pub tau_perm: Vec<usize>,
    pub k_w: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalSubset {
    pub k: BTreeSet<usize>,
    pub n_k: usize,
    pub tau_stable: bool,
}

impl LeviContext {
    pub fn new(d: &RootDatum, nu: &[crate::Rational]) -> Result<Self> {
        let roots: Vec<usize> =
            (0..d.num_positive_roots()).filter(|&i| d.pair_q(nu, d.root(i)) == 0.into()).collect();
        let in_levi: HashMap<&[Int], usize> = roots.iter().map(|&i| (d.root(i), i)).collect();

        // Simple roots of Φ_ν⁺ are those that are not a sum of two others.
        let simple: Vec<usize> = roots
            .iter()
            .copied()
            .filter(|&a| {
                !roots.iter().any(|&b| {
                    let diff: Vec<Int> = d.root(a).iter().zip(d.root(b)).map(|(x, y)| x - y).collect();
                    in_levi.contains_key(diff.as_slice())
                })
            })
            .collect();

        let linked = |a: usize, b: usize| d.pair(d.coroot(a), d.root(b)) != 0;
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; simple.len()];
        for start in 0..simple.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![simple[start]];
            let mut k = 0;
            while k < comp.len() {
                for (j, &b) in simple.iter().enumerate() {
                    if !seen[j] && linked(comp[k], b) {
                        seen[j] = true;
                        comp.push(b);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            components.push(comp);
        }

        let mut highest = Vec::with_capacity(components.len());
        let mut generators = Vec::new();
        for (ci, comp) in components.iter().enumerate() {
            let orbit = root_orbit(d, comp);
            let theta = *orbit.iter().max_by_key(|&&i| (d.height(i), std::cmp::Reverse(i))).expect("nonempty component");
            highest.push(theta);
            let global = d.highest_root() == Some(theta) && comp.len() == d.rank();
            generators.push(LeviGenerator {
                element: AffineElement::new(d.coroot(theta).to_vec(), d.reflection(theta)),
                component: ci,
                affine: true,
                root: theta,
                label: if global { "s0".into() } else { format!("a{}", theta + 1) },
            });
            for &b in comp {
                generators.push(LeviGenerator {
                    element: d.finite(&d.reflection(b)),
                    component: ci,
                    affine: false,
                    root: b,
                    label: if b < d.rank() { format!("s{}", b + 1) } else { format!("r{}", b + 1) },
                });
            }
        }
        let ctx = Self { nu: nu.to_vec(), roots, components, highest, generators };
        for g in &ctx.generators {
            if ctx.length(d, &g.element) != 1 {
                return Err(Error::Certification(format!(
                    "Levi generator {} of ν = {} has Levi length {}",
                    g.label,
                    encoding::qvector_to_string(nu),
                    ctx.length(d, &g.element)
                )));
            }
        }
        Ok(ctx)
    }

    /// Iwahori–Matsumoto length of `W̃_ν` (sum over `Φ_ν⁺` only).
    pub fn length(&self, d: &RootDatum, w: &AffineElement) -> usize {
        let v = w.u.act(d.two_rho_check());
        let mut total: Int = 0;
        for &i in &self.roots {
            let p = d.pair(&w.t, d.root(i));
            total += if d.pair(&v, d.root(i)) > 0 { p.abs() } else { (p - 1).abs() };
        }
        total as usize
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Generator indices of each component (affine node first).
    pub fn component_nodes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.components.len()];
        for (i, g) in self.generators.iter().enumerate() {
            out[g.component].push(i);
        }
        out
    }

    /// `W_K` is finite iff `K` omits a node of every component.
    pub fn is_spherical(&self, k: &BTreeSet<usize>) -> bool {
        self.component_nodes().iter().all(|nodes| !nodes.iter().all(|i| k.contains(i)))
    }

    /// Cartan type of `Φ_ν`, `T` when empty.
    pub fn levi_type(&self, d: &RootDatum) -> String {
        let simple: Vec<usize> = self.components.iter().flatten().copied().collect();
        d.subsystem_type(&simple)
    }

    /// Coxeter type of `W_K`, from the gradients of the affine roots in `K`.
    pub fn subset_type(&self, d: &RootDatum, k: &BTreeSet<usize>) -> String {
        if k.is_empty() {
            return "empty".into();
        }
        let sign = |i: usize| if self.generators[i].affine { -1 } else { 1 };
        let m: Vec<Vec<Int>> = k
            .iter()
            .map(|&i| {
                k.iter()
                    .map(|&j| {
                        let (a, b) = (self.generators[i].root, self.generators[j].root);
                        sign(i) * sign(j) * d.pair(d.coroot(a), d.root(b))
                    })
                    .collect()
            })
            .collect();
        cartan_type_name(&m)
    }

    pub fn labels(&self, k: &BTreeSet<usize>) -> Vec<String> {
        k.iter().map(|&i| self.generators[i].label.clone()).collect()
    }

    /// Permutation `s ↦ τ s τ⁻¹` of the generators.
    pub fn conjugation_action(&self, d: &RootDatum, tau: &AffineElement) -> Result<Vec<usize>> {
        let inv = d.inverse(tau);
        let index: HashMap<&AffineElement, usize> =
            self.generators.iter().enumerate().map(|(i, g)| (&g.element, i)).collect();
        self.generators
            .iter()
            .map(|g| {
                let c = d.mul(&d.mul(tau, &g.element), &inv);
                index.get(&c).copied().ok_or_else(|| {
                    Error::Certification(format!(
                        "Ad({}) does not permute the Levi simple reflections",
                        encoding::element_to_string(d, tau)
                    ))
                })
            })
            .collect()
    }

    /// Length of the longest element of `W_K`, by ascending until no
    /// generator of `K` lengthens.
    pub fn longest_length(&self, d: &RootDatum, k: &BTreeSet<usize>) -> Result<usize> {
        if !self.is_spherical(k) {
            return Err(Error::Contract(format!("{:?} does not generate a finite group", self.labels(k))));
        }
        let mut x = d.identity();
        let mut len = 0;
        loop {
            let up = k.iter().map(|&i| d.mul(&self.generators[i].element, &x)).find(|y| self.length(d, y) > len);
            match up {
                Some(y) => {
                    x = y;
                    len += 1;
                }
                None => return Ok(len),
            }
        }
    }

    /// All spherical `K`, with `n_K` and whether `Ad(τ)K = K`.
    pub fn spherical_subsets(&self, d: &RootDatum, tau: &AffineElement) -> Result<Vec<SphericalSubset>> {
        let perm = self.conjugation_action(d, tau)?;
        let n = self.generators.len();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            let k: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if !self.is_spherical(&k) {
                continue;
            }
            let n_k = self.longest_length(d, &k)?;
            let tau_stable = k.iter().all(|&i| k.contains(&perm[i]));
            out.push(SphericalSubset { k, n_k, tau_stable });
        }
        out.sort_by(|a, b| (a.k.len(), &a.k).cmp(&(b.k.len(), &b.k)));
        Ok(out)
    }
}

/// Roots of the irreducible subsystem with the given simple roots.
fn root_orbit(d: &RootDatum, simple: &[usize]) -> Vec<usize> {
    let mut found: BTreeSet<usize> = simple.iter().copied().collect();
    let mut stack: Vec<usize> = simple.to_vec();
    while let Some(b) = stack.pop() {
        for &s in simple {
            let p = d.pair(d.coroot(s), d.root(b));
            let img: Vec<Int> = d.root(b).iter().zip(d.root(s)).map(|(x, y)| x - p * y).collect();
            if let Some(r) = d.find_root(&img) {
                if r.positive && found.insert(r.index) {
                    stack.push(r.index);
                }
            }
        }
    }
    found.into_iter().collect()
}

impl StandardTriple {
    pub fn n_kw(&self, d: &RootDatum) -> Result<usize> {
        self.context.longest_length(d, &self.k_w)
    }

    /// Sorted cycle lengths of `Ad(τ)`, e.g. `1,1,2`.
    pub fn tau_cycle_type(&self) -> String {
        let n = self.tau_perm.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.tau_perm[j];
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable();
        cycles.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }

    /// Key `levi type|K type|τ cycles` indexing user-supplied `n` values.
    pub fn shape_key(&self, d: &RootDatum) -> String {
        let cycles = self.tau_cycle_type();
        format!(
            "{}|{}|{}",
            self.context.levi_type(d),
            self.context.subset_type(d, &self.k_w),
            if cycles.is_empty() { "-" } else { &cycles }
        )
    }
}

impl Engine {
    pub fn levi_context(&self, nu: &[crate::Rational]) -> Result<LeviContext> {
        LeviContext::new(self.datum(), nu)
    }

    fn triple_of(&self, w: &AffineElement) -> Result<(LeviContext, Vec<usize>, AffineElement, Vec<usize>, BTreeSet<usize>)> {
        let d = self.datum();
        let ctx = self.levi_context(&self.newton_point(w).nu)?;
        let mut cur = w.clone();
        let mut len = ctx.length(d, &cur);
        let mut u = Vec::new();
        while len > 0 {
            let (i, next) = ctx
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| (i, d.mul(&g.element, &cur)))
                .find(|(_, x)| ctx.length(d, x) < len)
                .ok_or_else(|| {
                    Error::Certification(format!(
                        "no Levi descent for {} of Levi length {len}",
                        encoding::element_to_string(d, &cur)
                    ))
                })?;
            u.push(i);
            cur = next;
            len -= 1;
        }
        let perm = ctx.conjugation_action(d, &cur)?;
        let mut k: BTreeSet<usize> = u.iter().copied().collect();
        loop {
            let grown: BTreeSet<usize> = k.iter().map(|&i| perm[i]).chain(k.iter().copied()).collect();
            if grown.len() == k.len() {
                break;
            }
            k = grown;
        }
        Ok((ctx, u, cur, perm, k))
    }

    /// `w = u τ` for minimal `w`, with `K_w` the `τ`-closure of `supp(u)`.
    ///
    /// If `K_w` is not spherical for `w` itself, the first element of its
    /// cyclic-shift class (BFS order) for which it is spherical is used and
    /// reported in `element` together with the conjugating word.
    pub fn standard_triple(&self, w: &AffineElement) -> Result<StandardTriple> {
        let d = self.datum();
        if !self.is_minimal(w)? {
            return Err(Error::Contract(format!(
                "{} is not of minimal length in its conjugacy class",
                encoding::element_to_string(d, w)
            )));
        }
        let (ctx, u, tau, perm, k) = self.triple_of(w)?;
        if ctx.is_spherical(&k) {
            return Ok(StandardTriple { element: w.clone(), witness: vec![], context: ctx, u, tau, tau_perm: perm, k_w: k });
        }
        let scan = self.scan_class(w, false)?;
        for (idx, x) in scan.elements.iter().enumerate().skip(1) {
            let (ctx, u, tau, perm, k) = self.triple_of(x)?;
            if ctx.is_spherical(&k) {
                return Ok(StandardTriple {
                    element: x.clone(),
                    witness: scan.witness(idx),
                    context: ctx,
                    u,
                    tau,
                    tau_perm: perm,
                    k_w: k,
                });
            }
        }
        Err(Error::Certification(format!(
            "no element of the cyclic-shift class of {} has a spherical τ-stable support",
            encoding::element_to_string(d, w)
        )))
    }

    /// `n_{K_w} ≥ n_K` for every `τ`-stable spherical `K ⊆ S̃_ν`.
    pub fn is_very_special(&self, w: &AffineElement) -> Result<bool> {
        let t = self.standard_triple(w)?;
        self.triple_is_very_special(&t)
    }

    pub fn triple_is_very_special(&self, t: &StandardTriple) -> Result<bool> {
        let d = self.datum();
        let n_kw = t.n_kw(d)?;
        let best = t
            .context
            .spherical_subsets(d, &t.tau)?
            .into_iter()
            .filter(|s| s.tau_stable)
            .map(|s| s.n_k)
            .max()
            .unwrap_or(0);
        Ok(n_kw >= best)
    }
}
