//! Reduction trees: a pivot `(w′, s)` with `w ≈ w′` and `ℓ(sw′s) = ℓ(w′) − 2`
//! gives children `sw′` and `sw′s`; end points are minimal-length elements.
//!
//! Trees are stored as DAGs keyed by element, so repeated subproblems are
//! built once. Path statistics per Newton class come from a bottom-up
//! summary, so the exponentially many literal paths never need to exist.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classes::NewtonClass;
use crate::error::{Error, Result};
use crate::{encoding, AffineElement, Engine, Int, Rational, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// First pivot in BFS order of the cyclic-shift class, reflections in
    /// index order.
    Canonical,
    /// A pivot drawn uniformly from all pivots of the class, seeded by the
    /// given value and the element.
    Seeded(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// `s w′`, length drops by 1.
    OneStep,
    /// `s w′ s`, length drops by 2.
    TwoStep,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::OneStep => "one-step",
            Self::TwoStep => "two-step",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Pivot {
    pub element: AffineElement,
    pub s: usize,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub element: AffineElement,
    pub length: usize,
    pub pivot: Option<Pivot>,
    pub children: Vec<(usize, EdgeKind)>,
    pub class: NewtonClass,
}

impl Node {
    pub fn is_end(&self) -> bool {
        self.children.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ReductionTree {
    pub strategy: Strategy,
    pub nodes: Vec<Node>,
    index: HashMap<AffineElement, usize>,
}

/// Root-to-end path, as node ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPath {
    pub nodes: Vec<usize>,
    pub kinds: Vec<EdgeKind>,
}

impl ReductionPath {
    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn end(&self) -> usize {
        *self.nodes.last().expect("a path has at least one node")
    }
}

/// Best score and number of paths attaining it, per end-point class.
pub type Summary = BTreeMap<NewtonClass, (Rational, u128)>;

impl ReductionTree {
    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn node_of(&self, w: &AffineElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn end_points(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_end()).collect()
    }

    /// Number of root-to-end paths (saturating).
    pub fn path_count(&self) -> u128 {
        let mut counts = vec![0u128; self.nodes.len()];
        for id in self.bottom_up() {
            let n = &self.nodes[id];
            counts[id] = if n.is_end() { 1 } else { n.children.iter().fold(0u128, |a, (c, _)| a.saturating_add(counts[*c])) };
        }
        counts[0]
    }

    /// Node ids with children before parents.
    fn bottom_up(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.nodes.len()).collect();
        ids.sort_by_key(|&i| (self.nodes[i].length, i));
        ids
    }

    /// Root-to-end paths whose end point has class `filter` (all if `None`),
    /// in depth-first order with one-step edges first.
    pub fn paths(&self, filter: Option<&NewtonClass>, max_paths: usize) -> Result<Vec<ReductionPath>> {
        // Prune subtrees that cannot reach a matching end point.
        let mut reaches = vec![false; self.nodes.len()];
        for id in self.bottom_up() {
            let n = &self.nodes[id];
            reaches[id] = if n.is_end() {
                filter.is_none_or(|c| &n.class == c)
            } else {
                n.children.iter().any(|(c, _)| reaches[*c])
            };
        }
        let mut out = Vec::new();
        if !reaches[0] {
            return Ok(out);
        }
        let mut stack = vec![(ReductionPath { nodes: vec![0], kinds: vec![] })];
        while let Some(p) = stack.pop() {
            let node = &self.nodes[p.end()];
            if node.is_end() {
                if out.len() >= max_paths {
                    return Err(Error::Budget(format!("more than {max_paths} reduction paths")));
                }
                out.push(p);
                continue;
            }
            for &(c, kind) in node.children.iter().rev() {
                if reaches[c] {
                    let mut q = p.clone();
                    q.nodes.push(c);
                    q.kinds.push(kind);
                    stack.push(q);
                }
            }
        }
        Ok(out)
    }

    /// Per node: for each end class reachable, the best
    /// `ℓ(p) + ℓ(end) − ⟨ν̄_end, 2ρ⟩` over paths from the node and its multiplicity.
    pub fn summaries(&self, engine: &Engine) -> Vec<Summary> {
        let d = engine.datum();
        let mut out: Vec<Summary> = vec![BTreeMap::new(); self.nodes.len()];
        for id in self.bottom_up() {
            let n = &self.nodes[id];
            let mut s = Summary::new();
            if n.is_end() {
                let score = Rational::from_integer(n.length as Int) - d.pair_two_rho(&n.class.nu);
                s.insert(n.class.clone(), (score, 1));
            } else {
                for (c, _) in &n.children {
                    for (class, (score, count)) in &out[*c] {
                        let score = score + Rational::from_integer(1);
                        merge(&mut s, class, score, *count);
                    }
                }
            }
            out[id] = s;
        }
        out
    }

    pub fn root_summary(&self, engine: &Engine) -> Summary {
        self.summaries(engine).swap_remove(0)
    }

    pub fn to_json(&self, engine: &Engine) -> Value {
        let d = engine.datum();
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                json!({
                    "id": i,
                    "element": encoding::element_to_json(d, &n.element),
                    "label": encoding::element_to_string(d, &n.element),
                    "length": n.length,
                    "f": encoding::class_to_json(&n.class),
                    "end": n.is_end(),
                    "pivot": n.pivot.as_ref().map(|p| json!({
                        "element": encoding::element_to_json(d, &p.element),
                        "s": p.s,
                    })),
                })
            })
            .collect();
        let mut edges = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            for (c, kind) in &n.children {
                edges.push(json!({ "from": i, "to": c, "kind": kind.as_str(), "s": n.pivot.as_ref().map(|p| p.s) }));
            }
        }
        json!({
            "schema": "1",
            "root": 0,
            "nodes": nodes,
            "edges": edges,
            "end_points": self.end_points(),
            "path_count": encoding::count_to_json(self.path_count()),
        })
    }

    pub fn to_dot(&self, engine: &Engine) -> String {
        let d = engine.datum();
        let mut s = String::from("digraph reduction_tree {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let shape = if n.is_end() { ", peripheries=2" } else { "" };
            let _ = writeln!(
                s,
                "  n{i} [label=\"{}\\nl={}\\n{}\"{shape}];",
                encoding::element_to_string(d, &n.element),
                n.length,
                encoding::class_to_string(&n.class)
            );
        }
        for (i, n) in self.nodes.iter().enumerate() {
            let sidx = n.pivot.as_ref().map_or(0, |p| p.s);
            for (c, kind) in &n.children {
                let (label, style) = match kind {
                    EdgeKind::OneStep => (format!("s{sidx}w'"), "solid"),
                    EdgeKind::TwoStep => (format!("s{sidx}w's{sidx}"), "dashed"),
                };
                let _ = writeln!(s, "  n{i} -> n{c} [label=\"{label}\", style={style}];");
            }
        }
        s.push_str("}\n");
        s
    }
}

fn merge(s: &mut Summary, class: &NewtonClass, score: Rational, count: u128) {
    match s.get_mut(class) {
        Some((best, n)) => {
            if score > *best {
                *best = score;
                *n = count;
            } else if score == *best {
                *n = n.saturating_add(count);
            }
        }
        None => {
            s.insert(class.clone(), (score, count));
        }
    }
}

/// FNV-1a over the coordinates of an element; stable across platforms.
fn element_hash(w: &AffineElement) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let dim = w.u.dim();
    let entries = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j)));
    for x in w.t.iter().copied().chain(entries.map(|(i, j)| w.u.entry(i, j))) {
        for b in x.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

/// Outcome of checking one step `x ⇀ y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveCheck {
    /// Some `x′ ≈ x` and `s` with `ℓ(sx′s) = ℓ(x′) − 2` have `y` cyclic-shift
    /// equivalent to `sx′` or `sx′s`.
    pub valid: bool,
    /// `y` is literally `sx′` or `sx′s` for such a pivot.
    pub strict: bool,
}

impl Engine {
    /// The canonical pivot of `w`, or `None` when `w` is minimal.
    pub fn find_reduction_move(&self, w: &AffineElement) -> Result<Option<(AffineElement, usize)>> {
        let scan = self.scan_class(w, true)?;
        Ok(scan.drops.first().map(|&(i, s)| (scan.elements[i].clone(), s)))
    }

    /// All pivots of `w` in BFS order.
    pub fn all_reduction_moves(&self, w: &AffineElement) -> Result<Vec<(AffineElement, usize)>> {
        let scan = self.scan_class(w, false)?;
        Ok(scan.drops.iter().map(|&(i, s)| (scan.elements[i].clone(), s)).collect())
    }

    fn pivot(&self, w: &AffineElement, strategy: Strategy) -> Result<Option<Pivot>> {
        let chosen = match strategy {
            Strategy::Canonical => self.find_reduction_move(w)?,
            Strategy::Seeded(k) => {
                let mut moves = self.all_reduction_moves(w)?;
                if moves.is_empty() {
                    None
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(k ^ element_hash(w));
                    let i = rng.gen_range(0..moves.len());
                    Some(moves.swap_remove(i))
                }
            }
        };
        Ok(chosen.map(|(element, s)| Pivot { element, s }))
    }

    /// Builds the reduction tree of `w` level by level; pivots of a level are
    /// computed in parallel and inserted in id order, so ids are stable.
    pub fn build_tree(&self, w: &AffineElement, strategy: Strategy) -> Result<ReductionTree> {
        let d = self.datum();
        let mut tree = ReductionTree { strategy, nodes: Vec::new(), index: HashMap::new() };
        let make_node = |e: &AffineElement| Node {
            element: e.clone(),
            length: d.length(e),
            pivot: None,
            children: Vec::new(),
            class: NewtonClass::default_for(d),
        };
        tree.nodes.push(make_node(w));
        tree.index.insert(w.clone(), 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let pivots: Vec<Option<Pivot>> = frontier
                .par_iter()
                .map(|&id| self.pivot(&tree.nodes[id].element, strategy))
                .collect::<Result<_>>()?;
            let mut next = Vec::new();
            for (&id, pivot) in frontier.iter().zip(pivots) {
                let Some(p) = pivot else {
                    continue;
                };
                let s = &d.affine_simple()[p.s];
                let one = d.mul(s, &p.element);
                let two = d.mul(&one, s);
                let mut children = Vec::with_capacity(2);
                for (child, kind) in [(one, EdgeKind::OneStep), (two, EdgeKind::TwoStep)] {
                    let cid = match tree.index.get(&child) {
                        Some(&c) => c,
                        None => {
                            if tree.nodes.len() >= self.budgets().max_nodes {
                                return Err(Error::Budget(format!(
                                    "reduction tree exceeds {} nodes",
                                    self.budgets().max_nodes
                                )));
                            }
                            let c = tree.nodes.len();
                            tree.nodes.push(make_node(&child));
                            tree.index.insert(child, c);
                            next.push(c);
                            c
                        }
                    };
                    children.push((cid, kind));
                }
                tree.nodes[id].pivot = Some(p);
                tree.nodes[id].children = children;
            }
            frontier = next;
        }
        let classes: Vec<NewtonClass> = tree.nodes.par_iter().map(|n| self.f_map(&n.element)).collect();
        for (n, c) in tree.nodes.iter_mut().zip(classes) {
            n.class = c;
        }
        self.certify_tree(&tree)?;
        Ok(tree)
    }

    fn certify_tree(&self, tree: &ReductionTree) -> Result<()> {
        let d = self.datum();
        for n in &tree.nodes {
            for (c, kind) in &n.children {
                let expected = match kind {
                    EdgeKind::OneStep => n.length.checked_sub(1),
                    EdgeKind::TwoStep => n.length.checked_sub(2),
                };
                if Some(tree.nodes[*c].length) != expected {
                    return Err(Error::Certification(format!(
                        "edge from {} breaks the child-length law",
                        encoding::element_to_string(d, &n.element)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks `x ⇀ y`, accepting `y` up to cyclic shift.
    pub fn check_move(&self, x: &AffineElement, y: &AffineElement) -> Result<MoveCheck> {
        let d = self.datum();
        let scan = self.scan_class(x, false)?;
        let mut children = Vec::with_capacity(2 * scan.drops.len());
        for &(i, s) in &scan.drops {
            let one = d.mul(&d.affine_simple()[s], &scan.elements[i]);
            let two = d.mul(&one, &d.affine_simple()[s]);
            if &one == y || &two == y {
                return Ok(MoveCheck { valid: true, strict: true });
            }
            children.push(one);
            children.push(two);
        }
        if d.length(y) + 2 < d.length(x) || d.length(y) >= d.length(x) {
            return Ok(MoveCheck { valid: false, strict: false });
        }
        let class_y: HashSet<AffineElement> = self.cyclic_class(y)?.into_iter().collect();
        let valid = children.iter().any(|c| class_y.contains(c));
        Ok(MoveCheck { valid, strict: false })
    }

    /// Checks every consecutive pair of a sequence.
    pub fn check_sequence(&self, seq: &[AffineElement]) -> Result<Vec<MoveCheck>> {
        seq.windows(2).map(|p| self.check_move(&p[0], &p[1])).collect()
    }

    /// `w₀t^μ ⇀ ⋯ ⇀ x t^μ y` for `μ` dominant regular, built by first peeling
    /// a reduced word of `w₀(yx)⁻¹` from the left and then conjugating by the
    /// letters of `y`, keeping only the length-dropping conjugations.
    pub fn constructive_path_regular(
        &self,
        x: &WeylElement,
        y: &WeylElement,
        mu: &[Int],
    ) -> Result<Vec<AffineElement>> {
        let d = self.datum();
        if !d.is_dominant(mu) || !d.is_regular(mu) {
            return Err(Error::Contract(format!("μ = {mu:?} is not dominant regular")));
        }
        let t_mu = d.translation(mu);
        let w0 = d.longest_element();
        let yx = y.compose(x);
        let word = d.reduced_word(&w0.compose(&d.weyl_inverse(&yx)));
        let mut seq = Vec::with_capacity(word.len() + 1);
        for j in 0..=word.len() {
            let prefix = d.weyl_from_word(&word[j..]).compose(&yx);
            seq.push(d.mul(&d.finite(&prefix), &t_mu));
        }
        let ky = d.reduced_word(y);
        let mut prev_len = d.length(seq.last().expect("nonempty"));
        for j in 1..=ky.len() {
            let left = d.weyl_from_word(&ky[j..]).compose(x);
            let right = d.weyl_from_word(&ky[..j]);
            let q = d.product(&[d.finite(&left), t_mu.clone(), d.finite(&right)]);
            let len = d.length(&q);
            if len + 2 == prev_len {
                seq.push(q);
            } else if len != prev_len {
                return Err(Error::Certification(format!(
                    "partial conjugation changed the length from {prev_len} to {len}"
                )));
            } else if j == ky.len() {
                // the end point is reached through a length-preserving step
                seq.pop();
                seq.push(q);
            }
            prev_len = len;
        }
        Ok(seq)
    }

    /// `w₀t^μ ⇀ w₀t^μ s_{i_1} ⇀ ⋯ ⇀ w₀t^μ y` for `t^μ y` minimal in its
    /// `W₀`-coset.
    pub fn constructive_path_antidominant(&self, y: &WeylElement, mu: &[Int]) -> Result<Vec<AffineElement>> {
        let d = self.datum();
        if !d.is_dominant(mu) {
            return Err(Error::Contract(format!("μ = {mu:?} is not dominant")));
        }
        let ty = AffineElement::new(mu.to_vec(), y.clone());
        let len = d.length(&ty);
        if (0..d.rank()).any(|i| d.length(&d.mul(&d.finite(&d.simple_weyl(i)), &ty)) < len) {
            return Err(Error::Contract("t^μ y is not minimal in its W₀-coset".into()));
        }
        let start = d.mul(&d.finite(&d.longest_element()), &d.translation(mu));
        let word = d.reduced_word(y);
        let mut seq = vec![start];
        for &i in &word {
            let next = d.mul(seq.last().expect("nonempty"), &d.finite(&d.simple_weyl(i)));
            seq.push(next);
        }
        Ok(seq)
    }
}

/// A built tree with its root summary, shared through the engine's memo.
#[derive(Debug)]
pub struct TreeBundle {
    pub tree: ReductionTree,
    pub summary: Summary,
}

impl Engine {
    /// Memoized `build_tree` plus root summary.
    pub fn tree(&self, w: &AffineElement, strategy: Strategy) -> Result<std::sync::Arc<TreeBundle>> {
        let key = (w.clone(), strategy);
        if let Some(b) = self.trees.lock().expect("tree cache poisoned").get(&key) {
            return Ok(b.clone());
        }
        let tree = self.build_tree(w, strategy)?;
        let summary = tree.root_summary(self);
        let bundle = std::sync::Arc::new(TreeBundle { tree, summary });
        self.trees.lock().expect("tree cache poisoned").insert(key, bundle.clone());
        Ok(bundle)
    }
}

impl NewtonClass {
    fn default_for(d: &crate::RootDatum) -> Self {
        Self { kappa: vec![0; d.pi1().moduli().len()], nu: vec![Rational::from_integer(0); d.dim()] }
    }
}

/// `ℓ(w₀) − ½(ℓ(x) − ℓ(y) + ℓ(yx))`.
pub fn regular_path_length(d: &crate::RootDatum, x: &WeylElement, y: &WeylElement) -> usize {
    let (lx, ly, lyx) = (d.weyl_length(x) as i64, d.weyl_length(y) as i64, d.weyl_length(&y.compose(x)) as i64);
    let twice = 2 * d.num_positive_roots() as i64 - (lx - ly + lyx);
    (twice / 2) as usize
}
