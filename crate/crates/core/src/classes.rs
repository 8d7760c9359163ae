//! Conjugation dynamics in `W̃`: cyclic shifts, minimal-length elements,
//! Newton points, `κ`, straight elements and their classes, and the defect.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::solve_integral;
use crate::rootdata::RootDatum;
use crate::{encoding, to_integral, AffineElement, Coweight, Engine, Int, QVector, Rational};

/// `(κ, ν)` with `κ ∈ π₁` and `ν` a dominant rational coweight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewtonClass {
    pub kappa: Vec<Int>,
    pub nu: QVector,
}

impl NewtonClass {
    /// Validates dimensions and dominance and reduces `κ` to normal form.
    pub fn new(d: &RootDatum, kappa: Vec<Int>, nu: QVector) -> Result<Self> {
        if nu.len() != d.dim() {
            return Err(Error::Config(format!("nu has {} coordinates, lattice has {}", nu.len(), d.dim())));
        }
        if !d.is_dominant_q(&nu) {
            return Err(Error::Config(format!("nu = {} is not dominant", encoding::qvector_to_string(&nu))));
        }
        Ok(Self { kappa: d.pi1().normalize(&kappa)?, nu })
    }

    /// Class of the translation `t^λ` (`λ` made dominant).
    pub fn of_translation(d: &RootDatum, lambda: &[Int]) -> Self {
        let (dom, _) = d.dominant_rep_int(lambda);
        Self { kappa: d.pi1_class(lambda), nu: crate::to_rational(&dom) }
    }

    pub fn basic(d: &RootDatum, kappa: Vec<Int>) -> Result<Self> {
        Self::new(d, kappa, vec![Rational::zero(); d.dim()])
    }

    pub fn is_integral(&self) -> bool {
        self.nu.iter().all(|x| x.is_integer())
    }
}

impl Serialize for NewtonClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        encoding::class_to_json(self).serialize(s)
    }
}

/// `w^N = t^{Nν}` with `N` the order of the finite part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPoint {
    pub nu: QVector,
    pub nu_bar: QVector,
    pub order: usize,
}

/// Result of exploring a cyclic-shift class.
#[derive(Clone, Debug)]
pub struct ClassScan {
    /// Elements in BFS order; index 0 is the start.
    pub elements: Vec<AffineElement>,
    /// `(parent index, s)` for every element but the start.
    pub parents: Vec<Option<(usize, usize)>>,
    /// `(element index, s)` with `ℓ(s w′ s) = ℓ(w′) − 2`, in discovery order.
    pub drops: Vec<(usize, usize)>,
}

impl ClassScan {
    /// Simple reflections conjugating the start into element `idx`.
    pub fn witness(&self, mut idx: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some((p, s)) = self.parents[idx] {
            out.push(s);
            idx = p;
        }
        out.reverse();
        out
    }
}

impl Engine {
    /// `(s w s, ℓ(sws) − ℓ(w))`.
    pub fn conj_step(&self, w: &AffineElement, s: usize) -> (AffineElement, i64) {
        let d = self.datum();
        let next = d.conjugate_by_simple(w, s);
        let delta = d.length(&next) as i64 - d.length(w) as i64;
        (next, delta)
    }

    /// BFS over length-preserving simple conjugations. With `stop_at_drop`
    /// the scan ends at the first length-dropping pair, which is then the
    /// only entry of `drops`.
    pub fn scan_class(&self, w: &AffineElement, stop_at_drop: bool) -> Result<ClassScan> {
        let d = self.datum();
        let len = d.length(w) as i64;
        let mut index: HashMap<AffineElement, usize> = HashMap::from([(w.clone(), 0)]);
        let mut scan = ClassScan { elements: vec![w.clone()], parents: vec![None], drops: Vec::new() };
        let mut queue = VecDeque::from([0usize]);
        let n_simple = d.affine_simple().len();
        while let Some(i) = queue.pop_front() {
            for s in 0..n_simple {
                let next = d.conjugate_by_simple(&scan.elements[i], s);
                let l = d.length(&next) as i64;
                if l < len {
                    scan.drops.push((i, s));
                    if stop_at_drop {
                        return Ok(scan);
                    }
                } else if l == len && !index.contains_key(&next) {
                    if scan.elements.len() >= self.budgets().max_class {
                        return Err(Error::Budget(format!(
                            "cyclic-shift class of {} exceeds {} elements",
                            encoding::element_to_string(d, w),
                            self.budgets().max_class
                        )));
                    }
                    index.insert(next.clone(), scan.elements.len());
                    scan.parents.push(Some((i, s)));
                    queue.push_back(scan.elements.len());
                    scan.elements.push(next);
                }
            }
        }
        Ok(scan)
    }

    /// All `w′ ≈ w` reachable by length-preserving simple conjugations.
    pub fn cyclic_class(&self, w: &AffineElement) -> Result<Vec<AffineElement>> {
        Ok(self.scan_class(w, false)?.elements)
    }

    /// `w` is of minimal length in its conjugacy class iff no element of its
    /// cyclic-shift class admits a length-dropping simple conjugation.
    pub fn is_minimal(&self, w: &AffineElement) -> Result<bool> {
        Ok(self.scan_class(w, true)?.drops.is_empty())
    }

    /// A minimal-length conjugate and the simple reflections conjugating `w`
    /// into it (each step `x ↦ sxs` with `ℓ(sxs) ≤ ℓ(x)`).
    pub fn minimize(&self, w: &AffineElement) -> Result<(AffineElement, Vec<usize>)> {
        let mut cur = w.clone();
        let mut witness = Vec::new();
        loop {
            let scan = self.scan_class(&cur, true)?;
            let Some(&(i, s)) = scan.drops.first() else {
                return Ok((cur, witness));
            };
            witness.extend(scan.witness(i));
            witness.push(s);
            cur = self.datum().conjugate_by_simple(&scan.elements[i], s);
        }
    }

    pub fn newton_point(&self, w: &AffineElement) -> NewtonPoint {
        let d = self.datum();
        let order = d.weyl_order(&w.u);
        let p = d.power(w, order);
        debug_assert!(p.u.is_identity());
        let n = Rational::from_integer(order as Int);
        let nu: QVector = p.t.iter().map(|&x| Rational::from_integer(x) / n).collect();
        let (nu_bar, _) = d.dominant_rep(&nu);
        NewtonPoint { nu, nu_bar, order }
    }

    /// `ℓ(w^N) = N ℓ(w)` for `N` the order of the finite part.
    ///
    /// This suffices: `w^{kN} = t^{kNν}` so `ℓ(w^{kN}) = k ℓ(w^N)`, and
    /// subadditivity then forces `ℓ(w^m) = m ℓ(w)` for every `m`.
    pub fn is_straight(&self, w: &AffineElement) -> bool {
        let d = self.datum();
        let order = d.weyl_order(&w.u);
        d.length(&d.power(w, order)) == order * d.length(w)
    }

    /// `(κ(w), ν̄_w)`.
    pub fn f_map(&self, w: &AffineElement) -> NewtonClass {
        let np = self.newton_point(w);
        NewtonClass { kappa: self.datum().pi1_class(&w.t), nu: np.nu_bar }
    }

    /// `⟨ν̄, 2ρ⟩` for a class.
    pub fn two_rho_pairing(&self, c: &NewtonClass) -> Rational {
        self.datum().pair_two_rho(&c.nu)
    }

    /// `true` iff `a` and `b` are conjugate in `W̃`: some `v ∈ W₀` has
    /// `v u v⁻¹ = u′` and `λ′ − vλ ∈ (1 − u′) X_*`.
    pub fn are_conjugate(&self, a: &AffineElement, b: &AffineElement) -> bool {
        let d = self.datum();
        let n = d.dim();
        let mut m = b.u.matrix();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Int::from(i == j) - b.u.entry(i, j);
            }
        }
        d.weyl_elements().into_iter().any(|v| {
            let vi = d.weyl_inverse(&v);
            if v.compose(&a.u).compose(&vi) != b.u {
                return false;
            }
            let va = v.act(&a.t);
            let rhs: Coweight = b.t.iter().zip(&va).map(|(x, y)| x - y).collect();
            solve_integral(&m, &rhs).is_some()
        })
    }

    /// Elements of `W_af τ` of length exactly `len`, by layered left
    /// multiplication from `τ`.
    pub fn coset_layer(&self, tau: &AffineElement, len: usize) -> Result<Vec<AffineElement>> {
        let d = self.datum();
        let mut layer = vec![tau.clone()];
        let mut generated = 1usize;
        for k in 0..len {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for x in &layer {
                for s in d.affine_simple() {
                    let y = d.mul(s, x);
                    if d.length(&y) == k + 1 && seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            generated += next.len();
            if generated > self.budgets().max_generated {
                return Err(Error::Budget(format!(
                    "more than {} elements generated below length {len}",
                    self.budgets().max_generated
                )));
            }
            layer = next;
        }
        Ok(layer)
    }

    /// Straight classes with `⟨ν, 2ρ⟩ ≤ nu_bound` whose length-zero part has
    /// translation in the box of radius `omega_box`, each with the first
    /// straight representative found. Injectivity of `f` on the straight
    /// elements found is verified by an explicit conjugacy test.
    pub fn straight_classes(&self, nu_bound: usize, omega_box: Int) -> Result<Vec<(NewtonClass, AffineElement)>> {
        let d = self.datum();
        let omegas = match d.omega_elements(omega_box) {
            Ok(v) => v,
            Err(Error::Budget(_)) if omega_box == 0 => vec![d.identity()],
            Err(e) => return Err(e),
        };
        let mut groups: BTreeMap<NewtonClass, Vec<AffineElement>> = BTreeMap::new();
        for tau in &omegas {
            for len in 0..=nu_bound {
                for w in self.coset_layer(tau, len)? {
                    if self.is_straight(&w) {
                        groups.entry(self.f_map(&w)).or_default().push(w);
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(groups.len());
        for (c, elems) in groups {
            let rep = &elems[0];
            if let Some(bad) = elems.iter().find(|w| !self.are_conjugate(rep, w)) {
                return Err(Error::Certification(format!(
                    "straight elements {} and {} share {} but are not conjugate",
                    encoding::element_to_string(d, rep),
                    encoding::element_to_string(d, bad),
                    encoding::class_to_string(&c)
                )));
            }
            out.push((c, rep.clone()));
        }
        Ok(out)
    }

    /// A straight element with `f = c`.
    pub fn straight_representative(&self, c: &NewtonClass) -> Result<AffineElement> {
        let d = self.datum();
        if let Some(nu) = to_integral(&c.nu) {
            if d.pi1_class(&nu) == c.kappa {
                return Ok(d.translation(&nu));
            }
        }
        let target = d.pair_two_rho(&c.nu);
        if !target.is_integer() || target.is_negative() {
            return Err(self.unrealized(c));
        }
        let tau = d.omega_of_class(&c.kappa)?;
        let len = target.to_integer() as usize;
        self.coset_layer(&tau, len)?
            .into_iter()
            .find(|w| self.is_straight(w) && self.f_map(w) == *c)
            .ok_or_else(|| self.unrealized(c))
    }

    fn unrealized(&self, c: &NewtonClass) -> Error {
        Error::Contract(format!("{} is not realized by a straight element", encoding::class_to_string(c)))
    }

    /// `rank X_* − dim Fix(u)` for a straight representative `t^λ u` of `c`.
    pub fn defect(&self, c: &NewtonClass) -> Result<usize> {
        if let Some((def, _)) = self.defects.lock().expect("defect cache poisoned").get(c) {
            return Ok(*def);
        }
        let rep = self.straight_representative(c)?;
        let d = self.datum();
        let def = d.dim() - d.fixed_dim(&rep.u);
        self.defects.lock().expect("defect cache poisoned").insert(c.clone(), (def, rep));
        Ok(def)
    }

    /// `λ_b = ν` for integral Newton points.
    pub fn lambda_b(&self, c: &NewtonClass) -> Result<Coweight> {
        to_integral(&c.nu).ok_or_else(|| {
            Error::Unsupported(format!(
                "λ_b is only implemented for integral Newton points, got {}",
                encoding::qvector_to_string(&c.nu)
            ))
        })
    }
}
