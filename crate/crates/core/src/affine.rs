//! Arithmetic of `W̃ = X_* ⋊ W₀`: products, Iwahori–Matsumoto length,
//! simple reflections, length-zero elements and the `x t^μ y` normal form.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, solve_integral, IntMatrix};
use crate::rootdata::RootDatum;
use crate::weyl::WeylElement;
use crate::{to_rational, Coweight, Int};

/// `t^λ u`, stored as `(λ, u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    pub t: Coweight,
    pub u: WeylElement,
}

impl AffineElement {
    pub fn new(t: Coweight, u: WeylElement) -> Self {
        Self { t, u }
    }

    pub fn is_translation(&self) -> bool {
        self.u.is_identity()
    }
}

/// `w = x t^μ y` with `μ` dominant and `t^μ y` minimal in `W₀ t^μ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XMuYDecomposition {
    pub x: WeylElement,
    pub mu: Coweight,
    pub y: WeylElement,
    pub eta: WeylElement,
}

impl RootDatum {
    pub fn identity(&self) -> AffineElement {
        AffineElement::new(vec![0; self.dim()], self.weyl_identity())
    }

    pub fn translation(&self, lambda: &[Int]) -> AffineElement {
        AffineElement::new(lambda.to_vec(), self.weyl_identity())
    }

    pub fn finite(&self, u: &WeylElement) -> AffineElement {
        AffineElement::new(vec![0; self.dim()], u.clone())
    }

    /// `(λ, u)(μ, v) = (λ + uμ, uv)`.
    pub fn mul(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        let um = a.u.act(&b.t);
        AffineElement::new(a.t.iter().zip(&um).map(|(x, y)| x + y).collect(), a.u.compose(&b.u))
    }

    /// Product with a dimension check, for elements of unknown origin.
    pub fn checked_mul(&self, a: &AffineElement, b: &AffineElement) -> Result<AffineElement> {
        for e in [a, b] {
            if e.t.len() != self.dim() || e.u.dim() != self.dim() {
                return Err(Error::Config(format!(
                    "element does not belong to the {} {} datum",
                    self.label(),
                    self.isogeny().short_name()
                )));
            }
        }
        Ok(self.mul(a, b))
    }

    pub fn product(&self, elems: &[AffineElement]) -> AffineElement {
        elems.iter().fold(self.identity(), |acc, e| self.mul(&acc, e))
    }

    /// `(λ, u)⁻¹ = (−u⁻¹λ, u⁻¹)`.
    pub fn inverse(&self, w: &AffineElement) -> AffineElement {
        let ui = self.weyl_inverse(&w.u);
        let t = ui.act(&w.t).into_iter().map(|x| -x).collect();
        AffineElement::new(t, ui)
    }

    pub fn power(&self, w: &AffineElement, k: usize) -> AffineElement {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, w))
    }

    /// `s w s`.
    pub fn conjugate_by_simple(&self, w: &AffineElement, s: usize) -> AffineElement {
        let s = &self.affine_simple()[s];
        self.mul(&self.mul(s, w), s)
    }

    /// Iwahori–Matsumoto length
    /// `Σ_{α>0, u⁻¹α>0} |⟨λ,α⟩| + Σ_{α>0, u⁻¹α<0} |⟨λ,α⟩ − 1|`.
    pub fn length(&self, w: &AffineElement) -> usize {
        let v = w.u.act(self.two_rho_check());
        let mut total: Int = 0;
        for a in self.positive_roots() {
            let p = self.pair(&w.t, a);
            total += if self.pair(&v, a) > 0 { p.abs() } else { (p - 1).abs() };
        }
        total as usize
    }

    /// Element of `W̃` given by a word in the simple reflections (0 = affine).
    pub fn from_word(&self, word: &[usize]) -> Result<AffineElement> {
        let s = self.affine_simple();
        word.iter().try_fold(self.identity(), |acc, &i| {
            let si = s.get(i).ok_or_else(|| {
                Error::Config(format!("simple reflection index {i} out of range (have {})", s.len()))
            })?;
            Ok(self.mul(&acc, si))
        })
    }

    /// `w = s_{i_1} ⋯ s_{i_k} τ` with `ℓ(τ) = 0`, from smallest left descents.
    pub fn affine_word(&self, w: &AffineElement) -> (Vec<usize>, AffineElement) {
        let mut word = Vec::new();
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        while len > 0 {
            let (i, next) = self
                .affine_simple()
                .iter()
                .enumerate()
                .map(|(i, s)| (i, self.mul(s, &cur)))
                .find(|(_, x)| self.length(x) < len)
                .expect("an element of positive length has a left descent");
            word.push(i);
            cur = next;
            len -= 1;
        }
        (word, cur)
    }

    /// Length-zero elements with translation part in `[-bound, bound]^n`.
    ///
    /// Fails when `π₁` is finite and some class has no representative in
    /// the box.
    pub fn omega_elements(&self, bound: Int) -> Result<Vec<AffineElement>> {
        let n = self.dim();
        let r = self.rank();
        let simple_rows: Vec<Vec<Int>> = (0..r).map(|i| self.root(i).to_vec()).collect();
        let m = if r == 0 { IntMatrix::zeros(0, n) } else { IntMatrix::from_rows(&simple_rows) };
        let snf = smith_normal_form(&m);
        let kernel: Vec<Coweight> =
            (snf.rank()..n).map(|j| (0..n).map(|i| snf.v[(i, j)]).collect()).collect();

        let mut out = Vec::new();
        for u in self.weyl_elements() {
            // ℓ(t^λ u) = 0 forces ⟨λ, α_i⟩ = [u⁻¹α_i < 0] on simple roots.
            let target: Vec<Int> = (0..r).map(|i| Int::from(self.inverts(&u, i))).collect();
            let Some(base) = solve_integral(&m, &target) else {
                continue;
            };
            for coeffs in box_points(kernel.len(), bound) {
                let mut lambda = base.clone();
                for (c, k) in coeffs.iter().zip(&kernel) {
                    lambda.iter_mut().zip(k).for_each(|(l, x)| *l += c * x);
                }
                if lambda.iter().any(|x| x.abs() > bound) {
                    continue;
                }
                let w = AffineElement::new(lambda, u.clone());
                if self.length(&w) == 0 {
                    out.push(w);
                }
            }
        }
        out.sort_by(|a, b| (self.pi1_class(&a.t), &a.t).cmp(&(self.pi1_class(&b.t), &b.t)));
        out.dedup();
        if let Some(classes) = self.pi1().elements() {
            let found: std::collections::BTreeSet<Vec<Int>> = out.iter().map(|w| self.pi1_class(&w.t)).collect();
            if found.len() != classes.len() {
                return Err(Error::Budget(format!(
                    "translation box of radius {bound} realizes {} of {} fundamental-group classes",
                    found.len(),
                    classes.len()
                )));
            }
        }
        Ok(out)
    }

    /// The length-zero element in the coset `W_af t^λ` for `λ` of class `kappa`.
    pub fn omega_of_class(&self, kappa: &[Int]) -> Result<AffineElement> {
        let kappa = self.pi1().normalize(kappa)?;
        let t = self.translation(&self.pi1().lift(&kappa));
        Ok(self.affine_word(&t).1)
    }

    /// `w = x t^μ y` with `μ` dominant and `t^μ y ∈ ^S W̃`; `η = yx`.
    pub fn decompose_xmuy(&self, w: &AffineElement) -> Result<XMuYDecomposition> {
        let (mu, x1) = self.dominant_rep_int(&w.t);
        let x0 = self.weyl_inverse(&x1);
        let stab = self.dominant_stabilizer(&to_rational(&mu));
        let mut best: Option<(usize, WeylElement, WeylElement)> = None;
        for z in stab {
            let x = x0.compose(&z);
            let y = self.weyl_inverse(&x).compose(&w.u);
            let len = self.length(&AffineElement::new(mu.clone(), y.clone()));
            if best.as_ref().is_none_or(|(l, ..)| len < *l) {
                best = Some((len, x, y));
            }
        }
        let (len, x, y) = best.expect("stabilizer contains the identity");
        let ty = AffineElement::new(mu.clone(), y.clone());
        for i in 0..self.rank() {
            let s = self.finite(&self.simple_weyl(i));
            if self.length(&self.mul(&s, &ty)) < len {
                return Err(Error::Certification(format!(
                    "t^μ y is not minimal in its W₀-coset for {}",
                    crate::encoding::element_to_string(self, w)
                )));
            }
        }
        let eta = y.compose(&x);
        Ok(XMuYDecomposition { x, mu, y, eta })
    }
}

/// Affine simple reflections: `t^{θ∨}s_θ` first, then `s_1, …, s_r`.
pub(crate) fn build_simple_reflections(d: &RootDatum) -> Vec<AffineElement> {
    let Some(theta) = d.highest_root() else {
        return Vec::new();
    };
    let mut out = vec![AffineElement::new(d.coroot(theta).to_vec(), d.reflection(theta))];
    out.extend((0..d.rank()).map(|i| d.finite(&d.simple_weyl(i))));
    out
}

impl RootDatum {
    pub(crate) fn certify_affine(&self) -> Result<()> {
        for (i, s) in self.affine_simple().iter().enumerate() {
            if self.length(s) != 1 || !self.mul(s, s).u.is_identity() || self.mul(s, s).t.iter().any(|&x| x != 0) {
                return Err(Error::Certification(format!("simple reflection {i} is not an involution of length 1")));
            }
        }
        Ok(())
    }
}

fn box_points(k: usize, bound: Int) -> Vec<Vec<Int>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Int>| {
                (-bound..=bound).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// Display helper pairing an element with its datum.
pub struct Display<'a>(pub &'a RootDatum, pub &'a AffineElement);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::encoding::element_to_string(self.0, self.1))
    }
}
