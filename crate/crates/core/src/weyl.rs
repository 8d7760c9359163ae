//! The finite Weyl group `W₀` acting on `X_*` by integer matrices.
//!
//! Simple reflections of `W₀` are indexed `0..rank` here; the affine layer
//! shifts them to `1..=rank` so that index 0 is the affine node.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::Signed;

use crate::linalg::{rank, IntMatrix};
use crate::rootdata::RootDatum;
use crate::{Coweight, Int, QVector, Rational};

/// Element of `W₀`, stored as its matrix on `X_*` (row-major).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    n: usize,
    m: Vec<Int>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        Self { n, m }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.m[i * self.n + j] == Int::from(i == j)))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Int {
        self.m[i * self.n + j]
    }

    pub fn act(&self, v: &[Int]) -> Coweight {
        (0..self.n).map(|i| (0..self.n).map(|j| self.m[i * self.n + j] * v[j]).sum()).collect()
    }

    pub fn act_q(&self, v: &[Rational]) -> QVector {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(Rational::from_integer(0), |acc, j| {
                    acc + v[j] * Rational::from_integer(self.m[i * self.n + j])
                })
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n;
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.m[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        m[i * n + j] += a * other.m[k * n + j];
                    }
                }
            }
        }
        Self { n, m }
    }

    pub fn matrix(&self) -> IntMatrix<Int> {
        let rows: Vec<Vec<Int>> = self.m.chunks(self.n.max(1)).map(<[Int]>::to_vec).collect();
        if self.n == 0 {
            return IntMatrix::zeros(0, 0);
        }
        IntMatrix::from_rows(&rows)
    }
}

impl RootDatum {
    pub fn weyl_identity(&self) -> WeylElement {
        WeylElement::identity(self.dim())
    }

    /// Reflection `λ ↦ λ − ⟨λ, β⟩β∨` in the positive root `root`.
    pub fn reflection(&self, root: usize) -> WeylElement {
        let n = self.dim();
        let (a, c) = (self.root(root), self.coroot(root));
        let mut m = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = Int::from(i == j) - c[i] * a[j];
            }
        }
        WeylElement { n, m }
    }

    pub fn simple_weyl(&self, i: usize) -> WeylElement {
        self.reflection(i)
    }

    /// Product `s_{i_1} ⋯ s_{i_k}` of finite simple reflections.
    pub fn weyl_from_word(&self, word: &[usize]) -> WeylElement {
        word.iter().fold(self.weyl_identity(), |acc, &i| acc.compose(&self.simple_weyl(i)))
    }

    /// `true` iff `u⁻¹α < 0` for the positive root `root`.
    pub fn inverts(&self, u: &WeylElement, root: usize) -> bool {
        self.pair(&u.act(self.two_rho_check()), self.root(root)) < 0
    }

    pub fn weyl_length(&self, u: &WeylElement) -> usize {
        let v = u.act(self.two_rho_check());
        self.positive_roots().iter().filter(|a| self.pair(&v, a) < 0).count()
    }

    /// Smallest `i` with `ℓ(s_i u) < ℓ(u)`.
    pub fn first_left_descent(&self, u: &WeylElement) -> Option<usize> {
        let v = u.act(self.two_rho_check());
        (0..self.rank()).find(|&i| self.pair(&v, self.root(i)) < 0)
    }

    /// Reduced word built from smallest left descents: `u = s_{i_1} s_{i_2} ⋯`.
    pub fn reduced_word(&self, u: &WeylElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = u.clone();
        while let Some(i) = self.first_left_descent(&cur) {
            word.push(i);
            cur = self.simple_weyl(i).compose(&cur);
        }
        word
    }

    pub fn weyl_inverse(&self, u: &WeylElement) -> WeylElement {
        let mut word = self.reduced_word(u);
        word.reverse();
        self.weyl_from_word(&word)
    }

    pub fn weyl_order(&self, u: &WeylElement) -> usize {
        let mut p = u.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(u);
            k += 1;
        }
        k
    }

    /// Dimension of the fixed space of `u` on `X_* ⊗ Q`.
    pub fn fixed_dim(&self, u: &WeylElement) -> usize {
        let n = self.dim();
        let mut d = u.matrix();
        for i in 0..n {
            d[(i, i)] -= 1;
        }
        n - rank(&d)
    }

    /// Set of simple reflections occurring in any reduced word of `u`.
    pub fn support(&self, u: &WeylElement) -> BTreeSet<usize> {
        self.reduced_word(u).into_iter().collect()
    }

    pub fn longest_element(&self) -> WeylElement {
        let neg: QVector = crate::to_rational(self.two_rho_check()).into_iter().map(|x| -x).collect();
        self.dominant_rep(&neg).1
    }

    /// Unique dominant `v⁺` in the `W₀`-orbit of `v`, with `x` such that `x(v) = v⁺`.
    pub fn dominant_rep(&self, v: &[Rational]) -> (QVector, WeylElement) {
        let mut cur = v.to_vec();
        let mut x = self.weyl_identity();
        while let Some(i) = (0..self.rank()).find(|&i| self.pair_q(&cur, self.root(i)).is_negative()) {
            cur = self.reflect_q(i, &cur);
            x = self.simple_weyl(i).compose(&x);
        }
        (cur, x)
    }

    pub fn dominant_rep_int(&self, v: &[Int]) -> (Coweight, WeylElement) {
        let mut cur = v.to_vec();
        let mut x = self.weyl_identity();
        while let Some(i) = (0..self.rank()).find(|&i| self.pair(&cur, self.root(i)) < 0) {
            cur = self.reflect(i, &cur);
            x = self.simple_weyl(i).compose(&x);
        }
        (cur, x)
    }

    /// Subgroup generated by the given finite simple reflections, in BFS order.
    pub fn parabolic_subgroup(&self, gens: &[usize]) -> Vec<WeylElement> {
        let id = self.weyl_identity();
        let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        let gens: Vec<WeylElement> = gens.iter().map(|&i| self.simple_weyl(i)).collect();
        while let Some(u) = queue.pop_front() {
            for s in &gens {
                let v = s.compose(&u);
                if seen.insert(v.clone()) {
                    out.push(v.clone());
                    queue.push_back(v);
                }
            }
        }
        out
    }

    /// All of `W₀`, sorted by length and then by reduced word.
    pub fn weyl_elements(&self) -> Vec<WeylElement> {
        let all: Vec<usize> = (0..self.rank()).collect();
        let mut elems = self.parabolic_subgroup(&all);
        elems.sort_by_cached_key(|u| {
            let w = self.reduced_word(u);
            (w.len(), w)
        });
        elems
    }

    /// Stabilizer of a dominant rational coweight.
    pub fn dominant_stabilizer(&self, v: &[Rational]) -> Vec<WeylElement> {
        let zero: Vec<usize> = (0..self.rank()).filter(|&i| self.pair_q(v, self.root(i)) == 0.into()).collect();
        self.parabolic_subgroup(&zero)
    }
}
