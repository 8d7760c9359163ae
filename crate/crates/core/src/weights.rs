//! Weight multiplicities of the dual group, with coweights of `G` read as
//! weights of `Ĝ` (so the roots of `Ĝ` are the coroots of `G`).
//!
//! Multiplicities come from Freudenthal's recursion
//! `m(λ) B(μ−λ, μ+λ+2ρ∨) = 2 Σ_{β∨>0} Σ_{k≥1} B(λ+kβ∨, β∨) m(λ+kβ∨)`
//! with the invariant form `B(x, y) = Σ_{α∈Φ} ⟨x,α⟩⟨y,α⟩`, over any
//! integer scalar.

use std::collections::{BTreeMap, HashSet};

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::classes::NewtonClass;
use crate::encoding::{class_to_json, count_to_json};
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::rootdata::RootDatum;
use crate::{to_rational, AffineElement, Coweight, Engine, Int};

/// Dominant weights of `V_μ` with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable<T> {
    pub mu: Coweight,
    pub dominant: BTreeMap<Coweight, T>,
}

fn form(d: &RootDatum, x: &[Int], y: &[Int]) -> Int {
    // Sum over Φ = Φ⁺ ∪ −Φ⁺.
    2 * d.positive_roots().iter().map(|a| d.pair(x, a) * d.pair(y, a)).sum::<Int>()
}

/// `μ − λ` lies in the coroot lattice.
fn in_coroot_lattice(d: &RootDatum, mu: &[Int], lambda: &[Int]) -> bool {
    let diff: Vec<Int> = mu.iter().zip(lambda).map(|(a, b)| a - b).collect();
    d.coroot_coordinates(&to_rational(&diff)).is_some_and(|v| v.iter().all(|x| x.is_integer()))
}

impl<T: Scalar> WeightTable<T> {
    pub fn new(d: &RootDatum, mu: &[Int]) -> Result<Self> {
        if mu.len() != d.dim() || !d.is_dominant(mu) {
            return Err(Error::Contract(format!("highest weight {mu:?} is not a dominant coweight")));
        }
        // Dominant λ = μ − Σ n_i α_i∨ is reachable one simple coroot at a
        // time through weights with ⟨·, 2ρ⟩ ≥ ⟨λ, 2ρ⟩ ≥ 0.
        let mut seen: HashSet<Coweight> = HashSet::new();
        let mut stack = vec![mu.to_vec()];
        let mut dominant = Vec::new();
        while let Some(l) = stack.pop() {
            if d.pair(&l, d.two_rho()) < 0 || !seen.insert(l.clone()) {
                continue;
            }
            if d.is_dominant(&l) {
                dominant.push(l.clone());
            }
            for i in 0..d.rank() {
                stack.push(l.iter().zip(d.coroot(i)).map(|(a, b)| a - b).collect());
            }
        }
        dominant.sort_by_key(|l| (std::cmp::Reverse(d.pair(l, d.two_rho())), l.clone()));

        let mut table = Self { mu: mu.to_vec(), dominant: BTreeMap::new() };
        let two_rho_check = d.two_rho_check();
        for l in dominant {
            if l == mu {
                table.dominant.insert(l, T::one());
                continue;
            }
            let mut num = T::zero();
            for b in 0..d.num_positive_roots() {
                let beta = d.coroot(b);
                let mut shifted = l.clone();
                loop {
                    shifted.iter_mut().zip(beta).for_each(|(x, y)| *x += y);
                    let m = table.lookup(d, &shifted);
                    if m.is_zero() {
                        break;
                    }
                    num = num + T::from(form(d, &shifted, beta)) * m;
                }
            }
            num = num * T::from(2);
            let diff: Coweight = mu.iter().zip(&l).map(|(a, b)| a - b).collect();
            let sum: Coweight = mu.iter().zip(&l).zip(two_rho_check).map(|((a, b), c)| a + b + c).collect();
            let den = T::from(form(d, &diff, &sum));
            if den.is_zero() || !(num.clone() % den.clone()).is_zero() {
                return Err(Error::Certification(format!(
                    "Freudenthal recursion is not integral at {l:?} for highest weight {mu:?}"
                )));
            }
            let m = num / den;
            if !m.is_zero() {
                table.dominant.insert(l, m);
            }
        }
        Ok(table)
    }

    fn lookup(&self, d: &RootDatum, lambda: &[Int]) -> T {
        let (rep, _) = d.dominant_rep_int(lambda);
        self.dominant.get(&rep).cloned().unwrap_or_else(T::zero)
    }

    /// `dim V_μ(λ)`; zero unless `λ ≤ μ`.
    pub fn multiplicity(&self, d: &RootDatum, lambda: &[Int]) -> T {
        if lambda.len() != self.mu.len() || !in_coroot_lattice(d, &self.mu, lambda) {
            return T::zero();
        }
        self.lookup(d, lambda)
    }

    /// `Σ m(λ) |W₀ λ|` over dominant λ.
    pub fn dimension(&self, d: &RootDatum) -> T {
        let order = d.weyl_elements().len();
        self.dominant.iter().fold(T::zero(), |acc, (l, m)| {
            let orbit = order / d.dominant_stabilizer(&to_rational(l)).len();
            acc + m.clone() * T::from(orbit as i64)
        })
    }
}

/// `dim V_μ` by the Weyl dimension formula for the dual group,
/// `Π_{β∨>0} ⟨μ + ρ∨, β⟩ / ⟨ρ∨, β⟩`.
pub fn weyl_dimension<T: Scalar>(d: &RootDatum, mu: &[Int]) -> T {
    let shifted: Coweight = mu.iter().zip(d.two_rho_check()).map(|(m, r)| 2 * m + r).collect();
    let q = d.positive_roots().iter().fold(Ratio::from_integer(T::one()), |acc, beta| {
        acc * Ratio::new(T::from(d.pair(&shifted, beta)), T::from(d.pair(d.two_rho_check(), beta)))
    });
    q.to_integer()
}

/// `dim V_μ(λ)` for the dual group; zero when `λ ≰ μ`.
pub fn weight_multiplicity<T: Scalar>(d: &RootDatum, mu: &[Int], lambda: &[Int]) -> Result<T> {
    Ok(WeightTable::<T>::new(d, mu)?.multiplicity(d, lambda))
}

/// Component count at `w₀t^μ` against the dual weight multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiCheck {
    pub mu: Coweight,
    pub class: NewtonClass,
    pub engine_count: u128,
    pub dual_mult: u128,
    pub equal: bool,
}

impl ChiCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "mu": self.mu,
            "class": class_to_json(&self.class),
            "engine_count": count_to_json(self.engine_count),
            "dual_mult": count_to_json(self.dual_mult),
            "equal": self.equal,
        })
    }
}

impl Engine {
    pub fn chi_check(&self, mu: &[Int], c: &NewtonClass) -> Result<ChiCheck> {
        let d = self.datum();
        let lambda = self.lambda_b(c)?;
        let table = WeightTable::<i128>::new(d, mu)?;
        let w0 = d.longest_element();
        let w = AffineElement::new(w0.act(mu), w0);
        let engine_count = self.count_adlv(&w, c)?;
        let dual_mult = u128::try_from(table.multiplicity(d, &lambda))
            .map_err(|_| Error::Certification("negative weight multiplicity".into()))?;
        Ok(ChiCheck { mu: mu.to_vec(), class: c.clone(), engine_count, dual_mult, equal: engine_count == dual_mult })
    }

    /// Integral classes `(κ(μ), λ)` for the dominant weights `λ` of `V_μ`.
    pub fn chi_classes(&self, mu: &[Int]) -> Result<Vec<NewtonClass>> {
        let d = self.datum();
        let table = WeightTable::<i128>::new(d, mu)?;
        Ok(table.dominant.keys().map(|l| NewtonClass::of_translation(d, l)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Isogeny;
    use num_bigint::BigInt;
    use std::collections::HashMap;

    fn datum(label: &str, iso: Isogeny) -> RootDatum {
        RootDatum::build(label, iso).unwrap()
    }

    /// Number of ways to write `v` (coroot coordinates) as a sum of positive coroots.
    fn partitions(cols: &[Vec<Int>], v: &[Int], from: usize, memo: &mut HashMap<(Vec<Int>, usize), i128>) -> i128 {
        if v.iter().all(|&x| x == 0) {
            return 1;
        }
        if from == cols.len() || v.iter().any(|&x| x < 0) {
            return 0;
        }
        if let Some(&n) = memo.get(&(v.to_vec(), from)) {
            return n;
        }
        let mut total = 0;
        let mut cur = v.to_vec();
        loop {
            total += partitions(cols, &cur, from + 1, memo);
            cur.iter_mut().zip(&cols[from]).for_each(|(a, b)| *a -= b);
            if cur.iter().any(|&x| x < 0) {
                break;
            }
        }
        memo.insert((v.to_vec(), from), total);
        total
    }

    /// Kostant's multiplicity formula.
    fn kostant(d: &RootDatum, mu: &[Int], lambda: &[Int]) -> i128 {
        let coords = |v: &[Int]| -> Option<Vec<Int>> {
            let q = d.coroot_coordinates(&to_rational(v))?;
            q.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
        };
        let cols: Vec<Vec<Int>> = (0..d.num_positive_roots()).map(|b| coords(d.coroot(b)).unwrap()).collect();
        let mut memo = HashMap::new();
        let mut total = 0;
        for w in d.weyl_elements() {
            let sign = if d.weyl_length(&w).is_multiple_of(2) { 1 } else { -1 };
            // w(μ + ρ∨) − (λ + ρ∨), doubled then halved to stay integral.
            let a = w.act(&mu.iter().zip(d.two_rho_check()).map(|(m, r)| 2 * m + r).collect::<Vec<_>>());
            let v: Vec<Int> =
                a.iter().zip(lambda).zip(d.two_rho_check()).map(|((x, l), r)| x - 2 * l - r).collect();
            if v.iter().any(|x| x % 2 != 0) {
                continue;
            }
            let half: Vec<Int> = v.iter().map(|x| x / 2).collect();
            if let Some(c) = coords(&half) {
                total += sign * partitions(&cols, &c, 0, &mut memo);
            }
        }
        total
    }

    #[test]
    fn rank_one() {
        let d = datum("A1", Isogeny::SimplyConnected);
        let t = WeightTable::<i64>::new(&d, &[2]).unwrap();
        for l in -2..=2 {
            assert_eq!(t.multiplicity(&d, &[l]), 1, "weight {l}");
        }
        assert_eq!(t.multiplicity(&d, &[3]), 0);
        assert_eq!(t.dimension(&d), 5);
    }

    #[test]
    fn adjoint_zero_weight() {
        let d = datum("A2", Isogeny::SimplyConnected);
        let theta = d.coroot(d.highest_root().unwrap()).to_vec();
        assert_eq!(weight_multiplicity::<i64>(&d, &theta, &[0, 0]).unwrap(), 2);
        assert_eq!(weight_multiplicity::<i64>(&d, &theta, &theta).unwrap(), 1);
        assert_eq!(weyl_dimension::<i64>(&d, &theta), 8);
    }

    #[test]
    fn matches_kostant_and_weyl() {
        for (label, iso) in [
            ("A1", Isogeny::SimplyConnected),
            ("A2", Isogeny::SimplyConnected),
            ("A2", Isogeny::Adjoint),
            ("C2", Isogeny::SimplyConnected),
            ("C2", Isogeny::Adjoint),
            ("G2", Isogeny::SimplyConnected),
            ("GL3", Isogeny::Gl),
        ] {
            let d = datum(label, iso);
            // Dominant μ with ⟨μ, 2ρ⟩ ≤ 12.
            let mut stack = vec![vec![0; d.dim()]];
            let mut seen = HashSet::new();
            while let Some(mu) = stack.pop() {
                let h = d.pair(&mu, d.two_rho());
                if h > 12 || !seen.insert(mu.clone()) {
                    continue;
                }
                for i in 0..d.dim() {
                    for s in [-1, 1] {
                        let mut next = mu.clone();
                        next[i] += s;
                        if d.is_dominant(&next) && d.pair(&next, d.two_rho()) > h {
                            stack.push(next);
                        }
                    }
                }
                if label == "GL3" && mu.iter().sum::<Int>() != 0 {
                    continue;
                }
                let t = WeightTable::<i64>::new(&d, &mu).unwrap();
                for (l, &m) in &t.dominant {
                    assert!(m > 0);
                    assert_eq!(m as i128, kostant(&d, &mu, l), "{label} μ={mu:?} λ={l:?}");
                }
                assert_eq!(t.dimension(&d), weyl_dimension::<i64>(&d, &mu), "{label} μ={mu:?}");
                assert_eq!(t.multiplicity(&d, &mu), 1);
            }
        }
    }

    #[test]
    fn big_integer_scalar() {
        let d = datum("G2", Isogeny::SimplyConnected);
        let mu = d.two_rho_check().clone();
        let small = WeightTable::<i64>::new(&d, &mu).unwrap();
        let big = WeightTable::<BigInt>::new(&d, &mu).unwrap();
        for (l, m) in &small.dominant {
            assert_eq!(BigInt::from(*m), big.dominant[l]);
        }
        assert_eq!(big.dimension(&d), weyl_dimension::<BigInt>(&d, &mu));
    }

    #[test]
    fn weyl_invariance() {
        let d = datum("C2", Isogeny::SimplyConnected);
        let mu = d.two_rho_check().clone();
        let t = WeightTable::<i64>::new(&d, &mu).unwrap();
        for l in t.dominant.keys() {
            for w in d.weyl_elements() {
                assert_eq!(t.multiplicity(&d, &w.act(l)), t.multiplicity(&d, l));
            }
        }
    }

    #[test]
    fn chi_examples() {
        let e = Engine::build("A1", Isogeny::SimplyConnected).unwrap();
        for nu in [[0], [1]] {
            let c = NewtonClass::of_translation(e.datum(), &nu);
            let chk = e.chi_check(&[2], &c).unwrap();
            assert_eq!((chk.engine_count, chk.dual_mult, chk.equal), (1, 1, true));
        }
        let e = Engine::build("A2", Isogeny::SimplyConnected).unwrap();
        let d = e.datum();
        let theta = d.coroot(d.highest_root().unwrap()).to_vec();
        let chk = e.chi_check(&theta, &NewtonClass::of_translation(d, &[0, 0])).unwrap();
        assert_eq!((chk.engine_count, chk.dual_mult, chk.equal), (2, 2, true));
    }
}
