//! Oracles shared by the integration tests.
#![allow(dead_code)]

use iwahori::{AffineElement, Int, Rational, RootDatum};

/// Number of affine root hyperplanes separating the base alcove from its
/// image under `w`, with `t^λ u` acting by `x ↦ u x + λ`.
///
/// The base point `2ρ∨ / (2⟨ρ∨, θ⟩ + 1)` pairs into `(0, 1)` with every
/// positive root, so the count is `Σ_{α>0} |⌊⟨w p, α⟩⌋|`.
pub fn alcove_length(d: &RootDatum, w: &AffineElement) -> usize {
    let Some(theta) = d.highest_root() else {
        return 0;
    };
    let scale = d.pair(d.two_rho_check(), d.root(theta)) + 1;
    let p: Vec<Rational> = d.two_rho_check().iter().map(|&x| Rational::new(x, scale)).collect();
    let image: Vec<Rational> =
        w.u.act_q(&p).iter().zip(&w.t).map(|(a, &b)| a + Rational::from_integer(b)).collect();
    d.positive_roots()
        .iter()
        .map(|a| d.pair_q(&image, a).floor().to_integer().unsigned_abs() as usize)
        .sum()
}

/// Every `(λ, u)` with `λ` in `[-r, r]^n`.
pub fn lattice_box(d: &RootDatum, r: Int) -> Vec<AffineElement> {
    let mut points: Vec<Vec<Int>> = vec![vec![]];
    for _ in 0..d.dim() {
        points = points
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let weyl = d.weyl_elements();
    points.iter().flat_map(|t| weyl.iter().map(move |u| AffineElement::new(t.clone(), u.clone()))).collect()
}
