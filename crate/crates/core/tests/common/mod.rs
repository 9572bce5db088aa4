//! Strategies shared by the property suites.
#![allow(dead_code)]

use bicanon_core::field::rat;
use bicanon_core::poly::vars::{PARAM_A, Y_LOWER, Z_LOWER};
use bicanon_core::qaut::{Mobius, QAut};
use bicanon_core::{FieldElem, MPoly, Monomial, RatFunc, Var};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = bicanon_core::Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn field_elem() -> impl Strategy<Value = FieldElem> {
    [rational(), rational(), rational(), rational()].prop_map(FieldElem::new)
}

pub fn nonzero_field_elem() -> impl Strategy<Value = FieldElem> {
    field_elem().prop_filter("nonzero", |x| !x.is_zero())
}

fn monomial(vars: &'static [Var], max_exp: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, vars.len())
        .prop_map(move |es| Monomial::from_pairs(vars.iter().copied().zip(es)))
}

/// Sparse polynomial with up to `terms` terms in `vars`.
pub fn poly_in(vars: &'static [Var], max_exp: u32, terms: usize) -> impl Strategy<Value = MPoly> {
    proptest::collection::vec((monomial(vars, max_exp), field_elem()), 0..=terms).prop_map(MPoly::from_terms)
}

pub const BASE: &[Var] = &[Y_LOWER, Z_LOWER];
pub const BASE_AND_PARAM: &[Var] = &[Y_LOWER, Z_LOWER, PARAM_A];

pub fn poly() -> impl Strategy<Value = MPoly> {
    poly_in(BASE_AND_PARAM, 3, 4)
}

pub fn nonzero_poly() -> impl Strategy<Value = MPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Small polynomial substituted into by the homomorphism suite.
pub fn small_poly() -> impl Strategy<Value = MPoly> {
    poly_in(BASE_AND_PARAM, 2, 3)
}

/// Quotient of two small polynomials in `(y, z)`; denominators are kept
/// linear so that substituted expressions stay small.
pub fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (
        poly_in(BASE, 2, 2),
        poly_in(BASE, 1, 2).prop_filter("nonzero", |p| !p.is_zero()),
    )
        .prop_map(|(n, d)| RatFunc::new(n, d).expect("nonzero denominator"))
}

/// A map `y ↦ a·y + b·z^k`, `z ↦ c·z + d·y^m` with generic coefficients.
pub fn polynomial_map() -> impl Strategy<Value = (RatFunc, RatFunc)> {
    (
        nonzero_field_elem(),
        field_elem(),
        0u32..=2,
        nonzero_field_elem(),
        field_elem(),
        0u32..=2,
    )
        .prop_map(|(a, b, k, c, d, m)| {
            let y = MPoly::var(Y_LOWER);
            let z = MPoly::var(Z_LOWER);
            let f1 = &y.scale(&a) + &z.pow(k).scale(&b);
            let f2 = &z.scale(&c) + &y.pow(m).scale(&d);
            (RatFunc::from_poly(f1), RatFunc::from_poly(f2))
        })
}

fn int_unit() -> impl Strategy<Value = Mobius> {
    // Integer matrices with determinant ±1, ±2 and small entries.
    [-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2]
        .prop_filter("invertible", |[a, b, c, d]| a * d - b * c != 0)
        .prop_map(|[a, b, c, d]| {
            Mobius::new(
                FieldElem::from_int(a),
                FieldElem::from_int(b),
                FieldElem::from_int(c),
                FieldElem::from_int(d),
            )
            .expect("invertible")
        })
}

fn mobius_inverse(m: &Mobius) -> Mobius {
    let [a, b, c, d] = m.entries().clone();
    Mobius::new(d, -b, -c, a).expect("invertible")
}

/// `Y ↦ ζᵏY` or `Y ↦ ζᵏ/Y`, nontrivial.
fn monomial_mobius() -> impl Strategy<Value = Mobius> {
    (0i64..8, any::<bool>())
        .prop_filter("nontrivial", |(k, inv)| *inv || *k != 0)
        .prop_map(|(k, inv)| {
            let a = FieldElem::zeta_pow(k);
            if inv { Mobius::inversion(a) } else { Mobius::scaling(a) }.expect("unit")
        })
}

/// Finite-order automorphisms of P¹×P¹ with isolated fixed points,
/// conjugated by small integer Möbius transformations.
pub fn finite_qaut() -> impl Strategy<Value = QAut> {
    (
        monomial_mobius(),
        monomial_mobius(),
        any::<bool>(),
        int_unit(),
        int_unit(),
    )
        .prop_map(|(m1, m2, swap, g1, g2)| {
            if swap { QAut::swap(m1, m2) } else { QAut::direct(m1, m2) }.conjugated(&g1, &g2)
        })
        .prop_filter("isolated fixed points", |g| match g.shape {
            bicanon_core::qaut::Shape::Direct => true,
            bicanon_core::qaut::Shape::Swap => !g.m1.compose(&g.m2).is_identity(),
        })
}

trait Conjugate {
    fn conjugated(self, g1: &Mobius, g2: &Mobius) -> QAut;
}

impl Conjugate for QAut {
    /// `h ∘ self ∘ h⁻¹` with `h = (g₁, g₂)`.
    fn conjugated(self, g1: &Mobius, g2: &Mobius) -> QAut {
        let h = QAut::direct(g1.clone(), g2.clone());
        let h_inv = QAut::direct(mobius_inverse(g1), mobius_inverse(g2));
        h.compose(&self).compose(&h_inv)
    }
}
