//! Identifications between members of a family by torus actions on the
//! parameters, and the resulting count of moduli.

use std::collections::BTreeMap;

use crate::cover::{Frame, SurfaceFamily};
use crate::error::{Error, Result};
use crate::linalg::integer_rank;
use crate::poly::vars::{ALPHA, LAMBDA, PARAM_A, PARAM_B, PARAM_C, PARAM_D};
use crate::poly::{laurent_monomial, poly_substitute, Assignment, MPoly, RatFunc, Var};

/// A one-dimensional torus `t` acting by `P ↦ t^{wₚ}·P` on the parameters,
/// together with a change of base coordinates identifying the members.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterAction {
    pub name: String,
    /// The formal torus coordinate (α or λ).
    pub torus: Var,
    /// Weight of each parameter; parameters not listed have weight 0.
    pub weights: BTreeMap<Var, i32>,
    /// Images `(y', z')` of the base coordinates; `None` is the identity.
    pub geometric: Option<(RatFunc, RatFunc)>,
}

impl ParameterAction {
    /// All parameters scaled by a common factor λ; the base is untouched
    /// and the cover coordinate absorbs a square root of the factor.
    pub fn homothety(fam: &SurfaceFamily) -> Self {
        Self {
            name: "homothety".into(),
            torus: LAMBDA,
            weights: fam.parameters().iter().map(|&p| (p, 1)).collect(),
            geometric: None,
        }
    }

    /// `(y, z) ↦ (αy, αz)` with `(A, B, C, D) ↦ (α⁶A, α⁴B, α⁴C, α²D)`.
    pub fn alpha_scaling() -> Self {
        Self::scaling_with_weights([(PARAM_A, 6), (PARAM_B, 4), (PARAM_C, 4), (PARAM_D, 2)])
    }

    /// `(y, z) ↦ (αy, αz)` with arbitrary parameter weights.
    pub fn scaling_with_weights(weights: impl IntoIterator<Item = (Var, i32)>) -> Self {
        let a = RatFunc::var(ALPHA);
        let frame = Frame::ENRIQUES;
        Self {
            name: "alpha-scaling".into(),
            torus: ALPHA,
            weights: weights.into_iter().collect(),
            geometric: Some((&a * &RatFunc::var(frame.y), &a * &RatFunc::var(frame.z))),
        }
    }

    pub fn weight(&self, p: Var) -> i32 {
        self.weights.get(&p).copied().unwrap_or(0)
    }
}

/// Outcome of [`check_parameter_action`].
#[derive(Clone, Debug, PartialEq)]
pub struct ActionCheck {
    pub holds: bool,
    /// Exponent k with `z'·f(y', z'; P) = c·t^k · z·f(y, z; ρ(P))`; the cover
    /// coordinate must be rescaled by a square root of `c·t^k`.
    pub cover_scale_exponent: Option<i32>,
    pub cover_scale: Option<RatFunc>,
    /// Numerator of `z'·f(y', z'; P) − λ₀·z·f(y, z; ρ(P))` with λ₀ read off
    /// the leading terms; zero exactly when the identity holds.
    pub witness: MPoly,
}

fn as_torus_monomial(r: &RatFunc, torus: Var) -> Option<i32> {
    let (nm, _) = r.num().as_term()?;
    let (dm, _) = r.den().as_term()?;
    let vars_ok = nm.pairs().iter().chain(dm.pairs()).all(|(v, _)| *v == torus);
    vars_ok.then(|| nm.exp(torus) as i32 - dm.exp(torus) as i32)
}

/// Verifies that the action identifies the member with parameters `P` and
/// the member with parameters `ρ(P)` as double covers, identically in the
/// coordinates, the parameters and the torus variable.
pub fn check_parameter_action(fam: &SurfaceFamily, act: &ParameterAction) -> Result<ActionCheck> {
    let frame = fam.frame();
    let rel = fam.relation();
    let geo = match &act.geometric {
        Some((y, z)) => Assignment::new().set(frame.y, y.clone()).set(frame.z, z.clone()),
        None => Assignment::new(),
    };
    let lhs = poly_substitute(&rel.rhs, &geo)?;
    let mut rho = Assignment::new();
    for &p in fam.parameters() {
        rho.insert(p, &laurent_monomial(&[(act.torus, act.weight(p))]) * &RatFunc::var(p));
    }
    let rhs = poly_substitute(&rel.rhs, &rho)?;
    if rhs.is_zero() || lhs.is_zero() {
        let holds = lhs.is_zero() && rhs.is_zero();
        let witness = &lhs.num().clone() - rhs.num();
        return Ok(ActionCheck {
            holds,
            cover_scale_exponent: None,
            cover_scale: None,
            witness,
        });
    }
    let ratio = lhs.try_div(&rhs)?;
    let exponent = as_torus_monomial(&ratio, act.torus);
    let (ln, ld) = (
        lhs.num().leading_term().expect("nonzero"),
        lhs.den().leading_term().expect("nonzero"),
    );
    let (rn, rd) = (
        rhs.num().leading_term().expect("nonzero"),
        rhs.den().leading_term().expect("nonzero"),
    );
    let guess = RatFunc::new(
        MPoly::term(ln.1 * rd.1, ln.0 * rd.0),
        MPoly::term(ld.1 * rn.1, ld.0 * rn.0),
    )?;
    let diff = &lhs - &(&guess * &rhs);
    Ok(ActionCheck {
        holds: exponent.is_some(),
        cover_scale_exponent: exponent,
        cover_scale: exponent.map(|_| ratio),
        witness: diff.num().clone(),
    })
}

/// Parameter count minus the rank of the actions' integer weight matrix.
pub fn moduli_number(fam: &SurfaceFamily, actions: &[ParameterAction]) -> Result<usize> {
    for act in actions {
        if !check_parameter_action(fam, act)?.holds {
            return Err(Error::Invariant(format!(
                "action `{}` does not identify members of `{}`",
                act.name,
                fam.name()
            )));
        }
    }
    let rows: Vec<Vec<i64>> = actions
        .iter()
        .map(|a| fam.parameters().iter().map(|&p| a.weight(p) as i64).collect())
        .collect();
    Ok(fam.parameters().len() - integer_rank(&rows))
}

/// The identifications used for the built-in families.
pub fn builtin_actions(fam: &SurfaceFamily, k: usize) -> Vec<ParameterAction> {
    let mut out = vec![ParameterAction::homothety(fam)];
    if k == 3 {
        out.push(ParameterAction::alpha_scaling());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::family;
    use crate::poly::vars::{PARAM_E, PARAM_F};

    #[test]
    fn alpha_scaling_on_family_three() {
        let chk = check_parameter_action(&family(3).unwrap(), &ParameterAction::alpha_scaling()).unwrap();
        assert!(chk.holds);
        assert!(chk.witness.is_zero());
        // z' = αz contributes one power of α.
        assert_eq!(chk.cover_scale_exponent, Some(1));
    }

    #[test]
    fn homothety_on_every_family() {
        for k in 1..=3 {
            let fam = family(k).unwrap();
            let chk = check_parameter_action(&fam, &ParameterAction::homothety(&fam)).unwrap();
            assert!(chk.holds, "family {k}");
            assert_eq!(chk.cover_scale_exponent, Some(-1));
        }
    }

    #[test]
    fn wrong_weights_fail() {
        let chk = check_parameter_action(&family(1).unwrap(), &ParameterAction::alpha_scaling()).unwrap();
        assert!(!chk.holds);
        assert!(!chk.witness.is_zero());
        let off_by_one =
            ParameterAction::scaling_with_weights([(PARAM_A, 6), (PARAM_B, 4), (PARAM_C, 4), (PARAM_D, 3)]);
        assert!(!check_parameter_action(&family(3).unwrap(), &off_by_one).unwrap().holds);
    }

    #[test]
    fn moduli_numbers() {
        let counts: Vec<usize> = (1..=3)
            .map(|k| {
                let fam = family(k).unwrap();
                moduli_number(&fam, &builtin_actions(&fam, k)).unwrap()
            })
            .collect();
        assert_eq!(counts, [5, 2, 2]);
    }

    #[test]
    fn rank_ignores_action_order() {
        let fam = family(3).unwrap();
        let mut acts = builtin_actions(&fam, 3);
        acts.reverse();
        assert_eq!(moduli_number(&fam, &acts).unwrap(), 2);
    }

    #[test]
    fn failing_action_is_rejected() {
        let fam = family(1).unwrap();
        let bad = ParameterAction::scaling_with_weights([(PARAM_E, 1), (PARAM_F, 1)]);
        assert!(moduli_number(&fam, &[bad]).is_err());
    }
}
