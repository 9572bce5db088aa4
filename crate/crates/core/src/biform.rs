//! Eigenvalues of automorphisms on the bi-canonical form `z·(dy∧dz/w)^⊗2`
//! of a Horikawa model and on the 2-form `dY∧dZ/W` of its K3 cover.

use serde::Serialize;

use crate::cover::{CoverElement, FamilyKind, Frame, SurfaceFamily};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::maps::{check_equation_invariance, BirMap};
use crate::poly::{jacobian_det2, MPoly, RatFunc, VarTable};

/// Constant ratio `φ*ω / ω` for a form ω.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormRatio {
    pub value: FieldElem,
    /// All dependence on coordinates and parameters cancelled identically.
    pub constancy_certificate: bool,
}

fn require_invariant(fam: &SurfaceFamily, phi: &BirMap) -> Result<()> {
    if !check_equation_invariance(fam, phi)?.invariant {
        return Err(Error::Invariant(format!(
            "map {} does not preserve `{}`",
            phi.label().unwrap_or("(unnamed)"),
            fam.name()
        )));
    }
    Ok(())
}

/// `w / φ*w` reduced in the cover ring; must not involve the cover coordinate.
fn cover_quotient_power(fam: &SurfaceFamily, phi: &BirMap, power: u32) -> Result<RatFunc> {
    let rel = fam.relation();
    let q = CoverElement::cover_var().mul(&phi.cover_image().inv(&rel)?, &rel);
    let mut acc = CoverElement::from_base(RatFunc::one());
    for _ in 0..power {
        acc = acc.mul(&q, &rel);
    }
    if !acc.b.is_zero() {
        return Err(Error::NotConstant(format!(
            "(w/φ*w)^{power} still involves the cover coordinate"
        )));
    }
    Ok(acc.a)
}

fn constant_ratio(r: RatFunc) -> Result<FormRatio> {
    match r.as_constant() {
        Some(value) if r.is_polynomial() && r.num().total_degree() == 0 => Ok(FormRatio {
            value,
            constancy_certificate: true,
        }),
        _ => Err(Error::NotConstant(format!(
            "pullback ratio {} depends on the coordinates or parameters",
            r.display(&VarTable::standard())
        ))),
    }
}

/// `(φ*z/z) · J(φ_y, φ_z)² · (w/φ*w)²`: the scalar by which `φ` acts on the
/// bi-canonical form of a Horikawa model.
pub fn bitwoform_pullback_ratio(fam: &SurfaceFamily, phi: &BirMap) -> Result<FormRatio> {
    if fam.kind() != FamilyKind::EnriquesHorikawa {
        return Err(Error::Invariant(format!("`{}` is not a Horikawa model", fam.name())));
    }
    require_invariant(fam, phi)?;
    let f = Frame::ENRIQUES;
    let jac = jacobian_det2(phi.y_image(), phi.z_image(), (f.y, f.z));
    let z_ratio = phi.z_image().try_div(&RatFunc::var(f.z))?;
    let r = &(&z_ratio * &(&jac * &jac)) * &cover_quotient_power(fam, phi, 2)?;
    constant_ratio(r)
}

/// `J(φ_Y, φ_Z) · (W/φ*W)`: the scalar by which `φ` acts on the
/// holomorphic 2-form of the K3 cover `W² = g`.
pub fn k3_twoform_ratio(g: &MPoly, phi: &BirMap) -> Result<FormRatio> {
    let f = Frame::K3;
    let params: Vec<_> = g.variables().into_iter().filter(|v| *v != f.y && *v != f.z).collect();
    let fam = SurfaceFamily::new("K3 cover", FamilyKind::K3Cover, g.clone(), params)?;
    require_invariant(&fam, phi)?;
    let jac = jacobian_det2(phi.y_image(), phi.z_image(), (f.y, f.z));
    constant_ratio(&jac * &cover_quotient_power(&fam, phi, 1)?)
}

/// The index `I` of an automorphism: the order of its eigenvalue.
pub fn index_of(r: &FormRatio) -> Result<u32> {
    if !r.constancy_certificate {
        return Err(Error::NotConstant("ratio has no constancy certificate".into()));
    }
    r.value
        .root_of_unity_order()
        .ok_or_else(|| Error::NotRootOfUnity(r.value.to_expr()))
}
