//! Double covers `w² = z·f(y, z)` of P¹×P¹ (Horikawa models of Enriques
//! surfaces) and their K3 covers `W² = g(Y, Z)`.
//!
//! Parameters stay symbolic throughout, so every identity checked here holds
//! for all members of a family at once.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::vars::{
    PARAM_A, PARAM_B, PARAM_C, PARAM_D, PARAM_E, PARAM_F, W_LOWER, W_UPPER, Y_LOWER, Y_UPPER, Z_LOWER, Z_UPPER,
};
use crate::poly::{parse_expr, poly_substitute, Assignment, MPoly, Monomial, RatFunc, Var, VarTable};

/// Cover coordinate and the two base coordinates of a double cover of P¹×P¹.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub cover: Var,
    pub y: Var,
    pub z: Var,
}

impl Frame {
    /// `(w, y, z)` of the Enriques model.
    pub const ENRIQUES: Frame = Frame {
        cover: W_LOWER,
        y: Y_LOWER,
        z: Z_LOWER,
    };
    /// `(W, Y, Z)` of the K3 cover.
    pub const K3: Frame = Frame {
        cover: W_UPPER,
        y: Y_UPPER,
        z: Z_UPPER,
    };

    pub fn base(&self) -> [Var; 2] {
        [self.y, self.z]
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    EnriquesHorikawa,
    K3Cover,
}

impl FamilyKind {
    pub fn frame(self) -> Frame {
        match self {
            FamilyKind::EnriquesHorikawa => Frame::ENRIQUES,
            FamilyKind::K3Cover => Frame::K3,
        }
    }
}

/// The relation `cover² = rhs` defining the function field of the cover.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverRelation {
    pub cover: Var,
    pub rhs: MPoly,
}

/// Family of double covers given by a branch polynomial that is linear in the
/// parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceFamily {
    name: String,
    kind: FamilyKind,
    branch: MPoly,
    parameters: Vec<Var>,
}

/// The exponent pairs `(i, j)` of `yⁱzʲ` allowed in the branch curve of a
/// Horikawa model: `4 ≤ i + 2j ≤ 8`, `0 ≤ i, j ≤ 4`.
pub fn horikawa_support() -> BTreeSet<(u32, u32)> {
    (0..=4u32)
        .flat_map(|i| (0..=4u32).map(move |j| (i, j)))
        .filter(|&(i, j)| (4..=8).contains(&(i + 2 * j)))
        .collect()
}

impl SurfaceFamily {
    /// Builds a family and checks its invariants: only base coordinates and
    /// declared parameters occur, the branch is linear in the parameters,
    /// and the base support is admissible for the kind.
    pub fn new(name: impl Into<String>, kind: FamilyKind, branch: MPoly, parameters: Vec<Var>) -> Result<Self> {
        let fam = Self {
            name: name.into(),
            kind,
            branch,
            parameters,
        };
        fam.validate()?;
        Ok(fam)
    }

    fn validate(&self) -> Result<()> {
        let frame = self.frame();
        let allowed: Vec<Var> = frame
            .base()
            .into_iter()
            .chain(self.parameters.iter().copied())
            .collect();
        for v in self.branch.variables() {
            if !allowed.contains(&v) {
                return Err(Error::Invariant(format!(
                    "family `{}` uses undeclared variable {v:?}",
                    self.name
                )));
            }
        }
        for (m, _) in self.branch.terms() {
            let param_degree: u32 = self.parameters.iter().map(|p| m.exp(*p)).sum();
            if param_degree > 1 {
                return Err(Error::Invariant(format!(
                    "family `{}` is not linear in its parameters (term {m:?})",
                    self.name
                )));
            }
        }
        match self.kind {
            FamilyKind::EnriquesHorikawa => {
                let support = horikawa_support();
                for (i, j) in self.support() {
                    if !support.contains(&(i, j)) {
                        return Err(Error::Schema(format!(
                            "family `{}`: monomial y^{i}*z^{j} has support outside 4 <= i+2j <= 8, 0 <= i,j <= 4",
                            self.name
                        )));
                    }
                }
            }
            FamilyKind::K3Cover => {
                let (dy, dz) = self.bidegree();
                if dy > 4 || dz > 4 {
                    return Err(Error::Schema(format!(
                        "family `{}`: bidegree ({dy},{dz}) exceeds (4,4)",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn frame(&self) -> Frame {
        self.kind.frame()
    }

    /// The branch polynomial: f for a Horikawa model, g for a K3 cover.
    pub fn branch(&self) -> &MPoly {
        &self.branch
    }

    pub fn parameters(&self) -> &[Var] {
        &self.parameters
    }

    /// `w² = z·f` for Horikawa models, `W² = g` for K3 covers.
    pub fn relation(&self) -> CoverRelation {
        let frame = self.frame();
        let rhs = match self.kind {
            FamilyKind::EnriquesHorikawa => &MPoly::var(frame.z) * &self.branch,
            FamilyKind::K3Cover => self.branch.clone(),
        };
        CoverRelation {
            cover: frame.cover,
            rhs,
        }
    }

    /// Exponent pairs of the base coordinates occurring in the branch.
    pub fn support(&self) -> BTreeSet<(u32, u32)> {
        let frame = self.frame();
        self.branch
            .collect_in(&frame.base())
            .keys()
            .map(|m| (m.exp(frame.y), m.exp(frame.z)))
            .collect()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        let frame = self.frame();
        (self.branch.degree_in(frame.y), self.branch.degree_in(frame.z))
    }

    /// Coefficient of `y^i z^j` as a polynomial in the parameters.
    pub fn coefficient(&self, i: u32, j: u32) -> MPoly {
        let frame = self.frame();
        let m = Monomial::from_pairs([(frame.y, i), (frame.z, j)]);
        self.branch.collect_in(&frame.base()).remove(&m).unwrap_or_default()
    }
}

fn branch_from_expr(src: &str) -> MPoly {
    parse_expr(src, &VarTable::standard())
        .expect("built-in family expressions parse")
        .as_polynomial()
        .expect("built-in family is polynomial")
}

/// The three built-in families with non-semi-symplectic automorphisms:
///
/// 1. order 4, index 2, parameters A..F;
/// 2. order 8, index 4, the subfamily C = −iA, E = −iD, F = −iB of family 1;
/// 3. order 8, index 2, parameters A..D.
pub fn family(k: usize) -> Result<SurfaceFamily> {
    let (src, params) = match k {
        1 => (
            "A*(y^4*z^2 - z^2) + B*(y^4*z - z^3) + C*(y^4 - z^4) + D*(y^3*z^2 - y*z^2) \
             + E*(y^3*z - y*z^3) + F*(y^2*z - y^2*z^3)",
            vec![PARAM_A, PARAM_B, PARAM_C, PARAM_D, PARAM_E, PARAM_F],
        ),
        2 => (
            "A*(y^4*z^2 + i*z^4 - z^2 - i*y^4) + B*(y^4*z + i*y^2*z^3 - z^3 - i*y^2*z) \
             + D*(y^3*z^2 + i*y*z^3 - y*z^2 - i*y^3*z)",
            vec![PARAM_A, PARAM_B, PARAM_D],
        ),
        3 => (
            "A*y^4*z^2 + B*(y^4 + z^4) + C*(y^3*z - i*y*z^3) + D*z^2",
            vec![PARAM_A, PARAM_B, PARAM_C, PARAM_D],
        ),
        _ => return Err(Error::Schema(format!("no built-in family {k}; expected 1, 2 or 3"))),
    };
    SurfaceFamily::new(
        format!("family-{k}"),
        FamilyKind::EnriquesHorikawa,
        branch_from_expr(src),
        params,
    )
}

/// Substitutes parameter-linear expressions for the parameters of `fam`.
///
/// Every parameter must be assigned; the new parameter list is the set of
/// parameters occurring in the assigned values, in variable order.
pub fn specialize(fam: &SurfaceFamily, subst: &BTreeMap<Var, MPoly>) -> Result<SurfaceFamily> {
    for p in fam.parameters() {
        if !subst.contains_key(p) {
            return Err(Error::Invariant(format!(
                "specialization of `{}` leaves parameter {p:?} unassigned",
                fam.name()
            )));
        }
    }
    let frame = fam.frame();
    let mut new_params: Vec<Var> = Vec::new();
    let mut asg = Assignment::new();
    for (v, value) in subst {
        if value.total_degree() > 1 {
            return Err(Error::Invariant(format!(
                "specialization value for {v:?} is not linear in the parameters"
            )));
        }
        for u in value.variables() {
            if frame.base().contains(&u) || u == frame.cover {
                return Err(Error::Invariant(format!(
                    "specialization value for {v:?} involves the coordinate {u:?}"
                )));
            }
            new_params.push(u);
        }
        asg.insert(*v, RatFunc::from_poly(value.clone()));
    }
    new_params.sort();
    new_params.dedup();
    let branch = poly_substitute(fam.branch(), &asg)?
        .as_polynomial()
        .expect("polynomial substitution");
    SurfaceFamily::new(format!("{}-specialized", fam.name()), fam.kind(), branch, new_params)
}

/// The K3 cover `W² = g(Y, Z)` with `g = f(YZ, Z²)/Z⁴` and `W = w/Z³`.
pub fn k3_cover(fam: &SurfaceFamily) -> Result<SurfaceFamily> {
    if fam.kind() != FamilyKind::EnriquesHorikawa {
        return Err(Error::Invariant(format!("`{}` is not a Horikawa model", fam.name())));
    }
    let y = RatFunc::var(Y_UPPER);
    let z = RatFunc::var(Z_UPPER);
    let asg = Assignment::new().set(Y_LOWER, &y * &z).set(Z_LOWER, z.pow(2)?);
    let pulled = poly_substitute(fam.branch(), &asg)?
        .as_polynomial()
        .expect("polynomial substitution");
    let g = pulled.exact_divide(&MPoly::var(Z_UPPER).pow(4))?;
    let cover = SurfaceFamily::new(
        format!("{}-k3", fam.name()),
        FamilyKind::K3Cover,
        g,
        fam.parameters().to_vec(),
    )?;
    if !check_bis_condition(cover.branch(), BisCondition::IotaInvariant)? {
        return Err(Error::Invariant(format!(
            "K3 cover of `{}` is not invariant under (Y, Z) -> (-Y, -Z)",
            fam.name()
        )));
    }
    Ok(cover)
}

/// Symmetry identities for a bidegree-(4,4) branch `g(Y, Z)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BisCondition {
    /// `g(−Y, −Z) = g(Y, Z)`
    IotaInvariant,
    /// `Y⁴Z⁴·g(1/Y, 1/Z) = −g(Y, Z)` (order 4, index 2)
    Inversion,
    /// `Z⁴·g(1/Z, Y) = √−1·g(Y, Z)` (order 8, index 4)
    Rotation,
}

/// Decides the selected identity as a polynomial identity in Y, Z and all
/// parameters.
pub fn check_bis_condition(g: &MPoly, which: BisCondition) -> Result<bool> {
    let y = RatFunc::var(Y_UPPER);
    let z = RatFunc::var(Z_UPPER);
    let g_rat = RatFunc::from_poly(g.clone());
    let (asg, factor, target) = match which {
        BisCondition::IotaInvariant => (
            Assignment::new().set(Y_UPPER, -&y).set(Z_UPPER, -&z),
            RatFunc::one(),
            g_rat,
        ),
        BisCondition::Inversion => (
            Assignment::new().set(Y_UPPER, y.inv()?).set(Z_UPPER, z.inv()?),
            (&y * &z).pow(4)?,
            -&g_rat,
        ),
        BisCondition::Rotation => (
            Assignment::new().set(Y_UPPER, z.inv()?).set(Z_UPPER, y.clone()),
            z.pow(4)?,
            g_rat.scale(&FieldElem::i()),
        ),
    };
    let lhs = &factor * &poly_substitute(g, &asg)?;
    Ok(lhs == target)
}

/// Corner coefficients of the K3 branch and whether ε is fixed-point free.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonCheck {
    pub fixed_point_free: bool,
    /// Coefficients of 1, Y⁴, Z⁴, Y⁴Z⁴ in g, i.e. the values of the
    /// bihomogenized g at (0,0), (∞,0), (0,∞), (∞,∞).
    pub corners: [MPoly; 4],
}

/// ε = (W, Y, Z) ↦ (−W, −Y, −Z) can only fix points with W = 0 over the four
/// ι-fixed points {0, ∞}², so it is free exactly when g is nonzero at all four
/// corners of P¹×P¹.
pub fn epsilon_fixed_point_free(fam: &SurfaceFamily) -> Result<EpsilonCheck> {
    let cover = k3_cover(fam)?;
    let corners = [(0, 0), (4, 0), (0, 4), (4, 4)].map(|(i, j)| cover.coefficient(i, j));
    Ok(EpsilonCheck {
        fixed_point_free: corners.iter().all(|c| !c.is_zero()),
        corners,
    })
}

/// Element `a + b·w` of the function field of a double cover, with a and b
/// functions on the base (and parameters).
#[derive(Clone, PartialEq, Eq)]
pub struct CoverElement {
    pub a: RatFunc,
    pub b: RatFunc,
}

impl CoverElement {
    pub fn new(a: RatFunc, b: RatFunc) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(RatFunc::zero(), RatFunc::zero())
    }

    pub fn from_base(a: RatFunc) -> Self {
        Self::new(a, RatFunc::zero())
    }

    /// The cover coordinate itself.
    pub fn cover_var() -> Self {
        Self::new(RatFunc::zero(), RatFunc::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b)
    }

    pub fn scale(&self, r: &RatFunc) -> Self {
        Self::new(&self.a * r, &self.b * r)
    }

    /// `(a + bw)(c + dw) = ac + bd·R + (ad + bc)w`
    pub fn mul(&self, o: &Self, rel: &CoverRelation) -> Self {
        let r = RatFunc::from_poly(rel.rhs.clone());
        let bd = &self.b * &o.b;
        Self::new(&(&self.a * &o.a) + &(&bd * &r), &(&self.a * &o.b) + &(&self.b * &o.a))
    }

    pub fn square(&self, rel: &CoverRelation) -> Self {
        self.mul(self, rel)
    }

    /// `(a + bw)⁻¹ = (a − bw)/(a² − b²R)`
    pub fn inv(&self, rel: &CoverRelation) -> Result<Self> {
        let r = RatFunc::from_poly(rel.rhs.clone());
        let norm = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &r);
        let inv = norm.inv()?;
        Ok(Self::new(&self.a * &inv, -&(&self.b * &inv)))
    }

    /// Splits a rational expression in the cover coordinate and base
    /// variables into `a + b·w`.
    pub fn from_ratfunc(r: &RatFunc, rel: &CoverRelation) -> Result<Self> {
        let num = cover_reduce(&w_coefficients(r.num(), rel.cover), rel);
        if r.den().contains_var(rel.cover) {
            let den = cover_reduce(&w_coefficients(r.den(), rel.cover), rel);
            Ok(num.mul(&den.inv(rel)?, rel))
        } else {
            Ok(num.scale(&RatFunc::from_poly(MPoly::one()).try_div(&RatFunc::from_poly(r.den().clone()))?))
        }
    }

    /// Evaluates at `cover = ψ_w` after the base substitution `asg`: the
    /// pullback of this element along a map.
    pub fn pullback(&self, asg: &Assignment, image_of_cover: &CoverElement) -> Result<Self> {
        let a = self.a.substitute(asg)?;
        let b = self.b.substitute(asg)?;
        Ok(CoverElement::from_base(a).add(&image_of_cover.scale(&b)))
    }

    pub fn check_degree(&self, cap: u32) -> Result<()> {
        self.a.check_degree(cap)?;
        self.b.check_degree(cap)
    }

    pub fn display<'a>(&'a self, table: &'a VarTable, cover: Var) -> impl fmt::Display + 'a {
        CoverDisplay { el: self, table, cover }
    }
}

impl fmt::Debug for CoverElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ({:?})*w", self.a, self.b)
    }
}

struct CoverDisplay<'a> {
    el: &'a CoverElement,
    table: &'a VarTable,
    cover: Var,
}

impl fmt::Display for CoverDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.table.name(self.cover);
        match (self.el.a.is_zero(), self.el.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.el.a.display(self.table)),
            (true, false) => write!(f, "({})*{w}", self.el.b.display(self.table)),
            (false, false) => write!(
                f,
                "{} + ({})*{w}",
                self.el.a.display(self.table),
                self.el.b.display(self.table)
            ),
        }
    }
}

/// Coefficients `[c₀, c₁, …]` of a polynomial viewed as a polynomial in `w`.
fn w_coefficients(p: &MPoly, w: Var) -> Vec<RatFunc> {
    let groups = p.collect_in(&[w]);
    let top = p.degree_in(w) as usize;
    let mut out = vec![RatFunc::zero(); top + 1];
    for (m, c) in groups {
        out[m.exp(w) as usize] = RatFunc::from_poly(c);
    }
    out
}

/// Reduces `Σ cₖ wᵏ` to `a + b·w` using `w² = R`.
pub fn cover_reduce(coeffs: &[RatFunc], rel: &CoverRelation) -> CoverElement {
    let r = RatFunc::from_poly(rel.rhs.clone());
    let mut a = RatFunc::zero();
    let mut b = RatFunc::zero();
    let mut r_pow = RatFunc::one();
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 && k % 2 == 0 {
            r_pow = &r_pow * &r;
        }
        if c.is_zero() {
            continue;
        }
        if k % 2 == 0 {
            a = &a + &(c * &r_pow);
        } else {
            b = &b + &(c * &r_pow);
        }
    }
    CoverElement::new(a, b)
}
