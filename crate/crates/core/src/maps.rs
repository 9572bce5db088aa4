//! Birational self-maps of a double cover, given by coordinate expressions
//! with the cover coordinate appearing at most linearly.

use std::fmt;

use crate::cover::{CoverElement, CoverRelation, Frame, SurfaceFamily};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::{parse_expr, poly_substitute, Assignment, MPoly, RatFunc, VarTable};

/// Default search bound for [`map_order`].
pub const DEFAULT_MAX_ORDER: u32 = 16;

#[derive(Clone)]
pub struct BirMap {
    frame: Frame,
    cover: CoverElement,
    y: RatFunc,
    z: RatFunc,
    label: Option<String>,
}

impl BirMap {
    /// `(w, y, z) ↦ (w', y', z')`. `w'` must be linear in `w` with a
    /// `w`-free denominator; `y'`, `z'` must not involve `w`.
    pub fn new(frame: Frame, w: RatFunc, y: RatFunc, z: RatFunc) -> Result<Self> {
        for (name, r) in [("second", &y), ("third", &z)] {
            if r.contains_var(frame.cover) {
                return Err(Error::Schema(format!(
                    "{name} coordinate of a map must not involve the cover coordinate"
                )));
            }
        }
        if w.den().contains_var(frame.cover) || w.num().degree_in(frame.cover) > 1 {
            return Err(Error::Schema(
                "the cover coordinate must appear linearly in the first coordinate".into(),
            ));
        }
        // Linear in w, so the relation is never used.
        let rel = CoverRelation {
            cover: frame.cover,
            rhs: MPoly::zero(),
        };
        let cover = CoverElement::from_ratfunc(&w, &rel)?;
        Ok(Self {
            frame,
            cover,
            y,
            z,
            label: None,
        })
    }

    /// Map acting on the base only, fixing the cover coordinate.
    pub fn on_base(frame: Frame, y: RatFunc, z: RatFunc) -> Result<Self> {
        Self::new(frame, RatFunc::var(frame.cover), y, z)
    }

    pub fn identity(frame: Frame) -> Self {
        Self::on_base(frame, RatFunc::var(frame.y), RatFunc::var(frame.z)).expect("identity is valid")
    }

    /// Parses three coordinate expressions in the grammar of [`parse_expr`].
    pub fn parse(frame: Frame, coords: [&str; 3], table: &VarTable) -> Result<Self> {
        let [w, y, z] = coords.map(|s| parse_expr(s, table));
        Self::new(frame, w?, y?, z?)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// The cover coordinate of the image, as `a + b·w`.
    pub fn cover_image(&self) -> &CoverElement {
        &self.cover
    }

    /// The cover coordinate of the image as a rational function.
    pub fn w_image(&self) -> RatFunc {
        &self.cover.a + &(&self.cover.b * &RatFunc::var(self.frame.cover))
    }

    pub fn y_image(&self) -> &RatFunc {
        &self.y
    }

    pub fn z_image(&self) -> &RatFunc {
        &self.z
    }

    /// Substitution of the base coordinates by their images.
    pub fn base_assignment(&self) -> Assignment {
        Assignment::new()
            .set(self.frame.y, self.y.clone())
            .set(self.frame.z, self.z.clone())
    }

    /// `e ∘ φ` for a function `e` on the cover.
    pub fn pullback(&self, e: &CoverElement) -> Result<CoverElement> {
        e.pullback(&self.base_assignment(), &self.cover)
    }

    /// The map restricted to the base, forgetting the cover coordinate.
    pub fn base_part(&self) -> BirMap {
        Self {
            frame: self.frame,
            cover: CoverElement::cover_var(),
            y: self.y.clone(),
            z: self.z.clone(),
            label: None,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.frame)
    }

    pub fn display<'a>(&'a self, table: &'a VarTable) -> impl fmt::Display + 'a {
        MapDisplay { map: self, table }
    }
}

/// Equality as rational maps; labels are ignored.
impl PartialEq for BirMap {
    fn eq(&self, o: &Self) -> bool {
        self.frame == o.frame && self.cover == o.cover && self.y == o.y && self.z == o.z
    }
}

impl Eq for BirMap {}

impl fmt::Debug for BirMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?})", self.cover, self.y, self.z)
    }
}

struct MapDisplay<'a> {
    map: &'a BirMap,
    table: &'a VarTable,
}

impl fmt::Display for MapDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.map.cover.display(self.table, self.map.frame.cover),
            self.map.y.display(self.table),
            self.map.z.display(self.table)
        )
    }
}

/// `φ ∘ ψ`: the coordinates of `ψ` substituted into those of `φ`.
pub fn compose(phi: &BirMap, psi: &BirMap) -> Result<BirMap> {
    if phi.frame != psi.frame {
        return Err(Error::Invariant("cannot compose maps on different covers".into()));
    }
    let asg = psi.base_assignment();
    Ok(BirMap {
        frame: phi.frame,
        cover: phi.cover.pullback(&asg, &psi.cover)?,
        y: phi.y.substitute(&asg)?,
        z: phi.z.substitute(&asg)?,
        label: None,
    })
}

/// Smallest `n ≤ max_n` with `φⁿ = id`, if any.
pub fn map_order(phi: &BirMap, max_n: u32) -> Result<Option<u32>> {
    let mut power = phi.clone();
    for n in 1..=max_n {
        if power.is_identity() {
            return Ok(Some(n));
        }
        power = compose(&power, phi)?;
    }
    Ok(None)
}

/// Result of an equation-invariance check.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariance {
    pub invariant: bool,
    /// Numerator of `(φ*w)² − φ*(z·f)` after reduction, written as
    /// `p + q·w`; zero exactly when the map preserves the cover.
    pub witness: MPoly,
}

/// Decides whether `φ` preserves `w² = z·f` (resp. `W² = g`) identically in
/// the coordinates and all parameters.
pub fn check_equation_invariance(fam: &SurfaceFamily, phi: &BirMap) -> Result<Invariance> {
    if phi.frame != fam.frame() {
        return Err(Error::Invariant(format!(
            "map frame does not match the coordinates of `{}`",
            fam.name()
        )));
    }
    let rel = fam.relation();
    let lhs = phi.cover.square(&rel);
    let rhs = poly_substitute(&rel.rhs, &phi.base_assignment())?;
    let diff = lhs.sub(&CoverElement::from_base(rhs));
    let w = MPoly::var(rel.cover);
    let witness = &(diff.a.num() * diff.b.den()) + &(&(diff.b.num() * diff.a.den()) * &w);
    Ok(Invariance {
        invariant: diff.is_zero(),
        witness,
    })
}

fn k3_frame_map(w: &str, y: &str, z: &str) -> BirMap {
    BirMap::parse(Frame::K3, [w, y, z], &VarTable::standard()).expect("built-in map parses")
}

/// σ₁, σ₂, σ₃ acting on families 1, 2, 3.
pub fn sigma(k: usize) -> Result<BirMap> {
    let coords = match k {
        1 => ["i*w/(y^2*z^3)", "1/y", "1/z"],
        2 => ["zeta8*y^3*w/z^4", "y/z", "y^2/z"],
        3 => ["w*y^3/z^3", "i*y", "y^2/z"],
        _ => return Err(Error::Schema(format!("no built-in map sigma{k}; expected 1, 2 or 3"))),
    };
    Ok(BirMap::parse(Frame::ENRIQUES, coords, &VarTable::standard())?.with_label(format!("sigma{k}")))
}

/// Lift of σ₁ to the K3 cover: `(W, Y, Z) ↦ (√−1·W/(Y²Z²), 1/Y, 1/Z)`.
pub fn k3_lift_inversion() -> BirMap {
    k3_frame_map("i*W/(Y^2*Z^2)", "1/Y", "1/Z").with_label("phi-inversion")
}

/// Lift of σ₂ to the K3 cover: `(W, Y, Z) ↦ (ζ₈·W/Z², 1/Z, Y)`.
pub fn k3_lift_rotation() -> BirMap {
    k3_frame_map("zeta8*W/Z^2", "1/Z", "Y").with_label("phi-rotation")
}

/// The covering involution `ε: (W, Y, Z) ↦ (−W, −Y, −Z)`.
pub fn epsilon() -> BirMap {
    k3_frame_map("-W", "-Y", "-Z").with_label("epsilon")
}

/// Multiplies the cover coordinate of the image by a constant.
pub fn scale_cover(phi: &BirMap, c: &FieldElem) -> BirMap {
    let mut out = phi.clone();
    out.cover = CoverElement::new(phi.cover.a.scale(c), phi.cover.b.scale(c));
    out.label = None;
    out
}
