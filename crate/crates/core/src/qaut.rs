//! Automorphisms of Q = P¹×P¹: pairs of Möbius transformations, optionally
//! exchanging the two rulings.

use std::fmt;

use crate::cover::Frame;
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::maps::BirMap;
use crate::poly::RatFunc;

/// A point of P¹ over Q(ζ₈).
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum P1Point {
    Finite(FieldElem),
    Infinity,
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(x) => write!(f, "{}", x.to_expr()),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

/// `Y ↦ (aY + b)/(cY + d)`, normalized so the first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mobius {
    m: [FieldElem; 4],
}

impl Mobius {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<Self> {
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(Error::Invariant("Möbius matrix is singular".into()));
        }
        let lead = [&a, &b, &c, &d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("nonsingular matrix has a nonzero entry")
            .inv()?;
        Ok(Self {
            m: [a, b, c, d].map(|x| &x * &lead),
        })
    }

    pub fn identity() -> Self {
        Self {
            m: [FieldElem::one(), FieldElem::zero(), FieldElem::zero(), FieldElem::one()],
        }
    }

    /// `Y ↦ s·Y`
    pub fn scaling(s: FieldElem) -> Result<Self> {
        Self::new(s, FieldElem::zero(), FieldElem::zero(), FieldElem::one())
    }

    /// `Y ↦ s/Y`
    pub fn inversion(s: FieldElem) -> Result<Self> {
        Self::new(FieldElem::zero(), s, FieldElem::one(), FieldElem::zero())
    }

    pub fn entries(&self) -> &[FieldElem; 4] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self ∘ o`
    pub fn compose(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        Self::new(
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        )
        .expect("product of invertible matrices")
    }

    pub fn apply(&self, p: &P1Point) -> P1Point {
        let [a, b, c, d] = &self.m;
        match p {
            P1Point::Infinity if c.is_zero() => P1Point::Infinity,
            P1Point::Infinity => P1Point::Finite(a * &c.inv().expect("nonzero")),
            P1Point::Finite(y) => {
                let den = &(c * y) + d;
                if den.is_zero() {
                    P1Point::Infinity
                } else {
                    P1Point::Finite(&(&(a * y) + b) * &den.inv().expect("nonzero"))
                }
            }
        }
    }

    /// The transformation applied to a rational function.
    pub fn apply_ratfunc(&self, r: &RatFunc) -> Result<RatFunc> {
        let [a, b, c, d] = self.m.clone().map(RatFunc::constant);
        (&(&a * r) + &b).try_div(&(&(&c * r) + &d))
    }

    /// Fixed points in P¹: roots of `cY² + (d − a)Y − b = 0`, together with
    /// ∞ when `c = 0`.
    pub fn fixed_points(&self) -> Result<MobiusFixed> {
        if self.is_identity() {
            return Err(Error::InfiniteFixedLocus(
                "identity Möbius factor fixes all of P¹".into(),
            ));
        }
        let [a, b, c, d] = &self.m;
        let dma = d - a;
        if c.is_zero() {
            if dma.is_zero() {
                // Translation: only ∞.
                return Ok(MobiusFixed {
                    count: 1,
                    points: Some(vec![P1Point::Infinity]),
                    parabolic: true,
                });
            }
            let root = b * &dma.inv()?;
            return Ok(MobiusFixed {
                count: 2,
                points: Some(vec![P1Point::Finite(root), P1Point::Infinity]),
                parabolic: false,
            });
        }
        let disc = &(&dma * &dma) + &(&FieldElem::from_int(4) * &(b * c));
        let two_c_inv = (&FieldElem::from_int(2) * c).inv()?;
        let minus_dma = -&dma;
        if disc.is_zero() {
            return Ok(MobiusFixed {
                count: 1,
                points: Some(vec![P1Point::Finite(&minus_dma * &two_c_inv)]),
                parabolic: true,
            });
        }
        let points = disc.sqrt().map(|s| {
            let mut pts = vec![
                P1Point::Finite(&(&minus_dma + &s) * &two_c_inv),
                P1Point::Finite(&(&minus_dma - &s) * &two_c_inv),
            ];
            pts.sort();
            pts
        });
        Ok(MobiusFixed {
            count: 2,
            points,
            parabolic: false,
        })
    }
}

/// Fixed points of a single Möbius transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusFixed {
    pub count: usize,
    /// Present when all fixed points are defined over Q(ζ₈).
    pub points: Option<Vec<P1Point>>,
    pub parabolic: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `(Y, Z) ↦ (M₁Y, M₂Z)`
    Direct,
    /// `(Y, Z) ↦ (M₁Z, M₂Y)`
    Swap,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QAut {
    pub shape: Shape,
    pub m1: Mobius,
    pub m2: Mobius,
}

/// Fixed points of an automorphism of Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFixed {
    pub count: usize,
    pub points: Option<Vec<(P1Point, P1Point)>>,
    pub parabolic: bool,
}

impl QAut {
    pub fn direct(m1: Mobius, m2: Mobius) -> Self {
        Self {
            shape: Shape::Direct,
            m1,
            m2,
        }
    }

    pub fn swap(m1: Mobius, m2: Mobius) -> Self {
        Self {
            shape: Shape::Swap,
            m1,
            m2,
        }
    }

    pub fn identity() -> Self {
        Self::direct(Mobius::identity(), Mobius::identity())
    }

    /// `ι: (Y, Z) ↦ (−Y, −Z)`
    pub fn iota() -> Self {
        let neg = Mobius::scaling(-FieldElem::one()).expect("invertible");
        Self::direct(neg.clone(), neg)
    }

    /// `φ₁: (Y, Z) ↦ (1/Y, 1/Z)`
    pub fn inversion() -> Self {
        let inv = Mobius::inversion(FieldElem::one()).expect("invertible");
        Self::direct(inv.clone(), inv)
    }

    /// `(Y, Z) ↦ (s/Z, s·Y)` with `s = ±1`.
    pub fn rotation(s: i64) -> Self {
        let s = FieldElem::from_int(s);
        Self::swap(
            Mobius::inversion(s.clone()).expect("invertible"),
            Mobius::scaling(s).expect("invertible"),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self ∘ o`
    pub fn compose(&self, o: &QAut) -> QAut {
        let (m1, m2) = (&self.m1, &self.m2);
        let (n1, n2) = (&o.m1, &o.m2);
        match (self.shape, o.shape) {
            (Shape::Direct, Shape::Direct) => Self::direct(m1.compose(n1), m2.compose(n2)),
            (Shape::Direct, Shape::Swap) => Self::swap(m1.compose(n1), m2.compose(n2)),
            (Shape::Swap, Shape::Direct) => Self::swap(m1.compose(n2), m2.compose(n1)),
            (Shape::Swap, Shape::Swap) => Self::direct(m1.compose(n2), m2.compose(n1)),
        }
    }

    pub fn order(&self, max_n: u32) -> Option<u32> {
        let mut power = self.clone();
        for n in 1..=max_n {
            if power.is_identity() {
                return Some(n);
            }
            power = power.compose(self);
        }
        None
    }

    pub fn apply(&self, p: &(P1Point, P1Point)) -> (P1Point, P1Point) {
        match self.shape {
            Shape::Direct => (self.m1.apply(&p.0), self.m2.apply(&p.1)),
            Shape::Swap => (self.m1.apply(&p.1), self.m2.apply(&p.0)),
        }
    }

    /// The map on the base of the K3 cover, fixing `W`.
    pub fn to_birmap(&self) -> Result<BirMap> {
        let f = Frame::K3;
        let (u, v) = match self.shape {
            Shape::Direct => (RatFunc::var(f.y), RatFunc::var(f.z)),
            Shape::Swap => (RatFunc::var(f.z), RatFunc::var(f.y)),
        };
        BirMap::on_base(f, self.m1.apply_ratfunc(&u)?, self.m2.apply_ratfunc(&v)?)
    }
}

/// Fixed points of `g`; see [`Mobius::fixed_points`] for the per-factor rule.
pub fn qaut_fixed_points(g: &QAut) -> Result<QFixed> {
    match g.shape {
        Shape::Direct => {
            let f1 = g.m1.fixed_points()?;
            let f2 = g.m2.fixed_points()?;
            let points = match (&f1.points, &f2.points) {
                (Some(p1), Some(p2)) => Some(
                    p1.iter()
                        .flat_map(|a| p2.iter().map(move |b| (a.clone(), b.clone())))
                        .collect(),
                ),
                _ => None,
            };
            Ok(QFixed {
                count: f1.count * f2.count,
                points,
                parabolic: f1.parabolic || f2.parabolic,
            })
        }
        Shape::Swap => {
            // Y = M₁(Z), Z = M₂(Y)  ⇔  Y fixed by M₁M₂ and Z = M₂(Y).
            let prod = g.m1.compose(&g.m2);
            let fy = prod
                .fixed_points()
                .map_err(|_| Error::InfiniteFixedLocus("swap map fixes a curve (M₁M₂ is the identity)".into()))?;
            let points = fy
                .points
                .as_ref()
                .map(|ps| ps.iter().map(|y| (y.clone(), g.m2.apply(y))).collect());
            Ok(QFixed {
                count: fy.count,
                points,
                parabolic: fy.parabolic,
            })
        }
    }
}

/// Trace of `g` on NS(Q) = Z²: 2 if the rulings are preserved, 0 if swapped.
pub fn qaut_ns_trace(g: &QAut) -> i64 {
    match g.shape {
        Shape::Direct => 2,
        Shape::Swap => 0,
    }
}

/// Outcome of the Klein-four normal-form verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K4Check {
    /// ι and φ₁ are commuting involutions with ιφ₁ of order 2.
    pub klein_four: bool,
    /// Both `(±1/Z, ±Y)` square to φ₁ and have order 4.
    pub rotations_square_to_inversion: bool,
    /// All monomial candidates of order 4 with square φ₁.
    pub monomial_square_roots: Vec<QAut>,
    /// The square roots found equal `{(±1/Z, ±Y)}` up to taking inverses.
    pub roots_are_rotations: bool,
    /// No ruling-preserving candidate squares to φ₁.
    pub no_direct_root: bool,
    pub candidates_searched: usize,
}

impl K4Check {
    pub fn passed(&self) -> bool {
        self.klein_four && self.rotations_square_to_inversion && self.roots_are_rotations && self.no_direct_root
    }
}

/// Monomial candidates `a·V` and `a/V` for `a ∈ ⟨ζ₈⟩`.
fn monomial_factors() -> Vec<Mobius> {
    (0..8)
        .flat_map(|k| {
            let a = FieldElem::zeta_pow(k);
            [
                Mobius::scaling(a.clone()).expect("unit"),
                Mobius::inversion(a).expect("unit"),
            ]
        })
        .collect()
}

/// Verifies the normal form of the Klein four-group ⟨ι, φ₁⟩ and the square
/// roots of φ₁ among the monomial automorphisms of Q.
///
/// The search covers all pairs of coordinates `a·V^{±1}`, `b·V'^{±1}` with
/// `a, b ∈ ⟨ζ₈⟩` and `V, V' ∈ {Y, Z}`; pairs using the same variable twice
/// are not invertible and are skipped after being counted.
pub fn k4_normal_form_check() -> K4Check {
    let iota = QAut::iota();
    let phi1 = QAut::inversion();
    let id = QAut::identity();
    let klein_four = iota.compose(&iota) == id
        && phi1.compose(&phi1) == id
        && iota.compose(&phi1) == phi1.compose(&iota)
        && iota.compose(&phi1).order(16) == Some(2)
        && iota != phi1;

    let rotations = [QAut::rotation(1), QAut::rotation(-1)];
    let rotations_square_to_inversion = rotations.iter().all(|r| r.compose(r) == phi1 && r.order(16) == Some(4));

    let factors = monomial_factors();
    let mut candidates_searched = 0;
    let mut roots = Vec::new();
    let mut no_direct_root = true;
    for first_uses_z in [false, true] {
        for second_uses_z in [false, true] {
            for m1 in &factors {
                for m2 in &factors {
                    candidates_searched += 1;
                    let g = match (first_uses_z, second_uses_z) {
                        (false, true) => QAut::direct(m1.clone(), m2.clone()),
                        (true, false) => QAut::swap(m1.clone(), m2.clone()),
                        _ => continue,
                    };
                    if g.compose(&g) == phi1 && g.order(16) == Some(4) {
                        if g.shape == Shape::Direct {
                            no_direct_root = false;
                        }
                        roots.push(g);
                    }
                }
            }
        }
    }
    let roots_are_rotations = roots
        .iter()
        .all(|g| rotations.iter().any(|r| g == r || g.compose(r).is_identity()))
        && rotations.iter().all(|r| roots.contains(r));
    K4Check {
        klein_four,
        rotations_square_to_inversion,
        monomial_square_roots: roots,
        roots_are_rotations,
        no_direct_root,
        candidates_searched,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{compose, sigma};
    use crate::poly::vars::{Y_LOWER, Y_UPPER, Z_LOWER, Z_UPPER};
    use crate::poly::Assignment;

    fn fin(n: i64) -> P1Point {
        P1Point::Finite(FieldElem::from_int(n))
    }

    #[test]
    fn fixed_points_of_basic_maps() {
        let iota = qaut_fixed_points(&QAut::iota()).unwrap();
        assert_eq!(iota.count, 4);
        let corners = iota.points.unwrap();
        assert!(corners.contains(&(fin(0), P1Point::Infinity)));
        assert!(corners.contains(&(P1Point::Infinity, P1Point::Infinity)));

        let phi1 = qaut_fixed_points(&QAut::inversion()).unwrap();
        assert_eq!(phi1.count, 4);
        assert!(phi1.points.unwrap().contains(&(fin(-1), fin(1))));

        let rot = qaut_fixed_points(&QAut::rotation(1)).unwrap();
        assert_eq!(rot.count, 2);
        let mut pts = rot.points.unwrap();
        pts.sort();
        let mut expect = vec![(fin(1), fin(1)), (fin(-1), fin(-1))];
        expect.sort();
        assert_eq!(pts, expect);
    }

    #[test]
    fn fixed_points_are_fixed() {
        for g in [
            QAut::iota(),
            QAut::inversion(),
            QAut::iota().compose(&QAut::inversion()),
            QAut::rotation(-1),
        ] {
            for p in qaut_fixed_points(&g).unwrap().points.unwrap() {
                assert_eq!(g.apply(&p), p);
            }
        }
    }

    #[test]
    fn identity_and_parabolic_factors() {
        assert!(matches!(
            qaut_fixed_points(&QAut::identity()),
            Err(Error::InfiniteFixedLocus(_))
        ));
        let swap_id = QAut::swap(Mobius::identity(), Mobius::identity());
        assert!(matches!(qaut_fixed_points(&swap_id), Err(Error::InfiniteFixedLocus(_))));
        let one = FieldElem::one();
        let translate = Mobius::new(one.clone(), one.clone(), FieldElem::zero(), one).unwrap();
        let g = QAut::direct(translate, Mobius::scaling(-FieldElem::one()).unwrap());
        let fx = qaut_fixed_points(&g).unwrap();
        assert!(fx.parabolic);
        assert_eq!(fx.count, 2);
    }

    #[test]
    fn irrational_fixed_points_are_counted() {
        // Y ↦ 3/Y fixes ±√3, which is not in Q(ζ₈).
        let m = Mobius::inversion(FieldElem::from_int(3)).unwrap();
        let fx = m.fixed_points().unwrap();
        assert_eq!(fx.count, 2);
        assert!(fx.points.is_none());
        // Y ↦ 2/Y fixes ±√2, which is.
        let m = Mobius::inversion(FieldElem::from_int(2)).unwrap();
        assert_eq!(m.fixed_points().unwrap().points.unwrap().len(), 2);
    }

    #[test]
    fn lefschetz_count_on_q() {
        let gens = [
            QAut::iota(),
            QAut::inversion(),
            QAut::iota().compose(&QAut::inversion()),
            QAut::rotation(1),
            QAut::rotation(-1),
        ];
        for g in gens {
            let fx = qaut_fixed_points(&g).unwrap();
            assert_eq!(fx.count as i64, 2 + qaut_ns_trace(&g), "{g:?}");
        }
        assert_eq!(qaut_ns_trace(&QAut::identity()), 2);
    }

    #[test]
    fn k4_normal_form() {
        let chk = k4_normal_form_check();
        assert!(chk.passed(), "{chk:?}");
        assert_eq!(chk.candidates_searched, 1024);
        assert_eq!(chk.monomial_square_roots.len(), 4);
    }

    #[test]
    fn rotation_as_birmap_squares_to_inversion() {
        let r = QAut::rotation(1).to_birmap().unwrap();
        assert_eq!(compose(&r, &r).unwrap(), QAut::inversion().to_birmap().unwrap());
    }

    #[test]
    fn rotation_lifts_sigma_two_on_base() {
        // π(Y, Z) = (YZ, Z²) intertwines (1/Z, Y) and the base part of σ₂.
        let pi = |r: &RatFunc| -> RatFunc {
            let asg = Assignment::new()
                .set(Y_LOWER, &RatFunc::var(Y_UPPER) * &RatFunc::var(Z_UPPER))
                .set(Z_LOWER, RatFunc::var(Z_UPPER).pow(2).unwrap());
            r.substitute(&asg).unwrap()
        };
        let s2 = sigma(2).unwrap();
        for sign in [1, -1] {
            let rot = QAut::rotation(sign).to_birmap().unwrap();
            let asg = rot.base_assignment();
            let via_pi_y = pi(s2.y_image());
            let via_pi_z = pi(s2.z_image());
            let up_y = (&RatFunc::var(Y_UPPER) * &RatFunc::var(Z_UPPER))
                .substitute(&asg)
                .unwrap();
            let up_z = RatFunc::var(Z_UPPER).pow(2).unwrap().substitute(&asg).unwrap();
            assert_eq!(up_y, via_pi_y);
            assert_eq!(up_z, via_pi_z);
        }
        assert_eq!(QAut::rotation(1).shape, Shape::Swap);
    }
}
