//! Exact arithmetic in the cyclotomic field Q(ζ₈).
//!
//! Elements are stored in the power basis `{1, ζ, ζ², ζ³}` with ζ⁴ = −1, so two
//! elements are equal exactly when their four rational coordinates agree.
//! Inside this field ζ² plays the role of √−1 and ζ − ζ³ that of √2.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact square root in Q, if one exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Element of Q(ζ₈) as `c0 + c1·ζ + c2·ζ² + c3·ζ³`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    coords: [Rational; 4],
}

impl FieldElem {
    pub fn new(coords: [Rational; 4]) -> Self {
        Self { coords }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new([q, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Self::new(c.map(|x| Rational::from_integer(x.into())))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The primitive eighth root of unity ζ = (1 + √−1)/√2.
    pub fn zeta() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// √−1 = ζ².
    pub fn i() -> Self {
        Self::from_ints([0, 0, 1, 0])
    }

    /// √2 = ζ − ζ³.
    pub fn sqrt2() -> Self {
        Self::from_ints([0, 1, 0, -1])
    }

    /// ζᵏ for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Self::from_ints(c)
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then_some(&self.coords[0])
    }

    /// Returns the integer value if the element lies in Z.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.coords.clone().map(|c| c * q))
    }

    /// Multiplicative inverse, obtained by solving the 4×4 system of the
    /// regular representation `M_a · x = e₀`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // column k of M_a is a·ζᵏ
        let mut cols = Vec::with_capacity(4);
        let mut cur = self.clone();
        for _ in 0..4 {
            cols.push(cur.clone());
            cur = cur.mul_zeta();
        }
        let mut m: Vec<Vec<Rational>> = (0..4)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.coords[r].clone()).collect();
                row.push(if r == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..4 {
            let pivot = (col..4)
                .find(|&r| !m[r][col].is_zero())
                .expect("regular representation of a nonzero element is invertible");
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..4 {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for k in col..5 {
                        let delta = &factor * &m[col][k];
                        m[r][k] -= delta;
                    }
                }
            }
        }
        Ok(Self::new([
            m[0][4].clone(),
            m[1][4].clone(),
            m[2][4].clone(),
            m[3][4].clone(),
        ]))
    }

    fn mul_zeta(&self) -> Self {
        let [c0, c1, c2, c3] = self.coords.clone();
        Self::new([-c3, c0, c1, c2])
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents need an invertible base.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    /// Smallest n ≤ 8 with aⁿ = 1. Every root of unity in Q(ζ₈) is a power
    /// of ζ₈, so no larger orders need to be searched.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        let mut cur = self.clone();
        for n in 1..=8 {
            if cur.is_one() {
                return Some(n);
            }
            cur = &cur * self;
        }
        None
    }

    /// Exact square root inside Q(ζ₈), if it exists.
    ///
    /// Works down the tower Q ⊂ Q(√2) ⊂ Q(√2)(√−1) = Q(ζ₈).
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let [c0, c1, c2, c3] = &self.coords;
        let two = rat(2, 1);
        // self = p + q·√−1 with p, q in Q(√2)
        let p = Quad::new(c0.clone(), (c1 - c3) / &two);
        let q = Quad::new(c2.clone(), (c1 + c3) / &two);
        let (a, b) = if q.is_zero() {
            if let Some(r) = p.sqrt() {
                (r, Quad::zero())
            } else {
                (Quad::zero(), (-p).sqrt()?)
            }
        } else {
            // a² − b² = p, 2ab = q, a² = (p + n)/2 with n² = p² + q²
            let n = (&(&p * &p) + &(&q * &q)).sqrt()?;
            let half = rat(1, 2);
            [n.clone(), -n].into_iter().find_map(|n| {
                let a = (&p + &n).scale(&half).sqrt()?;
                if a.is_zero() {
                    return None;
                }
                let b = q.div(&a.scale(&two))?;
                Some((a, b))
            })?
        };
        let root = Self::new([a.r.clone(), &a.s + &b.s, b.r.clone(), &b.s - &a.s]);
        (&(&root * &root) == self).then_some(root)
    }

    /// Renders the element in the expression grammar (`i` for ζ², `zeta8` for ζ).
    pub fn to_expr(&self) -> String {
        let basis = ["", "zeta8", "i", "zeta8^3"];
        let mut out = String::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let term = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => basis[k].to_string(),
                (_, false) => format!("{}*{}", mag, basis[k]),
            };
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// True when the expression form needs parentheses as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        let nonzero = self.coords.iter().filter(|c| !c.is_zero()).count();
        nonzero > 1
    }
}

/// Element r + s·√2 of Q(√2); only used by the square root.
#[derive(Clone, PartialEq)]
struct Quad {
    r: Rational,
    s: Rational,
}

impl Quad {
    fn new(r: Rational, s: Rational) -> Self {
        Self { r, s }
    }

    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.r * q, &self.s * q)
    }

    fn div(&self, other: &Quad) -> Option<Quad> {
        let norm = &other.r * &other.r - rat(2, 1) * &other.s * &other.s;
        if norm.is_zero() {
            return None;
        }
        let conj = Quad::new(other.r.clone(), -other.s.clone());
        Some((self * &conj).scale(&(Rational::one() / norm)))
    }

    fn sqrt(&self) -> Option<Quad> {
        if self.s.is_zero() {
            if let Some(a) = rational_sqrt(&self.r) {
                return Some(Quad::new(a, Rational::zero()));
            }
            let b = rational_sqrt(&(&self.r / rat(2, 1)))?;
            return Some(Quad::new(Rational::zero(), b));
        }
        // a² + 2b² = r, 2ab = s, a² = (r ± m)/2 with m² = r² − 2s²
        let m = rational_sqrt(&(&self.r * &self.r - rat(2, 1) * &self.s * &self.s))?;
        [m.clone(), -m].into_iter().find_map(|m| {
            let a = rational_sqrt(&((&self.r + m) / rat(2, 1)))?;
            if a.is_zero() {
                return None;
            }
            let b = &self.s / (rat(2, 1) * &a);
            let cand = Quad::new(a, b);
            (&(&cand * &cand) == self).then_some(cand)
        })
    }
}

impl Add for &Quad {
    type Output = Quad;
    fn add(self, o: &Quad) -> Quad {
        Quad::new(&self.r + &o.r, &self.s + &o.s)
    }
}

impl Mul for &Quad {
    type Output = Quad;
    fn mul(self, o: &Quad) -> Quad {
        Quad::new(
            &self.r * &o.r + rat(2, 1) * &self.s * &o.s,
            &self.r * &o.s + &self.s * &o.r,
        )
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad::new(-self.r, -self.s)
    }
}

impl Add<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        FieldElem::new(std::array::from_fn(|k| &self.coords[k] + &o.coords[k]))
    }
}

impl Sub<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        FieldElem::new(std::array::from_fn(|k| &self.coords[k] - &o.coords[k]))
    }
}

impl Mul<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        let mut acc: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
        for (j, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in o.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let d = j + k;
                // ζ⁴ = −1
                if d < 4 {
                    acc[d] += prod;
                } else {
                    acc[d - 4] -= prod;
                }
            }
        }
        FieldElem::new(acc)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::new(self.coords.clone().map(|c| -c))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem { (&self).$m(&o) }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, o: &FieldElem) {
        for (c, d) in self.coords.iter_mut().zip(&o.coords) {
            *c += d;
        }
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, o: &FieldElem) {
        for (c, d) in self.coords.iter_mut().zip(&o.coords) {
            *c -= d;
        }
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, o: &FieldElem) {
        *self = &*self * o;
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

impl From<Rational> for FieldElem {
    fn from(q: Rational) -> Self {
        FieldElem::from_rational(q)
    }
}

/// Coordinate encoding `c0,c1,c2,c3`, each coordinate `p/q` or `p`.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2, c3] = &self.coords;
        write!(f, "{c0},{c1},{c2},{c3}")
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({})", self.to_expr())
    }
}

impl FromStr for FieldElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Schema(format!(
                "field element `{s}` must have four comma-separated coordinates"
            )));
        }
        let mut coords: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
        for (slot, part) in coords.iter_mut().zip(parts) {
            *slot = parse_rational(part).ok_or_else(|| Error::Schema(format!("bad rational `{part}` in `{s}`")))?;
        }
        Ok(FieldElem::new(coords))
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
