//! Rational functions, substitution, and Jacobians.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::FieldElem;

use super::mpoly::{MPoly, Monomial};
use super::vars::{Var, VarTable};

/// Total-degree cap applied to intermediate polynomials during substitution.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// Quotient `num / den` with `den ≠ 0`.
///
/// Kept lightly reduced: common monomial content is cancelled, the
/// denominator's leading coefficient is 1, and one side is divided out when it
/// exactly divides the other. Equality is decided by cross-multiplication, so
/// a non-reduced representation never gives a wrong answer.
#[derive(Clone)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }

    /// The polynomial value, if the denominator is a constant.
    pub fn as_polynomial(&self) -> Option<MPoly> {
        let d = self.den.as_constant()?;
        Some(self.num.scale(&d.inv().ok()?))
    }

    fn normalized(mut num: MPoly, mut den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        if !g.is_one() {
            num = num.div_monomial(&g);
            den = den.div_monomial(&g);
        }
        if den.len() > 1 {
            if num.total_degree() >= den.total_degree() {
                if let Ok(q) = num.exact_divide(&den) {
                    return Self::from_poly(q);
                }
            }
            if num.len() > 1 && den.total_degree() >= num.total_degree() {
                if let Ok(q) = den.exact_divide(&num) {
                    num = MPoly::one();
                    den = q;
                }
            }
        }
        let lc = den.leading_term().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    /// The constant value, if the function does not depend on any variable.
    pub fn as_constant(&self) -> Option<FieldElem> {
        if self.num.is_zero() {
            return Some(FieldElem::zero());
        }
        let ln = self.num.leading_term()?.1;
        let ld = self.den.leading_term()?.1;
        let c = ln * &ld.inv().ok()?;
        (self.num == self.den.scale(&c)).then_some(c)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let p = Self {
            num: self.num.pow(e.unsigned_abs()),
            den: self.den.pow(e.unsigned_abs()),
        };
        if e < 0 {
            p.inv()
        } else {
            Ok(Self::normalized(p.num, p.den))
        }
    }

    pub fn scale(&self, c: &FieldElem) -> RatFunc {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn partial_derivative(&self, v: Var) -> RatFunc {
        let dn = self.num.partial_derivative(v);
        let dd = self.den.partial_derivative(v);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        Self::normalized(&(&dn * &self.den) - &(&self.num * &dd), self.den.pow(2))
    }

    /// Applies the assignment to numerator and denominator.
    pub fn substitute(&self, asg: &Assignment) -> Result<RatFunc> {
        let n = poly_substitute(&self.num, asg)?;
        if self.den.as_constant().is_some() {
            return Ok(n.scale(&self.den.as_constant().unwrap().inv()?));
        }
        let d = poly_substitute(&self.den, asg)?;
        n.try_div(&d)
    }

    pub fn check_degree(&self, cap: u32) -> Result<()> {
        self.num.check_degree(cap)?;
        self.den.check_degree(cap)
    }

    pub fn display<'a>(&'a self, table: &'a VarTable) -> impl fmt::Display + 'a {
        RatDisplay { r: self, table }
    }
}

/// True iff `r.num·s.den − s.num·r.den = 0`.
pub fn ratfunc_eq(r: &RatFunc, s: &RatFunc) -> bool {
    &r.num * &s.den == &s.num * &r.den
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        ratfunc_eq(self, o)
    }
}

impl Eq for RatFunc {}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

struct RatDisplay<'a> {
    r: &'a RatFunc,
    table: &'a VarTable,
}

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.r.num.display(self.table);
        if self.r.den.is_one_poly() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", self.r.den.display(self.table))
        }
    }
}

impl MPoly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::normalized(&self.num + &o.num, self.den.clone());
        }
        if let (Some((m1, c1)), Some((m2, c2))) = (self.den.as_term(), o.den.as_term()) {
            let l = m1.lcm(m2);
            let a = self.num.mul_monomial(&l.div(m1)).scale(&c1.inv().unwrap());
            let b = o.num.mul_monomial(&l.div(m2)).scale(&c2.inv().unwrap());
            return RatFunc::normalized(&a + &b, MPoly::term(FieldElem::one(), l));
        }
        RatFunc::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { (&self).$m(&o) }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<MPoly> for RatFunc {
    fn from(p: MPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<FieldElem> for RatFunc {
    fn from(c: FieldElem) -> Self {
        RatFunc::constant(c)
    }
}

/// Variable → rational function substitution. Unassigned variables map to
/// themselves.
#[derive(Clone, Debug)]
pub struct Assignment {
    map: BTreeMap<Var, RatFunc>,
    cap: u32,
}

impl Default for Assignment {
    fn default() -> Self {
        Self::new()
    }
}

impl Assignment {
    pub fn new() -> Self {
        Self {
            map: BTreeMap::new(),
            cap: DEFAULT_DEGREE_CAP,
        }
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn set(mut self, v: Var, r: impl Into<RatFunc>) -> Self {
        self.map.insert(v, r.into());
        self
    }

    pub fn insert(&mut self, v: Var, r: impl Into<RatFunc>) {
        self.map.insert(v, r.into());
    }

    pub fn get(&self, v: Var) -> Option<&RatFunc> {
        self.map.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &RatFunc)> {
        self.map.iter()
    }
}

/// Evaluates `p` at the assignment over the common denominator
/// `∏ den_v^{deg_v(p)}`, then reduces once.
pub fn poly_substitute(p: &MPoly, asg: &Assignment) -> Result<RatFunc> {
    let assigned: Vec<(Var, &RatFunc, u32)> = p
        .variables()
        .into_iter()
        .filter_map(|v| asg.get(v).map(|r| (v, r, p.degree_in(v))))
        .filter(|(v, r, _)| !(r.den.is_one_poly() && r.num == MPoly::var(*v)))
        .collect();
    if assigned.is_empty() {
        return Ok(RatFunc::from_poly(p.clone()));
    }
    let cap = asg.cap;
    let vars: Vec<Var> = assigned.iter().map(|(v, _, _)| *v).collect();
    let mut num_pows: Vec<Vec<MPoly>> = Vec::with_capacity(assigned.len());
    let mut den_pows: Vec<Vec<MPoly>> = Vec::with_capacity(assigned.len());
    for (_, r, top) in &assigned {
        let mut np = vec![MPoly::one()];
        let mut dp = vec![MPoly::one()];
        for k in 1..=*top as usize {
            let n = &np[k - 1] * &r.num;
            n.check_degree(cap)?;
            np.push(n);
            let d = &dp[k - 1] * &r.den;
            d.check_degree(cap)?;
            dp.push(d);
        }
        num_pows.push(np);
        den_pows.push(dp);
    }
    let mut num = MPoly::zero();
    for (m, c) in p.terms() {
        let mut t = MPoly::term(c.clone(), m.without(&vars));
        for (k, (v, _, top)) in assigned.iter().enumerate() {
            let e = m.exp(*v);
            if e > 0 {
                t = &t * &num_pows[k][e as usize];
            }
            if *top > e {
                t = &t * &den_pows[k][(*top - e) as usize];
            }
            t.check_degree(cap)?;
        }
        num = &num + &t;
    }
    let mut den = MPoly::one();
    for (k, (_, _, top)) in assigned.iter().enumerate() {
        den = &den * &den_pows[k][*top as usize];
    }
    den.check_degree(cap)?;
    RatFunc::new(num, den)
}

/// Determinant of the Jacobian of `(fy, fz)` with respect to `vars`.
pub fn jacobian_det2(fy: &RatFunc, fz: &RatFunc, vars: (Var, Var)) -> RatFunc {
    let (a, b) = vars;
    &(&fy.partial_derivative(a) * &fz.partial_derivative(b)) - &(&fy.partial_derivative(b) * &fz.partial_derivative(a))
}

/// Monomial `∏ vᵉ` as a rational function; negative exponents go to the
/// denominator.
pub fn laurent_monomial(pairs: &[(Var, i32)]) -> RatFunc {
    let num = Monomial::from_pairs(pairs.iter().filter(|p| p.1 > 0).map(|&(v, e)| (v, e as u32)));
    let den = Monomial::from_pairs(pairs.iter().filter(|p| p.1 < 0).map(|&(v, e)| (v, (-e) as u32)));
    RatFunc::normalized(MPoly::term(FieldElem::one(), num), MPoly::term(FieldElem::one(), den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars::{PARAM_A, Y_LOWER as Y, Y_UPPER, Z_LOWER as Z, Z_UPPER};

    fn y() -> RatFunc {
        RatFunc::var(Y)
    }
    fn z() -> RatFunc {
        RatFunc::var(Z)
    }
    fn c(n: i64) -> RatFunc {
        RatFunc::constant(FieldElem::from_int(n))
    }

    #[test]
    fn equality_examples() {
        let a = y().try_div(&y().pow(2).unwrap()).unwrap();
        assert_eq!(a, y().inv().unwrap());
        let b = (y().pow(2).unwrap() - c(1)).try_div(&(y() - c(1))).unwrap();
        assert_eq!(b, y() + c(1));
        assert!(b.is_polynomial(), "exact division collapses the quotient");
        assert_ne!(y().inv().unwrap(), z().inv().unwrap());
    }

    #[test]
    fn substitution_examples() {
        // y⁴ with y → 1/y
        let p = MPoly::var(Y).pow(4);
        let asg = Assignment::new().set(Y, y().inv().unwrap());
        assert_eq!(poly_substitute(&p, &asg).unwrap(), y().pow(-4).unwrap());
        // y²z with (y, z) → (YZ, Z²)
        let yu = RatFunc::var(Y_UPPER);
        let zu = RatFunc::var(Z_UPPER);
        let asg = Assignment::new().set(Y, &yu * &zu).set(Z, zu.pow(2).unwrap());
        let p = MPoly::var(Y).pow(2) * MPoly::var(Z);
        let expect = yu.pow(2).unwrap() * zu.pow(4).unwrap();
        assert_eq!(poly_substitute(&p, &asg).unwrap(), expect);
        // identity assignment
        let q = MPoly::var(Y) * MPoly::var(PARAM_A) + MPoly::var(Z).pow(3);
        let asg = Assignment::new().set(Y, y()).set(Z, z());
        assert_eq!(poly_substitute(&q, &asg).unwrap(), RatFunc::from_poly(q.clone()));
    }

    #[test]
    fn substitution_respects_degree_cap() {
        let p = MPoly::var(Y).pow(10);
        let asg = Assignment::new().set(Y, z().pow(7).unwrap()).with_cap(64);
        assert!(matches!(
            poly_substitute(&p, &asg),
            Err(Error::DegreeCap { degree: 70, cap: 64 })
        ));
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian_det2(&y(), &z(), (Y, Z)), c(1));
        let j = jacobian_det2(&y().inv().unwrap(), &z().inv().unwrap(), (Y, Z));
        assert_eq!(j, (y() * z()).pow(-2).unwrap());
        assert_eq!(jacobian_det2(&z(), &y(), (Y, Z)), c(-1));
    }

    #[test]
    fn constants_are_detected() {
        let r = (c(2) * y() + c(2)).try_div(&(y() + c(1))).unwrap();
        assert_eq!(r.as_constant(), Some(FieldElem::from_int(2)));
        assert_eq!(y().as_constant(), None);
        assert_eq!(RatFunc::zero().as_constant(), Some(FieldElem::zero()));
    }

    #[test]
    fn quotient_rule() {
        // d/dy (y/(y+1)) = 1/(y+1)²
        let r = y().try_div(&(y() + c(1))).unwrap();
        let expect = (y() + c(1)).pow(-2).unwrap();
        assert_eq!(r.partial_derivative(Y), expect);
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(y().try_div(&RatFunc::zero()).unwrap_err(), Error::DivisionByZero);
        assert!(RatFunc::new(MPoly::one(), MPoly::zero()).is_err());
    }
}
