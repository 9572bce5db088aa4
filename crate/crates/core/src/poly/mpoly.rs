//! Sparse multivariate polynomials over Q(ζ₈).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::FieldElem;

use super::vars::{Var, VarTable};

/// Power product of variables, stored as `(var, exponent)` pairs sorted by
/// variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Self(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        pairs
            .into_iter()
            .fold(Self::one(), |acc, (v, e)| &acc * &Self::var_pow(v, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(v, e)| other.exp(*v) >= *e)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let r = e - other.exp(v);
                    (r > 0).then_some((v, r))
                })
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let m = e.min(other.exp(v));
                    (m > 0).then_some((v, m))
                })
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        (self * other).div(&self.gcd(other))
    }

    /// Removes the given variables from the monomial.
    pub fn without(&self, vars: &[Var]) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| !vars.contains(v)).collect())
    }

    /// Keeps only the given variables.
    pub fn restricted_to(&self, vars: &[Var]) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| vars.contains(v)).collect())
    }

    pub fn display<'a>(&'a self, table: &'a VarTable) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, table }
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

/// Graded lexicographic order; variables with smaller index rank higher.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(&eb);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v:?}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    table: &'a VarTable,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.mono.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.table.name(*v))?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial: monomial → nonzero coefficient. The zero polynomial is
/// the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(FieldElem::one())
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(FieldElem::one(), Monomial::var(v))
    }

    pub fn term(c: FieldElem, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term, if the polynomial is a nonzero monomial times a scalar.
    pub fn as_term(&self) -> Option<(&Monomial, &FieldElem)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    /// Sorted list of variables that occur.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Largest monomial dividing every term (1 for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        if m.is_one() {
            return self.clone();
        }
        MPoly {
            terms: self.terms.iter().map(|(k, c)| (k * m, c.clone())).collect(),
        }
    }

    /// Divides every term by `m`, which must divide the monomial content.
    pub fn div_monomial(&self, m: &Monomial) -> MPoly {
        if m.is_one() {
            return self.clone();
        }
        MPoly {
            terms: self.terms.iter().map(|(k, c)| (k.div(m), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(k, d)| (k.clone(), d * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let lowered = m.div(&Monomial::var(v));
            out.add_term(lowered, c * &FieldElem::from_int(e as i64));
        }
        out
    }

    /// Division with remainder by a single divisor in graded-lex order.
    /// The remainder is zero exactly when `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &MPoly) -> Result<(MPoly, MPoly)> {
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut p = self.clone();
        let mut quot = MPoly::zero();
        let mut rem = MPoly::zero();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = m.div(lm);
                let qc = &c * &lc_inv;
                for (dm, dc) in &divisor.terms {
                    p.add_term(dm * &qm, -(dc * &qc));
                }
                quot.add_term(qm, qc);
            } else {
                p.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((quot, rem))
    }

    /// Returns `r` with `self = divisor · r`, or an indivisibility error
    /// carrying the remainder.
    pub fn exact_divide(&self, divisor: &MPoly) -> Result<MPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Indivisible {
                remainder: format!("{r:?}"),
            })
        }
    }

    /// Groups terms by their exponents in `vars`: the result maps each
    /// monomial in `vars` to the coefficient polynomial in the other variables.
    pub fn collect_in(&self, vars: &[Var]) -> BTreeMap<Monomial, MPoly> {
        let mut out: BTreeMap<Monomial, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.restricted_to(vars))
                .or_default()
                .add_term(m.without(vars), c.clone());
        }
        out
    }

    /// Applies a scalar map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&FieldElem) -> FieldElem) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Renames variables through `f` (exponents are kept).
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (f(v), e))),
                c.clone(),
            )
        }))
    }

    pub fn check_degree(&self, cap: u32) -> Result<()> {
        let degree = self.total_degree();
        if degree > cap {
            Err(Error::DegreeCap { degree, cap })
        } else {
            Ok(())
        }
    }

    /// Renders in the expression grammar, highest term first.
    pub fn display<'a>(&'a self, table: &'a VarTable) -> impl fmt::Display + 'a {
        PolyDisplay {
            poly: self,
            table: Some(table),
        }
    }
}

struct PolyDisplay<'a> {
    poly: &'a MPoly,
    table: Option<&'a VarTable>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let mono = match self.table {
                Some(t) => m.display(t).to_string(),
                None => format!("{m:?}"),
            };
            let mut coeff = c.to_expr();
            let mut negative = false;
            if !c.is_compound() && coeff.starts_with('-') {
                negative = true;
                coeff.remove(0);
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let coeff_is_one = coeff == "1" && !c.is_compound();
            match (m.is_one(), coeff_is_one, c.is_compound()) {
                (true, _, true) => write!(f, "({coeff})")?,
                (true, _, false) => write!(f, "{coeff}")?,
                (false, true, _) => write!(f, "{mono}")?,
                (false, false, true) => write!(f, "({coeff})*{mono}")?,
                (false, false, false) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            PolyDisplay {
                poly: self,
                table: None
            }
        )
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma * mb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, o: MPoly) -> MPoly { (&self).$m(&o) }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, o: &MPoly) -> MPoly { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl From<FieldElem> for MPoly {
    fn from(c: FieldElem) -> Self {
        MPoly::constant(c)
    }
}
