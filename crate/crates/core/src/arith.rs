//! Lattice invariants, Lefschetz fixed-point identities, moduli dimensions
//! and the finite classification of (order, index) pairs.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::claims::{claim, Claim};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::integer_rank;

/// Integral lattice given by a symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Invariant("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Invariant("Gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(Self { gram })
    }

    /// The hyperbolic plane U(k) with Gram matrix ((0,k),(k,0)).
    pub fn hyperbolic(k: i64) -> Self {
        Self {
            gram: vec![vec![0, k], vec![k, 0]],
        }
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// `(rank, determinant)` of the Gram matrix; the empty lattice has
/// determinant 1.
pub fn lattice_invariants(l: &GramLattice) -> (usize, i128) {
    (integer_rank(l.gram()), determinant(l.gram()))
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Largest lattice dimension accepted by [`isometries_with_trace`].
pub const MAX_ISOMETRY_DIM: usize = 3;

/// All integer matrices `M` with entries in `[-bound, bound]`,
/// `Mᵀ G M = G` and `tr M = trace`.
pub fn isometries_with_trace(l: &GramLattice, trace: i64, bound: i64) -> Result<Vec<Vec<Vec<i64>>>> {
    let n = l.dim();
    if n > MAX_ISOMETRY_DIM {
        return Err(Error::Invariant(format!(
            "isometry search is limited to dimension {MAX_ISOMETRY_DIM}, got {n}"
        )));
    }
    let g = l.gram();
    let width = (2 * bound + 1) as u64;
    let total = width.pow((n * n) as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut m = vec![vec![0i64; n]; n];
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = (c % width) as i64 - bound;
                c /= width;
            }
        }
        if (0..n).map(|i| m[i][i]).sum::<i64>() != trace {
            continue;
        }
        if mat_mul(&transpose(&m), &mat_mul(g, &m)) == g {
            out.push(m);
        }
    }
    Ok(out)
}

/// A choice of sign `±`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> FieldElem {
        match self {
            Sign::Plus => FieldElem::one(),
            Sign::Minus => -FieldElem::one(),
        }
    }
}

/// A curve in the fixed locus, described numerically.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedCurveData {
    pub genus: u32,
    pub self_intersection: i64,
}

impl FixedCurveData {
    /// Smooth curve of the given genus on a K3 surface: `C² = 2g − 2`.
    pub fn smooth(genus: u32) -> Self {
        Self {
            genus,
            self_intersection: 2 * genus as i64 - 2,
        }
    }

    pub fn new(genus: u32, self_intersection: i64) -> Result<Self> {
        let c = Self {
            genus,
            self_intersection,
        };
        if c != Self::smooth(genus) {
            return Err(Error::Invariant(format!(
                "a smooth genus-{genus} curve on a K3 surface has self-intersection {}, not {self_intersection}",
                2 * genus as i64 - 2
            )));
        }
        Ok(c)
    }
}

/// Numerical data of a K3 surface with an automorphism of order n and
/// index I.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericalHodgeData {
    pub rank_t: u32,
    pub picard_rho: u32,
    pub order_n: u32,
    pub index_i: u32,
}

/// Second Betti number of a K3 surface.
pub const K3_B2: u32 = 22;

impl NumericalHodgeData {
    pub fn new(rank_t: u32, picard_rho: u32, order_n: u32, index_i: u32) -> Result<Self> {
        if rank_t + picard_rho != K3_B2 {
            return Err(Error::Invariant(format!(
                "rank T + rho = {} != 22",
                rank_t + picard_rho
            )));
        }
        if index_i == 0 || !order_n.is_multiple_of(index_i) {
            return Err(Error::Invariant(format!(
                "index {index_i} does not divide order {order_n}"
            )));
        }
        Ok(Self {
            rank_t,
            picard_rho,
            order_n,
            index_i,
        })
    }
}

/// Both sides of a holomorphic Lefschetz identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzComparison {
    pub lhs: FieldElem,
    pub rhs: FieldElem,
    pub equal: bool,
}

/// `1 − λ` where λ = ±i is the eigenvalue on the 2-form.
fn holomorphic_lhs(sign: Sign) -> FieldElem {
    &FieldElem::one() - &(&sign.value() * &FieldElem::i())
}

/// Isolated fixed points only: `1 − (±i) = N/((1+1)(1±i))`, solved for N.
pub fn holomorphic_lefschetz_case_b(sign: Sign) -> Result<i64> {
    let lhs = holomorphic_lhs(sign);
    let local = &FieldElem::from_int(2) * &(&FieldElem::one() + &(&sign.value() * &FieldElem::i()));
    let n = &lhs * &local;
    n.as_integer()
        .and_then(|k| i64::try_from(k).ok())
        .ok_or_else(|| Error::NonIntegral(n.to_expr()))
}

/// A fixed curve C and no isolated points:
/// `1 − (±i)` against `(1 − g)/(1 − (±i)) − (±C²·i)/(1 − (±i))²`.
pub fn holomorphic_lefschetz_case_a(sign: Sign, curve: FixedCurveData) -> LefschetzComparison {
    let lhs = holomorphic_lhs(sign);
    let d = lhs.clone();
    let d_inv = d.inv().expect("1 ± i is nonzero");
    let first = &FieldElem::from_int(1 - curve.genus as i64) * &d_inv;
    let second =
        &(&(&sign.value() * &FieldElem::from_int(curve.self_intersection)) * &FieldElem::i()) * &(&d_inv * &d_inv);
    let rhs = &first - &second;
    let equal = lhs == rhs;
    LefschetzComparison { lhs, rhs, equal }
}

/// Fixed-point count of an automorphism of a rational surface acting
/// trivially on H⁰ and H⁴: `2 + tr(H²)`.
pub fn topological_lefschetz_count(trace_h2: i64) -> i64 {
    2 + trace_h2
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `rank(T)/φ(n) − 1`.
pub fn moduli_dimension(rank_t: i64, n: u64) -> Result<i64> {
    let phi = euler_phi(n) as i64;
    if rank_t % phi != 0 {
        return Err(Error::NotDivisible {
            numerator: rank_t,
            divisor: phi,
        });
    }
    Ok(rank_t / phi - 1)
}

/// Rank of an ADE root lattice.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Ade {
    A(u32),
    D(u32),
    E(u32),
}

impl Ade {
    pub fn rank(self) -> u32 {
        match self {
            Ade::A(n) | Ade::D(n) | Ade::E(n) => n,
        }
    }
}

/// Steps of the Picard-number bound for the order-8 index-2 family.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardBound {
    /// Exceptional curves plus an ample class.
    pub naive: u32,
    /// Rounded up to even.
    pub rho_lower: u32,
    pub rank_t_upper: u32,
}

/// Four A₃ and two A₁ singularities plus an ample class give ρ ≥ 15; the
/// Picard number of this K3 surface is even, so ρ ≥ 16 and rank T ≤ 6.
pub fn picard_bound_order8_index2() -> PicardBound {
    let singularities = [Ade::A(3), Ade::A(3), Ade::A(3), Ade::A(3), Ade::A(1), Ade::A(1)];
    let naive = singularities.iter().map(|s| s.rank()).sum::<u32>() + 1;
    let rho_lower = naive + naive % 2;
    PicardBound {
        naive,
        rho_lower,
        rank_t_upper: K3_B2 - rho_lower,
    }
}

/// Pruning rules of the (order, index) classification, applied in order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassificationRule {
    IndexPowerOfTwo,
    SemiSymplecticLowOrder,
    NoIndexEight,
    OddHalfOrder,
    NoSquareOfOrderSix,
    IndexHalving,
    NoOrderSixteenIndexFour,
}

impl ClassificationRule {
    pub const ALL: [ClassificationRule; 7] = [
        ClassificationRule::IndexPowerOfTwo,
        ClassificationRule::SemiSymplecticLowOrder,
        ClassificationRule::NoIndexEight,
        ClassificationRule::OddHalfOrder,
        ClassificationRule::NoSquareOfOrderSix,
        ClassificationRule::IndexHalving,
        ClassificationRule::NoOrderSixteenIndexFour,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClassificationRule::IndexPowerOfTwo => "index-power-of-two",
            ClassificationRule::SemiSymplecticLowOrder => "semi-symplectic-low-order",
            ClassificationRule::NoIndexEight => "no-index-eight",
            ClassificationRule::OddHalfOrder => "odd-half-order",
            ClassificationRule::NoSquareOfOrderSix => "no-square-of-order-six",
            ClassificationRule::IndexHalving => "index-halving",
            ClassificationRule::NoOrderSixteenIndexFour => "no-order-sixteen-index-four",
        }
    }

    /// The claim the rule encodes.
    pub fn citation(self) -> &'static Claim {
        let id = match self {
            ClassificationRule::OddHalfOrder => "semi-symplectic-low-order",
            other => other.id(),
        };
        claim(id).expect("rule citations are registered")
    }

    /// Whether the rule excludes the candidate `(n, i)`; `admissible`
    /// decides smaller candidates for the halving rule.
    fn prunes(self, n: u32, i: u32, admissible: &dyn Fn(u32, u32) -> bool) -> bool {
        match self {
            ClassificationRule::IndexPowerOfTwo => !i.is_power_of_two(),
            ClassificationRule::SemiSymplecticLowOrder => n == 2 || n % 2 == 1,
            ClassificationRule::NoIndexEight => i >= 8,
            // σ^{n/2} would be a non-semi-symplectic automorphism of odd order.
            ClassificationRule::OddHalfOrder => i == 2 && (n / 2) % 2 == 1,
            ClassificationRule::NoSquareOfOrderSix => i == 2 && n / 2 == 6,
            ClassificationRule::IndexHalving => i >= 4 && !admissible(n / 2, i / 2),
            ClassificationRule::NoOrderSixteenIndexFour => i == 4 && n == 16,
        }
    }
}

/// A candidate removed by a rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrunedPair {
    pub order: u32,
    pub index: u32,
    pub rule: ClassificationRule,
}

/// Survivors and pruning trace of the classification search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub admissible: BTreeSet<(u32, u32)>,
    pub pruned: Vec<PrunedPair>,
}

/// Highest order of a semi-symplectic automorphism.
pub const SEMI_SYMPLECTIC_MAX_ORDER: u32 = 6;
/// Candidate indices searched; larger indices are pruned by the same rule as 8.
pub const MAX_CANDIDATE_INDEX: u32 = 8;

fn first_pruning_rule(n: u32, i: u32) -> Option<ClassificationRule> {
    let admissible = |n2: u32, i2: u32| first_pruning_rule(n2, i2).is_none();
    ClassificationRule::ALL
        .into_iter()
        .find(|r| r.prunes(n, i, &admissible))
}

/// Candidates `(n, I)` with `2 ≤ I ≤ 8` and `n = I·m`, `1 ≤ m ≤ 6` (σ^I is
/// semi-symplectic of order m), filtered by [`ClassificationRule::ALL`].
pub fn admissible_pairs() -> Classification {
    let mut admissible = BTreeSet::new();
    let mut pruned = Vec::new();
    for i in 2..=MAX_CANDIDATE_INDEX {
        for m in 1..=SEMI_SYMPLECTIC_MAX_ORDER {
            let n = i * m;
            match first_pruning_rule(n, i) {
                Some(rule) => pruned.push(PrunedPair {
                    order: n,
                    index: i,
                    rule,
                }),
                None => {
                    admissible.insert((n, i));
                }
            }
        }
    }
    Classification { admissible, pruned }
}

/// Orders of finite automorphisms: semi-symplectic orders `1..=6` together
/// with the orders of admissible non-semi-symplectic pairs.
pub fn allowed_orders() -> BTreeSet<u32> {
    (1..=SEMI_SYMPLECTIC_MAX_ORDER)
        .chain(admissible_pairs().admissible.into_iter().map(|(n, _)| n))
        .collect()
}
