//! Registry of the mathematical statements the engine checks or assumes.
//! Certificate records and classification rules cite these by id.

use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    /// Checked by exact computation.
    Verified,
    /// Taken as an input assumption and recorded, not checked.
    Assumed,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub status: ClaimStatus,
}

const fn verified(id: &'static str, statement: &'static str) -> Claim {
    Claim {
        id,
        statement,
        status: ClaimStatus::Verified,
    }
}

const fn assumed(id: &'static str, statement: &'static str) -> Claim {
    Claim {
        id,
        statement,
        status: ClaimStatus::Assumed,
    }
}

pub const CLAIMS: &[Claim] = &[
    verified("horikawa-support", "Horikawa branch curves are supported on 4 <= i+2j <= 8, 0 <= i,j <= 4"),
    verified("invariance-order4-index2", "the six-parameter family is preserved by sigma1"),
    verified("invariance-order8-index4", "the three-parameter subfamily is preserved by sigma2"),
    verified("invariance-order8-index2", "the four-parameter family is preserved by sigma3"),
    verified("specialization-order8-index4", "sigma2 preserves the six-parameter family exactly on C=-iA, E=-iD, F=-iB"),
    verified("order-sigma1", "sigma1 has order 4"),
    verified("order-sigma2", "sigma2 has order 8 and squares to sigma1"),
    verified("order-sigma3", "sigma3 has order 8"),
    verified("bicanonical-sigma1", "sigma1 negates the bi-canonical form"),
    verified("bicanonical-sigma2", "sigma2 multiplies the bi-canonical form by -i"),
    verified("bicanonical-sigma3", "sigma3 negates the bi-canonical form"),
    verified("k3-cover", "g(Y,Z) = f(YZ,Z^2)/Z^4 has bidegree (4,4) and is invariant under (Y,Z) -> (-Y,-Z)"),
    verified("bis-inversion", "Y^4 Z^4 g(1/Y,1/Z) = -g(Y,Z) on the K3 cover of the order-4 family"),
    verified("bis-rotation", "Z^4 g(1/Z,Y) = i g(Y,Z) on the K3 cover of the order-8 index-4 family"),
    verified("epsilon-free", "(W,Y,Z) -> (-W,-Y,-Z) is free when g is nonzero at the four corners of P1xP1"),
    verified("k3-lift-eigenvalue", "the lifts of sigma1 act on the K3 2-form by a primitive 4th root of unity"),
    verified("klein-four-normal-form", "iota and (1/Y,1/Z) generate a Klein four-group; its order-4 square roots among monomial maps are (+-1/Z, +-Y) up to inverse"),
    verified("finite-fixed-points", "nontrivial finite-order automorphisms of P1xP1 fix 2 + trace(NS) points"),
    verified("lefschetz-curve-case", "the holomorphic Lefschetz identity fails for a fixed curve of genus 9"),
    verified("lefschetz-point-case", "the holomorphic Lefschetz identity forces exactly 4 isolated fixed points"),
    verified("u2-trivial-action", "an isometry of U(2) with trace 2 and small entries is the identity"),
    verified("semi-symplectic-low-order", "automorphisms of order 2 or odd order are semi-symplectic"),
    verified("semi-symplectic-order-bound", "semi-symplectic automorphisms have order at most 6"),
    verified("index-power-of-two", "the index of an automorphism is a power of 2"),
    verified("no-square-of-order-six", "no index-2 automorphism has square of order 6"),
    verified("no-order-sixteen-index-four", "no index-4 automorphism has square of order 8"),
    verified("no-index-eight", "there are no automorphisms of index 8 or higher"),
    verified("index-halving", "the square of an index-I automorphism has index I/2"),
    verified("admissible-pairs", "(order, index) of a non-semi-symplectic automorphism is (4,2), (8,4) or (8,2)"),
    verified("allowed-orders", "finite automorphism orders lie in {1,2,3,4,5,6,8}"),
    verified("moduli-dimension", "the moduli dimension is rank(T)/phi(n) - 1"),
    verified("picard-bound", "four A3 and two A1 singularities force rho >= 16, so rank(T) <= 6"),
    verified("moduli-numbers", "the three families have 5, 2 and 2 moduli"),
    verified("alpha-scaling", "(y,z) -> (alpha y, alpha z) acts on (A,B,C,D) with weights (6,4,4,2)"),
    verified("homothety", "scaling all parameters by a common factor gives isomorphic surfaces"),
    verified("cover-invariance", "a map preserves the double-cover equation identically in coordinates and parameters"),
    verified("map-order", "a map has finite order at most 16"),
    verified("form-eigenvalue", "a map acts on the invariant form by a root of unity"),
    assumed("complete-identifications", "homothety (and alpha-scaling for the last family) are the only identifications between members"),
    assumed("quotient-is-p1xp1", "the quotient of the K3 cover by the index-4 lift is P1xP1 rather than F2"),
    assumed("k-minus-rank", "the common (-1)-eigenlattice of epsilon and the lifted involution has rank at least rank(T) = 12"),
    assumed("monomial-search-scope", "uniqueness of the rotation square roots is checked only among monomial maps"),
];

pub fn claim(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn ids_are_unique() {
        let ids: BTreeSet<_> = CLAIMS.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), CLAIMS.len());
        assert!(claim("admissible-pairs").is_some());
        assert!(claim("nope").is_none());
    }
}
