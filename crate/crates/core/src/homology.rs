//! Rational Betti-number bookkeeping for the complement `M = X ∖ D` of a
//! toroidal boundary with `k` components.
//!
//! `U` is a tubular neighborhood of `D` (homotopic to `k` disjoint 2-tori)
//! and `V = U ∩ M` is its punctured version (homotopic to `k` nilmanifolds).
//! Mayer–Vietoris for `X = M ∪ U` then pins `b₁(M)` and relates `b₂`, `b₃`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Ranks of `Hᵢ(·; Q)` for `i = 0..4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BettiVector(pub [u64; 5]);

impl BettiVector {
    pub fn new(b0: u64, b1: u64, b2: u64, b3: u64, b4: u64) -> Self {
        BettiVector([b0, b1, b2, b3, b4])
    }

    pub fn b(&self, i: usize) -> u64 {
        self.0[i]
    }

    /// `Σ (-1)ⁱ bᵢ`.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, b)| if i % 2 == 0 { *b as i64 } else { -(*b as i64) })
            .sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [b0, b1, b2, b3, b4] = self.0;
        write!(f, "({b0}, {b1}, {b2}, {b3}, {b4})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MvTables {
    pub k: u64,
    pub u: BettiVector,
    pub v: BettiVector,
}

/// Homology of `U` (k tori: `1, 2, 1` each) and `V` (k nilmanifolds with
/// `b₁ = b₂ = 2` each).
pub fn mv_tables(k: u64) -> Result<MvTables> {
    if k < 1 {
        return Err(Error::InvalidParameter("boundary component count must be ≥ 1".into()));
    }
    Ok(MvTables {
        k,
        u: BettiVector::new(k, 2 * k, k, 0, 0),
        v: BettiVector::new(k, 2 * k, 2 * k, k, 0),
    })
}

/// Betti numbers of a bielliptic surface blown up in `χ` points:
/// `b₀ = b₄ = 1`, `b₁ = b₃ = 2` and `b₂ = χ + 2` from `χ = 2 - 2b₁ + b₂`.
pub fn betti_of_x(chi: u64) -> BettiVector {
    BettiVector::new(1, 2, chi + 2, 2, 1)
}

/// Exact constraints on `bᵢ(M)` forced by the sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenConstraints {
    pub k: u64,
    pub betti_x: BettiVector,
    /// Rank of the image of `H₂(X) → H₁(V)`.
    pub ell: u64,
    pub ell_derivation: String,
    pub b1_open: u64,
    pub b3_open_lower_bound: u64,
    /// `b₂(M) - b₃(M)`.
    pub b2_minus_b3_open: i64,
    /// `χ(M)` implied by the above, equal to `χ(X)` as the boundary is elliptic.
    pub euler_open: i64,
}

/// The degree-one segment gives `b₁(M) + 2k = 2k - ℓ + b₁(X)`; together with
/// `b₁(M) ≥ b₁(X)` this forces `ℓ = 0`.
pub fn betti_of_open(bx: &BettiVector, k: u64) -> Result<OpenConstraints> {
    let tables = mv_tables(k)?;
    let ell = 0;
    let b1_open = bx.b(1) + tables.v.b(1) - ell - tables.u.b(1);
    let b2_minus_b3_open = 1 - bx.b(3) as i64 + bx.b(2) as i64;
    let euler_open = 1 - b1_open as i64 + b2_minus_b3_open;
    Ok(OpenConstraints {
        k,
        betti_x: *bx,
        ell,
        ell_derivation: "b1(M) = b1(X) - ell and b1(M) >= b1(X) give ell = 0".into(),
        b1_open,
        b3_open_lower_bound: k - 1,
        b2_minus_b3_open,
        euler_open,
    })
}

/// Rank of the free fundamental group of a genus-`g` surface with `p ≥ 1`
/// punctures.
pub fn punctured_free_rank(genus: u64, punctures: u64) -> Result<u64> {
    if punctures == 0 {
        return Err(Error::InvalidParameter("a punctured surface needs at least one puncture".into()));
    }
    Ok(2 * genus + punctures - 1)
}

/// Integer data of the fibration `π₁(F) → π₁(M) → π₁(E) → 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationSequence {
    /// Rank of `π₁` of the elliptic base.
    pub target_rank: u64,
    pub generic_fiber_genus: u64,
    pub generic_punctures: u64,
    pub generic_fiber_free_rank: u64,
    pub singular_fiber_genus: u64,
    pub singular_punctures: u64,
    pub singular_fiber_free_rank: u64,
    pub conclusions: Vec<String>,
}

pub fn fibration_sequence_report(generic_punctures: u64, singular_punctures: u64) -> Result<FibrationSequence> {
    let generic_fiber_free_rank = punctured_free_rank(1, generic_punctures)?;
    let singular_fiber_free_rank = punctured_free_rank(0, singular_punctures)?;
    Ok(FibrationSequence {
        target_rank: 2,
        generic_fiber_genus: 1,
        generic_punctures,
        generic_fiber_free_rank,
        singular_fiber_genus: 0,
        singular_punctures,
        singular_fiber_free_rank,
        conclusions: vec![
            "the image of the fiber group is finitely generated".into(),
            "the commutator subgroup has finite index in the kernel onto Z^2".into(),
            "hence the commutator subgroup is finitely generated".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        let t = mv_tables(1).unwrap();
        assert_eq!(t.u, BettiVector::new(1, 2, 1, 0, 0));
        assert_eq!(t.v, BettiVector::new(1, 2, 2, 1, 0));
        assert_eq!(mv_tables(3).unwrap().v.b(1), 6);
        assert_eq!(mv_tables(2).unwrap().v.b(3), 2);
        assert!(mv_tables(0).is_err());
        for k in 1..20 {
            let t = mv_tables(k).unwrap();
            assert_eq!(t.u.euler_characteristic(), 0);
            assert_eq!(t.v.euler_characteristic(), 0);
        }
    }

    #[test]
    fn open_constraints() {
        for n in 1..30 {
            let bx = betti_of_x(n);
            assert_eq!(bx.euler_characteristic(), n as i64);
            let c = betti_of_open(&bx, n + 1).unwrap();
            assert_eq!(c.b1_open, 2);
            assert_eq!(c.b3_open_lower_bound, n);
            assert_eq!(c.euler_open, n as i64);
            // independent of k
            assert_eq!(betti_of_open(&bx, 2).unwrap().b2_minus_b3_open, c.b2_minus_b3_open);
        }
        assert_eq!(betti_of_open(&betti_of_x(1), 1).unwrap().b3_open_lower_bound, 0);
    }

    #[test]
    fn fibration() {
        let f = fibration_sequence_report(3, 4).unwrap();
        assert_eq!(f.target_rank, 2);
        assert_eq!(f.generic_fiber_free_rank, 4);
        assert_eq!(f.singular_fiber_free_rank, 3);
        assert!(punctured_free_rank(1, 0).is_err());
    }
}
