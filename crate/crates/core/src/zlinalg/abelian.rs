//! Invariant-factor presentations of finitely generated abelian groups.

use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// A finitely generated abelian group Z/d_1 x ... x Z/d_k x Z^free_rank
/// with d_1 | d_2 | ... | d_k and every d_i >= 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroupInvariants {
    pub fn new(torsion: Vec<BigInt>, free_rank: usize) -> Self {
        for d in &torsion {
            assert!(*d >= BigInt::from(2), "invariant factors must be >= 2");
        }
        for w in torsion.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "invariant factors must form a divisibility chain"
            );
        }
        AbelianGroupInvariants { torsion, free_rank }
    }

    pub fn trivial() -> Self {
        AbelianGroupInvariants {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn from_torsion_u64(torsion: &[u64]) -> Self {
        AbelianGroupInvariants::new(torsion.iter().map(|&d| BigInt::from(d)).collect(), 0)
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.torsion.iter().map(BigInt::to_string).collect();
        write!(f, "[{}]", parts.join(","))?;
        if self.free_rank > 0 {
            write!(f, "+Z^{}", self.free_rank)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
