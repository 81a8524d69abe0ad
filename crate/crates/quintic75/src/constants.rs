//! The numeric inputs that the rest of the crate does not re-derive:
//! Hodge-theoretic invariants of the surfaces involved. Everything else in
//! a certificate is recomputed on every run; the values in this module are
//! the explicit trust boundary, and every number a certificate emits is
//! marked as either `computed` or one of these `constant`s.

use serde::Serialize;

/// Second Betti number of a smooth quintic surface in ℙ³.
pub const QUINTIC_B2: u32 = 53;

/// Geometric genus `h^{2,0}` of a smooth quintic surface.
pub const QUINTIC_PG: u32 = 4;

/// Second Betti number of a K3 surface.
pub const K3_B2: u32 = 22;

/// The transcendental lattice of the quintic decomposes into this many
/// Galois-conjugate copies of the transcendental lattice of the K3
/// quotient `X`, so `rank T(S) = 4 · rank T(X)`.
pub const TRANSCENDENTAL_COPIES: u32 = 4;

/// The two possible ranks of `T(S)`: the two ranks of `T(X)` compatible
/// with the elliptic fibration (2 or 3), times [`TRANSCENDENTAL_COPIES`].
pub const QUINTIC_RANK_T: [u32; 2] = [8, 12];

/// Picard number of the Godeaux quotient `Q = S/(ℤ/5)`; equals `b₂(Q)`
/// because `p_g(Q) = 0`.
pub const GODEAUX_RHO: u32 = 9;

/// Euler number of the Godeaux quotient (the rotation acts freely, so
/// `e(Q) = e(S)/5`).
pub const GODEAUX_EULER: u32 = 11;

/// Characteristics where the pencil member at `λ = 0` is singular. In
/// characteristic 2 the parameter `a = −2/(b+2)` vanishes, so the quintic
/// reduces to that member; 2 is not in this set, which is why reduction
/// mod 2 stays good for the quintic.
pub const S0_BAD_CHARACTERISTICS: [u64; 3] = [3, 13, 17];

/// Primes of bad reduction of the quintic. Recomputed from resultants by
/// `fibration::bad_primes_quintic`; frozen here for guards that need the
/// set without redoing that analysis.
pub const QUINTIC_BAD_PRIMES: [u64; 5] = [3, 5, 11, 17, 433];

/// Primes of bad reduction of the K3 quotient `X`, recomputed by
/// `fibration::bad_primes_k3`.
pub const K3_BAD_PRIMES: [u64; 6] = [2, 3, 5, 11, 17, 433];

/// Primes where exactly one I₁+I₂ fiber pair of the fibration of `X`
/// merges into a III fiber without breaking smoothness.
pub const K3_MERGE_ONLY_PRIMES: [u64; 2] = [83, 151];

/// Origin marker attached to every number a certificate emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Recomputed from scratch by this crate on every run.
    Computed,
    /// Taken from this module as an input.
    Constant,
}

/// A value paired with where it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Claim<T> {
    pub value: T,
    pub provenance: Provenance,
}

/// A value this run computed.
pub fn computed<T>(value: T) -> Claim<T> {
    Claim {
        value,
        provenance: Provenance::Computed,
    }
}

/// A value taken from this module.
pub fn constant<T>(value: T) -> Claim<T> {
    Claim {
        value,
        provenance: Provenance::Constant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hodge_numbers_are_consistent() {
        // b₂ = h^{2,0} + h^{1,1} + h^{0,2} with h^{1,1} = 45 for a quintic
        assert_eq!(QUINTIC_B2, 2 * QUINTIC_PG + 45);
        // a K3 has p_g = 1 and h^{1,1} = 20
        assert_eq!(K3_B2, 2 * 1 + 20);
        // rank-T alternatives are 4 copies of rank 2 or 3
        assert_eq!(
            QUINTIC_RANK_T,
            [2 * TRANSCENDENTAL_COPIES, 3 * TRANSCENDENTAL_COPIES]
        );
    }

    #[test]
    fn godeaux_numbers_are_consistent() {
        // e(S) = b₂ + 2 for a simply connected surface, and the quotient
        // by a free order-5 action divides it by 5
        assert_eq!(5 * GODEAUX_EULER, QUINTIC_B2 + 2);
        // b₂(Q) = e(Q) − 2 (b₁ = 0), and ρ(Q) = b₂(Q) since p_g(Q) = 0
        assert_eq!(GODEAUX_RHO, GODEAUX_EULER - 2);
    }

    #[test]
    fn bad_prime_sets_are_nested_as_expected() {
        // the quintic's bad primes are exactly the K3's without 2
        assert_eq!(
            K3_BAD_PRIMES.to_vec(),
            std::iter::once(2)
                .chain(QUINTIC_BAD_PRIMES.iter().copied())
                .collect::<Vec<_>>()
        );
        assert!(!S0_BAD_CHARACTERISTICS.contains(&2));
    }

    #[test]
    fn provenance_serializes_lowercase() {
        assert_eq!(
            serde_json::to_string(&computed(41u32)).unwrap(),
            r#"{"value":41,"provenance":"computed"}"#
        );
        assert_eq!(
            serde_json::to_string(&constant(53u32)).unwrap(),
            r#"{"value":53,"provenance":"constant"}"#
        );
    }
}
