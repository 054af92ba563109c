use super::ring::qk_compute;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GSet};
use std::sync::Arc;

/// For a free action: every component sits at the identity tuple, and the
/// total rank equals `|X/G| = rank QK_{n,e}(X/G)`. The comparison is made for
/// every `n`, not only `n = 1`.
pub fn verify_free_action(x: &GSet, n: usize) -> Result<bool> {
    if !x.is_free() {
        return Err(Error::NotFree);
    }
    let ring = qk_compute(x, n)?;
    let only_identity = ring.components().iter().all(|c| c.sigma.is_identity());
    let orbits = x.orbit_count();
    let trivial = Arc::new(FiniteGroup::trivial(1));
    let quotient = GSet::new(trivial, orbits, Vec::new())?;
    let quotient_rank = qk_compute(&quotient, n)?.rank();
    Ok(only_identity && ring.rank() == orbits && quotient_rank == orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_group;

    #[test]
    fn regular_actions() {
        let z2 = corpus_group("Z2").unwrap();
        assert!(verify_free_action(&GSet::regular(z2.clone()), 1).unwrap());
        assert!(verify_free_action(&GSet::regular(corpus_group("Z3").unwrap()), 2).unwrap());
        assert!(verify_free_action(&GSet::point(corpus_group("trivial").unwrap()), 1).unwrap());
        assert!(matches!(
            verify_free_action(&GSet::point(z2), 1),
            Err(Error::NotFree)
        ));
    }
}
