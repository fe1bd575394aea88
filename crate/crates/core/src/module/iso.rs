//! Isomorphism testing and locality of endomorphism rings by searching a
//! hom space for invertible points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

use super::hom::{hom_space, HomSpace};
use super::structure::{loewy_layers, socle};
use super::Representation;

/// Thresholds shared by every search over a hom space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchPolicy {
    /// Enumerate all `q^h` points when this many or fewer.
    pub exhaustive_limit: u64,
    /// Otherwise draw this many pseudo-random points.
    pub random_samples: u64,
    pub seed: u64,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy { exhaustive_limit: 1_000_000, random_samples: 100_000, seed: 0x7117_b3c4 }
    }
}

#[derive(Clone, Debug)]
pub enum IsoDecision {
    /// An invertible intertwiner `source -> target`.
    Yes(Matrix),
    No(String),
    Undecided { samples: u64 },
}

impl IsoDecision {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoDecision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoDecision::No(_))
    }

    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            IsoDecision::Yes(w) => Some(w),
            _ => None,
        }
    }
}

/// Number of points of `GF(q)^h`, if it fits the limit.
fn space_size(q: u32, h: usize, limit: u64) -> Option<u64> {
    let mut n: u64 = 1;
    for _ in 0..h {
        n = n.checked_mul(q as u64)?;
        if n > limit {
            return None;
        }
    }
    Some(n)
}

/// Visits coefficient vectors of a hom space, exhaustively or by sampling,
/// until `visit` returns true. Returns whether it stopped early and whether
/// the search was exhaustive.
fn search(field: &Field, h: usize, policy: &SearchPolicy, mut visit: impl FnMut(&[Scalar]) -> bool) -> (bool, bool) {
    let q = field.size();
    let elements: Vec<Scalar> = field.elements().collect();
    if let Some(total) = space_size(q, h, policy.exhaustive_limit) {
        let mut digits = vec![0usize; h];
        let mut coeffs = vec![Scalar::ZERO; h];
        for _ in 1..total {
            // odometer increment, skipping the zero vector
            for k in 0..h {
                digits[k] += 1;
                if digits[k] == q as usize {
                    digits[k] = 0;
                    coeffs[k] = elements[0];
                } else {
                    coeffs[k] = elements[digits[k]];
                    break;
                }
            }
            if visit(&coeffs) {
                return (true, true);
            }
        }
        (false, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
        let mut coeffs = vec![Scalar::ZERO; h];
        for _ in 0..policy.random_samples {
            for c in coeffs.iter_mut() {
                *c = elements[rng.gen_range(0..elements.len())];
            }
            if visit(&coeffs) {
                return (true, false);
            }
        }
        (false, false)
    }
}

/// Decides `m ≅ n`. Cheap invariants are compared first; then the hom space
/// is searched for an invertible point.
pub fn is_isomorphic(m: &Representation, n: &Representation, policy: &SearchPolicy) -> Result<IsoDecision> {
    let homs = hom_space(m, n)?;
    if m.dim() != n.dim() {
        return Ok(IsoDecision::No(format!("dimensions differ ({} vs {})", m.dim(), n.dim())));
    }
    if m.dim() == 0 {
        return Ok(IsoDecision::Yes(Matrix::zeros(m.field(), 0, 0)));
    }
    if homs.dim() == 0 {
        return Ok(IsoDecision::No("no nonzero homomorphism".into()));
    }
    let (lm, ln) = (loewy_layers(m), loewy_layers(n));
    if lm != ln {
        return Ok(IsoDecision::No(format!("Loewy layers differ ({lm:?} vs {ln:?})")));
    }
    let (sm, sn) = (socle(m).dim(), socle(n).dim());
    if sm != sn {
        return Ok(IsoDecision::No(format!("socle dimensions differ ({sm} vs {sn})")));
    }
    let end_m = hom_space(m, m)?.dim();
    let back = hom_space(n, m)?.dim();
    if end_m != back || end_m != homs.dim() {
        return Ok(IsoDecision::No(format!(
            "hom dimensions preclude isomorphism (End = {end_m}, Hom(M,N) = {}, Hom(N,M) = {back})",
            homs.dim()
        )));
    }
    Ok(search_invertible(&homs, m.field(), policy))
}

fn search_invertible(homs: &HomSpace, field: &Field, policy: &SearchPolicy) -> IsoDecision {
    let d = homs.source_dim;
    let mut witness = None;
    let (found, exhaustive) = search(field, homs.dim(), policy, |c| {
        let f = homs.combination(c).expect("nonempty");
        if f.rank() == d {
            witness = Some(f);
            true
        } else {
            false
        }
    });
    match (found, exhaustive) {
        (true, _) => IsoDecision::Yes(witness.expect("set on success")),
        (false, true) => IsoDecision::No(format!("no invertible point among all {}^{} homomorphisms", field.size(), homs.dim())),
        (false, false) => IsoDecision::Undecided { samples: policy.random_samples },
    }
}

/// Whether every endomorphism is invertible or nilpotent, which for a
/// finite-dimensional module is equivalent to indecomposability. A sampled
/// search that finds no counterexample returns true.
pub fn is_endomorphism_ring_local(m: &Representation, policy: &SearchPolicy) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let ends = hom_space(m, m)?;
    let d = m.dim();
    let (bad, _) = search(m.field(), ends.dim(), policy, |c| {
        let f = ends.combination(c).expect("nonempty");
        !(f.rank() == d || f.is_nilpotent())
    });
    Ok(!bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::module::projective_modules;

    #[test]
    fn module_isomorphic_to_itself() {
        let a = data::ex1().unwrap().into_shared();
        let p = projective_modules(&a).remove(0);
        let d = is_isomorphic(&p.rep, &p.rep, &SearchPolicy::default()).unwrap();
        let w = d.witness().expect("yes");
        assert_eq!(w.rank(), p.dim());
    }

    #[test]
    fn distinct_simples_not_isomorphic() {
        let a = data::ex1().unwrap().into_shared();
        let s0 = Representation::simple(&a, 0);
        let s1 = Representation::simple(&a, 1);
        assert!(is_isomorphic(&s0, &s1, &SearchPolicy::default()).unwrap().is_no());
    }

    #[test]
    fn decomposable_module_detected() {
        let a = data::kx2().into_shared();
        let s = Representation::simple(&a, 0);
        let sum = Representation::direct_sum(&[&s, &s]).unwrap();
        let policy = SearchPolicy::default();
        assert!(!is_endomorphism_ring_local(&sum, &policy).unwrap());
        assert!(is_endomorphism_ring_local(&s, &policy).unwrap());
    }

    #[test]
    fn random_search_can_stay_undecided() {
        // S + S vs S + S over GF(3) has a 4-dimensional hom space; with no
        // samples allowed the search must not claim anything
        let a = data::kx2().into_shared();
        let s = Representation::simple(&a, 0);
        let sum = Representation::direct_sum(&[&s, &s]).unwrap();
        let policy = SearchPolicy { exhaustive_limit: 1, random_samples: 0, seed: 1 };
        let d = is_isomorphic(&sum, &sum, &policy).unwrap();
        assert!(matches!(d, IsoDecision::Undecided { .. }));
    }
}
