use rand::Rng;

use crate::algebra::PartitionedAlgebra;
use crate::field::Scalar;
use crate::matrix::{Matrix, Side};

use super::{Complex, ProjMap, ProjSum};

/// Shape limits for [`random_complex`].
#[derive(Clone, Copy, Debug)]
pub struct RandomComplexSpec {
    pub max_terms: usize,
    pub max_summands: usize,
    pub min_degree: i64,
    pub max_degree: i64,
}

impl Default for RandomComplexSpec {
    fn default() -> Self {
        RandomComplexSpec { max_terms: 3, max_summands: 2, min_degree: -2, max_degree: 1 }
    }
}

/// A random bounded complex with `d ∘ d = 0`. Each differential is a random
/// point of the space of maps killed by composition with the previous one.
pub fn random_complex<R: Rng>(rng: &mut R, a: &PartitionedAlgebra, spec: &RandomComplexSpec) -> Complex {
    let s = a.num_simples();
    let len = rng.gen_range(1..=spec.max_terms.max(1));
    let terms: Vec<ProjSum> = (0..len)
        .map(|_| {
            let m = rng.gen_range(1..=spec.max_summands.max(1));
            let mut summands: Vec<usize> = (0..m).map(|_| rng.gen_range(0..s)).collect();
            summands.sort_unstable();
            ProjSum::new(summands)
        })
        .collect();
    let top = spec.max_degree - len as i64 + 1;
    let bottom = if top <= spec.min_degree { spec.min_degree } else { rng.gen_range(spec.min_degree..=top) };

    let f = a.field().clone();
    let n = a.dim();
    let mut diffs: Vec<ProjMap> = Vec::new();
    for k in 0..len.saturating_sub(1) {
        let (src, tgt) = (&terms[k], &terms[k + 1]);
        // unknown blocks, one variable per corner basis element
        let mut vars = Vec::new();
        for (alpha, &i) in src.summands.iter().enumerate() {
            for (beta, &j) in tgt.summands.iter().enumerate() {
                let c = a.corner(j, i);
                for r in 0..c.dim() {
                    vars.push((alpha, beta, c.basis.row(r).to_vec()));
                }
            }
        }
        let chosen: Vec<Scalar> = match diffs.last() {
            None => (0..vars.len()).map(|_| f.element(rng.gen_range(0..f.size())).expect("in range")).collect(),
            Some(prev) => {
                // previous then this must vanish: block (alpha', beta) of the composite
                let width = prev.source.len() * tgt.len() * n;
                if width == 0 || vars.is_empty() {
                    vec![Scalar::ZERO; vars.len()]
                } else {
                    let mut eqs = Matrix::zeros(&f, vars.len(), width);
                    for (v, (alpha, beta, b)) in vars.iter().enumerate() {
                        let row = eqs.row_mut(v);
                        for (alpha2, brow) in prev.blocks.iter().enumerate() {
                            let p = a.mul(b, &brow[*alpha]);
                            let off = (alpha2 * tgt.len() + beta) * n;
                            f.axpy(&mut row[off..off + n], Scalar::ONE, &p);
                        }
                    }
                    let ker = eqs.kernel(Side::Left);
                    let mut c = vec![Scalar::ZERO; vars.len()];
                    for r in 0..ker.dim() {
                        let s = f.element(rng.gen_range(0..f.size())).expect("in range");
                        f.axpy(&mut c, s, ker.basis.row(r));
                    }
                    c
                }
            }
        };
        let mut d = ProjMap::zero(a, src.clone(), tgt.clone());
        for ((alpha, beta, b), c) in vars.iter().zip(&chosen) {
            if !c.is_zero() {
                f.axpy(&mut d.blocks[*alpha][*beta], *c, b);
            }
        }
        diffs.push(d);
    }
    Complex { bottom, terms, diffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_are_complexes() {
        let a = data::ex1().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let c = random_complex(&mut rng, &a, &RandomComplexSpec::default());
            c.verify(&a).unwrap();
        }
    }
}
