//! Brute-force ground truth: point counts of quiver Grassmannians over small
//! prime fields, by explicit enumeration of subspaces in row echelon form.

use num::bigint::BigUint;
use num::traits::{One, Zero};

use crate::covering::{CoveringDims, CoveringRep};
use crate::field::Fp;
use crate::kron::KronRep;
use crate::matrix::Matrix;
use crate::quiver::DimVector;
use crate::{Error, Result};

/// Number of b-dimensional subspaces of `F_q^a`, by the q-Pascal recursion.
pub fn gaussian_binomial(a: usize, b: usize, q: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let qq = BigUint::from(q);
    // row[k] = [i choose k]_q while building up i = 0..a.
    let mut row = vec![BigUint::zero(); b + 1];
    row[0] = BigUint::one();
    for _ in 1..=a {
        for k in (1..=b).rev() {
            let shifted = qq.pow(k as u32) * &row[k];
            row[k] = &row[k - 1] + shifted;
        }
    }
    row[b].clone()
}

/// All b-dimensional subspaces of `F_q^a`, one row-echelon basis matrix each
/// (rows are basis vectors).
pub fn subspaces(a: usize, b: usize, q: u64) -> Vec<Matrix<Fp>> {
    let one = Fp::new(q, 1);
    if b == 0 {
        return vec![Matrix::zero(0, a, &one)];
    }
    if b > a {
        return vec![];
    }
    let mut out = Vec::new();
    for pivots in crate::dyck::combinations(a, b) {
        let pivots: Vec<usize> = pivots.iter().map(|p| p - 1).collect();
        // Free entries: row i, column j with j > pivot_i, j not a pivot.
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..a {
                if !pivots.contains(&j) {
                    let above = pivots.iter().take_while(|&&pp| pp < j).count();
                    if i < above {
                        free.push((i, j));
                    }
                }
            }
        }
        let total = (q as u128).pow(free.len() as u32);
        for code in 0..total {
            let mut m = Matrix::zero(b, a, &one);
            for (i, &p) in pivots.iter().enumerate() {
                m[(i, p)] = one;
            }
            let mut c = code;
            for &(i, j) in &free {
                m[(i, j)] = Fp::new(q, (c % q as u128) as i64);
                c /= q as u128;
            }
            out.push(m);
        }
    }
    out
}

/// Points of `Gr_e(X)` over `F_q` for a Kronecker representation: vertex-2
/// subspaces are enumerated, the vertex-1 choice reduces to a Gaussian
/// binomial over the span of the images.
pub fn count_points_kron(x: &KronRep<Fp>, e: &DimVector) -> Result<BigUint> {
    let q = x.one.p;
    let (e1, e2) = (e.get(1) as usize, e.get(2) as usize);
    if e1 > x.d1 || e2 > x.d2 {
        return Err(Error::Validation("e exceeds the dimension vector".into()));
    }
    let mut total = BigUint::zero();
    for basis in subspaces(x.d2, e2, q) {
        let bt = basis.transpose(); // d2 x e2, columns span U2
        let mut image = Matrix::zero(x.d1, 0, &x.one);
        for m in &x.mats {
            image = image.hstack(&m.mul(&bt));
        }
        let w = image.rank();
        if e1 >= w {
            total += gaussian_binomial(x.d1 - w, e1 - w, q);
        }
    }
    Ok(total)
}

/// A bipartite representation (all arrows source -> sink); both the
/// Kronecker and the covering instances reduce to this shape.
pub struct BipartiteRep {
    pub q: u64,
    pub src_dims: Vec<usize>,
    pub snk_dims: Vec<usize>,
    /// (source index, sink index, matrix of shape snk x src).
    pub arrows: Vec<(usize, usize, Matrix<Fp>)>,
}

impl BipartiteRep {
    pub fn from_kron(x: &KronRep<Fp>) -> Self {
        BipartiteRep {
            q: x.one.p,
            src_dims: vec![x.d2],
            snk_dims: vec![x.d1],
            arrows: x.mats.iter().map(|m| (0, 0, m.clone())).collect(),
        }
    }

    /// Splits a covering representation into sources (layer 2) and sinks
    /// (layer 1); returns the vertex orderings used.
    pub fn from_covering(x: &CoveringRep<Fp>) -> (Self, Vec<crate::quiver::CoveringVertex>, Vec<crate::quiver::CoveringVertex>) {
        let mut sources = Vec::new();
        let mut sinks = Vec::new();
        for v in x.dims.dims.keys() {
            if v.layer == 2 {
                sources.push(v.clone());
            } else {
                sinks.push(v.clone());
            }
        }
        let src_idx = |w: &crate::quiver::ReducedWord| {
            sources.iter().position(|v| &v.word == w).expect("arrow source in support")
        };
        let snk_idx = |w: &crate::quiver::ReducedWord| {
            sinks.iter().position(|v| &v.word == w).expect("arrow sink in support")
        };
        let arrows = x
            .mats
            .iter()
            .map(|((w, i), m)| {
                let target = crate::quiver::word_mul(w, &crate::quiver::ReducedWord::generator(*i));
                (src_idx(w), snk_idx(&target), m.clone())
            })
            .collect();
        let rep = BipartiteRep {
            q: x.one.p,
            src_dims: sources.iter().map(|v| x.dims.get(v) as usize).collect(),
            snk_dims: sinks.iter().map(|v| x.dims.get(v) as usize).collect(),
            arrows,
        };
        (rep, sources, sinks)
    }
}

const BUDGET: u128 = 100_000_000;

/// Counts subrepresentation tuples of the prescribed dimensions: source
/// subspaces are enumerated, each sink contributes all subspaces containing
/// the span of the incoming images.
pub fn count_points_bipartite(
    rep: &BipartiteRep,
    src_e: &[usize],
    snk_e: &[usize],
) -> Result<BigUint> {
    assert_eq!(src_e.len(), rep.src_dims.len());
    assert_eq!(snk_e.len(), rep.snk_dims.len());
    let q = rep.q;
    let one = Fp::new(q, 1);
    // Budget: the product of the per-source enumeration sizes.
    let mut budget: u128 = 1;
    for (i, (&d, &e)) in rep.src_dims.iter().zip(src_e).enumerate() {
        if e > d {
            return Ok(BigUint::zero());
        }
        let cnt = gaussian_binomial(d, e, q);
        let cnt: u128 = cnt.try_into().map_err(|_| Error::BudgetExceeded(u128::MAX, BUDGET))?;
        budget = budget.saturating_mul(cnt.max(1));
        let _ = i;
        if budget > BUDGET {
            return Err(Error::BudgetExceeded(budget, BUDGET));
        }
    }
    for (&d, &e) in rep.snk_dims.iter().zip(snk_e) {
        if e > d {
            return Ok(BigUint::zero());
        }
    }
    let choices: Vec<Vec<Matrix<Fp>>> = rep
        .src_dims
        .iter()
        .zip(src_e)
        .map(|(&d, &e)| subspaces(d, e, q))
        .collect();
    let mut total = BigUint::zero();
    let mut pick = vec![0usize; choices.len()];
    loop {
        // Count sink choices for this source tuple.
        let mut factor = BigUint::one();
        for (snk, (&d, &e)) in rep.snk_dims.iter().zip(snk_e).enumerate() {
            let mut image = Matrix::zero(d, 0, &one);
            for (s, t, m) in &rep.arrows {
                if *t == snk && rep.src_dims[*s] > 0 {
                    let basis_t = choices[*s][pick[*s]].transpose();
                    image = image.hstack(&m.mul(&basis_t));
                }
            }
            let w = image.rank();
            if e < w {
                factor = BigUint::zero();
                break;
            }
            factor *= gaussian_binomial(d - w, e - w, q);
        }
        total += factor;
        // Advance the odometer.
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(total);
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Point count of the lifted Grassmannian `Gr_tbfe` of a covering
/// representation over its prime field.
pub fn count_points_generic(x: &CoveringRep<Fp>, tbfe: &CoveringDims) -> Result<BigUint> {
    // Dimensions outside the support admit no nonzero subspace.
    if !tbfe.leq(&x.dims) {
        return Ok(BigUint::zero());
    }
    let (rep, sources, sinks) = BipartiteRep::from_covering(x);
    let src_e: Vec<usize> = sources.iter().map(|v| tbfe.get(v) as usize).collect();
    let snk_e: Vec<usize> = sinks.iter().map(|v| tbfe.get(v) as usize).collect();
    count_points_bipartite(&rep, &src_e, &snk_e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::build_lifted_rep;
    use crate::kron::build_preprojective;
    use crate::quiver::{CoveringVertex, ReducedWord};

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(2, 1, 5), BigUint::from(6u32));
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(7, 0, 3), BigUint::one());
        assert_eq!(gaussian_binomial(3, 5, 2), BigUint::zero());
    }

    #[test]
    fn subspace_enumeration_counts() {
        for (a, b, q) in [(3, 1, 2), (4, 2, 2), (3, 2, 3), (4, 1, 3)] {
            let list = subspaces(a, b, q);
            assert_eq!(BigUint::from(list.len()), gaussian_binomial(a, b, q), "a={a} b={b} q={q}");
            for m in &list {
                assert_eq!(m.rank(), b);
            }
        }
    }

    #[test]
    fn kron_counts_p2() {
        let p2 = build_preprojective(3, 2, Fp::new(2, 1));
        assert_eq!(
            count_points_kron(&p2, &DimVector::kron(1, 0)).unwrap(),
            BigUint::from(7u32)
        );
        assert_eq!(
            count_points_kron(&p2, &DimVector::kron(2, 1)).unwrap(),
            BigUint::zero()
        );
        assert_eq!(
            count_points_kron(&p2, &DimVector::kron(3, 1)).unwrap(),
            BigUint::one()
        );
        let p2 = build_preprojective(3, 2, Fp::new(3, 1));
        assert_eq!(
            count_points_kron(&p2, &DimVector::kron(1, 0)).unwrap(),
            BigUint::from(13u32)
        );
        assert_eq!(
            count_points_kron(&p2, &DimVector::kron(2, 1)).unwrap(),
            BigUint::zero()
        );
    }

    #[test]
    fn counts_fit_polynomial() {
        // chi(P^2) over F_q is q^2 + q + 1.
        for q in [2u64, 3, 5] {
            let p2 = build_preprojective(3, 2, Fp::new(q, 1));
            assert_eq!(
                count_points_kron(&p2, &DimVector::kron(1, 0)).unwrap(),
                BigUint::from(q * q + q + 1)
            );
        }
    }

    #[test]
    fn bipartite_agrees_with_kron_fast_path() {
        // Exhaustive-ish at tiny sizes with a spread of matrices.
        let q = 2;
        for d1 in 0..=3usize {
            for d2 in 0..=2usize {
                for seed in 0..4u64 {
                    let one = Fp::new(q, 1);
                    let mats: Vec<Matrix<Fp>> = (0..3)
                        .map(|k| {
                            let mut m = Matrix::zero(d1, d2, &one);
                            for (idx, slot) in m.data.iter_mut().enumerate() {
                                *slot = Fp::new(
                                    q,
                                    ((seed + k as u64 * 7 + idx as u64 * 13) % 2) as i64,
                                );
                            }
                            m
                        })
                        .collect();
                    let x = KronRep::new(3, d1, d2, mats, one).unwrap();
                    let rep = BipartiteRep::from_kron(&x);
                    for e1 in 0..=d1 {
                        for e2 in 0..=d2 {
                            let a = count_points_kron(&x, &DimVector::kron(e1 as u64, e2 as u64))
                                .unwrap();
                            let b = count_points_bipartite(&rep, &[e2], &[e1]).unwrap();
                            assert_eq!(a, b, "d=({d1},{d2}) e=({e1},{e2}) seed={seed}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generic_counts_on_lifted_reps() {
        let p3 = build_lifted_rep(3, 3, Fp::new(2, 1)).unwrap();
        // The zero and full tuples are unique subrepresentations.
        assert_eq!(
            count_points_generic(&p3, &CoveringDims::new()).unwrap(),
            BigUint::one()
        );
        assert_eq!(count_points_generic(&p3, &p3.dims).unwrap(), BigUint::one());
        // A single sink of dimension one carries exactly one line.
        let sink = CoveringVertex::new(1, ReducedWord::new([-1, 2]));
        assert_eq!(
            count_points_generic(&p3, &CoveringDims::unit(sink)).unwrap(),
            BigUint::one()
        );
        // The center (1, e) has dimension 2: q + 1 lines.
        let center = CoveringVertex::new(1, ReducedWord::identity());
        assert_eq!(
            count_points_generic(&p3, &CoveringDims::unit(center)).unwrap(),
            BigUint::from(3u32)
        );
    }
}
