//! Representations of the n-Kronecker quiver over an exact field: Hom/Ext
//! dimensions via the defining linear map, reflection functors, preprojective
//! and preinjective families, and truncated preprojectives.

use crate::field::{Field, Rat};
use crate::matrix::Matrix;
use crate::quiver::{euler_form, DimVector, Quiver};
use crate::{Error, Result};

/// A representation of `K(n)`: n matrices of shape `d1 x d2` mapping the
/// source space (vertex 2) into the sink space (vertex 1).
#[derive(Clone, PartialEq, Debug)]
pub struct KronRep<F: Field> {
    pub n: u32,
    pub d1: usize,
    pub d2: usize,
    pub mats: Vec<Matrix<F>>,
    pub one: F,
}

/// A basis of `Hom(X, Y)`; each morphism is a pair of vertex maps
/// `(f1: Y1 x X1, f2: Y2 x X2)` intertwining the arrow matrices.
pub type HomBasis<F> = Vec<(Matrix<F>, Matrix<F>)>;

impl<F: Field> KronRep<F> {
    pub fn new(n: u32, d1: usize, d2: usize, mats: Vec<Matrix<F>>, one: F) -> Result<Self> {
        if mats.len() != n as usize {
            return Err(Error::Validation(format!("expected {n} matrices, got {}", mats.len())));
        }
        for m in &mats {
            if m.rows != d1 || m.cols != d2 {
                return Err(Error::Validation(format!(
                    "matrix shape {}x{} does not match d1={d1}, d2={d2}",
                    m.rows, m.cols
                )));
            }
        }
        Ok(KronRep { n, d1, d2, mats, one })
    }

    /// Simple representation at the given vertex.
    pub fn simple(n: u32, vertex: u8, one: F) -> Self {
        let (d1, d2) = if vertex == 1 { (1, 0) } else { (0, 1) };
        let mats = (0..n).map(|_| Matrix::zero(d1, d2, &one)).collect();
        KronRep { n, d1, d2, mats, one }
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector::kron(self.d1 as u64, self.d2 as u64)
    }

    pub fn total_dim(&self) -> usize {
        self.d1 + self.d2
    }

    /// `[M_1 | M_2 | ... | M_n]`, the combined map into the sink.
    fn sink_stack(&self) -> Matrix<F> {
        let mut c = Matrix::zero(self.d1, 0, &self.one);
        for m in &self.mats {
            c = c.hstack(m);
        }
        c
    }

    /// `[M_1; M_2; ...; M_n]`, the combined map out of the source.
    fn source_stack(&self) -> Matrix<F> {
        let refs: Vec<&Matrix<F>> = self.mats.iter().collect();
        Matrix::vstack(&refs)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::FieldMismatch(format!("arity {} vs {}", self.n, other.n)));
        }
        if self.one != other.one {
            return Err(Error::FieldMismatch("representations over different fields".into()));
        }
        Ok(())
    }
}

/// BGP reflection at the given vertex, relabeled back to a `K(n)`
/// representation by the vertex swap. Reflecting twice returns to the start
/// only when the second reflection is taken at the other vertex, which
/// matches the orientation bookkeeping of the swap.
pub fn reflect<F: Field>(x: &KronRep<F>, vertex: u8) -> KronRep<F> {
    match vertex {
        2 => {
            // New source space is the cokernel of the combined map out of
            // the old source; a canonical cokernel basis keeps this
            // deterministic.
            let c = x.source_stack();
            let q = c.cokernel_projection(&x.one);
            let mats = (0..x.n as usize)
                .map(|i| q.column_block(i * x.d1, (i + 1) * x.d1))
                .collect();
            KronRep { n: x.n, d1: q.rows, d2: x.d1, mats, one: x.one.clone() }
        }
        1 => {
            // New sink-side data comes from the kernel of the combined map
            // into the old sink.
            let c = x.sink_stack();
            let k = c.right_kernel(&x.one);
            let mats = (0..x.n as usize)
                .map(|i| k.row_block(i * x.d2, (i + 1) * x.d2))
                .collect();
            KronRep { n: x.n, d1: x.d2, d2: k.cols, mats, one: x.one.clone() }
        }
        _ => panic!("vertex must be 1 or 2"),
    }
}

/// The preprojective representation `P_m`, built from `P_1 = S_1` by
/// repeated source reflections. Deterministic by the canonical cokernel.
pub fn build_preprojective<F: Field>(n: u32, m: usize, one: F) -> KronRep<F> {
    assert!(n >= 3, "representation theory here needs n >= 3");
    assert!(m >= 1);
    let mut p = KronRep::simple(n, 1, one);
    for _ in 1..m {
        p = reflect(&p, 2);
    }
    p
}

/// The preinjective `I_m` as the transpose dual of `P_m`; only its dimension
/// vector and Hom/Ext dimensions are meant for consumption.
pub fn build_preinjective<F: Field>(n: u32, m: usize, one: F) -> KronRep<F> {
    let p = build_preprojective(n, m, one.clone());
    let mats = p.mats.iter().map(|m| m.transpose()).collect();
    KronRep { n, d1: p.d2, d2: p.d1, mats, one }
}

fn euler<F: Field>(x: &KronRep<F>, y: &KronRep<F>) -> i64 {
    euler_form(&Quiver::kron(x.n), &x.dim_vector(), &y.dim_vector())
}

// Dense nullity of d_{X,Y}. Unknowns are f1 then f2, both row-major.
fn hom_matrix<F: Field>(x: &KronRep<F>, y: &KronRep<F>) -> Matrix<F> {
    let n = x.n as usize;
    let unknowns = y.d1 * x.d1 + y.d2 * x.d2;
    let rows = n * y.d1 * x.d2;
    let mut d = Matrix::zero(rows, unknowns, &x.one);
    let mut row = 0;
    for a in 0..n {
        for p in 0..y.d1 {
            for q in 0..x.d2 {
                // (f1 X_a - Y_a f2)[p, q] = 0
                for k in 0..x.d1 {
                    d[(row, p * x.d1 + k)] = x.mats[a][(k, q)].clone();
                }
                for l in 0..y.d2 {
                    let cur = &d[(row, y.d1 * x.d1 + l * x.d2 + q)];
                    let val = cur.sub(&y.mats[a][(p, l)]);
                    d[(row, y.d1 * x.d1 + l * x.d2 + q)] = val;
                }
                row += 1;
            }
        }
    }
    d
}

fn hom_dim_dense<F: Field>(x: &KronRep<F>, y: &KronRep<F>) -> usize {
    let unknowns = y.d1 * x.d1 + y.d2 * x.d2;
    if unknowns == 0 {
        return 0;
    }
    let d = hom_matrix(x, y);
    unknowns - d.rank()
}

const DENSE_LIMIT: usize = 220;

/// `dim Hom(X, Y)`, the nullity of `d_{X,Y}`.
///
/// Large instances are reduced by simultaneous sink reflection, which
/// preserves the Hom space after splitting off the simples at the sink;
/// the recursion bottoms out in a dense kernel computation.
pub fn hom_dim<F: Field>(x: &KronRep<F>, y: &KronRep<F>) -> usize {
    if x.d2 == 0 {
        // X is a sum of simples at the sink.
        return x.d1 * y.d1;
    }
    if y.d1 + y.d2 == 0 || x.d1 + x.d2 == 0 {
        return 0;
    }
    let unknowns = y.d1 * x.d1 + y.d2 * x.d2;
    let rows = x.n as usize * y.d1 * x.d2;
    if unknowns.max(rows) <= DENSE_LIMIT {
        return hom_dim_dense(x, y);
    }
    let xr = reflect(x, 1);
    let yr = reflect(y, 1);
    if xr.total_dim() + yr.total_dim() < x.total_dim() + y.total_dim() {
        let cx_rank = x.sink_stack().rank();
        let simple_part = (x.d1 - cx_rank) * y.d1;
        return simple_part + hom_dim(&xr, &yr);
    }
    hom_dim_dense(x, y)
}

/// `(dim Hom(X,Y), dim Ext(X,Y))`; the difference always equals the
/// Euler form of the dimension vectors.
pub fn hom_ext_dims<F: Field>(x: &KronRep<F>, y: &KronRep<F>) -> Result<(usize, usize)> {
    x.compatible(y)?;
    let hom = hom_dim(x, y) as i64;
    let ext = hom - euler(x, y);
    if ext < 0 {
        return Err(Error::Validation("negative Ext dimension; inconsistent input".into()));
    }
    Ok((hom as usize, ext as usize))
}

fn hom_basis_dense<F: Field>(x: &KronRep<F>, y: &KronRep<F>) -> HomBasis<F> {
    let unknowns = y.d1 * x.d1 + y.d2 * x.d2;
    if unknowns == 0 {
        return vec![];
    }
    let d = hom_matrix(x, y);
    let ker = d.right_kernel(&x.one);
    let mut basis = Vec::with_capacity(ker.cols);
    for j in 0..ker.cols {
        let mut f1 = Matrix::zero(y.d1, x.d1, &x.one);
        for p in 0..y.d1 {
            for k in 0..x.d1 {
                f1[(p, k)] = ker[(p * x.d1 + k, j)].clone();
            }
        }
        let mut f2 = Matrix::zero(y.d2, x.d2, &x.one);
        for l in 0..y.d2 {
            for q in 0..x.d2 {
                f2[(l, q)] = ker[(y.d1 * x.d1 + l * x.d2 + q, j)].clone();
            }
        }
        basis.push((f1, f2));
    }
    basis
}

/// Deterministic basis of `Hom(X, Y)`, computed by the same reflection
/// reduction as `hom_dim` and lifted back level by level.
pub fn hom_basis<F: Field>(x: &KronRep<F>, y: &KronRep<F>) -> Result<HomBasis<F>> {
    x.compatible(y)?;
    Ok(hom_basis_inner(x, y))
}

fn hom_basis_inner<F: Field>(x: &KronRep<F>, y: &KronRep<F>) -> HomBasis<F> {
    let unknowns = y.d1 * x.d1 + y.d2 * x.d2;
    let rows = x.n as usize * y.d1 * x.d2;
    if x.d2 == 0 || unknowns.max(rows) <= DENSE_LIMIT {
        return hom_basis_dense(x, y);
    }
    let xr = reflect(x, 1);
    let yr = reflect(y, 1);
    if xr.total_dim() + yr.total_dim() >= x.total_dim() + y.total_dim() {
        return hom_basis_dense(x, y);
    }
    let cx = x.sink_stack();
    let sub = hom_basis_inner(&xr, &yr);
    let mut basis = Vec::new();
    for (g1, _) in sub {
        // After the vertex swap, the reflected morphism's sink component is
        // the original source component f2.
        let f2 = g1;
        let mut b = Matrix::zero(y.d1, 0, &y.one);
        for a in 0..x.n as usize {
            b = b.hstack(&y.mats[a].mul(&f2));
        }
        let f1 = cx
            .solve_left(&b, &x.one)
            .expect("lift of a reflected morphism must exist");
        basis.push((f1, f2));
    }
    // Morphisms killing the source entirely: one per (sink basis vector of Y,
    // left kernel vector of the combined sink map).
    let lk = cx.transpose().right_kernel(&x.one);
    for j in 0..lk.cols {
        for p in 0..y.d1 {
            let mut f1 = Matrix::zero(y.d1, x.d1, &x.one);
            for k in 0..x.d1 {
                f1[(p, k)] = lk[(k, j)].clone();
            }
            basis.push((f1, Matrix::zero(y.d2, x.d2, &x.one)));
        }
    }
    basis
}

/// Checks that `(f1, f2)` intertwines the arrow maps of `x` and `y`.
pub fn is_morphism<F: Field>(
    x: &KronRep<F>,
    y: &KronRep<F>,
    f1: &Matrix<F>,
    f2: &Matrix<F>,
) -> bool {
    (0..x.n as usize).all(|a| f1.mul(&x.mats[a]) == y.mats[a].mul(f2))
}

/// Cokernel of the evaluation map `P_prev (x) V -> P`, where `V` is spanned by
/// the given coordinate vectors in the `hom_basis(P_prev, P)` ordering.
/// Fails if the evaluation map is not injective (dependent `V`).
pub fn truncate<F: Field>(
    p: &KronRep<F>,
    v: &[Vec<F>],
    p_prev: &KronRep<F>,
) -> Result<KronRep<F>> {
    p.compatible(p_prev)?;
    if v.is_empty() {
        return Ok(p.clone());
    }
    let basis = hom_basis(p_prev, p)?;
    for coords in v {
        if coords.len() != basis.len() {
            return Err(Error::Validation(format!(
                "coordinate vector length {} does not match dim Hom = {}",
                coords.len(),
                basis.len()
            )));
        }
    }
    let theta: Vec<(Matrix<F>, Matrix<F>)> = v
        .iter()
        .map(|coords| {
            let mut f1 = Matrix::zero(p.d1, p_prev.d1, &p.one);
            let mut f2 = Matrix::zero(p.d2, p_prev.d2, &p.one);
            for (c, (b1, b2)) in coords.iter().zip(&basis) {
                if c.is_zero() {
                    continue;
                }
                for (dst, src) in f1.data.iter_mut().zip(&b1.data) {
                    *dst = dst.add(&c.mul(src));
                }
                for (dst, src) in f2.data.iter_mut().zip(&b2.data) {
                    *dst = dst.add(&c.mul(src));
                }
            }
            (f1, f2)
        })
        .collect();
    // Evaluation map per vertex: horizontal stack of the morphism components.
    let mut ev1 = Matrix::zero(p.d1, 0, &p.one);
    let mut ev2 = Matrix::zero(p.d2, 0, &p.one);
    for (f1, f2) in &theta {
        ev1 = ev1.hstack(f1);
        ev2 = ev2.hstack(f2);
    }
    if ev1.rank() != ev1.cols || ev2.rank() != ev2.cols {
        return Err(Error::NotInjective);
    }
    let q1 = ev1.cokernel_projection(&p.one);
    let q2 = ev2.cokernel_projection(&p.one);
    // Any section of q2 induces the same quotient maps q1 * M * s2, because
    // the arrow matrices carry ker(q2) into ker(q1).
    let s2 = right_inverse(&q2, &p.one)?;
    let mats = p.mats.iter().map(|m| q1.mul(&m.mul(&s2))).collect::<Vec<_>>();
    KronRep::new(p.n, q1.rows, q2.rows, mats, p.one.clone())
}

fn right_inverse<F: Field>(q: &Matrix<F>, one: &F) -> Result<Matrix<F>> {
    let mut m = q.clone();
    let pivots = m.rref();
    if pivots.len() != q.rows {
        return Err(Error::Validation("projection does not have full row rank".into()));
    }
    let qj = q.select_columns(&pivots);
    let inv = qj.inverse(one)?;
    let mut s = Matrix::zero(q.cols, q.rows, one);
    for (k, &col) in pivots.iter().enumerate() {
        for r in 0..q.rows {
            s[(col, r)] = inv[(k, r)].clone();
        }
    }
    Ok(s)
}

/// Unit coordinate vectors selecting the first `r` basis morphisms.
pub fn coordinate_subspace<F: Field>(dim: usize, r: usize, one: &F) -> Vec<Vec<F>> {
    (0..r)
        .map(|i| (0..dim).map(|j| if i == j { one.one() } else { one.zero() }).collect())
        .collect()
}

/// JSON form `{n, d1, d2, mats: [[row-major "p/q" strings]]}`.
pub fn rep_to_json(x: &KronRep<Rat>) -> serde_json::Value {
    serde_json::json!({
        "n": x.n,
        "d1": x.d1,
        "d2": x.d2,
        "mats": x.mats.iter().map(|m| {
            m.data.iter().map(|v| v.to_string_frac()).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

pub fn rep_from_json(v: &serde_json::Value) -> Result<KronRep<Rat>> {
    let bad = || Error::Validation("malformed representation json".into());
    let n = v["n"].as_u64().ok_or_else(bad)? as u32;
    let d1 = v["d1"].as_u64().ok_or_else(bad)? as usize;
    let d2 = v["d2"].as_u64().ok_or_else(bad)? as usize;
    let mats = v["mats"]
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|m| {
            let entries = m
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|s| Rat::parse_frac(s.as_str().ok_or_else(bad)?))
                .collect::<Result<Vec<_>>>()?;
            if entries.len() != d1 * d2 {
                return Err(bad());
            }
            Ok(Matrix { rows: d1, cols: d2, data: entries })
        })
        .collect::<Result<Vec<_>>>()?;
    KronRep::new(n, d1, d2, mats, Rat::from_i64(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{chebyshev_u, preprojective_dim};

    fn one() -> Rat {
        Rat::from_i64(1)
    }

    #[test]
    fn preprojective_dims_follow_recursion() {
        for n in [3u32, 4] {
            for m in 1..=5 {
                let p = build_preprojective(n, m, one());
                assert_eq!(p.dim_vector(), preprojective_dim(n, m), "n={n} m={m}");
            }
        }
        let p = build_preprojective(4, 4, one());
        assert_eq!((p.d1, p.d2), (56, 15));
    }

    #[test]
    fn hom_ext_fingerprints() {
        let p2 = build_preprojective(3, 2, one());
        let p3 = build_preprojective(3, 3, one());
        assert_eq!(hom_ext_dims(&p2, &p2).unwrap(), (1, 0));
        assert_eq!(hom_ext_dims(&p2, &p3).unwrap(), (3, 0));
        assert_eq!(hom_ext_dims(&p3, &p2).unwrap(), (0, 0));
        let s1 = KronRep::simple(3, 1, one());
        let s2 = KronRep::simple(3, 2, one());
        assert_eq!(hom_ext_dims(&s2, &s1).unwrap(), (0, 3));
        assert_eq!(hom_ext_dims(&s1, &s2).unwrap(), (0, 0));
    }

    #[test]
    fn reflect_round_trip_up_to_iso() {
        let p2 = build_preprojective(3, 2, one());
        let back = reflect(&reflect(&p2, 2), 1);
        assert_eq!(back.dim_vector(), p2.dim_vector());
        assert_eq!(hom_ext_dims(&back, &p2).unwrap(), (1, 0));
        assert_eq!(hom_ext_dims(&p2, &back).unwrap(), (1, 0));
    }

    #[test]
    fn reflect_dimension_formula() {
        // New dimension at the reflected vertex: n * (other) - old.
        for m in 2..=4 {
            let p = build_preprojective(3, m, one());
            let r = reflect(&p, 2);
            assert_eq!(r.d1 as i64, 3 * p.d1 as i64 - p.d2 as i64);
            assert_eq!(r.d2, p.d1);
        }
    }

    #[test]
    fn hom_basis_morphisms() {
        let p2 = build_preprojective(3, 2, one());
        let p3 = build_preprojective(3, 3, one());
        let basis = hom_basis(&p2, &p3).unwrap();
        assert_eq!(basis.len(), 3);
        for (f1, f2) in &basis {
            assert!(is_morphism(&p2, &p3, f1, f2));
        }
        let p1 = build_preprojective(3, 1, one());
        assert!(hom_basis(&p2, &p1).unwrap().is_empty());
        assert_eq!(hom_basis(&p3, &p3).unwrap().len(), 1);
    }

    #[test]
    fn hom_basis_matches_dense_after_reduction() {
        // Force the recursive path and compare against the dense kernel.
        let p3 = build_preprojective(3, 3, one());
        let p4 = build_preprojective(3, 4, one());
        let basis = hom_basis(&p3, &p4).unwrap();
        assert_eq!(basis.len(), hom_dim_dense(&p3, &p4));
        for (f1, f2) in &basis {
            assert!(is_morphism(&p3, &p4, f1, f2));
        }
    }

    #[test]
    fn truncation_dims_and_homs() {
        let n = 3;
        let p2 = build_preprojective(n, 2, one());
        let p3 = build_preprojective(n, 3, one());
        let h = hom_basis(&p2, &p3).unwrap();
        let v = coordinate_subspace(h.len(), 1, &one());
        let t = truncate(&p3, &v, &p2).unwrap();
        assert_eq!((t.d1, t.d2), (5, 2));
        assert_eq!(hom_ext_dims(&p2, &t).unwrap(), (2, 0));
        assert_eq!(hom_ext_dims(&p3, &t).unwrap(), (1, 0));
        // r = 0 is the representation itself.
        let t0 = truncate(&p3, &[], &p2).unwrap();
        assert_eq!(t0.dim_vector(), p3.dim_vector());
    }

    #[test]
    fn dependent_v_is_rejected() {
        let p2 = build_preprojective(3, 2, one());
        let p3 = build_preprojective(3, 3, one());
        let dup = vec![
            vec![one().one(), one().zero(), one().zero()],
            vec![one().one(), one().zero(), one().zero()],
        ];
        assert!(matches!(truncate(&p3, &dup, &p2), Err(Error::NotInjective)));
    }

    #[test]
    fn ar_dimension_identity() {
        for n in [3u32, 4] {
            let u = chebyshev_u(n, 7);
            for m in 2..=6usize {
                let lhs1 = u[m - 1] + u[m + 1];
                assert_eq!(lhs1, n as i64 * u[m]);
            }
        }
    }

    #[test]
    fn preinjective_duality() {
        let i2 = build_preinjective(3, 2, one());
        assert_eq!(i2.dim_vector(), DimVector::kron(1, 3));
        let i3 = build_preinjective(3, 3, one());
        // Hom(I_r, I_m) = 0 for r <= m, mirrored from the preprojective side.
        assert_eq!(hom_ext_dims(&i2, &i3).unwrap().0, 0);
        assert_eq!(hom_ext_dims(&i3, &i3).unwrap(), (1, 0));
        assert_eq!(hom_ext_dims(&i3, &i2).unwrap(), (3, 0));
    }

    #[test]
    fn rep_json_round_trip() {
        let p2 = build_preprojective(3, 2, one());
        let j = rep_to_json(&p2);
        let back = rep_from_json(&j).unwrap();
        assert_eq!(back, p2);
    }
}
