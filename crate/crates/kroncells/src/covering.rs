//! Dimension data and explicit representations on the universal covering
//! quiver of `K(n)`: lifted preprojectives, their truncations, the Euler
//! form on the cover, and degree functions for torus weights.

use std::collections::{BTreeMap, BTreeSet};

use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{word_mul, CoveringVertex, DimVector, ReducedWord};
use crate::{Error, Result};

/// Finitely supported dimension function on covering vertices.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CoveringDims {
    pub dims: BTreeMap<CoveringVertex, u64>,
}

impl CoveringDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(v: CoveringVertex) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert(v, 1);
        CoveringDims { dims }
    }

    pub fn get(&self, v: &CoveringVertex) -> u64 {
        self.dims.get(v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: CoveringVertex, d: u64) {
        if d == 0 {
            self.dims.remove(&v);
        } else {
            self.dims.insert(v, d);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, d) in &other.dims {
            out.set(v.clone(), out.get(v) + d);
        }
        out
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (v, d) in &other.dims {
            let cur = out.get(v);
            if cur < *d {
                return Err(Error::Validation(format!("covering dims go negative at {v:?}")));
            }
            out.set(v.clone(), cur - d);
        }
        Ok(out)
    }

    /// Translation by `w` (left multiplication on all words).
    pub fn translate(&self, w: &ReducedWord) -> Self {
        let mut out = CoveringDims::new();
        for (v, d) in &self.dims {
            out.set(CoveringVertex::new(v.layer, word_mul(w, &v.word)), *d);
        }
        out
    }

    /// Pushdown to `K(n)`: total per layer.
    pub fn layer_totals(&self) -> DimVector {
        let mut d1 = 0;
        let mut d2 = 0;
        for (v, d) in &self.dims {
            if v.layer == 1 {
                d1 += d;
            } else {
                d2 += d;
            }
        }
        DimVector::kron(d1, d2)
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.dims.iter().all(|(v, d)| *d <= other.get(v))
    }

    /// JSON form: `[{layer, word, dim}]` in the canonical vertex order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.dims
                .iter()
                .map(|(v, d)| {
                    serde_json::json!({"layer": v.layer, "word": v.word, "dim": d})
                })
                .collect(),
        )
    }
}

/// Translation word of the j-th shifted copy at level m: `a_j` for odd m,
/// `a_j^{-1}` for even m.
pub fn shift_word(m: usize, j: u32) -> ReducedWord {
    if m % 2 == 1 {
        ReducedWord::generator(j)
    } else {
        ReducedWord::generator_inv(j)
    }
}

/// Dimension function of the chosen lift of `P_m`, via the lifted
/// Auslander-Reiten recursion.
pub fn lifted_preprojective_dims(n: u32, m: usize) -> CoveringDims {
    assert!(n >= 3 && m >= 1);
    let mut prev = CoveringDims::unit(CoveringVertex::new(1, ReducedWord::identity()));
    if m == 1 {
        return prev;
    }
    let mut cur = CoveringDims::unit(CoveringVertex::new(2, ReducedWord::identity()));
    for i in 1..=n {
        cur.set(CoveringVertex::new(1, ReducedWord::generator(i)), 1);
    }
    for level in 2..m {
        let mut sum = CoveringDims::new();
        for j in 1..=n {
            sum = sum.add(&cur.translate(&shift_word(level, j)));
        }
        let next = sum.checked_sub(&prev).expect("AR lift recursion stays nonnegative");
        prev = cur;
        cur = next;
    }
    cur
}

/// The arrow-index set `I_r` of the fixed lift `P_{m+1}^{[r]}`.
pub fn fixed_lift_indices(n: u32, m: usize, r: u32) -> Vec<u32> {
    if m % 2 == 1 {
        (0..r).map(|k| n - k).collect()
    } else {
        (1..=r).collect()
    }
}

/// Dimension function of the fixed truncated lift `P_{m+1}^{[r]}`.
pub fn truncated_lift_dims(n: u32, m: usize, r: u32) -> CoveringDims {
    assert!(r < n, "r must be at most n-1");
    let top = lifted_preprojective_dims(n, m + 1);
    let sub = lifted_preprojective_dims(n, m);
    let mut out = top;
    for i in fixed_lift_indices(n, m, r) {
        out = out
            .checked_sub(&sub.translate(&shift_word(m, i)))
            .expect("truncated lift dims stay nonnegative");
    }
    out
}

/// Euler form on the cover over the union of supports. Arrows of the cover
/// run `(2, w) -> (1, w a_i)`, so adjacency is a length-one positive quotient.
pub fn euler_form_covering(a: &CoveringDims, b: &CoveringDims) -> i64 {
    let mut val = 0i64;
    for (v, d) in &a.dims {
        val += *d as i64 * b.get(v) as i64;
    }
    for (v, d) in &a.dims {
        if v.layer != 2 {
            continue;
        }
        for (u, e) in &b.dims {
            if u.layer != 1 {
                continue;
            }
            let q = word_mul(&v.word.inverse(), &u.word);
            if q.len() == 1 && q.letters()[0] > 0 {
                val -= *d as i64 * *e as i64;
            }
        }
    }
    val
}

/// Degree function on a finite support: `d(i, chi) = f(chi)` for the
/// abelianized exponent vector, with generator weights growing fast enough
/// that equal values force equal exponent vectors. Distinct words with the
/// same abelianization share a degree (they cover the same vertex of the
/// abelian cover, where the torus weights live).
///
/// Returns the vertex degrees and the weights `c_alpha`.
pub fn degree_function(
    n: u32,
    support: &BTreeSet<CoveringVertex>,
) -> (BTreeMap<CoveringVertex, i64>, BTreeMap<u32, i64>) {
    let mut ab: BTreeMap<&CoveringVertex, Vec<i64>> = BTreeMap::new();
    for v in support {
        ab.insert(v, v.word.abelianized(n));
    }
    let k = ab.values().flat_map(|e| e.iter().map(|x| x.abs())).max().unwrap_or(0);
    let mut c = BTreeMap::new();
    let mut sum = 0i64;
    for l in 1..=n {
        let cl = if l == 1 { 1 } else { 2 * (k + 1) * sum };
        c.insert(l, cl);
        sum += cl;
    }
    let mut d = BTreeMap::new();
    for v in support {
        let val = ab[v].iter().zip(1..=n).map(|(e, l)| e * c[&l]).sum();
        d.insert(v.clone(), val);
    }
    (d, c)
}

/// A representation of the covering quiver with finite support. Arrow
/// `(w, i)` is the cover arrow `(2, w) -> (1, w a_i)`.
#[derive(Clone, Debug)]
pub struct CoveringRep<F: Field> {
    pub n: u32,
    pub dims: CoveringDims,
    pub mats: BTreeMap<(ReducedWord, u32), Matrix<F>>,
    pub one: F,
}

impl<F: Field> CoveringRep<F> {
    pub fn arrow(&self, w: &ReducedWord, i: u32) -> Option<&Matrix<F>> {
        self.mats.get(&(w.clone(), i))
    }

    fn dim(&self, layer: u8, w: &ReducedWord) -> usize {
        self.dims.get(&CoveringVertex::new(layer, w.clone())) as usize
    }
}

/// Builds the chosen lift of `P_m` with explicit matrices by reflecting at
/// every source of the finite support and relabeling layers back, exactly as
/// the dimension recursion does.
pub fn build_lifted_rep<F: Field>(n: u32, m: usize, one: F) -> Result<CoveringRep<F>> {
    if n != 3 || m > 4 {
        return Err(Error::Unsupported(format!(
            "lifted representations are built for n = 3, m <= 4 (got n={n}, m={m})"
        )));
    }
    let mut rep = CoveringRep {
        n,
        dims: CoveringDims::unit(CoveringVertex::new(1, ReducedWord::identity())),
        mats: BTreeMap::new(),
        one,
    };
    for _ in 1..m {
        rep = reflect_sources(&rep);
    }
    Ok(rep)
}

fn reflect_sources<F: Field>(rep: &CoveringRep<F>) -> CoveringRep<F> {
    let n = rep.n;
    // Source positions: any word whose star touches the support.
    let mut sources: BTreeSet<ReducedWord> = BTreeSet::new();
    for (v, _) in &rep.dims.dims {
        match v.layer {
            2 => {
                sources.insert(v.word.clone());
            }
            _ => {
                for i in 1..=n {
                    sources.insert(word_mul(&v.word, &ReducedWord::generator_inv(i)));
                }
            }
        }
    }
    let mut dims = CoveringDims::new();
    let mut mats = BTreeMap::new();
    // Sink spaces survive, relabeled to layer 2 by inverting every letter.
    for (v, d) in &rep.dims.dims {
        if v.layer == 1 {
            dims.set(CoveringVertex::new(2, v.word.invert_letters()), *d);
        }
    }
    for w in sources {
        let sink_dims: Vec<usize> = (1..=n).map(|i| {
            rep.dim(1, &word_mul(&w, &ReducedWord::generator(i)))
        }).collect();
        let total: usize = sink_dims.iter().sum();
        if total == 0 {
            continue;
        }
        let d2 = rep.dim(2, &w);
        // Stack the incoming arrow matrices; a missing arrow is zero.
        let mut blocks: Vec<Matrix<F>> = Vec::new();
        for (i, &sd) in (1..=n).zip(&sink_dims) {
            let m = match rep.arrow(&w, i) {
                Some(m) => m.clone(),
                None => Matrix::zero(sd, d2, &rep.one),
            };
            blocks.push(m);
        }
        let refs: Vec<&Matrix<F>> = blocks.iter().collect();
        let c = Matrix::vstack(&refs);
        let q = c.cokernel_projection(&rep.one);
        if q.rows == 0 {
            continue;
        }
        let new_word = w.invert_letters();
        dims.set(CoveringVertex::new(1, new_word.clone()), q.rows as u64);
        let mut off = 0;
        for (i, &sd) in (1..=n).zip(&sink_dims) {
            if sd > 0 {
                let b = q.column_block(off, off + sd);
                // New arrow (2, iota(w a_i)) -> (1, iota(w a_i) a_i) with
                // iota(w a_i) a_i = iota(w).
                let src = word_mul(&w, &ReducedWord::generator(i)).invert_letters();
                mats.insert((src, i), b);
            }
            off += sd;
        }
    }
    CoveringRep { n, dims, mats, one: rep.one.clone() }
}

/// `dim Hom` between two covering representations on finite tree supports,
/// by the dense kernel of the intertwining system.
pub fn hom_dim_covering<F: Field>(x: &CoveringRep<F>, y: &CoveringRep<F>) -> usize {
    // Unknowns: one block per vertex in the union of supports.
    let verts: Vec<CoveringVertex> = {
        let mut s: BTreeSet<CoveringVertex> = x.dims.dims.keys().cloned().collect();
        s.extend(y.dims.dims.keys().cloned());
        s.into_iter().collect()
    };
    let mut offset = BTreeMap::new();
    let mut total = 0usize;
    for v in &verts {
        let dx = x.dims.get(v) as usize;
        let dy = y.dims.get(v) as usize;
        offset.insert(v.clone(), total);
        total += dx * dy;
    }
    if total == 0 {
        return 0;
    }
    // Arrow equations: f_sink X_a - Y_a f_src = 0 over all arrows present in
    // either representation.
    let mut arrows: BTreeSet<(ReducedWord, u32)> = x.mats.keys().cloned().collect();
    arrows.extend(y.mats.keys().cloned());
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (w, i) in arrows {
        let src = CoveringVertex::new(2, w.clone());
        let snk = CoveringVertex::new(1, word_mul(&w, &ReducedWord::generator(i)));
        let (xs, ys) = (x.dims.get(&src) as usize, y.dims.get(&src) as usize);
        let (xk, yk) = (x.dims.get(&snk) as usize, y.dims.get(&snk) as usize);
        let xa = x.arrow(&w, i).cloned().unwrap_or_else(|| Matrix::zero(xk, xs, &x.one));
        let ya = y.arrow(&w, i).cloned().unwrap_or_else(|| Matrix::zero(yk, ys, &x.one));
        for p in 0..yk {
            for q in 0..xs {
                let mut row = vec![x.one.zero(); total];
                for k in 0..xk {
                    row[offset[&snk] + p * xk + k] = xa[(k, q)].clone();
                }
                for l in 0..ys {
                    let idx = offset[&src] + l * xs + q;
                    row[idx] = row[idx].sub(&ya[(p, l)]);
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return total;
    }
    let m = Matrix::from_rows(rows, &x.one);
    total - m.rank()
}
