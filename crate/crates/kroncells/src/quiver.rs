//! Quivers, dimension vectors, the Euler form, and reduced words of the free
//! group on the arrows (used to address vertices of the universal cover).

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result};

/// Finitely supported dimension vector, vertex id -> nonnegative entry.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize, PartialOrd, Ord, Hash)]
#[serde(transparent)]
pub struct DimVector {
    pub entries: BTreeMap<u32, u64>,
}

impl DimVector {
    pub fn new() -> Self {
        DimVector { entries: BTreeMap::new() }
    }

    /// Dimension vector of `K(n)`: vertex 1 is the sink, vertex 2 the source.
    pub fn kron(d1: u64, d2: u64) -> Self {
        let mut entries = BTreeMap::new();
        if d1 > 0 {
            entries.insert(1, d1);
        }
        if d2 > 0 {
            entries.insert(2, d2);
        }
        DimVector { entries }
    }

    pub fn get(&self, v: u32) -> u64 {
        self.entries.get(&v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: u32, d: u64) {
        if d == 0 {
            self.entries.remove(&v);
        } else {
            self.entries.insert(v, d);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&v, &d) in &other.entries {
            out.set(v, out.get(v) + d);
        }
        out
    }

    /// Componentwise subtraction; an entry that would become negative is an error.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (&v, &d) in &other.entries {
            let cur = out.get(v);
            if cur < d {
                return Err(Error::Validation(format!(
                    "dimension vector subtraction goes negative at vertex {v}"
                )));
            }
            out.set(v, cur - d);
        }
        Ok(out)
    }

    pub fn scale(&self, k: u64) -> Self {
        let mut out = DimVector::new();
        for (&v, &d) in &self.entries {
            out.set(v, d * k);
        }
        out
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.entries.iter().all(|(&v, &d)| d <= other.get(v))
    }
}

/// A reduced word in the free group generated by the arrows `alpha_1..alpha_n`.
/// Letters are signed generator indices, e.g. `[1, -2]` is `a1 * a2^{-1}`.
/// Words are stored fully reduced so that equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ReducedWord {
    letters: Vec<i32>,
}

// Deserialization re-reduces, so the invariant holds for external input too.
impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D>(d: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let letters = Vec::<i32>::deserialize(d)?;
        if letters.contains(&0) {
            return Err(serde::de::Error::custom("generator index 0 is not allowed"));
        }
        Ok(ReducedWord::new(letters))
    }
}

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord { letters: vec![] }
    }

    /// Reduces on construction: adjacent `x * x^{-1}` pairs cancel.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "generator indices are nonzero");
            if out.last().is_some_and(|&t| t == -l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        ReducedWord { letters: out }
    }

    pub fn generator(i: u32) -> Self {
        ReducedWord { letters: vec![i as i32] }
    }

    pub fn generator_inv(i: u32) -> Self {
        ReducedWord { letters: vec![-(i as i32)] }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        ReducedWord { letters: self.letters.iter().rev().map(|&l| -l).collect() }
    }

    /// Exponent vector of the abelianization, generator index -> total exponent.
    pub fn abelianized(&self, n: u32) -> Vec<i64> {
        let mut e = vec![0i64; n as usize];
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            e[i] += if l > 0 { 1 } else { -1 };
        }
        e
    }

    /// The automorphism sending every generator to its inverse.
    pub fn invert_letters(&self) -> Self {
        ReducedWord { letters: self.letters.iter().map(|&l| -l).collect() }
    }
}

/// Reduced concatenation `a * b`.
pub fn word_mul(a: &ReducedWord, b: &ReducedWord) -> ReducedWord {
    ReducedWord::new(a.letters.iter().chain(b.letters.iter()).copied())
}

/// Vertex `(layer, word)` of the universal covering quiver of `K(n)`.
/// Arrows of the cover run `(2, w) -> (1, w * alpha_i)`.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub struct CoveringVertex {
    pub layer: u8,
    pub word: ReducedWord,
}

impl CoveringVertex {
    pub fn new(layer: u8, word: ReducedWord) -> Self {
        assert!(layer == 1 || layer == 2);
        CoveringVertex { layer, word }
    }
}

// Deterministic order: layer, then word length, then lexicographic letters.
impl Ord for CoveringVertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.layer, self.word.len(), self.word.letters())
            .cmp(&(other.layer, other.word.len(), other.word.letters()))
    }
}

impl PartialOrd for CoveringVertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite acyclic quiver.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: BTreeSet<u32>,
    pub arrows: Vec<(u32, u32)>,
}

impl Quiver {
    pub fn new(vertices: impl IntoIterator<Item = u32>, arrows: Vec<(u32, u32)>) -> Result<Self> {
        let vertices: BTreeSet<u32> = vertices.into_iter().collect();
        for &(s, t) in &arrows {
            if !vertices.contains(&s) || !vertices.contains(&t) {
                return Err(Error::Validation(format!("arrow ({s},{t}) leaves the vertex set")));
            }
        }
        let q = Quiver { vertices, arrows };
        if !q.is_acyclic() {
            return Err(Error::Validation("quiver has an oriented cycle".into()));
        }
        Ok(q)
    }

    /// The n-Kronecker quiver: n arrows from source 2 to sink 1.
    pub fn kron(n: u32) -> Self {
        Quiver {
            vertices: [1u32, 2].into_iter().collect(),
            arrows: (0..n).map(|_| (2, 1)).collect(),
        }
    }

    fn is_acyclic(&self) -> bool {
        let mut indeg: BTreeMap<u32, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for &(_, t) in &self.arrows {
            *indeg.get_mut(&t).unwrap() += 1;
        }
        let mut queue: Vec<u32> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    let d = indeg.get_mut(&t).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        seen == self.vertices.len()
    }
}

/// Euler form `<a,b> = sum_i a_i b_i - sum_{arrows s->t} a_s b_t`.
pub fn euler_form(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    let mut val: i64 = 0;
    for &v in &q.vertices {
        val += a.get(v) as i64 * b.get(v) as i64;
    }
    for &(s, t) in &q.arrows {
        val -= a.get(s) as i64 * b.get(t) as i64;
    }
    val
}

/// Chebyshev sequence `u_0 = 0, u_1 = 1, u_{k+1} = n u_k - u_{k-1}`.
pub fn chebyshev_u(n: u32, up_to: usize) -> Vec<i64> {
    let mut u = vec![0i64, 1];
    while u.len() <= up_to {
        let k = u.len();
        u.push(n as i64 * u[k - 1] - u[k - 2]);
    }
    u.truncate(up_to + 1);
    u
}

/// `udim P_m = (u_m, u_{m-1})`.
pub fn preprojective_dim(n: u32, m: usize) -> DimVector {
    let u = chebyshev_u(n, m);
    DimVector::kron(u[m] as u64, if m >= 1 { u[m - 1] as u64 } else { 0 })
}

/// `d(m, r) = udim P_{m+1} - r * udim P_m`.
pub fn truncated_dim(n: u32, m: usize, r: u32) -> DimVector {
    let u = chebyshev_u(n, m + 1);
    let d1 = u[m + 1] - r as i64 * u[m];
    let d2 = u[m] - r as i64 * if m >= 1 { u[m - 1] } else { 0 };
    assert!(d1 >= 0 && d2 >= 0, "d(m,r) went negative");
    DimVector::kron(d1 as u64, d2 as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> ReducedWord {
        ReducedWord::new(letters.iter().copied())
    }

    #[test]
    fn word_mul_examples() {
        assert_eq!(word_mul(&w(&[1]), &w(&[-1])), ReducedWord::identity());
        assert_eq!(word_mul(&w(&[1]), &w(&[-2])), w(&[1, -2]));
        assert_eq!(word_mul(&w(&[1, -2]), &w(&[2, 3])), w(&[1, 3]));
    }

    #[test]
    fn euler_form_examples() {
        let q = Quiver::kron(3);
        assert_eq!(euler_form(&q, &DimVector::kron(1, 0), &DimVector::kron(3, 1)), 3);
        assert_eq!(euler_form(&q, &DimVector::kron(3, 1), &DimVector::kron(3, 1)), 1);
        assert_eq!(euler_form(&q, &DimVector::kron(3, 1), &DimVector::kron(8, 3)), 3);
    }

    #[test]
    fn preprojectives_are_exceptional_roots() {
        for n in [3u32, 4, 5] {
            let q = Quiver::kron(n);
            for m in 1..=6 {
                let d = preprojective_dim(n, m);
                assert_eq!(euler_form(&q, &d, &d), 1, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev_u(3, 4), vec![0, 1, 3, 8, 21]);
        assert_eq!(chebyshev_u(4, 4), vec![0, 1, 4, 15, 56]);
        assert_eq!(chebyshev_u(2, 4), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn dimvector_sub_errors() {
        let a = DimVector::kron(2, 1);
        let b = DimVector::kron(3, 0);
        assert!(a.checked_sub(&b).is_err());
        assert_eq!(b.checked_sub(&DimVector::kron(1, 0)).unwrap(), DimVector::kron(2, 0));
    }

    #[test]
    fn cyclic_quiver_rejected() {
        assert!(Quiver::new([1, 2], vec![(1, 2), (2, 1)]).is_err());
        assert!(Quiver::new([1], vec![(1, 2)]).is_err());
    }

    #[test]
    fn word_json_shape() {
        let word = w(&[1, -2]);
        assert_eq!(serde_json::to_string(&word).unwrap(), "[1,-2]");
        let back: ReducedWord = serde_json::from_str("[1,-2]").unwrap();
        assert_eq!(back, word);
    }
}
