//! Maximal Dyck paths, truncations, local shadow paths, blocking edges, and
//! compatible pairs, together with a component-recursive counting engine.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::quiver::chebyshev_u;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    H,
    V,
}

/// A maximal Dyck path `D_m^{[r]}` for `K(n)`, with its top-level component
/// ranges (copies of `D_{m-1}`, the truncated copy last).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DyckPath {
    pub n: u32,
    pub m: usize,
    pub r: u32,
    pub steps: Vec<Step>,
    /// Half-open ranges of edge positions per component; empty for `m = 1`.
    pub components: Vec<(usize, usize)>,
}

/// A pair of edge subsets, recorded by 1-based `h_i` / `v_j` sub-indices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub struct EdgePair {
    #[serde(rename = "SH")]
    pub sh: Vec<usize>,
    #[serde(rename = "SV")]
    pub sv: Vec<usize>,
}

impl EdgePair {
    pub fn new(mut sh: Vec<usize>, mut sv: Vec<usize>) -> Self {
        sh.sort_unstable();
        sh.dedup();
        sv.sort_unstable();
        sv.dedup();
        EdgePair { sh, sv }
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(if matches!(s, Step::H) { "H" } else { "V" })?;
        }
        Ok(())
    }
}

fn steps_of(n: u32, m: usize) -> Vec<Step> {
    match m {
        1 => vec![Step::H],
        2 => {
            let mut s = vec![Step::H; n as usize];
            s.push(Step::V);
            s
        }
        _ => {
            let prev = steps_of(n, m - 1);
            let drop = steps_of(n, m - 2).len();
            let mut s = Vec::new();
            for _ in 0..n - 1 {
                s.extend_from_slice(&prev);
            }
            s.extend_from_slice(&prev[drop..]);
            s
        }
    }
}

/// Builds the maximal Dyck path `D_m` in the `u_m x u_{m-1}` rectangle.
pub fn build_dyck(n: u32, m: usize) -> Result<DyckPath> {
    if n < 2 {
        return Err(Error::Validation("dyck paths need n >= 2".into()));
    }
    if m < 1 {
        return Err(Error::Validation("dyck paths need m >= 1".into()));
    }
    let steps = steps_of(n, m);
    let components = component_ranges(n, m, 0, steps.len());
    Ok(DyckPath { n, m, r: 0, steps, components })
}

fn component_ranges(n: u32, m: usize, r: u32, total: usize) -> Vec<(usize, usize)> {
    if m < 2 {
        return vec![];
    }
    let u = chebyshev_u(n, m);
    let copy_len = (u[m - 1] + if m >= 2 { u[m - 2] } else { 0 }) as usize;
    let full = (n - r) as usize - 1;
    let mut out = Vec::new();
    let mut at = 0;
    for _ in 0..full {
        out.push((at, at + copy_len));
        at += copy_len;
    }
    out.push((at, total));
    out
}

/// Removes the first `r` copies of `D_{m-1}` from the front of the path.
pub fn truncate_dyck(path: &DyckPath, r: u32) -> Result<DyckPath> {
    if r == 0 {
        return Ok(path.clone());
    }
    if path.m < 2 {
        return Err(Error::Validation("cannot truncate D_1".into()));
    }
    let total_r = path.r + r;
    if total_r > path.n - 1 {
        return Err(Error::Validation(format!("r must satisfy r <= n-1, got {total_r}")));
    }
    let u = chebyshev_u(path.n, path.m);
    let copy_len = (u[path.m - 1] + u[path.m - 2]) as usize;
    let steps = path.steps[r as usize * copy_len..].to_vec();
    let components = component_ranges(path.n, path.m, total_r, steps.len());
    Ok(DyckPath { n: path.n, m: path.m, r: total_r, steps, components })
}

/// `D_m^{[r]}` directly.
pub fn build_dyck_truncated(n: u32, m: usize, r: u32) -> Result<DyckPath> {
    let d = build_dyck(n, m)?;
    truncate_dyck(&d, r)
}

impl DyckPath {
    pub fn h_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::H)).count()
    }

    pub fn v_count(&self) -> usize {
        self.steps.len() - self.h_count()
    }

    /// Global 0-based position of the k-th horizontal edge (1-based k).
    pub fn h_position(&self, k: usize) -> usize {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, Step::H))
            .nth(k - 1)
            .map(|(i, _)| i)
            .expect("h index out of range")
    }

    pub fn v_position(&self, k: usize) -> usize {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, Step::V))
            .nth(k - 1)
            .map(|(i, _)| i)
            .expect("v index out of range")
    }

    /// Membership bitmaps over global positions for a pair.
    fn position_sets(&self, pair: &EdgePair) -> Result<(Vec<bool>, Vec<bool>)> {
        let mut in_sh = vec![false; self.steps.len()];
        let mut in_sv = vec![false; self.steps.len()];
        if pair.sh.iter().any(|&k| k == 0 || k > self.h_count())
            || pair.sv.iter().any(|&k| k == 0 || k > self.v_count())
        {
            return Err(Error::Validation("pair indices out of range".into()));
        }
        for &k in &pair.sh {
            in_sh[self.h_position(k)] = true;
        }
        for &k in &pair.sv {
            in_sv[self.v_position(k)] = true;
        }
        Ok((in_sh, in_sv))
    }

    /// The path never rises above the diagonal of its bounding rectangle.
    pub fn stays_under_diagonal(&self) -> bool {
        let (w, h) = (self.h_count() as i64, self.v_count() as i64);
        let (mut x, mut y) = (0i64, 0i64);
        for s in &self.steps {
            match s {
                Step::H => x += 1,
                Step::V => y += 1,
            }
            if y * w > x * h {
                return false;
            }
        }
        true
    }
}

/// End edge of the local shadow path `D(h; S_H)`: the smallest `e >= h` with
/// `|he n V| = n |he n S_H|`. `None` is the fallback `h v_last` case.
/// Returned as a global 1-based edge index.
pub fn shadow_h(path: &DyckPath, h: usize, sh: &[usize]) -> Option<usize> {
    let start = path.h_position(h);
    let pair = EdgePair::new(sh.to_vec(), vec![]);
    let (in_sh, _) = path.position_sets(&pair).expect("valid S_H");
    let n = path.n as usize;
    let mut v_cnt = 0usize;
    let mut sh_cnt = 0usize;
    for e in start..path.steps.len() {
        if matches!(path.steps[e], Step::V) {
            v_cnt += 1;
        }
        if in_sh[e] {
            sh_cnt += 1;
        }
        if v_cnt == n * sh_cnt {
            return Some(e + 1);
        }
    }
    None
}

/// Start edge of the local shadow path `D(v; S_V)`: the largest `e <= v` with
/// `|ev n H| = n |ev n S_V|`. `None` is the fallback `h_1 v` case.
pub fn shadow_v(path: &DyckPath, v: usize, sv: &[usize]) -> Option<usize> {
    let end = path.v_position(v);
    let pair = EdgePair::new(vec![], sv.to_vec());
    let (_, in_sv) = path.position_sets(&pair).expect("valid S_V");
    let n = path.n as usize;
    let mut h_cnt = 0usize;
    let mut sv_cnt = 0usize;
    for e in (0..=end).rev() {
        if matches!(path.steps[e], Step::H) {
            h_cnt += 1;
        }
        if in_sv[e] {
            sv_cnt += 1;
        }
        if h_cnt == n * sv_cnt {
            return Some(e + 1);
        }
    }
    None
}

/// The rightmost horizontal edge whose shadow path falls back, if any.
pub fn blocking_edge(path: &DyckPath, sh: &[usize]) -> Option<usize> {
    (1..=path.h_count()).rev().find(|&h| shadow_h(path, h, sh).is_none())
}

/// Compatibility by direct scan of the definition: for every `(h, v)` with
/// `h < v` some edge of the subpath `hv` witnesses one of the two counting
/// conditions.
pub fn is_compatible(path: &DyckPath, pair: &EdgePair) -> Result<bool> {
    let (in_sh, in_sv) = path.position_sets(pair)?;
    let len = path.steps.len();
    let n = path.n as usize;
    // prefix[i] = count over positions < i.
    let mut pv = vec![0usize; len + 1];
    let mut ph = vec![0usize; len + 1];
    let mut psh = vec![0usize; len + 1];
    let mut psv = vec![0usize; len + 1];
    for i in 0..len {
        pv[i + 1] = pv[i] + matches!(path.steps[i], Step::V) as usize;
        ph[i + 1] = ph[i] + matches!(path.steps[i], Step::H) as usize;
        psh[i + 1] = psh[i] + in_sh[i] as usize;
        psv[i + 1] = psv[i] + in_sv[i] as usize;
    }
    for hp in 0..len {
        if !in_sh[hp] {
            continue;
        }
        for vp in hp + 1..len {
            if !in_sv[vp] {
                continue;
            }
            let mut ok = false;
            for e in hp..=vp {
                if e != vp && pv[e + 1] - pv[hp] == n * (psh[e + 1] - psh[hp]) {
                    ok = true;
                    break;
                }
                if e != hp && ph[vp + 1] - ph[e] == n * (psv[vp + 1] - psv[e]) {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// Recursive component structure used by the fast test and the counting
// engine. A `Base` piece is a `D_2`-shaped run of `h` horizontals and one
// vertical; larger pieces list their components, truncated copy last.
#[derive(Clone, Debug)]
pub(crate) enum Piece {
    Base { h: usize },
    Node { m: usize, r: u32, comps: Vec<Piece> },
}

impl Piece {
    pub(crate) fn h_count(&self, n: u32) -> usize {
        match self {
            Piece::Base { h } => *h,
            Piece::Node { m, r, .. } => {
                let u = chebyshev_u(n, *m);
                (u[*m] - *r as i64 * u[*m - 1]) as usize
            }
        }
    }

    pub(crate) fn v_count(&self, n: u32) -> usize {
        match self {
            Piece::Base { .. } => 1,
            Piece::Node { m, r, .. } => {
                let u = chebyshev_u(n, *m);
                (u[*m - 1] - *r as i64 * u[*m - 2]) as usize
            }
        }
    }

    pub(crate) fn comps(&self) -> &[Piece] {
        match self {
            Piece::Base { .. } => &[],
            Piece::Node { comps, .. } => comps,
        }
    }
}

pub(crate) fn piece_tree(n: u32, m: usize, r: u32) -> Piece {
    assert!(m >= 2);
    if m == 2 {
        return Piece::Base { h: (n - r) as usize };
    }
    let mut comps = Vec::new();
    for _ in 0..(n - r - 1) {
        comps.push(piece_tree(n, m - 1, 0));
    }
    comps.push(piece_tree(n, m - 1, 1));
    Piece::Node { m, r, comps }
}

// Edges (local H-positions, has_v) of the drop-k suffix of a piece's
// terminal part, which is what the cross-component exclusion tests look at.
fn terminal_suffix_edges(n: u32, comp: &Piece, k: u32) -> (Vec<usize>, Vec<usize>) {
    match comp {
        Piece::Base { h } => {
            // Terminal part of a base piece: its last horizontal and the
            // vertical. The drop level never applies at this depth.
            (vec![*h - 1], vec![0])
        }
        Piece::Node { comps, .. } => {
            let trunc = comps.last().expect("node has components");
            // Offsets of the truncated component inside `comp`.
            let mut h_off = 0;
            let mut v_off = 0;
            for c in &comps[..comps.len() - 1] {
                h_off += c.h_count(n);
                v_off += c.v_count(n);
            }
            match trunc {
                Piece::Base { h } => {
                    let keep_from = k as usize;
                    let hs = (keep_from..*h).map(|i| h_off + i).collect();
                    (hs, vec![v_off])
                }
                Piece::Node { comps: sub, .. } => {
                    let mut hs = Vec::new();
                    let mut vs = Vec::new();
                    let mut sh = h_off;
                    let mut sv = v_off;
                    for (j, c) in sub.iter().enumerate() {
                        let (hc, vc) = (c.h_count(n), c.v_count(n));
                        if j >= k as usize {
                            hs.extend(sh..sh + hc);
                            vs.extend(sv..sv + vc);
                        }
                        sh += hc;
                        sv += vc;
                    }
                    (hs, vs)
                }
            }
        }
    }
}

fn fast_rec(n: u32, piece: &Piece, in_sh: &[bool], in_sv: &[bool]) -> bool {
    match piece {
        Piece::Base { h } => {
            // Inside one D_2-shaped piece a selected vertical forbids any
            // selected horizontal; this is the direct scan's outcome.
            !(in_sv[0] && in_sh[..*h].iter().any(|&b| b))
        }
        Piece::Node { m, r, comps } => {
            let nn = comps.len();
            let mut h_offs = vec![0usize; nn + 1];
            let mut v_offs = vec![0usize; nn + 1];
            for (i, c) in comps.iter().enumerate() {
                h_offs[i + 1] = h_offs[i] + c.h_count(n);
                v_offs[i + 1] = v_offs[i] + c.v_count(n);
            }
            for (i, c) in comps.iter().enumerate() {
                if !fast_rec(n, c, &in_sh[h_offs[i]..h_offs[i + 1]], &in_sv[v_offs[i]..v_offs[i + 1]]) {
                    return false;
                }
            }
            // Exclusion test per peel position p (1-based, truncated last).
            for p in 1..nn {
                let suffix_all_in = in_sv[v_offs[p]..].iter().all(|&b| b)
                    && in_sh[h_offs[p]..].iter().all(|&b| !b);
                if !suffix_all_in {
                    continue;
                }
                let k = if *m >= 4 { r + p as u32 - 1 } else { 0 };
                let comp = &comps[p - 1];
                let (hs, vs) = terminal_suffix_edges(n, comp, k);
                let hit = hs.iter().any(|&hi| !in_sh[h_offs[p - 1] + hi])
                    || vs.iter().any(|&vi| in_sv[v_offs[p - 1] + vi]);
                if !hit {
                    return false;
                }
            }
            true
        }
    }
}

/// Structural compatibility test: piecewise recursion over the components
/// plus the blocking-configuration exclusions; agrees with `is_compatible`.
pub fn is_compatible_fast(path: &DyckPath, pair: &EdgePair) -> Result<bool> {
    if pair.sv.is_empty() {
        // No (h, v) pairs to check.
        if pair.sh.iter().any(|&k| k == 0 || k > path.h_count()) {
            return Err(Error::Validation("pair indices out of range".into()));
        }
        return Ok(true);
    }
    if path.m < 2 {
        return is_compatible(path, pair);
    }
    let (in_sh_pos, in_sv_pos) = path.position_sets(pair)?;
    // Re-index membership by h- and v-subindex.
    let mut in_sh = vec![false; path.h_count()];
    let mut in_sv = vec![false; path.v_count()];
    let (mut hi, mut vi) = (0, 0);
    for (i, s) in path.steps.iter().enumerate() {
        match s {
            Step::H => {
                in_sh[hi] = in_sh_pos[i];
                hi += 1;
            }
            Step::V => {
                in_sv[vi] = in_sv_pos[i];
                vi += 1;
            }
        }
    }
    let tree = piece_tree(path.n, path.m, path.r);
    Ok(fast_rec(path.n, &tree, &in_sh, &in_sv))
}

/// All compatible pairs with the given sizes, in lexicographic order.
pub fn enumerate_compatible(
    path: &DyckPath,
    sh_size: usize,
    sv_size: usize,
) -> Result<Vec<EdgePair>> {
    if sh_size > path.h_count() || sv_size > path.v_count() {
        return Err(Error::Validation("pair sizes exceed edge counts".into()));
    }
    let mut out = Vec::new();
    let hs = combinations(path.h_count(), sh_size);
    let vs = combinations(path.v_count(), sv_size);
    for sh in &hs {
        for sv in &vs {
            let pair = EdgePair::new(sh.clone(), sv.clone());
            if is_compatible_fast(path, &pair)? {
                out.push(pair);
            }
        }
    }
    Ok(out)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    // 1-based index combinations in lexicographic order.
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// Polynomial in one variable with nonnegative integer coefficients, indexed
/// by exponent. Used for the gamma statistic distribution of compatible
/// pairs.
pub type GammaPoly = BTreeMap<i64, u128>;

/// Table of the gamma-graded compatible pair counts of `D_m^{[r]}`,
/// keyed by `(|S_H|, |S_V|)`. At `q = 1` this is the plain count.
pub fn compatible_gamma_table(n: u32, m: usize, r: u32) -> Result<BTreeMap<(usize, usize), GammaPoly>> {
    graded_table(n, m, r, true)
}

/// Plain compatible pair counts by sizes: the gamma table collapsed to
/// exponent zero, computed without tracking the statistic.
pub fn compatible_count_table(n: u32, m: usize, r: u32) -> Result<BTreeMap<(usize, usize), u128>> {
    let table = graded_table(n, m, r, false)?;
    Ok(table.into_iter().map(|(k, poly)| (k, poly.values().sum())).collect())
}

fn graded_table(
    n: u32,
    m: usize,
    r: u32,
    track_gamma: bool,
) -> Result<BTreeMap<(usize, usize), GammaPoly>> {
    if n < 2 || m < 1 || (r > 0 && (m < 2 || r > n - 1)) {
        return Err(Error::Validation("invalid (n, m, r)".into()));
    }
    if m == 1 {
        // A single horizontal edge: any S_H, no verticals.
        let mut out = BTreeMap::new();
        out.insert((0, 0), BTreeMap::from([(0, 1u128)]));
        out.insert((1, 0), BTreeMap::from([(0, 1u128)]));
        return Ok(out);
    }
    let tree = piece_tree(n, m, r);
    let table = node_table(n, &tree, track_gamma);
    let mut out: BTreeMap<(usize, usize), GammaPoly> = BTreeMap::new();
    for (key, poly) in table {
        let slot = out.entry((key.sh, key.sv)).or_default();
        for (g, c) in poly {
            *slot.entry(g).or_insert(0) += c;
        }
    }
    Ok(out)
}

// Classification of a component's selections as seen from its parent.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct TabKey {
    sh: usize,
    sv: usize,
    // Largest part index (1-based) holding a "present" edge: a horizontal
    // outside S_H or a vertical inside S_V. 0 when none.
    selftouch: u8,
    // The terminal component's own selftouch (for grandparent queries).
    tmark: u8,
}

type Table = BTreeMap<TabKey, GammaPoly>;

fn base_table(h: usize, track_gamma: bool) -> Table {
    let mut out: Table = BTreeMap::new();
    // Subsets without the vertical edge: any S_H.
    for mask in 0u32..(1 << h) {
        let sh = mask.count_ones() as usize;
        // Internal gamma: pairs (h_i in S_H, h_j not in S_H) with i < j.
        let mut gamma = 0i64;
        if track_gamma {
            let mut seen_sh = 0i64;
            for j in 0..h {
                if mask & (1 << j) != 0 {
                    seen_sh += 1;
                } else {
                    gamma += seen_sh;
                }
            }
        }
        for v_in in [false, true] {
            if v_in && sh > 0 {
                continue; // incompatible inside the piece
            }
            let mut selftouch = 0u8;
            for j in (0..h).rev() {
                let part_touched = if j + 1 == h {
                    mask & (1 << j) == 0 || v_in
                } else {
                    mask & (1 << j) == 0
                };
                if part_touched {
                    selftouch = j as u8 + 1;
                    break;
                }
            }
            let key = TabKey { sh, sv: v_in as usize, selftouch, tmark: 0 };
            let slot = out.entry(key).or_default();
            *slot.entry(gamma).or_insert(0) += 1;
        }
    }
    out
}

fn node_table(n: u32, piece: &Piece, track_gamma: bool) -> Table {
    let (m, r, comps) = match piece {
        Piece::Base { h } => return base_table(*h, track_gamma),
        Piece::Node { m, r, comps } => (*m, *r, comps),
    };
    let nn = comps.len();
    let tables: Vec<Table> = comps.iter().map(|c| node_table(n, c, track_gamma)).collect();
    let h_counts: Vec<usize> = comps.iter().map(|c| c.h_count(n)).collect();
    let v_counts: Vec<usize> = comps.iter().map(|c| c.v_count(n)).collect();

    // Fold right to left. State key: (SH, SV, suffix_all_in, selftouch so
    // far, tmark), value: gamma distribution of the suffix.
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
    struct FoldKey {
        shs: usize,
        svs: usize,
        all_in: bool,
        selftouch: u8,
        tmark: u8,
    }
    let mut state: BTreeMap<FoldKey, GammaPoly> = BTreeMap::new();
    state.insert(
        FoldKey { shs: 0, svs: 0, all_in: true, selftouch: 0, tmark: 0 },
        BTreeMap::from([(0, 1u128)]),
    );
    let mut h_suffix = 0usize;
    for p in (1..=nn).rev() {
        let mut next: BTreeMap<FoldKey, GammaPoly> = BTreeMap::new();
        for (skey, spoly) in &state {
            for (ckey, cpoly) in &tables[p - 1] {
                // 2-arrow exclusion between component p and the suffix.
                if p < nn && skey.all_in {
                    let k = if m >= 4 { r + p as u32 - 1 } else { 0 };
                    let hit = if m == 3 {
                        ckey.selftouch as usize == comps[p - 1].comps().len().max(
                            match &comps[p - 1] {
                                Piece::Base { h } => *h,
                                _ => 0,
                            },
                        )
                    } else {
                        ckey.tmark as u32 >= k + 1
                    };
                    if !hit {
                        continue;
                    }
                }
                let comp_all_in = ckey.sh == 0 && ckey.sv == v_counts[p - 1];
                let touched = ckey.sv > 0 || ckey.sh < h_counts[p - 1];
                let cross = if track_gamma {
                    ckey.sh as i64
                        * (-(n as i64) * skey.svs as i64 + (h_suffix as i64 - skey.shs as i64))
                        + (v_counts[p - 1] - ckey.sv) as i64 * skey.svs as i64
                } else {
                    0
                };
                let nkey = FoldKey {
                    shs: skey.shs + ckey.sh,
                    svs: skey.svs + ckey.sv,
                    all_in: skey.all_in && comp_all_in,
                    selftouch: if skey.selftouch > 0 {
                        skey.selftouch
                    } else if touched {
                        p as u8
                    } else {
                        0
                    },
                    tmark: if p == nn { ckey.selftouch } else { skey.tmark },
                };
                let slot = next.entry(nkey).or_default();
                for (g1, c1) in cpoly {
                    for (g2, c2) in spoly {
                        *slot.entry(g1 + g2 + cross).or_insert(0) += c1 * c2;
                    }
                }
            }
        }
        state = next;
        h_suffix += h_counts[p - 1];
    }
    let mut out: Table = BTreeMap::new();
    for (fk, poly) in state {
        let key = TabKey { sh: fk.shs, sv: fk.svs, selftouch: fk.selftouch, tmark: fk.tmark };
        let slot = out.entry(key).or_default();
        for (g, c) in poly {
            *slot.entry(g).or_insert(0) += c;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        assert_eq!(build_dyck(3, 2).unwrap().to_string(), "HHHV");
        assert_eq!(build_dyck(3, 3).unwrap().to_string(), "HHHVHHHVHHV");
        let d = build_dyck(2, 4).unwrap();
        assert_eq!((d.h_count(), d.v_count()), (4, 3));
    }

    #[test]
    fn truncation_examples() {
        let d3 = build_dyck(3, 3).unwrap();
        assert_eq!(truncate_dyck(&d3, 0).unwrap().to_string(), "HHHVHHHVHHV");
        assert_eq!(truncate_dyck(&d3, 1).unwrap().to_string(), "HHHVHHV");
        assert_eq!(truncate_dyck(&d3, 2).unwrap().to_string(), "HHV");
        assert!(truncate_dyck(&d3, 3).is_err());
    }

    #[test]
    fn diagonal_invariant_and_short_hooks() {
        for n in [2u32, 3, 4, 5] {
            let u = chebyshev_u(n, 8);
            for m in 2..=8usize {
                let d = build_dyck(n, m).unwrap();
                assert!(d.stays_under_diagonal(), "n={n} m={m}");
                // Count verticals preceded by exactly n-1 horizontals.
                let mut run = 0usize;
                let mut short = 0usize;
                for s in &d.steps {
                    match s {
                        Step::H => run += 1,
                        Step::V => {
                            if run == n as usize - 1 {
                                short += 1;
                            } else {
                                assert_eq!(run, n as usize, "n={n} m={m}");
                            }
                            run = 0;
                        }
                    }
                }
                assert_eq!(short as i64, u[m - 2], "n={n} m={m}");
            }
        }
    }

    #[test]
    fn shadow_examples() {
        let d2 = build_dyck(3, 2).unwrap();
        // S_H empty: the shadow of h is h itself.
        assert_eq!(shadow_h(&d2, 1, &[]), Some(1));
        // D_2, S_H = {h_1}: only one vertical available, fallback.
        assert_eq!(shadow_h(&d2, 1, &[1]), None);
        let d3 = build_dyck(3, 3).unwrap();
        // D_3, S_H = {h_1}: balances exactly at v_3 (global edge 11).
        assert_eq!(shadow_h(&d3, 1, &[1]), Some(11));
        // S_V empty: shadow of v is v.
        assert_eq!(shadow_v(&d2, 1, &[]), Some(4));
        // D_2, v_1 with S_V = {v_1}: balances at h_1.
        assert_eq!(shadow_v(&d2, 1, &[1]), Some(1));
        // D_3, v_2 with S_V = {v_2}: starts at h_4 (global edge 5).
        assert_eq!(shadow_v(&d3, 2, &[2]), Some(5));
    }

    #[test]
    fn blocking_examples() {
        let d2 = build_dyck(3, 2).unwrap();
        assert_eq!(blocking_edge(&d2, &[]), None);
        assert_eq!(blocking_edge(&d2, &[3]), Some(3));
        let d3 = build_dyck(3, 3).unwrap();
        assert_eq!(blocking_edge(&d3, &[1]), None);
    }

    #[test]
    fn compatibility_examples() {
        let d2 = build_dyck(3, 2).unwrap();
        assert!(is_compatible(&d2, &EdgePair::new(vec![1, 3], vec![])).unwrap());
        assert!(!is_compatible(&d2, &EdgePair::new(vec![2], vec![1])).unwrap());
        assert!(is_compatible(&d2, &EdgePair::new(vec![], vec![1])).unwrap());
        let d3 = build_dyck(3, 3).unwrap();
        // Worked pairs: ({h5}, {v3}) is compatible, ({h6}, {v3}) is not.
        assert!(is_compatible(&d3, &EdgePair::new(vec![5], vec![3])).unwrap());
        assert!(!is_compatible(&d3, &EdgePair::new(vec![6], vec![3])).unwrap());
        assert!(!is_compatible(&d3, &EdgePair::new(vec![3], vec![2, 3])).unwrap());
    }

    #[test]
    fn fast_agrees_exhaustively_on_d3() {
        let d3 = build_dyck(3, 3).unwrap();
        for hmask in 0u32..(1 << 8) {
            for vmask in 0u32..(1 << 3) {
                let sh: Vec<usize> = (0..8).filter(|i| hmask & (1 << i) != 0).map(|i| i + 1).collect();
                let sv: Vec<usize> = (0..3).filter(|i| vmask & (1 << i) != 0).map(|i| i + 1).collect();
                let pair = EdgePair::new(sh, sv);
                assert_eq!(
                    is_compatible(&d3, &pair).unwrap(),
                    is_compatible_fast(&d3, &pair).unwrap(),
                    "pair {pair:?}"
                );
            }
        }
    }

    #[test]
    fn enumerate_counts_match_euler_characteristics() {
        let d2 = build_dyck(3, 2).unwrap();
        assert_eq!(enumerate_compatible(&d2, 2, 0).unwrap().len(), 3);
        assert_eq!(enumerate_compatible(&d2, 1, 1).unwrap().len(), 0);
        let d3 = build_dyck(3, 3).unwrap();
        assert_eq!(enumerate_compatible(&d3, 7, 0).unwrap().len(), 8);
    }

    #[test]
    fn gamma_table_matches_enumeration_small() {
        for (n, m, r) in [(3u32, 2usize, 0u32), (3, 3, 0), (3, 3, 1), (4, 2, 0), (4, 3, 2)] {
            let path = build_dyck_truncated(n, m, r).unwrap();
            let table = compatible_gamma_table(n, m, r).unwrap();
            for sh in 0..=path.h_count() {
                for sv in 0..=path.v_count() {
                    let count: u128 =
                        table.get(&(sh, sv)).map(|p| p.values().sum()).unwrap_or(0);
                    let listed = enumerate_compatible(&path, sh, sv).unwrap().len() as u128;
                    assert_eq!(count, listed, "n={n} m={m} r={r} sh={sh} sv={sv}");
                }
            }
        }
    }

    #[test]
    fn pair_json_shape() {
        let pair = EdgePair::new(vec![2, 1], vec![3]);
        assert_eq!(serde_json::to_string(&pair).unwrap(), r#"{"SH":[1,2],"SV":[3]}"#);
    }
}
