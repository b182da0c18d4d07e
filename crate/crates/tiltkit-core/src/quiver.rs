//! Quivers, windowed truncations of infinite families, Dynkin
//! classification, and the Euler form.
//!
//! The three built-in infinite families use fixed orientations (they matter:
//! every translate formula downstream is orientation-specific):
//!
//! * `AInf`:    `0 ← 1 → 2 ← 3 → ⋯` — odd vertices are sources.
//! * `AInfInf`: `⋯ → −2 ← −1 → 0 ← 1 → 2 ← ⋯` — odd sources, even sinks.
//! * `DInf`:    `2 → 0`, `2 → 1`, and for even `k ≥ 2` arrows `k → k+1`,
//!   for even `k ≥ 4` arrows `k → k−1` — even vertices `≥ 2` are sources.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mat::ZMat;

/// A labelled arrow of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: i64,
    pub tgt: i64,
}

/// A finite quiver with integer vertex labels.
///
/// Vertices are kept sorted; all derived orderings (matrix indices,
/// topological sorts) are deterministic functions of the labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<i64>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(mut vertices: Vec<i64>, arrows: Vec<Arrow>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        let vset: BTreeSet<i64> = vertices.iter().copied().collect();
        let mut ids = BTreeSet::new();
        for a in &arrows {
            if !vset.contains(&a.src) {
                return Err(Error::UnknownVertex(a.src));
            }
            if !vset.contains(&a.tgt) {
                return Err(Error::UnknownVertex(a.tgt));
            }
            if !ids.insert(a.id.clone()) {
                return Err(Error::BadQuiver("duplicate arrow id"));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor with auto-generated arrow ids.
    pub fn from_arrows(vertices: Vec<i64>, arrow_pairs: &[(i64, i64)]) -> Result<Self> {
        let mut seen: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        let arrows = arrow_pairs
            .iter()
            .map(|&(s, t)| {
                let n = seen.entry((s, t)).or_insert(0);
                let id = if *n == 0 {
                    format!("a{}_{}", s, t)
                } else {
                    format!("a{}_{}x{}", s, t, n)
                };
                *n += 1;
                Arrow { id, src: s, tgt: t }
            })
            .collect();
        Quiver::new(vertices, arrows)
    }

    pub fn vertices(&self) -> &[i64] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn has_vertex(&self, v: i64) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn vertex_index(&self, v: i64) -> Result<usize> {
        self.vertices.binary_search(&v).map_err(|_| Error::UnknownVertex(v))
    }

    pub fn arrow(&self, id: &str) -> Result<&Arrow> {
        self.arrows
            .iter()
            .find(|a| a.id == id)
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn arrows_from(&self, v: i64) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.src == v)
    }

    pub fn arrows_into(&self, v: i64) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.tgt == v)
    }

    /// Number of arrows `v → w`.
    pub fn arrow_count(&self, v: i64, w: i64) -> usize {
        self.arrows.iter().filter(|a| a.src == v && a.tgt == w).count()
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { id: a.id.clone(), src: a.tgt, tgt: a.src })
                .collect(),
        }
    }

    /// Connectivity of the underlying undirected graph. Empty quivers count
    /// as connected.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                let next = if a.src == v {
                    a.tgt
                } else if a.tgt == v {
                    a.src
                } else {
                    continue;
                };
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Topological order (sources first, ties broken by vertex label).
    /// Errors on directed cycles.
    pub fn topo_order(&self) -> Result<Vec<i64>> {
        let mut indeg: BTreeMap<i64, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for a in &self.arrows {
            *indeg.get_mut(&a.tgt).unwrap() += 1;
        }
        let mut ready: BTreeSet<i64> =
            indeg.iter().filter(|&(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for a in self.arrows_from(v) {
                let d = indeg.get_mut(&a.tgt).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(a.tgt);
                }
            }
        }
        if order.len() == self.vertices.len() {
            Ok(order)
        } else {
            Err(Error::BadQuiver("quiver has a directed cycle"))
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topo_order().is_ok()
    }

    pub fn sinks(&self) -> Vec<i64> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.arrows_from(v).next().is_none())
            .collect()
    }

    pub fn sources(&self) -> Vec<i64> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.arrows_into(v).next().is_none())
            .collect()
    }

    /// Euler matrix `E[v][w] = δ_vw − #(arrows v → w)` in sorted vertex
    /// order, so `⟨d, e⟩ = dᵀ E e` for dimension vectors of that order.
    pub fn euler_matrix(&self) -> ZMat {
        let n = self.vertices.len();
        let mut e = ZMat::identity(n);
        for a in &self.arrows {
            let i = self.vertex_index(a.src).unwrap();
            let j = self.vertex_index(a.tgt).unwrap();
            e.set(i, j, e.at(i, j) - 1);
        }
        e
    }

    /// The Euler pairing `⟨d, e⟩ = dᵀ E e`.
    pub fn euler_pairing(&self, d: &DimVector, e: &DimVector) -> i64 {
        let em = self.euler_matrix();
        let dv = d.to_dense(self);
        let ev = e.to_dense(self);
        let n = self.vertices.len();
        let mut acc = 0i64;
        for i in 0..n {
            for j in 0..n {
                acc += dv[i] * em.at(i, j) * ev[j];
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Dimension vectors.
// ---------------------------------------------------------------------------

/// Sparse integer vector indexed by vertex labels. Genuine dimension vectors
/// are nonnegative; differences (mesh bookkeeping) may dip below zero, which
/// is meaningful — it signals a terminating orbit.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DimVector(BTreeMap<i64, i64>);

impl DimVector {
    pub fn new() -> Self {
        DimVector(BTreeMap::new())
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut d = DimVector::new();
        for &(v, x) in pairs {
            d.set(v, d.get(v) + x);
        }
        d
    }

    pub fn unit(v: i64) -> Self {
        DimVector::from_pairs(&[(v, 1)])
    }

    pub fn get(&self, v: i64) -> i64 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: i64, x: i64) {
        if x == 0 {
            self.0.remove(&v);
        } else {
            self.0.insert(v, x);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&v, &x)| (v, x))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|&x| x >= 0)
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, x) in other.iter() {
            out.set(v, out.get(v) + x);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, x) in other.iter() {
            out.set(v, out.get(v) - x);
        }
        out
    }

    pub fn scaled(&self, c: i64) -> Self {
        let mut out = DimVector::new();
        for (v, x) in self.iter() {
            out.set(v, c * x);
        }
        out
    }

    /// Dense coordinates in the quiver's sorted vertex order. Entries
    /// outside the quiver are ignored.
    pub fn to_dense(&self, q: &Quiver) -> Vec<i64> {
        q.vertices().iter().map(|&v| self.get(v)).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, (v, x)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", v, x)?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// Infinite families and truncation.
// ---------------------------------------------------------------------------

/// Rule generating an infinite locally finite quiver from a finite seed:
/// for every seed arrow `(s, t)` and every integer `k`, the quiver has an
/// arrow `s + k·period → t + k·period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CustomGenerator {
    pub period: i64,
    pub seed_arrows: Vec<(i64, i64)>,
}

/// Generators for the infinite quivers whose components are classified here,
/// plus an escape hatch for custom periodic shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteFamily {
    AInf,
    AInfInf,
    DInf,
    Custom(CustomGenerator),
}

impl InfiniteFamily {
    fn is_builtin(&self) -> bool {
        !matches!(self, InfiniteFamily::Custom(_))
    }

    /// Does the infinite quiver contain this vertex?
    fn contains_vertex(&self, v: i64) -> bool {
        match self {
            InfiniteFamily::AInf | InfiniteFamily::DInf => v >= 0,
            InfiniteFamily::AInfInf => true,
            InfiniteFamily::Custom(g) => {
                // endpoint of some translated seed arrow
                g.seed_arrows
                    .iter()
                    .any(|&(s, t)| (v - s).rem_euclid(g.period) == 0 || (v - t).rem_euclid(g.period) == 0)
            }
        }
    }

    /// All arrows of the infinite quiver with both endpoints in `[lo, hi]`.
    fn arrows_in(&self, lo: i64, hi: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        match self {
            InfiniteFamily::AInf | InfiniteFamily::AInfInf => {
                let min = if matches!(self, InfiniteFamily::AInf) { 0 } else { i64::MIN / 2 };
                // odd k is the source of k → k−1 and k → k+1
                let mut k = lo.max(min);
                if k.rem_euclid(2) == 0 {
                    k += 1;
                }
                while k <= hi {
                    if k - 1 >= lo && k - 1 >= min {
                        out.push((k, k - 1));
                    }
                    if k + 1 <= hi {
                        out.push((k, k + 1));
                    }
                    k += 2;
                }
            }
            InfiniteFamily::DInf => {
                if lo <= 0 && 2 <= hi {
                    out.push((2, 0));
                }
                if lo <= 1 && 2 <= hi {
                    out.push((2, 1));
                }
                let mut k = lo.max(2);
                if k.rem_euclid(2) == 1 {
                    k += 1;
                }
                while k <= hi {
                    if k + 1 <= hi {
                        out.push((k, k + 1));
                    }
                    if k >= 4 && k - 1 >= lo {
                        out.push((k, k - 1));
                    }
                    k += 2;
                }
            }
            InfiniteFamily::Custom(g) => {
                for &(s, t) in &g.seed_arrows {
                    // shifts k with both s+kp and t+kp inside the window
                    let p = g.period;
                    let k_lo = (lo - s.min(t)).div_euclid(p) - 1;
                    let k_hi = (hi - s.max(t)).div_euclid(p) + 1;
                    for k in k_lo..=k_hi {
                        let (a, b) = (s + k * p, t + k * p);
                        if a >= lo && a <= hi && b >= lo && b <= hi {
                            out.push((a, b));
                        }
                    }
                }
                out.sort_unstable();
            }
        }
        out
    }

    /// Full subquiver on the window's vertices.
    pub fn truncate(&self, lo: i64, hi: i64) -> Result<Quiver> {
        if lo > hi {
            return Err(Error::BadWindow(format!("empty window [{}, {}]", lo, hi)));
        }
        if let InfiniteFamily::Custom(g) = self {
            if g.period <= 0 {
                return Err(Error::BadQuiver("custom generator needs period > 0"));
            }
            if g.seed_arrows.is_empty() {
                return Err(Error::BadQuiver("custom generator needs seed arrows"));
            }
        }
        let vertices: Vec<i64> = (lo..=hi).filter(|&v| self.contains_vertex(v)).collect();
        if vertices.is_empty() {
            return Err(Error::BadWindow(format!(
                "window [{}, {}] misses the family entirely",
                lo, hi
            )));
        }
        Quiver::from_arrows(vertices, &self.arrows_in(lo, hi))
    }
}

// ---------------------------------------------------------------------------
// Classification.
// ---------------------------------------------------------------------------

/// Underlying-graph type of a finite connected quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    A(usize),
    D(usize),
    E(u8),
    /// Tits form positive semidefinite but not definite (extended Dynkin).
    Euclidean,
    /// Tits form indefinite.
    Wild,
}

impl Classification {
    pub fn is_dynkin(&self) -> bool {
        matches!(self, Classification::A(_) | Classification::D(_) | Classification::E(_))
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::A(n) => write!(f, "A{}", n),
            Classification::D(n) => write!(f, "D{}", n),
            Classification::E(n) => write!(f, "E{}", n),
            Classification::Euclidean => write!(f, "Euclidean"),
            Classification::Wild => write!(f, "non-Dynkin (wild)"),
        }
    }
}

/// Dynkin/Euclidean/wild classification of a finite connected quiver.
///
/// Two independent computations must agree: tree-shape analysis of the
/// underlying graph, and definiteness of the symmetrized Euler form
/// (positive definite ⟺ Dynkin, positive semidefinite ⟺ Euclidean).
pub fn classify(q: &Quiver) -> Result<Classification> {
    if q.vertices().is_empty() {
        return Err(Error::Precondition("classify needs a nonempty quiver".into()));
    }
    if !q.is_connected() {
        return Err(Error::Precondition("classify needs a connected quiver".into()));
    }
    let shape = classify_by_shape(q);
    let e = q.euler_matrix();
    let n = q.vertices().len();
    let sym = ZMat::from_fn(n, n, |i, j| e.at(i, j) + e.at(j, i));
    let by_form = match definiteness(&sym) {
        Definiteness::PositiveDefinite => shape,
        Definiteness::PositiveSemidefinite => Some(Classification::Euclidean),
        Definiteness::Indefinite => Some(Classification::Wild),
    };
    match (shape, by_form) {
        (Some(s), Some(f)) if s == f => Ok(s),
        (None, Some(f)) if !f.is_dynkin() => Ok(f),
        _ => Err(Error::Internal(
            "shape classification and Tits-form definiteness disagree".into(),
        )),
    }
}

/// ADE recognition by tree shape; `None` when the graph is not ADE.
fn classify_by_shape(q: &Quiver) -> Option<Classification> {
    let n = q.vertices().len();
    let edges = q.arrows().len();
    // self-loops, parallel edges (any direction), or a cycle rule out ADE
    if edges + 1 != n {
        return None; // connected + tree ⟺ |E| = |V| − 1
    }
    let mut pair_seen = BTreeSet::new();
    for a in q.arrows() {
        if a.src == a.tgt {
            return None;
        }
        let key = (a.src.min(a.tgt), a.src.max(a.tgt));
        if !pair_seen.insert(key) {
            return None;
        }
    }
    let degree = |v: i64| {
        q.arrows().iter().filter(|a| a.src == v).count()
            + q.arrows().iter().filter(|a| a.tgt == v).count()
    };
    let branch: Vec<i64> = q.vertices().iter().copied().filter(|&v| degree(v) >= 3).collect();
    match branch.len() {
        0 => Some(Classification::A(n)),
        1 => {
            let b = branch[0];
            if degree(b) != 3 {
                return None;
            }
            // walk the three arms away from b
            let mut arms: Vec<usize> = Vec::new();
            for a in q.arrows() {
                let next = if a.src == b {
                    a.tgt
                } else if a.tgt == b {
                    a.src
                } else {
                    continue;
                };
                let mut len = 1;
                let (mut prev, mut cur) = (b, next);
                loop {
                    let step = q.arrows().iter().find_map(|e| {
                        let w = if e.src == cur {
                            e.tgt
                        } else if e.tgt == cur {
                            e.src
                        } else {
                            return None;
                        };
                        (w != prev).then_some(w)
                    });
                    match step {
                        Some(w) => {
                            prev = cur;
                            cur = w;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(Classification::D(n)),
                [1, 2, 2] => Some(Classification::E(6)),
                [1, 2, 3] => Some(Classification::E(7)),
                [1, 2, 4] => Some(Classification::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

/// Exact definiteness of a symmetric integer matrix via symmetric (LDLᵀ)
/// elimination over the rationals. A zero pivot is admissible for
/// semidefiniteness only when its entire row already vanishes.
fn definiteness(sym: &ZMat) -> Definiteness {
    let n = sym.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from(BigInt::from(sym.at(i, j)))).collect())
        .collect();
    let mut definite = true;
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&p) = active.first() {
        let d = m[p][p].clone();
        if d < BigRational::zero() {
            return Definiteness::Indefinite;
        }
        if d.is_zero() {
            if active.iter().any(|&j| !m[p][j].is_zero()) {
                return Definiteness::Indefinite;
            }
            definite = false;
            active.remove(0);
            continue;
        }
        for &i in active.iter().skip(1) {
            let f = &m[i][p] / &d;
            for &j in &active {
                let v = &m[i][j] - &f * &m[p][j];
                m[i][j] = v;
            }
        }
        active.remove(0);
    }
    if definite {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::PositiveSemidefinite
    }
}

/// Grow a window around `sub` inside a non-Dynkin family until the
/// truncation is connected and classifies as non-Dynkin. The three infinite
/// Dynkin families admit no such extension; asking for one is an error.
pub fn extend_to_non_dynkin(f: &InfiniteFamily, sub: &Quiver) -> Result<Quiver> {
    if f.is_builtin() {
        return Err(Error::Precondition(
            "no non-Dynkin extension exists inside an infinite Dynkin family".into(),
        ));
    }
    if sub.vertices().is_empty() {
        return Err(Error::Precondition("extend_to_non_dynkin needs a nonempty seed".into()));
    }
    if sub.is_connected() && classify(sub).map(|c| !c.is_dynkin()).unwrap_or(false) {
        return Ok(sub.clone());
    }
    let lo0 = *sub.vertices().first().unwrap();
    let hi0 = *sub.vertices().last().unwrap();
    for margin in 0..=64 {
        let q = f.truncate(lo0 - margin, hi0 + margin)?;
        if !sub.vertices().iter().all(|&v| q.has_vertex(v)) || !q.is_connected() {
            continue;
        }
        if let Ok(c) = classify(&q) {
            if !c.is_dynkin() {
                return Ok(q);
            }
        }
    }
    Err(Error::Precondition(
        "no non-Dynkin truncation found within 64 window steps; generator may be Dynkin".into(),
    ))
}
