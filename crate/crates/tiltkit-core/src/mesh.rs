//! Translation quivers ℤΔ and −ℕΔ, mesh ideals, and bounded-degree path
//! normal forms.
//!
//! The preprojective component of a hereditary path category is the
//! translation quiver −ℕΔ (Δ the opposite of the base quiver) with its mesh
//! category K(−ℕΔ)/⟨m_x⟩; this module builds truncations of ℤΔ and −ℕΔ as
//! pure combinatorial objects, computes in the mesh quotient degree by
//! degree, decides sectionality of paths, and emits the ρ-presentation of
//! ℤΔ (the selfinjective radical-cube-zero companion algebra).
//!
//! Conventions:
//! * A vertex is a pair `(orbit, level)` with `orbit` a vertex of Δ and
//!   `level ∈ 0..=depth`; the translation is `τ(v, n) = (v, n − 1)`.
//! * For each arrow `a: u → v` of Δ and level `n` there is a within-level
//!   arrow `a@n: (u, n) → (v, n)` and (below the top level) a star arrow
//!   `a*@n: (v, n) → (u, n + 1)`.
//! * `σ(a@n) = a*@(n−1)` and `σ(a*@n) = a@n`: for every arrow α the end of
//!   σα is the start of α, and for each vertex `x` of level ≥ 1 the map
//!   `α ↦ σα` is a bijection from arrows into `x` onto arrows out of `τx`.
//! * Paths store their arrows in traversal order (first arrow first).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat::Mat;
use crate::quiver::Quiver;

/// Vertex of a translation quiver: `(orbit, level)`.
pub type TqVertex = (i64, i64);

/// Which translation quiver a window is a truncation of.
///
/// The two kinds have the same vertices and arrows on a window
/// `levels 0..=depth`; the kind records whether level 0 is a genuine
/// projective slice (`MinusNQ`) or an arbitrary slice of the two-sided
/// quiver (`ZQ`). The ρ-presentation is only meaningful for `ZQ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TqKind {
    ZQ,
    MinusNQ,
}

/// An arrow of a translation quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TqArrow {
    /// Display id: `"{base}@{level}"` or `"{base}*@{level}"`.
    pub id: String,
    /// Id of the underlying arrow of Δ.
    pub base: String,
    /// Level the arrow starts from.
    pub level: i64,
    /// Star arrows are the level-raising ones (`a*@n: (v, n) → (u, n+1)`
    /// for `a: u → v`).
    pub star: bool,
    pub src: TqVertex,
    pub tgt: TqVertex,
}

fn arrow_id(base: &str, level: i64, star: bool) -> String {
    if star {
        format!("{base}*@{level}")
    } else {
        format!("{base}@{level}")
    }
}

/// Formal σ of an arrow, as a `(base, level, star)` key; defined on all
/// arrows of the untruncated quiver, whether or not the image lies in the
/// window.
fn sigma_key(a: &TqArrow) -> (String, i64, bool) {
    if a.star {
        (a.base.clone(), a.level, false)
    } else {
        (a.base.clone(), a.level - 1, true)
    }
}

/// Formal σ⁻¹ of an arrow (the unique arrow starting at the end of `a`
/// whose σ is `a`).
fn sigma_inv_key(a: &TqArrow) -> (String, i64, bool) {
    if a.star {
        (a.base.clone(), a.level + 1, false)
    } else {
        (a.base.clone(), a.level, true)
    }
}

/// A finite window of a translation quiver (ℤΔ or −ℕΔ), levels `0..=depth`.
#[derive(Clone, Debug)]
pub struct TranslationQuiver {
    delta: Quiver,
    kind: TqKind,
    depth: usize,
    vertices: Vec<TqVertex>,
    vertex_set: BTreeSet<TqVertex>,
    arrows: Vec<TqArrow>,
    by_id: BTreeMap<String, usize>,
    by_key: BTreeMap<(String, i64, bool), usize>,
    out_ix: BTreeMap<TqVertex, Vec<usize>>,
    in_ix: BTreeMap<TqVertex, Vec<usize>>,
}

/// Build the window `levels 0..=depth` of ℤΔ or −ℕΔ over a finite acyclic
/// base quiver Δ.
pub fn build_znq(delta: &Quiver, depth: usize, kind: TqKind) -> Result<TranslationQuiver> {
    if !delta.is_acyclic() {
        return Err(Error::BadQuiver("translation quiver base must be acyclic"));
    }
    let top = depth as i64;
    let mut vertices = Vec::new();
    for n in 0..=top {
        for &v in delta.vertices() {
            vertices.push((v, n));
        }
    }
    vertices.sort_unstable();
    let vertex_set: BTreeSet<TqVertex> = vertices.iter().copied().collect();

    let mut arrows = Vec::new();
    for n in 0..=top {
        for a in delta.arrows() {
            arrows.push(TqArrow {
                id: arrow_id(&a.id, n, false),
                base: a.id.clone(),
                level: n,
                star: false,
                src: (a.src, n),
                tgt: (a.tgt, n),
            });
            if n < top {
                arrows.push(TqArrow {
                    id: arrow_id(&a.id, n, true),
                    base: a.id.clone(),
                    level: n,
                    star: true,
                    src: (a.tgt, n),
                    tgt: (a.src, n + 1),
                });
            }
        }
    }
    arrows.sort_by(|a, b| {
        (a.level, a.star, &a.base).cmp(&(b.level, b.star, &b.base))
    });

    let mut by_id = BTreeMap::new();
    let mut by_key = BTreeMap::new();
    let mut out_ix: BTreeMap<TqVertex, Vec<usize>> = BTreeMap::new();
    let mut in_ix: BTreeMap<TqVertex, Vec<usize>> = BTreeMap::new();
    for (i, a) in arrows.iter().enumerate() {
        by_id.insert(a.id.clone(), i);
        by_key.insert((a.base.clone(), a.level, a.star), i);
        out_ix.entry(a.src).or_default().push(i);
        in_ix.entry(a.tgt).or_default().push(i);
    }

    Ok(TranslationQuiver {
        delta: delta.clone(),
        kind,
        depth,
        vertices,
        vertex_set,
        arrows,
        by_id,
        by_key,
        out_ix,
        in_ix,
    })
}

impl TranslationQuiver {
    pub fn delta(&self) -> &Quiver {
        &self.delta
    }

    pub fn kind(&self) -> TqKind {
        self.kind
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn vertices(&self) -> &[TqVertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[TqArrow] {
        &self.arrows
    }

    pub fn contains(&self, x: TqVertex) -> bool {
        self.vertex_set.contains(&x)
    }

    pub fn arrow(&self, id: &str) -> Result<&TqArrow> {
        self.by_id
            .get(id)
            .map(|&i| &self.arrows[i])
            .ok_or_else(|| Error::UnknownArrow(String::from(id)))
    }

    /// τ within the window: `(v, n) ↦ (v, n − 1)` for `n ≥ 1`, else `None`
    /// (level-0 vertices are the projectives of −ℕΔ; for a ℤΔ window the
    /// translate merely falls outside).
    pub fn tau(&self, x: TqVertex) -> Option<TqVertex> {
        (x.1 >= 1 && self.contains(x)).then(|| (x.0, x.1 - 1))
    }

    /// τ⁻¹ within the window.
    pub fn tau_inv(&self, x: TqVertex) -> Option<TqVertex> {
        let up = (x.0, x.1 + 1);
        (self.contains(x) && self.contains(up)).then_some(up)
    }

    /// σα, when the image lies in the window.
    pub fn sigma(&self, id: &str) -> Result<Option<&TqArrow>> {
        let a = self.arrow(id)?;
        Ok(self.by_key.get(&sigma_key(a)).map(|&i| &self.arrows[i]))
    }

    /// σ⁻¹α, when the image lies in the window.
    pub fn sigma_inv(&self, id: &str) -> Result<Option<&TqArrow>> {
        let a = self.arrow(id)?;
        Ok(self.by_key.get(&sigma_inv_key(a)).map(|&i| &self.arrows[i]))
    }

    pub fn arrows_out(&self, x: TqVertex) -> Vec<&TqArrow> {
        self.out_ix
            .get(&x)
            .map(|v| v.iter().map(|&i| &self.arrows[i]).collect())
            .unwrap_or_default()
    }

    pub fn arrows_into(&self, x: TqVertex) -> Vec<&TqArrow> {
        self.in_ix
            .get(&x)
            .map(|v| v.iter().map(|&i| &self.arrows[i]).collect())
            .unwrap_or_default()
    }

    /// All arrows from `x` to `y` (more than one for multiple arrows of Δ).
    pub fn arrows_between(&self, x: TqVertex, y: TqVertex) -> Vec<&TqArrow> {
        self.arrows_out(x).into_iter().filter(|a| a.tgt == y).collect()
    }

    /// Whether `x` carries a mesh in this window (its translate is inside).
    pub fn has_mesh(&self, x: TqVertex) -> bool {
        self.tau(x).is_some()
    }

    /// The mesh ideal: one mesh `m_x = Σ_{α into x} α σα` per vertex with
    /// τx in the window.
    pub fn mesh_ideal(&self) -> MeshIdeal {
        let mut meshes = Vec::new();
        for &x in &self.vertices {
            let tau_x = match self.tau(x) {
                Some(t) => t,
                None => continue,
            };
            let mut pairs = Vec::new();
            for a in self.arrows_into(x) {
                let s = self.by_key[&sigma_key(a)];
                pairs.push((a.id.clone(), self.arrows[s].id.clone()));
            }
            pairs.sort();
            meshes.push(Mesh { x, tau_x, pairs });
        }
        MeshIdeal { meshes }
    }

    /// All paths of length `len` starting at `x` (length 0 → the trivial
    /// path), sorted.
    pub fn paths_from_of_length(&self, x: TqVertex, len: usize) -> Vec<TqPath> {
        let mut acc = Vec::new();
        if !self.contains(x) {
            return acc;
        }
        let mut stack: Vec<TqPath> = vec![TqPath::trivial(x)];
        while let Some(p) = stack.pop() {
            if p.len() == len {
                acc.push(p);
                continue;
            }
            for a in self.arrows_out(p.tgt()) {
                let mut ids = p.arrows.clone();
                ids.push(a.id.clone());
                stack.push(TqPath { arrows: ids, src: p.src, tgt: a.tgt });
            }
        }
        acc.sort();
        acc
    }

    /// All paths of length `len` ending at `x`, sorted.
    pub fn paths_into_of_length(&self, x: TqVertex, len: usize) -> Vec<TqPath> {
        let mut acc = Vec::new();
        if !self.contains(x) {
            return acc;
        }
        let mut stack: Vec<TqPath> = vec![TqPath::trivial(x)];
        while let Some(p) = stack.pop() {
            if p.len() == len {
                acc.push(p);
                continue;
            }
            for a in self.arrows_into(p.src()) {
                let mut ids = vec![a.id.clone()];
                ids.extend(p.arrows.iter().cloned());
                stack.push(TqPath { arrows: ids, src: a.src, tgt: p.tgt });
            }
        }
        acc.sort();
        acc
    }

    /// All paths of length `len` anywhere in the window, sorted.
    pub fn paths_of_length(&self, len: usize) -> Vec<TqPath> {
        let mut acc = Vec::new();
        for &x in &self.vertices {
            acc.extend(self.paths_from_of_length(x, len));
        }
        acc.sort();
        acc
    }

    /// All paths `src → tgt` of length `len`, sorted. Levels never decrease
    /// along arrows and rise by at most one per step, which prunes the
    /// search.
    pub fn paths_between_of_length(
        &self,
        src: TqVertex,
        tgt: TqVertex,
        len: usize,
    ) -> Vec<TqPath> {
        let mut acc = Vec::new();
        if !self.contains(src) || !self.contains(tgt) {
            return acc;
        }
        let mut stack: Vec<TqPath> = vec![TqPath::trivial(src)];
        while let Some(p) = stack.pop() {
            let remaining = len - p.len();
            let cur = p.tgt();
            if remaining == 0 {
                if cur == tgt {
                    acc.push(p);
                }
                continue;
            }
            if cur.1 > tgt.1 || (tgt.1 - cur.1) as usize > remaining {
                continue;
            }
            for a in self.arrows_out(cur) {
                let mut ids = p.arrows.clone();
                ids.push(a.id.clone());
                stack.push(TqPath { arrows: ids, src: p.src, tgt: a.tgt });
            }
        }
        acc.sort();
        acc
    }
}

/// A directed path in a translation quiver; arrows in traversal order.
///
/// The derived ordering is lexicographic on the arrow-id sequence (the fixed
/// path ordering used by degreewise elimination).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TqPath {
    arrows: Vec<String>,
    src: TqVertex,
    tgt: TqVertex,
}

impl TqPath {
    pub fn trivial(x: TqVertex) -> Self {
        TqPath { arrows: Vec::new(), src: x, tgt: x }
    }

    /// Build a path from arrow ids in traversal order, validating
    /// composability against the quiver.
    pub fn from_ids(tq: &TranslationQuiver, ids: &[&str]) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::Precondition(String::from(
                "a path needs at least one arrow (use TqPath::trivial for idempotents)",
            )));
        }
        let first = tq.arrow(ids[0])?;
        let mut path = TqPath {
            arrows: vec![first.id.clone()],
            src: first.src,
            tgt: first.tgt,
        };
        for id in &ids[1..] {
            let a = tq.arrow(id)?;
            if a.src != path.tgt {
                return Err(Error::Precondition(format!(
                    "arrows {} and {} do not compose",
                    path.arrows.last().unwrap(),
                    a.id
                )));
            }
            path.arrows.push(a.id.clone());
            path.tgt = a.tgt;
        }
        Ok(path)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn src(&self) -> TqVertex {
        self.src
    }

    pub fn tgt(&self) -> TqVertex {
        self.tgt
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    /// Concatenation: first traverse `self`, then `other`.
    pub fn then(&self, other: &TqPath) -> Result<TqPath> {
        if self.tgt != other.src {
            return Err(Error::Precondition(String::from(
                "path endpoints do not match for composition",
            )));
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().cloned());
        Ok(TqPath { arrows, src: self.src, tgt: other.tgt })
    }
}

/// The mesh `m_x = Σ α σα`, a sum of length-2 paths `τx → x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    pub x: TqVertex,
    pub tau_x: TqVertex,
    /// `(α, σα)` per arrow α into `x`, sorted by α's id.
    pub pairs: Vec<(String, String)>,
}

impl Mesh {
    /// The mesh as a linear combination of paths.
    pub fn expr<F: Field>(&self, tq: &TranslationQuiver) -> Result<PathExpr<F>> {
        let mut e = PathExpr::zero();
        for (alpha, sigma_alpha) in &self.pairs {
            let p = TqPath::from_ids(tq, &[sigma_alpha, alpha])?;
            e.add_scaled(p, F::one());
        }
        Ok(e)
    }
}

/// The list of meshes of a translation-quiver window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshIdeal {
    pub meshes: Vec<Mesh>,
}

/// A finite linear combination of paths with coefficients in `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathExpr<F: Field> {
    terms: BTreeMap<TqPath, F>,
}

impl<F: Field> PathExpr<F> {
    pub fn zero() -> Self {
        PathExpr { terms: BTreeMap::new() }
    }

    pub fn single(p: TqPath) -> Self {
        let mut e = Self::zero();
        e.add_scaled(p, F::one());
        e
    }

    pub fn add_scaled(&mut self, p: TqPath, c: F) {
        let entry = self.terms.entry(p.clone()).or_insert_with(F::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_scaled(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_scaled(p.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (p, k) in &self.terms {
            out.add_scaled(p.clone(), k.clone() * c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TqPath, &F)> {
        self.terms.iter()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(TqPath::len).max().unwrap_or(0)
    }
}

/// Normal form in the mesh quotient `K(window)/⟨m_x⟩`, computed degree by
/// degree up to `max_len`.
///
/// Mesh relations are homogeneous of degree 2 and preserve endpoints, so
/// reduction decomposes into independent blocks indexed by (degree, source,
/// target). Within each block a row-reduced basis of the span of all
/// products `q · m_x · p` of that shape (columns in the fixed lexicographic
/// path ordering) rewrites pivot paths in terms of later paths. Degrees 0
/// and 1 are never reduced. The result is supported on the basis paths of
/// the quotient; it is zero exactly when the input lies in the mesh ideal
/// (through degree `max_len`).
pub fn normal_form<F: Field>(
    tq: &TranslationQuiver,
    expr: &PathExpr<F>,
    max_len: usize,
) -> Result<PathExpr<F>> {
    if expr.max_len() > max_len {
        return Err(Error::Precondition(format!(
            "expression has a path of length {} > max_len {}",
            expr.max_len(),
            max_len
        )));
    }
    let mut by_block: BTreeMap<(usize, TqVertex, TqVertex), Vec<(&TqPath, &F)>> =
        BTreeMap::new();
    for (p, c) in expr.terms() {
        by_block
            .entry((p.len(), p.src(), p.tgt()))
            .or_default()
            .push((p, c));
    }
    let ideal = tq.mesh_ideal();
    let mut out = PathExpr::zero();
    for (&(d, s, t), terms) in &by_block {
        if d < 2 {
            for (p, c) in terms {
                out.add_scaled((*p).clone(), (*c).clone());
            }
            continue;
        }
        let paths = tq.paths_between_of_length(s, t, d);
        let pos: BTreeMap<&TqPath, usize> =
            paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let rows = mesh_multiple_rows::<F>(tq, &ideal, d, s, t, &paths, &pos)?;
        let mut v: Vec<F> = vec![F::zero(); paths.len()];
        for (p, c) in terms {
            let j = *pos.get(p).ok_or_else(|| {
                Error::Internal(String::from("path missing from degree enumeration"))
            })?;
            v[j] = v[j].clone() + (*c).clone();
        }
        if !rows.is_empty() {
            let m = Mat::from_rows(rows)?;
            let (r, pivots) = m.rref();
            for (k, &j) in pivots.iter().enumerate() {
                if v[j].is_zero() {
                    continue;
                }
                let c = v[j].clone();
                for i in 0..paths.len() {
                    v[i] = v[i].clone() - c.clone() * r.at(k, i).clone();
                }
            }
        }
        for (i, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(paths[i].clone(), c);
            }
        }
    }
    Ok(out)
}

/// Dimension of the degree-`d` piece of the mesh quotient, summed over the
/// endpoint blocks (relations never mix paths with different endpoints).
pub fn quotient_dimension<F: Field>(tq: &TranslationQuiver, d: usize) -> Result<usize> {
    if d < 2 {
        return Ok(tq.paths_of_length(d).len());
    }
    let ideal = tq.mesh_ideal();
    let verts: Vec<TqVertex> = tq.vertices().to_vec();
    let mut total = 0usize;
    for &s in &verts {
        for &t in &verts {
            let paths = tq.paths_between_of_length(s, t, d);
            if paths.is_empty() {
                continue;
            }
            let pos: BTreeMap<&TqPath, usize> =
                paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let rows = mesh_multiple_rows::<F>(tq, &ideal, d, s, t, &paths, &pos)?;
            total += paths.len();
            if !rows.is_empty() {
                total -= Mat::from_rows(rows)?.rank();
            }
        }
    }
    Ok(total)
}

/// Coordinate rows (in the degree-`d` path basis of the `src → tgt` block)
/// of all products `q · m_x · p` with `|q| + 2 + |p| = d` and those
/// endpoints.
fn mesh_multiple_rows<F: Field>(
    tq: &TranslationQuiver,
    ideal: &MeshIdeal,
    d: usize,
    src: TqVertex,
    tgt: TqVertex,
    paths: &[TqPath],
    pos: &BTreeMap<&TqPath, usize>,
) -> Result<Vec<Vec<F>>> {
    let mut rows = Vec::new();
    for mesh in &ideal.meshes {
        if mesh.pairs.is_empty() {
            continue;
        }
        for left_len in 0..=(d - 2) {
            let right_len = d - 2 - left_len;
            let lefts = tq.paths_between_of_length(src, mesh.tau_x, left_len);
            if lefts.is_empty() {
                continue;
            }
            let rights = tq.paths_between_of_length(mesh.x, tgt, right_len);
            if rights.is_empty() {
                continue;
            }
            for q in &lefts {
                for p in &rights {
                    let mut row = vec![F::zero(); paths.len()];
                    for (alpha, sigma_alpha) in &mesh.pairs {
                        let mid = TqPath::from_ids(tq, &[sigma_alpha, alpha])?;
                        let full = q.then(&mid)?.then(p)?;
                        let j = *pos.get(&full).ok_or_else(|| {
                            Error::Internal(String::from(
                                "mesh multiple used a path missing from the enumeration",
                            ))
                        })?;
                        row[j] = row[j].clone() + F::one();
                    }
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}

/// Decide sectionality of a vertex path and cross-check the nonvanishing
/// guarantee.
///
/// The path `X_0 → X_1 → ⋯ → X_t` (given by its vertices; consecutive
/// vertices must be joined by at least one arrow) is sectional when
/// `τX_{i+2} ≠ X_i` for all `i`. When it is, every composite of arrow
/// choices along it is required to be nonzero in the mesh quotient — that is
/// the algebraic half of the sectional lemma, checked here independently;
/// disagreement is reported as an internal error. Non-sectional paths return
/// `false` on combinatorial grounds alone (their composites may or may not
/// vanish).
pub fn sectional_nonzero<F: Field>(
    tq: &TranslationQuiver,
    vertices: &[TqVertex],
) -> Result<bool> {
    if vertices.is_empty() {
        return Err(Error::Precondition(String::from("empty vertex path")));
    }
    for &x in vertices {
        if !tq.contains(x) {
            return Err(Error::Precondition(format!(
                "vertex ({}, {}) is outside the window",
                x.0, x.1
            )));
        }
    }
    let mut steps: Vec<Vec<&TqArrow>> = Vec::new();
    for w in vertices.windows(2) {
        let choices = tq.arrows_between(w[0], w[1]);
        if choices.is_empty() {
            return Err(Error::Precondition(format!(
                "broken path: no arrow ({}, {}) → ({}, {})",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
        steps.push(choices);
    }
    for i in 0..vertices.len().saturating_sub(2) {
        let ahead = vertices[i + 2];
        if (ahead.0, ahead.1 - 1) == vertices[i] {
            return Ok(false);
        }
    }
    // Sectional: every arrow-choice composite must be nonzero mod meshes.
    let mut choice = vec![0usize; steps.len()];
    loop {
        if !steps.is_empty() {
            let ids: Vec<&str> = steps
                .iter()
                .zip(&choice)
                .map(|(s, &k)| s[k].id.as_str())
                .collect();
            let p = TqPath::from_ids(tq, &ids)?;
            let nf = normal_form::<F>(tq, &PathExpr::single(p), steps.len())?;
            if nf.is_zero() {
                return Err(Error::Internal(String::from(
                    "sectional path has vanishing composite in the mesh quotient",
                )));
            }
        }
        let mut k = steps.len();
        loop {
            if k == 0 {
                return Ok(true);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < steps[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// One relation of the ρ-presentation of ℤΔ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RhoRelation {
    /// `α σα − β σβ` for arrows α ≠ β with the same end.
    Commute {
        alpha: String,
        sigma_alpha: String,
        beta: String,
        sigma_beta: String,
    },
    /// `α γ` (γ traversed first) for γ ending at the start of α, γ ≠ σα.
    ZeroLeft { alpha: String, gamma: String },
    /// `γ α` (α traversed first) for γ starting at the end of α, γ ≠ σ⁻¹α.
    ZeroRight { alpha: String, gamma: String },
}

impl RhoRelation {
    /// The relation as a linear combination of length-2 paths.
    pub fn expr<F: Field>(&self, tq: &TranslationQuiver) -> Result<PathExpr<F>> {
        match self {
            RhoRelation::Commute { alpha, sigma_alpha, beta, sigma_beta } => {
                let a = PathExpr::single(TqPath::from_ids(tq, &[sigma_alpha, alpha])?);
                let b = PathExpr::single(TqPath::from_ids(tq, &[sigma_beta, beta])?);
                Ok(a.sub(&b))
            }
            RhoRelation::ZeroLeft { alpha, gamma } => {
                Ok(PathExpr::single(TqPath::from_ids(tq, &[gamma, alpha])?))
            }
            RhoRelation::ZeroRight { alpha, gamma } => {
                Ok(PathExpr::single(TqPath::from_ids(tq, &[alpha, gamma])?))
            }
        }
    }
}

/// The ρ-presentation of a ℤΔ window: (i) `ασα − βσβ` for pairs of arrows
/// with a common end, (ii) `αγ` for composable non-mesh pairs, (iii) `γα`
/// for composable non-mesh pairs, exactly as the three families are listed.
///
/// σ here is the formal bijection of the untruncated ℤΔ, so boundary arrows
/// whose σ falls outside the window still generate (ii)/(iii) relations with
/// every in-window partner; family (i) needs both σ-images inside and is
/// emitted per mesh-carrying vertex.
pub fn rho_relations(tq: &TranslationQuiver) -> Result<Vec<RhoRelation>> {
    if tq.kind() != TqKind::ZQ {
        return Err(Error::Precondition(String::from(
            "the ρ-presentation is defined on ZQ windows",
        )));
    }
    let mut rels = Vec::new();
    for &x in tq.vertices() {
        if !tq.has_mesh(x) {
            continue;
        }
        let mut ins = tq.arrows_into(x);
        ins.sort_by(|a, b| a.id.cmp(&b.id));
        for i in 0..ins.len() {
            for j in (i + 1)..ins.len() {
                let sa = tq.sigma(&ins[i].id)?.ok_or_else(|| {
                    Error::Internal(String::from("mesh vertex lost its σ"))
                })?;
                let sb = tq.sigma(&ins[j].id)?.ok_or_else(|| {
                    Error::Internal(String::from("mesh vertex lost its σ"))
                })?;
                rels.push(RhoRelation::Commute {
                    alpha: ins[i].id.clone(),
                    sigma_alpha: sa.id.clone(),
                    beta: ins[j].id.clone(),
                    sigma_beta: sb.id.clone(),
                });
            }
        }
    }
    for alpha in tq.arrows() {
        let sk = sigma_key(alpha);
        for gamma in tq.arrows_into(alpha.src) {
            if (gamma.base.clone(), gamma.level, gamma.star) != sk {
                rels.push(RhoRelation::ZeroLeft {
                    alpha: alpha.id.clone(),
                    gamma: gamma.id.clone(),
                });
            }
        }
        let sik = sigma_inv_key(alpha);
        for gamma in tq.arrows_out(alpha.tgt) {
            if (gamma.base.clone(), gamma.level, gamma.star) != sik {
                rels.push(RhoRelation::ZeroRight {
                    alpha: alpha.id.clone(),
                    gamma: gamma.id.clone(),
                });
            }
        }
    }
    rels.sort();
    Ok(rels)
}
