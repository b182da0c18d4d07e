//! Quiver representations and their homological linear algebra.
//!
//! Conventions (fixed once, used everywhere):
//!
//! * Representations are covariant: an arrow `α: u → v` acts by a matrix
//!   `M(α)` of shape `dim(v) × dim(u)` (columns = source).
//! * `P(v)` has the paths starting at `v` as its basis, so
//!   `Hom(P(v), M) ≅ M_v`; `I(v)` is the dual of the projective at `v` over
//!   the opposite quiver.
//! * Path composition is written function-style: a path is stored in
//!   traversal order `a₁, …, a_k` (first arrow leaves the path's source) and
//!   acts by `M(a_k)⋯M(a₁)`.
//!
//! `Hom(M, N)` is the kernel, and `Ext¹(M, N)` the cokernel, of the single
//! constraint map `⊕_v Hom(M_v, N_v) → ⊕_{α:u→w} Hom(M_u, N_w)`,
//! `(f_v) ↦ (N(α)f_u − f_w M(α))`; for hereditary path algebras this two-term
//! complex computes both spaces, and `dim Hom − dim Ext¹ = ⟨dim M, dim N⟩`
//! falls out for free.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat::Mat;
use crate::quiver::{DimVector, Quiver};

// ---------------------------------------------------------------------------
// Paths.
// ---------------------------------------------------------------------------

/// A directed path, stored in traversal order (`arrows[0]` leaves `src`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub src: i64,
    pub tgt: i64,
    pub arrows: Vec<String>,
}

impl Path {
    pub fn trivial(v: i64) -> Self {
        Path { src: v, tgt: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// All paths starting at `v`, BFS by length (trivial path first), otherwise
/// in arrow-declaration order. Requires an acyclic quiver.
pub fn paths_from(q: &Quiver, v: i64) -> Result<Vec<Path>> {
    if !q.has_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    if !q.is_acyclic() {
        return Err(Error::BadQuiver("path enumeration requires an acyclic quiver"));
    }
    let mut all = vec![Path::trivial(v)];
    let mut frontier = vec![Path::trivial(v)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.tgt) {
                let mut arrows = p.arrows.clone();
                arrows.push(a.id.clone());
                next.push(Path { src: v, tgt: a.tgt, arrows });
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}

// ---------------------------------------------------------------------------
// Representations.
// ---------------------------------------------------------------------------

/// A finite-dimensional representation. Vertices of dimension zero are kept
/// out of the maps; `mat` materializes zero-sized matrices on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep<F: Field> {
    quiver: Arc<Quiver>,
    dims: BTreeMap<i64, usize>,
    mats: BTreeMap<String, Mat<F>>,
}

impl<F: Field> Rep<F> {
    pub fn new(
        quiver: Arc<Quiver>,
        dims: BTreeMap<i64, usize>,
        mats: BTreeMap<String, Mat<F>>,
    ) -> Result<Self> {
        let dims: BTreeMap<i64, usize> =
            dims.into_iter().filter(|&(_, d)| d > 0).collect();
        for &v in dims.keys() {
            if !quiver.has_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        let mut kept: BTreeMap<String, Mat<F>> = BTreeMap::new();
        for (id, m) in mats {
            let a = quiver.arrow(&id)?;
            let (r, c) = (
                dims.get(&a.tgt).copied().unwrap_or(0),
                dims.get(&a.src).copied().unwrap_or(0),
            );
            if m.rows() != r || m.cols() != c {
                return Err(Error::DimMismatch { ctx: "arrow matrix shape" });
            }
            if r > 0 && c > 0 {
                kept.insert(id, m);
            }
        }
        // matrices for arrows between positive-dimensional vertices default
        // to zero only when explicitly absent — that is a valid rep, so allow
        Ok(Rep { quiver, dims, mats: kept })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        Rep { quiver, dims: BTreeMap::new(), mats: BTreeMap::new() }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self, v: i64) -> usize {
        self.dims.get(&v).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero_rep(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector::from_pairs(
            &self.dims.iter().map(|(&v, &d)| (v, d as i64)).collect::<Vec<_>>(),
        )
    }

    /// The matrix of an arrow (zero-sized or zero when not stored).
    pub fn mat(&self, arrow_id: &str) -> Result<Mat<F>> {
        match self.mats.get(arrow_id) {
            Some(m) => Ok(m.clone()),
            None => {
                let a = self.quiver.arrow(arrow_id)?;
                Ok(Mat::zero(self.dim(a.tgt), self.dim(a.src)))
            }
        }
    }

    /// Action of a whole path: product of arrow matrices, identity for the
    /// trivial path.
    pub fn path_action(&self, p: &Path) -> Result<Mat<F>> {
        let mut acc = Mat::identity(self.dim(p.src));
        for id in &p.arrows {
            acc = self.mat(id)?.mul(&acc)?;
        }
        Ok(acc)
    }

    pub fn same_quiver(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver
    }
}

// ---------------------------------------------------------------------------
// Morphisms.
// ---------------------------------------------------------------------------

/// A morphism of representations: one matrix per vertex, commuting with all
/// arrow actions.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMap<F: Field> {
    source: Rep<F>,
    target: Rep<F>,
    mats: BTreeMap<i64, Mat<F>>,
}

impl<F: Field> RepMap<F> {
    pub fn new(source: Rep<F>, target: Rep<F>, mats: BTreeMap<i64, Mat<F>>) -> Result<Self> {
        if !source.same_quiver(&target) {
            return Err(Error::QuiverMismatch);
        }
        let mut kept = BTreeMap::new();
        for &v in source.quiver.vertices().iter() {
            let (r, c) = (target.dim(v), source.dim(v));
            let m = mats.get(&v).cloned().unwrap_or_else(|| Mat::zero(r, c));
            if m.rows() != r || m.cols() != c {
                return Err(Error::DimMismatch { ctx: "vertex map shape" });
            }
            if r > 0 && c > 0 {
                kept.insert(v, m);
            }
        }
        let map = RepMap { source, target, mats: kept };
        map.check_commutes()?;
        Ok(map)
    }

    fn check_commutes(&self) -> Result<()> {
        for a in self.source.quiver.arrows() {
            let lhs = self.target.mat(&a.id)?.mul(&self.mat_at(a.src))?;
            let rhs = self.mat_at(a.tgt).mul(&self.source.mat(&a.id)?)?;
            if lhs != rhs {
                return Err(Error::Precondition(format!(
                    "map does not commute with arrow {}",
                    a.id
                )));
            }
        }
        Ok(())
    }

    pub fn zero(source: Rep<F>, target: Rep<F>) -> Result<Self> {
        RepMap::new(source, target, BTreeMap::new())
    }

    pub fn identity(rep: &Rep<F>) -> Self {
        let mats = rep
            .dims
            .iter()
            .map(|(&v, &d)| (v, Mat::identity(d)))
            .collect();
        RepMap { source: rep.clone(), target: rep.clone(), mats }
    }

    pub fn source(&self) -> &Rep<F> {
        &self.source
    }

    pub fn target(&self) -> &Rep<F> {
        &self.target
    }

    pub fn mat_at(&self, v: i64) -> Mat<F> {
        self.mats
            .get(&v)
            .cloned()
            .unwrap_or_else(|| Mat::zero(self.target.dim(v), self.source.dim(v)))
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::DimMismatch { ctx: "compose: target/source" });
        }
        let mut mats = BTreeMap::new();
        for &v in self.source.quiver.vertices() {
            let m = self.mat_at(v).mul(&other.mat_at(v))?;
            if m.rows() > 0 && m.cols() > 0 {
                mats.insert(v, m);
            }
        }
        Ok(RepMap { source: other.source.clone(), target: self.target.clone(), mats })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimMismatch { ctx: "repmap add" });
        }
        let mut mats = BTreeMap::new();
        for &v in self.source.quiver.vertices() {
            let m = self.mat_at(v).add(&other.mat_at(v))?;
            if m.rows() > 0 && m.cols() > 0 {
                mats.insert(v, m);
            }
        }
        Ok(RepMap { source: self.source.clone(), target: self.target.clone(), mats })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mats = self.mats.iter().map(|(&v, m)| (v, m.scale(c))).collect();
        RepMap { source: self.source.clone(), target: self.target.clone(), mats }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.values().all(Mat::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.source
            .quiver
            .vertices()
            .iter()
            .all(|&v| self.mat_at(v).rank() == self.source.dim(v))
    }

    pub fn is_surjective(&self) -> bool {
        self.source
            .quiver
            .vertices()
            .iter()
            .all(|&v| self.mat_at(v).rank() == self.target.dim(v))
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.is_injective()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_iso() {
            return Err(Error::Precondition("inverse of a non-isomorphism".into()));
        }
        let mut mats = BTreeMap::new();
        for (&v, m) in &self.mats {
            mats.insert(v, m.inverse()?.expect("iso is invertible per vertex"));
        }
        Ok(RepMap { source: self.target.clone(), target: self.source.clone(), mats })
    }

    /// Stack all vertex matrices into one coordinate vector (row-major per
    /// vertex, vertices in sorted order). The common currency for solving
    /// linear problems over hom spaces.
    pub fn vectorize(&self) -> Vec<F> {
        let mut out = Vec::new();
        for &v in self.source.quiver.vertices() {
            let m = self.mat_at(v);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.push(m.at(i, j).clone());
                }
            }
        }
        out
    }

    /// Rebuild a map between the given reps from its coordinate vector.
    /// Inverse of [`RepMap::vectorize`]; does not re-check commutativity.
    pub fn from_vector(source: &Rep<F>, target: &Rep<F>, coords: &[F]) -> Result<Self> {
        let mut mats = BTreeMap::new();
        let mut k = 0;
        for &v in source.quiver.vertices() {
            let (r, c) = (target.dim(v), source.dim(v));
            if r * c == 0 {
                continue;
            }
            if k + r * c > coords.len() {
                return Err(Error::DimMismatch { ctx: "from_vector length" });
            }
            let m = Mat::from_fn(r, c, |i, j| coords[k + i * c + j].clone());
            mats.insert(v, m);
            k += r * c;
        }
        if k != coords.len() {
            return Err(Error::DimMismatch { ctx: "from_vector length" });
        }
        Ok(RepMap { source: source.clone(), target: target.clone(), mats })
    }
}

// ---------------------------------------------------------------------------
// Hom and Ext¹.
// ---------------------------------------------------------------------------

/// Constraint matrix whose kernel is `Hom(m, n)` and whose cokernel is
/// `Ext¹(m, n)`. Columns: `vec(f_v)` blocks in sorted vertex order. Rows:
/// one block per quiver arrow in declaration order.
fn hom_constraint_matrix<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<Mat<F>> {
    if !m.same_quiver(n) {
        return Err(Error::QuiverMismatch);
    }
    let q = m.quiver.as_ref();
    let mut col_offset: BTreeMap<i64, usize> = BTreeMap::new();
    let mut cols = 0;
    for &v in q.vertices() {
        col_offset.insert(v, cols);
        cols += m.dim(v) * n.dim(v);
    }
    let rows: usize = q.arrows().iter().map(|a| m.dim(a.src) * n.dim(a.tgt)).sum();
    let mut c: Mat<F> = Mat::zero(rows, cols);
    let mut row_base = 0;
    for a in q.arrows() {
        let (u, w) = (a.src, a.tgt);
        let (mu, nw) = (m.dim(u), n.dim(w));
        if mu * nw > 0 {
            let na = n.mat(&a.id)?; // n_w × n_u
            let ma = m.mat(&a.id)?; // m_w × m_u
            // row (i, j) = entry (i, j) of N(α) f_u − f_w M(α), n_w × m_u
            for i in 0..nw {
                for j in 0..mu {
                    let row = row_base + i * mu + j;
                    // + N(α)[i][k] · f_u[k][j]   (f_u is n_u × m_u)
                    let base_u = col_offset[&u];
                    for k in 0..n.dim(u) {
                        let coef = na.at(i, k).clone();
                        if !coef.is_zero() {
                            let col = base_u + k * m.dim(u) + j;
                            let cur = c.at(row, col).clone();
                            c.set(row, col, cur + coef);
                        }
                    }
                    // − f_w[i][k] · M(α)[k][j]   (f_w is n_w × m_w)
                    let base_w = col_offset[&w];
                    for k in 0..m.dim(w) {
                        let coef = ma.at(k, j).clone();
                        if !coef.is_zero() {
                            let col = base_w + i * m.dim(w) + k;
                            let cur = c.at(row, col).clone();
                            c.set(row, col, cur - coef);
                        }
                    }
                }
            }
        }
        row_base += mu * nw;
    }
    Ok(c)
}

/// Basis of `Hom(m, n)`.
pub fn hom_basis<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<Vec<RepMap<F>>> {
    let c = hom_constraint_matrix(m, n)?;
    let k = c.kernel_basis();
    (0..k.cols())
        .map(|j| RepMap::from_vector(m, n, &k.column(j)))
        .collect()
}

pub fn hom_dim<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<usize> {
    let c = hom_constraint_matrix(m, n)?;
    Ok(c.cols() - c.rank())
}

/// A 1-cocycle: a correction matrix `g_α : M_u → N_w` per arrow `α: u → w`.
/// Zero-sized blocks are omitted.
pub type Cocycle<F> = BTreeMap<String, Mat<F>>;

/// `Ext¹(m, n)` presented as the cokernel of the hom constraint map, with a
/// chosen basis of cocycle representatives and the projection used to read
/// coordinates of arbitrary cocycles.
pub struct Ext1<F: Field> {
    m: Rep<F>,
    n: Rep<F>,
    basis: Vec<Cocycle<F>>,
    proj: Mat<F>,
}

impl<F: Field> Ext1<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Cocycle<F>] {
        &self.basis
    }

    fn cocycle_len(&self) -> usize {
        self.m
            .quiver
            .arrows()
            .iter()
            .map(|a| self.m.dim(a.src) * self.n.dim(a.tgt))
            .sum()
    }

    fn vectorize_cocycle(&self, c: &Cocycle<F>) -> Result<Vec<F>> {
        let mut out = Vec::with_capacity(self.cocycle_len());
        for a in self.m.quiver.arrows() {
            let (r, cc) = (self.n.dim(a.tgt), self.m.dim(a.src));
            let g = match c.get(&a.id) {
                Some(g) => {
                    if g.rows() != r || g.cols() != cc {
                        return Err(Error::DimMismatch { ctx: "cocycle block shape" });
                    }
                    g.clone()
                }
                None => Mat::zero(r, cc),
            };
            for i in 0..r {
                for j in 0..cc {
                    out.push(g.at(i, j).clone());
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of a cocycle's class in the chosen basis.
    pub fn coords_of(&self, c: &Cocycle<F>) -> Result<Vec<F>> {
        let v = Mat::col_vec(self.vectorize_cocycle(c)?);
        let coords = self.proj.mul(&v)?;
        Ok((0..coords.rows()).map(|i| coords.at(i, 0).clone()).collect())
    }

    /// The extension `0 → n → E → m → 0` classified by a cocycle:
    /// `E_v = N_v ⊕ M_v`, `E(α) = [[N(α), g_α], [0, M(α)]]`.
    pub fn extension_of(&self, c: &Cocycle<F>) -> Result<ShortExact<F>> {
        let (m, n) = (&self.m, &self.n);
        let q = m.quiver.clone();
        let mut dims = BTreeMap::new();
        for &v in q.vertices() {
            let d = n.dim(v) + m.dim(v);
            if d > 0 {
                dims.insert(v, d);
            }
        }
        let mut mats = BTreeMap::new();
        for a in q.arrows() {
            let g = c
                .get(&a.id)
                .cloned()
                .unwrap_or_else(|| Mat::zero(n.dim(a.tgt), m.dim(a.src)));
            let blocks = vec![
                vec![n.mat(&a.id)?, g],
                vec![Mat::zero(m.dim(a.tgt), n.dim(a.src)), m.mat(&a.id)?],
            ];
            let e = Mat::block(&blocks)?;
            if e.rows() > 0 && e.cols() > 0 {
                mats.insert(a.id.clone(), e);
            }
        }
        let e = Rep::new(q.clone(), dims, mats)?;
        let mut imats = BTreeMap::new();
        let mut pmats = BTreeMap::new();
        for &v in q.vertices() {
            let (nv, mv) = (n.dim(v), m.dim(v));
            if nv + mv == 0 {
                continue;
            }
            imats.insert(
                v,
                Mat::from_fn(nv + mv, nv, |i, j| {
                    if i == j { F::one() } else { F::zero() }
                }),
            );
            pmats.insert(
                v,
                Mat::from_fn(mv, nv + mv, |i, j| {
                    if j == nv + i { F::one() } else { F::zero() }
                }),
            );
        }
        let i = RepMap::new(n.clone(), e.clone(), imats)?;
        let p = RepMap::new(e.clone(), m.clone(), pmats)?;
        ShortExact::new(i, p)
    }

    pub fn extension_of_basis(&self, idx: usize) -> Result<ShortExact<F>> {
        self.extension_of(&self.basis[idx].clone())
    }
}

/// Compute `Ext¹(m, n)`.
pub fn ext1_basis<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<Ext1<F>> {
    let c = hom_constraint_matrix(m, n)?;
    let ck = c.cokernel();
    let q = m.quiver.as_ref();
    // translate each chosen complement coordinate back into a cocycle
    let mut basis = Vec::new();
    for &t in &ck.complement {
        let mut cocycle: Cocycle<F> = BTreeMap::new();
        let mut base = 0;
        for a in q.arrows() {
            let (r, cc) = (n.dim(a.tgt), m.dim(a.src));
            if t >= base && t < base + r * cc {
                let loc = t - base;
                let mut g = Mat::zero(r, cc);
                g.set(loc / cc, loc % cc, F::one());
                cocycle.insert(a.id.clone(), g);
                break;
            }
            base += r * cc;
        }
        basis.push(cocycle);
    }
    Ok(Ext1 { m: m.clone(), n: n.clone(), basis, proj: ck.proj })
}

pub fn ext1_dim<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<usize> {
    let c = hom_constraint_matrix(m, n)?;
    Ok(c.rows() - c.rank())
}

// ---------------------------------------------------------------------------
// Short exact sequences.
// ---------------------------------------------------------------------------

/// `0 → A → B → C → 0`, validated vertexwise.
#[derive(Clone, Debug)]
pub struct ShortExact<F: Field> {
    pub i: RepMap<F>,
    pub p: RepMap<F>,
}

impl<F: Field> ShortExact<F> {
    pub fn new(i: RepMap<F>, p: RepMap<F>) -> Result<Self> {
        if i.target() != p.source() {
            return Err(Error::DimMismatch { ctx: "short exact middle" });
        }
        if !i.is_injective() {
            return Err(Error::Precondition("sequence: left map not injective".into()));
        }
        if !p.is_surjective() {
            return Err(Error::Precondition("sequence: right map not surjective".into()));
        }
        if !p.compose(&i)?.is_zero() {
            return Err(Error::Precondition("sequence: p∘i ≠ 0".into()));
        }
        // exactness in the middle now follows from dimension count
        for &v in i.source().quiver().vertices() {
            if i.source().dim(v) + p.target().dim(v) != i.target().dim(v) {
                return Err(Error::Precondition("sequence: dim count fails".into()));
            }
        }
        Ok(ShortExact { i, p })
    }

    pub fn a(&self) -> &Rep<F> {
        self.i.source()
    }

    pub fn b(&self) -> &Rep<F> {
        self.i.target()
    }

    pub fn c(&self) -> &Rep<F> {
        self.p.target()
    }

    /// Split ⟺ `p` admits a section.
    pub fn is_split(&self) -> Result<bool> {
        Ok(section_of(&self.p)?.is_some())
    }
}

/// Find `s` with `p ∘ s = id` (a section of a surjection), if one exists.
pub fn section_of<F: Field>(p: &RepMap<F>) -> Result<Option<RepMap<F>>> {
    let idc = RepMap::identity(p.target());
    factor_through(&idc, p)
}

/// Solve `p ∘ g = f` for `g : X → B`, where `f : X → C`, `p : B → C`.
pub fn factor_through<F: Field>(f: &RepMap<F>, p: &RepMap<F>) -> Result<Option<RepMap<F>>> {
    if f.target() != p.target() {
        return Err(Error::DimMismatch { ctx: "factor_through targets" });
    }
    let homs = hom_basis(f.source(), p.source())?;
    if homs.is_empty() {
        return Ok(if f.is_zero() {
            Some(RepMap::zero(f.source().clone(), p.source().clone())?)
        } else {
            None
        });
    }
    let cols: Vec<Vec<F>> = homs
        .iter()
        .map(|h| p.compose(h).map(|m| m.vectorize()))
        .collect::<Result<_>>()?;
    let a = Mat::from_fn(cols[0].len(), cols.len(), |i, j| cols[j][i].clone());
    let b = Mat::col_vec(f.vectorize());
    match a.solve(&b)? {
        None => Ok(None),
        Some(x) => {
            let mut g = RepMap::zero(f.source().clone(), p.source().clone())?;
            for (j, h) in homs.iter().enumerate() {
                g = g.add(&h.scale(x.at(j, 0)))?;
            }
            Ok(Some(g))
        }
    }
}

/// Solve `g ∘ i = f` for `g : B → X`, where `f : A → X`, `i : A → B`
/// (factorization through an injection on the left).
pub fn factor_through_left<F: Field>(f: &RepMap<F>, i: &RepMap<F>) -> Result<Option<RepMap<F>>> {
    if f.source() != i.source() {
        return Err(Error::DimMismatch { ctx: "factor_through_left sources" });
    }
    let homs = hom_basis(i.target(), f.target())?;
    if homs.is_empty() {
        return Ok(if f.is_zero() {
            Some(RepMap::zero(i.target().clone(), f.target().clone())?)
        } else {
            None
        });
    }
    let cols: Vec<Vec<F>> = homs
        .iter()
        .map(|h| h.compose(i).map(|m| m.vectorize()))
        .collect::<Result<_>>()?;
    let a = Mat::from_fn(cols[0].len(), cols.len(), |i_, j| cols[j][i_].clone());
    let b = Mat::col_vec(f.vectorize());
    match a.solve(&b)? {
        None => Ok(None),
        Some(x) => {
            let mut g = RepMap::zero(i.target().clone(), f.target().clone())?;
            for (j, h) in homs.iter().enumerate() {
                g = g.add(&h.scale(x.at(j, 0)))?;
            }
            Ok(Some(g))
        }
    }
}

// ---------------------------------------------------------------------------
// Kernels, images, cokernels, sums.
// ---------------------------------------------------------------------------

/// Subrepresentation spanned vertexwise by given column spaces. `cols[v]` is
/// a full-column-rank matrix `target.dim(v) × k_v` whose span is arrow-stable.
fn subrep_from_columns<F: Field>(
    target: &Rep<F>,
    cols: &BTreeMap<i64, Mat<F>>,
) -> Result<(Rep<F>, RepMap<F>)> {
    let q = target.quiver.clone();
    let mut dims = BTreeMap::new();
    for (&v, b) in cols {
        if b.cols() > 0 {
            dims.insert(v, b.cols());
        }
    }
    let getb = |v: i64| -> Mat<F> {
        cols.get(&v)
            .cloned()
            .unwrap_or_else(|| Mat::zero(target.dim(v), 0))
    };
    let mut mats = BTreeMap::new();
    for a in q.arrows() {
        let bu = getb(a.src);
        let bw = getb(a.tgt);
        if bu.cols() == 0 || bw.cols() == 0 {
            continue;
        }
        let rhs = target.mat(&a.id)?.mul(&bu)?;
        let act = bw
            .solve(&rhs)?
            .ok_or(Error::Internal("subrep columns not arrow-stable".into()))?;
        mats.insert(a.id.clone(), act);
    }
    let sub = Rep::new(q, dims, mats)?;
    let incl_mats: BTreeMap<i64, Mat<F>> = sub
        .dims
        .keys()
        .map(|&v| (v, getb(v)))
        .collect();
    let incl = RepMap::new(sub.clone(), target.clone(), incl_mats)?;
    Ok((sub, incl))
}

/// Kernel subobject of a map: `(K, K ↪ source)`.
pub fn kernel_rep<F: Field>(f: &RepMap<F>) -> Result<(Rep<F>, RepMap<F>)> {
    let cols: BTreeMap<i64, Mat<F>> = f
        .source()
        .quiver()
        .vertices()
        .iter()
        .map(|&v| (v, f.mat_at(v).kernel_basis()))
        .collect();
    subrep_from_columns(f.source(), &cols)
}

/// Image subobject: `(I, I ↪ target, source ↠ I)` with
/// `incl ∘ onto = f`.
pub fn image_rep<F: Field>(f: &RepMap<F>) -> Result<(Rep<F>, RepMap<F>, RepMap<F>)> {
    let mut cols = BTreeMap::new();
    for &v in f.source().quiver().vertices() {
        let m = f.mat_at(v);
        let piv = m.pivot_columns();
        let b = Mat::from_fn(m.rows(), piv.len(), |i, j| m.at(i, piv[j]).clone());
        cols.insert(v, b);
    }
    let (img, incl) = subrep_from_columns(f.target(), &cols)?;
    // onto: solve incl_v · g_v = f_v (unique, incl has full column rank)
    let mut omats = BTreeMap::new();
    for &v in f.source().quiver().vertices() {
        if img.dim(v) == 0 || f.source().dim(v) == 0 {
            continue;
        }
        let g = incl
            .mat_at(v)
            .solve(&f.mat_at(v))?
            .ok_or(Error::Internal("image factorization failed".into()))?;
        omats.insert(v, g);
    }
    let onto = RepMap::new(f.source().clone(), img.clone(), omats)?;
    Ok((img, incl, onto))
}

/// Cokernel quotient: `(C, target ↠ C)`.
pub fn cokernel_rep<F: Field>(f: &RepMap<F>) -> Result<(Rep<F>, RepMap<F>)> {
    let q = f.target().quiver().clone();
    let mut projs: BTreeMap<i64, Mat<F>> = BTreeMap::new();
    for &v in q.vertices() {
        projs.insert(v, f.mat_at(v).cokernel().proj);
    }
    let mut dims = BTreeMap::new();
    for (&v, p) in &projs {
        if p.rows() > 0 {
            dims.insert(v, p.rows());
        }
    }
    // induced action: C(α) proj_u = proj_w N(α); solve via the section of
    // proj (pseudo-inverse on the chosen complement): C(α) = proj_w N(α) incl_u
    let mut mats = BTreeMap::new();
    for a in q.arrows() {
        let (u, w) = (a.src, a.tgt);
        let du = dims.get(&u).copied().unwrap_or(0);
        let dw = dims.get(&w).copied().unwrap_or(0);
        if du == 0 || dw == 0 {
            continue;
        }
        let cku = f.mat_at(u).cokernel();
        let act = projs[&w].mul(&f.target().mat(&a.id)?)?.mul(&cku.incl)?;
        mats.insert(a.id.clone(), act);
    }
    let c = Rep::new(q, dims, mats)?;
    let pmap = RepMap::new(
        f.target().clone(),
        c.clone(),
        projs.into_iter().filter(|(_, p)| p.rows() > 0).collect(),
    )?;
    Ok((c, pmap))
}

/// Direct sum with inclusion and projection maps.
pub fn direct_sum<F: Field>(parts: &[Rep<F>]) -> Result<(Rep<F>, Vec<RepMap<F>>, Vec<RepMap<F>>)> {
    let Some(first) = parts.first() else {
        return Err(Error::Precondition("direct_sum of empty list".into()));
    };
    let q = first.quiver.clone();
    for p in parts {
        if !p.same_quiver(first) {
            return Err(Error::QuiverMismatch);
        }
    }
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for &v in q.vertices() {
        let d: usize = parts.iter().map(|p| p.dim(v)).sum();
        if d > 0 {
            dims.insert(v, d);
        }
    }
    let mut mats = BTreeMap::new();
    for a in q.arrows() {
        let blocks: Vec<Vec<Mat<F>>> = parts
            .iter()
            .enumerate()
            .map(|(i, pi)| {
                parts
                    .iter()
                    .enumerate()
                    .map(|(j, pj)| {
                        if i == j {
                            pi.mat(&a.id).expect("validated")
                        } else {
                            Mat::zero(pi.dim(a.tgt), pj.dim(a.src))
                        }
                    })
                    .collect()
            })
            .collect();
        let m = Mat::block(&blocks)?;
        if m.rows() > 0 && m.cols() > 0 {
            mats.insert(a.id.clone(), m);
        }
    }
    let sum = Rep::new(q.clone(), dims, mats)?;
    let mut incls = Vec::new();
    let mut projs = Vec::new();
    let mut offset: BTreeMap<i64, usize> = q.vertices().iter().map(|&v| (v, 0)).collect();
    for part in parts {
        let mut imats = BTreeMap::new();
        let mut pmats = BTreeMap::new();
        for &v in q.vertices() {
            let off = offset[&v];
            let (dv, sv) = (part.dim(v), sum.dim(v));
            if dv == 0 {
                continue;
            }
            imats.insert(
                v,
                Mat::from_fn(sv, dv, |i, j| {
                    if i == off + j { F::one() } else { F::zero() }
                }),
            );
            pmats.insert(
                v,
                Mat::from_fn(dv, sv, |i, j| {
                    if j == off + i { F::one() } else { F::zero() }
                }),
            );
        }
        incls.push(RepMap::new(part.clone(), sum.clone(), imats)?);
        projs.push(RepMap::new(sum.clone(), part.clone(), pmats)?);
        for &v in q.vertices() {
            *offset.get_mut(&v).unwrap() += part.dim(v);
        }
    }
    Ok((sum, incls, projs))
}

// ---------------------------------------------------------------------------
// Standard modules and duality.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Simple,
    Projective,
    Injective,
}

/// `S(v)`, `P(v)`, or `I(v)`.
pub fn standard_module<F: Field>(
    q: &Arc<Quiver>,
    kind: StandardKind,
    v: i64,
) -> Result<Rep<F>> {
    if !q.has_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    match kind {
        StandardKind::Simple => {
            Rep::new(q.clone(), BTreeMap::from([(v, 1)]), BTreeMap::new())
        }
        StandardKind::Projective => projective_module(q, v),
        StandardKind::Injective => {
            let qop = Arc::new(q.opposite());
            let pop: Rep<F> = projective_module(&qop, v)?;
            dualize_to(&pop, q)
        }
    }
}

/// Basis paths of `P(v)` at vertex `w`, in the order `standard_module` uses.
pub fn projective_paths_at(q: &Quiver, v: i64, w: i64) -> Result<Vec<Path>> {
    Ok(paths_from(q, v)?.into_iter().filter(|p| p.tgt == w).collect())
}

fn projective_module<F: Field>(q: &Arc<Quiver>, v: i64) -> Result<Rep<F>> {
    let paths = paths_from(q, v)?;
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for p in &paths {
        *dims.entry(p.tgt).or_insert(0) += 1;
    }
    // per-vertex bases in enumeration order
    let basis_at = |w: i64| -> Vec<&Path> { paths.iter().filter(|p| p.tgt == w).collect() };
    let mut mats = BTreeMap::new();
    for a in q.arrows() {
        let bu = basis_at(a.src);
        let bw = basis_at(a.tgt);
        if bu.is_empty() || bw.is_empty() {
            continue;
        }
        let mut m: Mat<F> = Mat::zero(bw.len(), bu.len());
        for (j, p) in bu.iter().enumerate() {
            let mut arrows = p.arrows.clone();
            arrows.push(a.id.clone());
            let extended = Path { src: v, tgt: a.tgt, arrows };
            let i = bw
                .iter()
                .position(|c| **c == extended)
                .ok_or(Error::Internal("extended path missing from basis".into()))?;
            m.set(i, j, F::one());
        }
        mats.insert(a.id.clone(), m);
    }
    Rep::new(q.clone(), dims, mats)
}

/// The element of `Hom(P(u), P(v))` given by a path `p : v → u`
/// (the generator of `P(u)` is sent to the basis vector `p` of `P(v)_u`).
pub fn projective_hom_from_path<F: Field>(
    q: &Arc<Quiver>,
    u: i64,
    v: i64,
    p: &Path,
) -> Result<RepMap<F>> {
    if p.src != v || p.tgt != u {
        return Err(Error::Precondition("path endpoints must be v → u".into()));
    }
    let pu: Rep<F> = projective_module(q, u)?;
    let pv: Rep<F> = projective_module(q, v)?;
    let mut mats = BTreeMap::new();
    for &w in q.vertices() {
        let bu = projective_paths_at(q, u, w)?;
        let bv = projective_paths_at(q, v, w)?;
        if bu.is_empty() || bv.is_empty() {
            continue;
        }
        let mut m: Mat<F> = Mat::zero(bv.len(), bu.len());
        for (j, r) in bu.iter().enumerate() {
            // q-basis path r : u → w composes to r ∘ p : v → w
            let mut arrows = p.arrows.clone();
            arrows.extend(r.arrows.iter().cloned());
            let composed = Path { src: v, tgt: w, arrows };
            let i = bv
                .iter()
                .position(|c| *c == composed)
                .ok_or(Error::Internal("composed path missing from basis".into()))?;
            m.set(i, j, F::one());
        }
        mats.insert(w, m);
    }
    RepMap::new(pu, pv, mats)
}

/// Dual representation on the opposite quiver (transpose all matrices).
pub fn dualize<F: Field>(m: &Rep<F>) -> Result<Rep<F>> {
    let qop = Arc::new(m.quiver.opposite());
    dualize_to(m, &qop)
}

/// Dualize onto a caller-supplied opposite-quiver handle (so reps built in
/// separate calls share one quiver value).
pub fn dualize_to<F: Field>(m: &Rep<F>, target: &Arc<Quiver>) -> Result<Rep<F>> {
    if **target != m.quiver.opposite() {
        return Err(Error::QuiverMismatch);
    }
    let mats = m
        .mats
        .iter()
        .map(|(id, mat)| (id.clone(), mat.transpose()))
        .collect();
    Rep::new(target.clone(), m.dims.clone(), mats)
}

/// Dual of a morphism: `D(f) : D(target) → D(source)`, vertexwise the
/// transpose. The caller supplies the already-dualized endpoints so that all
/// duals share one opposite-quiver value; shapes and naturality are
/// re-validated by the `RepMap` constructor.
pub fn dualize_map<F: Field>(
    f: &RepMap<F>,
    dual_of_target: &Rep<F>,
    dual_of_source: &Rep<F>,
) -> Result<RepMap<F>> {
    let mut mats = BTreeMap::new();
    for (&v, m) in &f.mats {
        mats.insert(v, m.transpose());
    }
    RepMap::new(dual_of_target.clone(), dual_of_source.clone(), mats)
}

// ---------------------------------------------------------------------------
// Projective presentations and homological dimensions.
// ---------------------------------------------------------------------------

/// A minimal projective presentation `P1 --d--> P0 --cover--> m → 0`,
/// remembering which vertex each projective summand sits at.
pub struct ProjPresentation<F: Field> {
    pub p1: Rep<F>,
    pub p0: Rep<F>,
    pub d: RepMap<F>,
    pub cover: RepMap<F>,
    /// vertices of the projective summands of `p0`, in block order
    pub p0_summands: Vec<i64>,
    /// likewise for `p1`
    pub p1_summands: Vec<i64>,
    /// inclusion maps of the `p0` blocks
    pub p0_incls: Vec<RepMap<F>>,
    /// projection maps onto the `p1` blocks
    pub p1_projs: Vec<RepMap<F>>,
}

/// Top of `m`: the vertexwise cokernel of the sum of all arrow actions.
/// Returns, per vertex with nonzero top, chosen representative columns.
fn top_representatives<F: Field>(m: &Rep<F>) -> Result<BTreeMap<i64, Mat<F>>> {
    let q = m.quiver.as_ref();
    let mut out = BTreeMap::new();
    for &v in q.vertices() {
        let dv = m.dim(v);
        if dv == 0 {
            continue;
        }
        // horizontal stack of all incoming arrow actions
        let mut rad: Mat<F> = Mat::zero(dv, 0);
        for a in q.arrows_into(v) {
            rad = rad.hstack(&m.mat(&a.id)?)?;
        }
        let ck = rad.cokernel();
        if ck.incl.cols() > 0 {
            out.insert(v, ck.incl);
        }
    }
    Ok(out)
}

/// Projective cover `P ↠ m` (minimal: generators biject with top(m)).
pub fn projective_cover<F: Field>(m: &Rep<F>) -> Result<(Rep<F>, RepMap<F>, Vec<i64>, Vec<RepMap<F>>)> {
    let q = m.quiver.clone();
    let tops = top_representatives(m)?;
    let mut summands: Vec<i64> = Vec::new();
    let mut generators: Vec<Vec<F>> = Vec::new(); // generator image in M_v
    for (&v, cols) in &tops {
        for j in 0..cols.cols() {
            summands.push(v);
            generators.push(cols.column(j));
        }
    }
    if summands.is_empty() {
        let z = Rep::zero(q.clone());
        let cov = RepMap::zero(z.clone(), m.clone())?;
        if !m.is_zero_rep() {
            return Err(Error::Internal("nonzero rep with empty top".into()));
        }
        return Ok((z, cov, summands, Vec::new()));
    }
    let projs: Vec<Rep<F>> = summands
        .iter()
        .map(|&v| projective_module(&q, v))
        .collect::<Result<_>>()?;
    let (p0, incls, _) = direct_sum(&projs)?;
    // cover on block k at vertex w: basis path p (v→w) ↦ M(p)(x_k)
    let mut mats: BTreeMap<i64, Mat<F>> = BTreeMap::new();
    for &w in q.vertices() {
        let (rows, cols) = (m.dim(w), p0.dim(w));
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut cmat: Mat<F> = Mat::zero(rows, cols);
        let mut off = 0;
        for (k, &v) in summands.iter().enumerate() {
            let paths = projective_paths_at(&q, v, w)?;
            for (pi, path) in paths.iter().enumerate() {
                let act = m.path_action(path)?; // m_w × m_v
                let x = Mat::col_vec(generators[k].clone());
                let img = act.mul(&x)?;
                for i in 0..rows {
                    cmat.set(i, off + pi, img.at(i, 0).clone());
                }
            }
            off += projs[k].dim(w);
        }
        mats.insert(w, cmat);
    }
    let cover = RepMap::new(p0.clone(), m.clone(), mats)?;
    if !cover.is_surjective() {
        return Err(Error::Internal("projective cover not surjective".into()));
    }
    Ok((p0, cover, summands, incls))
}

pub fn min_proj_presentation<F: Field>(m: &Rep<F>) -> Result<ProjPresentation<F>> {
    let (p0, cover, p0_summands, p0_incls) = projective_cover(m)?;
    let (k, kincl) = kernel_rep(&cover)?;
    let (p1, kcover, p1_summands, _) = projective_cover(&k)?;
    let d = kincl.compose(&kcover)?;
    // projections onto the p1 blocks (for reading path coordinates)
    let projs1: Vec<Rep<F>> = p1_summands
        .iter()
        .map(|&v| projective_module(&p1.quiver, v))
        .collect::<Result<_>>()?;
    let p1_projs = if projs1.is_empty() {
        Vec::new()
    } else {
        let (_, _, pr) = direct_sum(&projs1)?;
        pr
    };
    Ok(ProjPresentation { p1, p0, d, cover, p0_summands, p1_summands, p0_incls, p1_projs })
}

pub fn is_projective<F: Field>(m: &Rep<F>) -> Result<bool> {
    let (_, cover, _, _) = projective_cover(m)?;
    let (k, _) = kernel_rep(&cover)?;
    Ok(k.is_zero_rep())
}

pub fn is_injective_rep<F: Field>(m: &Rep<F>) -> Result<bool> {
    is_projective(&dualize(m)?)
}

/// `(projective dimension, injective dimension)`; both are 0 or 1 over a
/// hereditary path algebra (0 for the zero representation by convention).
pub fn homological_dims<F: Field>(m: &Rep<F>) -> Result<(usize, usize)> {
    if m.is_zero_rep() {
        return Ok((0, 0));
    }
    let pd = if is_projective(m)? { 0 } else { 1 };
    let id = if is_injective_rep(m)? { 0 } else { 1 };
    Ok((pd, id))
}

// ---------------------------------------------------------------------------
// Polynomials (private helper for decomposition).
// ---------------------------------------------------------------------------

/// Dense univariate polynomial, low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct Poly<F>(Vec<F>);

impl<F: Field> Poly<F> {
    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn from_coeffs(mut c: Vec<F>) -> Self {
        while c.last().map_or(false, F::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    fn one() -> Self {
        Poly(vec![F::one()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn monic(&self) -> Result<Self> {
        let lead = self.0.last().ok_or(Error::DivisionByZero)?;
        let inv = lead.inv()?;
        Ok(Poly(self.0.iter().map(|c| c.clone() * inv.clone()).collect()))
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(F::zero);
            let b = other.0.get(i).cloned().unwrap_or_else(F::zero);
            out.push(a - b);
        }
        Poly::from_coeffs(out)
    }

    fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.clone();
        let mut quot = vec![F::zero(); self.0.len().saturating_sub(divisor.0.len()) + 1];
        let dlead = divisor.0.last().unwrap().clone();
        let dinv = dlead.inv()?;
        while !rem.is_zero() && rem.0.len() >= divisor.0.len() {
            let shift = rem.0.len() - divisor.0.len();
            let c = rem.0.last().unwrap().clone() * dinv.clone();
            quot[shift] = c.clone();
            let mut sub = vec![F::zero(); shift];
            sub.extend(divisor.0.iter().map(|d| c.clone() * d.clone()));
            rem = rem.sub(&Poly::from_coeffs(sub));
        }
        Ok((Poly::from_coeffs(quot), rem))
    }

    fn gcd(&self, other: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g` monic.
    fn extended_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let ns = s0.sub(&q.mul(&s1));
            let nt = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
            t0 = t1;
            t1 = nt;
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let lead = r0.0.last().unwrap().clone();
        let inv = lead.inv()?;
        let scale = |p: &Poly<F>| Poly(p.0.iter().map(|c| c.clone() * inv.clone()).collect::<Vec<_>>());
        Ok((scale(&r0), scale(&s0), scale(&t0)))
    }

    fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| F::from_i64(i as i64) * c.clone())
                .collect(),
        )
    }

    fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.0.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluate at an endomorphism (Horner over `RepMap` composition).
    fn eval_at_endo(&self, phi: &RepMap<F>) -> Result<RepMap<F>> {
        let id = RepMap::identity(phi.source());
        let mut acc = RepMap::zero(phi.source().clone(), phi.source().clone())?;
        for c in self.0.iter().rev() {
            acc = acc.compose(phi)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }
}

/// Minimal polynomial of an endomorphism, computed on the total vector space.
fn min_poly<F: Field>(phi: &RepMap<F>) -> Result<Poly<F>> {
    let n = phi.source().total_dim();
    if n == 0 {
        return Ok(Poly::one());
    }
    // iterate powers of the block-diagonal operator
    let verts: Vec<i64> = phi.source().quiver().vertices().to_owned();
    let full = |f: &RepMap<F>| -> Mat<F> {
        let blocks: Vec<Vec<Mat<F>>> = verts
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                verts
                    .iter()
                    .enumerate()
                    .map(|(j, &w)| {
                        if i == j {
                            f.mat_at(v)
                        } else {
                            Mat::zero(f.target().dim(v), f.source().dim(w))
                        }
                    })
                    .collect()
            })
            .collect();
        Mat::block(&blocks).expect("square blocks")
    };
    let op = full(phi);
    let mut powers: Vec<Mat<F>> = vec![Mat::identity(n)];
    loop {
        let k = powers.len();
        let next = powers.last().unwrap().mul(&op)?;
        // solve: next = Σ c_i powers[i] ?
        let a = Mat::from_fn(n * n, k, |row, col| {
            powers[col].at(row / n, row % n).clone()
        });
        let b = Mat::from_fn(n * n, 1, |row, _| next.at(row / n, row % n).clone());
        if let Some(x) = a.solve(&b)? {
            // t^k − Σ c_i t^i
            let mut coeffs = vec![F::zero(); k + 1];
            for i in 0..k {
                coeffs[i] = -x.at(i, 0).clone();
            }
            coeffs[k] = F::one();
            return Ok(Poly::from_coeffs(coeffs));
        }
        powers.push(next);
        if powers.len() > n + 1 {
            return Err(Error::Internal("minimal polynomial search overran".into()));
        }
    }
}

/// Roots of `p` that lie in the prime field / small rationals. Exhaustive
/// over F_p; over ℚ a deterministic sweep of small fractions, peeling each
/// found root so repeated and multiple roots are all collected.
fn small_roots<F: Field>(p: &Poly<F>) -> Result<Vec<F>> {
    let mut roots = Vec::new();
    let mut cur = p.clone();
    let char_p = F::characteristic();
    let candidates: Vec<F> = if char_p > 0 {
        (0..char_p as i64).map(F::from_i64).collect()
    } else {
        let mut c = Vec::new();
        for num in -30i64..=30 {
            c.push(F::from_i64(num));
        }
        for den in 2i64..=12 {
            for num in -30i64..=30 {
                if num.rem_euclid(den) != 0 {
                    c.push(F::from_i64(num) * F::from_i64(den).inv()?);
                }
            }
        }
        c
    };
    'outer: while cur.deg() >= 1 {
        for x in &candidates {
            if cur.eval(x).is_zero() {
                roots.push(x.clone());
                let lin = Poly::from_coeffs(vec![-x.clone(), F::one()]);
                let (q, r) = cur.div_rem(&lin)?;
                debug_assert!(r.is_zero());
                cur = q;
                continue 'outer;
            }
        }
        break;
    }
    roots.dedup_by(|a, b| a == b);
    Ok(roots)
}

// ---------------------------------------------------------------------------
// Decomposition.
// ---------------------------------------------------------------------------

/// Dimension of the semisimple quotient `End(m)/rad`, with the radical
/// certified: the trace-form kernel always contains the radical, and is
/// verified nilpotent (hence equal to it). Returns the radical basis too.
pub fn end_radical<F: Field>(
    end_basis: &[RepMap<F>],
) -> Result<(Vec<RepMap<F>>, usize)> {
    let d = end_basis.len();
    if d == 0 {
        return Ok((Vec::new(), 0));
    }
    // coordinates of arbitrary endos in the given basis
    let basis_vecs: Vec<Vec<F>> = end_basis.iter().map(RepMap::vectorize).collect();
    let bmat = Mat::from_fn(basis_vecs[0].len(), d, |i, j| basis_vecs[j][i].clone());
    let coords = |f: &RepMap<F>| -> Result<Vec<F>> {
        let x = bmat
            .solve(&Mat::col_vec(f.vectorize()))?
            .ok_or(Error::Internal("endo outside End basis span".into()))?;
        Ok((0..d).map(|i| x.at(i, 0).clone()).collect())
    };
    // left regular representation
    let mut left: Vec<Mat<F>> = Vec::with_capacity(d);
    for e in end_basis {
        let mut lm: Mat<F> = Mat::zero(d, d);
        for (j, f) in end_basis.iter().enumerate() {
            let prod = e.compose(f)?;
            for (i, c) in coords(&prod)?.into_iter().enumerate() {
                lm.set(i, j, c);
            }
        }
        left.push(lm);
    }
    let trace = |m: &Mat<F>| -> F {
        let mut t = F::zero();
        for i in 0..m.rows() {
            t = t + m.at(i, i).clone();
        }
        t
    };
    let gram = Mat::from_fn(d, d, |i, j| trace(&left[i].mul(&left[j]).expect("square")));
    let kern = gram.kernel_basis();
    let mut rad: Vec<RepMap<F>> = Vec::new();
    for jcol in 0..kern.cols() {
        let mut f = end_basis[0].scale(&F::zero());
        for i in 0..d {
            f = f.add(&end_basis[i].scale(kern.at(i, jcol)))?;
        }
        rad.push(f);
    }
    // certify nilpotency of the span (always true in char 0; must be checked
    // in char p where the trace form can degenerate for other reasons)
    let mut layer = rad.clone();
    for _ in 0..=d {
        if layer.iter().all(RepMap::is_zero) {
            return Ok((rad, d - kern.cols()));
        }
        // next layer: span of products rad · layer
        let mut prods: Vec<RepMap<F>> = Vec::new();
        for r in &rad {
            for l in &layer {
                prods.push(r.compose(l)?);
            }
        }
        // reduce to an independent spanning set to keep sizes bounded
        if prods.is_empty() {
            return Ok((rad, d - kern.cols()));
        }
        let prod_vecs: Vec<Vec<F>> = prods.iter().map(RepMap::vectorize).collect();
        let vecs = Mat::from_fn(prod_vecs[0].len(), prods.len(), |i, j| {
            prod_vecs[j][i].clone()
        });
        let piv = vecs.pivot_columns();
        layer = piv.into_iter().map(|j| prods[j].clone()).collect();
    }
    Err(Error::SplitFailure(
        "trace-form kernel is not nilpotent; radical not certified over this field".into(),
    ))
}

/// Split `m` into indecomposable summands with multiplicities. Each summand
/// is certified indecomposable: its `End/rad` is one-dimensional, or
/// two-dimensional with an irreducible quadratic minimal polynomial (then a
/// field, so `End` is local either way). Summands are returned in a
/// deterministic order (by dimension vector).
pub fn decompose<F: Field>(m: &Rep<F>) -> Result<Vec<(Rep<F>, usize)>> {
    let mut leaves: Vec<Rep<F>> = Vec::new();
    decompose_into(m, &mut leaves)?;
    // group by isomorphism
    let mut groups: Vec<(Rep<F>, usize)> = Vec::new();
    'next: for leaf in leaves {
        for (rep, count) in groups.iter_mut() {
            if iso_indecomposable(rep, &leaf)? {
                *count += 1;
                continue 'next;
            }
        }
        groups.push((leaf, 1));
    }
    groups.sort_by(|a, b| {
        let ka = (a.0.total_dim(), format!("{}", a.0.dim_vector()));
        let kb = (b.0.total_dim(), format!("{}", b.0.dim_vector()));
        ka.cmp(&kb)
    });
    Ok(groups)
}

fn decompose_into<F: Field>(m: &Rep<F>, out: &mut Vec<Rep<F>>) -> Result<()> {
    if m.is_zero_rep() {
        return Ok(());
    }
    let end = hom_basis(m, m)?;
    let (rad, s_dim) = end_radical(&end)?;
    if s_dim == 1 {
        out.push(m.clone());
        return Ok(());
    }
    // hunt for an idempotent: polynomials of candidate endomorphisms
    let id = RepMap::identity(m);
    let mut candidates: Vec<RepMap<F>> = end.clone();
    for i in 0..end.len() {
        for j in (i + 1)..end.len() {
            candidates.push(end[i].add(&end[j])?);
        }
    }
    for i in 0..end.len() {
        for j in 0..end.len() {
            if i != j {
                candidates.push(end[i].compose(&end[j])?);
            }
        }
    }
    let mut weighted = end[0].scale(&F::zero());
    for (i, e) in end.iter().enumerate() {
        weighted = weighted.add(&e.scale(&F::from_i64(i as i64 + 1)))?;
    }
    candidates.push(weighted);
    for phi in &candidates {
        let p = min_poly(phi)?;
        if p.deg() < 2 {
            continue;
        }
        let sf = p.div_rem(&p.gcd(&p.derivative())?)?.0;
        if sf.deg() < 1 {
            continue;
        }
        for lambda in small_roots(&sf)? {
            // p = (t−λ)^k · p2 with p2(λ) ≠ 0
            let lin = Poly::from_coeffs(vec![-lambda.clone(), F::one()]);
            let mut p1 = Poly::one();
            let mut rest = p.clone();
            loop {
                let (q, r) = rest.div_rem(&lin)?;
                if r.is_zero() {
                    p1 = p1.mul(&lin);
                    rest = q;
                } else {
                    break;
                }
            }
            if rest.deg() == 0 {
                continue; // single eigenvalue: no coprime split from λ
            }
            // Bezout: s·p1 + t·rest = 1; e := (t·rest)(φ) projects onto
            // ker p1(φ)^∞ and is a polynomial in φ, hence a rep endomorphism
            let (g, s, t) = p1.extended_gcd(&rest)?;
            if g.deg() != 0 {
                continue;
            }
            let _ = s;
            let e = t.mul(&rest).eval_at_endo(phi)?;
            if e.is_zero() || e.sub(&id)?.is_zero() {
                continue;
            }
            let (m1, _, _) = image_rep(&e)?;
            let (m2, _, _) = image_rep(&id.sub(&e)?)?;
            if m1.total_dim() + m2.total_dim() != m.total_dim() {
                return Err(Error::Internal("idempotent split lost dimensions".into()));
            }
            decompose_into(&m1, out)?;
            decompose_into(&m2, out)?;
            return Ok(());
        }
    }
    // The eigenvalue sweep can miss: nothing bounds the eigenvalues of an
    // endomorphism over ℚ, and when End/rad is a quadratic field there is no
    // idempotent to find at all. A two-dimensional semisimple quotient is
    // decidable exactly, though: it is either F × F (an idempotent lifts
    // through the radical) or a quadratic field extension (End is local and
    // `m` is indecomposable), and the coset minimal polynomial of any
    // endomorphism that is non-scalar modulo the radical settles which.
    if s_dim == 2 {
        for phi in &candidates {
            let Some((c1, c0)) = coset_quadratic(phi, &rad, &id)? else {
                continue;
            };
            match quadratic_roots(&c1, &c0) {
                QuadRoots::Irreducible => {
                    out.push(m.clone());
                    return Ok(());
                }
                QuadRoots::Ambiguous => continue,
                QuadRoots::Distinct(r1, r2) => {
                    // ē = (φ̄ − r₂)/(r₁ − r₂) is a nontrivial idempotent of
                    // End/rad; Newton steps e ← 3e² − 2e³ lift it through the
                    // radical (e² − e squares at every step, and the radical
                    // is nilpotent, so finitely many steps reach exactness).
                    let scale = (r1 - r2.clone()).inv()?;
                    let mut e = phi.sub(&id.scale(&r2))?.scale(&scale);
                    let (two, three) = (F::from_i64(2), F::from_i64(3));
                    let mut lifted = false;
                    for _ in 0..=end.len() + 2 {
                        let e2 = e.compose(&e)?;
                        if e2.sub(&e)?.is_zero() {
                            lifted = true;
                            break;
                        }
                        let e3 = e2.compose(&e)?;
                        e = e2.scale(&three).sub(&e3.scale(&two))?;
                    }
                    if !lifted || e.is_zero() || e.sub(&id)?.is_zero() {
                        continue;
                    }
                    let (m1, _, _) = image_rep(&e)?;
                    let (m2, _, _) = image_rep(&id.sub(&e)?)?;
                    if m1.total_dim() + m2.total_dim() != m.total_dim() {
                        return Err(Error::Internal(
                            "idempotent split lost dimensions".into(),
                        ));
                    }
                    decompose_into(&m1, out)?;
                    decompose_into(&m2, out)?;
                    return Ok(());
                }
            }
        }
    }
    Err(Error::SplitFailure(format!(
        "could not split or certify a representation (dim {}, End/rad dim {})",
        m.total_dim(),
        s_dim
    )))
}

/// The quadratic relation `φ² ≡ c1·φ + c0 (mod rad)`, or `None` when `φ` is
/// already scalar modulo the radical (and so carries no information).
fn coset_quadratic<F: Field>(
    phi: &RepMap<F>,
    rad: &[RepMap<F>],
    id: &RepMap<F>,
) -> Result<Option<(F, F)>> {
    let vid = id.vectorize();
    let vphi = phi.vectorize();
    let radv: Vec<Vec<F>> = rad.iter().map(RepMap::vectorize).collect();
    let n = vid.len();
    let scalar_mod_rad = Mat::from_fn(n, 1 + radv.len(), |i, j| {
        if j == 0 {
            vid[i].clone()
        } else {
            radv[j - 1][i].clone()
        }
    });
    if scalar_mod_rad.solve(&Mat::col_vec(vphi.clone()))?.is_some() {
        return Ok(None);
    }
    let vsq = phi.compose(phi)?.vectorize();
    let a = Mat::from_fn(n, 2 + radv.len(), |i, j| match j {
        0 => vid[i].clone(),
        1 => vphi[i].clone(),
        _ => radv[j - 2][i].clone(),
    });
    let x = a
        .solve(&Mat::col_vec(vsq))?
        .ok_or_else(|| Error::Internal("quadratic coset relation missing".into()))?;
    Ok(Some((x.at(1, 0).clone(), x.at(0, 0).clone())))
}

enum QuadRoots<F> {
    Distinct(F, F),
    Irreducible,
    Ambiguous,
}

/// Roots in `F` of `t² − c1·t − c0`, decided exactly: exhaustively over F_p,
/// by an exact discriminant square test over ℚ. `Ambiguous` flags a double
/// root, which a semisimple coset polynomial never has.
fn quadratic_roots<F: Field>(c1: &F, c0: &F) -> QuadRoots<F> {
    if F::characteristic() > 0 {
        let p = F::characteristic() as i64;
        let mut roots: Vec<F> = Vec::new();
        for k in 0..p {
            let x = F::from_i64(k);
            let val = x.clone() * x.clone() - c1.clone() * x.clone() - c0.clone();
            if val.is_zero() {
                roots.push(x);
                if roots.len() == 2 {
                    break;
                }
            }
        }
        match (roots.pop(), roots.pop()) {
            (Some(b), Some(a)) => QuadRoots::Distinct(a, b),
            (Some(_), None) => QuadRoots::Ambiguous,
            _ => QuadRoots::Irreducible,
        }
    } else {
        // roots (c1 ± √(c1² + 4·c0)) / 2
        let disc = c1.clone() * c1.clone() + F::from_i64(4) * c0.clone();
        match disc.sqrt() {
            None => QuadRoots::Irreducible,
            Some(s) if s.is_zero() => QuadRoots::Ambiguous,
            Some(s) => {
                let half = F::from_i64(2).inv().expect("characteristic zero");
                QuadRoots::Distinct(
                    (c1.clone() + s.clone()) * half.clone(),
                    (c1.clone() - s) * half,
                )
            }
        }
    }
}

/// Isomorphism test, certified for indecomposable inputs: if `m ≅ n` with
/// `End(m)` local, some hom-basis element must already be invertible.
pub fn iso_indecomposable<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<bool> {
    if m.dims != n.dims {
        return Ok(false);
    }
    Ok(hom_basis(m, n)?.iter().any(RepMap::is_iso))
}

/// General isomorphism test via full decomposition of both sides.
pub fn is_isomorphic<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<bool> {
    if m.dim_vector() != n.dim_vector() {
        return Ok(false);
    }
    let dm = decompose(m)?;
    let mut dn = decompose(n)?;
    if dm.len() != dn.len() {
        return Ok(false);
    }
    for (rep, count) in dm {
        let mut found = None;
        for (k, (other, ocount)) in dn.iter().enumerate() {
            if *ocount == count && iso_indecomposable(&rep, other)? {
                found = Some(k);
                break;
            }
        }
        match found {
            Some(k) => {
                dn.remove(k);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// Split off every projective direct summand, returning the multiset of
/// vertices `(v, count)` whose projectives were peeled and the complement.
///
/// No eigenvalue search is involved: on an acyclic quiver `End P(v) = F·id`,
/// so a copy of `P(v)` splits off exactly when some composite
/// `P(v) → m → P(v)` of hom-basis elements is a nonzero multiple of the
/// identity — a finite bilinear check that cannot miss, since the pairing
/// `Hom(P(v), m) × Hom(m, P(v)) → F` is onto whenever a summand exists.
pub fn split_off_projectives<F: Field>(
    m: &Rep<F>,
) -> Result<(Vec<(i64, usize)>, Rep<F>)> {
    let q = m.quiver().clone();
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    let mut cur = m.clone();
    'peel: while !cur.is_zero_rep() {
        for &v in q.vertices() {
            if cur.dim(v) == 0 {
                continue; // Hom(P(v), cur) ≅ cur_v = 0
            }
            let p = standard_module::<F>(&q, StandardKind::Projective, v)?;
            if p.dim(v) != 1 {
                return Err(Error::Precondition(
                    "projective splitting requires an acyclic quiver".into(),
                ));
            }
            let intos = hom_basis(&p, &cur)?;
            let outs = hom_basis(&cur, &p)?;
            for f in &intos {
                for g in &outs {
                    // g∘f ∈ End P(v); read the scalar at the 1-dim vertex v.
                    let c = g.compose(f)?.mat_at(v).at(0, 0).clone();
                    if c.is_zero() {
                        continue;
                    }
                    let e = f.compose(&g.scale(&c.inv()?))?;
                    let id = RepMap::identity(&cur);
                    let (rest, _, _) = image_rep(&id.sub(&e)?)?;
                    if rest.total_dim() + p.total_dim() != cur.total_dim() {
                        return Err(Error::Internal(
                            "projective split lost dimensions".into(),
                        ));
                    }
                    *counts.entry(v).or_insert(0) += 1;
                    cur = rest;
                    continue 'peel;
                }
            }
        }
        break;
    }
    Ok((counts.into_iter().collect(), cur))
}
