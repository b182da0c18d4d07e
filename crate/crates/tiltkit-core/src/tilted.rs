//! The tilted endomorphism category of a tilting family, finite-dimensional
//! contravariant modules over it, the four functors of the tilting theorem,
//! canonical sequences on both sides, Grothendieck-group matrices, global
//! dimension, the dual tilting family, and splitting/separating checks.
//!
//! A tilting family `T_0, …, T_{n−1}` is frozen into a [`FinCategory`]: the
//! objects, a basis of every hom space, and the composition structure
//! constants with respect to those bases. Everything downstream — covers,
//! resolutions, the functors `F = Hom(−, m)` and `F′ = Ext¹(−, m)` restricted
//! to the family, and the tensor-side inverses `G` and `G′` — is computed
//! from that table, so a single corrupted constant is caught by the
//! self-check that every verification entry point runs first.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::ar::ar_sequence;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat::{Coker, Mat, ZMat};
use crate::rep::{
    cokernel_rep, direct_sum, end_radical, ext1_basis, factor_through, factor_through_left,
    hom_basis, is_isomorphic, is_projective, iso_indecomposable, kernel_rep, standard_module,
    Cocycle, Rep, RepMap, StandardKind,
};
use crate::sections::{classify_torsion, is_tilting, TorsionPartition};

// ---------------------------------------------------------------------------
// The tilted category.
// ---------------------------------------------------------------------------

/// A finite hom-category presented by bases and structure constants.
///
/// Objects are indecomposable representations with local endomorphism
/// algebras, pairwise non-isomorphic. `hom[i][j]` is a basis of
/// `Hom(T_i, T_j)`; `comp[i][j][k][a][b]` are the coordinates in `hom[i][k]`
/// of `hom[j][k][b] ∘ hom[i][j][a]`. The identity coordinates and the
/// radical subspaces of every hom space are precomputed.
///
/// [`FinCategory::opposite`] reindexes the same data; the stored
/// representation maps then *realize* morphisms of the opposite category in
/// reversed direction, so the realization helpers refuse to run on an
/// opposite category.
#[derive(Clone, Debug)]
pub struct FinCategory<F: Field> {
    objects: Vec<Rep<F>>,
    hom: Vec<Vec<Vec<RepMap<F>>>>,
    hom_mat: Vec<Vec<Mat<F>>>,
    comp: Vec<Vec<Vec<Vec<Vec<Vec<F>>>>>>,
    id_coords: Vec<Vec<F>>,
    rad: Vec<Vec<Vec<Vec<F>>>>,
    op: bool,
}

/// Coordinates of a composite `y ∘ x` from raw coordinate vectors.
fn bilinear_comp<F: Field>(table: &[Vec<Vec<F>>], x: &[F], y: &[F], out_dim: usize) -> Vec<F> {
    let mut out = vec![F::zero(); out_dim];
    for (a, xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, yb) in y.iter().enumerate() {
            if yb.is_zero() {
                continue;
            }
            for (e, c) in table[a][b].iter().enumerate() {
                out[e] = out[e].clone() + xa.clone() * yb.clone() * c.clone();
            }
        }
    }
    out
}

impl<F: Field> FinCategory<F> {
    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[Rep<F>] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Rep<F> {
        &self.objects[i]
    }

    pub fn is_op(&self) -> bool {
        self.op
    }

    pub fn hom_dim_at(&self, i: usize, j: usize) -> usize {
        self.hom[i][j].len()
    }

    /// The stored basis maps. On an opposite category these realize the
    /// morphisms of `hom(i, j)` as representation maps `T_j → T_i`.
    pub fn hom_maps(&self, i: usize, j: usize) -> &[RepMap<F>] {
        &self.hom[i][j]
    }

    pub fn identity_coords(&self, i: usize) -> &[F] {
        &self.id_coords[i]
    }

    pub fn radical_coords(&self, i: usize, j: usize) -> &[Vec<F>] {
        &self.rad[i][j]
    }

    /// Coordinates of `g ∘ f` for `f ∈ hom(i, j)` with coordinates `x` and
    /// `g ∈ hom(j, k)` with coordinates `y`.
    pub fn mul_coords(&self, i: usize, j: usize, k: usize, x: &[F], y: &[F]) -> Vec<F> {
        bilinear_comp(&self.comp[i][j][k], x, y, self.hom[i][k].len())
    }

    /// Coordinates of a realized map in the stored hom basis.
    pub fn hom_coords(&self, i: usize, j: usize, f: &RepMap<F>) -> Result<Vec<F>> {
        let v = f.vectorize();
        if self.hom[i][j].is_empty() {
            if v.iter().all(|x| x.is_zero()) {
                return Ok(Vec::new());
            }
            return Err(Error::Internal(
                "a nonzero map was presented against an empty hom basis".into(),
            ));
        }
        let rhs = Mat::col_vec(v);
        match self.hom_mat[i][j].solve(&rhs)? {
            Some(x) => Ok(x.column(0)),
            None => Err(Error::Internal(
                "a map failed to lie in the span of the stored hom basis".into(),
            )),
        }
    }

    /// The representation map `Σ_a coords[a] · hom[i][j][a]`. Refuses on an
    /// opposite category, where the stored maps run backwards.
    pub fn realize(&self, i: usize, j: usize, coords: &[F]) -> Result<RepMap<F>> {
        if self.op {
            return Err(Error::Precondition(
                "realization requires the primal orientation".into(),
            ));
        }
        let mut f = RepMap::zero(self.objects[i].clone(), self.objects[j].clone())?;
        for (a, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                f = f.add(&self.hom[i][j][a].scale(c))?;
            }
        }
        Ok(f)
    }

    /// Reindex into the opposite category: `hom_op(i, j) = hom(j, i)` and
    /// `g ∘_op f` is computed as `f ∘ g`.
    pub fn opposite(&self) -> FinCategory<F> {
        let n = self.objects.len();
        let hom: Vec<Vec<Vec<RepMap<F>>>> = (0..n)
            .map(|i| (0..n).map(|j| self.hom[j][i].clone()).collect())
            .collect();
        let hom_mat: Vec<Vec<Mat<F>>> = (0..n)
            .map(|i| (0..n).map(|j| self.hom_mat[j][i].clone()).collect())
            .collect();
        let mut comp = Vec::with_capacity(n);
        for i in 0..n {
            let mut ci = Vec::with_capacity(n);
            for j in 0..n {
                let mut cij = Vec::with_capacity(n);
                for k in 0..n {
                    let da = self.hom[j][i].len();
                    let db = self.hom[k][j].len();
                    let mut table = vec![vec![Vec::new(); db]; da];
                    #[allow(clippy::needless_range_loop)]
                    for a in 0..da {
                        for b in 0..db {
                            table[a][b] = self.comp[k][j][i][b][a].clone();
                        }
                    }
                    cij.push(table);
                }
                ci.push(cij);
            }
            comp.push(ci);
        }
        let rad: Vec<Vec<Vec<Vec<F>>>> = (0..n)
            .map(|i| (0..n).map(|j| self.rad[j][i].clone()).collect())
            .collect();
        FinCategory {
            objects: self.objects.clone(),
            hom,
            hom_mat,
            comp,
            id_coords: self.id_coords.clone(),
            rad,
            op: !self.op,
        }
    }

    /// Fault-injection helper for verification tests: add one to a single
    /// structure constant, skipping every consistency check.
    pub fn with_perturbed_constant(
        &self,
        i: usize,
        j: usize,
        k: usize,
        a: usize,
        b: usize,
        e: usize,
    ) -> Result<FinCategory<F>> {
        let mut out = self.clone();
        let entry = out
            .comp
            .get_mut(i)
            .and_then(|x| x.get_mut(j))
            .and_then(|x| x.get_mut(k))
            .and_then(|x| x.get_mut(a))
            .and_then(|x| x.get_mut(b))
            .and_then(|x| x.get_mut(e))
            .ok_or(Error::Precondition("constant index out of range".into()))?;
        *entry = entry.clone() + F::one();
        Ok(out)
    }

    /// Consistency self-check: every structure constant agrees with the
    /// realized composition of basis maps, identities act as identities, and
    /// composition is associative on basis triples. Returns a human-readable
    /// witness for the first discrepancy.
    pub fn self_check(&self) -> Result<Option<String>> {
        let n = self.objects.len();
        // On the primal orientation, compare against realized composites.
        if !self.op {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for a in 0..self.hom[i][j].len() {
                            for b in 0..self.hom[j][k].len() {
                                let real = self.hom[j][k][b].compose(&self.hom[i][j][a])?;
                                let expect = self.hom_coords(i, k, &real)?;
                                if expect != self.comp[i][j][k][a][b] {
                                    return Ok(Some(format!(
                                        "constant ({i},{j},{k})[{a}][{b}] disagrees with the realized composite"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let d = self.hom[i][j].len();
                for a in 0..d {
                    let mut e = vec![F::zero(); d];
                    e[a] = F::one();
                    let left = self.mul_coords(i, i, j, &self.id_coords[i], &e);
                    let right = self.mul_coords(i, j, j, &e, &self.id_coords[j]);
                    if left != e || right != e {
                        return Ok(Some(format!(
                            "identity axiom fails on hom({i},{j}) basis element {a}"
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for a in 0..self.hom[i][j].len() {
                            let mut ea = vec![F::zero(); self.hom[i][j].len()];
                            ea[a] = F::one();
                            for b in 0..self.hom[j][k].len() {
                                let mut eb = vec![F::zero(); self.hom[j][k].len()];
                                eb[b] = F::one();
                                let ba = self.mul_coords(i, j, k, &ea, &eb);
                                for c in 0..self.hom[k][l].len() {
                                    let mut ec = vec![F::zero(); self.hom[k][l].len()];
                                    ec[c] = F::one();
                                    let cb = self.mul_coords(j, k, l, &eb, &ec);
                                    let left = self.mul_coords(i, k, l, &ba, &ec);
                                    let right = self.mul_coords(i, j, l, &ea, &cb);
                                    if left != right {
                                        return Ok(Some(format!(
                                            "associativity fails on ({i},{j},{k},{l}) basis ({a},{b},{c})"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Freeze a family of modules into its hom-category.
///
/// Requires a nonempty family over one quiver whose members are
/// indecomposable (local endomorphism algebras) and pairwise non-isomorphic.
/// The composition table is rebuilt from scratch and passed through
/// [`FinCategory::self_check`] as an internal guard.
pub fn build_tilted<F: Field>(t: &[Rep<F>]) -> Result<FinCategory<F>> {
    if t.is_empty() {
        return Err(Error::Precondition("the family is empty".into()));
    }
    let n = t.len();
    for m in t {
        if !m.same_quiver(&t[0]) {
            return Err(Error::QuiverMismatch);
        }
        if m.total_dim() == 0 {
            return Err(Error::Precondition("zero modules cannot be objects".into()));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if iso_indecomposable(&t[i], &t[j])? {
                return Err(Error::Precondition(format!(
                    "objects {i} and {j} are isomorphic"
                )));
            }
        }
    }
    let mut hom: Vec<Vec<Vec<RepMap<F>>>> = Vec::with_capacity(n);
    let mut hom_mat: Vec<Vec<Mat<F>>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        let mut row_mat = Vec::with_capacity(n);
        for j in 0..n {
            let basis = hom_basis(&t[i], &t[j])?;
            let ambient = RepMap::zero(t[i].clone(), t[j].clone())?.vectorize().len();
            let mut m = Mat::zero(ambient, basis.len());
            for (b, f) in basis.iter().enumerate() {
                for (r, x) in f.vectorize().into_iter().enumerate() {
                    m.set(r, b, x);
                }
            }
            row.push(basis);
            row_mat.push(m);
        }
        hom.push(row);
        hom_mat.push(row_mat);
    }
    let mut rad: Vec<Vec<Vec<Vec<F>>>> = Vec::with_capacity(n);
    let mut id_coords = Vec::with_capacity(n);
    let mut tc = FinCategory {
        objects: t.to_vec(),
        hom,
        hom_mat,
        comp: Vec::new(),
        id_coords: Vec::new(),
        rad: Vec::new(),
        op: false,
    };
    for i in 0..n {
        id_coords.push(tc.hom_coords(i, i, &RepMap::identity(&t[i]))?);
    }
    tc.id_coords = id_coords;
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            if i == j {
                let (rad_maps, top) = end_radical(&tc.hom[i][i])?;
                if top != 1 {
                    return Err(Error::Precondition(format!(
                        "object {i} is not indecomposable with a local endomorphism algebra"
                    )));
                }
                let mut coords = Vec::with_capacity(rad_maps.len());
                for r in &rad_maps {
                    coords.push(tc.hom_coords(i, i, r)?);
                }
                row.push(coords);
            } else {
                let d = tc.hom[i][j].len();
                let mut coords = Vec::with_capacity(d);
                for a in 0..d {
                    let mut e = vec![F::zero(); d];
                    e[a] = F::one();
                    coords.push(e);
                }
                row.push(coords);
            }
        }
        rad.push(row);
    }
    tc.rad = rad;
    let mut comp = Vec::with_capacity(n);
    for i in 0..n {
        let mut ci = Vec::with_capacity(n);
        for j in 0..n {
            let mut cij = Vec::with_capacity(n);
            for k in 0..n {
                let da = tc.hom[i][j].len();
                let db = tc.hom[j][k].len();
                let mut table = vec![vec![Vec::new(); db]; da];
                #[allow(clippy::needless_range_loop)]
                for a in 0..da {
                    for b in 0..db {
                        let g = tc.hom[j][k][b].compose(&tc.hom[i][j][a])?;
                        table[a][b] = tc.hom_coords(i, k, &g)?;
                    }
                }
                cij.push(table);
            }
            ci.push(cij);
        }
        comp.push(ci);
    }
    tc.comp = comp;
    if let Some(w) = tc.self_check()? {
        return Err(Error::Internal(format!("category self-check failed: {w}")));
    }
    Ok(tc)
}

// ---------------------------------------------------------------------------
// Modules over the category.
// ---------------------------------------------------------------------------

/// A finite-dimensional contravariant module over a [`FinCategory`]:
/// a vector space `N(i)` per object and, for the basis morphism
/// `hom[i][j][a]`, an action matrix `N(j) → N(i)` stored under `(i, j, a)`.
/// Zero-sized blocks are omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct CatModule<F: Field> {
    dims: Vec<usize>,
    act: BTreeMap<(usize, usize, usize), Mat<F>>,
}

impl<F: Field> CatModule<F> {
    pub fn zero(n_objects: usize) -> Self {
        CatModule { dims: vec![0; n_objects], act: BTreeMap::new() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Action matrix of `hom[i][j][a]`, shape `dims[i] × dims[j]`.
    pub fn action(&self, i: usize, j: usize, a: usize) -> Mat<F> {
        match self.act.get(&(i, j, a)) {
            Some(m) => m.clone(),
            None => Mat::zero(self.dims[i], self.dims[j]),
        }
    }

    /// Action matrix of an arbitrary morphism given by coordinates.
    pub fn action_of(&self, i: usize, j: usize, coords: &[F]) -> Mat<F> {
        let mut m = Mat::zero(self.dims[i], self.dims[j]);
        for (a, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.action(i, j, a).scale(c)).expect("shape fixed");
            }
        }
        m
    }

    /// Build with full validation: shapes, the identity axiom, and exact
    /// agreement with the composition table.
    pub fn new(
        tc: &FinCategory<F>,
        dims: Vec<usize>,
        act: BTreeMap<(usize, usize, usize), Mat<F>>,
    ) -> Result<Self> {
        if dims.len() != tc.n_objects() {
            return Err(Error::Precondition("one dimension per object required".into()));
        }
        let m = CatModule { dims, act };
        m.validate(tc)?;
        Ok(m)
    }

    /// Check the module axioms against the table; errors are preconditions.
    pub fn validate(&self, tc: &FinCategory<F>) -> Result<()> {
        let n = tc.n_objects();
        if self.dims.len() != n {
            return Err(Error::Precondition("one dimension per object required".into()));
        }
        for (&(i, j, a), m) in &self.act {
            if i >= n || j >= n || a >= tc.hom_dim_at(i, j) {
                return Err(Error::Precondition("action key out of range".into()));
            }
            if m.rows() != self.dims[i] || m.cols() != self.dims[j] {
                return Err(Error::Precondition("action block has the wrong shape".into()));
            }
        }
        for i in 0..n {
            let id = self.action_of(i, i, tc.identity_coords(i));
            if !id.is_identity() {
                return Err(Error::Precondition(format!(
                    "identity of object {i} does not act as the identity"
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for a in 0..tc.hom_dim_at(i, j) {
                        for b in 0..tc.hom_dim_at(j, k) {
                            let mut ea = vec![F::zero(); tc.hom_dim_at(i, j)];
                            ea[a] = F::one();
                            let mut eb = vec![F::zero(); tc.hom_dim_at(j, k)];
                            eb[b] = F::one();
                            let coords = tc.mul_coords(i, j, k, &ea, &eb);
                            let lhs = self.action_of(i, k, &coords);
                            let rhs = self.action(i, j, a).mul(&self.action(j, k, b))?;
                            if lhs != rhs {
                                return Err(Error::Precondition(format!(
                                    "action disagrees with the table on ({i},{j},{k}) basis ({a},{b})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Build a module from blocks and re-tag validation failures as internal:
/// used for constructions whose correctness is a theorem, not an input.
fn cat_module_internal<F: Field>(
    tc: &FinCategory<F>,
    dims: Vec<usize>,
    act: BTreeMap<(usize, usize, usize), Mat<F>>,
    ctx: &str,
) -> Result<CatModule<F>> {
    CatModule::new(tc, dims, act).map_err(|e| {
        Error::Internal(format!("{ctx}: constructed module failed validation: {e:?}"))
    })
}

fn insert_block<F: Field>(
    act: &mut BTreeMap<(usize, usize, usize), Mat<F>>,
    key: (usize, usize, usize),
    m: Mat<F>,
) {
    if m.rows() > 0 && m.cols() > 0 {
        act.insert(key, m);
    }
}

/// A natural transformation between modules: one matrix `M(i) → N(i)` per
/// object. Naturality is checked by [`is_natural`].
pub type CatMap<F> = Vec<Mat<F>>;

/// Does the family of matrices commute with every action block?
pub fn is_natural<F: Field>(
    tc: &FinCategory<F>,
    m: &CatModule<F>,
    n: &CatModule<F>,
    phi: &CatMap<F>,
) -> Result<bool> {
    let no = tc.n_objects();
    if phi.len() != no {
        return Ok(false);
    }
    for i in 0..no {
        if phi[i].rows() != n.dim_at(i) || phi[i].cols() != m.dim_at(i) {
            return Ok(false);
        }
    }
    for i in 0..no {
        for j in 0..no {
            for a in 0..tc.hom_dim_at(i, j) {
                let lhs = phi[i].mul(&m.action(i, j, a))?;
                let rhs = n.action(i, j, a).mul(&phi[j])?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn cat_map_compose<F: Field>(g: &CatMap<F>, f: &CatMap<F>) -> Result<CatMap<F>> {
    if g.len() != f.len() {
        return Err(Error::DimMismatch { ctx: "category map composition" });
    }
    let mut out = Vec::with_capacity(f.len());
    for (gi, fi) in g.iter().zip(f.iter()) {
        out.push(gi.mul(fi)?);
    }
    Ok(out)
}

fn cat_map_vectorize<F: Field>(phi: &CatMap<F>) -> Vec<F> {
    let mut v = Vec::new();
    for m in phi {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                v.push(m.at(i, j).clone());
            }
        }
    }
    v
}

/// A basis of the space of natural transformations `M → N`.
pub fn cat_hom_basis<F: Field>(
    tc: &FinCategory<F>,
    m: &CatModule<F>,
    n: &CatModule<F>,
) -> Result<Vec<CatMap<F>>> {
    let no = tc.n_objects();
    let mut offsets = Vec::with_capacity(no);
    let mut total = 0usize;
    for i in 0..no {
        offsets.push(total);
        total += n.dim_at(i) * m.dim_at(i);
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    // Unknown φ_i is dims_n(i) × dims_m(i), stored row-major at offsets[i].
    let mut rows: Vec<Vec<F>> = Vec::new();
    for i in 0..no {
        for j in 0..no {
            for a in 0..tc.hom_dim_at(i, j) {
                let ma = m.action(i, j, a);
                let na = n.action(i, j, a);
                // Constraint: φ_i · M_a − N_a · φ_j = 0, entrywise.
                for r in 0..n.dim_at(i) {
                    for c in 0..m.dim_at(j) {
                        let mut row = vec![F::zero(); total];
                        for s in 0..m.dim_at(i) {
                            let idx = offsets[i] + r * m.dim_at(i) + s;
                            row[idx] = row[idx].clone() + ma.at(s, c).clone();
                        }
                        for s in 0..n.dim_at(j) {
                            let idx = offsets[j] + s * m.dim_at(j) + c;
                            row[idx] = row[idx].clone() - na.at(r, s).clone();
                        }
                        if row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Mat::identity(total)
    } else {
        Mat::from_rows(rows)?.kernel_basis()
    };
    let mut out = Vec::with_capacity(kernel.cols());
    for b in 0..kernel.cols() {
        let mut phi = Vec::with_capacity(no);
        for i in 0..no {
            let mut block = Mat::zero(n.dim_at(i), m.dim_at(i));
            for r in 0..n.dim_at(i) {
                for c in 0..m.dim_at(i) {
                    block.set(r, c, kernel.at(offsets[i] + r * m.dim_at(i) + c, b).clone());
                }
            }
            phi.push(block);
        }
        out.push(phi);
    }
    Ok(out)
}

pub fn cat_hom_dim<F: Field>(
    tc: &FinCategory<F>,
    m: &CatModule<F>,
    n: &CatModule<F>,
) -> Result<usize> {
    Ok(cat_hom_basis(tc, m, n)?.len())
}

// ---------------------------------------------------------------------------
// Submodules, quotients, and distinguished pieces.
// ---------------------------------------------------------------------------

/// Restrict a module to subspaces closed under the action. `bases[i]` has
/// rows `dims[i]`; dependent columns are discarded. Returns the submodule
/// and the inclusion matrices.
pub fn cat_restrict<F: Field>(
    tc: &FinCategory<F>,
    m: &CatModule<F>,
    bases: &[Mat<F>],
) -> Result<(CatModule<F>, Vec<Mat<F>>)> {
    let no = tc.n_objects();
    if bases.len() != no {
        return Err(Error::Precondition("one subspace per object required".into()));
    }
    let mut incls = Vec::with_capacity(no);
    let mut dims = Vec::with_capacity(no);
    for (i, b) in bases.iter().enumerate() {
        if b.rows() != m.dim_at(i) {
            return Err(Error::Precondition("subspace has the wrong ambient dimension".into()));
        }
        let pivots = b.pivot_columns();
        let mut red = Mat::zero(b.rows(), pivots.len());
        for (c_idx, &c) in pivots.iter().enumerate() {
            for r in 0..b.rows() {
                red.set(r, c_idx, b.at(r, c).clone());
            }
        }
        dims.push(red.cols());
        incls.push(red);
    }
    let mut act = BTreeMap::new();
    for i in 0..no {
        for j in 0..no {
            for a in 0..tc.hom_dim_at(i, j) {
                let pushed = m.action(i, j, a).mul(&incls[j])?;
                match incls[i].solve(&pushed)? {
                    Some(x) => insert_block(&mut act, (i, j, a), x),
                    None => {
                        return Err(Error::Internal(
                            "subspaces are not closed under the action".into(),
                        ))
                    }
                }
            }
        }
    }
    let sub = cat_module_internal(tc, dims, act, "cat_restrict")?;
    Ok((sub, incls))
}

/// Quotient by a submodule given through inclusion matrices. Returns the
/// quotient and the projection matrices.
pub fn cat_quotient<F: Field>(
    tc: &FinCategory<F>,
    m: &CatModule<F>,
    incls: &[Mat<F>],
) -> Result<(CatModule<F>, Vec<Mat<F>>)> {
    let no = tc.n_objects();
    let mut cokers: Vec<Coker<F>> = Vec::with_capacity(no);
    for (i, inc) in incls.iter().enumerate() {
        if inc.rows() != m.dim_at(i) {
            return Err(Error::Precondition("inclusion has the wrong ambient dimension".into()));
        }
        cokers.push(inc.cokernel());
    }
    let dims: Vec<usize> = cokers.iter().map(|c| c.proj.rows()).collect();
    let mut act = BTreeMap::new();
    for i in 0..no {
        for j in 0..no {
            for a in 0..tc.hom_dim_at(i, j) {
                let q = cokers[i].proj.mul(&m.action(i, j, a))?.mul(&cokers[j].incl)?;
                insert_block(&mut act, (i, j, a), q);
            }
        }
    }
    let quot = cat_module_internal(tc, dims, act, "cat_quotient")?;
    let projs = cokers.into_iter().map(|c| c.proj).collect();
    Ok((quot, projs))
}

/// Direct sum of modules, with inclusion and projection matrices per part.
pub fn cat_direct_sum<F: Field>(
    tc: &FinCategory<F>,
    parts: &[CatModule<F>],
) -> Result<(CatModule<F>, Vec<CatMap<F>>, Vec<CatMap<F>>)> {
    let no = tc.n_objects();
    let mut dims = vec![0usize; no];
    for p in parts {
        for i in 0..no {
            dims[i] += p.dim_at(i);
        }
    }
    let mut act = BTreeMap::new();
    for i in 0..no {
        for j in 0..no {
            for a in 0..tc.hom_dim_at(i, j) {
                let mut block = Mat::zero(dims[i], dims[j]);
                let mut ro = 0usize;
                let mut co = 0usize;
                for p in parts {
                    let pa = p.action(i, j, a);
                    for r in 0..pa.rows() {
                        for c in 0..pa.cols() {
                            block.set(ro + r, co + c, pa.at(r, c).clone());
                        }
                    }
                    ro += p.dim_at(i);
                    co += p.dim_at(j);
                }
                insert_block(&mut act, (i, j, a), block);
            }
        }
    }
    let sum = cat_module_internal(tc, dims.clone(), act, "cat_direct_sum")?;
    let mut incls = Vec::with_capacity(parts.len());
    let mut projs = Vec::with_capacity(parts.len());
    let mut offset = vec![0usize; no];
    for p in parts {
        let mut inc = Vec::with_capacity(no);
        let mut prj = Vec::with_capacity(no);
        for i in 0..no {
            let mut im = Mat::zero(dims[i], p.dim_at(i));
            let mut pm = Mat::zero(p.dim_at(i), dims[i]);
            for r in 0..p.dim_at(i) {
                im.set(offset[i] + r, r, F::one());
                pm.set(r, offset[i] + r, F::one());
            }
            inc.push(im);
            prj.push(pm);
        }
        incls.push(inc);
        projs.push(prj);
        for i in 0..no {
            offset[i] += p.dim_at(i);
        }
    }
    Ok((sum, incls, projs))
}

/// The representable module `P_o = hom(−, T_o)`.
pub fn representable<F: Field>(tc: &FinCategory<F>, o: usize) -> Result<CatModule<F>> {
    cat_free(tc, &[o]).map(|c| c.free)
}

/// The radical submodule `N·rad`: at each object, the span of the images of
/// all radical actions. Returns the submodule and its inclusions.
pub fn radical_submodule<F: Field>(
    tc: &FinCategory<F>,
    n: &CatModule<F>,
) -> Result<(CatModule<F>, Vec<Mat<F>>)> {
    let no = tc.n_objects();
    let mut bases = Vec::with_capacity(no);
    for i in 0..no {
        let mut cols: Option<Mat<F>> = None;
        for j in 0..no {
            for r in tc.radical_coords(i, j) {
                let img = n.action_of(i, j, r);
                cols = Some(match cols {
                    None => img,
                    Some(c) => c.hstack(&img)?,
                });
            }
        }
        bases.push(cols.unwrap_or_else(|| Mat::zero(n.dim_at(i), 0)));
    }
    cat_restrict(tc, n, &bases)
}

/// The socle: the largest submodule killed by every radical action.
pub fn socle_submodule<F: Field>(
    tc: &FinCategory<F>,
    n: &CatModule<F>,
) -> Result<(CatModule<F>, Vec<Mat<F>>)> {
    let no = tc.n_objects();
    let mut bases = Vec::with_capacity(no);
    for i in 0..no {
        // x ∈ N(i) lies in the socle iff N(r)(x) = 0 for every radical
        // morphism r ∈ rad(j, i), whose action maps N(i) → N(j).
        let mut stacked: Option<Mat<F>> = None;
        for j in 0..no {
            for r in tc.radical_coords(j, i) {
                let m = n.action_of(j, i, r);
                stacked = Some(match stacked {
                    None => m,
                    Some(s) => s.vstack(&m)?,
                });
            }
        }
        let basis = match stacked {
            None => Mat::identity(n.dim_at(i)),
            Some(s) => s.kernel_basis(),
        };
        bases.push(basis);
    }
    cat_restrict(tc, n, &bases)
}

/// The simple module concentrated at one object, built as the top of the
/// representable there.
pub fn simple_cat<F: Field>(tc: &FinCategory<F>, o: usize) -> Result<CatModule<F>> {
    let p = representable(tc, o)?;
    let (_, incls) = radical_submodule(tc, &p)?;
    let (top, _) = cat_quotient(tc, &p, &incls)?;
    for i in 0..tc.n_objects() {
        let expect = usize::from(i == o);
        if top.dim_at(i) != expect {
            return Err(Error::Internal(format!(
                "top of the representable at {o} is not simple at object {i}"
            )));
        }
    }
    Ok(top)
}

// ---------------------------------------------------------------------------
// Covers, resolutions, projective dimension, and the category translate.
// ---------------------------------------------------------------------------

/// A free module `⊕_r P_{objs[r]}` together with, per object `j`, the block
/// offsets of each summand inside `free(j)`.
pub struct FreeData<F: Field> {
    pub objs: Vec<usize>,
    pub free: CatModule<F>,
    pub offsets: Vec<Vec<usize>>,
}

/// Assemble `⊕_r hom(−, T_{objs[r]})` from the structure constants.
pub fn cat_free<F: Field>(tc: &FinCategory<F>, objs: &[usize]) -> Result<FreeData<F>> {
    let no = tc.n_objects();
    for &o in objs {
        if o >= no {
            return Err(Error::Precondition("free summand index out of range".into()));
        }
    }
    let mut dims = vec![0usize; no];
    let mut offsets: Vec<Vec<usize>> = vec![vec![0; no]; objs.len()];
    for i in 0..no {
        let mut acc = 0usize;
        for (r, &o) in objs.iter().enumerate() {
            offsets[r][i] = acc;
            acc += tc.hom_dim_at(i, o);
        }
        dims[i] = acc;
    }
    let mut act = BTreeMap::new();
    for i in 0..no {
        for j in 0..no {
            for a in 0..tc.hom_dim_at(i, j) {
                let mut block = Mat::zero(dims[i], dims[j]);
                let mut ea = vec![F::zero(); tc.hom_dim_at(i, j)];
                ea[a] = F::one();
                for (r, &o) in objs.iter().enumerate() {
                    for b in 0..tc.hom_dim_at(j, o) {
                        let mut eb = vec![F::zero(); tc.hom_dim_at(j, o)];
                        eb[b] = F::one();
                        // Precomposition with f_a: hom(j, o) → hom(i, o).
                        let coords = tc.mul_coords(i, j, o, &ea, &eb);
                        for (e, c) in coords.into_iter().enumerate() {
                            block.set(offsets[r][i] + e, offsets[r][j] + b, c);
                        }
                    }
                }
                insert_block(&mut act, (i, j, a), block);
            }
        }
    }
    let free = cat_module_internal(tc, dims, act, "cat_free")?;
    Ok(FreeData { objs: objs.to_vec(), free, offsets })
}

/// A projective cover: generating objects, the defining elements (one vector
/// in `N(obj)` per copy), and the cover matrices `free(j) → N(j)`.
pub struct CatCover<F: Field> {
    pub copies: Vec<(usize, Vec<F>)>,
    pub data: FreeData<F>,
    pub mats: Vec<Mat<F>>,
}

/// Build the projective cover from a lift of the top.
pub fn cat_cover<F: Field>(tc: &FinCategory<F>, n: &CatModule<F>) -> Result<CatCover<F>> {
    let no = tc.n_objects();
    let (_, rad_incls) = radical_submodule(tc, n)?;
    let mut copies: Vec<(usize, Vec<F>)> = Vec::new();
    for (i, inc) in rad_incls.iter().enumerate() {
        for &t in &inc.cokernel().complement {
            let mut v = vec![F::zero(); n.dim_at(i)];
            v[t] = F::one();
            copies.push((i, v));
        }
    }
    let objs: Vec<usize> = copies.iter().map(|(o, _)| *o).collect();
    let data = cat_free(tc, &objs)?;
    let mut mats = Vec::with_capacity(no);
    for j in 0..no {
        let mut m = Mat::zero(n.dim_at(j), data.free.dim_at(j));
        for (r, (o, v)) in copies.iter().enumerate() {
            for b in 0..tc.hom_dim_at(j, *o) {
                let col = n.action(j, *o, b).mul(&Mat::col_vec(v.clone()))?;
                for row in 0..n.dim_at(j) {
                    m.set(row, data.offsets[r][j] + b, col.at(row, 0).clone());
                }
            }
        }
        if m.rank() != n.dim_at(j) {
            return Err(Error::Internal(format!(
                "projective cover is not surjective at object {j}"
            )));
        }
        mats.push(m);
    }
    if !is_natural(tc, &data.free, n, &mats)? {
        return Err(Error::Internal("projective cover is not natural".into()));
    }
    Ok(CatCover { copies, data, mats })
}

/// Kernel of a cover, as a submodule of the free module.
pub fn cover_kernel<F: Field>(
    tc: &FinCategory<F>,
    cover: &CatCover<F>,
) -> Result<(CatModule<F>, Vec<Mat<F>>)> {
    let bases: Vec<Mat<F>> = cover.mats.iter().map(|m| m.kernel_basis()).collect();
    cat_restrict(tc, &cover.data.free, &bases)
}

/// Morphism coordinates of the differential `free(upper) → free(lower)`
/// induced by a cover of the kernel: entry `[r][s]` gives the coordinates in
/// `hom(a_s, o_r)` of the component from upper copy `s` to lower copy `r`.
pub fn connecting_coords<F: Field>(
    tc: &FinCategory<F>,
    k_incls: &[Mat<F>],
    upper: &CatCover<F>,
    lower: &CatCover<F>,
) -> Result<Vec<Vec<Vec<F>>>> {
    let mut d = vec![vec![Vec::new(); upper.copies.len()]; lower.copies.len()];
    for (s, (a, v)) in upper.copies.iter().enumerate() {
        let u = k_incls[*a].mul(&Mat::col_vec(v.clone()))?;
        for (r, &o) in lower.data.objs.iter().enumerate() {
            let width = tc.hom_dim_at(*a, o);
            let mut chunk = Vec::with_capacity(width);
            for e in 0..width {
                chunk.push(u.at(lower.data.offsets[r][*a] + e, 0).clone());
            }
            d[r][s] = chunk;
        }
    }
    Ok(d)
}

/// Projective dimension by iterated minimal covers, with a hard guard.
pub fn pd_cat<F: Field>(tc: &FinCategory<F>, n: &CatModule<F>, guard: usize) -> Result<usize> {
    if n.is_zero() {
        return Ok(0);
    }
    let mut current = n.clone();
    for depth in 0..=guard {
        let cover = cat_cover(tc, &current)?;
        let (k, _) = cover_kernel(tc, &cover)?;
        if k.is_zero() {
            return Ok(depth);
        }
        current = k;
    }
    Err(Error::Internal(format!(
        "projective resolution exceeded the guard bound {guard}"
    )))
}

/// The translate `τ N = D Tr N` computed from a minimal presentation, using
/// that naturality descends postcomposition to the transpose's cokernels.
/// Projectives are sent to zero.
pub fn cat_tau<F: Field>(tc: &FinCategory<F>, n: &CatModule<F>) -> Result<CatModule<F>> {
    let no = tc.n_objects();
    if n.is_zero() {
        return Ok(CatModule::zero(no));
    }
    let c0 = cat_cover(tc, n)?;
    let (k, k_incls) = cover_kernel(tc, &c0)?;
    if k.is_zero() {
        return Ok(CatModule::zero(no));
    }
    let c1 = cat_cover(tc, &k)?;
    let d = connecting_coords(tc, &k_incls, &c1, &c0)?;
    // For each object j, the transpose value is the cokernel of
    // precomposition with d: ⊕_r hom(o_r, j) → ⊕_s hom(a_s, j).
    let h0 = |j: usize| -> usize { c0.data.objs.iter().map(|&o| tc.hom_dim_at(o, j)).sum() };
    let h1 = |j: usize| -> usize { c1.data.objs.iter().map(|&a| tc.hom_dim_at(a, j)).sum() };
    let mut cokers: Vec<Coker<F>> = Vec::with_capacity(no);
    let mut off0: Vec<Vec<usize>> = Vec::with_capacity(no);
    let mut off1: Vec<Vec<usize>> = Vec::with_capacity(no);
    for j in 0..no {
        let mut o0 = Vec::with_capacity(c0.data.objs.len());
        let mut acc = 0usize;
        for &o in &c0.data.objs {
            o0.push(acc);
            acc += tc.hom_dim_at(o, j);
        }
        off0.push(o0);
        let mut o1 = Vec::with_capacity(c1.data.objs.len());
        let mut acc = 0usize;
        for &a in &c1.data.objs {
            o1.push(acc);
            acc += tc.hom_dim_at(a, j);
        }
        off1.push(o1);
        let mut m = Mat::zero(h1(j), h0(j));
        for (r, &o) in c0.data.objs.iter().enumerate() {
            for (s, &a) in c1.data.objs.iter().enumerate() {
                for c in 0..tc.hom_dim_at(o, j) {
                    let mut ec = vec![F::zero(); tc.hom_dim_at(o, j)];
                    ec[c] = F::one();
                    // g ↦ g ∘ d_{rs} ∈ hom(a, j).
                    let coords = tc.mul_coords(a, o, j, &d[r][s], &ec);
                    for (e, x) in coords.into_iter().enumerate() {
                        m.set(off1[j][s] + e, off0[j][r] + c, x);
                    }
                }
            }
        }
        cokers.push(m.cokernel());
    }
    let dims: Vec<usize> = cokers.iter().map(|c| c.proj.rows()).collect();
    let mut act = BTreeMap::new();
    for i in 0..no {
        for j in 0..no {
            for a_idx in 0..tc.hom_dim_at(i, j) {
                // Postcomposition with f: hom(a_s, i) → hom(a_s, j) for
                // f ∈ hom(i, j); the translate stores its transpose.
                let mut ef = vec![F::zero(); tc.hom_dim_at(i, j)];
                ef[a_idx] = F::one();
                let mut post = Mat::zero(h1(j), h1(i));
                for (s, &asrc) in c1.data.objs.iter().enumerate() {
                    for b in 0..tc.hom_dim_at(asrc, i) {
                        let mut eb = vec![F::zero(); tc.hom_dim_at(asrc, i)];
                        eb[b] = F::one();
                        let coords = tc.mul_coords(asrc, i, j, &eb, &ef);
                        for (e, x) in coords.into_iter().enumerate() {
                            post.set(off1[j][s] + e, off1[i][s] + b, x);
                        }
                    }
                }
                let induced = cokers[j].proj.mul(&post)?.mul(&cokers[i].incl)?;
                insert_block(&mut act, (i, j, a_idx), induced.transpose());
            }
        }
    }
    cat_module_internal(tc, dims, act, "cat_tau")
}

/// Is the module injective? Checked by surjectivity of the restriction maps
/// `Hom(P_i, N) → Hom(rad P_i, N)` against every radical inclusion.
pub fn is_injective_cat<F: Field>(tc: &FinCategory<F>, n: &CatModule<F>) -> Result<bool> {
    for i in 0..tc.n_objects() {
        let p = representable(tc, i)?;
        let (r, incls) = radical_submodule(tc, &p)?;
        let from_p = cat_hom_basis(tc, &p, n)?;
        let from_r = cat_hom_basis(tc, &r, n)?;
        if from_r.is_empty() {
            continue;
        }
        let target_len = cat_map_vectorize(&from_r[0]).len();
        let mut basis_mat = Mat::zero(target_len, from_r.len());
        for (b, phi) in from_r.iter().enumerate() {
            for (row, x) in cat_map_vectorize(phi).into_iter().enumerate() {
                basis_mat.set(row, b, x);
            }
        }
        let mut restricted = Mat::zero(target_len, from_p.len());
        for (b, phi) in from_p.iter().enumerate() {
            let mut res = Vec::with_capacity(phi.len());
            for (obj, block) in phi.iter().enumerate() {
                res.push(block.mul(&incls[obj])?);
            }
            for (row, x) in cat_map_vectorize(&res).into_iter().enumerate() {
                restricted.set(row, b, x);
            }
        }
        // Every map from the radical must extend: the restricted column
        // space has to contain the full hom space.
        let combined = restricted.hstack(&basis_mat)?;
        if combined.rank() != restricted.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of `Ext¹(M, N)` over the category, from a minimal presentation
/// of `M` and left exactness of `Hom(−, N)`.
pub fn cat_ext1_dim<F: Field>(
    tc: &FinCategory<F>,
    m: &CatModule<F>,
    n: &CatModule<F>,
) -> Result<usize> {
    if m.is_zero() {
        return Ok(0);
    }
    let cover = cat_cover(tc, m)?;
    let (k, _) = cover_kernel(tc, &cover)?;
    let hom_k = cat_hom_dim(tc, &k, n)?;
    let hom_p = cat_hom_dim(tc, &cover.data.free, n)?;
    let hom_m = cat_hom_dim(tc, m, n)?;
    Ok(hom_k + hom_m - hom_p)
}

// ---------------------------------------------------------------------------
// Semisimple quotients of endomorphism algebras and radical hom spaces.
// ---------------------------------------------------------------------------

/// Radical of a finite-dimensional algebra given left-multiplication
/// matrices of a basis, via the trace form of the regular representation.
/// Returns coordinate vectors of a radical basis. Honest failure: if the
/// trace-form kernel is not nilpotent (possible in small characteristic),
/// this refuses rather than guessing.
fn algebra_radical_coords<F: Field>(left_mult: &[Mat<F>]) -> Result<Vec<Vec<F>>> {
    let d = left_mult.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut gram = Mat::zero(d, d);
    for a in 0..d {
        for b in 0..d {
            let prod = left_mult[a].mul(&left_mult[b])?;
            let mut tr = F::zero();
            for i in 0..prod.rows() {
                tr = tr + prod.at(i, i).clone();
            }
            gram.set(a, b, tr);
        }
    }
    let kernel = gram.kernel_basis();
    let mut coords = Vec::with_capacity(kernel.cols());
    for c in 0..kernel.cols() {
        coords.push(kernel.column(c));
    }
    // Nilpotency check of each radical generator's left multiplication.
    for v in &coords {
        let mut op = Mat::zero(d, d);
        for (a, x) in v.iter().enumerate() {
            if !x.is_zero() {
                op = op.add(&left_mult[a].scale(x))?;
            }
        }
        let mut power = op.clone();
        for _ in 0..d {
            power = power.mul(&op)?;
        }
        if !power.is_zero() {
            return Err(Error::SplitFailure(
                "trace-form kernel of the endomorphism algebra is not nilpotent".into(),
            ));
        }
    }
    Ok(coords)
}

/// Endomorphism-algebra data of a module: the hom basis, left-multiplication
/// matrices, and radical coordinates.
struct CatEnd<F: Field> {
    basis: Vec<CatMap<F>>,
    basis_mat: Mat<F>,
    rad_coords: Vec<Vec<F>>,
}

fn cat_end<F: Field>(tc: &FinCategory<F>, m: &CatModule<F>) -> Result<CatEnd<F>> {
    let basis = cat_hom_basis(tc, m, m)?;
    let d = basis.len();
    let len = if d == 0 { 0 } else { cat_map_vectorize(&basis[0]).len() };
    let mut basis_mat = Mat::zero(len, d);
    for (b, phi) in basis.iter().enumerate() {
        for (row, x) in cat_map_vectorize(phi).into_iter().enumerate() {
            basis_mat.set(row, b, x);
        }
    }
    let coords_of = |phi: &CatMap<F>| -> Result<Vec<F>> {
        let rhs = Mat::col_vec(cat_map_vectorize(phi));
        match basis_mat.solve(&rhs)? {
            Some(x) => Ok(x.column(0)),
            None => Err(Error::Internal("endomorphism outside its own basis span".into())),
        }
    };
    let mut left_mult = Vec::with_capacity(d);
    for a in 0..d {
        let mut col_mat = Mat::zero(d, d);
        for b in 0..d {
            let prod = cat_map_compose(&basis[a], &basis[b])?;
            for (e, x) in coords_of(&prod)?.into_iter().enumerate() {
                col_mat.set(e, b, x);
            }
        }
        left_mult.push(col_mat);
    }
    let rad_coords = algebra_radical_coords(&left_mult)?;
    Ok(CatEnd { basis, basis_mat, rad_coords })
}

/// Is the module indecomposable, i.e. is its endomorphism algebra local?
pub fn cat_is_indecomposable<F: Field>(tc: &FinCategory<F>, m: &CatModule<F>) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let end = cat_end(tc, m)?;
    Ok(end.basis.len() - end.rad_coords.len() == 1)
}

/// The radical subspace of `Hom(N, C)` for `C` indecomposable: maps `h` with
/// `h ∘ u` in the radical of `End(C)` for every `u : C → N`. Returns
/// coordinate vectors with respect to `cat_hom_basis(N, C)`.
fn radical_hom_coords<F: Field>(
    tc: &FinCategory<F>,
    n: &CatModule<F>,
    c: &CatModule<F>,
) -> Result<Vec<Vec<F>>> {
    let hom_nc = cat_hom_basis(tc, n, c)?;
    if hom_nc.is_empty() {
        return Ok(Vec::new());
    }
    let hom_cn = cat_hom_basis(tc, c, n)?;
    let end = cat_end(tc, c)?;
    let d_end = end.basis.len();
    // Rows that kill the radical subspace of End(C).
    let mut rad_mat = Mat::zero(d_end, end.rad_coords.len());
    for (c_idx, v) in end.rad_coords.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            rad_mat.set(r, c_idx, x.clone());
        }
    }
    let kill = rad_mat.cokernel().proj;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for u in &hom_cn {
        // h ↦ kill · coords(h ∘ u), linear in h.
        let mut cols = Mat::zero(kill.rows(), hom_nc.len());
        for (a, h) in hom_nc.iter().enumerate() {
            let prod = cat_map_compose(h, u)?;
            let rhs = Mat::col_vec(cat_map_vectorize(&prod));
            let coords = match end.basis_mat.solve(&rhs)? {
                Some(x) => x.column(0),
                None => {
                    return Err(Error::Internal(
                        "composite endomorphism escaped the endomorphism basis".into(),
                    ))
                }
            };
            let reduced = kill.mul(&Mat::col_vec(coords))?;
            for r in 0..kill.rows() {
                cols.set(r, a, reduced.at(r, 0).clone());
            }
        }
        for r in 0..cols.rows() {
            let row: Vec<F> = (0..cols.cols()).map(|c2| cols.at(r, c2).clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        Mat::identity(hom_nc.len())
    } else {
        Mat::from_rows(rows)?.kernel_basis()
    };
    let mut out = Vec::with_capacity(kernel.cols());
    for c_idx in 0..kernel.cols() {
        out.push(kernel.column(c_idx));
    }
    Ok(out)
}

/// Deterministic isomorphism test. Dimensions must agree and some natural
/// transformation must be invertible at every object; candidates are the
/// basis maps and weighted basis combinations along a fixed integer curve.
/// A `true` answer always exhibits an isomorphism; `false` means none was
/// found along the search curve.
pub fn cat_is_isomorphic<F: Field>(
    tc: &FinCategory<F>,
    m: &CatModule<F>,
    n: &CatModule<F>,
) -> Result<bool> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let basis = cat_hom_basis(tc, m, n)?;
    if basis.is_empty() {
        return Ok(false);
    }
    let invertible = |phi: &CatMap<F>| -> bool {
        phi.iter().all(|b| b.rows() == b.cols() && b.rank() == b.rows())
    };
    for phi in &basis {
        if invertible(phi) {
            return Ok(true);
        }
    }
    let tries = 2 * basis.len() + 3;
    for t in 1..=tries {
        let mut scalar = F::one();
        let tf = {
            let mut s = F::zero();
            for _ in 0..t {
                s = s + F::one();
            }
            s
        };
        let mut combo: CatMap<F> = basis[0].clone();
        for phi in basis.iter().skip(1) {
            scalar = scalar.clone() * tf.clone();
            for (i, b) in phi.iter().enumerate() {
                combo[i] = combo[i].add(&b.scale(&scalar))?;
            }
        }
        if invertible(&combo) {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// The four functors.
// ---------------------------------------------------------------------------

fn require_primal<F: Field>(tc: &FinCategory<F>) -> Result<()> {
    if tc.is_op() {
        return Err(Error::Precondition(
            "functor evaluation requires the primal orientation".into(),
        ));
    }
    Ok(())
}

/// Coordinates of a map in an explicit hom basis to a fixed module.
fn coords_in<F: Field>(basis: &[RepMap<F>], f: &RepMap<F>) -> Result<Vec<F>> {
    let v = f.vectorize();
    if basis.is_empty() {
        if v.iter().all(|x| x.is_zero()) {
            return Ok(Vec::new());
        }
        return Err(Error::Internal("nonzero map against an empty basis".into()));
    }
    let mut m = Mat::zero(v.len(), basis.len());
    for (b, u) in basis.iter().enumerate() {
        for (r, x) in u.vectorize().into_iter().enumerate() {
            m.set(r, b, x);
        }
    }
    match m.solve(&Mat::col_vec(v))? {
        Some(x) => Ok(x.column(0)),
        None => Err(Error::Internal("map escaped the hom basis span".into())),
    }
}

/// `F(m) = Hom(−, m)` restricted to the family: values are hom spaces, the
/// action is precomposition.
pub fn f_functor<F: Field>(tc: &FinCategory<F>, m: &Rep<F>) -> Result<CatModule<F>> {
    require_primal(tc)?;
    let no = tc.n_objects();
    let mut bases = Vec::with_capacity(no);
    for i in 0..no {
        bases.push(hom_basis(tc.object(i), m)?);
    }
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let mut act = BTreeMap::new();
    for i in 0..no {
        for j in 0..no {
            for a in 0..tc.hom_dim_at(i, j) {
                let mut block = Mat::zero(dims[i], dims[j]);
                for (b, u) in bases[j].iter().enumerate() {
                    let pulled = u.compose(&tc.hom_maps(i, j)[a])?;
                    for (e, x) in coords_in(&bases[i], &pulled)?.into_iter().enumerate() {
                        block.set(e, b, x);
                    }
                }
                insert_block(&mut act, (i, j, a), block);
            }
        }
    }
    cat_module_internal(tc, dims, act, "f_functor")
}

/// The matrices of `F(g)` for `g: X → Y`, between `f_functor(tc, X)` and
/// `f_functor(tc, Y)`; entry `i` is postcomposition on `Hom(T_i, −)`.
pub fn f_on_map<F: Field>(tc: &FinCategory<F>, g: &RepMap<F>) -> Result<CatMap<F>> {
    require_primal(tc)?;
    let no = tc.n_objects();
    let mut out = Vec::with_capacity(no);
    for i in 0..no {
        let src = hom_basis(tc.object(i), g.source())?;
        let tgt = hom_basis(tc.object(i), g.target())?;
        let mut block = Mat::zero(tgt.len(), src.len());
        for (b, u) in src.iter().enumerate() {
            let pushed = g.compose(u)?;
            for (e, x) in coords_in(&tgt, &pushed)?.into_iter().enumerate() {
                block.set(e, b, x);
            }
        }
        out.push(block);
    }
    Ok(out)
}

/// `F′(m) = Ext¹(−, m)` restricted to the family. The action pulls a
/// cocycle back along a morphism arrowwise: the entry over an arrow `α` is
/// precomposed with the morphism's matrix at the source of `α`. This is the
/// lifting-through-presentations action computed on cocycle representatives.
pub fn fprime_functor<F: Field>(tc: &FinCategory<F>, m: &Rep<F>) -> Result<CatModule<F>> {
    require_primal(tc)?;
    let no = tc.n_objects();
    let mut exts = Vec::with_capacity(no);
    for i in 0..no {
        exts.push(ext1_basis(tc.object(i), m)?);
    }
    let dims: Vec<usize> = exts.iter().map(|e| e.dim()).collect();
    let q = m.quiver().clone();
    let mut act = BTreeMap::new();
    for i in 0..no {
        for j in 0..no {
            for a in 0..tc.hom_dim_at(i, j) {
                let f = &tc.hom_maps(i, j)[a];
                let mut block = Mat::zero(dims[i], dims[j]);
                for (b, c) in exts[j].basis().iter().enumerate() {
                    let mut pulled: Cocycle<F> = BTreeMap::new();
                    for arr in q.arrows() {
                        if let Some(g) = c.get(&arr.id) {
                            let mat = g.mul(&f.mat_at(arr.src))?;
                            if mat.rows() > 0 && mat.cols() > 0 {
                                pulled.insert(arr.id.clone(), mat);
                            }
                        }
                    }
                    for (e, x) in exts[i].coords_of(&pulled)?.into_iter().enumerate() {
                        block.set(e, b, x);
                    }
                }
                insert_block(&mut act, (i, j, a), block);
            }
        }
    }
    cat_module_internal(tc, dims, act, "fprime_functor")
}

/// Tensor data for `G(n) = n ⊗ 𝒯`: the value, the projection from the
/// realized degree-zero part, and the cover used to assemble it.
pub struct TensorData<F: Field> {
    pub value: Rep<F>,
    pub pi: RepMap<F>,
    pub p0: Rep<F>,
    pub p0_incls: Vec<RepMap<F>>,
    pub cover: CatCover<F>,
}

fn realized_sum<F: Field>(
    tc: &FinCategory<F>,
    objs: &[usize],
) -> Result<(Rep<F>, Vec<RepMap<F>>, Vec<RepMap<F>>)> {
    let q = tc.object(0).quiver().clone();
    if objs.is_empty() {
        return Ok((Rep::zero(q), Vec::new(), Vec::new()));
    }
    let parts: Vec<Rep<F>> = objs.iter().map(|&o| tc.object(o).clone()).collect();
    direct_sum(&parts)
}

/// Realize the differential of a presentation as a representation map.
fn realized_differential<F: Field>(
    tc: &FinCategory<F>,
    upper: &CatCover<F>,
    lower: &CatCover<F>,
    d: &[Vec<Vec<F>>],
    upper_sum: &(Rep<F>, Vec<RepMap<F>>, Vec<RepMap<F>>),
    lower_sum: &(Rep<F>, Vec<RepMap<F>>, Vec<RepMap<F>>),
) -> Result<RepMap<F>> {
    let mut f = RepMap::zero(upper_sum.0.clone(), lower_sum.0.clone())?;
    for (r, &o) in lower.data.objs.iter().enumerate() {
        for (s, &a) in upper.data.objs.iter().enumerate() {
            if d[r][s].iter().all(|x| x.is_zero()) {
                continue;
            }
            let g = tc.realize(a, o, &d[r][s])?;
            f = f.add(&lower_sum.1[r].compose(&g)?.compose(&upper_sum.2[s])?)?;
        }
    }
    Ok(f)
}

/// `G(n) = n ⊗ 𝒯`, with the assembly data needed for canonical maps.
pub fn g_with_data<F: Field>(tc: &FinCategory<F>, n: &CatModule<F>) -> Result<TensorData<F>> {
    require_primal(tc)?;
    let q = tc.object(0).quiver().clone();
    let c0 = cat_cover(tc, n)?;
    let sum0 = realized_sum(tc, &c0.data.objs)?;
    if c0.data.objs.is_empty() {
        let zero = Rep::zero(q);
        let pi = RepMap::zero(zero.clone(), zero.clone())?;
        return Ok(TensorData { value: zero, pi, p0: sum0.0, p0_incls: sum0.1, cover: c0 });
    }
    let (k, k_incls) = cover_kernel(tc, &c0)?;
    let d_tensor = if k.is_zero() {
        RepMap::zero(Rep::zero(q), sum0.0.clone())?
    } else {
        let c1 = cat_cover(tc, &k)?;
        let d = connecting_coords(tc, &k_incls, &c1, &c0)?;
        let sum1 = realized_sum(tc, &c1.data.objs)?;
        realized_differential(tc, &c1, &c0, &d, &sum1, &sum0)?
    };
    let (value, pi) = cokernel_rep(&d_tensor)?;
    Ok(TensorData { value, pi, p0: sum0.0, p0_incls: sum0.1, cover: c0 })
}

/// `G(n) = n ⊗ 𝒯`, the cokernel of the realized presentation differential.
pub fn g_functor<F: Field>(tc: &FinCategory<F>, n: &CatModule<F>) -> Result<Rep<F>> {
    Ok(g_with_data(tc, n)?.value)
}

/// `G′(n) = Tor₁(n, 𝒯)` from a projective resolution: the kernel of the
/// realized differential when the first syzygy is projective, otherwise the
/// homology `ker/im` one step further down the resolution.
pub fn gprime_functor<F: Field>(tc: &FinCategory<F>, n: &CatModule<F>) -> Result<Rep<F>> {
    require_primal(tc)?;
    let q = tc.object(0).quiver().clone();
    if n.is_zero() {
        return Ok(Rep::zero(q));
    }
    let c0 = cat_cover(tc, n)?;
    let (k, k_incls) = cover_kernel(tc, &c0)?;
    if k.is_zero() {
        return Ok(Rep::zero(q));
    }
    let sum0 = realized_sum(tc, &c0.data.objs)?;
    let c1 = cat_cover(tc, &k)?;
    let d1 = connecting_coords(tc, &k_incls, &c1, &c0)?;
    let sum1 = realized_sum(tc, &c1.data.objs)?;
    let d1_tensor = realized_differential(tc, &c1, &c0, &d1, &sum1, &sum0)?;
    let (k2, k2_incls) = cover_kernel(tc, &c1)?;
    let (ker, incl) = kernel_rep(&d1_tensor)?;
    if k2.is_zero() {
        return Ok(ker);
    }
    // The resolution is longer than one step; take homology at degree one.
    let c2 = cat_cover(tc, &k2)?;
    let d2 = connecting_coords(tc, &k2_incls, &c2, &c1)?;
    let sum2 = realized_sum(tc, &c2.data.objs)?;
    let d2_tensor = realized_differential(tc, &c2, &c1, &d2, &sum2, &sum1)?;
    let h = factor_through_left(&d2_tensor, &incl)?.ok_or_else(|| {
        Error::Internal("degree-two differential does not land in the degree-one kernel".into())
    })?;
    let (tor, _) = cokernel_rep(&h)?;
    Ok(tor)
}

// ---------------------------------------------------------------------------
// Canonical sequences.
// ---------------------------------------------------------------------------

/// The canonical evaluation `ε : GF(M) → M` and its ingredients. The
/// sequence `0 → GF(M) → M → G′F′(M) → 0` is verified by injectivity of
/// `ε` plus an isomorphism of its cokernel with `G′F′(M)`.
pub fn canonical_evaluation<F: Field>(
    tc: &FinCategory<F>,
    m: &Rep<F>,
) -> Result<(Rep<F>, RepMap<F>)> {
    require_primal(tc)?;
    let fm = f_functor(tc, m)?;
    let data = g_with_data(tc, &fm)?;
    if data.cover.data.objs.is_empty() {
        return Ok((data.value.clone(), RepMap::zero(data.value, m.clone())?));
    }
    // Each cover copy is an element of F(M)(o) = coordinates of an actual
    // map T_o → M; evaluation sums them against the projections.
    let (_, _, projs) = realized_sum(tc, &data.cover.data.objs)?;
    let mut ev = RepMap::zero(data.p0.clone(), m.clone())?;
    for (r, (o, v)) in data.cover.copies.iter().enumerate() {
        let basis = hom_basis(tc.object(*o), m)?;
        let mut u = RepMap::zero(tc.object(*o).clone(), m.clone())?;
        for (b, x) in v.iter().enumerate() {
            if !x.is_zero() {
                u = u.add(&basis[b].scale(x))?;
            }
        }
        ev = ev.add(&u.compose(&projs[r])?)?;
    }
    let eps = factor_through(&ev, &data.pi)?.ok_or_else(|| {
        Error::Internal("evaluation does not descend along the tensor projection".into())
    })?;
    Ok((data.value, eps))
}

/// The canonical unit `ν : N → FG(N)` of the adjunction, as a natural
/// transformation; returns `(G(N), ν, FG(N))`.
pub fn canonical_unit<F: Field>(
    tc: &FinCategory<F>,
    n: &CatModule<F>,
) -> Result<(Rep<F>, CatMap<F>, CatModule<F>)> {
    require_primal(tc)?;
    let data = g_with_data(tc, n)?;
    let fg = f_functor(tc, &data.value)?;
    let no = tc.n_objects();
    let mut nu = Vec::with_capacity(no);
    for i in 0..no {
        let tgt_basis = hom_basis(tc.object(i), &data.value)?;
        let mut block = Mat::zero(fg.dim_at(i), n.dim_at(i));
        if n.dim_at(i) > 0 && !data.cover.data.objs.is_empty() {
            let rhs = Mat::identity(n.dim_at(i));
            let lift = data.cover.mats[i].solve(&rhs)?.ok_or_else(|| {
                Error::Internal("cover is not surjective while lifting the unit".into())
            })?;
            for col in 0..n.dim_at(i) {
                // Realize the lifted column as a map T_i → ⊕ T_{o_r}.
                let mut lifted = RepMap::zero(tc.object(i).clone(), data.p0.clone())?;
                for (r, &o) in data.cover.data.objs.iter().enumerate() {
                    let width = tc.hom_dim_at(i, o);
                    let mut chunk = Vec::with_capacity(width);
                    for e in 0..width {
                        chunk.push(lift.at(data.cover.data.offsets[r][i] + e, col).clone());
                    }
                    if chunk.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let g = tc.realize(i, o, &chunk)?;
                    lifted = lifted.add(&data.p0_incls[r].compose(&g)?)?;
                }
                let down = data.pi.compose(&lifted)?;
                for (e, x) in coords_in(&tgt_basis, &down)?.into_iter().enumerate() {
                    block.set(e, col, x);
                }
            }
        }
        nu.push(block);
    }
    if !is_natural(tc, n, &fg, &nu)? {
        return Err(Error::Internal("the canonical unit is not natural".into()));
    }
    Ok((data.value, nu, fg))
}

// ---------------------------------------------------------------------------
// Grothendieck-group matrices.
// ---------------------------------------------------------------------------

/// The matrix of `|M| ↦ |F(M)| − |F′(M)|` on classes: rows are family
/// members, columns the given simples, entries
/// `dim Hom(T_i, S_v) − dim Ext¹(T_i, S_v)`.
pub fn k0_matrix<F: Field>(t: &[Rep<F>], simples: &[Rep<F>]) -> Result<ZMat> {
    let mut m = ZMat::zero(t.len(), simples.len());
    for (i, ti) in t.iter().enumerate() {
        for (v, s) in simples.iter().enumerate() {
            let h = hom_basis(ti, s)?.len() as i64;
            let e = ext1_basis(ti, s)?.dim() as i64;
            m.set(i, v, h - e);
        }
    }
    Ok(m)
}

/// The matrix of `|N| ↦ |G(N)| − |G′(N)|`: columns are the simple modules
/// of the category, rows the quiver vertices in sorted order.
pub fn psi_matrix<F: Field>(tc: &FinCategory<F>) -> Result<ZMat> {
    require_primal(tc)?;
    let q = tc.object(0).quiver().clone();
    let verts: Vec<i64> = q.vertices().to_vec();
    let n = tc.n_objects();
    let mut m = ZMat::zero(verts.len(), n);
    for i in 0..n {
        let s = simple_cat(tc, i)?;
        let g = g_functor(tc, &s)?;
        let gp = gprime_functor(tc, &s)?;
        for (r, &v) in verts.iter().enumerate() {
            m.set(r, i, g.dim(v) as i64 - gp.dim(v) as i64);
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Global dimension.
// ---------------------------------------------------------------------------

/// Supremum of the projective dimensions of the simple modules, each
/// computed by explicit resolutions with a guard at three steps.
pub fn global_dimension<F: Field>(tc: &FinCategory<F>) -> Result<usize> {
    let mut best = 0usize;
    for i in 0..tc.n_objects() {
        let s = simple_cat(tc, i)?;
        best = best.max(pd_cat(tc, &s, 3)?);
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// The Brenner–Butler verification suite.
// ---------------------------------------------------------------------------

/// Torsion classification of a single representation against the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionSide {
    /// `Ext¹(T, M) = 0`, `Hom(T, M) ≠ 0`.
    Torsion,
    /// `Hom(T, M) = 0`, `Ext¹(T, M) ≠ 0`.
    Free,
    /// Both functors nonzero: a proper extension.
    Mixed,
    /// Both functors zero.
    Zero,
}

/// Per-object verdicts of the verification suite.
#[derive(Clone, Debug)]
pub struct BBObjectResult {
    pub index: usize,
    pub side: TorsionSide,
    /// `GF(M) ≅ M` on the torsion side, `G′F′(M) ≅ M` on the free side.
    pub roundtrip_ok: bool,
    /// `F(M)` lands in the torsion-free class of modules and `F′(M)` in the
    /// torsion class: `G′F(M) = 0` and `GF′(M) = 0`.
    pub composites_vanish: bool,
    /// `0 → GF(M) → M → G′F′(M) → 0` is exact.
    pub sequence_ok: bool,
}

/// Per-module verdicts over the generated test family.
#[derive(Clone, Debug)]
pub struct BBModuleResult {
    pub label: String,
    /// `0 → F′G′(N) → N → FG(N) → 0` is exact.
    pub sequence_ok: bool,
    /// `FG′(N) = 0` and `F′G(N) = 0`.
    pub composites_vanish: bool,
}

/// Transport of an almost split sequence through `F`.
#[derive(Clone, Debug)]
pub struct BBArResult {
    pub index: usize,
    pub almost_split_ok: bool,
    pub terms_torsion_free: bool,
}

/// Everything the verification run measured.
#[derive(Clone, Debug)]
pub struct BBReport {
    pub objects: Vec<BBObjectResult>,
    pub modules: Vec<BBModuleResult>,
    pub ar_sequences: Vec<BBArResult>,
    pub k0: ZMat,
    pub k0_unimodular: bool,
    pub k0_inverse_ok: bool,
    pub witnesses: Vec<String>,
    pub verdict: bool,
}

fn classify_one<F: Field>(fm: &CatModule<F>, fpm: &CatModule<F>) -> TorsionSide {
    match (fpm.is_zero(), fm.is_zero()) {
        (true, false) => TorsionSide::Torsion,
        (false, true) => TorsionSide::Free,
        (false, false) => TorsionSide::Mixed,
        (true, true) => TorsionSide::Zero,
    }
}

/// Build the category from the family, require the tilting verdict, and run
/// the full verification suite.
pub fn verify_bb<F: Field>(t: &[Rep<F>], catalog: &[Rep<F>]) -> Result<BBReport> {
    let report = is_tilting(t)?;
    if !report.verdict {
        return Err(Error::Precondition("the family is not tilting".into()));
    }
    let tc = build_tilted(t)?;
    verify_bb_with(&tc, catalog)
}

/// Generated test family: images of the catalog under both functors,
/// the representables, and their radicals and socles.
fn generated_test_family<F: Field>(
    tc: &FinCategory<F>,
    catalog: &[Rep<F>],
) -> Result<Vec<(String, CatModule<F>)>> {
    let mut out = Vec::new();
    for (idx, m) in catalog.iter().enumerate() {
        out.push((format!("F(catalog {idx})"), f_functor(tc, m)?));
        out.push((format!("F'(catalog {idx})"), fprime_functor(tc, m)?));
    }
    for i in 0..tc.n_objects() {
        let p = representable(tc, i)?;
        let (r, _) = radical_submodule(tc, &p)?;
        let (s, _) = socle_submodule(tc, &p)?;
        out.push((format!("representable {i}"), p));
        out.push((format!("rad representable {i}"), r));
        out.push((format!("soc representable {i}"), s));
    }
    Ok(out)
}

/// Verify the tilting theorem against a prebuilt category. The composition
/// table is self-checked first, so a corrupted constant produces a `false`
/// verdict with a witness instead of silently wrong functor values.
pub fn verify_bb_with<F: Field>(tc: &FinCategory<F>, catalog: &[Rep<F>]) -> Result<BBReport> {
    require_primal(tc)?;
    let mut witnesses: Vec<String> = Vec::new();
    if let Some(w) = tc.self_check()? {
        witnesses.push(format!("composition table corrupted: {w}"));
        return Ok(BBReport {
            objects: Vec::new(),
            modules: Vec::new(),
            ar_sequences: Vec::new(),
            k0: ZMat::zero(0, 0),
            k0_unimodular: false,
            k0_inverse_ok: false,
            witnesses,
            verdict: false,
        });
    }
    let t = tc.objects();
    let q = t[0].quiver().clone();
    let mut objects = Vec::with_capacity(catalog.len());
    for (idx, m) in catalog.iter().enumerate() {
        let fm = f_functor(tc, m)?;
        let fpm = fprime_functor(tc, m)?;
        let side = classify_one(&fm, &fpm);
        let gfm = g_functor(tc, &fm)?;
        let gpfpm = gprime_functor(tc, &fpm)?;
        let roundtrip_ok = match side {
            TorsionSide::Torsion => is_isomorphic(&gfm, m)?,
            TorsionSide::Free => is_isomorphic(&gpfpm, m)?,
            TorsionSide::Mixed => true,
            TorsionSide::Zero => m.total_dim() == 0,
        };
        if !roundtrip_ok {
            witnesses.push(format!("catalog {idx}: roundtrip failed"));
        }
        let composites_vanish =
            gprime_functor(tc, &fm)?.total_dim() == 0 && g_functor(tc, &fpm)?.total_dim() == 0;
        if !composites_vanish {
            witnesses.push(format!("catalog {idx}: a vanishing composite is nonzero"));
        }
        let (gf_val, eps) = canonical_evaluation(tc, m)?;
        let mut sequence_ok = eps.is_injective() && is_isomorphic(&gf_val, &gfm)?;
        if sequence_ok {
            let (coker, _) = cokernel_rep(&eps)?;
            sequence_ok = is_isomorphic(&coker, &gpfpm)?;
        }
        if !sequence_ok {
            witnesses.push(format!("catalog {idx}: canonical sequence failed"));
        }
        objects.push(BBObjectResult { index: idx, side, roundtrip_ok, composites_vanish, sequence_ok });
    }
    let family = generated_test_family(tc, catalog)?;
    let mut modules: Vec<BBModuleResult> = Vec::with_capacity(family.len());
    for (label, n) in &family {
        let (g_val, nu, fg) = canonical_unit(tc, n)?;
        let _ = &fg;
        let surjective = nu.iter().all(|b| b.rank() == b.rows());
        let mut sequence_ok = surjective;
        if sequence_ok {
            let kernels: Vec<Mat<F>> = nu.iter().map(|b| b.kernel_basis()).collect();
            let (ker_mod, _) = cat_restrict(tc, n, &kernels)?;
            let gp = gprime_functor(tc, n)?;
            let fpgp = fprime_functor(tc, &gp)?;
            sequence_ok = cat_is_isomorphic(tc, &ker_mod, &fpgp)?;
        }
        if !sequence_ok {
            witnesses.push(format!("{label}: dual canonical sequence failed"));
        }
        let gp = gprime_functor(tc, n)?;
        let composites_vanish =
            f_functor(tc, &gp)?.is_zero() && fprime_functor(tc, &g_val)?.is_zero();
        if !composites_vanish {
            witnesses.push(format!("{label}: a vanishing composite is nonzero"));
        }
        modules.push(BBModuleResult { label: label.clone(), sequence_ok, composites_vanish });
    }
    // Transport almost split sequences ending at torsion catalog members
    // whose whole sequence stays in the torsion class.
    let mut ar_sequences = Vec::new();
    for (idx, m) in catalog.iter().enumerate() {
        if m.total_dim() == 0 || is_projective(m)? {
            continue;
        }
        if !fprime_functor(tc, m)?.is_zero() {
            continue;
        }
        let seq = ar_sequence(m)?;
        let (a_rep, b_rep, c_rep) = (seq.seq().a().clone(), seq.seq().b().clone(), seq.seq().c().clone());
        if !fprime_functor(tc, &a_rep)?.is_zero() || !fprime_functor(tc, &b_rep)?.is_zero() {
            continue;
        }
        let fa = f_functor(tc, &a_rep)?;
        let fb = f_functor(tc, &b_rep)?;
        let fc = f_functor(tc, &c_rep)?;
        let fi = f_on_map(tc, &seq.seq().i)?;
        let fp = f_on_map(tc, &seq.seq().p)?;
        let mut fail: Option<&'static str> = None;
        if !(is_natural(tc, &fa, &fb, &fi)? && is_natural(tc, &fb, &fc, &fp)?) {
            fail = Some("transported maps are not natural");
        }
        if fail.is_none() {
            for i in 0..tc.n_objects() {
                let exact_dims = fa.dim_at(i) + fc.dim_at(i) == fb.dim_at(i);
                let inj = fi[i].rank() == fi[i].cols();
                let surj = fp[i].rank() == fp[i].rows();
                let comp_zero = fp[i].mul(&fi[i])?.is_zero();
                if !(exact_dims && inj && surj && comp_zero) {
                    fail = Some("transported sequence is not objectwise exact");
                    break;
                }
            }
        }
        let mut ok = fail.is_none();
        // Non-split: no natural section of F(p).
        if ok {
            let sections = cat_hom_basis(tc, &fc, &fb)?;
            let mut id_target = Vec::new();
            for i in 0..tc.n_objects() {
                id_target.push(Mat::identity(fc.dim_at(i)));
            }
            let target_vec = Mat::col_vec(cat_map_vectorize(&id_target));
            // With no maps F(C) → F(B) at all, a section exists only in the
            // degenerate case F(C) = 0, where the zero map splits it.
            let split = if sections.is_empty() {
                fc.is_zero()
            } else {
                let mut cols = Mat::zero(target_vec.rows(), sections.len());
                for (b, s) in sections.iter().enumerate() {
                    let comp = cat_map_compose(&fp, s)?;
                    for (r, x) in cat_map_vectorize(&comp).into_iter().enumerate() {
                        cols.set(r, b, x);
                    }
                }
                cols.solve(&target_vec)?.is_some()
            };
            if split {
                fail = Some("a natural section splits the transported sequence");
                ok = false;
            }
        }
        // Left term indecomposable and the epi right almost split against
        // the generated family.
        if ok && !cat_is_indecomposable(tc, &fa)? {
            fail = Some("transported left term is not indecomposable");
            ok = false;
        }
        if ok {
            'outer: for (_, n) in &family {
                let rad = radical_hom_coords(tc, n, &fc)?;
                if rad.is_empty() {
                    continue;
                }
                let hom_nc = cat_hom_basis(tc, n, &fc)?;
                let hom_nb = cat_hom_basis(tc, n, &fb)?;
                let vec_len = cat_map_vectorize(&hom_nc[0]).len();
                let mut through = Mat::zero(vec_len, hom_nb.len());
                for (b, h) in hom_nb.iter().enumerate() {
                    let comp = cat_map_compose(&fp, h)?;
                    for (r, x) in cat_map_vectorize(&comp).into_iter().enumerate() {
                        through.set(r, b, x);
                    }
                }
                for rv in &rad {
                    let mut target = vec![F::zero(); vec_len];
                    for (a, x) in rv.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (r, y) in cat_map_vectorize(&hom_nc[a]).into_iter().enumerate() {
                            target[r] = target[r].clone() + x.clone() * y;
                        }
                    }
                    if through.solve(&Mat::col_vec(target))?.is_none() {
                        fail = Some("a radical morphism does not factor through the transported epi");
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        let terms_torsion_free = gprime_functor(tc, &fa)?.total_dim() == 0
            && gprime_functor(tc, &fb)?.total_dim() == 0
            && gprime_functor(tc, &fc)?.total_dim() == 0;
        if let Some(reason) = fail {
            witnesses.push(format!("catalog {idx}: {reason}"));
        }
        if !terms_torsion_free {
            witnesses.push(format!("catalog {idx}: transported terms leave the torsion-free class"));
        }
        ar_sequences.push(BBArResult { index: idx, almost_split_ok: ok, terms_torsion_free });
    }
    let simples: Vec<Rep<F>> = q
        .vertices()
        .iter()
        .map(|&v| standard_module(&q, StandardKind::Simple, v))
        .collect::<Result<_>>()?;
    let k0 = k0_matrix(t, &simples)?;
    let k0_unimodular = k0.rows() == k0.cols() && k0.is_unimodular()?;
    if !k0_unimodular {
        witnesses.push("class matrix is not unimodular".into());
    }
    let psi = psi_matrix(tc)?;
    let k0_inverse_ok = k0.mul(&psi)?.is_identity() && psi.mul(&k0)?.is_identity();
    if !k0_inverse_ok {
        witnesses.push("tensor-side class matrix is not the inverse".into());
    }
    let verdict = witnesses.is_empty();
    Ok(BBReport {
        objects,
        modules,
        ar_sequences,
        k0,
        k0_unimodular,
        k0_inverse_ok,
        witnesses,
        verdict,
    })
}

// ---------------------------------------------------------------------------
// The dual tilting family.
// ---------------------------------------------------------------------------

/// Outcome of checking that the evaluation modules form a tilting family
/// over the opposite category.
#[derive(Clone, Debug)]
pub struct DualTiltingReport {
    /// Projective dimension of each evaluation module, vertex order.
    pub pd: Vec<usize>,
    /// All pairwise first extensions vanish.
    pub ext_ok: bool,
    /// Each representable embeds with cokernel in the additive closure.
    pub coresolutions: Vec<bool>,
    /// `dim Hom(θ_C, θ_C′)` in vertex order.
    pub end_matrix: Vec<Vec<usize>>,
    pub verdict: bool,
}

/// The evaluation module `θ_C`: over the opposite category, the value at
/// object `i` is the fibre `(T_i)_C` and morphisms act by their matrices at
/// the vertex `C`.
pub fn theta_module<F: Field>(
    tcop: &FinCategory<F>,
    c: i64,
) -> Result<CatModule<F>> {
    if !tcop.is_op() {
        return Err(Error::Precondition(
            "evaluation modules live over the opposite category".into(),
        ));
    }
    let no = tcop.n_objects();
    let dims: Vec<usize> = (0..no).map(|i| tcop.object(i).dim(c)).collect();
    let mut act = BTreeMap::new();
    for i in 0..no {
        for j in 0..no {
            for a in 0..tcop.hom_dim_at(i, j) {
                // hom_op(i, j) realizes maps T_j → T_i; evaluation at C is
                // exactly the contravariant action block.
                let m = tcop.hom_maps(i, j)[a].mat_at(c);
                insert_block(&mut act, (i, j, a), m);
            }
        }
    }
    cat_module_internal(tcop, dims, act, "theta_module")
}

/// Check the dual statement: the evaluation modules form a tilting family
/// over the opposite category, and their hom-dimension matrix transposes
/// the path-count matrix of the quiver.
pub fn dual_tilting_check<F: Field>(t: &[Rep<F>]) -> Result<DualTiltingReport> {
    let tc = build_tilted(t)?;
    let tcop = tc.opposite();
    let q = t[0].quiver().clone();
    let verts: Vec<i64> = q.vertices().to_vec();
    let thetas: Vec<CatModule<F>> = verts
        .iter()
        .map(|&c| theta_module(&tcop, c))
        .collect::<Result<_>>()?;
    let mut pd = Vec::with_capacity(thetas.len());
    for th in &thetas {
        pd.push(pd_cat(&tcop, th, 3)?);
    }
    let mut ext_ok = true;
    for a in &thetas {
        for b in &thetas {
            if cat_ext1_dim(&tcop, a, b)? != 0 {
                ext_ok = false;
            }
        }
    }
    let mut coresolutions = Vec::with_capacity(verts.len());
    for i in 0..tcop.n_objects() {
        coresolutions.push(theta_coresolution_ok(&tcop, &thetas, i)?);
    }
    let mut end_matrix = vec![vec![0usize; thetas.len()]; thetas.len()];
    for (a, th_a) in thetas.iter().enumerate() {
        for (b, th_b) in thetas.iter().enumerate() {
            end_matrix[a][b] = cat_hom_dim(&tcop, th_a, th_b)?;
        }
    }
    let verdict = pd.iter().all(|&d| d <= 1) && ext_ok && coresolutions.iter().all(|&b| b);
    Ok(DualTiltingReport { pd, ext_ok, coresolutions, end_matrix, verdict })
}

/// Does the representable at `i` embed into a sum of evaluation modules
/// with cokernel again a sum of evaluation modules?
fn theta_coresolution_ok<F: Field>(
    tcop: &FinCategory<F>,
    thetas: &[CatModule<F>],
    i: usize,
) -> Result<bool> {
    let p = representable(tcop, i)?;
    // Universal map into every evaluation module.
    let mut parts: Vec<CatModule<F>> = Vec::new();
    let mut maps: Vec<CatMap<F>> = Vec::new();
    for th in thetas {
        for u in cat_hom_basis(tcop, &p, th)? {
            parts.push(th.clone());
            maps.push(u);
        }
    }
    if parts.is_empty() {
        return Ok(p.is_zero());
    }
    let (sum, incls, _) = cat_direct_sum(tcop, &parts)?;
    let no = tcop.n_objects();
    let mut f: CatMap<F> = (0..no).map(|o| Mat::zero(sum.dim_at(o), p.dim_at(o))).collect();
    for (r, u) in maps.iter().enumerate() {
        for o in 0..no {
            f[o] = f[o].add(&incls[r][o].mul(&u[o])?)?;
        }
    }
    if !is_natural(tcop, &p, &sum, &f)? {
        return Err(Error::Internal("universal evaluation map is not natural".into()));
    }
    if f.iter().any(|b| b.rank() != b.cols()) {
        return Ok(false);
    }
    // Cokernel as a module: restrict to the image, then quotient.
    let image_bases: Vec<Mat<F>> = f.iter().cloned().collect();
    let (_, img_incls) = cat_restrict(tcop, &sum, &image_bases)?;
    let (coker, _) = cat_quotient(tcop, &sum, &img_incls)?;
    in_additive_closure(tcop, &coker, thetas)
}

/// Is the module isomorphic to a nonnegative combination of the given ones?
/// Multiplicities are solved from dimension vectors, then certified by an
/// isomorphism with the assembled sum.
fn in_additive_closure<F: Field>(
    tcop: &FinCategory<F>,
    m: &CatModule<F>,
    parts: &[CatModule<F>],
) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let no = m.dims().len();
    let mut rows = Vec::with_capacity(no);
    for i in 0..no {
        let mut row = Vec::with_capacity(parts.len());
        for p in parts {
            row.push(F::from_i64(p.dim_at(i) as i64));
        }
        rows.push(row);
    }
    let a = Mat::from_rows(rows)?;
    let b = Mat::col_vec((0..no).map(|i| F::from_i64(m.dim_at(i) as i64)).collect());
    let mult = match a.solve(&b)? {
        Some(x) => x,
        None => return Ok(false),
    };
    let mut assembled: Vec<CatModule<F>> = Vec::new();
    for (r, p) in parts.iter().enumerate() {
        let c = mult.at(r, 0).clone();
        let mut count = 0usize;
        let mut acc = F::zero();
        while acc != c {
            acc = acc + F::one();
            count += 1;
            if count > m.total_dim() {
                return Ok(false);
            }
        }
        for _ in 0..count {
            assembled.push(p.clone());
        }
    }
    let (sum, _, _) = cat_direct_sum(tcop, &assembled)?;
    cat_is_isomorphic(tcop, m, &sum)
}

// ---------------------------------------------------------------------------
// Splitting and separation.
// ---------------------------------------------------------------------------

/// `(separates, splits)` for a family against a catalog of indecomposables.
///
/// `splits` holds when every torsion-free catalog member has injective
/// dimension at most one, and the torsion partition itself is exhaustive.
/// The two are cross-checked: a nonzero catalog member annihilated by both
/// functors contradicts a passing homological criterion and is flagged as an
/// inconsistency rather than folded into either answer. `separates` holds
/// when every torsion-free-class test module over the category has
/// projective dimension at most one; the generated test family must land in
/// one of the two image classes, which is checked the same way.
pub fn splitting_checks<F: Field>(
    t: &[Rep<F>],
    catalog: &[Rep<F>],
) -> Result<(bool, bool)> {
    let partition: TorsionPartition = classify_torsion(t, catalog)?;
    let mut id_criterion = true;
    for &idx in &partition.free {
        let (_, id) = crate::rep::homological_dims(&catalog[idx])?;
        if id > 1 {
            id_criterion = false;
        }
    }
    let both_nonzero = partition
        .both
        .iter()
        .any(|&idx| catalog[idx].total_dim() > 0);
    if id_criterion && both_nonzero {
        return Err(Error::Internal(
            "partition is not exhaustive while the injective-dimension criterion passes".into(),
        ));
    }
    let splits = id_criterion && partition.is_split();
    let tc = build_tilted(t)?;
    let family = generated_test_family(&tc, catalog)?;
    let mut separates = true;
    for (label, n) in &family {
        let in_y = gprime_functor(&tc, n)?.total_dim() == 0;
        let in_x = g_functor(&tc, n)?.total_dim() == 0;
        if !in_y && !in_x && !n.is_zero() {
            return Err(Error::Internal(format!(
                "generated test module {label} escapes both classes"
            )));
        }
        if in_y && pd_cat(&tc, n, 3)? > 1 {
            separates = false;
        }
    }
    Ok((separates, splits))
}
