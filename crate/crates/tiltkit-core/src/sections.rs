//! Sections of Auslander–Reiten components, directed-path counting, the
//! tilting subcategories generated by section labels, torsion-pair
//! classification, and Bongartz completion of partial tilting families.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::ar::{tau, ARComponent, ArKey, KnitSide};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::mesh::{build_znq, normal_form, PathExpr, TqKind, TqPath};
use crate::rep::{
    cokernel_rep, decompose, direct_sum, ext1_basis, ext1_dim, factor_through_left, hom_basis,
    hom_dim, is_projective, iso_indecomposable, min_proj_presentation, standard_module, Cocycle,
    Rep, RepMap, ShortExact, StandardKind,
};

// ---------------------------------------------------------------------------
// Sections.
// ---------------------------------------------------------------------------

/// A subset of component vertices, remembered together with their labels so
/// that it can be used as a catalog of modules on its own. Keys are kept
/// sorted by (orbit, level); `labels()` follows the same order, which is the
/// fixed tie-breaking order used everywhere downstream.
#[derive(Clone, Debug)]
pub struct Section<F: Field> {
    keys: Vec<ArKey>,
    labels: Vec<Rep<F>>,
}

impl<F: Field> Section<F> {
    /// Capture the labels for a key set. Keys must all lie in the component;
    /// the section axioms are *not* checked here — see [`verify_section`].
    pub fn from_keys(c: &ARComponent<F>, keys: &[ArKey]) -> Result<Self> {
        let mut sorted: Vec<ArKey> = keys.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut labels = Vec::with_capacity(sorted.len());
        for &k in &sorted {
            labels.push(c.rep(k)?.clone());
        }
        Ok(Section { keys: sorted, labels })
    }

    pub fn keys(&self) -> &[ArKey] {
        &self.keys
    }

    pub fn labels(&self) -> &[Rep<F>] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, k: ArKey) -> bool {
        self.keys.binary_search(&k).is_ok()
    }
}

/// A reason why a vertex set fails to be a section.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SectionViolation {
    /// A key is not a vertex of the component.
    NotInComponent(ArKey),
    /// The induced subquiver has a directed cycle through this vertex.
    Cycle(ArKey),
    /// A τ-orbit of the window meets the set in no vertex.
    OrbitUncovered(i64),
    /// A τ-orbit of the window meets the set in more than one vertex.
    OrbitMultiplyCovered(i64, Vec<ArKey>),
    /// A directed path `from → … → to` between section vertices leaves the
    /// set at `via`.
    NotConvex { from: ArKey, via: ArKey, to: ArKey },
}

/// Outcome of [`verify_section`].
#[derive(Clone, Debug)]
pub struct SectionReport {
    pub ok: bool,
    pub violations: Vec<SectionViolation>,
}

/// Check the section axioms for a key set inside a windowed component:
/// (S1) no directed cycles through the set, (S2) each τ-orbit of the window
/// meets the set exactly once, (S3) directed paths between set vertices stay
/// in the set. All three are decided on the window.
pub fn verify_section<F: Field>(c: &ARComponent<F>, keys: &[ArKey]) -> SectionReport {
    let mut violations = Vec::new();
    let mut set: BTreeSet<ArKey> = BTreeSet::new();
    for &k in keys {
        if c.rep(k).is_err() {
            violations.push(SectionViolation::NotInComponent(k));
        } else {
            set.insert(k);
        }
    }
    if !violations.is_empty() {
        violations.sort();
        violations.dedup();
        return SectionReport { ok: false, violations };
    }

    // (S1): cycle detection on the induced subquiver.
    if let Some(witness) = induced_cycle(c, &set) {
        violations.push(SectionViolation::Cycle(witness));
    }

    // (S2): orbit coverage.
    let mut orbits: BTreeMap<i64, Vec<ArKey>> = BTreeMap::new();
    for k in c.keys() {
        orbits.entry(k.0).or_default();
    }
    for &k in &set {
        orbits.entry(k.0).or_default().push(k);
    }
    for (orbit, hits) in &orbits {
        match hits.len() {
            0 => violations.push(SectionViolation::OrbitUncovered(*orbit)),
            1 => {}
            _ => violations
                .push(SectionViolation::OrbitMultiplyCovered(*orbit, hits.clone())),
        }
    }

    // (S3): convexity. A violation is a vertex outside the set that is both
    // reachable from the set and able to reach it.
    let fwd = closure(c, &set, true);
    let bwd = closure(c, &set, false);
    for k in c.keys() {
        if set.contains(&k) {
            continue;
        }
        if let (Some(&from), Some(&to)) = (fwd.get(&k), bwd.get(&k)) {
            violations.push(SectionViolation::NotConvex { from, via: k, to });
        }
    }

    violations.sort();
    violations.dedup();
    SectionReport { ok: violations.is_empty(), violations }
}

/// Detect a directed cycle in the subquiver induced on `set`; returns a
/// vertex on the cycle if one exists.
fn induced_cycle<F: Field>(c: &ARComponent<F>, set: &BTreeSet<ArKey>) -> Option<ArKey> {
    // 0 = unvisited, 1 = on the current path, 2 = finished.
    let mut state: BTreeMap<ArKey, u8> = set.iter().map(|&k| (k, 0)).collect();
    for &start in set {
        if state[&start] != 0 {
            continue;
        }
        let mut stack: Vec<(ArKey, Vec<ArKey>)> = vec![(
            start,
            c.successors(start)
                .into_iter()
                .map(|(t, _)| t)
                .filter(|t| set.contains(t))
                .collect(),
        )];
        state.insert(start, 1);
        while let Some((v, todo)) = stack.last_mut() {
            if let Some(next) = todo.pop() {
                match state[&next] {
                    0 => {
                        state.insert(next, 1);
                        let succ = c
                            .successors(next)
                            .into_iter()
                            .map(|(t, _)| t)
                            .filter(|t| set.contains(t))
                            .collect();
                        stack.push((next, succ));
                    }
                    1 => return Some(next),
                    _ => {}
                }
            } else {
                state.insert(*v, 2);
                stack.pop();
            }
        }
    }
    None
}

/// Forward (or backward) closure of `set` in the component, excluding the
/// set itself. Each reached vertex is tagged with a set vertex that reaches
/// it (forward) or that it reaches (backward), for violation witnesses.
fn closure<F: Field>(
    c: &ARComponent<F>,
    set: &BTreeSet<ArKey>,
    forward: bool,
) -> BTreeMap<ArKey, ArKey> {
    let mut tag: BTreeMap<ArKey, ArKey> = BTreeMap::new();
    let mut queue: Vec<(ArKey, ArKey)> = Vec::new();
    for &s in set {
        let neighbors = if forward { c.successors(s) } else { c.predecessors(s) };
        for (n, _) in neighbors {
            queue.push((n, s));
        }
    }
    while let Some((v, origin)) = queue.pop() {
        if set.contains(&v) || tag.contains_key(&v) {
            continue;
        }
        tag.insert(v, origin);
        let neighbors = if forward { c.successors(v) } else { c.predecessors(v) };
        for (n, _) in neighbors {
            queue.push((n, origin));
        }
    }
    tag
}

/// Certify that the section has no infinite directed paths, as far as the
/// window can tell: the induced subquiver must be acyclic, and in an
/// incomplete window no section vertex may sit on the knitting boundary
/// (its continuation would be invisible, so finiteness cannot be certified).
pub fn check_no_infinite_paths<F: Field>(c: &ARComponent<F>, s: &Section<F>) -> Result<()> {
    let set: BTreeSet<ArKey> = s.keys().iter().copied().collect();
    for &k in s.keys() {
        c.rep(k)?;
    }
    if let Some(witness) = induced_cycle(c, &set) {
        return Err(Error::Precondition(format!(
            "section has a directed cycle through ({}, {})",
            witness.0, witness.1
        )));
    }
    if !c.is_complete() {
        let boundary = c.max_level();
        for &k in s.keys() {
            if k.1 == boundary {
                return Err(Error::WindowInadequate(format!(
                    "section vertex ({}, {}) lies on the knitting boundary; deepen the window",
                    k.0, k.1
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Path counting.
// ---------------------------------------------------------------------------

/// Count the directed paths in the component from `x` to the section (paths
/// ending at any section vertex; the empty path counts when `x` itself lies
/// on the section). Arrows are counted with multiplicity.
///
/// Levels never decrease along arrows of a knitted component, so once the
/// section clears the knitting boundary the count is exact: any path ending
/// at a section vertex stays at levels at most the section's maximum, where
/// the window already knows every arrow. When the count is positive and the
/// component is preprojective, the nonvanishing half of the directed-path
/// theorem is cross-checked: at least one path from `x` to the section must
/// have a nonzero class in the mesh quotient of the corresponding
/// translation quiver.
pub fn count_paths_to_section<F: Field>(
    c: &ARComponent<F>,
    x: ArKey,
    s: &Section<F>,
) -> Result<usize> {
    c.rep(x)?;
    if s.is_empty() {
        return Err(Error::Precondition(String::from("empty section")));
    }
    check_no_infinite_paths(c, s)?;

    let set: BTreeSet<ArKey> = s.keys().iter().copied().collect();
    let mut memo: BTreeMap<ArKey, usize> = BTreeMap::new();
    let count = count_from(c, x, &set, &mut memo)?;

    if count > 0 && c.side() == KnitSide::Preprojective {
        cross_check_nonzero_path(c, x, &set)?;
    }
    Ok(count)
}

fn count_from<F: Field>(
    c: &ARComponent<F>,
    v: ArKey,
    set: &BTreeSet<ArKey>,
    memo: &mut BTreeMap<ArKey, usize>,
) -> Result<usize> {
    if let Some(&n) = memo.get(&v) {
        return Ok(n);
    }
    let mut total = usize::from(set.contains(&v));
    for (w, mult) in c.successors(v) {
        if w.1 < v.1 {
            return Err(Error::Internal(String::from(
                "component arrow decreases the level",
            )));
        }
        total += mult * count_from(c, w, set, memo)?;
    }
    memo.insert(v, total);
    Ok(total)
}

/// Verify that some directed path from `x` into `set` has a nonzero class in
/// the mesh quotient of `−ℕ(Qᵒᵖ)` over the window's depth. Every component
/// arrow corresponds to at least one translation-quiver arrow between the
/// same keys, so vertex sequences transfer directly.
fn cross_check_nonzero_path<F: Field>(
    c: &ARComponent<F>,
    x: ArKey,
    set: &BTreeSet<ArKey>,
) -> Result<()> {
    if set.contains(&x) {
        return Ok(()); // the empty path is its own nonzero class
    }
    let depth = c.max_level().max(0) as usize;
    let tq = build_znq(&c.quiver().opposite(), depth, TqKind::MinusNQ)?;
    // Depth-first over vertex sequences from x that end in the section.
    let mut stack: Vec<Vec<ArKey>> = vec![vec![x]];
    while let Some(seq) = stack.pop() {
        let last = *seq.last().unwrap_or(&x);
        for (w, _) in c.successors(last) {
            let mut next = seq.clone();
            next.push(w);
            if set.contains(&w) {
                if some_composite_nonzero::<F>(&tq, &next)? {
                    return Ok(());
                }
            } else {
                stack.push(next);
            }
        }
    }
    Err(Error::Internal(String::from(
        "positive path count but every composite vanishes in the mesh quotient",
    )))
}

/// Whether some arrow-choice composite along the vertex sequence is nonzero
/// in the mesh quotient.
fn some_composite_nonzero<F: Field>(
    tq: &crate::mesh::TranslationQuiver,
    seq: &[ArKey],
) -> Result<bool> {
    let mut partials: Vec<TqPath> = vec![TqPath::trivial(seq[0])];
    for pair in seq.windows(2) {
        let mut extended = Vec::new();
        for arrow in tq.arrows_between(pair[0], pair[1]) {
            let step = TqPath::from_ids(tq, &[arrow.id.as_str()])?;
            for p in &partials {
                extended.push(p.then(&step)?);
            }
        }
        if extended.is_empty() {
            return Err(Error::Internal(String::from(
                "component arrow missing from translation quiver",
            )));
        }
        partials = extended;
    }
    for p in partials {
        let expr = PathExpr::<F>::single(p.clone());
        if !normal_form(tq, &expr, p.len())?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Coresolutions by left approximations.
// ---------------------------------------------------------------------------

/// The short exact sequence `0 → p → T⁰ → T¹ → 0` with `T⁰, T¹` in the
/// additive closure of the section labels, built as the minimal left
/// approximation of `p` followed by its cokernel.
pub fn coresolve_projective<F: Field>(p: &Rep<F>, s: &Section<F>) -> Result<ShortExact<F>> {
    coresolve_by_labels(p, s.labels())
}

/// The same construction for an arbitrary finite family of labels, in the
/// order given (the order fixes how minimization ties are broken).
pub fn coresolve_by_labels<F: Field>(p: &Rep<F>, labels: &[Rep<F>]) -> Result<ShortExact<F>> {
    if labels.is_empty() {
        return Err(Error::Precondition(String::from("empty label family")));
    }
    if !is_projective(p)? {
        return Err(Error::Precondition(String::from(
            "coresolution input must be projective",
        )));
    }
    let parts = decompose(p)?;
    if parts.len() != 1 || parts[0].1 != 1 {
        return Err(Error::Precondition(String::from(
            "coresolution input must be indecomposable",
        )));
    }

    // Universal map: one copy of each label per Hom-basis element.
    let mut copies: Vec<(usize, RepMap<F>)> = Vec::new();
    for (j, label) in labels.iter().enumerate() {
        for b in hom_basis(p, label)? {
            copies.push((j, b));
        }
    }
    let mut keep: Vec<bool> = vec![true; copies.len()];

    // Greedy minimization in the fixed order: drop a copy whenever the rest
    // still left-approximates, repeating until stable.
    loop {
        let mut changed = false;
        for k in 0..copies.len() {
            if !keep[k] {
                continue;
            }
            keep[k] = false;
            if !is_left_approximation(p, labels, &copies, &keep)? {
                keep[k] = true;
            } else {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let f = assemble_map(p, labels, &copies, &keep)?;
    if !f.is_injective() {
        return Err(Error::WindowInadequate(String::from(
            "left approximation is not injective; the window misses part of the coresolution",
        )));
    }
    let (coker, proj) = cokernel_rep(&f)?;
    let seq = ShortExact::new(f, proj)?;
    let total: usize = coker.quiver().vertices().iter().map(|&v| coker.dim(v)).sum();
    if total > 0 {
        for (summand, _) in decompose(&coker)? {
            let mut found = false;
            for label in labels {
                if iso_indecomposable(&summand, label)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::Precondition(String::from(
                    "cokernel of the approximation leaves the additive closure of the labels",
                )));
            }
        }
    }
    Ok(seq)
}

/// Build the map `p → ⊕ kept copies` determined by the chosen Hom-basis
/// elements.
fn assemble_map<F: Field>(
    p: &Rep<F>,
    labels: &[Rep<F>],
    copies: &[(usize, RepMap<F>)],
    keep: &[bool],
) -> Result<RepMap<F>> {
    let kept: Vec<&(usize, RepMap<F>)> =
        copies.iter().zip(keep).filter(|(_, &k)| k).map(|(c, _)| c).collect();
    if kept.is_empty() {
        return RepMap::zero(p.clone(), Rep::zero(p.quiver().clone()));
    }
    let parts: Vec<Rep<F>> = kept.iter().map(|(j, _)| labels[*j].clone()).collect();
    let (sum, incls, _) = direct_sum(&parts)?;
    let mut f = RepMap::zero(p.clone(), sum)?;
    for (i, (_, b)) in kept.iter().enumerate() {
        f = f.add(&incls[i].compose(b)?)?;
    }
    Ok(f)
}

/// Whether the map assembled from the kept copies is a left approximation:
/// every map from `p` to every label factors through it.
fn is_left_approximation<F: Field>(
    p: &Rep<F>,
    labels: &[Rep<F>],
    copies: &[(usize, RepMap<F>)],
    keep: &[bool],
) -> Result<bool> {
    let f = assemble_map(p, labels, copies, keep)?;
    for label in labels {
        for u in hom_basis(p, label)? {
            if factor_through_left(&u, &f)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Tilting verification.
// ---------------------------------------------------------------------------

/// Outcome of one projective's coresolution attempt inside [`is_tilting`].
#[derive(Clone, Debug)]
pub struct CoresolutionResult {
    pub vertex: i64,
    pub ok: bool,
    pub detail: String,
}

/// The three tilting clauses, reported separately. `verdict` is true exactly
/// when all clauses hold. Failures of the coresolution clause carry the
/// error text, which distinguishes genuine non-tilting inputs from window
/// inadequacy.
#[derive(Clone, Debug)]
pub struct TiltingReport {
    pub pd_failures: Vec<usize>,
    pub ext_failures: Vec<(usize, usize)>,
    pub coresolutions: Vec<CoresolutionResult>,
    pub verdict: bool,
}

impl TiltingReport {
    pub fn pd_ok(&self) -> bool {
        self.pd_failures.is_empty()
    }

    pub fn ext_ok(&self) -> bool {
        self.ext_failures.is_empty()
    }

    pub fn coresolution_ok(&self) -> bool {
        self.coresolutions.iter().all(|r| r.ok)
    }
}

/// Check the three clauses of the tilting definition for a finite family:
/// (i) projective dimension at most 1 for each member, certified on the
/// minimal projective presentation; (ii) Ext¹(T_i, T_j) = 0 for all ordered
/// pairs, computed both from cocycles and from the Auslander–Reiten formula
/// Ext¹(M, N) ≅ DHom(N, τM) — the two must agree; (iii) every projective of
/// the quiver admits a coresolution by the family.
pub fn is_tilting<F: Field>(t: &[Rep<F>]) -> Result<TiltingReport> {
    if t.is_empty() {
        return Err(Error::Precondition(String::from("empty family")));
    }
    for m in t {
        if !m.same_quiver(&t[0]) {
            return Err(Error::QuiverMismatch);
        }
    }

    let mut pd_failures = Vec::new();
    for (i, m) in t.iter().enumerate() {
        let pres = min_proj_presentation(m)?;
        if !pres.d.is_injective() {
            pd_failures.push(i);
        }
    }

    // Decompositions are reused across the pairwise loop; projective
    // summands contribute nothing on either side of the duality.
    let mut tau_parts: Vec<Vec<(Rep<F>, usize)>> = Vec::new();
    for m in t {
        let mut parts = Vec::new();
        for (summand, mult) in decompose(m)? {
            if !is_projective(&summand)? {
                parts.push((tau(&summand)?, mult));
            }
        }
        tau_parts.push(parts);
    }
    let mut ext_failures = Vec::new();
    for i in 0..t.len() {
        for j in 0..t.len() {
            let e = ext1_dim(&t[i], &t[j])?;
            let mut ar = 0usize;
            for (tm, mult) in &tau_parts[i] {
                ar += mult * hom_dim(&t[j], tm)?;
            }
            if e != ar {
                return Err(Error::Internal(format!(
                    "Ext¹ computation ({e}) disagrees with the AR formula ({ar}) on pair ({i}, {j})"
                )));
            }
            if e != 0 {
                ext_failures.push((i, j));
            }
        }
    }

    let q = t[0].quiver().clone();
    let mut coresolutions = Vec::new();
    for &v in q.vertices() {
        let p = standard_module(&q, StandardKind::Projective, v)?;
        let entry = match coresolve_by_labels(&p, t) {
            Ok(_) => CoresolutionResult { vertex: v, ok: true, detail: String::new() },
            Err(Error::Internal(msg)) => return Err(Error::Internal(msg)),
            Err(e) => CoresolutionResult { vertex: v, ok: false, detail: format!("{e:?}") },
        };
        coresolutions.push(entry);
    }

    let verdict = pd_failures.is_empty()
        && ext_failures.is_empty()
        && coresolutions.iter().all(|r| r.ok);
    Ok(TiltingReport { pd_failures, ext_failures, coresolutions, verdict })
}

// ---------------------------------------------------------------------------
// Torsion pairs.
// ---------------------------------------------------------------------------

/// Partition of a catalog by the torsion pair of a tilting family. Entries
/// are indices into the catalog. In the hereditary, splitting situation
/// `neither` and `both` stay empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionPartition {
    pub torsion: Vec<usize>,
    pub free: Vec<usize>,
    pub neither: Vec<usize>,
    pub both: Vec<usize>,
}

impl TorsionPartition {
    pub fn is_split(&self) -> bool {
        self.neither.is_empty() && self.both.is_empty()
    }
}

/// Sort each catalog member into the torsion class (`Ext¹(T_i, M) = 0` for
/// all i) or the torsion-free class (`Hom(T_i, M) = 0` for all i). Members
/// in neither or both classes are reported separately.
pub fn classify_torsion<F: Field>(t: &[Rep<F>], catalog: &[Rep<F>]) -> Result<TorsionPartition> {
    if t.is_empty() {
        return Err(Error::Precondition(String::from("empty family")));
    }
    let mut out = TorsionPartition {
        torsion: Vec::new(),
        free: Vec::new(),
        neither: Vec::new(),
        both: Vec::new(),
    };
    for (idx, m) in catalog.iter().enumerate() {
        let mut ext_zero = true;
        let mut hom_zero = true;
        for ti in t {
            if ext_zero && ext1_dim(ti, m)? != 0 {
                ext_zero = false;
            }
            if hom_zero && hom_dim(ti, m)? != 0 {
                hom_zero = false;
            }
        }
        match (ext_zero, hom_zero) {
            (true, true) => out.both.push(idx),
            (true, false) => out.torsion.push(idx),
            (false, true) => out.free.push(idx),
            (false, false) => out.neither.push(idx),
        }
    }
    Ok(out)
}

/// The keys of the component that are predecessors of the section: vertices
/// `X` with `τ⁻ⁿX` on the section for some `n > 0`. On knitted keys this is
/// a level comparison within each τ-orbit.
pub fn section_predecessors<F: Field>(
    c: &ARComponent<F>,
    s: &Section<F>,
) -> Result<Vec<ArKey>> {
    let mut section_level: BTreeMap<i64, i64> = BTreeMap::new();
    for &k in s.keys() {
        c.rep(k)?;
        if section_level.insert(k.0, k.1).is_some() {
            return Err(Error::Precondition(format!(
                "section meets the τ-orbit of {} more than once",
                k.0
            )));
        }
    }
    let mut preds = Vec::new();
    for k in c.keys() {
        let Some(&sl) = section_level.get(&k.0) else {
            return Err(Error::Precondition(format!(
                "section misses the τ-orbit of {}",
                k.0
            )));
        };
        let before = match c.side() {
            KnitSide::Preprojective => k.1 < sl,
            KnitSide::Preinjective => k.1 > sl,
        };
        if before {
            preds.push(k);
        }
    }
    Ok(preds)
}

/// Classify the whole window by the torsion pair of a section's labels and
/// cross-check the result against the predecessor criterion: the
/// torsion-free class must be exactly the predecessors of the section and
/// the torsion class exactly the rest. Indices in the returned partition
/// refer to the component's vertices in key order.
pub fn classify_torsion_for_section<F: Field>(
    c: &ARComponent<F>,
    s: &Section<F>,
) -> Result<TorsionPartition> {
    let keys: Vec<ArKey> = c.keys().collect();
    let catalog: Vec<Rep<F>> = c.vertices().values().cloned().collect();
    let partition = classify_torsion(s.labels(), &catalog)?;
    if !partition.is_split() {
        return Err(Error::Internal(String::from(
            "section torsion pair does not split the window",
        )));
    }
    let preds: BTreeSet<ArKey> = section_predecessors(c, s)?.into_iter().collect();
    let free: BTreeSet<ArKey> = partition.free.iter().map(|&i| keys[i]).collect();
    if free != preds {
        return Err(Error::Internal(String::from(
            "torsion-free class disagrees with the predecessor criterion",
        )));
    }
    Ok(partition)
}

// ---------------------------------------------------------------------------
// Section mutation.
// ---------------------------------------------------------------------------

/// The keys of the section that are sources of its induced subquiver and
/// whose τ⁻-translate lies in the window — exactly the spots where
/// [`mutate_section_at_source`] applies.
pub fn mutable_sources<F: Field>(c: &ARComponent<F>, s: &Section<F>) -> Vec<ArKey> {
    s.keys()
        .iter()
        .copied()
        .filter(|&k| {
            let has_internal_in = c
                .predecessors(k)
                .into_iter()
                .any(|(p, _)| s.contains(p));
            !has_internal_in && c.tau_inv_of(k).is_some()
        })
        .collect()
}

/// Replace a source `X` of the section by `τ⁻X`. The result is verified to
/// be a section again; near the window boundary the mutation can fail and is
/// reported as window inadequacy.
pub fn mutate_section_at_source<F: Field>(
    c: &ARComponent<F>,
    s: &Section<F>,
    key: ArKey,
) -> Result<Section<F>> {
    if !s.contains(key) {
        return Err(Error::Precondition(String::from(
            "mutation key is not on the section",
        )));
    }
    if c.predecessors(key).into_iter().any(|(p, _)| s.contains(p)) {
        return Err(Error::Precondition(String::from(
            "mutation key is not a source of the section",
        )));
    }
    let Some(next) = c.tau_inv_of(key) else {
        return Err(Error::WindowInadequate(format!(
            "τ⁻ of ({}, {}) is outside the window",
            key.0, key.1
        )));
    };
    let mut keys: Vec<ArKey> = s.keys().iter().copied().filter(|&k| k != key).collect();
    keys.push(next);
    let report = verify_section(c, &keys);
    if !report.ok {
        return Err(Error::WindowInadequate(String::from(
            "mutated set fails the section axioms near the window boundary",
        )));
    }
    Section::from_keys(c, &keys)
}

// ---------------------------------------------------------------------------
// Bongartz completion.
// ---------------------------------------------------------------------------

/// The universal-extension module `E_p` of a partial tilting family at the
/// projective `p`: with `T = ⊕ partial` and `e₁, …, e_d` a basis of
/// `Ext¹(T, p)`, the sequence `0 → p → E_p → T^d → 0` is the pushout of the
/// sum of the basis extensions along the codiagonal, realized here by the
/// block cocycle whose restriction to the k-th copy of `T` is `e_k`. When
/// `d = 0` the result is `p` itself. The postconditions `Ext¹(T, E_p) = 0`
/// and `Ext¹(E_p, E_p) = 0` are verified.
pub fn bongartz_complete<F: Field>(partial: &[Rep<F>], p: &Rep<F>) -> Result<Rep<F>> {
    if partial.is_empty() {
        return Err(Error::Precondition(String::from("empty partial family")));
    }
    if !is_projective(p)? {
        return Err(Error::Precondition(String::from(
            "completion point must be projective",
        )));
    }
    for m in partial {
        if !m.same_quiver(p) {
            return Err(Error::QuiverMismatch);
        }
        let pres = min_proj_presentation(m)?;
        if !pres.d.is_injective() {
            return Err(Error::Precondition(String::from(
                "partial family member of projective dimension above 1",
            )));
        }
    }
    for a in partial {
        for b in partial {
            if ext1_dim(a, b)? != 0 {
                return Err(Error::Precondition(String::from(
                    "partial family is not self-orthogonal",
                )));
            }
        }
    }

    let (t_total, _, _) = direct_sum(partial)?;
    let ext = ext1_basis(&t_total, p)?;
    let d = ext.dim();
    if d == 0 {
        return Ok(p.clone());
    }

    let copies: Vec<Rep<F>> = vec![t_total.clone(); d];
    let (power, _, projs) = direct_sum(&copies)?;
    let mut gamma: Cocycle<F> = BTreeMap::new();
    for a in p.quiver().arrows() {
        let rows = p.dim(a.tgt);
        let cols = power.dim(a.src);
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut block = crate::mat::Mat::zero(rows, cols);
        for (k, e) in ext.basis().iter().enumerate() {
            if let Some(g) = e.get(&a.id) {
                block = block.add(&g.mul(&projs[k].mat_at(a.src))?)?;
            }
        }
        gamma.insert(a.id.clone(), block);
    }
    let big = ext1_basis(&power, p)?;
    let seq = big.extension_of(&gamma)?;
    let e_p = seq.b().clone();

    for m in partial {
        if ext1_dim(m, &e_p)? != 0 {
            return Err(Error::Internal(String::from(
                "universal extension failed Ext¹(T, E_p) = 0",
            )));
        }
    }
    if ext1_dim(&e_p, &e_p)? != 0 {
        return Err(Error::Internal(String::from(
            "universal extension failed Ext¹(E_p, E_p) = 0",
        )));
    }
    Ok(e_p)
}

/// Complete a partial tilting family to a tilting one: adjoin the pairwise
/// non-isomorphic indecomposable summands of the universal extensions `E_p`
/// over all projectives `p`, then verify the result with [`is_tilting`].
pub fn bongartz_completion<F: Field>(partial: &[Rep<F>]) -> Result<Vec<Rep<F>>> {
    if partial.is_empty() {
        return Err(Error::Precondition(String::from("empty partial family")));
    }
    let q = partial[0].quiver().clone();
    let mut result: Vec<Rep<F>> = partial.to_vec();
    for &v in q.vertices() {
        let p = standard_module(&q, StandardKind::Projective, v)?;
        let e_p = bongartz_complete(partial, &p)?;
        for (summand, _) in decompose(&e_p)? {
            let mut known = false;
            for r in &result {
                for (existing, _) in decompose(r)? {
                    if iso_indecomposable(&summand, &existing)? {
                        known = true;
                        break;
                    }
                }
                if known {
                    break;
                }
            }
            if !known {
                result.push(summand);
            }
        }
    }
    let report = is_tilting(&result)?;
    if !report.verdict {
        return Err(Error::Internal(String::from(
            "completed family fails the tilting verification",
        )));
    }
    Ok(result)
}
