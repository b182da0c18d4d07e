//! Translation quivers, mesh ideals, normal forms, sectionality, and the
//! ρ-presentation.

use tiltkit_core::mesh::{
    build_znq, normal_form, quotient_dimension, rho_relations, sectional_nonzero, PathExpr,
    RhoRelation, TqKind, TqPath, TqVertex, TranslationQuiver,
};
use tiltkit_core::quiver::Quiver;
use tiltkit_core::{Error, Field, Mat, Q};

fn a2() -> Quiver {
    Quiver::from_arrows(vec![0, 1], &[(0, 1)]).unwrap()
}

fn a3() -> Quiver {
    Quiver::from_arrows(vec![0, 1, 2], &[(0, 1), (1, 2)]).unwrap()
}

fn a4() -> Quiver {
    Quiver::from_arrows(vec![0, 1, 2, 3], &[(0, 1), (1, 2), (2, 3)]).unwrap()
}

fn kronecker() -> Quiver {
    Quiver::from_arrows(vec![0, 1], &[(0, 1), (0, 1)]).unwrap()
}

fn path(tq: &TranslationQuiver, ids: &[&str]) -> TqPath {
    TqPath::from_ids(tq, ids).unwrap()
}

fn nf(tq: &TranslationQuiver, e: &PathExpr<Q>, max: usize) -> PathExpr<Q> {
    normal_form(tq, e, max).unwrap()
}

// ---------------------------------------------------------------------------
// Construction.
// ---------------------------------------------------------------------------

#[test]
fn za2_depth1_hand_oracle() {
    // hand construction: 4 vertices, 3 arrows, σ pairs the two mesh arrows
    let tq = build_znq(&a2(), 1, TqKind::ZQ).unwrap();
    assert_eq!(tq.vertices(), &[(0, 0), (0, 1), (1, 0), (1, 1)]);
    let ids: Vec<&str> = tq.arrows().iter().map(|a| a.id.as_str()).collect();
    assert_eq!(ids, vec!["a0_1@0", "a0_1*@0", "a0_1@1"]);

    let a0 = tq.arrow("a0_1@0").unwrap();
    assert_eq!((a0.src, a0.tgt), ((0, 0), (1, 0)));
    let star = tq.arrow("a0_1*@0").unwrap();
    assert_eq!((star.src, star.tgt), ((1, 0), (0, 1)));
    let a1 = tq.arrow("a0_1@1").unwrap();
    assert_eq!((a1.src, a1.tgt), ((0, 1), (1, 1)));

    // σ pairs the mesh arrows at both level-1 vertices
    assert_eq!(tq.sigma("a0_1*@0").unwrap().unwrap().id, "a0_1@0");
    assert_eq!(tq.sigma("a0_1@1").unwrap().unwrap().id, "a0_1*@0");
    assert_eq!(tq.sigma("a0_1@0").unwrap(), None); // image below the window
    assert_eq!(tq.sigma_inv("a0_1@0").unwrap().unwrap().id, "a0_1*@0");
    assert_eq!(tq.sigma_inv("a0_1@1").unwrap(), None); // image above the window

    assert_eq!(tq.tau((0, 1)), Some((0, 0)));
    assert_eq!(tq.tau((0, 0)), None);
    assert_eq!(tq.tau_inv((1, 0)), Some((1, 1)));
    assert_eq!(tq.tau_inv((1, 1)), None);
}

#[test]
fn depth0_is_copy_of_delta() {
    let d = a3();
    let tq = build_znq(&d, 0, TqKind::ZQ).unwrap();
    assert_eq!(tq.vertices(), &[(0, 0), (1, 0), (2, 0)]);
    assert_eq!(tq.arrows().len(), d.arrows().len());
    for a in tq.arrows() {
        assert!(!a.star);
        assert_eq!(tq.sigma(&a.id).unwrap(), None);
    }
    assert!(tq.mesh_ideal().meshes.is_empty());
}

#[test]
fn vertex_and_arrow_counts() {
    for depth in 0..5usize {
        for d in [a2(), a3(), a4(), kronecker()] {
            let tq = build_znq(&d, depth, TqKind::ZQ).unwrap();
            assert_eq!(tq.vertices().len(), (depth + 1) * d.vertices().len());
            assert_eq!(tq.arrows().len(), (2 * depth + 1) * d.arrows().len());
        }
    }
}

#[test]
fn cyclic_base_is_rejected() {
    let cyc = Quiver::from_arrows(vec![0, 1], &[(0, 1), (1, 0)]).unwrap();
    assert!(matches!(
        build_znq(&cyc, 2, TqKind::ZQ),
        Err(Error::BadQuiver(_))
    ));
}

#[test]
fn sigma_is_a_mesh_bijection() {
    // σ restricted to arrows into x is a bijection onto arrows out of τx
    for d in [a3(), a4(), kronecker()] {
        let tq = build_znq(&d, 3, TqKind::ZQ).unwrap();
        for &x in tq.vertices() {
            let tx = match tq.tau(x) {
                Some(t) => t,
                None => continue,
            };
            let mut images: Vec<String> = tq
                .arrows_into(x)
                .iter()
                .map(|a| tq.sigma(&a.id).unwrap().unwrap().id.clone())
                .collect();
            images.sort();
            images.dedup();
            let mut outs: Vec<String> =
                tq.arrows_out(tx).iter().map(|a| a.id.clone()).collect();
            outs.sort();
            assert_eq!(images, outs, "σ at {:?}", x);
            // the end of σα is the start of α
            for a in tq.arrows_into(x) {
                let s = tq.sigma(&a.id).unwrap().unwrap();
                assert_eq!(s.tgt, a.src);
                assert_eq!(s.src, tx);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Mesh ideal and normal forms.
// ---------------------------------------------------------------------------

#[test]
fn meshes_are_sums_of_length2_paths() {
    for d in [a3(), kronecker()] {
        let tq = build_znq(&d, 3, TqKind::ZQ).unwrap();
        for mesh in &tq.mesh_ideal().meshes {
            assert_eq!(tq.tau(mesh.x), Some(mesh.tau_x));
            assert!(!mesh.pairs.is_empty());
            for (p, _) in mesh.expr::<Q>(&tq).unwrap().terms() {
                assert_eq!(p.len(), 2);
                assert_eq!(p.src(), mesh.tau_x);
                assert_eq!(p.tgt(), mesh.x);
            }
        }
    }
}

#[test]
fn meshes_vanish_and_arrows_do_not() {
    for d in [a2(), a3(), kronecker()] {
        let tq = build_znq(&d, 3, TqKind::ZQ).unwrap();
        for mesh in &tq.mesh_ideal().meshes {
            let e = mesh.expr::<Q>(&tq).unwrap();
            assert!(nf(&tq, &e, 2).is_zero(), "mesh at {:?}", mesh.x);
        }
        // degree-1 elements are never reduced
        for a in tq.arrows() {
            let e = PathExpr::<Q>::single(path(&tq, &[&a.id]));
            assert_eq!(nf(&tq, &e, 1), e);
        }
        // degree-0 idempotents pass through
        let e0 = PathExpr::<Q>::single(TqPath::trivial(tq.vertices()[0]));
        assert_eq!(nf(&tq, &e0, 0), e0);
    }
}

#[test]
fn one_mesh_elimination_oracle_za3() {
    // at (1,1) in ℤA₃ the mesh is  a0_1@1·a0_1*@0 + a1_2*@0·a1_2@0,
    // so each diagonal rewrites to minus the other; the lexicographically
    // smaller path is the pivot and the larger one survives as basis
    let tq = build_znq(&a3(), 2, TqKind::ZQ).unwrap();
    let diag_a = PathExpr::<Q>::single(path(&tq, &["a0_1*@0", "a0_1@1"]));
    let diag_b = PathExpr::<Q>::single(path(&tq, &["a1_2@0", "a1_2*@0"]));
    let na = nf(&tq, &diag_a, 2);
    let nb = nf(&tq, &diag_b, 2);
    assert!(na.add(&nb).is_zero());
    assert_eq!(na, PathExpr::zero().sub(&diag_b));
    assert_eq!(nb, diag_b); // the larger diagonal is already in normal form
    assert!(!na.is_zero());
}

#[test]
fn one_mesh_elimination_oracle_kronecker() {
    // two-arrow mesh at (1,1): both diagonals nonzero, summing to zero
    let tq = build_znq(&kronecker(), 2, TqKind::ZQ).unwrap();
    let d1 = PathExpr::<Q>::single(path(&tq, &["a0_1*@0", "a0_1@1"]));
    let d2 = PathExpr::<Q>::single(path(&tq, &["a0_1x1*@0", "a0_1x1@1"]));
    let n1 = nf(&tq, &d1, 2);
    assert_eq!(n1, PathExpr::zero().sub(&d2));
    assert!(nf(&tq, &d1.add(&d2), 2).is_zero());
}

#[test]
fn normal_form_is_linear() {
    let tq = build_znq(&a3(), 3, TqKind::ZQ).unwrap();
    let two = <Q as Field>::from_i64(2);
    for d in 2..=3usize {
        let paths = tq.paths_of_length(d);
        for pair in paths.windows(2) {
            let x = PathExpr::<Q>::single(pair[0].clone());
            let y = PathExpr::<Q>::single(pair[1].clone()).scale(&two);
            let lhs = nf(&tq, &x.add(&y), d);
            let rhs = nf(&tq, &x, d).add(&nf(&tq, &y, d));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn max_len_is_enforced() {
    let tq = build_znq(&a3(), 2, TqKind::ZQ).unwrap();
    let e = PathExpr::<Q>::single(path(&tq, &["a0_1@0", "a1_2@0"]));
    assert!(matches!(
        normal_form(&tq, &e, 1),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn quotient_dimensions_by_brute_force() {
    // degree-d dimension from elimination
    //   = #paths(d) − rank(hand-built mesh multiples)
    //   = rank of the normal forms of all degree-d paths
    for delta in [a2(), a3()] {
        let tq = build_znq(&delta, 3, TqKind::ZQ).unwrap();
        for d in 0..=4usize {
            let paths = tq.paths_of_length(d);
            let dim_elim = quotient_dimension::<Q>(&tq, d).unwrap();

            // oracle 1: products q·m·p composed here, by hand
            let mut rows: Vec<Vec<Q>> = Vec::new();
            for mesh in &tq.mesh_ideal().meshes {
                if d < 2 {
                    continue;
                }
                for ll in 0..=(d - 2) {
                    for q in tq.paths_into_of_length(mesh.tau_x, ll) {
                        for p in tq.paths_from_of_length(mesh.x, d - 2 - ll) {
                            let mut e = PathExpr::<Q>::zero();
                            for (alpha, salpha) in &mesh.pairs {
                                let mid = path(&tq, &[salpha, alpha]);
                                e.add_scaled(
                                    q.then(&mid).unwrap().then(&p).unwrap(),
                                    <Q as Field>::one(),
                                );
                            }
                            let row: Vec<Q> = paths
                                .iter()
                                .map(|pp| {
                                    e.terms()
                                        .find(|(t, _)| *t == pp)
                                        .map(|(_, c)| c.clone())
                                        .unwrap_or_else(<Q as Field>::zero)
                                })
                                .collect();
                            rows.push(row);
                        }
                    }
                }
            }
            let ideal_rank = if rows.is_empty() {
                0
            } else {
                Mat::from_rows(rows).unwrap().rank()
            };
            assert_eq!(dim_elim, paths.len() - ideal_rank, "degree {d}");

            // oracle 2: rank of the set of normal forms
            let forms: Vec<PathExpr<Q>> = paths
                .iter()
                .map(|p| nf(&tq, &PathExpr::single(p.clone()), d))
                .collect();
            let mut support: Vec<TqPath> = Vec::new();
            for f in &forms {
                for (p, _) in f.terms() {
                    if !support.contains(p) {
                        support.push(p.clone());
                    }
                }
            }
            support.sort();
            let rows: Vec<Vec<Q>> = forms
                .iter()
                .map(|f| {
                    support
                        .iter()
                        .map(|p| {
                            f.terms()
                                .find(|(t, _)| *t == p)
                                .map(|(_, c)| c.clone())
                                .unwrap_or_else(<Q as Field>::zero)
                        })
                        .collect()
                })
                .collect();
            let nf_rank = if paths.is_empty() {
                0
            } else {
                Mat::from_rows(rows).unwrap().rank()
            };
            assert_eq!(dim_elim, nf_rank, "degree {d}");
        }
    }
}

// ---------------------------------------------------------------------------
// Sectional paths.
// ---------------------------------------------------------------------------

#[test]
fn sectional_basics() {
    let tq = build_znq(&a2(), 2, TqKind::ZQ).unwrap();
    // a single arrow is sectional and nonzero
    assert!(sectional_nonzero::<Q>(&tq, &[(0, 0), (1, 0)]).unwrap());
    // a single vertex is a trivially sectional idempotent
    assert!(sectional_nonzero::<Q>(&tq, &[(1, 1)]).unwrap());
    // the mesh diagonal X → E → τ⁻X is not sectional
    assert!(!sectional_nonzero::<Q>(&tq, &[(0, 0), (1, 0), (0, 1)]).unwrap());
    // broken path
    assert!(matches!(
        sectional_nonzero::<Q>(&tq, &[(0, 0), (0, 1)]),
        Err(Error::Precondition(_))
    ));
    // vertex outside the window
    assert!(matches!(
        sectional_nonzero::<Q>(&tq, &[(0, 5)]),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn sectional_slice_paths_in_za3() {
    let tq = build_znq(&a3(), 2, TqKind::ZQ).unwrap();
    // within-level slice path
    assert!(sectional_nonzero::<Q>(&tq, &[(0, 1), (1, 1), (2, 1)]).unwrap());
    // staircase slice path (2,0) → (1,1) → (0,2)
    assert!(sectional_nonzero::<Q>(&tq, &[(2, 0), (1, 1), (0, 2)]).unwrap());
    // mesh diagonal through a two-arrow mesh: non-sectional even though its
    // composite is nonzero in the quotient — the verdict is combinatorial
    assert!(!sectional_nonzero::<Q>(&tq, &[(1, 0), (0, 1), (1, 1)]).unwrap());
    let diag = PathExpr::<Q>::single(path(&tq, &["a0_1*@0", "a0_1@1"]));
    assert!(!nf(&tq, &diag, 2).is_zero());
}

#[test]
fn sectional_za4_slice() {
    let tq = build_znq(&a4(), 3, TqKind::ZQ).unwrap();
    assert!(sectional_nonzero::<Q>(&tq, &[(0, 1), (1, 1), (2, 1), (3, 1)]).unwrap());
    assert!(sectional_nonzero::<Q>(&tq, &[(3, 0), (2, 1), (1, 2), (0, 3)]).unwrap());
    assert!(!sectional_nonzero::<Q>(&tq, &[(0, 1), (1, 1), (0, 2), (1, 2)]).unwrap());
}

#[test]
fn sectional_multi_arrow_choices() {
    // Kronecker: both arrow choices along a sectional arrow step are checked
    let tq = build_znq(&kronecker(), 2, TqKind::ZQ).unwrap();
    assert!(sectional_nonzero::<Q>(&tq, &[(0, 1), (1, 1)]).unwrap());
    assert!(!sectional_nonzero::<Q>(&tq, &[(0, 0), (1, 0), (0, 1)]).unwrap());
}

// ---------------------------------------------------------------------------
// ρ-presentation.
// ---------------------------------------------------------------------------

#[test]
fn rho_requires_zq() {
    let tq = build_znq(&a3(), 1, TqKind::MinusNQ).unwrap();
    assert!(matches!(rho_relations(&tq), Err(Error::Precondition(_))));
}

#[test]
fn rho_za3_depth1_hand_enumeration() {
    // hand enumeration on the six arrows of the depth-1 window:
    //   (i)   the only vertex with two in-arrows is (1,1)
    //   (ii)  composable non-mesh pairs: the two within-level composites
    //   (iii) the same two composites seen from the other side
    let tq = build_znq(&a3(), 1, TqKind::ZQ).unwrap();
    let rels = rho_relations(&tq).unwrap();
    let expected = vec![
        RhoRelation::Commute {
            alpha: "a0_1@1".into(),
            sigma_alpha: "a0_1*@0".into(),
            beta: "a1_2*@0".into(),
            sigma_beta: "a1_2@0".into(),
        },
        RhoRelation::ZeroLeft { alpha: "a1_2@0".into(), gamma: "a0_1@0".into() },
        RhoRelation::ZeroLeft { alpha: "a1_2@1".into(), gamma: "a0_1@1".into() },
        RhoRelation::ZeroRight { alpha: "a0_1@0".into(), gamma: "a1_2@0".into() },
        RhoRelation::ZeroRight { alpha: "a0_1@1".into(), gamma: "a1_2@1".into() },
    ];
    assert_eq!(rels, expected);
}

#[test]
fn rho_exhaustive_pair_scan_oracle() {
    // independent scan: count the families by brute force over arrow pairs
    let tq = build_znq(&a3(), 2, TqKind::ZQ).unwrap();
    let rels = rho_relations(&tq).unwrap();

    let mut commute = 0usize;
    let mut zero_left = 0usize;
    let mut zero_right = 0usize;
    for a in tq.arrows() {
        for b in tq.arrows() {
            // family (i): same end, a < b, both σ in-window
            if a.id < b.id && a.tgt == b.tgt {
                if tq.sigma(&a.id).unwrap().is_some() && tq.sigma(&b.id).unwrap().is_some() {
                    commute += 1;
                }
            }
            // family (ii): b then a composable, b ≠ σa
            if b.tgt == a.src {
                let is_mesh_pair = match tq.sigma(&a.id).unwrap() {
                    Some(s) => s.id == b.id,
                    // σa falls below the window: a is a level-0 within-level
                    // arrow, and no in-window b can be its σ
                    None => false,
                };
                if !is_mesh_pair {
                    zero_left += 1;
                }
            }
            // family (iii): a then b composable, b ≠ σ⁻¹a
            if b.src == a.tgt {
                let is_mesh_pair = match tq.sigma_inv(&a.id).unwrap() {
                    Some(s) => s.id == b.id,
                    None => false,
                };
                if !is_mesh_pair {
                    zero_right += 1;
                }
            }
        }
    }

    let count = |f: fn(&RhoRelation) -> bool| rels.iter().filter(|r| f(r)).count();
    assert_eq!(count(|r| matches!(r, RhoRelation::Commute { .. })), commute);
    assert_eq!(count(|r| matches!(r, RhoRelation::ZeroLeft { .. })), zero_left);
    assert_eq!(count(|r| matches!(r, RhoRelation::ZeroRight { .. })), zero_right);

    // families (ii) and (iii) name the same degree-2 paths
    let mut left_paths: Vec<TqPath> = rels
        .iter()
        .filter_map(|r| match r {
            RhoRelation::ZeroLeft { alpha, gamma } => Some(path(&tq, &[gamma, alpha])),
            _ => None,
        })
        .collect();
    let mut right_paths: Vec<TqPath> = rels
        .iter()
        .filter_map(|r| match r {
            RhoRelation::ZeroRight { alpha, gamma } => Some(path(&tq, &[alpha, gamma])),
            _ => None,
        })
        .collect();
    left_paths.sort();
    right_paths.sort();
    assert_eq!(left_paths, right_paths);
}

#[test]
fn rho_exprs_are_homogeneous_degree_two() {
    let tq = build_znq(&a4(), 2, TqKind::ZQ).unwrap();
    let rels = rho_relations(&tq).unwrap();
    assert!(!rels.is_empty());
    for r in &rels {
        let e = r.expr::<Q>(&tq).unwrap();
        assert!(!e.is_zero());
        let endpoints: Vec<(TqVertex, TqVertex)> =
            e.terms().map(|(p, _)| (p.src(), p.tgt())).collect();
        for (p, _) in e.terms() {
            assert_eq!(p.len(), 2);
        }
        // all terms of one relation share endpoints
        assert!(endpoints.windows(2).all(|w| w[0] == w[1]));
    }
}
