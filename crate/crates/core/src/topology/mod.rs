//! Topological invariants of simplicial complexes: connected components,
//! edge-path fundamental group presentations, integer simplicial homology,
//! and the combined analysis report the command line prints.

pub mod presentation;
pub mod snf;

pub use presentation::{
    abelianization, certify, split_free_factor, tietze_simplify, tietze_simplify_with_limit,
    Certification, GroupPresentation, DEFAULT_TIETZE_LIMIT,
};
pub use snf::{smith_normal_form, SmithNormalForm, SparseIntMatrix};

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::poset::PosetKind;

/// Connected components of a complex. Components are numbered 0.. in order
/// of each component's smallest vertex id.
#[derive(Clone, Debug)]
pub struct Components {
    count: usize,
    of_vertex: Vec<u32>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn component_of(&self, vertex: u32) -> u32 {
        self.of_vertex[vertex as usize]
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let grand = parent[parent[x as usize] as usize];
        parent[x as usize] = grand;
        x = grand;
    }
    x
}

pub fn components(complex: &SimplicialComplex) -> Components {
    let n = complex.vertex_count();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    for edge in complex.skeleton(1).iter() {
        let (a, b) = (find(&mut parent, edge[0]), find(&mut parent, edge[1]));
        if a != b {
            parent[a.max(b) as usize] = a.min(b);
        }
    }
    let mut of_vertex = vec![0u32; n];
    let mut numbering: HashMap<u32, u32> = HashMap::new();
    for v in 0..n as u32 {
        let root = find(&mut parent, v);
        let next = numbering.len() as u32;
        of_vertex[v as usize] = *numbering.entry(root).or_insert(next);
    }
    Components {
        count: numbering.len(),
        of_vertex,
    }
}

/// Edge-path presentation of the fundamental group of one component: a
/// breadth-first spanning tree rooted at the component's smallest vertex,
/// one generator per non-tree edge (in lexicographic edge order), and one
/// relator per 2-simplex {a<b<c} reading word(ab)·word(bc)·word(ac)⁻¹ with
/// tree edges contributing nothing.
pub fn pi1_presentation(
    complex: &SimplicialComplex,
    component_map: &Components,
    component: u32,
) -> GroupPresentation {
    let vertex_count = complex.vertex_count();
    let edges = complex.skeleton(1);
    let in_component = |v: u32| component_map.component_of(v) == component;

    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); vertex_count];
    for edge in edges.iter() {
        adjacency[edge[0] as usize].push(edge[1]);
        adjacency[edge[1] as usize].push(edge[0]);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    let root = (0..vertex_count as u32)
        .find(|&v| in_component(v))
        .expect("component ids come from the component map");
    let mut tree: HashSet<(u32, u32)> = HashSet::new();
    let mut visited = vec![false; vertex_count];
    visited[root as usize] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v as usize] {
            if !visited[w as usize] {
                visited[w as usize] = true;
                tree.insert((v.min(w), v.max(w)));
                queue.push_back(w);
            }
        }
    }

    let mut generator_of: HashMap<(u32, u32), i32> = HashMap::new();
    for edge in edges.iter() {
        let pair = (edge[0], edge[1]);
        if in_component(pair.0) && !tree.contains(&pair) {
            let next = generator_of.len() as i32 + 1;
            generator_of.insert(pair, next);
        }
    }
    let generator_count = generator_of.len();

    // The letter contributed by traversing x -> y, if the edge is not in the
    // spanning tree.
    let word = |x: u32, y: u32| -> Option<i32> {
        let g = *generator_of.get(&(x.min(y), x.max(y)))?;
        Some(if x < y { g } else { -g })
    };

    let mut relators: Vec<Vec<i32>> = Vec::new();
    for triangle in complex.skeleton(2).iter() {
        let (a, b, c) = (triangle[0], triangle[1], triangle[2]);
        if !in_component(a) {
            continue;
        }
        relators.push([word(a, b), word(b, c), word(c, a)].into_iter().flatten().collect());
    }

    GroupPresentation::new(generator_count, relators)
        .expect("edge-path words use valid generator indices")
}

/// Integral homology in degrees 0..=max_dim. Unreduced: betti[0] counts the
/// connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
    pub reduced: bool,
}

pub fn homology(
    complex: &SimplicialComplex,
    max_dim: usize,
    caps: &Caps,
) -> Result<Homology, Error> {
    let dimension = complex.dimension();
    if max_dim > dimension {
        return Err(Error::HomologyDegree {
            requested: max_dim,
            dimension,
        });
    }
    let top = (max_dim + 1).min(dimension);
    for d in 0..=top {
        complex.skeleton(d);
    }
    let forms: Vec<SmithNormalForm> = (1..=top)
        .into_par_iter()
        .map(|d| smith_normal_form(boundary_matrix(complex, d), caps))
        .collect::<Result<_, _>>()?;
    let rank = |d: usize| {
        if d == 0 || d > top {
            0
        } else {
            forms[d - 1].rank()
        }
    };
    let mut betti = Vec::with_capacity(max_dim + 1);
    let mut torsion = Vec::with_capacity(max_dim + 1);
    for q in 0..=max_dim {
        betti.push(complex.skeleton(q).len() - rank(q) - rank(q + 1));
        torsion.push(forms.get(q).map(SmithNormalForm::torsion).unwrap_or_default());
    }
    Ok(Homology {
        betti,
        torsion,
        reduced: false,
    })
}

/// Boundary map from d-chains to (d-1)-chains: rows are indexed by the
/// (d-1)-skeleton, columns by the d-skeleton, and the face omitting the i-th
/// vertex carries sign (-1)^i.
fn boundary_matrix(complex: &SimplicialComplex, d: usize) -> SparseIntMatrix {
    let rows = complex.skeleton(d - 1);
    let cols = complex.skeleton(d);
    let mut matrix = SparseIntMatrix::new(rows.len(), cols.len());
    let mut face: Vec<u32> = Vec::with_capacity(d);
    for (j, simplex) in cols.iter().enumerate() {
        for i in 0..=d {
            face.clear();
            face.extend_from_slice(&simplex[..i]);
            face.extend_from_slice(&simplex[i + 1..]);
            let r = rows
                .binary_search(&face)
                .expect("every face of a simplex lies one skeleton down");
            matrix.add(r, j, if i % 2 == 0 { 1 } else { -1 });
        }
    }
    matrix
}

/// Identifies the run a report describes.
#[derive(Clone, Debug)]
pub struct ReportContext {
    pub group_spec: String,
    pub prime: u64,
    pub poset_kind: PosetKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub group_spec: String,
    pub prime: u64,
    pub poset_kind: PosetKind,
    pub components: usize,
    pub per_component: Vec<ComponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologyJson>,
    pub euler: i64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentStatus {
    Trivial,
    Free,
    Presented,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub status: ComponentStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relators: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_factor_rank: Option<usize>,
    pub abelianization: AbelianizationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianizationReport {
    pub rank: usize,
    /// Invariant factors in decimal. Strings, because torsion coefficients
    /// can outgrow what a JSON number can hold exactly.
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyJson {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<String>>,
    pub reduced: bool,
}

/// Full fundamental-group analysis of a complex, one entry per component,
/// plus the Euler characteristic and optional homology. Components run
/// concurrently; the report order is by component id.
pub fn analyze(
    context: ReportContext,
    complex: &SimplicialComplex,
    homology_dim: Option<usize>,
    caps: &Caps,
) -> Result<AnalysisReport, Error> {
    let component_map = components(complex);
    complex.skeleton(2);
    let per_component: Vec<ComponentReport> = (0..component_map.count() as u32)
        .into_par_iter()
        .map(|c| component_report(complex, &component_map, c, caps))
        .collect::<Result<_, _>>()?;
    let mut warnings = Vec::new();
    if per_component
        .windows(2)
        .any(|pair| pair[0].abelianization != pair[1].abelianization)
    {
        warnings.push("abelianization invariants differ across components".to_string());
    }
    let homology_json = match homology_dim {
        Some(d) => {
            let h = homology(complex, d, caps)?;
            Some(HomologyJson {
                betti: h.betti,
                torsion: h
                    .torsion
                    .iter()
                    .map(|t| t.iter().map(BigInt::to_string).collect())
                    .collect(),
                reduced: h.reduced,
            })
        }
        None => None,
    };
    Ok(AnalysisReport {
        group_spec: context.group_spec,
        prime: context.prime,
        poset_kind: context.poset_kind,
        components: component_map.count(),
        per_component,
        homology: homology_json,
        euler: complex.euler_characteristic(),
        warnings,
    })
}

fn component_report(
    complex: &SimplicialComplex,
    component_map: &Components,
    component: u32,
    caps: &Caps,
) -> Result<ComponentReport, Error> {
    let raw = pi1_presentation(complex, component_map, component);
    let simplified = tietze_simplify(&raw);
    let (rank, torsion) = abelianization(&simplified, caps)?;
    let ab = AbelianizationReport {
        rank,
        torsion: torsion.iter().map(BigInt::to_string).collect(),
    };
    let report = match certify(&simplified) {
        Certification::Trivial => ComponentReport {
            status: ComponentStatus::Trivial,
            free_rank: None,
            generators: None,
            relators: None,
            free_factor_rank: None,
            abelianization: ab,
        },
        Certification::Free(free_rank) => ComponentReport {
            status: ComponentStatus::Free,
            free_rank: Some(free_rank),
            generators: None,
            relators: None,
            free_factor_rank: None,
            abelianization: ab,
        },
        Certification::Presented => {
            let (free_factor_rank, residual) = split_free_factor(&simplified);
            ComponentReport {
                status: ComponentStatus::Presented,
                free_rank: None,
                generators: Some(residual.generator_count()),
                relators: Some(residual.relators().len()),
                free_factor_rank: Some(free_factor_rank),
                abelianization: ab,
            }
        }
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::order_complex;
    use crate::group::PermGroup;
    use crate::poset::{build_quillen, build_sp, poset_join, AbstractPoset};
    use std::sync::Arc;

    fn complex_from(vertices: usize, maximal: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_maximal(
            vertices,
            maximal.iter().map(|s| s.to_vec()).collect(),
        )
        .unwrap()
    }

    fn quillen_complex(group: PermGroup, p: u64) -> SimplicialComplex {
        let caps = Caps::default();
        let poset = build_quillen(&Arc::new(group), p, &caps).unwrap();
        order_complex(&poset.abstract_poset(), &caps).unwrap()
    }

    fn a5() -> PermGroup {
        PermGroup::alternating(5).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::symmetric(4).unwrap()
    }

    fn sp_complex_s4() -> SimplicialComplex {
        let caps = Caps::default();
        let poset = build_sp(&Arc::new(s4()), 2, &caps).unwrap();
        order_complex(&poset.abstract_poset(), &caps).unwrap()
    }

    fn projective_plane() -> SimplicialComplex {
        complex_from(
            6,
            &[
                &[0, 1, 4],
                &[0, 1, 5],
                &[0, 2, 3],
                &[0, 2, 5],
                &[0, 3, 4],
                &[1, 2, 3],
                &[1, 2, 4],
                &[1, 3, 5],
                &[2, 4, 5],
                &[3, 4, 5],
            ],
        )
    }

    /// The 7-vertex triangulation of the torus: faces {i, i+1, i+3} and
    /// {i, i+2, i+3} mod 7.
    fn torus() -> SimplicialComplex {
        let mut faces = Vec::new();
        for i in 0..7u32 {
            faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        SimplicialComplex::from_maximal(7, faces).unwrap()
    }

    fn simplify_component(complex: &SimplicialComplex, component: u32) -> GroupPresentation {
        let map = components(complex);
        tietze_simplify(&pi1_presentation(complex, &map, component))
    }

    #[test]
    fn components_are_numbered_by_smallest_vertex() {
        let k = complex_from(5, &[&[2, 3], &[0, 1], &[4]]);
        let map = components(&k);
        assert_eq!(map.count(), 3);
        let ids: Vec<u32> = (0..5).map(|v| map.component_of(v)).collect();
        assert_eq!(ids, vec![0, 0, 1, 1, 2]);
    }

    #[test]
    fn component_counts_on_subgroup_complexes() {
        assert_eq!(components(&quillen_complex(a5(), 2)).count(), 5);
        assert_eq!(components(&quillen_complex(s4(), 2)).count(), 1);
        assert_eq!(components(&sp_complex_s4()).count(), 1);
    }

    #[test]
    fn tree_has_trivial_fundamental_group() {
        let k = complex_from(4, &[&[0, 1], &[1, 2], &[2, 3]]);
        let map = components(&k);
        let raw = pi1_presentation(&k, &map, 0);
        assert_eq!(raw.generator_count(), 0);
        assert!(raw.relators().is_empty());
        assert_eq!(certify(&raw), Certification::Trivial);
    }

    #[test]
    fn circle_is_free_of_rank_one() {
        let k = complex_from(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let map = components(&k);
        let raw = pi1_presentation(&k, &map, 0);
        assert_eq!(raw.generator_count(), 1);
        assert!(raw.relators().is_empty());
    }

    #[test]
    fn filled_triangle_simplifies_to_trivial() {
        let k = complex_from(3, &[&[0, 1, 2]]);
        let map = components(&k);
        let raw = pi1_presentation(&k, &map, 0);
        assert_eq!(raw.generator_count(), 1);
        assert_eq!(raw.relators(), &[vec![1]]);
        assert_eq!(certify(&tietze_simplify(&raw)), Certification::Trivial);
    }

    /// Euler-characteristic bookkeeping of the edge-path construction:
    /// generators minus relators of the raw presentation is 1 - chi of the
    /// component's 2-skeleton.
    #[test]
    fn raw_presentation_counts_follow_the_euler_characteristic() {
        for k in [
            sp_complex_s4(),
            quillen_complex(a5(), 2),
            torus(),
            projective_plane(),
        ] {
            let map = components(&k);
            let edges = k.skeleton(1);
            let triangles = k.skeleton(2);
            for c in 0..map.count() as u32 {
                let raw = pi1_presentation(&k, &map, c);
                let v = (0..k.vertex_count() as u32)
                    .filter(|&x| map.component_of(x) == c)
                    .count() as i64;
                let e = edges.iter().filter(|e| map.component_of(e[0]) == c).count() as i64;
                let f = triangles
                    .iter()
                    .filter(|t| map.component_of(t[0]) == c)
                    .count() as i64;
                let lhs = raw.generator_count() as i64 - raw.relators().len() as i64;
                assert_eq!(lhs, 1 - (v - e + f));
            }
        }
    }

    #[test]
    fn homology_of_a_point() {
        let k = complex_from(1, &[&[0]]);
        let h = homology(&k, 0, &Caps::default()).unwrap();
        assert_eq!(h.betti, vec![1]);
        assert_eq!(h.torsion, vec![Vec::<BigInt>::new()]);
        assert!(!h.reduced);
    }

    #[test]
    fn homology_of_a_circle() {
        let k = complex_from(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let h = homology(&k, 1, &Caps::default()).unwrap();
        assert_eq!(h.betti, vec![1, 1]);
        assert!(h.torsion.iter().all(Vec::is_empty));
    }

    #[test]
    fn homology_of_a_sphere() {
        let k = complex_from(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let h = homology(&k, 2, &Caps::default()).unwrap();
        assert_eq!(h.betti, vec![1, 0, 1]);
        assert!(h.torsion.iter().all(Vec::is_empty));
    }

    #[test]
    fn homology_of_the_projective_plane() {
        let k = projective_plane();
        assert_eq!(k.euler_characteristic(), 1);
        let h = homology(&k, 2, &Caps::default()).unwrap();
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(
            h.torsion,
            vec![vec![], vec![BigInt::from(2)], vec![]]
        );
    }

    #[test]
    fn homology_of_the_torus() {
        let k = torus();
        assert_eq!(k.euler_characteristic(), 0);
        let h = homology(&k, 2, &Caps::default()).unwrap();
        assert_eq!(h.betti, vec![1, 2, 1]);
        assert!(h.torsion.iter().all(Vec::is_empty));
    }

    #[test]
    fn homology_of_subgroup_complexes() {
        let a5 = quillen_complex(a5(), 2);
        let h = homology(&a5, 1, &Caps::default()).unwrap();
        assert_eq!(h.betti, vec![5, 0]);

        let s4 = quillen_complex(s4(), 2);
        let h = homology(&s4, 1, &Caps::default()).unwrap();
        assert_eq!(h.betti, vec![1, 0]);
        assert!(h.torsion.iter().all(Vec::is_empty));
    }

    #[test]
    fn betti_numbers_alternate_to_the_euler_characteristic() {
        for k in [sp_complex_s4(), torus(), projective_plane()] {
            let h = homology(&k, k.dimension(), &Caps::default()).unwrap();
            let alternating: i64 = h
                .betti
                .iter()
                .enumerate()
                .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(alternating, k.euler_characteristic());
            assert_eq!(h.betti[0], components(&k).count());
        }
    }

    /// Degree-one Hurewicz: the abelianization of pi1 matches first homology.
    #[test]
    fn abelianized_pi1_matches_first_homology() {
        for k in [projective_plane(), torus(), sp_complex_s4()] {
            let simplified = simplify_component(&k, 0);
            let (rank, torsion) = abelianization(&simplified, &Caps::default()).unwrap();
            let h = homology(&k, 1, &Caps::default()).unwrap();
            assert_eq!(rank, h.betti[1]);
            assert_eq!(torsion, h.torsion[1]);
        }
    }

    #[test]
    fn projective_plane_pi1_has_order_two_abelianization() {
        let simplified = simplify_component(&projective_plane(), 0);
        assert_eq!(certify(&simplified), Certification::Presented);
        let (rank, torsion) = abelianization(&simplified, &Caps::default()).unwrap();
        assert_eq!(rank, 0);
        assert_eq!(torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn homology_degree_above_the_dimension_is_an_error() {
        let k = complex_from(1, &[&[0]]);
        let err = homology(&k, 1, &Caps::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::HomologyDegree {
                requested: 1,
                dimension: 0
            }
        ));
    }

    /// The fundamental group of a join of two antichains is free of rank
    /// (a-1)(b-1).
    #[test]
    fn join_of_antichains_is_free_of_the_product_rank() {
        let caps = Caps::default();
        for (a, b) in [(3usize, 4usize), (5, 5), (2, 2)] {
            let join = poset_join(&AbstractPoset::antichain(a), &AbstractPoset::antichain(b));
            let k = order_complex(&join, &caps).unwrap();
            assert_eq!(components(&k).count(), 1);
            let simplified = simplify_component(&k, 0);
            let expected = (a - 1) * (b - 1);
            if expected == 0 {
                assert_eq!(certify(&simplified), Certification::Trivial);
            } else {
                assert_eq!(certify(&simplified), Certification::Free(expected));
            }
        }
    }

    #[test]
    fn analyze_reports_the_quillen_a5_run() {
        let k = quillen_complex(a5(), 2);
        let report = analyze(
            ReportContext {
                group_spec: "alternating:5".to_string(),
                prime: 2,
                poset_kind: PosetKind::Quillen,
            },
            &k,
            Some(1),
            &Caps::default(),
        )
        .unwrap();
        assert_eq!(report.components, 5);
        assert_eq!(report.euler, 5);
        assert!(report.warnings.is_empty());
        for comp in &report.per_component {
            assert_eq!(comp.status, ComponentStatus::Trivial);
            assert_eq!(comp.abelianization.rank, 0);
            assert!(comp.abelianization.torsion.is_empty());
        }

        let value = serde_json::to_value(&report).unwrap();
        assert_eq!(value["poset_kind"], "quillen");
        assert_eq!(value["homology"]["betti"], serde_json::json!([5, 0]));
        assert_eq!(value["homology"]["reduced"], false);
        assert!(value.get("warnings").is_none());
        let comp = &value["per_component"][0];
        assert_eq!(comp["status"], "trivial");
        assert!(comp.get("free_rank").is_none());
        assert!(comp.get("generators").is_none());
        assert_eq!(comp["abelianization"]["rank"], 0);
    }

    #[test]
    fn analyze_flags_components_with_different_invariants() {
        let k = complex_from(4, &[&[0, 1], &[1, 2], &[0, 2], &[3]]);
        let report = analyze(
            ReportContext {
                group_spec: "test".to_string(),
                prime: 2,
                poset_kind: PosetKind::Sp,
            },
            &k,
            Some(1),
            &Caps::default(),
        )
        .unwrap();
        assert_eq!(report.components, 2);
        assert_eq!(report.warnings.len(), 1);
        let h = report.homology.unwrap();
        assert_eq!(h.betti, vec![2, 1]);
        let value = serde_json::to_value(&report.per_component[0]).unwrap();
        assert_eq!(value["status"], "free");
        assert_eq!(value["free_rank"], 1);
    }

    #[test]
    fn analyze_output_is_identical_across_thread_counts() {
        let run = || {
            let k = sp_complex_s4();
            let report = analyze(
                ReportContext {
                    group_spec: "symmetric:4".to_string(),
                    prime: 2,
                    poset_kind: PosetKind::Sp,
                },
                &k,
                Some(2),
                &Caps::default(),
            )
            .unwrap();
            serde_json::to_string_pretty(&report).unwrap()
        };
        let ambient = run();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(run);
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(run);
        assert_eq!(ambient, single);
        assert_eq!(ambient, four);
    }

    #[test]
    fn presented_components_report_the_split() {
        let k = projective_plane();
        let report = analyze(
            ReportContext {
                group_spec: "test".to_string(),
                prime: 2,
                poset_kind: PosetKind::Quillen,
            },
            &k,
            None,
            &Caps::default(),
        )
        .unwrap();
        assert!(report.homology.is_none());
        let comp = &report.per_component[0];
        assert_eq!(comp.status, ComponentStatus::Presented);
        assert_eq!(comp.free_factor_rank, Some(0));
        assert!(comp.generators.unwrap() >= 1);
        assert!(comp.relators.unwrap() >= 1);
        let value = serde_json::to_value(&report).unwrap();
        assert!(value.get("homology").is_none());
    }

    #[test]
    fn torus_pi1_abelianization_has_rank_two() {
        let simplified = simplify_component(&torus(), 0);
        let (rank, torsion) = abelianization(&simplified, &Caps::default()).unwrap();
        assert_eq!(rank, 2);
        assert!(torsion.is_empty());
    }
}
