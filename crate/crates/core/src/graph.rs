//! Distances in the graph of non-degenerate codes.
//!
//! The restricted distance `d_c` is always `d` or `d + 1`, so computing it
//! amounts to deciding whether a geodesic of the Grassmann graph can be kept
//! inside the non-degenerate codes. Every geodesic step from `X` towards `Y`
//! replaces a vector of `X` outside a hyperplane `H ⊇ X ∩ Y` by a vector of
//! `Y ∖ X`, which bounds the search to `[k-m]_q` hyperplanes times the lines
//! of `Y` outside `X`.

use std::borrow::Cow;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::analytics::{count_nondegenerate, to_u128};
use crate::code::{
    contains_full_weight, grassmann_distance, is_nondegenerate, require_code, CodeParams,
    DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{projective_points, Grassmannian, Subspace, Vector};

/// Default bound on the number of vertices the BFS oracle may visit.
pub const DEFAULT_ORACLE_CAP: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    GeodesicFound,
    FirstStepsExhausted,
    OracleBfs,
}

impl Evidence {
    pub fn tag(self) -> &'static str {
        match self {
            Evidence::GeodesicFound => "geodesic-found",
            Evidence::FirstStepsExhausted => "first-steps-exhausted",
            Evidence::OracleBfs => "oracle-bfs",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DistanceResult {
    pub d: usize,
    pub d_c: usize,
    pub path: Option<Vec<Subspace>>,
    pub evidence: Evidence,
}

/// Geometry shared by every question about the ordered pair `(X, Y)`.
#[derive(Clone, Debug)]
pub struct PairGeometry {
    pub x: Subspace,
    pub y: Subspace,
    pub meet: Subspace,
    /// Hyperplanes of `X` containing `X ∩ Y`, in canonical order.
    pub hyperplanes: Vec<Subspace>,
    /// Line representatives of `Y` that are not in `X`, in canonical order.
    pub outside_lines: Vec<Vector>,
}

impl PairGeometry {
    pub fn new(x: &Subspace, y: &Subspace) -> Result<Self> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
        }
        let meet = x.intersection(y)?;
        let hyperplanes = x.hyperplanes_containing(&meet)?.collect();
        let outside_lines = y.lines().filter(|v| !x.contains(v)).collect();
        Ok(PairGeometry { x: x.clone(), y: y.clone(), meet, hyperplanes, outside_lines })
    }

    pub fn m(&self) -> usize {
        self.meet.dim()
    }

    pub fn d(&self) -> usize {
        self.x.dim() - self.meet.dim()
    }

    /// Smallest 1-based coordinate `i` with `H_h ⊆ C_i` and `y_l ∈ C_i`.
    pub fn blocking_coordinate(&self, h: usize, l: usize) -> Option<usize> {
        let hb = self.hyperplanes[h].basis();
        let line = &self.outside_lines[l];
        (0..line.len()).find(|&i| line[i].is_zero() && hb.column_is_zero(i)).map(|i| i + 1)
    }

    pub fn reducing_neighbors(&self) -> ReducingNeighbors<'_> {
        ReducingNeighbors { geom: Cow::Borrowed(self), h: 0, l: 0, seen: HashSet::new() }
    }
}

/// Non-degenerate codes `Z` adjacent to `X` with `d(Z, Y) = d(X, Y) - 1`,
/// each yielded once. Candidates `H + <y>` are visited hyperplane-major.
pub struct ReducingNeighbors<'a> {
    geom: Cow<'a, PairGeometry>,
    h: usize,
    l: usize,
    seen: HashSet<Subspace>,
}

impl ReducingNeighbors<'_> {
    pub fn geometry(&self) -> &PairGeometry {
        &self.geom
    }
}

impl Iterator for ReducingNeighbors<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let lines = self.geom.outside_lines.len();
        while self.h < self.geom.hyperplanes.len() && lines > 0 {
            let (h, l) = (self.h, self.l);
            self.l += 1;
            if self.l == lines {
                self.l = 0;
                self.h += 1;
            }
            let z = self.geom.hyperplanes[h]
                .with_vector(&self.geom.outside_lines[l])
                .expect("same ambient space");
            if is_nondegenerate(&z) && self.seen.insert(z.clone()) {
                return Some(z);
            }
        }
        None
    }
}

fn require_pair(x: &Subspace, y: &Subspace) -> Result<CodeParams> {
    let px = require_code(x, "X")?;
    let py = require_code(y, "Y")?;
    if px != py {
        return Err(Error::params(format!(
            "codes have different parameters: [{}, {}]_{} vs [{}, {}]_{}",
            px.n, px.k, px.q, py.n, py.k, py.q
        )));
    }
    if !(Arc::ptr_eq(x.field(), y.field()) || x.field() == y.field()) {
        return Err(Error::FieldMismatch);
    }
    Ok(px)
}

/// Reducing neighbors of `X` with respect to `Y`.
pub fn reducing_neighbors(x: &Subspace, y: &Subspace) -> Result<ReducingNeighbors<'static>> {
    require_pair(x, y)?;
    if x == y {
        return Err(Error::params("reducing neighbors need distinct codes"));
    }
    let geom = PairGeometry::new(x, y)?;
    Ok(ReducingNeighbors { geom: Cow::Owned(geom), h: 0, l: 0, seen: HashSet::new() })
}

struct GeodesicSearch<'a> {
    target: &'a Subspace,
    dead_ends: HashSet<Subspace>,
}

impl GeodesicSearch<'_> {
    /// A geodesic from `w` to the target through non-degenerate codes, or
    /// `None` if every geodesic leaves them.
    fn search(&mut self, geom: &PairGeometry) -> Result<Option<Vec<Subspace>>> {
        let w = &geom.x;
        match geom.d() {
            0 => return Ok(Some(vec![w.clone()])),
            1 => return Ok(Some(vec![w.clone(), self.target.clone()])),
            _ => {}
        }
        for z in geom.reducing_neighbors() {
            if self.dead_ends.contains(&z) {
                continue;
            }
            let next = PairGeometry::new(&z, self.target)?;
            if let Some(mut rest) = self.search(&next)? {
                rest.insert(0, w.clone());
                return Ok(Some(rest));
            }
            self.dead_ends.insert(z);
        }
        Ok(None)
    }
}

/// Restricted distance from an already computed pair geometry. Assumes both
/// codes were validated.
pub fn restricted_distance_from(geom: &PairGeometry) -> Result<DistanceResult> {
    let d = geom.d();
    let mut search = GeodesicSearch { target: &geom.y, dead_ends: HashSet::new() };
    if let Some(path) = search.search(geom)? {
        return Ok(DistanceResult { d, d_c: d, path: Some(path), evidence: Evidence::GeodesicFound });
    }
    // No geodesic survives, so neither code holds a full-weight vector and the
    // detour through the all-ones vector gives a path of length d + 1.
    let path = detour_path(&geom.x, &geom.y)?;
    if path.len() != d + 2 {
        return Err(Error::Internal(format!(
            "detour path has length {} but no geodesic of length {d} exists",
            path.len() - 1
        )));
    }
    Ok(DistanceResult { d, d_c: d + 1, path: Some(path), evidence: Evidence::FirstStepsExhausted })
}

/// `d(X, Y)` and `d_c(X, Y)` for two non-degenerate codes with equal
/// parameters, with a witnessing path of length `d_c`.
pub fn restricted_distance(x: &Subspace, y: &Subspace) -> Result<DistanceResult> {
    require_pair(x, y)?;
    restricted_distance_from(&PairGeometry::new(x, y)?)
}

fn first_full_weight(x: &Subspace) -> Result<Option<Vector>> {
    if !contains_full_weight(x, DEFAULT_ENUMERATION_CAP)? {
        return Ok(None);
    }
    Ok(x.vectors().find(|v| v.iter().all(|c| !c.is_zero())))
}

/// Walks from `start` to `target`, where `anchor ∈ target` has full weight.
/// After the first step every code on the walk contains `anchor`, which keeps
/// it non-degenerate.
fn anchored_walk(target: &Subspace, start: &Subspace, anchor: &[FieldElement]) -> Result<Vec<Subspace>> {
    let mut path = vec![start.clone()];
    let mut current = start.clone();
    while &current != target {
        let meet = target.intersection(&current)?;
        let hyperplane = current
            .hyperplanes_containing(&meet)?
            .next()
            .ok_or_else(|| Error::Internal("no hyperplane above the intersection".into()))?;
        let next = if !current.contains(anchor) {
            hyperplane.with_vector(anchor)?
        } else {
            let w = target
                .basis()
                .iter_rows()
                .find(|r| !current.contains(r))
                .ok_or_else(|| Error::Internal("target contained in current code".into()))?
                .to_vec();
            hyperplane.with_vector(&w)?
        };
        path.push(next.clone());
        current = next;
    }
    Ok(path)
}

fn detour_path(x: &Subspace, y: &Subspace) -> Result<Vec<Subspace>> {
    let ones = vec![FieldElement::ONE; x.ambient_dim()];
    let meet = x.intersection(y)?;
    let hyperplane = y
        .hyperplanes_containing(&meet)?
        .next()
        .ok_or_else(|| Error::Internal("no hyperplane above the intersection".into()))?;
    let y_prime = hyperplane.with_vector(&ones)?;
    if y_prime.dim() != y.dim() {
        return Err(Error::Internal("all-ones vector already in the hyperplane".into()));
    }
    let mut path = anchored_walk(&y_prime, x, &ones)?;
    path.push(y.clone());
    Ok(path)
}

/// A path from `X` to `Y` inside the non-degenerate codes, of length `d` when
/// `X ∪ Y` contains a full-weight vector and at most `d + 1` otherwise.
pub fn connecting_path(x: &Subspace, y: &Subspace) -> Result<Vec<Subspace>> {
    require_pair(x, y)?;
    if x == y {
        return Ok(vec![x.clone()]);
    }
    if let Some(v) = first_full_weight(x)? {
        let mut path = anchored_walk(x, y, &v)?;
        path.reverse();
        return Ok(path);
    }
    if let Some(v) = first_full_weight(y)? {
        return anchored_walk(y, x, &v);
    }
    detour_path(x, y)
}

/// Checks that `path` runs from `x` to `y` through non-degenerate codes with
/// unit Grassmann steps.
pub fn validate_path(path: &[Subspace], x: &Subspace, y: &Subspace) -> Result<()> {
    let (Some(first), Some(last)) = (path.first(), path.last()) else {
        return Err(Error::Internal("empty path".into()));
    };
    if first != x || last != y {
        return Err(Error::Internal("path endpoints do not match".into()));
    }
    for (i, z) in path.iter().enumerate() {
        if z.dim() != x.dim() || !is_nondegenerate(z) {
            return Err(Error::Internal(format!("path vertex {i} is not a code of the graph")));
        }
    }
    for (i, w) in path.windows(2).enumerate() {
        if grassmann_distance(&w[0], &w[1])? != 1 {
            return Err(Error::Internal(format!("path step {i} is not an edge")));
        }
    }
    Ok(())
}

/// Every neighbor of `v` in the restricted graph: `H + <u>` over hyperplanes
/// `H` of `v` and projective points `u` outside `v`, kept when non-degenerate.
fn restricted_neighbors(v: &Subspace, points: &[Vector]) -> Vec<Subspace> {
    let n = v.ambient_dim();
    let mut out = HashSet::new();
    for h in v.hyperplanes() {
        let zero_cols: Vec<bool> = (0..n).map(|c| h.basis().column_is_zero(c)).collect();
        for u in points {
            // H + <u> lies in C_i iff both H and u vanish at i.
            if (0..n).any(|i| zero_cols[i] && u[i].is_zero()) || v.contains(u) {
                continue;
            }
            out.insert(h.with_vector(u).expect("same ambient space"));
        }
    }
    let mut out: Vec<Subspace> = out.into_iter().collect();
    out.sort();
    out
}

fn check_oracle_cap(field: &FieldSpec, n: usize, k: usize, cap: u128) -> Result<()> {
    let count = count_nondegenerate(n as u64, k as u64, field.q() as u64)?;
    let size = to_u128(&count).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::CapExceeded { what: "restricted graph size", size, cap });
    }
    Ok(())
}

/// One side of a bidirectional search: parents of every vertex reached so
/// far, plus the vertices of the last completed level.
struct Frontier {
    parent: HashMap<Subspace, Option<Subspace>>,
    level: Vec<Subspace>,
    depth: usize,
}

impl Frontier {
    fn new(root: &Subspace) -> Self {
        Frontier { parent: HashMap::from([(root.clone(), None)]), level: vec![root.clone()], depth: 0 }
    }

    /// Adds the next level and returns it.
    fn expand(&mut self, points: &[Vector]) -> Vec<Subspace> {
        let mut next = Vec::new();
        for v in &self.level {
            for z in restricted_neighbors(v, points) {
                if !self.parent.contains_key(&z) {
                    self.parent.insert(z.clone(), Some(v.clone()));
                    next.push(z);
                }
            }
        }
        self.level = next.clone();
        self.depth += 1;
        next
    }

    /// Path from the root to `v`, root first.
    fn path_to(&self, v: &Subspace) -> Vec<Subspace> {
        let mut path = vec![v.clone()];
        let mut cur = v;
        while let Some(Some(p)) = self.parent.get(cur) {
            path.push(p.clone());
            cur = p;
        }
        path.reverse();
        path
    }
}

/// Exact restricted distance by breadth-first search in the graph of
/// non-degenerate codes, with a shortest path. Whole levels are grown
/// alternately around `x` and `y`, always on the side with the smaller
/// frontier, until the two balls meet.
pub fn oracle_distance(x: &Subspace, y: &Subspace, cap: u128) -> Result<DistanceResult> {
    require_pair(x, y)?;
    let (n, k) = (x.ambient_dim(), x.dim());
    check_oracle_cap(x.field(), n, k, cap)?;
    let d = grassmann_distance(x, y)?;
    if x == y {
        return Ok(DistanceResult { d, d_c: 0, path: Some(vec![x.clone()]), evidence: Evidence::OracleBfs });
    }
    let points: Vec<Vector> = projective_points(x.field().q(), n).collect();
    let mut from_x = Frontier::new(x);
    let mut from_y = Frontier::new(y);
    loop {
        let grow_x = from_x.level.len() <= from_y.level.len();
        let (grown, other) = if grow_x { (&mut from_x, &from_y) } else { (&mut from_y, &from_x) };
        let level = grown.expand(&points);
        if level.is_empty() {
            return Err(Error::Internal("restricted graph is disconnected".into()));
        }
        // The balls were disjoint before this level, so every meeting vertex
        // sits at the other side's full depth and closes a shortest path.
        if let Some(meet) = level.iter().find(|z| other.parent.contains_key(*z)) {
            let mut path = from_x.path_to(meet);
            let mut back = from_y.path_to(meet);
            back.pop();
            path.extend(back.into_iter().rev());
            let d_c = from_x.depth + from_y.depth;
            if path.len() != d_c + 1 {
                return Err(Error::Internal("bidirectional search produced an inconsistent path".into()));
            }
            return Ok(DistanceResult { d, d_c, path: Some(path), evidence: Evidence::OracleBfs });
        }
    }
}

/// Restricted distance computed only by breadth-first search.
pub fn bfs_oracle(x: &Subspace, y: &Subspace, cap: u128) -> Result<usize> {
    Ok(oracle_distance(x, y, cap)?.d_c)
}

/// The whole restricted graph `Γ(n,k)_q` with integer vertex ids, for
/// all-pairs checks.
pub struct RestrictedGraph {
    vertices: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    adjacency: Vec<Vec<u32>>,
}

impl RestrictedGraph {
    pub fn build(field: &Arc<FieldSpec>, n: usize, k: usize, cap: u128) -> Result<Self> {
        check_oracle_cap(field, n, k, cap)?;
        let vertices: Vec<Subspace> = Grassmannian::new(field, n, k).filter(is_nondegenerate).collect();
        let index: HashMap<Subspace, usize> =
            vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let points: Vec<Vector> = projective_points(field.q(), n).collect();
        let adjacency = vertices
            .iter()
            .map(|v| restricted_neighbors(v, &points).iter().map(|z| index[z] as u32).collect())
            .collect();
        Ok(RestrictedGraph { vertices, index, adjacency })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                let w = w as usize;
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::has_weight_n_vector;

    fn gf(q: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::with_order(q).unwrap())
    }

    fn code(f: &Arc<FieldSpec>, rows: &[&[u32]]) -> Subspace {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        let g = crate::linalg::Matrix::from_codes(f, rows[0].len(), &rows).unwrap();
        Subspace::from_full_rank(f, &g).unwrap()
    }

    fn nine_coordinate_pair(f: &Arc<FieldSpec>) -> (Subspace, Subspace) {
        (
            code(f, &[&[0, 0, 0, 1, 1, 1, 1, 1, 1], &[1, 1, 1, 0, 0, 0, 1, 1, 1]]),
            code(f, &[&[0, 1, 1, 0, 1, 1, 0, 1, 1], &[1, 0, 1, 1, 0, 1, 1, 0, 1]]),
        )
    }

    #[test]
    fn nine_coordinate_distances() {
        let f = gf(2);
        let (x, y) = nine_coordinate_pair(&f);
        let mut it = reducing_neighbors(&x, &y).unwrap();
        let geom = it.geometry();
        assert_eq!(geom.hyperplanes.len() * geom.outside_lines.len(), 9);
        assert!(it.next().is_none());

        let r = restricted_distance(&x, &y).unwrap();
        assert_eq!((r.d, r.d_c), (2, 3));
        assert_eq!(r.evidence, Evidence::FirstStepsExhausted);
        let path = r.path.unwrap();
        assert_eq!(path.len(), 4);
        validate_path(&path, &x, &y).unwrap();

        let p = connecting_path(&x, &y).unwrap();
        assert_eq!(p.len(), 4);
        validate_path(&p, &x, &y).unwrap();
    }

    #[test]
    fn identical_and_adjacent() {
        let f = gf(2);
        let (x, _) = nine_coordinate_pair(&f);
        let r = restricted_distance(&x, &x).unwrap();
        assert_eq!((r.d, r.d_c), (0, 0));
        assert_eq!(r.path.unwrap(), vec![x.clone()]);

        let z = code(&f, &[&[0, 0, 0, 1, 1, 1, 1, 1, 1], &[1, 1, 1, 1, 1, 1, 1, 1, 1]]);
        assert_eq!(grassmann_distance(&x, &z).unwrap(), 1);
        let neighbors: Vec<_> = reducing_neighbors(&x, &z).unwrap().collect();
        assert_eq!(neighbors, vec![z.clone()]);
        assert_eq!(connecting_path(&x, &z).unwrap().len(), 2);
        assert_eq!(restricted_distance(&x, &z).unwrap().d_c, 1);
    }

    #[test]
    fn shared_all_ones_vector_walks_a_geodesic() {
        let f = gf(3);
        let x = code(&f, &[&[1, 1, 1, 1, 1, 1, 1], &[1, 0, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0, 0]]);
        let y = code(&f, &[&[1, 1, 1, 1, 1, 1, 1], &[0, 0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 0, 1]]);
        assert_eq!(grassmann_distance(&x, &y).unwrap(), 2);
        assert!(has_weight_n_vector(&x, &y, DEFAULT_ENUMERATION_CAP).unwrap());
        let p = connecting_path(&x, &y).unwrap();
        assert_eq!(p.len(), 3);
        validate_path(&p, &x, &y).unwrap();
        let ones = vec![FieldElement::ONE; 7];
        assert!(p.iter().all(|z| z.contains(&ones)));
    }

    #[test]
    fn nine_coordinate_oracle() {
        let f = gf(2);
        let (x, y) = nine_coordinate_pair(&f);
        let r = oracle_distance(&x, &y, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(r.d_c, 3);
        validate_path(r.path.as_ref().unwrap(), &x, &y).unwrap();
        assert!(matches!(bfs_oracle(&x, &y, 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn below_threshold_pairs_have_reducing_neighbors() {
        // n = 8 < (2+1)^2: every non-adjacent pair admits a first step.
        let f = gf(2);
        let codes = crate::code::nondegenerate_codes(&f, 8, 2);
        let x = &codes[0];
        let mut checked = 0;
        for y in codes.iter().step_by(37) {
            if grassmann_distance(x, y).unwrap() == 2 {
                assert!(reducing_neighbors(x, y).unwrap().next().is_some());
                checked += 1;
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn rejects_degenerate_and_mismatched() {
        let f = gf(2);
        let (x, _) = nine_coordinate_pair(&f);
        let deg = code(&f, &[&[1, 0, 0, 0, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0, 0, 0, 0]]);
        assert!(matches!(restricted_distance(&x, &deg), Err(Error::Degenerate(_))));
        let other = code(&f, &[&[1, 1, 1, 1, 1, 1, 1, 1], &[1, 0, 1, 0, 1, 0, 1, 0]]);
        assert!(restricted_distance(&x, &other).is_err());
        assert!(reducing_neighbors(&x, &x).is_err());
    }

    #[test]
    fn small_graph_matches_pairwise_search() {
        let f = gf(2);
        let g = RestrictedGraph::build(&f, 5, 2, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(g.len().to_string(), count_nondegenerate(5, 2, 2).unwrap().to_string());
        for i in 0..g.len() {
            let dist = g.distances_from(i);
            for j in i..g.len() {
                let r = restricted_distance(&g.vertices()[i], &g.vertices()[j]).unwrap();
                assert_eq!(r.d_c, dist[j]);
            }
        }
    }
}
