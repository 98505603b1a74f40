//! Combinatorics of the canonical Z^n-quiver.
//!
//! Vertices are normalized twist tuples: length n+1, entries >= 0, minimum
//! entry 0. There are n+1 arrow types; type `i` adds one to twist `i` and
//! renormalizes. All admissible paths between two fixed vertices share one
//! type vector, which is what [`delta`] computes, so everything here reduces
//! to integer tuple arithmetic.

use std::collections::BTreeSet;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{rat, RMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("twist tuple needs at least 2 entries, got {0}")]
    TupleTooShort(usize),
    #[error("tuple length {got} does not match ambient length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("twist tuple {0:?} is not normalized")]
    NotNormalized(Vec<i64>),
    #[error("hull of an empty vertex set is undefined")]
    EmptyHull,
    #[error("vertex set is not a polygon")]
    NotAPolygon,
    #[error("start vertex is not a member of the polygon")]
    StartNotInPolygon,
    #[error("invalid multidegree frame: {0}")]
    BadFrame(String),
    #[error("multidegree {0:?} is not in the lattice coset of the frame")]
    NotInLattice(Vec<i64>),
}

/// One of the n+1 arrow types of the quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArrowType(pub usize);

/// Vertex of the canonical quiver: a normalized twist tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    twists: Vec<i64>,
}

impl Vertex {
    /// Subtract the minimum entry from every coordinate.
    pub fn normalize(raw: &[i64]) -> Result<Vertex, QuiverError> {
        if raw.len() < 2 {
            return Err(QuiverError::TupleTooShort(raw.len()));
        }
        let min = *raw.iter().min().unwrap();
        Ok(Vertex {
            twists: raw.iter().map(|&x| x - min).collect(),
        })
    }

    /// Wrap an already-normalized tuple.
    pub fn from_twists(twists: Vec<i64>) -> Result<Vertex, QuiverError> {
        if twists.len() < 2 {
            return Err(QuiverError::TupleTooShort(twists.len()));
        }
        if twists.iter().any(|&x| x < 0) || !twists.contains(&0) {
            return Err(QuiverError::NotNormalized(twists));
        }
        Ok(Vertex { twists })
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// Number of twist coordinates, n+1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.twists.len()
    }

    /// The quiver parameter n.
    pub fn n(&self) -> usize {
        self.twists.len() - 1
    }

    /// End vertex of the unique arrow of type `t` leaving this vertex.
    pub fn arrow_target(&self, t: ArrowType) -> Vertex {
        assert!(t.0 < self.twists.len(), "arrow type out of range");
        let mut raw = self.twists.clone();
        raw[t.0] += 1;
        Vertex::normalize(&raw).expect("length preserved")
    }

    /// Source of the unique arrow of type `t` arriving at this vertex.
    pub fn arrow_source(&self, t: ArrowType) -> Vertex {
        assert!(t.0 < self.twists.len(), "arrow type out of range");
        let mut raw = self.twists.clone();
        raw[t.0] -= 1;
        Vertex::normalize(&raw).expect("length preserved")
    }
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.twists.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.twists.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(d)?;
        Vertex::from_twists(raw).map_err(D::Error::custom)
    }
}

/// Arrow counts per type of a path; equal for all paths of one type class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathTypeVector {
    counts: Vec<i64>,
}

impl PathTypeVector {
    pub fn new(counts: Vec<i64>) -> Self {
        assert!(counts.iter().all(|&c| c >= 0), "negative arrow count");
        PathTypeVector { counts }
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Omits at least one type.
    pub fn is_admissible(&self) -> bool {
        self.counts.contains(&0)
    }

    /// Uses each type at most once.
    pub fn is_simple(&self) -> bool {
        self.counts.iter().all(|&c| c <= 1)
    }

    /// Uses each type exactly once.
    pub fn is_minimal_circuit(&self) -> bool {
        self.counts.iter().all(|&c| c == 1)
    }

    /// Path length: total number of arrows.
    pub fn total(&self) -> i64 {
        self.counts.iter().sum()
    }

    /// Essential type: the set of types actually used.
    pub fn support(&self) -> TypeSet {
        let mut s = TypeSet::empty();
        for (i, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                s = s.with(ArrowType(i));
            }
        }
        s
    }
}

/// Set of arrow types, stored as a bitmask over indices `0..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeSet {
    bits: u32,
}

impl TypeSet {
    pub fn empty() -> Self {
        TypeSet { bits: 0 }
    }

    pub fn full(n_types: usize) -> Self {
        assert!(n_types <= 32);
        TypeSet {
            bits: if n_types == 32 {
                u32::MAX
            } else {
                (1u32 << n_types) - 1
            },
        }
    }

    pub fn from_bits(bits: u32) -> Self {
        TypeSet { bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn singleton(t: ArrowType) -> Self {
        TypeSet { bits: 1 << t.0 }
    }

    pub fn from_types(types: &[ArrowType]) -> Self {
        types
            .iter()
            .fold(TypeSet::empty(), |acc, &t| acc.with(t))
    }

    pub fn with(self, t: ArrowType) -> Self {
        TypeSet {
            bits: self.bits | (1 << t.0),
        }
    }

    pub fn contains(&self, t: ArrowType) -> bool {
        self.bits & (1 << t.0) != 0
    }

    pub fn union(&self, other: TypeSet) -> TypeSet {
        TypeSet {
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: TypeSet) -> TypeSet {
        TypeSet {
            bits: self.bits & other.bits,
        }
    }

    pub fn complement(&self, n_types: usize) -> TypeSet {
        TypeSet {
            bits: Self::full(n_types).bits & !self.bits,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset_of(&self, other: TypeSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint_from(&self, other: TypeSet) -> bool {
        self.bits & other.bits == 0
    }

    pub fn is_proper(&self, n_types: usize) -> bool {
        self.bits != Self::full(n_types).bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = ArrowType> + '_ {
        (0..32)
            .filter(move |i| self.bits & (1 << i) != 0)
            .map(ArrowType)
    }
}

impl std::fmt::Display for TypeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.iter().map(|t| t.0.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for TypeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<usize> = self.iter().map(|t| t.0).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TypeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&i| i >= 32) {
            return Err(D::Error::custom("arrow type index out of range"));
        }
        Ok(v.into_iter()
            .fold(TypeSet::empty(), |acc, i| acc.with(ArrowType(i))))
    }
}

/// Type vector of the admissible paths from `u` to `w`: the normalized
/// componentwise difference. `delta(u, u)` is zero.
pub fn delta(u: &Vertex, w: &Vertex) -> PathTypeVector {
    assert_eq!(u.len(), w.len(), "ambient mismatch");
    let diff: Vec<i64> = u
        .twists()
        .iter()
        .zip(w.twists())
        .map(|(a, b)| b - a)
        .collect();
    let min = *diff.iter().min().unwrap();
    PathTypeVector::new(diff.into_iter().map(|x| x - min).collect())
}

/// Neighbors: connected by a nontrivial admissible simple path.
pub fn is_neighbor(u: &Vertex, w: &Vertex) -> bool {
    let d = delta(u, w);
    !d.is_zero() && d.is_simple()
}

/// End vertex of the simple paths leaving `v` with essential type `types`.
pub fn move_by(v: &Vertex, types: TypeSet) -> Vertex {
    let mut raw = v.twists().to_vec();
    for t in types.iter() {
        assert!(t.0 < raw.len(), "arrow type out of range");
        raw[t.0] += 1;
    }
    Vertex::normalize(&raw).expect("length preserved")
}

/// Is `w` in the cone of `v` with essential types inside `types`? The full
/// type set gives the whole quiver.
pub fn cone_contains(v: &Vertex, types: TypeSet, w: &Vertex) -> bool {
    if !types.is_proper(v.len()) {
        return true;
    }
    delta(v, w).support().is_subset_of(types)
}

/// Hull membership predicate: for each type some member of `set` reaches `v`
/// without that type.
fn in_hull(set: &BTreeSet<Vertex>, v: &Vertex) -> bool {
    let n_types = v.len();
    (0..n_types).all(|a| set.iter().any(|z| delta(z, v).counts()[a] == 0))
}

/// Hull of a finite nonempty vertex set: all vertices reachable from the set,
/// for every type, by some path omitting that type. Enumerates the bounding
/// box of the projection `x_i = twist_i - twist_0` and filters with the
/// membership predicate; the cone-intersection bound makes the box sound.
pub fn hull(set: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>, QuiverError> {
    let first = set.iter().next().ok_or(QuiverError::EmptyHull)?;
    let len = first.len();
    for v in set {
        if v.len() != len {
            return Err(QuiverError::LengthMismatch {
                expected: len,
                got: v.len(),
            });
        }
    }
    let n = len - 1;
    let project = |v: &Vertex| -> Vec<i64> {
        (1..len).map(|i| v.twists()[i] - v.twists()[0]).collect()
    };
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for v in set {
        for (i, x) in project(v).into_iter().enumerate() {
            lo[i] = lo[i].min(x);
            hi[i] = hi[i].max(x);
        }
    }
    let mut out = BTreeSet::new();
    let mut x = lo.clone();
    loop {
        let mut raw = vec![0i64; len];
        raw[1..].copy_from_slice(&x);
        let v = Vertex::normalize(&raw).expect("length preserved");
        if in_hull(set, &v) {
            out.insert(v);
        }
        // Advance the box counter.
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            x[i] += 1;
            if x[i] <= hi[i] {
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

/// Pairwise neighboring, finite, nonempty.
pub fn is_polygon(vertices: &BTreeSet<Vertex>) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let len = vertices.iter().next().unwrap().len();
    if vertices.iter().any(|v| v.len() != len) {
        return false;
    }
    let vs: Vec<&Vertex> = vertices.iter().collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if !is_neighbor(vs[i], vs[j]) {
                return false;
            }
        }
    }
    true
}

/// Finite set of pairwise neighboring vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polygon {
    vertices: BTreeSet<Vertex>,
}

impl Polygon {
    pub fn new(vertices: BTreeSet<Vertex>) -> Result<Polygon, QuiverError> {
        if !is_polygon(&vertices) {
            return Err(QuiverError::NotAPolygon);
        }
        let n = vertices.iter().next().unwrap().n();
        assert!(vertices.len() <= n + 1, "polygon larger than n+1 vertices");
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }
}

/// The unique cyclic orientation of a polygon starting at `start`: the vertex
/// ordering together with the ordered partition of the type set carrying each
/// vertex to the next. Built greedily, stepping to the closest remaining
/// vertex; ties cannot occur, so a tie is asserted against.
pub fn orient_polygon(
    polygon: &Polygon,
    start: &Vertex,
) -> Result<(Vec<Vertex>, Vec<TypeSet>), QuiverError> {
    if !polygon.vertices().contains(start) {
        return Err(QuiverError::StartNotInPolygon);
    }
    let n_types = start.len();
    let m = polygon.len();
    if m == 1 {
        return Ok((vec![start.clone()], vec![TypeSet::full(n_types)]));
    }
    let mut ordering = vec![start.clone()];
    let mut remaining: BTreeSet<Vertex> = polygon.vertices().clone();
    remaining.remove(start);
    while !remaining.is_empty() {
        let cur = ordering.last().unwrap();
        let dists: Vec<(i64, Vertex)> = remaining
            .iter()
            .map(|w| (delta(cur, w).total(), w.clone()))
            .collect();
        let best = dists.iter().map(|(d, _)| *d).min().unwrap();
        let ties = dists.iter().filter(|(d, _)| *d == best).count();
        assert_eq!(ties, 1, "distances to distinct polygon vertices differ");
        let next = dists.into_iter().find(|(d, _)| *d == best).unwrap().1;
        remaining.remove(&next);
        ordering.push(next);
    }
    let mut blocks = Vec::with_capacity(m);
    let mut seen = TypeSet::empty();
    for i in 0..m {
        let d = delta(&ordering[i], &ordering[(i + 1) % m]);
        assert!(d.is_simple() && !d.is_zero(), "consecutive polygon vertices");
        let block = d.support();
        assert!(block.is_disjoint_from(seen), "partition blocks overlap");
        seen = seen.union(block);
        blocks.push(block);
    }
    assert_eq!(seen, TypeSet::full(n_types), "blocks must cover all types");
    Ok((ordering, blocks))
}

/// Concrete arrow sequence of type `t` leaving `v`, visiting types in
/// ascending index order, each repeated per multiplicity. Returns
/// `(source, type)` pairs.
pub fn canonical_path(v: &Vertex, t: &PathTypeVector) -> Vec<(Vertex, ArrowType)> {
    assert_eq!(v.len(), t.counts().len(), "ambient mismatch");
    let mut out = Vec::new();
    let mut cur = v.clone();
    for (i, &c) in t.counts().iter().enumerate() {
        for _ in 0..c {
            let next = cur.arrow_target(ArrowType(i));
            out.push((cur, ArrowType(i)));
            cur = next;
        }
    }
    out
}

/// All vertices reachable from `center` by an admissible path of length at
/// most `radius`.
pub fn ball(center: &Vertex, radius: usize) -> BTreeSet<Vertex> {
    let len = center.len();
    let mut out = BTreeSet::new();
    let mut counts = vec![0i64; len];
    fn rec(
        center: &Vertex,
        counts: &mut Vec<i64>,
        idx: usize,
        budget: i64,
        out: &mut BTreeSet<Vertex>,
    ) {
        if idx == counts.len() {
            let t = PathTypeVector::new(counts.clone());
            if t.is_admissible() {
                let raw: Vec<i64> = center
                    .twists()
                    .iter()
                    .zip(counts.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                out.insert(Vertex::normalize(&raw).expect("length preserved"));
            }
            return;
        }
        for c in 0..=budget {
            counts[idx] = c;
            rec(center, counts, idx + 1, budget - c, out);
        }
        counts[idx] = 0;
    }
    rec(center, &mut counts, 0, radius as i64, &mut out);
    out
}

/// Does the window contain some arrow ordering realizing the admissible path
/// from `from` to `to`? Pure combinatorics: only vertex membership matters.
pub fn window_admits_path(window: &BTreeSet<Vertex>, from: &Vertex, to: &Vertex) -> bool {
    if !window.contains(from) || !window.contains(to) {
        return false;
    }
    let t = delta(from, to);
    let mut remaining = t.counts().to_vec();
    let mut dead: std::collections::HashSet<(Vertex, Vec<i64>)> = Default::default();
    fn dfs(
        window: &BTreeSet<Vertex>,
        cur: &Vertex,
        remaining: &mut Vec<i64>,
        dead: &mut std::collections::HashSet<(Vertex, Vec<i64>)>,
    ) -> bool {
        if remaining.iter().all(|&c| c == 0) {
            return true;
        }
        let key = (cur.clone(), remaining.clone());
        if dead.contains(&key) {
            return false;
        }
        for i in 0..remaining.len() {
            if remaining[i] == 0 {
                continue;
            }
            let next = cur.arrow_target(ArrowType(i));
            if window.contains(&next) {
                remaining[i] -= 1;
                if dfs(window, &next, remaining, dead) {
                    return true;
                }
                remaining[i] += 1;
            }
        }
        dead.insert(key);
        false
    }
    dfs(window, from, &mut remaining, &mut dead)
}

/// Hull of `seeds` together with the forward ball of the given radius around
/// every hull vertex. This is the window the net checkers want for full
/// verdicts when the radius is n+1.
pub fn enlarged_hull(
    seeds: &BTreeSet<Vertex>,
    radius: usize,
) -> Result<BTreeSet<Vertex>, QuiverError> {
    let h = hull(seeds)?;
    let mut out = h.clone();
    for v in &h {
        out.extend(ball(v, radius));
    }
    Ok(out)
}

/// Affine lattice coordinates translating multidegrees into twists: a base
/// tuple and n+1 generators summing to zero, any proper subset of which is
/// linearly independent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFrame")]
pub struct MultidegreeFrame {
    base: Vec<i64>,
    generators: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFrame {
    base: Vec<i64>,
    generators: Vec<Vec<i64>>,
}

impl TryFrom<RawFrame> for MultidegreeFrame {
    type Error = QuiverError;
    fn try_from(raw: RawFrame) -> Result<Self, QuiverError> {
        MultidegreeFrame::new(raw.base, raw.generators)
    }
}

impl MultidegreeFrame {
    pub fn new(base: Vec<i64>, generators: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        let len = base.len();
        if len < 2 {
            return Err(QuiverError::BadFrame("base tuple too short".into()));
        }
        if generators.len() != len {
            return Err(QuiverError::BadFrame(format!(
                "need {len} generators, got {}",
                generators.len()
            )));
        }
        for g in &generators {
            if g.len() != len {
                return Err(QuiverError::BadFrame("generator length mismatch".into()));
            }
            if g.iter().sum::<i64>() != 0 {
                return Err(QuiverError::BadFrame(format!(
                    "generator {g:?} does not sum to zero"
                )));
            }
        }
        for c in 0..len {
            if generators.iter().map(|g| g[c]).sum::<i64>() != 0 {
                return Err(QuiverError::BadFrame(
                    "generators do not sum to zero componentwise".into(),
                ));
            }
        }
        // Every proper subset independent: every n-subset must have rank n.
        for omit in 0..len {
            let cols: Vec<&Vec<i64>> = generators
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != omit)
                .map(|(_, g)| g)
                .collect();
            let m = RMatrix::from_fn(len, len - 1, |r, c| rat(cols[c][r]));
            if m.rank() != len - 1 {
                return Err(QuiverError::BadFrame(format!(
                    "generators excluding index {omit} are linearly dependent"
                )));
            }
        }
        Ok(MultidegreeFrame { base, generators })
    }

    pub fn base(&self) -> &[i64] {
        &self.base
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Quiver parameter n.
    pub fn n(&self) -> usize {
        self.base.len() - 1
    }

    /// Solve `multidegree = base + sum l_i * generator_i` over the integers
    /// and return the normalized twist tuple.
    pub fn to_twists(&self, multidegree: &[i64]) -> Result<Vertex, QuiverError> {
        let len = self.base.len();
        if multidegree.len() != len {
            return Err(QuiverError::LengthMismatch {
                expected: len,
                got: multidegree.len(),
            });
        }
        // The solution set is a line l + c*(1,..,1); fix the last coordinate
        // to zero and solve for the rest, which are independent columns.
        let a = RMatrix::from_fn(len, len - 1, |r, c| rat(self.generators[c][r]));
        let rhs = RMatrix::from_fn(len, 1, |r, _| rat(multidegree[r] - self.base[r]));
        let x = a
            .solve(&rhs)
            .ok_or_else(|| QuiverError::NotInLattice(multidegree.to_vec()))?;
        if !a.mul(&x).eq(&rhs) {
            return Err(QuiverError::NotInLattice(multidegree.to_vec()));
        }
        let mut raw = vec![0i64; len];
        for (i, slot) in raw.iter_mut().take(len - 1).enumerate() {
            let v = x.get(i, 0);
            if !num::Integer::is_multiple_of(v.numer(), v.denom()) {
                return Err(QuiverError::NotInLattice(multidegree.to_vec()));
            }
            let q = v.numer() / v.denom();
            *slot =
                i64::try_from(q).map_err(|_| QuiverError::NotInLattice(multidegree.to_vec()))?;
        }
        Vertex::normalize(&raw)
    }

    /// Inverse view: `base + sum twist_i * generator_i`.
    pub fn to_multidegree(&self, v: &Vertex) -> Result<Vec<i64>, QuiverError> {
        let len = self.base.len();
        if v.len() != len {
            return Err(QuiverError::LengthMismatch {
                expected: len,
                got: v.len(),
            });
        }
        let mut out = self.base.clone();
        for (i, &l) in v.twists().iter().enumerate() {
            for (c, slot) in out.iter_mut().enumerate() {
                *slot += l * self.generators[i][c];
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(t: &[i64]) -> Vertex {
        Vertex::normalize(t).unwrap()
    }

    fn ts(types: &[usize]) -> TypeSet {
        types
            .iter()
            .fold(TypeSet::empty(), |acc, &i| acc.with(ArrowType(i)))
    }

    fn example_frame() -> MultidegreeFrame {
        MultidegreeFrame::new(
            vec![2, 2, 2],
            vec![vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]],
        )
        .unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(v(&[0, 0, 0]).twists(), &[0, 0, 0]);
        assert_eq!(v(&[2, 1, 3]).twists(), &[1, 0, 2]);
        assert_eq!(v(&[1, -1, 0]).twists(), &[2, 0, 1]);
        assert!(Vertex::normalize(&[3]).is_err());
    }

    #[test]
    fn arrow_target_examples() {
        assert_eq!(v(&[0, 0, 0]).arrow_target(ArrowType(0)), v(&[1, 0, 0]));
        assert_eq!(v(&[1, 0, 1]).arrow_target(ArrowType(1)), v(&[0, 0, 0]));
        assert_eq!(v(&[1, 0, 0]).arrow_target(ArrowType(2)), v(&[1, 0, 1]));
    }

    #[test]
    fn delta_examples() {
        assert!(delta(&v(&[0, 0, 0]), &v(&[0, 0, 0])).is_zero());
        assert_eq!(delta(&v(&[0, 0, 0]), &v(&[1, 0, 1])).counts(), &[1, 0, 1]);
        assert_eq!(delta(&v(&[1, 0, 1]), &v(&[1, 0, 0])).counts(), &[1, 1, 0]);
    }

    #[test]
    fn delta_brute_force_agrees() {
        // Independent oracle: search small type vectors for the admissible one
        // reaching the target.
        let pairs = [
            (v(&[1, 0, 1]), v(&[1, 0, 0])),
            (v(&[0, 0, 0]), v(&[2, 0, 1])),
            (v(&[0, 1, 2]), v(&[3, 0, 0])),
        ];
        for (u, w) in pairs {
            let mut found = None;
            'search: for a in 0..6i64 {
                for b in 0..6i64 {
                    for c in 0..6i64 {
                        if a.min(b).min(c) != 0 {
                            continue;
                        }
                        let raw = [u.twists()[0] + a, u.twists()[1] + b, u.twists()[2] + c];
                        if Vertex::normalize(&raw).unwrap() == w {
                            found = Some(vec![a, b, c]);
                            break 'search;
                        }
                    }
                }
            }
            assert_eq!(delta(&u, &w).counts(), found.unwrap().as_slice());
        }
    }

    #[test]
    fn neighbor_examples() {
        assert!(is_neighbor(&v(&[0, 0, 0]), &v(&[1, 0, 0])));
        assert!(!is_neighbor(&v(&[0, 0, 0]), &v(&[2, 0, 0])));
        assert!(!is_neighbor(&v(&[0, 0, 0]), &v(&[0, 0, 0])));
    }

    #[test]
    fn move_by_examples() {
        assert_eq!(move_by(&v(&[0, 0, 0]), ts(&[0, 2])), v(&[1, 0, 1]));
        assert_eq!(move_by(&v(&[0, 0, 0]), TypeSet::full(3)), v(&[0, 0, 0]));
        assert_eq!(move_by(&v(&[1, 0, 1]), ts(&[1])), v(&[0, 0, 0]));
    }

    #[test]
    fn cone_examples() {
        assert!(cone_contains(&v(&[0, 0, 0]), ts(&[0]), &v(&[3, 0, 0])));
        assert!(!cone_contains(&v(&[0, 0, 0]), ts(&[0]), &v(&[0, 1, 0])));
        assert!(cone_contains(&v(&[0, 0, 0]), TypeSet::full(3), &v(&[5, 1, 0])));
    }

    #[test]
    fn hull_examples() {
        let single: BTreeSet<Vertex> = [v(&[0, 0, 0])].into();
        assert_eq!(hull(&single).unwrap(), single);

        let pair: BTreeSet<Vertex> = [v(&[0, 0]), v(&[3, 0])].into();
        let expect: BTreeSet<Vertex> =
            [v(&[0, 0]), v(&[1, 0]), v(&[2, 0]), v(&[3, 0])].into();
        assert_eq!(hull(&pair).unwrap(), expect);

        assert!(hull(&BTreeSet::new()).is_err());
    }

    #[test]
    fn hull_laws() {
        let sets: Vec<BTreeSet<Vertex>> = vec![
            [v(&[0, 0, 0]), v(&[1, 0, 1])].into(),
            [v(&[0, 0, 0]), v(&[2, 0, 0]), v(&[0, 1, 0])].into(),
            [v(&[1, 0, 0]), v(&[0, 2, 1])].into(),
        ];
        for h in sets {
            let p = hull(&h).unwrap();
            assert!(p.is_superset(&h));
            assert_eq!(hull(&p).unwrap(), p);
        }
    }

    #[test]
    fn polygons_equal_their_hull() {
        let tri: BTreeSet<Vertex> = [v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])].into();
        assert!(is_polygon(&tri));
        assert_eq!(hull(&tri).unwrap(), tri);
    }

    #[test]
    fn is_polygon_examples() {
        assert!(is_polygon(&[v(&[0, 0, 0])].into()));
        assert!(is_polygon(
            &[v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])].into()
        ));
        assert!(!is_polygon(&[v(&[0, 0, 0]), v(&[2, 0, 0])].into()));
        assert!(!is_polygon(&BTreeSet::new()));
    }

    #[test]
    fn orient_polygon_examples() {
        let one = Polygon::new([v(&[0, 0, 0])].into()).unwrap();
        let (ord, blocks) = orient_polygon(&one, &v(&[0, 0, 0])).unwrap();
        assert_eq!(ord, vec![v(&[0, 0, 0])]);
        assert_eq!(blocks, vec![TypeSet::full(3)]);

        let tri = Polygon::new([v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])].into()).unwrap();
        let (ord, blocks) = orient_polygon(&tri, &v(&[0, 0, 0])).unwrap();
        assert_eq!(ord, vec![v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])]);
        assert_eq!(blocks, vec![ts(&[0]), ts(&[1]), ts(&[2])]);

        let (ord2, blocks2) = orient_polygon(&tri, &v(&[1, 0, 0])).unwrap();
        assert_eq!(ord2, vec![v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[0, 0, 0])]);
        assert_eq!(blocks2, vec![ts(&[1]), ts(&[2]), ts(&[0])]);

        assert_eq!(
            orient_polygon(&tri, &v(&[0, 1, 0])),
            Err(QuiverError::StartNotInPolygon)
        );
    }

    #[test]
    fn canonical_path_examples() {
        let p = canonical_path(&v(&[0, 0, 0]), &PathTypeVector::new(vec![1, 0, 1]));
        assert_eq!(
            p,
            vec![(v(&[0, 0, 0]), ArrowType(0)), (v(&[1, 0, 0]), ArrowType(2))]
        );
        assert!(canonical_path(&v(&[0, 0, 0]), &PathTypeVector::new(vec![0, 0, 0])).is_empty());
        let p = canonical_path(&v(&[1, 0, 1]), &PathTypeVector::new(vec![1, 1, 0]));
        assert_eq!(
            p,
            vec![(v(&[1, 0, 1]), ArrowType(0)), (v(&[2, 0, 1]), ArrowType(1))]
        );
    }

    #[test]
    fn to_twists_examples() {
        let f = example_frame();
        assert_eq!(f.to_twists(&[2, 2, 2]).unwrap(), v(&[0, 0, 0]));
        assert_eq!(f.to_twists(&[1, 4, 1]).unwrap(), v(&[1, 0, 1]));
        assert_eq!(f.to_twists(&[6, 0, 0]).unwrap(), v(&[0, 2, 2]));
        assert_eq!(f.to_twists(&[-1, 5, 2]).unwrap(), v(&[2, 0, 1]));
        // Not in the coset: total degree differs.
        assert!(matches!(
            f.to_twists(&[1, 1, 1]),
            Err(QuiverError::NotInLattice(_))
        ));
    }

    #[test]
    fn twist_multidegree_round_trip() {
        let f = example_frame();
        for raw in [[0, 0, 0], [1, 0, 1], [0, 2, 2], [3, 0, 1]] {
            let vert = v(&raw);
            let md = f.to_multidegree(&vert).unwrap();
            assert_eq!(f.to_twists(&md).unwrap(), vert);
        }
        // Distinct vertices have distinct multidegrees.
        let a = f.to_multidegree(&v(&[1, 0, 0])).unwrap();
        let b = f.to_multidegree(&v(&[0, 1, 0])).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn frame_validation() {
        assert!(MultidegreeFrame::new(vec![0, 0], vec![vec![1, -1], vec![-1, 1]]).is_ok());
        // Sum not zero.
        assert!(MultidegreeFrame::new(vec![0, 0], vec![vec![1, -1], vec![1, -1]]).is_err());
        // Generator not degree zero.
        assert!(MultidegreeFrame::new(vec![0, 0], vec![vec![1, 0], vec![-1, 0]]).is_err());
    }

    #[test]
    fn window_route_search() {
        let window: BTreeSet<Vertex> = [v(&[0, 0]), v(&[1, 0]), v(&[2, 0])].into();
        assert!(window_admits_path(&window, &v(&[0, 0]), &v(&[2, 0])));
        assert!(window_admits_path(&window, &v(&[2, 0]), &v(&[0, 0])));
        // Removing the midpoint severs every ordering.
        let gap: BTreeSet<Vertex> = [v(&[0, 0]), v(&[2, 0])].into();
        assert!(!window_admits_path(&gap, &v(&[0, 0]), &v(&[2, 0])));
    }

    #[test]
    fn minimal_circuit_returns_to_start() {
        let start = v(&[2, 0, 1]);
        let mut cur = start.clone();
        for t in [1, 0, 2] {
            cur = cur.arrow_target(ArrowType(t));
        }
        assert_eq!(cur, start);
    }
}
