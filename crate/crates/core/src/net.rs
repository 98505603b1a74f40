//! Finite presentations of linked nets on a window of the quiver, path-map
//! evaluation, and the axiom checkers.
//!
//! All verdicts are quantified over the window only: a condition whose data
//! lies partly outside the window is listed in [`CheckReport::coverage`]
//! rather than silently assumed. A report passes when it has no witnesses.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{
    self, image, intersect, kernel, proportional_nonzero, push_through, quotient_matrix, sum,
    Proportionality, RMatrix, Rational, Subspace,
};
use crate::quiver::{
    delta, enlarged_hull, move_by, ArrowType, MultidegreeFrame, PathTypeVector, TypeSet, Vertex,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetError {
    #[error("window cannot realize a path from {from} to {to}; missing arrows: {missing:?}")]
    WindowInsufficient {
        from: Vertex,
        to: Vertex,
        missing: Vec<ArrowRef>,
    },
    #[error("not a subnet: arrow at {arrow:?} does not preserve the subspaces")]
    NotASubnet { arrow: ArrowRef },
    #[error("vertex {0} is not in the window")]
    VertexNotInWindow(Vertex),
    #[error("presentations do not share a window")]
    WindowMismatch,
    #[error("ambient dimension mismatch at {vertex}: expected {expected}, got {got}")]
    AmbientMismatch {
        vertex: Vertex,
        expected: usize,
        got: usize,
    },
    #[error("change of basis at {0} is singular")]
    SingularBasis(Vertex),
    #[error("missing change of basis at {0}")]
    MissingBasis(Vertex),
    #[error("direct sum of an empty list")]
    EmptySum,
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
}

/// An arrow of the quiver named by its source and type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArrowRef {
    pub source: Vertex,
    pub arrow_type: ArrowType,
}

impl ArrowRef {
    pub fn new(source: Vertex, arrow_type: ArrowType) -> Self {
        ArrowRef { source, arrow_type }
    }

    pub fn target(&self) -> Vertex {
        self.source.arrow_target(self.arrow_type)
    }
}

/// Structured counterexample produced by a checker. Every variant carries
/// enough data to re-check the named condition against the presentation.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum Witness {
    Structural {
        message: String,
    },
    ArrowOutsideWindow {
        arrow: ArrowRef,
    },
    MissingArrow {
        arrow: ArrowRef,
    },
    BadArrowShape {
        arrow: ArrowRef,
        expected: (usize, usize),
        got: (usize, usize),
    },
    SquareNotProportional {
        vertex: Vertex,
        types: (ArrowType, ArrowType),
        first_route: RMatrix,
        second_route: RMatrix,
    },
    CircuitNotZero {
        vertex: Vertex,
        composite: RMatrix,
    },
    KernelsOverlap {
        vertex: Vertex,
        first: TypeSet,
        second: TypeSet,
        #[serde(serialize_with = "linalg::serialize_rationals")]
        vector: Vec<Rational>,
    },
    NotExact {
        from: Vertex,
        to: Vertex,
        kernel: Subspace,
        image: Subspace,
    },
    NotPure {
        vertex: Vertex,
        dim: usize,
        other_vertex: Vertex,
        other_dim: usize,
    },
    NotGenerated {
        vertex: Vertex,
    },
    ArrowNotZeroOrMono {
        arrow: ArrowRef,
    },
    NoIsoDirection {
        from: Vertex,
        to: Vertex,
    },
}

/// A condition that could not be evaluated because its data leaves the window.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum Skipped {
    Square {
        vertex: Vertex,
        types: (ArrowType, ArrowType),
    },
    Circuit {
        vertex: Vertex,
    },
    KernelPair {
        vertex: Vertex,
        first: TypeSet,
        second: TypeSet,
    },
    NeighborPair {
        from: Vertex,
        to: Vertex,
    },
    Generation {
        vertex: Vertex,
    },
    Profile {
        vertex: Vertex,
    },
}

/// Outcome of one checker run: pass/fail with witnesses, plus the conditions
/// skipped for window reasons.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub witnesses: Vec<Witness>,
    pub coverage: Vec<Skipped>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_generators: Option<Vec<Vertex>>,
}

impl CheckReport {
    pub(crate) fn new(check: &'static str) -> Self {
        CheckReport {
            check,
            witnesses: Vec::new(),
            coverage: Vec::new(),
            minimal_generators: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Finite window of the quiver with per-vertex dimensions, per-arrow rational
/// matrices, and a declared generating set. Immutable once built; `validate`
/// reports structural defects instead of panicking.
#[derive(Debug, Clone, PartialEq)]
pub struct NetPresentation {
    n: usize,
    dims: BTreeMap<Vertex, usize>,
    arrows: BTreeMap<ArrowRef, RMatrix>,
    generators: BTreeSet<Vertex>,
    labels: Option<BTreeMap<Vertex, Vec<i64>>>,
    frame: Option<MultidegreeFrame>,
}

impl NetPresentation {
    pub fn new(
        n: usize,
        dims: BTreeMap<Vertex, usize>,
        arrows: BTreeMap<ArrowRef, RMatrix>,
        generators: BTreeSet<Vertex>,
        labels: Option<BTreeMap<Vertex, Vec<i64>>>,
        frame: Option<MultidegreeFrame>,
    ) -> Self {
        NetPresentation {
            n,
            dims,
            arrows,
            generators,
            labels,
            frame,
        }
    }

    /// Same presentation with a different declared generating set.
    pub fn with_generators(mut self, generators: BTreeSet<Vertex>) -> Self {
        self.generators = generators;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arrow types, n+1.
    pub fn n_types(&self) -> usize {
        self.n + 1
    }

    pub fn window(&self) -> impl Iterator<Item = &Vertex> {
        self.dims.keys()
    }

    pub fn window_len(&self) -> usize {
        self.dims.len()
    }

    pub fn contains_vertex(&self, v: &Vertex) -> bool {
        self.dims.contains_key(v)
    }

    pub fn dim_at(&self, v: &Vertex) -> Option<usize> {
        self.dims.get(v).copied()
    }

    pub fn dims(&self) -> &BTreeMap<Vertex, usize> {
        &self.dims
    }

    pub fn arrows(&self) -> &BTreeMap<ArrowRef, RMatrix> {
        &self.arrows
    }

    pub fn arrow(&self, a: &ArrowRef) -> Option<&RMatrix> {
        self.arrows.get(a)
    }

    pub fn generators(&self) -> &BTreeSet<Vertex> {
        &self.generators
    }

    pub fn labels(&self) -> Option<&BTreeMap<Vertex, Vec<i64>>> {
        self.labels.as_ref()
    }

    pub fn frame(&self) -> Option<&MultidegreeFrame> {
        self.frame.as_ref()
    }

    /// The window dimension when it is constant.
    pub fn common_dim(&self) -> Option<usize> {
        let mut it = self.dims.values();
        let first = *it.next()?;
        it.all(|&d| d == first).then_some(first)
    }

    /// Structural invariants only: shapes, window closure of the arrow map,
    /// generator containment. Axioms are separate checkers. Length or
    /// type-index defects stop the arrow-closure phase, so this never
    /// panics on garbage input.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new("validate");
        let push = |report: &mut CheckReport, message: String| {
            report.witnesses.push(Witness::Structural { message });
        };
        if self.dims.is_empty() {
            push(&mut report, "window is empty".into());
            return report;
        }
        if self.n < 1 {
            push(&mut report, "quiver parameter n must be at least 1".into());
        }
        let mut tuples_ok = true;
        for v in self.dims.keys() {
            if v.len() != self.n + 1 {
                tuples_ok = false;
                push(
                    &mut report,
                    format!("window vertex {v} has {} twists, expected {}", v.len(), self.n + 1),
                );
            }
        }
        if self.generators.is_empty() {
            push(&mut report, "generating set is empty".into());
        }
        for g in &self.generators {
            if !self.dims.contains_key(g) {
                push(&mut report, format!("generator {g} is not in the window"));
            }
        }
        if let Some(labels) = &self.labels {
            for (v, label) in labels {
                if !self.dims.contains_key(v) {
                    push(&mut report, format!("label for {v} outside the window"));
                }
                if label.len() != self.n + 1 {
                    push(&mut report, format!("label for {v} has wrong length"));
                }
            }
        }
        for aref in self.arrows.keys() {
            if aref.source.len() != self.n + 1 || aref.arrow_type.0 > self.n {
                tuples_ok = false;
                push(
                    &mut report,
                    format!(
                        "arrow at {} of type {} does not fit the quiver",
                        aref.source, aref.arrow_type.0
                    ),
                );
            }
        }
        if !tuples_ok {
            return report;
        }
        for (aref, m) in &self.arrows {
            let target = aref.target();
            let (Some(&ds), Some(&dt)) = (self.dims.get(&aref.source), self.dims.get(&target))
            else {
                report.witnesses.push(Witness::ArrowOutsideWindow {
                    arrow: aref.clone(),
                });
                continue;
            };
            if m.rows() != dt || m.cols() != ds {
                report.witnesses.push(Witness::BadArrowShape {
                    arrow: aref.clone(),
                    expected: (dt, ds),
                    got: (m.rows(), m.cols()),
                });
            }
        }
        // Every arrow staying inside the window must carry a matrix.
        for v in self.dims.keys() {
            for i in 0..self.n_types() {
                let aref = ArrowRef::new(v.clone(), ArrowType(i));
                if self.dims.contains_key(&aref.target()) && !self.arrows.contains_key(&aref) {
                    report.witnesses.push(Witness::MissingArrow { arrow: aref });
                }
            }
        }
        report
    }

    /// Search for an in-window arrow ordering of type vector `t` leaving `u`.
    /// On failure returns the frontier arrows that would have been needed.
    fn find_route(&self, u: &Vertex, t: &PathTypeVector) -> Result<Vec<ArrowRef>, Vec<ArrowRef>> {
        let mut missing: BTreeSet<ArrowRef> = BTreeSet::new();
        let mut dead: HashSet<(Vertex, Vec<i64>)> = HashSet::new();
        let mut route: Vec<ArrowRef> = Vec::new();
        let mut remaining = t.counts().to_vec();

        fn dfs(
            p: &NetPresentation,
            cur: &Vertex,
            remaining: &mut Vec<i64>,
            route: &mut Vec<ArrowRef>,
            dead: &mut HashSet<(Vertex, Vec<i64>)>,
            missing: &mut BTreeSet<ArrowRef>,
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
                let aref = ArrowRef::new(cur.clone(), ArrowType(i));
                if p.arrows.contains_key(&aref) {
                    let next = aref.target();
                    remaining[i] -= 1;
                    route.push(aref);
                    if dfs(p, &next, remaining, route, dead, missing) {
                        return true;
                    }
                    route.pop();
                    remaining[i] += 1;
                } else {
                    missing.insert(aref);
                }
            }
            dead.insert(key);
            false
        }

        if dfs(self, u, &mut remaining, &mut route, &mut dead, &mut missing) {
            Ok(route)
        } else {
            Err(missing.into_iter().collect())
        }
    }

    fn compose_route(&self, u: &Vertex, route: &[ArrowRef]) -> RMatrix {
        let mut m = RMatrix::identity(self.dims[u]);
        for aref in route {
            m = self.arrows[aref].mul(&m);
        }
        m
    }

    /// One representative of the homothety class of maps along an admissible
    /// path from `u` to `w` staying inside the window. Identity when `u == w`.
    pub fn path_map(&self, u: &Vertex, w: &Vertex) -> Result<RMatrix, NetError> {
        for v in [u, w] {
            if !self.dims.contains_key(v) {
                return Err(NetError::VertexNotInWindow(v.clone()));
            }
        }
        if u == w {
            return Ok(RMatrix::identity(self.dims[u]));
        }
        let t = delta(u, w);
        match self.find_route(u, &t) {
            Ok(route) => Ok(self.compose_route(u, &route)),
            Err(missing) => Err(NetError::WindowInsufficient {
                from: u.clone(),
                to: w.clone(),
                missing,
            }),
        }
    }

    /// Every in-window arrow ordering from `u` to `w`, composed. For tests of
    /// the proportionality and equal-kernel laws.
    pub fn path_map_representatives(&self, u: &Vertex, w: &Vertex) -> Vec<RMatrix> {
        if u == w {
            return vec![RMatrix::identity(self.dims[u])];
        }
        let t = delta(u, w);
        let mut out = Vec::new();
        let mut route = Vec::new();
        let mut remaining = t.counts().to_vec();

        fn walk(
            p: &NetPresentation,
            start: &Vertex,
            cur: &Vertex,
            remaining: &mut Vec<i64>,
            route: &mut Vec<ArrowRef>,
            out: &mut Vec<RMatrix>,
        ) {
            if remaining.iter().all(|&c| c == 0) {
                out.push(p.compose_route(start, route));
                return;
            }
            for i in 0..remaining.len() {
                if remaining[i] == 0 {
                    continue;
                }
                let aref = ArrowRef::new(cur.clone(), ArrowType(i));
                if p.arrows.contains_key(&aref) {
                    let next = aref.target();
                    remaining[i] -= 1;
                    route.push(aref);
                    walk(p, start, &next, remaining, route, out);
                    route.pop();
                    remaining[i] += 1;
                }
            }
        }

        walk(self, u, u, &mut remaining, &mut route, &mut out);
        out
    }

    /// Map from `v` to `types · v` along a simple path. Identity for the
    /// empty set. `types` must be a proper subset of the type set. A target
    /// outside the window is a window insufficiency, not a caller error.
    pub fn simple_map(&self, v: &Vertex, types: TypeSet) -> Result<RMatrix, NetError> {
        assert!(
            types.is_proper(self.n_types()),
            "simple_map needs a proper type set"
        );
        if !self.dims.contains_key(v) {
            return Err(NetError::VertexNotInWindow(v.clone()));
        }
        if types.is_empty() {
            return Ok(RMatrix::identity(self.dims[v]));
        }
        let target = move_by(v, types);
        if !self.dims.contains_key(&target) {
            return Err(NetError::WindowInsufficient {
                from: v.clone(),
                to: target,
                missing: Vec::new(),
            });
        }
        self.path_map(v, &target)
    }

    /// Squares commute up to nonzero scalar (or vanish together) and minimal
    /// circuits compose to zero, everywhere the window permits. Sufficient for
    /// the path-independence axiom because any two orderings of one type are
    /// linked by adjacent transpositions.
    pub fn check_weakly_linked(&self) -> CheckReport {
        let mut report = CheckReport::new("weakly_linked");
        for v in self.dims.keys() {
            for i in 0..self.n_types() {
                for j in i + 1..self.n_types() {
                    let (ti, tj) = (ArrowType(i), ArrowType(j));
                    let a = v.arrow_target(ti);
                    let b = v.arrow_target(tj);
                    let c = a.arrow_target(tj);
                    let legs = [
                        ArrowRef::new(v.clone(), ti),
                        ArrowRef::new(a.clone(), tj),
                        ArrowRef::new(v.clone(), tj),
                        ArrowRef::new(b.clone(), ti),
                    ];
                    let complete = [&a, &b, &c].iter().all(|x| self.dims.contains_key(x))
                        && legs.iter().all(|l| self.arrows.contains_key(l));
                    if !complete {
                        report.coverage.push(Skipped::Square {
                            vertex: v.clone(),
                            types: (ti, tj),
                        });
                        continue;
                    }
                    let first = self.arrows[&legs[1]].mul(&self.arrows[&legs[0]]);
                    let second = self.arrows[&legs[3]].mul(&self.arrows[&legs[2]]);
                    match proportional_nonzero(&first, &second) {
                        Proportionality::BothZero | Proportionality::Scalar(_) => {}
                        Proportionality::Unrelated => {
                            report.witnesses.push(Witness::SquareNotProportional {
                                vertex: v.clone(),
                                types: (ti, tj),
                                first_route: first,
                                second_route: second,
                            });
                        }
                    }
                }
            }
            // Ascending-order representative of the minimal circuit at v.
            let mut cur = v.clone();
            let mut composite = RMatrix::identity(self.dims[v]);
            let mut complete = true;
            for i in 0..self.n_types() {
                let aref = ArrowRef::new(cur.clone(), ArrowType(i));
                match self.arrows.get(&aref) {
                    Some(m) => {
                        composite = m.mul(&composite);
                        cur = aref.target();
                    }
                    None => {
                        complete = false;
                        break;
                    }
                }
            }
            if !complete {
                report.coverage.push(Skipped::Circuit { vertex: v.clone() });
            } else if !composite.is_zero() {
                report.witnesses.push(Witness::CircuitNotZero {
                    vertex: v.clone(),
                    composite,
                });
            }
        }
        report
    }

    /// Kernels of type-disjoint simple maps intersect trivially.
    pub fn check_linked(&self) -> CheckReport {
        let mut report = CheckReport::new("linked");
        let full = TypeSet::full(self.n_types()).bits();
        for v in self.dims.keys() {
            let kernels: Vec<Option<Subspace>> = (0..full)
                .map(|bits| {
                    self.simple_map(v, TypeSet::from_bits(bits))
                        .ok()
                        .map(|m| kernel(&m))
                })
                .collect();
            for i_bits in 1..full {
                for j_bits in i_bits + 1..full {
                    if i_bits & j_bits != 0 {
                        continue;
                    }
                    let (i_set, j_set) = (TypeSet::from_bits(i_bits), TypeSet::from_bits(j_bits));
                    let (Some(ka), Some(kb)) =
                        (&kernels[i_bits as usize], &kernels[j_bits as usize])
                    else {
                        report.coverage.push(Skipped::KernelPair {
                            vertex: v.clone(),
                            first: i_set,
                            second: j_set,
                        });
                        continue;
                    };
                    if ka.is_zero() || kb.is_zero() {
                        continue;
                    }
                    let meet = intersect(ka, kb);
                    if !meet.is_zero() {
                        report.witnesses.push(Witness::KernelsOverlap {
                            vertex: v.clone(),
                            first: i_set,
                            second: j_set,
                            vector: meet.basis().row_slice(0).to_vec(),
                        });
                    }
                }
            }
        }
        report
    }

    /// Kernel of each connecting map equals the image of the reverse map, for
    /// every in-window neighbor pair with both maps computable.
    pub fn check_exact(&self) -> CheckReport {
        let mut report = CheckReport::new("exact");
        let full = TypeSet::full(self.n_types()).bits();
        for v in self.dims.keys() {
            for bits in 1..full {
                let w = move_by(v, TypeSet::from_bits(bits));
                if !self.dims.contains_key(&w) || *v >= w {
                    continue;
                }
                let (Ok(fwd), Ok(rev)) = (self.path_map(v, &w), self.path_map(&w, v)) else {
                    report.coverage.push(Skipped::NeighborPair {
                        from: v.clone(),
                        to: w.clone(),
                    });
                    continue;
                };
                for (a, b, m_ab, m_ba) in [(v, &w, &fwd, &rev), (&w, v, &rev, &fwd)] {
                    let ker = kernel(m_ab);
                    let im = image(m_ba);
                    if ker != im {
                        report.witnesses.push(Witness::NotExact {
                            from: a.clone(),
                            to: b.clone(),
                            kernel: ker,
                            image: im,
                        });
                    }
                }
            }
        }
        report
    }

    /// Constant dimension across the window (purity, in the exact
    /// vector-space setting) and 1-generation of every window vertex from the
    /// declared generating set. Also reports the minimal generating subset:
    /// the generators not surjected onto by any other generator.
    pub fn check_pure_and_generated(&self) -> CheckReport {
        let mut report = CheckReport::new("pure_and_generated");
        let mut it = self.dims.iter();
        if let Some((v0, &d0)) = it.next() {
            for (v, &d) in it {
                if d != d0 {
                    report.witnesses.push(Witness::NotPure {
                        vertex: v.clone(),
                        dim: d,
                        other_vertex: v0.clone(),
                        other_dim: d0,
                    });
                    break;
                }
            }
        }
        let mut maps: HashMap<(Vertex, Vertex), Option<RMatrix>> = HashMap::new();
        let mut path = |from: &Vertex, to: &Vertex| -> Option<RMatrix> {
            maps.entry((from.clone(), to.clone()))
                .or_insert_with(|| self.path_map(from, to).ok())
                .clone()
        };
        for (v, &d) in &self.dims {
            // Near generators surject most often; try them first.
            let mut by_distance: Vec<&Vertex> = self.generators.iter().collect();
            by_distance.sort_by_key(|h| delta(h, v).total());
            let mut surjected = false;
            let mut inconclusive = false;
            for h in by_distance {
                match path(h, v) {
                    Some(m) => {
                        if m.rank() == d {
                            surjected = true;
                            break;
                        }
                    }
                    None => inconclusive = true,
                }
            }
            if !surjected {
                if inconclusive {
                    report.coverage.push(Skipped::Generation { vertex: v.clone() });
                } else {
                    report.witnesses.push(Witness::NotGenerated { vertex: v.clone() });
                }
            }
        }
        let minimal: Vec<Vertex> = self
            .generators
            .iter()
            .filter(|w| {
                !self.generators.iter().any(|h| {
                    h != *w
                        && path(h, w)
                            .map(|m| m.rank() == self.dims[*w])
                            .unwrap_or(false)
                })
            })
            .cloned()
            .collect();
        report.minimal_generators = Some(minimal);
        report
    }

    /// Smallest subnet whose space at each seed vertex contains the seed
    /// subspace: at each window vertex, the sum of the pushforwards of the
    /// seeds. Fails if a nonzero seed cannot reach some window vertex.
    pub fn subnet_generated(&self, seeds: &[(Vertex, Subspace)]) -> Result<Subnet, NetError> {
        for (v, s) in seeds {
            let d = self
                .dims
                .get(v)
                .copied()
                .ok_or_else(|| NetError::VertexNotInWindow(v.clone()))?;
            if s.ambient() != d {
                return Err(NetError::AmbientMismatch {
                    vertex: v.clone(),
                    expected: d,
                    got: s.ambient(),
                });
            }
        }
        let mut spaces = BTreeMap::new();
        for (w, &d) in &self.dims {
            let mut acc = Subspace::zero(d);
            for (sv, ss) in seeds {
                if ss.is_zero() {
                    continue;
                }
                let m = self.path_map(sv, w)?;
                acc = sum(&acc, &push_through(&m, ss));
            }
            spaces.insert(w.clone(), acc);
        }
        let generators: BTreeSet<Vertex> = seeds.iter().map(|(v, _)| v.clone()).collect();
        Subnet::from_spaces(self, spaces, generators)
    }

    /// Quotient presentation on the deterministic complements of a subnet,
    /// together with the per-vertex section matrices (rows are the ambient
    /// coordinates of the quotient basis).
    pub fn quotient(
        &self,
        sub: &Subnet,
    ) -> Result<(NetPresentation, BTreeMap<Vertex, RMatrix>), NetError> {
        if sub.spaces.len() != self.dims.len()
            || !sub.spaces.keys().all(|v| self.dims.contains_key(v))
        {
            return Err(NetError::WindowMismatch);
        }
        for (v, s) in &sub.spaces {
            if s.ambient() != self.dims[v] {
                return Err(NetError::AmbientMismatch {
                    vertex: v.clone(),
                    expected: self.dims[v],
                    got: s.ambient(),
                });
            }
        }
        let mut sections = BTreeMap::new();
        let mut dims = BTreeMap::new();
        for (v, s) in &sub.spaces {
            let c = linalg::complement(s);
            dims.insert(v.clone(), c.dim());
            sections.insert(v.clone(), c.basis().clone());
        }
        let mut arrows = BTreeMap::new();
        for (aref, m) in &self.arrows {
            let target = aref.target();
            let q = quotient_matrix(m, &sub.spaces[&aref.source], &sub.spaces[&target])
                .map_err(|_| NetError::NotASubnet {
                    arrow: aref.clone(),
                })?;
            arrows.insert(aref.clone(), q);
        }
        let quotient = NetPresentation {
            n: self.n,
            dims,
            arrows,
            generators: self.generators.clone(),
            labels: self.labels.clone(),
            frame: self.frame.clone(),
        };
        Ok((quotient, sections))
    }

    /// Blockwise direct sum of presentations over one window.
    pub fn direct_sum(parts: &[NetPresentation]) -> Result<NetPresentation, NetError> {
        let first = parts.first().ok_or(NetError::EmptySum)?;
        for p in parts {
            if p.n != first.n {
                return Err(NetError::Inconsistent("mixed quiver parameters".into()));
            }
            if p.dims.len() != first.dims.len()
                || !p.dims.keys().eq(first.dims.keys())
            {
                return Err(NetError::WindowMismatch);
            }
        }
        let mut dims = BTreeMap::new();
        for v in first.dims.keys() {
            dims.insert(v.clone(), parts.iter().map(|p| p.dims[v]).sum());
        }
        let mut arrows = BTreeMap::new();
        for aref in first.arrows.keys() {
            let blocks: Vec<&RMatrix> = parts
                .iter()
                .map(|p| {
                    p.arrows
                        .get(aref)
                        .ok_or_else(|| NetError::Inconsistent(format!(
                            "arrow at {} missing from a summand",
                            aref.source
                        )))
                })
                .collect::<Result<_, _>>()?;
            let rows: usize = blocks.iter().map(|b| b.rows()).sum();
            let cols: usize = blocks.iter().map(|b| b.cols()).sum();
            let mut m = RMatrix::zero(rows, cols);
            let (mut ro, mut co) = (0, 0);
            for b in blocks {
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m.set(ro + r, co + c, b.get(r, c).clone());
                    }
                }
                ro += b.rows();
                co += b.cols();
            }
            arrows.insert(aref.clone(), m);
        }
        let generators = parts
            .iter()
            .flat_map(|p| p.generators.iter().cloned())
            .collect();
        let labels = if parts.iter().all(|p| p.labels == first.labels) {
            first.labels.clone()
        } else {
            None
        };
        let frame = if parts.iter().all(|p| p.frame == first.frame) {
            first.frame.clone()
        } else {
            None
        };
        Ok(NetPresentation {
            n: first.n,
            dims,
            arrows,
            generators,
            labels,
            frame,
        })
    }

    /// Change of basis at every window vertex: each arrow matrix `M` becomes
    /// `B_target · M · B_source⁻¹`.
    pub fn conjugate(
        &self,
        bases: &BTreeMap<Vertex, RMatrix>,
    ) -> Result<NetPresentation, NetError> {
        let mut inverses = BTreeMap::new();
        for (v, &d) in &self.dims {
            let b = bases.get(v).ok_or_else(|| NetError::MissingBasis(v.clone()))?;
            if b.rows() != d || b.cols() != d {
                return Err(NetError::AmbientMismatch {
                    vertex: v.clone(),
                    expected: d,
                    got: b.rows(),
                });
            }
            let inv = b.inverse().ok_or_else(|| NetError::SingularBasis(v.clone()))?;
            inverses.insert(v.clone(), inv);
        }
        let mut arrows = BTreeMap::new();
        for (aref, m) in &self.arrows {
            let target = aref.target();
            let conj = bases[&target].mul(m).mul(&inverses[&aref.source]);
            arrows.insert(aref.clone(), conj);
        }
        Ok(NetPresentation {
            n: self.n,
            dims: self.dims.clone(),
            arrows,
            generators: self.generators.clone(),
            labels: self.labels.clone(),
            frame: self.frame.clone(),
        })
    }

    /// Does the window contain the hull of the generators enlarged by the
    /// ball of radius n+1? That is the bar for verdicts with no coverage
    /// gaps on profile and exactness conditions near the generators.
    pub fn meets_default_window(&self) -> bool {
        match enlarged_hull(&self.generators, self.n + 1) {
            Ok(required) => required.iter().all(|v| self.dims.contains_key(v)),
            Err(_) => false,
        }
    }
}

/// A subnet of a presentation: the induced presentation in per-vertex bases
/// together with the embedding subspaces inside the parent's coordinates.
#[derive(Debug, Clone)]
pub struct Subnet {
    pub presentation: NetPresentation,
    pub spaces: BTreeMap<Vertex, Subspace>,
}

impl Subnet {
    /// Check arrow closure of the given subspaces inside `parent` and build
    /// the restricted presentation in the canonical bases of the subspaces.
    pub fn from_spaces(
        parent: &NetPresentation,
        spaces: BTreeMap<Vertex, Subspace>,
        generators: BTreeSet<Vertex>,
    ) -> Result<Subnet, NetError> {
        if spaces.len() != parent.dims.len()
            || !spaces.keys().all(|v| parent.dims.contains_key(v))
        {
            return Err(NetError::WindowMismatch);
        }
        for (v, s) in &spaces {
            if s.ambient() != parent.dims[v] {
                return Err(NetError::AmbientMismatch {
                    vertex: v.clone(),
                    expected: parent.dims[v],
                    got: s.ambient(),
                });
            }
        }
        let mut arrows = BTreeMap::new();
        for (aref, m) in &parent.arrows {
            let src = &spaces[&aref.source];
            let dst = &spaces[&aref.target()];
            if src.is_zero() {
                arrows.insert(aref.clone(), RMatrix::zero(dst.dim(), 0));
                continue;
            }
            // Columns: coordinates of each mapped source basis vector in the
            // target basis. Unsolvable means the spaces are not a subnet.
            let mapped = m.mul(&src.basis().transpose());
            let coords = dst
                .basis()
                .transpose()
                .solve(&mapped)
                .ok_or_else(|| NetError::NotASubnet {
                    arrow: aref.clone(),
                })?;
            arrows.insert(aref.clone(), coords);
        }
        let dims = spaces
            .iter()
            .map(|(v, s)| (v.clone(), s.dim()))
            .collect();
        let presentation = NetPresentation {
            n: parent.n,
            dims,
            arrows,
            generators,
            labels: parent.labels.clone(),
            frame: parent.frame.clone(),
        };
        Ok(Subnet {
            presentation,
            spaces,
        })
    }
}
