//! Seeded construction of simple and semisimple linked-net presentations,
//! used as oracles for the analysis module and as fuzz inputs for the
//! checkers, plus the bundled non-semisimple fixture.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{rat, ratio, RMatrix, Rational};
use crate::net::{ArrowRef, CheckReport, NetError, NetPresentation};
use crate::quiver::{delta, enlarged_hull, ArrowType, MultidegreeFrame, QuiverError, Vertex};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("no seeds given")]
    NoSeeds,
    #[error("seed vertex {0} lies outside the window")]
    SeedOutsideWindow(Vertex),
    #[error("seed vertex has {got} twists, expected {expected}")]
    SeedLength { expected: usize, got: usize },
    #[error("window radius {radius} is below the required n+1 = {required}")]
    RadiusTooSmall { radius: usize, required: usize },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("generated net failed its own {stage} check")]
    ConstructionFailed {
        stage: &'static str,
        report: CheckReport,
    },
}

/// Deterministic recipe for a semisimple net: one simple summand per seed.
/// Identical specs produce bit-identical presentations.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub n: usize,
    /// Ball radius added around the hull of the seeds; at least n+1.
    pub window_radius: usize,
    pub seeds: Vec<Vertex>,
    pub rng_seed: u64,
    #[serde(default)]
    pub conjugate: bool,
}

/// Nonzero scalars drawn for arrow maps.
fn scalar_pool() -> Vec<Rational> {
    vec![
        rat(1),
        rat(-1),
        rat(2),
        rat(-2),
        ratio(1, 2),
        ratio(-1, 2),
        rat(3),
        ratio(1, 3),
    ]
}

/// Entries drawn for change-of-basis matrices.
fn basis_pool() -> Vec<Rational> {
    vec![
        rat(0),
        rat(1),
        rat(-1),
        rat(2),
        rat(-2),
        ratio(1, 2),
        ratio(-1, 2),
    ]
}

/// Window used by the generator: hull of the seeds plus a forward ball.
pub fn window_for(
    seeds: &BTreeSet<Vertex>,
    radius: usize,
) -> Result<BTreeSet<Vertex>, QuiverError> {
    enlarged_hull(seeds, radius)
}

/// Run every checker on a freshly built presentation; construction is
/// verified, not trusted.
fn verify_construction(p: &NetPresentation) -> Result<(), GenError> {
    for (stage, report) in [
        ("validate", p.validate()),
        ("weakly_linked", p.check_weakly_linked()),
        ("linked", p.check_linked()),
        ("exact", p.check_exact()),
        ("pure_and_generated", p.check_pure_and_generated()),
    ] {
        if !report.passed() {
            return Err(GenError::ConstructionFailed { stage, report });
        }
    }
    Ok(())
}

/// Dimension-one net faithfully generated at `seed`: the arrow of type `i`
/// at `u` carries a random nonzero scalar exactly when the path from the
/// seed through it stays admissible, i.e. when `delta(seed, u)` has a zero
/// entry away from `i`; otherwise it is the zero map.
///
/// The nonzero scalar depends only on the type and on how many arrows of
/// that type the path from the seed has already used. Any two same-type
/// admissible routes then compose to equal maps, not merely proportional
/// ones, which is what keeps direct sums of these nets weakly linked.
fn build_simple(
    seed: &Vertex,
    window: &BTreeSet<Vertex>,
    rng: &mut ChaCha8Rng,
) -> NetPresentation {
    let n = seed.n();
    let pool = scalar_pool();
    let max_level = window
        .iter()
        .flat_map(|u| delta(seed, u).counts().to_vec())
        .max()
        .unwrap_or(0);
    let sigma: Vec<Vec<Rational>> = (0..=n)
        .map(|_| {
            (0..=max_level)
                .map(|_| pool[rng.random_range(0..pool.len())].clone())
                .collect()
        })
        .collect();
    let dims: BTreeMap<Vertex, usize> = window.iter().map(|v| (v.clone(), 1)).collect();
    let mut arrows = BTreeMap::new();
    for u in window {
        let d = delta(seed, u);
        for i in 0..=n {
            let aref = ArrowRef::new(u.clone(), ArrowType(i));
            if !window.contains(&aref.target()) {
                continue;
            }
            let continues = d
                .counts()
                .iter()
                .enumerate()
                .any(|(k, &c)| k != i && c == 0);
            let scalar = if continues {
                sigma[i][d.counts()[i] as usize].clone()
            } else {
                rat(0)
            };
            arrows.insert(aref, RMatrix::from_rows(vec![vec![scalar]]));
        }
    }
    NetPresentation::new(n, dims, arrows, [seed.clone()].into(), None, None)
}

/// Seeded dimension-one net on the given window, verified against every
/// checker before it is returned.
pub fn random_simple_net(
    n: usize,
    seed_vertex: &Vertex,
    window: &BTreeSet<Vertex>,
    rng_seed: u64,
) -> Result<NetPresentation, GenError> {
    if seed_vertex.len() != n + 1 {
        return Err(GenError::SeedLength {
            expected: n + 1,
            got: seed_vertex.len(),
        });
    }
    if !window.contains(seed_vertex) {
        return Err(GenError::SeedOutsideWindow(seed_vertex.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let p = build_simple(seed_vertex, window, &mut rng);
    verify_construction(&p)?;
    Ok(p)
}

fn random_invertible(d: usize, rng: &mut ChaCha8Rng) -> RMatrix {
    let pool = basis_pool();
    loop {
        let m = RMatrix::from_fn(d, d, |_, _| pool[rng.random_range(0..pool.len())].clone());
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Direct sum of one random simple net per seed, optionally conjugated by
/// random invertible matrices at every window vertex. Returns the net and
/// the number of summands it was built from.
pub fn random_semisimple_net(spec: &GenSpec) -> Result<(NetPresentation, usize), GenError> {
    if spec.seeds.is_empty() {
        return Err(GenError::NoSeeds);
    }
    for s in &spec.seeds {
        if s.len() != spec.n + 1 {
            return Err(GenError::SeedLength {
                expected: spec.n + 1,
                got: s.len(),
            });
        }
    }
    if spec.window_radius < spec.n + 1 {
        return Err(GenError::RadiusTooSmall {
            radius: spec.window_radius,
            required: spec.n + 1,
        });
    }
    let seed_set: BTreeSet<Vertex> = spec.seeds.iter().cloned().collect();
    let window = window_for(&seed_set, spec.window_radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let parts: Vec<NetPresentation> = spec
        .seeds
        .iter()
        .map(|s| build_simple(s, &window, &mut rng))
        .collect();
    // The hull 1-generates the sum; the bare seed set in general does not
    // (a vertex between two distant seeds is surjected from neither).
    let hull_of_seeds = crate::quiver::hull(&seed_set)?;
    let mut net = NetPresentation::direct_sum(&parts)?.with_generators(hull_of_seeds);
    if spec.conjugate {
        let k = spec.seeds.len();
        let bases: BTreeMap<Vertex, RMatrix> = window
            .iter()
            .map(|v| (v.clone(), random_invertible(k, &mut rng)))
            .collect();
        net = net.conjugate(&bases)?;
    }
    verify_construction(&net)?;
    Ok((net, spec.seeds.len()))
}

/// The bundled two-dimensional net over the n = 2 quiver that is exact and
/// linked but not semisimple: seven window vertices (a center and its
/// hexagon), twelve arrows, multidegree labels, and the coordinate frame
/// of the pencil-of-cubics degeneration it arises from.
pub fn fixture_nonsemisimple() -> NetPresentation {
    let v = |t: &[i64]| Vertex::from_twists(t.to_vec()).expect("fixture twists are normalized");
    let m = |rows: &[&[i64]]| RMatrix::from_int_rows(rows);
    let id = RMatrix::identity(2);

    let center = v(&[0, 0, 0]);
    let hexagon = [
        v(&[1, 0, 0]), // multidegree (0,3,3)
        v(&[0, 1, 0]), // multidegree (3,0,3)
        v(&[0, 0, 1]), // multidegree (3,3,0)
        v(&[1, 0, 1]), // multidegree (1,4,1)
        v(&[0, 1, 1]), // multidegree (4,1,1)
        v(&[1, 1, 0]), // multidegree (1,1,4)
    ];

    let mut dims = BTreeMap::new();
    dims.insert(center.clone(), 2);
    for h in &hexagon {
        dims.insert(h.clone(), 2);
    }

    let mut arrows = BTreeMap::new();
    let mut put = |src: &Vertex, t: usize, matrix: RMatrix| {
        arrows.insert(ArrowRef::new(src.clone(), ArrowType(t)), matrix);
    };
    // Center to the hexagon.
    put(&center, 0, id.clone());
    put(&center, 1, id.clone());
    put(&center, 2, id.clone());
    // Around the hexagon.
    put(&v(&[1, 0, 0]), 1, m(&[&[1, 0], &[0, 0]]));
    put(&v(&[1, 0, 0]), 2, m(&[&[1, -1], &[0, 0]]));
    put(&v(&[0, 1, 0]), 0, m(&[&[1, 0], &[0, 0]]));
    put(&v(&[0, 1, 0]), 2, m(&[&[0, 0], &[0, 1]]));
    put(&v(&[0, 0, 1]), 0, m(&[&[1, -1], &[0, 0]]));
    put(&v(&[0, 0, 1]), 1, m(&[&[0, 0], &[0, 1]]));
    // Hexagon back into the center.
    put(&v(&[1, 0, 1]), 1, m(&[&[0, 1], &[0, 1]]));
    put(&v(&[0, 1, 1]), 0, m(&[&[1, 0], &[0, 0]]));
    put(&v(&[1, 1, 0]), 2, m(&[&[0, 0], &[0, 1]]));

    let frame = MultidegreeFrame::new(
        vec![2, 2, 2],
        vec![vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]],
    )
    .expect("fixture frame is valid");

    let labels: BTreeMap<Vertex, Vec<i64>> = dims
        .keys()
        .map(|vert| {
            let md = frame
                .to_multidegree(vert)
                .expect("window vertices have multidegrees");
            (vert.clone(), md)
        })
        .collect();

    let generators: BTreeSet<Vertex> = dims.keys().cloned().collect();
    NetPresentation::new(2, dims, arrows, generators, Some(labels), Some(frame))
}
