//! Named matroid corpus shared by the integration and acceptance tests:
//! all uniforms on up to six elements, a fixed family of graphic
//! matroids, representative direct sums, and one-step truncations.
//! Entries are deduplicated by canonical hash, so relabelings of the
//! same lattice appear once.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::graphs::{complete, cycle, graphic_matroid, Graph};
use crate::matroid::{direct_sum, truncation, uniform, Matroid};

pub const MAX_CORPUS_FLATS: usize = 200;

/// Four-cycle with one diagonal; its chromatic polynomial is
/// `q^4 - 5q^3 + 8q^2 - 4q`.
pub fn square_with_diagonal() -> Graph {
    Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
}

/// Simple graph with a fixed number of distinct edges, drawn by a partial
/// shuffle of all vertex pairs.
fn random_simple_graph(vertices: usize, edges: usize, seed: u64) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|i| (i + 1..vertices).map(move |j| (i, j)))
        .collect();
    assert!(edges <= pairs.len());
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for k in 0..edges {
        let pick = rng.gen_range(k..pairs.len());
        pairs.swap(k, pick);
    }
    pairs.truncate(edges);
    Graph::new(vertices, pairs)
}

/// The named graphs whose graphic matroids enter the corpus. The two
/// random members are fixed by their seeds.
pub fn corpus_graphs() -> Vec<(String, Graph)> {
    vec![
        ("K3".into(), complete(3)),
        ("K4".into(), complete(4)),
        ("C4".into(), cycle(4)),
        ("C5".into(), cycle(5)),
        ("square-with-diagonal".into(), square_with_diagonal()),
        ("random-6-edges-a".into(), random_simple_graph(5, 6, 1001)),
        ("random-6-edges-b".into(), random_simple_graph(5, 6, 1002)),
    ]
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub matroid: Matroid,
}

fn push_unique(
    entries: &mut Vec<CorpusEntry>,
    seen: &mut HashSet<String>,
    name: String,
    matroid: Matroid,
) {
    assert!(
        matroid.num_flats() <= MAX_CORPUS_FLATS,
        "corpus entry {name} exceeds the flat cap"
    );
    if seen.insert(matroid.canonical_hash()) {
        entries.push(CorpusEntry { name, matroid });
    }
}

pub fn corpus() -> Vec<CorpusEntry> {
    let mut entries = Vec::new();
    let mut seen = HashSet::new();

    for n in 1..=6usize {
        for r in 1..=n {
            push_unique(
                &mut entries,
                &mut seen,
                format!("uniform {r},{n}"),
                uniform(r, n).unwrap(),
            );
        }
    }

    let mut graphic = Vec::new();
    for (name, g) in corpus_graphs() {
        let m = graphic_matroid(&g).unwrap();
        graphic.push((name.clone(), m.clone()));
        push_unique(&mut entries, &mut seen, format!("graphic {name}"), m);
    }

    let u11 = uniform(1, 1).unwrap();
    let u23 = uniform(2, 3).unwrap();
    let u34 = uniform(3, 4).unwrap();
    let k4 = graphic_matroid(&complete(4)).unwrap();
    let sqd = graphic_matroid(&square_with_diagonal()).unwrap();
    let sums = vec![
        ("U(2,3)+U(1,1)".to_string(), direct_sum(&u23, &u11).unwrap()),
        ("U(2,3)+U(2,3)".to_string(), direct_sum(&u23, &u23).unwrap()),
        ("U(3,4)+U(1,1)".to_string(), direct_sum(&u34, &u11).unwrap()),
        ("U(3,4)+U(2,3)".to_string(), direct_sum(&u34, &u23).unwrap()),
        ("K4+U(1,1)".to_string(), direct_sum(&k4, &u11).unwrap()),
        (
            "square-with-diagonal+U(2,3)".to_string(),
            direct_sum(&sqd, &u23).unwrap(),
        ),
    ];
    for (name, m) in &sums {
        push_unique(&mut entries, &mut seen, format!("sum {name}"), m.clone());
    }

    let truncatable = graphic
        .iter()
        .chain(sums.iter())
        .chain(std::iter::once(&(
            "U(6,6)".to_string(),
            uniform(6, 6).unwrap(),
        )))
        .filter(|(_, m)| m.rank() >= 2)
        .map(|(name, m)| (name.clone(), truncation(m, 1).unwrap()))
        .collect::<Vec<_>>();
    for (name, m) in truncatable {
        push_unique(&mut entries, &mut seen, format!("truncated {name}"), m);
    }

    entries
}
