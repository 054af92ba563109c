//! The built-in test groups and a few standard homomorphisms between them.

use std::sync::Arc;

use crate::error::Result;
use crate::group::{FiniteGroup, GroupHom, Perm};

pub const CORPUS_NAMES: [&str; 12] = [
    "trivial", "Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8", "Z6", "A4", "D6", "S4",
];

fn cyc(degree: usize, cycles: &[&[usize]]) -> Perm {
    Perm::from_cycles(degree, cycles).expect("valid cycle notation")
}

fn cyclic(n: usize) -> (usize, Vec<Perm>) {
    let c: Vec<usize> = (0..n).collect();
    (n, vec![cyc(n, &[&c])])
}

/// Right multiplication by `i` and `j` on `{±1, ±i, ±j, ±k}`, labelled
/// `2·unit + sign` with units ordered `1, i, j, k`.
fn quaternion_generators() -> Vec<Perm> {
    // unit products: (unit, sign) of a·b for a, b in {1, i, j, k}
    const TABLE: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let right_mul = |b: usize| {
        let images = (0..8)
            .map(|x| {
                let (a, neg) = (x / 2, x % 2 == 1);
                let (c, s) = TABLE[a][b];
                2 * c + usize::from(neg ^ s)
            })
            .collect();
        Perm::from_images(images).expect("regular representation")
    };
    vec![right_mul(1), right_mul(2)]
}

/// Degree and generators of a corpus group.
pub fn corpus_generators(name: &str) -> Option<(usize, Vec<Perm>)> {
    Some(match name {
        "trivial" => (1, vec![]),
        "Z2" => cyclic(2),
        "Z3" => cyclic(3),
        "Z4" => cyclic(4),
        "Z6" => cyclic(6),
        "Z2xZ2" => (4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[2, 3]])]),
        "S3" => (3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]),
        "D4" => (4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])]),
        "Q8" => (8, quaternion_generators()),
        "A4" => (4, vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1], &[2, 3]])]),
        "D6" => (
            6,
            vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[1, 5], &[2, 4]])],
        ),
        "S4" => (4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])]),
        _ => return None,
    })
}

pub fn corpus_group(name: &str) -> Option<Arc<FiniteGroup>> {
    let (degree, gens) = corpus_generators(name)?;
    Some(Arc::new(
        FiniteGroup::from_generators(degree, gens).expect("corpus groups are small"),
    ))
}

pub fn corpus() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    CORPUS_NAMES
        .iter()
        .map(|&n| (n, corpus_group(n).expect("known name")))
        .collect()
}

/// Homomorphism between two named corpus groups given by generator images in
/// cycle notation on the target's points.
pub fn corpus_hom(source: &str, target: &str, images: &[&[&[usize]]]) -> Result<GroupHom> {
    let s = corpus_group(source).expect("known source");
    let t = corpus_group(target).expect("known target");
    let imgs: Vec<Perm> = images.iter().map(|c| cyc(t.degree(), c)).collect();
    GroupHom::from_generator_images(s, t, &imgs)
}

/// `S4 → S3` from the action on the three pairings `{01|23}, {02|13}, {03|12}`.
pub fn s4_onto_s3() -> GroupHom {
    let s4 = corpus_group("S4").expect("S4");
    let s3 = corpus_group("S3").expect("S3");
    let pairing = |a: usize, b: usize| -> usize {
        let (a, b) = (a.min(b), a.max(b));
        match (a, b) {
            (0, 1) | (2, 3) => 0,
            (0, 2) | (1, 3) => 1,
            _ => 2,
        }
    };
    let imgs: Vec<Perm> = s4
        .generators()
        .iter()
        .map(|g| {
            let images = [(0, 1), (0, 2), (0, 3)]
                .iter()
                .map(|&(a, b)| pairing(g.image(a), g.image(b)))
                .collect();
            Perm::from_images(images).expect("permutes pairings")
        })
        .collect();
    GroupHom::from_generator_images(s4, s3, &imgs).expect("S4 acts on pairings")
}

/// Ten composable pairs `(φ: G → H, ψ: H → K)` between corpus groups.
pub fn composable_homs() -> Vec<(&'static str, GroupHom, GroupHom)> {
    let h = |s: &str, t: &str, imgs: &[&[&[usize]]]| corpus_hom(s, t, imgs).expect("corpus hom");
    let s3_into_s4 = h("S3", "S4", &[&[&[0, 1]], &[&[0, 1, 2]]]);
    let sign_s3 = h("S3", "Z2", &[&[&[0, 1]], &[]]);
    vec![
        (
            "Z2 -> S3 -> S4",
            h("Z2", "S3", &[&[&[0, 1]]]),
            s3_into_s4.clone(),
        ),
        (
            "Z3 -> A4 -> S4",
            h("Z3", "A4", &[&[&[0, 1, 2]]]),
            h("A4", "S4", &[&[&[0, 1, 2]], &[&[0, 1], &[2, 3]]]),
        ),
        (
            "Z2 -> Z4 -> Z2",
            h("Z2", "Z4", &[&[&[0, 2], &[1, 3]]]),
            h("Z4", "Z2", &[&[&[0, 1]]]),
        ),
        (
            "Z4 -> Z2 -> trivial",
            h("Z4", "Z2", &[&[&[0, 1]]]),
            h("Z2", "trivial", &[&[]]),
        ),
        ("S4 -> S3 -> Z2", s4_onto_s3(), sign_s3.clone()),
        (
            "Q8 -> Z2xZ2 -> Z2",
            h("Q8", "Z2xZ2", &[&[&[0, 1]], &[&[2, 3]]]),
            h("Z2xZ2", "Z2", &[&[&[0, 1]], &[&[0, 1]]]),
        ),
        (
            "D4 -> Z2xZ2 -> Z2",
            h("D4", "Z2xZ2", &[&[&[0, 1]], &[&[2, 3]]]),
            h("Z2xZ2", "Z2", &[&[], &[&[0, 1]]]),
        ),
        (
            "Z6 -> Z3 -> trivial",
            h("Z6", "Z3", &[&[&[0, 1, 2]]]),
            h("Z3", "trivial", &[&[]]),
        ),
        (
            "Z4 -> D4 -> S4",
            h("Z4", "D4", &[&[&[0, 1, 2, 3]]]),
            h("D4", "S4", &[&[&[0, 1, 2, 3]], &[&[1, 3]]]),
        ),
        (
            "D6 -> S3 -> S4",
            h("D6", "S3", &[&[&[0, 1, 2]], &[&[1, 2]]]),
            s3_into_s4,
        ),
    ]
}
