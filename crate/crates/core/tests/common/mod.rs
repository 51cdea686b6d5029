#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use wedgecalc::{shifted_closure, Face, Label, SimplicialComplex, Summand, Wedge64};

pub fn face(v: &[Label]) -> Face {
    Face::new(v.iter().copied()).unwrap()
}

pub fn complex(faces: &[&[Label]]) -> SimplicialComplex {
    SimplicialComplex::from_faces(&faces.iter().map(|f| face(f)).collect::<Vec<_>>()).unwrap()
}

pub fn worked_example() -> SimplicialComplex {
    complex(&[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4]])
}

pub fn square() -> SimplicialComplex {
    complex(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])
}

pub fn projective_plane() -> SimplicialComplex {
    complex(&[
        &[1, 2, 3],
        &[1, 3, 4],
        &[1, 4, 5],
        &[1, 5, 6],
        &[1, 2, 6],
        &[2, 3, 5],
        &[2, 4, 5],
        &[2, 4, 6],
        &[3, 4, 6],
        &[3, 5, 6],
    ])
}

pub fn wedge(terms: &[(u64, u32, &[Label])]) -> Wedge64 {
    Wedge64::from_terms(terms.iter().map(|&(m, j, idx)| (Summand::new(j, idx.iter().copied()).unwrap(), m)))
}

fn random_face(rng: &mut impl Rng, labels: &[Label]) -> Face {
    let size = rng.gen_range(1..=labels.len());
    let mut pick: Vec<Label> = labels.choose_multiple(rng, size).copied().collect();
    pick.sort();
    Face::new(pick).unwrap()
}

/// Shifted closure of a few random faces on `{1..n}`.
pub fn random_shifted(rng: &mut impl Rng, n: u32) -> SimplicialComplex {
    let labels: Vec<Label> = (1..=n).collect();
    let count = rng.gen_range(0..=3);
    let gens: Vec<Face> = (0..count).map(|_| random_face(rng, &labels)).collect();
    shifted_closure(labels, &gens).unwrap()
}

/// Downward closure of random faces on `{1..n}`; ghost vertices allowed.
pub fn random_complex(rng: &mut impl Rng, n: u32) -> SimplicialComplex {
    let labels: Vec<Label> = (1..=n).collect();
    let count = rng.gen_range(1..=6);
    let gens: Vec<Face> = (0..count).map(|_| random_face(rng, &labels)).collect();
    SimplicialComplex::new(labels, &gens).unwrap()
}

/// Two shifted complexes sharing exactly the vertices of a common face `τ`.
pub fn random_glued_pair(rng: &mut impl Rng) -> (SimplicialComplex, SimplicialComplex, Face) {
    loop {
        let n1 = rng.gen_range(1..=5);
        let n2 = rng.gen_range(1..=5);
        let k1 = random_shifted(rng, n1);
        let k2 = random_shifted(rng, n2);
        let faces1 = k1.faces();
        let tau = faces1.choose(rng).unwrap().clone();
        let candidates = k2.faces_of_size(tau.len());
        let Some(sigma) = candidates.choose(rng) else {
            continue;
        };
        // σ ↦ τ in a random matching, everything else onto fresh labels
        let mut targets = tau.vertices().to_vec();
        targets.shuffle(rng);
        let mut map: BTreeMap<Label, Label> = sigma.vertices().iter().copied().zip(targets).collect();
        let mut fresh = n1 + 1;
        for &v in k2.vertices() {
            map.entry(v).or_insert_with(|| {
                fresh += 1;
                fresh - 1
            });
        }
        return (k1, k2.relabel(&map).unwrap(), tau);
    }
}

fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rational reduced Betti numbers from the face lists alone.
pub fn rational_betti(k: &SimplicialComplex) -> Vec<usize> {
    let faces = k.faces();
    let top = faces.iter().map(Face::len).max().unwrap_or(0);
    let by_size: Vec<Vec<Face>> = (0..=top).map(|s| faces.iter().filter(|f| f.len() == s).cloned().collect()).collect();
    // rank of ∂ from size s to size s-1
    let rank = |s: usize| -> usize {
        if s == 0 || s > top {
            return 0;
        }
        let rows = &by_size[s - 1];
        let matrix = rows
            .iter()
            .map(|r| {
                by_size[s]
                    .iter()
                    .map(|c| match c.vertices().iter().position(|v| !r.contains(*v)) {
                        Some(i) if r.is_subset(c) => BigRational::from_integer(if i % 2 == 0 { 1 } else { -1 }.into()),
                        _ => BigRational::zero(),
                    })
                    .collect()
            })
            .collect();
        rational_rank(matrix)
    };
    (0..top).map(|d| by_size[d + 1].len() - rank(d + 1) - rank(d + 2)).collect()
}

/// `⋁_{I∉K} ⋁_d β̃_d(K_I) Σ^{d+1} X̂^I` with rational Betti numbers, by
/// walking every subset of the vertex set.
pub fn oracle_wedge(k: &SimplicialComplex) -> Wedge64 {
    let vs = k.vertices();
    let mut out = Wedge64::new();
    for bits in 1u64..1 << vs.len() {
        let subset: Vec<Label> = (0..vs.len()).filter(|i| bits >> i & 1 == 1).map(|i| vs[i]).collect();
        if k.contains(&Face::new(subset.iter().copied()).unwrap()) {
            continue;
        }
        let sub = k.restriction(subset.iter().copied()).unwrap();
        for (d, b) in rational_betti(&sub).into_iter().enumerate() {
            if b > 0 {
                out.insert(Summand::new(d as u32 + 1, subset.iter().copied()).unwrap(), b as u64);
            }
        }
    }
    out
}
