//! Shifted complexes in the natural order: closures and exhaustive listing.

use std::collections::{HashSet, VecDeque};

use crate::complex::{Face, Label, SimplicialComplex};
use crate::error::Result;
use crate::shifted::is_naturally_shifted;

/// Smallest complex on `labels` that contains `generators` and every
/// singleton, and is shifted in the natural order.
pub fn shifted_closure(labels: impl IntoIterator<Item = Label>, generators: &[Face]) -> Result<SimplicialComplex> {
    let points = SimplicialComplex::skeleton(labels, 0)?;
    let vertices = points.vertices().to_vec();
    let n = vertices.len();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut queue: VecDeque<u64> = (0..n).map(|i| 1u64 << i).collect();
    for g in generators {
        queue.push_back(points.mask_of(g.vertices()).ok_or_else(|| missing_vertex(&vertices, g))?);
    }
    while let Some(m) = queue.pop_front() {
        if !seen.insert(m) {
            continue;
        }
        for i in (0..n).filter(|i| m >> i & 1 == 1) {
            queue.push_back(m & !(1 << i));
            // replace position i by any smaller free position
            for j in (0..i).filter(|j| m >> j & 1 == 0) {
                queue.push_back(m & !(1 << i) | 1 << j);
            }
        }
    }
    let faces: Vec<Face> = seen.into_iter().map(|m| points.face_of(m)).collect();
    SimplicialComplex::new(vertices, &faces)
}

fn missing_vertex(vertices: &[Label], g: &Face) -> crate::error::Error {
    let label = g
        .vertices()
        .iter()
        .copied()
        .find(|v| !vertices.contains(v))
        .unwrap_or_default();
    crate::error::Error::VertexOutOfRange { label }
}

/// Every complex on `{1..n}` that contains all singletons and is shifted in
/// the natural order, found breadth-first from the `n` points by adding one
/// face at a time. Sorted canonically.
pub fn all_shifted(n: u32) -> Result<Vec<SimplicialComplex>> {
    let start = SimplicialComplex::skeleton(1..=n, 0)?;
    let mut seen: HashSet<SimplicialComplex> = HashSet::new();
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(k) = queue.pop_front() {
        if !seen.insert(k.clone()) {
            continue;
        }
        for f in addable_faces(&k) {
            let mut gens = k.maximal_faces();
            gens.push(f);
            let next = SimplicialComplex::new(k.vertices().to_vec(), &gens)?;
            if !seen.contains(&next) && is_naturally_shifted(&next) {
                queue.push_back(next);
            }
        }
        out.push(k);
    }
    out.sort_by_cached_key(|k| {
        let mut faces = k.faces();
        faces.sort();
        (faces.len(), faces)
    });
    Ok(out)
}

/// Non-faces all of whose facets are faces.
pub fn addable_faces(k: &SimplicialComplex) -> Vec<Face> {
    let n = k.num_vertices();
    let mut out = Vec::new();
    for m in 1..(1u64 << n) {
        if !k.contains_mask(m) && (0..n).filter(|i| m >> i & 1 == 1).all(|i| k.contains_mask(m & !(1 << i))) {
            out.push(k.face_of(m));
        }
    }
    out.sort();
    out
}
