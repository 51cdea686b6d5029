//! Shiftedness: a vertex order under which every face stays a face when any
//! of its vertices is swapped for a smaller one.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, Label, SimplicialComplex};
use crate::error::{Error, Result};

/// 9! permutations.
pub const DEFAULT_PERM_LIMIT: u64 = 362_880;

/// A total order on a vertex set, stored as the vertices listed from
/// smallest to largest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexOrder {
    ranked: Vec<Label>,
}

impl VertexOrder {
    /// The order `ranked[0] < ranked[1] < …`. Labels must be distinct.
    pub fn new(ranked: Vec<Label>) -> Result<Self> {
        if let Some(&d) = ranked.iter().duplicates().next() {
            return Err(Error::DuplicateVertexInFace { label: d });
        }
        Ok(VertexOrder { ranked })
    }

    /// Natural order of the labels.
    pub fn natural(k: &SimplicialComplex) -> Self {
        VertexOrder {
            ranked: k.vertices().to_vec(),
        }
    }

    pub fn ranked(&self) -> &[Label] {
        &self.ranked
    }

    /// 1-based rank of a label.
    pub fn rank(&self, label: Label) -> Option<usize> {
        self.ranked.iter().position(|&v| v == label).map(|p| p + 1)
    }

    pub fn is_natural(&self) -> bool {
        self.ranked.windows(2).all(|w| w[0] < w[1])
    }

    fn check_total(&self, k: &SimplicialComplex) -> Result<()> {
        let mut sorted = self.ranked.clone();
        sorted.sort_unstable();
        if sorted != k.vertices() {
            let label = sorted
                .iter()
                .chain(k.vertices())
                .find(|v| !sorted.contains(v) || !k.vertices().contains(v))
                .copied()
                .unwrap_or(0);
            return Err(Error::VertexOutOfRange { label });
        }
        Ok(())
    }

    /// Positions (in `k`'s vertex table) listed in this order.
    fn positions(&self, k: &SimplicialComplex) -> Vec<usize> {
        self.ranked
            .iter()
            .map(|&v| k.position(v).expect("order checked against complex"))
            .collect()
    }
}

impl fmt::Display for VertexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ranked.iter().join("<"))
    }
}

/// A face `σ`, a vertex `ν ∈ σ` and a smaller vertex `ν′ ∉ σ` with
/// `(σ−ν)∪ν′` missing from the complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftWitness {
    pub face: Face,
    pub removed: Label,
    pub inserted: Label,
}

impl ShiftWitness {
    pub fn shifted_face(&self) -> Face {
        Face::new(
            self.face
                .vertices()
                .iter()
                .copied()
                .filter(|&v| v != self.removed)
                .chain([self.inserted]),
        )
        .expect("inserted vertex is outside the face")
    }
}

impl From<ShiftWitness> for Error {
    fn from(w: ShiftWitness) -> Error {
        Error::NotShifted {
            face: w.face,
            removed: w.removed,
            inserted: w.inserted,
        }
    }
}

/// First violation of the shift condition under `order`, scanning faces in
/// canonical order and swaps in increasing rank.
pub fn shift_witness(k: &SimplicialComplex, order: &VertexOrder) -> Result<Option<ShiftWitness>> {
    order.check_total(k)?;
    Ok(witness_in(k, &order.positions(k)))
}

fn witness_in(k: &SimplicialComplex, by_rank: &[usize]) -> Option<ShiftWitness> {
    for f in k.face_masks() {
        for (r, &nu) in by_rank.iter().enumerate() {
            if f >> nu & 1 == 0 {
                continue;
            }
            let without = f & !(1 << nu);
            for &nu2 in &by_rank[..r] {
                if f >> nu2 & 1 == 1 {
                    continue;
                }
                if !k.contains_mask(without | 1 << nu2) {
                    return Some(ShiftWitness {
                        face: k.face_of(f),
                        removed: k.vertices()[nu],
                        inserted: k.vertices()[nu2],
                    });
                }
            }
        }
    }
    None
}

pub fn is_shifted(k: &SimplicialComplex, order: &VertexOrder) -> Result<bool> {
    Ok(shift_witness(k, order)?.is_none())
}

/// Shiftedness under the natural label order.
pub fn is_naturally_shifted(k: &SimplicialComplex) -> bool {
    witness_in(k, &(0..k.num_vertices()).collect_vec()).is_none()
}

/// Largest `n` with `n! <= perm_limit`.
pub fn max_vertices_for(perm_limit: u64) -> usize {
    let mut n = 0usize;
    let mut fact = 1u64;
    loop {
        match fact.checked_mul(n as u64 + 1) {
            Some(next) if next <= perm_limit => {
                n += 1;
                fact = next;
            }
            _ => return n.max(1),
        }
    }
}

/// Lexicographically least order (as a sequence of labels) making `k`
/// shifted, or `None`.
pub fn find_shifted_order(k: &SimplicialComplex, perm_limit: u64) -> Result<Option<VertexOrder>> {
    find_shifted_order_with(k, perm_limit, true)
}

/// As [`find_shifted_order`]; `prune` skips orders whose face counts per
/// vertex are not nonincreasing. A shifted order always has nonincreasing
/// counts (swapping `w` for a smaller `u` injects faces through `w` into faces
/// through `u`), so pruning never changes the answer.
pub fn find_shifted_order_with(
    k: &SimplicialComplex,
    perm_limit: u64,
    prune: bool,
) -> Result<Option<VertexOrder>> {
    let n = k.num_vertices();
    let limit = max_vertices_for(perm_limit);
    if n > limit {
        return Err(Error::TooManyVertices { count: n, limit });
    }
    let faces = k.face_masks();
    let counts: Vec<usize> = (0..n)
        .map(|i| faces.iter().filter(|f| *f >> i & 1 == 1).count())
        .collect();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let found = search(k, &counts, prune, &mut perm, &mut used);
    Ok(found.map(|p| VertexOrder {
        ranked: p.into_iter().map(|i| k.vertices()[i]).collect(),
    }))
}

fn search(
    k: &SimplicialComplex,
    counts: &[usize],
    prune: bool,
    perm: &mut Vec<usize>,
    used: &mut [bool],
) -> Option<Vec<usize>> {
    let n = counts.len();
    if perm.len() == n {
        return witness_in(k, perm).is_none().then(|| perm.clone());
    }
    for c in 0..n {
        if used[c] {
            continue;
        }
        if prune && perm.last().is_some_and(|&p| counts[c] > counts[p]) {
            continue;
        }
        used[c] = true;
        perm.push(c);
        let r = search(k, counts, prune, perm, used);
        perm.pop();
        used[c] = false;
        if r.is_some() {
            return r;
        }
    }
    None
}

/// `link(v) = L₀ ⊆ L₁ ⊆ … ⊆ rest(V∖v)` where `v` is the minimal vertex and
/// each step adjoins one face `τᵢ` whose boundary already lies in `L₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub apex: Label,
    pub base: SimplicialComplex,
    pub steps: Vec<Face>,
}

/// Filtration of a complex shifted in its natural order. Steps are sorted
/// lexicographically.
pub fn filtration(k: &SimplicialComplex) -> Result<Filtration> {
    if let Some(w) = witness_in(k, &(0..k.num_vertices()).collect_vec()) {
        return Err(w.into());
    }
    filtration_unchecked(k)
}

pub(crate) fn filtration_unchecked(k: &SimplicialComplex) -> Result<Filtration> {
    let apex = *k.vertices().first().ok_or(Error::VoidComplex)?;
    let apex_face = Face::new([apex])?;
    if !k.contains(&apex_face) {
        return Err(Error::MissingSingleton { vertex: apex });
    }
    let base = k.link(&apex_face)?;
    let rest = k.restriction(k.vertices()[1..].iter().copied())?;
    let mut steps: Vec<Face> = rest
        .maximal_faces()
        .into_iter()
        .filter(|f| !base.contains(f))
        .collect();
    steps.sort_by(|a, b| a.cmp_lex(b));
    for tau in &steps {
        for facet in tau.facets() {
            if !base.contains(&facet) {
                return Err(Error::BoundaryNotInLink {
                    face: tau.clone(),
                    facet,
                });
            }
        }
    }
    Ok(Filtration { apex, base, steps })
}
