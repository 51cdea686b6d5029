//! Finite simplicial complexes on ordered sets of positive integer labels.
//!
//! A complex is stored by its maximal faces, each a bitmask over the
//! positions of the sorted vertex table. When the closure is small enough
//! the full face set is materialized as well so membership tests are O(1);
//! otherwise membership is answered from the maximal faces.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex label. Labels are positive; their natural order is the vertex order.
pub type Label = u32;

/// Face masks are `u64`, one bit per vertex position.
pub const MAX_VERTICES: usize = 63;

const MATERIALIZE_LIMIT: u128 = 1 << 20;

/// A simplex: a strictly increasing list of labels, possibly empty.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Label>", into = "Vec<Label>")]
pub struct Face(Vec<Label>);

impl Face {
    /// Sorts the labels. Duplicates and the label 0 are rejected.
    pub fn new(labels: impl IntoIterator<Item = Label>) -> Result<Face> {
        let mut v: Vec<Label> = labels.into_iter().collect();
        v.sort_unstable();
        if v.first() == Some(&0) {
            return Err(Error::NonPositiveLabel);
        }
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertexInFace { label: w[0] });
        }
        Ok(Face(v))
    }

    pub fn empty() -> Face {
        Face(Vec::new())
    }

    pub(crate) fn from_sorted(v: Vec<Label>) -> Face {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Face(v)
    }

    pub fn vertices(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: Label) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// The codimension-one faces, in lexicographic order.
    pub fn facets(&self) -> Vec<Face> {
        (0..self.0.len())
            .rev()
            .map(|skip| {
                Face(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect(),
                )
            })
            .collect()
    }

    /// Lexicographic comparison of the label tuples (no length priority).
    pub fn cmp_lex(&self, other: &Face) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl TryFrom<Vec<Label>> for Face {
    type Error = Error;

    fn try_from(v: Vec<Label>) -> Result<Face> {
        Face::new(v)
    }
}

impl From<Face> for Vec<Label> {
    fn from(f: Face) -> Vec<Label> {
        f.0
    }
}

/// Canonical order: by cardinality, then lexicographically.
impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Compares two masks of equal popcount as sorted position sequences.
fn cmp_masks(a: u64, b: u64) -> Ordering {
    match a.count_ones().cmp(&b.count_ones()) {
        Ordering::Equal => {}
        o => return o,
    }
    if a == b {
        return Ordering::Equal;
    }
    let d = a ^ b;
    let low = d & d.wrapping_neg();
    if a & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut sub = Some(m);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

/// Keeps only inclusion-maximal masks, deduplicated, in canonical order.
fn maximalize(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    masks.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(masks.len());
    for m in masks {
        if !kept.iter().any(|&k| m & !k == 0) {
            kept.push(m);
        }
    }
    if kept.is_empty() {
        kept.push(0);
    }
    kept.sort_unstable_by(|&a, &b| cmp_masks(a, b));
    kept
}

/// A finite simplicial complex. The empty face is always present; vertices
/// of the vertex set need not be faces (ghost vertices).
#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: Vec<Label>,
    maximal: Vec<u64>,
    face_set: Option<HashSet<u64>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.maximal == other.maximal
    }
}

impl Eq for SimplicialComplex {}

impl std::hash::Hash for SimplicialComplex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
        self.maximal.hash(state);
    }
}

fn normalize_vertex_set(vertex_set: impl IntoIterator<Item = Label>) -> Result<Vec<Label>> {
    let vertices: Vec<Label> = vertex_set
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if vertices.first() == Some(&0) {
        return Err(Error::NonPositiveLabel);
    }
    if vertices.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            count: vertices.len(),
            limit: MAX_VERTICES,
        });
    }
    Ok(vertices)
}

impl SimplicialComplex {
    /// Downward closure of `generators` on `vertex_set`.
    pub fn new(vertex_set: impl IntoIterator<Item = Label>, generators: &[Face]) -> Result<Self> {
        let vertices = normalize_vertex_set(vertex_set)?;
        let mut masks = Vec::with_capacity(generators.len());
        for g in generators {
            masks.push(mask_in(&vertices, g.vertices())?);
        }
        Ok(Self::from_masks(vertices, masks))
    }

    /// Closure of `generators`, on the union of their vertices.
    pub fn from_faces(generators: &[Face]) -> Result<Self> {
        let vs: Vec<Label> = generators
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        Self::new(vs, generators)
    }

    /// The full simplex on `labels`.
    pub fn simplex(labels: impl IntoIterator<Item = Label>) -> Result<Self> {
        let vertices = normalize_vertex_set(labels)?;
        let full = full_mask(vertices.len());
        Ok(Self::from_masks(vertices, vec![full]))
    }

    fn from_masks(vertices: Vec<Label>, masks: Vec<u64>) -> Self {
        let maximal = maximalize(masks);
        let estimate: u128 = maximal.iter().map(|m| 1u128 << m.count_ones()).sum();
        let face_set = (estimate <= MATERIALIZE_LIMIT).then(|| {
            let mut set = HashSet::new();
            for &m in &maximal {
                set.extend(submasks(m));
            }
            set
        });
        SimplicialComplex {
            vertices,
            maximal,
            face_set,
        }
    }

    fn from_label_faces(vertices: Vec<Label>, faces: impl IntoIterator<Item = Face>) -> Self {
        let masks = faces
            .into_iter()
            .map(|f| mask_in(&vertices, f.vertices()).expect("face vertices in vertex set"))
            .collect();
        Self::from_masks(vertices, masks)
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub(crate) fn position(&self, label: Label) -> Option<usize> {
        self.vertices.binary_search(&label).ok()
    }

    pub(crate) fn mask_of(&self, labels: &[Label]) -> Option<u64> {
        mask_in(&self.vertices, labels).ok()
    }

    pub(crate) fn face_of(&self, mask: u64) -> Face {
        Face(
            (0..self.vertices.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.vertices[i])
                .collect(),
        )
    }

    pub(crate) fn contains_mask(&self, mask: u64) -> bool {
        match &self.face_set {
            Some(set) => set.contains(&mask),
            None => self.maximal.iter().any(|&m| mask & !m == 0),
        }
    }


    /// Every face in canonical order (cardinality, then lexicographic).
    pub(crate) fn face_masks(&self) -> Vec<u64> {
        let mut all: Vec<u64> = match &self.face_set {
            Some(set) => set.iter().copied().collect(),
            None => {
                let mut set = HashSet::new();
                for &m in &self.maximal {
                    set.extend(submasks(m));
                }
                set.into_iter().collect()
            }
        };
        all.sort_unstable_by(|&a, &b| cmp_masks(a, b));
        all
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.mask_of(face.vertices())
            .is_some_and(|m| self.contains_mask(m))
    }

    pub fn maximal_faces(&self) -> Vec<Face> {
        self.maximal.iter().map(|&m| self.face_of(m)).collect()
    }

    pub fn faces(&self) -> Vec<Face> {
        self.face_masks().into_iter().map(|m| self.face_of(m)).collect()
    }

    pub fn num_faces(&self) -> usize {
        match &self.face_set {
            Some(set) => set.len(),
            None => self.face_masks().len(),
        }
    }

    /// Faces of cardinality `k`, lexicographically ordered.
    pub fn faces_of_size(&self, k: usize) -> Vec<Face> {
        self.face_masks()
            .into_iter()
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| self.face_of(m))
            .collect()
    }

    /// Dimension of the largest face; `-1` for `{∅}`.
    pub fn dim(&self) -> i64 {
        self.maximal
            .iter()
            .map(|m| m.count_ones() as i64)
            .max()
            .unwrap_or(0)
            - 1
    }

    pub fn is_full_simplex(&self) -> bool {
        self.maximal == [full_mask(self.vertices.len())]
    }

    /// Vertices that are faces but lie in no edge.
    pub fn isolated_vertices(&self) -> Vec<Label> {
        self.maximal
            .iter()
            .filter(|m| m.count_ones() == 1)
            .map(|&m| self.vertices[m.trailing_zeros() as usize])
            .sorted()
            .collect()
    }

    /// First vertex of the vertex set that is not a face, if any.
    pub fn missing_singleton(&self) -> Option<Label> {
        let covered = self.maximal.iter().fold(0u64, |acc, m| acc | m);
        (0..self.vertices.len())
            .find(|i| covered >> i & 1 == 0)
            .map(|i| self.vertices[i])
    }

    fn require_face(&self, sigma: &Face) -> Result<u64> {
        match self.mask_of(sigma.vertices()) {
            Some(m) if self.contains_mask(m) => Ok(m),
            _ => Err(Error::FaceNotInComplex {
                face: sigma.clone(),
            }),
        }
    }

    /// `{τ | σ∪τ ∈ K}` on the same vertex set.
    pub fn star(&self, sigma: &Face) -> Result<Self> {
        let s = self.require_face(sigma)?;
        let masks = self.maximal.iter().copied().filter(|m| m & s == s).collect();
        Ok(Self::from_masks(self.vertices.clone(), masks))
    }

    /// `star(σ) ∩ restriction(V∖σ)`, on the vertex set `V∖σ`.
    pub fn link(&self, sigma: &Face) -> Result<Self> {
        let s = self.require_face(sigma)?;
        let vertices: Vec<Label> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| !sigma.contains(*v))
            .collect();
        let faces: Vec<Face> = self
            .maximal
            .iter()
            .filter(|&&m| m & s == s)
            .map(|&m| self.face_of(m & !s))
            .collect();
        Ok(Self::from_label_faces(vertices, faces))
    }

    /// Full subcomplex on `subset`: faces contained in it, on vertex set `subset`.
    pub fn restriction(&self, subset: impl IntoIterator<Item = Label>) -> Result<Self> {
        let vertices = normalize_vertex_set(subset)?;
        let s = mask_in(&self.vertices, &vertices)?;
        let faces: Vec<Face> = self.maximal.iter().map(|&m| self.face_of(m & s)).collect();
        Ok(Self::from_label_faces(vertices, faces))
    }

    /// Full subcomplex on the vertices selected by a position mask.
    pub(crate) fn restriction_mask(&self, s: u64) -> Self {
        let vertices: Vec<Label> = (0..self.vertices.len())
            .filter(|i| s >> i & 1 == 1)
            .map(|i| self.vertices[i])
            .collect();
        let faces: Vec<Face> = self.maximal.iter().map(|&m| self.face_of(m & s)).collect();
        Self::from_label_faces(vertices, faces)
    }

    /// `K₁∗K₂ = {σ₁∪σ₂}` on disjoint vertex sets.
    pub fn join(k1: &Self, k2: &Self) -> Result<Self> {
        let shared: Vec<Label> = k1
            .vertices
            .iter()
            .copied()
            .filter(|v| k2.position(*v).is_some())
            .collect();
        if !shared.is_empty() {
            return Err(Error::VertexSetsOverlap { shared });
        }
        let vertices: Vec<Label> = k1
            .vertices
            .iter()
            .chain(&k2.vertices)
            .copied()
            .sorted()
            .collect();
        let mut faces = Vec::new();
        for f1 in k1.maximal_faces() {
            for f2 in k2.maximal_faces() {
                faces.push(Face::from_sorted(
                    f1.vertices()
                        .iter()
                        .chain(f2.vertices())
                        .copied()
                        .sorted()
                        .collect(),
                ));
            }
        }
        Ok(Self::from_label_faces(vertices, faces))
    }

    /// Cone with apex `v`.
    pub fn cone(&self, v: Label) -> Result<Self> {
        Self::join(self, &Self::simplex([v])?)
    }

    /// All faces of cardinality at most `k + 1`; `k = -1` gives `{∅}`.
    pub fn skeleton(labels: impl IntoIterator<Item = Label>, k: i64) -> Result<Self> {
        let vertices = normalize_vertex_set(labels)?;
        let n = vertices.len();
        if k < -1 || k > n as i64 - 1 {
            return Err(Error::KOutOfRange { k, n });
        }
        let size = (k + 1) as usize;
        let masks = (0..n)
            .combinations(size)
            .map(|c| c.into_iter().fold(0u64, |acc, i| acc | 1 << i))
            .collect();
        Ok(Self::from_masks(vertices, masks))
    }

    /// `∂Δ` on `labels`: every proper subset.
    pub fn boundary_simplex(labels: impl IntoIterator<Item = Label>) -> Result<Self> {
        let vertices = normalize_vertex_set(labels)?;
        let n = vertices.len() as i64;
        Self::skeleton(vertices, n - 2)
    }

    /// `K₁ ∪_τ K₂`. The two complexes must meet exactly in the simplex `τ`.
    pub fn glue(k1: &Self, k2: &Self, tau: &Face) -> Result<Self> {
        k1.require_face(tau)?;
        k2.require_face(tau)?;
        let shared: Vec<Label> = k1
            .vertices
            .iter()
            .copied()
            .filter(|v| k2.position(*v).is_some())
            .collect();
        let overlap_err = || Error::OverlapNotExactlyTau { tau: tau.clone() };
        if shared != tau.vertices() {
            return Err(overlap_err());
        }
        let closure: BTreeSet<Face> = Self::simplex(tau.vertices().iter().copied())?
            .faces()
            .into_iter()
            .collect();
        for k in [k1, k2] {
            let on_shared: BTreeSet<Face> = k
                .faces()
                .into_iter()
                .filter(|f| f.is_subset(tau))
                .collect();
            if on_shared != closure {
                return Err(overlap_err());
            }
        }
        let vertices: Vec<Label> = k1
            .vertices
            .iter()
            .chain(&k2.vertices)
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                count: vertices.len(),
                limit: MAX_VERTICES,
            });
        }
        let faces = k1.maximal_faces().into_iter().chain(k2.maximal_faces());
        Ok(Self::from_label_faces(vertices, faces))
    }

    /// Renames vertices through an injective map defined on every vertex.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Self> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            vertices.push(*map.get(v).ok_or(Error::VertexOutOfRange { label: *v })?);
        }
        let normalized = normalize_vertex_set(vertices.iter().copied())?;
        if normalized.len() != vertices.len() {
            return Err(Error::Parse {
                message: "relabeling is not injective".into(),
            });
        }
        let faces: Vec<Face> = self
            .maximal_faces()
            .into_iter()
            .map(|f| Face::new(f.vertices().iter().map(|v| map[v])))
            .collect::<Result<_>>()?;
        Ok(Self::from_label_faces(normalized, faces))
    }

    /// Iterated simplicial wedge `K(J)`: each vertex `v` is replaced by
    /// `J(v)` copies. Fresh labels are assigned in consecutive blocks ordered
    /// by `v`, starting at 1.
    pub fn simplicial_wedge(&self, multiplicities: &BTreeMap<Label, usize>) -> Result<WedgeComplex> {
        if let Some(&v) = multiplicities.keys().find(|v| self.position(**v).is_none()) {
            return Err(Error::VertexOutOfRange { label: v });
        }
        let mut copies: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
        let mut next: Label = 1;
        for &v in &self.vertices {
            let j = *multiplicities
                .get(&v)
                .ok_or(Error::MissingMultiplicity { vertex: v })?;
            if j == 0 {
                return Err(Error::NonpositiveMultiplicity { vertex: v });
            }
            copies.insert(v, (next..next + j as Label).collect());
            next += j as Label;
        }
        if let Some(v) = self.missing_singleton() {
            return Err(Error::MissingSingleton { vertex: v });
        }
        let total = (next - 1) as usize;
        if total > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                count: total,
                limit: MAX_VERTICES,
            });
        }
        let first: BTreeMap<Label, Label> = copies.iter().map(|(v, c)| (*v, c[0])).collect();
        let mut current = self.relabel(&first)?;
        for labels in copies.values() {
            for pair in labels.windows(2) {
                current = current.double_vertex(pair[0], pair[1])?;
            }
        }
        Ok(WedgeComplex {
            complex: current,
            copies,
        })
    }

    /// `K(v) = (v,w)∗link(v) ∪ {v,w}∗rest(V∖v)` with `w` a fresh label.
    fn double_vertex(&self, v: Label, w: Label) -> Result<Self> {
        let vf = Face::from_sorted(vec![v]);
        let link = self.link(&vf)?;
        let rest = self.restriction(self.vertices.iter().copied().filter(|&u| u != v))?;
        let edge = Self::simplex([v, w])?;
        let pair = Self::new([v, w], &[Face::from_sorted(vec![v]), Face::from_sorted(vec![w])])?;
        let a = Self::join(&edge, &link)?;
        let b = Self::join(&pair, &rest)?;
        let vertices: Vec<Label> = self.vertices.iter().copied().chain([w]).sorted().collect();
        let faces = a.maximal_faces().into_iter().chain(b.maximal_faces());
        Ok(Self::from_label_faces(vertices, faces))
    }

    pub fn to_spec(&self) -> ComplexSpec {
        ComplexSpec {
            vertices: Some(self.vertices.clone()),
            maximal_faces: self
                .maximal_faces()
                .into_iter()
                .filter(|f| !f.is_empty())
                .map(Vec::from)
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("complex serializes")
    }

    /// Parses the JSON schema (input starting with `{`) or the text format:
    /// one maximal face per line, labels separated by spaces or commas,
    /// `#` starting a comment.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            Self::from_json(input)
        } else {
            Self::from_text(input)
        }
    }

    pub fn from_json(input: &str) -> Result<Self> {
        let spec: ComplexSpec = serde_json::from_str(input).map_err(|e| Error::Parse {
            message: e.to_string(),
        })?;
        spec.build()
    }

    pub fn from_text(input: &str) -> Result<Self> {
        let mut faces = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let labels = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<Label>().map_err(|e| Error::Parse {
                        message: format!("line {}: {t:?}: {e}", lineno + 1),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            faces.push(Face::new(labels)?);
        }
        Self::from_faces(&faces)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K on {{{}}} with maximal faces {}",
            self.vertices.iter().join(","),
            self.maximal_faces().iter().join(" ")
        )
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form: `{"vertices":[1,2,3,4], "maximal_faces":[[1,2],[1,3]]}`.
/// When `vertices` is omitted the union of the faces is used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Label>>,
    pub maximal_faces: Vec<Vec<Label>>,
}

impl ComplexSpec {
    pub fn build(&self) -> Result<SimplicialComplex> {
        let faces = self
            .maximal_faces
            .iter()
            .map(|f| Face::new(f.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        match &self.vertices {
            Some(vs) => SimplicialComplex::new(vs.iter().copied(), &faces),
            None => SimplicialComplex::from_faces(&faces),
        }
    }
}

/// Result of the simplicial wedge construction together with its label map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeComplex {
    pub complex: SimplicialComplex,
    /// Original vertex → its copies in the new labeling.
    pub copies: BTreeMap<Label, Vec<Label>>,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_in(vertices: &[Label], labels: &[Label]) -> Result<u64> {
    labels.iter().try_fold(0u64, |acc, l| match vertices.binary_search(l) {
        Ok(i) => Ok(acc | 1 << i),
        Err(_) => Err(Error::VertexOutOfRange { label: *l }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(v: &[Label]) -> Face {
        Face::new(v.iter().copied()).unwrap()
    }

    fn faces(list: &[&[Label]]) -> Vec<Face> {
        list.iter().map(|f| face(f)).collect()
    }

    pub(crate) fn sec6() -> SimplicialComplex {
        SimplicialComplex::new(1..=4, &faces(&[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4]])).unwrap()
    }

    /// Brute-force downward closure over all subsets of the vertex set.
    fn closure_oracle(vertices: &[Label], gens: &[Face]) -> BTreeSet<Face> {
        let n = vertices.len();
        let mut out = BTreeSet::new();
        for m in 0u64..(1 << n) {
            let f = Face::from_sorted((0..n).filter(|i| m >> i & 1 == 1).map(|i| vertices[i]).collect());
            if f.is_empty() || gens.iter().any(|g| f.is_subset(g)) {
                out.insert(f);
            }
        }
        out
    }

    #[test]
    fn face_rejects_duplicates_and_zero() {
        assert_eq!(
            Face::new([1, 2, 2]),
            Err(Error::DuplicateVertexInFace { label: 2 })
        );
        assert_eq!(Face::new([0, 1]), Err(Error::NonPositiveLabel));
        assert_eq!(face(&[3, 1, 2]).vertices(), &[1, 2, 3]);
    }

    #[test]
    fn build_single_edge() {
        let k = SimplicialComplex::new([1, 2], &[face(&[1, 2])]).unwrap();
        assert_eq!(k.faces(), faces(&[&[], &[1], &[2], &[1, 2]]));
        assert_eq!(k.maximal_faces(), faces(&[&[1, 2]]));
    }

    #[test]
    fn build_sec6_complex() {
        let k = sec6();
        assert_eq!(k.num_vertices(), 4);
        assert_eq!(k.faces_of_size(2).len(), 5);
        assert_eq!(k.num_faces(), 10);
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn build_empty_complex() {
        let k = SimplicialComplex::new([1, 2, 3], &[]).unwrap();
        assert_eq!(k.faces(), vec![Face::empty()]);
        assert_eq!(k.maximal_faces(), vec![Face::empty()]);
        assert_eq!(k.dim(), -1);
        assert_eq!(k.missing_singleton(), Some(1));
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert_eq!(
            SimplicialComplex::new([1, 2], &[face(&[1, 5])]),
            Err(Error::VertexOutOfRange { label: 5 })
        );
    }

    #[test]
    fn generators_absorbed() {
        let k = SimplicialComplex::new(1..=3, &faces(&[&[1], &[1, 2], &[1, 2, 3], &[2, 3]])).unwrap();
        assert_eq!(k.maximal_faces(), faces(&[&[1, 2, 3]]));
    }

    #[test]
    fn closure_matches_brute_force() {
        let gens = faces(&[&[1, 2, 5], &[2, 3], &[3, 4, 5], &[6]]);
        let k = SimplicialComplex::new(1..=6, &gens).unwrap();
        let got: BTreeSet<Face> = k.faces().into_iter().collect();
        assert_eq!(got, closure_oracle(&[1, 2, 3, 4, 5, 6], &gens));
    }

    #[test]
    fn link_of_vertex_one_in_sec6() {
        let link = sec6().link(&face(&[1])).unwrap();
        assert_eq!(link.vertices(), &[2, 3, 4]);
        assert_eq!(link.faces(), faces(&[&[], &[2], &[3], &[4]]));
    }

    #[test]
    fn star_of_vertex_one_in_sec6() {
        let k = sec6();
        let star = k.star(&face(&[1])).unwrap();
        // brute force {τ | τ ∪ {1} ∈ K} over all 16 subsets
        let mut expected = BTreeSet::new();
        for m in 0u32..16 {
            let t = Face::new((1..=4).filter(|v| m >> (v - 1) & 1 == 1)).unwrap();
            let u = Face::new(t.vertices().iter().copied().chain([1]).collect::<BTreeSet<_>>()).unwrap();
            if k.contains(&u) {
                expected.insert(t);
            }
        }
        assert_eq!(star.faces().into_iter().collect::<BTreeSet<_>>(), expected);
        assert_eq!(
            star.faces(),
            faces(&[&[], &[1], &[2], &[3], &[4], &[1, 2], &[1, 3], &[1, 4]])
        );
    }

    #[test]
    fn empty_face_identities() {
        let k = sec6();
        assert_eq!(k.star(&Face::empty()).unwrap(), k);
        assert_eq!(k.link(&Face::empty()).unwrap(), k);
        assert_eq!(k.restriction(1..=4).unwrap(), k);
    }

    #[test]
    fn star_requires_face() {
        assert!(matches!(
            sec6().star(&face(&[3, 4])),
            Err(Error::FaceNotInComplex { .. })
        ));
    }

    #[test]
    fn joins() {
        let p1 = SimplicialComplex::simplex([1]).unwrap();
        let p2 = SimplicialComplex::simplex([2]).unwrap();
        assert_eq!(
            SimplicialComplex::join(&p1, &p2).unwrap(),
            SimplicialComplex::simplex([1, 2]).unwrap()
        );
        let pts = SimplicialComplex::skeleton([2, 3, 4], 0).unwrap();
        let k = sec6();
        assert_eq!(
            SimplicialComplex::join(&p1, &pts).unwrap(),
            k.star(&face(&[1])).unwrap()
        );
        let e1 = SimplicialComplex::simplex([1, 2]).unwrap();
        let e2 = SimplicialComplex::simplex([3, 4]).unwrap();
        assert_eq!(SimplicialComplex::join(&e1, &e2).unwrap().num_faces(), 16);
        assert!(matches!(
            SimplicialComplex::join(&e1, &e1),
            Err(Error::VertexSetsOverlap { .. })
        ));
    }

    #[test]
    fn skeleta() {
        let b = SimplicialComplex::skeleton([1, 2, 3], 1).unwrap();
        assert_eq!(b.num_faces(), 7);
        assert!(!b.contains(&face(&[1, 2, 3])));
        assert_eq!(b, SimplicialComplex::boundary_simplex([1, 2, 3]).unwrap());
        let pts = SimplicialComplex::skeleton(1..=4, 0).unwrap();
        assert_eq!(pts.isolated_vertices(), vec![1, 2, 3, 4]);
        let two = SimplicialComplex::boundary_simplex([1, 2]).unwrap();
        assert_eq!(two.faces(), faces(&[&[], &[1], &[2]]));
        assert_eq!(
            SimplicialComplex::skeleton(1..=3, -1).unwrap().faces(),
            vec![Face::empty()]
        );
        assert!(matches!(
            SimplicialComplex::skeleton(1..=3, 3),
            Err(Error::KOutOfRange { .. })
        ));
        assert!(matches!(
            SimplicialComplex::skeleton(1..=3, -2),
            Err(Error::KOutOfRange { .. })
        ));
    }

    #[test]
    fn simplicial_wedge_example() {
        let k = SimplicialComplex::new(1..=4, &faces(&[&[1, 2], &[1, 3], &[4]])).unwrap();
        let j: BTreeMap<Label, usize> = [(1, 1), (2, 1), (3, 1), (4, 2)].into();
        let w = k.simplicial_wedge(&j).unwrap();
        assert_eq!(w.copies[&4], vec![4, 5]);
        assert_eq!(
            w.complex.maximal_faces(),
            faces(&[&[4, 5], &[1, 2, 4], &[1, 2, 5], &[1, 3, 4], &[1, 3, 5]])
        );
    }

    #[test]
    fn simplicial_wedge_identity_and_point() {
        let k = sec6();
        let ones: BTreeMap<Label, usize> = (1..=4).map(|v| (v, 1)).collect();
        assert_eq!(k.simplicial_wedge(&ones).unwrap().complex, k);

        let p = SimplicialComplex::simplex([1]).unwrap();
        let w = p.simplicial_wedge(&[(1, 2)].into()).unwrap();
        assert_eq!(w.complex, SimplicialComplex::simplex([1, 2]).unwrap());
    }

    #[test]
    fn simplicial_wedge_relabels_in_blocks() {
        let k = SimplicialComplex::new([2, 5], &faces(&[&[2], &[5]])).unwrap();
        let w = k.simplicial_wedge(&[(2, 3), (5, 1)].into()).unwrap();
        assert_eq!(w.copies[&2], vec![1, 2, 3]);
        assert_eq!(w.copies[&5], vec![4]);
        // two points with J = (3,1) become ∂Δ³
        assert_eq!(w.complex, SimplicialComplex::boundary_simplex(1..=4).unwrap());
    }

    #[test]
    fn simplicial_wedge_errors() {
        let k = sec6();
        assert_eq!(
            k.simplicial_wedge(&[(1, 1), (2, 1), (3, 1)].into()),
            Err(Error::MissingMultiplicity { vertex: 4 })
        );
        assert_eq!(
            k.simplicial_wedge(&[(1, 1), (2, 0), (3, 1), (4, 1)].into()),
            Err(Error::NonpositiveMultiplicity { vertex: 2 })
        );
    }

    #[test]
    fn glue_two_triangle_boundaries() {
        let k1 = SimplicialComplex::boundary_simplex([1, 2, 3]).unwrap();
        let k2 = SimplicialComplex::boundary_simplex([1, 2, 4]).unwrap();
        assert_eq!(SimplicialComplex::glue(&k1, &k2, &face(&[1, 2])).unwrap(), sec6());
    }

    #[test]
    fn glue_disjoint_points() {
        let p1 = SimplicialComplex::simplex([1]).unwrap();
        let p2 = SimplicialComplex::simplex([2]).unwrap();
        let g = SimplicialComplex::glue(&p1, &p2, &Face::empty()).unwrap();
        assert_eq!(g, SimplicialComplex::skeleton([1, 2], 0).unwrap());
        assert_eq!(g.num_faces(), p1.num_faces() + p2.num_faces() - 1);
    }

    #[test]
    fn glue_with_itself_fails() {
        let k = SimplicialComplex::new(1..=4, &faces(&[&[1, 2, 3], &[3, 4]])).unwrap();
        assert_eq!(
            SimplicialComplex::glue(&k, &k, &face(&[1, 2, 3])),
            Err(Error::OverlapNotExactlyTau { tau: face(&[1, 2, 3]) })
        );
    }

    #[test]
    fn isolated_vertices_cases() {
        assert!(sec6().isolated_vertices().is_empty());
        let k = SimplicialComplex::new(1..=3, &faces(&[&[1, 2], &[3]])).unwrap();
        assert_eq!(k.isolated_vertices(), vec![3]);
    }

    #[test]
    fn parse_json_and_text() {
        let j = r#"{"vertices":[1,2,3,4], "maximal_faces":[[1,2],[1,3],[1,4],[2,3],[2,4]]}"#;
        assert_eq!(SimplicialComplex::parse(j).unwrap(), sec6());
        let t = "1 2\n1 3\n# comment\n1 4\n2 3\n\n2 4\n";
        assert_eq!(SimplicialComplex::parse(t).unwrap(), sec6());
        assert!(matches!(
            SimplicialComplex::parse("1 x"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            SimplicialComplex::parse("{\"vertices\": [1]"),
            Err(Error::Parse { .. })
        ));
        let k = sec6();
        assert_eq!(SimplicialComplex::parse(&k.to_json()).unwrap(), k);
    }

    #[test]
    fn too_many_vertices() {
        assert!(matches!(
            SimplicialComplex::simplex(1..=64),
            Err(Error::TooManyVertices { .. })
        ));
        // 63 vertices is allowed; the closure is too large to materialize
        let big = SimplicialComplex::simplex(1..=63).unwrap();
        assert!(big.contains(&face(&[1, 30, 63])));
        assert!(big.face_set.is_none());
    }
}
