//! Reduced integral homology from the augmented simplicial chain complex,
//! and the wedge `⋁_{I∉K} |K_I| ∗ X̂^I` assembled from it.
//!
//! The wedge is always correct after one suspension. It is reported as
//! exact only when `K` is known to be shifted.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{Face, Label, SimplicialComplex};
use crate::error::{Error, Result};
use crate::num::{IntegerRing, Multiplicity};
use crate::shifted::{self, VertexOrder, DEFAULT_PERM_LIMIT};
use crate::snf::{smith_normal_form, Matrix};
use crate::wedge::{Decomposition, Summand};

/// Faces grouped by cardinality, each group in canonical order.
pub struct ChainComplex {
    by_size: Vec<Vec<u64>>,
    index: Vec<HashMap<u64, usize>>,
}

impl ChainComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        let masks = k.face_masks();
        let top = masks.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0);
        let mut by_size = vec![Vec::new(); top + 1];
        for m in masks {
            by_size[m.count_ones() as usize].push(m);
        }
        let index = by_size
            .iter()
            .map(|faces| faces.iter().enumerate().map(|(i, &m)| (m, i)).collect())
            .collect();
        ChainComplex { by_size, index }
    }

    /// Largest `d` with a `d`-face, or `-1` for `{∅}`.
    pub fn dim(&self) -> i64 {
        self.by_size.len() as i64 - 2
    }

    /// Number of `d`-faces; `d = −1` counts the empty face.
    pub fn rank_of_chains(&self, d: i64) -> usize {
        usize::try_from(d + 1)
            .ok()
            .and_then(|s| self.by_size.get(s))
            .map_or(0, Vec::len)
    }

    /// `∂_d`, from `d`-chains to `(d−1)`-chains; `∂_0` is the augmentation.
    /// Removing the `i`-th smallest vertex carries sign `(−1)^i`.
    pub fn boundary<R: IntegerRing>(&self, d: usize) -> Matrix<R> {
        let rows = self.rank_of_chains(d as i64 - 1);
        let cols = self.rank_of_chains(d as i64);
        let mut m = Matrix::zeros(rows, cols);
        if cols == 0 {
            return m;
        }
        for (j, &face) in self.by_size[d + 1].iter().enumerate() {
            for (row, sign) in self.facet_rows(d, face) {
                m.set(row, j, if sign > 0 { R::one() } else { -R::one() });
            }
        }
        m
    }

    /// Rows and signs of the facets of a `d`-simplex given as a mask; the
    /// simplex itself need not be a face.
    fn facet_rows(&self, d: usize, face: u64) -> Vec<(usize, i8)> {
        let mut out = Vec::with_capacity(d + 1);
        let mut rest = face;
        let mut i = 0;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            out.push((self.index[d][&(face & !bit)], if i % 2 == 0 { 1 } else { -1 }));
            i += 1;
        }
        out
    }
}

/// Whether `∂τ` is a boundary in `k` (rationally), for a non-face `τ` all of
/// whose facets lie in `k`. Attaching `τ` then creates a new class one
/// dimension up instead of killing one.
pub fn boundary_is_null(k: &SimplicialComplex, tau: &Face) -> Result<bool> {
    let invalid = |reason: String| Error::InvalidStep { reason };
    if tau.len() < 2 {
        return Err(invalid(format!("face {tau} has fewer than two vertices")));
    }
    let t = k
        .mask_of(tau.vertices())
        .ok_or_else(|| invalid(format!("{tau} is not on the vertex set")))?;
    if k.contains_mask(t) {
        return Err(invalid(format!("{tau} is already a face")));
    }
    if let Some(f) = tau.facets().into_iter().find(|f| !k.contains(f)) {
        return Err(invalid(format!("facet {f} of {tau} is not a face")));
    }
    let chains = ChainComplex::new(k);
    let d = tau.len() - 1;
    let plain = chains.boundary::<BigInt>(d);
    let mut extended = Matrix::zeros(plain.nrows(), plain.ncols() + 1);
    for i in 0..plain.nrows() {
        for j in 0..plain.ncols() {
            extended.set(i, j, plain.get(i, j).clone());
        }
    }
    for (row, sign) in chains.facet_rows(d, t) {
        extended.set(row, plain.ncols(), BigInt::from(sign));
    }
    Ok(smith_normal_form(&extended).rank == smith_normal_form(&plain).rank)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile<R = BigInt> {
    /// `β̃_d` for `d = 0..=dim`.
    pub reduced_betti: Vec<usize>,
    /// Invariant factors greater than one, keyed by dimension.
    pub torsion: BTreeMap<usize, Vec<R>>,
}

impl<R: IntegerRing> HomologyProfile<R> {
    pub fn betti(&self, d: usize) -> usize {
        self.reduced_betti.get(d).copied().unwrap_or(0)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// `Σ (−1)^d β̃_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.reduced_betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.is_torsion_free() && self.reduced_betti.iter().all(|&b| b == 0)
    }

    pub fn to_json(&self) -> Value {
        let betti: BTreeMap<String, usize> = self
            .reduced_betti
            .iter()
            .enumerate()
            .filter(|(_, &b)| b > 0)
            .map(|(d, &b)| (d.to_string(), b))
            .collect();
        let torsion: BTreeMap<String, Vec<String>> = self
            .torsion
            .iter()
            .map(|(d, fs)| (d.to_string(), fs.iter().map(R::to_string).collect()))
            .collect();
        json!({ "reduced_betti": betti, "torsion": torsion })
    }
}

impl<R: IntegerRing> std::fmt::Display for HomologyProfile<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (d, &b) in self.reduced_betti.iter().enumerate() {
            let tors = self.torsion.get(&d);
            if b == 0 && tors.is_none() {
                continue;
            }
            let mut s = format!("H̃{d} = ");
            let mut pieces = Vec::new();
            if b > 0 {
                pieces.push(if b == 1 { "Z".to_string() } else { format!("Z^{b}") });
            }
            for t in tors.into_iter().flatten() {
                pieces.push(format!("Z/{t}"));
            }
            s.push_str(&pieces.join(" ⊕ "));
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "acyclic")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// Reduced homology with arbitrary-precision coefficients.
pub fn reduced_homology(k: &SimplicialComplex) -> Result<HomologyProfile<BigInt>> {
    reduced_homology_in(k)
}

pub fn reduced_homology_in<R: IntegerRing>(k: &SimplicialComplex) -> Result<HomologyProfile<R>> {
    let chains = ChainComplex::new(k);
    let dim = chains.dim();
    if dim < 0 {
        return Err(Error::VoidComplex);
    }
    let dim = dim as usize;
    // ranks[d] = rank ∂_d for d = 0..=dim+1
    let mut ranks = Vec::with_capacity(dim + 2);
    let mut torsion = BTreeMap::new();
    for d in 0..=dim + 1 {
        let snf = smith_normal_form(&chains.boundary::<R>(d));
        ranks.push(snf.rank);
        let t = snf.torsion();
        if d >= 1 && !t.is_empty() {
            torsion.insert(d - 1, t);
        }
    }
    let reduced_betti = (0..=dim)
        .map(|d| chains.rank_of_chains(d as i64) - ranks[d] - ranks[d + 1])
        .collect();
    Ok(HomologyProfile {
        reduced_betti,
        torsion,
    })
}

/// `Σ_{σ≠∅} (−1)^{|σ|−1} − 1`.
pub fn reduced_euler_from_faces(k: &SimplicialComplex) -> i64 {
    k.face_masks()
        .iter()
        .map(|m| if m.count_ones() % 2 == 1 { 1 } else { -1 })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Validity {
    Exact,
    SuspendedOnly,
}

impl Validity {
    pub fn as_str(self) -> &'static str {
        match self {
            Validity::Exact => "exact",
            Validity::SuspendedOnly => "suspended-only",
        }
    }
}

/// How the exactness flag was decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftedCheck {
    /// A shifted order was found.
    Shifted(VertexOrder),
    /// No vertex order makes the complex shifted.
    NotShifted,
    /// Too many vertices to search; the caller vouched for shiftedness.
    Asserted,
    /// Too many vertices to search and no assertion.
    Unchecked,
}

impl ShiftedCheck {
    pub fn is_shifted(&self) -> bool {
        matches!(self, ShiftedCheck::Shifted(_) | ShiftedCheck::Asserted)
    }

    pub fn describe(&self) -> String {
        match self {
            ShiftedCheck::Shifted(o) => format!("shifted under {o}"),
            ShiftedCheck::NotShifted => "not shifted under any order".into(),
            ShiftedCheck::Asserted => "shiftedness asserted by caller".into(),
            ShiftedCheck::Unchecked => "shiftedness not checked".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbcgOptions {
    pub max_vertices: usize,
    /// Trust shiftedness when the vertex set is too large to search.
    pub assume_shifted: bool,
    pub perm_limit: u64,
    pub keep_profiles: bool,
}

impl Default for BbcgOptions {
    fn default() -> Self {
        BbcgOptions {
            max_vertices: 20,
            assume_shifted: false,
            perm_limit: DEFAULT_PERM_LIMIT,
            keep_profiles: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetHomology {
    pub subset: Vec<Label>,
    pub profile: HomologyProfile<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbcgResult<M: Multiplicity> {
    pub decomposition: Decomposition<M>,
    pub validity: Validity,
    pub shifted: ShiftedCheck,
    /// Missing subsets whose full subcomplex has torsion.
    pub torsion_subsets: Vec<Vec<Label>>,
    /// Every missing subset with its homology, when requested.
    pub profiles: Vec<SubsetHomology>,
}

impl<M: Multiplicity> BbcgResult<M> {
    pub fn torsion_present(&self) -> bool {
        !self.torsion_subsets.is_empty()
    }
}

pub fn bbcg<M: Multiplicity>(k: &SimplicialComplex, opts: &BbcgOptions) -> Result<BbcgResult<M>> {
    if let Some(v) = k.missing_singleton() {
        return Err(Error::MissingSingleton { vertex: v });
    }
    let n = k.num_vertices();
    if n > opts.max_vertices {
        return Err(Error::TooManyVertices {
            count: n,
            limit: opts.max_vertices,
        });
    }

    let shifted = if n <= shifted::max_vertices_for(opts.perm_limit) {
        match shifted::find_shifted_order(k, opts.perm_limit)? {
            Some(order) => ShiftedCheck::Shifted(order),
            None => ShiftedCheck::NotShifted,
        }
    } else if opts.assume_shifted {
        ShiftedCheck::Asserted
    } else {
        ShiftedCheck::Unchecked
    };

    let mut decomposition = Decomposition::new();
    let mut torsion_subsets = Vec::new();
    let mut profiles = Vec::new();
    for subset in subsets_by_size(n) {
        if k.contains_mask(subset) {
            continue;
        }
        let sub = k.restriction_mask(subset);
        let profile = reduced_homology(&sub)?;
        let labels = sub.vertices().to_vec();
        for (d, &b) in profile.reduced_betti.iter().enumerate() {
            if b > 0 {
                decomposition.insert(Summand::new(d as u32 + 1, labels.iter().copied())?, M::from_usize_exact(b));
            }
        }
        if !profile.is_torsion_free() {
            if shifted.is_shifted() {
                return Err(Error::UnexpectedTorsion { subset: labels });
            }
            torsion_subsets.push(labels.clone());
        }
        if opts.keep_profiles {
            profiles.push(SubsetHomology {
                subset: labels,
                profile,
            });
        }
    }
    let validity = if shifted.is_shifted() {
        Validity::Exact
    } else {
        Validity::SuspendedOnly
    };
    Ok(BbcgResult {
        decomposition,
        validity,
        shifted,
        torsion_subsets,
        profiles,
    })
}

/// Nonempty position masks on `n` bits, by cardinality then lexicographic.
fn subsets_by_size(n: usize) -> impl Iterator<Item = u64> {
    (1..=n).flat_map(move |size| {
        itertools::Itertools::combinations(0..n, size).map(|c| c.iter().fold(0u64, |m, &i| m | 1 << i))
    })
}
