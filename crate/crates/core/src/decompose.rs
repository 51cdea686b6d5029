//! The inductive decomposition of `(CX,X)^K` for shifted `K`, the closed
//! forms it specializes to, gluing along a common face, and the simplicial
//! wedge substitution.
//!
//! For shifted `K` with minimal vertex `v`, `star(v) = v ∗ link(v)` so
//! `(CX,X)^{star(v)} ≃ (CX,X)^{link(v)}`, which is decomposed recursively.
//! The rest of `K` is reached by adjoining the maximal faces `τ` of
//! `rest(V∖v)` that are missing from `link(v)`. Each adjoin replaces the
//! retract `(∗_{i∈τ} X_i) ⋊ X̄` by `(∗_{i∈τ} X_i ∗ X_v) ⋊ X̄`, where `X̄` is
//! the product over the vertices outside `τ ∪ {v}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use num_integer::binomial;
use serde::Serialize;

use crate::complex::{Face, Label, SimplicialComplex, WedgeComplex};
use crate::error::{Error, Result};
use crate::homology::boundary_is_null;
use crate::num::Multiplicity;
use crate::shifted::{self, VertexOrder};
use crate::wedge::{half_smash_expand, left_half_smash_expand, product_join_expand, substitute_join};
use crate::wedge::{Decomposition, Summand};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    BaseCase,
    ConeReduction,
    AdjoinFace,
    SplitIsolated,
    Glue,
}

impl Action {
    pub fn as_str(self) -> &'static str {
        match self {
            Action::BaseCase => "base-case",
            Action::ConeReduction => "cone-reduction",
            Action::AdjoinFace => "adjoin-face",
            Action::SplitIsolated => "split-isolated",
            Action::Glue => "glue",
        }
    }
}

/// One step of the recursion. Within a single call (same `snapshot`) the
/// records chain: the first starts from the contractible space and each
/// `before` is the previous `after`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "M: Multiplicity"))]
pub struct TraceRecord<M: Multiplicity> {
    pub snapshot: usize,
    pub depth: usize,
    pub vertices: Vec<Label>,
    pub action: Action,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face: Option<Face>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<Vec<Label>>,
    pub state_before: Decomposition<M>,
    pub subtracted: Decomposition<M>,
    pub added: Decomposition<M>,
    pub state_after: Decomposition<M>,
}

impl<M: Multiplicity> TraceRecord<M> {
    fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Self> {
        let labels = |v: &[Label]| v.iter().map(|l| map[l]).sorted().collect_vec();
        Ok(TraceRecord {
            snapshot: self.snapshot,
            depth: self.depth,
            vertices: labels(&self.vertices),
            action: self.action,
            face: self
                .face
                .as_ref()
                .map(|f| Face::new(f.vertices().iter().map(|l| map[l])))
                .transpose()?,
            split: self.split.as_deref().map(labels),
            state_before: self.state_before.relabel(map)?,
            subtracted: self.subtracted.relabel(map)?,
            added: self.added.relabel(map)?,
            state_after: self.state_after.relabel(map)?,
        })
    }

    /// `after == (before ∖ subtracted) ⊎ added`.
    pub fn is_consistent(&self) -> bool {
        self.state_before
            .subtract(&self.subtracted)
            .is_ok_and(|d| d.union(&self.added) == self.state_after)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "M: Multiplicity"))]
#[serde(transparent)]
pub struct Trace<M: Multiplicity> {
    pub records: Vec<TraceRecord<M>>,
}

impl<M: Multiplicity> Trace<M> {
    /// Records of the outermost call.
    pub fn top_level(&self) -> impl Iterator<Item = &TraceRecord<M>> {
        self.records.iter().filter(|r| r.depth == 0)
    }

    /// Folds the outermost records' subtract/add pairs starting from the
    /// contractible space.
    pub fn replay(&self) -> Result<Decomposition<M>> {
        self.top_level().try_fold(Decomposition::new(), |state, r| {
            Ok(state.subtract(&r.subtracted)?.union(&r.added))
        })
    }

    fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Self> {
        Ok(Trace {
            records: self.records.iter().map(|r| r.relabel(map)).collect::<Result<_>>()?,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut step = 0;
        for r in &self.records {
            let indent = "  ".repeat(r.depth);
            let what = match (r.action, &r.face, &r.split) {
                (Action::ConeReduction, Some(f), _) => format!("cone on link{f}"),
                (Action::AdjoinFace, Some(f), _) => format!("adjoin {f}"),
                (Action::SplitIsolated, _, Some(s)) => format!("split off points {{{}}}", s.iter().join(",")),
                (a, _, _) => a.as_str().to_string(),
            };
            let label = if r.depth == 0 && r.action != Action::BaseCase {
                step += 1;
                format!("Step {step}: ")
            } else {
                String::new()
            };
            let _ = writeln!(
                out,
                "{indent}{label}[{}] {} on {{{}}}",
                r.snapshot,
                what,
                r.vertices.iter().join(",")
            );
            if r.action == Action::AdjoinFace {
                let _ = writeln!(out, "{indent}    retract: {}", r.subtracted);
                let _ = writeln!(out, "{indent}    new:     {}", r.added);
            }
            let _ = writeln!(out, "{indent}    ≃ {}", r.state_after);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposed<M: Multiplicity> {
    pub decomposition: Decomposition<M>,
    pub trace: Trace<M>,
}

/// Decomposes `(CX,X)^K` for `K` shifted in its natural label order, with
/// filtration steps in lexicographic order.
pub fn decompose<M: Multiplicity>(k: &SimplicialComplex) -> Result<Decomposed<M>> {
    decompose_with(k, |_| {})
}

/// As [`decompose`], letting `reorder` permute the filtration steps at every
/// level of the recursion.
pub fn decompose_with<M: Multiplicity>(
    k: &SimplicialComplex,
    mut reorder: impl FnMut(&mut Vec<Face>),
) -> Result<Decomposed<M>> {
    if let Some(v) = k.missing_singleton() {
        return Err(Error::MissingSingleton { vertex: v });
    }
    if let Some(w) = shifted::shift_witness(k, &VertexOrder::natural(k))? {
        return Err(w.into());
    }
    let mut run = Run {
        records: Vec::new(),
        next_snapshot: 0,
        reorder: &mut reorder,
    };
    let decomposition = run.go(k, 0)?;
    Ok(Decomposed {
        decomposition,
        trace: Trace {
            records: run.records,
        },
    })
}

/// Decomposes a complex that is shifted under `order` by renumbering its
/// vertices by rank; summands and trace come back in the original labels.
pub fn decompose_in_order<M: Multiplicity>(
    k: &SimplicialComplex,
    order: &VertexOrder,
) -> Result<Decomposed<M>> {
    if order.is_natural() {
        return decompose(k);
    }
    let to_rank: BTreeMap<Label, Label> = order
        .ranked()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as Label + 1))
        .collect();
    let back: BTreeMap<Label, Label> = to_rank.iter().map(|(a, b)| (*b, *a)).collect();
    let ranked = k.relabel(&to_rank)?;
    let d = decompose::<M>(&ranked)?;
    Ok(Decomposed {
        decomposition: d.decomposition.relabel(&back)?,
        trace: d.trace.relabel(&back)?,
    })
}

/// Uses the natural order when it is shifted, otherwise searches for one.
pub fn decompose_any_order<M: Multiplicity>(
    k: &SimplicialComplex,
    perm_limit: u64,
) -> Result<(Decomposed<M>, VertexOrder)> {
    let natural = VertexOrder::natural(k);
    if shifted::is_shifted(k, &natural)? {
        return Ok((decompose(k)?, natural));
    }
    if let Some(v) = k.missing_singleton() {
        return Err(Error::MissingSingleton { vertex: v });
    }
    let order = shifted::find_shifted_order(k, perm_limit)?.ok_or(Error::NoShiftedOrder)?;
    Ok((decompose_in_order(k, &order)?, order))
}

struct Run<'a, M: Multiplicity> {
    records: Vec<TraceRecord<M>>,
    next_snapshot: usize,
    reorder: &'a mut dyn FnMut(&mut Vec<Face>),
}

impl<M: Multiplicity> Run<'_, M> {
    fn record(&mut self, snapshot: usize, depth: usize, k: &SimplicialComplex, action: Action, result: &Decomposition<M>) {
        self.records.push(TraceRecord {
            snapshot,
            depth,
            vertices: k.vertices().to_vec(),
            action,
            face: None,
            split: None,
            state_before: Decomposition::new(),
            subtracted: Decomposition::new(),
            added: result.clone(),
            state_after: result.clone(),
        });
    }

    fn go(&mut self, k: &SimplicialComplex, depth: usize) -> Result<Decomposition<M>> {
        let snapshot = self.next_snapshot;
        self.next_snapshot += 1;
        let vs = k.vertices();

        if vs.len() <= 1 || k.is_full_simplex() {
            self.record(snapshot, depth, k, Action::BaseCase, &Decomposition::new());
            return Ok(Decomposition::new());
        }

        // Isolated vertices of a shifted complex are its largest labels; the
        // rest is glued to them along the empty face.
        let isolated = k.isolated_vertices();
        if !isolated.is_empty() {
            let points = closed_form_disjoint_points(&isolated);
            let result = if isolated.len() == vs.len() {
                points
            } else {
                let core_vs: Vec<Label> = vs.iter().copied().filter(|v| !isolated.contains(v)).collect();
                let core = k.restriction(core_vs.iter().copied())?;
                let d_core = self.go(&core, depth + 1)?;
                decompose_glued(&d_core, &points, &core_vs, &isolated, &Face::empty())?
            };
            self.record(snapshot, depth, k, Action::SplitIsolated, &result);
            self.records.last_mut().expect("just pushed").split = Some(isolated);
            return Ok(result);
        }

        let v = vs[0];
        let apex = Face::new([v])?;
        let link = k.link(&apex)?;
        let mut state = self.go(&link, depth + 1)?;
        self.record(snapshot, depth, k, Action::ConeReduction, &state);
        self.records.last_mut().expect("just pushed").face = Some(apex.clone());

        let mut filt = shifted::filtration_unchecked(k)?;
        (self.reorder)(&mut filt.steps);
        let mut stage = k.star(&apex)?;
        for tau in &filt.steps {
            let (next, mut rec) = adjoin_step(&state, v, tau, &stage)?;
            rec.snapshot = snapshot;
            rec.depth = depth;
            self.records.push(rec);
            state = next;
            let mut gens = stage.maximal_faces();
            gens.push(tau.clone());
            stage = SimplicialComplex::new(vs.to_vec(), &gens)?;
        }
        Ok(state)
    }
}

/// Adjoins the face `τ` to the current stage `K_prev` (a complex on `V`
/// containing `v ∗ ∂τ`), with `X̄` the product over `V ∖ (τ ∪ {v})`.
///
/// Adds `(∗_τ X ∗ X_v) ⋊ X̄`. The map `(∗_τ X) ⋊ X̄ → (CX,X)^{K_prev}` is
/// split coordinatewise: on the summand indexed by `I = τ ∪ S` it is a
/// retraction when `∂τ` is essential in the full subcomplex on `I`, and that
/// summand is removed; when `∂τ` bounds there the map is null and the
/// cofibre gains the summand's suspension.
pub fn adjoin_step<M: Multiplicity>(
    state: &Decomposition<M>,
    v: Label,
    tau: &Face,
    stage: &SimplicialComplex,
) -> Result<(Decomposition<M>, TraceRecord<M>)> {
    let invalid = |reason: String| Err(Error::InvalidStep { reason });
    let vertices = stage.vertices();
    if tau.len() < 2 {
        return invalid(format!("face {tau} has fewer than two vertices"));
    }
    if tau.vertices()[0] <= v {
        return invalid(format!("cone point {v} is not below {tau}"));
    }
    if !vertices.contains(&v) {
        return invalid(format!("cone point {v} is not a vertex"));
    }
    if let Some(x) = tau.vertices().iter().find(|x| !vertices.contains(x)) {
        return invalid(format!("{x} in {tau} is not a vertex"));
    }
    if stage.contains(tau) {
        return invalid(format!("{tau} is already a face"));
    }
    if let Some(f) = tau.facets().into_iter().find(|f| {
        !Face::new(f.vertices().iter().copied().chain([v])).is_ok_and(|c| stage.contains(&c))
    }) {
        return invalid(format!("cone on facet {f} of {tau} is not a face"));
    }
    let k = tau.len() as u32;
    let rest: Vec<Label> = vertices
        .iter()
        .copied()
        .filter(|x| *x != v && !tau.contains(*x))
        .collect();
    let retract = Summand::new(k - 1, tau.vertices().iter().copied())?;
    let coned = Summand::new(k, tau.vertices().iter().copied().chain([v]))?;
    let mut subtracted = Decomposition::new();
    let mut added = half_smash_expand::<M>(&coned, &rest)?;
    for (s, m) in half_smash_expand::<M>(&retract, &rest)?.iter() {
        let full = stage.restriction(s.indices().iter().copied())?;
        if boundary_is_null(&full, tau)? {
            added.insert(Summand::new(s.suspension() + 1, s.indices().iter().copied())?, m.clone());
        } else {
            subtracted.insert(s.clone(), m.clone());
        }
    }
    let after = state.subtract(&subtracted)?.union(&added);
    let record = TraceRecord {
        snapshot: 0,
        depth: 0,
        vertices: vertices.to_vec(),
        action: Action::AdjoinFace,
        face: Some(tau.clone()),
        split: None,
        state_before: state.clone(),
        subtracted,
        added,
        state_after: after.clone(),
    };
    Ok((after, record))
}

/// `(CX,X)^K` for the full `k`-skeleton on `labels`: for every `j`-subset
/// with `j ≥ k+2`, `C(j−1, k+1)` copies of `Σ^{k+1} X̂^I`.
pub fn closed_form_skeleton<M: Multiplicity>(labels: &[Label], k: i64) -> Result<Decomposition<M>> {
    let labels: Vec<Label> = labels.iter().copied().sorted().dedup().collect();
    let n = labels.len();
    if k < 0 || k > n as i64 - 2 {
        return Err(Error::KOutOfRange { k, n });
    }
    let k = k as usize;
    let mut d = Decomposition::new();
    for j in k + 2..=n {
        let mult = binomial(M::from_usize_exact(j - 1), M::from_usize_exact(k + 1));
        for subset in labels.iter().copied().combinations(j) {
            d.insert(Summand::new(k as u32 + 1, subset)?, mult.clone());
        }
    }
    Ok(d)
}

/// `n` disjoint points: `(k−1)` copies of `Σ X̂^I` for every `I` with `|I| = k ≥ 2`.
pub fn closed_form_disjoint_points<M: Multiplicity>(labels: &[Label]) -> Decomposition<M> {
    let labels: Vec<Label> = labels.iter().copied().sorted().dedup().collect();
    let mut d = Decomposition::new();
    for k in 2..=labels.len() {
        for subset in labels.iter().copied().combinations(k) {
            d.insert(
                Summand::new(1, subset).expect("nonempty distinct labels"),
                M::from_usize_exact(k - 1),
            );
        }
    }
    d
}

/// `(CX,X)^{K₁ ∪_τ K₂} ≃ (M∗N) ∨ ((CX,X)^{K₁} ⋊ N) ∨ (M ⋉ (CX,X)^{K₂})` with
/// `M` the product over `V₁∖τ` and `N` over `V₂∖τ`.
pub fn decompose_glued<M: Multiplicity>(
    d1: &Decomposition<M>,
    d2: &Decomposition<M>,
    v1: &[Label],
    v2: &[Label],
    tau: &Face,
) -> Result<Decomposition<M>> {
    let shared: Vec<Label> = v1.iter().copied().filter(|x| v2.contains(x)).sorted().dedup().collect();
    if shared != tau.vertices() {
        return Err(Error::OverlapNotTau {
            tau: tau.clone(),
            shared,
        });
    }
    let only1: Vec<Label> = v1.iter().copied().filter(|x| !tau.contains(*x)).collect();
    let only2: Vec<Label> = v2.iter().copied().filter(|x| !tau.contains(*x)).collect();
    let mut out = if only1.is_empty() || only2.is_empty() {
        Decomposition::new()
    } else {
        product_join_expand(&only1, &only2)?
    };
    out.absorb(&left_half_smash_expand(&only2, d1)?);
    out.absorb(&left_half_smash_expand(&only1, d2)?);
    Ok(out)
}

/// Decomposition of a glued complex from decompositions of its two pieces,
/// each computed under a shifted order (searched for if needed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedDecomposition<M: Multiplicity> {
    pub complex: SimplicialComplex,
    pub decomposition: Decomposition<M>,
    pub trace: Trace<M>,
}

pub fn decompose_gluing<M: Multiplicity>(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
    tau: &Face,
    perm_limit: u64,
) -> Result<GluedDecomposition<M>> {
    let complex = SimplicialComplex::glue(k1, k2, tau)?;
    let (d1, _) = decompose_any_order::<M>(k1, perm_limit)?;
    let (d2, _) = decompose_any_order::<M>(k2, perm_limit)?;
    let decomposition = decompose_glued(&d1.decomposition, &d2.decomposition, k1.vertices(), k2.vertices(), tau)?;
    let shift = |records: Vec<TraceRecord<M>>| {
        records.into_iter().map(|mut r| {
            r.depth += 1;
            r
        })
    };
    let mut records: Vec<TraceRecord<M>> = shift(d1.trace.records).collect();
    let offset = records.iter().map(|r| r.snapshot + 1).max().unwrap_or(0);
    records.extend(shift(d2.trace.records).map(|mut r| {
        r.snapshot += offset;
        r
    }));
    records.push(TraceRecord {
        snapshot: records.iter().map(|r| r.snapshot + 1).max().unwrap_or(0),
        depth: 0,
        vertices: complex.vertices().to_vec(),
        action: Action::Glue,
        face: Some(tau.clone()),
        split: None,
        state_before: Decomposition::new(),
        subtracted: Decomposition::new(),
        added: decomposition.clone(),
        state_after: decomposition.clone(),
    });
    Ok(GluedDecomposition {
        complex,
        decomposition,
        trace: Trace { records },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeDecomposition<M: Multiplicity> {
    pub wedge: WedgeComplex,
    /// Order under which the original complex was decomposed.
    pub order: VertexOrder,
    pub decomposition: Decomposition<M>,
}

/// `(CX,X)^{K(J)}`: decompose `K`, then replace each `X_v` by the join of
/// the spaces on its copies.
pub fn decompose_wedge_construction<M: Multiplicity>(
    k: &SimplicialComplex,
    multiplicities: &BTreeMap<Label, usize>,
    perm_limit: u64,
) -> Result<WedgeDecomposition<M>> {
    let wedge = k.simplicial_wedge(multiplicities)?;
    let (d, order) = decompose_any_order::<M>(k, perm_limit)?;
    let decomposition = substitute_join(&d.decomposition, &wedge.copies)?;
    Ok(WedgeDecomposition {
        wedge,
        order,
        decomposition,
    })
}
