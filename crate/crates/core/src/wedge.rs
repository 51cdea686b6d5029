//! Formal wedges of suspended smash products.
//!
//! A [`Summand`] `⟨j; I⟩` stands for `Σ^j X_{i₁}∧…∧X_{i_k}`. A
//! [`Decomposition`] is a finite multiset of summands; the empty multiset is
//! the contractible space. Two summands are identified exactly when their
//! suspension degrees and index sets agree.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::complex::Label;
use crate::error::{Error, Result};
use crate::num::Multiplicity;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Summand {
    suspension: u32,
    indices: Vec<Label>,
}

impl Summand {
    pub fn new(suspension: u32, indices: impl IntoIterator<Item = Label>) -> Result<Self> {
        let mut indices: Vec<Label> = indices.into_iter().collect();
        indices.sort_unstable();
        if indices.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if indices[0] == 0 {
            return Err(Error::NonPositiveLabel);
        }
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertexInFace { label: w[0] });
        }
        Ok(Summand {
            suspension,
            indices,
        })
    }

    pub fn suspension(&self) -> u32 {
        self.suspension
    }

    pub fn indices(&self) -> &[Label] {
        &self.indices
    }

    fn with_indices(&self, extra: &[Label], suspension: u32) -> Summand {
        Summand {
            suspension,
            indices: self.indices.iter().chain(extra).copied().sorted().collect(),
        }
    }
}

/// Canonical order: by number of indices, then the indices
/// lexicographically, then suspension degree.
impl Ord for Summand {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices
            .len()
            .cmp(&other.indices.len())
            .then_with(|| self.indices.cmp(&other.indices))
            .then_with(|| self.suspension.cmp(&other.suspension))
    }
}

impl PartialOrd for Summand {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.suspension {
            0 => {}
            1 => f.write_str("Σ ")?,
            j => write!(f, "Σ^{j} ")?,
        }
        write!(f, "{}", self.indices.iter().map(|i| format!("X{i}")).join("∧"))
    }
}

impl fmt::Debug for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{};{{{}}}⟩", self.suspension, self.indices.iter().join(","))
    }
}

/// `X_{i₁}∗…∗X_{i_k} ≃ Σ^{k−1} X_{i₁}∧…∧X_{i_k}`.
pub fn join_closed_form(indices: impl IntoIterator<Item = Label>) -> Result<Summand> {
    let indices: Vec<Label> = indices.into_iter().collect();
    let k = indices.len() as u32;
    Summand::new(k.saturating_sub(1), indices)
}

/// `⟨a;I⟩ ∗ ⟨b;J⟩ = ⟨a+b+1; I∪J⟩` for disjoint `I`, `J`.
pub fn join_summands(s1: &Summand, s2: &Summand) -> Result<Summand> {
    let shared = shared_labels(&s1.indices, &s2.indices);
    if !shared.is_empty() {
        return Err(Error::IndexSetsOverlap { shared });
    }
    Ok(s1.with_indices(&s2.indices, s1.suspension + s2.suspension + 1))
}

fn shared_labels(a: &[Label], b: &[Label]) -> Vec<Label> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

fn label_set(labels: impl IntoIterator<Item = Label>) -> Vec<Label> {
    labels.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// A finite multiset of summands with positive multiplicities.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Decomposition<M = BigUint> {
    terms: BTreeMap<Summand, M>,
}

impl<M: Multiplicity> Default for Decomposition<M> {
    fn default() -> Self {
        Self::new()
    }
}

impl<M: Multiplicity> Decomposition<M> {
    /// The contractible space.
    pub fn new() -> Self {
        Decomposition {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Summand, M)>) -> Self {
        let mut d = Self::new();
        for (s, m) in terms {
            d.insert(s, m);
        }
        d
    }

    /// Each summand with multiplicity one (repeats accumulate).
    pub fn from_summands(summands: impl IntoIterator<Item = Summand>) -> Self {
        Self::from_terms(summands.into_iter().map(|s| (s, M::one())))
    }

    pub fn insert(&mut self, s: Summand, m: M) {
        if m.is_zero() {
            return;
        }
        *self.terms.entry(s).or_insert_with(M::zero) += m;
    }

    pub fn is_contractible(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct summands.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> M {
        self.terms.values().fold(M::zero(), |acc, m| acc + m.clone())
    }

    pub fn multiplicity(&self, s: &Summand) -> M {
        self.terms.get(s).cloned().unwrap_or_else(M::zero)
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Summand, &M)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.terms
            .keys()
            .flat_map(|s| s.indices.iter().copied())
            .collect()
    }

    /// Multiset union `self ⊎ other`.
    pub fn union(&self, other: &Self) -> Self {
        let mut d = self.clone();
        d.absorb(other);
        d
    }

    pub fn absorb(&mut self, other: &Self) {
        for (s, m) in other.iter() {
            self.insert(s.clone(), m.clone());
        }
    }

    /// Multiset difference; `other` must be a sub-multiset.
    pub fn subtract(&self, other: &Self) -> Result<Self> {
        let mut d = self.clone();
        for (s, m) in other.iter() {
            let have = d.terms.get(s).cloned().unwrap_or_else(M::zero);
            let left = have.checked_sub(m).ok_or_else(|| Error::NotASubMultiset {
                missing: if m.is_one() {
                    s.to_string()
                } else {
                    format!("{m}·{s}")
                },
            })?;
            if left.is_zero() {
                d.terms.remove(s);
            } else {
                d.terms.insert(s.clone(), left);
            }
        }
        Ok(d)
    }

    /// Renames index labels through an injective map.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Self> {
        let lists: BTreeMap<Label, Vec<Label>> = map.iter().map(|(k, v)| (*k, vec![*v])).collect();
        substitute_join(self, &lists)
    }

    pub fn render(&self, format: RenderFormat) -> String {
        canonical_render(self, format)
    }
}

impl<M: Multiplicity> fmt::Display for Decomposition<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("∗");
        }
        let parts = self.terms.iter().map(|(s, m)| {
            if m.is_one() {
                s.to_string()
            } else {
                format!("{m}·{s}")
            }
        });
        write!(f, "{}", parts.format(" ∨ "))
    }
}

impl<M: Multiplicity> fmt::Debug for Decomposition<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `ΣM ⋊ ∏_{t∈T} X_t ≃ ⋁_{S⊆T} Σ M∧X̂^S`: one term per subset of `T`.
pub fn half_smash_expand<M: Multiplicity>(s: &Summand, over: &[Label]) -> Result<Decomposition<M>> {
    if s.suspension == 0 {
        return Err(Error::NotASuspension {
            summand: s.to_string(),
        });
    }
    let over = label_set(over.iter().copied());
    let shared = shared_labels(&s.indices, &over);
    if !shared.is_empty() {
        return Err(Error::OverlappingIndices { shared });
    }
    Ok(Decomposition::from_summands(
        over.iter()
            .copied()
            .powerset()
            .map(|sub| s.with_indices(&sub, s.suspension)),
    ))
}

/// `(∏_S X_i) ∗ (∏_T X_j) ≃ ⋁_{∅≠A⊆S, ∅≠B⊆T} Σ X̂^A∧X̂^B`.
pub fn product_join_expand<M: Multiplicity>(left: &[Label], right: &[Label]) -> Result<Decomposition<M>> {
    let left = label_set(left.iter().copied());
    let right = label_set(right.iter().copied());
    if left.is_empty() || right.is_empty() {
        return Err(Error::EmptyFactor);
    }
    let shared = shared_labels(&left, &right);
    if !shared.is_empty() {
        return Err(Error::OverlappingIndices { shared });
    }
    let mut d = Decomposition::new();
    for a in left.iter().copied().powerset().skip(1) {
        for b in right.iter().copied().powerset().skip(1) {
            d.insert(Summand::new(1, a.iter().chain(&b).copied())?, M::one());
        }
    }
    Ok(d)
}

/// `(∏_S X_i) ⋉ d`, summand by summand. Left and right half-smash products
/// expand identically here.
pub fn left_half_smash_expand<M: Multiplicity>(
    over: &[Label],
    d: &Decomposition<M>,
) -> Result<Decomposition<M>> {
    let mut out = Decomposition::new();
    for (s, m) in d.iter() {
        for (t, _) in half_smash_expand::<M>(s, over)?.iter() {
            out.insert(t.clone(), m.clone());
        }
    }
    Ok(out)
}

/// Multiset difference `d1 ∖ d2`.
pub fn subtract<M: Multiplicity>(d1: &Decomposition<M>, d2: &Decomposition<M>) -> Result<Decomposition<M>> {
    d1.subtract(d2)
}

/// Replaces each `X_i` by the join of the spaces labelled `J(i)`:
/// `⟨a;I⟩ ↦ ⟨a + Σ_{i∈I}(|J(i)|−1); ⋃ J(i)⟩`.
pub fn substitute_join<M: Multiplicity>(
    d: &Decomposition<M>,
    replacement: &BTreeMap<Label, Vec<Label>>,
) -> Result<Decomposition<M>> {
    let mut seen = BTreeSet::new();
    for list in replacement.values() {
        if list.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        for &l in list {
            if !seen.insert(l) {
                return Err(Error::OverlappingReplacementLabels { label: l });
            }
        }
    }
    let mut out = Decomposition::new();
    for (s, m) in d.iter() {
        let mut susp = s.suspension;
        let mut indices = Vec::new();
        for i in &s.indices {
            let list = replacement
                .get(i)
                .ok_or(Error::MissingSubstitution { label: *i })?;
            susp += list.len() as u32 - 1;
            indices.extend_from_slice(list);
        }
        out.insert(Summand::new(susp, indices)?, m.clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderFormat {
    #[default]
    Text,
    Json,
}

/// Text: `Σ X3∧X4 ∨ 2·Σ^2 X1∧X2∧X3∧X4`, `∗` when contractible.
/// JSON: sorted array of `{"suspension","indices","multiplicity"}`.
pub fn canonical_render<M: Multiplicity>(d: &Decomposition<M>, format: RenderFormat) -> String {
    match format {
        RenderFormat::Text => d.to_string(),
        RenderFormat::Json => serde_json::to_string(d).expect("decomposition serializes"),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CountRepr {
    Small(u64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    suspension: u32,
    indices: Vec<Label>,
    multiplicity: CountRepr,
}

impl<M: Multiplicity> Serialize for Decomposition<M> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(s, m)| TermRepr {
            suspension: s.suspension,
            indices: s.indices.clone(),
            multiplicity: match m.to_u64() {
                Some(x) => CountRepr::Small(x),
                None => CountRepr::Big(m.to_string()),
            },
        }))
    }
}

impl<'de, M: Multiplicity> Deserialize<'de> for Decomposition<M> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut d = Decomposition::new();
        for t in terms {
            let s = Summand::new(t.suspension, t.indices).map_err(de::Error::custom)?;
            let m = match t.multiplicity {
                CountRepr::Small(x) => M::from_u64(x),
                CountRepr::Big(text) => M::from_str_radix(&text, 10).ok(),
            }
            .ok_or_else(|| de::Error::custom("multiplicity out of range"))?;
            d.insert(s, m);
        }
        Ok(d)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn sm(j: u32, idx: &[Label]) -> Summand {
        Summand::new(j, idx.iter().copied()).unwrap()
    }

    pub(crate) fn dec(terms: &[(u64, u32, &[Label])]) -> Decomposition<u64> {
        Decomposition::from_terms(terms.iter().map(|&(m, j, idx)| (sm(j, idx), m)))
    }

    #[test]
    fn closed_form_joins() {
        assert_eq!(join_closed_form([1, 2]).unwrap(), sm(1, &[1, 2]));
        assert_eq!(join_closed_form([2, 3, 4]).unwrap(), sm(2, &[2, 3, 4]));
        assert_eq!(join_closed_form([5]).unwrap(), sm(0, &[5]));
        assert_eq!(join_closed_form([]), Err(Error::EmptyIndexSet));
    }

    #[test]
    fn joining_summands() {
        assert_eq!(join_summands(&sm(1, &[2, 3]), &sm(0, &[1])).unwrap(), sm(2, &[1, 2, 3]));
        assert_eq!(join_summands(&sm(0, &[1]), &sm(0, &[2])).unwrap(), sm(1, &[1, 2]));
        let (a, b, c) = (sm(0, &[1]), sm(0, &[2]), sm(0, &[3]));
        let left = join_summands(&join_summands(&a, &b).unwrap(), &c).unwrap();
        let right = join_summands(&a, &join_summands(&b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left, sm(2, &[1, 2, 3]));
        assert_eq!(
            join_summands(&sm(0, &[1, 2]), &sm(0, &[2])),
            Err(Error::IndexSetsOverlap { shared: vec![2] })
        );
    }

    #[test]
    fn join_commutative_associative_on_pool() {
        let pool: Vec<Summand> = (1..=6u32)
            .powerset()
            .filter(|s| !s.is_empty() && s.len() <= 2)
            .flat_map(|s| (0..2).map(move |j| sm(j, &s)))
            .collect();
        for a in &pool {
            for b in &pool {
                if let Ok(ab) = join_summands(a, b) {
                    assert_eq!(ab, join_summands(b, a).unwrap());
                    for c in &pool {
                        if let Ok(abc) = join_summands(&ab, c) {
                            let bc = join_summands(b, c).unwrap();
                            assert_eq!(abc, join_summands(a, &bc).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn half_smash_cases() {
        let d: Decomposition<u64> = half_smash_expand(&sm(1, &[2, 3]), &[4]).unwrap();
        assert_eq!(d, dec(&[(1, 1, &[2, 3]), (1, 1, &[2, 3, 4])]));
        let d: Decomposition<u64> = half_smash_expand(&sm(3, &[7]), &[]).unwrap();
        assert_eq!(d, dec(&[(1, 3, &[7])]));
        let d: Decomposition<u64> = half_smash_expand(&sm(2, &[1, 2]), &[3, 4]).unwrap();
        assert_eq!(
            d,
            dec(&[(1, 2, &[1, 2]), (1, 2, &[1, 2, 3]), (1, 2, &[1, 2, 4]), (1, 2, &[1, 2, 3, 4])])
        );
        assert!(matches!(
            half_smash_expand::<u64>(&sm(0, &[1]), &[2]),
            Err(Error::NotASuspension { .. })
        ));
        assert!(matches!(
            half_smash_expand::<u64>(&sm(1, &[1, 2]), &[2]),
            Err(Error::OverlappingIndices { .. })
        ));
    }

    #[test]
    fn product_join_cases() {
        let d: Decomposition<u64> = product_join_expand(&[3], &[4]).unwrap();
        assert_eq!(d, dec(&[(1, 1, &[3, 4])]));
        let d: Decomposition<u64> = product_join_expand(&[1, 2], &[3]).unwrap();
        assert_eq!(d, dec(&[(1, 1, &[1, 3]), (1, 1, &[2, 3]), (1, 1, &[1, 2, 3])]));
        let d: Decomposition<u64> = product_join_expand(&[1, 2], &[3, 4]).unwrap();
        assert_eq!(d.total(), 9);
        assert_eq!(product_join_expand::<u64>(&[], &[1]), Err(Error::EmptyFactor));
        assert!(matches!(
            product_join_expand::<u64>(&[1], &[1]),
            Err(Error::OverlappingIndices { .. })
        ));
    }

    #[test]
    fn left_half_smash_cases() {
        let d = dec(&[(1, 2, &[1, 2, 4])]);
        assert_eq!(
            left_half_smash_expand(&[3], &d).unwrap(),
            dec(&[(1, 2, &[1, 2, 4]), (1, 2, &[1, 2, 3, 4])])
        );
        assert_eq!(left_half_smash_expand(&[], &d).unwrap(), d);
        assert!(left_half_smash_expand(&[3], &Decomposition::<u64>::new())
            .unwrap()
            .is_contractible());
    }

    #[test]
    fn subtraction() {
        let step1 = dec(&[(1, 1, &[2, 3]), (1, 1, &[2, 4]), (1, 1, &[3, 4]), (2, 1, &[2, 3, 4])]);
        let sub = dec(&[(1, 1, &[2, 3]), (1, 1, &[2, 3, 4])]);
        assert_eq!(
            subtract(&step1, &sub).unwrap(),
            dec(&[(1, 1, &[2, 4]), (1, 1, &[3, 4]), (1, 1, &[2, 3, 4])])
        );
        assert!(subtract(&step1, &step1).unwrap().is_contractible());
        assert_eq!(
            subtract(&dec(&[(1, 1, &[1, 2])]), &dec(&[(1, 2, &[1, 2])])),
            Err(Error::NotASubMultiset {
                missing: "Σ^2 X1∧X2".into()
            })
        );
    }

    #[test]
    fn substitution() {
        let j: BTreeMap<Label, Vec<Label>> = [(1, vec![1]), (4, vec![4, 5])].into();
        assert_eq!(
            substitute_join(&dec(&[(1, 1, &[1, 4])]), &j).unwrap(),
            dec(&[(1, 2, &[1, 4, 5])])
        );
        let j: BTreeMap<Label, Vec<Label>> = [(1, vec![1, 2, 3]), (2, vec![4])].into();
        assert_eq!(
            substitute_join(&dec(&[(1, 2, &[1, 2])]), &j).unwrap(),
            dec(&[(1, 4, &[1, 2, 3, 4])])
        );
        let d = dec(&[(2, 1, &[1, 2]), (1, 2, &[1, 2, 3])]);
        let id: BTreeMap<Label, Vec<Label>> = (1..=3).map(|v| (v, vec![v])).collect();
        assert_eq!(substitute_join(&d, &id).unwrap(), d);
        assert_eq!(
            substitute_join(&d, &[(1, vec![1])].into()),
            Err(Error::MissingSubstitution { label: 2 })
        );
        assert_eq!(
            substitute_join(&d, &[(1, vec![1, 2]), (2, vec![2]), (3, vec![3])].into()),
            Err(Error::OverlappingReplacementLabels { label: 2 })
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(Decomposition::<u64>::new().render(RenderFormat::Text), "∗");
        assert_eq!(dec(&[(1, 1, &[3, 4])]).render(RenderFormat::Text), "Σ X3∧X4");
        let final6 = dec(&[(1, 1, &[3, 4]), (1, 2, &[1, 2, 3]), (1, 2, &[1, 2, 4]), (2, 2, &[1, 2, 3, 4])]);
        assert_eq!(
            final6.render(RenderFormat::Text),
            "Σ X3∧X4 ∨ Σ^2 X1∧X2∧X3 ∨ Σ^2 X1∧X2∧X4 ∨ 2·Σ^2 X1∧X2∧X3∧X4"
        );
        assert_eq!(
            dec(&[(2, 1, &[1, 2])]).render(RenderFormat::Json),
            r#"[{"suspension":1,"indices":[1,2],"multiplicity":2}]"#
        );
        assert_eq!(sm(0, &[5]).to_string(), "X5");
    }

    #[test]
    fn json_big_multiplicity() {
        let big: BigUint = BigUint::from(u64::MAX) * 3u32;
        let d = Decomposition::from_terms([(sm(1, &[1, 2]), big.clone())]);
        let text = d.render(RenderFormat::Json);
        assert!(text.contains(&format!("\"{big}\"")));
        let back: Decomposition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }

    fn arb_summand() -> impl Strategy<Value = Summand> {
        (1u32..4, proptest::collection::btree_set(1u32..7, 1..5))
            .prop_map(|(j, idx)| Summand::new(j, idx).unwrap())
    }

    fn arb_decomposition() -> impl Strategy<Value = Decomposition<u64>> {
        proptest::collection::vec((arb_summand(), 1u64..4), 0..8).prop_map(Decomposition::from_terms)
    }

    proptest! {
        #[test]
        fn subtract_then_union_restores(d1 in arb_decomposition(), d2 in arb_decomposition()) {
            let whole = d1.union(&d2);
            prop_assert_eq!(whole.subtract(&d2).unwrap().union(&d2), whole.clone());
            prop_assert_eq!(whole.subtract(&d2).unwrap(), d1);
        }

        #[test]
        fn json_round_trip(d in arb_decomposition()) {
            let back: Decomposition<u64> = serde_json::from_str(&d.render(RenderFormat::Json)).unwrap();
            prop_assert_eq!(back, d);
        }

        #[test]
        fn half_smash_counts(s in arb_summand(), extra in proptest::collection::btree_set(7u32..12, 0..5)) {
            let t: Vec<Label> = extra.into_iter().collect();
            let d: Decomposition<u64> = half_smash_expand(&s, &t).unwrap();
            prop_assert_eq!(d.total(), 1u64 << t.len());
            prop_assert!(d.iter().all(|(x, _)| x.suspension() == s.suspension()));
        }

        #[test]
        fn product_join_counts(
            a in proptest::collection::btree_set(1u32..6, 1..4),
            b in proptest::collection::btree_set(6u32..11, 1..4),
        ) {
            let a: Vec<Label> = a.into_iter().collect();
            let b: Vec<Label> = b.into_iter().collect();
            let d: Decomposition<u64> = product_join_expand(&a, &b).unwrap();
            prop_assert_eq!(d.total(), ((1u64 << a.len()) - 1) * ((1u64 << b.len()) - 1));
            prop_assert!(d.iter().all(|(x, _)| x.suspension() == 1));
        }

        #[test]
        fn expansion_independent_of_input_order(s in arb_summand(), mut t in proptest::collection::vec(7u32..12, 0..4)) {
            t.sort_unstable();
            t.dedup();
            let forward: Decomposition<u64> = half_smash_expand(&s, &t).unwrap();
            t.reverse();
            let backward: Decomposition<u64> = half_smash_expand(&s, &t).unwrap();
            prop_assert_eq!(forward, backward);
        }

        #[test]
        fn substitution_functorial(d in arb_decomposition(), sizes in proptest::collection::vec(1usize..3, 6)) {
            // J: i ↦ block of sizes[i-1] fresh labels; J′ doubles every label
            let mut next = 1u32;
            let mut j = BTreeMap::new();
            for (i, &sz) in sizes.iter().enumerate() {
                j.insert(i as Label + 1, (next..next + sz as Label).collect::<Vec<_>>());
                next += sz as Label;
            }
            let j2: BTreeMap<Label, Vec<Label>> = (1..next).map(|l| (l, vec![2 * l - 1, 2 * l])).collect();
            let composed: BTreeMap<Label, Vec<Label>> = j
                .iter()
                .map(|(k, v)| (*k, v.iter().flat_map(|l| j2[l].clone()).collect()))
                .collect();
            let two_step = substitute_join(&substitute_join(&d, &j).unwrap(), &j2).unwrap();
            prop_assert_eq!(two_step, substitute_join(&d, &composed).unwrap());
            prop_assert_eq!(substitute_join(&d, &j).unwrap().total(), d.total());
        }
    }
}
