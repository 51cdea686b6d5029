//! Evaluating a decomposition at spheres `X_i = S^{d_i}`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::complex::{Label, SimplicialComplex};
use crate::decompose::decompose_any_order;
use crate::error::{Error, Result};
use crate::homology::{bbcg, BbcgOptions, Validity};
use crate::num::Multiplicity;
use crate::shifted::VertexOrder;
use crate::wedge::Decomposition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereAssignment {
    dims: BTreeMap<Label, u32>,
}

impl SphereAssignment {
    pub fn new(dims: BTreeMap<Label, u32>) -> Result<Self> {
        if let Some((&label, _)) = dims.iter().find(|(_, &d)| d == 0) {
            return Err(Error::InvalidDimension { label });
        }
        Ok(SphereAssignment { dims })
    }

    pub fn uniform(labels: impl IntoIterator<Item = Label>, dim: u32) -> Result<Self> {
        Self::new(labels.into_iter().map(|l| (l, dim)).collect())
    }

    pub fn get(&self, label: Label) -> Option<u32> {
        self.dims.get(&label).copied()
    }
}

/// `⋁ S^n`, as multiplicities keyed by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereWedge<M> {
    pub spheres: BTreeMap<u32, M>,
}

impl<M: Multiplicity> SphereWedge<M> {
    pub fn is_contractible(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut spheres = self.spheres.clone();
        for (d, m) in &other.spheres {
            *spheres.entry(*d).or_insert_with(M::zero) += m.clone();
        }
        SphereWedge { spheres }
    }

    /// Poincaré polynomial including the constant term.
    pub fn poincare(&self) -> PoincarePolynomial<M> {
        let mut coeffs = self.spheres.clone();
        *coeffs.entry(0).or_insert_with(M::zero) += M::one();
        PoincarePolynomial { coeffs }
    }

    /// `Σ (−1)^n m_n`.
    pub fn reduced_euler(&self) -> BigInt {
        self.spheres
            .iter()
            .map(|(d, m)| {
                let m: BigInt = m.to_string().parse().expect("decimal multiplicity");
                if d % 2 == 0 { m } else { -m }
            })
            .fold(BigInt::zero(), |a, b| a + b)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.spheres
                .iter()
                .map(|(d, m)| json!({ "dim": d, "mult": multiplicity_json(m) }))
                .collect(),
        )
    }
}

fn multiplicity_json<M: Multiplicity>(m: &M) -> Value {
    match m.to_u64() {
        Some(x) => json!(x),
        None => json!(m.to_string()),
    }
}

impl<M: Multiplicity> fmt::Display for SphereWedge<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spheres.is_empty() {
            return write!(f, "∗");
        }
        let terms = self.spheres.iter().map(|(d, m)| {
            if m.is_one() {
                format!("S^{d}")
            } else {
                format!("{m}·S^{d}")
            }
        });
        write!(f, "{}", terms.format(" ∨ "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial<M> {
    pub coeffs: BTreeMap<u32, M>,
}

impl<M: Multiplicity> fmt::Display for PoincarePolynomial<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(d, c)| {
            let coeff = if c.is_one() && *d > 0 { String::new() } else { c.to_string() };
            match d {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{d}"),
            }
        });
        write!(f, "{}", terms.format("+"))
    }
}

/// Each `Σ^j X_{i₁}∧…∧X_{i_k}` becomes `S^{j + Σ d_i}`.
pub fn specialize<M: Multiplicity>(d: &Decomposition<M>, a: &SphereAssignment) -> Result<SphereWedge<M>> {
    let mut spheres: BTreeMap<u32, M> = BTreeMap::new();
    for (s, m) in d.iter() {
        let mut dim = s.suspension();
        for &label in s.indices() {
            dim += a.get(label).ok_or(Error::MissingDimension { label })?;
        }
        *spheres.entry(dim).or_insert_with(M::zero) += m.clone();
    }
    Ok(SphereWedge { spheres })
}

/// The moment-angle complex `(D², S¹)^K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentAngle<M> {
    pub spheres: SphereWedge<M>,
    pub validity: Validity,
    /// The shifted order used on the exact path.
    pub order: Option<VertexOrder>,
}

impl<M: Multiplicity> MomentAngle<M> {
    pub fn poincare(&self) -> PoincarePolynomial<M> {
        self.spheres.poincare()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "spheres": self.spheres.to_json(),
            "poincare": self.poincare().to_string(),
            "validity": self.validity.as_str(),
        })
    }
}

/// Exact when `K` is shifted under some order. Otherwise falls back to the
/// suspended wedge if `allow_suspended`, else fails with the shiftedness error.
pub fn moment_angle<M: Multiplicity>(
    k: &SimplicialComplex,
    allow_suspended: bool,
    opts: &BbcgOptions,
) -> Result<MomentAngle<M>> {
    let circles = SphereAssignment::uniform(k.vertices().iter().copied(), 1)?;
    match decompose_any_order::<M>(k, opts.perm_limit) {
        Ok((d, order)) => Ok(MomentAngle {
            spheres: specialize(&d.decomposition, &circles)?,
            validity: Validity::Exact,
            order: Some(order),
        }),
        Err(Error::NotShifted { .. } | Error::NoShiftedOrder | Error::TooManyVertices { .. }) if allow_suspended => {
            let b = bbcg::<M>(k, opts)?;
            Ok(MomentAngle {
                spheres: specialize(&b.decomposition, &circles)?,
                validity: b.validity,
                order: None,
            })
        }
        Err(e) => Err(e),
    }
}
