//! Exact wedge decompositions of polyhedral products `(CX,X)^K`.
//!
//! Two independent routes compute the same multiset of summands
//! `Σ^j X_{i₁}∧…∧X_{i_k}`:
//!
//! * [`decompose`] runs the inductive construction over a shifted complex:
//!   cone off the link of the minimal vertex, then adjoin the remaining
//!   maximal faces one at a time, trading a retract for a new summand.
//! * [`bbcg()`] evaluates `⋁_{I∉K} |K_I| ∗ X̂^I` from the integer homology of
//!   every full subcomplex.
//!
//! The algebra is generic over the multiplicity type and the elimination
//! ring; the aliases below fix the arbitrary-precision choices used by the
//! CLI.

pub mod complex;
pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod homology;
pub mod num;
pub mod shifted;
pub mod snf;
pub mod specialize;
pub mod wedge;

use num_bigint::{BigInt, BigUint};

pub use complex::{ComplexSpec, Face, Label, SimplicialComplex, WedgeComplex};
pub use decompose::{
    adjoin_step, closed_form_disjoint_points, closed_form_skeleton, decompose, decompose_any_order,
    decompose_glued, decompose_gluing, decompose_in_order, decompose_wedge_construction, decompose_with,
    Action, Decomposed, GluedDecomposition, Trace, TraceRecord, WedgeDecomposition,
};
pub use error::{Error, Result};
pub use enumerate::{all_shifted, shifted_closure};
pub use homology::{
    bbcg, reduced_homology, reduced_homology_in, BbcgOptions, BbcgResult, ChainComplex, HomologyProfile, ShiftedCheck,
    SubsetHomology, Validity,
};
pub use num::{IntegerRing, Multiplicity};
pub use shifted::{
    filtration, find_shifted_order, is_naturally_shifted, is_shifted, shift_witness, Filtration, ShiftWitness,
    VertexOrder, DEFAULT_PERM_LIMIT,
};
pub use snf::{smith_normal_form, Matrix, SmithForm};
pub use specialize::{moment_angle, specialize, MomentAngle, PoincarePolynomial, SphereAssignment, SphereWedge};
pub use wedge::{Decomposition, RenderFormat, Summand};

/// Wedge multiset with arbitrary-precision multiplicities.
pub type Wedge = Decomposition<BigUint>;
/// Wedge multiset with machine-word multiplicities.
pub type Wedge64 = Decomposition<u64>;
/// Exact integer matrix for Smith normal form.
pub type IntMatrix = Matrix<BigInt>;
/// Machine-word integer matrix; overflows are the caller's problem.
pub type SmallIntMatrix = Matrix<i64>;
/// Homology with arbitrary-precision torsion coefficients.
pub type Homology = HomologyProfile<BigInt>;
