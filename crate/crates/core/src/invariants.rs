//! The complete invariant `(BF(A^t), u_A, sign det(id - A))` and the two
//! equivalence decisions built on it.
//!
//! Transpose convention: continuous orbit equivalence compares the pointed
//! groups `BF(A^t) = Z^N / (id - A^t) Z^N` with `u_A` the class of the all-ones
//! vector. Flow equivalence compares `BF(A) = Z^N / (id - A) Z^N` unpointed;
//! the two groups are abstractly isomorphic, so the choice only matters for
//! the distinguished element.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{
    is_isomorphic, pointed_is_isomorphic, tensor_z2, FgAbelianGroup, GroupElement, PointedGroup,
    Presentation,
};
use crate::linalg::{determinant, kernel_basis};
use crate::sft::{is_irreducible, satisfies_condition_i, NonNegMatrix, ZeroOneMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkovInvariant {
    pub group: FgAbelianGroup,
    pub point: GroupElement,
    #[serde(serialize_with = "crate::serde_int::int")]
    pub det: BigInt,
    pub sign: i8,
    pub k1_rank: usize,
}

impl MarkovInvariant {
    pub fn pointed(&self) -> PointedGroup {
        PointedGroup {
            group: self.group.clone(),
            point: self.point.clone(),
        }
    }

    /// Checks the relations every genuine invariant satisfies.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Internal(msg));
        let sign = if self.det.is_zero() { 0 } else if self.det.is_positive() { 1 } else { -1 };
        if sign != self.sign {
            return fail(format!("sign {} disagrees with det {}", self.sign, self.det));
        }
        if (self.sign == 0) != !self.group.is_finite() || (self.k1_rank >= 1) != !self.group.is_finite() {
            return fail(format!(
                "det {} and K1 rank {} disagree with the finiteness of {}",
                self.det, self.k1_rank, self.group
            ));
        }
        if self.k1_rank != self.group.free_rank() {
            return fail(format!(
                "K1 rank {} differs from the free rank of {}",
                self.k1_rank, self.group
            ));
        }
        if let Some(order) = self.group.order() {
            if order != self.det.abs() {
                return fail(format!("|det| = {} but |{}| = {order}", self.det.abs(), self.group));
            }
        }
        if !self.group.contains(&self.point) {
            return fail(format!("{} is not an element of {}", self.point, self.group));
        }
        Ok(())
    }
}

impl fmt::Display for MarkovInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}) det={}",
            self.group, self.point, self.sign, self.det
        )
    }
}

/// Presentation of `Z^N / (id - M) Z^N` with `M = A^t` or `A`.
pub fn bowen_franks_presentation(a: &NonNegMatrix, use_transpose: bool) -> Result<Presentation> {
    let m = a.to_int_matrix();
    let m = if use_transpose { m.transpose() } else { m };
    Presentation::from_relations(&m.identity_minus()?)
}

/// The Bowen–Franks group pointed at the class of `(1, ..., 1)`.
pub fn bowen_franks(a: &NonNegMatrix, use_transpose: bool) -> Result<PointedGroup> {
    let p = bowen_franks_presentation(a, use_transpose)?;
    let ones = vec![BigInt::one(); a.size()];
    let point = p.element_from_vector(&ones)?;
    PointedGroup::new(p.group().clone(), point)
}

/// Invariant data for any nonnegative integer matrix, without the dynamical
/// preconditions; used for intermediate matrices of the realization.
pub fn invariant_data(a: &NonNegMatrix) -> Result<MarkovInvariant> {
    let presentation = bowen_franks_presentation(a, true)?;
    let point = presentation.element_from_vector(&vec![BigInt::one(); a.size()])?;
    let group = presentation.group().clone();
    let det = determinant(&a.to_int_matrix().identity_minus()?)?;
    let sign = if det.is_zero() { 0 } else if det.is_positive() { 1 } else { -1 };
    // K1 = ker(id - A^t), read off the same Smith form
    let k1_rank = a.size() - presentation.snf().rank();
    let inv = MarkovInvariant {
        group,
        point,
        det,
        sign,
        k1_rank,
    };
    inv.check()?;
    Ok(inv)
}

fn require_classifiable(a: &ZeroOneMatrix, which: &str) -> Result<()> {
    if !is_irreducible(a) {
        return Err(Error::Precondition(format!("{which}matrix is reducible")));
    }
    if !satisfies_condition_i(a)? {
        return Err(Error::Precondition(format!("{which}matrix fails condition (I)")));
    }
    Ok(())
}

pub fn invariant_triple(a: &ZeroOneMatrix) -> Result<MarkovInvariant> {
    require_classifiable(a, "")?;
    invariant_data(a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    ContinuousOrbitEquivalence,
    FlowEquivalence,
}

/// A decision together with the data it was read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub relation: Relation,
    pub equivalent: bool,
    pub invariant_a: MarkovInvariant,
    pub invariant_b: MarkovInvariant,
    pub clauses: Vec<Clause>,
    pub reason: String,
}

fn summarize(clauses: &[Clause]) -> String {
    let failed: Vec<&str> = clauses.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        "all clauses hold".into()
    } else {
        format!("failed: {}", failed.join(", "))
    }
}

fn det_clause(a: &MarkovInvariant, b: &MarkovInvariant) -> Clause {
    Clause {
        name: "det(id-A) = det(id-B)".into(),
        holds: a.det == b.det,
        left: a.det.to_string(),
        right: b.det.to_string(),
    }
}

/// Continuous orbit equivalence: a pointed isomorphism `(BF(A^t), u_A) -> (BF(B^t), u_B)`
/// and equal determinants.
pub fn decide_coe(a: &ZeroOneMatrix, b: &ZeroOneMatrix, bound: u64) -> Result<Decision> {
    require_classifiable(a, "first ")?;
    require_classifiable(b, "second ")?;
    let (ia, ib) = (invariant_data(a)?, invariant_data(b)?);
    decide_coe_from_invariants(ia, ib, bound)
}

/// The same decision read off two precomputed invariants.
pub fn decide_coe_from_invariants(ia: MarkovInvariant, ib: MarkovInvariant, bound: u64) -> Result<Decision> {
    let pointed = pointed_is_isomorphic(&ia.pointed(), &ib.pointed(), bound)?;
    let clauses = vec![
        Clause {
            name: "(BF(A^t), u_A) ~ (BF(B^t), u_B)".into(),
            holds: pointed,
            left: ia.pointed().to_string(),
            right: ib.pointed().to_string(),
        },
        det_clause(&ia, &ib),
    ];
    Ok(Decision {
        relation: Relation::ContinuousOrbitEquivalence,
        equivalent: clauses.iter().all(|c| c.holds),
        reason: summarize(&clauses),
        invariant_a: ia,
        invariant_b: ib,
        clauses,
    })
}

/// Flow equivalence of the two-sided shifts: `BF(A) ~ BF(B)` and equal determinants.
pub fn decide_flow(a: &ZeroOneMatrix, b: &ZeroOneMatrix) -> Result<Decision> {
    require_classifiable(a, "first ")?;
    require_classifiable(b, "second ")?;
    let (ia, ib) = (invariant_data(a)?, invariant_data(b)?);
    let ga = bowen_franks(a, false)?.group;
    let gb = bowen_franks(b, false)?.group;
    Ok(decide_flow_from_groups(ia, &ga, ib, &gb))
}

/// The same decision read off precomputed invariants and untransposed groups `BF(A)`, `BF(B)`.
pub fn decide_flow_from_groups(
    ia: MarkovInvariant,
    ga: &FgAbelianGroup,
    ib: MarkovInvariant,
    gb: &FgAbelianGroup,
) -> Decision {
    let clauses = vec![
        Clause {
            name: "BF(A) ~ BF(B)".into(),
            holds: is_isomorphic(ga, gb),
            left: ga.to_string(),
            right: gb.to_string(),
        },
        det_clause(&ia, &ib),
    ];
    Decision {
        relation: Relation::FlowEquivalence,
        equivalent: clauses.iter().all(|c| c.holds),
        reason: summarize(&clauses),
        invariant_a: ia,
        invariant_b: ib,
        clauses,
    }
}

/// K-theory of the Cuntz–Krieger algebra: `K0` with the unit class, and the rank of `K1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KGroups {
    pub k0: PointedGroup,
    pub k1_rank: usize,
}

pub fn k_groups(a: &NonNegMatrix) -> Result<KGroups> {
    Ok(KGroups {
        k0: bowen_franks(a, true)?,
        k1_rank: kernel_basis(&a.to_int_matrix().transpose().identity_minus()?).len(),
    })
}

/// Abelianization of the topological full group: `(BF(A^t) (x) Z/2) + Z^{rank K1}`.
pub fn full_group_abelianization(a: &NonNegMatrix) -> Result<FgAbelianGroup> {
    let k = k_groups(a)?;
    let two_torsion = tensor_z2(&k.k0.group);
    FgAbelianGroup::new(k.k1_rank, two_torsion.torsion().to_vec())
}
