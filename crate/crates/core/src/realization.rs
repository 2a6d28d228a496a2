//! Building a shift with a prescribed invariant `(F, u, s)`.
//!
//! Pipeline: pick diagonal offsets `d` so the base matrix (2 at `(1,1)`,
//! `d_i + 2` elsewhere on the diagonal, 1 off it) has `BF(A^t) = F` and the
//! right determinant sign; represent `u` by a nonnegative vector `c`; hang a
//! tail of `c_i` extra states off each state `i`; pass to the edge shift.
//! The result is checked against the target before it is returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{pointed_is_isomorphic, FgAbelianGroup, GroupElement, PointedGroup, DEFAULT_POINTED_BOUND};
use crate::invariants::{bowen_franks_presentation, invariant_data, invariant_triple, MarkovInvariant};
use crate::linalg::determinant;
use crate::sft::{edge_shift, is_irreducible, satisfies_condition_i, NonNegMatrix, ZeroOneMatrix};

/// An admissible target: `sign` is 0 exactly when `group` is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantTriple {
    pub group: FgAbelianGroup,
    pub point: GroupElement,
    pub sign: i8,
}

impl InvariantTriple {
    pub fn new(group: FgAbelianGroup, point: GroupElement, sign: i8) -> Result<Self> {
        check_admissible(&group, sign)?;
        if !group.contains(&point) {
            return Err(Error::Inconsistent(format!("{point} is not an element of {group}")));
        }
        Ok(InvariantTriple { group, point, sign })
    }

    pub fn pointed(&self) -> PointedGroup {
        PointedGroup {
            group: self.group.clone(),
            point: self.point.clone(),
        }
    }
}

fn check_admissible(group: &FgAbelianGroup, sign: i8) -> Result<()> {
    if !(-1..=1).contains(&sign) {
        return Err(Error::Inconsistent(format!("sign {sign} is not -1, 0 or 1")));
    }
    match (group.is_finite(), sign) {
        (false, s) if s != 0 => Err(Error::Inconsistent("F infinite requires s=0".into())),
        (true, 0) => Err(Error::Inconsistent("F finite requires s=-1 or s=1".into())),
        _ => Ok(()),
    }
}

/// `A(1,1) = 2`, `A(i,i) = d_i + 2`, `A(i,j) = 1` for `i != j`.
pub fn base_matrix(d_list: &[u64]) -> Result<NonNegMatrix> {
    let n = d_list.len();
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 diagonal offsets, got {n}")));
    }
    if d_list[0] != 0 {
        return Err(Error::Domain(format!("first offset must be 0, got {}", d_list[0])));
    }
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { d_list[i] + 2 } else { 1 }).collect())
        .collect();
    let a = NonNegMatrix::new(rows)?;

    let expected_group = FgAbelianGroup::from_cyclic_orders(
        &d_list[1..].iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>(),
    );
    let group = bowen_franks_presentation(&a, true)?.group().clone();
    if group != expected_group {
        return Err(Error::Internal(format!(
            "base matrix has BF(A^t) = {group}, expected {expected_group}"
        )));
    }
    let product: BigInt = d_list[1..].iter().map(|&d| BigInt::from(d)).product();
    let expected_det = if n.is_multiple_of(2) { product } else { -product };
    let det = determinant(&a.to_int_matrix().identity_minus()?)?;
    if det != expected_det {
        return Err(Error::Internal(format!(
            "base matrix has det(id-A) = {det}, expected {expected_det}"
        )));
    }
    Ok(a)
}

/// Offsets for a base matrix with `BF(A^t) = F` and `sign det(id-A) = s`:
/// a leading 0, one 0 per free generator, one entry per torsion factor,
/// then 1s (trivial summands) until `N >= 2` and the parity of `N` gives the sign.
pub fn choose_shape(group: &FgAbelianGroup, sign: i8) -> Result<Vec<u64>> {
    check_admissible(group, sign)?;
    let mut d = vec![0u64; 1 + group.free_rank()];
    for m in group.torsion() {
        d.push(m.to_u64().ok_or_else(|| {
            Error::Unsupported(format!("torsion factor {m} does not fit a matrix entry"))
        })?);
    }
    let parity_sign = |len: usize| if len.is_multiple_of(2) { 1 } else { -1 };
    while d.len() < 2 || (group.is_finite() && parity_sign(d.len()) != sign) {
        d.push(1);
    }
    Ok(d)
}

/// A nonnegative vector whose class in `BF(A^t)` is `u`, `A` a base matrix.
///
/// Starting from any preimage, the first entry is cleared with the all-ones
/// vector, entries over a finite cyclic summand `Z/d_j` are reduced into
/// `[0, d_j)`, and the result is shifted by the least multiple of all-ones
/// that makes it nonnegative. All three moves stay inside the class because
/// `(1,...,1)` and `d_j e_j` both lie in `(id - A^t) Z^N`.
pub fn point_vector(base: &NonNegMatrix, u: &GroupElement) -> Result<Vec<u64>> {
    let n = base.size();
    let presentation = bowen_franks_presentation(base, true)?;
    let ones = vec![BigInt::one(); n];
    if !presentation.element_from_vector(&ones)?.is_zero() {
        return Err(Error::Precondition("all-ones class of the base matrix is not zero".into()));
    }
    let mut c = presentation.vector_for(u)?;
    let first = c[0].clone();
    for x in c.iter_mut() {
        *x -= &first;
    }
    for (j, x) in c.iter_mut().enumerate().skip(1) {
        let d = base.get(j, j) - 2;
        if d > 0 {
            *x = x.mod_floor(&BigInt::from(d));
        }
    }
    let min = c.iter().min().cloned().unwrap_or_default();
    if min.is_negative() {
        for x in c.iter_mut() {
            *x -= &min;
        }
    }
    if presentation.element_from_vector(&c)? != *u {
        return Err(Error::Internal(format!("representative for {u} has the wrong class")));
    }
    c.iter()
        .map(|x| {
            x.to_u64()
                .ok_or_else(|| Error::Unsupported(format!("tail length {x} is too large")))
        })
        .collect()
}

/// Matrix over `{(i, j) : 0 <= j <= c_i}` (ordered lexicographically): the
/// chain `(i,0) -> (i,1) -> ... -> (i,c_i)` and `A(i,k)` edges `(i,c_i) -> (k,0)`.
pub fn tail_extension(a: &NonNegMatrix, c: &[u64]) -> Result<NonNegMatrix> {
    let n = a.size();
    if c.len() != n {
        return Err(Error::Shape(format!("{} tail lengths for {n} states", c.len())));
    }
    let mut offset = Vec::with_capacity(n);
    let mut total = 0usize;
    for &ci in c {
        offset.push(total);
        total += ci as usize + 1;
    }
    let mut rows = vec![vec![0u64; total]; total];
    for i in 0..n {
        let ci = c[i] as usize;
        for j in 0..ci {
            rows[offset[i] + j][offset[i] + j + 1] = 1;
        }
        for k in 0..n {
            rows[offset[i] + ci][offset[k]] = a.get(i, k);
        }
    }
    let b = NonNegMatrix::new(rows)?;

    let group_a = bowen_franks_presentation(a, true)?.group().clone();
    let group_b = bowen_franks_presentation(&b, true)?.group().clone();
    if group_a != group_b {
        return Err(Error::Internal(format!("tail extension changed BF from {group_a} to {group_b}")));
    }
    let det_a = determinant(&a.to_int_matrix().identity_minus()?)?;
    let det_b = determinant(&b.to_int_matrix().identity_minus()?)?;
    if det_a != det_b {
        return Err(Error::Internal(format!("tail extension changed det from {det_a} to {det_b}")));
    }
    Ok(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealizeOptions {
    /// Convert the nonnegative integer matrix to a {0,1} matrix via the edge shift.
    pub edge_shift: bool,
    pub pointed_bound: u64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            edge_shift: true,
            pointed_bound: DEFAULT_POINTED_BOUND,
        }
    }
}

/// Every stage of a realization, for audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationPlan {
    pub target: InvariantTriple,
    pub d_list: Vec<u64>,
    pub c_vector: Vec<u64>,
    pub base: NonNegMatrix,
    pub extended: NonNegMatrix,
    pub final_matrix: Option<ZeroOneMatrix>,
    pub achieved: MarkovInvariant,
}

impl RealizationPlan {
    /// The realized {0,1} matrix, when the edge-shift stage ran.
    pub fn matrix(&self) -> Option<&ZeroOneMatrix> {
        self.final_matrix.as_ref()
    }
}

pub fn realize(target: &InvariantTriple, options: &RealizeOptions) -> Result<RealizationPlan> {
    let d_list = choose_shape(&target.group, target.sign)?;
    let base = base_matrix(&d_list)?;
    let c_vector = point_vector(&base, &target.point)?;
    let extended = tail_extension(&base, &c_vector)?;

    let (final_matrix, achieved) = if options.edge_shift {
        let m = edge_shift(&extended)?;
        let inv = invariant_triple(&m)?;
        (Some(m), inv)
    } else {
        if !is_irreducible(&extended) || !satisfies_condition_i(&extended)? {
            return Err(Error::Internal("extended matrix is not irreducible with condition (I)".into()));
        }
        (None, invariant_data(&extended)?)
    };

    if achieved.sign != target.sign
        || !pointed_is_isomorphic(&achieved.pointed(), &target.pointed(), options.pointed_bound)?
    {
        return Err(Error::Internal(format!(
            "realized invariant {achieved} does not match ({}, {}, {})",
            target.group, target.point, target.sign
        )));
    }
    if achieved.det.is_zero() != target.group.order().is_none() {
        return Err(Error::Internal("finiteness mismatch".into()));
    }
    Ok(RealizationPlan {
        target: target.clone(),
        d_list,
        c_vector,
        base,
        extended,
        final_matrix,
        achieved,
    })
}
