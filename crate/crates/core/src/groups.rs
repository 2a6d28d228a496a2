//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group is stored as `Z^r + Z/m1 + ... + Z/mk` with `m1 | m2 | ... | mk`
//! and every `mi >= 2`, which makes structural equality the isomorphism test.
//! The interesting part is [`pointed_is_isomorphic`]: deciding whether some
//! automorphism carries one distinguished element to another.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, solve_with_snf, IntMatrix, SnfResult};

/// Default cap on the size of any finite search performed by the pointed decision
/// and by the brute-force oracle.
pub const DEFAULT_POINTED_BOUND: u64 = 512;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbelianGroup {
    free_rank: usize,
    #[serde(serialize_with = "crate::serde_int::ints")]
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if let Some(bad) = torsion.iter().find(|m| **m < BigInt::from(2)) {
            return Err(Error::Domain(format!("torsion factor {bad} is not >= 2")));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::Domain(format!(
                "torsion factors {} and {} break the divisibility chain",
                w[0], w[1]
            )));
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    /// Convenience constructor from machine integers.
    pub fn from_factors(free_rank: usize, torsion: &[u64]) -> Result<Self> {
        FgAbelianGroup::new(free_rank, torsion.iter().map(|&m| BigInt::from(m)).collect())
    }

    /// Canonical form of an arbitrary direct sum of cyclic groups `Z/ni`
    /// (a zero entry stands for `Z`, a one for the trivial group).
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let n = orders.len().max(1);
        let diag = IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                orders.get(i).cloned().unwrap_or_else(BigInt::one)
            } else {
                BigInt::zero()
            }
        })
        .expect("nonempty");
        let snf = smith_normal_form(&diag);
        let factors = snf.invariant_factors();
        FgAbelianGroup {
            free_rank: factors.iter().filter(|d| d.is_zero()).count(),
            torsion: factors.into_iter().filter(|d| *d > BigInt::one()).collect(),
        }
    }

    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    /// Builds an element, reducing torsion coordinates into `[0, mi)`.
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElement> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(Error::Shape(format!(
                "element with {} free and {} torsion coordinates in {}",
                free.len(),
                torsion.len(),
                self
            )));
        }
        let torsion = torsion
            .into_iter()
            .zip(&self.torsion)
            .map(|(x, m)| x.mod_floor(m))
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// Element from a flat coordinate list: free coordinates first, then torsion.
    pub fn element_from_coords(&self, coords: &[BigInt]) -> Result<GroupElement> {
        if coords.len() != self.free_rank + self.torsion.len() {
            return Err(Error::Shape(format!(
                "expected {} coordinates for {}, got {}",
                self.free_rank + self.torsion.len(),
                self,
                coords.len()
            )));
        }
        let (free, torsion) = coords.split_at(self.free_rank);
        self.element(free.to_vec(), torsion.to_vec())
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.free.len() == self.free_rank
            && x.torsion.len() == self.torsion.len()
            && x
                .torsion
                .iter()
                .zip(&self.torsion)
                .all(|(c, m)| !c.is_negative() && c < m)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupElement {
    #[serde(serialize_with = "crate::serde_int::ints")]
    free: Vec<BigInt>,
    #[serde(serialize_with = "crate::serde_int::ints")]
    torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn coords(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    /// gcd of the free coordinates (0 when they all vanish).
    pub fn content(&self) -> BigInt {
        self.free.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coords().iter().map(ToString::to_string).collect();
        write!(f, "({})", coords.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointedGroup {
    pub group: FgAbelianGroup,
    pub point: GroupElement,
}

impl PointedGroup {
    pub fn new(group: FgAbelianGroup, point: GroupElement) -> Result<Self> {
        if !group.contains(&point) {
            return Err(Error::Shape(format!("{point} is not a reduced element of {group}")));
        }
        Ok(PointedGroup { group, point })
    }
}

impl fmt::Display for PointedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.group, self.point)
    }
}

/// `Z^n / M Z^n` together with the coordinate map onto its canonical form.
///
/// With `U M V = D`, a vector `v` maps to `U v`; the rows of `D` with entry 1
/// are dropped, entries `>= 2` become torsion coordinates and zero entries
/// become free coordinates.
#[derive(Clone, Debug)]
pub struct Presentation {
    relations: IntMatrix,
    snf: SnfResult,
    group: FgAbelianGroup,
    torsion_rows: Vec<usize>,
    free_rows: Vec<usize>,
}

impl Presentation {
    pub fn from_relations(m: &IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!(
                "presentation matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let snf = smith_normal_form(m);
        let diag = snf.invariant_factors();
        let torsion_rows: Vec<usize> = (0..diag.len()).filter(|&i| diag[i] > BigInt::one()).collect();
        let free_rows: Vec<usize> = (0..diag.len()).filter(|&i| diag[i].is_zero()).collect();
        let group = FgAbelianGroup::new(
            free_rows.len(),
            torsion_rows.iter().map(|&i| diag[i].clone()).collect(),
        )?;
        Ok(Presentation {
            relations: m.clone(),
            snf,
            group,
            torsion_rows,
            free_rows,
        })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn snf(&self) -> &SnfResult {
        &self.snf
    }

    pub fn element_from_vector(&self, v: &[BigInt]) -> Result<GroupElement> {
        let image = self.snf.u.mul_vec(v)?;
        let free = self.free_rows.iter().map(|&i| image[i].clone()).collect();
        let torsion = self.torsion_rows.iter().map(|&i| image[i].clone()).collect();
        self.group.element(free, torsion)
    }

    /// Some vector of `Z^n` whose class is `x`.
    pub fn vector_for(&self, x: &GroupElement) -> Result<Vec<BigInt>> {
        if !self.group.contains(x) {
            return Err(Error::Shape(format!("{x} is not an element of {}", self.group)));
        }
        let n = self.relations.rows();
        let mut target = vec![BigInt::zero(); n];
        for (&row, c) in self.free_rows.iter().zip(x.free()) {
            target[row] = c.clone();
        }
        for (&row, c) in self.torsion_rows.iter().zip(x.torsion()) {
            target[row] = c.clone();
        }
        // U is unimodular, so U y = target always has an integer solution.
        let u_snf = smith_normal_form(&self.snf.u);
        solve_with_snf(&u_snf, &target)
            .ok_or_else(|| Error::Internal("left transform is not unimodular".into()))
    }
}

pub fn is_isomorphic(g: &FgAbelianGroup, h: &FgAbelianGroup) -> bool {
    g == h
}

/// Height of an element of a finite abelian p-group; `Infinite` only for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => write!(f, "inf"),
        }
    }
}

fn valuation(p: u64, mut x: u64) -> u32 {
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// `(h(x), h(px), h(p^2 x), ...)` up to and including the first infinite entry.
pub fn height_sequence(p: u64, factors: &[u64], x: &[u64]) -> Result<Vec<Height>> {
    if factors.len() != x.len() {
        return Err(Error::Shape("element and factor lists differ in length".into()));
    }
    if p < 2 {
        return Err(Error::Domain(format!("{p} is not a prime")));
    }
    for &m in factors {
        let mut r = m;
        while r > 1 && r % p == 0 {
            r /= p;
        }
        if m < 2 || r != 1 {
            return Err(Error::Domain(format!("{m} is not a power of {p}")));
        }
    }
    let mut y: Vec<u64> = x.iter().zip(factors).map(|(&c, &m)| c % m).collect();
    let mut seq = Vec::new();
    loop {
        let h = y
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| valuation(p, c))
            .min()
            .map_or(Height::Infinite, Height::Finite);
        seq.push(h);
        if h == Height::Infinite {
            return Ok(seq);
        }
        for (c, &m) in y.iter_mut().zip(factors) {
            *c = ((*c as u128 * p as u128) % m as u128) as u64;
        }
    }
}

/// Prime factorization of a machine integer.
///
/// Trial division up to 2^20; a leftover cofactor below 2^40 is then prime.
/// Anything larger is reported as undecided rather than guessed.
fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= (1 << 20) && d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if d * d <= n && n >= 1 << 40 {
            return Err(Error::Undecided(format!("cannot factor torsion order {n}")));
        }
        out.push((n, 1));
    }
    Ok(out)
}

fn torsion_as_u64(g: &FgAbelianGroup) -> Result<Vec<u64>> {
    g.torsion
        .iter()
        .map(|m| {
            m.to_u64()
                .ok_or_else(|| Error::Undecided(format!("torsion factor {m} exceeds 64 bits")))
        })
        .collect()
}

/// The p-primary part of a torsion group in coordinates `Z/p^a1 + ... `.
struct PrimaryPart {
    p: u64,
    /// (index into the invariant factors, p^a)
    factors: Vec<(usize, u64)>,
}

impl PrimaryPart {
    fn moduli(&self) -> Vec<u64> {
        self.factors.iter().map(|&(_, q)| q).collect()
    }

    fn project(&self, torsion: &[u64]) -> Vec<u64> {
        self.factors.iter().map(|&(i, q)| torsion[i] % q).collect()
    }
}

fn primary_parts(torsion: &[u64]) -> Result<Vec<PrimaryPart>> {
    let Some(&largest) = torsion.last() else {
        return Ok(Vec::new());
    };
    // every prime dividing some factor divides the largest one
    factorize(largest)?
        .into_iter()
        .map(|(p, _)| {
            let factors = torsion
                .iter()
                .enumerate()
                .filter_map(|(i, &m)| {
                    let a = valuation(p, m);
                    (a > 0).then(|| (i, p.pow(a)))
                })
                .collect();
            Ok(PrimaryPart { p, factors })
        })
        .collect()
}

fn element_torsion_u64(x: &GroupElement) -> Vec<u64> {
    x.torsion
        .iter()
        .map(|c| c.to_u64().expect("reduced below a 64-bit modulus"))
        .collect()
}

/// Decides whether some automorphism of the common group carries `a.point` to `b.point`.
///
/// Torsion parts are compared prime by prime through height sequences. When
/// the points have a nonzero free component of content `d`, automorphisms can
/// add anything in `d*T` to the torsion component, so the question becomes
/// whether the orbit of one torsion component meets the coset `t_b + d*T`;
/// that coset is searched exhaustively, and a coset larger than `bound`
/// yields [`Error::Undecided`].
pub fn pointed_is_isomorphic(a: &PointedGroup, b: &PointedGroup, bound: u64) -> Result<bool> {
    if !is_isomorphic(&a.group, &b.group) {
        return Ok(false);
    }
    let content = a.point.content();
    if content != b.point.content() {
        return Ok(false);
    }
    let torsion = torsion_as_u64(&a.group)?;
    let ta = element_torsion_u64(&a.point);
    let tb = element_torsion_u64(&b.point);

    for part in primary_parts(&torsion)? {
        let moduli = part.moduli();
        let xa = part.project(&ta);
        let xb = part.project(&tb);
        let target = height_sequence(part.p, &moduli, &xa)?;
        let exponent = if content.is_zero() {
            u32::MAX
        } else {
            let mut e = 0;
            let mut c = content.clone();
            let p = BigInt::from(part.p);
            while c.is_multiple_of(&p) {
                c /= &p;
                e += 1;
            }
            e
        };
        if exponent == 0 {
            // d*T_p = T_p: every coset is hit
            continue;
        }
        // z ranges over p^e T_p; coordinate i takes values in step_i * [0, q_i / step_i)
        let steps: Vec<u64> = moduli
            .iter()
            .map(|&q| {
                let a = valuation(part.p, q);
                part.p.pow(a.min(exponent))
            })
            .collect();
        let counts: Vec<u64> = moduli.iter().zip(&steps).map(|(&q, &s)| q / s).collect();
        let coset_size = counts
            .iter()
            .try_fold(1u64, |acc, &c| acc.checked_mul(c))
            .unwrap_or(u64::MAX);
        if coset_size > bound {
            return Err(Error::Undecided(format!(
                "torsion part too large: {coset_size} candidates at p={} exceed the bound {bound}",
                part.p
            )));
        }
        let mut found = false;
        let mut idx = vec![0u64; counts.len()];
        'search: loop {
            let y: Vec<u64> = (0..moduli.len())
                .map(|i| (xb[i] + idx[i] * steps[i]) % moduli[i])
                .collect();
            if height_sequence(part.p, &moduli, &y)? == target {
                found = true;
                break;
            }
            for i in 0..idx.len() {
                idx[i] += 1;
                if idx[i] < counts[i] {
                    continue 'search;
                }
                idx[i] = 0;
            }
            break;
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `G (x) Z/2`.
pub fn tensor_z2(g: &FgAbelianGroup) -> FgAbelianGroup {
    let two = BigInt::from(2);
    let even = g.torsion.iter().filter(|m| m.is_multiple_of(&two)).count();
    FgAbelianGroup {
        free_rank: 0,
        torsion: vec![two; g.free_rank + even],
    }
}

/// Multiplication table free view of a finite group `Z/m1 + ... + Z/mk`,
/// elements indexed in mixed radix.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    moduli: Vec<usize>,
    order: usize,
}

impl FiniteGroupTable {
    pub fn new(group: &FgAbelianGroup, bound: u64) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::Unsupported(format!("{group} is infinite")));
        }
        let order = group.order().expect("finite");
        if order > BigInt::from(bound) {
            return Err(Error::Unsupported(format!(
                "group of order {order} exceeds the enumeration bound {bound}"
            )));
        }
        let moduli: Vec<usize> = torsion_as_u64(group)?.into_iter().map(|m| m as usize).collect();
        Ok(FiniteGroupTable {
            order: moduli.iter().product(),
            moduli,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coords(&self, mut x: usize) -> Vec<usize> {
        let mut c = vec![0; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            c[i] = x % self.moduli[i];
            x /= self.moduli[i];
        }
        c
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&c, &m)| acc * m + c % m)
    }

    pub fn index_of(&self, x: &GroupElement) -> usize {
        let c: Vec<usize> = element_torsion_u64(x).into_iter().map(|c| c as usize).collect();
        self.index(&c)
    }

    pub fn element(&self, group: &FgAbelianGroup, x: usize) -> GroupElement {
        let torsion = self.coords(x).into_iter().map(BigInt::from).collect();
        group.element(Vec::new(), torsion).expect("shape matches")
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let sum: Vec<usize> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        self.index(&sum)
    }

    pub fn scale(&self, k: usize, a: usize) -> usize {
        let c: Vec<usize> = self
            .coords(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (x * (k % m)) % m)
            .collect();
        self.index(&c)
    }

    /// Image of `x` under the homomorphism sending generator `i` to `images[i]`.
    pub fn apply(&self, images: &[usize], x: usize) -> usize {
        self.coords(x)
            .iter()
            .zip(images)
            .fold(0, |acc, (&c, &g)| self.add(acc, self.scale(c, g)))
    }

    fn moduli(&self) -> &[usize] {
        &self.moduli
    }
}

type Bitset = Vec<u64>;

fn bit_get(s: &Bitset, i: usize) -> bool {
    s[i / 64] >> (i % 64) & 1 == 1
}

fn bit_set(s: &mut Bitset, i: usize) {
    s[i / 64] |= 1 << (i % 64);
}

/// Exhaustive automorphism search.
///
/// An automorphism is a choice of generator images `g_i` with `m_i g_i = 0`
/// such that each `g_i` has order `m_i` modulo the span of the earlier
/// images; together these span the whole group, so the homomorphism is onto
/// and hence bijective. The set of images `sum x_i g_i` is accumulated over
/// all such choices, memoized on (generator index, span so far).
struct OrbitSearch<'a> {
    table: &'a FiniteGroupTable,
    x: Vec<usize>,
    memo: HashMap<(usize, Bitset), Bitset>,
}

impl OrbitSearch<'_> {
    fn reachable(&mut self, j: usize, span: &Bitset) -> Bitset {
        let n = self.table.order();
        let words = n.div_ceil(64);
        if j == self.x.len() {
            let mut s = vec![0; words];
            bit_set(&mut s, 0);
            return s;
        }
        if let Some(r) = self.memo.get(&(j, span.clone())) {
            return r.clone();
        }
        let m = self.table.moduli()[j];
        let mut out = vec![0u64; words];
        for g in 0..n {
            if self.table.scale(m, g) != 0 {
                continue;
            }
            let multiples: Vec<usize> = (0..m).map(|k| self.table.scale(k, g)).collect();
            if multiples[1..].iter().any(|&h| bit_get(span, h)) {
                continue;
            }
            // span + <g>, disjoint cosets of the old span
            let mut next = vec![0u64; words];
            for h in (0..n).filter(|&h| bit_get(span, h)) {
                for &mg in &multiples {
                    bit_set(&mut next, self.table.add(h, mg));
                }
            }
            let tail = self.reachable(j + 1, &next);
            let shift = multiples[self.x[j] % m];
            for y in (0..n).filter(|&y| bit_get(&tail, y)) {
                bit_set(&mut out, self.table.add(y, shift));
            }
        }
        self.memo.insert((j, span.clone()), out.clone());
        out
    }
}

/// All images of `x` under automorphisms of the (finite) group, as indices.
pub fn orbit_indices(table: &FiniteGroupTable, x: usize) -> Vec<usize> {
    let n = table.order();
    let mut search = OrbitSearch {
        table,
        x: table.coords(x),
        memo: HashMap::new(),
    };
    let mut zero = vec![0u64; n.div_ceil(64)];
    bit_set(&mut zero, 0);
    let reach = search.reachable(0, &zero);
    (0..n).filter(|&y| bit_get(&reach, y)).collect()
}

/// Partition of a finite group into automorphism orbits (orbit id per element index).
pub fn orbit_partition(group: &FgAbelianGroup, bound: u64) -> Result<(FiniteGroupTable, Vec<usize>)> {
    let table = FiniteGroupTable::new(group, bound)?;
    let mut label = vec![usize::MAX; table.order()];
    let mut next = 0;
    for x in 0..table.order() {
        if label[x] != usize::MAX {
            continue;
        }
        for y in orbit_indices(&table, x) {
            label[y] = next;
        }
        next += 1;
    }
    Ok((table, label))
}

/// Brute-force oracle: does some automorphism carry `a.point` to `b.point`?
pub fn orbit_brute_force(a: &PointedGroup, b: &PointedGroup, bound: u64) -> Result<bool> {
    let table = FiniteGroupTable::new(&a.group, bound)?;
    FiniteGroupTable::new(&b.group, bound)?;
    if a.group != b.group {
        return Ok(false);
    }
    let target = table.index_of(&b.point);
    Ok(orbit_indices(&table, table.index_of(&a.point)).contains(&target))
}

/// Calls `visit` with the generator images of every automorphism, stopping early
/// when it returns `false`.
pub fn for_each_automorphism(table: &FiniteGroupTable, mut visit: impl FnMut(&[usize]) -> bool) {
    fn go(
        table: &FiniteGroupTable,
        images: &mut Vec<usize>,
        span: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let j = images.len();
        if j == table.moduli().len() {
            return visit(images);
        }
        let m = table.moduli()[j];
        let n = table.order();
        for g in 0..n {
            if table.scale(m, g) != 0 || (1..m).any(|k| span[table.scale(k, g)]) {
                continue;
            }
            let before = span.clone();
            for h in (0..n).filter(|&h| before[h]) {
                for k in 0..m {
                    span[table.add(h, table.scale(k, g))] = true;
                }
            }
            images.push(g);
            let keep_going = go(table, images, span, visit);
            images.pop();
            *span = before;
            if !keep_going {
                return false;
            }
        }
        true
    }
    let mut span = vec![false; table.order()];
    span[0] = true;
    go(table, &mut Vec::new(), &mut span, &mut visit);
}

fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `n`, one per isomorphism class.
pub fn finite_groups_of_order(n: u64) -> Result<Vec<FgAbelianGroup>> {
    if n == 0 {
        return Err(Error::Domain("order must be positive".into()));
    }
    let mut shapes: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factorize(n)? {
        let mut next = Vec::new();
        for shape in &shapes {
            for partition in integer_partitions(e) {
                // partition is descending; combine with the running shape largest-first
                let len = shape.len().max(partition.len());
                let mut combined = vec![1u64; len];
                for (i, c) in combined.iter_mut().enumerate() {
                    let base = shape.get(i).copied().unwrap_or(1);
                    let power = partition.get(i).map_or(1, |&a| p.pow(a));
                    *c = base * power;
                }
                next.push(combined);
            }
        }
        shapes = next;
    }
    shapes
        .into_iter()
        .map(|mut s| {
            s.reverse();
            FgAbelianGroup::from_factors(0, &s)
        })
        .collect()
}
