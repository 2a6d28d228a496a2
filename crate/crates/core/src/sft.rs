//! Transition matrices as dynamical objects.
//!
//! Symbols are `0..N` internally and printed as `1..N`.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::strongly_connected_components;
use crate::linalg::IntMatrix;

/// Square matrix over the nonnegative integers with no zero row or column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NonNegMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl NonNegMatrix {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("empty matrix".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Shape(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                r.len()
            )));
        }
        if let Some(i) = (0..n).find(|&i| rows[i].iter().all(|&x| x == 0)) {
            return Err(Error::Domain(format!("row {} is identically zero", i + 1)));
        }
        if let Some(j) = (0..n).find(|&j| rows.iter().all(|r| r[j] == 0)) {
            return Err(Error::Domain(format!("column {} is identically zero", j + 1)));
        }
        Ok(NonNegMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.n).map(<[u64]>::to_vec).collect()
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| BigInt::from(self.get(i, j))).expect("n >= 1")
    }

    pub fn transpose(&self) -> NonNegMatrix {
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(j, i)).collect())
            .collect();
        NonNegMatrix::new(rows).expect("transpose keeps rows and columns nonzero")
    }

    /// Same matrix with states relabelled: new state `i` is old state `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<NonNegMatrix> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Shape("not a permutation of the states".into()));
        }
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(perm[i], perm[j])).collect())
            .collect();
        NonNegMatrix::new(rows)
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|&x| x <= 1)
    }

    pub fn edge_count(&self) -> u64 {
        self.entries.iter().sum()
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| self.get(i, j) > 0).collect())
            .collect()
    }
}

impl Serialize for NonNegMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.chunks(self.n))
    }
}

impl fmt::Display for NonNegMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::format_matrix(&self.rows()))
    }
}

/// Transition matrix of a topological Markov shift: `N >= 2`, entries in `{0,1}`,
/// no zero row or column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ZeroOneMatrix(NonNegMatrix);

impl ZeroOneMatrix {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        Self::try_from(NonNegMatrix::new(rows)?)
    }

    pub fn allows(&self, i: usize, j: usize) -> bool {
        self.get(i, j) == 1
    }

    pub fn as_nonneg(&self) -> &NonNegMatrix {
        &self.0
    }

    pub fn transpose(&self) -> ZeroOneMatrix {
        ZeroOneMatrix(self.0.transpose())
    }

    pub fn permuted(&self, perm: &[usize]) -> Result<ZeroOneMatrix> {
        Ok(ZeroOneMatrix(self.0.permuted(perm)?))
    }
}

impl TryFrom<NonNegMatrix> for ZeroOneMatrix {
    type Error = Error;

    fn try_from(m: NonNegMatrix) -> Result<Self> {
        if m.size() < 2 {
            return Err(Error::Domain(format!("need at least 2 states, got {}", m.size())));
        }
        if !m.is_zero_one() {
            return Err(Error::Domain("entries must be 0 or 1".into()));
        }
        Ok(ZeroOneMatrix(m))
    }
}

impl Deref for ZeroOneMatrix {
    type Target = NonNegMatrix;

    fn deref(&self) -> &NonNegMatrix {
        &self.0
    }
}

impl fmt::Display for ZeroOneMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotSquare { row: usize, len: usize },
    TooSmall { size: usize },
    NotZeroOne { row: usize, col: usize, value: u64 },
    ZeroRow { row: usize },
    ZeroColumn { col: usize },
    Reducible,
    FailsConditionI,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { row, len } => write!(f, "row {row} has {len} entries; matrix is not square"),
            Violation::TooSmall { size } => write!(f, "matrix has {size} state(s); at least 2 required"),
            Violation::NotZeroOne { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is not 0 or 1")
            }
            Violation::ZeroRow { row } => write!(f, "zero row {row}"),
            Violation::ZeroColumn { col } => write!(f, "zero column {col}"),
            Violation::Reducible => write!(f, "matrix is reducible"),
            Violation::FailsConditionI => write!(f, "fails condition (I)"),
        }
    }
}

/// Outcome of [`validate`]; indices in violations are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub violations: Vec<Violation>,
}

impl Diagnostics {
    pub fn is_classifiable(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_classifiable() {
            return write!(f, "classifiable");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks raw rows against every standing assumption of the classification.
pub fn validate(rows: &[Vec<u64>]) -> Diagnostics {
    let mut violations = Vec::new();
    let n = rows.len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            violations.push(Violation::NotSquare { row: i + 1, len: r.len() });
        }
    }
    if !violations.is_empty() {
        return Diagnostics { violations };
    }
    if n < 2 {
        violations.push(Violation::TooSmall { size: n });
    }
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            if x > 1 {
                violations.push(Violation::NotZeroOne { row: i + 1, col: j + 1, value: x });
            }
        }
    }
    for (i, r) in rows.iter().enumerate() {
        if r.iter().all(|&x| x == 0) {
            violations.push(Violation::ZeroRow { row: i + 1 });
        }
    }
    for j in 0..n {
        if rows.iter().all(|r| r[j] == 0) {
            violations.push(Violation::ZeroColumn { col: j + 1 });
        }
    }
    if n == 0 {
        return Diagnostics { violations };
    }
    let adj: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| (0..n).filter(|&j| r[j] > 0).collect())
        .collect();
    if strongly_connected_components(&adj).len() != 1 {
        violations.push(Violation::Reducible);
    } else if is_permutation(rows) {
        violations.push(Violation::FailsConditionI);
    }
    Diagnostics { violations }
}

fn is_permutation(rows: &[Vec<u64>]) -> bool {
    let n = rows.len();
    rows.iter().all(|r| r.iter().sum::<u64>() == 1)
        && (0..n).all(|j| rows.iter().map(|r| r[j]).sum::<u64>() == 1)
}

/// The directed graph with an edge `i -> j` whenever `A(i,j) > 0` is strongly connected.
pub fn is_irreducible(a: &NonNegMatrix) -> bool {
    strongly_connected_components(&a.adjacency()).len() == 1
}

/// For irreducible matrices, no isolated points is the same as not being a
/// permutation matrix.
pub fn satisfies_condition_i(a: &NonNegMatrix) -> Result<bool> {
    if !is_irreducible(a) {
        return Err(Error::Precondition("condition (I) is only decided for irreducible matrices".into()));
    }
    Ok(!is_permutation(&a.rows()))
}

/// A finite word over the alphabet of some matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(symbols: Vec<usize>) -> Self {
        Word(symbols)
    }

    /// Checks `A(w_i, w_{i+1}) = 1` for consecutive symbols.
    pub fn new_admissible(a: &ZeroOneMatrix, symbols: Vec<usize>) -> Result<Self> {
        let w = Word(symbols);
        if !w.is_admissible(a) {
            return Err(Error::Domain(format!("word {w} is not admissible")));
        }
        Ok(w)
    }

    /// Parses `"121"` (one digit per symbol, alphabet up to 9) or `"1.10.3"`.
    pub fn parse(s: &str, alphabet: usize) -> Result<Self> {
        let pieces: Vec<&str> = if s.contains('.') || s.contains(',') {
            s.split(['.', ',']).collect()
        } else {
            s.char_indices().map(|(i, c)| &s[i..i + c.len_utf8()]).collect()
        };
        let symbols = pieces
            .iter()
            .map(|p| match p.parse::<usize>() {
                Ok(x) if (1..=alphabet).contains(&x) => Ok(x - 1),
                _ => Err(Error::Domain(format!("bad symbol {p:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if symbols.is_empty() {
            return Err(Error::Domain("empty word".into()));
        }
        Ok(Word(symbols))
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self, a: &ZeroOneMatrix) -> bool {
        self.0.iter().all(|&s| s < a.size()) && self.0.windows(2).all(|w| a.allows(w[0], w[1]))
    }

    /// Admissible including the wrap-around step from the last symbol to the first.
    pub fn is_cyclically_admissible(&self, a: &ZeroOneMatrix) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&first), Some(&last)) => self.is_admissible(a) && a.allows(last, first),
            _ => false,
        }
    }

    /// Length of the shortest `r` with the word equal to its rotation by `r`.
    pub fn rotation_period(&self) -> usize {
        let n = self.0.len();
        (1..=n)
            .find(|&r| n.is_multiple_of(r) && (0..n).all(|i| self.0[i] == self.0[(i + r) % n]))
            .unwrap_or(n)
    }

    /// Lexicographically least rotation.
    pub fn canonical_rotation(&self) -> Word {
        let n = self.0.len();
        (0..n)
            .map(|r| Word((0..n).map(|i| self.0[(i + r) % n]).collect()))
            .min()
            .unwrap_or_else(|| self.clone())
    }

    /// Strictly smaller than each of its proper rotations.
    pub fn is_lyndon(&self) -> bool {
        let n = self.0.len();
        n > 0 && (1..n).all(|r| (0..n).map(|i| self.0[(i + r) % n]).cmp(self.0.iter().copied()).is_gt())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.0.iter().any(|&s| s >= 9);
        let parts: Vec<String> = self.0.iter().map(|s| (s + 1).to_string()).collect();
        write!(f, "{}", parts.join(if wide { "." } else { "" }))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A point `preperiod . cycle . cycle . ...` of `X_A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EventuallyPeriodicPoint {
    preperiod: Word,
    cycle: Word,
}

impl EventuallyPeriodicPoint {
    pub fn new(a: &ZeroOneMatrix, preperiod: Word, cycle: Word) -> Result<Self> {
        if !cycle.is_cyclically_admissible(a) {
            return Err(Error::Domain(format!("cycle {cycle} is not cyclically admissible")));
        }
        let joined = Word([preperiod.symbols(), cycle.symbols()].concat());
        if !joined.is_admissible(a) {
            return Err(Error::Domain(format!("{preperiod} followed by {cycle} is not admissible")));
        }
        Ok(EventuallyPeriodicPoint { preperiod, cycle })
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn cycle(&self) -> &Word {
        &self.cycle
    }

    /// The first `period` symbols of the cycle.
    pub fn primitive_cycle(&self) -> Word {
        Word(self.cycle.symbols()[..period_of(self)].to_vec())
    }
}

/// Least period of an eventually periodic point.
pub fn period_of(x: &EventuallyPeriodicPoint) -> usize {
    x.cycle.rotation_period()
}

/// All admissible words of length `k`, in lexicographic order.
pub fn admissible_words(a: &ZeroOneMatrix, k: usize) -> Vec<Word> {
    fn go(a: &ZeroOneMatrix, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Word>) {
        if prefix.len() == k {
            out.push(Word(prefix.clone()));
            return;
        }
        for s in 0..a.size() {
            if prefix.last().is_none_or(|&l| a.allows(l, s)) {
                prefix.push(s);
                go(a, k, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(a, k, &mut Vec::new(), &mut out);
    }
    out
}

/// One lexicographically minimal representative per periodic orbit of least
/// period `q`, for each `q <= max_period`; ordered by length, then lexicographically.
pub fn periodic_orbit_words(a: &ZeroOneMatrix, max_period: usize) -> Vec<Word> {
    fn go(a: &ZeroOneMatrix, q: usize, prefix: &mut Vec<usize>, out: &mut Vec<Word>) {
        let first = prefix[0];
        let last = *prefix.last().expect("nonempty");
        if prefix.len() == q {
            let w = Word(prefix.clone());
            if a.allows(last, first) && w.is_lyndon() {
                out.push(w);
            }
            return;
        }
        // the first symbol of a Lyndon word is its least symbol
        for s in first..a.size() {
            if a.allows(last, s) {
                prefix.push(s);
                go(a, q, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    for q in 1..=max_period {
        for s in 0..a.size() {
            go(a, q, &mut vec![s], &mut out);
        }
    }
    out
}

/// Number of points with `sigma^p(x) = x`, as `trace(A^p)`.
pub fn count_period_points(a: &NonNegMatrix, p: u32) -> BigInt {
    a.to_int_matrix().pow(p).expect("square").trace()
}

/// Edges of the multigraph of `A`: `A(i,j)` parallel edges `i -> j`, listed
/// lexicographically by (source, target, multiplicity index).
pub fn edges(a: &NonNegMatrix) -> Vec<(usize, usize, u64)> {
    let n = a.size();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..a.get(i, j) {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// The {0,1} matrix on the edges of `A`: `e -> f` allowed iff `e` ends where `f` starts.
pub fn edge_shift(a: &NonNegMatrix) -> Result<ZeroOneMatrix> {
    let es = edges(a);
    if es.len() < 2 {
        return Err(Error::Degenerate(format!("edge shift has {} state(s)", es.len())));
    }
    let rows = es
        .iter()
        .map(|&(_, target, _)| es.iter().map(|&(source, _, _)| u64::from(target == source)).collect())
        .collect();
    ZeroOneMatrix::new(rows)
}

/// Higher block presentation: vertices are admissible `k`-words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigherBlock {
    pub matrix: ZeroOneMatrix,
    pub words: Vec<Word>,
}

/// `w -> w'` iff `w'` is `w` shifted left by one symbol with an admissible new last symbol.
pub fn higher_block(a: &ZeroOneMatrix, k: usize) -> Result<HigherBlock> {
    if k == 0 {
        return Err(Error::Domain("block length must be at least 1".into()));
    }
    let words = admissible_words(a, k);
    if words.len() < 2 {
        return Err(Error::Degenerate(format!("only {} admissible {k}-word(s)", words.len())));
    }
    let rows = words
        .iter()
        .map(|w| {
            let (ws, last) = (w.symbols(), w.symbols()[k - 1]);
            words
                .iter()
                .map(|v| {
                    let vs = v.symbols();
                    u64::from(ws[1..] == vs[..k - 1] && a.allows(last, vs[k - 1]))
                })
                .collect()
        })
        .collect();
    Ok(HigherBlock {
        matrix: ZeroOneMatrix::new(rows)?,
        words,
    })
}
