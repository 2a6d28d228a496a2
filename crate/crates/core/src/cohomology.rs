//! Locally constant integer functions on `X_A` and positivity of their classes.
//!
//! A class `[xi]` is positive exactly when `xi` sums to something nonnegative
//! over every periodic orbit. On the higher block graph of admissible
//! `k`-words, with edge `w -> w'` weighted by `xi(w)`, closed walks are
//! periodic orbits and walk weights are orbit sums, so positivity is the
//! absence of a negative cycle.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::FunctionFile;
use crate::graph::strongly_connected_components;
use crate::sft::{
    admissible_words, higher_block, is_irreducible, period_of, satisfies_condition_i,
    EventuallyPeriodicPoint, Word, ZeroOneMatrix,
};

/// Integer function on `X_A` depending on the first `window` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocallyConstantFn {
    window: usize,
    values: BTreeMap<Word, i64>,
}

impl LocallyConstantFn {
    /// The table must cover exactly the admissible `window`-words of `a`.
    pub fn new(a: &ZeroOneMatrix, window: usize, values: BTreeMap<Word, i64>) -> Result<Self> {
        if window == 0 {
            return Err(Error::Domain("window must be at least 1".into()));
        }
        let words = admissible_words(a, window);
        if let Some(w) = values.keys().find(|w| w.len() != window || !w.is_admissible(a)) {
            return Err(Error::Domain(format!("{w} is not an admissible {window}-word")));
        }
        if let Some(w) = words.iter().find(|w| !values.contains_key(*w)) {
            return Err(Error::Domain(format!("no value given for admissible word {w}")));
        }
        Ok(LocallyConstantFn { window, values })
    }

    pub fn from_file(a: &ZeroOneMatrix, file: FunctionFile) -> Result<Self> {
        LocallyConstantFn::new(a, file.window, file.values)
    }

    pub fn from_fn(a: &ZeroOneMatrix, window: usize, mut f: impl FnMut(&[usize]) -> i64) -> Result<Self> {
        if window == 0 {
            return Err(Error::Domain("window must be at least 1".into()));
        }
        let values = admissible_words(a, window)
            .into_iter()
            .map(|w| {
                let v = f(w.symbols());
                (w, v)
            })
            .collect();
        Ok(LocallyConstantFn { window, values })
    }

    pub fn constant(a: &ZeroOneMatrix, window: usize, c: i64) -> Result<Self> {
        LocallyConstantFn::from_fn(a, window, |_| c)
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn values(&self) -> &BTreeMap<Word, i64> {
        &self.values
    }

    /// Value on a `window`-word; inadmissible words are an error, never zero.
    pub fn eval(&self, word: &[usize]) -> Result<i64> {
        self.values
            .get(&Word::new(word.to_vec()))
            .copied()
            .ok_or_else(|| Error::Domain(format!("{} is not an admissible {}-word", Word::new(word.to_vec()), self.window)))
    }

    /// The same function read through a longer window.
    pub fn refine(&self, a: &ZeroOneMatrix, window: usize) -> Result<Self> {
        if window < self.window {
            return Err(Error::Domain(format!(
                "cannot shrink window {} to {window}",
                self.window
            )));
        }
        let k = self.window;
        let values = admissible_words(a, window)
            .into_iter()
            .map(|w| {
                let v = self.eval(&w.symbols()[..k])?;
                Ok((w, v))
            })
            .collect::<Result<_>>()?;
        Ok(LocallyConstantFn { window, values })
    }

    /// Pointwise sum, computed on the larger of the two windows.
    pub fn add(&self, a: &ZeroOneMatrix, other: &LocallyConstantFn) -> Result<Self> {
        let window = self.window.max(other.window);
        let (x, y) = (self.refine(a, window)?, other.refine(a, window)?);
        let values = x
            .values
            .iter()
            .map(|(w, v)| {
                let s = v
                    .checked_add(y.values[w])
                    .ok_or_else(|| Error::Domain("function value overflow".into()))?;
                Ok((w.clone(), s))
            })
            .collect::<Result<_>>()?;
        Ok(LocallyConstantFn { window, values })
    }
}

fn overflow() -> Error {
    Error::Domain("orbit sum overflows 64 bits".into())
}

/// Sum of `xi` over one period of the orbit of `cycle^infinity`.
pub fn orbit_sum(a: &ZeroOneMatrix, xi: &LocallyConstantFn, cycle: &Word) -> Result<i64> {
    if !cycle.is_cyclically_admissible(a) {
        return Err(Error::Domain(format!("{cycle} is not cyclically admissible")));
    }
    let c = cycle.symbols();
    let mut window = vec![0; xi.window];
    let mut total = 0i64;
    for i in 0..c.len() {
        for (j, slot) in window.iter_mut().enumerate() {
            *slot = c[(i + j) % c.len()];
        }
        total = total.checked_add(xi.eval(&window)?).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Value of the cocycle induced by `xi` on the attracting isotropy element
/// `(x, n*p, x)`, `p` the period of `x`: `n` times the sum of `xi` over one period.
pub fn attracting_weight(
    a: &ZeroOneMatrix,
    xi: &LocallyConstantFn,
    x: &EventuallyPeriodicPoint,
    n: u64,
) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    debug_assert_eq!(period_of(x), x.primitive_cycle().len());
    let per_period = orbit_sum(a, xi, &x.primitive_cycle())?;
    i64::try_from(n)
        .ok()
        .and_then(|n| per_period.checked_mul(n))
        .ok_or_else(overflow)
}

/// `eta - eta o sigma`, a function of window `k+1`.
pub fn coboundary(a: &ZeroOneMatrix, eta: &LocallyConstantFn) -> Result<LocallyConstantFn> {
    let k = eta.window;
    let values = admissible_words(a, k + 1)
        .into_iter()
        .map(|w| {
            let s = w.symbols();
            let v = eta
                .eval(&s[..k])?
                .checked_sub(eta.eval(&s[1..])?)
                .ok_or_else(overflow)?;
            Ok((w, v))
        })
        .collect::<Result<_>>()?;
    Ok(LocallyConstantFn { window: k + 1, values })
}

/// Verdict of [`is_positive_class`]; a negative verdict carries a periodic
/// orbit (lexicographically least rotation of a primitive word) with negative sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Positivity {
    pub positive: bool,
    pub witness: Option<Word>,
    pub witness_sum: Option<i64>,
}

/// Decides whether `[xi]` lies in the positive cone.
pub fn is_positive_class(a: &ZeroOneMatrix, xi: &LocallyConstantFn) -> Result<Positivity> {
    if !is_irreducible(a) {
        return Err(Error::Precondition("matrix is reducible".into()));
    }
    if !satisfies_condition_i(a)? {
        return Err(Error::Precondition("matrix fails condition (I)".into()));
    }
    let block = higher_block(a, xi.window)?;
    let weights = block
        .words
        .iter()
        .map(|w| xi.eval(w.symbols()))
        .collect::<Result<Vec<i64>>>()?;
    let adj = block.matrix.adjacency();

    for comp in strongly_connected_components(&adj) {
        let Some(cycle) = negative_cycle(&adj, &weights, &comp)? else {
            continue;
        };
        let symbols: Vec<usize> = cycle.iter().map(|&v| block.words[v].symbols()[0]).collect();
        let word = Word::new(symbols);
        let root = Word::new(word.symbols()[..word.rotation_period()].to_vec()).canonical_rotation();
        let sum = orbit_sum(a, xi, &root)?;
        if sum >= 0 {
            return Err(Error::Internal(format!("witness {root} has nonnegative sum {sum}")));
        }
        return Ok(Positivity {
            positive: false,
            witness: Some(root),
            witness_sum: Some(sum),
        });
    }
    Ok(Positivity {
        positive: true,
        witness: None,
        witness_sum: None,
    })
}

/// Bellman–Ford relaxation inside one component from a virtual source joined
/// to every vertex; returns a negative cycle as vertices in walk order.
fn negative_cycle(adj: &[Vec<usize>], weights: &[i64], comp: &[usize]) -> Result<Option<Vec<usize>>> {
    let mut member = vec![false; adj.len()];
    for &v in comp {
        member[v] = true;
    }
    let mut dist = vec![0i64; adj.len()];
    let mut pred = vec![usize::MAX; adj.len()];
    let mut last_relaxed = None;
    // comp.len() + 1 vertices including the virtual source
    for _ in 0..=comp.len() {
        last_relaxed = None;
        for &u in comp {
            let through = dist[u].checked_add(weights[u]).ok_or_else(overflow)?;
            for &v in adj[u].iter().filter(|&&v| member[v]) {
                if through < dist[v] {
                    dist[v] = through;
                    pred[v] = u;
                    last_relaxed = Some(v);
                }
            }
        }
        if last_relaxed.is_none() {
            return Ok(None);
        }
    }
    let mut v = last_relaxed.expect("relaxed in the final pass");
    for _ in 0..comp.len() {
        v = pred[v];
    }
    let start = v;
    let mut cycle = vec![start];
    let mut cur = pred[start];
    while cur != start {
        cycle.push(cur);
        cur = pred[cur];
    }
    cycle.reverse();
    Ok(Some(cycle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::ZeroOneMatrix;

    fn full2() -> ZeroOneMatrix {
        ZeroOneMatrix::new(vec![vec![1, 1], vec![1, 1]]).unwrap()
    }

    fn plus_minus(a: &ZeroOneMatrix) -> LocallyConstantFn {
        LocallyConstantFn::from_fn(a, 1, |w| if w[0] == 0 { 1 } else { -1 }).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, 9).unwrap()
    }

    #[test]
    fn orbit_sum_examples() {
        let a = full2();
        let zero = LocallyConstantFn::constant(&a, 2, 0).unwrap();
        assert_eq!(orbit_sum(&a, &zero, &w("1121")).unwrap(), 0);
        let xi = plus_minus(&a);
        assert_eq!(orbit_sum(&a, &xi, &w("12")).unwrap(), 0);
        assert_eq!(orbit_sum(&a, &xi, &w("2")).unwrap(), -1);
        let golden = ZeroOneMatrix::new(vec![vec![1, 1], vec![1, 0]]).unwrap();
        let g = LocallyConstantFn::constant(&golden, 1, 1).unwrap();
        assert!(orbit_sum(&golden, &g, &w("22")).is_err());
    }

    #[test]
    fn attracting_weight_examples() {
        let a = full2();
        let xi = plus_minus(&a);
        let pt = EventuallyPeriodicPoint::new(&a, w("1"), w("2")).unwrap();
        assert_eq!(attracting_weight(&a, &xi, &pt, 1).unwrap(), -1);
        assert_eq!(attracting_weight(&a, &xi, &pt, 3).unwrap(), -3);
        let one = LocallyConstantFn::constant(&a, 2, 1).unwrap();
        let pt = EventuallyPeriodicPoint::new(&a, Word::new(vec![]), w("1212")).unwrap();
        // period 2, not 4
        assert_eq!(attracting_weight(&a, &one, &pt, 5).unwrap(), 10);
    }

    #[test]
    fn coboundary_examples() {
        let a = full2();
        let c = LocallyConstantFn::constant(&a, 1, 7).unwrap();
        assert!(coboundary(&a, &c).unwrap().values().values().all(|&v| v == 0));
        let eta = LocallyConstantFn::from_fn(&a, 1, |w| i64::from(w[0] == 0)).unwrap();
        let d = coboundary(&a, &eta).unwrap();
        assert_eq!(d.window(), 2);
        let table: Vec<(String, i64)> = d.values().iter().map(|(w, v)| (w.to_string(), *v)).collect();
        assert_eq!(
            table,
            [("11".into(), 0), ("12".into(), 1), ("21".into(), -1), ("22".into(), 0)]
        );
        for cyc in ["1", "12", "1122", "121"] {
            assert_eq!(orbit_sum(&a, &d, &w(cyc)).unwrap(), 0);
        }
    }

    #[test]
    fn positivity_examples() {
        let a = full2();
        assert!(is_positive_class(&a, &LocallyConstantFn::constant(&a, 1, 0).unwrap()).unwrap().positive);
        assert!(is_positive_class(&a, &LocallyConstantFn::constant(&a, 2, 1).unwrap()).unwrap().positive);
        let verdict = is_positive_class(&a, &plus_minus(&a)).unwrap();
        assert!(!verdict.positive);
        assert_eq!(verdict.witness.unwrap().to_string(), "2");
        assert_eq!(verdict.witness_sum, Some(-1));
    }

    #[test]
    fn positivity_preconditions() {
        let perm = ZeroOneMatrix::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let xi = LocallyConstantFn::constant(&perm, 1, 0).unwrap();
        assert!(matches!(is_positive_class(&perm, &xi), Err(Error::Precondition(_))));
    }

    #[test]
    fn table_must_match_admissible_words() {
        let golden = ZeroOneMatrix::new(vec![vec![1, 1], vec![1, 0]]).unwrap();
        let mut values = BTreeMap::new();
        values.insert(w("11"), 1);
        values.insert(w("12"), 1);
        assert!(LocallyConstantFn::new(&golden, 2, values.clone()).is_err());
        values.insert(w("21"), 1);
        assert!(LocallyConstantFn::new(&golden, 2, values.clone()).is_ok());
        values.insert(w("22"), 1);
        assert!(LocallyConstantFn::new(&golden, 2, values).is_err());
    }
}
