//! Weak compositions of `M` into `n` parts, ordered descending-lexicographically.
//!
//! The composition `(m_1, ..., m_n)` with `sum m_i = M` is the occupation-number
//! label of a Fock state of `n` bosonic modes, and its rank `ell` in descending
//! lexicographic order is the index of the corresponding basis vector of the
//! `N`-dimensional totally symmetric irrep, `N = C(M + n - 1, n - 1)`.
//!
//! Ranks go `(M,0,..,0) -> 0`, `(M-1,1,0,..) -> 1`, ..., `(0,..,0,M) -> N-1`.
//! All counting is done in exact integers; anything that would not fit a
//! `usize` is reported as [`Error::Overflow`].

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Exact binomial coefficient `C(n, k)` with overflow detection.
///
/// Uses the multiplicative formula on `u128` intermediates; each partial
/// product `C(n-k+i, i)` is itself an integer so the division is exact.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        let factor = (n as u128) - (k as u128) + i;
        acc = acc
            .checked_mul(factor)
            .ok_or_else(|| Error::Overflow(format!("C({n}, {k})")))?
            / i;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow(format!("C({n}, {k})")))
}

fn binomial_usize(n: usize, k: usize) -> Result<usize> {
    let b = binomial(n as u64, k as u64)?;
    usize::try_from(b).map_err(|_| Error::Overflow(format!("C({n}, {k}) exceeds usize")))
}

/// Dimension of the totally symmetric irrep: `C(M + n - 1, n - 1)`.
///
/// `n = 1` is accepted (a single bin has exactly one composition) so that the
/// recursion `N(n, M) = sum_{m <= M} N(n - 1, m)` can be checked down to its base.
pub fn irrep_dimension(n: usize, bosons: usize) -> Result<usize> {
    if n == 0 {
        return Err(domain("irrep_dimension needs n >= 1"));
    }
    let top = bosons
        .checked_add(n - 1)
        .ok_or_else(|| Error::Overflow(format!("M + n - 1 for n={n}, M={bosons}")))?;
    binomial_usize(top, n - 1)
}

/// The pair `(n, M)` together with the derived dimension `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IrrepShape {
    n: usize,
    bosons: usize,
    dim: usize,
}

impl IrrepShape {
    pub fn new(n: usize, bosons: usize) -> Result<Self> {
        if n < 2 {
            return Err(domain(format!("group rank n must be >= 2, got {n}")));
        }
        let dim = irrep_dimension(n, bosons)?;
        Ok(Self { n, bosons, dim })
    }

    /// Number of modes, i.e. the `n` of `SU(n)`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total boson number `M`.
    pub fn bosons(&self) -> usize {
        self.bosons
    }

    /// Irrep dimension `N`.
    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl std::fmt::Display for IrrepShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, M={}, N={})", self.n, self.bosons, self.dim)
    }
}

/// A composition together with its descending-lexicographic rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CompositionIndex {
    pub parts: Vec<usize>,
    pub rank: usize,
}

/// Number of compositions whose first part is at least `r`, when `bosons`
/// are spread over `1 + rest` bins: `C(bosons - r + rest, rest)`.
fn count_first_at_least(bosons: usize, rest: usize, r: usize) -> Result<usize> {
    if r > bosons {
        return Ok(0);
    }
    binomial_usize(bosons - r + rest, rest)
}

/// The `ell`-th composition in descending lexicographic order.
///
/// Each leading part is found by binary search on the strictly decreasing
/// suffix counts; the last part takes whatever remains.
pub fn unrank(shape: IrrepShape, ell: usize) -> Result<CompositionIndex> {
    if ell >= shape.dim() {
        return Err(domain(format!(
            "rank {ell} out of range for {shape}: must be < {}",
            shape.dim()
        )));
    }
    let n = shape.n();
    let mut parts = Vec::with_capacity(n);
    let mut remaining = shape.bosons();
    let mut offset = ell;
    for slot in 0..n - 1 {
        let rest = n - 1 - slot;
        // Smallest r with count(first >= r + 1) <= offset.
        let (mut lo, mut hi) = (0usize, remaining);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if count_first_at_least(remaining, rest, mid + 1)? <= offset {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        offset -= count_first_at_least(remaining, rest, lo + 1)?;
        parts.push(lo);
        remaining -= lo;
    }
    parts.push(remaining);
    debug_assert_eq!(offset, 0);
    Ok(CompositionIndex { parts, rank: ell })
}

/// Closed-form rank of a composition via its suffix sums `S_k = sum_{i>k} m_i`:
///
/// `rank = sum_{k=1}^{n-1} C(S_k + n - k, n - k) - C(S_k + n - k - 1, n - k - 1)`.
pub fn rank_desc(parts: &[usize], shape: IrrepShape) -> Result<usize> {
    let n = shape.n();
    if parts.len() != n {
        return Err(domain(format!(
            "composition has {} parts, expected n = {n}",
            parts.len()
        )));
    }
    let total: usize = parts.iter().sum();
    if total != shape.bosons() {
        return Err(domain(format!(
            "composition {parts:?} sums to {total}, expected M = {}",
            shape.bosons()
        )));
    }
    let mut suffix = total;
    let mut rank = 0usize;
    for (k, &m) in parts.iter().enumerate().take(n - 1) {
        suffix -= m;
        let width = n - (k + 1);
        let outer = binomial_usize(suffix + width, width)?;
        let inner = binomial_usize(suffix + width - 1, width - 1)?;
        rank += outer - inner;
    }
    Ok(rank)
}

/// All compositions in descending lexicographic order (index = rank).
pub fn compositions_desc(shape: IrrepShape) -> Result<Vec<Vec<usize>>> {
    (0..shape.dim())
        .map(|ell| unrank(shape, ell).map(|c| c.parts))
        .collect()
}
