//! Binomials, signed Stirling numbers of the first kind and the binomial
//! series coefficients of `(1 - x)^{1/p}`.

use crate::error::{Error, Result};

/// Largest table size whose entries fit in `i128`.
pub const STIRLING_MAX_N: usize = 30;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by i + 1
        acc = acc.checked_mul((n - i) as u128).expect("binomial overflow") / (i + 1) as u128;
    }
    acc
}

/// Triangular table of signed Stirling numbers of the first kind, defined by
/// `x(x-1)...(x-k+1) = sum_l S(k, l) x^l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    max_n: usize,
    rows: Vec<Vec<i128>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Result<Self> {
        if max_n > STIRLING_MAX_N {
            return Err(Error::StirlingOverflow {
                requested: max_n,
                max: STIRLING_MAX_N,
            });
        }
        let mut rows: Vec<Vec<i128>> = vec![vec![1]];
        for k in 0..max_n {
            let prev = &rows[k];
            let mut next = vec![0i128; k + 2];
            for (l, cell) in next.iter_mut().enumerate() {
                let left = if l >= 1 { prev[l - 1] } else { 0 };
                let same = prev.get(l).copied().unwrap_or(0);
                *cell = left - k as i128 * same;
            }
            rows.push(next);
        }
        Ok(Self { max_n, rows })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// `S(k, l)`; zero outside `0 <= l <= k`. Panics if `k > max_n`.
    pub fn get(&self, k: usize, l: usize) -> i128 {
        assert!(k <= self.max_n, "stirling index {k} beyond table size {}", self.max_n);
        self.rows[k].get(l).copied().unwrap_or(0)
    }
}

pub fn stirling_first_kind(max_n: usize) -> Result<StirlingTable> {
    StirlingTable::new(max_n)
}

/// `b_0..b_{N-1}` with `(1 - x)^{1/p} = sum b_n x^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    p: u32,
    terms: Vec<f64>,
}

impl SeriesCoefficients {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &[f64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, n: usize) -> Result<f64> {
        self.terms.get(n).copied().ok_or(Error::CacheExhausted {
            requested: n,
            available: self.terms.len(),
        })
    }
}

pub fn series_coefficients(p: u32, n_terms: usize) -> SeriesCoefficients {
    let inv = 1.0 / p as f64;
    let mut terms = Vec::with_capacity(n_terms);
    let mut b = 1.0;
    for n in 0..n_terms {
        terms.push(b);
        b *= (n as f64 - inv) / (n as f64 + 1.0);
    }
    SeriesCoefficients { p, terms }
}

/// Single coefficient `C(1/p, n) (-1)^n` without building a table.
pub fn series_term(p: u32, n: usize) -> f64 {
    let inv = 1.0 / p as f64;
    (0..n).fold(1.0, |b, k| b * (k as f64 - inv) / (k as f64 + 1.0))
}

/// `1/k!` as a float.
pub fn inv_factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc / i as f64)
}
