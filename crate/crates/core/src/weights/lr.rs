//! Littlewood-Richardson coefficients by enumeration of LR skew tableaux.

use std::collections::BTreeMap;

use super::partition::{contains, size, trim};

struct Filler<'a> {
    lambda: &'a [u32],
    mu: &'a [u32],
    cells: Vec<(usize, usize)>,
    grid: Vec<Vec<u32>>,
    counts: Vec<u32>,
    target: Option<&'a [u32]>,
    out: BTreeMap<Vec<u32>, u64>,
}

impl Filler<'_> {
    fn mu(&self, r: usize) -> usize {
        self.mu.get(r).copied().unwrap_or(0) as usize
    }

    fn run(&mut self, k: usize) {
        let Some(&(r, c)) = self.cells.get(k) else {
            *self.out.entry(trim(&self.counts)).or_insert(0) += 1;
            return;
        };
        let hi = if c + 1 < self.lambda[r] as usize {
            self.grid[r][c + 1]
        } else {
            self.counts.len() as u32
        };
        let lo = if r > 0 && c >= self.mu(r - 1) { self.grid[r - 1][c] + 1 } else { 1 };
        for v in lo..=hi.min(r as u32 + 1) {
            let i = (v - 1) as usize;
            if i > 0 && self.counts[i] >= self.counts[i - 1] {
                continue;
            }
            if self.target.is_some_and(|t| self.counts[i] >= t[i]) {
                continue;
            }
            self.counts[i] += 1;
            self.grid[r][c] = v;
            self.run(k + 1);
            self.counts[i] -= 1;
        }
        self.grid[r][c] = 0;
    }
}

fn enumerate(
    lambda: &[u32],
    mu: &[u32],
    max_value: usize,
    target: Option<&[u32]>,
) -> BTreeMap<Vec<u32>, u64> {
    let cells = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &l)| {
            let m = mu.get(r).copied().unwrap_or(0);
            (m..l).rev().map(move |c| (r, c as usize))
        })
        .collect();
    let mut filler = Filler {
        lambda,
        mu,
        cells,
        grid: lambda.iter().map(|&l| vec![0; l as usize]).collect(),
        counts: vec![0; max_value],
        target,
        out: BTreeMap::new(),
    };
    filler.run(0);
    filler.out
}

/// `c^lambda_{mu, nu}`: the number of LR tableaux of shape `lambda / mu` and
/// content `nu`. Inputs are partitions; trailing zeros are ignored.
pub fn lr_coefficient(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let (lambda, mu, nu) = (trim(lambda), trim(mu), trim(nu));
    if size(&mu) + size(&nu) != size(&lambda) || !contains(&lambda, &mu) {
        return 0;
    }
    enumerate(&lambda, &mu, nu.len(), Some(&nu)).get(&nu).copied().unwrap_or(0)
}

/// All contents `nu` with at most `max_len` parts and their coefficients
/// `c^lambda_{mu, nu}`.
pub fn lr_fillings(lambda: &[u32], mu: &[u32], max_len: usize) -> BTreeMap<Vec<u32>, u64> {
    let (lambda, mu) = (trim(lambda), trim(mu));
    if !contains(&lambda, &mu) {
        return BTreeMap::new();
    }
    enumerate(&lambda, &mu, max_len, None)
}
