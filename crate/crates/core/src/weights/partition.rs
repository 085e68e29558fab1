//! Partitions, compositions and bounded dominant tuples.

/// True iff `w` is weakly decreasing.
pub fn is_non_increasing<T: PartialOrd>(w: &[T]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

/// Drops trailing zeros.
pub fn trim(lambda: &[u32]) -> Vec<u32> {
    let len = lambda.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    lambda[..len].to_vec()
}

pub fn size(lambda: &[u32]) -> u32 {
    lambda.iter().sum()
}

/// `mu` fits inside `lambda` as Young diagrams.
pub fn contains(lambda: &[u32], mu: &[u32]) -> bool {
    mu.iter().enumerate().all(|(i, &m)| m <= lambda.get(i).copied().unwrap_or(0))
}

/// Partitions of `n` with at most `max_len` parts.
pub fn partitions_of(n: u32, max_len: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_len, &mut Vec::new(), &mut out);
    out
}

/// Partitions `alpha` with `alpha_i <= lambda_i` and at most `max_len` parts.
pub fn sub_partitions(lambda: &[u32], max_len: usize) -> Vec<Vec<u32>> {
    fn go(lambda: &[u32], i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if i == lambda.len() {
            return;
        }
        for part in 1..=cap.min(lambda[i]) {
            cur.push(part);
            go(lambda, i + 1, part, cur, out);
            cur.pop();
        }
    }
    let bounded = &lambda[..lambda.len().min(max_len)];
    let mut out = Vec::new();
    go(bounded, 0, u32::MAX, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Non-increasing tuples of length `len` with entries in `lo..=hi`.
pub fn dominant_tuples(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, lo: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in (lo..=cap).rev() {
            cur.push(x);
            go(len, lo, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        go(len, lo, hi, &mut Vec::new(), &mut out);
    }
    out
}
