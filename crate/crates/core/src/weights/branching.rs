//! Branching from `GL_N` to block-diagonal subgroups.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};

use super::lr::lr_fillings;
use super::partition::{is_non_increasing, sub_partitions};
use crate::error::{Error, Result};

/// Multiset of block weights, one tuple per block, with multiplicities.
pub type BlockDecomposition = BTreeMap<Vec<Vec<i64>>, u64>;

fn pad(part: &[u32], len: usize, shift: i64) -> Vec<i64> {
    (0..len).map(|i| part.get(i).copied().unwrap_or(0) as i64 - shift).collect()
}

fn branch(lambda: &[u32], blocks: &[usize], shift: i64, prefix: &mut Vec<Vec<i64>>, mult: u64, out: &mut BlockDecomposition) {
    let Some((&b, rest)) = blocks.split_first() else {
        *out.entry(prefix.clone()).or_insert(0) += mult;
        return;
    };
    if rest.is_empty() {
        prefix.push(pad(lambda, b, shift));
        *out.entry(prefix.clone()).or_insert(0) += mult;
        prefix.pop();
        return;
    }
    let remaining: usize = rest.iter().sum();
    for alpha in sub_partitions(lambda, b) {
        for (beta, c) in lr_fillings(lambda, &alpha, remaining) {
            prefix.push(pad(&alpha, b, shift));
            branch(&beta, rest, shift, prefix, mult * c, out);
            prefix.pop();
        }
    }
}

/// Restriction of the irreducible `GL_N`-representation of highest weight `w`
/// to `GL_{b_1} x ... x GL_{b_k}`, by iterated two-block LR branching.
///
/// Negative entries are handled by a determinant twist.
pub fn restrict_to_blocks(w: &[i64], blocks: &[usize]) -> Result<BlockDecomposition> {
    if !is_non_increasing(w) {
        return Err(Error::NotAPartition(w.to_vec()));
    }
    let total: usize = blocks.iter().sum();
    if total != w.len() {
        return Err(Error::CompositionMismatch { expected: w.len(), got: total });
    }
    let shift = w.last().map_or(0, |&x| x.min(0));
    let lambda: Vec<u32> = w.iter().map(|&x| (x - shift) as u32).collect();
    let mut out = BlockDecomposition::new();
    branch(&lambda, blocks, -shift, &mut Vec::new(), 1, &mut out);
    Ok(out)
}

/// Weyl dimension `prod_{i<j} (w_i - w_j + j - i) / (j - i)`.
pub fn dim_irrep(w: &[i64]) -> Result<BigUint> {
    if !is_non_increasing(w) {
        return Err(Error::NotAPartition(w.to_vec()));
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            let gap = (j - i) as i64;
            num *= w[i] - w[j] + gap;
            den *= gap;
        }
    }
    Ok((num / den).magnitude().clone())
}

/// Total dimension `sum mult * prod dim(block)` of a decomposition.
pub fn decomposition_dimension(d: &BlockDecomposition) -> BigUint {
    d.iter()
        .map(|(blocks, &m)| {
            blocks.iter().fold(BigUint::from(m), |acc, b| acc * dim_irrep(b).expect("dominant blocks"))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_vec(d: &BlockDecomposition) -> Vec<(Vec<Vec<i64>>, u64)> {
        d.iter().map(|(k, &v)| (k.clone(), v)).collect()
    }

    #[test]
    fn standard_representation() {
        let d = restrict_to_blocks(&[1, 0], &[1, 1]).unwrap();
        assert_eq!(as_vec(&d), vec![(vec![vec![0], vec![1]], 1), (vec![vec![1], vec![0]], 1)]);
    }

    #[test]
    fn adjoint_of_gl3() {
        let d = restrict_to_blocks(&[2, 1, 0], &[2, 1]).unwrap();
        let expected = [
            (vec![vec![1, 0], vec![2]], 1),
            (vec![vec![1, 1], vec![1]], 1),
            (vec![vec![2, 0], vec![1]], 1),
            (vec![vec![2, 1], vec![0]], 1),
        ];
        assert_eq!(as_vec(&d), expected.to_vec());
        assert_eq!(decomposition_dimension(&d), BigUint::from(8u32));
    }

    #[test]
    fn multiplicity_two() {
        let d = restrict_to_blocks(&[3, 2, 1, 0], &[2, 2]).unwrap();
        assert_eq!(d[&vec![vec![2, 1], vec![2, 1]]], 2);
        assert_eq!(decomposition_dimension(&d), dim_irrep(&[3, 2, 1, 0]).unwrap());
    }

    #[test]
    fn determinant_twist() {
        let d = restrict_to_blocks(&[0, -1], &[1, 1]).unwrap();
        assert_eq!(as_vec(&d), vec![(vec![vec![-1], vec![0]], 1), (vec![vec![0], vec![-1]], 1)]);
        let scalar = restrict_to_blocks(&[-2, -2, -2], &[1, 2]).unwrap();
        assert_eq!(as_vec(&scalar), vec![(vec![vec![-2], vec![-2, -2]], 1)]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_irrep(&[0, 0, 0]).unwrap(), BigUint::from(1u32));
        assert_eq!(dim_irrep(&[1, 0, 0, 0]).unwrap(), BigUint::from(4u32));
        assert_eq!(dim_irrep(&[2, 1, 0]).unwrap(), BigUint::from(8u32));
        assert_eq!(dim_irrep(&[]).unwrap(), BigUint::from(1u32));
        assert!(dim_irrep(&[0, 1]).is_err());
    }

    #[test]
    fn errors() {
        assert_eq!(
            restrict_to_blocks(&[1, 0], &[1]),
            Err(Error::CompositionMismatch { expected: 2, got: 1 })
        );
        assert!(matches!(restrict_to_blocks(&[0, 1], &[2]), Err(Error::NotAPartition(_))));
    }
}
