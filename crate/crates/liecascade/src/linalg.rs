//! Exact rational linear algebra: reduced row echelon form, rank, kernels
//! and span comparisons. Small dense matrices only (rank <= 8 throughout).

use crate::scalar::{rat, Rat, Scalar};
use num_traits::Zero;

/// Reduce `m` to reduced row echelon form in place; returns the pivot columns.
pub fn rref<I: Scalar>(m: &mut [Vec<Rat<I>>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() / lead.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank<I: Scalar>(m: &[Vec<Rat<I>>]) -> usize {
    let mut copy: Vec<Vec<Rat<I>>> = m.to_vec();
    rref(&mut copy).len()
}

/// Canonical basis of the right kernel of `m` (solutions of m x = 0),
/// one vector per free column of the reduced echelon form.
pub fn kernel_basis<I: Scalar>(m: &[Vec<Rat<I>>], cols: usize) -> Vec<Vec<Rat<I>>> {
    let mut copy: Vec<Vec<Rat<I>>> = m.to_vec();
    let pivots = rref(&mut copy);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![rat(I::zero()); cols];
        v[free] = rat(I::one());
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -copy[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Does `v` lie in the row span of `basis`?
pub fn in_span<I: Scalar>(basis: &[Vec<Rat<I>>], v: &[Rat<I>]) -> bool {
    let mut m: Vec<Vec<Rat<I>>> = basis.to_vec();
    let r0 = rank(&m);
    m.push(v.to_vec());
    rank(&m) == r0
}

/// Do two generating sets span the same subspace?
pub fn same_span<I: Scalar>(a: &[Vec<Rat<I>>], b: &[Vec<Rat<I>>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    if ra != rb {
        return false;
    }
    let mut joint: Vec<Vec<Rat<I>>> = a.to_vec();
    joint.extend(b.iter().cloned());
    rank(&joint) == ra
}

/// Integer vector as a rational vector.
pub fn to_rat_vec<I: Scalar>(v: &[I]) -> Vec<Rat<I>> {
    v.iter().cloned().map(rat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat<i64> {
        Rat::new(n, d)
    }

    #[test]
    fn rref_and_kernel() {
        // x + y + z = 0 has a 2-dimensional kernel.
        let m = vec![vec![q(1, 1), q(1, 1), q(1, 1)]];
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rat<i64> = v.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn span_comparison() {
        let a = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        let b = vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(-1, 1)]];
        assert!(same_span(&a, &b));
        let c = vec![vec![q(1, 1), q(1, 1)]];
        assert!(!same_span(&a, &c));
        assert!(in_span(&a, &[q(3, 2), q(-7, 3)]));
    }
}
