//! Independent reference computations used to cross-check the main
//! implementation paths. These deliberately take different routes: root sets
//! are regenerated by closing the simple roots under reflections through the
//! set itself (rather than the height-level string construction), and
//! subgroup classifications are re-derived from element orders alone.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::scalar::{from_i64, Scalar};

/// Regenerate the full root set from the form matrix alone: close the set of
/// signed unit vectors under all reflections through current members.
pub fn reflection_closure<I: Scalar>(form: &[Vec<I>]) -> Result<BTreeSet<Vec<I>>> {
    let n = form.len();
    let two = from_i64::<I>(2);
    let pair = |a: &[I], b: &[I]| -> I {
        let mut acc = I::zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc = acc + a[i].clone() * form[i][j].clone() * b[j].clone();
            }
        }
        acc
    };

    let mut set: BTreeSet<Vec<I>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<I>> = VecDeque::new();
    for i in 0..n {
        for sign in [I::one(), -I::one()] {
            let mut v = vec![I::zero(); n];
            v[i] = sign;
            set.insert(v.clone());
            queue.push_back(v);
        }
    }
    while let Some(beta) = queue.pop_front() {
        // reflect every known root through beta, and beta through every
        // known root; one direction suffices since we iterate to closure
        let bb = pair(&beta, &beta);
        let snapshot: Vec<Vec<I>> = set.iter().cloned().collect();
        for gamma in snapshot {
            let num = two.clone() * pair(&beta, &gamma);
            let (c, rem) = num.div_mod_floor(&bb);
            if !rem.is_zero() {
                return Err(Error::InternalInvariantViolation(
                    "non-integral reflection coefficient in closure".into(),
                ));
            }
            let img: Vec<I> = gamma
                .iter()
                .zip(&beta)
                .map(|(g, b)| g.clone() - c.clone() * b.clone())
                .collect();
            if set.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    Ok(set)
}

/// Isomorphism tag of a finite abelian group given by its element orders:
/// cyclic when some element realizes the full size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbelianTag {
    Cyclic(usize),
    TwoByR(usize),
}

/// Classify a subgroup of Z2 x Zk given its elements, by brute force on
/// element orders.
pub fn classify_by_orders(elements: &[(u64, u64)], k: u64) -> AbelianTag {
    let size = elements.len();
    let order = |&(a, b): &(u64, u64)| -> usize {
        let oa = if a % 2 == 0 { 1 } else { 2 };
        let ob = if b % k == 0 {
            1
        } else {
            (k / num_integer::gcd(b % k, k)) as usize
        };
        num_integer::lcm(oa, ob)
    };
    let max_order = elements.iter().map(order).max().unwrap_or(1);
    if max_order == size {
        AbelianTag::Cyclic(size)
    } else {
        AbelianTag::TwoByR(size / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{RootSystem, SystemType};

    #[test]
    fn closure_matches_builder_small() {
        for name in ["A2", "B2", "G2", "A3", "C3", "D4"] {
            let rs = RootSystem::<i64>::build(SystemType::parse(name).unwrap()).unwrap();
            let closure = reflection_closure(rs.form()).unwrap();
            let built: BTreeSet<Vec<i64>> =
                rs.all_roots().into_iter().map(|r| r.0).collect();
            assert_eq!(closure, built, "{name}");
        }
    }

    #[test]
    fn order_classification() {
        // whole group Z2 x Z4
        let all: Vec<(u64, u64)> = (0..2).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
        assert_eq!(classify_by_orders(&all, 4), AbelianTag::TwoByR(4));
        // diagonal subgroup of Z2 x Z4 generated by (1,1) is cyclic of order 4
        let diag = vec![(0, 0), (1, 1), (0, 2), (1, 3)];
        assert_eq!(classify_by_orders(&diag, 4), AbelianTag::Cyclic(4));
        // Z2 x Z3 is cyclic of order 6
        let z2z3: Vec<(u64, u64)> = (0..2).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        assert_eq!(classify_by_orders(&z2z3, 3), AbelianTag::Cyclic(6));
    }
}
