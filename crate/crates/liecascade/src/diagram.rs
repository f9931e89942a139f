//! Dynkin diagram automorphisms, their induced lattice maps, and folded
//! fixed-point types.
//!
//! Folding restricts the root system to the fixed subspace of a diagram
//! automorphism by averaging each root over its orbit; non-reduced doubles
//! (the A-even case) are resolved by keeping the shorter restricted root.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rootsys::{recognize_cartan, Family, Root, RootSystem, SystemType, TypeSymbol};
use crate::scalar::{from_i64, rat, Rat, Scalar};
use crate::weyl::LatticeMap;
use num_traits::{Signed, Zero};

/// A permutation of the simple-root indices preserving the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramAut {
    perm: Vec<usize>, // 0-based images
}

impl DiagramAut {
    pub fn identity(rank: usize) -> Self {
        DiagramAut {
            perm: (0..rank).collect(),
        }
    }

    /// Validate a 0-based permutation against the Cartan matrix of `rs`.
    pub fn new<I: Scalar>(rs: &RootSystem<I>, perm: Vec<usize>) -> Result<Self> {
        let n = rs.rank();
        if perm.len() != n {
            return Err(Error::ShapeError {
                expected: n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::PreconditionViolated(format!(
                    "not a permutation of 0..{n}"
                )));
            }
            seen[p] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if rs.cartan()[perm[i]][perm[j]] != rs.cartan()[i][j] {
                    return Err(Error::PreconditionViolated(
                        "permutation does not preserve the Cartan matrix".into(),
                    ));
                }
            }
        }
        Ok(DiagramAut { perm })
    }

    /// Accept a 1-based image list, as used on the command line.
    pub fn from_one_based<I: Scalar>(rs: &RootSystem<I>, images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::PreconditionViolated(
                "permutation images are 1-based".into(),
            ));
        }
        DiagramAut::new(rs, images.iter().map(|&x| x - 1).collect())
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn compose(&self, other: &DiagramAut) -> DiagramAut {
        DiagramAut {
            perm: (0..self.perm.len()).map(|i| self.perm[other.perm[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> DiagramAut {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        DiagramAut { perm: inv }
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }

    /// Orbits on the node set, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                orbit.push(i);
                i = self.perm[i];
            }
            orbit.sort();
            out.push(orbit);
        }
        out
    }
}

/// The full automorphism group of the diagram, identity first, then sorted.
pub fn diagram_automorphisms<I: Scalar>(rs: &RootSystem<I>) -> Vec<DiagramAut> {
    let n = rs.rank();
    let mut found: Vec<DiagramAut> = Vec::new();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn backtrack<I: Scalar>(
        rs: &RootSystem<I>,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        found: &mut Vec<DiagramAut>,
    ) {
        let n = rs.rank();
        let i = perm.len();
        if i == n {
            found.push(DiagramAut { perm: perm.clone() });
            return;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let ok = (0..i).all(|j| {
                rs.cartan()[cand][perm[j]] == rs.cartan()[i][j]
                    && rs.cartan()[perm[j]][cand] == rs.cartan()[j][i]
            });
            if ok {
                used[cand] = true;
                perm.push(cand);
                backtrack(rs, perm, used, found);
                perm.pop();
                used[cand] = false;
            }
        }
    }
    backtrack(rs, &mut perm, &mut used, &mut found);
    found.sort_by_key(|a| (!a.is_identity(), a.perm.clone()));
    found
}

/// Permutation matrix on root coordinates induced by a diagram automorphism.
pub fn induced_lattice_map<I: Scalar>(rs: &RootSystem<I>, nu: &DiagramAut) -> LatticeMap<I> {
    let n = rs.rank();
    let mut m = vec![vec![I::zero(); n]; n];
    for j in 0..n {
        m[nu.apply(j)][j] = I::one();
    }
    LatticeMap::from_rows(m).expect("square permutation matrix")
}

/// Orbit-average of a root under the induced map: its restriction to the
/// fixed subspace, in rational coordinates.
fn project_to_fixed<I: Scalar>(
    powers: &[LatticeMap<I>],
    r: &Root<I>,
) -> Vec<Rat<I>> {
    let k = powers.len();
    let n = r.len();
    let mut acc = vec![Rat::zero(); n];
    for p in powers {
        let img = p.apply_root(r);
        for (a, c) in acc.iter_mut().zip(img.0) {
            *a = a.clone() + rat(c);
        }
    }
    let den = rat(from_i64::<I>(k as i64));
    acc.into_iter().map(|x| x / den.clone()).collect()
}

fn proportional<I: Scalar>(u: &[Rat<I>], v: &[Rat<I>]) -> bool {
    // u = t v for some t > 0
    for i in 0..u.len() {
        for j in 0..u.len() {
            if u[i].clone() * v[j].clone() != u[j].clone() * v[i].clone() {
                return false;
            }
        }
    }
    let i = v.iter().position(|x| !x.is_zero()).unwrap();
    (u[i].clone() * v[i].clone()).is_positive()
}

/// The type of the restricted root system on the fixed subspace of a
/// nontrivial diagram automorphism.
pub fn folded_fixed_type<I: Scalar>(rs: &RootSystem<I>, nu: &DiagramAut) -> Result<SystemType> {
    if nu.is_identity() {
        return Err(Error::NotAFolding);
    }
    let k = nu.order();
    let m = induced_lattice_map(rs, nu);
    let mut powers = Vec::with_capacity(k);
    let mut cur = LatticeMap::identity(rs.rank());
    for _ in 0..k {
        powers.push(cur.clone());
        cur = m.compose(&cur);
    }

    let mut projections: BTreeSet<Vec<Rat<I>>> = BTreeSet::new();
    for r in rs.positives() {
        let p = project_to_fixed(&powers, r);
        if p.iter().any(|x| !x.is_zero()) {
            projections.insert(p);
        }
    }
    // non-reduced doubles: keep the shorter of two proportional restrictions
    let list: Vec<Vec<Rat<I>>> = projections.iter().cloned().collect();
    let mut reduced: Vec<Vec<Rat<I>>> = Vec::new();
    for u in &list {
        let nu_u = rs.form_value_rat(u, u)?;
        let mut shorter_exists = false;
        for v in &list {
            if v != u && proportional(u, v) {
                let nv = rs.form_value_rat(v, v)?;
                if nv < nu_u {
                    shorter_exists = true;
                    break;
                }
            }
        }
        if !shorter_exists {
            reduced.push(u.clone());
        }
    }

    // simple basis: reduced positives that are not sums of two of them
    let set: BTreeSet<Vec<Rat<I>>> = reduced.iter().cloned().collect();
    let mut simples: Vec<Vec<Rat<I>>> = reduced
        .iter()
        .filter(|p| {
            !reduced.iter().any(|x| {
                if x == *p {
                    return false;
                }
                let diff: Vec<Rat<I>> = p
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect();
                set.contains(&diff)
            })
        })
        .cloned()
        .collect();
    simples.sort();

    let r = simples.len();
    let mut cartan = vec![vec![I::zero(); r]; r];
    let two = rat(from_i64::<I>(2));
    for i in 0..r {
        let di = rs.form_value_rat(&simples[i], &simples[i])?;
        for j in 0..r {
            let c = two.clone() * rs.form_value_rat(&simples[i], &simples[j])? / di.clone();
            if !c.is_integer() {
                return Err(Error::InternalInvariantViolation(
                    "folded Cartan pairing not integral".into(),
                ));
            }
            cartan[i][j] = c.to_integer();
        }
    }
    recognize_cartan(&cartan).ok_or_else(|| {
        Error::InternalInvariantViolation("folded system type not recognized".into())
    })
}

/// Minimum rank of a folded fixed-point type over all nontrivial diagram
/// automorphisms of `stype`.
pub fn min_outer_fixed_rank<I: Scalar>(stype: SystemType) -> Result<usize> {
    let rs = RootSystem::<I>::build(stype)?;
    let auts = diagram_automorphisms(&rs);
    let mut best: Option<usize> = None;
    for nu in auts.iter().filter(|a| !a.is_identity()) {
        let t = folded_fixed_type(&rs, nu)?;
        best = Some(best.map_or(t.rank(), |b: usize| b.min(t.rank())));
    }
    best.ok_or_else(|| Error::NoOuter(stype.to_string()))
}

/// One row of the folding table: a source type, the automorphism order, and
/// the nominal fixed-point type symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldingRecord {
    pub source: SystemType,
    pub order: usize,
    pub fixed: TypeSymbol,
}

/// The folding table rows with source rank at most `max_rank`.
pub fn folding_table(max_rank: usize) -> Vec<FoldingRecord> {
    let mut rows = Vec::new();
    let mut push = |family, rank, order, ff, fr| {
        if let Ok(source) = SystemType::new(family, rank) {
            rows.push(FoldingRecord {
                source,
                order,
                fixed: TypeSymbol::new(ff, fr),
            });
        }
    };
    for n in 1..=max_rank / 2 {
        if 2 * n <= max_rank {
            push(Family::A, 2 * n, 2, Family::B, n);
        }
    }
    for n in 2..=max_rank.div_ceil(2) {
        if 2 * n - 1 <= max_rank {
            push(Family::A, 2 * n - 1, 2, Family::C, n);
        }
    }
    for n in 4..=max_rank {
        push(Family::D, n, 2, Family::B, n - 1);
    }
    if max_rank >= 4 {
        push(Family::D, 4, 3, Family::G, 2);
    }
    if max_rank >= 6 {
        push(Family::E, 6, 2, Family::F, 4);
    }
    rows.sort_by_key(|r| (r.source.family(), r.source.rank(), r.order));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    type Rs = RootSystem<i64>;

    fn rs(name: &str) -> Rs {
        Rs::build(SystemType::parse(name).unwrap()).unwrap()
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(diagram_automorphisms(&rs("G2")).len(), 1);
        assert_eq!(diagram_automorphisms(&rs("A3")).len(), 2);
        assert_eq!(diagram_automorphisms(&rs("D4")).len(), 6);
        assert_eq!(diagram_automorphisms(&rs("D5")).len(), 2);
        assert_eq!(diagram_automorphisms(&rs("E6")).len(), 2);
        assert_eq!(diagram_automorphisms(&rs("E7")).len(), 1);
        assert_eq!(diagram_automorphisms(&rs("B3")).len(), 1);
    }

    #[test]
    fn group_law() {
        let d4 = rs("D4");
        let auts = diagram_automorphisms(&d4);
        for a in &auts {
            assert!(auts.contains(&a.inverse()));
            for b in &auts {
                assert!(auts.contains(&a.compose(b)));
            }
        }
        let nontrivial_orders: BTreeSet<usize> = auts
            .iter()
            .filter(|a| !a.is_identity())
            .map(|a| a.order())
            .collect();
        assert_eq!(nontrivial_orders, [2usize, 3].into_iter().collect());
    }

    #[test]
    fn induced_maps() {
        let a2 = rs("A2");
        let auts = diagram_automorphisms(&a2);
        assert!(induced_lattice_map(&a2, &auts[0]).is_identity());
        let flip = &auts[1];
        let m = induced_lattice_map(&a2, flip);
        assert_eq!(m.apply_root(&a2.simple(0)), a2.simple(1));
        assert_eq!(
            m.apply_root(&Root::from_i64s(&[1, 1])),
            Root::from_i64s(&[1, 1])
        );

        let d5 = rs("D5");
        let flip = diagram_automorphisms(&d5)
            .into_iter()
            .find(|a| !a.is_identity())
            .unwrap();
        let m = induced_lattice_map(&d5, &flip);
        for i in 0..3 {
            assert_eq!(m.apply_root(&d5.simple(i)), d5.simple(i));
        }
        assert_eq!(m.apply_root(&d5.simple(3)), d5.simple(4));
        // positives are preserved
        for p in d5.positives() {
            assert!(d5.is_positive_root(&m.apply_root(p)));
        }
    }

    fn fold(name: &str, order: usize) -> SystemType {
        let s = rs(name);
        let nu = diagram_automorphisms(&s)
            .into_iter()
            .find(|a| !a.is_identity() && a.order() == order)
            .unwrap();
        folded_fixed_type(&s, &nu).unwrap()
    }

    #[test]
    fn folded_types() {
        assert_eq!(fold("A3", 2), SystemType::parse("B2").unwrap()); // nominal c2
        assert_eq!(fold("D4", 3), SystemType::parse("G2").unwrap());
        assert_eq!(fold("E6", 2), SystemType::parse("F4").unwrap());
        assert_eq!(fold("A2", 2), SystemType::parse("A1").unwrap()); // nominal b1
        assert_eq!(fold("A4", 2), SystemType::parse("B2").unwrap());
        assert_eq!(fold("A5", 2), SystemType::parse("C3").unwrap());
        assert_eq!(fold("D5", 2), SystemType::parse("B4").unwrap());
        assert_eq!(fold("D4", 2), SystemType::parse("B3").unwrap());
    }

    #[test]
    fn identity_is_not_a_folding() {
        let a2 = rs("A2");
        assert!(matches!(
            folded_fixed_type(&a2, &DiagramAut::identity(2)),
            Err(Error::NotAFolding)
        ));
    }

    #[test]
    fn min_fixed_ranks() {
        assert_eq!(min_outer_fixed_rank::<i64>(SystemType::parse("E6").unwrap()).unwrap(), 4);
        assert_eq!(min_outer_fixed_rank::<i64>(SystemType::parse("D4").unwrap()).unwrap(), 2);
        assert_eq!(min_outer_fixed_rank::<i64>(SystemType::parse("A2").unwrap()).unwrap(), 1);
        assert!(matches!(
            min_outer_fixed_rank::<i64>(SystemType::parse("B3").unwrap()),
            Err(Error::NoOuter(_))
        ));
    }

    #[test]
    fn table_spot_checks() {
        let rows = folding_table(8);
        for row in &rows {
            let s = Rs::build(row.source).unwrap();
            let nu = diagram_automorphisms(&s)
                .into_iter()
                .find(|a| !a.is_identity() && a.order() == row.order)
                .unwrap();
            let got = folded_fixed_type(&s, &nu).unwrap();
            assert_eq!(Some(got), row.fixed.canonicalize(), "row {row:?}");
        }
    }
}
